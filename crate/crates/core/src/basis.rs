//! Representative basis for the natural action of `S_q` on `R^{q×q}` and the
//! pairing of `B_i(j) ⊗ B_i(h)` with the orbit sums `d_P`.
//!
//! Indices are 0-based throughout the code: `B_i(j)` of the usual 1-based
//! notation is `family.matrix(i - 1, j - 1)`. Labels produced for humans
//! (reports, JSON) use the 1-based form.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::pattern::{column_pattern, num_patterns, set_partitions, SetPartition};

/// Dense integer `q×q` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    q: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(q: usize) -> Self {
        IntMatrix { q, data: vec![0; q * q] }
    }

    pub fn identity(q: usize) -> Self {
        let mut m = Self::zeros(q);
        for a in 0..q {
            m.set(a, a, 1);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.q + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: i64) {
        self.data[row * self.q + col] = v;
    }

    fn add_at(&mut self, row: usize, col: usize, v: i64) {
        self.data[row * self.q + col] += v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.q);
        for a in 0..self.q {
            for b in 0..self.q {
                t.set(b, a, self.get(a, b));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.data.iter().zip(&self.transpose().data).all(|(a, b)| *a == -b)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    fn combine(&self, other: &IntMatrix, sign: i64) -> Self {
        IntMatrix {
            q: self.q,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + sign * b).collect(),
        }
    }
}

/// `E_{a,b}` with 1-based `a`, `b`, or the zero matrix if out of range.
fn unit(q: usize, a: usize, b: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(q);
    if a <= q && b <= q {
        m.set(a - 1, b - 1, 1);
    }
    m
}

/// Signed sum of unit matrices `Σ ± E_{a,b}` (1-based indices).
fn signed_units(q: usize, terms: &[(i64, usize, usize)]) -> IntMatrix {
    let mut m = IntMatrix::zeros(q);
    for &(s, a, b) in terms {
        m.add_at(a - 1, b - 1, s);
    }
    m
}

/// The ordered matrix lists `B_1, ..., B_k` for alphabet size `q`.
#[derive(Clone, Debug)]
pub struct BasisFamily {
    q: usize,
    classes: Vec<Vec<IntMatrix>>,
}

/// Builds the basis family for `q ≥ 2`, dropping `B_4` for `q ≤ 3` and
/// additionally `B_3` and the (vanishing) last column of `B_2` for `q = 2`.
pub fn build_basis(q: usize) -> Result<BasisFamily> {
    if q < 2 {
        return Err(invalid(format!("alphabet size q must be at least 2, got {q}")));
    }
    let id = IntMatrix::identity(q);
    let mut all_ones = IntMatrix::zeros(q);
    all_ones.data.fill(1);

    let e11_e22 = unit(q, 1, 1).combine(&unit(q, 2, 2), -1);
    // N = (e_1 - e_2) 1^T
    let mut n_mat = IntMatrix::zeros(q);
    for b in 0..q {
        n_mat.set(0, b, 1);
        n_mat.set(1, b, -1);
    }
    let nt = n_mat.transpose();

    let b1 = vec![id.clone(), all_ones.combine(&id, -1)];
    let mut b2 = vec![e11_e22.clone(), n_mat.combine(&nt, -1)];
    if q >= 3 {
        let sym = n_mat.combine(&nt, 1);
        b2.push(sym.combine(&e11_e22.combine(&e11_e22, 1), -1));
    }
    let mut classes = vec![b1, b2];
    if q >= 3 {
        classes.push(vec![signed_units(
            q,
            &[(1, 1, 2), (1, 2, 3), (1, 3, 1), (-1, 2, 1), (-1, 3, 2), (-1, 1, 3)],
        )]);
    }
    if q >= 4 {
        classes.push(vec![signed_units(
            q,
            &[
                (1, 1, 3),
                (-1, 3, 2),
                (1, 2, 4),
                (-1, 4, 1),
                (1, 3, 1),
                (-1, 2, 3),
                (1, 4, 2),
                (-1, 1, 4),
            ],
        )]);
    }
    Ok(BasisFamily { q, classes })
}

impl BasisFamily {
    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of isotypical classes `k`.
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Multiplicities `m_1, ..., m_k`.
    pub fn dims(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, class: usize) -> usize {
        self.classes[class].len()
    }

    pub fn matrix(&self, class: usize, col: usize) -> &IntMatrix {
        &self.classes[class][col]
    }

    /// Whether `B_i(j)` is skew-symmetric (sign flip under transposition).
    pub fn is_skew(&self, class: usize, col: usize) -> bool {
        matches!((class, col), (1, 1) | (2, 0))
    }

    /// `Σ_i m_i²`, which equals `|Π(q)|`.
    pub fn invariant_dimension(&self) -> usize {
        self.dims().iter().map(|m| m * m).sum()
    }
}

/// Human label `B_i(j)` with 1-based indices.
pub fn label(class: usize, col: usize) -> String {
    format!("B_{}({})", class + 1, col + 1)
}

/// `(B_i(j) ⊗ B_i(h))(d_P)` by direct summation over `[q]^4`.
pub fn pairing_value(
    basis: &BasisFamily,
    class: usize,
    j: usize,
    h: usize,
    pattern: &SetPartition,
) -> i64 {
    pairing_of(basis.matrix(class, j), basis.matrix(class, h), pattern)
}

/// Pairing of an arbitrary matrix pair with `d_P`.
pub fn pairing_of(left: &IntMatrix, right: &IntMatrix, pattern: &SetPartition) -> i64 {
    let q = left.size();
    let mut total = 0;
    for a in 0..q {
        for b in 0..q {
            let l = left.get(a, b);
            if l == 0 {
                continue;
            }
            for c in 0..q {
                for e in 0..q {
                    if column_pattern(&[a, b, c, e]) == *pattern {
                        total += l * right.get(c, e);
                    }
                }
            }
        }
    }
    total
}

/// The complete table of pairings for one basis family.
#[derive(Clone, Debug)]
pub struct PairingTable {
    q: usize,
    dims: Vec<usize>,
    /// rows[class][j][h][P] with `P` in canonical order of `Π(q)`.
    rows: Vec<Vec<Vec<Vec<i64>>>>,
}

pub fn pairing_table(basis: &BasisFamily) -> PairingTable {
    let q = basis.q();
    let np = num_patterns(q);
    // Bucket [q]^4 by pattern index once, then accumulate all products.
    let mut pattern_of = vec![0usize; q * q * q * q];
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for e in 0..q {
                    pattern_of[((a * q + b) * q + c) * q + e] = column_pattern(&[a, b, c, e]).index();
                }
            }
        }
    }
    let rows = (0..basis.num_classes())
        .map(|i| {
            let m = basis.dim(i);
            (0..m)
                .map(|j| {
                    (0..m)
                        .map(|h| {
                            let (l, r) = (basis.matrix(i, j), basis.matrix(i, h));
                            let mut row = vec![0i64; np];
                            for (ab, &lv) in l.entries().iter().enumerate() {
                                if lv == 0 {
                                    continue;
                                }
                                for (ce, &rv) in r.entries().iter().enumerate() {
                                    if rv != 0 {
                                        row[pattern_of[ab * q * q + ce]] += lv * rv;
                                    }
                                }
                            }
                            row
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    PairingTable { q, dims: basis.dims(), rows }
}

impl PairingTable {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_columns(&self) -> usize {
        num_patterns(self.q)
    }

    pub fn value(&self, class: usize, j: usize, h: usize, pattern: &SetPartition) -> i64 {
        self.rows[class][j][h].get(pattern.index()).copied().unwrap_or(0)
    }

    /// Row `(i, j, h)` over `Π(q)` in canonical order.
    pub fn row(&self, class: usize, j: usize, h: usize) -> &[i64] {
        &self.rows[class][j][h]
    }

    /// Serializable view: one record per `(i, j, h)` with nonzero coefficients.
    pub fn to_records(&self) -> Vec<PairingRecord> {
        let pats = set_partitions(self.q);
        let mut out = Vec::new();
        for (i, class) in self.rows.iter().enumerate() {
            for (j, cols) in class.iter().enumerate() {
                for (h, row) in cols.iter().enumerate() {
                    out.push(PairingRecord {
                        left: label(i, j),
                        right: label(i, h),
                        coefficients: row
                            .iter()
                            .zip(&pats)
                            .filter(|(v, _)| **v != 0)
                            .map(|(v, p)| (p.to_string(), *v))
                            .collect(),
                    });
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingRecord {
    pub left: String,
    pub right: String,
    pub coefficients: Vec<(String, i64)>,
}

/// One printed expansion: `B_i(j) ⊗ B_i(h) = Σ coeff(q) d*_P`.
struct ReferenceLine {
    class: usize,
    j: usize,
    h: usize,
    terms: fn(i64) -> Vec<(&'static str, i64)>,
}

const FOUR_MIXED: [&str; 4] = ["13,2,4", "14,2,3", "1,23,4", "1,24,3"];

fn with_signs(c: i64, signs: [i64; 4]) -> Vec<(&'static str, i64)> {
    FOUR_MIXED.iter().zip(signs).map(|(p, s)| (*p, c * s)).collect()
}

/// The fifteen reference expansions, with `q` left symbolic.
fn reference_lines() -> Vec<ReferenceLine> {
    fn line(class: usize, j: usize, h: usize, terms: fn(i64) -> Vec<(&'static str, i64)>) -> ReferenceLine {
        ReferenceLine { class, j, h, terms }
    }
    vec![
        line(0, 0, 0, |q| vec![("1234", q), ("12,34", q * (q - 1))]),
        line(0, 0, 1, |q| {
            let c = q * (q - 1);
            vec![("123,4", c), ("124,3", c), ("12,3,4", c * (q - 2))]
        }),
        line(0, 1, 0, |q| {
            let c = q * (q - 1);
            vec![("1,234", c), ("134,2", c), ("1,2,34", c * (q - 2))]
        }),
        line(0, 1, 1, |q| {
            let c = q * (q - 1);
            let mut t = vec![("13,24", c), ("14,23", c)];
            t.extend(with_signs(c * (q - 2), [1, 1, 1, 1]));
            t.push(("1,2,3,4", c * (q - 2) * (q - 3)));
            t
        }),
        line(1, 0, 0, |_| vec![("1234", 2), ("12,34", -2)]),
        line(1, 0, 1, |q| vec![("123,4", 2 * q), ("124,3", -2 * q)]),
        line(1, 0, 2, |q| {
            let c = 2 * (q - 2);
            vec![("124,3", c), ("123,4", c), ("12,3,4", -2 * c)]
        }),
        line(1, 1, 0, |q| vec![("134,2", 2 * q), ("1,234", -2 * q)]),
        line(1, 1, 1, |q| {
            let mut t = vec![("13,24", 4 * q), ("14,23", -4 * q)];
            t.extend(with_signs(2 * q * (q - 2), [1, -1, -1, 1]));
            t
        }),
        line(1, 1, 2, |q| with_signs(2 * q * (q - 2), [1, 1, -1, -1])),
        line(1, 2, 0, |q| {
            let c = 2 * (q - 2);
            vec![("1,234", c), ("134,2", c), ("1,2,34", -2 * c)]
        }),
        line(1, 2, 1, |q| with_signs(2 * q * (q - 2), [1, -1, 1, -1])),
        line(1, 2, 2, |q| {
            let c = 2 * (q - 2);
            let mut t = vec![("13,24", 2 * c), ("14,23", 2 * c)];
            t.extend(with_signs(c * (q - 4), [1, 1, 1, 1]));
            t.push(("1,2,3,4", 4 * c * (q - 3)));
            t
        }),
        line(2, 0, 0, |_| {
            let mut t = vec![("13,24", 6), ("14,23", -6)];
            t.extend(with_signs(6, [-1, 1, 1, -1]));
            t
        }),
        line(3, 0, 0, |_| {
            let mut t = vec![("13,24", 8), ("14,23", 8)];
            t.extend(with_signs(8, [-1, -1, -1, -1]));
            t.push(("1,2,3,4", 16));
            t
        }),
    ]
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LineStatus {
    Pass,
    Skipped { reason: String },
    Fail { mismatches: Vec<Mismatch> },
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Mismatch {
    pub pattern: String,
    pub expected: i64,
    pub computed: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LineReport {
    pub line: String,
    #[serde(flatten)]
    pub status: LineStatus,
    /// Set when a failure is exactly a known misprint.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
}

/// A printed coefficient known to be wrong. The corrected value is the one
/// forced by the identity `Σ_P (B ⊗ B')(d_P) = (Σ B)(Σ B')`.
pub struct Erratum {
    pub line: &'static str,
    pub pattern: &'static str,
    pub printed: fn(i64) -> i64,
    pub corrected: fn(i64) -> i64,
}

pub const ERRATA: &[Erratum] = &[Erratum {
    line: "B_2(3) ⊗ B_2(3)",
    pattern: "1,2,3,4",
    printed: |q| 8 * (q - 2) * (q - 3),
    corrected: |q| -8 * (q - 2) * (q - 3),
}];

fn explain(line: &str, q: i64, mismatches: &[Mismatch]) -> Option<String> {
    let e = ERRATA.iter().find(|e| e.line == line)?;
    let [m] = mismatches else { return None };
    (m.pattern == e.pattern && m.expected == (e.printed)(q) && m.computed == (e.corrected)(q)).then(|| {
        format!("printed coefficient of d*_{{{}}} is {}, the coefficient-sum identity forces {}", e.pattern, m.expected, m.computed)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub q: usize,
    pub lines: Vec<LineReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> usize {
        self.lines.iter().filter(|l| l.status == LineStatus::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.lines.iter().filter(|l| matches!(l.status, LineStatus::Fail { .. })).count()
    }

    pub fn skipped(&self) -> usize {
        self.lines.iter().filter(|l| matches!(l.status, LineStatus::Skipped { .. })).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    /// Failures not accounted for by [`ERRATA`].
    pub fn unexplained(&self) -> usize {
        self.lines.iter().filter(|l| matches!(l.status, LineStatus::Fail { .. }) && l.erratum.is_none()).count()
    }
}

/// Lines whose printed coefficients, evaluated at `q`, violate
/// `Σ_P coeff_P = (Σ B_i(j))(Σ B_i(h))`. Returns `(line, printed sum, required sum)`.
pub fn reference_sum_defects(q: usize) -> Result<Vec<(String, i64, i64)>> {
    let basis = build_basis(q)?;
    let mut out = Vec::new();
    for rl in reference_lines() {
        if rl.class >= basis.num_classes() || rl.j.max(rl.h) >= basis.dim(rl.class) {
            continue;
        }
        let printed: i64 = (rl.terms)(q as i64).iter().map(|(_, c)| c).sum();
        let total = |m: &IntMatrix| m.entries().iter().sum::<i64>();
        let required = total(basis.matrix(rl.class, rl.j)) * total(basis.matrix(rl.class, rl.h));
        if printed != required {
            out.push((format!("{} ⊗ {}", label(rl.class, rl.j), label(rl.class, rl.h)), printed, required));
        }
    }
    Ok(out)
}

fn check_line(basis: &BasisFamily, table: &PairingTable, rl: &ReferenceLine) -> Result<LineStatus> {
    let q = basis.q();
    if rl.class >= basis.num_classes() || rl.j.max(rl.h) >= basis.dim(rl.class) {
        return Ok(LineStatus::Skipped { reason: format!("basis element deleted for q = {q}") });
    }
    let pats = set_partitions(q);
    let mut expected = vec![0i64; pats.len()];
    let mut mismatches = Vec::new();
    for (p, c) in (rl.terms)(q as i64) {
        let p: SetPartition = p.parse()?;
        match pats.iter().position(|x| *x == p) {
            Some(idx) => expected[idx] += c,
            None if c != 0 => mismatches.push(Mismatch { pattern: p.to_string(), expected: c, computed: 0 }),
            None => {}
        }
    }
    let row = table.row(rl.class, rl.j, rl.h);
    for (idx, p) in pats.iter().enumerate() {
        if row[idx] != expected[idx] {
            mismatches.push(Mismatch { pattern: p.to_string(), expected: expected[idx], computed: row[idx] });
        }
    }
    Ok(if mismatches.is_empty() { LineStatus::Pass } else { LineStatus::Fail { mismatches } })
}

/// Compares the computed pairing table with the reference expansions
/// evaluated at `q`. Lines naming deleted basis elements are skipped; a
/// reference term on a pattern with more than `q` blocks must vanish.
pub fn verify_against_reference(q: usize) -> Result<VerificationReport> {
    let basis = build_basis(q)?;
    let table = pairing_table(&basis);
    let mut lines = Vec::new();
    for rl in reference_lines() {
        let name = format!("{} ⊗ {}", label(rl.class, rl.j), label(rl.class, rl.h));
        let status = check_line(&basis, &table, &rl)?;
        let erratum = match &status {
            LineStatus::Fail { mismatches } => explain(&name, q as i64, mismatches),
            _ => None,
        };
        lines.push(LineReport { line: name, status, erratum });
    }
    Ok(VerificationReport { q, lines })
}
