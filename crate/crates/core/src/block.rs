//! Representative index sets, block entries as integer linear forms in the
//! orbit variables `y(ω)`, and the assembled SDP.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::basis::{build_basis, pairing_table, PairingTable};
use crate::error::{invalid, Error, Result};
use crate::orbit::{enumerate_orbits, OrbitCatalog};
use crate::poly::{p_component, Polynomial, MAX_DEGREE};
use crate::sdpa::WriteSummary;
use crate::young::{compositions, partitions_of, semistandard_tableaux, Partition, Tableau};

fn check_parameters(q: usize, n: usize, d: usize) -> Result<()> {
    if q < 2 {
        return Err(invalid(format!("alphabet size q = {q} must be at least 2")));
    }
    if n == 0 || n > MAX_DEGREE as usize {
        return Err(invalid(format!("word length n = {n} must be in 1..={MAX_DEGREE}")));
    }
    if d == 0 || d > n {
        return Err(invalid(format!("distance d = {d} must be in 1..={n}")));
    }
    Ok(())
}

/// `|τ_2^{-1}(2)| + |τ_3^{-1}(1)|` is even.
pub fn parity_ok(taus: &[Tableau]) -> bool {
    let twos = taus.get(1).map_or(0, |t| t.count(2));
    let ones = taus.get(2).map_or(0, |t| t.count(1));
    (twos + ones).is_multiple_of(2)
}

/// Number of coordinates a row of type `τ` lets its two words differ in:
/// `n - |τ_1^{-1}(1)| - |τ_2^{-1}(1)|`.
pub fn row_distance(taus: &[Tableau], n: usize) -> usize {
    n - taus[0].count(1) - taus.get(1).map_or(0, |t| t.count(1))
}

pub fn distance_ok(taus: &[Tableau], n: usize, d: usize) -> bool {
    let t = row_distance(taus, n);
    t == 0 || t >= d
}

/// One pair `(bold_n, bold_λ)` with its filtered tableau tuples `W″`.
#[derive(Clone, Debug, Serialize)]
pub struct RepIndex {
    pub bold_n: Vec<usize>,
    pub lambdas: Vec<Partition>,
    pub tableaux: Vec<Vec<Tableau>>,
    /// `bold_n = (n, 0, ...)`, `bold_λ = ((n), (), ...)`: the block that
    /// receives the `∅` row.
    pub trivial: bool,
}

impl RepIndex {
    pub fn size(&self) -> usize {
        self.tableaux.len()
    }

    pub fn label(&self) -> String {
        let ns = self.bold_n.iter().map(|x| x.to_string()).join(",");
        let ls = self.lambdas.iter().map(|l| l.to_string()).join("");
        format!("n=({ns}) λ={ls}")
    }
}

/// All `(bold_n, bold_λ)` with nonempty `W″`. Compositions and partitions
/// are visited in decreasing lexicographic order, so the trivial index
/// comes first.
pub fn representative_index(q: usize, n: usize, d: usize) -> Result<Vec<RepIndex>> {
    check_parameters(q, n, d)?;
    let dims = build_basis(q)?.dims();
    let k = dims.len();
    let mut comps = compositions(n, k);
    comps.reverse();
    let mut out = Vec::new();
    for bold_n in comps {
        let choices: Vec<Vec<Partition>> = bold_n
            .iter()
            .zip(&dims)
            .map(|(&ni, &m)| partitions_of(ni).into_iter().filter(|l| l.height() <= m).collect())
            .collect();
        for lambdas in choices.into_iter().multi_cartesian_product() {
            let lists: Vec<Vec<Tableau>> =
                lambdas.iter().zip(&dims).map(|(l, &m)| semistandard_tableaux(l, m)).collect();
            let tableaux: Vec<Vec<Tableau>> = lists
                .into_iter()
                .multi_cartesian_product()
                .filter(|taus| parity_ok(taus) && distance_ok(taus, n, d))
                .collect();
            if tableaux.is_empty() {
                continue;
            }
            let trivial = bold_n[0] == n && lambdas[0] == Partition::row(n);
            out.push(RepIndex { bold_n: bold_n.clone(), lambdas, tableaux, trivial });
        }
    }
    Ok(out)
}

/// `constant + Σ coeff · y(ω)`, keyed by orbit index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffineForm {
    pub constant: BigInt,
    pub terms: BTreeMap<usize, BigInt>,
}

impl AffineForm {
    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    pub fn coefficient(&self, orbit: usize) -> BigInt {
        self.terms.get(&orbit).cloned().unwrap_or_default()
    }

    fn add(&mut self, orbit: usize, c: &BigInt) {
        let e = self.terms.entry(orbit).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&orbit);
        }
    }

    /// Value at `y`, with `y` indexed by orbit.
    pub fn evaluate(&self, y: &[f64]) -> f64 {
        let c = bigint_to_f64(&self.constant);
        self.terms.iter().fold(c, |acc, (&o, k)| acc + bigint_to_f64(k) * y[o])
    }

    fn coefficients(&self) -> impl Iterator<Item = &BigInt> {
        std::iter::once(&self.constant).chain(self.terms.values())
    }

    fn divide(&mut self, g: &BigInt) {
        self.constant /= g;
        for v in self.terms.values_mut() {
            *v /= g;
        }
    }
}

pub(crate) fn bigint_to_f64(v: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.constant.is_zero() || self.terms.is_empty() {
            parts.push(self.constant.to_string());
        }
        for (o, c) in &self.terms {
            parts.push(format!("{c}*y{o}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

/// A row label: the `∅` row, a tableau tuple, or an explicit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowLabel {
    Empty,
    Tableaux(Vec<Tableau>),
    Code(String),
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::Empty => f.write_str("∅"),
            RowLabel::Tableaux(ts) => f.write_str(&ts.iter().map(|t| t.to_string()).join("")),
            RowLabel::Code(c) => f.write_str(c),
        }
    }
}

/// One congruence image of `M(y)`, entries as affine forms in `y`.
#[derive(Clone, Debug)]
pub struct Block {
    pub label: String,
    pub rows: Vec<RowLabel>,
    pub entries: Vec<Vec<AffineForm>>,
    pub trivial: bool,
    pub augmented: bool,
    /// Common factor divided out of every coefficient.
    pub gcd: BigInt,
}

impl Block {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &AffineForm {
        &self.entries[r][c]
    }

    /// Orbits referenced with a nonzero coefficient.
    pub fn orbits(&self) -> BTreeSet<usize> {
        self.entries.iter().flatten().flat_map(|f| f.terms.keys().copied()).collect()
    }

    pub fn evaluate(&self, y: &[f64]) -> Vec<Vec<f64>> {
        self.entries.iter().map(|row| row.iter().map(|f| f.evaluate(y)).collect()).collect()
    }

    /// Largest absolute coefficient.
    pub fn max_coefficient(&self) -> BigInt {
        self.entries.iter().flatten().flat_map(|f| f.coefficients()).map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Divides every coefficient by their common gcd and records it.
    pub fn reduce_gcd(&mut self) {
        let g = self
            .entries
            .iter()
            .flatten()
            .flat_map(|f| f.coefficients())
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        if g > BigInt::one() {
            for f in self.entries.iter_mut().flatten() {
                f.divide(&g);
            }
            self.gcd *= &g;
        }
    }
}

/// Folds a `d*` polynomial onto orbits, dropping inadmissible ones.
pub fn fold_onto_orbits(p: &Polynomial, catalog: &OrbitCatalog, d: usize) -> Result<AffineForm> {
    let mut form = AffineForm::default();
    for (mu, c) in p.terms() {
        let o = catalog
            .orbit_of(mu)
            .ok_or_else(|| Error::Assembly(format!("monomial {} is not a degree-{} monomial over Π(q)", mu.display_dual(), catalog.n())))?;
        if catalog.admissible(o, d) {
            form.add(o, c);
        }
    }
    Ok(form)
}

/// Entries of the block for `rep`: `p_{τ,σ}` is computed for `τ ≤ σ`
/// (component factors cached and shared), folded onto orbits, and mirrored.
pub fn assemble_block(
    d: usize,
    rep: &RepIndex,
    catalog: &OrbitCatalog,
    table: &PairingTable,
) -> Result<Block> {
    let dims = table.dims();
    if rep.lambdas.len() != dims.len() {
        return Err(Error::Assembly("index and basis family disagree on the number of components".into()));
    }
    if rep.bold_n.iter().sum::<usize>() != catalog.n() || table.q() != catalog.q() {
        return Err(Error::Assembly("index, catalog and pairing table disagree on (q, n)".into()));
    }
    let size = rep.size();
    let mut keys: BTreeSet<(usize, Tableau, Tableau)> = BTreeSet::new();
    for r in 0..size {
        for c in r..size {
            for i in 0..dims.len() {
                if rep.lambdas[i].weight() > 0 {
                    keys.insert((i, rep.tableaux[r][i].clone(), rep.tableaux[c][i].clone()));
                }
            }
        }
    }
    let keys: Vec<_> = keys.into_iter().collect();
    let computed: Vec<Polynomial> = keys
        .par_iter()
        .map(|(i, t, s)| p_component(table, *i, &rep.lambdas[*i], t, s))
        .collect::<Result<_>>()?;
    let cache: HashMap<&(usize, Tableau, Tableau), &Polynomial> = keys.iter().zip(&computed).collect();

    let pairs: Vec<(usize, usize)> = (0..size).flat_map(|r| (r..size).map(move |c| (r, c))).collect();
    let forms: Vec<AffineForm> = pairs
        .par_iter()
        .map(|&(r, c)| {
            let mut p = Polynomial::one();
            for i in 0..dims.len() {
                if rep.lambdas[i].weight() > 0 {
                    let key = (i, rep.tableaux[r][i].clone(), rep.tableaux[c][i].clone());
                    p = p.mul(cache[&key]);
                }
            }
            fold_onto_orbits(&p, catalog, d)
        })
        .collect::<Result<_>>()?;
    let mut entries = vec![vec![AffineForm::default(); size]; size];
    for ((r, c), f) in pairs.into_iter().zip(forms) {
        entries[c][r] = f.clone();
        entries[r][c] = f;
    }
    Ok(Block {
        label: rep.label(),
        rows: rep.tableaux.iter().map(|t| RowLabel::Tableaux(t.clone())).collect(),
        entries,
        trivial: rep.trivial,
        augmented: false,
        gcd: BigInt::one(),
    })
}

/// Prepends the `∅` row and column to the trivial block: `(∅,∅) = 1` and
/// `(∅, τ_t) = C(n,t) q^n (q-1)^t y(pair orbit at distance t)`, where `t`
/// is the number of 2's in `τ_t`.
pub fn augment_empty_block(block: &Block, q: usize, d: usize, catalog: &OrbitCatalog) -> Result<Block> {
    if !block.trivial || block.augmented {
        return Err(Error::Assembly(format!("block {} cannot take the ∅ row", block.label)));
    }
    if !block.gcd.is_one() {
        return Err(Error::Assembly("augment the trivial block before gcd reduction".into()));
    }
    let n = catalog.n();
    let qn = BigInt::from(q).pow(n as u32);
    let mut first = vec![AffineForm { constant: BigInt::one(), terms: BTreeMap::new() }];
    for row in &block.rows {
        let RowLabel::Tableaux(ts) = row else {
            return Err(Error::Assembly("trivial block already has an ∅ row".into()));
        };
        let t = ts[0].count(2);
        let mut f = AffineForm::default();
        let o = catalog.pair_orbit(t)?;
        if catalog.admissible(o, d) {
            let c = binomial(n, t) * &qn * BigInt::from(q - 1).pow(t as u32);
            f.add(o, &c);
        }
        first.push(f);
    }
    let size = block.size() + 1;
    let mut entries = Vec::with_capacity(size);
    entries.push(first.clone());
    for (r, row) in block.entries.iter().enumerate() {
        let mut new_row = Vec::with_capacity(size);
        new_row.push(first[r + 1].clone());
        new_row.extend(row.iter().cloned());
        entries.push(new_row);
    }
    let mut rows = vec![RowLabel::Empty];
    rows.extend(block.rows.iter().cloned());
    Ok(Block { label: block.label.clone(), rows, entries, trivial: true, augmented: true, gcd: block.gcd.clone() })
}

/// The reduced SDP: maximize `q^n y(singleton)` subject to every block
/// being PSD and `y ≥ 0`, with `y(∅) = 1` folded into constants.
#[derive(Clone, Debug)]
pub struct SdpProblem {
    pub q: usize,
    pub n: usize,
    pub d: usize,
    /// Orbit index of each variable, ascending.
    pub variables: Vec<usize>,
    /// `(variable, coefficient)` of the maximized objective.
    pub objective: Vec<(usize, BigInt)>,
    pub blocks: Vec<Block>,
    pub orbits: Vec<OrbitInfo>,
    /// Short description of the source of the problem.
    pub origin: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitInfo {
    pub id: String,
    pub cardinality: usize,
    pub min_distance: Option<usize>,
}

impl SdpProblem {
    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn variable_of_orbit(&self, orbit: usize) -> Option<usize> {
        self.variables.binary_search(&orbit).ok()
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(|b| b.size()).max().unwrap_or(0)
    }

    /// Objective value at an orbit assignment `y`.
    pub fn objective_value(&self, y: &[f64]) -> f64 {
        self.objective.iter().map(|(v, c)| bigint_to_f64(c) * y[self.variables[*v]]).sum()
    }

    /// JSON description: parameters, orbit table, block labels and sizes,
    /// scaling factors and the objective, as written with `summary`.
    pub fn manifest(&self, summary: &WriteSummary) -> Value {
        let conditioning = &summary.conditioning;
        let variables: Vec<Value> = self
            .variables
            .iter()
            .enumerate()
            .map(|(v, &o)| {
                let info = &self.orbits[o];
                json!({
                    "variable": v + 1,
                    "orbit": o,
                    "id": info.id,
                    "cardinality": info.cardinality,
                    "min_distance": info.min_distance,
                    "scale_log2": conditioning.variable_exponents.get(v).copied().unwrap_or(0),
                })
            })
            .collect();
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(b, blk)| {
                json!({
                    "block": b + 1,
                    "label": blk.label,
                    "size": blk.size(),
                    "empty_row": blk.augmented,
                    "gcd_divisor": blk.gcd.to_string(),
                    "decimal_shift": summary.decimal_shifts.get(b).copied().unwrap_or(0),
                    "row_scale_log2": conditioning.row_exponents.get(b).cloned().unwrap_or_default(),
                    "rows": blk.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "parameters": { "q": self.q, "n": self.n, "d": self.d },
            "origin": self.origin,
            "sense": "maximize; the SDPA file holds the negated objective for minimization",
            "objective": self.objective.iter().map(|(v, c)| json!({ "variable": v + 1, "coefficient": c.to_string() })).collect::<Vec<_>>(),
            "fixed": { "empty_orbit": 1 },
            "nonnegativity_block": self.blocks.len() + 1,
            "density_log2": conditioning.density_log2,
            "scaling": "written variable v is y / 2^scale_log2; block rows are multiplied by 2^row_scale_log2 on both sides; blocks were divided by gcd_divisor and then by 10^decimal_shift",
            "variables": variables,
            "blocks": blocks,
            "entry_convention": "entry (τ,σ) coefficient of y(ω) sums p_{τ,σ} over ordered 4-tuples in ω; the ∅ row sums y over ordered word pairs",
        })
    }
}

/// Power-of-two rescaling applied when writing. The written variable `x_v`
/// stands for `2^{-variable_exponents[v]} y`, and block `b` is conjugated by
/// `diag(2^{row_exponents[b][r]})`. Neither changes the optimum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Conditioning {
    /// `log2 p` of the reference point `y(ω) = p^{|ω|}`.
    pub density_log2: i32,
    pub variable_exponents: Vec<i32>,
    pub row_exponents: Vec<Vec<i32>>,
}

impl Conditioning {
    pub fn identity(problem: &SdpProblem) -> Self {
        Conditioning {
            density_log2: 0,
            variable_exponents: vec![0; problem.num_variables()],
            row_exponents: problem.blocks.iter().map(|b| vec![0; b.size()]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.variable_exponents.iter().chain(self.row_exponents.iter().flatten()).all(|&e| e == 0)
    }
}

fn nearest_exponent(v: f64) -> i32 {
    (-0.5 * v.log2()).round() as i32
}

impl SdpProblem {
    /// `-⌈log2 V⌉` with `V` the Hamming ball volume of radius `⌊(d-1)/2⌋`,
    /// so `p` is close to the largest density a code can have.
    pub fn default_density_log2(&self) -> i32 {
        let radius = (self.d - 1) / 2;
        let volume: BigInt = (0..=radius)
            .map(|i| binomial(self.n, i) * BigInt::from(self.q - 1).pow(i as u32))
            .sum();
        -((volume - 1u32).bits() as i32)
    }

    /// Variables scaled by `p^{|ω|}`; each block row by the power of two
    /// nearest `1/sqrt` of its diagonal at that point (or of its largest
    /// entry when the diagonal is not clearly positive).
    pub fn conditioning(&self, density_log2: i32) -> Conditioning {
        let p = 2f64.powi(density_log2);
        let y: Vec<f64> = self.orbits.iter().map(|o| p.powi(o.cardinality as i32)).collect();
        let variable_exponents = self.variables.iter().map(|&o| density_log2 * self.orbits[o].cardinality as i32).collect();
        let row_exponents = self
            .blocks
            .iter()
            .map(|b| {
                let m = b.evaluate(&y);
                (0..b.size())
                    .map(|r| {
                        let largest = m[r].iter().fold(0f64, |a, v| a.max(v.abs()));
                        if m[r][r] > 1e-12 * largest {
                            nearest_exponent(m[r][r])
                        } else if largest > 0.0 {
                            nearest_exponent(largest)
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        Conditioning { density_log2, variable_exponents, row_exponents }
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub(crate) fn orbit_infos(catalog: &OrbitCatalog) -> Vec<OrbitInfo> {
    catalog
        .orbits()
        .iter()
        .map(|o| OrbitInfo { id: o.id.to_string(), cardinality: o.cardinality, min_distance: o.min_distance })
        .collect()
}

/// Collects the variables referenced by `blocks` and builds the problem
/// maximizing `q^n y(objective_orbit)`.
pub(crate) fn finish_problem(
    q: usize,
    n: usize,
    d: usize,
    mut blocks: Vec<Block>,
    orbits: Vec<OrbitInfo>,
    objective_orbit: usize,
    origin: &str,
) -> Result<SdpProblem> {
    for b in &mut blocks {
        b.reduce_gcd();
    }
    let used: BTreeSet<usize> = blocks.iter().flat_map(|b| b.orbits()).collect();
    let variables: Vec<usize> = used.into_iter().collect();
    let v = variables
        .binary_search(&objective_orbit)
        .map_err(|_| Error::Assembly("the singleton orbit does not occur in any block".into()))?;
    let objective = vec![(v, BigInt::from(q).pow(n as u32))];
    Ok(SdpProblem { q, n, d, variables, objective, blocks, orbits, origin: origin.to_string() })
}

/// Assembles the reduced problem for `(q, n, d)`.
pub fn assemble_problem(q: usize, n: usize, d: usize) -> Result<SdpProblem> {
    check_parameters(q, n, d)?;
    let table = pairing_table(&build_basis(q)?);
    let catalog = enumerate_orbits(q, n)?;
    let reps = representative_index(q, n, d)?;
    let mut blocks = Vec::with_capacity(reps.len());
    for rep in &reps {
        let block = assemble_block(d, rep, &catalog, &table)?;
        blocks.push(if rep.trivial { augment_empty_block(&block, q, d, &catalog)? } else { block });
    }
    blocks.retain(|b| b.entries.iter().flatten().any(|f| !f.is_zero()));
    finish_problem(q, n, d, blocks, orbit_infos(&catalog), catalog.singleton_orbit(), "reduced")
}
