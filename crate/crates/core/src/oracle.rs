//! Unreduced objects at toy scale: orbits of codes by explicit group
//! action, the full moment matrix `M(y)`, explicit representative vectors,
//! and the unreduced SDP. Everything here exists to cross-check the reduced
//! pipeline.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basis::{build_basis, pairing_table, BasisFamily};
use crate::block::{
    assemble_block, assemble_problem, augment_empty_block, bigint_to_f64, finish_problem, orbit_infos,
    representative_index, AffineForm, Block, RepIndex, RowLabel, SdpProblem,
};
use crate::error::{invalid, Error, Result};
use crate::orbit::{canonical_id, enumerate_orbits, hamming, min_distance, orbit_size, OrbitCatalog};
use crate::pattern::column_pattern;
use crate::poly::{Monomial, Polynomial};
use crate::young::{column_group, Tableau};

/// Default cap on `q^n` for orbit and matrix work.
pub const SPACE_CAP: usize = 64;
/// Default cap on `q^n` for explicit representative vectors.
pub const VECTOR_CAP: usize = 16;

/// `[q]^n` with words indexed little-endian (`Σ a_p q^p`), and `C_2` as
/// sorted lists of word indices: `∅`, singletons, then pairs.
#[derive(Clone, Debug)]
pub struct ExplicitCodeSpace {
    pub q: usize,
    pub n: usize,
    pub words: Vec<Vec<u8>>,
    pub c2: Vec<Vec<usize>>,
    c2_index: HashMap<Vec<usize>, usize>,
}

impl ExplicitCodeSpace {
    pub fn new(q: usize, n: usize, cap: usize) -> Result<Self> {
        if q < 2 || n == 0 {
            return Err(invalid(format!("need q ≥ 2 and n ≥ 1, got q = {q}, n = {n}")));
        }
        let size = q.checked_pow(n as u32).filter(|&s| s <= cap);
        let Some(size) = size else {
            return Err(Error::OracleLimit(format!("q^n = {q}^{n} exceeds the cap {cap}")));
        };
        let words: Vec<Vec<u8>> = (0..size)
            .map(|mut i| {
                (0..n)
                    .map(|_| {
                        let a = (i % q) as u8;
                        i /= q;
                        a
                    })
                    .collect()
            })
            .collect();
        let mut c2 = vec![Vec::new()];
        c2.extend((0..size).map(|w| vec![w]));
        for a in 0..size {
            for b in a + 1..size {
                c2.push(vec![a, b]);
            }
        }
        let c2_index = c2.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Ok(ExplicitCodeSpace { q, n, words, c2, c2_index })
    }

    pub fn num_words(&self) -> usize {
        self.words.len()
    }

    pub fn word_index(&self, w: &[u8]) -> usize {
        w.iter().rev().fold(0, |acc, &a| acc * self.q + a as usize)
    }

    pub fn c2_position(&self, code: &[usize]) -> Option<usize> {
        self.c2_index.get(code).copied()
    }

    pub fn code_words(&self, code: &[usize]) -> Vec<Vec<u8>> {
        code.iter().map(|&i| self.words[i].clone()).collect()
    }

    /// Minimum distance of a code given by word indices.
    pub fn code_distance(&self, code: &[usize]) -> Option<usize> {
        min_distance(&self.code_words(code))
    }

    fn admissible(&self, code: &[usize], d: usize) -> bool {
        self.code_distance(code).is_none_or(|m| m >= d)
    }

    /// Generators of `S_q^n ⋊ S_n` as permutations of word indices: adjacent
    /// coordinate transpositions, and a transposition and a `q`-cycle of the
    /// letters in the first coordinate.
    pub fn generators(&self) -> Vec<Vec<usize>> {
        let mut gens = Vec::new();
        let apply = |f: &dyn Fn(&[u8]) -> Vec<u8>| -> Vec<usize> {
            self.words.iter().map(|w| self.word_index(&f(w))).collect()
        };
        for i in 0..self.n.saturating_sub(1) {
            gens.push(apply(&|w: &[u8]| {
                let mut v = w.to_vec();
                v.swap(i, i + 1);
                v
            }));
        }
        let q = self.q as u8;
        gens.push(apply(&|w: &[u8]| {
            let mut v = w.to_vec();
            v[0] = match v[0] {
                0 => 1,
                1 => 0,
                a => a,
            };
            v
        }));
        if q > 2 {
            gens.push(apply(&|w: &[u8]| {
                let mut v = w.to_vec();
                v[0] = (v[0] + 1) % q;
                v
            }));
        }
        gens
    }
}

/// One orbit of `H` on codes of size at most 4, found by closure.
#[derive(Clone, Debug, Serialize)]
pub struct DirectOrbit {
    /// Smallest member in (size, lexicographic) order.
    pub representative: Vec<usize>,
    pub size: usize,
    pub cardinality: usize,
    pub min_distance: Option<usize>,
    /// Matching index in the orbit catalog.
    pub catalog_index: usize,
}

#[derive(Clone, Debug)]
pub struct DirectOrbits {
    pub orbits: Vec<DirectOrbit>,
    orbit_of: HashMap<Vec<usize>, usize>,
    /// Every member of every orbit had the representative's canonical id.
    pub ids_constant: bool,
}

impl DirectOrbits {
    pub fn orbit_of(&self, code: &[usize]) -> Option<usize> {
        self.orbit_of.get(code).copied()
    }

    /// Catalog index of the orbit of a code given by sorted word indices.
    pub fn catalog_orbit(&self, code: &[usize]) -> Option<usize> {
        self.orbit_of(code).map(|o| self.orbits[o].catalog_index)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn subsets_up_to_four(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..4 {
        let mut next = Vec::new();
        for s in &layer {
            let start = s.last().map_or(0, |&l| l + 1);
            for w in start..n {
                let mut t = s.clone();
                t.push(w);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Orbits of `H` on `C_4` by union-find closure under the generators,
/// matched against `catalog` through canonical ids.
pub fn enumerate_orbits_direct(space: &ExplicitCodeSpace, catalog: &OrbitCatalog) -> Result<DirectOrbits> {
    let subsets = subsets_up_to_four(space.num_words());
    let index: HashMap<&Vec<usize>, usize> = subsets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut parent: Vec<usize> = (0..subsets.len()).collect();
    for g in space.generators() {
        for (i, s) in subsets.iter().enumerate() {
            let mut img: Vec<usize> = s.iter().map(|&w| g[w]).collect();
            img.sort_unstable();
            let j = index[&img];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut roots: BTreeMap<usize, usize> = BTreeMap::new();
    let mut orbits: Vec<DirectOrbit> = Vec::new();
    let mut orbit_of = HashMap::with_capacity(subsets.len());
    let mut ids_constant = true;
    let mut ids = Vec::new();
    for (i, s) in subsets.iter().enumerate() {
        let r = find(&mut parent, i);
        let words = space.code_words(s);
        let o = match roots.get(&r) {
            Some(&o) => {
                ids_constant &= canonical_id(&words) == ids[o];
                orbits[o].size += 1;
                o
            }
            None => {
                let id = canonical_id(&words);
                let catalog_index = catalog
                    .index_of_id(&id)
                    .ok_or_else(|| Error::Assembly(format!("direct orbit of {s:?} is missing from the catalog")))?;
                ids.push(id);
                orbits.push(DirectOrbit {
                    representative: s.clone(),
                    size: 1,
                    cardinality: s.len(),
                    min_distance: min_distance(&words),
                    catalog_index,
                });
                roots.insert(r, orbits.len() - 1);
                orbits.len() - 1
            }
        };
        orbit_of.insert(s.clone(), o);
    }
    Ok(DirectOrbits { orbits, orbit_of, ids_constant })
}

/// `M(y)` restricted to `C_2^d ∪ {∅}`, symbolically: each cell holds the
/// catalog orbit of `C ∪ C'`, or `None` when that union is inadmissible.
#[derive(Clone, Debug)]
pub struct ExplicitMatrix {
    pub rows: Vec<Vec<usize>>,
    pub cells: Vec<Vec<Option<usize>>>,
}

impl ExplicitMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Numeric matrix at `y` (indexed by catalog orbit, `y(∅) = 1`).
    pub fn evaluate(&self, y: &[f64]) -> DMatrix<f64> {
        let k = self.size();
        DMatrix::from_fn(k, k, |r, c| self.cells[r][c].map_or(0.0, |o| y[o]))
    }
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

pub fn build_full_matrix(space: &ExplicitCodeSpace, direct: &DirectOrbits, d: usize) -> ExplicitMatrix {
    let rows: Vec<Vec<usize>> = space.c2.iter().filter(|c| space.admissible(c, d)).cloned().collect();
    let cells = rows
        .iter()
        .map(|a| {
            rows.iter()
                .map(|b| {
                    let u = union(a, b);
                    space.admissible(&u, d).then(|| direct.catalog_orbit(&u).expect("union has at most 4 words"))
                })
                .collect()
        })
        .collect();
    ExplicitMatrix { rows, cells }
}

/// Smallest eigenvalue after scaling to unit max-entry.
pub fn scaled_min_eigenvalue(m: DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let scale = m.amax();
    let m = if scale > 0.0 { m / scale } else { m };
    m.symmetric_eigenvalues().min()
}

/// Eigenvalue tolerance used for PSD verdicts.
pub const PSD_TOLERANCE: f64 = 1e-8;

/// Smallest scaled eigenvalue over all blocks at `y`.
pub fn reduced_min_eigenvalue(blocks: &[Block], y: &[f64]) -> f64 {
    blocks
        .iter()
        .map(|b| {
            let m = b.evaluate(y);
            let k = m.len();
            scaled_min_eigenvalue(DMatrix::from_fn(k, k, |r, c| m[r][c]))
        })
        .fold(f64::INFINITY, f64::min)
}

/// `y(ω) = |{C ∈ ω : C ⊆ D}| / |ω|`: the symmetrization of the indicator
/// `x(C) = [C ⊆ D]`. `y(∅) = 1`.
pub fn code_induced_y(catalog: &OrbitCatalog, code: &[Vec<u8>]) -> Vec<f64> {
    let mut hits = vec![0u64; catalog.len()];
    let k = code.len();
    let mut visit = |sub: &[usize]| {
        let words: Vec<Vec<u8>> = sub.iter().map(|&i| code[i].clone()).collect();
        if let Some(o) = catalog.orbit_of_words(&words) {
            hits[o] += 1;
        }
    };
    for s in subsets_up_to_four(k) {
        visit(&s);
    }
    catalog
        .orbits()
        .iter()
        .zip(hits)
        .map(|(o, h)| h as f64 / bigint_to_f64(&orbit_size(&o.id, catalog.q(), catalog.n())))
        .collect()
}

/// Lexicographic greedy code with minimum distance `d`.
pub fn greedy_code(q: usize, n: usize, d: usize) -> Result<Vec<Vec<u8>>> {
    let space = ExplicitCodeSpace::new(q, n, usize::MAX)?;
    let order: Vec<usize> = (0..space.num_words()).collect();
    Ok(greedy_in_order(&space, d, &order))
}

/// Greedy code over a shuffled word order.
pub fn random_greedy_code(q: usize, n: usize, d: usize, rng: &mut impl Rng) -> Result<Vec<Vec<u8>>> {
    let space = ExplicitCodeSpace::new(q, n, usize::MAX)?;
    let mut order: Vec<usize> = (0..space.num_words()).collect();
    order.shuffle(rng);
    Ok(greedy_in_order(&space, d, &order))
}

fn greedy_in_order(space: &ExplicitCodeSpace, d: usize, order: &[usize]) -> Vec<Vec<u8>> {
    let mut code: Vec<Vec<u8>> = Vec::new();
    for &i in order {
        let w = &space.words[i];
        if code.iter().all(|c| hamming(c, w) >= d) {
            code.push(w.clone());
        }
    }
    code
}

#[derive(Clone, Debug, Serialize)]
pub struct Disagreement {
    pub trial: usize,
    pub kind: &'static str,
    pub explicit_min: f64,
    pub reduced_min: f64,
    pub y: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub q: usize,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub trials: usize,
    pub agreements: usize,
    /// Trials where both sides were PSD.
    pub both_psd: usize,
    pub disagreements: Vec<Disagreement>,
}

impl TrialReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares PSD verdicts of the explicit matrix and the reduced blocks.
/// The first `trials` draws are uniform on `[-1, 1]` over admissible
/// orbits; a second set of `trials` draws perturbs a code-induced point
/// by noise of decreasing size, which exercises the PSD boundary.
pub fn psd_equivalence_trial(q: usize, n: usize, d: usize, trials: usize, seed: u64) -> Result<TrialReport> {
    let space = ExplicitCodeSpace::new(q, n, SPACE_CAP)?;
    let catalog = enumerate_orbits(q, n)?;
    let direct = enumerate_orbits_direct(&space, &catalog)?;
    let full = build_full_matrix(&space, &direct, d);
    let problem = assemble_problem(q, n, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let empty = catalog.empty_orbit();
    let admissible: Vec<bool> = (0..catalog.len()).map(|o| catalog.admissible(o, d)).collect();
    let mut report = TrialReport { q, n, d, seed, trials: 0, agreements: 0, both_psd: 0, disagreements: Vec::new() };
    for t in 0..2 * trials {
        let (kind, y) = if t < trials {
            let y: Vec<f64> = (0..catalog.len())
                .map(|o| match o {
                    _ if o == empty => 1.0,
                    _ if admissible[o] => rng.gen_range(-1.0..=1.0),
                    _ => 0.0,
                })
                .collect();
            ("uniform", y)
        } else {
            let code = random_greedy_code(q, n, d, &mut rng)?;
            let base = code_induced_y(&catalog, &code);
            let eps = [0.0, 1e-3, 1e-2, 1e-1][t % 4];
            let y: Vec<f64> = base
                .iter()
                .enumerate()
                .map(|(o, &v)| match o {
                    _ if o == empty => 1.0,
                    _ if admissible[o] => v + eps * rng.gen_range(-1.0..=1.0),
                    _ => 0.0,
                })
                .collect();
            ("perturbed-code", y)
        };
        let explicit_min = scaled_min_eigenvalue(full.evaluate(&y));
        let reduced_min = reduced_min_eigenvalue(&problem.blocks, &y);
        let (a, b) = (explicit_min >= -PSD_TOLERANCE, reduced_min >= -PSD_TOLERANCE);
        report.trials += 1;
        if a == b {
            report.agreements += 1;
            report.both_psd += usize::from(a);
        } else {
            report.disagreements.push(Disagreement { trial: t, kind, explicit_min, reduced_min, y });
        }
    }
    Ok(report)
}

/// `u_{τ,B}` in `(R^{q×q})^{⊗|λ|}`: `Σ_{τ'∼τ} Σ_{c∈C_λ} sgn(c) ⊗_y B(τ'(c(y)))`,
/// cells in row-concatenated order, entry `(a_p, b_p)` of cell `p` at
/// digit `p` (base `q²`) of the index.
pub fn representative_vector(basis: &BasisFamily, class: usize, tau: &Tableau) -> Vec<i64> {
    let q = basis.q();
    let cells = tau.shape().weight();
    let len = (q * q).pow(cells as u32);
    let mut u = vec![0i64; len];
    let group = column_group(tau.shape());
    for tp in tau.row_equivalents() {
        let te = tp.entries();
        for (c, sign) in &group {
            let mats: Vec<_> = (0..cells).map(|p| basis.matrix(class, te[c[p]] as usize - 1)).collect();
            for (idx, slot) in u.iter_mut().enumerate() {
                let mut rest = idx;
                let mut prod = *sign;
                for m in &mats {
                    let ab = rest % (q * q);
                    rest /= q * q;
                    prod *= m.get(ab / q, ab % q);
                    if prod == 0 {
                        break;
                    }
                }
                *slot += prod;
            }
        }
    }
    u
}

/// `v_τ = u_{τ_1,B_1} ⊗ ... ⊗ u_{τ_k,B_k}`, component 1 in the low digits.
pub fn tensor_vector(basis: &BasisFamily, taus: &[Tableau]) -> Vec<i64> {
    let mut v = vec![1i64];
    for (i, t) in taus.iter().enumerate() {
        let u = representative_vector(basis, i, t);
        let mut next = vec![0i64; v.len() * u.len()];
        for (b, &ub) in u.iter().enumerate() {
            if ub != 0 {
                for (a, &va) in v.iter().enumerate() {
                    next[a + b * v.len()] = va * ub;
                }
            }
        }
        v = next;
    }
    v
}

/// Splits a tensor index into the word pair `(α, β)` (word indices).
fn word_pair(space: &ExplicitCodeSpace, mut idx: usize) -> (usize, usize) {
    let q = space.q;
    let (mut alpha, mut beta, mut place) = (0, 0, 1);
    for _ in 0..space.n {
        let ab = idx % (q * q);
        idx /= q * q;
        alpha += (ab / q) * place;
        beta += (ab % q) * place;
        place *= q;
    }
    (alpha, beta)
}

/// `F v` on `C_2`: the value at `{α, β}` sums `v` over ordered pairs
/// `(α, β)` giving that set.
pub fn apply_f(space: &ExplicitCodeSpace, v: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; space.c2.len()];
    for (idx, &x) in v.iter().enumerate() {
        if x != 0 {
            let (a, b) = word_pair(space, idx);
            let code = if a == b { vec![a] } else { vec![a.min(b), a.max(b)] };
            out[space.c2_position(&code).unwrap()] += x;
        }
    }
    out
}

fn f_of_row(space: &ExplicitCodeSpace, basis: &BasisFamily, row: &RowLabel) -> Vec<i64> {
    match row {
        RowLabel::Empty => {
            let mut e = vec![0i64; space.c2.len()];
            e[0] = 1;
            e
        }
        RowLabel::Tableaux(ts) => apply_f(space, &tensor_vector(basis, ts)),
        RowLabel::Code(_) => unreachable!("explicit rows carry no tableaux"),
    }
}

fn explicit_forms(space: &ExplicitCodeSpace, direct: &DirectOrbits, f1: &[i64], f2: &[i64]) -> BTreeMap<usize, i128> {
    let mut out: BTreeMap<usize, i128> = BTreeMap::new();
    for (a, &x) in f1.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (b, &z) in f2.iter().enumerate() {
            if z != 0 {
                let o = direct.catalog_orbit(&union(&space.c2[a], &space.c2[b])).unwrap();
                *out.entry(o).or_default() += x as i128 * z as i128;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Context for entry-level comparisons at one `(q, n)`.
pub struct EntryOracle {
    pub space: ExplicitCodeSpace,
    pub catalog: OrbitCatalog,
    pub direct: DirectOrbits,
    pub basis: BasisFamily,
}

impl EntryOracle {
    pub fn new(q: usize, n: usize) -> Result<Self> {
        Self::with_cap(q, n, VECTOR_CAP)
    }

    pub fn with_cap(q: usize, n: usize, cap: usize) -> Result<Self> {
        let space = ExplicitCodeSpace::new(q, n, cap)?;
        let catalog = enumerate_orbits(q, n)?;
        let direct = enumerate_orbits_direct(&space, &catalog)?;
        Ok(EntryOracle { space, catalog, direct, basis: build_basis(q)? })
    }

    /// `(F v_τ)ᵀ N_ω (F v_σ)` for every orbit `ω` at once.
    pub fn entry_forms(&self, row: &RowLabel, col: &RowLabel) -> BTreeMap<usize, i128> {
        let f1 = f_of_row(&self.space, &self.basis, row);
        let f2 = f_of_row(&self.space, &self.basis, col);
        explicit_forms(&self.space, &self.direct, &f1, &f2)
    }

    /// `(F v_τ)ᵀ N_ω (F v_σ)` for one orbit.
    pub fn explicit_representative_entry(&self, row: &RowLabel, col: &RowLabel, omega: usize) -> i128 {
        self.entry_forms(row, col).get(&omega).copied().unwrap_or(0)
    }

    /// Support of `F v_τ` in `C_2`.
    pub fn f_support(&self, taus: &[Tableau]) -> Vec<Vec<usize>> {
        let f = f_of_row(&self.space, &self.basis, &RowLabel::Tableaux(taus.to_vec()));
        f.iter().zip(&self.space.c2).filter(|(x, _)| **x != 0).map(|(_, c)| c.clone()).collect()
    }

    /// `Σ_{(α,β,γ,δ)} v_τ[α,β] v_σ[γ,δ] ψ(α,β,γ,δ)`, summed over all
    /// ordered 4-tuples of words.
    pub fn kernel_polynomial(&self, taus: &[Tableau], sigmas: &[Tableau]) -> Polynomial {
        let vt = tensor_vector(&self.basis, taus);
        let vs = tensor_vector(&self.basis, sigmas);
        let mut terms: HashMap<Monomial, i128> = HashMap::new();
        for (i, &x) in vt.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let (a, b) = word_pair(&self.space, i);
            for (j, &z) in vs.iter().enumerate() {
                if z == 0 {
                    continue;
                }
                let (c, e) = word_pair(&self.space, j);
                let w = [a, b, c, e].map(|k| &self.space.words[k]);
                let mu = (0..self.space.n).fold(Monomial::ONE, |m, p| {
                    m.mul(Monomial::var(column_pattern(&[w[0][p], w[1][p], w[2][p], w[3][p]]).index()))
                });
                *terms.entry(mu).or_default() += x as i128 * z as i128;
            }
        }
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, BigInt::from(c));
        }
        p
    }

    /// Compares every entry of the (augmented) block for `rep` against the
    /// explicit computation. Returns the mismatching `(row, col, orbit,
    /// reduced, explicit)` cells.
    pub fn compare_block(&self, rep: &RepIndex, d: usize) -> Result<Vec<EntryMismatch>> {
        let table = pairing_table(&self.basis);
        let mut block = assemble_block(d, rep, &self.catalog, &table)?;
        if rep.trivial {
            block = augment_empty_block(&block, self.space.q, d, &self.catalog)?;
        }
        let empty = self.catalog.empty_orbit();
        let mut out = Vec::new();
        for r in 0..block.size() {
            for c in 0..block.size() {
                let explicit = self.entry_forms(&block.rows[r], &block.rows[c]);
                let reduced = block.entry(r, c);
                for o in 0..self.catalog.len() {
                    let e = if o == empty || self.catalog.admissible(o, d) { explicit.get(&o).copied().unwrap_or(0) } else { 0 };
                    let got = if o == empty { reduced.constant.clone() } else { reduced.coefficient(o) };
                    if got != BigInt::from(e) {
                        out.push(EntryMismatch { block: block.label.clone(), row: r, col: c, orbit: o, reduced: got.to_string(), explicit: e.to_string() });
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryMismatch {
    pub block: String,
    pub row: usize,
    pub col: usize,
    pub orbit: usize,
    pub reduced: String,
    pub explicit: String,
}

/// Entry-level comparison over every block at `(q, n, d)`; returns the
/// number of compared cells and the mismatches.
pub fn compare_all_blocks(q: usize, n: usize, d: usize) -> Result<(usize, Vec<EntryMismatch>)> {
    let oracle = EntryOracle::new(q, n)?;
    let mut cells = 0;
    let mut mismatches = Vec::new();
    for rep in representative_index(q, n, d)? {
        let size = rep.size() + usize::from(rep.trivial);
        cells += size * size * oracle.catalog.len();
        mismatches.extend(oracle.compare_block(&rep, d)?);
    }
    Ok((cells, mismatches))
}

/// Number of `H`-orbits on ordered pairs from `C_2^d ∪ {∅}`.
pub fn pair_orbit_count(q: usize, n: usize, d: usize) -> Result<usize> {
    let space = ExplicitCodeSpace::new(q, n, SPACE_CAP)?;
    let rows: Vec<Vec<usize>> = space.c2.iter().filter(|c| space.admissible(c, d)).cloned().collect();
    let index: HashMap<&Vec<usize>, usize> = rows.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let k = rows.len();
    let mut parent: Vec<usize> = (0..k * k).collect();
    for g in space.generators() {
        let img: Vec<usize> = rows
            .iter()
            .map(|c| {
                let mut m: Vec<usize> = c.iter().map(|&w| g[w]).collect();
                m.sort_unstable();
                index[&m]
            })
            .collect();
        for a in 0..k {
            for b in 0..k {
                let (x, y) = (find(&mut parent, a * k + b), find(&mut parent, img[a] * k + img[b]));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }
    Ok((0..k * k).filter(|&i| find(&mut parent, i) == i).count())
}

/// The unreduced SDP: one block `M(y)` over `C_2^d ∪ {∅}`.
pub fn full_problem(q: usize, n: usize, d: usize) -> Result<SdpProblem> {
    if d == 0 || d > n {
        return Err(invalid(format!("distance d = {d} must be in 1..={n}")));
    }
    let space = ExplicitCodeSpace::new(q, n, SPACE_CAP)?;
    let catalog = enumerate_orbits(q, n)?;
    let direct = enumerate_orbits_direct(&space, &catalog)?;
    let m = build_full_matrix(&space, &direct, d);
    let empty = catalog.empty_orbit();
    let entries: Vec<Vec<AffineForm>> = m
        .cells
        .iter()
        .map(|row| {
            row.iter()
                .map(|cell| {
                    let mut f = AffineForm::default();
                    match *cell {
                        Some(o) if o == empty => f.constant = BigInt::from(1),
                        Some(o) => {
                            f.terms.insert(o, BigInt::from(1));
                        }
                        None => {}
                    }
                    f
                })
                .collect()
        })
        .collect();
    let rows = m.rows.iter().map(|c| RowLabel::Code(format!("{c:?}"))).collect();
    let block = Block { label: "M(y)".into(), rows, entries, trivial: false, augmented: true, gcd: BigInt::from(1) };
    finish_problem(q, n, d, vec![block], orbit_infos(&catalog), catalog.singleton_orbit(), "unreduced")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p_full;

    #[test]
    fn space_sizes() {
        let s = ExplicitCodeSpace::new(2, 3, SPACE_CAP).unwrap();
        assert_eq!(s.c2.len(), 1 + 8 + 28);
        assert!(ExplicitCodeSpace::new(3, 4, SPACE_CAP).is_err());
        for (i, w) in s.words.iter().enumerate() {
            assert_eq!(s.word_index(w), i);
        }
    }

    #[test]
    fn direct_orbit_counts() {
        for (q, n, expected) in [(2, 1, 3), (2, 2, 6)] {
            let space = ExplicitCodeSpace::new(q, n, SPACE_CAP).unwrap();
            let catalog = enumerate_orbits(q, n).unwrap();
            let direct = enumerate_orbits_direct(&space, &catalog).unwrap();
            assert_eq!(direct.orbits.len(), expected);
        }
    }

    #[test]
    fn direct_orbits_match_catalog() {
        for (q, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (4, 2)] {
            let space = ExplicitCodeSpace::new(q, n, SPACE_CAP).unwrap();
            let catalog = enumerate_orbits(q, n).unwrap();
            let direct = enumerate_orbits_direct(&space, &catalog).unwrap();
            assert!(direct.ids_constant);
            assert_eq!(direct.orbits.len(), catalog.len(), "q={q} n={n}");
            let mut seen: Vec<usize> = direct.orbits.iter().map(|o| o.catalog_index).collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), catalog.len());
            for o in &direct.orbits {
                let c = catalog.orbit(o.catalog_index);
                assert_eq!((o.cardinality, o.min_distance), (c.cardinality, c.min_distance));
                assert_eq!(BigInt::from(o.size), orbit_size(&c.id, q, n));
            }
        }
    }

    #[test]
    fn full_matrix_is_symmetric_and_psd_at_code() {
        let (q, n, d) = (2, 3, 2);
        let space = ExplicitCodeSpace::new(q, n, SPACE_CAP).unwrap();
        let catalog = enumerate_orbits(q, n).unwrap();
        let direct = enumerate_orbits_direct(&space, &catalog).unwrap();
        let m = build_full_matrix(&space, &direct, d);
        assert_eq!(m.size(), 1 + 8 + 16);
        for r in 0..m.size() {
            for c in 0..m.size() {
                assert_eq!(m.cells[r][c], m.cells[c][r]);
            }
        }
        let y = code_induced_y(&catalog, &greedy_code(q, n, d).unwrap());
        assert!(scaled_min_eigenvalue(m.evaluate(&y)) > -1e-9);
        let mut only_empty = vec![0.0; catalog.len()];
        only_empty[catalog.empty_orbit()] = 1.0;
        assert!(scaled_min_eigenvalue(m.evaluate(&only_empty)) > -1e-12);
        let mut bad = y.clone();
        bad[catalog.singleton_orbit()] = -1.0;
        assert!(scaled_min_eigenvalue(m.evaluate(&bad)) < -1e-3);
    }

    #[test]
    fn greedy_codes() {
        assert_eq!(greedy_code(2, 3, 3).unwrap().len(), 2);
        assert_eq!(greedy_code(2, 3, 2).unwrap().len(), 4);
        assert_eq!(greedy_code(2, 4, 3).unwrap().len(), 2);
    }

    #[test]
    fn kernel_polynomial_matches_p_full() {
        for (q, n) in [(2, 2), (2, 3), (3, 2)] {
            let oracle = EntryOracle::new(q, n).unwrap();
            let table = pairing_table(&oracle.basis);
            for rep in representative_index(q, n, 1).unwrap() {
                for t in &rep.tableaux {
                    for s in &rep.tableaux {
                        let direct = oracle.kernel_polynomial(t, s);
                        assert_eq!(direct, p_full(&table, &rep.lambdas, t, s).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn entry_level_match_small() {
        for d in [1, 2] {
            let (cells, bad) = compare_all_blocks(2, 2, d).unwrap();
            assert!(cells > 0);
            assert!(bad.is_empty(), "{bad:?}");
        }
    }

    #[test]
    fn trivial_rows_supported_on_distance_t() {
        let oracle = EntryOracle::new(2, 3).unwrap();
        let rep = &representative_index(2, 3, 1).unwrap()[0];
        for taus in &rep.tableaux {
            let t = taus[0].count(2);
            for code in oracle.f_support(taus) {
                let dist = if code.len() == 1 { 0 } else { oracle.space.code_distance(&code).unwrap() };
                assert_eq!(dist, t);
            }
        }
    }

    #[test]
    fn parity_violating_rows_vanish() {
        use crate::block::parity_ok;
        use crate::young::{semistandard_tableaux, Partition};
        use itertools::Itertools;
        let (q, n) = (3, 2);
        let oracle = EntryOracle::new(q, n).unwrap();
        let dims = oracle.basis.dims();
        let shapes = [Partition::empty(), Partition::row(1), Partition::row(1)];
        let lists: Vec<Vec<Tableau>> = shapes.iter().zip(&dims).map(|(l, &m)| semistandard_tableaux(l, m)).collect();
        let mut checked = 0;
        for taus in lists.into_iter().multi_cartesian_product() {
            if !parity_ok(&taus) {
                assert!(oracle.f_support(&taus).is_empty());
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn psd_trials_agree() {
        let r = psd_equivalence_trial(2, 2, 1, 20, 3).unwrap();
        assert!(r.all_agree(), "{:?}", r.disagreements);
        assert!(r.both_psd > 0);
    }

    #[test]
    fn full_problem_shape() {
        let p = full_problem(2, 3, 3).unwrap();
        assert_eq!(p.blocks.len(), 1);
        assert_eq!(p.blocks[0].size(), 1 + 8 + 4);
        assert_eq!(p.blocks[0].entry(0, 0).constant, BigInt::from(1));
    }
}
