//! Exact sparse polynomials over the dual variables `d*_P`, and the
//! polynomials `p_{τ,σ}` whose monomial coefficients are the block entries.
//!
//! Two variable sets are in play. The `d*` variables are indexed by the
//! canonical position of a [`SetPartition`]. The component computation first
//! works in the variables `x_{j,h}` (index `j·m + h`, 0-based), standing for
//! `B_i(j) ⊗ B_i(h)`, and substitutes the corresponding linear forms at the
//! end.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::basis::PairingTable;
use crate::error::{invalid, Error, Result};
use crate::pattern::SetPartition;
use crate::young::{
    column_group, column_stabilizer_order, factorial, for_each_count_function, signed_permutations, KappaCell,
    Partition, Tableau,
};

/// Largest total degree a [`Monomial`] can hold.
pub const MAX_DEGREE: u32 = 15;
/// Number of variables a [`Monomial`] can address.
pub const MAX_VARS: usize = 16;

/// A monomial packed as sixteen 4-bit exponents. Any monomial of total
/// degree at most [`MAX_DEGREE`] fits, and multiplication is addition of
/// the packed words.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(index: usize) -> Self {
        assert!(index < MAX_VARS);
        Monomial(1 << (4 * index))
    }

    pub fn from_exponents(exps: &[u8]) -> Result<Self> {
        if exps.len() > MAX_VARS || exps.iter().map(|&e| e as u32).sum::<u32>() > MAX_DEGREE {
            return Err(invalid(format!("monomial {exps:?} exceeds packing limits")));
        }
        Ok(Monomial(exps.iter().enumerate().fold(0u64, |acc, (i, &e)| acc | ((e as u64) << (4 * i)))))
    }

    pub fn exponent(&self, index: usize) -> u8 {
        ((self.0 >> (4 * index)) & 0xF) as u8
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u8> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    /// `(variable, exponent)` pairs with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        (0..MAX_VARS).map(|i| (i, self.exponent(i))).filter(|&(_, e)| e > 0)
    }

    pub fn degree(&self) -> u32 {
        (0..MAX_VARS).map(|i| self.exponent(i) as u32).sum()
    }

    pub fn packed(&self) -> u64 {
        self.0
    }

    /// Product of two monomials; the caller keeps total degree ≤ 15.
    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Monomial) -> Monomial {
        debug_assert!(self.degree() + other.degree() <= MAX_DEGREE);
        Monomial(self.0 + other.0)
    }

    /// The monomial `Π_j d*_{P_j}` of a list of patterns.
    pub fn from_patterns(patterns: &[SetPartition]) -> Result<Self> {
        let mut exps = [0u8; MAX_VARS];
        for p in patterns {
            exps[p.index()] += 1;
        }
        Self::from_exponents(&exps)
    }

    /// The patterns of this `d*` monomial, with repetition, in canonical order.
    pub fn patterns(&self) -> Vec<SetPartition> {
        self.support()
            .flat_map(|(v, e)| std::iter::repeat_n(SetPartition::from_index(v), e as usize))
            .collect()
    }

    /// Applies a relabelling of the `d*` variables induced by a map on patterns.
    pub fn map_patterns(&self, f: impl Fn(&SetPartition) -> SetPartition) -> Monomial {
        let mapped: Vec<SetPartition> = self.patterns().iter().map(f).collect();
        Monomial::from_patterns(&mapped).expect("same degree")
    }

    /// Human form in `d*` notation, e.g. `d*[12,34]^2 d*[1234]`.
    pub fn display_dual(&self) -> String {
        if *self == Monomial::ONE {
            return "1".into();
        }
        self.support()
            .map(|(v, e)| {
                let p = SetPartition::from_index(v);
                if e == 1 { format!("d*[{p}]") } else { format!("d*[{p}]^{e}") }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Sparse polynomial with arbitrary-precision integer coefficients. No zero
/// coefficient is ever stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::ONE, c.into());
        p
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &Polynomial, factor: &BigInt) {
        for (m, c) in &other.terms {
            self.add_term(*m, c * factor);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one());
        out
    }

    pub fn scale(&self, factor: &BigInt) -> Polynomial {
        if factor.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, c)| (*m, c * factor)).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(*mb)).or_default() += ca * cb;
            }
        }
        Polynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Repeated multiplication, sparsifying after every step.
    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True for the zero polynomial and for polynomials whose monomials all
    /// have degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Replaces variable `k` by `images[k]`. Powers of each image are cached.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        let mut powers: HashMap<(usize, u8), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for (v, e) in m.support() {
                let p = powers.entry((v, e)).or_insert_with(|| images[v].pow(e as u32));
                term = term.mul(p);
            }
            out.add_scaled(&term, &BigInt::one());
        }
        out
    }

    /// Applies a variable relabelling to every monomial.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Debug JSON: one object per term, exponents keyed by pattern, the
    /// coefficient as a decimal string.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let exps: serde_json::Map<String, Value> = m
                        .support()
                        .map(|(v, e)| (SetPartition::from_index(v).to_string(), json!(e)))
                        .collect();
                    json!({ "monomial": exps, "coefficient": c.to_string() })
                })
                .collect(),
        )
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if k > 0 { "+" } else { "" };
            write!(f, "{}{}{} {}", if k > 0 { " " } else { "" }, sign, c.abs(), m.display_dual())?;
        }
        Ok(())
    }
}

/// One `B_i(j) ⊗ B_i(h)` written in the basis `D*`: coefficients indexed by
/// the canonical order of `Π(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coefficients: Vec<i64>,
}

impl LinearForm {
    pub fn new(coefficients: Vec<i64>) -> Self {
        LinearForm { coefficients }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn coefficient(&self, p: &SetPartition) -> i64 {
        self.coefficients.get(p.index()).copied().unwrap_or(0)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for (i, &c) in self.coefficients.iter().enumerate() {
            p.add_term(Monomial::var(i), BigInt::from(c));
        }
        p
    }
}

pub fn linear_form(table: &PairingTable, class: usize, j: usize, h: usize) -> LinearForm {
    LinearForm::new(table.row(class, j, h).to_vec())
}

/// Leibniz expansion of a square matrix of linear forms.
pub fn determinant_of_forms(entries: &[Vec<LinearForm>]) -> Result<Polynomial> {
    let t = entries.len();
    if entries.iter().any(|r| r.len() != t) {
        return Err(invalid("determinant of a non-square matrix"));
    }
    let polys: Vec<Vec<Polynomial>> = entries.iter().map(|r| r.iter().map(LinearForm::to_polynomial).collect()).collect();
    let mut det = Polynomial::zero();
    for (perm, sign) in signed_permutations(t) {
        let mut term = Polynomial::one();
        for (row, &col) in perm.iter().enumerate() {
            term = term.mul(&polys[row][col]);
        }
        det.add_scaled(&term, &BigInt::from(sign));
    }
    Ok(det)
}

fn x_var(m: usize, j: u8, h: u8) -> Monomial {
    Monomial::var((j as usize - 1) * m + (h as usize - 1))
}

/// `det(x_{v_i, w_i'})` in the `x` variables.
fn x_determinant(m: usize, v: &[u8], w: &[u8]) -> Polynomial {
    let mut det = Polynomial::zero();
    for (perm, sign) in signed_permutations(v.len()) {
        let mono = perm.iter().enumerate().fold(Monomial::ONE, |acc, (r, &c)| acc.mul(x_var(m, v[r], w[c])));
        det.add_term(mono, BigInt::from(sign));
    }
    det
}

fn has_repeat(word: &[u8]) -> bool {
    (0..word.len()).any(|i| word[i + 1..].contains(&word[i]))
}

fn check_tableaux(lambda: &Partition, m: usize, tau: &Tableau, sigma: &Tableau) -> Result<()> {
    for t in [tau, sigma] {
        if t.shape() != lambda || !t.is_semistandard() || t.rows().iter().flatten().any(|&e| e as usize > m) {
            return Err(invalid(format!("tableau {t} is not in T_{{{lambda},{m}}}")));
        }
    }
    if lambda.weight() > MAX_DEGREE as usize {
        return Err(invalid(format!("shape {lambda} exceeds the supported degree {MAX_DEGREE}")));
    }
    Ok(())
}

/// `p_{τ,σ}` of one component in the variables `x_{j,h}`, via count
/// functions: `|C_λ| Σ_κ mult(κ) Π det(x_{v_i,w_i'})^{κ(v,w)}`.
/// Column words with a repeated entry are skipped because their
/// determinant vanishes.
pub fn component_x_polynomial(lambda: &Partition, m: usize, tau: &Tableau, sigma: &Tableau) -> Result<Polynomial> {
    check_tableaux(lambda, m, tau, sigma)?;
    let mut dets: HashMap<(Vec<u8>, Vec<u8>), Polynomial> = HashMap::new();
    let mut total = Polynomial::zero();
    let segments: Vec<u64> = (0..lambda.height()).map(|t| factorial(lambda.part(t) - lambda.part(t + 1))).collect();
    let numerator: u64 = segments.iter().product();
    let admit = |v: &[u8], w: &[u8]| !has_repeat(v) && !has_repeat(w);
    for_each_count_function(lambda, m, tau, sigma, admit, |cells: &[KappaCell]| {
        let denominator: u64 = cells.iter().map(|c| factorial(c.count)).product();
        let mut term = Polynomial::constant(numerator / denominator);
        for c in cells {
            let det = dets.entry((c.v.clone(), c.w.clone())).or_insert_with(|| x_determinant(m, &c.v, &c.w));
            term = term.mul(&det.pow(c.count as u32));
        }
        total.add_scaled(&term, &BigInt::one());
    });
    Ok(total.scale(&BigInt::from(column_stabilizer_order(lambda))))
}

/// Images of the `x_{j,h}` of one class as `d*` polynomials.
pub fn class_forms(table: &PairingTable, class: usize) -> Vec<Polynomial> {
    let m = table.dims()[class];
    (0..m * m).map(|k| linear_form(table, class, k / m, k % m).to_polynomial()).collect()
}

/// `p_{τ,σ}` of component `class` expanded in `D*`.
pub fn p_component(
    table: &PairingTable,
    class: usize,
    lambda: &Partition,
    tau: &Tableau,
    sigma: &Tableau,
) -> Result<Polynomial> {
    let m = *table.dims().get(class).ok_or_else(|| invalid(format!("class {class} out of range")))?;
    let px = component_x_polynomial(lambda, m, tau, sigma)?;
    Ok(px.substitute(&class_forms(table, class)))
}

/// Default size limit for the brute-force component.
pub const BRUTEFORCE_LIMIT: usize = 5;

/// The defining quadruple sum over `τ' ∼ τ`, `σ' ∼ σ` and `c, c' ∈ C_λ`,
/// multiplied out directly in `D*`. Test oracle for [`p_component`].
pub fn p_component_bruteforce(
    table: &PairingTable,
    class: usize,
    lambda: &Partition,
    tau: &Tableau,
    sigma: &Tableau,
    limit: usize,
) -> Result<Polynomial> {
    if lambda.weight() > limit {
        return Err(Error::OracleLimit(format!("shape {lambda} has weight above {limit}")));
    }
    let m = *table.dims().get(class).ok_or_else(|| invalid(format!("class {class} out of range")))?;
    check_tableaux(lambda, m, tau, sigma)?;
    let forms: Vec<Vec<Polynomial>> = (0..m)
        .map(|j| (0..m).map(|h| linear_form(table, class, j, h).to_polynomial()).collect())
        .collect();
    let group = column_group(lambda);
    let mut products: HashMap<Vec<(u8, u8)>, Polynomial> = HashMap::new();
    let mut total = Polynomial::zero();
    let taus = tau.row_equivalents();
    let sigmas = sigma.row_equivalents();
    for tp in &taus {
        let te = tp.entries();
        for sp in &sigmas {
            let se = sp.entries();
            for (c, sc) in &group {
                for (cp, scp) in &group {
                    let mut key: Vec<(u8, u8)> = (0..te.len()).map(|y| (te[c[y]], se[cp[y]])).collect();
                    key.sort_unstable();
                    let prod = products.entry(key).or_insert_with_key(|key| {
                        key.iter().fold(Polynomial::one(), |acc, &(j, h)| acc.mul(&forms[j as usize - 1][h as usize - 1]))
                    });
                    total.add_scaled(prod, &BigInt::from(sc * scp));
                }
            }
        }
    }
    Ok(total)
}

/// `p_{τ,σ} = Π_i p_{τ_i,σ_i}` over all components; components with the
/// empty shape contribute 1.
pub fn p_full(table: &PairingTable, lambdas: &[Partition], taus: &[Tableau], sigmas: &[Tableau]) -> Result<Polynomial> {
    if lambdas.len() != table.dims().len() || taus.len() != lambdas.len() || sigmas.len() != lambdas.len() {
        return Err(invalid("component count does not match the basis family"));
    }
    let mut out = Polynomial::one();
    for (i, lambda) in lambdas.iter().enumerate() {
        if lambda.weight() == 0 {
            continue;
        }
        out = out.mul(&p_component(table, i, lambda, &taus[i], &sigmas[i])?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{build_basis, pairing_table};
    use crate::pattern::set_partitions;
    use crate::young::{partitions_of, semistandard_tableaux};

    fn table(q: usize) -> PairingTable {
        pairing_table(&build_basis(q).unwrap())
    }

    fn dvar(p: &str) -> Monomial {
        Monomial::var(p.parse::<SetPartition>().unwrap().index())
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn monomial_packing() {
        let a = Monomial::from_exponents(&[1, 0, 2]).unwrap();
        let b = Monomial::var(2);
        assert_eq!(a.mul(b).exponents(3), vec![1, 0, 3]);
        assert_eq!(a.mul(b).degree(), 4);
        assert!(Monomial::from_exponents(&[8, 8]).is_err());
        let pats = a.patterns();
        assert_eq!(Monomial::from_patterns(&pats).unwrap(), a);
    }

    #[test]
    fn polynomial_arithmetic() {
        let x = Polynomial::monomial(Monomial::var(0), 1);
        let y = Polynomial::monomial(Monomial::var(1), 1);
        let s = x.add(&y);
        let sq = s.pow(2);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coefficient(&Monomial::var(0).mul(Monomial::var(1))), BigInt::from(2));
        let diff = x.add(&y.scale(&BigInt::from(-1)));
        let prod = s.mul(&diff);
        assert_eq!(prod.len(), 2);
        assert!(prod.is_homogeneous(2));
        assert!(s.add(&s.scale(&BigInt::from(-1))).is_zero());
    }

    #[test]
    fn linear_form_examples() {
        let t4 = table(4);
        let f = linear_form(&t4, 0, 0, 0).to_polynomial();
        let expected = Polynomial::monomial(dvar("1234"), 4).add(&Polynomial::monomial(dvar("12,34"), 12));
        assert_eq!(f, expected);
        let t2 = table(2);
        let f = linear_form(&t2, 1, 0, 0).to_polynomial();
        let expected = Polynomial::monomial(dvar("1234"), 2).add(&Polynomial::monomial(dvar("12,34"), -2));
        assert_eq!(f, expected);
        // Summing over all patterns recovers the full sum over [q]^4.
        for q in 2..=5 {
            let b = build_basis(q).unwrap();
            let t = pairing_table(&b);
            for i in 0..b.num_classes() {
                for j in 0..b.dim(i) {
                    for h in 0..b.dim(i) {
                        let total: i64 = linear_form(&t, i, j, h).coefficients().iter().sum();
                        let l: i64 = b.matrix(i, j).entries().iter().sum();
                        let r: i64 = b.matrix(i, h).entries().iter().sum();
                        assert_eq!(total, l * r);
                    }
                }
            }
        }
    }

    #[test]
    fn determinant_examples() {
        let t2 = table(2);
        let f = linear_form(&t2, 0, 0, 1);
        assert_eq!(determinant_of_forms(&[vec![f.clone()]]).unwrap(), f.to_polynomial());
        let g = linear_form(&t2, 1, 1, 0);
        let equal_rows = vec![vec![f.clone(), g.clone()], vec![f.clone(), g.clone()]];
        assert!(determinant_of_forms(&equal_rows).unwrap().is_zero());
        // Generic 2x2 against an independent hand expansion a·d − b·c.
        let (a, b, c, d) = (linear_form(&t2, 0, 0, 0), linear_form(&t2, 0, 0, 1), linear_form(&t2, 0, 1, 0), linear_form(&t2, 1, 1, 1));
        let det = determinant_of_forms(&[vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).unwrap();
        let mut manual = Polynomial::zero();
        for (pi, &ai) in a.coefficients().iter().enumerate() {
            for (pj, &dj) in d.coefficients().iter().enumerate() {
                manual.add_term(Monomial::var(pi).mul(Monomial::var(pj)), BigInt::from(ai * dj));
            }
        }
        for (pi, &bi) in b.coefficients().iter().enumerate() {
            for (pj, &cj) in c.coefficients().iter().enumerate() {
                manual.add_term(Monomial::var(pi).mul(Monomial::var(pj)), BigInt::from(-bi * cj));
            }
        }
        assert_eq!(det, manual);
        assert!(det.is_homogeneous(2));
        assert!(determinant_of_forms(&[vec![a.clone(), b.clone()]]).is_err());
    }

    #[test]
    fn x_determinant_matches_forms_route() {
        let t3 = table(3);
        let forms = class_forms(&t3, 1);
        let m = 3;
        for (v, w) in [(vec![1u8, 2], vec![2u8, 3]), (vec![1, 2, 3], vec![1, 2, 3]), (vec![3, 1], vec![2, 1])] {
            let via_x = x_determinant(m, &v, &w).substitute(&forms);
            let entries: Vec<Vec<LinearForm>> = v
                .iter()
                .map(|&j| w.iter().map(|&h| linear_form(&t3, 1, j as usize - 1, h as usize - 1)).collect())
                .collect();
            assert_eq!(via_x, determinant_of_forms(&entries).unwrap());
        }
    }

    #[test]
    fn component_single_cell() {
        let t4 = table(4);
        let l = part(&[1]);
        for i in 0..4 {
            let m = t4.dims()[i];
            for j in 1..=m as u8 {
                for h in 1..=m as u8 {
                    let tau = Tableau::new(l.clone(), vec![vec![j]]).unwrap();
                    let sigma = Tableau::new(l.clone(), vec![vec![h]]).unwrap();
                    let p = p_component(&t4, i, &l, &tau, &sigma).unwrap();
                    assert_eq!(p, linear_form(&t4, i, j as usize - 1, h as usize - 1).to_polynomial());
                }
            }
        }
    }

    #[test]
    fn component_two_cells() {
        let t3 = table(3);
        let f = |j: usize, h: usize| linear_form(&t3, 0, j, h).to_polynomial();
        // column (1,2): 2 (x11 x22 − x12 x21)
        let col = part(&[1, 1]);
        let t = Tableau::new(col.clone(), vec![vec![1], vec![2]]).unwrap();
        let p = p_component(&t3, 0, &col, &t, &t).unwrap();
        let expected = f(0, 0).mul(&f(1, 1)).add(&f(0, 1).mul(&f(1, 0)).scale(&BigInt::from(-1))).scale(&BigInt::from(2));
        assert_eq!(p, expected);
        // row [1,2]: x11 x22 + x12 x21 (distinct row rearrangements, trivial C_λ)
        let row = part(&[2]);
        let t = Tableau::new(row.clone(), vec![vec![1, 2]]).unwrap();
        let p = p_component(&t3, 0, &row, &t, &t).unwrap();
        let expected = f(0, 0).mul(&f(1, 1)).add(&f(0, 1).mul(&f(1, 0))).scale(&BigInt::from(2));
        assert_eq!(p, expected);
    }

    #[test]
    fn bruteforce_agrees_on_small_grid() {
        for q in 2..=3 {
            let t = table(q);
            for class in 0..t.dims().len() {
                let m = t.dims()[class];
                for n in 1..=3 {
                    for lambda in partitions_of(n) {
                        let ts = semistandard_tableaux(&lambda, m);
                        for tau in &ts {
                            for sigma in &ts {
                                let fast = p_component(&t, class, &lambda, tau, sigma).unwrap();
                                let slow = p_component_bruteforce(&t, class, &lambda, tau, sigma, BRUTEFORCE_LIMIT).unwrap();
                                assert_eq!(fast, slow, "q={q} class={class} {lambda} {tau} {sigma}");
                                assert!(fast.is_homogeneous(n as u32));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bruteforce_limit_enforced() {
        let t = table(2);
        let l = part(&[6]);
        let tau = Tableau::new(l.clone(), vec![vec![1; 6]]).unwrap();
        assert!(matches!(
            p_component_bruteforce(&t, 0, &l, &tau, &tau, BRUTEFORCE_LIMIT),
            Err(Error::OracleLimit(_))
        ));
    }

    #[test]
    fn swap_symmetry() {
        // p(σ,τ) is p(τ,σ) with the pair roles (1,2) <-> (3,4) exchanged.
        let t = table(4);
        for class in 0..4 {
            let m = t.dims()[class];
            for n in 1..=3 {
                for lambda in partitions_of(n) {
                    let ts = semistandard_tableaux(&lambda, m);
                    for tau in &ts {
                        for sigma in &ts {
                            let a = p_component(&t, class, &lambda, tau, sigma).unwrap();
                            let b = p_component(&t, class, &lambda, sigma, tau).unwrap();
                            assert_eq!(a.map_monomials(|mo| mo.map_patterns(SetPartition::swap_pairs)), b);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn full_single_row_power() {
        let t = table(3);
        let n = 4;
        let lambdas = vec![Partition::row(n), Partition::empty(), Partition::empty()];
        let ones = Tableau::single_row(vec![1; n]);
        let taus = vec![ones.clone(), Tableau::empty(), Tableau::empty()];
        let p = p_full(&t, &lambdas, &taus, &taus).unwrap();
        // n! row arrangements are not distinct here: a single pair (τ', σ').
        assert_eq!(p, linear_form(&t, 0, 0, 0).to_polynomial().pow(n as u32));
    }

    #[test]
    fn polynomial_json() {
        let p = Polynomial::monomial(dvar("12,34").mul(dvar("12,34")), -3);
        let j = p.to_json();
        assert_eq!(j[0]["coefficient"], "-3");
        assert_eq!(j[0]["monomial"]["12,34"], 2);
        assert!(set_partitions(4).len() == 15);
    }
}
