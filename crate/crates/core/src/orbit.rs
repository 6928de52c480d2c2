//! Orbits of the wreath product `S_q^n ⋊ S_n` on codes of size at most 4,
//! reached through degree-`n` monomials in the `d*` variables.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::pattern::{num_patterns, rgs_of, SetPartition};
use crate::poly::{Monomial, MAX_DEGREE};
use crate::young::{compositions, signed_permutations};

pub use crate::pattern::{column_pattern, set_partitions};

/// Restricted growth strings of length `c`, in lexicographic order. Their
/// positions index the pattern counts of an [`OrbitId`].
fn patterns_on(c: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, len: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for v in 0..=next {
            prefix.push(v);
            rec(prefix, len, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), c, &mut out);
    out
}

/// Canonical identifier of an orbit of codes: the number of words and the
/// lexicographically smallest column-pattern count vector over all
/// orderings of the words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitId {
    size: u8,
    counts: Vec<u16>,
}

impl OrbitId {
    pub fn size(&self) -> usize {
        self.size as usize
    }

    /// Column-pattern counts, indexed by the restricted growth strings of
    /// length `size` in lexicographic order.
    pub fn counts(&self) -> &[u16] {
        &self.counts
    }
}

/// Number of codes in the orbit `id` inside `[q]^n`.
pub fn orbit_size(id: &OrbitId, q: usize, n: usize) -> BigInt {
    let c = id.size();
    if c == 0 {
        return BigInt::one();
    }
    let pats = patterns_on(c);
    let mut vectors: BTreeSet<Vec<u16>> = BTreeSet::new();
    for (perm, _) in signed_permutations(c) {
        let mut counts = vec![0u16; pats.len()];
        for (p, &k) in pats.iter().zip(&id.counts) {
            let moved: Vec<u8> = perm.iter().map(|&i| p[i]).collect();
            counts[pats.iter().position(|x| *x == rgs_of(&moved)).unwrap()] += k;
        }
        vectors.insert(counts);
    }
    let fact = |m: usize| (1..=m).fold(BigInt::one(), |a, i| a * i);
    let falling = |b: usize| (0..b).fold(BigInt::one(), |a, i| a * (q as i64 - i as i64));
    let mut tuples = BigInt::zero();
    for counts in vectors {
        let mut t = fact(n);
        for (p, &k) in pats.iter().zip(&counts) {
            let blocks = *p.iter().max().unwrap() as usize + 1;
            t = t / fact(k as usize) * falling(blocks).pow(k as u32);
        }
        tuples += t;
    }
    tuples / fact(c)
}

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.counts.iter().map(|x| x.to_string()).collect();
        write!(f, "{}:{}", self.size, c.join("."))
    }
}

impl Serialize for OrbitId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Canonical id of a code given by (possibly repeated) words of equal length.
pub fn canonical_id(words: &[Vec<u8>]) -> OrbitId {
    let mut distinct: Vec<&Vec<u8>> = Vec::new();
    for w in words {
        if !distinct.contains(&w) {
            distinct.push(w);
        }
    }
    let c = distinct.len();
    if c == 0 {
        return OrbitId { size: 0, counts: Vec::new() };
    }
    let n = distinct[0].len();
    let pats = patterns_on(c);
    let mut best: Option<Vec<u16>> = None;
    for (perm, _) in signed_permutations(c) {
        let mut counts = vec![0u16; pats.len()];
        #[allow(clippy::needless_range_loop)]
        for col in 0..n {
            let letters: Vec<u8> = perm.iter().map(|&p| distinct[p][col]).collect();
            let r = rgs_of(&letters);
            counts[pats.iter().position(|p| *p == r).unwrap()] += 1;
        }
        if best.as_ref().is_none_or(|b| counts < *b) {
            best = Some(counts);
        }
    }
    OrbitId { size: c as u8, counts: best.unwrap() }
}

pub fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Minimum distance over distinct pairs; `None` for fewer than two words.
pub fn min_distance(words: &[Vec<u8>]) -> Option<usize> {
    let mut best = None;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if words[i] != words[j] {
                let d = hamming(&words[i], &words[j]);
                best = Some(best.map_or(d, |b: usize| b.min(d)));
            }
        }
    }
    best
}

/// One orbit of codes of size at most 4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeOrbit {
    pub id: OrbitId,
    pub cardinality: usize,
    /// `None` for codes with fewer than two words.
    pub min_distance: Option<usize>,
}

impl CodeOrbit {
    pub fn of_words(words: &[Vec<u8>]) -> Self {
        let id = canonical_id(words);
        let mut distinct: Vec<Vec<u8>> = Vec::new();
        for w in words {
            if !distinct.contains(w) {
                distinct.push(w.clone());
            }
        }
        CodeOrbit { cardinality: id.size(), id, min_distance: min_distance(&distinct) }
    }

    pub fn empty() -> Self {
        Self::of_words(&[])
    }
}

/// Whether the variable of this orbit survives the minimum-distance
/// constraint: always for codes of size ≤ 1.
pub fn is_admissible(orbit: &CodeOrbit, d: usize) -> bool {
    orbit.cardinality <= 1 || orbit.min_distance.is_some_and(|m| m >= d)
}

/// A representative 4-tuple of words for a `d*` monomial: each column
/// spells out its pattern with letters `0, 1, ...`.
pub fn representative_words(mu: &Monomial) -> [Vec<u8>; 4] {
    let mut words: [Vec<u8>; 4] = Default::default();
    for p in mu.patterns() {
        for (pos, w) in words.iter_mut().enumerate() {
            w.push(p.rgs()[pos]);
        }
    }
    words
}

/// The orbit of `{α, β, γ, δ}` for a 4-tuple whose column patterns are `μ`.
pub fn monomial_orbit(mu: &Monomial, n: usize, q: usize) -> Result<CodeOrbit> {
    if mu.degree() as usize != n {
        return Err(invalid(format!("monomial of degree {} given for n = {n}", mu.degree())));
    }
    if mu.support().any(|(v, _)| v >= num_patterns(q)) {
        return Err(invalid(format!("monomial uses a pattern with more than {q} blocks")));
    }
    Ok(CodeOrbit::of_words(&representative_words(mu)))
}

/// All degree-`n` monomials over `Π(q)`.
pub fn degree_n_monomials(q: usize, n: usize) -> Vec<Monomial> {
    let np = num_patterns(q);
    compositions(n, np)
        .into_iter()
        .map(|c| {
            let e: Vec<u8> = c.iter().map(|&x| x as u8).collect();
            Monomial::from_exponents(&e).expect("degree within limits")
        })
        .collect()
}

/// The orbit list for fixed `(q, n)` together with the monomial-to-orbit map.
#[derive(Clone, Debug)]
pub struct OrbitCatalog {
    q: usize,
    n: usize,
    orbits: Vec<CodeOrbit>,
    by_id: HashMap<OrbitId, usize>,
    of_monomial: HashMap<Monomial, usize>,
}

/// Enumerates `Ω` as the image of all degree-`n` monomials, sorted by
/// (cardinality, minimum distance, id), with the orbit of `∅` appended last.
pub fn enumerate_orbits(q: usize, n: usize) -> Result<OrbitCatalog> {
    if q < 2 || n == 0 {
        return Err(invalid(format!("need q ≥ 2 and n ≥ 1, got q = {q}, n = {n}")));
    }
    if n > MAX_DEGREE as usize {
        return Err(invalid(format!("word length {n} exceeds the supported maximum {MAX_DEGREE}")));
    }
    let monomials = degree_n_monomials(q, n);
    let mut found: HashMap<OrbitId, CodeOrbit> = HashMap::new();
    let mut mono_ids = Vec::with_capacity(monomials.len());
    for mu in &monomials {
        let o = monomial_orbit(mu, n, q)?;
        mono_ids.push(o.id.clone());
        found.entry(o.id.clone()).or_insert(o);
    }
    let mut orbits: Vec<CodeOrbit> = found.into_values().collect();
    orbits.sort_by(|a, b| (a.cardinality, a.min_distance, &a.id).cmp(&(b.cardinality, b.min_distance, &b.id)));
    orbits.push(CodeOrbit::empty());
    let by_id: HashMap<OrbitId, usize> = orbits.iter().enumerate().map(|(i, o)| (o.id.clone(), i)).collect();
    let of_monomial = monomials.into_iter().zip(mono_ids).map(|(m, id)| (m, by_id[&id])).collect();
    Ok(OrbitCatalog { q, n, orbits, by_id, of_monomial })
}

impl OrbitCatalog {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbits(&self) -> &[CodeOrbit] {
        &self.orbits
    }

    pub fn orbit(&self, index: usize) -> &CodeOrbit {
        &self.orbits[index]
    }

    pub fn empty_orbit(&self) -> usize {
        self.orbits.len() - 1
    }

    pub fn index_of_id(&self, id: &OrbitId) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    /// Orbit index of a degree-`n` monomial over `Π(q)`.
    pub fn orbit_of(&self, mu: &Monomial) -> Option<usize> {
        self.of_monomial.get(mu).copied()
    }

    /// Orbit index of a code given by its words.
    pub fn orbit_of_words(&self, words: &[Vec<u8>]) -> Option<usize> {
        self.index_of_id(&canonical_id(words))
    }

    /// Orbit of a pair of words at distance `t` (`t = 0`: a singleton).
    pub fn pair_orbit(&self, t: usize) -> Result<usize> {
        if t > self.n {
            return Err(invalid(format!("distance {t} exceeds word length {}", self.n)));
        }
        let both = Monomial::var("12,34".parse::<SetPartition>()?.index());
        let same = Monomial::var(0);
        let mut mu = Monomial::ONE;
        for k in 0..self.n {
            mu = mu.mul(if k < t { both } else { same });
        }
        Ok(self.orbit_of(&mu).expect("pair monomial is in Q"))
    }

    pub fn singleton_orbit(&self) -> usize {
        self.pair_orbit(0).expect("t = 0 is valid")
    }

    pub fn admissible(&self, index: usize, d: usize) -> bool {
        is_admissible(&self.orbits[index], d)
    }

    /// JSON records: orbit index, id, cardinality, minimum distance and
    /// admissibility for distance `d`.
    pub fn to_records(&self, d: usize) -> Vec<OrbitRecord> {
        self.orbits
            .iter()
            .enumerate()
            .map(|(i, o)| OrbitRecord {
                index: i,
                id: o.id.to_string(),
                cardinality: o.cardinality,
                min_distance: o.min_distance,
                admissible: is_admissible(o, d),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    pub index: usize,
    pub id: String,
    pub cardinality: usize,
    pub min_distance: Option<usize>,
    pub admissible: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dvar(p: &str) -> Monomial {
        Monomial::var(p.parse::<SetPartition>().unwrap().index())
    }

    fn power(m: Monomial, e: usize) -> Monomial {
        (0..e).fold(Monomial::ONE, |acc, _| acc.mul(m))
    }

    #[test]
    fn monomial_orbit_examples() {
        let n = 5;
        let o = monomial_orbit(&power(dvar("1234"), n), n, 2).unwrap();
        assert_eq!((o.cardinality, o.min_distance), (1, None));
        let o = monomial_orbit(&power(dvar("12,34"), n), n, 2).unwrap();
        assert_eq!((o.cardinality, o.min_distance), (2, Some(n)));
        let mu = dvar("1,2,3,4").mul(power(dvar("1234"), n - 1));
        let o = monomial_orbit(&mu, n, 4).unwrap();
        assert_eq!((o.cardinality, o.min_distance), (4, Some(1)));
        assert!(monomial_orbit(&mu, n + 1, 4).is_err());
        assert!(monomial_orbit(&mu, n, 3).is_err());
    }

    #[test]
    fn small_catalog_counts() {
        let c = enumerate_orbits(2, 1).unwrap();
        assert_eq!(c.len(), 3);
        let c = enumerate_orbits(2, 2).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c.orbit(c.empty_orbit()).cardinality, 0);
    }

    #[test]
    fn pair_orbits() {
        let c = enumerate_orbits(3, 4).unwrap();
        assert_eq!(c.orbit(c.pair_orbit(0).unwrap()).cardinality, 1);
        for t in 1..=4 {
            let o = c.orbit(c.pair_orbit(t).unwrap());
            assert_eq!((o.cardinality, o.min_distance), (2, Some(t)));
        }
        assert_eq!(c.pair_orbit(4).unwrap(), c.orbit_of(&power(dvar("12,34"), 4)).unwrap());
        assert!(c.pair_orbit(5).is_err());
    }

    #[test]
    fn admissibility() {
        let c = enumerate_orbits(2, 4).unwrap();
        let d = 3;
        assert!(c.admissible(c.singleton_orbit(), d));
        assert!(c.admissible(c.empty_orbit(), d));
        assert!(!c.admissible(c.pair_orbit(d - 1).unwrap(), d));
        assert!(c.admissible(c.pair_orbit(d).unwrap(), d));
    }

    fn random_h_image(words: &[Vec<u8>], q: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u8>> {
        let n = words[0].len();
        let mut coords: Vec<usize> = (0..n).collect();
        coords.shuffle(rng);
        let letter_perms: Vec<Vec<u8>> = (0..n)
            .map(|_| {
                let mut p: Vec<u8> = (0..q as u8).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        let mut out: Vec<Vec<u8>> =
            words.iter().map(|w| coords.iter().map(|&c| letter_perms[c][w[c] as usize]).collect()).collect();
        out.shuffle(rng);
        out
    }

    #[test]
    fn canonical_id_is_h_invariant() {
        let (q, n) = (3, 4);
        let monos = degree_n_monomials(q, n);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let mu = monos[rng.gen_range(0..monos.len())];
            let words = representative_words(&mu);
            let base = monomial_orbit(&mu, n, q).unwrap();
            let moved = CodeOrbit::of_words(&random_h_image(&words, q, &mut rng));
            assert_eq!(base, moved);
        }
    }

    #[test]
    fn metadata_invariant_under_position_permutations() {
        let (q, n) = (3, 3);
        for mu in degree_n_monomials(q, n) {
            let base = monomial_orbit(&mu, n, q).unwrap();
            for (perm, _) in signed_permutations(4) {
                let p = [perm[0], perm[1], perm[2], perm[3]];
                let moved = mu.map_patterns(|s| s.permute_positions(p));
                assert_eq!(monomial_orbit(&moved, n, q).unwrap(), base);
            }
        }
    }

    #[test]
    fn orbit_sizes_partition_small_codes() {
        for (q, n) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3)] {
            let c = enumerate_orbits(q, n).unwrap();
            let total_words = (q as u64).pow(n as u32);
            let binom = |k: u64| (0..k).fold(1u64, |a, i| a * (total_words - i) / (i + 1));
            for size in 0..=4usize {
                let sum: BigInt = c
                    .orbits()
                    .iter()
                    .filter(|o| o.cardinality == size)
                    .map(|o| orbit_size(&o.id, q, n))
                    .sum();
                assert_eq!(sum, BigInt::from(binom(size as u64)), "q={q} n={n} size={size}");
            }
        }
    }

    #[test]
    fn records_flag_admissibility() {
        let c = enumerate_orbits(2, 3).unwrap();
        let recs = c.to_records(2);
        assert_eq!(recs.len(), c.len());
        for r in recs {
            assert_eq!(r.admissible, r.cardinality <= 1 || r.min_distance.unwrap() >= 2);
        }
    }
}
