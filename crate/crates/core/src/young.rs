//! Partitions, semistandard tableaux and the count functions that collapse
//! the row-equivalence sums of `p_{τ,σ}` to polynomial size.

use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Result};

/// An integer partition: weakly decreasing positive parts. The empty
/// partition is the unique partition of 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid(format!("partition {parts:?} has a zero part")));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(invalid(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(n)`: a single row.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.parts.len()
    }

    /// `λ_i` with 0-based `i`; zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `λ*`: column heights.
    pub fn dual(&self) -> Partition {
        dual_partition(self)
    }

    /// Cells `(row, col)` in row-concatenated order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n` in lexicographically decreasing order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All `k`-tuples of nonnegative integers summing to `n`, lexicographically
/// increasing.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=rest {
            prefix.push(v);
            rec(rest - v, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

pub fn dual_partition(lambda: &Partition) -> Partition {
    let width = lambda.part(0);
    Partition { parts: (1..=width).map(|j| lambda.parts.iter().filter(|&&p| p >= j).count()).collect() }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `|C_λ| = Π_j (λ*_j)!`.
pub fn column_stabilizer_order(lambda: &Partition) -> u64 {
    lambda.dual().parts.iter().map(|&h| factorial(h)).product()
}

/// A filling of a Young shape with entries in `1..=m`, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<u8>>,
}

impl Tableau {
    pub fn new(shape: Partition, rows: Vec<Vec<u8>>) -> Result<Self> {
        let ok = rows.len() == shape.height() && rows.iter().zip(shape.parts()).all(|(r, &l)| r.len() == l);
        if !ok {
            return Err(invalid(format!("rows {rows:?} do not fit shape {shape}")));
        }
        if rows.iter().flatten().any(|&e| e == 0) {
            return Err(invalid("tableau entries are 1-based"));
        }
        Ok(Tableau { shape, rows })
    }

    pub fn empty() -> Self {
        Tableau { shape: Partition::empty(), rows: Vec::new() }
    }

    /// Single-row tableau with the given entries (sorted by the caller if
    /// semistandardness matters).
    pub fn single_row(entries: Vec<u8>) -> Self {
        let n = entries.len();
        if n == 0 {
            return Self::empty();
        }
        Tableau { shape: Partition::row(n), rows: vec![entries] }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.rows[row][col]
    }

    /// Entries in row-concatenated order.
    pub fn entries(&self) -> Vec<u8> {
        self.rows.iter().flatten().copied().collect()
    }

    /// `|τ⁻¹(s)|`.
    pub fn count(&self, s: u8) -> usize {
        self.rows.iter().flatten().filter(|&&e| e == s).count()
    }

    pub fn count_in_row(&self, row: usize, s: u8) -> usize {
        self.rows[row].iter().filter(|&&e| e == s).count()
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| below > above));
        rows_ok && cols_ok
    }

    /// Canonical representative of the row-equivalence class: each row sorted.
    pub fn row_sorted(&self) -> Tableau {
        let mut rows = self.rows.clone();
        rows.iter_mut().for_each(|r| r.sort_unstable());
        Tableau { shape: self.shape.clone(), rows }
    }

    /// All distinct tableaux `τ' ∼ τ` (independent rearrangements of each row).
    pub fn row_equivalents(&self) -> Vec<Tableau> {
        let per_row: Vec<Vec<Vec<u8>>> = self.rows.iter().map(|r| distinct_permutations(r)).collect();
        let mut out = vec![Vec::new()];
        for options in per_row {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Vec<u8>>| {
                    options.iter().map(move |o| {
                        let mut p = prefix.clone();
                        p.push(o.clone());
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(|rows| Tableau { shape: self.shape.clone(), rows }).collect()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        write!(f, "[{}]", rows.join("/"))
    }
}

/// Distinct permutations of a multiset, in lexicographic order.
pub fn distinct_permutations(items: &[u8]) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = items.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next_permutation
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

/// `T_{λ,m}`: semistandard tableaux of shape `λ` with entries in `1..=m`,
/// lexicographic in row-concatenated order.
pub fn semistandard_tableaux(lambda: &Partition, m: usize) -> Vec<Tableau> {
    if lambda.height() > m {
        return Vec::new();
    }
    let cells = lambda.cells();
    let mut fill = vec![0u8; cells.len()];
    let offsets: Vec<usize> = lambda
        .parts()
        .iter()
        .scan(0, |acc, &l| {
            let o = *acc;
            *acc += l;
            Some(o)
        })
        .collect();
    let mut out = Vec::new();
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        offsets: &[usize],
        m: u8,
        fill: &mut Vec<u8>,
        lambda: &Partition,
        out: &mut Vec<Tableau>,
    ) {
        if idx == cells.len() {
            let rows = lambda
                .parts()
                .iter()
                .zip(offsets)
                .map(|(&l, &o)| fill[o..o + l].to_vec())
                .collect();
            out.push(Tableau { shape: lambda.clone(), rows });
            return;
        }
        let (r, c) = cells[idx];
        let mut lo = 1u8;
        if c > 0 {
            lo = lo.max(fill[idx - 1]);
        }
        if r > 0 {
            lo = lo.max(fill[offsets[r - 1] + c] + 1);
        }
        for v in lo..=m {
            fill[idx] = v;
            rec(idx + 1, cells, offsets, m, fill, lambda, out);
        }
    }
    rec(0, &cells, &offsets, m as u8, &mut fill, lambda, &mut out);
    out
}

/// One nonzero value `κ(v, w)` of a count function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KappaCell {
    /// Column word of `τ'` (length = column height).
    pub v: Vec<u8>,
    /// Column word of `σ'`.
    pub w: Vec<u8>,
    pub count: usize,
}

impl KappaCell {
    pub fn height(&self) -> usize {
        self.v.len()
    }
}

/// A count function: for each column height, how many columns of that
/// height carry each pair of column words `(v, w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountFunction {
    pub shape: Partition,
    pub m: usize,
    pub cells: Vec<KappaCell>,
}

impl CountFunction {
    pub fn value(&self, v: &[u8], w: &[u8]) -> usize {
        self.cells.iter().find(|c| c.v == v && c.w == w).map_or(0, |c| c.count)
    }
}

/// All count functions compatible with the row contents of `τ` and `σ`.
pub fn count_functions(lambda: &Partition, m: usize, tau: &Tableau, sigma: &Tableau) -> Vec<CountFunction> {
    let mut out = Vec::new();
    for_each_count_function(lambda, m, tau, sigma, |_, _| true, |cells| {
        out.push(CountFunction { shape: lambda.clone(), m, cells: cells.to_vec() });
    });
    out
}

/// Visits every count function whose support is restricted to column-word
/// pairs accepted by `admit`. Heights are processed from tallest to
/// shortest; within a height, pairs `(v, w)` in lexicographic order with
/// counts tried in decreasing order.
pub fn for_each_count_function<A, F>(lambda: &Partition, m: usize, tau: &Tableau, sigma: &Tableau, admit: A, mut visit: F)
where
    A: Fn(&[u8], &[u8]) -> bool,
    F: FnMut(&[KappaCell]),
{
    let h = lambda.height();
    let budget = |t: &Tableau| -> Vec<Vec<usize>> {
        (0..h).map(|r| (0..=m as u8).map(|s| if s == 0 { 0 } else { t.count_in_row(r, s) }).collect()).collect()
    };
    let mut state = KappaSearch {
        lambda,
        m,
        admit: &admit,
        budget_tau: budget(tau),
        budget_sigma: budget(sigma),
        cells: Vec::new(),
    };
    state.segment(h, &mut visit);
}

struct KappaSearch<'a, A> {
    lambda: &'a Partition,
    m: usize,
    admit: &'a A,
    budget_tau: Vec<Vec<usize>>,
    budget_sigma: Vec<Vec<usize>>,
    cells: Vec<KappaCell>,
}

impl<A: Fn(&[u8], &[u8]) -> bool> KappaSearch<'_, A> {
    /// Processes columns of height `t` (1-based), then recurses to `t - 1`.
    fn segment<F: FnMut(&[KappaCell])>(&mut self, t: usize, visit: &mut F) {
        if t == 0 {
            visit(&self.cells);
            return;
        }
        let size = self.lambda.part(t - 1) - self.lambda.part(t);
        if size == 0 {
            self.segment(t - 1, visit);
            return;
        }
        let words_tau = self.feasible_words(t, true);
        let words_sigma = self.feasible_words(t, false);
        let mut items = Vec::new();
        for v in &words_tau {
            for w in &words_sigma {
                if (self.admit)(v, w) {
                    items.push((v.clone(), w.clone()));
                }
            }
        }
        self.choose(t, &items, 0, size, visit);
    }

    fn feasible_words(&self, t: usize, tau_side: bool) -> Vec<Vec<u8>> {
        let budget = if tau_side { &self.budget_tau } else { &self.budget_sigma };
        let mut words = vec![Vec::new()];
        for row in budget.iter().take(t) {
            words = words
                .into_iter()
                .flat_map(|w: Vec<u8>| {
                    (1..=self.m as u8).filter(move |&s| row[s as usize] > 0).map(move |s| {
                        let mut x = w.clone();
                        x.push(s);
                        x
                    })
                })
                .collect();
        }
        words
    }

    fn capacity(&self, v: &[u8], w: &[u8]) -> usize {
        let a = v.iter().enumerate().map(|(r, &s)| self.budget_tau[r][s as usize]).min().unwrap_or(0);
        let b = w.iter().enumerate().map(|(r, &s)| self.budget_sigma[r][s as usize]).min().unwrap_or(0);
        a.min(b)
    }

    fn apply(&mut self, v: &[u8], w: &[u8], count: usize, add: bool) {
        for (r, &s) in v.iter().enumerate() {
            let b = &mut self.budget_tau[r][s as usize];
            if add { *b += count } else { *b -= count }
        }
        for (r, &s) in w.iter().enumerate() {
            let b = &mut self.budget_sigma[r][s as usize];
            if add { *b += count } else { *b -= count }
        }
    }

    fn choose<F: FnMut(&[KappaCell])>(
        &mut self,
        t: usize,
        items: &[(Vec<u8>, Vec<u8>)],
        idx: usize,
        remaining: usize,
        visit: &mut F,
    ) {
        if remaining == 0 {
            self.segment(t - 1, visit);
            return;
        }
        if idx == items.len() {
            return;
        }
        let (v, w) = &items[idx];
        let cap = self.capacity(v, w).min(remaining);
        for c in (0..=cap).rev() {
            if c > 0 {
                self.apply(v, w, c, false);
                self.cells.push(KappaCell { v: v.clone(), w: w.clone(), count: c });
            }
            self.choose(t, items, idx + 1, remaining - c, visit);
            if c > 0 {
                self.cells.pop();
                self.apply(v, w, c, true);
            }
        }
    }
}

/// Number of pairs `(τ', σ')` with count function `κ`:
/// `Π_t (λ_t − λ_{t+1})! / Π_{v,w} κ(v,w)!`.
pub fn kappa_multiplicity(lambda: &Partition, kappa: &CountFunction) -> Result<u64> {
    let h = lambda.height();
    let mut totals = vec![0usize; h + 1];
    for c in &kappa.cells {
        if c.height() == 0 || c.height() > h || c.w.len() != c.height() {
            return Err(invalid(format!("count function cell {c:?} does not fit shape {lambda}")));
        }
        totals[c.height()] += c.count;
    }
    let mut num = 1u64;
    for (t, &total) in totals.iter().enumerate().take(h + 1).skip(1) {
        let seg = lambda.part(t - 1) - lambda.part(t);
        if total != seg {
            return Err(invalid(format!(
                "count function has {total} columns of height {t}, shape {lambda} has {seg}"
            )));
        }
        num *= factorial(seg);
    }
    let den: u64 = kappa.cells.iter().map(|c| factorial(c.count)).product();
    Ok(num / den)
}

/// Permutations of the cells of `Y(λ)` (row-concatenated indexing) that fix
/// every column setwise, with their signs.
pub fn column_group(lambda: &Partition) -> Vec<(Vec<usize>, i64)> {
    let cells = lambda.cells();
    let index_of = |r: usize, c: usize| cells.iter().position(|&x| x == (r, c)).unwrap();
    let mut group = vec![((0..cells.len()).collect::<Vec<usize>>(), 1i64)];
    for (col, &height) in lambda.dual().parts().iter().enumerate() {
        let members: Vec<usize> = (0..height).map(|r| index_of(r, col)).collect();
        let perms = signed_permutations(height);
        group = group
            .into_iter()
            .flat_map(|(g, s)| {
                let members = members.clone();
                perms.iter().map(move |(p, ps)| {
                    let mut g2 = g.clone();
                    for (i, &pi) in p.iter().enumerate() {
                        g2[members[i]] = members[pi];
                    }
                    (g2, s * ps)
                })
            })
            .collect();
    }
    group
}

/// All permutations of `0..n` with their signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in signed_permutations(n - 1) {
        // insert n-1 at every position; moving it left past k items adds k inversions
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let inv = (p.len() - pos) as i64;
            out.push((q, if inv % 2 == 0 { s } else { -s }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::new(vec![]).unwrap().weight(), 0);
    }

    /// Brute-force count: weakly decreasing sequences from all tuples.
    fn partition_count_oracle(n: usize) -> usize {
        fn rec(rest: usize, max: usize) -> usize {
            if rest == 0 {
                return 1;
            }
            (1..=rest.min(max)).map(|p| rec(rest - p, p)).sum()
        }
        rec(n, n)
    }

    #[test]
    fn partitions_examples() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(7).len(), 15);
        for n in 0..10 {
            let ps = partitions_of(n);
            assert_eq!(ps.len(), partition_count_oracle(n));
            let mut dedup = ps.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), ps.len());
            assert!(ps.windows(2).all(|w| w[0] > w[1]));
            for p in &ps {
                assert_eq!(Partition::new(p.parts().to_vec()).unwrap().weight(), n);
            }
        }
    }

    #[test]
    fn compositions_examples() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(6, 4).len(), binom(9, 3) as usize);
        assert_eq!(compositions(0, 4), vec![vec![0, 0, 0, 0]]);
        assert!(compositions(5, 3).iter().all(|c| c.iter().sum::<usize>() == 5));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(part(&[3, 1]).dual(), part(&[2, 1, 1]));
        assert_eq!(part(&[4]).dual(), part(&[1, 1, 1, 1]));
        for n in 0..=8 {
            for p in partitions_of(n) {
                assert_eq!(p.dual().dual(), p);
            }
        }
    }

    #[test]
    fn stabilizer_orders() {
        assert_eq!(column_stabilizer_order(&part(&[5])), 1);
        assert_eq!(column_stabilizer_order(&part(&[1, 1, 1])), 6);
        assert_eq!(column_stabilizer_order(&part(&[2, 1])), 2);
        for n in 1..=5 {
            for p in partitions_of(n) {
                assert_eq!(column_group(&p).len() as u64, column_stabilizer_order(&p));
            }
        }
    }

    /// Fills every cell with every value and keeps the semistandard ones.
    fn ssyt_oracle(lambda: &Partition, m: usize) -> usize {
        let n = lambda.weight();
        let total = m.pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let entries: Vec<u8> = (0..n)
                    .map(|_| {
                        let e = (c % m) as u8 + 1;
                        c /= m;
                        e
                    })
                    .collect();
                let mut rows = Vec::new();
                let mut off = 0;
                for &l in lambda.parts() {
                    rows.push(entries[off..off + l].to_vec());
                    off += l;
                }
                Tableau::new(lambda.clone(), rows).unwrap().is_semistandard()
            })
            .count()
    }

    #[test]
    fn semistandard_examples() {
        assert!(semistandard_tableaux(&part(&[1, 1, 1]), 2).is_empty());
        assert_eq!(semistandard_tableaux(&part(&[2, 1]), 2).len(), 2);
        assert_eq!(semistandard_tableaux(&part(&[2]), 3).len(), 6);
        assert_eq!(semistandard_tableaux(&Partition::empty(), 2), vec![Tableau::empty()]);
        for n in 0..=5 {
            for lambda in partitions_of(n) {
                for m in 1..=3 {
                    let ts = semistandard_tableaux(&lambda, m);
                    assert_eq!(ts.len(), ssyt_oracle(&lambda, m), "{lambda} m={m}");
                    assert!(ts.iter().all(Tableau::is_semistandard));
                    assert_eq!(ts.is_empty(), lambda.height() > m);
                }
            }
        }
        for a in 0..=7 {
            for m in 1..=3u64 {
                let got = semistandard_tableaux(&Partition::row(a), m as usize).len() as u64;
                assert_eq!(got, binom(a as u64 + m - 1, m - 1));
            }
        }
    }

    #[test]
    fn count_function_examples() {
        let l = part(&[4]);
        let ones = Tableau::new(l.clone(), vec![vec![1; 4]]).unwrap();
        let ks = count_functions(&l, 1, &ones, &ones);
        assert_eq!(ks.len(), 1);
        assert_eq!(ks[0].value(&[1], &[1]), 4);

        let l = part(&[1]);
        let t = Tableau::new(l.clone(), vec![vec![2]]).unwrap();
        let s = Tableau::new(l.clone(), vec![vec![3]]).unwrap();
        let ks = count_functions(&l, 3, &t, &s);
        assert_eq!(ks.len(), 1);
        assert_eq!(ks[0].value(&[2], &[3]), 1);

        let l = part(&[2]);
        let t = Tableau::new(l.clone(), vec![vec![1, 2]]).unwrap();
        let ks = count_functions(&l, 2, &t, &t);
        assert_eq!(ks.len(), 2);
        let diag = ks.iter().find(|k| k.value(&[1], &[1]) == 1).unwrap();
        assert_eq!(diag.value(&[2], &[2]), 1);
        let anti = ks.iter().find(|k| k.value(&[1], &[2]) == 1).unwrap();
        assert_eq!(anti.value(&[2], &[1]), 1);
    }

    #[test]
    fn multiplicity_examples() {
        let l = part(&[3]);
        let single = CountFunction { shape: l.clone(), m: 1, cells: vec![KappaCell { v: vec![1], w: vec![1], count: 3 }] };
        assert_eq!(kappa_multiplicity(&l, &single).unwrap(), 1);
        let l = part(&[2]);
        let two = CountFunction {
            shape: l.clone(),
            m: 2,
            cells: vec![
                KappaCell { v: vec![1], w: vec![1], count: 1 },
                KappaCell { v: vec![2], w: vec![2], count: 1 },
            ],
        };
        assert_eq!(kappa_multiplicity(&l, &two).unwrap(), 2);
        // (3,1): one column of height 2, two of height 1.
        let l = part(&[3, 1]);
        let k = CountFunction {
            shape: l.clone(),
            m: 2,
            cells: vec![
                KappaCell { v: vec![1, 2], w: vec![1, 2], count: 1 },
                KappaCell { v: vec![1], w: vec![1], count: 1 },
                KappaCell { v: vec![2], w: vec![1], count: 1 },
            ],
        };
        assert_eq!(kappa_multiplicity(&l, &k).unwrap(), factorial(1) * factorial(2));
        let bad = CountFunction { shape: l.clone(), m: 2, cells: vec![KappaCell { v: vec![1], w: vec![1], count: 3 }] };
        assert!(kappa_multiplicity(&l, &bad).is_err());
    }

    /// Count function of an explicit pair, computed column by column.
    fn kappa_of(tp: &Tableau, sp: &Tableau) -> Vec<(Vec<u8>, Vec<u8>)> {
        let dual = tp.shape().dual();
        let mut cols: Vec<(Vec<u8>, Vec<u8>)> = dual
            .parts()
            .iter()
            .enumerate()
            .map(|(c, &h)| ((0..h).map(|r| tp.get(r, c)).collect(), (0..h).map(|r| sp.get(r, c)).collect()))
            .collect();
        cols.sort();
        cols
    }

    #[test]
    fn multiplicities_count_row_equivalent_pairs() {
        use std::collections::HashMap;
        for n in 1..=5 {
            for lambda in partitions_of(n) {
                for m in 1..=3 {
                    let ts = semistandard_tableaux(&lambda, m);
                    for tau in &ts {
                        for sigma in &ts {
                            let mut brute: HashMap<Vec<(Vec<u8>, Vec<u8>)>, u64> = HashMap::new();
                            let mut pairs = 0u64;
                            for tp in tau.row_equivalents() {
                                for sp in sigma.row_equivalents() {
                                    *brute.entry(kappa_of(&tp, &sp)).or_default() += 1;
                                    pairs += 1;
                                }
                            }
                            let ks = count_functions(&lambda, m, tau, sigma);
                            let total: u64 = ks.iter().map(|k| kappa_multiplicity(&lambda, k).unwrap()).sum();
                            assert_eq!(total, pairs, "{lambda} {tau} {sigma}");
                            assert_eq!(ks.len(), brute.len());
                            for k in &ks {
                                let mut key: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
                                for c in &k.cells {
                                    for _ in 0..c.count {
                                        key.push((c.v.clone(), c.w.clone()));
                                    }
                                }
                                key.sort();
                                assert_eq!(brute[&key], kappa_multiplicity(&lambda, k).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn signed_permutations_are_consistent() {
        for n in 0..=4 {
            let ps = signed_permutations(n);
            assert_eq!(ps.len() as u64, factorial(n));
            for (p, s) in ps {
                let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                assert_eq!(s, if inv % 2 == 0 { 1 } else { -1 });
            }
        }
    }

    #[test]
    fn row_equivalents_distinct() {
        let t = Tableau::new(part(&[3, 1]), vec![vec![1, 1, 2], vec![2]]).unwrap();
        let eq = t.row_equivalents();
        assert_eq!(eq.len(), 3);
        assert!(eq.iter().all(|e| e.row_sorted() == t));
    }
}
