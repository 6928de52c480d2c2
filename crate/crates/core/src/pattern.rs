//! Set partitions of `{1,2,3,4}`: the equality patterns of 4-tuples of
//! letters, which index the dual variables `d*_P`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{invalid, Error};

/// Number of set partitions of a 4-element set.
pub const NUM_PATTERNS: usize = 15;

/// Canonical order: by number of blocks, then lexicographic on the
/// restricted growth string. `Π(q)` is always a prefix of this list.
const CANONICAL: [[u8; 4]; NUM_PATTERNS] = [
    [0, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [0, 0, 1, 1],
    [0, 1, 0, 0],
    [0, 1, 0, 1],
    [0, 1, 1, 0],
    [0, 1, 1, 1],
    [0, 0, 1, 2],
    [0, 1, 0, 2],
    [0, 1, 1, 2],
    [0, 1, 2, 0],
    [0, 1, 2, 1],
    [0, 1, 2, 2],
    [0, 1, 2, 3],
];

/// A partition of `{1,2,3,4}`, stored as a restricted growth string
/// (`rgs[0] = 0`, each entry at most one more than the maximum before it).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SetPartition {
    rgs: [u8; 4],
}

/// Restricted growth string of an arbitrary sequence: equal items get equal
/// labels, labels assigned in order of first appearance.
pub fn rgs_of<T: PartialEq>(items: &[T]) -> Vec<u8> {
    let mut firsts: Vec<&T> = Vec::with_capacity(items.len());
    items
        .iter()
        .map(|x| match firsts.iter().position(|f| *f == x) {
            Some(p) => p as u8,
            None => {
                firsts.push(x);
                (firsts.len() - 1) as u8
            }
        })
        .collect()
}

/// The pattern of equalities among four letters (`part(w)`).
pub fn column_pattern<T: PartialEq>(letters: &[T; 4]) -> SetPartition {
    let r = rgs_of(letters);
    SetPartition { rgs: [r[0], r[1], r[2], r[3]] }
}

/// `Π(q)`: partitions of `{1,2,3,4}` into at most `q` blocks, canonical order.
pub fn set_partitions(q: usize) -> Vec<SetPartition> {
    (0..num_patterns(q)).map(SetPartition::from_index).collect()
}

/// `|Π(q)|`.
pub fn num_patterns(q: usize) -> usize {
    match q {
        0 => 0,
        1 => 1,
        2 => 8,
        3 => 14,
        _ => NUM_PATTERNS,
    }
}

impl SetPartition {
    pub fn from_index(index: usize) -> Self {
        SetPartition { rgs: CANONICAL[index] }
    }

    /// Position in the canonical order; doubles as the `d*` variable index.
    pub fn index(&self) -> usize {
        CANONICAL.iter().position(|r| *r == self.rgs).expect("canonical rgs")
    }

    pub fn rgs(&self) -> [u8; 4] {
        self.rgs
    }

    pub fn num_blocks(&self) -> usize {
        *self.rgs.iter().max().unwrap() as usize + 1
    }

    /// Blocks as lists of 1-based elements, sorted by minimum element.
    pub fn blocks(&self) -> Vec<Vec<u8>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (pos, &b) in self.rgs.iter().enumerate() {
            blocks[b as usize].push(pos as u8 + 1);
        }
        blocks
    }

    /// Whether positions `a` and `b` (0-based) are in the same block.
    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.rgs[a] == self.rgs[b]
    }

    /// Relabels positions: position `i` of the result carries what position
    /// `perm[i]` carried before.
    pub fn permute_positions(&self, perm: [usize; 4]) -> Self {
        let letters = [self.rgs[perm[0]], self.rgs[perm[1]], self.rgs[perm[2]], self.rgs[perm[3]]];
        column_pattern(&letters)
    }

    /// Exchanges the roles of the pairs `(1,2)` and `(3,4)`.
    pub fn swap_pairs(&self) -> Self {
        self.permute_positions([2, 3, 0, 1])
    }

    /// Exchanges positions 1 and 2 (transposes the first tensor factor).
    pub fn transpose_first(&self) -> Self {
        self.permute_positions([1, 0, 2, 3])
    }
}

impl fmt::Display for SetPartition {
    /// Block strings joined by commas, e.g. `13,2,4` or `1234`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|e| char::from(b'0' + e)).collect())
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut label = [u8::MAX; 4];
        for (bi, block) in s.split(',').enumerate() {
            if block.is_empty() {
                return Err(invalid(format!("empty block in partition {s:?}")));
            }
            for ch in block.trim().chars() {
                let e = ch.to_digit(10).filter(|d| (1..=4).contains(d));
                let Some(e) = e else {
                    return Err(invalid(format!("bad element {ch:?} in partition {s:?}")));
                };
                let slot = &mut label[e as usize - 1];
                if *slot != u8::MAX {
                    return Err(invalid(format!("element {e} repeated in {s:?}")));
                }
                *slot = bi as u8;
            }
        }
        if label.contains(&u8::MAX) {
            return Err(invalid(format!("partition {s:?} does not cover 1..4")));
        }
        Ok(column_pattern(&label))
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
