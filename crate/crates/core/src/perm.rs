//! Type A combinatorics: permutations in one-line notation, subsets of
//! `[1, n]`, and the Ehresmann criterion for the Bruhat order.
//!
//! Values are stored 0-based and printed 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanType, Weight};
use crate::error::{Error, Result};
use crate::group::{WeylElement, WeylGroup};

/// Largest `n` for which subsets of `[1, n]` are supported.
pub const MAX_N: usize = 31;

/// A subset of `[1, n]` as a bitmask; bit `j` stands for the element `j + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// Builds a subset from 1-based elements.
    pub fn from_one_based(elems: &[usize]) -> Subset {
        Subset(elems.iter().fold(0, |m, &e| m | (1 << (e - 1))))
    }

    /// `[1, k]`.
    pub fn initial(k: usize) -> Subset {
        Subset(((1u64 << k) - 1) as u32)
    }

    /// `[a + 1, b]` in 1-based terms, i.e. 0-based elements `a..b`.
    pub fn interval(a: usize, b: usize) -> Subset {
        Subset(Subset::initial(b).0 & !Subset::initial(a).0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, j: usize) -> bool {
        self.0 >> j & 1 == 1
    }

    pub fn with(self, j: usize) -> Subset {
        Subset(self.0 | 1 << j)
    }

    pub fn without(self, j: usize) -> Subset {
        Subset(self.0 & !(1 << j))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// 0-based elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&j| self.0 >> j & 1 == 1)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// Gale order on subsets of equal size: `j_t <= k_t` for all t.
    pub fn gale_leq(self, other: Subset) -> bool {
        self.len() == other.len() && self.iter().zip(other.iter()).all(|(a, b)| a <= b)
    }

    /// Number of elements in the symmetric difference.
    pub fn hamming(self, other: Subset) -> usize {
        (self.0 ^ other.0).count_ones() as usize
    }

    /// Dynkin labels of the corresponding Plücker weight of `A_{n-1}`.
    pub fn labels(self, n: usize) -> Weight {
        Weight((0..n - 1).map(|j| self.contains(j) as i32 - self.contains(j + 1) as i32).collect())
    }

    /// Inverse of [`Subset::labels`] for a weight of known size `level`.
    pub fn from_labels(labels: &Weight, level: usize) -> Option<Subset> {
        let n = labels.0.len() + 1;
        // m_j - m_{j+1} = λ_j and Σ m_j = level
        let mut suffix = vec![0i32; n];
        for j in (0..n - 1).rev() {
            suffix[j] = suffix[j + 1] + labels.0[j];
        }
        let total: i32 = suffix.iter().sum();
        let last = level as i32 - total;
        if last % n as i32 != 0 {
            return None;
        }
        let last = last / n as i32;
        let mut s = Subset::EMPTY;
        for (j, &x) in suffix.iter().enumerate() {
            match last + x {
                0 => {}
                1 => s = s.with(j),
                _ => return None,
            }
        }
        Some(s)
    }

    /// Parses `13`, `{1,3}`, `p13` or `p{1,3}`.
    pub fn parse(s: &str, n: usize) -> Result<Subset> {
        let t = s.trim().trim_start_matches('p').trim_start_matches('_');
        let t = t.trim_start_matches('{').trim_end_matches('}');
        let elems: Vec<usize> = if t.contains(',') {
            t.split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("invalid subset {s:?}"))))
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("invalid subset {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        let mut out = Subset::EMPTY;
        for e in elems {
            if e == 0 || e > n {
                return Err(Error::Parse(format!("element {e} of {s:?} outside [1,{n}]")));
            }
            if out.contains(e - 1) {
                return Err(Error::Parse(format!("repeated element {e} in {s:?}")));
            }
            out = out.with(e - 1);
        }
        Ok(out)
    }

    /// Compact form `13` when all elements are single digits, `{1,3}`
    /// otherwise.
    pub fn to_compact(self) -> String {
        if self.max().is_none_or(|m| m < 9) {
            self.iter().map(|j| (j + 1).to_string()).collect()
        } else {
            format!("{{{}}}", self.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join(","))
        }
    }

    /// All `k`-subsets of `[1, n]` in colex order.
    pub fn all_of_size(n: usize, k: usize) -> Vec<Subset> {
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(Subset).collect()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_compact())
    }
}

/// A permutation of `[1, n]` in one-line notation, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u8).collect())
    }

    /// From 0-based images; fails unless a bijection.
    pub fn from_images(images: Vec<u8>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || seen[x as usize] {
                return Err(Error::Parse(format!("not a permutation: {images:?}")));
            }
            seen[x as usize] = true;
        }
        Ok(Perm(images))
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(values: &[usize]) -> Result<Perm> {
        if values.iter().any(|&v| v == 0 || v > 255) {
            return Err(Error::Parse(format!("not a permutation: {values:?}")));
        }
        Perm::from_images(values.iter().map(|&v| (v - 1) as u8).collect())
    }

    /// Parses `2143` or `2,1,4,3`.
    pub fn parse(s: &str) -> Result<Perm> {
        let s = s.trim();
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("invalid permutation {s:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("invalid permutation {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Perm::from_one_line(&values)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// w(i), 0-based.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// w([1, i]).
    pub fn prefix(&self, i: usize) -> Subset {
        Subset(self.0[..i].iter().fold(0, |m, &x| m | 1 << x))
    }

    /// One-line notation: `2143`, or comma separated when n > 9.
    pub fn one_line(&self) -> String {
        if self.n() <= 9 {
            self.0.iter().map(|x| (x + 1).to_string()).collect()
        } else {
            self.0.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")
        }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        (0..n).map(|i| (i + 1..n).filter(|&j| self.0[i] > self.0[j]).count()).sum()
    }

    /// w s_i: swaps the entries in positions i and i+1.
    pub fn mul_simple_right(&self, i: usize) -> Perm {
        let mut v = self.0.clone();
        v.swap(i, i + 1);
        Perm(v)
    }

    /// u ∘ v.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0u8; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x as usize] = i as u8;
        }
        Perm(v)
    }

    /// Transposition of positions i and j (0-based) as a permutation.
    pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
        let mut v: Vec<u8> = (0..n as u8).collect();
        v.swap(i, j);
        Perm(v)
    }

    /// Right descents: positions i with w(i) > w(i+1).
    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.n().saturating_sub(1)).filter(|&i| self.0[i] > self.0[i + 1]).collect()
    }

    /// Left descents: values i with i+1 appearing before i.
    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().right_descents()
    }

    /// A reduced word (0-based generators).
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(i) = w.right_descents().first().copied() {
            w = w.mul_simple_right(i);
            word.push(i);
        }
        word.reverse();
        word
    }

    /// Ehresmann criterion: `u <= v` iff `u([1,i]) <= v([1,i])` in the Gale
    /// order for every i.
    pub fn bruhat_leq(&self, other: &Perm) -> bool {
        self.n() == other.n() && (1..self.n()).all(|i| self.prefix(i).gale_leq(other.prefix(i)))
    }

    /// All permutations of `[1, n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
    }

    /// The longest element `n n-1 ... 1`.
    pub fn longest(n: usize) -> Perm {
        Perm((0..n as u8).rev().collect())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_line())
    }
}

/// Conversions between [`Perm`] and elements of a type A Weyl group.
pub trait TypeAGroup {
    fn check_type_a(&self) -> Result<usize>;
    fn to_perm(&self, w: WeylElement) -> Perm;
    fn from_perm(&self, p: &Perm) -> Result<WeylElement>;
}

impl TypeAGroup for WeylGroup {
    /// Returns `n = r + 1` for `A_r`.
    fn check_type_a(&self) -> Result<usize> {
        if self.kind() == CartanType::A {
            Ok(self.rank() + 1)
        } else {
            Err(Error::WrongType { expected: "A".into(), found: self.datum().name() })
        }
    }

    fn to_perm(&self, w: WeylElement) -> Perm {
        let n = self.rank() + 1;
        self.word(w).iter().fold(Perm::identity(n), |p, &i| p.mul_simple_right(i as usize))
    }

    fn from_perm(&self, p: &Perm) -> Result<WeylElement> {
        let n = self.check_type_a()?;
        if p.n() != n {
            return Err(Error::Dimension(format!("permutation of {} letters in {}", p.n(), self.datum())));
        }
        Ok(self.from_word(&p.reduced_word()))
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}
