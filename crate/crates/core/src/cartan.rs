//! Cartan data for the irreducible types A, B, C, D and G2.
//!
//! Simple roots and fundamental weights are given in the ambient
//! ε-coordinates of Bourbaki's tables. Internally weights are carried in the
//! basis of fundamental weights ("Dynkin labels"), where every simple
//! reflection acts by integer row operations.
//!
//! Node indices are 0-based in the Rust API and printed 1-based.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank accepted by [`CartanDatum::new`].
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G,
}

impl CartanType {
    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::G => 'G',
        }
    }
}

/// A weight written in the basis of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight ω_i.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    /// ρ = ω_1 + ... + ω_r, the strictly dominant vector used for fingerprints.
    pub fn rho(rank: usize) -> Self {
        Weight(vec![1; rank])
    }

    pub fn labels(&self) -> &[i32] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// In-place simple reflection s_i.
    pub fn reflect(&mut self, i: usize, cartan: &[Vec<i32>]) {
        let c = self.0[i];
        if c != 0 {
            for (k, x) in self.0.iter_mut().enumerate() {
                *x -= c * cartan[k][i];
            }
        }
    }

    pub fn reflected(&self, i: usize, cartan: &[Vec<i32>]) -> Self {
        let mut w = self.clone();
        w.reflect(i, cartan);
        w
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    kind: CartanType,
    rank: usize,
    /// `cartan[i][j] = <α_i^∨, α_j> = 2(α_i, α_j) / (α_i, α_i)`.
    cartan: Vec<Vec<i32>>,
    simple_roots: Vec<Vec<i64>>,
    fundamental_weights: Vec<Vec<Rational64>>,
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn diff(dim: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v[j] = -1;
    v
}

fn prefix_sum(dim: usize, upto: usize) -> Vec<Rational64> {
    (0..dim).map(|k| if k < upto { Rational64::one() } else { Rational64::zero() }).collect()
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_q(a: &[Rational64], b: &[i64]) -> Rational64 {
    a.iter().zip(b).fold(Rational64::zero(), |acc, (x, &y)| acc + *x * Rational64::from_integer(y))
}

impl CartanDatum {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        let supported = match kind {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 4,
            CartanType::G => rank == 2,
        };
        if !supported || rank > MAX_RANK {
            return Err(Error::Unsupported { kind: kind.letter(), rank });
        }
        let r = rank;
        let (simple_roots, fundamental_weights) = match kind {
            CartanType::A => {
                let dim = r + 1;
                let roots = (0..r).map(|i| diff(dim, i, i + 1)).collect();
                // ω_i = ε_1 + ... + ε_i - (i/(r+1)) Σ ε_j
                let weights = (1..=r)
                    .map(|i| {
                        let shift = Rational64::new(i as i64, dim as i64);
                        prefix_sum(dim, i).into_iter().map(|x| x - shift).collect()
                    })
                    .collect();
                (roots, weights)
            }
            CartanType::B => {
                let mut roots: Vec<_> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
                roots.push(unit(r, r - 1));
                let mut weights: Vec<_> = (1..r).map(|i| prefix_sum(r, i)).collect();
                weights.push(vec![Rational64::new(1, 2); r]);
                (roots, weights)
            }
            CartanType::C => {
                let mut roots: Vec<_> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
                let mut last = vec![0; r];
                last[r - 1] = 2;
                roots.push(last);
                let weights = (1..=r).map(|i| prefix_sum(r, i)).collect();
                (roots, weights)
            }
            CartanType::D => {
                let mut roots: Vec<_> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
                let mut last = vec![0; r];
                last[r - 2] = 1;
                last[r - 1] = 1;
                roots.push(last);
                let mut weights: Vec<_> = (1..r - 1).map(|i| prefix_sum(r, i)).collect();
                let half = Rational64::new(1, 2);
                let mut minus = vec![half; r];
                minus[r - 1] = -half;
                weights.push(minus);
                weights.push(vec![half; r]);
                (roots, weights)
            }
            CartanType::G => {
                let roots = vec![vec![1, -1, 0], vec![-2, 1, 1]];
                let q = |v: [i64; 3]| v.iter().map(|&x| Rational64::from_integer(x)).collect();
                let weights = vec![q([0, -1, 1]), q([-1, -1, 2])];
                (roots, weights)
            }
        };
        let cartan = (0..r)
            .map(|i| {
                let ni = dot(&simple_roots[i], &simple_roots[i]);
                (0..r).map(|j| (2 * dot(&simple_roots[i], &simple_roots[j]) / ni) as i32).collect()
            })
            .collect();
        Ok(CartanDatum { kind, rank, cartan, simple_roots, fundamental_weights })
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn fundamental_weights(&self) -> &[Vec<Rational64>] {
        &self.fundamental_weights
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple_roots[0].len()
    }

    /// (α_i, α_i) in the ambient inner product.
    pub fn simple_root_norm(&self, i: usize) -> i64 {
        dot(&self.simple_roots[i], &self.simple_roots[i])
    }

    /// |W| from the closed formula for the type.
    pub fn group_order(&self) -> u128 {
        let r = self.rank as u128;
        let fact = |n: u128| (1..=n).product::<u128>();
        match self.kind {
            CartanType::A => fact(r + 1),
            CartanType::B | CartanType::C => (1u128 << r) * fact(r),
            CartanType::D => (1u128 << (r - 1)) * fact(r),
            CartanType::G => 12,
        }
    }

    /// Dynkin labels <v, α_i^∨> of an ambient vector.
    pub fn labels_of(&self, v: &[Rational64]) -> Result<Weight> {
        if v.len() != self.ambient_dim() {
            return Err(Error::Dimension(format!(
                "expected {} ambient coordinates, got {}",
                self.ambient_dim(),
                v.len()
            )));
        }
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let x = dot_q(v, &self.simple_roots[i]) * Rational64::from_integer(2)
                / Rational64::from_integer(self.simple_root_norm(i));
            if !x.is_integer() {
                return Err(Error::Parse(format!("vector is not an integral weight (label {x})")));
            }
            out.push(x.to_integer() as i32);
        }
        Ok(Weight(out))
    }

    /// Ambient coordinates Σ λ_i ω_i. For type A this is the component in
    /// the hyperplane Σ ε_j = 0.
    pub fn ambient_of(&self, w: &Weight) -> Vec<Rational64> {
        let mut out = vec![Rational64::zero(); self.ambient_dim()];
        for (i, &c) in w.0.iter().enumerate() {
            if c != 0 {
                let c = Rational64::from_integer(c as i64);
                for (o, x) in out.iter_mut().zip(&self.fundamental_weights[i]) {
                    *o += c * *x;
                }
            }
        }
        out
    }

    /// The nodes of the Dynkin diagram adjacent to `i`.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.rank).filter(|&j| j != i && self.cartan[i][j] != 0).collect()
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind.letter(), self.rank)
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.rank)
    }
}

impl FromStr for CartanDatum {
    type Err = Error;

    /// Parses group names such as `A3`, `B2`, `D4`, `G2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::Parse("empty group name".into()))?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("invalid group name {s:?}")))?;
        let kind = match letter {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'G' => CartanType::G,
            'E' | 'F' => return Err(Error::Unsupported { kind: letter, rank }),
            _ => return Err(Error::Parse(format!("invalid group name {s:?}"))),
        };
        CartanDatum::new(kind, rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_data(max_rank: usize) -> Vec<CartanDatum> {
        let mut out = Vec::new();
        for r in 1..=max_rank {
            for kind in [CartanType::A, CartanType::B, CartanType::C, CartanType::D, CartanType::G] {
                if let Ok(d) = CartanDatum::new(kind, r) {
                    out.push(d);
                }
            }
        }
        out
    }

    #[test]
    fn cartan_matrices_are_generalized_cartan() {
        for d in all_data(MAX_RANK) {
            let a = d.cartan_matrix();
            for i in 0..d.rank() {
                assert_eq!(a[i][i], 2, "{d}");
                for j in 0..d.rank() {
                    if i != j {
                        assert!(a[i][j] <= 0, "{d}");
                        assert_eq!(a[i][j] == 0, a[j][i] == 0, "{d}");
                    }
                }
            }
        }
    }

    #[test]
    fn fundamental_weights_are_dual_to_coroots() {
        for d in all_data(MAX_RANK) {
            for i in 0..d.rank() {
                let labels = d.labels_of(&d.fundamental_weights()[i]).unwrap();
                assert_eq!(labels, Weight::fundamental(d.rank(), i), "{d} ω_{}", i + 1);
            }
        }
    }

    #[test]
    fn g2_matches_bourbaki() {
        let d: CartanDatum = "G2".parse().unwrap();
        // a_ij = <α_i^∨, α_j>, α_1 short
        assert_eq!(d.cartan_matrix(), &[vec![2, -3], vec![-1, 2]]);
        assert_eq!(d.simple_root_norm(0), 2);
        assert_eq!(d.simple_root_norm(1), 6);
    }

    #[test]
    fn rejects_unsupported() {
        assert!(matches!("E6".parse::<CartanDatum>(), Err(Error::Unsupported { .. })));
        assert!(matches!("F4".parse::<CartanDatum>(), Err(Error::Unsupported { .. })));
        assert!(matches!("D3".parse::<CartanDatum>(), Err(Error::Unsupported { .. })));
        assert!(matches!("G3".parse::<CartanDatum>(), Err(Error::Unsupported { .. })));
        assert!(matches!("A9".parse::<CartanDatum>(), Err(Error::Unsupported { .. })));
        assert!(matches!("X2".parse::<CartanDatum>(), Err(Error::Parse(_))));
        assert!(matches!("A".parse::<CartanDatum>(), Err(Error::Parse(_))));
    }

    #[test]
    fn ambient_round_trip() {
        let d: CartanDatum = "D5".parse().unwrap();
        let w = Weight(vec![1, -2, 0, 3, -1]);
        assert_eq!(d.labels_of(&d.ambient_of(&w)).unwrap(), w);
    }

    #[test]
    fn order_formulas() {
        let order = |s: &str| s.parse::<CartanDatum>().unwrap().group_order();
        assert_eq!(order("A2"), 6);
        assert_eq!(order("B3"), 48);
        assert_eq!(order("D4"), 192);
        assert_eq!(order("G2"), 12);
    }
}
