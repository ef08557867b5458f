use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cartan::{dot, CartanDatum, Weight};

/// A root, stored both in ambient ε-coordinates and as its expansion over
/// the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i64>,
    pub expansion: Vec<i32>,
}

impl Root {
    fn from_expansion(datum: &CartanDatum, expansion: Vec<i32>) -> Root {
        let mut coords = vec![0i64; datum.ambient_dim()];
        for (c, alpha) in expansion.iter().zip(datum.simple_roots()) {
            for (x, a) in coords.iter_mut().zip(alpha) {
                *x += *c as i64 * a;
            }
        }
        Root { coords, expansion }
    }

    pub fn simple(datum: &CartanDatum, i: usize) -> Root {
        let mut e = vec![0; datum.rank()];
        e[i] = 1;
        Root::from_expansion(datum, e)
    }

    pub fn is_positive(&self) -> bool {
        self.expansion.iter().all(|&c| c >= 0) && self.expansion.iter().any(|&c| c > 0)
    }

    pub fn height(&self) -> i32 {
        self.expansion.iter().sum()
    }

    /// Whether α_i occurs in the simple-root expansion.
    pub fn contains_simple(&self, i: usize) -> bool {
        self.expansion[i] != 0
    }

    pub fn negated(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|x| -x).collect(),
            expansion: self.expansion.iter().map(|x| -x).collect(),
        }
    }

    pub fn norm2(&self) -> i64 {
        dot(&self.coords, &self.coords)
    }

    /// Dynkin labels <α, α_k^∨>.
    pub fn labels(&self, datum: &CartanDatum) -> Weight {
        let a = datum.cartan_matrix();
        Weight((0..datum.rank()).map(|k| self.expansion.iter().enumerate().map(|(j, c)| c * a[k][j]).sum()).collect())
    }

    /// The pairing <λ, α^∨> = 2(λ, α)/(α, α) for λ given by Dynkin labels.
    pub fn coroot_pairing(&self, datum: &CartanDatum, weight: &Weight) -> i32 {
        // α^∨ = Σ_j c_j (α_j, α_j)/(α, α) α_j^∨
        let num: i64 = self
            .expansion
            .iter()
            .enumerate()
            .map(|(j, &c)| c as i64 * datum.simple_root_norm(j) * weight.0[j] as i64)
            .sum();
        let n = self.norm2();
        debug_assert_eq!(num % n, 0);
        (num / n) as i32
    }

    /// s_α λ = λ - <λ, α^∨> α.
    pub fn reflect_weight(&self, datum: &CartanDatum, weight: &Weight) -> Weight {
        let c = self.coroot_pairing(datum, weight);
        if c == 0 {
            return weight.clone();
        }
        let labels = self.labels(datum);
        Weight(weight.0.iter().zip(&labels.0).map(|(x, a)| x - c * a).collect())
    }

    /// Simple reflection s_i applied to the root.
    pub fn reflected(&self, datum: &CartanDatum, i: usize) -> Root {
        let a = datum.cartan_matrix();
        let pairing: i32 = self.expansion.iter().enumerate().map(|(j, c)| c * a[i][j]).sum();
        let mut e = self.expansion.clone();
        e[i] -= pairing;
        Root::from_expansion(datum, e)
    }
}

/// All positive roots, sorted by height and then by expansion.
pub fn positive_roots(datum: &CartanDatum) -> Vec<Root> {
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    let mut out: Vec<Root> = Vec::new();
    let mut stack: Vec<Root> = (0..datum.rank()).map(|i| Root::simple(datum, i)).collect();
    while let Some(root) = stack.pop() {
        if !seen.insert(root.expansion.clone()) {
            continue;
        }
        for i in 0..datum.rank() {
            let next = root.reflected(datum, i);
            if next.is_positive() && !seen.contains(&next.expansion) {
                stack.push(next);
            }
        }
        out.push(root);
    }
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.expansion.cmp(&a.expansion)));
    out
}

/// Positive roots whose support lies in `nodes`, i.e. the positive roots of
/// the parabolic subsystem.
pub fn positive_roots_in(datum: &CartanDatum, nodes: &[usize]) -> Vec<Root> {
    positive_roots(datum)
        .into_iter()
        .filter(|r| (0..datum.rank()).all(|j| r.expansion[j] == 0 || nodes.contains(&j)))
        .collect()
}
