//! Bases of finite posets (elements that are not the supremum of the
//! elements strictly below them), bases of Weyl groups under the Bruhat
//! order, and recognition of generic patterns from base weights alone.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{WeylElement, WeylGroup};
use crate::patterns::generic_pattern;
use crate::perm::{binomial, Perm, Subset, TypeAGroup};
use crate::plucker::{PluckerSpace, WeightId};

/// A finite partial order on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds the poset from a relation on `0..n`, checking the axioms.
    pub fn new(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let table: Vec<bool> = (0..n * n).map(|k| leq(k / n, k % n)).collect();
        let poset = FinitePoset { n, leq: table };
        for a in 0..n {
            if !poset.leq(a, a) {
                return Err(Error::InvalidPoset(format!("{a} is not below itself")));
            }
            for b in 0..n {
                if a != b && poset.leq(a, b) && poset.leq(b, a) {
                    return Err(Error::InvalidPoset(format!("{a} and {b} are below each other")));
                }
                for c in 0..n {
                    if poset.leq(a, b) && poset.leq(b, c) && !poset.leq(a, c) {
                        return Err(Error::InvalidPoset(format!("{a} <= {b} <= {c} but not {a} <= {c}")));
                    }
                }
            }
        }
        Ok(poset)
    }

    /// The Bruhat order, indexed by element index.
    pub fn bruhat(group: &WeylGroup) -> Self {
        let n = group.order();
        let mut leq = vec![false; n * n];
        for u in group.elements() {
            for v in group.elements() {
                leq[u.index() * n + v.index()] = group.bruhat_leq(u, v);
            }
        }
        FinitePoset { n, leq }
    }

    pub fn chain(k: usize) -> Self {
        FinitePoset::new(k, |a, b| a <= b).expect("chain")
    }

    /// Subsets of an m-element set under inclusion, as bitmasks.
    pub fn boolean(m: usize) -> Self {
        FinitePoset::new(1 << m, |a, b| a & b == a).expect("boolean lattice")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.n).find(|&a| (0..self.n).all(|b| self.leq(a, b)))
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.n).find(|&a| (0..self.n).all(|b| self.leq(b, a)))
    }

    /// The least upper bound of `q`, if one exists.
    pub fn supremum(&self, q: &[usize]) -> Option<usize> {
        let upper: Vec<usize> = (0..self.n).filter(|&a| q.iter().all(|&x| self.leq(x, a))).collect();
        upper.iter().copied().find(|&a| upper.iter().all(|&b| self.leq(a, b)))
    }

    pub fn strictly_below(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&b| b != a && self.leq(b, a)).collect()
    }

    /// Elements that are not the supremum of any subset avoiding them. Any
    /// such subset lies strictly below the element, so it suffices to test
    /// the whole strict lower set.
    pub fn base(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.supremum(&self.strictly_below(a)) != Some(a)).collect()
    }

    /// The map a ↦ {b ∈ base : b <= a} as bit vectors.
    pub fn base_signature(&self, base: &[usize], a: usize) -> Vec<bool> {
        base.iter().map(|&b| self.leq(b, a)).collect()
    }
}

/// An element of the base of W with its unique left and right descents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaseElement {
    pub element: WeylElement,
    pub left_descent: usize,
    pub right_descent: usize,
}

/// The base of the Bruhat order of W; fails if some base element has more
/// than one left or right descent.
pub fn weyl_base(group: &WeylGroup) -> Result<Vec<BaseElement>> {
    let poset = FinitePoset::bruhat(group);
    poset
        .base()
        .into_iter()
        .map(|k| {
            let w = WeylElement::from_index(k);
            match (group.left_descents(w).as_slice(), group.right_descents(w).as_slice()) {
                (&[l], &[r]) => Ok(BaseElement { element: w, left_descent: l, right_descent: r }),
                _ => {
                    Err(Error::Internal(format!("base element {} does not have unique descents", group.format_word(w))))
                }
            }
        })
        .collect()
}

/// A bigrassmannian permutation of S_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bigrassmannian {
    /// `0 <= a < b < c <= n`.
    pub triple: (usize, usize, usize),
    pub perm: Perm,
    /// `[1, a] ∪ [b + 1, c]`.
    pub coordinate: Subset,
}

/// The permutations that fix `[1, a]` and `[c + 1, n]` and swap the blocks
/// `[a + 1, b]` and `[b + 1, c]`, for all triples.
pub fn bigrassmannian_type_a(n: usize) -> Vec<Bigrassmannian> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..=n {
                let mut values: Vec<usize> = (1..=a).collect();
                values.extend(b + 1..=c);
                values.extend(a + 1..=b);
                values.extend(c + 1..=n);
                let perm = Perm::from_one_line(&values).expect("permutation");
                let coordinate = Subset::interval(0, a).union(Subset::interval(b, c));
                out.push(Bigrassmannian { triple: (a, b, c), perm, coordinate });
            }
        }
    }
    out
}

/// The base of W together with the weights u·ω_i, i the right descent of
/// u, and a lookup from restricted generic patterns back to W.
pub struct WeylBase<'a> {
    space: &'a PluckerSpace,
    pub elements: Vec<BaseElement>,
    pub weights: Vec<WeightId>,
    lookup: HashMap<Vec<bool>, WeylElement>,
}

impl<'a> WeylBase<'a> {
    pub fn new(space: &'a PluckerSpace) -> Result<Self> {
        let elements = weyl_base(space.group())?;
        let weights: Vec<WeightId> = elements.iter().map(|b| space.weight_of(b.element, b.right_descent)).collect();
        let mut lookup = HashMap::new();
        for w in space.group().elements() {
            if lookup.insert(generic_pattern(space, w).restrict(&weights), w).is_some() {
                return Err(Error::Internal("base weights do not separate generic patterns".into()));
            }
        }
        Ok(WeylBase { space, elements, weights, lookup })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The unique w whose generic pattern restricts to `bits`.
    pub fn recognize(&self, bits: &[bool]) -> Option<WeylElement> {
        self.lookup.get(bits).copied()
    }

    /// Whether every single deletion from the base weights merges two
    /// generic patterns.
    pub fn is_minimal(&self) -> bool {
        (0..self.weights.len()).all(|skip| {
            let coords: Vec<WeightId> =
                self.weights.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &id)| id).collect();
            !separates(self.space, &coords)
        })
    }

    pub fn to_json(&self) -> Value {
        let g = self.space.group();
        let type_a = g.check_type_a().is_ok();
        Value::Array(
            self.elements
                .iter()
                .zip(&self.weights)
                .map(|(b, &id)| {
                    let mut v = json!({
                        "word": g.format_word(b.element),
                        "left_descent": b.left_descent + 1,
                        "right_descent": b.right_descent + 1,
                        "weight": self.space.format_coordinate(id),
                    });
                    if type_a {
                        v["perm"] = json!(g.to_perm(b.element).to_string());
                    }
                    v
                })
                .collect(),
        )
    }
}

/// Whether restriction to `coords` is injective on generic patterns.
pub fn separates(space: &PluckerSpace, coords: &[WeightId]) -> bool {
    let mut seen = std::collections::HashSet::new();
    space.group().elements().all(|w| seen.insert(generic_pattern(space, w).restrict(coords)))
}

/// The expected base size in type `A_{n-1}`.
pub fn type_a_base_size(n: usize) -> usize {
    binomial(n + 1, 3) as usize
}
