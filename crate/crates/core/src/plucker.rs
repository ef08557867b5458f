//! Plücker weights: the orbits W·ω_i, their Bruhat orders, and the
//! economical-ordering machinery built from the sets R(i).

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanDatum, CartanType, Weight};
use crate::error::{Error, Result};
use crate::group::{parse_word, WeylElement, WeylGroup};
use crate::perm::{Perm, Subset, TypeAGroup};
use crate::roots::{positive_roots, positive_roots_in, Root};

/// A linear ordering of the fundamental weights: `order[k]` is the
/// (0-based) diagram node placed at position k.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightOrdering {
    order: Vec<usize>,
}

impl WeightOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let r = order.len();
        let mut seen = vec![false; r];
        for &i in &order {
            if i >= r || seen[i] {
                return Err(Error::Parse(format!("ordering {order:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(WeightOrdering { order })
    }

    /// From 1-based node labels, e.g. `[3, 2, 1]`.
    pub fn from_one_based(order: &[usize]) -> Result<Self> {
        if order.contains(&0) {
            return Err(Error::Parse("ordering labels are 1-based".into()));
        }
        WeightOrdering::new(order.iter().map(|&i| i - 1).collect())
    }

    pub fn identity(rank: usize) -> Self {
        WeightOrdering { order: (0..rank).collect() }
    }

    /// Bourbaki order for A, B, C and G2. For D_r the nodes are ordered
    /// `1, ..., r-3, r-1, r-2, r`, so that the trivalent node r-2 comes
    /// second to last.
    pub fn standard(datum: &CartanDatum) -> Self {
        let r = datum.rank();
        match datum.kind() {
            CartanType::D => {
                let mut order: Vec<usize> = (0..r - 3).collect();
                order.extend([r - 2, r - 3, r - 1]);
                WeightOrdering { order }
            }
            _ => WeightOrdering::identity(r),
        }
    }

    pub fn rank(&self) -> usize {
        self.order.len()
    }

    pub fn nodes(&self) -> &[usize] {
        &self.order
    }

    /// Node at position k.
    pub fn node(&self, k: usize) -> usize {
        self.order[k]
    }

    pub fn position(&self, node: usize) -> usize {
        self.order.iter().position(|&i| i == node).expect("node in ordering")
    }

    /// Nodes at positions k..r, generating the parabolic W_[k,r].
    pub fn tail(&self, k: usize) -> &[usize] {
        &self.order[k..]
    }

    /// The smallest position whose node occurs in the expansion of `root`.
    pub fn mu(&self, root: &Root) -> usize {
        (0..self.rank()).find(|&k| root.contains_simple(self.order[k])).expect("roots are nonzero")
    }
}

impl fmt::Display for WeightOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.order.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", labels.join(","))
    }
}

/// Size of the orbit W_J·ω_node, by breadth-first search on weights.
pub fn orbit_size(datum: &CartanDatum, node: usize, parabolic: &[usize]) -> usize {
    let start = Weight::fundamental(datum.rank(), node);
    let mut seen: HashSet<Weight> = HashSet::new();
    seen.insert(start.clone());
    let mut stack = vec![start];
    while let Some(w) = stack.pop() {
        for &j in parabolic {
            if w.0[j] != 0 {
                let x = w.reflected(j, datum.cartan_matrix());
                if seen.insert(x.clone()) {
                    stack.push(x);
                }
            }
        }
    }
    seen.len()
}

/// R(i) inside the parabolic subsystem on `parabolic`: positive roots
/// supported in J whose expansion contains α_node.
pub fn roots_containing(datum: &CartanDatum, node: usize, parabolic: &[usize]) -> Vec<Root> {
    positive_roots_in(datum, parabolic).into_iter().filter(|r| r.contains_simple(node)).collect()
}

/// R(i) for the whole group.
pub fn roots_r(datum: &CartanDatum, node: usize) -> Vec<Root> {
    positive_roots(datum).into_iter().filter(|r| r.contains_simple(node)).collect()
}

/// Whether `node` is economical for W_J: `1 + |R_J(node)| = |W_J ω_node|`.
pub fn is_economical_for(datum: &CartanDatum, parabolic: &[usize], node: usize) -> bool {
    1 + roots_containing(datum, node, parabolic).len() == orbit_size(datum, node, parabolic)
}

pub fn is_economical_index(datum: &CartanDatum, node: usize) -> bool {
    let all: Vec<usize> = (0..datum.rank()).collect();
    is_economical_for(datum, &all, node)
}

/// Economical indices of the whole group, 0-based.
pub fn economical_indices(datum: &CartanDatum) -> Vec<usize> {
    (0..datum.rank()).filter(|&i| is_economical_index(datum, i)).collect()
}

/// Every position's node is economical for the parabolic of the tail
/// starting at that position.
pub fn is_economical_ordering(datum: &CartanDatum, ordering: &WeightOrdering) -> bool {
    (0..datum.rank()).all(|k| is_economical_for(datum, ordering.tail(k), ordering.node(k)))
}

/// A Plücker weight u·ω_i together with the minimal representative of the
/// coset u W_î.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PluckerWeight {
    /// Diagram node i, 0-based.
    pub level: usize,
    pub weight: Weight,
    pub min_rep: WeylElement,
}

/// Global index of a Plücker weight within a [`PluckerSpace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightId(pub u32);

impl WeightId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

struct Level {
    weights: Vec<PluckerWeight>,
    by_labels: HashMap<Weight, u32>,
    /// Row-major `m × m` Bruhat order on the orbit.
    leq: Vec<bool>,
}

/// All Plücker weights of a Weyl group, each orbit sorted by the length and
/// then the shortlex word of its minimal coset representative (a linear
/// extension of the Bruhat order).
pub struct PluckerSpace {
    group: Arc<WeylGroup>,
    levels: Vec<Level>,
    offsets: Vec<usize>,
    /// `coset[w * r + i]` is the global id of w·ω_i.
    coset: Vec<u32>,
}

impl fmt::Debug for PluckerSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PluckerSpace").field("group", &self.group).field("weights", &self.len()).finish()
    }
}

impl PluckerSpace {
    pub fn new(group: Arc<WeylGroup>) -> Self {
        let r = group.rank();
        let mut levels = Vec::with_capacity(r);
        let mut offsets = Vec::with_capacity(r + 1);
        let mut offset = 0;
        let mut position_of_rep: Vec<Vec<u32>> = Vec::with_capacity(r);
        for i in 0..r {
            let hat: Vec<usize> = (0..r).filter(|&j| j != i).collect();
            let reps: Vec<WeylElement> = group.elements().filter(|&w| group.is_min_coset_rep(w, &hat)).collect();
            let omega = Weight::fundamental(r, i);
            let weights: Vec<PluckerWeight> =
                reps.iter().map(|&u| PluckerWeight { level: i, weight: group.act(u, &omega), min_rep: u }).collect();
            let by_labels = weights.iter().enumerate().map(|(k, p)| (p.weight.clone(), k as u32)).collect();
            let m = weights.len();
            let mut leq = vec![false; m * m];
            for a in 0..m {
                for b in 0..m {
                    leq[a * m + b] = group.bruhat_leq(reps[a], reps[b]);
                }
            }
            let mut pos = vec![u32::MAX; group.order()];
            for (k, u) in reps.iter().enumerate() {
                pos[u.index()] = k as u32;
            }
            position_of_rep.push(pos);
            offsets.push(offset);
            offset += m;
            levels.push(Level { weights, by_labels, leq });
        }
        offsets.push(offset);
        let mut coset = vec![0u32; group.order() * r];
        for w in group.elements() {
            for i in 0..r {
                let hat: Vec<usize> = (0..r).filter(|&j| j != i).collect();
                let rep = group.min_coset_rep(w, &hat);
                coset[w.index() * r + i] = (offsets[i] as u32) + position_of_rep[i][rep.index()];
            }
        }
        PluckerSpace { group, levels, offsets, coset }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(PluckerSpace::new(Arc::new(WeylGroup::from_name(name)?)))
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<WeylGroup> {
        Arc::clone(&self.group)
    }

    pub fn datum(&self) -> &CartanDatum {
        self.group.datum()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    /// Total number of Plücker weights over all levels.
    pub fn len(&self) -> usize {
        self.offsets[self.rank()]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ids(&self) -> impl Iterator<Item = WeightId> {
        (0..self.len() as u32).map(WeightId)
    }

    pub fn level_ids(&self, level: usize) -> impl Iterator<Item = WeightId> {
        (self.offsets[level] as u32..self.offsets[level + 1] as u32).map(WeightId)
    }

    /// The orbit W·ω_level in canonical order.
    pub fn orbit(&self, level: usize) -> &[PluckerWeight] {
        &self.levels[level].weights
    }

    pub fn level_of(&self, id: WeightId) -> usize {
        self.offsets.partition_point(|&o| o <= id.index()) - 1
    }

    fn locate(&self, id: WeightId) -> (usize, usize) {
        let level = self.level_of(id);
        (level, id.index() - self.offsets[level])
    }

    pub fn weight(&self, id: WeightId) -> &PluckerWeight {
        let (level, pos) = self.locate(id);
        &self.levels[level].weights[pos]
    }

    pub fn id_of(&self, level: usize, weight: &Weight) -> Option<WeightId> {
        self.levels[level].by_labels.get(weight).map(|&k| WeightId((self.offsets[level] + k as usize) as u32))
    }

    /// The id of w·ω_level.
    pub fn weight_of(&self, w: WeylElement, level: usize) -> WeightId {
        WeightId(self.coset[w.index() * self.rank() + level])
    }

    /// The highest weight ω_level itself.
    pub fn fundamental(&self, level: usize) -> WeightId {
        WeightId(self.offsets[level] as u32)
    }

    /// Bruhat order on an orbit; false across levels.
    pub fn leq(&self, a: WeightId, b: WeightId) -> bool {
        let (la, pa) = self.locate(a);
        let (lb, pb) = self.locate(b);
        if la != lb {
            return false;
        }
        let m = self.levels[la].weights.len();
        self.levels[la].leq[pa * m + pb]
    }

    pub fn orbit_bruhat_leq(&self, a: WeightId, b: WeightId) -> Result<bool> {
        let (la, lb) = (self.level_of(a), self.level_of(b));
        if la != lb {
            return Err(Error::LevelMismatch(la + 1, lb + 1));
        }
        Ok(self.leq(a, b))
    }

    /// Whether the Bruhat order on W·ω_level is a chain.
    pub fn is_linear(&self, level: usize) -> bool {
        let ids: Vec<WeightId> = self.level_ids(level).collect();
        ids.iter().all(|&a| ids.iter().all(|&b| self.leq(a, b) || self.leq(b, a)))
    }

    /// Whether the given weights are pairwise comparable.
    pub fn is_chain(&self, ids: &[WeightId]) -> bool {
        ids.iter().all(|&a| ids.iter().all(|&b| self.leq(a, b) || self.leq(b, a)))
    }

    /// Whether γ - δ is a nonnegative integer combination of simple roots.
    pub fn is_root_sum_above(&self, a: WeightId, b: WeightId) -> bool {
        let d = self.datum();
        let diff: Vec<Rational64> = self.ambient(a).iter().zip(self.ambient(b)).map(|(x, y)| x - y).collect();
        // the coefficient of α_j is 2(λ, ω_j)/(α_j, α_j)
        (0..self.rank()).all(|j| {
            let omega = &d.fundamental_weights()[j];
            let pairing: Rational64 = diff.iter().zip(omega).map(|(x, y)| x * y).sum();
            let c = pairing * Rational64::from_integer(2) / Rational64::from_integer(d.simple_root_norm(j));
            c.is_integer() && c >= Rational64::from_integer(0)
        })
    }

    /// Pairs γ, δ in one orbit with γ - δ a nonnegative sum of simple roots
    /// but γ ≰ δ.
    pub fn root_positivity_gaps(&self, level: usize) -> Vec<(WeightId, WeightId)> {
        let ids: Vec<WeightId> = self.level_ids(level).collect();
        let mut out = Vec::new();
        for &a in &ids {
            for &b in &ids {
                if a != b && !self.leq(a, b) && self.is_root_sum_above(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Ambient ε-coordinates of a weight.
    pub fn ambient(&self, id: WeightId) -> Vec<Rational64> {
        self.datum().ambient_of(&self.weight(id).weight)
    }

    /// The map α ↦ s_α ω_level over R(level).
    pub fn reflection_weight_map(&self, level: usize) -> Vec<(Root, WeightId)> {
        let omega = Weight::fundamental(self.rank(), level);
        roots_r(self.datum(), level)
            .into_iter()
            .map(|root| {
                let image = root.reflect_weight(self.datum(), &omega);
                let id = self.id_of(level, &image).expect("s_α ω_i lies in the orbit");
                (root, id)
            })
            .collect()
    }

    /// The weights w·W_J·ω_level, each with an element of w·W_J realizing it,
    /// sorted in canonical order.
    pub fn coset_orbit(
        &self,
        w: WeylElement,
        parabolic_elems: &[WeylElement],
        level: usize,
    ) -> Vec<(WeightId, WeylElement)> {
        let mut found: HashMap<WeightId, WeylElement> = HashMap::new();
        for &x in parabolic_elems {
            let wx = self.group.multiply(w, x);
            found.entry(self.weight_of(wx, level)).or_insert(wx);
        }
        let mut out: Vec<(WeightId, WeylElement)> = found.into_iter().collect();
        out.sort();
        out
    }

    /// Subset of `[1, n]` for a type A weight.
    pub fn subset(&self, id: WeightId) -> Option<Subset> {
        if self.datum().kind() != CartanType::A {
            return None;
        }
        let p = self.weight(id);
        Subset::from_labels(&p.weight, p.level + 1)
    }

    pub fn id_of_subset(&self, s: Subset) -> Result<WeightId> {
        let n = self.rank() + 1;
        if self.datum().kind() != CartanType::A {
            return Err(Error::WrongType { expected: "A".into(), found: self.datum().name() });
        }
        if s.is_empty() || s.len() >= n || s.max().unwrap() >= n {
            return Err(Error::Dimension(format!("{s} is not a proper nonempty subset of [1,{n}]")));
        }
        Ok(self.id_of(s.len() - 1, &s.labels(n)).expect("every subset is a Plücker weight"))
    }

    /// `13` in type A, `level:word` (e.g. `2:s1.s2`) otherwise.
    pub fn format(&self, id: WeightId) -> String {
        match self.subset(id) {
            Some(s) => s.to_string(),
            None => {
                let p = self.weight(id);
                format!("{}:{}", p.level + 1, self.group.format_word(p.min_rep))
            }
        }
    }

    /// `p13` in type A, `p[2:s1.s2]` otherwise.
    pub fn format_coordinate(&self, id: WeightId) -> String {
        match self.subset(id) {
            Some(s) => format!("p{s}"),
            None => format!("p[{}]", self.format(id)),
        }
    }

    /// Inverse of [`PluckerSpace::format`]; also accepts the `p` prefixed
    /// coordinate forms.
    pub fn parse(&self, s: &str) -> Result<WeightId> {
        let t = s.trim().trim_start_matches('p').trim_start_matches('[').trim_end_matches(']');
        if let Some((level, word)) = t.split_once(':') {
            let level: usize = level.trim().parse().map_err(|_| Error::Parse(format!("invalid weight {s:?}")))?;
            if level == 0 || level > self.rank() {
                return Err(Error::Parse(format!("level {level} out of range")));
            }
            let u = self.group.from_word(&parse_word(word, self.rank())?);
            return Ok(self.weight_of(u, level - 1));
        }
        if self.datum().kind() == CartanType::A {
            let sub = Subset::parse(t, self.rank() + 1)?;
            return self.id_of_subset(sub);
        }
        Err(Error::Parse(format!("invalid weight {s:?}")))
    }

    /// Parses a group element: one-line notation in type A when the input
    /// is n digits forming a permutation, otherwise a word.
    pub fn parse_element(&self, s: &str) -> Result<WeylElement> {
        let t = s.trim();
        if self.datum().kind() == CartanType::A && t.len() == self.rank() + 1 && t.chars().all(|c| c.is_ascii_digit()) {
            if let Ok(p) = Perm::parse(t) {
                return self.group.from_perm(&p);
            }
        }
        self.group.parse_word(t)
    }
}
