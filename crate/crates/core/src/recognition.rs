//! Recognizing the Schubert cell of a point from as few Plücker vanishing
//! queries as possible.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::flags::Flag;
use crate::group::WeylElement;
use crate::patterns::{check_acceptable, element_name, VanishingPattern};
use crate::perm::{binomial, Perm, Subset, TypeAGroup};
use crate::plucker::{PluckerSpace, WeightId, WeightOrdering};

/// Answers "is p_γ(x) nonzero?".
pub trait Oracle {
    fn query(&mut self, id: WeightId) -> Result<bool>;
}

/// Reads bits from a stored vanishing pattern.
pub struct PatternOracle<'a> {
    pattern: &'a VanishingPattern,
}

impl<'a> PatternOracle<'a> {
    pub fn new(pattern: &'a VanishingPattern) -> Self {
        PatternOracle { pattern }
    }
}

impl Oracle for PatternOracle<'_> {
    fn query(&mut self, id: WeightId) -> Result<bool> {
        Ok(self.pattern.get(id))
    }
}

/// Evaluates the minor of a type A flag on demand.
pub struct FlagOracle<'a> {
    space: &'a PluckerSpace,
    flag: &'a Flag,
}

impl<'a> FlagOracle<'a> {
    pub fn new(space: &'a PluckerSpace, flag: &'a Flag) -> Result<Self> {
        let n = space.group().check_type_a()?;
        if flag.n() != n {
            return Err(Error::Dimension(format!("{0}x{0} flag in {1}", flag.n(), space.datum())));
        }
        Ok(FlagOracle { space, flag })
    }
}

impl Oracle for FlagOracle<'_> {
    fn query(&mut self, id: WeightId) -> Result<bool> {
        let subset = self.space.subset(id).expect("type A");
        Ok(!self.flag.plucker_coordinate(subset)?.is_zero())
    }
}

/// The sequence of first-time queries and their answers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryLog {
    pub entries: Vec<(WeightId, bool)>,
}

impl QueryLog {
    pub fn count(&self) -> usize {
        self.entries.len()
    }

    pub fn weights(&self) -> Vec<WeightId> {
        self.entries.iter().map(|&(id, _)| id).collect()
    }

    /// `p3=0, p2=1, p23=1`
    pub fn render(&self, space: &PluckerSpace) -> String {
        let parts: Vec<String> =
            self.entries.iter().map(|&(id, b)| format!("{}={}", space.format_coordinate(id), b as u8)).collect();
        parts.join(", ")
    }

    pub fn to_json(&self, space: &PluckerSpace) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|&(id, b)| json!({"weight": space.format_coordinate(id), "bit": b as u8}))
                .collect(),
        )
    }
}

/// Memoizes an oracle and logs each distinct query once.
pub struct CountingOracle<O> {
    inner: O,
    cache: HashMap<WeightId, bool>,
    log: QueryLog,
}

impl<O: Oracle> CountingOracle<O> {
    pub fn new(inner: O) -> Self {
        CountingOracle { inner, cache: HashMap::new(), log: QueryLog::default() }
    }

    pub fn log(&self) -> &QueryLog {
        &self.log
    }

    pub fn into_log(self) -> QueryLog {
        self.log
    }
}

impl<O: Oracle> Oracle for CountingOracle<O> {
    fn query(&mut self, id: WeightId) -> Result<bool> {
        if let Some(&b) = self.cache.get(&id) {
            return Ok(b);
        }
        let b = self.inner.query(id)?;
        self.cache.insert(id, b);
        self.log.entries.push((id, b));
        Ok(b)
    }
}

impl<O: Oracle + ?Sized> Oracle for &mut O {
    fn query(&mut self, id: WeightId) -> Result<bool> {
        (**self).query(id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub w: WeylElement,
    pub log: QueryLog,
    /// Whether the weights scanned at each position were totally ordered.
    pub linear_scans: Vec<bool>,
}

/// The level-by-level recognition procedure for a fixed ordering of the
/// fundamental weights.
///
/// At position k the current set of candidates is `u·W_[k,r]`; the weights
/// `u·W_[k,r]·ω` are scanned from the top of the canonical order down to
/// the first nonzero one. In the default mode the last remaining weight is
/// taken without a query; [`Recognizer::strict`] queries it as well and
/// reports an all-zero scan as an error.
pub struct Recognizer<'a> {
    space: &'a PluckerSpace,
    ordering: WeightOrdering,
    tails: Vec<Vec<WeylElement>>,
    strict: bool,
}

impl<'a> Recognizer<'a> {
    pub fn new(space: &'a PluckerSpace, ordering: WeightOrdering) -> Result<Self> {
        if ordering.rank() != space.rank() {
            return Err(Error::Dimension(format!("ordering {ordering} for {}", space.datum())));
        }
        let tails = (0..space.rank()).map(|k| space.group().parabolic_elements(ordering.tail(k))).collect();
        Ok(Recognizer { space, ordering, tails, strict: false })
    }

    pub fn standard(space: &'a PluckerSpace) -> Self {
        Recognizer::new(space, WeightOrdering::standard(space.datum())).expect("standard ordering has full rank")
    }

    pub fn strict(mut self) -> Self {
        self.strict = true;
        self
    }

    pub fn ordering(&self) -> &WeightOrdering {
        &self.ordering
    }

    /// Candidate weights at position k below `u`, in canonical order, with
    /// an element of `u·W_[k,r]` realizing each.
    fn candidates(&self, u: WeylElement, k: usize) -> Vec<(WeightId, WeylElement)> {
        self.space.coset_orbit(u, &self.tails[k], self.ordering.node(k))
    }

    pub fn recognize<O: Oracle>(&self, oracle: O) -> Result<Recognition> {
        let mut oracle = CountingOracle::new(oracle);
        let mut u = self.space.group().identity();
        let mut linear_scans = Vec::with_capacity(self.space.rank());
        for k in 0..self.space.rank() {
            let candidates = self.candidates(u, k);
            let ids: Vec<WeightId> = candidates.iter().map(|&(id, _)| id).collect();
            linear_scans.push(self.space.is_chain(&ids));
            let mut chosen = None;
            for (pos, &(id, x)) in candidates.iter().enumerate().rev() {
                if (pos == 0 && !self.strict) || oracle.query(id)? {
                    chosen = Some(x);
                    break;
                }
            }
            u = chosen.ok_or(Error::UnacceptableInput { level: self.ordering.node(k) + 1 })?;
        }
        Ok(Recognition { w: u, log: oracle.into_log(), linear_scans })
    }

    /// The decision tree obtained by following every answer sequence.
    pub fn decision_tree(&self) -> DecisionTree {
        DecisionTree { root: self.unroll(self.space.group().identity(), 0) }
    }

    fn unroll(&self, u: WeylElement, k: usize) -> TreeNode {
        if k == self.space.rank() {
            return TreeNode::Leaf(u);
        }
        let candidates = self.candidates(u, k);
        let (first, rest) = candidates.split_first().expect("cosets are nonempty");
        let mut node = if self.strict {
            TreeNode::Query {
                weight: first.0,
                zero: Box::new(TreeNode::Fail),
                one: Box::new(self.unroll(first.1, k + 1)),
            }
        } else {
            self.unroll(first.1, k + 1)
        };
        for &(id, x) in rest {
            node = TreeNode::Query { weight: id, zero: Box::new(node), one: Box::new(self.unroll(x, k + 1)) };
        }
        node
    }
}

/// Runs the level-by-level procedure with the given ordering.
pub fn recognize_general<O: Oracle>(space: &PluckerSpace, oracle: O, ordering: &WeightOrdering) -> Result<Recognition> {
    Recognizer::new(space, ordering.clone())?.recognize(oracle)
}

/// The permutation form for `A_{n-1}`: at step i, w(i) is the largest k
/// outside I = w([1, i-1]) with p_{I ∪ {k}} ≠ 0, the smallest remaining
/// value being taken without a query.
pub fn recognize_type_a<O: Oracle>(space: &PluckerSpace, oracle: O) -> Result<(Perm, QueryLog)> {
    let n = space.group().check_type_a()?;
    let mut oracle = CountingOracle::new(oracle);
    let mut taken = Subset::EMPTY;
    let mut images = Vec::with_capacity(n);
    for _ in 0..n {
        let smallest = (0..n).find(|&k| !taken.contains(k)).expect("values remain");
        let mut k = n - 1;
        while k > smallest && (taken.contains(k) || !oracle.query(space.id_of_subset(taken.with(k))?)?) {
            k -= 1;
        }
        images.push(k as u8);
        taken = taken.with(k);
    }
    Ok((Perm::from_images(images)?, oracle.into_log()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeNode {
    Leaf(WeylElement),
    /// Reached only by inputs that are not acceptable.
    Fail,
    Query {
        weight: WeightId,
        zero: Box<TreeNode>,
        one: Box<TreeNode>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTree {
    pub root: TreeNode,
}

/// A root-to-leaf path: the answered queries and the leaf element.
pub type TreePath = (Vec<(WeightId, bool)>, WeylElement);

impl DecisionTree {
    pub fn depth(&self) -> usize {
        fn go(n: &TreeNode) -> usize {
            match n {
                TreeNode::Leaf(_) | TreeNode::Fail => 0,
                TreeNode::Query { zero, one, .. } => 1 + go(zero).max(go(one)),
            }
        }
        go(&self.root)
    }

    pub fn root_query(&self) -> Option<WeightId> {
        match &self.root {
            TreeNode::Query { weight, .. } => Some(*weight),
            _ => None,
        }
    }

    /// Follows the tree on a full pattern.
    pub fn route(&self, b: &VanishingPattern) -> Option<WeylElement> {
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf(w) => return Some(*w),
                TreeNode::Fail => return None,
                TreeNode::Query { weight, zero, one } => node = if b.get(*weight) { one } else { zero },
            }
        }
    }

    pub fn paths(&self) -> Vec<TreePath> {
        fn go(n: &TreeNode, prefix: &mut Vec<(WeightId, bool)>, out: &mut Vec<TreePath>) {
            match n {
                TreeNode::Leaf(w) => out.push((prefix.clone(), *w)),
                TreeNode::Fail => {}
                TreeNode::Query { weight, zero, one } => {
                    prefix.push((*weight, false));
                    go(zero, prefix, out);
                    prefix.pop();
                    prefix.push((*weight, true));
                    go(one, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(&self.root, &mut Vec::new(), &mut out);
        out
    }

    pub fn to_dot(&self, space: &PluckerSpace) -> String {
        fn go(n: &TreeNode, space: &PluckerSpace, next: &mut usize, out: &mut String) -> usize {
            let me = *next;
            *next += 1;
            match n {
                TreeNode::Leaf(w) => {
                    let _ = writeln!(out, "  n{me} [shape=box, label=\"{}\"];", element_name(space, *w));
                }
                TreeNode::Fail => {
                    let _ = writeln!(out, "  n{me} [shape=box, label=\"unacceptable\"];");
                }
                TreeNode::Query { weight, zero, one } => {
                    let name = space.format_coordinate(*weight);
                    let _ = writeln!(out, "  n{me} [label=\"{name}\"];");
                    let z = go(zero, space, next, out);
                    let _ = writeln!(out, "  n{me} -> n{z} [label=\"{name}=0\"];");
                    let o = go(one, space, next, out);
                    let _ = writeln!(out, "  n{me} -> n{o} [label=\"{name}!=0\"];");
                }
            }
            me
        }
        let mut out = String::from("digraph recognition {\n");
        go(&self.root, space, &mut 0, &mut out);
        out.push_str("}\n");
        out
    }
}

/// Every acceptable vector: for each w, all choices of bits strictly below
/// the weights w·ω_i. Fails if there are more than `cap`.
pub fn acceptable_vectors(space: &PluckerSpace, cap: usize) -> Result<Vec<(VanishingPattern, WeylElement)>> {
    let mut out = Vec::new();
    for w in space.group().elements() {
        let free: Vec<WeightId> = (0..space.rank())
            .flat_map(|level| {
                let top = space.weight_of(w, level);
                space.level_ids(level).filter(move |&id| id != top && space.leq(id, top)).collect::<Vec<_>>()
            })
            .collect();
        if free.len() >= 32 || out.len() + (1usize << free.len()) > cap {
            return Err(Error::SizeCap(format!("more than {cap} acceptable vectors in {}", space.datum())));
        }
        let base = crate::patterns::coordinate_pattern(space, w);
        for mask in 0u32..1 << free.len() {
            let mut b = base.clone();
            for (k, &id) in free.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    b.set(id, true);
                }
            }
            out.push((b, w));
        }
    }
    Ok(out)
}

/// Largest number of acceptable vectors for which an optimal tree is
/// searched.
pub const OPTIMAL_TREE_CAP: usize = 4096;

/// A decision tree of minimum worst-case depth over all acceptable vectors,
/// found by iterative deepening with the bound ⌈log2 #cells⌉.
pub fn optimal_decision_tree(space: &PluckerSpace) -> Result<DecisionTree> {
    let vectors = acceptable_vectors(space, OPTIMAL_TREE_CAP)?;
    let search = Search { vectors: &vectors, weights: space.ids().collect() };
    let all: Vec<u32> = (0..vectors.len() as u32).collect();
    let mut depth = ceil_log2(search.cells(&all));
    loop {
        let mut memo = HashMap::new();
        if let Some(root) = search.solve(&all, depth, &mut memo) {
            return Ok(DecisionTree { root });
        }
        depth += 1;
    }
}

fn ceil_log2(n: usize) -> usize {
    (usize::BITS - n.saturating_sub(1).leading_zeros()) as usize
}

struct Search<'a> {
    vectors: &'a [(VanishingPattern, WeylElement)],
    weights: Vec<WeightId>,
}

impl Search<'_> {
    fn cells(&self, set: &[u32]) -> usize {
        set.iter().map(|&k| self.vectors[k as usize].1).collect::<BTreeSet<_>>().len()
    }

    /// A tree of depth at most `depth` separating the witnesses of `set`.
    fn solve(
        &self,
        set: &[u32],
        depth: usize,
        memo: &mut HashMap<(Vec<u32>, usize), Option<TreeNode>>,
    ) -> Option<TreeNode> {
        let cells = self.cells(set);
        if cells <= 1 {
            return Some(match set.first() {
                Some(&k) => TreeNode::Leaf(self.vectors[k as usize].1),
                None => TreeNode::Fail,
            });
        }
        if ceil_log2(cells) > depth {
            return None;
        }
        let key = (set.to_vec(), depth);
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let mut result = None;
        for &id in &self.weights {
            let (ones, zeros): (Vec<u32>, Vec<u32>) = set.iter().partition(|&&k| self.vectors[k as usize].0.get(id));
            if ones.is_empty() || zeros.is_empty() {
                continue;
            }
            let Some(zero) = self.solve(&zeros, depth - 1, memo) else { continue };
            let Some(one) = self.solve(&ones, depth - 1, memo) else { continue };
            result = Some(TreeNode::Query { weight: id, zero: Box::new(zero), one: Box::new(one) });
            break;
        }
        memo.insert(key, result.clone());
        result
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeStrategy {
    Algorithmic,
    Optimal,
}

pub fn build_decision_tree(space: &PluckerSpace, strategy: TreeStrategy) -> Result<DecisionTree> {
    match strategy {
        TreeStrategy::Algorithmic => Ok(Recognizer::standard(space).decision_tree()),
        TreeStrategy::Optimal => optimal_decision_tree(space),
    }
}

/// The largest number of queries over all acceptable inputs.
pub fn worst_case_queries(space: &PluckerSpace, strategy: TreeStrategy) -> Result<usize> {
    Ok(build_decision_tree(space, strategy)?.depth())
}

/// `n choose 2`, the query bound in type `A_{n-1}`.
pub fn type_a_query_bound(n: usize) -> usize {
    binomial(n, 2) as usize
}

/// Checks that a pattern is acceptable and recognizes it strictly.
pub fn recognize_checked(space: &PluckerSpace, b: &VanishingPattern) -> Result<Recognition> {
    let report = check_acceptable(space, b);
    if !report.accepted {
        let level = report.per_level_max.iter().position(Option::is_none).unwrap_or(0) + 1;
        return Err(Error::UnacceptableInput { level });
    }
    Recognizer::standard(space).strict().recognize(PatternOracle::new(b))
}
