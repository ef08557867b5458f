//! Lower bounds in type A: the number of equations p_I = 0 needed to cut out
//! a Schubert variety, and the number of coordinates needed to recognize a
//! cell without feedback.

use std::collections::{BTreeMap, HashSet};

use serde_json::{json, Value};

use crate::cells::variety_equations;
use crate::error::{Error, Result};
use crate::group::WeylElement;
use crate::patterns::realizable_restricted_patterns;
use crate::perm::{binomial, Perm, Subset};
use crate::plucker::PluckerSpace;

/// Largest k accepted by [`construct_witness_family`].
pub const WITNESS_MAX_K: usize = 3;
/// Largest n accepted by [`defining_set_lower_bound`].
pub const DEFINING_MAX_N: usize = 7;
/// Largest n accepted by [`feedback_free_min_set`].
pub const FEEDBACK_FREE_MAX_N: usize = 4;
const HITTING_SET_NODE_CAP: usize = 5_000_000;

/// The longest element of `S_2k × S_2k` in `S_4k`.
pub fn block_longest(k: usize) -> Perm {
    let values: Vec<usize> = (1..=4 * k).map(|i| if i <= 2 * k { 2 * k + 1 - i } else { 6 * k + 1 - i }).collect();
    Perm::from_one_line(&values).expect("permutation")
}

/// The permutation `u_{A,B}`: increasing on the four blocks of size k, with
/// `u([1,k]) = A ⊂ [1,2k]` and `u([k+1,2k]) = B ⊂ [2k+1,4k]`.
pub fn witness_perm(k: usize, a: Subset, b: Subset) -> Perm {
    let low = Subset::initial(2 * k);
    let high = Subset::interval(2 * k, 4 * k);
    let mut values: Vec<usize> = Vec::with_capacity(4 * k);
    for block in [a, b, Subset(low.0 & !a.0), Subset(high.0 & !b.0)] {
        values.extend(block.iter().map(|j| j + 1));
    }
    Perm::from_one_line(&values).expect("permutation")
}

#[derive(Debug, Clone)]
pub struct WitnessFamily {
    pub k: usize,
    pub w: Perm,
    pub members: Vec<Perm>,
    /// How many members have `u([1,|I|]) = I`, over the subsets I with
    /// `I ≰ w([1,|I|])`.
    pub coverage: BTreeMap<Subset, usize>,
}

impl WitnessFamily {
    pub fn n(&self) -> usize {
        4 * self.k
    }

    /// `C(2k, k)`: every defining set of `X_w` has at least this many
    /// coordinates.
    pub fn lower_bound(&self) -> u64 {
        binomial(2 * self.k, self.k)
    }

    /// `ℓ(w_o) − ℓ(w) = (n/2)^2`.
    pub fn codimension(&self) -> usize {
        let n = self.n();
        n * (n - 1) / 2 - self.w.length()
    }

    pub fn max_coverage(&self) -> usize {
        self.coverage.values().copied().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "n": self.n(),
            "w": self.w.to_string(),
            "family_size": self.members.len(),
            "max_coverage": self.max_coverage(),
            "lower_bound": self.lower_bound(),
            "codimension": self.codimension(),
            "members": self.members.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Builds `U = {u_{A,B}}` and checks that no member lies below w, that
/// `|U| = C(2k,k)^2`, and that each subset I with `I ≰ w([1,|I|])` is a
/// prefix set of at most `C(2k,k)` members (with the exact counts
/// predicted for `k < |I| <= 2k` and the upper bounds for `2k < |I| < 3k`).
pub fn construct_witness_family(k: usize) -> Result<WitnessFamily> {
    if k == 0 || k > WITNESS_MAX_K {
        return Err(Error::SizeCap(format!("witness family needs 1 <= k <= {WITNESS_MAX_K}, got {k}")));
    }
    let n = 4 * k;
    let w = block_longest(k);
    let mut members = Vec::new();
    for a in Subset::all_of_size(2 * k, k) {
        for b in Subset::all_of_size(2 * k, k) {
            members.push(witness_perm(k, a, Subset(b.0 << (2 * k))));
        }
    }
    let fail = |what: String| Err(Error::Internal(format!("witness family, k = {k}: {what}")));
    let central = binomial(2 * k, k) as usize;
    if members.len() != central * central {
        return fail(format!("|U| = {}", members.len()));
    }
    if let Some(u) = members.iter().find(|u| u.bruhat_leq(&w)) {
        return fail(format!("{u} <= w"));
    }
    let mut coverage: BTreeMap<Subset, usize> = BTreeMap::new();
    for u in &members {
        for i in 1..n {
            let prefix = u.prefix(i);
            if !prefix.gale_leq(w.prefix(i)) {
                *coverage.entry(prefix).or_default() += 1;
            }
        }
    }
    for (&set, &count) in &coverage {
        let size = set.len();
        if size <= k || size >= 3 * k {
            return fail(format!("{set} escapes w at size {size}"));
        }
        if count > central {
            return fail(format!("{set} covers {count} members"));
        }
        if size <= 2 * k {
            let l = size - k;
            let top = set.max().unwrap() + 1;
            let expected = binomial(n - top, k - l) as usize;
            if count != expected {
                return fail(format!("{set} covers {count}, expected {expected}"));
            }
        } else if count > binomial(size - k, k) as usize {
            return fail(format!("{set} covers {count} members"));
        }
    }
    Ok(WitnessFamily { k, w, members, coverage })
}

/// The subsets `I = u([1,i])` with `I ≰ w([1,i])`, one of which must be
/// among the equations of any defining set of `X_w` since `p_I(π_u) ≠ 0`.
pub fn witness_constraint(u: &Perm, w: &Perm) -> Vec<Subset> {
    (1..u.n()).map(|i| u.prefix(i)).filter(|&s| !s.gale_leq(w.prefix(s.len()))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetBound {
    pub w: Perm,
    /// Minimum size of a set meeting every constraint.
    pub bound: usize,
    pub certificate: Vec<Subset>,
    pub constraints: usize,
}

impl HittingSetBound {
    pub fn to_json(&self) -> Value {
        json!({
            "w": self.w.to_string(),
            "lower_bound": self.bound,
            "certificate": self.certificate.iter().map(|s| format!("p{s}")).collect::<Vec<_>>(),
            "constraints": self.constraints,
        })
    }
}

/// Exact minimum hitting set over the constraints of all `u ≰ w`. This
/// bounds the size of any defining set of `X_w` from below.
pub fn defining_set_lower_bound(w: &Perm) -> Result<HittingSetBound> {
    let n = w.n();
    if n > DEFINING_MAX_N {
        return Err(Error::SizeCap(format!("defining-set search needs n <= {DEFINING_MAX_N}, got {n}")));
    }
    let mut sets: Vec<u128> = Perm::all(n)
        .iter()
        .filter(|u| !u.bruhat_leq(w))
        .map(|u| witness_constraint(u, w).iter().fold(0u128, |m, s| m | 1 << s.0))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    sets.sort_by_key(|m| (m.count_ones(), *m));
    let minimal: Vec<u128> = sets.iter().copied().filter(|&m| !sets.iter().any(|&o| o != m && o & m == o)).collect();
    let mut search = HittingSearch { sets: &minimal, best: u128::MAX, best_size: usize::MAX, nodes: 0 };
    search.run(0, 0)?;
    let chosen = if minimal.is_empty() { 0 } else { search.best };
    let certificate: Vec<Subset> = (0..128).filter(|&b| chosen >> b & 1 == 1).map(|b| Subset(b as u32)).collect();
    Ok(HittingSetBound { w: w.clone(), bound: certificate.len(), certificate, constraints: minimal.len() })
}

struct HittingSearch<'a> {
    sets: &'a [u128],
    best: u128,
    best_size: usize,
    nodes: usize,
}

impl HittingSearch<'_> {
    fn run(&mut self, chosen: u128, forbidden: u128) -> Result<()> {
        self.nodes += 1;
        if self.nodes > HITTING_SET_NODE_CAP {
            return Err(Error::SizeCap("hitting-set search exceeded its node budget".into()));
        }
        let open: Vec<u128> = self.sets.iter().map(|&m| m & !forbidden).filter(|_| true).collect();
        let unhit: Vec<(u128, u128)> =
            self.sets.iter().zip(open).filter(|(&m, _)| m & chosen == 0).map(|(&m, o)| (m, o)).collect();
        let size = chosen.count_ones() as usize;
        if unhit.is_empty() {
            if size < self.best_size {
                self.best = chosen;
                self.best_size = size;
            }
            return Ok(());
        }
        // pairwise disjoint unhit constraints each need their own element
        let mut used = 0u128;
        let mut packing = 0;
        for &(_, o) in &unhit {
            if o & used == 0 {
                used |= o;
                packing += 1;
            }
        }
        if size + packing >= self.best_size {
            return Ok(());
        }
        let &(_, branch) = unhit.iter().min_by_key(|(_, o)| o.count_ones()).unwrap();
        if branch == 0 {
            return Ok(());
        }
        let mut excluded = forbidden;
        for b in 0..128 {
            if branch >> b & 1 == 1 {
                self.run(chosen | 1 << b, excluded)?;
                excluded |= 1 << b;
            }
        }
        Ok(())
    }
}

/// The number of equations in the universal defining set of `X_w`.
pub fn variety_equation_count(space: &PluckerSpace, w: WeylElement) -> usize {
    variety_equations(space, w).equalities.len()
}

/// `⌈(n−1)/(n+1) · (2^n − 1)⌉`.
pub fn feedback_free_lower_bound(n: usize) -> usize {
    let num = (n - 1) * ((1 << n) - 1);
    num.div_ceil(n + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeedbackFreeSet {
    pub n: usize,
    pub size: usize,
    /// Every minimum set, each sorted by size then colex.
    pub minima: Vec<Vec<Subset>>,
    pub lower_bound: usize,
    /// The minima that also separate every realizable vanishing pattern by
    /// cell; only decided for `n <= 3`.
    pub full_minima: Option<Vec<Vec<Subset>>>,
}

impl FeedbackFreeSet {
    pub fn to_json(&self) -> Value {
        let fmt = |set: &Vec<Subset>| set.iter().map(|s| format!("p{s}")).collect::<Vec<_>>();
        json!({
            "n": self.n,
            "size": self.size,
            "lower_bound": self.lower_bound,
            "minimum_sets": self.minima.len(),
            "example": self.minima.first().map(fmt),
            "full_minimum_sets": self.full_minima.as_ref().map(|m| m.iter().map(fmt).collect::<Vec<_>>()),
        })
    }
}

/// All proper nonempty subsets of `[1,n]`, by size then colex.
pub fn proper_subsets(n: usize) -> Vec<Subset> {
    (1..n).flat_map(|k| Subset::all_of_size(n, k)).collect()
}

/// Whether the coordinates in `coords` tell apart the flags `π_w`.
pub fn separates_coordinate_flags(n: usize, coords: &[Subset]) -> bool {
    let mut seen = HashSet::new();
    Perm::all(n).iter().all(|w| {
        let bits: Vec<bool> = coords.iter().map(|&s| w.prefix(s.len()) == s).collect();
        seen.insert(bits)
    })
}

/// Smallest sets of Plücker coordinates whose vanishing at `π_w` determines
/// w. Sizes below the coding bound are skipped. Any set that determines the
/// cell of every point is among these when the two minimum sizes agree.
pub fn feedback_free_min_set(n: usize) -> Result<FeedbackFreeSet> {
    if !(2..=FEEDBACK_FREE_MAX_N).contains(&n) {
        return Err(Error::SizeCap(format!("feedback-free search needs 2 <= n <= {FEEDBACK_FREE_MAX_N}, got {n}")));
    }
    let all = proper_subsets(n);
    let perms = Perm::all(n);
    let prefix_masks: Vec<u32> = perms
        .iter()
        .map(|w| all.iter().enumerate().filter(|(_, &s)| w.prefix(s.len()) == s).fold(0, |m, (k, _)| m | 1 << k))
        .collect();
    let lower_bound = feedback_free_lower_bound(n);
    let mut minima = Vec::new();
    let mut size = 0;
    for k in lower_bound..=all.len() {
        for mask in 0u32..1 << all.len() {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut seen = HashSet::new();
            if prefix_masks.iter().all(|&p| seen.insert(p & mask)) {
                minima.push((0..all.len()).filter(|&b| mask >> b & 1 == 1).map(|b| all[b]).collect::<Vec<_>>());
            }
        }
        if !minima.is_empty() {
            size = k;
            break;
        }
    }
    minima.sort();
    let full_minima = if n <= 3 {
        let space = PluckerSpace::from_name(&format!("A{}", n - 1))?;
        let mut full = Vec::new();
        for set in &minima {
            let coords = set.iter().map(|&s| space.id_of_subset(s)).collect::<Result<Vec<_>>>()?;
            let realizable = realizable_restricted_patterns(&space, &coords, 0)?;
            if realizable.certified && realizable.patterns.values().all(|cells| cells.len() == 1) {
                full.push(set.clone());
            }
        }
        Some(full)
    } else {
        None
    };
    Ok(FeedbackFreeSet { n, size, minima, lower_bound, full_minima })
}

/// Two flags `π_u`, `π_v` with `v = u s_i` whose patterns differ only at
/// `I = u([1,i])` and `J = v([1,i])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangePair {
    pub i: usize,
    pub first: Subset,
    pub second: Subset,
    pub u: Perm,
    pub v: Perm,
}

/// One exchange pair for every proper nonempty subset I of `[1,n]`.
pub fn exchange_pairs(n: usize) -> Result<Vec<ExchangePair>> {
    proper_subsets(n)
        .into_iter()
        .map(|set| {
            let i = set.len();
            let rest = Subset(Subset::initial(n).0 & !set.0);
            let values: Vec<usize> = set.iter().chain(rest.iter()).map(|j| j + 1).collect();
            let u = Perm::from_one_line(&values)?;
            let v = u.mul_simple_right(i - 1);
            let second = v.prefix(i);
            let expected = set.without(u.apply(i - 1)).with(u.apply(i));
            if u.prefix(i) != set || second != expected || set.hamming(second) != 2 {
                return Err(Error::Internal(format!("exchange at {set} failed")));
            }
            if (1..n).any(|j| j != i && u.prefix(j) != v.prefix(j)) {
                return Err(Error::Internal(format!("{u} and {v} differ away from level {i}")));
            }
            Ok(ExchangePair { i, first: set, second, u, v })
        })
        .collect()
}

/// The complement of a separating set at one level: i-subsets of `[1,n]`,
/// no two of which differ by exchanging one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFamily {
    n: usize,
    i: usize,
    subsets: Vec<Subset>,
}

impl CodeFamily {
    pub fn new(n: usize, i: usize, subsets: Vec<Subset>) -> Result<Self> {
        if i == 0 || i > n || subsets.iter().any(|s| s.len() != i || !s.is_subset_of(Subset::initial(n))) {
            return Err(Error::Dimension(format!("members must be {i}-subsets of [1,{n}]")));
        }
        for (a, s) in subsets.iter().enumerate() {
            for t in &subsets[a + 1..] {
                match s.hamming(*t) {
                    0 => return Err(Error::Distance(format!("{s} is listed twice"))),
                    2 => return Err(Error::Distance(format!("{s} and {t} differ by one exchange"))),
                    _ => {}
                }
            }
        }
        Ok(CodeFamily { n, i, subsets })
    }

    pub fn subsets(&self) -> &[Subset] {
        &self.subsets
    }
}

/// Checks `i·|fam| <= C(n, i−1)` and that the `(i−1)`-subsets of the members
/// are pairwise distinct.
pub fn code_bound_check(fam: &CodeFamily) -> bool {
    let mut faces = HashSet::new();
    let distinct = fam.subsets.iter().all(|s| s.iter().all(|j| faces.insert(s.without(j))));
    distinct && (fam.i * fam.subsets.len()) as u64 <= binomial(fam.n, fam.i - 1)
}

/// Largest code of i-subsets of `[1,n]`, by exhaustive search.
pub fn max_code_size(n: usize, i: usize) -> usize {
    fn grow(cands: &[Subset], chosen: &mut Vec<Subset>, best: &mut usize) {
        *best = (*best).max(chosen.len());
        if chosen.len() + cands.len() <= *best {
            return;
        }
        for (k, &s) in cands.iter().enumerate() {
            let rest: Vec<Subset> = cands[k + 1..].iter().copied().filter(|t| t.hamming(s) != 2).collect();
            chosen.push(s);
            grow(&rest, chosen, best);
            chosen.pop();
        }
    }
    let mut best = 0;
    grow(&Subset::all_of_size(n, i), &mut Vec::new(), &mut best);
    best
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    pub k: usize,
    /// `w = v_0 < v_1 < ... < v_N = w_o`.
    pub chain: Vec<Perm>,
    /// `C(2k,k) / 4k^2`: some step of the chain needs at least this many
    /// equations.
    pub per_step_bound: f64,
}

impl ChainReport {
    pub fn steps(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "steps": self.steps(),
            "chain": self.chain.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "per_step_bound": self.per_step_bound,
            "some_step_needs_at_least": self.per_step_bound.ceil() as u64,
        })
    }
}

/// A saturated chain from the block longest element to `w_o`, checked to
/// have `4k^2` steps.
pub fn chain_corollary_check(k: usize) -> Result<ChainReport> {
    if k == 0 || k > WITNESS_MAX_K {
        return Err(Error::SizeCap(format!("chain check needs 1 <= k <= {WITNESS_MAX_K}, got {k}")));
    }
    let mut chain = vec![block_longest(k)];
    loop {
        let v = chain.last().unwrap();
        let Some(i) = (0..4 * k - 1).find(|&i| v.apply(i) < v.apply(i + 1)) else {
            break;
        };
        let next = v.mul_simple_right(i);
        if !v.bruhat_leq(&next) || next.length() != v.length() + 1 {
            return Err(Error::Internal(format!("{v} -> {next} is not a cover")));
        }
        chain.push(next);
    }
    if chain.len() - 1 != 4 * k * k {
        return Err(Error::Internal(format!("chain has {} steps", chain.len() - 1)));
    }
    let per_step_bound = binomial(2 * k, k) as f64 / (4 * k * k) as f64;
    Ok(ChainReport { k, chain, per_step_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::TypeAGroup;

    fn perm(s: &str) -> Perm {
        Perm::parse(s).unwrap()
    }

    /// Minimum hitting set by trying all subsets of the elements in order
    /// of size.
    fn brute_hitting_set(w: &Perm) -> usize {
        let constraints: Vec<Vec<Subset>> =
            Perm::all(w.n()).iter().filter(|u| !u.bruhat_leq(w)).map(|u| witness_constraint(u, w)).collect();
        let elems: Vec<Subset> = proper_subsets(w.n());
        (0..=elems.len())
            .find(|&k| {
                (0u32..1 << elems.len()).filter(|m| m.count_ones() as usize == k).any(|m| {
                    constraints
                        .iter()
                        .all(|c| c.iter().any(|s| m >> elems.iter().position(|e| e == s).unwrap() & 1 == 1))
                })
            })
            .unwrap()
    }

    #[test]
    fn witness_k1() {
        let fam = construct_witness_family(1).unwrap();
        assert_eq!(fam.w, perm("2143"));
        assert_eq!(fam.members.len(), 4);
        assert_eq!(fam.lower_bound(), 2);
        assert_eq!(fam.codimension(), 4);
        let mut members: Vec<String> = fam.members.iter().map(|u| u.to_string()).collect();
        members.sort();
        assert_eq!(members, vec!["1324", "1423", "2314", "2413"]);
        assert!(fam.max_coverage() <= 2);
    }

    #[test]
    fn witness_k2_and_k3() {
        let fam = construct_witness_family(2).unwrap();
        assert_eq!((fam.members.len(), fam.lower_bound(), fam.codimension()), (36, 6, 16));
        assert!(fam.members.iter().all(|u| {
            (0..4).all(|b| (2 * b..2 * b + 1).all(|j| u.apply(j) < u.apply(j + 1)))
                && Subset::from_one_based(&[u.apply(0) + 1, u.apply(1) + 1, u.apply(4) + 1, u.apply(5) + 1])
                    == Subset::initial(4)
        }));
        let fam = construct_witness_family(3).unwrap();
        assert_eq!((fam.members.len(), fam.lower_bound(), fam.codimension()), (400, 20, 36));
        assert!(construct_witness_family(4).is_err());
    }

    #[test]
    fn witness_family_against_group_bruhat() {
        let g = crate::group::WeylGroup::from_name("A3").unwrap();
        let fam = construct_witness_family(1).unwrap();
        let w = g.from_perm(&fam.w).unwrap();
        for u in &fam.members {
            assert!(!g.bruhat_leq(g.from_perm(u).unwrap(), w));
        }
    }

    #[test]
    fn defining_bounds() {
        // p13, p14, p23, p24 are forced by 1324, 1423, 2314, 2413, and 3412
        // needs one of p3, p34, p134, none of which covers the others
        let block = defining_set_lower_bound(&perm("2143")).unwrap();
        assert_eq!(block.bound, 5);
        assert!(block.bound as u64 >= construct_witness_family(1).unwrap().lower_bound());
        for n in 2..=5 {
            assert_eq!(defining_set_lower_bound(&Perm::longest(n)).unwrap().bound, 0);
        }
        let s1 = defining_set_lower_bound(&perm("213")).unwrap();
        assert_eq!(s1.bound, 2);
        let cert: Vec<String> = s1.certificate.iter().map(|s| s.to_string()).collect();
        assert_eq!(cert, vec!["13", "23"]);
        assert_eq!(defining_set_lower_bound(&perm("1234")).unwrap().bound, 6);
        assert!(defining_set_lower_bound(&Perm::identity(8)).is_err());
    }

    #[test]
    fn defining_bound_matches_brute_force() {
        for n in 2..=4 {
            for w in Perm::all(n) {
                let fast = defining_set_lower_bound(&w).unwrap();
                assert_eq!(fast.bound, brute_hitting_set(&w), "{w}");
                for u in Perm::all(n).iter().filter(|u| !u.bruhat_leq(&w)) {
                    assert!(witness_constraint(u, &w).iter().any(|s| fast.certificate.contains(s)));
                }
            }
        }
    }

    #[test]
    fn defining_bounds_below_equation_counts() {
        for n in 2..=4 {
            let space = PluckerSpace::from_name(&format!("A{}", n - 1)).unwrap();
            for w in Perm::all(n) {
                let upper = variety_equation_count(&space, space.group().from_perm(&w).unwrap());
                // I ≰ w([1,|I|]) over all proper subsets
                let direct = proper_subsets(n).iter().filter(|s| !s.gale_leq(w.prefix(s.len()))).count();
                assert_eq!(upper, direct, "{w}");
                assert!(defining_set_lower_bound(&w).unwrap().bound <= upper);
            }
        }
        let a2 = PluckerSpace::from_name("A2").unwrap();
        assert_eq!(variety_equation_count(&a2, a2.group().from_perm(&perm("213")).unwrap()), 3);
        assert_eq!(variety_equation_count(&a2, a2.group().longest()), 0);
        let a3 = PluckerSpace::from_name("A3").unwrap();
        assert_eq!(variety_equation_count(&a3, a3.group().from_perm(&perm("2143")).unwrap()), 9);
    }

    #[test]
    fn feedback_free_small() {
        let two = feedback_free_min_set(2).unwrap();
        assert_eq!((two.size, two.minima.len()), (1, 2));
        assert_eq!(two.full_minima, Some(vec![vec![Subset::from_one_based(&[2])]]));
        let three = feedback_free_min_set(3).unwrap();
        assert_eq!(three.size, 4);
        assert_eq!(three.minima.len(), 9);
        let full = three.full_minima.unwrap();
        assert_eq!(full.len(), 1);
        let names: Vec<String> = full[0].iter().map(|s| format!("p{s}")).collect();
        assert_eq!(names, vec!["p2", "p3", "p13", "p23"]);
        assert!(three.size >= three.lower_bound);
        assert!(feedback_free_min_set(5).is_err());
    }

    #[test]
    fn feedback_free_four() {
        let four = feedback_free_min_set(4).unwrap();
        assert!(four.size >= four.lower_bound);
        assert_eq!(four.lower_bound, 9);
        // nothing smaller separates, without the coding prune
        let all = proper_subsets(4);
        for mask in 0u32..1 << all.len() {
            let coords: Vec<Subset> = (0..all.len()).filter(|&b| mask >> b & 1 == 1).map(|b| all[b]).collect();
            if coords.len() < four.size {
                assert!(!separates_coordinate_flags(4, &coords));
            }
        }
        assert!(four.minima.iter().all(|m| separates_coordinate_flags(4, m)));
    }

    #[test]
    fn lower_bound_formula() {
        assert_eq!(feedback_free_lower_bound(2), 1);
        assert_eq!(feedback_free_lower_bound(3), 4);
        assert_eq!(feedback_free_lower_bound(4), 9);
    }

    #[test]
    fn exchange_pairs_force_membership() {
        let pairs = exchange_pairs(3).unwrap();
        assert_eq!(pairs.len(), 6);
        let all = proper_subsets(3);
        for mask in 0u32..1 << all.len() {
            let coords: Vec<Subset> = (0..all.len()).filter(|&b| mask >> b & 1 == 1).map(|b| all[b]).collect();
            if separates_coordinate_flags(3, &coords) {
                for p in &pairs {
                    assert!(coords.contains(&p.first) || coords.contains(&p.second));
                }
            }
        }
        for n in 2..=6 {
            assert_eq!(exchange_pairs(n).unwrap().len(), (1 << n) - 2);
        }
    }

    #[test]
    fn codes() {
        let s = |x: &str| Subset::parse(x, 5).unwrap();
        let fam = CodeFamily::new(4, 2, vec![s("12"), s("34")]).unwrap();
        assert!(code_bound_check(&fam));
        assert_eq!(max_code_size(4, 2), 2);
        assert_eq!(max_code_size(5, 2), 2);
        assert!(code_bound_check(&CodeFamily::new(4, 2, vec![]).unwrap()));
        assert!(matches!(CodeFamily::new(4, 2, vec![s("12"), s("13")]), Err(Error::Distance(_))));
        for n in 2..=6 {
            for i in 1..=n {
                let bound = binomial(n, i - 1) as usize / i;
                assert!(max_code_size(n, i) <= bound, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn complements_of_separating_sets_are_codes() {
        let four = feedback_free_min_set(4).unwrap();
        for set in &four.minima {
            for i in 1..4 {
                let rest: Vec<Subset> = Subset::all_of_size(4, i).into_iter().filter(|s| !set.contains(s)).collect();
                assert!(code_bound_check(&CodeFamily::new(4, i, rest).unwrap()));
            }
        }
    }

    #[test]
    fn chain() {
        let report = chain_corollary_check(1).unwrap();
        assert_eq!(report.steps(), 4);
        assert_eq!(report.chain[0].length(), 2);
        assert_eq!(report.chain.last().unwrap(), &Perm::longest(4));
        assert!(report.chain.windows(2).all(|p| p[1].length() == p[0].length() + 1));
        assert_eq!(report.per_step_bound, 0.5);
        assert_eq!(chain_corollary_check(2).unwrap().steps(), 16);
    }
}
