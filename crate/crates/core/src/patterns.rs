//! Vanishing patterns of Plücker coordinates: acceptability, generic
//! patterns, and the degeneration poset of restricted patterns.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::flags::{random_cell_point, random_flag, Flag};
use crate::group::WeylElement;
use crate::perm::{Perm, TypeAGroup};
use crate::plucker::{PluckerSpace, WeightId};

/// A 0/1 value for every Plücker weight of a [`PluckerSpace`], indexed by
/// [`WeightId`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VanishingPattern {
    bits: Vec<bool>,
}

impl VanishingPattern {
    pub fn zeros(space: &PluckerSpace) -> Self {
        VanishingPattern { bits: vec![false; space.len()] }
    }

    pub fn ones(space: &PluckerSpace) -> Self {
        VanishingPattern { bits: vec![true; space.len()] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        VanishingPattern { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, id: WeightId) -> bool {
        self.bits[id.index()]
    }

    pub fn set(&mut self, id: WeightId, value: bool) {
        self.bits[id.index()] = value;
    }

    pub fn restrict(&self, coords: &[WeightId]) -> Vec<bool> {
        coords.iter().map(|&id| self.get(id)).collect()
    }

    pub fn support(&self) -> impl Iterator<Item = WeightId> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| WeightId(k as u32))
    }

    /// Map from the formatted weight (`"13"`, `"2:s1.s2"`) to 0 or 1.
    pub fn to_map(&self, space: &PluckerSpace) -> BTreeMap<String, u8> {
        space.ids().map(|id| (space.format(id), self.get(id) as u8)).collect()
    }

    pub fn to_json(&self, space: &PluckerSpace) -> Value {
        json!(self.to_map(space))
    }

    /// Parses a JSON object mapping every Plücker weight to 0/1 (or a
    /// boolean).
    pub fn from_json(space: &PluckerSpace, text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let map = value.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let mut pattern = VanishingPattern::zeros(space);
        let mut seen = vec![false; space.len()];
        for (key, v) in map {
            let id = space.parse(key)?;
            let bit = match v {
                Value::Bool(b) => *b,
                Value::Number(x) if x.as_u64() == Some(0) => false,
                Value::Number(x) if x.as_u64() == Some(1) => true,
                other => return Err(Error::Parse(format!("invalid bit {other} for {key}"))),
            };
            pattern.set(id, bit);
            seen[id.index()] = true;
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(Error::Parse(format!("no bit for {}", space.format(WeightId(k as u32)))));
        }
        Ok(pattern)
    }
}

pub fn bitstring(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_bitstring(s: &str) -> Result<Vec<bool>> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse(format!("invalid bit string {s:?}"))),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AcceptFailure {
    EmptyLevel,
    NoUniqueMax,
    NoCommonW,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptabilityReport {
    pub accepted: bool,
    /// The maximum of the support in each level, when it exists.
    pub per_level_max: Vec<Option<WeightId>>,
    pub witness: Option<WeylElement>,
    pub failure: Option<AcceptFailure>,
}

/// Checks that every level has a nonempty support with a unique maximal
/// element γ_i, and that some w ∈ W has w·ω_i = γ_i for all i.
pub fn check_acceptable(space: &PluckerSpace, b: &VanishingPattern) -> AcceptabilityReport {
    let r = space.rank();
    let mut per_level_max = vec![None; r];
    let (mut empty, mut ambiguous) = (false, false);
    for (level, slot) in per_level_max.iter_mut().enumerate() {
        let ones: Vec<WeightId> = space.level_ids(level).filter(|&id| b.get(id)).collect();
        if ones.is_empty() {
            empty = true;
            continue;
        }
        let maximal: Vec<WeightId> =
            ones.iter().copied().filter(|&a| !ones.iter().any(|&c| c != a && space.leq(a, c))).collect();
        if maximal.len() == 1 {
            *slot = Some(maximal[0]);
        } else {
            ambiguous = true;
        }
    }
    if empty || ambiguous {
        let failure = if empty { AcceptFailure::EmptyLevel } else { AcceptFailure::NoUniqueMax };
        return AcceptabilityReport { accepted: false, per_level_max, witness: None, failure: Some(failure) };
    }
    let maxima: Vec<WeightId> = per_level_max.iter().map(|m| m.unwrap()).collect();
    let witness = find_witness(space, &maxima);
    AcceptabilityReport {
        accepted: witness.is_some(),
        per_level_max,
        witness,
        failure: if witness.is_some() { None } else { Some(AcceptFailure::NoCommonW) },
    }
}

/// The unique w with w·ω_i = γ_i for all levels, found from w·ρ = Σ γ_i.
pub fn find_witness(space: &PluckerSpace, maxima: &[WeightId]) -> Option<WeylElement> {
    let r = space.rank();
    let mut sum = crate::cartan::Weight::zero(r);
    for &id in maxima {
        sum = sum.add(&space.weight(id).weight);
    }
    let w = space.group().by_fingerprint(&sum)?;
    (0..r).all(|i| space.weight_of(w, i) == maxima[i]).then_some(w)
}

/// b_γ = 1 iff γ ≤ w·ω_i in the orbit Bruhat order.
pub fn generic_pattern(space: &PluckerSpace, w: WeylElement) -> VanishingPattern {
    let mut pattern = VanishingPattern::zeros(space);
    for level in 0..space.rank() {
        let top = space.weight_of(w, level);
        for id in space.level_ids(level) {
            pattern.set(id, space.leq(id, top));
        }
    }
    pattern
}

/// The pattern with ones exactly at w·ω_i; in type A this is the pattern of
/// the coordinate flag π_w.
pub fn coordinate_pattern(space: &PluckerSpace, w: WeylElement) -> VanishingPattern {
    let mut pattern = VanishingPattern::zeros(space);
    for level in 0..space.rank() {
        pattern.set(space.weight_of(w, level), true);
    }
    pattern
}

/// An acceptable pattern with witness w: ones at each w·ω_i, zeros at weights
/// not below it, and independent fair bits strictly below it.
pub fn random_acceptable_with<R: Rng>(space: &PluckerSpace, w: WeylElement, rng: &mut R) -> VanishingPattern {
    let mut pattern = VanishingPattern::zeros(space);
    for level in 0..space.rank() {
        let top = space.weight_of(w, level);
        for id in space.level_ids(level) {
            let bit = id == top || (space.leq(id, top) && rng.gen_bool(0.5));
            pattern.set(id, bit);
        }
    }
    pattern
}

pub fn random_acceptable(space: &PluckerSpace, w: WeylElement, seed: u64) -> VanishingPattern {
    random_acceptable_with(space, w, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Restricted patterns that occur on actual flags, each with the cells in
/// which it occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizableSet {
    pub coords: Vec<WeightId>,
    pub patterns: BTreeMap<Vec<bool>, BTreeSet<WeylElement>>,
    /// True when the set is proven complete; false when it is only a lower
    /// bound from sampling.
    pub certified: bool,
}

/// Number of random matrices probed for `n >= 4`.
pub const REALIZABILITY_SAMPLES: usize = 20_000;

/// Restrictions to `coords` of the vanishing patterns of all flags in
/// `C^n`, `n = rank + 1 <= 4`.
///
/// For n = 3 the candidate full patterns are the acceptable ones compatible
/// with the relation `p1 p23 - p2 p13 + p3 p12 = 0` (it cannot have exactly
/// one nonzero term); every candidate is realized by a matrix with entries in
/// {-1, 0, 1}, which certifies the set. For n = 4 the set is the union over
/// coordinate flags, generic cell points and random sparse matrices.
pub fn realizable_restricted_patterns(space: &PluckerSpace, coords: &[WeightId], seed: u64) -> Result<RealizableSet> {
    let n = space.group().check_type_a()?;
    if n > 4 {
        return Err(Error::SizeCap(format!("realizability is only computed for n <= 4, got n = {n}")));
    }
    let mut full: BTreeSet<VanishingPattern> = BTreeSet::new();
    for w in Perm::all(n) {
        full.insert(Flag::coordinate(&w).vanishing_pattern(space)?);
        full.insert(random_cell_point(space, &w, seed)?.vanishing_pattern(space)?);
    }
    let certified = if n <= 3 {
        for x in small_matrices(n) {
            if let Ok(flag) = Flag::from_integers(&x) {
                full.insert(flag.vanishing_pattern(space)?);
            }
        }
        let candidates = relation_candidates(space, n);
        if candidates != full {
            return Err(Error::Internal("realized patterns differ from the case analysis".into()));
        }
        true
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..REALIZABILITY_SAMPLES {
            full.insert(random_flag(n, 1, &mut rng).vanishing_pattern(space)?);
        }
        false
    };
    let mut patterns: BTreeMap<Vec<bool>, BTreeSet<WeylElement>> = BTreeMap::new();
    for b in &full {
        let witness = check_acceptable(space, b)
            .witness
            .ok_or_else(|| Error::Internal("a realized pattern is not acceptable".into()))?;
        patterns.entry(b.restrict(coords)).or_default().insert(witness);
    }
    Ok(RealizableSet { coords: coords.to_vec(), patterns, certified })
}

/// All n×n matrices with entries in {-1, 0, 1}.
fn small_matrices(n: usize) -> impl Iterator<Item = Vec<Vec<i64>>> {
    let cells = n * n;
    (0..3usize.pow(cells as u32)).map(move |mut code| {
        let mut rows = vec![vec![0i64; n]; n];
        for k in 0..cells {
            rows[k / n][k % n] = (code % 3) as i64 - 1;
            code /= 3;
        }
        rows
    })
}

/// Acceptable full patterns satisfying the Plücker relations for n <= 3.
fn relation_candidates(space: &PluckerSpace, n: usize) -> BTreeSet<VanishingPattern> {
    let total = space.len();
    let mut out = BTreeSet::new();
    for code in 0u64..1 << total {
        let b = VanishingPattern::from_bits((0..total).map(|k| code >> k & 1 == 1).collect());
        if !check_acceptable(space, &b).accepted {
            continue;
        }
        if n == 3 {
            let bit = |s: &str| b.get(space.parse(s).expect("subset of [1,3]"));
            let terms = [bit("1") && bit("23"), bit("2") && bit("13"), bit("3") && bit("12")];
            if terms.iter().filter(|&&t| t).count() == 1 {
                continue;
            }
        }
        out.insert(b);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetVertex {
    pub bits: Vec<bool>,
    pub cells: Vec<WeylElement>,
}

/// Restricted patterns ordered by bitwise dominance, with Hasse covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternPoset {
    pub coords: Vec<WeightId>,
    /// Sorted by number of ones, then by bit string.
    pub vertices: Vec<PosetVertex>,
    /// Covers `(lower, upper)` as vertex indices.
    pub covers: Vec<(usize, usize)>,
}

fn bitwise_leq(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

pub fn pattern_poset(set: &RealizableSet) -> PatternPoset {
    let mut vertices: Vec<PosetVertex> = set
        .patterns
        .iter()
        .map(|(bits, cells)| PosetVertex { bits: bits.clone(), cells: cells.iter().copied().collect() })
        .collect();
    vertices.sort_by_key(|v| (v.bits.iter().filter(|&&b| b).count(), bitstring(&v.bits)));
    let m = vertices.len();
    let below = |a: usize, b: usize| a != b && bitwise_leq(&vertices[a].bits, &vertices[b].bits);
    let mut covers = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if below(a, b) && !(0..m).any(|c| below(a, c) && below(c, b)) {
                covers.push((a, b));
            }
        }
    }
    PatternPoset { coords: set.coords.clone(), vertices, covers }
}

impl PatternPoset {
    fn cell_label(space: &PluckerSpace, cells: &[WeylElement]) -> String {
        let names: Vec<String> = cells.iter().map(|&w| element_name(space, w)).collect();
        names.join(" ")
    }

    /// Vertices grouped by the cells they occur in.
    pub fn groups(&self) -> BTreeMap<Vec<WeylElement>, Vec<String>> {
        let mut groups: BTreeMap<Vec<WeylElement>, Vec<String>> = BTreeMap::new();
        for v in &self.vertices {
            groups.entry(v.cells.clone()).or_default().push(bitstring(&v.bits));
        }
        groups
    }

    pub fn to_dot(&self, space: &PluckerSpace) -> String {
        let coords: Vec<String> = self.coords.iter().map(|&id| space.format_coordinate(id)).collect();
        let mut out = String::from("digraph patterns {\n  rankdir=BT;\n");
        out.push_str(&format!("  label=\"{}\";\n", coords.join(", ")));
        for (k, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!(
                "  v{k} [label=\"{}\", cell=\"{}\"];\n",
                bitstring(&v.bits),
                PatternPoset::cell_label(space, &v.cells)
            ));
        }
        for &(a, b) in &self.covers {
            out.push_str(&format!("  v{a} -> v{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, space: &PluckerSpace) -> Value {
        json!({
            "coords": self.coords.iter().map(|&id| space.format_coordinate(id)).collect::<Vec<_>>(),
            "vertices": self.vertices.iter().map(|v| json!({
                "bits": bitstring(&v.bits),
                "cells": v.cells.iter().map(|&w| element_name(space, w)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "edges": self.covers.iter().map(|&(a, b)| json!([bitstring(&self.vertices[a].bits), bitstring(&self.vertices[b].bits)])).collect::<Vec<_>>(),
        })
    }
}

/// One-line notation in type A, a reduced word otherwise.
pub fn element_name(space: &PluckerSpace, w: WeylElement) -> String {
    match space.group().check_type_a() {
        Ok(_) => space.group().to_perm(w).to_string(),
        Err(_) => space.group().format_word(w),
    }
}
