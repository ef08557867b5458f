//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (written past the test harness's output capture).

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

use schubert::base::{weyl_base, WeylBase};
use schubert::bounds::{construct_witness_family, feedback_free_lower_bound, feedback_free_min_set};
use schubert::cells::{cell_description_type_a, describe};
use schubert::flags::random_cell_point;
use schubert::patterns::{
    coordinate_pattern, generic_pattern, pattern_poset, random_acceptable, realizable_restricted_patterns,
};
use schubert::perm::binomial;
use schubert::plucker::{is_economical_index, PluckerSpace, WeightId, WeightOrdering};
use schubert::recognition::{
    optimal_decision_tree, recognize_general, recognize_type_a, FlagOracle, PatternOracle, Recognizer,
};
use schubert::{CartanType, Perm, TypeAGroup};

const RANK_4_GROUPS: [&str; 12] = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2"];

fn criterion(id: usize, name: &str, limit: Duration, check: impl FnOnce() -> Vec<String>) {
    let start = Instant::now();
    let mut failures = check();
    let elapsed = start.elapsed();
    if elapsed > limit {
        failures.push(format!("took {elapsed:.2?}, limit {limit:?}"));
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut line = format!("criterion {id:>2} {status} [{name}] {elapsed:.2?}");
    if !failures.is_empty() {
        line.push_str(&format!(": {}", failures.join("; ")));
    }
    writeln!(std::io::stdout().lock(), "{line}").unwrap();
    assert!(failures.is_empty(), "{line}");
}

fn space(name: &str) -> PluckerSpace {
    PluckerSpace::from_name(name).unwrap()
}

fn ids(s: &PluckerSpace, coords: &[&str]) -> BTreeSet<WeightId> {
    coords.iter().map(|c| s.parse(c).unwrap()).collect()
}

fn names(s: &PluckerSpace, set: &BTreeSet<WeightId>) -> String {
    let v: Vec<String> = set.iter().map(|&id| s.format_coordinate(id)).collect();
    format!("{{{}}}", v.join(","))
}

/// Rows of the A2 table: element, pattern over p1 p2 p3 p12 p13 p23, and
/// the zero and nonzero sets of the last column.
const A2_CELL_TABLE: [(&str, &str, &[&str], &[&str]); 6] = [
    ("123", "100100", &["3", "2", "13"], &[]),
    ("213", "*10100", &["13", "23"], &["2"]),
    ("132", "100*10", &["2", "3"], &["13"]),
    ("231", "*10**1", &["3"], &["23"]),
    ("312", "**1*10", &["23"], &["3"]),
    ("321", "**1**1", &[], &["3", "23"]),
];
const CELL_TABLE_COLUMNS: [&str; 6] = ["1", "2", "3", "12", "13", "23"];

#[test]
fn criterion_01_a2_cell_table() {
    criterion(1, "A2 cell table", Duration::from_secs(1), || {
        let s = space("A2");
        let g = s.group();
        let mut failures = Vec::new();
        for (w, row, zero, nonzero) in A2_CELL_TABLE {
            let perm = Perm::parse(w).unwrap();
            let d = cell_description_type_a(&s, &perm).unwrap();
            let got_zero: BTreeSet<WeightId> = d.equalities.iter().copied().collect();
            let got_nonzero: BTreeSet<WeightId> = d.inequalities.iter().copied().collect();
            let (want_zero, want_nonzero) = (ids(&s, zero), ids(&s, nonzero));
            if got_zero != want_zero || got_nonzero != want_nonzero {
                failures.push(format!(
                    "{w}: zero {} nonzero {}, table zero {} nonzero {}",
                    names(&s, &got_zero),
                    names(&s, &got_nonzero),
                    names(&s, &want_zero),
                    names(&s, &want_nonzero)
                ));
            }
            if d.len() > 3 {
                failures.push(format!("{w}: {} constraints", d.len()));
            }
            let x = g.from_perm(&perm).unwrap();
            let mut samples = vec![generic_pattern(&s, x), coordinate_pattern(&s, x)];
            for seed in 0..100 {
                samples.push(random_cell_point(&s, &perm, seed).unwrap().vanishing_pattern(&s).unwrap());
            }
            for (col, mark) in CELL_TABLE_COLUMNS.iter().zip(row.chars()) {
                let id = s.parse(col).unwrap();
                let seen: BTreeSet<bool> = samples.iter().map(|b| b.get(id)).collect();
                let ok = match mark {
                    '0' => seen == BTreeSet::from([false]),
                    '1' => seen == BTreeSet::from([true]),
                    _ => seen.len() == 2,
                };
                if !ok {
                    failures.push(format!("{w}: p{col} takes {seen:?}, table says {mark}"));
                }
                if generic_pattern(&s, x).get(id) != (mark != '0') {
                    failures.push(format!("{w}: generic p{col} disagrees with {mark}"));
                }
            }
        }
        failures
    });
}

#[test]
fn criterion_02_a2_pattern_poset() {
    criterion(2, "A2 pattern poset", Duration::from_secs(10), || {
        let s = space("A2");
        let coords: Vec<WeightId> = ["2", "3", "13", "23"].iter().map(|c| s.parse(c).unwrap()).collect();
        let set = realizable_restricted_patterns(&s, &coords, 0).unwrap();
        let poset = pattern_poset(&set);
        let mut failures = Vec::new();
        if !set.certified {
            failures.push("pattern set is not certified".into());
        }
        if set.patterns.len() != 11 {
            failures.push(format!("{} patterns", set.patterns.len()));
        }
        let mut sizes: BTreeMap<String, usize> = BTreeMap::new();
        for v in &poset.vertices {
            if v.cells.len() != 1 {
                failures.push(format!("pattern shared by {} cells", v.cells.len()));
            }
            for &w in &v.cells {
                *sizes.entry(s.group().to_perm(w).to_string()).or_default() += 1;
            }
        }
        let want: BTreeMap<String, usize> = [("123", 1), ("213", 1), ("132", 1), ("231", 2), ("312", 2), ("321", 4)]
            .into_iter()
            .map(|(w, n)| (w.to_string(), n))
            .collect();
        if sizes != want {
            failures.push(format!("group sizes {sizes:?}"));
        }
        failures
    });
}

#[test]
fn criterion_03_a2_decision_tree() {
    criterion(3, "A2 decision tree", Duration::from_secs(5), || {
        let s = space("A2");
        let mut failures = Vec::new();
        let depth = optimal_decision_tree(&s).unwrap().depth();
        if depth != 3 {
            failures.push(format!("optimal depth {depth}"));
        }
        let tree = Recognizer::standard(&s).decision_tree();
        let root = tree.root_query().map(|id| s.format_coordinate(id));
        if root.as_deref() != Some("p3") {
            failures.push(format!("algorithmic root {root:?}"));
        }
        failures
    });
}

#[test]
fn criterion_04_query_bound() {
    criterion(4, "type A query bound", Duration::from_secs(60), || {
        let mut failures = Vec::new();
        for n in 2..=6 {
            let s = space(&format!("A{}", n - 1));
            let bound = binomial(n, 2) as usize;
            for w in s.group().elements() {
                for (kind, b) in [("generic", generic_pattern(&s, w)), ("coordinate", coordinate_pattern(&s, w))] {
                    let (p, log) = recognize_type_a(&s, PatternOracle::new(&b)).unwrap();
                    if p != s.group().to_perm(w) || log.count() > bound {
                        failures.push(format!(
                            "{kind} {}: got {p} after {} queries",
                            s.group().to_perm(w),
                            log.count()
                        ));
                    }
                }
            }
        }
        failures
    });
}

/// Economical indices (0-based) by type and rank.
fn economical_classification(kind: CartanType, r: usize) -> Vec<usize> {
    match kind {
        _ if r <= 2 => (0..r).collect(),
        CartanType::A => vec![0, r - 1],
        CartanType::B | CartanType::C => vec![0],
        _ => vec![],
    }
}

#[test]
fn criterion_05_economical_classification() {
    criterion(5, "economical classification", Duration::from_secs(30), || {
        let mut groups: Vec<String> = Vec::new();
        for r in 1..=6 {
            groups.push(format!("A{r}"));
        }
        for r in 2..=6 {
            groups.push(format!("B{r}"));
            groups.push(format!("C{r}"));
        }
        for r in 4..=6 {
            groups.push(format!("D{r}"));
        }
        groups.push("G2".into());
        let mut failures = Vec::new();
        for name in groups {
            let datum: schubert::CartanDatum = name.parse().unwrap();
            let got: Vec<usize> = (0..datum.rank()).filter(|&i| is_economical_index(&datum, i)).collect();
            let want = economical_classification(datum.kind(), datum.rank());
            if got != want {
                failures.push(format!("{name}: {got:?} vs {want:?}"));
            }
        }
        failures
    });
}

#[test]
fn criterion_06_description_sizes() {
    criterion(6, "description sizes", Duration::from_secs(60), || {
        let mut failures = Vec::new();
        for name in ["A4", "B3", "C3", "G2", "D4"] {
            let s = space(name);
            let g = s.group();
            let (roots, r) = (g.positive_roots().len(), s.rank());
            for w in g.elements() {
                let d = describe(&s, w).unwrap();
                let (eq, ineq, len) = (d.equalities.len(), d.inequalities.len(), g.length(w));
                let ok = if name == "D4" { eq <= roots - len + r - 3 } else { eq == roots - len && ineq <= r.min(len) };
                if !ok {
                    failures.push(format!("{name} {}: {eq} zero, {ineq} nonzero", g.format_word(w)));
                }
            }
        }
        failures
    });
}

#[test]
fn criterion_07_recognition() {
    criterion(7, "recognition on acceptable vectors", Duration::from_secs(120), || {
        let mut failures = 0usize;
        let mut first = None;
        for name in RANK_4_GROUPS {
            let s = space(name);
            let ord = WeightOrdering::standard(s.datum());
            for w in s.group().elements() {
                let mut inputs = vec![generic_pattern(&s, w)];
                inputs.extend((0..100).map(|seed| random_acceptable(&s, w, seed)));
                for b in &inputs {
                    let got = recognize_general(&s, PatternOracle::new(b), &ord).map(|r| r.w);
                    if got.as_ref().ok() != Some(&w) {
                        failures += 1;
                        first.get_or_insert_with(|| format!("{name} {}: {got:?}", s.group().format_word(w)));
                    }
                }
            }
        }
        first.map(|f| vec![format!("{failures} failures, first {f}")]).unwrap_or_default()
    });
}

#[test]
fn criterion_08_base() {
    criterion(8, "base of W", Duration::from_secs(120), || {
        let mut failures = Vec::new();
        for n in 3..=5 {
            let size = weyl_base(space(&format!("A{}", n - 1)).group()).unwrap().len();
            if size as u64 != binomial(n + 1, 3) {
                failures.push(format!("S{n}: base of size {size}"));
            }
        }
        for name in RANK_4_GROUPS {
            let s = space(name);
            let g = s.group();
            let base = match WeylBase::new(&s) {
                Ok(b) => b,
                Err(e) => {
                    failures.push(format!("{name}: {e}"));
                    continue;
                }
            };
            for b in &base.elements {
                if g.left_descents(b.element).len() != 1 || g.right_descents(b.element).len() != 1 {
                    failures.push(format!("{name} {}: descents are not unique", g.format_word(b.element)));
                }
            }
            for w in g.elements() {
                if base.recognize(&generic_pattern(&s, w).restrict(&base.weights)) != Some(w) {
                    failures.push(format!("{name} {}: not recovered from base weights", g.format_word(w)));
                }
            }
            if matches!(name, "A2" | "A3") && !base.is_minimal() {
                failures.push(format!("{name}: a base weight can be dropped"));
            }
        }
        failures
    });
}

#[test]
fn criterion_09_lower_bounds() {
    criterion(9, "lower bounds", Duration::from_secs(60), || {
        let mut failures = Vec::new();
        for (k, size, bound) in [(1, 4, 2), (2, 36, 6)] {
            match construct_witness_family(k) {
                Ok(fam) => {
                    if fam.members.len() != size || fam.lower_bound() != bound {
                        failures.push(format!("k={k}: |U| = {}, bound {}", fam.members.len(), fam.lower_bound()));
                    }
                    if fam.max_coverage() as u64 > fam.lower_bound() {
                        failures.push(format!("k={k}: coverage {}", fam.max_coverage()));
                    }
                }
                Err(e) => failures.push(format!("k={k}: {e}")),
            }
        }
        let n = 3;
        let f = feedback_free_min_set(n).unwrap();
        let full = f.full_minima.clone().unwrap_or_default();
        let names: Vec<String> = full.iter().flatten().map(|s| format!("p{s}")).collect();
        if full.len() != 1 || names != ["p2", "p3", "p13", "p23"] || f.size != 4 {
            failures.push(format!("feedback-free minima {names:?} of size {}", f.size));
        }
        let total = (1usize << n) - 2;
        if (f.size as f64) < (n - 1) as f64 / (n + 1) as f64 * total as f64 || f.size < feedback_free_lower_bound(n) {
            failures.push(format!("size {} below the proportion bound", f.size));
        }
        failures
    });
}

#[test]
fn criterion_10_cross_oracle() {
    criterion(10, "flag and pattern oracles agree", Duration::from_secs(60), || {
        let mut failures = Vec::new();
        for n in 2..=5 {
            let s = space(&format!("A{}", n - 1));
            let g = s.group();
            for w in g.elements() {
                let perm = g.to_perm(w);
                let flag = random_cell_point(&s, &perm, w.index() as u64).unwrap();
                let b = generic_pattern(&s, w);
                if flag.vanishing_pattern(&s).unwrap() != b {
                    failures.push(format!("{perm}: sampled pattern is not generic"));
                }
                let by_flag = recognize_type_a(&s, FlagOracle::new(&s, &flag).unwrap()).unwrap();
                let by_pattern = recognize_type_a(&s, PatternOracle::new(&b)).unwrap();
                if by_flag != by_pattern || by_flag.0 != perm {
                    failures.push(format!("{perm}: type A recognition differs"));
                }
                let rec = Recognizer::standard(&s);
                let by_flag = rec.recognize(FlagOracle::new(&s, &flag).unwrap()).unwrap();
                let by_pattern = rec.recognize(PatternOracle::new(&b)).unwrap();
                if by_flag != by_pattern || by_flag.w != w {
                    failures.push(format!("{perm}: level-by-level recognition differs"));
                }
            }
        }
        failures
    });
}
