//! Descriptions of Schubert cells and Schubert varieties by vanishing and
//! nonvanishing of Plücker coordinates.

use num_rational::Rational64;
use serde_json::{json, Value};

use crate::cartan::{CartanType, Weight};
use crate::error::{Error, Result};
use crate::group::WeylElement;
use crate::patterns::VanishingPattern;
use crate::perm::{Perm, TypeAGroup};
use crate::plucker::{is_economical_ordering, PluckerSpace, WeightId, WeightOrdering};
use crate::roots::Root;

/// A cell given by `p_γ = 0` for the equalities and `p_γ ≠ 0` for the
/// inequalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDescription {
    pub w: WeylElement,
    pub equalities: Vec<WeightId>,
    pub inequalities: Vec<WeightId>,
    pub ordering: Option<WeightOrdering>,
    /// Candidate extra equalities that are incomparable with the weight they
    /// are tested against (type D only); these are not imposed.
    pub incomparable: Vec<WeightId>,
}

/// A Schubert variety X_w given by `p_γ = 0` for the equalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyDescription {
    pub w: WeylElement,
    pub equalities: Vec<WeightId>,
}

fn sorted(mut ids: Vec<WeightId>) -> Vec<WeightId> {
    ids.sort();
    ids.dedup();
    ids
}

fn coordinate_list(space: &PluckerSpace, ids: &[WeightId]) -> Vec<String> {
    ids.iter().map(|&id| space.format_coordinate(id)).collect()
}

impl CellDescription {
    pub fn len(&self) -> usize {
        self.equalities.len() + self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `zero: p13, p23; nonzero: p2`
    pub fn render(&self, space: &PluckerSpace) -> String {
        let show = |ids: &[WeightId]| {
            if ids.is_empty() {
                "-".to_string()
            } else {
                coordinate_list(space, ids).join(", ")
            }
        };
        format!("zero: {}; nonzero: {}", show(&self.equalities), show(&self.inequalities))
    }

    pub fn to_json(&self, space: &PluckerSpace) -> Value {
        let mut v = json!({
            "w": space.group().format_word(self.w),
            "zero": coordinate_list(space, &self.equalities),
            "nonzero": coordinate_list(space, &self.inequalities),
        });
        if let Some(ord) = &self.ordering {
            v["ordering"] = json!(ord.to_string());
        }
        if !self.incomparable.is_empty() {
            v["incomparable"] = json!(coordinate_list(space, &self.incomparable));
        }
        v
    }
}

impl VarietyDescription {
    pub fn render(&self, space: &PluckerSpace) -> String {
        let eqs = coordinate_list(space, &self.equalities);
        format!("zero: {}", if eqs.is_empty() { "-".to_string() } else { eqs.join(", ") })
    }

    pub fn to_json(&self, space: &PluckerSpace) -> Value {
        json!({
            "w": space.group().format_word(self.w),
            "zero": coordinate_list(space, &self.equalities),
        })
    }

    pub fn contains(&self, b: &VanishingPattern) -> bool {
        self.equalities.iter().all(|&id| !b.get(id))
    }
}

/// True iff b vanishes on every equality and is nonzero on every
/// inequality.
pub fn verify_description(d: &CellDescription, b: &VanishingPattern) -> bool {
    d.equalities.iter().all(|&id| !b.get(id)) && d.inequalities.iter().all(|&id| b.get(id))
}

/// X_w = { p_γ = 0 for all γ ≰ w·ω_i }.
pub fn variety_equations(space: &PluckerSpace, w: WeylElement) -> VarietyDescription {
    let mut equalities = Vec::new();
    for level in 0..space.rank() {
        let top = space.weight_of(w, level);
        equalities.extend(space.level_ids(level).filter(|&id| !space.leq(id, top)));
    }
    VarietyDescription { w, equalities }
}

/// p_{w ω_i} ≠ 0 for all i, and p_γ = 0 for every γ in w·W_[i,r]·ω_i above
/// w·ω_i.
pub fn cell_description_general(space: &PluckerSpace, w: WeylElement, ordering: &WeightOrdering) -> CellDescription {
    let g = space.group();
    let mut equalities = Vec::new();
    let mut inequalities = Vec::new();
    for k in 0..space.rank() {
        let node = ordering.node(k);
        let base = space.weight_of(w, node);
        inequalities.push(base);
        let tail = g.parabolic_elements(ordering.tail(k));
        for (id, _) in space.coset_orbit(w, &tail, node) {
            if id != base && space.leq(base, id) {
                equalities.push(id);
            }
        }
    }
    CellDescription {
        w,
        equalities: sorted(equalities),
        inequalities: sorted(inequalities),
        ordering: Some(ordering.clone()),
        incomparable: Vec::new(),
    }
}

/// Positive roots paired with the node at position μ(α).
fn roots_with_mu(space: &PluckerSpace, ordering: &WeightOrdering) -> Vec<(Root, usize)> {
    space.group().positive_roots().iter().map(|r| (r.clone(), ordering.node(ordering.mu(r)))).collect()
}

/// The economical sets for an arbitrary ordering: equalities
/// `w s_α ω_μ(α)` for α > 0 with wα > 0, inequalities `w ω_μ(α)` for α > 0
/// with wα < 0.
fn economical_sets(space: &PluckerSpace, w: WeylElement, ordering: &WeightOrdering) -> (Vec<WeightId>, Vec<WeightId>) {
    let g = space.group();
    let datum = space.datum();
    let mut equalities = Vec::new();
    let mut inequalities = Vec::new();
    for (root, node) in roots_with_mu(space, ordering) {
        if g.act_on_root(w, &root).is_positive() {
            let reflected = root.reflect_weight(datum, &Weight::fundamental(space.rank(), node));
            let id = space.id_of(node, &g.act(w, &reflected)).expect("weight in orbit");
            equalities.push(id);
        } else {
            inequalities.push(space.weight_of(w, node));
        }
    }
    (equalities, inequalities)
}

/// The short description under an economical ordering; fails if the
/// ordering is not economical.
pub fn cell_description_economical(
    space: &PluckerSpace,
    w: WeylElement,
    ordering: &WeightOrdering,
) -> Result<CellDescription> {
    if !is_economical_ordering(space.datum(), ordering) {
        return Err(Error::NotEconomical(format!("{ordering} for {}", space.datum())));
    }
    let (equalities, inequalities) = economical_sets(space, w, ordering);
    let n_eq = equalities.len();
    let equalities = sorted(equalities);
    if equalities.len() != n_eq {
        return Err(Error::Internal("economical equalities are not distinct".into()));
    }
    Ok(CellDescription {
        w,
        equalities,
        inequalities: sorted(inequalities),
        ordering: Some(ordering.clone()),
        incomparable: Vec::new(),
    })
}

/// The type A form: p_{w([1,i])} ≠ 0 when some j > i has w(j) < w(i), and
/// p_{w([1,i-1] ∪ {j})} = 0 for i < j with w(i) < w(j).
pub fn cell_description_type_a(space: &PluckerSpace, w: &Perm) -> Result<CellDescription> {
    let n = space.group().check_type_a()?;
    if w.n() != n {
        return Err(Error::Dimension(format!("permutation of {} letters in {}", w.n(), space.datum())));
    }
    let mut equalities = Vec::new();
    let mut inequalities = Vec::new();
    for i in 0..n {
        let head = w.prefix(i);
        for j in i + 1..n {
            if w.apply(i) < w.apply(j) {
                equalities.push(space.id_of_subset(head.with(w.apply(j)))?);
            }
        }
        if i + 1 < n && (i + 1..n).any(|j| w.apply(j) < w.apply(i)) {
            inequalities.push(space.id_of_subset(w.prefix(i + 1))?);
        }
    }
    Ok(CellDescription {
        w: space.group().from_perm(w)?,
        equalities: sorted(equalities),
        inequalities: sorted(inequalities),
        ordering: Some(WeightOrdering::identity(n - 1)),
        incomparable: Vec::new(),
    })
}

/// The type D form: the economical formulas under the D ordering plus
/// p_γ = 0 for γ = w(ε_1 + ... + ε_{i-1} - ε_i) > w(ε_1 + ... + ε_i),
/// i <= r - 3.
pub fn cell_description_type_d(space: &PluckerSpace, w: WeylElement) -> Result<CellDescription> {
    let datum = space.datum();
    if datum.kind() != CartanType::D {
        return Err(Error::WrongType { expected: "D".into(), found: datum.name() });
    }
    let r = space.rank();
    let ordering = WeightOrdering::standard(datum);
    let (mut equalities, inequalities) = economical_sets(space, w, &ordering);
    let g = space.group();
    let mut incomparable = Vec::new();
    for node in 0..r - 3 {
        let mut v = vec![Rational64::from_integer(0); datum.ambient_dim()];
        for x in v.iter_mut().take(node) {
            *x = Rational64::from_integer(1);
        }
        v[node] = Rational64::from_integer(-1);
        let labels = datum.labels_of(&v)?;
        let gamma = space.id_of(node, &g.act(w, &labels)).expect("weight in orbit");
        let base = space.weight_of(w, node);
        if gamma != base && space.leq(base, gamma) {
            equalities.push(gamma);
        } else if !space.leq(gamma, base) {
            incomparable.push(gamma);
        }
    }
    Ok(CellDescription {
        w,
        equalities: sorted(equalities),
        inequalities: sorted(inequalities),
        ordering: Some(ordering),
        incomparable: sorted(incomparable),
    })
}

/// The best available short description: type A formulas, the economical
/// form under the standard ordering, or the type D form.
pub fn describe(space: &PluckerSpace, w: WeylElement) -> Result<CellDescription> {
    match space.datum().kind() {
        CartanType::A => cell_description_type_a(space, &space.group().to_perm(w)),
        CartanType::D => cell_description_type_d(space, w),
        _ => cell_description_economical(space, w, &WeightOrdering::standard(space.datum())),
    }
}
