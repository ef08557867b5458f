//! Finite Weyl groups as explicit multiplication tables.
//!
//! Every element is identified by the image `w·ρ` of the strictly dominant
//! weight ρ and carries its shortlex-minimal reduced word. Elements are
//! enumerated once, breadth first, so that the index order is the shortlex
//! order of canonical words and the identity has index 0.

use std::collections::HashMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanDatum, CartanType, Weight};
use crate::error::{Error, Result};
use crate::roots::{positive_roots, Root};

/// Largest group that [`WeylGroup::new`] will enumerate.
pub const ELEMENT_CAP: u128 = 1_000_000;

/// Handle to an element of a [`WeylGroup`]. Only meaningful together with the
/// group that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement(u32);

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        WeylElement(i as u32)
    }
}

pub struct WeylGroup {
    datum: CartanDatum,
    words: Vec<Vec<u8>>,
    fingerprints: Vec<Weight>,
    by_fingerprint: HashMap<Weight, u32>,
    right: Vec<u32>,
    left: Vec<u32>,
    inverse: Vec<u32>,
    positive_roots: Vec<Root>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylGroup").field("type", &self.datum.name()).field("order", &self.order()).finish()
    }
}

impl WeylGroup {
    pub fn new(datum: CartanDatum) -> Result<Self> {
        let order = datum.group_order();
        if order > ELEMENT_CAP {
            return Err(Error::TooLarge { order, cap: ELEMENT_CAP });
        }
        let r = datum.rank();
        let cartan = datum.cartan_matrix().to_vec();

        // Enumerate by w^{-1}ρ: right multiplication by s_i is then the
        // simple reflection s_i applied to that vector, and i is a right
        // descent of w exactly when its i-th label is negative.
        let mut inv_fp: Vec<Weight> = vec![Weight::rho(r)];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut by_inv: HashMap<Weight, u32> = HashMap::new();
        by_inv.insert(Weight::rho(r), 0);
        let mut head = 0;
        while head < inv_fp.len() {
            for i in 0..r {
                if inv_fp[head].0[i] > 0 {
                    let next = inv_fp[head].reflected(i, &cartan);
                    if !by_inv.contains_key(&next) {
                        let mut word = words[head].clone();
                        word.push(i as u8);
                        by_inv.insert(next.clone(), inv_fp.len() as u32);
                        inv_fp.push(next);
                        words.push(word);
                    }
                }
            }
            head += 1;
        }
        let n = inv_fp.len();
        if n as u128 != order {
            return Err(Error::Internal(format!("enumerated {n} elements, expected {order}")));
        }

        let mut right = vec![0u32; n * r];
        for (w, v) in inv_fp.iter().enumerate() {
            for i in 0..r {
                right[w * r + i] = by_inv[&v.reflected(i, &cartan)];
            }
        }
        let mut inverse = vec![0u32; n];
        for (w, word) in words.iter().enumerate() {
            inverse[w] = word.iter().rev().fold(0u32, |acc, &i| right[acc as usize * r + i as usize]);
        }
        let mut left = vec![0u32; n * r];
        for w in 0..n {
            for i in 0..r {
                left[w * r + i] = inverse[right[inverse[w] as usize * r + i] as usize];
            }
        }
        let fingerprints: Vec<Weight> = (0..n).map(|w| inv_fp[inverse[w] as usize].clone()).collect();
        let by_fingerprint = fingerprints.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect();
        let positive_roots = positive_roots(&datum);

        Ok(WeylGroup { datum, words, fingerprints, by_fingerprint, right, left, inverse, positive_roots })
    }

    pub fn from_name(name: &str) -> Result<Self> {
        WeylGroup::new(name.parse()?)
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn kind(&self) -> CartanType {
        self.datum.kind()
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::IDENTITY
    }

    /// All elements in shortlex order of their canonical words.
    pub fn elements(&self) -> impl Iterator<Item = WeylElement> + '_ {
        (0..self.order()).map(WeylElement::from_index)
    }

    /// Shortlex-minimal reduced word, 0-based generator indices.
    pub fn word(&self, w: WeylElement) -> &[u8] {
        &self.words[w.index()]
    }

    pub fn length(&self, w: WeylElement) -> usize {
        self.words[w.index()].len()
    }

    /// The fingerprint w·ρ.
    pub fn fingerprint(&self, w: WeylElement) -> &Weight {
        &self.fingerprints[w.index()]
    }

    pub fn by_fingerprint(&self, f: &Weight) -> Option<WeylElement> {
        self.by_fingerprint.get(f).map(|&i| WeylElement(i))
    }

    /// w s_i.
    pub fn mul_simple_right(&self, w: WeylElement, i: usize) -> WeylElement {
        WeylElement(self.right[w.index() * self.rank() + i])
    }

    /// s_i w.
    pub fn mul_simple_left(&self, i: usize, w: WeylElement) -> WeylElement {
        WeylElement(self.left[w.index() * self.rank() + i])
    }

    /// Product of the simple reflections in `word`, which need not be reduced.
    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        word.iter().fold(self.identity(), |w, &i| self.mul_simple_right(w, i))
    }

    pub fn multiply(&self, u: WeylElement, v: WeylElement) -> WeylElement {
        self.word(v).iter().fold(u, |w, &i| self.mul_simple_right(w, i as usize))
    }

    pub fn inverse(&self, w: WeylElement) -> WeylElement {
        WeylElement(self.inverse[w.index()])
    }

    pub fn has_right_descent(&self, w: WeylElement, i: usize) -> bool {
        // i is a right descent iff w α_i < 0 iff <w^{-1}ρ, α_i^∨> < 0
        self.fingerprints[self.inverse[w.index()] as usize].0[i] < 0
    }

    pub fn has_left_descent(&self, w: WeylElement, i: usize) -> bool {
        self.fingerprints[w.index()].0[i] < 0
    }

    pub fn right_descents(&self, w: WeylElement) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.has_right_descent(w, i)).collect()
    }

    pub fn left_descents(&self, w: WeylElement) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.has_left_descent(w, i)).collect()
    }

    /// Bruhat order by the descent recursion: for a right descent s of v,
    /// `u <= v` iff `min(u, us) <= vs`.
    pub fn bruhat_leq(&self, mut u: WeylElement, mut v: WeylElement) -> bool {
        loop {
            let (lu, lv) = (self.length(u), self.length(v));
            if lu == 0 {
                return true;
            }
            if lu >= lv {
                return u == v;
            }
            let s = *self.word(v).last().unwrap() as usize;
            if self.has_right_descent(u, s) {
                u = self.mul_simple_right(u, s);
            }
            v = self.mul_simple_right(v, s);
        }
    }

    /// Minimal-length element of the coset w W_J.
    pub fn min_coset_rep(&self, mut w: WeylElement, parabolic: &[usize]) -> WeylElement {
        'outer: loop {
            for &j in parabolic {
                if self.has_right_descent(w, j) {
                    w = self.mul_simple_right(w, j);
                    continue 'outer;
                }
            }
            return w;
        }
    }

    pub fn is_min_coset_rep(&self, w: WeylElement, parabolic: &[usize]) -> bool {
        parabolic.iter().all(|&j| !self.has_right_descent(w, j))
    }

    /// Longest element of the parabolic subgroup W_J.
    pub fn longest_element(&self, parabolic: &[usize]) -> WeylElement {
        let mut w = self.identity();
        'outer: loop {
            for &j in parabolic {
                if !self.has_right_descent(w, j) {
                    w = self.mul_simple_right(w, j);
                    continue 'outer;
                }
            }
            return w;
        }
    }

    pub fn longest(&self) -> WeylElement {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.longest_element(&all)
    }

    /// Whether w lies in W_J, i.e. its support is contained in J.
    pub fn in_parabolic(&self, w: WeylElement, parabolic: &[usize]) -> bool {
        self.word(w).iter().all(|&i| parabolic.contains(&(i as usize)))
    }

    /// Elements of W_J, breadth first from the identity.
    pub fn parabolic_elements(&self, parabolic: &[usize]) -> Vec<WeylElement> {
        let mut seen = vec![false; self.order()];
        let mut out = vec![self.identity()];
        seen[0] = true;
        let mut head = 0;
        while head < out.len() {
            let w = out[head];
            for &j in parabolic {
                let x = self.mul_simple_right(w, j);
                if !seen[x.index()] {
                    seen[x.index()] = true;
                    out.push(x);
                }
            }
            head += 1;
        }
        out
    }

    /// w·λ for λ in Dynkin labels.
    pub fn act(&self, w: WeylElement, weight: &Weight) -> Weight {
        let cartan = self.datum.cartan_matrix();
        let mut out = weight.clone();
        for &i in self.word(w).iter().rev() {
            out.reflect(i as usize, cartan);
        }
        out
    }

    /// Linear action on an arbitrary rational vector in ambient coordinates.
    pub fn act_on_weight(&self, w: WeylElement, v: &[Rational64]) -> Result<Vec<Rational64>> {
        if v.len() != self.datum.ambient_dim() {
            return Err(Error::Dimension(format!(
                "expected {} ambient coordinates, got {}",
                self.datum.ambient_dim(),
                v.len()
            )));
        }
        let mut out = v.to_vec();
        for &i in self.word(w).iter().rev() {
            let alpha = &self.datum.simple_roots()[i as usize];
            let num =
                out.iter().zip(alpha).fold(Rational64::zero(), |acc, (x, &a)| acc + *x * Rational64::from_integer(a));
            let c =
                num * Rational64::from_integer(2) / Rational64::from_integer(self.datum.simple_root_norm(i as usize));
            for (x, &a) in out.iter_mut().zip(alpha) {
                *x -= c * Rational64::from_integer(a);
            }
        }
        Ok(out)
    }

    pub fn act_on_root(&self, w: WeylElement, root: &Root) -> Root {
        self.word(w).iter().rev().fold(root.clone(), |r, &i| r.reflected(&self.datum, i as usize))
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// The reflection s_α.
    pub fn reflection(&self, root: &Root) -> WeylElement {
        let rho = Weight::rho(self.rank());
        let image = root.reflect_weight(&self.datum, &rho);
        self.by_fingerprint(&image).expect("reflection of a root lies in the group")
    }

    /// All reflections, in the order of [`WeylGroup::positive_roots`].
    pub fn reflections(&self) -> Vec<WeylElement> {
        self.positive_roots.iter().map(|r| self.reflection(r)).collect()
    }

    /// Dot-separated 1-based reduced word, `e` for the identity.
    pub fn format_word(&self, w: WeylElement) -> String {
        format_word(self.word(w))
    }

    /// Parses `e`, `s1.s3.s2`, `s1s3s2`, `1.3.2` or `132` as a product of simple
    /// reflections.
    pub fn parse_word(&self, s: &str) -> Result<WeylElement> {
        let word = parse_word(s, self.rank())?;
        Ok(self.from_word(&word))
    }
}

pub fn format_word(word: &[u8]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(".")
    }
}

pub fn parse_word(s: &str, rank: usize) -> Result<Vec<usize>> {
    let s = s.trim();
    if s == "e" || s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let parts: Vec<&str> = if s.contains('.') {
        s.split('.').collect()
    } else if s.chars().all(|c| c.is_ascii_digit()) {
        (0..s.len()).map(|k| &s[k..k + 1]).collect()
    } else {
        s.split('s').filter(|p| !p.is_empty()).collect()
    };
    for p in parts {
        let p = p.trim().trim_start_matches('s');
        let i: usize = p.parse().map_err(|_| Error::Parse(format!("invalid word {s:?}")))?;
        if i == 0 || i > rank {
            return Err(Error::Parse(format!("generator s{i} out of range 1..={rank}")));
        }
        out.push(i - 1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::from_name(name).unwrap()
    }

    /// Upward closure of the relation w < wt over all reflections t with
    /// ℓ(w) < ℓ(wt); `above[w]` is the set of v with w <= v.
    fn closure_oracle(g: &WeylGroup) -> Vec<Vec<bool>> {
        let n = g.order();
        let refl = g.reflections();
        let mut by_len: Vec<WeylElement> = g.elements().collect();
        by_len.sort_by_key(|&w| std::cmp::Reverse(g.length(w)));
        let mut above = vec![Vec::new(); n];
        for w in by_len {
            let mut set = vec![false; n];
            set[w.index()] = true;
            for &t in &refl {
                let wt = g.multiply(w, t);
                if g.length(wt) > g.length(w) {
                    for (s, &b) in set.iter_mut().zip(&above[wt.index()]) {
                        *s |= b;
                    }
                }
            }
            above[w.index()] = set;
        }
        above
    }

    #[test]
    fn orders_match_formulas() {
        for name in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"] {
            let g = group(name);
            assert_eq!(g.order() as u128, g.datum().group_order(), "{name}");
        }
        assert_eq!(group("A2").order(), 6);
        assert_eq!(group("A1").order(), 2);
        assert_eq!(group("B3").order(), 48);
    }

    #[test]
    fn a2_relations() {
        let g = group("A2");
        let s1 = g.from_word(&[0]);
        let s2 = g.from_word(&[1]);
        assert_eq!(g.multiply(s1, s1), g.identity());
        assert_eq!(g.multiply(g.identity(), s2), s2);
        assert_eq!(g.from_word(&[0, 1, 0]), g.from_word(&[1, 0, 1]));
        let w0 = g.longest();
        assert_eq!(g.length(w0), 3);
        assert_eq!(g.word(w0), &[0, 1, 0]);
        assert_eq!(g.right_descents(w0), vec![0, 1]);
        assert_eq!(g.left_descents(w0), vec![0, 1]);
        assert_eq!(g.length(g.identity()), 0);
    }

    #[test]
    fn canonical_words_are_shortlex_minimal() {
        let g = group("B3");
        // brute force: enumerate words by length in lex order
        let mut best: HashMap<WeylElement, Vec<u8>> = HashMap::new();
        let mut frontier: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..=g.length(g.longest()) {
            let mut next = Vec::new();
            for w in &frontier {
                let e = g.from_word(&w.iter().map(|&i| i as usize).collect::<Vec<_>>());
                best.entry(e).or_insert_with(|| w.clone());
                for i in 0..3u8 {
                    let mut x = w.clone();
                    x.push(i);
                    next.push(x);
                }
            }
            frontier = next;
        }
        for w in g.elements() {
            assert_eq!(g.word(w), best[&w].as_slice());
        }
    }

    #[test]
    fn descents_agree_with_lengths() {
        for name in ["A3", "B3", "G2", "D4"] {
            let g = group(name);
            for w in g.elements() {
                for i in 0..g.rank() {
                    let ws = g.mul_simple_right(w, i);
                    let sw = g.mul_simple_left(i, w);
                    assert_eq!(g.has_right_descent(w, i), g.length(ws) < g.length(w));
                    assert_eq!(g.has_left_descent(w, i), g.length(sw) < g.length(w));
                    assert_eq!(g.mul_simple_left(i, g.mul_simple_left(i, w)), w);
                }
                assert_eq!(g.multiply(w, g.inverse(w)), g.identity());
            }
        }
    }

    #[test]
    fn bruhat_matches_reflection_closure() {
        for name in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "B4", "C4", "D4", "G2"] {
            let g = group(name);
            let above = closure_oracle(&g);
            for u in g.elements() {
                for v in g.elements() {
                    assert_eq!(g.bruhat_leq(u, v), above[u.index()][v.index()], "{name}");
                }
            }
        }
    }

    #[test]
    fn bruhat_matches_reflection_closure_rank5() {
        for name in ["A5", "B5", "C5", "D5"] {
            let g = group(name);
            let above = closure_oracle(&g);
            for u in g.elements() {
                for v in g.elements() {
                    assert_eq!(g.bruhat_leq(u, v), above[u.index()][v.index()], "{name}");
                }
            }
        }
    }

    #[test]
    fn deodhar_criterion() {
        for name in ["A3", "B3", "C3", "D4", "G2", "B4"] {
            let g = group(name);
            let r = g.rank();
            let hats: Vec<Vec<usize>> = (0..r).map(|i| (0..r).filter(|&j| j != i).collect()).collect();
            let reps: Vec<Vec<WeylElement>> =
                g.elements().map(|w| hats.iter().map(|h| g.min_coset_rep(w, h)).collect()).collect();
            for u in g.elements() {
                for v in g.elements() {
                    let via_cosets = (0..r).all(|i| g.bruhat_leq(reps[u.index()][i], reps[v.index()][i]));
                    assert_eq!(g.bruhat_leq(u, v), via_cosets, "{name}");
                }
            }
        }
    }

    #[test]
    fn parabolic_intersection_law() {
        for name in ["A4", "B4", "C3", "D4"] {
            let g = group(name);
            let r = g.rank();
            for i in 0..r {
                let tail: Vec<usize> = (i..r).collect();
                for w in g.elements() {
                    let in_all_hats =
                        (0..i).all(|j| g.in_parabolic(w, &(0..r).filter(|&k| k != j).collect::<Vec<_>>()));
                    assert_eq!(in_all_hats, g.in_parabolic(w, &tail));
                }
            }
        }
    }

    #[test]
    fn min_coset_rep_examples() {
        let g = group("A2");
        let w0 = g.from_word(&[0, 1, 0]);
        // w_o W_{s_2} = {s1s2s1, s2s1}, w_o W_{s_1} = {s1s2s1, s1s2}
        assert_eq!(g.min_coset_rep(w0, &[1]), g.from_word(&[1, 0]));
        assert_eq!(g.min_coset_rep(w0, &[0]), g.from_word(&[0, 1]));
        assert_eq!(g.min_coset_rep(g.identity(), &[0, 1]), g.identity());
        assert_eq!(g.min_coset_rep(w0, &[]), w0);
        for w in g.elements() {
            let m = g.min_coset_rep(w, &[0]);
            assert_eq!(g.min_coset_rep(m, &[0]), m);
            // minimal length over the coset {w, w s_1}
            let other = g.mul_simple_right(w, 0);
            assert_eq!(g.length(m), g.length(w).min(g.length(other)));
        }
    }

    #[test]
    fn action_on_weights() {
        let g = group("A2");
        let d = g.datum().clone();
        let w1 = d.fundamental_weights()[0].clone();
        let w2 = d.fundamental_weights()[1].clone();
        let s1 = g.from_word(&[0]);
        let s2 = g.from_word(&[1]);
        // s_j ω_i = ω_i for i != j
        assert_eq!(g.act_on_weight(s2, &w1).unwrap(), w1);
        // s_1 ω_1 = ω_1 - α_1
        let alpha1: Vec<Rational64> = d.simple_roots()[0].iter().map(|&x| Rational64::from_integer(x)).collect();
        let expected: Vec<Rational64> = w1.iter().zip(&alpha1).map(|(a, b)| a - b).collect();
        assert_eq!(g.act_on_weight(s1, &w1).unwrap(), expected);
        // w_o ω_1 = -ω_2
        let neg: Vec<Rational64> = w2.iter().map(|x| -x).collect();
        assert_eq!(g.act_on_weight(g.longest(), &w1).unwrap(), neg);
        assert!(g.act_on_weight(s1, &w1[..2]).is_err());
    }

    #[test]
    fn action_is_a_homomorphism_and_isometry() {
        let g = group("B3");
        let v: Vec<Rational64> = vec![Rational64::new(1, 2), Rational64::new(-3, 1), Rational64::new(5, 3)];
        let norm = |x: &[Rational64]| x.iter().fold(Rational64::zero(), |a, y| a + y * y);
        for u in g.elements().step_by(5) {
            for w in g.elements().step_by(7) {
                let uw = g.multiply(u, w);
                let lhs = g.act_on_weight(uw, &v).unwrap();
                let rhs = g.act_on_weight(u, &g.act_on_weight(w, &v).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(norm(&lhs), norm(&v));
            }
        }
        assert_eq!(g.act_on_weight(g.identity(), &v).unwrap(), v);
    }

    #[test]
    fn reflections_and_longest_elements() {
        let g = group("B2");
        assert_eq!(g.positive_roots().len(), 4);
        for (i, r) in g.positive_roots().iter().enumerate() {
            let t = g.reflection(r);
            assert_eq!(g.multiply(t, t), g.identity());
            assert_ne!(t, g.identity(), "root {i}");
        }
        for i in 0..2 {
            assert_eq!(g.reflection(&Root::simple(g.datum(), i)), g.from_word(&[i]));
        }
        for name in ["A3", "B3", "D4", "G2"] {
            let g = group(name);
            let w0 = g.longest();
            assert_eq!(g.length(w0), g.positive_roots().len());
            assert!(g.elements().all(|w| g.length(w) <= g.length(w0)));
            let j = [0, g.rank() - 1];
            let wj = g.longest_element(&j);
            for &i in &j {
                assert!(g.has_right_descent(wj, i));
            }
        }
    }

    #[test]
    fn word_parsing() {
        let g = group("A3");
        assert_eq!(g.parse_word("e").unwrap(), g.identity());
        let w = g.parse_word("s1.s3.s2").unwrap();
        assert_eq!(g.format_word(w), "s1.s3.s2");
        assert_eq!(g.parse_word("s3s1s2").unwrap(), w);
        assert!(g.parse_word("s4").is_err());
        assert!(g.parse_word("s1.x").is_err());
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(matches!(WeylGroup::from_name("B8"), Err(Error::TooLarge { .. })));
    }
}
