//! Complete flags in C^n as invertible rational matrices, with exact
//! evaluation of Plücker coordinates (initial column minors).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::patterns::{generic_pattern, VanishingPattern};
use crate::perm::{Perm, Subset, TypeAGroup};
use crate::plucker::PluckerSpace;

/// Bound on the absolute value of the random entries used by
/// [`random_cell_point`].
pub const SAMPLE_RANGE: i64 = 1000;
/// Number of resampling attempts in [`random_cell_point`].
pub const SAMPLE_RETRIES: usize = 64;

/// A complete flag `F_1 ⊂ ... ⊂ F_n`, where `F_i` is spanned by the first
/// `i` columns of an invertible matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    n: usize,
    /// Row-major entries.
    entries: Vec<BigRational>,
}

impl Flag {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Flag> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::Dimension("a flag needs n >= 2".into()));
        }
        if let Some(row) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension(format!("row of length {} in a {n}x{n} matrix", row.len())));
        }
        let flag = Flag { n, entries: rows.into_iter().flatten().collect() };
        if flag.determinant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(flag)
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Flag> {
        Flag::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect())
    }

    pub fn identity(n: usize) -> Flag {
        let entries =
            (0..n * n).map(|k| if k / n == k % n { BigRational::one() } else { BigRational::zero() }).collect();
        Flag { n, entries }
    }

    /// The coordinate flag π_w: column i is the basis vector e_{w(i)}.
    pub fn coordinate(w: &Perm) -> Flag {
        let n = w.n();
        let mut entries = vec![BigRational::zero(); n * n];
        for col in 0..n {
            entries[w.apply(col) * n + col] = BigRational::one();
        }
        Flag { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Flag) -> Flag {
        let n = self.n;
        let mut entries = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.entry(k, j);
                }
            }
        }
        Flag { n, entries }
    }

    pub fn determinant(&self) -> BigRational {
        let rows: Vec<usize> = (0..self.n).collect();
        self.minor(&rows, self.n)
    }

    /// Determinant of the submatrix on `rows` and the first `rows.len()`
    /// columns, by fraction-free elimination after clearing denominators
    /// column by column.
    fn minor(&self, rows: &[usize], k: usize) -> BigRational {
        debug_assert_eq!(rows.len(), k);
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = vec![Vec::with_capacity(k); k];
        for col in 0..k {
            let lcm = rows.iter().fold(BigInt::one(), |acc, &r| {
                let d = self.entry(r, col).denom();
                acc.lcm(d)
            });
            for (i, &r) in rows.iter().enumerate() {
                let e = self.entry(r, col);
                m[i].push(e.numer() * (&lcm / e.denom()));
            }
            scale *= lcm;
        }
        BigRational::new(bareiss(m), scale)
    }

    /// The Plücker coordinate p_I: the minor on rows I and columns
    /// `1..|I|`.
    pub fn plucker_coordinate(&self, subset: Subset) -> Result<BigRational> {
        let k = subset.len();
        if k == 0 || k >= self.n || subset.max().unwrap() >= self.n {
            return Err(Error::Dimension(format!("{subset} is not a proper nonempty subset of [1,{}]", self.n)));
        }
        let rows: Vec<usize> = subset.iter().collect();
        Ok(self.minor(&rows, k))
    }

    /// The vanishing pattern over all Plücker weights of `space`, which must
    /// be `A_{n-1}`.
    pub fn vanishing_pattern(&self, space: &PluckerSpace) -> Result<VanishingPattern> {
        let n = space.group().check_type_a()?;
        if n != self.n {
            return Err(Error::Dimension(format!("{}x{} flag in {}", self.n, self.n, space.datum())));
        }
        let mut pattern = VanishingPattern::zeros(space);
        for id in space.ids() {
            let subset = space.subset(id).expect("type A");
            pattern.set(id, !self.plucker_coordinate(subset)?.is_zero());
        }
        Ok(pattern)
    }

    /// Parses a JSON matrix: an array of rows whose entries are integers or
    /// strings such as `"-3/4"`. An object with a `"matrix"` field is also
    /// accepted.
    pub fn from_json(text: &str) -> Result<Flag> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = match &value {
            Value::Object(map) => map.get("matrix").ok_or_else(|| Error::Parse("missing \"matrix\"".into()))?,
            v => v,
        };
        let rows = rows.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("expected an array of entries".into()))?
                    .iter()
                    .map(|e| match e {
                        Value::String(s) => parse_rational(s),
                        Value::Number(x) => parse_rational(&x.to_string()),
                        other => Err(Error::Parse(format!("invalid entry {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Flag::from_rows(parsed)
    }

    /// Parses a CSV matrix, one row per line; blank lines and lines starting
    /// with `#` are skipped.
    pub fn from_csv(text: &str) -> Result<Flag> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split(',').map(parse_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Flag::from_rows(rows)
    }

    /// JSON or CSV, chosen by the first non-blank character.
    pub fn parse(text: &str) -> Result<Flag> {
        if text.trim_start().starts_with(['[', '{']) {
            Flag::from_json(text)
        } else {
            Flag::from_csv(text)
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .chunks(self.n)
                .map(|r| Value::Array(r.iter().map(|e| Value::String(e.to_string())).collect()))
                .collect(),
        )
    }
}

impl FromStr for Flag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Flag> {
        Flag::parse(s)
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    BigRational::from_str(t).map_err(|_| Error::Parse(format!("invalid rational {t:?}")))
}

/// Determinant of an integer matrix by Bareiss elimination.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let k = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| !m[i][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for i in c + 1..k {
            for j in c + 1..k {
                let v = (&m[c][c] * &m[i][j] - &m[i][c] * &m[c][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[c][c].clone();
    }
    if k == 0 {
        return BigInt::one();
    }
    sign * &m[k - 1][k - 1]
}

/// A point of the Schubert cell X°_w of the form u·π_w with u unipotent upper
/// triangular, whose vanishing pattern is the generic pattern of w.
pub fn random_cell_point(space: &PluckerSpace, w: &Perm, seed: u64) -> Result<Flag> {
    let n = space.group().check_type_a()?;
    if w.n() != n {
        return Err(Error::Dimension(format!("permutation of {} letters in {}", w.n(), space.datum())));
    }
    let element = space.group().from_perm(w)?;
    let target = generic_pattern(space, element);
    let pw = Flag::coordinate(w);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_RETRIES {
        let mut u = Flag::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                let mut x = 0;
                while x == 0 {
                    x = rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE);
                }
                u.entries[i * n + j] = BigRational::from_integer(x.into());
            }
        }
        let flag = u.mul(&pw);
        if flag.vanishing_pattern(space)? == target {
            return Ok(flag);
        }
    }
    Err(Error::RetriesExhausted(SAMPLE_RETRIES))
}

/// A random invertible matrix with entries in `-range..=range`, used to probe
/// the pattern space.
pub fn random_flag<R: Rng>(n: usize, range: i64, rng: &mut R) -> Flag {
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-range..=range)).collect()).collect();
        if let Ok(flag) = Flag::from_integers(&rows) {
            return flag;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::check_acceptable;
    use proptest::prelude::{any, prop, prop_assert, proptest};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Leibniz expansion, as an independent determinant.
    fn leibniz(m: &[Vec<BigRational>]) -> BigRational {
        let k = m.len();
        let mut total = BigRational::zero();
        for p in Perm::all(k) {
            let mut term = BigRational::one();
            for (i, row) in m.iter().enumerate() {
                term *= &row[p.apply(i)];
            }
            if p.length() % 2 == 1 {
                term = -term;
            }
            total += term;
        }
        total
    }

    fn sub(s: &str, n: usize) -> Subset {
        Subset::parse(s, n).unwrap()
    }

    #[test]
    fn identity_minors() {
        let id = Flag::identity(4);
        for k in 1..4 {
            assert_eq!(id.plucker_coordinate(Subset::initial(k)).unwrap(), BigRational::one());
        }
        assert!(id.plucker_coordinate(sub("13", 4)).unwrap().is_zero());
        assert!(id.plucker_coordinate(Subset::initial(4)).is_err());
        assert!(id.plucker_coordinate(Subset::EMPTY).is_err());
    }

    #[test]
    fn rejects_singular_and_ragged() {
        assert!(matches!(Flag::from_integers(&[vec![1, 2], vec![2, 4]]), Err(Error::Singular)));
        assert!(matches!(Flag::from_integers(&[vec![1, 2], vec![2]]), Err(Error::Dimension(_))));
    }

    #[test]
    fn coordinate_flags() {
        let w = Perm::parse("321").unwrap();
        let f = Flag::coordinate(&w);
        let expected = Flag::from_integers(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]).unwrap();
        assert_eq!(f, expected);
        assert_eq!(Flag::coordinate(&Perm::identity(4)), Flag::identity(4));
        for n in 2..=6 {
            for w in Perm::all(n) {
                let f = Flag::coordinate(&w);
                for k in 1..n {
                    for s in Subset::all_of_size(n, k) {
                        let nonzero = !f.plucker_coordinate(s).unwrap().is_zero();
                        assert_eq!(nonzero, s == w.prefix(k), "{w} {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn pi_213_support() {
        let space = PluckerSpace::from_name("A2").unwrap();
        let p = Flag::coordinate(&Perm::parse("213").unwrap()).vanishing_pattern(&space).unwrap();
        let ones: Vec<String> = space.ids().filter(|&id| p.get(id)).map(|id| space.format(id)).collect();
        assert_eq!(ones, vec!["2", "12"]);
    }

    #[test]
    fn explicit_small_flag() {
        // columns (1,1,0), (0,0,1), (1,0,0)
        let f = Flag::from_integers(&[vec![1, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let p = |s: &str| f.plucker_coordinate(sub(s, 3)).unwrap();
        assert_eq!(p("1"), BigRational::one());
        assert_eq!(p("2"), BigRational::one());
        assert!(p("3").is_zero());
        assert!(p("12").is_zero());
        assert_eq!(p("13"), BigRational::one());
        assert_eq!(p("23"), BigRational::one());
        let space = PluckerSpace::from_name("A2").unwrap();
        assert!(check_acceptable(&space, &f.vanishing_pattern(&space).unwrap()).accepted);
    }

    #[test]
    fn minors_agree_with_leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=5 {
            for _ in 0..5 {
                let rows: Vec<Vec<BigRational>> =
                    (0..n).map(|_| (0..n).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect()).collect();
                let Ok(f) = Flag::from_rows(rows.clone()) else { continue };
                assert_eq!(f.determinant(), leibniz(&rows));
                for k in 1..n {
                    for s in Subset::all_of_size(n, k) {
                        let m: Vec<Vec<BigRational>> = s.iter().map(|r| rows[r][..k].to_vec()).collect();
                        assert_eq!(f.plucker_coordinate(s).unwrap(), leibniz(&m));
                    }
                }
            }
        }
    }

    #[test]
    fn parsing_round_trips() {
        let f = Flag::from_rows(vec![vec![q(1, 2), q(-3, 4)], vec![q(0, 1), q(5, 1)]]).unwrap();
        assert_eq!(Flag::from_json(&f.to_json().to_string()).unwrap(), f);
        assert_eq!(Flag::from_csv(&f.to_string()).unwrap(), f);
        assert_eq!(Flag::parse("{\"matrix\": [[1, \"2/3\"], [0, -1]]}").unwrap().entry(0, 1), &q(2, 3));
        assert!(Flag::parse("1,x\n0,1").is_err());
    }

    #[test]
    fn random_cell_points_are_generic() {
        for n in 2..=4 {
            let space = PluckerSpace::from_name(&format!("A{}", n - 1)).unwrap();
            for w in Perm::all(n) {
                let x = random_cell_point(&space, &w, 11).unwrap();
                let element = space.group().from_perm(&w).unwrap();
                assert_eq!(x.vanishing_pattern(&space).unwrap(), generic_pattern(&space, element));
                let report = check_acceptable(&space, &x.vanishing_pattern(&space).unwrap());
                assert_eq!(report.witness, Some(element));
            }
        }
        let space = PluckerSpace::from_name("A2").unwrap();
        let w = Perm::parse("231").unwrap();
        let x = random_cell_point(&space, &w, 3).unwrap();
        assert!(x.plucker_coordinate(sub("3", 3)).unwrap().is_zero());
        assert!(!x.plucker_coordinate(sub("23", 3)).unwrap().is_zero());
        for s in ["1", "12", "13"] {
            assert!(!x.plucker_coordinate(sub(s, 3)).unwrap().is_zero());
        }
        assert_eq!(random_cell_point(&space, &w, 3).unwrap(), x);
    }

    proptest! {
        #[test]
        fn three_term_relation(entries in prop::collection::vec((-20i64..=20, 1i64..=6), 9)) {
            let rows: Vec<Vec<BigRational>> = entries.chunks(3).map(|r| r.iter().map(|&(a, b)| q(a, b)).collect()).collect();
            if let Ok(f) = Flag::from_rows(rows) {
                let p = |s: &str| f.plucker_coordinate(sub(s, 3)).unwrap();
                let rel = p("1") * p("23") - p("2") * p("13") + p("3") * p("12");
                prop_assert!(rel.is_zero());
            }
        }

        #[test]
        fn random_flags_are_nondegenerate_and_acceptable(n in 2usize..=6, seed in any::<u64>(), range in 1i64..=3) {
            let space = PluckerSpace::from_name(&format!("A{}", n - 1)).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_flag(n, range, &mut rng);
            let pattern = f.vanishing_pattern(&space).unwrap();
            for level in 0..n - 1 {
                prop_assert!(space.level_ids(level).any(|id| pattern.get(id)));
            }
            prop_assert!(check_acceptable(&space, &pattern).accepted);
            prop_assert!(!f.determinant().is_zero());
        }
    }
}
