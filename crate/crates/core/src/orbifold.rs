//! Closed orientable 2-orbifolds: Euler characteristic, geometry, rank
//! bounds for their fundamental groups, and Riemann–Hurwitz arithmetic for
//! branched covers by closed surfaces.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::fpgroup::ParseError;
use crate::text::Cursor;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbifoldError {
    #[error("cone index {0} is below 2")]
    BadCone(i64),
    #[error("orbifold {0} has positive Euler characteristic")]
    PositiveEuler(Orbifold2),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Underlying surface genus plus cone point indices, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "OrbifoldJson", into = "OrbifoldJson")]
pub struct Orbifold2 {
    genus: u32,
    cones: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct OrbifoldJson {
    genus: u32,
    cones: Vec<i64>,
}

impl TryFrom<OrbifoldJson> for Orbifold2 {
    type Error = OrbifoldError;

    fn try_from(j: OrbifoldJson) -> Result<Self, Self::Error> {
        Orbifold2::new(j.genus, &j.cones)
    }
}

impl From<Orbifold2> for OrbifoldJson {
    fn from(o: Orbifold2) -> Self {
        OrbifoldJson {
            genus: o.genus,
            cones: o.cones.iter().map(|&v| v as i64).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Spherical,
    Euclidean,
    Hyperbolic,
    /// Teardrop or spindle with unequal indices; not covered by a surface.
    Bad,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Geometry::Spherical => "spherical",
            Geometry::Euclidean => "euclidean",
            Geometry::Hyperbolic => "hyperbolic",
            Geometry::Bad => "bad",
        };
        f.write_str(s)
    }
}

impl Orbifold2 {
    pub fn new(genus: u32, cones: &[i64]) -> Result<Self, OrbifoldError> {
        if let Some(&v) = cones.iter().find(|&&v| v < 2) {
            return Err(OrbifoldError::BadCone(v));
        }
        let mut cones: Vec<u32> = cones.iter().map(|&v| v as u32).collect();
        cones.sort_unstable();
        Ok(Orbifold2 { genus, cones })
    }

    pub fn sphere_with(cones: &[i64]) -> Result<Self, OrbifoldError> {
        Self::new(0, cones)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn cones(&self) -> &[u32] {
        &self.cones
    }

    /// Number of cone points.
    pub fn cone_count(&self) -> usize {
        self.cones.len()
    }

    /// `2 - 2g' - sum(1 - 1/v)`.
    pub fn euler_char(&self) -> Rational {
        let mut chi = Rational::from_integer(2 - 2 * self.genus as i128);
        for &v in &self.cones {
            chi -= Rational::one() - Rational::new(1, v as i128);
        }
        chi
    }

    pub fn is_bad(&self) -> bool {
        self.genus == 0
            && match self.cones.as_slice() {
                [_] => true,
                [p, q] => p != q,
                _ => false,
            }
    }

    pub fn geometry_class(&self) -> Geometry {
        if self.is_bad() {
            return Geometry::Bad;
        }
        match self.euler_char().cmp(&Rational::zero()) {
            Ordering::Greater => Geometry::Spherical,
            Ordering::Equal => Geometry::Euclidean,
            Ordering::Less => Geometry::Hyperbolic,
        }
    }

    /// Upper bound on the rank of the orbifold fundamental group:
    /// `2g'` without cone points, `2g' + k - 1` otherwise.
    pub fn fuchsian_rank_upper_bound(&self) -> Result<u32, OrbifoldError> {
        if self.euler_char() > Rational::zero() {
            return Err(OrbifoldError::PositiveEuler(self.clone()));
        }
        let k = self.cones.len() as u32;
        Ok(if k == 0 {
            2 * self.genus
        } else {
            2 * self.genus + k - 1
        })
    }
}

impl fmt::Display for Orbifold2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ORB[g={};", self.genus)?;
        if !self.cones.is_empty() {
            let vs: Vec<String> = self.cones.iter().map(u32::to_string).collect();
            write!(f, " {}", vs.join(", "))?;
        }
        write!(f, "]")
    }
}

impl FromStr for Orbifold2 {
    type Err = OrbifoldError;

    /// `ORB[g=<int>; v1, v2, ...]`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor::new(s);
        c.expect("ORB")?;
        c.expect("[")?;
        c.expect("g")?;
        c.expect("=")?;
        let (genus, gspan) = c.integer()?;
        if genus < 0 {
            return Err(ParseError::new("genus must be non-negative", gspan.0, gspan.1).into());
        }
        let mut cones = Vec::new();
        if c.eat(";") && !c.peek_is("]") {
            loop {
                let (v, span) = c.integer()?;
                if v < 2 {
                    return Err(ParseError::new("cone index must be at least 2", span.0, span.1).into());
                }
                cones.push(v);
                if !c.eat(",") {
                    break;
                }
            }
        }
        c.expect("]")?;
        c.end()?;
        Orbifold2::new(genus as u32, &cones)
    }
}

/// How the preimages of each cone point are ramified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ramification {
    /// The source is a manifold surface: every preimage of a cone point of
    /// index `v` has local degree exactly `v`.
    Manifold,
    /// Local degrees over each cone point, in cone order. Each must equal
    /// the cone index for a manifold source and they must sum to the degree.
    Explicit(Vec<Vec<u32>>),
}

/// A degree-`n` branched cover of a 2-orbifold by a closed surface of genus
/// `g`, satisfying `2 - 2g = n * chi(target)` exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchedCoverData {
    degree: u32,
    source_genus: u32,
    target: Orbifold2,
}

impl BranchedCoverData {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn source_genus(&self) -> u32 {
        self.source_genus
    }

    pub fn target(&self) -> &Orbifold2 {
        &self.target
    }
}

/// Solves Riemann–Hurwitz for the source genus; `None` when the profile is
/// inconsistent or `2 - 2g` is not a non-positive-genus even integer.
pub fn riemann_hurwitz_solve(
    degree: u32,
    target: &Orbifold2,
    profile: &Ramification,
) -> Option<BranchedCoverData> {
    if degree == 0 {
        return None;
    }
    match profile {
        Ramification::Manifold => {
            if target.cones.iter().any(|&v| !degree.is_multiple_of(v)) {
                return None;
            }
        }
        Ramification::Explicit(parts) => {
            if parts.len() != target.cones.len() {
                return None;
            }
            for (v, local) in target.cones.iter().zip(parts) {
                if local.iter().any(|d| d != v) || local.iter().sum::<u32>() != degree {
                    return None;
                }
            }
        }
    }
    let two_minus_2g = target.euler_char() * Rational::from_integer(degree as i128);
    if !two_minus_2g.is_integer() {
        return None;
    }
    let x = two_minus_2g.to_integer();
    if x.is_odd() || x > 2 {
        return None;
    }
    Some(BranchedCoverData {
        degree,
        source_genus: ((2 - x) / 2) as u32,
        target: target.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma23Outcome {
    pub holds: bool,
    /// `lhs - rhs`
    pub slack: i64,
    /// Rank of the source surface group, `2g`.
    pub lhs: i64,
    /// Rank bound of the target, less one for double covers of the sphere
    /// branched only over index-2 points.
    pub rhs: i64,
    pub allowance: bool,
}

/// Compares the surface group rank against the target's rank bound.
pub fn lemma23_check(data: &BranchedCoverData) -> Result<Lemma23Outcome, OrbifoldError> {
    if data.source_genus < 1 {
        return Err(OrbifoldError::Unsupported(
            "source surface must have non-positive Euler characteristic".into(),
        ));
    }
    let bound = data.target.fuchsian_rank_upper_bound()? as i64;
    let allowance = data.degree == 2 && data.target.genus == 0 && data.target.cones.iter().all(|&v| v == 2);
    let lhs = 2 * data.source_genus as i64;
    let rhs = bound - i64::from(allowance);
    Ok(Lemma23Outcome {
        holds: lhs >= rhs,
        slack: lhs - rhs,
        lhs,
        rhs,
        allowance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepCaps {
    pub max_degree: u32,
    pub max_genus: u32,
    pub max_cones: usize,
    pub max_index: u32,
}

impl Default for SweepCaps {
    fn default() -> Self {
        SweepCaps {
            max_degree: 6,
            max_genus: 3,
            max_cones: 8,
            max_index: 12,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    /// RH-consistent data with both Euler characteristics non-positive.
    pub checked: usize,
    pub violations: Vec<(BranchedCoverData, Lemma23Outcome)>,
}

/// Every nondecreasing cone list of length `<= max_len` over `2..=max_index`.
pub fn cone_multisets(max_len: usize, max_index: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, max_index: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if left == 0 {
            return;
        }
        for v in start..=max_index {
            cur.push(v);
            go(v, max_index, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(2, max_index, max_len, &mut Vec::new(), &mut out);
    out
}

/// Runs [`lemma23_check`] over every Riemann–Hurwitz consistent manifold
/// cover within `caps`.
pub fn lemma23_sweep(caps: SweepCaps) -> SweepReport {
    let mut report = SweepReport::default();
    let multisets = cone_multisets(caps.max_cones, caps.max_index);
    for genus in 0..=caps.max_genus {
        for cones in &multisets {
            let target = Orbifold2 {
                genus,
                cones: cones.clone(),
            };
            if target.euler_char() > Rational::zero() {
                continue;
            }
            for n in 1..=caps.max_degree {
                let Some(data) = riemann_hurwitz_solve(n, &target, &Ramification::Manifold) else {
                    continue;
                };
                if data.source_genus < 1 {
                    continue;
                }
                report.checked += 1;
                let outcome = lemma23_check(&data).expect("preconditions hold in the sweep");
                if !outcome.holds {
                    report.violations.push((data, outcome));
                }
            }
        }
    }
    report
}

/// Divisors `k` of `l` for which `(2, 3, k)` is hyperbolic, ascending.
pub fn triangle_quotient_candidates(l: u64) -> Result<Vec<u64>, OrbifoldError> {
    if l < 7 {
        return Err(OrbifoldError::Unsupported(format!(
            "(2, 3, {l}) is not a hyperbolic triangle group"
        )));
    }
    Ok((7..=l).filter(|k| l.is_multiple_of(*k)).collect())
}

/// The (2, 3, ∞) limit: hyperbolic orbifolds with `chi > -1/6` are finite
/// in number, below that the cone indices must be capped explicitly.
pub fn accumulation_threshold() -> Rational {
    Rational::new(-1, 6)
}

/// All hyperbolic orbifolds with `c <= chi < 0`, sorted by descending
/// Euler characteristic and then by `(genus, cones)`.
///
/// Genus and cone count are capped by `2g' + k/2 <= 2 - c`. Cone indices
/// are capped by `1 / (c + 1/6)` when `c > -1/6`; otherwise `max_index`
/// must be given.
pub fn enumerate_orbifolds_chi_at_least(
    c: Rational,
    max_index: Option<u32>,
) -> Result<Vec<Orbifold2>, OrbifoldError> {
    if !c.is_negative() {
        return Err(OrbifoldError::Unsupported("the bound must be negative".into()));
    }
    let index_cap = if c > accumulation_threshold() {
        let derived = (Rational::one() / (c - accumulation_threshold()))
            .floor()
            .to_integer() as u32;
        max_index.map_or(derived, |m| m.min(derived))
    } else {
        max_index.ok_or_else(|| {
            OrbifoldError::Unsupported(format!(
                "infinitely many hyperbolic orbifolds have chi >= {c}; give an index cap"
            ))
        })?
    };
    let budget = Rational::from_integer(2) - c;
    let genus_cap = (budget / Rational::from_integer(2)).floor().to_integer() as u32;
    let cone_cap = (budget * Rational::from_integer(2)).floor().to_integer() as usize;

    let mut out = Vec::new();
    for genus in 0..=genus_cap {
        for cones in cone_multisets(cone_cap, index_cap.max(1)) {
            let o = Orbifold2 { genus, cones };
            let chi = o.euler_char();
            if chi.is_negative() && chi >= c {
                out.push(o);
            }
        }
    }
    out.sort_by(|a, b| {
        b.euler_char()
            .cmp(&a.euler_char())
            .then_with(|| (a.genus, &a.cones).cmp(&(b.genus, &b.cones)))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orb(g: u32, cones: &[i64]) -> Orbifold2 {
        Orbifold2::new(g, cones).unwrap()
    }

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(orb(0, &[2, 3, 7]).euler_char(), q(-1, 42));
        assert_eq!(orb(1, &[]).euler_char(), q(0, 1));
        assert_eq!(orb(0, &[2, 3, 5]).euler_char(), q(1, 30));
    }

    #[test]
    fn geometry() {
        assert_eq!(orb(0, &[2, 3, 7]).geometry_class(), Geometry::Hyperbolic);
        assert_eq!(orb(0, &[2, 3, 6]).geometry_class(), Geometry::Euclidean);
        assert_eq!(orb(0, &[2, 3, 5]).geometry_class(), Geometry::Spherical);
        assert_eq!(orb(0, &[5]).geometry_class(), Geometry::Bad);
        assert_eq!(orb(0, &[2, 3]).geometry_class(), Geometry::Bad);
        assert_eq!(orb(0, &[3, 3]).geometry_class(), Geometry::Spherical);
        assert!(matches!(
            Orbifold2::new(0, &[1, 2]),
            Err(OrbifoldError::BadCone(1))
        ));
    }

    #[test]
    fn rank_bounds() {
        assert_eq!(orb(0, &[2; 6]).fuchsian_rank_upper_bound().unwrap(), 5);
        assert_eq!(orb(0, &[2, 3, 7]).fuchsian_rank_upper_bound().unwrap(), 2);
        assert_eq!(orb(3, &[]).fuchsian_rank_upper_bound().unwrap(), 6);
        assert_eq!(orb(1, &[2, 2]).fuchsian_rank_upper_bound().unwrap(), 3);
        assert!(orb(0, &[2, 3, 5]).fuchsian_rank_upper_bound().is_err());
    }

    #[test]
    fn riemann_hurwitz() {
        for m in 1..6 {
            let t = orb(0, &vec![2; 2 * m]);
            let d = riemann_hurwitz_solve(2, &t, &Ramification::Manifold).unwrap();
            assert_eq!(d.source_genus() as usize, 2 * m / 2 - 1);
        }
        let d = riemann_hurwitz_solve(1, &orb(4, &[]), &Ramification::Manifold).unwrap();
        assert_eq!(d.source_genus(), 4);
        assert!(riemann_hurwitz_solve(6, &orb(0, &[2, 3, 7]), &Ramification::Manifold).is_none());
        // 84 is the smallest degree for (2, 3, 7): Hurwitz's bound for genus 3
        let d = riemann_hurwitz_solve(168, &orb(0, &[2, 3, 7]), &Ramification::Manifold).unwrap();
        assert_eq!(d.source_genus(), 3);
        let explicit = Ramification::Explicit(vec![vec![2, 2, 2], vec![3, 3], vec![2, 2, 2]]);
        assert!(riemann_hurwitz_solve(6, &orb(0, &[2, 3, 4]), &explicit).is_none());
        let explicit = Ramification::Explicit(vec![vec![2, 2], vec![2, 2], vec![2, 2], vec![2, 2]]);
        assert_eq!(
            riemann_hurwitz_solve(4, &orb(0, &[2, 2, 2, 2]), &explicit)
                .unwrap()
                .source_genus(),
            1
        );
    }

    #[test]
    fn lemma23_examples() {
        let d = riemann_hurwitz_solve(2, &orb(0, &[2; 6]), &Ramification::Manifold).unwrap();
        assert_eq!(d.source_genus(), 2);
        let o = lemma23_check(&d).unwrap();
        assert!(o.holds && o.allowance);
        assert_eq!((o.slack, o.rhs), (0, 4));
        let d = riemann_hurwitz_solve(1, &orb(2, &[]), &Ramification::Manifold).unwrap();
        let o = lemma23_check(&d).unwrap();
        assert!(o.holds && !o.allowance);
        assert_eq!(o.slack, 0);
    }

    #[test]
    fn lemma23_sweep_genus_one_counterexamples() {
        // A torus covers the (2,2,2,2) pillowcase with degree 4 or 6 (the
        // double cover composed with an unbranched torus cover). The
        // pillowcase group has rank 3 while the torus group has rank 2.
        let report = lemma23_sweep(SweepCaps::default());
        assert!(report.checked > 500);
        let found: Vec<(u32, u32, Vec<u32>)> = report
            .violations
            .iter()
            .map(|(d, _)| (d.degree(), d.source_genus(), d.target().cones().to_vec()))
            .collect();
        assert_eq!(found, vec![(4, 1, vec![2, 2, 2, 2]), (6, 1, vec![2, 2, 2, 2])]);
    }

    #[test]
    fn triangle_candidates() {
        assert_eq!(triangle_quotient_candidates(14).unwrap(), vec![7, 14]);
        assert_eq!(triangle_quotient_candidates(7).unwrap(), vec![7]);
        assert_eq!(triangle_quotient_candidates(12).unwrap(), vec![12]);
        assert!(triangle_quotient_candidates(6).is_err());
    }

    #[test]
    fn enumeration_boundary() {
        let top = enumerate_orbifolds_chi_at_least(q(-1, 42), None).unwrap();
        assert_eq!(top, vec![orb(0, &[2, 3, 7])]);
        assert!(enumerate_orbifolds_chi_at_least(q(-1, 43), None)
            .unwrap()
            .is_empty());
        assert!(enumerate_orbifolds_chi_at_least(q(-1, 6), None).is_err());
        assert!(enumerate_orbifolds_chi_at_least(q(0, 1), None).is_err());
    }

    #[test]
    fn enumeration_snapshot_at_minus_one_sixth() {
        let list = enumerate_orbifolds_chi_at_least(q(-1, 6), Some(12)).unwrap();
        assert!(list.iter().all(|o| o.genus() == 0 && o.cone_count() <= 4));
        let text: Vec<String> = list.iter().map(|o| o.to_string()).collect();
        let expected = [
            "2, 3, 7",
            "2, 3, 8",
            "2, 4, 5",
            "2, 3, 9",
            "2, 3, 10",
            "2, 3, 11",
            "2, 3, 12",
            "2, 4, 6",
            "3, 3, 4",
            "2, 5, 5",
            "2, 4, 7",
            "2, 4, 8",
            "2, 5, 6",
            "3, 3, 5",
            "2, 4, 9",
            "2, 4, 10",
            "2, 5, 7",
            "2, 4, 11",
            "2, 2, 2, 3",
            "2, 4, 12",
            "2, 6, 6",
            "3, 3, 6",
            "3, 4, 4",
        ];
        let expected: Vec<String> = expected.iter().map(|c| format!("ORB[g=0; {c}]")).collect();
        assert_eq!(text, expected);

        // brute force over ordered tuples
        let mut oracle = std::collections::BTreeSet::new();
        for k in 0..=4usize {
            let mut idx = vec![2i64; k];
            loop {
                let mut chi = q(2, 1);
                for &v in &idx {
                    chi -= q(v as i128 - 1, v as i128);
                }
                if chi < q(0, 1) && chi >= q(-1, 6) {
                    let mut c = idx.clone();
                    c.sort();
                    oracle.insert(c);
                }
                let Some(pos) = idx.iter().position(|&v| v < 12) else {
                    break;
                };
                idx[pos] += 1;
                for v in &mut idx[..pos] {
                    *v = 2;
                }
            }
        }
        let mut got: Vec<Vec<i64>> = list
            .iter()
            .map(|o| o.cones().iter().map(|&v| v as i64).collect())
            .collect();
        got.sort();
        assert_eq!(got, oracle.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn symbols() {
        let o: Orbifold2 = "ORB[g=0; 7, 3, 2]".parse().unwrap();
        assert_eq!(o.to_string(), "ORB[g=0; 2, 3, 7]");
        assert_eq!("ORB[ g = 1 ; ]".parse::<Orbifold2>().unwrap(), orb(1, &[]));
        assert_eq!(orb(1, &[]).to_string(), "ORB[g=1;]");
        let e = "ORB[g=0; 2, 1]".parse::<Orbifold2>().unwrap_err();
        assert!(matches!(
            e,
            OrbifoldError::Parse(ParseError { span: (12, 13), .. })
        ));
        let j = serde_json::to_string(&o).unwrap();
        assert_eq!(j, r#"{"genus":0,"cones":[2,3,7]}"#);
        assert_eq!(serde_json::from_str::<Orbifold2>(&j).unwrap(), o);
        assert!(serde_json::from_str::<Orbifold2>(r#"{"genus":0,"cones":[1]}"#).is_err());
    }
}
