//! Trefoil exteriors glued along their boundary tori, the finite-quotient
//! groups used to rule out spherical targets, and the divisor arithmetic of
//! the surgery family.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::fpgroup::{GroupPresentation, IntMatrix, Word};
use crate::orbifold::triangle_quotient_candidates;
use crate::seifert::{normalize, SeifertError, SeifertInvariants};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("gluing matrix has determinant {det}, expected +1 or -1")]
    NonUnimodular { det: i64 },
    #[error("peripheral basis has determinant {det}, expected +1 or -1")]
    BadBasis { det: i64 },
    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("degenerate filling of slope {alpha}/{beta} along the fiber")]
    Degenerate { alpha: i64, beta: i64 },
    #[error("unknown piece {0:?}")]
    UnknownPiece(String),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
}

/// A Seifert piece with one torus boundary component, given by its group
/// and the peripheral basis `(m, l)` written in the `(t, c)` coordinates of
/// the boundary torus, where `t` is the fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertPiece {
    presentation: GroupPresentation,
    t: usize,
    c: usize,
    basis: [[i64; 2]; 2],
}

fn det2(m: &[[i64; 2]; 2]) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

impl SeifertPiece {
    pub fn new(
        presentation: GroupPresentation,
        t: usize,
        c: usize,
        basis: [[i64; 2]; 2],
    ) -> Result<Self, GraphError> {
        let det = det2(&basis);
        if det.abs() != 1 {
            return Err(GraphError::BadBasis { det });
        }
        assert!(t < presentation.num_generators() && c < presentation.num_generators());
        Ok(SeifertPiece {
            presentation,
            t,
            c,
            basis,
        })
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    /// Rows are `m` and `l` in `(t, c)` coordinates.
    pub fn basis(&self) -> [[i64; 2]; 2] {
        self.basis
    }

    /// Rows are `t` and `c` in `(m, l)` coordinates.
    pub fn inverse_basis(&self) -> [[i64; 2]; 2] {
        let [[a, b], [c, d]] = self.basis;
        let det = det2(&self.basis);
        [[d * det, -b * det], [-c * det, a * det]]
    }

    /// `(x, y)` in `(m, l)` coordinates to `(t, c)` coordinates.
    pub fn to_fiber_coords(&self, x: i64, y: i64) -> (i64, i64) {
        let [[a, b], [c, d]] = self.basis;
        (x * a + y * c, x * b + y * d)
    }
}

/// Exterior of the trefoil: `<a, b, c, t | a^2 t, b^3 t, a b c>` with
/// `m = t c^-1` and `l = t^-5 c^6`.
pub fn trefoil_exterior() -> SeifertPiece {
    let p = GroupPresentation::from_strs(&["a", "b", "c", "t"], &["a^2 t", "b^3 t", "a b c"])
        .expect("trefoil presentation parses");
    SeifertPiece::new(p, 3, 2, [[1, -1], [-5, 6]]).expect("trefoil basis is unimodular")
}

/// Two pieces glued by a torus map; the columns of `glue` are the images
/// of `m1` and `l1` in `(m2, l2)` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphManifoldGluing {
    pub piece1: SeifertPiece,
    pub piece2: SeifertPiece,
    pub glue: [[i64; 2]; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingJson {
    pub glue: [[i64; 2]; 2],
    pub basis: String,
}

impl GraphManifoldGluing {
    /// Two trefoil exteriors with `h(l1) = m2` and `h(m1) = l2^-1`.
    pub fn theorem_4_1() -> Self {
        Self::trefoil_pair([[0, 1], [-1, 0]])
    }

    pub fn trefoil_pair(glue: [[i64; 2]; 2]) -> Self {
        GraphManifoldGluing {
            piece1: trefoil_exterior(),
            piece2: trefoil_exterior(),
            glue,
        }
    }

    pub fn from_json(j: &GluingJson) -> Result<Self, GraphError> {
        match j.basis.as_str() {
            "trefoil" => Ok(Self::trefoil_pair(j.glue)),
            other => Err(GraphError::UnknownPiece(other.to_string())),
        }
    }

    pub fn to_json(&self) -> GluingJson {
        GluingJson {
            glue: self.glue,
            basis: "trefoil".to_string(),
        }
    }

    /// Image of `x m1 + y l1` in `(m2, l2)` coordinates.
    pub fn map(&self, x: i64, y: i64) -> (i64, i64) {
        let g = self.glue;
        (g[0][0] * x + g[0][1] * y, g[1][0] * x + g[1][1] * y)
    }
}

fn torus_word(t: usize, c: usize, (x, y): (i64, i64)) -> Word {
    Word::power_of(t, x).concat(&Word::power_of(c, y))
}

/// Amalgamated presentation of the glued manifold: both pieces with their
/// generators suffixed `1` and `2`, plus one relator for each of `m1`, `l1`
/// written in the `(t_i, c_i)` coordinates.
pub fn glue(g: &GraphManifoldGluing) -> Result<GroupPresentation, GraphError> {
    let det = det2(&g.glue);
    if det.abs() != 1 {
        return Err(GraphError::NonUnimodular { det });
    }
    let (p1, p2) = (&g.piece1.presentation, &g.piece2.presentation);
    let n1 = p1.num_generators();
    let names = p1
        .names()
        .iter()
        .map(|n| format!("{n}1"))
        .chain(p2.names().iter().map(|n| format!("{n}2")));
    let rels = p1
        .relators()
        .iter()
        .cloned()
        .chain(p2.relators().iter().map(|r| r.relabel(|x| x + n1)));
    let mut out =
        GroupPresentation::new(names, rels).map_err(|_| GraphError::UnknownPiece("name clash".into()))?;
    let (t1, c1) = (g.piece1.t, g.piece1.c);
    let (t2, c2) = (g.piece2.t + n1, g.piece2.c + n1);
    // l1 first, then m1
    for (x, y) in [(0, 1), (1, 0)] {
        let lhs = torus_word(t1, c1, g.piece1.to_fiber_coords(x, y));
        let (u, v) = g.map(x, y);
        let rhs = torus_word(t2, c2, g.piece2.to_fiber_coords(u, v));
        out.push_relator(lhs.concat(&rhs.inverse()));
    }
    Ok(out)
}

/// `phi(a), phi(b), phi(c), phi(t)` as powers of one generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicImageRule {
    pub exponents: [i64; 4],
    /// Exponent left over by `a^2 t`, `b^3 t` and `a b c`.
    pub residues: [i64; 3],
}

impl CyclicImageRule {
    pub fn new(exponents: [i64; 4]) -> Self {
        let [a, b, c, t] = exponents;
        CyclicImageRule {
            exponents,
            residues: [2 * a + t, 3 * b + t, a + b + c],
        }
    }

    /// The displayed table: `a -> λ^-2, b -> λ^-3, c -> λ^5, t -> λ^6`.
    pub fn as_displayed() -> Self {
        Self::new([-2, -3, 5, 6])
    }

    /// The consistent table: `a -> λ^-3, b -> λ^-2`.
    pub fn consistent() -> Self {
        Self::new([-3, -2, 5, 6])
    }

    pub fn kills_relators(&self) -> bool {
        self.residues == [0, 0, 0]
    }
}

#[derive(Debug, Clone)]
pub struct Lemma44Groups {
    pub case1: CyclicImageRule,
    /// `<a1, b1, c1 | a1^2, b1^3, a1 b1 c1, c1>`
    pub case2: GroupPresentation,
    /// Both quotients with `c1 = c2^6` and `c2 = c1^-6`; the 37 is derived.
    pub case3: GroupPresentation,
    /// The displayed group with `c_i^37` and `c1 = c2^6`.
    pub case3_displayed: GroupPresentation,
}

pub fn lemma44_case_groups() -> Lemma44Groups {
    let gens = ["a1", "b1", "c1", "a2", "b2", "c2"];
    let halves = ["a1^2", "b1^3", "a1 b1 c1", "a2^2", "b2^3", "a2 b2 c2"];
    let with = |extra: &[&str]| {
        let rels: Vec<&str> = halves.iter().chain(extra).copied().collect();
        GroupPresentation::from_strs(&gens, &rels).expect("case presentation parses")
    };
    Lemma44Groups {
        case1: CyclicImageRule::as_displayed(),
        case2: GroupPresentation::from_strs(&["a1", "b1", "c1"], &["a1^2", "b1^3", "a1 b1 c1", "c1"])
            .expect("case 2 parses"),
        case3: with(&["c1 c2^-6", "c2 c1^6"]),
        case3_displayed: with(&["c1^37", "c2^37", "c1 c2^-6"]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryCurve {
    p: i64,
    q: i64,
}

impl SurgeryCurve {
    pub fn new(p: i64, q: i64) -> Result<Self, GraphError> {
        if p.gcd(&q) != 1 {
            return Err(GraphError::NotCoprime { p, q });
        }
        Ok(SurgeryCurve { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `(t, c)` coordinates of `p m + q l`: `(p - 5q, -p + 6q)`.
    pub fn fiber_coords(&self) -> (i64, i64) {
        trefoil_exterior().to_fiber_coords(self.p, self.q)
    }

    /// `(t, c)` coordinates of `-q m + p l`.
    pub fn partner_fiber_coords(&self) -> (i64, i64) {
        trefoil_exterior().to_fiber_coords(-self.q, self.p)
    }
}

fn filled(coords: (i64, i64)) -> Result<SeifertInvariants, GraphError> {
    let (beta, alpha) = coords;
    if alpha == 0 {
        return Err(GraphError::Degenerate { alpha, beta });
    }
    let (alpha, beta) = if alpha < 0 { (-alpha, -beta) } else { (alpha, beta) };
    Ok(normalize(0, 0, &[(2, 1), (3, 1), (alpha, beta)])?)
}

/// The two fillings `(2,1; 3,1; -p+6q, p-5q)` and `(2,1; 3,1; q+6p, -5p-q)`.
pub fn surgery_family(c: SurgeryCurve) -> Result<(SeifertInvariants, SeifertInvariants), GraphError> {
    Ok((filled(c.fiber_coords())?, filled(c.partner_fiber_coords())?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma45Analysis {
    pub p: i64,
    pub q: i64,
    pub gcd_12q_2p: u64,
    /// Divisors `k'` of `gcd(12q, 2p)` with `(2, 3, k')` hyperbolic.
    pub k_prime_candidates: Vec<u64>,
    /// Whether some candidate `k' | 6q+p` extends to `k' | k | 6q-p` with
    /// `(2, 3, k)` hyperbolic and `gcd(k, 6) = 1`.
    pub zhs_possible: bool,
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn lemma45_divisor_analysis(c: SurgeryCurve) -> Result<Lemma45Analysis, GraphError> {
    surgery_family(c)?;
    let (p, q) = (c.p as i128, c.q as i128);
    let g = (12 * q).gcd(&(2 * p)) as u64;
    let k_prime_candidates = if g >= 7 {
        triangle_quotient_candidates(g).expect("g >= 7")
    } else {
        Vec::new()
    };
    let (plus, minus) = (
        (6 * q + p).unsigned_abs() as u64,
        (6 * q - p).unsigned_abs() as u64,
    );
    let zhs_possible = k_prime_candidates.iter().any(|&kp| {
        plus % kp == 0
            && divisors(minus)
                .into_iter()
                .any(|k| k >= 7 && k % kp == 0 && k.gcd(&6) == 1)
    });
    Ok(Lemma45Analysis {
        p: c.p,
        q: c.q,
        gcd_12q_2p: g,
        k_prime_candidates,
        zhs_possible,
    })
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Lemma45Sweep {
    pub checked: usize,
    pub degenerate: usize,
    /// Curves where `gcd(12q, 2p)` fails to divide 12.
    pub not_dividing_12: Vec<(i64, i64)>,
    pub zhs_possible: Vec<(i64, i64)>,
    /// Curves where the gcd is not exactly 12.
    pub gcd_not_12: usize,
    pub first_gcd_not_12: Option<(i64, i64)>,
}

/// Runs the analysis on every coprime `(p, q)` with `|p|, |q| <= bound`.
pub fn lemma45_sweep(bound: i64) -> Lemma45Sweep {
    let mut s = Lemma45Sweep::default();
    for p in -bound..=bound {
        for q in -bound..=bound {
            let Ok(c) = SurgeryCurve::new(p, q) else { continue };
            match lemma45_divisor_analysis(c) {
                Ok(a) => {
                    s.checked += 1;
                    if 12 % a.gcd_12q_2p != 0 {
                        s.not_dividing_12.push((p, q));
                    }
                    if a.zhs_possible {
                        s.zhs_possible.push((p, q));
                    }
                    if a.gcd_12q_2p != 12 {
                        s.gcd_not_12 += 1;
                        if s.first_gcd_not_12.is_none() || (p, q) == (1, 1) {
                            s.first_gcd_not_12 = Some((p, q));
                        }
                    }
                }
                Err(_) => s.degenerate += 1,
            }
        }
    }
    s
}

/// Integer matrix of a 2x2 array, for determinant and product checks.
pub fn matrix2(m: [[i64; 2]; 2]) -> IntMatrix {
    IntMatrix::from_rows(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{
        abelianization, coset_enumeration, hom_search, relator_order_bound, AbelianGroup, FiniteGroupTable,
    };

    #[test]
    fn trefoil_basis() {
        let e = trefoil_exterior();
        assert_eq!(e.inverse_basis(), [[6, 1], [5, 1]]);
        let prod = &matrix2(e.inverse_basis()) * &matrix2(e.basis());
        assert_eq!(prod, IntMatrix::identity(2));
        assert_eq!(matrix2(e.basis()).determinant(), 1);
        assert_eq!(abelianization(e.presentation()), AbelianGroup::free(1));
    }

    #[test]
    fn theorem_gluing() {
        let g = GraphManifoldGluing::theorem_4_1();
        let p = glue(&g).unwrap();
        let rels: Vec<String> = p.relators().iter().map(|r| p.format_word(r)).collect();
        assert_eq!(rels[6], "t1'^5 c1^6 c2 t2'");
        assert_eq!(rels[7], "t1 c1' c2^6 t2'^5");
        assert!(abelianization(&p).is_trivial());
    }

    #[test]
    fn double_has_free_homology() {
        let p = glue(&GraphManifoldGluing::trefoil_pair([[1, 0], [0, 1]])).unwrap();
        assert_eq!(abelianization(&p), AbelianGroup::free(1));
        assert_eq!(
            glue(&GraphManifoldGluing::trefoil_pair([[2, 0], [0, 1]])).unwrap_err(),
            GraphError::NonUnimodular { det: 2 }
        );
    }

    #[test]
    fn gluing_json() {
        let j: GluingJson = serde_json::from_str(r#"{"glue":[[0,1],[-1,0]],"basis":"trefoil"}"#).unwrap();
        assert_eq!(
            GraphManifoldGluing::from_json(&j).unwrap(),
            GraphManifoldGluing::theorem_4_1()
        );
        assert!(GraphManifoldGluing::from_json(&GluingJson {
            glue: j.glue,
            basis: "figure8".into()
        })
        .is_err());
    }

    #[test]
    fn case_groups() {
        let g = lemma44_case_groups();
        assert_eq!(g.case1.residues, [2, -3, 0]);
        assert!(!g.case1.kills_relators());
        assert!(CyclicImageRule::consistent().kills_relators());
        assert_eq!(coset_enumeration(&g.case2, &[], 100).index(), Some(1));
        let c1 = g.case3.gen("c1").unwrap();
        let c2 = g.case3.gen("c2").unwrap();
        assert_eq!(relator_order_bound(&g.case3, c1), Some(37));
        assert_eq!(relator_order_bound(&g.case3, c2), Some(37));
        let a5 = FiniteGroupTable::alternating(5);
        assert_eq!(hom_search(&g.case3, &a5, true).unwrap().surjective_count, 0);
        assert_eq!(
            hom_search(&g.case3_displayed, &a5, true)
                .unwrap()
                .surjective_count,
            0
        );
    }

    #[test]
    fn surgery_examples() {
        let (n1, n2) = surgery_family(SurgeryCurve::new(1, 1).unwrap()).unwrap();
        assert_eq!(n1.to_string(), "SFS[g=0; b=-1; 2/1, 3/1, 5/1]");
        assert_eq!(n2.to_string(), "SFS[g=0; b=-1; 2/1, 3/1, 7/1]");
        let c = SurgeryCurve::new(0, 1).unwrap();
        assert_eq!(c.fiber_coords(), (-5, 6));
        let (n1, _) = surgery_family(c).unwrap();
        assert_eq!(n1, normalize(0, 0, &[(2, 1), (3, 1), (6, -5)]).unwrap());
        for p in -9..=9 {
            for q in -9..=9 {
                if let Ok(c) = SurgeryCurve::new(p, q) {
                    assert_eq!(c.fiber_coords(), (p - 5 * q, -p + 6 * q));
                    assert_eq!(c.partner_fiber_coords(), (-q - 5 * p, q + 6 * p));
                }
            }
        }
        assert_eq!(
            surgery_family(SurgeryCurve::new(6, 1).unwrap()).unwrap_err(),
            GraphError::Degenerate { alpha: 0, beta: 1 }
        );
        assert!(SurgeryCurve::new(2, 4).is_err());
    }

    #[test]
    fn divisor_analysis() {
        let a = lemma45_divisor_analysis(SurgeryCurve::new(1, 1).unwrap()).unwrap();
        assert_eq!(a.gcd_12q_2p, 2);
        assert!(a.k_prime_candidates.is_empty() && !a.zhs_possible);
        let a = lemma45_divisor_analysis(SurgeryCurve::new(1, 6).unwrap()).unwrap();
        assert_eq!(a.gcd_12q_2p, 2);
        let a = lemma45_divisor_analysis(SurgeryCurve::new(18, 1).unwrap()).unwrap();
        assert_eq!(a.gcd_12q_2p, 12);
        assert_eq!(a.k_prime_candidates, vec![12]);
        assert!(!a.zhs_possible);
    }

    #[test]
    fn divisor_sweep() {
        let s = lemma45_sweep(50);
        assert!(s.checked > 5000);
        assert!(s.not_dividing_12.is_empty());
        assert!(s.zhs_possible.is_empty());
        assert_eq!(s.first_gcd_not_12, Some((1, 1)));
    }
}
