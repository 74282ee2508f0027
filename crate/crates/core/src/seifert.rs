//! Closed orientable Seifert fibered spaces over orientable bases, in the
//! normal form `(g; b; a1,b1; ...; an,bn)` with `0 <= bi < ai`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::fpgroup::{AbelianGroup, GroupPresentation, IntMatrix, ParseError, Word};
use crate::orbifold::Orbifold2;
use crate::text::Cursor;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeifertError {
    #[error("invalid fiber data ({alpha}, {beta})")]
    InvalidFiber { alpha: i64, beta: i64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("out of supported range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeifertJson", into = "SeifertJson")]
pub struct SeifertInvariants {
    genus: u32,
    b: i64,
    pairs: Vec<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct SeifertJson {
    genus: u32,
    b: i64,
    pairs: Vec<(i64, i64)>,
}

impl TryFrom<SeifertJson> for SeifertInvariants {
    type Error = SeifertError;

    fn try_from(j: SeifertJson) -> Result<Self, Self::Error> {
        normalize(j.genus, j.b, &j.pairs)
    }
}

impl From<SeifertInvariants> for SeifertJson {
    fn from(s: SeifertInvariants) -> Self {
        SeifertJson {
            genus: s.genus,
            b: s.b,
            pairs: s.pairs,
        }
    }
}

fn check_pair(alpha: i64, beta: i64) -> Result<(), SeifertError> {
    if alpha < 1 || (alpha > 1 && alpha.gcd(&beta.rem_euclid(alpha)) != 1) {
        Err(SeifertError::InvalidFiber { alpha, beta })
    } else {
        Ok(())
    }
}

/// Reduces every `beta` mod its `alpha`, folding the quotient into `b`,
/// absorbs `alpha = 1` pairs into `b`, and sorts the pairs.
pub fn normalize(genus: u32, b: i64, raw_pairs: &[(i64, i64)]) -> Result<SeifertInvariants, SeifertError> {
    let mut b = b;
    let mut pairs = Vec::with_capacity(raw_pairs.len());
    for &(alpha, beta) in raw_pairs {
        check_pair(alpha, beta)?;
        let (q, r) = (beta.div_euclid(alpha), beta.rem_euclid(alpha));
        b += q;
        if alpha > 1 {
            pairs.push((alpha, r));
        }
    }
    pairs.sort_unstable();
    Ok(SeifertInvariants { genus, b, pairs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankType {
    /// `(0; b; 2,1; ...; 2,1; 2λ+1, β)` with an even number `k >= 4` of
    /// exceptional fibers and `λ > 1`.
    TypeI {
        lambda: i64,
    },
    TypeII,
}

/// Coarse geometry read off from the base Euler characteristic and `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeifertGeometry {
    S3,
    S2xR,
    Nil,
    E3,
    SL2R,
    H2xR,
}

impl fmt::Display for SeifertGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeifertGeometry::S3 => "S3",
            SeifertGeometry::S2xR => "S2xR",
            SeifertGeometry::Nil => "Nil",
            SeifertGeometry::E3 => "E3",
            SeifertGeometry::SL2R => "SL2R",
            SeifertGeometry::H2xR => "H2xR",
        };
        f.write_str(s)
    }
}

impl SeifertInvariants {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    /// Number of exceptional fibers.
    pub fn fiber_count(&self) -> usize {
        self.pairs.len()
    }

    /// `e = -(b + sum bi/ai)`.
    pub fn euler_number(&self) -> Rational {
        let mut s = Rational::from_integer(self.b as i128);
        for &(a, b) in &self.pairs {
            s += Rational::new(b as i128, a as i128);
        }
        -s
    }

    pub fn base_orbifold(&self) -> Orbifold2 {
        let cones: Vec<i64> = self.pairs.iter().map(|p| p.0).collect();
        Orbifold2::new(self.genus, &cones).expect("normal form has every alpha >= 2")
    }

    pub fn geometry(&self) -> SeifertGeometry {
        let chi = self.base_orbifold().euler_char();
        let e0 = self.euler_number().is_zero();
        match (chi.signum().to_integer(), e0) {
            (1, false) => SeifertGeometry::S3,
            (1, true) => SeifertGeometry::S2xR,
            (0, false) => SeifertGeometry::Nil,
            (0, true) => SeifertGeometry::E3,
            (_, false) => SeifertGeometry::SL2R,
            (_, true) => SeifertGeometry::H2xR,
        }
    }

    /// Generators `a1, b1, ..., ag, bg, s1, ..., sn, h` with `h` central.
    pub fn pi1_presentation(&self) -> GroupPresentation {
        let g = self.genus as usize;
        let n = self.pairs.len();
        let mut names = Vec::with_capacity(2 * g + n + 1);
        for i in 1..=g {
            names.push(format!("a{i}"));
            names.push(format!("b{i}"));
        }
        for j in 1..=n {
            names.push(format!("s{j}"));
        }
        names.push("h".to_string());
        let h = 2 * g + n;
        let mut p = GroupPresentation::new(names, []).expect("generated names are valid");
        for (j, &(a, b)) in self.pairs.iter().enumerate() {
            p.push_relator(Word::power_of(2 * g + j, a).concat(&Word::power_of(h, b)));
        }
        let mut product = Word::identity();
        for i in 0..g {
            let c = Word::commutator(&Word::power_of(2 * i, 1), &Word::power_of(2 * i + 1, 1));
            product = product.concat(&c);
        }
        for j in 0..n {
            product = product.concat(&Word::power_of(2 * g + j, 1));
        }
        p.push_relator(product.concat(&Word::power_of(h, -self.b)));
        p.mark_central(h);
        p
    }

    /// Relation matrix of H1 in the basis `a_i, b_i, s_j, h`; surface
    /// commutators vanish so the handle columns stay free.
    pub fn relation_matrix(&self) -> IntMatrix {
        let g = self.genus as usize;
        let n = self.pairs.len();
        let cols = 2 * g + n + 1;
        let mut m = IntMatrix::zeros(n + 1, cols);
        for (j, &(a, b)) in self.pairs.iter().enumerate() {
            m[(j, 2 * g + j)] = a as i128;
            m[(j, cols - 1)] = b as i128;
            m[(n, 2 * g + j)] = 1;
        }
        m[(n, cols - 1)] = -(self.b as i128);
        m
    }

    pub fn homology(&self) -> AbelianGroup {
        crate::fpgroup::smith_normal_form(&self.relation_matrix()).cokernel()
    }

    pub fn is_integral_homology_sphere(&self) -> bool {
        self.homology().is_trivial()
    }

    pub fn classify_type(&self) -> Result<RankType, SeifertError> {
        if self.genus > 0 {
            return Err(SeifertError::Unsupported(
                "type classification needs genus 0".into(),
            ));
        }
        let k = self.pairs.len();
        if k >= 4 && k.is_multiple_of(2) && self.pairs[..k - 1].iter().all(|&p| p == (2, 1)) {
            let a = self.pairs[k - 1].0;
            if a % 2 == 1 && (a - 1) / 2 > 1 {
                return Ok(RankType::TypeI { lambda: (a - 1) / 2 });
            }
        }
        Ok(RankType::TypeII)
    }

    /// Rank of the fundamental group: `k - 2` for type I, `k - 1` for type II.
    pub fn rank_bz(&self) -> Result<u32, SeifertError> {
        if self.genus > 0 {
            return Err(SeifertError::Unsupported("rank formula needs genus 0".into()));
        }
        let k = self.pairs.len();
        if k < 3 {
            return Err(SeifertError::OutOfRange(format!(
                "{k} exceptional fibers, need at least 3"
            )));
        }
        if self.base_orbifold().euler_char().is_positive() {
            return Err(SeifertError::OutOfRange("finite fundamental group".into()));
        }
        Ok(match self.classify_type()? {
            RankType::TypeI { .. } => k as u32 - 2,
            RankType::TypeII => k as u32 - 1,
        })
    }
}

impl fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SFS[g={}; b={};", self.genus, self.b)?;
        if !self.pairs.is_empty() {
            let ps: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{a}/{b}")).collect();
            write!(f, " {}", ps.join(", "))?;
        }
        write!(f, "]")
    }
}

impl FromStr for SeifertInvariants {
    type Err = SeifertError;

    /// `SFS[g=<int>; b=<int>; a1/b1, a2/b2, ...]`, normalized on the way in.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor::new(s);
        c.expect("SFS")?;
        c.expect("[")?;
        c.expect("g")?;
        c.expect("=")?;
        let (genus, gspan) = c.integer()?;
        if genus < 0 || genus > u32::MAX as i64 {
            return Err(ParseError::new("genus must be a non-negative integer", gspan.0, gspan.1).into());
        }
        c.expect(";")?;
        c.expect("b")?;
        c.expect("=")?;
        let (b, _) = c.integer()?;
        let mut pairs = Vec::new();
        if c.eat(";") && !c.peek_is("]") {
            loop {
                let (alpha, aspan) = c.integer()?;
                c.expect("/")?;
                let (beta, bspan) = c.integer()?;
                if check_pair(alpha, beta).is_err() {
                    return Err(ParseError::new(
                        format!("invalid fiber data {alpha}/{beta}"),
                        aspan.0,
                        bspan.1,
                    )
                    .into());
                }
                pairs.push((alpha, beta));
                if !c.eat(",") {
                    break;
                }
            }
        }
        c.expect("]")?;
        c.end()?;
        normalize(genus as u32, b, &pairs)
    }
}

/// `M(n,k) = (0; 0; 2^k 3, b1; 5, 2^(n-k) b2; 7, 2^(n-k) b3)`, normalized.
pub fn family_member(n: u32, k: u32, b: [i64; 3]) -> Result<SeifertInvariants, SeifertError> {
    if k > n {
        return Err(SeifertError::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    if n > 40 {
        return Err(SeifertError::OutOfRange(format!("n = {n} is too large")));
    }
    let scale = 1i64 << (n - k);
    let raw = [
        ((1i64 << k) * 3, b[0]),
        (
            5,
            scale
                .checked_mul(b[1])
                .ok_or_else(|| SeifertError::OutOfRange("b2 overflows".into()))?,
        ),
        (
            7,
            scale
                .checked_mul(b[2])
                .ok_or_else(|| SeifertError::OutOfRange("b3 overflows".into()))?,
        ),
    ];
    normalize(0, 0, &raw)
}

/// Image of one exceptional-fiber generator `s_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberImage {
    /// `s_j` goes to a conjugate of `t_target` times `h'^shift`, or to
    /// `h'^shift` alone when `None`.
    pub target: Option<usize>,
    pub shift: i64,
}

/// A fiber-preserving homomorphism between genus-0 Seifert groups:
/// `s_j -> t_σ(j) h'^(v_j)` and `h -> h'^w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberHomData {
    pub images: Vec<FiberImage>,
    pub fiber_exponent: i64,
}

impl FiberHomData {
    /// `s_j -> t_j`, `h -> h'^w`.
    pub fn index_matching(n: usize, w: i64) -> Self {
        FiberHomData {
            images: (0..n)
                .map(|j| FiberImage {
                    target: Some(j),
                    shift: 0,
                })
                .collect(),
            fiber_exponent: w,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberHomCheck {
    pub well_defined: bool,
    pub surjective: bool,
}

/// Quotient by the order-2 rotation of the fibers, for genus-0 spaces with
/// exactly one even `alpha`: that pair becomes `(alpha/2, beta)`, the odd
/// pairs `(alpha, 2 beta)` and `b` doubles.
pub fn fiber_quotient_z2(s: &SeifertInvariants) -> Result<(SeifertInvariants, FiberHomData), SeifertError> {
    if s.genus != 0 {
        return Err(SeifertError::Unsupported("fiber quotient needs genus 0".into()));
    }
    if s.pairs.iter().filter(|p| p.0 % 2 == 0).count() != 1 {
        return Err(SeifertError::Unsupported(
            "fiber quotient needs exactly one even multiplicity".into(),
        ));
    }
    let raw: Vec<(i64, i64)> = s
        .pairs
        .iter()
        .map(|&(a, b)| if a % 2 == 0 { (a / 2, b) } else { (a, 2 * b) })
        .collect();
    let dst = normalize(0, 2 * s.b, &raw)?;

    // position of each reduced pair in the sorted target
    let mut reduced: Vec<(i64, i64, usize)> = raw
        .iter()
        .enumerate()
        .filter(|(_, p)| p.0 > 1)
        .map(|(j, &(a, b))| (a, b.rem_euclid(a), j))
        .collect();
    reduced.sort_unstable();
    let mut images = vec![
        FiberImage {
            target: None,
            shift: 0
        };
        raw.len()
    ];
    for (pos, &(_, _, j)) in reduced.iter().enumerate() {
        images[j].target = Some(pos);
    }
    for (img, &(a, b)) in images.iter_mut().zip(&raw) {
        img.shift = -b.div_euclid(a);
    }
    Ok((
        dst,
        FiberHomData {
            images,
            fiber_exponent: 2,
        },
    ))
}

/// Checks that `data` respects every relator of `src` and decides whether
/// the induced map is onto.
///
/// The images of the `s_j` are only determined up to conjugacy by the
/// exponent bookkeeping; since any permutation of the exceptional
/// generators of a genus-0 base is realized by braid moves, `data` may
/// permute the target fibers.
pub fn verify_fiber_hom(
    src: &SeifertInvariants,
    dst: &SeifertInvariants,
    data: &FiberHomData,
) -> Result<FiberHomCheck, SeifertError> {
    if src.genus != 0 || dst.genus != 0 {
        return Err(SeifertError::Unsupported(
            "fiber homomorphisms need genus-0 bases".into(),
        ));
    }
    if data.images.len() != src.pairs.len() {
        return Err(SeifertError::Unsupported(format!(
            "data has {} images for {} fibers",
            data.images.len(),
            src.pairs.len()
        )));
    }
    let mut hit = vec![false; dst.pairs.len()];
    for img in &data.images {
        if let Some(t) = img.target {
            if t >= hit.len() || hit[t] {
                return Err(SeifertError::Unsupported(
                    "fiber map is not index matching".into(),
                ));
            }
            hit[t] = true;
        }
    }
    if hit.iter().any(|h| !h) {
        return Err(SeifertError::Unsupported(
            "fiber map misses a target fiber".into(),
        ));
    }
    let w = data.fiber_exponent;
    if w == 0 {
        return Err(SeifertError::Unsupported(
            "fiber exponent must be non-zero".into(),
        ));
    }
    for m in [src, dst] {
        if m.base_orbifold().euler_char().is_positive() {
            return Err(SeifertError::Unsupported(format!(
                "{m} has finite fundamental group"
            )));
        }
    }

    let mut well_defined = true;
    let mut mapped_shift = 0i128;
    let mut g = w.unsigned_abs() as u128;
    for (img, &(a, b)) in data.images.iter().zip(&src.pairs) {
        let (a, b, v, w) = (a as i128, b as i128, img.shift as i128, w as i128);
        match img.target {
            Some(t) => {
                let (a2, b2) = (dst.pairs[t].0 as i128, dst.pairs[t].1 as i128);
                // s^a h^b -> (t h'^v)^a h'^(wb) = h'^(-(a/a2) b2 + a v + w b)
                well_defined &= a % a2 == 0 && -(a / a2) * b2 + a * v + w * b == 0;
                mapped_shift += v;
                g = g.gcd(&(a2 * v - b2).unsigned_abs());
            }
            None => {
                well_defined &= a * v + w * b == 0;
                g = g.gcd(&v.unsigned_abs());
            }
        }
    }
    let total_shift: i128 = data.images.iter().map(|i| i.shift as i128).sum();
    well_defined &= dst.b as i128 + total_shift - w as i128 * src.b as i128 == 0;
    g = g.gcd(&(dst.b as i128 + mapped_shift).unsigned_abs());
    Ok(FiberHomCheck {
        well_defined,
        surjective: well_defined && g == 1,
    })
}
