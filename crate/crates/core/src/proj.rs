//! Points of `P^1(Q)`, Möbius transformations, p-adic distances and the
//! ideals attached to pairs of points.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{first_nonzero_sign, gcd_all, is_prime, is_s_unit, outside_s_part, vp, vp_int, PlaceSet, SIdeal};
use crate::error::{Error, Result};
use crate::Rat;

/// A point `[x:y]` with coprime integer coordinates and `y > 0`, or `[1:0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    x: BigInt,
    y: BigInt,
}

impl ProjPoint {
    /// Normalizes an arbitrary nonzero integer pair.
    pub fn new(x: BigInt, y: BigInt) -> Result<Self> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::domain("[0:0] is not a point"));
        }
        let g = x.gcd(&y);
        Ok(ProjPoint::from_coprime(x / &g, y / &g))
    }

    pub fn from_i64(x: i64, y: i64) -> Result<Self> {
        ProjPoint::new(x.into(), y.into())
    }

    /// Sign-normalizes a pair already known to be coprime.
    pub(crate) fn from_coprime(x: BigInt, y: BigInt) -> Self {
        debug_assert!(x.gcd(&y).is_one());
        if y.is_negative() || (y.is_zero() && x.is_negative()) {
            ProjPoint { x: -x, y: -y }
        } else {
            ProjPoint { x, y }
        }
    }

    pub fn infinity() -> Self {
        ProjPoint { x: BigInt::one(), y: BigInt::zero() }
    }

    pub fn zero() -> Self {
        ProjPoint { x: BigInt::zero(), y: BigInt::one() }
    }

    pub fn one() -> Self {
        ProjPoint { x: BigInt::one(), y: BigInt::one() }
    }

    /// The affine point `[t:1]`.
    pub fn affine(t: &Rat) -> Self {
        ProjPoint::from_coprime(t.numer().clone(), t.denom().clone())
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// `x/y`, or `None` at infinity.
    pub fn affine_value(&self) -> Option<Rat> {
        (!self.is_infinity()).then(|| Rat::new(self.x.clone(), self.y.clone()))
    }

    /// The cross term `x_P y_Q - x_Q y_P`.
    pub fn cross(&self, other: &ProjPoint) -> BigInt {
        &self.x * &other.y - &other.x * &self.y
    }

    pub fn naive_height(&self) -> BigInt {
        self.x.abs().max(self.y.abs())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.x, self.y)
    }
}

/// The point represented by a nonzero pair of rationals.
pub fn normalize(x: &Rat, y: &Rat) -> Result<ProjPoint> {
    let den = x.denom().lcm(y.denom());
    let xi = (x * Rat::from_integer(den.clone())).to_integer();
    let yi = (y * Rat::from_integer(den)).to_integer();
    ProjPoint::new(xi, yi)
}

pub fn naive_height(p: &ProjPoint) -> BigInt {
    p.naive_height()
}

/// An invertible matrix `(a b / c d)` up to scalars, with coprime entries and
/// first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mobius {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Mobius {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::domain("singular matrix is not a Möbius transformation"));
        }
        let mut g = gcd_all([&a, &b, &c, &d]);
        if first_nonzero_sign([&a, &b, &c, &d]) == num_bigint::Sign::Minus {
            g = -g;
        }
        Ok(Mobius { a: a / &g, b: b / &g, c: c / &g, d: d / &g })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Mobius::new(a.into(), b.into(), c.into(), d.into())
    }

    /// Builds from rational entries by clearing denominators.
    pub fn from_rats(a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> Result<Self> {
        let den = [a, b, c, d].iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let scale = |r: &Rat| (r * Rat::from_integer(den.clone())).to_integer();
        Mobius::new(scale(a), scale(b), scale(c), scale(d))
    }

    pub fn identity() -> Self {
        Mobius::from_i64(1, 0, 0, 1).unwrap()
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let x = &self.a * p.x() + &self.b * p.y();
        let y = &self.c * p.x() + &self.d * p.y();
        ProjPoint::new(x, y).expect("invertible matrix sends points to points")
    }

    /// The composite `self ∘ other` (matrix product).
    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius::new(
            &self.a * &other.a + &self.b * &other.c,
            &self.a * &other.b + &self.b * &other.d,
            &self.c * &other.a + &self.d * &other.c,
            &self.c * &other.b + &self.d * &other.d,
        )
        .expect("product of invertible matrices")
    }

    pub fn inverse(&self) -> Mobius {
        Mobius::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
            .expect("adjugate of an invertible matrix")
    }

    pub fn is_identity(&self) -> bool {
        *self == Mobius::identity()
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} / {} {})", self.a, self.b, self.c, self.d)
    }
}

pub fn apply_mobius(a: &Mobius, p: &ProjPoint) -> ProjPoint {
    a.apply(p)
}

pub fn mobius_compose(a: &Mobius, b: &Mobius) -> Mobius {
    a.compose(b)
}

pub fn mobius_inverse(a: &Mobius) -> Mobius {
    a.inverse()
}

/// The Möbius class sending `p0 -> [0:1]`, `p1 -> [1:0]`, `p2 -> [1:1]`.
pub fn mobius_to_zero_inf_one(p0: &ProjPoint, p1: &ProjPoint, p2: &ProjPoint) -> Result<Mobius> {
    if p0 == p1 || p0 == p2 || p1 == p2 {
        return Err(Error::domain(format!(
            "points must be pairwise distinct, got {p0}, {p1}, {p2}"
        )));
    }
    // Row one vanishes at p0, row two at p1; the scalars make p2 land on [1:1].
    let s = p2.cross(p1);
    let t = p2.cross(p0);
    Mobius::new(
        &s * p0.y(),
        -(&s * p0.x()),
        &t * p1.y(),
        -(&t * p1.x()),
    )
}

/// `δ_p(P, Q)`, the p-adic logarithmic distance of two distinct points.
pub fn delta_p(p_pt: &ProjPoint, q_pt: &ProjPoint, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if p_pt == q_pt {
        return Err(Error::InfiniteDistance);
    }
    Ok(vp_int(&p_pt.cross(q_pt), p).expect("distinct points have nonzero cross term"))
}

/// `δ_p` from arbitrary (not necessarily coprime) rational coordinates:
/// `v_p(x1 y2 - x2 y1) - min(v_p x1, v_p y1) - min(v_p x2, v_p y2)`.
pub fn delta_p_coords(x1: &Rat, y1: &Rat, x2: &Rat, y2: &Rat, p: u64) -> Result<i64> {
    let min_v = |a: &Rat, b: &Rat| -> Result<i64> {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => Err(Error::domain("[0:0] is not a point")),
            (true, false) => vp(b, p),
            (false, true) => vp(a, p),
            (false, false) => Ok(vp(a, p)?.min(vp(b, p)?)),
        }
    };
    let m1 = min_v(x1, y1)?;
    let m2 = min_v(x2, y2)?;
    let cross = x1 * y2 - x2 * y1;
    if cross.is_zero() {
        return Err(Error::InfiniteDistance);
    }
    Ok(vp(&cross, p)? - m1 - m2)
}

/// `𝕴(P, Q)`: the prime-to-S part of the cross term of distinct points.
pub fn ideal_i(p_pt: &ProjPoint, q_pt: &ProjPoint, s: &PlaceSet) -> Result<SIdeal> {
    if p_pt == q_pt {
        return Err(Error::domain(format!("ideal of coincident points {p_pt}")));
    }
    outside_s_part(&Rat::from_integer(p_pt.cross(q_pt)), s)
}

/// Membership in `PGL_2(R_S)`: the determinant of the coprime representative
/// is an S-unit.
pub fn is_pgl2_rs(a: &Mobius, s: &PlaceSet) -> bool {
    is_s_unit(&Rat::from_integer(a.det()), s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> ProjPoint {
        ProjPoint::from_i64(x, y).unwrap()
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize(&q(2, 3), &q(4, 3)).unwrap(), pt(1, 2));
        assert_eq!(normalize(&q(-5, 1), &q(0, 1)).unwrap(), ProjPoint::infinity());
        assert_eq!(normalize(&q(0, 1), &q(-7, 1)).unwrap(), ProjPoint::zero());
        assert!(normalize(&q(0, 1), &q(0, 1)).is_err());
        assert_eq!(pt(3, -6), pt(-1, 2));
    }

    #[test]
    fn mobius_action() {
        let b = Mobius::from_i64(1, -1, 1, 0).unwrap();
        assert_eq!(b.apply(&ProjPoint::one()), ProjPoint::zero());
        assert_eq!(b.apply(&ProjPoint::infinity()), ProjPoint::one());
        assert_eq!(Mobius::identity().apply(&pt(7, 3)), pt(7, 3));
        assert!(b.compose(&b.inverse()).is_identity());
        assert_eq!(Mobius::identity().compose(&b), b);
        // (α 0 / β 1)^-1 = (1 0 / -β α)
        let a = Mobius::from_i64(3, 0, 5, 1).unwrap();
        assert_eq!(a.inverse(), Mobius::from_i64(1, 0, -5, 3).unwrap());
    }

    #[test]
    fn canonical_scaling() {
        let m = Mobius::from_i64(-2, 4, 0, -6).unwrap();
        assert_eq!(m, Mobius::new(2.into(), (-4).into(), 0.into(), 6.into()).unwrap());
        assert_eq!(m.entries().map(|e| e.clone()), [1, -2, 0, 3].map(BigInt::from));
        assert!(Mobius::from_i64(1, 2, 2, 4).is_err());
    }

    #[test]
    fn three_point_normalization() {
        let id = mobius_to_zero_inf_one(&ProjPoint::zero(), &ProjPoint::infinity(), &ProjPoint::one()).unwrap();
        assert!(id.is_identity());
        for (a, b, c) in [
            (pt(1, 1), pt(0, 1), pt(1, 0)),
            (pt(2, 1), pt(3, 1), pt(5, 1)),
        ] {
            let m = mobius_to_zero_inf_one(&a, &b, &c).unwrap();
            assert_eq!(m.apply(&a), ProjPoint::zero());
            assert_eq!(m.apply(&b), ProjPoint::infinity());
            assert_eq!(m.apply(&c), ProjPoint::one());
        }
        assert!(mobius_to_zero_inf_one(&pt(1, 2), &pt(2, 4), &pt(0, 1)).is_err());
    }

    #[test]
    fn distances() {
        assert_eq!(delta_p(&ProjPoint::zero(), &pt(4, 1), 2).unwrap(), 2);
        assert_eq!(delta_p(&ProjPoint::infinity(), &pt(6, 1), 2).unwrap(), 0);
        assert_eq!(delta_p(&pt(3, 2), &pt(1, 2), 3).unwrap(), 0);
        assert_eq!(delta_p(&pt(3, 2), &pt(3, 2), 3), Err(Error::InfiniteDistance));
        // [0:1] and [4:1] scaled by 6 and 1/2.
        assert_eq!(delta_p_coords(&q(0, 1), &q(6, 1), &q(2, 1), &q(1, 2), 2).unwrap(), 2);
    }

    #[test]
    fn ideals() {
        let s2 = PlaceSet::new([2]).unwrap();
        assert_eq!(ideal_i(&ProjPoint::zero(), &pt(12, 1), &s2).unwrap().generator(), &3u32.into());
        assert!(ideal_i(&ProjPoint::infinity(), &pt(17, 1), &s2).unwrap().is_unit());
        assert_eq!(
            ideal_i(&ProjPoint::zero(), &pt(6, 1), &PlaceSet::empty()).unwrap().generator(),
            &6u32.into()
        );
    }

    #[test]
    fn pgl2_membership() {
        let s2 = PlaceSet::new([2]).unwrap();
        assert!(is_pgl2_rs(&Mobius::identity(), &PlaceSet::empty()));
        assert!(is_pgl2_rs(&Mobius::from_i64(1, -1, 1, 0).unwrap(), &PlaceSet::empty()));
        assert!(!is_pgl2_rs(&Mobius::from_i64(3, 0, 0, 1).unwrap(), &s2));
        assert!(is_pgl2_rs(&Mobius::from_i64(4, 1, 0, 1).unwrap(), &s2));
    }

    #[test]
    fn heights() {
        assert_eq!(naive_height(&ProjPoint::zero()), BigInt::one());
        assert_eq!(naive_height(&pt(-7, 2)), BigInt::from(7));
        assert_eq!(naive_height(&ProjPoint::infinity()), BigInt::one());
    }
}
