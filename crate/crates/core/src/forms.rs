//! Homogeneous binary forms `f_0 X^d + f_1 X^(d-1) Y + ... + f_d Y^d`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{gcd_all, is_prime, vp_int};
use crate::error::{Error, Result};
use crate::fp::{self, FpPoly};
use crate::linalg::bareiss_det;
use crate::proj::ProjPoint;
use crate::upoly;
use crate::Rat;

/// A nonzero binary form. Coefficients are stored as given, without content
/// normalization; valuations of the raw coefficients are meaningful.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl TryFrom<Vec<BigInt>> for BinaryForm {
    type Error = Error;

    fn try_from(coeffs: Vec<BigInt>) -> Result<Self> {
        BinaryForm::new(coeffs)
    }
}

impl From<BinaryForm> for Vec<BigInt> {
    fn from(f: BinaryForm) -> Self {
        f.coeffs
    }
}

impl BinaryForm {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("a form needs at least one coefficient"));
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::domain("the zero form is not a binary form"));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        BinaryForm::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Internal constructor; the zero form is allowed as an intermediate.
    pub(crate) fn raw(coeffs: Vec<BigInt>) -> Self {
        debug_assert!(!coeffs.is_empty());
        BinaryForm { coeffs }
    }

    pub(crate) fn zero(degree: usize) -> Self {
        BinaryForm::raw(vec![BigInt::zero(); degree + 1])
    }

    /// `X^(d-k) Y^k`.
    pub(crate) fn monomial(degree: usize, k: usize) -> Self {
        let mut c = vec![BigInt::zero(); degree + 1];
        c[k] = BigInt::one();
        BinaryForm::raw(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn content(&self) -> BigInt {
        gcd_all(&self.coeffs)
    }

    /// Smallest valuation among the nonzero coefficients.
    pub fn vp(&self, p: u64) -> Result<u64> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        self.coeffs
            .iter()
            .filter_map(|c| vp_int(c, p))
            .min()
            .ok_or_else(|| Error::domain("valuation of the zero form"))
    }

    pub fn evaluate(&self, x: &Rat, y: &Rat) -> Rat {
        // Horner in X; the k-th coefficient enters with Y^k.
        let mut acc = Rat::zero();
        let mut ypow = Rat::one();
        for c in &self.coeffs {
            acc = acc * x + Rat::from_integer(c.clone()) * &ypow;
            ypow *= y;
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut ypow = BigInt::one();
        for c in &self.coeffs {
            acc = acc * x + c * &ypow;
            ypow *= y;
        }
        acc
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree());
        BinaryForm::raw(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> BinaryForm {
        BinaryForm::raw(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm::raw(out)
    }

    pub fn pow(&self, n: usize) -> BinaryForm {
        let mut acc = BinaryForm::monomial(0, 0);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub(crate) fn divide_exact(&self, k: &BigInt) -> BinaryForm {
        BinaryForm::raw(self.coeffs.iter().map(|c| c / k).collect())
    }

    /// Substitutes linear forms: `F(aX + bY, cX + dY)`.
    pub fn substitute_linear(&self, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BinaryForm {
        let u = BinaryForm::raw(vec![a.clone(), b.clone()]);
        let v = BinaryForm::raw(vec![c.clone(), d.clone()]);
        compose(self, &u, &v).expect("linear forms share a degree")
    }

    /// Sylvester resultant of two forms of equal degree `d >= 1`.
    pub fn resultant(&self, other: &BinaryForm) -> Result<BigInt> {
        resultant(self, other)
    }

    /// Distinct rational roots with multiplicities, sorted by point.
    pub fn rational_roots(&self) -> Result<Vec<(ProjPoint, u32)>> {
        rational_roots(self)
    }

    pub fn has_repeated_root(&self) -> bool {
        has_repeated_root(self)
    }

    /// Multiplies by the linear form vanishing at `[x:y]`, i.e. `yX - xY`.
    pub fn times_linear(&self, x: &BigInt, y: &BigInt) -> BinaryForm {
        self.mul(&BinaryForm::raw(vec![y.clone(), -x.clone()]))
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (xe, ye) = (d - k, k);
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let monomial = match (xe, ye) {
                (0, 0) => String::new(),
                (1, 0) => "X".into(),
                (0, 1) => "Y".into(),
                (x, 0) => format!("X^{x}"),
                (0, y) => format!("Y^{y}"),
                (1, 1) => "XY".into(),
                (1, y) => format!("XY^{y}"),
                (x, 1) => format!("X^{x}Y"),
                (x, y) => format!("X^{x}Y^{y}"),
            };
            if monomial.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{monomial}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Sylvester matrix of two forms of degrees `m` and `n`: `n` shifted rows of
/// `F` followed by `m` shifted rows of `G`.
pub(crate) fn sylvester(f: &BinaryForm, g: &BinaryForm) -> Vec<Vec<BigInt>> {
    let (m, n) = (f.degree(), g.degree());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in f.coeffs.iter().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in g.coeffs.iter().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res(F, G)` as the Sylvester determinant, computed fraction-free.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Result<BigInt> {
    if f.degree() != g.degree() {
        return Err(Error::domain(format!(
            "resultant needs equal degrees, got {} and {}",
            f.degree(),
            g.degree()
        )));
    }
    if f.degree() == 0 {
        return Err(Error::domain("resultant needs degree at least one"));
    }
    Ok(bareiss_det(sylvester(f, g)))
}

/// `U(f, g)` for forms `f`, `g` of equal degree.
pub fn compose(u: &BinaryForm, f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm> {
    if f.degree() != g.degree() {
        return Err(Error::domain("compose needs f and g of equal degree"));
    }
    let big_d = u.degree();
    let d = f.degree();
    // Powers f^i and g^i, reused across terms.
    let mut fpow = vec![BinaryForm::monomial(0, 0)];
    let mut gpow = vec![BinaryForm::monomial(0, 0)];
    for i in 1..=big_d {
        fpow.push(fpow[i - 1].mul(f));
        gpow.push(gpow[i - 1].mul(g));
    }
    let mut out = BinaryForm::zero(big_d * d);
    for (k, c) in u.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = fpow[big_d - k].mul(&gpow[k]).scale(c);
        out = out.add(&term);
    }
    Ok(out)
}

/// Number of leading zero coefficients (multiplicity of `[1:0]`) and of
/// trailing zero coefficients (multiplicity of `[0:1]`).
fn end_multiplicities(f: &BinaryForm) -> (usize, usize) {
    let lead = f.coeffs.iter().take_while(|c| c.is_zero()).count();
    let trail = f.coeffs.iter().rev().take_while(|c| c.is_zero()).count();
    (lead, trail)
}

/// The affine polynomial in `t = X/Y` left after removing the roots at
/// `[1:0]` and `[0:1]`, in ascending order.
fn affine_core(f: &BinaryForm) -> Vec<BigInt> {
    let (lead, trail) = end_multiplicities(f);
    let n = f.coeffs.len();
    f.coeffs[lead..n - trail].iter().rev().cloned().collect()
}

pub fn rational_roots(f: &BinaryForm) -> Result<Vec<(ProjPoint, u32)>> {
    if f.is_zero() {
        return Err(Error::domain("the zero form vanishes everywhere"));
    }
    let (lead, trail) = end_multiplicities(f);
    let mut out = Vec::new();
    if lead > 0 {
        out.push((ProjPoint::infinity(), lead as u32));
    }
    if trail > 0 {
        out.push((ProjPoint::zero(), trail as u32));
    }
    let core = affine_core(f);
    if core.len() > 1 {
        for (x, y) in upoly::rational_roots(&core)? {
            let mut mult = 0;
            let mut rest = core.clone();
            while let Some(q) = upoly::div_linear(&rest, &x, &y) {
                rest = q;
                mult += 1;
            }
            debug_assert!(mult > 0);
            out.push((ProjPoint::from_coprime(x, y), mult));
        }
    }
    out.sort();
    Ok(out)
}

/// Reductions modulo `p` share a root on `P^1` over the algebraic closure.
pub fn common_root_mod_p(f: &BinaryForm, g: &BinaryForm, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let fr: Vec<u64> = f.coeffs.iter().map(|c| fp::reduce(c, p)).collect();
    let gr: Vec<u64> = g.coeffs.iter().map(|c| fp::reduce(c, p)).collect();
    let f_zero = fr.iter().all(|&c| c == 0);
    let g_zero = gr.iter().all(|&c| c == 0);
    match (f_zero, g_zero) {
        (true, true) => {
            return Err(Error::domain(format!("both forms vanish modulo {p}")));
        }
        // A nonzero form of positive degree has a root somewhere.
        (true, false) => return Ok(g.degree() > 0),
        (false, true) => return Ok(f.degree() > 0),
        _ => {}
    }
    // Root [1:0] is shared iff both X^d coefficients vanish.
    if fr[0] == 0 && gr[0] == 0 {
        return Ok(true);
    }
    let fa = FpPoly::new(fr.into_iter().rev().collect(), p);
    let ga = FpPoly::new(gr.into_iter().rev().collect(), p);
    Ok(fa.gcd(&ga).degree().is_some_and(|d| d > 0))
}

pub fn has_repeated_root(f: &BinaryForm) -> bool {
    let (lead, trail) = end_multiplicities(f);
    if lead >= 2 || trail >= 2 {
        return true;
    }
    let core = affine_core(f);
    !upoly::is_squarefree(&core)
}

/// The product of the distinct irreducible factors of `F`, as a primitive
/// form (so it has no repeated roots).
pub fn squarefree_part(f: &BinaryForm) -> BinaryForm {
    let (lead, trail) = end_multiplicities(f);
    let core = upoly::squarefree_part(&affine_core(f));
    let mut coeffs: Vec<BigInt> = Vec::new();
    if lead > 0 {
        coeffs.push(BigInt::zero());
    }
    coeffs.extend(core.into_iter().rev());
    if trail > 0 {
        coeffs.push(BigInt::zero());
    }
    BinaryForm::raw(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64(c).unwrap()
    }

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn vp_of_forms() {
        assert_eq!(form(&[4, -9, 2]).vp(2).unwrap(), 0);
        assert_eq!(form(&[2, -4, 2]).vp(2).unwrap(), 1);
        assert_eq!(form(&[8, 0, 0]).vp(2).unwrap(), 3);
    }

    #[test]
    fn evaluation() {
        assert_eq!(form(&[1, 0, 1]).evaluate(&r(3), &r(4)), r(25));
        assert_eq!(form(&[3, -2, 7]).evaluate(&r(0), &r(0)), r(0));
        // (X - 2Y)(4X - Y) = 4X^2 - 9XY + 2Y^2
        assert_eq!(form(&[4, -9, 2]).evaluate(&r(1), &r(0)), r(4));
        assert_eq!(form(&[4, -9, 2]).evaluate(&r(2), &r(1)), r(0));
        assert_eq!(
            form(&[4, -9, 2]).eval_int(&BigInt::from(3), &BigInt::from(5)),
            BigInt::from(36 - 135 + 50)
        );
        let half = Rat::new(1.into(), 2.into());
        assert_eq!(form(&[1, 1, 0]).evaluate(&half, &r(1)), Rat::new(3.into(), 4.into()));
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&form(&[4, -9, 2]), &form(&[2, -4, 2])).unwrap(), BigInt::from(36));
        assert_eq!(resultant(&form(&[1, 0, 0]), &form(&[0, 0, 1])).unwrap(), BigInt::from(1));
        assert_eq!(resultant(&form(&[0, 1, 0]), &form(&[1, 1, 0])).unwrap(), BigInt::from(0));
        assert!(resultant(&form(&[1, 0]), &form(&[1, 0, 0])).is_err());
    }

    #[test]
    fn composition_examples() {
        let f = form(&[1, 0, -1]);
        let g = form(&[0, 2, 0]);
        assert_eq!(compose(&form(&[1, 0]), &f, &g).unwrap(), f);
        assert_eq!(
            compose(&form(&[0, 1, 0]), &form(&[1, 0, 0]), &form(&[0, 0, 1])).unwrap(),
            form(&[0, 0, 1, 0, 0])
        );
        assert_eq!(compose(&form(&[1, 1]), &f, &g).unwrap(), form(&[1, 2, -1]));
    }

    #[test]
    fn roots_examples() {
        let roots = rational_roots(&form(&[0, 1, 0])).unwrap();
        assert_eq!(roots, vec![(ProjPoint::zero(), 1), (ProjPoint::infinity(), 1)]);
        assert!(rational_roots(&form(&[1, 0, -2])).unwrap().is_empty());
        let roots = rational_roots(&form(&[4, -9, 2])).unwrap();
        let pts: Vec<ProjPoint> = roots.iter().map(|(p, _)| p.clone()).collect();
        assert_eq!(pts, vec![ProjPoint::from_i64(1, 4).unwrap(), ProjPoint::from_i64(2, 1).unwrap()]);
        // X^2 (X - Y)^3 Y
        let f = form(&[1, 0])
            .pow(2)
            .mul(&form(&[1, -1]).pow(3))
            .mul(&form(&[0, 1]));
        let roots = rational_roots(&f).unwrap();
        assert_eq!(
            roots,
            vec![
                (ProjPoint::zero(), 2),
                (ProjPoint::infinity(), 1),
                (ProjPoint::one(), 3)
            ]
        );
    }

    #[test]
    fn common_roots_mod_p() {
        for p in [2, 3, 5, 7] {
            assert!(!common_root_mod_p(&form(&[1, 0, 0]), &form(&[0, 0, 1]), p).unwrap());
        }
        assert!(common_root_mod_p(&form(&[1, 0, -1]), &form(&[1, 0, 1]), 2).unwrap());
        assert!(common_root_mod_p(&form(&[4, -9, 2]), &form(&[2, -4, 2]), 3).unwrap());
        assert!(common_root_mod_p(&form(&[2, 4, 6]), &form(&[4, 2, 8]), 2).is_err());
    }

    #[test]
    fn repeated_roots() {
        assert!(has_repeated_root(&form(&[1, 0, 0])));
        assert!(!has_repeated_root(&form(&[0, 1, 0])));
        // X^5 - X^2 Y^3 - Y^5
        assert!(!has_repeated_root(&form(&[1, 0, 0, -1, 0, -1])));
        assert!(has_repeated_root(&form(&[1, -2, 1])));
        assert_eq!(squarefree_part(&form(&[1, -2, 1])), form(&[1, -1]));
    }

    #[test]
    fn display() {
        assert_eq!(form(&[4, -9, 2]).to_string(), "4X^2 - 9XY + 2Y^2");
        assert_eq!(form(&[-1, 0, 0]).to_string(), "-X^2");
    }
}
