//! Univariate integer polynomials in ascending coefficient order: the
//! dehomogenized side of binary forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{gcd_all, is_prime};
use crate::error::{Error, Result};
use crate::fp::{self, FpPoly};
use crate::Rat;

pub(crate) type Poly = Vec<BigInt>;

pub(crate) fn trim(mut f: Poly) -> Poly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

pub(crate) fn degree(f: &[BigInt]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn primitive(f: &[BigInt]) -> Poly {
    let f = trim(f.to_vec());
    let content = gcd_all(&f);
    if content.is_zero() {
        return f;
    }
    let sign = if f.last().unwrap().is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let scale = content * sign;
    f.iter().map(|c| c / &scale).collect()
}

/// Divides out the content, keeping signs.
pub(crate) fn primitive_vec(v: &[BigInt]) -> Vec<BigInt> {
    let content = gcd_all(v);
    if content.is_zero() || content.is_one() {
        return v.to_vec();
    }
    v.iter().map(|c| c / &content).collect()
}

pub(crate) fn derivative(f: &[BigInt]) -> Poly {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect(),
    )
}

/// Pseudo-remainder of `a` by nonzero `b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Poly {
    let db = degree(b).expect("nonzero divisor");
    let lead = &b[db];
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lead;
        }
        for (k, c) in b.iter().enumerate() {
            r[dr - db + k] -= &factor * c;
        }
        r = trim(r);
    }
    r
}

/// Primitive gcd over `Z[t]` (positive leading coefficient) via the primitive
/// remainder sequence.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while degree(&b).is_some() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    primitive(&a)
}

/// Exact quotient `a / b`, assuming `b` divides `a` over `Q[t]`; returned as a
/// primitive integer polynomial.
pub(crate) fn div_primitive(a: &[BigInt], b: &[BigInt]) -> Poly {
    let db = degree(b).expect("nonzero divisor");
    let da = degree(a).expect("nonzero dividend");
    let lead = Rat::from_integer(b[db].clone());
    let mut r: Vec<Rat> = a[..=da].iter().cloned().map(Rat::from_integer).collect();
    let mut q = vec![Rat::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let factor = &r[k + db] / &lead;
        for (j, c) in b.iter().enumerate() {
            r[k + j] -= &factor * Rat::from_integer(c.clone());
        }
        q[k] = factor;
    }
    debug_assert!(r.iter().all(Zero::is_zero), "inexact division");
    let denom = q
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Poly = q.iter().map(|c| (c * Rat::from_integer(denom.clone())).to_integer()).collect();
    primitive(&ints)
}

/// Divides `f` by `(y t - x)` if it divides exactly over `Z`.
pub(crate) fn div_linear(f: &[BigInt], x: &BigInt, y: &BigInt) -> Option<Poly> {
    let d = degree(f)?;
    if d == 0 {
        return None;
    }
    // f = (y t - x) q, q of degree d-1; solve top-down.
    let mut q = vec![BigInt::zero(); d];
    let mut r: Poly = f[..=d].to_vec();
    for k in (0..d).rev() {
        let (quot, rem) = r[k + 1].div_rem(y);
        if !rem.is_zero() {
            return None;
        }
        r[k + 1] = BigInt::zero();
        r[k] += &quot * x;
        q[k] = quot;
    }
    r[0].is_zero().then_some(q)
}

fn eval_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Homogeneous evaluation `sum f_k x^k y^(d-k)`, zero iff `x/y` is a root.
fn eval_homogeneous(f: &[BigInt], x: &BigInt, y: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut ypow = BigInt::one();
    for (k, c) in f.iter().enumerate().rev() {
        acc = acc * x + c * &ypow;
        if k > 0 {
            ypow *= y;
        }
    }
    acc
}

const FIRST_PRIME: u64 = 101;
const PRIME_TRIES: usize = 60;

fn good_primes(f: &[BigInt]) -> impl Iterator<Item = u64> + '_ {
    let lead = f.last().unwrap().clone();
    (FIRST_PRIME..)
        .filter(|&p| is_prime(p))
        .filter(move |&p| fp::reduce(&lead, p) != 0)
        .take(PRIME_TRIES)
}

/// True when some prime not dividing the leading coefficient leaves `f`
/// squarefree; that certifies `f` squarefree over `Q`.
fn squarefree_witness(f: &[BigInt]) -> Option<u64> {
    good_primes(f).find(|&p| {
        let fp = FpPoly::from_ints(f, p);
        fp.gcd(&fp.derivative()).degree() == Some(0)
    })
}

pub(crate) fn is_squarefree(f: &[BigInt]) -> bool {
    let f = primitive(f);
    if degree(&f).unwrap_or(0) == 0 {
        return true;
    }
    squarefree_witness(&f).is_some() || degree(&gcd(&f, &derivative(&f))) == Some(0)
}

pub(crate) fn squarefree_part(f: &[BigInt]) -> Poly {
    let f = primitive(f);
    if degree(&f).unwrap_or(0) == 0 || squarefree_witness(&f).is_some() {
        return f;
    }
    let g = gcd(&f, &derivative(&f));
    if degree(&g) == Some(0) {
        f
    } else {
        div_primitive(&f, &g)
    }
}

/// Distinct rational roots `x/y` (coprime, `y > 0`) of a nonzero polynomial
/// with nonzero constant term.
///
/// The squarefree part is reduced modulo a prime where it stays squarefree,
/// roots are found there by search and Hensel-lifted past `2 |f(0)| |lc|`;
/// a rational root `x/y` has `x | f(0)` and `y | lc`, so `lc * x / y` is read
/// off as a symmetric residue and confirmed exactly.
pub(crate) fn rational_roots(f: &[BigInt]) -> Result<Vec<(BigInt, BigInt)>> {
    let g = squarefree_part(f);
    let d = match degree(&g) {
        None => return Err(Error::domain("zero polynomial has every point as a root")),
        Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };
    assert!(!g[0].is_zero(), "constant term must be nonzero");
    if d == 1 {
        let x = -g[0].clone();
        let y = g[1].clone();
        let common = x.gcd(&y);
        return Ok(vec![(x / &common, y / &common)]);
    }
    let p = squarefree_witness(&g).ok_or_else(|| {
        Error::Resource("no suitable prime found for root lifting".into())
    })?;
    let gp = FpPoly::from_ints(&g, p);
    let dg = derivative(&g);
    let lead = g[d].clone();
    let bound = (g[0].abs() * lead.abs()) * 2 + 1;
    let mut roots = Vec::new();
    for r0 in gp.roots_by_search() {
        let mut r = BigInt::from(r0);
        let mut q = BigInt::from(p);
        while q <= bound {
            let q2 = &q * &q;
            let num = eval_mod(&g, &r, &q2);
            let den = eval_mod(&dg, &r, &q2);
            let den_inv = den
                .modinv(&q2)
                .expect("simple root modulo p lifts");
            r = (r - num * den_inv).mod_floor(&q2);
            q = q2;
        }
        let v = fp::symmetric_mod(&(&lead * &r), &q);
        let common = v.gcd(&lead);
        if common.is_zero() {
            continue;
        }
        let (x, y) = (&v / &common, &lead / &common);
        let (x, y) = if y.is_negative() { (-x, -y) } else { (x, y) };
        if eval_homogeneous(&g, &x, &y).is_zero() {
            roots.push((x, y));
        }
    }
    Ok(roots)
}
