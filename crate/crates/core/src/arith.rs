//! Integers and rationals over a finite set of primes.
//!
//! `S` is always a finite set of rational primes; the archimedean place is
//! implicit. `R_S` is the ring of rationals whose denominators are supported
//! on `S`, and `R_S*` its unit group.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rat;

/// Trial division bound used by [`factor`].
const TRIAL_BOUND: u32 = 1_000_000;

/// Total Pollard-Brent iterations [`factor`] may spend on one input.
const RHO_BUDGET: u64 = 1 << 24;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(k, &p)| p.then_some(k as u32))
            .collect()
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin on arbitrary precision integers with the fixed base set
/// `2..=37`. Deterministic below 2^64, a strong probable-prime test above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Multiplicity of the prime `p` in the nonzero integer `n`.
pub fn vp_int(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let mut m = n.magnitude().clone();
    let mut count = 0;
    loop {
        let (q, r) = m.div_rem(&BigUint::from(p));
        if !r.is_zero() {
            return Some(count);
        }
        m = q;
        count += 1;
    }
}

/// p-adic valuation of a nonzero rational, normalized so that `vp(p) = 1`.
pub fn vp(x: &Rat, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if x.is_zero() {
        return Err(Error::UndefinedValuation);
    }
    let num = vp_int(x.numer(), p).expect("nonzero numerator");
    let den = vp_int(x.denom(), p).expect("nonzero denominator");
    Ok(num as i64 - den as i64)
}

/// A finite set of rational primes, stored sorted and without duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PlaceSet {
    primes: Vec<u64>,
}

impl PlaceSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        if let Some(bad) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::domain(format!("{bad} is not prime")));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(PlaceSet { primes })
    }

    pub fn empty() -> Self {
        PlaceSet::default()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn contains_big(&self, p: &BigUint) -> bool {
        p.to_u64().is_some_and(|p| self.contains(p))
    }

    /// `|n|` with every prime of `S` divided out.
    pub fn strip(&self, n: &BigInt) -> BigUint {
        self.strip_unsigned(n.magnitude())
    }

    pub fn strip_unsigned(&self, n: &BigUint) -> BigUint {
        let mut m = n.clone();
        if m.is_zero() {
            return m;
        }
        for &p in &self.primes {
            let p = BigUint::from(p);
            loop {
                let (q, r) = m.div_rem(&p);
                if !r.is_zero() {
                    break;
                }
                m = q;
            }
        }
        m
    }
}

impl TryFrom<Vec<u64>> for PlaceSet {
    type Error = Error;

    fn try_from(value: Vec<u64>) -> Result<Self> {
        PlaceSet::new(value)
    }
}

impl From<PlaceSet> for Vec<u64> {
    fn from(value: PlaceSet) -> Self {
        value.primes
    }
}

impl fmt::Display for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// An integral ideal of `R_S`, represented by its positive generator coprime
/// to every prime of `S` (over the rationals `R_S` is a principal ideal domain).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SIdeal {
    generator: BigUint,
}

impl SIdeal {
    pub fn new(generator: BigUint, s: &PlaceSet) -> Result<Self> {
        if generator.is_zero() {
            return Err(Error::domain("the zero ideal is not an SIdeal"));
        }
        if let Some(p) = s
            .primes()
            .iter()
            .find(|&&p| (&generator % p).is_zero())
        {
            return Err(Error::domain(format!(
                "generator {generator} is divisible by {p} in S"
            )));
        }
        Ok(SIdeal { generator })
    }

    pub fn unit() -> Self {
        SIdeal {
            generator: BigUint::one(),
        }
    }

    pub fn generator(&self) -> &BigUint {
        &self.generator
    }

    pub fn is_unit(&self) -> bool {
        self.generator.is_one()
    }

    /// Ideal divisibility: `self | other`.
    pub fn divides(&self, other: &SIdeal) -> bool {
        (&other.generator % &self.generator).is_zero()
    }

    pub fn mul(&self, other: &SIdeal) -> SIdeal {
        SIdeal {
            generator: &self.generator * &other.generator,
        }
    }
}

impl fmt::Display for SIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator)
    }
}

/// `v_p(x) >= 0` for every prime `p` outside `S`. Zero is an S-integer.
pub fn is_s_integer(x: &Rat, s: &PlaceSet) -> bool {
    s.strip(x.denom()).is_one()
}

/// `v_p(x) = 0` for every prime `p` outside `S`.
pub fn is_s_unit(x: &Rat, s: &PlaceSet) -> bool {
    !x.is_zero() && s.strip(x.numer()).is_one() && s.strip(x.denom()).is_one()
}

/// Generator of the part of `x * R_S` supported outside `S`.
pub fn outside_s_part(x: &Rat, s: &PlaceSet) -> Result<SIdeal> {
    if x.is_zero() {
        return Err(Error::domain("outside_s_part of zero"));
    }
    if !is_s_integer(x, s) {
        return Err(Error::domain(format!("{x} is not an S-integer for S = {s}")));
    }
    Ok(SIdeal {
        generator: s.strip(x.numer()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeFactor {
    #[serde(serialize_with = "crate::wire::ser_display")]
    pub prime: BigUint,
    pub exponent: u32,
    /// False when `prime` exceeds 64 bits and only passed the probable-prime test.
    pub certified: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    pub factors: Vec<PrimeFactor>,
}

impl Factorization {
    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, f| acc * f.prime.pow(f.exponent))
    }

    pub fn is_certified(&self) -> bool {
        self.factors.iter().all(|f| f.certified)
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|f| &f.prime)
    }

    fn push(&mut self, prime: BigUint, exponent: u32) {
        if exponent == 0 {
            return;
        }
        match self.factors.iter_mut().find(|f| f.prime == prime) {
            Some(f) => f.exponent += exponent,
            None => {
                let certified = prime.bits() <= 64;
                self.factors.push(PrimeFactor {
                    prime,
                    exponent,
                    certified,
                })
            }
        }
    }

    fn sort(&mut self) {
        self.factors.sort_by(|a, b| a.prime.cmp(&b.prime));
    }
}

/// Pollard-Brent: returns a nontrivial factor of the odd composite `n`, or
/// `None` once `budget` iterations are spent.
fn pollard_brent(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u64.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let m: u64 = 128;
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = m.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += steps;
                if *budget < steps {
                    return None;
                }
                *budget -= steps;
            }
            r *= 2;
        }
        if &g == n {
            // Batched product collapsed; back up one step at a time.
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
        if *budget == 0 {
            return None;
        }
    }
    None
}

/// `n = r^k` with `k >= 2` maximal-ish, if such a decomposition exists.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    (2..=n.bits() as u32).find_map(|k| {
        let r = n.nth_root(k);
        (r.pow(k) == *n && r > BigUint::one()).then_some((r, k))
    })
}

/// Prime factorization of `|n|`.
///
/// Trial division up to 10^6, then Pollard-Brent. Factors above 64 bits are
/// only probable primes and carry `certified = false`.
pub fn factor(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::domain("cannot factor zero"));
    }
    let mut out = Factorization::default();
    let mut m = n.magnitude().clone();

    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        if let Some(mut small) = m.to_u64() {
            let p = p as u64;
            let mut e = 0;
            while small % p == 0 {
                small /= p;
                e += 1;
            }
            out.push(BigUint::from(p), e);
            m = BigUint::from(small);
        } else {
            let mut e = 0;
            loop {
                let (q, r) = m.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                m = q;
                e += 1;
            }
            out.push(pb, e);
        }
    }

    let bound = BigUint::from(TRIAL_BOUND as u64 * TRIAL_BOUND as u64);
    if m.is_one() {
        out.sort();
        return Ok(out);
    }
    if m < bound {
        out.push(m, 1);
        out.sort();
        return Ok(out);
    }

    let mut budget = RHO_BUDGET;
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if c < bound || is_probable_prime(&c) {
            out.push(c, 1);
            continue;
        }
        // Rho is hopeless on prime powers; peel those off first.
        if let Some((root, k)) = perfect_power(&c) {
            for _ in 0..k {
                stack.push(root.clone());
            }
            continue;
        }
        match pollard_brent(&c, &mut budget) {
            Some(d) => {
                let e = &c / &d;
                stack.push(d);
                stack.push(e);
            }
            None => {
                let mut cofactor = c;
                for rest in stack {
                    cofactor *= rest;
                }
                out.sort();
                return Err(Error::FactorizationBudget {
                    partial: Box::new(out),
                    cofactor,
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All S-units `±prod p^e_p` with `|e_p| <= bound`, in increasing order.
pub fn enumerate_s_units(s: &PlaceSet, bound: u32) -> Vec<Rat> {
    let mut positive = vec![Rat::one()];
    for &p in s.primes() {
        let p = BigInt::from(p);
        let mut next = Vec::with_capacity(positive.len() * (2 * bound as usize + 1));
        for u in &positive {
            for e in -(bound as i32)..=(bound as i32) {
                let scale = Rat::from_integer(p.pow(e.unsigned_abs()));
                next.push(if e < 0 { u / &scale } else { u * &scale });
            }
        }
        positive = next;
    }
    let mut all: Vec<Rat> = positive.iter().map(|u| -u).collect();
    all.extend(positive);
    all.sort();
    all
}

/// A solution of `sum a_i x_i = 1` in S-units.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitSolution {
    pub values: Vec<Rat>,
    /// Some proper nonempty subsum `sum_{i in I} a_i x_i` vanishes.
    pub degenerate: bool,
}

/// Default exponent bound for [`solve_unit_eq`].
pub const DEFAULT_UNIT_BOUND: u32 = 12;

/// Exhaustive solver for `a_1 x_1 + ... + a_n x_n = 1` (`1 <= n <= 3`) over
/// S-units whose exponents are bounded by `bound`.
pub fn solve_unit_eq(coeffs: &[Rat], s: &PlaceSet, bound: u32) -> Result<Vec<UnitSolution>> {
    if coeffs.is_empty() || coeffs.len() > 3 {
        return Err(Error::domain("unit equation needs between 1 and 3 terms"));
    }
    if coeffs.iter().any(Zero::is_zero) {
        return Err(Error::domain("unit equation coefficients must be nonzero"));
    }
    let units = enumerate_s_units(s, bound);
    let unit_set: HashSet<&Rat> = units.iter().collect();
    let last = coeffs.len() - 1;

    let mut found = Vec::new();
    let mut prefix: Vec<Rat> = Vec::with_capacity(coeffs.len());
    // Choose the first n-1 unknowns freely, solve for the last.
    fn rec(
        depth: usize,
        partial: &Rat,
        prefix: &mut Vec<Rat>,
        ctx: (&[Rat], &[Rat], &HashSet<&Rat>, usize),
        found: &mut Vec<Vec<Rat>>,
    ) {
        let (coeffs, units, unit_set, last) = ctx;
        if depth == last {
            let x = (Rat::one() - partial) / &coeffs[last];
            if unit_set.contains(&x) {
                let mut sol = prefix.clone();
                sol.push(x);
                found.push(sol);
            }
            return;
        }
        for u in units {
            prefix.push(u.clone());
            let next = partial + &coeffs[depth] * u;
            rec(depth + 1, &next, prefix, ctx, found);
            prefix.pop();
        }
    }
    rec(
        0,
        &Rat::zero(),
        &mut prefix,
        (coeffs, &units, &unit_set, last),
        &mut found,
    );

    let mut out: Vec<UnitSolution> = found
        .into_iter()
        .map(|values| {
            let degenerate = has_vanishing_subsum(coeffs, &values);
            UnitSolution { values, degenerate }
        })
        .collect();
    out.sort();
    Ok(out)
}

fn has_vanishing_subsum(coeffs: &[Rat], values: &[Rat]) -> bool {
    let n = coeffs.len();
    (1..(1u32 << n) - 1).any(|mask| {
        (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| &coeffs[i] * &values[i])
            .sum::<Rat>()
            .is_zero()
    })
}

/// The Möbius function on positive integers.
pub fn mobius_mu(n: u64) -> i64 {
    assert!(n >= 1);
    let mut m = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

/// Integer sign helper shared by the normalizers.
pub(crate) fn first_nonzero_sign<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> Sign {
    values
        .into_iter()
        .find(|v| !v.is_zero())
        .map_or(Sign::NoSign, |v| v.sign())
}

/// Gcd of a list of integers (zero for an empty or all-zero list).
pub(crate) fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn s(ps: &[u64]) -> PlaceSet {
        PlaceSet::new(ps.iter().copied()).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(vp(&r(12, 1), 2).unwrap(), 2);
        assert_eq!(vp(&r(3, 4), 2).unwrap(), -2);
        assert_eq!(vp(&r(7, 1), 5).unwrap(), 0);
        assert_eq!(vp(&r(0, 1), 5), Err(Error::UndefinedValuation));
        assert!(matches!(vp(&r(3, 1), 4), Err(Error::Domain(_))));
    }

    #[test]
    fn s_integers_and_units() {
        assert!(is_s_integer(&r(3, 4), &s(&[2])));
        assert!(!is_s_integer(&r(1, 3), &s(&[2])));
        assert!(is_s_integer(&r(0, 1), &PlaceSet::empty()));
        assert!(is_s_unit(&r(-8, 3), &s(&[2, 3])));
        assert!(!is_s_unit(&r(5, 1), &s(&[2, 3])));
        assert!(!is_s_unit(&r(0, 1), &s(&[2, 3])));
    }

    #[test]
    fn place_set_rejects_composites_and_sorts() {
        assert!(PlaceSet::new([4]).is_err());
        assert_eq!(s(&[5, 2, 5]).primes(), &[2, 5]);
    }

    #[test]
    fn factor_examples() {
        let f = factor(&BigInt::from(36)).unwrap();
        let pairs: Vec<(u64, u32)> = f
            .factors
            .iter()
            .map(|f| (f.prime.to_u64().unwrap(), f.exponent))
            .collect();
        assert_eq!(pairs, vec![(2, 2), (3, 2)]);
        let f = factor(&BigInt::from(-7)).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].prime, BigUint::from(7u32));
        let f = factor(&BigInt::from(2 * 3 * 5 * 7 * 11)).unwrap();
        assert_eq!(f.factors.len(), 5);
        assert!(f.factors.iter().all(|f| f.exponent == 1 && f.certified));
        assert!(factor(&BigInt::zero()).is_err());
    }

    #[test]
    fn factor_beyond_trial_division() {
        // Two primes just above 10^6 and a 61-bit Mersenne prime.
        let p = BigUint::from(1_000_003u64);
        let q = BigUint::from(1_000_033u64);
        let m61 = BigUint::from((1u64 << 61) - 1);
        let n = BigInt::from(&p * &q * &m61 * &m61);
        let f = factor(&n).unwrap();
        assert_eq!(f.product(), n.magnitude().clone());
        let primes: Vec<&BigUint> = f.primes().collect();
        assert_eq!(primes, vec![&p, &q, &m61]);
        assert_eq!(f.factors[2].exponent, 2);
        assert!(f.is_certified());
    }

    #[test]
    fn large_probable_primes_are_flagged() {
        // 2^89 - 1 is prime and wider than 64 bits.
        let m89: BigUint = (BigUint::one() << 89u32) - BigUint::one();
        let f = factor(&BigInt::from(m89.clone() * 3u32)).unwrap();
        assert_eq!(f.factors.last().unwrap().prime, m89);
        assert!(!f.factors.last().unwrap().certified);
    }

    #[test]
    fn outside_s_part_examples() {
        assert_eq!(
            outside_s_part(&r(36, 1), &s(&[2])).unwrap().generator(),
            &BigUint::from(9u32)
        );
        assert_eq!(
            outside_s_part(&r(5, 2), &s(&[2])).unwrap().generator(),
            &BigUint::from(5u32)
        );
        assert!(outside_s_part(&r(-1, 1), &PlaceSet::empty()).unwrap().is_unit());
        assert!(outside_s_part(&r(1, 3), &s(&[2])).is_err());
    }

    #[test]
    fn s_unit_enumeration() {
        assert_eq!(enumerate_s_units(&PlaceSet::empty(), 5), vec![r(-1, 1), r(1, 1)]);
        assert_eq!(
            enumerate_s_units(&s(&[2]), 1),
            vec![r(-2, 1), r(-1, 1), r(-1, 2), r(1, 2), r(1, 1), r(2, 1)]
        );
        assert_eq!(enumerate_s_units(&s(&[2, 3]), 2).len(), 50);
    }

    #[test]
    fn unit_equation_examples() {
        let one = r(1, 1);
        assert!(solve_unit_eq(&[one.clone(), one.clone()], &PlaceSet::empty(), 3)
            .unwrap()
            .is_empty());
        let sols = solve_unit_eq(&[one.clone(), one.clone()], &s(&[2]), 4).unwrap();
        let values: Vec<Vec<Rat>> = sols.iter().map(|s| s.values.clone()).collect();
        assert_eq!(
            values,
            vec![
                vec![r(-1, 1), r(2, 1)],
                vec![r(1, 2), r(1, 2)],
                vec![r(2, 1), r(-1, 1)],
            ]
        );
        assert!(sols.iter().all(|s| !s.degenerate));
        let sols = solve_unit_eq(&[one.clone()], &s(&[2, 3]), 4).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].values, vec![one]);
    }

    #[test]
    fn unit_equation_degenerate_flag() {
        // x + y + z = 1 has the degenerate family (u, -u, 1).
        let one = r(1, 1);
        let sols = solve_unit_eq(&[one.clone(), one.clone(), one], &s(&[2]), 1).unwrap();
        let degenerate = sols
            .iter()
            .find(|s| s.values == vec![r(2, 1), r(-2, 1), r(1, 1)])
            .unwrap();
        assert!(degenerate.degenerate);
        assert!(sols.iter().any(|s| !s.degenerate));
    }

    #[test]
    fn mobius_function() {
        let mu: Vec<i64> = (1..=10).map(mobius_mu).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
