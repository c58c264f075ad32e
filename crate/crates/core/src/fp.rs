//! Dense polynomials over a prime field `F_p`, `p < 2^63`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FpPoly {
    /// Ascending coefficients, no trailing zeros.
    pub coeffs: Vec<u64>,
    pub p: u64,
}

pub(crate) fn reduce(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn add(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn sub(a: u64, b: u64, p: u64) -> u64 {
    add(a, p - b % p, p)
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

impl FpPoly {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut f = FpPoly { coeffs, p };
        f.trim();
        f
    }

    pub fn from_ints(coeffs: &[BigInt], p: u64) -> Self {
        FpPoly::new(coeffs.iter().map(|c| reduce(c, p)).collect(), p)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add(mul(acc, x, self.p), c, self.p))
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| mul(c, k as u64 % p, p))
            .collect();
        FpPoly::new(coeffs, p)
    }

    pub fn rem(&self, other: &FpPoly) -> FpPoly {
        assert!(!other.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.coeffs.clone();
        let dq = other.coeffs.len() - 1;
        let lead_inv = inv(*other.coeffs.last().unwrap(), p);
        while r.len() > dq && !r.is_empty() {
            let shift = r.len() - 1 - dq;
            let factor = mul(*r.last().unwrap(), lead_inv, p);
            for (k, &c) in other.coeffs.iter().enumerate() {
                r[shift + k] = sub(r[shift + k], mul(factor, c, p), p);
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        FpPoly { coeffs: r, p }
    }

    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Roots in `F_p` by exhaustive evaluation; intended for small `p`.
    pub fn roots_by_search(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }
}

/// Symmetric residue of `n` modulo `m`, in `(-m/2, m/2]`.
pub(crate) fn symmetric_mod(n: &BigInt, m: &BigInt) -> BigInt {
    let r = n.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_detects_common_factor() {
        // (t - 1)(t - 2) and (t - 1)(t + 3) mod 7.
        let a = FpPoly::new(vec![2, 7 - 3, 1], 7);
        let b = FpPoly::new(vec![7 - 3, 2, 1], 7);
        assert_eq!(a.gcd(&b).degree(), Some(1));
        assert_eq!(a.roots_by_search(), vec![1, 2]);
    }

    #[test]
    fn derivative_and_inverse() {
        let f = FpPoly::new(vec![1, 0, 0, 1], 5);
        assert_eq!(f.derivative().coeffs, vec![0, 0, 3]);
        assert_eq!(mul(inv(3, 101), 3, 101), 1);
    }

    #[test]
    fn symmetric_residues() {
        let m = BigInt::from(10);
        assert_eq!(symmetric_mod(&BigInt::from(7), &m), BigInt::from(-3));
        assert_eq!(symmetric_mod(&BigInt::from(5), &m), BigInt::from(5));
        assert_eq!(symmetric_mod(&BigInt::from(-12), &m), BigInt::from(-2));
    }
}
