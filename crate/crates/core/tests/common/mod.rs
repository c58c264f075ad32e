//! Independent oracles for the integration tests: deliberately naive,
//! sharing no code with the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub type Rat = num_rational::BigRational;

pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Rat::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rat>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Sylvester matrix, `deg g` shifted rows of `f` above `deg f` rows of `g`;
/// coefficients run from `X^d` down to `Y^d`.
pub fn sylvester_oracle(f: &[Rat], g: &[Rat]) -> Vec<Vec<Rat>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = vec![Rat::zero(); size];
        for (k, c) in f.iter().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Rat::zero(); size];
        for (k, c) in g.iter().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

pub fn resultant_oracle(f: &[Rat], g: &[Rat]) -> Rat {
    cofactor_det(&sylvester_oracle(f, g))
}

pub fn resultant_oracle_i64(f: &[i64], g: &[i64]) -> BigInt {
    let f: Vec<Rat> = f.iter().map(|&c| int(c)).collect();
    let g: Vec<Rat> = g.iter().map(|&c| int(c)).collect();
    resultant_oracle(&f, &g).to_integer()
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: i64, p: i64) -> i64 {
    (1..p).find(|&x| a * x % p == 1).expect("unit")
}

/// Polynomial gcd over `F_p` by Euclid; ascending coefficients.
fn gcd_mod(mut a: Vec<i64>, mut b: Vec<i64>, p: i64) -> Vec<i64> {
    loop {
        b = trim(b);
        if b.is_empty() {
            return trim(a);
        }
        a = trim(a);
        while a.len() >= b.len() {
            let lead = a[a.len() - 1] * inv_mod(b[b.len() - 1], p) % p;
            let shift = a.len() - b.len();
            for (i, &c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] - lead * c).rem_euclid(p);
            }
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// Common root of two binary forms over the algebraic closure of `F_p`:
/// at `[1:0]` when both leading coefficients vanish, otherwise when the
/// dehomogenized reductions have a nonconstant gcd (a form reducing to zero
/// shares every root of the other).
pub fn common_root_mod_p_oracle(f: &[i64], g: &[i64], p: i64) -> bool {
    let red = |h: &[i64]| -> Vec<i64> { h.iter().rev().map(|c| c.rem_euclid(p)).collect() };
    let (fr, gr) = (red(f), red(g));
    if fr[fr.len() - 1] == 0 && gr[gr.len() - 1] == 0 {
        return true;
    }
    let (ft, gt) = (trim(fr), trim(gr));
    if ft.is_empty() && gt.is_empty() {
        return true;
    }
    gcd_mod(ft, gt, p).len() >= 2
}

/// `|n|` with the given primes divided out.
pub fn strip_oracle(n: &BigInt, primes: &[u64]) -> BigInt {
    let mut n = n.abs();
    for &p in primes {
        let p = BigInt::from(p);
        while !n.is_zero() && (&n % &p).is_zero() {
            n /= &p;
        }
    }
    n
}

/// Primes dividing `n` by trial division.
pub fn prime_support(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            out.push(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(u64::try_from(&n).expect("small"));
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= n {
        if (&n % &k).is_zero() {
            out.push(k.clone());
            out.push(&n / &k);
        }
        k += 1;
    }
    out
}

/// Rational roots `(x, y)` (coprime, `y >= 0`) of a binary form by the
/// rational root test; coefficients from `X^d` down to `Y^d`.
pub fn rational_roots_oracle(f: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    let d = f.len() - 1;
    if f[0].is_zero() {
        out.push((BigInt::one(), BigInt::zero()));
    }
    // Strip trailing zeros: roots at [0:1].
    let mut core: Vec<BigInt> = f.to_vec();
    if core[d].is_zero() {
        out.push((BigInt::zero(), BigInt::one()));
        while core.last().is_some_and(Zero::is_zero) {
            core.pop();
        }
    }
    while core.first().is_some_and(Zero::is_zero) {
        core.remove(0);
    }
    if core.len() < 2 {
        out.sort();
        return out;
    }
    let lead = core[0].clone();
    let tail = core[core.len() - 1].clone();
    let e = core.len() - 1;
    for num in divisors(&tail) {
        for den in divisors(&lead) {
            for sign in [1, -1] {
                let x: BigInt = &num * BigInt::from(sign);
                if x.gcd(&den) != BigInt::one() {
                    continue;
                }
                let mut acc = BigInt::zero();
                for (k, c) in core.iter().enumerate() {
                    acc += c * x.pow((e - k) as u32) * den.pow(k as u32);
                }
                let cand = (x.clone(), den.clone());
                if acc.is_zero() && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out.sort();
    out
}

pub fn random_rat(rng: &mut impl Rng, bound: i64) -> Rat {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    q(n, d)
}

pub fn random_nonzero_rat(rng: &mut impl Rng, bound: i64) -> Rat {
    loop {
        let r = random_rat(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}
