//! Explicit one- and two-parameter families of quadratic maps and the
//! claims checked on them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{enumerate_s_units, is_s_unit, PlaceSet};
use crate::dynamics::{conjugacy_with_cycles, tuples_equivalent, Conjugacy, Cycle, RationalMap};
use crate::error::{Error, Result};
use crate::proj::{Mobius, ProjPoint};
use crate::reduction::nf3_map;
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyTag {
    Phi4,
    Psi3,
    Nf3,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::Phi4 => "phi4",
            FamilyTag::Psi3 => "psi3",
            FamilyTag::Nf3 => "nf3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub tag: FamilyTag,
    pub params: Vec<Rat>,
    pub map: RationalMap,
}

impl FamilyMember {
    /// Rebuilds the member from its tag and parameters.
    pub fn rebuild(&self) -> Result<FamilyMember> {
        match (self.tag, self.params.as_slice()) {
            (FamilyTag::Phi4, [a]) => phi4(a),
            (FamilyTag::Psi3, [a]) => psi3(a),
            (FamilyTag::Nf3, [a, c]) => nf3(a, c),
            _ => Err(Error::domain("wrong parameter count for family")),
        }
    }
}

fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The 4-cycle `([0:1], [a:1], [1:0], [2:1])` of [`phi4`].
pub fn phi4_cycle(a: &Rat) -> Cycle {
    Cycle::new(vec![
        ProjPoint::zero(),
        ProjPoint::affine(a),
        ProjPoint::infinity(),
        ProjPoint::from_i64(2, 1).unwrap(),
    ])
    .expect("distinct for admissible a")
}

fn phi4_admissible(a: &Rat) -> Result<()> {
    if [0, -2, 2, 4].iter().any(|&e| *a == int(e)) {
        return Err(Error::domain(format!("a = {a} is excluded from the family")));
    }
    Ok(())
}

/// `Φ_a = [(X - 2Y)(4X - a^2 Y) : 2(X - aY)(X - Y)]`.
pub fn phi4(a: &Rat) -> Result<FamilyMember> {
    phi4_admissible(a)?;
    let a2 = a * a;
    let f = [int(4), -(&a2 + int(8)), int(2) * &a2];
    let g = [int(2), int(-2) * (a + int(1)), int(2) * a];
    let map = RationalMap::from_rats(&f, &g)?;
    if !map.is_cycle(&phi4_cycle(a)) {
        return Err(Error::IdentityViolation(format!("phi4({a}) lost its 4-cycle")));
    }
    Ok(FamilyMember { tag: FamilyTag::Phi4, params: vec![a.clone()], map })
}

/// `|2 d n (n - 4d)(n^2 - 4d^2)|` for `a = n/d` in lowest terms.
pub fn phi4_bad_bound(a: &Rat) -> Result<BigInt> {
    phi4_admissible(a)?;
    let n = a.numer();
    let d = a.denom();
    let v: BigInt = BigInt::from(2) * d * n * (n - d * 4) * (n * n - d * d * 4);
    Ok(v.abs())
}

/// `2t^2 - a^2 t + 3at - 4t + a^2 - 4a = 0`.
pub fn curve_c_contains(a: &Rat, t: &Rat) -> bool {
    let v = int(2) * t * t - a * a * t + int(3) * a * t - int(4) * t + a * a - int(4) * a;
    v.is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Period2Report {
    /// Affine points `t` of exact period 2 for `Φ_a`.
    pub period2: Vec<Rat>,
    /// Whether every one of them lies on the curve.
    pub all_on_curve: bool,
    /// Rational `t` with `(a, t)` on the curve but `[t:1]` not of exact
    /// period 2.
    pub nonconverse: Vec<Rat>,
}

pub fn period2_points_on_c(a: &Rat) -> Result<Period2Report> {
    let member = phi4(a)?;
    let period2: Vec<Rat> = member
        .map
        .periodic_points(2)?
        .iter()
        .filter_map(ProjPoint::affine_value)
        .collect();
    let all_on_curve = period2.iter().all(|t| curve_c_contains(a, t));
    // The curve is quadratic in t: 2t^2 + (3a - a^2 - 4) t + (a^2 - 4a).
    let coeffs = [int(2), int(3) * a - a * a - int(4), a * a - int(4) * a];
    let quad = RationalMap::from_rats(&coeffs, &[int(1), int(0), int(0)]);
    let mut nonconverse = Vec::new();
    if let Ok(q) = quad {
        for (p, _) in q.f().rational_roots()? {
            if let Some(t) = p.affine_value() {
                if curve_c_contains(a, &t) && !period2.contains(&t) {
                    nonconverse.push(t);
                }
            }
        }
    }
    nonconverse.sort();
    Ok(Period2Report { period2, all_on_curve, nonconverse })
}

/// The 3-cycle `([0:1], [1:0], [1:1])` shared by [`psi3`] and [`nf3`].
pub fn pp0_cycle() -> Cycle {
    Cycle::new(vec![ProjPoint::zero(), ProjPoint::infinity(), ProjPoint::one()]).unwrap()
}

/// `ψ_a = [(X - Y)(aX + Y) : aX^2]`.
pub fn psi3(a: &Rat) -> Result<FamilyMember> {
    if a.is_zero() {
        return Err(Error::domain("a = 0 is excluded from the family"));
    }
    let map = nf3_map(a, &Rat::zero())?;
    Ok(FamilyMember { tag: FamilyTag::Psi3, params: vec![a.clone()], map })
}

/// `[(X - Y)(aX + Y) : X(aX + cY)]`.
pub fn nf3(a: &Rat, c: &Rat) -> Result<FamilyMember> {
    let map = nf3_map(a, c)?;
    Ok(FamilyMember { tag: FamilyTag::Nf3, params: vec![a.clone(), c.clone()], map })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum N3Branch {
    /// `a = -1`.
    I,
    /// `c = 0`.
    Ii,
    /// `c = 1 - a`.
    Iii,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct N3Classification {
    /// Matching branches in order; empty means a finite-set candidate.
    pub branches: Vec<N3Branch>,
}

impl N3Classification {
    pub fn is_finite_set_candidate(&self) -> bool {
        self.branches.is_empty()
    }

    /// `"i"`, `"ii+iii"`, ... or `"finite-set-candidate"`.
    pub fn label(&self) -> String {
        if self.branches.is_empty() {
            return "finite-set-candidate".into();
        }
        self.branches
            .iter()
            .map(|b| match b {
                N3Branch::I => "i",
                N3Branch::Ii => "ii",
                N3Branch::Iii => "iii",
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Sorts `(a, c)` with `a, a + c ∈ R_S*` into the branches `a = -1`, `c = 0`,
/// `c = 1 - a`; anything else can only come from a finite exceptional set.
pub fn classify_prop_n3(a: &Rat, c: &Rat, s: &PlaceSet) -> Result<N3Classification> {
    if !is_s_unit(a, s) {
        return Err(Error::domain(format!("a = {a} is not an S-unit for S = {s}")));
    }
    if !is_s_unit(&(a + c), s) {
        return Err(Error::domain(format!("a + c = {} is not an S-unit for S = {s}", a + c)));
    }
    let mut branches = Vec::new();
    if *a == int(-1) {
        branches.push(N3Branch::I);
    }
    if c.is_zero() {
        branches.push(N3Branch::Ii);
    }
    if *c == int(1) - a {
        branches.push(N3Branch::Iii);
    }
    Ok(N3Classification { branches })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpReport {
    pub candidates: usize,
    /// Parameters `b` with `ψ_b` conjugate to `ψ_a`, sorted.
    pub conjugate: Vec<Rat>,
}

impl EndpReport {
    pub fn count(&self) -> usize {
        self.conjugate.len()
    }

    pub fn within_bound(&self) -> bool {
        self.count() <= 6
    }
}

/// Counts S-units `b` (exponents up to `bound`) with `ψ_b` conjugate to `ψ_a`
/// over `PGL_2(Q)`, tested through their rational 3-cycles.
pub fn endp_count(a: &Rat, s: &PlaceSet, bound: u32) -> Result<EndpReport> {
    let base = psi3(a)?.map;
    let base_cycles = base.cycles(3)?;
    let units = enumerate_s_units(s, bound);
    let mut conjugate = Vec::new();
    for b in &units {
        let other = psi3(b)?.map;
        let other_cycles = other.cycles(3)?;
        if let Conjugacy::Witness(_) = conjugacy_with_cycles(&base, &base_cycles, &other, &other_cycles)? {
            conjugate.push(b.clone());
        }
    }
    Ok(EndpReport { candidates: units.len(), conjugate })
}

/// Parameters `b` whose 4-cycle `([0:1],[b:1],[1:0],[2:1])` is equivalent
/// to the one for `a` under `PGL_2(R_S)`, with the rotation that matches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngrReport {
    pub candidates: usize,
    pub equivalent: Vec<(Rat, usize)>,
}

impl EngrReport {
    /// Equivalent parameters other than `a` itself.
    pub fn others(&self, a: &Rat) -> usize {
        self.equivalent.iter().filter(|(b, _)| b != a).count()
    }

    /// Whether the count, `a` included, is the two the example claims.
    pub fn agrees_with_two(&self) -> bool {
        self.equivalent.len() == 2
    }
}

/// Searches `b = n/d` with `|n|, d <= bound` (excluding `0, ±2, 4`). The
/// count is reported rather than asserted: the expected "two" depends on `S`.
pub fn engr_equivalent(a: &Rat, s: &PlaceSet, bound: i64) -> Result<EngrReport> {
    phi4(a)?;
    let base = phi4_cycle(a);
    let mut candidates = 0;
    let mut equivalent = Vec::new();
    for d in 1..=bound {
        for n in -bound..=bound {
            if num_integer::gcd(n, d) != 1 {
                continue;
            }
            let b = Rat::new(BigInt::from(n), BigInt::from(d));
            if phi4_admissible(&b).is_err() {
                continue;
            }
            candidates += 1;
            if let Some((_, h)) = tuples_equivalent(&base, &phi4_cycle(&b), s)? {
                equivalent.push((b, h));
            }
        }
    }
    equivalent.sort();
    Ok(EngrReport { candidates, equivalent })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl BridgeReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `[X - Y : X]`.
pub fn bridge_mobius() -> Mobius {
    Mobius::from_i64(1, -1, 1, 0).unwrap()
}

/// First identity: `[B] ∘ [(X - Y)^2 : X(X - (v + 1)Y)] ∘ [B]^-1 = ψ_(-1/v)`.
pub fn bridge_first(v: &Rat) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::domain("v must be nonzero"));
    }
    let lhs = RationalMap::from_rats(
        &[int(1), int(-2), int(1)],
        &[int(1), -(v + int(1)), int(0)],
    )?
    .conjugate(&bridge_mobius());
    Ok(lhs == psi3(&(-v.recip()))?.map)
}

/// Second identity:
/// `[B]^-1 ∘ [(X - Y)(aX + Y) : X(aX + (1 - a)Y)] ∘ [B] = ψ_(-1/a)`.
pub fn bridge_second(a: &Rat) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::domain("a must be nonzero"));
    }
    let lhs = nf3_map(a, &(int(1) - a))?.conjugate(&bridge_mobius().inverse());
    Ok(lhs == psi3(&(-a.recip()))?.map)
}

/// Deterministic nonzero sample parameters `±n/d`.
pub fn sample_params(count: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(count);
    let mut k: i64 = 1;
    while out.len() < count {
        let n = (k * 7) % 11 + 1;
        let d = (k * 5) % 6 + 1;
        let sign = if k % 2 == 0 { -1 } else { 1 };
        let r = Rat::new(BigInt::from(sign * n), BigInt::from(d));
        if !out.contains(&r) {
            out.push(r);
        }
        k += 1;
    }
    out
}

/// Checks both bridge identities on 25 sampled parameters each.
pub fn m1_bridge_check() -> Result<BridgeReport> {
    m1_bridge_check_with(25)
}

pub fn m1_bridge_check_with(samples: usize) -> Result<BridgeReport> {
    let mut failures = Vec::new();
    let params = sample_params(samples);
    for v in &params {
        if !bridge_first(v)? {
            failures.push(format!("first identity fails at v = {v}"));
        }
        if !bridge_second(v)? {
            failures.push(format!("second identity fails at a = {v}"));
        }
    }
    Ok(BridgeReport { checked: 2 * params.len(), failures })
}
