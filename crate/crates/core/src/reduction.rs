//! Discriminants, good reduction, normal forms and the checkers built on
//! them.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{factor, gcd_all, is_prime, is_s_unit, vp_int, Factorization, PlaceSet};
use crate::dynamics::RationalMap;
use crate::error::{Error, Result};
use crate::forms::{common_root_mod_p, BinaryForm};
use crate::proj::{mobius_to_zero_inf_one, Mobius, ProjPoint};
use crate::Rat;

/// `v_p(Disc) = v_p(Res(F, G)) - 2d min(v_p F, v_p G)` for raw forms.
pub fn vp_disc_forms(f: &BinaryForm, g: &BinaryForm, p: u64) -> Result<u64> {
    let res = f.resultant(g)?;
    let v_res = vp_int(&res, p).ok_or(Error::DegenerateMap)?;
    let min = f.vp(p)?.min(g.vp(p)?);
    let d = f.degree() as u64;
    let v = v_res as i64 - (2 * d * min) as i64;
    assert!(v >= 0, "discriminant valuation is nonnegative");
    Ok(v as u64)
}

pub fn vp_disc(phi: &RationalMap, p: u64) -> Result<u64> {
    vp_disc_forms(phi.f(), phi.g(), p)
}

/// Positive generator of `Disc(Φ)`: `|Res(F, G)|` of the primitive model.
pub fn disc(phi: &RationalMap) -> BigUint {
    phi.resultant().magnitude().clone()
}

pub fn good_outside(phi: &RationalMap, s: &PlaceSet) -> bool {
    phi.has_good_reduction_outside(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    #[serde(serialize_with = "crate::wire::ser_display")]
    pub disc: BigUint,
    pub factorization: Factorization,
    #[serde(serialize_with = "crate::wire::ser_display_seq")]
    pub bad_primes_outside_s: Vec<BigUint>,
    pub good_outside_s: bool,
}

/// Primes below this bound are double-checked against common roots modulo `p`.
const CROSS_CHECK_BOUND: u64 = 100;

pub fn reduction_report(phi: &RationalMap, s: &PlaceSet) -> Result<ReductionReport> {
    let d = disc(phi);
    let factorization = factor(&BigInt::from(d.clone()))?;
    let bad_primes_outside_s: Vec<BigUint> = factorization
        .primes()
        .filter(|p| !s.contains_big(p))
        .cloned()
        .collect();
    for p in (2..CROSS_CHECK_BOUND).filter(|&p| is_prime(p)) {
        let bad = factorization.primes().any(|q| *q == BigUint::from(p));
        let common = common_root_mod_p(phi.f(), phi.g(), p)?;
        if bad != common {
            return Err(Error::IdentityViolation(format!(
                "at p = {p}: discriminant says bad = {bad}, common root mod p = {common}"
            )));
        }
    }
    let good_outside_s = bad_primes_outside_s.is_empty();
    Ok(ReductionReport {
        disc: d,
        factorization,
        bad_primes_outside_s,
        good_outside_s,
    })
}

/// Disc of a Möbius class: `|det|` of the coprime representative, as a
/// generator outside `S`.
pub fn disc_mobius(a: &Mobius, s: &PlaceSet) -> BigUint {
    s.strip(&a.det())
}

/// `Ψ = [(X - λY)(aX + bY) : X(aX + cY)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormNF {
    pub lambda: Rat,
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl NormalFormNF {
    pub fn new(lambda: Rat, a: Rat, b: Rat, c: Rat) -> Self {
        NormalFormNF { lambda, a, b, c }
    }

    /// `λ != 0, a != 0, b != 0, b != c, aλ != -c`: exactly the conditions for
    /// degree two.
    pub fn is_valid(&self) -> bool {
        !self.lambda.is_zero()
            && !self.a.is_zero()
            && !self.b.is_zero()
            && self.b != self.c
            && &self.a * &self.lambda != -self.c.clone()
    }

    pub fn map(&self) -> Result<RationalMap> {
        let f = [
            self.a.clone(),
            &self.b - &self.a * &self.lambda,
            -(&self.lambda * &self.b),
        ];
        let g = [self.a.clone(), self.c.clone(), Rat::zero()];
        RationalMap::from_rats(&f, &g)
    }

    /// `(a, b, c)` scaled to coprime integers, `λ` unchanged.
    pub fn scaled_integral(&self) -> NormalFormNF {
        let den = [&self.a, &self.b, &self.c]
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = [&self.a, &self.b, &self.c]
            .iter()
            .map(|r| (*r * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let g = gcd_all(&ints);
        let q = |i: usize| Rat::from_integer(&ints[i] / &g);
        NormalFormNF::new(self.lambda.clone(), q(0), q(1), q(2))
    }
}

impl std::fmt::Display for NormalFormNF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "lambda={} a={} b={} c={}",
            self.lambda, self.a, self.b, self.c
        )
    }
}

/// Conjugates a quadratic map with orbit `η -> α -> β -> γ` into normal
/// form, using `[A]` with `α -> [0:1]`, `β -> [1:0]`, `γ -> [1:1]`.
///
/// `η = γ` is allowed: a 3-cycle `α -> β -> γ -> α` gives `λ = 1`.
pub fn to_normal_form(
    phi: &RationalMap,
    eta: &ProjPoint,
    alpha: &ProjPoint,
    beta: &ProjPoint,
    gamma: &ProjPoint,
) -> Result<(NormalFormNF, Mobius)> {
    if phi.degree() != 2 {
        return Err(Error::domain("normal forms are for quadratic maps"));
    }
    for (from, to, name) in [(eta, alpha, "eta -> alpha"), (alpha, beta, "alpha -> beta"), (beta, gamma, "beta -> gamma")] {
        if phi.apply(from) != *to {
            return Err(Error::domain(format!("orbit relation {name} fails")));
        }
    }
    if alpha == beta || alpha == gamma || beta == gamma {
        return Err(Error::domain("alpha, beta, gamma must be pairwise distinct"));
    }
    if eta == beta {
        return Err(Error::domain("eta coincides with beta, so lambda would be infinite"));
    }
    if eta == alpha {
        return Err(Error::domain("eta coincides with alpha, so lambda would vanish"));
    }
    let a_mob = mobius_to_zero_inf_one(alpha, beta, gamma)?;
    let psi = phi.conjugate(&a_mob);
    let lambda = a_mob.apply(eta).affine_value().expect("eta is not sent to infinity");
    let [f0, f1, f2] = three(psi.f());
    let [g0, g1, g2] = three(psi.g());
    let a = Rat::from_integer(g0.clone());
    let c = Rat::from_integer(g1.clone());
    let b = Rat::from_integer(f1.clone()) + &a * &lambda;
    let nf = NormalFormNF::new(lambda.clone(), a.clone(), b.clone(), c);
    let shape_ok = g2.is_zero()
        && *f0 == *g0
        && Rat::from_integer(f2.clone()) == -(&lambda * &b);
    if !shape_ok || nf.map()? != psi {
        return Err(Error::IdentityViolation(format!(
            "conjugate {psi} is not of normal-form shape"
        )));
    }
    Ok((nf, a_mob))
}

fn three(f: &BinaryForm) -> [&BigInt; 3] {
    let c = f.coeffs();
    [&c[0], &c[1], &c[2]]
}

/// `[X^2 + bXY : cXY + Y^2]`, of degree two iff `bc != 1`.
pub fn milnor_form(b: &Rat, c: &Rat) -> Result<RationalMap> {
    let one = Rat::one();
    let zero = Rat::zero();
    RationalMap::from_rats(&[one.clone(), b.clone(), zero.clone()], &[zero, c.clone(), one])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
}

impl CheckLine {
    fn new(name: impl Into<String>, pass: bool) -> Self {
        CheckLine { name: name.into(), pass }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<CheckLine>,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }
}

/// For a normal form whose `[0:1]` has exact period 3 or 4 and whose
/// conjugate by `A` has good reduction outside `S`: `a, b, λ, aλ + c` are
/// S-units once `(a, b, c)` is scaled to coprime integers.
pub fn verify_lemma_n34(nf: &NormalFormNF, s: &PlaceSet, a_mob: &Mobius) -> Result<CheckReport> {
    if !nf.is_valid() {
        return Err(Error::Precondition("normal form is not of degree two".into()));
    }
    let psi = nf.map()?;
    let period = psi.exact_period(&ProjPoint::zero(), 4);
    if !matches!(period, Some(3) | Some(4)) {
        return Err(Error::Precondition("[0:1] does not have exact period 3 or 4".into()));
    }
    if !psi.conjugate(a_mob).has_good_reduction_outside(s) {
        return Err(Error::Precondition(format!(
            "the conjugate by {a_mob} has bad reduction outside {s}"
        )));
    }
    let n = nf.scaled_integral();
    let checks = vec![
        CheckLine::new("a", is_s_unit(&n.a, s)),
        CheckLine::new("b", is_s_unit(&n.b, s)),
        CheckLine::new("lambda", is_s_unit(&n.lambda, s)),
        CheckLine::new("a*lambda+c", is_s_unit(&(&n.a * &n.lambda + &n.c), s)),
    ];
    Ok(CheckReport { checks })
}

/// The rational `x` with every prime of `S` removed from numerator and
/// denominator (sign dropped).
fn outside_part_rat(x: &Rat, s: &PlaceSet) -> Rat {
    Rat::new(BigInt::from(s.strip(x.numer())), BigInt::from(s.strip(x.denom())))
}

/// Checks, for `Ψ = [(X - Y)(aX + Y) : X(aX + cY)]` whose conjugate by `A`
/// has good reduction outside `S`: `a` and `a + c` are S-units,
/// `Disc([A])^2 = (c - 1)`, and `Disc([A])` divides `1 + a + a^2` and
/// `1 - (a + c) + (a + c)^2`.
pub fn check_n3part1(a: &Rat, c: &Rat, a_mob: &Mobius, s: &PlaceSet) -> Result<CheckReport> {
    let res = resultant_nf3(a, c)?;
    if res.is_zero() {
        return Err(Error::Precondition("the map has degree below two".into()));
    }
    let psi = nf3_map(a, c)?;
    if !psi.conjugate(a_mob).has_good_reduction_outside(s) {
        return Err(Error::Precondition(format!(
            "the conjugate by {a_mob} has bad reduction outside {s}"
        )));
    }
    let gen = Rat::from_integer(BigInt::from(disc_mobius(a_mob, s)));
    let one = Rat::one();
    let ac = a + c;
    let divides = |x: &Rat| {
        let q = outside_part_rat(x, s) / &gen;
        q.is_integer()
    };
    let checks = vec![
        CheckLine::new("a unit", is_s_unit(a, s)),
        CheckLine::new("a+c unit", is_s_unit(&ac, s)),
        CheckLine::new("disc^2 = (c-1)", &gen * &gen == outside_part_rat(&(c - &one), s)),
        CheckLine::new("disc | 1+a+a^2", divides(&(&one + a + a * a))),
        CheckLine::new("disc | 1-(a+c)+(a+c)^2", divides(&(&one - &ac + &ac * &ac))),
    ];
    Ok(CheckReport { checks })
}

pub(crate) fn nf3_map(a: &Rat, c: &Rat) -> Result<RationalMap> {
    let one = Rat::one();
    RationalMap::from_rats(
        &[a.clone(), &one - a, -one.clone()],
        &[a.clone(), c.clone(), Rat::zero()],
    )
}

/// `-a(a + c)(c - 1)`, confirmed against the Sylvester resultant of
/// `aX^2 + (1 - a)XY - Y^2` and `aX^2 + cXY`.
pub fn resultant_nf3(a: &Rat, c: &Rat) -> Result<Rat> {
    let one = Rat::one();
    let closed = -(a * (a + c) * (c - &one));
    let den = a.denom().lcm(c.denom());
    let scale = |r: Rat| (r * Rat::from_integer(den.clone())).to_integer();
    let f = BinaryForm::raw(vec![scale(a.clone()), scale(&one - a), scale(-one.clone())]);
    let g = BinaryForm::raw(vec![scale(a.clone()), scale(c.clone()), BigInt::zero()]);
    let sylvester = Rat::new(f.resultant(&g)?, den.pow(4));
    if sylvester != closed {
        return Err(Error::IdentityViolation(format!(
            "closed form {closed} differs from Sylvester resultant {sylvester}"
        )));
    }
    Ok(closed)
}

/// Resultant of the conjugated raw forms for `A = (α 0 / β 1)` applied to
/// the 3-cycle shape: expected `-α^6 a(a + c)(c - 1)` before normalization.
pub fn resultant_conjugated_nf3(alpha: &BigInt, beta: &BigInt, a: &BigInt, c: &BigInt) -> BigInt {
    let f = BinaryForm::raw(vec![a.clone(), BigInt::one() - a, -BigInt::one()]);
    let g = BinaryForm::raw(vec![a.clone(), c.clone(), BigInt::zero()]);
    // [A]∘Ψ∘[A]^-1 with δ = 1, β' = 0: substitute (X, -βX + αY).
    let zero = BigInt::zero();
    let one = BigInt::one();
    let fs = f.substitute_linear(&one, &zero, &-beta, alpha);
    let gs = g.substitute_linear(&one, &zero, &-beta, alpha);
    let new_f = fs.scale(alpha);
    let new_g = fs.scale(beta).add(&gs);
    new_f.resultant(&new_g).expect("equal degrees")
}
