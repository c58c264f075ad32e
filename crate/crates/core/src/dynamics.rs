//! Rational self-maps of `P^1` given by pairs of binary forms.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{first_nonzero_sign, gcd_all, mobius_mu, PlaceSet, SIdeal};
use crate::error::{Error, Result};
use crate::forms::{compose, BinaryForm};
use crate::linalg::Rref;
use crate::proj::{ideal_i, is_pgl2_rs, mobius_to_zero_inf_one, Mobius, ProjPoint};
use crate::Rat;

/// Largest `d^n` that [`RationalMap::power`] will build by default.
pub const DEFAULT_POWER_BUDGET: u64 = 1 << 16;

/// Default step budget for [`RationalMap::orbit`].
pub const DEFAULT_ORBIT_STEPS: usize = 64;

/// `Φ = [F : G]` with `Res(F, G) != 0`, jointly primitive, first nonzero
/// coefficient of `(F, G)` positive. Equality is projective equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalMap {
    f: BinaryForm,
    g: BinaryForm,
}

impl RationalMap {
    pub fn new(f: BinaryForm, g: BinaryForm) -> Result<Self> {
        make_map(f, g)
    }

    pub fn from_i64(f: &[i64], g: &[i64]) -> Result<Self> {
        make_map(BinaryForm::from_i64(f)?, BinaryForm::from_i64(g)?)
    }

    /// Builds a map from rational coefficients by clearing denominators.
    pub fn from_rats(f: &[Rat], g: &[Rat]) -> Result<Self> {
        let den = f
            .iter()
            .chain(g)
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let scale = |v: &[Rat]| -> Vec<BigInt> {
            v.iter()
                .map(|r| (r * Rat::from_integer(den.clone())).to_integer())
                .collect()
        };
        make_map(BinaryForm::new(scale(f))?, BinaryForm::new(scale(g))?)
    }

    /// Joint normalization without the resultant check, for forms known to
    /// define a map (iterates, conjugates).
    pub(crate) fn normalized(f: BinaryForm, g: BinaryForm) -> Self {
        let all: Vec<&BigInt> = f.coeffs().iter().chain(g.coeffs()).collect();
        let mut content = gcd_all(all.iter().copied());
        if first_nonzero_sign(all.iter().copied()) == Sign::Minus {
            content = -content;
        }
        if content.is_one() {
            return RationalMap { f, g };
        }
        RationalMap {
            f: f.divide_exact(&content),
            g: g.divide_exact(&content),
        }
    }

    pub fn f(&self) -> &BinaryForm {
        &self.f
    }

    pub fn g(&self) -> &BinaryForm {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    /// `(f_0, .., f_d, g_0, .., g_d)`.
    pub fn coeffs(&self) -> Vec<BigInt> {
        self.f.coeffs().iter().chain(self.g.coeffs()).cloned().collect()
    }

    pub fn resultant(&self) -> BigInt {
        self.f.resultant(&self.g).expect("forms of equal degree")
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let x = self.f.eval_int(p.x(), p.y());
        let y = self.g.eval_int(p.x(), p.y());
        ProjPoint::new(x, y).expect("F and G have no common zero")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RationalMap) -> RationalMap {
        let f = compose(&self.f, &other.f, &other.g).expect("equal degrees");
        let g = compose(&self.g, &other.f, &other.g).expect("equal degrees");
        RationalMap::normalized(f, g)
    }

    /// The `n`-th iterate, refusing when `d^n` exceeds the default budget.
    pub fn power(&self, n: usize) -> Result<RationalMap> {
        self.power_with_budget(n, DEFAULT_POWER_BUDGET)
    }

    pub fn power_with_budget(&self, n: usize, budget: u64) -> Result<RationalMap> {
        if n == 0 {
            return Err(Error::domain("iterates start at n = 1"));
        }
        check_power_budget(self.degree(), n, budget)?;
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc);
        }
        Ok(acc)
    }

    /// Iterates from `p` until a point repeats or `max_steps` images have
    /// been computed.
    pub fn orbit(&self, p: &ProjPoint, max_steps: usize) -> Result<Orbit> {
        if max_steps == 0 {
            return Err(Error::domain("orbit needs at least one step"));
        }
        let mut seen: HashMap<ProjPoint, usize> = HashMap::new();
        let mut path = vec![p.clone()];
        seen.insert(p.clone(), 0);
        let mut current = p.clone();
        for _ in 0..max_steps {
            current = self.apply(&current);
            if let Some(&start) = seen.get(&current) {
                let cycle = Cycle::new(path.split_off(start))?;
                return Ok(Orbit::Periodic { tail: path, cycle });
            }
            seen.insert(current.clone(), path.len());
            path.push(current.clone());
        }
        Ok(Orbit::Exhausted { visited: path })
    }

    /// Smallest `m <= limit` with `Φ^m(p) = p`.
    pub fn exact_period(&self, p: &ProjPoint, limit: usize) -> Option<usize> {
        let mut q = p.clone();
        for m in 1..=limit {
            q = self.apply(&q);
            if &q == p {
                return Some(m);
            }
        }
        None
    }

    /// Rational points of exact period `n`, sorted.
    pub fn periodic_points(&self, n: usize) -> Result<Vec<ProjPoint>> {
        if n == 0 {
            return Err(Error::domain("periods start at n = 1"));
        }
        check_power_budget(self.degree(), n, DEFAULT_POWER_BUDGET)?;
        let power = self.power(n)?;
        self.exact_period_roots(&power, n)
    }

    /// Exact-period point sets for every `n` in `1..=max_n`, building the
    /// iterates incrementally.
    pub fn periodic_points_upto(&self, max_n: usize) -> Result<Vec<Vec<ProjPoint>>> {
        check_power_budget(self.degree(), max_n, DEFAULT_POWER_BUDGET)?;
        let mut out = Vec::with_capacity(max_n);
        let mut power = self.clone();
        for n in 1..=max_n {
            if n > 1 {
                power = self.compose(&power);
            }
            out.push(self.exact_period_roots(&power, n)?);
        }
        Ok(out)
    }

    fn exact_period_roots(&self, power: &RationalMap, n: usize) -> Result<Vec<ProjPoint>> {
        let c = cycle_form(power);
        if c.is_zero() {
            return Err(Error::Unsupported(format!(
                "the {n}-th iterate is the identity; every point is periodic"
            )));
        }
        let mut pts: Vec<ProjPoint> = c
            .rational_roots()?
            .into_iter()
            .map(|(p, _)| p)
            .filter(|p| self.exact_period(p, n) == Some(n))
            .collect();
        pts.sort();
        Ok(pts)
    }

    /// Rational cycles of exact length `n`, each rotated to start at its
    /// least point, sorted.
    pub fn cycles(&self, n: usize) -> Result<Vec<Cycle>> {
        Ok(self.cycles_from_points(&self.periodic_points(n)?))
    }

    pub(crate) fn cycles_from_points(&self, points: &[ProjPoint]) -> Vec<Cycle> {
        let mut remaining: BTreeSet<ProjPoint> = points.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some(start) = remaining.pop_first() {
            let mut pts = vec![start.clone()];
            let mut q = self.apply(&start);
            while q != start {
                remaining.remove(&q);
                pts.push(q.clone());
                q = self.apply(&q);
            }
            out.push(Cycle { points: pts });
        }
        out.sort();
        out
    }

    pub fn is_cycle(&self, c: &Cycle) -> bool {
        let n = c.len();
        c.points_distinct()
            && (0..n).all(|i| self.apply(&c.points[i]) == c.points[(i + 1) % n])
    }

    /// `[A] ∘ Φ ∘ [A]^-1`.
    pub fn conjugate(&self, a: &Mobius) -> RationalMap {
        let [al, be, ga, de] = a.entries();
        let fs = self.f.substitute_linear(de, &-be, &-ga, al);
        let gs = self.g.substitute_linear(de, &-be, &-ga, al);
        let f = fs.scale(al).add(&gs.scale(be));
        let g = fs.scale(ga).add(&gs.scale(de));
        RationalMap::normalized(f, g)
    }

    /// Good reduction at every prime outside `S`: for a jointly primitive
    /// map this is `Res(F, G)` being an S-unit.
    pub fn has_good_reduction_outside(&self, s: &PlaceSet) -> bool {
        s.strip(&self.resultant()).is_one()
    }
}

fn check_power_budget(d: usize, n: usize, budget: u64) -> Result<()> {
    let within = (d as u64)
        .checked_pow(n as u32)
        .is_some_and(|dn| dn <= budget);
    if within {
        Ok(())
    } else {
        Err(Error::Resource(format!(
            "iterate of degree {d}^{n} exceeds the budget {budget}"
        )))
    }
}

/// `Y F_n - X G_n`, vanishing exactly at the fixed points of `[F_n : G_n]`.
fn cycle_form(power: &RationalMap) -> BinaryForm {
    let y = BinaryForm::monomial(1, 1);
    let x = BinaryForm::monomial(1, 0);
    y.mul(power.f())
        .add(&x.mul(power.g()).scale(&-BigInt::one()))
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |form: &BinaryForm| {
            form.coeffs()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{};{}", join(&self.f), join(&self.g))
    }
}

pub fn make_map(f: BinaryForm, g: BinaryForm) -> Result<RationalMap> {
    if f.degree() != g.degree() {
        return Err(Error::domain(format!(
            "forms of degrees {} and {} do not define a map",
            f.degree(),
            g.degree()
        )));
    }
    if f.degree() == 0 {
        return Err(Error::domain("a rational map needs degree at least one"));
    }
    if f.resultant(&g)?.is_zero() {
        return Err(Error::DegenerateMap);
    }
    Ok(RationalMap::normalized(f, g))
}

pub fn maps_equal(phi: &RationalMap, psi: &RationalMap) -> bool {
    phi == psi
}

/// An ordered tuple of distinct points, read cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    points: Vec<ProjPoint>,
}

impl Cycle {
    pub fn new(points: Vec<ProjPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::domain("a cycle has at least one point"));
        }
        let c = Cycle { points };
        if !c.points_distinct() {
            return Err(Error::domain("cycle points must be distinct"));
        }
        Ok(c)
    }

    fn points_distinct(&self) -> bool {
        let set: BTreeSet<&ProjPoint> = self.points.iter().collect();
        set.len() == self.points.len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// `P_i` with the index taken modulo the length.
    pub fn at(&self, i: usize) -> &ProjPoint {
        &self.points[i % self.points.len()]
    }

    /// The tuple `Q` with `Q_i = P_(i-k)`.
    pub fn rotated(&self, k: usize) -> Cycle {
        let mut points = self.points.clone();
        let n = points.len();
        points.rotate_right(k % n);
        Cycle { points }
    }

    /// Rotation starting at the least point.
    pub fn canonical(&self) -> Cycle {
        let (start, _) = self
            .points
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .expect("nonempty");
        let mut points = self.points.clone();
        points.rotate_left(start);
        Cycle { points }
    }

    pub fn map(&self, a: &Mobius) -> Cycle {
        Cycle {
            points: self.points.iter().map(|p| a.apply(p)).collect(),
        }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orbit {
    /// The orbit entered `cycle` after the preperiodic `tail`.
    Periodic { tail: Vec<ProjPoint>, cycle: Cycle },
    /// No repetition within the step budget.
    Exhausted { visited: Vec<ProjPoint> },
}

/// Upper bound on the number of points of exact period `n` for a degree-`d`
/// map: `d + 1` for `n = 1`, `sum_{k | n} μ(n/k) d^k` otherwise.
pub fn mobius_bound(d: u64, n: u64) -> BigInt {
    assert!(n >= 1);
    if n == 1 {
        return BigInt::from(d + 1);
    }
    (1..=n)
        .filter(|k| n % k == 0)
        .map(|k| BigInt::from(mobius_mu(n / k)) * BigInt::from(d).pow(k as u32))
        .sum()
}

/// Solution space of `Φ(P) = Q` constraints on a quadratic map
/// `(f0, f1, f2, g0, g1, g2)`.
#[derive(Clone, Debug)]
pub struct Interpolation {
    rows: Vec<Vec<BigInt>>,
    /// Primitive integer basis of the projective solution space.
    pub basis: Vec<Vec<BigInt>>,
    /// Genuine degree-two maps found: the unique solution when the space is a
    /// single point, otherwise the basis vectors with nonzero resultant.
    pub maps: Vec<RationalMap>,
}

impl Interpolation {
    /// Projective dimension of the solution space (`-1` when empty).
    pub fn dimension(&self) -> isize {
        self.basis.len() as isize - 1
    }

    /// Whether `phi` satisfies every constraint.
    pub fn contains(&self, phi: &RationalMap) -> bool {
        phi.degree() == 2 && {
            let v = phi.coeffs();
            self.rows
                .iter()
                .all(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<BigInt>().is_zero())
        }
    }
}

/// The linear condition `y_Q F(P) - x_Q G(P) = 0` on quadratic coefficients.
pub(crate) fn constraint_row(p: &ProjPoint, q: &ProjPoint) -> Vec<BigInt> {
    let (x, y) = (p.x(), p.y());
    let mons = [x * x, x * y, y * y];
    let mut row: Vec<BigInt> = mons.iter().map(|m| m * q.y()).collect();
    row.extend(mons.iter().map(|m| -(m * q.x())));
    row
}

pub(crate) fn map_from_vector(v: &[BigInt]) -> Option<RationalMap> {
    let f = BinaryForm::new(v[..3].to_vec()).ok()?;
    let g = BinaryForm::new(v[3..].to_vec()).ok()?;
    make_map(f, g).ok()
}

/// All quadratic maps with `Φ(P) = Q` for every constraint pair.
///
/// Repeated sources are allowed (they make contradictory constraints
/// expressible).
pub fn interpolate_quadratic(constraints: &[(ProjPoint, ProjPoint)]) -> Result<Interpolation> {
    if constraints.is_empty() || constraints.len() > 6 {
        return Err(Error::domain("between one and six constraints are needed"));
    }
    let rows: Vec<Vec<BigInt>> = constraints.iter().map(|(p, q)| constraint_row(p, q)).collect();
    let rref = Rref::new(&rows, 6);
    let basis = rref.nullspace();
    let maps = basis.iter().filter_map(|v| map_from_vector(v)).collect();
    Ok(Interpolation { rows, basis, maps })
}

/// `(𝕴_1, .., 𝕴_(n-1))` with `𝕴_i = 𝕴(P_0, P_i)`.
pub fn cycle_ideals(c: &Cycle, s: &PlaceSet) -> Result<Vec<SIdeal>> {
    if c.len() < 2 {
        return Err(Error::domain("cycle ideals need at least two points"));
    }
    (1..c.len()).map(|i| ideal_i(c.at(0), c.at(i), s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealLawReport {
    pub ideals: Vec<SIdeal>,
    /// Human-readable descriptions of failed laws; empty when all hold.
    pub violations: Vec<String>,
}

impl IdealLawReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `𝕴(P_0, P_i) = 𝕴(P_k, P_(k+i))` for all `i, k` and `𝕴_1 | 𝕴_i`.
pub fn check_cycle_ideal_laws(phi: &RationalMap, c: &Cycle, s: &PlaceSet) -> Result<IdealLawReport> {
    if !phi.has_good_reduction_outside(s) {
        return Err(Error::Precondition(format!("{phi} has bad reduction outside {s}")));
    }
    if !phi.is_cycle(c) {
        return Err(Error::Precondition(format!("{c} is not a cycle of {phi}")));
    }
    let n = c.len();
    if n == 1 {
        return Ok(IdealLawReport { ideals: Vec::new(), violations: Vec::new() });
    }
    let ideals = cycle_ideals(c, s)?;
    let mut violations = Vec::new();
    for i in 1..n {
        for k in 1..n {
            let other = ideal_i(c.at(k), c.at(k + i), s)?;
            if other != ideals[i - 1] {
                violations.push(format!(
                    "I(P_0,P_{i}) = {} but I(P_{k},P_{}) = {other}",
                    ideals[i - 1],
                    k + i
                ));
            }
        }
        if !ideals[0].divides(&ideals[i - 1]) {
            violations.push(format!("I_1 = {} does not divide I_{i} = {}", ideals[0], ideals[i - 1]));
        }
    }
    Ok(IdealLawReport { ideals, violations })
}

/// The Möbius class sending `(p0, p1, p2)` to `(q0, q1, q2)`.
pub(crate) fn three_point_mobius(p: [&ProjPoint; 3], q: [&ProjPoint; 3]) -> Result<Mobius> {
    let mp = mobius_to_zero_inf_one(p[0], p[1], p[2])?;
    let mq = mobius_to_zero_inf_one(q[0], q[1], q[2])?;
    Ok(mq.inverse().compose(&mp))
}

/// A witness `([A], h)` with `[A] ∈ PGL_2(R_S)` and `[A](P_i) = Q_(i+h)`,
/// trying rotations `h = 0, 1, ..` in order.
pub fn tuples_equivalent(t1: &Cycle, t2: &Cycle, s: &PlaceSet) -> Result<Option<(Mobius, usize)>> {
    let n = t1.len();
    if n < 3 || t2.len() < 3 {
        return Err(Error::Unsupported(
            "tuple equivalence is only decided for length at least 3".into(),
        ));
    }
    if t2.len() != n {
        return Ok(None);
    }
    for h in 0..n {
        let a = three_point_mobius(
            [t1.at(0), t1.at(1), t1.at(2)],
            [t2.at(h), t2.at(h + 1), t2.at(h + 2)],
        )?;
        if is_pgl2_rs(&a, s) && (0..n).all(|i| a.apply(t1.at(i)) == *t2.at(i + h)) {
            return Ok(Some((a, h)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// `conjugate(Φ, A) = Ψ`.
    Witness(Mobius),
    /// Both maps have rational `n`-cycles and none of the forced candidates
    /// conjugates one to the other.
    Refuted,
    /// One of the maps has no rational `n`-cycle; nothing is decided.
    Inconclusive,
}

/// Decides `PGL_2(Q)`-conjugacy relative to rational `n`-cycles (`n >= 3`):
/// a conjugacy must carry a fixed `n`-cycle of `Φ` onto some `n`-cycle of `Ψ`
/// with some rotation, and three points force the candidate.
pub fn conjugacy_via_cycles(phi: &RationalMap, psi: &RationalMap, n: usize) -> Result<Conjugacy> {
    if n < 3 {
        return Err(Error::Unsupported("conjugacy via cycles needs n >= 3".into()));
    }
    let phi_cycles = phi.cycles(n)?;
    let psi_cycles = psi.cycles(n)?;
    conjugacy_with_cycles(phi, &phi_cycles, psi, &psi_cycles)
}

pub(crate) fn conjugacy_with_cycles(
    phi: &RationalMap,
    phi_cycles: &[Cycle],
    psi: &RationalMap,
    psi_cycles: &[Cycle],
) -> Result<Conjugacy> {
    let Some(anchor) = phi_cycles.first() else {
        return Ok(Conjugacy::Inconclusive);
    };
    if psi_cycles.is_empty() {
        return Ok(Conjugacy::Inconclusive);
    }
    if phi.degree() != psi.degree() {
        return Ok(Conjugacy::Refuted);
    }
    let n = anchor.len();
    for target in psi_cycles.iter().filter(|c| c.len() == n) {
        for h in 0..n {
            let a = three_point_mobius(
                [anchor.at(0), anchor.at(1), anchor.at(2)],
                [target.at(h), target.at(h + 1), target.at(h + 2)],
            )?;
            if phi.conjugate(&a) == *psi {
                return Ok(Conjugacy::Witness(a));
            }
        }
    }
    Ok(Conjugacy::Refuted)
}

/// Largest absolute value among the coefficients of the primitive model.
pub fn coefficient_height(phi: &RationalMap) -> BigInt {
    phi.f().coeffs().iter().chain(phi.g().coeffs()).map(|c| c.abs()).max().unwrap_or_default()
}
