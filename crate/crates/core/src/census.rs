//! Bounded census of quadratic maps with good reduction outside `S`:
//! enumeration, cycle harvesting, conjugacy classes and the check suite.
//!
//! Reports are deterministic: every collection is sorted before it is
//! emitted, so the JSON bytes do not depend on the worker count.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, PlaceSet};
use crate::dynamics::{
    check_cycle_ideal_laws, conjugacy_with_cycles, map_from_vector, mobius_bound,
    tuples_equivalent, Conjugacy, Cycle, RationalMap,
};
use crate::error::{Error, Result};
use crate::families::classify_prop_n3;
use crate::linalg::{det_i128, Rref};
use crate::proj::ProjPoint;
use crate::reduction::{check_n3part1, disc, to_normal_form, verify_lemma_n34};
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Maps through cycle tuples `([0:1], [1:0], [1:1], ..)`.
    ByCycles,
    /// Every coefficient vector in a box.
    ByCoeffs,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::ByCycles => "by-cycles",
            Strategy::ByCoeffs => "by-coeffs",
        })
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "by-cycles" => Ok(Strategy::ByCycles),
            "by-coeffs" => Ok(Strategy::ByCoeffs),
            _ => Err(Error::Parse(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusConfig {
    pub s: PlaceSet,
    /// Height bound: on coefficients, and on extra cycle points for
    /// [`Strategy::ByCycles`].
    pub height: u32,
    pub max_period: usize,
    pub strategy: Strategy,
    /// Worker threads; `0` means the available parallelism.
    pub workers: usize,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            s: PlaceSet::new([2, 3]).expect("primes"),
            height: 8,
            max_period: 6,
            strategy: Strategy::ByCycles,
            workers: 0,
        }
    }
}

impl CensusConfig {
    fn validate(&self) -> Result<()> {
        if self.height == 0 {
            return Err(Error::domain("height bound must be positive"));
        }
        if !(3..=MAX_PERIOD).contains(&self.max_period) {
            return Err(Error::domain(format!(
                "max period must lie in 3..={MAX_PERIOD}"
            )));
        }
        Ok(())
    }
}

/// Largest supported max period: iterates of degree `2^n` stay small.
pub const MAX_PERIOD: usize = 10;

/// Points `[x:y]` with `max(|x|, |y|) <= h`, sorted.
pub fn points_of_height(h: u32) -> Vec<ProjPoint> {
    let h = h as i64;
    let mut out = vec![ProjPoint::infinity()];
    for y in 1..=h {
        for x in -h..=h {
            if x.gcd(&y) == 1 {
                out.push(ProjPoint::from_i64(x, y).expect("nonzero"));
            }
        }
    }
    out.sort();
    out
}

fn small(p: &ProjPoint) -> (i128, i128) {
    (
        p.x().to_i128().expect("bounded point"),
        p.y().to_i128().expect("bounded point"),
    )
}

fn row_i128(p: (i128, i128), q: (i128, i128)) -> [i128; 6] {
    let (x, y) = p;
    let (qx, qy) = q;
    [x * x * qy, x * y * qy, y * y * qy, -x * x * qx, -x * y * qx, -y * y * qx]
}

/// `Res(F, G)` of two quadratic forms, `None` on overflow.
fn resultant_quadratic(v: &[i128; 6]) -> Option<i128> {
    let [f0, f1, f2, g0, g1, g2] = *v;
    let a = f0.checked_mul(g2)?.checked_sub(f2.checked_mul(g0)?)?;
    let b = f0.checked_mul(g1)?.checked_sub(f1.checked_mul(g0)?)?;
    let c = f1.checked_mul(g2)?.checked_sub(f2.checked_mul(g1)?)?;
    a.checked_mul(a)?.checked_sub(b.checked_mul(c)?)
}

fn strip_u128(mut n: u128, s: &PlaceSet) -> u128 {
    for &p in s.primes() {
        let p = p as u128;
        while n % p == 0 {
            n /= p;
        }
    }
    n
}

fn good_vector(v: &[i128; 6], s: &PlaceSet) -> Option<RationalMap> {
    let res = resultant_quadratic(v)?;
    if res == 0 {
        return None;
    }
    // A common factor of the coefficients would inflate Res by g^4.
    let g = v.iter().fold(0i128, |acc, &c| acc.gcd(&c));
    if g != 1 {
        return None;
    }
    if strip_u128(res.unsigned_abs(), s) != 1 {
        return None;
    }
    RationalMap::from_i64(
        &[v[0] as i64, v[1] as i64, v[2] as i64],
        &[v[3] as i64, v[4] as i64, v[5] as i64],
    )
    .ok()
}

fn keep_big(v: &[BigInt], s: &PlaceSet) -> Option<RationalMap> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let phi = map_from_vector(v)?;
    phi.has_good_reduction_outside(s).then_some(phi)
}

/// Every map through the cyclic constraints `rows`, subject to the height
/// rule: with a one-dimensional solution space the unique map is kept
/// whatever its height; otherwise maps of coefficient height at most `h`.
fn maps_through(rows: &[Vec<BigInt>], h: u32, s: &PlaceSet, out: &mut Vec<RationalMap>) {
    let rref = Rref::new(rows, 6);
    match rref.free.len() {
        0 => {}
        1 => {
            if let Some(phi) = rref.nullspace().first().and_then(|v| keep_big(v, s)) {
                out.push(phi);
            }
        }
        k => {
            let hb = BigInt::from(h);
            let h = h as i64;
            let mut vals = vec![-h; k];
            loop {
                if vals.iter().any(|&v| v != 0) {
                    let free: Vec<Rat> = vals.iter().map(|&v| Rat::from_integer(v.into())).collect();
                    let sol = rref.solution(&free);
                    if sol.iter().all(|x| x.is_integer() && x.numer().magnitude() <= hb.magnitude()) {
                        let ints: Vec<BigInt> = sol.iter().map(|x| x.to_integer()).collect();
                        if gcd_all(ints.iter()).is_one() && (ints.iter().find(|c| !c.is_zero()).unwrap() > &BigInt::zero()) {
                            if let Some(phi) = keep_big(&ints, s) {
                                out.push(phi);
                            }
                        }
                    }
                }
                // Odometer over [-h, h]^k.
                let mut i = 0;
                while i < k && vals[i] == h {
                    vals[i] = -h;
                    i += 1;
                }
                if i == k {
                    break;
                }
                vals[i] += 1;
            }
        }
    }
}

/// The nullspace of a rank-five `5 x 6` matrix via signed maximal minors,
/// `None` when the rank drops (or on overflow).
fn kernel_5x6(rows: &[[i128; 6]; 5]) -> Option<[i128; 6]> {
    let mut v = [0i128; 6];
    for (j, slot) in v.iter_mut().enumerate() {
        let mut m = [[0i128; 5]; 5];
        for (r, row) in rows.iter().enumerate() {
            let mut c = 0;
            for (k, &e) in row.iter().enumerate() {
                if k != j {
                    m[r][c] = e;
                    c += 1;
                }
            }
        }
        let d = det_i128(m)?;
        *slot = if j % 2 == 0 { d } else { -d };
    }
    if v.iter().all(|&x| x == 0) {
        return None;
    }
    let g = v.iter().fold(0i128, |acc, &c| acc.gcd(&c));
    let sign = if v.iter().find(|&&c| c != 0).copied().unwrap_or(1) < 0 { -1 } else { 1 };
    Some(v.map(|c| sign * c / g))
}

fn to_big_rows(rows: &[[i128; 6]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect()
}

/// Maps with an `n`-cycle `([0:1], [1:0], [1:1], extra..)`.
fn maps_for_tuple(extra: &[(i128, i128)], h: u32, s: &PlaceSet, out: &mut Vec<RationalMap>) {
    let mut pts: Vec<(i128, i128)> = vec![(0, 1), (1, 0), (1, 1)];
    pts.extend_from_slice(extra);
    let n = pts.len();
    let rows: Vec<[i128; 6]> = (0..n).map(|i| row_i128(pts[i], pts[(i + 1) % n])).collect();
    match n {
        5 => {
            let fixed: [[i128; 6]; 5] = rows.clone().try_into().expect("five rows");
            if let Some(v) = kernel_5x6(&fixed) {
                if let Some(phi) = good_vector(&v, s) {
                    out.push(phi);
                }
                return;
            }
        }
        6 => {
            let m: [[i128; 6]; 6] = rows.clone().try_into().expect("six rows");
            if det_i128(m) != Some(0) {
                return;
            }
        }
        _ => {}
    }
    if n > 6 {
        // More constraints than unknowns: check the leading six first.
        let m: [[i128; 6]; 6] = rows[..6].to_vec().try_into().expect("six rows");
        if det_i128(m) != Some(0) {
            return;
        }
    }
    maps_through(&to_big_rows(&rows), h, s, out);
}

fn ordered_tuples(pool: &[(i128, i128)], k: usize) -> Vec<Vec<(i128, i128)>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for p in pool {
                if !t.contains(p) {
                    let mut u = t.clone();
                    u.push(*p);
                    next.push(u);
                }
            }
        }
        out = next;
    }
    out
}

fn enumerate_by_cycles(cfg: &CensusConfig) -> Vec<RationalMap> {
    let base = [ProjPoint::zero(), ProjPoint::infinity(), ProjPoint::one()];
    let pool: Vec<(i128, i128)> = points_of_height(cfg.height)
        .iter()
        .filter(|p| !base.contains(p))
        .map(small)
        .collect();
    let mut found = BTreeSet::new();
    for n in 3..=cfg.max_period {
        let extra_len = n - 3;
        // Fan out over the first extra point; the rest is enumerated inside.
        let heads: Vec<Option<(i128, i128)>> = if extra_len == 0 {
            vec![None]
        } else {
            pool.iter().copied().map(Some).collect()
        };
        let chunks: Vec<Vec<RationalMap>> = heads
            .par_iter()
            .map(|head| {
                let mut out = Vec::new();
                match head {
                    None => maps_for_tuple(&[], cfg.height, &cfg.s, &mut out),
                    Some(p) => {
                        let rest: Vec<(i128, i128)> = pool.iter().copied().filter(|q| q != p).collect();
                        for tail in ordered_tuples(&rest, extra_len - 1) {
                            let mut extra = vec![*p];
                            extra.extend(tail);
                            maps_for_tuple(&extra, cfg.height, &cfg.s, &mut out);
                        }
                    }
                }
                out
            })
            .collect();
        found.extend(chunks.into_iter().flatten());
    }
    found.into_iter().collect()
}

fn enumerate_by_coeffs(cfg: &CensusConfig) -> Vec<RationalMap> {
    let h = cfg.height as i128;
    let range: Vec<i128> = (-h..=h).collect();
    let chunks: Vec<Vec<RationalMap>> = range
        .par_iter()
        .map(|&f0| {
            let mut out = Vec::new();
            let mut v = [f0, -h, -h, -h, -h, -h];
            loop {
                let lead = v.iter().find(|&&c| c != 0).copied().unwrap_or(0);
                if lead > 0 {
                    if let Some(phi) = good_vector(&v, &cfg.s) {
                        out.push(phi);
                    }
                }
                let mut i = 5;
                while i > 0 && v[i] == h {
                    v[i] = -h;
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                v[i] += 1;
            }
            out
        })
        .collect();
    let set: BTreeSet<RationalMap> = chunks.into_iter().flatten().collect();
    set.into_iter().collect()
}

fn with_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(job))
}

/// Degree-two maps with good reduction outside `S` found by the strategy,
/// deduplicated and sorted.
pub fn enumerate_maps(cfg: &CensusConfig) -> Result<Vec<RationalMap>> {
    cfg.validate()?;
    with_pool(cfg.workers, || match cfg.strategy {
        Strategy::ByCycles => enumerate_by_cycles(cfg),
        Strategy::ByCoeffs => enumerate_by_coeffs(cfg),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub prop61: bool,
    pub mobius_bound: bool,
    /// `None` without a cycle of length 3 or 4.
    pub n34: Option<bool>,
    /// Branch label of the first 3-cycle, `None` without one.
    pub prop_n3_branch: Option<String>,
    pub n3part1: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub map: RationalMap,
    pub disc: BigUint,
    /// Rational cycles of length up to the max period, by length.
    pub cycles: Vec<Cycle>,
    pub class_id: Option<String>,
    pub checks: Checks,
    pub violations: Vec<String>,
}

impl CensusRecord {
    fn cycles_of_len(&self, n: usize) -> Vec<Cycle> {
        self.cycles.iter().filter(|c| c.len() == n).cloned().collect()
    }

    fn shortest_long_cycle(&self) -> Option<usize> {
        self.cycles.iter().map(Cycle::len).filter(|&n| n >= 3).min()
    }

    fn period_profile(&self, max_period: usize) -> Vec<usize> {
        (1..=max_period).map(|n| self.cycles.iter().filter(|c| c.len() == n).count()).collect()
    }

    pub fn has_period(&self, n: usize) -> bool {
        self.cycles.iter().any(|c| c.len() == n)
    }
}

/// The 3- or 4-cycle `P_0 -> P_1 -> ..` put in normal form with
/// `α = P_1`, so that `[0:1]` inherits the exact period.
fn n34_for(phi: &RationalMap, c: &Cycle, s: &PlaceSet) -> Result<bool> {
    let (eta, alpha, beta, gamma) = if c.len() == 3 {
        (c.at(2), c.at(0), c.at(1), c.at(2))
    } else {
        (c.at(0), c.at(1), c.at(2), c.at(3))
    };
    let (nf, a) = to_normal_form(phi, eta, alpha, beta, gamma)?;
    Ok(verify_lemma_n34(&nf, s, &a.inverse())?.holds())
}

/// Branch label and part-1 checks for the 3-cycle `c`.
fn n3_for(phi: &RationalMap, c: &Cycle, s: &PlaceSet) -> Result<(String, bool)> {
    let (nf, a) = to_normal_form(phi, c.at(2), c.at(0), c.at(1), c.at(2))?;
    if nf.b.is_zero() {
        return Err(Error::IdentityViolation("3-cycle normal form with b = 0".into()));
    }
    let a3 = &nf.a / &nf.b;
    let c3 = &nf.c / &nf.b;
    let part1 = check_n3part1(&a3, &c3, &a.inverse(), s)?;
    let label = classify_prop_n3(&a3, &c3, s)?.label();
    Ok((label, part1.holds()))
}

/// Harvests the cycles of `phi` and runs every applicable check.
pub fn build_record(phi: &RationalMap, s: &PlaceSet, max_period: usize) -> Result<CensusRecord> {
    let by_period = phi.periodic_points_upto(max_period)?;
    let mut cycles = Vec::new();
    for pts in &by_period {
        cycles.extend(phi.cycles_from_points(pts));
    }
    cycles.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut violations = Vec::new();
    let mut checks = Checks::default();

    let mut prop61 = true;
    for c in &cycles {
        match check_cycle_ideal_laws(phi, c, s) {
            Ok(r) => {
                for v in r.violations {
                    violations.push(format!("prop61 on {c}: {v}"));
                    prop61 = false;
                }
            }
            Err(e) => {
                violations.push(format!("prop61 on {c}: {e}"));
                prop61 = false;
            }
        }
    }
    checks.prop61 = prop61;

    checks.mobius_bound = by_period.iter().enumerate().all(|(i, pts)| {
        let ok = BigInt::from(pts.len()) <= mobius_bound(phi.degree() as u64, i as u64 + 1);
        if !ok {
            violations.push(format!("{} points of exact period {} exceed the bound", pts.len(), i + 1));
        }
        ok
    });

    let short: Vec<&Cycle> = cycles.iter().filter(|c| c.len() == 3 || c.len() == 4).collect();
    if !short.is_empty() {
        let mut all = true;
        for c in short {
            for k in 0..c.len() {
                let r = c.rotated(k);
                match n34_for(phi, &r, s) {
                    Ok(true) => {}
                    Ok(false) => {
                        violations.push(format!("n34 fails on {r}"));
                        all = false;
                    }
                    Err(e) => {
                        violations.push(format!("n34 on {r}: {e}"));
                        all = false;
                    }
                }
            }
        }
        checks.n34 = Some(all);
    }

    if let Some(c) = cycles.iter().find(|c| c.len() == 3) {
        match n3_for(phi, c, s) {
            Ok((label, part1)) => {
                if !part1 {
                    violations.push(format!("n3 part 1 fails on {c}"));
                }
                checks.prop_n3_branch = Some(label);
                checks.n3part1 = Some(part1);
            }
            Err(e) => {
                violations.push(format!("n3 classification on {c}: {e}"));
                checks.n3part1 = Some(false);
            }
        }
    }

    Ok(CensusRecord {
        map: phi.clone(),
        disc: disc(phi),
        cycles,
        class_id: None,
        checks,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub id: String,
    pub representative: RationalMap,
    pub members: Vec<usize>,
}

/// Partitions records (sorted by map) into `PGL_2(Q)`-conjugacy classes,
/// comparing through the shortest cycle length `>= 3`. Records without such
/// a cycle stay unclassified. Each class is represented by its least map.
pub fn classify(records: &mut [CensusRecord], max_period: usize) -> Result<Vec<ConjugacyClass>> {
    let mut classes: Vec<ConjugacyClass> = Vec::new();
    // Conjugate maps share their rational cycle profile.
    let mut by_profile: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by(|&i, &j| records[i].map.cmp(&records[j].map));
    for i in order {
        let Some(n) = records[i].shortest_long_cycle() else {
            continue;
        };
        let mine = records[i].cycles_of_len(n);
        let reps = by_profile.entry(records[i].period_profile(max_period)).or_default();
        let mut home = None;
        for &ci in reps.iter() {
            let rep = &records[classes[ci].members[0]];
            let theirs = rep.cycles_of_len(n);
            if let Conjugacy::Witness(_) = conjugacy_with_cycles(&rep.map, &theirs, &records[i].map, &mine)? {
                home = Some(ci);
                break;
            }
        }
        let ci = match home {
            Some(ci) => ci,
            None => {
                classes.push(ConjugacyClass {
                    id: records[i].map.to_string(),
                    representative: records[i].map.clone(),
                    members: Vec::new(),
                });
                reps.push(classes.len() - 1);
                classes.len() - 1
            }
        };
        classes[ci].members.push(i);
        records[i].class_id = Some(classes[ci].id.clone());
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

/// Number of `PGL_2(R_S)`-classes of the harvested cycles of each length
/// `>= 3`, up to rotation.
pub fn cycle_class_counts(records: &[CensusRecord], s: &PlaceSet) -> Result<BTreeMap<usize, usize>> {
    let mut reps: BTreeMap<usize, Vec<Cycle>> = BTreeMap::new();
    for r in records {
        for c in r.cycles.iter().filter(|c| c.len() >= 3) {
            let bucket = reps.entry(c.len()).or_default();
            let mut seen = false;
            for rep in bucket.iter() {
                if tuples_equivalent(rep, c, s)?.is_some() {
                    seen = true;
                    break;
                }
            }
            if !seen {
                bucket.push(c.clone());
            }
        }
    }
    Ok(reps.into_iter().map(|(n, v)| (n, v.len())).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub s: Vec<u64>,
    pub height: u32,
    pub strategy: Strategy,
    pub max_period: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportCycle {
    pub points: Vec<[i64; 2]>,
    pub period: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub map: [Vec<i64>; 2],
    pub disc: String,
    pub cycles: Vec<ReportCycle>,
    pub class_id: Option<String>,
    pub checks: Checks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportClass {
    pub id: String,
    pub representative: [Vec<i64>; 2],
    pub size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub classified: usize,
    pub unclassified: usize,
    pub classes: usize,
    /// Records with a rational point of exact period `n`.
    pub counts_per_period: BTreeMap<String, usize>,
    /// Classes with a rational point of exact period `n`.
    pub class_counts_per_period: BTreeMap<String, usize>,
    /// `PGL_2(R_S)`-classes of harvested cycles of length `n >= 3`.
    pub cycle_classes_per_period: BTreeMap<String, usize>,
    pub finite_set_candidates: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: ReportConfig,
    pub records: Vec<ReportRecord>,
    pub classes: Vec<ReportClass>,
    pub summary: Summary,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Parse(format!("cannot serialize report: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn class_count_with_period(&self, n: usize) -> usize {
        self.summary.class_counts_per_period.get(&n.to_string()).copied().unwrap_or(0)
    }
}

fn small_int(c: &BigInt) -> Result<i64> {
    c.to_i64()
        .ok_or_else(|| Error::Resource(format!("coefficient {c} does not fit in 64 bits")))
}

fn wire_map(phi: &RationalMap) -> Result<[Vec<i64>; 2]> {
    Ok([
        phi.f().coeffs().iter().map(small_int).collect::<Result<_>>()?,
        phi.g().coeffs().iter().map(small_int).collect::<Result<_>>()?,
    ])
}

fn wire_cycle(c: &Cycle) -> Result<ReportCycle> {
    let points = c
        .points()
        .iter()
        .map(|p| Ok([small_int(p.x())?, small_int(p.y())?]))
        .collect::<Result<_>>()?;
    Ok(ReportCycle { points, period: c.len() })
}

/// Aggregates records and classes into a report; all checks are theorems,
/// so any violation listed in the summary points at a bug.
pub fn verify_all(
    cfg: &CensusConfig,
    records: &[CensusRecord],
    classes: &[ConjugacyClass],
) -> Result<Report> {
    let mut summary = Summary {
        records: records.len(),
        classes: classes.len(),
        ..Summary::default()
    };
    for r in records {
        if r.class_id.is_some() {
            summary.classified += 1;
        } else {
            summary.unclassified += 1;
        }
        if r.checks.prop_n3_branch.as_deref() == Some("finite-set-candidate") {
            summary.finite_set_candidates += 1;
        }
        for v in &r.violations {
            summary.violations.push(format!("{}: {v}", r.map));
        }
        if !r.map.has_good_reduction_outside(&cfg.s) {
            summary.violations.push(format!("{}: bad reduction outside S", r.map));
        }
        for c in &r.cycles {
            if !r.map.is_cycle(c) {
                summary.violations.push(format!("{}: {c} is not a cycle", r.map));
            }
        }
    }
    for n in 1..=cfg.max_period {
        let k = n.to_string();
        let records_n = records.iter().filter(|r| r.has_period(n)).count();
        let classes_n = classes.iter().filter(|c| records[c.members[0]].has_period(n)).count();
        summary.counts_per_period.insert(k.clone(), records_n);
        summary.class_counts_per_period.insert(k, classes_n);
    }
    for (n, count) in cycle_class_counts(records, &cfg.s)? {
        summary.cycle_classes_per_period.insert(n.to_string(), count);
    }

    let mut out_records = records
        .iter()
        .map(|r| {
            Ok(ReportRecord {
                map: wire_map(&r.map)?,
                disc: r.disc.to_string(),
                cycles: r.cycles.iter().map(wire_cycle).collect::<Result<_>>()?,
                class_id: r.class_id.clone(),
                checks: r.checks.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    out_records.sort_by(|a, b| a.map.cmp(&b.map));
    let out_classes = classes
        .iter()
        .map(|c| {
            Ok(ReportClass {
                id: c.id.clone(),
                representative: wire_map(&c.representative)?,
                size: c.members.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        config: ReportConfig {
            s: cfg.s.primes().to_vec(),
            height: cfg.height,
            strategy: cfg.strategy,
            max_period: cfg.max_period,
        },
        records: out_records,
        classes: out_classes,
        summary,
    })
}

/// Runs enumeration, record building, classification and the check suite.
pub fn run_census(cfg: &CensusConfig) -> Result<Report> {
    let maps = enumerate_maps(cfg)?;
    let built: Vec<Result<CensusRecord>> = with_pool(cfg.workers, || {
        maps.par_iter()
            .map(|phi| build_record(phi, &cfg.s, cfg.max_period))
            .collect()
    })?;
    let mut records = built.into_iter().collect::<Result<Vec<_>>>()?;
    let classes = classify(&mut records, cfg.max_period)?;
    verify_all(cfg, &records, &classes)
}

/// Writes the report as pretty JSON.
pub fn emit_report(report: &Report, sink: &mut impl Write) -> Result<()> {
    sink.write_all(report.to_json()?.as_bytes())
        .map_err(|e| Error::Resource(format!("cannot write report: {e}")))
}

pub fn parse_report(json: &str) -> Result<Report> {
    serde_json::from_str(json).map_err(|e| Error::Parse(format!("bad report: {e}")))
}

fn map_from_wire(m: &[Vec<i64>; 2]) -> Result<RationalMap> {
    RationalMap::from_i64(&m[0], &m[1])
}

/// Re-checks a report: every map has good reduction outside `S` and the
/// stated discriminant, every cycle is a cycle of the stated period, class
/// ids and sizes agree, and the summary has no violations. Returns the
/// problems found.
pub fn verify_report(report: &Report) -> Result<Vec<String>> {
    let s = PlaceSet::new(report.config.s.iter().copied())?;
    let mut problems = report.summary.violations.clone();
    let mut sizes: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, r) in report.records.iter().enumerate() {
        let phi = match map_from_wire(&r.map) {
            Ok(phi) => phi,
            Err(e) => {
                problems.push(format!("record {i}: {e}"));
                continue;
            }
        };
        if wire_map(&phi)? != r.map {
            problems.push(format!("record {i}: map is not in canonical form"));
        }
        if !phi.has_good_reduction_outside(&s) {
            problems.push(format!("record {i}: {phi} has bad reduction outside S"));
        }
        if disc(&phi).to_string() != r.disc {
            problems.push(format!("record {i}: disc {} should be {}", r.disc, disc(&phi)));
        }
        for c in &r.cycles {
            let pts: Result<Vec<ProjPoint>> =
                c.points.iter().map(|[x, y]| ProjPoint::from_i64(*x, *y)).collect();
            let ok = pts
                .and_then(Cycle::new)
                .map(|cy| cy.len() == c.period && phi.is_cycle(&cy))
                .unwrap_or(false);
            if !ok {
                problems.push(format!("record {i}: {:?} is not a cycle of period {}", c.points, c.period));
            }
        }
        if let Some(id) = &r.class_id {
            *sizes.entry(id.as_str()).or_default() += 1;
        }
    }
    if report.records.windows(2).any(|w| w[0].map >= w[1].map) {
        problems.push("records are not strictly sorted".into());
    }
    for c in &report.classes {
        if sizes.remove(c.id.as_str()) != Some(c.size) {
            problems.push(format!("class {} has the wrong size", c.id));
        }
    }
    for id in sizes.keys() {
        problems.push(format!("class {id} is referenced but not listed"));
    }
    if report.summary.records != report.records.len() {
        problems.push("summary record count disagrees".into());
    }
    Ok(problems)
}
