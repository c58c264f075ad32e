mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::{common_root_mod_p_oracle, cofactor_det, int, q, rational_roots_oracle, resultant_oracle, Rat};
use p1dyn::arith::{enumerate_s_units, is_s_integer, is_s_unit, outside_s_part, solve_unit_eq, vp, PlaceSet};
use p1dyn::census::{enumerate_maps, run_census, CensusConfig, Strategy as Search};
use p1dyn::dynamics::{interpolate_quadratic, mobius_bound, Orbit, RationalMap};
use p1dyn::families::{curve_c_contains, period2_points_on_c, phi4, phi4_bad_bound, pp0_cycle, psi3};
use p1dyn::forms::{common_root_mod_p, compose, rational_roots, resultant, squarefree_part, BinaryForm};
use p1dyn::proj::{delta_p, delta_p_coords, ideal_i, is_pgl2_rs, mobius_to_zero_inf_one, Mobius, ProjPoint};
use p1dyn::reduction::{disc, reduction_report, resultant_conjugated_nf3, to_normal_form};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn s23() -> PlaceSet {
    PlaceSet::new([2, 3]).unwrap()
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (-60i64..=60, 1i64..=60)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| q(n, d))
}

fn point(h: i64) -> impl Strategy<Value = ProjPoint> {
    (-h..=h, -h..=h).prop_filter_map("not [0:0]", |(x, y)| ProjPoint::from_i64(x, y).ok())
}

fn form(degree: usize, h: i64) -> impl Strategy<Value = BinaryForm> {
    prop::collection::vec(-h..=h, degree + 1).prop_filter_map("nonzero", move |c| {
        BinaryForm::from_i64(&c).ok().filter(|f| f.degree() == degree)
    })
}

fn quadratic_map(h: i64) -> impl Strategy<Value = RationalMap> {
    (prop::array::uniform3(-h..=h), prop::array::uniform3(-h..=h))
        .prop_filter_map("degenerate", |(f, g)| RationalMap::from_i64(&f, &g).ok())
}

fn mobius(h: i64) -> impl Strategy<Value = Mobius> {
    prop::array::uniform4(-h..=h).prop_filter_map("singular", |[a, b, c, d]| Mobius::from_i64(a, b, c, d).ok())
}

/// Words in `(1 k / 0 1)`, `(0 -1 / 1 0)` and `(1 0 / 0 -1)`.
fn unimodular() -> impl Strategy<Value = Mobius> {
    prop::collection::vec((0u8..3, -3i64..=3), 1..6).prop_map(|word| {
        word.into_iter().fold(Mobius::identity(), |acc, (g, k)| {
            let m = match g {
                0 => Mobius::from_i64(1, k, 0, 1),
                1 => Mobius::from_i64(0, -1, 1, 0),
                _ => Mobius::from_i64(1, 0, 0, -1),
            };
            acc.compose(&m.unwrap())
        })
    })
}

fn rats(f: &BinaryForm) -> Vec<Rat> {
    f.coeffs().iter().cloned().map(Rat::from_integer).collect()
}

fn small(f: &BinaryForm) -> Vec<i64> {
    f.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn valuation_laws(x in nonzero_rat(), y in nonzero_rat(), pi in 0usize..6) {
        let p = PRIMES[pi];
        let (vx, vy) = (vp(&x, p).unwrap(), vp(&y, p).unwrap());
        prop_assert_eq!(vp(&(&x * &y), p).unwrap(), vx + vy);
        let sum = &x + &y;
        if !sum.is_zero() {
            let vs = vp(&sum, p).unwrap();
            prop_assert!(vs >= vx.min(vy));
            if vx != vy {
                prop_assert_eq!(vs, vx.min(vy));
            }
        }
    }

    #[test]
    fn s_units_are_invertible_s_integers(x in nonzero_rat()) {
        let s = s23();
        prop_assert_eq!(is_s_unit(&x, &s), is_s_integer(&x, &s) && is_s_integer(&x.recip(), &s));
    }

    #[test]
    fn outside_part_is_multiplicative(x in 1i64..5000, y in -5000i64..5000) {
        prop_assume!(y != 0);
        let s = s23();
        let gx = outside_s_part(&int(x), &s).unwrap();
        let gy = outside_s_part(&int(y), &s).unwrap();
        let gxy = outside_s_part(&int(x * y), &s).unwrap();
        prop_assert_eq!(gxy.generator(), &(gx.generator() * gy.generator()));
    }

    #[test]
    fn resultant_matches_cofactor_oracle(d in 1usize..=3, seed in any::<u64>()) {
        let mut r = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let mut draw = || loop {
            let c: Vec<i64> = (0..=d).map(|_| rand::Rng::gen_range(&mut r, -6i64..=6)).collect();
            if let Ok(f) = BinaryForm::from_i64(&c) { if f.degree() == d { return f; } }
        };
        let (f, g) = (draw(), draw());
        let got = resultant(&f, &g).unwrap();
        prop_assert_eq!(Rat::from_integer(got.clone()), resultant_oracle(&rats(&f), &rats(&g)));
        let (l, m) = (BigInt::from(3), BigInt::from(-2));
        let scaled = resultant(&f.scale(&l), &g.scale(&m)).unwrap();
        prop_assert_eq!(scaled, l.pow(d as u32) * m.pow(d as u32) * got);
    }

    #[test]
    fn shared_factor_kills_resultant(f in form(2, 5), x in -5i64..=5, y in 0i64..=5) {
        prop_assume!(x != 0 || y != 0);
        let g = BinaryForm::from_i64(&[1, 1]).unwrap();
        let a = f.times_linear(&x.into(), &y.into());
        let b = g.times_linear(&x.into(), &y.into()).mul(&g);
        prop_assert!(resultant(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn two_reduction_definitions_agree(phi in quadratic_map(12), pi in 0usize..6) {
        let p = PRIMES[pi];
        let res = phi.resultant();
        let bad = !(&res % BigInt::from(p)).is_zero();
        let common = common_root_mod_p(phi.f(), phi.g(), p).unwrap();
        prop_assert_eq!(!bad, common);
        prop_assert_eq!(common, common_root_mod_p_oracle(&small(phi.f()), &small(phi.g()), p as i64));
    }

    #[test]
    fn rational_roots_are_roots(f in form(4, 9)) {
        let roots = rational_roots(&f).unwrap();
        let total: u32 = roots.iter().map(|(_, m)| m).sum();
        prop_assert!(total as usize <= f.degree());
        for (p, _) in &roots {
            prop_assert!(f.eval_int(p.x(), p.y()).is_zero());
        }
        let found: Vec<(BigInt, BigInt)> = roots.iter().map(|(p, _)| (p.x().clone(), p.y().clone())).collect();
        let mut found_sorted = found.clone();
        found_sorted.sort();
        prop_assert_eq!(found_sorted, rational_roots_oracle(f.coeffs()));
    }

    #[test]
    fn delta_is_symmetric_and_representative_free(
        p in point(30), q in point(30), k in 1i64..20, l in 1i64..20, pi in 0usize..6
    ) {
        prop_assume!(p != q);
        let prime = PRIMES[pi];
        let d = delta_p(&p, &q, prime).unwrap();
        prop_assert_eq!(d, delta_p(&q, &p, prime).unwrap());
        let (k, l) = (int(k), int(l));
        let coords = |pt: &ProjPoint, s: &Rat| (Rat::from_integer(pt.x().clone()) * s, Rat::from_integer(pt.y().clone()) * s);
        let (x1, y1) = coords(&p, &k);
        let (x2, y2) = coords(&q, &l.recip());
        prop_assert_eq!(delta_p_coords(&x1, &y1, &x2, &y2, prime).unwrap(), d as i64);
    }

    #[test]
    fn ideals_are_pgl2_rs_invariant(a in mobius(6), p in point(20), q in point(20)) {
        let s = s23();
        prop_assume!(p != q && is_pgl2_rs(&a, &s));
        prop_assert_eq!(ideal_i(&a.apply(&p), &a.apply(&q), &s).unwrap(), ideal_i(&p, &q, &s).unwrap());
    }

    #[test]
    fn three_points_go_to_zero_inf_one(p0 in point(20), p1 in point(20), p2 in point(20)) {
        prop_assume!(p0 != p1 && p1 != p2 && p0 != p2);
        let a = mobius_to_zero_inf_one(&p0, &p1, &p2).unwrap();
        prop_assert_eq!(a.apply(&p0), ProjPoint::zero());
        prop_assert_eq!(a.apply(&p1), ProjPoint::infinity());
        prop_assert_eq!(a.apply(&p2), ProjPoint::one());
    }

    #[test]
    fn mobius_action_composes(a in mobius(9), b in mobius(9), p in point(30)) {
        prop_assert_eq!(a.compose(&b).apply(&p), a.apply(&b.apply(&p)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn conjugation_is_pointwise(phi in quadratic_map(9), a in mobius(5), p in point(20)) {
        prop_assert_eq!(phi.conjugate(&a).apply(&a.apply(&p)), a.apply(&phi.apply(&p)));
    }

    #[test]
    fn good_reduction_is_pgl2_rs_invariant(phi in quadratic_map(9), a in mobius(4)) {
        let s = s23();
        prop_assume!(is_pgl2_rs(&a, &s));
        prop_assert_eq!(phi.has_good_reduction_outside(&s), phi.conjugate(&a).has_good_reduction_outside(&s));
    }

    #[test]
    fn unimodular_conjugation_keeps_disc(phi in quadratic_map(9), a in unimodular()) {
        prop_assert!(a.det().abs().is_one());
        let before = reduction_report(&phi, &PlaceSet::empty()).unwrap();
        let after = reduction_report(&phi.conjugate(&a), &PlaceSet::empty()).unwrap();
        prop_assert_eq!(before.disc, after.disc);
        prop_assert_eq!(before.bad_primes_outside_s, after.bad_primes_outside_s);
    }

    #[test]
    fn interpolation_through_five_orbit_points(phi in quadratic_map(6), p in point(6)) {
        let mut orbit = vec![p];
        for _ in 0..5 {
            let next = phi.apply(orbit.last().unwrap());
            orbit.push(next);
        }
        let distinct: BTreeSet<_> = orbit[..5].iter().collect();
        prop_assume!(distinct.len() == 5);
        let cons: Vec<_> = (0..5).map(|i| (orbit[i].clone(), orbit[i + 1].clone())).collect();
        let sol = interpolate_quadratic(&cons).unwrap();
        prop_assert!(sol.maps.len() <= 1);
        prop_assert!(sol.maps.contains(&phi));
    }

    #[test]
    fn normal_form_round_trip(phi in quadratic_map(6), p in point(6)) {
        let o: Vec<ProjPoint> = (0..4).scan(p, |cur, _| { let out = cur.clone(); *cur = phi.apply(cur); Some(out) }).collect();
        let distinct: BTreeSet<_> = o[1..].iter().collect();
        prop_assume!(distinct.len() == 3 && o[0] != o[1] && o[0] != o[2]);
        let (nf, a) = to_normal_form(&phi, &o[0], &o[1], &o[2], &o[3]).unwrap();
        prop_assert_eq!(nf.map().unwrap().conjugate(&a.inverse()), phi);
    }

    #[test]
    fn phi4_bad_bound_divides_into_bad_primes(n in -12i64..=12, d in 1i64..=12) {
        let a = q(n, d);
        prop_assume!(![int(0), int(2), int(-2), int(4)].contains(&a));
        let m = phi4(&a).unwrap();
        let bad = reduction_report(&m.map, &PlaceSet::empty()).unwrap().bad_primes_outside_s;
        let bound = phi4_bad_bound(&a).unwrap();
        for p in common::prime_support(&bound) {
            prop_assert!(bad.contains(&p.into()), "{} divides the bound for a = {}", p, a);
        }
        let p2 = period2_points_on_c(&a).unwrap();
        prop_assert!(p2.all_on_curve);
        for t in &p2.period2 {
            prop_assert!(curve_c_contains(&a, t));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lemma_dem(d in 1usize..=3, big_d in 1usize..=3, seed in any::<u64>()) {
        let mut r = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let mut draw = |deg: usize| loop {
            let c: Vec<i64> = (0..=deg).map(|_| rand::Rng::gen_range(&mut r, -4i64..=4)).collect();
            if let Ok(f) = BinaryForm::from_i64(&c) { if f.degree() == deg { return f; } }
        };
        let (u, v, f, g) = (draw(big_d), draw(big_d), draw(d), draw(d));
        let rfg = resultant(&f, &g).unwrap();
        prop_assume!(!rfg.is_zero());
        let lhs = resultant(&compose(&u, &f, &g).unwrap(), &compose(&v, &f, &g).unwrap()).unwrap();
        let rhs = resultant(&u, &v).unwrap().pow(d as u32) * rfg.pow((big_d * big_d) as u32);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_semigroup(phi in quadratic_map(4), m in 1usize..=3, n in 1usize..=3, p in point(10)) {
        let lhs = phi.power(m + n).unwrap();
        let rhs = phi.power(m).unwrap().compose(&phi.power(n).unwrap());
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs.apply(&p), phi.power(m).unwrap().apply(&phi.power(n).unwrap().apply(&p)));
    }

    #[test]
    fn exact_periods_partition_fixed_points_of_iterate(phi in quadratic_map(5)) {
        let big_n = 4;
        let iterate = phi.power(big_n).unwrap();
        let y = BinaryForm::from_i64(&[0, 1]).unwrap();
        let x = BinaryForm::from_i64(&[1, 0]).unwrap();
        let cn = y.mul(iterate.f()).add(&x.mul(iterate.g()).scale(&BigInt::from(-1)));
        prop_assume!(!cn.is_zero());
        let roots: BTreeSet<ProjPoint> = rational_roots(&cn).unwrap().into_iter().map(|(p, _)| p).collect();
        let mut union = BTreeSet::new();
        for n in [1, 2, 4] {
            let pts = phi.periodic_points(n).unwrap();
            prop_assert!(BigInt::from(pts.len()) <= mobius_bound(2, n as u64));
            for p in pts {
                prop_assert!(union.insert(p), "period sets overlap");
            }
        }
        prop_assert_eq!(union, roots);
    }

    #[test]
    fn conjugated_nf3_resultant(alpha in 1i64..6, beta in -6i64..6, a in -9i64..9, c in -9i64..9) {
        prop_assume!(a != 0);
        // F(X, αY - βX) and the raw conjugate by (α 0 / β 1).
        let f = [int(a), int(1 - a), int(-1)];
        let g = [int(a), int(c), int(0)];
        let sub = |h: &[Rat; 3]| -> Vec<Rat> {
            // h0 X^2 + h1 X(αY - βX) + h2 (αY - βX)^2
            let (al, be) = (int(alpha), int(beta));
            vec![
                &h[0] - &h[1] * &be + &h[2] * &be * &be,
                &h[1] * &al - int(2) * &h[2] * &al * &be,
                &h[2] * &al * &al,
            ]
        };
        let (fs, gs) = (sub(&f), sub(&g));
        let new_f: Vec<Rat> = fs.iter().map(|x| x * int(alpha)).collect();
        let new_g: Vec<Rat> = fs.iter().zip(&gs).map(|(x, y)| x * int(beta) + y).collect();
        let oracle = cofactor_det(&common::sylvester_oracle(&new_f, &new_g)).to_integer();
        let got = resultant_conjugated_nf3(&alpha.into(), &beta.into(), &a.into(), &c.into());
        prop_assert_eq!(&got, &oracle);
        prop_assert_eq!(got, -BigInt::from(alpha).pow(6) * a * (a + c) * (c - 1));
    }

    #[test]
    fn unit_equation_solutions_verify(c1 in 1i64..4, c2 in 1i64..4) {
        let s = s23();
        let coeffs = [int(c1), int(c2)];
        let sols = solve_unit_eq(&coeffs, &s, 3).unwrap();
        for sol in &sols {
            prop_assert_eq!(&coeffs[0] * &sol.values[0] + &coeffs[1] * &sol.values[1], Rat::one());
            prop_assert!(sol.values.iter().all(|v| is_s_unit(v, &s)));
        }
        if c1 == c2 {
            let set: BTreeSet<Vec<Rat>> = sols.iter().map(|s| s.values.clone()).collect();
            for v in &set {
                prop_assert!(set.contains(&vec![v[1].clone(), v[0].clone()]));
            }
        }
    }
}

#[test]
fn trinomials_have_a_simple_root() {
    for m in 2..=7u32 {
        for n in 1..m {
            for l1 in [-1i64, 1] {
                for l2 in [-1i64, 1] {
                    let mut c = vec![0i64; m as usize + 1];
                    c[0] = 1;
                    c[(m - n) as usize] += l1;
                    c[m as usize] += l2;
                    let f = BinaryForm::from_i64(&c).unwrap();
                    assert!(squarefree_part(&f).degree() >= 1, "t^{m} + {l1} t^{n} + {l2}");
                }
            }
        }
    }
}

#[test]
fn psi3_over_bound_eight_units() {
    let s = s23();
    for a in enumerate_s_units(&s, 8) {
        let m = psi3(&a).unwrap();
        assert!(m.map.is_cycle(&pp0_cycle()), "a = {a}");
        assert!(m.map.has_good_reduction_outside(&s), "a = {a}");
    }
}

#[test]
fn orbits_end_in_cycles() {
    let phi = psi3(&int(3)).unwrap().map;
    match phi.orbit(&ProjPoint::from_i64(1, 1).unwrap(), 16).unwrap() {
        Orbit::Periodic { cycle, .. } => assert_eq!(cycle.len(), 3),
        Orbit::Exhausted { .. } => panic!("[1:1] is periodic"),
    }
}

#[test]
fn by_coeffs_census_is_monotone() {
    let cfg = |height| CensusConfig { height, strategy: Search::ByCoeffs, workers: 1, ..CensusConfig::default() };
    let small: BTreeSet<_> = enumerate_maps(&cfg(1)).unwrap().into_iter().collect();
    let large: BTreeSet<_> = enumerate_maps(&cfg(2)).unwrap().into_iter().collect();
    assert!(!small.is_empty());
    assert!(small.is_subset(&large));
    for phi in &large {
        assert!(phi.has_good_reduction_outside(&s23()));
        assert_eq!(disc(phi), num_bigint::BigUint::try_from(phi.resultant().abs()).unwrap());
    }
}

#[test]
fn census_is_deterministic_across_workers() {
    let cfg = |workers| CensusConfig { height: 4, max_period: 5, workers, ..CensusConfig::default() };
    let a = run_census(&cfg(1)).unwrap().to_json().unwrap();
    let b = run_census(&cfg(2)).unwrap().to_json().unwrap();
    assert_eq!(a, b);
}
