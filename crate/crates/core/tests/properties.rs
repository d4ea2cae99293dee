mod common;

use std::collections::BTreeSet;

use common::*;
use goodred::analysis::MapAnalysis;
use goodred::arith::*;
use goodred::cli::parse_map;
use goodred::dynamics::{orbit, periodic_points, preperiodic_points};
use goodred::proj::*;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn nonzero_form(max_deg: usize, h: i64) -> impl Strategy<Value = IntBinaryForm> {
    (0..=max_deg)
        .prop_flat_map(move |d| prop::collection::vec(-h..=h, d + 1))
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(|c| IntBinaryForm::from_i64(&c))
}

fn rational_map(deg_min: usize, deg_max: usize, h: i64) -> impl Strategy<Value = RationalMap> {
    (deg_min..=deg_max)
        .prop_flat_map(move |d| {
            (prop::collection::vec(-h..=h, d + 1), prop::collection::vec(-h..=h, d + 1))
        })
        .prop_filter_map("coprime pair", |(f, g)| {
            new_map(IntBinaryForm::from_i64(&f), IntBinaryForm::from_i64(&g)).ok()
        })
}

/// Distinct primitive points `[b : a]` with `|a|, |b| <= h`.
fn distinct_points(max: usize, h: i64) -> impl Strategy<Value = Vec<ProjPointQ>> {
    prop::collection::btree_set(
        (-h..=h, -h..=h).prop_filter_map("not both zero", |(b, a)| ProjPointQ::from_i64(b, a)),
        1..=max,
    )
    .prop_map(|s| s.into_iter().collect())
}

/// `∏ (a X − b Y)` over the points `[b : a]`.
fn form_with_roots(points: &[ProjPointQ]) -> IntBinaryForm {
    points.iter().fold(IntBinaryForm::one(), |acc, p| {
        acc.mul(&IntBinaryForm::new(vec![p.y().clone(), -p.x().clone()]))
    })
}

fn moebius_mod(p: u64) -> impl Strategy<Value = Moebius> {
    (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4).prop_filter_map("invertible mod p", move |(a, b, c, d)| {
        let m = Moebius::from_i64(a, b, c, d).ok()?;
        m.is_invertible_mod(&Prime::from_u64(p).unwrap()).then_some(m)
    })
}

fn lift(k: &Fp64, p: &ProjPointFp<Fp64>) -> ProjPointQ {
    if p.is_infinity(k) {
        ProjPointQ::infinity()
    } else {
        let x = (0..k.p()).find(|&x| ProjPointFp::finite(k, x) == *p).unwrap();
        ProjPointQ::integer(x as i64)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn resultant_vanishes_iff_common_factor(
        a in nonzero_form(3, 5),
        b in nonzero_form(3, 5),
        shared in prop::option::of(nonzero_form(2, 3)),
    ) {
        let (a, b) = match shared {
            Some(c) => (a.mul(&c), b.mul(&c)),
            None => (a, b),
        };
        let g = gcd_forms(&a, &b).unwrap();
        prop_assert_eq!(resultant(&a, &b).is_zero(), g.degree() >= 1);
    }

    #[test]
    fn squarefree_decomposition_reassembles(
        a in nonzero_form(4, 6),
        b in nonzero_form(2, 3),
        e in 1usize..=3,
    ) {
        let input = a.mul(&b.pow(e));
        let d = squarefree_decomposition(&input).unwrap();
        prop_assert_eq!(d.expand(), input.clone());
        prop_assert_eq!(d.weighted_degree(), input.degree());
        for (f, _) in &d.factors {
            prop_assert!(f.is_primitive());
        }
    }

    #[test]
    fn collision_test_matches_point_comparison(pts in distinct_points(5, 6)) {
        let a = form_with_roots(&pts);
        let set: BTreeSet<ProjPointQ> = pts.iter().cloned().collect();
        for q in SMALL_PRIMES {
            let k = Fp64::new(q);
            let reduced = reduce_form(&a, &k).unwrap();
            prop_assert_eq!(squarefree_mod_p(&reduced).unwrap(), distinct_mod(&k, &set));
        }
    }

    #[test]
    fn resultant_is_product_of_cross_terms(
        left in distinct_points(3, 5),
        right in distinct_points(3, 5),
    ) {
        let mut cross = BigInt::from(1);
        for p in &left {
            for q in &right {
                cross *= p.x() * q.y() - p.y() * q.x();
            }
        }
        let r = resultant(&form_with_roots(&left), &form_with_roots(&right));
        prop_assert_eq!(r.abs(), cross.abs());
    }

    #[test]
    fn verdicts_ignore_sign_of_representatives(phi in rational_map(2, 3, 6)) {
        let flipped = new_map(phi.f().neg(), phi.g().neg()).unwrap();
        prop_assert_eq!(&flipped, &phi);
        let a = MapAnalysis::new(phi.clone());
        for q in SMALL_PRIMES {
            let k = Fp64::new(q);
            prop_assert_eq!(a.report(&k).unwrap(), MapAnalysis::new(flipped.clone()).report(&k).unwrap());
        }
        let w = a.ramification().unwrap().wronskian.clone();
        prop_assert_eq!(primitive_part(&w.neg()).unwrap(), w.clone());
        for q in SMALL_PRIMES {
            let k = Fp64::new(q);
            let plus = reduce_form(&w, &k).unwrap();
            let minus = reduce_form(&w.neg(), &k).unwrap();
            prop_assert_eq!(squarefree_mod_p(&plus).ok(), squarefree_mod_p(&minus).ok());
        }
    }

    #[test]
    fn print_parse_round_trip(phi in rational_map(1, 5, 20)) {
        prop_assert_eq!(parse_map(&phi.to_string()).unwrap(), phi);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_commutes_with_evaluation_under_good_reduction(
        phi in rational_map(1, 3, 6),
        extra in prop::collection::vec((-50i64..=50, 1i64..=50), 4),
    ) {
        for q in SMALL_PRIMES {
            let k = Fp64::new(q);
            let r = reduce_map(&phi, &k);
            if r.reduced_degree() != phi.degree() {
                continue;
            }
            let lifts = points_mod(&k).iter().map(|p| lift(&k, p)).collect::<Vec<_>>();
            let others = extra.iter().filter_map(|&(x, y)| ProjPointQ::from_i64(x, y));
            for p in lifts.into_iter().chain(others) {
                let upstairs = phi.evaluate(&p).reduce(&k);
                prop_assert_eq!(upstairs, r.evaluate(&p.reduce(&k)).unwrap());
            }
        }
    }

    #[test]
    fn reduction_commutes_with_moebius(
        phi in rational_map(1, 3, 5),
        (q, alpha, beta) in prop::sample::select(SMALL_PRIMES.to_vec())
            .prop_flat_map(|q| (Just(q), moebius_mod(q), moebius_mod(q))),
    ) {
        let k = Fp64::new(q);
        let conj = conjugate(&alpha, &phi, &beta).unwrap();
        let whole = reduce_map(&conj, &k);
        let inner = reduce_map(&phi, &k);
        for p in points_mod(&k) {
            let step = beta.apply_mod_p(&k, &p).unwrap();
            let step = inner.evaluate(&step).unwrap();
            let step = alpha.apply_mod_p(&k, &step).unwrap();
            prop_assert_eq!(whole.evaluate(&p).unwrap(), step);
        }
    }

    #[test]
    fn verdicts_are_moebius_invariant(
        phi in rational_map(2, 3, 5),
        (q, alpha, beta) in prop::sample::select(SMALL_PRIMES.to_vec())
            .prop_flat_map(|q| (Just(q), moebius_mod(q), moebius_mod(q))),
    ) {
        let k = Fp64::new(q);
        let conj = conjugate(&alpha, &phi, &beta).unwrap();
        let a = MapAnalysis::new(phi).report(&k).unwrap();
        let b = MapAnalysis::new(conj).report(&k).unwrap();
        prop_assert_eq!(
            (a.sgr, a.cgr, a.separable, a.nonconstant, a.branch_nonsingular, a.ram_nonsingular, a.lemma7, a.reduced_degree),
            (b.sgr, b.cgr, b.separable, b.nonconstant, b.branch_nonsingular, b.ram_nonsingular, b.lemma7, b.reduced_degree)
        );
        prop_assert_eq!(a.theorem1_consistent, b.theorem1_consistent);
    }

    #[test]
    fn good_reduction_is_closed_under_composition(
        phi in rational_map(1, 3, 4),
        psi in rational_map(1, 2, 4),
    ) {
        let comp = phi.compose(&psi);
        for q in SMALL_PRIMES {
            let k = Fp64::new(q);
            let (rp, rs) = (reduce_map(&phi, &k), reduce_map(&psi, &k));
            if rp.reduced_degree() != phi.degree() || rs.reduced_degree() != psi.degree() {
                continue;
            }
            let rc = reduce_map(&comp, &k);
            prop_assert_eq!(rc.reduced_degree(), comp.degree());
            for p in points_mod(&k) {
                let chained = rp.evaluate(&rs.evaluate(&p).unwrap()).unwrap();
                prop_assert_eq!(rc.evaluate(&p).unwrap(), chained);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn periodic_points_are_exact(phi in rational_map(2, 2, 4)) {
        let per = periodic_points(&phi, 2).unwrap();
        for (&n, pts) in &per.by_period {
            for p in pts {
                let iter = phi.iterate(n);
                prop_assert_eq!(&iter.evaluate(p), p);
                for m in (1..n).filter(|m| n % m == 0) {
                    prop_assert_ne!(&phi.iterate(m).evaluate(p), p);
                }
            }
        }
    }

    #[test]
    fn orbits_are_deterministic(
        phi in rational_map(2, 3, 4),
        (x, y) in (-9i64..=9, 1i64..=9),
    ) {
        let start = ProjPointQ::from_i64(x, y).unwrap();
        let a = orbit(&phi, &start, 50, 512);
        let b = orbit(&phi, &start, 50, 512);
        prop_assert_eq!(&a, &b);
        if a.cycle_length > 0 {
            let last = a.points.last().unwrap();
            prop_assert_eq!(&phi.evaluate(last), &a.points[a.tail_length]);
        }
        let distinct: BTreeSet<_> = a.points.iter().collect();
        prop_assert_eq!(distinct.len(), a.points.len());
    }

    #[test]
    fn preperiodic_points_reach_cycles(phi in rational_map(2, 2, 4)) {
        let pre = preperiodic_points(&phi, 2, 6).unwrap();
        let cycles = pre.periodic.all();
        for p in &pre.points {
            let mut x = p.clone();
            let mut reached = cycles.contains(&x);
            for _ in 0..=pre.depth_reached + 1 {
                if reached {
                    break;
                }
                x = phi.evaluate(&x);
                reached = cycles.contains(&x);
            }
            prop_assert!(reached, "{} does not reach a cycle", p);
        }
    }

    #[test]
    fn periods_mod_p_divide_rational_periods(phi in rational_map(2, 2, 4)) {
        let per = periodic_points(&phi, 2).unwrap();
        for q in SMALL_PRIMES {
            let k = Fp64::new(q);
            let r = reduce_map(&phi, &k);
            if r.reduced_degree() != phi.degree() {
                continue;
            }
            for (&n, pts) in &per.by_period {
                for p in pts {
                    let start = p.reduce(&k);
                    let mut x = r.evaluate(&start).unwrap();
                    let mut m = 1;
                    while x != start {
                        x = r.evaluate(&x).unwrap();
                        m += 1;
                        prop_assert!(m <= n, "period over F_{} exceeds {}", q, n);
                    }
                    prop_assert_eq!(n % m, 0);
                }
            }
        }
    }
}
