use proptest::prelude::*;

use semiarith::family::{build_gamma, gamma_traces};
use semiarith::field::{house, mahler_measure, IntPolynomial, QuadElem, QuadField, TowerElem, TowerEmbedding};
use semiarith::hyperbolic::{karcher_mean, solve_trirectangle, HPoint, MassDistribution};
use semiarith::trace::{real_place_splitting, HilbertSymbol};

fn field() -> impl Strategy<Value = QuadField> {
    prop::sample::select(vec![2u64, 3, 5, 6, 7, 11, 13, 15]).prop_map(|d| QuadField::new(d).unwrap())
}

fn elem(k: QuadField) -> impl Strategy<Value = QuadElem> {
    (-40i64..40, -40i64..40).prop_map(move |(a, b)| QuadElem::from_ints(k, a, b))
}

fn field_and_pair() -> impl Strategy<Value = (QuadElem, QuadElem)> {
    field().prop_flat_map(|k| (elem(k), elem(k)))
}

fn point() -> impl Strategy<Value = HPoint> {
    (-3.0f64..3.0, 0.1f64..4.0).prop_map(|(x, y)| HPoint { x, y })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn quadratic_arithmetic((a, b) in field_and_pair()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        prop_assert_eq!(a.conj().conj(), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&a.try_div(&b).unwrap() * &b, a.clone());
        }
        let text = a.to_string();
        prop_assert_eq!(QuadElem::parse_in(Some(a.field()), &text).unwrap(), a);
    }

    #[test]
    fn tower_inverse_and_min_poly((u, v) in field_and_pair(), s in 1i64..30, t in 0i64..3) {
        let k = u.field();
        // s + t sqrt d is totally positive once s > t sqrt d
        let rad = QuadElem::from_ints(k, s + 4 * t * k.radicand() as i64, t);
        let x = TowerElem::new(u, v, rad).unwrap();
        prop_assume!(!x.is_zero());
        let one = &x * &x.inv().unwrap();
        prop_assert!(one.as_base().is_some_and(|b| b.is_one()));
        let p = x.min_poly().unwrap();
        for e in TowerEmbedding::ALL {
            let z = x.to_f64_at(e);
            let scale: f64 = p.coeffs_f64().iter().enumerate().map(|(i, c)| c.abs() * z.abs().powi(i as i32)).sum();
            let val: f64 = p.coeffs_f64().iter().rev().fold(0.0, |acc, c| acc * z + c);
            prop_assert!(val.abs() <= 1e-9 * scale.max(1.0), "{} at {}: {}", p, z, val);
        }
        let back = TowerElem::parse_in(Some(k), &x.to_string()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn splitting_ignores_square_factors((a, b) in field_and_pair(), c in 1i64..9, d in 1i64..9) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let k = a.field();
        let s = HilbertSymbol::new(k, a.clone(), b.clone()).unwrap();
        let (c2, d2) = (k.int(c * c), QuadElem::from_ints(k, d, 1).square());
        prop_assume!(!d2.is_zero());
        let t = HilbertSymbol::new(k, &a * &c2, &b * &d2).unwrap();
        prop_assert_eq!(real_place_splitting(&s), real_place_splitting(&t));
        prop_assert_eq!(real_place_splitting(&s).arithmetic_dimension, real_place_splitting(&s.conj()).arithmetic_dimension);
    }

    #[test]
    fn trirectangle_relations(x in 0.01f64..6.0, phi in 0.01f64..1.56) {
        let t = solve_trirectangle(x, phi).unwrap();
        let (r1, r2) = t.residuals();
        prop_assert!(r1.abs() < 1e-12 && r2.abs() < 1e-12 * x.cosh());
    }

    #[test]
    fn karcher_mean_minimizes_energy(pts in prop::collection::vec(point(), 1..8), probes in prop::collection::vec(point(), 10)) {
        let m = MassDistribution::uniform(pts).unwrap();
        let mean = karcher_mean(&m, 1e-12).unwrap();
        prop_assert!(m.gradient(mean).norm() < 1e-12);
        for p in probes {
            prop_assert!(m.energy(mean) <= m.energy(p) + 1e-12);
        }
    }

    #[test]
    fn mahler_at_least_house(c in prop::collection::vec(-6i64..6, 3), last in prop::sample::select(vec![-1i64, 1])) {
        let p = IntPolynomial::from_descending(&[1, c[0], c[1], c[2], last]).unwrap();
        let h = house(&p, 1e-9).unwrap();
        let m = mahler_measure(&p, 1e-9).unwrap();
        prop_assert!(h >= 1.0 - 1e-12);
        prop_assert!(m >= h * (1.0 - 1e-9));
    }
}

#[test]
fn tau_conjugates_are_tau_omega_and_inverses() {
    for n in 1..=8 {
        let r = build_gamma(n).unwrap();
        let mut got: Vec<f64> = TowerEmbedding::ALL.iter().map(|&e| r.tau.to_f64_at(e)).collect();
        got.sort_by(f64::total_cmp);
        let (t, w) = (r.tau_value, r.omega);
        let mut want = vec![1.0 / w, 1.0 / t, t, w];
        want.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() <= 1e-12 * w, "n = {n}: {got:?} vs {want:?}");
        }
    }
}

#[test]
fn galois_conjugation_swaps_the_two_quadratic_factors() {
    for n in 1..=6 {
        let (eps, t) = gamma_traces(n).unwrap();
        let c = t.base_conj().unwrap();
        // the conjugate traces are those built from 1/eps
        let k = eps.field();
        let e = eps.inv().unwrap();
        assert_eq!(c.tr_a().radicand().clone(), &k.int(4) + &e.square());
        assert_eq!(c.tr_comm(), t.tr_comm());
        let r = build_gamma(n).unwrap();
        assert_eq!(r.tau.base_conj().min_poly().unwrap(), r.tau_min_poly);
    }
}

#[test]
fn family_is_pairwise_distinguished_by_stretch() {
    let rows: Vec<f64> = (1..=12).map(|n| build_gamma(n).unwrap().stretch_lb).collect();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            assert!(rows[i] != rows[j]);
        }
    }
}
