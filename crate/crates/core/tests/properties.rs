//! Randomised invariants across the public API.

mod common;

use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

use iqsieve::approx::{dirichlet_approx, nearest_lattice_point};
use iqsieve::character::{eval_character, phase};
use iqsieve::qfield::{make_field, OKElt};
use iqsieve::residue::{residue_system, totient};
use iqsieve::sieve::{build_fractions, lambda_max, quadratic_form, CoeffSeq, FamilyKind};

const FIELDS: [i64; 9] = [-1, -2, -3, -7, -11, -19, -43, -67, -163];

fn field_d() -> impl Strategy<Value = i64> {
    prop::sample::select(FIELDS.to_vec())
}

fn elt(span: i64) -> impl Strategy<Value = OKElt> {
    (-span..=span, -span..=span).prop_map(|(a, b)| OKElt::new(a, b))
}

fn nonzero(span: i64) -> impl Strategy<Value = OKElt> {
    elt(span).prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_is_multiplicative_and_matches_embedding(d in field_d(), x in elt(50), y in elt(50)) {
        let k = make_field(d).unwrap();
        prop_assert_eq!(k.norm(&k.mul(&x, &y)), k.norm(&x) * k.norm(&y));
        let c = common::embed_elt(d, &x);
        prop_assert!((c.norm_sqr() - k.norm(&x).to_string().parse::<f64>().unwrap()).abs() <= 1e-9 * (1.0 + c.norm_sqr()));
        prop_assert_eq!(k.trace(&x), BigInt::from(2) * &x.a + &x.b * k.omega_trace());
    }

    #[test]
    fn exact_division_round_trips(d in field_d(), x in elt(30), y in nonzero(30)) {
        let k = make_field(d).unwrap();
        let xy = k.mul(&x, &y);
        prop_assert_eq!(k.exact_div(&xy, &y).unwrap(), Some(x));
    }

    #[test]
    fn reduction_is_idempotent_and_preserves_class(d in field_d(), m in nonzero(6), x in elt(200)) {
        let k = make_field(d).unwrap();
        let rs = residue_system(&k, &m).unwrap();
        let r = rs.reduce(&x);
        prop_assert_eq!(rs.reduce(&r), r.clone());
        prop_assert!(k.divides(&m, &(&x - &r)));
        prop_assert!(rs.reps().contains(&r));
    }

    #[test]
    fn character_is_additive_and_periodic(d in field_d(), m in nonzero(5), a in elt(20), b in elt(20), r in elt(20)) {
        let k = make_field(d).unwrap();
        let e = |n: &OKElt| eval_character(&phase(&k, n, &r, &m).unwrap());
        let lhs = e(&(&a + &b));
        prop_assert!((lhs - e(&a) * e(&b)).norm() < 1e-12);
        prop_assert!((e(&(&a + &m)) - e(&a)).norm() < 1e-12);
        let z = common::embed_elt(d, &a) * common::embed_elt(d, &r) / common::embed_elt(d, &m);
        prop_assert!((e(&a) - common::e_tilde(d, z)).norm() < 1e-9);
    }

    #[test]
    fn totient_is_multiplicative_on_coprime_pairs(d in field_d(), x in nonzero(4), y in nonzero(4)) {
        let k = make_field(d).unwrap();
        let (nx, ny) = (k.norm(&x), k.norm(&y));
        prop_assume!(num_integer::Integer::gcd(&nx, &ny) == BigInt::from(1));
        let t = totient(&k, &k.mul(&x, &y)).unwrap();
        prop_assert_eq!(t, totient(&k, &x).unwrap() * totient(&k, &y).unwrap());
    }

    #[test]
    fn nearest_lattice_point_beats_neighbours(d in field_d(), re in -30.0..30.0f64, im in -30.0..30.0f64) {
        let k = make_field(d).unwrap();
        let w = Complex64::new(re, im);
        let p = nearest_lattice_point(&k, w);
        let best = (w - common::embed_elt(d, &p)).norm();
        for da in -2..=2i64 {
            for db in -2..=2i64 {
                let q = &p + &OKElt::new(da, db);
                prop_assert!(best <= (w - common::embed_elt(d, &q)).norm() + 1e-12);
            }
        }
    }

    #[test]
    fn dirichlet_certificate(d in field_d(), re in -50.0..50.0f64, im in -50.0..50.0f64, n in 1u64..40) {
        let k = make_field(d).unwrap();
        let z = Complex64::new(re, im);
        let ap = dirichlet_approx(&k, z, n).unwrap();
        let q = common::embed_elt(d, &ap.q);
        let p = common::embed_elt(d, &ap.p);
        prop_assert!(q.norm() > 0.0 && q.norm() <= n as f64 + 1e-12);
        prop_assert!((z - p / q).norm() <= common::abs_disc(d).sqrt() / (q.norm() * n as f64) + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sieve_inequality_holds_for_random_coefficients(
        d in prop::sample::select(vec![-1i64, -2, -3, -7]),
        q in 1u64..6,
        n in 1u64..20,
        seed in 0u64..1000,
    ) {
        let k = make_field(d).unwrap();
        let family = build_fractions(&k, FamilyKind::All, q).unwrap();
        let lam = lambda_max(&family, n, 1e-12, 3, 20_000).unwrap().value;
        let coeffs = CoeffSeq::from_fn(&k, n, |s, t| {
            let h = (s * 7919 + t * 104_729 + seed as i64).rem_euclid(1000) as f64;
            Complex64::from_polar(1.0 + h / 500.0, h)
        });
        let form = quadratic_form(&family, &coeffs).unwrap();
        prop_assert!(form <= lam * coeffs.l2_norm_sqr() * (1.0 + 1e-6));
        prop_assert!(lam >= family.len().max(family.unit_rows() * coeffs.keys().len()) as f64 * (1.0 - 1e-6));
    }
}
