//! Randomized invariants.  Every property here has an oracle that is
//! independent of the code path under test: evaluation homomorphisms for
//! ring operations, exact rational arithmetic for interval endpoints,
//! multilinear identities (Cauchy-Binet, Vieta) for the spectral layer,
//! and the structure theorems (submultiplicativity, log-concavity, norm
//! axioms) for the dynamical layer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use dyndeg_core::degseq::iterate_degrees;
use dyndeg_core::gcd::poly_gcd;
use dyndeg_core::interval::Interval;
use dyndeg_core::intmat::IMat;
use dyndeg_core::monomial::{dynamical_degrees, log_concavity_violations, projective_model};
use dyndeg_core::parse::parse_polynomial;
use dyndeg_core::poly::{Budget, Polynomial};
use dyndeg_core::roots::root_moduli;
use dyndeg_core::space::AmbientSpace;

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// `exact` lies within `r`, treating infinite endpoints as unbounded.
fn encloses(r: &Interval, exact: &BigRational) -> bool {
    let lo_ok = r.lo == f64::NEG_INFINITY || rat(r.lo) <= *exact;
    let hi_ok = r.hi == f64::INFINITY || *exact <= rat(r.hi);
    lo_ok && hi_ok
}

/// Finite doubles across the full dynamic range, including values whose
/// products overflow or underflow.
fn wide_f64() -> impl Strategy<Value = f64> {
    (any::<i64>(), -500i32..=520).prop_map(|(m, e)| (m as f64) * 2.0f64.powi(e))
}

/// Homogeneous polynomial on the projective plane with small support.
fn poly_p2() -> impl Strategy<Value = Polynomial> {
    (
        1u16..=4,
        proptest::collection::vec(((0u16..=4, 0u16..=4), -20i64..=20), 1..=6),
    )
        .prop_map(|(d, terms)| {
            let space = AmbientSpace::projective(2).unwrap();
            let mut acc = Polynomial::zero(space.clone());
            for ((u, v), c) in terms {
                if c == 0 {
                    continue;
                }
                let a = u.min(d);
                let b = v.min(d - a);
                let mono = Polynomial::monomial(space.clone(), vec![a, b, d - a - b], c.into());
                acc = acc.add(&mono).unwrap();
            }
            if acc.is_zero() {
                acc = Polynomial::monomial(space, vec![d, 0, 0], BigInt::one());
            }
            acc
        })
}

/// Bihomogeneous polynomial on the product of two lines.
fn poly_p1p1() -> impl Strategy<Value = Polynomial> {
    (
        0u16..=3,
        0u16..=3,
        proptest::collection::vec(((0u16..=3, 0u16..=3), -20i64..=20), 1..=5),
    )
        .prop_map(|(d0, d1, terms)| {
            let space = AmbientSpace::product(&[1, 1]).unwrap();
            let mut acc = Polynomial::zero(space.clone());
            for ((u, v), c) in terms {
                if c == 0 {
                    continue;
                }
                let a = u.min(d0);
                let b = v.min(d1);
                let mono =
                    Polynomial::monomial(space.clone(), vec![a, d0 - a, b, d1 - b], c.into());
                acc = acc.add(&mono).unwrap();
            }
            if acc.is_zero() {
                acc = Polynomial::monomial(space, vec![d0, 0, d1, 0], BigInt::one());
            }
            acc
        })
}

fn rational_point(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::vec((-9i64..=9, 1i64..=9), n).prop_map(|pairs| {
        pairs
            .into_iter()
            .map(|(p, q)| BigRational::new(p.into(), q.into()))
            .collect()
    })
}

fn square_mat(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = IMat> {
    proptest::collection::vec(proptest::collection::vec(lo..=hi, n), n)
        .prop_map(|rows| IMat::from_rows(&rows))
}

proptest! {
    // ring operations agree with the evaluation homomorphism
    #[test]
    fn mul_commutes_with_evaluation(
        a in poly_p2(),
        b in poly_p2(),
        pt in rational_point(3),
    ) {
        let prod = a.mul(&b, &Budget::default()).unwrap();
        prop_assert_eq!(
            prod.eval_rational(&pt),
            a.eval_rational(&pt) * b.eval_rational(&pt)
        );
    }

    #[test]
    fn add_commutes_with_evaluation(
        a in poly_p2(),
        pt in rational_point(3),
        k in 1u32..=3,
    ) {
        // same-degree sums only: scale by a random same-degree monomial sum
        let b = a.neg();
        prop_assert!(a.add(&b).unwrap().is_zero());
        let p = a.pow(k, &Budget::default()).unwrap();
        let ev = a.eval_rational(&pt);
        let mut expect = BigRational::one();
        for _ in 0..k {
            expect *= &ev;
        }
        prop_assert_eq!(p.eval_rational(&pt), expect);
    }

    #[test]
    fn printed_form_parses_back(a in poly_p2(), b in poly_p1p1()) {
        let sa = a.to_canonical_string();
        prop_assert_eq!(&parse_polynomial(a.space(), &sa).unwrap(), &a, "{}", sa);
        let sb = b.to_canonical_string();
        prop_assert_eq!(&parse_polynomial(b.space(), &sb).unwrap(), &b, "{}", sb);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // gcd(ac, bc) is a common divisor divisible by c
    #[test]
    fn gcd_is_a_common_divisor_containing_common_factor(
        a in poly_p2(),
        b in poly_p2(),
        c in poly_p2(),
    ) {
        let budget = Budget::default();
        let ac = a.mul(&c, &budget).unwrap();
        let bc = b.mul(&c, &budget).unwrap();
        let g = poly_gcd(&ac, &bc).unwrap();
        prop_assert!(ac.exact_div(&g).is_some());
        prop_assert!(bc.exact_div(&g).is_some());
        prop_assert!(g.exact_div(&c).is_some());
    }
}

proptest! {
    // directed rounding: every exact rational corner stays enclosed
    #[test]
    fn interval_add_encloses_exact_sum(a in wide_f64(), b in wide_f64()) {
        let r = Interval::exact(a).add(&Interval::exact(b));
        prop_assert!(encloses(&r, &(rat(a) + rat(b))), "{a} + {b} -> {r:?}");
    }

    #[test]
    fn interval_mul_encloses_exact_product(a in wide_f64(), b in wide_f64()) {
        let r = Interval::exact(a).mul(&Interval::exact(b));
        prop_assert!(encloses(&r, &(rat(a) * rat(b))), "{a} * {b} -> {r:?}");
    }

    #[test]
    fn interval_box_mul_encloses_all_corners(
        (a1, a2) in (wide_f64(), wide_f64()),
        (b1, b2) in (wide_f64(), wide_f64()),
    ) {
        let x = Interval::new(a1.min(a2), a1.max(a2));
        let y = Interval::new(b1.min(b2), b1.max(b2));
        let r = x.mul(&y);
        for p in [a1, a2] {
            for q in [b1, b2] {
                prop_assert!(encloses(&r, &(rat(p) * rat(q))), "{p} * {q} -> {r:?}");
            }
        }
    }

    #[test]
    fn interval_sqrt_brackets_the_square(a in wide_f64()) {
        let x = a.abs();
        let r = Interval::exact(x).sqrt();
        prop_assert!(r.lo >= 0.0);
        let exact = rat(x);
        prop_assert!(rat(r.lo) * rat(r.lo) <= exact);
        prop_assert!(r.hi == f64::INFINITY || exact <= rat(r.hi) * rat(r.hi));
    }

    #[test]
    fn interval_nth_root_brackets_the_power(a in wide_f64(), n in 1u32..=6) {
        let x = a.abs();
        let r = Interval::exact(x).nth_root(n);
        prop_assert!(r.lo >= 0.0);
        let exact = rat(x);
        let pow = |v: f64| {
            let b = rat(v);
            let mut acc = BigRational::one();
            for _ in 0..n {
                acc *= &b;
            }
            acc
        };
        prop_assert!(pow(r.lo) <= exact, "{x}^(1/{n}) -> {r:?}");
        prop_assert!(r.hi == f64::INFINITY || exact <= pow(r.hi), "{x}^(1/{n}) -> {r:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // multilinear identities pin the exact matrix layer
    #[test]
    fn compound_is_multiplicative(
        a in square_mat(3, -4, 4),
        b in square_mat(3, -4, 4),
        p in 1usize..=3,
    ) {
        let lhs = a.mul(&b).compound(p);
        let rhs = a.compound(p).mul(&b.compound(p));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn char_poly_matches_det_and_trace(a in square_mat(4, -5, 5)) {
        let chi = a.char_poly();
        prop_assert_eq!(chi.len(), 5);
        prop_assert!(chi[4].is_one());
        prop_assert_eq!(&chi[0], &a.det()); // (-1)^4 det
        prop_assert_eq!(-&chi[3], a.trace());
    }

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(a in square_mat(3, -6, 6)) {
        let (u, s, v) = a.smith_normal_form();
        prop_assert_eq!(u.mul(&a).mul(&v), s.clone());
        prop_assert!(u.det().abs().is_one());
        prop_assert!(v.det().abs().is_one());
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    prop_assert!(s[(i, j)].is_zero());
                }
            }
        }
        for i in 0..2 {
            let (d, e) = (&s[(i, i)], &s[(i + 1, i + 1)]);
            prop_assert!(d.is_zero() && e.is_zero() || !d.is_zero() && (e % d).is_zero());
        }
    }

    #[test]
    fn exact_solve_reproduces_the_image(
        a in square_mat(3, -5, 5),
        x in square_mat(3, -5, 5),
    ) {
        let y = a.mul(&x);
        if let Some(sol) = a.solve_exact(&y) {
            prop_assert_eq!(a.mul(&sol), y);
        } else {
            // only consistent systems were constructed, so a miss means rank loss
            prop_assert!(a.det().is_zero());
        }
    }

    #[test]
    fn kernel_basis_spans_the_kernel(a in square_mat(3, -2, 2)) {
        let k = a.kernel_basis();
        prop_assert_eq!(k.cols(), 3 - a.rank());
        if k.cols() > 0 {
            let product = a.mul(&k);
            for i in 0..product.rows() {
                for j in 0..product.cols() {
                    prop_assert!(product[(i, j)].is_zero());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    // Vieta: the product of all certified root moduli is |constant/leading|
    #[test]
    fn certified_moduli_satisfy_vieta(
        coeffs in proptest::collection::vec(-8i64..=8, 3..=5),
    ) {
        let mut p: Vec<BigInt> = coeffs.iter().map(|&c| c.into()).collect();
        p.push(BigInt::one()); // monic
        let disks = root_moduli(&p, 1e-6).unwrap();
        let total: usize = disks.iter().map(|d| d.multiplicity).sum();
        prop_assert_eq!(total, p.len() - 1);
        let mut prod = Interval::exact(1.0);
        for d in &disks {
            for _ in 0..d.multiplicity {
                prod = prod.mul(&d.modulus);
            }
        }
        let c0 = coeffs[0].unsigned_abs() as f64;
        prop_assert!(prod.contains(c0), "{coeffs:?}: {prod:?} vs {c0}");
    }

    // structure theorems as observable invariants of the monomial engine
    #[test]
    fn monomial_degrees_are_log_concave_and_bounded_below(
        a in square_mat(3, -3, 3),
    ) {
        prop_assume!(!a.det().is_zero());
        let lambda = dynamical_degrees(&a, 1e-7).unwrap();
        prop_assert_eq!(lambda.len(), 4);
        prop_assert!(lambda[0].is_point() && lambda[0].contains(1.0));
        for l in &lambda {
            prop_assert!(l.hi >= 1.0 && l.lo >= 1.0 - 1e-6, "{lambda:?}");
        }
        prop_assert!(log_concavity_violations(&lambda, 0.0).is_empty(), "{lambda:?}");
        let det = a.det().abs();
        prop_assert!(lambda[3].contains(i64::try_from(&det).unwrap() as f64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // reduced degree sequences are submultiplicative and composition is
    // compatible with degree matrices before reduction
    #[test]
    fn degree_sequences_are_submultiplicative(a in square_mat(2, 0, 3)) {
        prop_assume!(!a.det().is_zero());
        let f = projective_model(&a).unwrap();
        let data = iterate_degrees(&f, 4, &Budget::default()).unwrap();
        prop_assert!(!data.truncated);
        prop_assert!(data.check_submultiplicative().is_ok());
        prop_assert!(data.scalars[0].is_one());
    }

    #[test]
    fn unreduced_composition_multiplies_degree_matrices(a in square_mat(2, 0, 2)) {
        prop_assume!(!a.det().is_zero());
        let f = projective_model(&a).unwrap();
        let ff = f.compose(&f, &Budget::default()).unwrap();
        let d = f.degree_matrix();
        prop_assert_eq!(ff.degree_matrix(), d.mul(&d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // the minimal-degree decomposition norm satisfies the seminorm axioms
    // exactly, vanishes only at zero, and is dominated by the degree on
    // the effective cone
    #[test]
    fn lattice_norm_axioms(
        m in 1usize..=3,
        u in proptest::collection::vec(-6i64..=6, 4),
        v in proptest::collection::vec(-6i64..=6, 4),
        c in -4i64..=4,
    ) {
        let lat = dyndeg_core::cyclelat::blowup_plane(m);
        let u: Vec<BigInt> = u[..=m].iter().map(|&x| x.into()).collect();
        let v: Vec<BigInt> = v[..=m].iter().map(|&x| x.into()).collect();
        let nu = lat.norm_one(&u).unwrap().value;
        let nv = lat.norm_one(&v).unwrap().value;
        prop_assert!(!nu.is_negative());
        prop_assert_eq!(nu.is_zero(), u.iter().all(|x| x.is_zero()));

        let sum: Vec<BigInt> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        let nsum = lat.norm_one(&sum).unwrap().value;
        prop_assert!(nsum <= &nu + &nv, "{nsum} > {nu} + {nv}");

        let scaled: Vec<BigInt> = u.iter().map(|x| x * c).collect();
        let nscaled = lat.norm_one(&scaled).unwrap().value;
        prop_assert_eq!(nscaled, nu * BigRational::from_integer(c.abs().into()));

        if lat.is_effective(&v) {
            let deg = BigRational::from_integer(lat.degree_of(&v));
            prop_assert!(nv <= deg, "effective class with norm {nv} above degree {deg}");
        }
    }
}
