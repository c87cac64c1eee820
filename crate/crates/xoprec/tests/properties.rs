//! Randomized algebraic properties of the exact-arithmetic kernel: ring
//! axioms, calculus identities, normalization invariants, string round-trips,
//! and agreement between the fixed-point reals and exact rational arithmetic.

use num_bigint::BigInt;
use proptest::prelude::*;
use xoprec::ratpoly::{
    fmt_rat, parse_rat, rat, residue_simple, sturm_count, wronskian, BigReal, Bound, ExactScalar,
    Poly, RatFunc,
};

fn arb_rat() -> impl Strategy<Value = ExactScalar> {
    (-200i64..=200, 1i64..=40).prop_map(|(n, d)| rat(n, d))
}

fn arb_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(arb_rat(), 0..=max_len).prop_map(Poly::from_coeffs)
}

proptest! {
    #[test]
    fn polynomial_ring_axioms(a in arb_poly(7), b in arb_poly(7), c in arb_poly(5)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Poly::zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in arb_poly(7), b in arb_poly(7), x in arb_rat()) {
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
    }

    #[test]
    fn derivative_is_a_derivation(a in arb_poly(6), b in arb_poly(6)) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_inverts_antiderivative(a in arb_poly(8)) {
        prop_assert_eq!(a.antiderivative().derivative(), a);
    }

    #[test]
    fn affine_composition_is_multiplicative(
        a in arb_poly(5),
        b in arb_poly(5),
        c in arb_rat(),
        d in arb_rat(),
    ) {
        prop_assume!(c != rat(0, 1));
        let lhs = (&a * &b).compose_affine(&c, &d).unwrap();
        let rhs = &a.compose_affine(&c, &d).unwrap() * &b.compose_affine(&c, &d).unwrap();
        prop_assert_eq!(lhs, rhs);
        // Reflection is an involution.
        let neg = rat(-1, 1);
        let zero = rat(0, 1);
        prop_assert_eq!(
            a.compose_affine(&neg, &zero).unwrap().compose_affine(&neg, &zero).unwrap(),
            a
        );
    }

    #[test]
    fn division_with_remainder_reconstructs(a in arb_poly(8), d in arb_poly(4)) {
        prop_assume!(!d.is_zero());
        let (q, r) = a.divrem(&d);
        prop_assert_eq!(&(&q * &d) + &r, a);
        if !r.is_zero() {
            prop_assert!(r.degree().unwrap() < d.degree().unwrap());
        }
    }

    #[test]
    fn gcd_divides_both_inputs(a in arb_poly(6), b in arb_poly(6)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(!g.is_zero());
        prop_assert!(a.divrem(&g).1.is_zero());
        prop_assert!(b.divrem(&g).1.is_zero());
    }

    #[test]
    fn power_matches_repeated_multiplication(a in arb_poly(4), k in 0u32..=4) {
        let mut expected = Poly::one();
        for _ in 0..k {
            expected = &expected * &a;
        }
        prop_assert_eq!(a.pow(k), expected);
    }

    #[test]
    fn wronskian_is_antisymmetric(f in arb_poly(5), g in arb_poly(5)) {
        prop_assert_eq!(wronskian(&f, &g), wronskian(&g, &f).scale(&rat(-1, 1)));
    }

    #[test]
    fn rational_strings_round_trip(x in arb_rat()) {
        prop_assert_eq!(parse_rat(&fmt_rat(&x)).unwrap(), x);
    }

    #[test]
    fn coefficient_strings_round_trip(a in arb_poly(8)) {
        prop_assert_eq!(Poly::from_strings(&a.to_string_vec()).unwrap(), a);
    }

    #[test]
    fn rational_function_arithmetic_normalizes(
        a in arb_poly(4),
        b in arb_poly(4),
        d in arb_poly(3),
    ) {
        prop_assume!(!d.is_zero());
        let f = RatFunc::new(a.clone(), d.clone()).unwrap();
        let g = RatFunc::new(b.clone(), d.clone()).unwrap();
        // Common-denominator addition agrees with the normalized sum.
        prop_assert_eq!(&f + &g, RatFunc::new(&a + &b, d.clone()).unwrap());
        // Subtraction inverts addition.
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        // A polynomial times 1/d recovers the fraction.
        let inv_d = RatFunc::new(Poly::one(), d).unwrap();
        prop_assert_eq!(&RatFunc::from_poly(a) * &inv_d, f);
    }

    #[test]
    fn residues_of_proper_fractions_sum_to_zero(
        roots in proptest::collection::btree_set(-12i64..=12, 2..=4),
        num in arb_poly(2),
    ) {
        // A proper fraction with simple poles has residues summing to zero
        // (no residue at infinity).
        let roots: Vec<ExactScalar> = roots.into_iter().map(|r| rat(r, 1)).collect();
        prop_assume!(num.degree().map_or(true, |deg| deg + 2 <= roots.len()));
        let mut den = Poly::one();
        for r in &roots {
            den = &den * &Poly::from_coeffs(vec![-r.clone(), rat(1, 1)]);
        }
        let f = RatFunc::new(num, den).unwrap();
        let mut total = rat(0, 1);
        for r in &roots {
            total += residue_simple(&f, r).unwrap().value();
        }
        prop_assert_eq!(total, rat(0, 1));
    }

    #[test]
    fn fixed_point_reals_track_exact_arithmetic(x in arb_rat(), y in arb_rat()) {
        const SCALE: u32 = 192;
        let xr = BigReal::from_rational(&x, SCALE);
        let yr = BigReal::from_rational(&y, SCALE);
        // Fixed-point addition at a common scale is exact, so the sum sees
        // only the two input roundings.
        let eps = BigReal::new(BigInt::from(8), SCALE);
        let sum_err = (&(&xr + &yr) - &BigReal::from_rational(&(x.clone() + y.clone()), SCALE)).abs();
        prop_assert!(sum_err <= eps);
        // Multiplication amplifies each input rounding by the other
        // operand's magnitude (≤ 200), so budget 2^12 ulps.
        let peps = BigReal::new(BigInt::from(1u64 << 12), SCALE);
        let prod_err = (&(&xr * &yr) - &BigReal::from_rational(&(x.clone() * y.clone()), SCALE)).abs();
        prop_assert!(prod_err <= peps);
        if y != rat(0, 1) {
            let quot_err = (&xr.div(&yr) - &BigReal::from_rational(&(x / y), SCALE)).abs();
            // The divisor's rounding is amplified by |x|/y² ≤ 200·40²,
            // so budget 2^20 ulps.
            let qeps = BigReal::new(BigInt::from(1u64 << 20), SCALE);
            prop_assert!(quot_err <= qeps);
        }
    }

    #[test]
    fn polynomial_real_evaluation_tracks_exact(a in arb_poly(6), x in (-40i64..=40, 1i64..=8)) {
        const SCALE: u32 = 256;
        let x = rat(x.0, x.1);
        let exact = a.eval(&x);
        let real = a.eval_real(&BigReal::from_rational(&x, SCALE));
        let err = (&real - &BigReal::from_rational(&exact, SCALE)).abs();
        // Horner at degree ≤ 5 with |x| ≤ 40: generous slack over the
        // worst-case accumulated rounding.
        let eps = BigReal::new(BigInt::from(1u64 << 40), SCALE);
        prop_assert!(err <= eps, "error {}", err.to_decimal_string(60));
    }

    #[test]
    fn sturm_counts_match_constructed_roots(
        roots in proptest::collection::btree_set(-10i64..=10, 1..=5),
        window in (-21i64..=21, -21i64..=21),
    ) {
        // p = prod (x - r) over distinct integer roots; boundaries at
        // half-integers so no root sits on a window edge.
        let mut p = Poly::one();
        for r in &roots {
            p = &p * &Poly::from_coeffs(vec![rat(-r, 1), rat(1, 1)]);
        }
        let total = sturm_count(&p, &Bound::NegInf, &Bound::PosInf).unwrap();
        prop_assert_eq!(total, roots.len());

        let (lo, hi) = (window.0.min(window.1), window.0.max(window.1));
        let (lo, hi) = (rat(2 * lo + 1, 2), rat(2 * hi + 1, 2));
        let inside = roots.iter().filter(|&&r| rat(r, 1) > lo && rat(r, 1) < hi).count();
        let counted =
            sturm_count(&p, &Bound::Finite(lo), &Bound::Finite(hi)).unwrap();
        prop_assert_eq!(counted, inside);
    }

    #[test]
    fn sqrt_squares_back(x in 1i64..=100_000) {
        const SCALE: u32 = 192;
        let v = BigReal::from_rational(&rat(x, 7), SCALE);
        let s = v.sqrt();
        let err = (&(&s * &s) - &v).abs();
        let eps = BigReal::new(BigInt::from(1u64 << 20), SCALE);
        prop_assert!(err <= eps);
    }
}
