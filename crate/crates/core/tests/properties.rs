use berkovich::analytic::{partial_fractions, BallMap, PolynomialMap, RationalMap};
use berkovich::newton::PiecewiseAffineMap;
use berkovich::{hensel_sqrt, rat, BerkovichPoint, FieldDescriptor, FieldElement, LogValue, Poly, Rational};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = FieldDescriptor> {
    prop_oneof![
        Just(FieldDescriptor::padic(2).unwrap()),
        Just(FieldDescriptor::padic(3).unwrap()),
        Just(FieldDescriptor::padic(5).unwrap()),
        Just(FieldDescriptor::laurent_q()),
        Just(FieldDescriptor::laurent_fp(3).unwrap()),
    ]
}

fn scalar(d: FieldDescriptor) -> impl Strategy<Value = FieldElement> {
    (-30i64..=30, prop::sample::select(vec![1i64, 2, 4, 5, 7]), -3i64..=3)
        .prop_map(move |(a, b, k)| d.ratio(a, b) * d.uniformizer_pow(k))
}

fn nonzero(d: FieldDescriptor) -> impl Strategy<Value = FieldElement> {
    scalar(d).prop_filter("nonzero", |x| !x.is_zero())
}

fn poly(d: FieldDescriptor) -> impl Strategy<Value = PolynomialMap> {
    (prop::collection::vec(scalar(d), 1..6), nonzero(d)).prop_map(|(mut c, lead)| {
        c.push(lead);
        PolynomialMap::from_coeffs(c).unwrap()
    })
}

fn ball(d: FieldDescriptor) -> impl Strategy<Value = BerkovichPoint> {
    (scalar(d), -4i64..=4).prop_map(|(a, t)| BerkovichPoint::ball(a, rat(t, 1)))
}

fn case() -> impl Strategy<Value = (PolynomialMap, BerkovichPoint, FieldElement)> {
    field().prop_flat_map(|d| (poly(d), ball(d), scalar(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn valuation_is_ultrametric((a, b) in field().prop_flat_map(|d| (nonzero(d), nonzero(d)))) {
        prop_assert_eq!((&a * &b).valuation(), a.valuation() + b.valuation());
        prop_assert!((&a + &b).valuation() >= a.valuation().min_of(b.valuation()));
        if a.val() != b.val() {
            prop_assert_eq!((&a + &b).valuation(), a.valuation().min_of(b.valuation()));
        }
    }

    #[test]
    fn inverse_round_trips(a in field().prop_flat_map(nonzero)) {
        let inv = a.try_inv().unwrap();
        prop_assert_eq!(&a * &inv, a.descriptor().one());
    }

    #[test]
    fn join_is_the_least_common_ancestor((x, y) in field().prop_flat_map(|d| (ball(d), ball(d)))) {
        let j = x.join(&y);
        prop_assert_eq!(&j, &y.join(&x));
        prop_assert!(x.leq(&j) && y.leq(&j));
        prop_assert_eq!(x.hyperbolic_distance(&y).unwrap(),
            x.hyperbolic_distance(&j).unwrap() + j.hyperbolic_distance(&y).unwrap());
    }

    #[test]
    fn images_respect_order((f, x, off) in case()) {
        let y = f.image_of_ball(&x).unwrap();
        let a = x.center().unwrap();
        // A rigid point of the ball lands in the image.
        let z = a + &(off * x.descriptor().unwrap().uniformizer_pow(8));
        prop_assert!(BerkovichPoint::rigid(f.eval(&z)).leq(&y));
        // Growing the ball grows the image.
        let up = x.ancestor(x.tau() + LogValue::int(1));
        prop_assert!(y.leq(&f.image_of_ball(&up).unwrap()));
        let deg = f.local_degree(&x).unwrap();
        prop_assert!(deg >= 1 && deg <= f.degree());
    }

    #[test]
    fn reduction_degree_is_local_degree((f, x, _) in case()) {
        let r = f.reduction_map(&x).unwrap();
        prop_assert_eq!(r.degree(), f.local_degree(&x).unwrap());
        prop_assert!(r.is_polynomial());
    }

    #[test]
    fn sparse_shift_matches_dense((f, _, a) in case()) {
        let p = f.poly();
        prop_assert_eq!(p.taylor_shift_sparse(&a), p.taylor_shift(&a));
        prop_assert_eq!(p.taylor_shift(&a).eval(&a.descriptor().zero()), p.eval(&a));
    }

    #[test]
    fn square_roots_lift(y in (2u32..6).prop_flat_map(|p| {
        let d = FieldDescriptor::padic([2, 3, 5, 7][(p - 2) as usize % 4]).unwrap();
        nonzero(d)
    })) {
        let x = &y * &y;
        let prec = LogValue::int(x.val().unwrap() + 20);
        let r = hensel_sqrt(&x, &prec).unwrap();
        prop_assert!((&r * &r - &x).valuation() >= prec);
    }

    #[test]
    fn envelopes_are_convex(lines in prop::collection::vec((0i64..9, -20i64..20), 1..8), lo in -5i64..0, w in 1i64..10) {
        let lines: Vec<(i64, Rational)> = lines.into_iter().map(|(n, b)| (n, rat(b, 1))).collect();
        let phi = PiecewiseAffineMap::upper_envelope(&lines, rat(lo, 1), rat(lo + w, 1)).unwrap();
        prop_assert!(phi.is_convex());
        for k in 0..=4 * w {
            let t = rat(lo, 1) + rat(k, 4);
            let best = lines.iter().map(|(n, b)| rat(*n, 1) * &t + b).max().unwrap();
            prop_assert_eq!(phi.eval(&t).unwrap(), best);
        }
    }
}

proptest! {
    // Exact gcds over Laurent fields get expensive; fewer cases suffice here.
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn partial_fractions_recombine((num, p1, p2) in field().prop_flat_map(|d| (poly(d), scalar(d), scalar(d)))) {
        prop_assume!(p1 != p2);
        let d = p1.descriptor();
        let den = &Poly::linear(-&p1, d.one()) * &Poly::linear(-&p2, d.one());
        let num = num.poly().clone();
        prop_assume!(!num.eval(&p1).is_zero() && !num.eval(&p2).is_zero());
        let r = RationalMap::new(num, den).unwrap();
        let pf = partial_fractions(&r, &[p1, p2]).unwrap();
        prop_assert!(pf.matches(&r));
    }
}

#[test]
fn gauss_point_is_fixed_by_good_reduction() {
    let d = FieldDescriptor::padic(5).unwrap();
    let f = PolynomialMap::from_coeffs(vec![d.int(1), d.int(5), d.int(2), d.int(3)]).unwrap();
    let g = BerkovichPoint::gauss(d);
    assert_eq!(f.image_of_ball(&g).unwrap(), g);
    assert_eq!(f.local_degree(&g).unwrap(), 3);
}
