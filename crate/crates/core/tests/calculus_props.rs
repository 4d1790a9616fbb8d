mod common;

use common::identities;
use engelkit::chartgeom::Chart;
use engelkit::cli::dsl::{parse, ChartFile, Mode};
use engelkit::sampling::Sampler;
use engelkit::symcore::{gcd, Coefficient, Polynomial, RationalFunction};
use proptest::prelude::*;

fn polys(seed: u64) -> (Polynomial, Polynomial, Polynomial) {
    let mut s = Sampler::new(seed);
    (
        s.poly(4, 4, 3, 4),
        s.poly(4, 4, 3, 4),
        s.nonzero_poly(4, 4, 2, 3),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let (a, b, c) = polys(seed);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn gcd_divides_and_absorbs_common_factor(seed in any::<u64>()) {
        let (a, b, c) = polys(seed);
        prop_assume!(!a.is_zero() || !b.is_zero());
        let (ac, bc) = (&a * &c, &b * &c);
        let g = gcd(&ac, &bc);
        prop_assert!(ac.div_exact(&g).is_some());
        prop_assert!(bc.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c.monic()).is_some());
    }

    #[test]
    fn rational_functions_normalize(seed in any::<u64>()) {
        let (a, b, c) = polys(seed);
        let f = RationalFunction::new(&a * &c, &b * &c);
        if b.is_zero() {
            prop_assert!(f.is_err());
        } else {
            let f = f.unwrap();
            let g = RationalFunction::new(a.clone(), b.clone()).unwrap();
            prop_assert_eq!(&f, &g);
            prop_assert!(f.denominator().leading_coefficient().is_one());
            prop_assert!(f.sub(&g).unwrap().is_zero());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>(), pt in prop::array::uniform4(-4i64..=4)) {
        let (a, b, _) = polys(seed);
        let p: Vec<Coefficient> = pt.iter().map(|&v| Coefficient::from_int(v)).collect();
        let (ea, eb) = (a.eval(&p).unwrap(), b.eval(&p).unwrap());
        prop_assert_eq!((&a * &b).eval(&p).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval(&p).unwrap(), &ea + &eb);
    }

    #[test]
    fn canonical_text_is_a_fixed_point(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let chart = Chart::with_params("rt", vec!["x".into(), "y".into(), "z".into()], vec!["t".into()]).unwrap();
        let mut file = ChartFile::new(&chart, Mode::Rational).unwrap();
        file.add_field("V", s.field(&chart, 3, 4)).unwrap();
        file.add_field("W", s.field(&chart, 2, 2)).unwrap();
        file.add_form("a", s.form(&chart, 1, 3, 3)).unwrap();
        let quotient = s.form(&chart, 2, 2, 2).scale(&RationalFunction::new(
            Polynomial::one(4),
            s.nonzero_poly(4, 4, 2, 2),
        ).unwrap()).unwrap();
        file.add_form("b", quotient).unwrap();
        file.add_dist("D", &["V", "W"]).unwrap();
        let text = file.to_text();
        let again = parse(&text).unwrap();
        prop_assert_eq!(again.to_text(), text);
        prop_assert_eq!(again.form("b").unwrap(), file.form("b").unwrap());
    }

    #[test]
    fn jacobi(seed in any::<u64>()) {
        prop_assert!(identities::jacobi(seed).unwrap());
    }

    #[test]
    fn d_squared_vanishes(seed in any::<u64>()) {
        prop_assert!(identities::d_squared(seed).unwrap());
    }

    #[test]
    fn cartan_formula(seed in any::<u64>()) {
        prop_assert!(identities::cartan(seed).unwrap());
    }

    #[test]
    fn magic_formula(seed in any::<u64>()) {
        prop_assert!(identities::magic_formula(seed).unwrap());
    }

    #[test]
    fn interior_is_a_derivation(seed in any::<u64>()) {
        prop_assert!(identities::interior_derivation(seed).unwrap());
    }

    #[test]
    fn pullback_naturality(seed in any::<u64>()) {
        prop_assert!(identities::naturality(seed).unwrap());
    }

    #[test]
    fn bracket_leibniz(seed in any::<u64>()) {
        prop_assert!(identities::bracket_leibniz(seed).unwrap());
    }
}
