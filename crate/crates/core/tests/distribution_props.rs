use engelkit::chartgeom::{Chart, VectorField};
use engelkit::distribution::{
    anticanonical_volume, check_engel, derived_flag, oneill_tensor, Distribution,
};
use engelkit::sampling::{engel_frame, Sampler};
use engelkit::symcore::RationalFunction;
use proptest::prelude::*;

fn engel_chart() -> engelkit::chartgeom::ChartRef {
    Chart::new("engel", &["x", "y", "z", "w"]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flag_ranks_are_monotone_and_bounded(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let c = engel_chart();
        let gens = (0..2).map(|_| s.field(&c, 2, 2)).collect();
        let d = Distribution::new(&c, gens).unwrap();
        let flag = derived_flag(&d, 4).unwrap();
        prop_assert!(flag.ranks.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(flag.ranks.iter().all(|&r| r <= c.dim()));
    }

    /// On perturbed model frames: L ⊂ D, the two kernel definitions agree,
    /// the O'Neill pairing L ⊗ D/L → E/D is nonzero and the witness point
    /// realizes the generic ranks.
    #[test]
    fn engel_flag_invariants(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let c = engel_chart();
        let (l, x) = engel_frame(&mut s, &c).unwrap();
        let d = Distribution::new(&c, vec![l, x.clone()]).unwrap();
        let (report, flag) = check_engel(&d).unwrap();
        prop_assume!(report.holds_generically);
        let flag = flag.unwrap();
        prop_assert_eq!(&report.details["kernel_in_d"], &serde_json::json!(true));
        prop_assert_eq!(&report.details["kernel_cross_check"], &serde_json::json!(true));
        let with_l = Distribution::new(&c, vec![d.generators()[0].clone(), x.clone(), flag.l.clone()]).unwrap();
        prop_assert_eq!(with_l.generic_rank().unwrap(), 2);
        // complete L to a basis of D with whichever generator is independent of it
        let other = d
            .generators()
            .iter()
            .find(|g| Distribution::new(&c, vec![flag.l.clone(), (*g).clone()]).unwrap().generic_rank().unwrap() == 2)
            .unwrap()
            .clone();
        let table = oneill_tensor(&Distribution::new(&c, vec![flag.l.clone(), other]).unwrap()).unwrap();
        prop_assert!(!table.is_zero());
        if let Some(w) = &report.witness {
            prop_assert_eq!(d.rank_at(w).unwrap(), 2);
            prop_assert_eq!(flag.e.rank_at(w).unwrap(), 3);
        }
    }

    #[test]
    fn anticanonical_scaling(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let c = engel_chart();
        let (l, x) = engel_frame(&mut s, &c).unwrap();
        let f = RationalFunction::from_poly(s.nonzero_poly(4, 4, 2, 3));
        let g = RationalFunction::from_poly(s.nonzero_poly(4, 4, 2, 3));
        let base = anticanonical_volume(&l, &x).unwrap();
        let scaled = anticanonical_volume(&l.scale(&f).unwrap(), &x.scale(&g).unwrap()).unwrap();
        let law = f.pow(3).unwrap().mul(&g.pow(4).unwrap()).unwrap().mul(&base).unwrap();
        prop_assert_eq!(scaled, law);
    }
}

#[test]
fn coordinate_frames_are_integrable() {
    let c = engel_chart();
    let d = Distribution::new(
        &c,
        vec![
            VectorField::coordinate(&c, 0),
            VectorField::coordinate(&c, 1),
        ],
    )
    .unwrap();
    let flag = derived_flag(&d, 4).unwrap();
    assert_eq!(flag.ranks, vec![2, 2]);
}
