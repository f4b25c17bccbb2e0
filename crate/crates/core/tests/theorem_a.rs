use lgms_core::build_variety;
use lgms_core::critsolve::SolveOptions;
use lgms_core::hmscheck::{
    arg_divisor, certify_collection, order_collection, real_cone_weight, verify_theorem_a, ArgRounding, CheckOptions,
};
use lgms_core::laurent::{default_deformation, lg_potential, lg_system, Orientation};
use lgms_core::monodromy::{loop_for, track, TrackOptions};
use lgms_core::PicClass;

#[test]
fn lifted_displacement_is_minus_the_real_cone_weight() {
    let opts = CheckOptions::default();
    for name in ["p2", "p1xp1", "bl3"] {
        let x = build_variety(name).unwrap();
        let report = verify_theorem_a(&x, 0.0, &opts).unwrap();
        for row in &report.rows {
            let d = arg_divisor(&x, &report.crit.points[row.z_index], &opts).unwrap();
            let w = real_cone_weight(&x, &d, row.sigma).unwrap();
            let disp = row.path.displacement();
            for (a, b) in disp.iter().zip(&w) {
                assert!((a + b).abs() < 0.05, "{name} z{} σ{}: {disp:?} vs {w:?}", row.z_index, row.sigma);
            }
        }
    }
}

#[test]
fn catalog_surfaces_pass_at_their_default_deformation() {
    for name in ["p2", "p1xp1", "bl1", "bl3", "projbundle:s=1,a=1"] {
        let x = build_variety(name).unwrap();
        let report = verify_theorem_a(&x, default_deformation(&x), &CheckOptions::default()).unwrap();
        let n = x.normalized_volume() as usize;
        assert_eq!(report.rows.len(), n * x.num_cones(), "{name}");
        assert!(report.pass(), "{name}: {:?}", report.rows.iter().find(|r| !r.pass).map(|r| &r.failure));
    }
}

#[test]
fn bl1_exceptional_classes() {
    let x = build_variety("bl1").unwrap();
    let report = verify_theorem_a(&x, 8.0, &CheckOptions::default()).unwrap();
    let mut ew = report.ew.clone();
    ew.sort();
    let mut expected: Vec<PicClass> =
        [[0, 0], [1, -1], [1, 0], [2, -1]].iter().map(|c| PicClass::new(c.to_vec())).collect();
    expected.sort();
    assert_eq!(ew, expected);
}

#[test]
fn loop_windings_vanish_on_the_target_cone() {
    let x = build_variety("bl1").unwrap();
    let opts = CheckOptions::default();
    let report = verify_theorem_a(&x, 8.0, &opts).unwrap();
    for row in &report.rows {
        let spec = loop_for(&x, &report.crit, row.z_index, row.sigma, &row.class).unwrap();
        for &ray in &x.max_cones[row.sigma] {
            assert_eq!(spec.windings[ray], 0, "σ{} ray {ray}", row.sigma);
        }
        assert_eq!(spec.windings, row.windings);
    }
}

#[test]
fn positive_orientation_sends_loops_to_the_conjugate_point() {
    let x = build_variety("p2").unwrap();
    let pos = CheckOptions { orientation: Orientation::Positive, ..CheckOptions::default() };
    let neg = verify_theorem_a(&x, 0.0, &CheckOptions::default()).unwrap();
    let flipped = verify_theorem_a(&x, 0.0, &pos).unwrap();
    assert!(neg.pass());
    assert!(!flipped.pass());
    let base = flipped.crit.base_index;
    for row in flipped.rows.iter().filter(|r| r.z_index != base) {
        let z = flipped.crit.points[row.z_index][0];
        let end = flipped.crit.points[row.end_index][0];
        assert!((end - z.conj()).norm() < 1e-9, "z{} σ{}", row.z_index, row.sigma);
    }
}

#[test]
fn tracking_a_loop_twice_refined_agrees() {
    let x = build_variety("bl3").unwrap();
    let sys = lg_system(&lg_potential(&x));
    let crit = lgms_core::critsolve::solve_critical(&x, &sys, 0.0, &[], &SolveOptions::default()).unwrap();
    let opts = CheckOptions::default();
    let ew = lgms_core::hmscheck::critical_classes(&x, 0.0, &opts).unwrap().2;
    let coarse = TrackOptions::default();
    let fine = TrackOptions { max_step: 0.01, ..TrackOptions::default() };
    for (i, class) in ew.iter().enumerate() {
        let spec = loop_for(&x, &crit, i, 0, class).unwrap();
        let a = track(&sys, &spec, &crit, &coarse).unwrap();
        let b = track(&sys, &spec, &crit, &fine).unwrap();
        assert_eq!(a.end_index, b.end_index);
        for (u, v) in a.displacement().iter().zip(b.displacement()) {
            assert!((u - v).abs() < 1e-6);
        }
    }
}

mod below_collision_wall {
    use super::*;

    fn raw() -> CheckOptions {
        CheckOptions { rounding: ArgRounding::Raw, ..CheckOptions::default() }
    }

    #[test]
    fn bl2_map_is_injective_and_gives_a_strong_collection() {
        let x = build_variety("bl2").unwrap();
        let report = verify_theorem_a(&x, 1.5, &raw()).unwrap();
        let order = order_collection(&x, &report.ew).unwrap();
        let expected: Vec<PicClass> =
            [[0, 0, 0], [1, -1, 0], [1, 0, -1], [1, 0, 0], [2, -1, -1]].iter().map(|c| PicClass::new(c.to_vec())).collect();
        let mut sorted = order.clone();
        sorted.sort();
        let mut want = expected.clone();
        want.sort();
        assert_eq!(sorted, want);
        let cert = certify_collection(&x, &order).unwrap();
        assert!(cert.verdicts.strong && cert.verdicts.rank_full);
    }

    #[test]
    fn bl2_weights_match_for_all_pairs() {
        let x = build_variety("bl2").unwrap();
        for t in [0.0, 1.0, 1.5] {
            let report = verify_theorem_a(&x, t, &raw()).unwrap();
            assert_eq!(report.rows.len(), 25);
            assert!(report.pass(), "t = {t}: {:?}", report.rows.iter().find(|r| !r.pass).map(|r| &r.failure));
        }
    }

    #[test]
    fn bl2_above_the_wall_collapses_two_classes() {
        let x = build_variety("bl2").unwrap();
        let err = verify_theorem_a(&x, 8.0, &CheckOptions::default())
            .map(|r| order_collection(&x, &r.ew).is_err())
            .unwrap();
        assert!(err);
    }
}
