use cvinfo_web::demo::{bound_curve, entropy_samples, joint_steering, region_flags, IN_D, IN_H, IN_M};

#[test]
fn region_flags_are_nested() {
    let flags = region_flags(2.0, 6.0, 40).unwrap();
    assert_eq!(flags.len(), 1600);
    for f in &flags {
        if f & IN_D != 0 {
            assert!(f & IN_M != 0);
        }
        if f & IN_M != 0 {
            assert!(f & IN_H != 0);
        }
    }
    // the origin corner (a = b = 1, c = 2) lies outside every region
    assert_eq!(flags[0], 0);
    assert!(flags.contains(&(IN_H | IN_M | IN_D)));
}

#[test]
fn joint_steering_matches_library() {
    let g = joint_steering(0.5, 0.5).unwrap();
    assert_eq!(g.len(), 3);
    assert!((g[0] - g[1]).abs() < 1e-10);
    assert!(g[0] > 0.0 && g[2] >= -1e-8);
    let g = joint_steering(0.0, 1.0).unwrap();
    assert!(g[0].abs() < 1e-12 && g[1].abs() < 1e-12);
}

#[test]
fn samples_sit_between_bound_curves() {
    let n = 3;
    let pts = entropy_samples(n, 50, 7, 4.0).unwrap();
    assert_eq!(pts.len(), 100);
    for mh in pts.chunks_exact(2) {
        let lo = cvinfo::f_bound(1, mh[0]).unwrap();
        let hi = cvinfo::f_bound(n, mh[0]).unwrap();
        assert!(lo - 1e-9 <= mh[1] && mh[1] <= hi + 1e-9, "{mh:?}");
    }
    assert_eq!(entropy_samples(n, 5, 7, 4.0).unwrap(), pts[..10].to_vec());
}

#[test]
fn bound_curve_starts_at_origin_and_rises() {
    let c = bound_curve(2, 5.0, 11).unwrap();
    assert_eq!(c.len(), 22);
    assert_eq!((c[0], c[1]), (0.0, 0.0));
    assert_eq!(c[20], 5.0);
    assert!(c.chunks_exact(2).zip(c.chunks_exact(2).skip(1)).all(|(p, q)| q[1] > p[1]));
    assert!(bound_curve(0, 5.0, 11).is_err());
}
