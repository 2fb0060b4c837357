use proptest::prelude::*;
use siamese_flex::atlas::jacobian;
use siamese_flex::geometry::{
    aperture, base_length_bounds, domain_membership, edge_lengths, height_max, system_residual, FaceParams, HeightsPair,
};
use siamese_flex::mesh::{build_mesh, export_obj, parse_obj};
use siamese_flex::numfmt::sig17;
use siamese_flex::solver::solve_heights;

fn point_in_u() -> impl Strategy<Value = (u32, f64, f64)> {
    (3u32..=12, 1e-6..1.0f64, 1e-6..1.0f64).prop_filter("inside U", |&(n, x, y)| domain_membership(n, x, y))
}

fn plan() -> impl Strategy<Value = FaceParams> {
    (3u32..=12, 0.0..1.0f64, 0.0..1.0f64).prop_filter_map("strict base lengths", |(n, a, b)| {
        let (lo, hi) = base_length_bounds(n);
        FaceParams::new(n, lo + (hi - lo) * a, lo + (hi - lo) * b).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn edge_lengths_swap((n, x, y) in point_in_u()) {
        let (l, lt) = edge_lengths(n, x, y).unwrap();
        let (sl, slt) = edge_lengths(n, y, x).unwrap();
        prop_assert!((l - slt).abs() <= 1e-14 && (lt - sl).abs() <= 1e-14);
    }

    #[test]
    fn heights_are_recovered((n, x, y) in point_in_u()) {
        let (l, lt) = edge_lengths(n, x, y).unwrap();
        let plan = FaceParams::new(n, l, lt).unwrap();
        let (r1, r2) = system_residual(&plan, &HeightsPair::new(x, y)).unwrap();
        prop_assert!(r1.abs() < 1e-12 && r2.abs() < 1e-12);
    }

    #[test]
    fn domain_lies_in_unit_ball((_n, x, y) in point_in_u()) {
        prop_assert!(x * x + y * y < 1.0);
    }

    #[test]
    fn aperture_decreases(n in 3u32..=12, a in 0.0..1.0f64, s in 0.0..1.0f64, t in 0.0..1.0f64) {
        let (lo, hi) = base_length_bounds(n);
        let l = lo + (hi - lo) * (0.001 + 0.998 * a);
        let top = height_max(n, l).unwrap();
        let (p, q) = (top * s.min(t), top * s.max(t));
        prop_assume!(q - p > 1e-9);
        prop_assert!(aperture(n, l, p).unwrap() > aperture(n, l, q).unwrap());
    }

    #[test]
    fn jacobian_swaps((n, x, y) in point_in_u()) {
        let (Ok(j), Ok(k)) = (jacobian(n, x, y), jacobian(n, y, x)) else {
            return Ok(());
        };
        let s = j.swapped();
        let scale = 1.0 + s.dl_dx.abs().max(s.dlt_dxt.abs());
        for (a, b) in [(s.dl_dx, k.dl_dx), (s.dl_dxt, k.dl_dxt), (s.dlt_dx, k.dlt_dx), (s.dlt_dxt, k.dlt_dxt)] {
            prop_assert!((a - b).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn solutions_swap(plan in plan()) {
        let a = solve_heights(&plan).unwrap();
        let b = solve_heights(&plan.swapped()).unwrap();
        prop_assert_eq!(a.regime, b.regime);
        prop_assert!(a.regime <= 3);
        for s in &a.solutions {
            prop_assert!(b.solutions.iter().any(|t| (s.x() - t.x_tilde()).abs() < 1e-9
                && (s.x_tilde() - t.x()).abs() < 1e-9));
        }
    }

    #[test]
    fn obj_round_trips((n, x, y) in point_in_u()) {
        let (l, lt) = edge_lengths(n, x, y).unwrap();
        let set = solve_heights(&FaceParams::new(n, l, lt).unwrap()).unwrap();
        for c in &set.solutions {
            let mesh = build_mesh(c).unwrap();
            prop_assert_eq!(mesh.vertex_count(), 2 * n as usize + 2);
            prop_assert_eq!(mesh.edge_count(), 6 * n as usize);
            let back = parse_obj(&export_obj(&mesh).unwrap()).unwrap();
            prop_assert_eq!(&back.vertices, &mesh.vertices);
            prop_assert_eq!(&back.faces, &mesh.faces);
        }
    }

    #[test]
    fn sig17_round_trips(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
        prop_assert_eq!(sig17(v).parse::<f64>().unwrap(), v);
    }
}
