use std::f64::consts::PI;

use pierce4::geom::{AffineMap, ConvexPolygon, Direction, Line, Parallelogram, Vec2};
use pierce4::oracle::{exhaustive_interval_piercing, gen_body, gen_instance, greedy_interval_piercing, BodySource, GenConfig};
use pierce4::piercing::{colorful_interval_pierce, four_cover, region_r};
use pierce4::transversal::{meets_all, slack, transversal_in_direction};
use pierce4::{find_homothetic_pair, pierce, verify_approx, verify_certificate, ApproxConfig, Interval, PierceConfig};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Vec2> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| Vec2::new(x, y))
}

/// Convex polygons as hulls of random point clouds.
fn polygon() -> impl Strategy<Value = ConvexPolygon> {
    prop::collection::vec(point(), 3..30).prop_filter_map("degenerate hull", |pts| ConvexPolygon::hull(&pts).ok())
}

fn direction() -> impl Strategy<Value = Direction> {
    (0.0..PI).prop_map(|a| Direction::from_angle(a).unwrap())
}

fn named_body() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["square", "triangle", "ngon5", "ngon7", "disk256", "reuleaux192", "random20:9"])
        .prop_map(String::from)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_polygons_are_strictly_convex_ccw(k in polygon()) {
        let n = k.len();
        for i in 0..n {
            let (a, b, c) = (k.vertex(i), k.vertex(i + 1), k.vertex(i + 2));
            prop_assert!((b - a).cross(c - b) > 0.0);
        }
        prop_assert_eq!(ConvexPolygon::new(k.vertices().to_vec()).unwrap(), k.clone());
        let mut rev = k.vertices().to_vec();
        rev.reverse();
        prop_assert_eq!(ConvexPolygon::new(rev).unwrap().area(), k.area());
    }

    #[test]
    fn width_is_direction_symmetric(k in polygon(), u in direction()) {
        let n = u.normal();
        prop_assert!((k.width(n) - k.width(-n)).abs() <= 1e-12 * k.diameter());
        prop_assert!(k.width(n) <= k.diameter() * (1.0 + 1e-12));
    }

    #[test]
    fn difference_body_decides_intersection(k in polygon(), x in point(), y in point()) {
        let d = k.difference_body();
        let a = k.translated(x);
        let b = k.translated(y);
        let tol = 1e-9 * k.diameter();
        let sd = d.signed_distance(x - y);
        if sd < -tol {
            prop_assert!(a.intersects(&b, tol));
        } else if sd > tol {
            prop_assert!(!a.intersects(&b, 0.0));
        }
        // central symmetry
        prop_assert!((d.signed_distance(y - x) - sd).abs() <= 1e-9 * d.diameter());
    }

    #[test]
    fn approximation_holds_for_random_bodies(k in polygon(), u in direction()) {
        let r = find_homothetic_pair(&k, u, &ApproxConfig::default()).unwrap();
        prop_assert!(r.ratio <= 2.0 + 1e-3);
        prop_assert!(r.residual <= 1e-6);
        prop_assert!(verify_approx(&k, &r, 1e-9, 1e-3).passed());
        prop_assert!(Direction::from_vec(r.p.e1).unwrap().angle_to(u) <= 1e-9);
        prop_assert_eq!(r.q.e1, r.p.e1 * 2.0);
        prop_assert_eq!(r.q.e2, r.p.e2 * 2.0);
    }

    #[test]
    fn ratio_bound_is_affinely_invariant(
        name in named_body(),
        m in prop::array::uniform4(-3.0..3.0f64),
        t in point(),
        u in direction(),
    ) {
        let map = AffineMap::new([[m[0], m[1]], [m[2], m[3]]], t);
        prop_assume!(map.as_ref().is_ok_and(|a| a.det().abs() > 0.05));
        let map = map.unwrap();
        let k = gen_body(&name).unwrap();
        let image = k.transformed(&map).unwrap();
        let dir = Direction::from_vec(map.linear(u.unit())).unwrap();
        let r = find_homothetic_pair(&image, dir, &ApproxConfig::default()).unwrap();
        prop_assert!(r.ratio <= 2.0 + 1e-3, "ratio {}", r.ratio);
        prop_assert!(verify_approx(&image, &r, 1e-9, 1e-3).passed());
    }

    #[test]
    fn greedy_interval_piercing_is_minimum(raw in prop::collection::vec((0.0..10.0f64, 0.0..3.0f64), 0..10)) {
        let ivs: Vec<Interval> = raw.iter().map(|&(lo, w)| Interval::new(lo, lo + w).unwrap()).collect();
        let pts = greedy_interval_piercing(&ivs);
        prop_assert_eq!(pts.len(), exhaustive_interval_piercing(&ivs));
        prop_assert!(ivs.iter().all(|i| pts.iter().any(|&p| i.contains(p))));
    }

    #[test]
    fn colorful_point_lies_outside_excluded_family(
        common in 0.0..10.0f64,
        raw in prop::collection::vec((0usize..4, 0.0..5.0f64, 0.0..5.0f64), 2..16),
    ) {
        // every interval contains `common`, except the separated pair added below
        let mut fams: Vec<Vec<Interval>> = vec![Vec::new(); 4];
        for &(f, a, b) in &raw {
            fams[f].push(Interval::new(common - a, common + b).unwrap());
        }
        fams.retain(|f| !f.is_empty());
        prop_assume!(fams.len() >= 2);
        let (j, t) = colorful_interval_pierce(&fams).unwrap();
        for (f, fam) in fams.iter().enumerate() {
            if f != j {
                prop_assert!(fam.iter().all(|i| i.lo <= t && t <= i.hi));
            }
        }
    }

    #[test]
    fn region_matches_grid_membership(
        a in 0.0..PI, da in 0.2..(PI - 0.2), la in 0.3..3.0f64, lb in 0.3..3.0f64,
        anchor in point(), p1 in point(), p2 in point(),
    ) {
        let b = a + da;
        let q = Parallelogram::new(anchor, Vec2::new(a.cos(), a.sin()) * la, Vec2::new(b.cos(), b.sin()) * lb).unwrap();
        let ell = Line::through(p1, Direction::from_vec(q.e1).unwrap());
        let ell2 = Line::through(p2, Direction::from_vec(q.e2).unwrap());
        let r = region_r(&q, &ell, &ell2).unwrap();
        let qp = q.to_polygon().unwrap();
        let c = r.center();
        let span = 1.5 * (la + lb);
        let tol = 1e-9 * span;
        for ix in 0..50 {
            for iy in 0..50 {
                let x = c + Vec2::new(span * (ix as f64 / 49.0 - 0.5), span * (iy as f64 / 49.0 - 0.5));
                let direct = ell.distance_to_points(qp.vertices(), x) <= tol && ell2.distance_to_points(qp.vertices(), x) <= tol;
                let inside = r.contains_point(x, 1e-7 * span);
                let strictly = r.contains_point(x, -1e-7 * span);
                prop_assert!(!strictly || direct);
                prop_assert!(!direct || inside);
            }
        }
    }

    #[test]
    fn cover_contains_region_vertices(
        a in 0.0..PI, da in 0.2..(PI - 0.2), la in 0.3..3.0f64, lb in 0.3..3.0f64,
        rho in 1.0..=2.0f64, pa in point(), ra in point(),
    ) {
        let b = a + da;
        let p = Parallelogram::new(pa, Vec2::new(a.cos(), a.sin()) * la, Vec2::new(b.cos(), b.sin()) * lb).unwrap();
        let region = Parallelogram { anchor: ra, e1: p.e1 * -rho, e2: p.e2 * -rho };
        let pts = four_cover(&region, &p).unwrap();
        let tol = 1e-9 * (la + lb);
        // each quarter's vertices lie in the matching copy of −P
        for (k, &(d1, d2)) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)].iter().enumerate() {
            for (s, t) in [(0.0, 0.0), (0.5, 0.0), (0.0, 0.5), (0.5, 0.5)] {
                let x = region.anchor + region.e1 * (0.5 * d1 + s) + region.e2 * (0.5 * d2 + t);
                prop_assert!(p.contains_point(pts[k] - x, tol));
            }
        }
    }

    #[test]
    fn generated_instances_satisfy_hypothesis(
        seed in any::<u64>(),
        body in named_body(),
        sizes in prop::collection::vec(1usize..6, 2..5),
        spread in 0.0..1.5f64,
    ) {
        let cfg = GenConfig { seed, body: BodySource::Named(body), sizes, spread, ..GenConfig::default() };
        let inst = gen_instance(&cfg).unwrap();
        inst.validate().unwrap();
        // line transversals in every direction when the flattened union is pairwise intersecting
        let d = inst.body.difference_body();
        let tol = inst.tolerance();
        let all: Vec<Vec2> = inst.members().map(|(_, _, x)| x).collect();
        let pairwise = all.iter().all(|&x| all.iter().all(|&y| d.contains_point(x - y, tol)));
        if pairwise {
            for k in 0..36 {
                let u = Direction::from_angle(PI * k as f64 / 36.0).unwrap();
                let line = transversal_in_direction(&inst, u);
                prop_assert!(line.is_some());
                prop_assert!(meets_all(&inst, &line.unwrap(), tol));
                prop_assert!(slack(&inst, u) >= -tol);
            }
        }
    }

    #[test]
    fn pierce_is_sound_and_monotone(
        seed in any::<u64>(),
        body in named_body(),
        sizes in prop::collection::vec(1usize..6, 2..5),
        spread in 0.0..1.5f64,
    ) {
        let cfg = GenConfig { seed, body: BodySource::Named(body), sizes, spread, ..GenConfig::default() };
        let inst = gen_instance(&cfg).unwrap();
        let cert = pierce(&inst, &PierceConfig::default()).unwrap();
        prop_assert!(cert.points.len() <= cert.branch.max_points());
        prop_assert!(verify_certificate(&inst, &cert).passed());
        let mut grown = inst.clone();
        let j = cert.excluded_family;
        prop_assert!(j < grown.families.len());
        let far = grown.families[j][0] + Vec2::new(1e3, -1e3);
        grown.families[j].push(far);
        prop_assert!(verify_certificate(&grown, &cert).passed());
    }
}
