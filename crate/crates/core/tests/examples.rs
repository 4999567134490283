use pierce4::oracle::{brute_force_piercing, gen_body, gen_instance, BodySource, GenConfig};
use pierce4::{pierce, verify_certificate, Branch, ConvexPolygon, Instance, PierceConfig, Vec2};

#[test]
fn coincident_single_translates() {
    let inst = Instance::new(gen_body("ngon6").unwrap(), vec![vec![Vec2::new(3.0, -1.0)]; 2]).unwrap();
    let cert = pierce(&inst, &PierceConfig::default()).unwrap();
    assert!((1..=4).contains(&cert.points.len()));
    assert!(verify_certificate(&inst, &cert).passed());
}

#[test]
fn disk_three_families_default_generator() {
    for seed in 0..20 {
        let inst = gen_instance(&GenConfig { seed, ..GenConfig::default() }).unwrap();
        let cert = pierce(&inst, &PierceConfig::default()).unwrap();
        assert!(cert.points.len() <= 4);
        assert!(verify_certificate(&inst, &cert).passed(), "seed {seed}");
    }
}

#[test]
fn triangle_with_spread_family() {
    // F1 strung along the x-axis far enough to need several points, F2 one
    // translate at the origin that meets all of them
    let k = gen_body("triangle").unwrap();
    let f1: Vec<Vec2> = (0..8).map(|i| Vec2::new(-0.95 + 0.27 * i as f64, -0.02 * i as f64)).collect();
    let inst = Instance::new(k.clone(), vec![f1.clone(), vec![Vec2::ZERO]]).unwrap();
    let f1_polys: Vec<ConvexPolygon> = f1.iter().map(|&x| k.translated(x)).collect();
    let alone = brute_force_piercing(&f1_polys, 4).unwrap().map_or(5, |(k, _)| k);
    assert!(alone >= 2);
    let cert = pierce(&inst, &PierceConfig::default()).unwrap();
    assert!(verify_certificate(&inst, &cert).passed());
    assert!(cert.points.len() <= 4);
    if cert.excluded_family == 0 {
        assert!(cert.assignment.iter().all(|&(f, _, _)| f == 1));
    }
}

#[test]
fn spread_instances_still_certified() {
    for seed in 0..30 {
        let cfg = GenConfig {
            seed,
            body: BodySource::Named("square".into()),
            sizes: vec![8, 8, 8, 8, 8],
            spread: 2.0,
            ..GenConfig::default()
        };
        let inst = gen_instance(&cfg).unwrap();
        let cert = pierce(&inst, &PierceConfig::default()).unwrap();
        let limit = if cert.branch == Branch::TransversalFourPoints { 4 } else { 3 };
        assert!(cert.points.len() <= limit);
        assert!(verify_certificate(&inst, &cert).passed());
    }
}
