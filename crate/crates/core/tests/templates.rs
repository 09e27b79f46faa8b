use floordiag_core::templates::*;

#[test]
fn templates_satisfy_the_length_bound() {
    let all = enumerate_templates(2, 3);
    assert!(!all.is_empty());
    for t in &all {
        assert!(t.codegree() + t.genus() + 1 >= t.length() as u64, "{t}");
        assert!(t.source_count() == 0 || t.sink_count() == 0, "{t}");
    }
}

#[test]
fn census_by_definition() {
    let census = template_census(1, 2);
    let expected = [((0, 0), 1), ((0, 1), 2), ((0, 2), 4), ((1, 0), 1), ((1, 1), 5), ((1, 2), 16)];
    for (key, count) in expected {
        assert_eq!(census.get(&key).copied().unwrap_or(0), count, "{key:?}");
    }
}

#[test]
fn the_two_extra_genus_one_templates() {
    let one_one: Vec<String> = enumerate_templates(1, 1)
        .into_iter()
        .filter(|t| t.genus() == 1 && t.codegree() == 1)
        .map(|t| t.to_string())
        .collect();
    assert_eq!(one_one.len(), 5);
    let t = Template::new(vec![1, 2], vec![], vec![0, 1, 0], vec![0, 0, 0]).unwrap();
    assert_eq!((t.genus(), t.codegree()), (1, 1));
    assert!(one_one.contains(&t.to_string()));
    let mirror = Template::new(vec![2, 1], vec![], vec![0, 0, 0], vec![0, 1, 0]).unwrap();
    assert_eq!((mirror.genus(), mirror.codegree()), (1, 1));
    assert!(one_one.contains(&mirror.to_string()));
}

#[test]
fn capping_trees_satisfy_the_codegree_bound() {
    for a in 3..=7 {
        for n in 1..=3 {
            for t in enumerate_capping_trees(a, n, i64::MAX) {
                assert!(t.codegree() >= n as i64 * (a as i64 - 2), "a={a} n={n}");
                assert!(t.root_degree() >= 2);
            }
        }
    }
}

#[test]
fn small_capping_trees() {
    let t = enumerate_capping_trees(4, 1, 2);
    assert_eq!(t.len(), 1);
    let mut w: Vec<u64> = t[0].elevators().iter().map(|e| e.weight).collect();
    w.sort_unstable_by(|x, y| y.cmp(x));
    assert_eq!(w, vec![2, 1, 1]);
    assert_eq!(enumerate_capping_trees(3, 2, 2).len(), 1);
    assert!(enumerate_capping_trees(5, 1, 2).is_empty());
    assert!(enumerate_capping_trees(3, 1, 0).is_empty());
}

#[test]
fn bijection_inside_the_region() {
    for (a, b, n, g, i) in [(4, 3, 1, 0, 1), (4, 3, 1, 1, 1), (3, 2, 0, 0, 1), (5, 3, 1, 1, 2)] {
        let r = verify_bijection(a, b, n, g, i).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.enumerated, r.reconstructed_classes);
    }
}

#[test]
fn bijection_guard_and_unguarded_comparison() {
    assert!(verify_bijection(4, 2, 1, 0, 2).is_err());
    let r = compare_reconstruction(4, 2, 1, 0, 2).unwrap();
    assert!(r.passed, "{r:?}");
    assert_eq!(r.enumerated, 5);
}

/// With `a <= i + g + 1` some diagrams need a single template carrying both
/// sources and sinks, which no admissible collection provides.
#[test]
fn bijection_fails_for_short_polygons() {
    let r = verify_bijection(4, 3, 2, 1, 2).unwrap();
    assert!(!r.passed);
    assert_eq!(r.missing.len(), 11);
    assert!(r.extra.is_empty());
}
