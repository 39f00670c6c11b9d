use super::oracle::WalkOracle;
use super::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dc() -> OneGraph {
    OneGraph::make_one_graph(OneFamily::DiamondChain)
}

fn r(s: &str) -> NodeRef {
    s.parse().unwrap()
}

fn w(a: u64, b: u64) -> Ordinal {
    Ordinal::new(a, b)
}

#[test]
fn diamond_chain_structure() {
    let g = dc();
    let secs: Vec<SectionId> = g.sections().take(4).collect();
    assert_eq!(secs, vec![SectionId::Chain(0), SectionId::Chain(1), SectionId::Chain(2), SectionId::Chain(3)]);
    let x2 = g.one_node(OneNodeId::Index(2)).unwrap();
    let names: Vec<String> = x2.tips.iter().map(|t| t.to_string()).collect();
    assert_eq!(names, vec!["RightRay(1)", "LeftRay(2)"]);
    assert_eq!(x2.embedded, None);
    assert_eq!(g.one_node(OneNodeId::Index(0)).unwrap().tips.len(), 1);
    assert!(g.is_boundary(OneNodeId::Index(3)));
    assert!(!g.is_boundary(OneNodeId::Index(0)));
    assert!(g.is_locally_1_finite());
    assert!(g.one_adjacent(OneNodeId::Index(1), OneNodeId::Index(2)));
    assert!(!g.one_adjacent(OneNodeId::Index(1), OneNodeId::Index(3)));
}

#[test]
fn ladder_of_endless_paths_converts_every_node() {
    let g = OneGraph::make_one_graph(OneFamily::LadderOfEndlessPaths);
    for x in g.one_nodes().take(30) {
        assert!(g.is_boundary(x), "{x}");
        assert!(g.one_node(x).unwrap().embedded.is_none());
    }
    assert!(g.is_locally_1_finite());
    assert!(!g.has_finite_boundary_adjacency());
}

#[test]
fn one_path_interior_nodes_are_boundary() {
    let g = OneGraph::make_one_graph(OneFamily::OnePathOfEndlessPaths);
    for x in g.one_nodes().take(21) {
        assert!(g.is_boundary(x));
    }
    let p = OneGraph::make_one_graph(OneFamily::PartialLadder);
    assert!(!p.is_locally_1_finite());
    let x3 = p.one_node(OneNodeId::Index(3)).unwrap();
    assert_eq!(x3.embedded, Some(NodeId::SpokeEnd(3)));
}

#[test]
fn tip_rays_are_simple_paths_inside_their_section() {
    for fam in OneFamily::ALL {
        let g = OneGraph::make_one_graph(fam);
        for x in g.one_nodes().take(8) {
            for t in g.one_node(x).unwrap().tips {
                let ray = g.tip_ray(t, 40);
                let mut sorted = ray.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), ray.len(), "{t} repeats");
                for pair in ray.windows(2) {
                    assert!(g.zero_neighbors(&pair[0]).unwrap().take(64).any(|v| v == pair[1]), "{t}");
                }
                for v in &ray {
                    assert_eq!(g.section_of(v).unwrap(), t.section);
                }
            }
        }
    }
}

#[test]
fn section_distances_match_truncated_bfs() {
    let cases: Vec<(OneFamily, Vec<NodeId>)> = vec![
        (
            OneFamily::DiamondChain,
            (0..5).flat_map(|d| [NodeId::DiamondJ(2, d), NodeId::DiamondL(2, d), NodeId::DiamondR(2, d)]).collect(),
        ),
        (OneFamily::OnePathOfEndlessPaths, (-6..=6).map(|i| NodeId::Segment(1, i)).collect()),
        (OneFamily::LadderOfEndlessPaths, (-6..=6).map(|i| NodeId::Spoke(3, i)).collect()),
        (OneFamily::PartialLadder, std::iter::once(NodeId::Hub).chain((0..6).map(NodeId::SpokeEnd)).collect()),
    ];
    for (fam, nodes) in cases {
        let g = OneGraph::make_one_graph(fam);
        for a in &nodes {
            let d = g.truncated_section_bfs(a, 20).unwrap();
            for b in &nodes {
                assert_eq!(g.section_distance(a, b).unwrap(), d[b], "{fam:?} {a} {b}");
            }
        }
    }
}

#[test]
fn wdistance_examples() {
    let g = dc();
    assert_eq!(g.wdistance(&r("x0:0"), &r("x1:0")).unwrap(), Ordinal::OMEGA);
    assert_eq!(g.wdistance(&r("j:3,4"), &r("j:3,4")).unwrap(), Ordinal::ZERO);
    for k in 0..=10 {
        for m in 0..=10 {
            let d = g.wdistance(&NodeId::DiamondJ(k, 0).into(), &NodeId::DiamondJ(m, 0).into()).unwrap();
            let want = if k == m { Ordinal::ZERO } else { w(2 * (k - m).unsigned_abs(), 0) };
            assert_eq!(d, want, "{k} {m}");
        }
    }
    assert_eq!(g.wdistance(&r("x1:1"), &r("x1:3")).unwrap(), w(4, 0));
    assert_eq!(g.wdistance(&r("x1:1"), &r("x1:5")).unwrap(), w(8, 0));
    // a path from x_k to x_m (m-k >= 2) does not exist but a walk does
    assert!(g.wdistance(&r("x0:0"), &r("x0:2")).is_ok());
}

#[test]
fn section_quotient_oracle_for_chain_bases() {
    // independent count: leaving C_k costs one tip, each chain passed costs
    // two, entering C_m costs one
    let g = dc();
    for k in 0..=10i64 {
        for m in 0..=10i64 {
            if k == m {
                continue;
            }
            let (lo, hi) = (k.min(m), k.max(m));
            let tips = 1 + 2 * (hi - lo - 1) + 1;
            let d = g.wdistance(&NodeId::DiamondJ(k, 0).into(), &NodeId::DiamondJ(m, 0).into()).unwrap();
            assert_eq!(d.omega_coeff() as i64, tips);
        }
    }
}

#[test]
fn ladder_of_endless_paths_bounds() {
    let g = OneGraph::make_one_graph(OneFamily::LadderOfEndlessPaths);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let (a, b) = (g.random_node(&mut rng, 12), g.random_node(&mut rng, 12));
        let d = g.wdistance(&a, &b).unwrap();
        let bound = match (&a, &b) {
            (NodeRef::One(_), NodeRef::One(_)) => w(4, 0),
            _ => w(6, 0),
        };
        assert!(d <= bound, "{a} {b} {d}");
    }
    assert_eq!(g.wdistance(&r("rl:0,0"), &r("rl:5,3")).unwrap(), w(6, 0));
    assert_eq!(g.wdistance(&r("x1:0"), &r("x1:5")).unwrap(), w(4, 0));
}

#[test]
fn partial_ladder_distances() {
    let g = OneGraph::make_one_graph(OneFamily::PartialLadder);
    assert_eq!(g.wdistance(&r("hub"), &r("x1:4")).unwrap(), w(0, 1));
    assert_eq!(g.wdistance(&r("u:4"), &r("x1:4")).unwrap(), Ordinal::ZERO);
    assert_eq!(g.wdistance(&r("x1:1"), &r("x1:4")).unwrap(), w(0, 2));
    assert_eq!(g.wdistance(&r("hub"), &r("rl:3,-2")).unwrap(), w(1, 1));
    assert_eq!(g.wdistance(&r("rl:0,5"), &r("rl:1,-5")).unwrap(), w(2, 0));
    assert_eq!(g.wdistance(&r("rl:0,5"), &r("rl:4,-5")).unwrap(), w(2, 2));
    assert_eq!(g.wdistance(&r("rl:2,5"), &r("rl:2,-5")).unwrap(), w(0, 10));
}

#[test]
fn closed_form_agrees_with_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for fam in OneFamily::ALL {
        let g = OneGraph::make_one_graph(fam);
        for _ in 0..400 {
            let (a, b) = (g.random_node(&mut rng, 8), g.random_node(&mut rng, 8));
            assert_eq!(g.closed_form_wdistance(&a, &b).unwrap(), g.wdistance(&a, &b).unwrap(), "{fam:?} {a} {b}");
        }
    }
}

#[test]
fn metric_axioms_on_sampled_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for fam in OneFamily::ALL {
        let g = OneGraph::make_one_graph(fam);
        for _ in 0..100 {
            let (x, y, z) = (g.random_node(&mut rng, 6), g.random_node(&mut rng, 6), g.random_node(&mut rng, 6));
            let dxy = g.wdistance(&x, &y).unwrap();
            assert_eq!(dxy, g.wdistance(&y, &x).unwrap());
            assert_eq!(dxy.is_zero(), g.maximal(&x) == g.maximal(&y));
            let sum = dxy.natural_sum(g.wdistance(&y, &z).unwrap()).unwrap();
            assert!(g.wdistance(&x, &z).unwrap() <= sum);
        }
    }
}

#[test]
fn lemma_10_2_on_diamond_chain() {
    let g = dc();
    let v = g.check_lemma_10_2(OneNodeId::Index(1), OneNodeId::Index(3)).unwrap();
    assert_eq!(v, LemmaVerdict::Pass { distance: w(4, 0) });
    let v = g.check_lemma_10_2(OneNodeId::Index(1), OneNodeId::Index(5)).unwrap();
    assert_eq!(v, LemmaVerdict::Pass { distance: w(8, 0) });
    assert!(matches!(
        g.check_lemma_10_2(OneNodeId::Index(1), OneNodeId::Index(2)).unwrap(),
        LemmaVerdict::Inapplicable { .. }
    ));
}

#[test]
fn witnesses_cross_sections_only_through_tips() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for fam in OneFamily::ALL {
        let g = OneGraph::make_one_graph(fam);
        for _ in 0..100 {
            let (a, b) = (g.random_node(&mut rng, 6), g.random_node(&mut rng, 6));
            let s = g.wdistance_witness(&a, &b).unwrap();
            assert!(s.tip_rule_holds(), "{a} {b}");
            let total = s.steps.iter().fold(Ordinal::ZERO, |acc, st| acc.natural_sum(st.length).unwrap());
            assert_eq!(total, s.distance);
        }
    }
}

#[test]
fn walks_exist_inside_shared_sections() {
    for fam in OneFamily::ALL {
        let g = OneGraph::make_one_graph(fam);
        for s in g.sections().take(10) {
            let inc = g.incidences(s, Window { lo: 0, hi: 6 });
            for (x, _) in &inc {
                for (y, _) in &inc {
                    assert!(g.walk_within_section(s, *x, *y).is_some(), "{s} {x} {y}");
                }
            }
        }
    }
}

#[test]
fn quotient_search_matches_walk_enumeration() {
    let g = dc();
    let oracle = WalkOracle::new(3);
    let nodes = oracle.named_nodes();
    for a in &nodes {
        for b in &nodes {
            assert_eq!(oracle.wdistance(a, b), Some(g.wdistance(a, b).unwrap()), "{a} {b}");
        }
    }
}

#[test]
fn non_members_are_rejected() {
    let g = dc();
    assert!(g.wdistance(&r("p:3"), &r("x1:0")).is_err());
    assert!(g.wdistance(&r("j:-1,0"), &r("x1:0")).is_err());
    assert!(g.wdistance(&r("x1:g"), &r("x1:0")).is_err());
}
