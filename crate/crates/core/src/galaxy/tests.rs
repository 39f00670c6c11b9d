use std::sync::Arc;

use super::*;
use crate::graph::{FamilyKind, GraphInstance};
use crate::node::{NodeId, OneNodeId};
use crate::transfinite::{OneFamily, OneGraph};
use crate::ultrapower::{make_hyperbranch, random_hypernode, standard_node, Space, DEFAULT_HORIZON};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn zero(kind: FamilyKind) -> Arc<Space> {
    Arc::new(Space::Zero(GraphInstance::new(kind)))
}

fn one(f: OneFamily) -> Arc<Space> {
    Arc::new(Space::One(OneGraph::make_one_graph(f)))
}

fn hn(space: &Arc<Space>, s: &str) -> Hypernode {
    Hypernode::parse(space.clone(), s, DEFAULT_HORIZON).unwrap()
}

#[test]
fn verdict_examples() {
    let l = zero(FamilyKind::Ladder);
    let v = limitedly_distant(&hn(&l, "lad:n"), &hn(&l, "lad:g"), 0).unwrap();
    assert_eq!((v.relation, v.bound), (Relation::SameGalaxy, Some(Ordinal::from_finite(1))));
    let p = zero(FamilyKind::OneEndedPath);
    let x = hn(&p, "p:n");
    assert_eq!(limitedly_distant(&x, &hn(&p, "p:0"), 0).unwrap().relation, Relation::DifferentGalaxy);
    let same = limitedly_distant(&x, &x, 0).unwrap();
    assert_eq!((same.relation, same.bound, same.tight), (Relation::SameGalaxy, Some(Ordinal::ZERO), true));
    let g = zero(FamilyKind::Grid2D);
    let v = in_principal_galaxy(&hn(&g, "grid:5,7"), 0).unwrap();
    assert_eq!((v.relation, v.bound), (Relation::SameGalaxy, Some(Ordinal::from_finite(12))));
    let e = zero(FamilyKind::EndlessPath);
    assert_eq!(in_principal_galaxy(&hn(&e, "p:n"), 0).unwrap().relation, Relation::DifferentGalaxy);
    assert_eq!(in_principal_galaxy(&hn(&e, "parity(p:n, p:3)"), 0).unwrap().relation, Relation::FilterDependent);
}

#[test]
fn ladder_of_endless_paths_has_one_one_galaxy() {
    let s = one(OneFamily::LadderOfEndlessPaths);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let x = random_hypernode(&s, &mut rng);
        let v = in_principal_galaxy(&x, 1).unwrap();
        assert_eq!(v.relation, Relation::SameGalaxy, "{x}");
        assert!(v.bound.unwrap() <= Ordinal::new(6, 0));
    }
}

#[test]
fn closeness_examples() {
    let p = zero(FamilyKind::OneEndedPath);
    let base = hn(&p, "p:0");
    let (y, z) = (hn(&p, "p:n"), hn(&p, "p:2n"));
    assert_eq!(closer_than(&base, &y, &z, 0).unwrap(), Trivalent::True);
    assert_eq!(closer_than(&base, &z, &y, 0).unwrap(), Trivalent::False);
    assert_eq!(closer_than(&base, &y, &hn(&p, "p:n+100"), 0).unwrap(), Trivalent::False);
    assert!(matches!(closer_than(&base, &hn(&p, "p:3"), &z, 0), Err(GalaxyError::Inapplicable(_))));
    let dc = one(OneFamily::DiamondChain);
    let b = hn(&dc, "x0:0");
    assert_eq!(closer_than(&b, &hn(&dc, "x0:n"), &hn(&dc, "x0:2n"), 1).unwrap(), Trivalent::True);
    for n in 0..=10 {
        let g = OneGraph::make_one_graph(OneFamily::DiamondChain);
        let d = |k: i64| g.wdistance(&NodeId::DiamondJ(0, 0).into(), &NodeId::DiamondJ(k, 0).into()).unwrap();
        assert_eq!((d(n).omega_coeff(), d(2 * n).omega_coeff()), (2 * n as u64, 4 * n as u64));
    }
}

#[test]
fn one_ended_path_chain() {
    let p = zero(FamilyKind::OneEndedPath);
    let base = hn(&p, "p:0");
    let seed = hn(&p, "p:n");
    let chain = build_galaxy_chain(&base, &seed, 2, 0).unwrap();
    assert_eq!(chain.len(), 5);
    assert!(!chain.seed_reindexed);
    assert_eq!(chain.entry(0).unwrap().at(77).to_string(), "p:77");
    // compressed: a staircase lagging by about sqrt(2n)
    let w = chain.entry(-1).unwrap();
    let lag = 1000 - w.at(1000).params()[0];
    assert!((30..=60).contains(&lag), "{lag}");
    // expanded: at least 2n
    assert!(chain.entry(1).unwrap().at(1000).params()[0] >= 2000);
    let nodes = chain.nodes();
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            let want = Trivalent::from_bool(i < j);
            assert_eq!(closer_than(&base, &nodes[i], &nodes[j], 0).unwrap(), want);
        }
    }
    assert_eq!(build_galaxy_chain(&base, &seed, 0, 0).unwrap().len(), 1);
    assert!(build_galaxy_chain(&base, &hn(&p, "p:4"), 1, 0).is_err());
    assert!(build_galaxy_chain(&base, &hn(&p, "parity(p:n, p:0)"), 1, 0).is_err());
}

#[test]
fn non_monotone_seed_is_extracted() {
    let e = zero(FamilyKind::EndlessPath);
    let base = hn(&e, "p:0");
    let seed = hn(&e, "parity(p:n, p:-n+3)");
    let chain = build_galaxy_chain(&base, &seed, 1, 0).unwrap();
    assert!(chain.seed_reindexed);
    assert_eq!(chain.len(), 3);
}

#[test]
fn rank_one_chain_on_diamond_chain() {
    let g = OneGraph::make_one_graph(OneFamily::DiamondChain);
    let seed = boundary_ray_witness(&g, OneNodeId::Index(0)).unwrap();
    for n in 0..=10u64 {
        assert_eq!(seed.at(n).to_string(), format!("x1:{n}"));
    }
    let base = hn(seed.space(), "x1:0");
    let chain = build_galaxy_chain(&base, &seed, 2, 1).unwrap();
    let nodes = chain.nodes();
    assert_eq!(nodes.len(), 5);
    let rep = verify_partial_order(&nodes, &base, 1);
    assert_eq!(rep.violations(), 0);
    assert!(rep.incomparable.is_empty());
}

#[test]
fn boundary_witness_needs_its_hypotheses() {
    for f in [OneFamily::LadderOfEndlessPaths, OneFamily::PartialLadder] {
        let g = OneGraph::make_one_graph(f);
        assert!(matches!(boundary_ray_witness(&g, OneNodeId::Index(0)), Err(GalaxyError::Inapplicable(_))));
    }
    let g = OneGraph::make_one_graph(OneFamily::OnePathOfEndlessPaths);
    let w = boundary_ray_witness(&g, OneNodeId::Index(0)).unwrap();
    for n in 0..=10u64 {
        let d = g.wdistance(&OneNodeId::Index(0).into(), &w.at(n)).unwrap();
        assert!(d.omega_coeff() >= n, "{n} {d}");
    }
}

#[test]
fn konig_rays() {
    let p = GraphInstance::new(FamilyKind::OneEndedPath);
    assert_eq!(konig_ray_witness(&p, &NodeId::Path(0)).unwrap().to_string(), "p:n");
    let e = GraphInstance::new(FamilyKind::EndlessPath);
    assert_eq!(konig_ray_witness(&e, &NodeId::Path(0)).unwrap().to_string(), "p:n");
    let g = GraphInstance::new(FamilyKind::Grid2D);
    let r = konig_ray_witness(&g, &NodeId::Grid(0, 0)).unwrap();
    for n in 0..=50 {
        assert_eq!(g.closed_form_distance(r.at(n).as_zero().unwrap(), &NodeId::Grid(0, 0)).unwrap(), n);
    }
    assert_eq!(in_principal_galaxy(&r, 0).unwrap().relation, Relation::DifferentGalaxy);
    let l = GraphInstance::new(FamilyKind::Ladder);
    assert!(matches!(konig_ray_witness(&l, &NodeId::Ground), Err(GalaxyError::Inapplicable(_))));
}

#[test]
fn one_ended_path_neighbors() {
    let p = zero(FamilyKind::OneEndedPath);
    let x = hn(&p, "p:n");
    let (a, b) = path_neighbors(&x).unwrap();
    assert_eq!(a.at(0).to_string(), "p:1");
    assert_eq!(a.at(9).to_string(), "p:8");
    assert!(make_hyperbranch(&a, &x).is_ok());
    assert!(make_hyperbranch(&x, &b).is_ok());
    assert!(path_neighbors(&hn(&p, "p:0")).is_err());
}

#[test]
fn order_report_examples() {
    let p = zero(FamilyKind::OneEndedPath);
    let base = hn(&p, "p:0");
    let sample = vec![hn(&p, "p:n"), hn(&p, "p:2n"), hn(&p, "p:3n")];
    let rep = verify_partial_order(&sample, &base, 0);
    assert_eq!(rep.violations(), 0);
    assert!(rep.incomparable.is_empty() && rep.undecided.is_empty());
    let rep = verify_partial_order(&sample[..1], &base, 0);
    assert!(rep.reflexive);
    let split = vec![hn(&p, "p:2n"), hn(&p, "parity(p:n, p:3n)")];
    let rep = verify_partial_order(&split, &base, 0);
    assert_eq!(rep.filter_dependent, vec![(0, 1)]);
}

#[test]
fn galaxy_partition_laws_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for kind in [FamilyKind::EndlessPath, FamilyKind::OneEndedPath, FamilyKind::Grid2D, FamilyKind::LadderWithRay] {
        let s = zero(kind);
        let xs: Vec<Hypernode> = (0..12).map(|_| random_hypernode(&s, &mut rng)).collect();
        let rel = |a: &Hypernode, b: &Hypernode| limitedly_distant(a, b, 0).map(|v| v.relation);
        for a in &xs {
            assert_eq!(rel(a, a).unwrap(), Relation::SameGalaxy);
            for b in &xs {
                let (ab, ba) = (rel(a, b), rel(b, a));
                assert_eq!(ab, ba);
                for c in &xs {
                    if ab == Ok(Relation::SameGalaxy) && rel(b, c) == Ok(Relation::SameGalaxy) {
                        assert_eq!(rel(a, c).unwrap(), Relation::SameGalaxy, "{a} {b} {c}");
                    }
                }
            }
        }
        // anchor independence
        let other = standard_node(&s, &s.anchor(0).to_string()).unwrap();
        let shifted = match kind {
            FamilyKind::Grid2D => standard_node(&s, "grid:4,-2").unwrap(),
            FamilyKind::LadderWithRay => standard_node(&s, "ray:6").unwrap(),
            _ => standard_node(&s, "p:9").unwrap(),
        };
        for x in &xs {
            assert_eq!(rel(x, &other).ok(), rel(x, &shifted).ok(), "{x}");
        }
    }
}

#[test]
fn hyperbranch_endpoints_share_galaxies() {
    let p = zero(FamilyKind::EndlessPath);
    let base = hn(&p, "p:0");
    for lit in ["p:n", "p:-3n+1", "parity(p:n, p:5)", "p:7"] {
        let x = hn(&p, lit);
        let (a, b) = path_neighbors(&x).unwrap();
        for y in [a, b] {
            let br = make_hyperbranch(&x, &y).unwrap();
            let (va, vb) = (limitedly_distant(&br.a, &base, 0).unwrap(), limitedly_distant(&br.b, &base, 0).unwrap());
            assert_eq!(va.relation, vb.relation, "{lit}");
        }
    }
}
