use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vcat_core::fib::samples::{arrow_example, fatten, random_pseudo, random_strict, span};
use vcat_core::fib::{
    change_of_base, check_fibred_adjunction, enumerate_adjunctions, enumerate_functors,
    enumerate_nat_trans, fibrewise_left_adjoints, grothendieck, is_cartesian, map_of_adjunctions,
    mate, mate_inverse, round_trip, Fibration, FinCategory, FinFunctor, IndexedCategory,
};
use vcat_core::Error;

const CAP: usize = 4096;

fn non_identity(c: &FinCategory) -> usize {
    (0..c.morphism_count())
        .find(|&m| !c.is_identity(m))
        .unwrap()
}

/// A strict indexed category over `𝟚` with the given fibres and the single
/// reindexing functor `f*: fibre 1 → fibre 0`.
fn over_arrow(
    f0: FinCategory,
    f1: FinCategory,
    reindex: impl Fn(&Arc<FinCategory>, &Arc<FinCategory>) -> FinFunctor,
) -> IndexedCategory {
    let base = Arc::new(FinCategory::arrow());
    let fibres = vec![Arc::new(f0), Arc::new(f1)];
    let f = non_identity(&base);
    let functors = (0..base.morphism_count())
        .map(|m| {
            if m == f {
                reindex(&fibres[1], &fibres[0])
            } else {
                FinFunctor::identity(&fibres[base.src(m)])
            }
        })
        .collect();
    IndexedCategory::strict(base, fibres, functors).unwrap()
}

/// The functor between Grothendieck totals induced by fibrewise functors
/// that commute strictly with reindexing.
fn strict_total_functor(
    mp: &IndexedCategory,
    mq: &IndexedCategory,
    sx: &[FinFunctor],
) -> (Fibration, Fibration, FinFunctor) {
    let gp = grothendieck(mp, CAP).unwrap();
    let gq = grothendieck(mq, CAP).unwrap();
    let ob = gp
        .objects
        .iter()
        .map(|&(a, x)| gq.object(sx[x].ob(a), x))
        .collect();
    let mor = gp
        .morphisms
        .iter()
        .map(|&(phi, f)| {
            let x = mp.base().src(f);
            gq.morphisms
                .iter()
                .position(|&m| m == (sx[x].mor(phi), f))
                .unwrap()
        })
        .collect();
    let s = FinFunctor::new(
        gp.fibration.total().clone(),
        gq.fibration.total().clone(),
        ob,
        mor,
    )
    .unwrap();
    (gp.fibration, gq.fibration, s)
}

#[test]
fn arrow_example_total_category() {
    let g = grothendieck(&arrow_example(), CAP).unwrap();
    let e = g.fibration.total();
    assert_eq!(e.object_count(), 3);
    assert_eq!(e.morphism_count(), 5);
    assert!(g.fibration.is_split());
    // every morphism of a Grothendieck total over a discrete-fibred base is cartesian
    for m in 0..e.morphism_count() {
        assert!(is_cartesian(g.fibration.projection(), m));
    }
}

#[test]
fn grothendieck_counts_match_direct_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let m = random_strict(&mut rng, CAP);
        let g = grothendieck(&m, CAP).unwrap();
        let b = m.base();
        let objects: usize = m.fibres().iter().map(|c| c.object_count()).sum();
        let mut morphisms = 0;
        for f in 0..b.morphism_count() {
            let (x, y) = (b.src(f), b.dst(f));
            for a in 0..m.fibre(x).object_count() {
                for c in 0..m.fibre(y).object_count() {
                    morphisms += m.fibre(x).hom(a, m.reindex(f).ob(c)).len();
                }
            }
        }
        assert_eq!(g.fibration.total().object_count(), objects);
        assert_eq!(g.fibration.total().morphism_count(), morphisms);
    }
}

#[test]
fn codomain_fibration_on_span() {
    let c = Arc::new(span());
    let arr = c.arrow_category();
    let total = Arc::new(arr.category.clone());
    let cod = FinFunctor::new(
        total.clone(),
        c.clone(),
        (0..c.morphism_count()).map(|f| c.dst(f)).collect(),
        arr.squares.iter().map(|&(_, v)| v).collect(),
    )
    .unwrap();
    let p = Fibration::from_projection(cod.clone()).unwrap();
    let (da, ida) = (
        c.morphism_index("d→a").unwrap(),
        c.id(c.object_index("a").unwrap()),
    );
    // the square from d→a to 1_a is vertical but not invertible
    let square = (0..arr.squares.len())
        .find(|&i| total.src(i) == da && total.dst(i) == ida)
        .unwrap();
    assert!(!is_cartesian(&cod, square));
    // the square from 1_d to d→a is a pullback
    let idd = c.id(c.object_index("d").unwrap());
    let pb = (0..arr.squares.len())
        .find(|&i| total.src(i) == idd && total.dst(i) == da && arr.squares[i] == (idd, da))
        .unwrap();
    assert!(is_cartesian(&cod, pb));
    assert!(round_trip(&p, CAP).unwrap().passed());
}

#[test]
fn missing_lift_is_reported() {
    // the projection 𝟚 → 𝟚 that collapses the target has no lift of f at 0
    let two = Arc::new(FinCategory::arrow());
    let collapse = FinFunctor::constant(&two, &two, 1);
    assert!(matches!(
        Fibration::from_projection(collapse),
        Err(Error::CoherenceFailure(_))
    ));
}

#[test]
fn factorization_and_round_trip_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..30 {
        let m = if i % 2 == 0 {
            random_strict(&mut rng, CAP)
        } else {
            random_pseudo(&mut rng, CAP)
        };
        let p = grothendieck(&m, CAP).unwrap().fibration;
        let e = p.total();
        for theta in 0..e.morphism_count() {
            let (psi, lift) = p.factorize(theta).unwrap();
            assert!(p.is_vertical(psi));
            assert_eq!(e.comp(lift, psi), theta);
        }
        assert_eq!(p.is_split(), m.is_strict(), "sample {i}");
        assert!(round_trip(&p, CAP).unwrap().passed(), "sample {i}");
        assert_eq!(p.indexed_category().unwrap().is_strict(), m.is_strict());
    }
}

#[test]
fn cartesian_arrows_compose_and_cancel() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let p = grothendieck(&random_pseudo(&mut rng, CAP), CAP)
            .unwrap()
            .fibration;
        let (e, proj) = (p.total(), p.projection());
        for g in 0..e.morphism_count() {
            for f in 0..e.morphism_count() {
                let Some(gf) = e.try_comp(g, f) else { continue };
                let (cg, cf, cgf) = (
                    is_cartesian(proj, g),
                    is_cartesian(proj, f),
                    is_cartesian(proj, gf),
                );
                if cg && cf {
                    assert!(cgf);
                }
                if cg && cgf {
                    assert!(cf);
                }
            }
        }
    }
}

#[test]
fn change_of_base_along_identity_and_constant() {
    let m = fatten(&arrow_example(), 2, |f, b, j| (f + b + j) % 2).unwrap();
    let q = grothendieck(&m, CAP).unwrap().fibration;
    let id = FinFunctor::identity(q.base());
    let (pulled, pi) = change_of_base(&q, &id, CAP).unwrap();
    assert_eq!(pulled.total().object_count(), q.total().object_count());
    assert_eq!(pulled.total().morphism_count(), q.total().morphism_count());
    assert_eq!(pi.dst().object_count(), q.total().object_count());
    // along the point at 1, the pullback is the fibre over 1
    let one = Arc::new(FinCategory::terminal());
    let point = FinFunctor::constant(&one, q.base(), 1);
    let (pulled, _) = change_of_base(&q, &point, CAP).unwrap();
    let fibre = q.fibre(1);
    assert_eq!(pulled.total().object_count(), fibre.category.object_count());
    assert_eq!(
        pulled.total().morphism_count(),
        fibre.category.morphism_count()
    );
    assert!(round_trip(&pulled, CAP).unwrap().passed());
}

#[test]
fn identity_is_a_fibred_adjunction() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let p = grothendieck(&random_pseudo(&mut rng, CAP), CAP)
            .unwrap()
            .fibration;
        let s = FinFunctor::identity(p.total());
        let adjs = fibrewise_left_adjoints(&p, &p, &s, 1000).unwrap();
        let report = check_fibred_adjunction(&p, &p, &s, &adjs).unwrap();
        assert!(report.pass);
        assert!(report.mates.iter().all(|m| m.invertible));
    }
}

#[test]
fn collapse_to_terminal_fibres() {
    // S: P → Q with Q's fibres terminal; the left adjoints pick bottoms and
    // the mates compare L_0 with f* L_1
    let terminal_q = over_arrow(FinCategory::terminal(), FinCategory::terminal(), |a, b| {
        FinFunctor::constant(a, b, 0)
    });
    let cases = [(false, true), (true, false)];
    for (send_to_top, expect) in cases {
        let mp = over_arrow(FinCategory::chain(2), FinCategory::chain(2), |a, b| {
            if send_to_top {
                FinFunctor::constant(a, b, 1)
            } else {
                FinFunctor::identity(a)
            }
        });
        let sx: Vec<FinFunctor> = (0..2)
            .map(|x| FinFunctor::constant(mp.fibre(x), terminal_q.fibre(x), 0))
            .collect();
        let (p, q, s) = strict_total_functor(&mp, &terminal_q, &sx);
        let adjs = fibrewise_left_adjoints(&p, &q, &s, 1000).unwrap();
        let report = check_fibred_adjunction(&p, &q, &s, &adjs).unwrap();
        assert_eq!(report.pass, expect);
        if expect {
            assert!(report.mates.iter().all(|m| m.identity));
            assert_eq!(report.total, Some(vcat_core::Certificate::Pass));
        } else {
            assert!(report.witness().is_some());
            assert!(report.total.is_none());
        }
    }
}

#[test]
fn non_invertible_mate_is_witnessed() {
    // P: chain over 0, a point over 1 reindexed to the top; Q: chains with
    // identity reindexing; S_1 picks the top
    let mp = over_arrow(FinCategory::chain(2), FinCategory::terminal(), |a, b| {
        FinFunctor::constant(a, b, 1)
    });
    let mq = over_arrow(FinCategory::chain(2), FinCategory::chain(2), |a, _| {
        FinFunctor::identity(a)
    });
    let sx = vec![
        FinFunctor::identity(mp.fibre(0)),
        FinFunctor::constant(mp.fibre(1), mq.fibre(1), 1),
    ];
    let (p, q, s) = strict_total_functor(&mp, &mq, &sx);
    let adjs = fibrewise_left_adjoints(&p, &q, &s, 1000).unwrap();
    let report = check_fibred_adjunction(&p, &q, &s, &adjs).unwrap();
    assert!(report.fibred.passed());
    assert!(!report.pass);
    let w = report.witness().unwrap();
    let base = p.base();
    assert_eq!(w.base_morphism, base.morphism(non_identity(base)).name);
    assert_eq!(report.mates.iter().filter(|m| !m.invertible).count(), 1);
}

#[test]
fn missing_fibrewise_adjoint_is_an_error() {
    // S_1 picks the bottom, which has no left adjoint from the chain
    let mp = over_arrow(FinCategory::chain(2), FinCategory::terminal(), |a, b| {
        FinFunctor::constant(a, b, 0)
    });
    let mq = over_arrow(FinCategory::chain(2), FinCategory::chain(2), |a, _| {
        FinFunctor::identity(a)
    });
    let sx = vec![
        FinFunctor::identity(mp.fibre(0)),
        FinFunctor::constant(mp.fibre(1), mq.fibre(1), 0),
    ];
    let (p, q, s) = strict_total_functor(&mp, &mq, &sx);
    let adjs = fibrewise_left_adjoints(&p, &q, &s, 1000).unwrap();
    assert!(adjs[1].is_none());
    assert!(matches!(
        check_fibred_adjunction(&p, &q, &s, &adjs),
        Err(Error::MissingFibrewiseAdjoint(_))
    ));
}

#[test]
fn mates_are_a_bijection_on_chains() {
    let cats: Vec<Arc<FinCategory>> = (1..=3).map(|n| Arc::new(FinCategory::chain(n))).collect();
    let mut checked = 0;
    for a in &cats {
        for b in &cats {
            let adjs = enumerate_adjunctions(a, b, 1000).unwrap();
            for adj in &adjs {
                for adj2 in &adjs {
                    for h in enumerate_functors(a, a, 1000).unwrap() {
                        for k in enumerate_functors(b, b, 1000).unwrap() {
                            let src = adj2.left().after(&h).unwrap();
                            let dst = k.after(adj.left()).unwrap();
                            for mu in enumerate_nat_trans(&src, &dst) {
                                let nu = mate(adj, adj2, &h, &k, &mu).unwrap();
                                assert_eq!(mate_inverse(adj, adj2, &h, &k, &nu).unwrap(), mu);
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn unit_and_counit_compatibility_agree() {
    // on Z/2 the adjunction data include the non-trivial unit s, counit s
    let z2 = Arc::new(vcat_core::fib::samples::cyclic2());
    let adjs = enumerate_adjunctions(&z2, &z2, 1000).unwrap();
    assert!(adjs.len() >= 2);
    let mut both_false = false;
    for adj in &adjs {
        for adj2 in &adjs {
            for h in enumerate_functors(&z2, &z2, 1000).unwrap() {
                for k in enumerate_functors(&z2, &z2, 1000).unwrap() {
                    if let Some((units, counits)) = map_of_adjunctions(adj, adj2, &h, &k).unwrap() {
                        assert_eq!(units, counits);
                        both_false |= !units;
                    }
                }
            }
        }
    }
    assert!(both_false);
}
