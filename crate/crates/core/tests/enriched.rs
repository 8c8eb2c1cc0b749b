//! Quantales, matrices, (co)categories, Sweedler homs and (co)modules checked
//! against brute-force oracles and algebraic identities.

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vcat_core::base::QElement;
use vcat_core::structures::all_cocategories;
use vcat_core::vmat::{companion, conjoint, star_functoriality};
use vcat_core::*;

fn bases() -> Vec<Arc<Quantale>> {
    vec![
        Arc::new(builtin(Builtin::Boolean)),
        Arc::new(builtin(Builtin::Tropical(3))),
        Arc::new(builtin(Builtin::Tropical(5))),
    ]
}

fn random_mat(rng: &mut ChaCha8Rng, q: &Arc<Quantale>, src: &FinSet, dst: &FinSet) -> VMat {
    let n = q.size();
    let entries = (0..src.len() * dst.len())
        .map(|_| QElement(rng.gen_range(0..n)))
        .collect();
    VMat::new(q.clone(), src.clone(), dst.clone(), entries).unwrap()
}

fn random_fn(rng: &mut ChaCha8Rng, src: &FinSet, dst: &FinSet) -> FinFn {
    FinFn::new(
        src.clone(),
        dst.clone(),
        (0..src.len())
            .map(|_| rng.gen_range(0..dst.len()))
            .collect(),
    )
    .unwrap()
}

fn set(prefix: &str, n: usize) -> FinSet {
    FinSet::indexed(prefix, n)
}

fn random_category(rng: &mut ChaCha8Rng, q: &Arc<Quantale>, x: &FinSet) -> VCategory {
    free_category(&VGraph::new(random_mat(rng, q, x, x)).unwrap()).value
}

/// Sparse graphs: most entries bottom, so closures are not all trivial.
fn sparse_graph(rng: &mut ChaCha8Rng, q: &Arc<Quantale>, x: &FinSet) -> VGraph {
    let n = q.size();
    let entries = (0..x.len() * x.len())
        .map(|_| {
            if rng.gen_bool(0.5) {
                q.bottom()
            } else {
                QElement(rng.gen_range(0..n))
            }
        })
        .collect();
    VGraph::new(VMat::new(q.clone(), x.clone(), x.clone(), entries).unwrap()).unwrap()
}

#[test]
fn builtin_residuation_is_the_join_of_its_defining_set() {
    for q in bases() {
        for a in q.elements() {
            for b in q.elements() {
                let brute = q.join_all(q.elements().filter(|&c| q.leq(q.tensor(c, a), b)));
                assert_eq!(q.hom(a, b), brute);
                for c in q.elements() {
                    assert_eq!(q.leq(q.tensor(c, a), b), q.leq(c, q.hom(a, b)));
                }
            }
        }
    }
}

#[test]
fn tropical_tables_are_truncated_addition() {
    let n = 5u64;
    let q = builtin(Builtin::Tropical(n as u32));
    let value = |e: QElement| q.name(e).parse::<u64>().ok();
    for a in q.elements() {
        for b in q.elements() {
            let expected = match (value(a), value(b)) {
                (Some(x), Some(y)) => Some((x + y).min(n)),
                _ => None,
            };
            assert_eq!(value(q.tensor(a, b)), expected);
            let numeric_le = match (value(a), value(b)) {
                (_, None) => a == b,
                (None, Some(_)) => true,
                (Some(x), Some(y)) => x >= y,
            };
            assert_eq!(q.leq(a, b), numeric_le, "{} ⊑ {}", q.name(a), q.name(b));
        }
    }
    assert_eq!(q.name(q.unit()), "0");
    assert_eq!(q.name(q.bottom()), "inf");
}

#[test]
fn builtin_json_round_trip_and_audit() {
    for q in bases() {
        let spec = q.to_spec();
        let text = serde_json::to_string(&spec).unwrap();
        let back = Quantale::from_spec(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, *q);
        assert!(audit_laws(&q.tables()).all_pass());
    }
}

#[test]
fn one_object_measuring_object_is_the_largest_measuring_comonoid() {
    for q in bases() {
        for a in q.monoids() {
            for b in q.monoids() {
                let p = measuring_object(&q, a, b).unwrap();
                let measuring: Vec<QElement> = q
                    .comonoids()
                    .into_iter()
                    .filter(|&c| q.leq(q.tensor(c, a), b))
                    .collect();
                assert!(measuring.contains(&p));
                assert!(measuring.iter().all(|&c| q.leq(c, p)));
            }
        }
        for c in q.comonoids() {
            for a in q.monoids() {
                let h = convolution(&q, c, a).unwrap();
                assert!(q.is_monoid(h));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative_unital_and_join_preserving(seed in any::<u64>(), which in 0usize..3, dims in (1usize..4, 1usize..4, 1usize..4, 1usize..4)) {
        let q = &bases()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (w, x, y, z) = (set("w", dims.0), set("x", dims.1), set("y", dims.2), set("z", dims.3));
        let r = random_mat(&mut rng, q, &w, &x);
        let s = random_mat(&mut rng, q, &x, &y);
        let s2 = random_mat(&mut rng, q, &x, &y);
        let t = random_mat(&mut rng, q, &y, &z);
        prop_assert_eq!(compose(&t, &compose(&s, &r)?)?, compose(&compose(&t, &s)?, &r)?);
        prop_assert_eq!(compose(&s, &id_mat(&x, q.clone()))?, s.clone());
        prop_assert_eq!(compose(&id_mat(&y, q.clone()), &s)?, s.clone());
        prop_assert_eq!(compose(&t, &s.join(&s2)?)?, compose(&t, &s)?.join(&compose(&t, &s2)?)?);
    }

    #[test]
    fn tensor_interchanges_with_composition(seed in any::<u64>(), which in 0usize..3, dims in (1usize..3, 1usize..3, 1usize..3, 1usize..3, 1usize..3, 1usize..3)) {
        let q = &bases()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (set("x", dims.0), set("y", dims.1), set("z", dims.2));
        let (u, v, w) = (set("u", dims.3), set("v", dims.4), set("w", dims.5));
        let s = random_mat(&mut rng, q, &x, &y);
        let s2 = random_mat(&mut rng, q, &y, &z);
        let t = random_mat(&mut rng, q, &u, &v);
        let t2 = random_mat(&mut rng, q, &v, &w);
        let lhs = tensor_mat(&compose(&s2, &s)?, &compose(&t2, &t)?)?;
        let rhs = compose(&tensor_mat(&s2, &t2)?, &tensor_mat(&s, &t)?)?;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn companions_are_left_adjoint_to_conjoints(seed in any::<u64>(), which in 0usize..3, nx in 1usize..4, ny in 1usize..4, nz in 1usize..4) {
        let q = &bases()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (set("x", nx), set("y", ny), set("z", nz));
        let f = random_fn(&mut rng, &x, &y);
        let g = random_fn(&mut rng, &y, &z);
        let (lower, upper) = (companion(&f, q.clone()), conjoint(&f, q.clone()));
        prop_assert!(leq2cell(&id_mat(&x, q.clone()), &compose(&upper, &lower)?)?);
        prop_assert!(leq2cell(&compose(&lower, &upper)?, &id_mat(&y, q.clone()))?);
        prop_assert!(star_functoriality(&f, &g, q.clone())?);
    }

    /// `I ⊑ Hom(s,t)(q,k)` exactly when `s ⊑ q* ∘ t ∘ k⋆`.
    #[test]
    fn hom_matrix_unit_entries_are_two_cells(seed in any::<u64>(), which in 0usize..3, dims in (1usize..3, 1usize..3, 1usize..3, 1usize..3)) {
        let q = &bases()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, z, y, w) = (set("x", dims.0), set("z", dims.1), set("y", dims.2), set("w", dims.3));
        let s = random_mat(&mut rng, q, &x, &z);
        let t = random_mat(&mut rng, q, &y, &w);
        let h = hom_mat(&s, &t, 4096)?;
        for qi in 0..h.dst_space.len() {
            for k in 0..h.src_space.len() {
                let pulled = compose(&conjoint(&h.dst_space.function(qi), q.clone()), &compose(&t, &companion(&h.src_space.function(k), q.clone()))?)?;
                prop_assert_eq!(q.leq(q.unit(), h.matrix.get(qi, k)), leq2cell(&s, &pulled)?);
            }
        }
    }

    /// The free category is the join of the powers `G^k`, `k < |X|`.
    #[test]
    fn free_category_is_the_kleene_star(seed in any::<u64>(), which in 0usize..3, n in 1usize..6) {
        let q = &bases()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = set("x", n);
        let g = sparse_graph(&mut rng, q, &x);
        let mut power = id_mat(&x, q.clone());
        let mut star = power.clone();
        for _ in 1..n {
            power = compose(g.matrix(), &power)?;
            star = star.join(&power)?;
        }
        let free = free_category(&g);
        prop_assert_eq!(free.value.matrix(), &star);
        prop_assert!(check_category(free.value.graph()).passed());
        prop_assert_eq!(free_category(free.value.graph()).value, free.value);
    }

    /// The cofree cocategory is the largest cocategory below the graph.
    #[test]
    fn cofree_cocategory_is_greatest_below(seed in any::<u64>(), which in 0usize..2, n in 1usize..3) {
        let q = &bases()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = set("x", n);
        let g = VGraph::new(random_mat(&mut rng, q, &x, &x)).unwrap();
        let cofree = cofree_cocategory(&g).value;
        prop_assert!(check_cocategory(cofree.graph()).passed());
        prop_assert!(leq2cell(cofree.matrix(), g.matrix())?);
        for d in all_cocategories(q, &x) {
            if leq2cell(d.matrix(), g.matrix())? {
                prop_assert!(leq2cell(d.matrix(), cofree.matrix())?);
            }
        }
    }

    /// `f` is a functor `A → B` exactly when `A ⊑ f*B`.
    #[test]
    fn functors_are_maps_into_the_restriction(seed in any::<u64>(), which in 0usize..3, nx in 1usize..4, ny in 1usize..4) {
        let q = &bases()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (set("x", nx), set("y", ny));
        let a = random_category(&mut rng, q, &x);
        let b = random_category(&mut rng, q, &y);
        let f = random_fn(&mut rng, &x, &y);
        let r = restrict(&b, &f)?;
        for i in 0..nx {
            for j in 0..nx {
                prop_assert_eq!(r.get(i, j), b.get(f.apply(i), f.apply(j)));
            }
        }
        prop_assert_eq!(check_functor(&a, &b, &f).passed(), leq2cell(a.matrix(), r.matrix())?);
    }

    #[test]
    fn sweedler_hom_is_a_cocategory_and_k_is_a_category(seed in any::<u64>(), which in 0usize..3, nx in 1usize..3, ny in 1usize..4) {
        let q = &bases()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (set("x", nx), set("y", ny));
        let a = random_category(&mut rng, q, &x);
        let b = random_category(&mut rng, q, &y);
        let t = sweedler_hom(&a, &b, 4096)?;
        prop_assert!(check_cocategory(t.cocategory.graph()).passed());
        let c = cofree_cocategory(&VGraph::new(random_mat(&mut rng, q, &x, &x)).unwrap()).value;
        let k = k_functor(&c, &b, 4096)?;
        prop_assert!(check_category(k.category.graph()).passed());
        // the identity of X lands on the largest comonoid below I in T(A,A)
        let taa = sweedler_hom(&a, &a, 4096)?;
        let id = taa.space.index_of(&(0..nx).collect::<Vec<_>>());
        prop_assert_eq!(taa.cocategory.get(id, id), q.comonoid_interior(q.unit()));
    }

    /// Restriction of modules along functors composes, and the hom module
    /// carries `⋀_x [Φ(x), Ψ(tx)]`.
    #[test]
    fn module_constructions(seed in any::<u64>(), which in 0usize..3, nx in 1usize..3, ny in 1usize..3) {
        let q = &bases()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (set("x", nx), set("y", ny));
        let b = random_category(&mut rng, q, &y);
        // the representable-style module y ↦ ⋁_y′ B(y,y′) ⊗ v(y′) is a module for any v
        let v: Vec<QElement> = (0..ny).map(|_| QElement(rng.gen_range(0..q.size()))).collect();
        let xi_vals: Vec<QElement> = (0..ny).map(|i| q.join_all((0..ny).map(|j| q.tensor(b.get(i, j), v[j])))).collect();
        let xi = VModule::from_values(b.clone(), &xi_vals)?;
        let f = random_fn(&mut rng, &x, &y);
        let a = restrict(&b, &f)?;
        let fa = VFunctor::new(a.clone(), b.clone(), f.clone())?;
        let r = restrict_module(&xi, &fa)?;
        prop_assert_eq!(r.values(), (0..nx).map(|i| xi_vals[f.apply(i)]).collect::<Vec<_>>());
        prop_assert!(check_module_morphism(&r, &xi, &f).passed());

        let c = cofree_cocategory(&VGraph::new(random_mat(&mut rng, q, &x, &x)).unwrap()).value;
        let phi_vals: Vec<QElement> = c.diag();
        let phi = VComodule::from_values(c.clone(), &phi_vals)?;
        let h = hom_module(&phi, &xi, 4096)?;
        for t in 0..h.space().len() {
            let expected = q.meet_all((0..nx).map(|i| q.hom(phi_vals[i], xi_vals[h.space().apply(t, i)])));
            prop_assert_eq!(h.module.get(t), expected);
        }
    }
}
