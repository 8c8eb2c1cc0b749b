//! The internal-hom V-category `K(C,B)`, the Sweedler hom cocategory
//! `T(A,B)`, their one-object specializations, and an exhaustive check of the
//! correspondence between cofunctors into `T(A,B)` and functors into
//! `K(C,B)`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::base::{QElement, Quantale};
use crate::error::{Error, Result};
use crate::expo::{transpose, FinFn, FinSet, FunctionSpace};
use crate::structures::{
    all_cocategories, check_category, check_cofunctor, check_functor, cofree_cocategory, VCategory,
    VCocategory, VGraph,
};
use crate::vmat::{hom_mat, tensor_mat, VMat};

/// `K(C,B)` on the object set `Y^X`.
#[derive(Clone, Debug)]
pub struct HomCategory {
    pub category: VCategory,
    pub space: FunctionSpace,
}

/// `T(A,B)` on the object set `Y^X`.
#[derive(Clone, Debug)]
pub struct SweedlerHom {
    pub cocategory: VCocategory,
    pub space: FunctionSpace,
    pub iterations: usize,
}

impl SweedlerHom {
    /// Functions `s` with `T(s,s) ≠ ⊥`.
    pub fn support(&self) -> Vec<usize> {
        let bot = self.cocategory.base().bottom();
        (0..self.space.len())
            .filter(|&s| self.cocategory.get(s, s) != bot)
            .collect()
    }

    /// Functions `s` with `T(s,s) = I`.
    pub fn unit_support(&self) -> Vec<usize> {
        let unit = self.cocategory.base().unit();
        (0..self.space.len())
            .filter(|&s| self.cocategory.get(s, s) == unit)
            .collect()
    }
}

fn check_same_base(a: &Arc<Quantale>, b: &Arc<Quantale>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::BaseMismatch)
    }
}

/// The V-category `K(C,B)` with `K(q,k) = ⋀_{x′,x} [C(x′,x), B(qx′, kx)]`.
pub fn k_functor(c: &VCocategory, b: &VCategory, cap: usize) -> Result<HomCategory> {
    check_same_base(c.base(), b.base())?;
    let hm = hom_mat(c.matrix(), b.matrix(), cap)?;
    let graph = VGraph::new(hm.matrix).expect("square");
    let cert = check_category(&graph);
    assert!(cert.passed(), "K(C,B) failed its category laws: {cert:?}");
    Ok(HomCategory {
        category: VCategory::new(graph)?,
        space: hm.src_space,
    })
}

/// The largest cocategory `D` on `Y^X` with `D(s,s) ⊗ A(x′,x) ⊑ B(sx′,sx)`.
pub fn sweedler_hom(a: &VCategory, b: &VCategory, cap: usize) -> Result<SweedlerHom> {
    check_same_base(a.base(), b.base())?;
    let q = a.base().clone();
    let space = FunctionSpace::new(a.objects(), b.objects(), cap)?;
    let n = a.objects().len();
    let start =
        VMat::from_fn(
            q.clone(),
            space.set().clone(),
            space.set().clone(),
            |t, s| {
                if s != t {
                    return q.bottom();
                }
                let bound = q.meet_all((0..n).flat_map(|x2| (0..n).map(move |x| (x2, x))).map(
                    |(x2, x)| q.hom(a.get(x2, x), b.get(space.apply(s, x2), space.apply(s, x))),
                ));
                q.meet(q.unit(), bound)
            },
        );
    let fix = cofree_cocategory(&VGraph::new(start).expect("square"));
    Ok(SweedlerHom {
        cocategory: fix.value,
        space,
        iterations: fix.iterations,
    })
}

/// One line of the adjunction table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionRow {
    /// Diagonal of the probe cocategory `C` on `Z`, as element names.
    pub probe: Vec<String>,
    /// `g: Z → Y^X` as indices into `Y^X`.
    pub map: Vec<usize>,
    /// `g` is a cofunctor `C → T(A,B)`.
    pub cofunctor: bool,
    /// The transpose of `g` is a functor `A → K(C,B)`.
    pub functor: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub rows: Vec<AdjunctionRow>,
    pub all_match: bool,
}

impl AdjunctionReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &AdjunctionRow> {
        self.rows.iter().filter(|r| r.cofunctor != r.functor)
    }
}

/// Compares both sides of the correspondence for every cocategory `C` on a
/// set `Z` with `1 ≤ |Z| ≤ bound` and every function `g: Z → Y^X`.
pub fn verify_sweedler_adjunction(
    a: &VCategory,
    b: &VCategory,
    bound: usize,
    cap: usize,
) -> Result<AdjunctionReport> {
    let t = sweedler_hom(a, b, cap)?;
    let q = a.base().clone();
    let y_to_x = &t.space;
    let mut cases = Vec::new();
    for nz in 1..=bound {
        let z = FinSet::indexed("z", nz);
        let maps = FinFn::all(&z, y_to_x.set(), cap)?;
        let y_to_z = FunctionSpace::new(&z, b.objects(), cap)?;
        for c in all_cocategories(&q, &z) {
            for g in &maps {
                cases.push((c.clone(), g.clone(), y_to_z.clone()));
            }
        }
    }
    let rows: Vec<AdjunctionRow> = cases
        .into_par_iter()
        .map(|(c, g, y_to_z)| -> Result<AdjunctionRow> {
            let cofunctor = check_cofunctor(&c, &t.cocategory, &g).passed();
            let k = k_functor(&c, b, cap)?;
            let gt = FinFn::new(
                a.objects().clone(),
                k.space.set().clone(),
                transpose(y_to_x, &y_to_z, g.table()),
            )?;
            let functor = check_functor(a, &k.category, &gt).passed();
            Ok(AdjunctionRow {
                probe: c.diag().iter().map(|&e| q.name(e).to_string()).collect(),
                map: g.table().to_vec(),
                cofunctor,
                functor,
            })
        })
        .collect::<Result<_>>()?;
    let all_match = rows.iter().all(|r| r.cofunctor == r.functor);
    Ok(AdjunctionReport { rows, all_match })
}

/// `P(a,b)`: the largest comonoid `c` with `c ⊗ a ⊑ b`.
pub fn measuring_object(q: &Quantale, a: QElement, b: QElement) -> Result<QElement> {
    for m in [a, b] {
        if !q.is_monoid(m) {
            return Err(Error::NotAMonoid(q.name(m).to_string()));
        }
    }
    Ok(q.comonoid_interior(q.hom(a, b)))
}

/// The convolution monoid `[c, a]`.
pub fn convolution(q: &Quantale, c: QElement, a: QElement) -> Result<QElement> {
    if !q.is_comonoid(c) {
        return Err(Error::NotAComonoid(q.name(c).to_string()));
    }
    if !q.is_monoid(a) {
        return Err(Error::NotAMonoid(q.name(a).to_string()));
    }
    let h = q.hom(c, a);
    if !q.is_monoid(h) {
        return Err(Error::CertificateFailure(format!(
            "[{}, {}] is not a monoid",
            q.name(c),
            q.name(a)
        )));
    }
    Ok(h)
}

/// One line of the one-object correspondence: both hom-sets are empty or
/// singletons, so the bijection amounts to equal sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceRow {
    pub algebra: String,
    pub coalgebra: String,
    pub target: String,
    /// `|Mon(a, [c,b])|`.
    pub monoid_maps: usize,
    /// `|Comon(c, P(a,b))|`.
    pub comonoid_maps: usize,
}

/// The full table over all monoids `a, b` and comonoids `c` of `q`.
pub fn one_object_correspondence(q: &Quantale) -> Vec<CorrespondenceRow> {
    let monoids = q.monoids();
    let comonoids = q.comonoids();
    let mut rows = Vec::new();
    for &a in &monoids {
        for &c in &comonoids {
            for &b in &monoids {
                let conv = convolution(q, c, b).expect("comonoid and monoid");
                let p = measuring_object(q, a, b).expect("monoids");
                rows.push(CorrespondenceRow {
                    algebra: q.name(a).to_string(),
                    coalgebra: q.name(c).to_string(),
                    target: q.name(b).to_string(),
                    monoid_maps: usize::from(q.leq(a, conv)),
                    comonoid_maps: usize::from(q.leq(c, p)),
                });
            }
        }
    }
    rows
}

/// Tensor of cocategories, object set `X × Z`.
pub fn tensor_cocategory(c: &VCocategory, d: &VCocategory) -> Result<VCocategory> {
    VCocategory::new(VGraph::new(tensor_mat(c.matrix(), d.matrix())?)?)
}

/// Checks that composition `(t, s) ↦ t∘s` is a cofunctor
/// `T(B,C) ⊗ T(A,B) → T(A,C)`.
pub fn check_sweedler_composition(
    a: &VCategory,
    b: &VCategory,
    c: &VCategory,
    cap: usize,
) -> Result<crate::cert::Certificate> {
    let tab = sweedler_hom(a, b, cap)?;
    let tbc = sweedler_hom(b, c, cap)?;
    let tac = sweedler_hom(a, c, cap)?;
    let prod = tensor_cocategory(&tbc.cocategory, &tab.cocategory)?;
    let nx = a.objects().len();
    let nab = tab.space.len();
    let table: Vec<usize> = (0..prod.objects().len())
        .map(|ts| {
            let (t, s) = (ts / nab, ts % nab);
            let images: Vec<usize> = (0..nx)
                .map(|x| tbc.space.apply(t, tab.space.apply(s, x)))
                .collect();
            tac.space.index_of(&images)
        })
        .collect();
    let comp = FinFn::new(prod.objects().clone(), tac.space.set().clone(), table)?;
    Ok(check_cofunctor(&prod, &tac.cocategory, &comp))
}

/// The functions `s` in `Y^X` with non-bottom `T(s,s)`, rendered for humans.
pub fn support_table(t: &SweedlerHom) -> String {
    let q = t.cocategory.base();
    let mut out = String::new();
    for s in t.support() {
        out.push_str(&format!(
            "{}  {}\n",
            t.space.set().name(s),
            q.name(t.cocategory.get(s, s))
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{builtin, Builtin};
    use crate::expo::curry;
    use crate::vmat::id_mat;

    fn boolean() -> Arc<Quantale> {
        Arc::new(builtin(Builtin::Boolean))
    }

    fn chain(q: &Arc<Quantale>, n: usize, prefix: &str) -> VCategory {
        let x = FinSet::indexed(prefix, n);
        let m = VMat::from_fn(q.clone(), x.clone(), x, |y, x| {
            if x <= y {
                q.unit()
            } else {
                q.bottom()
            }
        });
        VCategory::new(VGraph::new(m).unwrap()).unwrap()
    }

    fn metric(q: &Arc<Quantale>, d: &[[&str; 2]; 2]) -> VCategory {
        let x = FinSet::indexed("p", 2);
        let m = VMat::from_fn(q.clone(), x.clone(), x, |y, x| q.element(d[y][x]).unwrap());
        VCategory::new(VGraph::new(m).unwrap()).unwrap()
    }

    #[test]
    fn k_with_unit_cocategory_is_b() {
        let q = boolean();
        let b = chain(&q, 3, "y");
        let k = k_functor(&VCocategory::unit(q.clone()), &b, 4096).unwrap();
        assert_eq!(k.category.matrix().entries(), b.matrix().entries());
    }

    #[test]
    fn k_entries_match_pointwise_evaluation() {
        let q = boolean();
        let b = chain(&q, 2, "y");
        let x = FinSet::indexed("x", 2);
        let c = VCocategory::diagonal(q.clone(), x, &[q.unit(), q.bottom()]).unwrap();
        let k = k_functor(&c, &b, 4096).unwrap();
        for qi in 0..k.space.len() {
            for ki in 0..k.space.len() {
                // D = {x0}: K(q,k) = B(q x0, k x0), i.e. k(x0) ≤ q(x0) in the chain
                let expect = k.space.apply(ki, 0) <= k.space.apply(qi, 0);
                assert_eq!(k.category.get(qi, ki) == q.unit(), expect, "({qi},{ki})");
            }
        }
    }

    #[test]
    fn boolean_support_is_monotone_maps() {
        let q = boolean();
        let a = chain(&q, 2, "x");
        let b = chain(&q, 3, "y");
        let t = sweedler_hom(&a, &b, 4096).unwrap();
        let monotone: Vec<usize> = (0..t.space.len())
            .filter(|&s| t.space.apply(s, 0) <= t.space.apply(s, 1))
            .collect();
        assert_eq!(t.support(), monotone);
        assert_eq!(monotone.len(), 6);
    }

    #[test]
    fn trivial_sweedler_hom() {
        let q = boolean();
        let u = VCategory::unit(q.clone());
        let t = sweedler_hom(&u, &u, 16).unwrap();
        assert_eq!(
            t.cocategory.matrix().entries(),
            VCocategory::unit(q).matrix().entries()
        );
    }

    #[test]
    fn tropical_nonexpansive_maps_get_the_unit() {
        let q = Arc::new(builtin(Builtin::Tropical(5)));
        let a = metric(&q, &[["0", "1"], ["1", "0"]]);
        let b = metric(&q, &[["0", "3"], ["3", "0"]]);
        let t = sweedler_hom(&a, &b, 16).unwrap();
        // constant maps are nonexpansive, the two bijections stretch 1 to 3
        assert_eq!(t.unit_support(), vec![0, 3]);
        // saturation makes the top finite value a comonoid, so expansive maps
        // with a finite stretch receive it rather than ∞
        assert_eq!(q.name(t.cocategory.get(1, 1)), "5");
        assert_eq!(q.name(t.cocategory.get(2, 2)), "5");
    }

    #[test]
    fn adjunction_on_small_boolean_instances() {
        let q = boolean();
        let a = chain(&q, 2, "x");
        let b = chain(&q, 2, "y");
        let r = verify_sweedler_adjunction(&a, &b, 1, 4096).unwrap();
        assert!(r.all_match);
        assert_eq!(r.rows.len(), 2 * 4);
        let u = VCategory::unit(q.clone());
        assert!(verify_sweedler_adjunction(&u, &u, 1, 16).unwrap().all_match);
    }

    #[test]
    fn adjunction_tropical_singletons() {
        let q = Arc::new(builtin(Builtin::Tropical(3)));
        for ea in q.monoids() {
            for eb in q.monoids() {
                let one = FinSet::singleton();
                let mk = |e| {
                    VCategory::new(
                        VGraph::new(VMat::constant(q.clone(), one.clone(), one.clone(), e))
                            .unwrap(),
                    )
                    .unwrap()
                };
                let r = verify_sweedler_adjunction(&mk(ea), &mk(eb), 2, 16).unwrap();
                assert!(r.all_match);
            }
        }
    }

    #[test]
    fn measuring_object_boolean_and_saturated_tropical() {
        let q = builtin(Builtin::Boolean);
        for a in q.monoids() {
            for b in q.monoids() {
                assert_eq!(measuring_object(&q, a, b).unwrap() == q.unit(), q.leq(a, b));
            }
        }
        let t = builtin(Builtin::Tropical(5));
        let top = t.top();
        let largest_sub = t.join_all(t.comonoids());
        for a in t.monoids() {
            assert_eq!(measuring_object(&t, a, top).unwrap(), largest_sub);
        }
        assert_eq!(measuring_object(&t, t.unit(), t.unit()).unwrap(), t.unit());
        let three = t.element("3").unwrap();
        assert_eq!(
            measuring_object(&t, three, top),
            Err(Error::NotAMonoid("3".into()))
        );
    }

    #[test]
    fn convolution_cases() {
        let q = builtin(Builtin::Boolean);
        let (zero, one) = (q.bottom(), q.unit());
        assert_eq!(convolution(&q, one, one).unwrap(), one);
        assert_eq!(convolution(&q, zero, one).unwrap(), one);
        let t = builtin(Builtin::Tropical(5));
        assert_eq!(t.name(convolution(&t, t.unit(), t.unit()).unwrap()), "0");
    }

    #[test]
    fn one_object_table_is_a_bijection() {
        for q in [builtin(Builtin::Boolean), builtin(Builtin::Tropical(4))] {
            let rows = one_object_correspondence(&q);
            assert!(!rows.is_empty());
            assert!(rows.iter().all(|r| r.monoid_maps == r.comonoid_maps));
        }
    }

    #[test]
    fn measuring_object_agrees_with_singleton_sweedler_hom() {
        for q in [
            builtin(Builtin::Boolean),
            builtin(Builtin::Tropical(3)),
            builtin(Builtin::Tropical(6)),
        ] {
            let q = Arc::new(q);
            let one = FinSet::singleton();
            for a in q.monoids() {
                for b in q.monoids() {
                    let mk = |e| {
                        VCategory::new(
                            VGraph::new(VMat::constant(q.clone(), one.clone(), one.clone(), e))
                                .unwrap(),
                        )
                        .unwrap()
                    };
                    let t = sweedler_hom(&mk(a), &mk(b), 4).unwrap();
                    assert_eq!(t.cocategory.get(0, 0), measuring_object(&q, a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn action_law_up_to_currying() {
        // K(C⊗D, A) = K(C, K(D, A)) after Y^(X×Z) ≅ (Y^Z)^X
        let q = boolean();
        let a = chain(&q, 2, "y");
        let (x, z) = (FinSet::indexed("x", 2), FinSet::indexed("z", 2));
        for c in all_cocategories(&q, &x) {
            for d in all_cocategories(&q, &z) {
                let cd = tensor_cocategory(&c, &d).unwrap();
                let lhs = k_functor(&cd, &a, 4096).unwrap();
                let inner = k_functor(&d, &a, 4096).unwrap();
                let rhs = k_functor(&c, &inner.category, 4096).unwrap();
                for h1 in 0..lhs.space.len() {
                    for h2 in 0..lhs.space.len() {
                        let c1 = curry(&lhs.space, &inner.space, &rhs.space, h1);
                        let c2 = curry(&lhs.space, &inner.space, &rhs.space, h2);
                        assert_eq!(lhs.category.get(h1, h2), rhs.category.get(c1, c2));
                    }
                }
            }
        }
    }

    #[test]
    fn composition_is_a_cofunctor() {
        let q = boolean();
        let cats = [chain(&q, 1, "a"), chain(&q, 2, "b"), {
            let x = FinSet::indexed("d", 2);
            VCategory::new(VGraph::new(id_mat(&x, q.clone())).unwrap()).unwrap()
        }];
        for a in &cats {
            for b in &cats {
                for c in &cats {
                    assert!(check_sweedler_composition(a, b, c, 4096).unwrap().passed());
                }
            }
        }
    }

    #[test]
    fn antitone_in_a_monotone_in_b() {
        let q = boolean();
        let x = FinSet::indexed("x", 2);
        let discrete = VCategory::new(VGraph::new(id_mat(&x, q.clone())).unwrap()).unwrap();
        let ch = chain(&q, 2, "x");
        let b = chain(&q, 2, "y");
        let small = sweedler_hom(&discrete, &b, 16).unwrap();
        let big = sweedler_hom(&ch, &b, 16).unwrap();
        for s in 0..4 {
            assert!(q.leq(big.cocategory.get(s, s), small.cocategory.get(s, s)));
        }
        let bd = VCategory::new(VGraph::new(id_mat(&FinSet::indexed("y", 2), q.clone())).unwrap())
            .unwrap();
        let lo = sweedler_hom(&ch, &bd, 16).unwrap();
        for s in 0..4 {
            assert!(q.leq(lo.cocategory.get(s, s), big.cocategory.get(s, s)));
        }
    }
}
