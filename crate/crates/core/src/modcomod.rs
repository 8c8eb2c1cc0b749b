//! Left V-modules over V-categories and left V-comodules over V-cocategories,
//! with singleton domain: a module is a column `Ψ: 1 → X`.

use std::sync::Arc;

use crate::base::{QElement, Quantale};
use crate::cert::Certificate;
use crate::enrichment::{k_functor, sweedler_hom, HomCategory, SweedlerHom};
use crate::error::{Error, Result};
use crate::expo::{FinFn, FinSet, FunctionSpace};
use crate::structures::{check_functor, VCategory, VCocategory, VCofunctor, VFunctor};
use crate::vmat::VMat;

fn column(base: Arc<Quantale>, x: &FinSet, values: &[QElement]) -> VMat {
    VMat::from_fn(base, FinSet::singleton(), x.clone(), |y, _| values[y])
}

fn check_column(m: &VMat, x: &FinSet, base: &Arc<Quantale>) -> Result<()> {
    if m.src().len() != 1 || m.dst() != x {
        return Err(Error::ShapeMismatch(format!("expected a column 1 → {x}")));
    }
    if !(Arc::ptr_eq(m.base(), base) || m.base() == base) {
        return Err(Error::BaseMismatch);
    }
    Ok(())
}

/// `A(x,x′) ⊗ Ψ(x′) ⊑ Ψ(x)`; witness `[x, x′]`.
pub fn check_module(a: &VCategory, psi: &VMat) -> Certificate {
    if check_column(psi, a.objects(), a.base()).is_err() {
        return Certificate::fail(
            "shape",
            vec![],
            "carrier is not a column over the objects of A",
        );
    }
    let q = a.base();
    let n = a.objects().len();
    for x in 0..n {
        for x2 in 0..n {
            if !q.leq(q.tensor(a.get(x, x2), psi.get(x2, 0)), psi.get(x, 0)) {
                return Certificate::fail(
                    "action",
                    vec![x, x2],
                    format!(
                        "A({x},{x2}) ⊗ Ψ({x2}) ⋢ Ψ({x})",
                        x = a.objects().name(x),
                        x2 = a.objects().name(x2)
                    ),
                );
            }
        }
    }
    Certificate::Pass
}

/// `Φ(x) ⊑ ⋁_{x′} C(x,x′) ⊗ Φ(x′)`; witness `[x, x]`.
pub fn check_comodule(c: &VCocategory, phi: &VMat) -> Certificate {
    if check_column(phi, c.objects(), c.base()).is_err() {
        return Certificate::fail(
            "shape",
            vec![],
            "carrier is not a column over the objects of C",
        );
    }
    let q = c.base();
    let n = c.objects().len();
    for x in 0..n {
        let rhs = q.join_all((0..n).map(|x2| q.tensor(c.get(x, x2), phi.get(x2, 0))));
        if !q.leq(phi.get(x, 0), rhs) {
            return Certificate::fail(
                "coaction",
                vec![x, x],
                format!("Φ({0}) ⋢ C({0},{0}) ⊗ Φ({0})", c.objects().name(x)),
            );
        }
    }
    Certificate::Pass
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VModule {
    over: VCategory,
    carrier: VMat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VComodule {
    over: VCocategory,
    carrier: VMat,
}

impl VModule {
    pub fn new(over: VCategory, carrier: VMat) -> Result<VModule> {
        check_column(&carrier, over.objects(), over.base())?;
        match check_module(&over, &carrier) {
            Certificate::Pass => Ok(VModule { over, carrier }),
            Certificate::Fail(v) => Err(Error::CertificateFailure(v.detail)),
        }
    }

    pub fn from_values(over: VCategory, values: &[QElement]) -> Result<VModule> {
        if values.len() != over.objects().len() {
            return Err(Error::ShapeMismatch("carrier length".into()));
        }
        let carrier = column(over.base().clone(), over.objects(), values);
        VModule::new(over, carrier)
    }

    pub fn over(&self) -> &VCategory {
        &self.over
    }

    pub fn carrier(&self) -> &VMat {
        &self.carrier
    }

    pub fn get(&self, x: usize) -> QElement {
        self.carrier.get(x, 0)
    }

    pub fn values(&self) -> Vec<QElement> {
        (0..self.over.objects().len())
            .map(|x| self.get(x))
            .collect()
    }
}

impl VComodule {
    pub fn new(over: VCocategory, carrier: VMat) -> Result<VComodule> {
        check_column(&carrier, over.objects(), over.base())?;
        match check_comodule(&over, &carrier) {
            Certificate::Pass => Ok(VComodule { over, carrier }),
            Certificate::Fail(v) => Err(Error::CertificateFailure(v.detail)),
        }
    }

    pub fn from_values(over: VCocategory, values: &[QElement]) -> Result<VComodule> {
        if values.len() != over.objects().len() {
            return Err(Error::ShapeMismatch("carrier length".into()));
        }
        let carrier = column(over.base().clone(), over.objects(), values);
        VComodule::new(over, carrier)
    }

    pub fn over(&self) -> &VCocategory {
        &self.over
    }

    pub fn carrier(&self) -> &VMat {
        &self.carrier
    }

    pub fn get(&self, x: usize) -> QElement {
        self.carrier.get(x, 0)
    }

    pub fn values(&self) -> Vec<QElement> {
        (0..self.over.objects().len())
            .map(|x| self.get(x))
            .collect()
    }
}

/// A morphism `(f, κ): (Ψ, A) → (Ξ, B)` of the global module category.
///
/// Checks, in order: `f` is a functor (witness `[x′, x]`), `Ψ(x) ⊑ Ξ(fx)`
/// (witness `[x]`), and `A(x,x′) ⊗ Ψ(x′) ⊑ B(fx,fx′) ⊗ Ξ(fx′) ⊑ Ξ(fx)`
/// (witness `[x, x′]`).
pub fn check_module_morphism(psi: &VModule, xi: &VModule, f: &FinFn) -> Certificate {
    let (a, b) = (psi.over(), xi.over());
    let q = a.base();
    check_functor(a, b, f)
        .and_then(|| {
            match (0..a.objects().len()).find(|&x| !q.leq(psi.get(x), xi.get(f.apply(x)))) {
                Some(x) => Certificate::fail(
                    "carrier",
                    vec![x],
                    format!("Ψ({}) ⋢ Ξ(f {0})", a.objects().name(x)),
                ),
                None => Certificate::Pass,
            }
        })
        .and_then(|| {
            let n = a.objects().len();
            for x in 0..n {
                for x2 in 0..n {
                    let lhs = q.tensor(a.get(x, x2), psi.get(x2));
                    let mid = q.tensor(b.get(f.apply(x), f.apply(x2)), xi.get(f.apply(x2)));
                    if !(q.leq(lhs, mid) && q.leq(mid, xi.get(f.apply(x)))) {
                        return Certificate::fail(
                            "action compatibility",
                            vec![x, x2],
                            format!("at ({}, {})", a.objects().name(x), a.objects().name(x2)),
                        );
                    }
                }
            }
            Certificate::Pass
        })
}

/// `f*Ξ`: the A-module `x ↦ Ξ(fx)`.
pub fn restrict_module(xi: &VModule, f: &VFunctor) -> Result<VModule> {
    if f.dst() != xi.over() {
        return Err(Error::ShapeMismatch(
            "functor codomain is not the category acting on Ξ".into(),
        ));
    }
    let values: Vec<QElement> = (0..f.src().objects().len())
        .map(|x| xi.get(f.map().apply(x)))
        .collect();
    VModule::from_values(f.src().clone(), &values)
}

/// `g⋆Φ`: the D-comodule `y ↦ ⋁_{gx=y} Φ(x)`.
pub fn corestrict_comodule(phi: &VComodule, g: &VCofunctor) -> Result<VComodule> {
    if g.src() != phi.over() {
        return Err(Error::ShapeMismatch(
            "cofunctor domain is not the cocategory coacting on Φ".into(),
        ));
    }
    let q = phi.over().base();
    let n = phi.over().objects().len();
    let values: Vec<QElement> = (0..g.dst().objects().len())
        .map(|y| {
            q.join_all(
                (0..n)
                    .filter(|&x| g.map().apply(x) == y)
                    .map(|x| phi.get(x)),
            )
        })
        .collect();
    VComodule::from_values(g.dst().clone(), &values)
}

/// `Hom(Φ,Ψ)` over `K(C,B)`, together with that hom category.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: VModule,
    pub hom: HomCategory,
}

impl HomModule {
    pub fn space(&self) -> &FunctionSpace {
        &self.hom.space
    }
}

/// `t ↦ ⋀_x [Φ(x), Ψ(tx)]` as a module over `K(C,B)`.
pub fn hom_module(phi: &VComodule, psi: &VModule, cap: usize) -> Result<HomModule> {
    let hom = k_functor(phi.over(), psi.over(), cap)?;
    let q = phi.over().base();
    let nx = phi.over().objects().len();
    let values: Vec<QElement> = (0..hom.space.len())
        .map(|t| q.meet_all((0..nx).map(|x| q.hom(phi.get(x), psi.get(hom.space.apply(t, x))))))
        .collect();
    let module = VModule::from_values(hom.category.clone(), &values)?;
    Ok(HomModule { module, hom })
}

/// `T̄(Ψ,Ξ)` over `T(A,B)`, with the iteration count of its fixpoint.
#[derive(Clone, Debug)]
pub struct MeasuringComodule {
    pub comodule: VComodule,
    pub sweedler: SweedlerHom,
    pub iterations: usize,
}

/// The largest comodule `Φ` over `T(A,B)` with `Φ(s) ⊗ Ψ(x) ⊑ Ξ(sx)`.
pub fn measuring_comodule(psi: &VModule, xi: &VModule, cap: usize) -> Result<MeasuringComodule> {
    let t = sweedler_hom(psi.over(), xi.over(), cap)?;
    let q = psi.over().base();
    let nx = psi.over().objects().len();
    let mut cur: Vec<QElement> = (0..t.space.len())
        .map(|s| q.meet_all((0..nx).map(|x| q.hom(psi.get(x), xi.get(t.space.apply(s, x))))))
        .collect();
    let mut iterations = 0;
    loop {
        let next: Vec<QElement> = cur
            .iter()
            .enumerate()
            .map(|(s, &v)| q.meet(v, q.tensor(t.cocategory.get(s, s), v)))
            .collect();
        iterations += 1;
        if next == cur {
            break;
        }
        cur = next;
    }
    let comodule = VComodule::from_values(t.cocategory.clone(), &cur)?;
    Ok(MeasuringComodule {
        comodule,
        sweedler: t,
        iterations,
    })
}

/// Whether `Φ′(s) ⊗ Ψ(x) ⊑ Ξ(sx)` for all `s, x`.
pub fn measures(phi: &[QElement], psi: &VModule, xi: &VModule, space: &FunctionSpace) -> bool {
    let q = psi.over().base();
    (0..space.len()).all(|s| {
        (0..psi.over().objects().len())
            .all(|x| q.leq(q.tensor(phi[s], psi.get(x)), xi.get(space.apply(s, x))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{builtin, Builtin};
    use crate::structures::{all_cocategories, VGraph};

    fn boolean() -> Arc<Quantale> {
        Arc::new(builtin(Builtin::Boolean))
    }

    // A(y, x) = 1 iff x ≤ y; modules are then down-sets
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

    fn bits(q: &Quantale, v: &[bool]) -> Vec<QElement> {
        v.iter()
            .map(|&b| if b { q.unit() } else { q.bottom() })
            .collect()
    }

    #[test]
    fn boolean_modules_are_down_sets() {
        // reading A(u,v) = 1 as u ≤ v, the action says v ∈ Ψ and u ≤ v ⇒ u ∈ Ψ
        let q = boolean();
        let x = FinSet::indexed("x", 3);
        let m = VMat::from_fn(q.clone(), x.clone(), x, |u, v| {
            if u <= v {
                q.unit()
            } else {
                q.bottom()
            }
        });
        let a = VCategory::new(VGraph::new(m).unwrap()).unwrap();
        for mask in 0..8u32 {
            let v: Vec<bool> = (0..3).map(|i| mask >> i & 1 == 1).collect();
            let down = (0..3).all(|u| (u..3).all(|w| !v[w] || v[u]));
            let col = column(q.clone(), a.objects(), &bits(&q, &v));
            assert_eq!(check_module(&a, &col).passed(), down, "{v:?}");
        }
        let bad = column(q.clone(), a.objects(), &bits(&q, &[false, true, false]));
        assert_eq!(
            check_module(&a, &bad).violation().unwrap().witness,
            vec![0, 1]
        );
    }

    #[test]
    fn tropical_distance_column_is_a_module() {
        let q = Arc::new(builtin(Builtin::Tropical(20)));
        let d = [[0, 2, 5], [2, 0, 3], [5, 3, 0]];
        let x = FinSet::indexed("x", 3);
        let a = VCategory::new(
            VGraph::new(VMat::from_fn(q.clone(), x.clone(), x.clone(), |y, x| {
                q.element(&d[y][x].to_string()).unwrap()
            }))
            .unwrap(),
        )
        .unwrap();
        for base in 0..3 {
            let vals: Vec<QElement> = (0..3)
                .map(|i| q.element(&d[i][base].to_string()).unwrap())
                .collect();
            assert!(VModule::from_values(a.clone(), &vals).is_ok());
        }
        assert!(VModule::from_values(a.clone(), &[q.bottom(); 3]).is_ok());
        // 1-Lipschitz fails: Ψ = (0, 9, 0) violates A(1,0) ⊗ Ψ(0) = 2 ⊑ 9 in the reversed order
        let bad = [
            q.element("0").unwrap(),
            q.element("9").unwrap(),
            q.element("0").unwrap(),
        ];
        assert!(VModule::from_values(a, &bad).is_err());
    }

    #[test]
    fn comodule_over_diagonal() {
        let q = boolean();
        let c = VCocategory::diagonal(q.clone(), FinSet::indexed("x", 2), &[q.unit(), q.bottom()])
            .unwrap();
        assert!(VComodule::from_values(c.clone(), &[q.unit(), q.bottom()]).is_ok());
        let col = column(q.clone(), c.objects(), &[q.bottom(), q.unit()]);
        assert_eq!(
            check_comodule(&c, &col).violation().unwrap().witness,
            vec![1, 1]
        );
    }

    #[test]
    fn module_morphisms() {
        let q = boolean();
        let a = chain(&q, 3, "x");
        let id = FinFn::identity(a.objects());
        let small = VModule::from_values(a.clone(), &bits(&q, &[false, false, true])).unwrap();
        let big = VModule::from_values(a.clone(), &bits(&q, &[false, true, true])).unwrap();
        assert!(check_module_morphism(&big, &big, &id).passed());
        assert!(check_module_morphism(&small, &big, &id).passed());
        let v = check_module_morphism(&big, &small, &id)
            .violation()
            .cloned()
            .unwrap();
        assert_eq!((v.law.as_str(), v.witness), ("carrier", vec![1]));
    }

    #[test]
    fn restriction_is_preimage() {
        let q = boolean();
        let a = chain(&q, 2, "w");
        let b = chain(&q, 3, "x");
        let f = VFunctor::new(
            a.clone(),
            b.clone(),
            FinFn::new(a.objects().clone(), b.objects().clone(), vec![0, 2]).unwrap(),
        )
        .unwrap();
        let xi = VModule::from_values(b.clone(), &bits(&q, &[false, true, true])).unwrap();
        let r = restrict_module(&xi, &f).unwrap();
        assert_eq!(r.values(), bits(&q, &[false, true]));
        assert_eq!(restrict_module(&xi, &VFunctor::identity(&b)).unwrap(), xi);
    }

    #[test]
    fn restriction_respects_composition() {
        let q = boolean();
        let (a, b, c) = (chain(&q, 2, "a"), chain(&q, 2, "b"), chain(&q, 3, "c"));
        let f = VFunctor::new(
            a.clone(),
            b.clone(),
            FinFn::new(a.objects().clone(), b.objects().clone(), vec![0, 0]).unwrap(),
        )
        .unwrap();
        let g = VFunctor::new(
            b.clone(),
            c.clone(),
            FinFn::new(b.objects().clone(), c.objects().clone(), vec![1, 2]).unwrap(),
        )
        .unwrap();
        let xi = VModule::from_values(c.clone(), &bits(&q, &[false, true, true])).unwrap();
        let gf = g.after(&f).unwrap();
        assert_eq!(
            restrict_module(&xi, &gf).unwrap(),
            restrict_module(&restrict_module(&xi, &g).unwrap(), &f).unwrap()
        );
    }

    #[test]
    fn corestriction_is_image_join() {
        let q = boolean();
        let x = FinSet::indexed("x", 3);
        let c = VCocategory::diagonal(q.clone(), x.clone(), &[q.unit(); 3]).unwrap();
        let y = FinSet::indexed("y", 3);
        let d = VCocategory::diagonal(q.clone(), y.clone(), &[q.unit(); 3]).unwrap();
        let g = VCofunctor::new(c.clone(), d, FinFn::new(x, y, vec![0, 0, 1]).unwrap()).unwrap();
        let phi = VComodule::from_values(c.clone(), &bits(&q, &[false, true, false])).unwrap();
        let pushed = corestrict_comodule(&phi, &g).unwrap();
        assert_eq!(pushed.values(), bits(&q, &[true, false, false]));
        // unit of the adjunction: Φ ⊑ g*g⋆Φ
        for x in 0..3 {
            assert!(q.leq(phi.get(x), pushed.get(g.map().apply(x))));
        }
        assert_eq!(
            corestrict_comodule(&phi, &VCofunctor::identity(&c)).unwrap(),
            phi
        );
    }

    #[test]
    fn hom_module_pointwise() {
        let q = boolean();
        let b = chain(&q, 2, "y");
        let x = FinSet::indexed("x", 2);
        let psi = VModule::from_values(b.clone(), &bits(&q, &[false, true])).unwrap();
        for c in all_cocategories(&q, &x) {
            for mask in 0..4u32 {
                let v: Vec<bool> = (0..2).map(|i| mask >> i & 1 == 1).collect();
                let Ok(phi) = VComodule::from_values(c.clone(), &bits(&q, &v)) else {
                    continue;
                };
                let h = hom_module(&phi, &psi, 64).unwrap();
                for t in 0..h.space().len() {
                    let expect = (0..2).all(|x| !v[x] || h.space().apply(t, x) == 1);
                    assert_eq!(h.module.get(t) == q.unit(), expect);
                }
            }
        }
    }

    #[test]
    fn hom_module_singletons() {
        let q = boolean();
        let b = chain(&q, 2, "y");
        let phi = VComodule::from_values(VCocategory::unit(q.clone()), &[q.unit()]).unwrap();
        let psi = VModule::from_values(b, &bits(&q, &[false, true])).unwrap();
        assert_eq!(
            hom_module(&phi, &psi, 16).unwrap().module.values(),
            psi.values()
        );
    }

    #[test]
    fn measuring_comodule_is_the_largest() {
        let q = boolean();
        let a = chain(&q, 2, "x");
        let b = chain(&q, 2, "y");
        for ma in 0..4u32 {
            for mb in 0..4u32 {
                let va: Vec<bool> = (0..2).map(|i| ma >> i & 1 == 1).collect();
                let vb: Vec<bool> = (0..2).map(|i| mb >> i & 1 == 1).collect();
                let (Ok(psi), Ok(xi)) = (
                    VModule::from_values(a.clone(), &bits(&q, &va)),
                    VModule::from_values(b.clone(), &bits(&q, &vb)),
                ) else {
                    continue;
                };
                let m = measuring_comodule(&psi, &xi, 64).unwrap();
                let t = &m.sweedler;
                let n = t.space.len();
                let mut best = vec![q.bottom(); n];
                for mask in 0..(1u32 << n) {
                    let cand: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                    let vals = bits(&q, &cand);
                    if VComodule::from_values(t.cocategory.clone(), &vals).is_ok()
                        && measures(&vals, &psi, &xi, &t.space)
                    {
                        for s in 0..n {
                            best[s] = q.join(best[s], vals[s]);
                        }
                    }
                }
                assert_eq!(m.comodule.values(), best);
            }
        }
    }

    #[test]
    fn measuring_comodule_with_bottom_source() {
        let q = boolean();
        let a = chain(&q, 2, "x");
        let psi = VModule::from_values(a.clone(), &[q.bottom(); 2]).unwrap();
        let xi = VModule::from_values(a.clone(), &[q.bottom(); 2]).unwrap();
        let m = measuring_comodule(&psi, &xi, 64).unwrap();
        assert_eq!(m.comodule.values(), m.sweedler.cocategory.diag());
    }
}
