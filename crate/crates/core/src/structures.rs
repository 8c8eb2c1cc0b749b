//! V-graphs, V-categories (monads in V-Mat) and V-cocategories (comonads).
//!
//! Convention: `A(y, x)` is the hom-object from `x` to `y`. Over a quantale
//! the counit of a cocategory forces every off-diagonal entry to bottom, so
//! cocategories are diagonal families of subidempotents below the unit.

use std::sync::Arc;

use crate::base::{QElement, Quantale};
use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::expo::{FinFn, FinSet};
use crate::vmat::{compose, id_mat, VMat};

/// An endo-matrix `G: X → X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VGraph(VMat);

impl VGraph {
    pub fn new(m: VMat) -> Result<VGraph> {
        if !m.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "a V-graph needs src = dst, got {} and {}",
                m.src(),
                m.dst()
            )));
        }
        Ok(VGraph(m))
    }

    pub fn matrix(&self) -> &VMat {
        &self.0
    }

    pub fn into_matrix(self) -> VMat {
        self.0
    }

    pub fn objects(&self) -> &FinSet {
        self.0.src()
    }

    pub fn base(&self) -> &Arc<Quantale> {
        self.0.base()
    }

    pub fn get(&self, y: usize, x: usize) -> QElement {
        self.0.get(y, x)
    }
}

/// A V-graph certified to satisfy `id ⊑ A` and `A∘A ⊑ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VCategory {
    graph: VGraph,
}

/// A V-graph certified to satisfy `C ⊑ id` and `C ⊑ C∘C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VCocategory {
    graph: VGraph,
}

macro_rules! graph_accessors {
    ($ty:ty) => {
        impl $ty {
            pub fn graph(&self) -> &VGraph {
                &self.graph
            }

            pub fn matrix(&self) -> &VMat {
                self.graph.matrix()
            }

            pub fn objects(&self) -> &FinSet {
                self.graph.objects()
            }

            pub fn base(&self) -> &Arc<Quantale> {
                self.graph.base()
            }

            pub fn get(&self, y: usize, x: usize) -> QElement {
                self.graph.get(y, x)
            }
        }
    };
}

graph_accessors!(VCategory);
graph_accessors!(VCocategory);

impl VCategory {
    pub fn new(graph: VGraph) -> Result<VCategory> {
        match check_category(&graph) {
            Certificate::Pass => Ok(VCategory { graph }),
            Certificate::Fail(v) => Err(Error::CertificateFailure(format!(
                "{}: {}",
                v.law, v.detail
            ))),
        }
    }

    /// The one-object category with hom-object `I` on a singleton.
    pub fn unit(base: Arc<Quantale>) -> VCategory {
        VCategory {
            graph: VGraph(id_mat(&FinSet::singleton(), base)),
        }
    }
}

impl VCocategory {
    pub fn new(graph: VGraph) -> Result<VCocategory> {
        match check_cocategory(&graph) {
            Certificate::Pass => Ok(VCocategory { graph }),
            Certificate::Fail(v) => Err(Error::CertificateFailure(format!(
                "{}: {}",
                v.law, v.detail
            ))),
        }
    }

    /// Builds the diagonal cocategory with the given diagonal.
    pub fn diagonal(
        base: Arc<Quantale>,
        objects: FinSet,
        diag: &[QElement],
    ) -> Result<VCocategory> {
        if diag.len() != objects.len() {
            return Err(Error::ShapeMismatch("diagonal length".into()));
        }
        let bot = base.bottom();
        let m = VMat::from_fn(base, objects.clone(), objects, |y, x| {
            if y == x {
                diag[x]
            } else {
                bot
            }
        });
        VCocategory::new(VGraph(m))
    }

    pub fn unit(base: Arc<Quantale>) -> VCocategory {
        VCocategory {
            graph: VGraph(id_mat(&FinSet::singleton(), base)),
        }
    }

    pub fn diag(&self) -> Vec<QElement> {
        (0..self.objects().len()).map(|x| self.get(x, x)).collect()
    }
}

/// Checks the unit law first, then multiplication.
///
/// Witnesses: unit failures carry `[x]`; multiplication failures carry
/// `[z, y, x]` with `A(z,y) ⊗ A(y,x) ⋢ A(z,x)`.
pub fn check_category(g: &VGraph) -> Certificate {
    let q = g.base();
    let objs = g.objects();
    let n = objs.len();
    if let Some(x) = (0..n).find(|&x| !q.leq(q.unit(), g.get(x, x))) {
        return Certificate::fail("unit", vec![x], format!("I ⋢ A({0},{0})", objs.name(x)));
    }
    for z in 0..n {
        for y in 0..n {
            for x in 0..n {
                if !q.leq(q.tensor(g.get(z, y), g.get(y, x)), g.get(z, x)) {
                    return Certificate::fail(
                        "multiplication",
                        vec![z, y, x],
                        format!(
                            "A({z},{y}) ⊗ A({y},{x}) ⋢ A({z},{x})",
                            z = objs.name(z),
                            y = objs.name(y),
                            x = objs.name(x)
                        ),
                    );
                }
            }
        }
    }
    Certificate::Pass
}

/// Checks the counit (`C ⊑ id`) and comultiplication (`C ⊑ C∘C`).
///
/// Witnesses are `[y, x]` for the offending entry.
pub fn check_cocategory(g: &VGraph) -> Certificate {
    let q = g.base();
    let objs = g.objects();
    let n = objs.len();
    let id = id_mat(objs, q.clone());
    for y in 0..n {
        for x in 0..n {
            if !q.leq(g.get(y, x), id.get(y, x)) {
                return Certificate::fail(
                    "counit",
                    vec![y, x],
                    format!("C({},{}) ⋢ 1({0},{1})", objs.name(y), objs.name(x)),
                );
            }
        }
    }
    let cc = compose(g.matrix(), g.matrix()).expect("square");
    for y in 0..n {
        for x in 0..n {
            if !q.leq(g.get(y, x), cc.get(y, x)) {
                return Certificate::fail(
                    "comultiplication",
                    vec![y, x],
                    format!("C({},{}) ⋢ (C∘C)({0},{1})", objs.name(y), objs.name(x)),
                );
            }
        }
    }
    Certificate::Pass
}

/// A fixpoint result with the number of full-matrix iterations it took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixpoint<T> {
    pub value: T,
    pub iterations: usize,
}

/// Least `F` with `id ∨ G ∨ F∘F ⊑ F`, i.e. `⋁_n Gⁿ`, by Jacobi iteration
/// from bottom.
pub fn free_category(g: &VGraph) -> Fixpoint<VCategory> {
    let q = g.base().clone();
    let objs = g.objects().clone();
    let seed = id_mat(&objs, q.clone())
        .join(g.matrix())
        .expect("same shape");
    let mut cur = VMat::bottom(q, objs.clone(), objs);
    let mut iterations = 0;
    loop {
        let next = seed
            .join(&compose(&cur, &cur).expect("square"))
            .expect("same shape");
        iterations += 1;
        if next == cur {
            let graph = VGraph(cur);
            debug_assert!(check_category(&graph).passed());
            return Fixpoint {
                value: VCategory { graph },
                iterations,
            };
        }
        cur = next;
    }
}

/// Largest `C` with `C ⊑ G`, `C ⊑ id` and `C ⊑ C∘C`, by decreasing
/// iteration `C ← C ∧ C∘C` from `G ∧ id`.
pub fn cofree_cocategory(g: &VGraph) -> Fixpoint<VCocategory> {
    let q = g.base().clone();
    let objs = g.objects().clone();
    let mut cur = id_mat(&objs, q).meet(g.matrix()).expect("same shape");
    let mut iterations = 0;
    loop {
        let next = cur
            .meet(&compose(&cur, &cur).expect("square"))
            .expect("same shape");
        iterations += 1;
        if next == cur {
            let graph = VGraph(cur);
            debug_assert!(check_cocategory(&graph).passed());
            return Fixpoint {
                value: VCocategory { graph },
                iterations,
            };
        }
        cur = next;
    }
}

/// Pullback `f*∘B∘f⋆`, i.e. `(x′,x) ↦ B(fx′, fx)`.
pub fn restrict(b: &VCategory, f: &FinFn) -> Result<VCategory> {
    if f.dst() != b.objects() {
        return Err(Error::ShapeMismatch(format!(
            "{} is not the object set of B",
            f.dst()
        )));
    }
    let m = VMat::from_fn(
        b.base().clone(),
        f.src().clone(),
        f.src().clone(),
        |y, x| b.get(f.apply(y), f.apply(x)),
    );
    VCategory::new(VGraph(m))
}

/// Pushforward `f⋆∘C∘f*`, i.e. `(y′,y) ↦ ⋁_{fx′=y′, fx=y} C(x′,x)`.
pub fn corestrict(c: &VCocategory, f: &FinFn) -> Result<VCocategory> {
    if f.src() != c.objects() {
        return Err(Error::ShapeMismatch(format!(
            "{} is not the object set of C",
            f.src()
        )));
    }
    let q = c.base().clone();
    let n = f.src().len();
    let m = VMat::from_fn(q.clone(), f.dst().clone(), f.dst().clone(), |y2, y| {
        q.join_all(
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| f.apply(a) == y2 && f.apply(b) == y)
                .map(|(a, b)| c.get(a, b)),
        )
    });
    VCocategory::new(VGraph(m))
}

fn check_pointwise(src: &VGraph, dst: &VGraph, f: &FinFn, law: &str) -> Certificate {
    if f.src() != src.objects() || f.dst() != dst.objects() {
        return Certificate::fail(
            law,
            vec![],
            format!("map {}→{} does not match the object sets", f.src(), f.dst()),
        );
    }
    let q = src.base();
    let n = src.objects().len();
    for y in 0..n {
        for x in 0..n {
            if !q.leq(src.get(y, x), dst.get(f.apply(y), f.apply(x))) {
                return Certificate::fail(
                    law,
                    vec![y, x],
                    format!(
                        "entry ({},{}) ⋢ image ({},{})",
                        src.objects().name(y),
                        src.objects().name(x),
                        dst.objects().name(f.apply(y)),
                        dst.objects().name(f.apply(x))
                    ),
                );
            }
        }
    }
    Certificate::Pass
}

/// `A(x′,x) ⊑ B(fx′,fx)` for all `x′, x`; witness `[x′, x]`.
pub fn check_functor(a: &VCategory, b: &VCategory, f: &FinFn) -> Certificate {
    check_pointwise(a.graph(), b.graph(), f, "functor")
}

/// `C(x′,x) ⊑ D(fx′,fx)` for all `x′, x`; witness `[x′, x]`.
pub fn check_cofunctor(c: &VCocategory, d: &VCocategory, f: &FinFn) -> Certificate {
    check_pointwise(c.graph(), d.graph(), f, "cofunctor")
}

/// Graph-level version of [`check_functor`], used for universal properties.
pub fn check_graph_map(g: &VGraph, h: &VGraph, f: &FinFn) -> Certificate {
    check_pointwise(g, h, f, "graph map")
}

/// A certified V-functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VFunctor {
    src: VCategory,
    dst: VCategory,
    map: FinFn,
}

impl VFunctor {
    pub fn new(src: VCategory, dst: VCategory, map: FinFn) -> Result<VFunctor> {
        match check_functor(&src, &dst, &map) {
            Certificate::Pass => Ok(VFunctor { src, dst, map }),
            Certificate::Fail(v) => Err(Error::CertificateFailure(v.detail)),
        }
    }

    pub fn identity(a: &VCategory) -> VFunctor {
        VFunctor {
            src: a.clone(),
            dst: a.clone(),
            map: FinFn::identity(a.objects()),
        }
    }

    pub fn src(&self) -> &VCategory {
        &self.src
    }

    pub fn dst(&self) -> &VCategory {
        &self.dst
    }

    pub fn map(&self) -> &FinFn {
        &self.map
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &VFunctor) -> Result<VFunctor> {
        VFunctor::new(
            first.src.clone(),
            self.dst.clone(),
            self.map.after(&first.map)?,
        )
    }
}

/// A certified V-cofunctor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VCofunctor {
    src: VCocategory,
    dst: VCocategory,
    map: FinFn,
}

impl VCofunctor {
    pub fn new(src: VCocategory, dst: VCocategory, map: FinFn) -> Result<VCofunctor> {
        match check_cofunctor(&src, &dst, &map) {
            Certificate::Pass => Ok(VCofunctor { src, dst, map }),
            Certificate::Fail(v) => Err(Error::CertificateFailure(v.detail)),
        }
    }

    pub fn identity(c: &VCocategory) -> VCofunctor {
        VCofunctor {
            src: c.clone(),
            dst: c.clone(),
            map: FinFn::identity(c.objects()),
        }
    }

    pub fn src(&self) -> &VCocategory {
        &self.src
    }

    pub fn dst(&self) -> &VCocategory {
        &self.dst
    }

    pub fn map(&self) -> &FinFn {
        &self.map
    }
}

/// Every cocategory on `objects`: all diagonals of comonoid elements.
pub fn all_cocategories(base: &Arc<Quantale>, objects: &FinSet) -> Vec<VCocategory> {
    let comonoids = base.comonoids();
    let n = objects.len();
    let total = comonoids.len().pow(n as u32);
    (0..total)
        .map(|mut k| {
            let diag: Vec<QElement> = (0..n)
                .map(|_| {
                    let e = comonoids[k % comonoids.len()];
                    k /= comonoids.len();
                    e
                })
                .collect();
            VCocategory::diagonal(base.clone(), objects.clone(), &diag).expect("comonoid diagonals")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{builtin, Builtin};

    fn boolean() -> Arc<Quantale> {
        Arc::new(builtin(Builtin::Boolean))
    }

    fn graph(q: &Arc<Quantale>, n: usize, entry: impl Fn(usize, usize) -> &'static str) -> VGraph {
        let x = FinSet::indexed("x", n);
        VGraph::new(VMat::from_fn(q.clone(), x.clone(), x, |y, x| {
            q.element(entry(y, x)).unwrap()
        }))
        .unwrap()
    }

    #[test]
    fn preorder_is_a_category() {
        let q = boolean();
        // chain x0 ≤ x1 ≤ x2, A(y,x) = 1 iff x ≤ y
        let g = graph(&q, 3, |y, x| if x <= y { "1" } else { "0" });
        assert!(check_category(&g).passed());
    }

    #[test]
    fn loopless_two_cycle_fails_unit() {
        let q = boolean();
        let g = graph(&q, 2, |y, x| if y != x { "1" } else { "0" });
        let v = check_category(&g).violation().cloned().unwrap();
        assert_eq!(v.law, "unit");
        assert_eq!(v.witness, vec![0]);
    }

    #[test]
    fn triangle_violation_is_found() {
        let q = Arc::new(builtin(Builtin::Tropical(20)));
        // d(0,1)=1, d(1,2)=1, d(0,2)=5 breaks the triangle inequality
        let d = [[0, 1, 5], [1, 0, 1], [5, 1, 0]];
        let x = FinSet::indexed("x", 3);
        let g = VGraph::new(VMat::from_fn(q.clone(), x.clone(), x, |y, x| {
            q.element(&d[y][x].to_string()).unwrap()
        }))
        .unwrap();
        let v = check_category(&g).violation().cloned().unwrap();
        assert_eq!(v.law, "multiplication");
        let [z, y, x] = [v.witness[0], v.witness[1], v.witness[2]];
        assert!(d[z][y] + d[y][x] < d[z][x]);
    }

    #[test]
    fn tropical_closure_matches_shortest_paths() {
        let q = Arc::new(builtin(Builtin::Tropical(20)));
        let edges = [(0usize, 1usize, "2"), (1, 2, "3"), (0, 2, "10")];
        let x = FinSet::indexed("x", 3);
        // A(y, x) is the hom from x to y
        let g = VGraph::new(VMat::from_fn(q.clone(), x.clone(), x, |y, x| {
            edges
                .iter()
                .find(|&&(s, t, _)| s == x && t == y)
                .map(|&(_, _, w)| q.element(w).unwrap())
                .unwrap_or(q.bottom())
        }))
        .unwrap();
        let free = free_category(&g).value;
        assert_eq!(q.name(free.get(2, 0)), "5");
        for i in 0..3 {
            assert_eq!(q.name(free.get(i, i)), "0");
        }
        assert_eq!(free.get(0, 2), q.bottom());
    }

    #[test]
    fn closure_of_a_category_is_itself() {
        let q = boolean();
        let g = graph(&q, 3, |y, x| if x <= y { "1" } else { "0" });
        assert_eq!(free_category(&g).value.graph(), &g);
    }

    #[test]
    fn cofree_of_identity_and_tropical_diagonal() {
        let q = boolean();
        let id = VGraph::new(id_mat(&FinSet::indexed("x", 3), q.clone())).unwrap();
        assert_eq!(cofree_cocategory(&id).value.graph(), &id);

        let t = Arc::new(builtin(Builtin::Tropical(7)));
        let x = FinSet::indexed("x", 3);
        let diag = ["0", "1", "inf"];
        let g = VGraph::new(VMat::from_fn(t.clone(), x.clone(), x, |y, x| {
            if y == x {
                t.element(diag[x]).unwrap()
            } else {
                t.bottom()
            }
        }))
        .unwrap();
        let c = cofree_cocategory(&g).value;
        // exhaustive scan of diagonal candidates c ⊑ G(x,x) with c ⊑ c⊗c, c ⊑ I
        for (i, d) in diag.iter().enumerate() {
            let bound = t.element(d).unwrap();
            let best = t
                .join_all(t.elements().filter(|&c| {
                    t.leq(c, bound) && t.leq(c, t.unit()) && t.leq(c, t.tensor(c, c))
                }));
            assert_eq!(c.get(i, i), best);
        }
        assert_eq!(
            c.diag().iter().map(|&e| t.name(e)).collect::<Vec<_>>(),
            ["0", "7", "inf"]
        );
    }

    #[test]
    fn restriction_along_identity_and_injection() {
        let q = boolean();
        let b = VCategory::new(graph(&q, 3, |y, x| if x <= y { "1" } else { "0" })).unwrap();
        assert_eq!(restrict(&b, &FinFn::identity(b.objects())).unwrap(), b);
        let f = FinFn::new(FinSet::indexed("w", 2), b.objects().clone(), vec![2, 0]).unwrap();
        let r = restrict(&b, &f).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(r.get(i, j), b.get(f.apply(i), f.apply(j)));
            }
        }
    }

    #[test]
    fn corestriction_merges_by_join() {
        let q = boolean();
        let x = FinSet::indexed("x", 3);
        let c = VCocategory::diagonal(q.clone(), x.clone(), &[q.unit(), q.bottom(), q.bottom()])
            .unwrap();
        let f = FinFn::new(x.clone(), FinSet::indexed("y", 3), vec![1, 1, 2]).unwrap();
        let d = corestrict(&c, &f).unwrap();
        assert_eq!(d.diag(), vec![q.bottom(), q.unit(), q.bottom()]);
        assert_eq!(corestrict(&c, &FinFn::identity(&x)).unwrap(), c);
    }

    #[test]
    fn functor_checks() {
        let q = boolean();
        let chain = VCategory::new(graph(&q, 2, |y, x| if x <= y { "1" } else { "0" })).unwrap();
        assert!(check_functor(&chain, &chain, &FinFn::identity(chain.objects())).passed());
        let swap =
            FinFn::new(chain.objects().clone(), chain.objects().clone(), vec![1, 0]).unwrap();
        let v = check_functor(&chain, &chain, &swap)
            .violation()
            .cloned()
            .unwrap();
        assert_eq!(v.witness, vec![1, 0]);
    }

    #[test]
    fn enumerated_cocategories() {
        let q = Arc::new(builtin(Builtin::Tropical(3)));
        // comonoids: 0, 3 (saturation) and inf
        let cs = all_cocategories(&q, &FinSet::indexed("z", 2));
        assert_eq!(cs.len(), 9);
    }
}
