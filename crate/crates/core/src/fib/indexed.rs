//! Indexed categories (pseudofunctors `X^op → Cat` with explicit coherence
//! isomorphisms) and the Grothendieck construction.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{FinCategory, FinCategorySpec, FinFunctor, Morphism};
use super::fibration::Fibration;
use crate::error::{Error, Result};

/// `M: X^op → Cat` given by fibres, reindexing functors and coherence data.
///
/// `reindex[f]` for `f: X → Y` is `Mf: M(Y) → M(X)`. For composable `f: X → Y`,
/// `g: Y → Z`, `delta[(f,g)][C]` is `(δ_{f,g})_C: Mf(Mg C) → M(g∘f) C` in
/// `M(X)`; `gamma[X][A]` is `A → M(1_X) A`.
#[derive(Clone, Debug)]
pub struct IndexedCategory {
    base: Arc<FinCategory>,
    fibres: Vec<Arc<FinCategory>>,
    reindex: Vec<FinFunctor>,
    delta: BTreeMap<(usize, usize), Vec<usize>>,
    gamma: Vec<Vec<usize>>,
}

fn coherence(msg: String) -> Error {
    Error::CoherenceFailure(msg)
}

impl IndexedCategory {
    pub fn new(
        base: Arc<FinCategory>,
        fibres: Vec<Arc<FinCategory>>,
        reindex: Vec<FinFunctor>,
        delta: BTreeMap<(usize, usize), Vec<usize>>,
        gamma: Vec<Vec<usize>>,
    ) -> Result<IndexedCategory> {
        let m = IndexedCategory {
            base,
            fibres,
            reindex,
            delta,
            gamma,
        };
        m.audit()?;
        Ok(m)
    }

    /// Strict input: `δ` and `γ` are identities, so `Mf∘Mg = M(g∘f)` and
    /// `M(1) = 1` must hold on the nose.
    pub fn strict(
        base: Arc<FinCategory>,
        fibres: Vec<Arc<FinCategory>>,
        reindex: Vec<FinFunctor>,
    ) -> Result<IndexedCategory> {
        if reindex.len() != base.morphism_count() || fibres.len() != base.object_count() {
            return Err(Error::ShapeMismatch(
                "one fibre per object and one functor per morphism".into(),
            ));
        }
        let mut delta = BTreeMap::new();
        for f in 0..base.morphism_count() {
            for g in 0..base.morphism_count() {
                if base.try_comp(g, f).is_some() {
                    let gf = base.comp(g, f);
                    let x = &fibres[base.src(f)];
                    let z = &fibres[base.dst(g)];
                    let comps = (0..z.object_count())
                        .map(|c| {
                            let lhs = reindex[f].ob(reindex[g].ob(c));
                            let rhs = reindex[gf].ob(c);
                            if lhs != rhs {
                                return Err(coherence(format!(
                                    "Mf(Mg C) ≠ M(gf) C for f = {}, g = {}, C = {}",
                                    base.morphism(f).name,
                                    base.morphism(g).name,
                                    z.objects()[c]
                                )));
                            }
                            Ok(x.id(lhs))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    delta.insert((f, g), comps);
                }
            }
        }
        let gamma = fibres
            .iter()
            .enumerate()
            .map(|(xo, fib)| {
                (0..fib.object_count())
                    .map(|a| {
                        let img = reindex[base.id(xo)].ob(a);
                        if img != a {
                            return Err(coherence(format!(
                                "M(1) moves an object of fibre {}",
                                base.objects()[xo]
                            )));
                        }
                        Ok(fib.id(a))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        IndexedCategory::new(base, fibres, reindex, delta, gamma)
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn fibre(&self, x: usize) -> &Arc<FinCategory> {
        &self.fibres[x]
    }

    pub fn fibres(&self) -> &[Arc<FinCategory>] {
        &self.fibres
    }

    pub fn reindex(&self, f: usize) -> &FinFunctor {
        &self.reindex[f]
    }

    pub fn delta(&self, f: usize, g: usize, c: usize) -> usize {
        self.delta[&(f, g)][c]
    }

    pub fn gamma(&self, x: usize, a: usize) -> usize {
        self.gamma[x][a]
    }

    pub fn is_strict(&self) -> bool {
        let ids = |fib: &FinCategory, comps: &[usize]| comps.iter().all(|&m| fib.is_identity(m));
        self.delta
            .iter()
            .all(|(&(f, _), c)| ids(&self.fibres[self.base.src(f)], c))
            && self
                .gamma
                .iter()
                .enumerate()
                .all(|(x, c)| ids(&self.fibres[x], c))
    }

    fn audit(&self) -> Result<()> {
        let b = &*self.base;
        if self.fibres.len() != b.object_count() || self.reindex.len() != b.morphism_count() {
            return Err(Error::ShapeMismatch(
                "one fibre per object and one functor per morphism".into(),
            ));
        }
        for f in 0..b.morphism_count() {
            let r = &self.reindex[f];
            let ok = (Arc::ptr_eq(r.src(), &self.fibres[b.dst(f)])
                || **r.src() == *self.fibres[b.dst(f)])
                && (Arc::ptr_eq(r.dst(), &self.fibres[b.src(f)])
                    || **r.dst() == *self.fibres[b.src(f)]);
            if !ok {
                return Err(Error::ShapeMismatch(format!(
                    "reindexing along {} must go from the fibre over its codomain to the fibre over its domain",
                    b.morphism(f).name
                )));
            }
        }
        // γ: type, invertibility, naturality
        if self.gamma.len() != b.object_count() {
            return Err(Error::ShapeMismatch("one γ family per base object".into()));
        }
        for x in 0..b.object_count() {
            let fib = &self.fibres[x];
            let m1 = &self.reindex[b.id(x)];
            if self.gamma[x].len() != fib.object_count() {
                return Err(Error::ShapeMismatch(
                    "γ needs one component per fibre object".into(),
                ));
            }
            for a in 0..fib.object_count() {
                let c = self.gamma[x][a];
                if c >= fib.morphism_count() || fib.src(c) != a || fib.dst(c) != m1.ob(a) {
                    return Err(coherence(format!(
                        "γ at {} has the wrong type",
                        fib.objects()[a]
                    )));
                }
                if !fib.is_iso(c) {
                    return Err(coherence(format!(
                        "γ at {} is not invertible",
                        fib.objects()[a]
                    )));
                }
            }
            for phi in 0..fib.morphism_count() {
                let (a, a2) = (fib.src(phi), fib.dst(phi));
                if fib.comp(m1.mor(phi), self.gamma[x][a]) != fib.comp(self.gamma[x][a2], phi) {
                    return Err(coherence(format!(
                        "γ is not natural at {}",
                        fib.morphism(phi).name
                    )));
                }
            }
        }
        // δ: presence, type, invertibility, naturality
        for f in 0..b.morphism_count() {
            for g in 0..b.morphism_count() {
                let Some(gf) = b.try_comp(g, f) else { continue };
                let comps = self.delta.get(&(f, g)).ok_or_else(|| {
                    coherence(format!(
                        "missing δ for ({}, {})",
                        b.morphism(f).name,
                        b.morphism(g).name
                    ))
                })?;
                let x = &self.fibres[b.src(f)];
                let z = &self.fibres[b.dst(g)];
                let (mf, mg, mgf) = (&self.reindex[f], &self.reindex[g], &self.reindex[gf]);
                if comps.len() != z.object_count() {
                    return Err(Error::ShapeMismatch(
                        "δ needs one component per object of the last fibre".into(),
                    ));
                }
                for c in 0..z.object_count() {
                    let d = comps[c];
                    if d >= x.morphism_count()
                        || x.src(d) != mf.ob(mg.ob(c))
                        || x.dst(d) != mgf.ob(c)
                    {
                        return Err(coherence(format!(
                            "δ({},{}) at {} has the wrong type",
                            b.morphism(f).name,
                            b.morphism(g).name,
                            z.objects()[c]
                        )));
                    }
                    if !x.is_iso(d) {
                        return Err(coherence(format!(
                            "δ({},{}) at {} is not invertible",
                            b.morphism(f).name,
                            b.morphism(g).name,
                            z.objects()[c]
                        )));
                    }
                }
                for psi in 0..z.morphism_count() {
                    let (c, c2) = (z.src(psi), z.dst(psi));
                    if x.comp(mgf.mor(psi), comps[c]) != x.comp(comps[c2], mf.mor(mg.mor(psi))) {
                        return Err(coherence(format!(
                            "δ({},{}) is not natural at {}",
                            b.morphism(f).name,
                            b.morphism(g).name,
                            z.morphism(psi).name
                        )));
                    }
                }
            }
        }
        // associativity coherence
        for f in 0..b.morphism_count() {
            for g in 0..b.morphism_count() {
                let Some(gf) = b.try_comp(g, f) else { continue };
                for h in 0..b.morphism_count() {
                    let Some(hg) = b.try_comp(h, g) else { continue };
                    let x = &self.fibres[b.src(f)];
                    let z = &self.fibres[b.dst(h)];
                    let mf = &self.reindex[f];
                    let mh = &self.reindex[h];
                    for c in 0..z.object_count() {
                        let lhs = x.comp(self.delta(f, hg, c), mf.mor(self.delta(g, h, c)));
                        let rhs = x.comp(self.delta(gf, h, c), self.delta(f, g, mh.ob(c)));
                        if lhs != rhs {
                            return Err(coherence(format!(
                                "associativity coherence fails at ({}, {}, {}) and {}",
                                b.morphism(f).name,
                                b.morphism(g).name,
                                b.morphism(h).name,
                                z.objects()[c]
                            )));
                        }
                    }
                }
            }
        }
        // unit coherence
        for f in 0..b.morphism_count() {
            let (xo, yo) = (b.src(f), b.dst(f));
            let x = &self.fibres[xo];
            let mf = &self.reindex[f];
            for c in 0..self.fibres[yo].object_count() {
                let right = x.comp(self.delta(f, b.id(yo), c), mf.mor(self.gamma[yo][c]));
                let left = x.comp(self.delta(b.id(xo), f, c), self.gamma[xo][mf.ob(c)]);
                let id = x.id(mf.ob(c));
                if right != id || left != id {
                    return Err(coherence(format!(
                        "unit coherence fails at {} and {}",
                        b.morphism(f).name,
                        self.fibres[yo].objects()[c]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Labels of the total category built by [`grothendieck`].
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub fibration: Fibration,
    /// `(A, X)` for each total object.
    pub objects: Vec<(usize, usize)>,
    /// `(φ, f)` for each total morphism.
    pub morphisms: Vec<(usize, usize)>,
}

impl Grothendieck {
    pub fn object(&self, a: usize, x: usize) -> usize {
        self.objects
            .iter()
            .position(|&o| o == (a, x))
            .expect("object of the total category")
    }
}

/// The total category of pairs with its projection and the cleavage
/// `Cart(f, (B,Y)) = (1_{MfB}, f)`.
pub fn grothendieck(m: &IndexedCategory, cap: usize) -> Result<Grothendieck> {
    let b = &*m.base;
    let mut objects = Vec::new();
    let mut offset = Vec::new();
    for x in 0..b.object_count() {
        offset.push(objects.len());
        for a in 0..m.fibres[x].object_count() {
            objects.push((a, x));
        }
    }
    let mut count = 0usize;
    for f in 0..b.morphism_count() {
        let (x, y) = (b.src(f), b.dst(f));
        for a in 0..m.fibres[x].object_count() {
            for bb in 0..m.fibres[y].object_count() {
                count += m.fibres[x].hom(a, m.reindex[f].ob(bb)).len();
            }
        }
    }
    if count > cap {
        return Err(Error::TooLarge(format!(
            "total category has {count} morphisms, cap is {cap}"
        )));
    }
    let mut morphisms = Vec::with_capacity(count);
    let mut labels = Vec::with_capacity(count);
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for f in 0..b.morphism_count() {
        let (x, y) = (b.src(f), b.dst(f));
        let fx = &m.fibres[x];
        for a in 0..fx.object_count() {
            for bb in 0..m.fibres[y].object_count() {
                for &phi in fx.hom(a, m.reindex[f].ob(bb)) {
                    index.insert((phi, f, bb), morphisms.len());
                    morphisms.push(Morphism {
                        name: format!("({},{})", fx.morphism(phi).name, b.morphism(f).name),
                        src: offset[x] + a,
                        dst: offset[y] + bb,
                    });
                    labels.push((phi, f));
                }
            }
        }
    }
    // (φ,f) alone is ambiguous when f* identifies several targets
    let mut uses: HashMap<String, usize> = HashMap::new();
    for mor in &morphisms {
        *uses.entry(mor.name.clone()).or_default() += 1;
    }
    for mor in &mut morphisms {
        if uses[&mor.name] > 1 {
            let (bb, y) = objects[mor.dst];
            mor.name = format!("{}→{}", mor.name, m.fibres[y].objects()[bb]);
        }
    }
    let lookup = |phi: usize, f: usize, target: usize| index[&(phi, f, objects[target].0)];
    let identity: Vec<usize> = objects
        .iter()
        .enumerate()
        .map(|(i, &(a, x))| lookup(m.gamma[x][a], b.id(x), i))
        .collect();
    let names: Vec<String> = objects
        .iter()
        .map(|&(a, x)| format!("({},{})", m.fibres[x].objects()[a], b.objects()[x]))
        .collect();
    let total = FinCategory::build(names, morphisms.clone(), identity, |g_idx, f_idx| {
        let (phi, f) = labels[f_idx];
        let (psi, g) = labels[g_idx];
        let x = b.src(f);
        let c = objects[morphisms[g_idx].dst].0;
        let fx = &m.fibres[x];
        let composite = fx.comp_path(&[phi, m.reindex[f].mor(psi), m.delta(f, g, c)]);
        lookup(composite, b.comp(g, f), morphisms[g_idx].dst)
    })?;
    let total = Arc::new(total);
    let projection = FinFunctor::new(
        total.clone(),
        m.base.clone(),
        objects.iter().map(|&(_, x)| x).collect(),
        labels.iter().map(|&(_, f)| f).collect(),
    )?;
    let mut cleavage = BTreeMap::new();
    for f in 0..b.morphism_count() {
        let (x, y) = (b.src(f), b.dst(f));
        for bb in 0..m.fibres[y].object_count() {
            let fb = m.reindex[f].ob(bb);
            cleavage.insert(
                (f, offset[y] + bb),
                lookup(m.fibres[x].id(fb), f, offset[y] + bb),
            );
        }
    }
    let fibration = Fibration::new(projection, cleavage)?;
    Ok(Grothendieck {
        fibration,
        objects,
        morphisms: labels,
    })
}

/// JSON form of a reindexing functor, by names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorSpec {
    pub ob: Vec<String>,
    pub mor: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSpec {
    pub f: String,
    pub g: String,
    pub components: Vec<String>,
}

/// JSON form of an indexed category. Without `delta` and `gamma` the input
/// is treated as strict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedCategorySpec {
    pub base: FinCategorySpec,
    pub fibres: Vec<FinCategorySpec>,
    pub reindex: Vec<FunctorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<DeltaSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Vec<String>>>,
}

impl FunctorSpec {
    /// Resolves names against `dst` and checks functoriality.
    pub fn build(&self, src: &Arc<FinCategory>, dst: &Arc<FinCategory>) -> Result<FinFunctor> {
        functor_from_spec(self, src, dst)
    }

    pub fn of(f: &FinFunctor) -> FunctorSpec {
        FunctorSpec {
            ob: f
                .ob_table()
                .iter()
                .map(|&o| f.dst().objects()[o].clone())
                .collect(),
            mor: f
                .mor_table()
                .iter()
                .map(|&m| f.dst().morphism(m).name.clone())
                .collect(),
        }
    }
}

fn functor_from_spec(
    spec: &FunctorSpec,
    src: &Arc<FinCategory>,
    dst: &Arc<FinCategory>,
) -> Result<FinFunctor> {
    let ob = spec
        .ob
        .iter()
        .map(|n| {
            dst.object_index(n)
                .ok_or_else(|| Error::Invalid(format!("unknown object `{n}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mor = spec
        .mor
        .iter()
        .map(|n| {
            dst.morphism_index(n)
                .ok_or_else(|| Error::Invalid(format!("unknown morphism `{n}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(src.clone(), dst.clone(), ob, mor)
}

impl IndexedCategorySpec {
    pub fn build(&self) -> Result<IndexedCategory> {
        let base = Arc::new(self.base.build()?);
        let fibres = self
            .fibres
            .iter()
            .map(|f| f.build().map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        if fibres.len() != base.object_count() || self.reindex.len() != base.morphism_count() {
            return Err(Error::ShapeMismatch(
                "one fibre per object and one functor per morphism".into(),
            ));
        }
        let reindex = self
            .reindex
            .iter()
            .enumerate()
            .map(|(f, s)| functor_from_spec(s, &fibres[base.dst(f)], &fibres[base.src(f)]))
            .collect::<Result<Vec<_>>>()?;
        match (&self.delta, &self.gamma) {
            (None, None) => IndexedCategory::strict(base, fibres, reindex),
            (Some(delta), Some(gamma)) => {
                let mor = |name: &str| {
                    base.morphism_index(name)
                        .ok_or_else(|| Error::Invalid(format!("unknown base morphism `{name}`")))
                };
                let mut table = BTreeMap::new();
                for d in delta {
                    let (f, g) = (mor(&d.f)?, mor(&d.g)?);
                    let x = &fibres[base.src(f)];
                    let comps = d
                        .components
                        .iter()
                        .map(|n| {
                            x.morphism_index(n)
                                .ok_or_else(|| Error::Invalid(format!("unknown morphism `{n}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    table.insert((f, g), comps);
                }
                let gamma = gamma
                    .iter()
                    .enumerate()
                    .map(|(x, comps)| {
                        comps
                            .iter()
                            .map(|n| {
                                fibres
                                    .get(x)
                                    .and_then(|fib| fib.morphism_index(n))
                                    .ok_or_else(|| {
                                        Error::Invalid(format!("unknown morphism `{n}`"))
                                    })
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                IndexedCategory::new(base, fibres, reindex, table, gamma)
            }
            _ => Err(Error::Invalid(
                "give both delta and gamma, or neither".into(),
            )),
        }
    }
}

impl IndexedCategory {
    pub fn to_spec(&self) -> IndexedCategorySpec {
        let b = &self.base;
        let reindex = self
            .reindex
            .iter()
            .map(|r| FunctorSpec {
                ob: r
                    .ob_table()
                    .iter()
                    .map(|&o| r.dst().objects()[o].clone())
                    .collect(),
                mor: r
                    .mor_table()
                    .iter()
                    .map(|&m| r.dst().morphism(m).name.clone())
                    .collect(),
            })
            .collect();
        let (delta, gamma) = if self.is_strict() {
            (None, None)
        } else {
            let delta = self
                .delta
                .iter()
                .map(|(&(f, g), comps)| DeltaSpec {
                    f: b.morphism(f).name.clone(),
                    g: b.morphism(g).name.clone(),
                    components: comps
                        .iter()
                        .map(|&m| self.fibres[b.src(f)].morphism(m).name.clone())
                        .collect(),
                })
                .collect();
            let gamma = self
                .gamma
                .iter()
                .enumerate()
                .map(|(x, comps)| {
                    comps
                        .iter()
                        .map(|&m| self.fibres[x].morphism(m).name.clone())
                        .collect()
                })
                .collect();
            (Some(delta), Some(gamma))
        };
        IndexedCategorySpec {
            base: b.to_spec(),
            fibres: self.fibres.iter().map(|f| f.to_spec()).collect(),
            reindex,
            delta,
            gamma,
        }
    }
}
