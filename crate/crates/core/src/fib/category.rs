//! Explicit finite categories, functors, natural transformations and
//! adjunctions, all audited on construction.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite category. `compose[g][f]` is `g∘f` when `dst f = src g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    compose: Vec<Vec<Option<usize>>>,
    identity: Vec<usize>,
    homs: Vec<Vec<Vec<usize>>>,
}

impl FinCategory {
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        compose: Vec<Vec<Option<usize>>>,
        identity: Vec<usize>,
    ) -> Result<FinCategory> {
        let (no, nm) = (objects.len(), morphisms.len());
        let bad = |msg: String| Err(Error::Invalid(msg));
        if identity.len() != no {
            return bad("one identity per object is required".into());
        }
        if compose.len() != nm || compose.iter().any(|r| r.len() != nm) {
            return bad(format!("composition table must be {nm}×{nm}"));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(o) = objects.iter().find(|o| !seen.insert(o.as_str())) {
            return bad(format!("duplicate object name `{o}`"));
        }
        seen.clear();
        if let Some(m) = morphisms.iter().find(|m| !seen.insert(m.name.as_str())) {
            return bad(format!("duplicate morphism name `{}`", m.name));
        }
        for m in &morphisms {
            if m.src >= no || m.dst >= no {
                return bad(format!(
                    "morphism `{}` has an endpoint outside the object list",
                    m.name
                ));
            }
        }
        for (x, &i) in identity.iter().enumerate() {
            if i >= nm || morphisms[i].src != x || morphisms[i].dst != x {
                return bad(format!(
                    "identity of `{}` is not an endomorphism of it",
                    objects[x]
                ));
            }
        }
        for g in 0..nm {
            for f in 0..nm {
                let composable = morphisms[f].dst == morphisms[g].src;
                match (composable, compose[g][f]) {
                    (true, None) => {
                        return bad(format!(
                            "missing composite {}∘{}",
                            morphisms[g].name, morphisms[f].name
                        ))
                    }
                    (false, Some(_)) => {
                        return bad(format!(
                            "composite given for non-composable {}∘{}",
                            morphisms[g].name, morphisms[f].name
                        ))
                    }
                    (true, Some(h)) => {
                        if h >= nm
                            || morphisms[h].src != morphisms[f].src
                            || morphisms[h].dst != morphisms[g].dst
                        {
                            return bad(format!(
                                "{}∘{} has the wrong type",
                                morphisms[g].name, morphisms[f].name
                            ));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..nm {
            let (s, d) = (morphisms[f].src, morphisms[f].dst);
            if compose[identity[d]][f] != Some(f) || compose[f][identity[s]] != Some(f) {
                return bad(format!("identity law fails at `{}`", morphisms[f].name));
            }
        }
        for f in 0..nm {
            for g in 0..nm {
                let Some(gf) = compose[g][f] else { continue };
                for h in 0..nm {
                    let Some(hg) = compose[h][g] else { continue };
                    if compose[h][gf] != compose[hg][f] {
                        return bad(format!(
                            "associativity fails at ({}, {}, {})",
                            morphisms[h].name, morphisms[g].name, morphisms[f].name
                        ));
                    }
                }
            }
        }
        let mut homs = vec![vec![Vec::new(); no]; no];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.src][m.dst].push(i);
        }
        Ok(FinCategory {
            objects,
            morphisms,
            compose,
            identity,
            homs,
        })
    }

    /// Builds the composition table from a function on composable pairs.
    pub fn build(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        comp: impl Fn(usize, usize) -> usize,
    ) -> Result<FinCategory> {
        let nm = morphisms.len();
        let compose = (0..nm)
            .map(|g| {
                (0..nm)
                    .map(|f| (morphisms[f].dst == morphisms[g].src).then(|| comp(g, f)))
                    .collect()
            })
            .collect();
        FinCategory::new(objects, morphisms, compose, identity)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, m: usize) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn src(&self, m: usize) -> usize {
        self.morphisms[m].src
    }

    pub fn dst(&self, m: usize) -> usize {
        self.morphisms[m].dst
    }

    pub fn id(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identity[self.src(m)] == m
    }

    /// `g∘f`; panics if not composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose[g][f].unwrap_or_else(|| {
            panic!(
                "{} and {} are not composable",
                self.morphisms[g].name, self.morphisms[f].name
            )
        })
    }

    pub fn try_comp(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    /// Composite of a path given first-to-last.
    pub fn comp_path(&self, path: &[usize]) -> usize {
        let mut acc = path[0];
        for &m in &path[1..] {
            acc = self.comp(m, acc);
        }
        acc
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x][y]
    }

    pub fn inverse(&self, m: usize) -> Option<usize> {
        let (s, d) = (self.src(m), self.dst(m));
        self.hom(d, s)
            .iter()
            .copied()
            .find(|&n| self.comp(n, m) == self.identity[s] && self.comp(m, n) == self.identity[d])
    }

    pub fn is_iso(&self, m: usize) -> bool {
        self.inverse(m).is_some()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn is_thin(&self) -> bool {
        self.homs.iter().flatten().all(|h| h.len() <= 1)
    }

    pub fn terminal() -> FinCategory {
        FinCategory::discrete(vec!["*".into()])
    }

    pub fn discrete(objects: Vec<String>) -> FinCategory {
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism {
                name: format!("1_{o}"),
                src: i,
                dst: i,
            })
            .collect();
        let n = objects.len();
        FinCategory::build(objects, morphisms, (0..n).collect(), |g, _| g)
            .expect("discrete category")
    }

    /// The preorder with a morphism `x → y` iff `leq(x, y)`.
    pub fn from_preorder(
        objects: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<FinCategory> {
        let n = objects.len();
        let mut morphisms = Vec::new();
        let mut index = vec![vec![None; n]; n];
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    index[x][y] = Some(morphisms.len());
                    let name = if x == y {
                        format!("1_{}", objects[x])
                    } else {
                        format!("{}→{}", objects[x], objects[y])
                    };
                    morphisms.push(Morphism {
                        name,
                        src: x,
                        dst: y,
                    });
                }
            }
        }
        let identity = (0..n)
            .map(|x| index[x][x].ok_or_else(|| Error::Invalid("preorder is not reflexive".into())))
            .collect::<Result<Vec<_>>>()?;
        let mut compose = vec![vec![None; morphisms.len()]; morphisms.len()];
        for (g, mg) in morphisms.iter().enumerate() {
            for (f, mf) in morphisms.iter().enumerate() {
                if mf.dst == mg.src {
                    compose[g][f] = Some(
                        index[mf.src][mg.dst]
                            .ok_or_else(|| Error::Invalid("preorder is not transitive".into()))?,
                    );
                }
            }
        }
        FinCategory::new(objects, morphisms, compose, identity)
    }

    /// `0 → 1 → ... → n-1`.
    pub fn chain(n: usize) -> FinCategory {
        FinCategory::from_preorder((0..n).map(|i| i.to_string()).collect(), |x, y| x <= y)
            .expect("chain")
    }

    /// The arrow category `𝟚 = {0 → 1}`.
    pub fn arrow() -> FinCategory {
        FinCategory::chain(2)
    }

    /// One-object category of a finite monoid; `mult[g][f]` is `g∘f`.
    pub fn monoid(
        elements: Vec<String>,
        mult: Vec<Vec<usize>>,
        unit: usize,
    ) -> Result<FinCategory> {
        let morphisms = elements
            .into_iter()
            .map(|name| Morphism {
                name,
                src: 0,
                dst: 0,
            })
            .collect();
        FinCategory::build(vec!["*".into()], morphisms, vec![unit], |g, f| mult[g][f])
    }

    pub fn opposite(&self) -> FinCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                name: format!("{}ᵒᵖ", m.name),
                src: m.dst,
                dst: m.src,
            })
            .collect();
        FinCategory::build(
            self.objects.clone(),
            morphisms,
            self.identity.clone(),
            |g, f| self.comp(f, g),
        )
        .expect("opposite of a category")
    }

    pub fn product(&self, other: &FinCategory) -> FinCategory {
        let (no, nm) = (other.object_count(), other.morphism_count());
        let mut objects = Vec::new();
        for a in &self.objects {
            for b in &other.objects {
                objects.push(format!("({a},{b})"));
            }
        }
        let mut morphisms = Vec::new();
        for f in &self.morphisms {
            for g in &other.morphisms {
                morphisms.push(Morphism {
                    name: format!("({},{})", f.name, g.name),
                    src: f.src * no + g.src,
                    dst: f.dst * no + g.dst,
                });
            }
        }
        let identity = (0..objects.len())
            .map(|i| self.identity[i / no] * nm + other.identity[i % no])
            .collect();
        FinCategory::build(objects, morphisms, identity, |g, f| {
            self.comp(g / nm, f / nm) * nm + other.comp(g % nm, f % nm)
        })
        .expect("product of categories")
    }

    /// `self^n`, the product of `n` copies; `n = 0` gives the terminal category.
    pub fn power(&self, n: usize) -> FinCategory {
        let mut acc: Option<FinCategory> = None;
        for _ in 0..n {
            acc = Some(match acc {
                None => self.clone(),
                Some(c) => c.product(self),
            });
        }
        acc.unwrap_or_else(FinCategory::terminal)
    }

    /// The arrow category: objects are morphisms, morphisms are commuting
    /// squares `(u, v)` from `f` to `g` with `v∘f = g∘u`.
    pub fn arrow_category(&self) -> ArrowCategory {
        let mut squares = Vec::new();
        let mut morphisms = Vec::new();
        for f in 0..self.morphism_count() {
            for g in 0..self.morphism_count() {
                for &u in self.hom(self.src(f), self.src(g)) {
                    for &v in self.hom(self.dst(f), self.dst(g)) {
                        if self.comp(v, f) == self.comp(g, u) {
                            morphisms.push(Morphism {
                                name: format!(
                                    "[{}|{}]",
                                    self.morphisms[u].name, self.morphisms[v].name
                                ),
                                src: f,
                                dst: g,
                            });
                            squares.push((u, v));
                        }
                    }
                }
            }
        }
        let objects = self.morphisms.iter().map(|m| m.name.clone()).collect();
        let find = |src: usize, dst: usize, u: usize, v: usize| {
            (0..squares.len())
                .find(|&i| {
                    morphisms[i].src == src && morphisms[i].dst == dst && squares[i] == (u, v)
                })
                .expect("square exists")
        };
        let identity = (0..self.morphism_count())
            .map(|f| find(f, f, self.identity[self.src(f)], self.identity[self.dst(f)]))
            .collect();
        let category = FinCategory::build(objects, morphisms.clone(), identity, |g, f| {
            let ((u1, v1), (u2, v2)) = (squares[f], squares[g]);
            find(
                morphisms[f].src,
                morphisms[g].dst,
                self.comp(u2, u1),
                self.comp(v2, v1),
            )
        })
        .expect("arrow category");
        ArrowCategory { category, squares }
    }

    pub fn to_spec(&self) -> FinCategorySpec {
        let name = |m: usize| self.morphisms[m].name.clone();
        FinCategorySpec {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismSpec {
                    name: m.name.clone(),
                    src: self.objects[m.src].clone(),
                    dst: self.objects[m.dst].clone(),
                })
                .collect(),
            compose: self
                .compose
                .iter()
                .map(|r| r.iter().map(|c| c.map(name)).collect())
                .collect(),
            id: self.identity.iter().map(|&i| name(i)).collect(),
        }
    }
}

/// An arrow category with the square `(u, v)` behind each morphism.
#[derive(Clone, Debug)]
pub struct ArrowCategory {
    pub category: FinCategory,
    pub squares: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub name: String,
    pub src: String,
    pub dst: String,
}

/// JSON form; `compose[g][f]` names `g∘f` or is null.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCategorySpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    pub compose: Vec<Vec<Option<String>>>,
    pub id: Vec<String>,
}

impl FinCategorySpec {
    pub fn build(&self) -> Result<FinCategory> {
        let ob = |n: &str| {
            self.objects
                .iter()
                .position(|o| o == n)
                .ok_or_else(|| Error::Invalid(format!("unknown object `{n}`")))
        };
        let mor = |n: &str| {
            self.morphisms
                .iter()
                .position(|m| m.name == n)
                .ok_or_else(|| Error::Invalid(format!("unknown morphism `{n}`")))
        };
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| {
                Ok(Morphism {
                    name: m.name.clone(),
                    src: ob(&m.src)?,
                    dst: ob(&m.dst)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let compose = self
            .compose
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| c.as_deref().map(mor).transpose())
                    .collect()
            })
            .collect::<Result<Vec<Vec<_>>>>()?;
        let identity = self.id.iter().map(|n| mor(n)).collect::<Result<Vec<_>>>()?;
        FinCategory::new(self.objects.clone(), morphisms, compose, identity)
    }
}

fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A functor between finite categories, audited on construction.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    src: Arc<FinCategory>,
    dst: Arc<FinCategory>,
    ob: Vec<usize>,
    mor: Vec<usize>,
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.ob == other.ob
            && self.mor == other.mor
            && same_category(&self.src, &other.src)
            && same_category(&self.dst, &other.dst)
    }
}

impl Eq for FinFunctor {}

impl FinFunctor {
    pub fn new(
        src: Arc<FinCategory>,
        dst: Arc<FinCategory>,
        ob: Vec<usize>,
        mor: Vec<usize>,
    ) -> Result<FinFunctor> {
        if ob.len() != src.object_count() || mor.len() != src.morphism_count() {
            return Err(Error::ShapeMismatch(
                "functor tables do not match the source category".into(),
            ));
        }
        if ob.iter().any(|&y| y >= dst.object_count())
            || mor.iter().any(|&m| m >= dst.morphism_count())
        {
            return Err(Error::ShapeMismatch(
                "functor image outside the target category".into(),
            ));
        }
        for (m, &fm) in mor.iter().enumerate() {
            if dst.src(fm) != ob[src.src(m)] || dst.dst(fm) != ob[src.dst(m)] {
                return Err(Error::Invalid(format!(
                    "image of `{}` has the wrong type",
                    src.morphism(m).name
                )));
            }
        }
        for x in 0..src.object_count() {
            if mor[src.id(x)] != dst.id(ob[x]) {
                return Err(Error::Invalid(format!(
                    "identity of `{}` is not preserved",
                    src.objects()[x]
                )));
            }
        }
        for g in 0..src.morphism_count() {
            for f in 0..src.morphism_count() {
                if let Some(gf) = src.try_comp(g, f) {
                    if mor[gf] != dst.comp(mor[g], mor[f]) {
                        return Err(Error::Invalid(format!(
                            "composite {}∘{} is not preserved",
                            src.morphism(g).name,
                            src.morphism(f).name
                        )));
                    }
                }
            }
        }
        Ok(FinFunctor { src, dst, ob, mor })
    }

    pub fn identity(c: &Arc<FinCategory>) -> FinFunctor {
        FinFunctor {
            src: c.clone(),
            dst: c.clone(),
            ob: (0..c.object_count()).collect(),
            mor: (0..c.morphism_count()).collect(),
        }
    }

    pub fn constant(src: &Arc<FinCategory>, dst: &Arc<FinCategory>, object: usize) -> FinFunctor {
        FinFunctor {
            src: src.clone(),
            dst: dst.clone(),
            ob: vec![object; src.object_count()],
            mor: vec![dst.id(object); src.morphism_count()],
        }
    }

    pub fn src(&self) -> &Arc<FinCategory> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FinCategory> {
        &self.dst
    }

    pub fn ob(&self, x: usize) -> usize {
        self.ob[x]
    }

    pub fn mor(&self, m: usize) -> usize {
        self.mor[m]
    }

    pub fn ob_table(&self) -> &[usize] {
        &self.ob
    }

    pub fn mor_table(&self) -> &[usize] {
        &self.mor
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FinFunctor) -> Result<FinFunctor> {
        if !same_category(&first.dst, &self.src) {
            return Err(Error::ShapeMismatch("functors are not composable".into()));
        }
        Ok(FinFunctor {
            src: first.src.clone(),
            dst: self.dst.clone(),
            ob: first.ob.iter().map(|&x| self.ob[x]).collect(),
            mor: first.mor.iter().map(|&m| self.mor[m]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        same_category(&self.src, &self.dst)
            && self.ob.iter().enumerate().all(|(i, &x)| i == x)
            && self.mor.iter().enumerate().all(|(i, &m)| i == m)
    }
}

/// Every functor `src → dst`, failing once more than `limit` are found.
pub fn enumerate_functors(
    src: &Arc<FinCategory>,
    dst: &Arc<FinCategory>,
    limit: usize,
) -> Result<Vec<FinFunctor>> {
    let (no, nm) = (src.object_count(), src.morphism_count());
    let mut out = Vec::new();
    let mut ob = vec![0; no];
    let mut mor = vec![usize::MAX; nm];

    fn assign_mor(
        src: &FinCategory,
        dst: &FinCategory,
        ob: &[usize],
        mor: &mut Vec<usize>,
        m: usize,
        emit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if m == mor.len() {
            return emit(mor);
        }
        let candidates: Vec<usize> = if src.is_identity(m) {
            vec![dst.id(ob[src.src(m)])]
        } else {
            dst.hom(ob[src.src(m)], ob[src.dst(m)]).to_vec()
        };
        for c in candidates {
            mor[m] = c;
            // composites whose factors and result are all assigned must agree
            let consistent = (0..=m).all(|g| {
                (0..=m).all(|f| match src.try_comp(g, f) {
                    Some(gf) if gf <= m && (g == m || f == m || gf == m) => {
                        mor[gf] == dst.comp(mor[g], mor[f])
                    }
                    _ => true,
                })
            });
            if consistent {
                assign_mor(src, dst, ob, mor, m + 1, emit)?;
            }
        }
        mor[m] = usize::MAX;
        Ok(())
    }

    let ndo = dst.object_count();
    if ndo == 0 && no > 0 {
        return Ok(out);
    }
    let total_ob = (ndo as u128).checked_pow(no as u32).unwrap_or(u128::MAX);
    for k in 0..total_ob {
        let mut r = k;
        for x in ob.iter_mut() {
            *x = (r % ndo as u128) as usize;
            r /= ndo as u128;
        }
        let mut emit = |mor: &[usize]| -> Result<()> {
            if out.len() >= limit {
                return Err(Error::TooLarge(format!("more than {limit} functors")));
            }
            out.push(FinFunctor {
                src: src.clone(),
                dst: dst.clone(),
                ob: ob.clone(),
                mor: mor.to_vec(),
            });
            Ok(())
        };
        assign_mor(src, dst, &ob.clone(), &mut mor, 0, &mut emit)?;
    }
    Ok(out)
}

/// A natural transformation `α: F ⇒ G`, audited on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    src: FinFunctor,
    dst: FinFunctor,
    comp: Vec<usize>,
}

impl NatTrans {
    pub fn new(src: FinFunctor, dst: FinFunctor, comp: Vec<usize>) -> Result<NatTrans> {
        if !same_category(&src.src, &dst.src) || !same_category(&src.dst, &dst.dst) {
            return Err(Error::ShapeMismatch("functors are not parallel".into()));
        }
        let (c, d) = (&src.src, &src.dst);
        if comp.len() != c.object_count() {
            return Err(Error::ShapeMismatch(
                "one component per object is required".into(),
            ));
        }
        for (x, &a) in comp.iter().enumerate() {
            if a >= d.morphism_count() || d.src(a) != src.ob(x) || d.dst(a) != dst.ob(x) {
                return Err(Error::Invalid(format!(
                    "component at `{}` has the wrong type",
                    c.objects()[x]
                )));
            }
        }
        for m in 0..c.morphism_count() {
            let (x, y) = (c.src(m), c.dst(m));
            if d.comp(dst.mor(m), comp[x]) != d.comp(comp[y], src.mor(m)) {
                return Err(Error::Invalid(format!(
                    "naturality fails at `{}`",
                    c.morphism(m).name
                )));
            }
        }
        Ok(NatTrans { src, dst, comp })
    }

    pub fn identity(f: &FinFunctor) -> NatTrans {
        let comp = (0..f.src.object_count())
            .map(|x| f.dst.id(f.ob(x)))
            .collect();
        NatTrans {
            src: f.clone(),
            dst: f.clone(),
            comp,
        }
    }

    pub fn src(&self) -> &FinFunctor {
        &self.src
    }

    pub fn dst(&self) -> &FinFunctor {
        &self.dst
    }

    pub fn at(&self, x: usize) -> usize {
        self.comp[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.comp
    }

    /// `self ∘ first` (vertical).
    pub fn after(&self, first: &NatTrans) -> Result<NatTrans> {
        if first.dst != self.src {
            return Err(Error::ShapeMismatch(
                "transformations are not composable".into(),
            ));
        }
        let d = &self.src.dst;
        let comp = (0..self.comp.len())
            .map(|x| d.comp(self.comp[x], first.comp[x]))
            .collect();
        NatTrans::new(first.src.clone(), self.dst.clone(), comp)
    }

    /// `αH`, components `α_{Hc}`.
    pub fn whisker_left(&self, h: &FinFunctor) -> Result<NatTrans> {
        let comp = (0..h.src.object_count())
            .map(|c| self.comp[h.ob(c)])
            .collect();
        NatTrans::new(self.src.after(h)?, self.dst.after(h)?, comp)
    }

    /// `Kα`, components `K(α_c)`.
    pub fn whisker_right(&self, k: &FinFunctor) -> Result<NatTrans> {
        let comp = self.comp.iter().map(|&a| k.mor(a)).collect();
        NatTrans::new(k.after(&self.src)?, k.after(&self.dst)?, comp)
    }
}

/// Every natural transformation `F ⇒ G`.
pub fn enumerate_nat_trans(f: &FinFunctor, g: &FinFunctor) -> Vec<NatTrans> {
    let d = f.dst.clone();
    let n = f.src.object_count();
    let options: Vec<Vec<usize>> = (0..n).map(|x| d.hom(f.ob(x), g.ob(x)).to_vec()).collect();
    let mut out = Vec::new();
    let mut pick = vec![0; n];
    if options.iter().any(|o| o.is_empty()) {
        return out;
    }
    loop {
        let comp: Vec<usize> = (0..n).map(|x| options[x][pick[x]]).collect();
        if let Ok(t) = NatTrans::new(f.clone(), g.clone(), comp) {
            out.push(t);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            pick[i] += 1;
            if pick[i] < options[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// `F ⊣ G` with unit `η: 1 ⇒ GF` and counit `ε: FG ⇒ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAdjunction {
    left: FinFunctor,
    right: FinFunctor,
    unit: NatTrans,
    counit: NatTrans,
}

impl FinAdjunction {
    pub fn new(
        left: FinFunctor,
        right: FinFunctor,
        unit: Vec<usize>,
        counit: Vec<usize>,
    ) -> Result<FinAdjunction> {
        let c = left.src.clone();
        let d = left.dst.clone();
        if !same_category(&right.src, &d) || !same_category(&right.dst, &c) {
            return Err(Error::ShapeMismatch(
                "adjoint functors must go in opposite directions".into(),
            ));
        }
        let unit = NatTrans::new(FinFunctor::identity(&c), right.after(&left)?, unit)?;
        let counit = NatTrans::new(left.after(&right)?, FinFunctor::identity(&d), counit)?;
        for x in 0..c.object_count() {
            if d.comp(counit.at(left.ob(x)), left.mor(unit.at(x))) != d.id(left.ob(x)) {
                return Err(Error::Invalid(format!(
                    "triangle identity fails at `{}`",
                    c.objects()[x]
                )));
            }
        }
        for y in 0..d.object_count() {
            if c.comp(right.mor(counit.at(y)), unit.at(right.ob(y))) != c.id(right.ob(y)) {
                return Err(Error::Invalid(format!(
                    "triangle identity fails at `{}`",
                    d.objects()[y]
                )));
            }
        }
        Ok(FinAdjunction {
            left,
            right,
            unit,
            counit,
        })
    }

    pub fn left(&self) -> &FinFunctor {
        &self.left
    }

    pub fn right(&self) -> &FinFunctor {
        &self.right
    }

    pub fn unit(&self) -> &NatTrans {
        &self.unit
    }

    pub fn counit(&self) -> &NatTrans {
        &self.counit
    }

    pub fn identity(c: &Arc<FinCategory>) -> FinAdjunction {
        let id = FinFunctor::identity(c);
        let ids: Vec<usize> = (0..c.object_count()).map(|x| c.id(x)).collect();
        FinAdjunction::new(id.clone(), id, ids.clone(), ids).expect("identity adjunction")
    }
}

/// Every adjunction `F ⊣ G` between `c` and `d`, with `F: c → d`.
pub fn enumerate_adjunctions(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    limit: usize,
) -> Result<Vec<FinAdjunction>> {
    let lefts = enumerate_functors(c, d, limit)?;
    let rights = enumerate_functors(d, c, limit)?;
    let mut out = Vec::new();
    for l in &lefts {
        for r in &rights {
            let gf = r.after(l)?;
            let fg = l.after(r)?;
            for eta in enumerate_nat_trans(&FinFunctor::identity(c), &gf) {
                for eps in enumerate_nat_trans(&fg, &FinFunctor::identity(d)) {
                    if let Ok(adj) =
                        FinAdjunction::new(l.clone(), r.clone(), eta.comp.clone(), eps.comp.clone())
                    {
                        out.push(adj);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn check_mate_shapes(
    adj: &FinAdjunction,
    adj2: &FinAdjunction,
    h: &FinFunctor,
    k: &FinFunctor,
) -> Result<()> {
    let ok = same_category(&h.src, &adj.left.src)
        && same_category(&h.dst, &adj2.left.src)
        && same_category(&k.src, &adj.left.dst)
        && same_category(&k.dst, &adj2.left.dst);
    if ok {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(
            "h and k must connect the two adjunctions".into(),
        ))
    }
}

/// Given `f ⊣ g` (`f: A → B`), `f′ ⊣ g′` (`f′: A′ → B′`), `h: A → A′`,
/// `k: B → B′` and `μ: f′h ⇒ kf`, returns `ν: hg ⇒ g′k` with
/// `ν_b = g′k(ε_b) ∘ g′(μ_{gb}) ∘ η′_{hgb}`.
pub fn mate(
    adj: &FinAdjunction,
    adj2: &FinAdjunction,
    h: &FinFunctor,
    k: &FinFunctor,
    mu: &NatTrans,
) -> Result<NatTrans> {
    check_mate_shapes(adj, adj2, h, k)?;
    let (f, g) = (&adj.left, &adj.right);
    let (f2, g2) = (&adj2.left, &adj2.right);
    if mu.src != f2.after(h)? || mu.dst != k.after(f)? {
        return Err(Error::ShapeMismatch("μ must go from f′h to kf".into()));
    }
    let a2 = &h.dst;
    let b = &f.dst;
    let comp = (0..b.object_count())
        .map(|y| {
            let hgb = h.ob(g.ob(y));
            a2.comp_path(&[
                adj2.unit.at(hgb),
                g2.mor(mu.at(g.ob(y))),
                g2.mor(k.mor(adj.counit.at(y))),
            ])
        })
        .collect();
    NatTrans::new(h.after(g)?, g2.after(k)?, comp)
}

/// Inverse of [`mate`]: `μ_a = ε′_{kfa} ∘ f′(ν_{fa}) ∘ f′h(η_a)`.
pub fn mate_inverse(
    adj: &FinAdjunction,
    adj2: &FinAdjunction,
    h: &FinFunctor,
    k: &FinFunctor,
    nu: &NatTrans,
) -> Result<NatTrans> {
    check_mate_shapes(adj, adj2, h, k)?;
    let (f, g) = (&adj.left, &adj.right);
    let (f2, g2) = (&adj2.left, &adj2.right);
    if nu.src != h.after(g)? || nu.dst != g2.after(k)? {
        return Err(Error::ShapeMismatch("ν must go from hg to g′k".into()));
    }
    let b2 = &k.dst;
    let a = &f.src;
    let comp = (0..a.object_count())
        .map(|x| {
            b2.comp_path(&[
                f2.mor(h.mor(adj.unit.at(x))),
                f2.mor(nu.at(f.ob(x))),
                adj2.counit.at(k.ob(f.ob(x))),
            ])
        })
        .collect();
    NatTrans::new(f2.after(h)?, k.after(f)?, comp)
}

/// For `h, k` with `kf = f′h` and `hg = g′k`, whether `hη = η′h` and whether
/// `kε = ε′k`. Returns `None` when the functor equations fail.
pub fn map_of_adjunctions(
    adj: &FinAdjunction,
    adj2: &FinAdjunction,
    h: &FinFunctor,
    k: &FinFunctor,
) -> Result<Option<(bool, bool)>> {
    check_mate_shapes(adj, adj2, h, k)?;
    if k.after(&adj.left)? != adj2.left.after(h)? || h.after(&adj.right)? != adj2.right.after(k)? {
        return Ok(None);
    }
    let a = &adj.left.src;
    let b = &adj.left.dst;
    let units = (0..a.object_count()).all(|x| h.mor(adj.unit.at(x)) == adj2.unit.at(h.ob(x)));
    let counits = (0..b.object_count()).all(|y| k.mor(adj.counit.at(y)) == adj2.counit.at(k.ob(y)));
    Ok(Some((units, counits)))
}
