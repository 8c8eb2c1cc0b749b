//! Cloven fibrations between finite categories. Universal properties are
//! decided by enumeration.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::category::{FinCategory, FinFunctor, Morphism};
use super::indexed::{grothendieck, IndexedCategory};
use crate::cert::Certificate;
use crate::error::{Error, Result};

/// Whether `phi` is cartesian for `p`: every `θ: A′ → B` and `g` with
/// `Pφ∘g = Pθ` admit exactly one `ψ` over `g` with `φ∘ψ = θ`.
pub fn is_cartesian(p: &FinFunctor, phi: usize) -> bool {
    cartesian_failure(p, phi).is_none()
}

/// A `(θ, g)` pair with zero or several factorizations, if any.
pub fn cartesian_failure(p: &FinFunctor, phi: usize) -> Option<(usize, usize)> {
    let (e, b) = (p.src(), p.dst());
    let (a, bb) = (e.src(phi), e.dst(phi));
    let pphi = p.mor(phi);
    for a2 in 0..e.object_count() {
        for &theta in e.hom(a2, bb) {
            for &g in b.hom(p.ob(a2), p.ob(a)) {
                if b.comp(pphi, g) != p.mor(theta) {
                    continue;
                }
                let n = e
                    .hom(a2, a)
                    .iter()
                    .filter(|&&psi| p.mor(psi) == g && e.comp(phi, psi) == theta)
                    .count();
                if n != 1 {
                    return Some((theta, g));
                }
            }
        }
    }
    None
}

/// Dual of [`is_cartesian`]: every `θ: A → B′` and `g` with `g∘Pφ = Pθ`
/// admit exactly one `ψ` over `g` with `ψ∘φ = θ`.
pub fn is_cocartesian(p: &FinFunctor, phi: usize) -> bool {
    let (e, b) = (p.src(), p.dst());
    let (a, bb) = (e.src(phi), e.dst(phi));
    let pphi = p.mor(phi);
    for b2 in 0..e.object_count() {
        for &theta in e.hom(a, b2) {
            for &g in b.hom(p.ob(bb), p.ob(b2)) {
                if b.comp(g, pphi) != p.mor(theta) {
                    continue;
                }
                let n = e
                    .hom(bb, b2)
                    .iter()
                    .filter(|&&psi| p.mor(psi) == g && e.comp(psi, phi) == theta)
                    .count();
                if n != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// A fibre `P⁻¹(X)` with its inclusion into the total category.
#[derive(Clone, Debug)]
pub struct Fibre {
    pub category: Arc<FinCategory>,
    /// Total-category index of each fibre object.
    pub objects: Vec<usize>,
    /// Total-category index of each fibre morphism.
    pub morphisms: Vec<usize>,
}

impl Fibre {
    pub fn object_of(&self, total: usize) -> Option<usize> {
        self.objects.iter().position(|&o| o == total)
    }

    pub fn morphism_of(&self, total: usize) -> Option<usize> {
        self.morphisms.iter().position(|&m| m == total)
    }
}

/// A functor `P: E → B` with a chosen cartesian lift `Cart(f, B)` for every
/// base morphism `f` and object `B` over its codomain.
#[derive(Clone, Debug)]
pub struct Fibration {
    projection: FinFunctor,
    cleavage: BTreeMap<(usize, usize), usize>,
}

impl Fibration {
    pub fn new(
        projection: FinFunctor,
        cleavage: BTreeMap<(usize, usize), usize>,
    ) -> Result<Fibration> {
        let (e, b) = (projection.src().clone(), projection.dst().clone());
        for f in 0..b.morphism_count() {
            for obj in 0..e.object_count() {
                if projection.ob(obj) != b.dst(f) {
                    continue;
                }
                let lift = *cleavage.get(&(f, obj)).ok_or_else(|| {
                    Error::CoherenceFailure(format!(
                        "no chosen lift of {} at {}",
                        b.morphism(f).name,
                        e.objects()[obj]
                    ))
                })?;
                if e.dst(lift) != obj || projection.mor(lift) != f {
                    return Err(Error::CoherenceFailure(format!(
                        "chosen lift {} does not lie over {} with codomain {}",
                        e.morphism(lift).name,
                        b.morphism(f).name,
                        e.objects()[obj]
                    )));
                }
                if !is_cartesian(&projection, lift) {
                    return Err(Error::CoherenceFailure(format!(
                        "chosen lift {} is not cartesian",
                        e.morphism(lift).name
                    )));
                }
            }
        }
        Ok(Fibration {
            projection,
            cleavage,
        })
    }

    /// Chooses, for each `(f, B)`, the first cartesian lift (identities for
    /// identities). Fails if some lift is missing.
    pub fn from_projection(projection: FinFunctor) -> Result<Fibration> {
        let (e, b) = (projection.src().clone(), projection.dst().clone());
        let mut cleavage = BTreeMap::new();
        for f in 0..b.morphism_count() {
            for obj in 0..e.object_count() {
                if projection.ob(obj) != b.dst(f) {
                    continue;
                }
                let lift = if b.is_identity(f) {
                    Some(e.id(obj))
                } else {
                    (0..e.object_count())
                        .flat_map(|a| e.hom(a, obj).iter().copied())
                        .find(|&m| projection.mor(m) == f && is_cartesian(&projection, m))
                };
                let lift = lift.ok_or_else(|| {
                    Error::CoherenceFailure(format!(
                        "{} has no cartesian lift at {}",
                        b.morphism(f).name,
                        e.objects()[obj]
                    ))
                })?;
                cleavage.insert((f, obj), lift);
            }
        }
        Fibration::new(projection, cleavage)
    }

    pub fn projection(&self) -> &FinFunctor {
        &self.projection
    }

    pub fn total(&self) -> &Arc<FinCategory> {
        self.projection.src()
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.projection.dst()
    }

    /// `Cart(f, B)`.
    pub fn lift(&self, f: usize, obj: usize) -> usize {
        self.cleavage[&(f, obj)]
    }

    pub fn cleavage(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.cleavage
    }

    /// `f*B`, the domain of `Cart(f, B)`.
    pub fn reindex_object(&self, f: usize, obj: usize) -> usize {
        self.total().src(self.lift(f, obj))
    }

    pub fn is_vertical(&self, m: usize) -> bool {
        self.base().is_identity(self.projection.mor(m))
    }

    /// Whether `Cart(g∘f, C) = Cart(g, C) ∘ Cart(f, g*C)` and identities
    /// lift to identities.
    pub fn is_split(&self) -> bool {
        let (e, b) = (self.total(), self.base());
        let normal =
            (0..e.object_count()).all(|o| self.lift(b.id(self.projection.ob(o)), o) == e.id(o));
        normal
            && self.cleavage.keys().all(|&(g, c)| {
                (0..b.morphism_count()).all(|f| match b.try_comp(g, f) {
                    Some(gf) => {
                        let upper = self.lift(g, c);
                        let lower = self.lift(f, e.src(upper));
                        self.lift(gf, c) == e.comp(upper, lower)
                    }
                    None => true,
                })
            })
    }

    pub fn fibre(&self, x: usize) -> Fibre {
        let e = self.total();
        let b = self.base();
        let objects: Vec<usize> = (0..e.object_count())
            .filter(|&o| self.projection.ob(o) == x)
            .collect();
        let morphisms: Vec<usize> = (0..e.morphism_count())
            .filter(|&m| self.projection.mor(m) == b.id(x))
            .collect();
        let local = |o: usize| {
            objects
                .iter()
                .position(|&p| p == o)
                .expect("object in fibre")
        };
        let mors: Vec<Morphism> = morphisms
            .iter()
            .map(|&m| Morphism {
                name: e.morphism(m).name.clone(),
                src: local(e.src(m)),
                dst: local(e.dst(m)),
            })
            .collect();
        let identity = objects
            .iter()
            .map(|&o| {
                morphisms
                    .iter()
                    .position(|&m| m == e.id(o))
                    .expect("identity is vertical")
            })
            .collect();
        let names = objects.iter().map(|&o| e.objects()[o].clone()).collect();
        let category = FinCategory::build(names, mors, identity, |g, f| {
            let c = e.comp(morphisms[g], morphisms[f]);
            morphisms
                .iter()
                .position(|&m| m == c)
                .expect("vertical morphisms compose")
        })
        .expect("fibre is a category");
        Fibre {
            category: Arc::new(category),
            objects,
            morphisms,
        }
    }

    /// The unique vertical `u` with `lift ∘ u = θ`, if it exists.
    fn vertical_factor(&self, lift: usize, theta: usize) -> Option<usize> {
        let e = self.total();
        let found: Vec<usize> = e
            .hom(e.src(theta), e.src(lift))
            .iter()
            .copied()
            .filter(|&u| self.is_vertical(u) && e.comp(lift, u) == theta)
            .collect();
        (found.len() == 1).then(|| found[0])
    }

    /// `θ = Cart(Pθ, cod θ) ∘ ψ` with `ψ` vertical; uniqueness of `ψ` is
    /// checked.
    pub fn factorize(&self, theta: usize) -> Result<(usize, usize)> {
        let e = self.total();
        let lift = self.lift(self.projection.mor(theta), e.dst(theta));
        let psi = self.vertical_factor(lift, theta).ok_or_else(|| {
            Error::CoherenceFailure(format!(
                "{} has no unique vertical part",
                e.morphism(theta).name
            ))
        })?;
        Ok((psi, lift))
    }

    /// The indexed category `M_P` of this cloven fibration.
    pub fn indexed_category(&self) -> Result<IndexedCategory> {
        let (e, b) = (self.total().clone(), self.base().clone());
        let fibres: Vec<Fibre> = (0..b.object_count()).map(|x| self.fibre(x)).collect();
        let factor = |lift: usize, theta: usize| {
            self.vertical_factor(lift, theta)
                .ok_or_else(|| Error::CoherenceFailure("missing vertical factorization".into()))
        };
        let mut reindex = Vec::new();
        for f in 0..b.morphism_count() {
            let (fx, fy) = (&fibres[b.src(f)], &fibres[b.dst(f)]);
            let ob = fy
                .objects
                .iter()
                .map(|&o| {
                    fx.object_of(self.reindex_object(f, o))
                        .expect("lift domain lies over the domain")
                })
                .collect();
            let mor = fy
                .morphisms
                .iter()
                .map(|&psi| {
                    let lower = self.lift(f, e.src(psi));
                    let upper = self.lift(f, e.dst(psi));
                    let u = factor(upper, e.comp(psi, lower))?;
                    Ok(fx.morphism_of(u).expect("vertical"))
                })
                .collect::<Result<Vec<_>>>()?;
            reindex.push(FinFunctor::new(
                fy.category.clone(),
                fx.category.clone(),
                ob,
                mor,
            )?);
        }
        let mut delta = BTreeMap::new();
        for f in 0..b.morphism_count() {
            for g in 0..b.morphism_count() {
                let Some(gf) = b.try_comp(g, f) else { continue };
                let (fx, fz) = (&fibres[b.src(f)], &fibres[b.dst(g)]);
                let comps = fz
                    .objects
                    .iter()
                    .map(|&c| {
                        let upper = self.lift(g, c);
                        let lower = self.lift(f, e.src(upper));
                        let u = factor(self.lift(gf, c), e.comp(upper, lower))?;
                        Ok(fx.morphism_of(u).expect("vertical"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                delta.insert((f, g), comps);
            }
        }
        let gamma = (0..b.object_count())
            .map(|x| {
                fibres[x]
                    .objects
                    .iter()
                    .map(|&a| {
                        let u = factor(self.lift(b.id(x), a), e.id(a))?;
                        Ok(fibres[x].morphism_of(u).expect("vertical"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        IndexedCategory::new(
            b,
            fibres.into_iter().map(|f| f.category).collect(),
            reindex,
            delta,
            gamma,
        )
    }
}

/// Rebuilds `P` from `M_P` and compares: the comparison `(A,X) ↦ A`,
/// `(φ,f) ↦ Cart(f,B)∘φ` must be a functor, bijective on objects and
/// morphisms, commute with the projections and send chosen lifts to chosen
/// lifts.
pub fn round_trip(p: &Fibration, cap: usize) -> Result<Certificate> {
    let m = p.indexed_category()?;
    let g = grothendieck(&m, cap)?;
    let (e, e2) = (p.total(), g.fibration.total());
    let fibres: Vec<Fibre> = (0..p.base().object_count()).map(|x| p.fibre(x)).collect();
    let ob: Vec<usize> = g
        .objects
        .iter()
        .map(|&(a, x)| fibres[x].objects[a])
        .collect();
    let mor: Vec<usize> = (0..e2.morphism_count())
        .map(|i| {
            let (phi, f) = g.morphisms[i];
            let x = p.base().src(f);
            let target = ob[e2.dst(i)];
            e.comp(p.lift(f, target), fibres[x].morphisms[phi])
        })
        .collect();
    let comparison = match FinFunctor::new(e2.clone(), e.clone(), ob.clone(), mor.clone()) {
        Ok(c) => c,
        Err(err) => return Ok(Certificate::fail("functor", vec![], err.to_string())),
    };
    let bijective = |v: &[usize], n: usize| {
        let mut seen = vec![false; n];
        v.len() == n && v.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    };
    if !bijective(&ob, e.object_count()) {
        return Ok(Certificate::fail(
            "objects",
            vec![],
            "comparison is not bijective on objects",
        ));
    }
    if !bijective(&mor, e.morphism_count()) {
        return Ok(Certificate::fail(
            "morphisms",
            vec![],
            "comparison is not bijective on morphisms",
        ));
    }
    if p.projection().after(&comparison)? != *g.fibration.projection() {
        return Ok(Certificate::fail(
            "projection",
            vec![],
            "comparison does not commute with the projections",
        ));
    }
    for (&(f, obj), &lift) in g.fibration.cleavage() {
        if comparison.mor(lift) != p.lift(f, comparison.ob(obj)) {
            return Ok(Certificate::fail(
                "cleavage",
                vec![f, obj],
                "a chosen lift is not preserved",
            ));
        }
    }
    Ok(Certificate::Pass)
}

/// Whether `s` sends every cartesian arrow of `p` to a cartesian arrow of
/// `q`; witness `[φ]`.
pub fn preserves_cartesian(p: &FinFunctor, q: &FinFunctor, s: &FinFunctor) -> Certificate {
    for phi in 0..p.src().morphism_count() {
        if is_cartesian(p, phi) && !is_cartesian(q, s.mor(phi)) {
            return Certificate::fail(
                "cartesian",
                vec![phi],
                format!("image of {} is not cartesian", p.src().morphism(phi).name),
            );
        }
    }
    Certificate::Pass
}

/// The pullback `F*Q` of a fibration along `F: Z → X`, with the projection
/// `π: Z ×_X B → B`.
pub fn change_of_base(
    q: &Fibration,
    f: &FinFunctor,
    cap: usize,
) -> Result<(Fibration, FinFunctor)> {
    let (bt, z) = (q.total(), f.src());
    if !(Arc::ptr_eq(f.dst(), q.base()) || **f.dst() == **q.base()) {
        return Err(Error::ShapeMismatch("F must land in the base of Q".into()));
    }
    let qp = q.projection();
    let objects: Vec<(usize, usize)> = (0..z.object_count())
        .flat_map(|zo| (0..bt.object_count()).map(move |bo| (zo, bo)))
        .filter(|&(zo, bo)| f.ob(zo) == qp.ob(bo))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..z.morphism_count())
        .flat_map(|u| (0..bt.morphism_count()).map(move |m| (u, m)))
        .filter(|&(u, m)| f.mor(u) == qp.mor(m))
        .collect();
    if pairs.len() > cap {
        return Err(Error::TooLarge(format!(
            "pullback has {} morphisms, cap is {cap}",
            pairs.len()
        )));
    }
    let oi = |zo: usize, bo: usize| {
        objects
            .iter()
            .position(|&o| o == (zo, bo))
            .expect("object of the pullback")
    };
    let mi = |u: usize, m: usize| {
        pairs
            .iter()
            .position(|&p| p == (u, m))
            .expect("morphism of the pullback")
    };
    let morphisms: Vec<Morphism> = pairs
        .iter()
        .map(|&(u, m)| Morphism {
            name: format!("({},{})", z.morphism(u).name, bt.morphism(m).name),
            src: oi(z.src(u), bt.src(m)),
            dst: oi(z.dst(u), bt.dst(m)),
        })
        .collect();
    let names = objects
        .iter()
        .map(|&(zo, bo)| format!("({},{})", z.objects()[zo], bt.objects()[bo]))
        .collect();
    let identity = objects
        .iter()
        .map(|&(zo, bo)| mi(z.id(zo), bt.id(bo)))
        .collect();
    let total = Arc::new(FinCategory::build(names, morphisms, identity, |g, h| {
        let ((u2, m2), (u1, m1)) = (pairs[g], pairs[h]);
        mi(z.comp(u2, u1), bt.comp(m2, m1))
    })?);
    let proj = FinFunctor::new(
        total.clone(),
        z.clone(),
        objects.iter().map(|o| o.0).collect(),
        pairs.iter().map(|p| p.0).collect(),
    )?;
    let pi = FinFunctor::new(
        total.clone(),
        bt.clone(),
        objects.iter().map(|o| o.1).collect(),
        pairs.iter().map(|p| p.1).collect(),
    )?;
    let mut cleavage = BTreeMap::new();
    for u in 0..z.morphism_count() {
        for (i, &(zo, bo)) in objects.iter().enumerate() {
            if zo == z.dst(u) {
                cleavage.insert((u, i), mi(u, q.lift(f.mor(u), bo)));
            }
        }
    }
    Ok((Fibration::new(proj, cleavage)?, pi))
}
