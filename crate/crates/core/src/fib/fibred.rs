//! Fibred adjunctions: given a fibred functor `S: P → Q` over a common base
//! and fibrewise left adjoints `L_X ⊣ S_X`, decide whether the `L_X`
//! assemble into a fibred left adjoint by checking invertibility of the
//! mates `χ`, and verify the assembled adjunction on the totals.

use serde::Serialize;

use super::category::{enumerate_adjunctions, FinAdjunction, FinFunctor};
use super::fibration::{is_cartesian, preserves_cartesian, Fibration, Fibre};
use crate::cert::Certificate;
use crate::error::{Error, Result};

/// `χ_A` for one base morphism `f` and one object `A` over its codomain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MateEntry {
    pub base_morphism: String,
    pub object: String,
    pub invertible: bool,
    pub identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibredAdjunctionReport {
    /// `Q∘S = P` and `S` preserves cartesian arrows.
    pub fibred: Certificate,
    pub mates: Vec<MateEntry>,
    /// The assembled adjunction on the totals, when every mate is invertible.
    pub total: Option<Certificate>,
    pub pass: bool,
}

impl FibredAdjunctionReport {
    /// The first base morphism whose mate is not invertible.
    pub fn witness(&self) -> Option<&MateEntry> {
        self.mates.iter().find(|m| !m.invertible)
    }
}

/// The unique vertical `u` with `upper ∘ u = θ` in the fibration `p`.
fn vertical_through(p: &Fibration, upper: usize, theta: usize) -> Option<usize> {
    let e = p.total();
    let found: Vec<usize> = e
        .hom(e.src(theta), e.src(upper))
        .iter()
        .copied()
        .filter(|&u| p.is_vertical(u) && e.comp(upper, u) == theta)
        .collect();
    (found.len() == 1).then(|| found[0])
}

/// `f*ψ` for a vertical `ψ`, as a total morphism.
fn reindex_mor(p: &Fibration, f: usize, psi: usize) -> usize {
    let e = p.total();
    let lower = p.lift(f, e.src(psi));
    let upper = p.lift(f, e.dst(psi));
    vertical_through(p, upper, e.comp(psi, lower)).expect("cartesian lift factors")
}

fn local_ob(fibre: &Fibre, total: usize) -> usize {
    fibre.object_of(total).expect("object lies in the fibre")
}

/// `S_X: P⁻¹(X) → Q⁻¹(X)`, the restriction of `s` to one fibre.
pub fn restrict_to_fibre(
    p: &Fibration,
    q: &Fibration,
    s: &FinFunctor,
    x: usize,
) -> Result<FinFunctor> {
    let (fp, fq) = (p.fibre(x), q.fibre(x));
    let outside = || Error::ShapeMismatch("S does not preserve fibres".into());
    let ob = fp
        .objects
        .iter()
        .map(|&a| fq.object_of(s.ob(a)).ok_or_else(outside))
        .collect::<Result<Vec<_>>>()?;
    let mor = fp
        .morphisms
        .iter()
        .map(|&m| fq.morphism_of(s.mor(m)).ok_or_else(outside))
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(fp.category.clone(), fq.category.clone(), ob, mor)
}

/// For each base object, some adjunction `L_X ⊣ S_X` found by exhaustive
/// search, or `None` when `S_X` has no left adjoint.
pub fn fibrewise_left_adjoints(
    p: &Fibration,
    q: &Fibration,
    s: &FinFunctor,
    limit: usize,
) -> Result<Vec<Option<FinAdjunction>>> {
    (0..p.base().object_count())
        .map(|x| {
            let sx = restrict_to_fibre(p, q, s, x)?;
            let found = enumerate_adjunctions(sx.dst(), sx.src(), limit)?;
            Ok(found.into_iter().find(|adj| *adj.right() == sx))
        })
        .collect()
}

pub fn check_fibred_adjunction(
    p: &Fibration,
    q: &Fibration,
    s: &FinFunctor,
    fibrewise: &[Option<FinAdjunction>],
) -> Result<FibredAdjunctionReport> {
    let base = p.base().clone();
    let (ep, eq) = (p.total().clone(), q.total().clone());
    if fibrewise.len() != base.object_count() {
        return Err(Error::ShapeMismatch(
            "one fibrewise adjunction per base object".into(),
        ));
    }
    let fp: Vec<Fibre> = (0..base.object_count()).map(|x| p.fibre(x)).collect();
    let fq: Vec<Fibre> = (0..base.object_count()).map(|x| q.fibre(x)).collect();
    for x in 0..base.object_count() {
        let adj = fibrewise[x].as_ref().ok_or_else(|| {
            Error::MissingFibrewiseAdjoint(format!("no left adjoint over {}", base.objects()[x]))
        })?;
        let r = adj.right();
        let matches = **r.src() == *fp[x].category
            && **r.dst() == *fq[x].category
            && (0..fp[x].objects.len()).all(|a| fq[x].objects[r.ob(a)] == s.ob(fp[x].objects[a]))
            && (0..fp[x].morphisms.len())
                .all(|m| fq[x].morphisms[r.mor(m)] == s.mor(fp[x].morphisms[m]));
        if !matches {
            return Err(Error::MissingFibrewiseAdjoint(format!(
                "the supplied right adjoint over {} is not the restriction of S",
                base.objects()[x]
            )));
        }
    }

    let fibred = if q.projection().after(s)? != *p.projection() {
        Certificate::fail("over the base", vec![], "Q∘S differs from P")
    } else {
        preserves_cartesian(p.projection(), q.projection(), s)
    };
    if !fibred.passed() {
        return Ok(FibredAdjunctionReport {
            fibred,
            mates: Vec::new(),
            total: None,
            pass: false,
        });
    }

    // L_X on total indices
    let l_ob = |x: usize, b: usize| -> usize {
        let adj = fibrewise[x].as_ref().expect("checked");
        fp[x].objects[adj.left().ob(local_ob(&fq[x], b))]
    };
    let l_mor = |x: usize, m: usize| -> usize {
        let adj = fibrewise[x].as_ref().expect("checked");
        fp[x].morphisms[adj.left().mor(fq[x].morphism_of(m).expect("vertical"))]
    };
    let unit_at = |x: usize, b: usize| -> usize {
        let adj = fibrewise[x].as_ref().expect("checked");
        fq[x].morphisms[adj.unit().at(local_ob(&fq[x], b))]
    };
    let counit_at = |x: usize, a: usize| -> usize {
        let adj = fibrewise[x].as_ref().expect("checked");
        fp[x].morphisms[adj.counit().at(local_ob(&fp[x], a))]
    };
    // τ_{A′}: f*_Q(S A′) → S(f*_P A′)
    let tau = |f: usize, a2: usize| -> usize {
        let upper = s.mor(p.lift(f, a2));
        vertical_through(q, upper, q.lift(f, s.ob(a2))).expect("S preserves the chosen lift")
    };
    let chi = |f: usize, b: usize| -> usize {
        let (x, y) = (base.src(f), base.dst(f));
        let lb = l_ob(y, b);
        let w = eq.comp(tau(f, lb), reindex_mor(q, f, unit_at(y, b)));
        let top = p.reindex_object(f, lb);
        ep.comp(counit_at(x, top), l_mor(x, w))
    };

    let mut mates = Vec::new();
    for f in 0..base.morphism_count() {
        let y = base.dst(f);
        for &b in &fq[y].objects {
            let c = chi(f, b);
            mates.push(MateEntry {
                base_morphism: base.morphism(f).name.clone(),
                object: eq.objects()[b].clone(),
                invertible: ep.is_iso(c),
                identity: ep.is_identity(c),
            });
        }
    }
    if mates.iter().any(|m| !m.invertible) {
        return Ok(FibredAdjunctionReport {
            fibred,
            mates,
            total: None,
            pass: false,
        });
    }

    // assemble L on the totals
    let ob: Vec<usize> = (0..eq.object_count())
        .map(|b| l_ob(q.projection().ob(b), b))
        .collect();
    let mor: Vec<usize> = (0..eq.morphism_count())
        .map(|theta| {
            let f = q.projection().mor(theta);
            let (x, y) = (base.src(f), base.dst(f));
            let (v, _) = q.factorize(theta).expect("cloven");
            let b2 = eq.dst(theta);
            ep.comp_path(&[l_mor(x, v), chi(f, b2), p.lift(f, l_ob(y, b2))])
        })
        .collect();
    let total = match FinFunctor::new(eq.clone(), ep.clone(), ob, mor) {
        Err(e) => Certificate::fail("assembled functor", vec![], e.to_string()),
        Ok(l) => check_total(p, q, s, &l, |b| unit_at(q.projection().ob(b), b)),
    };
    let pass = total.passed();
    Ok(FibredAdjunctionReport {
        fibred,
        mates,
        total: Some(total),
        pass,
    })
}

/// `P∘L = Q`, the hom bijection `ψ ↦ S(ψ)∘η_B` and cartesianness of `L`.
fn check_total(
    p: &Fibration,
    q: &Fibration,
    s: &FinFunctor,
    l: &FinFunctor,
    unit: impl Fn(usize) -> usize,
) -> Certificate {
    let (ep, eq) = (p.total(), q.total());
    if p.projection().after(l).ok().as_ref() != Some(q.projection()) {
        return Certificate::fail("over the base", vec![], "P∘L differs from Q");
    }
    for b in 0..eq.object_count() {
        let eta = unit(b);
        for a in 0..ep.object_count() {
            let mut images: Vec<usize> = ep
                .hom(l.ob(b), a)
                .iter()
                .map(|&psi| eq.comp(s.mor(psi), eta))
                .collect();
            images.sort_unstable();
            let mut target = eq.hom(b, s.ob(a)).to_vec();
            target.sort_unstable();
            if images != target {
                return Certificate::fail(
                    "hom bijection",
                    vec![b, a],
                    format!("at ({}, {})", eq.objects()[b], ep.objects()[a]),
                );
            }
        }
    }
    for theta in 0..eq.morphism_count() {
        if is_cartesian(q.projection(), theta) && !is_cartesian(p.projection(), l.mor(theta)) {
            return Certificate::fail(
                "cartesian",
                vec![theta],
                format!("L({}) is not cartesian", eq.morphism(theta).name),
            );
        }
    }
    Certificate::Pass
}

/// Right adjoints of fibred functors over a fixed base preserve cartesian
/// arrows: checks it for an adjunction `L ⊣ R` between totals whose
/// functors commute with the projections.
pub fn right_adjoint_preserves_cartesian(
    p: &Fibration,
    q: &Fibration,
    adj: &FinAdjunction,
) -> Certificate {
    preserves_cartesian(p.projection(), q.projection(), adj.right())
}
