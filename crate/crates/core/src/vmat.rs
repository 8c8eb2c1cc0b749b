//! The posetal bicategory of quantale-valued matrices.
//!
//! A [`VMat`] `S: X → Y` stores `S(y, x)` with rows indexed by the
//! destination and columns by the source. A 2-cell `S ⇒ T` is the pointwise
//! order, so every coherence isomorphism is an equality of matrices.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::base::{QElement, Quantale};
use crate::error::{Error, Result};
use crate::expo::{FinFn, FinSet, FunctionSpace};

#[derive(Clone, Debug)]
pub struct VMat {
    base: Arc<Quantale>,
    src: FinSet,
    dst: FinSet,
    entries: Vec<QElement>,
}

impl PartialEq for VMat {
    fn eq(&self, other: &Self) -> bool {
        same_base(&self.base, &other.base)
            && self.src == other.src
            && self.dst == other.dst
            && self.entries == other.entries
    }
}

impl Eq for VMat {}

pub(crate) fn same_base(a: &Arc<Quantale>, b: &Arc<Quantale>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn check_base(a: &VMat, b: &VMat) -> Result<()> {
    if same_base(&a.base, &b.base) {
        Ok(())
    } else {
        Err(Error::BaseMismatch)
    }
}

fn check_same_shape(a: &VMat, b: &VMat) -> Result<()> {
    check_base(a, b)?;
    if a.src != b.src || a.dst != b.dst {
        return Err(Error::ShapeMismatch(format!(
            "{}→{} vs {}→{}",
            a.src, a.dst, b.src, b.dst
        )));
    }
    Ok(())
}

impl VMat {
    /// `entries` is row-major over `dst × src`.
    pub fn new(
        base: Arc<Quantale>,
        src: FinSet,
        dst: FinSet,
        entries: Vec<QElement>,
    ) -> Result<VMat> {
        if entries.len() != src.len() * dst.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                dst.len(),
                src.len()
            )));
        }
        if entries.iter().any(|e| e.0 >= base.size()) {
            return Err(Error::Invalid("matrix entry outside the quantale".into()));
        }
        Ok(VMat {
            base,
            src,
            dst,
            entries,
        })
    }

    /// Builds `S` from `f(y, x)`.
    pub fn from_fn(
        base: Arc<Quantale>,
        src: FinSet,
        dst: FinSet,
        f: impl Fn(usize, usize) -> QElement,
    ) -> VMat {
        let (m, n) = (dst.len(), src.len());
        let entries = (0..m)
            .flat_map(|y| (0..n).map(move |x| (y, x)))
            .map(|(y, x)| f(y, x))
            .collect();
        VMat {
            base,
            src,
            dst,
            entries,
        }
    }

    pub fn constant(base: Arc<Quantale>, src: FinSet, dst: FinSet, e: QElement) -> VMat {
        let len = src.len() * dst.len();
        VMat {
            base,
            src,
            dst,
            entries: vec![e; len],
        }
    }

    pub fn bottom(base: Arc<Quantale>, src: FinSet, dst: FinSet) -> VMat {
        let bot = base.bottom();
        VMat::constant(base, src, dst, bot)
    }

    pub fn base(&self) -> &Arc<Quantale> {
        &self.base
    }

    pub fn src(&self) -> &FinSet {
        &self.src
    }

    pub fn dst(&self) -> &FinSet {
        &self.dst
    }

    pub fn entries(&self) -> &[QElement] {
        &self.entries
    }

    pub fn get(&self, y: usize, x: usize) -> QElement {
        self.entries[y * self.src.len() + x]
    }

    pub fn set(&mut self, y: usize, x: usize, e: QElement) {
        let n = self.src.len();
        self.entries[y * n + x] = e;
    }

    pub fn is_square(&self) -> bool {
        self.src == self.dst
    }

    pub fn map(&self, f: impl Fn(QElement) -> QElement) -> VMat {
        VMat {
            base: self.base.clone(),
            src: self.src.clone(),
            dst: self.dst.clone(),
            entries: self.entries.iter().map(|&e| f(e)).collect(),
        }
    }

    fn zip_with(&self, other: &VMat, f: impl Fn(QElement, QElement) -> QElement) -> Result<VMat> {
        check_same_shape(self, other)?;
        Ok(VMat {
            base: self.base.clone(),
            src: self.src.clone(),
            dst: self.dst.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn join(&self, other: &VMat) -> Result<VMat> {
        let q = self.base.clone();
        self.zip_with(other, |a, b| q.join(a, b))
    }

    pub fn meet(&self, other: &VMat) -> Result<VMat> {
        let q = self.base.clone();
        self.zip_with(other, |a, b| q.meet(a, b))
    }

    /// Same entries, relabeled index sets of equal sizes.
    pub fn relabel(&self, src: FinSet, dst: FinSet) -> Result<VMat> {
        if src.len() != self.src.len() || dst.len() != self.dst.len() {
            return Err(Error::ShapeMismatch(
                "relabeling must preserve sizes".into(),
            ));
        }
        VMat::new(self.base.clone(), src, dst, self.entries.clone())
    }

    /// Entries as element names, row-major.
    pub fn to_spec(&self, base: BaseRef) -> VMatSpec {
        VMatSpec {
            base,
            src: self.src.names().to_vec(),
            dst: self.dst.names().to_vec(),
            entries: (0..self.dst.len())
                .map(|y| {
                    (0..self.src.len())
                        .map(|x| self.base.name(self.get(y, x)).to_string())
                        .collect()
                })
                .collect(),
        }
    }
}

/// How a file refers to its quantale: a builtin name or an inline table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Named(String),
    Inline(crate::base::QuantaleSpec),
}

impl BaseRef {
    pub fn resolve(&self) -> Result<Quantale> {
        match self {
            BaseRef::Named(name) => crate::base::Builtin::parse(name)
                .map(crate::base::builtin)
                .ok_or_else(|| Error::Invalid(format!("unknown base `{name}`"))),
            BaseRef::Inline(spec) => Quantale::from_spec(spec.clone()),
        }
    }
}

/// JSON form: `{"base":ref, "src":[names], "dst":[names], "entries":[[name]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VMatSpec {
    pub base: BaseRef,
    pub src: Vec<String>,
    pub dst: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl VMatSpec {
    pub fn build(&self, base: Arc<Quantale>) -> Result<VMat> {
        let src = FinSet::new(self.src.clone())?;
        let dst = FinSet::new(self.dst.clone())?;
        if self.entries.len() != dst.len() || self.entries.iter().any(|r| r.len() != src.len()) {
            return Err(Error::ShapeMismatch(format!(
                "entries must be {}x{} (dst x src)",
                dst.len(),
                src.len()
            )));
        }
        let entries = self
            .entries
            .iter()
            .flatten()
            .map(|n| {
                base.element(n)
                    .ok_or_else(|| Error::Invalid(format!("unknown element `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        VMat::new(base, src, dst, entries)
    }
}

/// Horizontal composite `(t∘s)(z,x) = ⋁_y t(z,y) ⊗ s(y,x)`.
pub fn compose(t: &VMat, s: &VMat) -> Result<VMat> {
    check_base(t, s)?;
    if s.dst != t.src {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose {}→{} after {}→{}",
            t.src, t.dst, s.src, s.dst
        )));
    }
    let q = &*t.base;
    let mid = s.dst.len();
    Ok(VMat::from_fn(
        t.base.clone(),
        s.src.clone(),
        t.dst.clone(),
        |z, x| q.join_all((0..mid).map(|y| q.tensor(t.get(z, y), s.get(y, x)))),
    ))
}

/// Identity 1-cell: unit on the diagonal, bottom elsewhere.
pub fn id_mat(x: &FinSet, base: Arc<Quantale>) -> VMat {
    let (unit, bot) = (base.unit(), base.bottom());
    VMat::from_fn(
        base,
        x.clone(),
        x.clone(),
        |i, j| if i == j { unit } else { bot },
    )
}

/// Whether the 2-cell `s ⇒ t` exists, i.e. `s ⊑ t` pointwise.
pub fn leq2cell(s: &VMat, t: &VMat) -> Result<bool> {
    check_same_shape(s, t)?;
    let q = &*s.base;
    Ok(s.entries.iter().zip(&t.entries).all(|(&a, &b)| q.leq(a, b)))
}

/// Companion `f⋆: X → Y`, `f⋆(y,x) = I` iff `f(x) = y`.
pub fn companion(f: &FinFn, base: Arc<Quantale>) -> VMat {
    let (unit, bot) = (base.unit(), base.bottom());
    VMat::from_fn(base, f.src().clone(), f.dst().clone(), |y, x| {
        if f.apply(x) == y {
            unit
        } else {
            bot
        }
    })
}

/// Conjoint `f*: Y → X`, `f*(x,y) = I` iff `f(x) = y`.
pub fn conjoint(f: &FinFn, base: Arc<Quantale>) -> VMat {
    let (unit, bot) = (base.unit(), base.bottom());
    VMat::from_fn(base, f.dst().clone(), f.src().clone(), |x, y| {
        if f.apply(x) == y {
            unit
        } else {
            bot
        }
    })
}

/// `g⋆∘f⋆ = (gf)⋆` and `f*∘g* = (gf)*` as matrices.
pub fn star_functoriality(f: &FinFn, g: &FinFn, base: Arc<Quantale>) -> Result<bool> {
    let gf = g.after(f)?;
    let lower = compose(&companion(g, base.clone()), &companion(f, base.clone()))?
        == companion(&gf, base.clone());
    let upper =
        compose(&conjoint(f, base.clone()), &conjoint(g, base.clone()))? == conjoint(&gf, base);
    Ok(lower && upper)
}

/// `(S⊗T)((y,z),(x,w)) = S(y,x) ⊗ T(z,w)`.
pub fn tensor_mat(s: &VMat, t: &VMat) -> Result<VMat> {
    check_base(s, t)?;
    let q = &*s.base;
    let (tw, tz) = (t.src.len(), t.dst.len());
    Ok(VMat::from_fn(
        s.base.clone(),
        s.src.product(&t.src),
        s.dst.product(&t.dst),
        |yz, xw| q.tensor(s.get(yz / tz, xw / tw), t.get(yz % tz, xw % tw)),
    ))
}

/// The hom matrix of `s: X → Z` and `t: Y → W`, a matrix `Y^X → W^Z` with
/// `Hom(s,t)(q,k) = ⋀_{z,x} [s(z,x), t(qz, kx)]`.
pub fn hom_mat(s: &VMat, t: &VMat, cap: usize) -> Result<HomMat> {
    check_base(s, t)?;
    let src_space = FunctionSpace::new(&s.src, &t.src, cap)?;
    let dst_space = FunctionSpace::new(&s.dst, &t.dst, cap)?;
    let matrix = hom_entries(s, t, &src_space, &dst_space);
    Ok(HomMat {
        matrix,
        src_space,
        dst_space,
    })
}

pub(crate) fn hom_entries(
    s: &VMat,
    t: &VMat,
    src_space: &FunctionSpace,
    dst_space: &FunctionSpace,
) -> VMat {
    let q = &*s.base;
    let (nz, nx) = (s.dst.len(), s.src.len());
    let cols = src_space.len();
    let entries: Vec<QElement> = (0..dst_space.len() * cols)
        .into_par_iter()
        .map(|i| {
            let (qi, k) = (i / cols, i % cols);
            q.meet_all(
                (0..nz)
                    .flat_map(|z| (0..nx).map(move |x| (z, x)))
                    .map(|(z, x)| {
                        q.hom(
                            s.get(z, x),
                            t.get(dst_space.apply(qi, z), src_space.apply(k, x)),
                        )
                    }),
            )
        })
        .collect();
    VMat {
        base: s.base.clone(),
        src: src_space.set().clone(),
        dst: dst_space.set().clone(),
        entries,
    }
}

/// A hom matrix together with the function spaces indexing it.
#[derive(Clone, Debug)]
pub struct HomMat {
    pub matrix: VMat,
    pub src_space: FunctionSpace,
    pub dst_space: FunctionSpace,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{builtin, Builtin};

    fn boolean() -> Arc<Quantale> {
        Arc::new(builtin(Builtin::Boolean))
    }

    fn mat(q: &Arc<Quantale>, src: &FinSet, dst: &FinSet, rows: &[&[&str]]) -> VMat {
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|n| q.element(n).unwrap()))
            .collect();
        VMat::new(q.clone(), src.clone(), dst.clone(), entries).unwrap()
    }

    #[test]
    fn relational_single_chain() {
        let q = boolean();
        let x = FinSet::indexed("x", 2);
        let y = FinSet::indexed("y", 2);
        let z = FinSet::indexed("z", 2);
        let s = mat(&q, &x, &y, &[&["1", "0"], &["0", "0"]]);
        let t = mat(&q, &y, &z, &[&["1", "0"], &["0", "0"]]);
        let ts = compose(&t, &s).unwrap();
        assert_eq!(ts, mat(&q, &x, &z, &[&["1", "0"], &["0", "0"]]));
    }

    #[test]
    fn min_plus_product() {
        let q = Arc::new(builtin(Builtin::Tropical(10)));
        let x = FinSet::indexed("x", 2);
        let y = FinSet::indexed("y", 2);
        let z = FinSet::indexed("z", 2);
        let s = mat(&q, &x, &y, &[&["2", "inf"], &["0", "1"]]);
        let t = mat(&q, &y, &z, &[&["1", "3"], &["inf", "0"]]);
        let ts = compose(&t, &s).unwrap();
        // min-plus oracle
        let sv = [[2u64, u64::MAX], [0, 1]];
        let tv = [[1u64, 3], [u64::MAX, 0]];
        for zi in 0..2 {
            for xi in 0..2 {
                let best = (0..2)
                    .map(|yi| tv[zi][yi].saturating_add(sv[yi][xi]))
                    .min()
                    .unwrap();
                let expected = if best >= u64::MAX / 2 {
                    "inf".to_string()
                } else {
                    best.min(10).to_string()
                };
                assert_eq!(q.name(ts.get(zi, xi)), expected);
            }
        }
        assert_eq!(q.name(ts.get(0, 0)), "3");
    }

    #[test]
    fn identities_are_units() {
        for q in [boolean(), Arc::new(builtin(Builtin::Tropical(4)))] {
            let x = FinSet::indexed("x", 3);
            let y = FinSet::indexed("y", 2);
            let s = VMat::from_fn(q.clone(), x.clone(), y.clone(), |i, j| {
                crate::base::QElement((i + 2 * j) % q.size())
            });
            assert_eq!(compose(&id_mat(&y, q.clone()), &s).unwrap(), s);
            assert_eq!(compose(&s, &id_mat(&x, q.clone())).unwrap(), s);
        }
        let q = Arc::new(builtin(Builtin::Tropical(4)));
        let id = id_mat(&FinSet::indexed("x", 3), q.clone());
        assert_eq!(q.name(id.get(1, 1)), "0");
        assert_eq!(q.name(id.get(0, 1)), "inf");
    }

    #[test]
    fn order_convention_on_tropical() {
        let q = Arc::new(builtin(Builtin::Tropical(10)));
        let one = FinSet::singleton();
        let s = mat(&q, &one, &one, &[&["5"]]);
        let t = mat(&q, &one, &one, &[&["3"]]);
        assert!(leq2cell(&s, &t).unwrap());
        assert!(!leq2cell(&t, &s).unwrap());
        assert!(leq2cell(&VMat::bottom(q.clone(), one.clone(), one.clone()), &t).unwrap());
    }

    #[test]
    fn companion_of_constant_map() {
        let q = boolean();
        let f = FinFn::new(FinSet::indexed("a", 2), FinSet::indexed("c", 1), vec![0, 0]).unwrap();
        let fs = companion(&f, q.clone());
        assert_eq!(fs.entries(), &[q.unit(), q.unit()]);
        let id = FinFn::identity(&FinSet::indexed("x", 3));
        assert_eq!(
            companion(&id, q.clone()),
            id_mat(&FinSet::indexed("x", 3), q.clone())
        );
        assert_eq!(
            conjoint(&id, q.clone()),
            id_mat(&FinSet::indexed("x", 3), q)
        );
    }

    #[test]
    fn hom_of_identities_on_singletons() {
        let q = boolean();
        let one = FinSet::singleton();
        let id = id_mat(&one, q.clone());
        let h = hom_mat(&id, &id, 4096).unwrap();
        assert_eq!(h.matrix.src().len(), 1);
        assert_eq!(h.matrix.get(0, 0), q.unit());
    }

    #[test]
    fn shape_and_base_errors() {
        let q = boolean();
        let a = VMat::bottom(q.clone(), FinSet::indexed("x", 2), FinSet::indexed("y", 2));
        let b = VMat::bottom(q, FinSet::indexed("x", 2), FinSet::indexed("y", 2));
        assert!(matches!(compose(&a, &b), Err(Error::ShapeMismatch(_))));
        let t = Arc::new(builtin(Builtin::Tropical(2)));
        let c = VMat::bottom(t, FinSet::indexed("y", 2), FinSet::indexed("z", 2));
        assert_eq!(compose(&c, &a).unwrap_err(), Error::BaseMismatch);
    }
}
