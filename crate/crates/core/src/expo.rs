//! Finite sets, functions between them, and function spaces `Y^X`.
//!
//! Function spaces are enumerated lexicographically by the tuple of images
//! `(k(x0), k(x1), ...)` with `x0` most significant. Every exponential
//! relabeling used by the engine (currying, transposition) is defined here.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set with distinct element names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FinSet {
    names: Vec<String>,
}

impl FinSet {
    pub fn new(names: Vec<String>) -> Result<FinSet> {
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate set element `{a}`")));
            }
        }
        Ok(FinSet { names })
    }

    /// `{prefix0, prefix1, ...}`.
    pub fn indexed(prefix: &str, n: usize) -> FinSet {
        FinSet {
            names: (0..n).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn singleton() -> FinSet {
        FinSet {
            names: vec!["*".into()],
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Cartesian product; `(a, b)` sits at index `a * other.len() + b`.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut names = Vec::with_capacity(self.len() * other.len());
        for a in &self.names {
            for b in &other.names {
                names.push(format!("({a},{b})"));
            }
        }
        FinSet { names }
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(","))
    }
}

/// A total function between finite sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinFn {
    src: FinSet,
    dst: FinSet,
    map: Vec<usize>,
}

impl FinFn {
    pub fn new(src: FinSet, dst: FinSet, map: Vec<usize>) -> Result<FinFn> {
        if map.len() != src.len() {
            return Err(Error::ShapeMismatch(format!(
                "function table has {} entries for a domain of size {}",
                map.len(),
                src.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= dst.len()) {
            return Err(Error::ShapeMismatch(format!(
                "image {bad} outside codomain {dst}"
            )));
        }
        Ok(FinFn { src, dst, map })
    }

    pub fn identity(x: &FinSet) -> FinFn {
        FinFn {
            src: x.clone(),
            dst: x.clone(),
            map: (0..x.len()).collect(),
        }
    }

    pub fn src(&self) -> &FinSet {
        &self.src
    }

    pub fn dst(&self) -> &FinSet {
        &self.dst
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FinFn) -> Result<FinFn> {
        if first.dst != self.src {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose: {} vs {}",
                first.dst, self.src
            )));
        }
        Ok(FinFn {
            src: first.src.clone(),
            dst: self.dst.clone(),
            map: first.map.iter().map(|&y| self.map[y]).collect(),
        })
    }

    /// Every function `src → dst`, in lexicographic order.
    pub fn all(src: &FinSet, dst: &FinSet, cap: usize) -> Result<Vec<FinFn>> {
        let space = FunctionSpace::new(src, dst, cap)?;
        Ok((0..space.len()).map(|k| space.function(k)).collect())
    }
}

/// The set `Y^X` of functions, materialized as a [`FinSet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSpace {
    dom: FinSet,
    cod: FinSet,
    set: FinSet,
    weights: Vec<usize>,
}

/// `base^exp`, or `None` once it exceeds `cap`.
fn capped_pow(base: usize, exp: usize, cap: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > cap {
            return None;
        }
    }
    (acc <= cap).then_some(acc)
}

impl FunctionSpace {
    pub fn new(dom: &FinSet, cod: &FinSet, cap: usize) -> Result<FunctionSpace> {
        let size = capped_pow(cod.len(), dom.len(), cap).ok_or(Error::ExponentTooLarge {
            dom: dom.len(),
            cod: cod.len(),
            cap,
        })?;
        let n = dom.len();
        let mut weights = vec![1; n];
        for i in (0..n.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * cod.len();
        }
        let mut names = Vec::with_capacity(size);
        for k in 0..size {
            let parts: Vec<String> = (0..n)
                .map(|x| format!("{}:{}", dom.name(x), cod.name((k / weights[x]) % cod.len())))
                .collect();
            names.push(format!("{{{}}}", parts.join(",")));
        }
        Ok(FunctionSpace {
            dom: dom.clone(),
            cod: cod.clone(),
            set: FinSet { names },
            weights,
        })
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    /// The function space as a set of function names.
    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// `k(x)` for the function with index `k`.
    pub fn apply(&self, k: usize, x: usize) -> usize {
        (k / self.weights[x]) % self.cod.len()
    }

    pub fn images(&self, k: usize) -> Vec<usize> {
        (0..self.dom.len()).map(|x| self.apply(k, x)).collect()
    }

    pub fn index_of(&self, images: &[usize]) -> usize {
        images.iter().zip(&self.weights).map(|(y, w)| y * w).sum()
    }

    pub fn function(&self, k: usize) -> FinFn {
        FinFn {
            src: self.dom.clone(),
            dst: self.cod.clone(),
            map: self.images(k),
        }
    }
}

/// Currying bijection `Y^(X×Z) ≅ (Y^Z)^X`: `h ↦ (x ↦ (z ↦ h(x, z)))`.
///
/// `outer` must be the function space `(Y^Z)^X` built over `inner = Y^Z`.
pub fn curry(
    product_space: &FunctionSpace,
    inner: &FunctionSpace,
    outer: &FunctionSpace,
    h: usize,
) -> usize {
    let nz = inner.dom().len();
    let images: Vec<usize> = (0..outer.dom().len())
        .map(|x| {
            let row: Vec<usize> = (0..nz)
                .map(|z| product_space.apply(h, x * nz + z))
                .collect();
            inner.index_of(&row)
        })
        .collect();
    outer.index_of(&images)
}

/// Transposition `(Y^X)^Z ≅ (Y^Z)^X`: `g ↦ (x ↦ (z ↦ g(z)(x)))`.
///
/// `g` is given by its table of images in `y_to_x = Y^X`; the result is the
/// table of images in `y_to_z = Y^Z`.
pub fn transpose(y_to_x: &FunctionSpace, y_to_z: &FunctionSpace, g: &[usize]) -> Vec<usize> {
    (0..y_to_x.dom().len())
        .map(|x| {
            let col: Vec<usize> = g.iter().map(|&s| y_to_x.apply(s, x)).collect();
            y_to_z.index_of(&col)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_enumeration() {
        let x = FinSet::indexed("x", 2);
        let y = FinSet::indexed("y", 3);
        let space = FunctionSpace::new(&x, &y, 100).unwrap();
        assert_eq!(space.len(), 9);
        assert_eq!(space.images(0), vec![0, 0]);
        assert_eq!(space.images(1), vec![0, 1]);
        assert_eq!(space.images(3), vec![1, 0]);
        assert_eq!(space.set().name(5), "{x0:y1,x1:y2}");
        for k in 0..space.len() {
            assert_eq!(space.index_of(&space.images(k)), k);
        }
    }

    #[test]
    fn empty_domain_has_one_function() {
        let space =
            FunctionSpace::new(&FinSet::indexed("x", 0), &FinSet::indexed("y", 3), 10).unwrap();
        assert_eq!(space.len(), 1);
        assert_eq!(space.set().name(0), "{}");
    }

    #[test]
    fn cap_is_enforced() {
        let err = FunctionSpace::new(&FinSet::indexed("x", 13), &FinSet::indexed("y", 2), 4096)
            .unwrap_err();
        assert_eq!(
            err,
            Error::ExponentTooLarge {
                dom: 13,
                cod: 2,
                cap: 4096
            }
        );
        assert!(
            FunctionSpace::new(&FinSet::indexed("x", 12), &FinSet::indexed("y", 2), 4096).is_ok()
        );
    }

    #[test]
    fn curry_is_a_bijection() {
        let x = FinSet::indexed("x", 2);
        let z = FinSet::indexed("z", 2);
        let y = FinSet::indexed("y", 2);
        let prod = FunctionSpace::new(&x.product(&z), &y, 100).unwrap();
        let inner = FunctionSpace::new(&z, &y, 100).unwrap();
        let outer = FunctionSpace::new(&x, inner.set(), 100).unwrap();
        let mut seen: Vec<usize> = (0..prod.len())
            .map(|h| curry(&prod, &inner, &outer, h))
            .collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..outer.len()).collect::<Vec<_>>());
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(FinSet::new(vec!["a".into(), "a".into()]).is_err());
    }
}
