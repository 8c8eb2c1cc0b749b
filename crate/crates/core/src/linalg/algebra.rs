//! Finite-dimensional algebras, coalgebras, modules and comodules given by
//! structure constants in a fixed basis, audited at construction.

use super::field::Field;
use crate::cert::Certificate;
use crate::error::{Error, Result};

/// `T[i][j][k]`, a three-index tensor.
pub type Tensor3<F> = Vec<Vec<Vec<F>>>;

fn shape3<F>(t: &Tensor3<F>, a: usize, b: usize, c: usize) -> bool {
    t.len() == a
        && t.iter()
            .all(|r| r.len() == b && r.iter().all(|s| s.len() == c))
}

fn dims(what: &str) -> Error {
    Error::DimensionMismatch(format!("{what} has the wrong shape"))
}

/// `e_i e_j = Σ_k mult[i][j][k] e_k`, unit `Σ_i unit[i] e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra<F: Field> {
    dim: usize,
    mult: Tensor3<F>,
    unit: Vec<F>,
}

/// `Δ e_i = Σ_{j,k} comult[i][j][k] e_j ⊗ e_k`, `ε e_i = counit[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra<F: Field> {
    dim: usize,
    comult: Tensor3<F>,
    counit: Vec<F>,
}

/// A left module: `e_a · e_m = Σ_n action[a][m][n] e_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinModule<F: Field> {
    algebra: Algebra<F>,
    dim: usize,
    action: Tensor3<F>,
}

/// A left comodule: `δ e_x = Σ_{c,y} coaction[x][c][y] e_c ⊗ e_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComodule<F: Field> {
    coalgebra: Coalgebra<F>,
    dim: usize,
    coaction: Tensor3<F>,
}

/// Associativity with witness `[i, j, k, q]` (coefficient of `e_q` in
/// `(e_i e_j) e_k` vs `e_i (e_j e_k)`), then the unit laws with witness `[i, q]`.
pub fn audit_algebra<F: Field>(mult: &Tensor3<F>, unit: &[F]) -> Result<Certificate> {
    let n = unit.len();
    if !shape3(mult, n, n, n) {
        return Err(dims("multiplication table"));
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for q in 0..n {
                    let mut left = F::zero();
                    let mut right = F::zero();
                    for p in 0..n {
                        left = left.add(&mult[i][j][p].mul(&mult[p][k][q]));
                        right = right.add(&mult[j][k][p].mul(&mult[i][p][q]));
                    }
                    if left != right {
                        return Ok(Certificate::fail(
                            "associativity",
                            vec![i, j, k, q],
                            format!("(e{i}e{j})e{k} and e{i}(e{j}e{k}) differ at e{q}: {left} vs {right}"),
                        ));
                    }
                }
            }
        }
    }
    for i in 0..n {
        for q in 0..n {
            let expect = if i == q { F::one() } else { F::zero() };
            let mut left = F::zero();
            let mut right = F::zero();
            for u in 0..n {
                left = left.add(&unit[u].mul(&mult[u][i][q]));
                right = right.add(&unit[u].mul(&mult[i][u][q]));
            }
            if left != expect || right != expect {
                return Ok(Certificate::fail(
                    "unit",
                    vec![i, q],
                    format!("1·e{i} or e{i}·1 differs from e{i} at e{q}"),
                ));
            }
        }
    }
    Ok(Certificate::Pass)
}

/// Coassociativity with witness `[i, a, b, c]` (coefficient of
/// `e_a⊗e_b⊗e_c`), then the counit laws with witness `[i, q]`.
pub fn audit_coalgebra<F: Field>(comult: &Tensor3<F>, counit: &[F]) -> Result<Certificate> {
    let n = counit.len();
    if !shape3(comult, n, n, n) {
        return Err(dims("comultiplication table"));
    }
    for i in 0..n {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut left = F::zero();
                    let mut right = F::zero();
                    for p in 0..n {
                        left = left.add(&comult[i][p][c].mul(&comult[p][a][b]));
                        right = right.add(&comult[i][a][p].mul(&comult[p][b][c]));
                    }
                    if left != right {
                        return Ok(Certificate::fail(
                            "coassociativity",
                            vec![i, a, b, c],
                            format!("(Δ⊗1)Δ and (1⊗Δ)Δ differ on e{i} at e{a}⊗e{b}⊗e{c}"),
                        ));
                    }
                }
            }
        }
    }
    for i in 0..n {
        for q in 0..n {
            let expect = if i == q { F::one() } else { F::zero() };
            let mut left = F::zero();
            let mut right = F::zero();
            for p in 0..n {
                left = left.add(&counit[p].mul(&comult[i][p][q]));
                right = right.add(&counit[p].mul(&comult[i][q][p]));
            }
            if left != expect || right != expect {
                return Ok(Certificate::fail(
                    "counit",
                    vec![i, q],
                    format!("(ε⊗1)Δ or (1⊗ε)Δ moves e{i} at e{q}"),
                ));
            }
        }
    }
    Ok(Certificate::Pass)
}

/// `(ab)m = a(bm)` with witness `[a, b, m, q]`, then `1·m = m` with witness `[m, q]`.
pub fn audit_module<F: Field>(
    algebra: &Algebra<F>,
    dim: usize,
    action: &Tensor3<F>,
) -> Result<Certificate> {
    let n = algebra.dim;
    if !shape3(action, n, dim, dim) {
        return Err(dims("action tensor"));
    }
    for a in 0..n {
        for b in 0..n {
            for m in 0..dim {
                for q in 0..dim {
                    let mut left = F::zero();
                    for p in 0..n {
                        left = left.add(&algebra.mult[a][b][p].mul(&action[p][m][q]));
                    }
                    let mut right = F::zero();
                    for r in 0..dim {
                        right = right.add(&action[b][m][r].mul(&action[a][r][q]));
                    }
                    if left != right {
                        return Ok(Certificate::fail(
                            "action associativity",
                            vec![a, b, m, q],
                            format!("(e{a}e{b})·m{m} and e{a}·(e{b}·m{m}) differ at m{q}"),
                        ));
                    }
                }
            }
        }
    }
    for m in 0..dim {
        for q in 0..dim {
            let expect = if m == q { F::one() } else { F::zero() };
            let mut got = F::zero();
            for u in 0..n {
                got = got.add(&algebra.unit[u].mul(&action[u][m][q]));
            }
            if got != expect {
                return Ok(Certificate::fail(
                    "action unit",
                    vec![m, q],
                    format!("1·m{m} differs from m{m} at m{q}"),
                ));
            }
        }
    }
    Ok(Certificate::Pass)
}

/// `(Δ⊗1)δ = (1⊗δ)δ` with witness `[x, a, b, y]`, then `(ε⊗1)δ = 1` with
/// witness `[x, y]`.
pub fn audit_comodule<F: Field>(
    coalgebra: &Coalgebra<F>,
    dim: usize,
    coaction: &Tensor3<F>,
) -> Result<Certificate> {
    let n = coalgebra.dim;
    if !shape3(coaction, dim, n, dim) {
        return Err(dims("coaction tensor"));
    }
    for x in 0..dim {
        for a in 0..n {
            for b in 0..n {
                for y in 0..dim {
                    let mut left = F::zero();
                    for c in 0..n {
                        left = left.add(&coaction[x][c][y].mul(&coalgebra.comult[c][a][b]));
                    }
                    let mut right = F::zero();
                    for z in 0..dim {
                        right = right.add(&coaction[x][a][z].mul(&coaction[z][b][y]));
                    }
                    if left != right {
                        return Ok(Certificate::fail(
                            "coaction coassociativity",
                            vec![x, a, b, y],
                            format!("(Δ⊗1)δ and (1⊗δ)δ differ on x{x} at e{a}⊗e{b}⊗x{y}"),
                        ));
                    }
                }
            }
        }
    }
    for x in 0..dim {
        for y in 0..dim {
            let expect = if x == y { F::one() } else { F::zero() };
            let mut got = F::zero();
            for c in 0..n {
                got = got.add(&coalgebra.counit[c].mul(&coaction[x][c][y]));
            }
            if got != expect {
                return Ok(Certificate::fail(
                    "coaction counit",
                    vec![x, y],
                    format!("(ε⊗1)δ moves x{x} at x{y}"),
                ));
            }
        }
    }
    Ok(Certificate::Pass)
}

fn reject(cert: Certificate, wrap: impl Fn(String) -> Error) -> Result<()> {
    match cert.violation() {
        None => Ok(()),
        Some(v) => Err(wrap(format!(
            "{} fails at {:?}: {}",
            v.law, v.witness, v.detail
        ))),
    }
}

impl<F: Field> Algebra<F> {
    pub fn new(mult: Tensor3<F>, unit: Vec<F>) -> Result<Self> {
        reject(audit_algebra(&mult, &unit)?, Error::NotAMonoid)?;
        Ok(Algebra {
            dim: unit.len(),
            mult,
            unit,
        })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground() -> Self {
        Algebra::new(vec![vec![vec![F::one()]]], vec![F::one()]).expect("ground field")
    }

    /// `k[x]/(x^n)` in the basis `1, x, …, x^{n-1}`.
    pub fn truncated_polynomial(n: usize) -> Self {
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| if i + j == k { F::one() } else { F::zero() })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let unit = (0..n)
            .map(|k| if k == 0 { F::one() } else { F::zero() })
            .collect();
        Algebra::new(mult, unit).expect("truncated polynomial algebra")
    }

    /// `k^n` with pointwise multiplication in the idempotent basis.
    pub fn diagonal(n: usize) -> Self {
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                if i == j && j == k {
                                    F::one()
                                } else {
                                    F::zero()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Algebra::new(mult, vec![F::one(); n]).expect("diagonal algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult(&self) -> &Tensor3<F> {
        &self.mult
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    /// Product of two vectors.
    pub fn product(&self, a: &[F], b: &[F]) -> Vec<F> {
        let n = self.dim;
        let mut out = vec![F::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let s = a[i].mul(&b[j]);
                if s.is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = o.add(&s.mul(&self.mult[i][j][k]));
                }
            }
        }
        out
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular_module(&self) -> LinModule<F> {
        LinModule::new(self.clone(), self.dim, self.mult.clone()).expect("regular module")
    }
}

impl<F: Field> Coalgebra<F> {
    pub fn new(comult: Tensor3<F>, counit: Vec<F>) -> Result<Self> {
        reject(audit_coalgebra(&comult, &counit)?, Error::NotAComonoid)?;
        Ok(Coalgebra {
            dim: counit.len(),
            comult,
            counit,
        })
    }

    /// The ground field: `Δ1 = 1⊗1`, `ε1 = 1`.
    pub fn ground() -> Self {
        Coalgebra::new(vec![vec![vec![F::one()]]], vec![F::one()]).expect("ground field")
    }

    /// `n` group-like elements.
    pub fn group_like(n: usize) -> Self {
        let comult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                if i == j && j == k {
                                    F::one()
                                } else {
                                    F::zero()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Coalgebra::new(comult, vec![F::one(); n]).expect("group-like coalgebra")
    }

    /// The divided-power coalgebra on `d_0, …, d_{n-1}`:
    /// `Δ d_k = Σ_{i+j=k} d_i ⊗ d_j`, `ε d_k = [k = 0]`.
    pub fn divided_power(n: usize) -> Self {
        let comult = (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| if i + j == k { F::one() } else { F::zero() })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let counit = (0..n)
            .map(|k| if k == 0 { F::one() } else { F::zero() })
            .collect();
        Coalgebra::new(comult, counit).expect("divided power coalgebra")
    }

    /// `C ⊕ D` with the block-diagonal structure.
    pub fn direct_sum(&self, other: &Coalgebra<F>) -> Self {
        let (m, n) = (self.dim, other.dim);
        let total = m + n;
        let mut comult = vec![vec![vec![F::zero(); total]; total]; total];
        for i in 0..total {
            for j in 0..total {
                for k in 0..total {
                    comult[i][j][k] = match (i < m, j < m, k < m) {
                        (true, true, true) => self.comult[i][j][k].clone(),
                        (false, false, false) => other.comult[i - m][j - m][k - m].clone(),
                        _ => F::zero(),
                    };
                }
            }
        }
        let counit = self.counit.iter().chain(&other.counit).cloned().collect();
        Coalgebra::new(comult, counit).expect("direct sum of coalgebras")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn comult(&self) -> &Tensor3<F> {
        &self.comult
    }

    pub fn counit(&self) -> &[F] {
        &self.counit
    }

    /// The coalgebra coacting on itself by its comultiplication.
    pub fn regular_comodule(&self) -> LinComodule<F> {
        LinComodule::new(self.clone(), self.dim, self.comult.clone()).expect("regular comodule")
    }
}

impl<F: Field> LinModule<F> {
    pub fn new(algebra: Algebra<F>, dim: usize, action: Tensor3<F>) -> Result<Self> {
        reject(audit_module(&algebra, dim, &action)?, Error::Invalid)?;
        Ok(LinModule {
            algebra,
            dim,
            action,
        })
    }

    pub fn algebra(&self) -> &Algebra<F> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &Tensor3<F> {
        &self.action
    }
}

impl<F: Field> LinComodule<F> {
    pub fn new(coalgebra: Coalgebra<F>, dim: usize, coaction: Tensor3<F>) -> Result<Self> {
        reject(audit_comodule(&coalgebra, dim, &coaction)?, Error::Invalid)?;
        Ok(LinComodule {
            coalgebra,
            dim,
            coaction,
        })
    }

    pub fn coalgebra(&self) -> &Coalgebra<F> {
        &self.coalgebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coaction(&self) -> &Tensor3<F> {
        &self.coaction
    }
}

/// The 0/1 tensor whose entries, in index order, are the bits of `code`.
pub(crate) fn decode_f2<F: Field>(mut code: u64, a: usize, b: usize, c: usize) -> Tensor3<F> {
    let mut t = vec![vec![vec![F::zero(); c]; b]; a];
    for plane in t.iter_mut() {
        for row in plane.iter_mut() {
            for e in row.iter_mut() {
                if code & 1 == 1 {
                    *e = F::one();
                }
                code >>= 1;
            }
        }
    }
    t
}

pub(crate) fn decode_vec_f2<F: Field>(mut code: u64, n: usize) -> Vec<F> {
    (0..n)
        .map(|_| {
            let bit = code & 1 == 1;
            code >>= 1;
            if bit {
                F::one()
            } else {
                F::zero()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{F2, Q};

    #[test]
    fn standard_examples_pass_their_audits() {
        Algebra::<Q>::truncated_polynomial(3);
        Algebra::<F2>::diagonal(2);
        Coalgebra::<Q>::divided_power(3);
        Coalgebra::<F2>::group_like(2).direct_sum(&Coalgebra::divided_power(2));
    }

    #[test]
    fn broken_tables_are_rejected_with_witness() {
        // x·x = 1 and x·1 = 0 breaks the unit law
        let mut mult: Tensor3<Q> = Algebra::truncated_polynomial(2).mult().clone();
        mult[1][0][1] = Q::zero();
        let cert = audit_algebra(&mult, &[Q::one(), Q::zero()]).unwrap();
        assert_eq!(cert.violation().unwrap().law, "unit");
        assert!(matches!(
            Algebra::new(mult, vec![Q::one(), Q::zero()]),
            Err(Error::NotAMonoid(_))
        ));
        let bad = Coalgebra::<F2>::new(vec![vec![vec![F2::one()]]], vec![F2::zero()]);
        assert!(matches!(bad, Err(Error::NotAComonoid(_))));
    }

    #[test]
    fn corrupted_coaction_is_witnessed() {
        let c = Coalgebra::<F2>::divided_power(2);
        let mut coaction = c.comult().clone();
        coaction[1][1][1] = F2::one();
        let cert = audit_comodule(&c, 2, &coaction).unwrap();
        assert!(cert.violation().is_some());
        assert!(LinComodule::new(c, 2, coaction).is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            audit_algebra::<Q>(&vec![vec![vec![Q::one()]]], &[Q::one(), Q::zero()]),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
