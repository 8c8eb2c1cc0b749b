use super::algebra::{Algebra, Coalgebra, LinComodule, LinModule, Tensor3};
use super::field::Field;
use crate::cert::Certificate;
use crate::error::{Error, Result};

/// A bilinear `σ: C⊗A → B`: `σ(e_c ⊗ e_a) = Σ_k sigma[c][a][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measuring<F: Field> {
    coalgebra: Coalgebra<F>,
    source: Algebra<F>,
    target: Algebra<F>,
    sigma: Tensor3<F>,
}

impl<F: Field> Measuring<F> {
    pub fn new(
        coalgebra: Coalgebra<F>,
        source: Algebra<F>,
        target: Algebra<F>,
        sigma: Tensor3<F>,
    ) -> Result<Self> {
        let ok = sigma.len() == coalgebra.dim()
            && sigma
                .iter()
                .all(|r| r.len() == source.dim() && r.iter().all(|s| s.len() == target.dim()));
        if !ok {
            return Err(Error::DimensionMismatch(format!(
                "σ must be {}×{}×{}",
                coalgebra.dim(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(Measuring {
            coalgebra,
            source,
            target,
            sigma,
        })
    }

    pub fn coalgebra(&self) -> &Coalgebra<F> {
        &self.coalgebra
    }

    pub fn source(&self) -> &Algebra<F> {
        &self.source
    }

    pub fn target(&self) -> &Algebra<F> {
        &self.target
    }

    pub fn sigma(&self) -> &Tensor3<F> {
        &self.sigma
    }

    /// `σ(e_c ⊗ v)` for a vector `v` of the source.
    fn apply(&self, c: usize, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.target.dim()];
        for (a, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                *o = o.add(&x.mul(&self.sigma[c][a][k]));
            }
        }
        out
    }

    /// `σ∘(g⊗1)` for a linear `g: D → C` given as `g[d][c]`.
    pub fn precompose(&self, domain: &Coalgebra<F>, g: &[Vec<F>]) -> Result<Measuring<F>> {
        let sigma = g
            .iter()
            .map(|row| {
                (0..self.source.dim())
                    .map(|a| {
                        (0..self.target.dim())
                            .map(|k| {
                                row.iter().enumerate().fold(F::zero(), |acc, (c, x)| {
                                    acc.add(&x.mul(&self.sigma[c][a][k]))
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Measuring::new(
            domain.clone(),
            self.source.clone(),
            self.target.clone(),
            sigma,
        )
    }
}

fn basis<F: Field>(n: usize, i: usize) -> Vec<F> {
    (0..n)
        .map(|k| if k == i { F::one() } else { F::zero() })
        .collect()
}

/// `σ(c⊗aa′) = Σ σ(c₁⊗a)σ(c₂⊗a′)` with witness `[c, a, a′]`, then
/// `σ(c⊗1) = ε(c)1` with witness `[c]`.
pub fn verify_measuring<F: Field>(m: &Measuring<F>) -> Certificate {
    let (c, a, b) = (&m.coalgebra, &m.source, &m.target);
    for ci in 0..c.dim() {
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                let left = m.apply(ci, &a.product(&basis(a.dim(), x), &basis(a.dim(), y)));
                let mut right = vec![F::zero(); b.dim()];
                for p in 0..c.dim() {
                    for q in 0..c.dim() {
                        let coeff = &c.comult()[ci][p][q];
                        if coeff.is_zero() {
                            continue;
                        }
                        let prod = b.product(&m.sigma[p][x], &m.sigma[q][y]);
                        for (r, v) in right.iter_mut().zip(prod) {
                            *r = r.add(&coeff.mul(&v));
                        }
                    }
                }
                if left != right {
                    return Certificate::fail(
                        "multiplicativity",
                        vec![ci, x, y],
                        format!("σ(c{ci}⊗a{x}a{y}) differs from Σσ(c₁⊗a{x})σ(c₂⊗a{y})"),
                    );
                }
            }
        }
        let one = m.apply(ci, a.unit());
        let expect: Vec<F> = b.unit().iter().map(|u| c.counit()[ci].mul(u)).collect();
        if one != expect {
            return Certificate::fail(
                "unitality",
                vec![ci],
                format!("σ(c{ci}⊗1) differs from ε(c{ci})1"),
            );
        }
    }
    Certificate::Pass
}

/// Whether `f: A → B`, `f(e_a) = Σ_k f[a][k] e_k`, is an algebra map;
/// witness `[a, a′]` or `[]` for the unit.
pub fn check_algebra_map<F: Field>(a: &Algebra<F>, b: &Algebra<F>, f: &[Vec<F>]) -> Certificate {
    let apply = |v: &[F]| -> Vec<F> {
        (0..b.dim())
            .map(|k| {
                v.iter()
                    .enumerate()
                    .fold(F::zero(), |acc, (i, x)| acc.add(&x.mul(&f[i][k])))
            })
            .collect()
    };
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let left = apply(&a.product(&basis(a.dim(), x), &basis(a.dim(), y)));
            if left != b.product(&f[x], &f[y]) {
                return Certificate::fail(
                    "multiplicative",
                    vec![x, y],
                    format!("f(a{x}a{y}) ≠ f(a{x})f(a{y})"),
                );
            }
        }
    }
    if apply(a.unit()) != b.unit() {
        return Certificate::fail("unital", vec![], "f(1) ≠ 1");
    }
    Certificate::Pass
}

/// Whether `g: C → D`, `g(e_c) = Σ_d g[c][d] e_d`, is a coalgebra map;
/// witness `[c]`.
pub fn check_coalgebra_map<F: Field>(
    c: &Coalgebra<F>,
    d: &Coalgebra<F>,
    g: &[Vec<F>],
) -> Certificate {
    let n = d.dim();
    for ci in 0..c.dim() {
        for s in 0..n {
            for t in 0..n {
                let left = (0..n).fold(F::zero(), |acc, p| {
                    acc.add(&g[ci][p].mul(&d.comult()[p][s][t]))
                });
                let mut right = F::zero();
                for u in 0..c.dim() {
                    for v in 0..c.dim() {
                        right = right.add(&c.comult()[ci][u][v].mul(&g[u][s]).mul(&g[v][t]));
                    }
                }
                if left != right {
                    return Certificate::fail(
                        "comultiplicative",
                        vec![ci],
                        format!("Δg(c{ci}) ≠ (g⊗g)Δ(c{ci})"),
                    );
                }
            }
        }
        let eps = (0..n).fold(F::zero(), |acc, p| acc.add(&g[ci][p].mul(&d.counit()[p])));
        if eps != c.counit()[ci] {
            return Certificate::fail("counital", vec![ci], format!("εg(c{ci}) ≠ ε(c{ci})"));
        }
    }
    Certificate::Pass
}

/// `Hom(C, A)` with `(f∗g)(c) = Σ f(c₁)g(c₂)` and unit `η∘ε`, in the basis
/// `E_{c,a}: e_c ↦ e_a` indexed by `c·dim A + a`.
pub fn convolution_algebra<F: Field>(c: &Coalgebra<F>, a: &Algebra<F>) -> Result<Algebra<F>> {
    let (nc, na) = (c.dim(), a.dim());
    let n = nc * na;
    let mut mult = vec![vec![vec![F::zero(); n]; n]; n];
    for c1 in 0..nc {
        for a1 in 0..na {
            for c2 in 0..nc {
                for a2 in 0..na {
                    for ci in 0..nc {
                        let d = &c.comult()[ci][c1][c2];
                        if d.is_zero() {
                            continue;
                        }
                        for k in 0..na {
                            mult[c1 * na + a1][c2 * na + a2][ci * na + k] =
                                d.mul(&a.mult()[a1][a2][k]);
                        }
                    }
                }
            }
        }
    }
    let unit = (0..n)
        .map(|i| c.counit()[i / na].mul(&a.unit()[i % na]))
        .collect();
    Algebra::new(mult, unit)
        .map_err(|e| Error::CertificateFailure(format!("convolution algebra: {e}")))
}

/// `A*` with `Δ` the transpose of the multiplication and `ε` evaluation at
/// the unit, in the dual basis.
pub fn dual_coalgebra<F: Field>(a: &Algebra<F>) -> Result<Coalgebra<F>> {
    let n = a.dim();
    let comult = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| (0..n).map(|j| a.mult()[i][j][k].clone()).collect())
                .collect()
        })
        .collect();
    Coalgebra::new(comult, a.unit().to_vec())
        .map_err(|e| Error::CertificateFailure(format!("dual coalgebra: {e}")))
}

/// `C*` with the multiplication transpose to `Δ` and unit `ε`.
pub fn dual_algebra<F: Field>(c: &Coalgebra<F>) -> Result<Algebra<F>> {
    let n = c.dim();
    let mult = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| (0..n).map(|i| c.comult()[i][j][k].clone()).collect())
                .collect()
        })
        .collect();
    Algebra::new(mult, c.counit().to_vec())
        .map_err(|e| Error::CertificateFailure(format!("dual algebra: {e}")))
}

/// `σ(f⊗a) = f(a)·1_B` for `f ∈ A*`; with `B = k` this is the evaluation
/// pairing.
pub fn evaluation_measuring<F: Field>(a: &Algebra<F>, b: &Algebra<F>) -> Result<Measuring<F>> {
    let n = a.dim();
    let sigma = (0..n)
        .map(|i| {
            (0..n)
                .map(|x| {
                    if i == x {
                        b.unit().to_vec()
                    } else {
                        vec![F::zero(); b.dim()]
                    }
                })
                .collect()
        })
        .collect();
    Measuring::new(dual_coalgebra(a)?, a.clone(), b.clone(), sigma)
}

/// `Hom(X, M)` as a module over the convolution algebra `Hom(C, A)`:
/// `(φ·f)(x) = Σ φ(x₋₁)·f(x₀)`. Basis `E_{x,m}` indexed by `x·dim M + m`.
pub fn hom_module_structure<F: Field>(
    x: &LinComodule<F>,
    m: &LinModule<F>,
) -> Result<LinModule<F>> {
    let conv = convolution_algebra(x.coalgebra(), m.algebra())?;
    let (nc, na) = (x.coalgebra().dim(), m.algebra().dim());
    let (nx, nm) = (x.dim(), m.dim());
    let n = nx * nm;
    let mut action = vec![vec![vec![F::zero(); n]; n]; nc * na];
    for c0 in 0..nc {
        for a in 0..na {
            for y0 in 0..nx {
                for mi in 0..nm {
                    for xi in 0..nx {
                        let d = &x.coaction()[xi][c0][y0];
                        if d.is_zero() {
                            continue;
                        }
                        for k in 0..nm {
                            action[c0 * na + a][y0 * nm + mi][xi * nm + k] =
                                d.mul(&m.action()[a][mi][k]);
                        }
                    }
                }
            }
        }
    }
    LinModule::new(conv, n, action)
        .map_err(|e| Error::CertificateFailure(format!("hom module: {e}")))
}
