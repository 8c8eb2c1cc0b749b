//! Audit of the enriched-fibration conditions on finite tabulated data: a
//! functor `T: V → W` between monoidal categories, and a functor `P: A → X`
//! where `A` is enriched in `V` and `X` in `W`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{FinCategory, FinCategorySpec, FinFunctor};
use super::fibration::is_cocartesian;
use super::indexed::FunctorSpec;
use crate::base::Quantale;
use crate::cert::Certificate;
use crate::enrichment::measuring_object;
use crate::error::{Error, Result};

/// A chosen cocartesian lift pair and the tensor of the two lifts in `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftTensor {
    pub left: usize,
    pub right: usize,
    pub product: usize,
}

/// All tables are by index. `comp_a[a][b][c]` is the `V`-morphism
/// `hom_a[b][c] ⊗ hom_a[a][b] → hom_a[a][c]`; `id_a[a]` is
/// `I_V → hom_a[a][a]`; likewise for `X` over `W`.
#[derive(Clone, Debug)]
pub struct EnrichedFibrationData {
    pub t: FinFunctor,
    pub v_tensor_ob: Vec<Vec<usize>>,
    pub w_tensor_ob: Vec<Vec<usize>>,
    pub v_unit: usize,
    pub w_unit: usize,
    pub w_tensor_mor: Vec<Vec<usize>>,
    pub lifts: Vec<LiftTensor>,
    pub a_objects: Vec<String>,
    pub x_objects: Vec<String>,
    pub p_ob: Vec<usize>,
    pub hom_a: Vec<Vec<usize>>,
    pub hom_x: Vec<Vec<usize>>,
    pub comp_a: Vec<Vec<Vec<usize>>>,
    pub comp_x: Vec<Vec<Vec<usize>>>,
    pub id_a: Vec<usize>,
    pub id_x: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnrichedReport {
    /// `T` is strict monoidal on objects, units and the chosen lift tensors.
    pub monoidal: Certificate,
    /// `T(A(a,b)) = X(Pa,Pb)`.
    pub hom_square: Certificate,
    /// `T` carries composition and identities of `A` to those of `X`.
    pub composition: Certificate,
    /// The chosen lifts and their tensors are cocartesian.
    pub cocartesian_tensor: Certificate,
}

impl EnrichedReport {
    pub fn clauses(&self) -> [(&'static str, &Certificate); 4] {
        [
            ("monoidal", &self.monoidal),
            ("hom square", &self.hom_square),
            ("composition", &self.composition),
            ("cocartesian tensor", &self.cocartesian_tensor),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.clauses().iter().all(|(_, c)| c.passed())
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.clauses()
            .iter()
            .filter(|(_, c)| !c.passed())
            .map(|(n, _)| *n)
            .collect()
    }
}

fn clause_monoidal(d: &EnrichedFibrationData) -> Certificate {
    let t = &d.t;
    let nv = t.src().object_count();
    for x in 0..nv {
        for y in 0..nv {
            if t.ob(d.v_tensor_ob[x][y]) != d.w_tensor_ob[t.ob(x)][t.ob(y)] {
                return Certificate::fail("monoidal", vec![x, y], "T(x⊗y) ≠ Tx⊗Ty");
            }
        }
    }
    if t.ob(d.v_unit) != d.w_unit {
        return Certificate::fail("monoidal", vec![], "T(I) ≠ I");
    }
    for (i, l) in d.lifts.iter().enumerate() {
        if t.mor(l.product) != d.w_tensor_mor[t.mor(l.left)][t.mor(l.right)] {
            return Certificate::fail("monoidal", vec![i], "T(φ⊗ψ) ≠ Tφ⊗Tψ on a chosen lift pair");
        }
    }
    Certificate::Pass
}

fn clause_hom(d: &EnrichedFibrationData) -> Certificate {
    let n = d.a_objects.len();
    for a in 0..n {
        for b in 0..n {
            if d.t.ob(d.hom_a[a][b]) != d.hom_x[d.p_ob[a]][d.p_ob[b]] {
                return Certificate::fail("hom square", vec![a, b], "T(A(a,b)) ≠ X(Pa,Pb)");
            }
        }
    }
    Certificate::Pass
}

fn clause_composition(d: &EnrichedFibrationData) -> Certificate {
    let n = d.a_objects.len();
    let p = &d.p_ob;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if d.t.mor(d.comp_a[a][b][c]) != d.comp_x[p[a]][p[b]][p[c]] {
                    return Certificate::fail("composition", vec![a, b, c], "T(M_A) ≠ M_X");
                }
            }
        }
        if d.t.mor(d.id_a[a]) != d.id_x[p[a]] {
            return Certificate::fail("identities", vec![a], "T(j_A) ≠ j_X");
        }
    }
    Certificate::Pass
}

fn clause_cocartesian(d: &EnrichedFibrationData) -> Certificate {
    for (i, l) in d.lifts.iter().enumerate() {
        for (role, m) in [("left", l.left), ("right", l.right), ("product", l.product)] {
            if !is_cocartesian(&d.t, m) {
                return Certificate::fail(
                    "cocartesian tensor",
                    vec![i],
                    format!("{role} {} is not cocartesian", d.t.src().morphism(m).name),
                );
            }
        }
    }
    Certificate::Pass
}

/// Audits the four clauses independently.
pub fn check_enriched_fibration(d: &EnrichedFibrationData) -> EnrichedReport {
    EnrichedReport {
        monoidal: clause_monoidal(d),
        hom_square: clause_hom(d),
        composition: clause_composition(d),
        cocartesian_tensor: clause_cocartesian(d),
    }
}

/// Whether every table has the shape and types its role requires. This is a
/// precondition, not one of the audited clauses.
pub fn check_typing(d: &EnrichedFibrationData) -> Certificate {
    let (v, w) = (d.t.src(), d.t.dst());
    let n = d.a_objects.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let m = d.comp_a[a][b][c];
                if v.src(m) != d.v_tensor_ob[d.hom_a[b][c]][d.hom_a[a][b]]
                    || v.dst(m) != d.hom_a[a][c]
                {
                    return Certificate::fail(
                        "typing",
                        vec![a, b, c],
                        "composition of A has the wrong type",
                    );
                }
            }
        }
        let j = d.id_a[a];
        if v.src(j) != d.v_unit || v.dst(j) != d.hom_a[a][a] {
            return Certificate::fail("typing", vec![a], "identity of A has the wrong type");
        }
    }
    let nx = d.x_objects.len();
    for x in 0..nx {
        for y in 0..nx {
            for z in 0..nx {
                let m = d.comp_x[x][y][z];
                if w.src(m) != d.w_tensor_ob[d.hom_x[y][z]][d.hom_x[x][y]]
                    || w.dst(m) != d.hom_x[x][z]
                {
                    return Certificate::fail(
                        "typing",
                        vec![x, y, z],
                        "composition of X has the wrong type",
                    );
                }
            }
        }
    }
    for (i, l) in d.lifts.iter().enumerate() {
        let p = l.product;
        if v.src(p) != d.v_tensor_ob[v.src(l.left)][v.src(l.right)]
            || v.dst(p) != d.v_tensor_ob[v.dst(l.left)][v.dst(l.right)]
        {
            return Certificate::fail("typing", vec![i], "lift tensor has the wrong type");
        }
    }
    Certificate::Pass
}

/// The one-object picture over a finite quantale, as poset-enriched data:
/// `V` is the poset of pairs `(x, c)` with `c` a comonoid and `x ⊑ c⊗x`,
/// `W` the poset of comonoids, `T` the second projection; `A` has objects
/// `(m, a)` with `a` a monoid and `a⊗m ⊑ m`, `X` the monoids, and the homs are
/// `A((m,a),(n,b)) = ([m,n] ∧ P(a,b) ⊗ -, P(a,b))` computed as the largest
/// comodule value below `[m,n]` over `P(a,b)`.
pub fn one_object_instance(q: &Quantale) -> Result<EnrichedFibrationData> {
    let comonoids = q.comonoids();
    let monoids = q.monoids();
    let mut v_obs = Vec::new();
    for &c in &comonoids {
        for x in q.elements() {
            if q.leq(x, q.tensor(c, x)) {
                v_obs.push((x, c));
            }
        }
    }
    let name = |(x, c): (crate::base::QElement, crate::base::QElement)| {
        format!("({},{})", q.name(x), q.name(c))
    };
    let v = Arc::new(FinCategory::from_preorder(
        v_obs.iter().map(|&o| name(o)).collect(),
        |i, j| q.leq(v_obs[i].0, v_obs[j].0) && q.leq(v_obs[i].1, v_obs[j].1),
    )?);
    let w = Arc::new(FinCategory::from_preorder(
        comonoids.iter().map(|&c| q.name(c).to_string()).collect(),
        |i, j| q.leq(comonoids[i], comonoids[j]),
    )?);
    let v_index = |o| {
        v_obs
            .iter()
            .position(|&p| p == o)
            .ok_or_else(|| Error::Invalid("not a comodule pair".into()))
    };
    let w_index = |c| comonoids.iter().position(|&p| p == c).expect("comonoid");
    let arrow = |cat: &FinCategory, i: usize, j: usize| cat.hom(i, j).first().copied();
    let t = FinFunctor::new(
        v.clone(),
        w.clone(),
        v_obs.iter().map(|&(_, c)| w_index(c)).collect(),
        (0..v.morphism_count())
            .map(|m| {
                let (i, j) = (w_index(v_obs[v.src(m)].1), w_index(v_obs[v.dst(m)].1));
                arrow(&w, i, j).expect("monotone")
            })
            .collect(),
    )?;
    let v_tensor_ob = (0..v_obs.len())
        .map(|i| {
            (0..v_obs.len())
                .map(|j| {
                    let ((x, c), (y, d)) = (v_obs[i], v_obs[j]);
                    v_index((q.tensor(x, y), q.tensor(c, d)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let w_tensor_ob: Vec<Vec<usize>> = comonoids
        .iter()
        .map(|&c| comonoids.iter().map(|&d| w_index(q.tensor(c, d))).collect())
        .collect();
    let w_tensor_mor: Vec<Vec<usize>> = (0..w.morphism_count())
        .map(|f| {
            (0..w.morphism_count())
                .map(|g| {
                    let s = w_tensor_ob[w.src(f)][w.src(g)];
                    let t = w_tensor_ob[w.dst(f)][w.dst(g)];
                    arrow(&w, s, t).expect("tensor is monotone")
                })
                .collect()
        })
        .collect();
    // chosen cocartesian lifts: for each comonoid map c ⊑ d and (x, c), the
    // least (y, d) above it
    let mut chosen = Vec::new();
    for g in 0..w.morphism_count() {
        for i in 0..v_obs.len() {
            if t.ob(i) != w.src(g) {
                continue;
            }
            let lift = (0..v.morphism_count())
                .filter(|&m| v.src(m) == i && t.mor(m) == g)
                .find(|&m| is_cocartesian(&t, m))
                .ok_or_else(|| Error::Invalid("missing cocartesian lift".into()))?;
            chosen.push(lift);
        }
    }
    let mut lifts = Vec::new();
    for &l in &chosen {
        for &r in &chosen {
            let s = v_tensor_ob[v.src(l)][v.src(r)];
            let d = v_tensor_ob[v.dst(l)][v.dst(r)];
            lifts.push(LiftTensor {
                left: l,
                right: r,
                product: arrow(&v, s, d).expect("tensor is monotone"),
            });
        }
    }
    let mut a_obs = Vec::new();
    for &a in &monoids {
        for m in q.elements() {
            if q.leq(q.tensor(a, m), m) {
                a_obs.push((m, a));
            }
        }
    }
    let hom_a = (0..a_obs.len())
        .map(|i| {
            (0..a_obs.len())
                .map(|j| {
                    let ((m, a), (n, b)) = (a_obs[i], a_obs[j]);
                    let p = measuring_object(q, a, b)?;
                    // largest x with x ⊑ p⊗x and x⊗m ⊑ n
                    let mut x = q.hom(m, n);
                    loop {
                        let next = q.meet(x, q.tensor(p, x));
                        if next == x {
                            break;
                        }
                        x = next;
                    }
                    v_index((x, p))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let hom_x: Vec<Vec<usize>> = monoids
        .iter()
        .map(|&a| {
            monoids
                .iter()
                .map(|&b| Ok(w_index(measuring_object(q, a, b)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m_index = |a| monoids.iter().position(|&p| p == a).expect("monoid");
    let p_ob: Vec<usize> = a_obs.iter().map(|&(_, a)| m_index(a)).collect();
    let missing = || Error::Invalid("enrichment composition does not exist in the poset".into());
    let n = a_obs.len();
    let comp_a = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..n)
                        .map(|c| {
                            arrow(&v, v_tensor_ob[hom_a[b][c]][hom_a[a][b]], hom_a[a][c])
                                .ok_or_else(missing)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let nx = monoids.len();
    let comp_x = (0..nx)
        .map(|x| {
            (0..nx)
                .map(|y| {
                    (0..nx)
                        .map(|z| {
                            arrow(&w, w_tensor_ob[hom_x[y][z]][hom_x[x][y]], hom_x[x][z])
                                .ok_or_else(missing)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let v_unit = v_index((q.unit(), q.unit()))?;
    let w_unit = w_index(q.unit());
    let id_a = (0..n)
        .map(|a| arrow(&v, v_unit, hom_a[a][a]).ok_or_else(missing))
        .collect::<Result<Vec<_>>>()?;
    let id_x = (0..nx)
        .map(|x| arrow(&w, w_unit, hom_x[x][x]).ok_or_else(missing))
        .collect::<Result<Vec<_>>>()?;
    Ok(EnrichedFibrationData {
        t,
        v_tensor_ob,
        w_tensor_ob,
        v_unit,
        w_unit,
        w_tensor_mor,
        lifts,
        a_objects: a_obs.iter().map(|&o| name(o)).collect(),
        x_objects: monoids.iter().map(|&a| q.name(a).to_string()).collect(),
        p_ob,
        hom_a,
        hom_x,
        comp_a,
        comp_x,
        id_a,
        id_x,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftTensorSpec {
    pub left: String,
    pub right: String,
    pub product: String,
}

/// JSON form of [`EnrichedFibrationData`], by names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnrichedFibrationSpec {
    pub v: FinCategorySpec,
    pub w: FinCategorySpec,
    pub t: FunctorSpec,
    pub v_tensor_ob: Vec<Vec<String>>,
    pub w_tensor_ob: Vec<Vec<String>>,
    pub v_unit: String,
    pub w_unit: String,
    pub w_tensor_mor: Vec<Vec<String>>,
    pub lifts: Vec<LiftTensorSpec>,
    pub a_objects: Vec<String>,
    pub x_objects: Vec<String>,
    pub p_ob: Vec<String>,
    pub hom_a: Vec<Vec<String>>,
    pub hom_x: Vec<Vec<String>>,
    pub comp_a: Vec<Vec<Vec<String>>>,
    pub comp_x: Vec<Vec<Vec<String>>>,
    pub id_a: Vec<String>,
    pub id_x: Vec<String>,
}

fn lookup(names: &[String], n: &str, what: &str) -> Result<usize> {
    names
        .iter()
        .position(|x| x == n)
        .ok_or_else(|| Error::Invalid(format!("unknown {what} `{n}`")))
}

impl EnrichedFibrationSpec {
    pub fn build(&self) -> Result<EnrichedFibrationData> {
        let v = Arc::new(self.v.build()?);
        let w = Arc::new(self.w.build()?);
        let vo = |n: &str| {
            v.object_index(n)
                .ok_or_else(|| Error::Invalid(format!("unknown V object `{n}`")))
        };
        let wo = |n: &str| {
            w.object_index(n)
                .ok_or_else(|| Error::Invalid(format!("unknown W object `{n}`")))
        };
        let vm = |n: &str| {
            v.morphism_index(n)
                .ok_or_else(|| Error::Invalid(format!("unknown V morphism `{n}`")))
        };
        let wm = |n: &str| {
            w.morphism_index(n)
                .ok_or_else(|| Error::Invalid(format!("unknown W morphism `{n}`")))
        };
        let t = FinFunctor::new(
            v.clone(),
            w.clone(),
            self.t.ob.iter().map(|n| wo(n)).collect::<Result<_>>()?,
            self.t.mor.iter().map(|n| wm(n)).collect::<Result<_>>()?,
        )?;
        let table =
            |t: &Vec<Vec<String>>, f: &dyn Fn(&str) -> Result<usize>| -> Result<Vec<Vec<usize>>> {
                t.iter().map(|r| r.iter().map(|n| f(n)).collect()).collect()
            };
        let cube = |t: &Vec<Vec<Vec<String>>>,
                    f: &dyn Fn(&str) -> Result<usize>|
         -> Result<Vec<Vec<Vec<usize>>>> {
            t.iter()
                .map(|p| p.iter().map(|r| r.iter().map(|n| f(n)).collect()).collect())
                .collect()
        };
        Ok(EnrichedFibrationData {
            v_tensor_ob: table(&self.v_tensor_ob, &vo)?,
            w_tensor_ob: table(&self.w_tensor_ob, &wo)?,
            v_unit: vo(&self.v_unit)?,
            w_unit: wo(&self.w_unit)?,
            w_tensor_mor: table(&self.w_tensor_mor, &wm)?,
            lifts: self
                .lifts
                .iter()
                .map(|l| {
                    Ok(LiftTensor {
                        left: vm(&l.left)?,
                        right: vm(&l.right)?,
                        product: vm(&l.product)?,
                    })
                })
                .collect::<Result<_>>()?,
            p_ob: self
                .p_ob
                .iter()
                .map(|n| lookup(&self.x_objects, n, "X object"))
                .collect::<Result<_>>()?,
            hom_a: table(&self.hom_a, &vo)?,
            hom_x: table(&self.hom_x, &wo)?,
            comp_a: cube(&self.comp_a, &vm)?,
            comp_x: cube(&self.comp_x, &wm)?,
            id_a: self.id_a.iter().map(|n| vm(n)).collect::<Result<_>>()?,
            id_x: self.id_x.iter().map(|n| wm(n)).collect::<Result<_>>()?,
            a_objects: self.a_objects.clone(),
            x_objects: self.x_objects.clone(),
            t,
        })
    }
}

impl EnrichedFibrationData {
    pub fn to_spec(&self) -> EnrichedFibrationSpec {
        let (v, w) = (self.t.src(), self.t.dst());
        let vo = |i: usize| v.objects()[i].clone();
        let wo = |i: usize| w.objects()[i].clone();
        let vm = |i: usize| v.morphism(i).name.clone();
        let wm = |i: usize| w.morphism(i).name.clone();
        let table = |t: &Vec<Vec<usize>>, f: &dyn Fn(usize) -> String| -> Vec<Vec<String>> {
            t.iter()
                .map(|r| r.iter().map(|&i| f(i)).collect())
                .collect()
        };
        let cube =
            |t: &Vec<Vec<Vec<usize>>>, f: &dyn Fn(usize) -> String| -> Vec<Vec<Vec<String>>> {
                t.iter()
                    .map(|p| {
                        p.iter()
                            .map(|r| r.iter().map(|&i| f(i)).collect())
                            .collect()
                    })
                    .collect()
            };
        EnrichedFibrationSpec {
            v: v.to_spec(),
            w: w.to_spec(),
            t: FunctorSpec {
                ob: self.t.ob_table().iter().map(|&i| wo(i)).collect(),
                mor: self.t.mor_table().iter().map(|&i| wm(i)).collect(),
            },
            v_tensor_ob: table(&self.v_tensor_ob, &vo),
            w_tensor_ob: table(&self.w_tensor_ob, &wo),
            v_unit: vo(self.v_unit),
            w_unit: wo(self.w_unit),
            w_tensor_mor: table(&self.w_tensor_mor, &wm),
            lifts: self
                .lifts
                .iter()
                .map(|l| LiftTensorSpec {
                    left: vm(l.left),
                    right: vm(l.right),
                    product: vm(l.product),
                })
                .collect(),
            a_objects: self.a_objects.clone(),
            x_objects: self.x_objects.clone(),
            p_ob: self
                .p_ob
                .iter()
                .map(|&i| self.x_objects[i].clone())
                .collect(),
            hom_a: table(&self.hom_a, &vo),
            hom_x: table(&self.hom_x, &wo),
            comp_a: cube(&self.comp_a, &vm),
            comp_x: cube(&self.comp_x, &wm),
            id_a: self.id_a.iter().map(|&i| vm(i)).collect(),
            id_x: self.id_x.iter().map(|&i| wm(i)).collect(),
        }
    }
}

/// The four single-clause corruptions of a passing instance, each paired
/// with the clause it is meant to break.
pub fn single_mutations(d: &EnrichedFibrationData) -> Vec<(&'static str, EnrichedFibrationData)> {
    let (v, w) = (d.t.src().clone(), d.t.dst().clone());
    let mut out = Vec::new();
    let nv = v.object_count();
    let n = d.a_objects.len();

    // (i) a tensor entry not used as the source of any composition
    let used: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
        .map(|(a, b, c)| (d.hom_a[b][c], d.hom_a[a][b]))
        .collect();
    'outer: for x in 0..nv {
        for y in 0..nv {
            if used.contains(&(x, y)) {
                continue;
            }
            let current = d.t.ob(d.v_tensor_ob[x][y]);
            if let Some(other) = (0..nv).find(|&o| d.t.ob(o) != current) {
                let mut m = d.clone();
                m.v_tensor_ob[x][y] = other;
                out.push(("monoidal", m));
                break 'outer;
            }
        }
    }

    // (ii) a hom object moved to a different fibre
    'outer2: for a in 0..n {
        for b in 0..n {
            let current = d.t.ob(d.hom_a[a][b]);
            if let Some(other) = (0..nv).find(|&o| d.t.ob(o) != current) {
                let mut m = d.clone();
                m.hom_a[a][b] = other;
                out.push(("hom square", m));
                break 'outer2;
            }
        }
    }

    // (iii) a composition entry replaced by a morphism over a different arrow
    'outer3: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let current = d.t.mor(d.comp_a[a][b][c]);
                if let Some(other) = (0..v.morphism_count()).find(|&m| d.t.mor(m) != current) {
                    let mut m = d.clone();
                    m.comp_a[a][b][c] = other;
                    out.push(("composition", m));
                    break 'outer3;
                }
            }
        }
    }

    // (iv) a lift tensor replaced by a non-cocartesian morphism over the
    // same arrow of W
    'outer4: for (i, l) in d.lifts.iter().enumerate() {
        let over = d.t.mor(l.product);
        if let Some(other) =
            (0..v.morphism_count()).find(|&m| d.t.mor(m) == over && !is_cocartesian(&d.t, m))
        {
            let mut m = d.clone();
            m.lifts[i].product = other;
            out.push(("cocartesian tensor", m));
            break 'outer4;
        }
    }
    let _ = w;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{builtin, Builtin};

    #[test]
    fn boolean_instance_shape() {
        let q = builtin(Builtin::Boolean);
        let d = one_object_instance(&q).unwrap();
        assert_eq!(d.t.src().objects(), ["(0,0)", "(0,1)", "(1,1)"]);
        assert_eq!(d.t.dst().objects(), ["0", "1"]);
        assert_eq!(d.a_objects, ["(0,1)", "(1,1)"]);
        assert_eq!(d.x_objects, ["1"]);
        // A((1,1),(0,1)) = (1→0, 1) = (0,1)
        assert_eq!(d.t.src().objects()[d.hom_a[1][0]], "(0,1)");
        assert!(check_typing(&d).passed());
        assert!(check_enriched_fibration(&d).all_pass());
    }

    #[test]
    fn each_mutation_breaks_one_clause() {
        let q = builtin(Builtin::Boolean);
        let d = one_object_instance(&q).unwrap();
        let muts = single_mutations(&d);
        assert_eq!(muts.len(), 4);
        for (clause, m) in muts {
            assert_eq!(check_enriched_fibration(&m).failing(), vec![clause]);
        }
    }

    #[test]
    fn spec_round_trip() {
        let q = builtin(Builtin::Boolean);
        let d = one_object_instance(&q).unwrap();
        let spec = d.to_spec();
        let back = spec.build().unwrap();
        assert_eq!(back.to_spec(), spec);
    }
}
