//! JSON forms: `{"field": "Q"|"F2", "dim": n, "mult": [[[scalar]]], "unit": [scalar]}`
//! and mirrors for the other structures. Scalars are integers or `"p/q"`
//! strings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::algebra::{Algebra, Coalgebra, LinComodule, LinModule, Tensor3};
use super::certify::UniversalityReport;
use super::field::{Field, F2};
use super::ops::Measuring;
use crate::error::{Error, Result};

type Json3 = Vec<Vec<Vec<Value>>>;

fn check_field<F: Field>(name: &str) -> Result<()> {
    if name == F::NAME {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "expected field `{}`, found `{name}`",
            F::NAME
        )))
    }
}

fn read_vec<F: Field>(v: &[Value]) -> Result<Vec<F>> {
    v.iter().map(F::from_json).collect()
}

fn read3<F: Field>(t: &Json3) -> Result<Tensor3<F>> {
    t.iter()
        .map(|p| p.iter().map(|r| read_vec(r)).collect())
        .collect()
}

fn write_vec<F: Field>(v: &[F]) -> Vec<Value> {
    v.iter().map(F::to_json).collect()
}

fn write3<F: Field>(t: &Tensor3<F>) -> Json3 {
    t.iter()
        .map(|p| p.iter().map(|r| write_vec(r)).collect())
        .collect()
}

fn check_dim(declared: usize, actual: usize) -> Result<()> {
    if declared == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "declared dimension {declared}, tables have {actual}"
        )))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub field: String,
    pub dim: usize,
    pub mult: Json3,
    pub unit: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoalgebraSpec {
    pub field: String,
    pub dim: usize,
    pub comult: Json3,
    pub counit: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub field: String,
    pub algebra: AlgebraSpec,
    pub dim: usize,
    pub action: Json3,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComoduleSpec {
    pub field: String,
    pub coalgebra: CoalgebraSpec,
    pub dim: usize,
    pub coaction: Json3,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasuringSpec {
    pub field: String,
    pub coalgebra: CoalgebraSpec,
    pub source: AlgebraSpec,
    pub target: AlgebraSpec,
    pub sigma: Json3,
}

impl AlgebraSpec {
    pub fn build<F: Field>(&self) -> Result<Algebra<F>> {
        check_field::<F>(&self.field)?;
        check_dim(self.dim, self.unit.len())?;
        Algebra::new(read3(&self.mult)?, read_vec(&self.unit)?)
    }

    pub fn of<F: Field>(a: &Algebra<F>) -> Self {
        AlgebraSpec {
            field: F::NAME.into(),
            dim: a.dim(),
            mult: write3(a.mult()),
            unit: write_vec(a.unit()),
        }
    }
}

impl CoalgebraSpec {
    pub fn build<F: Field>(&self) -> Result<Coalgebra<F>> {
        check_field::<F>(&self.field)?;
        check_dim(self.dim, self.counit.len())?;
        Coalgebra::new(read3(&self.comult)?, read_vec(&self.counit)?)
    }

    pub fn of<F: Field>(c: &Coalgebra<F>) -> Self {
        CoalgebraSpec {
            field: F::NAME.into(),
            dim: c.dim(),
            comult: write3(c.comult()),
            counit: write_vec(c.counit()),
        }
    }
}

impl ModuleSpec {
    pub fn build<F: Field>(&self) -> Result<LinModule<F>> {
        check_field::<F>(&self.field)?;
        LinModule::new(self.algebra.build()?, self.dim, read3(&self.action)?)
    }

    pub fn of<F: Field>(m: &LinModule<F>) -> Self {
        ModuleSpec {
            field: F::NAME.into(),
            algebra: AlgebraSpec::of(m.algebra()),
            dim: m.dim(),
            action: write3(m.action()),
        }
    }
}

impl ComoduleSpec {
    pub fn build<F: Field>(&self) -> Result<LinComodule<F>> {
        check_field::<F>(&self.field)?;
        LinComodule::new(self.coalgebra.build()?, self.dim, read3(&self.coaction)?)
    }

    pub fn of<F: Field>(x: &LinComodule<F>) -> Self {
        ComoduleSpec {
            field: F::NAME.into(),
            coalgebra: CoalgebraSpec::of(x.coalgebra()),
            dim: x.dim(),
            coaction: write3(x.coaction()),
        }
    }
}

impl MeasuringSpec {
    pub fn build<F: Field>(&self) -> Result<Measuring<F>> {
        check_field::<F>(&self.field)?;
        Measuring::new(
            self.coalgebra.build()?,
            self.source.build()?,
            self.target.build()?,
            read3(&self.sigma)?,
        )
    }

    pub fn of<F: Field>(m: &Measuring<F>) -> Self {
        MeasuringSpec {
            field: F::NAME.into(),
            coalgebra: CoalgebraSpec::of(m.coalgebra()),
            source: AlgebraSpec::of(m.source()),
            target: AlgebraSpec::of(m.target()),
            sigma: write3(m.sigma()),
        }
    }
}

#[derive(Serialize)]
struct FailureJson {
    coalgebra: CoalgebraSpec,
    sigma: Json3,
    factorizations: usize,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    search_dim: usize,
    bound: String,
    candidate: &'a crate::cert::Certificate,
    coalgebras: usize,
    measurings: usize,
    failure_count: usize,
    failures: Vec<FailureJson>,
    pass: bool,
}

impl UniversalityReport {
    pub fn to_json(&self) -> Value {
        let report = ReportJson {
            search_dim: self.search_dim,
            bound: self.bound.to_string(),
            candidate: &self.candidate,
            coalgebras: self.coalgebras,
            measurings: self.measurings,
            failure_count: self.failure_count,
            failures: self
                .failures
                .iter()
                .map(|f| FailureJson {
                    coalgebra: CoalgebraSpec::of::<F2>(&f.coalgebra),
                    sigma: write3(&f.sigma),
                    factorizations: f.factorizations,
                })
                .collect(),
            pass: self.pass,
        };
        serde_json::to_value(report).expect("report serializes")
    }
}
