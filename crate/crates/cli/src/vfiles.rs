//! File formats shared by the quantale-valued commands.

use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};
use vcat_core::base::QElement;
use vcat_core::vmat::{BaseRef, VMatSpec};
use vcat_core::{
    check_category, check_cocategory, check_comodule, check_module, Certificate, FinFn, FinSet,
    Quantale, VCategory, VCocategory, VComodule, VGraph, VMat, VModule,
};

use crate::input::{to_value, Input, Loader, Run, Stop};

/// The VMat schema, with the base optional so that `--base` can supply it.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatFile {
    base: Option<BaseRef>,
    src: Vec<String>,
    dst: Vec<String>,
    entries: Vec<Vec<String>>,
    kind: Option<String>,
}

pub struct Mat {
    pub base_ref: BaseRef,
    pub mat: VMat,
    pub kind: Option<String>,
    pub origin: String,
}

impl Mat {
    pub fn base(&self) -> &Arc<Quantale> {
        self.mat.base()
    }

    fn from_file(f: MatFile, default_base: Option<&str>, origin: String) -> Run<Mat> {
        let base_ref = match (f.base, default_base) {
            (Some(b), _) => b,
            (None, Some(name)) => BaseRef::Named(name.to_string()),
            (None, None) => {
                return Err(Stop::Error(format!(
                    "{origin}: no `base` given and no --base flag"
                )))
            }
        };
        let base = Arc::new(base_ref.resolve()?);
        let spec = VMatSpec {
            base: base_ref.clone(),
            src: f.src,
            dst: f.dst,
            entries: f.entries,
        };
        let mat = spec.build(base)?;
        Ok(Mat {
            base_ref,
            mat,
            kind: f.kind,
            origin,
        })
    }

    pub fn load(input: &Input, default_base: Option<&str>) -> Run<Mat> {
        Mat::from_file(
            input.parse()?,
            default_base,
            input.path.display().to_string(),
        )
    }

    fn expect_kind(&self, want: &str) -> Run<()> {
        match &self.kind {
            Some(k) if k != want => Err(Stop::Error(format!(
                "{}: expected kind `{want}`, found `{k}`",
                self.origin
            ))),
            _ => Ok(()),
        }
    }

    pub fn graph(&self) -> Run<VGraph> {
        Ok(VGraph::new(self.mat.clone())?)
    }

    pub fn category(&self) -> Run<VCategory> {
        self.expect_kind("category")?;
        let g = self.graph()?;
        reject(&self.origin, check_category(&g))?;
        Ok(VCategory::new(g)?)
    }

    pub fn cocategory(&self) -> Run<VCocategory> {
        self.expect_kind("cocategory")?;
        let g = self.graph()?;
        reject(&self.origin, check_cocategory(&g))?;
        Ok(VCocategory::new(g)?)
    }
}

/// Turns a failed input check into a certified failure.
pub fn reject(origin: &str, cert: Certificate) -> Run<()> {
    match cert {
        Certificate::Pass => Ok(()),
        fail => Err(Stop::Fail(
            json!({ "input": origin, "certificate": to_value(&fail) }),
        )),
    }
}

pub fn mat_json(m: &VMat, base_ref: &BaseRef, kind: Option<&str>) -> Value {
    let mut v = to_value(&m.to_spec(base_ref.clone()));
    if let Some(k) = kind {
        v["kind"] = json!(k);
    }
    v
}

pub fn names(q: &Quantale, values: &[QElement]) -> Vec<String> {
    values.iter().map(|&e| q.name(e).to_string()).collect()
}

/// `{"src":[names], "map":[names]}`: a function given by its images.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FnFile {
    pub src: Vec<String>,
    pub map: Vec<String>,
}

impl FnFile {
    pub fn build(&self, dst: &FinSet) -> Run<FinFn> {
        let src = FinSet::new(self.src.clone())?;
        let table = self
            .map
            .iter()
            .map(|n| {
                dst.index_of(n)
                    .ok_or_else(|| Stop::Error(format!("unknown object `{n}`")))
            })
            .collect::<Run<Vec<_>>>()?;
        Ok(FinFn::new(src, dst.clone(), table)?)
    }
}

/// `{"over": path or inline matrix, "carrier":[names]}`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    over: Value,
    carrier: Vec<String>,
}

pub enum Carrier {
    Module(VModule),
    Comodule(VComodule),
}

pub struct ModuleInput {
    pub over: Mat,
    pub carrier: Carrier,
    pub origin: String,
}

impl ModuleInput {
    pub fn load(
        loader: &mut Loader,
        input: &Input,
        default_base: Option<&str>,
    ) -> Run<ModuleInput> {
        let file: ModuleFile = input.parse()?;
        let origin = input.path.display().to_string();
        let over = match &file.over {
            Value::String(rel) => {
                let sub = loader.load(&input.dir().join(rel))?;
                Mat::load(&sub, default_base)?
            }
            inline @ Value::Object(_) => {
                let f: MatFile = serde_json::from_value(inline.clone())
                    .map_err(|e| Stop::Error(format!("{origin}: bad inline `over`: {e}")))?;
                Mat::from_file(f, default_base, format!("{origin}#over"))?
            }
            _ => {
                return Err(Stop::Error(format!(
                    "{origin}: `over` must be a path or an object"
                )))
            }
        };
        let q = over.base().clone();
        let values = file
            .carrier
            .iter()
            .map(|n| {
                q.element(n)
                    .ok_or_else(|| Stop::Error(format!("{origin}: unknown element `{n}`")))
            })
            .collect::<Run<Vec<_>>>()?;
        let objects = over.mat.src().clone();
        if values.len() != objects.len() {
            return Err(Stop::Error(format!(
                "{origin}: carrier needs {} entries",
                objects.len()
            )));
        }
        let column = VMat::new(q, FinSet::singleton(), objects, values.clone())?;
        let carrier = if over.kind.as_deref() == Some("cocategory") {
            let c = over.cocategory()?;
            reject(&origin, check_comodule(&c, &column))?;
            Carrier::Comodule(VComodule::from_values(c, &values)?)
        } else {
            let a = over.category()?;
            reject(&origin, check_module(&a, &column))?;
            Carrier::Module(VModule::from_values(a, &values)?)
        };
        Ok(ModuleInput {
            over,
            carrier,
            origin,
        })
    }

    pub fn module(&self) -> Run<&VModule> {
        match &self.carrier {
            Carrier::Module(m) => Ok(m),
            Carrier::Comodule(_) => Err(Stop::Error(format!(
                "{}: expected a module over a category",
                self.origin
            ))),
        }
    }

    pub fn comodule(&self) -> Run<&VComodule> {
        match &self.carrier {
            Carrier::Comodule(c) => Ok(c),
            Carrier::Module(_) => Err(Stop::Error(format!(
                "{}: expected a comodule over a cocategory",
                self.origin
            ))),
        }
    }
}
