//! Commands over quantale-valued data: `base`, `vmat`, `cat`, `enrich`, `mod`.

use std::path::{Path, PathBuf};

use clap::Subcommand;
use serde_json::{json, Value};
use vcat_core::enrichment::support_table;
use vcat_core::{
    audit_laws, check_category, check_cocategory, cofree_cocategory, compose, corestrict,
    corestrict_comodule, free_category, hom_mat, hom_module, k_functor, measuring_comodule,
    restrict, restrict_module, sweedler_hom, tensor_mat, verify_sweedler_adjunction, Certificate,
    FunctionSpace, QuantaleSpec, VCofunctor, VFunctor,
};

use crate::input::{to_value, Run, Stop};
use crate::vfiles::{mat_json, names, Carrier, FnFile, Mat, ModuleInput};
use crate::{Ctx, Outcome};

pub trait Verb {
    fn name(&self) -> &'static str;
}

pub fn verb_name(v: &impl Verb) -> &'static str {
    v.name()
}

macro_rules! verbs {
    ($ty:ty { $($variant:ident => $name:literal),* $(,)? }) => {
        impl Verb for $ty {
            fn name(&self) -> &'static str {
                match self {
                    $(Self::$variant { .. } => $name,)*
                }
            }
        }
    };
}
pub(crate) use verbs;

#[derive(Subcommand)]
pub enum BaseVerb {
    /// Audits a quantale table against every law.
    Audit { file: PathBuf },
}
verbs!(BaseVerb { Audit => "audit" });

#[derive(Subcommand)]
pub enum VmatVerb {
    /// `t ∘ s`, with `s` applied first.
    Compose { s: PathBuf, t: PathBuf },
    /// Kronecker product.
    Tensor { s: PathBuf, t: PathBuf },
    /// The hom matrix between two matrices.
    Hom { s: PathBuf, t: PathBuf },
}
verbs!(VmatVerb { Compose => "compose", Tensor => "tensor", Hom => "hom" });

#[derive(Subcommand)]
pub enum CatVerb {
    /// Checks a file against the laws of its `kind`.
    Check { file: PathBuf },
    /// Free category on a graph.
    Free { graph: PathBuf },
    /// Cofree cocategory below a graph.
    Cofree { graph: PathBuf },
    /// Restricts a category along a function into its objects.
    Restrict {
        category: PathBuf,
        function: PathBuf,
    },
    /// Pushes a cocategory forward along a function out of its objects.
    Corestrict {
        cocategory: PathBuf,
        function: PathBuf,
    },
}
verbs!(CatVerb { Check => "check", Free => "free", Cofree => "cofree", Restrict => "restrict", Corestrict => "corestrict" });

#[derive(Subcommand)]
pub enum EnrichVerb {
    /// `K(C,B)` for a cocategory `C` and a category `B`.
    K {
        cocategory: PathBuf,
        category: PathBuf,
    },
    /// The Sweedler hom `T(A,B)`.
    Sweedler { a: PathBuf, b: PathBuf },
    /// Compares cofunctors into `T(A,B)` with functors into `K(C,B)` over all small probes.
    VerifyAdjunction { a: PathBuf, b: PathBuf },
}
verbs!(EnrichVerb { K => "k", Sweedler => "sweedler", VerifyAdjunction => "verify-adjunction" });

#[derive(Subcommand)]
pub enum ModVerb {
    /// Checks a module or comodule file.
    Check { file: PathBuf },
    /// Restricts a module, or corestricts a comodule, along `{"along":..., "map":[...]}`.
    Restrict { file: PathBuf, along: PathBuf },
    /// `Hom(Φ,Ψ)` for a comodule `Φ` and a module `Ψ`.
    Hom { comodule: PathBuf, module: PathBuf },
    /// The measuring comodule of two modules.
    Measuring { psi: PathBuf, xi: PathBuf },
}
verbs!(ModVerb { Check => "check", Restrict => "restrict", Hom => "hom", Measuring => "measuring" });

fn certificate_outcome(cert: Certificate, mut extra: Value) -> Outcome {
    let pass = cert.passed();
    extra["certificate"] = to_value(&cert);
    Outcome::new(pass, extra)
}

fn load_mat(ctx: &mut Ctx, path: &Path) -> Run<Mat> {
    let input = ctx.loader.load(path)?;
    Mat::load(&input, ctx.opts.base.as_deref())
}

pub fn base(ctx: &mut Ctx, verb: &BaseVerb) -> Run<Outcome> {
    match verb {
        BaseVerb::Audit { file } => {
            let spec: QuantaleSpec = ctx.loader.load(file)?.parse()?;
            let tables = spec.into_tables()?;
            let report = audit_laws(&tables);
            let text = report
                .checks
                .iter()
                .map(|c| {
                    format!(
                        "{:?}: {}\n",
                        c.law,
                        to_value(&c.outcome)["status"].as_str().unwrap_or("?")
                    )
                })
                .collect();
            Ok(Outcome {
                pass: report.all_pass(),
                result: json!({ "laws": to_value(&report.checks) }),
                text: Some(text),
            })
        }
    }
}

pub fn vmat(ctx: &mut Ctx, verb: &VmatVerb) -> Run<Outcome> {
    let (s, t) = match verb {
        VmatVerb::Compose { s, t } | VmatVerb::Tensor { s, t } | VmatVerb::Hom { s, t } => (s, t),
    };
    let (s, t) = (load_mat(ctx, s)?, load_mat(ctx, t)?);
    let result = match verb {
        VmatVerb::Compose { .. } => mat_json(&compose(&t.mat, &s.mat)?, &s.base_ref, None),
        VmatVerb::Tensor { .. } => mat_json(&tensor_mat(&s.mat, &t.mat)?, &s.base_ref, None),
        VmatVerb::Hom { .. } => mat_json(
            &hom_mat(&s.mat, &t.mat, ctx.caps.exponent)?.matrix,
            &s.base_ref,
            None,
        ),
    };
    Ok(Outcome::ok(result))
}

pub fn cat(ctx: &mut Ctx, verb: &CatVerb) -> Run<Outcome> {
    match verb {
        CatVerb::Check { file } => {
            let m = load_mat(ctx, file)?;
            let kind = m.kind.clone().unwrap_or_else(|| "graph".into());
            let g = m.graph()?;
            let cert = match kind.as_str() {
                "graph" => Certificate::Pass,
                "category" => check_category(&g),
                "cocategory" => check_cocategory(&g),
                other => return Err(Stop::Error(format!("unknown kind `{other}`"))),
            };
            Ok(certificate_outcome(cert, json!({ "kind": kind })))
        }
        CatVerb::Free { graph } => {
            let m = load_mat(ctx, graph)?;
            let fix = free_category(&m.graph()?);
            Ok(Outcome::ok(json!({
                "matrix": mat_json(fix.value.matrix(), &m.base_ref, Some("category")),
                "iterations": fix.iterations,
            })))
        }
        CatVerb::Cofree { graph } => {
            let m = load_mat(ctx, graph)?;
            let fix = cofree_cocategory(&m.graph()?);
            Ok(Outcome::ok(json!({
                "matrix": mat_json(fix.value.matrix(), &m.base_ref, Some("cocategory")),
                "iterations": fix.iterations,
            })))
        }
        CatVerb::Restrict { category, function } => {
            let m = load_mat(ctx, category)?;
            let b = m.category()?;
            let f: FnFile = ctx.loader.load(function)?.parse()?;
            let r = restrict(&b, &f.build(b.objects())?)?;
            Ok(Outcome::ok(mat_json(
                r.matrix(),
                &m.base_ref,
                Some("category"),
            )))
        }
        CatVerb::Corestrict {
            cocategory,
            function,
        } => {
            let m = load_mat(ctx, cocategory)?;
            let c = m.cocategory()?;
            let f: FnFile = ctx.loader.load(function)?.parse()?;
            if f.src != c.objects().names() {
                return Err(Stop::Error(
                    "function `src` must list the cocategory's objects in order".into(),
                ));
            }
            let dst = vcat_core::FinSet::new(unique(&f.map))?;
            let r = corestrict(&c, &f.build(&dst)?)?;
            Ok(Outcome::ok(mat_json(
                r.matrix(),
                &m.base_ref,
                Some("cocategory"),
            )))
        }
    }
}

/// Names in order of first appearance.
fn unique(names: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for n in names {
        if !out.contains(n) {
            out.push(n.clone());
        }
    }
    out
}

fn space_names(space: &FunctionSpace, which: &[usize]) -> Vec<String> {
    which
        .iter()
        .map(|&s| space.set().name(s).to_string())
        .collect()
}

pub fn enrich(ctx: &mut Ctx, verb: &EnrichVerb) -> Run<Outcome> {
    let cap = ctx.caps.exponent;
    match verb {
        EnrichVerb::K {
            cocategory,
            category,
        } => {
            let (c, b) = (load_mat(ctx, cocategory)?, load_mat(ctx, category)?);
            let k = k_functor(&c.cocategory()?, &b.category()?, cap)?;
            Ok(Outcome::ok(
                json!({ "matrix": mat_json(k.category.matrix(), &c.base_ref, Some("category")) }),
            ))
        }
        EnrichVerb::Sweedler { a, b } => {
            let (ma, mb) = (load_mat(ctx, a)?, load_mat(ctx, b)?);
            let t = sweedler_hom(&ma.category()?, &mb.category()?, cap)?;
            Ok(Outcome {
                pass: true,
                result: json!({
                    "matrix": mat_json(t.cocategory.matrix(), &ma.base_ref, Some("cocategory")),
                    "iterations": t.iterations,
                    "support": space_names(&t.space, &t.support()),
                    "unit_support": space_names(&t.space, &t.unit_support()),
                }),
                text: Some(support_table(&t)),
            })
        }
        EnrichVerb::VerifyAdjunction { a, b } => {
            let (ma, mb) = (load_mat(ctx, a)?, load_mat(ctx, b)?);
            let report =
                verify_sweedler_adjunction(&ma.category()?, &mb.category()?, ctx.opts.bound, cap)?;
            let mismatches: Vec<_> = report.mismatches().cloned().collect();
            Ok(Outcome::new(
                report.all_match,
                json!({
                    "bound": ctx.opts.bound,
                    "rows": report.rows.len(),
                    "all_match": report.all_match,
                    "mismatches": to_value(&mismatches),
                }),
            ))
        }
    }
}

fn carrier_json(over: Value, objects: &[String], values: Vec<String>) -> Value {
    json!({ "over": over, "objects": objects, "carrier": values })
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct AlongFile {
    along: Value,
    map: Vec<String>,
}

pub fn module(ctx: &mut Ctx, verb: &ModVerb) -> Run<Outcome> {
    let base = ctx.opts.base.clone();
    let base = base.as_deref();
    let cap = ctx.caps.exponent;
    match verb {
        ModVerb::Check { file } => {
            let input = ctx.loader.load(file)?;
            let m = ModuleInput::load(&mut ctx.loader, &input, base)?;
            let kind = match m.carrier {
                Carrier::Module(_) => "module",
                Carrier::Comodule(_) => "comodule",
            };
            Ok(certificate_outcome(
                Certificate::Pass,
                json!({ "kind": kind }),
            ))
        }
        ModVerb::Restrict { file, along } => {
            let input = ctx.loader.load(file)?;
            let m = ModuleInput::load(&mut ctx.loader, &input, base)?;
            let along_input = ctx.loader.load(along)?;
            let spec: AlongFile = along_input.parse()?;
            let other = match &spec.along {
                Value::String(rel) => {
                    let sub = ctx.loader.load(&along_input.dir().join(rel))?;
                    Mat::load(&sub, base)?
                }
                _ => {
                    return Err(Stop::Error(
                        "`along` must be a path to a category or cocategory file".into(),
                    ))
                }
            };
            match &m.carrier {
                Carrier::Module(xi) => {
                    let a = other.category()?;
                    let f = FnFile {
                        src: a.objects().names().to_vec(),
                        map: spec.map,
                    }
                    .build(xi.over().objects())?;
                    let f = VFunctor::new(a, xi.over().clone(), f)?;
                    let r = restrict_module(xi, &f)?;
                    let q = r.over().base().clone();
                    let over = mat_json(r.over().matrix(), &other.base_ref, Some("category"));
                    Ok(Outcome::ok(carrier_json(
                        over,
                        r.over().objects().names(),
                        names(&q, &r.values()),
                    )))
                }
                Carrier::Comodule(phi) => {
                    let d = other.cocategory()?;
                    let g = FnFile {
                        src: phi.over().objects().names().to_vec(),
                        map: spec.map,
                    }
                    .build(d.objects())?;
                    let g = VCofunctor::new(phi.over().clone(), d, g)?;
                    let r = corestrict_comodule(phi, &g)?;
                    let q = r.over().base().clone();
                    let over = mat_json(r.over().matrix(), &other.base_ref, Some("cocategory"));
                    Ok(Outcome::ok(carrier_json(
                        over,
                        r.over().objects().names(),
                        names(&q, &r.values()),
                    )))
                }
            }
        }
        ModVerb::Hom { comodule, module } => {
            let (ci, mi) = (ctx.loader.load(comodule)?, ctx.loader.load(module)?);
            let phi = ModuleInput::load(&mut ctx.loader, &ci, base)?;
            let psi = ModuleInput::load(&mut ctx.loader, &mi, base)?;
            let h = hom_module(phi.comodule()?, psi.module()?, cap)?;
            let q = h.module.over().base().clone();
            let over = mat_json(
                h.hom.category.matrix(),
                &phi.over.base_ref,
                Some("category"),
            );
            Ok(Outcome::ok(carrier_json(
                over,
                h.space().set().names(),
                names(&q, &h.module.values()),
            )))
        }
        ModVerb::Measuring { psi, xi } => {
            let (pi, xi_in) = (ctx.loader.load(psi)?, ctx.loader.load(xi)?);
            let psi = ModuleInput::load(&mut ctx.loader, &pi, base)?;
            let xi = ModuleInput::load(&mut ctx.loader, &xi_in, base)?;
            let m = measuring_comodule(psi.module()?, xi.module()?, cap)?;
            let q = m.comodule.over().base().clone();
            let over = mat_json(
                m.sweedler.cocategory.matrix(),
                &psi.over.base_ref,
                Some("cocategory"),
            );
            let mut result = carrier_json(
                over,
                m.sweedler.space.set().names(),
                names(&q, &m.comodule.values()),
            );
            result["iterations"] = json!(m.iterations);
            Ok(Outcome::ok(result))
        }
    }
}
