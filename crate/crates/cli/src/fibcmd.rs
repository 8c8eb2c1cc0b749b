//! `fib` commands.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};
use vcat_core::base::Builtin;
use vcat_core::builtin;
use vcat_core::error::Error;
use vcat_core::fib::samples::{random_pseudo, random_strict};
use vcat_core::fib::{
    cartesian_failure, check_enriched_fibration, check_fibred_adjunction, check_typing,
    fibrewise_left_adjoints, grothendieck, mate, mate_inverse, one_object_instance, round_trip,
    EnrichedFibrationSpec, FinAdjunction, FinCategory, FinCategorySpec, FunctorSpec, Grothendieck,
    IndexedCategory, IndexedCategorySpec, NatTrans,
};

use crate::input::{to_value, Input, Run, Stop};
use crate::vcmd::{verbs, Verb};
use crate::vfiles::reject;
use crate::{Ctx, Outcome};

#[derive(Clone, Copy, ValueEnum)]
pub enum Sample {
    Strict,
    Pseudo,
}

#[derive(Subcommand)]
pub enum FibVerb {
    /// Grothendieck construction of an indexed category file, or of a random sample.
    Groth {
        file: Option<PathBuf>,
        /// Generates the input from `--seed` instead of reading a file.
        #[arg(long, value_enum, conflicts_with = "file")]
        sample: Option<Sample>,
    },
    /// Decides whether a morphism of the total category is cartesian.
    Cartesian { file: PathBuf, morphism: String },
    /// Splits a morphism of the total category into vertical and cartesian parts.
    Factorize { file: PathBuf, morphism: String },
    /// The mate of a 2-cell between adjunctions.
    Mate { file: PathBuf },
    /// Checks that a functor between two Grothendieck totals is a fibred right adjoint.
    CheckAdjunction {
        p: PathBuf,
        q: PathBuf,
        functor: PathBuf,
    },
    /// Audits an enriched fibration; without a file, the one-object instance over `--base`.
    CheckEnriched { file: Option<PathBuf> },
}
verbs!(FibVerb {
    Groth => "groth",
    Cartesian => "cartesian",
    Factorize => "factorize",
    Mate => "mate",
    CheckAdjunction => "check-adjunction",
    CheckEnriched => "check-enriched",
});

fn load_indexed(ctx: &mut Ctx, path: &Path) -> Run<IndexedCategory> {
    let spec: IndexedCategorySpec = ctx.loader.load(path)?.parse()?;
    Ok(spec.build()?)
}

fn total_morphism(g: &Grothendieck, name: &str) -> Run<usize> {
    g.fibration
        .total()
        .morphism_index(name)
        .ok_or_else(|| Stop::Error(format!("no morphism `{name}` in the total category")))
}

fn groth_json(m: &IndexedCategory, g: &Grothendieck, cap: usize) -> Run<(bool, Value)> {
    let p = &g.fibration;
    let (e, base) = (p.total(), p.base());
    let objects: Vec<[&str; 2]> = g
        .objects
        .iter()
        .map(|&(a, x)| [m.fibre(x).objects()[a].as_str(), base.objects()[x].as_str()])
        .collect();
    let cleavage: Vec<Value> = p
        .cleavage()
        .iter()
        .map(|(&(f, obj), &lift)| {
            json!({
                "base_morphism": base.morphism(f).name,
                "object": e.objects()[obj],
                "lift": e.morphism(lift).name,
            })
        })
        .collect();
    let rt = round_trip(p, cap)?;
    Ok((
        rt.passed(),
        json!({
            "total": to_value(&e.to_spec()),
            "projection": to_value(&FunctorSpec::of(p.projection())),
            "objects": objects,
            "cleavage": cleavage,
            "split": p.is_split(),
            "round_trip": to_value(&rt),
        }),
    ))
}

/// `{"left", "right", "unit", "counit"}` by names.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AdjunctionSpec {
    left: FunctorSpec,
    right: FunctorSpec,
    unit: Vec<String>,
    counit: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MateFile {
    a: FinCategorySpec,
    b: FinCategorySpec,
    a2: Option<FinCategorySpec>,
    b2: Option<FinCategorySpec>,
    adjunction: AdjunctionSpec,
    adjunction2: Option<AdjunctionSpec>,
    h: Option<FunctorSpec>,
    k: Option<FunctorSpec>,
    mu: Vec<String>,
}

fn morphisms(c: &FinCategory, names: &[String]) -> Run<Vec<usize>> {
    names
        .iter()
        .map(|n| {
            c.morphism_index(n)
                .ok_or_else(|| Stop::Error(format!("unknown morphism `{n}`")))
        })
        .collect()
}

impl AdjunctionSpec {
    fn build(&self, a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> Run<FinAdjunction> {
        let left = self.left.build(a, b)?;
        let right = self.right.build(b, a)?;
        Ok(FinAdjunction::new(
            left,
            right,
            morphisms(a, &self.unit)?,
            morphisms(b, &self.counit)?,
        )?)
    }
}

fn mate_cmd(input: &Input) -> Run<Outcome> {
    let file: MateFile = input.parse()?;
    let a = Arc::new(file.a.build()?);
    let b = Arc::new(file.b.build()?);
    let a2 = match &file.a2 {
        Some(s) => Arc::new(s.build()?),
        None => a.clone(),
    };
    let b2 = match &file.b2 {
        Some(s) => Arc::new(s.build()?),
        None => b.clone(),
    };
    let adj = file.adjunction.build(&a, &b)?;
    let adj2 = file
        .adjunction2
        .as_ref()
        .unwrap_or(&file.adjunction)
        .build(&a2, &b2)?;
    let h = match &file.h {
        Some(s) => s.build(&a, &a2)?,
        None if Arc::ptr_eq(&a, &a2) => vcat_core::fib::FinFunctor::identity(&a),
        None => return Err(Stop::Error("`h` is required when `a2` is given".into())),
    };
    let k = match &file.k {
        Some(s) => s.build(&b, &b2)?,
        None if Arc::ptr_eq(&b, &b2) => vcat_core::fib::FinFunctor::identity(&b),
        None => return Err(Stop::Error("`k` is required when `b2` is given".into())),
    };
    let src = adj2.left().after(&h)?;
    let dst = k.after(adj.left())?;
    let mu = NatTrans::new(src, dst, morphisms(&b2, &file.mu)?)?;
    let nu = mate(&adj, &adj2, &h, &k, &mu)?;
    let back = mate_inverse(&adj, &adj2, &h, &k, &nu)?;
    let names: Vec<&str> = nu
        .components()
        .iter()
        .map(|&m| a2.morphism(m).name.as_str())
        .collect();
    let round_trip = back == mu;
    Ok(Outcome::new(
        round_trip,
        json!({ "mate": names, "round_trip": round_trip }),
    ))
}

pub fn run(ctx: &mut Ctx, verb: &FibVerb) -> Run<Outcome> {
    let cap = ctx.caps.morphisms;
    match verb {
        FibVerb::Groth { file, sample } => {
            let (m, generated) = match (file, sample) {
                (Some(path), _) => (load_indexed(ctx, path)?, None),
                (None, Some(kind)) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(ctx.opts.seed.unwrap_or(0));
                    let m = match kind {
                        Sample::Strict => random_strict(&mut rng, cap),
                        Sample::Pseudo => random_pseudo(&mut rng, cap),
                    };
                    let spec = to_value(&m.to_spec());
                    (m, Some(spec))
                }
                (None, None) => {
                    return Err(Stop::Error(
                        "give an indexed category file or --sample".into(),
                    ))
                }
            };
            let g = grothendieck(&m, cap)?;
            let (pass, mut result) = groth_json(&m, &g, cap)?;
            if let Some(spec) = generated {
                result["indexed"] = spec;
            }
            Ok(Outcome::new(pass, result))
        }
        FibVerb::Cartesian { file, morphism } => {
            let m = load_indexed(ctx, file)?;
            let g = grothendieck(&m, cap)?;
            let phi = total_morphism(&g, morphism)?;
            let p = g.fibration.projection();
            let (e, b) = (p.src(), p.dst());
            Ok(match cartesian_failure(p, phi) {
                None => Outcome::ok(json!({ "morphism": morphism, "cartesian": true })),
                Some((theta, f)) => Outcome::new(
                    false,
                    json!({
                        "morphism": morphism,
                        "cartesian": false,
                        "witness": { "theta": e.morphism(theta).name, "base_morphism": b.morphism(f).name },
                    }),
                ),
            })
        }
        FibVerb::Factorize { file, morphism } => {
            let m = load_indexed(ctx, file)?;
            let g = grothendieck(&m, cap)?;
            let theta = total_morphism(&g, morphism)?;
            let e = g.fibration.total();
            let (vertical, cartesian) = g.fibration.factorize(theta)?;
            Ok(Outcome::ok(json!({
                "morphism": morphism,
                "vertical": e.morphism(vertical).name,
                "cartesian": e.morphism(cartesian).name,
            })))
        }
        FibVerb::Mate { file } => {
            let input = ctx.loader.load(file)?;
            mate_cmd(&input)
        }
        FibVerb::CheckAdjunction { p, q, functor } => {
            let (mp, mq) = (load_indexed(ctx, p)?, load_indexed(ctx, q)?);
            let (gp, gq) = (grothendieck(&mp, cap)?, grothendieck(&mq, cap)?);
            let spec: FunctorSpec = ctx.loader.load(functor)?.parse()?;
            let s = spec.build(gp.fibration.total(), gq.fibration.total())?;
            let fibrewise =
                fibrewise_left_adjoints(&gp.fibration, &gq.fibration, &s, cap.max(4096))?;
            match check_fibred_adjunction(&gp.fibration, &gq.fibration, &s, &fibrewise) {
                Ok(report) => Ok(Outcome::new(report.pass, to_value(&report))),
                Err(Error::MissingFibrewiseAdjoint(msg)) => Err(Stop::Fail(
                    json!({ "pass": false, "missing_fibrewise_adjoint": msg }),
                )),
                Err(e) => Err(e.into()),
            }
        }
        FibVerb::CheckEnriched { file } => {
            let (d, generated) = match file {
                Some(path) => {
                    let spec: EnrichedFibrationSpec = ctx.loader.load(path)?.parse()?;
                    (spec.build()?, None)
                }
                None => {
                    let name = ctx.opts.base.as_deref().unwrap_or("boolean");
                    let which = Builtin::parse(name)
                        .ok_or_else(|| Stop::Error(format!("unknown base `{name}`")))?;
                    let d = one_object_instance(&builtin(which))?;
                    let spec = to_value(&d.to_spec());
                    (d, Some(spec))
                }
            };
            reject("typing", check_typing(&d))?;
            let report = check_enriched_fibration(&d);
            let clauses: serde_json::Map<String, Value> = report
                .clauses()
                .iter()
                .map(|(name, cert)| (name.to_string(), to_value(cert)))
                .collect();
            let mut result = json!({ "clauses": clauses, "failing": report.failing() });
            if let Some(spec) = generated {
                result["instance"] = spec;
            }
            Ok(Outcome::new(report.all_pass(), result))
        }
    }
}
