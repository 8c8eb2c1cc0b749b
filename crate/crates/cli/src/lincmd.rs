//! `lin` commands.

use std::path::PathBuf;

use clap::Subcommand;
use serde_json::{json, Value};
use vcat_core::linalg::{
    certify_universal_measuring, convolution_algebra, dual_algebra, dual_coalgebra,
    hom_module_structure, verify_measuring, AlgebraSpec, CoalgebraSpec, ComoduleSpec, Field,
    MeasuringSpec, ModuleSpec, F2, Q,
};

use crate::input::{to_value, Input, Run, Stop};
use crate::vcmd::{verbs, Verb};
use crate::{Ctx, Outcome};

#[derive(Subcommand)]
pub enum LinVerb {
    /// Checks that a measuring satisfies multiplicativity and unitality.
    Measure { file: PathBuf },
    /// The convolution algebra `Hom(C, A)`.
    Convolve {
        coalgebra: PathBuf,
        algebra: PathBuf,
    },
    /// Dual coalgebra of an algebra file, or dual algebra of a coalgebra file.
    Dual { file: PathBuf },
    /// `Hom(X, M)` as a module over the convolution algebra.
    HomModule { comodule: PathBuf, module: PathBuf },
    /// Certifies a measuring over F2 as terminal among measurings from coalgebras of dimension ≤ `--search-dim`.
    Certify {
        candidate: PathBuf,
        /// Replaces the candidate's source algebra.
        a: Option<PathBuf>,
        /// Replaces the candidate's target algebra.
        b: Option<PathBuf>,
    },
}
verbs!(LinVerb {
    Measure => "measure",
    Convolve => "convolve",
    Dual => "dual",
    HomModule => "hom-module",
    Certify => "certify",
});

fn field_of(input: &Input) -> Run<String> {
    input
        .value
        .get("field")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| Stop::Error(format!("{}: missing `field`", input.path.display())))
}

/// Runs `$body` with `$F` bound to the field named by `$name`.
macro_rules! with_field {
    ($name:expr, $F:ident => $body:expr) => {
        match $name.as_str() {
            "Q" => {
                type $F = Q;
                $body
            }
            "F2" => {
                type $F = F2;
                $body
            }
            other => Err(Stop::Error(format!(
                "unknown field `{other}`; expected Q or F2"
            ))),
        }
    };
}

pub fn run(ctx: &mut Ctx, verb: &LinVerb) -> Run<Outcome> {
    match verb {
        LinVerb::Measure { file } => {
            let input = ctx.loader.load(file)?;
            let spec: MeasuringSpec = input.parse()?;
            with_field!(field_of(&input)?, F => {
                let m = spec.build::<F>()?;
                let cert = verify_measuring(&m);
                Ok(Outcome::new(cert.passed(), json!({ "certificate": to_value(&cert) })))
            })
        }
        LinVerb::Convolve { coalgebra, algebra } => {
            let (ci, ai) = (ctx.loader.load(coalgebra)?, ctx.loader.load(algebra)?);
            let (cs, as_): (CoalgebraSpec, AlgebraSpec) = (ci.parse()?, ai.parse()?);
            with_field!(field_of(&ci)?, F => {
                let conv = convolution_algebra(&cs.build::<F>()?, &as_.build::<F>()?)?;
                Ok(Outcome::ok(to_value(&AlgebraSpec::of(&conv))))
            })
        }
        LinVerb::Dual { file } => {
            let input = ctx.loader.load(file)?;
            let field = field_of(&input)?;
            if input.has("mult") {
                let spec: AlgebraSpec = input.parse()?;
                with_field!(field, F => Ok(Outcome::ok(to_value(&CoalgebraSpec::of(&dual_coalgebra(&spec.build::<F>()?)?)))))
            } else if input.has("comult") {
                let spec: CoalgebraSpec = input.parse()?;
                with_field!(field, F => Ok(Outcome::ok(to_value(&AlgebraSpec::of(&dual_algebra(&spec.build::<F>()?)?)))))
            } else {
                Err(Stop::Error(format!(
                    "{}: neither `mult` nor `comult` present",
                    input.path.display()
                )))
            }
        }
        LinVerb::HomModule { comodule, module } => {
            let (xi, mi) = (ctx.loader.load(comodule)?, ctx.loader.load(module)?);
            let (xs, ms): (ComoduleSpec, ModuleSpec) = (xi.parse()?, mi.parse()?);
            with_field!(field_of(&xi)?, F => {
                let h = hom_module_structure(&xs.build::<F>()?, &ms.build::<F>()?)?;
                Ok(Outcome::ok(to_value(&ModuleSpec::of(&h))))
            })
        }
        LinVerb::Certify { candidate, a, b } => {
            let input = ctx.loader.load(candidate)?;
            let mut spec: MeasuringSpec = input.parse()?;
            if let Some(path) = a {
                spec.source = ctx.loader.load(path)?.parse()?;
            }
            if let Some(path) = b {
                spec.target = ctx.loader.load(path)?.parse()?;
            }
            if spec.field != F2::NAME {
                return Err(Stop::Error("certification runs over F2 only".into()));
            }
            let m = spec.build::<F2>()?;
            let report = certify_universal_measuring(&m, ctx.opts.search_dim, ctx.caps.search)?;
            Ok(Outcome::new(report.pass, report.to_json()))
        }
    }
}
