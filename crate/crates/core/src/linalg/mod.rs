//! Finite-dimensional algebras and coalgebras over `Q` or `F₂` with exact
//! arithmetic: measurings, convolution algebras, duals, the module
//! structure on `Hom(X, M)`, and bounded certification of universal
//! measurings.

mod algebra;
mod certify;
mod field;
mod json;
mod ops;

pub use algebra::{
    audit_algebra, audit_coalgebra, audit_comodule, audit_module, Algebra, Coalgebra, LinComodule,
    LinModule, Tensor3,
};
pub use certify::{
    certify_universal_measuring, doubled_candidate, enumerate_algebras_f2, enumerate_coalgebras_f2,
    search_bound, FactorizationFailure, UniversalityReport, LISTED_FAILURES,
};
pub use field::{Field, F2, Q};
pub use json::{AlgebraSpec, CoalgebraSpec, ComoduleSpec, MeasuringSpec, ModuleSpec};
pub use ops::{
    check_algebra_map, check_coalgebra_map, convolution_algebra, dual_algebra, dual_coalgebra,
    evaluation_measuring, hom_module_structure, verify_measuring, Measuring,
};
