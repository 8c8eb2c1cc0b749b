//! Enriched categories, cocategories and measuring structures over finite
//! quantales, exact finite-dimensional (co)algebra computations, and a finite
//! fibration kernel.
//!
//! Module map:
//! - [`base`]: finite commutative quantales.
//! - [`vmat`]: quantale-valued matrices and their bicategory structure.
//! - [`structures`]: V-graphs, V-categories and V-cocategories.
//! - [`enrichment`]: internal homs and the generalized Sweedler hom.
//! - [`modcomod`]: V-modules and V-comodules.
//! - [`fib`]: finite categories, fibrations and the Grothendieck construction.
//! - [`linalg`]: algebras, coalgebras and measurings over Q and F₂.

pub mod base;
pub mod cert;
pub mod enrichment;
pub mod error;
pub mod expo;
pub mod fib;
pub mod linalg;
pub mod modcomod;
pub mod structures;
pub mod vmat;

pub use base::{
    audit_laws, builtin, Builtin, LawReport, QElement, Quantale, QuantaleSpec, QuantaleTables,
};
pub use cert::{Caps, Certificate, Violation};
pub use enrichment::{
    convolution, k_functor, measuring_object, one_object_correspondence, sweedler_hom,
    verify_sweedler_adjunction, AdjunctionReport, HomCategory, SweedlerHom,
};
pub use error::{Error, Result};
pub use expo::{FinFn, FinSet, FunctionSpace};
pub use modcomod::{
    check_comodule, check_module, check_module_morphism, corestrict_comodule, hom_module,
    measuring_comodule, restrict_module, HomModule, MeasuringComodule, VComodule, VModule,
};
pub use structures::{
    check_category, check_cocategory, check_cofunctor, check_functor, cofree_cocategory,
    corestrict, free_category, restrict, Fixpoint, VCategory, VCocategory, VCofunctor, VFunctor,
    VGraph,
};
pub use vmat::{compose, hom_mat, id_mat, leq2cell, tensor_mat, VMat};
