//! Finite categories, fibrations, indexed categories and the Grothendieck
//! construction, fibred adjunctions, and an audit of enriched fibrations.

mod category;
mod enriched;
mod fibration;
mod fibred;
mod indexed;
pub mod samples;

pub use category::{
    enumerate_adjunctions, enumerate_functors, enumerate_nat_trans, map_of_adjunctions, mate,
    mate_inverse, ArrowCategory, FinAdjunction, FinCategory, FinCategorySpec, FinFunctor, Morphism,
    MorphismSpec, NatTrans,
};
pub use enriched::{
    check_enriched_fibration, check_typing, one_object_instance, single_mutations,
    EnrichedFibrationData, EnrichedFibrationSpec, EnrichedReport, LiftTensor, LiftTensorSpec,
};
pub use fibration::{
    cartesian_failure, change_of_base, is_cartesian, is_cocartesian, preserves_cartesian,
    round_trip, Fibration, Fibre,
};
pub use fibred::{
    check_fibred_adjunction, fibrewise_left_adjoints, restrict_to_fibre,
    right_adjoint_preserves_cartesian, FibredAdjunctionReport, MateEntry,
};
pub use indexed::{
    grothendieck, DeltaSpec, FunctorSpec, Grothendieck, IndexedCategory, IndexedCategorySpec,
};
