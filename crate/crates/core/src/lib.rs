pub mod base;
pub mod bimodule;
pub mod catalog;
pub mod cli_io;
pub mod error;
pub mod ew;
pub mod functor;
pub mod io;
mod linalg;
pub mod monoid;
pub mod morita;
pub mod probe;
pub mod registry;
pub mod report;
pub mod sample;
mod unionfind;

pub use base::{Base, Coherence, Iso, Morphism, Obj, QuotientObject, SplitEpi, SubObject};
pub use bimodule::{
    associator, check_left_module, compose_bimodules, end_monoid, hom_from_left_module, iota_b, jmath_b,
    rho_bar_check, tensor_over, Ambient, Bimodule, LeftModuleObject, TensorResult,
};
pub use error::{Error, Result};
pub use monoid::{check_module, check_monoid, hom_object, HomObject, ModuleMorphism, Monoid, RightModule};
pub use report::{Check, Report, Witness};
pub use probe::{ProbeFamily, ProbeMorphism};
pub use functor::{hom_functor, tensor_functor_from, validate_functor, EnrichedFunctorData};
pub use ew::{adjunction, cocontinuity_verdict, coreflect, evaluate_at_b, lambda, naturality_in_f, CocontinuityVerdict, NatTransData};
pub use morita::{build_matrix_example, equivalence_from_generator, generator_report, verify_certificate, EquivalencePair, GeneratorReport, MoritaCertificate};
