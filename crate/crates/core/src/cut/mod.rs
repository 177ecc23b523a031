//! Realizing cuts over sampled substructures.

pub mod ambient;
pub mod classify;
pub mod encode;
pub mod realize;
pub mod sample;

pub use ambient::{extend_ambient, Ambient};
pub use sample::{sample_substructure, SampleConfig, SubstructureSample};
pub use classify::{classify_cut, CutCase, CutProblem, DeltaAnalysis, LadderStep};
pub use realize::{
    check_separation, realize_cut, realize_immediate, realize_residue_transcendental, realize_value_transcendental,
    Check, RealizationReport, Side, Witness,
};
pub use encode::{encode_group_type_as_field_cut, FieldCutPredicate, Monomial, DEFAULT_K_MAX};
