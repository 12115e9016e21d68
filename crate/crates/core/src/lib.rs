//! Finite quandles and their complex irreducible representations.
//!
//! The crate builds finite groups and quandles from Cayley tables, computes
//! inner automorphism groups, orbits and quandle characters, decomposes
//! group representations into irreducibles, computes second cohomology
//! (Schur multipliers) exactly through Smith normal form, and classifies
//! irreducible quandle representations as character twists of finitely
//! many base representations.

pub mod abelian;
pub mod cohomology;
pub mod error;
pub mod family;
pub mod group;
pub mod intmat;
pub mod json;
pub mod linrep;
pub mod perm;
pub mod quandle;
pub mod quandle_rep;
pub mod tolerance;

pub use abelian::{canonical_form, subgroup_structure, CanonicalForm};
pub use cohomology::{
    cocycle_of_projective, inflation, is_coboundary_over_cx, is_schur_cover, is_stem_extension,
    second_cohomology, CoboundaryCheck, CocycleZn, CohomologyGroup, CohomologyReport,
};
pub use error::{Error, Result};
pub use family::{group_from_family, Family, FamilySpec};
pub use group::{group_closure, FiniteGroup, GroupHomomorphism, PermutationClosure};
pub use intmat::{smith_diagonal, smith_normal_form, IntegerMatrix, SmithForm};
pub use linrep::{
    are_equivalent, commutant_dimension, decompose_irreps, regular_representation, unitarize,
    ComplexMatrix, GroupLinearRep, ProjectiveRep,
};
pub use perm::Permutation;
pub use quandle::{
    conj_quandle, make_character, trivial_quandle, validate_quandle, FiniteQuandle, InnerGroup,
    OrbitPartition, QuandleCharacter,
};
pub use quandle_rep::{
    char_twist, classify_conj_group, classify_via_inn, group_rep_as_quandle_rep,
    induced_projective, intertwiner_space_dimension, lift_then_twist, pull_back, recover_character,
    reproduce_table, survey_conj_group, survey_symmetric, validate_rep, ClassificationMode,
    ClassificationReport, QuandleRep, TableRow,
};
pub use tolerance::Tolerances;
