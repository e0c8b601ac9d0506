//! One-defect quantum walks on ℤ and ℤ₊.
//!
//! The walk is simulated exactly through its CMV transition matrix, and its
//! localization properties are computed in closed form from the Schur function
//! of the associated measure. The [`oracle`] module ties the two together.

pub mod cmv;
pub mod coin;
pub mod error;
pub mod geometry;
pub mod halfline;
pub mod line;
pub mod oracle;
pub mod quadrature;
pub mod report;
pub mod schur;

pub use cmv::{
    amplitude, build_lambda, build_transition, coin_action_matrix, evolve, return_probabilities,
    return_probability, BandedUnitary, VerblunskySeq, WaveFunction,
};
pub use coin::{
    defect_params, hat_qubit, unhat_qubit, validate_coin, Coin, DefectParams, Lattice, Qubit,
    WalkSpec, C64,
};
pub use error::{Error, Result};
pub use geometry::{classify_region_halfline, LLabel, RegionClassZplus, TangentProfile};
pub use halfline::{halfline_roots, ArpMode, MassPointZplus, Side};
pub use line::{classify_line, ClassZ, LineLabel, MassPointZ};
pub use report::{localization_report, LocalizationReport};
pub use schur::{BoundaryWeight, SchurEval, WeightValue};
