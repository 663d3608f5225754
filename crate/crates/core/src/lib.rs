pub mod error;
pub mod ffpoly;
pub mod linalg;
pub mod plurigenera;
pub mod scenarios;
pub mod secant;
pub mod symdiff;
pub mod variety;

pub use error::{Error, Result};
pub use ffpoly::{Field, MultiPoly, PrimeField, QuadraticExtension, Rationals};
pub use linalg::{ConstraintMatrix, SubspaceBasis};
pub use plurigenera::{jump_table, JumpTable};
pub use scenarios::{run_scenario_file, run_suite, Scenario, ScenarioReport, Status, SuiteReport};
pub use secant::{classify_line, iterate_cone_variety, quadric_envelope, zak_check, ConeIteration, LineClassification, ZakReport};
pub use symdiff::{estimate_dimension, CandidateBasis, DimensionReport, EstimateConfig};
pub use variety::{ModelSpec, PointSet, ProjPoint, RationalModel, VarietyModel};
