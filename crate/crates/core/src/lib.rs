//! Mahonian statistics on fillings of Young diagrams, the flip operators and
//! involutions acting on them, and the bijections carrying `(inv, maj)` to
//! `(quinv, maj)` on every row-equivalence class.

pub mod bijections;
pub mod enumerate;
pub mod error;
pub mod filling;
pub mod fixtures;
pub mod operators;
pub mod partition;
pub mod poly;
pub mod statistics;
pub mod value;
pub mod verify;

pub use bijections::{gamma, kappa, theta, varphi, BijectionTrace, Operator};
pub use enumerate::{enumerate_row_class, DEFAULT_BUDGET};
pub use error::{Error, Result};
pub use filling::{Filling, FillingDoc};
pub use operators::{phi, rho, DescentBlock};
pub use partition::{Block, Partition, RectangleDecomposition};
pub use poly::{class_poly, macdonald_poly, t_multinomial, ContentPoly, GenPoly, Stat, Weights};
pub use statistics::{inv, maj, ndes_vector, quinv, stat_bundle, triple_indicator, StatBundle};
pub use value::ExtValue;
pub use verify::{sweep, ShapeSet, SweepConfig, Theorem, VerificationReport};
