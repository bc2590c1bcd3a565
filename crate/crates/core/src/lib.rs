//! Euler characteristics of Hilbert schemes (Douady spaces) of points on a
//! complex surface, computed exactly in two independent ways:
//!
//! * by summing over the partition strata of the symmetric product
//!   ([`strata`]), and
//! * by expanding the Euler product `∏_{k≥1} (1 − q^k)^{−e}` ([`series`]).
//!
//! [`verify`] holds brute-force oracles for every ingredient and a grid
//! harness that cross-checks the routes; [`cli`] is the command-line front
//! end.

pub mod cli;
pub mod partitions;
pub mod series;
pub mod strata;
pub mod verify;

pub use partitions::{count_p_recurrence, enumerate_partitions, MultiplicityForm, Partition};
pub use series::{euler_product, TruncatedSeries};
pub use strata::{hilbert_euler_strata, symmetric_euler_strata, StratumReport, SurfaceModel};
pub use verify::{run_all, GridConfig, VerificationReport};
