//! QoS-aware 3D UAV coverage deployment for vehicles on an urban viaduct.
//!
//! The pipeline is:
//!
//! 1. [`scene`] builds a three-road viaduct and spawns vehicles on the pavement,
//!    each with a height-dependent demanded data rate.
//! 2. [`channel`] models the statistical air-to-ground link (LoS probability,
//!    average path loss, received power, shared-bandwidth uplink rate).
//! 3. [`coverage`] assigns vehicles to conical UAV footprints and scores a
//!    deployment plan under the capacity and QoS constraints.
//! 4. [`qosioa`] searches for a plan with a genetic algorithm whose initial
//!    population comes from [`kmeans`] and is perturbed by [`kigwo`].
//! 5. [`baselines`] provides plain GA, PSO and SCA over the same fitness, and
//!    [`harness`] runs seeded experiment sweeps and writes CSV.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod channel;
pub mod coverage;
pub mod error;
pub mod geom;
pub mod harness;
pub mod kigwo;
pub mod kmeans;
pub mod qosioa;
pub mod rng;
pub mod scene;

pub use error::{Error, Result};
pub use geom::{Point2, Point3, SearchSpace};
