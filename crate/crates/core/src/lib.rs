//! Driving style classification from GPS logs alone.
//!
//! The pipeline turns raw per-driver GPS logs into movement patterns,
//! reduces each pattern to a scalar jerk-dispersion feature, clusters the
//! features with agglomerative hierarchical clustering under Ward's
//! criterion, picks the cluster count with a WCSS elbow rule, and
//! validates the partition with silhouette indices.
//!
//! Stages communicate through plain file formats (pattern JSON, features
//! CSV, clusters JSON) so each one can be run and tested on its own:
//!
//! * [`ingest`] — parse T-Drive or generic CSV logs into per-driver,
//!   time-sorted records; optional bounding-box filtering.
//! * [`preprocess`] — duplicate/standstill removal, gap splitting, and
//!   length bounds, producing [`preprocess::MovementPattern`]s.
//! * [`kinematics`] — speed, acceleration, and jerk series via divided
//!   differences, in geodetic or planar coordinates.
//! * [`features`] — the ω feature `exp(-1/sqrt(σ(jerk)))` plus the
//!   comparison features (jerk mean/std, windowed σ/|mean| ratio).
//! * [`cluster`] — Ward agglomeration, dendrogram cuts, WCSS elbow
//!   selection, silhouettes, per-cluster quartile stats.
//! * [`synth`] — seeded synthetic pattern generator used as ground truth
//!   by the test suites.
//!
//! The numeric kernels are generic over the scalar type through the
//! [`Real`] trait (`f32` or `f64`); the domain and file-format types are
//! fixed to `f64`, and the aliases below pin the default precision.

pub mod cluster;
pub mod error;
pub mod features;
pub mod ingest;
pub mod kinematics;
pub mod numfmt;
pub mod preprocess;
pub mod real;
pub mod synth;

pub use error::Error;
pub use real::Real;

/// A type alias for `Result<T, drivestyle::Error>`.
pub type Result<T> = std::result::Result<T, Error>;

/// Default-precision kinematic series, as produced by the CLI.
pub type KinematicSeries = kinematics::KinematicSeries<f64>;
/// Default-precision dendrogram.
pub type Dendrogram = cluster::Dendrogram<f64>;
/// Default-precision clustering report.
pub type ClusteringResult = cluster::ClusteringResult<f64>;
