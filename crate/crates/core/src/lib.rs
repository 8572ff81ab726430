//! Cybersickness detection from head-movement kinematics.
//!
//! This crate implements the full pipeline: raw 6-axis head-tracking ingestion,
//! kinematic derivative stacks (velocity, acceleration, jerk), sliding-window
//! segmentation, three-domain feature extraction (statistical, temporal,
//! spectral), random-forest-driven recursive feature elimination, SMOTE class
//! balancing, six from-scratch classifiers, and a Monte Carlo cross-validation
//! harness with participant-disjoint splits.
//!
//! The stages are deliberately decoupled:
//!
//! - [`corpus`] — recordings, labels, and segment extraction
//! - [`kinematics`] — derivative stacks and windowing
//! - [`features`] — the frozen feature registry and per-window extraction
//! - [`prep`] — splitting, standardization, RFE, SMOTE
//! - [`models`] — classifiers and metrics
//! - [`harness`] — experiment orchestration, reporting, synthetic corpora

pub mod corpus;
pub mod features;
pub mod harness;
pub mod kinematics;
pub mod models;
pub mod prep;

pub use corpus::{Corpus, LabeledSegment, MotionRecording, Outcome};
pub use features::{FeatureMatrix, FeatureVector};
pub use harness::{EvaluationReport, ExperimentConfig, Setting};
pub use kinematics::{Channel, KinematicStack, Order, WindowInstance};
pub use models::{Metrics, ModelKind, ModelSpec, TrainedModel};
pub use prep::{FeatureMask, SplitPlan};
