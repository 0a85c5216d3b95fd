//! Toolkit for assessing the state of development practice across a family
//! of research software packages.
//!
//! The pipeline mirrors the assessment steps: keep a traceable candidate
//! ledger ([`workflow`]), mine repository measures ([`repo`], [`forge`],
//! [`derived`]), validate assessor answers against the measurement template
//! ([`catalog`]), turn them into per-quality impression scores
//! ([`scoring`]), rank packages with the Analytic Hierarchy Process
//! ([`ahp`]) and render the results ([`report`]).

pub mod ahp;
pub mod catalog;
pub mod derived;
pub mod forge;
pub mod quality;
pub mod report;
pub mod repo;
pub mod scoring;
pub mod workflow;

pub use quality::Quality;
