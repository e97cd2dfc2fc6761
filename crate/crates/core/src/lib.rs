//! Algebraic analysis of finite Bayesian networks.
//!
//! A network is a DAG with a number of levels per vertex. Its distributions
//! are parametrized by the edge labels of a staged tree; the kernel of that
//! parametrization is compared with the ideal generated by conditional
//! independence minors, degree by degree, using exact linear algebra.

pub mod cli;
pub mod dag;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod network;
pub mod poly;
pub mod report;
pub mod staged_tree;
pub mod toric;
pub mod witness;

pub use dag::{validate_dag, DagModel, RawGraph};
pub use error::{Error, Result};
pub use network::{Basis, Config, Network};
