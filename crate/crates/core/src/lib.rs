//! Exact invariants of complex hyperplane arrangements: intersection lattices,
//! Orlik-Solomon algebras and their minimal free resolutions, lower central
//! series ranks of arrangement groups, and the graphic-arrangement formulas
//! that express them through clique counts.

pub mod arrangement;
pub mod document;
pub mod error;
pub mod exterior;
pub mod fixtures;
pub mod graphic;
pub mod harness;
pub mod lcs;
pub mod linalg;
pub mod os_ideal;
pub mod poly;
pub mod rational;
pub mod report;
pub mod resolution;
pub mod series;

pub use error::{Error, Result};
pub use rational::Rational;
