//! Siamese dipyramids: solving for heights from face shapes, mapping the
//! rigidity domain, and measuring almost-flexible deformations.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atlas;
pub mod cli;
pub mod continuation;
pub mod deformation;
pub mod error;
pub mod geometry;
pub mod mesh;
pub mod numfmt;
pub mod roots;
pub mod solver;
pub mod svg;
pub mod tables;

pub use error::{Error, Result};
