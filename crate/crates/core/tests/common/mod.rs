//! Independent oracles. Nothing here calls into the library except to
//! convert raw oracle data into library values at the boundary.
#![allow(dead_code)]

pub mod braid;
pub mod farey;
pub mod homology;
