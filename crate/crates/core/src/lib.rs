//! Real base points of pencils of plane curves, their orientations and the
//! linking number of the real base with an oriented real line.

pub mod cli;
pub mod interval;
pub mod linalg;
pub mod linking;
pub mod orient;
pub mod poly;
pub mod slice;
pub mod solve;
