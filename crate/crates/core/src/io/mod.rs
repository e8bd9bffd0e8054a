//! File formats: CSV sample matrices, PGM images, and the noisy-patch
//! extraction workflow.

pub mod csv;
pub mod patches;
pub mod pgm;
