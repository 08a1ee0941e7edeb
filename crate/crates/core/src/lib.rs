//! Desk-scale combinatorics of CAT(0) cube complexes: median graphs and their
//! hyperplanes, hyperbolicity diagnostics, cone-offs, right-angled Coxeter
//! group join decompositions, small-cancellation checkers and the
//! cubulation of polygonal complexes.

pub mod build;
pub mod hypdiag;
pub mod graph;
pub mod mediancore;
pub mod parse;
pub mod polygonal;
pub mod racg;
pub mod smallcancel;
