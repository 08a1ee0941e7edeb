//! Hyperbolicity diagnostics on median graphs: grids of hyperplanes, flat
//! rectangles, four-point δ, bigon thinness, cone-offs, contracting graphs
//! and fineness data.

mod bigon;
mod bounds;
mod coneoff;
mod contracting;
mod delta;
mod fineness;
mod grid;
mod halfspaces;
mod rectangle;

pub use bigon::{bigon_thinness, BigonReport, BigonWitness};
pub use bounds::{coneoff_bigon_bound, rectangle_diameter_bound, ConeOffBound, DiameterBound};
pub use coneoff::{cone_off, sandwich_holds, ConeKind, ConeOffGraph, Provenance};
pub use contracting::{contracting, ContractingReport, HyperplaneVerdict};
pub use delta::{delta, DeltaOptions, DeltaReport};
pub use fineness::{cycle_probe, fineness_certificate, CycleProbe, FinenessCertificate, MAX_PROBE_LENGTH};
pub use grid::{grid_through, max_grid, Grid, GridSearch, ThroughSearch};
pub use rectangle::{for_each_flat_rectangle, max_thick_rectangle, FlatRectangle, RectangleSearch};

use thiserror::Error;

use crate::mediancore::ConvexError;

/// How a reported number was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Exact,
    /// A search stopped at its cap; the value can only grow.
    LowerBound,
    /// Only one direction of an equivalence was checked.
    OneSided,
}

impl Method {
    pub fn from_exact(exact: bool) -> Self {
        if exact {
            Method::Exact
        } else {
            Method::LowerBound
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::LowerBound => "lower_bound",
            Method::OneSided => "one_sided",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagError {
    #[error("{n} vertices exceeds the exact-scan limit of {limit}; enable sampling")]
    TooLarge { n: usize, limit: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("family member `{member}` is not convex: {violation}")]
    NonConvex { member: String, violation: ConvexError },
    #[error("probe length {0} outside 3..=8")]
    ProbeLength(usize),
    #[error("{0} -- {1} is not an edge")]
    NotAnEdge(String, String),
    #[error("distance matrices have different sizes")]
    SizeMismatch,
}
