//! Quasi-triangulations of bordered surfaces as anti-symmetric quivers of
//! their traditional triangulations, with flips and exchange polynomials.

mod catalogue;
mod spec;
mod state;
mod tropical;
mod verify;

use thiserror::Error;

use crate::lp::LpError;
use crate::quiver::QuiverError;

pub use catalogue::{
    annulus, build_catalogue, build_surface, mobius, once_punctured_disk, parse_surface_name, polygon,
    principal_state,
};
pub use spec::{EdgeKind, EdgeSpec, Side, SurfaceSpec, Topology};
pub use state::{
    state_from_json, state_to_json, OneSidedFile, QuasiTriState, Record, RecordCheck, SlotKind, StateFile,
    StateKey,
};
pub use tropical::{m1_tropical_table, HalfPower, TropicalRow};
pub use verify::{
    correspondence, distinct_exchange, full_rank_sample, prop48_sweep, quasi_flip_graph, random_walk,
    verify_flip_lp, CorrespondenceReport, FlipCheck, FlipLpReport, Prop48Sweep, RankSample,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("invalid surface: {0}")]
    InvalidSpec(String),
    #[error("excluded surface: {0}")]
    Excluded(String),
    #[error("state is not a triangulation")]
    NotTriangulation,
    #[error("slot {0} is not a flippable quasi-arc")]
    NotFlippable(usize),
    #[error("flip at slot {slot}: {msg}")]
    BadFlip { slot: usize, msg: String },
    #[error("exchange polynomials of `{a}` and `{b}` coincide")]
    Distinctness { a: String, b: String },
    #[error("exchange polynomial of `{0}` is a constant")]
    Degenerate(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Lp(#[from] LpError),
}

impl From<crate::laurent::LaurentError> for SurfaceError {
    fn from(e: crate::laurent::LaurentError) -> Self {
        SurfaceError::Lp(LpError::from(e))
    }
}
