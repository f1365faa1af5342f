//! An exact laboratory for circular nowhere-zero flows.
//!
//! The crate decides, for a bridgeless multigraph G and a rational
//! r = p/q in (4, 5], whether G admits a circular nowhere-zero r-flow
//! whose values avoid the closed set [-1, 1] strictly — equivalently,
//! whether the circular flow number of G is strictly below r.  All
//! arithmetic is exact: flow values are rationals, and the search state
//! lives in a finite algebra of symmetric open-interval sets modulo the
//! scaled ring R/pZ.
//!
//! Modules:
//! - [`interval`]: the interval-set algebra (union, intersection, Minkowski
//!   sum, open complement, amplitude, measure).
//! - [`network`]: two-terminal networks with simple / abstract / gadget
//!   edges, vertex surgery, and the plain-text formats.
//! - [`graph6`]: graph6 and sparse6 codecs.
//! - [`engine`]: the exact decision procedure, open-capacity computation,
//!   rational flow certificates, and certificate verification.
//! - [`constructions`]: generators for the graph families with circular
//!   flow number 5 and the splice/expansion operations they rely on.
//! - [`analysis`]: girth, bridges, cyclic edge-connectivity, edge
//!   3-colorability, snark reports.
//! - [`reduction`]: the polynomial reduction from 2-coloring of 3-uniform
//!   hypergraphs to deciding "circular flow number below r".
//! - [`cli`]: the command-line interface.

#![forbid(unsafe_code)]

pub mod analysis;
pub mod cli;
pub mod constructions;
pub mod engine;
pub mod error;
pub mod graph6;
pub mod interval;
pub mod network;
pub mod reduction;

pub use engine::{
    capacity, decide, decide_4flow, decide_constrained, decide_phi_lt, decide_with_jobs,
    lift_modular_flow, parallel_join, serial_join, Budget, FlowAssignment, Label, LiftedFlow,
    ScaledContext, Verdict,
};
pub use error::{Error, Result};
pub use interval::{IntervalSet, Rational};
pub use network::{Edge, EdgeKind, GEdge, Hypergraph3, Network, VertexId};
