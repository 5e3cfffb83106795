//! Quasi-modular pseudometric spaces on finite data.
//!
//! Every numeric type is generic over [`Scalar`] (`f64` or `f32`); the
//! aliases at the crate root fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod completeness;
pub mod conorm;
pub mod distance;
pub mod envelopes;
pub mod error;
pub mod ext;
pub mod gauge;
pub mod graph;
pub mod grid;
pub mod io;
pub mod luxemburg;
pub mod orlicz;
pub mod report;
pub mod scalar;
pub mod topology;

pub use conorm::TConorm;
pub use distance::DistanceTable;
pub use envelopes::PartialFunction;
pub use error::{Error, Result};
pub use ext::ExtValue;
pub use gauge::{GaugeSpec, Regime};
pub use graph::{DirectedGraph, DynamicCostSchedule, EdgeOrliczFamily};
pub use grid::{Profile, ScaleGrid};
pub use luxemburg::{LuxemburgOptions, LuxemburgResult};
pub use orlicz::{DiscreteMeasureSpace, MusielakOrlicz, OneSidedPair};
pub use report::{Axiom, AxiomReport, Violation};
pub use scalar::Scalar;
pub use topology::{FiniteTopology, PointSet, Relation, Side};

pub type Gauge = GaugeSpec<f64>;
pub type Gauge32 = GaugeSpec<f32>;
pub type Grid = ScaleGrid<f64>;
pub type Ext = ExtValue<f64>;
pub type Distances = DistanceTable<f64>;
pub type Report = AxiomReport<f64>;
