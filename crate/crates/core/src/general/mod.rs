//! The general pipeline: connectors, expander packing, circumference
//! splitting and degree reduction.

pub mod circumference;
pub mod connector;
pub mod dense;
pub mod params;
pub mod pipeline;

pub use circumference::{circumference_split, CircumferenceSplit};
pub use connector::{layers, route_via_connector, sample_connector, ConnectorState};
pub use dense::{decompose_dense, decompose_expander};
pub use params::PipelineParams;
pub use pipeline::{decompose_general, reduce_degree_step, StepResult};
