//! Fixture generation, trial batches, and scaling reports.

pub mod generators;
pub mod scaling;
pub mod trials;

pub use generators::{
    build_instance, gen_instance, label_instance, Family, GenError, Instance, InstanceDescriptor,
    InstanceLabels,
};
pub use scaling::{scaling_sweep, ScalingError, ScalingPoint, ScalingReport};
pub use trials::{run_trials, write_csv, Operation, TrialError, TrialReport, TrialSpec};
