//! Classical stand-in for the annealing device: a simulated-annealing
//! sampler over hardware-graph QUBOs, plus the device timing model and
//! time-to-solution statistics.

mod sampler;
mod timing;

pub use sampler::{default_sweeps, sample, SampleRecord, SampleSet, SamplerConfig};
pub use timing::{
    k_p, optimal_count, proc_time, success_probability, TimingModel, DEFAULT_CONFIDENCE,
};
pub(crate) use timing::secs;
