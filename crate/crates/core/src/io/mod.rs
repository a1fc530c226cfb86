pub mod input;
pub mod poly_parse;
pub mod report;

pub use input::{parse_input, print_job, JobSpec, ModuleSpec, Params, RingSpec};
pub use report::{run_command, Report, COMMANDS};
