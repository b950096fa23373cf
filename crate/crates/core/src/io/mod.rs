//! File formats and the benchmark harness.

pub mod bench;
pub mod dmx;

pub use bench::{median, parse_sizes, run_bench, write_csv, BenchRecord, BenchSize};
pub use dmx::{format_dmx, parse_dmx, read_dmx, write_dmx};
