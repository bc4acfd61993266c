//! Timing and size metrics for construction and bosonic verification.

use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::hirota::bkp_residual;
use crate::sample;
use crate::tau_bkp::{tau_bkp, PartitionExt};

pub const MAX_BENCH_SIZE: u32 = 12;
const BENCH_SEED: u64 = 20240;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BenchError {
    #[error("size {0} is outside 1..={MAX_BENCH_SIZE}")]
    SizeOutOfRange(u32),
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub size: u32,
    pub partition: PartitionExt,
    pub tau_terms: usize,
    pub residual_terms: usize,
    pub build: Duration,
    pub verify: Duration,
}

/// The strict partition of `n` with the most parts, ties broken towards the
/// lexicographically largest.
pub fn bench_partition(n: u32) -> PartitionExt {
    PartitionExt::strict_up_to(n)
        .into_iter()
        .filter(|p| p.weight() == n)
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.parts().cmp(b.parts())))
        .expect("every n has a strict partition")
}

/// One row per size: a BKP tau with seeded random constants on
/// [`bench_partition`], then its residual.
pub fn run(sizes: &[u32]) -> Result<Vec<BenchRow>, BenchError> {
    if let Some(&bad) = sizes.iter().find(|&&n| n == 0 || n > MAX_BENCH_SIZE) {
        return Err(BenchError::SizeOutOfRange(bad));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let partition = bench_partition(size);
        let c = sample::constants(&mut sample::rng(BENCH_SEED + size as u64), &partition);
        let start = Instant::now();
        let tau = tau_bkp(&partition, &c).expect("valid bench input").poly;
        let build = start.elapsed();
        let start = Instant::now();
        let residual = bkp_residual(&tau).expect("nonzero tau");
        let verify = start.elapsed();
        rows.push(BenchRow { size, partition, tau_terms: tau.len(), residual_terms: residual.len(), build, verify });
    }
    Ok(rows)
}

pub struct Table<'a>(pub &'a [BenchRow]);

impl fmt::Display for Table<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>4}  {:<14} {:>9} {:>14} {:>11} {:>11}",
            "size", "partition", "tau_terms", "residual_terms", "build_ms", "verify_ms"
        )?;
        for r in self.0 {
            writeln!(
                f,
                "{:>4}  {:<14} {:>9} {:>14} {:>11.3} {:>11.3}",
                r.size,
                r.partition.to_string(),
                r.tau_terms,
                r.residual_terms,
                r.build.as_secs_f64() * 1e3,
                r.verify.as_secs_f64() * 1e3
            )?;
        }
        Ok(())
    }
}
