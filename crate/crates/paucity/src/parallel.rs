//! Partitioned runs on a rayon pool.
//!
//! Each job is cut into contiguous slices of its partition axis. The slices
//! are collected in order and merged, and both merges are order-independent,
//! so the worker count never changes the result.

use paucity_core::{
    BruteCensus, CensusOptions, CensusReport, DivisorSearch, Equations, Int, NonlinearSystem,
    NormalizedSystem, SearchOutcome,
};
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::error::{CliError, Result};

/// `workers == 0` lets rayon choose.
pub fn pool(workers: usize) -> Result<ThreadPool> {
    ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Input(format!("cannot start worker pool: {e}")))
}

fn slices(len: usize, threads: usize) -> Vec<std::ops::Range<usize>> {
    let parts = (threads * 8).clamp(1, len.max(1));
    let step = len.div_ceil(parts).max(1);
    (0..len).step_by(step).map(|lo| lo..(lo + step).min(len)).collect()
}

pub fn census<S: Equations + Sync + ?Sized>(
    pool: &ThreadPool,
    system: &S,
    x_max: Int,
    options: CensusOptions,
) -> Result<CensusReport> {
    let job = BruteCensus::new(system, x_max, options)?;
    let parts = pool.install(|| {
        slices(job.len(), pool.current_num_threads())
            .into_par_iter()
            .map(|r| job.run_range(r))
            .collect::<paucity_core::Result<Vec<_>>>()
    })?;
    Ok(parts.into_iter().fold(CensusReport::empty(x_max, options.collect), CensusReport::merge))
}

fn search(pool: &ThreadPool, job: &DivisorSearch<'_>) -> Result<SearchOutcome> {
    let parts = pool.install(|| {
        slices(job.partition_len(), pool.current_num_threads())
            .into_par_iter()
            .map(|r| job.run_part(r))
            .collect::<paucity_core::Result<Vec<_>>>()
    })?;
    Ok(DivisorSearch::finish(parts))
}

pub fn divisor_linear(
    pool: &ThreadPool,
    norm: &NormalizedSystem,
    x_max: Int,
    budget: u64,
) -> Result<SearchOutcome> {
    search(pool, &DivisorSearch::linear(norm, x_max, budget)?)
}

pub fn divisor_nonlinear(
    pool: &ThreadPool,
    nsys: &NonlinearSystem,
    x_max: Int,
    budget: u64,
) -> Result<SearchOutcome> {
    search(pool, &DivisorSearch::nonlinear(nsys, x_max, budget)?)
}
