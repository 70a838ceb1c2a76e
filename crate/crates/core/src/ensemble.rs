//! Root sets for every realization of an ensemble, computed on a worker
//! pool. Results come back in realization order whatever the pool size.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::EnsembleSpec;
use crate::rootfind::{
    all_roots_companion, real_roots_sampled, RootMethod, RootSet, SampledOptions,
    DEFAULT_CLASSIFY_TOL,
};

/// Environment variable consulted for the default worker count.
pub const THREADS_ENV: &str = "CRYSTALLIZE_THREADS";

/// Worker count: the explicit value, else `CRYSTALLIZE_THREADS`, else the
/// number of available cores.
pub fn resolve_threads(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var(THREADS_ENV).ok()?.trim().parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Root-finding settings shared by every realization.
#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    pub method: RootMethod,
    pub sampled: SampledOptions,
    pub classify_tol: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            method: RootMethod::Sampled,
            sampled: SampledOptions::default(),
            classify_tol: DEFAULT_CLASSIFY_TOL,
        }
    }
}

impl RootOptions {
    pub fn with_method(method: RootMethod) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }
}

fn roots_of(spec: &EnsembleSpec, index: u64, options: &RootOptions) -> Result<RootSet> {
    let f = spec.realization(index)?;
    match options.method {
        RootMethod::Sampled => real_roots_sampled(&f, options.sampled),
        RootMethod::Companion => all_roots_companion(&f, options.classify_tol),
    }
}

/// Roots of realizations `0..spec.realizations`, in index order.
pub fn ensemble_roots(spec: &EnsembleSpec, options: &RootOptions, threads: usize) -> Result<Vec<RootSet>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start {threads} workers: {e}")))?;
    pool.install(|| {
        (0..spec.realizations)
            .into_par_iter()
            .map(|i| roots_of(spec, i, options))
            .collect()
    })
}
