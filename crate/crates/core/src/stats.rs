//! Empirical zero statistics over an ensemble: real-zero fraction, pair
//! correlation and nearest-neighbor spacings, in the coordinate `N x / pi`
//! where one period has length `2N` and all `2N` zeros have unit mean
//! spacing.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::ensemble::{ensemble_roots, RootOptions};
use crate::error::{Error, Result};
use crate::poly::EnsembleSpec;
use crate::rootfind::{fraction_real, RootSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    Raw,
    Density,
    PairCorrelation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<f64>,
    pub normalization: Normalization,
}

impl Histogram {
    /// Bins of width `width` from `lo`; the last bin ends at `hi`.
    pub fn uniform_edges(lo: f64, hi: f64, width: f64) -> Result<Vec<f64>> {
        if !(width > 0.0) || !(hi > lo) {
            return Err(Error::InvalidInput(format!(
                "need width > 0 and hi > lo, got width={width}, [{lo}, {hi}]"
            )));
        }
        let bins = ((hi - lo) / width - 1e-9).ceil().max(1.0) as usize;
        let mut edges: Vec<f64> = (0..bins).map(|k| lo + k as f64 * width).collect();
        edges.push(hi);
        Ok(edges)
    }

    pub fn widths(&self) -> Vec<f64> {
        self.bin_edges.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn centers(&self) -> Vec<f64> {
        self.bin_edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// `sum(counts * widths)`.
    pub fn mass(&self) -> f64 {
        self.counts.iter().zip(self.widths()).map(|(c, w)| c * w).sum()
    }

    /// CSV with header `bin_left,bin_right,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_left,bin_right,value\n");
        for (w, c) in self.bin_edges.windows(2).zip(&self.counts) {
            out.push_str(&format!("{},{},{}\n", w[0], w[1], c));
        }
        out
    }

    fn bin_of(edges: &[f64], x: f64) -> Option<usize> {
        if x < edges[0] || x >= edges[edges.len() - 1] {
            return None;
        }
        Some(edges.partition_point(|&e| e <= x) - 1)
    }
}

/// Maps zeros in `[0, 2pi)` to `[0, 2N)`.
pub fn rescale_zeros(roots: &[f64], degree: usize) -> Vec<f64> {
    let scale = degree as f64 / PI;
    roots.iter().map(|x| x * scale).collect()
}

/// Ensemble description stored next to a pair-correlation estimate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSummary {
    pub degree: usize,
    pub realizations: u64,
    pub derivative_order: Option<u32>,
    pub master_seed: Option<u64>,
}

impl From<&EnsembleSpec> for EnsembleSummary {
    fn from(spec: &EnsembleSpec) -> Self {
        Self {
            degree: spec.degree,
            realizations: spec.realizations,
            derivative_order: Some(spec.derivative_order),
            master_seed: Some(spec.master_seed),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairCorrelationEstimate {
    pub histogram: Histogram,
    /// Ordered pairs counted in each bin.
    pub pair_counts: Vec<u64>,
    pub ensemble: EnsembleSummary,
    pub rescale: String,
}

impl PairCorrelationEstimate {
    pub fn to_csv(&self) -> String {
        self.histogram.to_csv()
    }

    /// JSON sidecar: ensemble metadata and raw pair counts.
    pub fn metadata_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Sidecar<'a> {
            ensemble: &'a EnsembleSummary,
            rescale: &'a str,
            bin_width: f64,
            max_range: f64,
            pair_counts: &'a [u64],
            total_pairs: u64,
        }
        let edges = &self.histogram.bin_edges;
        Ok(serde_json::to_string_pretty(&Sidecar {
            ensemble: &self.ensemble,
            rescale: &self.rescale,
            bin_width: edges[1] - edges[0],
            max_range: edges[edges.len() - 1],
            pair_counts: &self.pair_counts,
            total_pairs: self.pair_counts.iter().sum(),
        })?)
    }
}

/// Adds the circular differences `(x_j - x_i) mod 2N` in `[0, max_range)`
/// over ordered pairs `i != j` of one sorted root list to `counts`.
fn count_pairs(roots: &[f64], period: f64, edges: &[f64], counts: &mut [u64]) {
    let n = roots.len();
    let max_range = edges[edges.len() - 1];
    for i in 0..n {
        for step in 1..n {
            let j = (i + step) % n;
            let mut d = roots[j] - roots[i];
            if j < i {
                d += period;
            }
            if d >= max_range {
                break;
            }
            if let Some(b) = Histogram::bin_of(edges, d) {
                counts[b] += 1;
            }
        }
    }
}

/// Pair correlation of rescaled root lists (each sorted, in `[0, 2N)`):
/// ordered-pair counts per bin divided by `M * 2N * bin width`. For
/// independent points of density `v` every bin tends to `v^2`.
pub fn empirical_pair_correlation(
    rootsets: &[Vec<f64>],
    degree: usize,
    bin_width: f64,
    max_range: f64,
) -> Result<PairCorrelationEstimate> {
    if rootsets.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    if !(bin_width > 0.0) || bin_width >= max_range {
        return Err(Error::InvalidInput(format!(
            "bin_width must be positive and below max_range, got {bin_width} and {max_range}"
        )));
    }
    if max_range > degree as f64 {
        return Err(Error::InvalidInput(format!(
            "max_range {max_range} exceeds the half period {degree}"
        )));
    }
    let period = 2.0 * degree as f64;
    let edges = Histogram::uniform_edges(0.0, max_range, bin_width)?;
    let mut pair_counts = vec![0u64; edges.len() - 1];
    for roots in rootsets {
        count_pairs(roots, period, &edges, &mut pair_counts);
    }
    let norm = rootsets.len() as f64 * period;
    let counts = pair_counts
        .iter()
        .zip(edges.windows(2))
        .map(|(&c, w)| c as f64 / (norm * (w[1] - w[0])))
        .collect();
    Ok(PairCorrelationEstimate {
        histogram: Histogram {
            bin_edges: edges,
            counts,
            normalization: Normalization::PairCorrelation,
        },
        pair_counts,
        ensemble: EnsembleSummary {
            degree,
            realizations: rootsets.len() as u64,
            derivative_order: None,
            master_seed: None,
        },
        rescale: "N x / pi".into(),
    })
}

/// Consecutive gaps of a sorted list on a circle of length `period`,
/// including the wrap-around gap. Fewer than two points give no gaps.
pub fn circular_gaps(roots: &[f64], period: f64) -> Vec<f64> {
    if roots.len() < 2 {
        return Vec::new();
    }
    let mut gaps: Vec<f64> = roots.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.push(roots[0] + period - roots[roots.len() - 1]);
    gaps
}

/// All circular nearest-neighbor gaps of rescaled root lists.
pub fn spacing_samples(rootsets: &[Vec<f64>], degree: usize) -> Vec<f64> {
    let period = 2.0 * degree as f64;
    rootsets
        .iter()
        .flat_map(|r| circular_gaps(r, period))
        .collect()
}

/// Density-normalized histogram of nearest-neighbor gaps, on bins of
/// `bin_width` from 0 up to the first edge past the largest gap.
pub fn nearest_neighbor_spacings(
    rootsets: &[Vec<f64>],
    degree: usize,
    bin_width: f64,
) -> Result<Histogram> {
    let gaps = spacing_samples(rootsets, degree);
    if gaps.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let top = gaps.iter().fold(0.0f64, |m, &g| m.max(g));
    let hi = ((top / bin_width).floor() + 1.0) * bin_width;
    let edges = Histogram::uniform_edges(0.0, hi, bin_width)?;
    let mut counts = vec![0.0; edges.len() - 1];
    for g in &gaps {
        if let Some(b) = Histogram::bin_of(&edges, *g) {
            counts[b] += 1.0;
        }
    }
    let total = gaps.len() as f64;
    for (c, w) in counts.iter_mut().zip(edges.windows(2)) {
        *c /= total * (w[1] - w[0]);
    }
    Ok(Histogram {
        bin_edges: edges,
        counts,
        normalization: Normalization::Density,
    })
}

/// Mean and standard error of the per-realization fraction of real zeros.
pub fn real_fraction_stats(rootsets: &[RootSet], degree: usize) -> Result<(f64, f64)> {
    if rootsets.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least 2 realizations, got {}",
            rootsets.len()
        )));
    }
    let m = rootsets.len() as f64;
    let fractions: Vec<f64> = rootsets.iter().map(|r| fraction_real(r, degree)).collect();
    let mean = fractions.iter().sum::<f64>() / m;
    let var = fractions.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (m - 1.0);
    Ok((mean, (var / m).sqrt()))
}

/// Samples the ensemble, finds roots on `threads` workers and returns the
/// mean real-zero fraction with its standard error.
pub fn empirical_real_fraction(
    spec: &EnsembleSpec,
    options: &RootOptions,
    threads: usize,
) -> Result<(f64, f64)> {
    let roots = ensemble_roots(spec, options, threads)?;
    real_fraction_stats(&roots, spec.degree)
}

/// Rescaled real roots of every realization.
pub fn rescaled_ensemble(spec: &EnsembleSpec, options: &RootOptions, threads: usize) -> Result<Vec<Vec<f64>>> {
    Ok(ensemble_roots(spec, options, threads)?
        .iter()
        .map(|r| rescale_zeros(&r.real_roots, spec.degree))
        .collect())
}

/// Kolmogorov-Smirnov distance between the empirical distribution of
/// `samples` and `cdf`.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}
