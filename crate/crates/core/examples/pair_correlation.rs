//! Monte Carlo pair correlation of real zeros next to the exact finite-N
//! curve and its large-N limit.

use trigzeros::analytic::{pair_correlation_finite_n_rescaled, pair_correlation_limit};
use trigzeros::ensemble::{resolve_threads, RootOptions};
use trigzeros::stats::{empirical_pair_correlation, rescaled_ensemble};
use trigzeros::{EnsembleSpec, VarianceProfile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, p) = (48, 1);
    let spec = EnsembleSpec::equal_variance(n, p, 2000, 5)?;
    let sets = rescaled_ensemble(&spec, &RootOptions::default(), resolve_threads(None))?;
    let est = empirical_pair_correlation(&sets, n, 0.1, 4.0)?;
    let profile = VarianceProfile::derivative(n, p)?;
    println!("{:>5} {:>9} {:>9} {:>9}", "x", "empirical", "N=48", "limit");
    for (x, v) in est.histogram.centers().into_iter().zip(&est.histogram.counts).step_by(4) {
        println!(
            "{x:>5.2} {v:>9.4} {:>9.4} {:>9.4}",
            pair_correlation_finite_n_rescaled(&profile, x)?,
            pair_correlation_limit(p, x)?
        );
    }
    Ok(())
}
