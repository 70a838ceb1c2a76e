//! Nearest-neighbor spacings at large p against the law (1 + 4u^2)^(-3/2)
//! in u = p (s - 1 - 1/(2p)).

use trigzeros::asymptotics::nn_cdf;
use trigzeros::ensemble::{resolve_threads, RootOptions};
use trigzeros::stats::{ks_distance, rescaled_ensemble, spacing_samples};
use trigzeros::EnsembleSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, n) in [(10u32, 128usize), (20, 256), (20, 512)] {
        let spec = EnsembleSpec::equal_variance(n, p, 500, 11)?;
        let sets = rescaled_ensemble(&spec, &RootOptions::default(), resolve_threads(None))?;
        let pf = p as f64;
        let u: Vec<f64> = spacing_samples(&sets, n).iter().map(|s| pf * (s - 1.0 - 0.5 / pf)).collect();
        println!("p = {p:>2}, N = {n:>3}: KS distance {:.4} over {} gaps", ks_distance(&u, nn_cdf), u.len());
    }
    Ok(())
}
