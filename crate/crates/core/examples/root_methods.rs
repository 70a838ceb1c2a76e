//! Real zeros by grid bracketing versus companion-matrix eigenvalues.

use trigzeros::rootfind::{all_roots_companion, real_roots_sampled, DEFAULT_CLASSIFY_TOL};
use trigzeros::EnsembleSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, p) in [(10usize, 0u32), (25, 2), (40, 8)] {
        let f = EnsembleSpec::equal_variance(n, p, 1, 3)?.realization(0)?;
        let sampled = real_roots_sampled(&f, Default::default())?;
        let companion = all_roots_companion(&f, DEFAULT_CLASSIFY_TOL)?;
        let gap = sampled
            .real_roots
            .iter()
            .zip(&companion.real_roots)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!(
            "N = {n:>2}, p = {p}: sampled {} real, companion {} real + {} complex, max gap {gap:.1e}",
            sampled.real_roots.len(),
            companion.real_roots.len(),
            companion.complex_roots.as_ref().map_or(0, |c| c.len())
        );
    }
    Ok(())
}
