//! A degree-30 random polynomial and its derivatives of order 1, 3 and 10,
//! plotted against the rescaled coordinate. Writes SVGs to the directory
//! given as the first argument (default `figure1`).

use std::f64::consts::PI;

use trigzeros::plot::{Plot, Series, Style};
use trigzeros::rootfind::real_roots_sampled;
use trigzeros::EnsembleSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "figure1".into());
    std::fs::create_dir_all(&dir)?;
    let n = 30;
    let base = EnsembleSpec::equal_variance(n, 0, 1, 1)?.sample(0)?;
    for p in [0u32, 1, 3, 10] {
        let f = base.differentiate_scaled(p, n as f64);
        let real = real_roots_sampled(&f, Default::default())?.real_roots.len();
        let points: Vec<(f64, f64)> = (0..=1200)
            .map(|k| {
                let x = 2.0 * n as f64 * k as f64 / 1200.0;
                (x, f.evaluate(PI * x / n as f64))
            })
            .collect();
        let plot = Plot::new(&format!("order {p}: {real} of {} zeros real", 2 * n), "N x / pi", "")
            .with_series(Series { label: String::new(), points, style: Style::Line });
        std::fs::write(format!("{dir}/order{p}.svg"), plot.render(env!("CARGO_PKG_VERSION")))?;
        println!("p = {p:>2}: {real:>2} real zeros out of {}", 2 * n);
    }
    Ok(())
}
