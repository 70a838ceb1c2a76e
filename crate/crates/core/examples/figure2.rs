//! Limiting pair correlation of real zeros for p = 0, 1, 3, 10 on (0, 6].

use trigzeros::analytic::{tabulate_limit, v_p};
use trigzeros::plot::{Plot, Series, Style};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "figure2".into());
    std::fs::create_dir_all(&dir)?;
    let xs: Vec<f64> = (1..=600).map(|k| k as f64 * 0.01).collect();
    let mut plot = Plot::new("Pair correlation of real zeros", "x", "R2");
    for (p, style) in [(0u32, Style::Dotted), (1, Style::Dashed), (3, Style::Line), (10, Style::Line)] {
        let curve = tabulate_limit(p, &xs)?;
        let (xm, rm) = curve.iter().copied().fold((0.0, 0.0), |m, c| if c.1 > m.1 { c } else { m });
        println!("p = {p:>2}: peak {rm:.4} at x = {xm:.2}, plateau v_p^2 = {:.4}", v_p(p).powi(2));
        plot.series.push(Series { label: format!("p = {p}"), points: curve, style });
    }
    std::fs::write(format!("{dir}/paircorr.svg"), plot.render(env!("CARGO_PKG_VERSION")))?;
    Ok(())
}
