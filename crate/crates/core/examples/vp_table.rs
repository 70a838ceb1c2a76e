//! Fraction of real zeros by derivative order: limit v_p, exact value at
//! N = 30, and the fraction newly real at each order.

use trigzeros::analytic::{expected_real_fraction_finite_n, v_p};
use trigzeros::asymptotics::new_real_fraction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>3} {:>9} {:>9} {:>9}", "p", "v_p", "N=30", "new");
    for p in (0..=10).chain([20, 49, 100]) {
        let new = if p == 0 { String::new() } else { format!("{:.6}", new_real_fraction(p)?) };
        println!("{p:>3} {:>9.6} {:>9.6} {new:>9}", v_p(p), expected_real_fraction_finite_n(30, p));
    }
    let first = (0..).find(|&p| v_p(p) >= 0.99).unwrap_or(0);
    println!("first order with at least 99% real zeros: {first}");
    Ok(())
}
