//! Two complex zeros at 1/2 +- i sqrt(a) between real zeros at 0 and 1:
//! below a = 2/(pi^2 - 8) the derivative has three real zeros in (0, 1).

use trigzeros::asymptotics::{locate_triple_zero_transition, triple_zero_demo, triple_zero_threshold};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for a in [0.92, 1.0, 1.06, 1.08, 1.1] {
        let demo = triple_zero_demo(a)?;
        println!("a = {a:<5} f' has {} zeros in (0, 1)", demo.derivative_zeros);
    }
    let found = locate_triple_zero_transition(0.9, 1.2, 1e-9)?;
    println!("transition by bisection {found:.8}, closed form {:.8}", triple_zero_threshold());
    Ok(())
}
