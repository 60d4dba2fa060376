//! Quadruple divisor sum against (log y)^4 times the region integral.

use hardyz::exactq::{MPoly, Var};
use hardyz::moments::em_lemma_check;

fn main() -> hardyz::Result<()> {
    let one = MPoly::one(&[]);
    let x = MPoly::var(&[], &Var::new("x"));
    for (name, fs) in [("all ones", [&one, &one, &one, &one]), ("x, 1, x, 1", [&x, &one, &x, &one])] {
        println!("{name}");
        for y in [1_000, 10_000, 100_000] {
            let r = em_lemma_check(fs, y)?;
            println!(
                "  y = {y:>6}: sum {:>10.3}, main {:>10.3}, |diff|/(log y)^3 = {:.4}",
                r.sum, r.main_term, r.scaled_error
            );
        }
    }
    Ok(())
}
