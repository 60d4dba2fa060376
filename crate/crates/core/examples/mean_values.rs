//! Integral of Z^(k) Z^(l) over [0, T] against its leading asymptotic term.

use hardyz::survey::moment_check;

fn main() -> hardyz::Result<()> {
    for (k, l) in [(0, 0), (0, 2), (1, 1), (2, 2)] {
        let m = moment_check(k, l, 2000.0)?;
        println!(
            "({k},{l}) T = 2000: integral {:>12.2}, leading {:>12.2}, ratio {:.4} ({} panels)",
            m.numeric_integral, m.leading_term, m.ratio, m.panels
        );
    }
    Ok(())
}
