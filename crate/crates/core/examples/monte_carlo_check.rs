//! Samples the fourth-moment integrand and compares with the exact constant.
//! Pass the sample count as the first argument (default 10^6).

use hardyz::moments::{mc, t_coefficient, MollifierPoly};

fn main() -> hardyz::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1_000_000);
    let p = MollifierPoly::monomial(2);
    for (k, l) in [(0, 2), (1, 1)] {
        let exact = t_coefficient(k, l, &p)?.value.eval_f64(0.1);
        let r = mc::t_coefficient_mc(k, l, &p, 0.1, samples, 42);
        println!(
            "({k},{l}) theta = 0.1: exact {exact:.5}, sampled {:.5} +/- {:.5}, relative error {:.2e}",
            r.estimate,
            r.std_error,
            (r.estimate - exact).abs() / exact
        );
    }
    Ok(())
}
