//! Fraction of an interval on which Z^(k) Z^(l) takes each sign.

use hardyz::survey::sign_measure;

fn main() -> hardyz::Result<()> {
    for (k, l) in [(0, 2), (1, 3), (4, 6), (3, 7), (5, 7)] {
        let r = sign_measure(k, l, 500.0, 530.0, 0.01)?;
        println!(
            "({k},{l}) on [500, 530]: negative {:.4}, positive {:.4}, predicted sign {:.4}, {} sign changes",
            r.fraction_negative(),
            r.fraction_positive(),
            r.fraction_predicted_sign(),
            r.refined_sign_changes
        );
    }
    Ok(())
}
