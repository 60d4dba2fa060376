//! Pairs each zero of Z^(k) with the nearest zero of Z^(l).

use hardyz::survey::zero_pairing;

fn main() -> hardyz::Result<()> {
    for (k, l) in [(0, 2), (4, 6), (3, 7)] {
        let r = zero_pairing(k, l, 500.0, 530.0)?;
        println!(
            "({k},{l}): {} pairs, median distance {:.4}, mean spacing {:.4}, unpaired {} / {}",
            r.pairs.len(),
            r.median_distance.unwrap_or(f64::NAN),
            r.mean_spacing,
            r.unpaired_k.len(),
            r.unpaired_l.len()
        );
    }
    Ok(())
}
