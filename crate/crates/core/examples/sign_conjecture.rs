//! Checks sign(HARDY) < 0 exactly when |i^k + i^l + i^m + i^n| = 2.

use hardyz::hardy::conjecture_scan;

fn main() -> hardyz::Result<()> {
    let max_total = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let r = conjecture_scan(max_total)?;
    println!("{} even-sum tuples up to total {max_total}", r.checked);
    println!("{} agree with the predicted sign", r.agreements);
    if r.counterexamples.is_empty() {
        println!("no counterexamples");
    } else {
        println!("COUNTEREXAMPLES: {:?}", r.counterexamples);
    }
    Ok(())
}
