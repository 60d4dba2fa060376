//! Second and fourth mollified moment constants and the proportion bound.

use hardyz::exactq::{format_rational, rat};
use hardyz::moments::{proportion_bound, s_coefficient, t_coefficient, MollifierPoly};

fn main() -> hardyz::Result<()> {
    let p = MollifierPoly::monomial(2);
    let s = s_coefficient(0, 2, &p)?;
    let t = t_coefficient(0, 2, &p)?;
    println!("S_(0,2) = {}", s.value);
    println!("T_(0,2) = {}", t.value);
    for th in [rat(1, 20), rat(1, 8), rat(1, 4), rat(1, 2)] {
        let b = proportion_bound(0, 2, &p, &th)?;
        println!(
            "theta = {:>4}: bound {} ~ {:.6} on the {:?} set",
            format_rational(&th),
            format_rational(&b.bound),
            b.bound_f64(),
            b.sign_set
        );
    }
    Ok(())
}
