//! Exact rational polynomials: products, derivatives, box and region integrals.

use hardyz::exactq::{format_rational, rat, region_vars, MPoly, PolyRegionT, Var};

fn main() -> hardyz::Result<()> {
    let x = Var::new("x");
    let y = Var::new("y");
    let px = MPoly::var(&[], &x);
    let py = MPoly::var(&[], &y);

    // (1/2 + x)^3 (x - y)
    let half = MPoly::constant(&[], rat(1, 2));
    let p = &(&half + &px).pow(3) * &(&px - &py);
    println!("p has {} terms, total degree {}", p.len(), p.total_degree());
    println!("p(1/3, 1/4) = {}", format_rational(&p.eval(&[rat(1, 3), rat(1, 4)])));
    println!("d^2 p / dx dy at 0 = {}", format_rational(&p.mixed_derivative_at_zero(&[x.clone(), y.clone()]).constant_term()));
    let boxed = p.integrate_box(&[x, y]);
    println!("integral over the unit square = {}", format_rational(&boxed.constant_term()));

    // volume and a moment of the region {t1+t3, t2+t4, t1+t2, t3+t4 <= 1}
    let t = region_vars();
    let one = MPoly::one(&[]);
    let vol = PolyRegionT.integrate_value(&one, &t)?;
    let t1 = MPoly::var(&[], &t[0]);
    let m = PolyRegionT.integrate_value(&(&t1 * &t1), &t)?;
    println!("region volume = {}, integral of t1^2 = {}", format_rational(&vol), format_rational(&m));
    Ok(())
}
