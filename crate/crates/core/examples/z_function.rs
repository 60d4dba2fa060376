//! Z(t) and its derivatives by the three evaluation paths, plus zero counting.

use hardyz::zfun::{self, Method};

fn main() -> hardyz::Result<()> {
    let t = 1000.0;
    for k in [0, 1, 2, 5, 8] {
        for m in [Method::RiemannSiegel, Method::EulerMaclaurin, Method::FiniteDifference] {
            let e = zfun::z_deriv_with(t, k, m)?;
            println!("Z^({k})({t}) = {:+.10e} +/- {:.1e}  [{}]", e.value, e.abs_error_est, e.method);
        }
    }
    let first = zfun::z(14.134725141734695)?;
    println!("\nZ at the first zero: {:.2e}", first.value);
    println!(
        "zeros in (0, 100]: {} by sign scan, {} from theta",
        zfun::count_zeros_sign_scan(100.0, 0.01)?,
        zfun::count_zeros_theta(100.0)?
    );
    Ok(())
}
