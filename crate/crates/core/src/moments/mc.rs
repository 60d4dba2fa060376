//! Floating-point Monte Carlo estimate of the fourth-moment constant at a
//! fixed `ϑ`, independent of the symbolic engine.
//!
//! Samples `u` uniformly in `[0,1]⁴` and `t` uniformly in the region (by
//! rejection from `[0,1]⁴`), then scales by the region volume `1/6`. The
//! eight shift variables are handled in the algebra `ℝ[x₁..x₄, z₁..z₄]/(xⱼ², zⱼ²)`, stored densely as
//! 256 coefficients indexed by bitmask (bit `j` for `xⱼ`, bit `4+j` for `zⱼ`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::mollifier::MollifierPoly;
use crate::exactq::PolyRegionT;

const FULL: usize = 255;
const CHUNK: u64 = 1 << 16;
const REGION_VOLUME: f64 = 1.0 / 6.0;

#[derive(Debug, Clone, Serialize)]
pub struct McReport {
    pub k: u32,
    pub l: u32,
    pub theta: f64,
    pub samples: u64,
    pub seed: u64,
    pub estimate: f64,
    pub std_error: f64,
}

/// Affine form `c + Σ vᵢ·(shift variable i)`.
#[derive(Clone, Copy, Default)]
struct Lin {
    c: f64,
    v: [f64; 8],
}

impl Lin {
    fn constant(c: f64) -> Self {
        Lin { c, v: [0.0; 8] }
    }
    fn bits(c: f64, mask: u8, w: f64) -> Self {
        let mut l = Lin::constant(c);
        for i in 0..8 {
            if mask >> i & 1 == 1 {
                l.v[i] = w;
            }
        }
        l
    }
    fn add(self, o: Lin) -> Lin {
        let mut r = self;
        r.c += o.c;
        for i in 0..8 {
            r.v[i] += o.v[i];
        }
        r
    }
    fn scale(self, s: f64) -> Lin {
        let mut r = self;
        r.c *= s;
        for x in &mut r.v {
            *x *= s;
        }
        r
    }
}

/// In-place multiplication of a dense multilinear element by an affine form.
fn mul_lin(acc: &mut [f64; 256], l: &Lin) {
    let src = *acc;
    for x in acc.iter_mut() {
        *x *= l.c;
    }
    for (i, &v) in l.v.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        let bit = 1usize << i;
        // masks containing bit i come in contiguous runs of length `bit`
        for base in (bit..256).step_by(2 * bit) {
            for m in base..base + bit {
                acc[m] += v * src[m ^ bit];
            }
        }
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |a, &b| a * x + b)
}

struct Integrand {
    k: u32,
    l: u32,
    theta: f64,
    p: [Vec<f64>; 3],
}

impl Integrand {
    fn new(k: u32, l: u32, p: &MollifierPoly, theta: f64) -> Self {
        let p1 = p.derivative();
        let p2 = p1.derivative();
        Integrand {
            k,
            l,
            theta,
            p: [p.coeffs_f64(), p1.coeffs_f64(), p2.coeffs_f64()],
        }
    }

    /// Top coefficient of `H·G` at one point, divided by `2ϑ⁴`.
    fn eval(&self, u: [f64; 4], t: [f64; 4]) -> f64 {
        let th = self.theta;
        let [u1, u2, u3, u4] = u;
        const X: u8 = 0x0f;
        const Z: u8 = 0xf0;
        const X12: u8 = 0x03;
        const X34: u8 = 0x0c;
        const Z12: u8 = 0x30;
        const Z34: u8 = 0xc0;

        let sx = Lin::bits(0.0, X, 1.0);
        let sz = Lin::bits(0.0, Z, 1.0);
        let common = sx.scale(u1).add(sz.scale(-u2));
        let a = Lin::bits(0.0, X12, -1.0).add(Lin::bits(0.0, Z12, 1.0)).add(common);
        let b = Lin::bits(0.0, X34, -1.0).add(Lin::bits(0.0, Z34, 1.0)).add(common);
        let la = Lin::constant(u1 - u2).add(a.scale(th));
        let lb = Lin::constant(u1 - u2).add(b.scale(th));
        let fx = Lin::constant(1.0).add(sx.scale(th));
        let fz = Lin::constant(1.0).add(sz.scale(th));
        let half = Lin::constant(0.5);

        let a1 = Lin::bits(0.0, X12, th).add(fx.scale(-u1)).add(la.scale(u3)).add(half);
        let a2 = Lin::bits(0.0, Z12, th).add(fz.scale(-u2)).add(la.scale(-u3)).add(half);
        let b1 = Lin::bits(0.0, X34, th).add(fx.scale(-u1)).add(lb.scale(u4)).add(half);
        let b2 = Lin::bits(0.0, Z34, th).add(fz.scale(-u2)).add(lb.scale(-u4)).add(half);

        let mut h = [0.0f64; 256];
        h[0] = 1.0;
        for f in [&fx, &fz, &la, &lb] {
            mul_lin(&mut h, f);
        }
        for _ in 0..self.k {
            mul_lin(&mut h, &a1);
            mul_lin(&mut h, &b1);
        }
        for _ in 0..self.l {
            mul_lin(&mut h, &a2);
            mul_lin(&mut h, &b2);
        }

        let c = [
            1.0 - t[0] - t[2],
            1.0 - t[1] - t[3],
            1.0 - t[0] - t[1],
            1.0 - t[2] - t[3],
        ];
        let g: [[f64; 3]; 4] = std::array::from_fn(|j| {
            std::array::from_fn(|d| horner(&self.p[d], c[j]))
        });
        let mut total = 0.0;
        for s in 0..256usize {
            let mut gs = 1.0;
            for (j, gj) in g.iter().enumerate() {
                let d = (s >> j & 1) + (s >> (4 + j) & 1);
                gs *= gj[d];
            }
            total += gs * h[FULL ^ s];
        }
        total / (2.0 * th.powi(4))
    }
}

/// Monte Carlo estimate with `samples` points. Chunks are seeded from
/// `seed` deterministically, so the result does not depend on the thread
/// count.
pub fn t_coefficient_mc(
    k: u32,
    l: u32,
    p: &MollifierPoly,
    theta: f64,
    samples: u64,
    seed: u64,
) -> McReport {
    let f = Integrand::new(k, l, p, theta);
    let chunks = samples.div_ceil(CHUNK);
    let (sum, sum_sq) = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(ci);
            let n = CHUNK.min(samples - ci * CHUNK);
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..n {
                let u: [f64; 4] = rng.gen();
                let t = loop {
                    let t: [f64; 4] = rng.gen();
                    if PolyRegionT.contains(t) {
                        break t;
                    }
                };
                let v = f.eval(u, t) * REGION_VOLUME;
                s += v;
                s2 += v * v;
            }
            (s, s2)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0);
    McReport {
        k,
        l,
        theta,
        samples,
        seed,
        estimate: mean,
        std_error: (var / n).sqrt(),
    }
}
