//! Nearest-neighbour pairing of the zeros of `Z^(k)` and `Z^(ℓ)`.

use serde::Serialize;

use super::{check_interval, check_orders, crossings, grid, mean_zero_spacing, sample, Crossing};
use crate::zfun;
use crate::{Error, Result};

/// Zeros are bisected to this width.
const ZERO_WIDTH: f64 = 1e-10;
/// Scan step in units of the mean zero spacing.
const SCAN_FRACTION: f64 = 1.0 / 64.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroPair {
    pub zero_k: f64,
    pub zero_l: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairingReport {
    pub k: usize,
    pub l: usize,
    pub interval: (f64, f64),
    pub zeros_k: Vec<f64>,
    pub zeros_l: Vec<f64>,
    /// Sorted by the zero of `Z^(k)`.
    pub pairs: Vec<ZeroPair>,
    pub unpaired_k: Vec<f64>,
    pub unpaired_l: Vec<f64>,
    pub median_distance: Option<f64>,
    pub mean_spacing: f64,
}

/// Zeros of `Z^(k)` on `[t_min, t_max]` seen as sign changes on a grid of
/// step `step`, bisected to `1e-10`.
pub fn zeros_of(k: usize, t_min: f64, t_max: f64, step: f64) -> Result<Vec<f64>> {
    check_orders(k, k)?;
    check_interval(t_min, t_max)?;
    if !(step > 0.0) {
        return Err(Error::InvalidArgument(format!("step {step} must be positive")));
    }
    if t_max == t_min {
        return Ok(Vec::new());
    }
    let n = ((t_max - t_min) / step).ceil().max(1.0) as usize;
    let nodes = grid(t_min, t_max, n);
    let f = |t: f64| Ok(zfun::z_deriv(t, k)?.value);
    let values = sample(&nodes, f)?;
    Ok(crossings(&nodes, &values, &f, ZERO_WIDTH)
        .into_iter()
        .map(|(i, c)| match c {
            Crossing::At(r) => r,
            // cannot happen for a continuous evaluator, keep the cell midpoint
            Crossing::Unresolved => 0.5 * (nodes[i] + nodes[i + 1]),
        })
        .collect())
}

/// Indices of the nearest elements of sorted `xs` on either side of `x`.
fn neighbours(xs: &[f64], x: f64) -> impl Iterator<Item = usize> {
    let i = xs.partition_point(|&y| y < x);
    let lo = i.checked_sub(1);
    let hi = (i < xs.len()).then_some(i);
    lo.into_iter().chain(hi)
}

/// Greedy pairing: candidate pairs (each zero with its nearest neighbours
/// on both sides in the other list) are taken by increasing distance, ties
/// resolved by the lower `t`.
fn greedy(a: &[f64], b: &[f64]) -> Vec<(usize, usize)> {
    let mut cand: Vec<(usize, usize)> = Vec::new();
    for (i, &x) in a.iter().enumerate() {
        cand.extend(neighbours(b, x).map(|j| (i, j)));
    }
    for (j, &y) in b.iter().enumerate() {
        cand.extend(neighbours(a, y).map(|i| (i, j)));
    }
    cand.sort_by(|&(i, j), &(p, q)| {
        let (d1, d2) = ((a[i] - b[j]).abs(), (a[p] - b[q]).abs());
        d1.total_cmp(&d2)
            .then(a[i].min(b[j]).total_cmp(&a[p].min(b[q])))
            .then(a[i].total_cmp(&a[p]))
    });
    cand.dedup();
    let (mut used_a, mut used_b) = (vec![false; a.len()], vec![false; b.len()]);
    let mut out = Vec::new();
    for (i, j) in cand {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            out.push((i, j));
        }
    }
    out.sort_unstable();
    out
}

/// Pairs every zero of `Z^(k)` on `[t_min, t_max]` with a nearby zero of
/// `Z^(ℓ)` and reports the distances.
pub fn zero_pairing(k: usize, l: usize, t_min: f64, t_max: f64) -> Result<PairingReport> {
    check_orders(k, l)?;
    check_interval(t_min, t_max)?;
    if k % 2 != l % 2 {
        return Err(Error::InvalidArgument(format!("k = {k} and l = {l} differ in parity")));
    }
    let step = mean_zero_spacing(t_max) * SCAN_FRACTION;
    let zeros_k = zeros_of(k, t_min, t_max, step)?;
    let zeros_l = if l == k { zeros_k.clone() } else { zeros_of(l, t_min, t_max, step)? };
    let matched = greedy(&zeros_k, &zeros_l);
    let pairs: Vec<ZeroPair> = matched
        .iter()
        .map(|&(i, j)| ZeroPair {
            zero_k: zeros_k[i],
            zero_l: zeros_l[j],
            distance: (zeros_k[i] - zeros_l[j]).abs(),
        })
        .collect();
    let (mut in_k, mut in_l) = (vec![false; zeros_k.len()], vec![false; zeros_l.len()]);
    for &(i, j) in &matched {
        in_k[i] = true;
        in_l[j] = true;
    }
    let unpaired = |zs: &[f64], used: &[bool]| -> Vec<f64> {
        zs.iter().zip(used).filter(|(_, &u)| !u).map(|(&z, _)| z).collect()
    };
    let mut d: Vec<f64> = pairs.iter().map(|p| p.distance).collect();
    d.sort_by(f64::total_cmp);
    let median_distance = match d.len() {
        0 => None,
        n if n % 2 == 1 => Some(d[n / 2]),
        n => Some(0.5 * (d[n / 2 - 1] + d[n / 2])),
    };
    Ok(PairingReport {
        k,
        l,
        interval: (t_min, t_max),
        unpaired_k: unpaired(&zeros_k, &in_k),
        unpaired_l: unpaired(&zeros_l, &in_l),
        zeros_k,
        zeros_l,
        pairs,
        median_distance,
        mean_spacing: mean_zero_spacing(0.5 * (t_min + t_max)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_prefers_closest_then_lower() {
        let a = [1.0, 2.0, 5.0];
        let b = [1.5, 2.1];
        // 2.0–2.1 first, then 1.0–1.5; 5.0 stays alone
        assert_eq!(greedy(&a, &b), vec![(0, 0), (1, 1)]);
        // tie: 1.0 and 3.0 both at distance 1 from 2.0, lower t wins
        assert_eq!(greedy(&[1.0, 3.0], &[2.0]), vec![(0, 0)]);
    }

    #[test]
    fn same_order_pairs_with_itself() {
        let r = zero_pairing(2, 2, 500.0, 505.0).unwrap();
        assert!(!r.pairs.is_empty());
        assert!(r.pairs.iter().all(|p| p.distance == 0.0));
        assert!(r.unpaired_k.is_empty());
    }

    #[test]
    fn rejects_mixed_parity() {
        assert!(zero_pairing(0, 1, 500.0, 510.0).is_err());
    }
}
