//! Tabulated `(t, Z^(k), Z^(ℓ), Z^(k) Z^(ℓ))` for external plotting.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::{check_orders, grid};
use crate::zfun;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureRow {
    pub t: f64,
    pub z_k: f64,
    pub z_l: f64,
    pub product: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureTable {
    pub k: usize,
    pub l: usize,
    pub rows: Vec<FigureRow>,
}

/// Derivative orders plotted in figures 1 to 4.
pub fn figure_orders(figure: u32) -> Result<(usize, usize)> {
    match figure {
        1 | 2 => Ok((0, 2)),
        3 => Ok((4, 6)),
        4 => Ok((3, 7)),
        _ => Err(Error::InvalidArgument(format!("figure {figure} is not one of 1-4"))),
    }
}

/// Table for one of figures 1 to 4 on `[t_min, t_max]` with spacing `step`.
pub fn figure_data(figure: u32, t_min: f64, t_max: f64, step: f64) -> Result<FigureTable> {
    let (k, l) = figure_orders(figure)?;
    product_table(k, l, t_min, t_max, step)
}

/// Samples `Z^(k)`, `Z^(ℓ)` and their product from `t_min` in steps of
/// `step` up to `t_max`. An empty interval gives an empty table.
pub fn product_table(k: usize, l: usize, t_min: f64, t_max: f64, step: f64) -> Result<FigureTable> {
    check_orders(k, l)?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidArgument(format!("step {step} must be positive")));
    }
    if !(t_max >= t_min) {
        return Err(Error::InvalidArgument(format!("empty interval [{t_min}, {t_max}]")));
    }
    if t_max == t_min {
        return Ok(FigureTable { k, l, rows: Vec::new() });
    }
    let n = ((t_max - t_min) / step).round().max(1.0) as usize;
    let nodes = grid(t_min, t_max, n);
    let kmax = k.max(l);
    let rows = nodes
        .par_iter()
        .map(|&t| {
            let all = zfun::z_all(t, kmax)?;
            let (a, b) = (all[k].value, all[l].value);
            Ok(FigureRow { t, z_k: a, z_l: b, product: a * b })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FigureTable { k, l, rows })
}

impl FigureTable {
    pub fn header(&self) -> [String; 4] {
        ["t".into(), format!("z{}", self.k), format!("z{}", self.l), "product".into()]
    }

    /// Comma-separated output with a header row.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let io = |e: csv::Error| Error::InvalidArgument(format!("csv output failed: {e}"));
        let mut out = csv::Writer::from_writer(w);
        out.write_record(self.header()).map_err(io)?;
        for r in &self.rows {
            out.write_record([r.t, r.z_k, r.z_l, r.product].map(|x| x.to_string())).map_err(io)?;
        }
        out.flush().map_err(|e| Error::InvalidArgument(format!("csv output failed: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_interval_is_header_only() {
        let t = figure_data(2, 500.0, 500.0, 0.01).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "t,z0,z2,product\n");
    }

    #[test]
    fn figure_mapping() {
        assert_eq!(figure_orders(1).unwrap(), (0, 2));
        assert_eq!(figure_orders(3).unwrap(), (4, 6));
        assert_eq!(figure_orders(4).unwrap(), (3, 7));
        assert!(figure_orders(5).is_err());
    }

    #[test]
    fn rows_cover_the_interval() {
        let t = figure_data(3, 500.0, 501.0, 0.01).unwrap();
        assert_eq!(t.rows.len(), 101);
        assert_eq!(t.rows[0].t, 500.0);
        assert_eq!(t.rows[100].t, 501.0);
        for r in &t.rows {
            assert_eq!(r.product, r.z_k * r.z_l);
        }
    }
}
