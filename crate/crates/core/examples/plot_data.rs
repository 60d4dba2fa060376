//! Writes t, Z^(k), Z^(l) and their product as CSV for an external plotter.
//! Usage: plot_data [figure 1-4] [output path]

use std::fs::File;
use std::io::stdout;

use hardyz::survey::figure_data;

fn main() -> hardyz::Result<()> {
    let mut args = std::env::args().skip(1);
    let figure = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let table = figure_data(figure, 500.0, 530.0, 0.01)?;
    match args.next() {
        Some(path) => {
            let f = File::create(&path).map_err(|e| hardyz::Error::InvalidArgument(format!("{path}: {e}")))?;
            table.write_csv(f)?;
            eprintln!("wrote {} rows of Z^({}) Z^({}) to {path}", table.rows.len(), table.k, table.l);
        }
        None => table.write_csv(stdout())?,
    }
    Ok(())
}
