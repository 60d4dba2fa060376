//! Exact HARDY(k, l, m, n) values and the comparison with the printed tables.

use hardyz::exactq::format_rational;
use hardyz::hardy::{compare_with_printed, hardy, hardy_table, permutation_symmetry_scan, HardyIndex};

fn main() -> hardyz::Result<()> {
    for t in [[0, 0, 0, 0], [6, 0, 0, 0], [2, 2, 1, 1], [3, 0, 0, 0]] {
        let v = hardy(HardyIndex::new(t[0], t[1], t[2], t[3])?);
        println!("HARDY{:?} = {}", t, format_rational(&v.value));
    }
    for total in [6, 8, 10] {
        let rows = hardy_table(total)?;
        let cmp = compare_with_printed(&rows);
        println!("\ntotal degree {total}: {} sorted tuples", rows.len());
        for c in cmp.iter().filter(|c| c.matches == Some(false)) {
            println!(
                "  {:?}: computed {}, printed {}",
                c.tuple,
                format_rational(&c.computed),
                c.printed.as_deref().unwrap_or("-")
            );
        }
    }
    let sym = permutation_symmetry_scan(10);
    println!(
        "\n{} sorted tuples up to total 10; {} change value under some reordering",
        sym.multisets_checked,
        sym.asymmetric.len()
    );
    Ok(())
}
