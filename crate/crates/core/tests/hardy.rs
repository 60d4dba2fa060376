use hardyz::exactq::{format_rational, rat};
use hardyz::hardy::{hardy, ordered_tuples, permutation_symmetry_scan, HardyIndex};

fn h(t: [u8; 4]) -> hardyz::exactq::Rational {
    hardy(HardyIndex::new(t[0], t[1], t[2], t[3]).unwrap()).value
}

#[test]
fn pair_symmetries_up_to_eight() {
    for total in 0..=8 {
        for idx in ordered_tuples(total) {
            let [k, l, m, n] = idx.as_array();
            let v = h([k, l, m, n]);
            assert_eq!(v, h([l, k, m, n]), "swap k, l at {:?}", [k, l, m, n]);
            assert_eq!(v, h([k, l, n, m]), "swap m, n at {:?}", [k, l, m, n]);
            if total % 2 == 0 {
                assert_eq!(v, h([m, n, k, l]), "swap pairs at {:?}", [k, l, m, n]);
            }
        }
    }
}

#[test]
fn full_permutation_symmetry_is_reported() {
    // only the pair symmetries follow from the integral; the rest is observed
    let r = permutation_symmetry_scan(10);
    eprintln!(
        "{} sorted tuples up to total 10, {} not invariant under all reorderings: {:?}",
        r.multisets_checked,
        r.asymmetric.len(),
        r.asymmetric
    );
    assert_eq!(r.max_total, 10);
    assert!(r.multisets_checked > 40);
}

#[test]
fn small_values() {
    assert_eq!(h([0, 0, 0, 0]), rat(1, 2));
    assert_eq!(h([1, 0, 0, 0]), rat(0, 1));
    assert_eq!(format_rational(&h([6, 0, 0, 0])), "-1/2688");
}
