use hardyz::survey::{figure_data, moment_check, sign_measure, zero_pairing, FigureTable};

#[test]
fn prevailing_signs_on_500_530() {
    // (k, l, expected sign of the majority)
    for (k, l) in [(0, 2), (4, 6), (3, 7)] {
        let coarse = sign_measure(k, l, 500.0, 530.0, 0.02).unwrap();
        let fine = sign_measure(k, l, 500.0, 530.0, 0.01).unwrap();
        assert!(coarse.excluded.is_empty());
        assert!(fine.fraction_predicted_sign() > 0.5, "({k},{l}): {}", fine.fraction_predicted_sign());
        let drift = (coarse.fraction_negative() - fine.fraction_negative()).abs();
        assert!(drift < 0.01, "({k},{l}) drift {drift}");
    }
    let r = sign_measure(0, 2, 500.0, 530.0, 0.01).unwrap();
    assert!(r.fraction_negative() > 0.7);
}

#[test]
fn squares_and_long_interval() {
    let sq = sign_measure(2, 2, 500.0, 530.0, 0.01).unwrap();
    assert_eq!(sq.fraction_negative(), 0.0);
    let r = sign_measure(0, 2, 1000.0, 2000.0, 0.02).unwrap();
    assert!(r.fraction_negative() > 3.0 / 25.0);
    assert_eq!(r.measure_negative + r.measure_positive + r.excluded_measure(), 1000.0);
}

#[test]
fn moment_signs_at_2000() {
    let a = moment_check(0, 2, 2000.0).unwrap();
    assert!(a.numeric_integral < 0.0);
    assert!((0.3..=3.0).contains(&a.ratio), "{}", a.ratio);
    let b = moment_check(0, 0, 2000.0).unwrap();
    assert!(b.numeric_integral > 0.0);
    assert!((0.3..=3.0).contains(&b.ratio), "{}", b.ratio);
    // the clipped head is small next to the leading term
    assert!(b.head_integral.abs() < 0.05 * b.leading_term);
    assert!(moment_check(1, 0, 2000.0).is_err());
}

#[test]
fn zero_pairing_on_500_530() {
    let r = zero_pairing(0, 2, 500.0, 530.0).unwrap();
    let median = r.median_distance.unwrap();
    assert!(median < r.mean_spacing / 4.0, "{median} vs {}", r.mean_spacing);
    // spacing near 515 is about 1.43, so roughly twenty zeros of Z
    assert!((18..=24).contains(&r.zeros_k.len()), "{}", r.zeros_k.len());

    let same = zero_pairing(5, 5, 500.0, 530.0).unwrap();
    assert!(same.pairs.iter().all(|p| p.distance == 0.0));
    assert!(same.unpaired_k.is_empty() && same.unpaired_l.is_empty());

    // exploratory: reported, no threshold
    for (k, l) in [(3, 7), (4, 6)] {
        let r = zero_pairing(k, l, 500.0, 530.0).unwrap();
        eprintln!("({k},{l}): {} pairs, median {:?}", r.pairs.len(), r.median_distance);
    }
}

#[test]
fn figure_tables() {
    let t: FigureTable = figure_data(2, 500.0, 530.0, 0.01).unwrap();
    assert_eq!((t.k, t.l), (0, 2));
    assert_eq!(t.rows.len(), 3001);
    assert_eq!(t.rows.last().unwrap().t, 530.0);
    let negative = t.rows.iter().filter(|r| r.product < 0.0).count() as f64 / t.rows.len() as f64;
    assert!(negative > 0.7);
    let t = figure_data(3, 500.0, 501.0, 0.01).unwrap();
    assert_eq!((t.k, t.l), (4, 6));
}
