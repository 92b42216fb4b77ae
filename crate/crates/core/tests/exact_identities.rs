use apery8::etamod::{self, EtaQuotient};
use apery8::exactq::QSeries;
use apery8::seqs::{self, SeqTable};
use rug::{Integer, Rational};

#[test]
fn t_and_y_heads() {
    let t = etamod::eta_qexp(&EtaQuotient::level8_t(), 8).unwrap();
    let y = etamod::eta_qexp(&EtaQuotient::level8_y(), 8).unwrap();
    assert_eq!(
        t,
        QSeries::from_integers(1, &[1i64, -8, 28, -64, 142, -352, 792], 8)
    );
    assert_eq!(
        y,
        QSeries::from_integers(0, &[1i64, 4, 8, 16, 24, 24, 32, 32], 8)
    );
}

#[test]
fn exact_suite_at_order_60() {
    for r in [
        etamod::check_wronskian(60).unwrap(),
        etamod::check_phi(60).unwrap(),
        etamod::check_parametrizations(60).unwrap(),
        etamod::check_g8_routes(60),
        etamod::check_cusp_orders(),
        etamod::check_sturm(),
    ] {
        assert!(r.passed, "{r:?}");
    }
    let table = SeqTable::build(61).unwrap();
    assert!(seqs::check_theta_ode(&table, 60).unwrap().passed);
    assert!(seqs::check_ordinary_ode(&table, 60).unwrap().passed);
}

#[test]
fn a_of_t_is_y() {
    let order = 30;
    let table = SeqTable::build(order as usize).unwrap();
    let t = etamod::eta_qexp(&EtaQuotient::level8_t(), order).unwrap();
    let y = etamod::eta_qexp(&EtaQuotient::level8_y(), order).unwrap();
    let a_of_t = QSeries::compose(&table.a_series(order), &t).unwrap();
    assert_eq!(a_of_t.first_mismatch(&y), None);
}

#[test]
fn b_of_t_is_e_times_y() {
    let order = 30;
    let table = SeqTable::build(order as usize).unwrap();
    let t = etamod::eta_qexp(&EtaQuotient::level8_t(), order).unwrap();
    let y = etamod::eta_qexp(&EtaQuotient::level8_y(), order).unwrap();
    let lhs = QSeries::compose(&table.b_series(order), &t).unwrap();
    let rhs = &etamod::eichler_e(order) * &y;
    assert_eq!(lhs.first_mismatch(&rhs), None);
    assert_eq!(
        lhs.dense(1, 5),
        [(1, 1), (5, 2), (82, 27), (413, 54)]
            .map(Rational::from)
            .to_vec()
    );
}

#[test]
fn g8_coefficients() {
    let expected = [1i64, -12, 28, -32, 126, -336, 344, -256];
    for (n, e) in expected.iter().enumerate() {
        assert_eq!(etamod::g8_coefficient(n as u64 + 1), *e);
    }
}

#[test]
fn sequences_deep() {
    let table = SeqTable::build(300).unwrap();
    assert_eq!(table.s()[5], 145504);
    assert_eq!(table.b()[4], Rational::from((121205, 54)));
    assert!(table.scaled_b().iter().all(|q| *q > 0));
    assert_eq!(table.s()[300], seqs::s_binomial(300));
    assert_ne!(table.s()[300], Integer::new());
}
