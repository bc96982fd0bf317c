use bandlim::orthopoly::hermite_function;
use bandlim::wkb::{error_envelopes, phase, phase_deviation, wkb_main, wkb_simplified, EnvelopeForm, PhaseParams};

fn grid(a: f64, b: f64, m: usize) -> impl Iterator<Item = f64> {
    let step = (b - a) / (m - 1) as f64;
    (0..m).map(move |i| a + step * i as f64)
}

#[test]
fn main_term_stays_inside_the_half_disk_envelope() {
    for n in (10..=400).step_by(10) {
        let half = 0.5 * PhaseParams::new(n).lambda;
        let env = error_envelopes(n, half, EnvelopeForm::HalfDisk).unwrap();
        for x in grid(-half, half, 201) {
            let err = (hermite_function(n, x).unwrap() - wkb_main(n, x).unwrap()).abs();
            assert!(err <= env.sup_bound, "n = {n}, x = {x}: {err:e} > {:e}", env.sup_bound);
        }
    }
}

#[test]
fn simplified_form_stays_inside_its_envelope() {
    let t = 2.0;
    for n in 8..=400 {
        let env = error_envelopes(n, t, EnvelopeForm::Simplified).unwrap();
        for x in grid(-t, t, 201) {
            let err = (hermite_function(n, x).unwrap() - wkb_simplified(n, x).unwrap()).abs();
            assert!(err <= env.sup_bound, "n = {n}, x = {x}: {err:e} > {:e}", env.sup_bound);
        }
    }
}

#[test]
fn full_envelope_holds_up_to_most_of_the_oscillatory_region() {
    for n in [20usize, 60, 150] {
        let t = 0.9 * PhaseParams::new(n).lambda;
        let env = error_envelopes(n, t, EnvelopeForm::Full).unwrap();
        for x in grid(-t, t, 301) {
            let err = (hermite_function(n, x).unwrap() - wkb_main(n, x).unwrap()).abs();
            assert!(err <= env.sup_bound, "n = {n}, x = {x}");
        }
    }
}

#[test]
fn phase_is_odd_and_reaches_a_quarter_circle_area() {
    for n in [0usize, 5, 40] {
        let lambda = PhaseParams::new(n).lambda;
        let end = phase(n, lambda).unwrap();
        assert!((end - std::f64::consts::PI * lambda * lambda / 4.0).abs() < 1e-12 * end.max(1.0));
        for x in grid(0.0, lambda, 17) {
            assert_eq!(phase(n, -x).unwrap(), -phase(n, x).unwrap());
            assert!(phase_deviation(n, x).unwrap() >= -1e-12);
        }
    }
}

#[test]
fn envelopes_refuse_points_outside_their_regime() {
    let lambda = PhaseParams::new(10).lambda;
    assert!(error_envelopes(10, lambda, EnvelopeForm::Full).is_err());
    assert!(error_envelopes(10, 0.6 * lambda, EnvelopeForm::HalfDisk).is_err());
    assert!(wkb_main(10, lambda).is_err());
    assert!(wkb_simplified(1, 0.0).is_err());
}
