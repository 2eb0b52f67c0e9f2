use qwass_core::complexity::{
    subadditivity_report, tensor, wasserstein_complexity_with, ChannelSpec, ComplexityOptions,
};
use qwass_core::cost::pauli_product_set;
use qwass_core::linalg::pauli;
use qwass_core::random::{gaussian_matrix, RngStream};
use qwass_core::SolverConfig;

#[test]
fn identity_pair_has_zero_slack() {
    let id = ChannelSpec::identity(2).unwrap();
    let opts = ComplexityOptions {
        restarts: 3,
        ..ComplexityOptions::default()
    };
    let r = subadditivity_report(&id, &id, &pauli_product_set(1), &SolverConfig::default(), &opts).unwrap();
    assert!(r.slack.abs() <= 1e-6, "{r:?}");
    assert!(!r.warning);
}

#[test]
fn unitary_followed_by_its_inverse() {
    let mut rng = RngStream::new(41, 0).rng();
    let u = gaussian_matrix(2, 2, &mut rng).qr().q();
    let phi = ChannelSpec::unitary(u.clone()).unwrap();
    let inv = ChannelSpec::unitary(u.adjoint()).unwrap();
    let opts = ComplexityOptions {
        restarts: 4,
        ..ComplexityOptions::default()
    };
    // U†U is the identity only up to rounding; the tight solver keeps the
    // square-rooted noise of the composed channel small.
    let r = subadditivity_report(&phi, &inv, &pauli_product_set(1), &SolverConfig::tight(), &opts).unwrap();
    assert!(r.composed <= 1e-3, "{r:?}");
    assert!((r.slack - (r.first + r.second - r.composed)).abs() < 1e-12);
    assert!(r.slack >= 0.0);
}

#[test]
fn tensor_subadditivity_on_two_qubits() {
    let cfg = SolverConfig::default();
    let a = pauli_product_set(2);
    let opts = ComplexityOptions {
        restarts: 3,
        seed: 42,
        max_evals: Some(400),
    };
    let id = ChannelSpec::identity(2).unwrap();
    let phi1 = ChannelSpec::unitary(pauli(1).into_inner()).unwrap();
    let phi2 = ChannelSpec::dephasing(0.5).unwrap();
    let joint = wasserstein_complexity_with(&tensor(&phi1, &phi2).unwrap(), &a, &cfg, &opts).unwrap().value;
    let left = wasserstein_complexity_with(&tensor(&phi1, &id).unwrap(), &a, &cfg, &opts).unwrap().value;
    let right = wasserstein_complexity_with(&tensor(&id, &phi2).unwrap(), &a, &cfg, &opts).unwrap().value;
    assert!(left + right - joint >= -5e-4, "{joint} > {left} + {right}");
}
