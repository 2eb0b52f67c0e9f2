//! Quadratic cost operators `C = Σ_j (A_j ⊗ I − I ⊗ B_j)²` on the doubled space.
//!
//! The first tensor factor carries the target state ω, the second the dual
//! copy that carries ρᵀ. With `use_transpose` set, `B_j = A_jᵀ`; otherwise
//! `B_j = A_j` and the second marginal is ρ itself.

use crate::linalg::{kron_dense, pauli, pauli_string, CMatrix, HermitianMatrix, ObservableSet};

/// A cost operator together with the observables that generated it.
#[derive(Clone, Debug)]
pub struct CostOperator {
    dim: usize,
    matrix: HermitianMatrix,
    source: ObservableSet,
    transposed: bool,
}

impl CostOperator {
    /// Single-system dimension; the operator itself acts on `dim²`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn observables(&self) -> &ObservableSet {
        &self.source
    }

    pub fn is_transposed(&self) -> bool {
        self.transposed
    }
}

/// Builds `Σ_j (A_j ⊗ I − I ⊗ B_j)²`.
pub fn build_cost(a: &ObservableSet, use_transpose: bool) -> CostOperator {
    let d = a.dim();
    let id = CMatrix::identity(d, d);
    let mut acc = CMatrix::zeros(d * d, d * d);
    for obs in a {
        let b = if use_transpose {
            obs.matrix().transpose()
        } else {
            obs.matrix().clone()
        };
        let k = kron_dense(obs.matrix(), &id) - kron_dense(&id, &b);
        acc += &k * &k;
    }
    CostOperator {
        dim: d,
        matrix: HermitianMatrix::hermitian_part(acc),
        source: a.clone(),
        transposed: use_transpose,
    }
}

/// The qubit cost built from all three Pauli matrices, transposed convention.
pub fn symmetric_cost() -> CostOperator {
    let paulis = ObservableSet::new(vec![pauli(1), pauli(2), pauli(3)]).expect("nonempty");
    build_cost(&paulis, true)
}

/// All `4^n − 1` Pauli strings on `n` qubits except the identity, in
/// lexicographic order of the index tuple.
pub fn pauli_product_set(num_qubits: usize) -> ObservableSet {
    assert!(num_qubits >= 1, "need at least one qubit");
    let total = 4usize.pow(num_qubits as u32);
    let observables = (1..total)
        .map(|code| {
            let indices: Vec<usize> = (0..num_qubits)
                .rev()
                .map(|pos| (code / 4usize.pow(pos as u32)) % 4)
                .collect();
            pauli_string(&indices)
        })
        .collect();
    ObservableSet::new(observables).expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hs_inner, kron};
    use crate::random::{random_observable_set, RngStream};
    use nalgebra::DVector;
    use num_complex::Complex64;

    fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn sigma_z_cost_is_diagonal() {
        // σ3 ⊗ I − I ⊗ σ3 = diag(0, 2, −2, 0)
        let a = ObservableSet::new(vec![pauli(3)]).unwrap();
        let c = build_cost(&a, true);
        let expected = HermitianMatrix::from_real_diagonal(&[0.0, 4.0, 4.0, 0.0]).unwrap();
        assert!(max_abs_diff(c.matrix().matrix(), expected.matrix()) < 1e-15);
    }

    #[test]
    fn identity_observable_costs_nothing() {
        let a = ObservableSet::new(vec![HermitianMatrix::identity(3)]).unwrap();
        let c = build_cost(&a, true);
        assert!(c.matrix().frobenius_norm() == 0.0);
    }

    #[test]
    fn symmetric_cost_spectrum_and_kernel() {
        let c = symmetric_cost();
        let ev = c.matrix().eigenvalues();
        for (got, want) in ev.iter().zip([0.0, 8.0, 8.0, 8.0]) {
            assert!((got - want).abs() < 1e-12, "{ev:?}");
        }
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let v0 = DVector::from_vec(vec![
            Complex64::new(r, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(r, 0.0),
        ]);
        assert!((c.matrix().matrix() * &v0).norm() < 1e-14);
        let built = build_cost(&ObservableSet::new(vec![pauli(1), pauli(2), pauli(3)]).unwrap(), true);
        assert_eq!(built.matrix(), c.matrix());
    }

    #[test]
    fn symmetric_cost_is_unitary_invariant() {
        let c = symmetric_cost();
        let mut rng = RngStream::new(99, 0).rng();
        for _ in 0..100 {
            let g = crate::random::gaussian_matrix(2, 2, &mut rng);
            let u = g.qr().q();
            // U ⊗ (Uᵀ)* = U ⊗ conj(U)
            let big = kron_dense(&u, &u.map(|z| z.conj()));
            let rotated = c.matrix().conjugate_by(&big).unwrap();
            assert!(max_abs_diff(rotated.matrix(), c.matrix().matrix()) < 1e-10);
        }
    }

    #[test]
    fn loewner_bound_for_admissible_x() {
        // C_s ⪰ X ⊗ I − I ⊗ Xᵀ whenever −4I ⪯ X ⪯ 4I.
        let c = symmetric_cost();
        let mut rng = RngStream::new(17, 0).rng();
        let id = HermitianMatrix::identity(2);
        for _ in 0..200 {
            let h = random_observable_set(2, 1, &mut rng).unwrap().as_slice()[0].clone();
            let (vals, _) = h.eigh();
            let spread = vals[0].abs().max(vals[1].abs());
            let x = h.scale(4.0 / spread);
            let lin = kron(&x, &id).sub(&kron(&id, &x.transpose())).unwrap();
            let gap = c.matrix().sub(&lin).unwrap();
            assert!(gap.min_eigenvalue() >= -1e-9);
        }
    }

    #[test]
    fn random_costs_are_psd() {
        let mut rng = RngStream::new(3, 0).rng();
        for i in 0..500 {
            let dim = 2 + i % 3;
            let k = 1 + i % 4;
            let a = random_observable_set(dim, k, &mut rng).unwrap();
            for transpose in [true, false] {
                let c = build_cost(&a, transpose);
                assert_eq!(c.matrix().dim(), dim * dim);
                let min = c.matrix().min_eigenvalue();
                assert!(min >= -1e-9, "min eigenvalue {min}");
            }
        }
    }

    #[test]
    fn pauli_products() {
        let one = pauli_product_set(1);
        assert_eq!(one.as_slice(), &[pauli(1), pauli(2), pauli(3)]);
        let two = pauli_product_set(2);
        assert_eq!(two.len(), 15);
        assert_eq!(two.as_slice()[0], kron(&pauli(0), &pauli(1)));
        assert_eq!(two.as_slice()[14], kron(&pauli(3), &pauli(3)));
        for p in two.iter() {
            let sq = hs_inner(p, p).unwrap();
            assert!((sq.re - 4.0).abs() < 1e-14 && sq.im.abs() < 1e-14);
        }
    }
}
