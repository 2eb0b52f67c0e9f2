//! Dense complex linear algebra on Hermitian matrices and density matrices.
//!
//! Matrices are stored as `nalgebra::DMatrix<Complex64>`. [`HermitianMatrix`]
//! checks Hermiticity once at construction and stores an exactly Hermitian
//! copy, so downstream eigensolvers never see asymmetric round-off.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Absolute Hermiticity tolerance, scaled by the largest entry for large matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues in `[-PSD_TOL, 0)` are treated as round-off and clamped to zero.
pub const PSD_TOL: f64 = 1e-10;
/// Allowed deviation of a density matrix trace from one.
pub const TRACE_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A dense complex square matrix equal to its conjugate transpose.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    m: CMatrix,
}

impl HermitianMatrix {
    /// Validates Hermiticity within [`HERMITIAN_TOL`] (relative to the largest
    /// entry when that exceeds one) and stores the exact Hermitian part.
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare(m.nrows(), m.ncols()));
        }
        if m.nrows() == 0 {
            return Err(Error::EmptyMatrix);
        }
        let n = m.nrows();
        let mut scale = 1.0f64;
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                scale = scale.max(m[(i, j)].norm());
                if j >= i {
                    dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
                }
            }
        }
        if dev > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self::hermitian_part(m))
    }

    /// Keeps `(m + m†) / 2` without validation; for internal results that are
    /// Hermitian in exact arithmetic.
    pub(crate) fn hermitian_part(m: CMatrix) -> Self {
        let mut h = &m + m.adjoint();
        h.scale_mut(0.5);
        Self { m: h }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let n = diag.len();
        Ok(Self {
            m: CMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    Complex64::new(diag[i], 0.0)
                } else {
                    ZERO
                }
            }),
        })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            m: CMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: CMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_inner(self) -> CMatrix {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    /// Real part of the trace (the imaginary part vanishes for Hermitian input).
    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.norm()
    }

    /// Entrywise transpose in the computational basis (equal to the conjugate).
    pub fn transpose(&self) -> Self {
        Self {
            m: self.m.transpose(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            m: self.m.scale(factor),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_dim(self.dim(), other.dim())?;
        Ok(Self {
            m: &self.m + &other.m,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same_dim(self.dim(), other.dim())?;
        Ok(Self {
            m: &self.m - &other.m,
        })
    }

    /// `A B A` stays Hermitian.
    pub fn sandwich(&self, inner: &Self) -> Result<Self> {
        check_same_dim(self.dim(), inner.dim())?;
        Ok(Self::hermitian_part(&self.m * &inner.m * &self.m))
    }

    /// `U M U†` for an arbitrary square `U`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<Self> {
        check_same_dim(self.dim(), u.nrows())?;
        check_same_dim(self.dim(), u.ncols())?;
        Ok(Self::hermitian_part(u * &self.m * u.adjoint()))
    }

    /// Real part of `tr(self · other)`.
    pub fn trace_product(&self, other: &Self) -> f64 {
        // tr(AB) = sum_ij A_ij B_ji
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.m[(i, j)] * other.m[(j, i)]).re;
            }
        }
        acc
    }

    /// Eigenvalues in ascending order with matching orthonormal eigenvectors (as columns).
    pub fn eigh(&self) -> (Vec<f64>, CMatrix) {
        let eig = self.m.clone().symmetric_eigen();
        let n = self.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
        (values, vectors)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self.m.clone().symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues().last().expect("dim >= 1")
    }

    /// `f` applied to the spectrum: `V f(Λ) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Self {
        let (values, vectors) = self.eigh();
        Self::from_spectrum(values.into_iter().map(f), &vectors)
    }

    /// `V diag(values) V†`.
    pub(crate) fn from_spectrum(values: impl IntoIterator<Item = f64>, vectors: &CMatrix) -> Self {
        let mut scaled = vectors.clone();
        for (j, lam) in values.into_iter().enumerate() {
            scaled.column_mut(j).scale_mut(lam);
        }
        Self::hermitian_part(scaled * vectors.adjoint())
    }

    /// Bit pattern of the entries; used as an exact cache key.
    pub(crate) fn content_key(&self) -> Vec<u64> {
        self.m
            .iter()
            .flat_map(|z| [z.re.to_bits(), z.im.to_bits()])
            .collect()
    }
}

pub(crate) fn check_same_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// A positive semidefinite Hermitian matrix of unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    h: HermitianMatrix,
}

impl DensityMatrix {
    /// Validates trace one within [`TRACE_TOL`] and minimum eigenvalue at least
    /// `-PSD_TOL`.
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let tr = h.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        let min = h.min_eigenvalue();
        if min < -PSD_TOL {
            return Err(Error::NotPsd(min));
        }
        Ok(Self { h })
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(m)?)
    }

    /// Divides a PSD matrix by its trace.
    pub fn normalized(h: HermitianMatrix) -> Result<Self> {
        let tr = h.trace();
        if !(tr > 0.0) || !tr.is_finite() {
            return Err(Error::InvalidTrace(tr));
        }
        Self::new(h.scale(1.0 / tr))
    }

    /// The pure state `|ψ⟩⟨ψ|`; `psi` need not be normalized.
    pub fn pure(psi: &DVector<Complex64>) -> Result<Self> {
        let norm = psi.norm();
        if psi.is_empty() || !(norm > 0.0) {
            return Err(Error::InvalidParameter("zero state vector".into()));
        }
        let v = psi.unscale(norm);
        Self::new(HermitianMatrix::hermitian_part(&v * v.adjoint()))
    }

    /// The computational basis state `|k⟩⟨k|`.
    pub fn basis_state(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut diag = vec![0.0; dim];
        diag[k] = 1.0;
        Ok(Self {
            h: HermitianMatrix::from_real_diagonal(&diag)?,
        })
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(Self {
            h: HermitianMatrix::identity(dim).scale(1.0 / dim as f64),
        })
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.h
    }

    pub fn matrix(&self) -> &CMatrix {
        self.h.matrix()
    }

    pub fn into_hermitian(self) -> HermitianMatrix {
        self.h
    }

    pub fn transpose(&self) -> Self {
        Self {
            h: self.h.transpose(),
        }
    }

    /// `tr(ρ A)`.
    pub fn expectation(&self, a: &HermitianMatrix) -> f64 {
        self.h.trace_product(a)
    }

    /// True when the largest eigenvalue is at least `1 - tol`.
    pub fn is_pure(&self, tol: f64) -> bool {
        self.h.max_eigenvalue() >= 1.0 - tol
    }
}

/// A nonempty ordered list of observables sharing one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservableSet {
    observables: Vec<HermitianMatrix>,
}

impl ObservableSet {
    pub fn new(observables: Vec<HermitianMatrix>) -> Result<Self> {
        let first = observables.first().ok_or(Error::EmptyObservableSet)?;
        let dim = first.dim();
        for a in &observables {
            check_same_dim(dim, a.dim())?;
        }
        Ok(Self { observables })
    }

    pub fn dim(&self) -> usize {
        self.observables[0].dim()
    }

    pub fn len(&self) -> usize {
        self.observables.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> std::slice::Iter<'_, HermitianMatrix> {
        self.observables.iter()
    }

    pub fn as_slice(&self) -> &[HermitianMatrix] {
        &self.observables
    }

    /// `Σ_j A_j²`.
    pub fn sum_of_squares(&self) -> HermitianMatrix {
        let n = self.dim();
        let mut acc = CMatrix::zeros(n, n);
        for a in &self.observables {
            acc += a.matrix() * a.matrix();
        }
        HermitianMatrix::hermitian_part(acc)
    }
}

impl<'a> IntoIterator for &'a ObservableSet {
    type Item = &'a HermitianMatrix;
    type IntoIter = std::slice::Iter<'a, HermitianMatrix>;

    fn into_iter(self) -> Self::IntoIter {
        self.observables.iter()
    }
}

/// Which tensor factor survives a partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Kronecker product with index convention
/// `(i·db + p, j·db + q) ↦ a[i][j]·b[p][q]`.
pub fn kron(a: &HermitianMatrix, b: &HermitianMatrix) -> HermitianMatrix {
    HermitianMatrix {
        m: kron_dense(a.matrix(), b.matrix()),
    }
}

pub(crate) fn kron_dense(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    CMatrix::from_fn(ar * br, ac * bc, |r, c| {
        a[(r / br, c / bc)] * b[(r % br, c % bc)]
    })
}

/// Partial trace of a matrix on `C^d1 ⊗ C^d2`.
///
/// `Keep::First` traces out the second factor and returns a `d1×d1` matrix;
/// `Keep::Second` traces out the first factor and returns `d2×d2`.
pub fn partial_trace(m: &HermitianMatrix, keep: Keep, dims: (usize, usize)) -> Result<HermitianMatrix> {
    Ok(HermitianMatrix {
        m: partial_trace_dense(m.matrix(), keep, dims)?,
    })
}

pub(crate) fn partial_trace_dense(m: &CMatrix, keep: Keep, (d1, d2): (usize, usize)) -> Result<CMatrix> {
    check_same_dim(d1 * d2, m.nrows())?;
    check_same_dim(m.nrows(), m.ncols())?;
    Ok(match keep {
        Keep::First => CMatrix::from_fn(d1, d1, |i, j| {
            (0..d2).map(|p| m[(i * d2 + p, j * d2 + p)]).sum()
        }),
        Keep::Second => CMatrix::from_fn(d2, d2, |p, q| {
            (0..d1).map(|i| m[(i * d2 + p, i * d2 + q)]).sum()
        }),
    })
}

/// The unique PSD square root, via the spectral decomposition.
///
/// Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero; anything more negative
/// is an error.
pub fn sqrt_psd(m: &HermitianMatrix) -> Result<HermitianMatrix> {
    let (values, vectors) = m.eigh();
    if values[0] < -PSD_TOL {
        return Err(Error::NotPsd(values[0]));
    }
    Ok(HermitianMatrix::from_spectrum(
        values.into_iter().map(|x| x.max(0.0).sqrt()),
        &vectors,
    ))
}

/// Hilbert–Schmidt inner product `tr(a† b)`.
pub fn hs_inner(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<Complex64> {
    check_same_dim(a.dim(), b.dim())?;
    Ok(a
        .matrix()
        .iter()
        .zip(b.matrix().iter())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Orthonormal Hermitian basis of the `dim×dim` matrices.
///
/// Ordering: diagonal units `E_kk`, then `(E_km + E_mk)/√2` for `k < m`, then
/// `i(E_mk − E_km)/√2` for `k < m`, with `k` the outer and `m` the inner index.
pub fn hermitian_basis(dim: usize) -> Vec<HermitianMatrix> {
    let mut basis = Vec::with_capacity(dim * dim);
    for k in 0..dim {
        let mut m = CMatrix::zeros(dim, dim);
        m[(k, k)] = ONE;
        basis.push(HermitianMatrix { m });
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for k in 0..dim {
        for l in k + 1..dim {
            let mut m = CMatrix::zeros(dim, dim);
            m[(k, l)] = Complex64::new(r, 0.0);
            m[(l, k)] = Complex64::new(r, 0.0);
            basis.push(HermitianMatrix { m });
        }
    }
    for k in 0..dim {
        for l in k + 1..dim {
            let mut m = CMatrix::zeros(dim, dim);
            m[(k, l)] = -I * r;
            m[(l, k)] = I * r;
            basis.push(HermitianMatrix { m });
        }
    }
    basis
}

/// Pauli matrix `σ_j`, with `σ_0 = I`.
pub fn pauli(j: usize) -> HermitianMatrix {
    let m = match j {
        0 => CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ONE]),
        1 => CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        2 => CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        3 => CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        _ => panic!("Pauli index {j} out of range 0..=3"),
    };
    HermitianMatrix { m }
}

/// `Π_k σ_{j_k}` as a Kronecker product over the index list.
pub fn pauli_string(indices: &[usize]) -> HermitianMatrix {
    indices
        .iter()
        .fold(HermitianMatrix::identity(1), |acc, &j| kron(&acc, &pauli(j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[ONE, ONE, ZERO, ONE]);
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NotHermitian(_))));
        let rect = CMatrix::zeros(2, 3);
        assert!(matches!(HermitianMatrix::new(rect), Err(Error::NotSquare(2, 3))));
        assert!(matches!(HermitianMatrix::new(CMatrix::zeros(0, 0)), Err(Error::EmptyMatrix)));
    }

    #[test]
    fn kron_identities_and_paulis() {
        let i4 = kron(&pauli(0), &pauli(0));
        assert_eq!(i4.matrix(), &CMatrix::identity(4, 4));

        let z_i = kron(&pauli(3), &pauli(0));
        let expected = HermitianMatrix::from_real_diagonal(&[1.0, 1.0, -1.0, -1.0]).unwrap();
        assert_eq!(z_i, expected);

        // Hand expansion of the 2x2 blocks: σ1 ⊗ σ1 has ones on the anti-diagonal.
        let xx = kron(&pauli(1), &pauli(1));
        let anti = CMatrix::from_fn(4, 4, |i, j| if i + j == 3 { ONE } else { ZERO });
        assert_eq!(xx.matrix(), &anti);
    }

    #[test]
    fn partial_trace_examples() {
        let a = pauli(1);
        let b = HermitianMatrix::from_real_diagonal(&[2.0, 5.0]).unwrap();
        let ab = kron(&a, &b);
        let first = partial_trace(&ab, Keep::First, (2, 2)).unwrap();
        assert!(max_abs_diff(first.matrix(), a.scale(7.0).matrix()) < 1e-15);

        let i4 = HermitianMatrix::identity(4);
        let second = partial_trace(&i4, Keep::Second, (2, 2)).unwrap();
        assert_eq!(second, HermitianMatrix::identity(2).scale(2.0));

        assert!(matches!(
            partial_trace(&i4, Keep::First, (3, 2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn partial_trace_of_tensor_coupling_matches_double_loop() {
        let omega = DensityMatrix::from_matrix(CMatrix::from_row_slice(
            2,
            2,
            &[c(0.7, 0.0), c(0.1, -0.2), c(0.1, 0.2), c(0.3, 0.0)],
        ))
        .unwrap();
        let rho = DensityMatrix::from_matrix(CMatrix::from_row_slice(
            2,
            2,
            &[c(0.4, 0.0), c(-0.2, 0.1), c(-0.2, -0.1), c(0.6, 0.0)],
        ))
        .unwrap();
        let rho_t = rho.transpose();
        let pi = kron(omega.as_hermitian(), rho_t.as_hermitian());
        // explicit double loop over the kron index convention
        let mut oracle = CMatrix::zeros(2, 2);
        for p in 0..2 {
            for q in 0..2 {
                for i in 0..2 {
                    oracle[(p, q)] += pi.get(i * 2 + p, i * 2 + q);
                }
            }
        }
        let pt = partial_trace(&pi, Keep::Second, (2, 2)).unwrap();
        assert!(max_abs_diff(pt.matrix(), &oracle) < 1e-15);
        assert!(max_abs_diff(pt.matrix(), rho_t.matrix()) < 1e-15);
    }

    #[test]
    fn sqrt_examples() {
        let i3 = HermitianMatrix::identity(3);
        assert!(max_abs_diff(sqrt_psd(&i3).unwrap().matrix(), i3.matrix()) < 1e-14);

        let d = HermitianMatrix::from_real_diagonal(&[4.0, 9.0]).unwrap();
        let s = sqrt_psd(&d).unwrap();
        let expected = HermitianMatrix::from_real_diagonal(&[2.0, 3.0]).unwrap();
        assert!(max_abs_diff(s.matrix(), expected.matrix()) < 1e-14);

        // ½(I + ½σ1): eigenvalues ¾, ¼ on (1, ±1)/√2.
        let rho = HermitianMatrix::identity(2)
            .add(&pauli(1).scale(0.5))
            .unwrap()
            .scale(0.5);
        let s = sqrt_psd(&rho).unwrap();
        let (vals, _) = s.eigh();
        assert_abs_diff_eq!(vals[0], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(vals[1], 3f64.sqrt() / 2.0, epsilon = 1e-14);
        let plus = DVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]).unscale(2f64.sqrt());
        let image = s.matrix() * &plus;
        assert!((image - plus.scale(3f64.sqrt() / 2.0)).norm() < 1e-14);
    }

    #[test]
    fn sqrt_clamps_round_off_and_rejects_negative() {
        let tiny = HermitianMatrix::from_real_diagonal(&[-1e-12, 1.0]).unwrap();
        let s = sqrt_psd(&tiny).unwrap();
        assert_eq!(s.get(0, 0).re, 0.0);
        let neg = HermitianMatrix::from_real_diagonal(&[-1e-6, 1.0]).unwrap();
        assert!(matches!(sqrt_psd(&neg), Err(Error::NotPsd(_))));
    }

    #[test]
    fn hs_inner_examples() {
        let i2 = pauli(0);
        assert_eq!(hs_inner(&i2, &i2).unwrap(), c(2.0, 0.0));
        assert_eq!(hs_inner(&pauli(1), &pauli(2)).unwrap(), c(0.0, 0.0));
        for j in 1..=3 {
            assert_eq!(hs_inner(&pauli(j), &pauli(j)).unwrap(), c(2.0, 0.0));
        }
        assert!(hs_inner(&i2, &HermitianMatrix::identity(3)).is_err());
    }

    #[test]
    fn hermitian_basis_layout() {
        let b2 = hermitian_basis(2);
        assert_eq!(b2.len(), 4);
        assert_eq!(b2[0], HermitianMatrix::from_real_diagonal(&[1.0, 0.0]).unwrap());
        assert_eq!(hermitian_basis(3).len(), 9);
        let b3 = hermitian_basis(3);
        for (i, a) in b3.iter().enumerate() {
            for (j, b) in b3.iter().enumerate() {
                let ip = hs_inner(a, b).unwrap();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - c(expected, 0.0)).norm() < 1e-15);
            }
        }
        // antisymmetric element for (k, m) = (0, 1): -i/√2 above the diagonal
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(b2[3].get(0, 1).im, -r);
        assert_abs_diff_eq!(b2[3].get(1, 0).im, r);
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(HermitianMatrix::identity(2)).is_err());
        let not_psd = HermitianMatrix::from_real_diagonal(&[1.5, -0.5]).unwrap();
        assert!(matches!(DensityMatrix::new(not_psd), Err(Error::NotPsd(_))));
        let mixed = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(!mixed.is_pure(1e-9));
        assert!(DensityMatrix::basis_state(3, 2).unwrap().is_pure(1e-9));
    }

    #[test]
    fn observable_set_requires_uniform_dim() {
        assert!(matches!(ObservableSet::new(vec![]), Err(Error::EmptyObservableSet)));
        let mixed = vec![pauli(1), HermitianMatrix::identity(3)];
        assert!(ObservableSet::new(mixed).is_err());
    }
}
