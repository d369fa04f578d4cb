use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::OracleError;

fn is_diagonal(q: &DMatrix<f64>, tol: f64) -> bool {
    q.row_iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, v)| i == j || v.abs() <= tol))
}

/// Applies `f` to the spectrum of a symmetric PSD matrix; eigenvalues within
/// `tol` of zero count as zero.
fn spectral_map(q: &DMatrix<f64>, tol: f64, f: impl Fn(f64) -> f64) -> Result<DMatrix<f64>, OracleError> {
    assert!(q.is_square());
    if let Some((row, value)) = q.diagonal().iter().enumerate().find(|(_, v)| **v < -tol) {
        return Err(OracleError::NotPsd { row, value: *value });
    }
    let apply = |v: f64| if v <= tol { 0.0 } else { f(v) };
    if is_diagonal(q, tol) {
        return Ok(DMatrix::from_diagonal(&q.diagonal().map(apply)));
    }
    let eig = SymmetricEigen::new(q.clone());
    if let Some((row, value)) = eig.eigenvalues.iter().enumerate().find(|(_, v)| **v < -tol) {
        return Err(OracleError::NotPsd { row, value: *value });
    }
    let mapped: DVector<f64> = eig.eigenvalues.map(apply);
    Ok(&eig.eigenvectors * DMatrix::from_diagonal(&mapped) * eig.eigenvectors.transpose())
}

/// `Q^{†1/2}`: reciprocal square roots on the range, zero on the kernel.
pub fn pinv_half(q: &DMatrix<f64>, tol: f64) -> Result<DMatrix<f64>, OracleError> {
    spectral_map(q, tol, |v| 1.0 / v.sqrt())
}

/// `Q^{1/2}` with the same kernel as [`pinv_half`].
pub fn sqrt_half(q: &DMatrix<f64>, tol: f64) -> Result<DMatrix<f64>, OracleError> {
    spectral_map(q, tol, f64::sqrt)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_maps_to_zero() {
        let z = DMatrix::<f64>::zeros(4, 4);
        assert_eq!(pinv_half(&z, 1e-9).unwrap(), z);
    }

    #[test]
    fn diagonal_reciprocal_roots_with_zero_rule() {
        let q = DMatrix::from_diagonal(&DVector::from_vec(vec![4.0, 0.0, 1.0]));
        let p = pinv_half(&q, 1e-9).unwrap();
        assert_eq!(p, DMatrix::from_diagonal(&DVector::from_vec(vec![0.5, 0.0, 1.0])));
    }

    #[test]
    fn example1_entry() {
        let q = DMatrix::from_diagonal(&DVector::from_vec(vec![0.75]));
        assert!((pinv_half(&q, 1e-9).unwrap()[(0, 0)] - 1.1547005383792515).abs() < 1e-15);
    }

    #[test]
    fn general_symmetric_input_goes_through_the_spectrum() {
        // Eigenvalues 4 and 0 along (1, 1) and (1, -1).
        let q = DMatrix::from_row_slice(2, 2, &[2.0, 2.0, 2.0, 2.0]);
        let p = pinv_half(&q, 1e-9).unwrap();
        let r = sqrt_half(&q, 1e-9).unwrap();
        for v in p.iter() {
            assert!((v - 0.25).abs() < 1e-12);
        }
        assert!((&r * &r - &q).norm() < 1e-12);
        // Moore-Penrose: P Q P = P after squaring both sides.
        let pp = &p * &p;
        assert!((&pp * &q * &pp - &pp).norm() < 1e-12);
    }

    #[test]
    fn negative_entry_is_rejected() {
        let q = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -0.5]));
        assert_eq!(pinv_half(&q, 1e-9).unwrap_err(), OracleError::NotPsd { row: 1, value: -0.5 });
    }

    #[test]
    fn indefinite_with_nonnegative_diagonal_is_rejected() {
        let q = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(matches!(sqrt_half(&q, 1e-9), Err(OracleError::NotPsd { .. })));
    }
}
