use crate::truncation::{build_truncation, WeightSource};
use crate::OracleError;

const MAX_ITERATIONS: usize = 50_000;
const RELATIVE_ACCURACY: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormPoint {
    pub half_width: usize,
    pub norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Largest singular value of the shift `S e_i = s_i e_{i+1}` by power
/// iteration on `SᵀS`.
pub fn power_norm(sub: &[f64]) -> (f64, usize, bool) {
    let m = sub.len();
    if m == 0 || sub.iter().all(|s| *s == 0.0) {
        return (0.0, 0, true);
    }
    let mut v = vec![1.0 / (m as f64).sqrt(); m];
    let mut w = vec![0.0; m];
    let mut lambda = 0.0;
    for it in 1..=MAX_ITERATIONS {
        // S v lands one slot down; Sᵀ brings it back with the same weight.
        for i in 0..m {
            w[i] = sub[i] * sub[i] * v[i];
        }
        let next: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for i in 0..m {
            v[i] = w[i] / norm;
        }
        // Squared norm to 10⁻⁸ relative is tighter than the norm itself.
        if it > 1 && (next - lambda).abs() <= RELATIVE_ACCURACY * RELATIVE_ACCURACY * next {
            return (next.sqrt(), it, true);
        }
        lambda = next;
    }
    (lambda.sqrt(), MAX_ITERATIONS, false)
}

/// Subdiagonal of the transformed operator on the exact block of a truncation,
/// from the commutator diagonal `‖T e_n‖² - ‖T* e_n‖²`.
fn transformed_subdiagonal<W: WeightSource + ?Sized>(source: &W, half_width: usize, rel_tol: f64) -> Result<Vec<f64>, OracleError> {
    let t = build_truncation(source, half_width, rel_tol)?;
    let m = t.t_mat();
    let dim = t.dim();
    let q: Vec<f64> = (0..dim).map(|i| m.column(i).norm_squared() - m.row(i).norm_squared()).collect();
    let block = 1..dim - 1;
    if let Some(row) = block.clone().find(|&i| q[i] < -t.tol()) {
        return Err(OracleError::NotPsd { row, value: q[row] });
    }
    let root = |v: f64| if v <= t.tol() { 0.0 } else { v.sqrt() };
    let pinv = |v: f64| if v <= t.tol() { 0.0 } else { 1.0 / v.sqrt() };
    Ok((block.start..block.end - 1).map(|i| root(q[i + 1]) * m[(i + 1, i)] * pinv(q[i])).collect())
}

/// `‖S_N‖` for each half-width in `half_widths`.
pub fn norm_sweep<W: WeightSource + ?Sized>(source: &W, half_widths: &[usize], rel_tol: f64) -> Result<Vec<NormPoint>, OracleError> {
    if half_widths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(OracleError::UnsortedSweep);
    }
    half_widths
        .iter()
        .map(|&n| {
            let sub = transformed_subdiagonal(source, n, rel_tol)?;
            let (norm, iterations, converged) = power_norm(&sub);
            Ok(NormPoint { half_width: n, norm, iterations, converged })
        })
        .collect()
}
