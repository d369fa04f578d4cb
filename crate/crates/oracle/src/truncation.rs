use nalgebra::{DMatrix, DVector};
use nearsub_core::WeightSpec;

use crate::spectral::{pinv_half, sqrt_half};
use crate::OracleError;

/// Anything that can report `|β_n|` as a float.
pub trait WeightSource {
    fn modulus(&self, n: i64) -> f64;
}

impl WeightSource for WeightSpec {
    fn modulus(&self, n: i64) -> f64 {
        self.eval_float(n).map(f64::abs).unwrap_or(f64::NAN)
    }
}

impl<F: Fn(i64) -> f64> WeightSource for F {
    fn modulus(&self, n: i64) -> f64 {
        self(n).abs()
    }
}

/// Compression of `T` to `span{e_{-N}, …, e_N}`; row `i` is basis index `i - N`.
#[derive(Debug, Clone)]
pub struct Truncation {
    half_width: usize,
    t_mat: DMatrix<f64>,
    tol: f64,
    max_weight_sq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    /// `e_index` is numerically in the kernel of `Q` but `T e_index` is not.
    pub index: i64,
    pub magnitude: f64,
}

/// `rel_tol` is scaled by the largest `|β_n|²` on the truncation.
pub fn build_truncation<W: WeightSource + ?Sized>(source: &W, half_width: usize, rel_tol: f64) -> Result<Truncation, OracleError> {
    if half_width < 2 {
        return Err(OracleError::HalfWidth(half_width));
    }
    if !(rel_tol.is_finite() && rel_tol >= 0.0) {
        return Err(OracleError::Tolerance(rel_tol));
    }
    let n = half_width as i64;
    let dim = 2 * half_width + 1;
    let mut t_mat = DMatrix::zeros(dim, dim);
    let mut max_weight_sq = 0.0f64;
    for idx in -n..n {
        let b = source.modulus(idx);
        if !b.is_finite() {
            return Err(OracleError::NonFiniteWeight(idx));
        }
        let col = (idx + n) as usize;
        t_mat[(col + 1, col)] = b;
        max_weight_sq = max_weight_sq.max(b * b);
    }
    Ok(Truncation { half_width, t_mat, tol: rel_tol * max_weight_sq, max_weight_sq })
}

impl Truncation {
    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn dim(&self) -> usize {
        self.t_mat.nrows()
    }

    pub fn t_mat(&self) -> &DMatrix<f64> {
        &self.t_mat
    }

    /// Absolute null-space threshold.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_weight_sq(&self) -> f64 {
        self.max_weight_sq
    }

    pub fn index_of(&self, row: usize) -> i64 {
        row as i64 - self.half_width as i64
    }

    pub fn row_of(&self, n: i64) -> Option<usize> {
        let row = n + self.half_width as i64;
        (0..self.dim() as i64).contains(&row).then_some(row as usize)
    }

    /// `|n| ≤ N - 2`.
    pub fn is_interior(&self, n: i64) -> bool {
        n.unsigned_abs() + 2 <= self.half_width as u64
    }

    pub fn interior(&self) -> std::ops::RangeInclusive<i64> {
        let m = self.half_width as i64 - 2;
        -m..=m
    }

    /// Rows of the block `|n| ≤ N - 1` on which `Q` is exact.
    pub(crate) fn block(&self) -> std::ops::Range<usize> {
        1..self.dim() - 1
    }
}

/// `T*T - TT*` by dense products.
pub fn commutator_q(t: &Truncation) -> DMatrix<f64> {
    let tt = t.t_mat.transpose();
    &tt * &t.t_mat - &t.t_mat * &tt
}

fn block_of(m: &DMatrix<f64>, rows: &std::ops::Range<usize>) -> DMatrix<f64> {
    m.view((rows.start, rows.start), (rows.len(), rows.len())).into_owned()
}

/// `Q^{1/2} T Q^{†1/2}` on the block `|n| ≤ N - 1`, zero on the two edge rows
/// and columns. Its subdiagonal carries `γ_n`.
pub fn transformed_operator(t: &Truncation, q: &DMatrix<f64>) -> Result<DMatrix<f64>, OracleError> {
    let rows = t.block();
    let qb = block_of(q, &rows);
    let shift_err = |e: OracleError| match e {
        OracleError::NotPsd { row, value } => OracleError::NotPsd { row: row + rows.start, value },
        other => other,
    };
    let pinv = pinv_half(&qb, t.tol).map_err(shift_err)?;
    let root = sqrt_half(&qb, t.tol).map_err(shift_err)?;
    let s_block = root * block_of(&t.t_mat, &rows) * pinv;
    let mut s = DMatrix::zeros(t.dim(), t.dim());
    s.view_mut((rows.start, rows.start), (rows.len(), rows.len())).copy_from(&s_block);
    Ok(s)
}

/// Interior `e_n` with `|Q_nn| ≤ tol` whose image `Q T e_n` exceeds `√tol`.
pub fn invariance_check(t: &Truncation, q: &DMatrix<f64>) -> Vec<Violation> {
    let threshold = t.tol.sqrt();
    t.interior()
        .filter_map(|n| {
            let col = t.row_of(n)?;
            if q[(col, col)].abs() > t.tol {
                return None;
            }
            let image: DVector<f64> = q * t.t_mat.column(col);
            let magnitude = image.norm();
            (magnitude > threshold).then_some(Violation { index: n, magnitude })
        })
        .collect()
}
