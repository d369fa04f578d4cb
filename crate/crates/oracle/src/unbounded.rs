//! A hyponormal shift outside the rational-tail family whose transformed
//! weights grow without bound.

use crate::WeightSource;

/// `|β_n|² = 1/(1-n) + 1/2` for `n ≤ 0`; for `n ≥ 1` the increments
/// `d_j = |β_j|² - |β_{j-1}|²` alternate between `1/j²` (even `j`) and `1/j³`
/// (odd `j`). The sequence is bounded and increasing, yet at odd `n`,
/// `γ_n² = |β_n|² n³/(n+1)²` grows linearly.
#[derive(Debug, Clone)]
pub struct OscillatingIncrements {
    squares: Vec<f64>,
}

impl OscillatingIncrements {
    /// Precomputes `|β_n|²` for `1 ≤ n ≤ limit`; beyond it the weight is held
    /// constant.
    pub fn new(limit: usize) -> Self {
        let mut squares = Vec::with_capacity(limit + 1);
        squares.push(1.5);
        for j in 1..=limit {
            let prev = squares[j - 1];
            squares.push(prev + Self::increment(j as i64));
        }
        OscillatingIncrements { squares }
    }

    pub fn increment(j: i64) -> f64 {
        let x = j as f64;
        if j % 2 == 0 { 1.0 / (x * x) } else { 1.0 / (x * x * x) }
    }

    pub fn weight_sq(&self, n: i64) -> f64 {
        if n <= 0 {
            return 1.0 / (1.0 - n as f64) + 0.5;
        }
        let i = (n as usize).min(self.squares.len() - 1);
        self.squares[i]
    }

    /// `γ_n²` from the closed-form increments.
    pub fn gamma_sq(&self, n: i64) -> f64 {
        let d = |j: i64| if j <= 0 { 1.0 / ((1.0 - j as f64) * (2.0 - j as f64)) } else { Self::increment(j) };
        self.weight_sq(n) * d(n + 1) / d(n)
    }
}

impl WeightSource for OscillatingIncrements {
    fn modulus(&self, n: i64) -> f64 {
        self.weight_sq(n).sqrt()
    }
}
