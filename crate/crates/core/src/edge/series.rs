use std::fmt;

use crate::error::{Error, Result};

/// Power series `f(x) = Σ c_k xᵏ` with nonnegative coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientSeries {
    /// `c_k = 1`, `f(x) = 1/(1−x)`, radius 1.
    Resolvent,
    /// `c_k = 1/k!`, `f(x) = eˣ`, infinite radius.
    Exponential,
    /// Explicit `c_0, …, c_K`, scalar radius `r`, and a bound on the
    /// relative error committed by dropping every term past `K`.
    Custom {
        coefficients: Vec<f64>,
        radius: f64,
        tail_bound: f64,
    },
}

impl CoefficientSeries {
    pub fn custom(coefficients: Vec<f64>, radius: f64, tail_bound: f64) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidArgument(
                "custom series needs at least c_0".into(),
            ));
        }
        if coefficients.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::InvalidArgument(
                "custom series coefficients must be finite and nonnegative".into(),
            ));
        }
        if !(radius > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "custom series radius {radius} must be positive"
            )));
        }
        if !(tail_bound >= 0.0) || !tail_bound.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "tail bound {tail_bound} must be finite and nonnegative"
            )));
        }
        Ok(Self::Custom {
            coefficients,
            radius,
            tail_bound,
        })
    }

    /// `c_0`.
    pub fn c0(&self) -> f64 {
        match self {
            Self::Resolvent | Self::Exponential => 1.0,
            Self::Custom { coefficients, .. } => coefficients[0],
        }
    }

    /// `c_k`; zero past a custom series' truncation order.
    pub fn coefficient(&self, k: usize) -> f64 {
        match self {
            Self::Resolvent => 1.0,
            Self::Exponential => (1..=k).fold(1.0, |acc, j| acc / j as f64),
            Self::Custom { coefficients, .. } => coefficients.get(k).copied().unwrap_or(0.0),
        }
    }

    /// Scalar radius of convergence.
    pub fn radius(&self) -> f64 {
        match self {
            Self::Resolvent => 1.0,
            Self::Exponential => f64::INFINITY,
            Self::Custom { radius, .. } => *radius,
        }
    }

    /// Scalar `f(x)` (truncated for custom series).
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Self::Resolvent => 1.0 / (1.0 - x),
            Self::Exponential => x.exp(),
            Self::Custom { coefficients, .. } => {
                coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c)
            }
        }
    }

    /// Scalar `∂f(x) = (f(x) − c_0)/x`, continuous at zero.
    pub fn eval_partial(&self, x: f64) -> f64 {
        match self {
            Self::Resolvent => 1.0 / (1.0 - x),
            Self::Exponential => {
                if x == 0.0 {
                    1.0
                } else {
                    x.exp_m1() / x
                }
            }
            Self::Custom { coefficients, .. } => coefficients[1..]
                .iter()
                .rev()
                .fold(0.0, |acc, c| acc * x + c),
        }
    }
}

impl fmt::Display for CoefficientSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Resolvent => write!(f, "resolvent"),
            Self::Exponential => write!(f, "exponential"),
            Self::Custom { coefficients, .. } => write!(f, "custom(K={})", coefficients.len() - 1),
        }
    }
}

/// Smallest `K` with `Σ_{k>K} xᵏ/(k+1)! ≤ tol`, where `x = t·ρ̂ ≥ 0`.
pub(crate) fn exponential_order(x: f64, tol: f64, max_order: usize) -> Result<usize> {
    // terms[k] = xᵏ/(k+1)!, summed from the far end so the tail is exact
    // up to the cap.
    let mut terms = Vec::with_capacity(64);
    let mut term = 1.0f64;
    let mut k = 0usize;
    loop {
        terms.push(term);
        if !term.is_finite() {
            break;
        }
        // once terms are past the peak and tiny, the remaining tail is below
        // a geometric bound with ratio x/(k+2) < 1/2
        if k as f64 > 2.0 * x && term < tol * 1e-3 {
            break;
        }
        if k >= max_order {
            break;
        }
        k += 1;
        term *= x / (k + 1) as f64;
    }
    if terms.iter().any(|t| !t.is_finite()) || k >= max_order {
        return Err(Error::Truncation(format!(
            "exponential series at t·ρ = {x:.6e} needs more than {max_order} terms for tolerance {tol:.1e}"
        )));
    }
    let mut tail = 0.0;
    for kk in (0..terms.len()).rev() {
        // tail = Σ_{j>kk} terms[j]
        if tail > tol {
            return Ok(kk + 1);
        }
        tail += terms[kk];
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_coefficients() {
        let r = CoefficientSeries::Resolvent;
        assert_eq!((r.c0(), r.coefficient(7), r.radius()), (1.0, 1.0, 1.0));
        let e = CoefficientSeries::Exponential;
        assert_eq!(e.coefficient(3), 1.0 / 6.0);
        assert!(e.radius().is_infinite());
        assert_eq!(e.eval_partial(0.0), 1.0);
        assert!((e.eval_partial(1e-3) - (1e-3f64.exp() - 1.0) / 1e-3).abs() < 1e-12);
        assert!((r.eval_partial(0.5) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn custom_validation() {
        assert!(CoefficientSeries::custom(vec![], 1.0, 0.0).is_err());
        assert!(CoefficientSeries::custom(vec![1.0, -1.0], 1.0, 0.0).is_err());
        assert!(CoefficientSeries::custom(vec![1.0], 0.0, 0.0).is_err());
        let c = CoefficientSeries::custom(vec![1.0, 2.0, 3.0], 2.0, 0.0).unwrap();
        assert_eq!(c.eval(2.0), 17.0);
        assert_eq!(c.eval_partial(2.0), 8.0);
        assert_eq!(c.coefficient(5), 0.0);
    }

    #[test]
    fn exponential_order_meets_bound() {
        for &x in &[0.0, 0.1, 1.0, 5.0, 30.0] {
            for &tol in &[1e-6, 1e-12] {
                let k = exponential_order(x, tol, 10_000).unwrap();
                let mut tail = 0.0;
                let mut term = 1.0;
                for j in 1..2000 {
                    term *= x / (j + 1) as f64;
                    if j > k {
                        tail += term;
                    }
                }
                assert!(tail <= tol, "x={x} tol={tol} K={k} tail={tail}");
                if k > 0 {
                    // K − 1 would not have been enough
                    let mut term = 1.0;
                    let mut tail_prev = 0.0;
                    for j in 1..2000 {
                        term *= x / (j + 1) as f64;
                        if j >= k {
                            tail_prev += term;
                        }
                    }
                    assert!(tail_prev > tol * 0.999_999);
                }
            }
        }
        assert!(exponential_order(1e6, 1e-12, 10_000).is_err());
    }
}
