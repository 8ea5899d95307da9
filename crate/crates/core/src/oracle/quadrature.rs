//! Generalized Gauss–Laguerre quadrature with node doubling.
//!
//! Nodes are the eigenvalues of the Jacobi matrix, located by Sturm-sequence
//! bisection and polished with Newton steps on `L_n^alpha`. Weights use
//! `w_i = Gamma(n+alpha+1) / (n! x_i L_n'(x_i)^2)`, evaluated in log space
//! because `L_n(x)` overflows at the outer nodes for large `n`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::hydrogen::{radial_polynomial_part_hydrogen, HydrogenState};
use crate::oscillator::{radial_polynomial_part, OscillatorState};

pub const MIN_NODES: usize = 16;
pub const MAX_NODES: usize = 512;

type RuleCache = Mutex<HashMap<(usize, u64), Arc<GaussLaguerre>>>;

/// `n`-point rule for `∫_0^∞ x^alpha e^-x f(x) dx`.
#[derive(Debug, Clone)]
pub struct GaussLaguerre {
    alpha: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// `(L_n, L_{n-1}, ln_scale)` with the true values `L * exp(ln_scale)`.
fn laguerre_scaled(n: usize, alpha: f64, x: f64) -> (f64, f64, f64) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut ln_scale = 0.0;
    for j in 0..n {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
        let size = cur.abs().max(prev.abs());
        if size > 1e150 {
            cur /= size;
            prev /= size;
            ln_scale += size.ln();
        }
    }
    (cur, prev, ln_scale)
}

impl GaussLaguerre {
    pub fn new(n: usize, alpha: f64) -> Self {
        assert!(n >= 1, "need at least one node");
        assert!(alpha > -1.0, "weight exponent must exceed -1");
        let diag: Vec<f64> = (0..n).map(|i| 2.0 * i as f64 + alpha + 1.0).collect();
        let off_sq: Vec<f64> = (0..n).map(|i| i as f64 * (i as f64 + alpha)).collect();

        // number of eigenvalues below x
        let sturm_count = |x: f64| -> usize {
            let mut count = 0;
            let mut d = 1.0;
            for i in 0..n {
                d = diag[i] - x - if i == 0 { 0.0 } else { off_sq[i] / d };
                if d == 0.0 {
                    d = -f64::EPSILON * (diag[i].abs() + x.abs());
                }
                if d < 0.0 {
                    count += 1;
                }
            }
            count
        };
        let upper = (0..n)
            .map(|i| {
                let left = off_sq[i].sqrt();
                let right = if i + 1 < n { off_sq[i + 1].sqrt() } else { 0.0 };
                diag[i] + left + right
            })
            .fold(0.0, f64::max);

        let mut nodes = Vec::with_capacity(n);
        for idx in 0..n {
            let (mut lo, mut hi) = (0.0f64, upper);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if sturm_count(mid) > idx {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            // bisection is only accurate to eps * |T| in absolute terms, which
            // is coarse for the small nodes; Newton restores relative accuracy
            let mut x = 0.5 * (lo + hi);
            for _ in 0..8 {
                let (ln, lnm1, _) = laguerre_scaled(n, alpha, x);
                let derivative = (n as f64 * ln - (n as f64 + alpha) * lnm1) / x;
                if derivative == 0.0 {
                    break;
                }
                let step = ln / derivative;
                if !step.is_finite() || step.abs() > 0.01 * x {
                    break;
                }
                x -= step;
                if step.abs() <= 4.0 * f64::EPSILON * x {
                    break;
                }
            }
            nodes.push(x);
        }

        // ln Gamma(n+alpha+1)/n! as a sum; one large ln_gamma difference loses digits
        let ln_ratio = ln_gamma(alpha + 1.0) + (1..=n).map(|j| (alpha / j as f64).ln_1p()).sum::<f64>();
        let weights = nodes
            .iter()
            .map(|&x| {
                let (ln, lnm1, ln_scale) = laguerre_scaled(n, alpha, x);
                let derivative = (n as f64 * ln - (n as f64 + alpha) * lnm1) / x;
                (ln_ratio - x.ln() - 2.0 * (derivative.abs().ln() + ln_scale)).exp()
            })
            .collect();

        GaussLaguerre { alpha, nodes, weights }
    }

    /// Shared rule for `(n, alpha)`, built once per process.
    pub fn cached(n: usize, alpha: f64) -> Arc<Self> {
        static RULES: OnceLock<RuleCache> = OnceLock::new();
        let key = (n, alpha.to_bits());
        let rules = RULES.get_or_init(Default::default);
        if let Some(rule) = rules.lock().expect("rule cache poisoned").get(&key) {
            return Arc::clone(rule);
        }
        let rule = Arc::new(GaussLaguerre::new(n, alpha));
        Arc::clone(rules.lock().expect("rule cache poisoned").entry(key).or_insert(rule))
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| **w > 0.0)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// `∫_0^∞ x^weight_exponent e^-x f(x) dx`, doubling the node count from 16
/// until successive estimates agree to `tol` relative to `∫ x^w e^-x |f|`,
/// up to 512 nodes.
pub fn quadrature_float<F: Fn(f64) -> f64>(f: F, weight_exponent: f64, tol: f64) -> Result<f64> {
    if weight_exponent <= -1.0 || !weight_exponent.is_finite() {
        return Err(Error::DivergentMoment(format!(
            "weight exponent {weight_exponent} must exceed −1"
        )));
    }
    if tol <= 0.0 {
        return Err(Error::PreconditionViolated("tolerance must be positive".into()));
    }
    // changes are measured against the integral of |f| so that sums which
    // cancel to nearly zero still terminate
    let estimate = |nodes: usize| {
        let rule = GaussLaguerre::cached(nodes, weight_exponent);
        (rule.integrate(&f), rule.integrate(|x| f(x).abs()))
    };
    let mut nodes = MIN_NODES;
    let (mut previous, _) = estimate(nodes);
    let mut last_change = f64::INFINITY;
    while nodes < MAX_NODES {
        nodes *= 2;
        let (current, magnitude) = estimate(nodes);
        last_change = (current - previous).abs();
        if last_change <= tol * magnitude {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::NoConvergence {
        tol,
        nodes,
        last_change,
    })
}

/// Oscillator `<r^p>` for real `p` by quadrature of the radial density.
/// With `xi = r^2` the density is `xi^(K+(n+p)/2-1) e^-xi` times a polynomial.
pub fn ho_expval_quadrature(state: &OscillatorState, p: f64, tol: f64) -> Result<f64> {
    if !state.converges_real(p) {
        return Err(Error::DivergentMoment(format!(
            "<r^{p}> diverges for {state}: need p + n + 2K > 0"
        )));
    }
    let big_k = f64::from(state.angular());
    let weight = big_k + (p + f64::from(state.dim())) / 2.0 - 1.0;
    quadrature_float(
        |xi| {
            let poly = radial_polynomial_part(state, xi.sqrt());
            0.5 * poly * poly / xi.powf(big_k)
        },
        weight,
        tol,
    )
}

/// Hydrogen `<r^q>` for real `q` by quadrature in `rho = 2Zr/(n a0)`.
pub fn hydrogen_expval_quadrature(state: &HydrogenState, q: f64, tol: f64) -> Result<f64> {
    let l = f64::from(state.l());
    if q + 2.0 * l + 3.0 <= 0.0 {
        return Err(Error::DivergentMoment(format!(
            "<r^{q}> diverges for {state}: need q + 2l + 3 > 0"
        )));
    }
    let scale = num_traits::ToPrimitive::to_f64(&state.scale()).unwrap_or(f64::NAN);
    let weight = 2.0 * l + q + 2.0;
    quadrature_float(
        |rho| {
            let r = rho * scale;
            let poly = radial_polynomial_part_hydrogen(state, r);
            poly * poly / rho.powf(2.0 * l) * scale.powf(q + 3.0)
        },
        weight,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_gamma() {
        for &alpha in &[-0.5, 0.0, 0.5, 1.7, 4.0] {
            for &n in &[1usize, 2, 5, 16, 64, 512] {
                let rule = GaussLaguerre::new(n, alpha);
                let total: f64 = rule.weights().iter().sum();
                let expected = ln_gamma(alpha + 1.0).exp();
                assert!((total - expected).abs() < 1e-11 * expected, "alpha={alpha} n={n}: {total}");
                assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn rule_is_exact_for_polynomials() {
        // ∫ x^alpha e^-x x^j dx = Gamma(alpha + j + 1), exact for j < 2n
        let rule = GaussLaguerre::new(16, 0.5);
        for j in 0..20 {
            let got = rule.integrate(|x| x.powi(j));
            let expected = ln_gamma(0.5 + j as f64 + 1.0).exp();
            assert!((got - expected).abs() < 1e-12 * expected, "j={j}");
        }
    }

    #[test]
    fn unit_exponential() {
        let v = quadrature_float(|_| 1.0, 0.0, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oscillator_examples() {
        let ground = OscillatorState::new(3, 0, 0).unwrap();
        assert!((ho_expval_quadrature(&ground, 0.0, 1e-12).unwrap() - 1.0).abs() < 1e-12);
        assert!((ho_expval_quadrature(&ground, 2.0, 1e-12).unwrap() - 1.5).abs() < 1e-10);
        let closed = crate::oscillator::expval_closed_real(&ground, -1.5).unwrap();
        assert!((ho_expval_quadrature(&ground, -1.5, 1e-12).unwrap() - closed).abs() < 1e-8);
    }

    #[test]
    fn hydrogen_normalization() {
        for (n, l) in [(1, 0), (2, 1), (3, 0), (4, 2)] {
            let state = HydrogenState::atomic(n, l).unwrap();
            let v = hydrogen_expval_quadrature(&state, 0.0, 1e-12).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "{state}: {v}");
        }
    }

    #[test]
    fn slow_integrand_reports_no_convergence() {
        let err = quadrature_float(|x| (x.sqrt() * 40.0).sin(), 0.0, 1e-14).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { .. }));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(quadrature_float(|_| 1.0, -1.0, 1e-8).is_err());
        assert!(quadrature_float(|_| 1.0, 0.0, 0.0).is_err());
    }
}
