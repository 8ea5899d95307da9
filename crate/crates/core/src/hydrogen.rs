//! Radial moments of nonrelativistic hydrogen-like bound states.
//!
//! `Z` and `a0` are kept as rationals so every moment is an exact rational.
//! Positive powers come from discrete Chebyshev polynomials or the
//! Kramers–Pasternack recurrence; negative powers from Pasternack's
//! inversion. The historically printed negative-power closed form is kept
//! behind [`NegativeMode::Printed`]; it disagrees with direct
//! integration unless `(2l+k+1)!/(2l-k)! = 1`.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::exact::{factorial, int, Rational};
use crate::polys::{chebyshev_t, laguerre_f64};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HydrogenState {
    n: u32,
    l: u32,
    z: Rational,
    a0: Rational,
}

impl HydrogenState {
    pub fn new(n: u32, l: u32, z: Rational, a0: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidState("principal number n must be positive".into()));
        }
        if l >= n {
            return Err(Error::InvalidState(format!("l = {l} must satisfy 0 ≤ l ≤ n−1 = {}", n - 1)));
        }
        if !z.is_positive() || !a0.is_positive() {
            return Err(Error::InvalidState("Z and a0 must be positive".into()));
        }
        Ok(HydrogenState { n, l, z, a0 })
    }

    /// Unit charge and unit Bohr radius.
    pub fn atomic(n: u32, l: u32) -> Result<Self> {
        Self::new(n, l, Rational::one(), Rational::one())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn z(&self) -> &Rational {
        &self.z
    }

    pub fn a0(&self) -> &Rational {
        &self.a0
    }

    /// Length scale `n a0 / (2Z)`, i.e. `r = scale * rho`.
    pub fn scale(&self) -> Rational {
        int(i64::from(self.n)) * &self.a0 / (int(2) * &self.z)
    }

    /// `<r^q>` converges iff `q + 2l + 3 > 0`.
    pub fn converges(&self, q: i64) -> bool {
        q + 2 * i64::from(self.l) + 3 > 0
    }

    pub fn enumerate(n_max: u32) -> Vec<HydrogenState> {
        (1..=n_max)
            .flat_map(|n| (0..n).map(move |l| HydrogenState::atomic(n, l).expect("valid")))
            .collect()
    }

    fn chebyshev(&self, k: u64) -> Rational {
        let x = int(i64::from(self.n) - i64::from(self.l) - 1);
        let big_n = int(-2 * i64::from(self.l) - 1);
        // 1 - N = 2l + 2 > 0, so the series never hits a pole
        chebyshev_t(k, &x, &big_n).expect("lower parameters are positive")
    }
}

impl fmt::Display for HydrogenState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, l={}, Z={}, a0={})", self.n, self.l, self.z, self.a0)
    }
}

/// Reading used for negative powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum NegativeMode {
    /// Inversion composed with the positive-power closed form.
    #[default]
    Consistent,
    /// The printed negative-power closed form.
    Printed,
}

impl NegativeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NegativeMode::Consistent => "consistent",
            NegativeMode::Printed => "paper-literal",
        }
    }
}

fn pow(base: &Rational, exp: i64) -> Rational {
    let magnitude = (0..exp.unsigned_abs()).fold(Rational::one(), |acc, _| acc * base);
    if exp < 0 {
        magnitude.recip()
    } else {
        magnitude
    }
}

/// `<r^(k-1)> = (1/2n) (n a0/2Z)^(k-1) t_k(n-l-1, -2l-1)`.
pub fn expval_pos(state: &HydrogenState, k: u64) -> Rational {
    let k_i = k as i64;
    state.chebyshev(k) * pow(&state.scale(), k_i - 1) / int(2 * i64::from(state.n))
}

fn require_negative_index(state: &HydrogenState, k: u64) -> Result<()> {
    if k > 2 * u64::from(state.l) {
        Err(Error::DivergentMoment(format!(
            "<r^-{}> diverges for {state}: need k ≤ 2l",
            k + 2
        )))
    } else {
        Ok(())
    }
}

/// `(2l-k)!/(2l+k+1)!`
fn inversion_factorial_ratio(state: &HydrogenState, k: u64) -> Rational {
    let two_l = 2 * u64::from(state.l);
    Rational::new(factorial(two_l - k), factorial(two_l + k + 1))
}

/// `<r^(-k-2)> = (2Z/(n a0))^(2k+1) (2l-k)!/(2l+k+1)! <r^(k-1)>`.
pub fn inversion_in4(state: &HydrogenState, k: u64) -> Result<Rational> {
    require_negative_index(state, k)?;
    let inverse_scale = state.scale().recip();
    Ok(pow(&inverse_scale, 2 * k as i64 + 1) * inversion_factorial_ratio(state, k) * expval_pos(state, k))
}

/// `<r^(-k-2)>` under the chosen reading.
pub fn expval_neg(state: &HydrogenState, k: u64, mode: NegativeMode) -> Result<Rational> {
    require_negative_index(state, k)?;
    match mode {
        NegativeMode::Consistent => inversion_in4(state, k),
        NegativeMode::Printed => {
            let inverse_scale = state.scale().recip();
            Ok(pow(&inverse_scale, k as i64 + 2) * state.chebyshev(k) / int(2 * i64::from(state.n)))
        }
    }
}

/// Ratio `paper-literal / consistent` for the negative-power forms.
pub fn literal_discrepancy_factor(state: &HydrogenState, k: u64) -> Result<Rational> {
    require_negative_index(state, k)?;
    Ok(inversion_factorial_ratio(state, k).recip())
}

/// `<r^q>` for any convergent integer `q`: positive closed form for
/// `q ≥ -1`, the negative-power form otherwise.
pub fn expval(state: &HydrogenState, q: i64, mode: NegativeMode) -> Result<Rational> {
    if q >= -1 {
        Ok(expval_pos(state, (q + 1) as u64))
    } else if state.converges(q) {
        expval_neg(state, (-q - 2) as u64, mode)
    } else {
        Err(Error::DivergentMoment(format!(
            "<r^{q}> diverges for {state}: need q ≥ −2l−2"
        )))
    }
}

/// `<r^k>` for `k = 1..=k_max` by the Kramers–Pasternack recurrence, seeded
/// with `<1/r> = Z/(a0 n^2)` and `<1> = 1`.
pub fn kramers_pasternack_range(state: &HydrogenState, k_max: u64) -> Result<Vec<(u64, Rational)>> {
    if k_max < 1 {
        return Err(Error::PreconditionViolated("k_max must be at least 1".into()));
    }
    let n = int(i64::from(state.n));
    let scale = state.scale();
    let two_l_plus_one_sq = int((2 * i64::from(state.l) + 1).pow(2));
    let mut prev2 = &state.z / (&state.a0 * &n * &n);
    let mut prev = Rational::one();
    let mut out = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let kr = int(k as i64);
        let k1 = &kr + int(1);
        let first = int(2) * &n * (int(2) * &kr + int(1)) / &k1 * &scale * &prev;
        let second = &kr * (&two_l_plus_one_sq - &kr * &kr) / &k1 * &scale * &scale * &prev2;
        let next = first - second;
        out.push((k, next.clone()));
        prev2 = std::mem::replace(&mut prev, next);
    }
    Ok(out)
}

/// `R_nl(r)` without the factor `exp(-rho/2)`, `rho = 2Zr/(n a0)`.
pub fn radial_polynomial_part_hydrogen(state: &HydrogenState, r: f64) -> f64 {
    let (n, l) = (f64::from(state.n), f64::from(state.l));
    let k = u64::from(state.n - state.l - 1);
    let kappa = state.scale().recip().to_f64().unwrap_or(f64::NAN);
    let rho = kappa * r;
    let log_norm = 3.0 * kappa.ln() + ln_gamma(k as f64 + 1.0) - (2.0 * n).ln() - ln_gamma(n + l + 1.0);
    (0.5 * log_norm).exp() * rho.powi(state.l as i32) * laguerre_f64(k, 2.0 * l + 1.0, rho)
}

/// Normalized `R_nl(r)` with `∫ R^2 r^2 dr = 1`.
pub fn radial_eval_hydrogen(state: &HydrogenState, r: f64) -> f64 {
    let kappa = state.scale().recip().to_f64().unwrap_or(f64::NAN);
    (-0.5 * kappa * r).exp() * radial_polynomial_part_hydrogen(state, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn h(n: u32, l: u32) -> HydrogenState {
        HydrogenState::atomic(n, l).unwrap()
    }

    #[test]
    fn state_validation() {
        assert!(HydrogenState::atomic(2, 2).is_err());
        assert!(HydrogenState::atomic(0, 0).is_err());
        assert!(HydrogenState::new(2, 1, int(0), int(1)).is_err());
        assert!(HydrogenState::new(2, 1, rat(3, 2), rat(1, 2)).is_ok());
    }

    #[test]
    fn positive_closed_form_examples() {
        for state in HydrogenState::enumerate(6) {
            let n = int(i64::from(state.n()));
            assert_eq!(expval_pos(&state, 0), state.z() / (state.a0() * &n * &n));
            assert_eq!(expval_pos(&state, 1), int(1));
        }
        assert_eq!(expval_pos(&h(2, 1), 2), int(5));
        assert_eq!(expval_pos(&h(1, 0), 2), rat(3, 2));
        let charged = HydrogenState::new(3, 1, int(2), rat(1, 3)).unwrap();
        assert_eq!(expval_pos(&charged, 0), int(2) / (rat(1, 3) * int(9)));
    }

    #[test]
    fn negative_forms() {
        assert_eq!(expval_neg(&h(1, 0), 0, NegativeMode::Consistent).unwrap(), int(2));
        assert_eq!(expval_neg(&h(1, 0), 0, NegativeMode::Printed).unwrap(), int(2));
        assert_eq!(expval_neg(&h(2, 1), 0, NegativeMode::Consistent).unwrap(), rat(1, 12));
        assert_eq!(expval_neg(&h(2, 1), 0, NegativeMode::Printed).unwrap(), rat(1, 4));
        assert_eq!(inversion_in4(&h(2, 1), 0).unwrap(), rat(1, 12));
        assert_eq!(inversion_in4(&h(1, 0), 0).unwrap(), int(2));
        assert!(matches!(inversion_in4(&h(2, 0), 1), Err(Error::DivergentMoment(_))));
        assert!(matches!(expval(&h(3, 1), -5, NegativeMode::Consistent), Err(Error::DivergentMoment(_))));
    }

    #[test]
    fn literal_and_consistent_differ_by_factorial_ratio() {
        for state in HydrogenState::enumerate(6) {
            for k in 0..=2 * u64::from(state.l()) {
                let literal = expval_neg(&state, k, NegativeMode::Printed).unwrap();
                let consistent = expval_neg(&state, k, NegativeMode::Consistent).unwrap();
                let factor = literal_discrepancy_factor(&state, k).unwrap();
                assert_eq!(literal, &consistent * &factor);
                assert_eq!(literal == consistent, factor.is_one());
            }
        }
    }

    #[test]
    fn kramers_pasternack_examples() {
        let table = kramers_pasternack_range(&h(2, 1), 2).unwrap();
        assert_eq!(table, vec![(1, int(5)), (2, int(30))]);
        assert_eq!(kramers_pasternack_range(&h(1, 0), 1).unwrap(), vec![(1, rat(3, 2))]);
        assert!(kramers_pasternack_range(&h(1, 0), 0).is_err());
    }

    #[test]
    fn recurrence_matches_closed_form() {
        for state in HydrogenState::enumerate(6) {
            for (k, value) in kramers_pasternack_range(&state, 8).unwrap() {
                assert_eq!(value, expval_pos(&state, k + 1), "{state} k={k}");
            }
        }
    }

    #[test]
    fn charge_scaling_law() {
        let base = h(4, 2);
        let c = rat(5, 3);
        let scaled = HydrogenState::new(4, 2, c.clone(), int(1)).unwrap();
        for q in -6..=8i64 {
            let lhs = expval(&scaled, q, NegativeMode::Consistent).unwrap();
            let rhs = expval(&base, q, NegativeMode::Consistent).unwrap() * pow(&c, -q);
            assert_eq!(lhs, rhs, "q = {q}");
        }
    }

    #[test]
    fn radial_nodes() {
        let ground = h(1, 0);
        assert!((radial_eval_hydrogen(&ground, 1e-12) - 2.0).abs() < 1e-9);
        let p_state = h(2, 1);
        let samples: Vec<f64> = (1..400).map(|i| radial_eval_hydrogen(&p_state, i as f64 * 0.05)).collect();
        assert!(samples.iter().all(|v| *v > 0.0));
        // rho = r for n = 2, Z = a0 = 1; the node of 2 - rho sits at r = 2
        let s = h(2, 0);
        assert!(radial_eval_hydrogen(&s, 2.0).abs() < 1e-15);
        assert!(radial_eval_hydrogen(&s, 1.9) * radial_eval_hydrogen(&s, 2.1) < 0.0);
    }
}
