//! Formula-independent ground truth.
//!
//! [`laguerre_moment_exact`] expands both Laguerre factors into monomials and
//! integrates term by term against `∫ e^-x x^t dx = Gamma(t+1)`. Nothing else
//! is assumed, so every closed form, recurrence and inversion in the crate is
//! checked against it. [`j_integral_formula`] is the competing closed form for
//! the same integral; [`quadrature`] supplies floating cross-checks for real
//! exponents.

pub mod quadrature;

pub use quadrature::{
    ho_expval_quadrature, hydrogen_expval_quadrature, quadrature_float, GaussLaguerre,
};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, gamma_exact, int, pochhammer, ExactValue, HalfInteger, Rational};
use crate::hydrogen::HydrogenState;
use crate::oscillator::OscillatorState;
use crate::polys::{hyp3f2_unit, laguerre_coefficients};

/// `∫_0^∞ e^-x x^a L_deg1^alpha(x) L_deg2^beta(x) dx`
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreMomentQuery {
    pub deg1: u64,
    pub deg2: u64,
    pub alpha: Rational,
    pub beta: Rational,
    pub exponent_a: HalfInteger,
}

impl LaguerreMomentQuery {
    pub fn new(deg1: u64, deg2: u64, alpha: Rational, beta: Rational, exponent_a: HalfInteger) -> Self {
        LaguerreMomentQuery {
            deg1,
            deg2,
            alpha,
            beta,
            exponent_a,
        }
    }
}

fn multiply_polynomials(lhs: &[Rational], rhs: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); lhs.len() + rhs.len() - 1];
    for (i, a) in lhs.iter().enumerate() {
        for (j, b) in rhs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

pub fn laguerre_moment_exact(query: &LaguerreMomentQuery) -> Result<ExactValue> {
    let a = query.exponent_a;
    if a.twice() <= -2 {
        return Err(Error::DivergentMoment(format!("exponent a = {a} must exceed −1")));
    }
    let product = multiply_polynomials(
        &laguerre_coefficients(query.deg1, &query.alpha),
        &laguerre_coefficients(query.deg2, &query.beta),
    );
    // Gamma(a+t+1) = Gamma(a+1) (a+1)_t keeps every term on one sqrt(pi) power
    let base = a + HalfInteger::from_int(1);
    let base_r = base.to_rational();
    let sum: Rational = product
        .iter()
        .enumerate()
        .map(|(t, c)| c * pochhammer(&base_r, t as u64))
        .sum();
    Ok(gamma_exact(base)?.scale(&sum))
}

/// Gamma at any integer or half-integer that is not a pole.
fn gamma_anywhere(x: HalfInteger) -> Result<ExactValue> {
    if x.is_positive() {
        return gamma_exact(x);
    }
    if x.is_integer() {
        return Err(Error::NonPositiveArgument(x.to_string()));
    }
    Ok(reciprocal_gamma(x).recip())
}

/// `1/Gamma(x)`, zero at the poles.
pub fn reciprocal_gamma(x: HalfInteger) -> ExactValue {
    if x.is_positive() {
        return gamma_exact(x).expect("positive argument").recip();
    }
    if x.is_integer() {
        return ExactValue::zero();
    }
    // Gamma(x) = Gamma(1/2) / (x)_j with x + j = 1/2
    let steps = ((1 - x.twice()) / 2) as u64;
    ExactValue::new(pochhammer(&x.to_rational(), steps), -1)
}

/// The closed form of the Laguerre product integral with weight
/// `x^(alpha+s) e^-x`, valid for `n1 ≥ m1`.
pub fn j_integral_formula(n1: u64, m1: u64, alpha: &Rational, beta: &Rational, s: &Rational) -> Result<ExactValue> {
    if n1 < m1 {
        return Err(Error::PreconditionViolated(format!("need n1 ≥ m1, got n1 = {n1}, m1 = {m1}")));
    }
    let one = Rational::one();
    let gap = n1 - m1;
    let half = |x: Rational| HalfInteger::from_rational(&x);

    let cut = reciprocal_gamma(half(s - int(gap as i64) + &one)?);
    if cut.is_zero() {
        return Ok(ExactValue::zero());
    }
    let numerator = &(&gamma_anywhere(half(alpha + s + &one)?)? * &gamma_anywhere(half(beta + int(m1 as i64) + &one)?)?)
        * &gamma_anywhere(half(s + &one)?)?;
    let denominator = gamma_anywhere(half(beta + &one)?)?;
    let sign = if gap.is_multiple_of(2) { int(1) } else { int(-1) };
    let factorials = Rational::from_integer(factorial(m1) * factorial(gap));
    let series = hyp3f2_unit(
        [int(-(m1 as i64)), s + &one, beta - alpha - s],
        [beta + &one, int(gap as i64 + 1)],
    )?;
    let prefactor = &(&numerator / &denominator) * &cut;
    Ok(prefactor.scale(&(sign * series / factorials)))
}

/// `<r^p>` for the oscillator by direct integration of the normalized radial
/// density.
pub fn ho_expval_oracle(state: &OscillatorState, p: i64) -> Result<ExactValue> {
    if !state.converges(p) {
        return Err(Error::DivergentMoment(format!(
            "<r^{p}> diverges for {state}: need p + n + 2K > 0"
        )));
    }
    let k = state.radial_degree();
    let alpha = state.laguerre_alpha();
    let alpha_r = alpha.to_rational();
    let query = LaguerreMomentQuery::new(k, k, alpha_r.clone(), alpha_r, alpha + HalfInteger::from_twice(p));
    let norm = gamma_exact(alpha + HalfInteger::from_int(k as i64 + 1))?
        .recip()
        .scale(&Rational::from_integer(factorial(k)));
    Ok(&norm * &laguerre_moment_exact(&query)?)
}

/// `<r^q>` for hydrogen as a ratio of two exactly integrated radial moments.
pub fn hydrogen_expval_oracle(state: &HydrogenState, q: i64) -> Result<Rational> {
    if !state.converges(q) {
        return Err(Error::DivergentMoment(format!(
            "<r^{q}> diverges for {state}: need q + 2l + 3 > 0"
        )));
    }
    let k = u64::from(state.n() - state.l() - 1);
    let alpha = int(2 * i64::from(state.l()) + 1);
    let base = 2 * i64::from(state.l()) + 2;
    let moment = |a: i64| -> Result<Rational> {
        let query = LaguerreMomentQuery::new(k, k, alpha.clone(), alpha.clone(), HalfInteger::from_int(a));
        let value = laguerre_moment_exact(&query)?;
        Ok(value.as_rational().cloned().expect("integer exponents give rationals"))
    };
    let scale = state.scale();
    let scale_power = if q >= 0 {
        (0..q).fold(Rational::one(), |acc, _| acc * &scale)
    } else {
        (0..-q).fold(Rational::one(), |acc, _| acc * &scale).recip()
    };
    Ok(scale_power * moment(q + base)? / moment(base)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn query(d1: u64, d2: u64, alpha: Rational, beta: Rational, twice_a: i64) -> LaguerreMomentQuery {
        LaguerreMomentQuery::new(d1, d2, alpha, beta, HalfInteger::from_twice(twice_a))
    }

    #[test]
    fn moment_examples() {
        for t in 0..8 {
            let v = laguerre_moment_exact(&query(0, 0, rat(1, 3), int(4), 2 * t)).unwrap();
            assert_eq!(v, ExactValue::rational(Rational::from_integer(factorial(t as u64))));
        }
        let v = laguerre_moment_exact(&query(1, 1, rat(1, 2), rat(1, 2), 5)).unwrap();
        assert_eq!(v, ExactValue::new(rat(225, 16), 1));
        for alpha_twice in [0i64, 1, 3, 4] {
            let alpha = rat(alpha_twice, 2);
            let v = laguerre_moment_exact(&query(1, 0, alpha.clone(), alpha, alpha_twice)).unwrap();
            assert!(v.is_zero());
        }
        assert!(matches!(
            laguerre_moment_exact(&query(1, 1, int(0), int(0), -2)),
            Err(Error::DivergentMoment(_))
        ));
    }

    #[test]
    fn moment_diagonal_is_laguerre_norm() {
        for alpha_twice in [-1i64, 0, 1, 2, 3, 5] {
            for k in 0..=8u64 {
                let alpha = HalfInteger::from_twice(alpha_twice);
                let q = query(k, k, alpha.to_rational(), alpha.to_rational(), alpha_twice);
                let norm = gamma_exact(alpha + HalfInteger::from_int(k as i64 + 1))
                    .unwrap()
                    .scale(&Rational::from_integer(factorial(k)).recip());
                assert_eq!(laguerre_moment_exact(&q).unwrap(), norm);
            }
        }
    }

    #[test]
    fn j_formula_examples() {
        for (alpha, s) in [(int(0), int(0)), (rat(1, 2), rat(3, 2)), (int(2), rat(5, 2))] {
            let v = j_integral_formula(0, 0, &alpha, &int(7), &s).unwrap();
            let a = HalfInteger::from_rational(&(&alpha + &s + int(1))).unwrap();
            assert_eq!(v, gamma_exact(a).unwrap());
        }
        let v = j_integral_formula(1, 1, &rat(1, 2), &rat(1, 2), &rat(3, 2)).unwrap();
        let oracle = laguerre_moment_exact(&query(1, 1, rat(1, 2), rat(1, 2), 4)).unwrap();
        assert_eq!(v, oracle);
        assert!(j_integral_formula(1, 0, &rat(3, 2), &rat(3, 2), &int(0)).unwrap().is_zero());
        assert!(matches!(
            j_integral_formula(0, 1, &int(0), &int(0), &int(0)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn reciprocal_gamma_values() {
        assert!(reciprocal_gamma(HalfInteger::from_int(0)).is_zero());
        assert!(reciprocal_gamma(HalfInteger::from_int(-3)).is_zero());
        // Gamma(-1/2) = -2 sqrt(pi)
        assert_eq!(reciprocal_gamma(HalfInteger::from_twice(-1)), ExactValue::new(rat(-1, 2), -1));
        // Gamma(-3/2) = 4 sqrt(pi) / 3
        assert_eq!(reciprocal_gamma(HalfInteger::from_twice(-3)), ExactValue::new(rat(3, 4), -1));
        assert_eq!(reciprocal_gamma(HalfInteger::from_int(4)), ExactValue::rational(rat(1, 6)));
    }

    #[test]
    fn oscillator_oracle_examples() {
        let s = OscillatorState::new(3, 2, 0).unwrap();
        assert_eq!(ho_expval_oracle(&s, 4).unwrap(), ExactValue::rational(rat(75, 4)));
        for state in OscillatorState::enumerate(5, 8) {
            assert_eq!(ho_expval_oracle(&state, 0).unwrap(), ExactValue::one());
        }
        let ground = OscillatorState::new(3, 0, 0).unwrap();
        assert_eq!(ho_expval_oracle(&ground, 1).unwrap(), ExactValue::new(int(2), -1));
        assert!(ho_expval_oracle(&ground, -3).is_err());
    }

    #[test]
    fn hydrogen_oracle_examples() {
        let ground = HydrogenState::atomic(1, 0).unwrap();
        assert_eq!(hydrogen_expval_oracle(&ground, -1).unwrap(), int(1));
        assert_eq!(hydrogen_expval_oracle(&ground, 1).unwrap(), rat(3, 2));
        let p = HydrogenState::atomic(2, 1).unwrap();
        assert_eq!(hydrogen_expval_oracle(&p, -2).unwrap(), rat(1, 12));
        assert_eq!(hydrogen_expval_oracle(&p, 1).unwrap(), int(5));
        assert_eq!(hydrogen_expval_oracle(&p, 2).unwrap(), int(30));
        assert!(hydrogen_expval_oracle(&p, -5).is_err());
    }

    fn half_grid() -> impl Strategy<Value = Rational> {
        prop::sample::select(vec![0i64, 1, 2, 3, 5]).prop_map(|t| rat(t, 2))
    }

    proptest! {
        #[test]
        fn moment_is_symmetric(
            d1 in 0u64..6, d2 in 0u64..6,
            alpha in half_grid(), beta in half_grid(),
            twice_a in -1i64..10,
        ) {
            let lhs = laguerre_moment_exact(&query(d1, d2, alpha.clone(), beta.clone(), twice_a)).unwrap();
            let rhs = laguerre_moment_exact(&query(d2, d1, beta, alpha, twice_a)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
