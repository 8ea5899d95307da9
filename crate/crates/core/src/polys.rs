//! Terminating hypergeometric series and the polynomial families built on them.
//!
//! Everything here works over exact rationals. The Hahn family lives on the
//! linear grid, the dual Hahn family on the quadratic grid `x(s) = s(s+1)`,
//! which is what makes `s -> -s-1` a symmetry of [`dual_hahn`].

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, is_nonpositive_integer, pochhammer, Rational};

/// Parameters of a `pFq(upper; lower; argument)` series.
#[derive(Debug, Clone, PartialEq)]
pub struct HypSeriesSpec {
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub argument: Rational,
}

impl HypSeriesSpec {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>, argument: Rational) -> Self {
        HypSeriesSpec {
            upper,
            lower,
            argument,
        }
    }

    /// Index of the last nonzero term: the smallest `|u|` over nonpositive
    /// integer upper parameters `u`.
    pub fn termination_index(&self) -> Option<u64> {
        self.upper
            .iter()
            .filter(|u| is_nonpositive_integer(u))
            .filter_map(|u| (-u.to_integer()).to_u64())
            .min()
    }

    fn check(&self) -> Result<u64> {
        let last = self.termination_index().ok_or(Error::NonTerminating)?;
        // (l)_j first vanishes at j = 1 - l
        for l in &self.lower {
            if is_nonpositive_integer(l) {
                let first_zero = (int(1) - l).to_integer().to_u64().unwrap_or(u64::MAX);
                if first_zero <= last {
                    return Err(Error::LowerParameterPole {
                        param: l.to_string(),
                        terminates_at: last,
                    });
                }
            }
        }
        Ok(last)
    }
}

/// Sums a terminating hypergeometric series exactly.
pub fn hyp_terminating(spec: &HypSeriesSpec) -> Result<Rational> {
    let last = spec.check()?;
    let mut sum = Rational::one();
    let mut term = Rational::one();
    for j in 0..last {
        let shift = int(j as i64);
        let mut num = spec.argument.clone();
        for u in &spec.upper {
            num *= u + &shift;
        }
        let mut den = int(j as i64 + 1);
        for l in &spec.lower {
            den *= l + &shift;
        }
        term = term * num / den;
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    Ok(sum)
}

/// Convenience wrapper for a `3F2(...; 1)`.
pub fn hyp3f2_unit(upper: [Rational; 3], lower: [Rational; 2]) -> Result<Rational> {
    hyp_terminating(&HypSeriesSpec::new(upper.to_vec(), lower.to_vec(), Rational::one()))
}

/// Generalized Laguerre polynomial `L_k^alpha(x)` by the three-term recurrence.
pub fn laguerre(k: u64, alpha: &Rational, x: &Rational) -> Rational {
    let mut prev = Rational::one();
    if k == 0 {
        return prev;
    }
    let mut cur = alpha + int(1) - x;
    for j in 1..k {
        let j_r = int(j as i64);
        let next = ((int(2) * &j_r + int(1) + alpha - x) * &cur - (&j_r + alpha) * &prev) / (&j_r + int(1));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Monomial coefficients `c_0..c_k` of `L_k^alpha`.
pub fn laguerre_coefficients(k: u64, alpha: &Rational) -> Vec<Rational> {
    (0..=k)
        .map(|i| {
            let sign = if i % 2 == 0 { int(1) } else { int(-1) };
            let rising = pochhammer(&(alpha + int(i as i64 + 1)), k - i);
            let den = Rational::from_integer(factorial(k - i) * factorial(i));
            sign * rising / den
        })
        .collect()
}

/// Floating-point `L_k^alpha(x)` for the radial wave functions.
pub fn laguerre_f64(k: u64, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = alpha + 1.0 - x;
    for j in 1..k {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Hahn polynomial `h_k^(alpha,beta)(x, N)`.
///
/// The gamma ratio `Gamma(N)/Gamma(N-k)` is taken as the finite product
/// `(N-1)(N-2)...(N-k)`, which stays meaningful for negative integer `N`.
pub fn hahn(k: u64, alpha: &Rational, beta: &Rational, x: &Rational, big_n: &Rational) -> Result<Rational> {
    let falling: Rational = (1..=k).map(|j| big_n - int(j as i64)).product();
    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    let prefactor = sign * falling * pochhammer(&(beta + int(1)), k) / Rational::from_integer(factorial(k));
    if k == 0 {
        return Ok(prefactor);
    }
    let series = hyp3f2_unit(
        [int(-(k as i64)), alpha + beta + int(k as i64 + 1), -x],
        [beta + int(1), int(1) - big_n],
    )?;
    Ok(prefactor * series)
}

/// Discrete Chebyshev polynomial `t_k(x, N) = h_k^(0,0)(x, N)`.
pub fn chebyshev_t(k: u64, x: &Rational, big_n: &Rational) -> Result<Rational> {
    hahn(k, &Rational::zero(), &Rational::zero(), x, big_n)
}

/// Parameters of `w_m^(c)(s(s+1), a, b)`. No classical positivity window is
/// imposed.
#[derive(Debug, Clone, PartialEq)]
pub struct DualHahnParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub m: u64,
}

impl DualHahnParams {
    pub fn new(a: Rational, b: Rational, c: Rational, m: u64) -> Self {
        DualHahnParams { a, b, c, m }
    }

    /// `sigma(s) = (s - a)(s + b)(s - c)`
    pub fn sigma(&self, s: &Rational) -> Rational {
        (s - &self.a) * (s + &self.b) * (s - &self.c)
    }
}

/// Dual Hahn polynomial evaluated at grid point `s`.
pub fn dual_hahn(params: &DualHahnParams, s: &Rational) -> Result<Rational> {
    let DualHahnParams { a, b, c, m } = params;
    let one = Rational::one();
    let lower = [&one + a - b, &one + a + c];
    let prefactor = pochhammer(&lower[0], *m) * pochhammer(&lower[1], *m) / Rational::from_integer(factorial(*m));
    if *m == 0 {
        return Ok(prefactor);
    }
    let series = hyp3f2_unit([int(-(*m as i64)), a - s, a + s + &one], lower)?;
    Ok(prefactor * series)
}

/// Left-hand side of the second-order difference equation on the quadratic
/// grid, written as a three-point recurrence in `s`, for an arbitrary `y`.
pub fn difference_equation_residual<F>(params: &DualHahnParams, s: &Rational, y: F) -> Result<Rational>
where
    F: Fn(&Rational) -> Result<Rational>,
{
    let one = Rational::one();
    let two = int(2);
    let nabla_x = &two * s;
    let delta_x = &two * s + &two;
    let nabla_x1 = &two * s + &one;
    let sigma_s = params.sigma(s);
    let sigma_reflected = params.sigma(&(-s - &one));
    let lambda = int(params.m as i64);

    let y_next = y(&(s + &one))?;
    let y_here = y(s)?;
    let y_prev = y(&(s - &one))?;

    let diagonal = lambda * &delta_x * &nabla_x * &nabla_x1 - &sigma_reflected * &nabla_x - &sigma_s * &delta_x;
    Ok(sigma_reflected * nabla_x * y_next + sigma_s * delta_x * y_prev + diagonal * y_here)
}

/// Residual of the dual Hahn difference equation; identically zero.
pub fn dual_hahn_equation_residual(params: &DualHahnParams, s: &Rational) -> Result<Rational> {
    difference_equation_residual(params, s, |t| dual_hahn(params, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn spec(upper: &[Rational], lower: &[Rational]) -> HypSeriesSpec {
        HypSeriesSpec::new(upper.to_vec(), lower.to_vec(), int(1))
    }

    #[test]
    fn series_examples() {
        assert_eq!(hyp_terminating(&spec(&[int(0), rat(7, 3)], &[rat(1, 2)])).unwrap(), int(1));
        assert_eq!(
            hyp_terminating(&spec(&[int(-1), int(2), int(-1)], &[rat(3, 2), int(1)])).unwrap(),
            rat(7, 3)
        );
        assert_eq!(hyp_terminating(&spec(&[int(-1), int(3)], &[int(5)])).unwrap(), rat(2, 5));
    }

    #[test]
    fn series_errors() {
        assert_eq!(
            hyp_terminating(&spec(&[rat(1, 2), int(3)], &[int(5)])),
            Err(Error::NonTerminating)
        );
        assert!(matches!(
            hyp_terminating(&spec(&[int(-3), int(1)], &[int(-1)])),
            Err(Error::LowerParameterPole { .. })
        ));
        // a lower pole beyond the last term is harmless
        assert!(hyp_terminating(&spec(&[int(-2), int(1)], &[int(-2)])).is_ok());
    }

    #[test]
    fn series_stops_at_smallest_terminating_parameter() {
        // 2F1(-1, -5; 1; 1) = 1 + 5 = 6
        assert_eq!(hyp_terminating(&spec(&[int(-5), int(-1)], &[int(1)])).unwrap(), int(6));
    }

    #[test]
    fn series_argument_is_used() {
        // 1F0(-2;;z) = (1 - z)^2
        let s = HypSeriesSpec::new(vec![int(-2)], vec![], rat(1, 3));
        assert_eq!(hyp_terminating(&s).unwrap(), rat(4, 9));
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(0, &rat(5, 2), &rat(9, 7)), int(1));
        assert_eq!(laguerre(1, &rat(5, 2), &rat(9, 7)), rat(5, 2) + int(1) - rat(9, 7));
        assert_eq!(laguerre(1, &rat(1, 2), &int(0)), rat(3, 2));
        assert_eq!(laguerre_coefficients(0, &rat(3, 2)), vec![int(1)]);
        assert_eq!(laguerre_coefficients(1, &rat(1, 2)), vec![rat(3, 2), int(-1)]);
        assert_eq!(laguerre_coefficients(2, &int(0)), vec![int(1), int(-2), rat(1, 2)]);
    }

    #[test]
    fn laguerre_float_tracks_exact() {
        for k in 0..10 {
            let exact = laguerre(k, &rat(3, 2), &rat(7, 4)).to_f64().unwrap();
            assert!((laguerre_f64(k, 1.5, 1.75) - exact).abs() < 1e-12 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn hahn_and_chebyshev_examples() {
        assert_eq!(hahn(0, &rat(1, 3), &int(2), &int(5), &int(-7)).unwrap(), int(1));
        assert_eq!(chebyshev_t(1, &int(2), &int(-3)).unwrap(), int(8));
        // t_1(n-l-1, -2l-1) = 2n at n = 3, l = 1
        assert_eq!(chebyshev_t(1, &int(1), &int(-3)).unwrap(), int(6));
        assert_eq!(chebyshev_t(0, &rat(9, 2), &int(11)).unwrap(), int(1));
        // (N-1)(N-2) at N = -1; the ground-state <r> = t_2(0,-1)/4 = 3/2 confirms it
        assert_eq!(chebyshev_t(2, &int(0), &int(-1)).unwrap(), int(6));
    }

    #[test]
    fn chebyshev_degree_two_closed_form() {
        // brute-force expansion of the k = 2 series: t_2 = (N-1)(N-2) [1 + 6x/(1-N) + 6x(x-1)/((1-N)(2-N))]
        for big_n in [-5i64, -3, -1, 7, 9] {
            for x in -3i64..6 {
                let (n, xf) = (int(big_n), int(x));
                let one = int(1);
                let expected = (&n - &one) * (&n - int(2))
                    * (&one + int(6) * &xf / (&one - &n)
                        + int(6) * &xf * (&xf - &one) / ((&one - &n) * (int(2) - &n)));
                assert_eq!(chebyshev_t(2, &xf, &n).unwrap(), expected);
            }
        }
    }

    fn forward_difference(values: &[Rational], order: usize) -> Vec<Rational> {
        let mut out = values.to_vec();
        for _ in 0..order {
            out = out.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        out
    }

    #[test]
    fn hahn_has_exact_degree() {
        let params = [(int(0), int(0), int(-9)), (rat(1, 2), rat(3, 2), int(12)), (int(2), rat(-1, 3), rat(-15, 2))];
        for (alpha, beta, big_n) in params {
            for k in 0..=6u64 {
                let values: Vec<Rational> = (0..(k as i64 + 2))
                    .map(|x| hahn(k, &alpha, &beta, &int(x), &big_n).unwrap())
                    .collect();
                let kth = forward_difference(&values, k as usize);
                assert!(kth.iter().all(|v| !v.is_zero()), "k={k}");
                assert!(forward_difference(&values, k as usize + 1).iter().all(Zero::is_zero), "k={k}");
            }
        }
    }

    #[test]
    fn dual_hahn_examples() {
        let p0 = DualHahnParams::new(rat(2, 3), rat(-5, 4), int(3), 0);
        assert_eq!(dual_hahn(&p0, &rat(11, 3)).unwrap(), int(1));

        let p1 = DualHahnParams::new(int(0), rat(-1, 2), int(0), 1);
        assert_eq!(dual_hahn(&p1, &int(1)).unwrap(), rat(7, 2));

        let p = DualHahnParams::new(rat(1, 3), rat(-7, 2), rat(2, 5), 4);
        let prefactor = pochhammer(&(int(1) + &p.a - &p.b), 4) * pochhammer(&(int(1) + &p.a + &p.c), 4) / int(24);
        assert_eq!(dual_hahn(&p, &p.a).unwrap(), prefactor);
    }

    #[test]
    fn residual_examples() {
        let constant = DualHahnParams::new(rat(3, 7), rat(-2, 5), rat(9, 4), 0);
        assert_eq!(dual_hahn_equation_residual(&constant, &rat(5, 11)).unwrap(), int(0));

        let p = DualHahnParams::new(int(0), rat(-3, 2), int(0), 2);
        assert_eq!(dual_hahn_equation_residual(&p, &rat(7, 3)).unwrap(), int(0));

        let wrong = DualHahnParams::new(int(0), rat(-3, 2), int(0), 1);
        let r = difference_equation_residual(&wrong, &rat(7, 3), |s| Ok(s * (s + int(1)))).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn residual_at_degenerate_grid_points() {
        let p = DualHahnParams::new(rat(1, 2), rat(-9, 4), rat(1, 3), 5);
        for s in [int(0), int(-1)] {
            assert_eq!(dual_hahn_equation_residual(&p, &s).unwrap(), int(0));
        }
    }

    fn nonintegral_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 2i64..13)
            .prop_map(|(n, d)| rat(n, d))
            .prop_filter("avoid integers", |r| !r.is_integer())
    }

    proptest! {
        #[test]
        fn laguerre_recurrence_matches_expansion(
            k in 0u64..=8,
            alpha_idx in 0usize..4,
            x in (-30i64..30, 1i64..9).prop_map(|(n, d)| rat(n, d)),
        ) {
            let alpha = [int(0), rat(1, 2), rat(3, 2), int(2)][alpha_idx].clone();
            let coeffs = laguerre_coefficients(k, &alpha);
            let mut power = int(1);
            let mut total = int(0);
            for c in &coeffs {
                total += c * &power;
                power *= &x;
            }
            prop_assert_eq!(laguerre(k, &alpha, &x), total);
        }

        #[test]
        fn dual_hahn_residual_vanishes(
            m in 0u64..=10,
            a in nonintegral_rational(),
            b in nonintegral_rational(),
            c in nonintegral_rational(),
            s in (-30i64..30, 1i64..8).prop_map(|(n, d)| rat(n, d)),
        ) {
            // keep 1+a-b and 1+a+c off the nonpositive integers
            prop_assume!(!(int(1) + &a - &b).is_integer() && !(int(1) + &a + &c).is_integer());
            let p = DualHahnParams::new(a, b, c, m);
            prop_assert_eq!(dual_hahn_equation_residual(&p, &s).unwrap(), int(0));
        }

        #[test]
        fn dual_hahn_is_symmetric_on_quadratic_grid(
            m in 0u64..=8,
            a in nonintegral_rational(),
            b in nonintegral_rational(),
            s in (-30i64..30, 1i64..8).prop_map(|(n, d)| rat(n, d)),
        ) {
            prop_assume!(!(int(1) + &a - &b).is_integer() && !(int(1) + &a).is_integer());
            let p = DualHahnParams::new(a, b, int(0), m);
            let reflected = -&s - int(1);
            prop_assert_eq!(dual_hahn(&p, &s).unwrap(), dual_hahn(&p, &reflected).unwrap());
        }
    }
}
