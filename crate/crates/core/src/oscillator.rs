//! Radial moments `<r^p>` of the n-dimensional isotropic harmonic oscillator.
//!
//! Natural units (`hbar = m = omega = 1`). A state is labelled by the
//! dimension `n`, the principal number `N` and the hyperangular number `K`
//! with `N - K` even; the radial function is a Laguerre polynomial of degree
//! `k = (N - K)/2` in `r^2`. Four routes compute the same moment:
//!
//! * [`expval_closed`]: gamma ratio times a terminating `3F2` at unit argument;
//! * [`expval_dual_hahn`]: a dual Hahn polynomial on the quadratic grid at `s = p/2`;
//! * [`expval_recurrence_range`]: the three-term recurrence in `p` with step 2;
//! * [`inversion_partner`]: the reflection `p -> -p-2`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::exact::{gamma_ratio, int, rat, ExactValue, HalfInteger, Rational};
use crate::polys::{dual_hahn, hyp3f2_unit, laguerre_f64, DualHahnParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OscillatorState {
    dim: u32,
    principal: u32,
    angular: u32,
}

impl OscillatorState {
    pub fn new(dim: u32, principal: u32, angular: u32) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidState("dimension n must be positive".into()));
        }
        if angular > principal {
            return Err(Error::InvalidState(format!("K = {angular} exceeds N = {principal}; need N ≥ K")));
        }
        if !(principal - angular).is_multiple_of(2) {
            return Err(Error::InvalidState(format!(
                "N−K must be even (N = {principal}, K = {angular})"
            )));
        }
        Ok(OscillatorState {
            dim,
            principal,
            angular,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// `N`
    pub fn principal(&self) -> u32 {
        self.principal
    }

    /// `K`
    pub fn angular(&self) -> u32 {
        self.angular
    }

    /// Laguerre degree `k = (N - K)/2`.
    pub fn radial_degree(&self) -> u64 {
        u64::from((self.principal - self.angular) / 2)
    }

    /// Laguerre parameter `K + n/2 - 1`.
    pub fn laguerre_alpha(&self) -> HalfInteger {
        HalfInteger::from_twice(2 * i64::from(self.angular) + i64::from(self.dim) - 2)
    }

    /// The hyperspherical construction degenerates in one dimension; `K ≥ 2`
    /// there is accepted but marked.
    pub fn is_nonphysical(&self) -> bool {
        self.dim == 1 && self.angular >= 2
    }

    /// `<r^p>` converges iff `p + n + 2K > 0`.
    pub fn converges(&self, p: i64) -> bool {
        p + self.convergence_offset() > 0
    }

    pub fn converges_real(&self, p: f64) -> bool {
        p + self.convergence_offset() as f64 > 0.0
    }

    fn convergence_offset(&self) -> i64 {
        i64::from(self.dim) + 2 * i64::from(self.angular)
    }

    fn require_convergent(&self, p: i64) -> Result<()> {
        if self.converges(p) {
            Ok(())
        } else {
            Err(Error::DivergentMoment(format!(
                "<r^{p}> diverges for {self}: need p + n + 2K > 0"
            )))
        }
    }

    /// All valid states with `n ≤ dim_max`, `N ≤ n_max`.
    pub fn enumerate(dim_max: u32, n_max: u32) -> Vec<OscillatorState> {
        let mut states = Vec::new();
        for dim in 1..=dim_max {
            for principal in 0..=n_max {
                for angular in (principal % 2..=principal).step_by(2) {
                    states.push(OscillatorState {
                        dim,
                        principal,
                        angular,
                    });
                }
            }
        }
        states
    }
}

impl fmt::Display for OscillatorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, N={}, K={})", self.dim, self.principal, self.angular)
    }
}

/// Which computation produced a moment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Closed,
    DualHahn,
    Recurrence,
    Inversion,
    OracleExact,
    OracleQuadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::DualHahn => "dual-hahn",
            Method::Recurrence => "recurrence",
            Method::Inversion => "inversion",
            Method::OracleExact => "oracle-exact",
            Method::OracleQuadrature => "oracle-quadrature",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Power {
    Int(i64),
    Real(f64),
}

impl fmt::Display for Power {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Power::Int(p) => write!(f, "{p}"),
            Power::Real(p) => write!(f, "{p:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentRecord {
    pub state: OscillatorState,
    pub p: Power,
    pub method: Method,
    pub exact: Option<ExactValue>,
    pub float: f64,
}

impl MomentRecord {
    pub fn exact(state: OscillatorState, p: i64, method: Method, value: ExactValue) -> Self {
        let float = value.to_f64();
        MomentRecord {
            state,
            p: Power::Int(p),
            method,
            exact: Some(value),
            float,
        }
    }

    pub fn float_only(state: OscillatorState, p: f64, method: Method, float: f64) -> Self {
        MomentRecord {
            state,
            p: Power::Real(p),
            method,
            exact: None,
            float,
        }
    }
}

/// Which third coefficient the recurrence uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RecurrenceMode {
    /// `p((p^2 - n^2)/4 - (K-1)(K+n-1))`, obtained from the dual Hahn difference
    /// equation; agrees with every other route.
    #[default]
    Derived,
    /// `p((p^2 - n^2)/4 - (K-1)(K+p-1))`, the historically printed form.
    Printed,
}

impl RecurrenceMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RecurrenceMode::Derived => "derived",
            RecurrenceMode::Printed => "paper-literal",
        }
    }
}

pub fn energy(state: &OscillatorState) -> Rational {
    int(i64::from(state.principal)) + rat(i64::from(state.dim), 2)
}

fn radial_norm(state: &OscillatorState) -> f64 {
    let k = state.radial_degree() as f64;
    let half_sum = f64::from(state.principal + state.angular + state.dim) / 2.0;
    (0.5 * (2.0f64.ln() + ln_gamma(k + 1.0) - ln_gamma(half_sum))).exp()
}

/// `R_NK(r)` without the Gaussian factor `exp(-r^2/2)`.
pub fn radial_polynomial_part(state: &OscillatorState, r: f64) -> f64 {
    let alpha = state.laguerre_alpha().to_f64();
    radial_norm(state) * r.powi(state.angular as i32) * laguerre_f64(state.radial_degree(), alpha, r * r)
}

/// Normalized radial function `R_NK(r)`, with `∫ R^2 r^(n-1) dr = 1`.
pub fn radial_eval(state: &OscillatorState, r: f64) -> f64 {
    (-0.5 * r * r).exp() * radial_polynomial_part(state, r)
}

fn moment_series(state: &OscillatorState, p: i64) -> Result<Rational> {
    let k = state.radial_degree() as i64;
    let lower_first = state.laguerre_alpha().to_rational() + Rational::one();
    hyp3f2_unit(
        [int(-k), rat(p, 2) + Rational::one(), -rat(p, 2)],
        [lower_first, Rational::one()],
    )
}

/// `<r^p>` as `Gamma(K+(n+p)/2)/Gamma(K+n/2) * 3F2(-k, p/2+1, -p/2; K+n/2, 1; 1)`.
pub fn expval_closed(state: &OscillatorState, p: i64) -> Result<ExactValue> {
    state.require_convergent(p)?;
    let base = state.laguerre_alpha() + HalfInteger::from_int(1);
    let prefactor = gamma_ratio(base + HalfInteger::from_twice(p), base)?;
    Ok(prefactor.scale(&moment_series(state, p)?))
}

/// Floating-point version of [`expval_closed`] for real `p`. The series still
/// terminates after `k + 1` terms.
pub fn expval_closed_real(state: &OscillatorState, p: f64) -> Result<f64> {
    if !state.converges_real(p) {
        return Err(Error::DivergentMoment(format!(
            "<r^{p}> diverges for {state}: need p + n + 2K > 0"
        )));
    }
    let base = state.laguerre_alpha().to_f64() + 1.0;
    let prefactor = float_gamma_ratio(base + p / 2.0, base);
    let k = state.radial_degree();
    let upper = [-(k as f64), p / 2.0 + 1.0, -p / 2.0];
    let lower = [base, 1.0];
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..k {
        let j = j as f64;
        term *= upper.iter().map(|u| u + j).product::<f64>() / (lower.iter().map(|l| l + j).product::<f64>() * (j + 1.0));
        sum += term;
    }
    Ok(prefactor * sum)
}

/// `Gamma(a)/Gamma(b)` in floating point; telescoped when `a - b` is a small
/// integer, log-gamma otherwise.
fn float_gamma_ratio(a: f64, b: f64) -> f64 {
    let diff = a - b;
    if diff == diff.round() && diff.abs() <= 64.0 {
        let steps = diff.abs() as u32;
        let (lo, inverted) = if diff >= 0.0 { (b, false) } else { (a, true) };
        let product: f64 = (0..steps).map(|i| lo + f64::from(i)).product();
        return if inverted { product.recip() } else { product };
    }
    (ln_gamma(a) - ln_gamma(b)).exp()
}

/// `<r^p>` through the dual Hahn polynomial `w_k^(0)(s(s+1), 0, 1-K-n/2)` at `s = p/2`.
pub fn expval_dual_hahn(state: &OscillatorState, p: i64) -> Result<ExactValue> {
    state.require_convergent(p)?;
    let base = state.laguerre_alpha() + HalfInteger::from_int(1);
    let top = HalfInteger::from_twice(
        i64::from(state.principal + state.angular + state.dim),
    );
    let prefactor = gamma_ratio(base + HalfInteger::from_twice(p), top)?;
    let params = DualHahnParams::new(
        Rational::zero(),
        Rational::one() - base.to_rational(),
        Rational::zero(),
        state.radial_degree(),
    );
    Ok(prefactor.scale(&dual_hahn(&params, &rat(p, 2))?))
}

/// Coefficient of `<r^(p-2)>` in the recurrence.
pub fn recurrence_coefficient(state: &OscillatorState, p: i64, mode: RecurrenceMode) -> Rational {
    let n = i64::from(state.dim);
    let big_k = i64::from(state.angular);
    let second = match mode {
        RecurrenceMode::Derived => (big_k - 1) * (big_k + n - 1),
        RecurrenceMode::Printed => (big_k - 1) * (big_k + p - 1),
    };
    int(p) * (rat(p * p - n * n, 4) - int(second))
}

/// `<r^(p+2)>` from `<r^p>` and `<r^(p-2)>`:
/// `(p+2)<r^(p+2)> = (p+1)(2N+n)<r^p> + C(p)<r^(p-2)>`.
pub fn recurrence_step(
    state: &OscillatorState,
    p: i64,
    prev: &ExactValue,
    prev2: &ExactValue,
    mode: RecurrenceMode,
) -> Result<ExactValue> {
    if p + 2 == 0 {
        return Err(Error::PreconditionViolated("recurrence step needs p ≠ −2".into()));
    }
    let growth = int((p + 1) * (2 * i64::from(state.principal) + i64::from(state.dim)));
    let coefficient = recurrence_coefficient(state, p, mode);
    let total = prev.scale(&growth).checked_add(&prev2.scale(&coefficient))?;
    Ok(total.scale(&rat(1, p + 2)))
}

/// `<r^(p-2)>` from `<r^p>` and `<r^(p+2)>`, the recurrence solved downward.
fn recurrence_step_down(
    state: &OscillatorState,
    p: i64,
    here: &ExactValue,
    above: &ExactValue,
    mode: RecurrenceMode,
) -> Result<ExactValue> {
    let coefficient = recurrence_coefficient(state, p, mode);
    if coefficient.is_zero() {
        return Err(Error::SingularRecurrence(p));
    }
    let growth = int((p + 1) * (2 * i64::from(state.principal) + i64::from(state.dim)));
    let numerator = above.scale(&int(p + 2)).checked_sub(&here.scale(&growth))?;
    Ok(numerator.scale(&coefficient.recip()))
}

/// `<r^(-2)> = 1/(K + n/2 - 1)`.
pub fn inverse_square_seed(state: &OscillatorState) -> Result<ExactValue> {
    state.require_convergent(-2)?;
    Ok(ExactValue::rational(state.laguerre_alpha().to_rational().recip()))
}

/// Runs one parity chain of the recurrence so that it covers `[lo, hi]`.
fn parity_chain(
    state: &OscillatorState,
    lo: i64,
    hi: i64,
    mode: RecurrenceMode,
) -> Result<BTreeMap<i64, ExactValue>> {
    let mut values = BTreeMap::new();
    // Seeds: the two lowest chain members needed to start stepping upward.
    // When the member below the first seed diverges its coefficient is zero.
    let (first, second, placeholder_below) = if lo.rem_euclid(2) == 0 {
        let below = if state.converges(-2) {
            inverse_square_seed(state)?
        } else {
            ExactValue::zero()
        };
        values.insert(0, ExactValue::one());
        if state.converges(-2) {
            values.insert(-2, below.clone());
        }
        (0, None, below)
    } else if state.converges(-1) {
        values.insert(-1, expval_closed(state, -1)?);
        values.insert(1, expval_closed(state, 1)?);
        (-1, Some(1), ExactValue::zero())
    } else {
        values.insert(1, expval_closed(state, 1)?);
        values.insert(3, expval_closed(state, 3)?);
        (1, Some(3), ExactValue::zero())
    };

    // upward
    let mut p = second.unwrap_or(first);
    while p < hi {
        let prev = values[&p].clone();
        let prev2 = values.get(&(p - 2)).cloned().unwrap_or_else(|| placeholder_below.clone());
        if !values.contains_key(&(p - 2)) && !recurrence_coefficient(state, p, mode).is_zero() {
            return Err(Error::DivergentMoment(format!(
                "recurrence at p = {p} needs the divergent <r^{}> for {state}",
                p - 2
            )));
        }
        let next = recurrence_step(state, p, &prev, &prev2, mode)?;
        values.insert(p + 2, next);
        p += 2;
    }

    // downward
    let mut p = *values.keys().next().expect("chain has seeds");
    while p - 2 >= lo {
        state.require_convergent(p - 2)?;
        let below = recurrence_step_down(state, p, &values[&p], &values[&(p + 2)], mode)?;
        values.insert(p - 2, below);
        p -= 2;
    }
    Ok(values)
}

/// Moments for every `p` in `[p_min, p_max]` generated by the recurrence.
///
/// The even chain starts from `<1> = 1` (and `<r^-2>` when it converges); the
/// odd chain starts from closed-form values at `p = -1, 1`, or `p = 1, 3` when
/// `<r^-1>` diverges.
pub fn expval_recurrence_range(
    state: &OscillatorState,
    p_min: i64,
    p_max: i64,
    mode: RecurrenceMode,
) -> Result<Vec<MomentRecord>> {
    if p_min > p_max {
        return Ok(Vec::new());
    }
    state.require_convergent(p_min)?;
    let mut out = Vec::new();
    let mut chains: [Option<BTreeMap<i64, ExactValue>>; 2] = [None, None];
    for p in p_min..=p_max {
        let parity = p.rem_euclid(2) as usize;
        if chains[parity].is_none() {
            let lo = if p_min.rem_euclid(2) as usize == parity { p_min } else { p_min + 1 };
            let hi = if p_max.rem_euclid(2) as usize == parity { p_max } else { p_max - 1 };
            chains[parity] = Some(parity_chain(state, lo, hi, mode)?);
        }
        let value = chains[parity].as_ref().and_then(|c| c.get(&p)).cloned().ok_or_else(|| {
            Error::PreconditionViolated(format!("recurrence chain does not reach p = {p}"))
        })?;
        out.push(MomentRecord::exact(*state, p, Method::Recurrence, value));
    }
    Ok(out)
}

/// `<r^(-p-2)> = Gamma(K+(n-p)/2-1)/Gamma(K+(n+p)/2) * <r^p>`.
pub fn inversion_partner(state: &OscillatorState, p: i64) -> Result<ExactValue> {
    state.require_convergent(p)?;
    state.require_convergent(-p - 2)?;
    let base = state.laguerre_alpha() + HalfInteger::from_int(1);
    let num = base - HalfInteger::from_twice(p) - HalfInteger::from_int(1);
    let den = base + HalfInteger::from_twice(p);
    Ok(&gamma_ratio(num, den)? * &expval_closed(state, p)?)
}
