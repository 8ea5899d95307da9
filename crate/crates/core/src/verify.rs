//! Cross-validation harness.
//!
//! Each check runs one identity over a sweep of states and powers and counts
//! passes and failures. Two printed forms that disagree with every other
//! route are reproduced on fixed witness states and reported separately as
//! expected discrepancies; they only count as failures if the witness stops
//! reproducing.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{gamma_ratio, int, rat, ExactValue, HalfInteger, Rational};
use crate::hydrogen::{expval_neg, expval_pos, inversion_in4, kramers_pasternack_range, HydrogenState, NegativeMode};
use crate::oracle::{
    ho_expval_oracle, ho_expval_quadrature, hydrogen_expval_oracle, j_integral_formula, laguerre_moment_exact,
    quadrature_float, LaguerreMomentQuery,
};
use crate::oscillator::{
    energy, expval_closed, expval_closed_real, expval_dual_hahn, expval_recurrence_range,
    recurrence_step, OscillatorState, Power, RecurrenceMode,
};
use crate::polys::{dual_hahn_equation_residual, DualHahnParams};
use crate::sweep::Executor;

/// Relative tolerance between the floating closed form and the rounded exact value.
pub const FLOAT_PATH_TOL: f64 = 1e-12;
/// Tolerance between quadrature and the floating closed form at real powers.
pub const QUADRATURE_REAL_TOL: f64 = 1e-8;
/// Relative tolerance between quadrature and the exact moment oracle.
pub const QUADRATURE_EXACT_TOL: f64 = 1e-10;
/// Real powers used for the quadrature cross-check.
pub const REAL_POWERS: [f64; 3] = [-1.5, 0.5, 2.7];

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub dim_max: u32,
    pub n_max: u32,
    pub p_min: i64,
    pub p_max: i64,
    pub hydrogen_n_max: u32,
    pub hydrogen_k_max: u64,
    pub residual_samples: usize,
    pub seed: u64,
    pub executor: Executor,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            dim_max: 6,
            n_max: 12,
            p_min: -6,
            p_max: 10,
            hydrogen_n_max: 6,
            hydrogen_k_max: 8,
            residual_samples: 50,
            seed: 0x5eed_2009,
            executor: Executor::Parallel,
        }
    }
}

impl VerifyConfig {
    pub fn oscillator_states(&self) -> Vec<OscillatorState> {
        OscillatorState::enumerate(self.dim_max, self.n_max)
    }

    pub fn hydrogen_states(&self) -> Vec<HydrogenState> {
        HydrogenState::enumerate(self.hydrogen_n_max)
    }

    fn powers(&self) -> std::ops::RangeInclusive<i64> {
        self.p_min..=self.p_max
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: usize,
    pub counterexamples: Vec<String>,
}

impl CheckResult {
    pub fn failed(&self) -> usize {
        self.counterexamples.len()
    }

    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn from_outcomes(name: &'static str, outcomes: impl IntoIterator<Item = Outcome>) -> Self {
        let mut passed = 0;
        let mut counterexamples = Vec::new();
        for outcome in outcomes {
            match outcome {
                Outcome::Pass => passed += 1,
                Outcome::Fail(msg) => counterexamples.push(msg),
            }
        }
        CheckResult {
            name,
            passed,
            counterexamples,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedDiscrepancy {
    pub name: &'static str,
    pub witness: String,
    pub printed: String,
    pub reference: String,
    pub reproduced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub header: String,
    pub checks: Vec<CheckResult>,
    pub expected: Vec<ExpectedDiscrepancy>,
}

impl Report {
    pub fn unexpected_failures(&self) -> usize {
        self.checks.iter().map(CheckResult::failed).sum::<usize>()
            + self.expected.iter().filter(|d| !d.reproduced).count()
    }

    pub fn is_success(&self) -> bool {
        self.unexpected_failures() == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verification report");
        let _ = writeln!(out, "{}", self.header);
        let _ = writeln!(out);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for check in &self.checks {
            let tag = if check.ok() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "[{tag}] {:<width$}  passed {:>6}  failed {:>4}",
                check.name,
                check.passed,
                check.failed()
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "expected discrepancies (printed forms reproduced, not failures):");
        for d in &self.expected {
            let tag = if d.reproduced { "REPRODUCED" } else { "NOT REPRODUCED" };
            let _ = writeln!(
                out,
                "  [{tag}] {}: {} -> printed form {}, oracle {}",
                d.name, d.witness, d.printed, d.reference
            );
        }
        let failing: Vec<&CheckResult> = self.checks.iter().filter(|c| !c.ok()).collect();
        if !failing.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "counterexamples:");
            for check in failing {
                for ce in &check.counterexamples {
                    let _ = writeln!(out, "  {}: {ce}", check.name);
                }
            }
        }
        let total: usize = self.checks.iter().map(|c| c.passed + c.failed()).sum();
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "summary: {} checks, {} cases, {} unexpected failures",
            self.checks.len(),
            total,
            self.unexpected_failures()
        );
        out
    }
}

enum Outcome {
    Pass,
    Fail(String),
}

fn compare<T: PartialEq + std::fmt::Display>(context: impl FnOnce() -> String, lhs: &T, rhs: &T) -> Outcome {
    if lhs == rhs {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("{}: {lhs} ≠ {rhs}", context()))
    }
}

fn from_result<T>(context: impl FnOnce() -> String, result: crate::Result<T>, check: impl FnOnce(T) -> Outcome) -> Outcome {
    match result {
        Ok(value) => check(value),
        Err(e) => Outcome::Fail(format!("{}: error {e}", context())),
    }
}

fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Flattens per-state outcome lists produced by a (possibly parallel) map.
fn per_state<F>(config: &VerifyConfig, name: &'static str, f: F) -> CheckResult
where
    F: Fn(&OscillatorState) -> Vec<Outcome> + Sync + Send,
{
    let states = config.oscillator_states();
    let nested = config.executor.map(&states, |s| f(s));
    CheckResult::from_outcomes(name, nested.into_iter().flatten())
}

fn per_hydrogen_state<F>(config: &VerifyConfig, name: &'static str, f: F) -> CheckResult
where
    F: Fn(&HydrogenState) -> Vec<Outcome> + Sync + Send,
{
    let states = config.hydrogen_states();
    let nested = config.executor.map(&states, |s| f(s));
    CheckResult::from_outcomes(name, nested.into_iter().flatten())
}

/// closed form ≡ dual Hahn form
pub fn check_route_agreement(config: &VerifyConfig) -> CheckResult {
    per_state(config, "closed = dual-hahn", |s| {
        config
            .powers()
            .filter(|&p| s.converges(p))
            .map(|p| {
                let ctx = || format!("{s} p={p}");
                match (expval_closed(s, p), expval_dual_hahn(s, p)) {
                    (Ok(a), Ok(b)) => compare(ctx, &a, &b),
                    (a, b) => Outcome::Fail(format!("{}: {:?} / {:?}", ctx(), a.err(), b.err())),
                }
            })
            .collect()
    })
}

/// closed form ≡ direct integration
pub fn check_oracle_agreement(config: &VerifyConfig) -> CheckResult {
    per_state(config, "closed = oracle", |s| {
        config
            .powers()
            .filter(|&p| s.converges(p))
            .map(|p| {
                let ctx = || format!("{s} p={p}");
                match (expval_closed(s, p), ho_expval_oracle(s, p)) {
                    (Ok(a), Ok(b)) => compare(ctx, &a, &b),
                    (a, b) => Outcome::Fail(format!("{}: {:?} / {:?}", ctx(), a.err(), b.err())),
                }
            })
            .collect()
    })
}

/// Recurrence tables (derived coefficient) ≡ closed form, both parity chains.
pub fn check_recurrence(config: &VerifyConfig) -> CheckResult {
    per_state(config, "recurrence(derived) = closed", |s| {
        let lo = config.powers().find(|&p| s.converges(p));
        let Some(lo) = lo else { return Vec::new() };
        let ctx = || format!("{s} range {lo}..{}", config.p_max);
        match expval_recurrence_range(s, lo, config.p_max, RecurrenceMode::Derived) {
            Err(e) => vec![Outcome::Fail(format!("{}: error {e}", ctx()))],
            Ok(records) => records
                .into_iter()
                .map(|r| {
                    let Power::Int(p) = r.p else {
                        return Outcome::Fail(format!("{}: non-integer power", ctx()));
                    };
                    from_result(
                        || format!("{s} p={p}"),
                        expval_closed(s, p),
                        |closed| compare(|| format!("{s} p={p}"), r.exact.as_ref().unwrap_or(&ExactValue::zero()), &closed),
                    )
                })
                .collect(),
        }
    })
}

/// `<1> = 1`, `<r^-2> = 1/(K+n/2-1)` (n + 2K > 2), and `<r^-2>` independent of N.
pub fn check_initial_conditions(config: &VerifyConfig) -> CheckResult {
    let mut outcomes: Vec<Outcome> = per_state_outcomes(config, |s| {
        let mut out = vec![from_result(
            || format!("{s} <1>"),
            expval_closed(s, 0),
            |v| compare(|| format!("{s} <1>"), &v, &ExactValue::one()),
        )];
        if s.converges(-2) {
            let expected = ExactValue::rational(s.laguerre_alpha().to_rational().recip());
            out.push(from_result(
                || format!("{s} <r^-2>"),
                expval_closed(s, -2),
                |v| compare(|| format!("{s} <r^-2>"), &v, &expected),
            ));
        }
        out
    });
    let mut by_shell: BTreeMap<(u32, u32), Vec<(u32, ExactValue)>> = BTreeMap::new();
    for s in config.oscillator_states().iter().filter(|s| s.converges(-2)) {
        if let Ok(v) = expval_closed(s, -2) {
            by_shell.entry((s.dim(), s.angular())).or_default().push((s.principal(), v));
        }
    }
    for ((dim, k), values) in by_shell {
        let first = &values[0].1;
        for (big_n, v) in &values[1..] {
            outcomes.push(compare(|| format!("N-independence n={dim} K={k} N={big_n}"), v, first));
        }
    }
    CheckResult::from_outcomes("initial conditions <1>, <r^-2>", outcomes)
}

fn per_state_outcomes<F>(config: &VerifyConfig, f: F) -> Vec<Outcome>
where
    F: Fn(&OscillatorState) -> Vec<Outcome> + Sync + Send,
{
    let states = config.oscillator_states();
    config.executor.map(&states, |s| f(s)).into_iter().flatten().collect()
}

/// `<r^(-p-2)> = Gamma(K+(n-p)/2-1)/Gamma(K+(n+p)/2) <r^p>` wherever both converge.
pub fn check_inversion(config: &VerifyConfig) -> CheckResult {
    per_state(config, "inversion p -> -p-2", |s| {
        config
            .powers()
            .filter(|&p| s.converges(p) && s.converges(-p - 2))
            .map(|p| {
                let ctx = || format!("{s} p={p}");
                let base = s.laguerre_alpha() + HalfInteger::from_int(1);
                let lhs = expval_closed(s, -p - 2);
                let rhs = gamma_ratio(base - HalfInteger::from_twice(p) - HalfInteger::from_int(1), base + HalfInteger::from_twice(p))
                    .and_then(|g| Ok(&g * &expval_closed(s, p)?));
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) => compare(ctx, &a, &b),
                    (a, b) => Outcome::Fail(format!("{}: {:?} / {:?}", ctx(), a.err(), b.err())),
                }
            })
            .collect()
    })
}

/// `<r^2> = N + n/2`
pub fn check_virial(config: &VerifyConfig) -> CheckResult {
    per_state(config, "virial <r^2> = E_N", |s| {
        vec![from_result(
            || format!("{s}"),
            expval_closed(s, 2),
            |v| compare(|| format!("{s}"), &v, &ExactValue::rational(energy(s))),
        )]
    })
}

pub fn check_positivity(config: &VerifyConfig) -> CheckResult {
    per_state(config, "positivity", |s| {
        config
            .powers()
            .filter(|&p| s.converges(p))
            .map(|p| match expval_closed(s, p) {
                Ok(v) if v.is_positive() => Outcome::Pass,
                Ok(v) => Outcome::Fail(format!("{s} p={p}: {v} is not positive")),
                Err(e) => Outcome::Fail(format!("{s} p={p}: error {e}")),
            })
            .collect()
    })
}

fn random_nonintegral(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = rat(rng.random_range(-40..=40), rng.random_range(2..=12));
        if !r.is_integer() {
            return r;
        }
    }
}

/// Dual Hahn difference equation residual on random points and on the
/// oscillator family `a = c = 0, b = 1-K-n/2, s = p/2`.
pub fn check_difference_equation(config: &VerifyConfig) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cases = Vec::new();
    for m in 0..=10u64 {
        let mut drawn = 0;
        while drawn < config.residual_samples {
            let (a, b, c) = (random_nonintegral(&mut rng), random_nonintegral(&mut rng), random_nonintegral(&mut rng));
            let s = rat(rng.random_range(-30..=30), rng.random_range(1..=9));
            let one = int(1);
            if (&one + &a - &b).is_integer() || (&one + &a + &c).is_integer() {
                continue;
            }
            cases.push((DualHahnParams::new(a, b, c, m), s));
            drawn += 1;
        }
    }
    for state in config.oscillator_states() {
        let b = int(1) - (state.laguerre_alpha().to_rational() + int(1));
        for p in config.powers() {
            cases.push((
                DualHahnParams::new(int(0), b.clone(), int(0), state.radial_degree()),
                rat(p, 2),
            ));
        }
    }
    let outcomes = config.executor.map(&cases, |(params, s)| {
        let ctx = || format!("m={} a={} b={} c={} s={s}", params.m, params.a, params.b, params.c);
        from_result(ctx, dual_hahn_equation_residual(params, s), |r| {
            compare(|| format!("m={} a={} b={} c={} s={s}", params.m, params.a, params.b, params.c), &r, &int(0))
        })
    });
    CheckResult::from_outcomes("dual hahn difference equation", outcomes)
}

/// `<1/r> = Z/(a0 n^2)`, `<1> = 1`, both from the closed form and the oracle.
pub fn check_hydrogen_seeds(config: &VerifyConfig) -> CheckResult {
    per_hydrogen_state(config, "hydrogen <1/r>, <1>", |s| {
        let n = int(i64::from(s.n()));
        let inv_r = s.z() / (s.a0() * &n * &n);
        vec![
            compare(|| format!("{s} <1/r> closed"), &expval_pos(s, 0), &inv_r),
            compare(|| format!("{s} <1> closed"), &expval_pos(s, 1), &int(1)),
            from_result(|| format!("{s} <1/r> oracle"), hydrogen_expval_oracle(s, -1), |v| {
                compare(|| format!("{s} <1/r> oracle"), &v, &inv_r)
            }),
            from_result(|| format!("{s} <1> oracle"), hydrogen_expval_oracle(s, 0), |v| {
                compare(|| format!("{s} <1> oracle"), &v, &int(1))
            }),
        ]
    })
}

/// Kramers–Pasternack tables and the positive closed form ≡ oracle.
pub fn check_hydrogen_positive(config: &VerifyConfig) -> CheckResult {
    per_hydrogen_state(config, "hydrogen kramers-pasternack = oracle", |s| {
        let mut out = Vec::new();
        match kramers_pasternack_range(s, config.hydrogen_k_max) {
            Err(e) => out.push(Outcome::Fail(format!("{s}: error {e}"))),
            Ok(table) => {
                for (k, v) in table {
                    let q = k as i64;
                    out.push(from_result(|| format!("{s} <r^{q}>"), hydrogen_expval_oracle(s, q), |o| {
                        compare(|| format!("{s} <r^{q}> recurrence"), &v, &o)
                    }));
                    out.push(compare(|| format!("{s} <r^{q}> closed"), &expval_pos(s, k + 1), &v));
                }
            }
        }
        out
    })
}

/// Pasternack inversion ≡ oracle for `0 ≤ k ≤ 2l`.
pub fn check_hydrogen_inversion(config: &VerifyConfig) -> CheckResult {
    per_hydrogen_state(config, "hydrogen inversion = oracle", |s| {
        (0..=2 * u64::from(s.l()))
            .map(|k| {
                let q = -(k as i64) - 2;
                let ctx = || format!("{s} k={k} <r^{q}>");
                match (inversion_in4(s, k), hydrogen_expval_oracle(s, q)) {
                    (Ok(a), Ok(b)) => compare(ctx, &a, &b),
                    (a, b) => Outcome::Fail(format!("{}: {:?} / {:?}", ctx(), a.err(), b.err())),
                }
            })
            .collect()
    })
}

/// Parameter grid for the Laguerre product integral identity.
pub fn j_integral_grid() -> Vec<(u64, u64, Rational, Rational, Rational)> {
    let weights: Vec<Rational> = [0, 1, 2, 3, 5].iter().map(|&t| rat(t, 2)).collect();
    let shifts: Vec<Rational> = (0..=8).map(|t| rat(t, 2)).collect();
    let mut grid = Vec::new();
    for n1 in 0..=6u64 {
        for m1 in 0..=n1 {
            for alpha in &weights {
                for beta in &weights {
                    for s in &shifts {
                        grid.push((n1, m1, alpha.clone(), beta.clone(), s.clone()));
                    }
                }
            }
        }
    }
    grid
}

/// Closed form of the Laguerre product integral ≡ termwise expansion.
pub fn check_j_integral(config: &VerifyConfig) -> CheckResult {
    let grid = j_integral_grid();
    let outcomes = config.executor.map(&grid, |(n1, m1, alpha, beta, s)| {
        let ctx = || format!("n1={n1} m1={m1} alpha={alpha} beta={beta} s={s}");
        let exponent = HalfInteger::from_rational(&(alpha + s));
        let oracle = exponent.and_then(|a| {
            laguerre_moment_exact(&LaguerreMomentQuery::new(*n1, *m1, alpha.clone(), beta.clone(), a))
        });
        match (j_integral_formula(*n1, *m1, alpha, beta, s), oracle) {
            (Ok(a), Ok(b)) => compare(ctx, &a, &b),
            (a, b) => Outcome::Fail(format!("{}: {:?} / {:?}", ctx(), a.err(), b.err())),
        }
    });
    CheckResult::from_outcomes("laguerre integral formula = expansion", outcomes)
}

/// Floating closed form ≡ rounded exact value on integer powers.
pub fn check_float_path(config: &VerifyConfig) -> CheckResult {
    per_state(config, "float closed form = exact", |s| {
        config
            .powers()
            .filter(|&p| s.converges(p))
            .map(|p| {
                let ctx = || format!("{s} p={p}");
                match (expval_closed_real(s, p as f64), expval_closed(s, p)) {
                    (Ok(f), Ok(e)) => {
                        let gap = relative_gap(f, e.to_f64());
                        if gap <= FLOAT_PATH_TOL {
                            Outcome::Pass
                        } else {
                            Outcome::Fail(format!("{}: relative gap {gap:e} (float {f}, exact {e})", ctx()))
                        }
                    }
                    (a, b) => Outcome::Fail(format!("{}: {:?} / {:?}", ctx(), a.err(), b.err())),
                }
            })
            .collect()
    })
}

/// Quadrature ≡ floating closed form at real powers for states with `k ≤ 2`.
pub fn check_quadrature_real(config: &VerifyConfig) -> CheckResult {
    per_state(config, "quadrature = float closed form (real p)", |s| {
        if s.radial_degree() > 2 {
            return Vec::new();
        }
        REAL_POWERS
            .iter()
            .filter(|&&p| s.converges_real(p))
            .map(|&p| {
                let ctx = || format!("{s} p={p}");
                match (ho_expval_quadrature(s, p, 1e-11), expval_closed_real(s, p)) {
                    (Ok(q), Ok(c)) => {
                        let gap = (q - c).abs();
                        if gap <= QUADRATURE_REAL_TOL {
                            Outcome::Pass
                        } else {
                            Outcome::Fail(format!("{}: |{q} − {c}| = {gap:e}", ctx()))
                        }
                    }
                    (a, b) => Outcome::Fail(format!("{}: {:?} / {:?}", ctx(), a.err(), b.err())),
                }
            })
            .collect()
    })
}

/// Twenty fixed Laguerre moments: quadrature ≡ exact expansion.
pub fn quadrature_exact_cases() -> Vec<LaguerreMomentQuery> {
    let mut cases = Vec::new();
    for i in 0..20i64 {
        let deg1 = (i % 5) as u64;
        let deg2 = ((i * 3) % 4) as u64;
        let alpha = rat(i % 6, 2);
        let beta = rat((i + 3) % 5, 2);
        let twice_a = (i * 7) % 13 - 1;
        cases.push(LaguerreMomentQuery::new(deg1, deg2, alpha, beta, HalfInteger::from_twice(twice_a)));
    }
    cases
}

pub fn check_quadrature_exact(config: &VerifyConfig) -> CheckResult {
    let cases = quadrature_exact_cases();
    let outcomes = config.executor.map(&cases, |q| {
        let ctx = || format!("deg1={} deg2={} alpha={} beta={} a={}", q.deg1, q.deg2, q.alpha, q.beta, q.exponent_a);
        let exact = laguerre_moment_exact(q);
        let alpha = num_traits::ToPrimitive::to_f64(&q.alpha).unwrap_or(f64::NAN);
        let beta = num_traits::ToPrimitive::to_f64(&q.beta).unwrap_or(f64::NAN);
        let numeric = quadrature_float(
            |x| {
                crate::polys::laguerre_f64(q.deg1, alpha, x) * crate::polys::laguerre_f64(q.deg2, beta, x)
            },
            q.exponent_a.to_f64(),
            1e-12,
        );
        match (numeric, exact) {
            (Ok(f), Ok(e)) => {
                let reference = e.to_f64();
                let gap = if reference == 0.0 { f.abs() } else { relative_gap(f, reference) };
                if gap <= QUADRATURE_EXACT_TOL {
                    Outcome::Pass
                } else {
                    Outcome::Fail(format!("{}: quadrature {f}, exact {e} (gap {gap:e})", ctx()))
                }
            }
            (a, b) => Outcome::Fail(format!("{}: {:?} / {:?}", ctx(), a.err(), b.err())),
        }
    });
    CheckResult::from_outcomes("quadrature = exact moment", outcomes)
}

/// The printed oscillator recurrence coefficient on `(n=3, N=2, K=0)`:
/// it yields `<r^4> = 73/4` where every other route gives `75/4`.
pub fn recurrence_witness() -> ExpectedDiscrepancy {
    let state = OscillatorState::new(3, 2, 0).expect("valid witness state");
    let computed = (|| -> crate::Result<(ExactValue, ExactValue, ExactValue)> {
        let r2 = expval_closed(&state, 2)?;
        let printed = recurrence_step(&state, 2, &r2, &ExactValue::one(), RecurrenceMode::Printed)?;
        Ok((printed, expval_closed(&state, 4)?, ho_expval_oracle(&state, 4)?))
    })();
    match computed {
        Ok((printed, closed, oracle)) => {
            let reproduced = printed == ExactValue::rational(rat(73, 4))
                && closed == ExactValue::rational(rat(75, 4))
                && oracle == closed;
            ExpectedDiscrepancy {
                name: "oscillator recurrence, printed coefficient",
                witness: format!("{state} <r^4> (closed form {closed})"),
                printed: printed.to_string(),
                reference: oracle.to_string(),
                reproduced,
            }
        }
        Err(e) => ExpectedDiscrepancy {
            name: "oscillator recurrence, printed coefficient",
            witness: format!("{state} <r^4>"),
            printed: format!("error {e}"),
            reference: String::new(),
            reproduced: false,
        },
    }
}

/// The printed hydrogen negative-power closed form on `(n=2, l=1, k=0)`:
/// `<r^-2> = 1/4` against the oracle's `1/12`.
pub fn hydrogen_witness() -> ExpectedDiscrepancy {
    let state = HydrogenState::atomic(2, 1).expect("valid witness state");
    let computed = (|| -> crate::Result<(Rational, Rational, Rational)> {
        Ok((
            expval_neg(&state, 0, NegativeMode::Printed)?,
            expval_neg(&state, 0, NegativeMode::Consistent)?,
            hydrogen_expval_oracle(&state, -2)?,
        ))
    })();
    match computed {
        Ok((printed, consistent, oracle)) => ExpectedDiscrepancy {
            name: "hydrogen negative powers, printed closed form",
            witness: format!("{state} <r^-2> (inversion {consistent})"),
            printed: printed.to_string(),
            reference: oracle.to_string(),
            reproduced: printed == rat(1, 4) && oracle == rat(1, 12) && consistent == oracle,
        },
        Err(e) => ExpectedDiscrepancy {
            name: "hydrogen negative powers, printed closed form",
            witness: format!("{state} <r^-2>"),
            printed: format!("error {e}"),
            reference: String::new(),
            reproduced: false,
        },
    }
}

/// Runs every check.
pub fn run(config: &VerifyConfig) -> Report {
    let header = format!(
        "config: dim-max={} N-max={} p-range={}..{} hydrogen-n-max={} hydrogen-k-max={} residual-samples={} seed={:#x}",
        config.dim_max,
        config.n_max,
        config.p_min,
        config.p_max,
        config.hydrogen_n_max,
        config.hydrogen_k_max,
        config.residual_samples,
        config.seed
    );
    let checks = vec![
        check_route_agreement(config),
        check_oracle_agreement(config),
        check_recurrence(config),
        check_initial_conditions(config),
        check_inversion(config),
        check_virial(config),
        check_positivity(config),
        check_difference_equation(config),
        check_hydrogen_seeds(config),
        check_hydrogen_positive(config),
        check_hydrogen_inversion(config),
        check_j_integral(config),
        check_float_path(config),
        check_quadrature_real(config),
        check_quadrature_exact(config),
    ];
    Report {
        header,
        checks,
        expected: vec![recurrence_witness(), hydrogen_witness()],
    }
}
