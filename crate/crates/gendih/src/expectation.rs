//! Probability kernels for uniform random subsets and the exact expected
//! difference set size over `Dih(Z_n)` for prime `n`.
//!
//! Everything reduces to four kernels on the cyclic part: a target
//! missing from `S+S`, from `S-S`, from a cross sum `S1+S2`, and the
//! hypergeometric flip-count mass. The difference side composes from
//! them in closed form; the sum side additionally needs a joint kernel
//! with no closed form, evaluated by enumeration over flip sets or by
//! Monte Carlo.

use num_bigint::{BigInt, BigUint};
use num_integer::gcd;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::census::{sample_subset, trial_rng};
use crate::combinat::{
    binomial, binomial_i, for_each_combination, ln_ratio, CompensatedSum, LogFactorials,
};
use crate::group::GroupSpec;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExpectationError {
    #[error("{n} is not prime, the closed form does not apply")]
    CompositeModulus { n: u64 },
    #[error("subset size {m} is outside 1..={max}")]
    SizeOutOfRange { m: u64, max: u64 },
    #[error("element probabilities need a plain cyclic group, got {spec}")]
    NotCyclic { spec: String },
    #[error(
        "joint kernel over C({n},{k}) flip sets is past the enumeration \
         limit and Monte Carlo is disabled"
    )]
    NeedsMonteCarlo { n: u64, k: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    Rational,
    Log,
}

/// A probability carried both ways: exact when the evaluation path
/// allowed it, and always as a natural log (`-inf` for zero).
#[derive(Clone, Debug)]
pub struct ProbabilityValue {
    pub exact: Option<BigRational>,
    pub log_value: f64,
    pub mode: EvalMode,
}

impl ProbabilityValue {
    fn from_counts(favorable: BigUint, total: BigUint) -> Self {
        assert!(!total.is_zero(), "probability needs a nonempty sample space");
        Self::from_rational(BigRational::new(favorable.into(), total.into()))
    }

    fn from_rational(exact: BigRational) -> Self {
        let log_value = if exact.is_zero() { f64::NEG_INFINITY } else { ln_ratio(&exact) };
        ProbabilityValue { exact: Some(exact), log_value, mode: EvalMode::Rational }
    }

    fn from_numeric(p: f64) -> Self {
        ProbabilityValue { exact: None, log_value: p.ln(), mode: EvalMode::Log }
    }

    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

/// Independent `k`-subsets of an `N`-cycle: no two picks cyclically
/// adjacent. `1` at `k = 0`, otherwise `N·C(N-1-k, k-1)/k`; the lone
/// vertex of a 1-cycle is its own neighbour, so `g(1, 1) = 0`.
pub fn g_nonadjacent(cycle_len: u64, k: u64) -> BigUint {
    assert!(cycle_len >= 1);
    if k == 0 {
        return BigUint::one();
    }
    let ways = BigUint::from(cycle_len)
        * binomial_i(cycle_len as i64 - 1 - k as i64, k as i64 - 1);
    ways / BigUint::from(k)
}

/// `P[i not in S+S]` for a uniform `t`-subset `S` of `Z_n`. The pairs
/// `{x, i-x}` partition the candidates; `S` may take at most one element
/// of each pair and none of the self-paired solutions of `2x = i`.
pub fn prob_missing_sum_cyclic(n: u64, i: u64, t: u64) -> ProbabilityValue {
    assert!(n >= 1 && i < n && t <= n);
    let free_pairs = if n % 2 == 0 {
        if i % 2 == 0 { n / 2 - 1 } else { n / 2 }
    } else {
        (n - 1) / 2
    };
    let favorable = BigUint::from(2u32).pow(t as u32) * binomial(free_pairs, t);
    ProbabilityValue::from_counts(favorable, binomial(n, t))
}

/// `P[i not in S-S]` for a uniform `k`-subset `S` of `Z_n`. The shift
/// graph of `i` splits into `gcd(i, n)` cycles of length `n/gcd(i, n)`
/// and `S` must be independent in each; the composition over cycles is
/// the `k`-th coefficient of the per-cycle polynomial raised to the
/// `gcd`-th power.
pub fn prob_missing_diff_cyclic(n: u64, i: u64, k: u64) -> ProbabilityValue {
    assert!(n >= 1 && i < n && k <= n);
    if i == 0 {
        let favorable = if k == 0 { BigUint::one() } else { BigUint::zero() };
        return ProbabilityValue::from_counts(favorable, binomial(n, k));
    }
    let d = gcd(i, n);
    let cycle = n / d;
    let per_cycle: Vec<BigUint> = (0..=cycle / 2).map(|t| g_nonadjacent(cycle, t)).collect();
    let favorable = poly_power_coefficient(&per_cycle, d, k as usize);
    ProbabilityValue::from_counts(favorable, binomial(n, k))
}

/// `P[i not in S1+S2]` for independent uniform subsets with `|S1| = mk`
/// and `|S2| = k`: `C(n-k, mk)/C(n, mk)`, the same for every target `i`.
pub fn prob_missing_cross_sum(n: u64, k: u64, mk: u64) -> ProbabilityValue {
    assert!(k <= n && mk <= n);
    ProbabilityValue::from_counts(binomial(n - k, mk), binomial(n, mk))
}

/// Hypergeometric mass of drawing `k` flips in a uniform `m`-subset of
/// the dihedral group over `Z_n`.
pub fn prob_k_flips(n: u64, m: u64, k: u64) -> ProbabilityValue {
    assert!(m <= 2 * n);
    let favorable = if k > m {
        BigUint::zero()
    } else {
        binomial(n, k) * binomial(n, m - k)
    };
    ProbabilityValue::from_counts(favorable, binomial(2 * n, m))
}

fn poly_mul_trunc(a: &[BigUint], b: &[BigUint], max_deg: usize) -> Vec<BigUint> {
    let len = (a.len() + b.len()).saturating_sub(1).min(max_deg + 1);
    let mut out = vec![BigUint::zero(); len];
    for (i, ai) in a.iter().enumerate().take(max_deg + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j > max_deg {
                break;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_power_coefficient(base: &[BigUint], mut power: u64, target: usize) -> BigUint {
    let mut result = vec![BigUint::one()];
    let mut square = base[..base.len().min(target + 1)].to_vec();
    while power > 0 {
        if power & 1 == 1 {
            result = poly_mul_trunc(&result, &square, target);
        }
        power >>= 1;
        if power > 0 {
            square = poly_mul_trunc(&square, &square, target);
        }
    }
    result.get(target).cloned().unwrap_or_default()
}

/// How to evaluate the joint flip kernel, which has no closed form.
#[derive(Clone, Copy, Debug)]
pub struct JointEval {
    /// Enumerate all flip sets while `n` is at most this.
    pub enumerate_up_to: u64,
    /// Monte Carlo trials past the limit; zero disables the fallback.
    pub mc_trials: u64,
    pub seed: u64,
}

impl Default for JointEval {
    fn default() -> Self {
        JointEval { enumerate_up_to: 12, mc_trials: 0, seed: 0 }
    }
}

/// `P[x not in S1+S2 and x not in S2-S1]` for independent uniform
/// subsets of `Z_n` with `|S1| = mk`, `|S2| = k`. Conditioned on `S2`
/// the rotation set must dodge `(x-S2) ∪ (S2-x)`, so the probability is
/// the mean of `C(n-u, mk)/C(n, mk)` over the forbidden-union size `u`.
pub fn prob_flip_missing_sum_joint(
    n: u64,
    k: u64,
    mk: u64,
    x: u64,
    eval: JointEval,
) -> Result<ProbabilityValue, ExpectationError> {
    assert!(n >= 1 && n <= 64 && k <= n && mk <= n && x < n);
    let forbidden_union = |combo: &[u32]| -> u64 {
        let mut mask = 0u64;
        for &s in combo {
            mask |= 1 << ((x + n - s as u64) % n);
            mask |= 1 << ((s as u64 + n - x) % n);
        }
        mask.count_ones() as u64
    };
    if n <= eval.enumerate_up_to {
        let mut favorable = BigUint::zero();
        for_each_combination(n as u32, k as u32, |combo| {
            favorable += binomial(n - forbidden_union(combo), mk);
        });
        return Ok(ProbabilityValue::from_counts(
            favorable,
            binomial(n, k) * binomial(n, mk),
        ));
    }
    if eval.mc_trials == 0 {
        return Err(ExpectationError::NeedsMonteCarlo { n, k });
    }
    let lf = LogFactorials::new(n);
    let ln_total = lf.ln_binomial(n as i64, mk as i64).expect("mk <= n");
    let mut mean = CompensatedSum::new();
    let mut picks = Vec::with_capacity(k as usize);
    for trial in 0..eval.mc_trials {
        let mut rng = trial_rng(eval.seed, trial);
        sample_subset(&mut rng, n, k, &mut picks);
        let combo: Vec<u32> = picks.iter().map(|&v| v as u32).collect();
        let u = forbidden_union(&combo);
        if let Some(ln_free) = lf.ln_binomial((n - u) as i64, mk as i64) {
            mean.add((ln_free - ln_total).exp());
        }
    }
    Ok(ProbabilityValue::from_numeric(mean.value() / eval.mc_trials as f64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Sum,
    Diff,
}

/// `P[element not in A±A]` for a uniform `m`-subset `A` of the dihedral
/// group over `Z_n`, composed from the kernels by conditioning on the
/// flip count. Exact except for the sum side of a flip past the
/// enumeration limit, which falls back to Monte Carlo when enabled.
pub fn prob_element_missing(
    spec: &GroupSpec,
    m: u64,
    element: u64,
    side: Side,
    eval: JointEval,
) -> Result<ProbabilityValue, ExpectationError> {
    if !spec.is_cyclic() || spec.is_truncated() {
        return Err(ExpectationError::NotCyclic { spec: spec.render() });
    }
    let n = spec.order();
    assert!(element < 2 * n);
    if m > 2 * n {
        return Err(ExpectationError::SizeOutOfRange { m, max: 2 * n });
    }

    let k_lo = m.saturating_sub(n);
    let k_hi = m.min(n);
    let flip_target = element.checked_sub(n);
    let numeric_joint = flip_target.is_some()
        && side == Side::Sum
        && n > eval.enumerate_up_to;
    if numeric_joint && eval.mc_trials == 0 {
        return Err(ExpectationError::NeedsMonteCarlo { n, k: k_hi });
    }

    let conditional = |k: u64| -> Result<ProbabilityValue, ExpectationError> {
        let mk = m - k;
        Ok(match (flip_target, side) {
            (None, Side::Diff) => ProbabilityValue::from_rational(
                prob_missing_diff_cyclic(n, element, mk).exact.unwrap()
                    * prob_missing_diff_cyclic(n, element, k).exact.unwrap(),
            ),
            (None, Side::Sum) => ProbabilityValue::from_rational(
                prob_missing_sum_cyclic(n, element, mk).exact.unwrap()
                    * prob_missing_diff_cyclic(n, element, k).exact.unwrap(),
            ),
            (Some(_), Side::Diff) => prob_missing_cross_sum(n, k, mk),
            (Some(x), Side::Sum) => prob_flip_missing_sum_joint(n, k, mk, x, eval)?,
        })
    };

    if numeric_joint {
        let mut total = CompensatedSum::new();
        for k in k_lo..=k_hi {
            let weight = prob_k_flips(n, m, k).value();
            total.add(weight * conditional(k)?.value());
        }
        Ok(ProbabilityValue::from_numeric(total.value()))
    } else {
        let mut total = BigRational::zero();
        for k in k_lo..=k_hi {
            let weight = prob_k_flips(n, m, k).exact.unwrap();
            total += weight * conditional(k)?.exact.unwrap();
        }
        Ok(ProbabilityValue::from_rational(total))
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `E[|A-A|]`, carried exactly when the rational path ran.
#[derive(Clone, Debug)]
pub struct ExpectationValue {
    pub exact: Option<BigRational>,
    pub value: f64,
    pub mode: EvalMode,
}

/// Exact `E[|A-A|]` for a uniform `m`-subset of the dihedral group over
/// `Z_n`, prime `n`. Rational arithmetic up to `n = 200`, log-space
/// beyond.
pub fn expected_diffset_size(n: u64, m: u64) -> Result<ExpectationValue, ExpectationError> {
    let mode = if n <= 200 { EvalMode::Rational } else { EvalMode::Log };
    expected_diffset_size_in(n, m, mode)
}

/// Same expectation with the evaluation mode pinned.
pub fn expected_diffset_size_in(
    n: u64,
    m: u64,
    mode: EvalMode,
) -> Result<ExpectationValue, ExpectationError> {
    check_curve_domain(n, m)?;
    match mode {
        EvalMode::Rational => Ok(diffset_size_rational(n, m)),
        EvalMode::Log => {
            let lf = LogFactorials::new(2 * n);
            Ok(diffset_size_log(n, m, &lf))
        }
    }
}

fn check_curve_domain(n: u64, m: u64) -> Result<(), ExpectationError> {
    if !is_prime(n) {
        return Err(ExpectationError::CompositeModulus { n });
    }
    if m < 1 || m > 2 * n {
        return Err(ExpectationError::SizeOutOfRange { m, max: 2 * n });
    }
    Ok(())
}

fn diffset_size_rational(n: u64, m: u64) -> ExpectationValue {
    let (ni, mi) = (n as i64, m as i64);
    let subsets = BigInt::from(binomial(2 * n, m));
    let head = BigInt::from(n * m)
        * BigInt::from(2u32).pow(m as u32)
        * BigInt::from(binomial(n, m))
        + BigInt::from(2 * n * (n - 1)) * BigInt::from(binomial_i(ni - mi - 1, mi - 1));
    let mut missing = BigRational::new(head, BigInt::from(m) * &subsets);
    let mut tail = BigRational::zero();
    for k in 1..m {
        let ki = k as i64;
        let ways = BigInt::from(binomial_i(ni + ki - mi - 1, mi - ki - 1))
            * BigInt::from(binomial_i(ni - ki - 1, ki - 1));
        if !ways.is_zero() {
            tail += BigRational::new(ways, BigInt::from(k * (m - k)));
        }
    }
    missing += BigRational::new(BigInt::from(n * n * (n - 1)), subsets) * tail;
    let exact = BigRational::from(BigInt::from(2 * n)) - missing;
    let value = exact.to_f64().expect("expected size is finite");
    ExpectationValue { exact: Some(exact), value, mode: EvalMode::Rational }
}

fn diffset_size_log(n: u64, m: u64, lf: &LogFactorials) -> ExpectationValue {
    let (ni, mi) = (n as i64, m as i64);
    let ln_subsets = lf.ln_binomial(2 * ni, mi).expect("m <= 2n");
    let mut missing = CompensatedSum::new();
    if let Some(ln_c) = lf.ln_binomial(ni, mi) {
        missing.add(((n as f64).ln() + m as f64 * std::f64::consts::LN_2 + ln_c - ln_subsets).exp());
    }
    if let Some(ln_c) = lf.ln_binomial(ni - mi - 1, mi - 1) {
        let scale = (2 * n * (n - 1)) as f64 / m as f64;
        missing.add((scale.ln() + ln_c - ln_subsets).exp());
    }
    let ln_lead = ((n * n) as f64 * (n - 1) as f64).ln();
    for k in 1..m {
        let ki = k as i64;
        if let (Some(a), Some(b)) = (
            lf.ln_binomial(ni + ki - mi - 1, mi - ki - 1),
            lf.ln_binomial(ni - ki - 1, ki - 1),
        ) {
            missing.add((ln_lead + a + b - ((k * (m - k)) as f64).ln() - ln_subsets).exp());
        }
    }
    ExpectationValue {
        exact: None,
        value: 2.0 * n as f64 - missing.value(),
        mode: EvalMode::Log,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub m: u64,
    pub expected_diff: f64,
}

/// `E[|A-A|]` sampled on a grid, with the first `m` whose expectation
/// reaches `n`.
#[derive(Clone, Debug)]
pub struct ExpectationCurve {
    pub n: u64,
    pub points: Vec<CurvePoint>,
    pub mode: EvalMode,
    /// Smallest `m >= 2` with `E[|A-A|] >= n`, when reached by `m_max`.
    pub crossing: Option<u64>,
}

/// Evaluates the expectation for every `m` in `2..=m_max`, keeps each
/// `step`-th point for the report, and scans all of them for the
/// crossing.
pub fn expectation_curve(
    n: u64,
    m_max: u64,
    step: u64,
) -> Result<ExpectationCurve, ExpectationError> {
    let m_max = m_max.min(2 * n).max(2);
    check_curve_domain(n, m_max)?;
    let mode = if n <= 200 { EvalMode::Rational } else { EvalMode::Log };
    let lf = match mode {
        EvalMode::Log => Some(LogFactorials::new(2 * n)),
        EvalMode::Rational => None,
    };
    let values: Vec<f64> = (2..=m_max)
        .into_par_iter()
        .map(|m| match &lf {
            Some(lf) => diffset_size_log(n, m, lf).value,
            None => diffset_size_rational(n, m).value,
        })
        .collect();
    let step = step.max(1);
    let points = values
        .iter()
        .enumerate()
        .filter(|(idx, _)| *idx as u64 % step == 0)
        .map(|(idx, &expected_diff)| CurvePoint { m: idx as u64 + 2, expected_diff })
        .collect();
    let crossing = values
        .iter()
        .position(|&v| v >= n as f64)
        .map(|idx| idx as u64 + 2);
    Ok(ExpectationCurve { n, points, mode, crossing })
}

/// `Σ_k C(n,k)·C(n-k,m-k) = 2^m·C(n,m)` in exact integers.
pub fn binomial_identity_holds(n: u64, m: u64) -> bool {
    assert!(m <= n);
    let mut total = BigUint::zero();
    for k in 0..=m {
        total += binomial(n, k) * binomial(n - k, m - k);
    }
    total == BigUint::from(2u32).pow(m as u32) * binomial(n, m)
}
