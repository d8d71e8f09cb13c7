//! Threshold constants and window inequalities behind the MSTD-majority
//! guarantee: the collision constants `c1`, `c2`, the group constant
//! `c_j`, the flip-proportion condition, and its finite-group mass.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinat::{binomial, ratio};

/// Exact constants of the collision bound for a group with `j`
/// involutions in the abelian part.
#[derive(Clone, Debug)]
pub struct BoundParams {
    pub j: u64,
    /// Lower-bound constant `7/1152`.
    pub c1: BigRational,
    /// Upper-bound constant `(111 + 5j)/288`.
    pub c2: BigRational,
    /// `c_j² = c1/c2 = 7/(4(111 + 5j))`, kept exact so the defining
    /// identity can be checked without floats.
    pub cj_squared: BigRational,
    pub cj: f64,
    /// Smallest `n` with `c_j·sqrt(n) >= 6`, the floor under which the
    /// window is empty.
    pub n_min: u64,
}

pub fn bound_params(j: u64) -> BoundParams {
    assert!(j >= 1, "every dihedral group has the rotation involution count >= 1");
    let weight = 111 + 5 * j as i64;
    BoundParams {
        j,
        c1: ratio(7, 1152),
        c2: ratio(weight, 288),
        cj_squared: ratio(7, 4 * weight),
        cj: (7.0 / (4.0 * weight as f64)).sqrt(),
        n_min: (144 * (111 + 5 * j)).div_ceil(7),
    }
}

/// The rounded display form `1.3229/sqrt(111 + 5j)` of `c_j`.
pub fn cj_display(j: u64) -> f64 {
    1.3229 / (111.0 + 5.0 * j as f64).sqrt()
}

/// Flip counts the window argument relies on:
/// `ceil(5m/12) ..= floor(11m/12)`.
pub fn window_flip_range(m: u64) -> (u64, u64) {
    ((5 * m).div_ceil(12), 11 * m / 12)
}

/// The limit proportion of subsets whose flip count lands in the window.
#[derive(Clone, Debug)]
pub struct ProportionCheck {
    pub m: u64,
    /// `2^-m · Σ C(m, k)` over the window.
    pub value: BigRational,
    /// Whether the value exceeds `3/5`.
    pub pass: bool,
}

pub fn proportion_condition(m: u64) -> ProportionCheck {
    assert!(m >= 1);
    let (lo, hi) = window_flip_range(m);
    let mut mass = BigUint::zero();
    for k in lo..=hi {
        mass += binomial(m, k);
    }
    let total = BigUint::from(2u32).pow(m as u32);
    let pass = &mass * BigUint::from(5u32) > &total * BigUint::from(3u32);
    ProportionCheck {
        m,
        value: BigRational::new(mass.into(), total.into()),
        pass,
    }
}

/// Runs the proportion condition over `m_lo..=m_hi` with one
/// incrementally extended Pascal row and returns the first failing `m`.
pub fn proportion_sweep(m_lo: u64, m_hi: u64) -> Option<u64> {
    assert!(m_lo >= 1 && m_lo <= m_hi);
    let mut row: Vec<BigUint> = vec![BigUint::one()];
    let mut total = BigUint::one();
    for m in 1..=m_hi {
        row.push(BigUint::one());
        for k in (1..m as usize).rev() {
            let (left, right) = row.split_at_mut(k);
            right[0] += &left[k - 1];
        }
        total *= BigUint::from(2u32);
        if m < m_lo {
            continue;
        }
        let (lo, hi) = window_flip_range(m);
        let mut mass = BigUint::zero();
        for k in lo..=hi {
            mass += &row[k as usize];
        }
        if mass * BigUint::from(5u32) <= &total * BigUint::from(3u32) {
            return Some(m);
        }
    }
    None
}

/// Window mass at finite `n` against its large-`n` limit.
#[derive(Clone, Debug)]
pub struct MassCheck {
    pub n: u64,
    pub m: u64,
    /// `C(2n,m)^-1 · Σ C(n,k)C(n,m-k)` over the window.
    pub value: BigRational,
    /// The matching limit proportion.
    pub limit: BigRational,
    /// Whether the finite mass is at least the limit.
    pub dominates: bool,
}

pub fn finite_mass_condition(n: u64, m: u64) -> MassCheck {
    assert!(m >= 1 && m <= 2 * n);
    let (lo, hi) = window_flip_range(m);
    let mut mass = BigUint::zero();
    for k in lo..=hi.min(m) {
        if k <= n && m - k <= n {
            mass += binomial(n, k) * binomial(n, m - k);
        }
    }
    let value = BigRational::new(BigInt::from(mass), BigInt::from(binomial(2 * n, m)));
    let limit = proportion_condition(m).value;
    let dominates = value >= limit;
    MassCheck { n, m, value, limit, dominates }
}

/// Placement of `(n, m, j)` relative to the guarantee window
/// `6 <= m <= c_j·sqrt(n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowVerdict {
    pub n: u64,
    pub m: u64,
    pub j: u64,
    /// `m >= 6`.
    pub floor_ok: bool,
    /// `m <= c_j·sqrt(n)`, decided by the integer form
    /// `4(111+5j)m² <= 7n`.
    pub ceiling_ok: bool,
    pub inside: bool,
    pub cj_sqrt_n: f64,
    /// Inside the window the guarantee applies: most `m`-subsets are
    /// MSTD.
    pub predicts_mstd_majority: bool,
}

pub fn majority_window(n: u64, m: u64, j: u64) -> WindowVerdict {
    let params = bound_params(j);
    let floor_ok = m >= 6;
    let ceiling_ok =
        4 * (111 + 5 * u128::from(j)) * u128::from(m) * u128::from(m) <= 7 * u128::from(n);
    let inside = floor_ok && ceiling_ok;
    WindowVerdict {
        n,
        m,
        j,
        floor_ok,
        ceiling_ok,
        inside,
        cj_sqrt_n: params.cj * (n as f64).sqrt(),
        predicts_mstd_majority: inside,
    }
}
