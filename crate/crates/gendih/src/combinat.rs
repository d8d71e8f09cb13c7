//! Shared combinatorial plumbing: binomial coefficients in several numeric
//! flavours, colexicographic combination enumeration, compensated log-space
//! evaluation and Wilson score intervals.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `C(n, k)` as an exact big integer, `0` when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `C(n, k)` with signed arguments, `0` when `n < 0`, `k < 0` or `k > n`.
///
/// This is the combinatorial convention used throughout the closed-form
/// counts here: out-of-range binomials vanish instead of erroring.
pub fn binomial_i(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        BigUint::zero()
    } else {
        binomial(n as u64, k as u64)
    }
}

/// `C(n, k)` in a machine word, `None` on overflow. `0` when `k > n`.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Exact rational `num / den` from signed machine integers.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Writes the colex-first combination `{0, 1, .., k-1}` into `buf`.
pub fn first_combination(buf: &mut Vec<u32>, k: u32) {
    buf.clear();
    buf.extend(0..k);
}

/// Advances `buf` to the next `k`-combination of `{0, .., n-1}` in
/// colexicographic order. Returns `false` once the last combination
/// `{n-k, .., n-1}` has been passed.
pub fn next_combination_colex(buf: &mut [u32], n: u32) -> bool {
    let k = buf.len();
    for i in 0..k {
        let limit = if i + 1 < k { buf[i + 1] } else { n };
        if buf[i] + 1 < limit {
            buf[i] += 1;
            for (j, slot) in buf.iter_mut().enumerate().take(i) {
                *slot = j as u32;
            }
            return true;
        }
    }
    false
}

/// Writes the combination with colexicographic rank `rank` into `buf`.
///
/// The rank of `c_1 < c_2 < .. < c_k` is `sum_i C(c_i, i)`, so rank 0 is
/// `{0, .., k-1}` and ranks increase in the same order
/// [`next_combination_colex`] walks.
pub fn combination_unrank_colex(mut rank: u64, k: u32, buf: &mut Vec<u32>) {
    buf.clear();
    buf.resize(k as usize, 0);
    for i in (1..=k as u64).rev() {
        // Largest c with C(c, i) <= rank.
        let mut c = i - 1;
        let mut binom: u64 = 0; // C(i-1, i) = 0
        loop {
            // C(c+1, i) = C(c, i) * (c+1) / (c+1-i)
            let next = if binom == 0 {
                if c + 1 == i {
                    1
                } else {
                    0
                }
            } else {
                binom * (c + 1) / (c + 1 - i)
            };
            if next > rank {
                break;
            }
            c += 1;
            binom = next;
        }
        rank -= binom;
        buf[i as usize - 1] = c as u32;
    }
}

/// Runs `f` on every `k`-combination of `{0, .., n-1}` in colex order.
pub fn for_each_combination(n: u32, k: u32, mut f: impl FnMut(&[u32])) {
    if k > n {
        return;
    }
    let mut buf = Vec::new();
    first_combination(&mut buf, k);
    loop {
        f(&buf);
        if !next_combination_colex(&mut buf, n) {
            break;
        }
    }
}

/// Neumaier-compensated accumulator for long floating-point sums.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Table of `ln(i!)` built with compensated summation, accurate to a few
/// ulps even for arguments in the tens of thousands.
pub struct LogFactorials {
    table: Vec<f64>,
}

impl LogFactorials {
    /// Builds the table for arguments `0..=max`.
    pub fn new(max: u64) -> Self {
        let mut table = Vec::with_capacity(max as usize + 1);
        let mut acc = CompensatedSum::new();
        table.push(0.0);
        for i in 1..=max {
            acc.add((i as f64).ln());
            table.push(acc.value());
        }
        Self { table }
    }

    pub fn ln_factorial(&self, i: u64) -> f64 {
        self.table[i as usize]
    }

    /// `ln C(n, k)`; `None` when the binomial is zero.
    pub fn ln_binomial(&self, n: i64, k: i64) -> Option<f64> {
        if n < 0 || k < 0 || k > n {
            return None;
        }
        let (n, k) = (n as u64, k as u64);
        Some(self.ln_factorial(n) - self.ln_factorial(k) - self.ln_factorial(n - k))
    }
}

/// Natural log of a positive big integer, via the top 53 bits of mantissa.
pub fn ln_biguint(x: &BigUint) -> f64 {
    debug_assert!(!x.is_zero());
    let bits = x.bits();
    if bits <= 53 {
        (x.to_u64().unwrap() as f64).ln()
    } else {
        let shift = bits - 53;
        let head = (x >> shift).to_u64().unwrap() as f64;
        head.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Natural log of a positive rational.
pub fn ln_ratio(x: &BigRational) -> f64 {
    debug_assert!(x.is_positive());
    ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude())
}

/// Two-sided z-quantile for 95% coverage.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    assert!(trials > 0, "wilson interval needs at least one trial");
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}
