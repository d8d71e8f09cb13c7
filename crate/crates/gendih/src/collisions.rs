//! Collision calculus: coincidences `ab = cd` among products of a subset,
//! the triple classes behind the expectation bound, and whole-group
//! collision totals.
//!
//! A quadruple `(a,b,c,d)` in `A^4` with `ab = cd` is a collision. Three
//! kinds are redundant because the naive product count already absorbs
//! them: the same pair twice, a swapped rotation pair, and four flips.
//! `X_A` is half the number of non-redundant collisions; the swap
//! `(a,b,c,d) -> (c,d,a,b)` is free of fixed points on them, so the half
//! is an integer.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::census::{sample_subset, trial_rng};
use crate::combinat::{binomial_i, binomial_u64, combination_unrank_colex, next_combination_colex};
use crate::group::GroupSpec;
use crate::setops::{ClassLabel, SubsetD};

/// Default ceiling on `(2n)^3` for whole-group triple enumeration.
pub const DEFAULT_TRIPLE_BUDGET: u64 = 1_000_000_000;
/// Default ceiling on `(2n²)^4` for the product-vs-cyclic comparison.
pub const DEFAULT_CROSS_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CollisionError {
    #[error("{work} elementary steps exceed the budget of {budget}")]
    BudgetExceeded { work: u128, budget: u64 },
    #[error("subset size {m} exceeds the dihedral order {order}")]
    SizeTooLarge { m: u64, order: u64 },
    #[error("sampling needs at least one trial")]
    NoTrials,
}

/// True when the colliding quadruple is one of the three trivial kinds.
pub fn is_redundant_quadruple(spec: &GroupSpec, q: [u64; 4]) -> bool {
    let n = spec.order();
    let [a, b, c, d] = q;
    (a, b) == (c, d)
        || (a < n && b < n && (c, d) == (b, a))
        || (a >= n && b >= n && c >= n && d >= n)
}

/// True when the triple `(a,b,c)` yields a redundant quadruple
/// `(a,b,c,c⁻¹ab)` for every completion.
pub fn is_redundant_triple(spec: &GroupSpec, t: [u64; 3]) -> bool {
    let n = spec.order();
    let [a, b, c] = t;
    a == c || (a >= n && b >= n && c >= n) || (b == c && a < n && b < n)
}

/// Ordered-pair product tallies for one subset, shared by the collision
/// counters.
struct ProductTallies {
    /// Count of ordered pairs per product index.
    counts: Vec<u64>,
    /// Count of ordered flip pairs per rotation product index.
    flip_counts: Vec<u64>,
    m: u64,
    rotations: u64,
    flips: u64,
}

impl ProductTallies {
    fn new(a: &SubsetD) -> Self {
        let spec = a.spec();
        let n = spec.order();
        let members = a.members();
        let mut counts = vec![0u64; (2 * n) as usize];
        for &x in &members {
            for &y in &members {
                counts[spec.mul_idx(x, y) as usize] += 1;
            }
        }
        let mut flip_counts = vec![0u64; n as usize];
        for &f in a.flips() {
            for &g in a.flips() {
                flip_counts[spec.mul_idx(f + n, g + n) as usize] += 1;
            }
        }
        ProductTallies {
            counts,
            flip_counts,
            m: a.size(),
            rotations: a.rotation_count(),
            flips: a.flip_count(),
        }
    }

    fn colliding_quadruples(&self) -> u64 {
        self.counts.iter().map(|&c| c * c).sum()
    }

    fn redundant_all_flips(&self) -> u64 {
        let raw: u64 = self.flip_counts.iter().map(|&c| c * c).sum();
        raw - self.flips * self.flips
    }

    fn doubled_xa(&self) -> u64 {
        self.colliding_quadruples()
            - self.m * self.m
            - self.rotations * self.rotations.saturating_sub(1)
            - self.redundant_all_flips()
    }
}

/// `X_A`: half the non-redundant collisions of `A`, in `O(m²)` products.
pub fn count_xa(a: &SubsetD) -> u64 {
    let doubled = ProductTallies::new(a).doubled_xa();
    debug_assert!(doubled % 2 == 0);
    doubled / 2
}

/// `X_A` by the defining quadruple loop, `O(m⁴)`. Oracle for [`count_xa`].
pub fn xa_from_quadruples(a: &SubsetD) -> u64 {
    let spec = a.spec();
    let members = a.members();
    let mut doubled = 0u64;
    for &x in &members {
        for &y in &members {
            let p = spec.mul_idx(x, y);
            for &z in &members {
                for &w in &members {
                    if spec.mul_idx(z, w) == p && !is_redundant_quadruple(spec, [x, y, z, w]) {
                        doubled += 1;
                    }
                }
            }
        }
    }
    debug_assert!(doubled % 2 == 0);
    doubled / 2
}

/// `X_A` by summing `χ` over non-redundant triples of `A`, `O(m³)`.
pub fn xa_from_triples(a: &SubsetD) -> u64 {
    let spec = a.spec();
    let n = spec.order();
    let members = a.members();
    let mut in_a = vec![false; (2 * n) as usize];
    for &x in &members {
        in_a[x as usize] = true;
    }
    let mut doubled = 0u64;
    for &x in &members {
        for &y in &members {
            let p = spec.mul_idx(x, y);
            for &z in &members {
                if is_redundant_triple(spec, [x, y, z]) {
                    continue;
                }
                let d = spec.mul_idx(spec.inv_idx(z), p);
                if in_a[d as usize] {
                    doubled += 1;
                }
            }
        }
    }
    debug_assert!(doubled % 2 == 0);
    doubled / 2
}

/// Largest number of distinct products the subset could have: `2rk` mixed
/// flips, `C(r,2) + r` rotation sums, and the exact flip-pair rotations
/// `|F+F|` when flips are present.
pub fn naive_sum_slots(a: &SubsetD) -> u64 {
    let r = a.rotation_count();
    let k = a.flip_count();
    let rot_slots = r * (r.saturating_sub(1)) / 2 + r;
    if k == 0 {
        rot_slots
    } else {
        let tallies = ProductTallies::new(a);
        let ff_size = tallies.flip_counts.iter().filter(|&&c| c > 0).count() as u64;
        2 * r * k + rot_slots + ff_size
    }
}

/// Sufficient condition for MSTD from the collision accounting:
/// `1 <= k < m` and `(m-k)(3k+3-m) > 2·X_A`.
pub fn mstd_guaranteed(m: u64, k: u64, xa: u64) -> bool {
    if k == 0 || k >= m {
        return false;
    }
    let (m, k, xa) = (m as i128, k as i128, xa as i128);
    (m - k) * (3 * k + 3 - m) > 2 * xa
}

/// The quadratic sufficient condition `3k² - 4mk + m² + 2·X_A <= 0`
/// (with `k < m`). Strictly stronger a hypothesis than
/// [`mstd_guaranteed`].
pub fn in_quadratic_window(m: u64, k: u64, xa: u64) -> bool {
    if k >= m {
        return false;
    }
    let (m, k, xa) = (m as i128, k as i128, xa as i128);
    3 * k * k - 4 * m * k + m * m + 2 * xa <= 0
}

/// Real endpoints of the quadratic window, `(2m ± sqrt(m² - 6·X_A)) / 3`,
/// when the discriminant is nonnegative.
pub fn quadratic_window_bounds(m: u64, xa: u64) -> Option<(f64, f64)> {
    let disc = (m as f64) * (m as f64) - 6.0 * xa as f64;
    if disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    Some(((2.0 * m as f64 - s) / 3.0, (2.0 * m as f64 + s) / 3.0))
}

/// Label a collision-free subset must have, assuming the difference side
/// is generic as well: pure flips and pure small rotation sets balance,
/// pure rotation sets of three or more lean MDTS, and mixed sets follow
/// the sign of `(m-k)(3k+3-m)`.
pub fn collision_free_label(m: u64, k: u64) -> ClassLabel {
    if m == 0 || k == m {
        return ClassLabel::Balanced;
    }
    if k == 0 {
        return if m <= 2 { ClassLabel::Balanced } else { ClassLabel::Mdts };
    }
    let margin = (m as i128 - k as i128) * (3 * k as i128 + 3 - m as i128);
    match margin.cmp(&0) {
        std::cmp::Ordering::Greater => ClassLabel::Mstd,
        std::cmp::Ordering::Equal => ClassLabel::Balanced,
        std::cmp::Ordering::Less => ClassLabel::Mdts,
    }
}

/// Full collision accounting for one subset.
#[derive(Clone, Debug)]
pub struct CollisionReport {
    pub size: u64,
    pub rotation_count: u64,
    pub flip_count: u64,
    pub xa: u64,
    pub colliding_quadruples: u64,
    pub redundant_same_pair: u64,
    pub redundant_rotation_swap: u64,
    pub redundant_all_flips: u64,
    pub naive_sum_slots: u64,
    pub sum_size: u64,
    pub diff_size: u64,
    pub label: ClassLabel,
    /// Predicted label when `X_A = 0`.
    pub collision_free_prediction: Option<ClassLabel>,
    pub mstd_guaranteed: bool,
    pub in_quadratic_window: bool,
}

impl CollisionReport {
    pub fn new(a: &SubsetD) -> Self {
        let tallies = ProductTallies::new(a);
        let doubled = tallies.doubled_xa();
        debug_assert!(doubled % 2 == 0);
        let xa = doubled / 2;
        let (m, k) = (a.size(), a.flip_count());
        let (sum_size, diff_size) = a.pair_sizes();
        CollisionReport {
            size: m,
            rotation_count: tallies.rotations,
            flip_count: k,
            xa,
            colliding_quadruples: tallies.colliding_quadruples(),
            redundant_same_pair: m * m,
            redundant_rotation_swap: tallies.rotations * tallies.rotations.saturating_sub(1),
            redundant_all_flips: tallies.redundant_all_flips(),
            naive_sum_slots: naive_sum_slots(a),
            sum_size,
            diff_size,
            label: a.classify(),
            collision_free_prediction: (xa == 0).then(|| collision_free_label(m, k)),
            mstd_guaranteed: mstd_guaranteed(m, k, xa),
            in_quadratic_window: in_quadratic_window(m, k, xa),
        }
    }
}

/// Exact triple-class counts for a whole group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleClassCounts {
    /// `counts[i]` is the size of class `i+1` of the seven-way split.
    pub counts: [u64; 7],
    pub redundant: u64,
}

impl TripleClassCounts {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.redundant
    }
}

/// Upper bounds for the seven class sizes: `7n³`, four times `4n²`,
/// `2nj`, `3nj`.
pub fn triple_class_bounds(n: u64, j: u64) -> [u64; 7] {
    [
        7 * n * n * n,
        4 * n * n,
        4 * n * n,
        4 * n * n,
        4 * n * n,
        2 * n * j,
        3 * n * j,
    ]
}

/// `n³ + 4n² - n`: redundant triples in a group of dihedral order `2n`.
pub fn redundant_triple_count(n: u64) -> u64 {
    n * n * n + 4 * n * n - n
}

/// Classifies every triple `(a,b,c)` of the whole group by the equality
/// pattern among `a`, `b`, `c` and `d = c⁻¹ab`.
pub fn triple_class_counts(
    spec: &GroupSpec,
    budget: u64,
) -> Result<TripleClassCounts, CollisionError> {
    let two_n = 2 * spec.order();
    let work = (two_n as u128).pow(3);
    if work > budget as u128 {
        return Err(CollisionError::BudgetExceeded { work, budget });
    }
    let folded = (0..two_n)
        .into_par_iter()
        .map(|a| {
            let mut counts = [0u64; 7];
            let mut redundant = 0u64;
            for b in 0..two_n {
                let ab = spec.mul_idx(a, b);
                for c in 0..two_n {
                    if is_redundant_triple(spec, [a, b, c]) {
                        redundant += 1;
                        continue;
                    }
                    let d = spec.mul_idx(spec.inv_idx(c), ab);
                    let class = if a == b {
                        if d == c {
                            6
                        } else {
                            1
                        }
                    } else if b == c {
                        if d == a {
                            5
                        } else {
                            2
                        }
                    } else if d == a {
                        3
                    } else if d == c {
                        4
                    } else {
                        0
                    };
                    counts[class] += 1;
                }
            }
            (counts, redundant)
        })
        .reduce(
            || ([0u64; 7], 0u64),
            |(mut ca, ra), (cb, rb)| {
                for (x, y) in ca.iter_mut().zip(cb) {
                    *x += y;
                }
                (ca, ra + rb)
            },
        );
    Ok(TripleClassCounts { counts: folded.0, redundant: folded.1 })
}

/// Exact `E[X_A]` over uniform `m`-subsets, from the triple classes:
/// classes needing 4, 3 and 2 distinct members weigh in with the matching
/// binomial coefficients.
pub fn expected_xa_from_classes(
    spec: &GroupSpec,
    m: u64,
    classes: &TripleClassCounts,
) -> BigRational {
    let two_n = (2 * spec.order()) as i64;
    let m = m as i64;
    let weight = |k: i64| BigInt::from(binomial_i(two_n - k, m - k));
    let t = &classes.counts;
    let mid = t[1] + t[2] + t[3] + t[4];
    let numerator = weight(4) * BigInt::from(t[0])
        + weight(3) * BigInt::from(mid)
        + weight(2) * BigInt::from(t[5] + t[6]);
    let denominator = BigInt::from(2) * BigInt::from(binomial_i(two_n, m));
    BigRational::new(numerator, denominator)
}

/// Exact `E[X_A]` by triple classification of the whole group.
pub fn expected_xa_exact(
    spec: &GroupSpec,
    m: u64,
    budget: u64,
) -> Result<BigRational, CollisionError> {
    if m > 2 * spec.order() {
        return Err(CollisionError::SizeTooLarge { m, order: 2 * spec.order() });
    }
    let classes = triple_class_counts(spec, budget)?;
    Ok(expected_xa_from_classes(spec, m, &classes))
}

/// Exact `E[X_A]` by enumerating every `m`-subset and averaging `X_A`.
/// Cross-check for [`expected_xa_exact`]; cost grows with `C(2n, m)`.
pub fn mean_xa_exhaustive(
    spec: &GroupSpec,
    m: u64,
    budget: u64,
) -> Result<BigRational, CollisionError> {
    let two_n = 2 * spec.order();
    if m > two_n {
        return Err(CollisionError::SizeTooLarge { m, order: two_n });
    }
    let total = match binomial_u64(two_n, m) {
        Some(t) if t <= budget => t,
        other => {
            let work = other
                .map(u128::from)
                .unwrap_or_else(|| u128::from(budget) + 1);
            return Err(CollisionError::BudgetExceeded { work, budget });
        }
    };

    let chunk_count = (rayon::current_num_threads() as u64 * 8).clamp(1, total);
    let chunk_size = total.div_ceil(chunk_count);
    let sum: u128 = (0..chunk_count)
        .into_par_iter()
        .map(|ci| {
            let start = ci * chunk_size;
            let end = (start + chunk_size).min(total);
            let mut acc = 0u128;
            if start >= end {
                return acc;
            }
            let mut combo = Vec::new();
            combination_unrank_colex(start, m as u32, &mut combo);
            for _ in start..end {
                let members: Vec<u64> = combo.iter().map(|&v| v as u64).collect();
                let subset = SubsetD::new(spec, members).expect("combination is in range");
                acc += u128::from(count_xa(&subset));
                if !next_combination_colex(&mut combo, two_n as u32) {
                    break;
                }
            }
            acc
        })
        .sum();
    Ok(BigRational::new(BigInt::from(sum), BigInt::from(total)))
}

/// Monte Carlo mean of `X_A` over uniform `m`-subsets.
#[derive(Clone, Copy, Debug)]
pub struct SampledMean {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
}

/// Samples `trials` subsets with per-trial streams keyed by `(seed,
/// trial)` and returns the mean `X_A` with its standard error.
pub fn mean_xa_sampled(
    spec: &GroupSpec,
    m: u64,
    trials: u64,
    seed: u64,
) -> Result<SampledMean, CollisionError> {
    let two_n = 2 * spec.order();
    if m > two_n {
        return Err(CollisionError::SizeTooLarge { m, order: two_n });
    }
    if trials == 0 {
        return Err(CollisionError::NoTrials);
    }
    const TRIALS_PER_CHUNK: u64 = 1024;
    let chunks = trials.div_ceil(TRIALS_PER_CHUNK);
    let (sum, sum_sq) = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * TRIALS_PER_CHUNK;
            let end = (start + TRIALS_PER_CHUNK).min(trials);
            let mut picks = Vec::with_capacity(m as usize);
            let (mut s, mut s2) = (0u128, 0u128);
            for trial in start..end {
                let mut rng = trial_rng(seed, trial);
                sample_subset(&mut rng, two_n, m, &mut picks);
                let subset =
                    SubsetD::new(spec, picks.iter().copied()).expect("sample is in range");
                let doubled = u128::from(2 * count_xa(&subset));
                s += doubled;
                s2 += doubled * doubled;
            }
            (s, s2)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    let t = trials as f64;
    let mean = sum as f64 / t / 2.0;
    let mean_sq = sum_sq as f64 / t / 4.0;
    let variance = if trials > 1 { (mean_sq - mean * mean) * t / (t - 1.0) } else { 0.0 };
    let std_error = (variance.max(0.0) / t).sqrt();
    Ok(SampledMean { mean, std_error, trials })
}

/// `(7/32 + 1/m + 5j/8m²) · m⁴/n`: the closed upper bound on `E[X_A]`.
pub fn expected_xa_bound(n: u64, j: u64, m: u64) -> f64 {
    assert!(m > 0, "bound needs m >= 1");
    let (n, j, m) = (n as f64, j as f64, m as f64);
    (7.0 / 32.0 + 1.0 / m + 5.0 * j / (8.0 * m * m)) * m.powi(4) / n
}

/// The simplified `c₂·m⁴/n` form with `c₂ = (111 + 5j)/288`, valid for
/// `m >= 6` where it dominates [`expected_xa_bound`].
pub fn expected_xa_bound_c2(n: u64, j: u64, m: u64) -> Option<f64> {
    if m < 6 {
        return None;
    }
    let c2 = (111.0 + 5.0 * (j as f64)) / 288.0;
    Some(c2 * (m as f64).powi(4) / (n as f64))
}

/// Unordered pairs `{a, b}` of `Z_M` (repetition allowed) with
/// `a + b = target`.
pub fn sum_pair_count_cyclic(modulus: u64, target: u64) -> u64 {
    let self_paired = if modulus % 2 == 1 {
        1
    } else if target % 2 == 0 {
        2
    } else {
        0
    };
    (modulus + self_paired) / 2
}

/// Unordered pairs of `Z_n × Z_n` with componentwise sum `(x, y)`.
pub fn sum_pair_count_product(n: u64, x: u64, y: u64) -> u64 {
    let self_paired = |t: u64| -> u64 {
        if n % 2 == 1 {
            1
        } else if t % 2 == 0 {
            2
        } else {
            0
        }
    };
    (n * n + self_paired(x) * self_paired(y)) / 2
}

/// Ordered pairs of an abelian group of the given order with a fixed
/// difference: one per choice of the subtrahend.
pub fn diff_pair_count(order: u64) -> u64 {
    order
}

/// Whole-group collision total: over every target, sum-pair counts are
/// squared, crossed with difference-pair counts, and difference-pair
/// counts squared. Rotation-rotation sum pairs commute and count
/// unordered; every other pair counts ordered.
pub fn collision_total(spec: &GroupSpec) -> u128 {
    let n = spec.order();
    let two_n = 2 * n;
    let mut sum_pairs = vec![0u64; two_n as usize];
    let mut diff_pairs = vec![0u64; two_n as usize];
    for a in 0..two_n {
        for b in 0..two_n {
            diff_pairs[spec.mul_idx(a, spec.inv_idx(b)) as usize] += 1;
            let both_rotations = a < n && b < n;
            if !both_rotations || a <= b {
                sum_pairs[spec.mul_idx(a, b) as usize] += 1;
            }
        }
    }
    sum_pairs
        .iter()
        .zip(&diff_pairs)
        .map(|(&s, &d)| {
            let (s, d) = (s as u128, d as u128);
            s * s + s * d + d * d
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossVerdict {
    Equal,
    ProductLarger,
    CyclicLarger,
}

/// Collision totals of `Dih(Z_n × Z_n)` versus `Dih(Z_{n²})`.
#[derive(Clone, Debug)]
pub struct CrossCollisionTotals {
    pub n: u64,
    pub product_total: u128,
    pub cyclic_total: u128,
    pub verdict: CrossVerdict,
}

/// Compares whole-group collision totals between the two dihedral groups
/// of order `2n²`. Equal exactly when `n` is odd.
pub fn cross_group_collision_totals(
    n: u32,
    budget: u64,
) -> Result<CrossCollisionTotals, CollisionError> {
    let order = 2 * u128::from(n) * u128::from(n);
    let work = order.pow(4);
    if work > u128::from(budget) {
        return Err(CollisionError::BudgetExceeded { work, budget });
    }
    let product = GroupSpec::parse(&format!("Z{n}xZ{n}")).expect("valid modulus");
    let cyclic = GroupSpec::cyclic(n * n).expect("valid modulus");
    let product_total = collision_total(&product);
    let cyclic_total = collision_total(&cyclic);
    let verdict = match product_total.cmp(&cyclic_total) {
        std::cmp::Ordering::Greater => CrossVerdict::ProductLarger,
        std::cmp::Ordering::Less => CrossVerdict::CyclicLarger,
        std::cmp::Ordering::Equal => CrossVerdict::Equal,
    };
    Ok(CrossCollisionTotals {
        n: n as u64,
        product_total,
        cyclic_total,
        verdict,
    })
}
