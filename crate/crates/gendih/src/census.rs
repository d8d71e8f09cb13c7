//! Censuses of `m`-subsets of a generalized dihedral group: how many are
//! MSTD, MDTS or balanced, per flip count `k` and in aggregate.
//!
//! Exhaustive censuses enumerate rotation and flip combinations in colex
//! order, split into contiguous rank chunks that are tallied independently
//! and merged, so results are identical for any thread count. Sampled
//! censuses draw each trial from its own counter-keyed ChaCha stream, which
//! makes them reproducible under parallelism too.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::combinat::{
    binomial, binomial_u64, combination_unrank_colex, first_combination, next_combination_colex,
    wilson_interval, Z_95,
};
use crate::group::GroupSpec;
use crate::setops::{
    label_of_sizes, pair_sizes_cyclic64, pair_sizes_product, ClassLabel, Scratch, SubsetD,
};

/// Default ceiling on the number of subsets an exhaustive census may
/// classify before refusing.
pub const DEFAULT_CLASSIFY_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error("census would classify {needed} subsets, over the budget of {budget}")]
    BudgetExceeded { needed: BigUint, budget: u64 },
    #[error("subset size {m} exceeds the dihedral order {order}")]
    SizeTooLarge { m: u64, order: u64 },
    #[error("sampling needs at least one trial")]
    NoTrials,
    #[error("count is defined for n >= 3, got {n}")]
    TooSmall { n: u64 },
}

/// Classification tallies for one bucket of subsets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassTally {
    pub total: u64,
    pub mstd: u64,
    pub mdts: u64,
    pub balanced: u64,
}

impl ClassTally {
    fn add(&mut self, label: ClassLabel) {
        self.total += 1;
        match label {
            ClassLabel::Mstd => self.mstd += 1,
            ClassLabel::Mdts => self.mdts += 1,
            ClassLabel::Balanced => self.balanced += 1,
        }
    }

    fn merge(mut self, other: ClassTally) -> ClassTally {
        self.total += other.total;
        self.mstd += other.mstd;
        self.mdts += other.mdts;
        self.balanced += other.balanced;
        self
    }
}

/// Tallies for one flip count `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub k: u64,
    pub tally: ClassTally,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
}

/// Census result: one row per feasible flip count, plus aggregates.
#[derive(Clone, Debug)]
pub struct CensusReport {
    pub spec: GroupSpec,
    pub m: u64,
    pub mode: CensusMode,
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    pub fn aggregate(&self) -> ClassTally {
        self.rows.iter().fold(ClassTally::default(), |acc, r| acc.merge(r.tally))
    }

    /// 95% Wilson interval for the MSTD proportion; sampled censuses only.
    pub fn wilson_mstd(&self) -> Option<(f64, f64)> {
        self.wilson_of(|t| t.mstd)
    }

    /// 95% Wilson interval for the MDTS proportion; sampled censuses only.
    pub fn wilson_mdts(&self) -> Option<(f64, f64)> {
        self.wilson_of(|t| t.mdts)
    }

    /// 95% Wilson interval for the MSTD share of the non-balanced subsets.
    pub fn wilson_mstd_among_unbalanced(&self) -> Option<(f64, f64)> {
        match self.mode {
            CensusMode::Exhaustive => None,
            CensusMode::Sampled { .. } => {
                let agg = self.aggregate();
                let unbalanced = agg.total - agg.balanced;
                if unbalanced == 0 {
                    None
                } else {
                    Some(wilson_interval(agg.mstd, unbalanced, Z_95))
                }
            }
        }
    }

    fn wilson_of(&self, pick: impl Fn(&ClassTally) -> u64) -> Option<(f64, f64)> {
        match self.mode {
            CensusMode::Exhaustive => None,
            CensusMode::Sampled { .. } => {
                let agg = self.aggregate();
                if agg.total == 0 {
                    None
                } else {
                    Some(wilson_interval(pick(&agg), agg.total, Z_95))
                }
            }
        }
    }
}

/// Classifies every `m`-subset with flip count in `k_range` (defaults to
/// all feasible `k`). Refuses when the subset count exceeds `budget`.
pub fn census_exhaustive(
    spec: &GroupSpec,
    m: u64,
    k_range: Option<(u64, u64)>,
    budget: u64,
) -> Result<CensusReport, CensusError> {
    let n = spec.order();
    if m > 2 * n {
        return Err(CensusError::SizeTooLarge { m, order: 2 * n });
    }
    let lo = k_range.map_or(0, |r| r.0).max(m.saturating_sub(n));
    let hi = k_range.map_or(m, |r| r.1).min(m).min(n);
    let ks: Vec<u64> = if lo <= hi { (lo..=hi).collect() } else { Vec::new() };

    let needed: BigUint = ks.iter().map(|&k| binomial(n, k) * binomial(n, m - k)).sum();
    if needed > BigUint::from(budget) {
        return Err(CensusError::BudgetExceeded { needed, budget });
    }

    let rows = ks
        .into_iter()
        .map(|k| CensusRow { k, tally: census_fixed_k(spec, m - k, k) })
        .collect();
    Ok(CensusReport { spec: spec.clone(), m, mode: CensusMode::Exhaustive, rows })
}

/// Tally of all subsets with `rot_count` rotations and `flip_count` flips.
fn census_fixed_k(spec: &GroupSpec, rot_count: u64, flip_count: u64) -> ClassTally {
    let n = spec.order();
    let rot_total = binomial_u64(n, rot_count)
        .expect("budget check keeps combination counts in range");
    let flip_total = binomial_u64(n, flip_count)
        .expect("budget check keeps combination counts in range");
    if rot_total == 0 || flip_total == 0 {
        return ClassTally::default();
    }

    let chunk_count = (rayon::current_num_threads() as u64 * 8).clamp(1, rot_total);
    let chunk_size = rot_total.div_ceil(chunk_count);
    let cyclic64 = spec.is_cyclic() && n <= 64;

    (0..chunk_count)
        .into_par_iter()
        .map(|ci| {
            let start = ci * chunk_size;
            let end = (start + chunk_size).min(rot_total);
            let mut tally = ClassTally::default();
            if start >= end {
                return tally;
            }
            let mut rot_buf = Vec::new();
            combination_unrank_colex(start, rot_count as u32, &mut rot_buf);
            let mut flip_buf = Vec::new();
            let mut members: Vec<u64> = Vec::new();
            let mut scratch = Scratch::new();
            for _ in start..end {
                if cyclic64 {
                    let rot_mask = rot_buf.iter().fold(0u64, |acc, &v| acc | 1 << v);
                    first_combination(&mut flip_buf, flip_count as u32);
                    loop {
                        let flip_mask = flip_buf.iter().fold(0u64, |acc, &v| acc | 1 << v);
                        let (s, d) = pair_sizes_cyclic64(n as u32, rot_mask, flip_mask);
                        tally.add(label_of_sizes(s as u64, d as u64));
                        if !next_combination_colex(&mut flip_buf, n as u32) {
                            break;
                        }
                    }
                } else {
                    members.clear();
                    members.extend(rot_buf.iter().map(|&v| v as u64));
                    let rot_len = members.len();
                    first_combination(&mut flip_buf, flip_count as u32);
                    loop {
                        members.truncate(rot_len);
                        members.extend(flip_buf.iter().map(|&v| v as u64 + n));
                        let (s, d) = pair_sizes_product(spec, &members, &mut scratch);
                        tally.add(label_of_sizes(s, d));
                        if !next_combination_colex(&mut flip_buf, n as u32) {
                            break;
                        }
                    }
                }
                if !next_combination_colex(&mut rot_buf, n as u32) {
                    break;
                }
            }
            tally
        })
        .reduce(ClassTally::default, ClassTally::merge)
}

/// Classifies `trials` uniform random `m`-subsets. Each trial uses its own
/// ChaCha stream keyed by `(seed, trial)`, so reports are reproducible and
/// independent of the thread count.
pub fn census_sampled(
    spec: &GroupSpec,
    m: u64,
    trials: u64,
    seed: u64,
) -> Result<CensusReport, CensusError> {
    let n = spec.order();
    if m > 2 * n {
        return Err(CensusError::SizeTooLarge { m, order: 2 * n });
    }
    if trials == 0 {
        return Err(CensusError::NoTrials);
    }
    let k_lo = m.saturating_sub(n);
    let k_hi = m.min(n);
    let width = (k_hi - k_lo + 1) as usize;
    let cyclic64 = spec.is_cyclic() && n <= 64;

    const TRIALS_PER_CHUNK: u64 = 4096;
    let chunks = trials.div_ceil(TRIALS_PER_CHUNK);
    let tallies = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * TRIALS_PER_CHUNK;
            let end = (start + TRIALS_PER_CHUNK).min(trials);
            let mut local = vec![ClassTally::default(); width];
            let mut picks: Vec<u64> = Vec::with_capacity(m as usize);
            let mut members: Vec<u64> = Vec::with_capacity(m as usize);
            let mut scratch = Scratch::new();
            for trial in start..end {
                let mut rng = trial_rng(seed, trial);
                sample_subset(&mut rng, 2 * n, m, &mut picks);
                let k = picks.iter().filter(|&&i| i >= n).count() as u64;
                let label = if cyclic64 {
                    let (mut rot_mask, mut flip_mask) = (0u64, 0u64);
                    for &i in &picks {
                        if i < n {
                            rot_mask |= 1 << i;
                        } else {
                            flip_mask |= 1 << (i - n);
                        }
                    }
                    let (s, d) = pair_sizes_cyclic64(n as u32, rot_mask, flip_mask);
                    label_of_sizes(s as u64, d as u64)
                } else {
                    members.clear();
                    members.extend_from_slice(&picks);
                    let (s, d) = pair_sizes_product(spec, &members, &mut scratch);
                    label_of_sizes(s, d)
                };
                local[(k - k_lo) as usize].add(label);
            }
            local
        })
        .reduce(
            || vec![ClassTally::default(); width],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect(),
        );

    let rows = tallies
        .into_iter()
        .enumerate()
        .map(|(i, tally)| CensusRow { k: k_lo + i as u64, tally })
        .collect();
    Ok(CensusReport {
        spec: spec.clone(),
        m,
        mode: CensusMode::Sampled { trials, seed },
        rows,
    })
}

/// ChaCha stream for one trial, keyed by `(seed, trial)` through a
/// SplitMix64 expansion. Consecutive trials get unrelated streams.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut state = seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        chunk.copy_from_slice(&z.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Uniform `m`-subset of `{0, .., universe-1}` by Floyd's algorithm.
pub fn sample_subset(rng: &mut impl Rng, universe: u64, m: u64, out: &mut Vec<u64>) {
    assert!(m <= universe);
    out.clear();
    for j in universe - m..universe {
        let t = rng.gen_range(0..=j);
        if out.contains(&t) {
            out.push(j);
        } else {
            out.push(t);
        }
    }
}

/// What the large-subset saturation arguments claim about one subset.
///
/// If `max(|R|, |F|) > n/2` then every rotation lies in both `A+A` and
/// `A-A`, which rules MDTS out. If `m > n` then `A+A = A-A = Dih(G)` and
/// the subset is balanced.
#[derive(Clone, Debug)]
pub struct StructuralReport {
    pub size: u64,
    pub rotation_count: u64,
    pub flip_count: u64,
    /// `max(|R|, |F|) > n/2`.
    pub half_hypothesis: bool,
    /// `m > n`.
    pub oversize_hypothesis: bool,
    pub all_rotations_in_sum: bool,
    pub all_rotations_in_diff: bool,
    pub sum_full: bool,
    pub diff_full: bool,
    pub label: ClassLabel,
}

impl StructuralReport {
    /// True when every conclusion whose hypothesis applies actually holds.
    pub fn conclusions_hold(&self) -> bool {
        let half_ok = !self.half_hypothesis
            || (self.all_rotations_in_sum
                && self.all_rotations_in_diff
                && self.label != ClassLabel::Mdts);
        let oversize_ok = !self.oversize_hypothesis
            || (self.sum_full && self.diff_full && self.label == ClassLabel::Balanced);
        half_ok && oversize_ok
    }
}

/// Evaluates the saturation hypotheses and conclusions for one subset.
pub fn verify_structural(a: &SubsetD) -> StructuralReport {
    let n = a.spec().order();
    let sum = a.sumset();
    let diff = a.diffset();
    let label = label_of_sizes(sum.len(), diff.len());
    StructuralReport {
        size: a.size(),
        rotation_count: a.rotation_count(),
        flip_count: a.flip_count(),
        half_hypothesis: 2 * a.rotation_count().max(a.flip_count()) > n,
        oversize_hypothesis: a.size() > n,
        all_rotations_in_sum: sum.has_all_rotations(),
        all_rotations_in_diff: diff.has_all_rotations(),
        sum_full: sum.is_full(),
        diff_full: diff.is_full(),
        label,
    }
}

/// Closed-form and exhaustive counts of MSTD 3-subsets with exactly two
/// flips in `Dih(Z_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct M3K2Counts {
    pub n: u64,
    pub closed_form: u64,
    pub exhaustive: u64,
}

/// How many of the `n·C(n,2)` subsets `{rotation, flip, flip}` of
/// `Dih(Z_n)` are MSTD, in closed form. Defined for `n >= 3`.
///
/// A set `{r^i, r^j s, r^k s}` fails to be MSTD exactly when its sum and
/// difference flips coincide: either `2i = 0` (one rotation for odd `n`,
/// two for even, costing `C(n,2)` balanced sets each), or `4 | n` with
/// `2i = j-k = n/2` (another `n` sets). Everything else is MSTD; MDTS
/// never occurs in this family.
pub fn m3k2_mstd_closed_form(n: u64) -> Result<u64, CensusError> {
    if n < 3 {
        return Err(CensusError::TooSmall { n });
    }
    let total = n * (n * (n - 1) / 2);
    let involution_rotations = if n % 2 == 0 { 2 } else { 1 };
    let crossed = if n % 4 == 0 { n } else { 0 };
    Ok(total - involution_rotations * (n * (n - 1) / 2) - crossed)
}

/// Computes [`m3k2_mstd_closed_form`] alongside the exhaustive census count
/// it predicts.
pub fn m3k2_counts(n: u64) -> Result<M3K2Counts, CensusError> {
    let closed_form = m3k2_mstd_closed_form(n)?;
    let spec = GroupSpec::cyclic(n as u32).expect("n >= 3 is a valid modulus");
    let report = census_exhaustive(&spec, 3, Some((2, 2)), DEFAULT_CLASSIFY_BUDGET)?;
    let exhaustive = report.aggregate().mstd;
    Ok(M3K2Counts { n, closed_form, exhaustive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::binomial;

    fn spec(expr: &str) -> GroupSpec {
        GroupSpec::parse(expr).unwrap()
    }

    #[test]
    fn census_of_pairs_in_d6() {
        let report = census_exhaustive(&spec("Z3"), 2, None, 10_000).unwrap();
        let by_k: Vec<(u64, ClassTally)> =
            report.rows.iter().map(|r| (r.k, r.tally)).collect();
        assert_eq!(by_k.len(), 3);
        // Two rotations: always balanced.
        assert_eq!(by_k[0].1, ClassTally { total: 3, mstd: 0, mdts: 0, balanced: 3 });
        // Rotation+flip: MSTD unless the rotation is the identity.
        assert_eq!(by_k[1].1, ClassTally { total: 9, mstd: 6, mdts: 0, balanced: 3 });
        // Two flips: always balanced.
        assert_eq!(by_k[2].1, ClassTally { total: 3, mstd: 0, mdts: 0, balanced: 3 });

        let agg = report.aggregate();
        assert_eq!(agg, ClassTally { total: 15, mstd: 6, mdts: 0, balanced: 9 });
        assert_eq!(report.wilson_mstd(), None, "no CI for exhaustive mode");
    }

    #[test]
    fn census_totals_match_binomials() {
        for (expr, m) in [("Z5", 3), ("Z6", 4), ("Z2xZ3", 3), ("Z4xZ2", 2)] {
            let g = spec(expr);
            let report = census_exhaustive(&g, m, None, 1_000_000).unwrap();
            for row in &report.rows {
                let expect = binomial(g.order(), row.k) * binomial(g.order(), m - row.k);
                assert_eq!(BigUint::from(row.tally.total), expect);
            }
            let total: BigUint = BigUint::from(report.aggregate().total);
            assert_eq!(total, binomial(g.dihedral_order(), m), "Vandermonde check");
        }
    }

    #[test]
    fn k_range_restricts_rows() {
        let report = census_exhaustive(&spec("Z5"), 3, Some((2, 2)), 10_000).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].k, 2);
        // The 10 sets with the identity rotation are balanced, rest MSTD.
        assert_eq!(report.rows[0].tally.total, 50);
        assert_eq!(report.rows[0].tally.mstd, 40);
        assert_eq!(report.rows[0].tally.balanced, 10);
        assert_eq!(report.rows[0].tally.mdts, 0);
    }

    #[test]
    fn budget_is_enforced() {
        let err = census_exhaustive(&spec("Z20"), 10, None, 1000).unwrap_err();
        match err {
            CensusError::BudgetExceeded { needed, budget } => {
                assert_eq!(budget, 1000);
                assert_eq!(needed, binomial(40, 10));
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(matches!(
            census_exhaustive(&spec("Z3"), 7, None, 10_000),
            Err(CensusError::SizeTooLarge { .. })
        ));
    }

    #[test]
    fn exhaustive_census_is_deterministic() {
        let a = census_exhaustive(&spec("Z7"), 4, None, 1_000_000).unwrap();
        let b = census_exhaustive(&spec("Z7"), 4, None, 1_000_000).unwrap();
        assert_eq!(a.rows, b.rows);
    }

    #[test]
    fn sampled_census_is_reproducible_and_complete() {
        let g = spec("Z11");
        let a = census_sampled(&g, 5, 20_000, 42).unwrap();
        let b = census_sampled(&g, 5, 20_000, 42).unwrap();
        assert_eq!(a.rows, b.rows);
        let c = census_sampled(&g, 5, 20_000, 43).unwrap();
        assert_ne!(a.rows, c.rows, "different seed, different sample");
        assert_eq!(a.aggregate().total, 20_000);
        assert!(matches!(
            census_sampled(&g, 23, 10, 1),
            Err(CensusError::SizeTooLarge { .. })
        ));
        assert!(matches!(census_sampled(&g, 2, 0, 1), Err(CensusError::NoTrials)));
    }

    #[test]
    fn sampled_census_tracks_the_exhaustive_one() {
        // Proportions agree within 3 sigma on D14, m = 4.
        let g = spec("Z7");
        let exact = census_exhaustive(&g, 4, None, 10_000).unwrap().aggregate();
        let sampled = census_sampled(&g, 4, 100_000, 7).unwrap().aggregate();
        let total = exact.total as f64;
        for (e, s) in [
            (exact.mstd, sampled.mstd),
            (exact.mdts, sampled.mdts),
            (exact.balanced, sampled.balanced),
        ] {
            let p = e as f64 / total;
            let trials = sampled.total as f64;
            let sigma = (p * (1.0 - p) / trials).sqrt();
            let observed = s as f64 / trials;
            assert!(
                (observed - p).abs() <= 3.0 * sigma + 1e-12,
                "sampled {observed} vs exact {p} (sigma {sigma})"
            );
        }
    }

    #[test]
    fn trial_streams_are_independent_of_order() {
        let mut a = Vec::new();
        sample_subset(&mut trial_rng(9, 5), 20, 6, &mut a);
        let mut b = Vec::new();
        sample_subset(&mut trial_rng(9, 5), 20, 6, &mut b);
        assert_eq!(a, b);
        let mut c = Vec::new();
        sample_subset(&mut trial_rng(9, 6), 20, 6, &mut c);
        assert_ne!(a, c);

        let mut sorted = a.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 6, "samples are distinct");
    }

    #[test]
    fn structural_conclusions_hold_for_small_groups() {
        // Exhaustive over every subset of Dih(Z_n) for n <= 4: whenever a
        // hypothesis applies, its conclusion holds.
        for n in 1..=4u64 {
            let g = GroupSpec::cyclic(n as u32).unwrap();
            let two_n = 2 * n;
            for bits in 0u32..(1 << two_n) {
                let members: Vec<u64> =
                    (0..two_n).filter(|&i| bits >> i & 1 == 1).collect();
                let a = SubsetD::new(&g, members).unwrap();
                let report = verify_structural(&a);
                assert!(report.conclusions_hold(), "n={n} bits={bits:b}");
            }
        }
    }

    #[test]
    fn oversized_subsets_saturate() {
        // m > n forces A+A = A-A = Dih(G), hence balanced.
        for expr in ["Z3", "Z5", "Z2xZ3"] {
            let g = spec(expr);
            let n = g.order();
            for m in n + 1..=2 * n {
                let report = census_exhaustive(&g, m, None, 1_000_000).unwrap();
                let agg = report.aggregate();
                assert_eq!(agg.balanced, agg.total, "all balanced for {expr} m={m}");
            }
        }
    }

    #[test]
    fn m3k2_closed_form_matches_census() {
        for n in 3..=12 {
            let counts = m3k2_counts(n).unwrap();
            assert_eq!(counts.closed_form, counts.exhaustive, "n={n}");
        }
        // Values frozen from an independent brute force over group products.
        for (n, count) in [(3, 6), (4, 8), (5, 40), (6, 60), (7, 126), (8, 160), (9, 288), (10, 360)]
        {
            assert_eq!(m3k2_mstd_closed_form(n).unwrap(), count, "n={n}");
        }
        assert!(matches!(m3k2_mstd_closed_form(2), Err(CensusError::TooSmall { n: 2 })));
    }

    #[test]
    fn pair_censuses_favor_mstd() {
        // For m = 2 and m = 3, MSTD sets strictly outnumber MDTS sets.
        for n in 3..=12u64 {
            let g = GroupSpec::cyclic(n as u32).unwrap();
            for m in [2, 3] {
                let agg = census_exhaustive(&g, m, None, 1_000_000).unwrap().aggregate();
                assert!(agg.mstd > agg.mdts, "n={n} m={m}: {agg:?}");
            }
        }
    }

    #[test]
    fn balanced_fraction_grows_at_m_equal_n() {
        let mut last = 0.0;
        for n in 8..=12u64 {
            let g = GroupSpec::cyclic(n as u32).unwrap();
            let agg = census_exhaustive(&g, n, None, 10_000_000).unwrap().aggregate();
            let fraction = agg.balanced as f64 / agg.total as f64;
            assert!(fraction > last, "balanced fraction dipped at n={n}");
            last = fraction;
        }
    }
}
