//! Subsets of a generalized dihedral group, their product set `A+A`,
//! quotient set `A-A`, and the MSTD / MDTS / balanced classification.
//!
//! Writing `R` for the rotation indices and `F` for the flip indices of a
//! subset `A`, the product and quotient sets decompose over the abelian
//! index group as
//!
//! ```text
//! A+A:  rotations (R+R) ∪ (F-F),   flips (R+F) ∪ (F-R)
//! A-A:  rotations (R-R) ∪ (F-F),   flips (R+F)
//! ```
//!
//! so the flip part of `A-A` is always contained in the flip part of `A+A`,
//! and the entire classification is a fight between `R+R` and `R-R` plus the
//! extra flip component `F-R`. [`SubsetD::decompose`] exposes exactly these
//! components.

use crate::group::{GroupError, GroupSpec};

use thiserror::Error;

/// Errors from subset construction and literal parsing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubsetError {
    #[error("element index {index} out of range: {group} has dihedral order {order}")]
    OutOfRange { index: u64, group: String, order: u64 },
    #[error("cannot parse subset literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Sum-dominance class of a subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    /// `|A+A| > |A-A|`: more sums than differences.
    Mstd,
    /// `|A+A| < |A-A|`: more differences than sums.
    Mdts,
    /// `|A+A| = |A-A|`.
    Balanced,
}

impl ClassLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::Mstd => "mstd",
            ClassLabel::Mdts => "mdts",
            ClassLabel::Balanced => "balanced",
        }
    }
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Compares sizes of `A+A` and `A-A`.
pub fn label_of_sizes(sum_size: u64, diff_size: u64) -> ClassLabel {
    match sum_size.cmp(&diff_size) {
        std::cmp::Ordering::Greater => ClassLabel::Mstd,
        std::cmp::Ordering::Less => ClassLabel::Mdts,
        std::cmp::Ordering::Equal => ClassLabel::Balanced,
    }
}

fn words_for(n: u64) -> usize {
    ((n + 63) / 64) as usize
}

fn set_bit(words: &mut [u64], i: u64) {
    words[(i / 64) as usize] |= 1u64 << (i % 64);
}

fn test_bit(words: &[u64], i: u64) -> bool {
    words[(i / 64) as usize] >> (i % 64) & 1 == 1
}

fn popcount(words: &[u64]) -> u64 {
    words.iter().map(|w| w.count_ones() as u64).sum()
}

/// A subset of `Dih(G)`, stored both as sorted rotation/flip index lists and
/// as bit masks over the abelian index range `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetD {
    spec: GroupSpec,
    rot: Vec<u64>,
    flip: Vec<u64>,
    rot_mask: Vec<u64>,
    flip_mask: Vec<u64>,
}

impl SubsetD {
    /// Builds a subset from element indices in `[0, 2n)`. Duplicates
    /// collapse; this is a set.
    pub fn new(
        spec: &GroupSpec,
        members: impl IntoIterator<Item = u64>,
    ) -> Result<Self, SubsetError> {
        let n = spec.order();
        let (mut rot, mut flip) = (Vec::new(), Vec::new());
        for index in members {
            if index >= 2 * n {
                return Err(SubsetError::OutOfRange {
                    index,
                    group: spec.render(),
                    order: 2 * n,
                });
            }
            if index < n {
                rot.push(index);
            } else {
                flip.push(index - n);
            }
        }
        rot.sort_unstable();
        rot.dedup();
        flip.sort_unstable();
        flip.dedup();
        Ok(Self::from_sorted(spec.clone(), rot, flip))
    }

    /// Builds a subset from rotation and flip indices, each in `[0, n)`.
    pub fn from_parts(spec: &GroupSpec, rot: &[u64], flip: &[u64]) -> Result<Self, SubsetError> {
        let n = spec.order();
        for &g in rot.iter().chain(flip) {
            if g >= n {
                return Err(SubsetError::OutOfRange { index: g, group: spec.render(), order: n });
            }
        }
        let members: Vec<u64> =
            rot.iter().copied().chain(flip.iter().map(|&f| f + n)).collect();
        Self::new(spec, members)
    }

    /// Parses a subset literal like `r:0,1,4;f:2,3`. Each section is
    /// optional, indices are abelian indices in `[0, n)`.
    pub fn parse(spec: &GroupSpec, literal: &str) -> Result<Self, SubsetError> {
        let fail = |reason: &str| SubsetError::Parse {
            literal: literal.to_owned(),
            reason: reason.to_owned(),
        };
        if literal.is_empty() {
            return Err(fail("empty literal; write r: or f: followed by indices"));
        }
        if literal.chars().any(char::is_whitespace) {
            return Err(fail("whitespace is not allowed"));
        }
        let (mut rot, mut flip) = (Vec::new(), Vec::new());
        let (mut seen_r, mut seen_f) = (false, false);
        for section in literal.split(';') {
            let (bucket, seen, rest) = if let Some(rest) = section.strip_prefix("r:") {
                (&mut rot, &mut seen_r, rest)
            } else if let Some(rest) = section.strip_prefix("f:") {
                (&mut flip, &mut seen_f, rest)
            } else {
                return Err(fail("each section must start with r: or f:"));
            };
            if *seen {
                return Err(fail("duplicate section"));
            }
            *seen = true;
            if rest.is_empty() {
                continue;
            }
            for piece in rest.split(',') {
                let index: u64 = piece
                    .parse()
                    .map_err(|_| fail(&format!("bad index {piece:?}")))?;
                bucket.push(index);
            }
        }
        Self::from_parts(spec, &rot, &flip)
    }

    fn from_sorted(spec: GroupSpec, rot: Vec<u64>, flip: Vec<u64>) -> Self {
        let words = words_for(spec.order().max(1));
        let mut rot_mask = vec![0u64; words];
        let mut flip_mask = vec![0u64; words];
        for &g in &rot {
            set_bit(&mut rot_mask, g);
        }
        for &f in &flip {
            set_bit(&mut flip_mask, f);
        }
        Self { spec, rot, flip, rot_mask, flip_mask }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// `m = |A|`.
    pub fn size(&self) -> u64 {
        (self.rot.len() + self.flip.len()) as u64
    }

    /// `k`, the number of flips in `A`.
    pub fn flip_count(&self) -> u64 {
        self.flip.len() as u64
    }

    pub fn rotation_count(&self) -> u64 {
        self.rot.len() as u64
    }

    /// Sorted rotation indices (abelian indices).
    pub fn rotations(&self) -> &[u64] {
        &self.rot
    }

    /// Sorted flip indices (abelian indices).
    pub fn flips(&self) -> &[u64] {
        &self.flip
    }

    /// Sorted element indices in `[0, 2n)`.
    pub fn members(&self) -> Vec<u64> {
        let n = self.spec.order();
        self.rot.iter().copied().chain(self.flip.iter().map(|&f| f + n)).collect()
    }

    pub fn contains(&self, element_index: u64) -> bool {
        let n = self.spec.order();
        if element_index < n {
            test_bit(&self.rot_mask, element_index)
        } else if element_index < 2 * n {
            test_bit(&self.flip_mask, element_index - n)
        } else {
            false
        }
    }

    /// The product set `A+A = {a·b : a, b ∈ A}`.
    pub fn sumset(&self) -> PairSet {
        let members = self.members();
        let mut out = PairSet::empty(self.spec.order());
        for &a in &members {
            for &b in &members {
                out.insert(self.spec.mul_idx(a, b));
            }
        }
        out
    }

    /// The quotient set `A-A = {a·b⁻¹ : a, b ∈ A}`.
    pub fn diffset(&self) -> PairSet {
        let members = self.members();
        let mut out = PairSet::empty(self.spec.order());
        for &a in &members {
            for &b in &members {
                out.insert(self.spec.mul_idx(a, self.spec.inv_idx(b)));
            }
        }
        out
    }

    /// `(|A+A|, |A-A|)` without materializing the sets.
    pub fn pair_sizes(&self) -> (u64, u64) {
        let n = self.spec.order();
        if self.spec.is_cyclic() && n <= 64 && n >= 1 {
            let (s, d) = pair_sizes_cyclic64(n as u32, self.rot_mask[0], self.flip_mask[0]);
            (s as u64, d as u64)
        } else {
            let mut scratch = Scratch::new();
            pair_sizes_product(&self.spec, &self.members(), &mut scratch)
        }
    }

    /// MSTD / MDTS / balanced, by comparing `|A+A|` against `|A-A|`.
    pub fn classify(&self) -> ClassLabel {
        let (s, d) = self.pair_sizes();
        label_of_sizes(s, d)
    }

    /// All seven structural components of `A+A` and `A-A`.
    pub fn decompose(&self) -> Decomposition {
        let spec = &self.spec;
        let mut sum_rr = PairSet::empty(spec.order());
        let mut sum_ff = PairSet::empty(spec.order());
        let mut sum_rf = PairSet::empty(spec.order());
        let mut sum_fr = PairSet::empty(spec.order());
        let mut diff_rr = PairSet::empty(spec.order());
        let n = spec.order();
        for &g1 in &self.rot {
            for &g2 in &self.rot {
                sum_rr.insert(spec.add_idx(g1, g2));
                diff_rr.insert(spec.add_idx(g1, spec.neg_idx(g2)));
            }
            for &f in &self.flip {
                sum_rf.insert(n + spec.add_idx(g1, f));
                sum_fr.insert(n + spec.add_idx(f, spec.neg_idx(g1)));
            }
        }
        for &f1 in &self.flip {
            for &f2 in &self.flip {
                sum_ff.insert(spec.add_idx(f1, spec.neg_idx(f2)));
            }
        }
        Decomposition {
            rotations: self.rot.clone(),
            flips: self.flip.clone(),
            diff_ff: sum_ff.clone(),
            diff_rf: sum_rf.clone(),
            sum_rr,
            sum_ff,
            sum_rf,
            sum_fr,
            diff_rr,
        }
    }
}

/// The rotation/flip component decomposition of `A+A` and `A-A`.
///
/// `A+A` is the union of `sum_rr`, `sum_ff`, `sum_rf`, `sum_fr`;
/// `A-A` is the union of `diff_rr`, `diff_ff`, `diff_rf`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Rotation indices `R`.
    pub rotations: Vec<u64>,
    /// Flip indices `F`.
    pub flips: Vec<u64>,
    /// `{g1+g2}` as rotations: products of two rotations.
    pub sum_rr: PairSet,
    /// `{f1-f2}` as rotations: products of two flips.
    pub sum_ff: PairSet,
    /// `{g+f}` as flips: rotation times flip.
    pub sum_rf: PairSet,
    /// `{f-g}` as flips: flip times rotation.
    pub sum_fr: PairSet,
    /// `{g1-g2}` as rotations: quotients of two rotations.
    pub diff_rr: PairSet,
    /// `{f1-f2}` as rotations: quotients of two flips (same as `sum_ff`).
    pub diff_ff: PairSet,
    /// `{g+f}` as flips: every mixed quotient lands here.
    pub diff_rf: PairSet,
}

impl Decomposition {
    pub fn sum_union(&self) -> PairSet {
        self.sum_rr.union(&self.sum_ff).union(&self.sum_rf).union(&self.sum_fr)
    }

    pub fn diff_union(&self) -> PairSet {
        self.diff_rr.union(&self.diff_ff).union(&self.diff_rf)
    }
}

/// A subset of `Dih(G)` element indices produced by a set operation,
/// stored as rotation and flip bit masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    n: u64,
    rot: Vec<u64>,
    flip: Vec<u64>,
}

impl PairSet {
    fn empty(n: u64) -> Self {
        let words = words_for(n.max(1));
        Self { n, rot: vec![0; words], flip: vec![0; words] }
    }

    fn insert(&mut self, element_index: u64) {
        debug_assert!(element_index < 2 * self.n);
        if element_index < self.n {
            set_bit(&mut self.rot, element_index);
        } else {
            set_bit(&mut self.flip, element_index - self.n);
        }
    }

    /// Order `n` of the underlying abelian group.
    pub fn group_order(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> u64 {
        popcount(&self.rot) + popcount(&self.flip)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when every element of `Dih(G)` is present.
    pub fn is_full(&self) -> bool {
        self.len() == 2 * self.n
    }

    pub fn rotation_count(&self) -> u64 {
        popcount(&self.rot)
    }

    pub fn flip_count(&self) -> u64 {
        popcount(&self.flip)
    }

    /// True when all `n` rotations are present.
    pub fn has_all_rotations(&self) -> bool {
        self.rotation_count() == self.n
    }

    pub fn contains(&self, element_index: u64) -> bool {
        if element_index < self.n {
            test_bit(&self.rot, element_index)
        } else if element_index < 2 * self.n {
            test_bit(&self.flip, element_index - self.n)
        } else {
            false
        }
    }

    /// Sorted element indices.
    pub fn indices(&self) -> Vec<u64> {
        (0..2 * self.n).filter(|&i| self.contains(i)).collect()
    }

    pub fn union(&self, other: &PairSet) -> PairSet {
        assert_eq!(self.n, other.n, "union of pair sets over different groups");
        let rot = self.rot.iter().zip(&other.rot).map(|(a, b)| a | b).collect();
        let flip = self.flip.iter().zip(&other.flip).map(|(a, b)| a | b).collect();
        PairSet { n: self.n, rot, flip }
    }
}

/// Reusable buffers for the product-enumeration classifier.
pub(crate) struct Scratch {
    sums: Vec<u64>,
    diffs: Vec<u64>,
}

impl Scratch {
    pub(crate) fn new() -> Self {
        Self { sums: Vec::new(), diffs: Vec::new() }
    }
}

/// `(|A+A|, |A-A|)` by enumerating, sorting and deduplicating all `m²`
/// ordered products and quotients. Works for every group; the method of
/// choice when `m²` is small next to `n`.
pub(crate) fn pair_sizes_product(
    spec: &GroupSpec,
    members: &[u64],
    scratch: &mut Scratch,
) -> (u64, u64) {
    scratch.sums.clear();
    scratch.diffs.clear();
    for &a in members {
        for &b in members {
            scratch.sums.push(spec.mul_idx(a, b));
            scratch.diffs.push(spec.mul_idx(a, spec.inv_idx(b)));
        }
    }
    scratch.sums.sort_unstable();
    scratch.sums.dedup();
    scratch.diffs.sort_unstable();
    scratch.diffs.dedup();
    (scratch.sums.len() as u64, scratch.diffs.len() as u64)
}

/// `(|A+A|, |A-A|)` for a cyclic group with `n <= 64`, via shift-or kernels
/// on single-word bit masks of the rotation and flip index sets.
pub(crate) fn pair_sizes_cyclic64(n: u32, rot: u64, flip: u64) -> (u32, u32) {
    debug_assert!(n >= 1 && n <= 64);
    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    debug_assert!(rot & !full == 0 && flip & !full == 0);
    let rotl = |x: u64, s: u32| -> u64 {
        if s == 0 {
            x
        } else {
            ((x << s) | (x >> (n - s))) & full
        }
    };
    let rev = |x: u64| -> u64 {
        let mut out = 0u64;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros();
            out |= 1u64 << ((n - i) % n);
            bits &= bits - 1;
        }
        out
    };

    let rot_rev = rev(rot);
    let flip_rev = rev(flip);

    let mut ff = 0u64; // {f1 - f2}: shared by A+A and A-A rotations
    let mut bits = flip;
    while bits != 0 {
        let f = bits.trailing_zeros();
        ff |= rotl(flip_rev, f);
        bits &= bits - 1;
    }

    let (mut sum_rot, mut diff_rot, mut diff_flip) = (ff, ff, 0u64);
    let mut bits = rot;
    while bits != 0 {
        let g = bits.trailing_zeros();
        sum_rot |= rotl(rot, g);
        diff_rot |= rotl(rot_rev, g);
        diff_flip |= rotl(flip, g);
        bits &= bits - 1;
    }

    let mut sum_flip = 0u64; // (R ∪ -R) + F
    let mut bits = rot | rot_rev;
    while bits != 0 {
        let g = bits.trailing_zeros();
        sum_flip |= rotl(flip, g);
        bits &= bits - 1;
    }

    let s = sum_rot.count_ones() + sum_flip.count_ones();
    let d = diff_rot.count_ones() + diff_flip.count_ones();
    (s, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec(expr: &str) -> GroupSpec {
        GroupSpec::parse(expr).unwrap()
    }

    fn subset(expr: &str, literal: &str) -> SubsetD {
        SubsetD::parse(&spec(expr), literal).unwrap()
    }

    #[test]
    fn two_flips_in_d6_produce_all_rotations() {
        let a = subset("Z3", "f:0,1");
        let sum = a.sumset();
        assert_eq!(sum.indices(), vec![0, 1, 2]);
        assert_eq!(a.diffset().indices(), vec![0, 1, 2]);
        assert_eq!(a.classify(), ClassLabel::Balanced);
    }

    #[test]
    fn three_rotations_in_d10_sum_to_five() {
        let a = subset("Z5", "r:0,1,2");
        assert_eq!(a.sumset().indices(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn rotation_plus_flip_quotients_in_d10() {
        // {r^i, f^j} has quotient set {identity, flip at i+j}, size 2.
        let n = 5u64;
        let g = spec("Z5");
        for i in 0..n {
            for j in 0..n {
                let a = SubsetD::from_parts(&g, &[i], &[j]).unwrap();
                let d = a.diffset();
                assert_eq!(d.len(), 2);
                assert!(d.contains(0));
                assert!(d.contains(n + (i + j) % n));
            }
        }
    }

    #[test]
    fn the_classic_mstd_pair_in_d10() {
        let a = subset("Z5", "r:1;f:0");
        let sum = a.sumset();
        let diff = a.diffset();
        assert_eq!(sum.indices(), vec![0, 2, 5 + 1, 5 + 4]);
        assert_eq!(diff.indices(), vec![0, 5 + 1]);
        assert_eq!(a.classify(), ClassLabel::Mstd);
    }

    #[test]
    fn three_spread_rotations_are_mdts() {
        let a = subset("Z7", "r:0,1,3");
        let (s, d) = a.pair_sizes();
        assert_eq!((s, d), (6, 7));
        assert_eq!(a.classify(), ClassLabel::Mdts);
    }

    #[test]
    fn empty_subset_has_empty_pair_sets() {
        let a = subset("Z5", "r:");
        assert_eq!(a.size(), 0);
        assert!(a.sumset().is_empty());
        assert!(a.diffset().is_empty());
        assert_eq!(a.classify(), ClassLabel::Balanced);
    }

    #[test]
    fn literal_parsing_and_errors() {
        let a = subset("Z6", "r:0,1,4;f:2,3");
        assert_eq!(a.size(), 5);
        assert_eq!(a.flip_count(), 2);
        assert_eq!(a.rotations(), &[0, 1, 4]);
        assert_eq!(a.flips(), &[2, 3]);
        assert_eq!(a.members(), vec![0, 1, 4, 6 + 2, 6 + 3]);

        let g = spec("Z6");
        assert!(SubsetD::parse(&g, "").is_err());
        assert!(SubsetD::parse(&g, "r:0;r:1").is_err());
        assert!(SubsetD::parse(&g, "x:0").is_err());
        assert!(SubsetD::parse(&g, "r:0, 1").is_err());
        assert!(SubsetD::parse(&g, "r:a").is_err());
        assert!(matches!(
            SubsetD::parse(&g, "f:6"),
            Err(SubsetError::OutOfRange { index: 6, .. })
        ));
        // Duplicates collapse: this is a set.
        assert_eq!(SubsetD::parse(&g, "r:1,1,1").unwrap().size(), 1);
    }

    #[test]
    fn flip_section_alone_and_empty_sections_parse() {
        assert_eq!(subset("Z5", "f:2,3").flip_count(), 2);
        assert_eq!(subset("Z5", "r:;f:1").size(), 1);
        assert_eq!(subset("Z5", "f:").size(), 0);
    }

    #[test]
    fn decomposition_components_union_to_the_pair_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for expr in ["Z5", "Z12", "Z2xZ3", "Z4xZ2", "Z@4xZ3"] {
            let g = spec(expr);
            let two_n = g.dihedral_order();
            for _ in 0..200 {
                let members: Vec<u64> =
                    (0..two_n).filter(|_| rng.gen_bool(0.3)).collect();
                let a = SubsetD::new(&g, members).unwrap();
                let dec = a.decompose();
                assert_eq!(dec.sum_union(), a.sumset(), "sum components in {expr}");
                assert_eq!(dec.diff_union(), a.diffset(), "diff components in {expr}");
                // The flip part of A-A is exactly R+F, shared with A+A.
                assert_eq!(dec.diff_rf, dec.sum_rf);
                let sum = a.sumset();
                for idx in a.diffset().indices() {
                    if idx >= g.order() {
                        assert!(sum.contains(idx), "flip parts nest in {expr}");
                    }
                }
            }
        }
    }

    #[test]
    fn cyclic_kernel_matches_product_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut scratch = Scratch::new();
        for n in 1..=16u64 {
            let g = GroupSpec::cyclic(n as u32).unwrap();
            for _ in 0..700 {
                let density = rng.gen_range(0.05..0.9);
                let members: Vec<u64> =
                    (0..2 * n).filter(|_| rng.gen_bool(density)).collect();
                let a = SubsetD::new(&g, members.iter().copied()).unwrap();
                let fast = pair_sizes_cyclic64(n as u32, a.rot_mask[0], a.flip_mask[0]);
                let slow = pair_sizes_product(&g, &members, &mut scratch);
                assert_eq!(
                    (fast.0 as u64, fast.1 as u64),
                    slow,
                    "kernel mismatch for n={n}, members={members:?}"
                );
            }
        }
    }

    #[test]
    fn pair_sizes_agree_with_materialized_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for expr in ["Z7", "Z64", "Z2xZ2xZ2", "Z6xZ5"] {
            let g = spec(expr);
            for _ in 0..100 {
                let members: Vec<u64> =
                    (0..g.dihedral_order()).filter(|_| rng.gen_bool(0.2)).collect();
                let a = SubsetD::new(&g, members).unwrap();
                let (s, d) = a.pair_sizes();
                assert_eq!(s, a.sumset().len());
                assert_eq!(d, a.diffset().len());
            }
        }
    }

    #[test]
    fn classification_is_invariant_under_dihedral_automorphisms() {
        // Aut(Dih(Z_n)) acts by i -> u·i on rotations, j -> u·j + t on
        // flips, for every unit u and shift t. Exercised exhaustively for
        // n <= 8, m <= 4, together with global inversion.
        for n in 1..=8u64 {
            let g = GroupSpec::cyclic(n as u32).unwrap();
            let units: Vec<u64> =
                (1..n.max(2)).filter(|&u| gcd(u, n) == 1).collect();
            let mut stack = vec![Vec::new()];
            // All subsets of [0, 2n) with at most 4 members.
            let mut subsets: Vec<Vec<u64>> = Vec::new();
            while let Some(cur) = stack.pop() {
                if cur.len() <= 4 {
                    subsets.push(cur.clone());
                }
                if cur.len() < 4 {
                    let start = cur.last().map_or(0, |&x| x + 1);
                    for next in start..2 * n {
                        let mut ext = cur.clone();
                        ext.push(next);
                        stack.push(ext);
                    }
                }
            }
            for members in subsets {
                let a = SubsetD::new(&g, members.iter().copied()).unwrap();
                let label = a.classify();
                for &u in &units {
                    for t in 0..n {
                        let mapped: Vec<u64> = members
                            .iter()
                            .map(|&idx| {
                                if idx < n {
                                    (idx * u) % n
                                } else {
                                    n + ((idx - n) * u + t) % n
                                }
                            })
                            .collect();
                        let b = SubsetD::new(&g, mapped).unwrap();
                        assert_eq!(b.classify(), label, "automorphism u={u} t={t} n={n}");
                    }
                }
                let inverted: Vec<u64> = members.iter().map(|&i| g.inv_idx(i)).collect();
                let b = SubsetD::new(&g, inverted).unwrap();
                assert_eq!(b.classify(), label, "inversion n={n}");
            }
        }
    }

    #[test]
    fn central_translation_preserves_the_label() {
        // For even n the rotation at n/2 is central, and A·z keeps both
        // |A+A| and |A-A|.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [2u64, 4, 6, 8, 10] {
            let g = GroupSpec::cyclic(n as u32).unwrap();
            let z = n / 2;
            for _ in 0..300 {
                let members: Vec<u64> =
                    (0..2 * n).filter(|_| rng.gen_bool(0.3)).collect();
                let a = SubsetD::new(&g, members.iter().copied()).unwrap();
                let translated: Vec<u64> =
                    members.iter().map(|&i| g.mul_idx(i, z)).collect();
                let b = SubsetD::new(&g, translated).unwrap();
                assert_eq!(a.pair_sizes(), b.pair_sizes(), "central translation n={n}");
            }
        }
    }

    #[test]
    fn translation_by_a_non_central_element_can_change_the_label() {
        // {1, f0} in D8 is balanced, but its right translate by r1 is
        // {r1, f3}, which is MSTD. Sum-dominance is an automorphism
        // invariant, not a translation invariant.
        let g = spec("Z4");
        let a = SubsetD::from_parts(&g, &[0], &[0]).unwrap();
        assert_eq!(a.classify(), ClassLabel::Balanced);
        let translated: Vec<u64> = a.members().iter().map(|&i| g.mul_idx(i, 1)).collect();
        assert_eq!(translated, vec![1, 4 + 3]);
        let b = SubsetD::new(&g, translated).unwrap();
        assert_eq!(b.classify(), ClassLabel::Mstd);
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    proptest! {
        #[test]
        fn identity_sits_in_every_nonempty_quotient_set(
            (n, members) in (1u64..=12).prop_flat_map(|n| {
                (Just(n), prop::collection::vec(0..2 * n, 1..=6))
            })
        ) {
            let g = GroupSpec::cyclic(n as u32).unwrap();
            let a = SubsetD::new(&g, members).unwrap();
            let d = a.diffset();
            prop_assert!(d.contains(0));
            // Quotient sets are closed under inversion.
            for idx in d.indices() {
                prop_assert!(d.contains(g.inv_idx(idx)));
            }
        }

        #[test]
        fn flip_parts_of_quotients_nest_in_sums(
            (n, members) in (1u64..=10).prop_flat_map(|n| {
                (Just(n), prop::collection::vec(0..2 * n, 0..=8))
            })
        ) {
            let g = GroupSpec::cyclic(n as u32).unwrap();
            let a = SubsetD::new(&g, members).unwrap();
            let sum = a.sumset();
            let diff = a.diffset();
            for idx in diff.indices() {
                if idx >= n {
                    prop_assert!(sum.contains(idx));
                }
            }
        }
    }
}
