//! Sum-dominance analysis for generalized dihedral groups.
//!
//! For a finite abelian group `G` of order `n`, the generalized dihedral group
//! `Dih(G) = Z2 ⋉ G` has `2n` elements: `n` rotations `(0, g)` and `n` flips
//! `(1, g)`, multiplying by `(z1, g1)·(z2, g2) = (z1 ⊕ z2, g1 + σ(z1) g2)`
//! with `σ(0) = +1` and `σ(1) = -1`. For a subset `A ⊆ Dih(G)` the product
//! set `A+A = {a·b}` and quotient set `A-A = {a·b⁻¹}` generally differ in
//! size, and `A` is called MSTD (more sums than differences), MDTS (more
//! differences than sums) or balanced accordingly.
//!
//! This crate provides exact and sampled machinery for studying that
//! classification:
//!
//! * [`group`] — group construction, element encoding, dihedral arithmetic,
//!   truncated (box) variants of infinite factors and the coordinate map
//!   between a box and its modular closure.
//! * [`setops`] — subsets of `Dih(G)`, product/quotient sets, classification,
//!   and the rotation/flip decomposition the classification rests on.
//! * [`census`] — exhaustive and sampled censuses of all `m`-subsets,
//!   structural saturation checks for large subsets, and the closed-form
//!   count of MSTD 3-subsets with exactly two flips.
//! * [`collisions`] — the multiplicative collision statistic `X_A`, its
//!   redundancy calculus, the seven-class partition of collision triples,
//!   expected-value bounds, and cross-group collision comparisons.
//! * [`expectation`] — closed-form probabilities that a given element is
//!   missing from `A+A` or `A-A`, and the exact expected size of `A-A` for
//!   `Dih(Z_p)` with `p` prime.
//! * [`bounds`] — the constants `c1`, `c2`, `c_j`, the window `6 ≤ m ≤
//!   c_j √n` in which random subsets are MSTD with probability greater than
//!   1/2, and the binomial mass conditions behind it.
//! * [`report`] / [`cli`] — deterministic CSV/JSON report plumbing and the
//!   `gendih` command-line tool.
//!
//! # Examples
//!
//! Every major capability has a runnable example under `examples/`:
//!
//! ```text
//! cargo run --example group_arithmetic        dihedral multiplication tables
//! cargo run --example classify_subset         sumset/diffset of one subset
//! cargo run --example exhaustive_census       full census of small groups
//! cargo run --example sampled_census          Monte Carlo census with CIs
//! cargo run --example structural_checks       saturation rules for large sets
//! cargo run --example collision_report        X_A and the naive criterion
//! cargo run --example triple_classes          the T1..T7 collision partition
//! cargo run --example mean_collisions         E[X_A] against its upper bound
//! cargo run --example cross_group_collisions  Z_n x Z_n versus Z_{n^2}
//! cargo run --example expectation_exact       exact E[|A-A|] for Dih(Z_p)
//! cargo run --example expectation_curve       where E[|A-A|] crosses n
//! cargo run --example threshold_constants     c1, c2, c_j and the window
//! cargo run --example truncated_groups        box groups and collision transport
//! ```
//!
//! Quick taste:
//!
//! ```
//! use gendih::group::GroupSpec;
//! use gendih::setops::{ClassLabel, SubsetD};
//!
//! let d10 = GroupSpec::parse("Z5").unwrap();
//! let a = SubsetD::parse(&d10, "r:1;f:0").unwrap(); // {r, s} in D_10
//! assert_eq!(a.classify(), ClassLabel::Mstd);
//! ```

pub mod bounds;
pub mod census;
pub mod cli;
pub mod collisions;
pub mod combinat;
pub mod expectation;
pub mod group;
pub mod report;
pub mod setops;
pub mod verify;

pub use bounds::{BoundParams, MassCheck, ProportionCheck, WindowVerdict};
pub use census::{CensusError, CensusMode, CensusReport, CensusRow, ClassTally};
pub use collisions::{
    CollisionError, CollisionReport, CrossCollisionTotals, CrossVerdict, SampledMean,
    TripleClassCounts,
};
pub use expectation::{
    EvalMode, ExpectationCurve, ExpectationError, ExpectationValue, JointEval, ProbabilityValue,
    Side,
};
pub use group::{AbelianElement, DihElement, GroupError, GroupSpec};
pub use setops::{ClassLabel, PairSet, SubsetD};
