//! Monte Carlo census with Wilson confidence intervals for a group far
//! beyond exhaustive reach. Reruns with the same seed are bit-identical.

use gendih::census::census_sampled;
use gendih::group::GroupSpec;

fn main() {
    let spec = GroupSpec::parse("Z101").unwrap();
    let (m, trials, seed) = (6u64, 50_000u64, 41u64);
    let report = census_sampled(&spec, m, trials, seed).unwrap();

    println!("Dih({}), m = {m}, {trials} trials, seed {seed}\n", spec);
    println!("{:>4} {:>8} {:>8} {:>8} {:>10}", "k", "total", "mstd", "mdts", "balanced");
    for row in report.rows.iter().filter(|r| r.tally.total > 0) {
        let t = row.tally;
        println!("{:>4} {:>8} {:>8} {:>8} {:>10}", row.k, t.total, t.mstd, t.mdts, t.balanced);
    }
    let all = report.aggregate();
    println!("{:>4} {:>8} {:>8} {:>8} {:>10}", "all", all.total, all.mstd, all.mdts, all.balanced);

    let (mstd_lo, mstd_hi) = report.wilson_mstd().unwrap();
    let (mdts_lo, mdts_hi) = report.wilson_mdts().unwrap();
    let (cond_lo, cond_hi) = report.wilson_mstd_among_unbalanced().unwrap();
    println!("\n95% Wilson intervals:");
    println!("  P[MSTD]                 in [{mstd_lo:.4}, {mstd_hi:.4}]");
    println!("  P[MDTS]                 in [{mdts_lo:.4}, {mdts_hi:.4}]");
    println!("  P[MSTD | not balanced]  in [{cond_lo:.4}, {cond_hi:.4}]");
}
