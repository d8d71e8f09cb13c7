//! Classify one subset of Dih(G) and show where every product and
//! quotient lands. Pass a group and a subset literal, or run bare for
//! the classic MSTD example {r, s} in D10.
//!
//!     cargo run --example classify_subset -- Z7 "r:1,2,4;f:0"

use gendih::setops::SubsetD;
use gendih::group::GroupSpec;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (group, literal) = match args.as_slice() {
        [] => ("Z5".to_owned(), "r:1;f:0".to_owned()),
        [g, l] => (g.clone(), l.clone()),
        _ => {
            eprintln!("usage: classify_subset [GROUP SUBSET]");
            std::process::exit(2);
        }
    };
    let spec = GroupSpec::parse(&group).unwrap_or_else(|e| {
        eprintln!("bad group: {e}");
        std::process::exit(2);
    });
    let a = SubsetD::parse(&spec, &literal).unwrap_or_else(|e| {
        eprintln!("bad subset: {e}");
        std::process::exit(2);
    });

    println!("A in Dih({}): rotations {:?}, flips {:?}", spec, a.rotations(), a.flips());
    let parts = a.decompose();
    println!("\nrotation part of A+A:");
    println!("  R+R = {:?}", parts.sum_rr.indices());
    println!("  F-F = {:?}", parts.sum_ff.indices());
    println!("flip part of A+A:");
    println!("  R+F = {:?}", parts.sum_rf.indices());
    println!("  F-R = {:?}", parts.sum_fr.indices());
    println!("rotation part of A-A:");
    println!("  R-R = {:?}", parts.diff_rr.indices());
    println!("  F-F = {:?}", parts.diff_ff.indices());
    println!("flip part of A-A:");
    println!("  R+F = {:?}", parts.diff_rf.indices());

    let (sum, diff) = a.pair_sizes();
    println!("\n|A+A| = {sum}, |A-A| = {diff}  ->  {:?}", a.classify());
    println!(
        "(the flip part of A-A is exactly R+F, so a diff can only win \
         through its rotation part)"
    );
}
