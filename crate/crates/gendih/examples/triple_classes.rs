//! The seven-way partition of non-redundant triples (a, b, c) by the
//! coincidence pattern of a, b, c, and d = c^-1 a b. Class sizes drive
//! the expected-collision bound; each respects a polynomial ceiling.

use gendih::collisions::{
    redundant_triple_count, triple_class_bounds, triple_class_counts, DEFAULT_TRIPLE_BUDGET,
};
use gendih::group::GroupSpec;

fn main() {
    for group in ["Z5", "Z8", "Z2xZ3", "Z3xZ3"] {
        let spec = GroupSpec::parse(group).unwrap();
        let n = spec.order();
        let j = spec.involution_count();
        let counts = triple_class_counts(&spec, DEFAULT_TRIPLE_BUDGET).unwrap();
        let bounds = triple_class_bounds(n, j);

        println!("Dih({}) with n = {n}, j = {j}:", spec);
        println!("{:>8} {:>10} {:>10}", "class", "size", "bound");
        for (i, (&size, &bound)) in counts.counts.iter().zip(&bounds).enumerate() {
            println!("{:>8} {:>10} {:>10}", format!("T{}", i + 1), size, bound);
        }
        println!("{:>8} {:>10} {:>10}", "redund", counts.redundant, redundant_triple_count(n));
        println!(
            "  total {} = (2n)^3 = {}\n",
            counts.total(),
            (2 * n) * (2 * n) * (2 * n)
        );
    }
    println!("T6 and T7 scale with n*j, so groups rich in involutions");
    println!("(like Z2xZ3 with j = 2) shift mass into the last two classes.");
}
