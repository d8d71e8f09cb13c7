//! Saturation structure of large subsets: once one coset side holds
//! more than half the rotations, both product sets contain every
//! rotation; once m > n, both are the whole group and A is balanced.

use gendih::census::verify_structural;
use gendih::group::GroupSpec;
use gendih::setops::SubsetD;

fn show(label: &str, a: &SubsetD) {
    let r = verify_structural(a);
    println!("{label}");
    println!("  |A| = {}, |R| = {}, |F| = {}", r.size, r.rotation_count, r.flip_count);
    println!("  max(|R|,|F|) > n/2: {}", r.half_hypothesis);
    println!("  all rotations in A+A: {}, in A-A: {}", r.all_rotations_in_sum, r.all_rotations_in_diff);
    println!("  m > n: {}", r.oversize_hypothesis);
    println!("  A+A full: {}, A-A full: {}", r.sum_full, r.diff_full);
    println!("  label: {:?}\n", r.label);
}

fn main() {
    let spec = GroupSpec::parse("Z9").unwrap();

    let majority_rotations = SubsetD::from_parts(&spec, &[0, 1, 2, 4, 7], &[]).unwrap();
    show("five of nine rotations, no flips:", &majority_rotations);

    let majority_flips = SubsetD::from_parts(&spec, &[3], &[0, 1, 2, 5, 8]).unwrap();
    show("one rotation, five of nine flips:", &majority_flips);

    let oversize = SubsetD::from_parts(&spec, &[0, 1, 2, 3, 4, 5], &[0, 2, 4, 6]).unwrap();
    show("ten elements in a group of eighteen (m > n):", &oversize);

    let small = SubsetD::parse(&spec, "r:1;f:0,1").unwrap();
    show("a small set for contrast (no hypothesis applies):", &small);
}
