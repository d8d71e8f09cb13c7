//! The collision statistic X_A: how many quadruple coincidences a
//! subset's products suffer, and how far they can push |A+A| below the
//! collision-free count. A Sidon-like set achieves X_A = 0 and its
//! label is then decided by m and k alone.

use gendih::collisions::CollisionReport;
use gendih::group::GroupSpec;
use gendih::setops::SubsetD;

fn show(title: &str, report: &CollisionReport) {
    println!("{title}");
    println!("  m = {}, |R| = {}, |F| = {}", report.size, report.rotation_count, report.flip_count);
    println!(
        "  colliding quadruples: {} ({} same-pair, {} rotation-swap, {} all-flip redundancies)",
        report.colliding_quadruples,
        report.redundant_same_pair,
        report.redundant_rotation_swap,
        report.redundant_all_flips
    );
    println!("  X_A = {}", report.xa);
    println!(
        "  collision-free slot count {} vs actual |A+A| = {} (deficit {})",
        report.naive_sum_slots,
        report.sum_size,
        report.naive_sum_slots - report.sum_size
    );
    println!("  |A-A| = {}, label {:?}", report.diff_size, report.label);
    match report.collision_free_prediction {
        Some(predicted) => println!("  collision-free prediction: {predicted:?}"),
        None => println!("  collision-free prediction: none (X_A > 0)"),
    }
    println!(
        "  MSTD guaranteed by the (m,k,X_A) criterion: {}, inside the quadratic window: {}\n",
        report.mstd_guaranteed, report.in_quadratic_window
    );
}

fn main() {
    let z7 = GroupSpec::parse("Z7").unwrap();
    let sidon = SubsetD::from_parts(&z7, &[1, 2, 4], &[0]).unwrap();
    show("perfect difference set rotations plus one flip in Dih(Z7):", &CollisionReport::new(&sidon));

    let z5 = GroupSpec::parse("Z5").unwrap();
    let interval = SubsetD::from_parts(&z5, &[0, 1, 2], &[]).unwrap();
    show("an arithmetic progression of rotations in Dih(Z5):", &CollisionReport::new(&interval));

    let mixed = SubsetD::from_parts(&z5, &[0, 1], &[0, 2]).unwrap();
    show("two rotations and two flips in Dih(Z5):", &CollisionReport::new(&mixed));
}
