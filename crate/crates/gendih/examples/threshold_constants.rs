//! The constants behind the MSTD-majority window 6 <= m <= c_j sqrt(n):
//! exact fractions, the smallest n the window tolerates, the flip-count
//! proportion condition, and a verdict for concrete (n, m, j).

use gendih::bounds::{
    bound_params, cj_display, majority_window, proportion_condition, window_flip_range,
};

fn main() {
    println!("{:>3} {:>10} {:>12} {:>16} {:>9} {:>8}", "j", "c1", "c2", "c_j^2", "c_j", "n_min");
    for j in [1u64, 2, 3, 4, 9] {
        let p = bound_params(j);
        println!(
            "{:>3} {:>10} {:>12} {:>16} {:>9.5} {:>8}",
            j,
            p.c1.to_string(),
            p.c2.to_string(),
            p.cj_squared.to_string(),
            p.cj,
            p.n_min
        );
    }
    println!("(c_j also reads as 1.3229/sqrt(111+5j); for j=1 that is {:.5})\n", cj_display(1));

    let six = proportion_condition(6);
    println!("flip proportion condition at m = 6: mass = {} > 3/5: {}", six.value, six.pass);
    for m in [6u64, 12, 48] {
        let (lo, hi) = window_flip_range(m);
        println!("  window of typical flip counts at m = {m}: {lo}..={hi}");
    }

    println!();
    for (n, m) in [(2_400u64, 6u64), (2_400, 8), (2_000, 6), (10_000, 12)] {
        let v = majority_window(n, m, 1);
        println!(
            "n = {n}, m = {m}: floor ok {}, ceiling ok {} (c_j sqrt(n) = {:.2}) -> \
             random subsets mostly MSTD: {}",
            v.floor_ok, v.ceiling_ok, v.cj_sqrt_n, v.predicts_mstd_majority
        );
    }
}
