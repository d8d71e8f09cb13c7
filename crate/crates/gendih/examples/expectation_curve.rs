//! Where E[|A-A|] first reaches n for a large prime: the crossing sits
//! near 1.3875 sqrt(n). Large n runs in log-space floats; the crossing
//! itself is scanned at every m even when the printed grid is sparse.

use gendih::expectation::expectation_curve;

fn main() {
    let n: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("n must be a positive integer"))
        .unwrap_or(10_007);
    let m_max = 300.min(2 * n);
    let curve = expectation_curve(n, m_max, 25).unwrap_or_else(|e| {
        eprintln!("cannot evaluate: {e}");
        std::process::exit(2);
    });

    println!("E[|A-A|] over Dih(Z{n}) (mode {:?}):\n", curve.mode);
    println!("{:>6} {:>16} {:>10}", "m", "E[|A-A|]", "/ n");
    for point in &curve.points {
        println!("{:>6} {:>16.3} {:>10.4}", point.m, point.expected_diff, point.expected_diff / n as f64);
    }

    let slope = 1.3875 * (n as f64).sqrt();
    match curve.crossing {
        Some(m) => println!("\nfirst m with E >= n: {m}  (1.3875 sqrt(n) = {slope:.1})"),
        None => println!("\nE stays below n through m = {m_max}  (1.3875 sqrt(n) = {slope:.1})"),
    }
}
