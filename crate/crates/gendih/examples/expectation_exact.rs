//! Exact E[|A-A|] for a uniform m-subset of Dih(Z_p), p prime, as a
//! rational number, cross-checked against a brute-force mean for p = 5.

use gendih::combinat::{binomial, for_each_combination};
use gendih::expectation::{expected_diffset_size_in, EvalMode};
use gendih::group::GroupSpec;
use gendih::setops::SubsetD;
use num_bigint::BigInt;
use num_rational::BigRational;

fn brute_mean(n: u64, m: u64) -> BigRational {
    let spec = GroupSpec::cyclic(n as u32).unwrap();
    let mut total = 0u64;
    for_each_combination(2 * n as u32, m as u32, |combo| {
        let a = SubsetD::new(&spec, combo.iter().map(|&c| c as u64)).unwrap();
        total += a.diffset().len();
    });
    BigRational::new(BigInt::from(total), BigInt::from(binomial(2 * n, m)))
}

fn main() {
    let n = 5u64;
    println!("E[|A-A|] over Dih(Z{n}), all subset sizes:\n");
    println!("{:>4} {:>14} {:>12} {:>10}", "m", "exact", "float", "of 2n");
    for m in 1..=2 * n {
        let e = expected_diffset_size_in(n, m, EvalMode::Rational).unwrap();
        let exact = e.exact.unwrap();
        assert_eq!(exact, brute_mean(n, m), "closed form must match enumeration");
        println!("{:>4} {:>14} {:>12.6} {:>9.1}%", m, exact.to_string(), e.value, 100.0 * e.value / 10.0);
    }

    let anchor = expected_diffset_size_in(3, 2, EvalMode::Rational).unwrap();
    println!("\nsmallest case: E over Dih(Z3) at m = 2 is {}", anchor.exact.unwrap());
    println!("saturation: every m > n already gives the whole group, E = 2n.");
}
