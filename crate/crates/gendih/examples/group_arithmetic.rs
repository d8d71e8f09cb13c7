//! Multiplication in Dih(G): the full table for D10 = Dih(Z5), inverse
//! pairs, and the conjugation identity that makes every flip an involution.

use gendih::group::{DihElement, GroupSpec};

fn name(spec: &GroupSpec, index: u64) -> String {
    let n = spec.order();
    if index < n {
        format!("r{index}")
    } else {
        format!("sr{}", index - n)
    }
}

fn main() {
    let spec = GroupSpec::parse("Z5").unwrap();
    let order = spec.dihedral_order();
    println!("Dih({}) has {order} elements: rotations r0..r4, flips sr0..sr4\n", spec);

    print!("{:>5}", "*");
    for b in 0..order {
        print!("{:>5}", name(&spec, b));
    }
    println!();
    for a in 0..order {
        print!("{:>5}", name(&spec, a));
        for b in 0..order {
            print!("{:>5}", name(&spec, spec.mul_idx(a, b)));
        }
        println!();
    }

    println!("\ninverses:");
    for a in 0..order {
        println!("  {}^-1 = {}", name(&spec, a), name(&spec, spec.inv_idx(a)));
    }

    let s = spec.index_of(&DihElement::reflection(vec![0])).unwrap();
    let r = spec.index_of(&DihElement::rotation(vec![1])).unwrap();
    let conjugate = spec.mul_idx(spec.mul_idx(s, r), spec.inv_idx(s));
    println!(
        "\nconjugation: s r s^-1 = {} = r^-1, so flips invert rotations",
        name(&spec, conjugate)
    );

    let product = GroupSpec::parse("Z2xZ3").unwrap();
    println!("\n{} is abelian of order {}, Dih of order {}", product, product.order(), product.dihedral_order());
    println!("{} elements of order <= 2 in the abelian part (j)", product.involution_count());
    let e = product.element_at(7).unwrap();
    println!("element 7 decodes to flip={} coords={:?}", e.flip, e.g.coords());
    println!("and encodes back to {}", product.index_of(&e).unwrap());
}
