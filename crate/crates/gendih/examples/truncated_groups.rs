//! Truncated (box) groups: a Z factor restricted to [0, alpha) with
//! unreduced arithmetic, compared against its modular closure through
//! the coordinate-identity map. Closing the box can only create new
//! collisions, never destroy one.

use gendih::group::{phi_map, DihElement, GroupSpec};

fn main() {
    let boxed = GroupSpec::parse("Z@4").unwrap();
    let closure = boxed.untruncated();
    println!("box {} with closure {}\n", boxed, closure);

    let a = DihElement::rotation(vec![3]);
    let b = DihElement::rotation(vec![2]);
    let c = DihElement::rotation(vec![0]);
    let d = DihElement::rotation(vec![1]);

    let ab = boxed.ambient_mul(&a, &b).unwrap();
    let cd = boxed.ambient_mul(&c, &d).unwrap();
    println!("ambient products: {a}*{b} has coords {:?}, {c}*{d} has coords {:?}", ab.coords, cd.coords);
    println!("ambient collision: {}", boxed.ambient_collision(&a, &b, &c, &d).unwrap());

    let (ia, ib) = (
        closure.index_of(&phi_map(&a, &boxed, &closure).unwrap()).unwrap(),
        closure.index_of(&phi_map(&b, &boxed, &closure).unwrap()).unwrap(),
    );
    let (ic, id) = (
        closure.index_of(&phi_map(&c, &boxed, &closure).unwrap()).unwrap(),
        closure.index_of(&phi_map(&d, &boxed, &closure).unwrap()).unwrap(),
    );
    println!(
        "after phi into {}: products {} and {} -> modular collision: {}\n",
        closure,
        closure.mul_idx(ia, ib),
        closure.mul_idx(ic, id),
        closure.mul_idx(ia, ib) == closure.mul_idx(ic, id)
    );

    let order = boxed.dihedral_order();
    let elements: Vec<DihElement> =
        (0..order).map(|i| closure.element_at(i).unwrap()).collect();
    let mut ambient = 0u64;
    let mut modular = 0u64;
    for a in &elements {
        for b in &elements {
            for c in &elements {
                for d in &elements {
                    if boxed.ambient_collision(a, b, c, d).unwrap() {
                        ambient += 1;
                    }
                    let lhs = closure.mul_idx(
                        closure.index_of(a).unwrap(),
                        closure.index_of(b).unwrap(),
                    );
                    let rhs = closure.mul_idx(
                        closure.index_of(c).unwrap(),
                        closure.index_of(d).unwrap(),
                    );
                    if lhs == rhs {
                        modular += 1;
                    }
                }
            }
        }
    }
    println!("collisions among all {order}^4 quadruples:");
    println!("  ambient (box arithmetic):   {ambient}");
    println!("  modular (after closing):    {modular}");
    println!("  every ambient collision survives closing, so {ambient} <= {modular}");
}
