//! Finite abelian groups, their generalized dihedral extensions, and the
//! truncated ("box") variants of integer factors.
//!
//! A group is described by a [`GroupSpec`]: a product of cyclic factors
//! `Z_{q1} x .. x Z_{qr}` of order `n = q1 .. qr`. The generalized dihedral
//! group `Dih(G) = Z2 ⋉ G` doubles it with a flip bit: `(z1, g1)·(z2, g2) =
//! (z1 ⊕ z2, g1 + σ(z1) g2)` where `σ(0) = +1`, `σ(1) = -1`. Every flip
//! `(1, g)` is an involution, and `(0, g)⁻¹ = (0, -g)`.
//!
//! A factor may also be marked *truncated* (`Z@alpha` in the grammar): its
//! coordinates live in `[0, alpha)` and stand in for a window of an infinite
//! `Z` factor. Truncated factors support two products: the ordinary modular
//! one of the closure `Z_alpha`, and the *ambient* one that keeps unreduced
//! integer coordinates, so that equalities can be checked as they would play
//! out in `Z` itself.
//!
//! Elements are encoded as indices in `[0, 2n)`: rotations occupy `[0, n)`
//! and flips `[n, 2n)`, with the abelian part mixed-radix encoded, last
//! coordinate fastest. The index arithmetic (`mul_idx`, `inv_idx`) is what
//! the enumeration kernels run on.

use std::fmt;

use thiserror::Error;

/// Errors from group construction, parsing and element validation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("cannot parse group expression {expr:?}: {reason}")]
    Parse { expr: String, reason: String },
    #[error("element has {found} coordinates but the group has {expected} factors")]
    Arity { expected: usize, found: usize },
    #[error("coordinate {value} out of range for a factor of modulus {modulus}")]
    Coordinate { value: u32, modulus: u32 },
    #[error("element index {index} out of range for a dihedral group of order {order}")]
    Index { index: u64, order: u64 },
    #[error("group mismatch: expected {expected}, found {found}")]
    SpecMismatch { expected: String, found: String },
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("group order overflows a 64-bit integer")]
    OrderOverflow,
}

/// A finite abelian group `Z_{q1} x .. x Z_{qr}`, possibly with leading
/// truncated factors, together with the derived constants of its dihedral
/// extension.
///
/// Trivial factors (`Z1`) are normalized away and truncated factors are
/// moved to the front, so equal groups compare equal regardless of how they
/// were written.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Vec<u32>,
    truncated: usize,
    n: u64,
    j: u64,
}

impl GroupSpec {
    /// The cyclic group `Z_q`.
    pub fn cyclic(q: u32) -> Result<Self, GroupError> {
        Self::build(vec![(q, false)])
    }

    /// The product `Z_{q1} x .. x Z_{qr}`.
    pub fn product(moduli: &[u32]) -> Result<Self, GroupError> {
        Self::build(moduli.iter().map(|&q| (q, false)).collect())
    }

    /// A product with leading truncated factors: coordinates of the first
    /// `alphas.len()` factors range over `[0, alpha_i)` and stand in for
    /// integer coordinates.
    pub fn with_truncated(alphas: &[u32], moduli: &[u32]) -> Result<Self, GroupError> {
        let mut factors: Vec<(u32, bool)> = alphas.iter().map(|&a| (a, true)).collect();
        factors.extend(moduli.iter().map(|&q| (q, false)));
        Self::build(factors)
    }

    /// Parses a group expression: factors `Z<q>` or `Z@<alpha>` joined by
    /// `x`, case-insensitive, no whitespace. Examples: `Z5`, `Z4xZ2xZ5`,
    /// `Z@5xZ3`.
    pub fn parse(expr: &str) -> Result<Self, GroupError> {
        let fail = |reason: &str| GroupError::Parse {
            expr: expr.to_owned(),
            reason: reason.to_owned(),
        };
        if expr.is_empty() {
            return Err(fail("empty expression"));
        }
        if expr.chars().any(char::is_whitespace) {
            return Err(fail("whitespace is not allowed"));
        }
        let mut factors = Vec::new();
        for token in expr.split(['x', 'X']) {
            let rest = token
                .strip_prefix(['z', 'Z'])
                .ok_or_else(|| fail("factor must start with Z"))?;
            let (digits, truncated) = match rest.strip_prefix('@') {
                Some(d) => (d, true),
                None => (rest, false),
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(fail("factor needs a decimal modulus, like Z12 or Z@5"));
            }
            let q: u32 = digits
                .parse()
                .map_err(|_| fail("modulus does not fit in 32 bits"))?;
            if q == 0 {
                return Err(fail("modulus must be at least 1"));
            }
            factors.push((q, truncated));
        }
        Self::build(factors)
    }

    fn build(mut factors: Vec<(u32, bool)>) -> Result<Self, GroupError> {
        if factors.iter().any(|&(q, _)| q == 0) {
            return Err(GroupError::ZeroModulus);
        }
        factors.retain(|&(q, _)| q > 1);
        factors.sort_by_key(|&(_, truncated)| !truncated); // stable: truncated first
        let truncated = factors.iter().filter(|&&(_, t)| t).count();
        let moduli: Vec<u32> = factors.iter().map(|&(q, _)| q).collect();
        let mut n: u64 = 1;
        for &q in &moduli {
            n = n.checked_mul(q as u64).ok_or(GroupError::OrderOverflow)?;
        }
        n.checked_mul(2).ok_or(GroupError::OrderOverflow)?;
        let j = moduli.iter().map(|&q| if q % 2 == 0 { 2 } else { 1 }).product();
        Ok(Self { moduli, truncated, n, j })
    }

    /// Order `n` of the abelian group.
    pub fn order(&self) -> u64 {
        self.n
    }

    /// Order `2n` of the dihedral extension.
    pub fn dihedral_order(&self) -> u64 {
        2 * self.n
    }

    /// Number of solutions of `2g = 0` in the (closure of the) abelian
    /// group: the product of 2 over every even factor.
    pub fn involution_count(&self) -> u64 {
        self.j
    }

    /// Cyclic factor moduli, truncated factors first.
    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    /// How many leading factors are truncated.
    pub fn truncated_count(&self) -> usize {
        self.truncated
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated > 0
    }

    /// True when there is at most one factor, so abelian indices add with a
    /// single modular reduction.
    pub fn is_cyclic(&self) -> bool {
        self.moduli.len() <= 1
    }

    /// The modular closure: same moduli with every truncation mark dropped.
    pub fn untruncated(&self) -> GroupSpec {
        GroupSpec { moduli: self.moduli.clone(), truncated: 0, n: self.n, j: self.j }
    }

    /// Canonical expression for this group, parseable by [`GroupSpec::parse`].
    pub fn render(&self) -> String {
        if self.moduli.is_empty() {
            return "Z1".to_owned();
        }
        let mut out = String::new();
        for (i, &q) in self.moduli.iter().enumerate() {
            if i > 0 {
                out.push('x');
            }
            if i < self.truncated {
                out.push_str("Z@");
            } else {
                out.push('Z');
            }
            out.push_str(&q.to_string());
        }
        out
    }

    pub fn identity(&self) -> DihElement {
        DihElement::rotation(vec![0; self.moduli.len()])
    }

    /// Checks arity and coordinate ranges.
    pub fn validate(&self, e: &DihElement) -> Result<(), GroupError> {
        if e.g.coords.len() != self.moduli.len() {
            return Err(GroupError::Arity {
                expected: self.moduli.len(),
                found: e.g.coords.len(),
            });
        }
        for (&c, &q) in e.g.coords.iter().zip(&self.moduli) {
            if c >= q {
                return Err(GroupError::Coordinate { value: c, modulus: q });
            }
        }
        Ok(())
    }

    /// Dihedral product `(z1, g1)·(z2, g2) = (z1 ⊕ z2, g1 + σ(z1) g2)`.
    ///
    /// On truncated factors this is the product of the modular closure; see
    /// [`GroupSpec::ambient_mul`] for the unreduced variant.
    pub fn mul(&self, a: &DihElement, b: &DihElement) -> Result<DihElement, GroupError> {
        self.validate(a)?;
        self.validate(b)?;
        let coords = a
            .g
            .coords
            .iter()
            .zip(&b.g.coords)
            .zip(&self.moduli)
            .map(|((&ca, &cb), &q)| {
                let (ca, cb, q) = (ca as u64, cb as u64, q as u64);
                let c = if a.flip { (ca + q - cb) % q } else { (ca + cb) % q };
                c as u32
            })
            .collect();
        Ok(DihElement { flip: a.flip ^ b.flip, g: AbelianElement { coords } })
    }

    /// Dihedral inverse: `(0, g)⁻¹ = (0, -g)` and `(1, g)⁻¹ = (1, g)`.
    pub fn inv(&self, a: &DihElement) -> Result<DihElement, GroupError> {
        self.validate(a)?;
        if a.flip {
            return Ok(a.clone());
        }
        let coords = a
            .g
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &q)| (q - c) % q)
            .collect();
        Ok(DihElement { flip: false, g: AbelianElement { coords } })
    }

    /// Index of an element: rotations in `[0, n)`, flips in `[n, 2n)`, the
    /// abelian part mixed-radix encoded with the last coordinate fastest.
    pub fn index_of(&self, e: &DihElement) -> Result<u64, GroupError> {
        self.validate(e)?;
        let mut g = 0u64;
        for (&c, &q) in e.g.coords.iter().zip(&self.moduli) {
            g = g * q as u64 + c as u64;
        }
        Ok(if e.flip { self.n + g } else { g })
    }

    /// Element with the given index; inverse of [`GroupSpec::index_of`].
    pub fn element_at(&self, index: u64) -> Result<DihElement, GroupError> {
        if index >= 2 * self.n {
            return Err(GroupError::Index { index, order: 2 * self.n });
        }
        let flip = index >= self.n;
        let mut g = if flip { index - self.n } else { index };
        let mut coords = vec![0u32; self.moduli.len()];
        for (slot, &q) in coords.iter_mut().zip(&self.moduli).rev() {
            *slot = (g % q as u64) as u32;
            g /= q as u64;
        }
        Ok(DihElement { flip, g: AbelianElement { coords } })
    }

    /// All `2n` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = DihElement> + '_ {
        (0..2 * self.n).map(|i| self.element_at(i).expect("index in range"))
    }

    /// Abelian addition on mixed-radix indices.
    #[inline]
    pub fn add_idx(&self, a: u64, b: u64) -> u64 {
        match self.moduli.len() {
            0 => 0,
            1 => {
                let q = self.moduli[0] as u64;
                let s = a + b;
                if s >= q {
                    s - q
                } else {
                    s
                }
            }
            _ => {
                let (mut ar, mut br, mut out, mut w) = (a, b, 0u64, 1u64);
                for &q in self.moduli.iter().rev() {
                    let q = q as u64;
                    let s = (ar % q + br % q) % q;
                    out += s * w;
                    w *= q;
                    ar /= q;
                    br /= q;
                }
                out
            }
        }
    }

    /// Abelian negation on mixed-radix indices.
    #[inline]
    pub fn neg_idx(&self, a: u64) -> u64 {
        match self.moduli.len() {
            0 => 0,
            1 => {
                let q = self.moduli[0] as u64;
                if a == 0 {
                    0
                } else {
                    q - a
                }
            }
            _ => {
                let (mut ar, mut out, mut w) = (a, 0u64, 1u64);
                for &q in self.moduli.iter().rev() {
                    let q = q as u64;
                    let d = ar % q;
                    out += if d == 0 { 0 } else { (q - d) * w };
                    w *= q;
                    ar /= q;
                }
                out
            }
        }
    }

    /// Dihedral product on element indices.
    #[inline]
    pub fn mul_idx(&self, a: u64, b: u64) -> u64 {
        let n = self.n;
        let (fa, ga) = if a >= n { (true, a - n) } else { (false, a) };
        let (fb, gb) = if b >= n { (true, b - n) } else { (false, b) };
        let gb = if fa { self.neg_idx(gb) } else { gb };
        let g = self.add_idx(ga, gb);
        if fa ^ fb {
            n + g
        } else {
            g
        }
    }

    /// Dihedral inverse on element indices.
    #[inline]
    pub fn inv_idx(&self, a: u64) -> u64 {
        if a >= self.n {
            a
        } else {
            self.neg_idx(a)
        }
    }

    /// Product with unreduced integer coordinates on truncated factors.
    ///
    /// Non-truncated factors still reduce modulo their modulus. Two pairs
    /// with equal ambient products also have equal modular products; the
    /// converse fails, which is exactly what truncation is for.
    pub fn ambient_mul(&self, a: &DihElement, b: &DihElement) -> Result<AmbientProduct, GroupError> {
        self.validate(a)?;
        self.validate(b)?;
        let coords = a
            .g
            .coords
            .iter()
            .zip(&b.g.coords)
            .zip(self.moduli.iter().enumerate())
            .map(|((&ca, &cb), (i, &q))| {
                let (ca, cb) = (ca as i64, cb as i64);
                let raw = if a.flip { ca - cb } else { ca + cb };
                if i < self.truncated {
                    raw
                } else {
                    raw.rem_euclid(q as i64)
                }
            })
            .collect();
        Ok(AmbientProduct { flip: a.flip ^ b.flip, coords })
    }

    /// True when `a·b = c·d` holds with ambient (unreduced) products.
    pub fn ambient_collision(
        &self,
        a: &DihElement,
        b: &DihElement,
        c: &DihElement,
        d: &DihElement,
    ) -> Result<bool, GroupError> {
        Ok(self.ambient_mul(a, b)? == self.ambient_mul(c, d)?)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Coordinate-transport map from a truncated group into its modular closure.
///
/// The map is the identity on coordinates; it only re-types the element.
/// Errors when `modular` is not the closure of `boxed` or the element does
/// not lie in the box.
pub fn phi_map(
    e: &DihElement,
    boxed: &GroupSpec,
    modular: &GroupSpec,
) -> Result<DihElement, GroupError> {
    let closure = boxed.untruncated();
    if *modular != closure {
        return Err(GroupError::SpecMismatch {
            expected: closure.render(),
            found: modular.render(),
        });
    }
    boxed.validate(e)?;
    Ok(e.clone())
}

/// An element of a finite abelian group, one coordinate per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianElement {
    coords: Vec<u32>,
}

impl AbelianElement {
    pub fn new(coords: Vec<u32>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

/// An element `(z, g)` of a generalized dihedral group: `z` is the flip bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DihElement {
    pub flip: bool,
    pub g: AbelianElement,
}

impl DihElement {
    /// The rotation `(0, g)`.
    pub fn rotation(coords: Vec<u32>) -> Self {
        Self { flip: false, g: AbelianElement::new(coords) }
    }

    /// The flip `(1, g)`.
    pub fn reflection(coords: Vec<u32>) -> Self {
        Self { flip: true, g: AbelianElement::new(coords) }
    }
}

impl fmt::Display for DihElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.flip { 'f' } else { 'r' };
        match self.g.coords.as_slice() {
            [c] => write!(f, "{tag}{c}"),
            coords => {
                write!(f, "{tag}(")?;
                for (i, c) in coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Result of an ambient product: flip bit plus signed, unreduced
/// coordinates (reduced ones on non-truncated factors).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientProduct {
    pub flip: bool,
    pub coords: Vec<i64>,
}
