//! Exact rational geometry: scalars, integer matrices, linear programming,
//! and polytopes with certified vertex sets and facet descriptions.

mod lattice;
pub mod linalg;
mod lp;
mod matrix;
mod polytope;

pub use lattice::{face_lattice, is_simple, lattice_isomorphic, FaceLattice};
pub use lp::{lp_feasible, Cmp, LinCon};
pub use matrix::IntMatrix;
pub use polytope::{
    apply_affine, argmax_vertices, extreme_points, halfspaces_describe, hull_halfspaces,
    minkowski, minkowski_with_weights, normal_cone_weight, project_coords, Halfspace,
    LatticePolytope,
};

use num::BigInt;
use num::BigRational;
use num::{One, Signed, Zero};

/// Exact rational scalar. Always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Arbitrary-precision integer scalar.
pub type Int = BigInt;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

/// Dot product of two rational vectors of equal length.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Dot product of an integer vector with a rational vector.
pub fn dot_int(a: &[Int], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot_int: length mismatch");
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += Rat::from_integer(x.clone()) * y;
        }
    }
    acc
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len(), "vec_add: length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len(), "vec_sub: length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Scale a rational vector to a primitive integer vector pointing the same
/// way: multiply by the lcm of denominators, divide by the gcd of entries.
/// The zero vector maps to the zero vector.
pub fn primitive_integer(v: &[Rat]) -> Vec<Int> {
    use num::Integer;
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<Int> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    ints
}

/// Format a rational as `"p/q"`, or just `"p"` when the denominator is 1.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"p"` or `"p/q"` into a rational.
pub fn parse_rat(s: &str) -> crate::Result<Rat> {
    let s = s.trim();
    let make = |n: &str, d: &str| -> Option<Rat> {
        let n: Int = n.parse().ok()?;
        let d: Int = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    };
    let parsed = match s.split_once('/') {
        Some((n, d)) => make(n, d),
        None => make(s, "1"),
    };
    parsed.ok_or_else(|| crate::Error::Parse(format!("bad rational: {s:?}")))
}

/// Sign-canonicalize an integer vector so its first nonzero entry is positive.
/// Returns true if the vector was negated.
pub fn canonical_sign(v: &mut [Int]) -> bool {
    for x in v.iter() {
        if x.is_positive() {
            return false;
        }
        if x.is_negative() {
            for y in v.iter_mut() {
                *y = -std::mem::take(y);
            }
            return true;
        }
    }
    false
}
