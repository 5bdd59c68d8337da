//! Stock polytopes used across tests, the CLI and the demo.

use crate::lattice::{Int, IntVec};

use super::LatticePolytope;

/// The Newton simplex of degree-(n+1) hypersurfaces in projective n-space:
/// `x_i >= -1`, `x_1 + ... + x_n <= 1`. Reflexive, with normalized volume
/// `(n+1)^n`.
pub fn newton_simplex(n: usize) -> LatticePolytope {
    let minus_one = IntVec::new(vec![Int::from(-1); n]);
    let mut pts = vec![minus_one.clone()];
    for i in 0..n {
        let mut v = minus_one.clone();
        v[i] = Int::from(n as i64);
        pts.push(v);
    }
    LatticePolytope::hull(&pts).expect("simplex is full-dimensional")
}

/// Polar dual of [`newton_simplex`]: the simplex on `e_1, ..., e_n` and
/// `(-1, ..., -1)`, the fan polytope of projective n-space.
pub fn dual_simplex(n: usize) -> LatticePolytope {
    let mut pts: Vec<IntVec> = (0..n).map(|i| IntVec::basis(n, i)).collect();
    pts.push(IntVec::new(vec![Int::from(-1); n]));
    LatticePolytope::hull(&pts).expect("simplex is full-dimensional")
}

/// The cube `[-1, 1]^n`.
pub fn cube(n: usize) -> LatticePolytope {
    let mut pts = Vec::with_capacity(1 << n);
    for mask in 0..(1u32 << n) {
        let v: Vec<Int> = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Int::from(1)
                } else {
                    Int::from(-1)
                }
            })
            .collect();
        pts.push(IntVec::new(v));
    }
    LatticePolytope::hull(&pts).expect("cube is full-dimensional")
}

/// The cross-polytope `conv{ +-e_i }`, polar dual of the cube.
pub fn cross_polytope(n: usize) -> LatticePolytope {
    let mut pts = Vec::with_capacity(2 * n);
    for i in 0..n {
        pts.push(IntVec::basis(n, i));
        pts.push(-&IntVec::basis(n, i));
    }
    LatticePolytope::hull(&pts).expect("cross-polytope is full-dimensional")
}
