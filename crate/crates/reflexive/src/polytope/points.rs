//! Exact lattice-point enumeration: a bounding-box scan with incremental
//! facet evaluation, classifying every point by the facets tight at it.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::lattice::{Int, IntVec};

use super::{Face, LatticePolytope};

/// Lattice points of a polytope together with their tight facet sets.
#[derive(Clone, Debug)]
pub struct LatticePoints {
    pub points: Vec<IntVec>,
    /// For each point, the sorted facet indices it lies on (empty = interior).
    pub tight: Vec<Vec<usize>>,
    /// Indices of strictly interior points.
    pub interior: Vec<usize>,
}

impl LatticePoints {
    /// `l(F)`: lattice points lying on the (closed) face.
    pub fn count_on_face(&self, face: &Face) -> usize {
        self.tight
            .iter()
            .filter(|t| is_subset(&face.tight_facets, t))
            .count()
    }

    /// `l*(F)`: lattice points in the relative interior of the face, i.e.
    /// whose tight facet set is exactly the face's.
    pub fn count_interior_of_face(&self, face: &Face) -> usize {
        self.tight
            .iter()
            .filter(|t| t.as_slice() == face.tight_facets.as_slice())
            .count()
    }

    /// Points on the boundary (tight on at least one facet).
    pub fn boundary(&self) -> impl Iterator<Item = &IntVec> {
        self.points
            .iter()
            .zip(self.tight.iter())
            .filter(|(_, t)| !t.is_empty())
            .map(|(p, _)| p)
    }
}

fn is_subset(sub: &[usize], sup: &[usize]) -> bool {
    let mut it = sup.iter();
    sub.iter().all(|x| it.by_ref().any(|y| y == x))
}

pub(super) fn enumerate(p: &LatticePolytope) -> LatticePoints {
    let n = p.dim();
    let lo: Vec<Int> = (0..n)
        .map(|j| p.vertices().iter().map(|v| v[j].clone()).min().unwrap())
        .collect();
    let hi: Vec<Int> = (0..n)
        .map(|j| p.vertices().iter().map(|v| v[j].clone()).max().unwrap())
        .collect();

    if let Some(out) = try_enumerate_i64(p, &lo, &hi) {
        return out;
    }
    enumerate_big(p, &lo, &hi)
}

/// Fast path over machine integers, with a proven-in-advance overflow bound;
/// falls back to big integers when the bound does not hold.
fn try_enumerate_i64(p: &LatticePolytope, lo: &[Int], hi: &[Int]) -> Option<LatticePoints> {
    let n = p.dim();
    let lo: Vec<i64> = lo.iter().map(BigInt::to_i64).collect::<Option<_>>()?;
    let hi: Vec<i64> = hi.iter().map(BigInt::to_i64).collect::<Option<_>>()?;
    let mut normals: Vec<Vec<i64>> = Vec::with_capacity(p.facets().len());
    let mut offsets: Vec<i64> = Vec::with_capacity(p.facets().len());
    for f in p.facets() {
        normals.push(
            f.normal
                .iter()
                .map(BigInt::to_i64)
                .collect::<Option<Vec<_>>>()?,
        );
        offsets.push(f.offset.to_i64()?);
    }
    // |<x, a> + c| <= n * max|x| * max|a| + |c| must stay far from overflow
    let xmax = lo
        .iter()
        .chain(hi.iter())
        .map(|v| v.unsigned_abs())
        .max()
        .unwrap_or(0);
    let amax = normals
        .iter()
        .flatten()
        .map(|v| v.unsigned_abs())
        .max()
        .unwrap_or(0);
    let cmax = offsets.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    let bound = (n as u128)
        .checked_mul(xmax as u128)?
        .checked_mul(amax.max(1) as u128)?
        .checked_add(cmax as u128)?;
    if bound > (i64::MAX / 4) as u128 {
        return None;
    }

    let mut points = Vec::new();
    let mut tight = Vec::new();
    let mut interior = Vec::new();

    let mut x = lo.clone();
    let mut evals: Vec<i64> = (0..normals.len())
        .map(|f| {
            normals[f]
                .iter()
                .zip(x.iter())
                .map(|(a, v)| a * v)
                .sum::<i64>()
                + offsets[f]
        })
        .collect();
    loop {
        if evals.iter().all(|e| *e >= 0) {
            let t: Vec<usize> = evals
                .iter()
                .enumerate()
                .filter(|(_, e)| **e == 0)
                .map(|(i, _)| i)
                .collect();
            let idx = points.len();
            points.push(IntVec::new(x.iter().map(|&v| Int::from(v)).collect()));
            if t.is_empty() {
                interior.push(idx);
            }
            tight.push(t);
        }
        // odometer step with incremental facet values
        let mut j = n;
        loop {
            if j == 0 {
                return Some(LatticePoints {
                    points,
                    tight,
                    interior,
                });
            }
            j -= 1;
            if x[j] < hi[j] {
                x[j] += 1;
                for (f, e) in evals.iter_mut().enumerate() {
                    *e += normals[f][j];
                }
                break;
            }
            let span = lo[j] - x[j];
            x[j] = lo[j];
            for (f, e) in evals.iter_mut().enumerate() {
                *e += normals[f][j] * span;
            }
        }
    }
}

fn enumerate_big(p: &LatticePolytope, lo: &[Int], hi: &[Int]) -> LatticePoints {
    let n = p.dim();
    let mut points = Vec::new();
    let mut tight = Vec::new();
    let mut interior = Vec::new();

    let mut x: Vec<Int> = lo.to_vec();
    let mut evals: Vec<Int> = p
        .facets()
        .iter()
        .map(|f| f.eval(&IntVec::new(x.clone())))
        .collect();
    loop {
        if evals.iter().all(|e| !e.is_negative()) {
            let t: Vec<usize> = evals
                .iter()
                .enumerate()
                .filter(|(_, e)| e.is_zero())
                .map(|(i, _)| i)
                .collect();
            let idx = points.len();
            points.push(IntVec::new(x.clone()));
            if t.is_empty() {
                interior.push(idx);
            }
            tight.push(t);
        }
        let mut j = n;
        loop {
            if j == 0 {
                return LatticePoints {
                    points,
                    tight,
                    interior,
                };
            }
            j -= 1;
            if x[j] < hi[j] {
                x[j] += 1;
                for (f, e) in evals.iter_mut().enumerate() {
                    *e += &p.facets()[f].normal[j];
                }
                break;
            }
            let span = &lo[j] - &x[j];
            x[j] = lo[j].clone();
            for (f, e) in evals.iter_mut().enumerate() {
                *e += &p.facets()[f].normal[j] * &span;
            }
        }
    }
}
