//! Incremental convex hull over exact integer arithmetic.
//!
//! Beneath-beyond insertion with explicit tight-point bookkeeping: every
//! facet carries the set of already-inserted points lying on it, which is
//! what makes horizon detection exact in degenerate (non-simplicial)
//! configurations. No floating point is involved anywhere.

use num_traits::{Signed, Zero};

use crate::lattice::{integer_kernel, Int, IntMat, IntVec, Rat};

use super::{Facet, LatticePolytope, PolytopeError};

const MAX_DIM: usize = 8;

pub(super) fn hull(points: &[IntVec]) -> Result<LatticePolytope, PolytopeError> {
    if points.is_empty() {
        return Err(PolytopeError::TooFewPoints(1));
    }
    let n = points[0].rank();
    if n == 0 || n > MAX_DIM {
        return Err(PolytopeError::UnsupportedDimension(n));
    }
    assert!(
        points.iter().all(|p| p.rank() == n),
        "points of mixed rank"
    );

    let mut pts: Vec<IntVec> = points.to_vec();
    pts.sort();
    pts.dedup();

    let rank = affine_rank(&pts);
    if rank < n {
        return Err(PolytopeError::NotFullDimensional { rank, ambient: n });
    }

    if n == 1 {
        return hull_dim1(&pts);
    }

    let mut b = Builder::init(n, pts)?;
    let order: Vec<usize> = (0..b.pts.len()).filter(|i| !b.inserted.contains(i)).collect();
    for idx in order {
        b.insert(idx);
    }
    b.finish()
}

fn hull_dim1(pts: &[IntVec]) -> Result<LatticePolytope, PolytopeError> {
    let min = pts.iter().map(|p| p[0].clone()).min().unwrap();
    let max = pts.iter().map(|p| p[0].clone()).max().unwrap();
    let vertices = vec![IntVec::new(vec![min.clone()]), IntVec::new(vec![max.clone()])];
    let mut facets = vec![
        Facet {
            normal: IntVec::from_i64(&[1]),
            offset: -min,
        },
        Facet {
            normal: IntVec::from_i64(&[-1]),
            offset: max,
        },
    ];
    facets.sort();
    Ok(LatticePolytope {
        dim: 1,
        vertices,
        facets,
        faces: Default::default(),
        points: Default::default(),
        volume: Default::default(),
        nf: Default::default(),
    })
}

/// Affine dimension of a point set.
fn affine_rank(pts: &[IntVec]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let rows: Vec<IntVec> = pts[1..].iter().map(|p| p - &pts[0]).collect();
    IntMat::from_rows(rows).rank()
}

#[derive(Clone)]
struct BFacet {
    normal: IntVec,
    offset: Int,
    /// Sorted indices of inserted points on the facet hyperplane.
    tight: Vec<usize>,
}

impl BFacet {
    fn eval(&self, p: &IntVec) -> Int {
        p.dot(&self.normal) + &self.offset
    }
}

struct Builder {
    n: usize,
    pts: Vec<IntVec>,
    inserted: std::collections::BTreeSet<usize>,
    facets: Vec<BFacet>,
    /// Strictly interior rational point, used to orient facet normals inward.
    reference: Vec<Rat>,
}

impl Builder {
    fn init(n: usize, pts: Vec<IntVec>) -> Result<Self, PolytopeError> {
        // greedy affinely independent seed simplex
        let mut seed: Vec<usize> = vec![0];
        for i in 1..pts.len() {
            let chosen: Vec<IntVec> = seed.iter().map(|&k| pts[k].clone()).collect();
            let mut with = chosen.clone();
            with.push(pts[i].clone());
            if affine_rank(&with) > affine_rank(&chosen) {
                seed.push(i);
            }
            if seed.len() == n + 1 {
                break;
            }
        }
        assert_eq!(seed.len(), n + 1, "full-dimensionality was pre-checked");

        let reference: Vec<Rat> = (0..n)
            .map(|j| {
                let sum: Int = seed.iter().map(|&k| pts[k][j].clone()).sum();
                Rat::new(sum, Int::from(n as i64 + 1))
            })
            .collect();

        let mut b = Builder {
            n,
            pts,
            inserted: seed.iter().copied().collect(),
            facets: Vec::new(),
            reference,
        };
        for omit in 0..seed.len() {
            let on: Vec<usize> = seed
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != omit)
                .map(|(_, &i)| i)
                .collect();
            let f = b.facet_through(&on);
            b.facets.push(f);
        }
        Ok(b)
    }

    /// Hyperplane through the given points, oriented toward the reference
    /// point, with the tight set recomputed over all inserted points.
    fn facet_through(&self, on: &[usize]) -> BFacet {
        let base = &self.pts[on[0]];
        let edges: Vec<IntVec> = on[1..].iter().map(|&i| &self.pts[i] - base).collect();
        let kernel = integer_kernel(&IntMat::from_rows(edges));
        assert_eq!(kernel.len(), 1, "facet points must span a hyperplane");
        let mut normal = kernel.into_iter().next().unwrap().primitized();
        let mut offset = -base.dot(&normal);
        let ref_val = self.eval_reference(&normal, &offset);
        assert!(!ref_val.is_zero(), "reference point on a facet hyperplane");
        if ref_val.is_negative() {
            normal = -&normal;
            offset = -offset;
        }
        let tight = self.tight_points(&normal, &offset);
        BFacet {
            normal,
            offset,
            tight,
        }
    }

    fn eval_reference(&self, normal: &IntVec, offset: &Int) -> Rat {
        let mut acc = Rat::from_integer(offset.clone());
        for (r, a) in self.reference.iter().zip(normal.iter()) {
            acc += r * &Rat::from_integer(a.clone());
        }
        acc
    }

    fn tight_points(&self, normal: &IntVec, offset: &Int) -> Vec<usize> {
        self.inserted
            .iter()
            .copied()
            .filter(|&i| (self.pts[i].dot(normal) + offset).is_zero())
            .collect()
    }

    fn insert(&mut self, idx: usize) {
        let p = self.pts[idx].clone();
        let evals: Vec<Int> = self.facets.iter().map(|f| f.eval(&p)).collect();
        self.inserted.insert(idx);

        if evals.iter().all(|e| !e.is_negative()) {
            // inside or on the boundary: never a new extreme point
            for (f, e) in self.facets.iter_mut().zip(&evals) {
                if e.is_zero() {
                    f.tight.push(idx);
                    f.tight.sort_unstable();
                }
            }
            return;
        }

        let visible: Vec<usize> = (0..self.facets.len())
            .filter(|&i| evals[i].is_negative())
            .collect();
        let kept: Vec<usize> = (0..self.facets.len())
            .filter(|&i| !evals[i].is_negative())
            .collect();

        // horizon ridges: (n-2)-dimensional intersections of a visible facet
        // with a kept one
        let mut new_facets: Vec<BFacet> = Vec::new();
        for &v in &visible {
            for &k in &kept {
                let ridge: Vec<usize> = intersect_sorted(&self.facets[v].tight, &self.facets[k].tight);
                if ridge.len() < self.n - 1 {
                    continue;
                }
                let ridge_pts: Vec<IntVec> = ridge.iter().map(|&i| self.pts[i].clone()).collect();
                if affine_rank(&ridge_pts) != self.n - 2 {
                    continue;
                }
                let mut on = ridge;
                on.push(idx);
                let f = self.facet_through(&on);
                if !new_facets
                    .iter()
                    .any(|g| g.normal == f.normal && g.offset == f.offset)
                {
                    new_facets.push(f);
                }
            }
        }
        assert!(
            !new_facets.is_empty(),
            "outside point produced no horizon facets"
        );

        let mut next: Vec<BFacet> = Vec::with_capacity(kept.len() + new_facets.len());
        for &k in &kept {
            let mut f = self.facets[k].clone();
            if evals[k].is_zero() {
                f.tight.push(idx);
                f.tight.sort_unstable();
            }
            next.push(f);
        }
        next.extend(new_facets);
        self.facets = next;
    }

    fn finish(self) -> Result<LatticePolytope, PolytopeError> {
        let n = self.n;
        // a point is a vertex iff its tight facet normals span the space
        let mut vertices: Vec<IntVec> = Vec::new();
        for &i in &self.inserted {
            let normals: Vec<IntVec> = self
                .facets
                .iter()
                .filter(|f| f.tight.binary_search(&i).is_ok())
                .map(|f| f.normal.clone())
                .collect();
            if normals.len() >= n && IntMat::from_rows(normals).rank() == n {
                vertices.push(self.pts[i].clone());
            }
        }
        vertices.sort();

        let mut facets: Vec<Facet> = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: f.offset.clone(),
            })
            .collect();
        facets.sort();
        facets.dedup();

        let p = LatticePolytope {
            dim: n,
            vertices,
            facets,
            faces: Default::default(),
            points: Default::default(),
            volume: Default::default(),
            nf: Default::default(),
        };
        verify(&p, &self.pts);
        Ok(p)
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Cross-verification of the V- and H-representations. Violations are bugs
/// in the hull construction, hence panics rather than errors.
fn verify(p: &LatticePolytope, input: &[IntVec]) {
    let n = p.dim;
    for f in p.facets() {
        assert!(f.normal.is_primitive(), "facet normal not primitive");
        for q in input {
            assert!(
                !f.eval(q).is_negative(),
                "input point violates a facet inequality"
            );
        }
        let tight: Vec<IntVec> = p
            .vertices()
            .iter()
            .filter(|v| f.contains(v))
            .cloned()
            .collect();
        assert!(
            affine_rank(&tight) == n - 1,
            "facet is not supported by an (n-1)-dimensional vertex set"
        );
    }
    for v in p.vertices() {
        let normals: Vec<IntVec> = p
            .facets()
            .iter()
            .filter(|f| f.contains(v))
            .map(|f| f.normal.clone())
            .collect();
        assert!(
            normals.len() >= n && IntMat::from_rows(normals).rank() == n,
            "vertex is not the intersection of its tight facets"
        );
    }
}
