//! Full-dimensional lattice polytopes with exact vertex and facet
//! representations, polar duality, face lattices, lattice-point counts,
//! normalized volumes, and a `GL(n,Z)` normal form.

mod faces;
mod hull;
mod normal_form;
mod points;
pub mod samples;

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{Int, IntMat, IntVec, Rat};

pub use faces::{Face, FaceLattice};
pub use points::LatticePoints;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("points span a {rank}-dimensional affine subspace of rank-{ambient} space")]
    NotFullDimensional { rank: usize, ambient: usize },
    #[error("hulls above dimension {0} are not supported")]
    UnsupportedDimension(usize),
    #[error("the origin is not an interior point")]
    OriginNotInterior,
    #[error("polytope is not reflexive")]
    NotReflexive,
    #[error("facet normal is not primitive")]
    NonPrimitiveNormal,
    #[error("need at least {0} points")]
    TooFewPoints(usize),
}

/// A facet inequality `<x, normal> >= -offset` with a primitive inner normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: IntVec,
    pub offset: Int,
}

impl Facet {
    /// `<x, normal> + offset`; zero on the facet, positive inside.
    pub fn eval(&self, x: &IntVec) -> Int {
        x.dot(&self.normal) + &self.offset
    }

    pub fn contains(&self, x: &IntVec) -> bool {
        self.eval(x).is_zero()
    }
}

/// Outcome of a reflexivity test; `Err` carries the violation witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReflexivityWitness {
    /// Facet inequality with non-positive offset: the origin lies on or
    /// outside this facet.
    OriginNotInterior { facet: usize },
    /// Facet at integral distance `distance != 1` from the origin.
    FacetAtDistance { facet: usize, distance: Int },
}

/// Polar dual of a polytope with the origin interior: a lattice polytope
/// exactly when the input is reflexive.
#[derive(Clone, Debug)]
pub enum PolarDual {
    Reflexive(LatticePolytope),
    Rational(RationalPolytope),
}

/// Dual set of a non-reflexive polytope: vertices are exact rationals
/// `normal/offset`, one per facet of the primal.
#[derive(Clone, Debug)]
pub struct RationalPolytope {
    pub dim: usize,
    pub vertices: Vec<Vec<Rat>>,
    /// Inequalities `<v, y> >= -1`, one per vertex `v` of the primal.
    pub inequalities: Vec<IntVec>,
}

/// A full-dimensional lattice polytope. Immutable after construction;
/// face lattice, lattice points and volume are computed on first use.
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<IntVec>,
    facets: Vec<Facet>,
    faces: OnceLock<FaceLattice>,
    points: OnceLock<LatticePoints>,
    volume: OnceLock<Int>,
    nf: OnceLock<IntMat>,
}

impl Clone for LatticePolytope {
    fn clone(&self) -> Self {
        LatticePolytope {
            dim: self.dim,
            vertices: self.vertices.clone(),
            facets: self.facets.clone(),
            faces: OnceLock::new(),
            points: OnceLock::new(),
            volume: OnceLock::new(),
            nf: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LatticePolytope")
            .field("dim", &self.dim)
            .field("vertices", &self.vertices)
            .finish()
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}
impl Eq for LatticePolytope {}

impl LatticePolytope {
    /// Convex hull of the given points. Redundant and duplicate points are
    /// dropped; vertices and facets come out sorted and cross-verified.
    pub fn hull(points: &[IntVec]) -> Result<Self, PolytopeError> {
        hull::hull(points)
    }

    pub fn hull_i64(points: &[&[i64]]) -> Result<Self, PolytopeError> {
        let pts: Vec<IntVec> = points.iter().map(|p| IntVec::from_i64(p)).collect();
        Self::hull(&pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IntVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertex_matrix(&self) -> IntMat {
        IntMat::from_rows(self.vertices.clone())
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// Membership test (boundary included).
    pub fn contains(&self, x: &IntVec) -> bool {
        self.facets.iter().all(|f| !f.eval(x).is_negative())
    }

    pub fn contains_origin_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset.is_positive())
    }

    /// Reflexivity: the origin is interior and every facet lies at integral
    /// distance 1, i.e. every offset is 1.
    pub fn reflexivity(&self) -> Result<(), ReflexivityWitness> {
        for (i, f) in self.facets.iter().enumerate() {
            if !f.offset.is_positive() {
                return Err(ReflexivityWitness::OriginNotInterior { facet: i });
            }
        }
        for (i, f) in self.facets.iter().enumerate() {
            if !f.offset.is_one() {
                return Err(ReflexivityWitness::FacetAtDistance {
                    facet: i,
                    distance: f.offset.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexivity().is_ok()
    }

    /// Polar dual `{ y : <x, y> >= -1 for all x }`. For reflexive input this
    /// is again a lattice polytope; otherwise the vertices are rational.
    pub fn polar_dual(&self) -> Result<PolarDual, PolytopeError> {
        if !self.contains_origin_interior() {
            return Err(PolytopeError::OriginNotInterior);
        }
        if self.is_reflexive() {
            let verts: Vec<IntVec> = self.facets.iter().map(|f| f.normal.clone()).collect();
            let dual = Self::hull(&verts)?;
            // polarity swaps the two representations
            debug_assert_eq!(dual.vertices.len(), self.facets.len());
            debug_assert_eq!(dual.facets.len(), self.vertices.len());
            Ok(PolarDual::Reflexive(dual))
        } else {
            let vertices = self
                .facets
                .iter()
                .map(|f| {
                    let c = Rat::from_integer(f.offset.clone());
                    f.normal
                        .iter()
                        .map(|a| Rat::from_integer(a.clone()) / &c)
                        .collect()
                })
                .collect();
            let inequalities = self.vertices.clone();
            Ok(PolarDual::Rational(RationalPolytope {
                dim: self.dim,
                vertices,
                inequalities,
            }))
        }
    }

    /// Dual of a reflexive polytope, as a lattice polytope.
    pub fn dual(&self) -> Result<LatticePolytope, PolytopeError> {
        match self.polar_dual()? {
            PolarDual::Reflexive(d) => Ok(d),
            PolarDual::Rational(_) => Err(PolytopeError::NotReflexive),
        }
    }

    /// Lattice points of the polytope, classified by carrier face.
    pub fn lattice_points(&self) -> &LatticePoints {
        self.points.get_or_init(|| points::enumerate(self))
    }

    /// Number of lattice points.
    pub fn point_count(&self) -> usize {
        self.lattice_points().points.len()
    }

    /// Number of interior lattice points.
    pub fn interior_point_count(&self) -> usize {
        self.lattice_points().interior.len()
    }

    /// The face lattice of proper faces (dimensions `0..dim`), graded.
    pub fn face_lattice(&self) -> &FaceLattice {
        self.faces.get_or_init(|| faces::build(self))
    }

    /// Normalized volume (degree) of the polytope: `dim! *` Euclidean volume.
    pub fn normalized_volume(&self) -> Int {
        self.volume
            .get_or_init(|| faces::polytope_volume(self))
            .clone()
    }

    /// Normalized volume of a face, relative to the lattice induced on the
    /// affine span of the face.
    pub fn face_volume(&self, face_id: usize) -> Int {
        faces::face_volume(self, face_id)
    }

    /// Canonical vertex matrix under `GL(n,Z)` and vertex relabeling. Two
    /// polytopes are lattice equivalent iff their normal forms agree.
    pub fn normal_form(&self) -> IntMat {
        self.nf.get_or_init(|| normal_form::normal_form(self)).clone()
    }

    /// Applies a unimodular transform `x -> u x` to every vertex.
    pub fn transformed(&self, u: &IntMat) -> Result<Self, PolytopeError> {
        assert!(u.is_unimodular(), "transform must be unimodular");
        let pts: Vec<IntVec> = self.vertices.iter().map(|v| u.mul_vec(v)).collect();
        Self::hull(&pts)
    }
}

/// Integral distance between the hyperplane `<x, normal> = c` and a point.
/// The normal must be primitive so that the hyperplane is generated by its
/// lattice points.
pub fn integral_distance(
    normal: &IntVec,
    c: &Int,
    point: &IntVec,
) -> Result<Int, PolytopeError> {
    if !normal.is_primitive() {
        return Err(PolytopeError::NonPrimitiveNormal);
    }
    Ok((c - point.dot(normal)).abs())
}

#[cfg(test)]
mod tests {
    use super::samples;
    use super::*;
    use crate::lattice::int;

    #[test]
    fn hull_triangle() {
        let p = LatticePolytope::hull_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.facets().len(), 3);
    }

    #[test]
    fn hull_drops_interior_and_duplicate_points() {
        let p = LatticePolytope::hull_i64(&[
            &[1, 0],
            &[-1, 0],
            &[0, 1],
            &[0, -1],
            &[0, 0],
            &[1, 0],
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
    }

    #[test]
    fn hull_rejects_flat_input() {
        let err = LatticePolytope::hull_i64(&[&[0, 0], &[1, 1], &[2, 2]]).unwrap_err();
        assert!(matches!(err, PolytopeError::NotFullDimensional { .. }));
    }

    #[test]
    fn quintic_simplex_facets() {
        let p = samples::newton_simplex(4);
        assert_eq!(p.vertices().len(), 5);
        assert_eq!(p.facets().len(), 5);
        // facets are x_i >= -1 and x_1+..+x_4 <= 1, all at offset 1
        assert!(p.is_reflexive());
        for f in p.facets() {
            assert_eq!(f.offset, int(1));
        }
    }

    #[test]
    fn polar_dual_of_quintic() {
        let p = samples::newton_simplex(4);
        let d = p.dual().unwrap();
        let mut expect = vec![
            IntVec::from_i64(&[1, 0, 0, 0]),
            IntVec::from_i64(&[0, 1, 0, 0]),
            IntVec::from_i64(&[0, 0, 1, 0]),
            IntVec::from_i64(&[0, 0, 0, 1]),
            IntVec::from_i64(&[-1, -1, -1, -1]),
        ];
        expect.sort();
        assert_eq!(d.vertices(), &expect[..]);
    }

    #[test]
    fn polar_dual_of_square() {
        let p = samples::cube(2);
        let d = p.dual().unwrap();
        assert_eq!(d.vertices().len(), 4);
        assert!(d.vertices().contains(&IntVec::from_i64(&[1, 0])));
        assert!(d.vertices().contains(&IntVec::from_i64(&[0, -1])));
    }

    #[test]
    fn double_dual_is_identity_on_vertices() {
        for p in [
            samples::newton_simplex(3),
            samples::cube(3),
            samples::cross_polytope(3),
        ] {
            let dd = p.dual().unwrap().dual().unwrap();
            assert_eq!(p.vertices(), dd.vertices());
        }
    }

    #[test]
    fn reflexivity_witnesses() {
        let p = LatticePolytope::hull_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        assert!(p.is_reflexive());

        let scaled = LatticePolytope::hull_i64(&[&[2, 0], &[0, 2], &[-2, -2]]).unwrap();
        match scaled.reflexivity() {
            Err(ReflexivityWitness::FacetAtDistance { distance, .. }) => {
                assert_eq!(distance, int(2));
            }
            other => panic!("expected distance witness, got {other:?}"),
        }

        let shifted = LatticePolytope::hull_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(
            shifted.reflexivity(),
            Err(ReflexivityWitness::OriginNotInterior { .. })
        ));
    }

    #[test]
    fn integral_distances() {
        let n = IntVec::from_i64(&[1, 1]);
        assert_eq!(
            integral_distance(&n, &int(1), &IntVec::from_i64(&[0, 0])).unwrap(),
            int(1)
        );
        let n2 = IntVec::from_i64(&[1, 0]);
        assert_eq!(
            integral_distance(&n2, &int(3), &IntVec::from_i64(&[1, 0])).unwrap(),
            int(2)
        );
        let bad = IntVec::from_i64(&[2, 2]);
        assert!(matches!(
            integral_distance(&bad, &int(1), &IntVec::from_i64(&[0, 0])),
            Err(PolytopeError::NonPrimitiveNormal)
        ));
        // quintic facet x_1+..+x_4 = 1 vs the origin
        let q = IntVec::from_i64(&[1, 1, 1, 1]);
        assert_eq!(
            integral_distance(&q, &int(1), &IntVec::zeros(4)).unwrap(),
            int(1)
        );
    }

    #[test]
    fn lattice_point_counts() {
        let square = samples::cube(2);
        let pts = square.lattice_points();
        assert_eq!(pts.points.len(), 9);
        assert_eq!(pts.interior.len(), 1);

        let quintic = samples::newton_simplex(4);
        assert_eq!(quintic.point_count(), 126);
        assert_eq!(quintic.interior_point_count(), 1);
    }

    #[test]
    fn volumes() {
        let unit = LatticePolytope::hull_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
            .unwrap();
        assert_eq!(unit.normalized_volume(), int(1));
        assert_eq!(samples::newton_simplex(4).normalized_volume(), int(625));
        assert_eq!(samples::dual_simplex(4).normalized_volume(), int(5));
        assert_eq!(samples::cube(2).normalized_volume(), int(8));
    }

    #[test]
    fn f_vector_of_quintic() {
        let p = samples::newton_simplex(4);
        let fl = p.face_lattice();
        let fv: Vec<usize> = (0..4).map(|d| fl.by_dim(d).len()).collect();
        assert_eq!(fv, vec![5, 10, 10, 5]);
    }

    #[test]
    fn transform_invariance_of_counts() {
        let p = samples::newton_simplex(3);
        let u = IntMat::from_i64(&[&[1, 2, 0], &[0, 1, 0], &[3, 5, 1]]);
        assert!(u.is_unimodular());
        let q = p.transformed(&u).unwrap();
        assert_eq!(p.point_count(), q.point_count());
        assert_eq!(p.normalized_volume(), q.normalized_volume());
        assert_eq!(p.is_reflexive(), q.is_reflexive());
    }
}
