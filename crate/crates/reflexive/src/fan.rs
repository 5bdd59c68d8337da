//! Complete fans from polytopes and exact per-cone singularity
//! classification.
//!
//! Cones are stored by their primitive ray generators. A cone is Gorenstein
//! when a lattice functional evaluates to 1 on every generator; the terminal
//! and canonical tests enumerate lattice points of the slab below that
//! hyperplane, which is the pyramid over the generators.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{
    lattice_quotient, smith_normal_form, solve_rational, AbelianQuotient, Int, IntMat, IntVec,
    Rat,
};
use crate::lp::max_margin;
use crate::polytope::{LatticePolytope, PolytopeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("the origin is not interior to the polytope")]
    OriginNotInterior,
    #[error("cone is not strongly convex")]
    NotStronglyConvex,
    #[error("fan is not complete")]
    FanNotComplete,
    #[error("top cone {0} has no integral support element")]
    NotGorenstein(usize),
    #[error("polytope is not reflexive")]
    NotReflexive,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// A strongly convex rational polyhedral cone, kept by its primitive ray
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    rays: Vec<IntVec>,
    ambient: usize,
}

impl Cone {
    /// Builds a cone from generators; they are primitivized, deduplicated
    /// and checked for strong convexity.
    pub fn new(generators: &[IntVec]) -> Result<Self, FanError> {
        assert!(!generators.is_empty(), "cone needs at least one generator");
        let ambient = generators[0].rank();
        let mut rays: Vec<IntVec> = generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(IntVec::primitized)
            .collect();
        rays.sort();
        rays.dedup();
        let c = Cone { rays, ambient };
        if !c.is_strongly_convex() {
            return Err(FanError::NotStronglyConvex);
        }
        Ok(c)
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Dimension of the linear span of the cone.
    pub fn dim(&self) -> usize {
        IntMat::from_rows(self.rays.clone()).rank()
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim()
    }

    /// A cone is strongly convex iff some functional is strictly positive on
    /// every generator; decided by an exact margin LP.
    fn is_strongly_convex(&self) -> bool {
        let rows: Vec<Vec<Rat>> = self.rays.iter().map(IntVec::to_rat).collect();
        let consts = vec![Rat::zero(); rows.len()];
        let (eps, _) = max_margin(&rows, &consts);
        eps.is_positive()
    }

    /// The rational support element with `<k, ray> = 1` for every ray, when
    /// one exists (free coordinates pinned to zero for lower-dimensional
    /// cones).
    pub fn support_element(&self) -> Option<Vec<Rat>> {
        let a = IntMat::from_rows(self.rays.clone());
        let ones = IntVec::new(vec![Int::one(); self.rays.len()]);
        solve_rational(&a, &ones)
    }
}

/// Exact singularity flags of a cone. `terminal` and `canonical` are only
/// defined for Q-Gorenstein cones and are reported false otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub simplicial: bool,
    pub q_gorenstein: bool,
    pub gorenstein: bool,
    pub terminal: bool,
    pub canonical: bool,
    pub smooth: bool,
    /// The support element `k` with `<k, ray> = 1`, when it exists.
    pub support_element: Option<Vec<Rat>>,
}

/// Classifies a cone: simplicial, (Q-)Gorenstein, terminal, canonical and
/// smooth, all decided exactly.
pub fn classify_cone(cone: &Cone) -> SingularityReport {
    let simplicial = cone.is_simplicial();
    let support = cone.support_element();
    let q_gorenstein = support.is_some();
    let gorenstein = support
        .as_ref()
        .map_or(false, |k| k.iter().all(Rat::is_integer));

    let smooth = simplicial && {
        let snf = smith_normal_form(&IntMat::from_rows(cone.rays.clone()));
        snf.invariant_factors().iter().all(|f| f.is_one())
    };

    let (terminal, canonical) = match &support {
        None => (false, false),
        Some(k) => slab_tests(cone, k),
    };

    let report = SingularityReport {
        simplicial,
        q_gorenstein,
        gorenstein,
        terminal,
        canonical,
        smooth,
        support_element: support,
    };
    // smooth => terminal, Gorenstein, simplicial; Gorenstein => canonical
    assert!(!report.smooth || (report.terminal && report.gorenstein && report.simplicial));
    assert!(!report.gorenstein || report.canonical);
    report
}

/// Lattice-point tests on the slab `{ y in cone : <k, y> <= 1 }`, the
/// pyramid over the ray generators: terminal means the slab contains only
/// the origin and the generators; canonical means no nonzero point lies
/// strictly below the support hyperplane.
fn slab_tests(cone: &Cone, k: &[Rat]) -> (bool, bool) {
    let points = pyramid_lattice_points(cone);
    let mut terminal = true;
    let mut canonical = true;
    for y in &points {
        if y.is_zero() {
            continue;
        }
        let level: Rat = k
            .iter()
            .zip(y.iter())
            .map(|(ki, yi)| ki * Rat::from_integer(yi.clone()))
            .sum();
        if level < Rat::one() {
            canonical = false;
            terminal = false;
            break;
        }
        if !cone.rays.contains(y) {
            terminal = false;
        }
    }
    (terminal, canonical)
}

/// Lattice points of `conv(0, rays)`, handling lower-dimensional cones by
/// passing to coordinates on the saturated span lattice.
fn pyramid_lattice_points(cone: &Cone) -> Vec<IntVec> {
    let n = cone.ambient;
    let d = cone.dim();
    let mut pts = vec![IntVec::zeros(n)];
    pts.extend(cone.rays.iter().cloned());
    if d == n {
        let p = LatticePolytope::hull(&pts).expect("pyramid over a full-dimensional cone");
        return p.lattice_points().points.clone();
    }
    // saturated basis of the span, from the Hermite form of the ray matrix
    let (h, _) = crate::lattice::hermite_normal_form(&IntMat::from_rows(cone.rays.clone()));
    let basis: Vec<IntVec> = (0..d).map(|i| h.row(i)).collect();
    let basis_mat = IntMat::from_rows(basis.clone());
    let local: Vec<IntVec> = pts
        .iter()
        .map(|p| {
            crate::lattice::express_in_basis(p, &basis_mat)
                .expect("cone points lie in the span lattice")
        })
        .collect();
    let poly = LatticePolytope::hull(&local).expect("pyramid is full-dimensional in its span");
    poly.lattice_points()
        .points
        .iter()
        .map(|q| {
            let mut out = IntVec::zeros(n);
            for (c, b) in q.iter().zip(&basis) {
                out = &out + &b.scaled(c);
            }
            out
        })
        .collect()
}

/// A finite collection of cones closed under faces, stored as sorted ray
/// index sets over a shared primitive ray list.
#[derive(Clone, Debug)]
pub struct Fan {
    ambient: usize,
    rays: Vec<IntVec>,
    /// All cones of positive dimension, as sorted ray index sets.
    cones: Vec<Vec<usize>>,
    /// Indices into `cones`, grouped by cone dimension (index 0 = dim 1).
    by_dim: Vec<Vec<usize>>,
    complete: bool,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        if self.ambient != other.ambient || self.rays != other.rays {
            return false;
        }
        let a: BTreeSet<&Vec<usize>> = self.cones.iter().collect();
        let b: BTreeSet<&Vec<usize>> = other.cones.iter().collect();
        a == b
    }
}
impl Eq for Fan {}

impl Fan {
    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Ray index sets of the cones of the given dimension (`1..=ambient`).
    pub fn cones_of_dim(&self, dim: usize) -> Vec<&Vec<usize>> {
        if dim == 0 || dim > self.ambient {
            return Vec::new();
        }
        self.by_dim[dim - 1]
            .iter()
            .map(|&i| &self.cones[i])
            .collect()
    }

    pub fn maximal_cones(&self) -> Vec<&Vec<usize>> {
        self.cones_of_dim(self.ambient)
    }

    pub fn cone(&self, ray_indices: &[usize]) -> Cone {
        let gens: Vec<IntVec> = ray_indices.iter().map(|&i| self.rays[i].clone()).collect();
        Cone::new(&gens).expect("fan cones are strongly convex")
    }

    /// Classification of every maximal cone, in cone order.
    pub fn classify_maximal_cones(&self) -> Vec<SingularityReport> {
        self.maximal_cones()
            .iter()
            .map(|c| classify_cone(&self.cone(c)))
            .collect()
    }

    /// Builds a fan from maximal cones: faces are closed over, rays are
    /// deduplicated, and completeness is certified.
    pub fn from_maximal_cones(
        ambient: usize,
        max_cones: Vec<Vec<IntVec>>,
    ) -> Result<Fan, FanError> {
        let mut rays: Vec<IntVec> = Vec::new();
        for c in &max_cones {
            for g in c {
                let p = g.primitized();
                if !rays.contains(&p) {
                    rays.push(p);
                }
            }
        }
        rays.sort();

        let mut cone_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for gens in &max_cones {
            let idx: Vec<usize> = {
                let mut v: Vec<usize> = gens
                    .iter()
                    .map(|g| rays.binary_search(&g.primitized()).unwrap())
                    .collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let cone = Cone::new(gens)?;
            for face in cone_faces(&cone, &idx) {
                cone_sets.insert(face);
            }
            cone_sets.insert(idx);
        }
        let cones: Vec<Vec<usize>> = cone_sets.into_iter().collect();

        let mut by_dim = vec![Vec::new(); ambient];
        for (i, c) in cones.iter().enumerate() {
            let gens: Vec<IntVec> = c.iter().map(|&r| rays[r].clone()).collect();
            let d = IntMat::from_rows(gens).rank();
            by_dim[d - 1].push(i);
        }

        let mut fan = Fan {
            ambient,
            rays,
            cones,
            by_dim,
            complete: false,
        };
        fan.complete = fan.check_complete();
        Ok(fan)
    }

    /// Face fan of a polytope with the origin in its interior: one cone over
    /// every proper face.
    pub fn face_fan(p: &LatticePolytope) -> Result<Fan, FanError> {
        if !p.contains_origin_interior() {
            return Err(FanError::OriginNotInterior);
        }
        let fl = p.face_lattice();
        let max_cones: Vec<Vec<IntVec>> = fl
            .by_dim(p.dim() - 1)
            .iter()
            .map(|&id| {
                fl.face(id)
                    .vertices
                    .iter()
                    .map(|&v| p.vertices()[v].clone())
                    .collect()
            })
            .collect();
        Self::from_maximal_cones(p.dim(), max_cones)
    }

    /// Inner-normal fan of a full-dimensional polytope: the cone at a face
    /// is spanned by the normals of the facets containing it.
    pub fn normal_fan(p: &LatticePolytope) -> Fan {
        let fl = p.face_lattice();
        let max_cones: Vec<Vec<IntVec>> = fl
            .by_dim(0)
            .iter()
            .map(|&id| {
                fl.face(id)
                    .tight_facets
                    .iter()
                    .map(|&f| p.facets()[f].normal.clone())
                    .collect()
            })
            .collect();
        Self::from_maximal_cones(p.dim(), max_cones)
            .expect("normal cones of a polytope are strongly convex")
    }

    /// Completeness certificate: every ridge of a maximal cone is shared by
    /// exactly two maximal cones, and interior sample points of each maximal
    /// cone lie in no other one.
    fn check_complete(&self) -> bool {
        let max: Vec<Vec<usize>> = self.maximal_cones().into_iter().cloned().collect();
        if max.is_empty() {
            return false;
        }
        let mut ridge_count: std::collections::HashMap<Vec<usize>, usize> = Default::default();
        for c in &max {
            for ridge in self.cone_ridges(c) {
                *ridge_count.entry(ridge).or_insert(0) += 1;
            }
        }
        if !ridge_count.values().all(|&n| n == 2) {
            return false;
        }
        // disjoint interiors: the ray sum of each maximal cone is interior to
        // it and must avoid every other maximal cone
        for (i, c) in max.iter().enumerate() {
            let sum = c.iter().fold(IntVec::zeros(self.ambient), |acc, &r| {
                &acc + &self.rays[r]
            });
            for (j, other) in max.iter().enumerate() {
                let inside = self.cone_contains(other, &sum);
                if j == i && !inside {
                    return false;
                }
                if j != i && inside {
                    return false;
                }
            }
        }
        true
    }

    /// Ridges (facets) of a maximal cone, as sorted ray index sets.
    fn cone_ridges(&self, cone: &[usize]) -> Vec<Vec<usize>> {
        let gens: Vec<IntVec> = cone.iter().map(|&r| self.rays[r].clone()).collect();
        let c = Cone::new(&gens).expect("fan cones are strongly convex");
        cone_faces(&c, cone)
            .into_iter()
            .filter(|f| {
                let rows: Vec<IntVec> = f.iter().map(|&r| self.rays[r].clone()).collect();
                !rows.is_empty() && IntMat::from_rows(rows).rank() == self.ambient - 1
            })
            .collect()
    }

    /// Exact membership of a lattice vector in a fan cone.
    pub fn cone_contains(&self, cone: &[usize], y: &IntVec) -> bool {
        let gens: Vec<IntVec> = cone.iter().map(|&r| self.rays[r].clone()).collect();
        nonneg_combination(&gens, y)
    }
}

/// Decides whether `y` is a nonnegative rational combination of the
/// generators, by scanning the simplicial generator subsets (Caratheodory).
fn nonneg_combination(gens: &[IntVec], y: &IntVec) -> bool {
    if y.is_zero() {
        return true;
    }
    let span_rank = IntMat::from_rows(gens.to_vec()).rank();
    let mut with_y = gens.to_vec();
    with_y.push(y.clone());
    if IntMat::from_rows(with_y).rank() > span_rank {
        return false;
    }
    subsets_of_rank(gens, span_rank).into_iter().any(|subset| {
        let a = IntMat::from_rows(
            subset
                .iter()
                .map(|&j| gens[j].clone())
                .collect::<Vec<_>>(),
        )
        .transpose();
        match solve_rational(&a, y) {
            Some(lambda) => lambda.iter().all(|l| !l.is_negative()),
            None => false,
        }
    })
}

/// All size-`k` generator index subsets spanning rank `k`.
fn subsets_of_rank(gens: &[IntVec], k: usize) -> Vec<Vec<usize>> {
    let n = gens.len();
    let mut out = Vec::new();
    let mut stack = vec![(Vec::<usize>::new(), 0usize)];
    while let Some((cur, start)) = stack.pop() {
        if cur.len() == k {
            let rows: Vec<IntVec> = cur.iter().map(|&j| gens[j].clone()).collect();
            if IntMat::from_rows(rows).rank() == k {
                out.push(cur);
            }
            continue;
        }
        if cur.len() + (n - start) < k {
            continue;
        }
        for j in start..n {
            let mut next = cur.clone();
            next.push(j);
            stack.push((next, j + 1));
        }
    }
    out
}

/// Proper faces of a cone as sorted ray index subsets (`idx` names the rays
/// of the cone in the ambient fan).
fn cone_faces(cone: &Cone, idx: &[usize]) -> Vec<Vec<usize>> {
    let k = cone.rays().len();
    assert_eq!(k, idx.len());
    if cone.is_simplicial() {
        // faces of a simplicial cone are exactly the ray subsets
        let mut out = Vec::new();
        for mask in 1u64..(1 << k) - 1 {
            let mut sub: Vec<usize> = (0..k)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| idx[i])
                .collect();
            sub.sort_unstable();
            out.push(sub);
        }
        return out;
    }
    // general cones: faces through the apex of the pyramid conv(0, rays)
    let n = cone.ambient_rank();
    let mut pts = vec![IntVec::zeros(n)];
    pts.extend(cone.rays().iter().cloned());
    let local = project_to_span(&pts, cone);
    let p = LatticePolytope::hull(&local).expect("pyramid over cone spans the cone span");
    let fl = p.face_lattice();
    let vert_pos: Vec<usize> = p
        .vertices()
        .iter()
        .map(|v| {
            local
                .iter()
                .position(|q| q == v)
                .expect("hull vertices come from the input")
        })
        .collect();
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in fl.faces() {
        let members: Vec<usize> = f.vertices.iter().map(|&vi| vert_pos[vi]).collect();
        if !members.contains(&0) {
            continue; // faces of the cone pass through the apex
        }
        let rays_in: Vec<usize> = members
            .iter()
            .filter(|&&m| m > 0)
            .map(|&m| idx[m - 1])
            .collect();
        if rays_in.is_empty() || rays_in.len() == k {
            continue;
        }
        let mut sorted = rays_in;
        sorted.sort_unstable();
        out.insert(sorted);
    }
    out.into_iter().collect()
}

/// Writes the points in coordinates on the saturated lattice of the cone's
/// span (identity when the cone is full-dimensional).
fn project_to_span(pts: &[IntVec], cone: &Cone) -> Vec<IntVec> {
    let n = cone.ambient_rank();
    let d = cone.dim();
    if d == n {
        return pts.to_vec();
    }
    let (h, _) = crate::lattice::hermite_normal_form(&IntMat::from_rows(cone.rays().to_vec()));
    let basis = IntMat::from_rows((0..d).map(|i| h.row(i)).collect());
    pts.iter()
        .map(|p| crate::lattice::express_in_basis(p, &basis).expect("point in span lattice"))
        .collect()
}

/// Quotient of the ambient lattice by the span of all ray generators: the
/// fundamental group of the smooth open locus of the associated variety.
pub fn fan_fundamental_group(fan: &Fan) -> Result<AbelianQuotient, FanError> {
    if !fan.is_complete() {
        return Err(FanError::FanNotComplete);
    }
    Ok(lattice_quotient(fan.rays(), fan.ambient_rank()))
}

/// Decides whether a complete fan is the fan of a Gorenstein Fano variety.
///
/// Equivalent characterization used here: the convex hull of the ray
/// generators must be a reflexive polytope whose face fan is the given fan.
/// In that case the anticanonical support elements are the negated facet
/// normals of the hull and the polytope assembled from them is integral.
/// A maximal cone without even a rational support element makes the
/// anticanonical function undefined, which is reported as an error; a
/// rational-but-not-integral support element simply yields `false`.
pub fn is_fano_gorenstein(fan: &Fan) -> Result<bool, FanError> {
    if !fan.is_complete() {
        return Err(FanError::FanNotComplete);
    }
    for (i, c) in fan.maximal_cones().iter().enumerate() {
        if fan.cone(c).support_element().is_none() {
            return Err(FanError::NotGorenstein(i));
        }
    }
    let hull = LatticePolytope::hull(fan.rays())?;
    if !hull.is_reflexive() {
        return Ok(false);
    }
    Ok(Fan::face_fan(&hull)? == *fan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int;
    use crate::polytope::samples;

    fn v(coords: &[i64]) -> IntVec {
        IntVec::from_i64(coords)
    }

    fn rat(v: i64) -> Rat {
        Rat::from_integer(v.into())
    }

    #[test]
    fn smooth_quadrant() {
        let c = Cone::new(&[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let r = classify_cone(&c);
        assert!(r.smooth && r.terminal && r.gorenstein && r.simplicial);
    }

    #[test]
    fn gorenstein_not_terminal() {
        // slab of cone((1,0), (1,2)) holds the extra point (1,1)
        let c = Cone::new(&[v(&[1, 0]), v(&[1, 2])]).unwrap();
        let r = classify_cone(&c);
        assert!(r.gorenstein && r.canonical && r.simplicial);
        assert!(!r.terminal && !r.smooth);
        assert_eq!(r.support_element.unwrap(), vec![rat(1), rat(0)]);
    }

    #[test]
    fn gorenstein_non_simplicial() {
        let c =
            Cone::new(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[1, 1, -1])]).unwrap();
        let r = classify_cone(&c);
        assert!(r.gorenstein && !r.simplicial);
        assert_eq!(r.support_element.unwrap(), vec![rat(1), rat(1), rat(1)]);
    }

    #[test]
    fn line_is_rejected() {
        assert!(matches!(
            Cone::new(&[v(&[1, 0]), v(&[-1, 0])]),
            Err(FanError::NotStronglyConvex)
        ));
    }

    #[test]
    fn face_fan_of_projective_space_polytope() {
        // simplex on e_1..e_4, (-1,-1,-1,-1): five smooth maximal cones
        let p = samples::dual_simplex(4);
        let fan = Fan::face_fan(&p).unwrap();
        assert!(fan.is_complete());
        assert_eq!(fan.maximal_cones().len(), 5);
        for r in fan.classify_maximal_cones() {
            assert!(r.smooth);
        }
        assert!(is_fano_gorenstein(&fan).unwrap());
    }

    #[test]
    fn face_fan_of_square() {
        let p = samples::cube(2);
        let fan = Fan::face_fan(&p).unwrap();
        assert!(fan.is_complete());
        assert_eq!(fan.maximal_cones().len(), 4);
    }

    #[test]
    fn face_fan_with_singular_cone() {
        let p = LatticePolytope::hull_i64(&[&[1, 0], &[0, 1], &[-1, -2]]).unwrap();
        let fan = Fan::face_fan(&p).unwrap();
        assert_eq!(fan.maximal_cones().len(), 3);
        let smooth_count = fan
            .classify_maximal_cones()
            .iter()
            .filter(|r| r.smooth)
            .count();
        assert_eq!(smooth_count, 2);
    }

    #[test]
    fn normal_fan_equals_face_fan_of_dual() {
        for p in [
            samples::newton_simplex(3),
            samples::cube(3),
            LatticePolytope::hull_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap(),
        ] {
            let nf = Fan::normal_fan(&p);
            let ff = Fan::face_fan(&p.dual().unwrap()).unwrap();
            assert_eq!(nf, ff);
        }
    }

    #[test]
    fn normal_fan_of_cube_is_orthants() {
        let p = samples::cube(3);
        let fan = Fan::normal_fan(&p);
        assert_eq!(fan.maximal_cones().len(), 8);
        assert!(fan.is_complete());
    }

    #[test]
    fn fundamental_groups() {
        let p2 = LatticePolytope::hull_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let fan = Fan::face_fan(&p2).unwrap();
        assert!(fan_fundamental_group(&fan).unwrap().is_trivial());

        let quot = Fan::face_fan(
            &LatticePolytope::hull_i64(&[&[2, -1], &[-1, 2], &[-1, -1]]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            fan_fundamental_group(&quot).unwrap(),
            AbelianQuotient::from_factors_i64(&[3])
        );

        let quintic_fan = Fan::face_fan(&samples::newton_simplex(4)).unwrap();
        assert_eq!(
            fan_fundamental_group(&quintic_fan).unwrap(),
            AbelianQuotient::from_factors_i64(&[5, 5, 5])
        );
        assert_eq!(
            fan_fundamental_group(&quintic_fan).unwrap().order(),
            Some(int(125))
        );
    }

    #[test]
    fn refinement_breaking_integrality_is_not_fano() {
        // subdivide the first quadrant of the projective-plane fan at the
        // ray (2,3): the cone (e_1, (2,3)) only has the rational support
        // element (1, -1/3)
        let max_cones = vec![
            vec![v(&[1, 0]), v(&[2, 3])],
            vec![v(&[2, 3]), v(&[0, 1])],
            vec![v(&[0, 1]), v(&[-1, -1])],
            vec![v(&[-1, -1]), v(&[1, 0])],
        ];
        let refined = Fan::from_maximal_cones(2, max_cones).unwrap();
        assert!(refined.is_complete());
        let k = refined.cone(&[0, 2]).support_element();
        assert!(k.is_some());
        assert_eq!(is_fano_gorenstein(&refined), Ok(false));
    }

    #[test]
    fn stellar_refinement_at_a_level_one_point_stays_fano() {
        // blowing up the fixed point of the orthant cone of the fan of
        // projective 4-space: every new cone pairs to 1 with (1,1,1,1)
        let p = samples::dual_simplex(4);
        let fan = Fan::face_fan(&p).unwrap();
        let center = v(&[1, 1, 1, 1]);
        let mut max_cones: Vec<Vec<IntVec>> = Vec::new();
        for c in fan.maximal_cones() {
            let gens: Vec<IntVec> = c.iter().map(|&r| fan.rays()[r].clone()).collect();
            let orthant = gens.iter().all(|g| g.iter().all(|x| !x.is_negative()));
            if orthant {
                for omit in 0..gens.len() {
                    let mut sub: Vec<IntVec> = gens
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != omit)
                        .map(|(_, g)| g.clone())
                        .collect();
                    sub.push(center.clone());
                    max_cones.push(sub);
                }
            } else {
                max_cones.push(gens);
            }
        }
        let refined = Fan::from_maximal_cones(4, max_cones).unwrap();
        assert!(refined.is_complete());
        assert_eq!(refined.maximal_cones().len(), 8);
        assert_eq!(is_fano_gorenstein(&refined), Ok(true));
    }
}
