//! Regular fine triangulations with exact lifting certificates, and crepant
//! simplicial refinements of the face fans of reflexive polytopes.
//!
//! The construction is incremental: points are inserted in lexicographic
//! order; a point outside the current hull cones over the visible boundary
//! walls, a point inside splits every cell containing it. Both steps keep
//! the triangulation regular, and the exact height of each new point is
//! chosen from the wall inequalities it participates in, so the certificate
//! comes out of the construction instead of a post-hoc search.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fan::{Fan, FanError, SingularityReport};
use crate::lattice::{hermite_normal_form, solve_rational, Int, IntMat, IntVec, Rat};
use crate::lp::max_margin;
use crate::polytope::{LatticePolytope, PolytopeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("point set does not contain every vertex of the ambient polytope")]
    NotAdmissible,
    #[error("malformed triangulation: {0}")]
    Malformed(String),
    #[error("elementary-simplex counts are only triangulation-independent up to dimension 2 (face has dimension {0})")]
    DimensionTooHigh(usize),
    #[error("polytope is not reflexive")]
    NotReflexive,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// A finite point configuration together with its convex hull. Configurations
/// built from a bare point list are admissible by construction; use
/// [`PointConfig::in_polytope`] to check a point selection against a given
/// ambient polytope.
#[derive(Clone, Debug)]
pub struct PointConfig {
    points: Vec<IntVec>,
    hull: LatticePolytope,
}

impl PointConfig {
    pub fn new(points: &[IntVec]) -> Result<Self, TriangulationError> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let hull = LatticePolytope::hull(&pts)?;
        Ok(PointConfig { points: pts, hull })
    }

    /// Configuration of a point selection inside a polytope; errors unless
    /// the selection contains every vertex of the polytope.
    pub fn in_polytope(
        polytope: &LatticePolytope,
        points: &[IntVec],
    ) -> Result<Self, TriangulationError> {
        let cfg = Self::new(points)?;
        for v in polytope.vertices() {
            if cfg.points.binary_search(v).is_err() {
                return Err(TriangulationError::NotAdmissible);
            }
        }
        if cfg.hull.vertices() != polytope.vertices() {
            return Err(TriangulationError::NotAdmissible);
        }
        Ok(cfg)
    }

    /// All lattice points of a polytope: the configuration of its maximal
    /// triangulations.
    pub fn maximal(polytope: &LatticePolytope) -> Result<Self, TriangulationError> {
        Self::in_polytope(polytope, &polytope.lattice_points().points)
    }

    pub fn points(&self) -> &[IntVec] {
        &self.points
    }

    pub fn hull(&self) -> &LatticePolytope {
        &self.hull
    }

    pub fn dim(&self) -> usize {
        self.hull.dim()
    }
}

/// A triangulation of a point configuration: maximal simplices as sorted
/// point-index tuples, with an optional exact lifting certificate.
#[derive(Clone, Debug)]
pub struct Triangulation {
    config: PointConfig,
    simplices: Vec<Vec<usize>>,
    heights: Option<Vec<Rat>>,
}

impl Triangulation {
    /// Wraps an externally produced simplex list; no validity check is done
    /// here, `verify_regularity` performs it.
    pub fn from_parts(
        config: PointConfig,
        simplices: Vec<Vec<usize>>,
        heights: Option<Vec<Rat>>,
    ) -> Self {
        let mut simplices = simplices;
        for s in &mut simplices {
            s.sort_unstable();
        }
        simplices.sort();
        Triangulation {
            config,
            simplices,
            heights,
        }
    }

    pub fn config(&self) -> &PointConfig {
        &self.config
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn heights(&self) -> Option<&[Rat]> {
        self.heights.as_deref()
    }

    /// Sum of the normalized volumes of the maximal simplices.
    pub fn total_volume(&self) -> Int {
        let pts = self.config.points();
        let mut total = Int::zero();
        for s in &self.simplices {
            let base = &pts[s[0]];
            let rows: Vec<IntVec> = s[1..].iter().map(|&i| &pts[i] - base).collect();
            total += IntMat::from_rows(rows).det().abs();
        }
        total
    }

    /// True when every configuration point is used as a vertex.
    pub fn is_fine(&self) -> bool {
        let used: std::collections::BTreeSet<usize> =
            self.simplices.iter().flatten().copied().collect();
        (0..self.config.points().len()).all(|i| used.contains(&i))
    }
}

/// Outcome of a regularity check.
#[derive(Clone, Debug, PartialEq)]
pub enum Regularity {
    Regular { heights: Vec<Rat> },
    NotRegular,
}

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

/// A fine triangulation of the configuration, regular by construction, with
/// the certifying heights attached. Points enter in lexicographic order.
pub fn regular_fine_triangulation(cfg: &PointConfig) -> Result<Triangulation, TriangulationError> {
    let n = cfg.dim();
    let pts = cfg.points().to_vec();

    // greedy affinely independent seed simplex in lexicographic order
    let mut seed: Vec<usize> = vec![0];
    for i in 1..pts.len() {
        if seed.len() == n + 1 {
            break;
        }
        let mut chosen: Vec<IntVec> = seed.iter().map(|&k| pts[k].clone()).collect();
        let before = affine_rank(&chosen);
        chosen.push(pts[i].clone());
        if affine_rank(&chosen) > before {
            seed.push(i);
        }
    }
    assert_eq!(seed.len(), n + 1, "configuration spans its ambient space");

    let mut cells: Vec<Vec<usize>> = vec![seed.clone()];
    let mut heights: Vec<Rat> = vec![Rat::zero(); pts.len()];

    for idx in 0..pts.len() {
        if seed.contains(&idx) {
            continue;
        }
        insert_point(&pts, &mut cells, &mut heights, idx);
    }

    let tri = Triangulation::from_parts(cfg.clone(), cells, Some(heights));
    debug_assert_eq!(tri.total_volume(), cfg.hull().normalized_volume());
    debug_assert!(tri.is_fine());
    Ok(tri)
}

fn affine_rank(pts: &[IntVec]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let rows: Vec<IntVec> = pts[1..].iter().map(|p| p - &pts[0]).collect();
    IntMat::from_rows(rows).rank()
}

/// Barycentric (affine) coordinates of `q` with respect to the simplex on
/// `cell`; the coordinates sum to 1 and may be negative.
fn barycentric(pts: &[IntVec], cell: &[usize], q: &IntVec) -> Vec<Rat> {
    let n = q.rank();
    let k = cell.len();
    // rows: one per ambient coordinate, then the affine row of ones
    let mut rows: Vec<IntVec> = (0..n)
        .map(|coord| IntVec::new(cell.iter().map(|&i| pts[i][coord].clone()).collect()))
        .collect();
    rows.push(IntVec::new(vec![Int::one(); k]));
    let mut rhs: Vec<Int> = q.iter().cloned().collect();
    rhs.push(Int::one());
    solve_rational(&IntMat::from_rows(rows), &IntVec::new(rhs))
        .expect("simplex cells are affinely independent")
}

/// The wall bend between adjacent cells as an affine function `A + B t` of
/// one unknown height (`t` is the height of `unknown`, all other heights are
/// read from `heights`). Positive bend = strictly convex crossing.
fn bend_symbolic(
    pts: &[IntVec],
    c1: &[usize],
    c2: &[usize],
    wall: &[usize],
    heights: &[Rat],
    unknown: usize,
) -> (Rat, Rat) {
    let u2 = *c2
        .iter()
        .find(|v| !wall.contains(v))
        .expect("adjacent cells differ in one vertex");
    let gamma = barycentric(pts, c1, &pts[u2]);
    let mut a = Rat::zero();
    let mut b = Rat::zero();
    if u2 == unknown {
        b += Rat::one();
    } else {
        a += &heights[u2];
    }
    for (&vi, g) in c1.iter().zip(&gamma) {
        if vi == unknown {
            b -= g;
        } else {
            a -= g * &heights[vi];
        }
    }
    (a, b)
}

fn insert_point(pts: &[IntVec], cells: &mut Vec<Vec<usize>>, heights: &mut [Rat], idx: usize) {
    let q = &pts[idx];
    let containing: Vec<usize> = (0..cells.len())
        .filter(|&c| {
            barycentric(pts, &cells[c], q)
                .iter()
                .all(|l| !l.is_negative())
        })
        .collect();

    let (removed, new_cells): (Vec<usize>, Vec<Vec<usize>>) = if containing.is_empty() {
        // outside: cone over the visible boundary walls
        let walls = wall_map(cells);
        let mut new_cells = Vec::new();
        for (wall, owners) in &walls {
            if owners.len() != 1 {
                continue;
            }
            let owner = &cells[owners[0]];
            if visible_from(pts, owner, wall, q) {
                let mut cell = wall.clone();
                cell.push(idx);
                cell.sort_unstable();
                new_cells.push(cell);
            }
        }
        assert!(!new_cells.is_empty(), "outside point sees no boundary wall");
        (Vec::new(), new_cells)
    } else {
        // inside or on walls: split every containing cell at the point
        let mut new_cells = Vec::new();
        for &c in &containing {
            let lambda = barycentric(pts, &cells[c], q);
            for (pos, l) in lambda.iter().enumerate() {
                if l.is_positive() {
                    let mut cell: Vec<usize> = cells[c]
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != pos)
                        .map(|(_, &v)| v)
                        .collect();
                    cell.push(idx);
                    cell.sort_unstable();
                    new_cells.push(cell);
                }
            }
        }
        (containing, new_cells)
    };

    let mut alive: Vec<Vec<usize>> = cells
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed.contains(i))
        .map(|(_, c)| c.clone())
        .collect();
    alive.extend(new_cells.iter().cloned());

    // choose the new height from the wall inequalities the point enters
    let walls = wall_map(&alive);
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for (wall, owners) in &walls {
        if owners.len() != 2 {
            continue;
        }
        let (c1, c2) = (&alive[owners[0]], &alive[owners[1]]);
        if !c1.contains(&idx) && !c2.contains(&idx) {
            continue;
        }
        let (a, b) = bend_symbolic(pts, c1, c2, wall, heights, idx);
        // require a + b t > 0
        if b.is_zero() {
            assert!(
                a.is_positive(),
                "wall constraint impossible regardless of the new height"
            );
        } else if b.is_positive() {
            let bound = -&a / &b;
            if lo.as_ref().map_or(true, |l| bound > *l) {
                lo = Some(bound);
            }
        } else {
            let bound = -&a / &b;
            if hi.as_ref().map_or(true, |h| bound < *h) {
                hi = Some(bound);
            }
        }
    }
    let two = Rat::from_integer(2.into());
    let t = match (&lo, &hi) {
        (None, None) => Rat::zero(),
        (Some(l), None) => l + Rat::one(),
        (None, Some(h)) => h - Rat::one(),
        (Some(l), Some(h)) => {
            assert!(l < h, "empty height interval during insertion");
            (l + h) / two
        }
    };
    heights[idx] = t;

    // re-verify every wall the new point participates in
    for (wall, owners) in &walls {
        if owners.len() != 2 {
            continue;
        }
        let (c1, c2) = (&alive[owners[0]], &alive[owners[1]]);
        if !c1.contains(&idx) && !c2.contains(&idx) {
            continue;
        }
        let (a, b) = bend_symbolic(pts, c1, c2, wall, heights, idx);
        assert!(
            (a + b * &heights[idx]).is_positive(),
            "chosen height violates a wall inequality"
        );
    }

    *cells = alive;
}

/// Maps each wall (cell facet, as a sorted index set) to the cells having it.
fn wall_map(cells: &[Vec<usize>]) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        for omit in 0..cell.len() {
            let wall: Vec<usize> = cell
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != omit)
                .map(|(_, &v)| v)
                .collect();
            map.entry(wall).or_default().push(ci);
        }
    }
    map
}

/// Whether `q` lies strictly beyond the supporting hyperplane of a boundary
/// wall, seen from its owner cell.
fn visible_from(pts: &[IntVec], owner: &[usize], wall: &[usize], q: &IntVec) -> bool {
    let base = &pts[wall[0]];
    let edges: Vec<IntVec> = wall[1..].iter().map(|&i| &pts[i] - base).collect();
    let kernel = crate::lattice::integer_kernel(&IntMat::from_rows(edges));
    assert_eq!(kernel.len(), 1, "wall spans a hyperplane");
    let normal = &kernel[0];
    let c = base.dot(normal);
    let inside = *owner
        .iter()
        .find(|v| !wall.contains(v))
        .expect("owner has a vertex off its wall");
    let s_in = pts[inside].dot(normal) - &c;
    let s_q = q.dot(normal) - &c;
    debug_assert!(!s_in.is_zero());
    // strictly on the opposite side of the wall from the cell interior
    (s_in.is_positive() && s_q.is_negative()) || (s_in.is_negative() && s_q.is_positive())
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

/// Checks well-formedness and decides regularity. With heights attached the
/// certificate is re-verified wall by wall in exact arithmetic; without
/// heights the wall system is solved as an exact feasibility program with a
/// maximized strictness margin.
pub fn verify_regularity(t: &Triangulation) -> Result<Regularity, TriangulationError> {
    let pts = t.config().points();
    let n = t.config().dim();

    if t.simplices().is_empty() {
        return Err(TriangulationError::Malformed("no simplices".into()));
    }
    for s in t.simplices() {
        if s.len() != n + 1 {
            return Err(TriangulationError::Malformed(format!(
                "cell {s:?} is not full-dimensional"
            )));
        }
        let cell_pts: Vec<IntVec> = s.iter().map(|&i| pts[i].clone()).collect();
        if affine_rank(&cell_pts) != n {
            return Err(TriangulationError::Malformed(format!(
                "cell {s:?} is degenerate"
            )));
        }
    }
    // exact volume accounting rules out overlaps and gaps
    if t.total_volume() != t.config().hull().normalized_volume() {
        return Err(TriangulationError::Malformed(
            "cell volumes do not add up to the hull volume".into(),
        ));
    }
    // every configuration point must be used, and may not sit inside or on
    // a cell it is not a vertex of
    let used: std::collections::BTreeSet<usize> =
        t.simplices().iter().flatten().copied().collect();
    for i in 0..pts.len() {
        if !used.contains(&i) {
            return Err(TriangulationError::Malformed(format!(
                "point {i} is not used by any cell"
            )));
        }
        for s in t.simplices() {
            if s.contains(&i) {
                continue;
            }
            if barycentric(pts, s, &pts[i]).iter().all(|l| !l.is_negative()) {
                return Err(TriangulationError::Malformed(format!(
                    "point {i} lies inside cell {s:?}"
                )));
            }
        }
    }
    let walls = wall_map(t.simplices());
    for owners in walls.values() {
        if owners.len() > 2 {
            return Err(TriangulationError::Malformed(
                "a wall is shared by more than two cells".into(),
            ));
        }
    }

    // wall rows of the regularity system
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (wall, owners) in &walls {
        if owners.len() != 2 {
            continue;
        }
        let (c1, c2) = (&t.simplices()[owners[0]], &t.simplices()[owners[1]]);
        let u2 = *c2.iter().find(|v| !wall.contains(v)).unwrap();
        let gamma = barycentric(pts, c1, &pts[u2]);
        let mut row = vec![Rat::zero(); pts.len()];
        row[u2] += Rat::one();
        for (&vi, g) in c1.iter().zip(&gamma) {
            row[vi] -= g;
        }
        rows.push(row);
    }

    if let Some(h) = t.heights() {
        let ok = rows.iter().all(|row| {
            let bend: Rat = row.iter().zip(h).map(|(r, hi)| r * hi).sum();
            bend.is_positive()
        });
        if ok {
            return Ok(Regularity::Regular {
                heights: h.to_vec(),
            });
        }
        // attached heights fail; fall through to the search
    }

    let consts = vec![Rat::zero(); rows.len()];
    let (margin, x) = max_margin(&rows, &consts);
    if margin.is_positive() {
        Ok(Regularity::Regular { heights: x })
    } else {
        Ok(Regularity::NotRegular)
    }
}

// ---------------------------------------------------------------------------
// crepant refinements of face fans
// ---------------------------------------------------------------------------

/// Fine triangulation of the boundary complex of a polytope, consistent
/// across facets: a recursive least-point pull of every face, followed by
/// stellar insertion of the remaining boundary lattice points in order.
/// Returns the boundary points and maximal `(n-1)`-simplices indexing them.
fn boundary_triangulation(p: &LatticePolytope) -> (Vec<IntVec>, Vec<Vec<usize>>) {
    let lp = p.lattice_points();
    let boundary: Vec<(IntVec, Vec<usize>)> = lp
        .points
        .iter()
        .zip(lp.tight.iter())
        .filter(|(_, t)| !t.is_empty())
        .map(|(q, t)| (q.clone(), t.clone()))
        .collect();
    let bpts: Vec<IntVec> = boundary.iter().map(|(q, _)| q.clone()).collect();
    let tight_of: Vec<Vec<usize>> = boundary.into_iter().map(|(_, t)| t).collect();

    let on_face =
        |pt: usize, face_tight: &[usize]| face_tight.iter().all(|f| tight_of[pt].contains(f));

    let fl = p.face_lattice();
    // least-point pull per face, bottom up, consistent on shared faces
    // because the least point of a face is the least point of every face it
    // is the minimum of
    let mut pulled: Vec<Vec<Vec<usize>>> = vec![Vec::new(); fl.faces().len()];
    for d in 0..p.dim() {
        for &id in fl.by_dim(d) {
            let face = fl.face(id);
            let apex = (0..bpts.len())
                .find(|&i| on_face(i, &face.tight_facets))
                .expect("faces carry lattice points");
            if d == 0 {
                pulled[id] = vec![vec![apex]];
                continue;
            }
            let mut simplices = Vec::new();
            for g in fl.facets_of(id) {
                if on_face(apex, &fl.face(g).tight_facets) {
                    continue;
                }
                for s in &pulled[g] {
                    let mut cell = s.clone();
                    cell.push(apex);
                    cell.sort_unstable();
                    simplices.push(cell);
                }
            }
            pulled[id] = simplices;
        }
    }

    let mut cells: Vec<Vec<usize>> = fl
        .by_dim(p.dim() - 1)
        .iter()
        .flat_map(|&id| pulled[id].clone())
        .collect();

    // stellar insertion of every boundary point not yet used
    for q in 0..bpts.len() {
        if cells.iter().any(|c| c.contains(&q)) {
            continue;
        }
        let mut next: Vec<Vec<usize>> = Vec::new();
        let mut split_any = false;
        for cell in &cells {
            match in_simplex(&bpts, cell, q) {
                Some(lambda) => {
                    split_any = true;
                    for (pos, li) in lambda.iter().enumerate() {
                        if li.is_positive() {
                            let mut c: Vec<usize> = cell
                                .iter()
                                .enumerate()
                                .filter(|&(k, _)| k != pos)
                                .map(|(_, &v)| v)
                                .collect();
                            c.push(q);
                            c.sort_unstable();
                            next.push(c);
                        }
                    }
                }
                None => next.push(cell.clone()),
            }
        }
        assert!(split_any, "boundary point lies in no boundary simplex");
        cells = next;
    }
    cells.sort();
    cells.dedup();
    (bpts, cells)
}

/// Affine coordinates of point `q` in the (lower-dimensional) simplex
/// `cell`, or `None` when `q` is outside it or off its affine span.
fn in_simplex(pts: &[IntVec], cell: &[usize], q: usize) -> Option<Vec<Rat>> {
    let n = pts[q].rank();
    let mut rows: Vec<IntVec> = (0..n)
        .map(|coord| IntVec::new(cell.iter().map(|&i| pts[i][coord].clone()).collect()))
        .collect();
    rows.push(IntVec::new(vec![Int::one(); cell.len()]));
    let mut rhs: Vec<Int> = pts[q].iter().cloned().collect();
    rhs.push(Int::one());
    let lambda = solve_rational(&IntMat::from_rows(rows), &IntVec::new(rhs))?;
    if lambda.iter().any(Signed::is_negative) {
        return None;
    }
    Some(lambda)
}

/// Maximal projective crepant refinement of the face fan of a reflexive
/// polytope: a simplicial fan whose rays are exactly the boundary lattice
/// points, with every maximal cone elementary (simplicial, Gorenstein and
/// terminal). Returns the fan and the classification of its maximal cones.
pub fn mpcp_fan(p: &LatticePolytope) -> Result<(Fan, Vec<SingularityReport>), TriangulationError> {
    if !p.is_reflexive() {
        return Err(TriangulationError::NotReflexive);
    }
    let (bpts, cells) = boundary_triangulation(p);
    let max_cones: Vec<Vec<IntVec>> = cells
        .iter()
        .map(|c| c.iter().map(|&i| bpts[i].clone()).collect())
        .collect();

    // volume accounting certifies the subdivision covers the whole boundary
    let mut total = Int::zero();
    for gens in &max_cones {
        total += IntMat::from_rows(gens.clone()).det().abs();
    }
    assert_eq!(
        total,
        p.normalized_volume(),
        "boundary triangulation does not cover the boundary"
    );

    let fan = Fan::from_maximal_cones(p.dim(), max_cones)?;
    assert_eq!(
        fan.rays().len(),
        bpts.len(),
        "refined fan must use every boundary lattice point"
    );
    let reports = fan.classify_maximal_cones();
    for r in &reports {
        assert!(
            r.simplicial && r.gorenstein && r.terminal,
            "crepant refinement produced a non-elementary cone"
        );
    }
    Ok((fan, reports))
}

/// Number of elementary simplices in a maximal triangulation of a face of
/// dimension at most 2, where the count is triangulation independent and
/// equals the normalized volume of the face.
pub fn count_elementary(p: &LatticePolytope, face_id: usize) -> Result<Int, TriangulationError> {
    let fl = p.face_lattice();
    let face = fl.face(face_id);
    if face.dim > 2 {
        return Err(TriangulationError::DimensionTooHigh(face.dim));
    }
    let lp = p.lattice_points();
    let members: Vec<IntVec> = lp
        .points
        .iter()
        .zip(lp.tight.iter())
        .filter(|(_, t)| face.tight_facets.iter().all(|f| t.contains(f)))
        .map(|(q, _)| q.clone())
        .collect();
    // coordinates on the induced lattice of the affine span of the face
    let base = members[0].clone();
    let edges: Vec<IntVec> = members[1..].iter().map(|q| q - &base).collect();
    let (h, _) = hermite_normal_form(&IntMat::from_rows(edges.clone()));
    let basis = IntMat::from_rows((0..face.dim).map(|i| h.row(i)).collect());
    let local: Vec<IntVec> = std::iter::once(IntVec::zeros(face.dim))
        .chain(edges.iter().map(|e| {
            crate::lattice::express_in_basis(e, &basis)
                .expect("face points lie in the induced lattice")
        }))
        .collect();
    let cfg = PointConfig::new(&local)?;
    let tri = regular_fine_triangulation(&cfg)?;
    let count = Int::from(tri.simplices().len() as i64);
    // elementary simplices of dimension <= 2 are unimodular, so the count
    // must equal the face volume
    assert_eq!(count, p.face_volume(face_id));
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int;
    use crate::polytope::samples;

    fn cfg_i64(points: &[&[i64]]) -> PointConfig {
        let pts: Vec<IntVec> = points.iter().map(|p| IntVec::from_i64(p)).collect();
        PointConfig::new(&pts).unwrap()
    }

    #[test]
    fn segment_splits_into_unit_pieces() {
        let cfg = cfg_i64(&[&[-1], &[0], &[1]]);
        let tri = regular_fine_triangulation(&cfg).unwrap();
        assert_eq!(tri.simplices(), &[vec![0, 1], vec![1, 2]]);
        assert!(matches!(
            verify_regularity(&tri).unwrap(),
            Regularity::Regular { .. }
        ));
    }

    #[test]
    fn square_with_all_points_gives_eight_triangles() {
        let square = samples::cube(2);
        let cfg = PointConfig::maximal(&square).unwrap();
        let tri = regular_fine_triangulation(&cfg).unwrap();
        assert_eq!(tri.simplices().len(), 8);
        assert_eq!(tri.total_volume(), int(8));
        assert!(tri.is_fine());
        assert!(matches!(
            verify_regularity(&tri).unwrap(),
            Regularity::Regular { .. }
        ));
    }

    #[test]
    fn volume_conservation_3d() {
        let p = samples::newton_simplex(3);
        let cfg = PointConfig::maximal(&p).unwrap();
        let tri = regular_fine_triangulation(&cfg).unwrap();
        assert_eq!(tri.total_volume(), p.normalized_volume());
        assert!(tri.is_fine());
    }

    #[test]
    fn quadrilateral_diagonal_splits_are_regular() {
        let cfg = cfg_i64(&[&[0, 0], &[2, 0], &[0, 2], &[3, 3]]);
        // both diagonal splits of a convex quadrilateral are regular
        for cells in [
            vec![vec![0, 1, 2], vec![1, 2, 3]],
            vec![vec![0, 1, 3], vec![0, 2, 3]],
        ] {
            let tri = Triangulation::from_parts(cfg.clone(), cells, None);
            match verify_regularity(&tri).unwrap() {
                Regularity::Regular { heights } => {
                    let again = Triangulation::from_parts(
                        cfg.clone(),
                        tri.simplices().to_vec(),
                        Some(heights),
                    );
                    assert!(matches!(
                        verify_regularity(&again).unwrap(),
                        Regularity::Regular { .. }
                    ));
                }
                Regularity::NotRegular => panic!("diagonal split must be regular"),
            }
        }
    }

    #[test]
    fn corrupted_cell_list_is_malformed() {
        let cfg = cfg_i64(&[&[0, 0], &[2, 0], &[0, 2], &[3, 3]]);
        let tri = Triangulation::from_parts(
            cfg.clone(),
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]],
            None,
        );
        assert!(matches!(
            verify_regularity(&tri),
            Err(TriangulationError::Malformed(_))
        ));
    }

    #[test]
    fn admissibility() {
        let square = samples::cube(2);
        let missing_vertex: Vec<IntVec> = square
            .lattice_points()
            .points
            .iter()
            .filter(|q| **q != IntVec::from_i64(&[1, 1]))
            .cloned()
            .collect();
        assert!(matches!(
            PointConfig::in_polytope(&square, &missing_vertex),
            Err(TriangulationError::NotAdmissible)
        ));
    }

    #[test]
    fn mpcp_of_singular_triangle_adds_the_edge_point() {
        let p = LatticePolytope::hull_i64(&[&[1, 0], &[0, 1], &[-1, -2]]).unwrap();
        let (fan, reports) = mpcp_fan(&p).unwrap();
        assert_eq!(fan.rays().len(), 4);
        assert!(fan.rays().contains(&IntVec::from_i64(&[0, -1])));
        assert!(reports.iter().all(|r| r.smooth));
    }

    #[test]
    fn mpcp_of_dual_quintic_is_already_fine() {
        let p = samples::dual_simplex(4);
        let (fan, reports) = mpcp_fan(&p).unwrap();
        assert_eq!(fan.rays().len(), 5);
        assert_eq!(fan.maximal_cones().len(), 5);
        assert!(reports.iter().all(|r| r.smooth));
    }

    #[test]
    fn counts_on_low_faces() {
        let square = samples::cube(2);
        let fl = square.face_lattice();
        for &e in fl.by_dim(1) {
            assert_eq!(count_elementary(&square, e).unwrap(), int(2));
        }
        let cube = samples::cube(3);
        let fl3 = cube.face_lattice();
        for &f in fl3.by_dim(2) {
            assert_eq!(count_elementary(&cube, f).unwrap(), int(8));
        }
    }

    #[test]
    fn dimension_guard_on_counts() {
        let p4 = samples::newton_simplex(4);
        let fl = p4.face_lattice();
        let three_face = fl.by_dim(3)[0];
        assert!(matches!(
            count_elementary(&p4, three_face),
            Err(TriangulationError::DimensionTooHigh(3))
        ));
    }
}
