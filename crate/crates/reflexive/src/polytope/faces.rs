//! Face lattices, dual-face pairing, and normalized volumes.

use std::collections::{BTreeSet, HashMap};

use num_traits::One;

use crate::lattice::{smith_normal_form, Int, IntMat, IntVec};

use super::LatticePolytope;

/// A proper face, recorded through its vertex set and the facets containing
/// it. Faces of a polytope are exactly the intersections of facet subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    /// Sorted indices into the parent polytope's vertex list.
    pub vertices: Vec<usize>,
    /// Sorted indices of the facets containing this face.
    pub tight_facets: Vec<usize>,
}

/// All proper faces of a polytope, graded by dimension.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<Face>,
    by_dim: Vec<Vec<usize>>,
    by_vertices: HashMap<Vec<usize>, usize>,
}

impl FaceLattice {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    /// Ids of the faces of the given dimension.
    pub fn by_dim(&self, dim: usize) -> &[usize] {
        self.by_dim.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn face_by_vertices(&self, vertices: &[usize]) -> Option<usize> {
        self.by_vertices.get(vertices).copied()
    }

    /// The f-vector over dimensions `0..n`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// Ids of the facets of a face: its subfaces of one dimension less.
    pub fn facets_of(&self, id: usize) -> Vec<usize> {
        let f = &self.faces[id];
        if f.dim == 0 {
            return Vec::new();
        }
        let vset: BTreeSet<usize> = f.vertices.iter().copied().collect();
        self.by_dim(f.dim - 1)
            .iter()
            .copied()
            .filter(|&g| self.faces[g].vertices.iter().all(|v| vset.contains(v)))
            .collect()
    }
}

pub(super) fn build(p: &LatticePolytope) -> FaceLattice {
    let nv = p.vertices().len();
    let facet_vsets: Vec<BTreeSet<usize>> = p
        .facets()
        .iter()
        .map(|f| {
            (0..nv)
                .filter(|&i| f.contains(&p.vertices()[i]))
                .collect()
        })
        .collect();

    // closure of the facet vertex sets under intersection
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut work: Vec<BTreeSet<usize>> = Vec::new();
    for s in &facet_vsets {
        let key: Vec<usize> = s.iter().copied().collect();
        if seen.insert(key) {
            work.push(s.clone());
        }
    }
    let mut idx = 0;
    while idx < work.len() {
        let cur = work[idx].clone();
        for s in &facet_vsets {
            let inter: BTreeSet<usize> = cur.intersection(s).copied().collect();
            if inter.is_empty() {
                continue;
            }
            let key: Vec<usize> = inter.iter().copied().collect();
            if seen.insert(key) {
                work.push(inter);
            }
        }
        idx += 1;
    }

    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|vertices| {
            let pts: Vec<IntVec> = vertices.iter().map(|&i| p.vertices()[i].clone()).collect();
            let dim = affine_dim(&pts);
            let tight_facets: Vec<usize> = facet_vsets
                .iter()
                .enumerate()
                .filter(|(_, s)| vertices.iter().all(|v| s.contains(v)))
                .map(|(i, _)| i)
                .collect();
            Face {
                dim,
                vertices,
                tight_facets,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));

    let mut by_dim = vec![Vec::new(); p.dim()];
    let mut by_vertices = HashMap::new();
    for (id, f) in faces.iter().enumerate() {
        by_dim[f.dim].push(id);
        by_vertices.insert(f.vertices.clone(), id);
    }
    FaceLattice {
        faces,
        by_dim,
        by_vertices,
    }
}

fn affine_dim(pts: &[IntVec]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let rows: Vec<IntVec> = pts[1..].iter().map(|q| q - &pts[0]).collect();
    IntMat::from_rows(rows).rank()
}

/// For a reflexive polytope and its polar dual, maps each face id of `p` to
/// the id of its dual face in `dual`. The dual of a face with vertex set `S`
/// and tight facets `T` is the face of the dual polytope whose vertices are
/// the facet normals indexed by `T`; incidence is order reversing and
/// `dim F + dim F* = n - 1`.
pub fn dual_face_map(p: &LatticePolytope, dual: &LatticePolytope) -> Vec<usize> {
    let n = p.dim();
    // position of each facet normal of p among the dual's vertices
    let normal_pos: Vec<usize> = p
        .facets()
        .iter()
        .map(|f| {
            dual.vertices()
                .binary_search(&f.normal)
                .expect("facet normal of a reflexive polytope is a dual vertex")
        })
        .collect();
    let fl = p.face_lattice();
    let dl = dual.face_lattice();
    fl.faces()
        .iter()
        .map(|face| {
            let mut dverts: Vec<usize> =
                face.tight_facets.iter().map(|&t| normal_pos[t]).collect();
            dverts.sort_unstable();
            let id = dl
                .face_by_vertices(&dverts)
                .expect("dual vertex set is a face of the dual polytope");
            assert_eq!(
                face.dim + dl.face(id).dim,
                n - 1,
                "dual face grading violated"
            );
            id
        })
        .collect()
}

/// Normalized volume of a lattice simplex given by its edge vectors,
/// relative to the lattice induced on its affine span: the product of the
/// invariant factors of the edge matrix.
pub fn simplex_volume(edges: &IntMat) -> Int {
    smith_normal_form(edges)
        .invariant_factors()
        .into_iter()
        .fold(Int::one(), |acc, d| acc * d)
}

/// Vertex-index tuples of a triangulation of the face obtained by recursively
/// coning each face from its least vertex.
fn cone_triangulation(
    p: &LatticePolytope,
    fl: &FaceLattice,
    face_id: Option<usize>,
    memo: &mut HashMap<usize, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(id) = face_id {
        if let Some(cached) = memo.get(&id) {
            return cached.clone();
        }
    }
    let (dim, verts, subfacets): (usize, Vec<usize>, Vec<usize>) = match face_id {
        Some(id) => {
            let f = fl.face(id);
            (f.dim, f.vertices.clone(), fl.facets_of(id))
        }
        None => (
            p.dim(),
            (0..p.vertices().len()).collect(),
            fl.by_dim(p.dim() - 1).to_vec(),
        ),
    };
    let result = if dim == 0 {
        vec![verts]
    } else {
        let apex = verts[0];
        let mut simplices = Vec::new();
        for g in subfacets {
            if fl.face(g).vertices.contains(&apex) {
                continue;
            }
            for mut s in cone_triangulation(p, fl, Some(g), memo) {
                s.push(apex);
                simplices.push(s);
            }
        }
        simplices
    };
    if let Some(id) = face_id {
        memo.insert(id, result.clone());
    }
    result
}

fn volume_of_simplices(p: &LatticePolytope, simplices: &[Vec<usize>]) -> Int {
    let mut total = Int::from(0);
    for s in simplices {
        let base = &p.vertices()[s[0]];
        let rows: Vec<IntVec> = s[1..].iter().map(|&i| &p.vertices()[i] - base).collect();
        total += simplex_volume(&IntMat::from_rows(rows));
    }
    total
}

pub(super) fn polytope_volume(p: &LatticePolytope) -> Int {
    let fl = p.face_lattice();
    let mut memo = HashMap::new();
    let simplices = cone_triangulation(p, fl, None, &mut memo);
    volume_of_simplices(p, &simplices)
}

pub(super) fn face_volume(p: &LatticePolytope, face_id: usize) -> Int {
    let fl = p.face_lattice();
    let mut memo = HashMap::new();
    let simplices = cone_triangulation(p, fl, Some(face_id), &mut memo);
    volume_of_simplices(p, &simplices)
}
