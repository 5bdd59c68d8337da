//! Canonical form under `GL(n,Z)` and vertex relabeling.
//!
//! The vertex-facet pairing matrix is a lattice invariant; we canonicalize it
//! by searching the row/column permutations that make it lexicographically
//! maximal, then pin the coordinate basis with a Hermite normal form of the
//! vertex matrix. Two polytopes get equal outputs exactly when some
//! unimodular map carries one vertex set onto the other.

use crate::lattice::{hermite_normal_form, Int, IntMat};

use super::LatticePolytope;

pub(super) fn normal_form(p: &LatticePolytope) -> IntMat {
    let nf = p.facets().len();
    let nv = p.vertices().len();
    let pm: Vec<Vec<Int>> = p
        .facets()
        .iter()
        .map(|f| p.vertices().iter().map(|v| f.eval(v)).collect())
        .collect();

    let column_orders = maximizing_column_orders(&pm, nf, nv);

    let n = p.dim();
    let mut best: Option<IntMat> = None;
    for cols in column_orders {
        let mut vm = IntMat::zeros(n, nv);
        for (j, &c) in cols.iter().enumerate() {
            for i in 0..n {
                vm[(i, j)] = p.vertices()[c][i].clone();
            }
        }
        let (h, _) = hermite_normal_form(&vm);
        let better = match &best {
            None => true,
            Some(b) => flatten(&h) < flatten(b),
        };
        if better {
            best = Some(h);
        }
    }
    best.expect("polytope has at least one vertex ordering")
}

fn flatten(m: &IntMat) -> Vec<Int> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.push(m[(i, j)].clone());
        }
    }
    out
}

/// Search state: a prefix of chosen rows together with a column order and
/// the partition of columns into still-tied blocks.
#[derive(Clone)]
struct State {
    used_rows: Vec<usize>,
    cols: Vec<usize>,
    /// Block lengths partitioning `cols`; columns inside a block are tied.
    blocks: Vec<usize>,
}

/// All column orders realized by row/column permutations that make the
/// pairing matrix lexicographically maximal. Ties must be expanded in full:
/// distinct vertices always separate in the end because equal pairing
/// columns would mean equal tight facet sets.
fn maximizing_column_orders(pm: &[Vec<Int>], nf: usize, nv: usize) -> Vec<Vec<usize>> {
    let mut states = vec![State {
        used_rows: Vec::new(),
        cols: (0..nv).collect(),
        blocks: vec![nv],
    }];

    for _level in 0..nf {
        let mut best_key: Option<Vec<Int>> = None;
        let mut next: Vec<State> = Vec::new();
        for st in &states {
            for r in 0..nf {
                if st.used_rows.contains(&r) {
                    continue;
                }
                let (cols, blocks, key) = refine(st, &pm[r]);
                let cmp = match &best_key {
                    None => std::cmp::Ordering::Greater,
                    Some(k) => key.cmp(k),
                };
                match cmp {
                    std::cmp::Ordering::Greater => {
                        best_key = Some(key);
                        let mut used = st.used_rows.clone();
                        used.push(r);
                        next = vec![State {
                            used_rows: used,
                            cols,
                            blocks,
                        }];
                    }
                    std::cmp::Ordering::Equal => {
                        let mut used = st.used_rows.clone();
                        used.push(r);
                        next.push(State {
                            used_rows: used,
                            cols,
                            blocks,
                        });
                    }
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        states = next;
        // states with identical column orders yield identical normal forms
        states.sort_by(|a, b| a.cols.cmp(&b.cols));
        states.dedup_by(|a, b| a.cols == b.cols);
    }

    for st in &states {
        assert!(
            st.blocks.iter().all(|&b| b == 1),
            "distinct vertices failed to separate in the pairing matrix"
        );
    }
    states.into_iter().map(|s| s.cols).collect()
}

/// Sorts the columns of a row inside each tied block (descending) and
/// returns the refined order, the new blocks, and the row values in the new
/// order as the comparison key.
fn refine(st: &State, row: &[Int]) -> (Vec<usize>, Vec<usize>, Vec<Int>) {
    let mut cols = Vec::with_capacity(st.cols.len());
    let mut blocks = Vec::new();
    let mut start = 0;
    for &len in &st.blocks {
        let mut block: Vec<usize> = st.cols[start..start + len].to_vec();
        block.sort_by(|&a, &b| row[b].cmp(&row[a]));
        let mut run = 1;
        for i in 1..block.len() {
            if row[block[i]] == row[block[i - 1]] {
                run += 1;
            } else {
                blocks.push(run);
                run = 1;
            }
        }
        blocks.push(run);
        cols.extend(block);
        start += len;
    }
    let key: Vec<Int> = cols.iter().map(|&c| row[c].clone()).collect();
    (cols, blocks, key)
}

#[cfg(test)]
mod tests {
    use super::super::samples;
    use crate::lattice::IntMat;
    use crate::polytope::LatticePolytope;

    #[test]
    fn invariant_under_unimodular_maps() {
        let p = samples::newton_simplex(3);
        let u = IntMat::from_i64(&[&[1, 0, 2], &[0, 1, 7], &[0, 0, 1]]);
        let q = p.transformed(&u).unwrap();
        assert_eq!(p.normal_form(), q.normal_form());
    }

    #[test]
    fn idempotent() {
        let p = samples::cube(2);
        let nf = p.normal_form();
        let verts: Vec<_> = (0..nf.cols()).map(|j| nf.col(j)).collect();
        let q = LatticePolytope::hull(&verts).unwrap();
        assert_eq!(q.normal_form(), nf);
    }

    #[test]
    fn separates_inequivalent_polytopes() {
        let p = LatticePolytope::hull_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let q = LatticePolytope::hull_i64(&[&[1, 0], &[0, 1], &[-1, -2]]).unwrap();
        assert_ne!(p.normal_form(), q.normal_form());
    }
}
