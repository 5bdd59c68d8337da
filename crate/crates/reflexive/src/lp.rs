//! A small exact linear program: maximize a slack margin over box-bounded
//! variables. Dense two-phase simplex with Bland's rule on `BigRational`,
//! so termination and exactness are unconditional.

use num_traits::{One, Signed, Zero};

use crate::lattice::Rat;

/// Maximizes `eps` subject to `rows[i] . x + consts[i] >= eps`, `-1 <= x_j
/// <= 1` and `eps <= 1`. Always feasible; the optimum is positive exactly
/// when some `x` in the box satisfies every inequality strictly.
pub(crate) fn max_margin(rows: &[Vec<Rat>], consts: &[Rat]) -> (Rat, Vec<Rat>) {
    assert_eq!(rows.len(), consts.len());
    let nx = rows.first().map_or(0, Vec::len);
    if rows.is_empty() {
        return (Rat::one(), vec![Rat::zero(); nx]);
    }

    // substitute y_j = x_j + 1 in [0, 2] and eps = 1 - s with s >= 0:
    //   minimize s  s.t.  rows.y + s >= g_i,  y_j <= 2,  y, s >= 0
    // where g_i = rows_i . 1 + 1 - consts_i.
    let m_ge = rows.len();
    let nvars = nx + 1; // y_0..y_{nx-1}, s
    let mut a: Vec<Vec<Rat>> = Vec::new();
    let mut b: Vec<Rat> = Vec::new();
    for (r, c) in rows.iter().zip(consts) {
        let mut row: Vec<Rat> = r.clone();
        row.push(Rat::one()); // + s
        let g = r.iter().fold(Rat::one() - c, |acc, v| acc + v);
        a.push(row);
        b.push(g);
    }
    for j in 0..nx {
        let mut row = vec![Rat::zero(); nvars];
        row[j] = -Rat::one(); // -y_j >= -2
        a.push(row);
        b.push(Rat::from_integer((-2).into()));
    }
    let senses: Vec<bool> = (0..a.len()).map(|_| true).collect(); // all >=
    let mut obj = vec![Rat::zero(); nvars];
    obj[nx] = Rat::one(); // minimize s

    let sol = simplex_min(&a, &b, &senses, &obj);
    let z = sol.expect("margin LP is always feasible");
    let eps = Rat::one() - z[nx].clone();
    let x: Vec<Rat> = (0..nx).map(|j| z[j].clone() - Rat::one()).collect();
    debug_assert!({
        let worst = rows
            .iter()
            .zip(consts)
            .map(|(r, c)| {
                r.iter()
                    .zip(&x)
                    .fold(c.clone(), |acc, (ri, xi)| acc + ri * xi)
            })
            .min();
        worst.map_or(true, |w| w >= eps)
    });
    (eps, x)
}

/// Minimizes `obj . z` over `a z (>=|<=) b`, `z >= 0` (`senses[i]` true for
/// `>=`). Returns an optimal `z`, or `None` when infeasible. The caller
/// guarantees boundedness.
fn simplex_min(a: &[Vec<Rat>], b: &[Rat], senses: &[bool], obj: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.len();
    let n = obj.len();
    // standard form with one slack/surplus per row, then artificials where
    // the basis start is infeasible
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = a[i].clone();
        row.resize(n + m, Rat::zero());
        row[n + i] = if senses[i] { -Rat::one() } else { Rat::one() };
        let (row, r) = if b[i].is_negative() {
            (row.iter().map(|v| -v.clone()).collect(), -b[i].clone())
        } else {
            (row, b[i].clone())
        };
        rows.push(row);
        rhs.push(r);
    }
    let total = n + m + m; // original + slack + artificial
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    for (i, row) in rows.iter_mut().enumerate() {
        row.resize(total, Rat::zero());
        row[n + m + i] = Rat::one();
        basis.push(n + m + i);
    }

    // phase 1: minimize the sum of artificials
    let mut phase1 = vec![Rat::zero(); total];
    for j in (n + m)..total {
        phase1[j] = Rat::one();
    }
    let v1 = run_simplex(&mut rows, &mut rhs, &mut basis, &phase1, total);
    if !v1.is_zero() {
        return None;
    }
    // drive surviving artificials out of the basis where possible
    for i in 0..m {
        if basis[i] >= n + m {
            if let Some(j) = (0..n + m).find(|&j| !rows[i][j].is_zero()) {
                pivot(&mut rows, &mut rhs, &mut basis, i, j);
            }
        }
    }

    // phase 2 on the original objective, artificial columns frozen
    let mut phase2 = obj.to_vec();
    phase2.resize(total, Rat::zero());
    run_simplex(&mut rows, &mut rhs, &mut basis, &phase2, n + m);

    let mut z = vec![Rat::zero(); n + m];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n + m {
            z[bv] = rhs[i].clone();
        }
    }
    z.truncate(n.max(n));
    Some(z)
}

/// Minimizes `c . z` from the current basic feasible point; Bland's rule.
/// Only columns `< limit` may enter. Returns the objective value.
fn run_simplex(
    rows: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    c: &[Rat],
    limit: usize,
) -> Rat {
    let m = rows.len();
    loop {
        // reduced costs: c_j - c_B . B^{-1} A_j
        let mut entering = None;
        for j in 0..limit {
            if basis.contains(&j) {
                continue;
            }
            let mut red = c[j].clone();
            for i in 0..m {
                if !rows[i][j].is_zero() {
                    red -= &c[basis[i]] * &rows[i][j];
                }
            }
            if red.is_negative() {
                entering = Some(j);
                break; // Bland: smallest index
            }
        }
        let Some(j) = entering else {
            let mut val = Rat::zero();
            for i in 0..m {
                val += &c[basis[i]] * &rhs[i];
            }
            return val;
        };
        // ratio test, Bland ties by smallest basis index
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if rows[i][j].is_positive() {
                let ratio = &rhs[i] / &rows[i][j];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let i = leave.expect("margin LP is bounded");
        pivot(rows, rhs, basis, i, j);
    }
}

fn pivot(rows: &mut [Vec<Rat>], rhs: &mut [Rat], basis: &mut [usize], i: usize, j: usize) {
    let m = rows.len();
    let p = rows[i][j].clone();
    for v in rows[i].iter_mut() {
        *v = &*v / &p;
    }
    rhs[i] = &rhs[i] / &p;
    for k in 0..m {
        if k == i || rows[k][j].is_zero() {
            continue;
        }
        let f = rows[k][j].clone();
        for col in 0..rows[k].len() {
            let sub = &f * &rows[i][col];
            rows[k][col] = &rows[k][col] - &sub;
        }
        let sub = &f * &rhs[i];
        rhs[k] = &rhs[k] - &sub;
    }
    basis[i] = j;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rat {
        Rat::from_integer(v.into())
    }

    #[test]
    fn margin_of_pointed_cone() {
        // rays (1,0) and (0,1): w = (1,1) is strictly positive on both
        let rows = vec![vec![r(1), r(0)], vec![r(0), r(1)]];
        let (eps, x) = max_margin(&rows, &[r(0), r(0)]);
        assert!(eps.is_positive());
        for row in &rows {
            let v: Rat = row.iter().zip(&x).map(|(a, b)| a * b).sum();
            assert!(v >= eps);
        }
    }

    #[test]
    fn margin_of_line() {
        // rays (1,0) and (-1,0) admit no strictly positive functional
        let rows = vec![vec![r(1), r(0)], vec![r(-1), r(0)]];
        let (eps, _) = max_margin(&rows, &[r(0), r(0)]);
        assert!(!eps.is_positive());
    }

    #[test]
    fn margin_with_constants() {
        // x + 5 >= eps is satisfiable with slack even at x = 0
        let rows = vec![vec![r(1)]];
        let (eps, _) = max_margin(&rows, &[r(5)]);
        assert!(eps >= r(1));
    }
}
