//! Exact integer linear algebra: vectors, matrices, Smith and Hermite normal
//! forms, lattice quotients and primitive relations.
//!
//! All arithmetic is arbitrary precision. Rationals only appear in the
//! polytope and triangulation layers; this module is pure `Z`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;
/// Arbitrary-precision rational used by the geometric layers.
pub type Rat = BigRational;

/// Shorthand for an `Int` from a machine integer, mostly in tests.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// The kernel of the point configuration is not spanned by a single
    /// strictly positive relation.
    #[error("points admit no unique positive relation: {0}")]
    NoPositiveRelation(String),
    /// Mismatched dimensions in a vector or matrix operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

// ---------------------------------------------------------------------------
// IntVec
// ---------------------------------------------------------------------------

/// A lattice vector with arbitrary-precision integer coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec(pub Vec<Int>);

impl IntVec {
    pub fn new(coords: Vec<Int>) -> Self {
        IntVec(coords)
    }

    pub fn zeros(rank: usize) -> Self {
        IntVec(vec![Int::zero(); rank])
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        IntVec(coords.iter().map(|&c| Int::from(c)).collect())
    }

    /// Standard basis vector `e_i` in the given rank.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = Self::zeros(rank);
        v.0[i] = Int::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Int> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &IntVec) -> Int {
        assert_eq!(self.rank(), other.rank(), "dot of mismatched ranks");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// gcd of all coordinates (0 for the zero vector).
    pub fn content(&self) -> Int {
        self.0
            .iter()
            .fold(Int::zero(), |acc, c| acc.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides out the content, preserving direction. Zero stays zero.
    pub fn primitized(&self) -> IntVec {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntVec(self.0.iter().map(|c| c / &g).collect())
    }

    pub fn scaled(&self, k: &Int) -> IntVec {
        IntVec(self.0.iter().map(|c| c * k).collect())
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.0.iter().map(|c| Rat::from_integer(c.clone())).collect()
    }
}

impl Index<usize> for IntVec {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

impl IndexMut<usize> for IntVec {
    fn index_mut(&mut self, i: usize) -> &mut Int {
        &mut self.0[i]
    }
}

impl Add<&IntVec> for &IntVec {
    type Output = IntVec;
    fn add(self, other: &IntVec) -> IntVec {
        assert_eq!(self.rank(), other.rank());
        IntVec(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub<&IntVec> for &IntVec {
    type Output = IntVec;
    fn sub(self, other: &IntVec) -> IntVec {
        assert_eq!(self.rank(), other.rank());
        IntVec(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &IntVec {
    type Output = IntVec;
    fn neg(self) -> IntVec {
        IntVec(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul<&IntVec> for &Int {
    type Output = IntVec;
    fn mul(self, v: &IntVec) -> IntVec {
        v.scaled(self)
    }
}

impl fmt::Debug for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// IntMat
// ---------------------------------------------------------------------------

/// A dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<IntVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, IntVec::rank);
        assert!(rows.iter().all(|v| v.rank() == c), "ragged rows");
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flat_map(|v| v.0).collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| IntVec::from_i64(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> IntVec {
        IntVec(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> IntVec {
        IntVec((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn row_vecs(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_mat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// `self * v` treating `v` as a column vector.
    pub fn mul_vec(&self, v: &IntVec) -> IntVec {
        assert_eq!(self.cols, v.rank());
        IntVec(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .map(|j| &self[(i, j)] * &v[j])
                        .sum()
                })
                .collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += k * row[b]
    fn add_row_multiple(&mut self, a: usize, b: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = k * &self[(b, j)];
            self[(a, j)] += delta;
        }
    }

    /// col[a] += k * col[b]
    fn add_col_multiple(&mut self, a: usize, b: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = k * &self[(i, b)];
            self[(i, a)] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// Rank over `Q`, by fraction-free Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (r, c) = (m.rows, m.cols);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..c {
            if row == r {
                break;
            }
            // find a pivot in this column
            let Some(p) = (row..r).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            for i in (row + 1)..r {
                if m[(i, col)].is_zero() {
                    continue;
                }
                // zero m[i][col] using exact cross-multiplication
                let a = m[(row, col)].clone();
                let b = m[(i, col)].clone();
                for j in col..c {
                    let v = &a * &m[(i, j)] - &b * &m[(row, j)];
                    m[(i, j)] = v;
                }
            }
            row += 1;
            rank += 1;
        }
        rank
    }

    /// Determinant of a square matrix, by the Bareiss fraction-free scheme.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = ((k + 1)..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Int::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }
}

impl Index<(usize, usize)> for IntMat {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// Result of `smith_normal_form`: `u * m * v = d`, with `u`, `v` unimodular
/// and `d` diagonal with a divisibility chain `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

impl SmithNormalForm {
    /// Nonzero diagonal entries, in chain order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let k = self.d.rows().min(self.d.cols());
        (0..k)
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

/// Smith normal form over `Z` with smallest-pivot selection to keep entry
/// growth in check. Total on all integer matrices.
pub fn smith_normal_form(m: &IntMat) -> SmithNormalForm {
    let mut d = m.clone();
    let mut u = IntMat::identity(m.rows());
    let mut v = IntMat::identity(m.cols());
    let steps = m.rows().min(m.cols());

    for t in 0..steps {
        loop {
            // smallest nonzero entry of the trailing submatrix becomes the pivot
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..d.rows() {
                for j in t..d.cols() {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pi, pj)) if d[(pi, pj)].abs() <= d[(i, j)].abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // trailing submatrix is zero: done
                return finish_snf(d, u, v, t);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // clear column t below and row t to the right of the pivot
            let mut clean = true;
            for i in (t + 1)..d.rows() {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = div_nearest(&d[(i, t)], &d[(t, t)]);
                d.add_row_multiple(i, t, &-&q);
                u.add_row_multiple(i, t, &-&q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in (t + 1)..d.cols() {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = div_nearest(&d[(t, j)], &d[(t, t)]);
                d.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-&q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue; // a remainder survived: re-pick a (smaller) pivot
            }
            // divisibility: the pivot must divide the whole trailing block
            let mut fixed = true;
            'scan: for i in (t + 1)..d.rows() {
                for j in (t + 1)..d.cols() {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        d.add_row_multiple(t, i, &Int::one());
                        u.add_row_multiple(t, i, &Int::one());
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    finish_snf(d, u, v, steps)
}

fn finish_snf(mut d: IntMat, mut u: IntMat, v: IntMat, upto: usize) -> SmithNormalForm {
    for t in 0..upto.min(d.rows()).min(d.cols()) {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    let snf = SmithNormalForm { d, u, v };
    debug_assert!(snf_valid(&snf));
    snf
}

fn snf_valid(s: &SmithNormalForm) -> bool {
    let k = s.d.rows().min(s.d.cols());
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j && !s.d[(i, j)].is_zero() {
                return false;
            }
        }
    }
    for i in 1..k {
        let prev = &s.d[(i - 1, i - 1)];
        let cur = &s.d[(i, i)];
        if prev.is_zero() && !cur.is_zero() {
            return false;
        }
        if !prev.is_zero() && !(cur % prev).is_zero() {
            return false;
        }
    }
    s.u.is_unimodular() && s.v.is_unimodular()
}

/// Quotient rounding to the nearest integer; keeps remainders in
/// `[-|b|/2, |b|/2]`, which is what controls coefficient growth.
fn div_nearest(a: &Int, b: &Int) -> Int {
    let (mut q, r) = a.div_rem(b);
    if (&r * 2i32).abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

// ---------------------------------------------------------------------------
// Hermite normal form
// ---------------------------------------------------------------------------

/// Row-style Hermite normal form: `u * m = h` with `u` unimodular, `h` in row
/// echelon form with positive pivots and entries above each pivot reduced to
/// `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.rows());
    let (r, c) = (h.rows(), h.cols());
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        // euclid down the column until a single nonzero remains at `row`
        loop {
            let mut best: Option<usize> = None;
            for i in row..r {
                if h[(i, col)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if h[(b, col)].abs() <= h[(i, col)].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else {
                break;
            };
            h.swap_rows(row, b);
            u.swap_rows(row, b);
            let mut others = false;
            for i in (row + 1)..r {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = div_nearest(&h[(i, col)], &h[(row, col)]);
                h.add_row_multiple(i, row, &-&q);
                u.add_row_multiple(i, row, &-&q);
                if !h[(i, col)].is_zero() {
                    others = true;
                }
            }
            if !others {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..row {
            let q = h[(i, col)].div_floor(&h[(row, col)]);
            h.add_row_multiple(i, row, &-&q);
            u.add_row_multiple(i, row, &-&q);
        }
        row += 1;
    }
    debug_assert!(u.is_unimodular());
    (h, u)
}

/// Basis of the integer kernel `{ x : m x = 0 }` as rows. The returned rows
/// span the full (saturated) kernel lattice.
pub fn integer_kernel(m: &IntMat) -> Vec<IntVec> {
    let (h, u) = hermite_normal_form(&m.transpose());
    let mut kernel = Vec::new();
    for i in 0..h.rows() {
        if (0..h.cols()).all(|j| h[(i, j)].is_zero()) {
            kernel.push(u.row(i));
        }
    }
    kernel
}

// ---------------------------------------------------------------------------
// Abelian quotients
// ---------------------------------------------------------------------------

/// A finitely generated abelian group in invariant-factor form. Factors of 1
/// are suppressed, so the empty list with free rank 0 is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianQuotient {
    /// Invariant factors `> 1`, each dividing the next.
    pub invariant_factors: Vec<Int>,
    /// Rank of the free part.
    pub free_rank: usize,
}

impl AbelianQuotient {
    pub fn trivial() -> Self {
        AbelianQuotient {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order; `None` when the free rank is positive.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .fold(Int::one(), |acc, f| acc * f),
        )
    }

    pub fn from_factors_i64(factors: &[i64]) -> Self {
        AbelianQuotient {
            invariant_factors: factors.iter().map(|&f| Int::from(f)).collect(),
            free_rank: 0,
        }
    }
}

impl fmt::Display for AbelianQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Quotient of the rank-`ambient_rank` lattice by the sublattice spanned by
/// `generators`, in invariant-factor form.
pub fn lattice_quotient(generators: &[IntVec], ambient_rank: usize) -> AbelianQuotient {
    for g in generators {
        assert_eq!(g.rank(), ambient_rank, "generator rank mismatch");
    }
    if generators.is_empty() {
        return AbelianQuotient {
            invariant_factors: Vec::new(),
            free_rank: ambient_rank,
        };
    }
    let m = IntMat::from_rows(generators.to_vec());
    let snf = smith_normal_form(&m);
    let factors: Vec<Int> = snf
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect();
    let span_rank = snf.invariant_factors().len();
    AbelianQuotient {
        invariant_factors: factors,
        free_rank: ambient_rank - span_rank,
    }
}

/// Invariant factors of `fine / coarse` for two lattices given by basis rows,
/// with `coarse` a finite-index sublattice of `fine`. The change-of-basis
/// matrix must be integral; panics otherwise (caller guarantees containment).
pub fn quotient_of_lattices(fine: &IntMat, coarse: &IntMat) -> AbelianQuotient {
    let c = express_in_basis_mat(coarse, fine)
        .expect("coarse lattice is not contained in the fine lattice");
    lattice_quotient(&c.row_vecs(), fine.rows())
}

/// Writes each row of `vectors` in the basis given by the rows of `basis`.
/// Returns `None` if some row is not an integer combination.
pub fn express_in_basis_mat(vectors: &IntMat, basis: &IntMat) -> Option<IntMat> {
    let mut out = IntMat::zeros(vectors.rows(), basis.rows());
    for i in 0..vectors.rows() {
        let coords = express_in_basis(&vectors.row(i), basis)?;
        for j in 0..basis.rows() {
            out[(i, j)] = coords[j].clone();
        }
    }
    Some(out)
}

/// Solves `x * basis = v` for an integer row vector `x`.
pub fn express_in_basis(v: &IntVec, basis: &IntMat) -> Option<IntVec> {
    // Solve basis^T x^T = v^T over Q and check integrality.
    let sol = solve_rational(&basis.transpose(), v)?;
    let mut coords = Vec::with_capacity(sol.len());
    for r in sol {
        if !r.is_integer() {
            return None;
        }
        coords.push(r.to_integer());
    }
    Some(IntVec(coords))
}

/// Solves `a x = b` over the rationals; `None` if inconsistent. When the
/// solution space is positive-dimensional, free variables are set to zero.
pub fn solve_rational(a: &IntMat, b: &IntVec) -> Option<Vec<Rat>> {
    assert_eq!(a.rows(), b.rank());
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rat> = (0..cols)
                .map(|j| Rat::from_integer(a[(i, j)].clone()))
                .collect();
            row.push(Rat::from_integer(b[i].clone()));
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let sub = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // inconsistency check
    for row in m.iter().skip(r) {
        if row[..cols].iter().all(Zero::is_zero) && !row[cols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); cols];
    for (k, &c) in pivot_cols.iter().enumerate() {
        sol[c] = m[k][cols].clone();
    }
    Some(sol)
}

// ---------------------------------------------------------------------------
// Primitive relations
// ---------------------------------------------------------------------------

/// The unique primitive positive integer relation `sum w_i p_i = 0` among the
/// given points. Errors unless the kernel is one-dimensional and spanned by a
/// strictly positive vector, which is exactly the vertex configuration of a
/// simplex with the origin in its interior.
pub fn primitive_relation(points: &[IntVec]) -> Result<IntVec, LatticeError> {
    if points.is_empty() {
        return Err(LatticeError::NoPositiveRelation("no points".into()));
    }
    let rank = points[0].rank();
    for p in points {
        if p.rank() != rank {
            return Err(LatticeError::DimensionMismatch(
                "points of mixed rank".into(),
            ));
        }
    }
    // kernel of the (rank x npoints) matrix whose columns are the points
    let m = IntMat::from_rows(points.to_vec()).transpose();
    let kernel = integer_kernel(&m);
    if kernel.len() != 1 {
        return Err(LatticeError::NoPositiveRelation(format!(
            "relation space has dimension {}",
            kernel.len()
        )));
    }
    let mut w = kernel[0].primitized();
    if w.0.iter().all(Signed::is_negative) {
        w = -&w;
    }
    if !w.0.iter().all(Signed::is_positive) {
        return Err(LatticeError::NoPositiveRelation(
            "kernel generator is not strictly positive".into(),
        ));
    }
    // re-verify the relation exactly
    let mut acc = IntVec::zeros(rank);
    for (wi, p) in w.iter().zip(points.iter()) {
        acc = &acc + &p.scaled(wi);
    }
    assert!(acc.is_zero(), "primitive relation failed re-verification");
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_identity() {
        let m = IntMat::identity(3);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, IntMat::identity(3));
        assert_eq!(s.u.mul_mat(&m).mul_mat(&s.v), s.d);
    }

    #[test]
    fn snf_two_by_two() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8
        let m = IntMat::from_i64(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors(), vec![int(2), int(4)]);
        assert_eq!(s.u.mul_mat(&m).mul_mat(&s.v), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
    }

    #[test]
    fn snf_quintic_vertex_matrix() {
        // vertex rows of the degree-5 simplex in dimension 4
        let m = IntMat::from_i64(&[
            &[4, -1, -1, -1],
            &[-1, 4, -1, -1],
            &[-1, -1, 4, -1],
            &[-1, -1, -1, 4],
            &[-1, -1, -1, -1],
        ]);
        let s = smith_normal_form(&m);
        assert_eq!(
            s.invariant_factors(),
            vec![int(1), int(5), int(5), int(5)]
        );
        assert_eq!(s.u.mul_mat(&m).mul_mat(&s.v), s.d);
    }

    #[test]
    fn hnf_echelon_and_transform() {
        let m = IntMat::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.mul_mat(&m), h);
        assert!(u.is_unimodular());
        // pivots positive, entries above reduced
        assert!(h[(0, 0)].is_positive());
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let m = IntMat::from_i64(&[&[1, 2, 3]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn quotient_standard_basis() {
        let gens = vec![
            IntVec::from_i64(&[1, 0, 0]),
            IntVec::from_i64(&[0, 1, 0]),
            IntVec::from_i64(&[0, 0, 1]),
        ];
        let q = lattice_quotient(&gens, 3);
        assert!(q.is_trivial());
    }

    #[test]
    fn quotient_even_sublattice_of_z1() {
        let q = lattice_quotient(&[IntVec::from_i64(&[2])], 1);
        assert_eq!(q, AbelianQuotient::from_factors_i64(&[2]));
        assert_eq!(q.order(), Some(int(2)));
    }

    #[test]
    fn quotient_quintic_vertices() {
        let gens = vec![
            IntVec::from_i64(&[4, -1, -1, -1]),
            IntVec::from_i64(&[-1, 4, -1, -1]),
            IntVec::from_i64(&[-1, -1, 4, -1]),
            IntVec::from_i64(&[-1, -1, -1, 4]),
            IntVec::from_i64(&[-1, -1, -1, -1]),
        ];
        let q = lattice_quotient(&gens, 4);
        assert_eq!(q, AbelianQuotient::from_factors_i64(&[5, 5, 5]));
        assert_eq!(q.order(), Some(int(125)));
    }

    #[test]
    fn quotient_with_free_part() {
        let q = lattice_quotient(&[IntVec::from_i64(&[2, 0, 0])], 3);
        assert_eq!(q.invariant_factors, vec![int(2)]);
        assert_eq!(q.free_rank, 2);
        assert_eq!(q.order(), None);
    }

    #[test]
    fn relation_of_projective_space_vertices() {
        let pts = vec![
            IntVec::from_i64(&[1, 0, 0, 0]),
            IntVec::from_i64(&[0, 1, 0, 0]),
            IntVec::from_i64(&[0, 0, 1, 0]),
            IntVec::from_i64(&[0, 0, 0, 1]),
            IntVec::from_i64(&[-1, -1, -1, -1]),
        ];
        assert_eq!(
            primitive_relation(&pts).unwrap(),
            IntVec::from_i64(&[1, 1, 1, 1, 1])
        );
    }

    #[test]
    fn relation_weighted() {
        // a(1,0) + b(0,1) + c(-2,-3) = 0 forces (a,b,c) = c(2,3,1)
        let pts = vec![
            IntVec::from_i64(&[1, 0]),
            IntVec::from_i64(&[0, 1]),
            IntVec::from_i64(&[-2, -3]),
        ];
        assert_eq!(
            primitive_relation(&pts).unwrap(),
            IntVec::from_i64(&[2, 3, 1])
        );
    }

    #[test]
    fn relation_degenerate_rejected() {
        let pts = vec![
            IntVec::from_i64(&[1, 0]),
            IntVec::from_i64(&[-1, 0]),
            IntVec::from_i64(&[0, 1]),
        ];
        assert!(matches!(
            primitive_relation(&pts),
            Err(LatticeError::NoPositiveRelation(_))
        ));
    }

    #[test]
    fn express_in_finer_basis() {
        let basis = IntMat::from_i64(&[&[1, 1], &[0, 2]]);
        let v = IntVec::from_i64(&[2, 4]);
        assert_eq!(
            express_in_basis(&v, &basis),
            Some(IntVec::from_i64(&[2, 1]))
        );
        let w = IntVec::from_i64(&[0, 1]);
        assert_eq!(express_in_basis(&w, &basis), None);
    }

    #[test]
    fn det_and_rank() {
        let m = IntMat::from_i64(&[&[4, -1, -1, -1], &[-1, 4, -1, -1], &[-1, -1, 4, -1], &[
            -1, -1, -1, 4,
        ]]);
        assert_eq!(m.det(), int(125));
        assert_eq!(m.rank(), 4);
    }
}
