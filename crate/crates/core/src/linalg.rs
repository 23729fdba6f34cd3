//! Dense linear algebra over k = Z/p.
//!
//! Maps are stored in column convention: a matrix with `rows` = target
//! dimension and `cols` = source dimension acts as `v ↦ M v`. The routines
//! that pivot (rank, kernel, subspaces) assume the modulus is prime; callers
//! check that once at their entry point.

use crate::ring::BaseRing;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "flat data has wrong length");
        Matrix { rows, cols, data }
    }

    /// Builds a `rows.len() × cols` matrix; `None` if any row has the wrong length.
    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Option<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column has wrong length");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_flat(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, k: BaseRing, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let p = k.modulus() as u64;
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(l, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn apply(&self, k: BaseRing, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "vector length does not match matrix");
        let p = k.modulus() as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64 % p)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, k: BaseRing, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| k.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, k: BaseRing, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| k.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, k: BaseRing, c: u32) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| k.mul(a, c)).collect(),
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, k: BaseRing, c: u32, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = k.add(*a, k.mul(c, b));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut b = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                b.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        b
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r0 + i, c0 + j, m.get(i, j));
            }
        }
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    pub fn rank(&self, k: BaseRing) -> usize {
        rref_rows(k, self.to_rows(), self.cols).0.len()
    }

    pub fn is_invertible(&self, k: BaseRing) -> bool {
        self.is_square() && self.rank(k) == self.rows
    }

    pub fn inverse(&self, k: BaseRing) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n));
        let (rows, pivots) = rref_rows(k, aug.to_rows(), 2 * n);
        if rows.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for (i, r) in rows.iter().enumerate() {
            for j in 0..n {
                inv.set(i, j, r[n + j]);
            }
        }
        Some(inv)
    }
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref_rows(k: BaseRing, mut rows: Vec<Vec<u32>>, ncols: usize) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = k.inv(rows[r][c]).expect("pivot must be a unit");
        for x in rows[r].iter_mut() {
            *x = k.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = k.sub(*x, k.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{x : m x = 0}`.
pub fn kernel(k: BaseRing, m: &Matrix) -> Vec<Vec<u32>> {
    let n = m.cols();
    let (rows, pivots) = rref_rows(k, m.to_rows(), n);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = k.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// One solution of `m x = b`, if any.
pub fn solve(k: BaseRing, m: &Matrix, b: &[u32]) -> Option<Vec<u32>> {
    assert_eq!(m.rows(), b.len());
    let n = m.cols();
    let aug: Vec<Vec<u32>> = (0..m.rows())
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i]);
            r
        })
        .collect();
    let (rows, pivots) = rref_rows(k, aug, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![0; n];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[n];
    }
    Some(x)
}

pub fn vec_add(k: BaseRing, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| k.add(x, y)).collect()
}

pub fn vec_sub(k: BaseRing, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| k.sub(x, y)).collect()
}

pub fn vec_scale(k: BaseRing, c: u32, a: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| k.mul(c, x)).collect()
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Σ cᵢ vᵢ over vectors of length `n`.
pub fn combine(k: BaseRing, n: usize, coeffs: &[u32], vectors: &[Vec<u32>]) -> Vec<u32> {
    let mut out = vec![0; n];
    for (&c, v) in coeffs.iter().zip(vectors) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(v) {
            *o = k.add(*o, k.mul(c, x));
        }
    }
    out
}

/// A subspace of kⁿ held as its reduced row echelon basis. Two subspaces are
/// equal iff their echelon bases are, so `Eq`, `Hash` and `Ord` are canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I>(k: BaseRing, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let rows: Vec<Vec<u32>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector outside ambient space"))
            .collect();
        let (basis, pivots) = rref_rows(k, rows, ambient);
        Subspace { ambient, basis, pivots }
    }

    /// Column space of `m`.
    pub fn column_space(k: BaseRing, m: &Matrix) -> Self {
        Self::span(k, m.rows(), m.columns())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    pub fn reduce(&self, k: BaseRing, v: &[u32]) -> Vec<u32> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p];
            if c != 0 {
                for (x, &y) in r.iter_mut().zip(b) {
                    *x = k.sub(*x, k.mul(c, y));
                }
            }
        }
        r
    }

    pub fn contains(&self, k: BaseRing, v: &[u32]) -> bool {
        is_zero(&self.reduce(k, v))
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, k: BaseRing, v: &[u32]) -> Option<Vec<u32>> {
        let coeffs: Vec<u32> = self.pivots.iter().map(|&p| v[p]).collect();
        (combine(k, self.ambient, &coeffs, &self.basis) == v).then_some(coeffs)
    }

    pub fn sum(&self, k: BaseRing, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Self::span(k, self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn with_vectors<I>(&self, k: BaseRing, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        Self::span(k, self.ambient, self.basis.iter().cloned().chain(vectors))
    }

    pub fn intersect(&self, k: BaseRing, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let a = self.basis_matrix();
        let b = other.basis_matrix().scale(k, k.neg(1));
        let sols = kernel(k, &a.hstack(&b));
        let da = self.dim();
        Self::span(
            k,
            self.ambient,
            sols.iter().map(|s| combine(k, self.ambient, &s[..da], &self.basis)),
        )
    }

    pub fn is_subspace_of(&self, k: BaseRing, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(k, b))
    }

    /// Image of this subspace under `m`.
    pub fn image(&self, k: BaseRing, m: &Matrix) -> Subspace {
        Self::span(k, m.rows(), self.basis.iter().map(|b| m.apply(k, b)))
    }

    /// `{x : m x ∈ self}`, with `m` mapping into this subspace's ambient space.
    pub fn preimage(&self, k: BaseRing, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        let n = m.cols();
        let b = self.basis_matrix().scale(k, k.neg(1));
        let sols = kernel(k, &m.hstack(&b));
        Self::span(k, n, sols.into_iter().map(|s| s[..n].to_vec()))
    }

    /// Vectors of this subspace extending a basis of `sub` to a basis of `self`.
    pub fn complement_of(&self, k: BaseRing, sub: &Subspace) -> Vec<Vec<u32>> {
        let mut acc = sub.clone();
        let mut extra = Vec::new();
        for b in &self.basis {
            if !acc.contains(k, b) {
                acc = acc.with_vectors(k, [b.clone()]);
                extra.push(b.clone());
            }
        }
        extra
    }

    pub fn element_count(&self, k: BaseRing) -> u128 {
        crate::error::saturating_pow(k.modulus() as u128, self.dim())
    }

    /// Every vector of the subspace, in lexicographic order of coefficients.
    pub fn elements(&self, k: BaseRing) -> Elements<'_> {
        Elements {
            k,
            space: self,
            coeffs: vec![0; self.dim()],
            done: false,
        }
    }
}

pub struct Elements<'a> {
    k: BaseRing,
    space: &'a Subspace,
    coeffs: Vec<u32>,
    done: bool,
}

impl Iterator for Elements<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let v = combine(self.k, self.space.ambient, &self.coeffs, &self.space.basis);
        let p = self.k.modulus();
        let mut i = 0;
        loop {
            if i == self.coeffs.len() {
                self.done = true;
                break;
            }
            self.coeffs[i] += 1;
            if self.coeffs[i] < p {
                break;
            }
            self.coeffs[i] = 0;
            i += 1;
        }
        Some(v)
    }
}

/// Smallest subspace containing `start` and stable under every matrix in `ops`.
pub fn invariant_closure(k: BaseRing, start: &Subspace, ops: &[Matrix]) -> Subspace {
    let mut space = start.clone();
    let mut work: Vec<Vec<u32>> = start.basis().to_vec();
    while let Some(v) = work.pop() {
        for op in ops {
            let w = op.apply(k, &v);
            if !space.contains(k, &w) {
                space = space.with_vectors(k, [w.clone()]);
                work.push(w);
            }
        }
    }
    space
}

/// Every subspace of `within` stable under `ops`, in canonical order.
///
/// Each invariant subspace is reached from 0 by repeatedly adjoining one
/// vector and closing, so a search over single-vector extensions finds all
/// of them. Only vectors whose first nonzero entry is 1 are tried.
pub fn invariant_subspaces(
    k: BaseRing,
    within: &Subspace,
    ops: &[Matrix],
    budget: crate::Budget,
) -> crate::Result<Vec<Subspace>> {
    budget.check("enumerating vectors of a module", within.element_count(k))?;
    let vectors: Vec<Vec<u32>> = within
        .elements(k)
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect();
    let zero = Subspace::zero(within.ambient());
    let mut found = std::collections::BTreeSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(w) = frontier.pop() {
        for v in &vectors {
            if w.contains(k, v) {
                continue;
            }
            let next = invariant_closure(k, &w.with_vectors(k, [v.clone()]), ops);
            if found.insert(next.clone()) {
                budget.check("enumerating invariant subspaces", found.len() as u128)?;
                frontier.push(next);
            }
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> BaseRing {
        BaseRing::new(2).unwrap()
    }

    fn f3() -> BaseRing {
        BaseRing::new(3).unwrap()
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = f3();
        let m = Matrix::from_rows(&[vec![1, 2, 0], vec![2, 1, 0]], 3).unwrap();
        let ker = kernel(k, &m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(is_zero(&m.apply(k, v)));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let k = f3();
        let m = Matrix::from_rows(&[vec![1, 1], vec![0, 2]], 2).unwrap();
        let inv = m.inverse(k).unwrap();
        assert_eq!(m.mul(k, &inv), Matrix::identity(2));
        let singular = Matrix::from_rows(&[vec![1, 2], vec![2, 1]], 2).unwrap();
        assert!(singular.inverse(k).is_none());
    }

    #[test]
    fn intersection_and_sum() {
        let k = f2();
        let a = Subspace::span(k, 3, [vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::span(k, 3, [vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(a.intersect(k, &b), Subspace::span(k, 3, [vec![0, 1, 0]]));
        assert!(a.sum(k, &b).is_full());
    }

    #[test]
    fn preimage_of_line() {
        let k = f2();
        // projection onto the first coordinate
        let m = Matrix::from_rows(&[vec![1, 0]], 2).unwrap();
        let pre = Subspace::zero(1).preimage(k, &m);
        assert_eq!(pre, Subspace::span(k, 2, [vec![0, 1]]));
    }

    #[test]
    fn element_enumeration_counts() {
        let k = f3();
        let s = Subspace::span(k, 3, [vec![1, 1, 0], vec![0, 0, 1]]);
        let elems: Vec<_> = s.elements(k).collect();
        assert_eq!(elems.len(), 9);
        assert!(elems.iter().all(|v| s.contains(k, v)));
        assert_eq!(Subspace::zero(2).elements(k).count(), 1);
    }

    #[test]
    fn solve_consistent_and_not() {
        let k = f2();
        let m = Matrix::from_rows(&[vec![1, 1], vec![0, 0]], 2).unwrap();
        assert!(solve(k, &m, &[1, 0]).is_some());
        assert!(solve(k, &m, &[1, 1]).is_none());
    }

    #[test]
    fn invariant_subspaces_of_a_jordan_block() {
        let k = f2();
        // nilpotent shift on k^3: invariant subspaces form a chain of length 4
        let shift = Matrix::from_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]], 3).unwrap();
        let subs = invariant_subspaces(k, &Subspace::full(3), &[shift], crate::Budget::default()).unwrap();
        assert_eq!(subs.len(), 4);
        // with no operators every subspace is invariant: 1 + 7 + 7 + 1 over F2
        let all = invariant_subspaces(k, &Subspace::full(3), &[], crate::Budget::default()).unwrap();
        assert_eq!(all.len(), 16);
    }

    proptest! {
        #[test]
        fn span_is_canonical(vs in proptest::collection::vec(proptest::collection::vec(0u32..3, 4), 0..5)) {
            let k = f3();
            let s = Subspace::span(k, 4, vs.clone());
            let mut rev = vs.clone();
            rev.reverse();
            let doubled: Vec<Vec<u32>> = vs.iter().map(|v| vec_scale(k, 2, v)).collect();
            prop_assert_eq!(&s, &Subspace::span(k, 4, rev));
            prop_assert_eq!(&s, &Subspace::span(k, 4, doubled));
            for v in &vs {
                prop_assert!(s.contains(k, v));
                let c = s.coordinates(k, v).unwrap();
                prop_assert_eq!(combine(k, 4, &c, s.basis()), v.clone());
            }
        }

        #[test]
        fn rank_nullity(rows in proptest::collection::vec(proptest::collection::vec(0u32..2, 5), 1..5)) {
            let k = f2();
            let m = Matrix::from_rows(&rows, 5).unwrap();
            prop_assert_eq!(m.rank(k) + kernel(k, &m).len(), 5);
        }
    }
}
