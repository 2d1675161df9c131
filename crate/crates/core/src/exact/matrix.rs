use std::fmt;

use super::{ExactError, Scalar, ScalarField};

/// Dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: ScalarField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: ScalarField, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: ScalarField, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from rows; every row must have `cols` entries.
    pub fn from_rows(field: ScalarField, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { field, rows: n, cols, data }
    }

    pub fn from_ints(field: ScalarField, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            field,
            cols,
            rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect(),
        )
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c) + &(a * b);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.rows, v.len(), "vector-matrix dimension mismatch");
        let mut out = vec![self.field.zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let b = self.get(r, c);
                if !b.is_zero() {
                    *o = &*o + &(a * b);
                }
            }
        }
        out
    }

    /// Square submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_rows(
            self.field,
            cols.len(),
            rows.iter().map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect()).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Exact determinant by elimination. Panics if not square.
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return self.field.zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv().unwrap();
            for r in col + 1..m.rows {
                let f = m.get(r, col) * &inv;
                if !f.is_zero() {
                    m.axpy_row(r, col, &f, col);
                }
            }
        }
        det
    }

    /// Leading principal minors, top-left 1x1 up to the full matrix.
    ///
    /// One elimination pass without row exchanges: the k-th minor is the
    /// product of the first k pivots. Falls back to separate determinants
    /// after a zero pivot.
    pub fn leading_principal_minors(&self) -> Vec<Scalar> {
        assert_eq!(self.rows, self.cols, "minors of non-square matrix");
        let mut m = self.clone();
        let mut out = Vec::with_capacity(self.rows);
        let mut acc = self.field.one();
        for col in 0..m.cols {
            let pivot = m.get(col, col).clone();
            if pivot.is_zero() {
                out.extend((col + 1..=self.rows).map(|k| {
                    let idx: Vec<usize> = (0..k).collect();
                    self.select(&idx, &idx).determinant()
                }));
                return out;
            }
            acc = &acc * &pivot;
            out.push(acc.clone());
            let inv = pivot.inv().unwrap();
            for r in col + 1..m.rows {
                let f = m.get(r, col) * &inv;
                if !f.is_zero() {
                    m.axpy_row(r, col, &f, col);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[target] -= factor * row[source], from column `from` onward.
    fn axpy_row(&mut self, target: usize, source: usize, factor: &Scalar, from: usize) {
        for c in from..self.cols {
            let s = self.get(source, c);
            if s.is_zero() {
                continue;
            }
            let v = self.get(target, c) - &(factor * s);
            self.set(target, c, v);
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form and the pivot columns.
pub fn rref(a: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(p, row);
        let inv = m.get(row, col).inv().unwrap();
        for c in col..m.cols {
            let v = m.get(row, c) * &inv;
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let f = m.get(r, col).clone();
            if !f.is_zero() {
                m.axpy_row(r, row, &f, col);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

/// Rank by forward elimination only.
pub fn rank(a: &Matrix) -> usize {
    let mut m = a.clone();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(p, row);
        let inv = m.get(row, col).inv().unwrap();
        for r in row + 1..m.rows {
            let f = m.get(r, col) * &inv;
            if !f.is_zero() {
                m.axpy_row(r, row, &f, col);
            }
        }
        row += 1;
    }
    row
}

/// One exact solution of `A x = b` with every free variable set to zero,
/// or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, ExactError> {
    if b.len() != a.rows {
        return Err(ExactError::Dimension(format!(
            "right-hand side has {} entries for {} rows",
            b.len(),
            a.rows
        )));
    }
    let mut aug = Matrix::zeros(a.field, a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, a.cols, b[r].clone());
    }
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![a.field.zero(); a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = red.get(r, a.cols).clone();
    }
    Ok(Some(x))
}

/// Basis of the right kernel `{v : A v = 0}`, one vector per free column.
pub fn nullspace(a: &Matrix) -> Vec<Vec<Scalar>> {
    let (red, pivots) = rref(a);
    let mut basis = Vec::new();
    for free in (0..a.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![a.field.zero(); a.cols];
        v[free] = a.field.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -red.get(r, free);
        }
        basis.push(v);
    }
    basis
}

/// Exact basis of the radical `{v : G v = 0}` of a square bilinear form.
pub fn bilinear_radical(g: &Matrix) -> Result<Vec<Vec<Scalar>>, ExactError> {
    if g.rows != g.cols {
        return Err(ExactError::NotSquare { rows: g.rows, cols: g.cols });
    }
    Ok(nullspace(g))
}



/// Rows kept in reduced form as they arrive, for rank and membership
/// tests that can stop early.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    /// `(pivot, row)` with the row scaled to 1 at its pivot and zero at
    /// every earlier pivot.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(cols: usize) -> Echelon {
        Echelon { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// What is left of `v` after removing the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(*p) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.is_full() || self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Add a row; true when the rank grew.
    /// The reduced rows, a basis of the span.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols, "row length");
        if self.is_full() {
            return false;
        }
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        for x in r.iter_mut().skip(p) {
            *x = &*x * &inv;
        }
        self.rows.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_matches_rank() {
        let f = ScalarField::Rational;
        let m = Matrix::from_ints(f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        let mut e = Echelon::new(3);
        let grew: Vec<bool> = m.row_vecs().iter().map(|r| e.insert(r)).collect();
        assert_eq!(grew, vec![true, false, true, false]);
        assert_eq!(e.rank(), rank(&m));
        assert!(e.contains(&[f.from_int(1), f.from_int(1), f.from_int(2)]));
        assert!(!e.contains(&[f.from_int(0), f.from_int(0), f.from_int(1)]));
    }

    const Q: ScalarField = ScalarField::Rational;

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(Q, 3);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1, 2]));
        let z = Matrix::zeros(Q, 2, 3);
        assert_eq!(rref(&z), (z.clone(), vec![]));
    }

    #[test]
    fn rref_golden_rank_one() {
        // [[delta, delta^2], [1, delta]]: row1 = delta * row2.
        let f = ScalarField::QuadraticGolden;
        let d = f.delta();
        let m = Matrix::from_rows(f, 2, vec![vec![d.clone(), &d * &d], vec![f.one(), d.clone()]]);
        let (red, piv) = rref(&m);
        assert_eq!(piv, vec![0]);
        assert_eq!(red.row(0), &[f.one(), d]);
        assert!(red.row(1).iter().all(Scalar::is_zero));
        assert_eq!(rref(&red).0, red);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(Q, 2);
        let b = vec![Q.from_int(3), Q.from_int(-1)];
        assert_eq!(solve(&id, &b).unwrap(), Some(b));

        let f = ScalarField::QuadraticRoot2;
        let a = Matrix::from_ints(f, &[&[1, 1]]);
        assert_eq!(solve(&a, &[f.delta()]).unwrap(), Some(vec![f.delta(), f.zero()]));

        let a = Matrix::from_ints(Q, &[&[1], &[1]]);
        assert_eq!(solve(&a, &[Q.zero(), Q.one()]).unwrap(), None);
    }

    #[test]
    fn radical_extremes() {
        let g = Matrix::identity(Q, 3);
        assert!(bilinear_radical(&g).unwrap().is_empty());
        let z = Matrix::zeros(Q, 3, 3);
        assert_eq!(bilinear_radical(&z).unwrap().len(), 3);
        let ns = Matrix::zeros(Q, 2, 3);
        assert!(matches!(bilinear_radical(&ns), Err(ExactError::NotSquare { .. })));
    }

    #[test]
    fn determinant_matches_hand_value() {
        let f = ScalarField::QuadraticRoot3;
        let m = Matrix::from_rows(f, 2, vec![vec![f.one(), f.delta()], vec![f.delta(), f.one()]]);
        assert_eq!(m.determinant(), f.from_int(-2));
    }
}
