//! Exact matrix rank and nullspace by fraction-free (Bareiss) elimination.

use crate::algebra::{MultiPoly, RatFunc, Scalar};

/// Integral-domain operations Bareiss elimination needs.
pub trait ExactDomain: Clone {
    fn is_zero(&self) -> bool;
    fn one_like(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    /// Division known to be exact.
    fn exact_div(&self, d: &Self) -> Self;
}

impl ExactDomain for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn one_like(&self) -> Self {
        Scalar::one(self.field())
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn exact_div(&self, d: &Self) -> Self {
        self.checked_div(d).expect("nonzero Bareiss divisor")
    }
}

impl ExactDomain for MultiPoly {
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.field(), self.nvars())
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn exact_div(&self, d: &Self) -> Self {
        MultiPoly::exact_div(self, d).expect("Bareiss division is exact")
    }
}

/// Dense row-major matrix; all entries share one field or context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> ExactMatrix<T> {
    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            entries.extend(r);
        }
        ExactMatrix {
            rows: nrows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

/// In-place fraction-free elimination to row echelon form. Pivot choice is
/// the first nonzero entry of the column. Returns the pivot positions.
pub fn bareiss_echelon<T: ExactDomain>(m: &mut ExactMatrix<T>) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut prev: Option<T> = None;
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let piv = m.get(r, c).clone();
        for i in r + 1..m.rows {
            let lead = m.get(i, c).clone();
            for j in c + 1..m.cols {
                let mut v = piv.mul(m.get(i, j)).sub(&lead.mul(m.get(r, j)));
                if let Some(d) = &prev {
                    v = v.exact_div(d);
                }
                m.set(i, j, v);
            }
            let z = piv.sub(&piv);
            m.set(i, c, z);
        }
        prev = Some(piv);
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Rank over the fraction field: each row is scaled by the lcm of its
/// denominators, then eliminated fraction-free over the polynomial ring.
pub fn rank(m: &ExactMatrix<RatFunc>) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut cleared_rows = Vec::with_capacity(m.rows);
    for r in 0..m.rows {
        let row = m.row(r);
        let mut l = MultiPoly::one(row[0].field(), row[0].nvars());
        for e in row {
            let d = e.denom();
            if !d.is_one() {
                let g = crate::algebra::poly_gcd(&l, d);
                l = &l * &d.exact_div(&g).expect("gcd divides");
            }
        }
        cleared_rows.push(
            row.iter()
                .map(|e| {
                    let scale = l.exact_div(e.denom()).expect("lcm is a multiple");
                    e.numer() * &scale
                })
                .collect(),
        );
    }
    let mut pm = ExactMatrix::from_rows(cleared_rows, m.cols);
    bareiss_echelon(&mut pm).len()
}

pub fn rank_scalar(m: &ExactMatrix<Scalar>) -> usize {
    let mut w = m.clone();
    bareiss_echelon(&mut w).len()
}

/// Basis of the right nullspace. Each vector has a 1 in its free column,
/// zeros in the other free columns, and the solved values in pivot columns.
pub fn nullspace(m: &ExactMatrix<Scalar>) -> Vec<Vec<Scalar>> {
    if m.cols == 0 {
        return Vec::new();
    }
    let field = match m.entries.first() {
        Some(e) => e.field(),
        None => return Vec::new(),
    };
    let mut w = m.clone();
    let pivots = bareiss_echelon(&mut w);
    // back-substitute to reduced echelon form
    for (k, &(r, c)) in pivots.iter().enumerate().rev() {
        let inv = w.get(r, c).inverse().expect("pivot nonzero");
        for j in c..w.cols {
            let v = w.get(r, j) * &inv;
            w.set(r, j, v);
        }
        for &(r2, _) in &pivots[..k] {
            let f = w.get(r2, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..w.cols {
                let v = w.get(r2, j) - &(&f * w.get(r, j));
                w.set(r2, j, v);
            }
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..w.cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Scalar::zero(field); w.cols];
        v[free] = Scalar::one(field);
        for &(r, c) in &pivots {
            v[c] = -w.get(r, free);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(Q, v)
    }

    fn smat(rows: &[&[i64]]) -> ExactMatrix<Scalar> {
        let cols = rows[0].len();
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| s(v)).collect()).collect(), cols)
    }

    fn x(i: usize) -> RatFunc {
        RatFunc::var(Q, 2, i)
    }

    #[test]
    fn rank_of_jacobian_of_symmetric_functions() {
        let one = RatFunc::one(Q, 2);
        let m = ExactMatrix::from_rows(vec![vec![one.clone(), one], vec![x(1), x(0)]], 2);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn rank_of_equal_rows() {
        let m = ExactMatrix::from_rows(vec![vec![x(0), x(0)], vec![x(0), x(0)]], 2);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn rank_of_zero_matrix() {
        let z = RatFunc::zero(Q, 2);
        let m = ExactMatrix::from_rows(vec![vec![z.clone(); 3]; 3], 3);
        assert_eq!(rank(&m), 0);
    }

    #[test]
    fn rank_with_denominators() {
        // [[1/x1, 1/x2], [x2, x1]] has determinant x1/x1 - x2/x2 = 0
        let a = RatFunc::one(Q, 2).checked_div(&x(0)).unwrap();
        let b = RatFunc::one(Q, 2).checked_div(&x(1)).unwrap();
        let m = ExactMatrix::from_rows(vec![vec![a, b], vec![x(1), x(0)]], 2);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn nullspace_single_equation() {
        assert_eq!(nullspace(&smat(&[&[1, -1]])), vec![vec![s(1), s(1)]]);
    }

    #[test]
    fn nullspace_identity_is_trivial() {
        assert!(nullspace(&smat(&[&[1, 0], &[0, 1]])).is_empty());
    }

    #[test]
    fn nullspace_duplicate_rows() {
        let basis = nullspace(&smat(&[&[1, 2, 3], &[2, 4, 6]]));
        assert_eq!(basis, vec![vec![s(-2), s(1), s(0)], vec![s(-3), s(0), s(1)]]);
    }

    #[test]
    fn nullspace_skips_zero_column() {
        let basis = nullspace(&smat(&[&[0, 1, 1], &[0, 2, 3]]));
        assert_eq!(basis, vec![vec![s(1), s(0), s(0)]]);
    }
}
