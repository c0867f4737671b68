//! Exact linear algebra over the rationals.
//!
//! Row reduction always pivots on the first nonzero column of the incoming
//! row, and rows are consumed in index order.

use crate::rational::Rational;

/// Row-echelon basis built one row at a time.
///
/// Each stored row has a leading 1 in its pivot column and is zero in the
/// pivot columns of all earlier rows.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `row` against the basis; afterwards it vanishes on every pivot
    /// column.
    pub fn reduce(&self, row: &mut [Rational]) {
        for (basis_row, &p) in self.rows.iter().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, b) in row.iter_mut().zip(basis_row).skip(p) {
                if !b.is_zero() {
                    *x = &*x - &(&factor * b);
                }
            }
        }
    }

    /// Inserts `row`; returns true when it was independent of the basis.
    pub fn insert(&mut self, mut row: Vec<Rational>) -> bool {
        self.reduce(&mut row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[p].recip();
        for x in row.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push(row);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, row: &[Rational]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(Rational::is_zero)
    }
}

pub fn to_rational_row(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| Rational::from_int(x)).collect()
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut basis = EchelonBasis::new();
    for r in rows {
        basis.insert(r.clone());
    }
    basis.rank()
}

/// Dimension of the affine hull of integer points; 0 for a single point.
///
/// Panics on an empty slice.
pub fn affine_rank(points: &[Vec<i64>]) -> usize {
    let (first, rest) = points.split_first().expect("affine_rank of an empty point set");
    let mut basis = EchelonBasis::new();
    for p in rest {
        let diff: Vec<Rational> = p.iter().zip(first).map(|(&x, &y)| Rational::from_int(x - y)).collect();
        basis.insert(diff);
        if basis.rank() == first.len() {
            break;
        }
    }
    basis.rank()
}

/// Indices of the first maximal linearly independent subset of `rows`,
/// scanning in order.
pub fn independent_rows(rows: &[Vec<Rational>]) -> Vec<usize> {
    let mut basis = EchelonBasis::new();
    let mut picked = Vec::new();
    let width = rows.first().map_or(0, Vec::len);
    for (i, r) in rows.iter().enumerate() {
        if basis.insert(r.clone()) {
            picked.push(i);
            if basis.rank() == width {
                break;
            }
        }
    }
    picked
}

/// Indices of the first maximal linearly independent subset of columns.
pub fn independent_columns(rows: &[Vec<Rational>]) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let columns: Vec<Vec<Rational>> = (0..width)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    independent_rows(&columns)
}

/// Solves `a x = b` for square nonsingular `a`; `None` if singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    gauss_jordan(&mut aug, n)?;
    Some(aug.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

/// Inverse of a square matrix; `None` if singular.
pub fn inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    gauss_jordan(&mut aug, n)?;
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Reduces the leading `n` columns of `m` (n rows) to the identity.
fn gauss_jordan(m: &mut [Vec<Rational>], n: usize) -> Option<()> {
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
    }
    Some(())
}
