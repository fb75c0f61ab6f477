//! Dense matrices over an exact coefficient ring, with division-free rank
//! computation and exact minor enumeration.
//!
//! Rank is computed over the fraction field of the (integral-domain)
//! entry ring by fraction-free row elimination: `row_j <- p*row_j -
//! e*row_p` never divides, so no truncation is introduced beyond what the
//! entries already carry. If a pivot decision cannot be made because an
//! entry is zero-within-precision, the computation refuses with a
//! precision error instead of guessing.

use crate::error::ArithError;
use crate::novikov::ZeroStatus;
use crate::ring::CoefficientRing;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R: CoefficientRing> {
    pub ring: R,
    pub nrows: usize,
    pub ncols: usize,
    entries: Vec<R::Elem>,
}

impl<R: CoefficientRing> Matrix<R> {
    pub fn zero(ring: R, nrows: usize, ncols: usize) -> Self {
        let entries = vec![ring.zero(); nrows * ncols];
        Matrix {
            ring,
            nrows,
            ncols,
            entries,
        }
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
        }
        Matrix {
            ring,
            nrows,
            ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &R::Elem {
        &self.entries[r * self.ncols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R::Elem) {
        self.entries[r * self.ncols + c] = v;
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    /// Append `extra` as additional columns.
    pub fn augment_columns(&self, extra: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.nrows, extra.nrows, "row count mismatch");
        let mut out = Matrix::zero(self.ring.clone(), self.nrows, self.ncols + extra.ncols);
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..extra.ncols {
                out.set(r, self.ncols + c, extra.get(r, c).clone());
            }
        }
        out
    }

    /// Stack `below` underneath.
    pub fn stack_rows(&self, below: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.ncols, below.ncols, "column count mismatch");
        let mut out = Matrix::zero(self.ring.clone(), self.nrows + below.nrows, self.ncols);
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..below.nrows {
            for c in 0..self.ncols {
                out.set(self.nrows + r, c, below.get(r, c).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<R> {
        let mut out = Matrix::zero(self.ring.clone(), rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul_mat(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch");
        let mut out = Matrix::zero(self.ring.clone(), self.nrows, rhs.ncols);
        for r in 0..self.nrows {
            for c in 0..rhs.ncols {
                let mut acc = self.ring.zero();
                for k in 0..self.ncols {
                    acc = self
                        .ring
                        .add(&acc, &self.ring.mul(self.get(r, k), rhs.get(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Exact rank over the fraction field of the entry ring.
    pub fn rank(&self) -> Result<usize, ArithError> {
        let ring = self.ring.clone();
        let mut m = self.clone();
        let mut used = vec![false; m.nrows];
        let mut rank = 0usize;
        for col in 0..m.ncols {
            // pick a determinately nonzero pivot, preferring low weight
            let mut pivot: Option<(usize, Option<num_rational::BigRational>)> = None;
            let mut saw_indeterminate = false;
            for row in 0..m.nrows {
                if used[row] {
                    continue;
                }
                match ring.zero_status(m.get(row, col)) {
                    ZeroStatus::NonZero => {
                        let w = ring.pivot_weight(m.get(row, col));
                        let better = match (&pivot, &w) {
                            (None, _) => true,
                            (Some((_, Some(pw))), Some(nw)) => nw < pw,
                            (Some((_, None)), Some(_)) => true,
                            _ => false,
                        };
                        if better {
                            pivot = Some((row, w));
                        }
                    }
                    ZeroStatus::Indeterminate => saw_indeterminate = true,
                    ZeroStatus::Zero => {}
                }
            }
            let (prow, _) = match pivot {
                Some(p) => p,
                None => {
                    if saw_indeterminate {
                        return Err(ArithError::ZeroWithinPrecision {
                            cutoff: format!("column {col} pivot undecidable"),
                        });
                    }
                    continue;
                }
            };
            used[prow] = true;
            rank += 1;
            let p = m.get(prow, col).clone();
            for row in 0..m.nrows {
                if used[row] {
                    continue;
                }
                let e = m.get(row, col).clone();
                if ring.zero_status(&e) == ZeroStatus::Zero {
                    continue;
                }
                for c2 in 0..m.ncols {
                    if c2 == col {
                        // eliminated by construction; store the exact zero
                        m.set(row, c2, ring.zero());
                        continue;
                    }
                    let v = ring.sub(
                        &ring.mul(&p, m.get(row, c2)),
                        &ring.mul(&e, m.get(prow, c2)),
                    );
                    m.set(row, c2, v);
                }
            }
        }
        Ok(rank)
    }

    /// Determinant by Laplace expansion (entry rings are commutative; sizes
    /// stay small at desk scale).
    pub fn det(&self) -> R::Elem {
        assert_eq!(self.nrows, self.ncols, "determinant of non-square matrix");
        let n = self.nrows;
        if n == 0 {
            return self.ring.one();
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (0..n).collect();
        self.det_rec(&rows, &cols)
    }

    fn det_rec(&self, rows: &[usize], cols: &[usize]) -> R::Elem {
        let ring = &self.ring;
        if rows.len() == 1 {
            return self.get(rows[0], cols[0]).clone();
        }
        let mut acc = ring.zero();
        let r0 = rows[0];
        let rest: Vec<usize> = rows[1..].to_vec();
        for (j, &c) in cols.iter().enumerate() {
            let e = self.get(r0, c);
            if ring.is_zero(e) {
                continue;
            }
            let sub_cols: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, &cc)| cc)
                .collect();
            let minor = self.det_rec(&rest, &sub_cols);
            let signed = if j % 2 == 0 {
                ring.mul(e, &minor)
            } else {
                ring.neg(&ring.mul(e, &minor))
            };
            acc = ring.add(&acc, &signed);
        }
        acc
    }

    /// All size-k minors, as (rows, cols, determinant) with zero minors
    /// included (callers filter).
    pub fn minors(&self, k: usize) -> Vec<(Vec<usize>, Vec<usize>, R::Elem)> {
        let mut out = Vec::new();
        if k == 0 || k > self.nrows || k > self.ncols {
            return out;
        }
        let row_sets = combinations(self.nrows, k);
        let col_sets = combinations(self.ncols, k);
        for rows in &row_sets {
            for cols in &col_sets {
                let d = self.det_rec(rows, cols);
                out.push((rows.clone(), cols.clone(), d));
            }
        }
        out
    }

    pub fn map_entries<S: CoefficientRing>(
        &self,
        ring: S,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> Matrix<S> {
        Matrix {
            ring,
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map_entries<S: CoefficientRing, E>(
        &self,
        ring: S,
        f: impl Fn(&R::Elem) -> Result<S::Elem, E>,
    ) -> Result<Matrix<S>, E> {
        Ok(Matrix {
            ring,
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self
                .entries
                .iter()
                .map(f)
                .collect::<Result<Vec<_>, E>>()?,
        })
    }
}

/// All k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] + 1 <= n - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{rat_int, NovikovScalar};
    use crate::ring::NovikovField;

    fn mat(rows: Vec<Vec<i64>>) -> Matrix<NovikovField> {
        Matrix::from_rows(
            NovikovField,
            rows.into_iter()
                .map(|r| r.into_iter().map(NovikovScalar::from_int).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_simple() {
        assert_eq!(mat(vec![vec![1, 2], vec![2, 4]]).rank().unwrap(), 1);
        assert_eq!(mat(vec![vec![1, 0], vec![0, 1]]).rank().unwrap(), 2);
        assert_eq!(mat(vec![vec![0, 0], vec![0, 0]]).rank().unwrap(), 0);
    }

    #[test]
    fn rank_with_valuations() {
        // [[T, 1], [T^2, T]] has rank 1 (rows proportional by T)
        let t = NovikovScalar::t_pow(1, 1);
        let t2 = NovikovScalar::t_pow(2, 1);
        let m = Matrix::from_rows(
            NovikovField,
            vec![
                vec![t.clone(), NovikovScalar::one()],
                vec![t2, t.clone()],
            ],
        );
        assert_eq!(m.rank().unwrap(), 1);
    }

    #[test]
    fn rank_indeterminate_pivot() {
        let m = Matrix::from_rows(
            NovikovField,
            vec![vec![NovikovScalar::zero_mod(rat_int(3))]],
        );
        assert!(matches!(
            m.rank(),
            Err(ArithError::ZeroWithinPrecision { .. })
        ));
    }

    #[test]
    fn det_and_minors() {
        let m = mat(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(m.det(), NovikovScalar::from_int(-2));
        let minors = m.minors(1);
        assert_eq!(minors.len(), 4);
        let minors2 = m.minors(2);
        assert_eq!(minors2.len(), 1);
        assert_eq!(minors2[0].2, NovikovScalar::from_int(-2));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 4).len(), 1);
        assert_eq!(combinations(3, 0).len(), 1);
    }
}
