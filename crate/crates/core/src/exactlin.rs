//! Dense exact-rational linear algebra: rank, invertibility and linear
//! solves via Gaussian elimination.
//!
//! Pivots are chosen as the first nonzero entry in each column; with
//! exact arithmetic no magnitude pivoting is needed and every result is
//! bit-reproducible. Intermediate entries stay in lowest terms because
//! the scalar type reduces on every operation.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::BadMatrixShape {
                rows,
                cols,
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(RationalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Convenience constructor from integer rows.
    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&n| Rational::from_integer(n))
            .collect();
        RationalMatrix::new(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut out = RationalMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    pub fn mul_vector(&self, v: &RationalVector) -> Result<RationalVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let entries = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * v.at(c)).sum())
            .collect();
        Ok(RationalVector::new(entries))
    }

    fn row_slices(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }
}

/// A column vector of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVector(entries)
    }

    pub fn from_integers(entries: &[i64]) -> Self {
        RationalVector(entries.iter().map(|&n| Rational::from_integer(n)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, index: usize) -> &Rational {
        &self.0[index]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// The single solution of a consistent full-column-rank system.
    Unique(RationalVector),
    /// The system is inconsistent.
    NoSolution,
    /// Consistent but rank-deficient: one particular solution (free
    /// variables pinned to zero) plus the dimension of the null space.
    Infinite {
        particular: RationalVector,
        nullity: usize,
    },
}

/// Reduces `rows` to row echelon form over the leftmost `cols` columns,
/// carrying any extra columns along. Returns the pivot column per pivot
/// row.
fn echelonize(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == height {
            break;
        }
        let Some(p) = (r..height).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..height {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = &rows[i][c] / &rows[r][c];
            for j in c..width {
                let t = &factor * &rows[r][j];
                rows[i][j] = &rows[i][j] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// The rank of `m` over the rationals.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut rows = m.row_slices();
    echelonize(&mut rows, m.cols()).len()
}

/// True when a square matrix has full rank.
pub fn is_invertible(m: &RationalMatrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NonSquareMatrix);
    }
    Ok(rank(m) == m.rows())
}

/// Solves `m · x = b` exactly and classifies the system.
pub fn solve(m: &RationalMatrix, b: &RationalVector) -> Result<LinearSolution> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but {} right-hand entries",
            m.rows(),
            b.len()
        )));
    }
    let cols = m.cols();
    let mut rows = m.row_slices();
    for (row, rhs) in rows.iter_mut().zip(b.entries()) {
        row.push(rhs.clone());
    }
    let pivots = echelonize(&mut rows, cols);
    let rank = pivots.len();

    // A zero coefficient row with a nonzero right-hand side is
    // inconsistent.
    for row in rows.iter().skip(rank) {
        if !row[cols].is_zero() {
            return Ok(LinearSolution::NoSolution);
        }
    }

    // Back substitution; free columns stay at zero.
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = rows[r][cols].clone();
        for j in c + 1..cols {
            if !rows[r][j].is_zero() && !x[j].is_zero() {
                let t = &rows[r][j] * &x[j];
                acc -= &t;
            }
        }
        x[c] = &acc / &rows[r][c];
    }
    let x = RationalVector::new(x);
    if rank == cols {
        Ok(LinearSolution::Unique(x))
    } else {
        Ok(LinearSolution::Infinite {
            particular: x,
            nullity: cols - rank,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent determinant oracle: recursive cofactor expansion.
    fn determinant(m: &RationalMatrix) -> Rational {
        assert!(m.is_square());
        let n = m.rows();
        if n == 1 {
            return m.at(0, 0).clone();
        }
        let mut det = Rational::zero();
        for c in 0..n {
            if m.at(0, c).is_zero() {
                continue;
            }
            let mut minor = RationalMatrix::zeros(n - 1, n - 1);
            for r in 1..n {
                let mut k = 0;
                for j in 0..n {
                    if j == c {
                        continue;
                    }
                    minor.set(r - 1, k, m.at(r, j).clone());
                    k += 1;
                }
            }
            let term = m.at(0, c) * &determinant(&minor);
            if c % 2 == 0 {
                det += &term;
            } else {
                det -= &term;
            }
        }
        det
    }

    fn chain_meet_matrix() -> RationalMatrix {
        // The meet/miss matrix of {{a,b},{b,c,d},{d,e}} in listed order.
        RationalMatrix::from_integer_rows(&[vec![1, 1, 0], vec![1, 1, 1], vec![0, 1, 1]]).unwrap()
    }

    #[test]
    fn rank_of_the_three_facility_matrix_is_full() {
        let m = chain_meet_matrix();
        // Oracle first: cofactor expansion gives determinant -1.
        assert_eq!(determinant(&m), Rational::from_integer(-1));
        assert_eq!(rank(&m), 3);
        assert!(is_invertible(&m).unwrap());
    }

    #[test]
    fn rank_degenerate_cases() {
        let ones = RationalMatrix::from_integer_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(rank(&ones), 1);
        assert!(!is_invertible(&ones).unwrap());
        for n in 1..6 {
            assert_eq!(rank(&RationalMatrix::identity(n)), n);
        }
        let zero = RationalMatrix::from_integer_rows(&[vec![0]]).unwrap();
        assert!(!is_invertible(&zero).unwrap());
    }

    #[test]
    fn non_square_invertibility_is_an_error() {
        let m = RationalMatrix::from_integer_rows(&[vec![1, 0]]).unwrap();
        assert!(matches!(is_invertible(&m), Err(Error::NonSquareMatrix)));
    }

    #[test]
    fn solve_recovers_the_facility_costs() {
        let m = chain_meet_matrix();
        let b = RationalVector::from_integers(&[-18, -22, -16]);
        let got = solve(&m, &b).unwrap();
        assert_eq!(
            got,
            LinearSolution::Unique(RationalVector::from_integers(&[-6, -12, -4]))
        );

        let m = RationalMatrix::from_integer_rows(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]])
            .unwrap();
        let b = RationalVector::from_integers(&[-1, -2, -4]);
        assert_eq!(
            solve(&m, &b).unwrap(),
            LinearSolution::Unique(RationalVector::from_integers(&[-2, -3, 1]))
        );
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = RationalMatrix::from_integer_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        let b = RationalVector::from_integers(&[1, 2]);
        assert_eq!(solve(&m, &b).unwrap(), LinearSolution::NoSolution);
    }

    #[test]
    fn solve_reports_nullity_with_a_particular_solution() {
        let m = RationalMatrix::from_integer_rows(&[vec![1, 1], vec![2, 2]]).unwrap();
        let b = RationalVector::from_integers(&[1, 2]);
        match solve(&m, &b).unwrap() {
            LinearSolution::Infinite { particular, nullity } => {
                assert_eq!(nullity, 1);
                assert_eq!(m.mul_vector(&particular).unwrap(), b);
            }
            other => panic!("expected infinite solutions, got {other:?}"),
        }
    }

    #[test]
    fn solve_rejects_mismatched_dimensions() {
        let m = RationalMatrix::identity(2);
        let b = RationalVector::from_integers(&[1, 2, 3]);
        assert!(matches!(solve(&m, &b), Err(Error::DimensionMismatch(_))));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
        proptest::collection::vec(-9i64..=9, n * n).prop_map(move |cells| {
            RationalMatrix::new(
                n,
                n,
                cells.into_iter().map(Rational::from_integer).collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn solve_round_trips_on_invertible_matrices(
            m in arb_matrix(4),
            x in proptest::collection::vec(-9i64..=9, 4)
        ) {
            prop_assume!(!determinant(&m).is_zero());
            let x = RationalVector::from_integers(&x);
            let b = m.mul_vector(&x).unwrap();
            prop_assert_eq!(solve(&m, &b).unwrap(), LinearSolution::Unique(x));
        }

        #[test]
        fn rank_is_transpose_invariant(m in arb_matrix(4)) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn any_returned_solution_substitutes_back_exactly(
            m in arb_matrix(3),
            b in proptest::collection::vec(-9i64..=9, 3)
        ) {
            let b = RationalVector::from_integers(&b);
            match solve(&m, &b).unwrap() {
                LinearSolution::Unique(x) => prop_assert_eq!(m.mul_vector(&x).unwrap(), b),
                LinearSolution::Infinite { particular, .. } => {
                    prop_assert_eq!(m.mul_vector(&particular).unwrap(), b)
                }
                LinearSolution::NoSolution => {}
            }
        }
    }
}
