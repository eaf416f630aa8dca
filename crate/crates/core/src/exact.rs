//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`] / [`BigRational`], so no input size
//! can overflow. Determinants use fraction-free (Bareiss) elimination; the
//! Hermite form uses column operations only, producing `M * U = H` with `H`
//! lower triangular and every row reduced modulo its own diagonal entry.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.cols)
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.row_iter().map(<[T]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + &self[(i, k)] * &other[(k, j)];
                }
                out.push(acc);
            }
        }
        Ok(Self { rows: self.rows, cols: other.cols, data: out })
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} times {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(T::zero(), |acc, (i, x)| acc + x * &self[(i, j)])
            })
            .collect())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.data.chunks(self.cols).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    /// Convenience constructor from small integer rows.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    fn col_axpy(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = factor * &self[(i, source)];
            self[(i, target)] -= delta;
        }
    }

    fn row_axpy(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * &self[(source, j)];
            self[(target, j)] -= delta;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -&self[(i, j)];
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -&self[(i, j)];
        }
    }
}

impl RatMatrix {
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Ok(IntMatrix::from_i64(rows)?.to_rational())
    }
}

fn require_square<T>(m: &Matrix<T>) -> Result<()> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!("expected square matrix, got {}x{}", m.rows, m.cols)));
    }
    Ok(())
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    require_square(m)?;
    let n = m.rows;
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}

/// `M * u == h` with `u` unimodular and `h` in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfDecomposition {
    pub u: IntMatrix,
    pub h: IntMatrix,
}

/// Column-style Hermite normal form of a nonsingular square matrix.
///
/// The result is lower triangular with positive diagonal and
/// `0 <= h[i][j] < h[i][i]` for `j < i`. Pivoting picks the leftmost column
/// with the smallest nonzero absolute value and reduces by floor division.
pub fn hnf_decompose(m: &IntMatrix) -> Result<HnfDecomposition> {
    require_square(m)?;
    let n = m.rows;
    let mut h = m.clone();
    let mut u = IntMatrix::identity(n);
    for i in 0..n {
        loop {
            let pivot = (i..n)
                .filter(|&j| !h[(i, j)].is_zero())
                .min_by(|&a, &b| h[(i, a)].abs().cmp(&h[(i, b)].abs()).then(a.cmp(&b)))
                .ok_or(Error::Singular)?;
            h.swap_cols(i, pivot);
            u.swap_cols(i, pivot);
            let mut clean = true;
            for j in i + 1..n {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&h[(i, i)]);
                h.col_axpy(j, i, &q);
                u.col_axpy(j, i, &q);
                clean &= h[(i, j)].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[(i, i)].is_negative() {
            h.negate_col(i);
            u.negate_col(i);
        }
        for j in 0..i {
            let q = h[(i, j)].div_floor(&h[(i, i)]);
            h.col_axpy(j, i, &q);
            u.col_axpy(j, i, &q);
        }
    }
    Ok(HnfDecomposition { u, h })
}

/// `left * M * right == diag(diagonal)` with both transforms unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diagonal: Vec<BigInt>,
    pub right: IntMatrix,
}

/// Smith form of an arbitrary (possibly rectangular) matrix. The diagonal has
/// length `min(rows, cols)`; trailing zeros mark rank deficiency.
pub fn smith_decompose(m: &IntMatrix) -> Result<SmithDecomposition> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.row_axpy(i, t, &q);
                left.row_axpy(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.col_axpy(j, t, &q);
                right.col_axpy(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match offender {
                Some(i) => {
                    // pull the offending row into the pivot row and go again
                    let minus_one = -BigInt::one();
                    a.row_axpy(t, i, &minus_one);
                    left.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    let diagonal = (0..steps).map(|i| a[(i, i)].clone()).collect();
    Ok(SmithDecomposition { left, diagonal, right })
}

/// Invariant factors `d_1 | d_2 | ... | d_n` of a nonsingular square matrix.
pub fn snf_invariant_factors(m: &IntMatrix) -> Result<Vec<BigInt>> {
    require_square(m)?;
    let diagonal = smith_decompose(m)?.diagonal;
    if diagonal.iter().any(Zero::is_zero) {
        return Err(Error::Singular);
    }
    Ok(diagonal)
}

pub fn inverse_rational(m: &IntMatrix) -> Result<RatMatrix> {
    inverse(&m.to_rational())
}

/// Gauss-Jordan inverse over the rationals.
pub fn inverse(m: &RatMatrix) -> Result<RatMatrix> {
    require_square(m)?;
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = RatMatrix::identity(n);
    for k in 0..n {
        let p = (k..n).find(|&i| !a[(i, k)].is_zero()).ok_or(Error::Singular)?;
        a.swap_rows(k, p);
        inv.swap_rows(k, p);
        let pivot = a[(k, k)].clone();
        for j in 0..n {
            a[(k, j)] = &a[(k, j)] / &pivot;
            inv[(k, j)] = &inv[(k, j)] / &pivot;
        }
        for i in 0..n {
            if i == k || a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone();
            for j in 0..n {
                let da = &f * &a[(k, j)];
                a[(i, j)] -= da;
                let di = &f * &inv[(k, j)];
                inv[(i, j)] -= di;
            }
        }
    }
    Ok(inv)
}

/// Solve `M x = b` exactly. Returns `None` when the system is inconsistent;
/// free variables (if any) are set to zero.
pub fn solve_linear(m: &RatMatrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    if m.rows != b.len() {
        return Err(Error::Dimension(format!(
            "{} equations but right-hand side of length {}",
            m.rows,
            b.len()
        )));
    }
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut rhs = b.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        rhs.swap(r, p);
        let pivot = a[(r, c)].clone();
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] / &pivot;
        }
        rhs[r] = &rhs[r] / &pivot;
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let d = &f * &a[(r, j)];
                a[(i, j)] -= d;
            }
            let d = &f * &rhs[r];
            rhs[i] -= d;
        }
        pivots.push(c);
        r += 1;
    }
    if rhs[r..].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Ok(Some(x))
}

/// Representative of `q` modulo 1 in `[0, 1)`.
pub fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn lcm_all<'a, I: IntoIterator<Item = &'a BigInt>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |l, x| l.lcm(x))
}

pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    let mut k = BigInt::from(2);
    while &k * &k <= *n {
        if n.is_multiple_of(&k) {
            return false;
        }
        k += 1;
    }
    true
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&IntMatrix::identity(3)).unwrap(), BigInt::one());
        assert_eq!(det(&m(&[&[1, 2], &[3, 4]])).unwrap(), BigInt::from(-2));
        assert_eq!(det(&m(&[&[1, 0], &[2, 3]])).unwrap(), BigInt::from(3));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])).unwrap(), BigInt::zero());
    }

    #[test]
    fn det_rejects_rectangular() {
        assert!(matches!(det(&m(&[&[1, 2, 3], &[4, 5, 6]])), Err(Error::Dimension(_))));
    }

    #[test]
    fn hnf_examples() {
        let d = hnf_decompose(&IntMatrix::identity(3)).unwrap();
        assert_eq!(d.h, IntMatrix::identity(3));
        assert_eq!(d.u, IntMatrix::identity(3));

        let diag = m(&[&[2, 0], &[0, 3]]);
        let d = hnf_decompose(&diag).unwrap();
        assert_eq!(d.h, diag);
        assert_eq!(d.u, IntMatrix::identity(2));

        let a = m(&[&[1, 2], &[3, 4]]);
        let d = hnf_decompose(&a).unwrap();
        assert_eq!(d.h, m(&[&[1, 0], &[1, 2]]));
        assert_eq!(a.mul(&d.u).unwrap(), d.h);
        assert_eq!(det(&d.u).unwrap().abs(), BigInt::one());
    }

    #[test]
    fn hnf_negative_determinant_gets_positive_diagonal() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let d = hnf_decompose(&a).unwrap();
        assert_eq!(d.h, IntMatrix::identity(2));
        assert_eq!(det(&d.u).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn hnf_singular() {
        assert_eq!(hnf_decompose(&m(&[&[1, 2], &[2, 4]])), Err(Error::Singular));
    }

    #[test]
    fn snf_examples() {
        let ones: Vec<BigInt> = vec![1.into(); 3];
        assert_eq!(snf_invariant_factors(&IntMatrix::identity(3)).unwrap(), ones);
        assert_eq!(
            snf_invariant_factors(&m(&[&[2, 0], &[0, 4]])).unwrap(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        assert_eq!(
            snf_invariant_factors(&m(&[&[2, 0], &[1, 2]])).unwrap(),
            vec![BigInt::from(1), BigInt::from(4)]
        );
        assert_eq!(
            snf_invariant_factors(&m(&[&[4, 0], &[0, 6]])).unwrap(),
            vec![BigInt::from(2), BigInt::from(12)]
        );
        assert_eq!(snf_invariant_factors(&m(&[&[1, 1], &[1, 1]])), Err(Error::Singular));
    }

    #[test]
    fn smith_transforms_reproduce_diagonal() {
        let a = m(&[&[4, 6, 2], &[1, 3, 5], &[7, 0, 2]]);
        let s = smith_decompose(&a).unwrap();
        let prod = s.left.mul(&a).unwrap().mul(&s.right).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(prod[(i, j)], want);
            }
        }
        assert_eq!(det(&s.left).unwrap().abs(), BigInt::one());
        assert_eq!(det(&s.right).unwrap().abs(), BigInt::one());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_rational(&IntMatrix::identity(2)).unwrap(), RatMatrix::identity(2));
        let inv = inverse_rational(&m(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(inv[(0, 0)], ratio(1, 2));
        assert_eq!(inv[(1, 1)], ratio(1, 3));
        let inv = inverse_rational(&m(&[&[1, 0], &[1, 2]])).unwrap();
        assert_eq!(
            inv.to_rows(),
            vec![vec![ratio(1, 1), ratio(0, 1)], vec![ratio(-1, 2), ratio(1, 2)]]
        );
        assert_eq!(inverse_rational(&m(&[&[1, 2], &[2, 4]])), Err(Error::Singular));
    }

    #[test]
    fn solve_examples() {
        let id = RatMatrix::identity(2);
        let b = vec![ratio(1, 1), ratio(2, 1)];
        assert_eq!(solve_linear(&id, &b).unwrap(), Some(b.clone()));

        let col = RatMatrix::from_i64(&[[1], [1]]).unwrap();
        assert_eq!(solve_linear(&col, &[ratio(0, 1), ratio(1, 1)]).unwrap(), None);
        assert_eq!(
            solve_linear(&col, &[ratio(5, 1), ratio(5, 1)]).unwrap(),
            Some(vec![ratio(5, 1)])
        );

        let a = RatMatrix::from_i64(&[[2, 0], [1, 1]]).unwrap();
        assert_eq!(
            solve_linear(&a, &[ratio(4, 1), ratio(3, 1)]).unwrap(),
            Some(vec![ratio(2, 1), ratio(1, 1)])
        );
        assert!(matches!(solve_linear(&a, &[ratio(1, 1)]), Err(Error::Dimension(_))));
    }

    #[test]
    fn frac_is_in_unit_interval() {
        assert_eq!(frac(&ratio(-1, 3)), ratio(2, 3));
        assert_eq!(frac(&ratio(7, 2)), ratio(1, 2));
        assert_eq!(frac(&ratio(3, 1)), ratio(0, 1));
    }

    #[test]
    fn primes() {
        let ps: Vec<i64> = (0..30).filter(|&n| is_prime(&BigInt::from(n))).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
