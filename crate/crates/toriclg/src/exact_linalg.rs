//! Arbitrary-precision integer and rational linear algebra.
//!
//! Everything downstream (cones, character lattices, chambers) reduces to
//! normal forms, kernels, cokernels, and exact solving over the integers and
//! rationals. No floating point anywhere.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("inconsistent system")]
    Inconsistent,
    #[error("underdetermined system")]
    Underdetermined,
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry length must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![Int::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Int>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        IntMatrix::new(r, c, rows.iter().flat_map(|r| r.iter().cloned()).collect())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Int {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> Vec<Int> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k).clone();
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = &a * other.at(k, c);
                    *out.at_mut(r, c) += add;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination; square only.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m: Vec<Vec<Int>> = (0..n).map(|r| self.row(r)).collect();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &num / &prev;
                }
                m[i][k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    pub fn rank(&self) -> usize {
        rational_rank(self)
    }
}

/// Exact rational vector; kept in lowest terms by `BigRational` itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatVector(pub Vec<Rat>);

impl RatVector {
    pub fn from_i64(v: &[i64]) -> Self {
        RatVector(v.iter().map(|&x| rat_int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dot_int(&self, v: &[Int]) -> Rat {
        assert_eq!(self.0.len(), v.len(), "pairing shape");
        self.0
            .iter()
            .zip(v)
            .map(|(a, b)| a * Rat::from_integer(b.clone()))
            .sum()
    }
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    assert_eq!(a.len(), b.len(), "pairing shape");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "pairing shape");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// gcd of a slice, nonnegative.
pub fn vec_gcd(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |acc, x| num::integer::gcd(acc, x.abs()))
}

/// Divide a nonzero integer vector by the gcd of its entries.
pub fn primitivize(v: &[Int]) -> Vec<Int> {
    let g = vec_gcd(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Scale a rational vector to a primitive integer vector along the same ray.
pub fn rat_to_primitive_int(v: &[Rat]) -> Vec<Int> {
    let mut denom = Int::one();
    for x in v {
        denom = num::integer::lcm(denom, x.denom().clone());
    }
    let ints: Vec<Int> = v
        .iter()
        .map(|x| x.numer() * (&denom / x.denom()))
        .collect();
    primitivize(&ints)
}

pub fn int_to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Smith decomposition U*A*V = S with unimodular U, V and a divisibility
/// chain on the nonnegative diagonal of S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<Int> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s.at(i, i).clone()).collect()
    }
}

/// Smith normal form with deterministic pivoting: the pivot is the smallest
/// absolute nonzero entry of the working block, ties broken by lowest row
/// then column index.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let n = a.rows();
    let m = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(m);

    let k = n.min(m);
    let mut t = 0;
    while t < k {
        // Find pivot in block [t.., t..].
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..n {
            for c in t..m {
                if s.at(r, c).is_zero() {
                    continue;
                }
                match &pivot {
                    None => pivot = Some((r, c)),
                    Some((pr, pc)) => {
                        let cur = s.at(*pr, *pc).abs();
                        let cand = s.at(r, c).abs();
                        if cand < cur {
                            pivot = Some((r, c));
                        }
                    }
                }
            }
        }
        let (pr, pc) = match pivot {
            None => break, // block is zero
            Some(p) => p,
        };
        swap_rows(&mut s, &mut u, t, pr);
        swap_cols(&mut s, &mut v, t, pc);
        if s.at(t, t).is_negative() {
            negate_row(&mut s, &mut u, t);
        }

        // Clear row and column t; restart the sweep whenever a remainder
        // appears, so the pivot shrinks monotonically.
        let mut clean = true;
        for r in t + 1..n {
            if s.at(r, t).is_zero() {
                continue;
            }
            let q = div_floor_q(s.at(r, t), s.at(t, t));
            row_axpy(&mut s, &mut u, r, t, &q);
            if !s.at(r, t).is_zero() {
                clean = false;
            }
        }
        for c in t + 1..m {
            if s.at(t, c).is_zero() {
                continue;
            }
            let q = div_floor_q(s.at(t, c), s.at(t, t));
            col_axpy(&mut s, &mut v, c, t, &q);
            if !s.at(t, c).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue; // pick a new (smaller) pivot for this t
        }

        // Enforce divisibility: pivot must divide the rest of the block.
        let mut disturbed = false;
        'outer: for r in t + 1..n {
            for c in t + 1..m {
                if (s.at(r, c) % s.at(t, t)).is_zero() {
                    continue;
                }
                // Add row r to row t, creating an entry not divisible by the
                // pivot; the next sweep will find a smaller pivot.
                add_row(&mut s, &mut u, t, r);
                disturbed = true;
                break 'outer;
            }
        }
        if disturbed {
            continue;
        }
        t += 1;
    }
    SmithDecomposition { u, s, v }
}

fn swap_rows(s: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..s.cols() {
        let tmp = s.at(a, c).clone();
        *s.at_mut(a, c) = s.at(b, c).clone();
        *s.at_mut(b, c) = tmp;
    }
    for c in 0..u.cols() {
        let tmp = u.at(a, c).clone();
        *u.at_mut(a, c) = u.at(b, c).clone();
        *u.at_mut(b, c) = tmp;
    }
}

fn swap_cols(s: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in 0..s.rows() {
        let tmp = s.at(r, a).clone();
        *s.at_mut(r, a) = s.at(r, b).clone();
        *s.at_mut(r, b) = tmp;
    }
    for r in 0..v.rows() {
        let tmp = v.at(r, a).clone();
        *v.at_mut(r, a) = v.at(r, b).clone();
        *v.at_mut(r, b) = tmp;
    }
}

fn negate_row(s: &mut IntMatrix, u: &mut IntMatrix, r: usize) {
    for c in 0..s.cols() {
        let x = -s.at(r, c).clone();
        *s.at_mut(r, c) = x;
    }
    for c in 0..u.cols() {
        let x = -u.at(r, c).clone();
        *u.at_mut(r, c) = x;
    }
}

/// row r -= q * row t (also applied to U).
fn row_axpy(s: &mut IntMatrix, u: &mut IntMatrix, r: usize, t: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for c in 0..s.cols() {
        let sub = q * s.at(t, c);
        *s.at_mut(r, c) -= sub;
    }
    for c in 0..u.cols() {
        let sub = q * u.at(t, c);
        *u.at_mut(r, c) -= sub;
    }
}

/// col c -= q * col t (also applied to V).
fn col_axpy(s: &mut IntMatrix, v: &mut IntMatrix, c: usize, t: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for r in 0..s.rows() {
        let sub = q * s.at(r, t);
        *s.at_mut(r, c) -= sub;
    }
    for r in 0..v.rows() {
        let sub = q * v.at(r, t);
        *v.at_mut(r, c) -= sub;
    }
}

fn add_row(s: &mut IntMatrix, u: &mut IntMatrix, t: usize, r: usize) {
    for c in 0..s.cols() {
        let add = s.at(r, c).clone();
        *s.at_mut(t, c) += add;
    }
    for c in 0..u.cols() {
        let add = u.at(r, c).clone();
        *u.at_mut(t, c) += add;
    }
}

/// Euclidean-style quotient used during elimination; any quotient works for
/// termination as long as remainders shrink in absolute value.
fn div_floor_q(a: &Int, b: &Int) -> Int {
    // round-to-nearest quotient keeps remainders at most |b|/2
    let (q, r) = (a / b, a % b);
    let two_r = r.abs() * int(2);
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + Int::one()
        } else {
            q - Int::one()
        }
    } else {
        q
    }
}

/// Presentation of a finitely generated abelian group Z^free_rank + sum Z/d_j,
/// realized as the cokernel of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianPresentation {
    pub free_rank: usize,
    /// invariant factors >= 2, each dividing the next
    pub invariant_factors: Vec<Int>,
    /// maps Z^n (n = rows of the presented matrix) onto the free coordinates
    /// followed by the torsion coordinates (to be reduced mod the factors)
    pub projection: IntMatrix,
}

impl AbelianPresentation {
    /// Image of the r-th standard basis vector, split into free part and
    /// torsion residues.
    pub fn weight_of(&self, index: usize) -> (Vec<Int>, Vec<Int>) {
        let col = self.projection.col(index);
        self.split(&col)
    }

    /// Split a raw projection-coordinate vector into (free, torsion residues).
    pub fn split(&self, coords: &[Int]) -> (Vec<Int>, Vec<Int>) {
        let free = coords[..self.free_rank].to_vec();
        let tors = coords[self.free_rank..]
            .iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| num::integer::mod_floor(x.clone(), d.clone()))
            .collect();
        (free, tors)
    }

    pub fn apply(&self, v: &[Int]) -> (Vec<Int>, Vec<Int>) {
        let coords = self.projection.mul_vec(v);
        self.split(&coords)
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> Int {
        self.invariant_factors.iter().product()
    }
}

/// Cokernel Z^rows(A) / im(A), where A acts on column vectors.
pub fn cokernel(a: &IntMatrix) -> AbelianPresentation {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let free_rank = a.rows() - rank;
    let invariant_factors: Vec<Int> = diag
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .cloned()
        .collect();
    // Rows of U: coordinates of Z^rows in which im(A) is diagonal. Free
    // coordinates are the rows past the rank; torsion coordinates are the
    // rows whose diagonal entry is >= 2.
    let mut proj_rows: Vec<Vec<Int>> = Vec::new();
    for r in rank..a.rows() {
        proj_rows.push(snf.u.row(r));
    }
    for (r, d) in diag.iter().enumerate() {
        if !d.is_zero() && !d.is_one() {
            proj_rows.push(snf.u.row(r));
        }
    }
    let projection = if proj_rows.is_empty() {
        IntMatrix::zero(0, a.rows())
    } else {
        IntMatrix::from_rows(&proj_rows)
    };
    AbelianPresentation {
        free_rank,
        invariant_factors,
        projection,
    }
}

/// Z-basis of the saturated kernel lattice {x : A x = 0}.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<Int>> {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let mut basis = Vec::new();
    for c in rank..a.cols() {
        basis.push(snf.v.col(c));
    }
    basis
}

fn rational_rank(a: &IntMatrix) -> usize {
    let mut m: Vec<Vec<Rat>> = (0..a.rows())
        .map(|r| a.row(r).iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let rows = a.rows();
    let cols = a.cols();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let piv = (row..rows).find(|&r| !m[r][col].is_zero());
        let piv = match piv {
            None => continue,
            Some(p) => p,
        };
        m.swap(row, piv);
        let inv = m[row][col].clone();
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = &m[r][col] / &inv;
                for c in col..cols {
                    let sub = &factor * &m[row][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}

/// Solve A x = b exactly over the rationals.
///
/// Returns the unique solution when the system is consistent and has full
/// column rank; `Inconsistent` when no solution exists; `Underdetermined`
/// when solutions exist but are not unique.
pub fn solve_rational(a: &IntMatrix, b: &RatVector) -> Result<RatVector, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimMismatch(format!(
            "rhs length {} vs {} rows",
            b.len(),
            a.rows()
        )));
    }
    let rows = a.rows();
    let cols = a.cols();
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = a.row(r).iter().map(|x| Rat::from_integer(x.clone())).collect();
            row.push(b.0[r].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let piv = (row..rows).find(|&r| !m[r][col].is_zero());
        let piv = match piv {
            None => continue,
            Some(p) => p,
        };
        m.swap(row, piv);
        let inv = m[row][col].clone();
        for c in col..=cols {
            let val = &m[row][c] / &inv;
            m[row][c] = val;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let sub = &factor * &m[row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    // Inconsistent when a zero row has nonzero rhs.
    for r in row..rows {
        if !m[r][cols].is_zero() {
            return Err(LinalgError::Inconsistent);
        }
    }
    if pivot_cols.len() < cols {
        return Err(LinalgError::Underdetermined);
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Ok(RatVector(x))
}

/// Solve A x = b over the integers (may be underdetermined; returns one
/// solution if any integral solution exists).
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(b.len(), a.rows(), "rhs length");
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![Int::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        let d = if i < diag.len() { diag[i].clone() } else { Int::zero() };
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            if !(ci % &d).is_zero() {
                return None;
            }
            if i < a.cols() {
                y[i] = ci / &d;
            }
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Does the set of columns of `a` span `target` rationally? Returns the
/// coefficients if a solve succeeds (least structured route: gaussian).
pub fn in_rational_span(generators: &[Vec<Int>], target: &[Rat]) -> Option<Vec<Rat>> {
    if generators.is_empty() {
        return if target.iter().all(|x| x.is_zero()) {
            Some(vec![])
        } else {
            None
        };
    }
    let dim = generators[0].len();
    assert_eq!(target.len(), dim, "span target shape");
    // Build matrix with generators as columns and do row reduction on [A|b].
    let rows = dim;
    let cols = generators.len();
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = (0..cols)
                .map(|c| Rat::from_integer(generators[c][r].clone()))
                .collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_cols: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let piv = (row..rows).find(|&r| !m[r][col].is_zero());
        let piv = match piv {
            None => continue,
            Some(p) => p,
        };
        m.swap(row, piv);
        let inv = m[row][col].clone();
        for c in col..=cols {
            let val = &m[row][c] / &inv;
            m[row][c] = val;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let sub = &factor * &m[row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivot_cols.push((row, col));
        row += 1;
    }
    for r in row..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, c) in pivot_cols {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &IntMatrix) {
        let d = smith_normal_form(a);
        assert_eq!(d.u.det().abs(), Int::one(), "U unimodular");
        assert_eq!(d.v.det().abs(), Int::one(), "V unimodular");
        assert_eq!(d.u.mul(a).mul(&d.v), d.s, "U*A*V = S");
        let diag = d.diagonal();
        for i in 0..diag.len() {
            assert!(!diag[i].is_negative(), "diagonal nonnegative");
            if i + 1 < diag.len() && !diag[i].is_zero() {
                assert!(
                    (&diag[i + 1] % &diag[i]).is_zero(),
                    "divisibility chain {diag:?}"
                );
            }
            if diag[i].is_zero() && i + 1 < diag.len() {
                assert!(diag[i + 1].is_zero(), "zeros trail the chain");
            }
        }
        // off-diagonal zero
        for r in 0..d.s.rows() {
            for c in 0..d.s.cols() {
                if r != c {
                    assert!(d.s.at(r, c).is_zero());
                }
            }
        }
    }

    /// Independent oracle: the k-th determinantal divisor quotient gives the
    /// invariant factors (gcd of all k x k minors).
    fn invariant_factors_via_minors(a: &IntMatrix) -> Vec<Int> {
        let n = a.rows();
        let m = a.cols();
        let kmax = n.min(m);
        let mut gcds = vec![Int::zero(); kmax + 1];
        gcds[0] = Int::one();
        for k in 1..=kmax {
            let mut g = Int::zero();
            for rows in combos(n, k) {
                for cols in combos(m, k) {
                    let mut sub = IntMatrix::zero(k, k);
                    for (i, &r) in rows.iter().enumerate() {
                        for (j, &c) in cols.iter().enumerate() {
                            *sub.at_mut(i, j) = a.at(r, c).clone();
                        }
                    }
                    g = num::integer::gcd(g, sub.det().abs());
                }
            }
            gcds[k] = g;
        }
        let mut out = Vec::new();
        for k in 1..=kmax {
            if gcds[k].is_zero() {
                out.push(Int::zero());
            } else {
                out.push(&gcds[k] / &gcds[k - 1]);
            }
        }
        out
    }

    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(3);
        let d = smith_normal_form(&a);
        assert_eq!(d.s, IntMatrix::identity(3));
        check_snf(&a);
    }

    #[test]
    fn snf_2x2_examples() {
        // gcd of entries is 2 and d1*d2 = |det| = 8, so S = diag(2, 4)
        let a = IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        check_snf(&a);
        let d = smith_normal_form(&a);
        assert_eq!(d.diagonal(), vec![int(2), int(4)]);
        assert_eq!(invariant_factors_via_minors(&a), vec![int(2), int(4)]);

        // gcd 1, product 6: diag(2,3) -> diag(1,6)
        let b = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        check_snf(&b);
        let d = smith_normal_form(&b);
        assert_eq!(d.diagonal(), vec![int(1), int(6)]);
        assert_eq!(invariant_factors_via_minors(&b), vec![int(1), int(6)]);
    }

    #[test]
    fn snf_matches_minor_oracle_small() {
        let cases = vec![
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![4, 6], vec![10, 14]],
            vec![vec![1, 2, 3], vec![4, 5, 6]],
            vec![vec![2, -2], vec![2, 2], vec![0, 4]],
            vec![vec![6, 10, 15]],
        ];
        for rows in cases {
            let a = IntMatrix::from_i64_rows(&rows);
            check_snf(&a);
            let d = smith_normal_form(&a);
            assert_eq!(d.diagonal(), invariant_factors_via_minors(&a), "{rows:?}");
        }
    }

    #[test]
    fn cokernel_orlov_points() {
        // points e1, e2, (-1,-1,3), e3 as rows (n=2, d=3 instance)
        let a = IntMatrix::from_i64_rows(&[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![-1, -1, 3],
            vec![0, 0, 1],
        ]);
        let p = cokernel(&a);
        assert_eq!(p.free_rank, 1);
        assert!(p.invariant_factors.is_empty());
        // weights must be +-(1,1,1,-3) in the chosen coordinate
        let w: Vec<Int> = (0..4).map(|i| p.weight_of(i).0[0].clone()).collect();
        let expect: Vec<Int> = vec![int(1), int(1), int(1), int(-3)];
        let neg: Vec<Int> = expect.iter().map(|x| -x.clone()).collect();
        assert!(w == expect || w == neg, "weights {w:?}");
    }

    #[test]
    fn cokernel_zero_matrix() {
        let a = IntMatrix::zero(2, 2);
        let p = cokernel(&a);
        assert_eq!(p.free_rank, 2);
        assert!(p.invariant_factors.is_empty());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&IntMatrix::identity(3)).is_empty());

        // transpose pairing of the Orlov points: kernel spanned by (1,1,1,-3)
        let a = IntMatrix::from_i64_rows(&[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![-1, -1, 3],
            vec![0, 0, 1],
        ]);
        let k = kernel_basis(&a.transpose());
        assert_eq!(k.len(), 1);
        let v = primitivize(&k[0]);
        let expect = vec![int(1), int(1), int(1), int(-3)];
        let neg: Vec<Int> = expect.iter().map(|x| -x.clone()).collect();
        assert!(v == expect || v == neg, "kernel {v:?}");

        let b = IntMatrix::from_i64_rows(&[vec![2, -2]]);
        let k = kernel_basis(&b);
        assert_eq!(k.len(), 1);
        let v = primitivize(&k[0]);
        assert!(v == vec![int(1), int(1)] || v == vec![int(-1), int(-1)]);
    }

    #[test]
    fn solve_examples() {
        let id = IntMatrix::identity(2);
        let x = solve_rational(&id, &RatVector::from_i64(&[1, 1])).unwrap();
        assert_eq!(x, RatVector::from_i64(&[1, 1]));

        // almost Gorenstein witness of the bestiary cone (ii.)
        let a = IntMatrix::from_i64_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![-1, -1, -1, 2],
        ]);
        let x = solve_rational(&a, &RatVector::from_i64(&[1, 1, 1, 1])).unwrap();
        assert_eq!(x, RatVector::from_i64(&[1, 1, 1, 2]));

        // Q-Gorenstein witness (0, 1/2)
        let a = IntMatrix::from_i64_rows(&[vec![1, 2], vec![-1, 2]]);
        let x = solve_rational(&a, &RatVector::from_i64(&[1, 1])).unwrap();
        assert_eq!(x.0, vec![rat_int(0), rat(1, 2)]);

        let sing = IntMatrix::from_i64_rows(&[vec![1, 1], vec![2, 2]]);
        assert_eq!(
            solve_rational(&sing, &RatVector::from_i64(&[1, 3])),
            Err(LinalgError::Inconsistent)
        );
        assert_eq!(
            solve_rational(&sing, &RatVector::from_i64(&[1, 2])),
            Err(LinalgError::Underdetermined)
        );
    }

    #[test]
    fn solve_integer_examples() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let x = solve_integer(&a, &[int(4), int(9)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![int(4), int(9)]);
        assert!(solve_integer(&a, &[int(1), int(0)]).is_none());
    }
}
