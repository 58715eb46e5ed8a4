//! Dense integer and rational matrix routines used by the lattice layer.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Everything here is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn to_i64(m: &[Vec<BigInt>]) -> Result<Vec<Vec<i64>>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::EntryTooLarge(x.to_string())))
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<BigInt>]) -> IntMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// `bᵀ · m · b` where the columns of `b` are given as a list of vectors.
pub fn congruence(m: &[Vec<BigInt>], cols: &[Vec<BigInt>]) -> IntMatrix {
    let images: Vec<Vec<BigInt>> = cols.iter().map(|c| mat_vec(m, c)).collect();
    cols.iter()
        .map(|ci| images.iter().map(|mj| dot(ci, mj)).collect())
        .collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

pub fn inverse_rational(m: &[Vec<BigInt>]) -> Result<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut inv: RatMatrix = identity(n)
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero()).ok_or(Error::Degenerate)?;
        a.swap(piv, col);
        inv.swap(piv, col);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[i][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[i][j] -= t;
                }
            }
        }
    }
    Ok(inv)
}

/// Smith normal form `left · A · right = diag`, with `left_inv = left⁻¹`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
}

struct SmithCalc {
    a: IntMatrix,
    left: IntMatrix,
    left_inv: IntMatrix,
    right: IntMatrix,
}

impl SmithCalc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.left.swap(i, j);
        for row in self.left_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    // row_i += c * row_t
    fn add_row(&mut self, i: usize, t: usize, c: &BigInt) {
        for j in 0..self.a[0].len() {
            let v = &self.a[t][j] * c;
            self.a[i][j] += v;
        }
        for j in 0..self.left[0].len() {
            let v = &self.left[t][j] * c;
            self.left[i][j] += v;
        }
        for row in self.left_inv.iter_mut() {
            let v = &row[i] * c;
            row[t] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        for x in self.left[i].iter_mut() {
            *x = -&*x;
        }
        for row in self.left_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.right.iter_mut()) {
            row.swap(i, j);
        }
    }

    // col_j += c * col_t
    fn add_col(&mut self, j: usize, t: usize, c: &BigInt) {
        for row in self.a.iter_mut().chain(self.right.iter_mut()) {
            let v = &row[t] * c;
            row[j] += v;
        }
    }

    fn run(mut self) -> Smith {
        let m = self.a.len();
        let n = if m == 0 { 0 } else { self.a[0].len() };
        let mut diag = Vec::new();
        for t in 0..m.min(n) {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..m {
                    for j in t..n {
                        if !self.a[i][j].is_zero()
                            && best.is_none_or(|(bi, bj)| self.a[i][j].abs() < self.a[bi][bj].abs())
                        {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    return self.finish(diag);
                };
                if pi != t {
                    self.swap_rows(pi, t);
                }
                if pj != t {
                    self.swap_cols(pj, t);
                }
                let mut clean = true;
                for i in t + 1..m {
                    if !self.a[i][t].is_zero() {
                        let q = -(&self.a[i][t] / &self.a[t][t]);
                        self.add_row(i, t, &q);
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..n {
                    if !self.a[t][j].is_zero() {
                        let q = -(&self.a[t][j] / &self.a[t][t]);
                        self.add_col(j, t, &q);
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            diag.push(self.a[t][t].clone());
        }
        self.finish(diag)
    }

    fn finish(self, diag: Vec<BigInt>) -> Smith {
        Smith {
            diag,
            left: self.left,
            left_inv: self.left_inv,
            right: self.right,
        }
    }
}

pub fn smith(a: &[Vec<BigInt>]) -> Smith {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    SmithCalc {
        a: a.to_vec(),
        left: identity(m),
        left_inv: identity(m),
        right: identity(n),
    }
    .run()
}

/// Column echelon form `A · V = H` by unimodular column operations.
///
/// Row `i` of `H` has its pivot in column `pivots[k]` for the k-th pivot row, all
/// entries right of the pivot vanish, and pivots are positive. The columns of `V`
/// past the last pivot span the integer kernel of `A`.
#[derive(Debug, Clone)]
pub struct ColumnEchelon {
    pub h: IntMatrix,
    pub v: IntMatrix,
    pub pivot_rows: Vec<usize>,
}

pub fn column_echelon(a: &[Vec<BigInt>], cols: usize) -> ColumnEchelon {
    let mut h: IntMatrix = a.to_vec();
    let mut v = identity(cols);
    let mut c = 0;
    let mut pivot_rows = Vec::new();
    let add_col = |m: &mut IntMatrix, j: usize, t: usize, f: &BigInt| {
        for row in m.iter_mut() {
            let x = &row[t] * f;
            row[j] += x;
        }
    };
    let swap_col = |m: &mut IntMatrix, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };
    for i in 0..h.len() {
        if c == cols {
            break;
        }
        loop {
            let best = (c..cols)
                .filter(|&j| !h[i][j].is_zero())
                .min_by(|&x, &y| h[i][x].abs().cmp(&h[i][y].abs()));
            let Some(p) = best else { break };
            if p != c {
                swap_col(&mut h, p, c);
                swap_col(&mut v, p, c);
            }
            let mut done = true;
            for j in c + 1..cols {
                if !h[i][j].is_zero() {
                    let q = -(&h[i][j] / &h[i][c]);
                    add_col(&mut h, j, c, &q);
                    add_col(&mut v, j, c, &q);
                    done &= h[i][j].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if !h[i][c].is_zero() {
            if h[i][c].is_negative() {
                for row in h.iter_mut().chain(v.iter_mut()) {
                    row[c] = -&row[c];
                }
            }
            pivot_rows.push(i);
            c += 1;
        }
    }
    ColumnEchelon { h, v, pivot_rows }
}

/// Basis (as column vectors) of `{x ∈ Zⁿ : A x = 0}`.
pub fn integer_kernel(a: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let ech = column_echelon(a, cols);
    let rank = ech.pivot_rows.len();
    (rank..cols)
        .map(|j| ech.v.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |l, x| l.lcm(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn bareiss_matches_small_cases() {
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&m(&[&[2, -1], &[-1, 2]])), BigInt::from(3));
        assert_eq!(determinant(&m(&[&[0, 0], &[0, 1]])), BigInt::zero());
        assert_eq!(determinant(&m(&[&[0, 2, 1], &[2, 0, 0], &[1, 0, 3]])), BigInt::from(-12));
    }

    #[test]
    fn smith_transforms_are_consistent() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = mul(&mul(&s.left, &a), &s.right);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(*x, want);
            }
        }
        assert_eq!(mul(&s.left, &s.left_inv), identity(3));
    }

    #[test]
    fn kernel_of_row() {
        let w = m(&[&[3, 5, -1]]);
        let k = integer_kernel(&w, 3);
        assert_eq!(k.len(), 2);
        for col in &k {
            assert!(dot(&w[0], col).is_zero());
        }
        let minor = vec![k[0].clone(), k[1].clone()];
        // kernel of a primitive row is saturated: 2x2 minors have gcd 1
        let minors: Vec<BigInt> = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .map(|(i, j)| &minor[0][i] * &minor[1][j] - &minor[0][j] * &minor[1][i])
            .collect();
        assert_eq!(gcd_all(&minors), BigInt::one());
    }
}
