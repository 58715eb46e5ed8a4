//! Integral lattices given by a Gram matrix on a fixed basis.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Numbers of positive and negative squares of a real diagonalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
}

impl Signature {
    pub fn new(pos: usize, neg: usize) -> Self {
        Signature { pos, neg }
    }

    pub fn rank(&self) -> usize {
        self.pos + self.neg
    }

    /// τ = b⁺ − b⁻.
    pub fn index(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }

    pub fn is_definite(&self) -> bool {
        self.pos == 0 || self.neg == 0
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;
    fn add(self, o: Signature) -> Signature {
        Signature::new(self.pos + o.pos, self.neg + o.neg)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pos, self.neg)
    }
}

/// Coordinates of a lattice element in the lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector(pub Vec<BigInt>);

impl LatticeVector {
    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn content(&self) -> BigInt {
        intmat::gcd_all(&self.0)
    }

    pub fn to_i64(&self) -> Result<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0
            .iter()
            .map(|x| x.to_i64().ok_or_else(|| Error::EntryTooLarge(x.to_string())))
            .collect()
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v.into_iter().map(BigInt::from).collect())
    }
}

impl From<&[i64]> for LatticeVector {
    fn from(v: &[i64]) -> Self {
        LatticeVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// A free Z-module with a non-degenerate symmetric integral bilinear form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    gram: IntMatrix,
}

/// Result of [`Lattice::orthogonal_complement`]: the complement with its induced
/// Gram matrix, and the embedding of its basis into the ambient lattice.
#[derive(Debug, Clone)]
pub struct Complement {
    pub lattice: Lattice,
    pub basis: Vec<LatticeVector>,
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NonSymmetric(i, j));
                }
            }
        }
        if intmat::determinant(&gram).is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Lattice { gram })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(intmat::from_i64(rows))
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let n = entries.len();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// The rank-0 lattice.
    pub fn zero() -> Self {
        Lattice { gram: Vec::new() }
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn gram_i64(&self) -> Result<Vec<Vec<i64>>> {
        intmat::to_i64(&self.gram)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> BigInt {
        intmat::determinant(&self.gram)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Symmetric rational elimination with diagonal pivots. When every remaining
    /// diagonal entry vanishes, a hyperbolic pair `{e_i, e_j}` with `a_ij ≠ 0` is
    /// rotated to `{e_i + e_j, e_j}`, which has a nonzero diagonal pivot; the pair
    /// then contributes (1, 1).
    pub fn signature(&self) -> Signature {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        let mut alive: Vec<bool> = vec![true; n];
        let mut sig = Signature::default();
        let mut remaining = n;
        while remaining > 0 {
            if let Some(p) = (0..n).find(|&i| alive[i] && !a[i][i].is_zero()) {
                if a[p][p].is_positive() {
                    sig.pos += 1;
                } else {
                    sig.neg += 1;
                }
                alive[p] = false;
                remaining -= 1;
                let piv = a[p][p].clone();
                let prow = a[p].clone();
                for i in (0..n).filter(|&i| alive[i]) {
                    if prow[i].is_zero() {
                        continue;
                    }
                    let f = &prow[i] / &piv;
                    for j in (0..n).filter(|&j| alive[j]) {
                        let t = &f * &prow[j];
                        a[i][j] -= t;
                    }
                }
                continue;
            }
            // every live diagonal entry vanishes; take a hyperbolic pair
            let pair = (0..n)
                .filter(|&i| alive[i])
                .find_map(|i| ((i + 1)..n).find(|&j| alive[j] && !a[i][j].is_zero()).map(|j| (i, j)));
            let Some((i, j)) = pair else {
                // only reachable for degenerate input, excluded at construction
                break;
            };
            // replace e_i by e_i + e_j; its square is 2 a_ij ≠ 0
            for k in 0..n {
                let t = a[j][k].clone();
                a[i][k] += t;
            }
            for k in 0..n {
                let t = a[k][j].clone();
                a[k][i] += t;
            }
        }
        sig
    }

    pub fn index(&self) -> i64 {
        self.signature().index()
    }

    pub fn is_definite(&self) -> bool {
        self.signature().is_definite()
    }

    pub fn parity(&self) -> Parity {
        if self.gram.iter().enumerate().all(|(i, r)| r[i].is_even()) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn scale(&self, m: i64) -> Result<Lattice> {
        if m == 0 {
            return Err(Error::ZeroScale);
        }
        let m = BigInt::from(m);
        Ok(Lattice {
            gram: self.gram.iter().map(|r| r.iter().map(|x| x * &m).collect()).collect(),
        })
    }

    pub fn orthogonal_sum(&self, other: &Lattice) -> Lattice {
        let (a, b) = (self.rank(), other.rank());
        let mut gram = vec![vec![BigInt::zero(); a + b]; a + b];
        for i in 0..a {
            gram[i][..a].clone_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            gram[a + i][a..].clone_from_slice(&other.gram[i]);
        }
        Lattice { gram }
    }

    pub fn sum_all<'a>(parts: impl IntoIterator<Item = &'a Lattice>) -> Lattice {
        parts.into_iter().fold(Lattice::zero(), |acc, l| acc.orthogonal_sum(l))
    }

    fn check_dim(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn pair(&self, x: &LatticeVector, y: &LatticeVector) -> Result<BigInt> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(intmat::dot(&x.0, &intmat::mat_vec(&self.gram, &y.0)))
    }

    pub fn norm(&self, x: &LatticeVector) -> Result<BigInt> {
        self.pair(x, x)
    }

    /// `c` is characteristic iff `c·bᵢ ≡ bᵢ·bᵢ (mod 2)` on every basis vector.
    pub fn is_characteristic(&self, c: &LatticeVector) -> Result<bool> {
        self.check_dim(c)?;
        let gc = intmat::mat_vec(&self.gram, &c.0);
        Ok(gc.iter().enumerate().all(|(i, x)| (x - &self.gram[i][i]).is_even()))
    }

    /// Solves `G c ≡ diag(G)` over F₂; free variables are set to 0.
    pub fn find_characteristic(&self) -> Result<LatticeVector> {
        let n = self.rank();
        let mut rows: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                let mut r: Vec<bool> = self.gram[i].iter().map(|x| x.is_odd()).collect();
                r.push(self.gram[i][i].is_odd());
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&i| rows[i][col]) else {
                continue;
            };
            rows.swap(p, row);
            for i in 0..n {
                if i != row && rows[i][col] {
                    let src = rows[row].clone();
                    for (x, s) in rows[i].iter_mut().zip(src) {
                        *x ^= s;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if rows[row..].iter().any(|r| r[n]) {
            return Err(Error::NoCharacteristicElement);
        }
        let mut c = vec![0i64; n];
        for (r, &col) in pivots.iter().enumerate() {
            c[col] = rows[r][n] as i64;
        }
        Ok(LatticeVector::from(c))
    }

    /// Orthogonal complement of a primitive, non-isotropic vector.
    pub fn orthogonal_complement(&self, v: &LatticeVector) -> Result<Complement> {
        self.check_dim(v)?;
        if !is_primitive(v)? {
            return Err(Error::NotPrimitive(v.content().to_string()));
        }
        if self.norm(v)?.is_zero() {
            return Err(Error::IsotropicVector);
        }
        self.orthogonal_complement_of(std::slice::from_ref(v))
    }

    /// Orthogonal complement of the span of `vectors`.
    ///
    /// The kernel of `x ↦ (x·vᵢ)ᵢ` is computed by column echelon reduction; the
    /// result is saturated, so its basis is primitive in the ambient lattice.
    pub fn orthogonal_complement_of(&self, vectors: &[LatticeVector]) -> Result<Complement> {
        for v in vectors {
            self.check_dim(v)?;
        }
        let rows: IntMatrix = vectors.iter().map(|v| intmat::mat_vec(&self.gram, &v.0)).collect();
        let kernel = intmat::integer_kernel(&rows, self.rank());
        let gram = intmat::congruence(&self.gram, &kernel);
        let lattice = Lattice::new(gram)?;
        Ok(Complement {
            lattice,
            basis: kernel.into_iter().map(LatticeVector).collect(),
        })
    }

    /// Gram matrix of the sublattice spanned by `vectors`.
    pub fn sublattice(&self, vectors: &[LatticeVector]) -> Result<Lattice> {
        for v in vectors {
            self.check_dim(v)?;
        }
        let cols: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.0.clone()).collect();
        Lattice::new(intmat::congruence(&self.gram, &cols))
    }

    /// Same lattice in the basis given by the columns of `m` (must be unimodular).
    pub fn change_basis(&self, m: &IntMatrix) -> Result<Lattice> {
        let cols = intmat::transpose(m);
        if !intmat::determinant(m).abs().is_one() {
            return Err(Error::InvalidForm("basis change is not unimodular".into()));
        }
        Lattice::new(intmat::congruence(&self.gram, &cols))
    }
}

pub fn is_primitive(v: &LatticeVector) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.content().is_one())
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.gram.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// JSON form `{"gram": [[int, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramFile {
    pub gram: Vec<Vec<i64>>,
}

impl GramFile {
    pub fn from_lattice(l: &Lattice) -> Result<Self> {
        Ok(GramFile { gram: l.gram_i64()? })
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        Lattice::from_rows(&self.gram)
    }
}
