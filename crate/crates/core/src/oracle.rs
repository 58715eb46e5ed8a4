//! Brute-force checks that do not go through the normal-form machinery: short
//! vectors, isometry search for small lattices, primitive vectors of a given norm
//! and full discriminant-form tables.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::discforms::{self, reduce_mod};
use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};
use crate::lattice::{Lattice, LatticeVector, Parity};

pub const SHORT_VECTOR_MAX_RANK: usize = 10;
pub const DEFINITE_ISOMETRY_MAX_RANK: usize = 9;
pub const INDEFINITE_ISOMETRY_MAX_RANK: usize = 4;
pub const INDEFINITE_MAX_ENTRY: i64 = 10;
/// Coordinate box for indefinite isometry search.
pub const INDEFINITE_BOX: i64 = 6;
pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const TABLE_LIMIT: u64 = 10_000;

/// First and last coordinate bound tried by [`find_primitive_vector`].
pub const SEARCH_BOUND_START: i64 = 3;
pub const SEARCH_BOUND_MAX: i64 = 15;

fn gram_i64(l: &Lattice) -> Result<Vec<Vec<i64>>> {
    l.gram_i64()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mat_vec(g: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    g.iter().map(|r| dot(r, v)).collect()
}

fn to_lattice_vector(v: &[i64]) -> LatticeVector {
    LatticeVector(v.iter().map(|&x| BigInt::from(x)).collect())
}

/// Representative of `±v` whose first nonzero coordinate is positive.
fn canonical_sign(v: &mut [i64]) {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// All vectors with `|x·x| ≤ bound`, one of each pair `±x`, sorted by `|x·x|` and
/// then lexicographically. Exact Fincke–Pohst enumeration over the rationals.
pub fn short_vectors(l: &Lattice, bound: i64) -> Result<Vec<(LatticeVector, BigInt)>> {
    if !l.is_definite() {
        return Err(Error::IndefiniteInput);
    }
    if l.rank() > SHORT_VECTOR_MAX_RANK {
        return Err(Error::RankTooLarge {
            rank: l.rank(),
            max: SHORT_VECTOR_MAX_RANK,
        });
    }
    Ok(short_vectors_i64(l, bound)?
        .into_iter()
        .map(|(v, n)| (to_lattice_vector(&v), BigInt::from(n)))
        .collect())
}

fn short_vectors_i64(l: &Lattice, bound: i64) -> Result<Vec<(Vec<i64>, i64)>> {
    let n = l.rank();
    let g = gram_i64(l)?;
    let sign = if l.signature().neg > 0 { -1 } else { 1 };
    if n == 0 || bound <= 0 {
        return Ok(Vec::new());
    }
    // Q(x) = Σ_i d_i (x_i + Σ_{j>i} m_ij x_j)² for the positive form sign·G
    let mut a: Vec<Vec<BigRational>> = g
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(sign * x))).collect())
        .collect();
    let mut d = vec![BigRational::zero(); n];
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        d[i] = a[i][i].clone();
        for j in i + 1..n {
            m[i][j] = &a[i][j] / &d[i];
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let t = &m[i][j] * &a[i][k];
                a[j][k] -= t;
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let b = BigRational::from_integer(BigInt::from(bound));
    enumerate_level(n - 1, &d, &m, &b, &mut x, &mut out, &g);
    out.sort_by(|(u, p), (v, q)| p.abs().cmp(&q.abs()).then_with(|| u.cmp(v)));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_level(
    i: usize,
    d: &[BigRational],
    m: &[Vec<BigRational>],
    remaining: &BigRational,
    x: &mut Vec<i64>,
    out: &mut Vec<(Vec<i64>, i64)>,
    g: &[Vec<i64>],
) {
    let n = x.len();
    // center c = -Σ_{j>i} m_ij x_j
    let mut c = BigRational::zero();
    for j in i + 1..n {
        c -= &m[i][j] * BigInt::from(x[j]);
    }
    let t = remaining / &d[i];
    let s = t.floor().to_integer().sqrt();
    let lo = (&c - BigRational::from_integer(&s + 1u32)).ceil().to_integer();
    let hi = (&c + BigRational::from_integer(&s + 1u32)).floor().to_integer();
    let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else { return };
    for xi in lo..=hi {
        let diff = BigRational::from_integer(BigInt::from(xi)) - &c;
        let used = &d[i] * &diff * &diff;
        if &used > remaining {
            continue;
        }
        x[i] = xi;
        let rest = remaining - used;
        if i == 0 {
            if x.iter().all(|&v| v == 0) {
                continue;
            }
            let mut v = x.clone();
            canonical_sign(&mut v);
            if v == *x {
                let norm = dot(&v, &mat_vec(g, &v));
                out.push((v, norm));
            }
        } else {
            enumerate_level(i - 1, d, m, &rest, x, out, g);
        }
    }
    x[i] = 0;
}

/// Basis change `M` with `Mᵀ·G₁·M = G₂`; the columns of `M` are the images of the
/// basis of the second lattice written in the basis of the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryWitness {
    pub matrix: IntMatrix,
}

impl IsometryWitness {
    pub fn verify(&self, l1: &Lattice, l2: &Lattice) -> bool {
        let m = &self.matrix;
        if m.len() != l1.rank() || m.iter().any(|r| r.len() != l2.rank()) {
            return false;
        }
        let cols: Vec<Vec<BigInt>> = (0..l2.rank()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect();
        intmat::congruence(l1.gram(), &cols) == *l2.gram() && intmat::determinant(m).abs().is_one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsometryOutcome {
    Isometric(IsometryWitness),
    NoIsometry,
}

impl IsometryOutcome {
    pub fn witness(&self) -> Option<&IsometryWitness> {
        match self {
            IsometryOutcome::Isometric(w) => Some(w),
            IsometryOutcome::NoIsometry => None,
        }
    }
}

/// Cheap invariants that must agree for isometric lattices: rank, signature,
/// parity, determinant and, when small enough to compare, discriminant forms.
fn invariants_agree(l1: &Lattice, l2: &Lattice) -> Result<bool> {
    if l1.rank() != l2.rank()
        || l1.signature() != l2.signature()
        || l1.parity() != l2.parity()
        || l1.det() != l2.det()
    {
        return Ok(false);
    }
    let b1 = discforms::disc_bilinear(l1);
    let b2 = discforms::disc_bilinear(l2);
    let same = match (l1.parity(), discforms::disc_quadratic(l1), discforms::disc_quadratic(l2)) {
        (Parity::Even, Ok(q1), Ok(q2)) => q1.is_isomorphic(&q2),
        _ => b1.is_isomorphic(&b2),
    };
    match same {
        Ok(s) => Ok(s),
        Err(Error::GroupTooLarge(_)) => Ok(true),
        Err(e) => Err(e),
    }
}

/// Decides whether two small lattices are isometric.
///
/// Definite lattices of rank at most 9 are searched exhaustively; indefinite ones
/// of rank at most 4 with Gram entries bounded by 10 are searched inside a
/// coordinate box, and exhausting the box is reported as
/// [`Error::SearchInconclusive`] rather than as a negative answer.
pub fn isometry_small(l1: &Lattice, l2: &Lattice, budget: u64) -> Result<IsometryOutcome> {
    let definite = l1.is_definite() && l2.is_definite();
    if definite {
        for l in [l1, l2] {
            if l.rank() > DEFINITE_ISOMETRY_MAX_RANK {
                return Err(Error::RankTooLarge {
                    rank: l.rank(),
                    max: DEFINITE_ISOMETRY_MAX_RANK,
                });
            }
        }
    } else {
        for l in [l1, l2] {
            if l.rank() > INDEFINITE_ISOMETRY_MAX_RANK {
                return Err(Error::RankTooLarge {
                    rank: l.rank(),
                    max: INDEFINITE_ISOMETRY_MAX_RANK,
                });
            }
            let g = gram_i64(l)?;
            if let Some(x) = g.iter().flatten().find(|x| x.abs() > INDEFINITE_MAX_ENTRY) {
                return Err(Error::EntryTooLarge(x.to_string()));
            }
        }
    }
    if !invariants_agree(l1, l2)? {
        return Ok(IsometryOutcome::NoIsometry);
    }
    let n = l1.rank();
    if n == 0 {
        return Ok(IsometryOutcome::Isometric(IsometryWitness { matrix: Vec::new() }));
    }
    let g1 = gram_i64(l1)?;
    let g2 = gram_i64(l2)?;
    let max_norm = (0..n).map(|i| g2[i][i].abs()).max().unwrap_or(0);

    // candidate images, both signs
    let pool: Vec<Vec<i64>> = if definite {
        short_vectors_i64(l1, max_norm)?
            .into_iter()
            .flat_map(|(v, _)| {
                let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                [v, neg]
            })
            .collect()
    } else {
        box_vectors(n, INDEFINITE_BOX)
    };
    let by_norm = |target: i64| -> Vec<usize> {
        (0..pool.len()).filter(|&k| dot(&pool[k], &mat_vec(&g1, &pool[k])) == target).collect()
    };
    let pool_g: Vec<Vec<i64>> = pool.iter().map(|v| mat_vec(&g1, v)).collect();
    let mut domains: Vec<Vec<usize>> = (0..n).map(|j| by_norm(g2[j][j])).collect();
    if definite && !refine_by_fingerprint(l2, &g2, &pool, &pool_g, &mut domains)? {
        return Ok(IsometryOutcome::NoIsometry);
    }
    if domains.iter().any(|d| d.is_empty()) {
        return if definite {
            Ok(IsometryOutcome::NoIsometry)
        } else {
            Err(Error::SearchInconclusive)
        };
    }
    let order = column_order(&g2, &domains);
    let mut search = Backtrack {
        pool: &pool,
        pool_g: &pool_g,
        g2: &g2,
        order: &order,
        assigned: vec![usize::MAX; n],
        nodes: 0,
        budget,
    };
    let found = search.run(0, domains)?;
    match found {
        Some(images) => {
            let mut matrix = vec![vec![BigInt::zero(); n]; n];
            for (j, &k) in images.iter().enumerate() {
                for i in 0..n {
                    matrix[i][j] = BigInt::from(pool[k][i]);
                }
            }
            let w = IsometryWitness { matrix };
            debug_assert!(w.verify(l1, l2));
            Ok(IsometryOutcome::Isometric(w))
        }
        None if definite => Ok(IsometryOutcome::NoIsometry),
        None => Err(Error::SearchInconclusive),
    }
}

/// Drops candidates whose inner products with the minimal vectors differ from
/// those of the basis vector they would replace. Returns false when the minimal
/// vectors of the two lattices already disagree.
fn refine_by_fingerprint(
    l2: &Lattice,
    g2: &[Vec<i64>],
    pool: &[Vec<i64>],
    pool_g: &[Vec<i64>],
    domains: &mut [Vec<usize>],
) -> Result<bool> {
    let norms: Vec<i64> = pool.iter().zip(pool_g).map(|(v, gv)| dot(v, gv)).collect();
    let Some(min) = norms.iter().map(|x| x.abs()).min() else { return Ok(true) };
    let minimal1: Vec<usize> = (0..pool.len()).filter(|&k| norms[k].abs() == min).collect();
    let minimal2: Vec<Vec<i64>> = short_vectors_i64(l2, min)?
        .into_iter()
        .flat_map(|(v, _)| {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            [v, neg]
        })
        .collect();
    if minimal2.len() != minimal1.len() || minimal2.iter().any(|v| dot(v, &mat_vec(g2, v)).abs() != min) {
        return Ok(false);
    }
    let fingerprint = |ips: &mut dyn Iterator<Item = i64>| -> Vec<(i64, usize)> {
        let mut counts: HashMap<i64, usize> = HashMap::new();
        for ip in ips {
            *counts.entry(ip).or_insert(0) += 1;
        }
        let mut v: Vec<(i64, usize)> = counts.into_iter().collect();
        v.sort_unstable();
        v
    };
    let g2_minimal: Vec<Vec<i64>> = minimal2.iter().map(|r| mat_vec(g2, r)).collect();
    let mut cache: HashMap<usize, Vec<(i64, usize)>> = HashMap::new();
    for (j, dom) in domains.iter_mut().enumerate() {
        let want = fingerprint(&mut g2_minimal.iter().map(|gr| gr[j]));
        dom.retain(|&k| {
            let fp = cache
                .entry(k)
                .or_insert_with(|| fingerprint(&mut minimal1.iter().map(|&r| dot(&pool_g[k], &pool[r]))));
            *fp == want
        });
        if dom.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn box_vectors(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-b..=b).map(move |a| {
                    let mut v = p.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x != 0));
    out
}

/// Columns most connected to those already placed first, then by degree in the
/// Gram graph, then by fewest candidates.
fn column_order(g2: &[Vec<i64>], domains: &[Vec<usize>]) -> Vec<usize> {
    let n = g2.len();
    let degree: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| i != j && g2[i][j] != 0).count()).collect();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&j| !used[j])
            .max_by_key(|&j| {
                let links = order.iter().filter(|&&i| g2[i][j] != 0).count();
                (links, degree[j], std::cmp::Reverse(domains[j].len()), std::cmp::Reverse(j))
            })
            .expect("an unused column remains");
        used[next] = true;
        order.push(next);
    }
    order
}

struct Backtrack<'a> {
    pool: &'a [Vec<i64>],
    pool_g: &'a [Vec<i64>],
    g2: &'a [Vec<i64>],
    order: &'a [usize],
    assigned: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_> {
    fn run(&mut self, depth: usize, domains: Vec<Vec<usize>>) -> Result<Option<Vec<usize>>> {
        if depth == self.order.len() {
            return Ok(Some(self.assigned.clone()));
        }
        let col = self.order[depth];
        for &k in &domains[col] {
            // -M is a witness whenever M is, so the first image keeps its canonical sign
            if depth == 0 {
                let mut v = self.pool[k].clone();
                canonical_sign(&mut v);
                if v != self.pool[k] {
                    continue;
                }
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded(self.budget));
            }
            let mut next = domains.clone();
            let mut dead = false;
            for &other in &self.order[depth + 1..] {
                let want = self.g2[col][other];
                let gk = &self.pool_g[k];
                next[other].retain(|&c| dot(gk, &self.pool[c]) == want && c != k);
                if next[other].is_empty() {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            self.assigned[col] = k;
            if let Some(found) = self.run(depth + 1, next)? {
                return Ok(Some(found));
            }
            self.assigned[col] = usize::MAX;
        }
        Ok(None)
    }
}

/// Value order of a single coordinate: `0, 1, -1, 2, -2, ...`.
fn value_order(b: i64) -> Vec<i64> {
    let mut v = vec![0];
    for k in 1..=b {
        v.push(k);
        v.push(-k);
    }
    v
}

struct Component {
    indices: Vec<usize>,
    /// (block coordinates, norm, content, characteristic)
    candidates: Vec<(Vec<i64>, i64, i64, bool)>,
}

fn components(g: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && g[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Components up to rank 2 range over the full coordinate box; larger ones use
/// coordinates in {-1, 0, 1} and are held at zero once that set exceeds 10⁵ vectors.
fn component_candidates(g: &[Vec<i64>], idx: &[usize], bound: i64) -> Vec<(Vec<i64>, i64, i64, bool)> {
    let sub: Vec<Vec<i64>> = idx.iter().map(|&i| idx.iter().map(|&j| g[i][j]).collect()).collect();
    let values = if idx.len() <= 2 {
        value_order(bound)
    } else if 3f64.powi(idx.len() as i32) <= 1e5 {
        value_order(1)
    } else {
        vec![0]
    };
    let mut vecs = vec![Vec::new()];
    for _ in 0..idx.len() {
        vecs = vecs
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                values.iter().map(move |&a| {
                    let mut v = p.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    vecs.into_iter()
        .map(|v| {
            let gv = mat_vec(&sub, &v);
            let norm = dot(&v, &gv);
            let content = v.iter().fold(0i64, |a, &x| a.gcd(&x));
            let characteristic = (0..v.len()).all(|i| (gv[i] - sub[i][i]).rem_euclid(2) == 0);
            (v, norm, content, characteristic)
        })
        .collect()
}

/// First primitive vector of the given norm and characteristic type, in the order
/// that runs through connected Gram components left to right and, inside each
/// block, lexicographically in the coordinate order `0, 1, -1, 2, -2, ...`.
///
/// Coordinate bounds grow from 3 to 15 before giving up.
pub fn find_primitive_vector(l: &Lattice, norm: i64, characteristic: bool) -> Result<LatticeVector> {
    let g = gram_i64(l)?;
    let comps = components(&g);
    for bound in SEARCH_BOUND_START..=SEARCH_BOUND_MAX {
        let blocks: Vec<Component> = comps
            .iter()
            .map(|idx| Component {
                indices: idx.clone(),
                candidates: component_candidates(&g, idx, bound),
            })
            .collect();
        if let Some(v) = search_blocks(&blocks, l.rank(), norm, characteristic) {
            return Ok(v);
        }
    }
    Err(Error::NotFoundWithinBound {
        norm,
        characteristic,
        bound: SEARCH_BOUND_MAX,
    })
}

fn search_blocks(blocks: &[Component], rank: usize, norm: i64, characteristic: bool) -> Option<LatticeVector> {
    let k = blocks.len();
    // suffix bounds on the norm still reachable
    let mut lo = vec![0i64; k + 1];
    let mut hi = vec![0i64; k + 1];
    for i in (0..k).rev() {
        let norms = blocks[i].candidates.iter().map(|c| c.1);
        lo[i] = lo[i + 1] + norms.clone().min().unwrap_or(0);
        hi[i] = hi[i + 1] + norms.max().unwrap_or(0);
    }
    let mut dfs = BlockSearch {
        blocks,
        lo,
        hi,
        want_char: characteristic,
        failed: HashSet::new(),
        chosen: Vec::with_capacity(k),
    };
    if !dfs.go(0, norm, 0, true) {
        return None;
    }
    let mut v = vec![0i64; rank];
    for (b, &c) in blocks.iter().zip(&dfs.chosen) {
        for (&i, &x) in b.indices.iter().zip(&b.candidates[c].0) {
            v[i] = x;
        }
    }
    Some(to_lattice_vector(&v))
}

struct BlockSearch<'a> {
    blocks: &'a [Component],
    lo: Vec<i64>,
    hi: Vec<i64>,
    want_char: bool,
    failed: HashSet<(usize, i64, i64, bool)>,
    chosen: Vec<usize>,
}

impl BlockSearch<'_> {
    fn go(&mut self, i: usize, remaining: i64, content: i64, all_char: bool) -> bool {
        if i == self.blocks.len() {
            return remaining == 0 && content == 1 && all_char == self.want_char;
        }
        if remaining < self.lo[i] || remaining > self.hi[i] {
            return false;
        }
        let key = (i, remaining, content, all_char);
        if self.failed.contains(&key) {
            return false;
        }
        for (c, cand) in self.blocks[i].candidates.iter().enumerate() {
            let (_, n, cont, is_char) = *cand;
            if self.want_char && !is_char {
                continue;
            }
            self.chosen.push(c);
            if self.go(i + 1, remaining - n, content.gcd(&cont), all_char && is_char) {
                return true;
            }
            self.chosen.pop();
        }
        self.failed.insert(key);
        false
    }
}

/// Every element of `L*/L`, represented by `y` in a transversal of `Zʳ / G·Zʳ`
/// taken from the Hermite form of `G`, with `q(G⁻¹y) = yᵀG⁻¹y` mod 2.
pub fn disc_form_table(l: &Lattice) -> Result<Vec<(Vec<i64>, BigRational)>> {
    if l.parity() == Parity::Odd {
        return Err(Error::OddLattice);
    }
    let det = l.det().abs();
    if det > BigInt::from(TABLE_LIMIT) {
        return Err(Error::GroupTooLarge(det.to_string()));
    }
    let n = l.rank();
    let ech = intmat::column_echelon(l.gram(), n);
    let pivots: Vec<i64> = (0..n).map(|i| ech.h[i][i].to_i64().expect("bounded by |det|")).collect();
    let ginv = intmat::inverse_rational(l.gram())?;
    let mut out = Vec::new();
    let mut y = vec![0i64; n];
    loop {
        let mut q = BigRational::zero();
        for i in 0..n {
            for j in 0..n {
                if y[i] != 0 && y[j] != 0 {
                    q += &ginv[i][j] * BigInt::from(y[i] * y[j]);
                }
            }
        }
        out.push((y.clone(), reduce_mod(&q, 2)));
        let mut i = 0;
        while i < n {
            y[i] += 1;
            if y[i] < pivots[i] {
                break;
            }
            y[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    Ok(out)
}

/// Multiset of table values, `value -> count`.
pub fn value_counts(table: &[(Vec<i64>, BigRational)]) -> HashMap<BigRational, usize> {
    let mut m = HashMap::new();
    for (_, q) in table {
        *m.entry(q.clone()).or_insert(0) += 1;
    }
    m
}
