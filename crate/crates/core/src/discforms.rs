//! Discriminant groups `L*/L` with their bilinear (values in Q/Z) and quadratic
//! (values in Q/2Z) forms.
//!
//! A finite form is stored on a list of generators `g_i` of orders `d_i`. For
//! forms computed from a lattice the orders are the invariant factors and the
//! generators carry rational lifts in `L ⊗ Q`. Abstract forms (for instance
//! `⟨1/3⟩ ⊕ ⟨1/2⟩` on `Z/3 ⊕ Z/2`) may use any orders; comparisons go through
//! the invariant factors of the underlying group.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intmat::{self, RatMatrix};
use crate::lattice::{Lattice, Parity};

/// Largest group on which `forms_isomorphic` will brute-force generator images.
pub const ISOMORPHISM_LIMIT: u64 = 10_000;
/// Largest group on which the Gauss sum is evaluated term by term.
pub const GAUSS_SUM_LIMIT: u64 = 2_000_000;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `x mod m` in `[0, m)`.
pub fn reduce_mod(x: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let k = (x / &m).floor();
    x - k * m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    orders: Vec<BigInt>,
    lifts: Vec<Vec<BigRational>>,
}

impl FiniteAbelianGroup {
    /// Group `⊕ Z/d_i` on abstract generators.
    pub fn new(orders: Vec<BigInt>) -> Result<Self> {
        if let Some(d) = orders.iter().find(|d| **d <= BigInt::one()) {
            return Err(Error::InvalidForm(format!("generator order {d} must exceed 1")));
        }
        Ok(FiniteAbelianGroup { orders, lifts: Vec::new() })
    }

    pub fn from_orders(orders: &[i64]) -> Result<Self> {
        Self::new(orders.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            orders: Vec::new(),
            lifts: Vec::new(),
        }
    }

    /// Orders of the stored generators.
    pub fn generator_orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Rational lifts of the generators, empty for abstract groups.
    pub fn generator_lifts(&self) -> &[Vec<BigRational>] {
        &self.lifts
    }

    /// Invariant factors `d_1 | d_2 | ...`, all greater than 1.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        if self.orders.windows(2).all(|w| w[1].is_multiple_of(&w[0])) {
            return self.orders.clone();
        }
        let n = self.orders.len();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (i, d) in self.orders.iter().enumerate() {
            m[i][i] = d.clone();
        }
        intmat::smith(&m).diag.into_iter().filter(|d| !d.is_one()).collect()
    }

    pub fn order(&self) -> BigInt {
        self.orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    fn small_orders(&self) -> Result<Vec<i64>> {
        self.orders
            .iter()
            .map(|d| d.to_i64().ok_or_else(|| Error::GroupTooLarge(self.order().to_string())))
            .collect()
    }

    /// All elements as coordinate tuples, in mixed-radix order.
    pub fn elements(&self, limit: u64) -> Result<Vec<Vec<i64>>> {
        match self.order_u64() {
            Some(n) if n <= limit => {}
            _ => return Err(Error::GroupTooLarge(self.order().to_string())),
        }
        let orders = self.small_orders()?;
        let mut out = vec![Vec::new()];
        for &d in &orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |a| {
                        let mut v = prefix.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        Ok(out)
    }
}

/// Number of invariant factors, i.e. the minimal number of generators.
pub fn group_length(a: &FiniteAbelianGroup) -> usize {
    a.invariant_factors().len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBilinearForm {
    group: FiniteAbelianGroup,
    values: Vec<Vec<BigRational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    bilinear: FiniteBilinearForm,
    qvalues: Vec<BigRational>,
}

impl FiniteBilinearForm {
    /// Values are reduced mod 1. Each `b(g_i, g_j)` must be killed by `gcd(d_i, d_j)`.
    pub fn new(group: FiniteAbelianGroup, values: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = group.orders.len();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidForm("value table does not match the number of generators".into()));
        }
        let values: Vec<Vec<BigRational>> =
            values.iter().map(|r| r.iter().map(|x| reduce_mod(x, 1)).collect()).collect();
        for i in 0..n {
            for j in 0..n {
                if values[i][j] != values[j][i] {
                    return Err(Error::InvalidForm(format!("table is not symmetric at ({i}, {j})")));
                }
                let g = BigRational::from_integer(group.orders[i].gcd(&group.orders[j]));
                if !(&values[i][j] * g).is_integer() {
                    return Err(Error::InvalidForm(format!(
                        "b(g{i}, g{j}) = {} is not killed by the generator orders",
                        values[i][j]
                    )));
                }
            }
        }
        Ok(FiniteBilinearForm { group, values })
    }

    /// Orthogonal sum of cyclic forms `⟨v⟩` on `Z/d`, given as `(d, v)`.
    pub fn diagonal(parts: &[(i64, BigRational)]) -> Result<Self> {
        let group = FiniteAbelianGroup::from_orders(&parts.iter().map(|p| p.0).collect::<Vec<_>>())?;
        let n = parts.len();
        let mut values = vec![vec![BigRational::zero(); n]; n];
        for (i, (_, v)) in parts.iter().enumerate() {
            values[i][i] = v.clone();
        }
        Self::new(group, values)
    }

    /// `⟨num/den⟩` on `Z/|den|`; `⟨1/n⟩` is `cyclic(1, n)`.
    pub fn cyclic(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidForm("zero denominator".into()));
        }
        if den.abs() == 1 {
            return Ok(Self::trivial());
        }
        Self::diagonal(&[(den.abs(), rat(num, den))])
    }

    pub fn trivial() -> Self {
        FiniteBilinearForm {
            group: FiniteAbelianGroup::trivial(),
            values: Vec::new(),
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Vec<BigRational>] {
        &self.values
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> BigRational {
        let mut s = BigRational::zero();
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                s += &self.values[i][j] * BigInt::from(a * b);
            }
        }
        reduce_mod(&s, 1)
    }

    pub fn negate(&self) -> Self {
        FiniteBilinearForm {
            group: self.group.clone(),
            values: self.values.iter().map(|r| r.iter().map(|x| reduce_mod(&-x, 1)).collect()).collect(),
        }
    }

    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        isomorphic(&self.table()?, &other.table()?)
    }

    fn table(&self) -> Result<Table> {
        Table::build(&self.group, &self.values, None)
    }

    /// Every quadratic form whose associated bilinear form is this one.
    pub fn quadratic_refinements(&self) -> Result<Vec<FiniteQuadraticForm>> {
        let mut out = vec![Vec::new()];
        for (i, d) in self.group.orders.iter().enumerate() {
            let base = self.values[i][i].clone();
            let d2 = BigRational::from_integer(d * d);
            let mut next = Vec::new();
            for prefix in &out {
                for shift in [0, 1] {
                    let q = &base + BigRational::from_integer(BigInt::from(shift));
                    let killed = &q * &d2 / BigRational::from_integer(BigInt::from(2));
                    if killed.is_integer() {
                        let mut p: Vec<BigRational> = prefix.clone();
                        p.push(q);
                        next.push(p);
                    }
                }
            }
            out = next;
        }
        out.into_iter().map(|q| FiniteQuadraticForm::new(self.clone(), q)).collect()
    }

    /// Rendering with values mod 1.
    pub fn render(&self) -> String {
        render(&self.group, &self.values, &self.values.iter().enumerate().map(|(i, r)| r[i].clone()).collect::<Vec<_>>())
    }
}

impl FiniteQuadraticForm {
    /// `qvalues[i]` is `q(g_i)` mod 2; it must reduce to `b(g_i, g_i)` mod 1 and
    /// satisfy `d_i² q(g_i) ≡ 0 mod 2`.
    pub fn new(bilinear: FiniteBilinearForm, qvalues: Vec<BigRational>) -> Result<Self> {
        if qvalues.len() != bilinear.group.orders.len() {
            return Err(Error::InvalidForm("quadratic values do not match the number of generators".into()));
        }
        let qvalues: Vec<BigRational> = qvalues.iter().map(|x| reduce_mod(x, 2)).collect();
        for (i, q) in qvalues.iter().enumerate() {
            if reduce_mod(q, 1) != bilinear.values[i][i] {
                return Err(Error::InvalidForm(format!("q(g{i}) = {q} does not refine b(g{i}, g{i})")));
            }
            let d = &bilinear.group.orders[i];
            let killed = q * BigRational::from_integer(d * d) / BigRational::from_integer(BigInt::from(2));
            if !killed.is_integer() {
                return Err(Error::InvalidForm(format!("q is not well defined on g{i} of order {d}")));
            }
        }
        Ok(FiniteQuadraticForm { bilinear, qvalues })
    }

    /// Orthogonal sum of cyclic quadratic forms `(d, q(g))`.
    pub fn diagonal(parts: &[(i64, BigRational)]) -> Result<Self> {
        let b = FiniteBilinearForm::diagonal(parts)?;
        Self::new(b, parts.iter().map(|p| p.1.clone()).collect())
    }

    /// `⟨num/den⟩` on `Z/|den|`, value taken mod 2.
    pub fn cyclic(num: i64, den: i64) -> Result<Self> {
        if den.abs() == 1 {
            return Ok(Self::trivial());
        }
        Self::diagonal(&[(den.abs(), rat(num, den))])
    }

    pub fn trivial() -> Self {
        FiniteQuadraticForm {
            bilinear: FiniteBilinearForm::trivial(),
            qvalues: Vec::new(),
        }
    }

    pub fn bilinear(&self) -> &FiniteBilinearForm {
        &self.bilinear
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.bilinear.group
    }

    pub fn qvalues(&self) -> &[BigRational] {
        &self.qvalues
    }

    /// `q(x)` mod 2.
    pub fn value(&self, x: &[i64]) -> BigRational {
        let mut s = BigRational::zero();
        for (i, a) in x.iter().enumerate() {
            s += &self.qvalues[i] * BigInt::from(a * a);
            for (j, b) in x.iter().enumerate().skip(i + 1) {
                s += &self.bilinear.values[i][j] * BigInt::from(2 * a * b);
            }
        }
        reduce_mod(&s, 2)
    }

    pub fn negate(&self) -> Self {
        FiniteQuadraticForm {
            bilinear: self.bilinear.negate(),
            qvalues: self.qvalues.iter().map(|x| reduce_mod(&-x, 2)).collect(),
        }
    }

    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        isomorphic(&self.table()?, &other.table()?)
    }

    fn table(&self) -> Result<Table> {
        Table::build(&self.bilinear.group, &self.bilinear.values, Some(&self.qvalues))
    }

    /// Rendering with values mod 2.
    pub fn render(&self) -> String {
        render(&self.bilinear.group, &self.bilinear.values, &self.qvalues)
    }

    /// Rendering with values reduced mod 1.
    pub fn render_mod_z(&self) -> String {
        self.bilinear.render()
    }
}

impl fmt::Display for FiniteBilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn render(group: &FiniteAbelianGroup, values: &[Vec<BigRational>], diag: &[BigRational]) -> String {
    let n = group.orders.len();
    if n == 0 {
        return "0".into();
    }
    let is_diag = (0..n).all(|i| (0..n).all(|j| i == j || values[i][j].is_zero()));
    if is_diag {
        return diag.iter().map(|v| format!("⟨{v}⟩")).collect::<Vec<_>>().join(" ⊕ ");
    }
    let groups: Vec<String> = group.orders.iter().map(|d| format!("Z/{d}")).collect();
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let cells: Vec<String> =
                (0..n).map(|j| if i == j { diag[i].to_string() } else { values[i][j].to_string() }).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}] on {}", rows.join(", "), groups.join(" ⊕ "))
}

pub trait FiniteForm: Sized {
    fn is_isomorphic(&self, other: &Self) -> Result<bool>;
    fn negate(&self) -> Self;
}

impl FiniteForm for FiniteBilinearForm {
    fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        FiniteBilinearForm::is_isomorphic(self, other)
    }
    fn negate(&self) -> Self {
        FiniteBilinearForm::negate(self)
    }
}

impl FiniteForm for FiniteQuadraticForm {
    fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        FiniteQuadraticForm::is_isomorphic(self, other)
    }
    fn negate(&self) -> Self {
        FiniteQuadraticForm::negate(self)
    }
}

/// Brute-force isomorphism test for finite forms on groups of order at most
/// [`ISOMORPHISM_LIMIT`].
pub fn forms_isomorphic<F: FiniteForm>(a: &F, b: &F) -> Result<bool> {
    a.is_isomorphic(b)
}

pub fn negate<F: FiniteForm>(f: &F) -> F {
    f.negate()
}

/// Integer encoding of a form: bilinear values as `b/n` mod 1 and quadratic values
/// as `q/n` mod 2, with `n` the exponent of the group.
struct Table {
    orders: Vec<i64>,
    n: i64,
    b: Vec<Vec<i64>>,
    q: Option<Vec<i64>>,
    order: u64,
}

impl Table {
    fn build(group: &FiniteAbelianGroup, values: &[Vec<BigRational>], q: Option<&[BigRational]>) -> Result<Table> {
        let too_large = || Error::GroupTooLarge(group.order().to_string());
        let order = group.order_u64().ok_or_else(too_large)?;
        let orders = group.small_orders()?;
        let n_big = intmat::lcm_all(&group.orders);
        let n = n_big.to_i64().ok_or_else(too_large)?;
        let n_rat = BigRational::from_integer(n_big.clone());
        let scaled = |x: &BigRational| -> Result<i64> {
            let y = x * &n_rat;
            debug_assert!(y.is_integer());
            y.to_integer().to_i64().ok_or_else(too_large)
        };
        let b = values.iter().map(|r| r.iter().map(scaled).collect()).collect::<Result<Vec<Vec<i64>>>>()?;
        let q = match q {
            Some(q) => Some(q.iter().map(scaled).collect::<Result<Vec<i64>>>()?),
            None => None,
        };
        Ok(Table { orders, n, b, q, order })
    }

    fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.n as i128;
        let mut s: i128 = 0;
        for (i, a) in x.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, c) in y.iter().enumerate() {
                s = (s + *a as i128 * *c as i128 % n * self.b[i][j] as i128) % n;
            }
        }
        s.rem_euclid(n) as i64
    }

    /// `q(x)` as an integer mod `2n`, or `b(x,x)` mod `n` for a bilinear table.
    fn self_value(&self, x: &[i64]) -> i64 {
        match &self.q {
            None => self.pair(x, x),
            Some(q) => {
                let m = 2 * self.n as i128;
                let mut s: i128 = 0;
                for (i, a) in x.iter().enumerate() {
                    let a = *a as i128;
                    s = (s + a * a % m * q[i] as i128) % m;
                    for (j, c) in x.iter().enumerate().skip(i + 1) {
                        s = (s + 2 * (a * *c as i128 % m) % m * self.b[i][j] as i128) % m;
                    }
                }
                s.rem_euclid(m) as i64
            }
        }
    }

    fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.orders {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..d).map(move |a| {
                        let mut v = p.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        out
    }

    fn reduce(&self, mut x: Vec<i64>) -> Vec<i64> {
        for (a, d) in x.iter_mut().zip(&self.orders) {
            *a = a.rem_euclid(*d);
        }
        x
    }

    fn invariant_factors(&self) -> Vec<BigInt> {
        FiniteAbelianGroup::from_orders(&self.orders)
            .map(|g| g.invariant_factors())
            .unwrap_or_default()
    }
}

fn isomorphic(t1: &Table, t2: &Table) -> Result<bool> {
    if t1.order > ISOMORPHISM_LIMIT {
        return Err(Error::GroupTooLarge(t1.order.to_string()));
    }
    if t2.order > ISOMORPHISM_LIMIT {
        return Err(Error::GroupTooLarge(t2.order.to_string()));
    }
    if t1.invariant_factors() != t2.invariant_factors() {
        return Ok(false);
    }
    if t1.orders.is_empty() {
        return Ok(true);
    }
    // Equal invariant factors give equal exponents, so both tables share the scale.
    debug_assert_eq!(t1.n, t2.n);
    // p-primary parts are mutually orthogonal; compare them one prime at a time.
    for p in prime_factors(t1.n) {
        if !isomorphic_primary(&t1.primary_part(p), &t2.primary_part(p), p) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prime_factors(mut n: i64) -> Vec<i64> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

impl Table {
    /// The `p`-primary part, generated by the `p`-parts of the generators, sorted
    /// by decreasing order and rescaled to its own exponent.
    fn primary_part(&self, p: i64) -> Table {
        let mut np = 1;
        while self.n % (np * p) == 0 {
            np *= p;
        }
        let rest = self.n / np;
        let mut gens: Vec<(i64, i64, usize)> = Vec::new();
        for (i, &d) in self.orders.iter().enumerate() {
            let mut pa = 1;
            while d % (pa * p) == 0 {
                pa *= p;
            }
            if pa > 1 {
                gens.push((pa, d / pa, i));
            }
        }
        gens.sort_by(|x, y| y.0.cmp(&x.0).then(x.2.cmp(&y.2)));
        let n = self.n as i128;
        let rescale = |x: i128, modulus: i128| -> i64 {
            debug_assert_eq!(x % rest as i128, 0);
            ((x / rest as i128).rem_euclid(modulus)) as i64
        };
        let b = gens
            .iter()
            .map(|&(_, mi, i)| {
                gens.iter()
                    .map(|&(_, mj, j)| {
                        let x = (mi as i128 * mj as i128 % n * self.b[i][j] as i128).rem_euclid(n);
                        rescale(x, np as i128)
                    })
                    .collect()
            })
            .collect();
        let q = self.q.as_ref().map(|q| {
            gens.iter()
                .map(|&(_, m, i)| {
                    let x = (m as i128 * m as i128 % (2 * n) * q[i] as i128).rem_euclid(2 * n);
                    rescale(x, 2 * np as i128)
                })
                .collect()
        });
        let orders: Vec<i64> = gens.iter().map(|g| g.0).collect();
        let order = orders.iter().map(|&d| d as u64).product();
        Table {
            orders,
            n: np,
            b,
            q,
            order,
        }
    }

    fn exact_order(&self, x: &[i64]) -> i64 {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| d / a.gcd(&d))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    fn index_of(&self, x: &[i64]) -> usize {
        x.iter().zip(&self.orders).fold(0, |acc, (&a, &d)| acc * d as usize + a as usize)
    }
}

/// Automorphism-invariant label of every element of a `p`-group: exact order,
/// self value, and the largest `k` with `x ∈ p^k A`.
fn element_labels(t: &Table, elems: &[Vec<i64>], p: i64) -> Vec<(i64, i64, u32)> {
    let mut height = vec![0u32; elems.len()];
    let mut pk = p;
    let mut k = 1;
    while t.orders.first().is_some_and(|&d| pk < d) {
        for x in elems {
            let y = t.reduce(x.iter().map(|a| a * pk).collect());
            let idx = t.index_of(&y);
            height[idx] = height[idx].max(k);
        }
        pk *= p;
        k += 1;
    }
    elems
        .iter()
        .enumerate()
        .map(|(i, x)| (t.exact_order(x), t.self_value(x), if x.iter().all(|&a| a == 0) { u32::MAX } else { height[i] }))
        .collect()
}

fn isomorphic_primary(t1: &Table, t2: &Table, p: i64) -> bool {
    let r = t1.orders.len();
    if r == 0 {
        return true;
    }
    let e1 = t1.elements();
    let e2 = t2.elements();
    let l1 = element_labels(t1, &e1, p);
    let l2 = element_labels(t2, &e2, p);
    let gens: Vec<Vec<i64>> = (0..r)
        .map(|k| {
            let mut g = vec![0; r];
            g[k] = 1;
            g
        })
        .collect();
    let domains: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| {
            let want = l1[t1.index_of(g)];
            (0..e2.len()).filter(|&i| l2[i] == want).collect()
        })
        .collect();
    let targets: Vec<Vec<i64>> = gens.iter().map(|g| gens.iter().map(|h| t1.pair(g, h)).collect()).collect();
    let degenerate = e1
        .iter()
        .any(|x| x.iter().any(|&a| a != 0) && gens.iter().all(|g| t1.pair(x, g) == 0));
    let mut images = Vec::with_capacity(r);
    extend(t1, t2, &e2, &targets, domains, &mut images, degenerate)
}

fn extend(
    t1: &Table,
    t2: &Table,
    e2: &[Vec<i64>],
    targets: &[Vec<i64>],
    domains: Vec<Vec<usize>>,
    images: &mut Vec<usize>,
    check_injective: bool,
) -> bool {
    let k = images.len();
    let r = targets.len();
    if k == r {
        let imgs: Vec<Vec<i64>> = images.iter().map(|&i| e2[i].clone()).collect();
        return !check_injective || injective(t1, t2, &imgs);
    }
    for &y in &domains[k] {
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(r);
        next.extend(domains[..=k].iter().map(|_| Vec::new()));
        let mut dead = false;
        for j in k + 1..r {
            let dj: Vec<usize> = domains[j].iter().copied().filter(|&z| t2.pair(&e2[y], &e2[z]) == targets[k][j]).collect();
            if dj.is_empty() {
                dead = true;
                break;
            }
            next.push(dj);
        }
        if dead {
            continue;
        }
        images.push(y);
        if extend(t1, t2, e2, targets, next, images, check_injective) {
            return true;
        }
        images.pop();
    }
    false
}

fn injective(t1: &Table, t2: &Table, images: &[Vec<i64>]) -> bool {
    let mut seen = std::collections::HashSet::new();
    for x in t1.elements() {
        let mut y = vec![0i64; t2.orders.len()];
        for (a, img) in x.iter().zip(images) {
            for (c, v) in y.iter_mut().zip(img) {
                *c += a * v;
            }
        }
        if !seen.insert(t2.reduce(y)) {
            return false;
        }
    }
    true
}

/// Lifts of discriminant-group generators: with `U·G·V = D`, the columns `u_i` of
/// `U⁻¹` generate `Z^r / G Z^r` with orders `d_i`, and `G⁻¹ u_i` lifts them to `L*`.
fn presentation(l: &Lattice) -> (FiniteAbelianGroup, RatMatrix) {
    let g = l.gram();
    let r = l.rank();
    let snf = intmat::smith(g);
    let ginv = intmat::inverse_rational(g).expect("lattice is non-degenerate");
    let mut orders = Vec::new();
    let mut lifts = Vec::new();
    for i in 0..r {
        let d = snf.diag[i].abs();
        if d.is_one() {
            continue;
        }
        orders.push(d);
        let u: Vec<BigRational> = (0..r).map(|k| BigRational::from_integer(snf.left_inv[k][i].clone())).collect();
        let lift: Vec<BigRational> =
            (0..r).map(|a| (0..r).fold(BigRational::zero(), |s, b| s + &ginv[a][b] * &u[b])).collect();
        lifts.push(lift);
    }
    let group = FiniteAbelianGroup {
        orders,
        lifts: lifts.clone(),
    };
    (group, lifts)
}

fn rational_pair(l: &Lattice, x: &[BigRational], y: &[BigRational]) -> BigRational {
    let g = l.gram();
    let mut s = BigRational::zero();
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            s += a * b * BigRational::from_integer(g[i][j].clone());
        }
    }
    s
}

pub fn disc_group(l: &Lattice) -> FiniteAbelianGroup {
    presentation(l).0
}

pub fn invariant_factors(l: &Lattice) -> Vec<BigInt> {
    disc_group(l).orders
}

pub fn disc_bilinear(l: &Lattice) -> FiniteBilinearForm {
    let (group, lifts) = presentation(l);
    let values = lifts
        .iter()
        .map(|x| lifts.iter().map(|y| reduce_mod(&rational_pair(l, x, y), 1)).collect())
        .collect();
    FiniteBilinearForm { group, values }
}

pub fn disc_quadratic(l: &Lattice) -> Result<FiniteQuadraticForm> {
    if l.parity() == Parity::Odd {
        return Err(Error::OddLattice);
    }
    let bilinear = disc_bilinear(l);
    let lifts = bilinear.group.lifts.clone();
    let qvalues = lifts.iter().map(|x| reduce_mod(&rational_pair(l, x, x), 2)).collect();
    Ok(FiniteQuadraticForm { bilinear, qvalues })
}

/// Signature mod 8 of a finite quadratic form, read off from the Gauss sum
/// `Σ exp(πi q(x)) = √|A| · exp(2πi σ / 8)`.
///
/// The sum is evaluated in double precision. Distinct candidate values
/// `√|A|·ζ₈^k` are at least `0.76·√|A|` apart while the accumulated rounding error
/// stays far below that for groups up to [`GAUSS_SUM_LIMIT`], so rounding the
/// argument picks the exact residue. A sum whose modulus is not `√|A|` means the
/// table does not describe a non-degenerate form.
pub fn milgram_signature(f: &FiniteQuadraticForm) -> Result<u8> {
    let t = f.table()?;
    if t.order > GAUSS_SUM_LIMIT {
        return Err(Error::GroupTooLarge(t.order.to_string()));
    }
    if t.orders.is_empty() {
        return Ok(0);
    }
    let two_n = 2 * t.n;
    // precomputed unit roots exp(πi k / n) for k mod 2n
    let roots: Vec<(f64, f64)> = (0..two_n)
        .map(|k| {
            let a = std::f64::consts::PI * k as f64 / t.n as f64;
            (a.cos(), a.sin())
        })
        .collect();
    let mut re = 0.0;
    let mut im = 0.0;
    let mut x = vec![0i64; t.orders.len()];
    loop {
        let v = t.self_value(&x) as usize;
        re += roots[v].0;
        im += roots[v].1;
        let mut i = 0;
        while i < x.len() {
            x[i] += 1;
            if x[i] < t.orders[i] {
                break;
            }
            x[i] = 0;
            i += 1;
        }
        if i == x.len() {
            break;
        }
    }
    let size = t.order as f64;
    let modulus2 = re * re + im * im;
    if (modulus2 - size).abs() > 1e-6 * size {
        return Err(Error::NonUnitGaussSum);
    }
    let eighths = im.atan2(re) / (std::f64::consts::PI / 4.0);
    let k = eighths.round();
    if (eighths - k).abs() > 0.05 {
        return Err(Error::NonUnitGaussSum);
    }
    Ok((k as i64).rem_euclid(8) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::NamedDecomposition;

    fn lat(s: &str) -> Lattice {
        s.parse::<NamedDecomposition>().unwrap().lattice().unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn invariant_factor_examples() {
        assert!(invariant_factors(&lat("E8")).is_empty());
        assert_eq!(invariant_factors(&lat("<-2> + E8(-1)")), ints(&[2]));
        assert_eq!(invariant_factors(&lat("A2")), ints(&[3]));
        assert_eq!(invariant_factors(&lat("D4")), ints(&[2, 2]));
        assert_eq!(invariant_factors(&lat("<2> + <4> + A2")), ints(&[2, 12]));
        assert_eq!(group_length(&FiniteAbelianGroup::trivial()), 0);
        assert_eq!(group_length(&FiniteAbelianGroup::from_orders(&[7]).unwrap()), 1);
        assert_eq!(group_length(&FiniteAbelianGroup::from_orders(&[2, 4]).unwrap()), 2);
        assert_eq!(group_length(&FiniteAbelianGroup::from_orders(&[2, 3]).unwrap()), 1);
    }

    #[test]
    fn cyclic_lattice_forms() {
        for n in [2i64, 3, 5, -4, -7] {
            let b = disc_bilinear(&Lattice::diagonal(&[n]).unwrap());
            assert!(b.is_isomorphic(&FiniteBilinearForm::cyclic(1, n).unwrap()).unwrap(), "{n}");
        }
        let b = disc_bilinear(&Lattice::diagonal(&[-2]).unwrap());
        assert_eq!(b.values()[0][0], rat(1, 2));
        let q = disc_quadratic(&Lattice::diagonal(&[2]).unwrap()).unwrap();
        assert_eq!(q.qvalues(), &[rat(1, 2)]);
        let q = disc_quadratic(&Lattice::diagonal(&[-2]).unwrap()).unwrap();
        assert_eq!(q.qvalues(), &[rat(3, 2)]);
        assert!(disc_quadratic(&lat("E8(-1)")).unwrap().group().is_trivial());
        assert_eq!(disc_quadratic(&Lattice::diagonal(&[1]).unwrap()), Err(Error::OddLattice));
    }

    #[test]
    fn lifts_have_the_right_order() {
        let l = lat("A2(-1) + <-2> + D5");
        let g = disc_group(&l);
        for (d, lift) in g.generator_orders().iter().zip(g.generator_lifts()) {
            for x in lift {
                assert!((x * BigRational::from_integer(d.clone())).is_integer());
            }
        }
        let product: BigInt = g.generator_orders().iter().product();
        assert_eq!(product, l.det().abs());
    }

    #[test]
    fn isomorphism_examples() {
        let half = FiniteQuadraticForm::cyclic(1, 2).unwrap();
        let three_halves = FiniteQuadraticForm::cyclic(3, 2).unwrap();
        assert!(!forms_isomorphic(&half, &three_halves).unwrap());
        assert!(forms_isomorphic(&half, &half).unwrap());
        let b1 = FiniteBilinearForm::cyclic(1, 2).unwrap();
        let b2 = FiniteBilinearForm::cyclic(-1, 2).unwrap();
        assert!(forms_isomorphic(&b1, &b2).unwrap());
        // ⟨1/5⟩ and ⟨2/5⟩ differ by a non-square
        let f1 = FiniteBilinearForm::cyclic(1, 5).unwrap();
        assert!(!forms_isomorphic(&f1, &FiniteBilinearForm::cyclic(2, 5).unwrap()).unwrap());
        assert!(forms_isomorphic(&f1, &FiniteBilinearForm::cyclic(4, 5).unwrap()).unwrap());
        // Z/3 ⊕ Z/2 against the cyclic group of order 6
        let split = FiniteBilinearForm::diagonal(&[(3, rat(1, 3)), (2, rat(1, 2))]).unwrap();
        assert!(forms_isomorphic(&split, &FiniteBilinearForm::cyclic(5, 6).unwrap()).unwrap());
        assert!(!forms_isomorphic(&split, &FiniteBilinearForm::cyclic(1, 6).unwrap()).unwrap());
        let big = FiniteBilinearForm::cyclic(1, 20_000).unwrap();
        assert!(matches!(forms_isomorphic(&big, &big), Err(Error::GroupTooLarge(_))));
    }

    #[test]
    fn negation() {
        let f = FiniteBilinearForm::cyclic(1, 7).unwrap();
        assert_eq!(negate(&f), FiniteBilinearForm::cyclic(-1, 7).unwrap());
        assert_eq!(negate(&FiniteBilinearForm::trivial()), FiniteBilinearForm::trivial());
        assert_eq!(negate(&FiniteQuadraticForm::cyclic(1, 2).unwrap()).qvalues(), &[rat(3, 2)]);
    }

    #[test]
    fn milgram_examples() {
        assert_eq!(milgram_signature(&FiniteQuadraticForm::trivial()).unwrap(), 0);
        assert_eq!(milgram_signature(&FiniteQuadraticForm::cyclic(1, 2).unwrap()).unwrap(), 1);
        assert_eq!(milgram_signature(&FiniteQuadraticForm::cyclic(3, 2).unwrap()).unwrap(), 7);
        for (s, tau) in [("A1", 1), ("A2", 2), ("E6", 6), ("E7", 7), ("D4", 4), ("D5(-1)", -5), ("A4(-1)", -4)] {
            let l = lat(s);
            let q = disc_quadratic(&l).unwrap();
            assert_eq!(milgram_signature(&q).unwrap() as i64, (tau as i64).rem_euclid(8), "{s}");
        }
    }

    #[test]
    fn refinements_of_cyclic_forms() {
        let b = FiniteBilinearForm::cyclic(1, 2).unwrap();
        let qs = b.quadratic_refinements().unwrap();
        assert_eq!(qs.len(), 2);
        let b = FiniteBilinearForm::cyclic(1, 3).unwrap();
        assert_eq!(b.quadratic_refinements().unwrap().len(), 1);
        assert_eq!(b.quadratic_refinements().unwrap()[0].qvalues(), &[rat(4, 3)]);
    }

    #[test]
    fn rendering() {
        assert_eq!(FiniteQuadraticForm::cyclic(-1, 2).unwrap().to_string(), "⟨3/2⟩");
        assert_eq!(FiniteQuadraticForm::cyclic(-1, 2).unwrap().render_mod_z(), "⟨1/2⟩");
        assert_eq!(FiniteBilinearForm::trivial().to_string(), "0");
        let d4 = disc_bilinear(&lat("D4"));
        assert!(d4.to_string().contains("Z/2 ⊕ Z/2") || d4.to_string().contains('⊕'));
    }
}
