//! Genus symbols `(rank, signature, parity, discriminant form)`, the classification
//! of indefinite unimodular lattices, the Kneser–Nikulin class-number-one test and
//! named representatives for complements of primitive vectors.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::blocks::{Block, BlockKind, NamedDecomposition};
use crate::discforms::{self, group_length, milgram_signature, FiniteBilinearForm, FiniteQuadraticForm};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector, Parity, Signature};
use crate::oracle;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusSymbol {
    rank: usize,
    signature: Signature,
    parity: Parity,
    bilinear: FiniteBilinearForm,
    quadratic: Option<FiniteQuadraticForm>,
}

impl GenusSymbol {
    /// Checks `pos + neg = rank` and, for even genera, that a quadratic form is
    /// present whose Milgram signature equals the index mod 8.
    pub fn new(
        signature: Signature,
        parity: Parity,
        bilinear: FiniteBilinearForm,
        quadratic: Option<FiniteQuadraticForm>,
    ) -> Result<Self> {
        match (parity, &quadratic) {
            (Parity::Even, None) => {
                return Err(Error::InvalidForm("an even genus needs a quadratic discriminant form".into()))
            }
            (Parity::Odd, Some(_)) => {
                return Err(Error::InvalidForm("an odd genus carries only a bilinear form".into()))
            }
            (Parity::Even, Some(q)) => {
                if q.bilinear() != &bilinear {
                    return Err(Error::InvalidForm("quadratic form does not refine the bilinear form".into()));
                }
                let m = milgram_signature(q)? as i64;
                if m != signature.index().rem_euclid(8) {
                    return Err(Error::NoSuchGenus(format!(
                        "Milgram signature {m} differs from the index {} mod 8",
                        signature.index()
                    )));
                }
            }
            (Parity::Odd, None) => {}
        }
        Ok(GenusSymbol {
            rank: signature.rank(),
            signature,
            parity,
            bilinear,
            quadratic,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn bilinear(&self) -> &FiniteBilinearForm {
        &self.bilinear
    }

    pub fn quadratic(&self) -> Option<&FiniteQuadraticForm> {
        self.quadratic.as_ref()
    }

    pub fn is_definite(&self) -> bool {
        self.signature.is_definite()
    }

    pub fn disc_order(&self) -> BigInt {
        self.bilinear.group().order()
    }

    pub fn length(&self) -> usize {
        group_length(self.bilinear.group())
    }

    /// Discriminant form mod 2 for even genera, mod 1 for odd ones.
    pub fn form_string(&self) -> String {
        match &self.quadratic {
            Some(q) => q.render(),
            None => self.bilinear.render(),
        }
    }

    pub fn summary(&self) -> GenusSummary {
        GenusSummary {
            rank: self.rank,
            signature: [self.signature.pos, self.signature.neg],
            parity: self.parity,
            invariant_factors: self.bilinear.group().invariant_factors().iter().map(|d| d.to_string()).collect(),
            discriminant_form: self.form_string(),
            discriminant_form_mod_z: self.bilinear.render(),
        }
    }
}

impl fmt::Display for GenusSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}, signature {}, {}, form {}", self.rank, self.signature, self.parity, self.form_string())
    }
}

/// Serializable view of a genus symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct GenusSummary {
    pub rank: usize,
    pub signature: [usize; 2],
    pub parity: Parity,
    pub invariant_factors: Vec<String>,
    pub discriminant_form: String,
    pub discriminant_form_mod_z: String,
}

pub fn genus_of(l: &Lattice) -> GenusSymbol {
    let bilinear = discforms::disc_bilinear(l);
    let quadratic = match l.parity() {
        Parity::Even => Some(discforms::disc_quadratic(l).expect("lattice is even")),
        Parity::Odd => None,
    };
    GenusSymbol {
        rank: l.rank(),
        signature: l.signature(),
        parity: l.parity(),
        bilinear,
        quadratic,
    }
}

/// Nikulin's invariants agree: even genera are compared by quadratic form, odd
/// genera by bilinear form.
pub fn same_genus(a: &GenusSymbol, b: &GenusSymbol) -> Result<bool> {
    if a.rank != b.rank || a.signature != b.signature || a.parity != b.parity {
        return Ok(false);
    }
    if a.bilinear.group().invariant_factors() != b.bilinear.group().invariant_factors() {
        return Ok(false);
    }
    match (&a.quadratic, &b.quadratic) {
        (Some(qa), Some(qb)) => qa.is_isomorphic(qb),
        _ => a.bilinear.is_isomorphic(&b.bilinear),
    }
}

/// Odd: `⟨1⟩^p ⊕ ⟨-1⟩^n`. Even with index `τ`: `U^n ⊕ E8^(τ/8)` if `τ ≥ 0`,
/// otherwise `U^p ⊕ E8(-1)^(-τ/8)`.
pub fn classify_unimodular_indefinite(sig: Signature, parity: Parity) -> Result<NamedDecomposition> {
    if sig.is_definite() {
        return Err(Error::DefiniteInput(sig.pos, sig.neg));
    }
    let p = sig.pos as u32;
    let n = sig.neg as u32;
    let blocks = match parity {
        Parity::Odd => vec![Block::new(BlockKind::Diag(1), 1, p), Block::new(BlockKind::Diag(-1), 1, n)],
        Parity::Even => {
            let tau = sig.index();
            if tau.rem_euclid(8) != 0 {
                return Err(Error::EvenSignatureNotDivisibleBy8(tau));
            }
            let t = (tau.abs() / 8) as u32;
            let (s, scale) = if tau >= 0 { (n, 1) } else { (p, -1) };
            let mut b = vec![Block::new(BlockKind::U, 1, s)];
            if t > 0 {
                b.push(Block::new(BlockKind::E(8), scale, t));
            }
            b
        }
    };
    NamedDecomposition::new(blocks)
}

/// Unimodular fill `U^s ⊕ E8(±1)^t` of an even signature, if one exists.
fn even_unimodular_fill(sig: Signature) -> Option<NamedDecomposition> {
    if sig.index().rem_euclid(8) != 0 {
        return None;
    }
    if sig.rank() == 0 {
        return Some(NamedDecomposition::empty());
    }
    if sig.is_definite() {
        let t = (sig.rank() / 8) as u32;
        let scale = if sig.pos > 0 { 1 } else { -1 };
        return NamedDecomposition::new([Block::new(BlockKind::E(8), scale, t)]).ok();
    }
    classify_unimodular_indefinite(sig, Parity::Even).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassNumberOne {
    Decided(bool),
    Undecided,
}

impl Serialize for ClassNumberOne {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ClassNumberOne::Decided(b) => s.serialize_bool(*b),
            ClassNumberOne::Undecided => s.serialize_str("undecided"),
        }
    }
}

impl fmt::Display for ClassNumberOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassNumberOne::Decided(b) => write!(f, "{b}"),
            ClassNumberOne::Undecided => f.write_str("undecided"),
        }
    }
}

/// Sufficient criteria only: an indefinite genus has one class if it is even with
/// `ℓ(A) ≤ r - 2`, odd with `ℓ(A) ≤ r - 3`, or unimodular (where the
/// classification of indefinite unimodular forms applies directly).
pub fn class_number_one(g: &GenusSymbol) -> ClassNumberOne {
    if g.is_definite() || g.rank == 0 {
        return ClassNumberOne::Undecided;
    }
    let l = g.length();
    let r = g.rank;
    let ok = match g.parity {
        Parity::Even => l + 2 <= r,
        Parity::Odd => l + 3 <= r,
    };
    if ok || l == 0 {
        ClassNumberOne::Decided(true)
    } else {
        ClassNumberOne::Undecided
    }
}

/// Genus of `v⊥` for a primitive `v` with `v·v = hsq` in the unimodular lattice of
/// the given signature and parity.
pub fn complement_genus(ambient: Signature, parity: Parity, hsq: i64, characteristic: bool) -> Result<GenusSymbol> {
    if hsq == 0 {
        return Err(Error::IsotropicVector);
    }
    if (hsq > 0 && ambient.pos == 0) || (hsq < 0 && ambient.neg == 0) {
        return Err(Error::SignMismatch {
            hsq,
            pos: ambient.pos,
            neg: ambient.neg,
        });
    }
    if parity == Parity::Even && characteristic {
        return Err(Error::CharacteristicInEven);
    }
    if parity == Parity::Even && ambient.index().rem_euclid(8) != 0 && !ambient.is_definite() {
        return Err(Error::EvenSignatureNotDivisibleBy8(ambient.index()));
    }
    if characteristic && (hsq - ambient.index()).rem_euclid(8) != 0 {
        return Err(Error::NoSuchGenus(format!(
            "a characteristic vector has norm ≡ {} mod 8, not {hsq}",
            ambient.index().rem_euclid(8)
        )));
    }
    let signature = if hsq > 0 {
        Signature::new(ambient.pos - 1, ambient.neg)
    } else {
        Signature::new(ambient.pos, ambient.neg - 1)
    };
    if signature.rank() == 0 && hsq.abs() != 1 {
        return Err(Error::NoSuchGenus(format!("a rank-1 unimodular lattice has no vector of norm {hsq}")));
    }
    let even = parity == Parity::Even || characteristic || signature.rank() == 0;
    let bilinear = FiniteBilinearForm::cyclic(-1, hsq)?;
    if !even {
        return GenusSymbol::new(signature, Parity::Odd, bilinear, None);
    }
    let target = signature.index().rem_euclid(8) as u8;
    let mut chosen = None;
    for q in bilinear.quadratic_refinements()? {
        if milgram_signature(&q)? == target {
            chosen = Some(q);
            break;
        }
    }
    let q = chosen.ok_or_else(|| {
        Error::NoSuchGenus(format!("no quadratic refinement of {bilinear} has signature {target} mod 8"))
    })?;
    GenusSymbol::new(signature, Parity::Even, bilinear, Some(q))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Naming {
    /// Catalog decomposition, certified by the class-number criterion or an explicit isometry.
    Named(NamedDecomposition),
    /// A tabulated definite lattice without a block name, by label.
    Tabulated(String),
    Unnamed,
}

impl Naming {
    pub fn label(&self) -> Option<String> {
        match self {
            Naming::Named(d) => Some(d.to_string()),
            Naming::Tabulated(s) => Some(s.clone()),
            Naming::Unnamed => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Representative {
    pub naming: Naming,
    pub lattice: Lattice,
    pub ambient: NamedDecomposition,
    pub vector: LatticeVector,
    pub characteristic: bool,
}

struct AmbientOption {
    signature: Signature,
    parity: Parity,
    hsq: i64,
    characteristic: bool,
}

fn ambient_options(g: &GenusSymbol, d: i64) -> Vec<AmbientOption> {
    let sig = g.signature;
    let mut out = Vec::new();
    let shapes = [(Signature::new(sig.pos + 1, sig.neg), d), (Signature::new(sig.pos, sig.neg + 1), -d)];
    for (amb, hsq) in shapes {
        if amb.is_definite() {
            continue;
        }
        let options: &[(Parity, bool)] = match g.parity {
            Parity::Even => &[(Parity::Even, false), (Parity::Odd, true)],
            Parity::Odd => &[(Parity::Odd, false)],
        };
        for &(parity, characteristic) in options {
            if parity == Parity::Even && amb.index().rem_euclid(8) != 0 {
                continue;
            }
            out.push(AmbientOption {
                signature: amb,
                parity,
                hsq,
                characteristic,
            });
        }
    }
    out
}

/// Explicit lattice in the genus, built as `v⊥` inside a unimodular lattice of one
/// higher rank, plus a block name when one is certified.
pub fn standard_representative(g: &GenusSymbol) -> Result<Representative> {
    if g.length() > 1 {
        let factors: Vec<String> = g.bilinear.group().invariant_factors().iter().map(|d| d.to_string()).collect();
        return Err(Error::NonCyclicDiscGroup(format!("[{}]", factors.join(", "))));
    }
    let d = g.disc_order().to_i64().ok_or_else(|| Error::GroupTooLarge(g.disc_order().to_string()))?;
    let mut last_err = None;
    for opt in ambient_options(g, d) {
        let cg = match complement_genus(opt.signature, opt.parity, opt.hsq, opt.characteristic) {
            Ok(cg) => cg,
            Err(_) => continue,
        };
        if !same_genus(&cg, g)? {
            continue;
        }
        let ambient = classify_unimodular_indefinite(opt.signature, opt.parity)?;
        match complement_representative(&ambient, opt.hsq, opt.characteristic, g) {
            Err(e @ Error::NoAmbientVectorFound { .. }) => last_err = Some(e),
            other => return other,
        }
    }
    Err(last_err.unwrap_or_else(|| Error::NoSuchGenus(format!("no unimodular ambient realises {g}"))))
}

/// `v⊥` for the first primitive `v` of norm `hsq` and the given characteristic
/// type in `ambient`, checked against `g` and named when possible.
pub fn complement_representative(
    ambient: &NamedDecomposition,
    hsq: i64,
    characteristic: bool,
    g: &GenusSymbol,
) -> Result<Representative> {
    let amb_lattice = ambient.lattice()?;
    let v = match oracle::find_primitive_vector(&amb_lattice, hsq, characteristic) {
        Ok(v) => v,
        Err(Error::NotFoundWithinBound { norm, bound, .. }) => return Err(Error::NoAmbientVectorFound { norm, bound }),
        Err(e) => return Err(e),
    };
    let lattice = amb_lattice.orthogonal_complement(&v)?.lattice;
    if !same_genus(&genus_of(&lattice), g)? {
        return Err(Error::InvalidForm(format!("complement of {v} in {ambient} does not realise the genus {g}")));
    }
    let naming = name_genus(g, &lattice)?;
    Ok(Representative {
        naming,
        lattice,
        ambient: ambient.clone(),
        vector: v,
        characteristic,
    })
}

/// A candidate name is kept only when its genus matches and uniqueness is
/// certified, either by [`class_number_one`] or by an explicit isometry with the
/// constructed lattice.
pub fn name_genus(g: &GenusSymbol, constructed: &Lattice) -> Result<Naming> {
    let certified_by_criterion = class_number_one(g) == ClassNumberOne::Decided(true);
    let certify = |candidate: &Lattice| -> Result<bool> {
        if certified_by_criterion {
            return Ok(true);
        }
        match oracle::isometry_small(constructed, candidate, oracle::DEFAULT_BUDGET) {
            Ok(o) => Ok(o.witness().is_some()),
            Err(Error::RankTooLarge { .. }) | Err(Error::SearchInconclusive) | Err(Error::EntryTooLarge(_)) => {
                Ok(false)
            }
            Err(e) => Err(e),
        }
    };
    if let Some(name) = catalog_name(g)? {
        if certify(&name.lattice()?)? {
            return Ok(Naming::Named(name));
        }
    }
    if g.is_definite() {
        for k in 1..=8 {
            let row = definite_catalog(k)?;
            if row.named.is_none() && same_genus(&genus_of(&row.lattice), g)? && certify(&row.lattice)? {
                return Ok(Naming::Tabulated(row.label));
            }
        }
    }
    Ok(Naming::Unnamed)
}

pub const MAX_CORE_BLOCKS: usize = 4;

fn core_candidates(g: &GenusSymbol, d: i64) -> Vec<Block> {
    let mut out = Vec::new();
    let r = g.rank as u32;
    for a in 2..=d {
        if d % a == 0 {
            for s in [a, -a] {
                out.push(Block::once(BlockKind::Diag(s)));
            }
        }
    }
    for scale in [1, -1] {
        for n in 2..=r {
            if d % (n as i64 + 1) == 0 {
                out.push(Block::new(BlockKind::A(n), scale, 1));
            }
        }
        if d % 4 == 0 {
            for n in 4..=r {
                out.push(Block::new(BlockKind::D(n), scale, 1));
            }
        }
        if d % 3 == 0 && r >= 6 {
            out.push(Block::new(BlockKind::E(6), scale, 1));
        }
        if d % 2 == 0 && r >= 7 {
            out.push(Block::new(BlockKind::E(7), scale, 1));
        }
    }
    out.retain(|b| b.kind.rank() <= g.rank);
    out.sort();
    out
}

/// Searches decompositions `core ⊕ fill` where the core has at most
/// [`MAX_CORE_BLOCKS`] blocks from `⟨±a⟩, A_n(±1), D_n(±1), E6(±1), E7(±1)`
/// with determinants multiplying to `|A|`, and the fill is `U^s ⊕ E8(±1)^t`
/// (even genera) or `⟨1⟩^a ⊕ ⟨-1⟩^b` (odd genera).
pub fn catalog_name(g: &GenusSymbol) -> Result<Option<NamedDecomposition>> {
    let d = match g.disc_order().to_i64() {
        Some(d) => d,
        None => return Ok(None),
    };
    let cands = core_candidates(g, d);
    for size in 0..=MAX_CORE_BLOCKS {
        let mut found = None;
        let mut pick = Vec::new();
        search_cores(g, &cands, 0, size, d, &mut pick, &mut found)?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn search_cores(
    g: &GenusSymbol,
    cands: &[Block],
    start: usize,
    left: usize,
    remaining_det: i64,
    pick: &mut Vec<Block>,
    found: &mut Option<NamedDecomposition>,
) -> Result<()> {
    if found.is_some() {
        return Ok(());
    }
    if left == 0 {
        if remaining_det == 1 {
            if let Some(n) = try_core(g, pick)? {
                *found = Some(n);
            }
        }
        return Ok(());
    }
    for i in start..cands.len() {
        let det = cands[i].kind.det().abs();
        if remaining_det % det != 0 {
            continue;
        }
        pick.push(cands[i]);
        search_cores(g, cands, i, left - 1, remaining_det / det, pick, found)?;
        pick.pop();
        if found.is_some() {
            return Ok(());
        }
    }
    Ok(())
}

fn try_core(g: &GenusSymbol, core: &[Block]) -> Result<Option<NamedDecomposition>> {
    let core = NamedDecomposition::new(core.iter().copied())?;
    let cs = core.signature();
    if cs.pos > g.signature.pos || cs.neg > g.signature.neg {
        return Ok(None);
    }
    let rest = Signature::new(g.signature.pos - cs.pos, g.signature.neg - cs.neg);
    let fill = match g.parity {
        Parity::Even => {
            if core.parity() == Parity::Odd {
                return Ok(None);
            }
            match even_unimodular_fill(rest) {
                Some(f) => f,
                None => return Ok(None),
            }
        }
        Parity::Odd => NamedDecomposition::new([
            Block::new(BlockKind::Diag(1), 1, rest.pos as u32),
            Block::new(BlockKind::Diag(-1), 1, rest.neg as u32),
        ]
        .into_iter()
        .filter(|b| b.mult > 0))?,
    };
    let full = core.plus(&fill);
    if full.parity() != g.parity || full.signature() != g.signature {
        return Ok(None);
    }
    // the fill is unimodular, so the core carries the whole discriminant form
    let core_lattice = core.lattice()?;
    let cg = genus_of(&core_lattice);
    let matches = match (&cg.quadratic, &g.quadratic) {
        (Some(a), Some(b)) => a.is_isomorphic(b)?,
        _ => cg.bilinear.is_isomorphic(&g.bilinear)?,
    };
    Ok(matches.then_some(full))
}

/// JSON record describing one lattice.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeRecord {
    pub genus: GenusSummary,
    pub named: Option<String>,
    pub gram: Vec<Vec<i64>>,
    pub class_number_one: ClassNumberOne,
}

pub fn describe(l: &Lattice) -> Result<LatticeRecord> {
    let g = genus_of(l);
    let named = match name_genus(&g, l) {
        Ok(n) => n.label(),
        Err(Error::GroupTooLarge(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(LatticeRecord {
        genus: g.summary(),
        named,
        gram: l.gram_i64()?,
        class_number_one: class_number_one(&g),
    })
}

/// A row of the table of definite primitive lattices for canonically polarized
/// surfaces with `χ = 1`, indexed by `k = c1²`.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub c1sq: i64,
    pub label: String,
    pub named: Option<NamedDecomposition>,
    pub lattice: Lattice,
    /// The discriminant form as printed in the table, as a form mod 1.
    pub printed_form: FiniteBilinearForm,
    pub printed_form_text: &'static str,
}

pub fn definite_catalog(c1sq: i64) -> Result<CatalogEntry> {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let (name, text, printed): (Option<&str>, &'static str, FiniteBilinearForm) = match c1sq {
        1 => (Some("E8(-1)"), "0", FiniteBilinearForm::trivial()),
        2 => (Some("E7(-1)"), "⟨-1/2⟩", FiniteBilinearForm::cyclic(-1, 2)?),
        3 => (Some("E6(-1)"), "⟨1/3⟩", FiniteBilinearForm::cyclic(1, 3)?),
        4 => (Some("D5(-1)"), "⟨-1/4⟩", FiniteBilinearForm::cyclic(-1, 4)?),
        5 => (Some("A4(-1)"), "⟨-4/5⟩", FiniteBilinearForm::cyclic(-4, 5)?),
        6 => (
            Some("A2(-1) + <-2>"),
            "⟨1/3⟩ ⊕ ⟨-1/2⟩",
            FiniteBilinearForm::diagonal(&[(3, q(1, 3)), (2, q(-1, 2))])?,
        ),
        7 => (None, "⟨1/7⟩", FiniteBilinearForm::cyclic(1, 7)?),
        8 => (Some("<-8>"), "⟨-1/8⟩", FiniteBilinearForm::cyclic(-1, 8)?),
        _ => return Err(Error::OutOfRange(c1sq)),
    };
    let (label, named, lattice) = match name {
        Some(s) => {
            let n: NamedDecomposition = s.parse()?;
            (n.to_string(), Some(n.clone()), n.lattice()?)
        }
        None => {
            let l = Lattice::from_rows(&[vec![-4, 1], vec![1, -2]])?;
            ("[[-4,1],[1,-2]]".to_string(), None, l)
        }
    };
    Ok(CatalogEntry {
        c1sq,
        label,
        named,
        lattice,
        printed_form: printed,
        printed_form_text: text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nd(s: &str) -> NamedDecomposition {
        s.parse().unwrap()
    }

    fn genus(s: &str) -> GenusSymbol {
        genus_of(&nd(s).lattice().unwrap())
    }

    #[test]
    fn genus_examples() {
        let g = genus("U + E8(-1)");
        assert_eq!((g.rank(), g.signature(), g.parity()), (10, Signature::new(1, 9), Parity::Even));
        assert!(g.bilinear().group().is_trivial());
        let g = genus("<-2> + E8(-1)");
        assert_eq!((g.rank(), g.signature()), (9, Signature::new(0, 9)));
        assert_eq!(g.bilinear().group().invariant_factors(), vec![BigInt::from(2)]);
        let g = genus("<1>");
        assert_eq!((g.rank(), g.parity()), (1, Parity::Odd));
        assert!(g.quadratic().is_none());
    }

    #[test]
    fn unimodular_classification() {
        let k = classify_unimodular_indefinite(Signature::new(3, 19), Parity::Even).unwrap();
        assert_eq!(k, nd("U^3 + E8(-1)^2"));
        let e = classify_unimodular_indefinite(Signature::new(1, 9), Parity::Even).unwrap();
        assert_eq!(e, nd("U + E8(-1)"));
        let o = classify_unimodular_indefinite(Signature::new(2, 1), Parity::Odd).unwrap();
        assert_eq!(o, nd("<1>^2 + <-1>"));
        assert_eq!(classify_unimodular_indefinite(Signature::new(9, 1), Parity::Even).unwrap(), nd("U + E8"));
        assert_eq!(
            classify_unimodular_indefinite(Signature::new(0, 8), Parity::Even),
            Err(Error::DefiniteInput(0, 8))
        );
        assert_eq!(
            classify_unimodular_indefinite(Signature::new(2, 1), Parity::Even),
            Err(Error::EvenSignatureNotDivisibleBy8(1))
        );
    }

    #[test]
    fn kneser_thresholds() {
        assert_eq!(class_number_one(&genus("<2> + U + E8(-1)")), ClassNumberOne::Decided(true));
        assert_eq!(class_number_one(&genus("<-2> + E8(-1)")), ClassNumberOne::Undecided);
        assert_eq!(class_number_one(&genus("<1> + <-1> + <3>")), ClassNumberOne::Undecided);
        assert_eq!(class_number_one(&genus("<1> + <-1>^2 + <3>")), ClassNumberOne::Decided(true));
        assert_eq!(class_number_one(&genus("<1> + <-1>")), ClassNumberOne::Decided(true));
    }

    #[test]
    fn complement_genus_examples() {
        let g = complement_genus(Signature::new(1, 9), Parity::Even, 2, false).unwrap();
        assert_eq!((g.signature(), g.parity()), (Signature::new(0, 9), Parity::Even));
        assert!(same_genus(&g, &genus("<-2> + E8(-1)")).unwrap());

        let g = complement_genus(Signature::new(7, 37), Parity::Odd, 2, true).unwrap();
        assert_eq!((g.signature(), g.parity()), (Signature::new(6, 37), Parity::Even));
        assert_eq!(g.quadratic().unwrap().qvalues(), &[BigRational::new(1.into(), 2.into())]);

        let g = complement_genus(Signature::new(2, 1), Parity::Odd, 1, false).unwrap();
        assert_eq!((g.signature(), g.parity()), (Signature::new(1, 1), Parity::Odd));

        assert_eq!(
            complement_genus(Signature::new(0, 3), Parity::Odd, 1, false),
            Err(Error::SignMismatch { hsq: 1, pos: 0, neg: 3 })
        );
        assert_eq!(complement_genus(Signature::new(1, 9), Parity::Even, 2, true), Err(Error::CharacteristicInEven));
        assert!(matches!(
            complement_genus(Signature::new(1, 8), Parity::Odd, 2, true),
            Err(Error::NoSuchGenus(_))
        ));
    }

    #[test]
    fn named_representatives() {
        let g = complement_genus(Signature::new(3, 18), Parity::Odd, 1, true).unwrap();
        let r = standard_representative(&g).unwrap();
        assert_eq!(r.naming, Naming::Named(nd("U^2 + E8(-1)^2")));

        let g = genus("<2> + U + E8(-1)");
        let r = standard_representative(&g).unwrap();
        assert_eq!(r.naming, Naming::Named(nd("<2> + U + E8(-1)")));
        assert!(same_genus(&genus_of(&r.lattice), &g).unwrap());

        let g = genus("<-2> + E8(-1)");
        let r = standard_representative(&g).unwrap();
        assert_eq!(r.naming, Naming::Named(nd("<-2> + E8(-1)")));

        assert!(matches!(standard_representative(&genus("D4 + U")), Err(Error::NonCyclicDiscGroup(_))));
        assert!(matches!(standard_representative(&genus("<2> + <4> + U")), Err(Error::NonCyclicDiscGroup(_))));
    }

    #[test]
    fn catalog_rows() {
        for k in 1..=8 {
            let row = definite_catalog(k).unwrap();
            assert_eq!(row.lattice.rank() as i64, 9 - k);
            assert_eq!(row.lattice.det().magnitude(), BigInt::from(k).magnitude());
            assert_eq!(row.lattice.parity(), Parity::Even);
            assert_eq!(row.lattice.signature().pos, 0);
        }
        assert_eq!(definite_catalog(2).unwrap().label, "E7(-1)");
        assert_eq!(definite_catalog(7).unwrap().label, "[[-4,1],[1,-2]]");
        assert_eq!(definite_catalog(0).unwrap_err(), Error::OutOfRange(0));
        assert_eq!(definite_catalog(9).unwrap_err(), Error::OutOfRange(9));
    }

    #[test]
    fn tabulated_naming() {
        let row = definite_catalog(7).unwrap();
        let r = standard_representative(&genus_of(&row.lattice)).unwrap();
        assert_eq!(r.naming, Naming::Tabulated("[[-4,1],[1,-2]]".into()));
    }
}
