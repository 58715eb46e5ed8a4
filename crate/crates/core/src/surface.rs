//! Surface invariants from `(b1, c1², c2)`, intersection lattices, and the
//! primitive lattice `h⊥` of a primitive ample class `h`.

use std::fmt;

use serde::Serialize;

use crate::blocks::{Block, BlockKind, NamedDecomposition};
use crate::classifier::{
    class_number_one, classify_unimodular_indefinite, complement_genus, complement_representative, definite_catalog,
    genus_of, same_genus, ClassNumberOne, GenusSummary, GenusSymbol, Naming,
};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector, Parity, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub b1: i64,
    pub c1sq: i64,
    pub c2: i64,
    pub q: i64,
    pub chi: i64,
    pub pg: i64,
    /// Topological Euler number, equal to `c2`.
    pub e: i64,
    pub tau: i64,
    pub b2: i64,
    pub h11: i64,
    pub signature: Signature,
}

/// `q = b1/2`, `χ = (c1² + c2)/12`, `p_g = χ - 1 + q`, `τ = (c1² - 2c2)/3`,
/// `b2 = c2 - 2 + 2b1`, `h¹¹ = b2 - 2p_g`, signature `(2p_g + 1, h¹¹ - 1)`.
pub fn derive_invariants(b1: i64, c1sq: i64, c2: i64) -> Result<SurfaceInvariants> {
    if b1 < 0 {
        return Err(Error::NegativeB1(b1));
    }
    if b1 % 2 != 0 {
        return Err(Error::OddB1(b1));
    }
    if (c1sq + c2) % 12 != 0 {
        return Err(Error::NoetherNonIntegral(c1sq + c2));
    }
    if (c1sq - 2 * c2) % 3 != 0 {
        return Err(Error::IndexNonIntegral(c1sq - 2 * c2));
    }
    let q = b1 / 2;
    let chi = (c1sq + c2) / 12;
    let pg = chi - 1 + q;
    if pg < 0 {
        return Err(Error::NegativePg(pg));
    }
    let tau = (c1sq - 2 * c2) / 3;
    let b2 = c2 - 2 + 2 * b1;
    if b2 < 1 {
        return Err(Error::NonPositiveB2(b2));
    }
    let h11 = b2 - 2 * pg;
    if h11 < 1 {
        return Err(Error::NonPositiveH11(h11));
    }
    let signature = Signature::new((2 * pg + 1) as usize, (h11 - 1) as usize);
    debug_assert_eq!(signature.index(), tau);
    Ok(SurfaceInvariants {
        b1,
        c1sq,
        c2,
        q,
        chi,
        pg,
        e: c2,
        tau,
        b2,
        h11,
        signature,
    })
}

impl SurfaceInvariants {
    /// Invariants of the profile `(q, p_g, c1², c2) = (0, 1, 18, 6)`, whose
    /// existence is open.
    pub fn is_exotic_ball_quotient(&self) -> bool {
        (self.q, self.pg, self.c1sq, self.c2) == (0, 1, 18, 6)
    }
}

/// Invariants after blowing up a point: `c1² - 1`, `c2 + 1`, same `b1`. The
/// blown-up intersection lattice is `H ⊕ ⟨-1⟩`, hence odd.
pub fn blow_up_invariants(inv: &SurfaceInvariants) -> Result<SurfaceInvariants> {
    derive_invariants(inv.b1, inv.c1sq - 1, inv.c2 + 1)
}

pub fn blow_up_lattice(h: &NamedDecomposition) -> NamedDecomposition {
    h.plus(&NamedDecomposition::new([Block::once(BlockKind::Diag(-1))]).expect("⟨-1⟩ is a valid block"))
}

/// `H²(X, Z)` modulo torsion as an indefinite unimodular lattice of the given parity.
pub fn intersection_lattice(inv: &SurfaceInvariants, parity: Parity) -> Result<NamedDecomposition> {
    if inv.signature.neg == 0 {
        return Err(Error::PositiveDefiniteTotal(inv.b2));
    }
    if parity == Parity::Even && inv.tau.rem_euclid(8) != 0 {
        return Err(Error::EvenParityIndexNot8Divisible(inv.tau));
    }
    classify_unimodular_indefinite(inv.signature, parity)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    IndefiniteTheorem,
    DefiniteTable,
    DefiniteUndecided,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::IndefiniteTheorem => "indefinite-theorem",
            Route::DefiniteTable => "definite-table",
            Route::DefiniteUndecided => "definite-undecided",
        })
    }
}

#[derive(Debug, Clone)]
pub struct PrimitiveLatticeResult {
    pub invariants: SurfaceInvariants,
    pub parity: Parity,
    pub intersection: NamedDecomposition,
    pub h: LatticeVector,
    pub hsq: i64,
    pub h_characteristic: bool,
    pub genus: GenusSymbol,
    pub named: Naming,
    pub gram: Lattice,
    pub class_number_one: ClassNumberOne,
    pub route: Route,
}

/// JSON record for a primitive-lattice computation.
#[derive(Debug, Clone, Serialize)]
pub struct PrimitiveLatticeRecord {
    pub invariants: SurfaceInvariants,
    pub parity: Parity,
    pub intersection_lattice: String,
    pub h: Vec<i64>,
    pub h_sq: i64,
    pub h_characteristic: bool,
    pub genus: GenusSummary,
    pub named: Option<String>,
    pub gram: Vec<Vec<i64>>,
    pub class_number_one: ClassNumberOne,
    pub route: Route,
}

impl PrimitiveLatticeResult {
    pub fn record(&self) -> Result<PrimitiveLatticeRecord> {
        Ok(PrimitiveLatticeRecord {
            invariants: self.invariants,
            parity: self.parity,
            intersection_lattice: self.intersection.to_string(),
            h: self.h.to_i64()?,
            h_sq: self.hsq,
            h_characteristic: self.h_characteristic,
            genus: self.genus.summary(),
            named: self.named.label(),
            gram: self.gram.gram_i64()?,
            class_number_one: self.class_number_one,
            route: self.route,
        })
    }
}

/// Options for [`primitive_lattice`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Embedding {
    pub parity: Parity,
    pub hsq: i64,
    pub h_characteristic: bool,
    /// `h` is the canonical class of a canonically polarized surface.
    pub canonically_polarized: bool,
}

/// `h⊥` inside `H²(X, Z)`.
///
/// With `p_g ≥ 1` the lattice is indefinite and its class is fixed by the genus
/// (route `indefinite-theorem`), provided the complement rank is large enough:
/// an odd complement with `b2 = 4` is refused. With `p_g = 0` it is negative
/// definite; for canonically polarized surfaces with `χ = 1, q = 0` it is read
/// off the table of definite lattices (route `definite-table`), otherwise an
/// explicit member of the genus is returned with the class number left open.
pub fn primitive_lattice(inv: &SurfaceInvariants, emb: Embedding) -> Result<PrimitiveLatticeResult> {
    let Embedding {
        parity,
        hsq,
        h_characteristic,
        canonically_polarized,
    } = emb;
    if hsq <= 0 {
        return Err(Error::NonPositiveHsq(hsq));
    }
    if parity == Parity::Even && h_characteristic {
        return Err(Error::CharacteristicInEven);
    }
    if inv.is_exotic_ball_quotient() {
        return Err(Error::ExoticBallQuotient);
    }
    let intersection = intersection_lattice(inv, parity)?;
    let table_case = inv.pg == 0 && canonically_polarized && inv.chi == 1 && inv.q == 0;
    if table_case && (hsq != inv.c1sq || !h_characteristic) {
        return Err(Error::InconsistentPolarization { c1sq: inv.c1sq, hsq });
    }
    let genus = complement_genus(inv.signature, parity, hsq, h_characteristic)?;
    let complement_even = genus.parity() == Parity::Even;

    let (route, table_row) = if inv.pg >= 1 {
        if !complement_even && inv.b2 == 4 {
            return Err(Error::OddComplementRankGuard);
        }
        let (min_b2, parity_name) = if complement_even { (4, "even") } else { (5, "odd") };
        if inv.b2 < min_b2 {
            return Err(Error::ComplementRankGuard {
                rank: genus.rank(),
                parity: parity_name,
            });
        }
        (Route::IndefiniteTheorem, None)
    } else if table_case {
        (Route::DefiniteTable, Some(definite_catalog(inv.c1sq)?))
    } else {
        (Route::DefiniteUndecided, None)
    };

    let rep = complement_representative(&intersection, hsq, h_characteristic, &genus)?;
    let (named, cn1) = match route {
        Route::IndefiniteTheorem => (rep.naming, class_number_one(&genus)),
        Route::DefiniteTable => {
            let row = table_row.expect("table route has a row");
            if !same_genus(&genus_of(&row.lattice), &genus)? {
                return Err(Error::NoSuchGenus(format!(
                    "the tabulated lattice {} is not in the genus {genus}",
                    row.label
                )));
            }
            let named = match row.named {
                Some(n) => Naming::Named(n),
                None => Naming::Tabulated(row.label),
            };
            (named, ClassNumberOne::Decided(true))
        }
        Route::DefiniteUndecided => (rep.naming, ClassNumberOne::Undecided),
    };
    Ok(PrimitiveLatticeResult {
        invariants: *inv,
        parity,
        intersection,
        h: rep.vector,
        hsq,
        h_characteristic,
        genus,
        named,
        gram: rep.lattice,
        class_number_one: cn1,
        route,
    })
}

/// Constraint set behind [`enumerate_candidates`].
pub const CANDIDATE_ASSUMPTION: &str =
    "minimal surfaces of general type with K ample: chi >= 1, c1^2 > 0, c2 > 0, Noether inequality p_g <= c1^2/2 + 2, \
     Debarre inequality 2 p_g <= c1^2 when q > 0, BMY c1^2 <= 3 c2";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateRow {
    pub chi: i64,
    pub c2: i64,
    /// Admissible `(p_g, q)` pairs.
    pub pg_q: Vec<(i64, i64)>,
    /// `(s, t)` with `h⊥ ≅ U^s ⊕ E8(-1)^t`, for `c1² = 1` where `h⊥` is even unimodular.
    pub st: Option<(usize, usize)>,
}

/// Possible `(χ, c2, (p_g, q))` for canonically polarized surfaces with the given `c1²`.
pub fn enumerate_candidates(c1sq: i64) -> Vec<CandidateRow> {
    let mut rows = Vec::new();
    if c1sq <= 0 {
        return rows;
    }
    let chi_max = c1sq / 2 + 3;
    for chi in 1..=chi_max {
        let c2 = 12 * chi - c1sq;
        if c2 <= 0 || c1sq > 3 * c2 {
            continue;
        }
        let mut pg_q = Vec::new();
        for q in 0.. {
            let pg = chi - 1 + q;
            if 2 * pg > c1sq + 4 {
                break;
            }
            if q > 0 && 2 * pg > c1sq {
                break;
            }
            pg_q.push((pg, q));
        }
        if pg_q.is_empty() {
            continue;
        }
        let st = if c1sq == 1 {
            let (pg, q) = pg_q[0];
            derive_invariants(2 * q, c1sq, c2).ok().map(|inv| {
                debug_assert_eq!(inv.pg, pg);
                let p = inv.signature.pos - 1;
                let n = inv.signature.neg;
                (p.min(n), (n - p) / 8)
            })
        } else {
            None
        };
        rows.push(CandidateRow { chi, c2, pg_q, st });
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassValue {
    Fixed(i64),
    Either(i64, i64),
    /// `constant + per_genus · g`
    InGenus { constant: i64, per_genus: i64 },
    AtLeast(i64),
    Positive,
    Unspecified,
}

impl fmt::Display for ClassValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassValue::Fixed(x) => write!(f, "{x}"),
            ClassValue::Either(a, b) => write!(f, "{a} or {b}"),
            ClassValue::InGenus { constant: 0, per_genus } => write!(f, "{per_genus}g"),
            ClassValue::InGenus { constant, per_genus } if per_genus == &-constant => write!(f, "{constant}(1-g)"),
            ClassValue::InGenus { constant, per_genus } => write!(f, "{constant} + {per_genus}g"),
            ClassValue::AtLeast(x) => write!(f, ">= {x}"),
            ClassValue::Positive => f.write_str("> 0"),
            ClassValue::Unspecified => f.write_str(""),
        }
    }
}

/// One line of the Enriques classification of minimal projective surfaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrClassRow {
    pub kodaira: &'static str,
    pub class: &'static str,
    pub b1: ClassValue,
    pub pg: ClassValue,
    pub c1sq: ClassValue,
    pub c2: ClassValue,
}

pub const ENRIQUES_CLASSES: [&str; 8] = [
    "rational",
    "ruled",
    "torus",
    "K3",
    "Enriques",
    "bielliptic",
    "properly elliptic",
    "general type",
];

/// The row for a class name. Rows are reproduced as tabulated; in particular the
/// torus row lists `p_g = 2`, while the Noether formula with `b1 = 4`, `c1² = c2 = 0`
/// gives `p_g = 1`.
pub fn enriques_class_row(name: &str) -> Result<EnrClassRow> {
    use ClassValue::*;
    let key = name.trim().to_ascii_lowercase().replace(['-', '_'], " ");
    let row = |kodaira, class, b1, pg, c1sq, c2| EnrClassRow {
        kodaira,
        class,
        b1,
        pg,
        c1sq,
        c2,
    };
    Ok(match key.as_str() {
        "rational" | "minimal rational" => row("-inf", "minimal rational surfaces", Fixed(0), Fixed(0), Either(8, 9), Either(4, 3)),
        "ruled" => row(
            "-inf",
            "ruled surfaces of genus > 0",
            InGenus { constant: 0, per_genus: 2 },
            Fixed(0),
            InGenus { constant: 8, per_genus: -8 },
            InGenus { constant: 4, per_genus: -4 },
        ),
        "torus" | "tori" => row("0", "two-dimensional tori", Fixed(4), Fixed(2), Fixed(0), Fixed(0)),
        "k3" => row("0", "K3 surfaces", Fixed(0), Fixed(1), Fixed(0), Fixed(24)),
        "enriques" => row("0", "Enriques surfaces", Fixed(0), Fixed(0), Fixed(0), Fixed(12)),
        "bielliptic" | "hyperelliptic" => row("0", "bielliptic surfaces", Fixed(2), Fixed(0), Fixed(0), Fixed(0)),
        "properly elliptic" | "elliptic" => {
            row("1", "minimal properly elliptic surfaces", Unspecified, Unspecified, Fixed(0), AtLeast(0))
        }
        "general type" => row("2", "minimal surfaces of general type", Unspecified, Unspecified, Positive, Positive),
        _ => return Err(Error::UnknownClass(name.to_string())),
    })
}

impl EnrClassRow {
    /// Sample `(label, b1, c1², c2)` instances of the row: both rational minimal
    /// models, ruled surfaces over curves of genus 1, 2 and 3, and a few known
    /// invariant triples for the classes whose row leaves values open.
    pub fn instances(&self) -> Vec<(String, i64, i64, i64)> {
        match self.class {
            "minimal rational surfaces" => vec![("P2".into(), 0, 9, 3), ("Hirzebruch".into(), 0, 8, 4)],
            "ruled surfaces of genus > 0" => (1..=3)
                .map(|g| (format!("ruled, g = {g}"), 2 * g, 8 * (1 - g), 4 * (1 - g)))
                .collect(),
            "minimal properly elliptic surfaces" => vec![
                ("elliptic, p_g = 0, q = 0".into(), 0, 0, 12),
                ("elliptic, p_g = 2, q = 0".into(), 0, 0, 36),
                ("elliptic, p_g = 2, q = 1".into(), 2, 0, 24),
            ],
            "minimal surfaces of general type" => vec![
                ("Godeaux".into(), 0, 1, 11),
                ("Kunev".into(), 0, 1, 23),
                ("Horikawa c1^2 = 2".into(), 0, 2, 46),
                ("p_g = q = 1, c1^2 = 2".into(), 2, 2, 10),
                ("fake projective plane".into(), 0, 9, 3),
            ],
            _ => {
                let fixed = |v: &ClassValue| match v {
                    ClassValue::Fixed(x) => *x,
                    _ => unreachable!("remaining rows are fixed"),
                };
                vec![(self.class.into(), fixed(&self.b1), fixed(&self.c1sq), fixed(&self.c2))]
            }
        }
    }
}
