//! Named orthogonal decompositions into standard blocks: `⟨a⟩`, `U`, `Aₙ`, `Dₙ`,
//! `E₆`, `E₇`, `E₈`, each optionally scaled and repeated.
//!
//! String grammar:
//!
//! ```text
//! block := "U" | "A" n | "D" n | "E" n | "<" int ">"
//! term  := block ["(" int ")"] ["^" int]
//! expr  := term ("+" term)*
//! ```
//!
//! `⟨`/`⟩` are accepted in place of `<`/`>`; display uses them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, Parity, Signature};

/// Gram matrix of E₈ in the Bourbaki labelling; E₆ and E₇ are its leading minors.
pub const E8_GRAM: [[i64; 8]; 8] = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Diag(i64),
    U,
    A(u32),
    D(u32),
    E(u32),
}

impl BlockKind {
    fn order_key(&self) -> (u8, i64) {
        match *self {
            BlockKind::Diag(a) => (0, a),
            BlockKind::U => (1, 0),
            BlockKind::A(n) => (2, n as i64),
            BlockKind::D(n) => (3, n as i64),
            BlockKind::E(n) => (4, n as i64),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            BlockKind::Diag(a) => a != 0,
            BlockKind::U => true,
            BlockKind::A(n) => n >= 1,
            BlockKind::D(n) => n >= 4,
            BlockKind::E(n) => (6..=8).contains(&n),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnknownBlock(self.symbol()))
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            BlockKind::Diag(_) => 1,
            BlockKind::U => 2,
            BlockKind::A(n) | BlockKind::D(n) | BlockKind::E(n) => n as usize,
        }
    }

    /// Unscaled determinant.
    pub fn det(&self) -> i64 {
        match *self {
            BlockKind::Diag(a) => a,
            BlockKind::U => -1,
            BlockKind::A(n) => n as i64 + 1,
            BlockKind::D(_) => 4,
            BlockKind::E(n) => 9 - n as i64,
        }
    }

    fn symbol(&self) -> String {
        match *self {
            BlockKind::Diag(a) => format!("⟨{a}⟩"),
            BlockKind::U => "U".into(),
            BlockKind::A(n) => format!("A{n}"),
            BlockKind::D(n) => format!("D{n}"),
            BlockKind::E(n) => format!("E{n}"),
        }
    }

    /// Unscaled Gram matrix.
    pub fn gram(&self) -> Result<Vec<Vec<i64>>> {
        self.validate()?;
        let n = self.rank();
        let mut g = vec![vec![0i64; n]; n];
        match *self {
            BlockKind::Diag(a) => g[0][0] = a,
            BlockKind::U => {
                g[0][1] = 1;
                g[1][0] = 1;
            }
            BlockKind::A(_) => {
                for i in 0..n {
                    g[i][i] = 2;
                    if i + 1 < n {
                        g[i][i + 1] = -1;
                        g[i + 1][i] = -1;
                    }
                }
            }
            BlockKind::D(_) => {
                // chain 0 - 1 - ... - (n-2), with n-1 attached to n-3
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 0..n - 2 {
                    g[i][i + 1] = -1;
                    g[i + 1][i] = -1;
                }
                g[n - 1][n - 3] = -1;
                g[n - 3][n - 1] = -1;
            }
            BlockKind::E(_) => {
                for i in 0..n {
                    g[i][..n].copy_from_slice(&E8_GRAM[i][..n]);
                }
            }
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub kind: BlockKind,
    pub scale: i64,
    pub mult: u32,
}

impl Block {
    pub fn new(kind: BlockKind, scale: i64, mult: u32) -> Self {
        Block { kind, scale, mult }
    }

    pub fn once(kind: BlockKind) -> Self {
        Block::new(kind, 1, 1)
    }

    fn validate(&self) -> Result<()> {
        self.kind.validate()?;
        if self.scale == 0 {
            return Err(Error::ZeroScale);
        }
        if self.mult == 0 {
            return Err(Error::Parse {
                input: self.to_string(),
                reason: "multiplicity must be at least 1".into(),
            });
        }
        Ok(())
    }

    fn normalized(self) -> Block {
        match self.kind {
            BlockKind::Diag(a) => Block::new(BlockKind::Diag(a * self.scale), 1, self.mult),
            _ => self,
        }
    }

    fn single_signature(&self) -> Signature {
        let r = self.kind.rank();
        match self.kind {
            BlockKind::U => Signature::new(1, 1),
            BlockKind::Diag(a) => {
                if a * self.scale > 0 {
                    Signature::new(1, 0)
                } else {
                    Signature::new(0, 1)
                }
            }
            _ if self.scale > 0 => Signature::new(r, 0),
            _ => Signature::new(0, r),
        }
    }
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Block {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.kind.order_key(), self.scale, self.mult).cmp(&(other.kind.order_key(), other.scale, other.mult))
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.kind.symbol())?;
        if self.scale != 1 {
            write!(f, "({})", self.scale)?;
        }
        if self.mult != 1 {
            write!(f, "^{}", self.mult)?;
        }
        Ok(())
    }
}

/// Multiset of scaled standard blocks, kept in canonical order: diagonal blocks by
/// entry, then `U`, `A`, `D`, `E` by index, ties broken by scale.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NamedDecomposition {
    blocks: Vec<Block>,
}

impl NamedDecomposition {
    pub fn new(blocks: impl IntoIterator<Item = Block>) -> Result<Self> {
        let mut out: Vec<Block> = Vec::new();
        for b in blocks {
            b.validate()?;
            let b = b.normalized();
            match out.iter_mut().find(|x| x.kind == b.kind && x.scale == b.scale) {
                Some(x) => x.mult += b.mult,
                None => out.push(b),
            }
        }
        out.sort();
        Ok(NamedDecomposition { blocks: out })
    }

    pub fn empty() -> Self {
        NamedDecomposition::default()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn plus(&self, other: &NamedDecomposition) -> NamedDecomposition {
        NamedDecomposition::new(self.blocks.iter().chain(&other.blocks).copied())
            .expect("blocks were validated on construction")
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.kind.rank() * b.mult as usize).sum()
    }

    pub fn signature(&self) -> Signature {
        self.blocks.iter().fold(Signature::default(), |acc, b| {
            let s = b.single_signature();
            acc + Signature::new(s.pos * b.mult as usize, s.neg * b.mult as usize)
        })
    }

    pub fn det(&self) -> BigInt {
        self.blocks.iter().fold(BigInt::one(), |acc, b| {
            let one = BigInt::from(b.kind.det()) * Pow::pow(BigInt::from(b.scale), b.kind.rank() as u32);
            acc * Pow::pow(one, b.mult)
        })
    }

    pub fn parity(&self) -> Parity {
        let odd = self.blocks.iter().any(|b| match b.kind {
            BlockKind::Diag(a) => a % 2 != 0,
            _ => false,
        });
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Block-diagonal Gram matrix in canonical block order.
    pub fn lattice(&self) -> Result<Lattice> {
        let n = self.rank();
        let mut g = vec![vec![0i64; n]; n];
        let mut off = 0;
        for b in &self.blocks {
            let base = b.kind.gram()?;
            let r = base.len();
            for _ in 0..b.mult {
                for i in 0..r {
                    for j in 0..r {
                        g[off + i][off + j] = base[i][j] * b.scale;
                    }
                }
                off += r;
            }
        }
        Lattice::from_rows(&g)
    }
}

/// Builds the lattice of a named decomposition.
pub fn standard(expr: &NamedDecomposition) -> Result<Lattice> {
    expr.lattice()
}

impl fmt::Display for NamedDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("0");
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            input: self.input.to_string(),
            reason: reason.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+') | Some('−')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos]
            .iter()
            .map(|&c| if c == '−' { '-' } else { c })
            .collect();
        s.parse().map_err(|_| self.err(format!("expected an integer at position {start}")))
    }

    fn block(&mut self) -> Result<BlockKind> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        let index = |p: &mut Self| -> Result<u32> {
            let n = p.int()?;
            u32::try_from(n).map_err(|_| p.err("block index must be positive"))
        };
        let kind = match c {
            'U' => BlockKind::U,
            'A' => BlockKind::A(index(self)?),
            'D' => BlockKind::D(index(self)?),
            'E' => BlockKind::E(index(self)?),
            '<' | '⟨' => {
                let a = self.int()?;
                if !(self.eat('>') || self.eat('⟩')) {
                    return Err(self.err("unterminated ⟨a⟩ block"));
                }
                BlockKind::Diag(a)
            }
            other => return Err(Error::UnknownBlock(other.to_string())),
        };
        kind.validate()?;
        Ok(kind)
    }

    fn term(&mut self) -> Result<Block> {
        let kind = self.block()?;
        let scale = if self.eat('(') {
            let m = self.int()?;
            if !self.eat(')') {
                return Err(self.err("expected `)`"));
            }
            m
        } else {
            1
        };
        let mult = if self.eat('^') {
            let k = self.int()?;
            u32::try_from(k).ok().filter(|&k| k > 0).ok_or_else(|| self.err("exponent must be positive"))?
        } else {
            1
        };
        Ok(Block::new(kind, scale, mult))
    }

    fn expr(&mut self) -> Result<Vec<Block>> {
        let mut terms = vec![self.term()?];
        while self.eat('+') {
            terms.push(self.term()?);
        }
        if self.peek().is_some() {
            return Err(self.err(format!("trailing input at position {}", self.pos)));
        }
        Ok(terms)
    }
}

impl FromStr for NamedDecomposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            input: s,
            chars: s.chars().collect(),
            pos: 0,
        };
        if p.peek() == Some('0') && s.trim() == "0" {
            return Ok(NamedDecomposition::empty());
        }
        NamedDecomposition::new(p.expr()?)
    }
}
