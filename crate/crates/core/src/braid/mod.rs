//! Braid groups `Z_n(L)` of the plane with at most one special point on each
//! side of the strands.
//!
//! Letters are `σ_i` (strands `i` and `i+1` cross, strand `i` in front) and the
//! loop letters `τ_L`, `τ_R` (strand 1, resp. strand `n`, runs once
//! counterclockwise around the left, resp. right, special point).

mod certificate;
mod presentation;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use certificate::{
    check_certificate, find_triviality_certificate, search_certificate, Certificate, Direction,
    SearchLimits, SearchOutcome, Step,
};
pub use presentation::{orbifold_presentation, OrbifoldPresentation, OrbifoldRelation, RelationKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("cannot parse signature {0:?} (expected e.g. \"n=4;left=cone2;right=puncture\")")]
    ParseSignature(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("cannot parse braid letter {0:?}")]
    ParseLetter(String),
    #[error("letter {letter} is not valid for signature {sig}")]
    InvalidLetter { letter: String, sig: String },
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(String, String),
    #[error("no special point on the {0} side")]
    EmptySide(Side),
    #[error("certificate step {step} is malformed: {reason}")]
    MalformedStep { step: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" | "L" | "l" => Ok(Side::Left),
            "right" | "R" | "r" => Ok(Side::Right),
            _ => Err(BraidError::ParseSignature(s.to_string())),
        }
    }
}

/// A puncture, or a cone point of order `p >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialPoint {
    Puncture,
    Cone(u32),
}

impl SpecialPoint {
    /// Order of the loop letter around this point; `None` for a puncture.
    pub fn order(self) -> Option<u32> {
        match self {
            SpecialPoint::Puncture => None,
            SpecialPoint::Cone(p) => Some(p),
        }
    }

    pub fn is_cone(self) -> bool {
        matches!(self, SpecialPoint::Cone(_))
    }
}

impl fmt::Display for SpecialPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialPoint::Puncture => f.write_str("puncture"),
            SpecialPoint::Cone(p) => write!(f, "cone{p}"),
        }
    }
}

impl FromStr for SpecialPoint {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "puncture" {
            return Ok(SpecialPoint::Puncture);
        }
        let rest = s
            .strip_prefix("cone")
            .ok_or_else(|| BraidError::ParseSignature(s.to_string()))?;
        if rest.is_empty() {
            return Ok(SpecialPoint::Cone(2));
        }
        let p: u32 = rest
            .parse()
            .map_err(|_| BraidError::ParseSignature(s.to_string()))?;
        if p < 2 {
            return Err(BraidError::InvalidSignature(format!("cone order {p} < 2")));
        }
        Ok(SpecialPoint::Cone(p))
    }
}

/// Strand count and the special points on each side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbifoldSignature {
    pub n: usize,
    pub left: Option<SpecialPoint>,
    pub right: Option<SpecialPoint>,
}

impl OrbifoldSignature {
    pub fn new(
        n: usize,
        left: Option<SpecialPoint>,
        right: Option<SpecialPoint>,
    ) -> Result<Self, BraidError> {
        if n == 0 {
            return Err(BraidError::InvalidSignature("need at least one strand".into()));
        }
        if left.is_some() && right.is_some() && n < 2 {
            return Err(BraidError::InvalidSignature(
                "two special points need n >= 2".into(),
            ));
        }
        for p in [left, right].into_iter().flatten() {
            if let SpecialPoint::Cone(k) = p {
                if k < 2 {
                    return Err(BraidError::InvalidSignature(format!("cone order {k} < 2")));
                }
            }
        }
        Ok(OrbifoldSignature { n, left, right })
    }

    /// The plain plane `C`.
    pub fn plain(n: usize) -> Self {
        OrbifoldSignature { n, left: None, right: None }
    }

    /// One cone point of order 2 on the left (`k`).
    pub fn k(n: usize) -> Self {
        OrbifoldSignature { n, left: Some(SpecialPoint::Cone(2)), right: None }
    }

    /// Two cone points of order 2 (`K`).
    pub fn big_k(n: usize) -> Self {
        OrbifoldSignature {
            n,
            left: Some(SpecialPoint::Cone(2)),
            right: Some(SpecialPoint::Cone(2)),
        }
    }

    /// The punctured plane `C^×`, puncture on the left.
    pub fn punctured(n: usize) -> Self {
        OrbifoldSignature { n, left: Some(SpecialPoint::Puncture), right: None }
    }

    pub fn two_punctures(n: usize) -> Self {
        OrbifoldSignature {
            n,
            left: Some(SpecialPoint::Puncture),
            right: Some(SpecialPoint::Puncture),
        }
    }

    /// Puncture on the left, order-2 cone on the right.
    pub fn puncture_cone(n: usize) -> Self {
        OrbifoldSignature {
            n,
            left: Some(SpecialPoint::Puncture),
            right: Some(SpecialPoint::Cone(2)),
        }
    }

    pub fn point(&self, side: Side) -> Option<SpecialPoint> {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }

    pub fn with_point(&self, side: Side, point: Option<SpecialPoint>) -> Self {
        let mut s = *self;
        match side {
            Side::Left => s.left = point,
            Side::Right => s.right = point,
        }
        s
    }

    /// All generators, in the order `τ_L, σ_1, ..., σ_{n-1}, τ_R`.
    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        if self.left.is_some() {
            out.push(Generator::Loop(Side::Left));
        }
        out.extend((1..self.n).map(Generator::Sigma));
        if self.right.is_some() {
            out.push(Generator::Loop(Side::Right));
        }
        out
    }

    pub fn allows(&self, gen: Generator) -> bool {
        match gen {
            Generator::Sigma(i) => i >= 1 && i < self.n,
            Generator::Loop(side) => self.point(side).is_some(),
        }
    }

    /// Order of a generator's loop letter when it is a cone loop.
    pub fn torsion(&self, gen: Generator) -> Option<u32> {
        match gen {
            Generator::Sigma(_) => None,
            Generator::Loop(side) => self.point(side).and_then(SpecialPoint::order),
        }
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        if let Some(p) = self.left {
            write!(f, ";left={p}")?;
        }
        if let Some(p) = self.right {
            write!(f, ";right={p}")?;
        }
        Ok(())
    }
}

impl FromStr for OrbifoldSignature {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BraidError::ParseSignature(s.to_string());
        let mut n = None;
        let mut left = None;
        let mut right = None;
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "n" => n = Some(value.trim().parse::<usize>().map_err(|_| bad())?),
                "left" => left = Some(value.trim().parse::<SpecialPoint>()?),
                "right" => right = Some(value.trim().parse::<SpecialPoint>()?),
                _ => return Err(bad()),
            }
        }
        OrbifoldSignature::new(n.ok_or_else(bad)?, left, right)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    Sigma(usize),
    Loop(Side),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sigma(i) => write!(f, "s{i}"),
            Generator::Loop(Side::Left) => f.write_str("tL"),
            Generator::Loop(Side::Right) => f.write_str("tR"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidLetter {
    pub gen: Generator,
    pub inverse: bool,
}

impl BraidLetter {
    pub fn sigma(i: usize) -> Self {
        BraidLetter { gen: Generator::Sigma(i), inverse: false }
    }

    pub fn sigma_inv(i: usize) -> Self {
        BraidLetter { gen: Generator::Sigma(i), inverse: true }
    }

    pub fn tau(side: Side) -> Self {
        BraidLetter { gen: Generator::Loop(side), inverse: false }
    }

    pub fn tau_inv(side: Side) -> Self {
        BraidLetter { gen: Generator::Loop(side), inverse: true }
    }

    pub fn inv(self) -> Self {
        BraidLetter { gen: self.gen, inverse: !self.inverse }
    }

    /// `+1` or `-1`.
    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.gen, if self.inverse { "'" } else { "" })
    }
}

impl FromStr for BraidLetter {
    type Err = BraidError;

    fn from_str(tok: &str) -> Result<Self, Self::Err> {
        let (body, inverse) = match tok.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (tok, false),
        };
        let gen = match body {
            "tL" => Generator::Loop(Side::Left),
            "tR" => Generator::Loop(Side::Right),
            _ => {
                let i: usize = body
                    .strip_prefix('s')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| BraidError::ParseLetter(tok.to_string()))?;
                Generator::Sigma(i)
            }
        };
        Ok(BraidLetter { gen, inverse })
    }
}

/// Reduce a letter sequence to the normal form of the free product: adjacent
/// inverse pairs cancel, cone loops are written with positive exponents and
/// runs are taken modulo the cone order.
pub fn reduce_letters(sig: &OrbifoldSignature, letters: &[BraidLetter]) -> Vec<BraidLetter> {
    let mut out: Vec<BraidLetter> = Vec::with_capacity(letters.len());
    for &l in letters {
        match sig.torsion(l.gen) {
            Some(p) => {
                let copies = if l.inverse { p - 1 } else { 1 };
                let pos = BraidLetter { gen: l.gen, inverse: false };
                for _ in 0..copies {
                    out.push(pos);
                    let p = p as usize;
                    if out.len() >= p && out[out.len() - p..].iter().all(|&x| x == pos) {
                        out.truncate(out.len() - p);
                    }
                }
            }
            None => {
                if out.last() == Some(&l.inv()) {
                    out.pop();
                } else {
                    out.push(l);
                }
            }
        }
    }
    out
}

/// A word in the generators of `Z_n(L)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    sig: OrbifoldSignature,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(sig: OrbifoldSignature, letters: Vec<BraidLetter>) -> Result<Self, BraidError> {
        for l in &letters {
            if !sig.allows(l.gen) {
                return Err(BraidError::InvalidLetter {
                    letter: l.to_string(),
                    sig: sig.to_string(),
                });
            }
        }
        Ok(BraidWord { sig, letters })
    }

    pub fn empty(sig: OrbifoldSignature) -> Self {
        BraidWord { sig, letters: Vec::new() }
    }

    pub fn parse(sig: OrbifoldSignature, text: &str) -> Result<Self, BraidError> {
        let letters = text
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<BraidLetter>, _>>()?;
        BraidWord::new(sig, letters)
    }

    pub fn signature(&self) -> OrbifoldSignature {
        self.sig
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn free_reduce(&self) -> Self {
        BraidWord { sig: self.sig, letters: reduce_letters(&self.sig, &self.letters) }
    }

    /// Reversed word with every letter inverted.
    pub fn invert(&self) -> Self {
        BraidWord {
            sig: self.sig,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self, BraidError> {
        if self.sig != other.sig {
            return Err(BraidError::SignatureMismatch(
                self.sig.to_string(),
                other.sig.to_string(),
            ));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { sig: self.sig, letters })
    }

    /// `self · other`; panics on signature mismatch.
    pub fn mul(&self, other: &BraidWord) -> Self {
        self.concat(other).expect("signature mismatch")
    }

    pub fn pow(&self, k: usize) -> Self {
        BraidWord {
            sig: self.sig,
            letters: (0..k).flat_map(|_| self.letters.iter().copied()).collect(),
        }
    }

    /// `u · self · u^{-1}`.
    pub fn conjugate_by(&self, u: &BraidWord) -> Self {
        u.mul(self).mul(&u.invert())
    }

    /// Net exponent of the loop letter on `side`.
    pub fn loop_exponent(&self, side: Side) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == Generator::Loop(side))
            .map(|l| l.exponent())
            .sum()
    }

    /// Same letters read in another signature.
    pub fn with_signature(&self, sig: OrbifoldSignature) -> Result<Self, BraidError> {
        BraidWord::new(sig, self.letters.clone())
    }

    /// Fill the puncture on `side` with a cone point of order 2.
    pub fn fill_puncture(&self, side: Side) -> Result<Self, BraidError> {
        match self.sig.point(side) {
            Some(SpecialPoint::Puncture) => {}
            _ => return Err(BraidError::EmptySide(side)),
        }
        let sig = self.sig.with_point(side, Some(SpecialPoint::Cone(2)));
        Ok(BraidWord { sig, letters: self.letters.clone() }.free_reduce())
    }

    /// Delete the special point on `side` together with its loop letters.
    pub fn erase_point(&self, side: Side) -> Result<Self, BraidError> {
        if self.sig.point(side).is_none() {
            return Err(BraidError::EmptySide(side));
        }
        let sig = self.sig.with_point(side, None);
        let letters = self
            .letters
            .iter()
            .copied()
            .filter(|l| l.gen != Generator::Loop(side))
            .collect();
        Ok(BraidWord { sig, letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_round_trip() {
        let s: OrbifoldSignature = "n=4;left=cone2;right=puncture".parse().unwrap();
        assert_eq!(s.n, 4);
        assert_eq!(s.left, Some(SpecialPoint::Cone(2)));
        assert_eq!(s.right, Some(SpecialPoint::Puncture));
        assert_eq!(s.to_string().parse::<OrbifoldSignature>().unwrap(), s);
        assert!("n=1;left=cone2;right=cone2".parse::<OrbifoldSignature>().is_err());
        assert!("n=3;left=cone1".parse::<OrbifoldSignature>().is_err());
        assert!("left=cone2".parse::<OrbifoldSignature>().is_err());
    }

    #[test]
    fn letter_validation() {
        let k = OrbifoldSignature::k(3);
        assert!(BraidWord::parse(k, "s1 s2' tL").is_ok());
        assert!(BraidWord::parse(k, "tR").is_err());
        assert!(BraidWord::parse(k, "s3").is_err());
        assert!(BraidWord::parse(k, "x1").is_err());
    }

    #[test]
    fn free_reduce_examples() {
        let plain = OrbifoldSignature::plain(3);
        let w = BraidWord::parse(plain, "s1 s1'").unwrap();
        assert!(w.free_reduce().is_empty());
        let k = OrbifoldSignature::k(2);
        assert_eq!(BraidWord::parse(k, "tL'").unwrap().free_reduce().to_string(), "tL");
        assert!(BraidWord::parse(k, "tL tL").unwrap().free_reduce().is_empty());
        let c3 = OrbifoldSignature::new(2, Some(SpecialPoint::Cone(3)), None).unwrap();
        assert_eq!(BraidWord::parse(c3, "tL'").unwrap().free_reduce().to_string(), "tL tL");
        assert!(BraidWord::parse(c3, "tL s1 s1' tL tL").unwrap().free_reduce().is_empty());
        let p = OrbifoldSignature::punctured(2);
        assert_eq!(BraidWord::parse(p, "tL tL").unwrap().free_reduce().len(), 2);
    }

    #[test]
    fn invert_examples() {
        let plain = OrbifoldSignature::plain(3);
        assert_eq!(BraidWord::parse(plain, "s1 s2").unwrap().invert().to_string(), "s2' s1'");
        assert!(BraidWord::empty(plain).invert().is_empty());
        let k = OrbifoldSignature::k(2);
        let t = BraidWord::parse(k, "tL").unwrap();
        assert_eq!(t.invert().free_reduce(), t);
        let w = BraidWord::parse(k, "s1 tL s1' tL'").unwrap();
        assert!(w.mul(&w.invert()).free_reduce().is_empty());
    }

    #[test]
    fn fill_and_erase() {
        let p = OrbifoldSignature::punctured(3);
        let w = BraidWord::parse(p, "tL tL").unwrap();
        let filled = w.fill_puncture(Side::Left).unwrap();
        assert!(filled.is_empty());
        assert_eq!(filled.signature(), OrbifoldSignature::k(3));
        let w = BraidWord::parse(p, "tL s1").unwrap();
        assert_eq!(w.erase_point(Side::Left).unwrap().to_string(), "s1");
        assert!(w.erase_point(Side::Right).is_err());
        let k = OrbifoldSignature::k(3);
        assert!(BraidWord::empty(k).fill_puncture(Side::Left).is_err());
    }
}
