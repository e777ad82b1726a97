//! Coxeter diagrams of the classical spherical and affine families and the
//! Artin presentations they define.
//!
//! Node numbering follows the generator labels used throughout the crate:
//!
//! * `A_m`: a path `1 - 2 - ... - m`.
//! * `B_m`: `1 =4= 2 - 3 - ... - m`; the double-bond node is generator 1.
//! * `D_m`: nodes 1 and 2 both attached to 3, then a path `3 - ... - m`.
//! * `Ã_m`: the path `1 - ... - m` closed into a cycle by node `m+1`, which is
//!   printed as `g0`.
//! * `B̃_m`: `1 =4= 2 - ... - m`, with node `m+1` attached to `m-1`.
//! * `C̃_m`: `1 =4= 2 - ... - m =4= m+1`.
//! * `D̃_m`: nodes 1, 2 attached to 3, a path `3 - ... - m-1`, and nodes `m`,
//!   `m+1` attached to `m-1`. For `m = 3` this degenerates to the square
//!   `1 - 3 - 2 - 4 - 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("{family}{rank}: row condition violated ({condition})")]
    Condition {
        family: Family,
        rank: usize,
        condition: &'static str,
    },
    #[error("cannot parse diagram {0:?} (expected e.g. \"D4\" or \"Dt5\")")]
    ParseDiagram(String),
    #[error("cannot parse Artin letter {0:?}")]
    ParseLetter(String),
    #[error("generator index {index} out of range 1..={count}")]
    GeneratorRange { index: usize, count: usize },
}

/// The seven classical diagram families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    ATilde,
    BTilde,
    CTilde,
    DTilde,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::D,
        Family::ATilde,
        Family::BTilde,
        Family::CTilde,
        Family::DTilde,
    ];

    pub fn is_affine(self) -> bool {
        matches!(
            self,
            Family::ATilde | Family::BTilde | Family::CTilde | Family::DTilde
        )
    }

    /// Number of nodes of the diagram of rank `rank`.
    pub fn node_count(self, rank: usize) -> usize {
        if self.is_affine() {
            rank + 1
        } else {
            rank
        }
    }

    /// Smallest admissible rank, and the condition as stated for printing.
    fn min_rank(self) -> (usize, &'static str) {
        match self {
            Family::A => (1, "A_m needs m >= 1"),
            Family::B => (2, "B_n needs n > 1"),
            Family::D => (2, "D_n needs n > 1"),
            Family::ATilde => (2, "Ã_{n-1} needs n > 2"),
            Family::BTilde => (3, "B̃_n needs n > 2"),
            Family::CTilde => (2, "C̃_n needs n > 1"),
            Family::DTilde => (3, "D̃_n needs n > 2"),
        }
    }

    /// Pretty name with the tilde, e.g. `D̃`.
    pub fn pretty(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::ATilde => "Ã",
            Family::BTilde => "B̃",
            Family::CTilde => "C̃",
            Family::DTilde => "D̃",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::ATilde => "At",
            Family::BTilde => "Bt",
            Family::CTilde => "Ct",
            Family::DTilde => "Dt",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "A" => Family::A,
            "B" | "C" => Family::B,
            "D" => Family::D,
            "At" | "Ã" => Family::ATilde,
            "Bt" | "B̃" => Family::BTilde,
            "Ct" | "C̃" => Family::CTilde,
            "Dt" | "D̃" => Family::DTilde,
            _ => return Err(CoxeterError::ParseDiagram(s.to_string())),
        })
    }
}

/// A labeled Coxeter diagram. Labels are 2 (unjoined), 3 (single bond) or
/// 4 (double bond).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterDiagram {
    family: Family,
    rank: usize,
    labels: Vec<Vec<u8>>,
}

impl CoxeterDiagram {
    /// The diagram `family_rank`, e.g. `(D, 4)` for `D_4` or `(DTilde, 5)`
    /// for `D̃_5` (six nodes).
    pub fn classical(family: Family, rank: usize) -> Result<Self, CoxeterError> {
        let (min, condition) = family.min_rank();
        if rank < min {
            return Err(CoxeterError::Condition {
                family,
                rank,
                condition,
            });
        }
        let count = family.node_count(rank);
        let mut d = CoxeterDiagram {
            family,
            rank,
            labels: vec![vec![2; count]; count],
        };
        let m = rank;
        match family {
            Family::A => {
                for i in 1..m {
                    d.join(i, i + 1, 3);
                }
            }
            Family::B => {
                d.join(1, 2, 4);
                for i in 2..m {
                    d.join(i, i + 1, 3);
                }
            }
            Family::D => {
                if m >= 3 {
                    d.join(1, 3, 3);
                    d.join(2, 3, 3);
                }
                for i in 3..m {
                    d.join(i, i + 1, 3);
                }
            }
            Family::ATilde => {
                for i in 1..m {
                    d.join(i, i + 1, 3);
                }
                d.join(m + 1, 1, 3);
                d.join(m + 1, m, 3);
            }
            Family::BTilde => {
                d.join(1, 2, 4);
                for i in 2..m {
                    d.join(i, i + 1, 3);
                }
                d.join(m - 1, m + 1, 3);
            }
            Family::CTilde => {
                d.join(1, 2, 4);
                for i in 2..m {
                    d.join(i, i + 1, 3);
                }
                d.join(m, m + 1, 4);
            }
            Family::DTilde => {
                if m == 3 {
                    d.join(1, 3, 3);
                    d.join(2, 3, 3);
                    d.join(1, 4, 3);
                    d.join(2, 4, 3);
                } else {
                    d.join(1, 3, 3);
                    d.join(2, 3, 3);
                    for i in 3..m - 1 {
                        d.join(i, i + 1, 3);
                    }
                    d.join(m - 1, m, 3);
                    d.join(m - 1, m + 1, 3);
                }
            }
        }
        Ok(d)
    }

    fn join(&mut self, i: usize, j: usize, label: u8) {
        self.labels[i - 1][j - 1] = label;
        self.labels[j - 1][i - 1] = label;
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// The label `m(i, j)` for distinct 1-based nodes.
    pub fn label(&self, i: usize, j: usize) -> u8 {
        self.labels[i - 1][j - 1]
    }

    /// Printed name of node `i`: `g0` for the affine node of `Ã`, `G_i` for
    /// `D̃`, otherwise `g_i`.
    pub fn node_name(&self, i: usize) -> String {
        match self.family {
            Family::ATilde if i == self.node_count() => "g0".to_string(),
            Family::DTilde => format!("G{i}"),
            _ => format!("g{i}"),
        }
    }

    /// Edges `(i, j, m)` with `i < j` and `m > 2`.
    pub fn edges(&self) -> Vec<(usize, usize, u8)> {
        let n = self.node_count();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let m = self.label(i, j);
                if m > 2 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.to_string(),
            "n": self.rank,
            "edges": self.edges().iter().map(|&(i, j, m)| [i, j, m as usize]).collect::<Vec<_>>(),
        })
    }

    /// The Artin presentation: one relation per unordered pair of nodes.
    pub fn artin_presentation(&self) -> ArtinPresentation {
        let n = self.node_count();
        let mut relations = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let m = self.label(i, j) as usize;
                let alt = |first: usize, second: usize| {
                    ArtinWord::from_gens((0..m).map(|k| if k % 2 == 0 { first } else { second }))
                };
                relations.push(ArtinRelation {
                    nodes: (i, j),
                    label: m as u8,
                    lhs: alt(i, j),
                    rhs: alt(j, i),
                });
            }
        }
        ArtinPresentation {
            generator_count: n,
            relations,
        }
    }

    /// Every node bijection `f` (as a 0-based vector, `f[i-1] = f(i)`) with
    /// `m(f(i), f(j)) = m(i, j)` for all pairs.
    pub fn isomorphisms(&self, other: &CoxeterDiagram) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut out = Vec::new();
        if n != other.node_count() {
            return out;
        }
        let mut image = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.extend_iso(other, &mut image, &mut used, &mut out);
        out
    }

    fn extend_iso(
        &self,
        other: &CoxeterDiagram,
        image: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = image.len();
        if k == self.node_count() {
            out.push(image.clone());
            return;
        }
        for cand in 1..=other.node_count() {
            if used[cand - 1] {
                continue;
            }
            let ok = image
                .iter()
                .enumerate()
                .all(|(i, &img)| self.label(i + 1, k + 1) == other.label(img, cand));
            if ok {
                used[cand - 1] = true;
                image.push(cand);
                self.extend_iso(other, image, used, out);
                image.pop();
                used[cand - 1] = false;
            }
        }
    }

    /// Parse a single Artin letter such as `g3`, `g3'`, `G5` or `g0`.
    pub fn parse_letter(&self, tok: &str) -> Result<ArtinLetter, CoxeterError> {
        let err = || CoxeterError::ParseLetter(tok.to_string());
        let (body, inverse) = match tok.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (tok, false),
        };
        let digits = body
            .strip_prefix('g')
            .or_else(|| body.strip_prefix('G'))
            .ok_or_else(err)?;
        let idx: usize = digits.parse().map_err(|_| err())?;
        let count = self.node_count();
        let gen = if idx == 0 {
            if self.family == Family::ATilde {
                count
            } else {
                return Err(err());
            }
        } else {
            idx
        };
        if gen > count || (self.family == Family::ATilde && idx == count) {
            return Err(CoxeterError::GeneratorRange { index: idx, count });
        }
        Ok(ArtinLetter { gen, inverse })
    }

    /// Parse a whitespace separated Artin word.
    pub fn parse_word(&self, text: &str) -> Result<ArtinWord, CoxeterError> {
        let letters = text
            .split_whitespace()
            .map(|t| self.parse_letter(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ArtinWord { letters })
    }

    pub fn format_word(&self, w: &ArtinWord) -> String {
        w.letters
            .iter()
            .map(|l| {
                let mut s = self.node_name(l.gen);
                if l.inverse {
                    s.push('\'');
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for CoxeterDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CoxeterDiagram {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| CoxeterError::ParseDiagram(s.to_string()))?;
        let family: Family = s[..split].parse()?;
        let rank: usize = s[split..]
            .parse()
            .map_err(|_| CoxeterError::ParseDiagram(s.to_string()))?;
        CoxeterDiagram::classical(family, rank)
    }
}

/// A generator letter of an Artin group, `g_gen^{±1}` with 1-based `gen`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArtinLetter {
    pub gen: usize,
    pub inverse: bool,
}

impl ArtinLetter {
    pub fn new(gen: usize) -> Self {
        ArtinLetter {
            gen,
            inverse: false,
        }
    }

    pub fn inv(self) -> Self {
        ArtinLetter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArtinWord {
    pub letters: Vec<ArtinLetter>,
}

impl ArtinWord {
    pub fn new() -> Self {
        Self::default()
    }

    /// Positive word from generator indices.
    pub fn from_gens<I: IntoIterator<Item = usize>>(gens: I) -> Self {
        ArtinWord {
            letters: gens.into_iter().map(ArtinLetter::new).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    pub fn inverse(&self) -> Self {
        ArtinWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &ArtinWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        ArtinWord { letters }
    }

    pub fn pow(&self, k: usize) -> Self {
        ArtinWord {
            letters: (0..k).flat_map(|_| self.letters.iter().copied()).collect(),
        }
    }

    /// Cancel adjacent `g g^{-1}` pairs.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<ArtinLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        ArtinWord { letters: out }
    }

    /// Relabel generators through `map` (1-based in, 1-based out).
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Self {
        ArtinWord {
            letters: self
                .letters
                .iter()
                .map(|l| ArtinLetter {
                    gen: map(l.gen),
                    inverse: l.inverse,
                })
                .collect(),
        }
    }

    pub fn validate(&self, count: usize) -> Result<(), CoxeterError> {
        for l in &self.letters {
            if l.gen == 0 || l.gen > count {
                return Err(CoxeterError::GeneratorRange {
                    index: l.gen,
                    count,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for ArtinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("g{}{}", l.gen, if l.inverse { "'" } else { "" }))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// One defining relation `lhs = rhs` for the node pair `nodes`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArtinRelation {
    pub nodes: (usize, usize),
    pub label: u8,
    pub lhs: ArtinWord,
    pub rhs: ArtinWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinPresentation {
    pub generator_count: usize,
    pub relations: Vec<ArtinRelation>,
}

impl ArtinPresentation {
    /// Relations as a sorted multiset of unordered `{lhs, rhs}` pairs after
    /// relabeling generators by `map`.
    pub fn relation_multiset(&self, map: impl Fn(usize) -> usize) -> Vec<(ArtinWord, ArtinWord)> {
        let mut out: Vec<_> = self
            .relations
            .iter()
            .map(|r| {
                let a = r.lhs.relabel(&map);
                let b = r.rhs.relabel(&map);
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(f: Family, n: usize) -> CoxeterDiagram {
        CoxeterDiagram::classical(f, n).unwrap()
    }

    #[test]
    fn small_diagrams() {
        let a3 = d(Family::A, 3);
        assert_eq!(a3.node_count(), 3);
        assert_eq!(a3.edges(), vec![(1, 2, 3), (2, 3, 3)]);
        let d2 = d(Family::D, 2);
        assert_eq!(d2.node_count(), 2);
        assert_eq!(d2.label(1, 2), 2);
        let ct2 = d(Family::CTilde, 2);
        assert_eq!(ct2.edges(), vec![(1, 2, 4), (2, 3, 4)]);
        let dt3 = d(Family::DTilde, 3);
        assert_eq!(dt3.edges().len(), 4);
        assert_eq!(d(Family::DTilde, 5).node_count(), 6);
    }

    #[test]
    fn conditions_are_enforced() {
        assert!(matches!(
            CoxeterDiagram::classical(Family::DTilde, 2),
            Err(CoxeterError::Condition { .. })
        ));
        assert!(CoxeterDiagram::classical(Family::D, 1).is_err());
        assert!(CoxeterDiagram::classical(Family::BTilde, 2).is_err());
        assert!(CoxeterDiagram::classical(Family::ATilde, 1).is_err());
        assert!(CoxeterDiagram::classical(Family::ATilde, 2).is_ok());
    }

    #[test]
    fn presentations() {
        let a2 = d(Family::A, 2).artin_presentation();
        assert_eq!(a2.relations.len(), 1);
        assert_eq!(a2.relations[0].lhs.to_string(), "g1 g2 g1");
        assert_eq!(a2.relations[0].rhs.to_string(), "g2 g1 g2");
        let d2 = d(Family::D, 2).artin_presentation();
        assert_eq!(d2.relations[0].lhs.to_string(), "g1 g2");
        let b2 = d(Family::B, 2).artin_presentation();
        assert_eq!(b2.relations[0].lhs.to_string(), "g1 g2 g1 g2");
        assert_eq!(b2.relations[0].rhs.to_string(), "g2 g1 g2 g1");
        for f in Family::ALL {
            for n in 1..8 {
                if let Ok(dg) = CoxeterDiagram::classical(f, n) {
                    let k = dg.node_count();
                    assert_eq!(dg.artin_presentation().relations.len(), k * (k - 1) / 2);
                }
            }
        }
    }

    #[test]
    fn isomorphism_search() {
        let a3 = d(Family::A, 3);
        let d3 = d(Family::D, 3);
        let isos = a3.isomorphisms(&d3);
        assert_eq!(isos.len(), 2);
        for f in &isos {
            assert_eq!(f[1], 3, "center of A3 maps to center of D3");
        }
        assert!(d(Family::A, 2).isomorphisms(&d(Family::B, 2)).is_empty());
        let d4 = d(Family::D, 4);
        assert!(d4.isomorphisms(&d4).contains(&vec![1, 2, 3, 4]));
        assert!(!d(Family::ATilde, 3).isomorphisms(&d(Family::DTilde, 3)).is_empty());
    }

    #[test]
    fn isomorphic_presentations_agree() {
        let a3 = d(Family::A, 3);
        let d3 = d(Family::D, 3);
        for f in a3.isomorphisms(&d3) {
            let lhs = a3.artin_presentation().relation_multiset(|i| f[i - 1]);
            let rhs = d3.artin_presentation().relation_multiset(|i| i);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn parse_and_format() {
        let dg: CoxeterDiagram = "Dt5".parse().unwrap();
        assert_eq!(dg.family(), Family::DTilde);
        assert_eq!(dg.rank(), 5);
        let at: CoxeterDiagram = "At2".parse().unwrap();
        let w = at.parse_word("g0 g1' g2").unwrap();
        assert_eq!(w.letters[0].gen, 3);
        assert_eq!(at.format_word(&w), "g0 g1' g2");
        assert!(at.parse_word("g3").is_err());
        assert!("X3".parse::<CoxeterDiagram>().is_err());
        let json = d(Family::B, 3).to_json();
        assert_eq!(json["edges"][0], serde_json::json!([1, 2, 4]));
    }
}
