//! Replayable triviality certificates and a bounded search for them.
//!
//! A certificate acts on a word regarded up to cyclic conjugation, which is
//! harmless for triviality. Steps:
//!
//! * `Reduce`: free reduction, cone-loop exponent reduction and cyclic
//!   reduction.
//! * `Rotate { shift }`: move the first `shift` letters to the end.
//! * `Apply { .. }`: take the relator of `relation` (inverted if `direction`
//!   is `Backward`), rotate it left by `rotation`, split it as `u · r`
//!   with `|u| = span`, and replace the cyclic subword `u` starting at
//!   `position` by `r^{-1}`. When `u` wraps past the end, the result is
//!   written starting with `r^{-1}`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::presentation::{orbifold_presentation, OrbifoldPresentation};
use super::{BraidError, BraidLetter, BraidWord, Generator, OrbifoldSignature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    Reduce,
    Rotate {
        shift: usize,
    },
    Apply {
        position: usize,
        relation: usize,
        direction: Direction,
        rotation: usize,
        span: usize,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub steps: Vec<Step>,
}

impl Certificate {
    /// Number of relation applications.
    pub fn len(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Apply { .. }))
            .count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Relation indices used, in order.
    pub fn relations_used(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::Apply { relation, .. } => Some(*relation),
                _ => None,
            })
            .collect()
    }

    /// Human-readable listing using the presentation's relation names.
    pub fn describe(&self, pres: &OrbifoldPresentation) -> Vec<String> {
        self.steps
            .iter()
            .map(|s| match s {
                Step::Reduce => "reduce".to_string(),
                Step::Rotate { shift } => format!("rotate {shift}"),
                Step::Apply { position, relation, direction, rotation, span } => {
                    let name = pres
                        .relations
                        .get(*relation)
                        .map(|r| r.kind.to_string())
                        .unwrap_or_else(|| format!("#{relation}"));
                    let d = if *direction == Direction::Forward { "" } else { "^-1" };
                    format!("apply {name}{d} at {position} (rot {rotation}, span {span})")
                }
            })
            .collect()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces: Vec<String> = self
            .steps
            .iter()
            .map(|s| match s {
                Step::Reduce => "R".to_string(),
                Step::Rotate { shift } => format!("rot{shift}"),
                Step::Apply { position, relation, direction, rotation, span } => format!(
                    "{}{relation}@{position}/{rotation}+{span}",
                    if *direction == Direction::Forward { "+" } else { "-" }
                ),
            })
            .collect();
        f.write_str(&pieces.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of `Apply` steps.
    pub max_depth: usize,
    /// Maximum number of distinct words visited.
    pub max_nodes: usize,
    /// How far beyond the starting length an intermediate word may grow.
    pub max_growth: usize,
}

impl SearchLimits {
    pub fn with_depth(max_depth: usize) -> Self {
        SearchLimits { max_depth, ..Default::default() }
    }
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_depth: 12, max_nodes: 200_000, max_growth: 6 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Certificate),
    /// Limits exhausted; says nothing about nontriviality.
    Unknown { visited: usize },
}

impl SearchOutcome {
    pub fn certificate(self) -> Option<Certificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::Unknown { .. } => None,
        }
    }
}

/// Letters coded as `2 * generator_index + inverse`.
struct Codec {
    gens: Vec<Generator>,
    torsion: Vec<Option<u32>>,
}

impl Codec {
    fn new(sig: &OrbifoldSignature) -> Self {
        let gens = sig.generators();
        let torsion = gens.iter().map(|g| sig.torsion(*g)).collect();
        Codec { gens, torsion }
    }

    fn encode(&self, l: BraidLetter) -> u8 {
        let idx = self.gens.iter().position(|g| *g == l.gen).expect("letter outside signature");
        (2 * idx + l.inverse as usize) as u8
    }

    fn encode_all(&self, ls: &[BraidLetter]) -> Vec<u8> {
        ls.iter().map(|&l| self.encode(l)).collect()
    }

    fn is_cone(&self, c: u8) -> bool {
        self.torsion[(c >> 1) as usize].is_some()
    }

    fn inverse(&self, w: &[u8]) -> Vec<u8> {
        let inv: Vec<u8> = w.iter().rev().map(|c| c ^ 1).collect();
        self.free_reduce(&inv)
    }

    fn free_reduce(&self, w: &[u8]) -> Vec<u8> {
        let mut out: Vec<u8> = Vec::with_capacity(w.len());
        for &c in w {
            match self.torsion[(c >> 1) as usize] {
                Some(p) => {
                    let pos = c & !1;
                    let copies = if c & 1 == 1 { p - 1 } else { 1 };
                    let p = p as usize;
                    for _ in 0..copies {
                        out.push(pos);
                        if out.len() >= p && out[out.len() - p..].iter().all(|&x| x == pos) {
                            out.truncate(out.len() - p);
                        }
                    }
                }
                None => {
                    if out.last() == Some(&(c ^ 1)) {
                        out.pop();
                    } else {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    /// Free reduction followed by cyclic reduction.
    fn reduce(&self, w: &[u8]) -> Vec<u8> {
        let mut w = self.free_reduce(w);
        for _ in 0..w.len() + 1 {
            if w.len() < 2 {
                break;
            }
            let f = w[0];
            let l = w[w.len() - 1];
            let mergeable = l == f ^ 1 || (l == f && self.is_cone(f) && w.iter().any(|&c| c != f));
            if !mergeable {
                break;
            }
            let mut moved = Vec::with_capacity(w.len());
            moved.push(l);
            moved.extend_from_slice(&w[..w.len() - 1]);
            let next = self.free_reduce(&moved);
            if next == w {
                break;
            }
            w = next;
        }
        w
    }
}

fn least_rotation(w: &[u8]) -> usize {
    (0..w.len())
        .min_by(|&a, &b| {
            let ra = w[a..].iter().chain(&w[..a]);
            let rb = w[b..].iter().chain(&w[..b]);
            ra.cmp(rb)
        })
        .unwrap_or(0)
}

fn rotate(w: &[u8], shift: usize) -> Vec<u8> {
    let mut out = w[shift..].to_vec();
    out.extend_from_slice(&w[..shift]);
    out
}

/// Relators in both directions, indexed for the step format.
struct RelatorTable {
    by_dir: Vec<[Vec<u8>; 2]>,
}

impl RelatorTable {
    fn new(pres: &OrbifoldPresentation, codec: &Codec) -> Self {
        let by_dir = pres
            .relations
            .iter()
            .map(|r| {
                let fwd = codec.free_reduce(&codec.encode_all(&r.relator()));
                let bwd = codec.inverse(&fwd);
                [fwd, bwd]
            })
            .collect();
        RelatorTable { by_dir }
    }

    fn get(&self, relation: usize, direction: Direction) -> Option<&[u8]> {
        let d = match direction {
            Direction::Forward => 0,
            Direction::Backward => 1,
        };
        self.by_dir.get(relation).map(|r| r[d].as_slice())
    }
}

/// One cyclic substitution; `None` when the piece does not match.
fn apply_piece(codec: &Codec, w: &[u8], position: usize, rotated: &[u8], span: usize) -> Option<Vec<u8>> {
    let len = w.len();
    for k in 0..span {
        if w[(position + k) % len] != rotated[k] {
            return None;
        }
    }
    let replacement = codec.inverse(&rotated[span..]);
    let out = if position + span <= len {
        let mut out = w[..position].to_vec();
        out.extend_from_slice(&replacement);
        out.extend_from_slice(&w[position + span..]);
        out
    } else {
        let mut out = replacement;
        out.extend_from_slice(&w[position + span - len..position]);
        out
    };
    Some(out)
}

/// Replay `cert` against `w`. Malformed steps are an error; a replay that
/// does not end at the empty word, or a relator piece that does not match,
/// gives `Ok(false)`.
pub fn check_certificate(w: &BraidWord, cert: &Certificate) -> Result<bool, BraidError> {
    let sig = w.signature();
    let pres = orbifold_presentation(&sig);
    let codec = Codec::new(&sig);
    let table = RelatorTable::new(&pres, &codec);
    let mut cur = codec.encode_all(w.letters());
    for (i, step) in cert.steps.iter().enumerate() {
        let bad = |reason: String| BraidError::MalformedStep { step: i, reason };
        match *step {
            Step::Reduce => cur = codec.reduce(&cur),
            Step::Rotate { shift } => {
                if shift > cur.len() {
                    return Err(bad(format!("shift {shift} exceeds length {}", cur.len())));
                }
                cur = rotate(&cur, shift);
            }
            Step::Apply { position, relation, direction, rotation, span } => {
                let rel = table
                    .get(relation, direction)
                    .ok_or_else(|| bad(format!("no relation {relation}")))?;
                if rel.is_empty() {
                    return Err(bad(format!("relation {relation} has trivial relator")));
                }
                if rotation >= rel.len() {
                    return Err(bad(format!("rotation {rotation} out of range")));
                }
                if span == 0 || span > rel.len() || span > cur.len() {
                    return Err(bad(format!("span {span} out of range")));
                }
                if position >= cur.len() {
                    return Err(bad(format!("position {position} out of range")));
                }
                let rotated = rotate(rel, rotation);
                match apply_piece(&codec, &cur, position, &rotated, span) {
                    Some(next) => cur = next,
                    None => return Ok(false),
                }
            }
        }
    }
    Ok(cur.is_empty())
}

struct Node {
    parent: usize,
    steps: Vec<Step>,
}

/// A rotated relator together with where it came from.
struct Piece {
    relation: usize,
    direction: Direction,
    rotation: usize,
    word: Vec<u8>,
}

/// Best-first search for a certificate, ordered by `(length, depth, word)`.
pub fn search_certificate(w: &BraidWord, limits: SearchLimits) -> SearchOutcome {
    let sig = w.signature();
    let pres = orbifold_presentation(&sig);
    let codec = Codec::new(&sig);
    let table = RelatorTable::new(&pres, &codec);

    let mut pieces_by_first: HashMap<u8, Vec<Piece>> = HashMap::new();
    let mut seen_pieces: HashSet<Vec<u8>> = HashSet::new();
    for relation in 0..pres.relations.len() {
        for direction in [Direction::Forward, Direction::Backward] {
            let rel = table.get(relation, direction).unwrap();
            for rotation in 0..rel.len() {
                let word = rotate(rel, rotation);
                if seen_pieces.insert(word.clone()) {
                    pieces_by_first.entry(word[0]).or_default().push(Piece {
                        relation,
                        direction,
                        rotation,
                        word,
                    });
                }
            }
        }
    }

    let raw = codec.encode_all(w.letters());
    let reduced = codec.reduce(&raw);
    let shift = least_rotation(&reduced);
    let start = rotate(&reduced, shift);
    let mut first_steps = Vec::new();
    if reduced != raw {
        first_steps.push(Step::Reduce);
    }
    if shift != 0 {
        first_steps.push(Step::Rotate { shift });
    }
    let max_len = start.len().max(4) + limits.max_growth;

    let mut nodes = vec![Node { parent: usize::MAX, steps: first_steps }];
    let mut visited: HashSet<Vec<u8>> = HashSet::new();
    visited.insert(start.clone());
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((start.len(), 0usize, start, 0usize)));

    while let Some(Reverse((_, depth, word, id))) = heap.pop() {
        if word.is_empty() {
            let mut chain = Vec::new();
            let mut cur = id;
            while cur != usize::MAX {
                chain.push(cur);
                cur = nodes[cur].parent;
            }
            let steps = chain
                .into_iter()
                .rev()
                .flat_map(|i| nodes[i].steps.iter().copied())
                .collect();
            return SearchOutcome::Found(Certificate { steps });
        }
        if depth >= limits.max_depth {
            continue;
        }
        let len = word.len();
        for position in 0..len {
            let Some(cands) = pieces_by_first.get(&word[position]) else {
                continue;
            };
            for piece in cands {
                let mut matched = 0;
                while matched < piece.word.len()
                    && matched < len
                    && word[(position + matched) % len] == piece.word[matched]
                {
                    matched += 1;
                }
                for span in 1..=matched {
                    let Some(next) = apply_piece(&codec, &word, position, &piece.word, span) else {
                        continue;
                    };
                    let mut steps = vec![Step::Apply {
                        position,
                        relation: piece.relation,
                        direction: piece.direction,
                        rotation: piece.rotation,
                        span,
                    }];
                    let reduced = codec.reduce(&next);
                    if reduced != next {
                        steps.push(Step::Reduce);
                    }
                    if reduced.len() > max_len {
                        continue;
                    }
                    let shift = least_rotation(&reduced);
                    if shift != 0 {
                        steps.push(Step::Rotate { shift });
                    }
                    let canon = rotate(&reduced, shift);
                    if visited.contains(&canon) {
                        continue;
                    }
                    if visited.len() >= limits.max_nodes {
                        return SearchOutcome::Unknown { visited: visited.len() };
                    }
                    visited.insert(canon.clone());
                    nodes.push(Node { parent: id, steps });
                    heap.push(Reverse((canon.len(), depth + 1, canon, nodes.len() - 1)));
                }
            }
        }
    }
    SearchOutcome::Unknown { visited: visited.len() }
}

/// Certificate search with default node and growth limits.
pub fn find_triviality_certificate(w: &BraidWord, max_depth: usize) -> Option<Certificate> {
    search_certificate(w, SearchLimits::with_depth(max_depth)).certificate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::OrbifoldSignature;

    fn word(sig: OrbifoldSignature, s: &str) -> BraidWord {
        BraidWord::parse(sig, s).unwrap()
    }

    #[test]
    fn empty_word_has_empty_certificate() {
        let w = BraidWord::empty(OrbifoldSignature::k(3));
        let c = find_triviality_certificate(&w, 4).unwrap();
        assert!(c.steps.is_empty());
        assert!(check_certificate(&w, &Certificate::default()).unwrap());
    }

    #[test]
    fn four_braid_relator_one_step() {
        let sig = OrbifoldSignature::punctured(2);
        let w = word(sig, "s1 tL s1 tL s1' tL' s1' tL'");
        let c = find_triviality_certificate(&w, 3).unwrap();
        assert_eq!(c.len(), 1);
        assert!(check_certificate(&w, &c).unwrap());
    }

    #[test]
    fn sigma_is_not_certified() {
        let sig = OrbifoldSignature::plain(3);
        let w = word(sig, "s1");
        assert!(!check_certificate(&w, &Certificate::default()).unwrap());
        assert!(find_triviality_certificate(&w, 3).is_none());
    }

    #[test]
    fn malformed_steps_are_errors() {
        let sig = OrbifoldSignature::plain(3);
        let w = word(sig, "s1 s2 s1 s2' s1' s2'");
        let bad = Certificate {
            steps: vec![Step::Apply {
                position: 40,
                relation: 0,
                direction: Direction::Forward,
                rotation: 0,
                span: 1,
            }],
        };
        assert!(check_certificate(&w, &bad).is_err());
        let bad = Certificate { steps: vec![Step::Rotate { shift: 99 }] };
        assert!(check_certificate(&w, &bad).is_err());
    }

    #[test]
    fn cone_commutator() {
        let sig = OrbifoldSignature::k(2);
        let a = word(sig, "tL s1 tL");
        let b = word(sig, "s1");
        let comm = a.mul(&b).mul(&a.invert()).mul(&b.invert());
        let c = find_triviality_certificate(&comm, 4).unwrap();
        assert!(c.len() <= 4);
        assert!(check_certificate(&comm, &c).unwrap());
        let sig4 = OrbifoldSignature::k(4);
        let a = word(sig4, "tL s1 tL");
        let b = word(sig4, "s3");
        let comm = a.mul(&b).mul(&a.invert()).mul(&b.invert());
        let c = find_triviality_certificate(&comm, 8).unwrap();
        assert!(check_certificate(&comm, &c).unwrap());
    }
}
