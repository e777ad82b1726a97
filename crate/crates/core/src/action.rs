//! Action of orbifold braids on the fundamental group of the orbifold minus
//! the base points: the free product of `⟨a_L⟩`, `⟨a_R⟩` (cyclic of order `p`
//! at a cone point, infinite at a puncture) and the free group on
//! `x_1, ..., x_n`.
//!
//! `σ_i` acts by the Artin action. The loop letter `τ_L` conjugates both
//! `a_L` and `x_1` by `a_L x_1`, and `τ_R` conjugates `x_n` and `a_R` by
//! `x_n a_R`; both fix the other generators and the boundary product
//! `a_L x_1 ⋯ x_n a_R`. For a word `l_1 ⋯ l_k` the action is
//! `φ_{l_1} ∘ ⋯ ∘ φ_{l_k}`.
//!
//! Braids are compared up to inner automorphisms. When a cone point is
//! present and `n >= 2`, `τ^p` acts by a partial conjugation which is not
//! inner, so the outer class is not an invariant of `Z_n(L)`;
//! [`ActionTable::new`] refuses such signatures and
//! [`verify_action_relations`] reports the offending relations.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::braid::{orbifold_presentation, BraidLetter, BraidWord, Generator, OrbifoldSignature, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("action is not well defined on {sig}: {failures:?} fail")]
    NotWellDefined { sig: String, failures: Vec<String> },
    #[error("word signature {0} does not match the table")]
    Signature(String),
}

/// The free product, with generators numbered `a_L, x_1, ..., x_n, a_R`
/// (special points only when present).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeProduct {
    names: Vec<String>,
    orders: Vec<Option<u32>>,
    left: Option<usize>,
    right: Option<usize>,
    first_x: usize,
    n: usize,
}

impl FreeProduct {
    pub fn new(sig: &OrbifoldSignature) -> Self {
        let mut names = Vec::new();
        let mut orders = Vec::new();
        let mut left = None;
        if let Some(p) = sig.left {
            left = Some(names.len());
            names.push("aL".to_string());
            orders.push(p.order());
        }
        let first_x = names.len();
        for i in 1..=sig.n {
            names.push(format!("x{i}"));
            orders.push(None);
        }
        let mut right = None;
        if let Some(p) = sig.right {
            right = Some(names.len());
            names.push("aR".to_string());
            orders.push(p.order());
        }
        FreeProduct { names, orders, left, right, first_x, n: sig.n }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Index of `x_i`, 1-based `i`.
    pub fn x(&self, i: usize) -> usize {
        self.first_x + i - 1
    }

    pub fn a(&self, side: Side) -> Option<usize> {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }

    pub fn gen(&self, g: usize) -> FpWord {
        self.normalize(vec![(g, 1)])
    }

    /// Reduce syllables: merge neighbours, take torsion exponents into
    /// `1..p-1`, drop zero exponents.
    pub fn normalize(&self, syllables: Vec<(usize, i64)>) -> FpWord {
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(syllables.len());
        for (g, e) in syllables {
            let mut e = e;
            if let Some(last) = out.last_mut() {
                if last.0 == g {
                    e += last.1;
                    out.pop();
                }
            }
            if let Some(p) = self.orders[g] {
                e = e.rem_euclid(p as i64);
            }
            if e != 0 {
                out.push((g, e));
            }
        }
        FpWord { syllables: out }
    }

    pub fn mul(&self, u: &FpWord, v: &FpWord) -> FpWord {
        let mut s = u.syllables.clone();
        s.extend_from_slice(&v.syllables);
        self.normalize(s)
    }

    pub fn inverse(&self, u: &FpWord) -> FpWord {
        self.normalize(u.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn conj(&self, c: &FpWord, w: &FpWord) -> FpWord {
        self.mul(&self.mul(c, w), &self.inverse(c))
    }

    pub fn product(&self, ws: &[&FpWord]) -> FpWord {
        let s = ws.iter().flat_map(|w| w.syllables.iter().copied()).collect();
        self.normalize(s)
    }

    /// `a_L x_1 ⋯ x_n a_R`.
    pub fn boundary(&self) -> FpWord {
        self.normalize((0..self.rank()).map(|g| (g, 1)).collect())
    }

    pub fn format(&self, w: &FpWord) -> String {
        if w.syllables.is_empty() {
            return "1".to_string();
        }
        w.syllables
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    self.names[g].clone()
                } else {
                    format!("{}^{e}", self.names[g])
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parse e.g. `"aL x1 aL aL x2^-1"`.
    pub fn parse(&self, text: &str) -> Option<FpWord> {
        let mut syl = Vec::new();
        for tok in text.split_whitespace() {
            let (name, e) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse().ok()?),
                None => (tok, 1),
            };
            let g = self.names.iter().position(|x| x == name)?;
            syl.push((g, e));
        }
        Some(self.normalize(syl))
    }
}

/// A word of the free product in syllable normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FpWord {
    pub syllables: Vec<(usize, i64)>,
}

impl FpWord {
    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letter length, counting `g^e` as `|e|`.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }
}

/// Images of all free-product generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BraidAction {
    pub images: Vec<FpWord>,
}

impl BraidAction {
    pub fn identity(fp: &FreeProduct) -> Self {
        BraidAction { images: (0..fp.rank()).map(|g| fp.gen(g)).collect() }
    }

    pub fn apply(&self, fp: &FreeProduct, w: &FpWord) -> FpWord {
        let mut s = Vec::new();
        for &(g, e) in &w.syllables {
            let img = if e > 0 { self.images[g].clone() } else { fp.inverse(&self.images[g]) };
            for _ in 0..e.unsigned_abs() {
                s.extend_from_slice(&img.syllables);
            }
        }
        fp.normalize(s)
    }

    /// `self ∘ other`.
    pub fn compose(&self, fp: &FreeProduct, other: &BraidAction) -> Self {
        BraidAction { images: other.images.iter().map(|w| self.apply(fp, w)).collect() }
    }

    pub fn conjugate(&self, fp: &FreeProduct, c: &FpWord) -> Self {
        BraidAction { images: self.images.iter().map(|w| fp.conj(c, w)).collect() }
    }

    pub fn is_identity(&self, fp: &FreeProduct) -> bool {
        *self == BraidAction::identity(fp)
    }

    /// Permutation of the `x_i` read off the images (0-based, `None` when an
    /// image is not a conjugate of some `x_j`).
    pub fn strand_permutation(&self, fp: &FreeProduct) -> Option<Vec<usize>> {
        (1..=fp.n)
            .map(|i| conjugate_of(fp, &self.images[fp.x(i)]).and_then(|(_, g, e)| {
                (e == 1 && g >= fp.first_x && g < fp.first_x + fp.n).then(|| g - fp.first_x)
            }))
            .collect()
    }
}

/// Split a normal form `c · g^e · c^{-1}` into `(c, g, e)`.
fn conjugate_of(fp: &FreeProduct, w: &FpWord) -> Option<(FpWord, usize, i64)> {
    let len = w.syllables.len();
    if len % 2 == 0 {
        return None;
    }
    let h = len / 2;
    let (g, e) = w.syllables[h];
    let c = FpWord { syllables: w.syllables[..h].to_vec() };
    (fp.conj(&c, &fp.normalize(vec![(g, e)])) == *w).then_some((c, g, e))
}

/// Outer class: a canonical representative of `{ c φ c^{-1} }`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OutClass {
    pub images: Vec<FpWord>,
}

fn canonical_outclass(fp: &FreeProduct, act: &BraidAction) -> OutClass {
    // Normalize so that the first x generator maps to a generator exactly.
    let Some(pivot) = (fp.n > 0).then(|| fp.x(1)) else {
        return OutClass { images: act.images.clone() };
    };
    let mut cur = act.clone();
    if let Some((c, _, _)) = conjugate_of(fp, &cur.images[pivot]) {
        let cand = cur.conjugate(fp, &fp.inverse(&c));
        if cand.images[pivot].syllables.len() == 1 {
            cur = cand;
        }
    }
    let centre = match cur.images[pivot].syllables.as_slice() {
        [(g, _)] if fp.orders[*g].is_none() => *g,
        _ => return OutClass { images: cur.images },
    };
    // Remaining freedom: conjugation by powers of the pivot image.
    let bound = cur.images.iter().map(|w| w.length()).sum::<u64>() as i64 + 1;
    let key = |a: &BraidAction| -> Vec<(u64, FpWord)> {
        a.images.iter().map(|w| (w.length(), w.clone())).collect()
    };
    let mut best = cur.clone();
    let mut best_key = key(&best);
    for k in -bound..=bound {
        let c = fp.normalize(vec![(centre, k)]);
        let cand = cur.conjugate(fp, &c);
        let ck = key(&cand);
        if ck.cmp(&best_key) == Ordering::Less {
            best = cand;
            best_key = ck;
        }
    }
    OutClass { images: best.images }
}

/// Per-letter action tables of a signature.
#[derive(Debug, Clone)]
pub struct ActionTable {
    sig: OrbifoldSignature,
    fp: FreeProduct,
}

impl ActionTable {
    /// A table only for signatures on which the outer action is well
    /// defined.
    pub fn new(sig: OrbifoldSignature) -> Result<Self, ActionError> {
        let report = verify_action_relations(&sig);
        if !report.passed() {
            return Err(ActionError::NotWellDefined {
                sig: sig.to_string(),
                failures: report.failures(),
            });
        }
        Ok(Self::new_unchecked(sig))
    }

    /// A table without the well-definedness check, for diagnostics.
    pub fn new_unchecked(sig: OrbifoldSignature) -> Self {
        ActionTable { sig, fp: FreeProduct::new(&sig) }
    }

    pub fn free_product(&self) -> &FreeProduct {
        &self.fp
    }

    pub fn signature(&self) -> OrbifoldSignature {
        self.sig
    }

    pub fn generator_action(&self, letter: BraidLetter) -> BraidAction {
        let fp = &self.fp;
        let mut act = BraidAction::identity(fp);
        match letter.gen {
            Generator::Sigma(i) => {
                let (xi, xj) = (fp.x(i), fp.x(i + 1));
                let (gi, gj) = (fp.gen(xi), fp.gen(xj));
                if letter.inverse {
                    act.images[xi] = gj.clone();
                    act.images[xj] = fp.conj(&fp.inverse(&gj), &gi);
                } else {
                    act.images[xi] = fp.conj(&gi, &gj);
                    act.images[xj] = gi;
                }
            }
            Generator::Loop(side) => {
                let a = fp.a(side).expect("loop letter without special point");
                let pair = match side {
                    Side::Left => [a, fp.x(1)],
                    Side::Right => [fp.x(fp.n), a],
                };
                let mut p = fp.mul(&fp.gen(pair[0]), &fp.gen(pair[1]));
                if letter.inverse {
                    p = fp.inverse(&p);
                }
                for g in pair {
                    act.images[g] = fp.conj(&p, &fp.gen(g));
                }
            }
        }
        act
    }

    pub fn letters_action(&self, letters: &[BraidLetter]) -> BraidAction {
        let mut acc = BraidAction::identity(&self.fp);
        for &l in letters {
            acc = acc.compose(&self.fp, &self.generator_action(l));
        }
        acc
    }

    pub fn word_action(&self, w: &BraidWord) -> Result<BraidAction, ActionError> {
        if w.signature() != self.sig {
            return Err(ActionError::Signature(w.signature().to_string()));
        }
        Ok(self.letters_action(w.letters()))
    }

    pub fn outclass(&self, w: &BraidWord) -> Result<OutClass, ActionError> {
        Ok(canonical_outclass(&self.fp, &self.word_action(w)?))
    }

    pub fn format_action(&self, act: &BraidAction) -> Vec<String> {
        act.images
            .iter()
            .enumerate()
            .map(|(g, w)| format!("{} -> {}", self.fp.names[g], self.fp.format(w)))
            .collect()
    }

    pub fn is_inner(&self, act: &BraidAction) -> bool {
        canonical_outclass(&self.fp, act) == canonical_outclass(&self.fp, &BraidAction::identity(&self.fp))
    }
}

pub fn fp_normal_form(fp: &FreeProduct, w: &FpWord) -> FpWord {
    fp.normalize(w.syllables.clone())
}

/// Outer class of a braid. Fails when the action is not well defined on
/// the signature.
pub fn braid_to_outclass(w: &BraidWord) -> Result<OutClass, ActionError> {
    ActionTable::new(w.signature())?.outclass(w)
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionRelationCheck {
    pub relation: String,
    /// Both sides act identically.
    pub exact: bool,
    /// Both sides agree up to an inner automorphism.
    pub outer: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionReport {
    pub signature: String,
    pub relations: Vec<ActionRelationCheck>,
    pub boundary_preserved: bool,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.boundary_preserved && self.relations.iter().all(|r| r.outer)
    }

    pub fn failures(&self) -> Vec<String> {
        self.relations.iter().filter(|r| !r.outer).map(|r| r.relation.clone()).collect()
    }
}

/// Check every relation of the presentation against the outer action.
pub fn verify_action_relations(sig: &OrbifoldSignature) -> ActionReport {
    let table = ActionTable::new_unchecked(*sig);
    let fp = &table.fp;
    let boundary = fp.boundary();
    let boundary_preserved = sig.generators().into_iter().all(|g| {
        [false, true].into_iter().all(|inverse| {
            table.generator_action(BraidLetter { gen: g, inverse }).apply(fp, &boundary) == boundary
        })
    });
    let relations = orbifold_presentation(sig)
        .relations
        .iter()
        .map(|r| {
            let l = table.letters_action(&r.lhs);
            let rr = table.letters_action(&r.rhs);
            ActionRelationCheck {
                relation: r.kind.to_string(),
                exact: l == rr,
                outer: canonical_outclass(fp, &l) == canonical_outclass(fp, &rr),
            }
        })
        .collect();
    ActionReport { signature: sig.to_string(), relations, boundary_preserved }
}

impl fmt::Display for OutClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .map(|w| w.syllables.iter().map(|(g, e)| format!("{g}^{e}")).collect::<Vec<_>>().join("."))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::SpecialPoint;

    #[test]
    fn normal_forms() {
        let fp = FreeProduct::new(&OrbifoldSignature::k(2));
        assert!(fp.parse("aL aL").unwrap().is_identity());
        assert!(fp.parse("x1 x1^-1").unwrap().is_identity());
        let w = fp.parse("aL x1 aL aL x2").unwrap();
        assert_eq!(fp.format(&w), "aL x1 x2");
        assert_eq!(fp_normal_form(&fp, &w), w);
        let c3 = OrbifoldSignature::new(1, Some(SpecialPoint::Cone(3)), None).unwrap();
        let fp3 = FreeProduct::new(&c3);
        assert_eq!(fp.format(&fp.inverse(&fp.parse("aL").unwrap())), "aL");
        assert_eq!(fp3.format(&fp3.parse("aL^-1").unwrap()), "aL^2");
    }

    #[test]
    fn artin_action() {
        let t = ActionTable::new_unchecked(OrbifoldSignature::plain(3));
        let fp = t.free_product();
        let s1 = t.generator_action(BraidLetter::sigma(1));
        assert_eq!(fp.format(&s1.images[fp.x(1)]), "x1 x2 x1^-1");
        let sq = t.letters_action(&[BraidLetter::sigma(1), BraidLetter::sigma(1)]);
        assert_eq!(fp.format(&sq.images[fp.x(1)]), "x1 x2 x1 x2^-1 x1^-1");
        let back = t.letters_action(&[BraidLetter::sigma(1), BraidLetter::sigma_inv(1)]);
        assert!(back.is_identity(fp));
        assert_eq!(s1.strand_permutation(fp), Some(vec![1, 0, 2]));
    }

    #[test]
    fn punctured_and_plain_are_well_defined() {
        for n in 1..=4 {
            for sig in [
                OrbifoldSignature::plain(n),
                OrbifoldSignature::punctured(n),
                OrbifoldSignature::k(1),
            ] {
                assert!(verify_action_relations(&sig).passed(), "{sig}");
            }
        }
        for n in 2..=4 {
            assert!(verify_action_relations(&OrbifoldSignature::two_punctures(n)).passed());
        }
    }

    #[test]
    fn cone_square_is_not_inner() {
        for n in 2..=4 {
            let t = ActionTable::new_unchecked(OrbifoldSignature::k(n));
            let sq = t.letters_action(&[BraidLetter::tau(Side::Left); 2]);
            assert!(!sq.is_identity(t.free_product()));
            assert!(!t.is_inner(&sq));
            assert!(ActionTable::new(OrbifoldSignature::k(n)).is_err());
        }
        let t = ActionTable::new_unchecked(OrbifoldSignature::k(1));
        let sq = t.letters_action(&[BraidLetter::tau(Side::Left); 2]);
        assert!(!sq.is_identity(t.free_product()));
        assert!(t.is_inner(&sq));
    }

    #[test]
    fn outclass_basics() {
        let sig = OrbifoldSignature::punctured(3);
        let t = ActionTable::new(sig).unwrap();
        let e = t.outclass(&BraidWord::empty(sig)).unwrap();
        let s1 = t.outclass(&BraidWord::parse(sig, "s1").unwrap()).unwrap();
        assert_ne!(e, s1);
        let conj = BraidWord::parse(sig, "s2 tL s1 tL' s1' s2'").unwrap();
        let c = t.outclass(&conj.mul(&conj.invert())).unwrap();
        assert_eq!(c, e);
    }
}
