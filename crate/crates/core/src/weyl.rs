//! Weyl-group images of braids.
//!
//! A [`SignedPermutation`] sends `e_i` to `sign_i · e_{π(i)}`. Composition is
//! ordinary function composition, `(f ∘ g)(x) = f(g(x))`, and a braid word
//! `u v` maps to `image(u) ∘ image(v)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidWord, Generator, Side, SpecialPoint};
use crate::coxeter::Family;
use crate::embeddings::{QuotientClass, Table1Row};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("{0} is not in W({1})")]
    NotInGroup(String, String),
    #[error("family {0} has no finite Weyl group here")]
    NotSpherical(Family),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: (0..n).collect(), signs: vec![1; n] }
    }

    /// From one-line notation: `w[i-1] = ±j` means `e_i ↦ ±e_j`.
    pub fn from_one_line(w: &[i64]) -> Option<Self> {
        let n = w.len();
        let mut seen = vec![false; n];
        let mut perm = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for &x in w {
            let j = x.unsigned_abs() as usize;
            if j == 0 || j > n || seen[j - 1] {
                return None;
            }
            seen[j - 1] = true;
            perm.push(j - 1);
            signs.push(if x < 0 { -1 } else { 1 });
        }
        Some(SignedPermutation { perm, signs })
    }

    /// Swap of coordinates `i` and `i+1` (1-based).
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.perm.swap(i - 1, i);
        p
    }

    /// Sign change of coordinate `i` (1-based).
    pub fn flip(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.signs[i - 1] = -1;
        p
    }

    /// `-id`.
    pub fn negation(n: usize) -> Self {
        SignedPermutation { perm: (0..n).collect(), signs: vec![-1; n] }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// `π(i)` and the sign for 1-based `i`.
    pub fn image_of(&self, i: usize) -> (usize, i8) {
        (self.perm[i - 1] + 1, self.signs[i - 1])
    }

    pub fn one_line(&self) -> Vec<i64> {
        self.perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| s as i64 * (p as i64 + 1))
            .collect()
    }

    /// Underlying permutation, 0-based.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPermutation) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            let j = other.perm[i];
            perm[i] = self.perm[j];
            signs[i] = other.signs[i] * self.signs[j];
        }
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0; x.len()];
        for i in 0..x.len() {
            out[self.perm[i]] += self.signs[i] as i64 * x[i];
        }
        out
    }

    pub fn flip_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    /// Membership in `W(D_n)`: an even number of sign changes.
    pub fn in_d_subgroup(&self) -> bool {
        self.flip_count() % 2 == 0
    }

    pub fn in_group(&self, family: Family) -> bool {
        match family {
            Family::A => self.flip_count() == 0,
            Family::B => true,
            Family::D => self.in_d_subgroup(),
            _ => false,
        }
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, family: Family) -> Result<usize, WeylError> {
        if !family.is_affine() && !self.in_group(family) {
            return Err(WeylError::NotInGroup(self.to_string(), family.to_string()));
        }
        if family.is_affine() {
            return Err(WeylError::NotSpherical(family));
        }
        Ok(positive_roots(family, self.n())
            .iter()
            .filter(|r| !is_positive(&self.apply(r)))
            .count())
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A root is positive when its last nonzero coordinate is positive.
pub fn is_positive(root: &[i64]) -> bool {
    root.iter().rev().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

/// Positive roots of type `A_{n-1}`, `B_n` or `D_n` in `R^n`.
pub fn positive_roots(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let unit = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    for j in 0..n {
        for i in 0..j {
            let mut minus = unit(j);
            minus[i] = -1;
            out.push(minus);
            if family != Family::A {
                let mut plus = unit(j);
                plus[i] = 1;
                out.push(plus);
            }
        }
        if family == Family::B {
            out.push(unit(j));
        }
    }
    out
}

/// `x ↦ P(x) + v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeylElement {
    pub linear: SignedPermutation,
    pub translation: Vec<i64>,
}

impl AffineWeylElement {
    pub fn identity(n: usize) -> Self {
        AffineWeylElement { linear: SignedPermutation::identity(n), translation: vec![0; n] }
    }

    pub fn linear(p: SignedPermutation) -> Self {
        let n = p.n();
        AffineWeylElement { linear: p, translation: vec![0; n] }
    }

    pub fn translation(v: Vec<i64>) -> Self {
        AffineWeylElement { linear: SignedPermutation::identity(v.len()), translation: v }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineWeylElement) -> Self {
        let mut translation = self.linear.apply(&other.translation);
        for (t, s) in translation.iter_mut().zip(&self.translation) {
            *t += s;
        }
        AffineWeylElement { linear: self.linear.compose(&other.linear), translation }
    }

    pub fn inverse(&self) -> Self {
        let linear = self.linear.inverse();
        let translation = linear.apply(&self.translation).iter().map(|x| -x).collect();
        AffineWeylElement { linear, translation }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let mut out = self.linear.apply(x);
        for (o, t) in out.iter_mut().zip(&self.translation) {
            *o += t;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(|&t| t == 0)
    }

    pub fn translation_sum(&self) -> i64 {
        self.translation.iter().sum()
    }
}

impl fmt::Display for AffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.translation.iter().map(|x| x.to_string()).collect();
        write!(f, "{} + ({})", self.linear, parts.join(","))
    }
}

/// Vectors with even coordinate sum.
pub fn in_lambda(v: &[i64]) -> bool {
    v.iter().sum::<i64>().rem_euclid(2) == 0
}

/// How the left loop letter acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeylModel {
    /// `τ_L` flips the sign of coordinate 1.
    Reflection,
    /// `τ_L` translates by `e_1` (only meaningful for a left puncture).
    Winding,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeylImage {
    Finite(SignedPermutation),
    Affine(AffineWeylElement),
}

impl WeylImage {
    pub fn is_identity(&self) -> bool {
        match self {
            WeylImage::Finite(p) => p.is_identity(),
            WeylImage::Affine(a) => a.is_identity(),
        }
    }

    pub fn linear_part(&self) -> &SignedPermutation {
        match self {
            WeylImage::Finite(p) => p,
            WeylImage::Affine(a) => &a.linear,
        }
    }

    pub fn as_affine(&self) -> AffineWeylElement {
        match self {
            WeylImage::Finite(p) => AffineWeylElement::linear(p.clone()),
            WeylImage::Affine(a) => a.clone(),
        }
    }
}

impl fmt::Display for WeylImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylImage::Finite(p) => write!(f, "{p}"),
            WeylImage::Affine(a) => write!(f, "{a}"),
        }
    }
}

fn letter_image(n: usize, gen: Generator, model: WeylModel) -> AffineWeylElement {
    match gen {
        Generator::Sigma(i) => AffineWeylElement::linear(SignedPermutation::transposition(n, i)),
        Generator::Loop(Side::Left) => match model {
            WeylModel::Reflection => AffineWeylElement::linear(SignedPermutation::flip(n, 1)),
            WeylModel::Winding => {
                let mut v = vec![0; n];
                v[0] = 1;
                AffineWeylElement::translation(v)
            }
        },
        Generator::Loop(Side::Right) => {
            let mut v = vec![0; n];
            v[n - 1] = 1;
            AffineWeylElement { linear: SignedPermutation::flip(n, n), translation: v }
        }
    }
}

/// Weyl image with an explicit model for the left loop letter.
pub fn weyl_image_with(w: &BraidWord, model: WeylModel) -> WeylImage {
    let sig = w.signature();
    let n = sig.n;
    let model = match sig.left {
        Some(SpecialPoint::Puncture) => model,
        _ => WeylModel::Reflection,
    };
    let mut acc = AffineWeylElement::identity(n);
    for l in w.letters() {
        let mut g = letter_image(n, l.gen, model);
        if l.inverse {
            g = g.inverse();
        }
        acc = acc.compose(&g);
    }
    let affine = sig.right.is_some() || model == WeylModel::Winding;
    if affine {
        WeylImage::Affine(acc)
    } else {
        WeylImage::Finite(acc.linear)
    }
}

/// Weyl image with `τ_L` acting by reflection.
pub fn weyl_image(w: &BraidWord) -> WeylImage {
    weyl_image_with(w, WeylModel::Reflection)
}

/// The quotient class read off the Weyl image.
pub fn coset_class_via_weyl(w: &BraidWord, row: Table1Row) -> QuotientClass {
    let img = weyl_image_with(w, row.weyl_model()).as_affine();
    let flips = (img.linear.flip_count() % 2) as u8;
    let sum = img.translation_sum();
    let sum2 = sum.rem_euclid(2) as u8;
    match row.family() {
        Family::A | Family::B | Family::CTilde => QuotientClass::Trivial,
        Family::D => QuotientClass::Z2(flips),
        Family::BTilde => QuotientClass::Z2(sum2),
        Family::ATilde => QuotientClass::Z(sum),
        Family::DTilde => QuotientClass::Z2xZ2((flips + sum2) % 2, sum2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{orbifold_presentation, BraidWord, OrbifoldSignature};

    #[test]
    fn composition_convention() {
        let s = SignedPermutation::transposition(3, 1);
        let f = SignedPermutation::flip(3, 1);
        let sf = s.compose(&f);
        assert_eq!(sf.apply(&[1, 0, 0]), s.apply(&f.apply(&[1, 0, 0])));
        assert_eq!(sf.one_line(), vec![-2, 1, 3]);
        assert!(sf.compose(&sf.inverse()).is_identity());
        let a = AffineWeylElement { linear: sf.clone(), translation: vec![1, 0, 2] };
        let b = AffineWeylElement { linear: f, translation: vec![0, 3, 0] };
        let x = [5, -1, 7];
        assert_eq!(a.compose(&b).apply(&x), a.apply(&b.apply(&x)));
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn lengths() {
        for n in 2..6 {
            assert_eq!(SignedPermutation::identity(n).length(Family::D).unwrap(), 0);
            assert_eq!(SignedPermutation::transposition(n, 1).length(Family::D).unwrap(), 1);
            assert_eq!(SignedPermutation::negation(n).length(Family::B).unwrap(), n * n);
        }
        assert_eq!(SignedPermutation::negation(4).length(Family::D).unwrap(), 12);
        assert!(SignedPermutation::flip(3, 1).length(Family::D).is_err());
        let rev = SignedPermutation::from_one_line(&[3, 2, 1]).unwrap();
        assert_eq!(rev.length(Family::A).unwrap(), 3);
    }

    #[test]
    fn membership() {
        assert!(SignedPermutation::identity(3).in_d_subgroup());
        assert!(!SignedPermutation::flip(3, 1).in_d_subgroup());
        assert!(in_lambda(&[1, 1, 0]));
        assert!(!in_lambda(&[1, 0, 0]));
    }

    #[test]
    fn letter_images() {
        let k = OrbifoldSignature::k(3);
        let t = BraidWord::parse(k, "tL").unwrap();
        assert_eq!(weyl_image(&t), WeylImage::Finite(SignedPermutation::flip(3, 1)));
        let big = OrbifoldSignature::big_k(3);
        let tr = BraidWord::parse(big, "tR").unwrap();
        let img = weyl_image(&tr).as_affine();
        assert_eq!(img.apply(&[0, 0, 0]), vec![0, 0, 1]);
        assert_eq!(img.apply(&[0, 0, 1]), vec![0, 0, 0]);
    }

    #[test]
    fn relators_map_to_identity() {
        let sigs = [
            OrbifoldSignature::plain(4),
            OrbifoldSignature::k(4),
            OrbifoldSignature::punctured(4),
            OrbifoldSignature::big_k(4),
            OrbifoldSignature::two_punctures(4),
            OrbifoldSignature::puncture_cone(4),
        ];
        for sig in sigs {
            for rel in orbifold_presentation(&sig).relations {
                let w = BraidWord::new(sig, rel.relator()).unwrap();
                for model in [WeylModel::Reflection, WeylModel::Winding] {
                    assert!(weyl_image_with(&w, model).is_identity(), "{sig} {}", rel.kind);
                }
            }
        }
    }
}
