//! Garside normal forms for the spherical Artin groups `A_m`, `B_n`, `D_n`.
//!
//! Simple elements are Weyl-group elements (signed permutations); the braid
//! generator `g_i` is the simple reflection in the `i`-th simple root. The
//! normal form is `Δ^inf · s_1 ⋯ s_k` with every consecutive pair left-weighted.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{ArtinLetter, ArtinWord, Family};
use crate::weyl::SignedPermutation;

/// Largest supported number of Weyl coordinates.
pub const MAX_RANK: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GarsideError {
    #[error("family {0} is not spherical")]
    NotSpherical(Family),
    #[error("rank {0} is outside the supported range (at most {MAX_RANK} coordinates)")]
    Rank(usize),
    #[error("Δ g{0} Δ^-1 is not a generator")]
    NotAGenerator(usize),
    #[error("generator index {0} out of range")]
    Generator(usize),
}

/// A simple element together with its length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Simple {
    pub element: SignedPermutation,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GarsideNF {
    pub inf: i64,
    pub factors: Vec<Simple>,
}

impl GarsideNF {
    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }
}

impl fmt::Display for GarsideNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.inf)?;
        if !self.factors.is_empty() {
            let parts: Vec<String> = self.factors.iter().map(|s| s.element.to_string()).collect();
            write!(f, " · {}", parts.join(" | "))?;
        }
        Ok(())
    }
}

/// Garside structure of one spherical Artin group.
#[derive(Debug, Clone)]
pub struct GarsideGroup {
    family: Family,
    rank: usize,
    coords: usize,
    reflections: Vec<SignedPermutation>,
    roots: Vec<Vec<i64>>,
    w0: SignedPermutation,
}

impl GarsideGroup {
    /// `rank` is the number of diagram nodes.
    pub fn new(family: Family, rank: usize) -> Result<Self, GarsideError> {
        let coords = match family {
            Family::A => rank + 1,
            Family::B | Family::D => rank,
            f => return Err(GarsideError::NotSpherical(f)),
        };
        let min = if family == Family::A { 1 } else { 2 };
        if rank < min || coords > MAX_RANK + usize::from(family == Family::A) {
            return Err(GarsideError::Rank(rank));
        }
        let n = coords;
        let unit = |i: usize, s: i64| {
            let mut v = vec![0; n];
            v[i - 1] = s;
            v
        };
        let diff = |hi: usize, lo: usize| {
            let mut v = unit(hi, 1);
            v[lo - 1] = -1;
            v
        };
        let mut reflections = Vec::new();
        let mut roots = Vec::new();
        match family {
            Family::A => {
                for i in 1..=rank {
                    reflections.push(SignedPermutation::transposition(n, i));
                    roots.push(diff(i + 1, i));
                }
            }
            Family::B => {
                reflections.push(SignedPermutation::flip(n, 1));
                roots.push(unit(1, 1));
                for i in 2..=rank {
                    reflections.push(SignedPermutation::transposition(n, i - 1));
                    roots.push(diff(i, i - 1));
                }
            }
            Family::D => {
                let mut line: Vec<i64> = (1..=n as i64).collect();
                line[0] = -2;
                line[1] = -1;
                reflections.push(SignedPermutation::from_one_line(&line).unwrap());
                let mut r = unit(1, 1);
                r[1] = 1;
                roots.push(r);
                reflections.push(SignedPermutation::transposition(n, 1));
                roots.push(diff(2, 1));
                for i in 3..=rank {
                    reflections.push(SignedPermutation::transposition(n, i - 1));
                    roots.push(diff(i, i - 1));
                }
            }
            _ => unreachable!(),
        }
        let w0 = match family {
            Family::A => {
                let line: Vec<i64> = (1..=n as i64).rev().collect();
                SignedPermutation::from_one_line(&line).unwrap()
            }
            Family::B => SignedPermutation::negation(n),
            Family::D => {
                let mut line: Vec<i64> = (1..=n as i64).map(|i| -i).collect();
                if n % 2 == 0 {
                    line[0] = -1;
                } else {
                    line[0] = 1;
                }
                SignedPermutation::from_one_line(&line).unwrap()
            }
            _ => unreachable!(),
        };
        Ok(GarsideGroup { family, rank, coords, reflections, roots, w0 })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of Weyl coordinates.
    pub fn coords(&self) -> usize {
        self.coords
    }

    pub fn longest_element(&self) -> &SignedPermutation {
        &self.w0
    }

    pub fn reflection(&self, i: usize) -> &SignedPermutation {
        &self.reflections[i - 1]
    }

    fn length(&self, w: &SignedPermutation) -> usize {
        w.length(self.family).expect("element outside the Weyl group")
    }

    fn simple(&self, element: SignedPermutation) -> Simple {
        let length = self.length(&element);
        Simple { element, length }
    }

    fn is_right_descent(&self, w: &SignedPermutation, t: usize) -> bool {
        !crate::weyl::is_positive(&w.apply(&self.roots[t]))
    }

    fn is_left_descent(&self, w: &SignedPermutation, t: usize) -> bool {
        !crate::weyl::is_positive(&w.inverse().apply(&self.roots[t]))
    }

    /// Move letters of `b` into `a` until the pair is left-weighted.
    fn slide(&self, a: &mut SignedPermutation, b: &mut SignedPermutation) -> bool {
        let mut changed = false;
        loop {
            let binv = b.inverse();
            let t = (0..self.rank).find(|&t| {
                !crate::weyl::is_positive(&binv.apply(&self.roots[t])) && !self.is_right_descent(a, t)
            });
            match t {
                Some(t) => {
                    *a = a.compose(&self.reflections[t]);
                    *b = self.reflections[t].compose(b);
                    changed = true;
                }
                None => return changed,
            }
        }
    }

    /// Conjugation by `Δ`, which for Weyl elements is conjugation by `w_0`.
    fn phi(&self, s: &SignedPermutation) -> SignedPermutation {
        self.w0.compose(s).compose(&self.w0)
    }

    fn check_word(&self, w: &ArtinWord) -> Result<(), GarsideError> {
        match w.letters.iter().find(|l| l.gen == 0 || l.gen > self.rank) {
            Some(l) => Err(GarsideError::Generator(l.gen)),
            None => Ok(()),
        }
    }

    pub fn normal_form(&self, w: &ArtinWord) -> Result<GarsideNF, GarsideError> {
        self.check_word(w)?;
        let mut inf: i64 = 0;
        let mut factors: Vec<SignedPermutation> = Vec::with_capacity(w.len());
        for l in &w.letters {
            let s = &self.reflections[l.gen - 1];
            if l.inverse {
                for f in factors.iter_mut() {
                    *f = self.phi(f);
                }
                inf -= 1;
                factors.push(self.w0.compose(s));
            } else {
                factors.push(s.clone());
            }
        }
        Ok(self.normalize(inf, factors))
    }

    fn normalize(&self, mut inf: i64, mut factors: Vec<SignedPermutation>) -> GarsideNF {
        loop {
            let mut changed = false;
            for i in (0..factors.len().saturating_sub(1)).rev() {
                let (left, right) = factors.split_at_mut(i + 1);
                changed |= self.slide(&mut left[i], &mut right[0]);
            }
            if !changed {
                break;
            }
        }
        let lead = factors.iter().take_while(|f| **f == self.w0).count();
        inf += lead as i64;
        let factors = factors
            .into_iter()
            .skip(lead)
            .filter(|f| !f.is_identity())
            .map(|f| self.simple(f))
            .collect();
        GarsideNF { inf, factors }
    }

    pub fn equal(&self, u: &ArtinWord, v: &ArtinWord) -> Result<bool, GarsideError> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// Weyl image of an Artin word.
    pub fn weyl_image(&self, w: &ArtinWord) -> SignedPermutation {
        let mut acc = SignedPermutation::identity(self.coords);
        for l in &w.letters {
            acc = acc.compose(&self.reflections[l.gen - 1]);
        }
        acc
    }

    /// A reduced positive word for a Weyl element.
    pub fn simple_word(&self, s: &SignedPermutation) -> ArtinWord {
        let mut gens = Vec::new();
        let mut cur = s.clone();
        while let Some(t) = (0..self.rank).find(|&t| self.is_left_descent(&cur, t)) {
            gens.push(t + 1);
            cur = self.reflections[t].compose(&cur);
        }
        ArtinWord::from_gens(gens)
    }

    /// The fundamental element as a positive word.
    pub fn delta_word(&self) -> ArtinWord {
        let m = self.rank;
        match self.family {
            Family::A => ArtinWord::from_gens((1..=m).flat_map(|k| (1..=k).rev())),
            Family::B => ArtinWord::from_gens(1..=m).pow(m),
            Family::D => ArtinWord::from_gens(1..=m).pow(m - 1),
            _ => unreachable!(),
        }
    }

    /// A word spelling out a normal form.
    pub fn nf_word(&self, nf: &GarsideNF) -> ArtinWord {
        let delta = self.delta_word();
        let mut out = if nf.inf >= 0 {
            delta.pow(nf.inf as usize)
        } else {
            delta.inverse().pow((-nf.inf) as usize)
        };
        for f in &nf.factors {
            out = out.concat(&self.simple_word(&f.element));
        }
        out
    }

    pub fn generator(&self, i: usize) -> ArtinWord {
        ArtinWord { letters: vec![ArtinLetter::new(i)] }
    }

    /// The `j` with `Δ g_i Δ^{-1} = g_j`.
    pub fn conj_by_delta(&self, i: usize) -> Result<usize, GarsideError> {
        if i == 0 || i > self.rank {
            return Err(GarsideError::Generator(i));
        }
        let d = self.delta_word();
        let conj = d.concat(&self.generator(i)).concat(&d.inverse());
        let nf = self.normal_form(&conj)?;
        for j in 1..=self.rank {
            if self.normal_form(&self.generator(j))? == nf {
                return Ok(j);
            }
        }
        Err(GarsideError::NotAGenerator(i))
    }

    /// `w` commutes with every generator and every extra word.
    pub fn is_central(&self, w: &ArtinWord, extra: &[ArtinWord]) -> Result<bool, GarsideError> {
        let gens: Vec<ArtinWord> = (1..=self.rank).map(|i| self.generator(i)).collect();
        for g in gens.iter().chain(extra) {
            if !self.equal(&w.concat(g), &g.concat(w))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn normal_form(w: &ArtinWord, family: Family, rank: usize) -> Result<GarsideNF, GarsideError> {
    GarsideGroup::new(family, rank)?.normal_form(w)
}

pub fn equal(u: &ArtinWord, v: &ArtinWord, family: Family, rank: usize) -> Result<bool, GarsideError> {
    GarsideGroup::new(family, rank)?.equal(u, v)
}

pub fn delta_word(family: Family, rank: usize) -> Result<ArtinWord, GarsideError> {
    Ok(GarsideGroup::new(family, rank)?.delta_word())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(gens: &[i32]) -> ArtinWord {
        ArtinWord {
            letters: gens
                .iter()
                .map(|&g| ArtinLetter { gen: g.unsigned_abs() as usize, inverse: g < 0 })
                .collect(),
        }
    }

    #[test]
    fn empty_and_squares() {
        let a2 = GarsideGroup::new(Family::A, 2).unwrap();
        assert!(a2.normal_form(&ArtinWord::new()).unwrap().is_identity());
        let nf = a2.normal_form(&w(&[1, 1])).unwrap();
        assert_eq!(nf.inf, 0);
        assert_eq!(nf.factors.len(), 2);
        assert_eq!(nf.factors[0].element, *a2.reflection(1));
        assert_eq!(nf.factors[1].element, *a2.reflection(1));
    }

    #[test]
    fn delta_words_are_garside_elements() {
        for (f, lo, hi) in [(Family::A, 1, 7), (Family::B, 2, 6), (Family::D, 2, 7)] {
            for m in lo..hi {
                let g = GarsideGroup::new(f, m).unwrap();
                let nf = g.normal_form(&g.delta_word()).unwrap();
                assert_eq!(nf, GarsideNF { inf: 1, factors: vec![] }, "{f}{m}");
                assert_eq!(g.weyl_image(&g.delta_word()), *g.longest_element());
            }
        }
        assert_eq!(delta_word(Family::A, 2).unwrap(), w(&[1, 2, 1]));
    }

    #[test]
    fn basic_equalities() {
        assert!(equal(&w(&[1, 2, 1]), &w(&[2, 1, 2]), Family::A, 2).unwrap());
        assert!(!equal(&w(&[1]), &w(&[2]), Family::D, 2).unwrap());
        assert!(equal(&w(&[1, 2, 1, 2]), &w(&[2, 1, 2, 1]), Family::B, 2).unwrap());
        assert!(equal(&w(&[1, -1]), &ArtinWord::new(), Family::D, 4).unwrap());
        assert!(equal(&w(&[-2, 3, 2]), &w(&[3, 2, -3]), Family::A, 3).unwrap());
        assert!(!equal(&w(&[1, 2]), &w(&[2, 1]), Family::A, 2).unwrap());
    }

    #[test]
    fn inverse_normal_form() {
        let d4 = GarsideGroup::new(Family::D, 4).unwrap();
        let u = w(&[1, 3, -2, 4, 3, -1, -4]);
        let nf = d4.normal_form(&u.concat(&u.inverse())).unwrap();
        assert!(nf.is_identity());
        let back = d4.nf_word(&d4.normal_form(&u).unwrap());
        assert!(d4.equal(&back, &u).unwrap());
    }

    #[test]
    fn delta_conjugation() {
        let d5 = GarsideGroup::new(Family::D, 5).unwrap();
        assert_eq!(d5.conj_by_delta(1).unwrap(), 2);
        assert_eq!(d5.conj_by_delta(3).unwrap(), 3);
        let d4 = GarsideGroup::new(Family::D, 4).unwrap();
        assert_eq!(d4.conj_by_delta(1).unwrap(), 1);
        let dd = d5.delta_word();
        assert!(d5.is_central(&dd.pow(2), &[]).unwrap());
        assert!(!d5.is_central(&dd, &[]).unwrap());
        assert!(d4.is_central(&d4.delta_word(), &[]).unwrap());
    }

    #[test]
    fn rank_limits() {
        assert!(GarsideGroup::new(Family::D, 9).is_err());
        assert!(GarsideGroup::new(Family::D, 8).is_ok());
        assert!(GarsideGroup::new(Family::ATilde, 3).is_err());
    }
}
