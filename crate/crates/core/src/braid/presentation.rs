use std::fmt;

use super::{reduce_letters, BraidLetter, Generator, OrbifoldSignature, Side, SpecialPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    /// `σ_i σ_j = σ_j σ_i`, `|i - j| >= 2`.
    FarCommute(usize, usize),
    /// `σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}`.
    Braid(usize),
    /// `τ σ_i = σ_i τ` for a loop letter and a distant crossing.
    LoopCommute(Side, usize),
    /// `σ τ σ τ = τ σ τ σ` with the adjacent crossing.
    FourBraid(Side),
    /// `τ_L τ_R = τ_R τ_L`.
    LoopsCommute,
    /// `τ^p = 1` at a cone point.
    Torsion(Side, u32),
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = |s: &Side| if *s == Side::Left { "L" } else { "R" };
        match self {
            RelationKind::FarCommute(i, j) => write!(f, "R1(s{i},s{j})"),
            RelationKind::Braid(i) => write!(f, "R2(s{i},s{})", i + 1),
            RelationKind::LoopCommute(s, i) => write!(f, "R3{}(s{i})", tag(s)),
            RelationKind::FourBraid(s) => write!(f, "R4{}", tag(s)),
            RelationKind::LoopsCommute => f.write_str("R5"),
            RelationKind::Torsion(s, p) => write!(f, "R6{}(p={p})", tag(s)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldRelation {
    pub kind: RelationKind,
    pub lhs: Vec<BraidLetter>,
    pub rhs: Vec<BraidLetter>,
}

impl OrbifoldRelation {
    /// `lhs · rhs^{-1}`, unreduced.
    pub fn relator(&self) -> Vec<BraidLetter> {
        let mut r = self.lhs.clone();
        r.extend(self.rhs.iter().rev().map(|l| l.inv()));
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldPresentation {
    pub signature: OrbifoldSignature,
    pub generators: Vec<Generator>,
    pub relations: Vec<OrbifoldRelation>,
}

impl OrbifoldPresentation {
    /// Relators in reduced form, indexed like `relations`.
    pub fn reduced_relators(&self) -> Vec<Vec<BraidLetter>> {
        self.relations
            .iter()
            .map(|r| reduce_letters(&self.signature, &r.relator()))
            .collect()
    }
}

fn s(i: usize) -> BraidLetter {
    BraidLetter::sigma(i)
}

fn t(side: Side) -> BraidLetter {
    BraidLetter::tau(side)
}

/// The finite presentation of `Z_n(L)` by relations R1-R6.
pub fn orbifold_presentation(sig: &OrbifoldSignature) -> OrbifoldPresentation {
    let n = sig.n;
    let mut rels = Vec::new();
    let mut push = |kind, lhs: Vec<BraidLetter>, rhs: Vec<BraidLetter>| {
        rels.push(OrbifoldRelation { kind, lhs, rhs })
    };
    for i in 1..n {
        for j in i + 2..n {
            push(RelationKind::FarCommute(i, j), vec![s(i), s(j)], vec![s(j), s(i)]);
        }
    }
    for i in 1..n.saturating_sub(1) {
        push(
            RelationKind::Braid(i),
            vec![s(i), s(i + 1), s(i)],
            vec![s(i + 1), s(i), s(i + 1)],
        );
    }
    if sig.left.is_some() {
        let tl = t(Side::Left);
        for i in 2..n {
            push(RelationKind::LoopCommute(Side::Left, i), vec![tl, s(i)], vec![s(i), tl]);
        }
        if n >= 2 {
            push(
                RelationKind::FourBraid(Side::Left),
                vec![s(1), tl, s(1), tl],
                vec![tl, s(1), tl, s(1)],
            );
        }
    }
    if sig.right.is_some() {
        let tr = t(Side::Right);
        for i in 1..n.saturating_sub(1) {
            push(RelationKind::LoopCommute(Side::Right, i), vec![tr, s(i)], vec![s(i), tr]);
        }
        if n >= 2 {
            push(
                RelationKind::FourBraid(Side::Right),
                vec![s(n - 1), tr, s(n - 1), tr],
                vec![tr, s(n - 1), tr, s(n - 1)],
            );
        }
    }
    if sig.left.is_some() && sig.right.is_some() {
        push(
            RelationKind::LoopsCommute,
            vec![t(Side::Left), t(Side::Right)],
            vec![t(Side::Right), t(Side::Left)],
        );
    }
    for side in [Side::Left, Side::Right] {
        if let Some(SpecialPoint::Cone(p)) = sig.point(side) {
            push(RelationKind::Torsion(side, p), vec![t(side); p as usize], vec![]);
        }
    }
    OrbifoldPresentation {
        signature: *sig,
        generators: sig.generators(),
        relations: rels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn punctured_two_strands_is_b2() {
        let p = orbifold_presentation(&OrbifoldSignature::punctured(2));
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].kind, RelationKind::FourBraid(Side::Left));
    }

    #[test]
    fn single_cone_point_one_strand() {
        let p = orbifold_presentation(&OrbifoldSignature::k(1));
        assert_eq!(p.generators, vec![Generator::Loop(Side::Left)]);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].lhs.len(), 2);
    }

    #[test]
    fn two_cones_three_strands() {
        let p = orbifold_presentation(&OrbifoldSignature::big_k(3));
        assert_eq!(p.generators.len(), 4);
        let count = |f: fn(&RelationKind) -> bool| p.relations.iter().filter(|r| f(&r.kind)).count();
        assert_eq!(count(|k| matches!(k, RelationKind::FarCommute(..))), 0);
        assert_eq!(count(|k| matches!(k, RelationKind::Braid(_))), 1);
        assert_eq!(count(|k| matches!(k, RelationKind::LoopCommute(Side::Left, _))), 1);
        assert_eq!(count(|k| matches!(k, RelationKind::LoopCommute(Side::Right, _))), 1);
        assert_eq!(count(|k| matches!(k, RelationKind::FourBraid(_))), 2);
        assert_eq!(count(|k| matches!(k, RelationKind::LoopsCommute)), 1);
        assert_eq!(count(|k| matches!(k, RelationKind::Torsion(..))), 2);
        assert_eq!(p.relations.len(), 8);
    }
}
