use orbibraid::action::ActionTable;
use orbibraid::braid::{
    check_certificate, orbifold_presentation, search_certificate, BraidLetter, BraidWord, Certificate, OrbifoldSignature,
    SearchLimits, SearchOutcome, Side, Step,
};
use orbibraid::coxeter::{ArtinLetter, ArtinWord, CoxeterDiagram, Family};
use orbibraid::embeddings::{quotient_class, retract_zk, swap12, table1_embedding, QuotientClass, Table1Row};
use orbibraid::garside::GarsideGroup;
use orbibraid::render::bottom_labels;
use orbibraid::weyl::{coset_class_via_weyl, weyl_image};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn signatures() -> Vec<OrbifoldSignature> {
    vec![
        OrbifoldSignature::plain(3),
        OrbifoldSignature::punctured(3),
        OrbifoldSignature::k(3),
        OrbifoldSignature::big_k(3),
        OrbifoldSignature::two_punctures(2),
        OrbifoldSignature::puncture_cone(3),
    ]
}

fn word_from(sig: OrbifoldSignature, raw: &[(usize, bool)]) -> BraidWord {
    let gens = sig.generators();
    let letters = raw.iter().map(|&(g, inverse)| BraidLetter { gen: gens[g % gens.len()], inverse }).collect();
    BraidWord::new(sig, letters).unwrap()
}

fn braid() -> impl Strategy<Value = BraidWord> {
    (0..signatures().len(), prop::collection::vec((0usize..8, any::<bool>()), 0..12))
        .prop_map(|(s, raw)| word_from(signatures()[s], &raw))
}

fn artin(gens: usize) -> impl Strategy<Value = ArtinWord> {
    prop::collection::vec((1..=gens, any::<bool>()), 0..10)
        .prop_map(|v| ArtinWord { letters: v.into_iter().map(|(gen, inverse)| ArtinLetter { gen, inverse }).collect() })
}

/// `u` with a relator inserted at `pos`.
fn with_relator(d: &CoxeterDiagram, u: &ArtinWord, rel: usize, pos: usize) -> ArtinWord {
    let p = d.artin_presentation();
    let r = &p.relations[rel % p.relations.len()];
    let relator = r.lhs.concat(&r.rhs.inverse());
    let cut = pos % (u.letters.len() + 1);
    let mut letters = u.letters[..cut].to_vec();
    letters.extend(relator.letters);
    letters.extend_from_slice(&u.letters[cut..]);
    ArtinWord { letters }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_reduce_is_idempotent(w in braid()) {
        let r = w.free_reduce();
        prop_assert_eq!(r.free_reduce(), r.clone());
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(weyl_image(&r), weyl_image(&w));
    }

    #[test]
    fn word_times_inverse_is_certified(w in braid()) {
        let t = w.mul(&w.invert());
        match search_certificate(&t, SearchLimits::with_depth(2)) {
            SearchOutcome::Found(c) => prop_assert!(check_certificate(&t, &c).unwrap()),
            SearchOutcome::Unknown { .. } => prop_assert!(false, "no certificate for {}", t),
        }
    }

    #[test]
    fn conjugated_relator_is_certified(s in 0..6usize, rel in 0..40usize, raw in prop::collection::vec((0usize..8, any::<bool>()), 0..3)) {
        let sig = signatures()[s];
        let pres = orbifold_presentation(&sig);
        let r = &pres.relations[rel % pres.relations.len()];
        let u = word_from(sig, &raw);
        let w = BraidWord::new(sig, r.relator()).unwrap().conjugate_by(&u);
        match search_certificate(&w, SearchLimits::with_depth(4)) {
            SearchOutcome::Found(c) => {
                prop_assert!(check_certificate(&w, &c).unwrap());
                // The same proof must not work for a different word.
                let other = w.mul(&BraidWord::new(sig, vec![BraidLetter::sigma(1)]).unwrap());
                prop_assert!(!check_certificate(&other, &c).unwrap_or(false));
            }
            SearchOutcome::Unknown { .. } => prop_assert!(false, "no certificate for {}", w),
        }
    }

    #[test]
    fn normal_form_respects_relations(u in artin(4), rel in 0..20usize, pos in 0..20usize) {
        for (family, rank) in [(Family::A, 4), (Family::B, 4), (Family::D, 4)] {
            let d = CoxeterDiagram::classical(family, rank).unwrap();
            let g = GarsideGroup::new(family, rank).unwrap();
            let v = with_relator(&d, &u, rel, pos);
            prop_assert_eq!(g.normal_form(&u).unwrap(), g.normal_form(&v).unwrap());
            prop_assert_eq!(g.weyl_image(&u), g.weyl_image(&v));
        }
    }

    #[test]
    fn swap_is_an_automorphism_of_d(u in artin(4), rel in 0..20usize, pos in 0..20usize) {
        let d = CoxeterDiagram::classical(Family::D, 4).unwrap();
        let g = GarsideGroup::new(Family::D, 4).unwrap();
        let v = with_relator(&d, &u, rel, pos);
        prop_assert!(g.equal(&swap12(&u), &swap12(&v)).unwrap());
        prop_assert_eq!(swap12(&swap12(&u)), u);
    }

    #[test]
    fn retract_inverts_the_embedding(u in artin(4)) {
        let spec = table1_embedding(Table1Row::D, 4).unwrap();
        let g = GarsideGroup::new(Family::D, 4).unwrap();
        let b = spec.apply(&u).unwrap();
        let (p, a) = retract_zk(&b).unwrap();
        prop_assert_eq!(p, 0);
        prop_assert!(g.equal(&a, &u).unwrap());
        let tau = BraidWord::new(b.signature(), vec![BraidLetter::tau(Side::Left)]).unwrap();
        let (p, a) = retract_zk(&b.conjugate_by(&tau)).unwrap();
        prop_assert_eq!(p, 0);
        prop_assert!(g.equal(&a, &swap12(&u)).unwrap());
    }

    #[test]
    fn fill_and_erase_respect_classes(raw in prop::collection::vec((0usize..8, any::<bool>()), 0..12)) {
        // Ã -> D by filling: the Z class reduces mod 2.
        let w = word_from(Table1Row::ATilde.signature(4), &raw);
        let filled = w.fill_puncture(Side::Left).unwrap();
        let QuotientClass::Z(k) = quotient_class(&w, Table1Row::ATilde) else { unreachable!() };
        prop_assert_eq!(quotient_class(&filled, Table1Row::D), QuotientClass::Z2(k.rem_euclid(2) as u8));
        // B̃ -> D̃ by filling keeps the right class.
        let w = word_from(Table1Row::BTilde.signature(4), &raw);
        let filled = w.fill_puncture(Side::Left).unwrap();
        let (QuotientClass::Z2(b), QuotientClass::Z2xZ2(_, r)) =
            (quotient_class(&w, Table1Row::BTilde), quotient_class(&filled, Table1Row::DTilde)) else { unreachable!() };
        prop_assert_eq!(b, r);
        // Erasing a point kills its loop letters and keeps the strand permutation.
        let erased = w.erase_point(Side::Right).unwrap();
        prop_assert_eq!(erased.loop_exponent(Side::Right), 0);
        let (a, b) = (weyl_image(&erased), weyl_image(&w));
        prop_assert_eq!(a.linear_part().permutation(), b.linear_part().permutation());
    }

    #[test]
    fn strand_permutations_agree(w in braid()) {
        let perm = weyl_image(&w).linear_part().permutation().to_vec();
        let t = ActionTable::new_unchecked(w.signature());
        let act = t.letters_action(w.letters());
        prop_assert_eq!(act.strand_permutation(t.free_product()), Some(perm.clone()));
        let bottom: Vec<usize> = bottom_labels(&w).into_iter().map(|s| s - 1).collect();
        prop_assert_eq!(bottom, perm);
    }
}

#[test]
fn coset_class_via_weyl_matches_quotient_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for row in Table1Row::ALL {
        for n in row.min_n()..=row.min_n() + 2 {
            let sig = row.signature(n);
            for _ in 0..500 {
                let len = rng.random_range(0..=14);
                let raw: Vec<(usize, bool)> = (0..len).map(|_| (rng.random_range(0..8), rng.random_bool(0.5))).collect();
                let w = word_from(sig, &raw);
                assert_eq!(coset_class_via_weyl(&w, row), quotient_class(&w, row), "{row}{n} {w}");
            }
        }
    }
}

#[test]
fn tampered_certificates_are_rejected() {
    let sig = OrbifoldSignature::punctured(2);
    let w = BraidWord::parse(sig, "s1 tL s1 tL s1' tL' s1' tL'").unwrap();
    let SearchOutcome::Found(c) = search_certificate(&w, SearchLimits::default()) else { panic!() };
    assert!(check_certificate(&w, &c).unwrap());
    let mut steps = c.steps.clone();
    steps.retain(|s| !matches!(s, Step::Apply { .. }));
    assert!(!check_certificate(&w, &Certificate { steps }).unwrap_or(false));
}
