use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use proptest::prelude::*;
use qgrass::laurent::LaurentInt;
use qgrass::qmatrix::{
    ell, muir_lift, mul_monomials, normal_form_word, occurs_factorization, plucker, plucker_relation_lhs, pseudo_minor,
    quadratic_value, Ambient, Convention, MinorIndex, PbwElement, PbwMonomial, QuadraticTerm,
};
use qgrass::shapes::{Partition, Square};
use qgrass::suites::plucker_triples;

fn x(amb: &Ambient, sq: Square) -> PbwElement {
    PbwElement::generator(amb, sq)
}

fn word_product(amb: &Ambient, word: &[Square]) -> PbwElement {
    word.iter().fold(PbwElement::one(amb), |acc, &sq| acc.mul(&x(amb, sq)).unwrap())
}

fn square(rows: usize, cols: usize) -> impl Strategy<Value = Square> {
    (1..=rows, 1..=cols)
}

fn monomial(rows: usize, cols: usize, max: u32) -> impl Strategy<Value = PbwMonomial> {
    prop::collection::vec(0..=max, rows * cols).prop_map(move |v| {
        let exps = v.into_iter().enumerate().map(|(k, e)| ((k / cols + 1, k % cols + 1), e));
        PbwMonomial::from_exponents(rows, cols, exps)
    })
}

fn element(amb: Ambient) -> impl Strategy<Value = PbwElement> {
    let (r, c) = (amb.rows(), amb.cols());
    prop::collection::vec((monomial(r, c, 1), -2i64..=2, -3i64..=3), 0..3).prop_map(move |terms| {
        let mut out = PbwElement::zero(&amb);
        for (m, k, c) in terms {
            out.add_term(m, LaurentInt::monomial(BigInt::from(c), k));
        }
        out
    })
}

fn quad(c: LaurentInt, l: &[usize], r: &[usize]) -> QuadraticTerm {
    QuadraticTerm { coeff: c, left: l.to_vec(), right: r.to_vec() }
}

fn short_relation() -> Vec<QuadraticTerm> {
    vec![
        quad(LaurentInt::one(), &[1, 2], &[3, 4]),
        quad(-LaurentInt::q_pow(1), &[1, 3], &[2, 4]),
        quad(LaurentInt::q_pow(2), &[1, 4], &[2, 3]),
    ]
}

proptest! {
    #[test]
    fn rewriting_order_does_not_matter(
        word in prop::collection::vec(square(3, 3), 0..6),
        picks in prop::collection::vec(any::<usize>(), 64),
    ) {
        let amb = Ambient::full(3, 3);
        let mut k = 0;
        let mut chooser = |n: usize| { k += 1; picks[k % picks.len()] % n };
        let by_word = normal_form_word(&amb, &word, &mut chooser);
        let leftmost = normal_form_word(&amb, &word, &mut |_| 0);
        prop_assert_eq!(&by_word, &word_product(&amb, &word));
        prop_assert_eq!(by_word, leftmost);
    }

    #[test]
    fn product_leads_with_the_sum_of_exponents(m in monomial(2, 3, 2), n in monomial(2, 3, 2)) {
        let amb = Ambient::full(2, 3);
        let prod = mul_monomials(&amb, &m, &n);
        let (lead, c) = prod.leading_monomial().unwrap();
        prop_assert_eq!(lead, m.add(&n));
        prop_assert!(c.as_q_power().is_some());
    }

    #[test]
    fn occurring_monomials_factor(m in monomial(2, 3, 1), extra in monomial(2, 3, 2)) {
        let amb = Ambient::full(2, 3);
        let n = m.add(&extra);
        let (k, rest) = occurs_factorization(&amb, &m, &n).unwrap().unwrap();
        prop_assert_eq!(&rest, &extra);
        let diff = PbwElement::from_monomial(&amb, n.clone(), LaurentInt::one())
            .sub(&mul_monomials(&amb, &rest, &m).scale(&LaurentInt::q_pow(k)))
            .unwrap();
        prop_assert!(diff.terms().all(|(mono, _)| mono < &n));
    }

    #[test]
    fn multiplication_is_associative(
        a in element(Ambient::full(2, 2)),
        b in element(Ambient::full(2, 2)),
        c in element(Ambient::full(2, 2)),
    ) {
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn text_round_trip(a in element(Ambient::full(2, 3))) {
        let amb = Ambient::full(2, 3);
        prop_assert_eq!(PbwElement::parse(&amb, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn ell_counts_strict_pairs(
        i in prop::collection::btree_set(1usize..=9, 0..5),
        j in prop::collection::btree_set(1usize..=9, 0..5),
    ) {
        let (i, j): (Vec<usize>, Vec<usize>) = (i.into_iter().collect(), j.into_iter().collect());
        let equal = i.iter().filter(|a| j.contains(a)).count();
        prop_assert_eq!(ell(&i, &j) + ell(&j, &i), i.len() * j.len() - equal);
    }

    #[test]
    fn plucker_coordinates_have_degree_m(cols in prop::sample::subsequence((1..=6).collect::<Vec<usize>>(), 3)) {
        let amb = Ambient::full(3, 6);
        let p = plucker(&amb, &cols).unwrap();
        prop_assert!(!p.is_zero());
        prop_assert!(p.terms().all(|(m, _)| m.degree() == 3));
    }
}

#[test]
fn stated_products() {
    let amb = Ambient::full(2, 2);
    let q = LaurentInt::q_pow;
    assert_eq!(x(&amb, (2, 1)).mul(&x(&amb, (1, 2))).unwrap().to_string(), "1*q^0 * x[1,2] x[2,1]");
    let nasty = x(&amb, (2, 2)).mul(&x(&amb, (1, 1))).unwrap();
    let want = word_product(&amb, &[(1, 1), (2, 2)])
        .sub(&word_product(&amb, &[(1, 2), (2, 1)]).scale(&(&q(1) - &q(-1))))
        .unwrap();
    assert_eq!(nasty, want);
    let row = x(&amb, (1, 2)).mul(&x(&amb, (1, 1))).unwrap();
    assert_eq!(row, word_product(&amb, &[(1, 1), (1, 2)]).scale(&q(-1)));
}

#[test]
fn partition_minors() {
    let amb = Ambient::partition(Partition::new(vec![4, 3, 1]).unwrap());
    let q = LaurentInt::q_pow(1);
    let m1212 = pseudo_minor(&amb, &MinorIndex::new(vec![1, 2], vec![1, 2]).unwrap()).unwrap();
    let want = word_product(&amb, &[(1, 1), (2, 2)]).sub(&word_product(&amb, &[(1, 2), (2, 1)]).scale(&q)).unwrap();
    assert_eq!(m1212, want);
    let m1234 = pseudo_minor(&amb, &MinorIndex::new(vec![1, 2], vec![3, 4]).unwrap()).unwrap();
    assert_eq!(m1234, word_product(&amb, &[(1, 4), (2, 3)]).scale(&-q));
    assert!(pseudo_minor(&amb, &MinorIndex::new(vec![3], vec![2]).unwrap()).unwrap().is_zero());
}

#[test]
fn plucker_small_cases() {
    let amb = Ambient::full(1, 4);
    for j in 1..=4 {
        assert_eq!(plucker(&amb, &[j]).unwrap(), x(&amb, (1, j)));
    }
    assert_eq!(ell(&[1, 3], &[2, 4]), 1);
    assert_eq!(ell(&[], &[2, 4]), 0);
}

#[test]
fn short_relation_needs_the_q_convention() {
    assert!(quadratic_value(&Ambient::full(2, 4), &short_relation()).unwrap().is_zero());
    let inv = Ambient::full(2, 4).with_convention(Convention::QInverse);
    assert!(!quadratic_value(&inv, &short_relation()).unwrap().is_zero());
}

#[test]
fn general_relations_vanish_in_small_grassmannians() {
    for (m, n) in [(1, 3), (2, 4), (2, 5)] {
        let amb = Ambient::full(m, n);
        for (j1, j2, k) in plucker_triples(m, n) {
            assert!(plucker_relation_lhs(&amb, &j1, &j2, &k).unwrap().is_zero(), "{j1:?} {j2:?} {k:?}");
        }
    }
}

#[test]
fn general_relations_vanish_on_a_sample_in_three_by_six() {
    let amb = Ambient::full(3, 6);
    let triples = plucker_triples(3, 6);
    for (j1, j2, k) in triples.iter().step_by(37) {
        assert!(plucker_relation_lhs(&amb, j1, j2, k).unwrap().is_zero(), "{j1:?} {j2:?} {k:?}");
    }
}

/// Exchange-type instances: `J1 = I ∖ {i}`, `J2 = ∅`, `K = J ⊔ {i}`.
#[test]
fn exchange_relations_vanish() {
    for (m, n) in [(2, 4), (2, 5)] {
        let amb = Ambient::full(m, n);
        for (i, j) in (1..=n).combinations(m).cartesian_product((1..=n).combinations(m).collect_vec()) {
            for &a in i.iter().filter(|a| !j.contains(a)) {
                let j1: Vec<usize> = i.iter().copied().filter(|&b| b != a).collect();
                let k: Vec<usize> = j.iter().copied().chain([a]).sorted().collect();
                assert!(plucker_relation_lhs(&amb, &j1, &[], &k).unwrap().is_zero());
            }
        }
    }
    let amb = Ambient::full(2, 4);
    assert!(plucker_relation_lhs(&amb, &[3], &[], &[1, 2, 4]).unwrap().is_zero());
}

#[test]
fn relation_sizes_are_checked() {
    let amb = Ambient::full(2, 4);
    assert!(plucker_relation_lhs(&amb, &[1], &[2], &[3, 4]).is_err());
    assert!(plucker_relation_lhs(&amb, &[1, 2, 3], &[], &[4]).is_err());
}

#[test]
fn muir_lift_cases() {
    assert!(muir_lift(&Ambient::full(3, 5), &short_relation(), &[5]).unwrap().is_zero());
    let amb = Ambient::full(2, 4);
    let unchanged = muir_lift(&amb, &short_relation(), &[]).unwrap();
    assert_eq!(unchanged, quadratic_value(&amb, &short_relation()).unwrap());
    let single = [quad(LaurentInt::zero(), &[1, 2], &[3, 4])];
    assert!(muir_lift(&Ambient::full(3, 5), &single, &[5]).unwrap().is_zero());
    assert!(muir_lift(&Ambient::full(3, 5), &short_relation(), &[4]).is_err());
}

#[test]
fn specialising_at_one_gives_commutative_identities() {
    let amb = Ambient::full(2, 2);
    let det = pseudo_minor(&amb, &MinorIndex::new(vec![1, 2], vec![1, 2]).unwrap()).unwrap().eval_at_one();
    let mono = |f: &[Square]| PbwMonomial::from_exponents(2, 2, f.iter().map(|&s| (s, 1)));
    let want: BTreeMap<_, _> =
        [(mono(&[(1, 1), (2, 2)]), BigInt::from(1)), (mono(&[(1, 2), (2, 1)]), BigInt::from(-1))].into();
    assert_eq!(det, want);
    let ba = x(&amb, (2, 2)).mul(&x(&amb, (1, 1))).unwrap().eval_at_one();
    assert_eq!(ba, [(mono(&[(1, 1), (2, 2)]), BigInt::from(1))].into());
    assert!(quadratic_value(&Ambient::full(2, 4), &short_relation()).unwrap().eval_at_one().is_empty());
}
