use std::collections::BTreeSet;

use itertools::Itertools;
use qgrass::positroid::{
    alpha_decompose, i_leq, is_matroid, is_separating, matrix_labels, member, membership_witness, necklace,
    necklace_leq, plucker_set, polynormal_sequence, positroid_bases, separating_set, GrassmannNecklace, HPrimeNode,
    HPrimePoset,
};
use qgrass::postnikov::PostnikovGraph;
use qgrass::shapes::{enumerate_hprime_keys, HPrimeKey, IndexSet};

fn s(v: &[usize], m: usize, n: usize) -> IndexSet {
    IndexSet::new(v.to_vec(), m, n).unwrap()
}

fn all_sets(m: usize, n: usize) -> BTreeSet<IndexSet> {
    IndexSet::all(m, n).into_iter().collect()
}

#[test]
fn decomposition_examples() {
    let gamma = s(&[1, 3, 5], 3, 6);
    assert_eq!(alpha_decompose(&gamma, &s(&[4, 5, 6], 3, 6)).unwrap(), (vec![1, 3], vec![4, 6]));
    assert!(alpha_decompose(&gamma, &gamma).is_err());
    assert!(alpha_decompose(&gamma, &s(&[1, 2, 3], 3, 6)).is_err());
}

#[test]
fn decomposition_pairs_increase_for_every_pair_above_gamma() {
    for (m, n) in [(2, 5), (3, 6), (4, 8)] {
        for gamma in IndexSet::all(m, n) {
            for alpha in IndexSet::all(m, n).iter().filter(|a| a.geq(&gamma) && **a != gamma) {
                let (removed, added) = alpha_decompose(&gamma, alpha).unwrap();
                assert!(removed.iter().zip(&added).all(|(g, a)| g < a));
            }
        }
    }
}

#[test]
fn extreme_diagrams() {
    for (m, n) in [(2, 4), (3, 6)] {
        for gamma in IndexSet::all(m, n) {
            let black = HPrimeKey::all_black(m, n, gamma.clone());
            let white = HPrimeKey::all_white(m, n, gamma.clone());
            for alpha in IndexSet::all(m, n) {
                let above = alpha.geq(&gamma);
                assert_eq!(member(&black, &alpha).unwrap(), alpha != gamma);
                assert_eq!(member(&white, &alpha).unwrap(), !above);
            }
            assert_eq!(positroid_bases(&black).unwrap(), [gamma.clone()].into());
        }
    }
    let zero = HPrimeKey::all_white(2, 4, IndexSet::initial(2));
    assert!(plucker_set(&zero).unwrap().is_empty());
    assert_eq!(positroid_bases(&zero).unwrap(), all_sets(2, 4));
}

#[test]
fn gamma_is_never_a_member() {
    for key in enumerate_hprime_keys(3, 6) {
        assert!(!member(&key, &key.gamma).unwrap());
    }
}

/// Membership recomputed by listing disjoint path systems instead of max flow.
#[test]
fn membership_matches_enumeration() {
    for (m, n) in [(2, 4), (2, 5), (3, 5)] {
        for key in enumerate_hprime_keys(m, n) {
            let g = PostnikovGraph::build(&key.diagram);
            let shape = key.diagram.shape();
            for alpha in IndexSet::all(m, n) {
                let want = if !alpha.geq(&key.gamma) {
                    true
                } else if alpha == key.gamma {
                    false
                } else {
                    let (i, j) = matrix_labels(&key, &alpha).unwrap();
                    if i.iter().any(|&r| r > shape.rows()) || j.iter().any(|&c| c > shape.cols()) {
                        true
                    } else {
                        g.enumerate_disjoint_systems(&i, &j).unwrap().is_empty()
                    }
                };
                assert_eq!(member(&key, &alpha).unwrap(), want);
            }
        }
    }
}

#[test]
fn witnesses_are_disjoint_systems_with_the_right_ends() {
    for key in enumerate_hprime_keys(3, 5) {
        let g = PostnikovGraph::build(&key.diagram);
        for alpha in IndexSet::all(3, 5) {
            let w = membership_witness(&key, &alpha).unwrap();
            assert_eq!(w.is_none(), member(&key, &alpha).unwrap());
            let Some(w) = w else { continue };
            if alpha == key.gamma {
                assert!(w.paths.is_empty());
                continue;
            }
            let (i, j) = matrix_labels(&key, &alpha).unwrap();
            assert!(w.is_vertex_disjoint());
            assert_eq!(w.sources(), i);
            let sinks: BTreeSet<usize> = w.sinks().into_iter().collect();
            assert_eq!(sinks, j.iter().copied().collect());
            for p in &w.paths {
                assert!(p.vertices.windows(2).all(|e| g.edge(e[0], e[1]).is_some()));
            }
        }
    }
}

#[test]
fn matroid_examples() {
    let g = s(&[1, 3], 2, 4);
    assert!(is_matroid(&[g].into()).unwrap());
    assert!(is_matroid(&all_sets(2, 4)).unwrap());
    assert!(!is_matroid(&[s(&[1, 2], 2, 4), s(&[3, 4], 2, 4)].into()).unwrap());
    assert!(is_matroid(&BTreeSet::new()).is_err());
    let ragged: BTreeSet<IndexSet> = [s(&[1], 1, 4), s(&[1, 2], 2, 4)].into();
    assert!(is_matroid(&ragged).is_err());
}

#[test]
fn shifted_order() {
    assert!(i_leq(1, 4, &s(&[1, 3], 2, 4), &s(&[1, 4], 2, 4)));
    assert!(i_leq(3, 4, &s(&[3, 4], 2, 4), &s(&[1, 2], 2, 4)));
    let sets = IndexSet::all(2, 4);
    for i in 1..=4 {
        for (a, b) in sets.iter().cartesian_product(&sets) {
            assert!(i_leq(i, 4, a, a));
            if a != b {
                assert!(!(i_leq(i, 4, a, b) && i_leq(i, 4, b, a)));
            }
        }
    }
}

#[test]
fn necklace_examples() {
    let zero = HPrimeKey::all_white(2, 4, IndexSet::initial(2));
    let want = GrassmannNecklace(vec![s(&[1, 2], 2, 4), s(&[2, 3], 2, 4), s(&[3, 4], 2, 4), s(&[1, 4], 2, 4)]);
    let neck = necklace(&plucker_set(&zero).unwrap(), 2, 4).unwrap();
    assert_eq!(neck, want);
    assert_eq!(separating_set(&zero).unwrap(), want.0);
    for gamma in IndexSet::all(2, 5) {
        let key = HPrimeKey::all_black(2, 5, gamma.clone());
        let neck = necklace(&plucker_set(&key).unwrap(), 2, 5).unwrap();
        assert_eq!(neck.0, vec![gamma; 5]);
        assert!(neck.satisfies_axiom());
    }
    assert!(necklace(&all_sets(2, 4), 2, 4).is_err());
}

#[test]
fn necklace_order_has_the_zero_ideal_at_the_bottom() {
    let keys = enumerate_hprime_keys(2, 5);
    let necks: Vec<_> = keys.iter().map(|k| necklace(&plucker_set(k).unwrap(), 2, 5).unwrap()).collect();
    let zero = necklace(&BTreeSet::new(), 2, 5).unwrap();
    for nk in &necks {
        assert!(necklace_leq(nk, nk));
        assert!(necklace_leq(&zero, nk));
    }
}

#[test]
fn separating_sets_separate() {
    for (m, n) in [(2, 4), (2, 5)] {
        let keys = enumerate_hprime_keys(m, n);
        let psets: Vec<_> = keys.iter().map(|k| plucker_set(k).unwrap()).collect();
        for (k, key) in keys.iter().enumerate() {
            let entries = separating_set(key).unwrap();
            assert_eq!(entries.len(), n);
            assert!(is_separating(&entries, &psets[k], &psets));
        }
    }
}

#[test]
fn polynormal_sequences_cover_the_plucker_set() {
    for (m, n) in [(2, 4), (3, 5)] {
        for key in enumerate_hprime_keys(m, n) {
            let pset = plucker_set(&key).unwrap();
            let full = polynormal_sequence(&key, false).unwrap();
            let short = polynormal_sequence(&key, true).unwrap();
            assert_eq!(full.iter().cloned().collect::<BTreeSet<_>>(), pset);
            assert_eq!(short.len(), pset.len());
            assert!(short.iter().all_unique());
            assert_eq!(full.iter().unique().cloned().collect::<Vec<_>>(), short);
        }
    }
    let zero = HPrimeKey::all_white(3, 5, IndexSet::initial(3));
    assert!(polynormal_sequence(&zero, false).unwrap().is_empty());
}

#[test]
fn polynormal_blocks_follow_the_shifted_order() {
    for key in enumerate_hprime_keys(2, 5) {
        let neck = separating_set(&key).unwrap();
        let seq = polynormal_sequence(&key, false).unwrap();
        let mut rest = seq.as_slice();
        for (k, ik) in neck.iter().enumerate() {
            let i = k + 1;
            let size = IndexSet::all(2, 5).iter().filter(|j| !i_leq(i, 5, ik, j)).count();
            let (block, tail) = rest.split_at(size);
            for (a, b) in block.iter().tuple_combinations() {
                assert!(!i_leq(i, 5, b, a) || a == b, "{b} precedes {a} in block {i}");
            }
            rest = tail;
        }
        assert!(rest.is_empty());
    }
}

#[test]
fn smallest_poset() {
    let p = HPrimePoset::by_necklaces(1, 2).unwrap();
    assert_eq!(p.len(), 4);
    assert_eq!(p.nodes.last(), Some(&HPrimeNode::Irrelevant));
    assert_eq!(p.minima().len(), 1);
    assert!(p.plucker_sets[p.minima()[0]].is_empty());
    let top = p.len() - 1;
    assert!((0..p.len()).all(|a| p.leq[a][top]));
    // zero ideal below the two ideals generated by one coordinate each, both below the top
    let json = p.to_json();
    assert_eq!(json["nodes"].as_array().unwrap().len(), 4);
    assert_eq!(json["nodes"][3], serde_json::json!({"m": 1, "n": 2, "irrelevant": true}));
    let mut covers = p.hasse.clone();
    covers.sort_unstable();
    let bottom = p.minima()[0];
    let middles: Vec<usize> = (0..top).filter(|&a| a != bottom).collect();
    let mut want: Vec<(usize, usize)> = middles.iter().flat_map(|&a| [(bottom, a), (a, top)]).collect();
    want.sort_unstable();
    assert_eq!(covers, want);
    assert!(p.to_dot().starts_with("digraph"));
}

#[test]
fn poset_orders_agree_on_four_points() {
    let a = HPrimePoset::by_necklaces(2, 4).unwrap();
    let b = HPrimePoset::by_inclusion(2, 4).unwrap();
    assert_eq!(a.leq, b.leq);
    assert_eq!(a.hasse, b.hasse);
    assert_eq!(a.len(), 34);
}
