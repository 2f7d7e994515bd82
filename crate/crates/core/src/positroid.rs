//! Which quantum Plücker coordinates lie in a given H-prime, and the
//! combinatorics that comes with the answer: positroids, Grassmann necklaces,
//! the containment poset, separating sets and polynormal sequences.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::postnikov::{PathSystem, PostnikovGraph, RelabeledGraph};
use crate::shapes::{enumerate_hprime_keys, DiagramJson, HPrimeKey, IndexSet};

/// Splits `α > γ` into `removed = γ ∖ α` and `added = α ∖ γ`, both ascending,
/// checking that the pairing is increasing.
pub fn alpha_decompose(gamma: &IndexSet, alpha: &IndexSet) -> Result<(Vec<usize>, Vec<usize>)> {
    if !alpha.geq(gamma) || alpha == gamma {
        return Err(Error::Invalid(format!("{alpha} is not strictly above {gamma}")));
    }
    let removed: Vec<usize> = gamma.as_slice().iter().copied().filter(|&x| !alpha.contains(x)).collect();
    let added: Vec<usize> = alpha.as_slice().iter().copied().filter(|&x| !gamma.contains(x)).collect();
    if removed.len() != added.len() || removed.iter().zip(&added).any(|(g, a)| a <= g) {
        return Err(Error::Internal(format!("{alpha} over {gamma} gives unpaired {removed:?} / {added:?}")));
    }
    Ok((removed, added))
}

/// Matrix labels `(I, J)` of the path-system query for `α > γ`: rows are the
/// positions of the removed entries in γ, columns are `n − m + 1 − j` for the
/// positions `j` of the added entries in the complement of γ.
pub fn matrix_labels(key: &HPrimeKey, alpha: &IndexSet) -> Result<(Vec<usize>, Vec<usize>)> {
    let (removed, added) = alpha_decompose(&key.gamma, alpha)?;
    let g = key.gamma.as_slice();
    let a = key.gamma.complement(key.n);
    let rows = removed.iter().map(|x| g.binary_search(x).expect("removed lies in gamma") + 1).collect();
    let mut cols: Vec<usize> = added
        .iter()
        .map(|x| key.n - key.m + 1 - (a.binary_search(x).expect("added lies in the complement") + 1))
        .collect();
    cols.sort_unstable();
    Ok((rows, cols))
}

enum Verdict {
    Decided(bool),
    Query(Vec<usize>, Vec<usize>),
}

fn classify(key: &HPrimeKey, alpha: &IndexSet) -> Result<Verdict> {
    let alpha = IndexSet::new(alpha.as_slice().to_vec(), key.m, key.n)?;
    if !alpha.geq(&key.gamma) {
        return Ok(Verdict::Decided(true));
    }
    if alpha == key.gamma {
        return Ok(Verdict::Decided(false));
    }
    let (rows, cols) = matrix_labels(key, &alpha)?;
    let shape = key.diagram.shape();
    // A label with no boundary vertex admits no path at all.
    if rows.iter().any(|&i| i > shape.rows()) || cols.iter().any(|&j| j > shape.cols()) {
        return Ok(Verdict::Decided(true));
    }
    Ok(Verdict::Query(rows, cols))
}

/// Whether the Plücker coordinate `[α]` lies in the H-prime of `key`.
pub fn member(key: &HPrimeKey, alpha: &IndexSet) -> Result<bool> {
    match classify(key, alpha)? {
        Verdict::Decided(b) => Ok(b),
        Verdict::Query(rows, cols) => Ok(!PostnikovGraph::build(&key.diagram).exists_disjoint_system(&rows, &cols)?),
    }
}

/// The same answer computed on the graph with Plücker-labelled boundary:
/// sources are the removed entries of γ and sinks the added entries of α.
pub fn member_by_labels(key: &HPrimeKey, alpha: &IndexSet) -> Result<bool> {
    let alpha = IndexSet::new(alpha.as_slice().to_vec(), key.m, key.n)?;
    if !alpha.geq(&key.gamma) {
        return Ok(true);
    }
    if alpha == key.gamma {
        return Ok(false);
    }
    let (removed, added) = alpha_decompose(&key.gamma, &alpha)?;
    let g = RelabeledGraph::new(PostnikovGraph::build(&key.diagram), key.m, key.n, &key.gamma);
    Ok(!g.exists_disjoint_system(&removed, &added)?)
}

/// A vertex-disjoint system certifying `[α] ∉ P`, when one exists.
pub fn membership_witness(key: &HPrimeKey, alpha: &IndexSet) -> Result<Option<PathSystem>> {
    match classify(key, alpha)? {
        Verdict::Decided(true) => Ok(None),
        Verdict::Decided(false) => Ok(Some(PathSystem { paths: Vec::new() })),
        Verdict::Query(rows, cols) => PostnikovGraph::build(&key.diagram).find_disjoint_system(&rows, &cols),
    }
}

/// The Plücker coordinates lying in the H-prime of `key`.
pub fn plucker_set(key: &HPrimeKey) -> Result<BTreeSet<IndexSet>> {
    let mut out = BTreeSet::new();
    for alpha in IndexSet::all(key.m, key.n) {
        if member(key, &alpha)? {
            out.insert(alpha);
        }
    }
    Ok(out)
}

/// The complement of the Plücker set, i.e. the bases of the positroid.
pub fn positroid_bases(key: &HPrimeKey) -> Result<BTreeSet<IndexSet>> {
    let pset = plucker_set(key)?;
    Ok(IndexSet::all(key.m, key.n).into_iter().filter(|a| !pset.contains(a)).collect())
}

/// Basis exchange: for all bases `I`, `J` and `i ∈ I` some `j ∈ J` makes
/// `(I ∖ {i}) ∪ {j}` a basis.
pub fn is_matroid(bases: &BTreeSet<IndexSet>) -> Result<bool> {
    let Some(rank) = bases.iter().next().map(IndexSet::len) else {
        return Err(Error::Invalid("a matroid needs at least one basis".into()));
    };
    if bases.iter().any(|b| b.len() != rank) {
        return Err(Error::Invalid("bases of different sizes".into()));
    }
    for i_set in bases {
        for j_set in bases {
            for &i in i_set.as_slice() {
                let ok = j_set.as_slice().iter().any(|&j| {
                    let mut v: Vec<usize> = i_set.as_slice().iter().copied().filter(|&x| x != i).collect();
                    v.push(j);
                    IndexSet::from_unsorted(v).is_some_and(|s| bases.contains(&s))
                });
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn shifted_keys(i: usize, n: usize, s: &IndexSet) -> Vec<usize> {
    let mut keys: Vec<usize> = s.as_slice().iter().map(|&x| (x + n - i) % n).collect();
    keys.sort_unstable();
    keys
}

/// `A ≤_i B` in the order on `1..=n` that starts at `i`.
pub fn i_leq(i: usize, n: usize, a: &IndexSet, b: &IndexSet) -> bool {
    let (ka, kb) = (shifted_keys(i, n, a), shifted_keys(i, n, b));
    ka.len() == kb.len() && ka.iter().zip(&kb).all(|(x, y)| x <= y)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct GrassmannNecklace(pub Vec<IndexSet>);

impl GrassmannNecklace {
    /// `I_{i+1} = (I_i ∖ {i}) ∪ {j}` for some `j` when `i ∈ I_i`, else `I_{i+1} = I_i`.
    pub fn satisfies_axiom(&self) -> bool {
        let n = self.0.len();
        (0..n).all(|k| {
            let (cur, next) = (&self.0[k], &self.0[(k + 1) % n]);
            let i = k + 1;
            if cur.contains(i) {
                let kept: Vec<usize> = cur.as_slice().iter().copied().filter(|&x| x != i).collect();
                kept.iter().all(|&x| next.contains(x)) && next.len() == cur.len()
            } else {
                next == cur
            }
        })
    }
}

/// `I_i` is the `≤_i`-minimum of the bases of the positroid, for `i = 1..=n`.
pub fn necklace(pset: &BTreeSet<IndexSet>, m: usize, n: usize) -> Result<GrassmannNecklace> {
    let bases: Vec<IndexSet> = IndexSet::all(m, n).into_iter().filter(|a| !pset.contains(a)).collect();
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let min = bases
            .iter()
            .find(|cand| bases.iter().all(|b| i_leq(i, n, cand, b)))
            .ok_or_else(|| Error::Internal(format!("no {i}-minimum among the bases")))?;
        out.push(min.clone());
    }
    Ok(GrassmannNecklace(out))
}

/// `J_i ≤_i I_i` for every `i`.
pub fn necklace_leq(lower: &GrassmannNecklace, upper: &GrassmannNecklace) -> bool {
    let n = lower.0.len();
    n == upper.0.len() && (0..n).all(|k| i_leq(k + 1, n, &lower.0[k], &upper.0[k]))
}

/// Generators of the separating multiplicative set: the necklace entries.
pub fn separating_set(key: &HPrimeKey) -> Result<Vec<IndexSet>> {
    Ok(necklace(&plucker_set(key)?, key.m, key.n)?.0)
}

/// No entry lies in `own`, and every Plücker set not inside `own` contains an entry.
pub fn is_separating(entries: &[IndexSet], own: &BTreeSet<IndexSet>, others: &[BTreeSet<IndexSet>]) -> bool {
    entries.iter().all(|e| !own.contains(e))
        && others.iter().filter(|o| !o.is_subset(own)).all(|o| entries.iter().any(|e| o.contains(e)))
}

/// `L_1, …, L_n` with `L_i = {J : J ≱_i I_i}` listed along a linear
/// extension of `≤_i` (sum of shifted keys, then the keys lexicographically).
pub fn polynormal_sequence(key: &HPrimeKey, dedupe: bool) -> Result<Vec<IndexSet>> {
    let neck = separating_set(key)?;
    let n = key.n;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (k, ik) in neck.iter().enumerate() {
        let i = k + 1;
        let mut block: Vec<IndexSet> = IndexSet::all(key.m, n).into_iter().filter(|j| !i_leq(i, n, ik, j)).collect();
        block.sort_by_key(|j| {
            let keys = shifted_keys(i, n, j);
            (keys.iter().sum::<usize>(), keys)
        });
        for j in block {
            if !dedupe || seen.insert(j.clone()) {
                out.push(j);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HPrimeNode {
    Key(HPrimeKey),
    /// The ideal generated by every Plücker coordinate.
    Irrelevant,
}

#[derive(Serialize)]
#[serde(untagged)]
enum NodeJson {
    Key(DiagramJson),
    Irrelevant { m: usize, n: usize, irrelevant: bool },
}

#[derive(Serialize)]
struct PosetJson {
    nodes: Vec<NodeJson>,
    hasse_edges: Vec<[usize; 2]>,
}

/// H-primes of `Gr(m, n)` ordered by inclusion. `leq[a][b]` means node `a`
/// is contained in node `b`; `hasse` lists the covering pairs.
#[derive(Clone, Debug)]
pub struct HPrimePoset {
    pub m: usize,
    pub n: usize,
    pub nodes: Vec<HPrimeNode>,
    pub plucker_sets: Vec<BTreeSet<IndexSet>>,
    pub leq: Vec<Vec<bool>>,
    pub hasse: Vec<(usize, usize)>,
}

impl HPrimePoset {
    fn assemble(m: usize, n: usize, keys: Vec<HPrimeKey>, psets: Vec<BTreeSet<IndexSet>>, leq: Vec<Vec<bool>>) -> Self {
        let mut nodes: Vec<HPrimeNode> = keys.into_iter().map(HPrimeNode::Key).collect();
        nodes.push(HPrimeNode::Irrelevant);
        let mut plucker_sets = psets;
        plucker_sets.push(IndexSet::all(m, n).into_iter().collect());
        let size = nodes.len();
        let mut full = vec![vec![false; size]; size];
        for (a, row) in leq.iter().enumerate() {
            full[a][..row.len()].copy_from_slice(row);
        }
        for row in full.iter_mut() {
            row[size - 1] = true;
        }
        let hasse = transitive_reduction(&full);
        HPrimePoset { m, n, nodes, plucker_sets, leq: full, hasse }
    }

    /// The order read off necklaces.
    pub fn by_necklaces(m: usize, n: usize) -> Result<Self> {
        let keys = enumerate_hprime_keys(m, n);
        let psets = keys.iter().map(plucker_set).collect::<Result<Vec<_>>>()?;
        let necks = psets.iter().map(|p| necklace(p, m, n)).collect::<Result<Vec<_>>>()?;
        let leq = necks.iter().map(|a| necks.iter().map(|b| necklace_leq(a, b)).collect()).collect();
        Ok(Self::assemble(m, n, keys, psets, leq))
    }

    /// The order read off inclusion of Plücker sets.
    pub fn by_inclusion(m: usize, n: usize) -> Result<Self> {
        let keys = enumerate_hprime_keys(m, n);
        let psets = keys.iter().map(plucker_set).collect::<Result<Vec<_>>>()?;
        let leq = psets.iter().map(|a| psets.iter().map(|b| a.is_subset(b)).collect()).collect();
        Ok(Self::assemble(m, n, keys, psets, leq))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes below every other node.
    pub fn minima(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| (0..self.len()).all(|b| self.leq[a][b])).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes = self
            .nodes
            .iter()
            .map(|node| match node {
                HPrimeNode::Key(k) => NodeJson::Key(k.to_json()),
                HPrimeNode::Irrelevant => NodeJson::Irrelevant { m: self.m, n: self.n, irrelevant: true },
            })
            .collect();
        let hasse_edges = self.hasse.iter().map(|&(a, b)| [a, b]).collect();
        serde_json::to_value(PosetJson { nodes, hasse_edges }).expect("serializable")
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hprimes {\n  rankdir=BT;\n");
        for (k, pset) in self.plucker_sets.iter().enumerate() {
            let label = match &self.nodes[k] {
                HPrimeNode::Irrelevant => "irrelevant".to_string(),
                HPrimeNode::Key(_) => {
                    let items: Vec<String> = pset.iter().map(ToString::to_string).collect();
                    format!("{{{}}}", items.join(" "))
                }
            };
            let _ = writeln!(s, "  n{k} [label=\"{label}\"];");
        }
        for &(a, b) in &self.hasse {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Covering pairs `(a, b)` of a partial order given as a reflexive relation matrix.
pub fn transitive_reduction(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let size = leq.len();
    let lt = |a: usize, b: usize| a != b && leq[a][b] && !leq[b][a];
    let mut out = Vec::new();
    for a in 0..size {
        for b in 0..size {
            if lt(a, b) && !(0..size).any(|c| lt(a, c) && lt(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}
