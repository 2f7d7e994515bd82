//! Exhaustive verification suites over `Gr(m, n)`. Suites that range over
//! diagrams or shapes use every partition inside the `m × (n − m)` box.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::positroid::{i_leq, is_matroid, necklace, plucker_set, positroid_bases, HPrimePoset};
use crate::postnikov::PostnikovGraph;
use crate::qmatrix::{
    laplace_expand, ore_identity_holds, plucker_relation_lhs, pseudo_minor, Ambient, LaplaceMode, MinorIndex,
};
use crate::qtorus::{lgv_rhs, minor_vanishes, path_matrix, path_matrix_minor, restore_entries};
use crate::shapes::{enumerate_hprime_keys, enumerate_le_diagrams, IndexSet, LeDiagram, Partition};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Lgv,
    Restore,
    Laplace,
    Plucker,
    Ore,
    Necklace,
    Matroid,
    Poset,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Lgv,
        Suite::Restore,
        Suite::Laplace,
        Suite::Plucker,
        Suite::Ore,
        Suite::Necklace,
        Suite::Matroid,
        Suite::Poset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lgv => "lgv",
            Suite::Restore => "restore",
            Suite::Laplace => "laplace",
            Suite::Plucker => "plucker",
            Suite::Ore => "ore",
            Suite::Necklace => "necklace",
            Suite::Matroid => "matroid",
            Suite::Poset => "poset",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Invalid(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub m: usize,
    pub n: usize,
    pub passed: usize,
    pub failed: usize,
    /// Descriptions of the first few failing instances.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, m: usize, n: usize) -> Self {
        SuiteReport { suite: suite.name(), m, n, passed: 0, failed: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < 10 {
                self.failures.push(what());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

pub fn run(suite: Suite, m: usize, n: usize) -> Result<SuiteReport> {
    if m == 0 || m >= n {
        return Err(Error::Invalid(format!("need 1 <= m < n, got m={m}, n={n}")));
    }
    let mut r = SuiteReport::new(suite, m, n);
    match suite {
        Suite::Lgv => lgv(&mut r, m, n - m)?,
        Suite::Restore => restore(&mut r, m, n - m),
        Suite::Laplace => laplace(&mut r, m, n - m)?,
        Suite::Plucker => plucker(&mut r, m, n)?,
        Suite::Ore => ore(&mut r, m, n - m)?,
        Suite::Necklace => necklaces(&mut r, m, n)?,
        Suite::Matroid => matroids(&mut r, m, n)?,
        Suite::Poset => poset(&mut r, m, n)?,
    }
    Ok(r)
}

/// Every Le diagram on every nonempty partition inside `rows × cols`.
pub fn diagrams_in_box(rows: usize, cols: usize) -> Vec<LeDiagram> {
    Partition::all_in_box(rows, cols).iter().filter(|p| p.size() > 0).flat_map(enumerate_le_diagrams).collect()
}

/// Index pairs of size `1..=3` inside the bounding box of a partition.
fn index_pairs(shape: &Partition) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for t in 1..=3.min(shape.rows()).min(shape.cols()) {
        for rows in (1..=shape.rows()).combinations(t) {
            for cols in (1..=shape.cols()).combinations(t) {
                out.push((rows.clone(), cols));
            }
        }
    }
    out
}

/// Minor against the path-system sum, vanishing against max flow, and max
/// flow against exhaustive enumeration of disjoint systems.
fn lgv(r: &mut SuiteReport, rows: usize, cols: usize) -> Result<()> {
    for d in diagrams_in_box(rows, cols) {
        let g = PostnikovGraph::build(&d);
        let pm = path_matrix(&d);
        for (i, j) in index_pairs(d.shape()) {
            let minor = path_matrix_minor(&pm, &i, &j)?;
            let rhs = lgv_rhs(&d, &i, &j)?;
            let flow = g.exists_disjoint_system(&i, &j)?;
            let listed = !g.enumerate_disjoint_systems(&i, &j)?.is_empty();
            let vanishes = minor_vanishes(&d, &i, &j)?;
            let ok = minor == rhs && vanishes == !flow && flow == listed && minor.is_zero() == vanishes;
            r.record(ok, || format!("shape {} black {:?} minor {i:?}|{j:?}", d.shape(), d.black()));
        }
    }
    Ok(())
}

fn restore(r: &mut SuiteReport, rows: usize, cols: usize) {
    for d in diagrams_in_box(rows, cols) {
        let ok = restore_entries(&d) == path_matrix(&d);
        r.record(ok, || format!("shape {} black {:?}", d.shape(), d.black()));
    }
}

fn laplace(r: &mut SuiteReport, rows: usize, cols: usize) -> Result<()> {
    for shape in Partition::all_in_box(rows, cols).into_iter().filter(|p| p.size() > 0) {
        let amb = Ambient::partition(shape.clone());
        for (i, j) in index_pairs(&shape) {
            let idx = MinorIndex::new(i, j)?;
            let minor = pseudo_minor(&amb, &idx)?;
            for mode in LaplaceMode::IDENTITIES {
                let ok = laplace_expand(&amb, &idx, mode)? == minor;
                r.record(ok, || format!("shape {shape} {idx} {mode:?}"));
            }
        }
    }
    Ok(())
}

/// Every admissible `(J1, J2, K)` of the generalised Plücker relations.
pub fn plucker_triples(m: usize, n: usize) -> Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for s1 in 0..=m {
        for s2 in 0..=m {
            if s1 + s2 >= m {
                continue;
            }
            let k = 2 * m - s1 - s2;
            if k > n {
                continue;
            }
            for j1 in (1..=n).combinations(s1) {
                for j2 in (1..=n).combinations(s2) {
                    for kk in (1..=n).combinations(k) {
                        out.push((j1.clone(), j2.clone(), kk));
                    }
                }
            }
        }
    }
    out
}

fn plucker(r: &mut SuiteReport, m: usize, n: usize) -> Result<()> {
    let amb = Ambient::full(m, n);
    for (j1, j2, k) in plucker_triples(m, n) {
        let ok = plucker_relation_lhs(&amb, &j1, &j2, &k)?.is_zero();
        r.record(ok, || format!("J1={j1:?} J2={j2:?} K={k:?}"));
    }
    Ok(())
}

fn ore(r: &mut SuiteReport, rows: usize, cols: usize) -> Result<()> {
    let amb = Ambient::full(rows, cols);
    for (i, j, k, l) in itertools::iproduct!(1..=rows, 1..=cols, 1..=rows, 1..=cols) {
        if i < k && j < l {
            for d in 1..=5 {
                let ok = ore_identity_holds(&amb, (i, j), (k, l), d)?;
                r.record(ok, || format!("({i},{j}) ({k},{l}) d={d}"));
            }
        }
    }
    Ok(())
}

/// Necklace axiom, and the Plücker set as the union of the sets `{J : J ≱_i I_i}`.
fn necklaces(r: &mut SuiteReport, m: usize, n: usize) -> Result<()> {
    for key in enumerate_hprime_keys(m, n) {
        let pset = plucker_set(&key)?;
        let neck = necklace(&pset, m, n)?;
        let union: BTreeSet<IndexSet> = IndexSet::all(m, n)
            .into_iter()
            .filter(|j| neck.0.iter().enumerate().any(|(k, ik)| !i_leq(k + 1, n, ik, j)))
            .collect();
        r.record(neck.satisfies_axiom() && union == pset, || {
            format!("gamma {} black {:?}", key.gamma, key.diagram.black())
        });
    }
    Ok(())
}

fn matroids(r: &mut SuiteReport, m: usize, n: usize) -> Result<()> {
    for key in enumerate_hprime_keys(m, n) {
        let ok = is_matroid(&positroid_bases(&key)?)?;
        r.record(ok, || format!("gamma {} black {:?}", key.gamma, key.diagram.black()));
    }
    Ok(())
}

/// Necklace order against inclusion order, distinct Plücker sets, and a
/// unique bottom with empty Plücker set.
fn poset(r: &mut SuiteReport, m: usize, n: usize) -> Result<()> {
    let by_neck = HPrimePoset::by_necklaces(m, n)?;
    let by_incl = HPrimePoset::by_inclusion(m, n)?;
    for a in 0..by_neck.len() {
        for b in 0..by_neck.len() {
            r.record(by_neck.leq[a][b] == by_incl.leq[a][b], || format!("nodes {a} <= {b}"));
        }
    }
    let distinct: BTreeSet<_> = by_neck.plucker_sets.iter().collect();
    r.record(distinct.len() == by_neck.len(), || "two keys share a Plücker set".into());
    let minima = by_neck.minima();
    r.record(minima.len() == 1 && by_neck.plucker_sets[minima[0]].is_empty(), || format!("minima {minima:?}"));
    Ok(())
}
