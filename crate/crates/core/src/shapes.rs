//! Partitions, Young diagrams, Le diagrams and the dictionary between
//! m-subsets of `1..=n` and partitions fitting in an `m × (n−m)` box.
//!
//! Boxes are 1-based `(row, column)` pairs, rows counted from the top and
//! columns from the left. Boxes are ordered lexicographically.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A box `(row, column)` of a Young diagram.
pub type Square = (usize, usize);

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Trailing zeros are trimmed.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(Error::BadPartition(parts, usize::MAX, usize::MAX));
        }
        Ok(Partition { parts })
    }

    /// Like [`Partition::new`] but also checks that the diagram fits `rows × cols`.
    pub fn in_box(parts: Vec<usize>, rows: usize, cols: usize) -> Result<Self> {
        let p = Self::new(parts.clone()).map_err(|_| Error::BadPartition(parts.clone(), rows, cols))?;
        if !p.fits(rows, cols) {
            return Err(Error::BadPartition(parts, rows, cols));
        }
        Ok(p)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Length of the first row.
    pub fn cols(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Length of row `i`, zero past the last row.
    pub fn row_len(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Length of column `j`.
    pub fn col_len(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.parts.iter().take_while(|&&p| p >= j).count()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn contains(&self, (i, j): Square) -> bool {
        i >= 1 && j >= 1 && j <= self.row_len(i)
    }

    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.rows() <= rows && self.cols() <= cols
    }

    /// All boxes in lexicographic order.
    pub fn boxes(&self) -> Vec<Square> {
        let mut out = Vec::with_capacity(self.size());
        for (r, &len) in self.parts.iter().enumerate() {
            for j in 1..=len {
                out.push((r + 1, j));
            }
        }
        out
    }

    /// Every partition fitting inside a `rows × cols` box, in lexicographic order of parts.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Partition> {
        fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition { parts: cur.clone() });
            if cur.len() == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

/// Strictly increasing subset of `1..=n`; used for Plücker labels, γ and friends.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Validates an `m`-subset of `1..=n`.
    pub fn new(elems: Vec<usize>, m: usize, n: usize) -> Result<Self> {
        let ok =
            elems.len() == m && elems.iter().all(|&x| (1..=n).contains(&x)) && elems.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(IndexSet(elems))
        } else {
            Err(Error::BadIndexSet(elems, n, m))
        }
    }

    /// Sorts and deduplicates; `None` when an entry repeats.
    pub fn from_unsorted(mut elems: Vec<usize>) -> Option<Self> {
        elems.sort_unstable();
        if elems.windows(2).any(|w| w[0] == w[1]) {
            None
        } else {
            Some(IndexSet(elems))
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// `1..=n` minus this set, ascending.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        (1..=n).filter(|x| !self.contains(*x)).collect()
    }

    /// Componentwise `self ≥ other`.
    pub fn geq(&self, other: &IndexSet) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// All `m`-subsets of `1..=n` in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<IndexSet> {
        (1..=n).combinations(m).map(IndexSet).collect()
    }

    /// `[1, …, m]`.
    pub fn initial(m: usize) -> IndexSet {
        IndexSet((1..=m).collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

/// Checks the Le condition: every black box has an all-black row prefix to
/// its left or an all-black column prefix above it.
pub fn validate_le(shape: &Partition, black: &BTreeSet<Square>) -> Result<bool> {
    if let Some(&sq) = black.iter().find(|&&sq| !shape.contains(sq)) {
        return Err(Error::OutsideShape(sq));
    }
    Ok(first_le_violation(black).is_none())
}

fn first_le_violation(black: &BTreeSet<Square>) -> Option<Square> {
    black.iter().copied().find(|&(i, j)| {
        let left = (1..j).all(|k| black.contains(&(i, k)));
        let above = (1..i).all(|k| black.contains(&(k, j)));
        !(left || above)
    })
}

/// A partition together with a black/white colouring satisfying the Le condition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LeDiagram {
    shape: Partition,
    black: BTreeSet<Square>,
}

impl LeDiagram {
    pub fn new(shape: Partition, black: BTreeSet<Square>) -> Result<Self> {
        if let Some(&sq) = black.iter().find(|&&sq| !shape.contains(sq)) {
            return Err(Error::OutsideShape(sq));
        }
        if let Some(sq) = first_le_violation(&black) {
            return Err(Error::LeCondition(sq));
        }
        Ok(LeDiagram { shape, black })
    }

    pub fn all_white(shape: Partition) -> Self {
        LeDiagram { shape, black: BTreeSet::new() }
    }

    pub fn all_black(shape: Partition) -> Self {
        let black = shape.boxes().into_iter().collect();
        LeDiagram { shape, black }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn black(&self) -> &BTreeSet<Square> {
        &self.black
    }

    pub fn is_white(&self, sq: Square) -> bool {
        self.shape.contains(sq) && !self.black.contains(&sq)
    }

    /// White boxes in lexicographic order.
    pub fn white_boxes(&self) -> Vec<Square> {
        self.shape.boxes().into_iter().filter(|sq| !self.black.contains(sq)).collect()
    }
}

/// `λ_i = n − m − (γ_i − i)` with trailing zeros dropped.
pub fn gamma_to_partition(m: usize, n: usize, gamma: &IndexSet) -> Partition {
    debug_assert_eq!(gamma.len(), m);
    let parts = gamma.as_slice().iter().enumerate().map(|(k, &g)| n - m + (k + 1) - g).collect();
    Partition::new(parts).expect("an increasing subset always yields a partition")
}

/// Inverse of [`gamma_to_partition`], computed by walking the south-east border
/// of `Y_λ` from the north-east corner of the box and recording vertical steps.
pub fn partition_to_gamma(m: usize, n: usize, shape: &Partition) -> Result<IndexSet> {
    if !shape.fits(m, n - m) {
        return Err(Error::BadPartition(shape.parts().to_vec(), m, n - m));
    }
    let (mut row, mut col) = (0usize, n - m);
    let mut gamma = Vec::with_capacity(m);
    for step in 1..=n {
        if row < m && col == shape.row_len(row + 1) {
            gamma.push(step);
            row += 1;
        } else {
            col -= 1;
        }
    }
    IndexSet::new(gamma, m, n)
}

/// The ladder of γ and its identification with the boxes of `Y_λ`.
#[derive(Clone, Debug)]
pub struct Ladder {
    m: usize,
    n: usize,
    gamma: IndexSet,
    complement: Vec<usize>,
}

impl Ladder {
    pub fn new(m: usize, n: usize, gamma: &IndexSet) -> Self {
        Ladder { m, n, gamma: gamma.clone(), complement: gamma.complement(n) }
    }

    /// Ladder boxes `(i, j)` with `j > γ_{m+1−i}` and `j ∉ γ`, in lexicographic order.
    pub fn boxes(&self) -> Vec<Square> {
        let g = self.gamma.as_slice();
        let mut out = Vec::new();
        for i in 1..=self.m {
            for &j in &self.complement {
                if j > g[self.m - i] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `(i, a_j) ↦ (m+1−i, n−m+1−j)`.
    pub fn to_young(&self, (i, col): Square) -> Option<Square> {
        if i == 0 || i > self.m {
            return None;
        }
        let j = self.complement.iter().position(|&a| a == col)? + 1;
        if col <= self.gamma.as_slice()[self.m - i] {
            return None;
        }
        Some((self.m + 1 - i, self.n - self.m + 1 - j))
    }

    /// `(r, s) ↦ (m+1−r, a_{n−m+1−s})`.
    pub fn from_young(&self, (r, s): Square) -> Option<Square> {
        let shape = gamma_to_partition(self.m, self.n, &self.gamma);
        if !shape.contains((r, s)) {
            return None;
        }
        let col = self.complement[self.n - self.m - s];
        Some((self.m + 1 - r, col))
    }
}

/// Every Le diagram on `shape`, by increasing number of black boxes and then
/// by the sorted list of black boxes.
pub fn enumerate_le_diagrams(shape: &Partition) -> Vec<LeDiagram> {
    let boxes = shape.boxes();
    let mut out = Vec::new();
    for k in 0..=boxes.len() {
        for combo in boxes.iter().copied().combinations(k) {
            let black: BTreeSet<Square> = combo.into_iter().collect();
            if first_le_violation(&black).is_none() {
                out.push(LeDiagram { shape: shape.clone(), black });
            }
        }
    }
    out
}

/// Key of an H-prime other than the irrelevant ideal: γ plus a Le diagram on `Y_{λ(γ)}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HPrimeKey {
    pub m: usize,
    pub n: usize,
    pub gamma: IndexSet,
    pub diagram: LeDiagram,
}

/// Wire format `{"m":..,"n":..,"gamma":[..],"black":[[i,j],..]}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub m: usize,
    pub n: usize,
    pub gamma: Vec<usize>,
    pub black: Vec<[usize; 2]>,
}

impl HPrimeKey {
    pub fn new(m: usize, n: usize, gamma: IndexSet, black: BTreeSet<Square>) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::Invalid(format!("need 1 <= m < n, got m={m}, n={n}")));
        }
        let gamma = IndexSet::new(gamma.as_slice().to_vec(), m, n)?;
        let shape = gamma_to_partition(m, n, &gamma);
        let diagram = LeDiagram::new(shape, black)?;
        Ok(HPrimeKey { m, n, gamma, diagram })
    }

    /// The key whose diagram lives on the shape of `gamma` with every box white.
    pub fn all_white(m: usize, n: usize, gamma: IndexSet) -> Self {
        let shape = gamma_to_partition(m, n, &gamma);
        HPrimeKey { m, n, gamma, diagram: LeDiagram::all_white(shape) }
    }

    pub fn all_black(m: usize, n: usize, gamma: IndexSet) -> Self {
        let shape = gamma_to_partition(m, n, &gamma);
        HPrimeKey { m, n, gamma, diagram: LeDiagram::all_black(shape) }
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            m: self.m,
            n: self.n,
            gamma: self.gamma.as_slice().to_vec(),
            black: self.diagram.black().iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

impl TryFrom<DiagramJson> for HPrimeKey {
    type Error = Error;

    fn try_from(j: DiagramJson) -> Result<Self> {
        if j.m == 0 || j.m >= j.n {
            return Err(Error::Invalid(format!("need 1 <= m < n, got m={}, n={}", j.m, j.n)));
        }
        let gamma = IndexSet::new(j.gamma, j.m, j.n)?;
        let black = j.black.iter().map(|&[i, k]| (i, k)).collect();
        HPrimeKey::new(j.m, j.n, gamma, black)
    }
}

/// All keys `(γ, C)` for `Gr(m, n)`, γ in lexicographic order. The irrelevant
/// ideal is not included.
pub fn enumerate_hprime_keys(m: usize, n: usize) -> Vec<HPrimeKey> {
    let mut out = Vec::new();
    for gamma in IndexSet::all(m, n) {
        let shape = gamma_to_partition(m, n, &gamma);
        for diagram in enumerate_le_diagrams(&shape) {
            out.push(HPrimeKey { m, n, gamma: gamma.clone(), diagram });
        }
    }
    out
}
