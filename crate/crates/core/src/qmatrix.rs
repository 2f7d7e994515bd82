//! Quantum matrix algebras `O_q(M_{m,n})`, their partition subalgebras, and
//! normal forms in the PBW basis of lexicographically ordered monomials.
//!
//! For generators `a = x_{r1,c1}` lex-greater than `b = x_{r2,c2}` the
//! rewriting rules are
//!
//! * same row or same column: `a b = p^{-1} b a`
//! * `r1 > r2`, `c1 > c2`: `a b = b a − (p − p^{-1}) x_{r2,c1} x_{r1,c2}`
//! * `r1 > r2`, `c1 < c2`: `a b = b a`
//!
//! where `p` is `q`, or `q^{-1}` under [`Convention::QInverse`].

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::laurent::LaurentInt;
use crate::qtorus::{inversions, split_coefficient, split_top_level};
use crate::shapes::{Partition, Square};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum Convention {
    #[default]
    Q,
    QInverse,
}

/// Where an element lives: an `rows × cols` matrix algebra, optionally cut
/// down to the generators inside a partition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ambient {
    rows: usize,
    cols: usize,
    shape: Option<Partition>,
    convention: Convention,
}

impl Ambient {
    pub fn full(rows: usize, cols: usize) -> Self {
        Ambient { rows, cols, shape: None, convention: Convention::Q }
    }

    /// The subalgebra generated by `x_{i,j}` for `(i, j)` in the partition.
    pub fn partition(shape: Partition) -> Self {
        Ambient { rows: shape.rows(), cols: shape.cols(), shape: Some(shape), convention: Convention::Q }
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> Option<&Partition> {
        self.shape.as_ref()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn contains(&self, (i, j): Square) -> bool {
        match &self.shape {
            Some(s) => s.contains((i, j)),
            None => (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
        }
    }

    /// `p^k` for the deformation parameter `p` of this convention.
    pub fn p_pow(&self, k: i64) -> LaurentInt {
        match self.convention {
            Convention::Q => LaurentInt::q_pow(k),
            Convention::QInverse => LaurentInt::q_pow(-k),
        }
    }

    /// `(−p)^k`.
    pub fn neg_p_pow(&self, k: i64) -> LaurentInt {
        let p = self.p_pow(k);
        if k.rem_euclid(2) == 1 {
            -p
        } else {
            p
        }
    }

    fn squares(&self) -> impl Iterator<Item = Square> + '_ {
        (1..=self.rows).cartesian_product(1..=self.cols)
    }
}

/// Exponent matrix of `Π x_{i,j}^{e_{i,j}}`, stored row-major. The derived
/// order compares the flattened exponents lexicographically, so the first box
/// where two monomials differ decides and the larger exponent wins.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    cols: usize,
    exps: Vec<u32>,
}

impl PbwMonomial {
    pub fn one(rows: usize, cols: usize) -> Self {
        PbwMonomial { cols, exps: vec![0; rows * cols] }
    }

    pub fn from_exponents<I: IntoIterator<Item = (Square, u32)>>(rows: usize, cols: usize, iter: I) -> Self {
        let mut m = PbwMonomial::one(rows, cols);
        for (sq, e) in iter {
            let s = m.slot(sq);
            m.exps[s] += e;
        }
        m
    }

    fn slot(&self, (i, j): Square) -> usize {
        (i - 1) * self.cols + (j - 1)
    }

    pub fn rows(&self) -> usize {
        self.exps.len().checked_div(self.cols).unwrap_or(0)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn exponent(&self, sq: Square) -> u32 {
        self.exps[self.slot(sq)]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Nonzero factors in ascending box order.
    pub fn factors(&self) -> impl Iterator<Item = (Square, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(move |(k, &e)| ((k / self.cols + 1, k % self.cols + 1), e))
    }

    fn last(&self) -> Option<Square> {
        let k = self.exps.iter().rposition(|&e| e > 0)?;
        Some((k / self.cols + 1, k % self.cols + 1))
    }

    fn with_delta(&self, sq: Square, delta: i32) -> Self {
        let mut m = self.clone();
        let s = m.slot(sq);
        m.exps[s] = (m.exps[s] as i32 + delta) as u32;
        m
    }

    /// Entrywise `self ≤ other`.
    pub fn divides(&self, other: &PbwMonomial) -> bool {
        self.exps.len() == other.exps.len() && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &PbwMonomial) -> Option<PbwMonomial> {
        other.divides(self).then(|| PbwMonomial {
            cols: self.cols,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn add(&self, other: &PbwMonomial) -> PbwMonomial {
        PbwMonomial { cols: self.cols, exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, ((i, j), e)) in self.factors().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "x[{i},{j}]")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A ℤ[q^{±1}]-combination of PBW monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct PbwElement {
    ambient: Ambient,
    terms: BTreeMap<PbwMonomial, LaurentInt>,
}

impl PbwElement {
    pub fn zero(ambient: &Ambient) -> Self {
        PbwElement { ambient: ambient.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ambient: &Ambient) -> Self {
        Self::scalar(ambient, LaurentInt::one())
    }

    pub fn scalar(ambient: &Ambient, c: LaurentInt) -> Self {
        Self::from_monomial(ambient, PbwMonomial::one(ambient.rows, ambient.cols), c)
    }

    pub fn from_monomial(ambient: &Ambient, m: PbwMonomial, c: LaurentInt) -> Self {
        let mut out = Self::zero(ambient);
        out.add_term(m, c);
        out
    }

    /// `x_{i,j}`, or zero when the box lies outside the ambient shape.
    pub fn generator(ambient: &Ambient, sq: Square) -> Self {
        if !ambient.contains(sq) {
            return Self::zero(ambient);
        }
        let m = PbwMonomial::from_exponents(ambient.rows, ambient.cols, [(sq, 1)]);
        Self::from_monomial(ambient, m, LaurentInt::one())
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> LaurentInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in ascending matrix-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PbwMonomial, &LaurentInt)> + '_ {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: LaurentInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn add_scaled(&mut self, other: &PbwElement, c: &LaurentInt) {
        for (m, d) in &other.terms {
            self.add_term(m.clone(), c * d);
        }
    }

    pub fn scale(&self, c: &LaurentInt) -> Self {
        let mut out = Self::zero(&self.ambient);
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, other: &PbwElement) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &LaurentInt::one());
        Ok(out)
    }

    pub fn sub(&self, other: &PbwElement) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-LaurentInt::one());
        Ok(out)
    }

    fn same_ambient(&self, other: &PbwElement) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::MixedAmbient)
        }
    }

    /// Product in PBW normal form.
    pub fn mul(&self, other: &PbwElement) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = Self::zero(&self.ambient);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                let prod = mul_monomials(&self.ambient, m, n);
                out.add_scaled(&prod, &(c * d));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(&self.ambient);
        for _ in 0..e {
            out = out.mul(self).expect("same ambient");
        }
        out
    }

    /// Greatest monomial under the matrix-lex order, with its coefficient.
    pub fn leading_monomial(&self) -> Result<(PbwMonomial, LaurentInt)> {
        self.terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or_else(|| Error::Invalid("the zero element has no leading monomial".into()))
    }

    pub fn eval_at_one(&self) -> BTreeMap<PbwMonomial, num_bigint::BigInt> {
        self.terms
            .iter()
            .map(|(m, c)| (m.clone(), c.eval_at_one()))
            .filter(|(_, c)| !num_traits::Zero::is_zero(c))
            .collect()
    }

    /// Parses the `Display` rendering, e.g. `1 * x[1,1] x[2,2] + -1*q^1 * x[1,2] x[2,1]`.
    pub fn parse(ambient: &Ambient, s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("malformed PBW element `{s}`"));
        let s = s.trim();
        let mut out = Self::zero(ambient);
        if s == "0" {
            return Ok(out);
        }
        for term in split_top_level(s).ok_or_else(bad)? {
            let (coeff, mono) = split_coefficient(term).ok_or_else(bad)?;
            let c = LaurentInt::from_str(coeff).map_err(|_| bad())?;
            let mut word = Vec::new();
            if mono != "1" {
                for factor in mono.split_whitespace() {
                    let (gen, e) = match factor.split_once('^') {
                        Some((g, e)) => (g, e.parse::<u32>().map_err(|_| bad())?),
                        None => (factor, 1),
                    };
                    let body = gen.strip_prefix("x[").and_then(|g| g.strip_suffix(']')).ok_or_else(bad)?;
                    let (i, j) = body.split_once(',').ok_or_else(bad)?;
                    let sq: Square = (i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?);
                    if !ambient.contains(sq) {
                        return Err(Error::OutsideShape(sq));
                    }
                    word.extend(std::iter::repeat_n(sq, e as usize));
                }
            }
            if word.windows(2).any(|w| w[0] > w[1]) {
                return Err(bad());
            }
            let m = PbwMonomial::from_exponents(ambient.rows, ambient.cols, word.into_iter().map(|sq| (sq, 1)));
            out.add_term(m, c);
        }
        Ok(out)
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if c.len() == 1 {
                write!(f, "{c} * {m}")?;
            } else {
                write!(f, "({c}) * {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `x^m · x^n`, by multiplying in the generators of `n` one at a time.
pub fn mul_monomials(amb: &Ambient, m: &PbwMonomial, n: &PbwMonomial) -> PbwElement {
    let mut acc = PbwElement::from_monomial(amb, m.clone(), LaurentInt::one());
    for (sq, e) in n.factors() {
        for _ in 0..e {
            let mut next = PbwElement::zero(amb);
            for (mono, c) in &acc.terms {
                next.add_scaled(&mul_monomial_generator(amb, mono, sq), c);
            }
            acc = next;
        }
    }
    acc
}

/// `x^m · x_g`. Peels off the last factor `h` of `m`; if `h > g` the pair
/// `h g` is rewritten and the pieces are multiplied back in.
fn mul_monomial_generator(amb: &Ambient, m: &PbwMonomial, g: Square) -> PbwElement {
    let Some(h) = m.last().filter(|&h| h > g) else {
        return PbwElement::from_monomial(amb, m.with_delta(g, 1), LaurentInt::one());
    };
    let rest = m.with_delta(h, -1);
    let (r1, c1) = h;
    let (r2, c2) = g;
    // rest · g · h with a scalar
    let swapped = |c: LaurentInt| {
        let mut out = PbwElement::zero(amb);
        for (mono, d) in &mul_monomial_generator(amb, &rest, g).terms {
            out.add_scaled(&mul_monomial_generator(amb, mono, h), &(d * &c));
        }
        out
    };
    if r1 == r2 || c1 == c2 {
        swapped(amb.p_pow(-1))
    } else if c1 < c2 {
        swapped(LaurentInt::one())
    } else {
        let mut out = swapped(LaurentInt::one());
        let coeff = &amb.p_pow(1) - &amb.p_pow(-1);
        let (a, b) = ((r2, c1), (r1, c2));
        for (mono, d) in &mul_monomial_generator(amb, &rest, a).terms {
            out.add_scaled(&mul_monomial_generator(amb, mono, b), &-(d * &coeff));
        }
        out
    }
}

/// Normal form of a word of generators by repeated adjacent rewriting.
/// `choose(k)` picks which of the `k` out-of-order adjacent positions in a
/// word to rewrite next, which lets tests compare rewriting strategies.
pub fn normal_form_word(amb: &Ambient, word: &[Square], choose: &mut dyn FnMut(usize) -> usize) -> PbwElement {
    let mut pending: Vec<(Vec<Square>, LaurentInt)> = vec![(word.to_vec(), LaurentInt::one())];
    let mut out = PbwElement::zero(amb);
    while let Some((w, c)) = pending.pop() {
        if c.is_zero() {
            continue;
        }
        if w.iter().any(|&sq| !amb.contains(sq)) {
            continue;
        }
        let bad: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&k| w[k] > w[k + 1]).collect();
        if bad.is_empty() {
            let m = PbwMonomial::from_exponents(amb.rows, amb.cols, w.iter().map(|&sq| (sq, 1)));
            out.add_term(m, c);
            continue;
        }
        let k = bad[choose(bad.len()) % bad.len()];
        let ((r1, c1), (r2, c2)) = (w[k], w[k + 1]);
        let mut swapped = w.clone();
        swapped.swap(k, k + 1);
        if r1 == r2 || c1 == c2 {
            pending.push((swapped, &c * &amb.p_pow(-1)));
        } else if c1 < c2 {
            pending.push((swapped, c));
        } else {
            let mut nasty = w.clone();
            nasty[k] = (r2, c1);
            nasty[k + 1] = (r1, c2);
            let coeff = &amb.p_pow(1) - &amb.p_pow(-1);
            pending.push((nasty, -(&c * &coeff)));
            pending.push((swapped, c));
        }
    }
    out
}

/// Row and column sets of a (pseudo) quantum minor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MinorIndex {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorIndex {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch(rows.len(), cols.len()));
        }
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&x| x >= 1);
        if !increasing(&rows) || !increasing(&cols) {
            return Err(Error::Invalid(format!("minor indices {rows:?}|{cols:?} must be strictly increasing")));
        }
        Ok(MinorIndex { rows, cols })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Every index pair of size `1..=max` inside `rows × cols`.
    pub fn all(rows: usize, cols: usize, max: usize) -> Vec<MinorIndex> {
        let mut out = Vec::new();
        for t in 1..=max.min(rows).min(cols) {
            for r in (1..=rows).combinations(t) {
                for c in (1..=cols).combinations(t) {
                    out.push(MinorIndex { rows: r.clone(), cols: c });
                }
            }
        }
        out
    }
}

impl fmt::Display for MinorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}]", self.rows.iter().join(""), self.cols.iter().join(""))
    }
}

fn check_bounds(amb: &Ambient, idx: &MinorIndex) -> Result<()> {
    let row_ok = idx.rows.iter().all(|&i| i <= amb.rows);
    let col_ok = idx.cols.iter().all(|&j| j <= amb.cols);
    if row_ok && col_ok {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{idx} does not fit a {}x{} matrix", amb.rows, amb.cols)))
    }
}

/// `x_{a_1} x_{a_2} ⋯` in the written order.
fn word_product(amb: &Ambient, word: &[Square]) -> PbwElement {
    if word.iter().any(|&sq| !amb.contains(sq)) {
        return PbwElement::zero(amb);
    }
    let mut acc = PbwElement::one(amb);
    for &sq in word {
        acc = acc.mul(&PbwElement::generator(amb, sq)).expect("same ambient");
    }
    acc
}

/// `Σ_σ (−p)^{ℓ(σ)} x_{i_1, j_σ(1)} ⋯ x_{i_t, j_σ(t)}`, with generators
/// outside the ambient shape read as zero.
pub fn pseudo_minor(amb: &Ambient, idx: &MinorIndex) -> Result<PbwElement> {
    check_bounds(amb, idx)?;
    Ok(minor_unchecked(amb, &idx.rows, &idx.cols))
}

fn minor_unchecked(amb: &Ambient, rows: &[usize], cols: &[usize]) -> PbwElement {
    let mut out = PbwElement::zero(amb);
    for sigma in (0..rows.len()).permutations(rows.len()) {
        let word: Vec<Square> = rows.iter().zip(&sigma).map(|(&i, &s)| (i, cols[s])).collect();
        let sign = amb.neg_p_pow(inversions(&sigma) as i64);
        out.add_scaled(&word_product(amb, &word), &sign);
    }
    out
}

fn without(v: &[usize], k: usize) -> Vec<usize> {
    v.iter().enumerate().filter(|&(p, _)| p != k).map(|(_, &x)| x).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LaplaceMode {
    /// `Σ_p (−p)^{p−1} x_{i_1, j_p} [i_2…i_t | ĵ_p]`
    RowFirstLeft,
    /// `Σ_p (−p)^{t−p} [i_1…i_{t−1} | ĵ_p] x_{i_t, j_p}`
    RowLastRight,
    /// `Σ_σ (−p)^{ℓ(σ)} x_{i_σ(1), j_1} ⋯ x_{i_σ(t), j_t}`
    ColumnExpression,
    /// `Σ_p (−p)^{p−1} x_{i_p, j_1} [î_p | j_2…j_t]`
    ColFirstLeft,
    /// `Σ_p (−p)^{t−p} [î_p | j_1…j_{t−1}] x_{i_p, j_t}`
    ColLastRight,
    /// `Σ_p (−p^{-1})^{p−1} [i_2…i_t | ĵ_p] x_{i_1, j_p}`. Holds for honest
    /// quantum minors but not for pseudo minors of a partition.
    RowFirstRight,
}

impl LaplaceMode {
    pub const IDENTITIES: [LaplaceMode; 5] = [
        LaplaceMode::RowFirstLeft,
        LaplaceMode::RowLastRight,
        LaplaceMode::ColumnExpression,
        LaplaceMode::ColFirstLeft,
        LaplaceMode::ColLastRight,
    ];
}

pub fn laplace_expand(amb: &Ambient, idx: &MinorIndex, mode: LaplaceMode) -> Result<PbwElement> {
    check_bounds(amb, idx)?;
    let (rows, cols) = (&idx.rows, &idx.cols);
    let t = rows.len();
    let mut out = PbwElement::zero(amb);
    if t == 0 {
        return Ok(PbwElement::one(amb));
    }
    let gen = |sq: Square| PbwElement::generator(amb, sq);
    let times = |a: &PbwElement, b: &PbwElement| a.mul(b).expect("same ambient");
    match mode {
        LaplaceMode::ColumnExpression => {
            for sigma in (0..t).permutations(t) {
                let word: Vec<Square> = sigma.iter().zip(cols).map(|(&s, &j)| (rows[s], j)).collect();
                out.add_scaled(&word_product(amb, &word), &amb.neg_p_pow(inversions(&sigma) as i64));
            }
        }
        _ => {
            for p in 0..t {
                let (term, sign) = match mode {
                    LaplaceMode::RowFirstLeft => (
                        times(&gen((rows[0], cols[p])), &minor_unchecked(amb, &rows[1..], &without(cols, p))),
                        amb.neg_p_pow(p as i64),
                    ),
                    LaplaceMode::RowLastRight => (
                        times(&minor_unchecked(amb, &rows[..t - 1], &without(cols, p)), &gen((rows[t - 1], cols[p]))),
                        amb.neg_p_pow((t - 1 - p) as i64),
                    ),
                    LaplaceMode::ColFirstLeft => (
                        times(&gen((rows[p], cols[0])), &minor_unchecked(amb, &without(rows, p), &cols[1..])),
                        amb.neg_p_pow(p as i64),
                    ),
                    LaplaceMode::ColLastRight => (
                        times(&minor_unchecked(amb, &without(rows, p), &cols[..t - 1]), &gen((rows[p], cols[t - 1]))),
                        amb.neg_p_pow((t - 1 - p) as i64),
                    ),
                    LaplaceMode::RowFirstRight => {
                        let s = amb.neg_p_pow(p as i64);
                        (
                            times(&minor_unchecked(amb, &rows[1..], &without(cols, p)), &gen((rows[0], cols[p]))),
                            s.invert_q(),
                        )
                    }
                    LaplaceMode::ColumnExpression => unreachable!(),
                };
                out.add_scaled(&term, &sign);
            }
        }
    }
    Ok(out)
}

/// `x_{i_1,j_1} ⋯ x_{i_t,j_t}`.
pub fn diagonal_monomial(amb: &Ambient, idx: &MinorIndex) -> PbwMonomial {
    PbwMonomial::from_exponents(amb.rows, amb.cols, idx.rows.iter().zip(&idx.cols).map(|(&i, &j)| ((i, j), 1)))
}

/// When `x^m` occurs in `x^n`, returns `(k, n − m)` such that
/// `x^n − q^k x^{n−m} x^m` only has matrix-lex smaller terms.
pub fn occurs_factorization(amb: &Ambient, m: &PbwMonomial, n: &PbwMonomial) -> Result<Option<(i64, PbwMonomial)>> {
    let Some(rest) = n.checked_sub(m) else {
        return Ok(None);
    };
    let prod = mul_monomials(amb, &rest, m);
    let (lead, c) = prod.leading_monomial()?;
    let e = c
        .as_q_power()
        .filter(|_| &lead == n)
        .ok_or_else(|| Error::Internal(format!("x^({rest}) x^({m}) does not lead with a q-power times x^({n})")))?;
    Ok(Some((-e, rest)))
}

/// `[1…m | J]` in `O_q(M_{m,n})`.
pub fn plucker(amb: &Ambient, cols: &[usize]) -> Result<PbwElement> {
    let idx = MinorIndex::new((1..=amb.rows).collect(), cols.to_vec())?;
    pseudo_minor(amb, &idx)
}

/// `[S]` for an arbitrary list of columns: zero on repeats, otherwise the
/// coordinate of the sorted set.
fn plucker_symbol(amb: &Ambient, cols: &[usize]) -> Result<PbwElement> {
    let mut s = cols.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Ok(PbwElement::zero(amb));
    }
    plucker(amb, &s)
}

/// `#{(i, j) ∈ I × J : i > j}`.
pub fn ell(i: &[usize], j: &[usize]) -> usize {
    i.iter().map(|a| j.iter().filter(|&b| a > b).count()).sum()
}

/// `Σ_{K′⊔K″=K} (−p)^{ℓ(J1;K′)+ℓ(K′;K″)+ℓ(K″;J2)} [J1 ⊔ K′][K″ ⊔ J2]` in the
/// `m × n` quantum matrices.
pub fn plucker_relation_lhs(amb: &Ambient, j1: &[usize], j2: &[usize], k: &[usize]) -> Result<PbwElement> {
    let m = amb.rows;
    if j1.len() > m || j2.len() > m || j1.len() + j2.len() + k.len() != 2 * m || k.len() <= m {
        return Err(Error::Invalid(format!(
            "need |J1|, |J2| <= {m} and |K| = {} > {m}; got {}, {}, {}",
            2 * m - (j1.len() + j2.len()).min(2 * m),
            j1.len(),
            j2.len(),
            k.len()
        )));
    }
    let mut out = PbwElement::zero(amb);
    for k1 in k.iter().copied().combinations(m - j1.len()) {
        let k2: Vec<usize> = k.iter().copied().filter(|x| !k1.contains(x)).collect();
        let sign = amb.neg_p_pow((ell(j1, &k1) + ell(&k1, &k2) + ell(&k2, j2)) as i64);
        let left: Vec<usize> = j1.iter().chain(&k1).copied().collect();
        let right: Vec<usize> = k2.iter().chain(j2).copied().collect();
        let term = plucker_symbol(amb, &left)?.mul(&plucker_symbol(amb, &right)?)?;
        out.add_scaled(&term, &sign);
    }
    Ok(out)
}

/// A quadratic Plücker expression `Σ c_s [I_s][J_s]`.
#[derive(Clone, Debug)]
pub struct QuadraticTerm {
    pub coeff: LaurentInt,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

pub fn quadratic_value(amb: &Ambient, terms: &[QuadraticTerm]) -> Result<PbwElement> {
    let mut out = PbwElement::zero(amb);
    for t in terms {
        let v = plucker_symbol(amb, &t.left)?.mul(&plucker_symbol(amb, &t.right)?)?;
        out.add_scaled(&v, &t.coeff);
    }
    Ok(out)
}

/// `Σ c_s [I_s ⊔ D][J_s ⊔ D]` evaluated in `ambient`, whose row count must be
/// the original one plus `|D|`.
pub fn muir_lift(amb: &Ambient, terms: &[QuadraticTerm], d: &[usize]) -> Result<PbwElement> {
    let mut lifted = Vec::with_capacity(terms.len());
    for t in terms {
        if t.left.iter().chain(&t.right).any(|x| d.contains(x)) {
            return Err(Error::Invalid(format!("{d:?} meets the indices of a term")));
        }
        if t.left.len() + d.len() != amb.rows || t.right.len() + d.len() != amb.rows {
            return Err(Error::Invalid(format!("lifted terms must have {} columns", amb.rows)));
        }
        lifted.push(QuadraticTerm {
            coeff: t.coeff.clone(),
            left: t.left.iter().chain(d).copied().collect(),
            right: t.right.iter().chain(d).copied().collect(),
        });
    }
    quadratic_value(amb, &lifted)
}

/// Checks `x_{i,j} x_{k,l}^{d+1} = x_{k,l}^d (x_{i,j} x_{k,l} + (p^{2d+1} − p) x_{i,l} x_{k,j})`
/// for `(i, j)` strictly north-west of `(k, l)`.
pub fn ore_identity_holds(amb: &Ambient, (i, j): Square, (k, l): Square, d: u32) -> Result<bool> {
    if !(i < k && j < l) {
        return Err(Error::Invalid(format!("({i},{j}) is not strictly north-west of ({k},{l})")));
    }
    for sq in [(i, j), (k, l)] {
        if !amb.contains(sq) {
            return Err(Error::OutsideShape(sq));
        }
    }
    let x = |sq: Square| PbwElement::generator(amb, sq);
    let lhs = x((i, j)).mul(&x((k, l)).pow(d + 1))?;
    let coeff = &amb.p_pow(2 * d as i64 + 1) - &amb.p_pow(1);
    let inner = x((i, j)).mul(&x((k, l)))?.add(&x((i, l)).mul(&x((k, j)))?.scale(&coeff))?;
    let rhs = x((k, l)).pow(d).mul(&inner)?;
    Ok(lhs == rhs)
}

/// All boxes of the ambient shape, in lex order.
pub fn generators(amb: &Ambient) -> Vec<Square> {
    amb.squares().filter(|&sq| amb.contains(sq)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> LaurentInt {
        LaurentInt::q_pow(k)
    }

    fn full(r: usize, c: usize) -> Ambient {
        Ambient::full(r, c)
    }

    fn mono(amb: &Ambient, f: &[(Square, u32)]) -> PbwMonomial {
        PbwMonomial::from_exponents(amb.rows(), amb.cols(), f.iter().copied())
    }

    #[test]
    fn anti_diagonal_pair_commutes() {
        let a = full(2, 2);
        let p = PbwElement::generator(&a, (2, 1)).mul(&PbwElement::generator(&a, (1, 2))).unwrap();
        assert_eq!(p.to_string(), "1*q^0 * x[1,2] x[2,1]");
    }

    #[test]
    fn nasty_relation() {
        let a = full(2, 2);
        let p = PbwElement::generator(&a, (2, 2)).mul(&PbwElement::generator(&a, (1, 1))).unwrap();
        let mut want = PbwElement::from_monomial(&a, mono(&a, &[((1, 1), 1), ((2, 2), 1)]), q(0));
        want.add_term(mono(&a, &[((1, 2), 1), ((2, 1), 1)]), &q(-1) - &q(1));
        assert_eq!(p, want);
    }

    #[test]
    fn row_relation() {
        let a = full(2, 2);
        let p = PbwElement::generator(&a, (1, 2)).mul(&PbwElement::generator(&a, (1, 1))).unwrap();
        assert_eq!(p, PbwElement::from_monomial(&a, mono(&a, &[((1, 1), 1), ((1, 2), 1)]), q(-1)));
    }

    #[test]
    fn inverse_convention_swaps_q() {
        let a = full(2, 2).with_convention(Convention::QInverse);
        let p = PbwElement::generator(&a, (1, 2)).mul(&PbwElement::generator(&a, (1, 1))).unwrap();
        assert_eq!(p.leading_monomial().unwrap().1, q(1));
    }

    #[test]
    fn pseudo_minors_in_a_partition() {
        let a = Ambient::partition(Partition::new(vec![4, 3, 1]).unwrap());
        let m = pseudo_minor(&a, &MinorIndex::new(vec![1, 2], vec![1, 2]).unwrap()).unwrap();
        assert_eq!(m.to_string(), "1*q^0 * x[1,1] x[2,2] + -1*q^1 * x[1,2] x[2,1]");
        let m = pseudo_minor(&a, &MinorIndex::new(vec![1, 2], vec![3, 4]).unwrap()).unwrap();
        assert_eq!(m.to_string(), "-1*q^1 * x[1,4] x[2,3]");
        let m = pseudo_minor(&a, &MinorIndex::new(vec![3], vec![2]).unwrap()).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn laplace_example_in_partition() {
        let a = Ambient::partition(Partition::new(vec![4, 3, 1]).unwrap());
        let idx = MinorIndex::new(vec![1, 2], vec![3, 4]).unwrap();
        let v = laplace_expand(&a, &idx, LaplaceMode::ColLastRight).unwrap();
        assert_eq!(v.to_string(), "-1*q^1 * x[1,4] x[2,3]");
    }

    #[test]
    fn row_first_right_fails_on_small_partition() {
        let a = Ambient::partition(Partition::new(vec![2, 1]).unwrap());
        let idx = MinorIndex::new(vec![1, 2], vec![1, 2]).unwrap();
        let v = laplace_expand(&a, &idx, LaplaceMode::RowFirstRight).unwrap();
        assert_eq!(v.to_string(), "-1*q^-1 * x[1,2] x[2,1]");
        assert_ne!(v, pseudo_minor(&a, &idx).unwrap());
        let full = full(2, 2);
        assert_eq!(
            laplace_expand(&full, &idx, LaplaceMode::RowFirstRight).unwrap(),
            pseudo_minor(&full, &idx).unwrap()
        );
    }

    #[test]
    fn leading_monomial_of_2x2_minor() {
        let a = full(2, 2);
        let m = pseudo_minor(&a, &MinorIndex::new(vec![1, 2], vec![1, 2]).unwrap()).unwrap();
        let (lead, c) = m.leading_monomial().unwrap();
        assert_eq!(lead, mono(&a, &[((1, 1), 1), ((2, 2), 1)]));
        assert!(c.is_one());
        assert!(PbwElement::zero(&a).leading_monomial().is_err());
    }

    #[test]
    fn ell_examples() {
        assert_eq!(ell(&[1, 3], &[2, 4]), 1);
        assert_eq!(ell(&[], &[2, 4]), 0);
    }

    #[test]
    fn occurs_identity_case() {
        let a = full(2, 2);
        let n = mono(&a, &[((1, 1), 2), ((2, 2), 1)]);
        assert_eq!(occurs_factorization(&a, &n, &n).unwrap(), Some((0, PbwMonomial::one(2, 2))));
        let big = mono(&a, &[((1, 2), 1)]);
        assert_eq!(occurs_factorization(&a, &big, &n).unwrap(), None);
    }

    #[test]
    fn ore_small_cases() {
        let a = full(2, 2);
        assert!(ore_identity_holds(&a, (1, 1), (2, 2), 1).unwrap());
        assert!(ore_identity_holds(&a, (1, 1), (2, 2), 0).unwrap());
        assert!(ore_identity_holds(&a, (1, 2), (2, 1), 1).is_err());
    }

    #[test]
    fn text_round_trip() {
        let a = full(2, 3);
        let m = pseudo_minor(&a, &MinorIndex::new(vec![1, 2], vec![1, 3]).unwrap())
            .unwrap()
            .mul(&PbwElement::generator(&a, (2, 2)))
            .unwrap();
        assert_eq!(PbwElement::parse(&a, &m.to_string()).unwrap(), m);
        assert!(PbwElement::parse(&a, "1 * x[2,2] x[1,1]").is_err());
        assert!(PbwElement::parse(&a, "1 * x[3,1]").is_err());
    }

    #[test]
    fn mixed_ambients_rejected() {
        let a = PbwElement::generator(&full(2, 2), (1, 1));
        let b = PbwElement::generator(&full(2, 3), (1, 1));
        assert_eq!(a.mul(&b), Err(Error::MixedAmbient));
    }
}
