//! The quantum torus of a Le diagram and the path-matrix calculus built on it.
//!
//! Generators `t_{i,j}` (one per white box) are invertible. Two generators in
//! the same row or column satisfy `t_a t_b = q t_b t_a` when `a < b`; all other
//! pairs commute. Monomials are stored with their factors in ascending box
//! order, so an element is a finite ℤ[q^{±1}]-combination of such monomials.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::laurent::LaurentInt;
use crate::postnikov::PostnikovGraph;
use crate::shapes::{LeDiagram, Square};

fn related(a: Square, b: Square) -> bool {
    a != b && (a.0 == b.0 || a.1 == b.1)
}

/// Normal-ordered monomial `Π t_{i,j}^{e_{i,j}}`, factors in ascending box order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TorusMonomial {
    exps: BTreeMap<Square, i64>,
}

impl TorusMonomial {
    pub fn one() -> Self {
        TorusMonomial::default()
    }

    pub fn generator(sq: Square, e: i64) -> Self {
        let mut exps = BTreeMap::new();
        if e != 0 {
            exps.insert(sq, e);
        }
        TorusMonomial { exps }
    }

    pub fn from_exponents<I: IntoIterator<Item = (Square, i64)>>(iter: I) -> Self {
        let mut exps = BTreeMap::new();
        for (sq, e) in iter {
            *exps.entry(sq).or_insert(0) += e;
        }
        exps.retain(|_, e| *e != 0);
        TorusMonomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, sq: Square) -> i64 {
        self.exps.get(&sq).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Square, i64)> + '_ {
        self.exps.iter().map(|(s, e)| (*s, *e))
    }

    /// `self · other = q^k · (normal-ordered monomial)`; returns `(k, monomial)`.
    pub fn mul(&self, other: &TorusMonomial) -> (i64, TorusMonomial) {
        let mut k = 0;
        for (&a, &e) in &self.exps {
            for (&b, &f) in other.exps.range(..a) {
                if related(a, b) {
                    k -= e * f;
                }
            }
        }
        let mut exps = self.exps.clone();
        for (&b, &f) in &other.exps {
            let slot = exps.entry(b).or_insert(0);
            *slot += f;
            if *slot == 0 {
                exps.remove(&b);
            }
        }
        (k, TorusMonomial { exps })
    }
}

impl fmt::Display for TorusMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (&(i, j), &e) in &self.exps {
            if e == 1 {
                write!(f, "t[{i},{j}]")?;
            } else {
                write!(f, "t[{i},{j}]^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TorusMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of a quantum torus.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TorusElement {
    terms: BTreeMap<TorusMonomial, LaurentInt>,
}

impl TorusElement {
    pub fn zero() -> Self {
        TorusElement::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(LaurentInt::one(), TorusMonomial::one())
    }

    /// `t_{i,j}`.
    pub fn generator(sq: Square) -> Self {
        Self::generator_pow(sq, 1)
    }

    /// `t_{i,j}^e`.
    pub fn generator_pow(sq: Square, e: i64) -> Self {
        Self::from_monomial(LaurentInt::one(), TorusMonomial::generator(sq, e))
    }

    pub fn from_monomial(c: LaurentInt, m: TorusMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TorusElement { terms }
    }

    pub fn scalar(c: LaurentInt) -> Self {
        Self::from_monomial(c, TorusMonomial::one())
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

    pub fn terms(&self) -> impl Iterator<Item = (&TorusMonomial, &LaurentInt)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &TorusMonomial) -> LaurentInt {
        self.terms.get(m).cloned().unwrap_or_else(LaurentInt::zero)
    }

    /// Boxes whose generators occur in some term.
    pub fn support(&self) -> BTreeSet<Square> {
        self.terms.keys().flat_map(|m| m.exps.keys().copied()).collect()
    }

    pub fn scale(&self, c: &LaurentInt) -> Self {
        let mut out = TorusElement::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    fn add_term(&mut self, m: TorusMonomial, c: LaurentInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Ordered product of the given factors.
    pub fn product<'a, I: IntoIterator<Item = &'a TorusElement>>(iter: I) -> TorusElement {
        iter.into_iter().fold(TorusElement::one(), |acc, x| &acc * x)
    }
}

impl AddAssign<&TorusElement> for TorusElement {
    fn add_assign(&mut self, rhs: &TorusElement) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for &TorusElement {
    type Output = TorusElement;
    fn add(self, rhs: &TorusElement) -> TorusElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for TorusElement {
    type Output = TorusElement;
    fn add(mut self, rhs: TorusElement) -> TorusElement {
        self += &rhs;
        self
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        TorusElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &TorusElement {
    type Output = TorusElement;
    fn sub(self, rhs: &TorusElement) -> TorusElement {
        self + &(-rhs)
    }
}

impl Sub for TorusElement {
    type Output = TorusElement;
    fn sub(self, rhs: TorusElement) -> TorusElement {
        &self - &rhs
    }
}

impl Mul for &TorusElement {
    type Output = TorusElement;
    fn mul(self, rhs: &TorusElement) -> TorusElement {
        let mut out = TorusElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let (k, m) = a.mul(b);
                out.add_term(m, (x * y).shift(k));
            }
        }
        out
    }
}

impl Mul for TorusElement {
    type Output = TorusElement;
    fn mul(self, rhs: TorusElement) -> TorusElement {
        &self * &rhs
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
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

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TorusElement {
    type Err = Error;

    /// Reads the `Display` rendering back, e.g. `-1*q^1 * t[1,4]t[4,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("malformed torus element `{s}`"));
        let s = s.trim();
        if s == "0" {
            return Ok(TorusElement::zero());
        }
        let mut out = TorusElement::zero();
        for term in split_top_level(s).ok_or_else(bad)? {
            let (coeff, mono) = split_coefficient(term).ok_or_else(bad)?;
            let c: LaurentInt = coeff.parse().map_err(|_| bad())?;
            let m = parse_torus_monomial(mono).ok_or_else(bad)?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

/// Splits on ` + ` separators that sit outside parentheses.
pub(crate) fn split_top_level(s: &str) -> Option<Vec<&str>> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b' ' if depth == 0 && s[i..].starts_with(" + ") => {
                out.push(s[start..i].trim());
                i += 3;
                start = i;
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return None;
        }
        i += 1;
    }
    out.push(s[start..].trim());
    Some(out)
}

/// `(c) * rest` or `c * rest` into `(c, rest)`.
pub(crate) fn split_coefficient(term: &str) -> Option<(&str, &str)> {
    if let Some(inner) = term.strip_prefix('(') {
        let close = inner.find(')')?;
        let rest = inner[close + 1..].trim_start().strip_prefix('*')?;
        Some((&inner[..close], rest.trim()))
    } else {
        let (c, rest) = term.split_once(" * ")?;
        Some((c.trim(), rest.trim()))
    }
}

fn parse_torus_monomial(s: &str) -> Option<TorusMonomial> {
    if s == "1" {
        return Some(TorusMonomial::one());
    }
    let mut factors = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c == '*' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        let body = rest.strip_prefix("t[")?;
        let close = body.find(']')?;
        let (i, j) = body[..close].split_once(',')?;
        let sq = (i.trim().parse().ok()?, j.trim().parse().ok()?);
        rest = &body[close + 1..];
        let mut e = 1i64;
        if let Some(after) = rest.strip_prefix('^') {
            let end = after
                .char_indices()
                .find(|&(k, c)| !(c.is_ascii_digit() || (k == 0 && c == '-')))
                .map_or(after.len(), |(k, _)| k);
            e = after[..end].parse().ok()?;
            rest = &after[end..];
        }
        factors.push((sq, e));
    }
    let mut out = TorusElement::one();
    for (sq, e) in factors {
        out = &out * &TorusElement::generator_pow(sq, e);
    }
    // A written product in non-ascending order picks up a q-power; only
    // normal-ordered products are accepted as monomials.
    let (m, c) = out.terms.into_iter().next()?;
    c.is_one().then_some(m)
}

/// The quantum torus attached to a Le diagram; checks that operands only use
/// generators of white boxes.
#[derive(Clone, Debug)]
pub struct QuantumTorus {
    white: BTreeSet<Square>,
}

impl QuantumTorus {
    pub fn new(diagram: &LeDiagram) -> Self {
        QuantumTorus { white: diagram.white_boxes().into_iter().collect() }
    }

    pub fn generator(&self, sq: Square) -> Result<TorusElement> {
        self.check_box(sq)?;
        Ok(TorusElement::generator(sq))
    }

    pub fn generator_pow(&self, sq: Square, e: i64) -> Result<TorusElement> {
        self.check_box(sq)?;
        Ok(TorusElement::generator_pow(sq, e))
    }

    /// Product of two elements of this torus.
    pub fn mul(&self, a: &TorusElement, b: &TorusElement) -> Result<TorusElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(a * b)
    }

    pub fn contains(&self, a: &TorusElement) -> bool {
        a.support().is_subset(&self.white)
    }

    fn check_box(&self, sq: Square) -> Result<()> {
        if self.white.contains(&sq) {
            Ok(())
        } else {
            Err(Error::MixedAmbient)
        }
    }

    fn check(&self, a: &TorusElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::MixedAmbient)
        }
    }
}

/// Matrix of torus elements indexed from 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<TorusElement>,
}

impl TorusMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        TorusMatrix { rows, cols, entries: vec![TorusElement::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`; zero outside the matrix.
    pub fn get(&self, i: usize, j: usize) -> TorusElement {
        if i == 0 || j == 0 || i > self.rows || j > self.cols {
            return TorusElement::zero();
        }
        self.entries[(i - 1) * self.cols + (j - 1)].clone()
    }

    fn at(&self, i: usize, j: usize) -> &TorusElement {
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TorusElement) {
        self.entries[(i - 1) * self.cols + (j - 1)] = v;
    }
}

/// Number of inversions of a permutation of `0..t`.
pub fn inversions(perm: &[usize]) -> usize {
    let mut n = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                n += 1;
            }
        }
    }
    n
}

/// `M_C[i, j]` = sum of weights of all paths `r_i ⇒ c_j`; a `c × d` matrix.
pub fn path_matrix(diagram: &LeDiagram) -> TorusMatrix {
    let g = PostnikovGraph::build(diagram);
    let (c, d) = (diagram.shape().rows(), diagram.shape().cols());
    let mut out = TorusMatrix::zeros(c, d);
    for i in 1..=c {
        for j in 1..=d {
            let mut sum = TorusElement::zero();
            for p in g.enumerate_paths(i, j) {
                sum += &g.path_weight(&p);
            }
            out.set(i, j, sum);
        }
    }
    out
}

fn check_minor_indices(m: &TorusMatrix, rows: &[usize], cols: &[usize]) -> Result<()> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch(rows.len(), cols.len()));
    }
    let sorted = |v: &[usize], max: usize| v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&x| x >= 1 && x <= max);
    if !sorted(rows, m.rows) || !sorted(cols, m.cols) {
        return Err(Error::Invalid(format!(
            "minor indices {rows:?}|{cols:?} must be increasing and inside {}x{}",
            m.rows, m.cols
        )));
    }
    Ok(())
}

/// Row form: `Σ_σ (−q)^{ℓ(σ)} M[i_1, j_{σ(1)}] ⋯ M[i_t, j_{σ(t)}]`.
pub fn path_matrix_minor(m: &TorusMatrix, rows: &[usize], cols: &[usize]) -> Result<TorusElement> {
    check_minor_indices(m, rows, cols)?;
    let t = rows.len();
    let mut out = TorusElement::zero();
    for perm in (0..t).permutations(t) {
        let factors: Vec<&TorusElement> = (0..t).map(|s| m.at(rows[s], cols[perm[s]])).collect();
        if factors.iter().any(|f| f.is_zero()) {
            continue;
        }
        let term = TorusElement::product(factors);
        out += &term.scale(&LaurentInt::neg_q_power(inversions(&perm) as i64));
    }
    Ok(out)
}

/// Column form: `Σ_σ (−q)^{ℓ(σ)} M[i_{σ(1)}, j_1] ⋯ M[i_{σ(t)}, j_t]`.
pub fn path_matrix_minor_columns(m: &TorusMatrix, rows: &[usize], cols: &[usize]) -> Result<TorusElement> {
    check_minor_indices(m, rows, cols)?;
    let t = rows.len();
    let mut out = TorusElement::zero();
    for perm in (0..t).permutations(t) {
        let factors: Vec<&TorusElement> = (0..t).map(|s| m.at(rows[perm[s]], cols[s])).collect();
        if factors.iter().any(|f| f.is_zero()) {
            continue;
        }
        let term = TorusElement::product(factors);
        out += &term.scale(&LaurentInt::neg_q_power(inversions(&perm) as i64));
    }
    Ok(out)
}

/// `(−q)^{ℓ(σ)} Σ_𝒫 w(𝒫)` over vertex-disjoint path systems from `rows` to `cols`.
pub fn lgv_rhs(diagram: &LeDiagram, rows: &[usize], cols: &[usize]) -> Result<TorusElement> {
    let g = PostnikovGraph::build(diagram);
    let systems = g.enumerate_disjoint_systems(rows, cols)?;
    let Some(first) = systems.first() else {
        return Ok(TorusElement::zero());
    };
    let ell = first.inversions();
    let mut sum = TorusElement::zero();
    for s in &systems {
        if s.inversions() != ell {
            return Err(Error::Internal("disjoint systems with different permutations".into()));
        }
        sum += &g.system_weight(s);
    }
    Ok(sum.scale(&LaurentInt::neg_q_power(ell as i64)))
}

/// Runs the restoration sweep: start from `t_{i,j}` on white boxes (zero on
/// black ones) and, at every white `(a, b)` in lexicographic order, add
/// `χ_{i,b} t_{a,b}^{-1} t_{a,j}` to `χ_{i,j}` for all `i < a`, `j < b`.
pub fn restore_entries(diagram: &LeDiagram) -> TorusMatrix {
    let shape = diagram.shape();
    let (c, d) = (shape.rows(), shape.cols());
    let mut chi = TorusMatrix::zeros(c, d);
    for sq in diagram.white_boxes() {
        chi.set(sq.0, sq.1, TorusElement::generator(sq));
    }
    for (a, b) in shape.boxes() {
        if !diagram.is_white((a, b)) {
            continue;
        }
        let inv = TorusElement::generator_pow((a, b), -1);
        for j in 1..b {
            if !diagram.is_white((a, j)) {
                continue;
            }
            let tail = &inv * &TorusElement::generator((a, j));
            for i in 1..a {
                let add = chi.at(i, b) * &tail;
                if add.is_zero() {
                    continue;
                }
                let updated = chi.at(i, j) + &add;
                chi.set(i, j, updated);
            }
        }
    }
    chi
}

/// Whether the path-matrix minor `[rows | cols]` is zero.
pub fn minor_vanishes(diagram: &LeDiagram, rows: &[usize], cols: &[usize]) -> Result<bool> {
    let m = path_matrix(diagram);
    Ok(path_matrix_minor(&m, rows, cols)?.is_zero())
}
