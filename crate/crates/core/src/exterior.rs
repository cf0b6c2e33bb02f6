//! The integral exterior algebra on `n` degree-one generators `e1 .. en`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{self, Matrix, Rational, Sign};
use crate::set::{IndexSet, MAX_ELEMENTS};

/// A wedge `e_{i1} ^ .. ^ e_{ik}` with `i1 < .. < ik` (zero-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(IndexSet);

impl Monomial {
    pub const ONE: Monomial = Monomial(IndexSet::EMPTY);

    pub fn from_set(set: IndexSet) -> Self {
        Monomial(set)
    }

    pub fn generator(i: usize) -> Self {
        Monomial(IndexSet::singleton(i))
    }

    pub fn set(self) -> IndexSet {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.len()
    }

    pub fn indices(self) -> Vec<usize> {
        self.0.to_vec()
    }

    /// `self ^ other` as a signed monomial; `None` when they share a generator.
    pub fn wedge(self, other: Monomial) -> Option<(Monomial, Sign)> {
        let (a, b) = (self.0.bits(), other.0.bits());
        if a & b != 0 {
            return None;
        }
        // each generator of `other` must pass every larger generator of `self`
        let swaps: u32 = other
            .0
            .iter()
            .map(|j| (a >> j).count_ones())
            .sum();
        let sign = if swaps.is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
        Some((Monomial(IndexSet::from_bits(a | b)), sign))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "1")
        } else if self.0.bound() <= 9 {
            write!(f, "e{}", self.0.label())
        } else {
            write!(f, "e{{{}}}", self.0.label())
        }
    }
}

/// Sorts `indices` into a monomial, with the sign of the sorting
/// permutation. The sign is zero iff an index repeats.
pub fn normalize(indices: &[usize]) -> (Monomial, Sign) {
    let mut set = IndexSet::EMPTY;
    for &i in indices {
        assert!(i < MAX_ELEMENTS, "generator index {i} out of range");
        if set.contains(i) {
            return (Monomial(IndexSet::EMPTY), Sign::Zero);
        }
        set = set.with(i);
    }
    let inversions = indices
        .iter()
        .enumerate()
        .flat_map(|(k, a)| indices[k + 1..].iter().map(move |b| a > b))
        .filter(|&inv| inv)
        .count();
    let sign = if inversions % 2 == 0 { Sign::Plus } else { Sign::Minus };
    (Monomial(set), sign)
}

/// All degree-`p` monomials in `n` generators, lexicographically.
pub fn monomials(n: usize, p: usize) -> Vec<Monomial> {
    (0..n)
        .combinations(p)
        .map(|c| Monomial(c.into_iter().collect()))
        .collect()
}

/// An integer combination of monomials. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct ExtElement {
    terms: BTreeMap<Monomial, BigInt>,
}

impl ExtElement {
    pub fn zero() -> Self {
        ExtElement::default()
    }

    pub fn monomial(m: Monomial, coeff: impl Into<BigInt>) -> Self {
        let mut e = ExtElement::zero();
        e.add_term(m, coeff.into());
        e
    }

    pub fn generator(i: usize) -> Self {
        ExtElement::monomial(Monomial::generator(i), 1)
    }

    /// Builds `sum c * e_{indices}` from unsorted index lists.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, Vec<usize>)>,
        C: Into<BigInt>,
    {
        let mut e = ExtElement::zero();
        for (c, idx) in terms {
            let (m, s) = normalize(&idx);
            if s != Sign::Zero {
                e.add_term(m, c.into() * s.to_i32());
            }
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Common degree of all terms; `None` for zero or mixed degree.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_some()
    }

    pub fn leading(&self) -> Option<(Monomial, &BigInt)> {
        self.terms.iter().next().map(|(m, c)| (*m, c))
    }

    pub fn scale(&self, k: &BigInt) -> ExtElement {
        let mut out = ExtElement::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    pub fn wedge(&self, other: &ExtElement) -> ExtElement {
        let mut out = ExtElement::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, s)) = ma.wedge(*mb) {
                    out.add_term(m, ca * cb * s.to_i32());
                }
            }
        }
        out
    }

    /// Applies `e_i -> signs[i] e_i` to every generator.
    pub fn flip_generators(&self, signs: &[Sign]) -> ExtElement {
        let mut out = ExtElement::zero();
        for (m, c) in &self.terms {
            let s = m.set().iter().fold(Sign::Plus, |acc, i| acc * signs[i]);
            out.add_term(*m, c * s.to_i32());
        }
        out
    }

    /// Relabels generator `i` as `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> ExtElement {
        ExtElement::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (c.clone(), m.indices().iter().map(|&i| perm[i]).collect())),
        )
    }

    /// Coefficients along `basis`, which must cover every term.
    pub fn coordinates(&self, basis: &[Monomial]) -> Vec<Rational> {
        debug_assert!(self.terms.keys().all(|m| basis.contains(m)));
        basis
            .iter()
            .map(|m| Rational::from_integer(self.coefficient(*m)))
            .collect()
    }

    /// Overall sign chosen so the lexicographically first coefficient is
    /// positive.
    pub fn sign_normalized(&self) -> ExtElement {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self.clone(),
            _ => self.clone(),
        }
    }
}

impl Add for &ExtElement {
    type Output = ExtElement;

    fn add(self, rhs: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &ExtElement {
    type Output = ExtElement;

    fn sub(self, rhs: &ExtElement) -> ExtElement {
        self + &(-rhs.clone())
    }
}

impl Neg for ExtElement {
    type Output = ExtElement;

    fn neg(mut self) -> ExtElement {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for &ExtElement {
    type Output = ExtElement;

    fn mul(self, rhs: &ExtElement) -> ExtElement {
        self.wedge(rhs)
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Signed monomial sum in lexicographic order, e.g. `-e12 +e14 +e24`.
impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{sign}{m}")?;
            } else {
                write!(f, "{sign}{mag}{m}")?;
            }
        }
        Ok(())
    }
}

/// A graded slice `I^p` of the ideal generated by some elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpan {
    pub degree: usize,
    pub rank: usize,
    /// Reduced echelon basis, each row scaled to a primitive integer vector.
    pub basis: Vec<ExtElement>,
}

/// Matrix whose rows are the coordinates of `elements` in the degree-`p`
/// monomial basis.
pub fn coordinate_matrix(elements: &[ExtElement], p: usize, n: usize) -> Matrix {
    let cols = monomials(n, p);
    let rows: Vec<Vec<Rational>> = elements.iter().map(|e| e.coordinates(&cols)).collect();
    Matrix::from_rows(&rows, cols.len())
}

/// Degree-`p` part of the two-sided ideal generated by homogeneous
/// `generators`: the span of `g ^ m` over generators `g` of degree at most
/// `p` and monomials `m` of the complementary degree.
pub fn degree_span_rank(generators: &[ExtElement], p: usize, n: usize) -> GradedSpan {
    let cols = monomials(n, p);
    let mut products = Vec::new();
    for g in generators {
        let Some(q) = g.degree() else {
            assert!(g.is_zero(), "generators must be homogeneous");
            continue;
        };
        if q > p {
            continue;
        }
        for m in monomials(n, p - q) {
            let prod = g.wedge(&ExtElement::monomial(m, 1));
            if !prod.is_zero() {
                products.push(prod);
            }
        }
    }
    let rows: Vec<Vec<Rational>> = products.iter().map(|e| e.coordinates(&cols)).collect();
    let (red, pivots) = linalg::rref(&Matrix::from_rows(&rows, cols.len()));
    let basis = (0..pivots.len())
        .map(|r| {
            let ints = linalg::primitive_integer_vector(red.row(r));
            let mut e = ExtElement::zero();
            for (m, c) in cols.iter().zip(ints) {
                e.add_term(*m, c);
            }
            e
        })
        .collect();
    GradedSpan {
        degree: p,
        rank: pivots.len(),
        basis,
    }
}

/// Whether two lists of degree-`p` elements span the same rational subspace.
pub fn same_span(a: &[ExtElement], b: &[ExtElement], p: usize, n: usize) -> bool {
    let (ra, pa) = linalg::rref(&coordinate_matrix(a, p, n));
    let (rb, pb) = linalg::rref(&coordinate_matrix(b, p, n));
    pa == pb && (0..pa.len()).all(|r| ra.row(r) == rb.row(r))
}

/// `n choose k`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
