//! The arrangement data model: codimension-two subspaces of `R^{2d}`, each
//! cut out by an ordered pair of real linear forms.
//!
//! Real coordinates are ordered `(x1, y1, .., xd, yd)` with `zj = xj + i yj`.
//! The order of the two forms in a pair fixes the orientation of the
//! subspace, and with it the sign of its degree-one cohomology generator.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, Matrix, Rational, Vector};
use crate::matroid;
use crate::set::{IndexSet, MAX_ELEMENTS};

pub mod file;

pub use file::{format_rational, parse_arrangement, parse_rational, to_document};

#[derive(Debug, Error)]
pub enum ArrangementError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ambient dimension {0} is not a positive even number")]
    OddDimension(usize),
    #[error("subspace {name}: expected {expected} coefficients, got {got}")]
    WrongCoefficientCount {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("subspace {0}: linear form is identically zero")]
    ZeroForm(String),
    #[error("arrangement has no subspaces")]
    Empty,
    #[error("at most {MAX_ELEMENTS} subspaces are supported, got {0}")]
    TooManySubspaces(usize),
    #[error("unknown subspace label {0}")]
    UnknownLabel(String),
    #[error("restriction to {at} is degenerate: {name} drops below rank 2")]
    DegenerateRestriction { at: String, name: String },
    #[error("arrangement is not admissible:\n{0}")]
    Validation(ValidationReport),
}

/// A real linear form on `R^{2d}`, by its coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm(Vector);

impl LinearForm {
    pub fn new(coefficients: Vector) -> Self {
        LinearForm(coefficients)
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        LinearForm(coefficients.iter().map(|&c| linalg::int(c)).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        linalg::dot(&self.0, point)
    }

    fn combine(a: &Rational, f: &LinearForm, b: &Rational, g: &LinearForm) -> LinearForm {
        LinearForm(f.0.iter().zip(&g.0).map(|(x, y)| a * x + b * y).collect())
    }
}

/// Complex coefficient as `(re, im)`.
pub type Complex = (Rational, Rational);

/// `f = sum_j z[j] * zj + zbar[j] * conj(zj)`, the input form of a subspace
/// given by one complex (or conjugate-linear) equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexFormSpec {
    pub z: Vec<Complex>,
    pub zbar: Vec<Complex>,
}

impl ComplexFormSpec {
    pub fn is_zero(&self) -> bool {
        self.z
            .iter()
            .chain(&self.zbar)
            .all(|(re, im)| re.is_zero() && im.is_zero())
    }

    pub fn is_holomorphic(&self) -> bool {
        self.zbar.iter().all(|(re, im)| re.is_zero() && im.is_zero())
    }
}

/// Real and imaginary parts of a complex form in `d` complex variables.
pub fn from_complex_form(
    spec: &ComplexFormSpec,
    d: usize,
) -> Result<(LinearForm, LinearForm), ArrangementError> {
    let zero = (Rational::zero(), Rational::zero());
    let coeff = |v: &[Complex], j: usize| v.get(j).cloned().unwrap_or_else(|| zero.clone());
    if spec.z.len() > d || spec.zbar.len() > d {
        return Err(ArrangementError::WrongCoefficientCount {
            name: "<complex form>".into(),
            expected: d,
            got: spec.z.len().max(spec.zbar.len()),
        });
    }
    if spec.is_zero() {
        return Err(ArrangementError::ZeroForm("<complex form>".into()));
    }
    let mut re = Vec::with_capacity(2 * d);
    let mut im = Vec::with_capacity(2 * d);
    for j in 0..d {
        let (a, b) = coeff(&spec.z, j);
        let (c, e) = coeff(&spec.zbar, j);
        re.push(&a + &c);
        re.push(&e - &b);
        im.push(&b + &e);
        im.push(&a - &c);
    }
    Ok((LinearForm(re), LinearForm(im)))
}

/// One codimension-two subspace `{l = l' = 0}` with its orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspacePair {
    pub name: String,
    pub first: LinearForm,
    pub second: LinearForm,
}

impl SubspacePair {
    pub fn new(name: impl Into<String>, first: LinearForm, second: LinearForm) -> Self {
        SubspacePair {
            name: name.into(),
            first,
            second,
        }
    }

    pub fn from_complex(
        name: impl Into<String>,
        spec: &ComplexFormSpec,
        d: usize,
    ) -> Result<Self, ArrangementError> {
        let name = name.into();
        let (first, second) = from_complex_form(spec, d).map_err(|e| match e {
            ArrangementError::ZeroForm(_) => ArrangementError::ZeroForm(name.clone()),
            ArrangementError::WrongCoefficientCount { expected, got, .. } => {
                ArrangementError::WrongCoefficientCount {
                    name: name.clone(),
                    expected,
                    got,
                }
            }
            other => other,
        })?;
        Ok(SubspacePair {
            name,
            first,
            second,
        })
    }

    pub fn forms(&self) -> [&LinearForm; 2] {
        [&self.first, &self.second]
    }

    pub fn rank(&self) -> usize {
        let dim = self.first.dim();
        linalg::rank(&Matrix::from_rows(
            &[self.first.0.clone(), self.second.0.clone()],
            dim,
        ))
    }

    /// The pair `(a l + b l', c l + d l')` for `m = [[a, b], [c, d]]`.
    pub fn recombined(&self, m: &[[Rational; 2]; 2]) -> SubspacePair {
        SubspacePair {
            name: self.name.clone(),
            first: LinearForm::combine(&m[0][0], &self.first, &m[0][1], &self.second),
            second: LinearForm::combine(&m[1][0], &self.first, &m[1][1], &self.second),
        }
    }

    /// Rescales the first form only.
    pub fn scaled_first(&self, factor: &Rational) -> SubspacePair {
        self.recombined(&[
            [factor.clone(), Rational::zero()],
            [Rational::zero(), Rational::one()],
        ])
    }

    pub fn swapped(&self) -> SubspacePair {
        SubspacePair {
            name: self.name.clone(),
            first: self.second.clone(),
            second: self.first.clone(),
        }
    }

    /// The holomorphic form `f` with `(Re f, Im f) = (first, second)`, if any.
    pub fn complex_spec(&self) -> Option<ComplexFormSpec> {
        let (l, m) = (&self.first.0, &self.second.0);
        let d = l.len() / 2;
        let mut z = Vec::with_capacity(d);
        for j in 0..d {
            let (lx, ly, mx, my) = (&l[2 * j], &l[2 * j + 1], &m[2 * j], &m[2 * j + 1]);
            if *mx != -ly.clone() || my != lx {
                return None;
            }
            z.push((lx.clone(), mx.clone()));
        }
        let zbar = vec![(Rational::zero(), Rational::zero()); d];
        Some(ComplexFormSpec { z, zbar })
    }
}

/// A labeled list of codimension-two subspaces of `R^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    subspaces: Vec<SubspacePair>,
}

impl Arrangement {
    /// Checks shape only; admissibility is reported by [`validate`].
    pub fn new(dim: usize, subspaces: Vec<SubspacePair>) -> Result<Self, ArrangementError> {
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(ArrangementError::OddDimension(dim));
        }
        if subspaces.is_empty() {
            return Err(ArrangementError::Empty);
        }
        if subspaces.len() > MAX_ELEMENTS {
            return Err(ArrangementError::TooManySubspaces(subspaces.len()));
        }
        for s in &subspaces {
            for f in s.forms() {
                if f.dim() != dim {
                    return Err(ArrangementError::WrongCoefficientCount {
                        name: s.name.clone(),
                        expected: dim,
                        got: f.dim(),
                    });
                }
                if f.is_zero() {
                    return Err(ArrangementError::ZeroForm(s.name.clone()));
                }
            }
        }
        Ok(Arrangement { dim, subspaces })
    }

    /// Parses and then rejects anything [`validate`] objects to.
    pub fn new_valid(dim: usize, subspaces: Vec<SubspacePair>) -> Result<Self, ArrangementError> {
        let arr = Arrangement::new(dim, subspaces)?;
        let report = validate(&arr);
        if report.is_admissible() {
            Ok(arr)
        } else {
            Err(ArrangementError::Validation(report))
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Complex dimension `d` of `R^{2d}`.
    pub fn complex_dim(&self) -> usize {
        self.dim / 2
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[SubspacePair] {
        &self.subspaces
    }

    pub fn subspace(&self, i: usize) -> &SubspacePair {
        &self.subspaces[i]
    }

    pub fn ground_set(&self) -> IndexSet {
        IndexSet::full(self.len())
    }

    pub fn names(&self) -> Vec<&str> {
        self.subspaces.iter().map(|s| s.name.as_str()).collect()
    }

    /// Resolves a label: a subspace name, or a one-based position.
    pub fn index_of(&self, label: &str) -> Result<usize, ArrangementError> {
        if let Some(i) = self.subspaces.iter().position(|s| s.name == label) {
            return Ok(i);
        }
        match label.parse::<usize>() {
            Ok(k) if (1..=self.len()).contains(&k) => Ok(k - 1),
            _ => Err(ArrangementError::UnknownLabel(label.to_string())),
        }
    }

    /// The forms of the members of `set`, first then second for each.
    pub fn forms_of(&self, set: IndexSet) -> Vec<Vector> {
        set.iter()
            .flat_map(|i| {
                let s = &self.subspaces[i];
                [s.first.0.clone(), s.second.0.clone()]
            })
            .collect()
    }

    pub fn forms_matrix(&self, set: IndexSet) -> Matrix {
        Matrix::from_rows(&self.forms_of(set), self.dim)
    }

    /// Real codimension of the intersection of the members of `set`.
    pub fn codim(&self, set: IndexSet) -> Result<usize, ArrangementError> {
        if set.bound() > self.len() {
            return Err(ArrangementError::UnknownLabel(set.to_string()));
        }
        Ok(self.codim_unchecked(set))
    }

    pub(crate) fn codim_unchecked(&self, set: IndexSet) -> usize {
        linalg::rank(&self.forms_matrix(set))
    }

    /// True when every pair is the (Re, Im) pair of a holomorphic form.
    pub fn is_complex(&self) -> bool {
        self.subspaces.iter().all(|s| s.complex_spec().is_some())
    }

    /// Member `perm[k]` of `self` becomes member `k` of the result.
    pub fn permuted(&self, perm: &[usize]) -> Arrangement {
        assert_eq!(perm.len(), self.len());
        Arrangement {
            dim: self.dim,
            subspaces: perm.iter().map(|&i| self.subspaces[i].clone()).collect(),
        }
    }

    pub fn with_subspace(&self, i: usize, pair: SubspacePair) -> Arrangement {
        let mut out = self.clone();
        out.subspaces[i] = pair;
        out
    }

    /// Image under the linear substitution `x -> m x` of the ambient space.
    pub fn transformed(&self, m: &Matrix) -> Arrangement {
        assert!(m.is_square() && m.rows() == self.dim);
        let pull = |f: &LinearForm| {
            LinearForm((0..self.dim).map(|c| linalg::dot(&f.0, &m.column(c))).collect())
        };
        Arrangement {
            dim: self.dim,
            subspaces: self
                .subspaces
                .iter()
                .map(|s| SubspacePair::new(s.name.clone(), pull(&s.first), pull(&s.second)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The two forms of one member do not span two dimensions.
    DegeneratePair { subspace: IndexSet, rank: usize },
    /// Two members are not transversal.
    NotTransversal { subset: IndexSet, rank: usize },
    /// An intersection has odd real codimension.
    OddRank { subset: IndexSet, rank: usize },
    /// The members do not intersect in the origin alone.
    NotEssential { rank: usize, dim: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DegeneratePair { subspace, rank } => {
                write!(f, "subspace {subspace} has form rank {rank}, expected 2")
            }
            Violation::NotTransversal { subset, rank } => {
                write!(f, "subset {subset} has rank {rank}, expected 4")
            }
            Violation::OddRank { subset, rank } => {
                write!(f, "subset {subset} has rank {rank} (odd)")
            }
            Violation::NotEssential { rank, dim } => {
                write!(f, "all forms have rank {rank}, expected {dim} (not essential)")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Lists every violated admissibility condition with a witnessing subset.
///
/// Evenness is checked on flats only: the forms of any subset span the same
/// space as the forms of its closure.
pub fn validate(arr: &Arrangement) -> ValidationReport {
    let mut violations = Vec::new();
    let n = arr.len();
    for i in 0..n {
        let rank = arr.subspace(i).rank();
        if rank != 2 {
            violations.push(Violation::DegeneratePair {
                subspace: IndexSet::singleton(i),
                rank,
            });
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let subset = IndexSet::singleton(a).with(b);
            let rank = arr.codim_unchecked(subset);
            if rank != 4 {
                violations.push(Violation::NotTransversal { subset, rank });
            }
        }
    }
    for (subset, rank) in matroid::closed_sets(arr) {
        if rank % 2 != 0 {
            violations.push(Violation::OddRank { subset, rank });
        }
    }
    let total = arr.codim_unchecked(arr.ground_set());
    if total != arr.dim() {
        violations.push(Violation::NotEssential {
            rank: total,
            dim: arr.dim(),
        });
    }
    ValidationReport { violations }
}

/// Restricts to member `at`: the other members intersected with it, written
/// in coordinates given by the kernel basis of its two forms.
pub fn restrict(arr: &Arrangement, at: usize) -> Result<Arrangement, ArrangementError> {
    if at >= arr.len() {
        return Err(ArrangementError::UnknownLabel((at + 1).to_string()));
    }
    let host = arr.subspace(at);
    let basis = linalg::kernel_basis(&arr.forms_matrix(IndexSet::singleton(at)));
    let pull = |f: &LinearForm| LinearForm(basis.iter().map(|v| f.eval(v)).collect());
    let mut subspaces = Vec::with_capacity(arr.len() - 1);
    for (j, s) in arr.subspaces().iter().enumerate() {
        if j == at {
            continue;
        }
        let pair = SubspacePair::new(s.name.clone(), pull(&s.first), pull(&s.second));
        if pair.first.is_zero() || pair.second.is_zero() || pair.rank() != 2 {
            return Err(ArrangementError::DegenerateRestriction {
                at: host.name.clone(),
                name: s.name.clone(),
            });
        }
        subspaces.push(pair);
    }
    if subspaces.is_empty() {
        return Err(ArrangementError::Empty);
    }
    Arrangement::new(basis.len(), subspaces)
}

/// `[[a, b], [c, d]]` as a recombination matrix.
pub fn mat2(a: i64, b: i64, c: i64, d: i64) -> [[Rational; 2]; 2] {
    use linalg::int;
    [[int(a), int(b)], [int(c), int(d)]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::int;

    fn c(re: i64, im: i64) -> Complex {
        (int(re), int(im))
    }

    fn spec(z: &[Complex], zbar: &[Complex]) -> ComplexFormSpec {
        ComplexFormSpec {
            z: z.to_vec(),
            zbar: zbar.to_vec(),
        }
    }

    #[test]
    fn complex_conversion() {
        let (f, g) = from_complex_form(&spec(&[c(1, 0)], &[]), 1).unwrap();
        assert_eq!((f, g), (LinearForm::from_i64(&[1, 0]), LinearForm::from_i64(&[0, 1])));

        let (f, g) = from_complex_form(&spec(&[], &[c(1, 0)]), 1).unwrap();
        assert_eq!((f, g), (LinearForm::from_i64(&[1, 0]), LinearForm::from_i64(&[0, -1])));

        // z2 - 2 conj(z1)
        let s = spec(&[c(0, 0), c(1, 0)], &[c(-2, 0), c(0, 0)]);
        let (f, g) = from_complex_form(&s, 2).unwrap();
        assert_eq!(f, LinearForm::from_i64(&[-2, 0, 1, 0]));
        assert_eq!(g, LinearForm::from_i64(&[0, 2, 0, 1]));

        assert!(matches!(
            from_complex_form(&spec(&[c(0, 0)], &[]), 1),
            Err(ArrangementError::ZeroForm(_))
        ));
    }

    #[test]
    fn complex_detection_roundtrip() {
        let s = spec(&[c(3, -1), c(0, 2)], &[]);
        let (f, g) = from_complex_form(&s, 2).unwrap();
        let pair = SubspacePair::new("H", f, g);
        let back = pair.complex_spec().unwrap();
        assert_eq!(back.z, s.z);
        assert!(pair.swapped().complex_spec().is_none());
    }

    #[test]
    fn fixture_shapes() {
        let b = fixtures::example_b();
        assert_eq!((b.len(), b.dim()), (4, 4));
        assert!(b.is_complex());
        let bp = fixtures::example_b_prime();
        assert_eq!(bp.subspace(3).first, LinearForm::from_i64(&[-2, 0, 1, 0]));
        assert_eq!(bp.subspace(3).second, LinearForm::from_i64(&[0, 2, 0, 1]));
        assert!(!bp.is_complex());
    }

    #[test]
    fn validate_cases() {
        assert!(validate(&fixtures::example_b_prime()).is_admissible());
        assert!(validate(&fixtures::example_b()).is_admissible());

        let single = Arrangement::new(
            2,
            vec![SubspacePair::new("H1", LinearForm::from_i64(&[1, 0]), LinearForm::from_i64(&[0, 1]))],
        )
        .unwrap();
        assert!(validate(&single).is_admissible());

        let odd = Arrangement::new(
            4,
            vec![
                SubspacePair::new("H1", LinearForm::from_i64(&[1, 0, 0, 0]), LinearForm::from_i64(&[0, 1, 0, 0])),
                SubspacePair::new("H2", LinearForm::from_i64(&[0, 0, 1, 0]), LinearForm::from_i64(&[0, 0, 0, 1])),
                SubspacePair::new("H3", LinearForm::from_i64(&[1, 0, 0, 0]), LinearForm::from_i64(&[0, 0, 1, 0])),
            ],
        )
        .unwrap();
        let report = validate(&odd);
        let w13: IndexSet = [0, 2].into_iter().collect();
        assert!(report
            .violations
            .contains(&Violation::OddRank { subset: w13, rank: 3 }));

        let flat = Arrangement::new(
            4,
            vec![
                SubspacePair::new("H1", LinearForm::from_i64(&[1, 0, 0, 0]), LinearForm::from_i64(&[0, 1, 0, 0])),
                SubspacePair::new("H2", LinearForm::from_i64(&[2, 0, 0, 0]), LinearForm::from_i64(&[0, 3, 0, 0])),
            ],
        )
        .unwrap();
        let report = validate(&flat);
        assert!(report
            .violations
            .contains(&Violation::NotEssential { rank: 2, dim: 4 }));
    }

    #[test]
    fn codim_cases() {
        let bp = fixtures::example_b_prime();
        assert_eq!(bp.codim(IndexSet::EMPTY).unwrap(), 0);
        assert_eq!(bp.codim(IndexSet::singleton(0)).unwrap(), 2);
        assert_eq!(bp.codim([0, 1, 2].into_iter().collect()).unwrap(), 4);
        assert!(matches!(
            bp.codim(IndexSet::singleton(7)),
            Err(ArrangementError::UnknownLabel(_))
        ));
    }

    #[test]
    fn restrict_generic_six_dim() {
        let bhat = fixtures::thm32_bhat();
        let r = restrict(&bhat, 2).unwrap();
        assert_eq!(r.dim(), 4);
        assert_eq!(r.names(), ["H1", "H2", "H4", "H5"]);
        // z1 - 2 conj(z2) in the remaining coordinates
        assert_eq!(r.subspace(3).first, LinearForm::from_i64(&[1, 0, -2, 0]));
        assert_eq!(r.subspace(3).second, LinearForm::from_i64(&[0, 1, 0, 2]));
        assert!(validate(&r).is_admissible());
        assert!(!r.is_complex());

        let complex = restrict(&fixtures::thm32_bhat_complex(), 2).unwrap();
        assert!(complex.is_complex());
        assert_eq!(complex.len(), 4);
    }

    #[test]
    fn restrict_two_members() {
        let arr = Arrangement::new(
            4,
            vec![
                SubspacePair::new("H1", LinearForm::from_i64(&[1, 0, 0, 0]), LinearForm::from_i64(&[0, 1, 0, 0])),
                SubspacePair::new("H2", LinearForm::from_i64(&[1, 0, 1, 0]), LinearForm::from_i64(&[0, 0, 0, 1])),
            ],
        )
        .unwrap();
        let r = restrict(&arr, 0).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.len(), 1);
        assert_eq!(r.subspace(0).first, LinearForm::from_i64(&[1, 0]));
        assert_eq!(r.subspace(0).second, LinearForm::from_i64(&[0, 1]));
        assert!(matches!(restrict(&arr, 5), Err(ArrangementError::UnknownLabel(_))));
    }

    #[test]
    fn degenerate_restriction() {
        // H2 contains H1's complement direction: restricting kills one form
        let arr = Arrangement::new(
            4,
            vec![
                SubspacePair::new("H1", LinearForm::from_i64(&[1, 0, 0, 0]), LinearForm::from_i64(&[0, 1, 0, 0])),
                SubspacePair::new("H2", LinearForm::from_i64(&[1, 0, 0, 0]), LinearForm::from_i64(&[0, 0, 1, 0])),
            ],
        )
        .unwrap();
        assert!(matches!(
            restrict(&arr, 0),
            Err(ArrangementError::DegenerateRestriction { .. })
        ));
    }

    #[test]
    fn label_lookup() {
        let b = fixtures::example_b();
        assert_eq!(b.index_of("H3").unwrap(), 2);
        assert_eq!(b.index_of("4").unwrap(), 3);
        assert!(b.index_of("H9").is_err());
    }
}
