//! Invariants that can tell apart arrangements sharing an intersection
//! lattice: the multiplication pairing on the degree-two relations, and the
//! linking signs of the great circles cut out on `S^3`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::exterior::{degree_span_rank, monomials, ExtElement, Monomial};
use crate::linalg::{self, Matrix, Rational, Sign};
use crate::matroid::{self, MatroidError, PERMUTATION_SEARCH_LIMIT};
use crate::presentation::{full_presentation, Mode, PresentationError};
use crate::set::IndexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("linking data needs an arrangement in R^4, got R^{0}")]
    DimensionNot4(usize),
    #[error("arrangements have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// The pairing `I^2 x I^2 -> Lambda^4` given by multiplication, on an
/// echelon basis of the degree-two relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaForm {
    pub n: usize,
    pub basis: Vec<ExtElement>,
    /// `gram[i][j] = basis[i] ^ basis[j]`.
    pub gram: Vec<Vec<ExtElement>>,
}

impl KappaForm {
    /// Degree-four monomials indexing the coefficient vectors of the entries.
    pub fn top_monomials(&self) -> Vec<Monomial> {
        monomials(self.n, 4)
    }

    /// Entry `(i, j)` as coefficients over [`KappaForm::top_monomials`].
    pub fn entry(&self, i: usize, j: usize) -> Vec<BigInt> {
        self.top_monomials()
            .into_iter()
            .map(|m| self.gram[i][j].coefficient(m))
            .collect()
    }

    /// The scalar matrix when `Lambda^4` has rank one (`n = 4`).
    pub fn scalar_gram(&self) -> Option<Vec<Vec<BigInt>>> {
        (self.n == 4).then(|| {
            let top = Monomial::from_set(IndexSet::full(4));
            self.gram
                .iter()
                .map(|row| row.iter().map(|e| e.coefficient(top)).collect())
                .collect()
        })
    }

    /// True for `n != 4`, where the pairing takes values in a free module of
    /// rank `C(n, 4)` instead of the integers.
    pub fn is_extension(&self) -> bool {
        self.n != 4
    }

    pub fn basis_size(&self) -> usize {
        self.basis.len()
    }
}

pub fn kappa(arr: &Arrangement) -> Result<KappaForm, PresentationError> {
    let pres = full_presentation(arr, Mode::Real)?;
    let n = arr.len();
    let basis = degree_span_rank(&pres.elements(), 2, n).basis;
    Ok(kappa_from_basis(n, basis))
}

/// Gram data of the multiplication pairing on an arbitrary list of degree-two
/// elements.
pub fn kappa_from_basis(n: usize, basis: Vec<ExtElement>) -> KappaForm {
    let gram = basis
        .iter()
        .map(|a| basis.iter().map(|b| a.wedge(b)).collect())
        .collect();
    KappaForm { n, basis, gram }
}

/// Rank of the pairing viewed as a map `I^2 -> Hom(I^2, Lambda^4)`: the
/// rational rank of the matrix with one row per basis element and one column
/// per (basis element, degree-four monomial).
pub fn kappa_rank(k: &KappaForm) -> usize {
    let top = k.top_monomials();
    let size = k.basis.len();
    if size == 0 || top.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = (0..size)
        .map(|i| {
            (0..size)
                .flat_map(|j| k.gram[i][j].coordinates(&top))
                .collect()
        })
        .collect();
    linalg::rank(&Matrix::from_rows(&rows, size * top.len()))
}

/// Pairwise linking signs and triple coefficients of a four-dimensional
/// arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingData {
    /// Symmetric; the diagonal holds [`Sign::Zero`].
    pub pairwise: Vec<Vec<Sign>>,
    pub triples: BTreeMap<IndexSet, Sign>,
}

impl LinkingData {
    /// Triple coefficients sorted, minus signs first.
    pub fn triple_multiset(&self) -> Vec<Sign> {
        let mut v: Vec<Sign> = self.triples.values().copied().collect();
        v.sort();
        v
    }
}

fn require_dim4(arr: &Arrangement) -> Result<(), InvariantsError> {
    if arr.dim() == 4 {
        Ok(())
    } else {
        Err(InvariantsError::DimensionNot4(arr.dim()))
    }
}

/// Sign of `det(l_a, l'_a, l_b, l'_b)` in the ambient orientation
/// `(x1, y1, x2, y2)`.
pub fn linking_sign(arr: &Arrangement, a: usize, b: usize) -> Result<Sign, InvariantsError> {
    require_dim4(arr)?;
    let (sa, sb) = (arr.subspace(a), arr.subspace(b));
    let rows = [
        sa.first.coefficients().to_vec(),
        sa.second.coefficients().to_vec(),
        sb.first.coefficients().to_vec(),
        sb.second.coefficients().to_vec(),
    ];
    Ok(linalg::det_sign(&Matrix::from_rows(&rows, 4)).expect("square"))
}

pub fn pairwise_linking(arr: &Arrangement) -> Result<Vec<Vec<Sign>>, InvariantsError> {
    require_dim4(arr)?;
    let n = arr.len();
    let mut out = vec![vec![Sign::Zero; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let s = linking_sign(arr, a, b)?;
            out[a][b] = s;
            out[b][a] = s;
        }
    }
    Ok(out)
}

/// Product of the three pairwise signs, for every three-element subset.
pub fn triple_coefficients(arr: &Arrangement) -> Result<BTreeMap<IndexSet, Sign>, InvariantsError> {
    let pw = pairwise_linking(arr)?;
    Ok(triples_from_pairwise(&pw))
}

fn triples_from_pairwise(pw: &[Vec<Sign>]) -> BTreeMap<IndexSet, Sign> {
    let n = pw.len();
    let mut out = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let set: IndexSet = [a, b, c].into_iter().collect();
                out.insert(set, pw[a][b] * pw[a][c] * pw[b][c]);
            }
        }
    }
    out
}

pub fn linking_data(arr: &Arrangement) -> Result<LinkingData, InvariantsError> {
    let pairwise = pairwise_linking(arr)?;
    let triples = triples_from_pairwise(&pairwise);
    Ok(LinkingData { pairwise, triples })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Some invariant differs.
    Distinguished,
    /// Every computed invariant agrees. This never asserts equivalence.
    OtherwiseUnresolved,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinguished => write!(f, "DISTINGUISHED"),
            Verdict::OtherwiseUnresolved => write!(f, "OTHERWISE_UNRESOLVED"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompareOptions {
    /// Search label permutations (`n <= 8`) for a matroid isomorphism.
    pub permutation_search: bool,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            permutation_search: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub labeled_matroid_equal: bool,
    /// `None` when the permutation search was skipped.
    pub matroid_isomorphic: Option<bool>,
    pub betti: [Vec<usize>; 2],
    pub ideal_ranks: [Vec<usize>; 2],
    pub kappa_ranks: [usize; 2],
    pub kappa_extension: bool,
    /// Sorted triple coefficients, four-dimensional inputs only.
    #[serde(serialize_with = "serialize_triples")]
    pub triple_multisets: Option<[Vec<Sign>; 2]>,
    /// Names of the invariants that differ.
    pub differing: Vec<String>,
    pub verdict: Verdict,
}

fn serialize_triples<S: serde::Serializer>(
    v: &Option<[Vec<Sign>; 2]>,
    s: S,
) -> Result<S::Ok, S::Error> {
    let as_ints = v.as_ref().map(|pair| {
        pair.iter()
            .map(|m| m.iter().map(|x| x.to_i32()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    });
    serde::Serialize::serialize(&as_ints, s)
}

/// Triple multisets agree up to reversing the ambient orientation, which
/// negates every triple coefficient at once.
fn triples_match(a: &[Sign], b: &[Sign]) -> bool {
    if a == b {
        return true;
    }
    let mut flipped: Vec<Sign> = b.iter().map(|&s| -s).collect();
    flipped.sort();
    a == flipped.as_slice()
}

pub fn compare(
    a: &Arrangement,
    b: &Arrangement,
    options: CompareOptions,
) -> Result<ComparisonReport, InvariantsError> {
    if a.len() != b.len() {
        return Err(InvariantsError::SizeMismatch(a.len(), b.len()));
    }
    let n = a.len();
    let mut differing = Vec::new();

    let labeled_matroid_equal = matroid::same_labeled_matroid(a, b)?;
    let matroid_isomorphic = if options.permutation_search && n <= PERMUTATION_SEARCH_LIMIT {
        let iso = matroid::matroid_isomorphism(a, b)?.is_some();
        if !iso {
            differing.push("matroid".to_string());
        }
        Some(iso)
    } else {
        None
    };

    let betti = [matroid::betti_vector(a), matroid::betti_vector(b)];
    if betti[0] != betti[1] {
        differing.push("betti".to_string());
    }

    let pa = full_presentation(a, Mode::Real)?;
    let pb = full_presentation(b, Mode::Real)?;
    let ideal_ranks = [pa.ideal_rank_profile(), pb.ideal_rank_profile()];
    if ideal_ranks[0] != ideal_ranks[1] {
        differing.push("ideal_ranks".to_string());
    }

    let ka = kappa(a)?;
    let kb = kappa(b)?;
    let kappa_ranks = [kappa_rank(&ka), kappa_rank(&kb)];
    if kappa_ranks[0] != kappa_ranks[1] {
        differing.push("kappa_rank".to_string());
    }

    let triple_multisets = if a.dim() == 4 && b.dim() == 4 {
        let ta = linking_data(a)?.triple_multiset();
        let tb = linking_data(b)?.triple_multiset();
        if !triples_match(&ta, &tb) {
            differing.push("triple_coefficients".to_string());
        }
        Some([ta, tb])
    } else {
        None
    };

    let verdict = if differing.is_empty() {
        Verdict::OtherwiseUnresolved
    } else {
        Verdict::Distinguished
    };
    Ok(ComparisonReport {
        labeled_matroid_equal,
        matroid_isomorphic,
        betti,
        ideal_ranks,
        kappa_ranks,
        kappa_extension: n != 4,
        triple_multisets,
        differing,
        verdict,
    })
}
