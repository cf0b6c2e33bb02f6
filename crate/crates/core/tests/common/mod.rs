//! Strategies and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;

use num_traits::{One, Zero};
use twoarr::arrangement::mat2;
use twoarr::linalg::{self, int, rat};
use twoarr::{Arrangement, ComplexFormSpec, IndexSet, Matrix, Rational, SubspacePair};

pub fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c)
            .prop_map(move |v| Matrix::new(r, c, v.into_iter().map(int).collect()))
    })
}

pub fn square_i64(max_n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), n)
    })
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * cofactor_det(&minor)
        })
        .sum()
}

pub fn to_matrix(m: &[Vec<i64>]) -> Matrix {
    let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
    Matrix::from_i64_rows(&rows)
}

/// An invertible 2x2 integer matrix.
pub fn invertible2() -> impl Strategy<Value = [[Rational; 2]; 2]> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_filter("singular", |(a, b, c, d)| a * d - b * c != 0)
        .prop_map(|(a, b, c, d)| mat2(a, b, c, d))
}

pub fn det2(m: &[[Rational; 2]; 2]) -> Rational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

/// Complex coefficient drawn from `{0, +-1, +-i, 1+i, 2}`.
fn gaussian() -> impl Strategy<Value = (Rational, Rational)> {
    prop::sample::select(vec![
        (0, 0),
        (0, 0),
        (1, 0),
        (-1, 0),
        (0, 1),
        (0, -1),
        (1, 1),
        (2, 0),
    ])
    .prop_map(|(a, b)| (int(a), int(b)))
}

fn spec(d: usize, conjugate: bool) -> impl Strategy<Value = ComplexFormSpec> {
    let zeros = vec![(Rational::zero(), Rational::zero()); d];
    (
        prop::collection::vec(gaussian(), d),
        prop::collection::vec(gaussian(), d),
        prop::bool::weighted(if conjugate { 0.3 } else { 0.0 }),
    )
        .prop_map(move |(z, zbar, use_bar)| ComplexFormSpec {
            z,
            zbar: if use_bar { zbar } else { zeros.clone() },
        })
}

fn build(d: usize, specs: &[ComplexFormSpec]) -> Option<Arrangement> {
    let subspaces = specs
        .iter()
        .enumerate()
        .map(|(i, s)| SubspacePair::from_complex(format!("H{}", i + 1), s, d).ok())
        .collect::<Option<Vec<_>>>()?;
    let arr = Arrangement::new(2 * d, subspaces).ok()?;
    twoarr::validate(&arr).is_admissible().then_some(arr)
}

/// Admissible arrangements in `C^d` built from small complex and
/// conjugate-linear forms; with `conjugate = false` every member is complex.
pub fn arrangement(d: usize, sizes: std::ops::RangeInclusive<usize>, conjugate: bool) -> impl Strategy<Value = Arrangement> {
    sizes
        .prop_flat_map(move |n| prop::collection::vec(spec(d, conjugate), n))
        .prop_filter_map("inadmissible", move |specs| build(d, &specs))
}

/// Admissible arrangements in `R^4` or `R^6` with up to six members.
pub fn any_arrangement() -> impl Strategy<Value = Arrangement> {
    prop_oneof![arrangement(2, 2..=6, true), arrangement(3, 3..=6, true)]
}

/// Real pairs with independent integer entries; generic, so usually
/// admissible but rarely complex.
pub fn real_arrangement(d: usize, sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Arrangement> {
    sizes
        .prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(-3i64..=3, 4 * d), n))
        .prop_filter_map("inadmissible", move |raw| {
            let subspaces = raw
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    SubspacePair::new(
                        format!("H{}", i + 1),
                        twoarr::LinearForm::from_i64(&v[..2 * d]),
                        twoarr::LinearForm::from_i64(&v[2 * d..]),
                    )
                })
                .collect();
            let arr = Arrangement::new(2 * d, subspaces).ok()?;
            twoarr::validate(&arr).is_admissible().then_some(arr)
        })
}

/// `z1 = 0` and three lines `z2 = lambda z1` with distinct Gaussian
/// rational slopes.
pub fn complex_u24() -> impl Strategy<Value = Arrangement> {
    let slope = (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(a, b, q)| (rat(a, q), rat(b, q)));
    prop::collection::vec(slope, 3)
        .prop_filter("repeated slope", |v| v[0] != v[1] && v[0] != v[2] && v[1] != v[2])
        .prop_map(|slopes| {
            let zero = || (Rational::zero(), Rational::zero());
            let one = || (Rational::one(), Rational::zero());
            let mut specs = vec![ComplexFormSpec {
                z: vec![one(), zero()],
                zbar: vec![zero(), zero()],
            }];
            for (re, im) in slopes {
                specs.push(ComplexFormSpec {
                    z: vec![(-re, -im), one()],
                    zbar: vec![zero(), zero()],
                });
            }
            build(2, &specs).expect("distinct lines through the origin")
        })
}

pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=9).prop_map(|(a, b)| rat(a, b))
}

/// Matroid rank of every subset, computed directly from the forms.
pub fn rank_table(arr: &Arrangement) -> Vec<usize> {
    IndexSet::all_subsets(arr.len())
        .map(|s| {
            let forms = arr.forms_of(s);
            if forms.is_empty() {
                0
            } else {
                linalg::rank(&Matrix::from_rows(&forms, arr.dim())) / 2
            }
        })
        .collect()
}

pub struct Brute {
    pub n: usize,
    pub r: Vec<usize>,
}

impl Brute {
    pub fn new(arr: &Arrangement) -> Self {
        Brute {
            n: arr.len(),
            r: rank_table(arr),
        }
    }

    pub fn rank(&self, s: IndexSet) -> usize {
        self.r[s.bits() as usize]
    }

    pub fn subsets(&self) -> impl Iterator<Item = IndexSet> {
        IndexSet::all_subsets(self.n)
    }

    pub fn independent(&self, s: IndexSet) -> bool {
        self.rank(s) == s.len()
    }

    pub fn closure(&self, s: IndexSet) -> IndexSet {
        (0..self.n)
            .filter(|&i| self.rank(s.with(i)) == self.rank(s))
            .collect()
    }

    pub fn flats(&self) -> Vec<IndexSet> {
        let mut v: Vec<IndexSet> = self.subsets().filter(|&s| self.closure(s) == s).collect();
        v.sort();
        v
    }

    pub fn circuits(&self) -> Vec<IndexSet> {
        let mut v: Vec<IndexSet> = self
            .subsets()
            .filter(|&s| !self.independent(s) && s.facets().all(|f| self.independent(f)))
            .collect();
        v.sort();
        v
    }

    /// Independent sets containing no circuit minus its minimum.
    pub fn nbc(&self) -> Vec<IndexSet> {
        let broken: Vec<IndexSet> = self
            .circuits()
            .into_iter()
            .map(|c| c.without(c.min().unwrap()))
            .collect();
        let mut v: Vec<IndexSet> = self
            .subsets()
            .filter(|&s| self.independent(s) && !broken.iter().any(|b| b.is_subset(s)))
            .collect();
        v.sort();
        v
    }

    /// Unsigned coefficients of the characteristic polynomial from the
    /// subset expansion `sum_S (-1)^|S| t^(r - r(S))`.
    pub fn whitney(&self) -> Vec<usize> {
        let top = self.rank(IndexSet::full(self.n));
        let mut w = vec![0i64; top + 1];
        for s in self.subsets() {
            w[self.rank(s)] += if s.len() % 2 == 0 { 1 } else { -1 };
        }
        w.iter().map(|x| x.unsigned_abs() as usize).collect()
    }
}
