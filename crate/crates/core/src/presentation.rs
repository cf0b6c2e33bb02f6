//! Signed presentation of the integral cohomology ring of the complement.
//!
//! The ring is the exterior algebra on one degree-one generator per member,
//! modulo one relation per circuit `A = {a0 < a1 < .. < ak}`. Writing the
//! forms of `a0` in terms of the forms of the other members,
//!
//! ```text
//! l_{a0}  = sum_{j>=1} alpha_j l_{aj} + beta_j  l'_{aj}
//! l'_{a0} = sum_{j>=1} gamma_j l_{aj} + delta_j l'_{aj}
//! ```
//!
//! the relation is `sum_j (-1)^j sigma_j e_{A - aj}`, where `sigma_j` is the
//! sign of `alpha_j delta_j - beta_j gamma_j` and the `j = 0` block is fixed
//! to `[[-1, 0], [0, -1]]` (so `sigma_0 = +1`). For pairs that are real and
//! imaginary parts of complex forms every `sigma_j` is `+1` and the relation
//! is the usual alternating sum.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::exterior::{self, degree_span_rank, ExtElement, Monomial};
use crate::linalg::{self, LinalgError, Matrix, Rational, Sign};
use crate::matroid::{self, Circuit, RankOracle};
use crate::set::IndexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("{0} is not a circuit of the arrangement")]
    NotACircuit(IndexSet),
    #[error("complex mode needs every pair to be the real and imaginary part of a complex form")]
    ModeMismatch,
    #[error("circuit {circuit}: member {member} has a singular coefficient block")]
    SingularBlock { circuit: IndexSet, member: usize },
    #[error("circuit {circuit}: {source}")]
    Solve {
        circuit: IndexSet,
        source: LinalgError,
    },
}

/// Coefficients of member `a_j` in the two dependencies of a circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCoefficients {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl BlockCoefficients {
    fn normalization() -> Self {
        let m1 = -Rational::one();
        BlockCoefficients {
            alpha: m1.clone(),
            beta: Rational::zero(),
            gamma: Rational::zero(),
            delta: m1,
        }
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::new(
            2,
            2,
            vec![
                self.alpha.clone(),
                self.beta.clone(),
                self.gamma.clone(),
                self.delta.clone(),
            ],
        )
    }

    pub fn determinant(&self) -> Rational {
        &self.alpha * &self.delta - &self.beta * &self.gamma
    }

    pub fn sign(&self) -> Sign {
        linalg::det_sign(&self.matrix()).expect("2x2 block")
    }
}

/// The two normalized linear dependencies among the forms of a circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyPair {
    pub circuit: Circuit,
    /// One block per member, in increasing member order; block 0 is the
    /// fixed normalization.
    pub blocks: Vec<BlockCoefficients>,
}

impl DependencyPair {
    /// `sum_j alpha_j l_{aj} + beta_j l'_{aj}` and the `gamma/delta` analogue.
    /// Both are zero for a correct pair.
    pub fn residuals(&self, arr: &Arrangement) -> (Vec<Rational>, Vec<Rational>) {
        let dim = arr.dim();
        let mut first = vec![Rational::zero(); dim];
        let mut second = vec![Rational::zero(); dim];
        for (member, b) in self.circuit.elements().into_iter().zip(&self.blocks) {
            let s = arr.subspace(member);
            let (l, lp) = (s.first.coefficients(), s.second.coefficients());
            for c in 0..dim {
                first[c] += &b.alpha * &l[c] + &b.beta * &lp[c];
                second[c] += &b.gamma * &l[c] + &b.delta * &lp[c];
            }
        }
        (first, second)
    }
}

fn check_circuit(arr: &Arrangement, c: Circuit) -> Result<(), PresentationError> {
    let oracle = RankOracle::new(arr);
    let set = c.set();
    let is_circuit = set.len() >= 2
        && set.bound() <= arr.len()
        && oracle.rank(set) + 1 == set.len()
        && set.facets().all(|f| oracle.is_independent(f));
    if is_circuit {
        Ok(())
    } else {
        Err(PresentationError::NotACircuit(set))
    }
}

pub fn circuit_dependencies(
    arr: &Arrangement,
    c: Circuit,
) -> Result<DependencyPair, PresentationError> {
    check_circuit(arr, c)?;
    let members = c.elements();
    let rest: IndexSet = members[1..].iter().copied().collect();
    let basis = Matrix::from_columns(&arr.forms_of(rest), arr.dim());
    let head = arr.subspace(members[0]);
    let solve = |rhs: &[Rational]| {
        linalg::solve_unique(&basis, rhs).map_err(|source| PresentationError::Solve {
            circuit: c.set(),
            source,
        })
    };
    let x = solve(head.first.coefficients())?;
    let y = solve(head.second.coefficients())?;
    let mut blocks = vec![BlockCoefficients::normalization()];
    for j in 0..members.len() - 1 {
        blocks.push(BlockCoefficients {
            alpha: x[2 * j].clone(),
            beta: x[2 * j + 1].clone(),
            gamma: y[2 * j].clone(),
            delta: y[2 * j + 1].clone(),
        });
    }
    for (j, b) in blocks.iter().enumerate() {
        if b.determinant().is_zero() {
            return Err(PresentationError::SingularBlock {
                circuit: c.set(),
                member: members[j],
            });
        }
    }
    Ok(DependencyPair { circuit: c, blocks })
}

/// The relation contributed by one circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircuitRelation {
    pub circuit: Circuit,
    #[serde(serialize_with = "serialize_signs")]
    pub signs: Vec<Sign>,
    #[serde(serialize_with = "serialize_display")]
    pub element: ExtElement,
}

fn serialize_signs<S: serde::Serializer>(signs: &[Sign], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(signs.iter().map(|x| x.to_i32()))
}

fn serialize_display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl CircuitRelation {
    /// `sum_j (-1)^j signs[j] e_{A - aj}`.
    pub fn from_signs(circuit: Circuit, signs: Vec<Sign>) -> Self {
        let set = circuit.set();
        let mut element = ExtElement::zero();
        for (j, (member, sign)) in set.iter().zip(&signs).enumerate() {
            let alt = if j % 2 == 0 { 1 } else { -1 };
            element.add_term(
                Monomial::from_set(set.without(member)),
                BigInt::from(alt * sign.to_i32()),
            );
        }
        CircuitRelation {
            circuit,
            signs,
            element,
        }
    }

    /// Same relation with the overall sign making its first coefficient
    /// positive.
    pub fn normalized(&self) -> CircuitRelation {
        CircuitRelation {
            circuit: self.circuit,
            signs: self.signs.clone(),
            element: self.element.sign_normalized(),
        }
    }
}

pub fn circuit_relation(arr: &Arrangement, c: Circuit) -> Result<CircuitRelation, PresentationError> {
    let deps = circuit_dependencies(arr, c)?;
    let signs = deps.blocks.iter().map(BlockCoefficients::sign).collect();
    Ok(CircuitRelation::from_signs(c, signs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Signs from the coefficient determinants of each circuit.
    Real,
    /// All signs `+1`; only for pairs coming from complex forms.
    Complex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub n: usize,
    pub mode: Mode,
    pub relations: Vec<CircuitRelation>,
}

impl Presentation {
    pub fn elements(&self) -> Vec<ExtElement> {
        self.relations.iter().map(|r| r.element.clone()).collect()
    }

    pub fn ideal_rank(&self, degree: usize) -> usize {
        ideal_rank(self, degree)
    }

    /// Ideal ranks in degrees `1 ..= n`.
    pub fn ideal_rank_profile(&self) -> Vec<usize> {
        (1..=self.n).map(|p| self.ideal_rank(p)).collect()
    }

    /// Whether relation `idx` lies in the ideal generated by the others.
    pub fn is_consequence_of_others(&self, idx: usize) -> bool {
        let target = &self.relations[idx].element;
        let Some(p) = target.degree() else {
            return true;
        };
        let others: Vec<ExtElement> = self
            .relations
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != idx)
            .map(|(_, r)| r.element.clone())
            .collect();
        let without = degree_span_rank(&others, p, self.n).rank;
        let mut with = others;
        with.push(target.clone());
        degree_span_rank(&with, p, self.n).rank == without
    }

    pub fn normalized(&self) -> Presentation {
        Presentation {
            n: self.n,
            mode: self.mode,
            relations: self.relations.iter().map(CircuitRelation::normalized).collect(),
        }
    }
}

pub fn full_presentation(arr: &Arrangement, mode: Mode) -> Result<Presentation, PresentationError> {
    let circuits = matroid::circuits(arr);
    let relations = match mode {
        Mode::Complex => {
            if !arr.is_complex() {
                return Err(PresentationError::ModeMismatch);
            }
            circuits
                .into_iter()
                .map(|c| CircuitRelation::from_signs(c, vec![Sign::Plus; c.len()]))
                .collect()
        }
        Mode::Real => circuits
            .into_iter()
            .map(|c| circuit_relation(arr, c))
            .collect::<Result<_, _>>()?,
    };
    Ok(Presentation {
        n: arr.len(),
        mode,
        relations,
    })
}

/// Rank of the degree-`degree` part of the relation ideal.
pub fn ideal_rank(p: &Presentation, degree: usize) -> usize {
    degree_span_rank(&p.elements(), degree, p.n).rank
}

/// `rank I^p + #NBC_p = C(n, p)` in every degree.
pub fn nbc_basis_check(arr: &Arrangement) -> Result<bool, PresentationError> {
    let pres = full_presentation(arr, Mode::Real)?;
    let nbc = matroid::nbc_sets(arr);
    let n = arr.len();
    Ok((0..=n).all(|p| ideal_rank(&pres, p) + nbc.count(p) == exterior::binomial(n, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{int, rat};

    fn circuit(labels: &[usize]) -> Circuit {
        Circuit::new(labels.iter().map(|l| l - 1).collect())
    }

    fn block(a: Rational, b: Rational, c: Rational, d: Rational) -> BlockCoefficients {
        BlockCoefficients {
            alpha: a,
            beta: b,
            gamma: c,
            delta: d,
        }
    }

    #[test]
    fn dependencies_conjugate_circuit() {
        let arr = fixtures::example_b_prime();
        let deps = circuit_dependencies(&arr, circuit(&[1, 2, 4])).unwrap();
        assert_eq!(deps.blocks[0], BlockCoefficients::normalization());
        assert_eq!(deps.blocks[1], block(rat(1, 2), int(0), int(0), rat(-1, 2)));
        assert_eq!(deps.blocks[2], block(rat(-1, 2), int(0), int(0), rat(1, 2)));
        let (r1, r2) = deps.residuals(&arr);
        assert!(r1.iter().chain(&r2).all(Zero::is_zero));
    }

    #[test]
    fn dependencies_complex_circuit() {
        let arr = fixtures::example_b();
        let deps = circuit_dependencies(&arr, circuit(&[1, 2, 3])).unwrap();
        assert_eq!(deps.blocks[1], block(int(1), int(0), int(0), int(1)));
        assert_eq!(deps.blocks[2], block(int(-1), int(0), int(0), int(-1)));
        for c in matroid::circuits(&arr) {
            let deps = circuit_dependencies(&arr, c).unwrap();
            for b in &deps.blocks {
                assert_eq!(b.gamma, -b.beta.clone());
                assert_eq!(b.delta, b.alpha);
            }
        }
    }

    #[test]
    fn relation_signs() {
        let b = fixtures::example_b();
        let r = circuit_relation(&b, circuit(&[1, 2, 3])).unwrap();
        assert_eq!(r.element.to_string(), "+e12 -e13 +e23");
        assert_eq!(r.signs, vec![Sign::Plus; 3]);

        let bp = fixtures::example_b_prime();
        let r = circuit_relation(&bp, circuit(&[1, 2, 4])).unwrap();
        assert_eq!(r.signs, vec![Sign::Plus, Sign::Minus, Sign::Minus]);
        assert_eq!(r.element.to_string(), "-e12 +e14 +e24");
        assert_eq!(r.normalized().element.to_string(), "+e12 -e14 -e24");
    }

    #[test]
    fn not_a_circuit() {
        let b = fixtures::example_b();
        for bad in [&[1, 2][..], &[1, 2, 3, 4], &[1]] {
            assert!(matches!(
                circuit_dependencies(&b, circuit(bad)),
                Err(PresentationError::NotACircuit(_))
            ));
        }
    }

    #[test]
    fn complex_mode_display() {
        let p = full_presentation(&fixtures::example_b(), Mode::Complex).unwrap();
        let shown: Vec<String> = p.relations.iter().map(|r| r.element.to_string()).collect();
        assert_eq!(
            shown,
            [
                "+e12 -e13 +e23",
                "+e12 -e14 +e24",
                "+e13 -e14 +e34",
                "+e23 -e24 +e34"
            ]
        );
        assert!(p.is_consequence_of_others(3));
        assert_eq!(
            full_presentation(&fixtures::example_b_prime(), Mode::Complex),
            Err(PresentationError::ModeMismatch)
        );
    }

    #[test]
    fn ideal_ranks() {
        for arr in [fixtures::example_b(), fixtures::example_b_prime()] {
            let p = full_presentation(&arr, Mode::Real).unwrap();
            assert_eq!(p.relations.len(), 4);
            assert_eq!(p.ideal_rank_profile(), vec![0, 3, 4, 1]);
            assert!(nbc_basis_check(&arr).unwrap());
        }
    }

    #[test]
    fn circuit_free_arrangement() {
        let arr = crate::arrangement::parse_arrangement(
            r#"{"dim": 4, "subspaces": [
                {"name": "H1", "forms": [["1","0","0","0"],["0","1","0","0"]]},
                {"name": "H2", "forms": [["0","0","1","0"],["0","0","0","1"]]}]}"#,
        )
        .unwrap();
        let p = full_presentation(&arr, Mode::Real).unwrap();
        assert!(p.relations.is_empty());
        assert_eq!(p.ideal_rank_profile(), vec![0, 0]);
        assert!(nbc_basis_check(&arr).unwrap());
    }
}
