//! Toric ideals, initial ideals under a weight and the oriented g-vectors.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{GkzError, Result};
use crate::exact::{
    check_rank, independent_rows, kernel_basis, solve_exact, to_i64, IntMatrix, IntVector, Rat, RatVector,
};
use crate::groebner::{buchberger, is_binomial, saturate, GroebnerBasis};
use crate::poly::{Monomial, Poly, Ring, TermOrder, VarKind, WeightOrder};

/// The configuration `A` together with its lattice kernel.
#[derive(Clone, Debug)]
pub struct ConfigMatrix {
    a: IntMatrix,
    /// Row basis of `a`; `d` is its row count.
    reduced: IntMatrix,
    kernel: Vec<IntVector>,
    certificate: Option<RatVector>,
}

impl ConfigMatrix {
    /// Rows may be dependent; `d` is the rank.
    pub fn new(a: IntMatrix) -> Result<Self> {
        let reduced = independent_rows(&a);
        if reduced.rows() == 0 {
            return Err(GkzError::RankDeficient { expected: a.rows(), found: 0 });
        }
        let kernel = kernel_basis(&a)?;
        let ones = vec![Rat::from_integer(1.into()); a.cols()];
        let certificate = solve_exact(&reduced.transpose().to_rat(), &ones)?;
        Ok(ConfigMatrix { a, reduced, kernel, certificate })
    }

    /// As [`ConfigMatrix::new`], failing when the rank is below the declared `d`.
    pub fn with_rank(a: IntMatrix, d: usize) -> Result<Self> {
        check_rank(&a, d)?;
        Self::new(a)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(rows)?)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    /// Full-row-rank matrix with the same row space.
    pub fn reduced(&self) -> &IntMatrix {
        &self.reduced
    }

    /// `rank(A)`.
    pub fn d(&self) -> usize {
        self.reduced.rows()
    }

    /// Rows as given (one Euler operator each).
    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn kernel(&self) -> &[IntVector] {
        &self.kernel
    }

    pub fn kernel_i64(&self) -> Result<Vec<Vec<i64>>> {
        self.kernel.iter().map(|u| u.iter().map(to_i64).collect()).collect()
    }

    /// Row vector `c` with `c·aⱼ = 1` for all columns, if any.
    pub fn certificate(&self) -> Option<&RatVector> {
        self.certificate.as_ref()
    }

    pub fn check_homogeneous(&self) -> Result<()> {
        if self.certificate.is_some() {
            Ok(())
        } else {
            Err(GkzError::HomogeneityViolation)
        }
    }

    pub fn column_rat(&self, j: usize) -> RatVector {
        self.a.column(j).into_iter().map(Rat::from_integer).collect()
    }

    pub fn ring(&self) -> Ring {
        Ring::new(VarKind::D, self.n())
    }

    /// `A·u` for an integer vector.
    pub fn apply(&self, u: &[i64]) -> Vec<i64> {
        self.a.mul_i64(u).iter().map(|x| x.to_i64().expect("small entries")).collect()
    }
}

pub fn split(u: &[i64]) -> (Monomial, Monomial) {
    let plus = u.iter().map(|&x| x.max(0) as u32).collect();
    let minus = u.iter().map(|&x| (-x).max(0) as u32).collect();
    (Monomial(plus), Monomial(minus))
}

fn exponent_diff(p: &Monomial, q: &Monomial) -> Vec<i64> {
    p.0.iter().zip(&q.0).map(|(&a, &b)| a as i64 - b as i64).collect()
}

/// Reduced grevlex basis of `I_A`: the lattice-basis ideal saturated by `∂₁⋯∂ₙ`.
/// Homogeneity is not enforced here; see [`ConfigMatrix::check_homogeneous`].
pub fn toric_ideal(a: &ConfigMatrix) -> Result<GroebnerBasis> {
    let ring = a.ring();
    let kernel = a.kernel_i64()?;
    if kernel.is_empty() {
        return Ok(GroebnerBasis::zero(ring, TermOrder::Grevlex));
    }
    let gens: Vec<Poly> = kernel
        .iter()
        .map(|u| {
            let (p, m) = split(u);
            Poly::binomial(ring, p, m)
        })
        .collect();
    let sat = saturate(&gens, &Monomial(vec![1; a.n()]))?;
    let gb = buchberger(&sat, &TermOrder::Grevlex)?;
    debug_assert!(gb.generators.iter().all(is_binomial));
    Ok(gb)
}

/// `∂^{g₊} − ∂^{g₋}` with `w·g₊ > w·g₋`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedBinomial {
    pub g: Vec<i64>,
    pub plus: Monomial,
    pub minus: Monomial,
}

impl OrientedBinomial {
    pub fn from_vector(g: Vec<i64>) -> Self {
        let (plus, minus) = split(&g);
        OrientedBinomial { g, plus, minus }
    }

    pub fn to_poly(&self, ring: Ring) -> Poly {
        Poly::binomial(ring, self.plus.clone(), self.minus.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialIdeal {
    pub generators: Vec<Monomial>,
}

impl InitialIdeal {
    pub fn new(generators: Vec<Monomial>) -> Self {
        InitialIdeal { generators }
    }

    pub fn nvars(&self) -> usize {
        self.generators.first().map(Monomial::nvars).unwrap_or(0)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Generators pairwise non-dividing.
    pub fn is_minimal(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, g)| {
            self.generators.iter().enumerate().all(|(j, h)| i == j || !h.divides(g))
        })
    }

    pub fn minimalize(mut gens: Vec<Monomial>) -> Self {
        gens.sort();
        gens.dedup();
        let keep: Vec<Monomial> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        InitialIdeal { generators: keep }
    }
}

/// Everything derived from one weight vector.
#[derive(Clone, Debug)]
pub struct WeightData {
    /// The weight as given.
    pub weight: Vec<Rat>,
    /// The weight used for the order (nonnegative after a uniform shift).
    pub order: WeightOrder,
    pub gb: GroebnerBasis,
    pub initial: InitialIdeal,
    pub binomials: Vec<OrientedBinomial>,
}

impl WeightData {
    pub fn g_vectors(&self) -> Vec<Vec<i64>> {
        self.binomials.iter().map(|b| b.g.clone()).collect()
    }

    /// `w·u` in the integer-scaled weight (positive multiple of the given weight, up to the shift).
    pub fn weigh(&self, u: &[i64]) -> i128 {
        self.order.weight_of(u)
    }
}

/// Reduced basis under `w` refined by grevlex, oriented g-vectors, `in_w I_A`.
pub fn initial_ideal(a: &ConfigMatrix, toric: &GroebnerBasis, w: &[Rat]) -> Result<WeightData> {
    if w.len() != a.n() {
        return Err(GkzError::DimensionMismatch(format!("weight has length {}, expected {}", w.len(), a.n())));
    }
    let min = w.iter().min().cloned().unwrap_or_else(Rat::zero);
    let shifted: Vec<Rat> = if min.is_negative() {
        if a.certificate().is_none() {
            return Err(GkzError::InvalidWeight(
                "negative weight on a non-homogeneous configuration".into(),
            ));
        }
        // a uniform shift changes nothing on a standard-graded ideal
        w.iter().map(|x| x - &min).collect()
    } else {
        w.to_vec()
    };
    let order = WeightOrder::new(shifted)?;
    let term_order = TermOrder::Weight(order.clone());
    let gb = if toric.generators.is_empty() {
        GroebnerBasis::zero(a.ring(), term_order.clone())
    } else {
        buchberger(&toric.generators, &term_order)?
    };

    let mut binomials = Vec::with_capacity(gb.generators.len());
    for g in &gb.generators {
        if !is_binomial(g) {
            return Err(GkzError::NonGenericWeight(format!("non-binomial basis element {}", g)));
        }
        let lead = g.leading_monomial(&term_order).unwrap().clone();
        let other = g.terms().map(|(m, _)| m).find(|m| **m != lead).unwrap().clone();
        if order.weight(&lead) == order.weight(&other) {
            return Err(GkzError::NonGenericWeight(format!(
                "binomial {} has equal weight on both terms",
                g.render(&term_order)
            )));
        }
        binomials.push(OrientedBinomial { g: exponent_diff(&lead, &other), plus: lead, minus: other });
    }
    let initial = InitialIdeal::minimalize(binomials.iter().map(|b| b.plus.clone()).collect());
    Ok(WeightData { weight: w.to_vec(), order, gb, initial, binomials })
}
