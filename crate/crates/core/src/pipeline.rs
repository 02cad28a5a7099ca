//! End-to-end driver from `(A, w, β)` to verified logarithmic series.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;

use crate::apolar::{build_p, build_pb, dual_basis, DualSpace, HomIdeal};
use crate::error::{GkzError, Result};
use crate::exact::{Rat, RatVector};
use crate::exponents::{
    choose_basis, fake_exponents, lattice_window, max_abs_entry, neg_support_data, theorem_check, FakeExponent,
    NegSupportData, PerturbBasis,
};
use crate::groebner::GroebnerBasis;
use crate::logseries::{
    apply_operator, frobenius_solutions, in_log_subring, solution_rank, toric_residuals, FrobeniusResult, LogSeries,
    Operator,
};
use crate::pairs::{standard_pairs, triangulation, StandardPair, Triangulation};
use crate::poly::{Poly, Ring, VarKind};
use crate::toric::{initial_ideal, toric_ideal, ConfigMatrix, WeightData};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Truncation radius `R`; default `2·max|g|`.
    pub window: Option<i64>,
    /// Radius `R′ ≥ R` for counterexample search; default `3·max|g|`.
    pub check_window: Option<i64>,
    /// Default: total normalized volume.
    pub dual_cap: Option<u32>,
    /// Overrides the automatic choice of `B`.
    pub basis: Option<Vec<Vec<i64>>>,
}

/// Everything that depends on `A` and `w` only.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub a: ConfigMatrix,
    pub toric: GroebnerBasis,
    pub weight: WeightData,
    pub pairs: Vec<StandardPair>,
    pub triangulation: Triangulation,
}

impl Analysis {
    pub fn new(a: ConfigMatrix, w: &[Rat]) -> Result<Self> {
        let toric = toric_ideal(&a)?;
        let weight = initial_ideal(&a, &toric, w)?;
        let pairs = standard_pairs(&weight.initial, a.n());
        let triangulation = triangulation(&pairs);
        Ok(Analysis { a, toric, weight, pairs, triangulation })
    }

    pub fn g_vectors(&self) -> Vec<Vec<i64>> {
        self.weight.g_vectors()
    }

    pub fn radius(&self, options: &Options) -> (i64, i64) {
        let m = max_abs_entry(&self.g_vectors());
        let r = options.window.unwrap_or(2 * m);
        let r2 = options.check_window.unwrap_or(3 * m).max(r);
        (r, r2)
    }

    pub fn dual_cap(&self, options: &Options) -> u32 {
        options.dual_cap.unwrap_or_else(|| {
            self.triangulation
                .total_volume(&self.a)
                .ok()
                .and_then(|v| v.to_u32())
                .unwrap_or(self.a.n() as u32)
        })
    }

    pub fn basis(&self, options: &Options) -> Result<PerturbBasis> {
        match &options.basis {
            Some(b) => PerturbBasis::explicit(b.clone(), &self.a),
            None => choose_basis(&self.g_vectors(), &self.a, &self.weight.order),
        }
    }

    pub fn exponents(&self, beta: &[Rat]) -> Result<Vec<ExponentReport>> {
        Ok(fake_exponents(&self.a, beta, &self.pairs)?
            .into_iter()
            .map(|e| {
                let theorem = theorem_check(&e, &self.triangulation);
                ExponentReport { exponent: e, theorem }
            })
            .collect())
    }
}

#[derive(Clone, Debug)]
pub struct ExponentReport {
    pub exponent: FakeExponent,
    pub theorem: bool,
}

/// The Frobenius construction at one fake exponent.
#[derive(Clone, Debug)]
pub struct ExponentSolution {
    pub report: ExponentReport,
    pub basis: PerturbBasis,
    pub neg: NegSupportData,
    pub pb: HomIdeal,
    pub p: HomIdeal,
    /// `m(s)`; equal to 1 on the theorem path.
    pub multiplier: Poly,
    pub dual: DualSpace,
    pub frobenius: FrobeniusResult,
}

impl ExponentSolution {
    pub fn v(&self) -> &RatVector {
        &self.report.exponent.v
    }

    pub fn solutions(&self) -> &[LogSeries] {
        &self.frobenius.solutions
    }
}

pub fn solve_exponent(an: &Analysis, report: ExponentReport, options: &Options) -> Result<ExponentSolution> {
    let (r, r2) = an.radius(options);
    let basis = an.basis(options)?;
    let v = report.exponent.v.clone();
    let neg = neg_support_data(&v, &an.a, &an.g_vectors(), &an.weight.order, r, r2, report.theorem)?;
    let pb = build_pb(&basis, &neg.g_sets)?;
    let (p, multiplier) = if report.theorem {
        (pb.clone(), Poly::one(Ring::new(VarKind::S, basis.h())))
    } else {
        build_p(&neg.ns, &neg.nsc, &neg.k, &neg.i0, &basis)?
    };
    let dual = dual_basis(&p, an.dual_cap(options))?;
    let duals: Vec<_> = dual.operators().cloned().collect();
    let m: Vec<usize> = neg.i0.iter().copied().filter(|j| !neg.k.contains(j)).collect();
    let frobenius = frobenius_solutions(&v, &basis, &neg.l_prime, &duals, &m, report.theorem)?;
    Ok(ExponentSolution { report, basis, neg, pb, p, multiplier, dual, frobenius })
}

pub fn solve(an: &Analysis, beta: &[Rat], options: &Options) -> Result<Vec<ExponentSolution>> {
    solve_threaded(an, beta, options, 1)
}

/// As [`solve`], spreading exponents over `threads` workers; output order is unchanged.
pub fn solve_threaded(an: &Analysis, beta: &[Rat], options: &Options, threads: usize) -> Result<Vec<ExponentSolution>> {
    let reports = an.exponents(beta)?;
    if threads <= 1 || reports.len() <= 1 {
        return reports.into_iter().map(|r| solve_exponent(an, r, options)).collect();
    }
    let chunk = reports.len().div_ceil(threads);
    let parts: Vec<Vec<Result<ExponentSolution>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = reports
            .chunks(chunk)
            .map(|c| scope.spawn(move || c.iter().cloned().map(|r| solve_exponent(an, r, options)).collect()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    parts.into_iter().flatten().collect()
}

/// Per-exponent verifier outcome; every count is zero on success.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub v: RatVector,
    pub solutions: usize,
    pub dual_dim: usize,
    pub rank: usize,
    /// Nonzero terms left by any Euler operator.
    pub euler_residuals: usize,
    /// Window-interior positions where a toric operator leaves a nonzero coefficient.
    pub toric_residuals: usize,
    /// Interior positions examined, summed over solutions and operators.
    pub toric_checked: usize,
    pub log_free: bool,
    /// Log-polynomials not expressible in `L₁,…,L_h`.
    pub off_subring: usize,
    pub skipped: usize,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.euler_residuals == 0
            && self.toric_residuals == 0
            && self.log_free
            && self.off_subring == 0
            && self.solutions == self.dual_dim
            && self.rank == self.solutions
    }
}

pub fn verify_exponent(an: &Analysis, beta: &[Rat], sol: &ExponentSolution, options: &Options) -> Result<Verification> {
    // the degree-0 dual, when present, is 1 and comes first
    let has_one = sol.dual.by_degree.first().is_some_and(|d| !d.is_empty());
    let mut v = verify_series(an, beta, &sol.basis, sol.solutions(), has_one, options)?;
    v.dual_dim = sol.dual.total_dim();
    v.skipped = sol.frobenius.skipped.len();
    Ok(v)
}

/// Checks series that may come from elsewhere; `dual_dim` is set to the
/// number of series, and `first_is_q1` marks the first as the `q = 1` solution.
pub fn verify_series(
    an: &Analysis,
    beta: &[Rat],
    basis: &PerturbBasis,
    solutions: &[LogSeries],
    first_is_q1: bool,
    options: &Options,
) -> Result<Verification> {
    let (r, _) = an.radius(options);
    let window: BTreeSet<Vec<i64>> = lattice_window(&an.a, r).into_iter().collect();
    let eulers: Vec<Operator> = (0..an.a.rows()).map(|i| Operator::euler(&an.a, i, beta)).collect();
    let binomials: Vec<Vec<i64>> = an.toric.generators.iter().map(binomial_vector).collect();
    let interior: usize = binomials.iter().map(|g| interior_size(&window, g)).sum();
    let mut euler_residuals = 0;
    let mut toric = 0;
    let mut checked = 0;
    let mut off_subring = 0;
    for s in solutions {
        checked += interior;
        for op in &eulers {
            euler_residuals += apply_operator(op, s).terms.len();
        }
        for g in &binomials {
            toric += toric_residuals(s, g, &window).len();
        }
        for p in s.terms.values() {
            if in_log_subring(p, basis)?.is_none() {
                off_subring += 1;
            }
        }
    }
    let log_free = !first_is_q1 || solutions.first().is_none_or(LogSeries::is_log_free);
    Ok(Verification {
        v: solutions.first().map(|s| s.v.clone()).unwrap_or_default(),
        solutions: solutions.len(),
        dual_dim: solutions.len(),
        rank: solution_rank(solutions),
        euler_residuals,
        toric_residuals: toric,
        toric_checked: checked,
        log_free,
        off_subring,
        skipped: 0,
    })
}

/// Window points `u` with `u − g` also in the window.
fn interior_size(window: &BTreeSet<Vec<i64>>, g: &[i64]) -> usize {
    window
        .iter()
        .filter(|u| window.contains(&u.iter().zip(g).map(|(a, b)| a - b).collect::<Vec<_>>()))
        .count()
}

/// Exponent vector `g₊ − g₋` of a binomial.
pub fn binomial_vector(p: &Poly) -> Vec<i64> {
    let mut it = p.terms();
    let (m1, c1) = it.next().expect("binomial");
    let (m2, _) = it.next().expect("binomial");
    let sign = if c1 > &Rat::from_integer(0.into()) { 1 } else { -1 };
    m1.0.iter().zip(&m2.0).map(|(&a, &b)| sign * (a as i64 - b as i64)).collect()
}

pub fn verify(an: &Analysis, beta: &[Rat], sols: &[ExponentSolution], options: &Options) -> Result<Vec<Verification>> {
    sols.iter().map(|s| verify_exponent(an, beta, s, options)).collect()
}

/// Checks the inputs of a problem before any algebra runs.
pub fn check_dimensions(a: &ConfigMatrix, w: &[Rat], beta: &[Rat]) -> Result<()> {
    if w.len() != a.n() {
        return Err(GkzError::DimensionMismatch(format!("w has length {}, A has {} columns", w.len(), a.n())));
    }
    if beta.len() != a.rows() {
        return Err(GkzError::DimensionMismatch(format!("beta has length {}, A has {} rows", beta.len(), a.rows())));
    }
    Ok(())
}
