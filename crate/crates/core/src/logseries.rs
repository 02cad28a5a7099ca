//! Perturbed series coefficients and the logarithmic solutions obtained from them.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::apolar::DualOperator;
use crate::error::{GkzError, Result};
use crate::exact::{factorial, fmt_rat, solve_exact, Matrix, Rat, RatMatrix, RatVector};
use crate::exponents::PerturbBasis;
use crate::poly::{LinearFormPlusConst, Monomial, Poly, Ring, TermOrder, VarKind};
use crate::toric::ConfigMatrix;

/// `scalar · ∏ num / ∏ den` with linear-form factors in `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredCoeff {
    pub h: usize,
    pub scalar: Rat,
    pub num: Vec<LinearFormPlusConst>,
    pub den: Vec<LinearFormPlusConst>,
}

impl FactoredCoeff {
    pub fn one(h: usize) -> Self {
        FactoredCoeff { h, scalar: Rat::one(), num: Vec::new(), den: Vec::new() }
    }

    /// Cancels proportional zero-constant factors; fails if one is left below.
    pub fn new(h: usize, num: Vec<LinearFormPlusConst>, den: Vec<LinearFormPlusConst>, at: &[i64]) -> Result<Self> {
        let mut scalar = Rat::one();
        let mut top = Vec::with_capacity(num.len());
        for f in num {
            if f.is_identically_zero() {
                scalar = Rat::zero();
            }
            top.push(f);
        }
        let mut bottom = Vec::with_capacity(den.len());
        for f in den {
            if f.is_identically_zero() {
                return Err(GkzError::PoleAtOrigin(at.to_vec()));
            }
            if !f.constant.is_zero() {
                bottom.push(f);
                continue;
            }
            let (lb, fb) = f.canonical();
            let hit = top.iter().position(|g| g.constant.is_zero() && !g.linear_is_zero() && g.canonical().1 == fb);
            match hit {
                Some(i) => {
                    let (lt, _) = top.remove(i).canonical();
                    scalar = scalar * lt / lb;
                }
                None => return Err(GkzError::PoleAtOrigin(at.to_vec())),
            }
        }
        Ok(FactoredCoeff { h, scalar, num: top, den: bottom })
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// Value at `s = 0`.
    pub fn at_origin(&self) -> Rat {
        let n = self.num.iter().fold(self.scalar.clone(), |acc, f| acc * &f.constant);
        self.den.iter().fold(n, |acc, f| acc / &f.constant)
    }

    pub fn ring(&self) -> Ring {
        Ring::new(VarKind::S, self.h)
    }

    pub fn numerator(&self) -> Poly {
        let ring = self.ring();
        self.num.iter().fold(Poly::constant(ring, self.scalar.clone()), |acc, f| acc.mul(&f.to_poly(ring)))
    }

    pub fn denominator(&self) -> Poly {
        let ring = self.ring();
        self.den.iter().fold(Poly::one(ring), |acc, f| acc.mul(&f.to_poly(ring)))
    }
}

/// `a_u(s) = [v+Bs]_{u₋} / [v+Bs+u]_{u₊}`.
pub fn coeff(v: &[Rat], b: &PerturbBasis, u: &[i64]) -> Result<FactoredCoeff> {
    coeff_times(v, b, u, &[])
}

/// `(Bs)^M · a_u(s)`, cancelled as one quotient.
pub fn coeff_times(v: &[Rat], b: &PerturbBasis, u: &[i64], m: &[usize]) -> Result<FactoredCoeff> {
    let bs = b.bs();
    let mut num: Vec<LinearFormPlusConst> = m.iter().map(|&j| bs[j].clone()).collect();
    let mut den = Vec::new();
    for (j, &uj) in u.iter().enumerate() {
        let lin = &bs[j].linear;
        if uj < 0 {
            for t in 0..-uj {
                num.push(LinearFormPlusConst::new(lin.clone(), &v[j] - Rat::from_integer(t.into())));
            }
        } else {
            for t in 0..uj {
                den.push(LinearFormPlusConst::new(lin.clone(), &v[j] + Rat::from_integer((uj - t).into())));
            }
        }
    }
    FactoredCoeff::new(b.h(), num, den, u)
}

/// Taylor polynomial to total degree `deg`.
pub fn taylor(c: &FactoredCoeff, deg: u32) -> Poly {
    let ring = c.ring();
    let mut out = Poly::constant(ring, c.scalar.clone());
    if c.is_zero() {
        return out;
    }
    for f in &c.num {
        out = out.mul_truncated(&f.to_poly(ring), deg);
    }
    for f in &c.den {
        // 1/(c₀ + ℓ) = c₀⁻¹ Σ (−ℓ/c₀)^k
        let inv = f.constant.recip();
        let step = Poly::linear(ring, &f.linear, &Rat::zero()).scale(&-&inv);
        let mut series = Poly::one(ring);
        let mut power = Poly::one(ring);
        for _ in 0..deg {
            power = power.mul_truncated(&step, deg);
            if power.is_zero() {
                break;
            }
            series = series.add(&power);
        }
        out = out.mul_truncated(&series.scale(&inv), deg);
    }
    out
}

/// `Σ_e x^{v+e} p_e(log x)` with finitely many integer shifts `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSeries {
    pub v: RatVector,
    pub terms: BTreeMap<Vec<i64>, Poly>,
}

impl LogSeries {
    pub fn zero(v: RatVector) -> Self {
        LogSeries { v, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn log_ring(&self) -> Ring {
        Ring::new(VarKind::Log, self.n())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Vec<i64>, p: Poly) {
        if p.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&e) {
            Some(q) => q.add(&p),
            None => p,
        };
        if !merged.is_zero() {
            self.terms.insert(e, merged);
        }
    }

    pub fn coeff(&self, e: &[i64]) -> Poly {
        self.terms.get(e).cloned().unwrap_or_else(|| Poly::zero(self.log_ring()))
    }

    pub fn add(&self, other: &LogSeries) -> LogSeries {
        let mut out = self.clone();
        for (e, p) in &other.terms {
            out.add_term(e.clone(), p.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> LogSeries {
        let mut out = LogSeries::zero(self.v.clone());
        for (e, p) in &self.terms {
            out.add_term(e.clone(), p.scale(c));
        }
        out
    }

    pub fn is_log_free(&self) -> bool {
        self.terms.values().all(Poly::is_constant)
    }

    pub fn max_log_degree(&self) -> u32 {
        self.terms.values().filter_map(Poly::total_degree).max().unwrap_or(0)
    }

    /// `x^{v+e}` exponent for a stored shift.
    pub fn exponent(&self, e: &[i64]) -> RatVector {
        self.v.iter().zip(e).map(|(a, &b)| a + Rat::from_integer(b.into())).collect()
    }

    /// One line per term, shifts in increasing order.
    pub fn render(&self) -> String {
        let order = TermOrder::Grevlex;
        let mut lines = Vec::new();
        for (e, p) in &self.terms {
            let exp: Vec<String> = self.exponent(e).iter().map(fmt_rat).collect();
            lines.push(format!("x^({}) * ({})", exp.join(","), p.render(&order)));
        }
        lines.join("\n")
    }
}

/// `L_k = Σⱼ bⱼ^{(k)} λⱼ`.
pub fn log_forms(b: &PerturbBasis, n: usize) -> Vec<Poly> {
    let ring = Ring::new(VarKind::Log, n);
    b.vectors
        .iter()
        .map(|bk| Poly::linear(ring, &bk.iter().map(|&x| Rat::from_integer(x.into())).collect::<Vec<_>>(), &Rat::zero()))
        .collect()
}

/// `(q(∂_s)•(f(s)·exp(Σ s_k L_k)))|_{s=0}`.
fn pair_with_exponential(q: &DualOperator, f: &Poly, forms: &[Poly], n: usize) -> Poly {
    let ring = Ring::new(VarKind::Log, n);
    let mut out = Poly::zero(ring);
    let mut powers: BTreeMap<Monomial, Poly> = BTreeMap::new();
    for (alpha, c) in q.poly.terms() {
        for (gamma, fg) in f.terms() {
            if !gamma.divides(alpha) {
                continue;
            }
            let rest = alpha.div(gamma);
            // α!/(α−γ)!
            let ratio = alpha.0.iter().zip(&rest.0).fold(Rat::one(), |acc, (&a, &r)| {
                acc * Rat::from_integer(factorial(a)) / Rat::from_integer(factorial(r))
            });
            let lp = powers
                .entry(rest.clone())
                .or_insert_with(|| {
                    rest.0.iter().enumerate().fold(Poly::one(ring), |acc, (k, &e)| acc.mul(&forms[k].pow(e)))
                })
                .clone();
            out = out.add(&lp.scale(&(c * fg * ratio)));
        }
    }
    out
}

/// Outcome of the Frobenius construction at one exponent.
#[derive(Clone, Debug)]
pub struct FrobeniusResult {
    pub solutions: Vec<LogSeries>,
    /// Window points dropped for a pole (general mode only).
    pub skipped: Vec<Vec<i64>>,
}

/// `(q(∂_s)•(m(s)F(x,s)))|_{s=0}` for each dual `q`, summing over `window`,
/// with `m(s) = (Bs)^{multiplier}`.
pub fn frobenius_solutions(
    v: &[Rat],
    b: &PerturbBasis,
    window: &[Vec<i64>],
    duals: &[DualOperator],
    multiplier: &[usize],
    strict: bool,
) -> Result<FrobeniusResult> {
    let n = v.len();
    let forms = log_forms(b, n);
    let top = duals.iter().map(DualOperator::degree).max().unwrap_or(0);
    let mut expansions = Vec::with_capacity(window.len());
    let mut skipped = Vec::new();
    for u in window {
        match coeff_times(v, b, u, multiplier) {
            Ok(c) => expansions.push((u, taylor(&c, top))),
            Err(GkzError::PoleAtOrigin(at)) if !strict => skipped.push(at),
            Err(e) => return Err(e),
        }
    }
    let solutions = duals
        .iter()
        .map(|q| {
            let mut s = LogSeries::zero(v.to_vec());
            for (u, t) in &expansions {
                s.add_term((*u).clone(), pair_with_exponential(q, t, &forms, n));
            }
            s
        })
        .collect();
    Ok(FrobeniusResult { solutions, skipped })
}

/// Operators from the Weyl algebra used by the verifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operator {
    /// `Σⱼ a_{ij} θⱼ − βᵢ`.
    Euler { row: Vec<i64>, beta: Rat },
    /// `∂^{g₊} − ∂^{g₋}`.
    Binomial(Vec<i64>),
    Partial(usize),
    Theta(usize),
}

impl Operator {
    pub fn euler(a: &ConfigMatrix, i: usize, beta: &[Rat]) -> Self {
        let row = a.matrix().row(i).iter().map(|x| crate::exact::to_i64(x).expect("small entries")).collect();
        Operator::Euler { row, beta: beta[i].clone() }
    }
}

fn partial(s: &LogSeries, j: usize) -> LogSeries {
    let mut out = LogSeries::zero(s.v.clone());
    for (e, p) in &s.terms {
        let cj = &s.v[j] + Rat::from_integer(e[j].into());
        let mut f = e.clone();
        f[j] -= 1;
        out.add_term(f, p.scale(&cj).add(&p.derivative(j)));
    }
    out
}

fn theta(s: &LogSeries, j: usize) -> LogSeries {
    let mut out = LogSeries::zero(s.v.clone());
    for (e, p) in &s.terms {
        let cj = &s.v[j] + Rat::from_integer(e[j].into());
        out.add_term(e.clone(), p.scale(&cj).add(&p.derivative(j)));
    }
    out
}

fn partial_power(s: &LogSeries, m: &[i64]) -> LogSeries {
    let mut cur = s.clone();
    for (j, &k) in m.iter().enumerate() {
        for _ in 0..k {
            cur = partial(&cur, j);
        }
    }
    cur
}

pub fn apply_operator(op: &Operator, s: &LogSeries) -> LogSeries {
    match op {
        Operator::Partial(j) => partial(s, *j),
        Operator::Theta(j) => theta(s, *j),
        Operator::Euler { row, beta } => {
            let mut out = s.scale(&-beta);
            for (j, &a) in row.iter().enumerate() {
                if a != 0 {
                    out = out.add(&theta(s, j).scale(&Rat::from_integer(a.into())));
                }
            }
            out
        }
        Operator::Binomial(g) => {
            let plus: Vec<i64> = g.iter().map(|&x| x.max(0)).collect();
            let minus: Vec<i64> = g.iter().map(|&x| (-x).max(0)).collect();
            partial_power(s, &plus).add(&partial_power(s, &minus).scale(&-Rat::one()))
        }
    }
}

/// Image positions of `∂^{g₊} − ∂^{g₋}` whose preimages `f+g₊` and `f+g₋` both lie in `window`,
/// with nonzero coefficient there.
pub fn toric_residuals(s: &LogSeries, g: &[i64], window: &BTreeSet<Vec<i64>>) -> Vec<Vec<i64>> {
    let image = apply_operator(&Operator::Binomial(g.to_vec()), s);
    let plus: Vec<i64> = g.iter().map(|&x| x.max(0)).collect();
    let minus: Vec<i64> = g.iter().map(|&x| (-x).max(0)).collect();
    image
        .terms
        .keys()
        .filter(|f| {
            let a: Vec<i64> = f.iter().zip(&plus).map(|(x, y)| x + y).collect();
            let b: Vec<i64> = f.iter().zip(&minus).map(|(x, y)| x + y).collect();
            window.contains(&a) && window.contains(&b)
        })
        .cloned()
        .collect()
}

/// Rewrites `p(λ)` as a polynomial in `L₁,…,L_h`, if possible.
pub fn in_log_subring(p: &Poly, b: &PerturbBasis) -> Result<Option<Poly>> {
    let n = p.ring().nvars;
    let h = b.h();
    let bm: Vec<Vec<Rat>> =
        b.vectors.iter().map(|bk| bk.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect();
    // C = B (BᵀB)⁻¹, so that BᵀC = I
    let gram = Matrix::from_row_vecs(
        (0..h).map(|i| (0..h).map(|k| dot(&bm[i], &bm[k])).collect()).collect(),
        h,
    )?;
    let mut c_cols: Vec<RatVector> = Vec::with_capacity(h);
    for k in 0..h {
        let e: Vec<Rat> = (0..h).map(|i| if i == k { Rat::one() } else { Rat::zero() }).collect();
        let x = solve_exact(&gram, &e)?.ok_or_else(|| GkzError::InvalidBasis("dependent basis".into()))?;
        c_cols.push((0..n).map(|j| (0..h).fold(Rat::zero(), |acc, i| acc + &bm[i][j] * &x[i])).collect());
    }
    let mu_ring = Ring::new(VarKind::S, h);
    let images: Vec<Poly> = (0..n)
        .map(|j| Poly::linear(mu_ring, &(0..h).map(|k| c_cols[k][j].clone()).collect::<Vec<_>>(), &Rat::zero()))
        .collect();
    let candidate = p.with_kind(VarKind::Log).substitute(&images, mu_ring);
    let back = candidate.substitute(&log_forms(b, n), Ring::new(VarKind::Log, n));
    Ok(if back == p.with_kind(VarKind::Log) { Some(candidate) } else { None })
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Rank of the solutions as vectors indexed by (shift, log monomial).
pub fn solution_rank(sols: &[LogSeries]) -> usize {
    let mut keys: BTreeSet<(Vec<i64>, Monomial)> = BTreeSet::new();
    for s in sols {
        for (e, p) in &s.terms {
            for (m, _) in p.terms() {
                keys.insert((e.clone(), m.clone()));
            }
        }
    }
    let keys: Vec<_> = keys.into_iter().collect();
    let rows: Vec<Vec<Rat>> = sols
        .iter()
        .map(|s| keys.iter().map(|(e, m)| s.terms.get(e).map(|p| p.coeff(m)).unwrap_or_else(Rat::zero)).collect())
        .collect();
    if keys.is_empty() {
        return 0;
    }
    RatMatrix::from_row_vecs(rows, keys.len()).map(|m| m.rank()).unwrap_or(0)
}
