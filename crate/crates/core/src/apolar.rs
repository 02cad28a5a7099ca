//! Homogeneous ideals in the perturbation ring and their apolar duals.
//!
//! A dual operator `q(∂_s)` is stored as a polynomial in the `ds` ring. It
//! pairs with `s^α` through `⟨∂^β, s^α⟩ = α!·δ_{αβ}`.

use num_traits::{One, Zero};

use crate::error::{GkzError, Result};
use crate::exact::{factorial, rref, Matrix, Rat};
use crate::exponents::PerturbBasis;
use crate::groebner::{buchberger, ideal_member, GroebnerBasis};
use crate::poly::{Monomial, Poly, Ring, TermOrder, VarKind};

/// Degree-`k` monomials in `h` variables, largest first in graded lex.
pub fn monomials_of_degree(h: usize, k: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if h == 0 {
        return if k == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, k, &mut vec![0; h], &mut out);
    out
}

fn alpha_factorial(m: &Monomial) -> Rat {
    m.0.iter().fold(Rat::one(), |acc, &e| acc * Rat::from_integer(factorial(e)))
}

#[derive(Clone, Debug)]
pub struct HomIdeal {
    ring: Ring,
    pub generators: Vec<Poly>,
    gb: Option<GroebnerBasis>,
}

impl HomIdeal {
    /// Zero generators are dropped; the rest must be homogeneous.
    pub fn new(ring: Ring, generators: Vec<Poly>) -> Result<Self> {
        let generators: Vec<Poly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if let Some(g) = generators.iter().find(|g| g.ring() != ring) {
            return Err(GkzError::RingMismatch(format!("generator {} not in the s-ring", g)));
        }
        if !generators.iter().all(Poly::is_homogeneous) {
            return Err(GkzError::HomogeneityViolation);
        }
        let gb = if generators.is_empty() { None } else { Some(buchberger(&generators, &TermOrder::Grevlex)?) };
        Ok(HomIdeal { ring, generators, gb })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    pub fn groebner(&self) -> Option<&GroebnerBasis> {
        self.gb.as_ref()
    }

    pub fn is_unit(&self) -> bool {
        self.gb.as_ref().is_some_and(GroebnerBasis::is_unit)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        match &self.gb {
            None => Ok(f.is_zero()),
            Some(gb) => ideal_member(f, gb),
        }
    }

    pub fn contains_ideal(&self, other: &HomIdeal) -> Result<bool> {
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_ideal(&self, other: &HomIdeal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// `m·self` as an ideal.
    pub fn times(&self, m: &Poly) -> Result<HomIdeal> {
        HomIdeal::new(self.ring, self.generators.iter().map(|g| g.mul(m)).collect())
    }

    /// Rows spanning `P_k`: all monomial multiples of generators in degree `k`,
    /// as coefficient vectors against [`monomials_of_degree`].
    pub fn component_matrix(&self, k: u32) -> Matrix<Rat> {
        let basis = monomials_of_degree(self.nvars(), k);
        let mut rows = Vec::new();
        for g in &self.generators {
            let dg = g.total_degree().unwrap();
            if dg > k {
                continue;
            }
            for m in monomials_of_degree(self.nvars(), k - dg) {
                let p = g.mul_monomial(&m);
                rows.push(basis.iter().map(|b| p.coeff(b)).collect());
            }
        }
        Matrix::from_row_vecs(rows, basis.len()).expect("consistent widths")
    }

    /// `dim ℂ[s]_k − dim P_k`, counted as standard monomials of the Gröbner basis.
    pub fn hilbert_function(&self, k: u32) -> usize {
        let mons = monomials_of_degree(self.nvars(), k);
        match &self.gb {
            None => mons.len(),
            Some(gb) => {
                let leads = gb.leading_monomials();
                mons.iter().filter(|m| !leads.iter().any(|l| l.divides(m))).count()
            }
        }
    }
}

/// `∏_{j∈G} (Bs)ⱼ` for each `G`.
fn bs_products(b: &PerturbBasis, sets: &[Vec<usize>]) -> Vec<Poly> {
    let ring = Ring::new(VarKind::S, b.h());
    let bs: Vec<Poly> = b.bs().iter().map(|f| f.to_poly(ring)).collect();
    sets.iter().map(|g| g.iter().fold(Poly::one(ring), |acc, &j| acc.mul(&bs[j]))).collect()
}

/// Inclusion-minimal members; `(Bs)^S` divides `(Bs)^{S'}` whenever `S ⊆ S'`.
fn minimal_sets(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut sets = sets.to_vec();
    sets.sort();
    sets.dedup();
    sets.iter()
        .filter(|s| !sets.iter().any(|t| t != *s && t.iter().all(|x| s.contains(x))))
        .cloned()
        .collect()
}

/// `P_B = ⟨(Bs)^{G^(i)}⟩`.
pub fn build_pb(b: &PerturbBasis, g_sets: &[Vec<usize>]) -> Result<HomIdeal> {
    HomIdeal::new(Ring::new(VarKind::S, b.h()), bs_products(b, g_sets))
}

fn union_minus(i: &[usize], j: &[usize], k: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = i.iter().chain(j).copied().filter(|x| !k.contains(x)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `P = ⟨(Bs)^{I∪J∖K}⟩` over `I ∈ ns`, `J ∈ nsc`, together with `m(s) = (Bs)^{I₀∖K}`.
pub fn build_p(
    ns: &[Vec<usize>],
    nsc: &[Vec<usize>],
    k: &[usize],
    i0: &[usize],
    b: &PerturbBasis,
) -> Result<(HomIdeal, Poly)> {
    let sets: Vec<Vec<usize>> = if nsc.is_empty() {
        ns.iter().map(|i| union_minus(i, &[], k)).collect()
    } else {
        ns.iter().flat_map(|i| nsc.iter().map(move |j| union_minus(i, j, k))).collect()
    };
    let ring = Ring::new(VarKind::S, b.h());
    let p = HomIdeal::new(ring, bs_products(b, &minimal_sets(&sets)))?;
    let m = bs_products(b, &[union_minus(i0, &[], k)]).remove(0);
    Ok((p, m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualOperator {
    /// Polynomial in the `ds` ring.
    pub poly: Poly,
}

impl DualOperator {
    pub fn new(poly: Poly) -> Self {
        DualOperator { poly: poly.with_kind(VarKind::DualS) }
    }

    pub fn parse(text: &str, h: usize) -> std::result::Result<Self, String> {
        Poly::parse(text, Ring::new(VarKind::DualS, h)).map(DualOperator::new)
    }

    pub fn nvars(&self) -> usize {
        self.poly.ring().nvars
    }

    pub fn degree(&self) -> u32 {
        self.poly.total_degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `(q(∂_s)•h)|_{s=0}`.
    pub fn pair(&self, h: &Poly) -> Rat {
        self.poly.terms().fold(Rat::zero(), |acc, (m, c)| acc + c * alpha_factorial(m) * h.coeff(m))
    }

    /// `q(∂_s)•h`.
    pub fn act(&self, h: &Poly) -> Poly {
        let mut out = Poly::zero(h.ring());
        for (m, c) in self.poly.terms() {
            let mut d = h.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    d = d.derivative(i);
                }
            }
            out = out.add(&d.scale(c));
        }
        out
    }

    /// Orthogonal to every degree-matching multiple of every generator.
    pub fn annihilates(&self, ideal: &HomIdeal) -> bool {
        let top = self.degree();
        (0..=top).all(|k| {
            let qk = DualOperator { poly: self.poly.component(k) };
            qk.is_zero() || {
                let m = ideal.component_matrix(k);
                let basis = monomials_of_degree(ideal.nvars(), k);
                (0..m.rows()).all(|r| {
                    let h = Poly::from_terms(
                        ideal.ring(),
                        basis.iter().cloned().zip(m.row(r).iter().cloned()),
                    );
                    qk.pair(&h).is_zero()
                })
            }
        })
    }

    pub fn render(&self) -> String {
        self.poly.render(&TermOrder::Grevlex)
    }
}

impl std::fmt::Display for DualOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

/// Graded basis of `P^⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSpace {
    pub h: usize,
    pub by_degree: Vec<Vec<DualOperator>>,
}

impl DualSpace {
    pub fn dims(&self) -> Vec<usize> {
        self.by_degree.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.by_degree.iter().map(Vec::len).sum()
    }

    pub fn operators(&self) -> impl Iterator<Item = &DualOperator> {
        self.by_degree.iter().flatten()
    }

    /// Span membership, checked degree by degree.
    pub fn contains(&self, q: &DualOperator) -> bool {
        let Some(top) = q.poly.total_degree() else { return true };
        (0..=top).all(|k| {
            let qk = q.poly.component(k);
            if qk.is_zero() {
                return true;
            }
            let Some(basis) = self.by_degree.get(k as usize) else { return false };
            let mons = monomials_of_degree(self.h, k);
            let mut rows: Vec<Vec<Rat>> =
                basis.iter().map(|b| mons.iter().map(|m| b.poly.coeff(m)).collect()).collect();
            let before = Matrix::from_row_vecs(rows.clone(), mons.len()).unwrap().rank();
            rows.push(mons.iter().map(|m| qk.coeff(&m.clone())).collect());
            Matrix::from_row_vecs(rows, mons.len()).unwrap().rank() == before
        })
    }

    /// Nonzero and in the span.
    pub fn contains_up_to_scalar(&self, q: &DualOperator) -> bool {
        !q.is_zero() && self.contains(&DualOperator::new(q.poly.clone()))
    }
}

/// Degree-by-degree nullspace of the apolarity pairing with `P_k`, each
/// degree echelonized with unit leading coefficients.
pub fn dual_basis(p: &HomIdeal, degree_cap: u32) -> Result<DualSpace> {
    let h = p.nvars();
    let dual_ring = Ring::new(VarKind::DualS, h);
    let mut by_degree = Vec::new();
    for k in 0..=degree_cap {
        let mons = monomials_of_degree(h, k);
        let mut m = p.component_matrix(k);
        for r in 0..m.rows() {
            for (c, mon) in mons.iter().enumerate() {
                let v = &m[(r, c)] * alpha_factorial(mon);
                m[(r, c)] = v;
            }
        }
        let null = if m.rows() == 0 {
            (0..mons.len())
                .map(|i| (0..mons.len()).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
                .collect()
        } else {
            m.nullspace()
        };
        if null.is_empty() {
            return Ok(DualSpace { h, by_degree });
        }
        let mut e = Matrix::from_row_vecs(null, mons.len()).unwrap();
        let rank = rref(&mut e).len();
        let ops = (0..rank)
            .map(|r| {
                DualOperator::new(Poly::from_terms(dual_ring, mons.iter().cloned().zip(e.row(r).iter().cloned())))
            })
            .collect();
        by_degree.push(ops);
    }
    Err(GkzError::DegreeCapReached(degree_cap as usize))
}

/// `U ⋆ q = (U(∂_z)•q(z))|_{z=∂_s}`; `u` may live in any ring with matching variable count.
pub fn star(u: &Poly, q: &DualOperator) -> Result<DualOperator> {
    if u.ring().nvars != q.nvars() {
        return Err(GkzError::DimensionMismatch(format!(
            "star of {} variables against {}",
            u.ring().nvars,
            q.nvars()
        )));
    }
    let op = DualOperator { poly: u.with_kind(VarKind::DualS) };
    Ok(DualOperator::new(op.act(&q.poly)))
}
