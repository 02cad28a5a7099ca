//! Buchberger's algorithm with the normal selection strategy, reduced bases,
//! saturation by a monomial and ideal membership.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{GkzError, Result};
use crate::exact::Rat;
use crate::poly::{Monomial, OrdPoly, Poly, Ring, TermOrder, WeightOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    /// Monic, sorted by decreasing leading monomial.
    pub generators: Vec<Poly>,
    pub order: TermOrder,
    pub reduced: bool,
    ring: Ring,
}

impl GroebnerBasis {
    /// Basis of the zero ideal.
    pub fn zero(ring: Ring, order: TermOrder) -> Self {
        GroebnerBasis { generators: Vec::new(), order, reduced: true, ring }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| g.leading_monomial(&self.order).unwrap().clone())
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    fn ord_gens(&self) -> Vec<OrdPoly> {
        self.generators.iter().map(|g| OrdPoly::from_poly(g, &self.order)).collect()
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        if f.ring() != self.ring {
            return Err(GkzError::RingMismatch(format!("{:?} vs {:?}", f.ring(), self.ring)));
        }
        let r = OrdPoly::from_poly(f, &self.order).reduce(&self.ord_gens(), &self.order, None);
        Ok(r.to_poly(self.ring))
    }

    /// Every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let g = self.ord_gens();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if spoly(&g[i], &g[j], &self.order).reduce(&g, &self.order, None).is_zero() {
                    continue;
                }
                return false;
            }
        }
        true
    }

    /// Reduced-basis shape: monic, and no term divisible by another leading monomial.
    pub fn is_reduced_shape(&self) -> bool {
        let lms = self.leading_monomials();
        self.generators.iter().enumerate().all(|(i, g)| {
            g.leading_term(&self.order).map(|(_, c)| c.is_one()).unwrap_or(false)
                && g.terms().all(|(m, _)| {
                    lms.iter().enumerate().all(|(j, l)| j == i || !l.divides(m))
                })
        })
    }
}

fn spoly(f: &OrdPoly, g: &OrdPoly, order: &TermOrder) -> OrdPoly {
    let l = f.lm().lcm(g.lm());
    let mf = l.div(f.lm());
    let mg = l.div(g.lm());
    let zero = OrdPoly { terms: Vec::new() };
    let a = zero.sub_scaled(&-f.lc().recip(), &mf, f, order);
    a.sub_scaled(&g.lc().recip(), &mg, g, order)
}

fn common_ring(gens: &[Poly]) -> Result<Ring> {
    let ring = gens
        .first()
        .ok_or_else(|| GkzError::DimensionMismatch("empty generator list".into()))?
        .ring();
    if let Some(g) = gens.iter().find(|g| g.ring() != ring) {
        return Err(GkzError::RingMismatch(format!("{:?} vs {:?}", g.ring(), ring)));
    }
    Ok(ring)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Poly], order: &TermOrder) -> Result<GroebnerBasis> {
    let ring = common_ring(gens)?;
    let mut basis: Vec<OrdPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let mut p = OrdPoly::from_poly(g, order);
            p.make_monic();
            basis.push(p);
        }
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }

    while !pending.is_empty() {
        // normal strategy: smallest lcm first, ties by index
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = basis[a.0].lm().lcm(basis[a.1].lm());
                let lb = basis[b.0].lm().lcm(basis[b.1].lm());
                order.compare(&la, &lb).then_with(|| a.cmp(b))
            })
            .unwrap();
        pending.remove(&(i, j));

        let (lmi, lmj) = (basis[i].lm(), basis[j].lm());
        if lmi.coprime(lmj) {
            continue;
        }
        let l = lmi.lcm(lmj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let mut r = spoly(&basis[i], &basis[j], order).reduce(&basis, order, None);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pending.insert((k, n));
        }
    }

    Ok(GroebnerBasis { generators: reduce_basis(basis, order, ring), order: order.clone(), reduced: true, ring })
}

fn reduce_basis(basis: Vec<OrdPoly>, order: &TermOrder, ring: Ring) -> Vec<Poly> {
    // minimalize: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<OrdPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<OrdPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<OrdPoly> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let head = OrdPoly { terms: vec![minimal[i].terms[0].clone()] };
        let tail = OrdPoly { terms: minimal[i].terms[1..].to_vec() };
        let tail = tail.reduce(&others, order, None);
        let mut p = OrdPoly { terms: head.terms.into_iter().chain(tail.terms).collect() };
        p.make_monic();
        out.push(p);
    }
    out.sort_by(|a, b| order.compare(b.lm(), a.lm()));
    out.into_iter().map(|p| p.to_poly(ring)).collect()
}

pub fn normal_form(f: &Poly, gb: &GroebnerBasis) -> Result<Poly> {
    gb.normal_form(f)
}

pub fn ideal_member(f: &Poly, gb: &GroebnerBasis) -> Result<bool> {
    Ok(gb.normal_form(f)?.is_zero())
}

/// Every polynomial of `gens` lies in the ideal of `gb`.
pub fn contains_all(gb: &GroebnerBasis, gens: &[Poly]) -> Result<bool> {
    for g in gens {
        if !ideal_member(g, gb)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ideal equality by mutual membership.
pub fn same_ideal(a: &GroebnerBasis, b: &GroebnerBasis) -> Result<bool> {
    Ok(contains_all(a, &b.generators)? && contains_all(b, &a.generators)?)
}

/// `(⟨gens⟩ : m^∞)`, eliminating one auxiliary variable `t` from `⟨gens, t·m − 1⟩`.
pub fn saturate(gens: &[Poly], m: &Monomial) -> Result<Vec<Poly>> {
    let ring = common_ring(gens)?;
    if m.nvars() != ring.nvars {
        return Err(GkzError::DimensionMismatch("monomial length".into()));
    }
    if m.is_one() {
        return Ok(gens.iter().filter(|g| !g.is_zero()).cloned().collect());
    }
    let n = ring.nvars;
    let big = Ring::new(ring.kind, n + 1);
    let lift = |p: &Poly| {
        Poly::from_terms(
            big,
            p.terms().map(|(k, c)| {
                let mut e = k.0.clone();
                e.push(0);
                (Monomial(e), c.clone())
            }),
        )
    };
    let mut big_gens: Vec<Poly> = gens.iter().map(lift).collect();
    let mut tm = m.0.clone();
    tm.push(1);
    big_gens.push(Poly::binomial(big, Monomial(tm), Monomial::one(n + 1)));

    let mut w = vec![0i64; n + 1];
    w[n] = 1;
    let elim = TermOrder::Weight(WeightOrder::from_ints(&w)?);
    let gb = buchberger(&big_gens, &elim)?;
    Ok(gb
        .generators
        .iter()
        .filter(|g| g.terms().all(|(k, _)| k.0[n] == 0))
        .map(|g| Poly::from_terms(ring, g.terms().map(|(k, c)| (Monomial(k.0[..n].to_vec()), c.clone()))))
        .collect())
}

/// `∂^a − ∂^b` with `a ≠ b` (after making the leading coefficient 1).
pub fn is_binomial(p: &Poly) -> bool {
    if p.len() != 2 {
        return false;
    }
    let cs: Vec<&Rat> = p.terms().map(|(_, c)| c).collect();
    (cs[0] + cs[1]).is_zero()
}
