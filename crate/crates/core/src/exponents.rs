//! Fake exponents, negative supports, the monoid `C(w)` and the choice of the
//! perturbation basis `B`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{GkzError, Result};
use crate::exact::{rref, smith_certificate, solve_exact, Int, Rat, RatMatrix};
use crate::pairs::{StandardPair, Triangulation};
use crate::poly::{LinearFormPlusConst, WeightOrder};
use crate::toric::ConfigMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FakeExponent {
    pub v: Vec<Rat>,
    pub supporting_pairs: Vec<StandardPair>,
    pub multiplicity: usize,
}

/// One `v` per consistent standard pair, merged; sorted by multiplicity
/// (descending), then by `v` (lexicographically descending).
pub fn fake_exponents(a: &ConfigMatrix, beta: &[Rat], pairs: &[StandardPair]) -> Result<Vec<FakeExponent>> {
    if beta.len() != a.rows() {
        return Err(GkzError::DimensionMismatch(format!(
            "parameter has length {}, A has {} rows",
            beta.len(),
            a.rows()
        )));
    }
    let n = a.n();
    let mut found: BTreeMap<Vec<Rat>, Vec<StandardPair>> = BTreeMap::new();
    for p in pairs {
        let fixed: Vec<Int> = p.a.iter().map(|&x| Int::from(x)).collect();
        let shift = a.matrix().mul_vec(&fixed);
        let rhs: Vec<Rat> = beta.iter().zip(&shift).map(|(b, s)| b - Rat::from_integer(s.clone())).collect();
        let m = a.matrix().select_columns(&p.sigma).to_rat();
        let Some(x) = solve_exact(&m, &rhs)? else { continue };
        let mut v: Vec<Rat> = p.a.iter().map(|&x| Rat::from_integer(x.into())).collect();
        for (k, &j) in p.sigma.iter().enumerate() {
            v[j] = x[k].clone();
        }
        debug_assert_eq!(v.len(), n);
        found.entry(v).or_default().push(p.clone());
    }
    let mut out: Vec<FakeExponent> = found
        .into_iter()
        .map(|(v, supporting_pairs)| FakeExponent { multiplicity: supporting_pairs.len(), v, supporting_pairs })
        .collect();
    out.sort_by(|x, y| y.multiplicity.cmp(&x.multiplicity).then_with(|| y.v.cmp(&x.v)));
    Ok(out)
}

/// `{j | vⱼ ∈ ℤ_{<0}}`, zero-based.
pub fn nsupp(v: &[Rat]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, x)| x.is_integer() && x.is_negative()).map(|(j, _)| j).collect()
}

pub fn nsupp_int(v: &[Rat], u: &[i64]) -> Vec<usize> {
    v.iter()
        .zip(u)
        .enumerate()
        .filter(|(_, (x, &d))| {
            let y = *x + Rat::from_integer(d.into());
            y.is_integer() && y.is_negative()
        })
        .map(|(j, _)| j)
        .collect()
}

/// `nsupp(v) ⊆ C_w`.
pub fn theorem_check(v: &FakeExponent, t: &Triangulation) -> bool {
    nsupp(&v.v).iter().all(|j| t.c_w.contains(j))
}

fn dot(w: &WeightOrder, u: &[i64]) -> i128 {
    w.weight_of(u)
}

/// Exhaustive search for `x ∈ ℕᵐ` with `Σ xᵢ gᵢ = u`.
///
/// Every `w·gᵢ` must be positive; then `Σ xᵢ (w·gᵢ) = w·u` bounds the search.
pub struct ConeOracle {
    gens: Vec<Vec<i64>>,
    weights: Vec<i128>,
    order: WeightOrder,
    /// `pos[i][j]`: some generator with index ≥ i has a positive j-th entry.
    pos: Vec<Vec<bool>>,
    neg: Vec<Vec<bool>>,
}

impl ConeOracle {
    pub fn new(gens: &[Vec<i64>], order: &WeightOrder) -> Result<Self> {
        let weights: Vec<i128> = gens.iter().map(|g| dot(order, g)).collect();
        if let Some(i) = weights.iter().position(|&x| x <= 0) {
            return Err(GkzError::OrientationViolation(i));
        }
        let m = gens.len();
        let n = gens.first().map(Vec::len).unwrap_or(0);
        let mut pos = vec![vec![false; n]; m + 1];
        let mut neg = vec![vec![false; n]; m + 1];
        for i in (0..m).rev() {
            for j in 0..n {
                pos[i][j] = pos[i + 1][j] || gens[i][j] > 0;
                neg[i][j] = neg[i + 1][j] || gens[i][j] < 0;
            }
        }
        Ok(ConeOracle { gens: gens.to_vec(), weights, order: order.clone(), pos, neg })
    }

    pub fn member(&self, u: &[i64]) -> Option<Vec<u64>> {
        let target = dot(&self.order, u);
        if target < 0 {
            return None;
        }
        let mut x = vec![0u64; self.gens.len()];
        let mut failed = HashSet::new();
        if self.search(0, u.to_vec(), target, &mut x, &mut failed) {
            Some(x)
        } else {
            None
        }
    }

    fn search(
        &self,
        i: usize,
        rest: Vec<i64>,
        weight: i128,
        x: &mut [u64],
        failed: &mut HashSet<(usize, Vec<i64>)>,
    ) -> bool {
        if weight == 0 {
            return rest.iter().all(|&r| r == 0);
        }
        if i == self.gens.len() {
            return false;
        }
        for (j, &r) in rest.iter().enumerate() {
            if (r > 0 && !self.pos[i][j]) || (r < 0 && !self.neg[i][j]) {
                return false;
            }
        }
        if failed.contains(&(i, rest.clone())) {
            return false;
        }
        let g = &self.gens[i];
        let wg = self.weights[i];
        let max = (weight / wg) as i64;
        for k in (0..=max).rev() {
            let next: Vec<i64> = rest.iter().zip(g).map(|(r, gj)| r - k * gj).collect();
            x[i] = k as u64;
            if self.search(i + 1, next, weight - k as i128 * wg, x, failed) {
                return true;
            }
        }
        x[i] = 0;
        failed.insert((i, rest));
        false
    }
}

pub fn cone_member(u: &[i64], gens: &[Vec<i64>], order: &WeightOrder) -> Result<Option<Vec<u64>>> {
    Ok(ConeOracle::new(gens, order)?.member(u))
}

/// The ℤ-basis `B` of `L` used to perturb the exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbBasis {
    /// `h` lattice vectors, the columns of `B`.
    pub vectors: Vec<Vec<i64>>,
    /// `true` when the g-vectors did not yield a basis and the kernel basis was used.
    pub fallback: bool,
}

impl PerturbBasis {
    pub fn h(&self) -> usize {
        self.vectors.len()
    }

    /// `(Bs)ⱼ = Σₖ Bⱼₖ sₖ`.
    pub fn bs(&self) -> Vec<LinearFormPlusConst> {
        let n = self.vectors.first().map(Vec::len).unwrap_or(0);
        (0..n)
            .map(|j| {
                LinearFormPlusConst::new(
                    self.vectors.iter().map(|b| Rat::from_integer(b[j].into())).collect(),
                    Rat::zero(),
                )
            })
            .collect()
    }

    /// Checks that `vectors` is a ℤ-basis of `L`.
    pub fn explicit(vectors: Vec<Vec<i64>>, a: &ConfigMatrix) -> Result<Self> {
        let h = a.n() - a.d();
        if vectors.len() != h || vectors.iter().any(|b| b.len() != a.n()) {
            return Err(GkzError::InvalidBasis(format!("expected {} vectors of length {}", h, a.n())));
        }
        if let Some(b) = vectors.iter().find(|b| a.apply(b).iter().any(|&x| x != 0)) {
            return Err(GkzError::InvalidBasis(format!("{:?} is not in the kernel", b)));
        }
        if !smith_certificate(&to_int(&vectors), a.n()) {
            return Err(GkzError::InvalidBasis("vectors do not span the lattice over ℤ".into()));
        }
        Ok(PerturbBasis { vectors, fallback: false })
    }
}

fn to_int(vs: &[Vec<i64>]) -> Vec<Vec<Int>> {
    vs.iter().map(|v| v.iter().map(|&x| Int::from(x)).collect()).collect()
}

/// Drop each g-vector that is an ℕ-combination of the others; keep the rest
/// if they form a ℤ-basis of `L`, otherwise fall back to the kernel basis.
pub fn choose_basis(gens: &[Vec<i64>], a: &ConfigMatrix, order: &WeightOrder) -> Result<PerturbBasis> {
    let survivors = indecomposable(gens, order)?;
    let h = a.n() - a.d();
    if survivors.len() == h && smith_certificate(&to_int(&survivors), a.n()) {
        return Ok(PerturbBasis { vectors: survivors, fallback: false });
    }
    Ok(PerturbBasis { vectors: a.kernel_i64()?, fallback: true })
}

/// The g-vectors that are not ℕ-combinations of the other g-vectors.
pub fn indecomposable(gens: &[Vec<i64>], order: &WeightOrder) -> Result<Vec<Vec<i64>>> {
    ConeOracle::new(gens, order)?;
    let mut out = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let others: Vec<Vec<i64>> =
            gens.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, x)| x.clone()).collect();
        if others.is_empty() || ConeOracle::new(&others, order)?.member(g).is_none() {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// All `u ∈ L` with `|uⱼ| ≤ r`, in lexicographic order.
pub fn lattice_window(a: &ConfigMatrix, r: i64) -> Vec<Vec<i64>> {
    let n = a.n();
    let mut m: RatMatrix = a.reduced().to_rat();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    let mut f = vec![-r; free.len()];
    loop {
        let mut u = vec![0i64; n];
        for (k, &c) in free.iter().enumerate() {
            u[c] = f[k];
        }
        let mut ok = true;
        for (row, &p) in pivots.iter().enumerate() {
            let mut x = Rat::zero();
            for (k, &c) in free.iter().enumerate() {
                x -= &m[(row, c)] * Rat::from_integer(f[k].into());
            }
            match (x.is_integer(), x.to_integer().to_i64()) {
                (true, Some(y)) if y.abs() <= r => u[p] = y,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push(u);
        }
        let mut i = 0;
        loop {
            if i == free.len() {
                out.sort();
                return out;
            }
            if f[i] < r {
                f[i] += 1;
                break;
            }
            f[i] = -r;
            i += 1;
        }
    }
}

pub fn max_abs_entry(gens: &[Vec<i64>]) -> i64 {
    gens.iter().flatten().map(|x| x.abs()).max().unwrap_or(1).max(1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegSupportData {
    pub i0: Vec<usize>,
    /// `G^(i) = nsupp(v − g^(i)) ∖ I₀`, one per g-vector.
    pub g_sets: Vec<Vec<usize>>,
    pub k: Vec<usize>,
    /// Negative supports certified in `NS_w(v)` within the windows.
    pub ns: Vec<Vec<usize>>,
    /// Negative supports with a counterexample outside `C(w)`.
    pub nsc: Vec<Vec<usize>>,
    /// Window members `u` with `I_u` certified.
    pub l_prime: Vec<Vec<i64>>,
    /// `K` as assembled from the windows alone.
    pub window_k: Vec<usize>,
    pub theorem: bool,
    pub radius: i64,
    pub check_radius: i64,
}

fn intersect_all(sets: &[Vec<usize>]) -> Vec<usize> {
    let mut it = sets.iter();
    let Some(first) = it.next() else { return Vec::new() };
    let mut acc: BTreeSet<usize> = first.iter().copied().collect();
    for s in it {
        acc.retain(|x| s.contains(x));
    }
    acc.into_iter().collect()
}

/// Classify negative supports of `v + u` over the lattice windows of radius
/// `r` (candidates) and `r_check ≥ r` (counterexample search).
pub fn neg_support_data(
    v: &[Rat],
    a: &ConfigMatrix,
    gens: &[Vec<i64>],
    order: &WeightOrder,
    r: i64,
    r_check: i64,
    theorem: bool,
) -> Result<NegSupportData> {
    if r > r_check {
        return Err(GkzError::DimensionMismatch("window larger than the check window".into()));
    }
    let i0 = nsupp(v);
    let g_sets: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| {
            let neg: Vec<i64> = g.iter().map(|x| -x).collect();
            nsupp_int(v, &neg).into_iter().filter(|j| !i0.contains(j)).collect()
        })
        .collect();

    let oracle = ConeOracle::new(gens, order)?;
    let big = lattice_window(a, r_check);
    let mut members: BTreeMap<Vec<i64>, bool> = BTreeMap::new();
    let mut broken: BTreeSet<Vec<usize>> = BTreeSet::new();
    for u in &big {
        let inside = oracle.member(u).is_some();
        if !inside {
            broken.insert(nsupp_int(v, u));
        }
        members.insert(u.clone(), inside);
    }

    let small: Vec<&Vec<i64>> = big.iter().filter(|u| u.iter().all(|x| x.abs() <= r)).collect();
    if !small.iter().any(|u| members[*u] && u.iter().any(|&x| x != 0)) {
        return Err(GkzError::WindowTooSmall(r));
    }
    let mut ns: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut nsc: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut l_prime = Vec::new();
    for u in small {
        let iu = nsupp_int(v, u);
        if broken.contains(&iu) {
            nsc.insert(iu);
        } else if members[u] {
            ns.insert(iu);
            l_prime.push(u.clone());
        }
    }
    let ns: Vec<Vec<usize>> = ns.into_iter().collect();
    let window_k = intersect_all(&ns);
    let k = if theorem { i0.clone() } else { window_k.clone() };
    Ok(NegSupportData {
        i0,
        g_sets,
        k,
        ns,
        nsc: nsc.into_iter().collect(),
        l_prime,
        window_k,
        theorem,
        radius: r,
        check_radius: r_check,
    })
}

/// `[v]_u = ∏ⱼ vⱼ(vⱼ−1)⋯(vⱼ−uⱼ+1)` for `u ∈ ℕⁿ`.
pub fn falling(v: &[Rat], u: &[u32]) -> Rat {
    let mut p = Rat::from_integer(1.into());
    for (x, &k) in v.iter().zip(u) {
        for t in 0..k {
            p *= x - Rat::from_integer(t.into());
        }
    }
    p
}
