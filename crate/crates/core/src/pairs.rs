//! Standard pairs of a monomial ideal and the triangulation they induce.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;

use crate::error::{GkzError, Result};
use crate::exact::{in_rational_span, maximal_minor_gcd, Int, Rat, RatMatrix};
use crate::poly::Monomial;
use crate::toric::{ConfigMatrix, InitialIdeal};

/// `(a, σ)`: the monomials `∂^a · ∂^b` with `supp(b) ⊆ σ` avoid the ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardPair {
    pub a: Vec<u32>,
    /// Sorted, zero-based.
    pub sigma: Vec<usize>,
}

impl StandardPair {
    pub fn in_sigma(&self, i: usize) -> bool {
        self.sigma.binary_search(&i).is_ok()
    }

    /// Parses the `(0,1,*,…)` notation.
    pub fn parse(text: &str) -> Option<StandardPair> {
        let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
        let mut a = Vec::new();
        let mut sigma = Vec::new();
        for (i, part) in inner.split(',').enumerate() {
            let part = part.trim();
            if part == "*" {
                a.push(0);
                sigma.push(i);
            } else {
                a.push(part.parse().ok()?);
            }
        }
        Some(StandardPair { a, sigma })
    }
}

impl fmt::Display for StandardPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.a.len())
            .map(|i| if self.in_sigma(i) { "*".to_string() } else { self.a[i].to_string() })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

fn max_degrees(m: &InitialIdeal, n: usize) -> Vec<u32> {
    (0..n).map(|i| m.generators.iter().map(|g| g.0[i]).max().unwrap_or(0)).collect()
}

/// Some generator divides `∂^a` once the variables in `free` are ignored.
fn hits(m: &InitialIdeal, a: &[u32], free: impl Fn(usize) -> bool) -> bool {
    m.generators.iter().any(|g| g.0.iter().enumerate().all(|(i, &e)| free(i) || e <= a[i]))
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1u64 << n)).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

/// Iterate all vectors `x` with `0 ≤ xᵢ ≤ bound[i]`.
fn boxed(bound: &[u32], mut f: impl FnMut(&[u32])) {
    let n = bound.len();
    let mut x = vec![0u32; n];
    loop {
        f(&x);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if x[i] < bound[i] {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// The three defining conditions, checked against the generators directly.
pub fn is_standard_pair(m: &InitialIdeal, p: &StandardPair) -> bool {
    let n = p.a.len();
    if p.sigma.iter().any(|&i| p.a[i] != 0) {
        return false;
    }
    if hits(m, &p.a, |i| p.in_sigma(i)) {
        return false;
    }
    (0..n).filter(|l| !p.in_sigma(*l)).all(|l| hits(m, &p.a, |i| i == l || p.in_sigma(i)))
}

/// The complete set of standard pairs of `m` in `n` variables, sorted.
///
/// Candidate offsets satisfy `aᵢ < max_g gᵢ` off `σ`; beyond that bound the
/// maximality condition always fails.
pub fn standard_pairs(m: &InitialIdeal, n: usize) -> Vec<StandardPair> {
    let deg = max_degrees(m, n);
    let mut out = Vec::new();
    for sigma in subsets(n) {
        let in_sigma: Vec<bool> = (0..n).map(|i| sigma.contains(&i)).collect();
        if (0..n).any(|i| !in_sigma[i] && deg[i] == 0) {
            continue;
        }
        let bound: Vec<u32> = (0..n).map(|i| if in_sigma[i] { 0 } else { deg[i] - 1 }).collect();
        boxed(&bound, |a| {
            let p = StandardPair { a: a.to_vec(), sigma: sigma.clone() };
            if is_standard_pair(m, &p) {
                out.push(p);
            }
        });
    }
    out.sort();
    out
}

/// Independent oracle: maximal `(a, σ)` with `∂^a k[∂_σ]` free of `m`, found by
/// membership tests only, over the box `aᵢ ≤ bound`.
pub fn standard_pairs_bruteforce(m: &InitialIdeal, n: usize, bound: u32) -> Vec<StandardPair> {
    let top = bound + 1;
    // upward-closed, so one far monomial along σ decides the whole face
    let admissible = |a: &[u32], sigma: &[usize]| {
        let mut e = a.to_vec();
        for &i in sigma {
            e[i] = top;
        }
        !m.contains(&Monomial(e))
    };
    let mut out = Vec::new();
    for sigma in subsets(n) {
        let b: Vec<u32> = (0..n).map(|i| if sigma.contains(&i) { 0 } else { bound }).collect();
        boxed(&b, |a| {
            if !admissible(a, &sigma) {
                return;
            }
            let rest: Vec<usize> = (0..n).filter(|i| !sigma.contains(i)).collect();
            let contained = (1u64..(1u64 << rest.len())).any(|mask| {
                let mut tau = sigma.clone();
                let mut b = a.to_vec();
                for (k, &i) in rest.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        tau.push(i);
                        b[i] = 0;
                    }
                }
                admissible(&b, &tau)
            });
            if !contained {
                out.push(StandardPair { a: a.to_vec(), sigma: sigma.clone() });
            }
        });
    }
    out.sort();
    out
}

/// The decomposition `M = ⋂ ⟨∂ᵢ^{aᵢ+1} | i ∉ σ⟩`, checked on every monomial
/// with exponents up to one past the generator degrees.
pub fn verify_decomposition(m: &InitialIdeal, pairs: &[StandardPair], n: usize) -> bool {
    let bound: Vec<u32> = max_degrees(m, n).iter().map(|d| d + 1).collect();
    let mut ok = true;
    boxed(&bound, |e| {
        let in_m = m.contains(&Monomial(e.to_vec()));
        let outside_all = pairs
            .iter()
            .all(|p| (0..n).any(|i| !p.in_sigma(i) && e[i] > p.a[i]));
        if in_m != outside_all {
            ok = false;
        }
    });
    ok
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    /// All σ, largest first.
    pub delta: Vec<Vec<usize>>,
    pub facets: Vec<Vec<usize>>,
    pub c_w: Vec<usize>,
    pub core_indices: Vec<usize>,
}

fn sort_faces(faces: &mut [Vec<usize>]) {
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
}

fn intersect(faces: &[Vec<usize>]) -> Vec<usize> {
    let mut it = faces.iter();
    let Some(first) = it.next() else { return Vec::new() };
    let mut acc: BTreeSet<usize> = first.iter().copied().collect();
    for f in it {
        acc.retain(|x| f.contains(x));
    }
    acc.into_iter().collect()
}

pub fn triangulation(pairs: &[StandardPair]) -> Triangulation {
    let set: BTreeSet<Vec<usize>> = pairs.iter().map(|p| p.sigma.clone()).collect();
    let mut delta: Vec<Vec<usize>> = set.into_iter().collect();
    sort_faces(&mut delta);
    let mut facets: Vec<Vec<usize>> = delta
        .iter()
        .filter(|s| !delta.iter().any(|t| t.len() > s.len() && s.iter().all(|x| t.contains(x))))
        .cloned()
        .collect();
    sort_faces(&mut facets);
    let c_w = intersect(&delta);
    let core_indices = intersect(&facets);
    Triangulation { delta, facets, c_w, core_indices }
}

impl Triangulation {
    /// Every face has linearly independent columns.
    pub fn faces_independent(&self, a: &ConfigMatrix) -> bool {
        self.delta.iter().all(|s| a.matrix().select_columns(s).rank() == s.len())
    }

    /// `|det A_σ| / gcd of maximal minors` per facet.
    pub fn normalized_volumes(&self, a: &ConfigMatrix) -> Result<Vec<Int>> {
        let g = maximal_minor_gcd(a.matrix())?;
        self.facets
            .iter()
            .map(|s| {
                if s.len() != a.d() {
                    return Err(GkzError::FacetNotFullDim(s.clone()));
                }
                Ok(a.reduced().select_columns(s).det().abs() / &g)
            })
            .collect()
    }

    pub fn total_volume(&self, a: &ConfigMatrix) -> Result<Int> {
        Ok(self.normalized_volumes(a)?.into_iter().sum())
    }
}

pub fn is_unimodular(t: &Triangulation, a: &ConfigMatrix) -> Result<bool> {
    Ok(t.normalized_volumes(a)?.iter().all(|v| *v == Int::from(1)))
}

/// `β ∈ ℚ·{aⱼ : j ∈ core_indices}`.
pub fn in_core(beta: &[Rat], t: &Triangulation, a: &ConfigMatrix) -> bool {
    let cols: Vec<Vec<Rat>> = t.core_indices.iter().map(|&j| a.column_rat(j)).collect();
    in_rational_span(&cols, beta)
}

/// Basis of the Core span, as columns of `A`.
pub fn core_rank(t: &Triangulation, a: &ConfigMatrix) -> usize {
    if t.core_indices.is_empty() {
        return 0;
    }
    let cols: Vec<Vec<Rat>> = t.core_indices.iter().map(|&j| a.column_rat(j)).collect();
    RatMatrix::from_columns(&cols, a.rows()).rank()
}
