#![allow(dead_code)]

use gkzf_core::exact::{parse_rat, Rat};
use gkzf_core::poly::{Monomial, Poly, Ring, VarKind};
use gkzf_core::toric::ConfigMatrix;

pub fn hexagon() -> ConfigMatrix {
    ConfigMatrix::from_rows(&[
        vec![1, 1, 1, 1, 1, 1],
        vec![0, 1, 1, 0, -1, -1],
        vec![-1, -1, 0, 1, 1, 0],
    ])
    .unwrap()
}

/// Columns `e_i + e_{3+j}` for the 3×3 grid, row-major.
pub fn grid3() -> ConfigMatrix {
    ConfigMatrix::from_rows(&[
        vec![1, 1, 1, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 1, 1, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 0, 1, 1, 1],
        vec![1, 0, 0, 1, 0, 0, 1, 0, 0],
        vec![0, 1, 0, 0, 1, 0, 0, 1, 0],
        vec![0, 0, 1, 0, 0, 1, 0, 0, 1],
    ])
    .unwrap()
}

pub const GRID_WEIGHTS: [[i64; 9]; 5] = [
    [1, 2, 3, 5, 8, 13, 21, 34, 55],
    [55, 34, 1, 21, 2, 13, 3, 5, 8],
    [1, 55, 2, 34, 3, 5, 8, 13, 21],
    [21, 13, 1, 55, 2, 3, 5, 8, 34],
    [2, 1, 0, 4, 0, 5, 0, 2, 5],
];

pub fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

pub fn rats(v: &[&str]) -> Vec<Rat> {
    v.iter().map(|s| parse_rat(s).unwrap()).collect()
}

pub fn dpoly(s: &str, n: usize) -> Poly {
    Poly::parse(s, Ring::new(VarKind::D, n)).unwrap()
}

pub fn mono(s: &str, n: usize) -> Monomial {
    dpoly(s, n).terms().next().unwrap().0.clone()
}

/// One-based index sets.
pub fn one_based(sets: &[&[usize]]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|i| i - 1).collect()).collect()
}

pub fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v
}

/// g¹, g³, g⁷, g⁹ of the first 3×3 weight.
pub fn first_weight_basis() -> Vec<Vec<i64>> {
    vec![
        vec![1, -1, 0, -1, 1, 0, 0, 0, 0],
        vec![0, 0, 0, 1, -1, 0, -1, 1, 0],
        vec![0, 1, -1, 0, -1, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 1, -1, 0, -1, 1],
    ]
}

pub fn weight_data(a: &ConfigMatrix, w: &[i64]) -> gkzf_core::toric::WeightData {
    let gb = gkzf_core::toric::toric_ideal(a).unwrap();
    gkzf_core::toric::initial_ideal(a, &gb, &ints(w)).unwrap()
}

pub fn spoly(s: &str, h: usize) -> Poly {
    Poly::parse(s, Ring::new(VarKind::S, h)).unwrap()
}
