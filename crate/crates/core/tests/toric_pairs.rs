mod common;

use common::*;
use gkzf_core::exact::{int, maximal_minor_gcd};
use gkzf_core::groebner::{buchberger, contains_all, is_binomial};
use gkzf_core::pairs::{
    in_core, is_unimodular, standard_pairs, triangulation, verify_decomposition, StandardPair,
};
use gkzf_core::poly::{Monomial, TermOrder, WeightOrder};
use gkzf_core::toric::{initial_ideal, toric_ideal};

const HEX_W: [i64; 6] = [2, 3, 8, 1, 13, 5];

#[test]
fn hexagon_kernel_contains_printed_relation() {
    let a = hexagon();
    assert_eq!(a.kernel().len(), 3);
    assert!(a.apply(&[-1, 1, 0, -1, 1, 0]).iter().all(|&x| x == 0));
}

#[test]
fn hexagon_reduced_basis_matches_listing() {
    let a = hexagon();
    let gb = toric_ideal(&a).unwrap();
    let data = initial_ideal(&a, &gb, &ints(&HEX_W)).unwrap();
    let printed = [
        "d2*d5 - d1*d4",
        "d3*d6 - d1*d4",
        "d3*d5^2 - d4^2*d6",
        "d3^2*d5 - d2*d4^2",
        "d1*d5^2 - d4*d6^2",
        "d1*d3*d5 - d2*d4*d6",
        "d1*d3^2 - d2^2*d4",
        "d1^2*d5 - d2*d6^2",
        "d2^2*d6^2 - d1^3*d4",
        "d1^2*d3 - d2^2*d6",
    ];
    let mut got = data.gb.generators.clone();
    got.sort_by_key(|p| p.render(&TermOrder::Grevlex));
    let mut exp: Vec<_> = printed.iter().map(|s| dpoly(s, 6)).collect();
    exp.sort_by_key(|p| p.render(&TermOrder::Grevlex));
    assert_eq!(got, exp);

    let lead = ["d2*d5", "d3*d6", "d3*d5^2", "d3^2*d5", "d1*d5^2", "d1*d3*d5", "d1*d3^2", "d1^2*d5", "d2^2*d6^2", "d1^2*d3"];
    let expected: Vec<Monomial> = sorted(&lead.iter().map(|s| mono(s, 6)).collect::<Vec<_>>());
    assert_eq!(sorted(&data.initial.generators), expected);
}

#[test]
fn saturation_reproduces_toric_ideal_both_ways() {
    let a = hexagon();
    let gb = toric_ideal(&a).unwrap();
    assert!(gb.generators.iter().all(is_binomial));
    let listed: Vec<_> = ["d2*d5 - d1*d4", "d3*d6 - d1*d4", "d2^2*d6^2 - d1^3*d4", "d1^2*d3 - d2^2*d6"]
        .iter()
        .map(|s| dpoly(s, 6))
        .collect();
    assert!(contains_all(&gb, &listed).unwrap());
    let printed_gb = buchberger(&initial_ideal(&a, &gb, &ints(&HEX_W)).unwrap().gb.generators, &TermOrder::Grevlex).unwrap();
    assert_eq!(printed_gb, gb);
}

#[test]
fn hexagon_standard_pairs() {
    let a = hexagon();
    let gb = toric_ideal(&a).unwrap();
    let data = initial_ideal(&a, &gb, &ints(&HEX_W)).unwrap();
    let pairs = standard_pairs(&data.initial, 6);
    let printed = [
        "(0,0,0,*,*,*)", "(*,0,0,*,0,*)", "(*,*,0,*,0,0)", "(0,*,*,*,0,0)", "(*,1,0,*,0,*)", "(*,*,0,*,0,1)",
        "(1,*,1,*,0,0)", "(1,0,0,*,1,*)", "(0,0,1,*,1,0)",
    ];
    let expected = sorted(&printed.iter().map(|s| StandardPair::parse(s).unwrap()).collect::<Vec<_>>());
    assert_eq!(pairs, expected);
    assert!(verify_decomposition(&data.initial, &pairs, 6));
    let t = triangulation(&pairs);
    assert_eq!(t.c_w, vec![3]);
    assert!(t.faces_independent(&a));
    // oracle: brute-force determinants of the four facets; two triangles
    // have twice the minimal area, so the triangulation is not unimodular
    let mut dets: Vec<_> = t.facets.iter().map(|f| a.matrix().select_columns(f).det().magnitude().clone()).collect();
    dets.sort();
    assert_eq!(dets.iter().map(|d| d.to_string()).collect::<Vec<_>>(), ["1", "1", "2", "2"]);
    assert!(!is_unimodular(&t, &a).unwrap());
    assert_eq!(t.total_volume(&a).unwrap(), int(6));
}

#[test]
fn hexagon_second_weight() {
    let a = hexagon();
    let gb = toric_ideal(&a).unwrap();
    let data = initial_ideal(&a, &gb, &ints(&[5, 3, 1, 0, 0, 0])).unwrap();
    let lead = ["d2*d5", "d1*d4", "d3*d5^2", "d2*d4^2", "d1*d5^2", "d1*d3*d5", "d1*d3^2", "d1^2*d5", "d1^2*d3"];
    assert_eq!(sorted(&data.initial.generators), sorted(&lead.iter().map(|s| mono(s, 6)).collect::<Vec<_>>()));
    let pairs = standard_pairs(&data.initial, 6);
    let printed = [
        "(*,*,0,0,0,*)", "(0,0,*,*,0,*)", "(0,*,*,0,0,*)", "(0,0,0,*,*,*)", "(0,0,*,*,1,*)", "(0,*,*,1,0,*)",
        "(1,*,1,0,0,*)", "(1,0,0,0,1,*)",
    ];
    let expected = sorted(&printed.iter().map(|s| StandardPair::parse(s).unwrap()).collect::<Vec<_>>());
    assert_eq!(pairs, expected);
    let t = triangulation(&pairs);
    let delta = one_based(&[&[1, 2, 6], &[2, 3, 6], &[3, 4, 6], &[4, 5, 6], &[2, 6], &[6]]);
    assert_eq!(sorted(&t.delta), sorted(&delta));
    assert_eq!(t.c_w, vec![5]);
}

#[test]
fn grid_minor_gcd_and_lattice() {
    let a = grid3();
    assert_eq!(a.d(), 5);
    assert_eq!(a.kernel().len(), 4);
    assert_eq!(maximal_minor_gcd(a.matrix()).unwrap(), int(1));
}

#[test]
fn grid_case_one_binomials() {
    let a = grid3();
    let gb = toric_ideal(&a).unwrap();
    assert_eq!(gb.generators.len(), 9);
    let data = initial_ideal(&a, &gb, &ints(&GRID_WEIGHTS[0])).unwrap();
    let printed: [[i64; 9]; 9] = [
        [1, -1, 0, -1, 1, 0, 0, 0, 0],
        [1, -1, 0, 0, 0, 0, -1, 1, 0],
        [0, 0, 0, 1, -1, 0, -1, 1, 0],
        [1, 0, -1, -1, 0, 1, 0, 0, 0],
        [1, 0, -1, 0, 0, 0, -1, 0, 1],
        [0, 0, 0, 1, 0, -1, -1, 0, 1],
        [0, 1, -1, 0, -1, 1, 0, 0, 0],
        [0, 1, -1, 0, 0, 0, 0, -1, 1],
        [0, 0, 0, 0, 1, -1, 0, -1, 1],
    ];
    let expected = sorted(&printed.iter().map(|g| g.to_vec()).collect::<Vec<_>>());
    assert_eq!(sorted(&data.g_vectors()), expected);
    let lead = ["d1*d5", "d1*d6", "d2*d6", "d1*d8", "d4*d8", "d1*d9", "d2*d9", "d4*d9", "d5*d9"];
    assert_eq!(sorted(&data.initial.generators), sorted(&lead.iter().map(|s| mono(s, 9)).collect::<Vec<_>>()));
}

#[test]
fn grid_all_cases() {
    let a = grid3();
    let gb = toric_ideal(&a).unwrap();
    let leads: [&[&str]; 5] = [
        &["d1*d5", "d1*d6", "d2*d6", "d1*d8", "d4*d8", "d1*d9", "d2*d9", "d4*d9", "d5*d9"],
        &["d1*d5", "d1*d6", "d2*d6", "d1*d8", "d4*d8", "d1*d9", "d2*d9", "d4*d9", "d6*d8"],
        &["d2*d4", "d2*d7", "d4*d8", "d3*d4", "d1*d9", "d4*d9", "d2*d6", "d2*d9", "d5*d9"],
        &["d2*d4", "d1*d8", "d4*d8", "d3*d4", "d1*d9", "d4*d9", "d2*d6", "d2*d9", "d5*d9"],
        &["d2*d4", "d1*d8", "d4*d8", "d1*d6", "d1*d9", "d4*d9", "d2*d6", "d2*d9", "d6*d8"],
    ];
    let facets: [&[&[usize]]; 5] = [
        &[&[3, 6, 7, 8, 9], &[3, 5, 6, 7, 8], &[2, 3, 5, 7, 8], &[3, 4, 5, 6, 7], &[2, 3, 4, 5, 7], &[1, 2, 3, 4, 7]],
        &[&[3, 5, 7, 8, 9], &[2, 3, 5, 7, 8], &[3, 5, 6, 7, 9], &[3, 4, 5, 6, 7], &[2, 3, 4, 5, 7], &[1, 2, 3, 4, 7]],
        &[&[1, 2, 3, 5, 8], &[1, 3, 5, 7, 8], &[3, 5, 6, 7, 8], &[1, 3, 5, 6, 7], &[3, 6, 7, 8, 9], &[1, 4, 5, 6, 7]],
        &[&[2, 3, 5, 7, 8], &[3, 5, 6, 7, 8], &[3, 6, 7, 8, 9], &[1, 2, 3, 5, 7], &[1, 3, 5, 6, 7], &[1, 4, 5, 6, 7]],
        &[&[3, 5, 7, 8, 9], &[2, 3, 5, 7, 8], &[1, 2, 3, 5, 7], &[3, 5, 6, 7, 9], &[3, 4, 5, 6, 7], &[1, 3, 4, 5, 7]],
    ];
    let c_w: [&[usize]; 5] = [&[3, 7], &[3, 7], &[], &[7], &[3, 5, 7]];
    for k in 0..5 {
        let data = initial_ideal(&a, &gb, &ints(&GRID_WEIGHTS[k])).unwrap();
        let mut expected: Vec<Monomial> = leads[k].iter().map(|s| mono(s, 9)).collect();
        if k == 2 {
            // the cubic ∂1∂6∂8 − ∂3∂5∂7 has weight 19 > 13 and its lead is not
            // divisible by any listed quadric
            expected.push(mono("d1*d6*d8", 9));
        }
        assert_eq!(sorted(&data.initial.generators), sorted(&expected), "case {}", k + 1);
        let pairs = standard_pairs(&data.initial, 9);
        assert!(verify_decomposition(&data.initial, &pairs, 9));
        let t = triangulation(&pairs);
        assert_eq!(sorted(&t.facets), sorted(&one_based(facets[k])), "case {}", k + 1);
        assert_eq!(t.c_w, one_based(&[c_w[k]])[0], "case {}", k + 1);
        assert!(is_unimodular(&t, &a).unwrap());
        assert!(in_core(&ints(&[0; 6]), &t, &a));
    }
}

#[test]
fn grid_core_membership_of_half_parameter() {
    let a = grid3();
    let gb = toric_ideal(&a).unwrap();
    let half = rats(&["1/2"; 6]);
    let core = |k: usize| {
        let data = initial_ideal(&a, &gb, &ints(&GRID_WEIGHTS[k])).unwrap();
        let t = triangulation(&standard_pairs(&data.initial, 9));
        in_core(&half, &t, &a)
    };
    assert!(!core(0));
    assert!(core(4));
}

#[test]
fn weight_order_used_is_generic_refinement() {
    let w = WeightOrder::from_ints(&GRID_WEIGHTS[4]).unwrap();
    assert_eq!(w.weight(&mono("d2*d4", 9)), 5);
}
