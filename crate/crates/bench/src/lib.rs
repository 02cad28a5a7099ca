//! Benchmark inputs shared by the criterion benches.

use gkzf_core::exact::Rat;
use gkzf_core::toric::ConfigMatrix;

pub fn hexagon() -> ConfigMatrix {
    ConfigMatrix::from_rows(&[vec![1, 1, 1, 1, 1, 1], vec![0, 1, 1, 0, -1, -1], vec![-1, -1, 0, 1, 1, 0]]).unwrap()
}

/// Columns `e_i + e_{M+j}`.
pub fn grid(m: usize, n: usize) -> ConfigMatrix {
    let mut rows = vec![vec![0i64; m * n]; m + n];
    for i in 0..m {
        for j in 0..n {
            rows[i][i * n + j] = 1;
            rows[m + j][i * n + j] = 1;
        }
    }
    ConfigMatrix::from_rows(&rows).unwrap()
}

pub fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let a = grid(3, 3);
        assert_eq!((a.rows(), a.n(), a.d()), (6, 9, 5));
        assert_eq!(hexagon().d(), 3);
    }
}
