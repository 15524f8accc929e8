//! Deterministic reductions.
//!
//! `pairwise_sum` splits the slice at `len / 2` recursively and adds leaves
//! of at most [`LEAF`] terms left to right. The tree depends only on the
//! slice length, so results are bit-identical for any thread count as long
//! as terms are collected in index order first.

use num_complex::Complex64;

pub const LEAF: usize = 8;

pub fn pairwise_sum(terms: &[Complex64]) -> Complex64 {
    if terms.len() <= LEAF {
        return terms.iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b);
    }
    let (lo, hi) = terms.split_at(terms.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}

pub fn pairwise_sum_real(terms: &[f64]) -> f64 {
    if terms.len() <= LEAF {
        return terms.iter().sum();
    }
    let (lo, hi) = terms.split_at(terms.len() / 2);
    pairwise_sum_real(lo) + pairwise_sum_real(hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_on_small_input() {
        let v: Vec<Complex64> = (0..5).map(|i| Complex64::new(i as f64, -(i as f64))).collect();
        assert_eq!(pairwise_sum(&v), Complex64::new(10.0, -10.0));
        assert_eq!(pairwise_sum(&[]), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn beats_naive_on_long_input() {
        let v = vec![Complex64::new(0.1, 0.0); 1 << 20];
        let naive: f64 = v.iter().map(|c| c.re).sum();
        let pw = pairwise_sum(&v).re;
        let exact = 0.1 * (1u64 << 20) as f64;
        assert!((pw - exact).abs() <= (naive - exact).abs());
        assert!((pw - exact).abs() < 1e-9);
    }
}
