//! Brute-force oracles. Each one recomputes a quantity from its definition
//! without going through the library code path it is used to check.

#![allow(dead_code)]

/// Every 0-1 vector of length `n`, in lexicographic order.
pub fn all_binary(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u32..1 << n).map(move |mask| (0..n).map(|j| ((mask >> (n - 1 - j)) & 1) as u8).collect())
}

/// Maximum of `Σ f_j x_j` over 0-1 vectors with `Σ_{j∈block} x_j = m` for
/// every block (1-based members).
pub fn brute_max_linear(f: &[f64], blocks: &[Vec<usize>], rhs: &[usize]) -> f64 {
    all_binary(f.len())
        .filter(|x| feasible(x, blocks, rhs))
        .map(|x| {
            x.iter()
                .zip(f)
                .map(|(&b, fj)| f64::from(b) * fj)
                .sum::<f64>()
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Minimum of `Σ |x_j − x⁰_j|` (unit weights) over the same feasible set.
pub fn brute_min_l1(anchor: &[u8], blocks: &[Vec<usize>], rhs: &[usize]) -> usize {
    all_binary(anchor.len())
        .filter(|x| feasible(x, blocks, rhs))
        .map(|x| x.iter().zip(anchor).filter(|(a, b)| a != b).count())
        .min()
        .expect("non-empty feasible set")
}

pub fn feasible(x: &[u8], blocks: &[Vec<usize>], rhs: &[usize]) -> bool {
    blocks
        .iter()
        .zip(rhs)
        .all(|(b, &m)| b.iter().filter(|&&j| x[j - 1] == 1).count() == m)
}

/// Best achievable minimum distance to `values` over the grid
/// `lo, lo + step, …, hi`.
pub fn grid_maxmin(values: &[f64], lo: f64, hi: f64, steps: usize) -> (f64, f64) {
    let step = (hi - lo) / steps as f64;
    (0..=steps)
        .map(|i| {
            let x = lo + i as f64 * step;
            (x, min_dist(values, x))
        })
        .fold((lo, f64::NEG_INFINITY), |best, cand| {
            if cand.1 > best.1 {
                cand
            } else {
                best
            }
        })
}

pub fn min_dist(values: &[f64], x: f64) -> f64 {
    values
        .iter()
        .map(|v| (x - v).abs())
        .fold(f64::INFINITY, f64::min)
}

/// 1-based positions flipped by the paired-flip rule, by scanning every
/// position: `p` is flipped iff `p ≥ q`, `(p − q) mod h ∈ {0, 1}` and the
/// whole pair `(p', p'+1)` it belongs to fits in `1..=n`.
pub fn paired_flip_set(n: usize, h: usize, q: usize) -> Vec<usize> {
    (1..=n)
        .filter(|&p| {
            if p < q {
                return false;
            }
            let r = (p - q) % h;
            let start = p - r;
            r <= 1 && start < n
        })
        .collect()
}

/// `P(h)` of the identity straight from its definition.
pub fn interleaved_identity(n: usize, h: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for s in (1..=h).rev() {
        let mut r = 0;
        while s + r * h <= n {
            out.push(s + r * h);
            r += 1;
        }
    }
    out
}

pub fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}
