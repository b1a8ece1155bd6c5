//! Order-preserving maps between finite ordinals `[k] = {0, ..., k}`.
//!
//! A simplicial operator `θ^*: S_m -> S_k` is represented by its underlying
//! map `θ: [k] -> [m]`; faces `d_i` come from cofaces `δ_i` and degeneracies
//! `s_j` from codegeneracies `σ_j`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monotone {
    values: Vec<usize>,
    target: usize,
}

impl Monotone {
    /// Panics if `values` is empty, decreasing somewhere, or leaves `[target]`.
    pub fn new(values: Vec<usize>, target: usize) -> Self {
        assert!(!values.is_empty(), "monotone map needs a nonempty domain");
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "not monotone: {values:?}");
        assert!(*values.last().unwrap() <= target, "value exceeds target {target}");
        Self { values, target }
    }

    pub fn identity(n: usize) -> Self {
        Self { values: (0..=n).collect(), target: n }
    }

    /// `δ_i: [n-1] -> [n]`, skipping `i`.
    pub fn coface(i: usize, n: usize) -> Self {
        assert!(n >= 1 && i <= n);
        Self { values: (0..n).map(|x| if x < i { x } else { x + 1 }).collect(), target: n }
    }

    /// `σ_j: [n+1] -> [n]`, hitting `j` twice.
    pub fn codegeneracy(j: usize, n: usize) -> Self {
        assert!(j <= n);
        Self { values: (0..=n + 1).map(|x| if x <= j { x } else { x - 1 }).collect(), target: n }
    }

    /// The injection `[k] -> [n]` whose image is `image` (sorted, distinct).
    pub fn inclusion(image: &[usize], n: usize) -> Self {
        assert!(image.windows(2).all(|w| w[0] < w[1]));
        Self::new(image.to_vec(), n)
    }

    /// The surjection `[m] -> [n]` whose repeated positions `j` (with
    /// `f(j) = f(j+1)`) are exactly `repeats`.
    pub fn from_repeats(repeats: &[usize], m: usize) -> Self {
        let mut values = Vec::with_capacity(m + 1);
        let mut cur = 0usize;
        values.push(0);
        for j in 0..m {
            if !repeats.contains(&j) {
                cur += 1;
            }
            values.push(cur);
        }
        Self { values, target: cur }
    }

    pub fn source_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Monotone) -> Monotone {
        assert_eq!(other.target, self.source_dim(), "composition shape mismatch");
        Monotone { values: other.values.iter().map(|&x| self.values[x]).collect(), target: self.target }
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0 && *self.values.last().unwrap() == self.target && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.source_dim() == self.target && self.is_injective()
    }

    /// Positions `j` with `f(j) = f(j+1)`, ascending.
    pub fn repeats(&self) -> Vec<usize> {
        (0..self.source_dim()).filter(|&j| self.values[j] == self.values[j + 1]).collect()
    }

    /// Target points outside the image, ascending.
    pub fn missing(&self) -> Vec<usize> {
        (0..=self.target).filter(|v| self.values.binary_search(v).is_err()).collect()
    }

    /// Epi-mono factorization `self = mono ∘ epi`.
    pub fn epi_mono(&self) -> (Monotone, Monotone) {
        let mut image = self.values.clone();
        image.dedup();
        let epi = Monotone { values: self.values.iter().map(|v| image.binary_search(v).unwrap()).collect(), target: image.len() - 1 };
        let mono = Monotone { values: image, target: self.target };
        (epi, mono)
    }

    /// Pushforward on barycentric coordinates, `Δ^k -> Δ^m`.
    pub fn push_coords(&self, t: &[f64]) -> Vec<f64> {
        assert_eq!(t.len(), self.values.len());
        let mut out = vec![0.0; self.target + 1];
        for (i, &v) in self.values.iter().enumerate() {
            out[v] += t[i];
        }
        out
    }

    /// All monotone maps `[k] -> [m]` in lexicographic order.
    pub fn all(k: usize, m: usize) -> Vec<Monotone> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; k + 1];
        loop {
            out.push(Monotone { values: cur.clone(), target: m });
            let mut pos = k as isize;
            while pos >= 0 && cur[pos as usize] == m {
                pos -= 1;
            }
            if pos < 0 {
                break;
            }
            let v = cur[pos as usize] + 1;
            for x in cur.iter_mut().skip(pos as usize) {
                *x = v;
            }
        }
        out
    }
}

/// Subsets of `0..n` of size `k`, each ascending, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}
