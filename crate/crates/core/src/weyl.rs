//! Symmetric-group combinatorics for sl(n): permutations, reduced words,
//! parabolic data for a subset `J` of the simple roots.
//!
//! Permutations are stored in one-line notation with 1-based values and
//! compose as functions: `(w ∘ v)(i) = w(v(i))`. The simple reflection
//! `s_i` is the transposition `(i, i+1)`, a word `s_{a_1} ... s_{a_k}`
//! evaluates to `s_{a_1} ∘ ... ∘ s_{a_k}`, and `w` sends the root
//! `e_i - e_j` to `e_{w(i)} - e_{w(j)}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    window: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Self { window: (1..=n).collect() }
    }

    pub fn from_window(window: Vec<usize>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &x in &window {
            if x == 0 || x > n || seen[x] {
                return Err(Error::OutOfRange(format!("{window:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Self { window })
    }

    /// Evaluates a word of simple reflections on `[n]`.
    pub fn from_word(n: usize, word: &[u8]) -> Result<Self> {
        let mut w = Self::identity(n);
        for &a in word {
            let a = a as usize;
            if a == 0 || a >= n {
                return Err(Error::OutOfRange(format!("letter {a} for n={n}")));
            }
            w.window.swap(a - 1, a);
        }
        Ok(w)
    }

    /// The longest element `i -> n+1-i`.
    pub fn longest(n: usize) -> Self {
        Self { window: (1..=n).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[usize] {
        &self.window
    }

    pub fn apply(&self, i: usize) -> usize {
        self.window[i - 1]
    }

    pub fn compose(&self, v: &Perm) -> Perm {
        Perm { window: v.window.iter().map(|&x| self.window[x - 1]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.window.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Perm { window: inv }
    }

    /// Number of inversions, which is the Coxeter length.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// A reduced word for `self` obtained by bubble sort.
    pub fn reduced_word(&self) -> Vec<u8> {
        // Sorting `w` by adjacent swaps on positions gives w ∘ s_{b_1} ∘ ... = id,
        // so w = s_{b_k} ∘ ... ∘ s_{b_1}.
        let mut w = self.window.clone();
        let mut swaps = Vec::new();
        loop {
            let mut changed = false;
            for i in 0..w.len().saturating_sub(1) {
                if w[i] > w[i + 1] {
                    w.swap(i, i + 1);
                    swaps.push((i + 1) as u8);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        swaps.reverse();
        swaps
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm { window: cur.clone() });
                return;
            }
            for x in 1..=n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn is_reduced(n: usize, word: &[u8]) -> Result<bool> {
    Ok(Perm::from_word(n, word)?.length() == word.len())
}

/// The roots `beta_k = s_{a_1} ... s_{a_{k-1}}(alpha_{a_k})`, each returned
/// as the pair `(i, j)` with `beta_k = e_i - e_j`.
pub fn roots_along(n: usize, word: &[u8]) -> Result<Vec<(usize, usize)>> {
    let mut w = Perm::identity(n);
    let mut out = Vec::with_capacity(word.len());
    for &a in word {
        let a = a as usize;
        if a == 0 || a >= n {
            return Err(Error::OutOfRange(format!("letter {a} for n={n}")));
        }
        let (i, j) = (w.apply(a), w.apply(a + 1));
        if i > j {
            return Err(Error::NotReduced(word.to_vec()));
        }
        out.push((i, j));
        w.window.swap(a - 1, a);
    }
    Ok(out)
}

/// Root `e_i - e_j` (i < j) in simple-root coordinates, length `n - 1`.
pub fn root_vector(n: usize, i: usize, j: usize) -> Vec<i32> {
    let mut v = vec![0; n - 1];
    for x in v.iter_mut().take(j - 1).skip(i - 1) {
        *x = 1;
    }
    v
}

/// Everything derived from `(n, J)`.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    pub n: usize,
    pub j: Vec<usize>,
    /// `r[m]` for `m` in `1..=n`; index 0 unused.
    pub r: Vec<usize>,
    /// Phi_J in the convex order of the canonical reduced word.
    pub phi: Vec<(usize, usize)>,
    pos: HashMap<(usize, usize), usize>,
    /// Blocks `C_i` as sorted index lists, in increasing order.
    pub blocks: Vec<Vec<usize>>,
    /// `block_of[m]` is the index into `blocks` of the block containing `m`.
    pub block_of: Vec<usize>,
    pub w0: Perm,
    pub w0j: Perm,
    pub wj: Perm,
    pub wj_inv: Perm,
    pub wj_word: Vec<u8>,
    pub jtilde: Vec<usize>,
    /// `m_fun[p] = min { r in J ∪ {n} : p <= r }`.
    pub m_fun: Vec<usize>,
    /// `n_fun[p] = 1 + #{ r in J : r < p }`.
    pub n_fun: Vec<usize>,
}

impl ParabolicData {
    pub fn new(n: usize, j: &[usize]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParabolic(format!("n must be at least 2, got {n}")));
        }
        if n > 60 {
            return Err(Error::InvalidParabolic(format!("n={n} is too large")));
        }
        let set: BTreeSet<usize> = j.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&x| x == 0 || x >= n) {
            return Err(Error::InvalidParabolic(format!("{bad} is not in [1, {}]", n - 1)));
        }
        let jv: Vec<usize> = set.into_iter().collect();

        let mut r = vec![0; n + 1];
        for (m, slot) in r.iter_mut().enumerate().skip(1) {
            *slot = jv.iter().copied().filter(|&k| k < m).max().unwrap_or(0);
        }

        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0; n + 1];
        let mut start = 1;
        for &cut in jv.iter().chain(std::iter::once(&n)) {
            blocks.push((start..=cut).collect());
            for slot in block_of.iter_mut().take(cut + 1).skip(start) {
                *slot = blocks.len() - 1;
            }
            start = cut + 1;
        }

        let w0 = Perm::longest(n);
        let mut w0j_window = vec![0; n];
        for b in &blocks {
            let (lo, hi) = (b[0], *b.last().unwrap());
            for &x in b {
                w0j_window[x - 1] = lo + hi - x;
            }
        }
        let w0j = Perm::from_window(w0j_window)?;
        let wj = w0j.compose(&w0);
        let wj_inv = wj.inverse();

        let mut wj_word = Vec::new();
        for k in (1..=jv.len()).rev() {
            wj_word.extend(sk_word_raw(n, &jv, k));
        }
        let phi = roots_along(n, &wj_word)?;
        let pos = phi.iter().enumerate().map(|(p, &x)| (x, p)).collect();

        let mut m_fun = vec![0; n + 1];
        let mut n_fun = vec![0; n + 1];
        for p in 1..=n {
            m_fun[p] = jv.iter().copied().chain(std::iter::once(n)).filter(|&x| p <= x).min().unwrap();
            n_fun[p] = 1 + jv.iter().filter(|&&x| x < p).count();
        }
        let mut jtilde: Vec<usize> = jv.iter().map(|&x| n - x).collect();
        jtilde.sort_unstable();

        Ok(Self {
            n,
            j: jv,
            r,
            phi,
            pos,
            blocks,
            block_of,
            w0,
            w0j,
            wj,
            wj_inv,
            wj_word,
            jtilde,
            m_fun,
            n_fun,
        })
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pos.contains_key(&(i, j))
    }

    /// Convex position of `(i, j)` (0-based).
    pub fn position(&self, i: usize, j: usize) -> Result<usize> {
        self.pos.get(&(i, j)).copied().ok_or(Error::NotInPhi(i, j))
    }

    /// The block `C_i` containing `i`.
    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[self.block_of[i]]
    }

    /// The factor `S_k` of the canonical reduced word (`k` in `1..=|J|`).
    pub fn sk_word(&self, k: usize) -> Result<Vec<u8>> {
        if k == 0 || k > self.j.len() {
            return Err(Error::OutOfRange(format!("k={k} with |J|={}", self.j.len())));
        }
        Ok(sk_word_raw(self.n, &self.j, k))
    }

    /// `Φ_J` as the set closed under moving up a row or right a column,
    /// generated from the simple roots in `J`.
    pub fn closure_of_simple(&self) -> BTreeSet<(usize, usize)> {
        let mut set: BTreeSet<(usize, usize)> = self.j.iter().map(|&k| (k, k + 1)).collect();
        let mut stack: Vec<(usize, usize)> = set.iter().copied().collect();
        while let Some((i, j)) = stack.pop() {
            let mut push = |p: (usize, usize)| {
                if set.insert(p) {
                    stack.push(p);
                }
            };
            if i > 1 {
                push((i - 1, j));
            }
            if j < self.n {
                push((i, j + 1));
            }
        }
        set
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "J": self.j,
            "r": (1..=self.n).map(|m| self.r[m]).collect::<Vec<_>>(),
            "phi": self.phi.iter().map(|&(i, j)| vec![i, j]).collect::<Vec<_>>(),
            "w0": self.w0.window(),
            "w0J": self.w0j.window(),
            "wJ": self.wj.window(),
            "wJ_word": self.wj_word,
        })
    }
}

fn sk_word_raw(n: usize, j: &[usize], k: usize) -> Vec<u8> {
    let ik = j[k - 1];
    let iprev = if k >= 2 { j[k - 2] } else { 0 };
    let mut out = Vec::new();
    for p in 0..ik - iprev {
        for a in (ik - p)..=(n - 1 - p) {
            out.push(a as u8);
        }
    }
    out
}

pub fn build_parabolic(n: usize, j: &[usize]) -> Result<ParabolicData> {
    ParabolicData::new(n, j)
}

/// All subsets of `[n-1]`.
pub fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    let m = n - 1;
    (0..1u32 << m)
        .map(|mask| (1..=m).filter(|&i| mask & (1 << (i - 1)) != 0).collect())
        .collect()
}
