//! Boolean-matrix engine for shortest qualifying cycles in directed graphs.
//!
//! A family of `m` bit matrices tracks, per residue `r`, which vertex pairs
//! are joined by a walk of length `ℓ ≡ r (mod m)` with `0 < ℓ ≤ k`. Families
//! compose: gluing a length-`k₁` family to a length-`k₂` family yields the
//! length-`k₁+k₂` family, so the family for any bound is reachable by
//! doubling. Binary search over the bound finds `k_min`, the least length of
//! a closed walk whose residue lies in the target set; when `0 ∉ S` and the
//! complement of `S` is closed under addition mod `m`, that closed walk is
//! necessarily a simple cycle, which a product-graph BFS then reconstructs.
//!
//! Matrices are row-major bit-packed; multiplication is cubic with
//! word-parallel row OR-accumulation and deliberately takes no shortcuts
//! (no saturation early-out), so its cost depends on size and density
//! alone. Memory across the power table grows as `m·n²·log n` bits, which
//! motivates the dimension cap; the BFS engine in [`crate::walks`] covers
//! larger graphs.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::classify::{closure_counterexample, ConditionUnsupported, ResidueSet, ResidueSetError};
use crate::graph::{CycleWitness, Graph, GraphKind, KindMismatch};
use crate::walks::ProductGraph;

/// Largest dimension the matrix engine accepts.
pub const MAX_MATRIX_VERTICES: usize = 4096;

/// Failure modes of the matrix engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    /// The engine is directed-only.
    WrongKind(KindMismatch),
    /// The modulus is out of range.
    InvalidModulus(ResidueSetError),
    /// The graph exceeds [`MAX_MATRIX_VERTICES`].
    TooLarge {
        /// Offending vertex count.
        n: usize,
    },
    /// `(S, m)` violates the precondition under which the shortest
    /// qualifying closed walk is guaranteed to be a simple cycle.
    Unsupported(ConditionUnsupported),
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::WrongKind(e) => e.fmt(f),
            MatrixError::InvalidModulus(e) => e.fmt(f),
            MatrixError::TooLarge { n } => {
                write!(f, "graph has {n} vertices, matrix engine cap is {MAX_MATRIX_VERTICES}")
            }
            MatrixError::Unsupported(e) => e.fmt(f),
        }
    }
}

/// Square boolean matrix, bit-packed row-major into 64-bit words.
///
/// Padding bits past column `n − 1` are zero in every row word; all
/// operations preserve this, which makes `==` structural equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    /// The all-zero matrix.
    pub fn zero(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BoolMatrix { n, words_per_row, bits: vec![0; n * words_per_row] }
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut out = Self::zero(n);
        for i in 0..n {
            out.set(i, i);
        }
        out
    }

    /// Adjacency matrix of `g`; symmetric when `g` is undirected.
    pub fn adjacency(g: &Graph) -> Self {
        let mut out = Self::zero(g.n());
        for &(u, v) in g.edges() {
            out.set(u, v);
            if g.kind() == GraphKind::Undirected {
                out.set(v, u);
            }
        }
        out
    }

    /// Matrix dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "entry ({i},{j}) outside {0}x{0} matrix", self.n);
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    /// Sets the entry at row `i`, column `j`.
    pub fn set(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n, "entry ({i},{j}) outside {0}x{0} matrix", self.n);
        self.bits[i * self.words_per_row + j / 64] |= 1 << (j % 64);
    }

    /// True when no entry is set.
    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Bitwise OR of `rhs` into `self`.
    ///
    /// # Panics
    /// On dimension mismatch.
    pub fn or_assign(&mut self, rhs: &Self) {
        assert_eq!(self.n, rhs.n, "dimension mismatch: {} vs {}", self.n, rhs.n);
        for (a, b) in self.bits.iter_mut().zip(&rhs.bits) {
            *a |= b;
        }
    }

    /// Boolean matrix product: `out(i,j) = ⋁ₜ self(i,t) ∧ rhs(t,j)`.
    ///
    /// For each set bit `t` of row `i`, row `t` of `rhs` is OR-accumulated
    /// word by word. The loop runs to completion even once a row saturates,
    /// keeping the cost a function of size and density only.
    ///
    /// # Panics
    /// On dimension mismatch.
    pub fn bool_mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch: {} vs {}", self.n, rhs.n);
        let w = self.words_per_row;
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            let (row, acc) = (&self.bits[i * w..(i + 1) * w], &mut out.bits[i * w..(i + 1) * w]);
            for (wi, &word) in row.iter().enumerate() {
                let mut rest = word;
                while rest != 0 {
                    let t = wi * 64 + rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    for (a, b) in acc.iter_mut().zip(&rhs.bits[t * w..(t + 1) * w]) {
                        *a |= b;
                    }
                }
            }
        }
        out
    }
}

/// Walk-existence matrices per residue class, up to a length bound.
///
/// `mats[r](i, j)` is set exactly when some walk `i → j` has length `ℓ`
/// with `0 < ℓ ≤ k` and `ℓ ≡ r (mod m)`. Families are monotone in `k`
/// bit for bit, and immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkMatrixFamily {
    k: u64,
    m: u32,
    mats: Vec<BoolMatrix>,
}

impl WalkMatrixFamily {
    fn validated(m: u32) -> Result<(), MatrixError> {
        ResidueSet::empty(m).map_err(MatrixError::InvalidModulus)?;
        Ok(())
    }

    /// The `k = 0` family: all matrices zero. Neutral under [`Self::combine`].
    pub fn empty(n: usize, m: u32) -> Result<Self, MatrixError> {
        Self::validated(m)?;
        Ok(WalkMatrixFamily { k: 0, m, mats: (0..m).map(|_| BoolMatrix::zero(n)).collect() })
    }

    /// The `k = 1` family: the adjacency matrix sits at residue `1 mod m`,
    /// every other matrix is zero.
    pub fn single_step(g: &Graph, m: u32) -> Result<Self, MatrixError> {
        if g.kind() != GraphKind::Directed {
            return Err(MatrixError::WrongKind(KindMismatch {
                expected: GraphKind::Directed,
                found: g.kind(),
            }));
        }
        Self::validated(m)?;
        let mut fam = Self::empty(g.n(), m)?;
        fam.k = 1;
        fam.mats[1 % m as usize] = BoolMatrix::adjacency(g);
        Ok(fam)
    }

    /// Length bound `k`.
    pub fn k(&self) -> u64 {
        self.k
    }

    /// The modulus.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// The matrix for residue `r`.
    pub fn mat(&self, r: u32) -> &BoolMatrix {
        &self.mats[r as usize]
    }

    /// Glues two families into the family for bound `k₁ + k₂`:
    ///
    /// ```text
    /// out[r] = ⋁ᵢ (self[i] ∧ rhs[(r−i) mod m]) ∨ self[r] ∨ rhs[r]
    /// ```
    ///
    /// A walk of length `ℓ ≤ k₁ + k₂` either fits one operand's bound or
    /// splits into a prefix of length exactly `k₁` and a suffix of length
    /// `ℓ − k₁ ≤ k₂`, so the union is exact.
    ///
    /// # Panics
    /// When dimensions or moduli differ.
    pub fn combine(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m, "modulus mismatch: {} vs {}", self.m, rhs.m);
        let m = self.m as usize;
        let mut mats = Vec::with_capacity(m);
        for r in 0..m {
            let mut acc = self.mats[r].clone();
            acc.or_assign(&rhs.mats[r]);
            for i in 0..m {
                acc.or_assign(&self.mats[i].bool_mul(&rhs.mats[(r + m - i) % m]));
            }
            mats.push(acc);
        }
        WalkMatrixFamily { k: self.k + rhs.k, m: self.m, mats }
    }

    /// Lowest-index diagonal hit over the residues of `rs`: the first
    /// `(i, r)` by vertex order, then residue order, with `mats[r](i, i)`
    /// set. A hit means a closed walk of length `≤ k` and residue in `rs`.
    pub fn diagonal_hit(&self, rs: &ResidueSet) -> Option<(usize, u32)> {
        let n = self.mats.first().map_or(0, BoolMatrix::n);
        for i in 0..n {
            for r in rs.members() {
                if self.mats[r as usize].get(i, i) {
                    return Some((i, r));
                }
            }
        }
        None
    }
}

/// Result of [`kmin_search`]: the least closed-walk length with residue in
/// the target set, together with where the diagonal lit up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KminHit {
    /// Least `k ≤ n` such that some closed walk of length `k` has residue
    /// in the target set.
    pub k_min: usize,
    /// Lowest vertex index with a qualifying closed walk of length `k_min`.
    pub start: usize,
    /// Residue of the hit; always `k_min mod m`.
    pub residue: u32,
}

fn gate(g: &Graph) -> Result<(), MatrixError> {
    if g.kind() != GraphKind::Directed {
        return Err(MatrixError::WrongKind(KindMismatch {
            expected: GraphKind::Directed,
            found: g.kind(),
        }));
    }
    if g.n() > MAX_MATRIX_VERTICES {
        return Err(MatrixError::TooLarge { n: g.n() });
    }
    Ok(())
}

/// Binary search for the least `k ≤ n` whose walk family has a diagonal
/// hit on a residue of `rs`, or `None` when no closed walk of length at
/// most `n` qualifies.
///
/// Power-of-two families are built by doubling and retained, stopping at
/// the first power whose diagonal already hits: families are monotone in
/// `k`, so that power brackets `k_min` and larger powers are dead weight.
/// The search then descends bit by bit, keeping the family for the current
/// miss bound and gluing powers onto it, so no family is computed twice.
/// Doubling past `n` without a hit proves no closed walk qualifies at all,
/// because a shortest qualifying closed walk that is a cycle has at most
/// `n` edges.
pub fn kmin_search(g: &Graph, rs: &ResidueSet) -> Result<Option<KminHit>, MatrixError> {
    gate(g)?;
    let n = g.n();
    if n == 0 || rs.is_empty() {
        return Ok(None);
    }

    let mut powers = vec![WalkMatrixFamily::single_step(g, rs.m())
        .expect("graph and modulus were vetted")];
    while powers.last().expect("nonempty").diagonal_hit(rs).is_none() {
        let top = powers.last().expect("nonempty");
        if top.k() >= n as u64 {
            return Ok(None);
        }
        powers.push(top.combine(top));
    }

    // Largest k0 ≤ n with no hit; monotonicity makes the descent exact.
    let mut cur = WalkMatrixFamily::empty(n, rs.m()).expect("modulus was vetted");
    let mut k0 = 0usize;
    for j in (0..powers.len()).rev() {
        let step = 1usize << j;
        if k0 + step > n {
            continue;
        }
        let cand = cur.combine(&powers[j]);
        if cand.diagonal_hit(rs).is_none() {
            k0 += step;
            cur = cand;
        }
    }
    if k0 == n {
        return Ok(None);
    }

    let hit_fam = cur.combine(&powers[0]);
    let (start, residue) =
        hit_fam.diagonal_hit(rs).expect("k0 + 1 is the first bound with a hit");
    let k_min = k0 + 1;
    debug_assert_eq!(residue, (k_min % rs.m() as usize) as u32);
    Ok(Some(KminHit { k_min, start, residue }))
}

/// Shortest simple cycle whose length mod `m` lies in `rs`, or `None`.
///
/// Requires `0 ∉ rs` with the complement of `rs` closed under addition mod
/// `m`. Under that precondition the shortest qualifying closed walk cannot
/// decompose (a decomposition would contain a strictly shorter qualifying
/// closed walk), so the length found by [`kmin_search`] is a cycle length,
/// and a product-graph BFS from the hit vertex recovers the cycle itself.
pub fn shortest_cycle_mod(g: &Graph, rs: &ResidueSet) -> Result<Option<CycleWitness>, MatrixError> {
    if rs.contains(0) {
        return Err(MatrixError::Unsupported(ConditionUnsupported::ZeroInSet));
    }
    if let Some(w) = closure_counterexample(rs) {
        return Err(MatrixError::Unsupported(ConditionUnsupported::NotComplementClosed(w)));
    }
    let Some(hit) = kmin_search(g, rs)? else {
        return Ok(None);
    };
    let pg = ProductGraph::new(g, rs.m()).expect("graph and modulus were vetted");
    let mut walk = pg
        .shortest_return_walk(hit.start, 1 << hit.residue)
        .expect("a diagonal hit implies a product-graph return");
    debug_assert_eq!(walk.len() - 1, hit.k_min);
    walk.pop();
    Ok(Some(CycleWitness { vertices: walk }))
}
