//! Constant dimension codes: spreads, full Grassmannians, the lifted code of
//! size `q^m + 1` in G_q(2m-1, m), greedy search, and file import.
//!
//! Words are kept sorted in canonical order (lexicographic on the RREF rows),
//! and a word's position in that order is its message index.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::subspace::{enumerate_grassmannian, Subspace, DEFAULT_GRASSMANNIAN_CAP};

/// Pair count above which pairwise distance checks are skipped and the code
/// is flagged unverified.
pub const DEFAULT_VERIFY_PAIR_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Spread,
    Grassmannian,
    LiftedRank,
    Search,
    File,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Spread => "spread",
            Provenance::Grassmannian => "grassmannian",
            Provenance::LiftedRank => "lifted-rank",
            Provenance::Search => "search",
            Provenance::File => "file",
        })
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "spread" => Provenance::Spread,
            "grassmannian" => Provenance::Grassmannian,
            "lifted-rank" => Provenance::LiftedRank,
            "search" => Provenance::Search,
            "file" => Provenance::File,
            other => return Err(Error::InvalidParameter(format!("unknown provenance tag {other:?}"))),
        })
    }
}

/// An `[n, d, k]_q` code in the Grassmannian.
#[derive(Debug, Clone)]
pub struct ConstantDimensionCode {
    field: Arc<FieldContext>,
    k: usize,
    declared_d: usize,
    words: Vec<Subspace>,
    tag: Provenance,
    verified: bool,
}

impl ConstantDimensionCode {
    /// Checks dimensions and distinctness and sorts the words. The distance
    /// claim is not checked here; see [`verify`](Self::verify).
    pub fn new(
        field: Arc<FieldContext>,
        k: usize,
        declared_d: usize,
        mut words: Vec<Subspace>,
        tag: Provenance,
    ) -> Result<Self> {
        if k > field.n() {
            return Err(Error::InvalidParameter(format!("k={k} exceeds n={}", field.n())));
        }
        if !declared_d.is_multiple_of(2) || declared_d > 2 * k {
            return Err(Error::InvalidParameter(format!(
                "declared distance {declared_d} must be even and at most 2k={}",
                2 * k
            )));
        }
        for w in &words {
            if w.q() != field.q() || w.n() != field.n() {
                return Err(Error::SpaceMismatch("word outside the code's ambient space".into()));
            }
            if w.dim() != k {
                return Err(Error::InvalidParameter(format!(
                    "word of dimension {} in a code of dimension {k}",
                    w.dim()
                )));
            }
        }
        words.sort();
        if let Some(i) = words.windows(2).position(|p| p[0] == p[1]) {
            return Err(Error::DuplicateWord(i + 1));
        }
        Ok(ConstantDimensionCode { field, k, declared_d, words, tag, verified: false })
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.field.n()
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn declared_d(&self) -> usize {
        self.declared_d
    }

    pub fn words(&self) -> &[Subspace] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn tag(&self) -> Provenance {
        self.tag
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Minimum pairwise subspace distance with a witness pair, or `None` for
    /// fewer than two words.
    pub fn min_distance(&self) -> Option<(usize, usize, usize)> {
        let words = &self.words;
        (0..words.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                ((i + 1)..words.len()).map(move |j| {
                    let d = words[i].distance(&words[j]).expect("same ambient space");
                    (d, i, j)
                })
            })
            .min()
            .map(|(d, i, j)| (i, j, d))
    }

    /// Checks the declared distance exhaustively. Returns `Ok(false)` without
    /// checking when the pair count exceeds `pair_cap`.
    pub fn verify(&mut self, pair_cap: u64) -> Result<bool> {
        // distinct subspaces of equal dimension are always at distance >= 2
        if self.declared_d <= 2 {
            self.verified = true;
            return Ok(true);
        }
        let m = self.words.len() as u64;
        if m * m.saturating_sub(1) / 2 > pair_cap {
            self.verified = false;
            return Ok(false);
        }
        if let Some((i, j, d)) = self.min_distance() {
            if d < self.declared_d {
                return Err(Error::DistanceViolation {
                    first: i,
                    second: j,
                    distance: d as u64,
                    declared: self.declared_d as u64,
                });
            }
        }
        self.verified = true;
        Ok(true)
    }

    fn verified_default(mut self) -> Result<Self> {
        self.verify(DEFAULT_VERIFY_PAIR_CAP)?;
        Ok(self)
    }

    /// EA: message index → subspace.
    pub fn ea_encode(&self, i: usize) -> Result<&Subspace> {
        self.words.get(i).ok_or(Error::IndexOutOfRange {
            index: i as u64,
            size: self.words.len() as u64,
        })
    }

    /// Inverse of [`ea_encode`](Self::ea_encode).
    pub fn ea_decode(&self, x: &Subspace) -> Result<usize> {
        self.words
            .binary_search(x)
            .map_err(|_| Error::NotACodeword("subspace is not in the code".into()))
    }

    /// The Desarguesian spread `{H_i ∪ {0}}` with
    /// `H_i = {α^{i + j r} : 0 <= j <= q^k - 2}` and `r = (q^n - 1)/(q^k - 1)`.
    pub fn spread(field: Arc<FieldContext>, k: usize) -> Result<Self> {
        let n = field.n();
        if k == 0 || !n.is_multiple_of(k) {
            return Err(Error::InvalidParameter(format!("a spread needs k | n, got n={n}, k={k}")));
        }
        let qk = (field.q() as u64).pow(k as u32);
        let r = field.group_order() as u64 / (qk - 1);
        let words = (0..r)
            .map(|i| {
                let h: Vec<FieldElement> = (0..qk - 1).map(|j| field.power(i + j * r)).collect();
                Subspace::from_elements(&field, &h)
            })
            .collect::<Result<Vec<_>>>()?;
        debug_assert!(words.iter().all(|w| w.dim() == k));
        Self::new(field, k, 2 * k, words, Provenance::Spread)?.verified_default()
    }

    /// All of G_q(n, k), declared distance 2.
    pub fn full_grassmannian(field: Arc<FieldContext>, k: usize) -> Result<Self> {
        let words = enumerate_grassmannian(field.q(), field.n(), k, DEFAULT_GRASSMANNIAN_CAP)?;
        let d = if k == 0 || k == field.n() { 0 } else { 2 };
        Self::new(field, k, d, words, Provenance::Grassmannian)?.verified_default()
    }

    /// Keeps every subspace, in seed-permuted canonical order, whose distance
    /// to all kept words is at least `d`. `seed = None` scans in canonical
    /// order.
    pub fn greedy_search(
        field: Arc<FieldContext>,
        k: usize,
        d: usize,
        seed: Option<u64>,
    ) -> Result<Self> {
        let mut candidates =
            enumerate_grassmannian(field.q(), field.n(), k, DEFAULT_GRASSMANNIAN_CAP)?;
        if let Some(seed) = seed {
            candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        let mut kept: Vec<Subspace> = Vec::new();
        for c in candidates {
            if kept.iter().all(|x| x.distance(&c).expect("same space") >= d) {
                kept.push(c);
            }
        }
        Self::new(field, k, d, kept, Provenance::Search)?.verified_default()
    }

    /// The `[2m-1, 2m-2, m]_q` code of size `q^m + 1`: the lifted words
    /// `rowspace [I_m | M_c]` for every `c ∈ GF(q^m)`, plus the subspace
    /// spanned by the last `m` unit vectors.
    pub fn lifted_rank(m: usize, q: u32) -> Result<Self> {
        let inner = LiftedRankConstruction::new(m, q)?;
        let field = Arc::new(FieldContext::new(q, 2 * m - 1, None)?);
        let words = inner.words().into_iter().map(|(_, w)| w).collect();
        Self::new(field, m, 2 * m - 2, words, Provenance::LiftedRank)?.verified_default()
    }
}

/// The structural side of [`ConstantDimensionCode::lifted_rank`]: keeps the map
/// `c ↔ word` that the canonical-order code forgets.
#[derive(Debug, Clone)]
pub struct LiftedRankConstruction {
    m: usize,
    inner: FieldContext,
}

impl LiftedRankConstruction {
    pub fn new(m: usize, q: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!("lifted-rank code needs m >= 2, got {m}")));
        }
        Ok(LiftedRankConstruction { m, inner: FieldContext::new(q, m, None)? })
    }

    pub fn inner_field(&self) -> &FieldContext {
        &self.inner
    }

    /// The m×(m-1) matrix whose column j is the coordinate vector of `c α^j`.
    pub fn matrix(&self, c: FieldElement) -> Vec<Vec<u32>> {
        let cols: Vec<Vec<u32>> = (0..self.m - 1)
            .map(|j| self.inner.vector_of(self.inner.mul(c, FieldElement::Power(j as u32))))
            .collect();
        (0..self.m).map(|r| cols.iter().map(|col| col[r]).collect()).collect()
    }

    /// `rowspace [I_m | M_c]`.
    pub fn lifted(&self, c: FieldElement) -> Subspace {
        let m = self.m;
        let rows: Vec<Vec<u32>> = self
            .matrix(c)
            .into_iter()
            .enumerate()
            .map(|(r, tail)| {
                let mut row = vec![0u32; m];
                row[r] = 1;
                row.extend(tail);
                row
            })
            .collect();
        Subspace::from_rref(self.inner.q(), 2 * m - 1, rows).expect("[I | M] is in RREF")
    }

    /// Span of the last `m` unit vectors (pivot indicator `0^{m-1} 1^m`).
    pub fn pendant(&self) -> Subspace {
        let m = self.m;
        let n = 2 * m - 1;
        let rows = (m - 1..n)
            .map(|p| (0..n).map(|j| u32::from(j == p)).collect())
            .collect();
        Subspace::from_rref(self.inner.q(), n, rows).expect("unit rows are in RREF")
    }

    /// `(Some(c), lifted(c))` for every field element, then `(None, pendant)`.
    pub fn words(&self) -> Vec<(Option<FieldElement>, Subspace)> {
        let mut out: Vec<_> = self.inner.elements().map(|c| (Some(c), self.lifted(c))).collect();
        out.push((None, self.pendant()));
        out
    }
}
