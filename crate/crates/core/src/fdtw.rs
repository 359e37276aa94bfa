//! Construction FDTW: every coset `β + X` of every word `X` of a constant
//! dimension code becomes the binary word `ch(β + X)` of length `q^n` and
//! weight `q^k`.
//!
//! Cosets are enumerated through the transversal `B(j) · CP(X)`, where `B(j)`
//! is the base-q expansion of `j` (digit `r` is the coefficient of `q^r`) and
//! row `r` of `CP(X)` selects the `r`-th non-pivot coordinate.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::cdc::ConstantDimensionCode;
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::subspace::Subspace;

/// A binary word of length `len`, held as its sorted support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CwWord {
    len: usize,
    support: Vec<u32>,
}

impl CwWord {
    /// Sorts and validates the support.
    pub fn new(len: usize, mut support: Vec<u32>) -> Result<Self> {
        support.sort_unstable();
        if let Some(p) = support.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::InvalidParameter(format!("position {} repeated", p[0])));
        }
        if let Some(&last) = support.last() {
            if last as usize >= len {
                return Err(Error::PositionOutOfRange { pos: last as u64, len: len as u64 });
            }
        }
        Ok(CwWord { len, support })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn contains(&self, pos: u32) -> bool {
        self.support.binary_search(&pos).is_ok()
    }

    /// `|self ∩ other|` by merging the two supports.
    pub fn overlap(&self, other: &CwWord) -> usize {
        let (a, b) = (&self.support, &other.support);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn hamming_distance(&self, other: &CwWord) -> usize {
        self.weight() + other.weight() - 2 * self.overlap(other)
    }

    /// Cyclic shift of every position by `s` modulo the length.
    pub fn shifted(&self, s: usize) -> CwWord {
        let len = self.len as u64;
        let mut support: Vec<u32> =
            self.support.iter().map(|&p| ((p as u64 + s as u64) % len) as u32).collect();
        support.sort_unstable();
        CwWord { len: self.len, support }
    }

    pub fn to_bits(&self) -> Vec<bool> {
        let mut bits = vec![false; self.len];
        for &p in &self.support {
            bits[p as usize] = true;
        }
        bits
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let support = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u32).collect();
        CwWord { len: bits.len(), support }
    }
}

/// Where a word of an FDTW code came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WordOrigin {
    /// Index of `X` in the source code.
    pub subspace: usize,
    /// Transversal index `j` of the coset.
    pub coset: usize,
}

/// An `(N, d, w)` binary code.
///
/// Words normally all have weight `w`. Hadamard padding adds the all-zero and
/// all-one words on top of a constant weight code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantWeightCode {
    len: usize,
    weight: usize,
    declared_d: usize,
    words: Vec<CwWord>,
    origin: Option<Vec<WordOrigin>>,
}

impl ConstantWeightCode {
    pub fn new(len: usize, weight: usize, declared_d: usize, words: Vec<CwWord>) -> Result<Self> {
        for (i, w) in words.iter().enumerate() {
            if w.len() != len {
                return Err(Error::InvalidParameter(format!(
                    "word {i} has length {}, expected {len}",
                    w.len()
                )));
            }
            if w.weight() != weight && w.weight() != 0 && w.weight() != len {
                return Err(Error::InvalidParameter(format!(
                    "word {i} has weight {}, expected {weight}",
                    w.weight()
                )));
            }
        }
        Ok(ConstantWeightCode { len, weight, declared_d, words, origin: None })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn declared_d(&self) -> usize {
        self.declared_d
    }

    pub fn words(&self) -> &[CwWord] {
        &self.words
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn origin(&self) -> Option<&[WordOrigin]> {
        self.origin.as_deref()
    }
}

/// `(N, d, w, size)` promised for the FDTW image of a code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub len: u64,
    pub distance: u64,
    pub weight: u64,
    pub size: u64,
}

/// `(q^n, 2q^k - 2q^{k-t}, q^k)` with `q^{n-k} |C|` words, `t = d / 2`.
pub fn predicted_params(cdc: &ConstantDimensionCode) -> Params {
    let q = cdc.q() as u64;
    let (n, k) = (cdc.n() as u32, cdc.k() as u32);
    let t = (cdc.declared_d() / 2) as u32;
    Params {
        len: q.pow(n),
        distance: 2 * q.pow(k) - 2 * q.pow(k - t),
        weight: q.pow(k),
        size: q.pow(n - k) * cdc.len() as u64,
    }
}

/// The transversal representative `B(j) · CP(X)` as a coordinate vector.
pub fn coset_vector(x: &Subspace, j: usize) -> Result<Vec<u32>> {
    let q = x.q() as usize;
    let profile = x.pivot_profile();
    let count = q.pow(profile.non_pivots.len() as u32);
    if j >= count {
        return Err(Error::IndexOutOfRange { index: j as u64, size: count as u64 });
    }
    let mut v = vec![0u32; x.n()];
    let mut rest = j;
    for &pos in &profile.non_pivots {
        v[pos] = (rest % q) as u32;
        rest /= q;
    }
    Ok(v)
}

/// Inverse of [`coset_vector`]: reads `j` off the non-pivot coordinates of a
/// vector that is zero on the pivots.
pub fn coset_index(x: &Subspace, reduced: &[u32]) -> usize {
    let q = x.q() as usize;
    x.pivot_profile()
        .non_pivots
        .iter()
        .rev()
        .fold(0, |acc, &pos| acc * q + reduced[pos] as usize)
}

/// One representative of each of the `q^{n-k}` cosets of `x`, indexed by `j`.
pub fn coset_transversal(field: &FieldContext, x: &Subspace) -> Result<Vec<FieldElement>> {
    let count = (x.q() as usize).pow((x.n() - x.dim()) as u32);
    (0..count).map(|j| field.element_of(&coset_vector(x, j)?)).collect()
}

/// `ch(β + X)` for the element list of `X`.
pub fn coset_word(field: &FieldContext, beta: FieldElement, elements: &[FieldElement]) -> CwWord {
    let mut support: Vec<u32> =
        elements.iter().map(|&x| field.char_index(field.add(beta, x))).collect();
    support.sort_unstable();
    CwWord { len: field.order() as usize, support }
}

/// Applies Construction FDTW. Output order is `(subspace index, coset index)`.
pub fn construct(cdc: &ConstantDimensionCode) -> Result<ConstantWeightCode> {
    let field = cdc.field();
    let params = predicted_params(cdc);
    let per_word: Vec<Vec<(CwWord, WordOrigin)>> = cdc
        .words()
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let elements = x.elements(field)?;
            let reps = coset_transversal(field, x)?;
            Ok(reps
                .into_iter()
                .enumerate()
                .map(|(j, beta)| {
                    (coset_word(field, beta, &elements), WordOrigin { subspace: i, coset: j })
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let (words, origin): (Vec<_>, Vec<_>) = per_word.into_iter().flatten().unzip();

    let mut seen = HashSet::with_capacity(words.len());
    for (i, w) in words.iter().enumerate() {
        if !seen.insert(w) {
            return Err(Error::DuplicateWord(i));
        }
    }
    debug_assert_eq!(words.len() as u64, params.size);
    Ok(ConstantWeightCode {
        len: params.len as usize,
        weight: params.weight as usize,
        declared_d: params.distance as usize,
        words,
        origin: Some(origin),
    })
}

/// Keeps the words whose bit `coord` equals `bit` and deletes that coordinate.
pub fn shorten(code: &ConstantWeightCode, coord: usize, bit: bool) -> Result<ConstantWeightCode> {
    if coord >= code.len {
        return Err(Error::PositionOutOfRange { pos: coord as u64, len: code.len as u64 });
    }
    let c = coord as u32;
    let mut words = Vec::new();
    let mut origin = code.origin.as_ref().map(|_| Vec::new());
    for (i, w) in code.words.iter().enumerate() {
        if w.contains(c) != bit {
            continue;
        }
        let support = w
            .support
            .iter()
            .filter(|&&p| p != c)
            .map(|&p| if p > c { p - 1 } else { p })
            .collect();
        words.push(CwWord { len: code.len - 1, support });
        if let (Some(out), Some(src)) = (origin.as_mut(), code.origin.as_ref()) {
            out.push(src[i]);
        }
    }
    Ok(ConstantWeightCode {
        len: code.len - 1,
        weight: if bit { code.weight.saturating_sub(1) } else { code.weight },
        declared_d: code.declared_d,
        words,
        origin,
    })
}

/// Adds the all-zero and all-one words to the `(2^n, 2^{n-1}, 2^{n-1})` code
/// built from all hyperplanes of F_2^n, giving the Hadamard code.
pub fn pad_hadamard(code: &ConstantWeightCode) -> Result<ConstantWeightCode> {
    let len = code.len;
    if code.words.iter().any(|w| w.weight() == 0 || w.weight() == len) {
        return Err(Error::InvalidParameter("code already contains a constant word".into()));
    }
    let shape_ok = len >= 2
        && len.is_power_of_two()
        && code.weight == len / 2
        && code.words.len() == 2 * len - 2;
    if !shape_ok {
        return Err(Error::InvalidParameter(format!(
            "expected a (2^n, 2^(n-1), 2^(n-1)) code with 2^(n+1) - 2 words, got N={len}, w={}, size={}",
            code.weight,
            code.words.len()
        )));
    }
    let mut words = code.words.clone();
    words.push(CwWord { len, support: Vec::new() });
    words.push(CwWord { len, support: (0..len as u32).collect() });
    Ok(ConstantWeightCode {
        len,
        weight: code.weight,
        declared_d: code.declared_d,
        words,
        origin: None,
    })
}
