//! Message encoding and decoding for FDTW codes, and the difference-multiset
//! error corrector.
//!
//! A message is a pair `(i, j)`: `i` picks the subspace `X` of the constant
//! dimension code and `j` picks the coset through the transversal
//! `B(j) · CP(X)`. The transmitted word is `ch(B(j) · CP(X) + X)`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::cdc::ConstantDimensionCode;
use crate::error::{Error, Result};
use crate::fdtw::{coset_index, coset_vector, coset_word, CwWord};
use crate::field::{FieldContext, FieldElement};
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfoWord {
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for InfoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// Number of messages: `q^{n-k} |C|`.
pub fn message_count(cdc: &ConstantDimensionCode) -> usize {
    coset_count(cdc) * cdc.len()
}

fn coset_count(cdc: &ConstantDimensionCode) -> usize {
    (cdc.q() as usize).pow((cdc.n() - cdc.k()) as u32)
}

pub fn encode(cdc: &ConstantDimensionCode, info: InfoWord) -> Result<CwWord> {
    let x = cdc.ea_encode(info.i)?;
    let field = cdc.field();
    let beta = field.element_of(&coset_vector(x, info.j)?)?;
    Ok(coset_word(field, beta, &x.elements(field)?))
}

fn word_elements(field: &FieldContext, word: &CwWord) -> Result<Vec<FieldElement>> {
    if word.len() != field.order() as usize {
        return Err(Error::InvalidParameter(format!(
            "word length {} does not match q^n = {}",
            word.len(),
            field.order()
        )));
    }
    word.support().iter().map(|&p| field.element_at(p)).collect()
}

/// Inverse of [`encode`].
///
/// With `s` the first element of the word `Y`, `Y - s` must be a subspace `X`
/// of the code; `j` is read off the reduction of `s` modulo `RE(X)`.
pub fn decode(cdc: &ConstantDimensionCode, word: &CwWord) -> Result<InfoWord> {
    let field = cdc.field();
    let qk = (cdc.q() as usize).pow(cdc.k() as u32);
    if word.weight() != qk {
        return Err(Error::NotACodeword(format!("weight {} is not q^k = {qk}", word.weight())));
    }
    let ys = word_elements(field, word)?;
    let s = ys[0];
    let mut shifted: Vec<FieldElement> = ys.iter().map(|&y| field.sub(y, s)).collect();
    let x = Subspace::from_elements(field, &shifted)?;
    let mut span = x.elements(field)?;
    span.sort_unstable();
    shifted.sort_unstable();
    if x.dim() != cdc.k() || span != shifted {
        return Err(Error::NotACodeword("support is not a coset of a subspace".into()));
    }
    let i = cdc.ea_decode(&x)?;
    let j = coset_index(&x, &x.reduce_vector(&field.vector_of(s)));
    Ok(InfoWord { i, j })
}

/// The multiset `T(Y)` of differences of 2-subsets of `Y`.
///
/// In characteristic 2 each unordered pair contributes `y_a + y_b` once; for
/// odd q both `y_a - y_b` and `y_b - y_a` are counted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffMultiset {
    counts: BTreeMap<FieldElement, usize>,
}

impl DiffMultiset {
    pub fn count(&self, x: FieldElement) -> usize {
        self.counts.get(&x).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Distinct elements with their counts, in element order.
    pub fn iter(&self) -> impl Iterator<Item = (FieldElement, usize)> + '_ {
        self.counts.iter().map(|(&x, &c)| (x, c))
    }
}

pub fn diff_multiset(field: &FieldContext, ys: &[FieldElement]) -> DiffMultiset {
    let mut counts = BTreeMap::new();
    let even = field.q() == 2;
    for (a, &ya) in ys.iter().enumerate() {
        for &yb in &ys[a + 1..] {
            *counts.entry(field.sub(ya, yb)).or_insert(0) += 1;
            if !even {
                *counts.entry(field.sub(yb, ya)).or_insert(0) += 1;
            }
        }
    }
    DiffMultiset { counts }
}

/// Why a received word could not be corrected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Error)]
pub enum CorrectionFailure {
    #[error("received word does not have weight q^k")]
    BadWeight,
    #[error("most frequent differences do not form a subspace")]
    NotSubspace,
    #[error("recovered subspace is not a codeword")]
    NotInCode,
    #[error("no element of the received word reaches the usage threshold")]
    NoBeta,
    #[error("frequency tie at the selection boundary")]
    AmbiguousTie,
}

impl CorrectionFailure {
    /// Stable machine-readable reason code.
    pub fn code(self) -> &'static str {
        match self {
            CorrectionFailure::BadWeight => "bad-weight",
            CorrectionFailure::NotSubspace => "not-subspace",
            CorrectionFailure::NotInCode => "not-in-code",
            CorrectionFailure::NoBeta => "no-beta",
            CorrectionFailure::AmbiguousTie => "ambiguous-tie",
        }
    }
}

/// The subspace recovered from the difference multiset, together with the
/// usage threshold an anchor element must reach.
fn recover_subspace(
    cdc: &ConstantDimensionCode,
    ys: &[FieldElement],
) -> std::result::Result<Vec<FieldElement>, CorrectionFailure> {
    let field = cdc.field();
    let qk = (cdc.q() as usize).pow(cdc.k() as u32);
    let table = diff_multiset(field, ys);
    let mut ranked: Vec<(FieldElement, usize)> =
        table.iter().filter(|(x, _)| !x.is_zero()).collect();
    // highest count first, ties by exponent
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let take = qk - 1;
    if ranked.len() < take {
        return Err(CorrectionFailure::NotSubspace);
    }
    if take > 0 && ranked.len() > take && ranked[take - 1].1 == ranked[take].1 {
        return Err(CorrectionFailure::AmbiguousTie);
    }
    let mut z: Vec<FieldElement> = ranked[..take].iter().map(|&(x, _)| x).collect();
    z.push(FieldElement::Zero);

    let x = Subspace::from_elements(field, &z).map_err(|_| CorrectionFailure::NotSubspace)?;
    let mut span = x.elements(field).map_err(|_| CorrectionFailure::NotSubspace)?;
    span.sort_unstable();
    z.sort_unstable();
    if x.dim() != cdc.k() || span != z {
        return Err(CorrectionFailure::NotSubspace);
    }
    cdc.ea_decode(&x).map_err(|_| CorrectionFailure::NotInCode)?;
    Ok(z)
}

/// `⌈3 q^k / 4⌉`.
pub fn usage_threshold(qk: usize) -> usize {
    (3 * qk).div_ceil(4)
}

/// Corrects a received word of weight `q^k`.
///
/// The `q^k - 1` most frequent nonzero differences, together with zero, give
/// the subspace `Z`; an element `β` of the word that forms at least
/// `⌈3 q^k / 4⌉` of the elements of `Z` (that is, `β + z` is in the word)
/// fixes the coset, and the output is `ch(β + Z)`. Any pattern of `τ` ones
/// moved to `τ` zeros with `2τ < q^k / 2` is corrected.
pub fn correct(
    cdc: &ConstantDimensionCode,
    received: &CwWord,
) -> std::result::Result<CwWord, CorrectionFailure> {
    let field = cdc.field();
    let qk = (cdc.q() as usize).pow(cdc.k() as u32);
    if received.weight() != qk || received.len() != field.order() as usize {
        return Err(CorrectionFailure::BadWeight);
    }
    let ys = word_elements(field, received).map_err(|_| CorrectionFailure::BadWeight)?;
    let z = recover_subspace(cdc, &ys)?;

    let present: HashSet<FieldElement> = ys.iter().copied().collect();
    let threshold = usage_threshold(qk);
    // ys is already in position order
    for &beta in &ys {
        let usage = z.iter().filter(|&&zz| present.contains(&field.add(beta, zz))).count();
        if usage >= threshold {
            return Ok(coset_word(field, beta, &z));
        }
    }
    Err(CorrectionFailure::NoBeta)
}
