//! Exhaustive checks: minimum distance, Steiner systems, cyclicity, and
//! optical orthogonal codes.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fdtw::{ConstantWeightCode, CwWord};

/// Default cap on the number of word pairs compared.
pub const DEFAULT_PAIR_CAP: u64 = 100_000_000;

/// Default cap on the number of t-subsets a Steiner check enumerates.
pub const DEFAULT_SUBSET_CAP: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceReport {
    pub distance: usize,
    /// A pair attaining the minimum.
    pub pair: (usize, usize),
}

fn to_bitmap(w: &CwWord) -> Vec<u64> {
    let mut bits = vec![0u64; w.len().div_ceil(64)];
    for &p in w.support() {
        bits[p as usize / 64] |= 1 << (p % 64);
    }
    bits
}

/// Exact minimum pairwise Hamming distance over all pairs.
pub fn min_distance(code: &ConstantWeightCode) -> Result<DistanceReport> {
    min_distance_capped(code, DEFAULT_PAIR_CAP)
}

pub fn min_distance_capped(code: &ConstantWeightCode, pair_cap: u64) -> Result<DistanceReport> {
    let m = code.size() as u64;
    if m < 2 {
        return Err(Error::InvalidParameter("minimum distance needs at least two words".into()));
    }
    let pairs = m * (m - 1) / 2;
    if pairs > pair_cap {
        return Err(Error::CapExceeded { what: "word pair", count: pairs.to_string(), cap: pair_cap });
    }
    let maps: Vec<Vec<u64>> = code.words().iter().map(to_bitmap).collect();
    let (distance, i, j) = (0..maps.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let maps = &maps;
            ((i + 1)..maps.len()).map(move |j| {
                let d: u32 =
                    maps[i].iter().zip(&maps[j]).map(|(a, b)| (a ^ b).count_ones()).sum();
                (d as usize, i, j)
            })
        })
        .min()
        .expect("at least one pair");
    Ok(DistanceReport { distance, pair: (i, j) })
}

/// Outcome of a Steiner-system check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerReport {
    pub holds: bool,
    /// First t-subset (in colex order) not covered exactly once, with its count.
    pub counterexample: Option<(Vec<u32>, usize)>,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Colex rank of a sorted subset.
fn colex_rank(subset: &[u32]) -> u64 {
    subset.iter().enumerate().map(|(i, &c)| binomial(c as u64, i as u64 + 1)).sum()
}

fn colex_unrank(mut rank: u64, t: usize) -> Vec<u32> {
    let mut out = vec![0u32; t];
    for i in (0..t).rev() {
        let mut c = i as u64;
        while binomial(c + 1, i as u64 + 1) <= rank {
            c += 1;
        }
        rank -= binomial(c, i as u64 + 1);
        out[i] = c as u32;
    }
    out
}

fn for_each_subset(items: &[u32], t: usize, f: &mut impl FnMut(&[u32])) {
    fn go(items: &[u32], t: usize, start: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if cur.len() == t {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < t - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, t, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, t, 0, &mut Vec::with_capacity(t), f);
}

/// True iff every t-subset of the `N` positions lies in exactly one word.
pub fn check_steiner(code: &ConstantWeightCode, t: usize) -> Result<SteinerReport> {
    let total = binomial(code.len() as u64, t as u64);
    if total > DEFAULT_SUBSET_CAP {
        return Err(Error::CapExceeded {
            what: "t-subset",
            count: total.to_string(),
            cap: DEFAULT_SUBSET_CAP,
        });
    }
    let mut counts = vec![0usize; total as usize];
    for w in code.words() {
        for_each_subset(w.support(), t, &mut |s| counts[colex_rank(s) as usize] += 1);
    }
    let bad = counts.iter().position(|&c| c != 1);
    Ok(SteinerReport {
        holds: bad.is_none(),
        counterexample: bad.map(|r| (colex_unrank(r as u64, t), counts[r])),
    })
}

/// True iff the word set is closed under the shift `p -> p + 1 mod N`.
pub fn is_cyclic(code: &ConstantWeightCode) -> bool {
    let set: HashSet<&CwWord> = code.words().iter().collect();
    code.words().iter().all(|w| set.contains(&w.shifted(1)))
}

/// An `(n, w, λ)` optical orthogonal code given by orbit representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ooc {
    pub len: usize,
    pub weight: usize,
    pub lambda: usize,
    pub reps: Vec<CwWord>,
}

/// An orbit left out of an OOC because it is shorter than the length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscardedOrbit {
    pub representative: CwWord,
    pub orbit_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OocExtraction {
    pub ooc: Ooc,
    pub discarded: Vec<DiscardedOrbit>,
}

/// `w - d/2`, the correlation bound implied by the declared parameters.
pub fn declared_lambda(code: &ConstantWeightCode) -> usize {
    code.weight().saturating_sub(code.declared_d() / 2)
}

/// Splits a cyclic code into shift orbits and keeps the least representative
/// of each full-length orbit. The result is checked exhaustively against
/// `lambda`.
pub fn ooc_extract(code: &ConstantWeightCode, lambda: usize) -> Result<OocExtraction> {
    if !is_cyclic(code) {
        return Err(Error::InvalidParameter("code is not closed under cyclic shifts".into()));
    }
    let n = code.len();
    let mut orbits: BTreeMap<CwWord, usize> = BTreeMap::new();
    let mut assigned: HashSet<CwWord> = HashSet::new();
    for w in code.words() {
        if assigned.contains(w) {
            continue;
        }
        let mut members = vec![w.clone()];
        let mut cur = w.shifted(1);
        while &cur != w {
            members.push(cur.clone());
            cur = cur.shifted(1);
        }
        let rep = members.iter().min().expect("nonempty orbit").clone();
        orbits.insert(rep, members.len());
        assigned.extend(members);
    }

    let mut reps = Vec::new();
    let mut discarded = Vec::new();
    for (rep, size) in orbits {
        if size == n {
            reps.push(rep);
        } else {
            discarded.push(DiscardedOrbit { representative: rep, orbit_size: size });
        }
    }
    let ooc = Ooc { len: n, weight: code.weight(), lambda, reps };
    if let Some(err) = ooc_violation(&ooc) {
        return Err(err);
    }
    Ok(OocExtraction { ooc, discarded })
}

/// First correlation exceeding `λ`, over every pair of representatives and
/// every relative shift; a representative against its own zero shift is
/// skipped.
///
/// `|a ∩ (b + s)|` equals the number of pairs `(x, y) ∈ a × b` with
/// `x - y ≡ s`, so one difference table per pair covers all shifts.
pub fn ooc_violation(ooc: &Ooc) -> Option<Error> {
    let n = ooc.len;
    let reps = &ooc.reps;
    let mut counts = vec![0usize; n];
    for a in 0..reps.len() {
        for b in a..reps.len() {
            counts.iter_mut().for_each(|c| *c = 0);
            for &x in reps[a].support() {
                for &y in reps[b].support() {
                    counts[(x as usize + n - y as usize) % n] += 1;
                }
            }
            let skip = usize::from(a == b);
            if let Some((shift, &found)) =
                counts.iter().enumerate().skip(skip).find(|(_, &c)| c > ooc.lambda)
            {
                return Some(Error::CorrelationExceeded {
                    first: a,
                    second: b,
                    shift,
                    found,
                    lambda: ooc.lambda,
                });
            }
        }
    }
    None
}

pub fn ooc_check(ooc: &Ooc) -> bool {
    ooc_violation(ooc).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdc::ConstantDimensionCode;
    use crate::fdtw::{construct, shorten};
    use crate::field::FieldContext;
    use std::sync::Arc;

    fn word(len: usize, s: &[u32]) -> CwWord {
        CwWord::new(len, s.to_vec()).unwrap()
    }

    fn spread_code() -> ConstantWeightCode {
        let f = Arc::new(FieldContext::new(2, 4, None).unwrap());
        construct(&ConstantDimensionCode::spread(f, 2).unwrap()).unwrap()
    }

    #[test]
    fn colex_roundtrip() {
        let mut r = 0;
        for c in 2..9u32 {
            for b in 1..c {
                for a in 0..b {
                    assert_eq!(colex_rank(&[a, b, c]), r);
                    assert_eq!(colex_unrank(r, 3), vec![a, b, c]);
                    r += 1;
                }
            }
        }
    }

    #[test]
    fn distance_examples() {
        assert_eq!(min_distance(&spread_code()).unwrap().distance, 6);
        let dup = ConstantWeightCode::new(8, 2, 2, vec![word(8, &[0, 1]), word(8, &[0, 1])])
            .unwrap();
        assert_eq!(min_distance(&dup).unwrap(), DistanceReport { distance: 0, pair: (0, 1) });
        let one = ConstantWeightCode::new(8, 2, 2, vec![word(8, &[0, 1])]).unwrap();
        assert!(min_distance(&one).is_err());
        assert!(matches!(
            min_distance_capped(&spread_code(), 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn distance_on_long_words() {
        let a = word(200, &[0, 70, 130, 199]);
        let b = word(200, &[0, 71, 130, 198]);
        let code = ConstantWeightCode::new(200, 4, 4, vec![a, b]).unwrap();
        assert_eq!(min_distance(&code).unwrap().distance, 4);
    }

    #[test]
    fn steiner_examples() {
        let r = check_steiner(&spread_code(), 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.counterexample, None);
        let r = check_steiner(&spread_code(), 3).unwrap();
        assert!(!r.holds);
        let (subset, count) = r.counterexample.unwrap();
        assert_eq!(subset.len(), 3);
        assert_ne!(count, 1);
    }

    #[test]
    fn cyclic_examples() {
        let code = spread_code();
        assert!(is_cyclic(&shorten(&code, 15, true).unwrap()));
        assert!(is_cyclic(&shorten(&code, 15, false).unwrap()));
        let single = ConstantWeightCode::new(7, 3, 2, vec![word(7, &[0, 1, 3])]).unwrap();
        assert!(!is_cyclic(&single));
        let empty = ConstantWeightCode::new(7, 3, 2, vec![]).unwrap();
        assert!(is_cyclic(&empty));
    }

    #[test]
    fn orbits_of_the_shortened_spread() {
        let code = spread_code();
        // b = 1: the five words {i, i+5, i+10} form a single orbit of size 5
        let one = shorten(&code, 15, true).unwrap();
        let ex = ooc_extract(&one, declared_lambda(&one)).unwrap();
        assert_eq!(declared_lambda(&one), 0);
        assert!(ex.ooc.reps.is_empty());
        assert_eq!(ex.discarded.len(), 1);
        assert_eq!(ex.discarded[0].orbit_size, 5);
        assert_eq!(ex.discarded[0].representative.support(), &[0, 5, 10]);

        let zero = shorten(&code, 15, false).unwrap();
        assert_eq!(declared_lambda(&zero), 1);
        let ex = ooc_extract(&zero, 1).unwrap();
        assert_eq!(ex.ooc.reps.len(), 1);
        assert!(ex.discarded.is_empty());
        assert!(ooc_check(&ex.ooc));
        assert!(matches!(ooc_extract(&zero, 0), Err(Error::CorrelationExceeded { .. })));
    }

    #[test]
    fn ooc_checks() {
        // {0, 1, 3} is a perfect difference set mod 7
        let good = Ooc { len: 7, weight: 3, lambda: 1, reps: vec![word(7, &[0, 1, 3])] };
        assert!(ooc_check(&good));
        let dup = Ooc { reps: vec![word(7, &[0, 1, 3]), word(7, &[0, 1, 3])], ..good.clone() };
        assert!(!ooc_check(&dup));
        let periodic = Ooc { len: 6, weight: 2, lambda: 1, reps: vec![word(6, &[0, 3])] };
        assert!(!ooc_check(&periodic));
    }

    #[test]
    fn lambda_zero_means_disjoint_shifts() {
        // {0,1} and {0,3} mod 13: differences ±1, ±3 are all distinct
        let ooc = Ooc { len: 13, weight: 2, lambda: 1, reps: vec![word(13, &[0, 1]), word(13, &[0, 3])] };
        assert!(ooc_check(&ooc));
        let zero = Ooc { len: 5, weight: 1, lambda: 0, reps: vec![word(5, &[2])] };
        assert!(ooc_check(&zero));
        for s in 1..5 {
            assert_eq!(zero.reps[0].overlap(&zero.reps[0].shifted(s)), 0);
        }
    }
}
