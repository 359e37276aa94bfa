//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any
//! failure. Every check is exact; distances, Steiner properties, difference
//! counts and correlations are recomputed here by brute force rather than
//! through the library's own verifiers.

use std::collections::{BTreeSet, HashMap};
use std::panic;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fdtw_core::bounds::{
    avz_bound, fdtw_size_from_partial_spread, gaussian, johnson_step, partial_spread_lower_bound,
};
use fdtw_core::codec::diff_multiset;
use fdtw_core::fdtw::pad_hadamard;
use fdtw_core::verify::{check_steiner, is_cyclic};
use fdtw_core::{
    construct, correct, decode, encode, shorten, ConstantDimensionCode, ConstantWeightCode, CwWord,
    FieldContext, FieldElement, InfoWord,
};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn f(q: u32, n: usize) -> Arc<FieldContext> {
    Arc::new(FieldContext::new(q, n, None).unwrap())
}

fn spread_cdc() -> ConstantDimensionCode {
    ConstantDimensionCode::spread(f(2, 4), 2).unwrap()
}

fn lifted_cdc() -> ConstantDimensionCode {
    ConstantDimensionCode::lifted_rank(3, 2).unwrap()
}

fn as_sets(code: &ConstantWeightCode) -> Vec<BTreeSet<u32>> {
    code.words().iter().map(|w| w.support().iter().copied().collect()).collect()
}

/// Minimum Hamming distance over all pairs, via symmetric differences.
fn brute_min_distance(code: &ConstantWeightCode) -> usize {
    let sets = as_sets(code);
    let mut best = usize::MAX;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            best = best.min(sets[i].symmetric_difference(&sets[j]).count());
        }
    }
    best
}

fn subsets(items: &[u32], t: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == t {
        out.push(cur.clone());
        return;
    }
    for i in start..items.len() {
        cur.push(items[i]);
        subsets(items, t, i + 1, cur, out);
        cur.pop();
    }
}

/// Every t-subset of the N positions lies in exactly one word.
fn brute_steiner(code: &ConstantWeightCode, t: usize) -> bool {
    let mut cover: HashMap<Vec<u32>, usize> = HashMap::new();
    for w in code.words() {
        let mut out = Vec::new();
        subsets(w.support(), t, 0, &mut Vec::new(), &mut out);
        for s in out {
            *cover.entry(s).or_default() += 1;
        }
    }
    let all: Vec<u32> = (0..code.len() as u32).collect();
    let mut every = Vec::new();
    subsets(&all, t, 0, &mut Vec::new(), &mut every);
    every.iter().all(|s| cover.get(s) == Some(&1))
}

fn params(code: &ConstantWeightCode) -> (usize, usize, usize) {
    (code.len(), code.weight(), code.size())
}

fn criterion_1() -> Check {
    let code = construct(&spread_cdc()).map_err(|e| e.to_string())?;
    ensure!(params(&code) == (16, 4, 20), "params {:?}", params(&code));
    let d = brute_min_distance(&code);
    ensure!(d == 6, "min distance {d}");
    ensure!(brute_steiner(&code, 2), "not an S(2,4,16)");
    ensure!(check_steiner(&code, 2).unwrap().holds, "library Steiner check disagrees");
    Ok(())
}

fn grassmannian_code(n: usize) -> ConstantWeightCode {
    construct(&ConstantDimensionCode::full_grassmannian(f(2, n), n - 1).unwrap()).unwrap()
}

fn criterion_2() -> Check {
    let code = grassmannian_code(3);
    ensure!(params(&code) == (8, 4, 14), "params {:?}", params(&code));
    let d = brute_min_distance(&code);
    ensure!(d == 4, "min distance {d}");
    ensure!(brute_steiner(&code, 3), "not an S(3,4,8)");
    ensure!(check_steiner(&code, 3).unwrap().holds, "library Steiner check disagrees");
    Ok(())
}

fn criterion_3() -> Check {
    let code = grassmannian_code(3);
    ensure!(code.size() == 14, "size {}", code.size());
    let padded = pad_hadamard(&code).map_err(|e| e.to_string())?;
    ensure!(padded.size() == 16, "padded size {}", padded.size());
    let d = brute_min_distance(&padded);
    ensure!(d == 4, "padded min distance {d}");
    Ok(())
}

fn criterion_4() -> Check {
    let cdc = lifted_cdc();
    ensure!(cdc.len() == 9, "cdc size {}", cdc.len());
    let mut dmin = usize::MAX;
    for (i, x) in cdc.words().iter().enumerate() {
        for y in &cdc.words()[i + 1..] {
            // dim U + dim V - 2 dim(U ∩ V) = 2 dim(U + V) - dim U - dim V
            let mut rows = x.rows().to_vec();
            rows.extend_from_slice(y.rows());
            let sum = fdtw_core::subspace::rank(2, &rows);
            dmin = dmin.min(2 * sum - x.dim() - y.dim());
        }
    }
    ensure!(dmin == 4, "min subspace distance {dmin}");
    let code = construct(&cdc).map_err(|e| e.to_string())?;
    ensure!(params(&code) == (32, 8, 36), "params {:?}", params(&code));
    ensure!(code.declared_d() == 12, "declared d {}", code.declared_d());
    let d = brute_min_distance(&code);
    ensure!(d == 12, "min distance {d}");
    let avz = avz_bound(31, 6, 7, 100).unwrap().bound;
    ensure!(avz == 9, "avz bound {avz}");
    let j = johnson_step(32, 12, 8, &BigUint::from(avz)).unwrap();
    ensure!(j == BigUint::from(36u32), "johnson {j}");
    ensure!(code.size() == (1 << 5) + (1 << 2), "size vs 2^(2m-1) + 2^(m-1)");
    Ok(())
}

fn shortened(bit: bool) -> ConstantWeightCode {
    shorten(&construct(&spread_cdc()).unwrap(), 15, bit).unwrap()
}

fn criterion_5() -> Check {
    for (bit, expect) in [(true, (15, 3, 5)), (false, (15, 4, 15))] {
        let code = shortened(bit);
        ensure!(params(&code) == expect, "b={bit}: params {:?}", params(&code));
        ensure!(is_cyclic(&code), "b={bit}: not cyclic");
        let sets = as_sets(&code);
        let closed = sets.iter().all(|s| {
            let next: BTreeSet<u32> = s.iter().map(|&p| (p + 1) % 15).collect();
            sets.contains(&next)
        });
        ensure!(closed, "b={bit}: brute cyclic check fails");
        let d = brute_min_distance(&code);
        ensure!(d == 6, "b={bit}: min distance {d}");
    }
    Ok(())
}

fn round_trip(cdc: &ConstantDimensionCode, expect: usize) -> Check {
    let per = (cdc.q() as usize).pow((cdc.n() - cdc.k()) as u32);
    let mut seen = BTreeSet::new();
    for i in 0..cdc.len() {
        for j in 0..per {
            let info = InfoWord { i, j };
            let w = encode(cdc, info).map_err(|e| e.to_string())?;
            let back = decode(cdc, &w).map_err(|e| e.to_string())?;
            ensure!(back == info, "{info} decoded to {back}");
            seen.insert(w);
        }
    }
    ensure!(seen.len() == expect, "{} distinct words, expected {expect}", seen.len());
    Ok(())
}

fn criterion_6() -> Check {
    round_trip(&spread_cdc(), 20)?;
    round_trip(&lifted_cdc(), 36)
}

fn criterion_7() -> Check {
    let cdc = lifted_cdc();
    let code = construct(&cdc).unwrap();
    let mut patterns = 0;
    for sent in code.words() {
        let ones = sent.support();
        let zeros: Vec<u32> = (0..32).filter(|p| !sent.contains(*p)).collect();
        for &out in ones {
            for &inn in &zeros {
                let mut s: Vec<u32> = ones.iter().copied().filter(|&p| p != out).collect();
                s.push(inn);
                let received = CwWord::new(32, s).unwrap();
                match correct(&cdc, &received) {
                    Ok(w) if &w == sent => {}
                    Ok(w) => return Err(format!("{sent:?} -> {w:?} (out {out}, in {inn})")),
                    Err(e) => return Err(format!("{sent:?}: {} (out {out}, in {inn})", e.code())),
                }
                patterns += 1;
            }
        }
    }
    ensure!(patterns == 36 * 8 * 24, "{patterns} patterns");
    Ok(())
}

fn check_frequencies(cdc: &ConstantDimensionCode, rng: &mut ChaCha8Rng) -> Check {
    let field = cdc.field();
    let qk = (cdc.q() as usize).pow(cdc.k() as u32);
    let all: Vec<FieldElement> = field.elements().collect();
    for x in cdc.words() {
        let els = x.elements(field).unwrap();
        let members: BTreeSet<FieldElement> = els.iter().copied().collect();
        let t = diff_multiset(field, &els);
        for &e in &all {
            let expect = if !e.is_zero() && members.contains(&e) { qk / 2 } else { 0 };
            ensure!(t.count(e) == expect, "count of {e:?} is {}, expected {expect}", t.count(e));
        }
        for _ in 0..5 {
            let beta = all[rng.gen_range(0..all.len())];
            let coset: Vec<FieldElement> = els.iter().map(|&y| field.add(beta, y)).collect();
            ensure!(diff_multiset(field, &coset) == t, "multiset changes under shift by {beta:?}");
        }
    }
    Ok(())
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    check_frequencies(&spread_cdc(), &mut rng)?;
    check_frequencies(&lifted_cdc(), &mut rng)
}

fn criterion_9() -> Check {
    ensure!(gaussian(3, 2, 2) == BigUint::from(7u32), "gaussian(3,2,2)");
    ensure!(gaussian(4, 2, 2) == BigUint::from(35u32), "gaussian(4,2,2)");
    let lower = partial_spread_lower_bound(4, 2, 2).unwrap();
    ensure!(lower == BigUint::from(5u32), "partial spread bound {lower}");
    let size = fdtw_size_from_partial_spread(4, 2, 2).unwrap();
    ensure!(size == BigUint::from(20u32), "derived size {size}");
    let built = construct(&spread_cdc()).unwrap().size();
    ensure!(size == BigUint::from(built), "derived size {size} vs built {built}");
    Ok(())
}

/// `|a ∩ (b + s)|` over every ordered word pair and shift, skipping pairs of
/// identical sets.
fn criterion_10() -> Check {
    for bit in [true, false] {
        let code = shortened(bit);
        let lambda = code.weight() - code.declared_d() / 2;
        let sets = as_sets(&code);
        let mut pairs = 0;
        for a in &sets {
            for b in &sets {
                for s in 0..15u32 {
                    let moved: BTreeSet<u32> = b.iter().map(|&p| (p + s) % 15).collect();
                    pairs += 1;
                    if *a == moved {
                        continue;
                    }
                    let c = a.intersection(&moved).count();
                    ensure!(c <= lambda, "b={bit}: correlation {c} > {lambda}");
                }
            }
        }
        ensure!(pairs == sets.len() * sets.len() * 15, "b={bit}: {pairs} shift pairs");
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("spread pipeline gives an S(2,4,16) of 20 words, distance 6", criterion_1),
        ("full Grassmannian n=3 gives an S(3,4,8) of 14 words, distance 4", criterion_2),
        ("Hadamard padding gives 16 words at distance 4", criterion_3),
        ("lifted-rank m=3 chain: 9 subspaces, (32,12,8) of 36 words, bounds 9 and 36", criterion_4),
        ("shortened spread code: cyclic (15,6,3)x5 and (15,6,4)x15", criterion_5),
        ("codec round trip over all 20 and 36 messages", criterion_6),
        ("every single swap corrected on the (32,12,8) code", criterion_7),
        ("difference multiset counts q^k/2 and is shift invariant", criterion_8),
        ("Gaussian coefficients and partial spread sizes", criterion_9),
        ("shortened codes: all shift-pair correlations within w - d/2", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
