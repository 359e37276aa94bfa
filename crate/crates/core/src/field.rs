//! Arithmetic in GF(q^n) for prime q.
//!
//! Elements are held in exponent form relative to a primitive element α. The
//! isomorphism with F_q^n maps the coordinate vector `(c_0, ..., c_{n-1})` to
//! `c_0 + c_1 α + ... + c_{n-1} α^{n-1}`. Internally a vector is packed into
//! the integer `Σ c_i q^i`, so the all-zero vector packs to 0 and the vector of
//! `1` packs to 1.
//!
//! Characteristic-vector positions follow the usual convention: `α^i` sits at
//! position `i` and the zero element at the last position `q^n - 1`.

use crate::error::{Error, Result};
use crate::prime;

/// Default cap on the field order `q^n`.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

/// An element of GF(q^n).
///
/// The derived ordering puts `Power(0) < Power(1) < ... < Zero`, which is the
/// order of characteristic-vector positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Power(u32),
    Zero,
}

impl FieldElement {
    pub const ONE: FieldElement = FieldElement::Power(0);

    pub fn is_zero(self) -> bool {
        self == FieldElement::Zero
    }
}

/// Lexicographically smallest primitive polynomials (coefficients low to
/// high, monic) for the small fields the toolkit ships with.
static DEFAULT_POLYS: &[(u32, &[u32])] = &[
    (2, &[1, 1]),
    (2, &[1, 1, 1]),
    (2, &[1, 1, 0, 1]),
    (2, &[1, 1, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[1, 1]),
    (3, &[2, 1, 1]),
    (3, &[1, 2, 0, 1]),
    (3, &[2, 1, 0, 0, 1]),
    (3, &[1, 2, 0, 0, 0, 1]),
    (3, &[2, 1, 0, 0, 0, 0, 1]),
    (3, &[1, 2, 1, 0, 0, 0, 0, 1]),
    (3, &[2, 0, 0, 1, 0, 0, 0, 0, 1]),
    (3, &[1, 0, 1, 2, 0, 0, 0, 0, 0, 1]),
    (3, &[2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[2, 2, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[2, 1]),
    (5, &[2, 1, 1]),
    (5, &[2, 3, 0, 1]),
    (5, &[2, 2, 1, 0, 1]),
    (5, &[2, 4, 0, 0, 0, 1]),
    (5, &[2, 1, 0, 0, 0, 0, 1]),
    (5, &[2, 3, 0, 0, 0, 0, 0, 1]),
    (5, &[3, 2, 1, 0, 0, 0, 0, 0, 1]),
];

/// The built-in primitive polynomial for `(q, n)`, if there is one.
pub fn default_poly(q: u32, n: usize) -> Option<&'static [u32]> {
    DEFAULT_POLYS
        .iter()
        .find(|(pq, poly)| *pq == q && poly.len() == n + 1)
        .map(|(_, poly)| *poly)
}

/// Log/antilog tables for GF(q^n). Immutable once built.
#[derive(Debug, Clone)]
pub struct FieldContext {
    q: u32,
    n: usize,
    order: u32,
    poly: Vec<u32>,
    /// exponent -> packed coordinate vector
    antilog: Vec<u32>,
    /// packed coordinate vector -> exponent; entry 0 is unused
    log: Vec<u32>,
    pow_q: Vec<u32>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.n == other.n && self.poly == other.poly
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    /// Builds GF(q^n) with the default order cap. `poly` holds the `n + 1`
    /// coefficients of a monic primitive polynomial, low to high; when omitted
    /// the built-in table is consulted.
    pub fn new(q: u32, n: usize, poly: Option<&[u32]>) -> Result<Self> {
        Self::with_cap(q, n, poly, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(q: u32, n: usize, poly: Option<&[u32]>, cap: u64) -> Result<Self> {
        if !prime::is_prime(q as u64) {
            return Err(Error::NotPrime(q as u64));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        let order = (q as u64).checked_pow(n as u32).filter(|&o| o <= cap && o <= u32::MAX as u64);
        let order = match order {
            Some(o) => o as u32,
            None => return Err(Error::FieldTooLarge { q, n, cap }),
        };

        let poly: Vec<u32> = match poly {
            Some(p) => p.to_vec(),
            None => default_poly(q, n)
                .ok_or(Error::NoDefaultPolynomial { q, n })?
                .to_vec(),
        };
        if poly.len() != n + 1 {
            return Err(Error::InvalidPolynomial(format!(
                "expected {} coefficients, got {}",
                n + 1,
                poly.len()
            )));
        }
        if let Some(&c) = poly.iter().find(|&&c| c >= q) {
            return Err(Error::SymbolOutOfRange { symbol: c, q });
        }
        if poly[n] != 1 {
            return Err(Error::InvalidPolynomial("polynomial is not monic".into()));
        }
        if !is_irreducible(&poly, q) {
            return Err(Error::NotIrreducible { q });
        }

        let mut pow_q = Vec::with_capacity(n);
        let mut p = 1u32;
        for _ in 0..n {
            pow_q.push(p);
            p = p.wrapping_mul(q);
        }

        let group = order - 1;
        let mut antilog = Vec::with_capacity(group as usize);
        let mut log = vec![u32::MAX; order as usize];
        let mut digits = vec![0u32; n];
        digits[0] = 1;
        loop {
            let packed = pack(&digits, &pow_q);
            if packed == 0 || log[packed as usize] != u32::MAX {
                break;
            }
            log[packed as usize] = antilog.len() as u32;
            antilog.push(packed);
            times_alpha(&mut digits, &poly, q);
        }
        if antilog.len() as u32 != group || pack(&digits, &pow_q) != 1 {
            return Err(Error::NotPrimitive { order: antilog.len() as u64, expected: group as u64 });
        }

        Ok(FieldContext { q, n, order, poly, antilog, log, pow_q })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of field elements, `q^n`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the multiplicative group, `q^n - 1`.
    pub fn group_order(&self) -> u32 {
        self.order - 1
    }

    pub fn poly(&self) -> &[u32] {
        &self.poly
    }

    /// Packed antilog table: entry `e` is the packed coordinate vector of α^e.
    pub fn antilog_table(&self) -> &[u32] {
        &self.antilog
    }

    /// `Power(e mod (q^n - 1))`.
    pub fn power(&self, e: u64) -> FieldElement {
        FieldElement::Power((e % self.group_order() as u64) as u32)
    }

    /// Iterates every element in characteristic-vector order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |pos| self.element_at_unchecked(pos))
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        match x {
            FieldElement::Zero => true,
            FieldElement::Power(e) => e < self.group_order(),
        }
    }

    pub fn packed_of(&self, x: FieldElement) -> u32 {
        match x {
            FieldElement::Zero => 0,
            FieldElement::Power(e) => self.antilog[e as usize],
        }
    }

    pub fn element_of_packed(&self, packed: u32) -> FieldElement {
        if packed == 0 {
            FieldElement::Zero
        } else {
            FieldElement::Power(self.log[packed as usize])
        }
    }

    pub fn unpack(&self, packed: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n);
        let mut rest = packed;
        for _ in 0..self.n {
            out.push(rest % self.q);
            rest /= self.q;
        }
        out
    }

    pub fn pack_vector(&self, v: &[u32]) -> Result<u32> {
        if v.len() != self.n {
            return Err(Error::VectorLength { expected: self.n, got: v.len() });
        }
        if let Some(&s) = v.iter().find(|&&s| s >= self.q) {
            return Err(Error::SymbolOutOfRange { symbol: s, q: self.q });
        }
        Ok(pack(v, &self.pow_q))
    }

    /// Coordinate vector of `x` over F_q.
    pub fn vector_of(&self, x: FieldElement) -> Vec<u32> {
        self.unpack(self.packed_of(x))
    }

    pub fn element_of(&self, v: &[u32]) -> Result<FieldElement> {
        Ok(self.element_of_packed(self.pack_vector(v)?))
    }

    pub fn char_index(&self, x: FieldElement) -> u32 {
        match x {
            FieldElement::Zero => self.group_order(),
            FieldElement::Power(e) => e,
        }
    }

    pub fn element_at(&self, pos: u32) -> Result<FieldElement> {
        if pos >= self.order {
            return Err(Error::PositionOutOfRange { pos: pos as u64, len: self.order as u64 });
        }
        Ok(self.element_at_unchecked(pos))
    }

    fn element_at_unchecked(&self, pos: u32) -> FieldElement {
        if pos == self.group_order() {
            FieldElement::Zero
        } else {
            FieldElement::Power(pos)
        }
    }

    fn add_packed(&self, a: u32, b: u32) -> u32 {
        if self.q == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for &p in &self.pow_q {
            out += prime::add(a % self.q, b % self.q, self.q) * p;
            a /= self.q;
            b /= self.q;
        }
        out
    }

    fn scale_packed(&self, c: u32, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0;
        for &p in &self.pow_q {
            out += prime::mul(c, a % self.q, self.q) * p;
            a /= self.q;
        }
        out
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.element_of_packed(self.add_packed(self.packed_of(a), self.packed_of(b)))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.scalar_mul(self.q - 1, a)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Power(x), FieldElement::Power(y)) => {
                FieldElement::Power(((x as u64 + y as u64) % self.group_order() as u64) as u32)
            }
            _ => FieldElement::Zero,
        }
    }

    /// Multiplication by a prime-field scalar `c` (taken mod q).
    pub fn scalar_mul(&self, c: u32, a: FieldElement) -> FieldElement {
        let c = c % self.q;
        if c == 0 {
            return FieldElement::Zero;
        }
        if self.q == 2 {
            return a;
        }
        self.element_of_packed(self.scale_packed(c, self.packed_of(a)))
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        match a {
            FieldElement::Zero => None,
            FieldElement::Power(0) => Some(FieldElement::ONE),
            FieldElement::Power(e) => Some(FieldElement::Power(self.group_order() - e)),
        }
    }

    pub fn mul_alpha(&self, a: FieldElement) -> FieldElement {
        match a {
            FieldElement::Zero => FieldElement::Zero,
            FieldElement::Power(e) => self.power(e as u64 + 1),
        }
    }
}

fn pack(digits: &[u32], pow_q: &[u32]) -> u32 {
    digits.iter().zip(pow_q).map(|(d, p)| d * p).sum()
}

/// In-place multiplication by x modulo the monic `poly`.
fn times_alpha(digits: &mut [u32], poly: &[u32], q: u32) {
    let n = digits.len();
    let top = digits[n - 1];
    for i in (1..n).rev() {
        digits[i] = prime::sub(digits[i - 1], prime::mul(top, poly[i], q), q);
    }
    digits[0] = prime::neg(prime::mul(top, poly[0], q), q);
}

/// Remainder of `f` modulo the monic `g`; both low to high.
fn poly_rem(f: &[u32], g: &[u32], q: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                r[shift + i] = prime::sub(r[shift + i], prime::mul(lead, gc, q), q);
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree up to `deg(f) / 2`.
fn is_irreducible(f: &[u32], q: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (q as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = code;
            for _ in 0..d {
                g.push((rest % q as u64) as u32);
                rest /= q as u64;
            }
            g.push(1);
            if poly_rem(f, &g, q).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use FieldElement::{Power, Zero};

    fn gf8() -> FieldContext {
        FieldContext::new(2, 3, Some(&[1, 1, 0, 1])).unwrap()
    }

    #[test]
    fn prime_field_of_order_two() {
        let f = FieldContext::new(2, 1, None).unwrap();
        let all: Vec<_> = f.elements().collect();
        assert_eq!(all, vec![Power(0), Zero]);
    }

    #[test]
    fn alpha_cubed_is_one_plus_alpha() {
        let f = gf8();
        assert_eq!(f.unpack(f.antilog_table()[3]), vec![1, 1, 0]);
        assert_eq!(f.vector_of(Power(3)), vec![1, 1, 0]);
    }

    #[test]
    fn reducible_polynomial_rejected() {
        // x^3 + x^2 + x + 1 = (x + 1)(x^2 + 1)
        let err = FieldContext::new(2, 3, Some(&[1, 1, 1, 1])).unwrap_err();
        assert_eq!(err, Error::NotIrreducible { q: 2 });
    }

    #[test]
    fn irreducible_but_not_primitive() {
        // x^4 + x^3 + x^2 + x + 1 divides x^5 - 1
        let err = FieldContext::new(2, 4, Some(&[1, 1, 1, 1, 1])).unwrap_err();
        assert_eq!(err, Error::NotPrimitive { order: 5, expected: 15 });
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(FieldContext::new(4, 2, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            FieldContext::new(2, 21, None),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(matches!(
            FieldContext::new(2, 3, Some(&[1, 1, 0, 0])),
            Err(Error::InvalidPolynomial(_))
        ));
        assert!(matches!(
            FieldContext::new(2, 3, Some(&[1, 1])),
            Err(Error::InvalidPolynomial(_))
        ));
        assert!(matches!(
            FieldContext::new(7, 2, None),
            Err(Error::NoDefaultPolynomial { .. })
        ));
    }

    #[test]
    fn builtin_table_entries_are_primitive() {
        for (q, poly) in DEFAULT_POLYS {
            let n = poly.len() - 1;
            let f = FieldContext::new(*q, n, None)
                .unwrap_or_else(|e| panic!("q={q} n={n}: {e}"));
            assert_eq!(f.poly(), *poly);
        }
    }

    #[test]
    fn addition_examples() {
        let f = gf8();
        assert_eq!(f.add(Power(0), Power(1)), Power(3));
        assert_eq!(f.add(Power(5), Zero), Power(5));
        assert_eq!(f.add(Power(4), Power(4)), Zero);
        assert_eq!(f.mul(Power(5), Power(4)), Power(2));
        assert_eq!(f.mul(Zero, Power(4)), Zero);
    }

    #[test]
    fn vector_conversions() {
        let f = gf8();
        assert_eq!(f.vector_of(Zero), vec![0, 0, 0]);
        assert_eq!(f.element_of(&[0, 1, 0]).unwrap(), Power(1));
        assert_eq!(f.element_of(&[0, 0, 0]).unwrap(), Zero);
        assert_eq!(
            f.element_of(&[0, 1]).unwrap_err(),
            Error::VectorLength { expected: 3, got: 2 }
        );
        assert!(matches!(f.element_of(&[0, 2, 0]), Err(Error::SymbolOutOfRange { .. })));
    }

    #[test]
    fn positions() {
        let f = gf8();
        assert_eq!(f.char_index(Zero), 7);
        assert_eq!(f.char_index(Power(0)), 0);
        assert_eq!(f.element_at(5).unwrap(), Power(5));
        assert_eq!(f.element_at(7).unwrap(), Zero);
        assert!(f.element_at(8).is_err());
        for pos in 0..8 {
            assert_eq!(f.char_index(f.element_at(pos).unwrap()), pos);
        }
    }

    #[test]
    fn multiply_by_alpha() {
        let f = gf8();
        assert_eq!(f.mul_alpha(Zero), Zero);
        assert_eq!(f.mul_alpha(Power(6)), Power(0));
        assert_eq!(f.mul_alpha(Power(2)), Power(3));
    }

    #[test]
    fn antilog_visits_every_nonzero_vector_once() {
        for (q, n) in [(2, 4), (3, 3), (5, 2), (2, 8)] {
            let f = FieldContext::new(q, n, None).unwrap();
            let mut seen = vec![false; f.order() as usize];
            for &v in f.antilog_table() {
                assert!(!seen[v as usize]);
                seen[v as usize] = true;
            }
            assert!(!seen[0]);
            assert!(seen[1..].iter().all(|&s| s));
            assert_eq!(f.antilog_table()[0], 1);
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (q, n) in [(2, 3), (3, 2), (2, 4), (5, 2), (3, 3)] {
            let f = FieldContext::new(q, n, None).unwrap();
            let all: Vec<_> = f.elements().collect();
            for &a in &all {
                assert_eq!(f.add(a, f.neg(a)), Zero);
                if let Some(ai) = f.inv(a) {
                    assert_eq!(f.mul(a, ai), FieldElement::ONE);
                }
                for &b in &all {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for &c in &all {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn scalar_multiplication_matches_repeated_addition() {
        let f = FieldContext::new(5, 2, None).unwrap();
        for a in f.elements() {
            let mut acc = Zero;
            for c in 0..5 {
                assert_eq!(f.scalar_mul(c, a), acc);
                acc = f.add(acc, a);
            }
        }
    }
}
