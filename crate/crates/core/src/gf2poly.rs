//! Polynomials over the two-element field, bit-packed into 64-bit words.
//!
//! Coefficient `j` lives in bit `j % 64` of word `j / 64`. The word vector is
//! kept canonical: the last stored word is nonzero, and the zero polynomial
//! stores no words at all. Over GF(2) every nonzero polynomial is monic, so
//! nothing here ever normalizes a leading coefficient.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which compares below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct PolyF2 {
    words: Vec<u64>,
}

/// The even/odd decomposition `f = even^2 + x * odd^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPair {
    pub even: PolyF2,
    pub odd: PolyF2,
}

fn trim(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

fn degree_of(words: &[u64]) -> Option<usize> {
    let last = *words.last()?;
    debug_assert_ne!(last, 0);
    Some((words.len() - 1) * WORD_BITS + (63 - last.leading_zeros() as usize))
}

/// `dst ^= src << shift`, growing `dst` as needed. Does not trim.
fn xor_shifted_into(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    if src.is_empty() {
        return;
    }
    let word_shift = shift / WORD_BITS;
    let bit_shift = shift % WORD_BITS;
    let needed = word_shift + src.len() + usize::from(bit_shift != 0);
    if dst.len() < needed {
        dst.resize(needed, 0);
    }
    if bit_shift == 0 {
        for (d, s) in dst[word_shift..].iter_mut().zip(src) {
            *d ^= *s;
        }
    } else {
        let mut carry = 0u64;
        for (i, &s) in src.iter().enumerate() {
            dst[word_shift + i] ^= (s << bit_shift) | carry;
            carry = s >> (WORD_BITS - bit_shift);
        }
        dst[word_shift + src.len()] ^= carry;
    }
}

/// Reduces `r` modulo the nonzero polynomial `d` in place, optionally
/// recording quotient bits.
fn reduce_in_place(r: &mut Vec<u64>, d: &[u64], mut quotient: Option<&mut Vec<u64>>) {
    let dd = degree_of(d).expect("nonzero divisor");
    trim(r);
    while let Some(dr) = degree_of(r) {
        if dr < dd {
            break;
        }
        let s = dr - dd;
        if let Some(q) = quotient.as_deref_mut() {
            let w = s / WORD_BITS;
            if q.len() <= w {
                q.resize(w + 1, 0);
            }
            q[w] ^= 1u64 << (s % WORD_BITS);
        }
        xor_shifted_into(r, d, s);
        trim(r);
    }
}

/// Spreads the low 32 bits of `x` onto the even bit positions.
#[inline]
pub(crate) fn spread_bits(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Gathers the even bit positions of `x` into the low 32 bits.
#[inline]
pub(crate) fn compress_even(x: u64) -> u32 {
    let mut x = x & 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x >> 4)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x >> 8)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x >> 16)) & 0x0000_0000_FFFF_FFFF;
    x as u32
}

#[inline]
fn deg_u64(x: u64) -> u32 {
    63 - x.leading_zeros()
}

/// Euclid on single-word polynomials.
pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let db = deg_u64(b);
        while a != 0 && deg_u64(a) >= db {
            a ^= b << (deg_u64(a) - db);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Remainder of single-word polynomials; `d` must be nonzero.
pub(crate) fn rem_u64(mut a: u64, d: u64) -> u64 {
    let dd = deg_u64(d);
    while a != 0 && deg_u64(a) >= dd {
        a ^= d << (deg_u64(a) - dd);
    }
    a
}

/// Remainder of a multiword polynomial modulo a nonzero single-word `d`
/// of degree below 64.
pub(crate) fn rem_words_u64(words: &[u64], d: u64) -> u64 {
    let dd = deg_u64(d);
    let wide = d as u128;
    let mut acc = 0u128;
    for &w in words.iter().rev() {
        acc = (acc << 64) | w as u128;
        while acc != 0 {
            let da = 127 - acc.leading_zeros();
            if da < dd {
                break;
            }
            acc ^= wide << (da - dd);
        }
    }
    acc as u64
}

/// Squarefree test for a polynomial that fits in one word.
pub(crate) fn is_squarefree_u64(f: u64) -> bool {
    if f == 0 {
        return false;
    }
    if f < 4 {
        return true;
    }
    gcd_u64(compress_even(f) as u64, compress_even(f >> 1) as u64) == 1
}

/// Carry-less 64x64 -> 128 multiplication.
#[inline]
fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    let a = a as u128;
    while b != 0 {
        let i = b.trailing_zeros();
        acc ^= a << i;
        b &= b - 1;
    }
    acc
}

impl PolyF2 {
    pub fn zero() -> Self {
        PolyF2 { words: Vec::new() }
    }

    pub fn one() -> Self {
        PolyF2 { words: vec![1] }
    }

    pub fn x() -> Self {
        PolyF2 { words: vec![2] }
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0; k / WORD_BITS + 1];
        words[k / WORD_BITS] = 1u64 << (k % WORD_BITS);
        PolyF2 { words }
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        trim(&mut words);
        PolyF2 { words }
    }

    pub fn from_u64(bits: u64) -> Self {
        Self::from_words(vec![bits])
    }

    /// Builds the polynomial whose listed exponents have coefficient 1.
    /// Repeated exponents cancel.
    pub fn from_exponents(exponents: &[usize]) -> Self {
        let mut words = Vec::new();
        for &e in exponents {
            let w = e / WORD_BITS;
            if words.len() <= w {
                words.resize(w + 1, 0);
            }
            words[w] ^= 1u64 << (e % WORD_BITS);
        }
        Self::from_words(words)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The bitmask when the polynomial fits in a single word.
    pub fn as_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn degree(&self) -> Degree {
        match degree_of(&self.words) {
            None => Degree::NegInfinity,
            Some(d) => Degree::Finite(d),
        }
    }

    /// Degree as an integer, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        degree_of(&self.words)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn coeff(&self, j: usize) -> bool {
        self.words
            .get(j / WORD_BITS)
            .is_some_and(|w| (w >> (j % WORD_BITS)) & 1 == 1)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Exponents with coefficient 1, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(i * WORD_BITS + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    pub fn with_flipped(&self, positions: &[usize]) -> Self {
        let mut words = self.words.clone();
        for &p in positions {
            let w = p / WORD_BITS;
            if words.len() <= w {
                words.resize(w + 1, 0);
            }
            words[w] ^= 1u64 << (p % WORD_BITS);
        }
        Self::from_words(words)
    }

    pub fn shl(&self, k: usize) -> Self {
        let mut words = Vec::new();
        xor_shifted_into(&mut words, &self.words, k);
        Self::from_words(words)
    }

    fn xor(&self, other: &PolyF2) -> PolyF2 {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (d, s) in words.iter_mut().zip(&short.words) {
            *d ^= *s;
        }
        Self::from_words(words)
    }

    fn clmul_poly(&self, other: &PolyF2) -> PolyF2 {
        if self.is_zero() || other.is_zero() {
            return PolyF2::zero();
        }
        let mut words = vec![0u64; self.words.len() + other.words.len()];
        for (i, &a) in self.words.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.words.iter().enumerate() {
                let p = clmul(a, b);
                words[i + j] ^= p as u64;
                words[i + j + 1] ^= (p >> 64) as u64;
            }
        }
        Self::from_words(words)
    }

    /// Squaring is linear in characteristic 2: it spreads bit `j` to `2j`.
    pub fn square(&self) -> PolyF2 {
        let mut words = Vec::with_capacity(2 * self.words.len());
        for &w in &self.words {
            words.push(spread_bits(w as u32));
            words.push(spread_bits((w >> 32) as u32));
        }
        Self::from_words(words)
    }

    pub fn divrem(&self, d: &PolyF2) -> Result<(PolyF2, PolyF2)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.words.clone();
        let mut q = Vec::new();
        reduce_in_place(&mut r, &d.words, Some(&mut q));
        Ok((Self::from_words(q), Self::from_words(r)))
    }

    pub fn rem(&self, d: &PolyF2) -> Result<PolyF2> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(b) = d.as_u64() {
            return Ok(PolyF2::from_u64(match self.as_u64() {
                Some(a) => rem_u64(a, b),
                None => rem_words_u64(&self.words, b),
            }));
        }
        let mut r = self.words.clone();
        reduce_in_place(&mut r, &d.words, None);
        Ok(Self::from_words(r))
    }

    /// Whether `self` divides `other`. The zero polynomial divides only zero.
    pub fn divides(&self, other: &PolyF2) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Greatest common divisor. The result needs no normalization: every
    /// nonzero polynomial over GF(2) is already monic.
    pub fn gcd(&self, other: &PolyF2) -> Result<PolyF2> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        if let (Some(a), Some(b)) = (self.as_u64(), other.as_u64()) {
            return Ok(PolyF2::from_u64(gcd_u64(a, b)));
        }
        let mut a = self.words.clone();
        let mut b = other.words.clone();
        while !b.is_empty() {
            if a.len() == 1 && b.len() == 1 {
                return Ok(PolyF2::from_u64(gcd_u64(a[0], b[0])));
            }
            reduce_in_place(&mut a, &b, None);
            std::mem::swap(&mut a, &mut b);
        }
        Ok(Self::from_words(a))
    }

    pub fn is_coprime(&self, other: &PolyF2) -> bool {
        self.gcd(other).map(|g| g.is_one()).unwrap_or(false)
    }

    pub fn split(&self) -> SplitPair {
        let n_out = self.words.len().div_ceil(2);
        let mut even = Vec::with_capacity(n_out);
        let mut odd = Vec::with_capacity(n_out);
        for pair in self.words.chunks(2) {
            let lo = pair[0];
            let hi = pair.get(1).copied().unwrap_or(0);
            even.push(compress_even(lo) as u64 | (compress_even(hi) as u64) << 32);
            odd.push(compress_even(lo >> 1) as u64 | (compress_even(hi >> 1) as u64) << 32);
        }
        SplitPair {
            even: Self::from_words(even),
            odd: Self::from_words(odd),
        }
    }

    pub fn recompose(pair: &SplitPair) -> PolyF2 {
        let mut words = pair.even.square().words;
        xor_shifted_into(&mut words, &pair.odd.square().words, 1);
        Self::from_words(words)
    }

    /// Number of coefficient positions in which `self` and `other` differ.
    pub fn l2_dist(&self, other: &PolyF2) -> u32 {
        let n = self.words.len().max(other.words.len());
        (0..n)
            .map(|i| {
                let a = self.words.get(i).copied().unwrap_or(0);
                let b = other.words.get(i).copied().unwrap_or(0);
                (a ^ b).count_ones()
            })
            .sum()
    }

    /// Squarefree test via `gcd(even, odd) == 1`. Nonzero polynomials of
    /// degree at most one are squarefree; zero is not.
    pub fn is_squarefree(&self) -> bool {
        match self.deg() {
            None => false,
            Some(d) if d < 2 => true,
            Some(_) => {
                if let Some(f) = self.as_u64() {
                    return is_squarefree_u64(f);
                }
                let SplitPair { even, odd } = self.split();
                even.is_coprime(&odd)
            }
        }
    }

    /// `gcd(even, odd)`: every irreducible factor of multiplicity > 1 divides it.
    pub fn repeated_factor_support(&self) -> Result<PolyF2> {
        match self.deg() {
            Some(d) if d >= 2 => {
                let SplitPair { even, odd } = self.split();
                even.gcd(&odd)
            }
            _ => Err(Error::DegreeTooSmall {
                what: "repeated_factor_support",
                min: 2,
                got: self.degree().to_string(),
            }),
        }
    }

    pub fn to_hex(&self) -> String {
        match self.words.split_last() {
            None => "0".to_string(),
            Some((top, rest)) => {
                let mut s = format!("{top:x}");
                for w in rest.iter().rev() {
                    s.push_str(&format!("{w:016x}"));
                }
                s
            }
        }
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty hex string".into()));
        }
        let digits = s.as_bytes();
        let mut words = vec![0u64; digits.len().div_ceil(16)];
        for (i, &c) in digits.iter().rev().enumerate() {
            let v = (c as char).to_digit(16).ok_or_else(|| {
                Error::Parse(format!("invalid hex digit {:?} in {s:?}", c as char))
            })?;
            words[i / 16] |= (v as u64) << (4 * (i % 16));
        }
        Ok(Self::from_words(words))
    }

    /// Parses sums of monomials such as `x^5+x^2+1`. Repeated terms cancel.
    pub fn parse_monomials(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut exps = Vec::new();
        for term in compact.split('+') {
            match term {
                "0" => {}
                "1" => exps.push(0),
                "x" => exps.push(1),
                t if t.starts_with("x^") => {
                    let e: usize = t[2..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in term {t:?}")))?;
                    exps.push(e);
                }
                t => return Err(Error::Parse(format!("bad term {t:?}"))),
            }
        }
        Ok(Self::from_exponents(&exps))
    }
}

impl fmt::Debug for PolyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyF2({self})")
    }
}

/// Monomial form, highest degree first: `x^2+x+1`.
impl fmt::Display for PolyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::LowerHex for PolyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Accepts either the hex bitmask or a monomial string. Anything containing
/// an `x` is read as monomials.
impl FromStr for PolyF2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains('x') || s.contains('+') {
            Self::parse_monomials(s)
        } else {
            Self::from_hex(s)
        }
    }
}

/// Orders by degree, then by bitmask value.
impl Ord for PolyF2 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for PolyF2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &PolyF2 {
    type Output = PolyF2;
    fn add(self, rhs: &PolyF2) -> PolyF2 {
        self.xor(rhs)
    }
}

impl Add for PolyF2 {
    type Output = PolyF2;
    fn add(self, rhs: PolyF2) -> PolyF2 {
        self.xor(&rhs)
    }
}

impl Mul for &PolyF2 {
    type Output = PolyF2;
    fn mul(self, rhs: &PolyF2) -> PolyF2 {
        self.clmul_poly(rhs)
    }
}

impl Mul for PolyF2 {
    type Output = PolyF2;
    fn mul(self, rhs: PolyF2) -> PolyF2 {
        self.clmul_poly(&rhs)
    }
}

impl Serialize for PolyF2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for PolyF2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyF2 {
        s.parse().unwrap()
    }

    /// Squarefree test by trial division with w^2 for every w of degree
    /// 1..=deg f / 2, checking irreducibility of w by brute force.
    fn naive_squarefree(f: u64) -> bool {
        if f == 0 {
            return false;
        }
        let n = deg_u64(f);
        for w in 2u64..(1u64 << (n / 2 + 1)) {
            let dw = deg_u64(w);
            if 2 * dw > n {
                continue;
            }
            let irreducible = (2u64..w).all(|v| deg_u64(v) * 2 > dw || rem_u64(w, v) != 0);
            if !irreducible {
                continue;
            }
            let sq = PolyF2::from_u64(w).square().as_u64().unwrap();
            if rem_u64(f, sq) == 0 {
                return false;
            }
        }
        true
    }

    #[test]
    fn add_examples() {
        assert!((p("x+1") + p("x+1")).is_zero());
        assert_eq!(p("x^2") + p("x+1"), p("x^2+x+1"));
        assert_eq!(PolyF2::zero() + p("x^3+1"), p("x^3+1"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("x+1") * p("x+1"), p("x^2+1"));
        assert_eq!(p("x^2+x+1") * p("x+1"), p("x^3+1"));
        assert!((p("x^7+x") * PolyF2::zero()).is_zero());
    }

    #[test]
    fn mul_across_words() {
        let a = PolyF2::monomial(63) + PolyF2::one();
        let b = PolyF2::monomial(70) + PolyF2::x();
        assert_eq!(a * b, PolyF2::from_exponents(&[133, 64, 70, 1]));
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = p("x^3+x+1").divrem(&p("x^2+x+1")).unwrap();
        assert_eq!((q, r), (p("x+1"), p("x")));
        let f = p("x^9+x^4+1");
        assert_eq!(
            f.divrem(&PolyF2::one()).unwrap(),
            (f.clone(), PolyF2::zero())
        );
        assert_eq!(p("x").divrem(&p("x^2")).unwrap(), (PolyF2::zero(), p("x")));
        assert_eq!(f.divrem(&PolyF2::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("x^2+1").gcd(&p("x+1")).unwrap(), p("x+1"));
        assert_eq!(p("x").gcd(&p("x+1")).unwrap(), PolyF2::one());
        let f = p("x^5+x^2+1");
        assert_eq!(f.gcd(&PolyF2::zero()).unwrap(), f);
        assert_eq!(PolyF2::zero().gcd(&PolyF2::zero()), Err(Error::GcdOfZeros));
    }

    #[test]
    fn gcd_multiword() {
        let w = p("x^13+x^4+x^3+x+1");
        let a = &(PolyF2::monomial(200) + PolyF2::one()) * &w;
        let b = &(PolyF2::monomial(150) + p("x^3+1")) * &w;
        let g = a.gcd(&b).unwrap();
        assert!(w.divides(&g));
        assert!(g.divides(&a) && g.divides(&b));
    }

    #[test]
    fn split_and_recompose() {
        let f = p("x^5+x^4+x^2+1");
        let s = f.split();
        assert_eq!(s.even, p("x^2+x+1"));
        assert_eq!(s.odd, p("x^2"));
        assert_eq!(PolyF2::recompose(&s), f);

        let z = PolyF2::zero().split();
        assert!(z.even.is_zero() && z.odd.is_zero());
        let s = p("x").split();
        assert_eq!((s.even, s.odd), (PolyF2::zero(), PolyF2::one()));

        let one = SplitPair {
            even: PolyF2::one(),
            odd: PolyF2::zero(),
        };
        assert_eq!(PolyF2::recompose(&one), PolyF2::one());
        let x = SplitPair {
            even: PolyF2::zero(),
            odd: PolyF2::one(),
        };
        assert_eq!(PolyF2::recompose(&x), PolyF2::x());
    }

    #[test]
    fn recompose_split_exhaustive_to_degree_20() {
        for bits in 0u64..(1 << 21) {
            let f = PolyF2::from_u64(bits);
            let s = f.split();
            if let Some(n) = f.deg() {
                assert!(s.even.degree() <= Degree::Finite(n / 2));
                if n >= 1 {
                    assert!(s.odd.degree() <= Degree::Finite((n - 1) / 2));
                }
            }
            assert_eq!(PolyF2::recompose(&s), f);
        }
    }

    #[test]
    fn l2_dist_examples() {
        assert_eq!(p("x^2+1").l2_dist(&p("x^2+x+1")), 1);
        assert_eq!(p("x^4+x").l2_dist(&p("x^4+x")), 0);
        assert_eq!(p("x^5+x^3").l2_dist(&p("x^2+1")), 4);
    }

    #[test]
    fn squarefree_examples() {
        assert!(!p("x^2").is_squarefree());
        assert!(p("x^2+x+1").is_squarefree());
        assert!(p("x").is_squarefree());
        assert!(!p("x^2+1").is_squarefree());
        assert!(PolyF2::one().is_squarefree());
        assert!(!PolyF2::zero().is_squarefree());
    }

    #[test]
    fn squarefree_matches_naive_to_degree_12() {
        for bits in 4u64..(1 << 13) {
            assert_eq!(
                is_squarefree_u64(bits),
                naive_squarefree(bits),
                "{}",
                PolyF2::from_u64(bits)
            );
        }
    }

    #[test]
    fn repeated_factor_support_examples() {
        let f = p("x^4+x^3+x+1");
        assert_eq!(&(&p("x+1") * &p("x+1")) * &p("x^2+x+1"), f);
        assert!(p("x+1").divides(&f.repeated_factor_support().unwrap()));
        assert_eq!(
            p("x^2+x+1").repeated_factor_support().unwrap(),
            PolyF2::one()
        );
        assert_eq!(p("x^4").repeated_factor_support().unwrap(), p("x^2"));
        assert!(p("x+1").repeated_factor_support().is_err());
    }

    #[test]
    fn degree_sentinel_orders_below_zero() {
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(PolyF2::zero().degree(), Degree::NegInfinity);
        assert_eq!(PolyF2::one().degree(), Degree::Finite(0));
    }

    #[test]
    fn hex_and_monomial_forms() {
        assert_eq!(p("x^2+x+1").to_hex(), "7");
        assert_eq!(PolyF2::from_hex("7").unwrap(), p("x^2+x+1"));
        assert_eq!(PolyF2::zero().to_hex(), "0");
        assert_eq!(p("0"), PolyF2::zero());
        let big = PolyF2::monomial(64) + PolyF2::one();
        assert_eq!(big.to_hex(), "10000000000000001");
        assert_eq!(PolyF2::from_hex(&big.to_hex()).unwrap(), big);
        assert_eq!(p("x^70+x").to_string(), "x^70+x");
        assert!(PolyF2::from_hex("xyz").is_err());
        assert!("x^+1".parse::<PolyF2>().is_err());
        assert_eq!(p("00f"), p("f"));
    }
}
