//! Integer polynomials: resultants, unimodular Bezout identities and CRT,
//! the k-free obstruction witness, and the lift of GF(2) approximations to
//! Z[x].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::approx::{squarefree_approx, ApproxCertificate};
use crate::error::{Error, Result};
use crate::gf2poly::{Degree, PolyF2};

/// Coefficients in ascending order of power; the last stored coefficient is
/// nonzero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct PolyZ {
    coeffs: Vec<BigInt>,
}

impl PolyZ {
    pub fn zero() -> Self {
        PolyZ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        PolyZ { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyZ { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree(&self) -> Degree {
        self.deg().map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> PolyZ {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn div_scalar_exact(&self, c: &BigInt) -> PolyZ {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        )
    }

    pub fn shift(&self, k: usize) -> PolyZ {
        if self.is_zero() {
            return PolyZ::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyZ { coeffs }
    }

    pub fn pow(&self, k: u32) -> PolyZ {
        (0..k).fold(PolyZ::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> PolyZ {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * BigInt::from(j))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> PolyZ {
        if self.is_zero() {
            return PolyZ::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division by a monic divisor, exact over the integers.
    pub fn divrem_monic(&self, d: &PolyZ) -> Result<(PolyZ, PolyZ)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !d.is_monic() {
            return Err(Error::OutOfRange("divisor must be monic".into()));
        }
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((PolyZ::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = std::mem::take(&mut r[i + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs[..dd].iter().enumerate() {
                r[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(q), Self::from_coeffs(r)))
    }

    pub fn rem_monic(&self, d: &PolyZ) -> Result<PolyZ> {
        self.divrem_monic(d).map(|(_, r)| r)
    }

    /// Sum of absolute values of the coefficients.
    pub fn l_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Coefficientwise reduction modulo 2.
    pub fn mod2(&self) -> PolyF2 {
        let exps: Vec<usize> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_odd())
            .map(|(j, _)| j)
            .collect();
        PolyF2::from_exponents(&exps)
    }

    /// The 0/1 integer polynomial with the same coefficients.
    pub fn from_f2(f: &PolyF2) -> PolyZ {
        let n = f.deg().map_or(0, |d| d + 1);
        Self::from_coeffs(
            (0..n)
                .map(|j| {
                    if f.coeff(j) {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect(),
        )
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_decimal_strings<S: AsRef<str>>(items: &[S]) -> Result<PolyZ> {
        items
            .iter()
            .map(|s| {
                s.as_ref()
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("{:?}: {e}", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_coeffs)
    }

    /// Parses a JSON array of decimal strings (plain integers are accepted too).
    pub fn from_json(text: &str) -> Result<PolyZ> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let items = value
            .as_array()
            .ok_or_else(|| Error::Parse("expected a JSON array".into()))?;
        let strings = items
            .iter()
            .map(|v| match v {
                serde_json::Value::String(s) => Ok(s.clone()),
                serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
                other => Err(Error::Parse(format!("bad coefficient {other}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_decimal_strings(&strings)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

impl fmt::Debug for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyZ({self})")
    }
}

impl fmt::Display for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if !first || c.is_negative() {
                f.write_str(sign)?;
            }
            first = false;
            let a = c.abs();
            let mono = match j {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{j}"),
            };
            if a.is_one() && j > 0 {
                f.write_str(&mono)?;
            } else if j == 0 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for PolyZ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        PolyZ::from_decimal_strings(&items).map_err(serde::de::Error::custom)
    }
}

fn zip_coeffs(a: &PolyZ, b: &PolyZ, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> PolyZ {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = BigInt::zero();
    PolyZ::from_coeffs(
        (0..n)
            .map(|j| {
                op(
                    a.coeffs.get(j).unwrap_or(&zero),
                    b.coeffs.get(j).unwrap_or(&zero),
                )
            })
            .collect(),
    )
}

impl Add for &PolyZ {
    type Output = PolyZ;
    fn add(self, rhs: &PolyZ) -> PolyZ {
        zip_coeffs(self, rhs, |a, b| a + b)
    }
}

impl Sub for &PolyZ {
    type Output = PolyZ;
    fn sub(self, rhs: &PolyZ) -> PolyZ {
        zip_coeffs(self, rhs, |a, b| a - b)
    }
}

impl Neg for &PolyZ {
    type Output = PolyZ;
    fn neg(self) -> PolyZ {
        PolyZ::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &PolyZ {
    type Output = PolyZ;
    fn mul(self, rhs: &PolyZ) -> PolyZ {
        if self.is_zero() || rhs.is_zero() {
            return PolyZ::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyZ::from_coeffs(out)
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_rem(a: &PolyZ, b: &PolyZ) -> PolyZ {
    let db = b.deg().expect("nonzero divisor");
    let lb = b.lc();
    let mut r = a.clone();
    let mut e = a.deg().map_or(0, |da| (da + 1).saturating_sub(db));
    while let Some(dr) = r.deg() {
        if dr < db {
            break;
        }
        let s = b.scale(&r.lc()).shift(dr - db);
        r = &r.scale(&lb) - &s;
        e = e.saturating_sub(1);
    }
    r.scale(&num_traits::pow(lb, e))
}

/// Exact resultant by the subresultant remainder sequence.
pub fn resultant(f: &PolyZ, g: &PolyZ) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::OutOfRange("resultant of the zero polynomial".into()));
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = BigInt::one();
    let (da, db) = (a.deg().unwrap(), b.deg().unwrap());
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if (da * db) % 2 == 1 {
            sign = -sign;
        }
    }
    let (da, db) = (a.deg().unwrap(), b.deg().unwrap());
    if db == 0 {
        return Ok(sign * num_traits::pow(b.lc(), da));
    }
    let (ca, cb) = (a.content(), b.content());
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let scale = num_traits::pow(ca, db) * num_traits::pow(cb, da);
    let mut g_ = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.deg().unwrap(), b.deg().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        b = r.div_scalar_exact(&(&g_ * num_traits::pow(h.clone(), delta)));
        g_ = a.lc();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g_.clone(), delta) / num_traits::pow(h, delta - 1)
        };
        if b.deg() == Some(0) {
            break;
        }
    }
    let da = a.deg().unwrap();
    let h = num_traits::pow(b.lc(), da) / num_traits::pow(h, da - 1);
    Ok(sign * scale * h)
}

/// Greatest common divisor over Z by the subresultant sequence, primitive
/// with positive leading coefficient times the gcd of the contents.
pub fn gcd(f: &PolyZ, g: &PolyZ) -> PolyZ {
    let (mut a, mut b) = (f.clone(), g.clone());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_zero() {
        return a.primitive_part().scale(&a.content());
    }
    let d = a.content().gcd(&b.content());
    a = a.primitive_part();
    b = b.primitive_part();
    let mut g_ = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg().unwrap() - b.deg().unwrap();
        let r = pseudo_rem(&a, &b);
        if r.is_zero() {
            return b.primitive_part().scale(&d);
        }
        if r.deg() == Some(0) {
            return PolyZ::constant(d);
        }
        a = b;
        b = r.div_scalar_exact(&(&g_ * num_traits::pow(h.clone(), delta)));
        g_ = a.lc();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g_.clone(), delta) / num_traits::pow(h, delta - 1)
        };
    }
}

/// Squarefree over Q: `gcd(f, f')` is a nonzero constant.
pub fn is_squarefree_over_q(f: &PolyZ) -> bool {
    match f.deg() {
        None => false,
        Some(0) => true,
        Some(_) => gcd(f, &f.derivative()).deg() == Some(0),
    }
}

type PolyQ = Vec<BigRational>;

fn q_trim(mut p: PolyQ) -> PolyQ {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn q_from(p: &PolyZ) -> PolyQ {
    p.coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn q_sub_mul(a: &PolyQ, q: &PolyQ, b: &PolyQ) -> PolyQ {
    let mut out = a.clone();
    for (i, qi) in q.iter().enumerate() {
        if qi.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if out.len() <= i + j {
                out.resize(i + j + 1, BigRational::zero());
            }
            out[i + j] -= qi * bj;
        }
    }
    q_trim(out)
}

fn q_divrem(a: &PolyQ, b: &PolyQ) -> (PolyQ, PolyQ) {
    let db = b.len() - 1;
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lb = b[db].clone();
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lb;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    (q_trim(q), q_trim(r))
}

fn q_to_z(p: &PolyQ) -> Option<PolyZ> {
    p.iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .map(PolyZ::from_coeffs)
}

/// `(u, v)` with `u f + v g = 1` in Z[x], `deg u < deg g`, `deg v < deg f`.
/// Computed by extended Euclid over Q; integrality follows from
/// `Res(f, g) = +-1` and is checked, as is the identity itself.
pub fn bezout_unimodular(f: &PolyZ, g: &PolyZ) -> Result<(PolyZ, PolyZ)> {
    let res = resultant(f, g)?;
    if res.abs() != BigInt::one() {
        return Err(Error::NotUnimodular(res.to_string()));
    }
    let (mut r0, mut r1) = (q_from(f), q_from(g));
    let one = vec![BigRational::one()];
    let (mut s0, mut s1): (PolyQ, PolyQ) = (one.clone(), Vec::new());
    let (mut t0, mut t1): (PolyQ, PolyQ) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = q_divrem(&r0, &r1);
        let s = q_sub_mul(&s0, &q, &s1);
        let t = q_sub_mul(&t0, &q, &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    debug_assert_eq!(r0.len(), 1);
    let c = r0[0].clone();
    let u: PolyQ = q_trim(s0.iter().map(|x| x / &c).collect());
    let v: PolyQ = q_trim(t0.iter().map(|x| x / &c).collect());
    let (Some(u), Some(v)) = (q_to_z(&u), q_to_z(&v)) else {
        return Err(Error::Verification(
            "Bezout cofactors are not integral".into(),
        ));
    };
    if !(&(&u * f) + &(&v * g)).is_one() {
        return Err(Error::Verification("u f + v g != 1".into()));
    }
    Ok((u, v))
}

/// The unique `r` with `deg r < sum deg m_j` and `r = residues[j] mod moduli[j]`
/// for every `j`. Moduli must be monic and pairwise unimodular.
pub fn crt(moduli: &[PolyZ], residues: &[PolyZ]) -> Result<PolyZ> {
    if moduli.len() != residues.len() {
        return Err(Error::OutOfRange(format!(
            "{} moduli but {} residues",
            moduli.len(),
            residues.len()
        )));
    }
    if moduli.is_empty() {
        return Err(Error::OutOfRange("crt needs at least one modulus".into()));
    }
    if let Some(m) = moduli.iter().find(|m| !m.is_monic()) {
        return Err(Error::OutOfRange(format!("modulus {m} is not monic")));
    }
    let mut solution = residues[0].rem_monic(&moduli[0])?;
    let mut modulus = moduli[0].clone();
    for (m, r) in moduli.iter().zip(residues).skip(1) {
        let reduced = modulus.rem_monic(m)?;
        if reduced.is_zero() {
            return Err(Error::NotUnimodular("0".into()));
        }
        // u * modulus = 1 (mod m)
        let (u, _) = bezout_unimodular(&reduced, m)?;
        let diff = (r - &solution).rem_monic(m)?;
        let k = (&diff * &u).rem_monic(m)?;
        solution = &solution + &(&modulus * &k);
        modulus = &modulus * m;
    }
    solution.rem_monic(&modulus)
}

/// `x^(p-1) + ... + x + 1` for a prime `p < 10^6`.
pub fn cyclotomic_prime(p: u64) -> Result<PolyZ> {
    if p >= 1_000_000 {
        return Err(Error::OutOfRange(format!("prime index {p} is too large")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(PolyZ::from_coeffs(vec![BigInt::one(); p as usize]))
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

pub fn first_primes(count: usize) -> Vec<u64> {
    (2u64..).filter(|&p| is_prime(p)).take(count).collect()
}

/// `N0 = k * sum_{j=1}^{2k} (p_j - 1) + k + 1` over the first `2k` primes.
pub fn kfree_n0(k: u32) -> u64 {
    let sum: u64 = first_primes(2 * k as usize).iter().map(|p| p - 1).sum();
    k as u64 * sum + k as u64 + 1
}

/// The residue attached to modulus `j`: `0` for `j = 0`, otherwise
/// `(-1)^j x^floor((j-1)/2)`.
fn kfree_residue(j: usize) -> PolyZ {
    if j == 0 {
        return PolyZ::zero();
    }
    let mono = PolyZ::monomial((j - 1) / 2);
    if j % 2 == 1 {
        -&mono
    } else {
        mono
    }
}

/// Construction data and self-checks for a polynomial `F` of degree `n`
/// every one of whose length-one neighbours is divisible by some `f_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KFreeWitness {
    pub k: u32,
    pub primes: Vec<u64>,
    pub moduli: Vec<PolyZ>,
    pub residues: Vec<PolyZ>,
    pub g: PolyZ,
    #[serde(rename = "P")]
    pub p: PolyZ,
    #[serde(rename = "N")]
    pub big_n: u64,
    #[serde(rename = "N0")]
    pub n0: u64,
    pub n: u64,
    #[serde(serialize_with = "as_decimal")]
    pub a: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub b: BigInt,
    #[serde(rename = "F")]
    pub f: PolyZ,
    /// Set when `a = b = 0`, so `F` is just `g`.
    pub degenerate: bool,
    /// Set when the witness was built for `n < N0`.
    pub below_n0: bool,
}

fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn kfree_construct(k: u32, n: u64, a: &BigInt, b: &BigInt) -> Result<KFreeWitness> {
    kfree_construct_with(k, n, a, b, false)
}

/// As [`kfree_construct`]; `allow_below_n0` admits `N + 1 <= n < N0`, where
/// only [`kfree_verify`] can tell whether the obstruction still holds.
pub fn kfree_construct_with(
    k: u32,
    n: u64,
    a: &BigInt,
    b: &BigInt,
    allow_below_n0: bool,
) -> Result<KFreeWitness> {
    if k < 2 {
        return Err(Error::OutOfRange(format!("k must be at least 2, got {k}")));
    }
    let primes = first_primes(2 * k as usize);
    let n0 = kfree_n0(k);
    let mut moduli = vec![PolyZ::monomial(k as usize)];
    for &p in &primes {
        moduli.push(cyclotomic_prime(p)?.pow(k));
    }
    let residues: Vec<PolyZ> = (0..moduli.len()).map(kfree_residue).collect();
    let p_poly = moduli[1..].iter().fold(PolyZ::one(), |acc, m| &acc * m);
    let big_n = p_poly.deg().unwrap() as u64;
    if n < n0 && !(allow_below_n0 && n > big_n) {
        return Err(Error::OutOfRange(format!("n = {n} is below N0 = {n0}")));
    }
    let g = crt(&moduli, &residues)?;
    let tail =
        &p_poly.shift((n - big_n - 1) as usize) * &PolyZ::from_coeffs(vec![b.clone(), a.clone()]);
    let f = &g + &tail;

    let witness = KFreeWitness {
        k,
        primes,
        moduli,
        residues,
        g,
        p: p_poly,
        big_n,
        n0,
        n,
        a: a.clone(),
        b: b.clone(),
        f,
        degenerate: a.is_zero() && b.is_zero(),
        below_n0: n < n0,
    };
    witness.check_invariants()?;
    Ok(witness)
}

impl KFreeWitness {
    fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Verification(msg));
        if self.g.degree() >= Degree::Finite((self.big_n + self.k as u64) as usize) {
            return fail(format!("deg g = {} is not below N + k", self.g.degree()));
        }
        for (j, (m, r)) in self.moduli.iter().zip(&self.residues).enumerate() {
            if !(&self.g - r).rem_monic(m)?.is_zero() {
                return fail(format!("g is not congruent to a_{j} modulo f_{j}"));
            }
        }
        let sum: u64 = self.primes.iter().map(|p| p - 1).sum();
        if self.n0 != self.k as u64 * sum + self.k as u64 + 1
            || self.n0 != self.big_n + self.k as u64 + 1
        {
            return fail(format!("N0 = {} does not match its formula", self.n0));
        }
        if !self.a.is_zero() && self.f.deg() != Some(self.n as usize) {
            return fail(format!("deg F = {} but n = {}", self.f.degree(), self.n));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborCheck {
    /// `F`, `F+x^l` or `F-x^l`.
    pub neighbor: String,
    /// Index `j` of the first modulus `f_j` dividing the neighbour.
    pub modulus_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KFreeReport {
    pub checked: usize,
    pub entries: Vec<NeighborCheck>,
}

/// Checks `F` and every `F +- x^l`, `0 <= l <= n`, for divisibility by one
/// of the moduli. Each modulus is a `k`-th power, so a hit certifies the
/// neighbour is not k-free.
pub fn kfree_verify(w: &KFreeWitness) -> Result<KFreeReport> {
    let mut neighbors: Vec<(String, PolyZ)> = vec![("F".into(), w.f.clone())];
    for l in 0..=w.n as usize {
        let mono = PolyZ::monomial(l);
        neighbors.push((format!("F+x^{l}"), &w.f + &mono));
        neighbors.push((format!("F-x^{l}"), &w.f - &mono));
    }
    let entries = neighbors
        .into_par_iter()
        .map(|(name, h)| {
            for (j, m) in w.moduli.iter().enumerate() {
                if h.rem_monic(m)?.is_zero() {
                    return Ok(NeighborCheck {
                        neighbor: name,
                        modulus_index: j,
                    });
                }
            }
            Err(Error::Verification(format!(
                "{name} is divisible by no modulus"
            )))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KFreeReport {
        checked: entries.len(),
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftResult {
    pub g: PolyZ,
    pub dist: u64,
    /// Whether the leading coefficient had to be made odd first.
    pub leading_bumped: bool,
    pub f2_stage: PolyF2,
    pub certificate: ApproxCertificate,
}

/// A squarefree `g` in Z[x] of the same degree as `f`.
///
/// `f` is made to have an odd leading coefficient (adding `x^n` if needed),
/// reduced mod 2 and approximated over GF(2); the result is lifted back so
/// that every coefficient of `f_2 - g` lies in `{0, 1}`. A squarefree
/// reduction of full degree forces `g` squarefree over Q, which is checked
/// again with an integer gcd.
pub fn lift_squarefree(f: &PolyZ, epsilon: f64) -> Result<LiftResult> {
    let n = match f.deg() {
        Some(n) if n >= 2 => n,
        _ => {
            return Err(Error::DegreeTooSmall {
                what: "lift_squarefree",
                min: 2,
                got: f.degree().to_string(),
            })
        }
    };
    let leading_bumped = f.lc().is_even();
    let f2 = if leading_bumped {
        f + &PolyZ::monomial(n)
    } else {
        f.clone()
    };
    let (g_bar, certificate) = squarefree_approx(&f2.mod2(), epsilon)?;
    let coeffs: Vec<BigInt> = (0..=n)
        .map(|j| {
            let c = f2.coeff(j);
            if c.is_odd() == g_bar.coeff(j) {
                c
            } else {
                c - 1
            }
        })
        .collect();
    let g = PolyZ::from_coeffs(coeffs);
    if g.deg() != Some(n) || g.mod2() != g_bar {
        return Err(Error::Verification(
            "lifted polynomial does not reduce correctly".into(),
        ));
    }
    if !is_squarefree_over_q(&g) {
        return Err(Error::Verification(format!(
            "lift {g} is not squarefree over Q"
        )));
    }
    let dist = (f - &g)
        .l_norm()
        .to_u64()
        .expect("coefficient differences are bounded");
    Ok(LiftResult {
        g,
        dist,
        leading_bumped,
        f2_stage: g_bar,
        certificate,
    })
}

pub fn l_norm(f: &PolyZ) -> BigInt {
    f.l_norm()
}
