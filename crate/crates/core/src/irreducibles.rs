//! Monic irreducibles over GF(2) up to a degree bound, and the products
//! built from them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2poly::{rem_u64, rem_words_u64, PolyF2};

/// Largest supported sieve degree; the sieve bitmap has `2^(t+1)` bits.
pub const MAX_SIEVE_DEGREE: u32 = 30;

/// All monic irreducibles of degree `1..=max_degree`, ordered by degree and
/// then by bitmask value. Every entry fits in a single word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleTable {
    max_degree: u32,
    masks: Vec<u64>,
    // masks[starts[d]..starts[d + 1]] are the entries of degree d
    starts: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeCount {
    pub degree: u32,
    pub count: usize,
}

impl IrreducibleTable {
    /// Sieves every polynomial of degree `<= t`.
    ///
    /// The multiples `p * q` of an irreducible `p` of degree `d` with `q`
    /// ranging over polynomials of degree `<= t - d` form a linear subspace,
    /// so they are walked in Gray-code order with one XOR per step.
    pub fn enumerate(t: u32) -> Result<Self> {
        if !(1..=MAX_SIEVE_DEGREE).contains(&t) {
            return Err(Error::OutOfRange(format!(
                "max degree must be in 1..={MAX_SIEVE_DEGREE}, got {t}"
            )));
        }
        let limit = 1u64 << (t + 1);
        let mut composite = vec![0u64; (limit as usize).div_ceil(64)];
        let mut masks = Vec::new();
        let mut starts = vec![0, 0];
        for d in 1..=t {
            for v in (1u64 << d)..(1u64 << (d + 1)) {
                if composite[(v / 64) as usize] >> (v % 64) & 1 == 1 {
                    continue;
                }
                masks.push(v);
                if 2 * d > t {
                    continue;
                }
                let span = t - d + 1;
                let mut m = 0u64;
                for k in 1u64..(1u64 << span) {
                    m ^= v << k.trailing_zeros();
                    if m != v {
                        composite[(m / 64) as usize] |= 1 << (m % 64);
                    }
                }
            }
            starts.push(masks.len());
        }
        Ok(IrreducibleTable {
            max_degree: t,
            masks,
            starts,
        })
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn masks_of_degree(&self, d: u32) -> &[u64] {
        if d == 0 || d > self.max_degree {
            return &[];
        }
        &self.masks[self.starts[d as usize]..self.starts[d as usize + 1]]
    }

    pub fn iter(&self) -> impl Iterator<Item = PolyF2> + '_ {
        self.masks.iter().map(|&m| PolyF2::from_u64(m))
    }

    pub fn counts(&self) -> Vec<DegreeCount> {
        (1..=self.max_degree)
            .map(|d| DegreeCount {
                degree: d,
                count: self.masks_of_degree(d).len(),
            })
            .collect()
    }

    pub fn contains(&self, mask: u64) -> bool {
        if mask < 2 {
            return false;
        }
        let d = 63 - mask.leading_zeros();
        self.masks_of_degree(d).binary_search(&mask).is_ok()
    }

    /// Sum of the degrees of all entries.
    pub fn total_degree(&self) -> u64 {
        (1..=self.max_degree)
            .map(|d| d as u64 * self.masks_of_degree(d).len() as u64)
            .sum()
    }

    /// Product of every entry, evaluated in table order.
    pub fn product(&self) -> PolyF2 {
        product_of(self.masks.iter().copied())
    }
}

fn product_of(masks: impl Iterator<Item = u64>) -> PolyF2 {
    masks.fold(PolyF2::one(), |acc, m| &acc * &PolyF2::from_u64(m))
}

pub fn enumerate(t: u32) -> Result<IrreducibleTable> {
    IrreducibleTable::enumerate(t)
}

/// Product of the table entries that do not divide `f`.
///
/// `f` is first reduced modulo the product of the whole table; each entry
/// divides `f` exactly when it divides that residue.
pub fn product_coprime_to(f: &PolyF2, table: &IrreducibleTable) -> PolyF2 {
    let residue = f.rem(&table.product()).expect("table product is nonzero");
    product_coprime_to_residue(&residue, table)
}

/// Same as [`product_coprime_to`] when `residue = f mod table.product()`
/// is already known.
pub(crate) fn product_coprime_to_residue(residue: &PolyF2, table: &IrreducibleTable) -> PolyF2 {
    product_of(
        table
            .masks
            .iter()
            .copied()
            .filter(|&m| rem_words_u64(residue.words(), m) != 0),
    )
}

/// `x^i + x^(i-1) + ... + x + 1`.
pub fn all_one_poly(i: usize) -> PolyF2 {
    let full = (i + 1) / 64;
    let mut words = vec![u64::MAX; full];
    let rest = (i + 1) % 64;
    if rest != 0 {
        words.push((1u64 << rest) - 1);
    }
    PolyF2::from_words(words)
}

/// `(x + 1)(x^2 + 1)...(x^t + 1)`.
pub fn pi1(t: usize) -> PolyF2 {
    (1..=t).fold(PolyF2::one(), |acc, i| {
        &acc * &(PolyF2::monomial(i) + PolyF2::one())
    })
}

/// `x * all_one_poly(1) * ... * all_one_poly(t)`, defined for `t >= 2`.
pub fn pi2(t: usize) -> Result<PolyF2> {
    if t < 2 {
        return Err(Error::OutOfRange(format!("pi2 needs t >= 2, got {t}")));
    }
    Ok((1..=t).fold(PolyF2::x(), |acc, i| &acc * &all_one_poly(i)))
}

/// Product of the distinct table entries dividing `f`.
///
/// Degrees are scanned upward. For each degree `d` the factor
/// `gcd(residual, x^(2^d) - x)` collects every remaining irreducible factor
/// of degree `d` (smaller degrees were already divided out); only when it is
/// nontrivial are the table entries of that degree trial-divided into it.
/// Fails if anything is left over once the table is exhausted.
pub fn radical(f: &PolyF2, table: &IrreducibleTable) -> Result<PolyF2> {
    if f.is_zero() {
        return Err(Error::OutOfRange("radical of the zero polynomial".into()));
    }
    let mut residual = f.clone();
    let mut found: Vec<u64> = Vec::new();
    for d in 1..=table.max_degree {
        match residual.deg() {
            Some(r) if r >= d as usize => {}
            _ => break,
        }
        let mut frob = PolyF2::x();
        for _ in 0..d {
            frob = frob.square().rem(&residual)?;
        }
        let block = (frob + PolyF2::x()).gcd(&residual)?;
        if block.is_one() {
            continue;
        }
        let target = block.deg().unwrap_or(0);
        let mut covered = 0usize;
        for &m in table.masks_of_degree(d) {
            let divides = match block.as_u64() {
                Some(b) => rem_u64(b, m) == 0,
                None => rem_words_u64(block.words(), m) == 0,
            };
            if !divides {
                continue;
            }
            found.push(m);
            let factor = PolyF2::from_u64(m);
            loop {
                let (q, r) = residual.divrem(&factor)?;
                if !r.is_zero() {
                    break;
                }
                residual = q;
            }
            covered += d as usize;
            if covered == target {
                break;
            }
        }
    }
    if !residual.is_one() {
        return Err(Error::ResidualFactor(residual.to_hex()));
    }
    Ok(product_of(found.into_iter()))
}

/// Whether `m` (one word) is irreducible, by trial division against all
/// polynomials of at most half its degree. Used for table-free checks.
pub fn is_irreducible_u64(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let d = 63 - m.leading_zeros();
    (2u64..(1u64 << (d / 2 + 1))).all(|v| rem_u64(m, v) != 0)
}
