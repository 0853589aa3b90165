//! Exhaustive nearest-squarefree search and degree sweeps.
//!
//! Candidates are `f` with a set of coefficient positions flipped. Flip masks
//! are visited level by level (by popcount) and, inside a level, in
//! increasing numeric order, so the first squarefree candidate found is a
//! nearest one with the smallest mask.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2poly::{is_squarefree_u64, PolyF2};

/// Largest input degree accepted by [`nearest_squarefree`].
pub const MAX_ORACLE_DEGREE: usize = 40;

/// Candidate budget: `sum_{r <= 5} C(41, r)`, every mask of weight at most
/// five over the 41 positions of a degree-40 input.
pub const CANDIDATE_BUDGET: u64 = 862_190;

/// Largest degree accepted by an exhaustive [`scan`].
pub const MAX_EXHAUSTIVE_SCAN_DEGREE: u32 = 22;

/// At most this many extremal inputs are kept in a [`ScanReport`].
pub const MAX_REPORTED_WITNESSES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub input: PolyF2,
    pub distance: u32,
    pub witness: PolyF2,
    pub ties: u64,
}

pub fn nearest_squarefree(f: &PolyF2) -> Result<OracleResult> {
    nearest_squarefree_with(f, false)
}

/// With `exact_degree` set the leading coefficient is never flipped, so the
/// witness keeps the degree of `f`.
pub fn nearest_squarefree_with(f: &PolyF2, exact_degree: bool) -> Result<OracleResult> {
    match f.deg() {
        Some(n) if n <= MAX_ORACLE_DEGREE => level_search(f, exact_degree),
        Some(n) => Err(Error::GuardExceeded(format!(
            "degree {n} exceeds the oracle limit {MAX_ORACLE_DEGREE}"
        ))),
        None => Err(Error::OutOfRange(
            "the zero polynomial has no squarefree polynomial of degree at most its own".into(),
        )),
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Level-order search under [`CANDIDATE_BUDGET`], without a degree cap.
/// Also serves as the small-input fallback of the approximation pipeline.
pub(crate) fn level_search(f: &PolyF2, exact_degree: bool) -> Result<OracleResult> {
    let n = f
        .deg()
        .ok_or_else(|| Error::OutOfRange("oracle input must be nonzero".into()))?;
    let positions = if exact_degree { n } else { n + 1 };
    let mut enumerated = 0u64;
    for level in 0..=positions {
        enumerated = enumerated.saturating_add(binomial(positions as u64, level as u64));
        if enumerated > CANDIDATE_BUDGET {
            return Err(Error::GuardExceeded(format!(
                "no squarefree polynomial within distance {} of {} inside the {CANDIDATE_BUDGET}-candidate budget",
                level - 1,
                f.to_hex()
            )));
        }
        let hit = match f.as_u64() {
            Some(bits) => scan_level_u64(bits, positions, level),
            None => scan_level_words(f, positions, level),
        };
        if let Some((witness, ties)) = hit {
            return Ok(OracleResult {
                input: f.clone(),
                distance: level as u32,
                witness,
                ties,
            });
        }
    }
    unreachable!("a squarefree candidate always exists once every mask is allowed")
}

/// Masks of popcount `level` below `1 << positions`, increasing.
pub(crate) fn gosper_masks(positions: usize, level: usize) -> impl Iterator<Item = u64> {
    let limit = 1u128 << positions;
    let start: u128 = if level == 0 { 0 } else { (1u128 << level) - 1 };
    let mut next = Some(start);
    std::iter::from_fn(move || {
        let v = next?;
        if v >= limit {
            return None;
        }
        next = if v == 0 {
            None
        } else {
            let c = v & v.wrapping_neg();
            let r = v + c;
            Some((((r ^ v) >> 2) / c) | r)
        };
        Some(v as u64)
    })
}

fn scan_level_u64(bits: u64, positions: usize, level: usize) -> Option<(PolyF2, u64)> {
    let mut first = None;
    let mut ties = 0u64;
    for mask in gosper_masks(positions, level) {
        let g = bits ^ mask;
        if is_squarefree_u64(g) {
            ties += 1;
            first.get_or_insert(g);
        }
    }
    first.map(|g| (PolyF2::from_u64(g), ties))
}

/// Index sets of size `level` drawn from `0..positions`, in colex order
/// (which is increasing order of the corresponding bitmask).
fn colex_combinations(positions: usize, level: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current = if level <= positions {
        Some((0..level).collect::<Vec<_>>())
    } else {
        None
    };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let idx = current.as_mut().unwrap();
        let mut i = 0;
        loop {
            if i == idx.len() {
                current = None;
                break;
            }
            let cap = if i + 1 < idx.len() {
                idx[i + 1]
            } else {
                positions
            };
            if idx[i] + 1 < cap {
                idx[i] += 1;
                for (j, slot) in idx.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                break;
            }
            i += 1;
        }
        Some(out)
    })
}

fn scan_level_words(f: &PolyF2, positions: usize, level: usize) -> Option<(PolyF2, u64)> {
    let mut first = None;
    let mut ties = 0u64;
    for flips in colex_combinations(positions, level) {
        let g = f.with_flipped(&flips);
        if g.is_squarefree() {
            ties += 1;
            first.get_or_insert(g);
        }
    }
    first.map(|g| (g, ties))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub degree: u32,
    pub mode: &'static str,
    pub sample_count: u64,
    pub histogram: BTreeMap<u32, u64>,
    pub max_distance: u32,
    pub max_witnesses: Vec<PolyF2>,
}

#[derive(Default)]
struct Partial {
    histogram: BTreeMap<u32, u64>,
    max_distance: u32,
    extremal: Vec<u64>,
}

impl Partial {
    fn record(&mut self, input: u64, distance: u32) {
        *self.histogram.entry(distance).or_default() += 1;
        if distance > self.max_distance || self.extremal.is_empty() {
            self.max_distance = distance;
            self.extremal.clear();
        }
        if distance == self.max_distance && self.extremal.len() < MAX_REPORTED_WITNESSES {
            self.extremal.push(input);
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        for (d, c) in other.histogram {
            *self.histogram.entry(d).or_default() += c;
        }
        match other.max_distance.cmp(&self.max_distance) {
            std::cmp::Ordering::Greater => {
                self.max_distance = other.max_distance;
                self.extremal = other.extremal;
            }
            std::cmp::Ordering::Equal => self.extremal.extend(other.extremal),
            std::cmp::Ordering::Less => {}
        }
        self.extremal.sort_unstable();
        self.extremal.dedup();
        self.extremal.truncate(MAX_REPORTED_WITNESSES);
        self
    }
}

/// SplitMix64 output for counter `i` of the stream seeded with `seed`.
pub fn splitmix64(seed: u64, i: u64) -> u64 {
    let mut z = seed.wrapping_add((i + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The `i`-th sampled input of degree `n`: the SplitMix64 word truncated to
/// `n + 1` bits with bit `n` forced on.
pub fn sample_input(n: u32, seed: u64, i: u64) -> u64 {
    let low = if n >= 63 {
        u64::MAX
    } else {
        (1u64 << (n + 1)) - 1
    };
    (splitmix64(seed, i) & low) | (1u64 << n)
}

fn distance_of(bits: u64) -> Result<u32> {
    level_search(&PolyF2::from_u64(bits), false).map(|r| r.distance)
}

/// Oracle distances over every input of degree exactly `n`, or over a
/// seeded sample of them. Work is split into independent blocks by the
/// high-order coefficients and the partial histograms are added.
pub fn scan(n: u32, mode: ScanMode) -> Result<ScanReport> {
    let (partial, mode_name, sample_count) = match mode {
        ScanMode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_SCAN_DEGREE {
                return Err(Error::OutOfRange(format!(
                    "exhaustive scan supports degree <= {MAX_EXHAUSTIVE_SCAN_DEGREE}, got {n}"
                )));
            }
            let low_bits = n.min(10);
            let high_bits = n - low_bits;
            let partial = (0u64..(1u64 << high_bits))
                .into_par_iter()
                .map(|hi| -> Result<Partial> {
                    let mut part = Partial::default();
                    for lo in 0u64..(1u64 << low_bits) {
                        let f = (1u64 << n) | (hi << low_bits) | lo;
                        part.record(f, distance_of(f)?);
                    }
                    Ok(part)
                })
                .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))?;
            (partial, "exhaustive", 1u64 << n)
        }
        ScanMode::Sampled { count, seed } => {
            if n as usize > MAX_ORACLE_DEGREE {
                return Err(Error::OutOfRange(format!(
                    "sampled scan supports degree <= {MAX_ORACLE_DEGREE}, got {n}"
                )));
            }
            let partial = (0..count)
                .into_par_iter()
                .map(|i| -> Result<Partial> {
                    let f = sample_input(n, seed, i);
                    let mut part = Partial::default();
                    part.record(f, distance_of(f)?);
                    Ok(part)
                })
                .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))?;
            (partial, "sampled", count)
        }
    };
    Ok(ScanReport {
        degree: n,
        mode: mode_name,
        sample_count,
        histogram: partial.histogram,
        max_distance: partial.max_distance,
        max_witnesses: partial.extremal.into_iter().map(PolyF2::from_u64).collect(),
    })
}

/// Writes `degree,distance,count` rows.
pub fn write_csv<W: Write>(report: &ScanReport, out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["degree", "distance", "count"])?;
    for (distance, count) in &report.histogram {
        w.write_record([
            report.degree.to_string(),
            distance.to_string(),
            count.to_string(),
        ])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyF2 {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let r = nearest_squarefree(&p("x^2+1")).unwrap();
        assert_eq!(r.distance, 1);
        assert_eq!(r.witness, p("x^2+x+1"));
        // x^2+x+1 and the constant 1 are the squarefree distance-1 neighbours
        assert_eq!(r.ties, 2);

        let f = p("x^5+x^2+1");
        let r = nearest_squarefree(&f).unwrap();
        assert_eq!((r.distance, r.witness.clone()), (0, f));

        let r = nearest_squarefree(&p("x^4")).unwrap();
        assert_eq!(r.distance, 1);
        assert_eq!(r.witness, p("x^4+x"));
    }

    #[test]
    fn exact_degree_flag_keeps_degree() {
        for bits in 4u64..512 {
            let f = PolyF2::from_u64(bits);
            let r = nearest_squarefree_with(&f, true).unwrap();
            assert_eq!(r.witness.deg(), f.deg());
            let free = nearest_squarefree(&f).unwrap();
            assert!(free.distance <= r.distance);
        }
    }

    #[test]
    fn guard_rejects_large_degree() {
        assert!(matches!(
            nearest_squarefree(&PolyF2::monomial(41)),
            Err(Error::GuardExceeded(_))
        ));
        assert!(nearest_squarefree(&PolyF2::zero()).is_err());
    }

    #[test]
    fn gosper_and_colex_agree() {
        for positions in 0..9 {
            for level in 0..=positions {
                let a: Vec<u64> = gosper_masks(positions, level).collect();
                let b: Vec<u64> = colex_combinations(positions, level)
                    .map(|idx| idx.iter().map(|&i| 1u64 << i).sum())
                    .collect();
                assert_eq!(a, b);
                assert_eq!(a.len() as u64, binomial(positions as u64, level as u64));
                assert!(a.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn multiword_path_matches_single_word_path() {
        let f = PolyF2::monomial(70);
        let r = level_search(&f, true).unwrap();
        assert_eq!(r.distance, 1);
        assert_eq!(r.witness, PolyF2::monomial(70) + PolyF2::x());
    }

    #[test]
    fn scan_small_degrees() {
        let r2 = scan(2, ScanMode::Exhaustive).unwrap();
        assert_eq!(r2.histogram.values().sum::<u64>(), 4);
        let mut expected = BTreeMap::new();
        for lo in 0u64..4 {
            let d = nearest_squarefree(&PolyF2::from_u64(4 | lo))
                .unwrap()
                .distance;
            *expected.entry(d).or_insert(0u64) += 1;
        }
        assert_eq!(r2.histogram, expected);

        let r3 = scan(3, ScanMode::Exhaustive).unwrap();
        assert_eq!(r3.histogram.values().sum::<u64>(), 8);
    }

    #[test]
    fn sampled_scan_is_deterministic() {
        let mode = ScanMode::Sampled {
            count: 200,
            seed: 7,
        };
        let a = scan(30, mode).unwrap();
        let b = scan(30, mode).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.histogram.values().sum::<u64>(), 200);
        for i in 0..50 {
            assert_eq!(sample_input(30, 7, i) >> 30, 1);
        }
    }

    #[test]
    fn scan_rejects_infeasible_degree() {
        assert!(scan(23, ScanMode::Exhaustive).is_err());
    }

    #[test]
    fn csv_layout() {
        let r = scan(4, ScanMode::Exhaustive).unwrap();
        let mut buf = Vec::new();
        write_csv(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("degree,distance,count\n4,0,"));
    }
}
