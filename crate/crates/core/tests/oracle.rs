use sqfree::oracle::{scan, ScanMode};
use sqfree::{nearest_squarefree, PolyF2};

/// Distance histograms over all inputs of degree n, computed separately with
/// the `gcd(f, f') = 1` criterion: (n, [count at distance 0, 1, 2]).
const HISTOGRAMS: [(u32, [u64; 3]); 13] = [
    (2, [2, 2, 0]),
    (3, [4, 4, 0]),
    (4, [8, 8, 0]),
    (5, [16, 16, 0]),
    (6, [32, 31, 1]),
    (7, [64, 63, 1]),
    (8, [128, 124, 4]),
    (9, [256, 250, 6]),
    (10, [512, 495, 17]),
    (11, [1024, 995, 29]),
    (12, [2048, 1986, 62]),
    (13, [4096, 3976, 120]),
    (14, [8192, 7943, 249]),
];

#[test]
fn exhaustive_histograms_match_fixtures() {
    for (n, counts) in HISTOGRAMS {
        let report = scan(n, ScanMode::Exhaustive).unwrap();
        let got: Vec<u64> = (0..3)
            .map(|d| report.histogram.get(&d).copied().unwrap_or(0))
            .collect();
        assert_eq!(got, counts, "degree {n}");
        assert_eq!(report.histogram.len(), if counts[2] > 0 { 3 } else { 2 });
        let max = if counts[2] > 0 { 2 } else { 1 };
        assert_eq!(report.max_distance, max);
        for w in &report.max_witnesses {
            assert_eq!(nearest_squarefree(w).unwrap().distance, max);
        }
        println!("degree {n}: max distance {max}");
    }
}

fn rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= db {
        a ^= b << (63 - a.leading_zeros() - db);
    }
    a
}

fn square(w: u64) -> u64 {
    (0..32)
        .filter(|i| w >> i & 1 == 1)
        .fold(0, |acc, i| acc | 1 << (2 * i))
}

fn naive_squarefree(f: u64) -> bool {
    f != 0
        && (2u64..)
            .take_while(|&w| square(w) <= f)
            .all(|w| rem(f, square(w)) != 0)
}

#[test]
fn witnesses_pass_naive_square_test() {
    for bits in 4u64..(1 << 15) {
        let r = nearest_squarefree(&PolyF2::from_u64(bits)).unwrap();
        let w = r.witness.as_u64().unwrap();
        assert!(naive_squarefree(w), "{:x} -> {:x}", bits, w);
        assert_eq!((bits ^ w).count_ones(), r.distance);
        assert!(r.witness.degree() <= PolyF2::from_u64(bits).degree());
    }
}

/// All masks over the n + 1 positions: nothing closer than the reported
/// distance is squarefree, and the tie count is the number at that distance.
#[test]
fn level_search_matches_full_enumeration() {
    for n in 2..=10u32 {
        for bits in (1u64 << n)..(1u64 << (n + 1)) {
            let r = nearest_squarefree(&PolyF2::from_u64(bits)).unwrap();
            let hits: Vec<u32> = (0u64..(1 << (n + 1)))
                .filter(|&m| naive_squarefree(bits ^ m))
                .map(u64::count_ones)
                .collect();
            let best = *hits.iter().min().unwrap();
            assert_eq!(r.distance, best);
            assert_eq!(r.ties, hits.iter().filter(|&&d| d == best).count() as u64);
        }
    }
}

#[test]
fn exact_degree_witness_keeps_degree() {
    for bits in 4u64..(1 << 12) {
        let f = PolyF2::from_u64(bits);
        let r = sqfree::oracle::nearest_squarefree_with(&f, true).unwrap();
        assert_eq!(r.witness.deg(), f.deg());
        assert!(r.distance >= nearest_squarefree(&f).unwrap().distance);
    }
}

#[test]
fn sampled_scan_is_reproducible() {
    let a = scan(
        30,
        ScanMode::Sampled {
            count: 300,
            seed: 5,
        },
    )
    .unwrap();
    let b = scan(
        30,
        ScanMode::Sampled {
            count: 300,
            seed: 5,
        },
    )
    .unwrap();
    assert_eq!(a, b);
    assert_eq!(a.histogram.values().sum::<u64>(), 300);
}
