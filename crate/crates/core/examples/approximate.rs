//! Approximates random polynomials of large degree and prints each
//! certificate next to its stage bounds.
//!
//! cargo run --release --example approximate -- [degree] [count]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sqfree::{Approximator, PolyF2};

fn main() -> sqfree::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(4096, |s| s.parse().expect("degree"));
    let count: usize = args.next().map_or(5, |s| s.parse().expect("count"));

    let approx = Approximator::new(n, 0.5)?;
    let p = approx.params();
    println!(
        "n = {n}, t = {}, window = {}, bounds = ({}, {}, {})",
        p.t,
        p.window,
        p.stage1_bound(),
        p.stage2_bound(),
        p.stage3_bound()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let start = std::time::Instant::now();
    for _ in 0..count {
        let mut words: Vec<u64> = (0..n / 64 + 1).map(|_| rng.gen()).collect();
        let top = n / 64;
        words[top] &= (1u64 << (n % 64)) - 1;
        words[top] |= 1u64 << (n % 64);
        let f = PolyF2::from_words(words);
        let (g, cert) = approx.approximate(&f)?;
        assert!(g.is_squarefree() && g.deg() == Some(n));
        println!(
            "distance {:>3}  stages {:?}/{:?}/{:?}  family index {:?}{}",
            cert.total_dist,
            cert.stage1_dist,
            cert.stage2_dist,
            cert.stage3_dist,
            cert.chosen_i,
            if cert.fallback_used {
                "  (fallback)"
            } else {
                ""
            }
        );
    }
    eprintln!("{:.2?} per input", start.elapsed() / count.max(1) as u32);
    Ok(())
}
