//! Builds a polynomial in Z[x] all of whose length-one neighbours are
//! divisible by a k-th power, and checks every neighbour.
//!
//! cargo run --release --example kfree_witness -- 2

use num_bigint::BigInt;
use sqfree::zarith::{kfree_construct, kfree_n0, kfree_verify};

fn main() -> sqfree::Result<()> {
    let k: u32 = std::env::args().nth(1).map_or(2, |s| s.parse().expect("k"));
    let n0 = kfree_n0(k);
    let w = kfree_construct(k, n0, &BigInt::from(1), &BigInt::from(0))?;
    println!("k = {k}, primes {:?}, N = {}, N0 = {n0}", w.primes, w.big_n);
    println!("F = {}", w.f);

    let report = kfree_verify(&w)?;
    let mut hits = vec![0usize; w.moduli.len()];
    for e in &report.entries {
        hits[e.modulus_index] += 1;
    }
    println!("{} neighbours checked", report.checked);
    for (j, count) in hits.iter().enumerate() {
        println!("  divisible by f_{j}: {count}");
    }
    Ok(())
}
