//! Exact nearest-squarefree distances by exhaustive search, and a histogram
//! over all inputs of one degree.
//!
//! cargo run --release --example oracle_scan -- 12

use sqfree::oracle::{scan, write_csv, ScanMode};
use sqfree::{nearest_squarefree, squarefree_approx, PolyF2};

fn main() -> sqfree::Result<()> {
    let n: u32 = std::env::args()
        .nth(1)
        .map_or(12, |s| s.parse().expect("degree"));

    let f = PolyF2::monomial(n as usize);
    let exact = nearest_squarefree(&f)?;
    let (_, cert) = squarefree_approx(&f, 0.5)?;
    println!(
        "x^{n}: oracle distance {} (witness {}, {} ties), pipeline distance {}",
        exact.distance, exact.witness, exact.ties, cert.total_dist
    );

    let report = scan(n, ScanMode::Exhaustive)?;
    println!("max distance over degree {n}: {}", report.max_distance);
    write_csv(&report, std::io::stdout()).expect("stdout");
    Ok(())
}
