//! Squarefree approximation in Z[x] through the GF(2) approximation of the
//! reduction modulo 2.
//!
//! cargo run --release --example lift -- '["4","0","-6","2"]'

use sqfree::zarith::{lift_squarefree, PolyZ};

fn main() -> sqfree::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| r#"["1","2","1","0","2"]"#.into());
    let f = PolyZ::from_json(&text)?;
    let r = lift_squarefree(&f, 0.5)?;
    println!("f = {f}");
    println!("g = {}", r.g);
    println!("L(f - g) = {}", r.dist);
    println!("GF(2) stage distance = {}", r.certificate.total_dist);
    if r.leading_bumped {
        println!(
            "leading coefficient was even; x^{} was added first",
            f.deg().unwrap_or(0)
        );
    }
    Ok(())
}
