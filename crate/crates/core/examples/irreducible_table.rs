//! Enumerates irreducible polynomials over GF(2) and builds the products
//! and radicals used by the approximation.
//!
//! cargo run --release --example irreducible_table -- 12

use sqfree::irreducibles::{pi1, pi2, product_coprime_to, radical};
use sqfree::{IrreducibleTable, PolyF2};

fn main() -> sqfree::Result<()> {
    let t: u32 = std::env::args()
        .nth(1)
        .map_or(12, |s| s.parse().expect("degree"));
    let table = IrreducibleTable::enumerate(t)?;
    for c in table.counts() {
        println!("degree {:>2}: {:>6} irreducibles", c.degree, c.count);
    }
    println!("total degree of their product: {}", table.total_degree());

    let f: PolyF2 = "x^5+x^4+x^3+x".parse()?;
    let p = product_coprime_to(&f, &table);
    println!(
        "product of table entries not dividing {f}: degree {:?}",
        p.deg()
    );

    let t = t as usize;
    let r1 = radical(&pi1(t), &table)?;
    let r2 = radical(&pi2(t)?, &IrreducibleTable::enumerate(t as u32 + 1)?)?;
    println!("deg rad(Pi1({t})) = {:?}", r1.deg());
    println!("deg rad(Pi2({t})) = {:?}", r2.deg());
    Ok(())
}
