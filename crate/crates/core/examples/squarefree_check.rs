//! GF(2)[x] arithmetic and the even/odd squarefree test.
//!
//! cargo run --example squarefree_check -- "x^6+x^2+1"

use sqfree::PolyF2;

fn main() -> sqfree::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "x^6+x^5+x^2+1".into());
    let f: PolyF2 = text.parse()?;
    println!("f      = {f}  (hex {})", f.to_hex());

    let pair = f.split();
    println!("f_e    = {}", pair.even);
    println!("f_o    = {}", pair.odd);
    assert_eq!(PolyF2::recompose(&pair), f);

    if f.deg().is_some_and(|d| d >= 2) {
        let d = f.repeated_factor_support()?;
        println!("gcd(f_e, f_o) = {d}");
    }
    println!("squarefree: {}", f.is_squarefree());

    let g = &f * &PolyF2::x();
    let (q, r) = g.divrem(&"x^2+x+1".parse()?)?;
    println!("x f = ({q}) (x^2+x+1) + {r}");
    Ok(())
}
