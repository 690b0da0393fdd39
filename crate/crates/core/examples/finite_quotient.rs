//! Coset enumeration and homomorphism search for a presentation given on
//! the command line.
//!
//!     cargo run --example finite_quotient -- 2 "a^4, a^2 b^-2, b^-1 a b a"

use rimcert::fpgroups::{abelianization, coset_enumeration, find_finite_quotient, FiniteGroup, Presentation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let rels = args.next().unwrap_or_else(|| "a^4 b^4, a^4, b^4, a^2 b^2, b^2 a^2".into());
    let p = Presentation::parse(n, &rels)?;
    println!("{p}");
    let ab: Vec<String> = abelianization(&p).iter().map(ToString::to_string).collect();
    println!("abelianization [{}]", ab.join(", "));
    match coset_enumeration(&p, 100_000).order() {
        Some(order) => println!("order {order}"),
        None => println!("enumeration inconclusive"),
    }
    for g in FiniteGroup::library() {
        match find_finite_quotient(&p, &g) {
            Some(h) => println!("onto {:<4} images ({})", g.name(), h.image_labels.join(", ")),
            None => println!("onto {:<4} none", g.name()),
        }
    }
    Ok(())
}
