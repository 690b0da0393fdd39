//! Alexander polynomials from knot specs, computed two ways for T(2,q).
//!
//!     cargo run --example alexander -- "sum(torus:2,3,twist:-2)"

use rimcert::knots::{self, Knot, SeifertMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let specs: Vec<String> = std::env::args().skip(1).collect();
    let specs = if specs.is_empty() {
        vec![
            "unknot".into(),
            "torus:2,3".into(),
            "torus:3,4".into(),
            "twist:2".into(),
            "sum(torus:2,3,torus:2,3)".into(),
        ]
    } else {
        specs
    };
    for spec in &specs {
        let k: Knot = spec.parse()?;
        let delta = k.alexander()?;
        println!("{k:<28} {delta}   (span {})", delta.degree_span()?);
    }

    println!();
    for q in [3, 5, 7, 9] {
        let closed = knots::torus_alexander(2, q)?;
        let seifert = SeifertMatrix::torus_two(q)?.alexander_determinant().symmetric_normalize()?;
        println!("T(2,{q}): closed form {closed}, Seifert {}", if seifert == closed { "agrees" } else { "DIFFERS" });
    }
    Ok(())
}
