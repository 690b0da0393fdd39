//! Fundamental group of a rim-surgered maximal nest of degree d: cyclic of
//! order d for d >= 5, a Q8 quotient for d = 4.
//!
//!     cargo run --example nest_pi1 -- 7

use rimcert::fpgroups::{self, CyclicCheck, FiniteGroup, DEFAULT_MAX_COSETS};
use rimcert::lcurve::{nest_presentation, NestConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let degrees: Vec<usize> = match std::env::args().nth(1) {
        Some(d) => vec![d.parse()?],
        None => (4..=10).collect(),
    };
    for d in degrees {
        let config = NestConfig::all_but_membrane(d, 1)?;
        let p = nest_presentation(&config);
        println!("d = {d}: {p}");
        let ab: Vec<String> = fpgroups::abelianization(&p).iter().map(ToString::to_string).collect();
        println!("  abelianization [{}]", ab.join(", "));
        match fpgroups::is_cyclic_of_order(&p, d, DEFAULT_MAX_COSETS) {
            CyclicCheck::Pass { order, cosets_used } => println!("  cyclic of order {order} ({cosets_used} cosets)"),
            other => {
                println!("  not cyclic of order {d}: {other:?}");
                if let Some(h) = fpgroups::find_finite_quotient(&p, &FiniteGroup::quaternion()) {
                    println!("  surjects onto Q8: a -> {}, b -> {}", h.image_labels[0], h.image_labels[1]);
                }
            }
        }
    }
    Ok(())
}
