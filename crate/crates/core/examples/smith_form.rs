//! Smith normal form with unimodular transforms, and abelian invariants of
//! ⟨a, b | aᵈ bᵈ⟩.

use rimcert::fpgroups::{abelianization, Presentation};
use rimcert::intmat::{smith_normal_form, IntMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = IntMatrix::from_rows(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])?;
    let s = smith_normal_form(&m);
    let diag: Vec<String> = s.diagonal.iter().map(ToString::to_string).collect();
    println!("diagonal [{}]", diag.join(", "));
    println!("U·M·V == D: {}", &(&s.u * &m) * &s.v == s.diagonal_matrix(3, 3));

    for d in 2..=12 {
        let p = Presentation::parse(2, &format!("a^{d} b^{d}"))?;
        let inv: Vec<String> = abelianization(&p).iter().map(ToString::to_string).collect();
        println!("<a,b | a^{d} b^{d}>: [{}]", inv.join(", "));
    }
    Ok(())
}
