//! Surgery on the d-fold cover lattice Z^d / (1, ..., 1): representatives
//! differing by the all-ones vector give the same class and the same result.

use rimcert::knots::{alexander, Knot};
use rimcert::swcalc::{basic_classes, multi_torus_surgery, HomologyLattice, SwPolynomial};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let delta = alexander(&Knot::torus(2, 3)?)?;
    for d in 3..=5 {
        let lattice = HomologyLattice::cover(d)?;
        let tori: Vec<_> = (0..d).map(|i| lattice.basis(i)).collect();
        let sw0 = SwPolynomial::k3_like(lattice.clone());
        let sw = multi_torus_surgery(&sw0, &tori, &delta)?;
        let ones = lattice.class_i64(&vec![1; d])?;
        println!("d = {d}: (1,..,1) is zero: {}; {} basic classes", ones.is_zero(), basic_classes(&sw).len());
        let shifted = SwPolynomial::from_terms(lattice.clone(), vec![(vec![1.into(); d], 1)])?;
        let again = multi_torus_surgery(&shifted, &tori, &delta)?;
        println!("  shifted base gives the same result: {}", again == sw);
    }
    Ok(())
}
