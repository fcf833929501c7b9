//! Clique counts, chromatic polynomials and the graphic LCS expansion.

use hyperplane_lcs::graphic::{
    chordless_cycles, chromatic_polynomial, graphic_lcs_expansion, graphic_phi4, is_chordal, kappa, Graph,
};

fn main() -> hyperplane_lcs::Result<()> {
    let wheel = Graph::new(5, vec![(0, 1), (0, 2), (2, 3), (1, 2), (0, 3), (3, 4), (1, 4), (2, 4)])?;
    for (name, g) in [("K4", Graph::complete(4)), ("C5", Graph::cycle(5)), ("W4", wheel)] {
        let kv = kappa(&g)?;
        println!("{name}: κ = {kv}, chordal {}", is_chordal(&g));
        println!("  χ(t) = {}", chromatic_polynomial(&g)?);
        println!("  induced 4-cycles: {}", chordless_cycles(&g, 4)?);
        println!("  φ_4 ≥ {}", graphic_phi4(&kv, None)?.lower_bound);
        println!("  expansion φ_1..6 = {:?}", graphic_lcs_expansion(&kv, 6));
    }
    Ok(())
}
