//! Graded Betti numbers of Orlik-Solomon algebras over the exterior algebra.

use hyperplane_lcs::fixtures::fixture;
use hyperplane_lcs::os_ideal::os_ideal;
use hyperplane_lcs::report::lattice_of;
use hyperplane_lcs::resolution::{linear_strand_lower_bound, resolve_over_e};

fn main() -> hyperplane_lcs::Result<()> {
    for name in ["pencil4", "x3", "k4-braid"] {
        let lattice = lattice_of(&fixture(name)?.input)?;
        let ideal = os_ideal(&lattice, 4)?;
        let res = resolve_over_e(&ideal, 4, 5)?;
        println!("{name}");
        for i in 1..=4 {
            let row: Vec<String> = (i..=5).map(|j| res.table.get(i, j).map_or("?".into(), |v| v.to_string())).collect();
            println!("  b'_{i},j for j = {i}..5: {}   (local bound {})", row.join(" "), linear_strand_lower_bound(&lattice, i));
        }
    }
    Ok(())
}
