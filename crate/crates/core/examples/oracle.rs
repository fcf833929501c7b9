//! The brute-force route: resolve k over A itself and read the LCS ranks
//! off the diagonal of the Betti table.

use hyperplane_lcs::fixtures::fixture;
use hyperplane_lcs::lcs::lcs_from_diagonal;
use hyperplane_lcs::os_ideal::os_ideal;
use hyperplane_lcs::report::lattice_of;
use hyperplane_lcs::resolution::resolve_k_over_a;
use hyperplane_lcs::series::IntegerSeries;

fn main() -> hyperplane_lcs::Result<()> {
    let lattice = lattice_of(&fixture("x3")?.input)?;
    let ideal = os_ideal(&lattice, 4)?;
    let table = resolve_k_over_a(&ideal, 4, 4)?;

    let diagonal = IntegerSeries::new((0..=4).map(|i| table.at(i, i) as i128).collect(), 4);
    println!("Σ b_ii t^i = {diagonal}");
    println!("b_34 = {}, b_44 = {}", table.at(3, 4), table.at(4, 4));
    println!("φ = {:?}", lcs_from_diagonal(&diagonal)?);
    Ok(())
}
