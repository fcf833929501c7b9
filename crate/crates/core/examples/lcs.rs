use hyperplane_lcs::fixtures::fixture;
use hyperplane_lcs::lcs::{local_sum, mls_lcs_prediction, mls_test, phi4, phi_123};
use hyperplane_lcs::os_ideal::os_ideal;
use hyperplane_lcs::report::lattice_of;
use hyperplane_lcs::resolution::{delta4, resolve_over_e};

fn main() -> hyperplane_lcs::Result<()> {
    for name in ["x3", "x2", "fan-a", "pappus-93-1", "pappus-93-2"] {
        let lattice = lattice_of(&fixture(name)?.input)?;
        let ideal = os_ideal(&lattice, 4)?;
        let table = resolve_over_e(&ideal, 3, 4)?.table;
        let (p1, p2, p3) = phi_123(&lattice, &ideal);
        let p4 = phi4(ideal.a(2), table.at(3, 4), delta4(&ideal));
        let mls = mls_test(&lattice, table.at(2, 3));
        print!("{name:<12} φ = ({p1}, {p2}, {p3}, {p4})  local sums ({}, {})", local_sum(&lattice, 3), local_sum(&lattice, 4));
        if mls {
            let prediction = mls_lcs_prediction(&lattice, 6)?;
            println!("  MLS, predicted {:?} from {}", prediction.phi, prediction.product);
        } else {
            println!("  not MLS");
        }
    }
    Ok(())
}
