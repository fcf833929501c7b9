use hyperplane_lcs::fixtures::fixture;
use hyperplane_lcs::os_ideal::{os_ideal, quadratic_closure};
use hyperplane_lcs::report::lattice_of;

fn main() -> hyperplane_lcs::Result<()> {
    let x3 = fixture("x3")?;
    let lattice = lattice_of(&x3.input)?;
    let ideal = os_ideal(&lattice, 3)?;

    println!("minimal generators of the Orlik-Solomon ideal of X_3");
    for g in ideal.all_generators() {
        println!("  degree {}: {}", g.degree(), g.element);
    }
    println!("a = {:?}", ideal.a_vector());

    // dropping the cubic generator enlarges the degree-3 quotient
    let closure = quadratic_closure(&ideal);
    println!("dim A_3 = {:?}, dim Ā_3 = {:?}", ideal.graded_dim(3), closure.graded_dim(3));
    Ok(())
}
