//! Intersection lattice of X_3 = xyz(x−z)(y+z)(y+2x).

use hyperplane_lcs::arrangement::{lattice_from_normals, Arrangement};

fn main() -> hyperplane_lcs::Result<()> {
    let x3 = Arrangement::from_integers(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, -1], &[0, 1, 1], &[2, 1, 0]])?;
    let lattice = lattice_from_normals(&x3)?;

    println!("rank {}, Whitney numbers {:?}", lattice.rank(), lattice.whitney());
    for r in 0..=lattice.rank() {
        let flats: Vec<String> = lattice
            .flats_of_rank(r)
            .iter()
            .map(|f| format!("{:?}:{}", f.indices(), lattice.mobius(f.members).unwrap_or(0)))
            .collect();
        println!("  rank {r}: {}", flats.join(" "));
    }
    println!("multiple points: {:?}", lattice.multiple_points().iter().map(|f| f.indices()).collect::<Vec<_>>());
    Ok(())
}
