use proptest::prelude::*;

use hyperplane_lcs::arrangement::{binomial, lattice_from_normals, Arrangement, IntersectionLattice};
use hyperplane_lcs::graphic::{
    chromatic_polynomial, graphic_lcs_expansion, graphic_phi123, kappa, lattice_from_graph, whitney_from_chromatic,
    Graph,
};
use hyperplane_lcs::harness::canonical_form;
use hyperplane_lcs::lcs::{diagonal_from_phi, lcs_from_diagonal, local_sum, phi4, phi_123};
use hyperplane_lcs::os_ideal::os_ideal;
use hyperplane_lcs::resolution::{
    compose_is_zero, delta4, delta4_upper_bound, hilbert_identity_check, linear_strand_lower_bound,
    resolve_k_over_e, resolve_over_e_with, ExteriorAlgebra, ResolutionOptions,
};
use hyperplane_lcs::Rational;

fn arrangement() -> impl Strategy<Value = Arrangement> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3..=7).prop_filter_map("not simple", |rows| {
        let normals = rows.into_iter().map(|r| r.into_iter().map(Rational::from).collect()).collect();
        Arrangement::new(normals).ok()
    })
}

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=6).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        prop::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| *e).collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

fn resolution_laws(lattice: &IntersectionLattice) -> Result<(), TestCaseError> {
    let ideal = os_ideal(lattice, 4).unwrap();
    let opts = ResolutionOptions { last_map: true, ..ResolutionOptions::default() };
    let res = resolve_over_e_with(&ideal, 3, 4, opts).unwrap();
    let ring = ExteriorAlgebra::new(lattice.n());
    for w in res.maps.windows(2) {
        prop_assert!(compose_is_zero(&ring, &w[1], &w[0], 4));
    }
    prop_assert!(res.maps.iter().all(|m| m.is_minimal()));
    prop_assert!(hilbert_identity_check(&res.table, lattice).holds());
    let rank = lattice.rank().max(1);
    for i in 1..=3 {
        for j in i + rank..=4 {
            prop_assert_eq!(res.table.at(i, j), 0);
        }
        prop_assert!(res.table.at(i, i + 1) >= linear_strand_lower_bound(lattice, i));
    }
    if res.table.at(2, 3) == linear_strand_lower_bound(lattice, 2) {
        prop_assert_eq!(res.table.at(3, 4), linear_strand_lower_bound(lattice, 3));
    }
    let d4 = delta4(&ideal);
    prop_assert!(d4 <= delta4_upper_bound(lattice));
    let (_, _, p3) = phi_123(lattice, &ideal);
    let p4 = phi4(ideal.a(2), res.table.at(3, 4), d4);
    prop_assert!(p3 >= local_sum(lattice, 3));
    prop_assert!(p4 >= local_sum(lattice, 4));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resolutions_of_random_arrangements(arr in arrangement()) {
        resolution_laws(&lattice_from_normals(&arr).unwrap())?;
    }

    #[test]
    fn resolutions_of_random_graphs(g in graph()) {
        resolution_laws(&lattice_from_graph(&g).unwrap())?;
    }

    #[test]
    fn graphic_closed_forms(g in graph()) {
        let lattice = lattice_from_graph(&g).unwrap();
        let kv = kappa(&g).unwrap();
        let ideal = os_ideal(&lattice, 3).unwrap();
        let (p1, p2, p3) = phi_123(&lattice, &ideal);
        prop_assert_eq!((p1, p2, p3), graphic_phi123(&kv));
        prop_assert_eq!(&graphic_lcs_expansion(&kv, 3), &vec![p1, p2, p3]);
        let chi = chromatic_polynomial(&g).unwrap();
        let whitney: Vec<i128> = lattice.whitney().iter().map(|&b| b as i128).collect();
        prop_assert_eq!(whitney_from_chromatic(&chi, g.vertices()), whitney);
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph(), seed in any::<u64>()) {
        let n = g.vertices();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed | 1;
        for i in (1..n).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let blocks: Vec<u32> = g.edges().iter().map(|&(u, v)| 1 << u | 1 << v).collect();
        let moved: Vec<u32> = g.edges().iter().map(|&(u, v)| 1 << perm[u] | 1 << perm[v]).collect();
        prop_assert_eq!(canonical_form(n, &blocks), canonical_form(n, &moved));
    }

    #[test]
    fn series_inversion_round_trip(phi in prop::collection::vec(0i64..40, 1..=6)) {
        let back = lcs_from_diagonal(&diagonal_from_phi(&phi, phi.len())).unwrap();
        prop_assert_eq!(back, phi);
    }

    #[test]
    fn exterior_residue_field(n in 1usize..=5) {
        let t = resolve_k_over_e(n, 4, 4).unwrap().table;
        for j in 0..=4 {
            prop_assert_eq!(t.at(j, j) as i64, binomial((n + j - 1) as i64, j as i64));
            for i in 0..=4 {
                if i != j {
                    prop_assert_eq!(t.at(i, j), 0);
                }
            }
        }
    }
}
