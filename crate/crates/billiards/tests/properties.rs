//! Property suites: randomized invariants beyond the acceptance gate.

use proptest::prelude::*;

use billiards::catalog::{degree_basis, pieri_multiply, TorusCell};
use billiards::homology::{
    cubic_bound, diagonal_pair_profile, kunneth_dims, smith_bound, BettiProfile, FFMatrix,
};
use billiards::manifold::{Ellipse, PerturbedCircle};
use billiards::search::{find_trajectories, orbit_distance, SearchConfig};
use billiards::{canonical_orbit_representative, morse_index, Configuration, DihedralAction};

fn small_matrix(q: u32) -> impl Strategy<Value = FFMatrix> {
    (1..6usize, 1..6usize).prop_flat_map(move |(rows, cols)| {
        proptest::collection::vec(0..q as i64, rows * cols)
            .prop_map(move |data| FFMatrix::from_entries(q, rows, cols, &data).unwrap())
    })
}

fn profile(q: u32) -> impl Strategy<Value = BettiProfile> {
    proptest::collection::vec(0..5usize, 1..5).prop_map(move |dims| BettiProfile::new(q, dims))
}

proptest! {
    #[test]
    fn rank_is_transpose_invariant_z2(m in small_matrix(2)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_is_transpose_invariant_z3(m in small_matrix(3)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kunneth_is_commutative_and_associative(
        a in profile(2),
        b in profile(2),
        c in profile(2),
    ) {
        let ab = kunneth_dims(&[a.clone(), b.clone()]).unwrap();
        let ba = kunneth_dims(&[b.clone(), a.clone()]).unwrap();
        prop_assert_eq!(&ab, &ba);
        let ab_c = kunneth_dims(&[ab, c.clone()]).unwrap();
        let bc = kunneth_dims(&[b, c]).unwrap();
        let a_bc = kunneth_dims(&[a, bc]).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn cubic_bound_counts_triples(b in 0i64..50) {
        prop_assert_eq!(cubic_bound(b), b * (b - 1) * (b - 2) / 6);
    }

    #[test]
    fn smith_bound_dominates_exact_third(
        dims_total in proptest::collection::vec(0..30usize, 1..6),
        dims_fixed in proptest::collection::vec(0..5usize, 1..6),
    ) {
        let total = BettiProfile::new(3, dims_total);
        let fixed = BettiProfile::new(3, dims_fixed);
        let s = smith_bound(&total, &fixed).unwrap();
        let exact = (total.total() as i64 - fixed.total() as i64).max(0);
        prop_assert!(3 * s.total() as i64 >= exact);
    }

    #[test]
    fn diagonal_pair_total_is_b_squared_minus_b(p in profile(3)) {
        // needs a connected manifold profile: force dim H_0 >= 1
        let mut dims = p.dims.clone();
        dims[0] = dims[0].max(1);
        let p = BettiProfile::new(3, dims);
        let b = p.total();
        let pair = diagonal_pair_profile(&p).unwrap();
        prop_assert_eq!(pair.total(), b * b - b);
    }

    #[test]
    fn pieri_products_are_valid_classes(
        n in 2..7usize,
        q in 0..10usize,
        a in 1..3u8,
        pick in 0..4usize,
    ) {
        let basis = degree_basis(q.min(2 * (n - 1)), n);
        prop_assume!(!basis.is_empty());
        let b = &basis[pick % basis.len()];
        let product = pieri_multiply(a, b, n).unwrap();
        for term in product.terms() {
            prop_assert!(term.fits(n));
            prop_assert_eq!(term.degree(), b.degree() + a as usize);
            prop_assert!(term.parts().iter().all(|&part| (1..=2).contains(&part)));
        }
    }

    #[test]
    fn torus_moves_preserve_invariant(perm in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle()) {
        let cell = TorusCell::new(perm).unwrap();
        for neighbor in cell.moves() {
            prop_assert_eq!(neighbor.invariant(), cell.invariant());
        }
    }

    #[test]
    fn morse_index_partitions_dimension(diag in proptest::collection::vec(-2.0..2.0f64, 1..6)) {
        let n = diag.len();
        let h = nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag.clone()));
        let tol = 1e-9;
        let (index, null) = morse_index(&h, tol);
        let positive = diag.iter().filter(|&&l| l > tol).count();
        prop_assert_eq!(index + null + positive, n);
    }

    #[test]
    fn canonical_representative_is_orbit_constant(
        seed_angles in proptest::collection::vec(0.0..std::f64::consts::TAU, 5),
    ) {
        let curve = Ellipse::new(1.2, 0.9).unwrap();
        let config = Configuration::from_angles(&curve, &seed_angles).unwrap();
        let action = DihedralAction::new(5);
        let canonical = canonical_orbit_representative(&config, &action);
        for element in action.elements() {
            let moved = action.apply(element, &config);
            prop_assert_eq!(
                canonical_orbit_representative(&moved, &action),
                canonical.clone()
            );
        }
    }
}

#[test]
fn every_orbit_of_an_asymmetric_config_maps_to_one_representative() {
    let curve = Ellipse::new(1.3, 0.7).unwrap();
    let config = Configuration::from_angles(&curve, &[0.31, 1.27, 2.9, 4.2, 5.7]).unwrap();
    let action = DihedralAction::new(5);
    // the 2p orbit elements are pairwise distinct for this configuration
    let orbit: Vec<Configuration> = action.elements().map(|el| action.apply(el, &config)).collect();
    for i in 0..orbit.len() {
        for j in i + 1..orbit.len() {
            assert_ne!(orbit[i].points(), orbit[j].points());
        }
    }
    let reps: Vec<Configuration> =
        orbit.iter().map(|c| canonical_orbit_representative(c, &action)).collect();
    for rep in &reps {
        assert_eq!(rep, &reps[0]);
    }
}

/// Doubling the multistart budget must not change the orbit census on
/// the catalog search cases, and the count must clear the curve bound.
#[test]
fn search_is_stable_under_doubling_and_beats_the_bound() {
    let curve = PerturbedCircle::new(0.02, 3).unwrap();
    let base =
        find_trajectories(&curve, &SearchConfig::new(3).with_starts(250).with_seed(4)).unwrap();
    let doubled =
        find_trajectories(&curve, &SearchConfig::new(3).with_starts(500).with_seed(4)).unwrap();
    assert_eq!(base.isolated_count(), doubled.isolated_count());
    assert_eq!(base.isolated_count(), 2);
    // torus bound for p = 3 is p - 1 = 2
    assert!(base.isolated_count() >= 2);

    let action = DihedralAction::new(3);
    for (a, b) in base.trajectories.iter().zip(&doubled.trajectories) {
        assert!(orbit_distance(&action, &a.config, &b.config) < 1e-7);
    }
}

/// Analytic tangent frames against the central-difference oracle: 1000
/// random chart points per catalog manifold.
#[test]
fn tangent_frames_match_finite_differences_everywhere() {
    use billiards::manifold::{ChartPoint, Ellipsoid, Manifold, PerturbedSphere};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    let catalog: Vec<Box<dyn Manifold>> = vec![
        Box::new(PerturbedCircle::circle()),
        Box::new(PerturbedCircle::new(0.02, 3).unwrap()),
        Box::new(Ellipse::new(1.3, 0.8).unwrap()),
        Box::new(Ellipsoid::sphere(2).unwrap()),
        Box::new(Ellipsoid::new(vec![1.0, 1.1, 1.2]).unwrap()),
        Box::new(PerturbedSphere::new(2, 0.05).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let h = 1e-5;
    for manifold in &catalog {
        let domain = manifold.chart_domain();
        for _ in 0..1000 {
            let coords: Vec<f64> = (0..manifold.intrinsic_dim())
                .map(|axis| {
                    let (lo, hi) = if domain.periodic[axis] {
                        (domain.lo[axis], domain.hi[axis])
                    } else {
                        // keep clear of the chart poles
                        (domain.lo[axis] + 0.3, domain.hi[axis] - 0.3)
                    };
                    lo + rng.random::<f64>() * (hi - lo)
                })
                .collect();
            let point = ChartPoint::at(coords);
            let frame = manifold.tangent_frame(&point).unwrap();
            for (axis, analytic) in frame.iter().enumerate() {
                let mut plus = point.clone();
                plus.coords[axis] += h;
                let mut minus = point.clone();
                minus.coords[axis] -= h;
                let xp = manifold.embed(&plus).unwrap();
                let xm = manifold.embed(&minus).unwrap();
                let scale = analytic.iter().map(|v| v * v).sum::<f64>().sqrt().max(1.0);
                for (a, (p, m)) in analytic.iter().zip(xp.iter().zip(&xm)) {
                    let numeric = (p - m) / (2.0 * h);
                    assert!(
                        (a - numeric).abs() / scale < 1e-6,
                        "frame mismatch at {point:?}: {a} vs {numeric}"
                    );
                }
            }
        }
    }
}

/// Re-verification from stored points: every reported orbit must satisfy
/// the billiard condition independently of the search that produced it.
#[test]
fn reported_orbits_reverify() {
    let curve = PerturbedCircle::new(0.02, 3).unwrap();
    let cfg = SearchConfig::new(3).with_starts(80).with_seed(12);
    let report = find_trajectories(&curve, &cfg).unwrap();
    for orbit in &report.trajectories {
        let fresh = Configuration::new(&curve, orbit.config.points().to_vec()).unwrap();
        assert!(fresh.billiard_residual(&curve).unwrap() < cfg.newton_tol);
    }
}
