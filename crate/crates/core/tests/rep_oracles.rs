//! Numerical oracles for the exact rotation arithmetic: floating 6x6 matrix
//! algebra and the Jacobi eigenvalue solver, kept independent of the
//! rational-angle rules they check.

use rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sform_core::rep::{
    displacement, injrad_at, oracle, BlockRotationElement, LinearSpaceForm, SamplerParams,
    SpherePoint, PI,
};
use sform_core::RationalAngle;

fn mat_mul(a: &[[f64; 6]; 6], b: &[[f64; 6]; 6]) -> [[f64; 6]; 6] {
    let mut out = [[0.0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            for k in 0..6 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn random_element(rng: &mut ChaCha8Rng) -> BlockRotationElement {
    let shift = (rng.next_u32() % 3) as u8;
    let mut angles = [RationalAngle::ZERO; 3];
    for a in &mut angles {
        let den = 1 + (rng.next_u64() % 60) as i64;
        let num = (rng.next_u64() % (2 * den as u64)) as i64 - den;
        *a = RationalAngle::new(num, den);
    }
    BlockRotationElement::new(shift, angles)
}

fn random_point(rng: &mut ChaCha8Rng) -> SpherePoint {
    loop {
        let mut v = [0.0; 6];
        for c in &mut v {
            *c = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
        }
        if v.iter().map(|c| c * c).sum::<f64>() > 1e-4 {
            return SpherePoint::normalized(v);
        }
    }
}

/// Representations used across the oracle suites: the two noncyclic
/// order-63 space-form groups, a larger noncyclic one, and lens spaces.
fn catalog() -> Vec<LinearSpaceForm> {
    vec![
        LinearSpaceForm::build_standard(7, 9, 2, 3).unwrap(),
        LinearSpaceForm::build_standard(7, 9, 4, 6).unwrap(),
        LinearSpaceForm::build_standard(13, 9, 3, 3).unwrap(),
        LinearSpaceForm::build_standard(2, 1, 1, 0).unwrap(),
        LinearSpaceForm::build_standard(5, 1, 1, 0).unwrap(),
        LinearSpaceForm::build_standard(50, 1, 1, 0).unwrap(),
    ]
}

#[test]
fn exact_composition_matches_floating_matrix_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let (g, h) = (random_element(&mut rng), random_element(&mut rng));
        let exact = g.compose(&h).to_matrix();
        let float = mat_mul(&g.to_matrix(), &h.to_matrix());
        for i in 0..6 {
            for j in 0..6 {
                assert!(
                    (exact[i][j] - float[i][j]).abs() < 1e-12,
                    "entry ({i}, {j}) of {g} * {h}"
                );
            }
        }
        // inverse composes to the identity matrix
        let inv = mat_mul(&g.to_matrix(), &g.inverse().to_matrix());
        for i in 0..6 {
            for j in 0..6 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((inv[i][j] - want).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn power_map_matches_repeated_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let g = random_element(&mut rng);
        let mut acc = BlockRotationElement::IDENTITY;
        for e in 0..=12u64 {
            assert_eq!(g.pow(e), acc, "{g}^{e}");
            acc = acc.compose(&g);
        }
    }
}

#[test]
fn fixed_point_rule_matches_the_eigenvalue_oracle() {
    for form in catalog() {
        for (g, rot) in form.all_rotations() {
            if g.is_identity() {
                continue;
            }
            let numeric = oracle::has_unit_eigenvalue(&rot.to_matrix(), 1e-8);
            assert_eq!(
                rot.has_fixed_point(),
                numeric,
                "element {g} of ({}, {}, {})",
                form.presentation.m,
                form.presentation.n,
                form.presentation.r
            );
        }
    }
}

#[test]
fn minimal_displacement_is_a_true_pointwise_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for form in catalog() {
        for (g, rot) in form.all_rotations() {
            if g.is_identity() {
                continue;
            }
            let bound = rot.min_displacement();
            // never beaten by sampling...
            for _ in 0..50 {
                let x = random_point(&mut rng);
                assert!(displacement(&rot, &x) >= bound - 1e-6);
            }
            // ...and attained: for diagonal rotations at the minimizing block
            // axis, for shifted ones at a uniform three-block point.
            let attained = if rot.shift == 0 {
                (0..3)
                    .map(|b| {
                        let mut v = [0.0; 6];
                        v[2 * b] = 1.0;
                        displacement(&rot, &SpherePoint::new(v).unwrap())
                    })
                    .fold(f64::INFINITY, f64::min)
            } else {
                // the eigenvector for the cube root lambda of the angle sum:
                // (1, e^{2 pi i (lambda - a1)}, e^{2 pi i (2 lambda - a1 - a2)})
                let s = rot.angle_sum().numerator() as f64
                    / rot.angle_sum().denominator() as f64;
                let lambda = (0..3)
                    .map(|k| (s + k as f64) / 3.0)
                    .min_by(|a, b| {
                        let d = |t: f64| (t - t.round()).abs();
                        d(*a).partial_cmp(&d(*b)).unwrap()
                    })
                    .unwrap();
                let (a1, a2) = (
                    rot.angles[0].numerator() as f64 / rot.angles[0].denominator() as f64,
                    rot.angles[1].numerator() as f64 / rot.angles[1].denominator() as f64,
                );
                // shift 2 traverses the blocks in the opposite order
                let a3 = rot.angles[2].numerator() as f64
                    / rot.angles[2].denominator() as f64;
                let (mu, nu) = if rot.shift == 1 {
                    (lambda - a1, 2.0 * lambda - a1 - a2)
                } else {
                    (a2 - lambda, a2 + a3 - 2.0 * lambda)
                };
                let t = 1.0 / 3f64.sqrt();
                let v = [
                    t, 0.0,
                    t * (2.0 * PI * mu).cos(), t * (2.0 * PI * mu).sin(),
                    t * (2.0 * PI * nu).cos(), t * (2.0 * PI * nu).sin(),
                ];
                displacement(&rot, &SpherePoint::normalized(v))
            };
            assert!(
                attained <= bound + 1e-9,
                "claimed minimum {bound} not attained (got {attained}) for {rot}"
            );
        }
    }
}

#[test]
fn injrad_estimates_are_certified_lower_bounds_of_a_true_maximum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for form in catalog() {
        let geo = form
            .injectivity_geometry(SamplerParams { restarts: 6, iters: 1500, seed: 3 })
            .unwrap();
        let rotations: Vec<BlockRotationElement> = form
            .all_rotations()
            .into_iter()
            .filter(|(g, _)| !g.is_identity())
            .map(|(_, r)| r)
            .collect();
        // the reported maximum is the objective at its reported point
        let at_point = injrad_at(&rotations, &geo.max_injrad.point);
        assert!((at_point - geo.max_injrad.value).abs() < 1e-12);
        // no sampled point beats it by more than optimizer slack
        for _ in 0..300 {
            let x = random_point(&mut rng);
            let v = injrad_at(&rotations, &x);
            // arccos is ill-conditioned near the antipode, hence the loose slack
            assert!(v >= geo.min_injrad - 1e-6, "min is global");
            assert!(v <= geo.max_injrad.value + 0.2, "sampling blew past the ascent");
        }
        assert!(geo.min_injrad <= geo.max_injrad.value + 1e-12);
    }
}

#[test]
fn exact_minimum_injectivity_radius_matches_brute_numerics() {
    for form in catalog() {
        let geo = form
            .injectivity_geometry(SamplerParams { restarts: 2, iters: 200, seed: 1 })
            .unwrap();
        let brute = form
            .all_rotations()
            .into_iter()
            .filter(|(g, _)| !g.is_identity())
            .map(|(_, r)| r.min_displacement())
            .fold(f64::INFINITY, f64::min);
        assert!((geo.min_injrad - 0.5 * brute).abs() < 1e-15);
    }
}
