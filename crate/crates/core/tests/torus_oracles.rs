//! Oracles for the torus-action lattice analysis: brute-force counting of
//! torsion solutions on rational grids, invariance under torus
//! reparameterization, and the closed-form membership congruence for the
//! pseudo-free model.

use rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sform_core::torus::WeightMatrix;

fn model_weights() -> WeightMatrix {
    WeightMatrix::new(vec![[1, 1, -2], [1, -2, 1]]).unwrap()
}

fn random_full_rank(rng: &mut ChaCha8Rng, k: usize) -> WeightMatrix {
    loop {
        let rows: Vec<[i64; 3]> = (0..k)
            .map(|_| {
                let mut row = [0i64; 3];
                for v in &mut row {
                    *v = (rng.next_u64() % 7) as i64 - 3;
                }
                row
            })
            .collect();
        let w = WeightMatrix::new(rows).unwrap();
        if w.matrix_rank() == k {
            return w;
        }
    }
}

/// Count grid solutions of `<w_j, theta> = 0 mod 1` for `theta` in
/// `(1/d) Z^k / Z^k`, restricted to the support.
fn count_grid_solutions(w: &WeightMatrix, support: &[usize], d: u64) -> u64 {
    let k = w.rank();
    let mut count = 0;
    let total = d.pow(k as u32);
    for code in 0..total {
        let mut theta = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            theta.push(c % d);
            c /= d;
        }
        let ok = support.iter().all(|&j| {
            let dot: u64 = theta
                .iter()
                .zip(w.rows().iter())
                .map(|(&t, row)| (t as i64 * row[j - 1]).rem_euclid(d as i64) as u64)
                .sum();
            dot % d == 0
        });
        if ok {
            count += 1;
        }
    }
    count
}

#[test]
fn isotropy_structure_matches_grid_counting() {
    // On a grid of denominator d (a multiple of the largest invariant
    // factor), the solution set has d^torus_rank points per torsion
    // component.
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut cases: Vec<WeightMatrix> = vec![
        model_weights(),
        WeightMatrix::new(vec![[1, 1, 1]]).unwrap(),
        WeightMatrix::new(vec![[2, 0, 0], [0, 1, 1]]).unwrap(),
        WeightMatrix::new(vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap(),
    ];
    for _ in 0..60 {
        let k = 1 + (rng.next_u64() % 2) as usize;
        cases.push(random_full_rank(&mut rng, k));
    }
    for w in &cases {
        for support in [&[1usize][..], &[2], &[3], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]] {
            let iso = w.isotropy_at(support).unwrap();
            let f: u64 = iso.finite_part.iter().product();
            let d = iso.finite_part.last().copied().unwrap_or(1).max(1);
            if d.pow(w.rank() as u32) > 100_000 {
                continue; // keep the brute force cheap
            }
            let got = count_grid_solutions(w, support, d);
            let want = d.pow(iso.torus_rank as u32) * f;
            assert_eq!(
                got, want,
                "grid count for {:?} on support {support:?}: descriptor {iso:?}",
                w.rows()
            );
            // element-order profile pins the invariant factors, not just the
            // order: count solutions of each exponent e | d
            if iso.torus_rank == 0 {
                for e in 1..=d {
                    if d % e != 0 {
                        continue;
                    }
                    let annihilated = count_grid_solutions_scaled(w, support, d, e);
                    let want: u64 = iso
                        .finite_part
                        .iter()
                        .map(|&fi| num_integer::gcd(fi, e))
                        .product();
                    assert_eq!(annihilated, want, "exponent {e} of {:?}", w.rows());
                }
            }
        }
    }
}

/// Count grid solutions killed by multiplication with `e`.
fn count_grid_solutions_scaled(w: &WeightMatrix, support: &[usize], d: u64, e: u64) -> u64 {
    let k = w.rank();
    let mut count = 0;
    for code in 0..d.pow(k as u32) {
        let mut theta = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            theta.push(c % d);
            c /= d;
        }
        let solves = support.iter().all(|&j| {
            let dot: i64 = theta
                .iter()
                .zip(w.rows().iter())
                .map(|(&t, row)| t as i64 * row[j - 1])
                .sum();
            dot.rem_euclid(d as i64) == 0
        });
        let killed = theta.iter().all(|&t| (t * e) % d == 0);
        if solves && killed {
            count += 1;
        }
    }
    count
}

#[test]
fn classification_is_invariant_under_torus_reparameterization() {
    // Left multiplication by GL(2, Z) re-coordinatizes the torus without
    // changing the action.
    let unimodular: Vec<[[i64; 2]; 2]> = vec![
        [[1, 1], [0, 1]],
        [[1, 0], [1, 1]],
        [[0, 1], [-1, 0]],
        [[2, 1], [1, 1]],
        [[1, -3], [0, -1]],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut cases = vec![model_weights()];
    for _ in 0..40 {
        cases.push(random_full_rank(&mut rng, 2));
    }
    for w in &cases {
        let base = w.classify().unwrap();
        for u in &unimodular {
            let rows: Vec<[i64; 3]> = (0..2)
                .map(|i| {
                    let mut row = [0i64; 3];
                    for j in 0..3 {
                        row[j] = u[i][0] * w.rows()[0][j] + u[i][1] * w.rows()[1][j];
                    }
                    row
                })
                .collect();
            let other = WeightMatrix::new(rows).unwrap().classify().unwrap();
            assert_eq!(base.principal_isotropy, other.principal_isotropy);
            assert_eq!(base.free, other.free);
            assert_eq!(base.pseudo_free, other.pseudo_free);
            assert_eq!(base.fixed_point_free, other.fixed_point_free);
            assert_eq!(base.singular_orbits, other.singular_orbits);
            assert_eq!(base.effective, other.effective);
            for (s, o) in base.strata.iter().zip(other.strata.iter()) {
                assert_eq!(s.isotropy, o.isotropy, "support {:?}", s.support);
            }
        }
    }
}

#[test]
fn classification_commutes_with_column_permutations() {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut cases = vec![model_weights()];
    for _ in 0..25 {
        cases.push(random_full_rank(&mut rng, 2));
    }
    for w in &cases {
        for p in &perms {
            let rows: Vec<[i64; 3]> = w
                .rows()
                .iter()
                .map(|row| [row[p[0]], row[p[1]], row[p[2]]])
                .collect();
            let permuted = WeightMatrix::new(rows).unwrap();
            for support in [&[1usize][..], &[2], &[3], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]] {
                // relabel the support through the permutation
                let mapped: Vec<usize> = {
                    let mut v: Vec<usize> = support
                        .iter()
                        .map(|&j| p.iter().position(|&t| t == j - 1).unwrap() + 1)
                        .collect();
                    v.sort();
                    v
                };
                assert_eq!(
                    w.isotropy_at(support).unwrap(),
                    permuted.isotropy_at(&mapped).unwrap()
                );
            }
        }
    }
}

#[test]
fn freeness_implication_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..200 {
        let k = 1 + (rng.next_u64() % 2) as usize;
        let w = random_full_rank(&mut rng, k);
        let class = w.classify().unwrap();
        if class.free {
            assert!(class.pseudo_free, "{:?}", w.rows());
        }
        if class.pseudo_free {
            assert!(class.fixed_point_free, "{:?}", w.rows());
        }
    }
}

#[test]
fn rank_sum_identity_holds_for_every_fixed_point_free_pair_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut checked = 0;
    while checked < 200 {
        let w = random_full_rank(&mut rng, 2);
        let class = w.classify().unwrap();
        if !class.fixed_point_free {
            continue;
        }
        let check = w.rank_sum_check().unwrap();
        assert!(check.holds, "{:?} gave {check:?}", w.rows());
        assert_eq!(check.lhs, 6);
        checked += 1;
    }
}

#[test]
fn membership_in_the_pseudo_free_model_reduces_to_a_congruence() {
    // The columns of the model sum to zero, so a cyclic action embeds iff
    // the residues sum to zero; the Smith-form solver must agree.
    let w = model_weights();
    for n in 2u64..=12 {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let g = [a, b, c, n]
                        .iter()
                        .fold(0u64, |acc, &x| num_integer::gcd(acc, x));
                    let result = w.cyclic_in_torus(n, [a, b, c]);
                    if g != 1 {
                        assert!(result.is_err());
                        continue;
                    }
                    let member = result.unwrap().member;
                    assert_eq!(
                        member,
                        (a + b + c) % n == 0,
                        "residues ({a}, {b}, {c}) mod {n}"
                    );
                }
            }
        }
    }
}

#[test]
fn witnesses_solve_their_congruences() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen_members = 0;
    for _ in 0..400 {
        let k = 1 + (rng.next_u64() % 2) as usize;
        let w = random_full_rank(&mut rng, k);
        let n = 2 + rng.next_u64() % 9;
        let angles = [rng.next_u64() % n, rng.next_u64() % n, rng.next_u64() % n];
        let Ok(result) = w.cyclic_in_torus(n, angles) else { continue };
        if !result.member {
            continue;
        }
        seen_members += 1;
        let theta = result.witness.expect("members carry witnesses");
        for j in 0..3 {
            let mut acc = sform_core::RationalAngle::ZERO;
            for (t, th) in theta.iter().enumerate() {
                acc = acc + th.times(w.rows()[t][j]);
            }
            assert_eq!(
                acc,
                sform_core::RationalAngle::new(angles[j] as i64, n as i64),
                "witness fails column {j} of {:?}",
                w.rows()
            );
        }
    }
    assert!(seen_members > 20, "sampling produced too few members: {seen_members}");
}
