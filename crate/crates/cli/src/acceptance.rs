//! The acceptance suite: verifiable claims the whole tool must satisfy,
//! runnable both from `sform verify-all` and from the integration test
//! target. Each criterion is named for what it checks and reports a
//! one-line detail.

use serde::Serialize;

use sform_core::group::MetacyclicPresentation;
use sform_core::harness::run_harness;
use sform_core::lens::{
    angle_sum_contradiction, extent_upper_bound, optimize_extent, triangle_count_identity,
    LensSpace, OptimizerParams, PI,
};
use sform_core::rep::{oracle, LinearSpaceForm, SamplerParams};
use sform_core::torus::WeightMatrix;

use crate::config::RunConfig;

#[derive(Debug, Clone, Serialize)]
pub struct Criterion {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Criterion {
    fn new(name: &'static str, pass: bool, detail: String) -> Criterion {
        Criterion { name, pass, detail }
    }
}

#[derive(Debug, Clone)]
pub struct AcceptanceOptions {
    pub seed: u64,
    /// Exhaustive presentation search bound (default 2000).
    pub order_cap: u64,
    /// Upper end of the bound scan (default 10000).
    pub scan_to: u64,
    /// Minimum accepted margin at n = 61; lowered only by the negative
    /// control self-test.
    pub margin_floor: f64,
}

impl AcceptanceOptions {
    pub fn from_config(config: &RunConfig) -> AcceptanceOptions {
        AcceptanceOptions {
            seed: config.seed,
            order_cap: config.order_cap,
            scan_to: 10_000,
            margin_floor: 1e-6,
        }
    }
}

impl Default for AcceptanceOptions {
    fn default() -> Self {
        AcceptanceOptions::from_config(&RunConfig::default())
    }
}

pub fn run_all(options: &AcceptanceOptions) -> Vec<Criterion> {
    vec![
        extent_bound_scan(options),
        optimizer_within_analytic_bound(options),
        projective_diameter_oracle(options),
        fixed_point_count_threshold(),
        presentation_harness(options),
        order_63_structure(),
        torus_model(),
        representation_exactness(),
        collapse_ratio(options),
        deterministic_replay(options),
    ]
}

/// The closed-form 5-point extent bound stays below pi/3 for every n in
/// [61, scan_to], with a safely positive margin at n = 61.
fn extent_bound_scan(options: &AcceptanceOptions) -> Criterion {
    let start = std::time::Instant::now();
    let threshold = PI / 3.0;
    let mut worst = f64::INFINITY;
    let mut failures = 0u64;
    for n in 61..=options.scan_to {
        let margin = threshold - extent_upper_bound(n, 5).radians;
        if margin <= 0.0 {
            failures += 1;
        }
        worst = worst.min(margin);
    }
    let margin_61 = threshold - extent_upper_bound(61, 5).radians;
    let elapsed = start.elapsed();
    let pass = failures == 0
        && margin_61 > options.margin_floor
        && elapsed.as_secs_f64() < 1.0;
    Criterion::new(
        "extent-bound-scan",
        pass,
        format!(
            "n in [61, {}]: {failures} above pi/3, margin(61) = {margin_61:.6e} \
             (floor {:.1e}), worst margin {worst:.6e}, {:.0} ms",
            options.scan_to,
            options.margin_floor,
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

/// Stochastic lower bounds never exceed the analytic upper bound over a
/// (n, q, parameters) grid.
fn optimizer_within_analytic_bound(options: &AcceptanceOptions) -> Criterion {
    let budget = OptimizerParams {
        restarts: 3,
        max_iters: 600,
        seed: options.seed,
        ..OptimizerParams::default()
    };
    let mut cells = 0;
    let mut violations = Vec::new();
    for n in [2u64, 3, 5, 7, 61, 100] {
        // canonical parameter pairs reachable from small (k, l)
        let mut params: Vec<(u64, u64)> = Vec::new();
        for (k, l) in [(1i64, 1i64), (1, 2), (2, 3)] {
            if let Ok(space) = LensSpace::canonicalize(n, k, l) {
                if !params.contains(&(space.k, space.l)) {
                    params.push((space.k, space.l));
                }
            }
        }
        for (k, l) in params {
            let space = LensSpace::new(n, k as i64, l as i64).unwrap();
            for q in 2..=5 {
                cells += 1;
                let est = optimize_extent(&space, q, budget).unwrap();
                if est.lower_bound > est.upper_bound + 1e-9 {
                    violations.push(format!(
                        "L({n};{k},{l}) q={q}: {} > {}",
                        est.lower_bound, est.upper_bound
                    ));
                }
            }
        }
    }
    Criterion::new(
        "optimizer-within-analytic-bound",
        violations.is_empty(),
        if violations.is_empty() {
            format!("{cells} grid cells, lower <= upper + 1e-9 in every cell")
        } else {
            violations.join("; ")
        },
    )
}

/// The 2-point extent of real projective 3-space is its diameter pi/2: the
/// optimizer reaches it and a dense grid confirms nothing exceeds it.
fn projective_diameter_oracle(options: &AcceptanceOptions) -> Criterion {
    let rp3 = LensSpace::new(2, 1, 1).unwrap();
    let est = optimize_extent(
        &rp3,
        2,
        OptimizerParams { seed: options.seed, ..OptimizerParams::default() },
    )
    .unwrap();

    // By homogeneity the first point can be pinned; grid the second.
    let res = 0.05f64;
    let steps = (PI / res).ceil() as usize;
    let e1 = [1.0, 0.0, 0.0, 0.0];
    let mut grid_max = 0.0f64;
    for ia in 0..=steps {
        let a = PI * ia as f64 / steps as f64;
        for ib in 0..=steps {
            let b = PI * ib as f64 / steps as f64;
            for ic in 0..(2 * steps) {
                let c = PI * ic as f64 / steps as f64;
                let y = [
                    a.cos(),
                    a.sin() * b.cos(),
                    a.sin() * b.sin() * c.cos(),
                    a.sin() * b.sin() * c.sin(),
                ];
                grid_max = grid_max.max(rp3.distance(&e1, &y));
            }
        }
    }
    let pass = est.lower_bound >= PI / 2.0 - 1e-3
        && grid_max <= PI / 2.0 + 1e-9
        && grid_max >= PI / 2.0 - res;
    Criterion::new(
        "projective-diameter-oracle",
        pass,
        format!(
            "optimizer {:.9} vs pi/2 = {:.9}; grid max {:.6} at resolution {res}",
            est.lower_bound,
            PI / 2.0,
            grid_max
        ),
    )
}

/// Six isolated fixed points contradict the pi/3 vertex-angle bound, but
/// not a slightly larger one; the underlying triangle-count identity is
/// exact for all small point counts.
fn fixed_point_count_threshold() -> Criterion {
    let identity_ok = (3..=100).all(triangle_count_identity);
    let pass = identity_ok
        && angle_sum_contradiction(6, PI / 3.0)
        && !angle_sum_contradiction(6, PI / 3.0 + 0.01);
    Criterion::new(
        "fixed-point-count-threshold",
        pass,
        format!(
            "6 points at pi/3 contradict: {}; at pi/3 + 0.01: {}; identity 3..=100: {identity_ok}",
            angle_sum_contradiction(6, PI / 3.0),
            angle_sum_contradiction(6, PI / 3.0 + 0.01)
        ),
    )
}

/// Exhaustively over all consistent presentations up to the order cap:
/// noncyclic + cyclic order-3p subgroups + an index-3 normal cyclic
/// subgroup forces the spherical verdict with B-order divisible by 9.
fn presentation_harness(options: &AcceptanceOptions) -> Criterion {
    let start = std::time::Instant::now();
    let report = run_harness(options.order_cap);
    let elapsed = start.elapsed();
    Criterion::new(
        "presentation-harness",
        report.ok() && elapsed.as_secs_f64() < 300.0,
        format!(
            "cap {}: {} presentations, {} noncyclic, {} hypothesis-satisfying, \
             {} confirmed, {} counterexamples, {:.1} s",
            report.order_cap,
            report.presentations,
            report.noncyclic,
            report.hypothesis_satisfied,
            report.spherical_confirmed,
            report.counterexamples.len(),
            elapsed.as_secs_f64()
        ),
    )
}

/// Structure of the order-63 group (7, 9, 2) and the order-21 control.
fn order_63_structure() -> Criterion {
    let gamma = MetacyclicPresentation::validate(7, 9, 2).unwrap();
    let report = gamma.report().unwrap();
    let petrie = MetacyclicPresentation::validate(7, 3, 2)
        .unwrap()
        .is_spherical_5_space_group();
    let pass = report.spherical.verdict
        && report.center.order == 3
        && report.center.index == 21
        && report.abelianization == vec![9]
        && !petrie.verdict;
    Criterion::new(
        "order-63-structure",
        pass,
        format!(
            "(7,9,2): spherical {}, center order {} index {}, abelianization {:?}; \
             (7,3,2) spherical {}",
            report.spherical.verdict,
            report.center.order,
            report.center.index,
            report.abelianization,
            petrie.verdict
        ),
    )
}

/// The weight matrix [[1,1,-2],[1,-2,1]] is the pseudo-free model: Z_3
/// principal isotropy, three singular circle orbits, fixed-sphere rank sum
/// 6; the diagonal circle is free.
fn torus_model() -> Criterion {
    let w = WeightMatrix::new(vec![[1, 1, -2], [1, -2, 1]]).unwrap();
    let class = w.classify().unwrap();
    let rank_sum = w.rank_sum_check().unwrap();
    let diagonal = WeightMatrix::new(vec![[1, 1, 1]])
        .unwrap()
        .classify()
        .unwrap();
    let pass = class.pseudo_free
        && !class.free
        && class.principal_isotropy.torus_rank == 0
        && class.principal_isotropy.finite_part == vec![3]
        && class.singular_orbits == 3
        && rank_sum.holds
        && diagonal.free;
    Criterion::new(
        "torus-model",
        pass,
        format!(
            "pseudo-free {}, principal Z_{}, {} singular orbits, rank sum holds {}; \
             diagonal circle free {}",
            class.pseudo_free,
            class.principal_isotropy.finite_order(),
            class.singular_orbits,
            rank_sum.holds,
            diagonal.free
        ),
    )
}

/// The standard representation of (7, 9, 2) is exact: relations verified,
/// free by the rational rule, and the rule agrees with the numerical
/// eigenvalue oracle on every element.
fn representation_exactness() -> Criterion {
    let form = match LinearSpaceForm::build_standard(7, 9, 2, 3) {
        Ok(form) => form,
        Err(e) => {
            return Criterion::new(
                "representation-exactness",
                false,
                format!("relations failed: {e}"),
            )
        }
    };
    let free = form.is_free().free;
    let mut mismatches = 0;
    let mut checked = 0;
    for (g, rot) in form.all_rotations() {
        if g.is_identity() {
            continue;
        }
        checked += 1;
        if rot.has_fixed_point() != oracle::has_unit_eigenvalue(&rot.to_matrix(), 1e-8) {
            mismatches += 1;
        }
    }
    Criterion::new(
        "representation-exactness",
        free && mismatches == 0,
        format!(
            "relations verified, free {free}, rational rule vs eigenvalue oracle: \
             {checked} elements, {mismatches} mismatches"
        ),
    )
}

/// Collapse ratios of the cyclic catalog sit exactly at pi^2, the boundary
/// of the volume/injectivity-radius inequality. The noncyclic standard
/// representations land strictly below it (volume over exact minimum
/// injectivity radius is pi^2 / 3 for the whole (m, 9, r) family), so the
/// pi^2 floor is asserted for the cyclic catalog only and the noncyclic
/// family is pinned to its own exact constant.
fn collapse_ratio(options: &AcceptanceOptions) -> Criterion {
    let sampler = SamplerParams { restarts: 12, iters: 4000, seed: options.seed };
    let mut detail = Vec::new();
    let mut pass = true;

    for n in [2u64, 5, 50, 500] {
        let form = LinearSpaceForm::build_standard(n, 1, 1, 0).unwrap();
        let geo = form.injectivity_geometry(sampler).unwrap();
        let eq = (geo.collapse_ratio - PI * PI).abs() < 1e-9;
        let floor = geo.collapse_ratio >= PI * PI - 1e-6;
        pass &= eq && floor;
        if !eq || !floor {
            detail.push(format!("L({n};1,1) ratio {:.12}", geo.collapse_ratio));
        }
    }

    // the noncyclic family: exact minimum injectivity radius pi / (3 m)
    for (m, r, c) in [(7u64, 2u64, 3u64), (7, 4, 6), (13, 3, 3)] {
        let form = LinearSpaceForm::build_standard(m, 9, r, c).unwrap();
        let geo = form.injectivity_geometry(sampler).unwrap();
        let family_ratio = geo.volume / geo.min_injrad;
        let family_ok = (family_ratio - PI * PI / 3.0).abs() < 1e-9;
        let below = geo.collapse_ratio < PI * PI;
        pass &= family_ok && below;
        detail.push(format!(
            "({m},9,{r}): vol/min_injrad = {family_ratio:.9} (pi^2/3 = {:.9}), \
             collapse ratio {:.6}",
            PI * PI / 3.0,
            geo.collapse_ratio
        ));
    }
    Criterion::new(
        "collapse-ratio",
        pass,
        format!("cyclic catalog pinned at pi^2; {}", detail.join("; ")),
    )
}

/// Replaying a command with its embedded configuration reproduces the
/// payload bit-for-bit.
fn deterministic_replay(options: &AcceptanceOptions) -> Criterion {
    let config = RunConfig { seed: options.seed, ..RunConfig::default() };
    let runs: Vec<(&str, Box<dyn Fn() -> String>)> = vec![
        (
            "extent optimize",
            Box::new({
                let config = config.clone();
                move || {
                    let out =
                        crate::commands::extent_optimize(&config, 7, 1, 2, 4).unwrap();
                    out.report.payload.to_string()
                }
            }),
        ),
        (
            "rep verify",
            Box::new({
                let config = config.clone();
                move || {
                    let out = crate::commands::rep_verify(&config, 7, 9, 2, 3).unwrap();
                    out.report.payload.to_string()
                }
            }),
        ),
        (
            "groups harness",
            Box::new({
                let config = config.clone();
                move || {
                    let out = crate::commands::groups_harness(&config, 63).unwrap();
                    out.report.payload.to_string()
                }
            }),
        ),
    ];
    let mut mismatched = Vec::new();
    for (name, run) in &runs {
        if run() != run() {
            mismatched.push(*name);
        }
    }
    Criterion::new(
        "deterministic-replay",
        mismatched.is_empty(),
        if mismatched.is_empty() {
            format!("{} commands replayed bit-for-bit", runs.len())
        } else {
            format!("non-deterministic payloads: {}", mismatched.join(", "))
        },
    )
}
