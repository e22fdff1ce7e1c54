//! q-extent machinery on 3-dimensional lens spaces L(n; k, l): the quotient
//! geodesic distance, stochastic maximization of the average pairwise
//! distance (certified lower bounds), and the closed-form analytic upper
//! bound together with its fixed-point-count consequences.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

pub const PI: f64 = core::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LensError {
    NotCoprime { n: u64, value: u64 },
    BadParameters(String),
}

impl fmt::Display for LensError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LensError::NotCoprime { n, value } => {
                write!(f, "{value} is not coprime to {n}")
            }
            LensError::BadParameters(msg) => write!(f, "bad parameters: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LensError {}

/// The lens space L(n; k, l): quotient of S^3 in C^2 by
/// `(z1, z2) -> (w^k z1, w^l z2)`, `w = e^(2 pi i / n)`.
#[derive(Debug, Clone)]
pub struct LensSpace {
    pub n: u64,
    pub k: u64,
    pub l: u64,
    /// deck[g] = (cos, sin) pairs for the rotations of z1 and z2 by g.
    deck: Vec<[f64; 4]>,
}

pub type Point = [f64; 4];

impl LensSpace {
    pub fn new(n: u64, k: i64, l: i64) -> Result<LensSpace, LensError> {
        if n < 2 {
            return Err(LensError::BadParameters(String::from("n must be >= 2")));
        }
        let nn = n as i64;
        let k = k.rem_euclid(nn) as u64;
        let l = l.rem_euclid(nn) as u64;
        if k.gcd(&n) != 1 {
            return Err(LensError::NotCoprime { n, value: k });
        }
        if l.gcd(&n) != 1 {
            return Err(LensError::NotCoprime { n, value: l });
        }
        let mut deck = Vec::with_capacity(n as usize);
        for g in 0..n {
            let ak = 2.0 * PI * (k * g % n) as f64 / n as f64;
            let al = 2.0 * PI * (l * g % n) as f64 / n as f64;
            deck.push([libm::cos(ak), libm::sin(ak), libm::cos(al), libm::sin(al)]);
        }
        Ok(LensSpace { n, k, l, deck })
    }

    /// Canonical representative: `0 < k <= l < n/2` (via the isometries
    /// k -> -k and the swap of k, l); n = 2 keeps (1, 1).
    pub fn canonicalize(n: u64, k: i64, l: i64) -> Result<LensSpace, LensError> {
        let space = LensSpace::new(n, k, l)?;
        if n == 2 {
            return Ok(space);
        }
        let fold = |x: u64| x.min(n - x);
        let (mut k, mut l) = (fold(space.k), fold(space.l));
        if k > l {
            core::mem::swap(&mut k, &mut l);
        }
        LensSpace::new(n, k as i64, l as i64)
    }

    pub fn is_canonical(&self) -> bool {
        if self.n == 2 {
            return self.k == 1 && self.l == 1;
        }
        self.k <= self.l && 2 * self.l < self.n
    }

    /// Apply deck transformation g to a point of S^3.
    pub fn deck_transform(&self, g: u64, x: &Point) -> Point {
        let [ck, sk, cl, sl] = self.deck[(g % self.n) as usize];
        [
            ck * x[0] - sk * x[1],
            sk * x[0] + ck * x[1],
            cl * x[2] - sl * x[3],
            sl * x[2] + cl * x[3],
        ]
    }

    /// Quotient geodesic distance: min over the deck group of the spherical
    /// distance `arccos <x, g y>`.
    pub fn distance(&self, x: &Point, y: &Point) -> f64 {
        let mut best = -1.0f64;
        for rot in &self.deck {
            let [ck, sk, cl, sl] = *rot;
            let dot = x[0] * (ck * y[0] - sk * y[1])
                + x[1] * (sk * y[0] + ck * y[1])
                + x[2] * (cl * y[2] - sl * y[3])
                + x[3] * (sl * y[2] + cl * y[3]);
            if dot > best {
                best = dot;
            }
        }
        libm::acos(best.clamp(-1.0, 1.0))
    }
}

/// A q-point configuration on S^3.
#[derive(Debug, Clone, Serialize)]
pub struct Configuration {
    pub points: Vec<Point>,
}

impl Configuration {
    pub fn q(&self) -> usize {
        self.points.len()
    }

    pub fn validate(&self) -> Result<(), LensError> {
        for p in &self.points {
            let n2: f64 = p.iter().map(|c| c * c).sum();
            if libm::fabs(n2 - 1.0) > 1e-12 {
                return Err(LensError::BadParameters(alloc::format!(
                    "point off the unit sphere: |x|^2 = {n2}"
                )));
            }
        }
        Ok(())
    }
}

/// Average pairwise quotient distance: `C(q,2)^-1 sum_{i<j} d(x_i, x_j)`.
pub fn extent_objective(space: &LensSpace, config: &Configuration) -> f64 {
    let q = config.q();
    if q < 2 {
        return 0.0;
    }
    let mut sum = 0.0;
    for i in 0..q {
        for j in (i + 1)..q {
            sum += space.distance(&config.points[i], &config.points[j]);
        }
    }
    sum / (q * (q - 1) / 2) as f64
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OptimizerParams {
    pub restarts: u32,
    pub max_iters: u32,
    pub seed: u64,
    /// Geometric step schedule from `init_step` down to `final_step`.
    pub init_step: f64,
    pub final_step: f64,
}

impl Default for OptimizerParams {
    fn default() -> Self {
        OptimizerParams {
            restarts: 10,
            max_iters: 3000,
            seed: 0,
            init_step: 0.6,
            final_step: 1e-5,
        }
    }
}

impl OptimizerParams {
    pub fn validate(&self) -> Result<(), LensError> {
        if self.max_iters > 10_000_000 || self.restarts > 100_000 {
            return Err(LensError::BadParameters(String::from(
                "optimizer budget out of range",
            )));
        }
        if !(self.init_step > 0.0 && self.final_step > 0.0 && self.final_step <= self.init_step)
        {
            return Err(LensError::BadParameters(String::from("bad step schedule")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizerStats {
    pub restarts: u32,
    pub iterations: u64,
    pub seed: u64,
}

/// A certified extent lower bound with its achieving configuration, plus the
/// analytic upper bound for the same (n, q).
#[derive(Debug, Clone, Serialize)]
pub struct ExtentEstimate {
    pub q: usize,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub configuration: Configuration,
    pub optimizer_stats: OptimizerStats,
}

fn gaussian(rng: &mut impl RngCore) -> f64 {
    let u1 = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let u2 = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    libm::sqrt(-2.0 * libm::log((1.0 - u1).max(1e-300))) * libm::cos(2.0 * PI * u2)
}

fn random_unit4(rng: &mut impl RngCore) -> Point {
    loop {
        let v = [gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)];
        let n2: f64 = v.iter().map(|c| c * c).sum();
        if n2 > 1e-12 {
            let n = libm::sqrt(n2);
            return [v[0] / n, v[1] / n, v[2] / n, v[3] / n];
        }
    }
}

fn normalize4(v: Point) -> Point {
    let n = libm::sqrt(v.iter().map(|c| c * c).sum());
    [v[0] / n, v[1] / n, v[2] / n, v[3] / n]
}

/// Structured restart seeds: known extremal configurations are highly
/// symmetric, so orthogonal/antipodal frames and spread circles are tried
/// before random starts.
fn structured_configs(q: usize) -> Vec<Configuration> {
    let frame: [Point; 8] = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        normalize4([1.0, 0.0, 1.0, 0.0]),
        normalize4([1.0, 0.0, -1.0, 0.0]),
    ];
    let orthogonal = Configuration { points: frame.iter().take(q).copied().collect() };
    // points spread along a great circle crossing both complex lines
    let spread = Configuration {
        points: (0..q)
            .map(|i| {
                let t = PI * i as f64 / q as f64;
                [libm::cos(t), 0.0, libm::sin(t), 0.0]
            })
            .collect(),
    };
    alloc::vec![orthogonal, spread]
}

/// Multi-start stochastic ascent for the q-extent of a lens space.
/// Deterministic given the seed: restart i uses `seed xor i`, restarts are
/// merged serially.
pub fn optimize_extent(
    space: &LensSpace,
    q: usize,
    params: OptimizerParams,
) -> Result<ExtentEstimate, LensError> {
    if q < 2 {
        return Err(LensError::BadParameters(String::from("q must be >= 2")));
    }
    params.validate()?;
    let structured = structured_configs(q);
    let total_restarts = params.restarts.max(1).max(structured.len() as u32);
    let mut best: Option<(f64, Configuration)> = None;
    let mut iterations: u64 = 0;
    for restart in 0..total_restarts {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(params.seed ^ restart as u64);
        let mut config = if (restart as usize) < structured.len() {
            structured[restart as usize].clone()
        } else {
            Configuration { points: (0..q).map(|_| random_unit4(&mut rng)).collect() }
        };
        let mut val = extent_objective(space, &config);
        let ratio = params.final_step / params.init_step;
        for iter in 0..params.max_iters {
            iterations += 1;
            let step = params.init_step
                * libm::pow(ratio, iter as f64 / params.max_iters as f64);
            let idx = (iter as usize) % q;
            let x = config.points[idx];
            // tangential proposal, re-normalized
            let g = [gaussian(&mut rng), gaussian(&mut rng), gaussian(&mut rng), gaussian(&mut rng)];
            let dot: f64 = g.iter().zip(&x).map(|(a, b)| a * b).sum();
            let cand = normalize4([
                x[0] + step * (g[0] - dot * x[0]),
                x[1] + step * (g[1] - dot * x[1]),
                x[2] + step * (g[2] - dot * x[2]),
                x[3] + step * (g[3] - dot * x[3]),
            ]);
            let old = config.points[idx];
            config.points[idx] = cand;
            let cval = extent_objective(space, &config);
            if cval > val {
                val = cval;
            } else {
                config.points[idx] = old;
            }
        }
        // coordinate-wise polish
        for &delta in &[1e-2, 1e-3, 1e-4] {
            let mut improved = true;
            while improved {
                improved = false;
                for idx in 0..q {
                    for c in 0..4 {
                        for sgn in [1.0, -1.0] {
                            let old = config.points[idx];
                            let mut cand = old;
                            cand[c] += sgn * delta;
                            config.points[idx] = normalize4(cand);
                            let cval = extent_objective(space, &config);
                            if cval > val + 1e-15 {
                                val = cval;
                                improved = true;
                            } else {
                                config.points[idx] = old;
                            }
                        }
                    }
                }
            }
        }
        if best.as_ref().is_none_or(|(bv, _)| val > *bv) {
            best = Some((val, config));
        }
    }
    let (_, configuration) = best.expect("at least one restart");
    let lower_bound = extent_objective(space, &configuration);
    Ok(ExtentEstimate {
        q,
        lower_bound,
        upper_bound: extent_upper_bound(space.n, q).radians,
        configuration,
        optimizer_stats: OptimizerStats {
            restarts: total_restarts,
            iterations,
            seed: params.seed,
        },
    })
}

/// `alpha_q = pi / (2 (2 - 1/floor((q+1)/2)))`.
pub fn alpha_q(q: usize) -> f64 {
    assert!(q >= 2, "alpha_q needs q >= 2");
    let f = ((q + 1) / 2) as f64;
    PI / (2.0 * (2.0 - 1.0 / f))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct UpperBound {
    pub radians: f64,
    /// Set when the arccos argument fell outside [-1, 1] by more than 1e-9
    /// before clamping (a logic error, not rounding).
    pub clamped: bool,
}

/// Closed-form upper bound on the q-extent of L(n; k, l); depends only on
/// (n, q):
/// `arccos{ cos(a_q) cos(pi/sqrt(n)) - 1/2 [ (cos(pi/sqrt(n)) - cos(pi/n))^2
///   + sin^2(a_q) (sqrt(n) sin(pi/n) - sin(pi/sqrt(n)))^2 ]^(1/2) }`.
pub fn extent_upper_bound(n: u64, q: usize) -> UpperBound {
    assert!(n >= 2 && q >= 2, "extent bound needs n >= 2, q >= 2");
    let nf = n as f64;
    let a = alpha_q(q);
    let cos_sqrt = libm::cos(PI / libm::sqrt(nf));
    let sin_sqrt = libm::sin(PI / libm::sqrt(nf));
    let cos_n = libm::cos(PI / nf);
    let sin_n = libm::sin(PI / nf);
    let sin_a = libm::sin(a);
    let inner = (cos_sqrt - cos_n) * (cos_sqrt - cos_n)
        + sin_a * sin_a * (libm::sqrt(nf) * sin_n - sin_sqrt) * (libm::sqrt(nf) * sin_n - sin_sqrt);
    let arg = libm::cos(a) * cos_sqrt - 0.5 * libm::sqrt(inner);
    let clamped = arg < -1.0 - 1e-9 || arg > 1.0 + 1e-9;
    UpperBound { radians: libm::acos(arg.clamp(-1.0, 1.0)), clamped }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanRow {
    pub n: u64,
    pub bound: f64,
    /// bound < pi/3
    pub verdict: bool,
    pub margin: f64,
}

/// Per-n verdicts `extent_upper_bound(n, q) < pi/3` over a range.
pub fn extent_bound_scan(q: usize, n_from: u64, n_to: u64) -> Vec<ScanRow> {
    let threshold = PI / 3.0;
    (n_from..=n_to)
        .map(|n| {
            let bound = extent_upper_bound(n, q).radians;
            ScanRow { n, bound, verdict: bound < threshold, margin: threshold - bound }
        })
        .collect()
}

/// Exact identity `3 C(N,3) = N C(N-1,2)` behind the angle-sum threshold.
pub fn triangle_count_identity(n_points: u64) -> bool {
    let c3 = n_points * (n_points - 1) * (n_points - 2) / 6;
    let c2 = (n_points - 1) * (n_points - 2) / 2;
    3 * c3 == n_points * c2
}

/// Angle-sum contradiction for N isolated fixed points in positive
/// curvature: the total interior angle of the `C(N,3)` geodesic triangles
/// must exceed `C(N,3) pi`, but it is bounded by `N C(N-1,2)` times the
/// extent bound on the angles at each vertex. Returns true iff the
/// configuration cannot fit, i.e. `N C(N-1,2) bound <= C(N,3) pi`.
pub fn angle_sum_contradiction(n_points: u64, link_extent_bound: f64) -> bool {
    assert!(n_points >= 3, "need at least 3 points");
    assert!(
        link_extent_bound > 0.0 && link_extent_bound <= PI,
        "bound must lie in (0, pi]"
    );
    let c3 = (n_points * (n_points - 1) * (n_points - 2) / 6) as f64;
    let c2 = ((n_points - 1) * (n_points - 2) / 2) as f64;
    debug_assert!(triangle_count_identity(n_points));
    n_points as f64 * c2 * link_extent_bound <= c3 * PI
}
