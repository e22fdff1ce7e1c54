//! Exact rational-angle linear representations of space-form groups on the
//! unit 5-sphere, and the metric geometry of their quotients.
//!
//! A group element acts as a "block rotation": a cyclic permutation of the
//! three complex coordinates followed by a per-coordinate rotation through a
//! rational multiple of a full turn. Relations and freeness are decided with
//! exact integer arithmetic; floating point only enters when a metric
//! quantity (displacement, injectivity radius) is requested.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::angle::RationalAngle;
use crate::group::{GroupElement, MetacyclicPresentation};

pub const PI: f64 = core::f64::consts::PI;
/// Volume of the unit 5-sphere: 2*pi^3/Gamma(3) = pi^3.
pub const VOLUME_S5: f64 = PI * PI * PI;

/// Orthogonal map of R^6 = C^3 sending `z` to `w` with
/// `w_j = e^(2 pi i angles_j) z_((j + shift) mod 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockRotationElement {
    pub shift: u8,
    pub angles: [RationalAngle; 3],
}

impl BlockRotationElement {
    pub const IDENTITY: BlockRotationElement = BlockRotationElement {
        shift: 0,
        angles: [RationalAngle::ZERO; 3],
    };

    pub fn new(shift: u8, angles: [RationalAngle; 3]) -> BlockRotationElement {
        BlockRotationElement { shift: shift % 3, angles }
    }

    pub fn diagonal(angles: [RationalAngle; 3]) -> BlockRotationElement {
        BlockRotationElement { shift: 0, angles }
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.angles.iter().all(|a| a.is_zero())
    }

    /// Composition as maps: `(self * rhs)(z) = self(rhs(z))`.
    pub fn compose(&self, rhs: &BlockRotationElement) -> BlockRotationElement {
        let s = self.shift as usize;
        let mut angles = [RationalAngle::ZERO; 3];
        for j in 0..3 {
            angles[j] = self.angles[j] + rhs.angles[(j + s) % 3];
        }
        BlockRotationElement { shift: (self.shift + rhs.shift) % 3, angles }
    }

    pub fn inverse(&self) -> BlockRotationElement {
        let t = (3 - self.shift) % 3;
        let mut angles = [RationalAngle::ZERO; 3];
        for j in 0..3 {
            angles[j] = -self.angles[(j + t as usize) % 3];
        }
        BlockRotationElement { shift: t, angles }
    }

    pub fn pow(&self, mut e: u64) -> BlockRotationElement {
        let mut base = *self;
        let mut acc = BlockRotationElement::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Exact fixed-point decision on the unit 5-sphere. A diagonal element
    /// fixes a point iff some block angle vanishes mod 1; a shifted element
    /// has eigenvalues the three cube roots of `e^(2 pi i sum)`, so it fixes
    /// a point iff the angle sum vanishes mod 1.
    pub fn has_fixed_point(&self) -> bool {
        if self.shift == 0 {
            self.angles.iter().any(|a| a.is_zero())
        } else {
            self.angle_sum().is_zero()
        }
    }

    pub fn angle_sum(&self) -> RationalAngle {
        self.angles[0] + self.angles[1] + self.angles[2]
    }

    /// Exact minimum over the sphere of the displacement `d(x, gx)`, in
    /// radians: the smallest rotation angle among the invariant planes.
    pub fn min_displacement(&self) -> f64 {
        if self.shift == 0 {
            let d = self
                .angles
                .iter()
                .map(|a| a.dist_to_integer())
                .fold(f64::INFINITY, f64::min);
            2.0 * PI * d
        } else {
            // eigen-angles (sum + k)/3, k = 0, 1, 2
            2.0 * PI * self.angle_sum().dist_to_integer() / 3.0
        }
    }

    /// The 6x6 real orthogonal matrix of the map (test/oracle path).
    pub fn to_matrix(&self) -> [[f64; 6]; 6] {
        let mut m = [[0.0; 6]; 6];
        let s = self.shift as usize;
        for j in 0..3 {
            let src = (j + s) % 3;
            let (c, sn) = (self.angles[j].cos(), self.angles[j].sin());
            m[2 * j][2 * src] = c;
            m[2 * j][2 * src + 1] = -sn;
            m[2 * j + 1][2 * src] = sn;
            m[2 * j + 1][2 * src + 1] = c;
        }
        m
    }

    /// Apply to a point of R^6 = C^3.
    pub fn apply(&self, x: &[f64; 6]) -> [f64; 6] {
        let mut out = [0.0; 6];
        let s = self.shift as usize;
        for j in 0..3 {
            let src = (j + s) % 3;
            let (c, sn) = (self.angles[j].cos(), self.angles[j].sin());
            out[2 * j] = c * x[2 * src] - sn * x[2 * src + 1];
            out[2 * j + 1] = sn * x[2 * src] + c * x[2 * src + 1];
        }
        out
    }
}

impl fmt::Display for BlockRotationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "shift {} angles ({}, {}, {})",
            self.shift, self.angles[0], self.angles[1], self.angles[2]
        )
    }
}

/// A unit point of S^5 in R^6 = C^3 coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpherePoint(pub [f64; 6]);

impl SpherePoint {
    pub fn new(coords: [f64; 6]) -> Result<SpherePoint, RepError> {
        let norm2: f64 = coords.iter().map(|c| c * c).sum();
        if libm::fabs(norm2 - 1.0) > 1e-12 {
            return Err(RepError::NotUnit { norm2 });
        }
        Ok(SpherePoint(coords))
    }

    pub fn normalized(coords: [f64; 6]) -> SpherePoint {
        let norm = libm::sqrt(coords.iter().map(|c| c * c).sum());
        let mut out = coords;
        for c in &mut out {
            *c /= norm;
        }
        SpherePoint(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RepError {
    /// One of A^m, B^n, BAB^-1 A^-r is not the identity.
    RelationFailed { which: &'static str },
    /// The bottom-block numerator does not give B order exactly n.
    WrongGeneratorOrder { generator: &'static str, expected: u64 },
    NotFree { witness: GroupElement },
    NotUnit { norm2: f64 },
    BadParameters(String),
}

impl fmt::Display for RepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepError::RelationFailed { which } => write!(f, "relation {which} fails"),
            RepError::WrongGeneratorOrder { generator, expected } => {
                write!(f, "generator {generator} does not have order {expected}")
            }
            RepError::NotFree { witness } => {
                write!(f, "representation is not free: {witness} fixes a point")
            }
            RepError::NotUnit { norm2 } => write!(f, "point not on unit sphere: |x|^2 = {norm2}"),
            RepError::BadParameters(msg) => write!(f, "bad parameters: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RepError {}

/// A metacyclic presentation together with exact block-rotation images of
/// its two generators, with all relations verified.
#[derive(Debug, Clone)]
pub struct LinearSpaceForm {
    pub presentation: MetacyclicPresentation,
    pub gen_a: BlockRotationElement,
    pub gen_b: BlockRotationElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FreeVerdict {
    pub free: bool,
    pub witness: Option<GroupElement>,
}

impl LinearSpaceForm {
    /// The standard representation: `A` rotates the blocks through
    /// `(1/m, r/m, r^2/m)`, `B` cyclically permutes the blocks with a bottom
    /// rotation through `c/n`. Relations are verified exactly.
    pub fn build_standard(
        m: u64,
        n: u64,
        r: u64,
        c: u64,
    ) -> Result<LinearSpaceForm, RepError> {
        let presentation = MetacyclicPresentation::validate(m, n, r)
            .map_err(|e| RepError::BadParameters(alloc::format!("{e}")))?;
        let mi = m as i64;
        let ri = (r % m) as i64;
        let gen_a = BlockRotationElement::diagonal([
            RationalAngle::new(1, mi),
            RationalAngle::new(ri, mi),
            RationalAngle::new(ri * ri, mi),
        ]);
        let gen_b = if n == 1 {
            BlockRotationElement::IDENTITY
        } else {
            BlockRotationElement::new(1, [
                RationalAngle::ZERO,
                RationalAngle::ZERO,
                RationalAngle::new(c as i64, n as i64),
            ])
        };
        let form = LinearSpaceForm { presentation, gen_a, gen_b };
        form.verify_relations()?;
        Ok(form)
    }

    /// Exact verification of A^m = B^n = 1, BAB^-1 = A^r, and that the
    /// generators have exactly the presented orders.
    pub fn verify_relations(&self) -> Result<(), RepError> {
        let (m, n, r) = (self.presentation.m, self.presentation.n, self.presentation.r);
        if !self.gen_a.pow(m).is_identity() {
            return Err(RepError::RelationFailed { which: "A^m = 1" });
        }
        if !self.gen_b.pow(n).is_identity() {
            return Err(RepError::RelationFailed { which: "B^n = 1" });
        }
        let conj = self.gen_b.compose(&self.gen_a).compose(&self.gen_b.inverse());
        if conj != self.gen_a.pow(r) {
            return Err(RepError::RelationFailed { which: "BAB^-1 = A^r" });
        }
        for &(g, name, ord) in &[(self.gen_a, "A", m), (self.gen_b, "B", n)] {
            for p in crate::group::prime_factors(ord) {
                if g.pow(ord / p).is_identity() {
                    return Err(RepError::WrongGeneratorOrder { generator: name, expected: ord });
                }
            }
        }
        Ok(())
    }

    /// The rotation representing the normal-form element `A^i B^j`.
    pub fn rotation_of(&self, g: GroupElement) -> BlockRotationElement {
        self.gen_a.pow(g.i).compose(&self.gen_b.pow(g.j))
    }

    /// All group elements with their rotations, by incremental products.
    pub fn all_rotations(&self) -> Vec<(GroupElement, BlockRotationElement)> {
        let (m, n) = (self.presentation.m, self.presentation.n);
        let mut out = Vec::with_capacity((m * n) as usize);
        let mut row = BlockRotationElement::IDENTITY;
        for i in 0..m {
            let mut cur = row;
            for j in 0..n {
                out.push((GroupElement { i, j }, cur));
                cur = cur.compose(&self.gen_b);
            }
            row = row.compose(&self.gen_a);
        }
        out
    }

    /// Freeness by the exact rational-angle fixed-point rule over all
    /// nontrivial elements.
    pub fn is_free(&self) -> FreeVerdict {
        for (g, rot) in self.all_rotations() {
            if g.is_identity() {
                continue;
            }
            if rot.has_fixed_point() {
                return FreeVerdict { free: false, witness: Some(g) };
            }
        }
        FreeVerdict { free: true, witness: None }
    }
}

/// Round-sphere displacement `d(x, gx) = arccos <x, gx>` in radians.
pub fn displacement(rot: &BlockRotationElement, x: &SpherePoint) -> f64 {
    let y = rot.apply(&x.0);
    let dot: f64 = x.0.iter().zip(y.iter()).map(|(a, b)| a * b).sum();
    libm::acos(dot.clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SamplerParams {
    pub restarts: u32,
    pub iters: u32,
    pub seed: u64,
}

impl Default for SamplerParams {
    fn default() -> Self {
        SamplerParams { restarts: 12, iters: 4000, seed: 0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MaxInjrad {
    pub value: f64,
    pub point: SpherePoint,
    pub restarts: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct InjectivityGeometry {
    pub min_injrad: f64,
    pub max_injrad: MaxInjrad,
    pub volume: f64,
    pub collapse_ratio: f64,
}

/// Injectivity radius at a point: half the minimal displacement over the
/// nontrivial deck transformations, capped at the diameter pi.
pub fn injrad_at(rotations: &[BlockRotationElement], x: &SpherePoint) -> f64 {
    let min_disp = rotations
        .iter()
        .map(|r| displacement(r, x))
        .fold(2.0 * PI, f64::min);
    (0.5 * min_disp).min(PI)
}

impl LinearSpaceForm {
    /// Quotient geometry of a free representation: exact minimal injectivity
    /// radius, a multi-start ascent estimate of the maximal one, the volume
    /// `pi^3 / |Gamma|`, and the collapse ratio volume / max injrad.
    pub fn injectivity_geometry(
        &self,
        params: SamplerParams,
    ) -> Result<InjectivityGeometry, RepError> {
        let verdict = self.is_free();
        if !verdict.free {
            return Err(RepError::NotFree { witness: verdict.witness.unwrap() });
        }
        let rotations: Vec<BlockRotationElement> = self
            .all_rotations()
            .into_iter()
            .filter(|(g, _)| !g.is_identity())
            .map(|(_, r)| r)
            .collect();
        let order = self.presentation.order();
        let volume = VOLUME_S5 / order as f64;

        if rotations.is_empty() {
            // trivial group: no identifications, injrad capped at the diameter
            let point = SpherePoint([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
            return Ok(InjectivityGeometry {
                min_injrad: PI,
                max_injrad: MaxInjrad { value: PI, point, restarts: 0 },
                volume,
                collapse_ratio: volume / PI,
            });
        }

        // Exact minimum: min over x and gamma commute, and per element the
        // minimal displacement is the smallest invariant-plane angle.
        let min_injrad = 0.5
            * rotations
                .iter()
                .map(|r| r.min_displacement())
                .fold(f64::INFINITY, f64::min);

        let max = ascend_injrad(&rotations, params);
        Ok(InjectivityGeometry {
            min_injrad,
            collapse_ratio: volume / max.value,
            max_injrad: max,
            volume,
        })
    }
}

fn gaussian(rng: &mut impl RngCore) -> f64 {
    // Box-Muller on uniform (0,1] samples.
    let u1 = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let u2 = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    libm::sqrt(-2.0 * libm::log((1.0 - u1).max(1e-300)))
        * libm::cos(2.0 * PI * u2)
}

fn random_unit6(rng: &mut impl RngCore) -> SpherePoint {
    let mut v = [0.0; 6];
    loop {
        for c in &mut v {
            *c = gaussian(rng);
        }
        let n2: f64 = v.iter().map(|c| c * c).sum();
        if n2 > 1e-12 {
            return SpherePoint::normalized(v);
        }
    }
}

/// Multi-start stochastic ascent of `x -> injrad(x)`; deterministic given the
/// seed (restart i uses seed xor i).
fn ascend_injrad(rotations: &[BlockRotationElement], params: SamplerParams) -> MaxInjrad {
    let mut best_val = f64::NEG_INFINITY;
    let mut best_point = SpherePoint([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    let structured = [
        SpherePoint([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
        SpherePoint::normalized([1.0, 0.0, 1.0, 0.0, 1.0, 0.0]),
        SpherePoint::normalized([1.0, 1.0, 1.0, 1.0, 1.0, 1.0]),
    ];
    for restart in 0..params.restarts.max(1) {
        let mut rng =
            rand_chacha::ChaCha8Rng::seed_from_u64(params.seed ^ restart as u64);
        let mut x = if (restart as usize) < structured.len() {
            structured[restart as usize]
        } else {
            random_unit6(&mut rng)
        };
        let mut val = injrad_at(rotations, &x);
        let mut step = 0.4f64;
        for _ in 0..params.iters {
            let mut cand = x.0;
            for c in &mut cand {
                *c += step * gaussian(&mut rng);
            }
            let cand = SpherePoint::normalized(cand);
            let cval = injrad_at(rotations, &cand);
            if cval > val {
                val = cval;
                x = cand;
            } else {
                step *= 0.995;
                if step < 1e-7 {
                    break;
                }
            }
        }
        if val > best_val {
            best_val = val;
            best_point = x;
        }
    }
    MaxInjrad { value: best_val, point: best_point, restarts: params.restarts }
}

/// Integer matrix helpers for the holonomy check.
pub type IntMatrix = Vec<Vec<i64>>;

fn mat_is_square(mat: &IntMatrix, k: usize) -> bool {
    mat.len() == k && mat.iter().all(|row| row.len() == k)
}

fn det_unimodular(mat: &IntMatrix) -> bool {
    let k = mat.len();
    let det: i64 = match k {
        1 => mat[0][0],
        2 => mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0],
        3 => {
            mat[0][0] * (mat[1][1] * mat[2][2] - mat[1][2] * mat[2][1])
                - mat[0][1] * (mat[1][0] * mat[2][2] - mat[1][2] * mat[2][0])
                + mat[0][2] * (mat[1][0] * mat[2][1] - mat[1][1] * mat[2][0])
        }
        _ => 0,
    };
    det == 1 || det == -1
}

/// Verify that the representation twists a linear torus action through the
/// given holonomy matrices: `g t(theta) g^-1 = t(rho(g) theta)` for each
/// generator, checked exactly at the rational torus generators `e_i / D`.
pub fn verify_pi1_invariance(
    rep: &LinearSpaceForm,
    weights: &crate::torus::WeightMatrix,
    hol_a: &IntMatrix,
    hol_b: &IntMatrix,
) -> Result<bool, RepError> {
    let k = weights.rank();
    if !mat_is_square(hol_a, k) || !mat_is_square(hol_b, k) {
        return Err(RepError::BadParameters(String::from(
            "holonomy matrices must be k x k",
        )));
    }
    if !det_unimodular(hol_a) || !det_unimodular(hol_b) {
        return Err(RepError::BadParameters(String::from(
            "holonomy matrices must lie in GL(k, Z)",
        )));
    }
    let w = weights.rows();
    let max_w = w
        .iter()
        .flat_map(|row| row.iter())
        .map(|v| v.abs())
        .max()
        .unwrap_or(0);
    let max_h = hol_a
        .iter()
        .chain(hol_b.iter())
        .flat_map(|row| row.iter())
        .map(|v| v.abs())
        .max()
        .unwrap_or(0);
    // Denominator large enough that distinct integer numerators cannot alias
    // mod 1.
    let d = 2 * max_w * (1 + k as i64 * max_h) + 3;

    for (g, hol) in [(&rep.gen_a, hol_a), (&rep.gen_b, hol_b)] {
        for i in 0..k {
            // t(e_i / D): diagonal with angles <w_j, e_i> / D = W[i][j] / D
            let t_theta = BlockRotationElement::diagonal([
                RationalAngle::new(w[i][0], d),
                RationalAngle::new(w[i][1], d),
                RationalAngle::new(w[i][2], d),
            ]);
            let lhs = g.compose(&t_theta).compose(&g.inverse());
            // rho(g) e_i / D is column i of the holonomy matrix over D
            let mut angles = [RationalAngle::ZERO; 3];
            for (j, angle) in angles.iter_mut().enumerate() {
                let mut num = 0i64;
                for t in 0..k {
                    num += w[t][j] * hol[t][i];
                }
                *angle = RationalAngle::new(num, d);
            }
            let rhs = BlockRotationElement::diagonal(angles);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Independent numerical check that an orthogonal 6x6 matrix has a unit
/// eigenvalue: the smallest singular value of `M - I`, via a Jacobi
/// eigensolver on `(M - I)^T (M - I)`. Kept independent of the rational
/// fixed-point rule on purpose.
pub mod oracle {
    /// Eigenvalues of a symmetric 6x6 matrix by the cyclic Jacobi method.
    pub fn symmetric_eigenvalues(mut a: [[f64; 6]; 6]) -> [f64; 6] {
        for _sweep in 0..64 {
            let mut off = 0.0;
            for p in 0..6 {
                for q in (p + 1)..6 {
                    off += a[p][q] * a[p][q];
                }
            }
            if off < 1e-28 {
                break;
            }
            for p in 0..6 {
                for q in (p + 1)..6 {
                    if libm::fabs(a[p][q]) < 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + libm::sqrt(1.0 + theta * theta))
                    } else {
                        -1.0 / (-theta + libm::sqrt(1.0 + theta * theta))
                    };
                    let c = 1.0 / libm::sqrt(1.0 + t * t);
                    let s = t * c;
                    for k in 0..6 {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..6 {
                        let apk = a[p][k];
                        let aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut eig = [0.0; 6];
        for (i, e) in eig.iter_mut().enumerate() {
            *e = a[i][i];
        }
        eig
    }

    /// True iff `m` moves some unit vector by less than `tol` (equivalently,
    /// has an eigenvalue within `tol` of 1 in the orthogonal case).
    pub fn has_unit_eigenvalue(m: &[[f64; 6]; 6], tol: f64) -> bool {
        // smallest singular value of M - I
        let mut diff = *m;
        for i in 0..6 {
            diff[i][i] -= 1.0;
        }
        let mut gram = [[0.0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                let mut s = 0.0;
                for (row, _) in diff.iter().enumerate() {
                    s += diff[row][i] * diff[row][j];
                }
                gram[i][j] = s;
            }
        }
        let eig = symmetric_eigenvalues(gram);
        let min = eig.iter().fold(f64::INFINITY, |acc, &e| acc.min(e));
        libm::sqrt(min.max(0.0)) <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::RationalAngle;

    fn ra(n: i64, d: i64) -> RationalAngle {
        RationalAngle::new(n, d)
    }

    fn standard_63() -> LinearSpaceForm {
        LinearSpaceForm::build_standard(7, 9, 2, 3).unwrap()
    }

    #[test]
    fn composition_group_laws() {
        let a = BlockRotationElement::diagonal([ra(1, 7), ra(2, 7), ra(4, 7)]);
        let b = BlockRotationElement::new(1, [ra(0, 1), ra(0, 1), ra(1, 3)]);
        let id = BlockRotationElement::IDENTITY;
        assert_eq!(a.compose(&a.inverse()), id);
        assert_eq!(b.compose(&b.inverse()), id);
        assert_eq!(b.inverse().compose(&b), id);
        // associativity on a mixed triple
        let c = b.compose(&a);
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        assert_eq!(a.pow(7), id);
        assert_eq!(b.pow(9), id);
        assert_eq!(b.pow(4), b.pow(3).compose(&b));
        // shifts add mod 3
        assert_eq!(b.compose(&b).shift, 2);
        assert_eq!(b.pow(3).shift, 0);
    }

    #[test]
    fn fixed_point_rule() {
        // diagonal with a zero angle fixes that block's circle
        assert!(BlockRotationElement::diagonal([ra(1, 4), ra(0, 1), ra(1, 3)])
            .has_fixed_point());
        assert!(!BlockRotationElement::diagonal([ra(1, 4), ra(1, 2), ra(1, 3)])
            .has_fixed_point());
        // a pure block permutation fixes the diagonal point
        let perm = BlockRotationElement::new(1, [ra(0, 1); 3]);
        assert!(perm.has_fixed_point());
        // shifted with angle sum 1/3 has eigenvalues of angle (1/3 + k)/3 only
        let b = BlockRotationElement::new(1, [ra(0, 1), ra(0, 1), ra(1, 3)]);
        assert!(!b.has_fixed_point());
    }

    #[test]
    fn displacement_matches_matrix_action() {
        let quarter = BlockRotationElement::diagonal([ra(1, 4), ra(0, 1), ra(0, 1)]);
        let e1 = SpherePoint::new([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((displacement(&quarter, &e1) - PI / 2.0).abs() < 1e-15);
        let e3 = SpherePoint::new([0.0, 0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(displacement(&quarter, &e3), 0.0);
    }

    #[test]
    fn minimal_displacement_closed_forms() {
        for n in [2i64, 5, 50] {
            let g = BlockRotationElement::diagonal([ra(1, n); 3]);
            assert!((g.min_displacement() - 2.0 * PI / n as f64).abs() < 1e-15);
        }
        // shifted element: eigen-angles are thirds of the angle sum
        let b = BlockRotationElement::new(1, [ra(0, 1), ra(0, 1), ra(1, 3)]);
        assert!((b.min_displacement() - 2.0 * PI / 9.0).abs() < 1e-15);
    }

    #[test]
    fn standard_representation_is_exact_and_free() {
        let form = standard_63();
        form.verify_relations().unwrap();
        let verdict = form.is_free();
        assert!(verdict.free, "witness: {:?}", verdict.witness);
        assert_eq!(form.all_rotations().len(), 63);
        // rotation_of agrees with the incremental table
        for (g, rot) in form.all_rotations() {
            assert_eq!(form.rotation_of(g), rot);
        }
    }

    #[test]
    fn order_21_presentation_represents_but_is_not_free() {
        // c = 0 keeps B of order 3 (pure permutation); relations hold but the
        // permutation fixes the diagonal, so the action is not free.
        let form = LinearSpaceForm::build_standard(7, 3, 2, 0).unwrap();
        let verdict = form.is_free();
        assert!(!verdict.free);
        assert!(verdict.witness.is_some());
        assert!(matches!(
            form.injectivity_geometry(SamplerParams::default()),
            Err(RepError::NotFree { .. })
        ));
    }

    #[test]
    fn wrong_bottom_angle_is_rejected() {
        // inconsistent presentation is rejected before any rotation is built
        assert!(matches!(
            LinearSpaceForm::build_standard(7, 3, 3, 0),
            Err(RepError::BadParameters(_))
        ));
        // c = 1 with n = 9 gives B of order 27, breaking B^9 = 1
        assert!(matches!(
            LinearSpaceForm::build_standard(7, 9, 2, 1),
            Err(RepError::RelationFailed { which: "B^n = 1" })
        ));
        // c = 0 with n = 9 gives B of order 3 only
        assert!(matches!(
            LinearSpaceForm::build_standard(7, 9, 2, 0),
            Err(RepError::WrongGeneratorOrder { .. })
        ));
    }

    #[test]
    fn lens_geometry_is_exact() {
        let form = LinearSpaceForm::build_standard(5, 1, 1, 0).unwrap();
        let geo = form.injectivity_geometry(SamplerParams::default()).unwrap();
        assert!((geo.min_injrad - PI / 5.0).abs() < 1e-12);
        assert!((geo.max_injrad.value - PI / 5.0).abs() < 1e-12);
        assert!((geo.volume - PI * PI * PI / 5.0).abs() < 1e-12);
        assert!((geo.collapse_ratio - PI * PI).abs() < 1e-9);
    }

    #[test]
    fn order_63_geometry() {
        let form = standard_63();
        let geo = form.injectivity_geometry(SamplerParams::default()).unwrap();
        // smallest rotation angle over the group is 2 pi / 21
        assert!((geo.min_injrad - PI / 21.0).abs() < 1e-12);
        assert!(geo.max_injrad.value >= geo.min_injrad);
        assert!((geo.volume - PI * PI * PI / 63.0).abs() < 1e-12);
        // the estimate is an objective value at a concrete point: certified
        let rotations: alloc::vec::Vec<_> = form
            .all_rotations()
            .into_iter()
            .filter(|(g, _)| !g.is_identity())
            .map(|(_, r)| r)
            .collect();
        let at_point = injrad_at(&rotations, &geo.max_injrad.point);
        assert!((at_point - geo.max_injrad.value).abs() < 1e-12);
    }

    #[test]
    fn holonomy_invariance_of_the_pseudo_free_model() {
        use crate::torus::WeightMatrix;
        let form = standard_63();
        let weights = WeightMatrix::new(alloc::vec![[1, 1, -2], [1, -2, 1]]).unwrap();
        let id = alloc::vec![alloc::vec![1, 0], alloc::vec![0, 1]];
        let rho_b = alloc::vec![alloc::vec![0, -1], alloc::vec![1, -1]];
        assert!(verify_pi1_invariance(&form, &weights, &id, &rho_b).unwrap());
        // the action is not plainly invariant: identity holonomy for B fails
        assert!(!verify_pi1_invariance(&form, &weights, &id, &id).unwrap());
        // non-unimodular holonomy is rejected
        let bad = alloc::vec![alloc::vec![2, 0], alloc::vec![0, 1]];
        assert!(verify_pi1_invariance(&form, &weights, &bad, &rho_b).is_err());
    }

    #[test]
    fn eigenvalue_oracle() {
        let id = BlockRotationElement::IDENTITY.to_matrix();
        assert!(oracle::has_unit_eigenvalue(&id, 1e-8));
        let no_fix = BlockRotationElement::diagonal([ra(1, 3); 3]).to_matrix();
        assert!(!oracle::has_unit_eigenvalue(&no_fix, 1e-8));
        let part_fix =
            BlockRotationElement::diagonal([ra(1, 3), ra(0, 1), ra(1, 3)]).to_matrix();
        assert!(oracle::has_unit_eigenvalue(&part_fix, 1e-8));
        // eigenvalues of a diagonal symmetric matrix
        let mut diag = [[0.0; 6]; 6];
        for (i, v) in [3.0, -1.0, 2.0, 0.0, 5.0, 4.0].iter().enumerate() {
            diag[i][i] = *v;
        }
        let mut eig = oracle::symmetric_eigenvalues(diag);
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in eig.iter().zip([-1.0, 0.0, 2.0, 3.0, 4.0, 5.0]) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn estimator_is_reproducible() {
        let form = standard_63();
        let p = SamplerParams { restarts: 4, iters: 800, seed: 11 };
        let g1 = form.injectivity_geometry(p).unwrap();
        let g2 = form.injectivity_geometry(p).unwrap();
        assert_eq!(g1.max_injrad.value.to_bits(), g2.max_injrad.value.to_bits());
        assert_eq!(g1.max_injrad.point.0, g2.max_injrad.point.0);
    }
}
