//! Integer-lattice analysis of linear torus actions on the 5-sphere.
//!
//! A rank-k torus acts diagonally on C^3 through a k x 3 integer weight
//! matrix: coordinate `z_j` is rotated by `exp(2 pi i <w_j, theta>)` where
//! `w_j` is column j. Isotropy groups, orbit strata, freeness and
//! pseudo-freeness all reduce to Smith normal forms of column submatrices.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::angle::RationalAngle;
use crate::snf::{mat_vec, smith_normal_form, Mat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorusError {
    BadRank(usize),
    /// The weight matrix has rank < k: a positive-dimensional subtorus acts
    /// trivially. The witness is an integer direction in the kernel.
    PositiveDimensionalKernel { witness: Vec<i64> },
    BadSupport,
    /// The given residues do not define a faithful Z_N action.
    IllDefinedCyclicAction(String),
    /// rank-sum identity requires k = 2 and no fixed points
    PreconditionFailed(String),
}

impl fmt::Display for TorusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusError::BadRank(k) => write!(f, "torus rank {k} outside 1..=3"),
            TorusError::PositiveDimensionalKernel { witness } => {
                write!(f, "weight matrix is rank-deficient; kernel direction {witness:?}")
            }
            TorusError::BadSupport => write!(f, "support must be a nonempty subset of {{1,2,3}}"),
            TorusError::IllDefinedCyclicAction(msg) => {
                write!(f, "ill-defined cyclic action: {msg}")
            }
            TorusError::PreconditionFailed(msg) => write!(f, "precondition failed: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TorusError {}

/// Weights of a linear T^k action on S^5. Row t = circle factor t, column
/// j = weight vector of coordinate z_j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightMatrix {
    rows: Vec<[i64; 3]>,
}

/// Structure of an isotropy subgroup: a subtorus rank plus the invariant
/// factors of the finite part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyDescriptor {
    pub torus_rank: usize,
    /// Nontrivial invariant factors (each > 1), in divisibility order.
    pub finite_part: Vec<u64>,
}

impl IsotropyDescriptor {
    pub fn is_trivial(&self) -> bool {
        self.torus_rank == 0 && self.finite_part.is_empty()
    }

    pub fn finite_order(&self) -> u64 {
        self.finite_part.iter().product()
    }
}

/// Orbit stratum indexed by a coordinate support (the coordinates allowed to
/// be nonzero), valid because the actions are linear and diagonal.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitStratum {
    /// 1-based coordinate indices.
    pub support: Vec<usize>,
    pub isotropy: IsotropyDescriptor,
    pub orbit_dimension: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionClassification {
    pub principal_isotropy: IsotropyDescriptor,
    pub strata: Vec<OrbitStratum>,
    pub fixed_point_free: bool,
    pub free: bool,
    pub pseudo_free: bool,
    pub singular_orbits: usize,
    /// Kernel of the action is trivial (column lattice is all of Z^k).
    pub effective: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankSumTerm {
    /// Primitive direction of the corank-1 isotropy subtorus.
    pub subtorus: Vec<i64>,
    /// 1-based coordinates annihilated by the subtorus.
    pub columns: Vec<usize>,
    /// The fixed set is a homology r-sphere, r = 2 * #columns - 1.
    pub r: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankSumCheck {
    /// n + 1 for S^5.
    pub lhs: usize,
    pub terms: Vec<RankSumTerm>,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CyclicMembership {
    pub member: bool,
    pub along_orbits: bool,
    pub witness: Option<Vec<RationalAngle>>,
}

impl WeightMatrix {
    pub fn new(rows: Vec<[i64; 3]>) -> Result<WeightMatrix, TorusError> {
        let k = rows.len();
        if !(1..=3).contains(&k) {
            return Err(TorusError::BadRank(k));
        }
        Ok(WeightMatrix { rows })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[[i64; 3]] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|row| row[j]).collect()
    }

    fn as_mat(&self) -> Mat {
        self.rows.iter().map(|r| r.to_vec()).collect()
    }

    /// Transpose restricted to a set of 0-based columns: rows are the weight
    /// vectors of the supported coordinates.
    fn restricted_transpose(&self, support_cols: &[usize]) -> Mat {
        support_cols.iter().map(|&j| self.column(j)).collect()
    }

    /// The matrix has full rank k (the kernel of the action is finite).
    pub fn matrix_rank(&self) -> usize {
        smith_normal_form(&self.as_mat()).rank
    }

    /// Strictly effective: the kernel of the action is trivial, i.e. the
    /// columns span all of Z^k.
    pub fn is_effective(&self) -> bool {
        let snf = smith_normal_form(&self.as_mat());
        snf.rank == self.rank() && snf.diag.iter().all(|&d| d == 0 || d == 1)
    }

    fn require_full_rank(&self) -> Result<(), TorusError> {
        let snf = smith_normal_form(&self.restricted_transpose(&[0, 1, 2]));
        if snf.rank == self.rank() {
            return Ok(());
        }
        // a zero column of S = U W^T V gives an integer kernel direction V e_i
        let k = self.rank();
        let dead = (0..k)
            .find(|&i| i >= snf.diag.len() || snf.diag[i] == 0)
            .expect("rank-deficient matrix has a dead column");
        let witness: Vec<i64> = (0..k).map(|t| snf.v[t][dead]).collect();
        Err(TorusError::PositiveDimensionalKernel { witness })
    }

    /// Isotropy of points supported on the given 1-based coordinates:
    /// `{theta : <w_j, theta> in Z for all supported j}` via the Smith form
    /// of the restricted transpose.
    pub fn isotropy_at(&self, support: &[usize]) -> Result<IsotropyDescriptor, TorusError> {
        if support.is_empty() || support.iter().any(|&j| j < 1 || j > 3) {
            return Err(TorusError::BadSupport);
        }
        let cols: Vec<usize> = support.iter().map(|&j| j - 1).collect();
        let snf = smith_normal_form(&self.restricted_transpose(&cols));
        let finite_part = snf
            .diag
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| d as u64)
            .collect();
        Ok(IsotropyDescriptor { torus_rank: self.rank() - snf.rank, finite_part })
    }

    /// Full classification: strata over all seven supports, principal
    /// isotropy, and the freeness / pseudo-freeness / fixed-point flags.
    pub fn classify(&self) -> Result<ActionClassification, TorusError> {
        self.require_full_rank()?;
        let k = self.rank();
        let supports: [&[usize]; 7] = [
            &[1],
            &[2],
            &[3],
            &[1, 2],
            &[1, 3],
            &[2, 3],
            &[1, 2, 3],
        ];
        let principal = self.isotropy_at(&[1, 2, 3])?;
        let mut strata = Vec::with_capacity(7);
        for sup in supports {
            let iso = self.isotropy_at(sup)?;
            strata.push(OrbitStratum {
                support: sup.to_vec(),
                orbit_dimension: k - iso.torus_rank,
                isotropy: iso,
            });
        }
        let free = strata.iter().all(|s| s.isotropy.is_trivial());
        let fixed_point_free = strata.iter().all(|s| s.isotropy.torus_rank < k);
        // Non-principal isotropy confined to single-coordinate supports,
        // each of which must be a single isolated orbit (no subtorus may fix
        // a coordinate circle pointwise).
        let pseudo_free = fixed_point_free
            && strata
                .iter()
                .filter(|s| s.support.len() >= 2)
                .all(|s| s.isotropy == principal);
        let singular_orbits = strata
            .iter()
            .filter(|s| s.support.len() == 1 && s.isotropy != principal)
            .count();
        Ok(ActionClassification {
            principal_isotropy: principal,
            strata,
            fixed_point_free,
            free,
            pseudo_free,
            singular_orbits,
            effective: self.is_effective(),
        })
    }

    /// The fixed-sphere rank-sum identity for fixed-point-free T^2 actions
    /// on a homology 5-sphere: with H running over the corank-1 subtori with
    /// nonempty fixed set, `sum (r(H) + 1) = 6`.
    pub fn rank_sum_check(&self) -> Result<RankSumCheck, TorusError> {
        if self.rank() != 2 {
            return Err(TorusError::PreconditionFailed(String::from(
                "rank-sum identity requires k = 2",
            )));
        }
        let class = self.classify()?;
        if !class.fixed_point_free {
            return Err(TorusError::PreconditionFailed(String::from(
                "action has fixed points",
            )));
        }
        // For a nonzero column w = (a, b), the circle annihilating it has
        // primitive direction (-b, a)/gcd; columns on the same rational line
        // share the subtorus.
        let mut terms: Vec<RankSumTerm> = Vec::new();
        for j in 0..3 {
            let col = self.column(j);
            let (a, b) = (col[0], col[1]);
            debug_assert!(a != 0 || b != 0, "zero column implies a fixed point");
            let g = a.gcd(&b);
            let mut dir = [-b / g, a / g];
            if dir[0] < 0 || (dir[0] == 0 && dir[1] < 0) {
                dir = [-dir[0], -dir[1]];
            }
            match terms.iter_mut().find(|t| t.subtorus == dir) {
                Some(t) => t.columns.push(j + 1),
                None => terms.push(RankSumTerm {
                    subtorus: dir.to_vec(),
                    columns: alloc::vec![j + 1],
                    r: 0,
                }),
            }
        }
        for t in &mut terms {
            t.r = 2 * t.columns.len() - 1;
        }
        let total: usize = terms.iter().map(|t| t.r + 1).sum();
        Ok(RankSumCheck { lhs: 6, terms, holds: total == 6 })
    }

    /// Does the Z_N action rotating `z_j` by `2 pi a_j / N` embed in the
    /// torus action, i.e. is there `theta` with `<w_j, theta> = a_j / N mod 1`
    /// for all j? Solved on the augmented lattice via Smith normal form; a
    /// witness `theta` is returned when the answer is yes.
    pub fn cyclic_in_torus(
        &self,
        modulus: u64,
        angles: [u64; 3],
    ) -> Result<CyclicMembership, TorusError> {
        if modulus == 0 {
            return Err(TorusError::IllDefinedCyclicAction(String::from("modulus zero")));
        }
        let n = modulus as i64;
        let a: Vec<i64> = angles.iter().map(|&x| (x % modulus) as i64).collect();
        let g = a
            .iter()
            .fold(n, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(TorusError::IllDefinedCyclicAction(alloc::format!(
                "gcd of residues and modulus is {g}, generator order is not {modulus}"
            )));
        }
        let k = self.rank();
        let wt = self.restricted_transpose(&[0, 1, 2]); // 3 x k
        let snf = smith_normal_form(&wt);
        let b = mat_vec(&snf.u, &a);
        // Zero rows of S constrain solvability; torsion rows are always
        // solvable over the real torus.
        for (i, bi) in b.iter().enumerate().take(3) {
            let d = if i < snf.diag.len() { snf.diag[i] } else { 0 };
            if d == 0 && bi.rem_euclid(n) != 0 {
                return Ok(CyclicMembership { member: false, along_orbits: false, witness: None });
            }
        }
        // eta_i = b_i / (N d_i) on the pivot rows, then theta = V eta.
        let mut theta = Vec::with_capacity(k);
        for t in 0..k {
            let mut acc = RationalAngle::ZERO;
            for i in 0..snf.rank.min(k) {
                acc = acc + RationalAngle::new(snf.v[t][i] * b[i], n * snf.diag[i]);
            }
            theta.push(acc);
        }
        debug_assert!((0..3).all(|j| {
            let mut acc = RationalAngle::ZERO;
            for t in 0..k {
                acc = acc + theta[t].times(self.rows[t][j]);
            }
            acc == RationalAngle::new(a[j], n)
        }));
        Ok(CyclicMembership { member: true, along_orbits: true, witness: Some(theta) })
    }
}
