//! Pin lifting of orthogonal matrices and exact construction of the double
//! cover `G_rho = {(x, g) : Ad(x) = rho(g)}`.
//!
//! Every base element gets one reference lift `r(g)` (a Clifford product of
//! Householder reflection vectors, sign-normalized deterministically). The
//! cover is then the set of pairs `(g, ±1)` with multiplication
//! `(g, s)(h, t) = (gh, s t c(g, h))`, where the sign cocycle
//! `c(g, h) = ±1` satisfies `r(g) r(h) = c(g, h) r(gh)` and is read off a
//! coefficient inner product with a wide margin: lifts are unit coefficient
//! vectors, so the true inner product is exactly ±1. Everything downstream
//! of that one-bit decision is exact integer group theory.
//!
//! Odd ambient dimensions are stabilized to `diag(Q, 1)` before lifting.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::clifford::{adjoint_action, BladeElement, Parity, PinCandidate, DEFAULT_DIMENSION_CAP};
use crate::error::Error;
use crate::exec::{map_indexed, ExecMode};
use crate::matgroup::{FiniteOrthogonalGroup, OrthogonalMatrix};
use crate::Result;

/// Residual allowed between `Ad(lift)` and the target matrix.
pub const LIFT_TOL: f64 = 1e-7;
/// Residual allowed when recomposing a reflection factorization.
pub const COMPOSE_TOL: f64 = 1e-7;
/// Columns closer to correct than this are skipped during factorization.
const REFLECTION_SKIP_TOL: f64 = 1e-8;
/// The cocycle inner product must clear this margin (true value is ±1).
pub const COCYCLE_MARGIN: f64 = 0.9;
/// Threshold for "first nonzero coefficient" during sign normalization.
/// Pin coefficient vectors are unit norm over at most 2^10 entries, so some
/// coefficient always exceeds this.
const SIGN_NORMALIZE_TOL: f64 = 1e-6;

/// A factorization of `±Q` into Householder reflections `R_{u_1} ... R_{u_k}`.
///
/// Under the adjoint convention `Ad(x)v = x v x*` a single unit vector acts
/// by `Ad(u) = -R_u`, so matrices with `det Q = -1` are factored through
/// `-Q` (odd reflection count) and the flag records that convention.
#[derive(Clone, Debug)]
pub struct ReflectionFactorization {
    target: OrthogonalMatrix,
    unit_vectors: Vec<Vec<f64>>,
    negated: bool,
}

impl ReflectionFactorization {
    pub fn target(&self) -> &OrthogonalMatrix {
        &self.target
    }

    pub fn unit_vectors(&self) -> &[Vec<f64>] {
        &self.unit_vectors
    }

    /// Whether the reflections compose to `-target` rather than `target`.
    pub fn negated(&self) -> bool {
        self.negated
    }

    pub fn reflection_count(&self) -> usize {
        self.unit_vectors.len()
    }

    /// Recomposes `R_{u_1} ... R_{u_k}`.
    pub fn compose(&self) -> OrthogonalMatrix {
        let n = self.target.dim();
        let mut m = OrthogonalMatrix::identity(n);
        for u in &self.unit_vectors {
            m = m.matmul(&householder(n, u));
        }
        m
    }
}

fn householder(n: usize, u: &[f64]) -> OrthogonalMatrix {
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            entries[i * n + j] = if i == j { 1.0 } else { 0.0 } - 2.0 * u[i] * u[j];
        }
    }
    OrthogonalMatrix::from_raw(n, entries)
}

/// Factors an even-dimensional orthogonal matrix into Householder
/// reflections: `Q` itself when `det Q = +1`, `-Q` when `det Q = -1`.
/// Column-by-column elimination, skipping already-correct columns.
pub fn reflection_decompose(q: &OrthogonalMatrix) -> Result<ReflectionFactorization> {
    let n = q.dim();
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    let negated = q.det_sign()? == -1;
    let work_target = if negated { q.scaled(-1.0) } else { q.clone() };

    let mut m = work_target.clone();
    let mut unit_vectors = Vec::new();
    for col in 0..n {
        // u ∝ (M e_col - e_col); reflecting along it fixes e_col and keeps
        // the previously fixed columns fixed (they are orthogonal to u).
        let mut u: Vec<f64> = (0..n).map(|row| m.entry(row, col)).collect();
        u[col] -= 1.0;
        let norm: f64 = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= REFLECTION_SKIP_TOL {
            continue;
        }
        for x in u.iter_mut() {
            *x /= norm;
        }
        m = householder(n, &u).matmul(&m);
        unit_vectors.push(u);
    }
    let residual = m.max_abs_diff(&OrthogonalMatrix::identity(n));
    if residual > COMPOSE_TOL {
        return Err(Error::FactorizationFailed(residual));
    }
    // R_{u_k} ... R_{u_1} (±Q) = I, so ±Q = R_{u_1} ... R_{u_k}.
    let fact = ReflectionFactorization {
        target: q.clone(),
        unit_vectors,
        negated,
    };
    debug_assert!(fact.compose().max_abs_diff(&work_target) <= COMPOSE_TOL);
    Ok(fact)
}

/// Computes a Pin lift of an even-dimensional orthogonal matrix: the
/// Clifford product of the factorization's reflection vectors, with the
/// first coefficient above threshold (in mask order) made positive.
/// Verifies `Ad(lift) = Q` within [`LIFT_TOL`].
pub fn pin_lift(q: &OrthogonalMatrix) -> Result<PinCandidate> {
    pin_lift_with_cap(q, DEFAULT_DIMENSION_CAP)
}

pub fn pin_lift_with_cap(q: &OrthogonalMatrix, dim_cap: usize) -> Result<PinCandidate> {
    let n = q.dim();
    let fact = reflection_decompose(q)?;
    let mut x = BladeElement::scalar_with_cap(n, 1.0, dim_cap)?;
    for u in fact.unit_vectors() {
        x = x.product(&BladeElement::vector_with_cap(n, u, dim_cap)?)?;
    }
    let lead = x
        .coeffs()
        .iter()
        .position(|c| c.abs() > SIGN_NORMALIZE_TOL)
        .ok_or_else(|| Error::Domain("pin lift vanished".into()))?;
    if x.coeff(lead) < 0.0 {
        x = x.scale(-1.0);
    }
    let candidate = PinCandidate::new(x)?;
    // Parity is forced by the determinant: even for SO, odd otherwise.
    let want_parity = if fact.negated() {
        Parity::Odd
    } else {
        Parity::Even
    };
    if candidate.parity() != want_parity {
        return Err(Error::LiftInconsistent {
            index: 0,
            residual: f64::INFINITY,
        });
    }
    let residual = adjoint_action(&candidate)?.max_abs_diff(q);
    if residual > LIFT_TOL {
        return Err(Error::LiftInconsistent { index: 0, residual });
    }
    Ok(candidate)
}

/// A cover element: pair index `2 * g + (sign bit)`, sign bit 1 meaning -1.
pub type PairIndex = usize;

pub fn pair(g: usize, negative: bool) -> PairIndex {
    2 * g + usize::from(negative)
}

pub fn pair_base(p: PairIndex) -> usize {
    p / 2
}

pub fn pair_sign(p: PairIndex) -> i8 {
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CoverOptions {
    pub exec: ExecMode,
    /// Cap on the Clifford dimension used for lifting (ambient, +1 if odd).
    pub dim_cap: usize,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            exec: ExecMode::default(),
            dim_cap: DEFAULT_DIMENSION_CAP,
        }
    }
}

/// The four conjugacy-class counts the rank formulas consume.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CoverClassCounts {
    /// Classes of the cover `G_rho`.
    pub c_g_rho: usize,
    /// Classes of the base group `G`.
    pub c_g: usize,
    /// Classes of `K_rho`, the preimage of `SO(V)` in the cover.
    pub c_k_rho: usize,
    /// Classes of `K = ker(det ∘ rho)` in the base.
    pub c_k: usize,
}

/// The double cover of a finite orthogonal group, realized exactly as pairs
/// `(g, ±1)` over a table of reference lifts with a memoized sign cocycle.
///
/// After construction every query is read-only; the cocycle memo is behind a
/// lock so lazy fills remain thread-safe.
#[derive(Debug)]
pub struct DoubleCoverGroup {
    base: FiniteOrthogonalGroup,
    lift_dim: usize,
    stabilized: Vec<OrthogonalMatrix>,
    lifts: Vec<PinCandidate>,
    cocycle: RwLock<HashMap<(usize, usize), i8>>,
    classes: Vec<Vec<PairIndex>>,
    class_of: Vec<usize>,
    kernel_cover_class_count: usize,
    kernel_class_count: usize,
}

pub fn build_double_cover(base: &FiniteOrthogonalGroup) -> Result<DoubleCoverGroup> {
    build_double_cover_with(base, CoverOptions::default())
}

pub fn build_double_cover_with(
    base: &FiniteOrthogonalGroup,
    opts: CoverOptions,
) -> Result<DoubleCoverGroup> {
    let lift_dim = if base.dim() % 2 == 1 {
        base.dim() + 1
    } else {
        base.dim()
    };
    if lift_dim > opts.dim_cap {
        return Err(Error::DimensionCap {
            dim: lift_dim,
            cap: opts.dim_cap,
        });
    }
    let stabilized: Vec<OrthogonalMatrix> = if base.dim() % 2 == 1 {
        base.elements().iter().map(|m| m.stabilize()).collect()
    } else {
        base.elements().to_vec()
    };

    // Reference lifts are independent per element: the one data-parallel
    // stage of the construction. Order-preserving collect keeps the result
    // identical in both modes.
    let lift_results = map_indexed(opts.exec, base.order(), |i| {
        pin_lift_with_cap(&stabilized[i], opts.dim_cap).map_err(|e| match e {
            Error::LiftInconsistent { residual, .. } => {
                Error::LiftInconsistent { index: i, residual }
            }
            other => other,
        })
    });
    let mut lifts = Vec::with_capacity(base.order());
    for r in lift_results {
        lifts.push(r?);
    }

    let mut cover = DoubleCoverGroup {
        base: base.clone(),
        lift_dim,
        stabilized,
        lifts,
        cocycle: RwLock::new(HashMap::new()),
        classes: Vec::new(),
        class_of: Vec::new(),
        kernel_cover_class_count: 0,
        kernel_class_count: 0,
    };

    let all_pairs: Vec<PairIndex> = (0..2 * base.order()).collect();
    let (classes, class_of) = cover.pair_classes(&all_pairs, base.generators())?;
    cover.classes = classes;
    cover.class_of = class_of;

    if base.is_orientation_preserving() {
        cover.kernel_cover_class_count = cover.classes.len();
        cover.kernel_class_count = base.class_count();
    } else {
        let det = base.det_character();
        let kernel_pairs: Vec<PairIndex> = (0..2 * base.order())
            .filter(|&p| det[pair_base(p)] == 1)
            .collect();
        let schreier = base.schreier_generators(det)?;
        let (kernel_classes, _) = cover.pair_classes(&kernel_pairs, &schreier)?;
        cover.kernel_cover_class_count = kernel_classes.len();
        cover.kernel_class_count = base.kernel_subgroup(det)?.class_count();
    }

    Ok(cover)
}

impl DoubleCoverGroup {
    pub fn base(&self) -> &FiniteOrthogonalGroup {
        &self.base
    }

    pub fn order(&self) -> usize {
        2 * self.base.order()
    }

    pub fn lift_dim(&self) -> usize {
        self.lift_dim
    }

    /// The matrix the lift of `g` was computed against (stabilized if the
    /// original ambient dimension was odd).
    pub fn stabilized_matrix(&self, g: usize) -> &OrthogonalMatrix {
        &self.stabilized[g]
    }

    pub fn reference_lift(&self, g: usize) -> &PinCandidate {
        &self.lifts[g]
    }

    /// The central element `(identity, -1)`.
    pub fn central_minus_one(&self) -> PairIndex {
        pair(self.base.identity_index(), true)
    }

    /// The sign `c(g, h)` with `r(g) r(h) = c(g, h) r(gh)`, memoized.
    pub fn cocycle(&self, g: usize, h: usize) -> Result<i8> {
        if let Some(&c) = self.cocycle.read().unwrap().get(&(g, h)) {
            return Ok(c);
        }
        let gh = self.base.mul_index(g, h)?;
        let product = self.lifts[g].element().product(self.lifts[h].element())?;
        let inner = product.coefficient_dot(self.lifts[gh].element());
        if inner.abs() <= COCYCLE_MARGIN {
            return Err(Error::CocycleAmbiguous { g, h, inner });
        }
        let c = if inner > 0.0 { 1 } else { -1 };
        self.cocycle.write().unwrap().insert((g, h), c);
        Ok(c)
    }

    /// `(g, s)(h, t) = (gh, s t c(g, h))`.
    pub fn pair_mul(&self, p: PairIndex, q: PairIndex) -> Result<PairIndex> {
        let (g, h) = (pair_base(p), pair_base(q));
        let sign = pair_sign(p) * pair_sign(q) * self.cocycle(g, h)?;
        Ok(pair(self.base.mul_index(g, h)?, sign == -1))
    }

    pub fn pair_inv(&self, p: PairIndex) -> Result<PairIndex> {
        let g = pair_base(p);
        let ginv = self.base.inv_index(g);
        let sign = pair_sign(p) * self.cocycle(g, ginv)?;
        Ok(pair(ginv, sign == -1))
    }

    /// Conjugation of a pair by the lift `(g, +1)`; the central sign of the
    /// conjugator drops out.
    pub fn pair_conjugate(&self, g: usize, p: PairIndex) -> Result<PairIndex> {
        let h = pair_base(p);
        let ginv = self.base.inv_index(g);
        let gh = self.base.mul_index(g, h)?;
        let sign =
            pair_sign(p) * self.cocycle(g, h)? * self.cocycle(g, ginv)? * self.cocycle(gh, ginv)?;
        Ok(pair(self.base.mul_index(gh, ginv)?, sign == -1))
    }

    /// Orbit BFS of conjugation over a set of pairs. The conjugators are the
    /// lifted generators; together with the central `(e, -1)` they generate
    /// the (sub)cover, and the central element conjugates trivially, so it
    /// contributes nothing to the orbits.
    fn pair_classes(
        &self,
        members: &[PairIndex],
        conjugating_gens: &[usize],
    ) -> Result<(Vec<Vec<PairIndex>>, Vec<usize>)> {
        let total = 2 * self.base.order();
        let mut class_of = vec![usize::MAX; total];
        let mut classes = Vec::new();
        for &start in members {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            class_of[start] = cid;
            let mut queue = vec![start];
            let mut class_members = vec![start];
            while let Some(p) = queue.pop() {
                for &g in conjugating_gens {
                    let q = self.pair_conjugate(g, p)?;
                    if class_of[q] == usize::MAX {
                        class_of[q] = cid;
                        queue.push(q);
                        class_members.push(q);
                    }
                }
            }
            class_members.sort_unstable();
            classes.push(class_members);
        }
        Ok((classes, class_of))
    }

    pub fn classes(&self) -> &[Vec<PairIndex>] {
        &self.classes
    }

    pub fn class_of_pair(&self, p: PairIndex) -> usize {
        self.class_of[p]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// The four counts `(C_Grho, C_G, C_Krho, C_K)`.
    pub fn class_counts(&self) -> CoverClassCounts {
        CoverClassCounts {
            c_g_rho: self.classes.len(),
            c_g: self.base.class_count(),
            c_k_rho: self.kernel_cover_class_count,
            c_k: self.kernel_class_count,
        }
    }

    /// Checks the class-decomposition criterion: a base class splits into
    /// two cover classes exactly when a lift `t` is not conjugate to `-t`,
    /// and the number of split classes must equal `C_Grho - C_G`.
    pub fn decomposition_check(&self) -> Result<()> {
        let counts = self.class_counts();
        let mut splits = 0usize;
        for class in self.base.conjugacy_classes() {
            let rep = class[0];
            let split = self.class_of[pair(rep, false)] != self.class_of[pair(rep, true)];
            for &member in class {
                let member_split =
                    self.class_of[pair(member, false)] != self.class_of[pair(member, true)];
                if member_split != split {
                    return Err(Error::InconsistentCounts(format!(
                        "class of element {rep} disagrees about splitting at element {member}"
                    )));
                }
            }
            if split {
                splits += 1;
            }
        }
        let diff = counts.c_g_rho - counts.c_g;
        if splits != diff {
            return Err(Error::InconsistentCounts(format!(
                "{splits} decomposing base classes but C_Grho - C_G = {diff}"
            )));
        }
        Ok(())
    }

    /// Exact cocycle consistency `c(g,h) c(gh,k) = c(h,k) c(g,hk)` on the
    /// given triples (associativity of the extension).
    pub fn cocycle_associativity_check(&self, triples: &[(usize, usize, usize)]) -> Result<()> {
        for &(g, h, k) in triples {
            let gh = self.base.mul_index(g, h)?;
            let hk = self.base.mul_index(h, k)?;
            let left = self.cocycle(g, h)? * self.cocycle(gh, k)?;
            let right = self.cocycle(h, k)? * self.cocycle(g, hk)?;
            if left != right {
                return Err(Error::InconsistentCounts(format!(
                    "cocycle associativity fails at ({g}, {h}, {k})"
                )));
            }
        }
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn tamper_merge_classes_for_test(&mut self, a: usize, b: usize) {
        // fault injection: pretend pairs a and b are conjugate
        let target = self.class_of[a];
        let from = self.class_of[b];
        for c in self.class_of.iter_mut() {
            if *c == from {
                *c = target;
            }
        }
    }
}
