//! Symbolic K-theory answers for linear actions of the compact group `O(n)`,
//! including the conjugation action on symmetric matrices that computes the
//! K-theory of the reduced group C*-algebra of `GL(n, R)`.
//!
//! Infinite groups are never enumerated. The module evaluates a closed
//! decision tree: orientation test on the image of `g = diag(-1, 1, ..., 1)`,
//! parity of `n`, and — for even `n` — whether the restriction to `SO(n)` is
//! spinor, decided by `dim V^-`, the (-1)-eigenspace of the image of
//! `h = diag(-1, -1, 1, ..., 1)`, being divisible by four.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matgroup::OrthogonalMatrix;
use crate::Result;

/// A symbolic rank: zero, free of finite rank, or countably infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "rank")]
pub enum SymbolicRank {
    Zero,
    FiniteFree(u64),
    CountablyInfinite,
}

impl fmt::Display for SymbolicRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicRank::Zero => write!(f, "0"),
            SymbolicRank::FiniteFree(1) => write!(f, "Z"),
            SymbolicRank::FiniteFree(r) => write!(f, "Z^{r}"),
            SymbolicRank::CountablyInfinite => write!(f, "⊕Z"),
        }
    }
}

/// Which `O(n)` action to evaluate.
#[derive(Clone, Debug)]
pub enum OnActionKind {
    /// `O(n)` on `R^n` by matrix multiplication.
    Standard,
    /// Conjugation on the symmetric matrices `V_n`, `dim = n(n+1)/2`.
    SymmetricMatrices,
    /// Explicit images of `g` and `h` plus the dimension of `V`.
    Custom {
        g_image: OrthogonalMatrix,
        h_image: OrthogonalMatrix,
        dim_v: usize,
    },
}

#[derive(Clone, Debug)]
pub struct OnActionSpec {
    n: usize,
    kind: OnActionKind,
}

/// The conjugation action of a diagonal sign matrix on symmetric matrices,
/// in the basis `{E_ij : i <= j}` ordered lexicographically: `E_ij` maps to
/// `s_i s_j E_ij`, so the matrix is an exact diagonal sign matrix.
fn symmetric_conjugation_signs(n: usize, negatives: usize) -> Vec<f64> {
    let sign = |i: usize| if i < negatives { -1.0 } else { 1.0 };
    let mut diag = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            diag.push(sign(i) * sign(j));
        }
    }
    diag
}

fn diagonal_matrix(diag: &[f64]) -> OrthogonalMatrix {
    let n = diag.len();
    let mut entries = vec![0.0; n * n];
    for (i, &v) in diag.iter().enumerate() {
        entries[i * n + i] = v;
    }
    OrthogonalMatrix::new(n, entries).expect("diagonal sign matrices are orthogonal")
}

impl OnActionSpec {
    pub fn standard(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("O(n) families need n >= 2".into()));
        }
        Ok(OnActionSpec {
            n,
            kind: OnActionKind::Standard,
        })
    }

    pub fn symmetric_matrices(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("O(n) families need n >= 2".into()));
        }
        Ok(OnActionSpec {
            n,
            kind: OnActionKind::SymmetricMatrices,
        })
    }

    pub fn custom(
        n: usize,
        g_image: OrthogonalMatrix,
        h_image: OrthogonalMatrix,
        dim_v: usize,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("O(n) families need n >= 2".into()));
        }
        if g_image.dim() != dim_v || h_image.dim() != dim_v {
            return Err(Error::DimensionMismatch(g_image.dim(), dim_v));
        }
        Ok(OnActionSpec {
            n,
            kind: OnActionKind::Custom {
                g_image,
                h_image,
                dim_v,
            },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &OnActionKind {
        &self.kind
    }

    pub fn dim_v(&self) -> usize {
        match &self.kind {
            OnActionKind::Standard => self.n,
            OnActionKind::SymmetricMatrices => self.n * (self.n + 1) / 2,
            OnActionKind::Custom { dim_v, .. } => *dim_v,
        }
    }

    /// The image of `g = diag(-1, 1, ..., 1)`.
    pub fn rho_g(&self) -> OrthogonalMatrix {
        match &self.kind {
            OnActionKind::Standard => {
                let mut diag = vec![1.0; self.n];
                diag[0] = -1.0;
                diagonal_matrix(&diag)
            }
            OnActionKind::SymmetricMatrices => {
                diagonal_matrix(&symmetric_conjugation_signs(self.n, 1))
            }
            OnActionKind::Custom { g_image, .. } => g_image.clone(),
        }
    }

    /// The image of `h = diag(-1, -1, 1, ..., 1)`.
    pub fn rho_h(&self) -> OrthogonalMatrix {
        match &self.kind {
            OnActionKind::Standard => {
                let mut diag = vec![1.0; self.n];
                diag[0] = -1.0;
                diag[1] = -1.0;
                diagonal_matrix(&diag)
            }
            OnActionKind::SymmetricMatrices => {
                diagonal_matrix(&symmetric_conjugation_signs(self.n, 2))
            }
            OnActionKind::Custom { h_image, .. } => h_image.clone(),
        }
    }
}

/// True when the action preserves orientation, i.e. `det(rho(g)) = +1` for
/// `g = diag(-1, 1, ..., 1)`. Exact sign inspection for the built-in kinds.
pub fn orientation_test(spec: &OnActionSpec) -> bool {
    match spec.kind() {
        OnActionKind::Standard => false,
        OnActionKind::SymmetricMatrices => {
            let negatives = symmetric_conjugation_signs(spec.n, 1)
                .iter()
                .filter(|&&s| s < 0.0)
                .count();
            negatives % 2 == 0
        }
        OnActionKind::Custom { g_image, .. } => g_image.det_sign().map(|s| s == 1).unwrap_or(false),
    }
}

/// Dimension of the (-1)-eigenspace of `rho(h)`.
pub fn minus_eigenspace_dim(spec: &OnActionSpec) -> Result<usize> {
    match spec.kind() {
        OnActionKind::Standard => Ok(2),
        OnActionKind::SymmetricMatrices => Ok(symmetric_conjugation_signs(spec.n, 2)
            .iter()
            .filter(|&&s| s < 0.0)
            .count()),
        OnActionKind::Custom { h_image, dim_v, .. } => {
            let square = h_image.matmul(h_image);
            let residual = square.max_abs_diff(&OrthogonalMatrix::identity(*dim_v));
            if residual > 1e-8 {
                return Err(Error::Domain(format!(
                    "rho(h) is not an involution: residual {residual:e}"
                )));
            }
            // Involution: eigenvalues ±1, so dim V^- = (dim - trace) / 2.
            let trace: f64 = (0..*dim_v).map(|i| h_image.entry(i, i)).sum();
            let value = (*dim_v as f64 - trace) / 2.0;
            let rounded = value.round();
            if (value - rounded).abs() > 1e-6 {
                return Err(Error::Domain(format!(
                    "non-integral eigenspace dimension {value}"
                )));
            }
            Ok(rounded as usize)
        }
    }
}

/// Whether the restriction to `SO(n)` lifts to Spin: `dim V^-` divisible
/// by four.
pub fn spinor_test(spec: &OnActionSpec) -> Result<bool> {
    Ok(minus_eigenspace_dim(spec)? % 4 == 0)
}

/// The symbolic pair `(K^0, K^1)` from the case analysis:
/// - orientation preserving: countably infinite in the slot with
///   `* + dim V` even, zero in the other;
/// - `n` odd, non-oriented: countably infinite in the odd slot, zero in the
///   even slot;
/// - `n` even, non-oriented: the even slot is always countably infinite;
///   the odd slot is zero in the non-spinor case, and in the spinor case
///   `Z` for `n = 2` or countably infinite for `n > 2`.
pub fn symbolic_ranks(spec: &OnActionSpec) -> Result<(SymbolicRank, SymbolicRank)> {
    use SymbolicRank::*;
    let (even_slot, odd_slot) = if orientation_test(spec) {
        (CountablyInfinite, Zero)
    } else if spec.n() % 2 == 1 {
        (Zero, CountablyInfinite)
    } else {
        let odd = if spinor_test(spec)? {
            if spec.n() == 2 {
                FiniteFree(1)
            } else {
                CountablyInfinite
            }
        } else {
            Zero
        };
        (CountablyInfinite, odd)
    };
    Ok(if spec.dim_v() % 2 == 0 {
        (even_slot, odd_slot)
    } else {
        (odd_slot, even_slot)
    })
}

/// One row of the `GL(n, R)` table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlRow {
    pub n: u32,
    pub k0: SymbolicRank,
    pub k1: SymbolicRank,
}

/// `K_*(C*_r(GL(n, R)))` for `n = 2..=n_max`, through the conjugation action
/// of `O(n)` on symmetric matrices.
pub fn gl_table(n_max: u32) -> Result<Vec<GlRow>> {
    if n_max < 2 {
        return Err(Error::Domain("gl table needs n_max >= 2".into()));
    }
    (2..=n_max)
        .map(|n| {
            let spec = OnActionSpec::symmetric_matrices(n as usize)?;
            let (k0, k1) = symbolic_ranks(&spec)?;
            Ok(GlRow { n, k0, k1 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use SymbolicRank::*;

    #[test]
    fn orientation_of_symmetric_action_follows_parity() {
        for n in 2..=8 {
            let spec = OnActionSpec::symmetric_matrices(n).unwrap();
            assert_eq!(orientation_test(&spec), n % 2 == 1, "n = {n}");
        }
    }

    #[test]
    fn standard_action_never_preserves_orientation() {
        for n in 2..=8 {
            assert!(!orientation_test(&OnActionSpec::standard(n).unwrap()));
        }
    }

    #[test]
    fn symmetric_minus_eigenspace_is_2n_minus_4() {
        for n in 2..=8 {
            let spec = OnActionSpec::symmetric_matrices(n).unwrap();
            assert_eq!(minus_eigenspace_dim(&spec).unwrap(), 2 * (n - 2));
            assert_eq!(spinor_test(&spec).unwrap(), n % 2 == 0);
        }
    }

    #[test]
    fn standard_action_is_not_spinor() {
        for n in 2..=8 {
            let spec = OnActionSpec::standard(n).unwrap();
            assert_eq!(minus_eigenspace_dim(&spec).unwrap(), 2);
            assert!(!spinor_test(&spec).unwrap());
        }
    }

    #[test]
    fn trivial_custom_action_is_spinor() {
        let id = OrthogonalMatrix::identity(3);
        let spec = OnActionSpec::custom(4, id.clone(), id, 3).unwrap();
        assert_eq!(minus_eigenspace_dim(&spec).unwrap(), 0);
        assert!(spinor_test(&spec).unwrap());
    }

    #[test]
    fn custom_non_involution_rejected() {
        let rot = crate::groups::rotation_matrix(2, 0, 1, 1.0);
        let spec = OnActionSpec::custom(2, rot.clone(), rot, 2).unwrap();
        assert!(spinor_test(&spec).is_err());
    }

    #[test]
    fn standard_symbolic_ranks() {
        for n in 2..=8 {
            let spec = OnActionSpec::standard(n).unwrap();
            assert_eq!(
                symbolic_ranks(&spec).unwrap(),
                (CountablyInfinite, Zero),
                "n = {n}"
            );
        }
    }

    #[test]
    fn gl2_has_finite_k0() {
        let spec = OnActionSpec::symmetric_matrices(2).unwrap();
        assert_eq!(
            symbolic_ranks(&spec).unwrap(),
            (FiniteFree(1), CountablyInfinite)
        );
    }

    #[test]
    fn gl3_concentrates_in_k0() {
        let spec = OnActionSpec::symmetric_matrices(3).unwrap();
        assert_eq!(symbolic_ranks(&spec).unwrap(), (CountablyInfinite, Zero));
    }

    #[test]
    fn gl_table_matches_closed_form() {
        let table = gl_table(8).unwrap();
        let want = [
            (2, FiniteFree(1), CountablyInfinite),
            (3, CountablyInfinite, Zero),
            (4, CountablyInfinite, CountablyInfinite),
            (5, Zero, CountablyInfinite),
            (6, CountablyInfinite, CountablyInfinite),
            (7, CountablyInfinite, Zero),
            (8, CountablyInfinite, CountablyInfinite),
        ];
        assert_eq!(table.len(), want.len());
        for (row, (n, k0, k1)) in table.iter().zip(want) {
            assert_eq!((row.n, row.k0, row.k1), (n, k0, k1));
        }
    }

    #[test]
    fn oriented_specs_have_exactly_one_zero() {
        for n in (3..=9).step_by(2) {
            let spec = OnActionSpec::symmetric_matrices(n).unwrap();
            assert!(orientation_test(&spec));
            let (k0, k1) = symbolic_ranks(&spec).unwrap();
            assert!((k0 == Zero) != (k1 == Zero));
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(Zero.to_string(), "0");
        assert_eq!(FiniteFree(1).to_string(), "Z");
        assert_eq!(FiniteFree(4).to_string(), "Z^4");
        assert_eq!(CountablyInfinite.to_string(), "⊕Z");
    }
}
