//! The built-in group zoo: constructors for the groups the CLI exposes and
//! the verification corpus runs on.

use crate::error::Error;
use crate::matgroup::{FiniteOrthogonalGroup, GroupOptions, OrthogonalMatrix};
use crate::Result;

/// Permutation matrix sending `e_i` to `e_{images[i]}` (0-based).
pub fn permutation_matrix(n: usize, images: &[usize]) -> Result<OrthogonalMatrix> {
    if images.len() != n {
        return Err(Error::DimensionMismatch(images.len(), n));
    }
    let mut entries = vec![0.0; n * n];
    let mut seen = vec![false; n];
    for (from, &to) in images.iter().enumerate() {
        if to >= n || seen[to] {
            return Err(Error::Domain("not a permutation".into()));
        }
        seen[to] = true;
        entries[to * n + from] = 1.0;
    }
    OrthogonalMatrix::new(n, entries)
}

/// Rotation by `theta` in the `(i, j)` coordinate plane of `R^dim`.
pub fn rotation_matrix(dim: usize, i: usize, j: usize, theta: f64) -> OrthogonalMatrix {
    let mut entries = vec![0.0; dim * dim];
    for d in 0..dim {
        entries[d * dim + d] = 1.0;
    }
    let (sin, cos) = theta.sin_cos();
    entries[i * dim + i] = cos;
    entries[i * dim + j] = -sin;
    entries[j * dim + i] = sin;
    entries[j * dim + j] = cos;
    OrthogonalMatrix::new(dim, entries).expect("rotation matrices are orthogonal")
}

fn sign_matrix(dim: usize, signs: &[f64]) -> OrthogonalMatrix {
    let mut entries = vec![0.0; dim * dim];
    for d in 0..dim {
        entries[d * dim + d] = signs.get(d).copied().unwrap_or(1.0);
    }
    OrthogonalMatrix::new(dim, entries).expect("sign matrices are orthogonal")
}

fn generate(dim: usize, gens: &[OrthogonalMatrix]) -> Result<FiniteOrthogonalGroup> {
    FiniteOrthogonalGroup::generate(dim, gens, GroupOptions::default())
}

/// The trivial group acting on `R^ambient`.
pub fn trivial(ambient: usize) -> Result<FiniteOrthogonalGroup> {
    if ambient == 0 {
        return Err(Error::Domain("ambient dimension must be at least 1".into()));
    }
    generate(ambient, &[])
}

/// `Z_m` generated by a rotation of `R^2` by `2 pi / m`, padded with the
/// identity up to the ambient dimension.
pub fn cyclic_rotation(m: u64, ambient: usize) -> Result<FiniteOrthogonalGroup> {
    if m == 0 {
        return Err(Error::Domain("order must be positive".into()));
    }
    if ambient < 2 {
        return Err(Error::Domain("rotation action needs ambient >= 2".into()));
    }
    let theta = 2.0 * std::f64::consts::PI / m as f64;
    let gen = rotation_matrix(2, 0, 1, theta).direct_sum_identity(ambient - 2);
    generate(ambient, &[gen])
}

/// A faithful `Z_m` whose determinant character is nontrivial (m even).
/// For m = 2 the generator is `diag(-1, 1, ..., 1)` on `R^ambient`; for
/// m >= 4 it is `diag(-1) ⊕ R(2 pi / m)` padded up to the ambient dimension.
pub fn cyclic_reflection(m: u64, ambient: usize) -> Result<FiniteOrthogonalGroup> {
    if m % 2 != 0 || m == 0 {
        return Err(Error::Domain(
            "reflection-containing cyclic actions need even order".into(),
        ));
    }
    if m == 2 {
        if ambient < 1 {
            return Err(Error::Domain("ambient dimension must be at least 1".into()));
        }
        let gen = sign_matrix(ambient, &[-1.0]);
        return generate(ambient, &[gen]);
    }
    if ambient < 3 {
        return Err(Error::Domain(
            "reflection action of order >= 4 needs ambient >= 3".into(),
        ));
    }
    let theta = 2.0 * std::f64::consts::PI / m as f64;
    let mut block = rotation_matrix(3, 1, 2, theta);
    // top-left entry -1: the full generator is diag(-1) ⊕ R(theta)
    let mut entries = block.entries().to_vec();
    entries[0] = -1.0;
    block = OrthogonalMatrix::new(3, entries)?;
    generate(ambient, &[block.direct_sum_identity(ambient - 3)])
}

/// The default ambient dimension of a builtin cyclic action.
pub fn cyclic_default_ambient(m: u64, reflection: bool) -> usize {
    match (reflection, m) {
        (false, _) => 2,
        (true, 2) => 1,
        (true, _) => 3,
    }
}

/// Dihedral group of order 2m on `R^2` (rotation by `2 pi / m` plus an axis
/// reflection), padded up to the ambient dimension.
pub fn dihedral(m: u64, ambient: usize) -> Result<FiniteOrthogonalGroup> {
    if m == 0 {
        return Err(Error::Domain("order must be positive".into()));
    }
    if ambient < 2 {
        return Err(Error::Domain("dihedral action needs ambient >= 2".into()));
    }
    let theta = 2.0 * std::f64::consts::PI / m as f64;
    let rot = rotation_matrix(2, 0, 1, theta).direct_sum_identity(ambient - 2);
    let refl = sign_matrix(ambient, &[1.0, -1.0]);
    generate(ambient, &[rot, refl])
}

/// `S_n` permuting the coordinates of `R^n`.
pub fn symmetric(n: usize) -> Result<FiniteOrthogonalGroup> {
    if n < 2 {
        return Err(Error::Domain("symmetric action needs n >= 2".into()));
    }
    let transposition = {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(0, 1);
        permutation_matrix(n, &images)?
    };
    if n == 2 {
        return generate(2, &[transposition]);
    }
    let cycle = {
        let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        permutation_matrix(n, &images)?
    };
    generate(n, &[transposition, cycle])
}

/// `A_n` on `R^n`: generated by the 3-cycle (1 2 3) together with the long
/// even cycle ((1..n) for odd n, (2..n) for even n).
pub fn alternating(n: usize) -> Result<FiniteOrthogonalGroup> {
    if n < 3 {
        return Err(Error::Domain("alternating action needs n >= 3".into()));
    }
    let three_cycle = {
        let mut images: Vec<usize> = (0..n).collect();
        images[0] = 1;
        images[1] = 2;
        images[2] = 0;
        permutation_matrix(n, &images)?
    };
    if n == 3 {
        return generate(3, &[three_cycle]);
    }
    let long_cycle = if n % 2 == 1 {
        let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        permutation_matrix(n, &images)?
    } else {
        let mut images: Vec<usize> = (0..n).collect();
        for i in 1..n {
            images[i] = if i == n - 1 { 1 } else { i + 1 };
        }
        permutation_matrix(n, &images)?
    };
    generate(n, &[three_cycle, long_cycle])
}

/// The hyperoctahedral group of signed permutation matrices on `R^n`,
/// order `2^n n!`.
pub fn hyperoctahedral(n: usize) -> Result<FiniteOrthogonalGroup> {
    if n == 0 {
        return Err(Error::Domain("hyperoctahedral action needs n >= 1".into()));
    }
    let mut gens = vec![sign_matrix(n, &[-1.0])];
    if n >= 2 {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(0, 1);
        gens.push(permutation_matrix(n, &images)?);
    }
    if n >= 3 {
        let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        gens.push(permutation_matrix(n, &images)?);
    }
    generate(n, &gens)
}
