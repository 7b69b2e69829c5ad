//! Blade arithmetic in the real Clifford algebra `Cl(R^n)`.
//!
//! The defining relation is `v * v = -<v, v> 1`, so squares of unit vectors
//! are -1. Elements are dense coefficient vectors over the 2^n basis blades,
//! indexed by subsets of `{1..n}` encoded as bitmasks (bit i set means the
//! basis vector `e_{i+1}` is present, written in increasing index order).
//!
//! Besides the product this module provides the grading `alpha`, the
//! involution `x -> x*` with `(v_1 ... v_k)* = (-1)^k v_k ... v_1`, the
//! volume element `J = e_1 ... e_n` for even `n`, and the adjoint action
//! `Ad(x)(v) = x v x*` of Pin elements on the underlying vector space.

use crate::error::Error;
use crate::matgroup::OrthogonalMatrix;
use crate::Result;

/// Default cap on the ambient dimension; products are O(4^n).
pub const DEFAULT_DIMENSION_CAP: usize = 10;
/// Dimensions beyond this are refused outright (mask arithmetic and memory).
pub const HARD_DIMENSION_CAP: usize = 16;
/// Default coefficient-comparison tolerance.
pub const EQ_TOL: f64 = 1e-9;
/// Residual allowed when the adjoint action is projected back to grade one.
pub const ADJOINT_TOL: f64 = 1e-7;

fn check_dimension(dim: usize, cap: usize) -> Result<()> {
    if dim == 0 || dim > cap.min(HARD_DIMENSION_CAP) {
        return Err(Error::DimensionCap {
            dim,
            cap: cap.min(HARD_DIMENSION_CAP),
        });
    }
    Ok(())
}

/// Sign of the product of two basis blades under `e_i e_j = -e_j e_i`,
/// `e_i e_i = -1`: a transposition count for the reordering of the
/// concatenated index lists, times one factor -1 per repeated index.
fn reorder_sign(a: usize, b: usize) -> f64 {
    let mut swaps = 0u32;
    let mut t = a >> 1;
    while t != 0 {
        swaps += (t & b).count_ones();
        t >>= 1;
    }
    let negations = swaps + (a & b).count_ones();
    if negations % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// An element of `Cl(R^n)` as a dense coefficient vector over basis blades.
#[derive(Clone, Debug, PartialEq)]
pub struct BladeElement {
    dim: usize,
    coeffs: Vec<f64>,
}

impl BladeElement {
    pub fn zero(dim: usize) -> Result<Self> {
        Self::zero_with_cap(dim, DEFAULT_DIMENSION_CAP)
    }

    pub fn zero_with_cap(dim: usize, cap: usize) -> Result<Self> {
        check_dimension(dim, cap)?;
        Ok(BladeElement {
            dim,
            coeffs: vec![0.0; 1 << dim],
        })
    }

    pub fn scalar(dim: usize, value: f64) -> Result<Self> {
        let mut e = Self::zero(dim)?;
        e.coeffs[0] = value;
        Ok(e)
    }

    pub fn scalar_with_cap(dim: usize, value: f64, cap: usize) -> Result<Self> {
        let mut e = Self::zero_with_cap(dim, cap)?;
        e.coeffs[0] = value;
        Ok(e)
    }

    /// The basis blade for a subset mask, with coefficient 1.
    pub fn basis_blade(dim: usize, mask: usize) -> Result<Self> {
        Self::basis_blade_with_cap(dim, mask, DEFAULT_DIMENSION_CAP)
    }

    pub fn basis_blade_with_cap(dim: usize, mask: usize, cap: usize) -> Result<Self> {
        let mut e = Self::zero_with_cap(dim, cap)?;
        if mask >= e.coeffs.len() {
            return Err(Error::Domain(format!(
                "blade mask {mask:#x} out of range for dimension {dim}"
            )));
        }
        e.coeffs[mask] = 1.0;
        Ok(e)
    }

    /// A grade-one element with the given coordinates.
    pub fn vector(dim: usize, coords: &[f64]) -> Result<Self> {
        Self::vector_with_cap(dim, coords, DEFAULT_DIMENSION_CAP)
    }

    pub fn vector_with_cap(dim: usize, coords: &[f64], cap: usize) -> Result<Self> {
        if coords.len() != dim {
            return Err(Error::DimensionMismatch(coords.len(), dim));
        }
        let mut e = Self::zero_with_cap(dim, cap)?;
        for (i, &c) in coords.iter().enumerate() {
            e.coeffs[1 << i] = c;
        }
        Ok(e)
    }

    pub fn from_coeffs(dim: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_dimension(dim, HARD_DIMENSION_CAP)?;
        if coeffs.len() != 1 << dim {
            return Err(Error::DimensionMismatch(coeffs.len(), 1 << dim));
        }
        Ok(BladeElement { dim, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// The Clifford product. Bilinear; on basis blades the mask is the XOR
    /// of the operand masks and the sign comes from [`reorder_sign`].
    pub fn product(&self, rhs: &BladeElement) -> Result<BladeElement> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let mut out = vec![0.0; self.coeffs.len()];
        for (ma, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (mb, &cb) in rhs.coeffs.iter().enumerate() {
                if cb == 0.0 {
                    continue;
                }
                out[ma ^ mb] += reorder_sign(ma, mb) * ca * cb;
            }
        }
        Ok(BladeElement {
            dim: self.dim,
            coeffs: out,
        })
    }

    /// The involution `x -> x*`: a grade-k blade picks up
    /// `(-1)^k (-1)^{k(k-1)/2} = (-1)^{k(k+1)/2}`.
    pub fn star(&self) -> BladeElement {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, &c)| {
                let k = mask.count_ones() as usize;
                if (k * (k + 1) / 2) % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        BladeElement {
            dim: self.dim,
            coeffs,
        }
    }

    /// The grading `alpha`: negates odd-grade coefficients.
    pub fn grade_involution(&self) -> BladeElement {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, &c)| if mask.count_ones() % 2 == 0 { c } else { -c })
            .collect();
        BladeElement {
            dim: self.dim,
            coeffs,
        }
    }

    pub fn scale(&self, factor: f64) -> BladeElement {
        BladeElement {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn sub(&self, rhs: &BladeElement) -> Result<BladeElement> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        Ok(BladeElement {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Euclidean dot product of the coefficient vectors. For Pin elements
    /// this is the scalar part of `a (b*)`, so two Pin elements equal up to
    /// sign have dot exactly ±1.
    pub fn coefficient_dot(&self, rhs: &BladeElement) -> f64 {
        self.coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn approx_eq(&self, rhs: &BladeElement, tol: f64) -> bool {
        self.dim == rhs.dim
            && self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// Coordinates of the grade-one part.
    pub fn grade_one_part(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.coeffs[1 << i]).collect()
    }

    /// Largest |coefficient| outside grade one.
    pub fn residue_outside_grade_one(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(mask, _)| mask.count_ones() != 1)
            .fold(0.0f64, |m, (_, c)| m.max(c.abs()))
    }
}

/// The volume element `J = e_1 e_2 ... e_n` for even `n`.
pub fn volume_element(dim: usize) -> Result<BladeElement> {
    if dim % 2 != 0 {
        return Err(Error::OddDimension(dim));
    }
    BladeElement::basis_blade(dim, (1 << dim) - 1)
}

/// Popcount parity shared by every nonzero mask of a homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A candidate Pin element: grade-homogeneous and satisfying `x (x*) = 1`.
/// The adjoint-action check (conjugation stays in grade one) happens in
/// [`adjoint_action`], which every constructed lift goes through.
#[derive(Clone, Debug)]
pub struct PinCandidate {
    element: BladeElement,
    parity: Parity,
}

impl PinCandidate {
    pub fn new(element: BladeElement) -> Result<Self> {
        let mut parity: Option<u32> = None;
        for (mask, &c) in element.coeffs().iter().enumerate() {
            if c.abs() <= EQ_TOL {
                continue;
            }
            let p = mask.count_ones() % 2;
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        let parity = match parity {
            None => return Err(Error::NotUnit(1.0)),
            Some(0) => Parity::Even,
            Some(_) => Parity::Odd,
        };
        let unit = element.product(&element.star())?;
        let residual = unit
            .sub(&BladeElement::scalar_with_cap(
                element.dim(),
                1.0,
                HARD_DIMENSION_CAP,
            )?)?
            .max_abs_coeff();
        if residual > 1e-8 {
            return Err(Error::NotUnit(residual));
        }
        Ok(PinCandidate { element, parity })
    }

    pub fn element(&self) -> &BladeElement {
        &self.element
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn dim(&self) -> usize {
        self.element.dim()
    }

    pub fn negated(&self) -> PinCandidate {
        PinCandidate {
            element: self.element.scale(-1.0),
            parity: self.parity,
        }
    }
}

/// The orthogonal matrix of `Ad(x): v -> x v x*`. Column `i` is the
/// grade-one part of `x e_i x*`; any residue outside grade one above
/// [`ADJOINT_TOL`] means the element is not in Pin.
pub fn adjoint_action(x: &PinCandidate) -> Result<OrthogonalMatrix> {
    let n = x.dim();
    let star = x.element().star();
    let mut entries = vec![0.0; n * n];
    for col in 0..n {
        let basis = BladeElement::basis_blade_with_cap(n, 1 << col, HARD_DIMENSION_CAP)?;
        let image = x.element().product(&basis)?.product(&star)?;
        let residue = image.residue_outside_grade_one();
        if residue > ADJOINT_TOL {
            return Err(Error::NotPin(residue));
        }
        for (row, &value) in image.grade_one_part().iter().enumerate() {
            entries[row * n + col] = value;
        }
    }
    OrthogonalMatrix::new(n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(dim: usize, indices: &[usize]) -> BladeElement {
        let mut mask = 0usize;
        for &i in indices {
            mask |= 1 << (i - 1);
        }
        BladeElement::basis_blade(dim, mask).unwrap()
    }

    /// Independent sign oracle: multiply explicit index lists, bubble-sort
    /// the concatenation counting transpositions, then cancel adjacent
    /// repeats with one factor -1 each.
    fn naive_blade_product(a: usize, b: usize) -> (usize, f64) {
        let mut list: Vec<usize> = Vec::new();
        for i in 0..16 {
            if a & (1 << i) != 0 {
                list.push(i);
            }
        }
        for i in 0..16 {
            if b & (1 << i) != 0 {
                list.push(i);
            }
        }
        let mut sign = 1.0;
        // bubble sort, one transposition per swap
        let mut swapped = true;
        while swapped {
            swapped = false;
            for i in 1..list.len() {
                if list[i - 1] > list[i] {
                    list.swap(i - 1, i);
                    sign = -sign;
                    swapped = true;
                }
            }
        }
        // cancel equal adjacent pairs: e_i e_i = -1
        let mut reduced: Vec<usize> = Vec::new();
        for v in list {
            if reduced.last() == Some(&v) {
                reduced.pop();
                sign = -sign;
            } else {
                reduced.push(v);
            }
        }
        let mask = reduced.iter().fold(0usize, |m, &i| m | (1 << i));
        (mask, sign)
    }

    #[test]
    fn product_matches_naive_oracle_exhaustively() {
        for dim in 1..=5 {
            let size = 1usize << dim;
            for a in 0..size {
                for b in 0..size {
                    let (want_mask, want_sign) = naive_blade_product(a, b);
                    let pa = BladeElement::basis_blade(dim, a).unwrap();
                    let pb = BladeElement::basis_blade(dim, b).unwrap();
                    let prod = pa.product(&pb).unwrap();
                    for mask in 0..size {
                        let want = if mask == want_mask { want_sign } else { 0.0 };
                        assert_eq!(prod.coeff(mask), want, "blades {a:#x} * {b:#x}");
                    }
                }
            }
        }
    }

    #[test]
    fn defining_relation_examples() {
        let dim = 2;
        let e1 = e(dim, &[1]);
        assert_eq!(e1.product(&e1).unwrap().coeff(0), -1.0);

        let e2 = e(dim, &[2]);
        let e12 = e1.product(&e2).unwrap();
        assert_eq!(e12.coeff(0b11), 1.0);
        let e21 = e2.product(&e1).unwrap();
        assert_eq!(e21.coeff(0b11), -1.0);

        let sq = e12.product(&e12).unwrap();
        assert_eq!(sq.coeff(0), -1.0);
    }

    #[test]
    fn star_examples() {
        let e1 = e(3, &[1]);
        assert_eq!(e1.star().coeff(0b001), -1.0);

        let one = BladeElement::scalar(3, 1.0).unwrap();
        assert_eq!(one.star().coeff(0), 1.0);

        let e12 = e(3, &[1, 2]);
        assert_eq!(e12.star().coeff(0b011), -1.0);
    }

    #[test]
    fn grade_involution_examples() {
        let e1 = e(3, &[1]);
        assert_eq!(e1.grade_involution().coeff(0b001), -1.0);

        let mut mixed = BladeElement::scalar(3, 1.0).unwrap();
        mixed = mixed.sub(&e(3, &[1, 2]).scale(-1.0)).unwrap(); // 1 + e1e2
        let alpha = mixed.grade_involution();
        assert!(alpha.approx_eq(&mixed, 0.0));

        let e123 = e(3, &[1, 2, 3]);
        assert_eq!(e123.grade_involution().coeff(0b111), -1.0);
    }

    #[test]
    fn volume_element_examples() {
        let j2 = volume_element(2).unwrap();
        assert_eq!(j2.coeff(0b11), 1.0);
        let j4 = volume_element(4).unwrap();
        assert_eq!(j4.coeff(0b1111), 1.0);
        assert!(volume_element(3).is_err());

        // J^2 = (-1)^m in dimension 2m
        let sq2 = j2.product(&j2).unwrap();
        assert_eq!(sq2.coeff(0), -1.0);
        let sq4 = j4.product(&j4).unwrap();
        assert_eq!(sq4.coeff(0), 1.0);
    }

    #[test]
    fn blade_square_sign_table() {
        // (e_2 ... e_n)^2 = (-1)^{n(n-1)/2} and (e_1 ... e_n)^2 = (-1)^{n(n+1)/2}
        for n in 2..=6 {
            let x = BladeElement::basis_blade(n, ((1usize << n) - 1) & !1).unwrap();
            let want = if (n * (n - 1) / 2) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            assert_eq!(x.product(&x).unwrap().coeff(0), want);

            let y = BladeElement::basis_blade(n, (1usize << n) - 1).unwrap();
            let want = if (n * (n + 1) / 2) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            assert_eq!(y.product(&y).unwrap().coeff(0), want);
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = BladeElement::scalar(2, 1.0).unwrap();
        let b = BladeElement::scalar(3, 1.0).unwrap();
        assert!(a.product(&b).is_err());
    }

    #[test]
    fn dimension_cap_enforced() {
        assert!(BladeElement::zero(11).is_err());
        assert!(BladeElement::zero_with_cap(11, 12).is_ok());
        assert!(BladeElement::zero_with_cap(17, 32).is_err());
    }

    #[test]
    fn adjoint_of_one_is_identity() {
        let x = PinCandidate::new(BladeElement::scalar(2, 1.0).unwrap()).unwrap();
        let q = adjoint_action(&x).unwrap();
        assert!(q.max_abs_diff(&OrthogonalMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn adjoint_of_e2_to_en_is_first_axis_reflection() {
        for n in [2usize, 4, 6] {
            let mask = ((1usize << n) - 1) & !1;
            let x = PinCandidate::new(BladeElement::basis_blade(n, mask).unwrap()).unwrap();
            let q = adjoint_action(&x).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j {
                        if i == 0 {
                            -1.0
                        } else {
                            1.0
                        }
                    } else {
                        0.0
                    };
                    assert!((q.entry(i, j) - want).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn adjoint_of_e1e2_is_minus_identity() {
        let x = PinCandidate::new(e(2, &[1, 2])).unwrap();
        let q = adjoint_action(&x).unwrap();
        assert!(q.max_abs_diff(&OrthogonalMatrix::identity(2).scaled(-1.0)) < 1e-12);
    }

    #[test]
    fn rotation_conjugation_reverses_angle() {
        // e2 x(alpha) e2* = x(-alpha)
        let alpha = 0.7f64;
        let x = BladeElement::from_coeffs(2, vec![alpha.cos(), 0.0, 0.0, alpha.sin()]).unwrap();
        let e2 = e(2, &[2]);
        let conj = e2.product(&x).unwrap().product(&e2.star()).unwrap();
        let want = BladeElement::from_coeffs(2, vec![alpha.cos(), 0.0, 0.0, -alpha.sin()]).unwrap();
        assert!(conj.approx_eq(&want, 1e-12));
    }

    #[test]
    fn pin_candidate_rejects_mixed_grades() {
        let mut coeffs = vec![0.0; 4];
        coeffs[0] = 0.8;
        coeffs[1] = 0.6;
        let err = PinCandidate::new(BladeElement::from_coeffs(2, coeffs).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous));
    }

    #[test]
    fn pin_candidate_rejects_non_unit() {
        let err = PinCandidate::new(e(2, &[1]).scale(2.0)).unwrap_err();
        assert!(matches!(err, Error::NotUnit(_)));
    }

    #[test]
    fn adjoint_rejects_unit_elements_outside_pin() {
        // (e1e2e3 + e4e5e6)/sqrt(2) is grade-homogeneous with x x* = 1, but
        // conjugation throws basis vectors into grade 5.
        let mut coeffs = vec![0.0; 64];
        coeffs[0b000111] = 0.5f64.sqrt();
        coeffs[0b111000] = 0.5f64.sqrt();
        let x = PinCandidate::new(BladeElement::from_coeffs(6, coeffs).unwrap()).unwrap();
        let err = adjoint_action(&x).unwrap_err();
        assert!(matches!(err, Error::NotPin(_)));
    }

    proptest! {
        #[test]
        fn product_is_associative(
            dim in 2usize..=6,
            seed in proptest::array::uniform3(any::<u64>()),
        ) {
            // regenerate three sparse elements deterministically from the seed
            let mk = |s: u64| {
                let size = 1usize << dim;
                let mut coeffs = vec![0.0; size];
                let mut state = s | 1;
                for _ in 0..3 {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let mask = (state >> 33) as usize % size;
                    let val = ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0;
                    coeffs[mask] += val;
                }
                BladeElement::from_coeffs(dim, coeffs).unwrap()
            };
            let (a, b, c) = (mk(seed[0]), mk(seed[1]), mk(seed[2]));
            let left = a.product(&b).unwrap().product(&c).unwrap();
            let right = a.product(&b.product(&c).unwrap()).unwrap();
            prop_assert!(left.approx_eq(&right, 1e-9));
        }

        #[test]
        fn unit_vectors_square_to_minus_one(
            dim in 1usize..=6,
            raw in proptest::collection::vec(-1.0f64..1.0, 6),
        ) {
            let mut coords: Vec<f64> = raw.into_iter().take(dim).collect();
            let norm: f64 = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assume!(norm > 1e-3);
            for c in coords.iter_mut() {
                *c /= norm;
            }
            let v = BladeElement::vector(dim, &coords).unwrap();
            let sq = v.product(&v).unwrap();
            let minus_one = BladeElement::scalar(dim, -1.0).unwrap();
            prop_assert!(sq.approx_eq(&minus_one, 1e-9));
        }

        #[test]
        fn star_is_an_antiautomorphism(
            dim in 2usize..=5,
            seed in proptest::array::uniform2(any::<u64>()),
        ) {
            let mk = |s: u64| {
                let size = 1usize << dim;
                let mut coeffs = vec![0.0; size];
                let mut state = s | 1;
                for _ in 0..4 {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let mask = (state >> 33) as usize % size;
                    let val = ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0;
                    coeffs[mask] += val;
                }
                BladeElement::from_coeffs(dim, coeffs).unwrap()
            };
            let (a, b) = (mk(seed[0]), mk(seed[1]));
            let left = a.product(&b).unwrap().star();
            let right = b.star().product(&a.star()).unwrap();
            prop_assert!(left.approx_eq(&right, 1e-9));
        }

        #[test]
        fn star_and_alpha_are_involutions(
            dim in 1usize..=5,
            seed in any::<u64>(),
        ) {
            let size = 1usize << dim;
            let mut coeffs = vec![0.0; size];
            let mut state = seed | 1;
            for _ in 0..5 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                coeffs[(state >> 33) as usize % size] += 1.0;
            }
            let a = BladeElement::from_coeffs(dim, coeffs).unwrap();
            prop_assert!(a.star().star().approx_eq(&a, 0.0));
            prop_assert!(a.grade_involution().grade_involution().approx_eq(&a, 0.0));
        }
    }
}
