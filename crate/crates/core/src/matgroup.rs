//! Finite groups of orthogonal matrices.
//!
//! Groups are built by breadth-first closure from a generating set and stored
//! as a deduplicated element table with the identity at index 0. Element
//! identity uses a canonical rounded-entry key (entries snapped to the
//! half-integer grid when within 1e-9, then rounded to six decimals) with a
//! linear tolerance scan as fallback, so products of rotations do not
//! duplicate elements through float drift.

use std::collections::HashMap;

use crate::error::Error;
use crate::Result;

/// Validation tolerance for `Q^T Q = I` and `det Q = ±1`.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;
/// Pivot threshold for the fixed-subspace elimination.
pub const PIVOT_TOL: f64 = 1e-7;
/// Entrywise tolerance of the linear dedup fallback scan.
pub const DEDUP_SCAN_TOL: f64 = 1e-6;
/// Default cap on the group order during closure.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// An n×n real orthogonal matrix, stored row-major.
#[derive(Clone, Debug)]
pub struct OrthogonalMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl OrthogonalMatrix {
    /// Builds and validates a matrix: `Q^T Q = I` and `det Q = ±1` within `tol`.
    pub fn with_tolerance(dim: usize, entries: Vec<f64>, tol: f64) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(entries.len(), dim * dim));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        let m = OrthogonalMatrix { dim, entries };
        let residual = m.orthogonality_residual();
        if residual > tol {
            return Err(Error::NotOrthogonal { residual, tol });
        }
        let det = m.determinant();
        if (det.abs() - 1.0).abs() > tol.max(1e-8) {
            return Err(Error::DeterminantNotSign(det));
        }
        Ok(m)
    }

    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(dim, entries, ORTHOGONALITY_TOL)
    }

    /// Skips validation; for products of already-validated matrices.
    pub(crate) fn from_raw(dim: usize, entries: Vec<f64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        OrthogonalMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1.0;
        }
        OrthogonalMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn matmul(&self, rhs: &OrthogonalMatrix) -> OrthogonalMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        OrthogonalMatrix::from_raw(n, out)
    }

    /// The inverse of an orthogonal matrix.
    pub fn transpose(&self) -> OrthogonalMatrix {
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.entries[i * n + j];
            }
        }
        OrthogonalMatrix::from_raw(n, out)
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.dim);
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[i * n + j] * v[j]).sum())
            .collect()
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn determinant(&self) -> f64 {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut pivot = col;
            for r in col + 1..n {
                if a[r * n + col].abs() > a[pivot * n + col].abs() {
                    pivot = r;
                }
            }
            let p = a[pivot * n + col];
            if p.abs() < 1e-14 {
                return 0.0;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            det *= p;
            for r in col + 1..n {
                let factor = a[r * n + col] / p;
                if factor == 0.0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] -= factor * a[col * n + j];
                }
            }
        }
        det
    }

    /// Determinant snapped to ±1.
    pub fn det_sign(&self) -> Result<i8> {
        let det = self.determinant();
        if (det - 1.0).abs() < 1e-4 {
            Ok(1)
        } else if (det + 1.0).abs() < 1e-4 {
            Ok(-1)
        } else {
            Err(Error::DeterminantNotSign(det))
        }
    }

    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut dot = 0.0;
                for k in 0..n {
                    dot += self.entries[k * n + i] * self.entries[k * n + j];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &OrthogonalMatrix) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: f64) -> OrthogonalMatrix {
        OrthogonalMatrix::from_raw(self.dim, self.entries.iter().map(|v| v * factor).collect())
    }

    /// Block matrix `diag(Q, I_extra)`.
    pub fn direct_sum_identity(&self, extra: usize) -> OrthogonalMatrix {
        let n = self.dim;
        let m = n + extra;
        let mut out = vec![0.0; m * m];
        for i in 0..n {
            for j in 0..n {
                out[i * m + j] = self.entries[i * n + j];
            }
        }
        for i in n..m {
            out[i * m + i] = 1.0;
        }
        OrthogonalMatrix::from_raw(m, out)
    }

    /// `diag(Q, 1)`, the odd-dimension stabilization.
    pub fn stabilize(&self) -> OrthogonalMatrix {
        self.direct_sum_identity(1)
    }
}

fn snap_half_integer(v: f64) -> f64 {
    let half = (v * 2.0).round() / 2.0;
    if (v - half).abs() < 1e-9 {
        half
    } else {
        v
    }
}

fn canonical_key(m: &OrthogonalMatrix) -> Vec<i64> {
    m.entries()
        .iter()
        .map(|&v| {
            let snapped = snap_half_integer(v);
            let scaled = (snapped * 1e6).round();
            if scaled == 0.0 {
                0
            } else {
                scaled as i64
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct GroupOptions {
    /// Maximum group order the closure is allowed to reach.
    pub cap: usize,
    /// Orthogonality validation tolerance for the generators.
    pub tolerance: f64,
}

impl Default for GroupOptions {
    fn default() -> Self {
        GroupOptions {
            cap: DEFAULT_GROUP_CAP,
            tolerance: ORTHOGONALITY_TOL,
        }
    }
}

/// A finite group of orthogonal matrices with its conjugacy-class partition
/// and determinant character. The identity sits at element index 0.
#[derive(Clone, Debug)]
pub struct FiniteOrthogonalGroup {
    dim: usize,
    elements: Vec<OrthogonalMatrix>,
    index: HashMap<Vec<i64>, usize>,
    generators: Vec<usize>,
    inverses: Vec<usize>,
    det_character: Vec<i8>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    /// For subgroups carved out of a parent group: the parent index of each element.
    parent_indices: Option<Vec<usize>>,
}

impl FiniteOrthogonalGroup {
    /// Breadth-first closure of the generating set.
    pub fn generate(
        dim: usize,
        generators: &[OrthogonalMatrix],
        opts: GroupOptions,
    ) -> Result<Self> {
        for g in generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch(g.dim(), dim));
            }
            let residual = g.orthogonality_residual();
            if residual > opts.tolerance {
                return Err(Error::NotOrthogonal {
                    residual,
                    tol: opts.tolerance,
                });
            }
        }

        let mut elements = vec![OrthogonalMatrix::identity(dim)];
        let mut index = HashMap::new();
        index.insert(canonical_key(&elements[0]), 0usize);
        let mut gen_indices = Vec::new();
        for g in generators {
            let idx = insert_or_find(&mut elements, &mut index, g.clone(), opts.cap)?;
            if idx != 0 && !gen_indices.contains(&idx) {
                gen_indices.push(idx);
            }
        }

        let mut frontier = 0usize;
        while frontier < elements.len() {
            for gi in 0..gen_indices.len() {
                let product = elements[frontier].matmul(&elements[gen_indices[gi]]);
                insert_or_find(&mut elements, &mut index, product, opts.cap)?;
            }
            frontier += 1;
        }

        Self::from_elements(dim, elements, index, gen_indices, None)
    }

    /// Assembles a group from an already-closed element list.
    fn from_elements(
        dim: usize,
        elements: Vec<OrthogonalMatrix>,
        index: HashMap<Vec<i64>, usize>,
        generators: Vec<usize>,
        parent_indices: Option<Vec<usize>>,
    ) -> Result<Self> {
        let mut group = FiniteOrthogonalGroup {
            dim,
            elements,
            index,
            generators,
            inverses: Vec::new(),
            det_character: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            parent_indices,
        };
        group.inverses = (0..group.order())
            .map(|i| {
                group
                    .lookup(&group.elements[i].transpose())
                    .ok_or(Error::GroupNotClosed { a: i, b: i })
            })
            .collect::<Result<Vec<_>>>()?;
        group.det_character = group
            .elements
            .iter()
            .map(|m| m.det_sign())
            .collect::<Result<Vec<_>>>()?;
        let (classes, class_of) = group.compute_classes()?;
        group.classes = classes;
        group.class_of = class_of;
        Ok(group)
    }

    /// Orbit BFS of the conjugation action, conjugating by generators only.
    fn compute_classes(&self) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            class_of[start] = cid;
            let mut members = vec![start];
            let mut queue = vec![start];
            while let Some(x) = queue.pop() {
                for &g in &self.generators {
                    let conj = self.conjugate_index(g, x)?;
                    if class_of[conj] == usize::MAX {
                        class_of[conj] = cid;
                        members.push(conj);
                        queue.push(conj);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok((classes, class_of))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, i: usize) -> &OrthogonalMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[OrthogonalMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    /// Canonical-key lookup with linear tolerance fallback.
    pub fn lookup(&self, m: &OrthogonalMatrix) -> Option<usize> {
        if let Some(&i) = self.index.get(&canonical_key(m)) {
            return Some(i);
        }
        self.elements
            .iter()
            .position(|e| e.max_abs_diff(m) < DEDUP_SCAN_TOL)
    }

    pub fn mul_index(&self, a: usize, b: usize) -> Result<usize> {
        let product = self.elements[a].matmul(&self.elements[b]);
        self.lookup(&product).ok_or(Error::GroupNotClosed { a, b })
    }

    pub fn inv_index(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g x g^{-1}` as an element index.
    pub fn conjugate_index(&self, g: usize, x: usize) -> Result<usize> {
        let gx = self.elements[g].matmul(&self.elements[x]);
        let conj = gx.matmul(&self.elements[self.inverses[g]]);
        self.lookup(&conj)
            .ok_or(Error::GroupNotClosed { a: g, b: x })
    }

    pub fn det_character(&self) -> &[i8] {
        &self.det_character
    }

    pub fn det_sign_of(&self, i: usize) -> i8 {
        self.det_character[i]
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.det_character.iter().all(|&s| s == 1)
    }

    /// Conjugacy classes sorted by smallest member index; members ascending.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// All `h` with `hg = gh`.
    pub fn centralizer(&self, g: usize) -> Result<Vec<usize>> {
        let mut members = Vec::new();
        for h in 0..self.order() {
            if self.mul_index(h, g)? == self.mul_index(g, h)? {
                members.push(h);
            }
        }
        Ok(members)
    }

    /// Checks that the ±1 vector is a homomorphism. Multiplicativity on
    /// (generator, element) pairs propagates to all pairs by induction on
    /// word length.
    fn check_character(&self, character: &[i8]) -> Result<()> {
        if character.len() != self.order() {
            return Err(Error::CharacterLength {
                got: character.len(),
                want: self.order(),
            });
        }
        if character.iter().any(|&c| c != 1 && c != -1) {
            return Err(Error::Domain("character values must be ±1".into()));
        }
        if character[0] != 1 {
            return Err(Error::CharacterNotMultiplicative { g: 0, h: 0 });
        }
        for &g in &self.generators {
            for h in 0..self.order() {
                if character[self.mul_index(g, h)?] != character[g] * character[h] {
                    return Err(Error::CharacterNotMultiplicative { g, h });
                }
            }
        }
        Ok(())
    }

    /// A generating set (as parent indices) for the kernel of the character,
    /// by Schreier's lemma with transversal `{e, r}`.
    pub fn schreier_generators(&self, character: &[i8]) -> Result<Vec<usize>> {
        self.check_character(character)?;
        let r = match self.generators.iter().find(|&&g| character[g] == -1) {
            None => return Ok(self.generators.clone()),
            Some(&r) => r,
        };
        let rep = |x: usize| if character[x] == 1 { 0 } else { r };
        let mut gens = Vec::new();
        for &t in &[0usize, r] {
            for &s in &self.generators {
                let ts = self.mul_index(t, s)?;
                let h = self.mul_index(ts, self.inv_index(rep(ts)))?;
                debug_assert_eq!(character[h], 1);
                if h != 0 && !gens.contains(&h) {
                    gens.push(h);
                }
            }
        }
        Ok(gens)
    }

    /// The kernel of a ±1 character, as a group of index 1 or 2 whose
    /// elements keep the parent's ordering (identity stays at index 0).
    pub fn kernel_subgroup(&self, character: &[i8]) -> Result<FiniteOrthogonalGroup> {
        let schreier = self.schreier_generators(character)?;
        if character.iter().all(|&c| c == 1) {
            let mut clone = self.clone();
            clone.parent_indices = Some((0..self.order()).collect());
            return Ok(clone);
        }
        let mut elements = Vec::new();
        let mut parent = Vec::new();
        let mut local_of_parent = vec![usize::MAX; self.order()];
        for i in 0..self.order() {
            if character[i] == 1 {
                local_of_parent[i] = elements.len();
                elements.push(self.elements[i].clone());
                parent.push(i);
            }
        }
        let mut index = HashMap::new();
        for (local, m) in elements.iter().enumerate() {
            index.entry(canonical_key(m)).or_insert(local);
        }
        let generators = schreier
            .iter()
            .map(|&g| local_of_parent[g])
            .filter(|&l| l != 0)
            .collect();
        Self::from_elements(self.dim, elements, index, generators, Some(parent))
    }

    pub fn parent_indices(&self) -> Option<&[usize]> {
        self.parent_indices.as_deref()
    }
}

fn insert_or_find(
    elements: &mut Vec<OrthogonalMatrix>,
    index: &mut HashMap<Vec<i64>, usize>,
    m: OrthogonalMatrix,
    cap: usize,
) -> Result<usize> {
    let key = canonical_key(&m);
    if let Some(&i) = index.get(&key) {
        return Ok(i);
    }
    // Rounding near a 6-decimal boundary can split one element over two keys;
    // the scan catches that and aliases the new key to the old element.
    if let Some(i) = elements
        .iter()
        .position(|e| e.max_abs_diff(&m) < DEDUP_SCAN_TOL)
    {
        index.insert(key, i);
        return Ok(i);
    }
    if elements.len() >= cap {
        return Err(Error::GroupTooLarge { cap });
    }
    let i = elements.len();
    elements.push(m);
    index.insert(key, i);
    Ok(i)
}

/// Orthonormal basis of the fixed space `ker(Q - I)`, by elimination with
/// pivot tolerance [`PIVOT_TOL`] followed by Gram-Schmidt. May be empty.
pub fn fixed_subspace(q: &OrthogonalMatrix) -> Vec<Vec<f64>> {
    let n = q.dim();
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = q.entry(i, j) - if i == j { 1.0 } else { 0.0 };
        }
    }

    // Reduced row echelon form.
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut row = 0;
    for col in 0..n {
        let mut best = row;
        for r in row..n {
            if a[r * n + col].abs() > a[best * n + col].abs() {
                best = r;
            }
        }
        if row >= n || a[best * n + col].abs() <= PIVOT_TOL {
            continue;
        }
        for j in 0..n {
            a.swap(row * n + j, best * n + j);
        }
        let p = a[row * n + col];
        for j in 0..n {
            a[row * n + j] /= p;
        }
        for r in 0..n {
            if r != row {
                let factor = a[r * n + col];
                if factor != 0.0 {
                    for j in 0..n {
                        a[r * n + j] -= factor * a[row * n + j];
                    }
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0.0; n];
        v[free] = 1.0;
        for &(pr, pc) in &pivots {
            v[pc] = -a[pr * n + free];
        }
        basis.push(v);
    }

    gram_schmidt(basis)
}

fn gram_schmidt(vectors: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for mut v in vectors {
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= dot * y;
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-10 {
            for x in v.iter_mut() {
                *x /= norm;
            }
            basis.push(v);
        }
    }
    basis
}

/// Determinant of `Q` restricted to the span of an orthonormal basis,
/// snapped to ±1. The determinant of the empty (0×0) matrix is +1.
pub fn restricted_determinant(q: &OrthogonalMatrix, basis: &[Vec<f64>]) -> Result<i8> {
    let k = basis.len();
    if k == 0 {
        return Ok(1);
    }
    let images: Vec<Vec<f64>> = basis.iter().map(|b| q.apply(b)).collect();
    let mut m = vec![0.0; k * k];
    for j in 0..k {
        for i in 0..k {
            m[i * k + j] = basis[i].iter().zip(&images[j]).map(|(x, y)| x * y).sum();
        }
    }
    // Invariance: the image must stay inside the span.
    for j in 0..k {
        let mut residual = 0.0f64;
        for t in 0..q.dim() {
            let reconstructed: f64 = (0..k).map(|i| m[i * k + j] * basis[i][t]).sum();
            residual = residual.max((images[j][t] - reconstructed).abs());
        }
        if residual > PIVOT_TOL {
            return Err(Error::SubspaceNotInvariant(residual));
        }
    }
    let det = OrthogonalMatrix::from_raw(k, m).determinant();
    if (det - 1.0).abs() < 1e-4 {
        Ok(1)
    } else if (det + 1.0).abs() < 1e-4 {
        Ok(-1)
    } else {
        Err(Error::DeterminantNotSign(det))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;

    fn diag(entries: &[f64]) -> OrthogonalMatrix {
        let n = entries.len();
        let mut m = vec![0.0; n * n];
        for (i, &v) in entries.iter().enumerate() {
            m[i * n + i] = v;
        }
        OrthogonalMatrix::new(n, m).unwrap()
    }

    #[test]
    fn closure_of_single_reflection() {
        let g = FiniteOrthogonalGroup::generate(2, &[diag(&[-1.0, 1.0])], GroupOptions::default())
            .unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn closure_of_s3_permutations() {
        let g = groups::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        let sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 3]);
    }

    #[test]
    fn closure_of_rotation_order_four() {
        let g = groups::cyclic_rotation(4, 2).unwrap();
        assert_eq!(g.order(), 4);
        // Abelian: all classes singletons.
        assert_eq!(g.class_count(), 4);
    }

    #[test]
    fn trivial_group_has_one_class() {
        let g = groups::trivial(3).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.class_count(), 1);
    }

    #[test]
    fn cap_exceeded_reports_error() {
        let opts = GroupOptions {
            cap: 3,
            ..GroupOptions::default()
        };
        let gens = [
            groups::permutation_matrix(3, &[1, 2, 0]).unwrap(),
            groups::permutation_matrix(3, &[1, 0, 2]).unwrap(),
        ];
        let err = FiniteOrthogonalGroup::generate(3, &gens, opts).unwrap_err();
        assert!(matches!(err, Error::GroupTooLarge { cap: 3 }));
    }

    #[test]
    fn non_orthogonal_generator_rejected() {
        let m = OrthogonalMatrix::from_raw(2, vec![1.0, 0.5, 0.0, 1.0]);
        let err = FiniteOrthogonalGroup::generate(2, &[m], GroupOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NotOrthogonal { .. }));
    }

    #[test]
    fn closure_under_random_products() {
        let g = groups::symmetric(4).unwrap();
        // Every product of element pairs must land back in the table.
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert!(g.mul_index(a, b).is_ok());
            }
        }
    }

    #[test]
    fn classes_agree_with_brute_force() {
        for group in [
            groups::symmetric(4).unwrap(),
            groups::dihedral(6, 2).unwrap(),
            groups::hyperoctahedral(2).unwrap(),
            groups::cyclic_rotation(7, 2).unwrap(),
        ] {
            let brute = brute_force_classes(&group);
            assert_eq!(group.conjugacy_classes(), brute.as_slice());
        }
    }

    fn brute_force_classes(g: &FiniteOrthogonalGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut members = Vec::new();
            for h in 0..n {
                let c = g.conjugate_index(h, x).unwrap();
                if class_of[c] == usize::MAX {
                    class_of[c] = cid;
                    members.push(c);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    #[test]
    fn class_sizes_divide_group_order() {
        let g = groups::symmetric(5).unwrap();
        let total: usize = g.conjugacy_classes().iter().map(|c| c.len()).sum();
        assert_eq!(total, g.order());
        for c in g.conjugacy_classes() {
            assert_eq!(g.order() % c.len(), 0);
        }
    }

    #[test]
    fn kernel_of_det_character_on_s3() {
        let g = groups::symmetric(3).unwrap();
        let k = g.kernel_subgroup(g.det_character()).unwrap();
        assert_eq!(k.order(), 3);
        assert_eq!(k.class_count(), 3);
        assert!(k.is_orientation_preserving());
        assert_eq!(k.parent_indices().unwrap().len(), 3);
    }

    #[test]
    fn kernel_of_reflection_group_is_trivial() {
        let g = groups::cyclic_reflection(2, 1).unwrap();
        let k = g.kernel_subgroup(g.det_character()).unwrap();
        assert_eq!(k.order(), 1);
    }

    #[test]
    fn kernel_with_trivial_character_is_whole_group() {
        let g = groups::cyclic_rotation(5, 2).unwrap();
        let k = g.kernel_subgroup(g.det_character()).unwrap();
        assert_eq!(k.order(), 5);
    }

    #[test]
    fn kernel_index_is_one_or_two() {
        for group in [
            groups::symmetric(4).unwrap(),
            groups::dihedral(5, 2).unwrap(),
            groups::hyperoctahedral(2).unwrap(),
            groups::alternating(4).unwrap(),
        ] {
            let k = group.kernel_subgroup(group.det_character()).unwrap();
            let index = group.order() / k.order();
            assert!(index == 1 || index == 2);
        }
    }

    #[test]
    fn non_multiplicative_character_rejected() {
        let g = groups::symmetric(3).unwrap();
        let mut chi: Vec<i8> = vec![1; 6];
        chi[1] = -1; // flips a single element: cannot be a homomorphism
        let err = g.kernel_subgroup(&chi).unwrap_err();
        assert!(matches!(err, Error::CharacterNotMultiplicative { .. }));
    }

    #[test]
    fn centralizer_examples_in_s3() {
        let g = groups::symmetric(3).unwrap();
        // Find a transposition (class of size 3) and a 3-cycle (class of size 2).
        let transposition = g.conjugacy_classes().iter().find(|c| c.len() == 3).unwrap()[0];
        let three_cycle = g.conjugacy_classes().iter().find(|c| c.len() == 2).unwrap()[0];
        let ct = g.centralizer(transposition).unwrap();
        assert_eq!(ct.len(), 2);
        assert!(ct.contains(&0) && ct.contains(&transposition));
        let cc = g.centralizer(three_cycle).unwrap();
        assert_eq!(cc.len(), 3);
    }

    #[test]
    fn centralizer_in_abelian_group_is_everything() {
        let g = groups::cyclic_rotation(6, 2).unwrap();
        for x in 0..g.order() {
            assert_eq!(g.centralizer(x).unwrap().len(), 6);
        }
    }

    #[test]
    fn fixed_subspace_of_identity() {
        let basis = fixed_subspace(&OrthogonalMatrix::identity(3));
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn fixed_subspace_of_transposition() {
        let q = groups::permutation_matrix(3, &[1, 0, 2]).unwrap();
        let basis = fixed_subspace(&q);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let image = q.apply(v);
            for (a, b) in image.iter().zip(v) {
                assert!((a - b).abs() < 1e-7);
            }
        }
        // span{(e1+e2)/sqrt(2), e3}: the diagonal direction must be inside.
        let diag_dir = [
            std::f64::consts::FRAC_1_SQRT_2,
            std::f64::consts::FRAC_1_SQRT_2,
            0.0,
        ];
        let proj: f64 = basis
            .iter()
            .map(|b| {
                let dot: f64 = b.iter().zip(&diag_dir).map(|(x, y)| x * y).sum();
                dot * dot
            })
            .sum();
        assert!((proj - 1.0).abs() < 1e-9);
    }

    #[test]
    fn fixed_subspace_of_reflection() {
        let basis = fixed_subspace(&diag(&[-1.0, 1.0]));
        assert_eq!(basis.len(), 1);
        assert!((basis[0][1].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fixed_subspace_basis_is_orthonormal() {
        let q = groups::permutation_matrix(4, &[1, 2, 0, 3]).unwrap();
        let basis = fixed_subspace(&q);
        assert_eq!(basis.len(), 2);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn restricted_determinant_examples() {
        let q = groups::permutation_matrix(3, &[1, 0, 2]).unwrap();
        let basis = fixed_subspace(&q);
        assert_eq!(restricted_determinant(&q, &basis).unwrap(), 1);

        let r = diag(&[-1.0, 1.0]);
        assert_eq!(restricted_determinant(&r, &[vec![1.0, 0.0]]).unwrap(), -1);
        assert_eq!(restricted_determinant(&r, &[]).unwrap(), 1);
    }

    #[test]
    fn restricted_determinant_rejects_non_invariant_subspace() {
        let q = groups::rotation_matrix(2, 0, 1, std::f64::consts::FRAC_PI_3);
        let err = restricted_determinant(&q, &[vec![1.0, 0.0]]).unwrap_err();
        assert!(matches!(err, Error::SubspaceNotInvariant(_)));
    }

    #[test]
    fn schreier_generators_generate_the_kernel() {
        for group in [
            groups::symmetric(4).unwrap(),
            groups::dihedral(4, 2).unwrap(),
        ] {
            let schreier = group.schreier_generators(group.det_character()).unwrap();
            let gens: Vec<OrthogonalMatrix> =
                schreier.iter().map(|&i| group.matrix(i).clone()).collect();
            let closure =
                FiniteOrthogonalGroup::generate(group.dim(), &gens, GroupOptions::default())
                    .unwrap();
            assert_eq!(closure.order(), group.order() / 2);
        }
    }
}
