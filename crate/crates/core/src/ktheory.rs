//! Rank formulas for `K^0_G(V)` and `K^1_G(V)`.
//!
//! Both formulas place values in parity slots: the "even slot" is the degree
//! `*` with `* + dim(V)` even, the "odd slot" the other one. For an
//! orientation-preserving action the even slot carries `C_Grho - C_G` and the
//! odd slot is zero. Otherwise the even slot is
//! `(2 (C_Krho - C_K) - (C_Grho - C_G)) / 3` and the odd slot is
//! `(2 (C_Grho - C_G) - (C_Krho - C_K)) / 3`; integrality of those divisions
//! is guaranteed and therefore asserted, never rounded.
//!
//! [`karoubi_ranks`] is the independent oracle: it counts oriented
//! even/odd conjugacy classes of the base group directly, without ever
//! constructing the cover.

use serde::{Deserialize, Serialize};

use crate::cover::{build_double_cover_with, CoverClassCounts, CoverOptions, DoubleCoverGroup};
use crate::error::Error;
use crate::exec::{map_indexed, ExecMode};
use crate::matgroup::{fixed_subspace, restricted_determinant, FiniteOrthogonalGroup};
use crate::Result;

/// How a [`KRankReport`] was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    /// The main pipeline: cover construction and class counting.
    ClassCount,
    /// The simplified formulas available under a Pin^c condition.
    PincFormula,
    /// Karoubi's oriented-conjugacy-class count.
    Karoubi,
    /// Closed-form partition combinatorics (symmetric/alternating groups).
    PartitionFormula,
}

/// Ranks of `K^0` and `K^1` plus the intermediate data that produced them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRankReport {
    /// Dimension of `V` (pre-stabilization; fixes the parity slots).
    pub dim_v: usize,
    pub orientation_preserving: bool,
    pub rank_k0: u64,
    pub rank_k1: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<CoverClassCounts>,
    pub method: RankMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<u64>,
}

impl KRankReport {
    pub fn ranks(&self) -> (u64, u64) {
        (self.rank_k0, self.rank_k1)
    }
}

/// Distributes slot values onto `(K^0, K^1)` according to the parity of
/// `dim(V)`: the even slot is `K^0` when `dim(V)` is even, else `K^1`.
pub(crate) fn place_slots(dim_v: usize, even_slot: u64, odd_slot: u64) -> (u64, u64) {
    if dim_v % 2 == 0 {
        (even_slot, odd_slot)
    } else {
        (odd_slot, even_slot)
    }
}

fn third_exact(numerator: i64, context: &str) -> Result<u64> {
    if numerator < 0 || numerator % 3 != 0 {
        return Err(Error::InconsistentCounts(format!(
            "{context}: numerator {numerator} is not a nonnegative multiple of 3"
        )));
    }
    Ok((numerator / 3) as u64)
}

/// The rank formulas in terms of the four class counts.
pub fn ranks_from_counts(
    counts: CoverClassCounts,
    oriented: bool,
    dim_v: usize,
) -> Result<KRankReport> {
    if counts.c_g_rho < counts.c_g || counts.c_k_rho < counts.c_k {
        return Err(Error::InconsistentCounts(format!(
            "cover must not have fewer classes than its base: {counts:?}"
        )));
    }
    let a = (counts.c_g_rho - counts.c_g) as i64;
    let b = (counts.c_k_rho - counts.c_k) as i64;
    let (even_slot, odd_slot) = if oriented {
        if counts.c_k_rho != counts.c_g_rho || counts.c_k != counts.c_g {
            return Err(Error::InconsistentCounts(
                "orientation preserving but kernel counts differ".into(),
            ));
        }
        (a as u64, 0)
    } else {
        (
            third_exact(2 * b - a, "even slot")?,
            third_exact(2 * a - b, "odd slot")?,
        )
    };
    let (rank_k0, rank_k1) = place_slots(dim_v, even_slot, odd_slot);
    Ok(KRankReport {
        dim_v,
        orientation_preserving: oriented,
        rank_k0,
        rank_k1,
        counts: Some(counts),
        method: RankMethod::ClassCount,
        group_order: None,
    })
}

/// The simplified formulas valid under a Pin^c condition, in terms of the
/// base class counts alone. The caller asserts the condition; a divisibility
/// failure is strong evidence the assertion was wrong.
pub fn ranks_pinc(c_g: usize, c_k: usize, oriented: bool, dim_v: usize) -> Result<KRankReport> {
    let (even_slot, odd_slot) = if oriented {
        (c_g as u64, 0)
    } else {
        let even = 2 * c_k as i64 - c_g as i64;
        let odd = 2 * c_g as i64 - c_k as i64;
        let check = |n: i64| {
            if n < 0 || n % 3 != 0 {
                Err(Error::PincAssertionFailed(format!(
                    "numerator {n} is not a nonnegative multiple of 3"
                )))
            } else {
                Ok((n / 3) as u64)
            }
        };
        (check(even)?, check(odd)?)
    };
    let (rank_k0, rank_k1) = place_slots(dim_v, even_slot, odd_slot);
    Ok(KRankReport {
        dim_v,
        orientation_preserving: oriented,
        rank_k0,
        rank_k1,
        counts: None,
        method: RankMethod::PincFormula,
        group_order: None,
    })
}

/// Karoubi's count: for each conjugacy class representative `g`, the class
/// is oriented when every centralizer element acts on the fixed space `V^g`
/// with determinant +1 (the empty 0×0 determinant is +1, so 0-dimensional
/// fixed spaces count as oriented even). Oriented classes with even
/// `dim V^g` contribute to `K^0`, odd ones to `K^1`.
pub fn karoubi_ranks(group: &FiniteOrthogonalGroup) -> Result<KRankReport> {
    karoubi_ranks_with(group, ExecMode::default())
}

pub fn karoubi_ranks_with(group: &FiniteOrthogonalGroup, exec: ExecMode) -> Result<KRankReport> {
    let reps = group.class_representatives();
    // Per-class work items are independent; aggregation is in class order.
    let verdicts = map_indexed(exec, reps.len(), |ci| -> Result<Option<bool>> {
        let g = reps[ci];
        let basis = fixed_subspace(group.matrix(g));
        for h in group.centralizer(g)? {
            if restricted_determinant(group.matrix(h), &basis)? != 1 {
                return Ok(None);
            }
        }
        Ok(Some(basis.len() % 2 == 0))
    });
    let mut rank_k0 = 0u64;
    let mut rank_k1 = 0u64;
    for verdict in verdicts {
        match verdict? {
            Some(true) => rank_k0 += 1,
            Some(false) => rank_k1 += 1,
            None => {}
        }
    }
    Ok(KRankReport {
        dim_v: group.dim(),
        orientation_preserving: group.is_orientation_preserving(),
        rank_k0,
        rank_k1,
        counts: None,
        method: RankMethod::Karoubi,
        group_order: Some(group.order() as u64),
    })
}

/// The full pipeline: build the double cover, count classes, apply the
/// rank formulas.
pub fn compute(group: &FiniteOrthogonalGroup) -> Result<KRankReport> {
    compute_with(group, CoverOptions::default())
}

pub fn compute_with(group: &FiniteOrthogonalGroup, opts: CoverOptions) -> Result<KRankReport> {
    let cover = build_double_cover_with(group, opts)?;
    compute_from_cover(&cover)
}

/// The rank formulas applied to an already-built cover.
pub fn compute_from_cover(cover: &DoubleCoverGroup) -> Result<KRankReport> {
    let group = cover.base();
    let mut report = ranks_from_counts(
        cover.class_counts(),
        group.is_orientation_preserving(),
        group.dim(),
    )?;
    report.group_order = Some(group.order() as u64);
    Ok(report)
}

pub(crate) fn checked_factorial(n: u64) -> Option<u64> {
    (2..=n).try_fold(1u64, |acc, k| acc.checked_mul(k))
}
