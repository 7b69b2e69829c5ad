//! Distinct-part partition statistics and the closed-form symmetric and
//! alternating group answers they encode.
//!
//! For `n >= 2`, over all partitions of `n` into strictly increasing parts:
//! `a_n` counts those with an even number of even parts, `b_n` those with an
//! odd number of even parts; `p_n` counts those with an even number of
//! parts, `i_n` those with an odd number. Plain enumeration with a memo
//! table; the enumeration doubles as the brute-force oracle for the tests.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::ktheory::{checked_factorial, place_slots, KRankReport, RankMethod};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCounts {
    pub n: u32,
    /// Distinct-part partitions with an even number of even parts.
    pub a: u64,
    /// ... with an odd number of even parts.
    pub b: u64,
    /// ... with an even number of parts.
    pub p: u64,
    /// ... with an odd number of parts.
    pub i: u64,
}

impl PartitionCounts {
    pub fn total(&self) -> u64 {
        self.a + self.b
    }
}

/// Visits every partition of `n` into strictly increasing parts, reporting
/// (number of parts, number of even parts).
pub fn for_each_distinct_partition(n: u32, mut visit: impl FnMut(u32, u32)) {
    fn recurse(
        remaining: u32,
        min_part: u32,
        parts: u32,
        evens: u32,
        visit: &mut impl FnMut(u32, u32),
    ) {
        if remaining == 0 {
            visit(parts, evens);
            return;
        }
        for part in min_part..=remaining {
            recurse(
                remaining - part,
                part + 1,
                parts + 1,
                evens + u32::from(part % 2 == 0),
                visit,
            );
        }
    }
    recurse(n, 1, 0, 0, &mut visit);
}

fn memo() -> &'static Mutex<HashMap<u32, PartitionCounts>> {
    static MEMO: OnceLock<Mutex<HashMap<u32, PartitionCounts>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn partition_counts(n: u32) -> Result<PartitionCounts> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "partition statistics need n >= 2, got {n}"
        )));
    }
    if let Some(&c) = memo().lock().unwrap().get(&n) {
        return Ok(c);
    }
    let mut counts = PartitionCounts {
        n,
        a: 0,
        b: 0,
        p: 0,
        i: 0,
    };
    for_each_distinct_partition(n, |parts, evens| {
        if evens % 2 == 0 {
            counts.a += 1;
        } else {
            counts.b += 1;
        }
        if parts % 2 == 0 {
            counts.p += 1;
        } else {
            counts.i += 1;
        }
    });
    memo().lock().unwrap().insert(n, counts);
    Ok(counts)
}

pub fn partition_counts_upto(n_max: u32) -> Result<Vec<PartitionCounts>> {
    (2..=n_max).map(partition_counts).collect()
}

/// `K^*_{S_n}(R^n)`: rank `a_n` in the slot with `* + n` even, `b_n` in the
/// other.
pub fn sym_ranks(n: u32) -> Result<KRankReport> {
    let counts = partition_counts(n)?;
    let (rank_k0, rank_k1) = place_slots(n as usize, counts.a, counts.b);
    Ok(KRankReport {
        dim_v: n as usize,
        orientation_preserving: false,
        rank_k0,
        rank_k1,
        counts: None,
        method: RankMethod::PartitionFormula,
        group_order: checked_factorial(n as u64),
    })
}

/// `K^*_{A_n}(R^n)`: rank `2 a_n + b_n` in the slot with `* + n` even, zero
/// in the other (the restricted action preserves orientation).
pub fn alt_ranks(n: u32) -> Result<KRankReport> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "alternating ranks need n >= 3, got {n}"
        )));
    }
    let counts = partition_counts(n)?;
    let (rank_k0, rank_k1) = place_slots(n as usize, 2 * counts.a + counts.b, 0);
    Ok(KRankReport {
        dim_v: n as usize,
        orientation_preserving: true,
        rank_k0,
        rank_k1,
        counts: None,
        method: RankMethod::PartitionFormula,
        group_order: checked_factorial(n as u64).map(|f| f / 2),
    })
}

/// `(C_{S_n}^dec, C_{A_n}^dec) = (a_n + 2 b_n, 2 a_n + b_n)`: how many base
/// conjugacy classes decompose in the respective double covers.
pub fn decomposing_class_counts(n: u32) -> Result<(u64, u64)> {
    let counts = partition_counts(n)?;
    Ok((counts.a + 2 * counts.b, 2 * counts.a + counts.b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values_by_hand() {
        // n = 2: {(2)}
        assert_eq!(
            partition_counts(2).unwrap(),
            PartitionCounts {
                n: 2,
                a: 0,
                b: 1,
                p: 0,
                i: 1
            }
        );
        // n = 3: {(3), (1,2)}
        assert_eq!(
            partition_counts(3).unwrap(),
            PartitionCounts {
                n: 3,
                a: 1,
                b: 1,
                p: 1,
                i: 1
            }
        );
        // n = 6: {(6), (1,5), (2,4), (1,2,3)}
        let c6 = partition_counts(6).unwrap();
        assert_eq!((c6.a, c6.b), (2, 2));
        assert_eq!((c6.p, c6.i), (2, 2));
    }

    #[test]
    fn domain_bound() {
        assert!(partition_counts(1).is_err());
        assert!(partition_counts(0).is_err());
    }

    #[test]
    fn totals_match_euler_dp_oracle() {
        // Independent route: the generating function prod (1 + q^k).
        let n_max = 60usize;
        let mut dp = vec![0u64; n_max + 1];
        dp[0] = 1;
        for k in 1..=n_max {
            for s in (k..=n_max).rev() {
                dp[s] += dp[s - k];
            }
        }
        for n in 2..=n_max as u32 {
            let c = partition_counts(n).unwrap();
            assert_eq!(c.total(), dp[n as usize], "n = {n}");
            assert_eq!(c.p + c.i, dp[n as usize], "n = {n}");
        }
    }

    #[test]
    fn parity_identities_up_to_sixty() {
        for n in 2..=60u32 {
            let c = partition_counts(n).unwrap();
            if n % 2 == 1 {
                assert_eq!(c.a, c.i, "a_{n} = i_{n}");
                assert_eq!(c.b, c.p, "b_{n} = p_{n}");
            } else {
                assert_eq!(c.a, c.p, "a_{n} = p_{n}");
                assert_eq!(c.b, c.i, "b_{n} = i_{n}");
            }
        }
    }

    #[test]
    fn sym_rank_examples() {
        assert_eq!(sym_ranks(3).unwrap().ranks(), (1, 1));
        assert_eq!(sym_ranks(2).unwrap().ranks(), (0, 1));
        assert_eq!(sym_ranks(4).unwrap().ranks(), (1, 1));
        assert_eq!(sym_ranks(5).unwrap().ranks(), (2, 1));
    }

    #[test]
    fn alt_rank_examples() {
        assert_eq!(alt_ranks(3).unwrap().ranks(), (0, 3));
        assert_eq!(alt_ranks(4).unwrap().ranks(), (3, 0));
        assert_eq!(alt_ranks(5).unwrap().ranks(), (0, 4));
        assert!(alt_ranks(2).is_err());
    }

    #[test]
    fn decomposing_count_examples() {
        assert_eq!(decomposing_class_counts(3).unwrap(), (3, 3));
        assert_eq!(decomposing_class_counts(2).unwrap(), (2, 1));
        assert_eq!(decomposing_class_counts(4).unwrap(), (3, 3));
    }

    #[test]
    fn large_n_group_order_overflows_to_none() {
        let r = sym_ranks(30).unwrap();
        assert_eq!(r.group_order, None);
        assert!(r.rank_k0 + r.rank_k1 > 0);
    }
}
