//! Witness-structure buckets and heavy-vertex selection: induced paths keyed
//! by vertex pairs, tripods keyed by triples, and chip links keyed by pairs.

mod links;
mod paths;
mod tripods;

pub use links::{c_link_buckets, find_chip, secondary_heavy_vertex, CLink, LinkBuckets};
pub use paths::{heavy_vertex, path_buckets, path_buckets_with_budget, InducedPath, PathBuckets};
pub use tripods::{
    enumerate_tripods, enumerate_tripods_with_budget, minimal_connector, tripod_bags,
    tripod_buckets, tripod_buckets_with_budget, tripod_heavy_vertex, Center, Connector, Tripod,
    TripodBags, TripodBuckets,
};

/// Exact fraction threshold; comparisons cross-multiply in 128 bits.
pub type Eps = num::rational::Ratio<u64>;

/// `count / total > eps`, exactly. An empty total never satisfies this.
pub(crate) fn frac_gt(count: usize, total: usize, eps: Eps) -> bool {
    (count as u128) * (*eps.denom() as u128) > (*eps.numer() as u128) * (total as u128)
}

/// `count / total ≥ eps`, exactly. Vacuously true when `total` is zero.
pub(crate) fn frac_ge(count: usize, total: usize, eps: Eps) -> bool {
    (count as u128) * (*eps.denom() as u128) >= (*eps.numer() as u128) * (total as u128)
}

/// `n choose k` for the small `k` used by bucket denominators.
pub(crate) fn choose(n: usize, k: usize) -> usize {
    match k {
        2 => n * n.saturating_sub(1) / 2,
        3 => n * n.saturating_sub(1) * n.saturating_sub(2) / 6,
        _ => unreachable!("only pair and triple denominators are needed"),
    }
}

/// Step counter for witness enumerations; exhaustion aborts the enumeration
/// with an error naming the operation and the original budget.
pub(crate) struct Budget {
    left: u64,
    total: u64,
}

impl Budget {
    pub(crate) fn new(total: u64) -> Self {
        Budget { left: total, total }
    }

    pub(crate) fn take(&mut self, op: &'static str) -> crate::Result<()> {
        match self.left.checked_sub(1) {
            Some(left) => {
                self.left = left;
                Ok(())
            }
            None => Err(crate::Error::WitnessBudget { op, budget: self.total }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_comparisons_are_exact() {
        let third = Eps::new(1, 3);
        assert!(frac_gt(2, 5, third));
        assert!(!frac_gt(1, 3, third));
        assert!(frac_ge(1, 3, third));
        assert!(!frac_ge(1, 4, third));
        // Zero totals: strict fails, non-strict is vacuous.
        assert!(!frac_gt(0, 0, third));
        assert!(frac_ge(0, 0, third));
    }

    #[test]
    fn binomials() {
        assert_eq!(choose(5, 2), 10);
        assert_eq!(choose(5, 3), 10);
        assert_eq!(choose(2, 3), 0);
        assert_eq!(choose(0, 2), 0);
    }
}
