//! Point-count tables over extension towers of a base field.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;

/// Exact counts `|X(F_{q^n})|` of a variety for `n = 1..B`, base `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCountTable {
    pub q: u64,
    pub counts: BTreeMap<u32, BigInt>,
}

/// Exact counts `|C(F_{q^n})|` of a K3 category, base `q`.
///
/// Integrality is a theorem for counts derived from a cubic fourfold, and a
/// checked property (never an assumption) everywhere else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcK3Counts {
    pub q: u64,
    pub counts: BTreeMap<u32, BigInt>,
}

impl PointCountTable {
    pub fn new(q: u64) -> Self {
        PointCountTable {
            q,
            counts: BTreeMap::new(),
        }
    }

    pub fn get(&self, n: u32) -> Option<&BigInt> {
        self.counts.get(&n)
    }
}

impl NcK3Counts {
    pub fn new(q: u64) -> Self {
        NcK3Counts {
            q,
            counts: BTreeMap::new(),
        }
    }

    pub fn get(&self, n: u32) -> Option<&BigInt> {
        self.counts.get(&n)
    }
}
