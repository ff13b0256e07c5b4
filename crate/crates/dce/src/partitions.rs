//! Integer partitions, conjugates, dominance, and the Gale–Ryser test.
//!
//! A pair of degree sequences (a, b) is realizable by a simple bipartite
//! graph exactly when the sums agree and the conjugate of a dominates b.
//! These checks drive both the record enumeration (which cross-edge degree
//! tables are worth trying) and the gluing step that stitches per-component
//! solutions back together.

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive and non-increasing, got {0:?}")]
    NotSorted(Vec<u32>),
    #[error("partition sums differ: {0} vs {1}")]
    SumMismatch(u64, u64),
}

/// A partition: positive parts in non-increasing order. The empty partition
/// (of 0) is allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition, PartitionError> {
        let ok = parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0);
        if ok {
            Ok(Partition { parts })
        } else {
            Err(PartitionError::NotSorted(parts))
        }
    }

    /// Build from arbitrary non-negative values: sorts descending, drops zeros.
    pub fn from_unsorted(mut values: Vec<u32>) -> Partition {
        values.retain(|&x| x > 0);
        values.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: values }
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|&x| u64::from(x)).sum()
    }

    /// Conjugate partition: part j counts how many parts are ≥ j.
    pub fn conjugate(&self) -> Partition {
        let max = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=max)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Dominance order: every prefix sum of `self` is ≥ the corresponding
    /// prefix sum of `other`, and the total sums agree.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.sum() != other.sum() {
            return false;
        }
        let mut acc_self = 0u64;
        let mut acc_other = 0u64;
        let len = self.parts.len().max(other.parts.len());
        for i in 0..len {
            acc_self += u64::from(self.parts.get(i).copied().unwrap_or(0));
            acc_other += u64::from(other.parts.get(i).copied().unwrap_or(0));
            if acc_self < acc_other {
                return false;
            }
        }
        true
    }
}

/// Gale–Ryser: (a, b) is realizable by a simple bipartite graph iff the sums
/// agree and conjugate(a) dominates b. Entries larger than the opposite side
/// length make domination fail, so no explicit length check is needed beyond
/// one guard for parts exceeding the other side.
pub fn is_bipartite_graphic(a: &Partition, b: &Partition) -> bool {
    if a.sum() != b.sum() {
        return false;
    }
    // a part larger than the number of opposite vertices is never realizable
    if a.parts().first().copied().unwrap_or(0) as usize > b.len()
        || b.parts().first().copied().unwrap_or(0) as usize > a.len()
    {
        return false;
    }
    a.conjugate().dominates(b)
}

/// The composition assertion used while gluing: is (a', b') bipartite graphic?
///
/// All four partitions must have the same sum; whenever (a, b),
/// (a', conjugate(a)) and (conjugate(b), b') are graphic, this must hold.
pub fn composition_check(
    a_prime: &Partition,
    a: &Partition,
    b: &Partition,
    b_prime: &Partition,
) -> Result<bool, PartitionError> {
    let n = a_prime.sum();
    for q in [a, b, b_prime] {
        if q.sum() != n {
            return Err(PartitionError::SumMismatch(n, q.sum()));
        }
    }
    Ok(is_bipartite_graphic(a_prime, b_prime))
}

/// All partitions of `n` (ascending count order: generated recursively with
/// non-increasing parts), optionally capped at `max_part` and `max_len`.
pub fn partitions_of(n: u32, max_part: u32, max_len: usize) -> Vec<Partition> {
    fn rec(remaining: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = cap.min(remaining);
        for part in (1..=hi).rev() {
            cur.push(part);
            rec(remaining - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part.min(n), max_len, &mut Vec::new(), &mut out);
    out
}
