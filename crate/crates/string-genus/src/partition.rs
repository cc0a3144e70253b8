//! Integer partitions, used as monomial indices in Pontrjagin variables and
//! as the combinatorial bookkeeping of the spin bordism splitting.

use std::fmt;

/// A partition stored canonically: parts positive, sorted descending.
/// Equality is multiset equality; the weight is the sum of the parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(
            parts.iter().all(|&p| p > 0),
            "partition parts must be positive"
        );
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn single(part: u32) -> Self {
        assert!(part > 0);
        Partition(vec![part])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset union; the monomial product `p_I * p_J`.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` with parts at most `max_part`, descending
/// lexicographic order.
fn partitions_bounded(n: u32, max_part: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut first = n.min(max_part);
    while first >= 1 {
        for mut rest in partitions_bounded(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
        first -= 1;
    }
    out
}

/// All partitions of `n`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    partitions_bounded(n, n.max(1))
        .into_iter()
        .map(Partition)
        .collect()
}

/// All partitions of `n` into parts `>= 2`; `n = 0` yields only the empty
/// partition, `n = 1` yields none.
pub fn partitions_min2(n: u32) -> Vec<Partition> {
    partitions_bounded(n, n.max(1))
        .into_iter()
        .filter(|p| p.iter().all(|&x| x >= 2))
        .map(Partition)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_storage() {
        let p = Partition::new(vec![1, 3, 2, 3]);
        assert_eq!(p.parts(), &[3, 3, 2, 1]);
        assert_eq!(p.weight(), 9);
        assert_eq!(p, Partition::new(vec![3, 1, 3, 2]));
        assert_eq!(p.to_string(), "(3,3,2,1)");
    }

    #[test]
    fn merge_is_monomial_product() {
        let a = Partition::new(vec![2, 1]);
        let b = Partition::new(vec![3, 1]);
        assert_eq!(a.merge(&b), Partition::new(vec![3, 2, 1, 1]));
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(6).len(), 11);
        // brute check distinctness and weight
        let ps = partitions_of(7);
        assert_eq!(ps.len(), 15);
        for p in &ps {
            assert_eq!(p.weight(), 7);
        }
    }

    #[test]
    fn partitions_min2_examples() {
        assert_eq!(partitions_min2(0), vec![Partition::empty()]);
        assert!(partitions_min2(1).is_empty());
        let p6 = partitions_min2(6);
        assert_eq!(
            p6,
            vec![
                Partition::new(vec![6]),
                Partition::new(vec![4, 2]),
                Partition::new(vec![3, 3]),
                Partition::new(vec![2, 2, 2]),
            ]
        );
    }
}
