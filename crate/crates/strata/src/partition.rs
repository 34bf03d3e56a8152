//! Integer partitions indexing characteristic-class monomials and the
//! coefficients of symmetric power series.

use std::fmt;

/// A weakly decreasing tuple of positive integers. The empty partition is
/// allowed and has weight 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Normalizes `parts` into weakly decreasing order.
    ///
    /// # Panics
    ///
    /// Panics if any part is zero.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
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

    /// Largest part, or 0 for the empty partition.
    pub fn max_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// The partition of the nonzero entries of an exponent vector.
    pub fn of_vector(exponents: &[u32]) -> Self {
        Partition::new(exponents.iter().copied().filter(|&e| e > 0).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

// Ordered by weight first so report maps list partitions degree by degree.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All partitions of `weight` with every part at most `max_part`.
pub fn partitions_bounded(weight: u32, max_part: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, cap: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        let top = remaining.min(cap);
        for p in (1..=top).rev() {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    rec(weight, max_part, &mut current, &mut out);
    out
}

/// All partitions of `weight`.
pub fn partitions_of(weight: u32) -> Vec<Partition> {
    partitions_bounded(weight, weight.max(1))
}

/// All partitions of weight at most `max_weight`, in increasing weight order.
pub fn partitions_up_to(max_weight: u32) -> Vec<Partition> {
    (0..=max_weight).flat_map(partitions_of).collect()
}

/// All partitions of `weight` drawn from the given set of allowed part
/// sizes. Used to enumerate the support of a beta series from the nonzero
/// components of a total class.
pub fn partitions_from_parts(weight: u32, allowed: &[u32]) -> Vec<Partition> {
    let mut sizes: Vec<u32> = allowed.iter().copied().filter(|&p| p > 0).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes.dedup();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, sizes: &[u32], current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        for (idx, &p) in sizes.iter().enumerate() {
            if p <= remaining {
                current.push(p);
                rec(remaining - p, &sizes[idx..], current, out);
                current.pop();
            }
        }
    }
    rec(weight, &sizes, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_order() {
        let p = Partition::new(vec![1, 3, 1]);
        assert_eq!(p.parts(), &[3, 1, 1]);
        assert_eq!(p.weight(), 5);
        assert_eq!(p.to_string(), "[3,1,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
    }

    #[test]
    fn counts_match_euler_recurrence() {
        // p(n) for n = 0..10
        let expected = [1usize, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(partitions_of(n as u32).len(), e, "p({n})");
        }
    }

    #[test]
    fn bounded_counts() {
        // partitions of 6 with parts <= 2: 2+2+2, 2+2+1+1, 2+1^4, 1^6
        assert_eq!(partitions_bounded(6, 2).len(), 4);
        assert_eq!(partitions_bounded(4, 1).len(), 1);
        assert_eq!(partitions_bounded(3, 0).len(), 0);
        assert_eq!(partitions_bounded(0, 0).len(), 1);
    }

    #[test]
    fn restricted_parts() {
        let ps = partitions_from_parts(6, &[2, 3]);
        assert_eq!(ps.len(), 2); // 3+3 and 2+2+2
        assert!(ps.contains(&Partition::new(vec![3, 3])));
        assert!(ps.contains(&Partition::new(vec![2, 2, 2])));
    }

    #[test]
    fn vector_collapse() {
        assert_eq!(Partition::of_vector(&[0, 2, 1, 0]).parts(), &[2, 1]);
    }
}
