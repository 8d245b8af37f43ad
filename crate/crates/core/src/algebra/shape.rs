use std::fmt;

use crate::error::{Error, Result};

/// Summand multiplicities of the bordism group for `n` components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupShape {
    pub n: usize,
    pub free_rank: usize,
    pub z4_count: usize,
    pub z2_count: usize,
}

pub fn group_shape(n: usize) -> Result<GroupShape> {
    if n == 0 {
        return Err(Error::InvalidComponentCount(n));
    }
    Ok(GroupShape {
        n,
        free_rank: n,
        z4_count: n * (n - 1) / 2,
        z2_count: n * (n - 1) * n.saturating_sub(2) / 3,
    })
}

impl GroupShape {
    /// Summands of the oriented bordism group: `Z2^(n(n-1)/2) + Z^(n(n-1)(n-2)/3)`.
    pub fn oriented(&self) -> (usize, usize) {
        (self.z4_count, self.z2_count)
    }

    pub fn oriented_string(&self) -> String {
        let (z2, z) = self.oriented();
        join_summands(&[("Z2", z2), ("Z", z)])
    }
}

fn join_summands(parts: &[(&str, usize)]) -> String {
    let items: Vec<String> = parts
        .iter()
        .filter(|(_, c)| *c > 0)
        .map(|(g, c)| if *c == 1 { g.to_string() } else { format!("{g}^{c}") })
        .collect();
    if items.is_empty() {
        "0".to_string()
    } else {
        items.join(" + ")
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_summands(&[
            ("Z", self.free_rank),
            ("Z4", self.z4_count),
            ("Z2", self.z2_count),
        ]))
    }
}

/// Canonical double-linking keys `(i, j)` with `i < j`.
pub fn canonical_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// Canonical triple-linking keys: `i < j < k` or `i < k < j`.
pub fn canonical_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (1..=n).flat_map(move |i| {
        (i + 1..=n).flat_map(move |j| (i + 1..=n).filter(move |&k| k != j).map(move |k| (i, j, k)))
    })
}

pub fn is_canonical_triple(i: usize, j: usize, k: usize) -> bool {
    i < j && i < k && j != k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_for_small_n() {
        let s = |n| {
            let g = group_shape(n).unwrap();
            (g.free_rank, g.z4_count, g.z2_count)
        };
        assert_eq!(s(1), (1, 0, 0));
        assert_eq!(s(2), (2, 1, 0));
        assert_eq!(s(3), (3, 3, 2));
        assert!(group_shape(0).is_err());
    }

    #[test]
    fn z2_count_is_twice_three_subsets() {
        for n in 1..10 {
            let g = group_shape(n).unwrap();
            let subsets = if n >= 3 { n * (n - 1) * (n - 2) / 6 } else { 0 };
            assert_eq!(g.z2_count, 2 * subsets);
            assert_eq!(canonical_triples(n).count(), g.z2_count);
            assert_eq!(canonical_pairs(n).count(), g.z4_count);
        }
    }

    #[test]
    fn display_strings() {
        let g = group_shape(3).unwrap();
        assert_eq!(g.to_string(), "Z^3 + Z4^3 + Z2^2");
        assert_eq!(g.oriented_string(), "Z2^3 + Z^2");
        assert_eq!(group_shape(1).unwrap().oriented_string(), "0");
        assert_eq!(group_shape(2).unwrap().to_string(), "Z^2 + Z4");
    }
}
