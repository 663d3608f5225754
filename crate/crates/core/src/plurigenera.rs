//! Monomial counts behind the symmetric plurigenera jump.
//!
//! Constant-coefficient monomials `dz1^m1 dz2^m2 dz3^m3` of total degree `m`
//! are counted under the condition `c·m1 ≥ m2 + m3`, keeping only even `m`
//! (invariance under `σ = -id`). The two families differ in `c ∈ {1, 3}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether the germ coefficient `z1^i1 z2^i2` of `dz1^m1 dz2^m2` descends:
/// order at least `m1 + m2` and even total parity.
pub fn descends_to_resolution(i1: u32, i2: u32, m1: u32, m2: u32) -> bool {
    let order = i1 as u64 + i2 as u64;
    let weight = m1 as u64 + m2 as u64;
    order >= weight && (order + weight) % 2 == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialTriple {
    pub m1: u32,
    pub m2: u32,
    pub m3: u32,
}

impl MonomialTriple {
    pub fn total(&self) -> u32 {
        self.m1 + self.m2 + self.m3
    }

    pub fn satisfies(&self, c: u32) -> bool {
        c as u64 * self.m1 as u64 >= self.m2 as u64 + self.m3 as u64
    }
}

/// All triples with `m1 + m2 + m3 = m`.
pub fn triples(m: u32) -> impl Iterator<Item = MonomialTriple> {
    (0..=m).flat_map(move |m1| (0..=m - m1).map(move |m2| MonomialTriple { m1, m2, m3: m - m1 - m2 }))
}

fn check_c(c: u32) -> Result<()> {
    if c == 1 || c == 3 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("condition constant must be 1 or 3, got {c}")))
    }
}

/// `#{(m1,m2,m3) : Σ = m, c·m1 ≥ m2 + m3}` for even `m`, 0 for odd `m`.
///
/// The condition is `m1 ≥ ceil(m / (c+1))`, and each admissible `m1` leaves
/// `m - m1 + 1` ways to split the rest.
pub fn count_invariant_monomials(m: u32, c: u32) -> Result<u64> {
    check_c(c)?;
    if m % 2 == 1 {
        return Ok(0);
    }
    let lo = m.div_ceil(c + 1);
    Ok((lo..=m).map(|m1| (m - m1 + 1) as u64).sum())
}

/// The same count by direct enumeration.
pub fn count_by_enumeration(m: u32, c: u32) -> Result<u64> {
    check_c(c)?;
    if m % 2 == 1 {
        return Ok(0);
    }
    Ok(triples(m).filter(|t| t.satisfies(c)).count() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpRow {
    pub m: u32,
    pub count_c1: u64,
    pub count_c3: u64,
    pub difference: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpTable {
    pub m_max: u32,
    pub rows: Vec<JumpRow>,
}

impl JumpTable {
    pub fn row(&self, m: u32) -> Option<&JumpRow> {
        self.rows.iter().find(|r| r.m == m)
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut out = format!("{:>4}  {:>10}  {:>10}  {:>10}\n", "m", "c=1", "c=3", "difference");
        for r in &self.rows {
            out.push_str(&format!("{:>4}  {:>10}  {:>10}  {:>10}\n", r.m, r.count_c1, r.count_c3, r.difference));
        }
        out
    }
}

/// Rows for every even `m` in `2..=m_max`.
pub fn jump_table(m_max: u32) -> Result<JumpTable> {
    if m_max < 2 {
        return Err(Error::InvalidArgument(format!("m_max must be at least 2, got {m_max}")));
    }
    let rows = (2..=m_max)
        .step_by(2)
        .map(|m| {
            let count_c1 = count_invariant_monomials(m, 1)?;
            let count_c3 = count_invariant_monomials(m, 3)?;
            Ok(JumpRow { m, count_c1, count_c3, difference: count_c3 - count_c1 })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JumpTable { m_max, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn descent_examples() {
        assert!(descends_to_resolution(2, 0, 1, 1));
        assert!(!descends_to_resolution(0, 0, 1, 1));
        assert!(descends_to_resolution(1, 0, 1, 0));
        assert!(!descends_to_resolution(2, 1, 1, 1));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_invariant_monomials(2, 1).unwrap(), 3);
        assert_eq!(count_invariant_monomials(4, 1).unwrap(), 6);
        assert_eq!(count_invariant_monomials(4, 3).unwrap(), 10);
        assert_eq!(count_invariant_monomials(6, 1).unwrap(), 10);
        assert_eq!(count_invariant_monomials(6, 3).unwrap(), 15);
        assert_eq!(count_invariant_monomials(3, 1).unwrap(), 0);
        assert_eq!(count_invariant_monomials(3, 3).unwrap(), 0);
        assert!(count_invariant_monomials(4, 2).is_err());
    }

    #[test]
    fn table_examples() {
        let t = jump_table(4).unwrap();
        assert_eq!(
            t.rows,
            vec![
                JumpRow { m: 2, count_c1: 3, count_c3: 3, difference: 0 },
                JumpRow { m: 4, count_c1: 6, count_c3: 10, difference: 4 }
            ]
        );
        assert_eq!(jump_table(2).unwrap().rows.len(), 1);
        assert!(jump_table(1).is_err());
        let text = jump_table(6).unwrap().to_text();
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().nth(3).unwrap().ends_with("5"));
    }

    proptest! {
        #[test]
        fn closed_form_matches_enumeration(m in 0u32..80) {
            for c in [1, 3] {
                prop_assert_eq!(count_invariant_monomials(m, c).unwrap(), count_by_enumeration(m, c).unwrap());
            }
            prop_assert!(count_invariant_monomials(m, 3).unwrap() >= count_invariant_monomials(m, 1).unwrap());
        }

        #[test]
        fn descent_is_monotone_in_order(i1 in 0u32..20, i2 in 0u32..20, m1 in 0u32..10, m2 in 0u32..10) {
            if descends_to_resolution(i1, i2, m1, m2) {
                prop_assert!(descends_to_resolution(i1 + 2, i2, m1, m2));
                prop_assert!(descends_to_resolution(i1, i2 + 2, m1, m2));
                prop_assert!(descends_to_resolution(i1 + 1, i2 + 1, m1, m2));
            }
        }
    }
}
