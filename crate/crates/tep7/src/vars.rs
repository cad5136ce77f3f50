//! Variable identifiers for the fixed polynomial ring.
//!
//! The ring carries a fixed, totally ordered set of symbols: the construction
//! variables `a1, a2, a3, m, n, f, g, t, y` plus three scratch names `u, v, w`.
//! The ordering of this table is the ordering used by the graded-lex term
//! order, so it must never be rearranged.

use std::fmt;

/// Number of symbols in the ring.
pub const NUM_VARS: usize = 12;

/// Symbol table, in term-order priority (highest first).
pub const VAR_NAMES: [&str; NUM_VARS] = [
    "a1", "a2", "a3", "m", "n", "f", "g", "t", "y", "u", "v", "w",
];

/// Identifier of one ring variable: an index into [`VAR_NAMES`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarId(pub(crate) u8);

pub const A1: VarId = VarId(0);
pub const A2: VarId = VarId(1);
pub const A3: VarId = VarId(2);
pub const M: VarId = VarId(3);
pub const N: VarId = VarId(4);
pub const F: VarId = VarId(5);
pub const G: VarId = VarId(6);
pub const T: VarId = VarId(7);
pub const Y: VarId = VarId(8);
pub const U: VarId = VarId(9);
pub const V: VarId = VarId(10);
pub const W: VarId = VarId(11);

impl VarId {
    pub fn name(self) -> &'static str {
        VAR_NAMES[self.0 as usize]
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Look a variable up by name.
    pub fn from_name(name: &str) -> Option<VarId> {
        VAR_NAMES
            .iter()
            .position(|&n| n == name)
            .map(|i| VarId(i as u8))
    }

    pub fn all() -> impl Iterator<Item = VarId> {
        (0..NUM_VARS as u8).map(VarId)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        for (i, a) in VAR_NAMES.iter().enumerate() {
            for b in &VAR_NAMES[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn roundtrip_by_name() {
        for v in VarId::all() {
            assert_eq!(VarId::from_name(v.name()), Some(v));
        }
        assert_eq!(VarId::from_name("a4"), None);
    }

    #[test]
    fn order_follows_table() {
        assert!(A1 < A2 && A2 < A3 && A3 < M && G < T && T < Y);
    }
}
