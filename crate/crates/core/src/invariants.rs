//! Element orders, exponent, φ, center, derived subgroup and profiles.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::group::FiniteGroup;
use crate::lattice::{join_element, Subgroup};
use crate::numtheory::lcm;

/// Invariant fingerprint of a group. Histogram keys are element orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupProfile {
    pub order: u64,
    pub exponent: u64,
    pub phi: u64,
    pub histogram: BTreeMap<u64, u64>,
}

/// Least `k ≥ 1` with `x^k = e`, by repeated multiplication.
pub fn element_order_by_powers(g: &FiniteGroup, x: usize) -> u64 {
    let mut acc = x;
    let mut k = 1;
    while acc != g.identity() {
        acc = g.mul(acc, x);
        k += 1;
    }
    k
}

/// Element order: cycle-structure lcm for permutation-backed groups,
/// repeated multiplication otherwise.
pub fn element_order(g: &FiniteGroup, x: usize) -> u64 {
    match g.permutation(x) {
        Some(p) => p.order(),
        None => element_order_by_powers(g, x),
    }
}

pub fn order_histogram(g: &FiniteGroup) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    for x in 0..g.order() {
        *hist.entry(element_order(g, x)).or_insert(0) += 1;
    }
    hist
}

fn exponent_of(hist: &BTreeMap<u64, u64>) -> u64 {
    hist.keys().fold(1, |acc, &k| lcm(acc, k))
}

pub fn exponent(g: &FiniteGroup) -> u64 {
    exponent_of(&order_histogram(g))
}

/// `φ(G) = |{a ∈ G : o(a) = exp(G)}|`.
pub fn phi(g: &FiniteGroup) -> u64 {
    profile(g).phi
}

pub fn profile(g: &FiniteGroup) -> GroupProfile {
    let histogram = order_histogram(g);
    let exponent = exponent_of(&histogram);
    let phi = histogram.get(&exponent).copied().unwrap_or(0);
    GroupProfile {
        order: g.order() as u64,
        exponent,
        phi,
        histogram,
    }
}

/// Elements of `h` commuting with every generator of `h` (the center of
/// `h`, or `Z(G)` when `h` is the whole group).
pub fn center_of(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let members = BitSet::from_indices(
        g.order(),
        h.members()
            .iter()
            .filter(|&z| h.generators().iter().all(|&x| g.mul(z, x) == g.mul(x, z))),
    );
    Subgroup::from_members(g, members)
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    center_of(g, &Subgroup::whole(g))
}

/// `[A, B] = ⟨[a, b] : a ∈ A, b ∈ B⟩`.
pub fn commutator_subgroup(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let a_els = a.elements();
    let b_els = b.elements();
    let mut k = Subgroup::trivial(g);
    for &x in &a_els {
        for &y in &b_els {
            let c = g.commutator(x, y);
            if !k.contains(c) {
                k = join_element(g, &k, c);
            }
        }
    }
    k
}

pub fn derived_subgroup_of(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    commutator_subgroup(g, h, h)
}

pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    derived_subgroup_of(g, &Subgroup::whole(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_group, GroupSpec, Limits};
    use crate::lattice::is_normal;

    fn build(spec: GroupSpec) -> FiniteGroup {
        build_group(&spec, &Limits::default()).unwrap()
    }

    /// Order by scanning powers from scratch, independent of both code paths.
    fn brute_order(g: &FiniteGroup, x: usize) -> u64 {
        (1..=g.order() as u64).find(|&k| g.pow(x, k) == 0).unwrap()
    }

    #[test]
    fn element_orders() {
        let c12 = build(GroupSpec::Cyclic(12));
        assert_eq!(element_order(&c12, 0), 1);
        assert_eq!(element_order(&c12, 1), 12);
        let s3 = build(GroupSpec::Symmetric(3));
        let three_cycle = (0..6).find(|&i| s3.label(i) == "(0 1 2)").unwrap();
        assert_eq!(element_order(&s3, three_cycle), 3);
    }

    #[test]
    fn s3_exponent_from_brute_orders() {
        let s3 = build(GroupSpec::Symmetric(3));
        let orders: Vec<u64> = (0..6).map(|x| brute_order(&s3, x)).collect();
        let lcm_all = orders.iter().fold(1, |a, &b| lcm(a, b));
        assert_eq!(lcm_all, 6);
        assert_eq!(exponent(&s3), 6);
        assert_eq!(phi(&s3), 0);
    }

    #[test]
    fn cross_validate_order_paths() {
        for spec in [
            GroupSpec::Symmetric(5),
            GroupSpec::Alternating(5),
            GroupSpec::Dihedral(18),
        ] {
            let g = build(spec);
            for x in 0..g.order() {
                let by_cycles = g.permutation(x).map(|p| p.order());
                let by_powers = element_order_by_powers(&g, x);
                assert_eq!(by_powers, brute_order(&g, x));
                if let Some(c) = by_cycles {
                    assert_eq!(c, by_powers);
                }
            }
        }
        // S(6) is permutation-backed, so element_order takes the cycle path
        let s6 = build(GroupSpec::Symmetric(6));
        for x in (0..720).step_by(11) {
            assert_eq!(element_order(&s6, x), element_order_by_powers(&s6, x));
        }
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(&build(GroupSpec::Cyclic(1))), 1);
        assert_eq!(phi(&build(GroupSpec::Symmetric(3))), 0);
        assert_eq!(phi(&build(GroupSpec::Alternating(4))), 0);
    }

    #[test]
    fn phi_z6_x_s3_matches_brute_count() {
        let g = build(GroupSpec::prod(
            GroupSpec::Cyclic(6),
            GroupSpec::Symmetric(3),
        ));
        let orders: Vec<u64> = (0..36).map(|x| brute_order(&g, x)).collect();
        let exp = orders.iter().fold(1, |a, &b| lcm(a, b));
        let count = orders.iter().filter(|&&o| o == exp).count() as u64;
        assert_eq!((exp, count), (6, 20));
        assert_eq!(phi(&g), count);
    }

    #[test]
    fn profiles() {
        let p = profile(&build(GroupSpec::Cyclic(6)));
        assert_eq!(p.order, 6);
        assert_eq!(p.exponent, 6);
        assert_eq!(p.phi, 2);
        assert_eq!(
            p.histogram,
            BTreeMap::from([(1, 1), (2, 1), (3, 2), (6, 2)])
        );
        let t = profile(&build(GroupSpec::Cyclic(1)));
        assert_eq!((t.order, t.exponent, t.phi), (1, 1, 1));
        assert_eq!(t.histogram, BTreeMap::from([(1, 1)]));
        let d = profile(&build(GroupSpec::Dihedral(10)));
        assert_eq!((d.exponent, d.phi), (10, 0));
    }

    #[test]
    fn centers() {
        let c = build(GroupSpec::Cyclic(9));
        assert_eq!(center(&c).order(), 9);
        let s3 = build(GroupSpec::Symmetric(3));
        let z = center(&s3);
        assert!(z.is_trivial());
        // brute force: z commutes with all six elements
        let brute: Vec<usize> = (0..6)
            .filter(|&z| (0..6).all(|x| s3.mul(z, x) == s3.mul(x, z)))
            .collect();
        assert_eq!(brute, vec![0]);
        let e5 = build(GroupSpec::Extraspecial(5));
        let z = center(&e5);
        assert_eq!(z.order(), 5);
        assert!(z.contains(e5.commutator(25, 5)));
        assert!(is_normal(&e5, &z));
    }

    #[test]
    fn derived_subgroups() {
        assert!(derived_subgroup(&build(GroupSpec::Cyclic(10))).is_trivial());
        let s3 = build(GroupSpec::Symmetric(3));
        let d = derived_subgroup(&s3);
        assert_eq!(d.order(), 3);
        assert!(is_normal(&s3, &d));
        assert_eq!(
            derived_subgroup(&build(GroupSpec::Alternating(4))).order(),
            4
        );
        assert_eq!(
            derived_subgroup(&build(GroupSpec::Symmetric(4))).order(),
            12
        );
    }

    #[test]
    fn direct_product_exponent_is_lcm() {
        let pairs = [
            (GroupSpec::Cyclic(4), GroupSpec::Cyclic(6)),
            (GroupSpec::Symmetric(3), GroupSpec::Dihedral(8)),
            (GroupSpec::Cyclic(2), GroupSpec::Alternating(4)),
        ];
        for (a, b) in pairs {
            let ea = exponent(&build(a.clone()));
            let eb = exponent(&build(b.clone()));
            assert_eq!(exponent(&build(GroupSpec::prod(a, b))), lcm(ea, eb));
        }
    }
}
