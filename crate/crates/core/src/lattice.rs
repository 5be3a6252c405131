//! Subgroups, full subgroup lattices, and the lattice-derived subgroups
//! (maximal, Frattini, Sylow).

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::numtheory::p_part;

/// A subgroup of a fixed parent group, stored as a membership bit vector
/// over the parent's element indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: BitSet,
    order: usize,
    gens: Vec<usize>,
    normal: Option<bool>,
    maximal: Option<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut members = BitSet::new(g.order());
        members.insert(0);
        Subgroup {
            members,
            order: 1,
            gens: Vec::new(),
            normal: Some(true),
            maximal: None,
        }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            members: BitSet::full(g.order()),
            order: g.order(),
            gens: g.generators().to_vec(),
            normal: Some(true),
            maximal: Some(false),
        }
    }

    /// The subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut h = Subgroup::trivial(g);
        for &x in gens {
            h = join_element(g, &h, x);
        }
        h
    }

    /// Assembles a subgroup from parts already known to be consistent.
    pub(crate) fn from_raw(members: BitSet, gens: Vec<usize>) -> Self {
        Subgroup {
            order: members.count(),
            members,
            gens,
            normal: None,
            maximal: None,
        }
    }

    /// Wraps a member set the caller knows to be a subgroup.
    pub fn from_members(g: &FiniteGroup, members: BitSet) -> Self {
        let mut h = Subgroup::trivial(g);
        for x in members.iter() {
            if !h.contains(x) {
                h = join_element(g, &h, x);
            }
        }
        debug_assert_eq!(h.members, members, "member set is not a subgroup");
        h
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(other.members())
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Cached normality flag; `None` when not yet computed.
    pub fn normal_flag(&self) -> Option<bool> {
        self.normal
    }

    pub fn maximal_flag(&self) -> Option<bool> {
        self.maximal
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        Subgroup::from_members(g, self.members.intersection(&other.members))
    }

    /// `x H x⁻¹`.
    pub fn conjugate_by(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let members =
            BitSet::from_indices(g.order(), self.members.iter().map(|h| g.conjugate(h, x)));
        Subgroup {
            members,
            order: self.order,
            gens: self.gens.iter().map(|&h| g.conjugate(h, x)).collect(),
            normal: self.normal,
            maximal: self.maximal,
        }
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }
}

/// `⟨H, x⟩`, built as a union of right cosets of `H` (Dimino's method).
pub fn join_element(g: &FiniteGroup, h: &Subgroup, x: usize) -> Subgroup {
    if h.contains(x) {
        return h.clone();
    }
    let base = h.elements();
    let mut gens = h.gens.clone();
    gens.push(x);
    let mut members = h.members.clone();
    let mut order = h.order;
    let mut reps = vec![0usize];
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head];
        head += 1;
        for &s in &gens {
            let c = g.mul(r, s);
            if !members.contains(c) {
                for &b in &base {
                    members.insert(g.mul(b, c));
                }
                order += base.len();
                reps.push(c);
            }
        }
    }
    Subgroup {
        members,
        order,
        gens,
        normal: None,
        maximal: None,
    }
}

/// `⟨A, B⟩`.
pub fn join(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    b.gens
        .iter()
        .fold(a.clone(), |acc, &x| join_element(g, &acc, x))
}

/// Normality test using conjugation by the generators of `G` applied to the
/// generators of `H`.
pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.generators()
        .iter()
        .all(|&x| h.gens.iter().all(|&y| h.contains(g.conjugate(y, x))))
}

/// Every subgroup of a group, sorted by order then by member set.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    supersets: Vec<Vec<usize>>,
    index: HashMap<BitSet, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeSummary {
    pub subgroup_count: usize,
    pub counts_by_order: std::collections::BTreeMap<u64, usize>,
    pub normal_count: usize,
    pub maximal_count: usize,
}

impl SubgroupLattice {
    /// Assembles a lattice from a complete, duplicate-free subgroup list.
    pub(crate) fn from_subgroups(g: &FiniteGroup, mut subgroups: Vec<Subgroup>) -> Self {
        subgroups.sort_by(|a, b| {
            a.order
                .cmp(&b.order)
                .then_with(|| a.members.cmp(&b.members))
        });
        for h in subgroups.iter_mut() {
            h.normal = Some(is_normal(g, h));
        }
        let n = subgroups.len();
        let mut supersets = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&subgroups[i], &subgroups[j]);
                if b.order > a.order && b.order % a.order == 0 && a.is_subgroup_of(b) {
                    supersets[i].push(j);
                }
            }
        }
        let top = n - 1;
        for (i, h) in subgroups.iter_mut().enumerate() {
            h.maximal = Some(i != top && supersets[i] == [top]);
        }
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.members.clone(), i))
            .collect();
        SubgroupLattice {
            subgroups,
            supersets,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn position(&self, members: &BitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn contains(&self, h: &Subgroup) -> bool {
        self.index.contains_key(&h.members)
    }

    pub fn whole_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Indices `j` with `H_i ⊊ H_j`.
    pub fn strict_supersets(&self, i: usize) -> &[usize] {
        &self.supersets[i]
    }

    /// All pairs `(i, j)` with `H_i ⊊ H_j`.
    pub fn inclusion_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.supersets
            .iter()
            .enumerate()
            .flat_map(|(i, js)| js.iter().map(move |&j| (i, j)))
    }

    /// Indices of lattice members contained in `h`, in lattice order.
    pub fn within(&self, h: &BitSet) -> Vec<usize> {
        (0..self.subgroups.len())
            .filter(|&i| self.subgroups[i].members.is_subset(h))
            .collect()
    }

    pub fn summary(&self) -> LatticeSummary {
        let mut counts_by_order = std::collections::BTreeMap::new();
        for h in &self.subgroups {
            *counts_by_order.entry(h.order as u64).or_insert(0) += 1;
        }
        LatticeSummary {
            subgroup_count: self.subgroups.len(),
            counts_by_order,
            normal_count: self
                .subgroups
                .iter()
                .filter(|h| h.normal == Some(true))
                .count(),
            maximal_count: self
                .subgroups
                .iter()
                .filter(|h| h.maximal == Some(true))
                .count(),
        }
    }
}

/// Enumerates every subgroup: seed with the cyclic subgroups, then join each
/// subgroup with each element until nothing new appears. `⟨H, x⟩` depends
/// only on the coset `Hx`, so one representative per coset is joined.
pub fn all_subgroups(g: &FiniteGroup, cap: usize) -> Result<SubgroupLattice> {
    let n = g.order();
    let mut list: Vec<Subgroup> = Vec::new();
    let mut seen: HashMap<BitSet, usize> = HashMap::new();
    let mut work = VecDeque::new();
    let mut push =
        |h: Subgroup, list: &mut Vec<Subgroup>, work: &mut VecDeque<usize>| -> Result<()> {
            if seen.contains_key(&h.members) {
                return Ok(());
            }
            if list.len() == cap {
                return Err(Error::LatticeCapExceeded { cap });
            }
            seen.insert(h.members.clone(), list.len());
            work.push_back(list.len());
            list.push(h);
            Ok(())
        };
    let trivial = Subgroup::trivial(g);
    for x in 0..n {
        push(join_element(g, &trivial, x), &mut list, &mut work)?;
    }
    while let Some(i) = work.pop_front() {
        let h = list[i].clone();
        if h.order == n {
            continue;
        }
        let base = h.elements();
        let mut done = h.members.clone();
        for x in 0..n {
            if done.contains(x) {
                continue;
            }
            for &b in &base {
                done.insert(g.mul(b, x));
            }
            push(join_element(g, &h, x), &mut list, &mut work)?;
        }
    }
    Ok(SubgroupLattice::from_subgroups(g, list))
}

/// Maximal members of the lattice strictly inside `h`.
pub fn maximal_within<'a>(lattice: &'a SubgroupLattice, h: &Subgroup) -> Vec<&'a Subgroup> {
    let Some(top) = lattice.position(&h.members) else {
        return Vec::new();
    };
    lattice
        .within(&h.members)
        .into_iter()
        .filter(|&i| {
            i != top
                && lattice
                    .strict_supersets(i)
                    .iter()
                    .all(|&j| j == top || !lattice.get(j).is_subgroup_of(h))
        })
        .map(|i| lattice.get(i))
        .collect()
}

pub fn maximal_subgroups<'a>(g: &FiniteGroup, lattice: &'a SubgroupLattice) -> Vec<&'a Subgroup> {
    let _ = g;
    lattice
        .subgroups()
        .iter()
        .filter(|h| h.maximal == Some(true))
        .collect()
}

/// Intersection of the maximal subgroups of `h` (`h` itself when it has none).
pub fn frattini_within(g: &FiniteGroup, lattice: &SubgroupLattice, h: &Subgroup) -> Subgroup {
    let mut members = h.members.clone();
    for m in maximal_within(lattice, h) {
        members.intersect_with(&m.members);
    }
    Subgroup::from_members(g, members)
}

pub fn frattini(g: &FiniteGroup, lattice: &SubgroupLattice) -> Subgroup {
    let mut members = BitSet::full(g.order());
    for m in maximal_subgroups(g, lattice) {
        members.intersect_with(&m.members);
    }
    let mut phi = Subgroup::from_members(g, members);
    phi.normal = Some(is_normal(g, &phi));
    phi
}

/// Subgroups of order `|G|_p`; the trivial subgroup when `p ∤ |G|`.
pub fn sylow_subgroups<'a>(
    g: &FiniteGroup,
    lattice: &'a SubgroupLattice,
    p: u64,
) -> Vec<&'a Subgroup> {
    let target = p_part(g.order() as u64, p) as usize;
    lattice
        .subgroups()
        .iter()
        .filter(|h| h.order == target)
        .collect()
}

/// Checks `L(S) = L(P₁) ∪ {Q₁^x : x ∈ S} ∪ {S}` for a candidate Schmidt
/// quotient, together with the shape that makes the decomposition
/// meaningful: `P₁` normal, `Q₁` of prime order not dividing `|P₁|`,
/// `|S| = |P₁|·|Q₁|`, and `Q₁` not normal.
pub fn verify_schmidt_lattice(
    s: &FiniteGroup,
    lattice: &SubgroupLattice,
    p1: &Subgroup,
    q1: &Subgroup,
) -> bool {
    let q = q1.order() as u64;
    if !crate::numtheory::is_prime(q)
        || p1.order() as u64 % q == 0
        || p1.order() * q1.order() != s.order()
        || !is_normal(s, p1)
        || is_normal(s, q1)
    {
        return false;
    }
    let conjugates: Vec<Subgroup> = (0..s.order()).map(|x| q1.conjugate_by(s, x)).collect();
    if !conjugates.iter().all(|c| lattice.contains(c)) || !lattice.contains(p1) {
        return false;
    }
    lattice.subgroups().iter().all(|k| {
        k.is_subgroup_of(p1) || k.order() == s.order() || conjugates.iter().any(|c| c == k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_group, GroupSpec, Limits};

    fn build(spec: GroupSpec) -> FiniteGroup {
        build_group(&spec, &Limits::default()).unwrap()
    }

    fn lat(g: &FiniteGroup) -> SubgroupLattice {
        all_subgroups(g, 100_000).unwrap()
    }

    #[test]
    fn prime_cyclic_has_two_subgroups() {
        for p in [2, 3, 7, 13] {
            let g = build(GroupSpec::Cyclic(p));
            let l = lat(&g);
            assert_eq!(l.len(), 2);
            let maxes = maximal_subgroups(&g, &l);
            assert_eq!(maxes.len(), 1);
            assert!(maxes[0].is_trivial());
        }
    }

    #[test]
    fn s3_lattice() {
        let g = build(GroupSpec::Symmetric(3));
        let l = lat(&g);
        let orders: Vec<usize> = l.subgroups().iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        let normals: Vec<bool> = l.subgroups().iter().map(|h| is_normal(&g, h)).collect();
        assert_eq!(normals, vec![true, false, false, false, true, true]);
        assert_eq!(maximal_subgroups(&g, &l).len(), 4);
        assert!(frattini(&g, &l).is_trivial());
        assert_eq!(sylow_subgroups(&g, &l, 3).len(), 1);
        assert_eq!(sylow_subgroups(&g, &l, 2).len(), 3);
        let s5 = sylow_subgroups(&g, &l, 5);
        assert_eq!(s5.len(), 1);
        assert!(s5[0].is_trivial());
    }

    #[test]
    fn cyclic_maximals_and_frattini() {
        let g = build(GroupSpec::Cyclic(12));
        let l = lat(&g);
        let mut orders: Vec<usize> = maximal_subgroups(&g, &l)
            .iter()
            .map(|h| h.order())
            .collect();
        orders.sort();
        assert_eq!(orders, vec![4, 6]);
        let c4 = build(GroupSpec::Cyclic(4));
        let l4 = lat(&c4);
        assert_eq!(frattini(&c4, &l4).order(), 2);
    }

    #[test]
    fn extraspecial_frattini_is_center() {
        let g = build(GroupSpec::Extraspecial(5));
        let l = lat(&g);
        let phi = frattini(&g, &l);
        assert_eq!(phi.order(), 5);
        assert!(phi.contains(g.commutator(25, 5)));
    }

    #[test]
    fn group375_sylow_five_is_unique_and_normal() {
        let g = build(GroupSpec::Group375);
        let l = lat(&g);
        let p = sylow_subgroups(&g, &l, 5);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].order(), 125);
        assert!(is_normal(&g, p[0]));
        assert_eq!(l.len(), 90);
    }

    #[test]
    fn schmidt_lattice_decomposition_small_cases() {
        let s3 = build(GroupSpec::Symmetric(3));
        let l = lat(&s3);
        let p1 = sylow_subgroups(&s3, &l, 3)[0];
        let q1 = sylow_subgroups(&s3, &l, 2)[0];
        assert!(verify_schmidt_lattice(&s3, &l, p1, q1));
        // swapping roles breaks it
        assert!(!verify_schmidt_lattice(&s3, &l, q1, p1));

        let a4 = build(GroupSpec::Alternating(4));
        let l = lat(&a4);
        let v4 = sylow_subgroups(&a4, &l, 2)[0];
        let c3 = sylow_subgroups(&a4, &l, 3)[0];
        assert_eq!(v4.order(), 4);
        assert!(verify_schmidt_lattice(&a4, &l, v4, c3));

        let c6 = build(GroupSpec::Cyclic(6));
        let l = lat(&c6);
        for a in l.subgroups() {
            for b in l.subgroups() {
                assert!(!verify_schmidt_lattice(&c6, &l, a, b));
            }
        }
    }

    #[test]
    fn generated_and_join() {
        let g = build(GroupSpec::Symmetric(4));
        let h = Subgroup::generated(&g, g.generators());
        assert_eq!(h.order(), 24);
        let a = Subgroup::generated(&g, &[g.generators()[0]]);
        let b = Subgroup::generated(&g, &[g.generators()[1]]);
        assert_eq!(join(&g, &a, &b).order(), 24);
        assert_eq!(a.intersection(&g, &b).order(), 1);
    }
}
