//! Permutations of `{0..d-1}` and generator closure.
//!
//! Products are read left to right: `a.then(&b)` applies `a` first, so
//! `(a·b)(i) = b(a(i))`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::lcm;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from its image list, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if d > u16::MAX as usize {
            return Err(Error::InvalidSpec(format!("degree {d} too large")));
        }
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidSpec(format!(
                    "{images:?} is not a permutation of 0..{d}"
                )));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds a permutation of degree `degree` from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= degree || b >= degree {
                    return Err(Error::InvalidSpec(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                images[a] = b;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn then(&self, next: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), next.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| next.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Permutation { images: inv.into() }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    /// Disjoint cycles of length at least 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.image(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.image(cur);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Enumerates the group generated by `gens`, breadth-first from the
/// identity with generators applied on the right in the given order.
/// Returns the elements (identity first) and the index of each generator.
pub fn close_generators(
    gens: &[Permutation],
    cap: usize,
) -> Result<(Vec<Permutation>, Vec<usize>)> {
    let degree = match gens.first() {
        Some(g) => g.degree(),
        None => return Err(Error::InvalidSpec("no generators given".into())),
    };
    if gens.iter().any(|g| g.degree() != degree) {
        return Err(Error::InvalidSpec("generators differ in degree".into()));
    }
    if cap == 0 {
        return Err(Error::CapExceeded { cap });
    }
    let id = Permutation::identity(degree);
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut elements = vec![id.clone()];
    index.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for g in gens {
            let w = elements[u].then(g);
            if !index.contains_key(&w) {
                if elements.len() == cap {
                    return Err(Error::CapExceeded { cap });
                }
                index.insert(w.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(w);
            }
        }
    }
    let gen_idx = gens.iter().map(|g| index[g]).collect();
    Ok((elements, gen_idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_closure(gens: &[Permutation]) -> std::collections::BTreeSet<Permutation> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(Permutation::identity(gens[0].degree()));
        loop {
            let snapshot: Vec<_> = set.iter().cloned().collect();
            let before = set.len();
            for a in &snapshot {
                for b in gens {
                    set.insert(a.then(b));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    #[test]
    fn identity_closure_is_trivial() {
        let (els, gi) = close_generators(&[Permutation::identity(3)], 10).unwrap();
        assert_eq!(els.len(), 1);
        assert_eq!(gi, vec![0]);
    }

    #[test]
    fn s3_from_three_cycle_and_transposition() {
        let r = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let t = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let (els, _) = close_generators(&[r.clone(), t.clone()], 100).unwrap();
        assert_eq!(els.len(), 6);
        let brute = brute_closure(&[r, t]);
        assert_eq!(brute.len(), 6);
        let ours: std::collections::BTreeSet<_> = els.into_iter().collect();
        assert_eq!(ours, brute);
    }

    #[test]
    fn cap_is_enforced() {
        let c5 = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(
            close_generators(&[c5], 3).unwrap_err(),
            Error::CapExceeded { cap: 3 }
        );
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(close_generators(&[], 5).is_err());
    }

    #[test]
    fn composition_convention() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).image(0), 2);
    }

    proptest! {
        #[test]
        fn inverse_composes_to_identity(v in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle()) {
            let p = Permutation::from_images(v).unwrap();
            prop_assert!(p.then(&p.inverse()).is_identity());
            prop_assert!(p.inverse().then(&p).is_identity());
        }

        #[test]
        fn cycle_order_matches_powering(v in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle()) {
            let p = Permutation::from_images(v).unwrap();
            let mut acc = p.clone();
            let mut k = 1;
            while !acc.is_identity() {
                acc = acc.then(&p);
                k += 1;
            }
            prop_assert_eq!(p.order(), k);
        }
    }
}
