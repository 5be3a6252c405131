//! Quotient groups and enumeration of all sections `H/N`.

use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::{is_normal, Subgroup, SubgroupLattice};

/// A subgroup re-indexed as a standalone group.
#[derive(Clone, Debug)]
pub struct MaterializedSubgroup {
    pub group: FiniteGroup,
    /// Local index → parent index (ascending, identity first).
    pub elements: Vec<usize>,
    local: Vec<u32>,
}

impl MaterializedSubgroup {
    pub fn local_index(&self, parent: usize) -> Option<usize> {
        match self.local[parent] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// Re-expresses a subgroup of the parent lying inside this one.
    pub fn localize(&self, k: &Subgroup) -> Subgroup {
        let members = BitSet::from_indices(
            self.elements.len(),
            k.members().iter().map(|x| self.local[x] as usize),
        );
        let gens = k
            .generators()
            .iter()
            .map(|&x| self.local[x] as usize)
            .collect();
        Subgroup::from_raw(members, gens)
    }
}

/// Re-indexes `h` as a group in its own right. Permutation-backed parents
/// keep permutation storage (with a table when small enough).
pub fn materialize(
    g: &FiniteGroup,
    h: &Subgroup,
    table_limit: usize,
    name: impl Into<String>,
) -> MaterializedSubgroup {
    let elements = h.elements();
    let mut local = vec![u32::MAX; g.order()];
    for (i, &x) in elements.iter().enumerate() {
        local[x] = i as u32;
    }
    let gens: Vec<usize> = h.generators().iter().map(|&x| local[x] as usize).collect();
    let name = name.into();
    let group = match g.perm_subgroup(name.clone(), &elements, gens.clone(), table_limit) {
        Some(pg) => pg,
        None => {
            let n = elements.len();
            let mut table = Vec::with_capacity(n * n);
            for &a in &elements {
                for &b in &elements {
                    table.push(local[g.mul(a, b)]);
                }
            }
            let labels = g
                .labels()
                .map(|l| elements.iter().map(|&x| l[x].clone()).collect());
            FiniteGroup::from_table_unchecked(name, n, table, Some(gens), labels)
        }
    };
    MaterializedSubgroup {
        group,
        elements,
        local,
    }
}

/// `H/N` together with the map from `H`'s indices to coset indices.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub coset_map: Vec<usize>,
    /// Least element of each coset.
    pub representatives: Vec<usize>,
}

/// Left cosets `aN` with their least element as representative; cosets are
/// indexed by ascending representative, so the identity coset is 0.
pub fn quotient(h: &FiniteGroup, n: &Subgroup) -> Result<Quotient> {
    if !is_normal(h, n) {
        return Err(Error::NotNormal);
    }
    let n_els = n.elements();
    let mut coset_map = vec![usize::MAX; h.order()];
    let mut representatives = Vec::new();
    for x in 0..h.order() {
        if coset_map[x] != usize::MAX {
            continue;
        }
        let k = representatives.len();
        representatives.push(x);
        for &m in &n_els {
            coset_map[h.mul(x, m)] = k;
        }
    }
    let q = representatives.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &representatives {
        for &b in &representatives {
            table.push(coset_map[h.mul(a, b)] as u32);
        }
    }
    let mut gens: Vec<usize> = h
        .generators()
        .iter()
        .map(|&x| coset_map[x])
        .filter(|&c| c != 0)
        .collect();
    gens.sort_unstable();
    gens.dedup();
    let labels = representatives
        .iter()
        .map(|&r| format!("{}N", h.label(r)))
        .collect();
    let group = FiniteGroup::from_table_unchecked(
        format!("{}/N", h.name()),
        q,
        table,
        Some(gens),
        Some(labels),
    );
    Ok(Quotient {
        group,
        coset_map,
        representatives,
    })
}

/// A section `H/N` of a parent group, with `H` and `N` identified by their
/// positions in the parent's lattice.
#[derive(Clone, Debug)]
pub struct Section {
    pub h_index: usize,
    pub n_index: usize,
    pub h: Arc<MaterializedSubgroup>,
    /// `N` in `H`'s local indices.
    pub n: Subgroup,
    pub quotient: FiniteGroup,
    /// `H`-local index → coset index.
    pub coset_map: Vec<usize>,
}

impl Section {
    pub fn id(&self) -> String {
        section_id(self.h_index, self.n_index)
    }

    /// Lattice of `H/N` via the correspondence theorem: images of the
    /// parent-lattice members `K` with `N ≤ K ≤ H`.
    pub fn quotient_lattice(&self, parent: &SubgroupLattice) -> SubgroupLattice {
        let h_members = parent.get(self.h_index).members();
        let n_members = parent.get(self.n_index).members();
        let q = &self.quotient;
        let subgroups = parent
            .within(h_members)
            .into_iter()
            .filter(|&i| n_members.is_subset(parent.get(i).members()))
            .map(|i| {
                let k = parent.get(i);
                let image = |x: usize| self.coset_map[self.h.local_index(x).expect("K ≤ H")];
                let members = BitSet::from_indices(q.order(), k.members().iter().map(image));
                let mut gens: Vec<usize> = k
                    .generators()
                    .iter()
                    .map(|&x| image(x))
                    .filter(|&c| c != 0)
                    .collect();
                gens.dedup();
                Subgroup::from_raw(members, gens)
            })
            .collect();
        SubgroupLattice::from_subgroups(q, subgroups)
    }
}

pub fn section_id(h: usize, n: usize) -> String {
    format!("H#{h}/N#{n}")
}

/// Whether lattice member `n` is a normal subgroup of lattice member `h`.
pub fn is_normal_in(g: &FiniteGroup, h: &Subgroup, n: &Subgroup) -> bool {
    n.is_subgroup_of(h)
        && h.generators().iter().all(|&x| {
            n.generators()
                .iter()
                .all(|&y| n.contains(g.conjugate(y, x)))
        })
}

pub(crate) fn build_section(
    h_index: usize,
    n_index: usize,
    h: &Arc<MaterializedSubgroup>,
    n_parent: &Subgroup,
) -> Section {
    let n = h.localize(n_parent);
    let q = quotient(&h.group, &n).expect("normality checked against the parent");
    Section {
        h_index,
        n_index,
        h: Arc::clone(h),
        quotient: q.group.with_name(format!("{}/N#{n_index}", h.group.name())),
        n,
        coset_map: q.coset_map,
    }
}

/// Lazily yields every section `(H, N)` with `N ⊴ H`, `H` ascending in
/// lattice order and then `N` ascending.
pub struct Sections<'a> {
    g: &'a FiniteGroup,
    lattice: &'a SubgroupLattice,
    table_limit: usize,
    next_h: usize,
    current: Option<(Arc<MaterializedSubgroup>, Vec<usize>, usize)>,
    current_h: usize,
}

impl<'a> Sections<'a> {
    /// The materialized `H` of the most recently yielded section.
    pub fn current_subgroup(&self) -> Option<&Arc<MaterializedSubgroup>> {
        self.current.as_ref().map(|(h, _, _)| h)
    }
}

impl Iterator for Sections<'_> {
    type Item = Section;

    fn next(&mut self) -> Option<Section> {
        loop {
            if let Some((h, normals, pos)) = &mut self.current {
                if *pos < normals.len() {
                    let n_index = normals[*pos];
                    *pos += 1;
                    return Some(build_section(
                        self.current_h,
                        n_index,
                        h,
                        self.lattice.get(n_index),
                    ));
                }
            }
            if self.next_h >= self.lattice.len() {
                return None;
            }
            let hi = self.next_h;
            self.next_h += 1;
            let (h, normals) = materialize_with_normals(self.g, self.lattice, hi, self.table_limit);
            self.current_h = hi;
            self.current = Some((h, normals, 0));
        }
    }
}

/// Materializes lattice member `hi` and lists the lattice members normal in it.
pub(crate) fn materialize_with_normals(
    g: &FiniteGroup,
    lattice: &SubgroupLattice,
    hi: usize,
    table_limit: usize,
) -> (Arc<MaterializedSubgroup>, Vec<usize>) {
    let h_sub = lattice.get(hi);
    let h = Arc::new(materialize(
        g,
        h_sub,
        table_limit,
        format!("{}:H#{hi}", g.name()),
    ));
    let normals = lattice
        .within(h_sub.members())
        .into_iter()
        .filter(|&ni| is_normal_in(g, h_sub, lattice.get(ni)))
        .collect();
    (h, normals)
}

pub fn sections<'a>(
    g: &'a FiniteGroup,
    lattice: &'a SubgroupLattice,
    table_limit: usize,
) -> Sections<'a> {
    Sections {
        g,
        lattice,
        table_limit,
        next_h: 0,
        current: None,
        current_h: 0,
    }
}
