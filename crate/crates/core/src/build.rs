//! Group constructors: named families, products and Cayley files.

use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::numtheory::is_prime;
use crate::perm::{close_generators, Permutation};

/// Resource limits shared by construction and lattice enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group that may be fully enumerated.
    pub element_cap: usize,
    /// Largest number of subgroups a lattice may hold.
    pub lattice_cap: usize,
    /// Permutation groups up to this order get an explicit multiplication table.
    pub table_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: 5_000,
            lattice_cap: 100_000,
            table_limit: 512,
        }
    }
}

/// Built-in automorphism recipes for semidirect products. Each generator of
/// the acting group is sent to the same automorphism of the normal subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedAction {
    Trivial,
    /// `x ↦ x⁻¹` on each generator.
    Inverse,
    /// `x ↦ x^k` on each generator.
    Power(i64),
    /// For a two-generated normal subgroup `⟨x, y⟩`: `x ↦ y`, `y ↦ (xy)⁻¹`.
    /// On `Z_p × Z_p` this is the companion matrix of `t² + t + 1`.
    Companion,
}

impl NamedAction {
    pub fn resolve(&self, normal: &FiniteGroup, acting: &FiniteGroup) -> Result<ActionSpec> {
        let ngens = normal.generators();
        let map: Vec<usize> = match self {
            NamedAction::Trivial => ngens.to_vec(),
            NamedAction::Inverse => ngens.iter().map(|&g| normal.inverse(g)).collect(),
            NamedAction::Power(k) => {
                let m = normal.order() as i64;
                let e = k.rem_euclid(m.max(1)) as u64;
                ngens.iter().map(|&g| normal.pow(g, e)).collect()
            }
            NamedAction::Companion => {
                let &[x, y] = ngens else {
                    return Err(Error::InvalidAction(format!(
                        "companion action needs exactly two generators, {} has {}",
                        normal.name(),
                        ngens.len()
                    )));
                };
                vec![y, normal.inverse(normal.mul(x, y))]
            }
        };
        Ok(ActionSpec {
            images: vec![map; acting.generators().len()],
        })
    }
}

impl fmt::Display for NamedAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedAction::Trivial => write!(f, "trivial"),
            NamedAction::Inverse => write!(f, "inv"),
            NamedAction::Power(k) => write!(f, "pow{k}"),
            NamedAction::Companion => write!(f, "companion"),
        }
    }
}

/// For each generator of the acting group, the images of the normal
/// subgroup's generators (element indices of the normal subgroup).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub images: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    /// Dihedral group of the given order (`2n`).
    Dihedral(u64),
    Symmetric(u64),
    Alternating(u64),
    /// Upper unitriangular 3×3 matrices over `Z_p`, order `p³`.
    Extraspecial(u64),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    SemidirectProduct {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: NamedAction,
    },
    Group375,
    CayleyFile(PathBuf),
}

impl GroupSpec {
    pub fn prod(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::DirectProduct(Box::new(a), Box::new(b))
    }

    pub fn semi(normal: GroupSpec, acting: GroupSpec, action: NamedAction) -> Self {
        GroupSpec::SemidirectProduct {
            normal: Box::new(normal),
            acting: Box::new(acting),
            action,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C({n})"),
            GroupSpec::Dihedral(n) => write!(f, "D({n})"),
            GroupSpec::Symmetric(n) => write!(f, "S({n})"),
            GroupSpec::Alternating(n) => write!(f, "A({n})"),
            GroupSpec::Extraspecial(p) => write!(f, "E({p}^3)"),
            GroupSpec::DirectProduct(a, b) => write!(f, "prod({a}, {b})"),
            GroupSpec::SemidirectProduct {
                normal,
                acting,
                action,
            } => write!(f, "semi({normal}, {acting}, action={action})"),
            GroupSpec::Group375 => write!(f, "G375"),
            GroupSpec::CayleyFile(p) => write!(f, "file({})", p.display()),
        }
    }
}

pub fn build_group(spec: &GroupSpec, limits: &Limits) -> Result<FiniteGroup> {
    let name = spec.to_string();
    let cap = limits.element_cap;
    let check_cap = |n: u64| -> Result<()> {
        if n > cap as u64 {
            Err(Error::CapExceeded { cap })
        } else {
            Ok(())
        }
    };
    let positive = |n: u64, what: &str| -> Result<()> {
        if n == 0 {
            Err(Error::InvalidSpec(format!(
                "{what} parameter must be at least 1"
            )))
        } else {
            Ok(())
        }
    };
    let g = match spec {
        GroupSpec::Cyclic(n) => {
            positive(*n, "cyclic")?;
            check_cap(*n)?;
            cyclic(*n as usize)
        }
        GroupSpec::Dihedral(m) => {
            if *m < 2 || m % 2 != 0 {
                return Err(Error::InvalidSpec(format!(
                    "dihedral order must be even and at least 2, got {m}"
                )));
            }
            check_cap(*m)?;
            dihedral((*m / 2) as usize, limits)?
        }
        GroupSpec::Symmetric(n) => {
            positive(*n, "symmetric")?;
            symmetric(*n as usize, limits)?
        }
        GroupSpec::Alternating(n) => {
            positive(*n, "alternating")?;
            alternating(*n as usize, limits)?
        }
        GroupSpec::Extraspecial(p) => {
            if !is_prime(*p) {
                return Err(Error::InvalidSpec(format!(
                    "extraspecial parameter must be prime, got {p}"
                )));
            }
            check_cap(p.saturating_pow(3))?;
            extraspecial(*p as usize)
        }
        GroupSpec::DirectProduct(a, b) => {
            let a = build_group(a, limits)?;
            let b = build_group(b, limits)?;
            check_cap(a.order() as u64 * b.order() as u64)?;
            direct_product(&a, &b)
        }
        GroupSpec::SemidirectProduct {
            normal,
            acting,
            action,
        } => {
            let n = build_group(normal, limits)?;
            let h = build_group(acting, limits)?;
            check_cap(n.order() as u64 * h.order() as u64)?;
            let action = action.resolve(&n, &h)?;
            semidirect_product(&n, &h, &action)?
        }
        GroupSpec::Group375 => {
            check_cap(375)?;
            let e = extraspecial(5);
            let c3 = cyclic(3);
            let action = NamedAction::Companion.resolve(&e, &c3)?;
            semidirect_product(&e, &c3, &action)?
        }
        GroupSpec::CayleyFile(path) => {
            let g = FiniteGroup::from_cayley_file(path)?;
            check_cap(g.order() as u64)?;
            g
        }
    };
    Ok(g.with_name(name))
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(((a + b) % n) as u32);
        }
    }
    let gens = if n > 1 { vec![1] } else { vec![] };
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    FiniteGroup::from_table_unchecked(format!("C({n})"), n, table, Some(gens), Some(labels))
}

fn perm_group(name: String, gens: Vec<Permutation>, limits: &Limits) -> Result<FiniteGroup> {
    let (els, mut gen_idx) = close_generators(&gens, limits.element_cap)?;
    gen_idx.retain(|&g| g != 0);
    gen_idx.dedup();
    Ok(FiniteGroup::from_permutations(
        name,
        els,
        gen_idx,
        limits.table_limit,
    ))
}

fn dihedral(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    match n {
        1 => Ok(cyclic(2)),
        2 => Ok(direct_product(&cyclic(2), &cyclic(2))),
        _ => {
            let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
            let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
            perm_group(format!("D({})", 2 * n), vec![rot, refl], limits)
        }
    }
}

fn symmetric(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    let gens = match n {
        1 => vec![Permutation::identity(1)],
        2 => vec![Permutation::from_cycles(2, &[&[0, 1]])?],
        _ => {
            let long: Vec<usize> = (0..n).collect();
            vec![
                Permutation::from_cycles(n, &[&long])?,
                Permutation::from_cycles(n, &[&[0, 1]])?,
            ]
        }
    };
    perm_group(format!("S({n})"), gens, limits)
}

fn alternating(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    let gens = if n < 3 {
        vec![Permutation::identity(n)]
    } else {
        (2..n)
            .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]))
            .collect::<Result<Vec<_>>>()?
    };
    perm_group(format!("A({n})"), gens, limits)
}

/// `(a, b, c)·(a′, b′, c′) = (a + a′, b + b′, c + c′ + a·b′)` over `Z_p`,
/// element index `a·p² + b·p + c`, generators `x = (1,0,0)`, `y = (0,1,0)`.
pub fn extraspecial(p: usize) -> FiniteGroup {
    let n = p * p * p;
    let split = |i: usize| (i / (p * p), i / p % p, i % p);
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        let (a, b, c) = split(i);
        for j in 0..n {
            let (a2, b2, c2) = split(j);
            let (ra, rb, rc) = ((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
            table.push((ra * p * p + rb * p + rc) as u32);
        }
    }
    let labels = (0..n)
        .map(|i| {
            let (a, b, c) = split(i);
            format!("({a},{b},{c})")
        })
        .collect();
    FiniteGroup::from_table_unchecked(
        format!("E({p}^3)"),
        n,
        table,
        Some(vec![p * p, p]),
        Some(labels),
    )
}

/// Element `(a, b)` has index `a·|B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        let (a1, b1) = (i / nb, i % nb);
        for j in 0..n {
            let (a2, b2) = (j / nb, j % nb);
            table.push((a.mul(a1, a2) * nb + b.mul(b1, b2)) as u32);
        }
    }
    let gens = a
        .generators()
        .iter()
        .map(|&g| g * nb)
        .chain(b.generators().iter().copied())
        .collect();
    let labels = (0..n)
        .map(|i| format!("({}, {})", a.label(i / nb), b.label(i % nb)))
        .collect();
    FiniteGroup::from_table_unchecked(
        format!("prod({}, {})", a.name(), b.name()),
        n,
        table,
        Some(gens),
        Some(labels),
    )
}

/// Extends generator images to a homomorphism `N → N` by walking the Cayley
/// graph of `N`; fails if two paths disagree or the map is not bijective.
fn extend_automorphism(normal: &FiniteGroup, images: &[usize]) -> Result<Vec<u32>> {
    let gens = normal.generators();
    if images.len() != gens.len() {
        return Err(Error::InvalidAction(format!(
            "expected {} generator images, got {}",
            gens.len(),
            images.len()
        )));
    }
    if let Some(&bad) = images.iter().find(|&&i| i >= normal.order()) {
        return Err(Error::InvalidAction(format!(
            "image index {bad} out of range"
        )));
    }
    let n = normal.order();
    let mut map = vec![u32::MAX; n];
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for (&g, &img) in gens.iter().zip(images) {
            let w = normal.mul(u, g);
            let candidate = normal.mul(map[u] as usize, img) as u32;
            if map[w] == u32::MAX {
                map[w] = candidate;
                queue.push(w);
            } else if map[w] != candidate {
                return Err(Error::InvalidAction(format!(
                    "generator images {images:?} do not extend to a homomorphism of {}",
                    normal.name()
                )));
            }
        }
    }
    let mut hit = vec![false; n];
    for &v in &map {
        if std::mem::replace(&mut hit[v as usize], true) {
            return Err(Error::InvalidAction(format!(
                "generator images {images:?} give a non-bijective endomorphism"
            )));
        }
    }
    Ok(map)
}

/// Builds `N ⋊ H` on the set `N × H` with `(n₁,h₁)(n₂,h₂) = (n₁·(h₁·n₂), h₁h₂)`.
/// Element `(n, h)` has index `n·|H| + h`.
pub fn semidirect_product(
    normal: &FiniteGroup,
    acting: &FiniteGroup,
    action: &ActionSpec,
) -> Result<FiniteGroup> {
    let hgens = acting.generators();
    if action.images.len() != hgens.len() {
        return Err(Error::InvalidAction(format!(
            "expected one automorphism per acting generator ({}), got {}",
            hgens.len(),
            action.images.len()
        )));
    }
    let autos = action
        .images
        .iter()
        .map(|imgs| extend_automorphism(normal, imgs))
        .collect::<Result<Vec<_>>>()?;

    // θ(u·h_i) = θ(u) ∘ α_i; a clash means the assignment ignores a relation of H.
    let (nn, nh) = (normal.order(), acting.order());
    let mut theta: Vec<Option<Vec<u32>>> = vec![None; nh];
    theta[0] = Some((0..nn as u32).collect());
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for (&h, alpha) in hgens.iter().zip(&autos) {
            let w = acting.mul(u, h);
            let tu = theta[u].as_ref().expect("visited");
            let candidate: Vec<u32> = alpha.iter().map(|&x| tu[x as usize]).collect();
            match &theta[w] {
                None => {
                    theta[w] = Some(candidate);
                    queue.push(w);
                }
                Some(existing) if *existing != candidate => {
                    return Err(Error::InvalidAction(format!(
                        "assignment is not a homomorphism {} → Aut({})",
                        acting.name(),
                        normal.name()
                    )));
                }
                Some(_) => {}
            }
        }
    }
    let theta: Vec<Vec<u32>> = theta
        .into_iter()
        .map(|t| t.expect("acting group generated by its generators"))
        .collect();

    let n = nn * nh;
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        let (n1, h1) = (i / nh, i % nh);
        for j in 0..n {
            let (n2, h2) = (j / nh, j % nh);
            let nprod = normal.mul(n1, theta[h1][n2] as usize);
            table.push((nprod * nh + acting.mul(h1, h2)) as u32);
        }
    }
    let gens = normal
        .generators()
        .iter()
        .map(|&g| g * nh)
        .chain(hgens.iter().copied())
        .collect();
    let labels = (0..n)
        .map(|i| format!("({}, {})", normal.label(i / nh), acting.label(i % nh)))
        .collect();
    Ok(FiniteGroup::from_table_unchecked(
        format!("semi({}, {})", normal.name(), acting.name()),
        n,
        table,
        Some(gens),
        Some(labels),
    ))
}

/// Indices of `{(n, e_H)}` inside a semidirect product built above.
pub fn semidirect_normal_indices(normal_order: usize, acting_order: usize) -> Vec<usize> {
    (0..normal_order).map(|k| k * acting_order).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(spec: GroupSpec) -> FiniteGroup {
        build_group(&spec, &Limits::default()).unwrap()
    }

    #[test]
    fn family_orders() {
        use GroupSpec::*;
        let cases = [
            (Cyclic(1), 1),
            (Cyclic(12), 12),
            (Dihedral(2), 2),
            (Dihedral(4), 4),
            (Dihedral(10), 10),
            (Symmetric(1), 1),
            (Symmetric(3), 6),
            (Symmetric(5), 120),
            (Alternating(2), 1),
            (Alternating(4), 12),
            (Alternating(5), 60),
            (Extraspecial(3), 27),
            (Extraspecial(5), 125),
            (Group375, 375),
            (GroupSpec::prod(Cyclic(6), Symmetric(3)), 36),
        ];
        for (spec, n) in cases {
            let name = spec.to_string();
            let g = build(spec);
            assert_eq!(g.order(), n, "{name}");
            assert_eq!(g.name(), name);
            g.check_axioms().unwrap();
        }
    }

    #[test]
    fn invalid_specs() {
        let l = Limits::default();
        assert!(matches!(
            build_group(&GroupSpec::Cyclic(0), &l),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            build_group(&GroupSpec::Dihedral(7), &l),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            build_group(&GroupSpec::Extraspecial(4), &l),
            Err(Error::InvalidSpec(_))
        ));
        assert_eq!(
            build_group(&GroupSpec::Symmetric(7), &l).unwrap_err(),
            Error::CapExceeded { cap: 5000 }
        );
        let small = Limits {
            element_cap: 100,
            ..l
        };
        assert!(build_group(&GroupSpec::Group375, &small).is_err());
    }

    #[test]
    fn frobenius_21_is_nonabelian() {
        let g = build(GroupSpec::semi(
            GroupSpec::Cyclic(7),
            GroupSpec::Cyclic(3),
            NamedAction::Power(2),
        ));
        assert_eq!(g.order(), 21);
        let commuting = (0..21).all(|a| (0..21).all(|b| g.mul(a, b) == g.mul(b, a)));
        assert!(!commuting);
    }

    #[test]
    fn action_must_respect_relations() {
        // squaring has order 3 mod 7, so it cannot be the image of an involution
        let err = build_group(
            &GroupSpec::semi(
                GroupSpec::Cyclic(7),
                GroupSpec::Cyclic(2),
                NamedAction::Power(2),
            ),
            &Limits::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidAction(_)));
        // x ↦ x² is not bijective on C(4)
        let err = build_group(
            &GroupSpec::semi(
                GroupSpec::Cyclic(4),
                GroupSpec::Cyclic(2),
                NamedAction::Power(2),
            ),
            &Limits::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidAction(_)));
        // an element of order 3 cannot map to one of order 2
        let err = build_group(
            &GroupSpec::semi(
                GroupSpec::Symmetric(3),
                GroupSpec::Cyclic(3),
                NamedAction::Companion,
            ),
            &Limits::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidAction(_)));
    }

    #[test]
    fn trivial_acting_group_copies_normal() {
        let n = build(GroupSpec::Symmetric(3));
        let g = build(GroupSpec::semi(
            GroupSpec::Symmetric(3),
            GroupSpec::Cyclic(1),
            NamedAction::Trivial,
        ));
        assert_eq!(g.order(), 6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(g.mul(a, b), n.mul(a, b));
            }
        }
    }

    #[test]
    fn normal_copy_is_closed_and_conjugation_invariant() {
        let g = build(GroupSpec::Group375);
        let idx = semidirect_normal_indices(125, 3);
        let mut member = vec![false; 375];
        for &i in &idx {
            member[i] = true;
        }
        for &a in &idx {
            for &b in &idx {
                assert!(member[g.mul(a, b)]);
            }
            for x in 0..375 {
                assert!(member[g.conjugate(a, x)]);
            }
        }
    }

    #[test]
    fn group375_action_is_order_three_with_determinant_one() {
        // companion matrix rows (0,4),(1,4) over Z_5
        let m = [[0u64, 4], [1, 4]];
        let mul = |a: [[u64; 2]; 2], b: [[u64; 2]; 2]| {
            let mut c = [[0u64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    c[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % 5;
                }
            }
            c
        };
        assert_ne!(mul(m, m), [[1, 0], [0, 1]]);
        assert_eq!(mul(mul(m, m), m), [[1, 0], [0, 1]]);
        assert_eq!((m[0][0] * m[1][1] + 25 - m[0][1] * m[1][0]) % 5, 1);

        // the realized automorphism sends x=(1,0,0) to (0,1,0), y=(0,1,0) to
        // (4,4,0), fixes [x,y]=(0,0,1), and generates a C(3) action
        let e = extraspecial(5);
        let action = NamedAction::Companion.resolve(&e, &cyclic(3)).unwrap();
        assert_eq!(e.label(action.images[0][0]), "(0,1,0)");
        assert_eq!(e.label(action.images[0][1]), "(4,4,0)");
        let alpha = extend_automorphism(&e, &action.images[0]).unwrap();
        let z = e.commutator(25, 5);
        assert_eq!(e.label(z), "(0,0,1)");
        assert_eq!(alpha[z] as usize, z);
        for x in 0..125 {
            let x3 = alpha[alpha[alpha[x] as usize] as usize] as usize;
            assert_eq!(x3, x);
        }
        assert!((0..125).any(|x| alpha[x] as usize != x));
    }

    #[test]
    fn deterministic_construction() {
        for spec in [
            GroupSpec::Symmetric(4),
            GroupSpec::Group375,
            GroupSpec::Dihedral(14),
        ] {
            let a = build(spec.clone());
            let b = build(spec);
            assert_eq!(a.to_cayley_text(), b.to_cayley_text());
        }
    }

    #[test]
    fn large_symmetric_group_keeps_permutations() {
        let g = build(GroupSpec::Symmetric(6));
        assert_eq!(g.order(), 720);
        assert!(!g.is_table_backed());
        let t = build_group(
            &GroupSpec::Symmetric(6),
            &Limits {
                table_limit: 1000,
                ..Limits::default()
            },
        )
        .unwrap();
        assert!(t.is_table_backed());
        for a in (0..720).step_by(7) {
            for b in (0..720).step_by(5) {
                assert_eq!(g.mul(a, b), t.mul(a, b));
            }
        }
    }
}
