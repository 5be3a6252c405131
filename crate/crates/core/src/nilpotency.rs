//! Nilpotency by two independent routes, Schmidt group detection, and the
//! structure certificate for Schmidt groups.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::invariants::{
    center, center_of, commutator_subgroup, derived_subgroup, derived_subgroup_of, element_order,
    profile,
};
use crate::lattice::{
    all_subgroups, frattini, frattini_within, is_normal, join, maximal_subgroups, sylow_subgroups,
    verify_schmidt_lattice, Subgroup, SubgroupLattice,
};
use crate::numtheory::{factorize, multiplicative_order, p_part};
use crate::sections::quotient;

/// Nilpotent iff every Sylow subgroup is unique (hence normal).
pub fn is_nilpotent_sylow(g: &FiniteGroup, lattice: &SubgroupLattice) -> bool {
    factorize(g.order() as u64)
        .iter()
        .all(|&(p, _)| sylow_subgroups(g, lattice, p).len() == 1)
}

/// Sylow test applied to a subgroup `h`, using the lattice members inside it.
pub fn is_nilpotent_sylow_within(lattice: &SubgroupLattice, h: &Subgroup) -> bool {
    let inside = lattice.within(h.members());
    factorize(h.order() as u64).iter().all(|&(p, _)| {
        let target = p_part(h.order() as u64, p) as usize;
        inside
            .iter()
            .filter(|&&i| lattice.get(i).order() == target)
            .count()
            == 1
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LowerCentralSeries {
    pub nilpotent: bool,
    /// Number of steps to reach the trivial subgroup, when it is reached.
    pub class: Option<usize>,
}

/// `γ₁ = G`, `γ_{k+1} = [γ_k, G]`; nilpotent iff the series reaches `{e}`.
pub fn is_nilpotent_lcs(g: &FiniteGroup) -> LowerCentralSeries {
    let whole = Subgroup::whole(g);
    let mut cur = whole.clone();
    let mut steps = 0;
    while !cur.is_trivial() {
        let next = commutator_subgroup(g, &cur, &whole);
        steps += 1;
        if next.order() == cur.order() {
            return LowerCentralSeries {
                nilpotent: false,
                class: None,
            };
        }
        cur = next;
    }
    LowerCentralSeries {
        nilpotent: true,
        class: Some(steps),
    }
}

/// Runs both tests and insists they agree.
pub fn nilpotency_checked(
    g: &FiniteGroup,
    lattice: &SubgroupLattice,
) -> Result<LowerCentralSeries> {
    let sylow = is_nilpotent_sylow(g, lattice);
    let lcs = is_nilpotent_lcs(g);
    if sylow != lcs.nilpotent {
        return Err(Error::NilpotencyTestDisagreement {
            group: g.name().to_string(),
            sylow,
            lcs: lcs.nilpotent,
        });
    }
    Ok(lcs)
}

/// Not nilpotent, while every maximal subgroup is.
pub fn is_schmidt(g: &FiniteGroup, lattice: &SubgroupLattice) -> bool {
    !is_nilpotent_sylow(g, lattice)
        && maximal_subgroups(g, lattice)
            .iter()
            .all(|m| is_nilpotent_sylow_within(lattice, m))
}

/// Whether iterated derived subgroups reach `{e}`.
pub fn is_solvable(g: &FiniteGroup) -> bool {
    let mut cur = Subgroup::whole(g);
    loop {
        if cur.is_trivial() {
            return true;
        }
        let next = derived_subgroup_of(g, &cur);
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub id: char,
    pub description: &'static str,
    pub passed: bool,
}

/// The structure list for a Schmidt group of order `p^m q^n`, with `P` the
/// normal Sylow p-subgroup and `Q = ⟨y⟩` a cyclic Sylow q-subgroup.
#[derive(Clone, Debug)]
pub struct SchmidtCertificate {
    pub p: u64,
    pub q: u64,
    pub m: u32,
    pub n: u32,
    pub r: u64,
    pub sylow_p: Subgroup,
    pub sylow_q: Subgroup,
    pub y: usize,
    pub center: Subgroup,
    pub frattini: Subgroup,
    pub derived: Subgroup,
    pub checklist: Vec<CheckEntry>,
    pub quotient: FiniteGroup,
    pub p1: Subgroup,
    pub q1: Subgroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub p: u64,
    pub q: u64,
    pub m: u32,
    pub n: u32,
    pub r: u64,
    pub order_p_subgroup: usize,
    pub order_center: usize,
    pub order_frattini: usize,
    pub order_derived: usize,
    pub p_abelian: bool,
    pub quotient_order: usize,
    pub quotient_exponent: u64,
    pub quotient_phi: u64,
    pub checklist: BTreeMap<String, bool>,
}

impl SchmidtCertificate {
    pub fn all_passed(&self) -> bool {
        self.checklist.iter().all(|c| c.passed)
    }

    pub fn summary(&self, g: &FiniteGroup) -> CertificateSummary {
        let qp = profile(&self.quotient);
        CertificateSummary {
            p: self.p,
            q: self.q,
            m: self.m,
            n: self.n,
            r: self.r,
            order_p_subgroup: self.sylow_p.order(),
            order_center: self.center.order(),
            order_frattini: self.frattini.order(),
            order_derived: self.derived.order(),
            p_abelian: self.sylow_p.is_abelian(g),
            quotient_order: self.quotient.order(),
            quotient_exponent: qp.exponent,
            quotient_phi: qp.phi,
            checklist: self
                .checklist
                .iter()
                .map(|c| (c.id.to_string(), c.passed))
                .collect(),
        }
    }
}

fn fail(entry: char, detail: impl Into<String>) -> Error {
    Error::CertificateFailure {
        entry,
        detail: detail.into(),
    }
}

/// Builds and checks the certificate. The first failing checklist entry is
/// reported as [`Error::CertificateFailure`].
pub fn schmidt_certificate(
    g: &FiniteGroup,
    lattice: &SubgroupLattice,
) -> Result<SchmidtCertificate> {
    if !is_schmidt(g, lattice) {
        return Err(Error::NotSchmidt);
    }
    let cert = build_certificate(g, lattice)?;
    if let Some(bad) = cert.checklist.iter().find(|c| !c.passed) {
        return Err(fail(bad.id, bad.description));
    }
    Ok(cert)
}

fn build_certificate(g: &FiniteGroup, lattice: &SubgroupLattice) -> Result<SchmidtCertificate> {
    let mut checks: Vec<CheckEntry> = Vec::new();
    let mut check = |id: char, description: &'static str, passed: bool| {
        checks.push(CheckEntry {
            id,
            description,
            passed,
        })
    };

    // (a) two primes; p is the one with a normal Sylow subgroup
    let factors = factorize(g.order() as u64);
    let &[(p0, e0), (p1, e1)] = factors.as_slice() else {
        return Err(fail(
            'a',
            format!("|G| = {} is not a product of two prime powers", g.order()),
        ));
    };
    let unique0 = sylow_subgroups(g, lattice, p0).len() == 1;
    let unique1 = sylow_subgroups(g, lattice, p1).len() == 1;
    let ((p, m), (q, n)) = match (unique0, unique1) {
        (true, false) => ((p0, e0), (p1, e1)),
        (false, true) => ((p1, e1), (p0, e0)),
        _ => return Err(fail('b', "no unique Sylow subgroup for exactly one prime")),
    };
    check('a', "|G| = p^m q^n with p, q distinct primes", p != q);

    // (b)
    let sylow_p = sylow_subgroups(g, lattice, p)[0].clone();
    check('b', "unique Sylow p-subgroup P", is_normal(g, &sylow_p));

    // (c)
    let sylow_q = sylow_subgroups(g, lattice, q)[0].clone();
    let Some(y) = sylow_q
        .members()
        .iter()
        .find(|&x| element_order(g, x) == sylow_q.order() as u64)
    else {
        return Err(fail('c', "Sylow q-subgroup is not cyclic"));
    };
    check('c', "Sylow q-subgroup Q = <y> is cyclic", true);

    let z = center(g);
    let yq = g.pow(y, q);
    check('d', "y^q lies in Z(G)", z.contains(yq));

    let phi_g = frattini(g, lattice);
    check('e', "Z(G) = Phi(G)", z == phi_g);

    let phi_p = frattini_within(g, lattice, &sylow_p);
    let yq_group = Subgroup::generated(g, &[yq]);
    let direct = phi_p.intersection(g, &yq_group).is_trivial()
        && phi_p.members().iter().all(|a| {
            yq_group
                .members()
                .iter()
                .all(|b| g.mul(a, b) == g.mul(b, a))
        })
        && join(g, &phi_p, &yq_group) == z;
    check(
        'f',
        "Z(G) = Phi(P) x <y^q> (internal direct product)",
        direct,
    );

    let derived = derived_subgroup(g);
    check('g', "G' = P", derived == sylow_p);

    let p_derived = derived_subgroup_of(g, &sylow_p);
    check('h', "P' = Phi(P)", p_derived == phi_p);

    let r = multiplicative_order(p, q).expect("distinct primes are coprime");
    let p_r = p.pow(r as u32);
    check(
        'i',
        "|P/P'| = p^r with r the order of p modulo q",
        (sylow_p.order() / p_derived.order()) as u64 == p_r,
    );

    let abelian = sylow_p.is_abelian(g);
    let j_ok = !abelian || {
        let elementary = sylow_p
            .members()
            .iter()
            .all(|x| x == 0 || element_order(g, x) == p);
        let minimal_normal = lattice.within(sylow_p.members()).into_iter().all(|i| {
            let k = lattice.get(i);
            k.is_trivial() || *k == sylow_p || !is_normal(g, k)
        });
        elementary && sylow_p.order() as u64 == p_r && minimal_normal
    };
    check(
        'j',
        "P abelian => P elementary abelian of order p^r and minimal normal",
        j_ok,
    );

    let k_ok = abelian || {
        let zp = center_of(g, &sylow_p);
        zp == p_derived && p_derived == phi_p && (sylow_p.order() / zp.order()) as u64 == p_r
    };
    check(
        'k',
        "P non-abelian => Z(P) = P' = Phi(P) and |P/Z(P)| = p^r",
        k_ok,
    );

    let quo = quotient(g, &z)?;
    let s = quo.group.with_name(format!("{}/Z", g.name()));
    let sp = profile(&s);
    check(
        'l',
        "G/Z(G) has order p^r q, exponent pq and phi = 0",
        sp.order == p_r * q && sp.exponent == p * q && sp.phi == 0,
    );

    let image = |h: &Subgroup| {
        let gens: Vec<usize> = h.generators().iter().map(|&x| quo.coset_map[x]).collect();
        Subgroup::generated(&s, &gens)
    };
    let p1 = image(&sylow_p);
    let q1 = image(&sylow_q);
    let s_lattice = all_subgroups(&s, usize::MAX)?;
    check(
        'm',
        "L(S) = L(P1) u {Q1^x} u {S} for S = G/Z(G)",
        verify_schmidt_lattice(&s, &s_lattice, &p1, &q1),
    );

    Ok(SchmidtCertificate {
        p,
        q,
        m,
        n,
        r,
        sylow_p,
        sylow_q,
        y,
        center: z,
        frattini: phi_g,
        derived,
        checklist: checks,
        quotient: s,
        p1,
        q1,
    })
}
