//! Checks the section criterion and the weaker subgroup/group-level
//! conditions on concrete groups, plus batch runs over a catalog.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::build::{build_group, GroupSpec, Limits, NamedAction};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::invariants::{phi, profile, GroupProfile};
use crate::lattice::{all_subgroups, LatticeSummary, SubgroupLattice};
use crate::nilpotency::{is_schmidt, nilpotency_checked, schmidt_certificate, CertificateSummary};
use crate::numtheory::{is_prime, multiplicative_order};
use crate::sections::{build_section, materialize_with_normals, sections, Section};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub section: String,
    pub profile: GroupProfile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub group: String,
    pub order: u64,
    /// Agreed verdict of the Sylow and lower-central-series tests.
    pub nilpotent: bool,
    pub nilpotency_class: Option<usize>,
    pub subgroups: usize,
    pub sections_checked: u64,
    /// Section quotients on which both nilpotency tests were run and agreed.
    pub section_quotients_cross_checked: u64,
    pub all_sections_phi_nonzero: bool,
    pub witness: Option<Witness>,
    /// Every subgroup has φ ≠ 0.
    pub condition2: bool,
    /// φ(G) ≠ 0.
    pub condition3: bool,
    pub theorem_consistent: bool,
    pub elapsed_ms: u64,
}

impl TheoremReport {
    /// Broken report invariants; empty for a consistent report.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.nilpotent != self.all_sections_phi_nonzero {
            out.push("nilpotent != all_sections_phi_nonzero");
        }
        if self.all_sections_phi_nonzero && !self.condition2 {
            out.push("all sections phi != 0 but condition2 fails");
        }
        if self.condition2 && !self.condition3 {
            out.push("condition2 holds but condition3 fails");
        }
        if self.witness.is_some() == self.all_sections_phi_nonzero {
            out.push("witness presence does not match the section verdict");
        }
        out
    }
}

/// Runs both nilpotency tests (on `G` and on every section quotient) and
/// computes φ for every section and every subgroup.
pub fn verify_theorem(
    g: &FiniteGroup,
    lattice: &SubgroupLattice,
    limits: &Limits,
) -> Result<TheoremReport> {
    let start = Instant::now();
    let lcs = nilpotency_checked(g, lattice)?;
    let condition3 = phi(g) != 0;
    let mut condition2 = true;
    let mut witness = None;
    let mut sections_checked = 0;
    let mut cross_checked = 0;
    for hi in 0..lattice.len() {
        let (h, normals) = materialize_with_normals(g, lattice, hi, limits.table_limit);
        if phi(&h.group) == 0 {
            condition2 = false;
        }
        for ni in normals {
            let s = build_section(hi, ni, &h, lattice.get(ni));
            sections_checked += 1;
            let prof = profile(&s.quotient);
            if prof.phi == 0 && witness.is_none() {
                witness = Some(Witness {
                    section: s.id(),
                    profile: prof,
                });
            }
            nilpotency_checked(&s.quotient, &s.quotient_lattice(lattice))?;
            cross_checked += 1;
        }
    }
    let all_sections_phi_nonzero = witness.is_none();
    Ok(TheoremReport {
        group: g.name().to_string(),
        order: g.order() as u64,
        nilpotent: lcs.nilpotent,
        nilpotency_class: lcs.class,
        subgroups: lattice.len(),
        sections_checked,
        section_quotients_cross_checked: cross_checked,
        all_sections_phi_nonzero,
        witness,
        condition2,
        condition3,
        theorem_consistent: lcs.nilpotent == all_sections_phi_nonzero,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// First section, in enumeration order, whose quotient has φ = 0.
pub fn find_witness(
    g: &FiniteGroup,
    lattice: &SubgroupLattice,
    limits: &Limits,
) -> Option<Section> {
    sections(g, lattice, limits.table_limit).find(|s| phi(&s.quotient) == 0)
}

/// Every subgroup, taken as a group, has φ ≥ 1.
pub fn check_condition2(g: &FiniteGroup, lattice: &SubgroupLattice, limits: &Limits) -> bool {
    (0..lattice.len()).all(|hi| {
        let (h, _) = materialize_with_normals(g, lattice, hi, limits.table_limit);
        phi(&h.group) != 0
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    PhiZero,
    PhiNonzero,
}

impl Expectation {
    pub fn holds(self, phi: u64) -> bool {
        match self {
            Expectation::PhiZero => phi == 0,
            Expectation::PhiNonzero => phi != 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub family: &'static str,
    pub instance: String,
    pub phi: Option<u64>,
    pub expected: Expectation,
    pub passed: bool,
    pub error: Option<String>,
}

/// Least `k` whose multiplicative order mod `p` is `q`.
pub fn frobenius_power(p: u64, q: u64) -> Option<u64> {
    (2..p).find(|&k| multiplicative_order(k, p) == Some(q))
}

/// `C(p) ⋊ C(q)` with a faithful action, `q | p − 1`.
pub fn frobenius(p: u64, q: u64) -> Option<GroupSpec> {
    let k = frobenius_power(p, q)?;
    Some(GroupSpec::semi(
        GroupSpec::Cyclic(p),
        GroupSpec::Cyclic(q),
        NamedAction::Power(k as i64),
    ))
}

/// What φ must be for groups in the named φ = 0 families (and the `D(8)`
/// control); `None` for groups outside them.
pub fn family_expectation(spec: &GroupSpec) -> Option<(&'static str, Expectation)> {
    match spec {
        GroupSpec::Dihedral(m) if (m / 2) % 2 == 1 && m / 2 >= 3 => {
            Some(("dihedral D(2n), n odd", Expectation::PhiZero))
        }
        GroupSpec::Dihedral(8) => Some(("dihedral D(8) control", Expectation::PhiNonzero)),
        GroupSpec::Symmetric(n) if *n >= 3 => {
            Some(("symmetric S(n), n >= 3", Expectation::PhiZero))
        }
        GroupSpec::Alternating(n) if *n >= 4 => {
            Some(("alternating A(n), n >= 4", Expectation::PhiZero))
        }
        GroupSpec::SemidirectProduct {
            normal,
            acting,
            action: NamedAction::Power(k),
        } => match (normal.as_ref(), acting.as_ref()) {
            (GroupSpec::Cyclic(p), GroupSpec::Cyclic(q))
                if is_prime(*p)
                    && is_prime(*q)
                    && (p - 1) % q == 0
                    && multiplicative_order(k.rem_euclid(*p as i64) as u64, *p) == Some(*q) =>
            {
                Some(("Frobenius C(p) x| C(q)", Expectation::PhiZero))
            }
            _ => None,
        },
        _ => None,
    }
}

/// φ checks over the named families up to `max_n`, the Frobenius
/// stand-ins, and the `D(8)` negative control.
pub fn family_phi_checks(max_n: u64, limits: &Limits) -> Vec<FamilyCheck> {
    let mut specs: Vec<GroupSpec> = Vec::new();
    specs.extend(
        (3..=max_n)
            .filter(|n| n % 2 == 1)
            .map(|n| GroupSpec::Dihedral(2 * n)),
    );
    if max_n >= 4 {
        specs.push(GroupSpec::Dihedral(8));
    }
    specs.extend((3..=max_n.min(7)).map(GroupSpec::Symmetric));
    specs.extend((4..=max_n.min(7)).map(GroupSpec::Alternating));
    for (p, q) in [(7, 3), (11, 5), (13, 3)] {
        specs.extend(frobenius(p, q));
    }
    if !specs.contains(&GroupSpec::Dihedral(10)) {
        specs.push(GroupSpec::Dihedral(10));
    }
    specs
        .into_iter()
        .map(|spec| {
            let (family, expected) = family_expectation(&spec).expect("family member");
            let instance = spec.to_string();
            match build_group(&spec, limits) {
                Ok(g) => {
                    let v = phi(&g);
                    FamilyCheck {
                        family,
                        instance,
                        phi: Some(v),
                        expected,
                        passed: expected.holds(v),
                        error: None,
                    }
                }
                Err(e) => FamilyCheck {
                    family,
                    instance,
                    phi: None,
                    expected,
                    passed: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

/// The families above at small sizes, the extraspecial groups, the products
/// and semidirect products of interest, and nilpotent controls.
pub fn default_catalog() -> Vec<GroupSpec> {
    use GroupSpec::*;
    let mut c: Vec<GroupSpec> = (1..=16).chain([24, 30]).map(Cyclic).collect();
    c.extend((3..=10).map(|n| Dihedral(2 * n)));
    c.extend((3..=6).map(Symmetric));
    c.extend((4..=6).map(Alternating));
    c.extend([Extraspecial(3), Extraspecial(5)]);
    c.push(GroupSpec::prod(Cyclic(6), Symmetric(3)));
    c.push(GroupSpec::prod(Cyclic(2), Alternating(4)));
    c.extend(frobenius(7, 3));
    c.push(GroupSpec::semi(
        GroupSpec::prod(Cyclic(5), Cyclic(5)),
        Cyclic(3),
        NamedAction::Companion,
    ));
    c.push(Group375);
    c
}

#[derive(Clone, Debug)]
pub enum CatalogItem {
    Spec(GroupSpec),
    /// A catalog line that failed to parse.
    Invalid {
        line: usize,
        text: String,
        error: Error,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    Ok,
    Failure,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteEntry {
    pub spec: String,
    pub status: EntryStatus,
    pub profile: Option<GroupProfile>,
    pub lattice: Option<LatticeSummary>,
    pub report: Option<TheoremReport>,
    pub schmidt: Option<bool>,
    pub certificate: Option<CertificateSummary>,
    pub family: Option<&'static str>,
    pub family_check_passed: Option<bool>,
    pub failures: Vec<String>,
    pub disagreement: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub groups: usize,
    pub failures: usize,
    pub disagreements: usize,
    pub errors: usize,
    pub wall_time_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub reports: Vec<SuiteEntry>,
    pub summary: SuiteSummary,
}

impl SuiteEntry {
    fn blank(spec: String) -> Self {
        SuiteEntry {
            spec,
            status: EntryStatus::Ok,
            profile: None,
            lattice: None,
            report: None,
            schmidt: None,
            certificate: None,
            family: None,
            family_check_passed: None,
            failures: Vec::new(),
            disagreement: false,
            error: None,
        }
    }

    fn errored(spec: String, error: &Error) -> Self {
        SuiteEntry {
            status: EntryStatus::Error,
            error: Some(error.to_string()),
            ..Self::blank(spec)
        }
    }
}

/// Builds and verifies one catalog group. Theorem mismatches, nilpotency
/// disagreements, certificate failures and family mismatches are failures;
/// anything that stops the group from being analysed is an error.
pub fn run_one(spec: &GroupSpec, limits: &Limits) -> SuiteEntry {
    let name = spec.to_string();
    let g = match build_group(spec, limits) {
        Ok(g) => g,
        Err(e) => return SuiteEntry::errored(name, &e),
    };
    let lattice = match all_subgroups(&g, limits.lattice_cap) {
        Ok(l) => l,
        Err(e) => return SuiteEntry::errored(name, &e),
    };
    let mut entry = SuiteEntry::blank(name);
    let prof = profile(&g);
    entry.lattice = Some(lattice.summary());

    match verify_theorem(&g, &lattice, limits) {
        Ok(report) => {
            entry
                .failures
                .extend(report.violations().into_iter().map(String::from));
            entry.report = Some(report);
        }
        Err(e @ Error::NilpotencyTestDisagreement { .. }) => {
            entry.disagreement = true;
            entry.failures.push(e.to_string());
        }
        Err(e) => {
            entry.status = EntryStatus::Error;
            entry.error = Some(e.to_string());
        }
    }

    let schmidt = is_schmidt(&g, &lattice);
    entry.schmidt = Some(schmidt);
    if schmidt {
        match schmidt_certificate(&g, &lattice) {
            Ok(cert) => entry.certificate = Some(cert.summary(&g)),
            Err(e) => entry.failures.push(e.to_string()),
        }
    }

    if let Some((family, expected)) = family_expectation(spec) {
        let ok = expected.holds(prof.phi);
        entry.family = Some(family);
        entry.family_check_passed = Some(ok);
        if !ok {
            entry.failures.push(format!(
                "{family}: phi = {} contradicts {expected:?}",
                prof.phi
            ));
        }
    }
    entry.profile = Some(prof);
    if !entry.failures.is_empty() {
        entry.status = EntryStatus::Failure;
    }
    entry
}

/// Runs every catalog item on `jobs` worker threads. Output order follows
/// the catalog regardless of `jobs`.
pub fn run_suite(items: &[CatalogItem], limits: &Limits, jobs: usize) -> SuiteReport {
    let start = Instant::now();
    let work = |item: &CatalogItem| match item {
        CatalogItem::Spec(spec) => run_one(spec, limits),
        CatalogItem::Invalid { line, text, error } => {
            SuiteEntry::errored(format!("line {line}: {text}"), error)
        }
    };
    let reports: Vec<SuiteEntry> = if jobs <= 1 {
        items.iter().map(work).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool")
            .install(|| items.par_iter().map(work).collect())
    };
    let summary = SuiteSummary {
        groups: reports.len(),
        failures: reports
            .iter()
            .filter(|e| e.status == EntryStatus::Failure)
            .count(),
        disagreements: reports.iter().filter(|e| e.disagreement).count(),
        errors: reports
            .iter()
            .filter(|e| e.status == EntryStatus::Error)
            .count(),
        wall_time_ms: start.elapsed().as_millis() as u64,
    };
    SuiteReport { reports, summary }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(spec: GroupSpec) -> (FiniteGroup, SubgroupLattice) {
        let g = build_group(&spec, &Limits::default()).unwrap();
        let l = all_subgroups(&g, 100_000).unwrap();
        (g, l)
    }

    #[test]
    fn cyclic_twelve_has_no_witness() {
        let (g, l) = setup(GroupSpec::Cyclic(12));
        let r = verify_theorem(&g, &l, &Limits::default()).unwrap();
        assert!(r.nilpotent && r.all_sections_phi_nonzero && r.witness.is_none());
        assert!(r.violations().is_empty());
        assert!(find_witness(&g, &l, &Limits::default()).is_none());
    }

    #[test]
    fn s3_witness_is_whole_group() {
        let (g, l) = setup(GroupSpec::Symmetric(3));
        let r = verify_theorem(&g, &l, &Limits::default()).unwrap();
        assert!(!r.nilpotent);
        let w = r.witness.unwrap();
        assert_eq!(w.section, format!("H#{}/N#0", l.whole_index()));
        assert_eq!(w.profile.phi, 0);
        assert!(!r.condition2 && !r.condition3);
    }

    #[test]
    fn z6_x_s3_satisfies_condition3_only() {
        let (g, l) = setup(GroupSpec::prod(
            GroupSpec::Cyclic(6),
            GroupSpec::Symmetric(3),
        ));
        let r = verify_theorem(&g, &l, &Limits::default()).unwrap();
        assert!(r.condition3);
        assert!(!r.condition2);
        assert!(!r.all_sections_phi_nonzero);
        assert!(r.theorem_consistent);
    }

    #[test]
    fn dihedral_ten_witness() {
        let (g, l) = setup(GroupSpec::Dihedral(10));
        let s = find_witness(&g, &l, &Limits::default()).unwrap();
        assert_eq!((s.h_index, s.n_index), (l.whole_index(), 0));
    }

    #[test]
    fn condition2_examples() {
        let (g, l) = setup(GroupSpec::Symmetric(3));
        assert!(!check_condition2(&g, &l, &Limits::default()));
        let (g, l) = setup(GroupSpec::Dihedral(8));
        assert!(check_condition2(&g, &l, &Limits::default()));
    }

    #[test]
    fn family_checks_pass_with_control() {
        let checks = family_phi_checks(6, &Limits::default());
        for c in &checks {
            assert!(c.passed, "{c:?}");
        }
        let d8 = checks.iter().find(|c| c.instance == "D(8)").unwrap();
        assert_eq!(d8.expected, Expectation::PhiNonzero);
        assert!(d8.phi.unwrap() > 0);
        let a5 = checks.iter().find(|c| c.instance == "A(5)").unwrap();
        assert_eq!(a5.phi, Some(0));
        assert!(checks
            .iter()
            .any(|c| c.instance == "semi(C(11), C(5), action=pow3)"));
        // S(7) is beyond the default enumeration cap
        let s7 = family_phi_checks(7, &Limits::default())
            .into_iter()
            .find(|c| c.instance == "S(7)")
            .unwrap();
        assert!(s7.error.is_some() && !s7.passed);
    }

    #[test]
    fn suite_records_errors_and_continues() {
        let items = vec![
            CatalogItem::Spec(GroupSpec::Cyclic(1)),
            CatalogItem::Spec(GroupSpec::Symmetric(7)),
            CatalogItem::Invalid {
                line: 3,
                text: "X(1)".into(),
                error: Error::Parse {
                    pos: 0,
                    msg: "unknown".into(),
                },
            },
            CatalogItem::Spec(GroupSpec::Symmetric(3)),
        ];
        let r = run_suite(&items, &Limits::default(), 1);
        assert_eq!(r.summary.groups, 4);
        assert_eq!(r.summary.errors, 2);
        assert_eq!(r.summary.failures, 0);
        assert_eq!(r.reports[3].schmidt, Some(true));
        assert!(r.reports[3].certificate.is_some());
    }
}
