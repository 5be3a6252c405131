//! Fully enumerated finite groups.
//!
//! Every group indexes its elements `0..n` with the identity at index 0.
//! Multiplication is either an explicit `n × n` table or, for large
//! permutation groups, composition of stored permutations followed by an
//! index lookup.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest order for which associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 200;

#[derive(Clone)]
enum Repr {
    Table(Vec<u32>),
    Perms {
        perms: Vec<Permutation>,
        index: HashMap<Permutation, u32>,
    },
}

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    repr: Repr,
    inverses: Vec<u32>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Wraps a multiplication table without validating it. The caller
    /// guarantees the group axioms and that index 0 is the identity.
    pub(crate) fn from_table_unchecked(
        name: impl Into<String>,
        order: usize,
        table: Vec<u32>,
        generators: Option<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverses = vec![0u32; order];
        for (x, inv) in inverses.iter_mut().enumerate() {
            let row = &table[x * order..(x + 1) * order];
            *inv = row.iter().position(|&v| v == 0).unwrap_or(0) as u32;
        }
        let mut g = FiniteGroup {
            name: name.into(),
            order,
            repr: Repr::Table(table),
            inverses,
            generators: Vec::new(),
            labels,
        };
        g.generators = match generators {
            Some(gens) => gens,
            None => g.greedy_generators(),
        };
        g
    }

    /// Builds a group from its full list of permutations (identity first).
    /// Groups no larger than `table_limit` get an explicit table.
    pub(crate) fn from_permutations(
        name: impl Into<String>,
        perms: Vec<Permutation>,
        generators: Vec<usize>,
        table_limit: usize,
    ) -> Self {
        let order = perms.len();
        debug_assert!(perms[0].is_identity());
        let index: HashMap<Permutation, u32> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverses = perms.iter().map(|p| index[&p.inverse()]).collect();
        let labels = Some(perms.iter().map(|p| p.to_string()).collect());
        let repr = if order <= table_limit {
            let mut table = Vec::with_capacity(order * order);
            for a in &perms {
                for b in &perms {
                    table.push(index[&a.then(b)]);
                }
            }
            Repr::Table(table)
        } else {
            Repr::Perms { perms, index }
        };
        FiniteGroup {
            name: name.into(),
            order,
            repr,
            inverses,
            generators,
            labels,
        }
    }

    /// Restricts a permutation-backed group to a subset of its elements,
    /// keeping permutation storage. `elements[0]` must be the identity.
    pub(crate) fn perm_subgroup(
        &self,
        name: impl Into<String>,
        elements: &[usize],
        generators: Vec<usize>,
        table_limit: usize,
    ) -> Option<Self> {
        let Repr::Perms { perms, .. } = &self.repr else {
            return None;
        };
        let sub: Vec<Permutation> = elements.iter().map(|&e| perms[e].clone()).collect();
        Some(Self::from_permutations(name, sub, generators, table_limit))
    }

    /// Parses the plain-text Cayley table format and verifies every axiom.
    pub fn from_cayley_text(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());
        let (lno, first) = lines
            .next()
            .ok_or_else(|| Error::AxiomViolation("empty Cayley table".into()))?;
        let n: usize = first.trim().parse().map_err(|_| {
            Error::AxiomViolation(format!("line {}: expected the group order", lno + 1))
        })?;
        if n == 0 {
            return Err(Error::AxiomViolation(
                "group order must be at least 1".into(),
            ));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in 0..n {
            let (lno, line) = lines
                .next()
                .ok_or_else(|| Error::AxiomViolation(format!("expected {n} rows, found {row}")))?;
            let before = table.len();
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| {
                    Error::AxiomViolation(format!("line {}: bad entry {tok:?}", lno + 1))
                })?;
                if v >= n {
                    return Err(Error::AxiomViolation(format!(
                        "line {}: entry {v} outside 0..{n} (closure)",
                        lno + 1
                    )));
                }
                table.push(v as u32);
            }
            if table.len() - before != n {
                return Err(Error::AxiomViolation(format!(
                    "line {}: expected {n} entries, found {}",
                    lno + 1,
                    table.len() - before
                )));
            }
        }
        if let Some((lno, _)) = lines.next() {
            return Err(Error::AxiomViolation(format!(
                "line {}: trailing data after {n} rows",
                lno + 1
            )));
        }
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(Error::AxiomViolation(format!(
                    "element 0 is not an identity (fails at element {x})"
                )));
            }
        }
        // Latin square: every row and column is a permutation, so inverses
        // exist and the inverse lookup below is well defined.
        for x in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for y in 0..n {
                if std::mem::replace(&mut row[table[x * n + y] as usize], true) {
                    return Err(Error::AxiomViolation(format!(
                        "row {x} repeats an entry (no cancellation)"
                    )));
                }
                if std::mem::replace(&mut col[table[y * n + x] as usize], true) {
                    return Err(Error::AxiomViolation(format!(
                        "column {x} repeats an entry (no cancellation)"
                    )));
                }
            }
        }
        let g = Self::from_table_unchecked(name, n, table, None, None);
        g.check_axioms()?;
        Ok(g)
    }

    pub fn from_cayley_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_cayley_text(format!("file({})", path.display()), &text)
    }

    /// Renders the group in the Cayley table text format.
    pub fn to_cayley_text(&self) -> String {
        let mut out = format!("# {}\n{}\n", self.name, self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|b| self.mul(a, b).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_table_backed(&self) -> bool {
        matches!(self.repr, Repr::Table(_))
    }

    /// The stored permutation, if this group keeps permutation elements.
    pub fn permutation(&self, x: usize) -> Option<&Permutation> {
        match &self.repr {
            Repr::Perms { perms, .. } => Some(&perms[x]),
            Repr::Table(_) => None,
        }
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub(crate) fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Table(t) => t[a * self.order + b] as usize,
            Repr::Perms { perms, index } => index[&perms[a].then(&perms[b])] as usize,
        }
    }

    #[inline]
    pub fn inverse(&self, x: usize) -> usize {
        self.inverses[x] as usize
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    /// Commutator under the convention `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let xi = self.inverse(x);
        let yi = self.inverse(y);
        self.mul(self.mul(self.mul(xi, yi), x), y)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closure of `gens` under right multiplication, starting from the identity.
    pub fn generate(&self, gens: &[usize]) -> BitSet {
        let mut set = BitSet::new(self.order);
        set.insert(0);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &g in gens {
                let w = self.mul(u, g);
                if set.insert(w) {
                    queue.push(w);
                }
            }
        }
        set
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.generate(&gens);
        for x in 0..self.order {
            if !span.contains(x) {
                gens.push(x);
                span = self.generate(&gens);
            }
        }
        gens
    }

    /// Verifies identity, inverses, closure and associativity. Associativity
    /// is exhaustive up to [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`] and sampled with
    /// `10·n²` seeded random triples above it.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        if let Repr::Table(t) = &self.repr {
            if let Some(bad) = t.iter().find(|&&v| v as usize >= n) {
                return Err(Error::AxiomViolation(format!(
                    "product {bad} is outside 0..{n} (closure)"
                )));
            }
        }
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::AxiomViolation(format!(
                    "element 0 is not a two-sided identity for {x}"
                )));
            }
            let xi = self.inverse(x);
            if self.mul(x, xi) != 0 || self.mul(xi, x) != 0 {
                return Err(Error::AxiomViolation(format!("element {x} has no inverse")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::AxiomViolation(format!(
                    "associativity fails for ({a}, {b}, {c})"
                )));
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assoc(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
            for _ in 0..10 * n * n {
                assoc(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("table_backed", &self.is_table_backed())
            .field("generators", &self.generators)
            .finish()
    }
}
