//! Exhaustive enumeration of small semigroups and monoids, and corpus-wide
//! cross-checks of the variety machinery.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Element, FiniteSemigroup};
use crate::varieties::{
    self, check_identity, lzg_via_local_monoids, verify_omega_distrib, verify_zg_interleave, zg_by_definition,
    IdentityName, Outcome, Strictness, Variety,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("order must be at least 1")]
    BadOrder,
    #[error("order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("unknown corpus check `{0}`")]
    UnknownCheck(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumSpec {
    pub order: usize,
    pub require_identity: bool,
    pub up_to_isomorphism: bool,
    /// Only structures in every listed variety are kept. Monoid varieties
    /// reject structures without an identity.
    pub filters: Vec<Variety>,
}

impl EnumSpec {
    pub fn semigroups(order: usize) -> Self {
        EnumSpec {
            order,
            require_identity: false,
            up_to_isomorphism: false,
            filters: Vec::new(),
        }
    }

    pub fn monoids(order: usize) -> Self {
        EnumSpec {
            require_identity: true,
            ..Self::semigroups(order)
        }
    }

    pub fn up_to_iso(mut self) -> Self {
        self.up_to_isomorphism = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumCaps {
    pub labeled: usize,
    pub isomorphism: usize,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps {
            labeled: 4,
            isomorphism: 5,
        }
    }
}

const UNSET: u8 = u8::MAX;

struct Search {
    k: usize,
    table: Vec<u8>,
}

impl Search {
    fn get(&self, x: usize, y: usize) -> Option<usize> {
        let v = self.table[x * self.k + y];
        (v != UNSET).then_some(v as usize)
    }

    fn triple_ok(&self, a: usize, b: usize, c: usize) -> bool {
        let lhs = self.get(a, b).and_then(|ab| self.get(ab, c));
        let rhs = self.get(b, c).and_then(|bc| self.get(a, bc));
        match (lhs, rhs) {
            (Some(l), Some(r)) => l == r,
            _ => true,
        }
    }

    /// Checks every triple in which cell `(x, y)` takes part.
    fn consistent_at(&self, x: usize, y: usize) -> bool {
        let k = self.k;
        for c in 0..k {
            if !self.triple_ok(x, y, c) || !self.triple_ok(c, x, y) {
                return false;
            }
        }
        for a in 0..k {
            for b in 0..k {
                if self.get(a, b) == Some(x) && !self.triple_ok(a, b, y) {
                    return false;
                }
                if self.get(a, b) == Some(y) && !self.triple_ok(x, a, b) {
                    return false;
                }
            }
        }
        true
    }

    fn fill(&mut self, cell: usize, out: &mut Vec<Vec<u8>>) {
        if cell == self.table.len() {
            out.push(self.table.clone());
            return;
        }
        let (x, y) = (cell / self.k, cell % self.k);
        for v in 0..self.k as u8 {
            self.table[cell] = v;
            if self.consistent_at(x, y) {
                self.fill(cell + 1, out);
            }
        }
        self.table[cell] = UNSET;
    }
}

/// Every associative table of order `k`, in lexicographic order.
fn labeled_tables(k: usize) -> Vec<Vec<u8>> {
    let mut branches: Vec<Vec<Vec<u8>>> = (0..k as u8)
        .into_par_iter()
        .map(|first| {
            let mut s = Search {
                k,
                table: vec![UNSET; k * k],
            };
            s.table[0] = first;
            let mut out = Vec::new();
            if s.consistent_at(0, 0) {
                s.fill(1, &mut out);
            }
            out
        })
        .collect();
    let mut all: Vec<Vec<u8>> = branches.drain(..).flatten().collect();
    all.sort_unstable();
    all
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn relabel(table: &[u8], k: usize, perm: &[usize]) -> Vec<u8> {
    let mut out = vec![0u8; k * k];
    for x in 0..k {
        for y in 0..k {
            out[perm[x] * k + perm[y]] = perm[table[x * k + y] as usize] as u8;
        }
    }
    out
}

fn canonical_with(table: &[u8], k: usize, perms: &[Vec<usize>]) -> Vec<u8> {
    perms
        .iter()
        .map(|p| relabel(table, k, p))
        .min()
        .expect("at least the identity permutation")
}

/// Lexicographically least flattened table among all relabellings.
pub fn canonical_form(s: &FiniteSemigroup) -> Vec<u8> {
    let k = s.order();
    let table: Vec<u8> = s.flat_table().iter().map(|&x| x as u8).collect();
    canonical_with(&table, k, &permutations(k))
}

fn to_semigroup(table: &[u8], k: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_flat(k, table.iter().map(|&x| x as Element).collect(), None)
        .expect("enumerated tables are associative")
}

fn passes_filters(s: &FiniteSemigroup, filters: &[Variety]) -> bool {
    filters
        .iter()
        .all(|&v| varieties::is_in(s, v).map(|r| r.member).unwrap_or(false))
}

/// Enumerates under the default caps.
pub fn enumerate(spec: &EnumSpec) -> Result<Vec<FiniteSemigroup>, EnumError> {
    enumerate_with_caps(spec, EnumCaps::default())
}

/// Sorted by flattened table; canonical representatives when isomorphism
/// classes are requested.
pub fn enumerate_with_caps(spec: &EnumSpec, caps: EnumCaps) -> Result<Vec<FiniteSemigroup>, EnumError> {
    let k = spec.order;
    if k == 0 {
        return Err(EnumError::BadOrder);
    }
    let cap = if spec.up_to_isomorphism { caps.isomorphism } else { caps.labeled };
    if k > cap {
        return Err(EnumError::CapExceeded { order: k, cap });
    }
    let tables = labeled_tables(k);
    let tables: Vec<Vec<u8>> = if spec.up_to_isomorphism {
        let perms = permutations(k);
        let classes: BTreeSet<Vec<u8>> = tables
            .par_iter()
            .map(|t| canonical_with(t, k, &perms))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        classes.into_iter().collect()
    } else {
        tables
    };
    let out: Vec<FiniteSemigroup> = tables
        .par_iter()
        .map(|t| to_semigroup(t, k))
        .filter(|s| !spec.require_identity || s.is_monoid())
        .filter(|s| passes_filters(s, &spec.filters))
        .collect();
    Ok(out)
}

/// Writes one Cayley-table JSON record per line.
pub fn write_jsonl<W: Write>(corpus: &[FiniteSemigroup], mut w: W) -> io::Result<()> {
    for s in corpus {
        serde_json::to_writer(&mut w, &s.to_cayley())?;
        writeln!(w)?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorpusCheck {
    /// The ZG equation against centrality of group elements.
    ZgDefinition,
    /// The LZG_EQ identity against the local-monoid test.
    LzgLocal,
    /// `(xy)^ω = x^ω y^ω` on ZG members.
    OmegaDistrib,
    /// `ZG_p` membership implies `period | p`, for `p = 1..=max`.
    PeriodDivides(u32),
    /// On monoids, MNil against ZG with aperiodicity.
    MNil,
    /// The interleaving identity on ZG members, for all tuples of length
    /// `|M| + 1`.
    Interleave,
}

impl CorpusCheck {
    pub fn all() -> Vec<CorpusCheck> {
        vec![
            CorpusCheck::ZgDefinition,
            CorpusCheck::LzgLocal,
            CorpusCheck::OmegaDistrib,
            CorpusCheck::PeriodDivides(6),
            CorpusCheck::MNil,
            CorpusCheck::Interleave,
        ]
    }
}

impl fmt::Display for CorpusCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusCheck::ZgDefinition => write!(f, "zg-definition"),
            CorpusCheck::LzgLocal => write!(f, "lzg-local"),
            CorpusCheck::OmegaDistrib => write!(f, "omega-distrib"),
            CorpusCheck::PeriodDivides(p) => write!(f, "period-divides({p})"),
            CorpusCheck::MNil => write!(f, "mnil"),
            CorpusCheck::Interleave => write!(f, "interleave"),
        }
    }
}

impl FromStr for CorpusCheck {
    type Err = EnumError;

    fn from_str(s: &str) -> Result<Self, EnumError> {
        let bad = || EnumError::UnknownCheck(s.to_string());
        Ok(match s {
            "zg-definition" => CorpusCheck::ZgDefinition,
            "lzg-local" => CorpusCheck::LzgLocal,
            "omega-distrib" => CorpusCheck::OmegaDistrib,
            "period-divides" => CorpusCheck::PeriodDivides(6),
            "mnil" => CorpusCheck::MNil,
            "interleave" => CorpusCheck::Interleave,
            _ => {
                let p = s
                    .strip_prefix("period-divides(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(bad)?;
                CorpusCheck::PeriodDivides(p.parse().map_err(|_| bad())?)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    pub table: Vec<Vec<Element>>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    /// Structures the check applied to.
    pub applicable: usize,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub structures: usize,
    pub checks: Vec<CheckReport>,
}

impl CorpusReport {
    pub fn violation_count(&self) -> usize {
        self.checks.iter().map(|c| c.violations.len()).sum()
    }
}

fn passes(s: &FiniteSemigroup, id: IdentityName) -> bool {
    check_identity(s, id, Strictness::Lenient)
        .expect("identities used in corpus checks have small arity")
        .is_pass()
}

/// `None` when the check does not apply, else the list of failures.
fn run_check(s: &FiniteSemigroup, check: CorpusCheck) -> Option<Vec<String>> {
    let zg = || passes(s, IdentityName::Zg);
    match check {
        CorpusCheck::ZgDefinition => {
            let (eq, def) = (zg(), zg_by_definition(s));
            Some(if eq == def {
                vec![]
            } else {
                vec![format!("equation says {eq}, definition says {def}")]
            })
        }
        CorpusCheck::LzgLocal => {
            let eq = passes(s, IdentityName::LzgEq);
            let local = lzg_via_local_monoids(s, None).member;
            Some(if eq == local {
                vec![]
            } else {
                vec![format!("LZG_EQ says {eq}, local monoids say {local}")]
            })
        }
        CorpusCheck::OmegaDistrib => {
            if !zg() {
                return None;
            }
            Some(match verify_omega_distrib(s) {
                Ok(Outcome::Pass) => vec![],
                Ok(Outcome::Violated(w)) => vec![format!("{w:?}")],
                Err(e) => vec![e.to_string()],
            })
        }
        CorpusCheck::PeriodDivides(max) => {
            let period = s.semigroup_period() as u32;
            let failures: Vec<String> = (1..=max)
                .filter(|&p| passes(s, IdentityName::Zgp(p)) && p % period != 0)
                .map(|p| format!("in ZG_{p} with period {period}"))
                .collect();
            (max > 0).then_some(failures)
        }
        CorpusCheck::MNil => {
            if !s.is_monoid() {
                return None;
            }
            let mnil = varieties::is_in(s, Variety::MNil).expect("monoid").member;
            let both = zg() && passes(s, IdentityName::Aperiodic);
            Some(if mnil == both {
                vec![]
            } else {
                vec![format!("MNil says {mnil}, ZG and aperiodic say {both}")]
            })
        }
        CorpusCheck::Interleave => {
            if !zg() {
                return None;
            }
            let k = s.order();
            let len = k + 1;
            let mut failures = Vec::new();
            let mut tuple = vec![0; len];
            'tuples: loop {
                for m in s.elements() {
                    match verify_zg_interleave(s, m, &tuple) {
                        Ok(Outcome::Pass) => {}
                        Ok(Outcome::Violated(w)) => failures.push(format!("{w:?}")),
                        Err(e) => failures.push(e.to_string()),
                    }
                    if !failures.is_empty() {
                        break 'tuples;
                    }
                }
                let mut i = 0;
                loop {
                    if i == len {
                        break 'tuples;
                    }
                    tuple[i] += 1;
                    if tuple[i] < k {
                        break;
                    }
                    tuple[i] = 0;
                    i += 1;
                }
            }
            Some(failures)
        }
    }
}

/// Runs the checks over every structure of `corpus`.
pub fn verify_structures(corpus: &[FiniteSemigroup], checks: &[CorpusCheck]) -> CorpusReport {
    let reports = checks
        .iter()
        .map(|&check| {
            let results: Vec<(usize, Option<Vec<String>>)> = corpus
                .par_iter()
                .enumerate()
                .map(|(i, s)| (i, run_check(s, check)))
                .collect();
            let applicable = results.iter().filter(|(_, r)| r.is_some()).count();
            let violations = results
                .into_iter()
                .filter_map(|(i, r)| r.map(|fs| (i, fs)))
                .flat_map(|(i, fs)| {
                    fs.into_iter().map(move |detail| Violation {
                        index: i,
                        table: corpus[i].rows(),
                        detail,
                    })
                })
                .collect();
            CheckReport {
                check: check.to_string(),
                applicable,
                violations,
            }
        })
        .collect();
    CorpusReport {
        structures: corpus.len(),
        checks: reports,
    }
}

/// Enumerates `spec` and runs the checks over the result.
pub fn verify_corpus(spec: &EnumSpec, checks: &[CorpusCheck]) -> Result<CorpusReport, EnumError> {
    Ok(verify_structures(&enumerate(spec)?, checks))
}
