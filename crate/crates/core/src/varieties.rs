//! Equational membership for the varieties around ZG.
//!
//! Every negative answer carries a [`Witness`]: the name of the violated
//! identity and an assignment of its variables. Witnesses are the
//! lexicographically first failing assignment of the first failing conjunct.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Element, FiniteSemigroup, Witness};

/// Largest number of assignments an exhaustive identity check may visit.
pub const ASSIGNMENT_CAP: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("{0} is stated for monoids but the input has no identity")]
    RequiresMonoid(String),
    #[error("identity {name} needs {assignments} assignments, above the cap {cap}")]
    ArityMismatch {
        name: String,
        assignments: u128,
        cap: u128,
    },
    #[error("input is not in ZG: {0:?}")]
    NotZG(Witness),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unknown identity or variety {0:?}")]
    UnknownName(String),
}

/// Whether monoid identities may be evaluated on semigroups without identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    #[default]
    Strict,
    Lenient,
}

/// The named identities. Each one is a conjunction of [`Law`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityName {
    Com,
    Zg,
    Zgp(u32),
    Ze,
    Aperiodic,
    D,
    Nilpotent,
    LzgEq,
    /// `LZG_EQ` plus a period bound inside the local monoids.
    Lzgp(u32),
    OmegaDistrib,
    ZgInterleave(usize),
    /// `x^ω = 1`.
    Group,
}

/// A single equation `lhs = rhs` in the variables returned by [`Law::vars`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Com,
    Zg,
    Period(u32),
    Ze,
    Aperiodic,
    Definite,
    NilLeft,
    NilRight,
    LzgEq,
    LzgPeriod(u32),
    OmegaDistrib,
    ZgInterleave(usize),
    Group,
}

impl IdentityName {
    pub fn laws(self) -> Vec<Law> {
        match self {
            IdentityName::Com => vec![Law::Com],
            IdentityName::Zg => vec![Law::Zg],
            IdentityName::Zgp(p) => vec![Law::Zg, Law::Period(p)],
            IdentityName::Ze => vec![Law::Ze],
            IdentityName::Aperiodic => vec![Law::Aperiodic],
            IdentityName::D => vec![Law::Definite],
            IdentityName::Nilpotent => vec![Law::NilLeft, Law::NilRight],
            IdentityName::LzgEq => vec![Law::LzgEq],
            IdentityName::Lzgp(p) => vec![Law::LzgEq, Law::LzgPeriod(p)],
            IdentityName::OmegaDistrib => vec![Law::OmegaDistrib],
            IdentityName::ZgInterleave(n) => vec![Law::ZgInterleave(n)],
            IdentityName::Group => vec![Law::Group],
        }
    }

    /// Identities the paper states for monoids only.
    pub fn monoid_only(self) -> bool {
        matches!(
            self,
            IdentityName::Com
                | IdentityName::Zg
                | IdentityName::Zgp(_)
                | IdentityName::Ze
                | IdentityName::Aperiodic
                | IdentityName::OmegaDistrib
                | IdentityName::ZgInterleave(_)
                | IdentityName::Group
        )
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityName::Com => write!(f, "COM"),
            IdentityName::Zg => write!(f, "ZG"),
            IdentityName::Zgp(p) => write!(f, "ZGP({p})"),
            IdentityName::Ze => write!(f, "ZE"),
            IdentityName::Aperiodic => write!(f, "APERIODIC"),
            IdentityName::D => write!(f, "D"),
            IdentityName::Nilpotent => write!(f, "NILPOTENT"),
            IdentityName::LzgEq => write!(f, "LZG_EQ"),
            IdentityName::Lzgp(p) => write!(f, "LZGP({p})"),
            IdentityName::OmegaDistrib => write!(f, "OMEGA_DISTRIB"),
            IdentityName::ZgInterleave(n) => write!(f, "ZG_INTERLEAVE({n})"),
            IdentityName::Group => write!(f, "GROUP"),
        }
    }
}

fn parenthesised<T: FromStr>(s: &str, head: &str) -> Option<T> {
    s.strip_prefix(head)?
        .strip_prefix('(')?
        .strip_suffix(')')?
        .trim()
        .parse()
        .ok()
}

impl FromStr for IdentityName {
    type Err = VarietyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let u = s.trim().to_ascii_uppercase();
        let simple = match u.as_str() {
            "COM" => Some(IdentityName::Com),
            "ZG" => Some(IdentityName::Zg),
            "ZE" => Some(IdentityName::Ze),
            "APERIODIC" => Some(IdentityName::Aperiodic),
            "D" => Some(IdentityName::D),
            "NILPOTENT" => Some(IdentityName::Nilpotent),
            "LZG_EQ" => Some(IdentityName::LzgEq),
            "OMEGA_DISTRIB" => Some(IdentityName::OmegaDistrib),
            "GROUP" => Some(IdentityName::Group),
            _ => None,
        };
        let parsed = simple
            .or_else(|| parenthesised(&u, "ZGP").filter(|&p| p >= 1).map(IdentityName::Zgp))
            .or_else(|| parenthesised(&u, "LZGP").filter(|&p| p >= 1).map(IdentityName::Lzgp))
            .or_else(|| {
                parenthesised(&u, "ZG_INTERLEAVE")
                    .filter(|&n| n >= 1)
                    .map(IdentityName::ZgInterleave)
            });
        parsed.ok_or_else(|| VarietyError::UnknownName(s.to_string()))
    }
}

impl Law {
    pub fn vars(self) -> Vec<String> {
        let names: &[&str] = match self {
            Law::Period(_) | Law::Aperiodic | Law::Group => &["x"],
            Law::LzgEq => &["x", "y", "z"],
            Law::LzgPeriod(_) => &["x", "z"],
            Law::ZgInterleave(n) => {
                let mut v = vec!["m".to_string()];
                v.extend((1..=n).map(|i| format!("m{i}")));
                return v;
            }
            _ => &["x", "y"],
        };
        names.iter().map(|s| s.to_string()).collect()
    }

    /// Both sides of the law under an assignment given in [`Law::vars`] order.
    pub fn sides(self, s: &FiniteSemigroup, v: &[Element]) -> (Element, Element) {
        let omega = s.global_exponent() as u64;
        let w = |x| s.pow(x, omega);
        let g = |x| s.pow(x, omega + 1);
        match self {
            Law::Com => (s.mul(v[0], v[1]), s.mul(v[1], v[0])),
            Law::Zg => (s.mul(g(v[0]), v[1]), s.mul(v[1], g(v[0]))),
            Law::Period(p) => (s.pow(v[0], omega + p as u64), w(v[0])),
            Law::Ze => (s.mul(w(v[0]), v[1]), s.mul(v[1], w(v[0]))),
            Law::Aperiodic => (g(v[0]), w(v[0])),
            Law::Definite => (s.mul(v[1], w(v[0])), w(v[0])),
            Law::NilLeft => (s.mul(w(v[0]), v[1]), w(v[0])),
            Law::NilRight => (s.mul(v[1], w(v[0])), w(v[0])),
            Law::LzgEq => {
                let e = w(v[2]);
                let a = s.mul(s.mul(e, v[0]), e);
                let b = s.mul(s.mul(e, v[1]), e);
                (s.mul(g(a), b), s.mul(b, g(a)))
            }
            Law::LzgPeriod(p) => {
                let e = w(v[1]);
                let a = s.mul(s.mul(e, v[0]), e);
                (s.pow(a, omega + p as u64), w(a))
            }
            Law::OmegaDistrib => (w(s.mul(v[0], v[1])), s.mul(w(v[0]), w(v[1]))),
            Law::ZgInterleave(n) => {
                let m = v[0];
                let mut lhs = m;
                for &mi in &v[1..=n] {
                    lhs = s.mul(s.mul(lhs, mi), m);
                }
                let mut rhs = s.pow(m, n as u64 + 1);
                for &mi in &v[1..=n] {
                    rhs = s.mul(rhs, mi);
                }
                (lhs, rhs)
            }
            Law::Group => (
                w(v[0]),
                s.identity().expect("group law is checked on monoids"),
            ),
        }
    }
}

/// Result of an exhaustive identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "witness", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Violated(Witness),
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Pass => None,
            Outcome::Violated(w) => Some(w),
        }
    }
}

fn first_violation(s: &FiniteSemigroup, law: Law) -> Option<Vec<Element>> {
    let arity = law.vars().len();
    let k = s.order();
    let mut v = vec![0; arity];
    loop {
        let (l, r) = law.sides(s, &v);
        if l != r {
            return Some(v);
        }
        // odometer with the first variable most significant
        let mut i = arity;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < k {
                break;
            }
            v[i] = 0;
        }
    }
}

fn witness_for(name: IdentityName, law: Law, values: &[Element]) -> Witness {
    Witness {
        identity_name: name.to_string(),
        assignment: law.vars().into_iter().zip(values.iter().copied()).collect(),
    }
}

/// Exhaustively checks `id` on `s`.
pub fn check_identity(
    s: &FiniteSemigroup,
    id: IdentityName,
    strictness: Strictness,
) -> Result<Outcome, VarietyError> {
    let needs_identity = id == IdentityName::Group;
    if !s.is_monoid() && (needs_identity || (strictness == Strictness::Strict && id.monoid_only())) {
        return Err(VarietyError::RequiresMonoid(id.to_string()));
    }
    for law in id.laws() {
        let arity = law.vars().len() as u32;
        let assignments = (s.order() as u128).checked_pow(arity).unwrap_or(u128::MAX);
        if assignments > ASSIGNMENT_CAP {
            return Err(VarietyError::ArityMismatch {
                name: id.to_string(),
                assignments,
                cap: ASSIGNMENT_CAP,
            });
        }
        if let Some(values) = first_violation(s, law) {
            return Ok(Outcome::Violated(witness_for(id, law, &values)));
        }
    }
    Ok(Outcome::Pass)
}

/// True iff substituting the witness into its identity yields unequal sides
/// for at least one conjunct whose variables are all assigned.
pub fn witness_is_valid(s: &FiniteSemigroup, w: &Witness) -> bool {
    let Ok(id) = w.identity_name.parse::<IdentityName>() else {
        return false;
    };
    if w.assignment.values().any(|&x| x >= s.order()) {
        return false;
    }
    if id == IdentityName::Group && !s.is_monoid() {
        return false;
    }
    id.laws().into_iter().any(|law| {
        let values: Option<Vec<Element>> = law
            .vars()
            .iter()
            .map(|v| w.assignment.get(v).copied())
            .collect();
        match values {
            Some(values) => {
                let (l, r) = law.sides(s, &values);
                l != r
            }
            None => false,
        }
    })
}

/// ZG membership read off the definition: every group element is central.
pub fn zg_by_definition(s: &FiniteSemigroup) -> bool {
    let group = s.group_elements();
    group
        .iter()
        .all(|&g| s.elements().all(|y| s.mul(g, y) == s.mul(y, g)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variety {
    Com,
    Zg,
    Zgp(u32),
    Ze,
    MNil,
    Aperiodic,
    D,
    Nilpotent,
    Lzg,
    Lzgp(u32),
    Group,
}

impl Variety {
    pub fn is_monoid_variety(self) -> bool {
        !matches!(
            self,
            Variety::D | Variety::Nilpotent | Variety::Lzg | Variety::Lzgp(_)
        )
    }

    /// Every variety named in the classification commands, with `p` as the
    /// period parameter.
    pub fn standard_list(p: u32) -> Vec<Variety> {
        vec![
            Variety::Com,
            Variety::Zg,
            Variety::Zgp(p),
            Variety::Ze,
            Variety::MNil,
            Variety::Aperiodic,
            Variety::D,
            Variety::Nilpotent,
            Variety::Lzg,
            Variety::Lzgp(p),
            Variety::Group,
        ]
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::Com => write!(f, "Com"),
            Variety::Zg => write!(f, "ZG"),
            Variety::Zgp(p) => write!(f, "ZG_{p}"),
            Variety::Ze => write!(f, "ZE"),
            Variety::MNil => write!(f, "MNil"),
            Variety::Aperiodic => write!(f, "Aperiodic"),
            Variety::D => write!(f, "D"),
            Variety::Nilpotent => write!(f, "Nilpotent"),
            Variety::Lzg => write!(f, "LZG"),
            Variety::Lzgp(p) => write!(f, "LZG_{p}"),
            Variety::Group => write!(f, "Group"),
        }
    }
}

impl FromStr for Variety {
    type Err = VarietyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let u = s.trim().to_ascii_uppercase();
        let indexed = |prefix: &str| {
            u.strip_prefix(prefix)
                .and_then(|r| r.parse::<u32>().ok())
                .filter(|&p| p >= 1)
        };
        let v = match u.as_str() {
            "COM" => Variety::Com,
            "ZG" => Variety::Zg,
            "ZE" => Variety::Ze,
            "MNIL" => Variety::MNil,
            "APERIODIC" | "A" => Variety::Aperiodic,
            "D" => Variety::D,
            "NILPOTENT" | "NIL" => Variety::Nilpotent,
            "LZG" => Variety::Lzg,
            "GROUP" | "G" => Variety::Group,
            _ => {
                if let Some(p) = indexed("LZG_") {
                    Variety::Lzgp(p)
                } else if let Some(p) = indexed("ZG_") {
                    Variety::Zgp(p)
                } else {
                    return Err(VarietyError::UnknownName(s.to_string()));
                }
            }
        };
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyVerdict {
    pub variety: String,
    pub member: bool,
    pub witness: Option<Witness>,
    pub method: String,
}

impl VarietyVerdict {
    fn from_outcome(variety: Variety, outcome: Outcome, method: &str) -> Self {
        VarietyVerdict {
            variety: variety.to_string(),
            member: outcome.is_pass(),
            witness: outcome.witness().cloned(),
            method: method.to_string(),
        }
    }
}

/// Decides membership of `s` in `variety`.
pub fn is_in(s: &FiniteSemigroup, variety: Variety) -> Result<VarietyVerdict, VarietyError> {
    if variety.is_monoid_variety() && !s.is_monoid() {
        return Err(VarietyError::RequiresMonoid(variety.to_string()));
    }
    let by_equation = |id| -> Result<VarietyVerdict, VarietyError> {
        let outcome = check_identity(s, id, Strictness::Strict)?;
        Ok(VarietyVerdict::from_outcome(variety, outcome, "equation"))
    };
    match variety {
        Variety::Com => by_equation(IdentityName::Com),
        Variety::Zg => by_equation(IdentityName::Zg),
        Variety::Zgp(p) => by_equation(IdentityName::Zgp(p)),
        Variety::Ze => by_equation(IdentityName::Ze),
        Variety::Aperiodic => by_equation(IdentityName::Aperiodic),
        Variety::D => by_equation(IdentityName::D),
        Variety::Nilpotent => by_equation(IdentityName::Nilpotent),
        Variety::Group => by_equation(IdentityName::Group),
        Variety::MNil => {
            let outcome = check_identity(s, IdentityName::Zgp(1), Strictness::Strict)?;
            Ok(VarietyVerdict::from_outcome(variety, outcome, "derived"))
        }
        Variety::Lzg => Ok(lzg_via_local_monoids(s, None)),
        Variety::Lzgp(p) => Ok(lzg_via_local_monoids(s, Some(p))),
    }
}

/// Membership in `LZG` (or `LZG_p`) by testing every local monoid.
///
/// A failure inside `eSe` is reported as an assignment of the `LZG_EQ`
/// (or `LZGP(p)`) identity on `s` with `z = e`.
pub fn lzg_via_local_monoids(s: &FiniteSemigroup, p: Option<u32>) -> VarietyVerdict {
    let variety = match p {
        Some(p) => Variety::Lzgp(p),
        None => Variety::Lzg,
    };
    let local_identity = match p {
        Some(p) => IdentityName::Zgp(p),
        None => IdentityName::Zg,
    };
    for e in s.idempotents() {
        let local = s.local_monoid(e).expect("idempotent");
        let outcome = check_identity(&local.monoid, local_identity, Strictness::Strict)
            .expect("local monoids have an identity and binary laws");
        if let Outcome::Violated(w) = outcome {
            let lift = |var: &str| local.embedding[w.assignment[var]];
            let (name, mut assignment) = if w.assignment.contains_key("y") {
                let mut a = BTreeMap::new();
                a.insert("x".to_string(), lift("x"));
                a.insert("y".to_string(), lift("y"));
                (IdentityName::LzgEq, a)
            } else {
                let mut a = BTreeMap::new();
                a.insert("x".to_string(), lift("x"));
                (IdentityName::Lzgp(p.unwrap_or(1)), a)
            };
            assignment.insert("z".to_string(), e);
            let witness = Witness {
                identity_name: name.to_string(),
                assignment,
            };
            debug_assert!(witness_is_valid(s, &witness));
            return VarietyVerdict {
                variety: variety.to_string(),
                member: false,
                witness: Some(witness),
                method: "local-monoids".to_string(),
            };
        }
    }
    VarietyVerdict {
        variety: variety.to_string(),
        member: true,
        witness: None,
        method: "local-monoids".to_string(),
    }
}

/// Machine check of `(xy)^ω = x^ω y^ω` on a ZG monoid.
pub fn verify_omega_distrib(s: &FiniteSemigroup) -> Result<Outcome, VarietyError> {
    if let Outcome::Violated(w) = check_identity(s, IdentityName::Zg, Strictness::Lenient)? {
        return Err(VarietyError::NotZG(w));
    }
    check_identity(s, IdentityName::OmegaDistrib, Strictness::Lenient)
}

/// Compares `m m1 m m2 ... m mn m` with `m^{n+1} m1 ... mn` for one tuple.
pub fn verify_zg_interleave(
    s: &FiniteSemigroup,
    m: Element,
    tuple: &[Element],
) -> Result<Outcome, VarietyError> {
    let n = tuple.len();
    if n < s.order() + 1 {
        return Err(VarietyError::HypothesisViolated(format!(
            "tuple length {n} is below |M|+1 = {}",
            s.order() + 1
        )));
    }
    if let Outcome::Violated(w) = check_identity(s, IdentityName::Zg, Strictness::Lenient)? {
        return Err(VarietyError::NotZG(w));
    }
    let law = Law::ZgInterleave(n);
    let mut values = vec![m];
    values.extend_from_slice(tuple);
    let (l, r) = law.sides(s, &values);
    Ok(if l == r {
        Outcome::Pass
    } else {
        Outcome::Violated(witness_for(IdentityName::ZgInterleave(n), law, &values))
    })
}
