//! Compatibility of the n,p-congruence on arrow words with the category
//! of idempotents, and the locality-based membership test for `ZG_p * D`.

use std::collections::{HashMap, VecDeque};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, FiniteSemigroup};
use crate::category::{build_category, CatArrow, IdemCategory};
use crate::congruence::{signature_of, NpParams, NpSignature};
use crate::varieties::{lzg_via_local_monoids, VarietyVerdict};

/// Default bound on fixpoint states.
pub const DEFAULT_STATE_CAP: usize = 5_000_000;

/// Two coterminal, n,p-equivalent paths with distinct values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncompatiblePair {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub left_value: CatArrow,
    pub right_value: CatArrow,
    pub left_rendered: String,
    pub right_rendered: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Compatibility {
    Compatible,
    Incompatible(IncompatiblePair),
    ResourceExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilityReport {
    pub outcome: Compatibility,
    pub n: u32,
    pub p: u32,
    pub explored_states: usize,
    #[serde(with = "millis")]
    pub elapsed: Duration,
}

mod millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_millis(u64::deserialize(d)?))
    }
}

#[derive(Hash, PartialEq, Eq)]
struct StateKey {
    sig: NpSignature,
    start: u16,
    at: u16,
}

struct Node {
    value: Element,
    parent: u32,
    arrow: u32,
}

fn path_to(nodes: &[Node], mut id: u32) -> Vec<usize> {
    let mut out = Vec::new();
    while id != u32::MAX {
        let node = &nodes[id as usize];
        out.push(node.arrow as usize);
        id = node.parent;
    }
    out.reverse();
    out
}

/// Decides whether the n,p-congruence on arrow words refines equality in
/// the category of idempotents of `s`.
///
/// A state is a signature together with start and current objects; it is
/// mapped to the label of the first path found for it. Exploration is
/// breadth-first from single arrows, so a second label for the same state
/// yields a shortest witness.
pub fn check_compatibility(s: &FiniteSemigroup, n: u32, p: u32, cap: usize) -> CompatibilityReport {
    let cat = build_category(s);
    check_category(&cat, n, p, cap)
}

pub fn check_category(cat: &IdemCategory, n: u32, p: u32, cap: usize) -> CompatibilityReport {
    let started = Instant::now();
    let params = NpParams::new(cat.arrow_alphabet(), n, p).expect("n, p >= 1");
    let object_pos: HashMap<Element, u16> = cat
        .objects()
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i as u16))
        .collect();
    let arrows = cat.arrows();
    let base = cat.base();

    let mut seen: HashMap<StateKey, u32> = HashMap::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut queue: VecDeque<(NpSignature, u16, u32)> = VecDeque::new();
    let empty = NpSignature::empty(&params);

    let report = |outcome, explored, started: Instant| CompatibilityReport {
        outcome,
        n,
        p,
        explored_states: explored,
        elapsed: started.elapsed(),
    };

    let conflict = |nodes: &[Node], old: u32, parent: u32, arrow: usize| {
        let left = path_to(nodes, old);
        let mut right = if parent == u32::MAX { Vec::new() } else { path_to(nodes, parent) };
        right.push(arrow);
        witness(cat, &params, left, right)
    };

    for (i, a) in arrows.iter().enumerate() {
        let start = object_pos[&a.src];
        let sig = empty.extend(&params, i);
        let key = StateKey { sig: sig.clone(), start, at: object_pos[&a.dst] };
        match seen.get(&key) {
            Some(&old) if nodes[old as usize].value != a.label => {
                let pair = conflict(&nodes, old, u32::MAX, i);
                return report(Compatibility::Incompatible(pair), seen.len(), started);
            }
            Some(_) => {}
            None => {
                let id = nodes.len() as u32;
                nodes.push(Node { value: a.label, parent: u32::MAX, arrow: i as u32 });
                seen.insert(key, id);
                queue.push_back((sig, start, id));
            }
        }
    }

    while let Some((sig, start, id)) = queue.pop_front() {
        let (value, at) = {
            let node = &nodes[id as usize];
            (node.value, arrows[node.arrow as usize].dst)
        };
        for &b in cat.outgoing(at) {
            let arrow = arrows[b];
            let next_sig = sig.extend(&params, b);
            let next_value = base.mul(value, arrow.label);
            let key = StateKey { sig: next_sig, start, at: object_pos[&arrow.dst] };
            match seen.get(&key) {
                Some(&old) => {
                    if nodes[old as usize].value != next_value {
                        let pair = conflict(&nodes, old, id, b);
                        return report(Compatibility::Incompatible(pair), seen.len(), started);
                    }
                }
                None => {
                    if seen.len() >= cap {
                        return report(Compatibility::ResourceExceeded, seen.len(), started);
                    }
                    let nid = nodes.len() as u32;
                    nodes.push(Node { value: next_value, parent: id, arrow: b as u32 });
                    let sig = key.sig.clone();
                    seen.insert(key, nid);
                    queue.push_back((sig, start, nid));
                }
            }
        }
    }
    report(Compatibility::Compatible, seen.len(), started)
}

fn witness(cat: &IdemCategory, params: &NpParams, left: Vec<usize>, right: Vec<usize>) -> IncompatiblePair {
    let lp = cat.path(left.clone()).expect("witness paths are valid");
    let rp = cat.path(right.clone()).expect("witness paths are valid");
    let (lv, rv) = (cat.evaluate_path(&lp), cat.evaluate_path(&rp));
    assert_eq!((lv.src, lv.dst), (rv.src, rv.dst), "witness paths must be coterminal");
    assert_eq!(
        signature_of(&left, params),
        signature_of(&right, params),
        "witness paths must be equivalent"
    );
    assert_ne!(lv.label, rv.label, "witness paths must evaluate differently");
    IncompatiblePair {
        left_rendered: cat.render_path(&left),
        right_rendered: cat.render_path(&right),
        left,
        right,
        left_value: lv,
        right_value: rv,
    }
}

/// Membership in `ZG_p * D`, decided through `LZG_p = ZG_p * D`.
pub fn membership_zgp_d(s: &FiniteSemigroup, p: u32) -> VarietyVerdict {
    let mut v = lzg_via_local_monoids(s, Some(p));
    v.variety = format!("ZG_{p}*D");
    v.method = "derived (locality theorem)".to_string();
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub verdict: VarietyVerdict,
    pub reports: Vec<CompatibilityReport>,
    pub least_compatible_n: Option<u32>,
    /// A compatible congruence for a non-member: an implementation bug.
    pub theory_violation: bool,
}

impl CrossValidation {
    /// Whether the runs settled the question within `n_max`.
    pub fn conclusive(&self) -> bool {
        if self.verdict.member {
            self.least_compatible_n.is_some()
        } else {
            self.reports
                .iter()
                .all(|r| matches!(r.outcome, Compatibility::Incompatible(_)))
        }
    }
}

/// Runs the compatibility checker for `n = 1..=n_max` and compares it with
/// the equational membership test.
pub fn cross_validate(s: &FiniteSemigroup, p: u32, n_max: u32, cap: usize) -> CrossValidation {
    let verdict = membership_zgp_d(s, p);
    let cat = build_category(s);
    let mut reports = Vec::new();
    let mut least = None;
    let mut violation = false;
    for n in 1..=n_max {
        let r = check_category(&cat, n, p, cap);
        let compatible = r.outcome == Compatibility::Compatible;
        reports.push(r);
        if compatible {
            if verdict.member {
                least = Some(n);
                break;
            }
            violation = true;
        }
    }
    CrossValidation {
        verdict,
        reports,
        least_compatible_n: least,
        theory_violation: violation,
    }
}
