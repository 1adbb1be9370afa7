//! The n,p-congruence on words.
//!
//! Two words are equivalent when they have the same rare letters (at most
//! `n` occurrences), the same rare subword, and the same number of
//! occurrences modulo `p` of every frequent letter. A class is described by an
//! [`NpSignature`]; signatures compose under [`concat`], so the quotient is a
//! finite monoid.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Alphabet, Element, FiniteSemigroup, Letter, Morphism};
use crate::varieties::{self, IdentityName, Outcome, Strictness, VarietyError};

/// Default bound on the number of reachable signatures explored.
pub const DEFAULT_SIGNATURE_CAP: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("threshold and period must be at least 1 (got n={n}, p={p})")]
    BadParams { n: u32, p: u32 },
    #[error("parameters too large for the signature encoding")]
    TooLarge,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("morphism alphabet differs from the congruence alphabet")]
    AlphabetMismatch,
    #[error("the morphism target has no identity")]
    NotMonoid,
    #[error("more than {cap} reachable signatures")]
    ResourceExceeded { cap: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error("malformed signature: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NpParams {
    pub alphabet: Alphabet,
    pub n: u32,
    pub p: u32,
}

impl NpParams {
    pub fn new(alphabet: Alphabet, n: u32, p: u32) -> Result<Self, CongruenceError> {
        if n == 0 || p == 0 {
            return Err(CongruenceError::BadParams { n, p });
        }
        if n as u64 + p as u64 + 1 > u16::MAX as u64 || alphabet.len() > u16::MAX as usize {
            return Err(CongruenceError::TooLarge);
        }
        Ok(NpParams { alphabet, n, p })
    }

    fn freq_code(&self, residue: u32) -> u16 {
        (self.n + 1 + residue) as u16
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterStatus {
    Rare(u32),
    Frequent(u32),
}

/// Canonical descriptor of an n,p-class.
///
/// Per letter a code `c`: `c ≤ n` means `Rare(c)`, otherwise
/// `Frequent(c - n - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NpSignature {
    codes: Box<[u16]>,
    rare: Box<[u16]>,
}

impl NpSignature {
    /// Signature of the empty word.
    pub fn empty(params: &NpParams) -> Self {
        NpSignature {
            codes: vec![0; params.alphabet.len()].into_boxed_slice(),
            rare: Box::new([]),
        }
    }

    pub fn status(&self, params: &NpParams, letter: Letter) -> LetterStatus {
        let c = self.codes[letter] as u32;
        if c <= params.n {
            LetterStatus::Rare(c)
        } else {
            LetterStatus::Frequent(c - params.n - 1)
        }
    }

    pub fn statuses(&self, params: &NpParams) -> Vec<LetterStatus> {
        (0..self.codes.len()).map(|l| self.status(params, l)).collect()
    }

    pub fn is_rare(&self, params: &NpParams, letter: Letter) -> bool {
        self.codes[letter] as u32 <= params.n
    }

    pub fn rare_subword(&self) -> Vec<Letter> {
        self.rare.iter().map(|&l| l as Letter).collect()
    }

    /// Letters that are frequent, in alphabet order.
    pub fn frequent_letters(&self, params: &NpParams) -> Vec<Letter> {
        (0..self.codes.len())
            .filter(|&l| !self.is_rare(params, l))
            .collect()
    }

    /// Checks the structural invariants against `params`.
    pub fn is_well_formed(&self, params: &NpParams) -> bool {
        if self.codes.len() != params.alphabet.len() {
            return false;
        }
        let mut counts = vec![0u32; self.codes.len()];
        for &l in self.rare.iter() {
            match counts.get_mut(l as usize) {
                Some(c) => *c += 1,
                None => return false,
            }
        }
        (0..self.codes.len()).all(|l| match self.status(params, l) {
            LetterStatus::Rare(c) => counts[l] == c,
            LetterStatus::Frequent(r) => counts[l] == 0 && r < params.p,
        })
    }

    /// Signature of `self` followed by one letter.
    pub fn extend(&self, params: &NpParams, letter: Letter) -> NpSignature {
        let mut codes = self.codes.clone();
        let c = codes[letter] as u32;
        if c < params.n {
            codes[letter] += 1;
            let mut rare = Vec::with_capacity(self.rare.len() + 1);
            rare.extend_from_slice(&self.rare);
            rare.push(letter as u16);
            NpSignature {
                codes,
                rare: rare.into_boxed_slice(),
            }
        } else if c == params.n {
            codes[letter] = params.freq_code((params.n + 1) % params.p);
            let rare = self.rare.iter().copied().filter(|&l| l as Letter != letter);
            NpSignature {
                codes,
                rare: rare.collect(),
            }
        } else {
            let r = c - params.n - 1;
            codes[letter] = params.freq_code((r + 1) % params.p);
            NpSignature {
                codes,
                rare: self.rare.clone(),
            }
        }
    }

    pub fn to_record(&self, params: &NpParams) -> SignatureRecord {
        let status = (0..self.codes.len())
            .map(|l| {
                let s = match self.status(params, l) {
                    LetterStatus::Rare(c) => StatusRecord::Rare(c),
                    LetterStatus::Frequent(r) => StatusRecord::Freq(r),
                };
                (params.alphabet.symbol(l).to_string(), s)
            })
            .collect();
        SignatureRecord {
            status,
            rare_subword: params.alphabet.decode(&self.rare_subword()),
        }
    }

    pub fn from_record(record: &SignatureRecord, params: &NpParams) -> Result<Self, CongruenceError> {
        let mut codes = vec![0u16; params.alphabet.len()];
        if record.status.len() != codes.len() {
            return Err(CongruenceError::Malformed("status must list every letter".into()));
        }
        for (sym, st) in &record.status {
            let l = params
                .alphabet
                .index_of(sym)
                .ok_or_else(|| AlgebraError::UnknownLetter(sym.clone()))?;
            codes[l] = match *st {
                StatusRecord::Rare(c) if c <= params.n => c as u16,
                StatusRecord::Freq(r) if r < params.p => params.freq_code(r),
                _ => return Err(CongruenceError::Malformed(format!("status of {sym} out of range"))),
            };
        }
        let rare = params
            .alphabet
            .encode(&record.rare_subword)?
            .into_iter()
            .map(|l| l as u16)
            .collect();
        let sig = NpSignature {
            codes: codes.into_boxed_slice(),
            rare,
        };
        if !sig.is_well_formed(params) {
            return Err(CongruenceError::Malformed("rare subword disagrees with counts".into()));
        }
        Ok(sig)
    }
}

/// JSON form of a signature keyed by letter symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureRecord {
    pub status: BTreeMap<String, StatusRecord>,
    pub rare_subword: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatusRecord {
    Rare(u32),
    Freq(u32),
}

/// Signature of a word given as letter indices.
pub fn signature_of(word: &[Letter], params: &NpParams) -> NpSignature {
    let n = params.n;
    let mut counts = vec![0u32; params.alphabet.len()];
    for &l in word {
        counts[l] += 1;
    }
    let codes = counts
        .iter()
        .map(|&c| if c <= n { c as u16 } else { params.freq_code(c % params.p) })
        .collect();
    let rare = word
        .iter()
        .filter(|&&l| counts[l] <= n)
        .map(|&l| l as u16)
        .collect();
    NpSignature { codes, rare }
}

/// Signature of a word spelled with single-character letters.
pub fn signature(word: &str, params: &NpParams) -> Result<NpSignature, CongruenceError> {
    Ok(signature_of(&params.alphabet.encode(word)?, params))
}

/// Signature of the concatenation of two classes.
pub fn concat(s: &NpSignature, t: &NpSignature, params: &NpParams) -> NpSignature {
    let (n, p) = (params.n, params.p);
    let codes: Box<[u16]> = s
        .codes
        .iter()
        .zip(t.codes.iter())
        .map(|(&a, &b)| {
            let (a, b) = (a as u32, b as u32);
            match (a <= n, b <= n) {
                (true, true) if a + b <= n => (a + b) as u16,
                (true, true) => params.freq_code((a + b) % p),
                (true, false) => params.freq_code((a + (b - n - 1)) % p),
                (false, true) => params.freq_code((a - n - 1 + b) % p),
                (false, false) => params.freq_code((a - n - 1 + b - n - 1) % p),
            }
        })
        .collect();
    let rare = s
        .rare
        .iter()
        .chain(t.rare.iter())
        .copied()
        .filter(|&l| codes[l as usize] as u32 <= n)
        .collect();
    NpSignature { codes, rare }
}

pub fn equivalent(u: &[Letter], v: &[Letter], params: &NpParams) -> bool {
    signature_of(u, params) == signature_of(v, params)
}

/// Canonical class member: frequent blocks in alphabet order, each of the
/// least length above `n` with the right residue, then the rare subword.
pub fn representative(s: &NpSignature, params: &NpParams) -> Vec<Letter> {
    let (n, p) = (params.n, params.p);
    let mut word = Vec::new();
    for l in 0..s.codes.len() {
        if let LetterStatus::Frequent(r) = s.status(params, l) {
            let base = n + 1;
            let count = base + (r + p - base % p) % p;
            word.extend(std::iter::repeat(l).take(count as usize));
        }
    }
    word.extend(s.rare_subword());
    word
}

/// A pair of equivalent words with distinct images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexamplePair {
    pub u: String,
    pub v: String,
    pub u_image: Element,
    pub v_image: Element,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Refinement {
    Refines { signatures: usize },
    Counterexample(CounterexamplePair),
}

fn rebuild(parents: &[(u32, u16)], mut node: u32) -> Vec<Letter> {
    let mut word = Vec::new();
    while node != u32::MAX {
        let (parent, letter) = parents[node as usize];
        if parent == u32::MAX {
            break;
        }
        word.push(letter as Letter);
        node = parent;
    }
    word.reverse();
    word
}

/// Decides whether the n,p-congruence refines the kernel of `h`.
///
/// Breadth-first over reachable signatures; each signature is paired with
/// the image of the first word that reached it, and a second image for the
/// same signature yields a shortest counterexample.
pub fn refines(params: &NpParams, h: &Morphism, cap: usize) -> Result<Refinement, CongruenceError> {
    if h.alphabet() != &params.alphabet {
        return Err(CongruenceError::AlphabetMismatch);
    }
    let target = h.target();
    let one = target.identity().ok_or(CongruenceError::NotMonoid)?;
    let letters = params.alphabet.len();

    let start = NpSignature::empty(params);
    let mut seen: HashMap<NpSignature, u32> = HashMap::new();
    let mut nodes: Vec<(Element, u32, u16)> = vec![(one, u32::MAX, 0)];
    let mut queue = VecDeque::new();
    seen.insert(start.clone(), 0);
    queue.push_back((start, 0u32));

    let parents = |nodes: &[(Element, u32, u16)]| -> Vec<(u32, u16)> {
        nodes.iter().map(|&(_, p, l)| (p, l)).collect()
    };

    while let Some((sig, id)) = queue.pop_front() {
        let elem = nodes[id as usize].0;
        for a in 0..letters {
            let next = sig.extend(params, a);
            let image = target.mul(elem, h.image(a));
            match seen.get(&next) {
                Some(&other) => {
                    let other_image = nodes[other as usize].0;
                    if other_image != image {
                        let table = parents(&nodes);
                        let u = rebuild(&table, other);
                        let mut v = rebuild(&table, id);
                        v.push(a);
                        return Ok(Refinement::Counterexample(CounterexamplePair {
                            u: params.alphabet.decode(&u),
                            v: params.alphabet.decode(&v),
                            u_image: other_image,
                            v_image: image,
                        }));
                    }
                }
                None => {
                    if seen.len() >= cap {
                        return Err(CongruenceError::ResourceExceeded { cap });
                    }
                    let nid = nodes.len() as u32;
                    nodes.push((image, id, a as u16));
                    seen.insert(next.clone(), nid);
                    queue.push_back((next, nid));
                }
            }
        }
    }
    Ok(Refinement::Refines {
        signatures: seen.len(),
    })
}

/// All signatures reachable from the empty word, in breadth-first order.
pub fn enumerate_reachable_signatures(
    params: &NpParams,
    cap: usize,
) -> Result<Vec<NpSignature>, CongruenceError> {
    let start = NpSignature::empty(params);
    let mut order = vec![start.clone()];
    let mut seen: HashMap<NpSignature, ()> = HashMap::new();
    seen.insert(start, ());
    let mut head = 0;
    while head < order.len() {
        for a in 0..params.alphabet.len() {
            let next = order[head].extend(params, a);
            if !seen.contains_key(&next) {
                if seen.len() >= cap {
                    return Err(CongruenceError::ResourceExceeded { cap });
                }
                seen.insert(next.clone(), ());
                order.push(next);
            }
        }
        head += 1;
    }
    Ok(order)
}

/// The quotient monoid of the n,p-congruence, with element `i` standing for
/// the `i`-th reachable signature (element 0 is the class of the empty word).
pub fn quotient_monoid(
    params: &NpParams,
    cap: usize,
) -> Result<(FiniteSemigroup, Vec<NpSignature>), CongruenceError> {
    let sigs = enumerate_reachable_signatures(params, cap)?;
    let index: HashMap<&NpSignature, usize> = sigs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let rows = sigs
        .iter()
        .map(|s| sigs.iter().map(|t| index[&concat(s, t, params)]).collect())
        .collect();
    let monoid = FiniteSemigroup::new(rows, Some(0))?;
    Ok((monoid, sigs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveEnd {
    Pass,
    Mismatch { original: Element, moved: Element },
}

/// Checks that gathering all occurrences of a frequent letter `a` at the
/// front of `w` does not change its image in a ZG monoid.
pub fn verify_moveend(w: &[Letter], h: &Morphism, a: Letter) -> Result<MoveEnd, CongruenceError> {
    let m = h.target();
    if let Outcome::Violated(wit) = varieties::check_identity(m, IdentityName::Zg, Strictness::Lenient)? {
        return Err(VarietyError::NotZG(wit).into());
    }
    let count = w.iter().filter(|&&l| l == a).count();
    if count <= m.order() + 1 {
        return Err(CongruenceError::HypothesisViolated(format!(
            "letter occurs {count} times, needs more than {}",
            m.order() + 1
        )));
    }
    let mut moved = vec![a; count];
    moved.extend(w.iter().copied().filter(|&l| l != a));
    let original = h.evaluate(w)?;
    let moved = h.evaluate(&moved)?;
    Ok(if original == moved {
        MoveEnd::Pass
    } else {
        MoveEnd::Mismatch { original, moved }
    })
}
