//! Complete DFAs, syntactic monoids, language classification and the shuffle
//! decomposition of ZG languages.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Alphabet, Element, FiniteSemigroup, Letter, Morphism, Witness, DEFAULT_SIZE_CAP};
use crate::congruence::{enumerate_reachable_signatures, representative, CongruenceError, LetterStatus, NpParams};
use crate::varieties::{self, Variety, VarietyError, VarietyVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DfaError {
    #[error("DFA has no states")]
    NoStates,
    #[error("transition row {0} has the wrong length")]
    BadRow(usize),
    #[error("transition target {0} out of range")]
    BadTarget(usize),
    #[error("initial state {0} out of range")]
    BadInitial(usize),
    #[error("accepting state {0} out of range")]
    BadAccepting(usize),
    #[error("automata have different alphabets")]
    AlphabetMismatch,
    #[error("construction exceeds the size cap {0}")]
    SizeCapExceeded(usize),
    #[error("syntactic monoid is not in ZG: {0:?}")]
    NotInZG(Witness),
    #[error("signature enumeration exceeded the cap {cap}")]
    ResourceExceeded { cap: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error("malformed shuffle term: {0}")]
    BadTerm(String),
}

/// A complete deterministic automaton; `delta[q][a]` is the successor of `q`
/// on letter `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<bool>,
}

/// JSON form of a DFA.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaRecord {
    pub states: usize,
    pub alphabet: Vec<String>,
    pub delta: Vec<Vec<usize>>,
    pub initial: usize,
    pub accepting: Vec<usize>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        initial: usize,
        accepting: &[usize],
    ) -> Result<Self, DfaError> {
        let states = delta.len();
        if states == 0 {
            return Err(DfaError::NoStates);
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(DfaError::BadRow(q));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= states) {
                return Err(DfaError::BadTarget(t));
            }
        }
        if initial >= states {
            return Err(DfaError::BadInitial(initial));
        }
        let mut acc = vec![false; states];
        for &q in accepting {
            *acc.get_mut(q).ok_or(DfaError::BadAccepting(q))? = true;
        }
        Ok(Dfa {
            alphabet,
            delta,
            initial,
            accepting: acc,
        })
    }

    pub fn from_record(r: DfaRecord) -> Result<Self, DfaError> {
        if r.delta.len() != r.states {
            return Err(DfaError::BadRow(r.delta.len()));
        }
        Dfa::new(Alphabet::new(r.alphabet)?, r.delta, r.initial, &r.accepting)
    }

    pub fn to_record(&self) -> DfaRecord {
        DfaRecord {
            states: self.states(),
            alphabet: self.alphabet.symbols().to_vec(),
            delta: self.delta.clone(),
            initial: self.initial,
            accepting: self.accepting_states(),
        }
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn step(&self, q: usize, a: Letter) -> usize {
        self.delta[q][a]
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.states()).filter(|&q| self.accepting[q]).collect()
    }

    pub fn run(&self, word: &[Letter]) -> usize {
        word.iter().fold(self.initial, |q, &a| self.delta[q][a])
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.accepting[self.run(word)]
    }

    pub fn accepts_str(&self, word: &str) -> Result<bool, DfaError> {
        Ok(self.accepts(&self.alphabet.encode(word)?))
    }

    /// Product automaton accepting the intersection.
    pub fn intersect(&self, other: &Dfa) -> Result<Dfa, DfaError> {
        self.product(other, |a, b| a && b)
    }

    fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa, DfaError> {
        if self.alphabet != other.alphabet {
            return Err(DfaError::AlphabetMismatch);
        }
        let mut index = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut head = 0;
        while head < pairs.len() {
            let (p, q) = pairs[head];
            let mut row = Vec::with_capacity(self.alphabet.len());
            for a in 0..self.alphabet.len() {
                let next = (self.delta[p][a], other.delta[q][a]);
                let id = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                row.push(id);
            }
            delta.push(row);
            head += 1;
        }
        let accepting: Vec<usize> = (0..pairs.len())
            .filter(|&i| accept(self.accepting[pairs[i].0], other.accepting[pairs[i].1]))
            .collect();
        Dfa::new(self.alphabet.clone(), delta, 0, &accepting)
    }
}

/// Minimal complete DFA: unreachable states removed, Moore refinement, and
/// states renumbered in breadth-first order from the initial state.
pub fn minimize(d: &Dfa) -> Dfa {
    let k = d.alphabet.len();
    // reachable part
    let mut order = vec![d.initial];
    let mut pos = vec![usize::MAX; d.states()];
    pos[d.initial] = 0;
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        for a in 0..k {
            let t = d.delta[q][a];
            if pos[t] == usize::MAX {
                pos[t] = order.len();
                order.push(t);
            }
        }
        head += 1;
    }
    let n = order.len();
    let delta: Vec<Vec<usize>> = order
        .iter()
        .map(|&q| d.delta[q].iter().map(|&t| pos[t]).collect())
        .collect();
    let accepting: Vec<bool> = order.iter().map(|&q| d.accepting[q]).collect();

    let mut class: Vec<usize> = accepting.iter().map(|&b| b as usize).collect();
    let mut count = class.iter().collect::<BTreeSet<_>>().len();
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = Vec::with_capacity(n);
        for q in 0..n {
            let mut key = vec![class[q]];
            key.extend(delta[q].iter().map(|&t| class[t]));
            let fresh = ids.len();
            next.push(*ids.entry(key).or_insert(fresh));
        }
        let new_count = ids.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // canonical numbering by BFS over classes
    let mut rank = vec![usize::MAX; count];
    let mut reps = Vec::new();
    rank[class[0]] = 0;
    reps.push(0);
    let mut head = 0;
    while head < reps.len() {
        let q = reps[head];
        for a in 0..k {
            let c = class[delta[q][a]];
            if rank[c] == usize::MAX {
                rank[c] = reps.len();
                reps.push(delta[q][a]);
            }
        }
        head += 1;
    }
    let new_delta = reps
        .iter()
        .map(|&q| delta[q].iter().map(|&t| rank[class[t]]).collect())
        .collect();
    let acc: Vec<usize> = (0..reps.len()).filter(|&i| accepting[reps[i]]).collect();
    Dfa::new(d.alphabet.clone(), new_delta, 0, &acc).expect("minimized automaton is valid")
}

/// Shortest word on which the acceptance of `d` differs from the union of
/// `others`, or `None` when the languages agree.
pub fn differs_from_union(d: &Dfa, others: &[Dfa]) -> Result<Option<Vec<Letter>>, DfaError> {
    if others.iter().any(|o| o.alphabet != d.alphabet) {
        return Err(DfaError::AlphabetMismatch);
    }
    let k = d.alphabet.len();
    let start: Vec<usize> = std::iter::once(d.initial).chain(others.iter().map(|o| o.initial)).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut states = vec![start.clone()];
    let mut parent: Vec<(usize, Letter)> = vec![(usize::MAX, 0)];
    index.insert(start, 0);
    let mut head = 0;
    while head < states.len() {
        let st = states[head].clone();
        let lhs = d.accepting[st[0]];
        let rhs = others.iter().zip(&st[1..]).any(|(o, &q)| o.accepting[q]);
        if lhs != rhs {
            let mut word = Vec::new();
            let mut at = head;
            while parent[at].0 != usize::MAX {
                word.push(parent[at].1);
                at = parent[at].0;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for a in 0..k {
            let mut next = Vec::with_capacity(st.len());
            next.push(d.delta[st[0]][a]);
            next.extend(others.iter().zip(&st[1..]).map(|(o, &q)| o.delta[q][a]));
            if !index.contains_key(&next) {
                index.insert(next.clone(), states.len());
                states.push(next);
                parent.push((head, a));
            }
        }
        head += 1;
    }
    Ok(None)
}

/// Shortest distinguishing word, or `None` when equivalent.
pub fn dfa_equivalent(d1: &Dfa, d2: &Dfa) -> Result<Option<Vec<Letter>>, DfaError> {
    differs_from_union(d1, std::slice::from_ref(d2))
}

/// Transition monoid of the minimal automaton.
#[derive(Debug, Clone)]
pub struct SyntacticMonoid {
    pub monoid: FiniteSemigroup,
    pub morphism: Morphism,
    pub accepting: Vec<Element>,
    /// Shortest word representing each element.
    pub representatives: Vec<Vec<Letter>>,
}

fn transformation_closure(
    d: &Dfa,
    with_identity: bool,
    cap: usize,
) -> Result<(Vec<Vec<usize>>, Vec<Vec<Letter>>, Vec<usize>), DfaError> {
    let k = d.alphabet.len();
    let n = d.states();
    let mut elems: Vec<Vec<usize>> = Vec::new();
    let mut words: Vec<Vec<Letter>> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut letters = Vec::with_capacity(k);
    if with_identity {
        let id: Vec<usize> = (0..n).collect();
        index.insert(id.clone(), 0);
        elems.push(id);
        words.push(Vec::new());
    }
    for a in 0..k {
        let f: Vec<usize> = (0..n).map(|q| d.delta[q][a]).collect();
        let id = match index.get(&f) {
            Some(&i) => i,
            None => {
                index.insert(f.clone(), elems.len());
                elems.push(f);
                words.push(vec![a]);
                elems.len() - 1
            }
        };
        letters.push(id);
    }
    let mut head = 0;
    while head < elems.len() {
        for a in 0..k {
            let g: Vec<usize> = elems[head].iter().map(|&q| d.delta[q][a]).collect();
            if !index.contains_key(&g) {
                if elems.len() >= cap {
                    return Err(DfaError::SizeCapExceeded(cap));
                }
                let mut w = words[head].clone();
                w.push(a);
                index.insert(g.clone(), elems.len());
                elems.push(g);
                words.push(w);
            }
        }
        head += 1;
    }
    Ok((elems, words, letters))
}

fn table_of(elems: &[Vec<usize>]) -> Vec<Vec<Element>> {
    let index: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, f)| (f, i)).collect();
    elems
        .iter()
        .map(|f| {
            elems
                .iter()
                .map(|g| {
                    // f then g
                    let h: Vec<usize> = f.iter().map(|&q| g[q]).collect();
                    index[&h]
                })
                .collect()
        })
        .collect()
}

fn names_of(d: &Dfa, words: &[Vec<Letter>]) -> Vec<String> {
    words
        .iter()
        .map(|w| if w.is_empty() { "1".to_string() } else { d.alphabet.decode(w) })
        .collect()
}

pub fn syntactic_monoid(d: &Dfa, cap: usize) -> Result<SyntacticMonoid, DfaError> {
    let m = minimize(d);
    let (elems, words, letters) = transformation_closure(&m, true, cap)?;
    let monoid = FiniteSemigroup::new(table_of(&elems), Some(0))?.with_names(names_of(&m, &words))?;
    let accepting = (0..elems.len())
        .filter(|&i| m.accepting[elems[i][m.initial]])
        .collect();
    let morphism = Morphism::new(m.alphabet.clone(), letters, monoid.clone())?;
    Ok(SyntacticMonoid {
        monoid,
        morphism,
        accepting,
        representatives: words,
    })
}

/// Transformation semigroup of the nonempty words.
pub fn syntactic_semigroup(d: &Dfa, cap: usize) -> Result<FiniteSemigroup, DfaError> {
    let m = minimize(d);
    let (elems, words, _) = transformation_closure(&m, false, cap)?;
    Ok(FiniteSemigroup::new(table_of(&elems), None)?.with_names(names_of(&m, &words))?)
}

/// Classifies the language of `d`: semigroup varieties are tested on the
/// syntactic semigroup, all others on the syntactic monoid.
pub fn classify_language(d: &Dfa, varieties: &[Variety], cap: usize) -> Result<Vec<VarietyVerdict>, DfaError> {
    let monoid = syntactic_monoid(d, cap)?.monoid;
    let semigroup = syntactic_semigroup(d, cap)?;
    varieties
        .iter()
        .map(|&v| {
            let target = if v.is_monoid_variety() { &monoid } else { &semigroup };
            Ok(varieties::is_in(target, v)?)
        })
        .collect()
}

/// `{w : the rare subword of w is rare_word and each letter b of B occurs
/// more than n times with |w|_b mod p in residues[b]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleTerm {
    pub rare_word: Vec<Letter>,
    pub frequent_alphabet: Vec<Letter>,
    pub residues: BTreeMap<Letter, Vec<u32>>,
    pub n: u32,
    pub p: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShuffleTermRecord {
    pub rare_word: String,
    pub frequent_alphabet: Vec<String>,
    pub residues: BTreeMap<String, Vec<u32>>,
    pub n: u32,
    pub p: u32,
}

impl ShuffleTerm {
    pub fn validate(&self, alphabet_len: usize) -> Result<(), DfaError> {
        let bad = |m: &str| Err(DfaError::BadTerm(m.to_string()));
        if self.n == 0 || self.p == 0 {
            return bad("n and p must be positive");
        }
        if self.rare_word.iter().chain(&self.frequent_alphabet).any(|&l| l >= alphabet_len) {
            return bad("letter out of range");
        }
        if self.rare_word.iter().any(|l| self.frequent_alphabet.contains(l)) {
            return bad("rare and frequent alphabets intersect");
        }
        for &a in &self.rare_word {
            if self.rare_word.iter().filter(|&&b| b == a).count() as u32 > self.n {
                return bad("rare letter occurs more than n times");
            }
        }
        let keys: Vec<Letter> = self.residues.keys().copied().collect();
        let mut b = self.frequent_alphabet.clone();
        b.sort_unstable();
        if keys != b {
            return bad("residues must be given for exactly the frequent letters");
        }
        if self.residues.values().any(|rs| rs.is_empty() || rs.iter().any(|&r| r >= self.p)) {
            return bad("residue sets must be nonempty subsets of Z_p");
        }
        Ok(())
    }

    pub fn to_record(&self, alphabet: &Alphabet) -> ShuffleTermRecord {
        ShuffleTermRecord {
            rare_word: alphabet.decode(&self.rare_word),
            frequent_alphabet: self
                .frequent_alphabet
                .iter()
                .map(|&l| alphabet.symbol(l).to_string())
                .collect(),
            residues: self
                .residues
                .iter()
                .map(|(&l, rs)| (alphabet.symbol(l).to_string(), rs.clone()))
                .collect(),
            n: self.n,
            p: self.p,
        }
    }

    pub fn from_record(r: &ShuffleTermRecord, alphabet: &Alphabet) -> Result<Self, DfaError> {
        let letter = |s: &str| {
            alphabet
                .index_of(s)
                .ok_or_else(|| DfaError::from(AlgebraError::UnknownLetter(s.to_string())))
        };
        let term = ShuffleTerm {
            rare_word: alphabet.encode(&r.rare_word)?,
            frequent_alphabet: r.frequent_alphabet.iter().map(|s| letter(s)).collect::<Result<_, _>>()?,
            residues: r
                .residues
                .iter()
                .map(|(s, rs)| Ok((letter(s)?, rs.clone())))
                .collect::<Result<_, DfaError>>()?,
            n: r.n,
            p: r.p,
        };
        term.validate(alphabet.len())?;
        Ok(term)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZgDecomposition {
    pub n: u32,
    pub p: u32,
    pub terms: Vec<ShuffleTerm>,
}

/// Union of shuffle terms describing the language of `d`, whose syntactic
/// monoid `M` must be in ZG. Uses `p` = period of `M` and `n = |M| + 1`.
pub fn zg_decompose(d: &Dfa, cap: usize) -> Result<ZgDecomposition, DfaError> {
    let sm = syntactic_monoid(d, DEFAULT_SIZE_CAP)?;
    let m = &sm.monoid;
    let verdict = varieties::is_in(m, Variety::Zg)?;
    if !verdict.member {
        return Err(DfaError::NotInZG(verdict.witness.expect("negative verdicts carry witnesses")));
    }
    let p = m.semigroup_period() as u32;
    let n = m.order() as u32 + 1;
    let params = NpParams::new(d.alphabet.clone(), n, p)?;
    let sigs = enumerate_reachable_signatures(&params, cap).map_err(|e| match e {
        CongruenceError::ResourceExceeded { cap } => DfaError::ResourceExceeded { cap },
        other => other.into(),
    })?;
    let mut terms = Vec::new();
    for s in &sigs {
        if !d.accepts(&representative(s, &params)) {
            continue;
        }
        let mut residues = BTreeMap::new();
        for (l, st) in s.statuses(&params).into_iter().enumerate() {
            if let LetterStatus::Frequent(r) = st {
                residues.insert(l, vec![r]);
            }
        }
        terms.push(ShuffleTerm {
            rare_word: s.rare_subword(),
            frequent_alphabet: s.frequent_letters(&params),
            residues,
            n,
            p,
        });
    }
    Ok(ZgDecomposition {
        n,
        p,
        terms: merge_residues(terms),
    })
}

/// Merges families of terms that differ only in the residue set of one
/// letter when together they cover all of `Z_p`.
fn merge_residues(mut terms: Vec<ShuffleTerm>) -> Vec<ShuffleTerm> {
    loop {
        let mut changed = false;
        let letters: BTreeSet<Letter> = terms.iter().flat_map(|t| t.frequent_alphabet.iter().copied()).collect();
        for b in letters {
            let mut groups: BTreeMap<(Vec<Letter>, Vec<Letter>, Vec<(Letter, Vec<u32>)>), Vec<usize>> = BTreeMap::new();
            for (i, t) in terms.iter().enumerate() {
                if !t.residues.contains_key(&b) {
                    continue;
                }
                let rest: Vec<(Letter, Vec<u32>)> = t
                    .residues
                    .iter()
                    .filter(|(&l, _)| l != b)
                    .map(|(&l, rs)| (l, rs.clone()))
                    .collect();
                groups
                    .entry((t.rare_word.clone(), t.frequent_alphabet.clone(), rest))
                    .or_default()
                    .push(i);
            }
            let mut drop = BTreeSet::new();
            let mut add = Vec::new();
            for members in groups.values() {
                if members.len() < 2 {
                    continue;
                }
                let p = terms[members[0]].p;
                let union: BTreeSet<u32> = members
                    .iter()
                    .flat_map(|&i| terms[i].residues[&b].iter().copied())
                    .collect();
                if union.len() == p as usize {
                    let mut merged = terms[members[0]].clone();
                    merged.residues.insert(b, union.into_iter().collect());
                    drop.extend(members.iter().copied());
                    add.push((members[0], merged));
                }
            }
            if !drop.is_empty() {
                changed = true;
                let additions: HashMap<usize, ShuffleTerm> = add.into_iter().collect();
                terms = terms
                    .into_iter()
                    .enumerate()
                    .filter_map(|(i, t)| match additions.get(&i) {
                        Some(m) => Some(m.clone()),
                        None if drop.contains(&i) => None,
                        None => Some(t),
                    })
                    .collect();
            }
        }
        if !changed {
            return terms;
        }
    }
}

fn counter_step(c: u32, n: u32, p: u32) -> u32 {
    if c < n {
        c + 1
    } else if c == n {
        n + 1 + (n + 1) % p
    } else {
        n + 1 + (c - n - 1 + 1) % p
    }
}

fn build_by_bfs<S: Clone + Eq + std::hash::Hash>(
    alphabet: &Alphabet,
    start: S,
    step: impl Fn(&S, Letter) -> S,
    accept: impl Fn(&S) -> bool,
    cap: usize,
) -> Result<Dfa, DfaError> {
    let mut index: HashMap<S, usize> = HashMap::new();
    let mut states = vec![start.clone()];
    index.insert(start, 0);
    let mut delta = Vec::new();
    let mut head = 0;
    while head < states.len() {
        let mut row = Vec::with_capacity(alphabet.len());
        for a in 0..alphabet.len() {
            let next = step(&states[head], a);
            let id = match index.get(&next) {
                Some(&i) => i,
                None => {
                    if states.len() >= cap {
                        return Err(DfaError::SizeCapExceeded(cap));
                    }
                    index.insert(next.clone(), states.len());
                    states.push(next);
                    states.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        head += 1;
    }
    let accepting: Vec<usize> = (0..states.len()).filter(|&i| accept(&states[i])).collect();
    Dfa::new(alphabet.clone(), delta, 0, &accepting)
}

/// Automaton for one shuffle term: a tracker for the rare word, and a
/// saturating counter modulo `p` for each frequent letter.
pub fn term_to_dfa(t: &ShuffleTerm, alphabet: &Alphabet, cap: usize) -> Result<Dfa, DfaError> {
    t.validate(alphabet.len())?;
    let b: Vec<Letter> = t.frequent_alphabet.clone();
    let slot: HashMap<Letter, usize> = b.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let (n, p) = (t.n, t.p);
    // None is the dead state
    type State = Option<(usize, Vec<u32>)>;
    let start: State = Some((0, vec![0; b.len()]));
    let step = |s: &State, a: Letter| -> State {
        let (k, counters) = s.as_ref()?;
        match slot.get(&a) {
            Some(&i) => {
                let mut c = counters.clone();
                c[i] = counter_step(c[i], n, p);
                Some((*k, c))
            }
            None if t.rare_word.get(*k) == Some(&a) => Some((k + 1, counters.clone())),
            None => None,
        }
    };
    let accept = |s: &State| match s {
        Some((k, counters)) => {
            *k == t.rare_word.len()
                && counters.iter().zip(&b).all(|(&c, l)| c > n && t.residues[l].contains(&(c - n - 1)))
        }
        None => false,
    };
    build_by_bfs(alphabet, start, step, accept, cap)
}

/// The two factors of a term: the monomial `B* a1 B* ... ak B*` and the
/// commutative counting language.
pub fn term_factors(t: &ShuffleTerm, alphabet: &Alphabet, cap: usize) -> Result<(Dfa, Dfa), DfaError> {
    t.validate(alphabet.len())?;
    let in_b = |a: Letter| t.frequent_alphabet.contains(&a);
    let monomial = build_by_bfs(
        alphabet,
        Some(0usize),
        |s, a| {
            let k = (*s)?;
            if in_b(a) {
                Some(k)
            } else if t.rare_word.get(k) == Some(&a) {
                Some(k + 1)
            } else {
                None
            }
        },
        |s| *s == Some(t.rare_word.len()),
        cap,
    )?;
    let (n, p) = (t.n, t.p);
    let exact: Vec<u32> = (0..alphabet.len())
        .map(|a| t.rare_word.iter().filter(|&&l| l == a).count() as u32)
        .collect();
    let counting = build_by_bfs(
        alphabet,
        Some(vec![0u32; alphabet.len()]),
        |s, a| {
            let mut c = s.clone()?;
            if in_b(a) {
                c[a] = counter_step(c[a], n, p);
            } else {
                c[a] += 1;
                if c[a] > exact[a] {
                    return None;
                }
            }
            Some(c)
        },
        |s| match s {
            Some(c) => (0..alphabet.len()).all(|a| {
                if in_b(a) {
                    c[a] > n && t.residues[&a].contains(&(c[a] - n - 1))
                } else {
                    c[a] == exact[a]
                }
            }),
            None => false,
        },
        cap,
    )?;
    Ok((monomial, counting))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Roundtrip {
    Pass { terms: usize },
    Mismatch(Vec<Letter>),
}

/// Decomposes `d`, rebuilds each term as an automaton and checks that the
/// union equals the original language.
pub fn decomposition_roundtrip(d: &Dfa, cap: usize) -> Result<Roundtrip, DfaError> {
    let dec = zg_decompose(d, cap)?;
    let dfas = dec
        .terms
        .iter()
        .map(|t| term_to_dfa(t, &d.alphabet, cap).map(|x| minimize(&x)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match differs_from_union(d, &dfas)? {
        None => Roundtrip::Pass { terms: dfas.len() },
        Some(w) => Roundtrip::Mismatch(w),
    })
}

/// Small sample languages used by tests and the CLI.
pub mod samples {
    use super::*;

    fn dfa(letters: &str, delta: Vec<Vec<usize>>, accepting: &[usize]) -> Dfa {
        Dfa::new(Alphabet::from_chars(letters).unwrap(), delta, 0, accepting).unwrap()
    }

    /// Words over `{a}` with an even number of `a`.
    pub fn even_a() -> Dfa {
        dfa("a", vec![vec![1], vec![0]], &[0])
    }

    pub fn odd_a() -> Dfa {
        dfa("a", vec![vec![1], vec![0]], &[1])
    }

    /// `Σ*` over the given letters.
    pub fn full(letters: &str) -> Dfa {
        let k = letters.chars().count();
        dfa(letters, vec![vec![0; k]], &[0])
    }

    /// `(ab)*` with an explicit dead state and one redundant copy of it.
    pub fn ab_star() -> Dfa {
        dfa("ab", vec![vec![1, 2], vec![3, 0], vec![2, 2], vec![3, 3]], &[0])
    }

    /// `a*ca*` over `{a, c}`.
    pub fn a_c_a() -> Dfa {
        dfa("ac", vec![vec![0, 1], vec![1, 2], vec![2, 2]], &[1])
    }

    /// `a*ba*` over `{a, b, c}`.
    pub fn a_b_a_three() -> Dfa {
        dfa("abc", vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]], &[1])
    }

    /// `a+` over `{a, b}`.
    pub fn a_plus() -> Dfa {
        dfa("ab", vec![vec![1, 2], vec![1, 2], vec![2, 2]], &[1])
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;
    use crate::fixtures;

    const CAP: usize = 1_000_000;

    #[test]
    fn minimization() {
        let d = ab_star();
        let m = minimize(&d);
        assert_eq!(m.states(), 3);
        assert_eq!(minimize(&m), m);
        assert_eq!(dfa_equivalent(&d, &m).unwrap(), None);
        assert_eq!(dfa_equivalent(&even_a(), &odd_a()).unwrap(), Some(vec![]));
        assert!(matches!(dfa_equivalent(&even_a(), &ab_star()), Err(DfaError::AlphabetMismatch)));
    }

    #[test]
    fn distinguishing_word_is_shortest() {
        let aa = Dfa::new(
            Alphabet::from_chars("a").unwrap(),
            vec![vec![1], vec![2], vec![2]],
            0,
            &[2],
        )
        .unwrap();
        let a_plus_one = Dfa::new(Alphabet::from_chars("a").unwrap(), vec![vec![1], vec![1]], 0, &[1]).unwrap();
        assert_eq!(dfa_equivalent(&aa, &a_plus_one).unwrap(), Some(vec![0]));
    }

    #[test]
    fn syntactic_monoids() {
        let m = syntactic_monoid(&full("ab"), CAP).unwrap();
        assert_eq!(m.monoid.order(), 1);
        let m = syntactic_monoid(&even_a(), CAP).unwrap();
        assert_eq!(m.monoid.rows(), fixtures::cyclic(2).rows());
        let m = syntactic_monoid(&ab_star(), CAP).unwrap();
        assert_eq!(m.monoid.order(), 6);
        assert_eq!(m.monoid.idempotents().len(), 4);
        assert_eq!(m.monoid.global_exponent(), 2);
        assert_eq!(syntactic_semigroup(&ab_star(), CAP).unwrap().order(), 5);
        assert_eq!(syntactic_semigroup(&full("a"), CAP).unwrap().order(), 1);
        let sp = syntactic_semigroup(&a_plus(), CAP).unwrap();
        assert_eq!(sp.order(), 2);
        assert_eq!(sp.names().unwrap(), &["a".to_string(), "b".to_string()]);
        assert!(matches!(syntactic_monoid(&ab_star(), 3), Err(DfaError::SizeCapExceeded(3))));
    }

    #[test]
    fn recognition() {
        for d in [ab_star(), a_c_a(), a_b_a_three(), even_a()] {
            let sm = syntactic_monoid(&d, CAP).unwrap();
            let k = d.alphabet().len();
            for code in 0..3usize.pow(7) {
                let len = code % 8;
                let w: Vec<Letter> = (0..len).map(|i| (code / 3usize.pow(i as u32 % 7)) % k).collect();
                let e = sm.morphism.evaluate(&w).unwrap();
                assert_eq!(sm.accepting.contains(&e), d.accepts(&w));
            }
        }
    }

    #[test]
    fn classification() {
        let zg = [Variety::Zg];
        assert!(classify_language(&even_a(), &zg, CAP).unwrap()[0].member);
        assert!(!classify_language(&ab_star(), &zg, CAP).unwrap()[0].member);
        assert!(classify_language(&a_c_a(), &[Variety::MNil], CAP).unwrap()[0].member);
        let all = classify_language(&ab_star(), &[Variety::Ze, Variety::Lzg, Variety::D], CAP).unwrap();
        assert!(all.iter().all(|v| !v.member || v.variety == "LZG"));
    }

    #[test]
    fn decompositions() {
        let dec = zg_decompose(&a_c_a(), CAP).unwrap();
        assert_eq!((dec.n, dec.p), (4, 1));
        let all_rare = dec.terms.iter().filter(|t| t.frequent_alphabet.is_empty()).count();
        assert_eq!(all_rare, 15);
        assert_eq!(dec.terms.len(), 16);
        let a = Alphabet::from_chars("ac").unwrap();
        assert!(dec.terms.iter().any(|t| a.decode(&t.rare_word) == "c" && t.frequent_alphabet == vec![0]));
        assert!(matches!(zg_decompose(&ab_star(), CAP), Err(DfaError::NotInZG(_))));
        for d in [even_a(), a_c_a(), full("a"), full("ab"), a_b_a_three()] {
            assert!(matches!(decomposition_roundtrip(&d, CAP).unwrap(), Roundtrip::Pass { .. }));
        }
    }

    #[test]
    fn residue_merging() {
        // even and odd counts together cover Z_2
        let d = Dfa::new(
            Alphabet::from_chars("a").unwrap(),
            vec![vec![1], vec![2], vec![3], vec![4], vec![3]],
            0,
            &[3, 4],
        )
        .unwrap();
        let dec = zg_decompose(&d, CAP).unwrap();
        let freq: Vec<_> = dec.terms.iter().filter(|t| !t.frequent_alphabet.is_empty()).collect();
        assert_eq!(freq.len(), 1);
        assert_eq!(freq[0].residues[&0].len(), dec.p as usize);
        assert!(matches!(decomposition_roundtrip(&d, CAP).unwrap(), Roundtrip::Pass { .. }));
    }

    #[test]
    fn term_automata() {
        let a = Alphabet::from_chars("ac").unwrap();
        let t = ShuffleTerm {
            rare_word: vec![1],
            frequent_alphabet: vec![0],
            residues: BTreeMap::from([(0, vec![0])]),
            n: 4,
            p: 1,
        };
        let d = term_to_dfa(&t, &a, CAP).unwrap();
        assert!(d.accepts_str("aacaaa").unwrap());
        assert!(!d.accepts_str("aacaa").unwrap());
        assert!(!d.accepts_str("aacaacaa").unwrap());
        let ab = Alphabet::from_chars("ab").unwrap();
        let exact = ShuffleTerm {
            rare_word: vec![0, 1],
            frequent_alphabet: vec![],
            residues: BTreeMap::new(),
            n: 2,
            p: 1,
        };
        let d = term_to_dfa(&exact, &ab, CAP).unwrap();
        assert_eq!(dfa_equivalent(&d, &Dfa::new(ab.clone(), vec![vec![1, 3], vec![3, 2], vec![3, 3], vec![3, 3]], 0, &[2]).unwrap()).unwrap(), None);
        let every = ShuffleTerm {
            rare_word: vec![],
            frequent_alphabet: vec![0, 1],
            residues: BTreeMap::from([(0, vec![0]), (1, vec![0])]),
            n: 1,
            p: 1,
        };
        let d = term_to_dfa(&every, &ab, CAP).unwrap();
        assert!(d.accepts_str("abab").unwrap());
        assert!(!d.accepts_str("aab").unwrap());
        let bad = ShuffleTerm { rare_word: vec![0], ..every };
        assert!(matches!(term_to_dfa(&bad, &ab, CAP), Err(DfaError::BadTerm(_))));
    }

    #[test]
    fn factors_classify() {
        let dec = zg_decompose(&a_b_a_three(), CAP).unwrap();
        let a = Alphabet::from_chars("abc").unwrap();
        for t in &dec.terms {
            let (mono, count) = term_factors(t, &a, CAP).unwrap();
            assert!(classify_language(&mono, &[Variety::MNil], CAP).unwrap()[0].member);
            assert!(classify_language(&count, &[Variety::Com], CAP).unwrap()[0].member);
            let whole = term_to_dfa(t, &a, CAP).unwrap();
            assert_eq!(dfa_equivalent(&mono.intersect(&count).unwrap(), &whole).unwrap(), None);
        }
    }

    #[test]
    fn json_forms() {
        let d = a_c_a();
        let s = serde_json::to_string(&d.to_record()).unwrap();
        assert_eq!(s, r#"{"states":3,"alphabet":["a","c"],"delta":[[0,1],[1,2],[2,2]],"initial":0,"accepting":[1]}"#);
        assert_eq!(Dfa::from_record(serde_json::from_str(&s).unwrap()).unwrap(), d);
        let dec = zg_decompose(&d, CAP).unwrap();
        let a = d.alphabet();
        for t in &dec.terms {
            let r = t.to_record(a);
            let back: ShuffleTermRecord = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
            assert_eq!(&ShuffleTerm::from_record(&back, a).unwrap(), t);
        }
    }
}
