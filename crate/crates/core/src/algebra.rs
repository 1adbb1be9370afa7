//! Finite semigroups and monoids given by their Cayley table.
//!
//! Elements are dense indices `0..order`. The table is stored row-major with
//! the row giving the left factor, so `product(x, y) == table[x * order + y]`.
//! The idempotent power and the period are computed on first use and cached.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an element of a [`FiniteSemigroup`].
pub type Element = usize;

/// Index of a letter of an [`Alphabet`].
pub type Letter = usize;

/// Default bound on the order of constructed semigroups (products, closures).
pub const DEFAULT_SIZE_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("empty Cayley table")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    Ragged { row: usize, len: usize, order: usize },
    #[error("table entry ({x}, {y}) = {value} is out of range for order {order}")]
    OutOfRange {
        x: Element,
        y: Element,
        value: usize,
        order: usize,
    },
    #[error("not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NotAssociative { x: Element, y: Element, z: Element },
    #[error("element {identity} is not an identity: fails against {witness}")]
    BadIdentity { identity: Element, witness: Element },
    #[error("element {0} is not idempotent")]
    NotIdempotent(Element),
    #[error("exponent {0} is not positive")]
    BadExponent(i64),
    #[error("construction of order {requested} exceeds the size cap {cap}")]
    SizeCapExceeded { requested: usize, cap: usize },
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("the empty word has no image in a semigroup without identity")]
    EmptyWordIntoSemigroup,
    #[error("alphabet must be nonempty and duplicate-free")]
    BadAlphabet,
    #[error("morphism has {images} images for an alphabet of {letters} letters")]
    ImageCount { images: usize, letters: usize },
    #[error("{0} element names given for order {1}")]
    NameCount(usize, usize),
}

/// An ordered, duplicate-free list of letter symbols.
///
/// Letters are addressed by position. Symbols are strings so that alphabets of
/// category arrows can carry readable names; [`Alphabet::encode`] reads a
/// string one `char` per letter and therefore only applies to single-character
/// symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new(symbols: Vec<String>) -> Result<Self, AlgebraError> {
        if symbols.is_empty() {
            return Err(AlgebraError::BadAlphabet);
        }
        let mut sorted: Vec<&String> = symbols.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(AlgebraError::BadAlphabet);
        }
        Ok(Alphabet { symbols })
    }

    /// One letter per character of `letters`, e.g. `Alphabet::from_chars("ab")`.
    pub fn from_chars(letters: &str) -> Result<Self, AlgebraError> {
        Self::new(letters.chars().map(String::from).collect())
    }

    /// `size` letters named `prefix0`, `prefix1`, ...
    pub fn indexed(prefix: &str, size: usize) -> Result<Self, AlgebraError> {
        Self::new((0..size).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter]
    }

    pub fn index_of(&self, symbol: &str) -> Option<Letter> {
        self.symbols.iter().position(|s| s == symbol)
    }

    pub fn encode(&self, word: &str) -> Result<Vec<Letter>, AlgebraError> {
        let mut buf = [0u8; 4];
        word.chars()
            .map(|c| {
                let sym: &str = c.encode_utf8(&mut buf);
                self.index_of(sym)
                    .ok_or_else(|| AlgebraError::UnknownLetter(sym.to_string()))
            })
            .collect()
    }

    pub fn decode(&self, word: &[Letter]) -> String {
        word.iter().map(|&l| self.symbols[l].as_str()).collect()
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = AlgebraError;
    fn try_from(symbols: Vec<String>) -> Result<Self, Self::Error> {
        Alphabet::new(symbols)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.symbols
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Orbit {
    /// Least `i` with `x^i` in the cycle of the monogenic subsemigroup.
    index: usize,
    /// Length of that cycle.
    period: usize,
}

/// A finite semigroup given by its multiplication table, optionally with a
/// two-sided identity.
#[derive(Clone)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<Element>,
    identity: Option<Element>,
    names: Option<Vec<String>>,
    orbits: OnceLock<Vec<Orbit>>,
    omega: OnceLock<usize>,
    period: OnceLock<usize>,
}

impl PartialEq for FiniteSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table && self.identity == other.identity
    }
}

impl Eq for FiniteSemigroup {}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .field("table", &self.rows())
            .finish()
    }
}

impl FiniteSemigroup {
    /// Validates a Cayley table.
    ///
    /// When `identity` is `None` a two-sided identity is searched for and
    /// recorded if present, so every table with an identity is treated as a
    /// monoid.
    pub fn new(rows: Vec<Vec<Element>>, identity: Option<Element>) -> Result<Self, AlgebraError> {
        let order = rows.len();
        if order == 0 {
            return Err(AlgebraError::Empty);
        }
        let mut table = Vec::with_capacity(order * order);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != order {
                return Err(AlgebraError::Ragged {
                    row,
                    len: entries.len(),
                    order,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(AlgebraError::OutOfRange {
                        x: row,
                        y: col,
                        value,
                        order,
                    });
                }
            }
            table.extend_from_slice(entries);
        }
        Self::from_flat(order, table, identity)
    }

    /// Same as [`FiniteSemigroup::new`] on a row-major flattened table whose
    /// entries are already known to be in range.
    pub(crate) fn from_flat(
        order: usize,
        table: Vec<Element>,
        identity: Option<Element>,
    ) -> Result<Self, AlgebraError> {
        debug_assert_eq!(table.len(), order * order);
        let mul = |a: usize, b: usize| table[a * order + b];
        for x in 0..order {
            for y in 0..order {
                let xy = mul(x, y);
                for z in 0..order {
                    if mul(xy, z) != mul(x, mul(y, z)) {
                        return Err(AlgebraError::NotAssociative { x, y, z });
                    }
                }
            }
        }
        let identity = match identity {
            Some(e) => {
                if e >= order {
                    return Err(AlgebraError::OutOfRange {
                        x: e,
                        y: e,
                        value: e,
                        order,
                    });
                }
                if let Some(w) = (0..order).find(|&x| mul(e, x) != x || mul(x, e) != x) {
                    return Err(AlgebraError::BadIdentity {
                        identity: e,
                        witness: w,
                    });
                }
                Some(e)
            }
            None => (0..order).find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x)),
        };
        Ok(FiniteSemigroup {
            order,
            table,
            identity,
            names: None,
            orbits: OnceLock::new(),
            omega: OnceLock::new(),
            period: OnceLock::new(),
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, AlgebraError> {
        if names.len() != self.order {
            return Err(AlgebraError::NameCount(names.len(), self.order));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Option<Element> {
        self.identity
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of `x`: its given name, or its index.
    pub fn name(&self, x: Element) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.table[x * self.order + y]
    }

    /// Left-to-right product of a nonempty sequence.
    pub fn product<I: IntoIterator<Item = Element>>(&self, factors: I) -> Option<Element> {
        factors.into_iter().reduce(|acc, x| self.mul(acc, x))
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.table.chunks(self.order).map(<[_]>::to_vec).collect()
    }

    /// Row-major table.
    pub fn flat_table(&self) -> &[Element] {
        &self.table
    }

    fn orbits(&self) -> &[Orbit] {
        self.orbits.get_or_init(|| {
            self.elements()
                .map(|x| {
                    // powers[i] = x^(i+1); stop at the first repeat.
                    let mut seen = vec![usize::MAX; self.order];
                    let mut current = x;
                    let mut exponent = 1;
                    loop {
                        if seen[current] != usize::MAX {
                            let first = seen[current];
                            return Orbit {
                                index: first,
                                period: exponent - first,
                            };
                        }
                        seen[current] = exponent;
                        current = self.mul(current, x);
                        exponent += 1;
                    }
                })
                .collect()
        })
    }

    /// Least `ω ≥ 1` such that `x^ω` is idempotent for every element `x`.
    pub fn global_exponent(&self) -> usize {
        *self.omega.get_or_init(|| {
            let orbits = self.orbits();
            let lcm_period = orbits.iter().fold(1, |acc, o| lcm(acc, o.period));
            let max_index = orbits.iter().map(|o| o.index).max().unwrap_or(1);
            max_index.div_ceil(lcm_period) * lcm_period
        })
    }

    /// Least `p' ≥ 1` with `x^{ω+p'} = x^ω`.
    pub fn element_period(&self, x: Element) -> usize {
        self.orbits()[x].period
    }

    /// Least common multiple of the element periods.
    pub fn semigroup_period(&self) -> usize {
        *self
            .period
            .get_or_init(|| self.orbits().iter().fold(1, |acc, o| lcm(acc, o.period)))
    }

    /// `x^k` for `k ≥ 1`.
    pub fn pow(&self, x: Element, k: u64) -> Element {
        assert!(k >= 1, "pow needs a positive exponent");
        let o = self.orbits()[x];
        let reduced = if (k as usize) < o.index || k <= (o.index + o.period) as u64 {
            k as usize
        } else {
            o.index + ((k as usize - o.index) % o.period)
        };
        let mut acc = x;
        for _ in 1..reduced {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// `x^ω`.
    pub fn omega_power(&self, x: Element) -> Element {
        self.pow(x, self.global_exponent() as u64)
    }

    /// Power of `x`.
    ///
    /// In absolute mode this is `x^k` and needs `k ≥ 1`. In ω-relative mode
    /// this is `x^{ω+k'}` with `k' = k mod ω` taken in `0..ω`, so every
    /// integer `k` is accepted and `x^{ω-1}` means `x^{2ω-1}`.
    pub fn power(&self, x: Element, k: i64, omega_relative: bool) -> Result<Element, AlgebraError> {
        if omega_relative {
            let omega = self.global_exponent() as i64;
            let shift = k.rem_euclid(omega);
            Ok(self.pow(x, (omega + shift) as u64))
        } else if k <= 0 {
            Err(AlgebraError::BadExponent(k))
        } else {
            Ok(self.pow(x, k as u64))
        }
    }

    pub fn is_idempotent(&self, x: Element) -> bool {
        self.mul(x, x) == x
    }

    /// Idempotents in ascending index order.
    pub fn idempotents(&self) -> Vec<Element> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    /// Group elements, i.e. the elements of the form `x^{ω+1}`.
    pub fn group_elements(&self) -> Vec<Element> {
        let omega = self.global_exponent() as u64;
        let mut g: Vec<Element> = self.elements().map(|x| self.pow(x, omega + 1)).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// The local monoid `eSe` with identity `e`, together with the embedding
    /// of its indices into `self`.
    pub fn local_monoid(&self, e: Element) -> Result<LocalMonoid, AlgebraError> {
        if !self.is_idempotent(e) {
            return Err(AlgebraError::NotIdempotent(e));
        }
        let embedding: Vec<Element> = self
            .elements()
            .filter(|&x| self.mul(self.mul(e, x), e) == x)
            .collect();
        let position = invert(&embedding, self.order);
        let k = embedding.len();
        let mut table = Vec::with_capacity(k * k);
        for &x in &embedding {
            for &y in &embedding {
                table.push(position[self.mul(x, y)].expect("eSe is closed under products"));
            }
        }
        let identity = position[e];
        let mut monoid = FiniteSemigroup::from_flat(k, table, identity)?;
        if let Some(names) = &self.names {
            monoid.names = Some(embedding.iter().map(|&x| names[x].clone()).collect());
        }
        Ok(LocalMonoid { monoid, embedding })
    }

    /// `S^1`: `self` if it already has an identity, otherwise `self` with a
    /// fresh identity appended as the last element.
    pub fn adjoin_identity(&self) -> FiniteSemigroup {
        if self.identity.is_some() {
            return self.clone();
        }
        let k = self.order;
        let one = k;
        let mut table = Vec::with_capacity((k + 1) * (k + 1));
        for x in 0..=k {
            for y in 0..=k {
                table.push(if x == one {
                    y
                } else if y == one {
                    x
                } else {
                    self.mul(x, y)
                });
            }
        }
        let mut monoid =
            FiniteSemigroup::from_flat(k + 1, table, Some(one)).expect("S^1 is a monoid");
        let mut names: Vec<String> = self.elements().map(|x| self.name(x)).collect();
        names.push("1".to_string());
        monoid.names = Some(names);
        monoid
    }

    /// Direct product; the pair `(s, t)` gets index `s * |T| + t`.
    pub fn direct_product(
        &self,
        other: &FiniteSemigroup,
        cap: usize,
    ) -> Result<FiniteSemigroup, AlgebraError> {
        let (ks, kt) = (self.order, other.order);
        let k = ks.checked_mul(kt).unwrap_or(usize::MAX);
        if k > cap {
            return Err(AlgebraError::SizeCapExceeded { requested: k, cap });
        }
        let mut table = Vec::with_capacity(k * k);
        for s1 in 0..ks {
            for t1 in 0..kt {
                for s2 in 0..ks {
                    for t2 in 0..kt {
                        table.push(self.mul(s1, s2) * kt + other.mul(t1, t2));
                    }
                }
            }
        }
        let identity = match (self.identity, other.identity) {
            (Some(a), Some(b)) => Some(a * kt + b),
            _ => None,
        };
        let mut product = FiniteSemigroup::from_flat(k, table, identity)?;
        product.names = Some(
            (0..ks)
                .flat_map(|s| (0..kt).map(move |t| (s, t)))
                .map(|(s, t)| format!("({},{})", self.name(s), other.name(t)))
                .collect(),
        );
        Ok(product)
    }

    pub fn to_cayley(&self) -> CayleyTable {
        CayleyTable {
            identity: self.identity,
            names: self.names.clone(),
            order: self.order,
            table: self.rows(),
        }
    }
}

/// A local monoid `eSe` and the embedding of its elements into the
/// ambient semigroup.
#[derive(Debug, Clone)]
pub struct LocalMonoid {
    pub monoid: FiniteSemigroup,
    pub embedding: Vec<Element>,
}

/// On-disk Cayley-table record. Fields are declared in key order so that
/// serialization is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyTable {
    pub identity: Option<Element>,
    #[serde(default)]
    pub names: Option<Vec<String>>,
    pub order: usize,
    pub table: Vec<Vec<Element>>,
}

impl CayleyTable {
    pub fn into_semigroup(self) -> Result<FiniteSemigroup, AlgebraError> {
        if self.table.len() != self.order {
            return Err(AlgebraError::Ragged {
                row: self.table.len(),
                len: self.table.len(),
                order: self.order,
            });
        }
        let s = FiniteSemigroup::new(self.table, self.identity)?;
        match self.names {
            Some(n) => s.with_names(n),
            None => Ok(s),
        }
    }
}

/// A morphism from the free monoid over `alphabet` into a fixed target.
#[derive(Debug, Clone)]
pub struct Morphism {
    alphabet: Alphabet,
    images: Vec<Element>,
    target: FiniteSemigroup,
}

impl Morphism {
    pub fn new(
        alphabet: Alphabet,
        images: Vec<Element>,
        target: FiniteSemigroup,
    ) -> Result<Self, AlgebraError> {
        if images.len() != alphabet.len() {
            return Err(AlgebraError::ImageCount {
                images: images.len(),
                letters: alphabet.len(),
            });
        }
        if let Some(&bad) = images.iter().find(|&&x| x >= target.order()) {
            return Err(AlgebraError::OutOfRange {
                x: bad,
                y: bad,
                value: bad,
                order: target.order(),
            });
        }
        Ok(Morphism {
            alphabet,
            images,
            target,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn target(&self) -> &FiniteSemigroup {
        &self.target
    }

    pub fn image(&self, letter: Letter) -> Element {
        self.images[letter]
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Image of a word given as letter indices.
    pub fn evaluate(&self, word: &[Letter]) -> Result<Element, AlgebraError> {
        let mut letters = word.iter();
        let mut acc = match letters.next() {
            None => return self.target.identity.ok_or(AlgebraError::EmptyWordIntoSemigroup),
            Some(&l) => self.letter_image(l)?,
        };
        for &l in letters {
            acc = self.target.mul(acc, self.letter_image(l)?);
        }
        Ok(acc)
    }

    /// Image of a word spelled with single-character symbols.
    pub fn evaluate_word(&self, word: &str) -> Result<Element, AlgebraError> {
        self.evaluate(&self.alphabet.encode(word)?)
    }

    fn letter_image(&self, l: Letter) -> Result<Element, AlgebraError> {
        self.images
            .get(l)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownLetter(l.to_string()))
    }
}

/// A failing assignment of a named identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub identity_name: String,
    pub assignment: BTreeMap<String, Element>,
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Inverse of an injective index map into `0..size`.
pub(crate) fn invert(map: &[usize], size: usize) -> Vec<Option<usize>> {
    let mut inv = vec![None; size];
    for (i, &x) in map.iter().enumerate() {
        inv[x] = Some(i);
    }
    inv
}
