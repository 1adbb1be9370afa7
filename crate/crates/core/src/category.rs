//! The category of idempotents `S_E` of a finite semigroup.
//!
//! Objects are the idempotents of `S`; an arrow `(e1, x, e2)` exists when
//! `e1·x·e2 = x`, and arrows compose by multiplying labels. Paths are
//! nonempty sequences of arrow indices whose objects match up. This module
//! also hosts executable versions of the path identities that hold when `S`
//! is in LZG.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Alphabet, Element, FiniteSemigroup};
use crate::congruence::{signature_of, NpParams};
use crate::graph::{self, Multigraph, SccUnion};
use crate::threshold::{self, ThresholdError};
use crate::varieties::lzg_via_local_monoids;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("arrows do not compose: {dst} is not {src}")]
    NotComposable { dst: Element, src: Element },
    #[error("paths are nonempty")]
    EmptyPath,
    #[error("no arrow with index {0}")]
    UnknownArrow(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Threshold(#[from] ThresholdError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CatArrow {
    pub src: Element,
    pub label: Element,
    pub dst: Element,
}

/// A nonempty composable sequence of arrow indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CatPath {
    arrows: Vec<usize>,
}

impl CatPath {
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct IdemCategory {
    base: FiniteSemigroup,
    objects: Vec<Element>,
    arrows: Vec<CatArrow>,
    hom_index: BTreeMap<(Element, Element), Vec<usize>>,
    outgoing: HashMap<Element, Vec<usize>>,
    lookup: HashMap<CatArrow, usize>,
    in_lzg: OnceLock<bool>,
}

/// Builds `S_E`. Arrows are ordered by source, target, then label.
pub fn build_category(s: &FiniteSemigroup) -> IdemCategory {
    let objects = s.idempotents();
    let mut arrows = Vec::new();
    let mut hom_index = BTreeMap::new();
    for &e1 in &objects {
        for &e2 in &objects {
            let mut hom = Vec::new();
            for x in s.elements() {
                if s.mul(s.mul(e1, x), e2) == x {
                    hom.push(arrows.len());
                    arrows.push(CatArrow { src: e1, label: x, dst: e2 });
                }
            }
            // the membership test agrees with x ∈ e1·S·e2
            let mut image: Vec<Element> = s.elements().map(|y| s.mul(s.mul(e1, y), e2)).collect();
            image.sort_unstable();
            image.dedup();
            let labels: Vec<Element> = hom.iter().map(|&i| arrows[i].label).collect();
            assert_eq!(labels, image, "arrow test disagrees with e1·S·e2");
            hom_index.insert((e1, e2), hom);
        }
    }
    let mut outgoing: HashMap<Element, Vec<usize>> = HashMap::new();
    for (i, a) in arrows.iter().enumerate() {
        outgoing.entry(a.src).or_default().push(i);
    }
    let lookup = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    IdemCategory {
        base: s.clone(),
        objects,
        arrows,
        hom_index,
        outgoing,
        lookup,
        in_lzg: OnceLock::new(),
    }
}

/// Outcome of comparing two sides of a path identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum PathCheck {
    Pass,
    Mismatch { lhs: Element, rhs: Element },
}

impl PathCheck {
    fn compare(lhs: Element, rhs: Element) -> Self {
        if lhs == rhs {
            PathCheck::Pass
        } else {
            PathCheck::Mismatch { lhs, rhs }
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, PathCheck::Pass)
    }
}

impl IdemCategory {
    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn objects(&self) -> &[Element] {
        &self.objects
    }

    pub fn arrows(&self) -> &[CatArrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> Result<CatArrow, CategoryError> {
        self.arrows.get(i).copied().ok_or(CategoryError::UnknownArrow(i))
    }

    pub fn hom(&self, e1: Element, e2: Element) -> &[usize] {
        self.hom_index.get(&(e1, e2)).map_or(&[], Vec::as_slice)
    }

    pub fn outgoing(&self, e: Element) -> &[usize] {
        self.outgoing.get(&e).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, a: &CatArrow) -> Option<usize> {
        self.lookup.get(a).copied()
    }

    pub fn identity_arrow(&self, e: Element) -> Option<usize> {
        self.index_of(&CatArrow { src: e, label: e, dst: e })
    }

    /// Arrow names `(e1,x,e2)` using the base element names.
    pub fn arrow_name(&self, i: usize) -> String {
        let a = self.arrows[i];
        format!(
            "({},{},{})",
            self.base.name(a.src),
            self.base.name(a.label),
            self.base.name(a.dst)
        )
    }

    /// The arrow set as an alphabet, for congruences on paths.
    pub fn arrow_alphabet(&self) -> Alphabet {
        Alphabet::new((0..self.arrows.len()).map(|i| self.arrow_name(i)).collect())
            .expect("arrow names are distinct")
    }

    pub fn compose(&self, a: CatArrow, b: CatArrow) -> Result<CatArrow, CategoryError> {
        if a.dst != b.src {
            return Err(CategoryError::NotComposable { dst: a.dst, src: b.src });
        }
        Ok(CatArrow {
            src: a.src,
            label: self.base.mul(a.label, b.label),
            dst: b.dst,
        })
    }

    pub fn path(&self, arrows: Vec<usize>) -> Result<CatPath, CategoryError> {
        if arrows.is_empty() {
            return Err(CategoryError::EmptyPath);
        }
        self.check_sequence(&arrows)?;
        Ok(CatPath { arrows })
    }

    fn check_sequence(&self, arrows: &[usize]) -> Result<(), CategoryError> {
        for &i in arrows {
            self.arrow(i)?;
        }
        for w in arrows.windows(2) {
            let (a, b) = (self.arrows[w[0]], self.arrows[w[1]]);
            if a.dst != b.src {
                return Err(CategoryError::NotComposable { dst: a.dst, src: b.src });
            }
        }
        Ok(())
    }

    pub fn evaluate_path(&self, p: &CatPath) -> CatArrow {
        let mut it = p.arrows.iter().map(|&i| self.arrows[i]);
        let first = it.next().expect("paths are nonempty");
        it.fold(first, |acc, b| CatArrow {
            src: acc.src,
            label: self.base.mul(acc.label, b.label),
            dst: b.dst,
        })
    }

    pub fn src(&self, p: &CatPath) -> Element {
        self.arrows[p.arrows[0]].src
    }

    pub fn dst(&self, p: &CatPath) -> Element {
        self.arrows[*p.arrows.last().expect("nonempty")].dst
    }

    /// Concatenation of possibly-empty arrow sequences as a path.
    pub fn concat(&self, pieces: &[&[usize]]) -> Result<CatPath, CategoryError> {
        self.path(pieces.iter().flat_map(|p| p.iter().copied()).collect())
    }

    /// The local monoid at `e` realised as the loops `hom(e, e)`, with
    /// elements numbered by label order.
    pub fn hom_monoid(&self, e: Element) -> FiniteSemigroup {
        let hom = self.hom(e, e);
        let labels: Vec<Element> = hom.iter().map(|&i| self.arrows[i].label).collect();
        let pos: HashMap<Element, usize> = labels.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let rows = labels
            .iter()
            .map(|&x| labels.iter().map(|&y| pos[&self.base.mul(x, y)]).collect())
            .collect();
        FiniteSemigroup::new(rows, pos.get(&e).copied()).expect("loops form a monoid")
    }

    fn in_lzg(&self) -> bool {
        *self
            .in_lzg
            .get_or_init(|| lzg_via_local_monoids(&self.base, None).member)
    }

    fn require_lzg(&self) -> Result<(), CategoryError> {
        if self.in_lzg() {
            Ok(())
        } else {
            Err(CategoryError::HypothesisViolated("base semigroup is not in LZG".into()))
        }
    }

    /// Label of `p^{ω+k}`, exponent read relative to the base ω.
    fn loop_power(&self, label: Element, k: i64) -> Element {
        self.base.power(label, k, true).expect("relative powers are total")
    }

    fn label(&self, arrows: &[usize]) -> Option<Element> {
        self.base.product(arrows.iter().map(|&i| self.arrows[i].label))
    }

    fn as_loop(&self, p: &CatPath, what: &str) -> Result<(Element, Element), CategoryError> {
        let (s, d) = (self.src(p), self.dst(p));
        if s != d {
            return Err(CategoryError::HypothesisViolated(format!("{what} is not a loop")));
        }
        Ok((s, self.evaluate_path(p).label))
    }

    /// Loops `x`, `y` on one object satisfy `x^{ω+k} y = y x^{ω+k}`.
    pub fn verify_loop_commutation(
        &self,
        x: &CatPath,
        y: &CatPath,
        k: i64,
    ) -> Result<PathCheck, CategoryError> {
        self.require_lzg()?;
        let (ox, lx) = self.as_loop(x, "x")?;
        let (oy, ly) = self.as_loop(y, "y")?;
        if ox != oy {
            return Err(CategoryError::HypothesisViolated("loops are not coterminal".into()));
        }
        let xp = self.loop_power(lx, k);
        Ok(PathCheck::compare(self.base.mul(xp, ly), self.base.mul(ly, xp)))
    }

    /// Least `n'` that is `|S|`-distant for `word` and makes every symbol of
    /// `required` frequent.
    fn distant_threshold_with_frequent(&self, word: &[usize], required: &[usize]) -> Option<u64> {
        let m = self.base.order() as u64;
        let count = |a: usize| word.iter().filter(|&&x| x == a).count() as u64;
        let min_required = required.iter().map(|&a| count(a)).min().unwrap_or(u64::MAX);
        (1..min_required.min(word.len() as u64 + 1))
            .find(|&n| threshold::is_distant(word, n, m))
    }

    /// Checks `rt ≡ r (π')^ω t` for a loop `π'` of frequent arrows at the
    /// junction of `r` and `t`. Either piece may be empty.
    ///
    /// Returns the threshold used for the frequency hypothesis alongside the
    /// outcome.
    pub fn verify_loop_insertion(
        &self,
        r: &[usize],
        t: &[usize],
        insert: &CatPath,
    ) -> Result<(PathCheck, u64), CategoryError> {
        self.require_lzg()?;
        let (o, l) = self.as_loop(insert, "inserted path")?;
        if r.is_empty() && t.is_empty() {
            return Err(CategoryError::HypothesisViolated(
                "inserted arrows cannot be frequent in an empty path".into(),
            ));
        }
        let rt = self.concat(&[r, t])?;
        let junction = match (r.last(), t.first()) {
            (Some(&a), _) => self.arrows[a].dst,
            (None, Some(&b)) => self.arrows[b].src,
            (None, None) => unreachable!(),
        };
        if junction != o {
            return Err(CategoryError::HypothesisViolated(
                "inserted loop is not on the junction object".into(),
            ));
        }
        let n = self
            .distant_threshold_with_frequent(rt.arrows(), insert.arrows())
            .ok_or_else(|| {
                CategoryError::HypothesisViolated(
                    "no |S|-distant threshold makes the inserted arrows frequent".into(),
                )
            })?;
        let lhs = self.evaluate_path(&rt).label;
        let omega = self.loop_power(l, 0);
        let rhs = match (self.label(r), self.label(t)) {
            (Some(a), Some(b)) => self.base.product([a, omega, b]),
            (Some(a), None) => self.base.product([a, omega]),
            (None, Some(b)) => self.base.product([omega, b]),
            (None, None) => unreachable!(),
        }
        .expect("nonempty");
        Ok((PathCheck::compare(lhs, rhs), n))
    }

    /// The two loop recombination identities for coterminal `x, x'` and
    /// coterminal `y, y'` with `xy` a loop, `t` coterminal with `y`:
    ///
    /// `(xy)^ω (x'y')^ω = (xy')^ω (x'y)^ω (xy)^ω (x'y')^ω` and
    /// `x t (xy)^ω (x'y')^ω = x' t (xy)^ω x y' (x'y')^{ω-1}`.
    pub fn verify_local_identities(
        &self,
        x: &CatPath,
        x2: &CatPath,
        y: &CatPath,
        y2: &CatPath,
        t: &CatPath,
    ) -> Result<[PathCheck; 2], CategoryError> {
        self.require_lzg()?;
        let ends = |p: &CatPath| (self.src(p), self.dst(p));
        let (a, b) = ends(x);
        if ends(x2) != (a, b) {
            return Err(CategoryError::HypothesisViolated("x and x' are not coterminal".into()));
        }
        if ends(y) != (b, a) || ends(y2) != (b, a) {
            return Err(CategoryError::HypothesisViolated("xy and x'y' are not loops".into()));
        }
        if ends(t) != (b, a) {
            return Err(CategoryError::HypothesisViolated("t is not coterminal with y".into()));
        }
        let s = &self.base;
        let lab = |p: &CatPath| self.evaluate_path(p).label;
        let (lx, lx2, ly, ly2, lt) = (lab(x), lab(x2), lab(y), lab(y2), lab(t));
        let w = |u: Element, v: Element| self.loop_power(s.mul(u, v), 0);
        let xy = w(lx, ly);
        let xy2 = w(lx2, ly2);
        let first_lhs = s.mul(xy, xy2);
        let first_rhs = s.product([w(lx, ly2), w(lx2, ly), xy, xy2]).unwrap();
        let second_lhs = s.product([lx, lt, xy, xy2]).unwrap();
        let pre = self.loop_power(s.mul(lx2, ly2), -1);
        let second_rhs = s.product([lx2, lt, xy, lx, ly2, pre]).unwrap();
        Ok([
            PathCheck::compare(first_lhs, first_rhs),
            PathCheck::compare(second_lhs, second_rhs),
        ])
    }

    /// Arrows occurring more than `n` times in `p`.
    pub fn frequent_arrows(&self, p: &[usize], n: u64) -> Vec<usize> {
        let mut counts = vec![0u64; self.arrows.len()];
        for &a in p {
            counts[a] += 1;
        }
        (0..self.arrows.len()).filter(|&a| counts[a] > n).collect()
    }

    /// The graph of frequent arrows of `p`, with objects renumbered by their
    /// position in [`IdemCategory::objects`].
    pub fn frequent_graph(&self, p: &[usize], n: u64) -> (Multigraph, Vec<usize>) {
        let frequent = self.frequent_arrows(p, n);
        let pos: HashMap<Element, usize> =
            self.objects.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let edges = frequent
            .iter()
            .map(|&a| (pos[&self.arrows[a].src], pos[&self.arrows[a].dst]))
            .collect();
        let g = Multigraph::new(self.objects.len(), edges).expect("objects are in range");
        (g, frequent)
    }

    /// Whether the frequent arrows of `p` form a union of SCCs. Components
    /// are reported as lists of objects.
    pub fn frequent_graph_is_union_of_sccs(&self, p: &CatPath, n: u64) -> SccUnion {
        let (g, _) = self.frequent_graph(p.arrows(), n);
        let mut res = graph::is_union_of_sccs(&g);
        for comp in &mut res.components {
            for v in comp.iter_mut() {
                *v = self.objects[*v];
            }
        }
        res
    }

    /// Bounded search for a loop `y''` of frequent arrows such that
    /// `x r y1 y2 ≡ x' r y1 y'' y2`.
    ///
    /// `n` is the threshold for the frequency hypotheses; when `None` the
    /// least one that is `|S|`-distant and makes `x` and `x'` frequent is
    /// used. Loops are tried by increasing length, then in arrow order; the
    /// empty loop comes first.
    #[allow(clippy::too_many_arguments)]
    pub fn search_prefix_substitution(
        &self,
        x: &CatPath,
        r: &[usize],
        y1: &[usize],
        y2: &[usize],
        x2: &CatPath,
        n: Option<u64>,
        loop_len_cap: usize,
    ) -> Result<Option<Vec<usize>>, CategoryError> {
        self.require_lzg()?;
        let pi = self.concat(&[x.arrows(), r, y1, y2])?;
        if (self.src(x), self.dst(x)) != (self.src(x2), self.dst(x2)) {
            return Err(CategoryError::HypothesisViolated("x and x' are not coterminal".into()));
        }
        let mut required: Vec<usize> = x.arrows().iter().chain(x2.arrows()).copied().collect();
        required.sort_unstable();
        required.dedup();
        let m = self.base.order() as u64;
        let n = match n {
            Some(n) => {
                if !threshold::is_distant(pi.arrows(), n, m) {
                    return Err(CategoryError::HypothesisViolated("threshold is not |S|-distant".into()));
                }
                n
            }
            None => self
                .distant_threshold_with_frequent(pi.arrows(), &required)
                .ok_or_else(|| CategoryError::HypothesisViolated("no suitable threshold".into()))?,
        };
        let frequent = self.frequent_arrows(pi.arrows(), n);
        if required.iter().any(|a| frequent.binary_search(a).is_err()) {
            return Err(CategoryError::HypothesisViolated(
                "x and x' must consist of frequent arrows".into(),
            ));
        }
        let start_r = match r.first() {
            Some(&a) => self.arrows[a].src,
            None => self.dst(x),
        };
        let junction = match (y1.last(), y2.first()) {
            (Some(&a), _) => self.arrows[a].dst,
            (None, Some(&b)) => self.arrows[b].src,
            (None, None) => self.dst(&pi),
        };
        let (g, _) = self.frequent_graph(pi.arrows(), n);
        let pos = |e: Element| self.objects.iter().position(|&o| o == e).unwrap();
        let same_scc = g
            .sccs()
            .iter()
            .any(|c| c.contains(&pos(start_r)) && c.contains(&pos(junction)));
        if !same_scc {
            return Err(CategoryError::HypothesisViolated(
                "y does not revisit the frequent SCC of the start of r".into(),
            ));
        }
        let target = self.evaluate_path(&pi).label;
        let prefix = self.label(&[x2.arrows(), r, y1].concat());
        let suffix = self.label(y2);
        let eval = |inner: Option<Element>| {
            [prefix, inner, suffix]
                .into_iter()
                .flatten()
                .reduce(|a, b| self.base.mul(a, b))
                .expect("x' is nonempty")
        };
        if eval(None) == target {
            return Ok(Some(Vec::new()));
        }
        for len in 1..=loop_len_cap {
            let mut stack = vec![(junction, None::<Element>, Vec::with_capacity(len))];
            // depth-first in arrow order gives lexicographic order per length
            let mut found = None;
            self.loops_dfs(&frequent, len, &mut stack, &mut |word, label| {
                if eval(Some(label)) == target {
                    found = Some(word.to_vec());
                    true
                } else {
                    false
                }
            });
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn loops_dfs(
        &self,
        allowed: &[usize],
        len: usize,
        stack: &mut Vec<(Element, Option<Element>, Vec<usize>)>,
        visit: &mut dyn FnMut(&[usize], Element) -> bool,
    ) -> bool {
        let (at, label, word) = stack.last().cloned().expect("seeded");
        let home = stack[0].0;
        if word.len() == len {
            return at == home && visit(&word, label.expect("len >= 1"));
        }
        for &a in self.outgoing(at) {
            if allowed.binary_search(&a).is_err() {
                continue;
            }
            let arrow = self.arrows[a];
            let next_label = match label {
                Some(l) => self.base.mul(l, arrow.label),
                None => arrow.label,
            };
            let mut next_word = word.clone();
            next_word.push(a);
            stack.push((arrow.dst, Some(next_label), next_word));
            let stop = self.loops_dfs(allowed, len, stack, visit);
            stack.pop();
            if stop {
                return true;
            }
        }
        false
    }

    /// Whether two arrow words are `n,p`-equivalent over the arrow alphabet.
    pub fn paths_equivalent(&self, u: &[usize], v: &[usize], n: u32, p: u32) -> bool {
        let params = NpParams::new(self.arrow_alphabet(), n, p).expect("valid parameters");
        signature_of(u, &params) == signature_of(v, &params)
    }

    /// Graphviz rendering; arrows in `highlight` are drawn bold.
    pub fn to_dot(&self, highlight: &[usize]) -> String {
        let mut out = String::from("digraph category {\n");
        for &e in &self.objects {
            let _ = writeln!(out, "  o{e} [label=\"{}\"];", self.base.name(e));
        }
        for (i, a) in self.arrows.iter().enumerate() {
            let style = if highlight.contains(&i) { ", style=bold" } else { "" };
            let _ = writeln!(
                out,
                "  o{} -> o{} [label=\"{}\"{style}];",
                a.src,
                a.dst,
                self.base.name(a.label)
            );
        }
        out.push_str("}\n");
        out
    }

    /// Graphviz rendering of the frequent arrows of a path only.
    pub fn frequent_dot(&self, p: &[usize], n: u64) -> String {
        let frequent = self.frequent_arrows(p, n);
        let mut out = String::from("digraph frequent {\n");
        for &e in &self.objects {
            let _ = writeln!(out, "  o{e} [label=\"{}\"];", self.base.name(e));
        }
        for &i in &frequent {
            let a = self.arrows[i];
            let _ = writeln!(out, "  o{} -> o{} [label=\"{}\"];", a.src, a.dst, self.base.name(a.label));
        }
        out.push_str("}\n");
        out
    }

    /// Human-readable rendering `e1 -x-> e2 -y-> e3`.
    pub fn render_path(&self, arrows: &[usize]) -> String {
        let mut out = String::new();
        for (k, &i) in arrows.iter().enumerate() {
            let a = self.arrows[i];
            if k == 0 {
                out.push_str(&self.base.name(a.src));
            }
            let _ = write!(out, " -{}-> {}", self.base.name(a.label), self.base.name(a.dst));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, element};

    fn arrow(c: &IdemCategory, s: &str, x: &str, d: &str) -> usize {
        let b = c.base();
        c.index_of(&CatArrow {
            src: element(b, s),
            label: element(b, x),
            dst: element(b, d),
        })
        .unwrap()
    }

    #[test]
    fn small_categories() {
        let c = build_category(&fixtures::trivial());
        assert_eq!((c.objects().len(), c.arrows().len()), (1, 1));

        let c = build_category(&fixtures::rz2());
        assert_eq!(c.objects().len(), 2);
        for &e1 in c.objects() {
            for &e2 in c.objects() {
                let hom = c.hom(e1, e2);
                assert_eq!(hom.len(), 1);
                assert_eq!(c.arrows()[hom[0]].label, e2);
            }
        }

        let m = fixtures::b2_one();
        let c = build_category(&m);
        assert_eq!(c.objects().len(), 4);
        let one = element(&m, "1");
        assert_eq!(c.hom(one, one).len(), 6);

        let c = build_category(&fixtures::n2_one());
        assert_eq!(c.arrows().len(), 6);
    }

    #[test]
    fn b2_homsets() {
        let s = fixtures::b2();
        let c = build_category(&s);
        assert_eq!(c.arrows().len(), 13);
        let e = |n| element(&s, n);
        let labels = |a, b| -> Vec<Element> { c.hom(e(a), e(b)).iter().map(|&i| c.arrows()[i].label).collect() };
        let sorted = |mut v: Vec<Element>| {
            v.sort();
            v
        };
        assert_eq!(labels("ab", "ab"), sorted(vec![e("ab"), e("0")]));
        assert_eq!(labels("ab", "ba"), sorted(vec![e("a"), e("0")]));
        assert_eq!(labels("ba", "ab"), sorted(vec![e("b"), e("0")]));
        assert_eq!(labels("ba", "ba"), sorted(vec![e("ba"), e("0")]));
        for o in ["ab", "ba", "0"] {
            assert_eq!(labels(o, "0"), vec![e("0")]);
            assert_eq!(labels("0", o), vec![e("0")]);
        }
    }

    #[test]
    fn composition() {
        let m = fixtures::b2_one();
        let c = build_category(&m);
        let l = arrow(&c, "1", "ab", "1");
        let p = c.path(vec![l, l]).unwrap();
        assert_eq!(c.evaluate_path(&p).label, element(&m, "ab"));
        let id = c.identity_arrow(element(&m, "1")).unwrap();
        let a = arrow(&c, "1", "a", "1");
        assert_eq!(c.compose(c.arrows()[id], c.arrows()[a]).unwrap(), c.arrows()[a]);
        let x = arrow(&c, "ab", "ab", "ab");
        assert!(matches!(c.path(vec![a, x]), Err(CategoryError::NotComposable { .. })));
        assert_eq!(c.path(vec![]), Err(CategoryError::EmptyPath));
        assert!(c
            .compose(c.arrows()[x], c.arrows()[a])
            .is_err());
    }

    #[test]
    fn loops_form_the_local_monoid() {
        for s in [fixtures::b2(), fixtures::b2_one(), fixtures::rz2(), fixtures::n2_one()] {
            let c = build_category(&s);
            for &e in c.objects() {
                let local = s.local_monoid(e).unwrap().monoid;
                assert_eq!(c.hom_monoid(e).rows(), local.rows());
            }
        }
    }

    #[test]
    fn loop_insertion_examples() {
        let s = fixtures::b2();
        let c = build_category(&s);
        let l = arrow(&c, "ab", "ab", "ab");
        let z = arrow(&c, "ab", "0", "ab");
        let r = vec![l; 12];
        let t = vec![l; 12];
        let ins = c.path(vec![l]).unwrap();
        let (check, n) = c.verify_loop_insertion(&r, &t, &ins).unwrap();
        assert!(check.is_pass());
        assert!(n >= 5);
        let bad = c.path(vec![z]).unwrap();
        assert!(matches!(
            c.verify_loop_insertion(&r, &t, &bad),
            Err(CategoryError::HypothesisViolated(_))
        ));
        let c1 = build_category(&fixtures::b2_one());
        let one = c1.identity_arrow(0).unwrap();
        assert!(matches!(
            c1.verify_loop_insertion(&[one], &[], &c1.path(vec![one]).unwrap()),
            Err(CategoryError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn local_identities_trivial_cases() {
        let s = fixtures::b2();
        let c = build_category(&s);
        let a = c.path(vec![arrow(&c, "ab", "a", "ba")]).unwrap();
        let b = c.path(vec![arrow(&c, "ba", "b", "ab")]).unwrap();
        let r = c.verify_local_identities(&a, &a, &b, &b, &b).unwrap();
        assert!(r.iter().all(PathCheck::is_pass));
    }

    #[test]
    fn prefix_substitution_with_equal_prefix() {
        let s = fixtures::b2();
        let c = build_category(&s);
        let l = arrow(&c, "ab", "ab", "ab");
        let x = c.path(vec![l]).unwrap();
        let found = c
            .search_prefix_substitution(&x, &vec![l; 30], &[], &[], &x, None, 3)
            .unwrap();
        assert_eq!(found, Some(vec![]));
    }

    #[test]
    fn dot_is_stable() {
        let c = build_category(&fixtures::rz2());
        let d = c.to_dot(&[]);
        assert!(d.starts_with("digraph category {\n  o0 [label=\"e\"];\n  o1 [label=\"f\"];"));
        assert_eq!(d, build_category(&fixtures::rz2()).to_dot(&[]));
        assert_eq!(c.render_path(&[0, 1]), "e -e-> e -f-> f");
    }
}
