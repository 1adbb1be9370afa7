//! Small named semigroups used throughout tests, examples and the CLI.

use crate::algebra::{Element, FiniteSemigroup};

fn build<F>(names: &[&str], identity: Option<Element>, mul: F) -> FiniteSemigroup
where
    F: Fn(Element, Element) -> Element,
{
    let k = names.len();
    let rows = (0..k).map(|x| (0..k).map(|y| mul(x, y)).collect()).collect();
    FiniteSemigroup::new(rows, identity)
        .and_then(|s| s.with_names(names.iter().map(|n| n.to_string()).collect()))
        .expect("fixture tables are valid")
}

/// The one-element monoid.
pub fn trivial() -> FiniteSemigroup {
    build(&["1"], Some(0), |_, _| 0)
}

/// The cyclic group of order `n` under addition, identity 0.
pub fn cyclic(n: usize) -> FiniteSemigroup {
    assert!(n >= 1);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    build(&refs, Some(0), |x, y| (x + y) % n)
}

/// Symmetric group on three points; composition applies the left factor first.
pub fn s3() -> FiniteSemigroup {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    build(&["id", "(01)", "(12)", "(02)", "(012)", "(021)"], Some(0), |x, y| {
        let (f, g) = (perms[x], perms[y]);
        index([g[f[0]], g[f[1]], g[f[2]]])
    })
}

/// Right-zero semigroup on two elements: `xy = y`.
pub fn rz2() -> FiniteSemigroup {
    build(&["e", "f"], None, |_, y| y)
}

/// Null semigroup `{a, 0}` with every product equal to 0.
pub fn n2() -> FiniteSemigroup {
    build(&["a", "0"], None, |_, _| 1)
}

/// `N2` with an identity adjoined: elements `a, 0, 1`.
pub fn n2_one() -> FiniteSemigroup {
    n2().adjoin_identity()
}

/// Two-element semilattice `{1, 0}`.
pub fn u1() -> FiniteSemigroup {
    build(&["1", "0"], Some(0), |x, y| x.max(y))
}

const BRANDT: [Option<(u8, u8)>; 5] = [Some((0, 1)), Some((1, 0)), Some((0, 0)), Some((1, 1)), None];

fn brandt_mul(x: Option<(u8, u8)>, y: Option<(u8, u8)>) -> Option<(u8, u8)> {
    match (x, y) {
        (Some((i, j)), Some((k, l))) if j == k => Some((i, l)),
        _ => None,
    }
}

/// Five-element Brandt semigroup `{a, b, ab, ba, 0}` with `aba = a`,
/// `bab = b` and `aa = bb = 0`.
pub fn b2() -> FiniteSemigroup {
    let index = |v| BRANDT.iter().position(|&b| b == v).unwrap();
    build(&["a", "b", "ab", "ba", "0"], None, |x, y| {
        index(brandt_mul(BRANDT[x], BRANDT[y]))
    })
}

/// `B2` with an identity, indexed `1, a, b, ab, ba, 0`. This is the
/// syntactic monoid of `(ab)*`.
pub fn b2_one() -> FiniteSemigroup {
    let index = |v| 1 + BRANDT.iter().position(|&b| b == v).unwrap();
    build(&["1", "a", "b", "ab", "ba", "0"], Some(0), |x, y| match (x, y) {
        (0, z) | (z, 0) => z,
        _ => index(brandt_mul(BRANDT[x - 1], BRANDT[y - 1])),
    })
}

/// Looks up a fixture by name, as accepted by the CLI.
pub fn by_name(name: &str) -> Option<FiniteSemigroup> {
    Some(match name {
        "trivial" => trivial(),
        "s3" => s3(),
        "rz2" => rz2(),
        "n2" => n2(),
        "n2_1" => n2_one(),
        "u1" => u1(),
        "b2" => b2(),
        "b2_1" => b2_one(),
        "z2xz3" => cyclic(2).direct_product(&cyclic(3), 36).ok()?,
        _ => {
            let n = name.strip_prefix('z')?.parse().ok()?;
            if n == 0 {
                return None;
            }
            cyclic(n)
        }
    })
}

/// Position of the element named `name`.
pub fn element(s: &FiniteSemigroup, name: &str) -> Element {
    s.names()
        .and_then(|n| n.iter().position(|x| x == name))
        .unwrap_or_else(|| panic!("no element named {name}"))
}
