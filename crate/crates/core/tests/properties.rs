use proptest::prelude::*;

use zgkit_core::automata::{dfa_equivalent, minimize, syntactic_monoid, Dfa};
use zgkit_core::category::build_category;
use zgkit_core::fixtures;
use zgkit_core::Alphabet;

fn arb_dfa() -> impl Strategy<Value = Dfa> {
    (1usize..6, 1usize..3).prop_flat_map(|(states, letters)| {
        (
            proptest::collection::vec(proptest::collection::vec(0..states, letters), states),
            0..states,
            proptest::collection::vec(any::<bool>(), states),
        )
            .prop_map(move |(delta, initial, acc)| {
                let accepting: Vec<usize> = (0..states).filter(|&q| acc[q]).collect();
                let alphabet = Alphabet::from_chars(&"ab"[..letters]).unwrap();
                Dfa::new(alphabet, delta, initial, &accepting).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn minimization_preserves_the_language(d in arb_dfa()) {
        let m = minimize(&d);
        prop_assert!(m.states() <= d.states());
        prop_assert_eq!(dfa_equivalent(&d, &m).unwrap(), None);
        prop_assert_eq!(minimize(&m), m);
    }

    #[test]
    fn syntactic_monoid_recognizes(d in arb_dfa(), words in proptest::collection::vec(proptest::collection::vec(0usize..2, 0..12), 20)) {
        let sm = syntactic_monoid(&d, 10_000).unwrap();
        let k = d.alphabet().len();
        for w in words {
            let w: Vec<usize> = w.into_iter().map(|a| a % k).collect();
            let e = sm.morphism.evaluate(&w).unwrap();
            prop_assert_eq!(sm.accepting.contains(&e), d.accepts(&w));
        }
    }

    #[test]
    fn path_evaluation_is_associative(seed in any::<u64>(), len in 1usize..30) {
        let cat = build_category(&fixtures::b2_one());
        let mut at = cat.objects()[(seed % cat.objects().len() as u64) as usize];
        let mut s = seed;
        let mut walk = Vec::new();
        for _ in 0..len {
            let out = cat.outgoing(at);
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = out[(s >> 33) as usize % out.len()];
            walk.push(a);
            at = cat.arrows()[a].dst;
        }
        let b = cat.base();
        let labels: Vec<usize> = walk.iter().map(|&a| cat.arrows()[a].label).collect();
        let left = labels.iter().copied().reduce(|x, y| b.mul(x, y)).unwrap();
        let right = labels.iter().rev().copied().reduce(|y, x| b.mul(x, y)).unwrap();
        let path = cat.path(walk).unwrap();
        prop_assert_eq!(cat.evaluate_path(&path).label, left);
        prop_assert_eq!(left, right);
    }
}
