use entangle_core::circuit::{parse_circuit, Circuit, Gate};
use entangle_core::random::random_circuit;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Independent boxed tree used as the reference for heights and validity.
#[derive(Clone, Debug)]
enum Tree {
    Leaf(Gate),
    Tensor(Box<Tree>, Box<Tree>),
    Seq(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn height(&self) -> usize {
        match self {
            Tree::Leaf(Gate::Cx | Gate::Swap) => 2,
            Tree::Leaf(_) => 1,
            Tree::Tensor(a, b) => a.height() + b.height(),
            Tree::Seq(a, _) => a.height(),
        }
    }

    fn well_formed(&self) -> bool {
        match self {
            Tree::Leaf(_) => true,
            Tree::Tensor(a, b) => a.well_formed() && b.well_formed(),
            Tree::Seq(a, b) => a.well_formed() && b.well_formed() && a.height() == b.height(),
        }
    }

    fn to_circuit(&self) -> Circuit {
        match self {
            Tree::Leaf(g) => Circuit::gate(*g),
            Tree::Tensor(a, b) => a.to_circuit().tensor(b.to_circuit()),
            Tree::Seq(a, b) => a.to_circuit().seq(b.to_circuit()),
        }
    }

    /// Fully parenthesized source text.
    fn to_source(&self) -> String {
        match self {
            Tree::Leaf(g) => g.symbol().to_owned(),
            Tree::Tensor(a, b) => format!("({} ** {})", a.to_source(), b.to_source()),
            Tree::Seq(a, b) => format!("({} oo {})", a.to_source(), b.to_source()),
        }
    }
}

fn gate() -> impl Strategy<Value = Gate> {
    prop::sample::select(Gate::ALL.to_vec())
}

fn tree() -> impl Strategy<Value = Tree> {
    gate().prop_map(Tree::Leaf).prop_recursive(6, 48, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Tensor(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Tree::Seq(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(t in tree()) {
        let c = t.to_circuit();
        let printed = c.to_string();
        let reparsed = parse_circuit(&printed).unwrap();
        prop_assert_eq!(&reparsed, &c);
        prop_assert_eq!(reparsed.to_string(), printed);
    }

    #[test]
    fn parenthesized_source_parses_to_same_tree(t in tree()) {
        prop_assert_eq!(parse_circuit(&t.to_source()).unwrap(), t.to_circuit());
    }

    #[test]
    fn tensor_heights_add(a in tree(), b in tree()) {
        let (ca, cb) = (a.to_circuit(), b.to_circuit());
        let (ha, hb) = (ca.height(), cb.height());
        prop_assert_eq!(ca.tensor(cb).height(), ha + hb);
        prop_assert_eq!(a.to_circuit().height(), a.height());
    }

    #[test]
    fn placements_cover_every_leaf(seed in any::<u64>(), n in 1usize..8, cols in 1usize..12) {
        let mut rng = StdRng::seed_from_u64(seed);
        let c = random_circuit(&mut rng, n, cols);
        let placements: Vec<_> = c.placements().collect();
        prop_assert_eq!(placements.len() as u64, c.leaf_count());
        // each column covers every wire exactly once
        let mut covered = vec![0usize; n];
        for p in placements {
            prop_assert!(p.index + p.gate.height() <= n);
            for k in &mut covered[p.index..p.index + p.gate.height()] {
                *k += 1;
            }
        }
        prop_assert!(covered.iter().all(|&k| k == cols));
    }
}

/// Every tree shape with exactly `leaves` leaves over the given alphabet.
fn all_trees(leaves: usize, alphabet: &[Gate]) -> Vec<Tree> {
    if leaves == 1 {
        return alphabet.iter().map(|&g| Tree::Leaf(g)).collect();
    }
    let mut out = Vec::new();
    for left in 1..leaves {
        let ls = all_trees(left, alphabet);
        let rs = all_trees(leaves - left, alphabet);
        for l in &ls {
            for r in &rs {
                out.push(Tree::Tensor(Box::new(l.clone()), Box::new(r.clone())));
                out.push(Tree::Seq(Box::new(l.clone()), Box::new(r.clone())));
            }
        }
    }
    out
}

#[test]
fn validation_matches_reference_exhaustively() {
    // one gate of each height keeps the enumeration small but complete in shape
    let alphabet = [Gate::H, Gate::Cx];
    let mut accepted = 0;
    let mut total = 0;
    for leaves in 1..=4 {
        for t in all_trees(leaves, &alphabet) {
            let c = t.to_circuit();
            total += 1;
            match c.validate() {
                Ok(n) => {
                    assert!(t.well_formed(), "accepted {c}");
                    assert_eq!(n, t.height());
                    accepted += 1;
                }
                Err(e) => {
                    assert!(!t.well_formed(), "rejected {c}: {e}");
                    assert_ne!(e.left, e.right);
                }
            }
            assert_eq!(parse_circuit(&c.to_string()).unwrap(), c);
        }
    }
    assert!(accepted > 0 && accepted < total);
}

#[test]
fn heights_of_examples() {
    assert_eq!(parse_circuit("CX").unwrap().height(), 2);
    assert_eq!(parse_circuit("H ** I").unwrap().height(), 2);
    assert_eq!(parse_circuit("H ** I oo CX").unwrap().height(), 2);
    assert_eq!(parse_circuit("H ** I oo CX").unwrap().validate(), Ok(2));
    assert!(parse_circuit("H oo CX").unwrap().validate().is_err());
}
