mod common;

use std::collections::BTreeSet;

use common::*;
use entangle_core::Partition;
use proptest::prelude::*;

#[derive(Clone, Debug)]
enum Op {
    Join(usize, usize),
    Split(usize),
    Swap(usize),
}

fn op_strategy(n: usize) -> impl Strategy<Value = Op> {
    prop_oneof![
        (0..n, 0..n).prop_map(|(i, j)| Op::Join(i, j)),
        (0..n).prop_map(Op::Split),
        (0..n.max(2) - 1).prop_map(Op::Swap),
    ]
}

fn case_strategy() -> impl Strategy<Value = (usize, Vec<Op>)> {
    (2usize..=16).prop_flat_map(|n| (Just(n), prop::collection::vec(op_strategy(n), 0..40)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn operations_match_set_model((n, ops) in case_strategy()) {
        let mut p = Partition::singletons(n);
        let mut model = naive_singletons(n);
        for op in ops {
            match op {
                Op::Join(i, j) => {
                    p.join(i, j).unwrap();
                    naive_join(&mut model, i, j);
                }
                Op::Split(i) => {
                    p.split(i).unwrap();
                    naive_split(&mut model, i);
                }
                Op::Swap(i) => {
                    p.swap_adjacent(i).unwrap();
                    naive_swap(&mut model, i);
                }
            }
            assert_canonical(&p);
            let expected = encode(&model, n);
            prop_assert_eq!(p.as_slice(), &expected[..]);
            prop_assert_eq!(decode(&p), model.clone());
        }
    }

    #[test]
    fn joins_commute((n, ops) in case_strategy(), a in 0usize..16, b in 0usize..16, c in 0usize..16, d in 0usize..16) {
        let mut p = Partition::singletons(n);
        for op in ops {
            match op {
                Op::Join(i, j) => p.join(i, j).unwrap(),
                Op::Split(i) => p.split(i).unwrap(),
                Op::Swap(i) => p.swap_adjacent(i).unwrap(),
            }
        }
        let (a, b, c, d) = (a % n, b % n, c % n, d % n);
        let mut x = p.clone();
        x.join(a, b).unwrap();
        x.join(c, d).unwrap();
        let mut y = p.clone();
        y.join(c, d).unwrap();
        y.join(a, b).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn split_undoes_join_of_singletons((n, ops) in case_strategy(), i in 0usize..16, j in 0usize..16) {
        let mut p = Partition::singletons(n);
        for op in ops {
            match op {
                Op::Join(i, j) => p.join(i, j).unwrap(),
                Op::Split(i) => p.split(i).unwrap(),
                Op::Swap(i) => p.swap_adjacent(i).unwrap(),
            }
        }
        let (i, j) = (i % n, j % n);
        p.split(i).unwrap();
        p.split(j).unwrap();
        let before = p.clone();
        p.join(i, j).unwrap();
        p.split(j).unwrap();
        prop_assert!(!p.shares_block(i, j));
        prop_assert_eq!(p, before);
    }
}

/// All set partitions of `0..n` as restricted growth strings.
fn all_partitions(n: usize) -> Vec<Naive> {
    fn go(n: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Naive>) {
        if rgs.len() == n {
            let mut blocks = vec![BTreeSet::new(); max];
            for (q, &b) in rgs.iter().enumerate() {
                blocks[b].insert(q);
            }
            out.push(blocks.into_iter().collect());
            return;
        }
        for b in 0..=max {
            rgs.push(b);
            go(n, rgs, max.max(b + 1), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), 0, &mut out);
    out
}

#[test]
fn encode_decode_exhaustive() {
    // Bell numbers
    let expected = [1, 1, 2, 5, 15, 52, 203];
    for (n, &count) in expected.iter().enumerate() {
        let all = all_partitions(n);
        assert_eq!(all.len(), count);
        let mut seen = BTreeSet::new();
        for s in &all {
            let blocks: Vec<Vec<usize>> = s.iter().map(|b| b.iter().copied().collect()).collect();
            let p = Partition::from_blocks(n, &blocks).unwrap();
            assert_canonical(&p);
            assert_eq!(&decode(&p), s);
            assert_eq!(Partition::from_parent(p.as_slice().to_vec()).unwrap(), p);
            assert!(seen.insert(p.as_slice().to_vec()), "encoding not unique");
        }
    }
}

#[test]
fn non_canonical_arrays_are_rejected() {
    // every array over 0..n with entries <= index that is not canonical
    for n in 1..=5usize {
        let total: usize = (1..=n).product();
        let mut canonical = 0;
        for code in 0..total {
            let mut parent = Vec::with_capacity(n);
            let mut c = code;
            for i in 0..n {
                parent.push(c % (i + 1));
                c /= i + 1;
            }
            if let Ok(p) = Partition::from_parent(parent) {
                assert_canonical(&p);
                canonical += 1;
            }
        }
        // canonical arrays correspond one-to-one with partitions
        assert_eq!(canonical, all_partitions(n).len());
    }
}
