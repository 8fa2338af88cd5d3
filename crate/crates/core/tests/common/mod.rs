//! Helpers shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use entangle_core::Partition;

/// Reference model: a partition as a set of sets.
pub type Naive = BTreeSet<BTreeSet<usize>>;

pub fn naive_singletons(n: usize) -> Naive {
    (0..n).map(|i| BTreeSet::from([i])).collect()
}

pub fn naive_block(p: &Naive, q: usize) -> BTreeSet<usize> {
    p.iter().find(|b| b.contains(&q)).cloned().expect("member")
}

pub fn naive_join(p: &mut Naive, i: usize, j: usize) {
    let (a, b) = (naive_block(p, i), naive_block(p, j));
    p.remove(&a);
    p.remove(&b);
    p.insert(a.union(&b).copied().collect());
}

pub fn naive_split(p: &mut Naive, q: usize) {
    let a = naive_block(p, q);
    p.remove(&a);
    let rest: BTreeSet<usize> = a.into_iter().filter(|&x| x != q).collect();
    if !rest.is_empty() {
        p.insert(rest);
    }
    p.insert(BTreeSet::from([q]));
}

pub fn naive_swap(p: &mut Naive, i: usize) {
    let swap = |x: usize| match x {
        x if x == i => i + 1,
        x if x == i + 1 => i,
        x => x,
    };
    *p = p.iter().map(|b| b.iter().map(|&x| swap(x)).collect()).collect();
}

pub fn encode(p: &Naive, n: usize) -> Vec<usize> {
    let mut parent = vec![0; n];
    for b in p {
        let rep = *b.iter().next().unwrap();
        for &q in b {
            parent[q] = rep;
        }
    }
    parent
}

pub fn decode(p: &Partition) -> Naive {
    p.blocks().into_iter().map(|b| b.into_iter().collect()).collect()
}

pub fn assert_canonical(p: &Partition) {
    let a = p.as_slice();
    for (i, &r) in a.iter().enumerate() {
        assert!(r <= i, "{a:?}: parent[{i}] > {i}");
        assert_eq!(a[r], r, "{a:?}: representative {r} not a fixed point");
        let smallest = a.iter().position(|&x| x == r).unwrap();
        assert_eq!(smallest, r, "{a:?}: representative of {i} not the smallest member");
    }
}

