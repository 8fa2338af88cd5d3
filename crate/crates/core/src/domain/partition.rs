use std::fmt;

use super::DomainError;

/// A set partition of `0..n` stored as a canonical representative array.
///
/// `parent[i]` is the smallest member of the block containing `i`, so
/// `[0, 0, 2, 2, 4]` is `{{0, 1}, {2, 3}, {4}}` and every partition has
/// exactly one encoding. All updates run in `O(n)` and keep that form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parent: Vec<usize>,
}

impl Partition {
    /// The all-singletons partition of `n` elements.
    pub fn singletons(n: usize) -> Self {
        Partition {
            parent: (0..n).collect(),
        }
    }

    /// Accepts only canonical arrays.
    pub fn from_parent(parent: Vec<usize>) -> Result<Self, DomainError> {
        for (i, &p) in parent.iter().enumerate() {
            if p > i || parent[p] != p {
                return Err(DomainError::NotCanonical(parent));
            }
        }
        Ok(Partition { parent })
    }

    /// Builds the canonical encoding of the given blocks, which must cover
    /// `0..n` exactly once.
    pub fn from_blocks<B: AsRef<[usize]>>(n: usize, blocks: &[B]) -> Result<Self, DomainError> {
        const UNSET: usize = usize::MAX;
        let mut parent = vec![UNSET; n];
        for block in blocks {
            let block = block.as_ref();
            let Some(&rep) = block.iter().min() else {
                return Err(DomainError::EmptyBlock);
            };
            for &q in block {
                if q >= n {
                    return Err(DomainError::IndexOutOfRange { index: q, len: n });
                }
                if parent[q] != UNSET {
                    return Err(DomainError::DuplicateMember(q));
                }
                parent[q] = rep;
            }
        }
        if let Some(missing) = parent.iter().position(|&p| p == UNSET) {
            return Err(DomainError::MissingMember(missing));
        }
        Ok(Partition { parent })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.parent
    }

    /// Representative (smallest member) of the block containing `i`.
    ///
    /// Panics if `i` is out of range.
    pub fn rep(&self, i: usize) -> usize {
        self.parent[i]
    }

    /// Panics if either index is out of range.
    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.parent[i] == self.parent[j]
    }

    /// Whether `i` and `j` are distinct members of one block.
    pub fn shares_block(&self, i: usize, j: usize) -> bool {
        i != j && self.same_block(i, j)
    }

    pub fn is_singleton(&self, i: usize) -> bool {
        let r = self.parent[i];
        !self
            .parent
            .iter()
            .enumerate()
            .any(|(k, &p)| p == r && k != i)
    }

    pub fn is_all_singletons(&self) -> bool {
        self.parent.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Blocks ordered by smallest member, members ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut slot = vec![usize::MAX; self.parent.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (i, &p) in self.parent.iter().enumerate() {
            if p == i {
                slot[i] = out.len();
                out.push(vec![i]);
            } else {
                out[slot[p]].push(i);
            }
        }
        out
    }

    /// Unite the blocks of `i` and `j`; the smaller representative survives.
    pub fn join(&mut self, i: usize, j: usize) -> Result<(), DomainError> {
        self.check(i)?;
        self.check(j)?;
        let (a, b) = (self.parent[i], self.parent[j]);
        if a == b {
            return Ok(());
        }
        let (keep, drop) = (a.min(b), a.max(b));
        for p in &mut self.parent[drop..] {
            if *p == drop {
                *p = keep;
            }
        }
        Ok(())
    }

    /// Move `i` into a singleton block. When `i` was its block's
    /// representative, the next-smallest member takes over.
    pub fn split(&mut self, i: usize) -> Result<(), DomainError> {
        self.check(i)?;
        let r = self.parent[i];
        if r != i {
            self.parent[i] = i;
            return Ok(());
        }
        // members of i's block all lie above i
        if let Some(next) = (i + 1..self.parent.len()).find(|&k| self.parent[k] == i) {
            for p in &mut self.parent[next..] {
                if *p == i {
                    *p = next;
                }
            }
        }
        Ok(())
    }

    /// Exchange the block memberships of `i` and `i + 1`.
    pub fn swap_adjacent(&mut self, i: usize) -> Result<(), DomainError> {
        self.check(i)?;
        self.check(i + 1)?;
        let (a, b) = (self.parent[i], self.parent[i + 1]);
        if a == b {
            return Ok(());
        }
        // a representative sitting on a swapped wire moves with it
        let new_a = if a == i { i + 1 } else { a };
        let new_b = if b == i + 1 { i } else { b };
        if new_a != a || new_b != b {
            for p in &mut self.parent {
                if *p == a {
                    *p = new_a;
                } else if *p == b {
                    *p = new_b;
                }
            }
        }
        self.parent[i] = new_b;
        self.parent[i + 1] = new_a;
        Ok(())
    }

    fn check(&self, i: usize) -> Result<(), DomainError> {
        if i < self.parent.len() {
            Ok(())
        } else {
            Err(DomainError::IndexOutOfRange {
                index: i,
                len: self.parent.len(),
            })
        }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{:?}", self.parent)
    }
}

/// Set notation, e.g. `{{0,1},{2}}`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, block) in self.blocks().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (m, q) in block.iter().enumerate() {
                if m > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{q}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}
