// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A partition of `{0..n-1}` in canonical form: every block sorted, blocks
/// ordered by their smallest member. Two partitions are equal iff they have
/// the same blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Groups nodes by an arbitrary per-node key.
    pub fn from_labels<K: Ord + Copy>(labels: &[K]) -> Self {
        let mut groups: BTreeMap<K, Vec<usize>> = BTreeMap::new();
        for (v, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(v);
        }
        Self::from_blocks(groups.into_values().collect())
    }

    /// Canonicalizes a list of blocks. Panics if the blocks overlap, leave a
    /// gap in `{0..n-1}`, or contain an empty block.
    pub fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            assert!(!b.is_empty(), "empty block");
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for &v in blocks.iter().flatten() {
            assert!(v < n && !seen[v], "blocks do not partition 0..{n}");
            seen[v] = true;
        }
        Partition { blocks }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<usize>> {
        self.blocks
    }

    /// Number of nodes covered.
    pub fn node_count(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index per node.
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.node_count()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                idx[v] = i;
            }
        }
        idx
    }

    pub fn same_block(&self, u: usize, v: usize) -> bool {
        self.blocks.iter().any(|b| b.contains(&u) && b.contains(&v))
    }

    /// True if every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let idx = coarser.block_index();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&v| idx[v] == idx[b[0]]))
    }
}

impl fmt::Display for Partition {
    /// `{0,2} {1} {3,4}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("{")?;
            for (j, v) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}
