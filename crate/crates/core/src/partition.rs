//! Set partitions of `{0, .., n-1}` and the refinement order.

use crate::error::{Error, Result};

/// Default cap on the ground-set size for exhaustive partition enumeration.
pub const DEFAULT_PARTITION_CAP: usize = 10;

/// A partition stored as a restricted growth string: `labels[i]` is the block
/// of element `i`, and blocks are numbered in order of their least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
    count: usize,
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.blocks())
    }
}

impl Partition {
    /// Canonicalizes an arbitrary block labelling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let canon: Vec<usize> = labels
            .iter()
            .map(|&l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
            .collect();
        Partition {
            count: map.len(),
            labels: canon,
        }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x >= n {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} outside 0..{n}"
                    )));
                }
                if labels[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} in two blocks"
                    )));
                }
                labels[x] = b;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!("element {x} not covered")));
        }
        Ok(Partition::from_labels(&labels))
    }

    /// All singletons.
    pub fn discrete(n: usize) -> Self {
        Partition {
            labels: (0..n).collect(),
            count: n,
        }
    }

    /// One block (none when `n == 0`).
    pub fn indiscrete(n: usize) -> Self {
        Partition {
            labels: vec![0; n],
            count: usize::from(n > 0),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.count
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.labels[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn is_discrete(&self) -> bool {
        self.count == self.labels.len()
    }

    pub fn is_indiscrete(&self) -> bool {
        self.count <= 1
    }

    /// Blocks sorted internally and ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.count];
        for (x, &l) in self.labels.iter().enumerate() {
            blocks[l].push(x);
        }
        blocks
    }

    /// Blocks as bitmasks.
    pub fn block_masks(&self) -> Vec<u64> {
        let mut masks = vec![0u64; self.count];
        for (x, &l) in self.labels.iter().enumerate() {
            masks[l] |= 1 << x;
        }
        masks
    }

    /// `self ⪯ other`: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        if self.ground_size() != other.ground_size() {
            return Err(Error::GroundSetMismatch(
                self.ground_size(),
                other.ground_size(),
            ));
        }
        let mut image = vec![usize::MAX; self.count];
        for (x, &l) in self.labels.iter().enumerate() {
            let target = other.labels[x];
            if image[l] == usize::MAX {
                image[l] = target;
            } else if image[l] != target {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `other / self`: the partition of the blocks of `self` grouping blocks
    /// that lie in a common block of `other`. Requires `self ⪯ other`.
    pub fn quotient_by(&self, other: &Partition) -> Result<Partition> {
        if !self.refines(other)? {
            return Err(Error::NotRefinement);
        }
        let mut labels = vec![0; self.count];
        for (x, &l) in self.labels.iter().enumerate() {
            labels[l] = other.labels[x];
        }
        Ok(Partition::from_labels(&labels))
    }

    /// Every partition that refines `self`.
    pub fn refinements(&self) -> Vec<Partition> {
        let blocks = self.blocks();
        let per_block: Vec<Vec<Vec<usize>>> = blocks
            .iter()
            .map(|b| restricted_growth_strings(b.len()))
            .collect();
        let mut out = Vec::new();
        let mut labels = vec![0usize; self.labels.len()];
        refine_rec(&blocks, &per_block, 0, 0, &mut labels, &mut out);
        out
    }
}

fn refine_rec(
    blocks: &[Vec<usize>],
    per_block: &[Vec<Vec<usize>>],
    i: usize,
    offset: usize,
    labels: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if i == blocks.len() {
        out.push(Partition::from_labels(labels));
        return;
    }
    for rgs in &per_block[i] {
        let used = rgs.iter().max().map_or(0, |m| m + 1);
        for (k, &x) in blocks[i].iter().enumerate() {
            labels[x] = offset + rgs[k];
        }
        refine_rec(blocks, per_block, i + 1, offset + used, labels, out);
    }
}

/// All restricted growth strings of length `n` in lexicographic order.
fn restricted_growth_strings(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut rgs = vec![0usize; n];
    let mut max = vec![0usize; n];
    loop {
        out.push(rgs.clone());
        // rightmost position that can still grow
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            if rgs[i] <= max[i - 1] {
                break;
            }
            i -= 1;
        }
        rgs[i] += 1;
        max[i] = max[i - 1].max(rgs[i]);
        for j in i + 1..n {
            rgs[j] = 0;
            max[j] = max[i];
        }
    }
}

/// Every set partition of an `n`-element set, each once, in restricted
/// growth string order. Fails when `n` exceeds `cap`.
pub fn all_partitions(n: usize, cap: usize) -> Result<Vec<Partition>> {
    if n > cap {
        return Err(Error::TooLarge {
            what: "partition ground set",
            size: n,
            cap,
        });
    }
    Ok(restricted_growth_strings(n)
        .into_iter()
        .map(|labels| {
            let count = labels.iter().max().map_or(0, |m| m + 1);
            Partition { labels, count }
        })
        .collect())
}
