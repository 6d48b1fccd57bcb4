//! Kernel partitions, block refinement and transversals.

use serde::{Deserialize, Serialize};

use crate::transform::Transformation;

pub type Block = Vec<usize>;

/// The partition of `X` into the nonempty fibers of a map, blocks ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KernelPartition {
    blocks: Vec<Block>,
}

impl KernelPartition {
    pub fn of(f: &Transformation) -> Self {
        KernelPartition {
            blocks: fibers_over(f, |_| true),
        }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block holding `x`.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }
}

/// Fibers `z f^-1` over the image points `z` accepted by `keep`, ordered by least element.
fn fibers_over(f: &Transformation, keep: impl Fn(usize) -> bool) -> Vec<Block> {
    let mut by_image: Vec<Block> = vec![Vec::new(); f.n()];
    for (x, &z) in f.images().iter().enumerate() {
        by_image[z].push(x);
    }
    let mut blocks: Vec<Block> = by_image
        .into_iter()
        .enumerate()
        .filter(|(z, b)| !b.is_empty() && keep(*z))
        .map(|(_, b)| b)
        .collect();
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// `π_f(A)`: the fibers of `f` over the points of `Xf ∩ A`.
pub fn image_fibers(f: &Transformation, a: &[usize]) -> Vec<Block> {
    let mut in_a = vec![false; f.n()];
    for &x in a {
        if x < f.n() {
            in_a[x] = true;
        }
    }
    fibers_over(f, |z| in_a[z])
}

/// `a ⪯ b`: every block of `a` lies inside some block of `b`.
pub fn refines(a: &[Block], b: &[Block]) -> bool {
    a.iter()
        .all(|small| b.iter().any(|big| small.iter().all(|x| big.contains(x))))
}

/// Mutual refinement.
pub fn same_blocks(a: &[Block], b: &[Block]) -> bool {
    refines(a, b) && refines(b, a)
}

/// Every transversal of `ker(f)` that contains `require`, in lexicographic order of the
/// sorted sets. Empty when some fiber holds two required points.
pub fn transversals(f: &Transformation, require: &[usize]) -> std::vec::IntoIter<Block> {
    let partition = KernelPartition::of(f);
    let mut choices: Vec<Vec<usize>> = Vec::with_capacity(partition.len());
    for block in partition.blocks() {
        let required: Vec<usize> = block
            .iter()
            .copied()
            .filter(|x| require.contains(x))
            .collect();
        match required.len() {
            0 => choices.push(block.clone()),
            1 => choices.push(required),
            _ => return Vec::new().into_iter(),
        }
    }
    // a required point outside X would never be covered
    if require.iter().any(|&x| x >= f.n()) {
        return Vec::new().into_iter();
    }

    let mut out = Vec::new();
    let mut cursor = vec![0usize; choices.len()];
    loop {
        let mut set: Block = cursor.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        set.sort_unstable();
        out.push(set);

        let mut k = choices.len();
        loop {
            if k == 0 {
                out.sort();
                return out.into_iter();
            }
            k -= 1;
            cursor[k] += 1;
            if cursor[k] < choices[k].len() {
                break;
            }
            cursor[k] = 0;
        }
    }
}
