//! Partitions of the state set, in a canonical value form.
//!
//! Blocks are stored with members ascending and blocks ordered by their
//! smallest member, so two partitions are equal as values exactly when they
//! are equal as sets of blocks. The refinement engine and both reference
//! oracles all export this type, which is what makes their outputs directly
//! comparable in tests.

use crate::model::StateId;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    blocks: Vec<Vec<StateId>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Builds a partition from an arbitrary per-state block assignment.
    /// Assignment values only matter up to equality; block ids are
    /// renumbered canonically.
    pub fn from_assignment(assignment: &[usize]) -> Self {
        let mut remap: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<StateId>> = Vec::new();
        let mut block_of = vec![0usize; assignment.len()];
        for (q, &raw) in assignment.iter().enumerate() {
            let next = blocks.len();
            let id = *remap.entry(raw).or_insert_with(|| {
                blocks.push(Vec::new());
                next
            });
            blocks[id].push(q);
            block_of[q] = id;
        }
        Partition { blocks, block_of }
    }

    /// Builds a partition from explicit blocks over the states `0..n`.
    /// Fails if the blocks do not partition that range.
    pub fn from_blocks(blocks: Vec<Vec<StateId>>, n: usize) -> Result<Self, String> {
        let mut assignment = vec![usize::MAX; n];
        for (id, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(format!("block {} is empty", id));
            }
            for &q in block {
                if q >= n {
                    return Err(format!("state {} out of range", q));
                }
                if assignment[q] != usize::MAX {
                    return Err(format!("state {} appears in two blocks", q));
                }
                assignment[q] = id;
            }
        }
        if let Some(q) = assignment.iter().position(|&b| b == usize::MAX) {
            return Err(format!("state {} not covered", q));
        }
        Ok(Self::from_assignment(&assignment))
    }

    pub fn state_count(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks with members ascending, ordered by smallest member.
    pub fn blocks(&self) -> &[Vec<StateId>] {
        &self.blocks
    }

    pub fn block_of(&self, q: StateId) -> usize {
        self.block_of[q]
    }

    pub fn block_assignment(&self) -> &[usize] {
        &self.block_of
    }

    /// True when every block is a singleton.
    pub fn is_identity(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }
}
