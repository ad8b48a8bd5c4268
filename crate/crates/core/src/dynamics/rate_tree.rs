//! Aggregate sum tree over per-site event rates.
//!
//! Supports total-rate queries, single-leaf updates and selection of a
//! leaf proportional to its rate, all in O(log L). Internal nodes are
//! recomputed from their children on every update, so the root never
//! drifts from the leaf sum by more than a few ulps.

pub struct SumTree {
    leaves: usize,
    len: usize,
    tree: Vec<f64>,
}

impl SumTree {
    pub fn new(values: &[f64]) -> Self {
        let len = values.len();
        let leaves = len.next_power_of_two().max(1);
        let mut tree = vec![0.0; 2 * leaves];
        tree[leaves..leaves + len].copy_from_slice(values);
        for i in (1..leaves).rev() {
            tree[i] = tree[2 * i] + tree[2 * i + 1];
        }
        Self { leaves, len, tree }
    }

    pub fn total(&self) -> f64 {
        self.tree[1]
    }

    pub fn get(&self, i: usize) -> f64 {
        self.tree[self.leaves + i]
    }

    pub fn update(&mut self, i: usize, value: f64) {
        debug_assert!(i < self.len);
        let mut idx = self.leaves + i;
        self.tree[idx] = value;
        idx /= 2;
        while idx >= 1 {
            self.tree[idx] = self.tree[2 * idx] + self.tree[2 * idx + 1];
            idx /= 2;
        }
    }

    /// Leaf index `i` such that `u` falls inside its rate interval, for
    /// `u` in `[0, total)`. Rounding can push the descent onto an empty
    /// leaf at interval edges; those land on the nearest occupied leaf
    /// instead.
    pub fn select(&self, mut u: f64) -> usize {
        let mut idx = 1;
        while idx < self.leaves {
            let left = self.tree[2 * idx];
            if u < left {
                idx = 2 * idx;
            } else {
                u -= left;
                idx = 2 * idx + 1;
            }
        }
        let leaf = idx - self.leaves;
        if leaf < self.len && self.tree[idx] > 0.0 {
            return leaf;
        }
        // fp edge: walk back to the last positive leaf
        for j in (0..self.len.min(leaf + 1)).rev() {
            if self.tree[self.leaves + j] > 0.0 {
                return j;
            }
        }
        for j in 0..self.len {
            if self.tree[self.leaves + j] > 0.0 {
                return j;
            }
        }
        panic!("select on an empty tree");
    }
}
