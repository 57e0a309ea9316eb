//! Exact clique search on small dense graphs stored as bitset rows.

use fixedbitset::FixedBitSet;

/// Undirected graph on `0..len` with bitset adjacency rows.
#[derive(Clone, Debug)]
pub struct BitGraph {
    rows: Vec<FixedBitSet>,
}

impl BitGraph {
    pub fn new(len: usize) -> Self {
        BitGraph { rows: vec![FixedBitSet::with_capacity(len); len] }
    }

    /// Builds the graph whose edges are the unordered pairs accepted by `edge`.
    pub fn from_fn(len: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = BitGraph::new(len);
        for i in 0..len {
            for j in i + 1..len {
                if edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
        self.rows[j].insert(i);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    /// The lexicographically smallest clique of exactly `size` vertices drawn
    /// from `within`, if one exists.
    pub fn find_clique_in(&self, within: &FixedBitSet, size: usize) -> Option<Vec<usize>> {
        if size == 0 {
            return Some(Vec::new());
        }
        let mut current = Vec::with_capacity(size);
        if self.extend(&mut current, within, size) {
            Some(current)
        } else {
            None
        }
    }

    pub fn find_clique(&self, size: usize) -> Option<Vec<usize>> {
        let mut all = FixedBitSet::with_capacity(self.len());
        all.insert_range(..);
        self.find_clique_in(&all, size)
    }

    fn extend(&self, current: &mut Vec<usize>, candidates: &FixedBitSet, size: usize) -> bool {
        if current.len() == size {
            return true;
        }
        if current.len() + candidates.count_ones(..) < size {
            return false;
        }
        for v in candidates.ones() {
            let mut next = candidates.clone();
            next.intersect_with(&self.rows[v]);
            // only extend upward so each clique is visited once, smallest first
            next.set_range(..v + 1, false);
            current.push(v);
            if self.extend(current, &next, size) {
                return true;
            }
            current.pop();
        }
        false
    }
}
