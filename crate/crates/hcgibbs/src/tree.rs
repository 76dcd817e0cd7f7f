//! Finite Cayley-tree geometry.
//!
//! The Cayley tree of order `k` is the infinite tree in which every vertex has
//! exactly `k + 1` neighbors. A finite layout keeps the ball of radius `n`
//! around a root: the root has `k + 1` children and every deeper vertex has
//! `k`, so the sphere sizes are `|W_m| = (k+1) k^(m-1)` for `m >= 1`. The ball
//! `V_n` here includes the root (level 0). Vertices are numbered breadth-first,
//! which makes `V_m` a prefix of `V_n` for `m <= n` with identical numbering —
//! configurations restrict by truncation.

use crate::error::HcError;
use crate::Result;

/// Refuse to build layouts above this many vertices.
pub const DEFAULT_VERTEX_CAP: usize = 1 << 22;

/// A depth-`n` ball of the order-`k` Cayley tree with breadth-first indexing.
#[derive(Debug, Clone)]
pub struct TreeLayout {
    order: u32,
    depth: u32,
    /// `level_start[m]` is the index of the first vertex at distance `m`;
    /// a final sentinel holds the vertex count.
    level_start: Vec<usize>,
    parent: Vec<usize>,
    level: Vec<u32>,
}

/// Number of vertices at distance `m` from the root.
pub fn sphere_size(k: u32, m: u32) -> u128 {
    if m == 0 {
        1
    } else {
        (k as u128 + 1) * (k as u128).pow(m - 1)
    }
}

/// Builds the ball of radius `n` in the order-`k` tree.
pub fn build_tree(k: u32, n: u32) -> Result<TreeLayout> {
    build_tree_with_cap(k, n, DEFAULT_VERTEX_CAP)
}

pub fn build_tree_with_cap(k: u32, n: u32, cap: usize) -> Result<TreeLayout> {
    assert!(k >= 1, "tree order must be at least 1");
    let mut total: u128 = 0;
    let mut level_start = Vec::with_capacity(n as usize + 2);
    for m in 0..=n {
        level_start.push(total as usize);
        total += sphere_size(k, m);
        if total > cap as u128 {
            return Err(HcError::TreeTooLarge {
                requested: total,
                cap,
            });
        }
    }
    level_start.push(total as usize);
    let total = total as usize;

    let mut parent = vec![0usize; total];
    let mut level = vec![0u32; total];
    for m in 1..=n {
        let start = level_start[m as usize];
        let end = level_start[m as usize + 1];
        for x in start..end {
            level[x] = m;
            let j = x - start;
            parent[x] = if m == 1 {
                0
            } else {
                level_start[m as usize - 1] + j / k as usize
            };
        }
    }
    Ok(TreeLayout {
        order: k,
        depth: n,
        level_start,
        parent,
        level,
    })
}

impl TreeLayout {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Total number of vertices, `|V_depth|`.
    pub fn vertex_count(&self) -> usize {
        *self.level_start.last().unwrap()
    }

    /// `|V_m|` for `m <= depth` (root included).
    pub fn ball_size(&self, m: u32) -> usize {
        assert!(m <= self.depth);
        self.level_start[m as usize + 1]
    }

    /// The index range of the sphere `W_m`.
    pub fn level_range(&self, m: u32) -> std::ops::Range<usize> {
        assert!(m <= self.depth);
        self.level_start[m as usize]..self.level_start[m as usize + 1]
    }

    pub fn level_of(&self, x: usize) -> u32 {
        self.level[x]
    }

    pub fn parent_of(&self, x: usize) -> Option<usize> {
        if x == 0 {
            None
        } else {
            Some(self.parent[x])
        }
    }

    /// Children `S(x)` inside the layout; empty at the boundary level.
    pub fn children(&self, x: usize) -> std::ops::Range<usize> {
        let m = self.level[x] as usize;
        if m as u32 == self.depth {
            return 0..0;
        }
        if x == 0 {
            return self.level_start[1]..self.level_start[2];
        }
        let j = x - self.level_start[m];
        let start = self.level_start[m + 1] + j * self.order as usize;
        start..start + self.order as usize
    }
}
