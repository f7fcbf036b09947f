//! Oriented combinatorial maps given by a face permutation and an edge
//! involution on darts, with an isomorphism search.

use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedMap {
    /// Successor of each dart in its face cycle.
    pub next: Vec<usize>,
    /// The other dart of the same edge.
    pub opp: Vec<usize>,
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn cycle_count(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut n = 0;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        n += 1;
        let mut c = s;
        while !seen[c] {
            seen[c] = true;
            c = p[c];
        }
    }
    n
}

impl OrientedMap {
    pub fn darts(&self) -> usize {
        self.next.len()
    }

    /// Rotation about vertices: dart to the next dart leaving the same
    /// vertex.
    pub fn vertex_rotation(&self) -> Vec<usize> {
        (0..self.darts()).map(|d| self.next[self.opp[d]]).collect()
    }

    pub fn faces(&self) -> usize {
        cycle_count(&self.next)
    }

    pub fn vertices(&self) -> usize {
        cycle_count(&self.vertex_rotation())
    }

    pub fn edges(&self) -> usize {
        self.darts() / 2
    }

    pub fn euler(&self) -> i64 {
        self.vertices() as i64 - self.edges() as i64 + self.faces() as i64
    }

    pub fn is_valid(&self) -> bool {
        let n = self.darts();
        self.opp.len() == n && (0..n).all(|d| self.opp[d] < n && self.opp[d] != d && self.opp[self.opp[d]] == d) && {
            let mut hit = vec![false; n];
            self.next.iter().all(|&x| x < n && !std::mem::replace(&mut hit[x], true))
        }
    }

    /// Same cells, opposite orientation: every face is read backwards.
    pub fn mirror(&self) -> OrientedMap {
        OrientedMap { next: invert(&self.next), opp: self.opp.clone() }
    }

    /// Dual map: faces become vertices and vertices become faces.
    pub fn dual(&self) -> OrientedMap {
        OrientedMap { next: self.vertex_rotation(), opp: self.opp.clone() }
    }

    /// Finds a dart bijection `h` with `h∘next = other.next∘h` and
    /// `h∘opp = other.opp∘h`. Assumes `self` is connected.
    pub fn isomorphism_to(&self, other: &OrientedMap) -> Option<Vec<usize>> {
        let n = self.darts();
        if n != other.darts() || n == 0 {
            return if n == other.darts() { Some(Vec::new()) } else { None };
        }
        if self.faces() != other.faces() || self.vertices() != other.vertices() {
            return None;
        }
        'targets: for t in 0..n {
            let mut h = vec![usize::MAX; n];
            let mut used = vec![false; n];
            h[0] = t;
            used[t] = true;
            let mut queue = VecDeque::from([0usize]);
            while let Some(d) = queue.pop_front() {
                let img = h[d];
                for (a, b) in [(self.next[d], other.next[img]), (self.opp[d], other.opp[img])] {
                    if h[a] == usize::MAX {
                        if used[b] {
                            continue 'targets;
                        }
                        h[a] = b;
                        used[b] = true;
                        queue.push_back(a);
                    } else if h[a] != b {
                        continue 'targets;
                    }
                }
            }
            if h.iter().all(|&x| x != usize::MAX) {
                return Some(h);
            }
        }
        None
    }
}
