use crate::graph::VertexId;

/// Disjoint-set forest over the vertices of a decoding graph, tracking the
/// defect parity and boundary contact of every cluster at its root.
#[derive(Clone, Debug)]
pub struct UnionFindForest {
    parent: Vec<u32>,
    size: Vec<u32>,
    odd: Vec<bool>,
    boundary: Vec<bool>,
}

impl UnionFindForest {
    /// One singleton cluster per vertex; `defects[k]` is the parity of vertex `k + 1`.
    pub fn new(defects: &[bool]) -> Self {
        let n = defects.len();
        UnionFindForest {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            odd: defects.to_vec(),
            boundary: vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, v: VertexId) -> VertexId {
        let mut root = v.index() as u32;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = v.index() as u32;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        VertexId::from_index(root as usize)
    }

    /// Merges the clusters of `u` and `v` and returns the new root.
    pub fn union(&mut self, u: VertexId, v: VertexId) -> VertexId {
        let (mut a, mut b) = (self.find(u).index(), self.find(v).index());
        if a == b {
            return VertexId::from_index(a);
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
        self.odd[a] ^= self.odd[b];
        self.boundary[a] |= self.boundary[b];
        VertexId::from_index(a)
    }

    /// Parity of the defects in `v`'s cluster.
    pub fn parity(&mut self, v: VertexId) -> bool {
        let r = self.find(v).index();
        self.odd[r]
    }

    pub fn touches_boundary(&mut self, v: VertexId) -> bool {
        let r = self.find(v).index();
        self.boundary[r]
    }

    pub fn mark_boundary(&mut self, v: VertexId) {
        let r = self.find(v).index();
        self.boundary[r] = true;
    }

    /// Odd parity and no boundary contact: the cluster must keep growing.
    pub fn is_odd(&mut self, v: VertexId) -> bool {
        let r = self.find(v).index();
        self.odd[r] && !self.boundary[r]
    }

    pub fn cluster_size(&mut self, v: VertexId) -> usize {
        let r = self.find(v).index();
        self.size[r] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn self_union_is_a_no_op() {
        let mut f = UnionFindForest::new(&[true, false]);
        let r = f.union(v(1), v(1));
        assert_eq!(r, v(1));
        assert_eq!(f.find(v(1)), v(1));
        assert!(f.parity(v(1)));
        assert_eq!(f.cluster_size(v(1)), 1);
    }

    #[test]
    fn odd_plus_odd_is_even() {
        let mut f = UnionFindForest::new(&[true, true, true]);
        f.union(v(1), v(2));
        assert!(!f.parity(v(2)));
        f.union(v(3), v(1));
        assert!(f.parity(v(1)));
        f.mark_boundary(v(2));
        assert!(f.touches_boundary(v(3)));
        assert!(!f.is_odd(v(3)));
    }

    #[test]
    fn two_chains_join_under_one_root() {
        let mut f = UnionFindForest::new(&[false; 6]);
        f.union(v(1), v(2));
        f.union(v(2), v(3));
        f.union(v(4), v(5));
        f.union(v(5), v(6));
        assert_ne!(f.find(v(1)), f.find(v(4)));
        f.union(v(3), v(4));
        let r = f.find(v(1));
        assert!((1..=6).all(|i| f.find(v(i)) == r));
        assert_eq!(f.cluster_size(v(6)), 6);
    }
}
