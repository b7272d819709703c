//! Spatial index for the Minkowski-family metrics (L1, L2, Chebyshev).
//!
//! Query results are index-for-index identical to the brute-force scan:
//! candidate distances are always recomputed with the same full-vector
//! metric kernel, pruning bounds are shrunk by a small relative slack so
//! accumulated rounding in the box bound can never discard a point the
//! scan would keep, and ties are resolved by the same (distance, row)
//! ordering.

use super::{push_candidate, Candidate};
use crate::data::LabeledDataset;
use crate::metrics::MetricKind;
use std::collections::BinaryHeap;

const LEAF_SIZE: usize = 16;
// Box bounds are exact in real arithmetic but accumulate a few ulps of
// rounding; scaling them down makes pruning strictly conservative.
const BOUND_SLACK: f64 = 1.0 - 1e-9;

struct Node {
    lo: Vec<f64>,
    hi: Vec<f64>,
    kind: NodeKind,
}

enum NodeKind {
    Leaf { start: usize, end: usize },
    Split { left: usize, right: usize },
}

pub(super) struct KdTree {
    nodes: Vec<Node>,
    order: Vec<u32>,
    root: usize,
    metric: MetricKind,
}

impl KdTree {
    pub(super) fn build(dataset: &LabeledDataset, metric: MetricKind) -> Self {
        debug_assert!(metric.supports_spatial_index());
        let mut order: Vec<u32> = (0..dataset.n() as u32).collect();
        let mut tree = KdTree { nodes: Vec::new(), order: Vec::new(), root: 0, metric };
        let root = tree.build_range(dataset, &mut order, 0, dataset.n());
        tree.order = order;
        tree.root = root;
        tree
    }

    fn build_range(
        &mut self,
        dataset: &LabeledDataset,
        order: &mut [u32],
        start: usize,
        end: usize,
    ) -> usize {
        let d = dataset.d();
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for &i in &order[start..end] {
            for (c, &v) in dataset.row(i as usize).iter().enumerate() {
                if v < lo[c] {
                    lo[c] = v;
                }
                if v > hi[c] {
                    hi[c] = v;
                }
            }
        }
        let len = end - start;
        if len <= LEAF_SIZE {
            self.nodes.push(Node { lo, hi, kind: NodeKind::Leaf { start, end } });
            return self.nodes.len() - 1;
        }
        // Split the widest extent at its median; equal coordinates fall back
        // to row order, which keeps the partition deterministic.
        let split_dim = (0..d)
            .max_by(|&a, &b| (hi[a] - lo[a]).total_cmp(&(hi[b] - lo[b])))
            .unwrap_or(0);
        let mid = len / 2;
        order[start..end].select_nth_unstable_by(mid, |&a, &b| {
            let ca = dataset.row(a as usize)[split_dim];
            let cb = dataset.row(b as usize)[split_dim];
            ca.total_cmp(&cb).then(a.cmp(&b))
        });
        let left = self.build_range(dataset, order, start, start + mid);
        let right = self.build_range(dataset, order, start + mid, end);
        self.nodes.push(Node { lo, hi, kind: NodeKind::Split { left, right } });
        self.nodes.len() - 1
    }

    /// Lower bound on the distance from `query` to any point in the node box.
    fn box_bound(&self, node: &Node, query: &[f64]) -> f64 {
        match self.metric {
            MetricKind::L1 => {
                let mut acc = 0.0;
                for ((&q, &lo), &hi) in query.iter().zip(&node.lo).zip(&node.hi) {
                    acc += (lo - q).max(q - hi).max(0.0);
                }
                acc
            }
            MetricKind::L2 => {
                let mut acc = 0.0;
                for ((&q, &lo), &hi) in query.iter().zip(&node.lo).zip(&node.hi) {
                    let e = (lo - q).max(q - hi).max(0.0);
                    acc += e * e;
                }
                acc.sqrt()
            }
            MetricKind::Chebyshev => {
                let mut acc: f64 = 0.0;
                for ((&q, &lo), &hi) in query.iter().zip(&node.lo).zip(&node.hi) {
                    acc = acc.max((lo - q).max(q - hi).max(0.0));
                }
                acc
            }
            _ => 0.0,
        }
    }

    pub(super) fn k_nearest(
        &self,
        dataset: &LabeledDataset,
        query: &[f64],
        k: usize,
        skip: Option<usize>,
    ) -> Vec<Candidate> {
        let mut heap: BinaryHeap<Candidate> = BinaryHeap::with_capacity(k + 1);
        self.knn_recurse(dataset, query, k, skip, self.root, &mut heap);
        heap.into_sorted_vec()
    }

    fn knn_recurse(
        &self,
        dataset: &LabeledDataset,
        query: &[f64],
        k: usize,
        skip: Option<usize>,
        node_id: usize,
        heap: &mut BinaryHeap<Candidate>,
    ) {
        let node = &self.nodes[node_id];
        if heap.len() == k {
            let bound = self.box_bound(node, query) * BOUND_SLACK;
            // A box whose bound equals the current worst distance may still
            // hold an equal-distance point with a smaller row index, so only
            // a strictly larger bound prunes.
            if bound > heap.peek().expect("heap full").distance {
                return;
            }
        }
        match node.kind {
            NodeKind::Leaf { start, end } => {
                for &i in &self.order[start..end] {
                    let i = i as usize;
                    if skip == Some(i) {
                        continue;
                    }
                    let d = self.metric.eval(query, dataset.row(i));
                    push_candidate(heap, k, Candidate { distance: d, index: i });
                }
            }
            NodeKind::Split { left, right } => {
                let bl = self.box_bound(&self.nodes[left], query);
                let br = self.box_bound(&self.nodes[right], query);
                let (first, second) = if bl <= br { (left, right) } else { (right, left) };
                self.knn_recurse(dataset, query, k, skip, first, heap);
                self.knn_recurse(dataset, query, k, skip, second, heap);
            }
        }
    }

    pub(super) fn within_radius(
        &self,
        dataset: &LabeledDataset,
        query: &[f64],
        theta: f64,
        skip: Option<usize>,
        out: &mut Vec<Candidate>,
    ) {
        self.radius_recurse(dataset, query, theta, skip, self.root, out);
        out.sort_unstable_by_key(|c| c.index);
    }

    fn radius_recurse(
        &self,
        dataset: &LabeledDataset,
        query: &[f64],
        theta: f64,
        skip: Option<usize>,
        node_id: usize,
        out: &mut Vec<Candidate>,
    ) {
        let node = &self.nodes[node_id];
        // Membership is strict (< theta), so a bound at or above theta
        // excludes the whole box.
        if self.box_bound(node, query) * BOUND_SLACK >= theta {
            return;
        }
        match node.kind {
            NodeKind::Leaf { start, end } => {
                for &i in &self.order[start..end] {
                    let i = i as usize;
                    if skip == Some(i) {
                        continue;
                    }
                    let d = self.metric.eval(query, dataset.row(i));
                    if d < theta {
                        out.push(Candidate { distance: d, index: i });
                    }
                }
            }
            NodeKind::Split { left, right } => {
                self.radius_recurse(dataset, query, theta, skip, left, out);
                self.radius_recurse(dataset, query, theta, skip, right, out);
            }
        }
    }
}
