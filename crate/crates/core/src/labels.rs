//! Two-criteria Pareto labels: (hop count, maximum edge width).
//!
//! A [`LabelSet`] is the non-dominated frontier of such labels at one node (or
//! one node pair). Kept sorted by ascending width, which forces hops to be
//! strictly decreasing along the set.

use serde::{Deserialize, Serialize};

use crate::graph::NodeId;

/// A partial path summary. `product` is the bottleneck length `hops * max_width`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Label {
    pub hops: u32,
    pub max_width: f64,
    pub product: f64,
    /// Node preceding the label's node on the path it summarizes.
    pub pred: Option<NodeId>,
    /// Index of the predecessor's label in the predecessor's label set, when known.
    pub pred_label: Option<usize>,
}

impl Label {
    pub fn new(hops: u32, max_width: f64) -> Self {
        Self {
            hops,
            max_width,
            product: bottleneck_product(hops, max_width),
            pred: None,
            pred_label: None,
        }
    }

    /// The label of the trivial path at the source: zero hops, zero width.
    pub fn source() -> Self {
        Self::new(0, 0.0)
    }

    pub fn with_pred(mut self, pred: NodeId, pred_label: Option<usize>) -> Self {
        self.pred = Some(pred);
        self.pred_label = pred_label;
        self
    }

    /// The label obtained by appending an edge of weight `w` to this path.
    pub fn extend(&self, w: f64) -> Self {
        Self::new(self.hops + 1, self.max_width.max(w))
    }

    pub fn is_source(&self) -> bool {
        self.hops == 0
    }

    #[inline]
    pub fn same_key(&self, other: &Label) -> bool {
        self.hops == other.hops && self.max_width == other.max_width
    }
}

/// Bottleneck length of a path with `hops` edges whose widest edge is `max_width`.
///
/// Every component computes the product through this function so that values
/// obtained along different routes compare exactly.
#[inline]
pub fn bottleneck_product(hops: u32, max_width: f64) -> f64 {
    hops as f64 * max_width
}

/// Outcome of comparing label `a` against label `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// `a` is better in both hops and width.
    Strict,
    /// `a` ties on one criterion and is better on the other.
    Weak,
    /// `a` does not dominate `b` (incomparable, worse, or equal).
    None,
}

pub fn dominates(a: &Label, b: &Label) -> Dominance {
    let fewer = a.hops < b.hops;
    let narrower = a.max_width < b.max_width;
    if fewer && narrower {
        Dominance::Strict
    } else if (fewer && a.max_width == b.max_width) || (a.hops == b.hops && narrower) {
        Dominance::Weak
    } else {
        Dominance::None
    }
}

/// `true` if `a` dominates `b` strictly or weakly, or the two carry identical criteria.
#[inline]
pub fn covers(a: &Label, b: &Label) -> bool {
    a.hops <= b.hops && a.max_width <= b.max_width
}

/// Pareto frontier of labels, sorted ascending by `max_width` with strictly
/// decreasing `hops`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LabelSet {
    labels: Vec<Label>,
}

impl LabelSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Wraps labels that already form a frontier. Debug builds check the ordering.
    pub(crate) fn from_frontier(labels: Vec<Label>) -> Self {
        debug_assert!(labels
            .windows(2)
            .all(|p| p[0].max_width < p[1].max_width && p[0].hops > p[1].hops));
        Self { labels }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Label> {
        self.labels.iter()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Label> {
        self.labels.get(i)
    }

    /// Index of a label with the smallest product (first such in width order).
    pub fn best_index(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, l) in self.labels.iter().enumerate() {
            if best.is_none_or(|b| l.product < self.labels[b].product) {
                best = Some(i);
            }
        }
        best
    }

    /// Minimum product over the set, i.e. the bottleneck distance.
    pub fn min_product(&self) -> Option<f64> {
        self.best_index().map(|i| self.labels[i].product)
    }

    /// Checks the frontier invariant.
    pub fn is_frontier(&self) -> bool {
        self.labels
            .windows(2)
            .all(|p| p[0].max_width < p[1].max_width && p[0].hops > p[1].hops)
    }
}

impl<'a> IntoIterator for &'a LabelSet {
    type Item = &'a Label;
    type IntoIter = std::slice::Iter<'a, Label>;
    fn into_iter(self) -> Self::IntoIter {
        self.labels.iter()
    }
}

/// Reduces candidates to their Pareto frontier. Dominated labels are dropped;
/// among labels with identical `(hops, max_width)` the first one seen is kept.
pub fn consolidate(candidates: impl IntoIterator<Item = Label>) -> LabelSet {
    let mut all: Vec<Label> = candidates.into_iter().collect();
    // Stable: equal keys keep input order, so the first-seen duplicate leads.
    all.sort_by(|a, b| {
        a.max_width
            .total_cmp(&b.max_width)
            .then(a.hops.cmp(&b.hops))
    });
    let mut out: Vec<Label> = Vec::with_capacity(all.len());
    for l in all {
        if out.last().is_none_or(|best| l.hops < best.hops) {
            out.push(l);
        }
    }
    LabelSet { labels: out }
}

/// Incremental frontier maintenance used by the label-setting search. Returns
/// `false` (and leaves `set` unchanged) when `candidate` is covered by an
/// existing entry; otherwise appends it and removes the entries it dominates,
/// reporting them through `removed`.
pub(crate) fn insert_nondominated<T>(
    set: &mut Vec<T>,
    candidate: T,
    label: impl Fn(&T) -> &Label,
    mut removed: impl FnMut(&T),
) -> bool {
    let cand = *label(&candidate);
    if set.iter().any(|x| covers(label(x), &cand)) {
        return false;
    }
    set.retain(|x| {
        let keep = !covers(&cand, label(x));
        if !keep {
            removed(x);
        }
        keep
    });
    set.push(candidate);
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l(h: u32, w: f64) -> Label {
        Label::new(h, w)
    }

    #[test]
    fn domination_cases() {
        assert_eq!(dominates(&l(2, 0.5), &l(3, 1.0)), Dominance::Strict);
        assert_eq!(dominates(&l(2, 0.5), &l(2, 0.5)), Dominance::None);
        assert_eq!(dominates(&l(2, 1.0), &l(3, 0.5)), Dominance::None);
        assert_eq!(dominates(&l(2, 0.5), &l(3, 0.5)), Dominance::Weak);
        assert_eq!(dominates(&l(2, 0.25), &l(2, 0.5)), Dominance::Weak);
        assert_eq!(dominates(&l(3, 1.0), &l(2, 0.5)), Dominance::None);
    }

    #[test]
    fn consolidate_examples() {
        let s = consolidate([l(3, 1.0), l(2, 0.5)]);
        assert_eq!(s.labels(), &[l(2, 0.5)]);

        let s = consolidate([l(1, 1.0), l(2, 0.5), l(3, 0.25)]);
        assert_eq!(s.labels(), &[l(3, 0.25), l(2, 0.5), l(1, 1.0)]);

        let first = l(2, 0.5).with_pred(NodeId(7), Some(0));
        let second = l(2, 0.5).with_pred(NodeId(9), Some(1));
        let s = consolidate([first, second, l(2, 1.0)]);
        assert_eq!(s.len(), 1);
        assert_eq!(s.labels()[0].pred, Some(NodeId(7)));
    }

    #[test]
    fn equal_products_both_survive() {
        let s = consolidate([l(2, 0.5), l(1, 1.0)]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.min_product(), Some(1.0));
        assert_eq!(s.best_index(), Some(0));
    }

    #[test]
    fn incremental_insert() {
        let mut set = vec![l(3, 0.25), l(1, 1.0)];
        let mut gone = Vec::new();
        assert!(!insert_nondominated(&mut set, l(3, 0.5), |x| x, |x| gone.push(*x)));
        assert!(insert_nondominated(&mut set, l(2, 0.25), |x| x, |x| gone.push(*x)));
        assert_eq!(gone, vec![l(3, 0.25)]);
        assert_eq!(set.len(), 2);
        assert!(!insert_nondominated(&mut set, l(2, 0.25), |x| x, |_| {}));
    }

    fn arb_labels() -> impl Strategy<Value = Vec<Label>> {
        prop::collection::vec(
            (1u32..8, prop::sample::select(vec![0.125, 0.25, 0.5, 0.75, 1.0])),
            0..30,
        )
        .prop_map(|v| v.into_iter().map(|(h, w)| l(h, w)).collect())
    }

    /// Pairwise brute force: a label survives iff nothing dominates it, and
    /// among exact duplicates only the first.
    fn brute_frontier(c: &[Label]) -> Vec<(u32, u64)> {
        let mut keep = Vec::new();
        for (i, x) in c.iter().enumerate() {
            let dominated = c.iter().any(|y| dominates(y, x) != Dominance::None);
            let earlier_dup = c[..i].iter().any(|y| y.same_key(x));
            if !dominated && !earlier_dup {
                keep.push((x.hops, x.max_width.to_bits()));
            }
        }
        keep.sort_by(|a, b| f64::from_bits(a.1).total_cmp(&f64::from_bits(b.1)));
        keep
    }

    proptest! {
        #[test]
        fn consolidate_matches_pairwise_brute_force(c in arb_labels()) {
            let s = consolidate(c.clone());
            let got: Vec<_> = s.iter().map(|x| (x.hops, x.max_width.to_bits())).collect();
            prop_assert_eq!(got, brute_frontier(&c));
            prop_assert!(s.is_frontier());
        }

        #[test]
        fn consolidate_idempotent_and_bounded(c in arb_labels()) {
            let s = consolidate(c.clone());
            prop_assert_eq!(consolidate(s.labels().to_vec()), s.clone());
            let widths: std::collections::HashSet<u64> =
                c.iter().map(|x| x.max_width.to_bits()).collect();
            prop_assert!(s.len() <= widths.len());
            for dropped in &c {
                prop_assert!(s.iter().any(|k| covers(k, dropped)));
            }
            for kept in s.iter() {
                prop_assert!(c.iter().all(|x| dominates(x, kept) == Dominance::None));
            }
        }

        #[test]
        fn incremental_matches_batch(c in arb_labels()) {
            let mut set = Vec::new();
            for x in &c {
                insert_nondominated(&mut set, *x, |y| y, |_| {});
            }
            let inc = consolidate(set);
            prop_assert_eq!(inc, consolidate(c));
        }
    }
}
