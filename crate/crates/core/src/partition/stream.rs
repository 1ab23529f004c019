use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;

use super::family::{DescendingRow, PartitionFamily};
use super::length::Length;
use crate::error::{Error, Result};

pub const DEFAULT_ROW_BUDGET: usize = 1_000_000;

/// One element of the decreasing sequence with its origin `(N, k)`.
/// `index` (j) and `position` (k) are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Emitted<V> {
    pub index: usize,
    pub value: V,
    pub order: usize,
    pub position: usize,
}

/// Head of a partially consumed row inside the merge heap.
struct Head<V> {
    value: V,
    order: usize,
    position: usize,
}

impl<V: Ord> PartialEq for Head<V> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<V: Ord> Eq for Head<V> {}

impl<V: Ord> PartialOrd for Head<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Ord> Ord for Head<V> {
    // max-heap: larger value first, then smaller (order, position)
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| other.order.cmp(&self.order))
            .then_with(|| other.position.cmp(&self.position))
    }
}

/// Lazy k-way merge of the rows of a family into one non-increasing
/// sequence. Rows are expanded only when the family's upper bound at the
/// frontier no longer certifies the current maximum.
pub struct DecreasingStream<'a, F: PartitionFamily + ?Sized> {
    family: &'a F,
    heap: BinaryHeap<Head<F::Value>>,
    pending: HashMap<usize, DescendingRow<'a, F::Value>>,
    frontier: usize,
    frontier_bound: Option<F::Value>,
    emitted: usize,
    row_budget: usize,
    failed: bool,
}

impl<'a, F: PartitionFamily + ?Sized> DecreasingStream<'a, F> {
    pub fn new(family: &'a F) -> Self {
        Self::with_budget(family, DEFAULT_ROW_BUDGET)
    }

    pub fn with_budget(family: &'a F, row_budget: usize) -> Self {
        DecreasingStream {
            family,
            heap: BinaryHeap::new(),
            pending: HashMap::new(),
            frontier: family.first_order(),
            frontier_bound: None,
            emitted: 0,
            row_budget,
            failed: false,
        }
    }

    pub fn emitted(&self) -> usize {
        self.emitted
    }

    /// Next unexpanded row order.
    pub fn frontier(&self) -> usize {
        self.frontier
    }

    fn bound_at_frontier(&mut self) -> Result<&F::Value> {
        if self.frontier_bound.is_none() {
            self.frontier_bound = Some(self.family.upper_bound(self.frontier)?);
        }
        Ok(self.frontier_bound.as_ref().expect("just set"))
    }

    fn expand(&mut self) -> Result<()> {
        let order = self.frontier;
        let bound = self.bound_at_frontier()?.clone();
        let mut entries = self.family.descending_row(order)?;
        if let Some((first, position)) = entries.next() {
            if first > bound {
                return Err(Error::UbViolation { order, max: first.to_f64(), bound: bound.to_f64() });
            }
            self.heap.push(Head { value: first, order, position });
            self.pending.insert(order, entries);
        }
        self.frontier += 1;
        self.frontier_bound = None;
        Ok(())
    }

    /// Fails fast when the bound cannot drop below `value` within the row
    /// budget, instead of expanding rows that can never certify it.
    fn check_progress(&self, value: &F::Value) -> Result<()> {
        if self.family.max_order().is_some() {
            return Ok(());
        }
        let horizon = self.frontier.saturating_add(self.row_budget);
        if self.family.upper_bound(horizon)? >= *value {
            return Err(Error::StalledStream {
                value: value.to_f64(),
                frontier: self.frontier,
                budget: self.row_budget,
            });
        }
        Ok(())
    }

    fn advance(&mut self) -> Result<Emitted<F::Value>> {
        loop {
            let certified = match self.heap.peek() {
                Some(top) => {
                    let top_value = top.value.clone();
                    if *self.bound_at_frontier()? < top_value {
                        true
                    } else {
                        self.check_progress(&top_value)?;
                        false
                    }
                }
                None => false,
            };
            if certified {
                let head = self.heap.pop().expect("peeked");
                if let Some(rest) = self.pending.get_mut(&head.order) {
                    match rest.next() {
                        Some((value, position)) => self.heap.push(Head { value, order: head.order, position }),
                        None => {
                            self.pending.remove(&head.order);
                        }
                    }
                }
                self.emitted += 1;
                return Ok(Emitted {
                    index: self.emitted,
                    value: head.value,
                    order: head.order,
                    position: head.position,
                });
            }
            self.expand()?;
        }
    }
}

impl<F: PartitionFamily + ?Sized> Iterator for DecreasingStream<'_, F> {
    type Item = Result<Emitted<F::Value>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let item = self.advance();
        if item.is_err() {
            self.failed = true;
        }
        Some(item)
    }
}

/// First `count` elements of the decreasing sequence, with provenance.
pub fn enumerate<F: PartitionFamily + ?Sized>(family: &F, count: usize) -> Result<Vec<Emitted<F::Value>>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    DecreasingStream::new(family).take(count).collect()
}

/// `(j, sqrt(j) * a_j)` for ascending `j_values`.
pub fn c_sequence<F: PartitionFamily + ?Sized>(family: &F, j_values: &[usize]) -> Result<Vec<(usize, f64)>> {
    if j_values.first() == Some(&0) || j_values.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("j values must be positive and ascending".into()));
    }
    let mut out = Vec::with_capacity(j_values.len());
    let mut wanted = j_values.iter().peekable();
    for item in DecreasingStream::new(family) {
        let item = item?;
        while wanted.peek() == Some(&&item.index) {
            wanted.next();
            out.push((item.index, (item.index as f64).sqrt() * item.value.to_f64()));
        }
        if wanted.peek().is_none() {
            break;
        }
    }
    Ok(out)
}

/// Streams `a_j` for `j = 1..=j_max` into `visit` without retaining them.
pub fn for_each_value<F, G>(family: &F, j_max: usize, mut visit: G) -> Result<()>
where
    F: PartitionFamily + ?Sized,
    G: FnMut(&Emitted<F::Value>),
{
    for item in DecreasingStream::new(family).take(j_max) {
        visit(&item?);
    }
    Ok(())
}
