use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::partition::{Arithmetic, DescendingRow, Exact, FamilyKind, FamilyMeta, PartitionFamily, PartitionRow};

/// Gaps between consecutive terms of the Farey sequence of each order.
/// Orders start at 1; rows are not odd.
#[derive(Debug, Clone)]
pub struct FareyFamily {
    meta: FamilyMeta,
}

impl FareyFamily {
    pub fn new() -> Self {
        FareyFamily { meta: FamilyMeta::new("farey", FamilyKind::General, Arithmetic::Exact) }
    }
}

impl Default for FareyFamily {
    fn default() -> Self {
        Self::new()
    }
}

/// Denominator products `b d` of consecutive Farey fractions `a/b < c/d`;
/// each gap equals `1/(b d)` because `b c - a d = 1`.
fn farey_gap_denominators(order: u64) -> Vec<u64> {
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, order);
    let mut out = Vec::new();
    loop {
        out.push(b * d);
        if c == 1 && d == 1 {
            break;
        }
        let k = (order + b) / d;
        let (na, nb) = (c, d);
        c = k * c - a;
        d = k * d - b;
        a = na;
        b = nb;
    }
    out
}

pub fn farey_row(order: usize) -> Result<PartitionRow<Exact>> {
    if order == 0 {
        return Err(Error::InvalidArgument("Farey order starts at 1".into()));
    }
    let lengths = farey_gap_denominators(order as u64).into_iter().map(Exact::reciprocal).collect();
    Ok(PartitionRow::new(order, lengths, Exact::from_ratio(1, 1)))
}

/// Möbius function on `0..=n` by a linear sieve.
fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    if n >= 1 {
        mu[0] = 0;
    }
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            if i * p > n {
                break;
            }
            composite[i * p] = true;
            if i % p == 0 {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    mu
}

/// Number of terms of the Farey sequence of `order` that are `<= h/b`,
/// by Möbius inversion of the lattice count `sum_q (floor(q h / b) + 1)`.
fn farey_rank(order: u64, h: u64, b: u64, mu: &[i8], lattice: &mut Vec<i64>) -> usize {
    lattice.clear();
    lattice.push(0);
    let mut acc = 0i64;
    for q in 1..=order {
        acc += (q * h / b) as i64 + 1;
        lattice.push(acc);
    }
    let rank: i64 = (1..=order).map(|g| mu[g as usize] as i64 * lattice[(order / g) as usize]).sum();
    rank as usize
}

/// Inverse of `a` modulo `m` for coprime `a`, `m >= 1`.
fn mod_inverse(a: u64, m: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(m as i64));
    e.x.rem_euclid(m as i64) as u64
}

/// Gaps of one Farey row from the largest down, without building the row.
///
/// Neighbours `h/b < h'/d` in the sequence of order `M` are exactly the
/// coprime denominator pairs with `b, d <= M < b + d`, each unordered pair
/// giving two mirror-image gaps of length `1/(b d)`. Pairs are visited by
/// increasing product through a heap over `b`; the starting product
/// `b max(b+1, M-b+1)` increases with `b`, so `b + 1` only needs to enter
/// the heap once `b` has been visited.
struct FareyDescending {
    order: u64,
    mu: Vec<i8>,
    heap: BinaryHeap<Reverse<(u64, u64, u64)>>,
    next_b: u64,
    ready: std::vec::IntoIter<(Exact, usize)>,
    lattice: Vec<i64>,
}

impl FareyDescending {
    fn new(order: u64) -> Self {
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((order, 1, order)));
        FareyDescending {
            order,
            mu: mobius_table(order as usize),
            heap,
            next_b: 2,
            ready: Vec::new().into_iter(),
            lattice: Vec::with_capacity(order as usize + 1),
        }
    }

    fn start_of(&self, b: u64) -> Option<(u64, u64, u64)> {
        let d = (b + 1).max(self.order + 1 - b);
        (d <= self.order).then_some((b * d, b, d))
    }

    fn pop_pair(&mut self) -> Option<(u64, u64, u64)> {
        let Reverse((v, b, d)) = self.heap.pop()?;
        if b + 1 == self.next_b {
            if let Some(start) = self.start_of(self.next_b) {
                self.heap.push(Reverse(start));
            }
            self.next_b += 1;
        }
        if d < self.order {
            self.heap.push(Reverse((v + b, b, d + 1)));
        }
        Some((v, b, d))
    }

    fn position(&mut self, left: u64, right: u64) -> usize {
        let h = if left == 1 { 0 } else { (left - mod_inverse(right % left, left)) % left };
        farey_rank(self.order, h, left, &self.mu, &mut self.lattice)
    }

    /// Collects every gap of the next product value, sorted by position.
    fn refill(&mut self) -> bool {
        let Some(first) = self.pop_pair() else { return false };
        let v = first.0;
        let mut pairs = vec![first];
        while matches!(self.heap.peek(), Some(Reverse((w, _, _))) if *w == v) {
            pairs.extend(self.pop_pair());
        }
        let mut group = Vec::new();
        for (_, b, d) in pairs {
            if b.gcd(&d) != 1 {
                continue;
            }
            group.push(self.position(b, d));
            if b != d {
                group.push(self.position(d, b));
            }
        }
        group.sort_unstable();
        self.ready = group.into_iter().map(|k| (Exact::reciprocal(v), k)).collect::<Vec<_>>().into_iter();
        true
    }
}

impl Iterator for FareyDescending {
    type Item = (Exact, usize);

    fn next(&mut self) -> Option<(Exact, usize)> {
        loop {
            if let Some(item) = self.ready.next() {
                return Some(item);
            }
            if !self.refill() {
                return None;
            }
        }
    }
}

impl PartitionFamily for FareyFamily {
    type Value = Exact;

    fn meta(&self) -> &FamilyMeta {
        &self.meta
    }

    fn first_order(&self) -> usize {
        1
    }

    fn row(&self, order: usize) -> Result<PartitionRow<Exact>> {
        farey_row(order)
    }

    /// Rows of order `M` hold about `0.3 M^2` gaps, nearly all of them far
    /// below the enumeration frontier, so gaps are produced on demand.
    fn descending_row(&self, order: usize) -> Result<DescendingRow<'_, Exact>> {
        if order == 0 {
            return Err(Error::InvalidArgument("Farey order starts at 1".into()));
        }
        Ok(Box::new(FareyDescending::new(order as u64)))
    }

    fn upper_bound(&self, order: usize) -> Result<Exact> {
        if order == 0 {
            return Err(Error::InvalidArgument("Farey order starts at 1".into()));
        }
        Ok(Exact::reciprocal(order as u64))
    }
}
