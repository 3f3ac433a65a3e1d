//! Subsets of [m] = {1, .., m} as bit masks, together with the two orders the
//! code constructions rely on: co-lexicographic order (A < B iff the largest
//! element of the symmetric difference lies in B) and anti-lexicographic
//! order, its exact reverse. On masks with element i stored in bit i−1,
//! co-lex order coincides with numeric order of the masks.
//!
//! Also provides upward shadows Δ(K) = { X ⊆ [m] : Y ⊆ X for some Y ∈ K }
//! and an exhaustive minimum-shadow search used as an independent oracle for
//! the prefix constructions.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use std::fmt;

/// Families larger than this are refused rather than sampled; the exhaustive
/// search is an oracle and must stay exhaustive.
pub const DEFAULT_FAMILY_BUDGET: u64 = 10_000_000;

/// Ground sets larger than this would need shadow tables beyond 2^24 bits.
const MAX_GROUND_SET: u32 = 24;

/// A subset of [m], element i present iff bit i−1 of `mask` is set.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    m: u32,
    mask: u64,
}

impl SubsetMask {
    pub fn new(m: u32, mask: u64) -> Result<Self> {
        if m > MAX_GROUND_SET {
            return Err(Error::InvalidParameter(format!(
                "ground set size {m} exceeds supported maximum {MAX_GROUND_SET}"
            )));
        }
        if mask >= (1u64 << m) {
            return Err(Error::InvalidParameter(format!(
                "mask {mask:#b} has elements outside [{m}]"
            )));
        }
        Ok(Self { m, mask })
    }

    pub fn empty(m: u32) -> Self {
        Self { m, mask: 0 }
    }

    /// Builds a subset from 1-based elements.
    pub fn from_elements(m: u32, elements: &[u32]) -> Result<Self> {
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > m {
                return Err(Error::InvalidParameter(format!(
                    "element {e} outside ground set [{m}]"
                )));
            }
            mask |= 1u64 << (e - 1);
        }
        Self::new(m, mask)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn card(&self) -> u32 {
        self.mask.count_ones()
    }

    /// Membership of a 1-based element.
    pub fn contains(&self, element: u32) -> bool {
        element >= 1 && element <= self.m && (self.mask >> (element - 1)) & 1 == 1
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.mask & !other.mask == 0
    }

    /// Elements in ascending order, 1-based.
    pub fn elements(&self) -> Vec<u32> {
        (1..=self.m).filter(|&e| self.contains(e)).collect()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An ordered, duplicate-free list of subsets of a common ground set.
/// `uniform_size` is present when every member has the same cardinality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    m: u32,
    members: Vec<SubsetMask>,
    uniform_size: Option<u32>,
}

impl SubsetFamily {
    pub fn new(m: u32, members: Vec<SubsetMask>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for member in &members {
            if member.m() != m {
                return Err(Error::MismatchedGroundSet(member.m(), m));
            }
            if !seen.insert(member.mask()) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate member {member}"
                )));
            }
        }
        let uniform_size = match members.first() {
            Some(first) if members.iter().all(|s| s.card() == first.card()) => {
                Some(first.card())
            }
            _ => None,
        };
        Ok(Self { m, members, uniform_size })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn uniform_size(&self) -> Option<u32> {
        self.uniform_size
    }

    pub fn iter(&self) -> impl Iterator<Item = &SubsetMask> {
        self.members.iter()
    }
}

/// True iff A < B in co-lexicographic order, i.e. max(A Δ B) ∈ B.
pub fn colex_less(a: &SubsetMask, b: &SubsetMask) -> Result<bool> {
    if a.m() != b.m() {
        return Err(Error::MismatchedGroundSet(a.m(), b.m()));
    }
    if a.mask() == b.mask() {
        return Err(Error::EqualSets);
    }
    let diff = a.mask() ^ b.mask();
    let top = 63 - diff.leading_zeros();
    Ok((b.mask() >> top) & 1 == 1)
}

pub fn binomial_u128(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 1..=k as u128 {
        result = result * (n as u128 - (k as u128 - i)) / i;
    }
    result
}

/// Next larger integer with the same popcount (Gosper); the co-lex successor
/// of an r-subset encoded as a mask.
fn next_same_weight(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((x ^ r) >> 2) / c) | r
}

/// Co-lex predecessor of an r-subset encoded as a mask, or `None` when the
/// mask is already the minimum {1, .., r}.
fn prev_same_weight(x: u64) -> Option<u64> {
    let r = x.count_ones() as u64;
    if x == (1u64 << r) - 1 {
        return None;
    }
    // 0-based positions, ascending.
    let mut positions: Vec<u32> = Vec::with_capacity(r as usize);
    let mut rest = x;
    while rest != 0 {
        positions.push(rest.trailing_zeros());
        rest &= rest - 1;
    }
    // Lower the first element that has a gap below it, then pack everything
    // before it immediately underneath.
    let mut i = 0;
    loop {
        let floor = if i == 0 { 0 } else { positions[i - 1] + 1 };
        if positions[i] > floor {
            break;
        }
        i += 1;
    }
    let new_pos = positions[i] - 1;
    let mut out = x & !((1u64 << (positions[i] + 1)) - 1);
    for j in 0..=i as u32 {
        out |= 1u64 << (new_pos - (i as u32 - j));
    }
    Some(out)
}

fn check_prefix_args(r: u32, m: u32, count: u64, what: &str) -> Result<()> {
    if m > MAX_GROUND_SET {
        return Err(Error::InvalidParameter(format!(
            "ground set size {m} exceeds supported maximum {MAX_GROUND_SET}"
        )));
    }
    if r > m {
        return Err(Error::InvalidParameter(format!(
            "subset size {r} exceeds ground set size {m}"
        )));
    }
    let total = binomial_u128(m, r);
    if count as u128 > total {
        return Err(Error::InvalidParameter(format!(
            "{what} {count} out of range; there are {total} {r}-subsets of [{m}]"
        )));
    }
    Ok(())
}

/// The first `gamma` r-subsets of [m] in ascending co-lexicographic order.
pub fn colex_prefix(r: u32, m: u32, gamma: u64) -> Result<SubsetFamily> {
    check_prefix_args(r, m, gamma, "prefix length")?;
    let mut members = Vec::with_capacity(gamma as usize);
    if gamma > 0 {
        let mut mask = if r == 0 { 0 } else { (1u64 << r) - 1 };
        for i in 0..gamma {
            members.push(SubsetMask::new(m, mask)?);
            if i + 1 < gamma {
                mask = next_same_weight(mask);
            }
        }
    }
    SubsetFamily::new(m, members)
}

/// The first `k` r-subsets of [m] in anti-lexicographic order. Anti-lex is
/// the reverse of co-lex, so this walks the masks downward from the top
/// r-subset {m−r+1, .., m}.
pub fn antilex_prefix(r: u32, m: u32, k: u64) -> Result<SubsetFamily> {
    check_prefix_args(r, m, k, "prefix length")?;
    let mut members = Vec::with_capacity(k as usize);
    if k > 0 {
        let top = if r == 0 { 0 } else { ((1u64 << r) - 1) << (m - r) };
        let mut mask = Some(top);
        for _ in 0..k {
            let current = mask.expect("prefix length checked against binomial");
            members.push(SubsetMask::new(m, current)?);
            mask = prev_same_weight(current);
        }
    }
    SubsetFamily::new(m, members)
}

/// Upward shadow Δ(K): every subset of [m] that contains some member of K,
/// members included. Computed by breadth-first superset expansion over a
/// visited table of all 2^m masks, so it stays an independent check on the
/// counting formulas rather than a restatement of them. Members are returned
/// in ascending co-lex (numeric mask) order.
pub fn upward_shadow(family: &SubsetFamily) -> SubsetFamily {
    let m = family.m();
    let mut visited = vec![false; 1usize << m];
    let mut queue: Vec<u64> = Vec::new();
    for member in family.iter() {
        if !visited[member.mask() as usize] {
            visited[member.mask() as usize] = true;
            queue.push(member.mask());
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let mask = queue[head];
        head += 1;
        for e in 0..m {
            let next = mask | (1u64 << e);
            if next != mask && !visited[next as usize] {
                visited[next as usize] = true;
                queue.push(next);
            }
        }
    }
    queue.sort_unstable();
    let members = queue
        .into_iter()
        .map(|mask| SubsetMask { m, mask })
        .collect();
    SubsetFamily::new(m, members).expect("BFS produces no duplicates")
}

/// Shadow of a single r-subset as a 2^m-bit table, one word per 64 masks.
fn superset_table(member: &SubsetMask) -> Vec<u64> {
    let m = member.m();
    let words = 1usize << m;
    let mut table = vec![0u64; words.div_ceil(64)];
    // Enumerate submasks of the complement and attach them to the member.
    let complement = !member.mask() & ((1u64 << m) - 1);
    let mut sub = 0u64;
    loop {
        let superset = member.mask() | sub;
        table[(superset >> 6) as usize] |= 1u64 << (superset & 63);
        if sub == complement {
            break;
        }
        sub = (sub.wrapping_sub(complement)) & complement;
    }
    table
}

/// Exact minimum of |Δ(K)| over every k-member family K of r-subsets of [m],
/// by exhaustive enumeration of all C(C(m,r), k) families. Refuses (rather
/// than samples) when the family count exceeds `budget`.
pub fn min_shadow_bruteforce(r: u32, m: u32, k: u64, budget: u64) -> Result<u64> {
    check_prefix_args(r, m, k, "family size")?;
    let universe = colex_prefix(r, m, binomial_u128(m, r) as u64)?;
    let n = universe.len();
    // Family counts C(n, k) stay inside u128 for n <= 64; larger levels are
    // beyond exhaustive reach anyway.
    if n > 64 {
        return Err(Error::InvalidParameter(format!(
            "level has {n} subsets; exhaustive family search supports at most 64"
        )));
    }
    let family_count = binomial_u128(n as u32, k as u32);
    if family_count > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: BigUint::from(family_count),
            budget,
            unit: "families",
        });
    }
    if k == 0 {
        return Ok(0);
    }

    let tables: Vec<Vec<u64>> = universe.iter().map(superset_table).collect();
    let words = tables[0].len();
    let k = k as usize;

    // Walk all k-subsets of the universe in lexicographic index order,
    // keeping the running OR of the first k−1 shadow tables on a stack.
    let mut indices: Vec<usize> = (0..k).collect();
    let mut stack: Vec<Vec<u64>> = Vec::with_capacity(k);
    stack.push(vec![0u64; words]);
    for depth in 1..k {
        let mut next = stack[depth - 1].clone();
        or_into(&mut next, &tables[indices[depth - 1]]);
        stack.push(next);
    }

    let mut best = u64::MAX;
    loop {
        let union: u64 = stack[k - 1]
            .iter()
            .zip(&tables[indices[k - 1]])
            .map(|(acc, tab)| (acc | tab).count_ones() as u64)
            .sum();
        best = best.min(union);

        // Advance the combination; rebuild prefix unions from the first
        // changed position.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(best);
            }
            i -= 1;
            if indices[i] + (k - i) < n {
                indices[i] += 1;
                for j in i + 1..k {
                    indices[j] = indices[j - 1] + 1;
                }
                for j in i.max(1)..k {
                    let (prefix, rest) = stack.split_at_mut(j);
                    rest[0].copy_from_slice(&prefix[j - 1]);
                    or_into(&mut rest[0], &tables[indices[j - 1]]);
                }
                break;
            }
        }
    }
}

fn or_into(acc: &mut [u64], other: &[u64]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a |= b;
    }
}
