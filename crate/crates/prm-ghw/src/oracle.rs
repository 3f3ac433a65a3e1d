//! Brute-force generalized Hamming weights: the defining minimum
//! min { |S(D)| : D a ν-dimensional subcode } evaluated literally, by
//! enumerating ν-dimensional subspaces of the message space and measuring
//! the union support of their codeword bases.
//!
//! Two search modes are provided. The exhaustive mode visits every subspace
//! (refusing up front when the Gaussian-binomial count exceeds the budget)
//! and is fully deterministic, including its witness. The pruned mode runs a
//! branch-and-bound over the same`(pivot set, free entries)` space, skipping
//! any partial basis whose union support already reaches the best support
//! found so far; union support only grows as rows are added, so a completed
//! pruned run returns the exact minimum. Pruned runs are seeded with a cheap
//! greedy subcode so the bound starts tight.
//!
//! Both modes shard by pivot-column set across a worker pool. The shared
//! "best so far" is a single atomic used only for pruning; correctness never
//! depends on its freshness.

use crate::error::{Error, Result};
use crate::gf2::{gaussian_binomial, pivot_sets, BitMatrix, BitVector};
use crate::prm::{CodeInstance, CodeSpec};
use num_bigint::BigUint;
use rayon::prelude::*;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

/// Subspace budget used when the caller does not override it.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

/// Largest message dimension for which the full codeword table is built.
const TABLE_DIM_LIMIT: usize = 20;

/// How many candidates a worker evaluates between checks of the shared
/// node counter and abort flag.
const NODE_BATCH: u64 = 8192;

/// Outcome of one oracle run.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub nu: usize,
    pub min_support: u64,
    /// An achieving subcode basis (ν codeword rows of rank ν whose union
    /// support has size `min_support`).
    pub witness: BitMatrix,
    /// Exhaustive mode: subspaces visited. Pruned mode: candidate basis rows
    /// evaluated before completion or abort.
    pub subspaces_examined: u64,
    /// True when every subspace was either visited or soundly pruned; only
    /// then is `min_support` the exact minimum rather than an upper bound.
    pub exhaustive: bool,
}

/// Generator matrix flattened to one mask per row, with an optional
/// message-to-codeword lookup table.
struct CodeTable {
    k: usize,
    n: usize,
    row_masks: Vec<u64>,
    codewords: Option<Vec<u64>>,
}

impl CodeTable {
    fn new(code: &CodeInstance) -> Result<Self> {
        let k = code.dimension();
        let n = code.block_length();
        if k > 64 || n > 64 {
            return Err(Error::InvalidParameter(format!(
                "oracle supports dimension and block length up to 64, got k={k}, n={n}"
            )));
        }
        let row_masks: Vec<u64> = code.generator().rows().iter().map(BitVector::as_mask).collect();
        let codewords = if k <= TABLE_DIM_LIMIT {
            let mut table = vec![0u64; 1 << k];
            for msg in 1..(1usize << k) {
                let low = msg.trailing_zeros() as usize;
                table[msg] = table[msg & (msg - 1)] ^ row_masks[low];
            }
            Some(table)
        } else {
            None
        };
        Ok(Self { k, n, row_masks, codewords })
    }

    #[inline]
    fn codeword(&self, msg: u64) -> u64 {
        match &self.codewords {
            Some(table) => table[msg as usize],
            None => {
                let mut cw = 0;
                let mut rest = msg;
                while rest != 0 {
                    cw ^= self.row_masks[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                cw
            }
        }
    }

    fn witness_from_messages(&self, messages: &[u64]) -> BitMatrix {
        let rows = messages
            .iter()
            .map(|&msg| BitVector::from_mask(self.n, self.codeword(msg)))
            .collect();
        BitMatrix::from_rows(self.n, rows)
    }
}

/// Column-0-most-significant lexicographic comparison of basis rows.
fn lex_masks(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x.reverse_bits().cmp(&y.reverse_bits());
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    a.len().cmp(&b.len())
}

fn check_nu(code: &CodeInstance, nu: usize) -> Result<()> {
    let k = code.dimension();
    if nu < 1 || nu > k {
        return Err(Error::InvalidParameter(format!(
            "nu={nu} out of range; code dimension is {k}"
        )));
    }
    Ok(())
}

/// Exact ν-th generalized Hamming weight of `code` by exhaustive subspace
/// enumeration. Refuses when the subspace count [k choose ν]₂ exceeds
/// `budget`. Deterministic; witness ties are broken by the lexicographically
/// smallest RREF message basis.
pub fn ghw_oracle(code: &CodeInstance, nu: usize, budget: u64) -> Result<OracleResult> {
    check_nu(code, nu)?;
    let table = CodeTable::new(code)?;
    let count = gaussian_binomial(table.k, nu);
    if count > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            required: count,
            budget,
            unit: "subspaces",
        });
    }

    let shards = pivot_sets(table.k, nu);
    let results: Vec<(u64, Vec<u64>, u64)> = shards
        .par_iter()
        .map(|pivots| scan_shard(&table, pivots))
        .collect();

    let mut examined = 0u64;
    let mut best: Option<(u64, Vec<u64>)> = None;
    for (support, messages, visited) in results {
        examined += visited;
        let better = match &best {
            None => true,
            Some((bs, bm)) => {
                support < *bs
                    || (support == *bs && lex_masks(&messages, bm) == std::cmp::Ordering::Less)
            }
        };
        if better {
            best = Some((support, messages));
        }
    }
    let (min_support, messages) = best.expect("at least one subspace exists");
    Ok(OracleResult {
        nu,
        min_support,
        witness: table.witness_from_messages(&messages),
        subspaces_examined: examined,
        exhaustive: true,
    })
}

/// Full scan of one pivot-set shard; returns the shard minimum, its witness
/// messages, and the number of subspaces visited.
fn scan_shard(table: &CodeTable, pivots: &[usize]) -> (u64, Vec<u64>, u64) {
    let nu = pivots.len();
    // Free positions in row-major order, matching the subspace stream.
    let mut free: Vec<(usize, usize)> = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        for c in (p + 1)..table.k {
            if !pivots.contains(&c) {
                free.push((i, c));
            }
        }
    }
    let base: Vec<u64> = pivots.iter().map(|&p| 1u64 << p).collect();
    let mut rows = vec![0u64; nu];
    let mut best_support = u64::MAX;
    let mut best_rows: Vec<u64> = Vec::new();
    let total = 1u64 << free.len();
    for counter in 0..total {
        rows.copy_from_slice(&base);
        for (b, &(i, c)) in free.iter().enumerate() {
            if (counter >> b) & 1 == 1 {
                rows[i] |= 1u64 << c;
            }
        }
        let mut union = 0u64;
        for &msg in &rows {
            union |= table.codeword(msg);
        }
        let support = union.count_ones() as u64;
        if support < best_support
            || (support == best_support && lex_masks(&rows, &best_rows) == std::cmp::Ordering::Less)
        {
            best_support = support;
            best_rows = rows.clone();
        }
    }
    (best_support, best_rows, total)
}

/// Exact-or-upper-bound ν-th weight by branch-and-bound. The run completes
/// (and the result is exact, `exhaustive = true`) unless `node_budget`
/// candidate evaluations are exceeded first. The minimum value of a completed
/// run equals the exhaustive scan's; the witness may be any achieving basis.
pub fn ghw_oracle_pruned(code: &CodeInstance, nu: usize, node_budget: u64) -> Result<OracleResult> {
    check_nu(code, nu)?;
    let table = CodeTable::new(code)?;

    let seed = greedy_seed(&table, nu);
    let (seed_support, seed_messages) = match seed {
        Some(s) => s,
        // No codeword table (k > 20): seed with the first nu unit messages,
        // whose span is a legitimate subcode.
        None => {
            let messages: Vec<u64> = (0..nu).map(|i| 1u64 << i).collect();
            let mut union = 0u64;
            for &msg in &messages {
                union |= table.codeword(msg);
            }
            (union.count_ones() as u64, messages)
        }
    };

    let best = AtomicU64::new(seed_support);
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);

    let shards = pivot_sets(table.k, nu);
    let results: Vec<Option<(u64, Vec<u64>)>> = shards
        .par_iter()
        .map(|pivots| {
            let mut search = PrunedSearch {
                table: &table,
                pivots,
                free_cols: pivots
                    .iter()
                    .map(|&p| ((p + 1)..table.k).filter(|c| !pivots.contains(c)).collect())
                    .collect(),
                best: &best,
                nodes: &nodes,
                abort: &abort,
                node_budget,
                local_nodes: 0,
                rows: vec![0u64; nu],
                local_best: None,
            };
            search.run();
            search.flush_nodes();
            search.local_best
        })
        .collect();

    let min_support = best.load(Ordering::SeqCst);
    let mut witness_messages: Option<Vec<u64>> = None;
    for result in results.into_iter().flatten() {
        if result.0 == min_support {
            let better = match &witness_messages {
                None => true,
                Some(current) => lex_masks(&result.1, current) == std::cmp::Ordering::Less,
            };
            if better {
                witness_messages = Some(result.1);
            }
        }
    }
    let messages = match witness_messages {
        Some(m) => m,
        None => {
            assert_eq!(
                min_support, seed_support,
                "no shard achieved the final minimum, so it must be the seed's"
            );
            seed_messages
        }
    };
    assert!(!messages.is_empty(), "oracle found no witness basis");

    Ok(OracleResult {
        nu,
        min_support,
        witness: table.witness_from_messages(&messages),
        subspaces_examined: nodes.load(Ordering::SeqCst),
        exhaustive: !abort.load(Ordering::SeqCst),
    })
}

/// Greedy seed: start from a minimum-weight codeword and repeatedly adjoin
/// the independent message whose codeword grows the union support least.
/// Returns the seed's support and an RREF message basis; needs the codeword
/// table.
fn greedy_seed(table: &CodeTable, nu: usize) -> Option<(u64, Vec<u64>)> {
    table.codewords.as_ref()?;
    let total = 1u64 << table.k;
    let mut echelon: Vec<u64> = Vec::new();
    let mut chosen: Vec<u64> = Vec::new();
    let mut union = 0u64;
    for _ in 0..nu {
        let mut best: Option<(u64, u64, u64)> = None;
        for msg in 1..total {
            if !is_independent(&echelon, msg) {
                continue;
            }
            let new_union = union | table.codeword(msg);
            let weight = new_union.count_ones() as u64;
            if best.is_none_or(|(w, _, _)| weight < w) {
                best = Some((weight, msg, new_union));
            }
        }
        let (_, msg, new_union) = best.expect("nu <= k leaves an independent message");
        let mut residual = msg;
        for &row in &echelon {
            if (residual >> row.trailing_zeros()) & 1 == 1 {
                residual ^= row;
            }
        }
        echelon.push(residual);
        chosen.push(msg);
        union = new_union;
    }
    // Canonicalize the seed basis to RREF form.
    let matrix = BitMatrix::from_rows(
        table.k,
        chosen
            .iter()
            .map(|&msg| BitVector::from_mask(table.k, msg))
            .collect(),
    )
    .rref();
    let rref_messages: Vec<u64> = matrix.rows().iter().map(BitVector::as_mask).collect();
    Some((union.count_ones() as u64, rref_messages))
}

fn is_independent(echelon: &[u64], msg: u64) -> bool {
    let mut residual = msg;
    for &row in echelon {
        if (residual >> row.trailing_zeros()) & 1 == 1 {
            residual ^= row;
        }
    }
    residual != 0
}

struct PrunedSearch<'a> {
    table: &'a CodeTable,
    pivots: &'a [usize],
    free_cols: Vec<Vec<usize>>,
    best: &'a AtomicU64,
    nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
    node_budget: u64,
    local_nodes: u64,
    rows: Vec<u64>,
    local_best: Option<(u64, Vec<u64>)>,
}

impl PrunedSearch<'_> {
    fn run(&mut self) {
        self.descend(0, 0);
    }

    fn flush_nodes(&mut self) {
        if self.local_nodes > 0 {
            let total = self.nodes.fetch_add(self.local_nodes, Ordering::Relaxed) + self.local_nodes;
            self.local_nodes = 0;
            if total > self.node_budget {
                self.abort.store(true, Ordering::Relaxed);
            }
        }
    }

    /// Enumerates candidates for basis row `depth` in Gray-code order so
    /// each step flips a single free bit of the message (and XORs a single
    /// generator row into the codeword).
    fn descend(&mut self, depth: usize, union: u64) {
        let count = 1u64 << self.free_cols[depth].len();
        let mut msg = 1u64 << self.pivots[depth];
        let mut cw = self.table.codeword(msg);
        let nu = self.pivots.len();
        let mut i = 0u64;
        loop {
            self.local_nodes += 1;
            if self.local_nodes >= NODE_BATCH {
                self.flush_nodes();
                if self.abort.load(Ordering::Relaxed) {
                    return;
                }
            }

            let new_union = union | cw;
            let support = new_union.count_ones() as u64;
            if support < self.best.load(Ordering::Relaxed) {
                self.rows[depth] = msg;
                if depth + 1 == nu {
                    self.best.fetch_min(support, Ordering::SeqCst);
                    let better = match &self.local_best {
                        None => true,
                        Some((w, _)) => support < *w,
                    };
                    if better {
                        self.local_best = Some((support, self.rows.clone()));
                    }
                } else {
                    self.descend(depth + 1, new_union);
                    if self.abort.load(Ordering::Relaxed) {
                        return;
                    }
                }
            }

            i += 1;
            if i == count {
                return;
            }
            let flip = self.free_cols[depth][i.trailing_zeros() as usize];
            msg ^= 1u64 << flip;
            cw ^= self.table.row_masks[flip];
        }
    }
}

/// One row of the Reed-Muller comparison.
#[derive(Clone, Debug)]
pub struct GapRow {
    pub nu: usize,
    pub rm: u64,
    pub rm_exact: bool,
    pub prm: u64,
    pub prm_exact: bool,
}

/// Oracle comparison of the degree-r Reed-Muller code on m variables against
/// the projective code on the same parameters.
#[derive(Clone, Debug)]
pub struct GapReport {
    pub rows: Vec<GapRow>,
    /// In exhaustive mode, the first nu whose subspace count exceeded the
    /// budget; everything from it onward is missing from `rows`.
    pub truncated_at: Option<usize>,
}

/// Computes paired oracle values d_ν(RM) and d_ν(PRM) for ν = 1..=max_nu.
/// With `prune` set, both sides run the branch-and-bound with `budget` as a
/// node cap and every ν is reported along with per-side exactness flags;
/// otherwise both sides run exhaustively and the list truncates at the first
/// ν whose subspace count exceeds `budget`.
///
/// # Panics
/// Panics if two exact values violate d_ν(RM) <= d_ν(PRM); the projective
/// code's subcodes embed in the Reed-Muller code with equal support, so a
/// violation means the oracle is broken.
pub fn rm_prm_gap(
    r: u32,
    m: u32,
    max_nu: usize,
    budget: u64,
    prune: bool,
) -> Result<GapReport> {
    let prm = CodeSpec::prm(r, m)?.build();
    let rm = CodeSpec::rm(r, m)?.build();
    if max_nu < 1 || max_nu > prm.dimension() {
        return Err(Error::InvalidParameter(format!(
            "max_nu={max_nu} out of range; projective dimension is {}",
            prm.dimension()
        )));
    }

    let mut rows = Vec::new();
    let mut truncated_at = None;
    for nu in 1..=max_nu {
        let (rm_result, prm_result) = if prune {
            (
                ghw_oracle_pruned(&rm, nu, budget)?,
                ghw_oracle_pruned(&prm, nu, budget)?,
            )
        } else {
            let within = |code: &CodeInstance| {
                gaussian_binomial(code.dimension(), nu) <= BigUint::from(budget)
            };
            if !within(&rm) || !within(&prm) {
                truncated_at = Some(nu);
                break;
            }
            (ghw_oracle(&rm, nu, budget)?, ghw_oracle(&prm, nu, budget)?)
        };
        if rm_result.exhaustive && prm_result.exhaustive {
            assert!(
                rm_result.min_support <= prm_result.min_support,
                "oracle violated the subcode embedding at nu={nu}"
            );
        }
        rows.push(GapRow {
            nu,
            rm: rm_result.min_support,
            rm_exact: rm_result.exhaustive,
            prm: prm_result.min_support,
            prm_exact: prm_result.exhaustive,
        });
    }
    Ok(GapReport { rows, truncated_at })
}
