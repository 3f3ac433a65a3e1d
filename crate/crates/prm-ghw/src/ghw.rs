//! Closed-form generalized-Hamming-weight machinery for the binary projective
//! Reed-Muller code on m variables with degree r.
//!
//! Three independent routes to the weight hierarchy are provided:
//!
//! * [`ghw_closed`]: block length minus the shortening reduction Γ, which is
//!   computed from the unique ρ-decomposition of the number of shortened
//!   message symbols;
//! * [`ghw_canonical`]: a nested-binomial double sum over the canonical form
//!   of k, counting the coordinates that remain;
//! * [`lower_bound_recursion`]: a two-variable recursion that splits the
//!   code by its highest variable.
//!
//! A fourth route, the support of the anti-lex monomial prefix, lives in
//! [`crate::prm::monomial_support_size`] and is wrapped here as [`ghw_sigma`].

use crate::error::{Error, Result};
use crate::prm::{monomial_support_size, CodeSpec};
use crate::subsets::{antilex_prefix, colex_prefix, SubsetMask};
use std::collections::HashMap;

/// Binomial coefficient in u64; zero when k > n.
///
/// # Panics
/// Panics if the value would overflow u64 (n > 64 territory, far beyond the
/// desk-scale parameters this crate targets).
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 1..=k as u128 {
        result = result * (n as u128 - (k as u128 - i)) / i;
    }
    u64::try_from(result).expect("binomial overflows u64")
}

/// Block length of the non-degenerate projective code: Σ_{i=r}^m C(m,i).
pub fn block_length(r: u32, m: u32) -> u64 {
    (r..=m).map(|i| binomial(m, i)).sum()
}

/// Message dimension C(m,r).
pub fn dimension(r: u32, m: u32) -> u64 {
    binomial(m, r)
}

fn check_params(r: u32, m: u32) -> Result<()> {
    if m == 0 || r < 1 || r > m {
        return Err(Error::InvalidParameter(format!(
            "parameters require 1 <= r <= m, got r={r}, m={m}"
        )));
    }
    if m > 64 {
        return Err(Error::InvalidParameter(format!(
            "m={m} exceeds the supported maximum of 64"
        )));
    }
    Ok(())
}

/// The nested binomial sum h(p, r, t) = Σ_{i=0}^{p−1} C(r+t−i, r−i), with
/// h(0, ·, ·) = 0. Strictly increasing in p while p <= r.
pub fn h_func(p: u64, r: u32, t: u32) -> u64 {
    let mut sum = 0;
    for i in 0..p {
        if i > r as u64 {
            break;
        }
        let i = i as u32;
        sum += binomial(r + t - i, r - i);
    }
    sum
}

/// The unique decomposition of a shortening count γ < C(m,r) into the vector
/// (ρ_{ℓ−1}, .., ρ_0) with ρ_t >= 0 and Σρ_t <= r, where ℓ = m − r and
/// γ = Σ_t h(ρ_t, r_t, t) with r_t = r − Σ_{q>t} ρ_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoVector {
    r: u32,
    m: u32,
    gamma: u64,
    /// ρ_t indexed by t (so the paper-order tuple reads this back to front).
    rho: Vec<u64>,
    /// r_t indexed by t.
    r_t: Vec<u32>,
}

impl RhoVector {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// ℓ = m − r, the number of components.
    pub fn ell(&self) -> u32 {
        self.m - self.r
    }

    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    /// ρ_t for 0 <= t < ℓ.
    pub fn rho_at(&self, t: u32) -> u64 {
        self.rho[t as usize]
    }

    /// r_t = r − Σ_{q>t} ρ_q.
    pub fn r_at(&self, t: u32) -> u32 {
        self.r_t[t as usize]
    }

    /// Components in display order (ρ_{ℓ−1}, .., ρ_0).
    pub fn components(&self) -> Vec<u64> {
        self.rho.iter().rev().copied().collect()
    }
}

/// Decomposes γ greedily from t = ℓ−1 downward, at each step taking the
/// largest ρ_t <= r_t whose h-value fits in the remainder. The result is the
/// unique valid vector; uniqueness is exercised exhaustively in the tests.
pub fn rho_decompose(gamma: u64, r: u32, m: u32) -> Result<RhoVector> {
    check_params(r, m)?;
    let ell = m - r;
    if gamma >= binomial(m, ell) {
        return Err(Error::InvalidParameter(format!(
            "gamma={gamma} out of range; must be < C({m},{ell}) = {}",
            binomial(m, ell)
        )));
    }
    let mut rho = vec![0u64; ell as usize];
    let mut r_t = vec![0u32; ell as usize];
    let mut remaining = gamma;
    let mut r_current = r;
    for t in (0..ell).rev() {
        r_t[t as usize] = r_current;
        let mut p = 0u64;
        while p < r_current as u64 && h_func(p + 1, r_current, t) <= remaining {
            p += 1;
        }
        rho[t as usize] = p;
        remaining -= h_func(p, r_current, t);
        r_current -= p as u32;
    }
    assert_eq!(remaining, 0, "greedy decomposition must exhaust gamma");
    Ok(RhoVector { r, m, gamma, rho, r_t })
}

/// Block-length reduction Γ(r, m, γ) achieved by shortening the first γ
/// message symbols in co-lex order: Γ = Σ_t g(r_t, t) where, for ρ_t > 0,
/// g(r_t, t) = Σ_{j=0}^{t} Σ_{i=0}^{ρ_t−1} C(r_t+t−i, r_t+j−i).
pub fn gamma_reduction(gamma: u64, r: u32, m: u32) -> Result<u64> {
    let rho = rho_decompose(gamma, r, m)?;
    let mut total = 0u64;
    for t in 0..rho.ell() {
        let p = rho.rho_at(t);
        if p == 0 {
            continue;
        }
        let rt = rho.r_at(t);
        for j in 0..=t {
            for i in 0..p as u32 {
                total += binomial(rt + t - i, rt + j - i);
            }
        }
    }
    Ok(total)
}

/// k-th generalized Hamming weight via the shortening route:
/// d_k = Σ_{i=r}^m C(m,i) − Γ(r, m, C(m,r) − k), for 1 <= k <= C(m,r).
pub fn ghw_closed(k: u64, r: u32, m: u32) -> Result<u64> {
    check_params(r, m)?;
    let dim = dimension(r, m);
    if k < 1 || k > dim {
        return Err(Error::InvalidParameter(format!(
            "k={k} out of range; must be in 1..={dim}"
        )));
    }
    Ok(block_length(r, m) - gamma_reduction(dim - k, r, m)?)
}

/// The canonical form of k: the unique expansion k = Σ_{i=1}^t C(m_i, r_i)
/// with r > r_1 >= .. >= r_t >= 0 and m_i − r_i = m − r − i + 1. The
/// construction never emits a term with m_i = r_i, and uniqueness holds under
/// that additional constraint (without it, a term could be traded for the
/// full chain of its lower-diagonal expansion).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    r: u32,
    m: u32,
    k: u64,
    terms: Vec<(u32, u32)>,
}

impl CanonicalForm {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// The (m_i, r_i) pairs in order i = 1..t; empty exactly when k = 0.
    pub fn terms(&self) -> &[(u32, u32)] {
        &self.terms
    }
}

/// Computes the canonical form by the two-branch recursion: consume the term
/// (m−1, r−1) while k >= C(m−1, r−1), otherwise step down to (r−1, m−1).
pub fn canonical_decompose(k: u64, r: u32, m: u32) -> Result<CanonicalForm> {
    check_params(r, m)?;
    if k >= dimension(r, m) {
        return Err(Error::InvalidParameter(format!(
            "k={k} out of range; canonical form requires k < C({m},{r}) = {}",
            dimension(r, m)
        )));
    }
    let mut terms = Vec::new();
    let (mut k_rem, mut r_cur, mut m_cur) = (k, r, m);
    while k_rem > 0 {
        debug_assert!(r_cur >= 1 && m_cur >= 1);
        let c = binomial(m_cur - 1, r_cur - 1);
        if k_rem >= c {
            terms.push((m_cur - 1, r_cur - 1));
            k_rem -= c;
            m_cur -= 1;
        } else {
            r_cur -= 1;
            m_cur -= 1;
        }
    }
    let form = CanonicalForm { r, m, k, terms };
    debug_assert!(form_is_valid(&form));
    Ok(form)
}

fn form_is_valid(form: &CanonicalForm) -> bool {
    let mut sum = 0u64;
    for (i, &(mi, ri)) in form.terms.iter().enumerate() {
        let upper_ok = if i == 0 {
            form.r > ri
        } else {
            form.terms[i - 1].1 >= ri
        };
        let offset = form.m as i64 - form.r as i64 - i as i64;
        if !upper_ok || mi as i64 - ri as i64 != offset || mi <= ri {
            return false;
        }
        sum += binomial(mi, ri);
    }
    sum == form.k
}

/// k-th generalized Hamming weight via the canonical form:
/// d_k = Σ_i Σ_{j=r_i}^{m_i} C(m_i, j), for 1 <= k < C(m,r).
pub fn ghw_canonical(k: u64, r: u32, m: u32) -> Result<u64> {
    if k < 1 {
        return Err(Error::InvalidParameter(
            "k=0 has no canonical-form weight".into(),
        ));
    }
    let form = canonical_decompose(k, r, m)?;
    Ok(form
        .terms()
        .iter()
        .map(|&(mi, ri)| (ri..=mi).map(|j| binomial(mi, j)).sum::<u64>())
        .sum())
}

/// Closed form for the head of the hierarchy:
/// d_k = (2^k − 1) · 2^(m−r−k+1), valid for 1 <= k <= m − r + 1.
pub fn ghw_special(k: u64, r: u32, m: u32) -> Result<u64> {
    check_params(r, m)?;
    let bound = (m - r + 1) as u64;
    if k < 1 || k > bound {
        return Err(Error::InvalidParameter(format!(
            "k={k} outside the special range 1..={bound}"
        )));
    }
    let free = (m - r + 1) as u64 - k;
    let value = ((1u128 << k) - 1) << free;
    Ok(u64::try_from(value).expect("special-case value overflows u64"))
}

/// k-th weight via the highest-variable split recursion
/// d_k(r,m) = d_s(r−1,m−1) + d_t(r,m−1), evaluated with exact smaller-
/// parameter values at the split that minimizes the sum, namely the one that
/// exhausts the monomials containing the highest variable first:
/// s = min(k, C(m−1,r−1)), t = k − s.
///
/// Base cases: d_0 = 0, and for a degree-0 subproblem the single constant
/// monomial is supported on all 2^m points of its slice, so d_1(0, m) = 2^m.
pub fn lower_bound_recursion(k: u64, r: u32, m: u32) -> Result<u64> {
    check_params(r, m)?;
    if k < 1 || k > dimension(r, m) {
        return Err(Error::InvalidParameter(format!(
            "k={k} out of range; must be in 1..={}",
            dimension(r, m)
        )));
    }
    let mut memo = HashMap::new();
    Ok(recurse(k, r, m, &mut memo))
}

fn recurse(k: u64, r: u32, m: u32, memo: &mut HashMap<(u64, u32, u32), u64>) -> u64 {
    if k == 0 {
        return 0;
    }
    if r == 0 {
        debug_assert_eq!(k, 1);
        return 1u64 << m;
    }
    if let Some(&v) = memo.get(&(k, r, m)) {
        return v;
    }
    let s = k.min(binomial(m - 1, r - 1));
    let t = k - s;
    debug_assert!(t <= binomial(m - 1, r));
    let value = recurse(s, r - 1, m - 1, memo) + recurse(t, r, m - 1, memo);
    memo.insert((k, r, m), value);
    value
}

/// k-th weight as the support of the first k monomials in anti-lex order,
/// computed through the generator matrix and the shadow machinery.
pub fn ghw_sigma(k: u64, r: u32, m: u32) -> Result<u64> {
    check_params(r, m)?;
    if k < 1 || k > dimension(r, m) {
        return Err(Error::InvalidParameter(format!(
            "k={k} out of range; must be in 1..={}",
            dimension(r, m)
        )));
    }
    let code = CodeSpec::prm(r, m)?.build();
    monomial_support_size(&code, &antilex_prefix(r, m, k)?)
}

/// Per-k record kept alongside a hierarchy: the method that produced the
/// value, the shortening count, its reduction, and the canonical form
/// (absent at k = C(m,r)).
#[derive(Clone, Debug)]
pub struct HierarchyEntry {
    pub k: u64,
    pub method: &'static str,
    pub gamma: u64,
    pub reduction: u64,
    pub value: u64,
    pub canonical_terms: Option<Vec<(u32, u32)>>,
}

/// The full weight hierarchy (d_1, .., d_{C(m,r)}) of one code, with per-k
/// provenance.
#[derive(Clone, Debug)]
pub struct GhwHierarchy {
    r: u32,
    m: u32,
    values: Vec<u64>,
    per_k: Vec<HierarchyEntry>,
}

impl GhwHierarchy {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn entry(&self, k: u64) -> &HierarchyEntry {
        &self.per_k[(k - 1) as usize]
    }

    pub fn entries(&self) -> &[HierarchyEntry] {
        &self.per_k
    }
}

/// Builds the hierarchy via the shortening route and cross-fills each entry
/// below full dimension with the canonical form.
///
/// # Panics
/// Panics if the two routes disagree or the hierarchy fails to increase
/// strictly; either would be an implementation bug.
pub fn hierarchy(r: u32, m: u32) -> Result<GhwHierarchy> {
    check_params(r, m)?;
    let dim = dimension(r, m);
    let mut values = Vec::with_capacity(dim as usize);
    let mut per_k = Vec::with_capacity(dim as usize);
    for k in 1..=dim {
        let gamma = dim - k;
        let reduction = gamma_reduction(gamma, r, m)?;
        let value = block_length(r, m) - reduction;
        let canonical_terms = if k < dim {
            let form = canonical_decompose(k, r, m)?;
            assert_eq!(
                ghw_canonical(k, r, m)?,
                value,
                "canonical and shortening routes disagree at k={k}, r={r}, m={m}"
            );
            Some(form.terms().to_vec())
        } else {
            None
        };
        let method = if k < dim { "closed+canonical" } else { "closed" };
        if let Some(&previous) = values.last() {
            assert!(value > previous, "hierarchy not strictly increasing at k={k}");
        }
        values.push(value);
        per_k.push(HierarchyEntry { k, method, gamma, reduction, value, canonical_terms });
    }
    Ok(GhwHierarchy { r, m, values, per_k })
}

/// One row of the shortening schedule: shortening the first γ message
/// symbols in co-lex order (the γ-th of which is `picked`) removes
/// `reduction` coordinates and leaves a [n, k] code.
#[derive(Clone, Debug)]
pub struct ShortenRow {
    pub k: u64,
    pub gamma: u64,
    pub picked: SubsetMask,
    pub reduction: u64,
    pub n: u64,
}

/// The full shortening schedule, one row per γ = 0, .., C(m,r) − 1.
pub fn shorten_table(r: u32, m: u32) -> Result<Vec<ShortenRow>> {
    check_params(r, m)?;
    let dim = dimension(r, m);
    let n_full = block_length(r, m);
    let colex = colex_prefix(r, m, dim)?;
    let mut rows = Vec::with_capacity(dim as usize);
    for gamma in 0..dim {
        let picked = if gamma == 0 {
            SubsetMask::empty(m)
        } else {
            colex.members()[(gamma - 1) as usize]
        };
        let reduction = gamma_reduction(gamma, r, m)?;
        rows.push(ShortenRow {
            k: dim - gamma,
            gamma,
            picked,
            reduction,
            n: n_full - reduction,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(10, 5), 252);
    }

    #[test]
    fn h_func_examples() {
        assert_eq!(h_func(0, 7, 3), 0);
        assert_eq!(h_func(1, 2, 1), 3);
        assert_eq!(h_func(2, 2, 2), 9);
    }

    #[test]
    fn rho_decompose_examples() {
        let zero = rho_decompose(0, 2, 5).unwrap();
        assert_eq!(zero.components(), vec![0, 0, 0]);

        let four = rho_decompose(4, 2, 5).unwrap();
        assert_eq!(four.components(), vec![0, 1, 1]);

        let nine = rho_decompose(9, 2, 5).unwrap();
        assert_eq!(nine.components(), vec![2, 0, 0]);

        assert!(rho_decompose(10, 2, 5).is_err());
    }

    #[test]
    fn rho_reconstructs_gamma() {
        for m in 1..=8u32 {
            for r in 1..=m {
                for gamma in 0..dimension(r, m) {
                    let rho = rho_decompose(gamma, r, m).unwrap();
                    let total: u64 = (0..rho.ell())
                        .map(|t| h_func(rho.rho_at(t), rho.r_at(t), t))
                        .sum();
                    assert_eq!(total, gamma, "r={r} m={m} gamma={gamma}");
                    assert!(rho.rho.iter().sum::<u64>() <= r as u64);
                }
            }
        }
    }

    #[test]
    fn gamma_reduction_matches_shortening_schedule() {
        // Reductions for r=2, m=5, gamma = 0..9.
        let expected = [0u64, 1, 2, 4, 5, 7, 11, 12, 14, 18];
        for (gamma, &want) in expected.iter().enumerate() {
            assert_eq!(gamma_reduction(gamma as u64, 2, 5).unwrap(), want, "gamma={gamma}");
        }
    }

    #[test]
    fn gamma_reduction_dominates_gamma_and_increases() {
        for m in 1..=8u32 {
            for r in 1..=m {
                let mut previous: Option<u64> = None;
                for gamma in 0..dimension(r, m) {
                    let reduction = gamma_reduction(gamma, r, m).unwrap();
                    assert!(reduction >= gamma, "r={r} m={m} gamma={gamma}");
                    if let Some(p) = previous {
                        assert!(reduction > p, "not strictly increasing at gamma={gamma}");
                    }
                    previous = Some(reduction);
                }
            }
        }
    }

    #[test]
    fn ghw_closed_examples() {
        assert_eq!(ghw_closed(6, 2, 5).unwrap(), 21);
        assert_eq!(ghw_closed(10, 2, 5).unwrap(), 26);
        assert_eq!(ghw_closed(3, 3, 5).unwrap(), 7);
        assert!(ghw_closed(0, 2, 5).is_err());
        assert!(ghw_closed(11, 2, 5).is_err());
    }

    #[test]
    fn canonical_decompose_examples() {
        assert!(canonical_decompose(0, 2, 5).unwrap().terms().is_empty());
        assert_eq!(canonical_decompose(5, 2, 5).unwrap().terms(), &[(4, 1), (2, 0)]);
        assert!(canonical_decompose(10, 2, 5).is_err());
    }

    #[test]
    fn canonical_low_branch_reuses_smaller_form() {
        // Below C(m-1, r-1) the canonical form is the (r-1, m-1) one.
        for (r, m) in [(2u32, 5u32), (3, 6), (3, 5)] {
            for k in 0..binomial(m - 1, r - 1) {
                let own = canonical_decompose(k, r, m).unwrap();
                let smaller = canonical_decompose(k, r - 1, m - 1).unwrap();
                assert_eq!(own.terms(), smaller.terms(), "r={r} m={m} k={k}");
            }
        }
    }

    #[test]
    fn ghw_canonical_examples() {
        assert_eq!(ghw_canonical(5, 2, 5).unwrap(), 19);
        assert_eq!(ghw_canonical(4, 2, 4).unwrap(), 9);
        for (r, m) in [(2u32, 5u32), (1, 6), (3, 7)] {
            assert_eq!(ghw_canonical(1, r, m).unwrap(), 1u64 << (m - r));
        }
    }

    #[test]
    fn ghw_special_examples() {
        assert_eq!(ghw_special(2, 2, 5).unwrap(), 12);
        assert_eq!(ghw_special(3, 2, 5).unwrap(), 14);
        assert_eq!(ghw_special(4, 2, 5).unwrap(), 15);
        assert!(ghw_special(5, 2, 5).is_err());
    }

    #[test]
    fn special_note_values() {
        for m in 2..=10u32 {
            for r in 1..=m {
                assert_eq!(ghw_special(1, r, m).unwrap(), 1u64 << (m - r));
                if m > r {
                    assert_eq!(ghw_special(2, r, m).unwrap(), 3u64 << (m - r - 1));
                }
                if m >= r + 2 {
                    assert_eq!(ghw_special(3, r, m).unwrap(), 7u64 << (m - r - 2));
                }
            }
        }
    }

    #[test]
    fn special_agrees_with_closed_form() {
        for m in 1..=10u32 {
            for r in 1..=m {
                for k in 1..=(m - r + 1) as u64 {
                    assert_eq!(
                        ghw_special(k, r, m).unwrap(),
                        ghw_closed(k, r, m).unwrap(),
                        "r={r} m={m} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(lower_bound_recursion(6, 2, 5).unwrap(), 21);
        for (r, m) in [(2u32, 5u32), (3, 6), (1, 4)] {
            assert_eq!(lower_bound_recursion(1, r, m).unwrap(), 1u64 << (m - r));
        }
        for k in 1..=10 {
            assert_eq!(
                lower_bound_recursion(k, 2, 5).unwrap(),
                ghw_closed(k, 2, 5).unwrap()
            );
        }
    }

    #[test]
    fn hierarchy_table_rows() {
        let rows: [(u32, u32, &[u64]); 10] = [
            (1, 2, &[2, 3]),
            (1, 3, &[4, 6, 7]),
            (2, 3, &[2, 3, 4]),
            (1, 4, &[8, 12, 14, 15]),
            (2, 4, &[4, 6, 7, 9, 10, 11]),
            (3, 4, &[2, 3, 4, 5]),
            (1, 5, &[16, 24, 28, 30, 31]),
            (2, 5, &[8, 12, 14, 15, 19, 21, 22, 24, 25, 26]),
            (3, 5, &[4, 6, 7, 9, 10, 11, 13, 14, 15, 16]),
            (4, 5, &[2, 3, 4, 5, 6]),
        ];
        for (r, m, expected) in rows {
            assert_eq!(hierarchy(r, m).unwrap().values(), expected, "r={r} m={m}");
        }
    }

    #[test]
    fn hierarchy_endpoints() {
        for m in 1..=8u32 {
            for r in 1..=m {
                let h = hierarchy(r, m).unwrap();
                assert_eq!(h.values()[0], 1u64 << (m - r));
                assert_eq!(*h.values().last().unwrap(), block_length(r, m));
            }
        }
    }

    #[test]
    fn shorten_table_for_r2_m5() {
        let rows = shorten_table(2, 5).unwrap();
        let expected: [(u64, u64, &[u32], u64, u64); 10] = [
            (10, 0, &[], 0, 26),
            (9, 1, &[1, 2], 1, 25),
            (8, 2, &[1, 3], 2, 24),
            (7, 3, &[2, 3], 4, 22),
            (6, 4, &[1, 4], 5, 21),
            (5, 5, &[2, 4], 7, 19),
            (4, 6, &[3, 4], 11, 15),
            (3, 7, &[1, 5], 12, 14),
            (2, 8, &[2, 5], 14, 12),
            (1, 9, &[3, 5], 18, 8),
        ];
        assert_eq!(rows.len(), expected.len());
        for (row, (k, gamma, set, reduction, n)) in rows.iter().zip(expected) {
            assert_eq!(row.k, k);
            assert_eq!(row.gamma, gamma);
            assert_eq!(row.picked, SubsetMask::from_elements(5, set).unwrap());
            assert_eq!(row.reduction, reduction);
            assert_eq!(row.n, n);
        }
    }

    #[test]
    fn shorten_table_single_coordinate_code() {
        let rows = shorten_table(1, 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].gamma, 0);
        assert_eq!(rows[0].k, 1);
        assert_eq!(rows[0].n, 1);
    }

    #[test]
    fn sigma_route_matches_closed_form_spot_checks() {
        for (k, r, m, want) in [(5u64, 2u32, 5u32, 19u64), (3, 2, 5, 14), (1, 3, 6, 8)] {
            assert_eq!(ghw_sigma(k, r, m).unwrap(), want);
            assert_eq!(ghw_closed(k, r, m).unwrap(), want);
        }
    }

    #[test]
    fn rho_uniqueness_exhaustive() {
        // Every vector with nonnegative parts summing to at most r produces a
        // distinct gamma, the gammas cover 0..C(m,r), and the constructive
        // decomposition returns exactly the originating vector.
        fn all_vectors(ell: u32, max_sum: u64) -> Vec<Vec<u64>> {
            if ell == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for head in 0..=max_sum {
                for mut tail in all_vectors(ell - 1, max_sum - head) {
                    let mut v = vec![head];
                    v.append(&mut tail);
                    out.push(v);
                }
            }
            out
        }

        for m in 1..=7u32 {
            for r in 1..=m {
                let ell = m - r;
                let mut seen = HashMap::new();
                for rho in all_vectors(ell, r as u64) {
                    // rho here is indexed by t ascending.
                    let mut r_cur = r;
                    let mut gamma = 0u64;
                    for t in (0..ell).rev() {
                        let p = rho[t as usize];
                        gamma += h_func(p, r_cur, t);
                        r_cur -= p as u32;
                    }
                    if let Some(previous) = seen.insert(gamma, rho.clone()) {
                        panic!(
                            "two vectors for gamma={gamma} at r={r}, m={m}: {previous:?} vs {rho:?}"
                        );
                    }
                }
                let dim = dimension(r, m);
                assert_eq!(seen.len() as u64, dim, "r={r} m={m}");
                for gamma in 0..dim {
                    let expected = &seen[&gamma];
                    let got = rho_decompose(gamma, r, m).unwrap();
                    assert_eq!(&got.rho, expected, "r={r} m={m} gamma={gamma}");
                }
            }
        }
    }

    #[test]
    fn canonical_uniqueness_exhaustive() {
        // Enumerate every term list obeying the canonical constraints
        // (descending r_i below r, forced offsets m_i - r_i = m - r - i + 1,
        // and m_i > r_i) and check each k has exactly one.
        fn extend(
            r: u32,
            m: u32,
            index: u32,
            max_r: u32,
            terms: &mut Vec<(u32, u32)>,
            found: &mut HashMap<u64, Vec<(u32, u32)>>,
        ) {
            let sum: u64 = terms.iter().map(|&(mi, ri)| binomial(mi, ri)).sum();
            if sum >= dimension(r, m) {
                return;
            }
            if let Some(previous) = found.insert(sum, terms.clone()) {
                panic!("two forms for k={sum} at r={r}, m={m}: {previous:?} vs {terms:?}");
            }
            let offset = m as i64 - r as i64 - index as i64 + 1;
            if offset < 1 {
                return;
            }
            for ri in (0..=max_r).rev() {
                let mi = ri as i64 + offset;
                debug_assert!(mi > ri as i64);
                terms.push((mi as u32, ri));
                extend(r, m, index + 1, ri, terms, found);
                terms.pop();
            }
        }

        for m in 1..=7u32 {
            for r in 1..=m {
                let mut found = HashMap::new();
                let mut terms = Vec::new();
                extend(r, m, 1, r - 1, &mut terms, &mut found);
                let dim = dimension(r, m);
                assert_eq!(found.len() as u64, dim, "r={r} m={m}");
                for k in 0..dim {
                    let expected = &found[&k];
                    let got = canonical_decompose(k, r, m).unwrap();
                    assert_eq!(got.terms(), expected.as_slice(), "r={r} m={m} k={k}");
                }
            }
        }
    }
}
