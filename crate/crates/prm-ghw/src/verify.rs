//! Cross-module verification suites: every closed-form route checked against
//! every other and against the brute-force oracles, over a parameter sweep
//! bounded by `max_m`. Each suite reports pass/fail/skip counts and the first
//! counterexample it hit, so a failure pinpoints the inputs.

use crate::ghw::{
    binomial, canonical_decompose, dimension, ghw_canonical, ghw_closed, h_func,
    lower_bound_recursion, rho_decompose,
};
use crate::oracle::ghw_oracle;
use crate::prm::{monomial_support_size, CodeSpec};
use crate::subsets::{antilex_prefix, binomial_u128, min_shadow_bruteforce, upward_shadow};
use crate::gf2::gaussian_binomial;
use num_bigint::BigUint;

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self { name, passed: 0, failed: 0, skipped: 0, first_failure: None }
    }

    fn check(&mut self, ok: bool, describe: impl Fn() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// The closed, canonical, and monomial-support routes agree on every weight
/// for all 1 <= r <= m <= max_m.
pub fn verify_triple_agreement(max_m: u32) -> SuiteReport {
    let mut report = SuiteReport::new("triple-agreement");
    for m in 1..=max_m {
        for r in 1..=m {
            let code = CodeSpec::prm(r, m).expect("valid parameters").build();
            for k in 1..=dimension(r, m) {
                let closed = ghw_closed(k, r, m).expect("in range");
                let sigma = monomial_support_size(
                    &code,
                    &antilex_prefix(r, m, k).expect("in range"),
                )
                .expect("uniform family");
                let canonical = if k < dimension(r, m) {
                    ghw_canonical(k, r, m).expect("in range")
                } else {
                    closed
                };
                report.check(closed == canonical && closed == sigma, || {
                    format!(
                        "r={r} m={m} k={k}: closed={closed}, canonical={canonical}, sigma={sigma}"
                    )
                });
            }
        }
    }
    report
}

/// The anti-lex prefix attains the exhaustive minimum shadow size for every
/// family size, wherever the family count fits the budget.
pub fn verify_kruskal_katona(max_m: u32, family_budget: u64) -> SuiteReport {
    let mut report = SuiteReport::new("kruskal-katona");
    for m in 1..=max_m {
        for r in 1..=m {
            let total = binomial(m, r);
            for k in 0..=total {
                if binomial_u128(total as u32, k as u32) > family_budget as u128 {
                    report.skipped += 1;
                    continue;
                }
                let prefix = upward_shadow(&antilex_prefix(r, m, k).expect("in range")).len() as u64;
                let minimum =
                    min_shadow_bruteforce(r, m, k, family_budget).expect("budget checked");
                report.check(prefix == minimum, || {
                    format!("r={r} m={m} k={k}: prefix shadow {prefix}, brute-force min {minimum}")
                });
            }
        }
    }
    report
}

/// Exhaustive uniqueness of the rho-decomposition: candidate vectors are in
/// bijection with shortening counts, and the constructive decomposition
/// returns the unique candidate.
pub fn verify_rho_uniqueness(max_m: u32) -> SuiteReport {
    let mut report = SuiteReport::new("rho-uniqueness");
    for m in 1..=max_m {
        for r in 1..=m {
            let ell = m - r;
            let dim = dimension(r, m);
            let mut by_gamma: Vec<Option<Vec<u64>>> = vec![None; dim as usize];
            let mut duplicate = None;
            visit_rho_vectors(ell, r as u64, &mut Vec::new(), &mut |rho| {
                let mut r_cur = r;
                let mut gamma = 0u64;
                for t in (0..ell).rev() {
                    let p = rho[t as usize];
                    gamma += h_func(p, r_cur, t);
                    r_cur -= p as u32;
                }
                if gamma < dim {
                    if by_gamma[gamma as usize].is_some() && duplicate.is_none() {
                        duplicate = Some(gamma);
                    }
                    by_gamma[gamma as usize] = Some(rho.to_vec());
                } else if duplicate.is_none() {
                    duplicate = Some(gamma);
                }
            });
            report.check(duplicate.is_none(), || {
                format!("r={r} m={m}: candidate collision or overflow at gamma={duplicate:?}")
            });
            for gamma in 0..dim {
                let expected = by_gamma[gamma as usize].clone();
                let got = rho_decompose(gamma, r, m).expect("in range");
                let got_by_t: Vec<u64> = (0..ell).map(|t| got.rho_at(t)).collect();
                report.check(expected.as_deref() == Some(&got_by_t[..]), || {
                    format!("r={r} m={m} gamma={gamma}: expected {expected:?}, got {got_by_t:?}")
                });
            }
        }
    }
    report
}

fn visit_rho_vectors(ell: u32, max_sum: u64, prefix: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if ell == 0 {
        f(prefix);
        return;
    }
    for head in 0..=max_sum {
        prefix.push(head);
        visit_rho_vectors(ell - 1, max_sum - head, prefix, f);
        prefix.pop();
    }
}

/// Exhaustive uniqueness of the canonical form under its constraints, and
/// agreement with the constructive decomposition.
pub fn verify_canonical_uniqueness(max_m: u32) -> SuiteReport {
    let mut report = SuiteReport::new("canonical-uniqueness");
    for m in 1..=max_m {
        for r in 1..=m {
            let dim = dimension(r, m);
            let mut by_k: Vec<Option<Vec<(u32, u32)>>> = vec![None; dim as usize];
            let mut duplicate = None;
            visit_canonical_forms(r, m, 1, r.saturating_sub(1), &mut Vec::new(), &mut |terms| {
                let sum: u64 = terms.iter().map(|&(mi, ri)| binomial(mi, ri)).sum();
                if sum < dim {
                    if by_k[sum as usize].is_some() && duplicate.is_none() {
                        duplicate = Some(sum);
                    }
                    by_k[sum as usize] = Some(terms.to_vec());
                }
            });
            report.check(duplicate.is_none(), || {
                format!("r={r} m={m}: two canonical forms for k={duplicate:?}")
            });
            for k in 0..dim {
                let expected = by_k[k as usize].clone();
                let got = canonical_decompose(k, r, m).expect("in range");
                report.check(expected.as_deref() == Some(got.terms()), || {
                    format!(
                        "r={r} m={m} k={k}: expected {expected:?}, got {:?}",
                        got.terms()
                    )
                });
            }
        }
    }
    report
}

fn visit_canonical_forms(
    r: u32,
    m: u32,
    index: u32,
    max_r: u32,
    terms: &mut Vec<(u32, u32)>,
    f: &mut impl FnMut(&[(u32, u32)]),
) {
    f(terms);
    if r == 0 {
        return;
    }
    let offset = m as i64 - r as i64 - index as i64 + 1;
    if offset < 1 {
        return;
    }
    for ri in (0..=max_r).rev() {
        let mi = (ri as i64 + offset) as u32;
        terms.push((mi, ri));
        visit_canonical_forms(r, m, index + 1, ri, terms, f);
        terms.pop();
    }
}

/// The highest-variable split recursion reproduces the closed form on every
/// weight for all 1 <= r <= m <= max_m.
pub fn verify_recursion_tightness(max_m: u32) -> SuiteReport {
    let mut report = SuiteReport::new("recursion-tightness");
    for m in 1..=max_m {
        for r in 1..=m {
            for k in 1..=dimension(r, m) {
                let recursive = lower_bound_recursion(k, r, m).expect("in range");
                let closed = ghw_closed(k, r, m).expect("in range");
                report.check(recursive == closed, || {
                    format!("r={r} m={m} k={k}: recursion {recursive}, closed {closed}")
                });
            }
        }
    }
    report
}

/// The exhaustive subcode oracle reproduces the closed form wherever the
/// subspace count fits the budget; larger instances count as skipped.
pub fn verify_oracle_equivalence(max_m: u32, oracle_budget: u64) -> SuiteReport {
    let mut report = SuiteReport::new("oracle-equivalence");
    for m in 1..=max_m {
        for r in 1..=m {
            let spec = match CodeSpec::prm(r, m) {
                Ok(spec) => spec,
                Err(_) => {
                    report.skipped += dimension(r, m);
                    continue;
                }
            };
            if spec.block_length() > 64 {
                report.skipped += dimension(r, m);
                continue;
            }
            let code = spec.build();
            for nu in 1..=code.dimension() {
                if gaussian_binomial(code.dimension(), nu) > BigUint::from(oracle_budget) {
                    report.skipped += 1;
                    continue;
                }
                let oracle = ghw_oracle(&code, nu, oracle_budget).expect("budget checked");
                let closed = ghw_closed(nu as u64, r, m).expect("in range");
                report.check(oracle.min_support == closed, || {
                    format!(
                        "r={r} m={m} nu={nu}: oracle {}, closed {closed}",
                        oracle.min_support
                    )
                });
            }
        }
    }
    report
}

/// Runs every suite and returns the reports in a fixed order.
pub fn run_all(max_m: u32, oracle_budget: u64, family_budget: u64) -> Vec<SuiteReport> {
    vec![
        verify_triple_agreement(max_m),
        verify_kruskal_katona(max_m, family_budget),
        verify_rho_uniqueness(max_m),
        verify_canonical_uniqueness(max_m),
        verify_recursion_tightness(max_m),
        verify_oracle_equivalence(max_m, oracle_budget),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_ORACLE_BUDGET;
    use crate::subsets::DEFAULT_FAMILY_BUDGET;

    #[test]
    fn all_suites_pass_at_m_4() {
        for report in run_all(4, DEFAULT_ORACLE_BUDGET, DEFAULT_FAMILY_BUDGET) {
            assert!(
                report.ok(),
                "suite {} failed: {:?}",
                report.name,
                report.first_failure
            );
            assert!(report.passed > 0, "suite {} ran nothing", report.name);
        }
    }

    #[test]
    fn oracle_suite_skips_over_budget_cases() {
        let report = verify_oracle_equivalence(5, 200_000);
        assert!(report.ok(), "{:?}", report.first_failure);
        assert!(report.skipped > 0);
        assert!(report.passed > 0);
    }
}
