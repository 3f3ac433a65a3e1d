//! Cross-checks of the subcode oracle against the closed forms on the
//! ten-dimensional code, where the subspace counts are large but tractable.

use num_bigint::BigUint;
use prm_ghw::gf2::gaussian_binomial;
use prm_ghw::ghw::ghw_closed;
use prm_ghw::oracle::{ghw_oracle, ghw_oracle_pruned, rm_prm_gap, DEFAULT_ORACLE_BUDGET};
use prm_ghw::prm::CodeSpec;

#[test]
fn oracle_matches_closed_form_at_default_budget() {
    let code = CodeSpec::prm(2, 5).unwrap().build();
    let expected_counts = [
        (1usize, 1023u64),
        (2, 174_251),
        (9, 1023),
        (10, 1),
    ];
    for (nu, count) in expected_counts {
        assert_eq!(
            gaussian_binomial(10, nu),
            BigUint::from(count),
            "subspace count at nu={nu}"
        );
        let result = ghw_oracle(&code, nu, DEFAULT_ORACLE_BUDGET).unwrap();
        assert!(result.exhaustive);
        assert_eq!(result.subspaces_examined, count);
        assert_eq!(
            result.min_support,
            ghw_closed(nu as u64, 2, 5).unwrap(),
            "nu={nu}"
        );
    }
}

#[test]
fn oracle_matches_closed_form_at_raised_budget() {
    // nu=3 needs 6,347,715 subspaces.
    let code = CodeSpec::prm(2, 5).unwrap().build();
    assert_eq!(gaussian_binomial(10, 3), BigUint::from(6_347_715u64));
    let result = ghw_oracle(&code, 3, 20_000_000).unwrap();
    assert!(result.exhaustive);
    assert_eq!(result.min_support, ghw_closed(3, 2, 5).unwrap());
}

#[test]
fn pruned_oracle_handles_every_weight_of_the_ten_dimensional_code() {
    let code = CodeSpec::prm(2, 5).unwrap().build();
    for nu in 1..=10usize {
        let result = ghw_oracle_pruned(&code, nu, u64::MAX).unwrap();
        assert!(result.exhaustive, "nu={nu} should complete");
        assert_eq!(result.min_support, ghw_closed(nu as u64, 2, 5).unwrap(), "nu={nu}");
        assert_eq!(result.witness.rank(), nu);
        assert_eq!(
            result.witness.row_support().weight() as u64,
            result.min_support
        );
    }
}

#[test]
fn gap_report_truncates_exhaustively_then_completes_pruned() {
    // RM(2,4) against the projective code on the same parameters, dimensions
    // 11 and 6. Exhaustive mode covers nu=1 (2047 subspaces) and nu=2
    // (698,027) under the default budget, then truncates at nu=3 where the
    // Reed-Muller side needs about 5e7 subspaces.
    let exhaustive = rm_prm_gap(2, 4, 6, DEFAULT_ORACLE_BUDGET, false).unwrap();
    assert_eq!(exhaustive.truncated_at, Some(3));
    assert_eq!(exhaustive.rows.len(), 2);
    assert_eq!(exhaustive.rows[0].rm, 4);
    assert_eq!(exhaustive.rows[0].prm, 4);

    // The branch-and-bound covers all six projective weights exactly.
    let pruned = rm_prm_gap(2, 4, 6, 4_000_000_000, true).unwrap();
    assert!(pruned.truncated_at.is_none());
    assert_eq!(pruned.rows.len(), 6);
    for row in &pruned.rows {
        assert!(row.rm_exact && row.prm_exact, "nu={} not exact", row.nu);
        assert!(row.rm <= row.prm, "nu={}", row.nu);
        assert_eq!(
            row.prm,
            ghw_closed(row.nu as u64, 2, 4).unwrap(),
            "projective side disagrees with the closed form at nu={}",
            row.nu
        );
    }
    for (exhaustive_row, pruned_row) in exhaustive.rows.iter().zip(&pruned.rows) {
        assert_eq!(exhaustive_row.rm, pruned_row.rm);
        assert_eq!(exhaustive_row.prm, pruned_row.prm);
    }
}
