//! Construction of binary projective Reed-Muller and Reed-Muller codes as
//! explicit generator matrices over GF(2).
//!
//! A degree-r monomial is indexed by the r-subset R of [m] of its variables;
//! it evaluates to 1 at a point x exactly when R ⊆ supp(x). The projective
//! code keeps only the non-degenerate coordinates, i.e. points of weight at
//! least r, so both points and monomials are subsets of [m] and the generator
//! entry for (R, x) is the subset test R ⊆ supp(x).
//!
//! Coordinate conventions (fixed so matrices are byte-reproducible):
//! variable i corresponds to bit i−1 of a point mask. Projective code columns
//! are ordered by (cardinality ascending, co-lex ascending within a
//! cardinality), which puts the weight-r systematic columns first; rows are
//! the r-subsets in ascending co-lex order. Reed-Muller columns are all 2^m
//! points ordered by the integer value of the point mask; rows are monomials
//! of degree at most r ordered by (degree, co-lex).

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::subsets::{binomial_u128, colex_prefix, SubsetFamily, SubsetMask};
use std::collections::HashMap;
use std::fmt;

/// Largest number of variables for which generator matrices stay desk-size.
const MAX_VARIABLES: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeFamily {
    /// Projective Reed-Muller: homogeneous degree-r polynomials in m
    /// variables evaluated at the points of weight >= r.
    Prm,
    /// Reed-Muller: polynomials of degree <= r evaluated at all 2^m points.
    Rm,
}

impl fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeFamily::Prm => write!(f, "PRM"),
            CodeFamily::Rm => write!(f, "RM"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    pub family: CodeFamily,
    pub r: u32,
    pub m: u32,
}

impl CodeSpec {
    pub fn new(family: CodeFamily, r: u32, m: u32) -> Result<Self> {
        if m == 0 || m > MAX_VARIABLES {
            return Err(Error::InvalidParameter(format!(
                "number of variables must be in 1..={MAX_VARIABLES}, got {m}"
            )));
        }
        match family {
            CodeFamily::Prm if r < 1 || r > m => {
                return Err(Error::InvalidParameter(format!(
                    "projective code requires 1 <= r <= m, got r={r}, m={m}"
                )));
            }
            CodeFamily::Rm if r > m => {
                return Err(Error::InvalidParameter(format!(
                    "Reed-Muller code requires 0 <= r <= m, got r={r}, m={m}"
                )));
            }
            _ => {}
        }
        Ok(Self { family, r, m })
    }

    pub fn prm(r: u32, m: u32) -> Result<Self> {
        Self::new(CodeFamily::Prm, r, m)
    }

    pub fn rm(r: u32, m: u32) -> Result<Self> {
        Self::new(CodeFamily::Rm, r, m)
    }

    /// Message-space dimension from the counting formulas.
    pub fn dimension(&self) -> u64 {
        match self.family {
            CodeFamily::Prm => binomial_u128(self.m, self.r) as u64,
            CodeFamily::Rm => (0..=self.r).map(|i| binomial_u128(self.m, i) as u64).sum(),
        }
    }

    /// Block length from the counting formulas.
    pub fn block_length(&self) -> u64 {
        match self.family {
            CodeFamily::Prm => (self.r..=self.m)
                .map(|i| binomial_u128(self.m, i) as u64)
                .sum(),
            CodeFamily::Rm => 1u64 << self.m,
        }
    }

    pub fn build(&self) -> CodeInstance {
        build_code(*self)
    }
}

/// A constructed code: evaluation points, monomial rows, and the generator
/// matrix. Immutable after construction.
#[derive(Clone, Debug)]
pub struct CodeInstance {
    spec: CodeSpec,
    points: Vec<SubsetMask>,
    monomials: Vec<SubsetMask>,
    generator: BitMatrix,
}

/// Every subset of [m] of cardinality >= r, ordered by (cardinality
/// ascending, co-lex ascending within a cardinality). The first C(m,r)
/// entries are the weight-r systematic coordinates.
pub fn evaluation_points(r: u32, m: u32) -> Result<Vec<SubsetMask>> {
    CodeSpec::prm(r, m)?;
    let mut points = Vec::new();
    for size in r..=m {
        let level = colex_prefix(size, m, binomial_u128(m, size) as u64)?;
        points.extend_from_slice(level.members());
    }
    Ok(points)
}

fn build_code(spec: CodeSpec) -> CodeInstance {
    let (points, monomials) = match spec.family {
        CodeFamily::Prm => {
            let points = evaluation_points(spec.r, spec.m).expect("spec validated");
            let monomials = colex_prefix(spec.r, spec.m, binomial_u128(spec.m, spec.r) as u64)
                .expect("spec validated")
                .members()
                .to_vec();
            (points, monomials)
        }
        CodeFamily::Rm => {
            let points: Vec<SubsetMask> = (0..(1u64 << spec.m))
                .map(|mask| SubsetMask::new(spec.m, mask).expect("mask in range"))
                .collect();
            let mut monomials = Vec::new();
            for degree in 0..=spec.r {
                let level = colex_prefix(degree, spec.m, binomial_u128(spec.m, degree) as u64)
                    .expect("spec validated");
                monomials.extend_from_slice(level.members());
            }
            (points, monomials)
        }
    };

    let cols = points.len();
    let rows = monomials
        .iter()
        .map(|monomial| {
            let mut row = BitVector::zeros(cols);
            for (j, point) in points.iter().enumerate() {
                if monomial.is_subset_of(point) {
                    row.set(j, true);
                }
            }
            row
        })
        .collect();
    let generator = BitMatrix::from_rows(cols, rows);

    let instance = CodeInstance { spec, points, monomials, generator };
    debug_assert_eq!(instance.generator.n_rows() as u64, spec.dimension());
    debug_assert_eq!(instance.generator.n_cols() as u64, spec.block_length());
    instance
}

impl CodeInstance {
    pub fn spec(&self) -> CodeSpec {
        self.spec
    }

    pub fn points(&self) -> &[SubsetMask] {
        &self.points
    }

    pub fn monomials(&self) -> &[SubsetMask] {
        &self.monomials
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn dimension(&self) -> usize {
        self.generator.n_rows()
    }

    pub fn block_length(&self) -> usize {
        self.generator.n_cols()
    }

    /// Plain-text export: a header line "family r m rows cols" followed by
    /// one row of '0'/'1' characters per generator row. Bit-exact across
    /// platforms given the fixed orderings above.
    pub fn export_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {} {}\n",
            self.spec.family,
            self.spec.r,
            self.spec.m,
            self.generator.n_rows(),
            self.generator.n_cols()
        );
        for row in self.generator.rows() {
            for j in 0..row.len() {
                out.push(if row.get(j) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

/// Support size of the subcode spanned by the monomial rows named in `family`
/// (a family of r-subsets). Computed two independent ways, as the union of
/// the named generator rows and as the size of the upward shadow of the
/// family, and asserted equal.
///
/// # Panics
/// Panics if the two routes disagree, which would mean the generator
/// construction and the subset machinery are inconsistent.
pub fn monomial_support_size(code: &CodeInstance, family: &SubsetFamily) -> Result<u64> {
    assert_eq!(
        code.spec().family,
        CodeFamily::Prm,
        "monomial subcode supports are defined for the projective code"
    );
    if family.m() != code.spec().m {
        return Err(Error::MismatchedGroundSet(family.m(), code.spec().m));
    }
    let row_index: HashMap<u64, usize> = code
        .monomials
        .iter()
        .enumerate()
        .map(|(i, monomial)| (monomial.mask(), i))
        .collect();

    let mut support = BitVector::zeros(code.block_length());
    for member in family.iter() {
        if member.card() != code.spec().r {
            return Err(Error::NotUniformSubset {
                member: member.to_string(),
                size: code.spec().r,
            });
        }
        let row = row_index[&member.mask()];
        support.or_assign(code.generator.row(row));
    }
    let via_rows = support.weight() as u64;

    let via_shadow = if family.is_empty() {
        0
    } else {
        crate::subsets::upward_shadow(family).len() as u64
    };
    assert_eq!(
        via_rows, via_shadow,
        "generator row union and upward shadow disagree"
    );
    Ok(via_rows)
}
