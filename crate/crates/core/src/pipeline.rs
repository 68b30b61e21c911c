//! End-to-end computations combining the individual modules.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::FGAbGroup;
use crate::complex::{CohomologyResult, ComplexError, FreeCochainComplex};
use crate::coxeter::{self, CoxeterError, CoxeterGroup, CoxeterSystem, GroupChecks};
use crate::functor::{CoefFunctor, FunctorError};
use crate::global::{self, GlobalCoveringFamily, GlobalError, GlobalViolation, InequalityReport};
use crate::morse::{self, MorseClassification, MorseError, MorseFunction};
use crate::poset::GradedPoset;
use crate::sequence::{FunctorSequence, SequenceError};
use crate::simplex::{self, LocalCoveringFamily, SimplexCertificate, SimplexError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Global(#[from] GlobalError),
    #[error(transparent)]
    Morse(#[from] MorseError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// How cohomology with constant integer coefficients is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Cochain complex of the functor sequence built from a local covering family.
    Sequence,
    /// Signed face-incidence complex of a simplex-like poset.
    Simplicial,
    /// Higher limits of the constant functor over the chain complex of the poset.
    Oracle,
}

/// Certificate and the standard local covering family of a simplex-like poset.
pub fn simplex_like_family(
    poset: &GradedPoset,
    vertex_order: Option<&[String]>,
) -> Result<(SimplexCertificate, LocalCoveringFamily), PipelineError> {
    let cert = simplex::certify(poset, vertex_order)?;
    let j = simplex::local_family(poset, &cert);
    Ok((cert, j))
}

/// The functor sequence for constant `Z` coefficients, its full complex and cohomology.
pub fn sequence_cohomology(
    poset: Arc<GradedPoset>,
    j: LocalCoveringFamily,
) -> Result<(FunctorSequence, FreeCochainComplex, CohomologyResult), PipelineError> {
    let seq = FunctorSequence::build(poset, j)?;
    let complex = seq.full_complex()?;
    let h = complex.cohomology()?;
    Ok((seq, complex, h))
}

pub fn simplicial_cohomology(
    poset: &GradedPoset,
    cert: &SimplexCertificate,
) -> Result<CohomologyResult, PipelineError> {
    Ok(simplex::simplicial_differential(poset, cert).cohomology()?)
}

/// Cohomology of the order complex through higher limits of the constant functor.
pub fn oracle_cohomology(poset: Arc<GradedPoset>, chain_cap: usize) -> Result<CohomologyResult, PipelineError> {
    let top = poset.max_degree().unwrap_or(0);
    let f = CoefFunctor::constant(poset, &FGAbGroup::free(1));
    let groups = f.higher_limits_oracle(top, chain_cap)?;
    Ok(CohomologyResult { groups })
}

/// Everything computed from a pair of local and global covering families.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub sequence: FunctorSequence,
    pub full: FreeCochainComplex,
    pub full_cohomology: CohomologyResult,
    pub violations: Vec<GlobalViolation>,
    pub family_betti: Vec<i64>,
    /// Present when the global family is valid.
    pub reduced: Option<global::ReducedComplex>,
    pub reduced_cohomology: Option<CohomologyResult>,
    pub inequalities: Option<InequalityReport>,
}

pub fn reduce(
    poset: Arc<GradedPoset>,
    j: LocalCoveringFamily,
    k: &GlobalCoveringFamily,
) -> Result<Reduction, PipelineError> {
    let (sequence, full, full_cohomology) = sequence_cohomology(poset.clone(), j)?;
    let violations = global::check_global(&sequence, &full, k)?;
    let family_betti = global::family_betti(&poset, &simplex::r_values(&poset), k);
    let (reduced, reduced_cohomology, inequalities) = if violations.is_empty() {
        let r = global::reduced_complex(&sequence, &full, k)?;
        let h = r.complex.cohomology()?;
        let ineq = global::morse_inequalities(&full_cohomology.betti(), &family_betti);
        (Some(r), Some(h), Some(ineq))
    } else {
        (None, None, None)
    };
    Ok(Reduction {
        sequence,
        full,
        full_cohomology,
        violations,
        family_betti,
        reduced,
        reduced_cohomology,
        inequalities,
    })
}

/// Morse classification, the induced family and its reduction.
#[derive(Clone, Debug)]
pub struct MorseRun {
    pub function: MorseFunction,
    pub classification: MorseClassification,
    pub family: GlobalCoveringFamily,
    pub reduction: Reduction,
    pub simplicial: CohomologyResult,
}

pub fn morse_run(function: MorseFunction) -> Result<MorseRun, PipelineError> {
    let classification = morse::classify(&function)?;
    let family = morse::family_from_morse(&classification);
    let poset = function.poset().clone();
    let (cert, j) = simplex_like_family(&poset, None)?;
    let simplicial = simplicial_cohomology(&poset, &cert)?;
    let reduction = reduce(poset, j, &family)?;
    Ok(MorseRun { function, classification, family, reduction, simplicial })
}

/// The Coxeter complex of a finite system with its covering family and checks.
#[derive(Clone, Debug)]
pub struct CoxeterRun {
    pub group: CoxeterGroup,
    pub complex: coxeter::CoxeterComplex,
    pub family: GlobalCoveringFamily,
    pub group_checks: GroupChecks,
    pub bijection_failures: Vec<coxeter::BijectionFailure>,
    pub reduction: Reduction,
}

pub fn coxeter_run(system: &CoxeterSystem, cap: usize) -> Result<CoxeterRun, PipelineError> {
    let group = coxeter::enumerate(system, cap)?;
    let complex = coxeter::coxeter_complex(&group, cap)?;
    let family = coxeter::coxeter_family(&group, &complex);
    let group_checks = coxeter::check_group(&group);
    let bijection_failures = coxeter::per_representative_counts(&group, &complex, &family);
    let j = simplex::local_family(&complex.poset, &complex.certificate);
    let reduction = reduce(complex.poset.clone(), j, &family)?;
    Ok(CoxeterRun { group, complex, family, group_checks, bijection_failures, reduction })
}

/// Cohomology of `S^d`: `Z` in degrees 0 and `d` (`Z^2` in degree 0 when `d = 0`).
pub fn sphere_cohomology(d: usize) -> CohomologyResult {
    use crate::abelian::GroupStructure;
    let mut groups = vec![GroupStructure::free(0); d + 1];
    groups[0] = GroupStructure::free(1);
    groups[d].free_rank += 1;
    CohomologyResult { groups }
}
