//! The tropical simplex driver: repeatedly compute reduced costs, pick a
//! tropically negative one by the pivoting rule, and pivot, until all
//! reduced costs are tropically non-negative.
//!
//! Finding an initial feasible basic point is out of scope; callers supply
//! one (the CLI can fall back to enumeration on small instances).

use std::collections::HashSet;

use thiserror::Error;

use crate::cramer::{self, CramerError};
use crate::instance::{Basis, Instance, InstanceError};
use crate::pivot::{self, PivotError, PivotTrace};
use crate::semiring::{Rat, Sign, SignedTrop, Trop};
use crate::tangent::{self, TangentError};

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid start: {0}")]
    InvalidStart(String),
    #[error("degenerate structure at the starting point: {0}")]
    DegenerateStart(TangentError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Pivot(#[from] PivotError),
    #[error("dual degeneracy while computing reduced costs: {0}")]
    DualDegenerate(CramerError),
    #[error("degenerate input: basis {0} repeats along the run")]
    BasisRepeats(Basis),
}

/// Rule for choosing the leaving index among tropically negative reduced
/// costs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Smallest row index.
    #[default]
    Bland,
    /// Largest modulus, ties by smallest row index.
    MostNegative,
}

impl PivotRule {
    /// Picks the leaving row among the basis rows whose reduced cost is
    /// tropically negative. `costs` is indexed like `basis.rows()`.
    pub fn pick(&self, basis: &Basis, costs: &[SignedTrop]) -> Option<usize> {
        let negatives = basis
            .rows()
            .iter()
            .zip(costs)
            .filter(|(_, y)| y.sign() == Sign::Neg);
        match self {
            PivotRule::Bland => negatives.map(|(&r, _)| r).min(),
            PivotRule::MostNegative => negatives
                .max_by(|(ra, ya), (rb, yb)| {
                    ya.modulus().cmp(&yb.modulus()).then(rb.cmp(ra))
                })
                .map(|(&r, _)| r),
        }
    }
}

impl std::str::FromStr for PivotRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bland" => Ok(PivotRule::Bland),
            "most-negative" => Ok(PivotRule::MostNegative),
            other => Err(format!("unknown pivot rule {other:?} (expected bland|most-negative)")),
        }
    }
}

/// One iteration of the run: the basic point visited, its reduced costs, and
/// the pivot taken from it (absent on the terminal iteration).
#[derive(Debug, Clone)]
pub struct Iteration {
    pub basis: Basis,
    pub point: Vec<Rat>,
    pub reduced_costs: Vec<SignedTrop>,
    pub leaving: Option<usize>,
    pub pivot: Option<PivotTrace>,
}

#[derive(Debug, Clone)]
pub struct RunTrace {
    pub iterations: Vec<Iteration>,
    pub objective: Trop,
}

impl RunTrace {
    pub fn terminal(&self) -> &Iteration {
        self.iterations.last().expect("a run has at least one iteration")
    }

    pub fn path_points(&self) -> Vec<Vec<Rat>> {
        self.iterations.iter().map(|it| it.point.clone()).collect()
    }

    pub fn pivots(&self) -> usize {
        self.iterations.iter().filter(|it| it.pivot.is_some()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Optimal,
    /// Rows of the basis whose edge improves the objective (tropically
    /// negative reduced cost), ascending.
    ImprovableVia(Vec<usize>),
}

fn validate_start(inst: &Instance, basis: &Basis, x: &[Rat]) -> Result<(), SolveError> {
    inst.validate_basis(basis)?;
    if x.len() != inst.n() {
        return Err(SolveError::InvalidStart(format!(
            "point has {} coordinates, expected {}",
            x.len(),
            inst.n()
        )));
    }
    if !inst.feasible_rat(x) {
        return Err(SolveError::InvalidStart("starting point is infeasible".into()));
    }
    let h = inst.homogenize();
    let mut proj = x.to_vec();
    proj.push(Rat::from_integer(0.into()));
    let g = tangent::build_at_rat(&h, &proj).map_err(|e: TangentError| match e {
        TangentError::CyclicGraph => SolveError::DegenerateStart(e),
        other => SolveError::InvalidStart(format!("tangent digraph rejected the start: {other}")),
    })?;
    if g.hyperplane_rows() != basis.rows() {
        return Err(SolveError::InvalidStart(format!(
            "tight rows {:?} differ from the basis {basis}",
            g.hyperplane_rows()
        )));
    }
    g.matching_permutation()
        .map_err(|e| SolveError::InvalidStart(format!("not a basic point: {e}")))?;
    Ok(())
}

/// Runs the tropical simplex from the feasible basic point `x0` of `basis0`.
/// Terminates with the basic point whose reduced costs are all tropically
/// non-negative, which minimizes `c ⊙ x` over the feasible set.
pub fn solve(
    inst: &Instance,
    basis0: &Basis,
    x0: &[Rat],
    rule: PivotRule,
) -> Result<RunTrace, SolveError> {
    solve_inner(inst, basis0, x0, rule, false)
}

/// Like [`solve`], with from-scratch auditing of every pivot's incremental
/// state.
pub fn solve_audited(
    inst: &Instance,
    basis0: &Basis,
    x0: &[Rat],
    rule: PivotRule,
) -> Result<RunTrace, SolveError> {
    solve_inner(inst, basis0, x0, rule, true)
}

fn solve_inner(
    inst: &Instance,
    basis0: &Basis,
    x0: &[Rat],
    rule: PivotRule,
    audit: bool,
) -> Result<RunTrace, SolveError> {
    validate_start(inst, basis0, x0)?;
    let w = inst.homogenize();
    let mut basis = basis0.clone();
    let mut x = x0.to_vec();
    let mut seen: HashSet<Basis> = HashSet::new();
    let mut iterations = Vec::new();
    loop {
        if !seen.insert(basis.clone()) {
            return Err(SolveError::BasisRepeats(basis));
        }
        let costs = cramer::reduced_costs(inst, &basis, &x).map_err(SolveError::DualDegenerate)?;
        let leaving = rule.pick(&basis, &costs);
        match leaving {
            None => {
                iterations.push(Iteration {
                    basis: basis.clone(),
                    point: x.clone(),
                    reduced_costs: costs,
                    leaving: None,
                    pivot: None,
                });
                let objective = inst.objective_at_rat(&x);
                return Ok(RunTrace { iterations, objective });
            }
            Some(i_lv) => {
                let (next_basis, next_x, trace) = if audit {
                    pivot::pivot_audited(&w, &basis, &x, i_lv)?
                } else {
                    pivot::pivot(&w, &basis, &x, i_lv)?
                };
                iterations.push(Iteration {
                    basis: basis.clone(),
                    point: x.clone(),
                    reduced_costs: costs,
                    leaving: Some(i_lv),
                    pivot: Some(trace),
                });
                basis = next_basis;
                x = next_x;
            }
        }
    }
}

/// Optimality certificate for a basic point: optimal iff no reduced cost is
/// tropically negative.
pub fn certify(inst: &Instance, basis: &Basis, x: &[Rat]) -> Result<Certificate, SolveError> {
    validate_start(inst, basis, x)?;
    let costs = cramer::reduced_costs(inst, basis, x).map_err(SolveError::DualDegenerate)?;
    let improving: Vec<usize> = basis
        .rows()
        .iter()
        .zip(&costs)
        .filter(|(_, y)| y.sign() == Sign::Neg)
        .map(|(&r, _)| r)
        .collect();
    Ok(if improving.is_empty() {
        Certificate::Optimal
    } else {
        Certificate::ImprovableVia(improving)
    })
}

/// Computes the basic point of `basis` by solving `A_I ⊙ x ∇ ⊖b_I` and
/// checking that the solution is positive and feasible.
pub fn basic_point(inst: &Instance, basis: &Basis) -> Result<Vec<Rat>, SolveError> {
    inst.validate_basis(basis)?;
    let n = inst.n();
    let sub = inst.a.submatrix(basis.rows(), &(0..n).collect::<Vec<_>>());
    let d: Vec<SignedTrop> = basis.rows().iter().map(|&i| inst.b[i].reflect()).collect();
    let y = cramer::cramer_solve(&sub, &d).map_err(|e| {
        SolveError::InvalidStart(format!("basis {basis} has no basic point: {e}"))
    })?;
    let mut x = Vec::with_capacity(n);
    for (j, v) in y.iter().enumerate() {
        match v {
            SignedTrop::Pos(r) => x.push(r.clone()),
            other => {
                return Err(SolveError::InvalidStart(format!(
                    "basis {basis}: coordinate {j} of the candidate point is {other}, not positive"
                )))
            }
        }
    }
    if !inst.feasible_rat(&x) {
        return Err(SolveError::InvalidStart(format!(
            "basis {basis}: candidate basic point is infeasible"
        )));
    }
    Ok(x)
}
