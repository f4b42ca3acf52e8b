//! Independent verification oracles.
//!
//! The solver's results are checked two ways: a classical simplex method run
//! with exact arithmetic over the ordered field of generalized Puiseux
//! fractions on an explicit lift of the instance, and a brute-force
//! enumeration of all feasible tropical basic points.

pub mod puiseux;

use thiserror::Error;

use crate::cramer;
use crate::instance::{Basis, Instance};
use crate::linalg::combinations;
use crate::semiring::{rat, Rat, SignedTrop, Trop};

pub use puiseux::{DivisionByZero, GenPoly, PuiseuxNum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    DivisionByZero(#[from] DivisionByZero),
    #[error("positivity assumption violated: variables {0:?} have no non-negativity row and none was attested")]
    AssumptionCViolated(Vec<usize>),
    #[error("degenerate lift: {0}")]
    DegenerateLift(String),
    #[error("the lifted linear program is unbounded")]
    UnboundedLift,
    #[error("enumeration over {candidates} bases exceeds the bound {bound}")]
    TooLarge { candidates: u128, bound: u128 },
}

/// A linear program over the Puiseux field: minimize `c · x` subject to
/// `A x + b >= 0`.
#[derive(Debug, Clone)]
pub struct PuiseuxLp {
    pub a: Vec<Vec<PuiseuxNum>>,
    pub b: Vec<PuiseuxNum>,
    pub c: Vec<PuiseuxNum>,
    /// The coefficient applied to positive-side lifts when the program was
    /// produced by [`lift`].
    pub alpha: Rat,
}

impl PuiseuxLp {
    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    fn row_value(&self, i: usize, x: &[PuiseuxNum]) -> PuiseuxNum {
        let mut acc = self.b[i].clone();
        for j in 0..self.n() {
            acc = acc.add(&self.a[i][j].mul(&x[j]));
        }
        acc
    }

    pub fn feasible(&self, x: &[PuiseuxNum]) -> bool {
        (0..self.m()).all(|i| !self.row_value(i, x).is_negative())
    }

    pub fn objective(&self, x: &[PuiseuxNum]) -> PuiseuxNum {
        let mut acc = PuiseuxNum::zero();
        for j in 0..self.n() {
            acc = acc.add(&self.c[j].mul(&x[j]));
        }
        acc
    }
}

/// Lifts a tropical instance to the Puiseux field: a positive entry of
/// modulus `v` becomes `α t^{-v}`, a negative one `-t^{-v}`, a null one `0`,
/// and the cost `c_j` becomes `t^{-c_j}`, with `α = n + 2`. The valuation of
/// the lifted feasible set is then exactly the tropical feasible set.
pub fn lift(inst: &Instance) -> Result<PuiseuxLp, OracleError> {
    if !inst.positivity_ok() {
        return Err(OracleError::AssumptionCViolated(inst.vars_missing_unit_row()));
    }
    let alpha = rat((inst.n() + 2) as i64);
    let lift_entry = |e: &SignedTrop| -> PuiseuxNum {
        match e {
            SignedTrop::Zero => PuiseuxNum::zero(),
            SignedTrop::Pos(v) => PuiseuxNum::monomial(alpha.clone(), -v),
            SignedTrop::Neg(v) => PuiseuxNum::monomial(rat(-1), -v),
        }
    };
    let a = (0..inst.m())
        .map(|i| (0..inst.n()).map(|j| lift_entry(inst.a.get(i, j))).collect())
        .collect();
    let b = inst.b.iter().map(lift_entry).collect();
    let c = inst
        .c
        .iter()
        .map(|t| match t.as_rat() {
            None => PuiseuxNum::zero(),
            Some(v) => PuiseuxNum::t_pow(-v),
        })
        .collect();
    Ok(PuiseuxLp { a, b, c, alpha })
}

/// Gaussian elimination over the Puiseux fraction field. Returns `None` when
/// the matrix is singular.
fn gauss_solve(a: &[Vec<PuiseuxNum>], rhs: &[PuiseuxNum]) -> Option<Vec<PuiseuxNum>> {
    let n = rhs.len();
    let mut m: Vec<Vec<PuiseuxNum>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = PuiseuxNum::one().div(&m[col][col]).ok()?;
        for c in col..=n {
            m[col][c] = m[col][c].mul(&inv);
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    m[r][c] = m[r][c].sub(&factor.mul(&m[col][c]));
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// One visited basic point of the classical simplex run.
#[derive(Debug, Clone)]
pub struct OracleStep {
    pub basis: Basis,
    pub point: Vec<PuiseuxNum>,
    /// Reduced costs indexed like `basis.rows()`.
    pub reduced_costs: Vec<PuiseuxNum>,
    pub leaving: Option<usize>,
    pub step_length: Option<PuiseuxNum>,
    pub entering: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct OracleRun {
    pub steps: Vec<OracleStep>,
    pub objective: PuiseuxNum,
}

impl OracleRun {
    pub fn terminal(&self) -> &OracleStep {
        self.steps.last().expect("a run has at least one step")
    }
}

/// Basic point of `basis` in the lifted polyhedron: the unique solution of
/// `A_I x = -b_I`.
pub fn lifted_basic_point(lp: &PuiseuxLp, basis: &Basis) -> Result<Vec<PuiseuxNum>, OracleError> {
    let rows: Vec<Vec<PuiseuxNum>> = basis.rows().iter().map(|&i| lp.a[i].clone()).collect();
    let rhs: Vec<PuiseuxNum> = basis.rows().iter().map(|&i| lp.b[i].neg()).collect();
    gauss_solve(&rows, &rhs)
        .ok_or_else(|| OracleError::DegenerateLift(format!("A_{basis} is singular")))
}

/// The classical simplex method over the Puiseux field with Bland's rule
/// (smallest row index among negative reduced costs). Exact throughout:
/// basic points by Gaussian elimination, directions from `A_I d = e_k`,
/// step lengths by the minimum-ratio rule.
pub fn classical_simplex(lp: &PuiseuxLp, basis0: &Basis) -> Result<OracleRun, OracleError> {
    let n = lp.n();
    assert_eq!(basis0.len(), n, "basis must have n rows");
    let mut basis = basis0.clone();
    let mut x = lifted_basic_point(lp, &basis)?;
    if !lp.feasible(&x) {
        return Err(OracleError::DegenerateLift(format!(
            "basic point of {basis} is infeasible"
        )));
    }
    let mut steps: Vec<OracleStep> = Vec::new();
    let mut visited = std::collections::HashSet::new();
    loop {
        if !visited.insert(basis.clone()) {
            return Err(OracleError::DegenerateLift(format!("basis {basis} repeats")));
        }
        let at: Vec<Vec<PuiseuxNum>> = (0..n)
            .map(|j| basis.rows().iter().map(|&i| lp.a[i][j].clone()).collect())
            .collect();
        let y = gauss_solve(&at, &lp.c)
            .ok_or_else(|| OracleError::DegenerateLift(format!("A_{basis}ᵀ is singular")))?;
        let leaving = basis
            .rows()
            .iter()
            .zip(&y)
            .find(|(_, yk)| yk.is_negative())
            .map(|(&r, _)| r);
        let Some(k) = leaving else {
            steps.push(OracleStep {
                basis: basis.clone(),
                point: x.clone(),
                reduced_costs: y,
                leaving: None,
                step_length: None,
                entering: None,
            });
            let objective = lp.objective(&x);
            return Ok(OracleRun { steps, objective });
        };
        // direction: A_I d = e_k
        let pos = basis.rows().iter().position(|&r| r == k).expect("k is in the basis");
        let unit: Vec<PuiseuxNum> = (0..n)
            .map(|i| if i == pos { PuiseuxNum::one() } else { PuiseuxNum::zero() })
            .collect();
        let a_rows: Vec<Vec<PuiseuxNum>> = basis.rows().iter().map(|&i| lp.a[i].clone()).collect();
        let d = gauss_solve(&a_rows, &unit)
            .ok_or_else(|| OracleError::DegenerateLift(format!("A_{basis} is singular")))?;
        // ratio rule over rows leaving the feasible side
        let mut best: Option<(PuiseuxNum, usize)> = None;
        let mut ties = 0usize;
        for i in 0..lp.m() {
            if basis.contains(i) {
                continue;
            }
            let slope: PuiseuxNum = {
                let mut acc = PuiseuxNum::zero();
                for j in 0..n {
                    acc = acc.add(&lp.a[i][j].mul(&d[j]));
                }
                acc
            };
            if !slope.is_negative() {
                continue;
            }
            let ratio = lp.row_value(i, &x).div(&slope.neg())?;
            match &best {
                Some((b, _)) if ratio > *b => {}
                Some((b, _)) if ratio == *b => ties += 1,
                _ => {
                    best = Some((ratio, i));
                    ties = 1;
                }
            }
        }
        let Some((mu, entering)) = best else {
            return Err(OracleError::UnboundedLift);
        };
        if ties > 1 {
            return Err(OracleError::DegenerateLift(format!(
                "ratio rule tie below basis {basis}"
            )));
        }
        if mu.is_zero() {
            return Err(OracleError::DegenerateLift("zero-length edge".into()));
        }
        let next_x: Vec<PuiseuxNum> =
            (0..n).map(|j| x[j].add(&mu.mul(&d[j]))).collect();
        steps.push(OracleStep {
            basis: basis.clone(),
            point: x,
            reduced_costs: y,
            leaving: Some(k),
            step_length: Some(mu),
            entering: Some(entering),
        });
        basis = basis.replacing(k, entering);
        x = next_x;
    }
}

/// A feasible tropical basic point found by enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicPointRecord {
    pub basis: Basis,
    pub point: Vec<Rat>,
    pub objective: Trop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// All feasible basic points, sorted by basis.
    pub points: Vec<BasicPointRecord>,
    pub min_objective: Option<Trop>,
}

impl Enumeration {
    pub fn argmin(&self) -> Option<&BasicPointRecord> {
        self.points.iter().min_by(|a, b| a.objective.cmp(&b.objective))
    }

    pub fn argmax(&self) -> Option<&BasicPointRecord> {
        self.points.iter().max_by(|a, b| a.objective.cmp(&b.objective))
    }
}

fn binomial(m: usize, n: usize) -> u128 {
    if n > m {
        return 0;
    }
    let mut acc: u128 = 1;
    for k in 0..n.min(m - n) {
        acc = acc.saturating_mul((m - k) as u128) / (k as u128 + 1);
    }
    acc
}

pub const DEFAULT_ENUM_BOUND: u128 = 100_000;

/// Enumerates every `n`-subset of rows with a sign-nonsingular submatrix,
/// solves the balance system `A_I ⊙ x ⊕ b_I ∇ 0` by the signed Cramer
/// solver, and keeps positive, feasible solutions: exactly the feasible
/// tropical basic points.
pub fn enumerate_basic_points(
    inst: &Instance,
    max_bases: u128,
) -> Result<Enumeration, OracleError> {
    let candidates = binomial(inst.m(), inst.n());
    if candidates > max_bases {
        return Err(OracleError::TooLarge { candidates, bound: max_bases });
    }
    let n = inst.n();
    let cols: Vec<usize> = (0..n).collect();
    let mut points = Vec::new();
    for rows in combinations(inst.m(), n) {
        let sub = inst.a.submatrix(&rows, &cols);
        let d: Vec<SignedTrop> = rows.iter().map(|&i| inst.b[i].reflect()).collect();
        let Ok(y) = cramer::cramer_solve(&sub, &d) else {
            continue;
        };
        let mut x: Vec<Rat> = Vec::with_capacity(n);
        let mut positive = true;
        for v in &y {
            match v {
                SignedTrop::Pos(r) => x.push(r.clone()),
                _ => {
                    positive = false;
                    break;
                }
            }
        }
        if !positive || !inst.feasible_rat(&x) {
            continue;
        }
        let objective = inst.objective_at_rat(&x);
        points.push(BasicPointRecord {
            basis: Basis::new(rows).expect("combination indices are distinct"),
            point: x,
            objective,
        });
    }
    let min_objective = points.iter().map(|p| p.objective.clone()).min();
    Ok(Enumeration { points, min_objective })
}
