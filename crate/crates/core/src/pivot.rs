//! Pivoting between tropical basic points along a tropical edge.
//!
//! An edge `E_K` is a concatenation of at most `n` ordinary segments with
//! strictly growing direction sets. A pivot starts at a basic point, walks
//! segment by segment, and maintains the tangent digraph, the candidate
//! sets `E` (rows that may enter) and `B` (rows that may break the current
//! segment) and the step bounds `λ±` incrementally, so that one full pivot
//! costs O(n(m + n)).

use num_traits::Zero;
use thiserror::Error;

use crate::instance::{to_chart, Basis, Homogenized};
use crate::semiring::Rat;
use crate::tangent::{self, Arc, Classification, CoordSet, Orientation, TangentDigraph, TangentError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PivotError {
    #[error(transparent)]
    Tangent(#[from] TangentError),
    #[error("invalid pivot start: {0}")]
    InvalidStart(String),
    #[error("degenerate input: {detail}")]
    Degenerate { detail: String, partial: PartialTrace },
    #[error("input is not standard: {0}")]
    NotStandard(String),
    #[error("tangent digraph update broke the edge shape: {0}")]
    ShapeViolation(String),
    #[error("incremental state diverged from the from-scratch recomputation: {0}")]
    AuditMismatch(String),
}

/// Step bound along a segment; `PlusInf` encodes `-(-inf)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum StepLength {
    Finite(Rat),
    PlusInf,
}

impl StepLength {
    pub fn is_finite(&self) -> bool {
        matches!(self, StepLength::Finite(_))
    }

    fn minus(&self, mu: &Rat) -> StepLength {
        match self {
            StepLength::Finite(r) => StepLength::Finite(r - mu),
            StepLength::PlusInf => StepLength::PlusInf,
        }
    }
}

impl std::fmt::Display for StepLength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StepLength::Finite(r) => write!(f, "{r}"),
            StepLength::PlusInf => write!(f, "+inf"),
        }
    }
}

/// Which bound of the breaking row was attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreakSide {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cause {
    /// A row of `K` acquired a new tangent arc: the endpoint is a breakpoint.
    BreakAt { row: usize, side: BreakSide },
    /// A row outside `K` became tight: the endpoint is a basic point.
    EnterAt { row: usize },
}

/// One traversed ordinary segment: start point (chart-normalized), direction
/// set, length and the event ending it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub start: Vec<Rat>,
    pub direction: CoordSet,
    pub length: Rat,
    pub cause: Cause,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PivotStats {
    /// Primitive-operation count: matrix-entry visits, comparisons and
    /// digraph node visits performed by the pivot.
    pub primitive_ops: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotTrace {
    pub leaving: usize,
    pub entering: usize,
    pub segments: Vec<Segment>,
    /// Chart-normalized intermediate breakpoints.
    pub breakpoints: Vec<Vec<Rat>>,
    /// Chart-normalized projective endpoint.
    pub endpoint: Vec<Rat>,
    pub stats: PivotStats,
}

/// The walked prefix carried inside degeneracy errors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialTrace {
    pub leaving: Option<usize>,
    pub segments: Vec<Segment>,
    pub breakpoints: Vec<Vec<Rat>>,
}

/// Membership oracle: is `j` in `argmax(W_i⁺ ⊙ ξ)`? Built once per pivot at
/// the starting basic point; valid for every row that is still a candidate
/// in `E` at any later segment.
struct Omega {
    coords: usize,
    bits: Vec<bool>,
}

impl Omega {
    fn is_argmax(&self, row: usize, coord: usize) -> bool {
        self.bits[row * self.coords + coord]
    }
}

/// State of the traversal while inside one ordinary segment.
pub struct SegmentState<'a> {
    w: &'a Homogenized,
    k: Vec<usize>,
    in_k: Vec<bool>,
    /// Working projective coordinates of the segment start ξ.
    point: Vec<Rat>,
    /// Direction set J of the current segment.
    j: CoordSet,
    /// Tangent digraph in the open segment.
    digraph: TangentDigraph,
    in_entering: Vec<bool>,
    in_break: Vec<bool>,
    /// Cached `W_i⁺ ⊙ ξ` for rows in `E ∪ B`.
    wplus: Vec<Option<Rat>>,
    lambda_plus: Vec<Option<StepLength>>,
    lambda_minus: Vec<Option<StepLength>>,
    omega: Omega,
    ops: u64,
}

fn pos_entry_plus(w: &Homogenized, i: usize, j: usize, x: &[Rat]) -> Option<Rat> {
    w.w.get(i, j).pos_part().as_rat().map(|m| m + &x[j])
}

fn neg_entry_plus(w: &Homogenized, i: usize, j: usize, x: &[Rat]) -> Option<Rat> {
    w.w.get(i, j).neg_part().as_rat().map(|m| m + &x[j])
}

fn abs_entry_plus(w: &Homogenized, i: usize, j: usize, x: &[Rat]) -> Option<Rat> {
    w.w.get(i, j).modulus().as_rat().map(|m| m + &x[j])
}

/// `(W_i⁺ ⊙ ξ) - max_{j ∈ J}(entry_ij + ξ_j)` with `-(-inf) = +inf`.
fn lambda_against(
    wplus: &Rat,
    w: &Homogenized,
    i: usize,
    members: &[usize],
    x: &[Rat],
    negative_side: bool,
    ops: &mut u64,
) -> StepLength {
    let mut best: Option<Rat> = None;
    for &j in members {
        *ops += 1;
        let v = if negative_side {
            neg_entry_plus(w, i, j, x)
        } else {
            pos_entry_plus(w, i, j, x)
        };
        if let Some(v) = v {
            if best.as_ref().map_or(true, |b| v > *b) {
                best = Some(v);
            }
        }
    }
    match best {
        Some(b) => StepLength::Finite(wplus - &b),
        None => StepLength::PlusInf,
    }
}

/// Definitional computation of `E`, `B`, the cached row values and the step
/// bounds at `(ξ, J)`. Used to seed the first segment and as the
/// from-scratch reference in audited pivots.
struct ScratchSets {
    in_entering: Vec<bool>,
    in_break: Vec<bool>,
    wplus: Vec<Option<Rat>>,
    lambda_plus: Vec<Option<StepLength>>,
    lambda_minus: Vec<Option<StepLength>>,
}

fn sets_from_scratch(
    w: &Homogenized,
    in_k: &[bool],
    x: &[Rat],
    j: &CoordSet,
    ops: &mut u64,
) -> ScratchSets {
    let m = w.m();
    let members = j.members();
    let mut sets = ScratchSets {
        in_entering: vec![false; m],
        in_break: vec![false; m],
        wplus: vec![None; m],
        lambda_plus: vec![None; m],
        lambda_minus: vec![None; m],
    };
    for i in 0..m {
        let mut pos_best: Option<Rat> = None;
        let mut neg_best: Option<Rat> = None;
        for c in 0..w.coords() {
            *ops += 1;
            if let Some(v) = pos_entry_plus(w, i, c, x) {
                if pos_best.as_ref().map_or(true, |b| v > *b) {
                    pos_best = Some(v);
                }
            }
            if let Some(v) = neg_entry_plus(w, i, c, x) {
                if neg_best.as_ref().map_or(true, |b| v > *b) {
                    neg_best = Some(v);
                }
            }
        }
        let pos_best = match pos_best {
            Some(v) => v,
            None => continue, // row with empty positive side cannot constrain growth
        };
        let argmax_pos_in_j = (0..w.coords()).any(|c| {
            j.contains(c) && pos_entry_plus(w, i, c, x).as_ref() == Some(&pos_best)
        });
        let argmax_neg_in_j = match &neg_best {
            Some(nb) => (0..w.coords())
                .any(|c| j.contains(c) && neg_entry_plus(w, i, c, x).as_ref() == Some(nb)),
            None => false,
        };
        let member = if in_k[i] {
            if !argmax_pos_in_j && !argmax_neg_in_j {
                sets.in_break[i] = true;
                true
            } else {
                false
            }
        } else if !argmax_pos_in_j {
            sets.in_entering[i] = true;
            true
        } else {
            false
        };
        if member {
            sets.lambda_plus[i] =
                Some(lambda_against(&pos_best, w, i, &members, x, false, ops));
            sets.lambda_minus[i] =
                Some(lambda_against(&pos_best, w, i, &members, x, true, ops));
            sets.wplus[i] = Some(pos_best);
        }
    }
    sets
}

impl<'a> SegmentState<'a> {
    /// Builds the state of the first ordinary segment of the edge
    /// `E_{basis \ {i_lv}}` at the basic point with affine coordinates `x`.
    pub fn at_basic_point(
        w: &'a Homogenized,
        basis: &Basis,
        x_affine: &[Rat],
        i_lv: usize,
    ) -> Result<Self, PivotError> {
        if !basis.contains(i_lv) {
            return Err(PivotError::InvalidStart(format!(
                "leaving row {i_lv} is not in the basis {basis}"
            )));
        }
        assert_eq!(x_affine.len(), w.n());
        let mut x = x_affine.to_vec();
        x.push(Rat::zero());
        let x = &x[..];
        let mut ops = 0u64;
        let g = tangent::build_at_rat(w, x)?;
        ops += (w.m() * w.coords()) as u64;
        if g.hyperplane_rows() != basis.rows() {
            return Err(PivotError::InvalidStart(format!(
                "tight rows {:?} differ from the basis {basis}",
                g.hyperplane_rows()
            )));
        }
        let k = basis.without(i_lv);
        match g.classify(&k)? {
            Classification::BasicPoint { extra } if extra == i_lv => {}
            other => {
                return Err(PivotError::InvalidStart(format!(
                    "starting digraph classifies as {other:?}"
                )))
            }
        }
        let j = g.direction_from_basic(i_lv)?;
        let mut digraph = g;
        digraph.remove_row(i_lv);

        let mut in_k = vec![false; w.m()];
        for &r in &k {
            in_k[r] = true;
        }
        let sets = sets_from_scratch(w, &in_k, x, &j, &mut ops);

        // membership oracle over argmax(W_i⁺ ⊙ ξ) at the starting point
        let coords = w.coords();
        let mut bits = vec![false; w.m() * coords];
        for i in 0..w.m() {
            let mut best: Option<Rat> = None;
            for c in 0..coords {
                ops += 1;
                if let Some(v) = pos_entry_plus(w, i, c, x) {
                    if best.as_ref().map_or(true, |b| v > *b) {
                        best = Some(v);
                    }
                }
            }
            if let Some(b) = best {
                for c in 0..coords {
                    bits[i * coords + c] = pos_entry_plus(w, i, c, x).as_ref() == Some(&b);
                }
            }
        }

        Ok(SegmentState {
            w,
            k,
            in_k,
            point: x.to_vec(),
            j,
            digraph,
            in_entering: sets.in_entering,
            in_break: sets.in_break,
            wplus: sets.wplus,
            lambda_plus: sets.lambda_plus,
            lambda_minus: sets.lambda_minus,
            omega: Omega { coords, bits },
            ops,
        })
    }

    pub fn point(&self) -> &[Rat] {
        &self.point
    }

    pub fn direction(&self) -> &CoordSet {
        &self.j
    }

    pub fn digraph(&self) -> &TangentDigraph {
        &self.digraph
    }

    pub fn entering_candidates(&self) -> Vec<usize> {
        (0..self.w.m()).filter(|&i| self.in_entering[i]).collect()
    }

    pub fn break_candidates(&self) -> Vec<usize> {
        (0..self.w.m()).filter(|&i| self.in_break[i]).collect()
    }

    pub fn lambda(&self, i: usize) -> Option<(StepLength, StepLength)> {
        match (&self.lambda_plus[i], &self.lambda_minus[i]) {
            (Some(p), Some(m)) => Some((p.clone(), m.clone())),
            _ => None,
        }
    }

    fn partial(&self) -> PartialTrace {
        PartialTrace::default()
    }

    fn degenerate(&self, detail: String) -> PivotError {
        PivotError::Degenerate { detail, partial: self.partial() }
    }
}

/// The length of the current ordinary segment and the event ending it.
///
/// `μ` is the smallest of `min(λ⁺_k, λ⁻_k)` over break candidates and
/// `λ⁻_i` over entering candidates with `λ⁻_i <= λ⁺_i`; on standard inputs
/// exactly one bound attains it.
pub fn step_length(state: &SegmentState<'_>) -> Result<(Rat, Cause), PivotError> {
    let mut best: Option<(Rat, Cause)> = None;
    let mut attained = 0usize;
    let mut consider = |value: &StepLength, cause: Cause, attained: &mut usize| {
        if let StepLength::Finite(v) = value {
            match &best {
                Some((b, _)) if v > b => {}
                Some((b, _)) if v == b => *attained += 1,
                _ => {
                    best = Some((v.clone(), cause));
                    *attained = 1;
                }
            }
        }
    };
    for i in 0..state.w.m() {
        if state.in_break[i] {
            let (lp, lm) = state.lambda(i).expect("break candidates have cached bounds");
            consider(&lp, Cause::BreakAt { row: i, side: BreakSide::Plus }, &mut attained);
            consider(&lm, Cause::BreakAt { row: i, side: BreakSide::Minus }, &mut attained);
        } else if state.in_entering[i] {
            let (lp, lm) = state.lambda(i).expect("entering candidates have cached bounds");
            if lm <= lp {
                consider(&lm, Cause::EnterAt { row: i }, &mut attained);
            }
        }
    }
    match best {
        None => Err(PivotError::NotStandard(
            "unbounded edge: no finite step bound (the feasible set has points at infinity)".into(),
        )),
        Some((mu, cause)) => {
            if attained > 1 {
                return Err(state.degenerate(format!(
                    "step length {mu} attained by {attained} bounds"
                )));
            }
            if mu.is_zero() {
                return Err(state.degenerate("zero-length segment".into()));
            }
            Ok((mu, cause))
        }
    }
}

/// Outcome of traversing one ordinary segment.
pub enum SegmentOutcome<'a> {
    /// The edge ends: `endpoint` is the basic point of `K ∪ {entering}`.
    Basic { endpoint: Vec<Rat>, entering: usize, ops: u64 },
    /// A breakpoint was passed; the returned state describes the next
    /// segment.
    Continue(Box<SegmentState<'a>>),
}

/// Moves along the current segment to its far endpoint, updating the tangent
/// digraph, the candidate sets and the step bounds incrementally in
/// O(n + m |J' \ J|).
pub fn traverse_segment(
    mut state: SegmentState<'_>,
) -> Result<(Segment, SegmentOutcome<'_>), PivotError> {
    let (mu, cause) = step_length(&state)?;
    let segment = Segment {
        start: to_chart(&state.point),
        direction: state.j.clone(),
        length: mu.clone(),
        cause: cause.clone(),
    };
    let mut endpoint = state.point.clone();
    for c in state.j.members() {
        state.ops += 1;
        endpoint[c] += &mu;
    }

    let (k_row, side) = match cause {
        Cause::EnterAt { row } => {
            let ops = state.ops;
            return Ok((segment, SegmentOutcome::Basic { endpoint, entering: row, ops }));
        }
        Cause::BreakAt { row, side } => (row, side),
    };

    // new arc at the breakpoint: the unique argmax of |W_k| + ξ over J
    let mut ell: Option<usize> = None;
    let mut ell_best: Option<Rat> = None;
    let mut ell_ties = 0usize;
    for c in state.j.members() {
        state.ops += 1;
        if let Some(v) = abs_entry_plus(state.w, k_row, c, &state.point) {
            match &ell_best {
                Some(b) if v < *b => {}
                Some(b) if v == *b => ell_ties += 1,
                _ => {
                    ell_best = Some(v);
                    ell = Some(c);
                    ell_ties = 1;
                }
            }
        }
    }
    let ell = match (ell, ell_ties) {
        (Some(c), 1) => c,
        (Some(_), t) => {
            return Err(state.degenerate(format!("breakpoint arc argmax attained {t} times")))
        }
        (None, _) => {
            return Err(PivotError::ShapeViolation(format!(
                "break row {k_row} has no finite entry on the direction set"
            )))
        }
    };
    let orientation = match side {
        BreakSide::Plus => Orientation::CoordToRow,
        BreakSide::Minus => Orientation::RowToCoord,
    };
    let a_ent = Arc { row: k_row, coord: ell, orientation };
    state.digraph.add_arc(a_ent);
    state.ops += state.w.coords() as u64;

    // leaving arc: the unique other arc at k with the same orientation
    let same_oriented: Vec<usize> = state
        .digraph
        .arcs_of_row(k_row)
        .iter()
        .filter(|&&(c, o)| o == orientation && c != ell)
        .map(|&(c, _)| c)
        .collect();
    let [lv_coord] = same_oriented[..] else {
        return Err(PivotError::ShapeViolation(format!(
            "breakpoint node {k_row} has {} same-oriented arcs besides the new one",
            same_oriented.len()
        )));
    };
    let next_j = state.digraph.direction_from_breakpoint(k_row, (k_row, lv_coord))?;
    state.ops += state.w.coords() as u64;
    if !(state.j.is_subset_of(&next_j) && state.j.len() < next_j.len()) {
        return Err(PivotError::ShapeViolation(format!(
            "direction chain is not strictly increasing: {} then {}",
            state.j, next_j
        )));
    }
    let j_diff = state.j.difference_members(&next_j);

    // B' from the breakpoint digraph: rows of K with no tangent arc into J'
    let mut next_break = vec![false; state.w.m()];
    for &r in &state.k {
        state.ops += 1;
        let arcs = state.digraph.arcs_of_row(r);
        if !arcs.is_empty() && arcs.iter().all(|&(c, _)| !next_j.contains(c)) {
            next_break[r] = true;
        }
    }
    // only rows that were break candidates can remain ones
    for i in 0..state.w.m() {
        if next_break[i] && !state.in_break[i] {
            return Err(PivotError::ShapeViolation(format!(
                "row {i} joined the break set mid-edge"
            )));
        }
    }
    state.digraph.remove_arc(k_row, lv_coord);
    state.ops += state.w.coords() as u64;

    // E' and the λ updates, using the membership oracle over J' \ J
    let mut next_entering = vec![false; state.w.m()];
    for i in 0..state.w.m() {
        if !state.in_entering[i] {
            continue;
        }
        let lp = state.lambda_plus[i].as_ref().expect("cached bound");
        let still = match lp {
            StepLength::Finite(v) => mu < *v,
            StepLength::PlusInf => true,
        };
        let hits_diff = j_diff.iter().any(|&c| {
            state.ops += 1;
            state.omega.is_argmax(i, c)
        });
        if still && !hits_diff {
            next_entering[i] = true;
        }
    }
    for i in 0..state.w.m() {
        if !(next_entering[i] || next_break[i]) {
            state.wplus[i] = None;
            state.lambda_plus[i] = None;
            state.lambda_minus[i] = None;
            continue;
        }
        let wplus = state.wplus[i].clone().expect("candidates keep their cached row value");
        let fresh_plus =
            lambda_against(&wplus, state.w, i, &j_diff, &state.point, false, &mut state.ops);
        let fresh_minus =
            lambda_against(&wplus, state.w, i, &j_diff, &state.point, true, &mut state.ops);
        let old_plus = state.lambda_plus[i].take().expect("cached bound").minus(&mu);
        let old_minus = state.lambda_minus[i].take().expect("cached bound").minus(&mu);
        state.lambda_plus[i] = Some(old_plus.min(fresh_plus));
        state.lambda_minus[i] = Some(old_minus.min(fresh_minus));
    }

    state.point = endpoint;
    state.j = next_j;
    state.in_entering = next_entering;
    state.in_break = next_break;
    Ok((segment, SegmentOutcome::Continue(Box::new(state))))
}

/// Pivots from the basic point `x` of `basis` along the edge that leaves the
/// s-hyperplane `i_lv`, returning the other endpoint, its set, and the full
/// segment trace. O(n(m + n)) time, O(nm) space.
pub fn pivot(
    w: &Homogenized,
    basis: &Basis,
    x: &[Rat],
    i_lv: usize,
) -> Result<(Basis, Vec<Rat>, PivotTrace), PivotError> {
    pivot_inner(w, basis, x, i_lv, false)
}

/// Like [`pivot`], but after every breakpoint the incrementally maintained
/// tangent digraph, candidate sets and step bounds are compared against
/// from-scratch recomputations, and every traversed segment's interior
/// digraph is re-derived at its midpoint.
pub fn pivot_audited(
    w: &Homogenized,
    basis: &Basis,
    x: &[Rat],
    i_lv: usize,
) -> Result<(Basis, Vec<Rat>, PivotTrace), PivotError> {
    pivot_inner(w, basis, x, i_lv, true)
}

fn pivot_inner(
    w: &Homogenized,
    basis: &Basis,
    x: &[Rat],
    i_lv: usize,
    audit: bool,
) -> Result<(Basis, Vec<Rat>, PivotTrace), PivotError> {
    let mut state = SegmentState::at_basic_point(w, basis, x, i_lv)?;
    let k = state.k.clone();
    let mut segments: Vec<Segment> = Vec::new();
    let mut breakpoints: Vec<Vec<Rat>> = Vec::new();
    let fail = |mut e: PivotError, segments: &[Segment], breakpoints: &[Vec<Rat>]| {
        if let PivotError::Degenerate { partial, .. } = &mut e {
            partial.leaving = Some(i_lv);
            partial.segments = segments.to_vec();
            partial.breakpoints = breakpoints.to_vec();
        }
        e
    };
    loop {
        if segments.len() > w.n() {
            return Err(PivotError::ShapeViolation(format!(
                "edge produced more than {} segments",
                w.n()
            )));
        }
        if audit {
            audit_state(&state).map_err(|e| fail(e, &segments, &breakpoints))?;
        }
        let audit_snapshot =
            audit.then(|| (state.point.clone(), state.j.clone(), state.digraph.clone()));
        let (segment, outcome) =
            traverse_segment(state).map_err(|e| fail(e, &segments, &breakpoints))?;
        if let Some((start, j, interior)) = audit_snapshot {
            // the tangent digraph is constant on the open segment; rebuild it
            // at the midpoint and compare with the maintained one
            let mut mid = start;
            let half = &segment.length / crate::semiring::rat(2);
            for c in j.members() {
                mid[c] += &half;
            }
            let rebuilt = tangent::build_at_rat(w, &mid)?;
            if rebuilt != interior {
                return Err(PivotError::AuditMismatch(format!(
                    "midpoint tangent digraph {:?} differs from the maintained interior digraph {:?}",
                    rebuilt.hyperplane_rows(),
                    interior.hyperplane_rows()
                )));
            }
        }
        match outcome {
            SegmentOutcome::Basic { endpoint, entering, ops } => {
                let new_basis = Basis::new({
                    let mut rows = k.clone();
                    rows.push(entering);
                    rows
                })
                .map_err(|e| PivotError::ShapeViolation(e.to_string()))?;
                // endpoint validation: exactly the new basis is tight and the
                // digraph has the basic-point shape
                let g = tangent::build_at_rat(w, &endpoint)?;
                if g.hyperplane_rows() != new_basis.rows()
                    || !matches!(g.classify(&k), Ok(Classification::BasicPoint { .. }))
                {
                    return Err(fail(
                        PivotError::Degenerate {
                            detail: format!(
                                "endpoint tight rows {:?} do not form the basic point of {new_basis}",
                                g.hyperplane_rows()
                            ),
                            partial: PartialTrace::default(),
                        },
                        &segments,
                        &breakpoints,
                    ));
                }
                segments.push(segment);
                let stats =
                    PivotStats { primitive_ops: ops + (w.m() * w.coords()) as u64 };
                let chart = to_chart(&endpoint);
                return Ok((
                    new_basis,
                    crate::instance::dehomogenize_point(&endpoint),
                    PivotTrace {
                        leaving: i_lv,
                        entering,
                        segments,
                        breakpoints,
                        endpoint: chart,
                        stats,
                    },
                ));
            }
            SegmentOutcome::Continue(next) => {
                breakpoints.push(to_chart(&next.point));
                segments.push(segment);
                state = *next;
            }
        }
    }
}

/// Compares the incrementally maintained state against the definitional
/// recomputation at `(ξ, J)`.
fn audit_state(state: &SegmentState<'_>) -> Result<(), PivotError> {
    let mut ops = 0u64;
    let fresh = sets_from_scratch(state.w, &state.in_k, &state.point, &state.j, &mut ops);
    if fresh.in_entering != state.in_entering {
        return Err(PivotError::AuditMismatch(format!(
            "E = {:?}, from scratch {:?}",
            state.entering_candidates(),
            (0..state.w.m()).filter(|&i| fresh.in_entering[i]).collect::<Vec<_>>()
        )));
    }
    if fresh.in_break != state.in_break {
        return Err(PivotError::AuditMismatch(format!(
            "B = {:?}, from scratch {:?}",
            state.break_candidates(),
            (0..state.w.m()).filter(|&i| fresh.in_break[i]).collect::<Vec<_>>()
        )));
    }
    for i in 0..state.w.m() {
        if !(state.in_entering[i] || state.in_break[i]) {
            continue;
        }
        if fresh.wplus[i] != state.wplus[i] {
            return Err(PivotError::AuditMismatch(format!("W_{i}⁺ ⊙ ξ cache diverged")));
        }
        if fresh.lambda_plus[i] != state.lambda_plus[i]
            || fresh.lambda_minus[i] != state.lambda_minus[i]
        {
            return Err(PivotError::AuditMismatch(format!("λ±_{i} diverged")));
        }
    }
    // the interior digraph must coincide with the tangent digraph at any
    // interior point; at the segment start it is a subgraph of the tangent
    // digraph there, with hyperplane node set K
    if state.digraph.hyperplane_rows() != state.k {
        return Err(PivotError::AuditMismatch(format!(
            "interior digraph rows {:?} differ from K {:?}",
            state.digraph.hyperplane_rows(),
            state.k
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::running_example;
    use crate::semiring::rat;

    // paper labels in fixture rows: H5 = 0, H1 = 1, H2 = 2, H3 = 3, H4 = 4
    const H5: usize = 0;
    const H1: usize = 1;
    const H2: usize = 2;
    const H3: usize = 3;
    const H4: usize = 4;

    fn proj(coords: &[i64]) -> Vec<Rat> {
        coords.iter().map(|&v| rat(v)).collect()
    }

    #[test]
    fn step_bounds_on_the_first_segment() {
        let inst = running_example();
        let w = inst.homogenize();
        let basis = Basis::new(vec![H5, H1, H2]).unwrap();
        let state = SegmentState::at_basic_point(&w, &basis, &proj(&[4, 4, 2]), H5).unwrap();
        assert_eq!(state.direction().members(), vec![3]);
        assert_eq!(state.break_candidates(), vec![H1, H2]);
        assert_eq!(state.entering_candidates(), vec![H3, H4]);
        let lam = |i: usize| state.lambda(i).unwrap();
        assert_eq!(lam(H1), (StepLength::Finite(rat(3)), StepLength::PlusInf));
        assert_eq!(lam(H2), (StepLength::PlusInf, StepLength::Finite(rat(2))));
        assert_eq!(lam(H3).1, StepLength::Finite(rat(4)));
        assert_eq!(lam(H4).1, StepLength::Finite(rat(4)));
        let (mu, cause) = step_length(&state).unwrap();
        assert_eq!(mu, rat(2));
        assert_eq!(cause, Cause::BreakAt { row: H2, side: BreakSide::Minus });
    }

    #[test]
    fn traversal_updates_the_candidate_sets() {
        let inst = running_example();
        let w = inst.homogenize();
        let basis = Basis::new(vec![H5, H1, H2]).unwrap();
        let state = SegmentState::at_basic_point(&w, &basis, &proj(&[4, 4, 2]), H5).unwrap();
        let (seg, outcome) = traverse_segment(state).unwrap();
        assert_eq!(seg.length, rat(2));
        let SegmentOutcome::Continue(state) = outcome else {
            panic!("expected a breakpoint");
        };
        assert_eq!(to_chart(state.point()), proj(&[2, 2, 0, 0]));
        assert_eq!(state.direction().members(), vec![2, 3]);
        assert_eq!(state.break_candidates(), vec![H1]);
        assert_eq!(state.entering_candidates(), vec![H3, H4]);

        let (seg, outcome) = traverse_segment(*state).unwrap();
        assert_eq!(seg.length, rat(1));
        assert_eq!(seg.cause, Cause::BreakAt { row: H1, side: BreakSide::Plus });
        let SegmentOutcome::Continue(state) = outcome else {
            panic!("expected a second breakpoint");
        };
        assert_eq!(to_chart(state.point()), proj(&[1, 1, 0, 0]));
        assert_eq!(state.direction().members(), vec![0, 2, 3]);
        assert!(state.break_candidates().is_empty());
        assert_eq!(state.entering_candidates(), vec![H3]);

        let (seg, outcome) = traverse_segment(*state).unwrap();
        assert_eq!(seg.length, rat(1));
        assert_eq!(seg.cause, Cause::EnterAt { row: H3 });
        let SegmentOutcome::Basic { endpoint, entering, .. } = outcome else {
            panic!("expected the far basic point");
        };
        assert_eq!(entering, H3);
        assert_eq!(to_chart(&endpoint), proj(&[1, 0, 0, 0]));
    }

    #[test]
    fn full_pivot_reaches_the_published_endpoint() {
        let inst = running_example();
        let w = inst.homogenize();
        let basis = Basis::new(vec![H5, H1, H2]).unwrap();
        let (new_basis, x, trace) = pivot_audited(&w, &basis, &proj(&[4, 4, 2]), H5).unwrap();
        assert_eq!(new_basis, Basis::new(vec![H1, H2, H3]).unwrap());
        assert_eq!(x, proj(&[1, 0, 0]));
        assert_eq!(trace.entering, H3);
        assert_eq!(trace.breakpoints, vec![proj(&[2, 2, 0, 0]), proj(&[1, 1, 0, 0])]);
        let lengths: Vec<Rat> = trace.segments.iter().map(|s| s.length.clone()).collect();
        assert_eq!(lengths, vec![rat(2), rat(1), rat(1)]);
        let chain: Vec<Vec<usize>> =
            trace.segments.iter().map(|s| s.direction.members()).collect();
        assert_eq!(chain, vec![vec![3], vec![2, 3], vec![0, 2, 3]]);
        assert!(trace.stats.primitive_ops > 0);
    }

    #[test]
    fn second_pivot_of_the_run() {
        let inst = running_example();
        let w = inst.homogenize();
        let basis = Basis::new(vec![H1, H2, H3]).unwrap();
        let (new_basis, x, trace) = pivot_audited(&w, &basis, &proj(&[1, 0, 0]), H1).unwrap();
        assert_eq!(new_basis, Basis::new(vec![H2, H3, H4]).unwrap());
        assert_eq!(x, proj(&[0, 0, 0]));
        assert_eq!(trace.entering, H4);
        assert_eq!(trace.segments.len(), 1);
    }

    #[test]
    fn pivot_back_returns_to_the_start() {
        let inst = running_example();
        let w = inst.homogenize();
        let basis = Basis::new(vec![H5, H1, H2]).unwrap();
        let start = proj(&[4, 4, 2]);
        let (b2, x2, trace) = pivot(&w, &basis, &start, H5).unwrap();
        let (b3, x3, trace_back) = pivot(&w, &b2, &x2, trace.entering).unwrap();
        assert_eq!(b3, basis);
        assert_eq!(x3, start);
        assert_eq!(trace_back.entering, H5);
    }

    #[test]
    fn leaving_row_must_be_in_the_basis() {
        let inst = running_example();
        let w = inst.homogenize();
        let basis = Basis::new(vec![H5, H1, H2]).unwrap();
        assert!(matches!(
            pivot(&w, &basis, &proj(&[4, 4, 2]), H4),
            Err(PivotError::InvalidStart(_))
        ));
    }

    #[test]
    fn wrong_point_is_rejected() {
        let inst = running_example();
        let w = inst.homogenize();
        let basis = Basis::new(vec![H5, H1, H2]).unwrap();
        assert!(matches!(
            pivot(&w, &basis, &proj(&[1, 0, 0]), H5),
            Err(PivotError::InvalidStart(_))
        ));
    }
}
