//! Tropical matrices, the tropical permanent via the assignment problem,
//! signed determinants and (sign) genericity tests.

use num_traits::Zero;
use thiserror::Error;

use crate::semiring::{Rat, SignedTrop, SymSign, SymTrop, Trop};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix too large for exhaustive genericity check (min dimension {min_dim} > bound {bound})")]
    TooLargeForExhaustive { min_dim: usize, bound: usize },
}

/// Dense row-major matrix over tropical entry types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type SignedMat = Mat<SignedTrop>;
pub type SymMat = Mat<SymTrop>;

impl<T: Clone> Mat<T> {
    pub fn new(rows: usize, cols: usize, fill: T) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Mat { rows, cols, data: vec![fill; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let m = rows.len();
        Mat { rows: m, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat<T> {
        assert!(!rows.is_empty() && !cols.is_empty());
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Mat { rows: rows.len(), cols: cols.len(), data }
    }
}

/// Entry types that carry a tropical modulus.
pub trait TropEntry: Clone {
    fn modulus(&self) -> Trop;
    fn sym(&self) -> SymTrop;
}

impl TropEntry for SignedTrop {
    fn modulus(&self) -> Trop {
        SignedTrop::modulus(self)
    }

    fn sym(&self) -> SymTrop {
        SymTrop::from(self.clone())
    }
}

impl TropEntry for SymTrop {
    fn modulus(&self) -> Trop {
        SymTrop::modulus(self)
    }

    fn sym(&self) -> SymTrop {
        self.clone()
    }
}

/// Optimal duals of the assignment problem (`|m_ij| <= u_i + v_j`, tight on
/// the matching).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Duals {
    pub u: Vec<Rat>,
    pub v: Vec<Rat>,
}

/// A maximizing permutation together with the optimal duals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    /// `perm[i]` is the column matched to row `i`; the lexicographically
    /// smallest maximizing permutation.
    pub perm: Vec<usize>,
    pub duals: Duals,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentResult {
    pub value: Trop,
    /// `None` when the permanent is tropical zero (no finite assignment).
    pub assignment: Option<Assignment>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
#[cfg_attr(not(test), allow(dead_code))] // the alternate order is exercised by tests
pub(crate) enum TieBreak {
    LexSmallest,
    LexLargest,
}

/// Tropical permanent of the modulus matrix, solved as an assignment problem
/// by the Hungarian method in O(n^3). Ties between maximizing permutations
/// are broken lexicographically.
pub fn tperm<T: TropEntry>(m: &Mat<T>) -> Result<AssignmentResult, LinalgError> {
    tperm_with_tiebreak(m, TieBreak::LexSmallest)
}

pub(crate) fn tperm_with_tiebreak<T: TropEntry>(
    m: &Mat<T>,
    tiebreak: TieBreak,
) -> Result<AssignmentResult, LinalgError> {
    if m.rows() != m.cols() {
        return Err(LinalgError::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let w = modulus_grid(m);
    let Some(duals) = hungarian_duals(&w) else {
        return Ok(AssignmentResult { value: Trop::NegInf, assignment: None });
    };
    let perm = lex_maximizing_permutation(&w, &duals, tiebreak)
        .expect("duals exist, so a maximizing permutation exists");
    let mut value = Rat::zero();
    for (i, &j) in perm.iter().enumerate() {
        value += w[i][j].as_ref().expect("matched entries are finite");
    }
    #[cfg(debug_assertions)]
    {
        for i in 0..n {
            for j in 0..n {
                if let Some(wij) = &w[i][j] {
                    debug_assert!(*wij <= &duals.u[i] + &duals.v[j], "dual infeasible at ({i},{j})");
                }
            }
        }
        for (i, &j) in perm.iter().enumerate() {
            debug_assert_eq!(
                w[i][j].clone().unwrap(),
                &duals.u[i] + &duals.v[j],
                "complementary slackness fails at ({i},{j})"
            );
        }
    }
    let _ = n;
    Ok(AssignmentResult { value: Trop::Fin(value), assignment: Some(Assignment { perm, duals }) })
}

fn modulus_grid<T: TropEntry>(m: &Mat<T>) -> Vec<Vec<Option<Rat>>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).modulus().as_rat().cloned()).collect())
        .collect()
}

/// Jonker-Volgenant style shortest augmenting path method, run on the
/// negated moduli. Returns maximization duals, or `None` when the finite
/// entries admit no perfect matching.
fn hungarian_duals(w: &[Vec<Option<Rat>>]) -> Option<Duals> {
    let n = w.len();
    // 1-based arrays; index 0 is the virtual start column.
    let mut u = vec![Rat::zero(); n + 1];
    let mut v = vec![Rat::zero(); n + 1];
    let mut matched_row = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        matched_row[0] = i;
        let mut j0 = 0usize;
        let mut minv: Vec<Option<Rat>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta: Option<Rat> = None;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                // minimization cost is the negated modulus
                if let Some(wij) = &w[i0 - 1][j - 1] {
                    let cur = -wij - &u[i0] - &v[j];
                    if minv[j].as_ref().map_or(true, |m| cur < *m) {
                        minv[j] = Some(cur);
                        way[j] = j0;
                    }
                }
                if let Some(mj) = &minv[j] {
                    if delta.as_ref().map_or(true, |d| mj < d) {
                        delta = Some(mj.clone());
                        j1 = j;
                    }
                }
            }
            let delta = delta?;
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += &delta;
                    v[j] -= &delta;
                } else if let Some(mj) = minv[j].take() {
                    minv[j] = Some(mj - &delta);
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    // Maximization duals are the negated minimization potentials.
    let u_max: Vec<Rat> = (1..=n).map(|i| -&u[i]).collect();
    let v_max: Vec<Rat> = (1..=n).map(|j| -&v[j]).collect();
    Some(Duals { u: u_max, v: v_max })
}

fn is_tight(w: &[Vec<Option<Rat>>], duals: &Duals, i: usize, j: usize) -> bool {
    match &w[i][j] {
        Some(wij) => *wij == &duals.u[i] + &duals.v[j],
        None => false,
    }
}

/// Greedy selection of the lexicographically extreme maximizing permutation
/// over the tight edges of the optimal duals.
fn lex_maximizing_permutation(
    w: &[Vec<Option<Rat>>],
    duals: &Duals,
    tiebreak: TieBreak,
) -> Option<Vec<usize>> {
    let n = w.len();
    let mut perm = vec![usize::MAX; n];
    let mut col_used = vec![false; n];
    for i in 0..n {
        let candidates: Vec<usize> = match tiebreak {
            TieBreak::LexSmallest => (0..n).collect(),
            TieBreak::LexLargest => (0..n).rev().collect(),
        };
        let mut fixed = false;
        for j in candidates {
            if col_used[j] || !is_tight(w, duals, i, j) {
                continue;
            }
            col_used[j] = true;
            if tight_rows_matchable(w, duals, i + 1, &col_used) {
                perm[i] = j;
                fixed = true;
                break;
            }
            col_used[j] = false;
        }
        if !fixed {
            return None;
        }
    }
    Some(perm)
}

/// Kuhn's algorithm: can rows `from..n` be perfectly matched into the unused
/// columns using tight edges only?
fn tight_rows_matchable(
    w: &[Vec<Option<Rat>>],
    duals: &Duals,
    from: usize,
    col_used: &[bool],
) -> bool {
    let n = w.len();
    let mut col_match: Vec<Option<usize>> = vec![None; n];
    fn try_augment(
        i: usize,
        w: &[Vec<Option<Rat>>],
        duals: &Duals,
        col_used: &[bool],
        visited: &mut [bool],
        col_match: &mut [Option<usize>],
        from: usize,
    ) -> bool {
        let n = w.len();
        for j in 0..n {
            if col_used[j] || visited[j] || !is_tight(w, duals, i, j) {
                continue;
            }
            visited[j] = true;
            let free = match col_match[j] {
                None => true,
                Some(prev) => try_augment(prev, w, duals, col_used, visited, col_match, from),
            };
            if free {
                col_match[j] = Some(i);
                return true;
            }
        }
        false
    }
    for i in from..n {
        let mut visited = vec![false; n];
        if !try_augment(i, w, duals, col_used, &mut visited, &mut col_match, from) {
            return false;
        }
    }
    true
}

fn permutation_parity(perm: &[usize]) -> usize {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

/// Visits every maximizing permutation of the tropical permanent (every
/// perfect matching of the tight graph). The callback returns `false` to
/// stop early. Output-sensitive; only massively tied inputs make the set
/// large.
fn for_each_maximizing_matching<T: TropEntry>(
    m: &Mat<T>,
    duals: &Duals,
    mut visit: impl FnMut(&[usize]) -> bool,
) {
    let n = m.rows();
    let w = modulus_grid(m);
    let mut perm = vec![usize::MAX; n];
    let mut col_used = vec![false; n];
    fn rec<T: TropEntry>(
        i: usize,
        w: &[Vec<Option<Rat>>],
        duals: &Duals,
        perm: &mut Vec<usize>,
        col_used: &mut Vec<bool>,
        visit: &mut impl FnMut(&[usize]) -> bool,
        m: &Mat<T>,
    ) -> bool {
        let n = w.len();
        if i == n {
            return visit(perm);
        }
        for j in 0..n {
            if col_used[j] || !is_tight(w, duals, i, j) {
                continue;
            }
            if !tight_rows_matchable(w, duals, i + 1, &{
                let mut c = col_used.clone();
                c[j] = true;
                c
            }) {
                continue;
            }
            col_used[j] = true;
            perm[i] = j;
            let keep_going = rec(i + 1, w, duals, perm, col_used, visit, m);
            perm[i] = usize::MAX;
            col_used[j] = false;
            if !keep_going {
                return false;
            }
        }
        true
    }
    rec(0, &w, duals, &mut perm, &mut col_used, &mut visit, m);
}

/// Signed tropical determinant. The modulus is the tropical permanent; the
/// sign aggregates the signed terms of all maximizing permutations, so the
/// result is balanced exactly when two maximizing terms have opposite signs
/// (or some maximizing term contains a balanced entry).
pub fn tdet<T: TropEntry>(m: &Mat<T>) -> Result<SymTrop, LinalgError> {
    let res = tperm(m)?;
    let Some(assignment) = res.assignment else {
        return Ok(SymTrop::Zero);
    };
    let modulus = match res.value {
        Trop::Fin(r) => r,
        Trop::NegInf => unreachable!(),
    };
    let mut seen_pos = false;
    let mut seen_neg = false;
    let mut seen_bal = false;
    for_each_maximizing_matching(m, &assignment.duals, |perm| {
        let mut sign = permutation_parity(perm); // 0 = even, 1 = odd
        for (i, &j) in perm.iter().enumerate() {
            match m.get(i, j).sym().sign() {
                SymSign::Pos => {}
                SymSign::Neg => sign ^= 1,
                SymSign::Balanced => {
                    seen_bal = true;
                    return false;
                }
                SymSign::Zero => unreachable!("matched entry has finite modulus"),
            }
        }
        if sign == 0 {
            seen_pos = true;
        } else {
            seen_neg = true;
        }
        !(seen_pos && seen_neg)
    });
    Ok(if seen_bal || (seen_pos && seen_neg) {
        SymTrop::Bal(modulus)
    } else if seen_neg {
        SymTrop::Neg(modulus)
    } else {
        SymTrop::Pos(modulus)
    })
}

/// True iff the permanent is tropical zero or the determinant is balanced.
pub fn sign_singular<T: TropEntry>(m: &Mat<T>) -> Result<bool, LinalgError> {
    let d = tdet(m)?;
    Ok(d.is_zero() || d.is_balanced())
}

/// True iff the permanent is tropical zero or attained by at least two
/// permutations.
pub fn singular<T: TropEntry>(m: &Mat<T>) -> Result<bool, LinalgError> {
    let res = tperm(m)?;
    let Some(assignment) = res.assignment else {
        return Ok(true);
    };
    let mut count = 0usize;
    for_each_maximizing_matching(m, &assignment.duals, |_| {
        count += 1;
        count < 2
    });
    Ok(count >= 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenericityMode {
    Exhaustive,
    Asserted,
}

/// A violating square submatrix, by row and column index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityReport {
    pub mode: GenericityMode,
    /// First submatrix with finite permanent attained twice, if any.
    pub not_generic: Option<Witness>,
    /// First sign-singular submatrix with finite permanent, if any.
    pub not_sign_generic: Option<Witness>,
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.not_generic.is_none()
    }

    pub fn is_sign_generic(&self) -> bool {
        self.not_sign_generic.is_none()
    }
}

pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 8;

/// Scans every square submatrix for tropical singularity and sign
/// singularity, in increasing size and then lexicographic order of row and
/// column sets, reporting the first witness of each kind. Submatrices with
/// zero permanent violate neither property.
///
/// Exponential in `min(rows, cols)`; intended as a test and CLI facility.
/// `Asserted` mode skips the scan, leaving degeneracy to be caught lazily
/// at solve time.
pub fn check_generic<T: TropEntry>(
    m: &Mat<T>,
    mode: GenericityMode,
) -> Result<GenericityReport, LinalgError> {
    if mode == GenericityMode::Asserted {
        return Ok(GenericityReport { mode, not_generic: None, not_sign_generic: None });
    }
    let min_dim = m.rows().min(m.cols());
    if min_dim > DEFAULT_EXHAUSTIVE_BOUND {
        return Err(LinalgError::TooLargeForExhaustive {
            min_dim,
            bound: DEFAULT_EXHAUSTIVE_BOUND,
        });
    }
    let mut not_generic = None;
    let mut not_sign_generic = None;
    'sizes: for k in 1..=min_dim {
        for rows in combinations(m.rows(), k) {
            for cols in combinations(m.cols(), k) {
                let sub = m.submatrix(&rows, &cols);
                let res = tperm(&sub)?;
                if res.value.is_zero() {
                    continue;
                }
                if not_generic.is_none() && singular(&sub)? {
                    not_generic = Some(Witness { rows: rows.clone(), cols: cols.clone() });
                }
                if not_sign_generic.is_none() && sign_singular(&sub)? {
                    not_sign_generic = Some(Witness { rows: rows.clone(), cols: cols.clone() });
                }
                if not_generic.is_some() && not_sign_generic.is_some() {
                    break 'sizes;
                }
            }
        }
    }
    Ok(GenericityReport { mode, not_generic, not_sign_generic })
}

/// All k-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for i in start..=n.saturating_sub(needed) {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut current, &mut out);
    }
    out
}
