//! Signed tropical Cramer systems `M ⊙ y ∇ d` and tropical reduced costs.
//!
//! A maximizing permutation of `tper(|M|)` induces a weighted bipartite
//! Cramer digraph; longest paths from the affine column node determine the
//! unique signed solution through a short recursion. Scaling by optimal
//! assignment duals makes all effective arc weights non-positive so the
//! longest paths come from a Dijkstra sweep.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::instance::{Basis, Instance};
use crate::linalg::{tperm, SignedMat};
use crate::semiring::{Rat, SignedTrop, SymTrop, Trop};
use crate::tangent;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CramerError {
    #[error("matrix is not square")]
    NonSquare,
    #[error("singular system: the tropical determinant is zero or balanced")]
    SingularSystem,
    #[error("column {0} is unreachable in the Cramer digraph: solution undetermined")]
    UnreachableColumn(usize),
    #[error("assignment duals are not optimal: {0}")]
    InfeasibleDuals(String),
    #[error("point is not the basic point of the given set: {0}")]
    InvalidBasicPoint(String),
    #[error("dual degeneracy detected: {0}")]
    DualDegenerate(String),
}

/// The weighted bipartite digraph of the system `M ⊙ y ∇ d` for a maximizing
/// permutation `sigma`: every row node `i` has one outgoing arc to column
/// `sigma[i]` with weight `m_{i,sigma(i)}^{-1}`, an incoming arc from every
/// other column `j` with weight `⊖m_{ij}`, and an incoming arc from the
/// affine column `n` with weight `d_i`.
#[derive(Debug, Clone)]
pub struct CramerDigraph {
    n: usize,
    /// Per row: (matched column, inverse matched weight).
    pub row_out: Vec<(usize, SignedTrop)>,
    /// Per column `0..=n`: arcs to rows. The last column is the affine node.
    pub col_out: Vec<Vec<(usize, SignedTrop)>>,
}

impl CramerDigraph {
    pub fn new(m: &SignedMat, d: &[SignedTrop], sigma: &[usize]) -> Result<Self, CramerError> {
        if m.rows() != m.cols() {
            return Err(CramerError::NonSquare);
        }
        let n = m.rows();
        assert_eq!(d.len(), n);
        assert_eq!(sigma.len(), n);
        let mut row_out = Vec::with_capacity(n);
        for (i, &j) in sigma.iter().enumerate() {
            let w = m.get(i, j).inv().map_err(|_| CramerError::SingularSystem)?;
            row_out.push((j, w));
        }
        let mut col_out = vec![Vec::new(); n + 1];
        for i in 0..n {
            for j in 0..n {
                if j == sigma[i] {
                    continue;
                }
                let e = m.get(i, j);
                if !e.is_zero() {
                    col_out[j].push((i, e.reflect()));
                }
            }
            if !d[i].is_zero() {
                col_out[n].push((i, d[i].clone()));
            }
        }
        Ok(CramerDigraph { n, row_out, col_out })
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// A directed tree of longest paths from the affine column node, described
/// by the parent column of every reachable row, together with the longest
/// path moduli in the (scaled) digraph it was computed on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestPathTree {
    /// Parent column per row (`n` = the affine column); `None` if the row is
    /// unreachable.
    pub gamma: Vec<Option<usize>>,
    pub row_dist: Vec<Trop>,
    pub col_dist: Vec<Trop>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
#[cfg_attr(not(test), allow(dead_code))] // the alternate order is exercised by tests
pub(crate) enum NodeTieBreak {
    Smallest,
    Largest,
}

/// Scales the system by the optimal assignment duals `(u, v)` of `|M|` and
/// the offset `mu = max(max_i(|d_i| - u_i), 0)`, then runs a longest-path
/// sweep from the affine column on the scaled Cramer digraph. After scaling
/// every matrix and right-hand-side modulus is at most zero, and the tree is
/// also a longest-path tree for the original weights.
pub fn scale_and_longest_paths(
    m: &SignedMat,
    d: &[SignedTrop],
    sigma: &[usize],
    u: &[Rat],
    v: &[Rat],
) -> Result<LongestPathTree, CramerError> {
    scale_and_longest_paths_tiebreak(m, d, sigma, u, v, NodeTieBreak::Smallest)
}

pub(crate) fn scale_and_longest_paths_tiebreak(
    m: &SignedMat,
    d: &[SignedTrop],
    sigma: &[usize],
    u: &[Rat],
    v: &[Rat],
    tiebreak: NodeTieBreak,
) -> Result<LongestPathTree, CramerError> {
    if m.rows() != m.cols() {
        return Err(CramerError::NonSquare);
    }
    let n = m.rows();
    // dual feasibility and complementary slackness
    for i in 0..n {
        for j in 0..n {
            if let Trop::Fin(w) = m.get(i, j).modulus() {
                if w > &u[i] + &v[j] {
                    return Err(CramerError::InfeasibleDuals(format!(
                        "|m_{i}{j}| > u_{i} + v_{j}"
                    )));
                }
            }
        }
        match m.get(i, sigma[i]).modulus() {
            Trop::Fin(w) if w == &u[i] + &v[sigma[i]] => {}
            _ => {
                return Err(CramerError::InfeasibleDuals(format!(
                    "matched entry ({i}, {}) is not tight",
                    sigma[i]
                )))
            }
        }
    }
    let mut mu = Rat::zero();
    for i in 0..n {
        if let Trop::Fin(di) = d[i].modulus() {
            let slack = di - &u[i];
            if slack > mu {
                mu = slack;
            }
        }
    }
    // scaled moduli: |m'_ij| = |m_ij| - mu - u_i - v_j, |d'_i| = |d_i| - mu - u_i
    let scaled_entry = |i: usize, j: usize| -> Option<Rat> {
        m.get(i, j).modulus().as_rat().map(|w| w - &mu - &u[i] - &v[j])
    };
    let scaled_rhs = |i: usize| -> Option<Rat> {
        d[i].modulus().as_rat().map(|w| w - &mu - &u[i])
    };

    // Dijkstra over row nodes. Every composite arc row -> row has weight
    // mu + |m'| <= 0 and source arcs are <= 0, so settling the maximum
    // tentative distance first is safe.
    let mut row_dist: Vec<Option<Rat>> = (0..n).map(scaled_rhs).collect();
    let mut gamma: Vec<Option<usize>> = row_dist.iter().map(|d| d.as_ref().map(|_| n)).collect();
    let mut settled = vec![false; n];
    let mut col_dist: Vec<Option<Rat>> = vec![None; n];
    loop {
        let mut best: Option<usize> = None;
        for i in 0..n {
            if settled[i] || row_dist[i].is_none() {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    let better = match row_dist[i].cmp(&row_dist[b]) {
                        std::cmp::Ordering::Greater => true,
                        std::cmp::Ordering::Less => false,
                        std::cmp::Ordering::Equal => matches!(tiebreak, NodeTieBreak::Largest),
                    };
                    Some(if better { i } else { b })
                }
            };
        }
        let Some(i) = best else { break };
        settled[i] = true;
        let di = row_dist[i].clone().expect("settled rows have distances");
        // the matched column is entered only through row i
        let j = sigma[i];
        let inv_weight = -scaled_entry(i, j).expect("matched entry is finite");
        let dj = &di + &inv_weight;
        debug_assert!(col_dist[j].is_none());
        col_dist[j] = Some(dj.clone());
        for r in 0..n {
            if r == i || sigma[r] == j {
                continue;
            }
            if let Some(w) = scaled_entry(r, j) {
                let cand = &dj + &w;
                if row_dist[r].as_ref().map_or(true, |cur| cand > *cur) {
                    row_dist[r] = Some(cand);
                    gamma[r] = Some(j);
                }
            }
        }
    }
    let to_trop = |o: &Option<Rat>| o.clone().map(Trop::Fin).unwrap_or(Trop::NegInf);
    Ok(LongestPathTree {
        gamma,
        row_dist: row_dist.iter().map(to_trop).collect(),
        col_dist: col_dist.iter().map(to_trop).collect(),
    })
}

/// Evaluates the Cramer recursion along a longest-path tree, on the original
/// weights. Unreachable columns are set to tropical zero; the caller is
/// responsible for the residual check.
fn back_substitute(
    m: &SignedMat,
    d: &[SignedTrop],
    sigma: &[usize],
    tree: &LongestPathTree,
) -> Vec<SignedTrop> {
    let n = m.rows();
    let mut y: Vec<Option<SignedTrop>> = vec![None; n];
    let mut pending: Vec<usize> = (0..n).collect();
    loop {
        let mut progressed = false;
        pending.retain(|&i| {
            let j = sigma[i];
            let inv = m.get(i, j).inv().expect("matched entries are non-zero");
            match tree.gamma[i] {
                None => {
                    // unreachable: the matched column stays tropical zero
                    y[j] = Some(SignedTrop::Zero);
                    progressed = true;
                    false
                }
                Some(g) if g == n => {
                    y[j] = Some(d[i].mul(&inv));
                    progressed = true;
                    false
                }
                Some(g) => match &y[g] {
                    Some(yg) => {
                        y[j] = Some(m.get(i, g).reflect().mul(&inv).mul(yg));
                        progressed = true;
                        false
                    }
                    None => true,
                },
            }
        });
        if pending.is_empty() {
            break;
        }
        assert!(progressed, "longest-path tree contains a dependency cycle");
    }
    y.into_iter().map(|v| v.expect("all columns assigned")).collect()
}

/// Residual check: every row of `M ⊙ y ⊖ d` must be balanced or zero.
fn residual_balances(m: &SignedMat, d: &[SignedTrop], y: &[SignedTrop]) -> bool {
    let n = m.rows();
    (0..n).all(|i| {
        let mut acc = SymTrop::Zero;
        for j in 0..n {
            acc = acc.add(&m.get(i, j).sym().mul(&y[j].sym()));
        }
        acc.balances(&d[i].sym())
    })
}

/// Solves `M ⊙ y ∇ d` for signed `M` and `d` with sign-nonsingular `M`.
/// O(n^3) dominated by the assignment problem.
pub fn cramer_solve(m: &SignedMat, d: &[SignedTrop]) -> Result<Vec<SignedTrop>, CramerError> {
    if m.rows() != m.cols() {
        return Err(CramerError::NonSquare);
    }
    let n = m.rows();
    assert_eq!(d.len(), n);
    let res = tperm(m).map_err(|_| CramerError::NonSquare)?;
    let Some(assignment) = res.assignment else {
        return Err(CramerError::SingularSystem);
    };
    if crate::linalg::sign_singular(m).map_err(|_| CramerError::NonSquare)? {
        return Err(CramerError::SingularSystem);
    }
    let tree = scale_and_longest_paths(
        m,
        d,
        &assignment.perm,
        &assignment.duals.u,
        &assignment.duals.v,
    )?;
    let y = back_substitute(m, d, &assignment.perm, &tree);
    if !residual_balances(m, d, &y) {
        let unreachable = tree.gamma.iter().position(Option::is_none).map(|i| assignment.perm[i]);
        return Err(CramerError::UnreachableColumn(unreachable.unwrap_or(0)));
    }
    Ok(y)
}

/// Tropical reduced costs of a feasible basic point `x` for the set `basis`:
/// the unique signed solution of `Aᵀ ⊙ y ∇ cᵀ` with balanced-with-zero
/// entries off the basis, returned in ascending basis-row order.
///
/// The maximizing permutation comes from a traversal of the tangent graph
/// and the assignment duals are `u = -x`, `v_i = W_i⁺ ⊙ (x, 0)`, so the
/// whole computation runs in O(n(m + n)).
pub fn reduced_costs(
    inst: &Instance,
    basis: &Basis,
    x: &[Rat],
) -> Result<Vec<SignedTrop>, CramerError> {
    let n = inst.n();
    assert_eq!(x.len(), n);
    inst.validate_basis(basis)
        .map_err(|e| CramerError::InvalidBasicPoint(e.to_string()))?;
    let h = inst.homogenize();
    let mut proj = x.to_vec();
    proj.push(Rat::zero());
    let g = tangent::build_at_rat(&h, &proj)
        .map_err(|e| CramerError::InvalidBasicPoint(e.to_string()))?;
    if g.hyperplane_rows() != basis.rows() {
        return Err(CramerError::InvalidBasicPoint(format!(
            "tight rows {:?} differ from the basis {:?}",
            g.hyperplane_rows(),
            basis.rows()
        )));
    }
    let matching: BTreeMap<usize, usize> = g
        .matching_permutation()
        .map_err(|e| CramerError::InvalidBasicPoint(e.to_string()))?;

    // M = A_Iᵀ with columns in basis order; row j of M is variable j.
    let rows = basis.rows();
    let mt = inst.a.submatrix(rows, &(0..n).collect::<Vec<_>>()).transpose();
    let d: Vec<SignedTrop> = inst.c.iter().map(SignedTrop::from_trop).collect();
    // sigma over M: variable j maps to the basis position matched to it
    let mut sigma = vec![usize::MAX; n];
    for (pos, &row) in rows.iter().enumerate() {
        sigma[matching[&row]] = pos;
    }
    let u: Vec<Rat> = x.iter().map(|r| -r).collect();
    let mut v = Vec::with_capacity(n);
    for &row in rows {
        match h.pos_dot(row, &proj).as_rat() {
            Some(r) => v.push(r.clone()),
            None => {
                return Err(CramerError::InvalidBasicPoint(format!(
                    "tight value of row {row} is -inf"
                )))
            }
        }
    }
    let tree = scale_and_longest_paths(&mt, &d, &sigma, &u, &v)?;
    let y = back_substitute(&mt, &d, &sigma, &tree);

    // residual over all m rows, with off-basis entries at tropical zero
    for j in 0..n {
        let mut acc = SymTrop::Zero;
        for (pos, &row) in rows.iter().enumerate() {
            acc = acc.add(&inst.a.get(row, j).sym().mul(&y[pos].sym()));
        }
        if !acc.balances(&SignedTrop::from_trop(&inst.c[j]).sym()) {
            return Err(CramerError::DualDegenerate(format!(
                "reduced-cost residual fails at variable {j}"
            )));
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::running_example;
    use crate::linalg::Mat;
    use crate::semiring::rat;
    use rand::{Rng, SeedableRng};

    fn z() -> SignedTrop {
        SignedTrop::Zero
    }

    /// The worked 3x3 balance system with solution (⊖(-1), -1, 0).
    fn example_system() -> (SignedMat, Vec<SignedTrop>) {
        let m = Mat::from_rows(vec![
            vec![SignedTrop::neg(-1), z(), z()],
            vec![SignedTrop::pos(-1), SignedTrop::neg(-2), SignedTrop::pos(0)],
            vec![SignedTrop::neg(-1), SignedTrop::pos(0), z()],
        ]);
        let d = vec![SignedTrop::pos(-2), SignedTrop::pos(0), SignedTrop::pos(-1)];
        (m, d)
    }

    #[test]
    fn solves_the_worked_example() {
        let (m, d) = example_system();
        let y = cramer_solve(&m, &d).unwrap();
        assert_eq!(y, vec![SignedTrop::neg(-1), SignedTrop::pos(-1), SignedTrop::pos(0)]);
    }

    #[test]
    fn identity_system_returns_the_right_hand_side() {
        let n = 4;
        let mut m = Mat::new(n, n, z());
        for i in 0..n {
            m.set(i, i, SignedTrop::one());
        }
        let d = vec![SignedTrop::neg(3), SignedTrop::pos(-7), SignedTrop::Zero, SignedTrop::pos(2)];
        assert_eq!(cramer_solve(&m, &d).unwrap(), d);
    }

    #[test]
    fn singular_systems_are_rejected() {
        let m = Mat::from_rows(vec![
            vec![SignedTrop::pos(0), SignedTrop::neg(0)],
            vec![SignedTrop::neg(0), SignedTrop::pos(0)],
        ]);
        let d = vec![SignedTrop::pos(0), SignedTrop::pos(0)];
        assert_eq!(cramer_solve(&m, &d), Err(CramerError::SingularSystem));
        let zero = Mat::new(2, 2, z());
        assert_eq!(cramer_solve(&zero, &d), Err(CramerError::SingularSystem));
    }

    /// Exhaustive signed determinant for the Cramer-formula oracle.
    fn brute_tdet(m: &SignedMat) -> SymTrop {
        fn rec(m: &SignedMat, i: usize, used: &mut Vec<bool>, perm: &mut Vec<usize>, acc: &mut SymTrop) {
            let n = m.rows();
            if i == n {
                let mut inversions = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if perm[a] > perm[b] {
                            inversions += 1;
                        }
                    }
                }
                let mut term =
                    if inversions % 2 == 0 { SymTrop::one() } else { SymTrop::one().reflect() };
                for (r, &c) in perm.iter().enumerate() {
                    term = term.mul(&m.get(r, c).sym());
                }
                *acc = acc.add(&term);
                return;
            }
            for j in 0..n {
                if !used[j] {
                    used[j] = true;
                    perm.push(j);
                    rec(m, i + 1, used, perm, acc);
                    perm.pop();
                    used[j] = false;
                }
            }
        }
        let mut acc = SymTrop::Zero;
        rec(m, 0, &mut vec![false; m.rows()], &mut Vec::new(), &mut acc);
        acc
    }

    fn random_signed(rng: &mut impl Rng, zero_prob: f64) -> SignedTrop {
        if rng.gen_bool(zero_prob) {
            return z();
        }
        let v = rng.gen_range(-9..=9);
        if rng.gen_bool(0.5) {
            SignedTrop::pos(v)
        } else {
            SignedTrop::neg(v)
        }
    }

    #[test]
    fn matches_the_cramer_formula_on_random_sign_generic_systems() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut checked = 0;
        while checked < 40 {
            let n = 4;
            let mut m = Mat::new(n, n, z());
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, random_signed(&mut rng, 0.25));
                }
            }
            let d: Vec<SignedTrop> = (0..n).map(|_| random_signed(&mut rng, 0.1)).collect();
            let det = brute_tdet(&m);
            let det_signed = match det.as_signed() {
                Some(s) if !s.is_zero() => s,
                _ => continue,
            };
            let mut expected = Vec::new();
            let mut ok = true;
            for j in 0..n {
                let mut mj = m.clone();
                for i in 0..n {
                    mj.set(i, j, d[i].clone());
                }
                match brute_tdet(&mj).as_signed() {
                    Some(s) => expected.push(det_signed.inv().unwrap().mul(&s)),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            checked += 1;
            assert_eq!(cramer_solve(&m, &d).unwrap(), expected);
        }
    }

    #[test]
    fn scaling_is_identity_when_duals_vanish() {
        // all moduli <= 0 and u = v = 0 give mu = 0
        let m = Mat::from_rows(vec![
            vec![SignedTrop::pos(0), SignedTrop::neg(-2)],
            vec![z(), SignedTrop::pos(0)],
        ]);
        let d = vec![SignedTrop::pos(-1), SignedTrop::neg(0)];
        let sigma = vec![0, 1];
        let u = vec![rat(0), rat(0)];
        let v = vec![rat(0), rat(0)];
        let tree = scale_and_longest_paths(&m, &d, &sigma, &u, &v).unwrap();
        assert_eq!(tree.gamma, vec![Some(2), Some(2)]);
        assert_eq!(tree.row_dist, vec![Trop::fin(-1), Trop::fin(0)]);
        assert_eq!(tree.col_dist, vec![Trop::fin(-1), Trop::fin(0)]);
    }

    #[test]
    fn infeasible_duals_are_detected() {
        let (m, d) = example_system();
        let sigma = vec![0, 2, 1];
        let bad_u = vec![rat(-10), rat(0), rat(0)];
        let v = vec![rat(0), rat(0), rat(0)];
        assert!(matches!(
            scale_and_longest_paths(&m, &d, &sigma, &bad_u, &v),
            Err(CramerError::InfeasibleDuals(_))
        ));
    }

    /// Longest simple paths by exhaustive enumeration on the scaled digraph.
    fn enumerate_longest(
        m: &SignedMat,
        d: &[SignedTrop],
        sigma: &[usize],
        u: &[Rat],
        v: &[Rat],
    ) -> (Vec<Trop>, Vec<Trop>) {
        let n = m.rows();
        let mut mu = Rat::zero();
        for i in 0..n {
            if let Trop::Fin(di) = d[i].modulus() {
                let slack = di - &u[i];
                if slack > mu {
                    mu = slack;
                }
            }
        }
        let mut row_best = vec![Trop::NegInf; n];
        let mut col_best = vec![Trop::NegInf; n];
        // depth-first over alternating simple paths from the affine node
        fn dfs(
            row: usize,
            dist: Rat,
            m: &SignedMat,
            sigma: &[usize],
            u: &[Rat],
            v: &[Rat],
            mu: &Rat,
            visited_rows: &mut Vec<bool>,
            row_best: &mut Vec<Trop>,
            col_best: &mut Vec<Trop>,
        ) {
            let n = m.rows();
            visited_rows[row] = true;
            if Trop::Fin(dist.clone()) > row_best[row] {
                row_best[row] = Trop::Fin(dist.clone());
            }
            let j = sigma[row];
            let scaled = m.get(row, j).modulus().as_rat().unwrap() - mu - &u[row] - &v[j];
            let dj = &dist - &scaled; // inverse arc weight
            if Trop::Fin(dj.clone()) > col_best[j] {
                col_best[j] = Trop::Fin(dj.clone());
            }
            for r in 0..n {
                if visited_rows[r] || sigma[r] == j {
                    continue;
                }
                if let Some(w) = m.get(r, j).modulus().as_rat() {
                    let next = &dj + (w - mu - &u[r] - &v[j]);
                    dfs(r, next, m, sigma, u, v, mu, visited_rows, row_best, col_best);
                }
            }
            visited_rows[row] = false;
        }
        for i in 0..n {
            if let Some(di) = d[i].modulus().as_rat() {
                let start = di - &mu - &u[i];
                let mut visited = vec![false; n];
                dfs(i, start, m, sigma, u, v, &mu, &mut visited, &mut row_best, &mut col_best);
            }
        }
        (row_best, col_best)
    }

    #[test]
    fn tree_distances_match_exhaustive_path_enumeration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let mut checked = 0;
        while checked < 30 {
            let n = rng.gen_range(2..=5);
            let mut m = Mat::new(n, n, z());
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, random_signed(&mut rng, 0.3));
                }
            }
            let d: Vec<SignedTrop> = (0..n).map(|_| random_signed(&mut rng, 0.2)).collect();
            let Ok(res) = tperm(&m) else { continue };
            let Some(assignment) = res.assignment else { continue };
            checked += 1;
            let tree = scale_and_longest_paths(
                &m,
                &d,
                &assignment.perm,
                &assignment.duals.u,
                &assignment.duals.v,
            )
            .unwrap();
            let (rows, cols) =
                enumerate_longest(&m, &d, &assignment.perm, &assignment.duals.u, &assignment.duals.v);
            assert_eq!(tree.row_dist, rows);
            assert_eq!(tree.col_dist, cols);
        }
    }

    #[test]
    fn dijkstra_tiebreak_does_not_change_the_solution() {
        let (m, d) = example_system();
        let res = tperm(&m).unwrap();
        let a = res.assignment.unwrap();
        let t1 = scale_and_longest_paths_tiebreak(&m, &d, &a.perm, &a.duals.u, &a.duals.v, NodeTieBreak::Smallest).unwrap();
        let t2 = scale_and_longest_paths_tiebreak(&m, &d, &a.perm, &a.duals.u, &a.duals.v, NodeTieBreak::Largest).unwrap();
        let y1 = back_substitute(&m, &d, &a.perm, &t1);
        let y2 = back_substitute(&m, &d, &a.perm, &t2);
        assert_eq!(y1, y2);
        assert_eq!(t1.row_dist, t2.row_dist);
    }

    #[test]
    fn reduced_costs_on_the_running_example() {
        let inst = running_example();
        // paper labels: H5 = row 0, H1 = row 1, H2 = row 2, H3 = row 3, H4 = row 4
        let cases: [(&[usize], [i64; 3], [SignedTrop; 3]); 3] = [
            // {H1, H2, H5} at (4,4,2): y_H5 = ⊖4, y_H1 = ⊖(-1), y_H2 = -1
            (&[0, 1, 2], [4, 4, 2], [SignedTrop::neg(4), SignedTrop::neg(-1), SignedTrop::pos(-1)]),
            // {H1, H2, H3} at (1,0,0): y_H1 = ⊖(-1), y_H2 = -1, y_H3 = 0
            (&[1, 2, 3], [1, 0, 0], [SignedTrop::neg(-1), SignedTrop::pos(-1), SignedTrop::pos(0)]),
            // {H2, H3, H4} at (0,0,0): y_H2 = -1, y_H3 = 0, y_H4 = -2
            (&[2, 3, 4], [0, 0, 0], [SignedTrop::pos(-1), SignedTrop::pos(0), SignedTrop::pos(-2)]),
        ];
        for (rows, point, expected) in cases {
            let basis = Basis::new(rows.to_vec()).unwrap();
            let x: Vec<Rat> = point.iter().map(|&v| rat(v)).collect();
            let y = reduced_costs(&inst, &basis, &x).unwrap();
            assert_eq!(y, expected.to_vec(), "basis {basis}");
        }
    }

    #[test]
    fn reduced_costs_reject_non_basic_points() {
        let inst = running_example();
        let basis = Basis::new(vec![1, 2, 3]).unwrap();
        let x = vec![rat(4), rat(4), rat(2)];
        assert!(matches!(
            reduced_costs(&inst, &basis, &x),
            Err(CramerError::InvalidBasicPoint(_))
        ));
    }
}
