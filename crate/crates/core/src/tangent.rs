//! Tangent graphs and digraphs at points of the homogenized cone.
//!
//! The tangent digraph at a point is a bipartite digraph over the `n + 1`
//! coordinate nodes and the tight constraint rows; an arc joins row `i` and
//! coordinate `j` when `j` attains `max_l |W_il| + x_l`, oriented from the
//! coordinate to the row when `W_ij` is tropically positive. It encodes the
//! local geometry of the cone: feasible directions along an edge and the
//! maximizing permutation of the active basis can both be read off it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::instance::Homogenized;
use crate::semiring::{Rat, Sign, Trop};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangentError {
    #[error("coordinate {0} of the point is -inf")]
    InfiniteCoordinate(usize),
    #[error("point violates constraint {0}")]
    InfeasiblePoint(usize),
    #[error("tangent graph contains an undirected cycle: the matrix is not tropically generic")]
    CyclicGraph,
    #[error("tangent digraph does not match any edge shape (degenerate input)")]
    NotOnEdge,
    #[error("tangent digraph has the wrong shape for this query: {0}")]
    WrongShape(String),
}

/// Orientation of a tangent arc. `CoordToRow` marks a tropically positive
/// entry, `RowToCoord` a negative one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    CoordToRow,
    RowToCoord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub row: usize,
    pub coord: usize,
    pub orientation: Orientation,
}

/// A set of coordinate nodes, i.e. a subset of `0..=n`, doubling as the
/// direction vector `e^J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordSet {
    mask: Vec<bool>,
}

impl CoordSet {
    pub fn empty(coords: usize) -> Self {
        CoordSet { mask: vec![false; coords] }
    }

    pub fn from_members(coords: usize, members: &[usize]) -> Self {
        let mut s = CoordSet::empty(coords);
        for &j in members {
            s.insert(j);
        }
        s
    }

    pub fn coords(&self) -> usize {
        self.mask.len()
    }

    pub fn insert(&mut self, j: usize) {
        self.mask[j] = true;
    }

    pub fn contains(&self, j: usize) -> bool {
        self.mask[j]
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&j| self.mask[j]).collect()
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.iter().all(|&b| !b)
    }

    pub fn is_proper(&self) -> bool {
        let k = self.len();
        k > 0 && k < self.coords()
    }

    pub fn is_subset_of(&self, other: &CoordSet) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    /// Members of `other \ self`.
    pub fn difference_members(&self, other: &CoordSet) -> Vec<usize> {
        (0..self.mask.len()).filter(|&j| other.mask[j] && !self.mask[j]).collect()
    }
}

impl std::fmt::Display for CoordSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, j) in self.members().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}")
    }
}

/// Shape of the tangent digraph at a point of a tropical edge `E_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// Spanning tree with `n` hyperplane nodes: a basic point for
    /// `K ∪ {extra}`.
    BasicPoint { extra: usize },
    /// Forest with two weak components and hyperplane node set `K`: the
    /// relative interior of an ordinary segment. `component` is the
    /// coordinate set of the component containing coordinate node 0.
    InteriorOfSegment { component: CoordSet },
    /// Spanning tree with hyperplane node set `K` and a unique node of
    /// degree (2,1) or (1,2).
    Breakpoint { node: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentDigraph {
    coords: usize,
    /// Arcs per hyperplane node, keyed by constraint row index. Each arc
    /// lists the coordinate endpoint and its orientation.
    row_arcs: BTreeMap<usize, Vec<(usize, Orientation)>>,
}

/// Builds the tangent digraph of `W` at a projective point with finite
/// coordinates. O(mn).
pub fn build(h: &Homogenized, x: &[Trop]) -> Result<TangentDigraph, TangentError> {
    assert_eq!(x.len(), h.coords(), "point has the wrong number of coordinates");
    let mut xr: Vec<Rat> = Vec::with_capacity(x.len());
    for (j, v) in x.iter().enumerate() {
        match v.as_rat() {
            Some(r) => xr.push(r.clone()),
            None => return Err(TangentError::InfiniteCoordinate(j)),
        }
    }
    build_at_rat(h, &xr)
}

pub fn build_at_rat(h: &Homogenized, x: &[Rat]) -> Result<TangentDigraph, TangentError> {
    assert_eq!(x.len(), h.coords());
    let mut row_arcs = BTreeMap::new();
    for i in 0..h.m() {
        let pos = h.pos_dot(i, x);
        let neg = h.neg_dot(i, x);
        if pos < neg {
            return Err(TangentError::InfeasiblePoint(i));
        }
        if pos != neg || pos.is_zero() {
            continue;
        }
        let target = pos.as_rat().expect("tight value is finite").clone();
        let mut arcs = Vec::new();
        for j in 0..h.coords() {
            let e = h.w.get(i, j);
            if let Trop::Fin(m) = e.modulus() {
                if m + &x[j] == target {
                    let orientation = match e.sign() {
                        Sign::Pos => Orientation::CoordToRow,
                        Sign::Neg => Orientation::RowToCoord,
                        Sign::Zero => unreachable!("finite modulus"),
                    };
                    arcs.push((j, orientation));
                }
            }
        }
        row_arcs.insert(i, arcs);
    }
    let g = TangentDigraph { coords: h.coords(), row_arcs };
    if !g.is_forest() {
        return Err(TangentError::CyclicGraph);
    }
    Ok(g)
}

impl TangentDigraph {
    pub fn coords(&self) -> usize {
        self.coords
    }

    /// Tight constraint rows, ascending.
    pub fn hyperplane_rows(&self) -> Vec<usize> {
        self.row_arcs.keys().copied().collect()
    }

    pub fn has_row(&self, row: usize) -> bool {
        self.row_arcs.contains_key(&row)
    }

    pub fn arcs_of_row(&self, row: usize) -> &[(usize, Orientation)] {
        self.row_arcs.get(&row).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn arcs(&self) -> Vec<Arc> {
        let mut out = Vec::new();
        for (&row, arcs) in &self.row_arcs {
            for &(coord, orientation) in arcs {
                out.push(Arc { row, coord, orientation });
            }
        }
        out
    }

    /// (incoming, outgoing) arc counts of a hyperplane node.
    pub fn degree(&self, row: usize) -> (usize, usize) {
        let mut incoming = 0;
        let mut outgoing = 0;
        for &(_, o) in self.arcs_of_row(row) {
            match o {
                Orientation::CoordToRow => incoming += 1,
                Orientation::RowToCoord => outgoing += 1,
            }
        }
        (incoming, outgoing)
    }

    pub fn remove_row(&mut self, row: usize) {
        self.row_arcs.remove(&row);
    }

    pub fn add_arc(&mut self, arc: Arc) {
        self.row_arcs.entry(arc.row).or_default().push((arc.coord, arc.orientation));
    }

    pub fn remove_arc(&mut self, row: usize, coord: usize) {
        if let Some(arcs) = self.row_arcs.get_mut(&row) {
            arcs.retain(|&(c, _)| c != coord);
            if arcs.is_empty() {
                self.row_arcs.remove(&row);
            }
        }
    }

    fn coord_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.coords];
        for (&row, arcs) in &self.row_arcs {
            for &(coord, _) in arcs {
                adj[coord].push(row);
            }
        }
        adj
    }

    /// Undirected acyclicity over the bipartite node set.
    pub fn is_forest(&self) -> bool {
        let nodes = self.coords + self.row_arcs.len();
        let edges: usize = self.row_arcs.values().map(Vec::len).sum();
        let components = self.count_weak_components();
        nodes == edges + components
    }

    fn count_weak_components(&self) -> usize {
        let adj = self.coord_adjacency();
        let mut coord_seen = vec![false; self.coords];
        let mut row_seen: BTreeMap<usize, bool> =
            self.row_arcs.keys().map(|&r| (r, false)).collect();
        let mut components = 0;
        for start in 0..self.coords {
            if coord_seen[start] {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            coord_seen[start] = true;
            while let Some(c) = stack.pop() {
                for &row in &adj[c] {
                    if row_seen[&row] {
                        continue;
                    }
                    row_seen.insert(row, true);
                    for &(c2, _) in self.arcs_of_row(row) {
                        if !coord_seen[c2] {
                            coord_seen[c2] = true;
                            stack.push(c2);
                        }
                    }
                }
            }
        }
        components += row_seen.values().filter(|&&s| !s).count();
        components
    }

    /// Coordinate nodes weakly connected to `start`, optionally skipping a
    /// hyperplane node or a single arc. O(n).
    pub fn weak_coord_component(
        &self,
        start: usize,
        skip_row: Option<usize>,
        skip_arc: Option<(usize, usize)>,
    ) -> CoordSet {
        let mut set = CoordSet::empty(self.coords);
        set.insert(start);
        let adj = self.coord_adjacency();
        let mut row_seen: BTreeMap<usize, bool> =
            self.row_arcs.keys().map(|&r| (r, false)).collect();
        let allowed = |row: usize, coord: usize| {
            Some(row) != skip_row && Some((row, coord)) != skip_arc
        };
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for &row in &adj[c] {
                if !allowed(row, c) || row_seen[&row] {
                    continue;
                }
                row_seen.insert(row, true);
                for &(c2, _) in self.arcs_of_row(row) {
                    if allowed(row, c2) && !set.contains(c2) {
                        set.insert(c2);
                        stack.push(c2);
                    }
                }
            }
        }
        set
    }

    /// Classifies the digraph built at a point of the edge `E_K`.
    ///
    /// `k` is the defining set of `n - 1` rows. Any structure outside the
    /// three edge shapes signals degeneracy and returns `NotOnEdge`.
    pub fn classify(&self, k: &[usize]) -> Result<Classification, TangentError> {
        let n = self.coords - 1;
        if k.len() + 1 != n {
            return Err(TangentError::WrongShape(format!(
                "K has {} rows, expected {}",
                k.len(),
                n - 1
            )));
        }
        let rows = self.hyperplane_rows();
        if !k.iter().all(|r| self.has_row(*r)) {
            return Err(TangentError::NotOnEdge);
        }
        let edges: usize = self.row_arcs.values().map(Vec::len).sum();
        let components = self.count_weak_components();
        if rows.len() == n {
            // candidate basic point: one extra hyperplane node, spanning tree
            let extras: Vec<usize> = rows.iter().copied().filter(|r| !k.contains(r)).collect();
            if extras.len() != 1 || components != 1 || edges != 2 * n {
                return Err(TangentError::NotOnEdge);
            }
            if !rows.iter().all(|&r| self.degree(r) == (1, 1)) {
                return Err(TangentError::NotOnEdge);
            }
            return Ok(Classification::BasicPoint { extra: extras[0] });
        }
        if rows.len() + 1 == n {
            if rows.iter().any(|r| !k.contains(r)) {
                return Err(TangentError::NotOnEdge);
            }
            if components == 2 && rows.iter().all(|&r| self.degree(r) == (1, 1)) {
                let component = self.weak_coord_component(0, None, None);
                return Ok(Classification::InteriorOfSegment { component });
            }
            if components == 1 {
                let mut special = None;
                for &r in &rows {
                    match self.degree(r) {
                        (1, 1) => {}
                        (2, 1) | (1, 2) => {
                            if special.replace(r).is_some() {
                                return Err(TangentError::NotOnEdge);
                            }
                        }
                        _ => return Err(TangentError::NotOnEdge),
                    }
                }
                if let Some(node) = special {
                    return Ok(Classification::Breakpoint { node });
                }
            }
        }
        Err(TangentError::NotOnEdge)
    }

    /// At a basic point (digraph shape C1), the direction set of the initial
    /// ordinary segment of the edge leaving hyperplane `i_lv`: the coordinate
    /// nodes weakly connected to the positive-side argmax of row `i_lv` once
    /// that row is removed.
    pub fn direction_from_basic(&self, i_lv: usize) -> Result<CoordSet, TangentError> {
        let arcs = self.arcs_of_row(i_lv);
        if self.degree(i_lv) != (1, 1) {
            return Err(TangentError::WrongShape(format!(
                "hyperplane node {i_lv} does not have degree (1,1)"
            )));
        }
        let j_plus = arcs
            .iter()
            .find(|(_, o)| *o == Orientation::CoordToRow)
            .map(|&(c, _)| c)
            .ok_or_else(|| TangentError::WrongShape("no incoming arc".into()))?;
        let j = self.weak_coord_component(j_plus, Some(i_lv), None);
        if !j.is_proper() {
            return Err(TangentError::WrongShape("direction set is not proper".into()));
        }
        Ok(j)
    }

    /// At a breakpoint with special node `k`, the next direction set: the
    /// coordinate nodes weakly connected to `k` after removing the arc
    /// `a_lv` (one of the two same-oriented arcs at `k`).
    pub fn direction_from_breakpoint(
        &self,
        k: usize,
        a_lv: (usize, usize),
    ) -> Result<CoordSet, TangentError> {
        if a_lv.0 != k || !self.arcs_of_row(k).iter().any(|&(c, _)| c == a_lv.1) {
            return Err(TangentError::WrongShape(format!(
                "arc ({}, {}) is not incident to node {k}",
                a_lv.0, a_lv.1
            )));
        }
        // anchor the search at k through any of its remaining arcs
        let anchor = self
            .arcs_of_row(k)
            .iter()
            .map(|&(c, _)| c)
            .find(|&c| c != a_lv.1)
            .ok_or_else(|| TangentError::WrongShape("node has a single arc".into()))?;
        let mut j = self.weak_coord_component(anchor, None, Some(a_lv));
        // the anchor coordinate is connected to k by construction
        j.insert(anchor);
        if !j.is_proper() {
            return Err(TangentError::WrongShape("direction set is not proper".into()));
        }
        Ok(j)
    }

    /// The unique matching between hyperplane nodes and the coordinate nodes
    /// `0..n` obtained by orienting the spanning tree towards the affine
    /// coordinate node `n`; it maximizes `tper(|A_I|)`. O(n).
    pub fn matching_permutation(&self) -> Result<BTreeMap<usize, usize>, TangentError> {
        let n = self.coords - 1;
        let rows = self.hyperplane_rows();
        let edges: usize = self.row_arcs.values().map(Vec::len).sum();
        if rows.len() != n || edges != 2 * n || self.count_weak_components() != 1 {
            return Err(TangentError::WrongShape(
                "matching requires the spanning-tree shape of a basic point".into(),
            ));
        }
        // BFS from the affine node; every coordinate node j < n is matched to
        // its parent hyperplane node on the path towards the root.
        let adj = self.coord_adjacency();
        let root = n;
        let mut matching = BTreeMap::new();
        let mut coord_seen = vec![false; self.coords];
        coord_seen[root] = true;
        let mut row_seen: BTreeMap<usize, bool> = rows.iter().map(|&r| (r, false)).collect();
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(c) = queue.pop_front() {
            for &row in &adj[c] {
                if row_seen[&row] {
                    continue;
                }
                row_seen.insert(row, true);
                for &(c2, _) in self.arcs_of_row(row) {
                    if !coord_seen[c2] {
                        coord_seen[c2] = true;
                        // row is the first hyperplane on c2's path to the root
                        matching.insert(row, c2);
                        queue.push_back(c2);
                    }
                }
            }
        }
        if matching.len() != n {
            return Err(TangentError::WrongShape("tree traversal did not match all rows".into()));
        }
        Ok(matching)
    }

    /// Graphviz rendering. Coordinate nodes are circles labeled x1..x(n+1),
    /// hyperplane nodes are boxes labeled by constraint row.
    pub fn to_dot(&self, one_based: bool) -> String {
        let offset = usize::from(one_based);
        let mut s = String::from("digraph tangent {\n  rankdir=LR;\n");
        for j in 0..self.coords {
            let _ = writeln!(s, "  x{} [shape=circle, label=\"{}\"];", j, j + 1);
        }
        for &row in self.row_arcs.keys() {
            let _ = writeln!(s, "  r{} [shape=box, label=\"R{}\"];", row, row + offset);
        }
        for arc in self.arcs() {
            let _ = match arc.orientation {
                Orientation::CoordToRow => writeln!(s, "  x{} -> r{};", arc.coord, arc.row),
                Orientation::RowToCoord => writeln!(s, "  r{} -> x{};", arc.row, arc.coord),
            };
        }
        s.push_str("}\n");
        s
    }
}
