//! The tropical LP data model: a signed constraint matrix `A`, signed
//! right-hand side `b`, unsigned cost `c`, assumption validation,
//! homogenization into `W = (A b)`, and the JSON instance format.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{Mat, SignedMat};
use crate::semiring::{format_rat, parse_rat, Rat, SignedTrop, Trop};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("assumption violated: constraint {0} has no non-null coefficient")]
    AssumptionAViolated(usize),
    #[error("invalid basis: {0}")]
    BadBasis(String),
}

/// A sorted set of `n` constraint indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Basis {
    rows: Vec<usize>,
}

impl Basis {
    pub fn new(mut rows: Vec<usize>) -> Result<Self, InstanceError> {
        rows.sort_unstable();
        let before = rows.len();
        rows.dedup();
        if rows.len() != before {
            return Err(InstanceError::BadBasis("repeated row index".into()));
        }
        Ok(Basis { rows })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.rows.binary_search(&i).is_ok()
    }

    pub fn without(&self, i: usize) -> Vec<usize> {
        self.rows.iter().copied().filter(|&r| r != i).collect()
    }

    pub fn replacing(&self, leave: usize, enter: usize) -> Basis {
        let mut rows = self.without(leave);
        rows.push(enter);
        rows.sort_unstable();
        Basis { rows }
    }
}

impl std::fmt::Display for Basis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// A tropical linear program `minimize c ⊙ x over P(A, b)`.
///
/// Each signed entry of `A` puts its variable on exactly one side of the row
/// inequality, so the "each variable on at most one side" assumption is
/// structural. `assume_positive` attests that every feasible point has
/// finite coordinates when no explicit non-negativity rows are present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub a: SignedMat,
    pub b: Vec<SignedTrop>,
    pub c: Vec<Trop>,
    pub initial_basis: Option<Basis>,
    pub assume_positive: bool,
}

impl Instance {
    pub fn new(
        a: SignedMat,
        b: Vec<SignedTrop>,
        c: Vec<Trop>,
        initial_basis: Option<Basis>,
    ) -> Result<Self, InstanceError> {
        if b.len() != a.rows() {
            return Err(InstanceError::DimensionMismatch(format!(
                "b has {} entries for {} constraints",
                b.len(),
                a.rows()
            )));
        }
        if c.len() != a.cols() {
            return Err(InstanceError::DimensionMismatch(format!(
                "c has {} entries for {} variables",
                c.len(),
                a.cols()
            )));
        }
        let inst = Instance { a, b, c, initial_basis, assume_positive: false };
        for i in 0..inst.m() {
            if inst.row_is_null(i) {
                return Err(InstanceError::AssumptionAViolated(i));
            }
        }
        if let Some(basis) = &inst.initial_basis {
            inst.validate_basis(basis)?;
        }
        Ok(inst)
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    fn row_is_null(&self, i: usize) -> bool {
        (0..self.n()).all(|j| self.a.get(i, j).is_zero()) && self.b[i].is_zero()
    }

    pub fn validate_basis(&self, basis: &Basis) -> Result<(), InstanceError> {
        if basis.len() != self.n() {
            return Err(InstanceError::BadBasis(format!(
                "basis has {} rows, expected {}",
                basis.len(),
                self.n()
            )));
        }
        if let Some(&max) = basis.rows().last() {
            if max >= self.m() {
                return Err(InstanceError::BadBasis(format!(
                    "row index {max} out of range (m = {})",
                    self.m()
                )));
            }
        }
        Ok(())
    }

    /// True iff row `i` is the explicit non-negativity row for variable `j`:
    /// the `j`-th coefficient is the tropical unit and everything else
    /// (including `b_i`) is tropical zero.
    pub fn is_unit_row(&self, i: usize, j: usize) -> bool {
        self.b[i].is_zero()
            && (0..self.n()).all(|k| {
                if k == j {
                    *self.a.get(i, k) == SignedTrop::one()
                } else {
                    self.a.get(i, k).is_zero()
                }
            })
    }

    /// Variables whose non-negativity row is missing from the external
    /// representation. Empty means the positivity assumption holds
    /// structurally.
    pub fn vars_missing_unit_row(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&j| !(0..self.m()).any(|i| self.is_unit_row(i, j)))
            .collect()
    }

    pub fn positivity_ok(&self) -> bool {
        self.assume_positive || self.vars_missing_unit_row().is_empty()
    }

    /// Row inequality check `A_i⁺ ⊙ x ⊕ b_i⁺ >= A_i⁻ ⊙ x ⊕ b_i⁻`.
    pub fn row_sides(&self, i: usize, x: &[Trop]) -> (Trop, Trop) {
        let mut pos = self.b[i].pos_part();
        let mut neg = self.b[i].neg_part();
        for j in 0..self.n() {
            pos = pos.tadd(&self.a.get(i, j).pos_part().tmul(&x[j]));
            neg = neg.tadd(&self.a.get(i, j).neg_part().tmul(&x[j]));
        }
        (pos, neg)
    }

    pub fn feasible(&self, x: &[Trop]) -> bool {
        assert_eq!(x.len(), self.n());
        (0..self.m()).all(|i| {
            let (pos, neg) = self.row_sides(i, x);
            pos >= neg
        })
    }

    /// Objective value `c ⊙ x = max_j (c_j + x_j)`.
    pub fn objective(&self, x: &[Trop]) -> Trop {
        assert_eq!(x.len(), self.n());
        let mut best = Trop::NegInf;
        for j in 0..self.n() {
            best = best.tadd(&self.c[j].tmul(&x[j]));
        }
        best
    }

    pub fn objective_at_rat(&self, x: &[Rat]) -> Trop {
        let tx: Vec<Trop> = x.iter().map(|r| Trop::Fin(r.clone())).collect();
        self.objective(&tx)
    }

    pub fn feasible_rat(&self, x: &[Rat]) -> bool {
        let tx: Vec<Trop> = x.iter().map(|r| Trop::Fin(r.clone())).collect();
        self.feasible(&tx)
    }

    /// `W = (A b)`, the homogenized constraint matrix.
    pub fn homogenize(&self) -> Homogenized {
        let mut rows = Vec::with_capacity(self.m());
        for i in 0..self.m() {
            let mut row = Vec::with_capacity(self.n() + 1);
            for j in 0..self.n() {
                row.push(self.a.get(i, j).clone());
            }
            row.push(self.b[i].clone());
            rows.push(row);
        }
        Homogenized { w: Mat::from_rows(rows) }
    }

    /// The dual-side matrix `(Aᵀ cᵀ)` whose sign genericity is the dual
    /// non-degeneracy condition.
    pub fn dual_matrix(&self) -> SignedMat {
        let mut rows = Vec::with_capacity(self.n());
        for j in 0..self.n() {
            let mut row = Vec::with_capacity(self.m() + 1);
            for i in 0..self.m() {
                row.push(self.a.get(i, j).clone());
            }
            row.push(SignedTrop::from_trop(&self.c[j]));
            rows.push(row);
        }
        Mat::from_rows(rows)
    }

    pub fn parse(bytes: &[u8]) -> Result<Instance, InstanceError> {
        let raw: RawInstance = serde_json::from_slice(bytes)
            .map_err(|e| InstanceError::Parse(e.to_string()))?;
        raw.into_instance()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RawInstance::from_instance(self))
            .expect("instance serialization cannot fail")
    }
}

/// The homogenized matrix `W = (A b)` acting on projective points with
/// `n + 1` coordinates; the last coordinate is the affine component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homogenized {
    pub w: SignedMat,
}

impl Homogenized {
    pub fn m(&self) -> usize {
        self.w.rows()
    }

    /// Number of original variables; coordinates run over `0..=n`.
    pub fn n(&self) -> usize {
        self.w.cols() - 1
    }

    pub fn coords(&self) -> usize {
        self.w.cols()
    }

    pub fn pos_dot(&self, i: usize, x: &[Rat]) -> Trop {
        let mut best = Trop::NegInf;
        for j in 0..self.coords() {
            best = best.tadd(&self.w.get(i, j).pos_part().tmul(&Trop::Fin(x[j].clone())));
        }
        best
    }

    pub fn neg_dot(&self, i: usize, x: &[Rat]) -> Trop {
        let mut best = Trop::NegInf;
        for j in 0..self.coords() {
            best = best.tadd(&self.w.get(i, j).neg_part().tmul(&Trop::Fin(x[j].clone())));
        }
        best
    }

    /// Recovers `b` from the last column.
    pub fn dehomogenize_b(&self) -> Vec<SignedTrop> {
        (0..self.m()).map(|i| self.w.get(i, self.n()).clone()).collect()
    }
}

/// Normalizes a projective point to the affine chart: last coordinate zero.
pub fn to_chart(x: &[Rat]) -> Vec<Rat> {
    let last = x.last().expect("point must have coordinates").clone();
    x.iter().map(|v| v - &last).collect()
}

/// Drops the affine coordinate of a chart-normalized projective point.
pub fn dehomogenize_point(x: &[Rat]) -> Vec<Rat> {
    let chart = to_chart(x);
    chart[..chart.len() - 1].to_vec()
}

// --- JSON wire format -------------------------------------------------
//
// {"num_vars": n, "num_constraints": m,
//  "A": [[entry, ...], ...], "b": [entry, ...], "c": [num|null, ...],
//  "initial_basis": [i, ...]?}
//
// entry := null | {"s": "+"|"-", "v": num}
// num   := integer | decimal string | "p/q" string

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawInstance {
    num_vars: usize,
    num_constraints: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<RawEntry>>,
    b: Vec<RawEntry>,
    c: Vec<Option<RawNum>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    initial_basis: Option<Vec<usize>>,
}

type RawEntry = Option<RawSigned>;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawSigned {
    s: String,
    v: RawNum,
}

#[derive(Debug, Clone)]
struct RawNum(Rat);

impl Serialize for RawNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            if let Some(i) = self.0.numer().to_i64() {
                return serializer.serialize_i64(i);
            }
        }
        serializer.serialize_str(&format_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for RawNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            Int(i64),
            Str(String),
        }
        match Wire::deserialize(deserializer)? {
            Wire::Int(i) => Ok(RawNum(Rat::from_integer(BigInt::from(i)))),
            Wire::Str(s) => parse_rat(&s).map(RawNum).map_err(D::Error::custom),
        }
    }
}

impl RawInstance {
    fn into_instance(self) -> Result<Instance, InstanceError> {
        let (m, n) = (self.num_constraints, self.num_vars);
        if m == 0 || n == 0 {
            return Err(InstanceError::DimensionMismatch(
                "num_vars and num_constraints must be positive".into(),
            ));
        }
        if self.a.len() != m {
            return Err(InstanceError::DimensionMismatch(format!(
                "A has {} rows, expected {m}",
                self.a.len()
            )));
        }
        let mut rows = Vec::with_capacity(m);
        for (i, raw_row) in self.a.into_iter().enumerate() {
            if raw_row.len() != n {
                return Err(InstanceError::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {n}",
                    raw_row.len()
                )));
            }
            let mut row = Vec::with_capacity(n);
            for e in raw_row {
                row.push(decode_entry(e)?);
            }
            rows.push(row);
        }
        if self.b.len() != m {
            return Err(InstanceError::DimensionMismatch(format!(
                "b has {} entries, expected {m}",
                self.b.len()
            )));
        }
        let b: Vec<SignedTrop> =
            self.b.into_iter().map(decode_entry).collect::<Result<_, _>>()?;
        if self.c.len() != n {
            return Err(InstanceError::DimensionMismatch(format!(
                "c has {} entries, expected {n}",
                self.c.len()
            )));
        }
        let c: Vec<Trop> = self
            .c
            .into_iter()
            .map(|e| match e {
                None => Trop::NegInf,
                Some(RawNum(r)) => Trop::Fin(r),
            })
            .collect();
        let basis = self.initial_basis.map(Basis::new).transpose()?;
        Instance::new(Mat::from_rows(rows), b, c, basis)
    }

    fn from_instance(inst: &Instance) -> RawInstance {
        RawInstance {
            num_vars: inst.n(),
            num_constraints: inst.m(),
            a: (0..inst.m())
                .map(|i| (0..inst.n()).map(|j| encode_entry(inst.a.get(i, j))).collect())
                .collect(),
            b: inst.b.iter().map(encode_entry).collect(),
            c: inst
                .c
                .iter()
                .map(|t| t.as_rat().map(|r| RawNum(r.clone())))
                .collect(),
            initial_basis: inst.initial_basis.as_ref().map(|b| b.rows().to_vec()),
        }
    }
}

fn decode_entry(e: RawEntry) -> Result<SignedTrop, InstanceError> {
    match e {
        None => Ok(SignedTrop::Zero),
        Some(RawSigned { s, v }) => match s.as_str() {
            "+" => Ok(SignedTrop::Pos(v.0)),
            "-" => Ok(SignedTrop::Neg(v.0)),
            other => Err(InstanceError::Parse(format!("bad sign {other:?}, expected \"+\" or \"-\""))),
        },
    }
}

fn encode_entry(e: &SignedTrop) -> RawEntry {
    match e {
        SignedTrop::Zero => None,
        SignedTrop::Pos(r) => Some(RawSigned { s: "+".into(), v: RawNum(r.clone()) }),
        SignedTrop::Neg(r) => Some(RawSigned { s: "-".into(), v: RawNum(r.clone()) }),
    }
}

/// Encodes a signed value in the instance entry convention (used by traces
/// and reports; balanced values encode with sign "b").
pub fn signed_to_json(v: &SignedTrop) -> serde_json::Value {
    match v {
        SignedTrop::Zero => serde_json::Value::Null,
        SignedTrop::Pos(r) => serde_json::json!({"s": "+", "v": rat_to_json(r)}),
        SignedTrop::Neg(r) => serde_json::json!({"s": "-", "v": rat_to_json(r)}),
    }
}

pub fn rat_to_json(r: &Rat) -> serde_json::Value {
    if r.denom().is_one() {
        if let Some(i) = r.numer().to_i64() {
            return serde_json::Value::from(i);
        }
    }
    serde_json::Value::from(format_rat(r))
}

pub fn trop_to_json(t: &Trop) -> serde_json::Value {
    match t {
        Trop::NegInf => serde_json::Value::Null,
        Trop::Fin(r) => rat_to_json(r),
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// The worked 3-variable example used throughout the solver tests.
    ///
    /// Rows (0-based), in the order the constraints were numbered:
    ///   0:  0 >= x2 - 4
    ///   1:  max(0, x2 - 1) >= max(x1 - 1, x3 - 1)
    ///   2:  x3 >= max(0, x2 - 2)
    ///   3:  x2 >= 0
    ///   4:  x1 >= max(0, x2 - 3)
    /// objective: minimize max(x1 - 2, x2, x3 - 1)
    pub fn running_example() -> Instance {
        let z = SignedTrop::Zero;
        let a = Mat::from_rows(vec![
            vec![z.clone(), SignedTrop::neg(-4), z.clone()],
            vec![SignedTrop::neg(-1), SignedTrop::pos(-1), SignedTrop::neg(-1)],
            vec![z.clone(), SignedTrop::neg(-2), SignedTrop::pos(0)],
            vec![z.clone(), SignedTrop::pos(0), z.clone()],
            vec![SignedTrop::pos(0), SignedTrop::neg(-3), z.clone()],
        ]);
        let b = vec![
            SignedTrop::pos(0),
            SignedTrop::pos(0),
            SignedTrop::neg(0),
            SignedTrop::neg(0),
            SignedTrop::neg(0),
        ];
        let c = vec![Trop::fin(-2), Trop::fin(0), Trop::fin(-1)];
        let mut inst = Instance::new(a, b, c, None).unwrap();
        inst.assume_positive = true;
        inst
    }

    /// The 2-variable introductory example (4 half-spaces) plus explicit
    /// non-negativity rows 4 and 5.
    pub fn intro_example_with_unit_rows() -> Instance {
        let z = SignedTrop::Zero;
        let a = Mat::from_rows(vec![
            vec![SignedTrop::pos(-5), SignedTrop::pos(-3)],
            vec![SignedTrop::neg(-7), SignedTrop::pos(-5)],
            vec![SignedTrop::pos(-7), SignedTrop::pos(-2)],
            vec![SignedTrop::pos(-2), SignedTrop::neg(-6)],
            vec![SignedTrop::one(), z.clone()],
            vec![z.clone(), SignedTrop::one()],
        ]);
        let b = vec![
            SignedTrop::neg(0),
            SignedTrop::pos(0),
            SignedTrop::neg(0),
            SignedTrop::neg(0),
            SignedTrop::Zero,
            SignedTrop::Zero,
        ];
        let c = vec![Trop::fin(0), Trop::fin(0)];
        Instance::new(a, b, c, None).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::{intro_example_with_unit_rows, running_example};
    use super::*;
    use crate::semiring::rat;

    const RUNNING_JSON: &str = r#"{
        "num_vars": 3, "num_constraints": 5,
        "A": [
            [null, {"s": "-", "v": -4}, null],
            [{"s": "-", "v": -1}, {"s": "+", "v": -1}, {"s": "-", "v": -1}],
            [null, {"s": "-", "v": -2}, {"s": "+", "v": 0}],
            [null, {"s": "+", "v": 0}, null],
            [{"s": "+", "v": 0}, {"s": "-", "v": -3}, null]
        ],
        "b": [
            {"s": "+", "v": 0}, {"s": "+", "v": 0}, {"s": "-", "v": 0},
            {"s": "-", "v": 0}, {"s": "-", "v": 0}
        ],
        "c": [-2, 0, -1],
        "initial_basis": [0, 1, 2]
    }"#;

    #[test]
    fn parses_the_running_example() {
        let inst = Instance::parse(RUNNING_JSON.as_bytes()).unwrap();
        assert_eq!(inst.m(), 5);
        assert_eq!(inst.n(), 3);
        let mut expected = running_example();
        expected.assume_positive = false;
        expected.initial_basis = Some(Basis::new(vec![0, 1, 2]).unwrap());
        assert_eq!(inst, expected);
    }

    #[test]
    fn parses_the_intro_example() {
        let inst = intro_example_with_unit_rows();
        assert_eq!(inst.m(), 6);
        assert_eq!(inst.n(), 2);
        assert!(inst.positivity_ok());
    }

    #[test]
    fn all_null_row_violates_assumption_a() {
        let json = r#"{
            "num_vars": 1, "num_constraints": 1,
            "A": [[null]], "b": [null], "c": [0]
        }"#;
        assert!(matches!(
            Instance::parse(json.as_bytes()),
            Err(InstanceError::AssumptionAViolated(0))
        ));
    }

    #[test]
    fn round_trip_preserves_the_instance() {
        let inst = Instance::parse(RUNNING_JSON.as_bytes()).unwrap();
        let again = Instance::parse(inst.to_json().as_bytes()).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn rational_and_decimal_entries_parse_exactly() {
        let json = r#"{
            "num_vars": 1, "num_constraints": 1,
            "A": [[{"s": "+", "v": "3/2"}]], "b": [{"s": "-", "v": "-0.25"}], "c": ["1/3"]
        }"#;
        let inst = Instance::parse(json.as_bytes()).unwrap();
        assert_eq!(*inst.a.get(0, 0), SignedTrop::Pos(crate::semiring::ratio(3, 2)));
        assert_eq!(inst.b[0], SignedTrop::Neg(crate::semiring::ratio(-1, 4)));
        assert_eq!(inst.c[0], Trop::Fin(crate::semiring::ratio(1, 3)));
        let again = Instance::parse(inst.to_json().as_bytes()).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn feasibility_on_the_running_example() {
        let inst = running_example();
        let origin = vec![Trop::fin(0), Trop::fin(0), Trop::fin(0)];
        assert!(inst.feasible(&origin));
        // row 0 reads 0 >= x2 - 4, violated at x2 = 5
        let bad = vec![Trop::fin(0), Trop::fin(5), Trop::fin(0)];
        assert!(!inst.feasible(&bad));
    }

    #[test]
    fn feasibility_with_infinite_coordinates_reduces_to_constants() {
        let inst = running_example();
        // with x = (-inf, -inf, -inf) each row compares b+ against b-
        let x = vec![Trop::NegInf, Trop::NegInf, Trop::NegInf];
        // rows 2..4 have b = ⊖0, so their right side (0) beats the left (-inf)
        assert!(!inst.feasible(&x));
    }

    #[test]
    fn objective_values() {
        let inst = running_example();
        let origin = vec![Trop::fin(0); 3];
        assert_eq!(inst.objective(&origin), Trop::fin(0));
        let p = vec![Trop::fin(4), Trop::fin(4), Trop::fin(2)];
        assert_eq!(inst.objective(&p), Trop::fin(4));
        let zero_c = Instance::new(
            inst.a.clone(),
            inst.b.clone(),
            vec![Trop::NegInf; 3],
            None,
        )
        .unwrap();
        assert_eq!(zero_c.objective(&origin), Trop::NegInf);
    }

    #[test]
    fn homogenization_appends_b_as_last_column() {
        let inst = running_example();
        let h = inst.homogenize();
        assert_eq!(h.m(), 5);
        assert_eq!(h.n(), 3);
        assert_eq!(h.dehomogenize_b(), inst.b);
        // row 1 of W reads max(x4, x2 - 1) >= max(x1 - 1, x3 - 1)
        let x = vec![rat(1), rat(0), rat(0), rat(0)];
        assert_eq!(h.pos_dot(1, &x), Trop::fin(0));
        assert_eq!(h.neg_dot(1, &x), Trop::fin(0));
    }

    #[test]
    fn homogenized_feasibility_matches_affine_feasibility() {
        let inst = running_example();
        let h = inst.homogenize();
        for x in [
            vec![rat(0), rat(0), rat(0)],
            vec![rat(4), rat(4), rat(2)],
            vec![rat(1), rat(7), rat(0)],
            vec![rat(-3), rat(1), rat(5)],
        ] {
            let mut proj = x.clone();
            proj.push(rat(0));
            let homog_ok =
                (0..h.m()).all(|i| h.pos_dot(i, &proj) >= h.neg_dot(i, &proj));
            assert_eq!(homog_ok, inst.feasible_rat(&x));
        }
    }

    #[test]
    fn single_row_homogenization() {
        let a = Mat::from_rows(vec![vec![SignedTrop::pos(2)]]);
        let inst =
            Instance::new(a, vec![SignedTrop::neg(5)], vec![Trop::fin(0)], None).unwrap();
        let h = inst.homogenize();
        assert_eq!((h.m(), h.coords()), (1, 2));
    }

    #[test]
    fn unit_row_detection() {
        let inst = intro_example_with_unit_rows();
        assert!(inst.is_unit_row(4, 0));
        assert!(inst.is_unit_row(5, 1));
        assert!(!inst.is_unit_row(0, 0));
        assert_eq!(inst.vars_missing_unit_row(), Vec::<usize>::new());
        let running = running_example();
        assert_eq!(running.vars_missing_unit_row(), vec![0, 1, 2]);
        assert!(running.positivity_ok(), "explicitly attested");
    }
}
