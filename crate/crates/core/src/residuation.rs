//! Residuation conditions on finite partially ordered commutative groupoids,
//! plus the conlinear-space axioms on finite carriers.
//!
//! Elements are indices into the carrier; labels are only used for reports.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extreal::{Ext, UpReal};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupoidError {
    #[error("carrier is empty")]
    Empty,
    #[error("table `{0}` must be {1}x{1}")]
    Shape(&'static str, usize),
    #[error("add[{0}][{1}] = {2} is not an element index")]
    OutOfRange(usize, usize, usize),
    #[error("addition is not commutative at ({0}, {1})")]
    NotCommutative(String, String),
    #[error("order is not reflexive at {0}")]
    NotReflexive(String),
    #[error("order is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive at ({0}, {1}, {2})")]
    NotTransitive(String, String, String),
    #[error("addition is not order compatible: {0} <= {1} but {0}+{2} !<= {1}+{2}")]
    NotCompatible(String, String, String),
    #[error("scalar {0} is missing from the probe set")]
    MissingScalar(f64),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("add[{0}][{1}] = `{2}` is not in the carrier")]
    UnknownLabel(usize, usize, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Inf,
    Sup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    A,
    B,
    C,
    D,
}

impl Condition {
    pub const ALL: [Condition; 4] = [Condition::A, Condition::B, Condition::C, Condition::D];
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GroupoidSpec", into = "GroupoidSpec")]
pub struct FiniteOrderedGroupoid {
    labels: Vec<String>,
    add: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
}

/// JSON form: `{"carrier": [..], "add": [[..]], "leq": [[..]]}` with sums
/// given as carrier labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupoidSpec {
    pub carrier: Vec<String>,
    pub add: Vec<Vec<String>>,
    pub leq: Vec<Vec<bool>>,
}

impl TryFrom<GroupoidSpec> for FiniteOrderedGroupoid {
    type Error = GroupoidError;

    fn try_from(s: GroupoidSpec) -> Result<Self, GroupoidError> {
        FiniteOrderedGroupoid::from_labelled(s.carrier, s.add, s.leq)
    }
}

impl From<FiniteOrderedGroupoid> for GroupoidSpec {
    fn from(g: FiniteOrderedGroupoid) -> GroupoidSpec {
        let add = g.add.iter().map(|r| r.iter().map(|&k| g.labels[k].clone()).collect()).collect();
        GroupoidSpec { carrier: g.labels, add, leq: g.leq }
    }
}

/// A violating tuple. `subset` is only set for condition (c).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub u: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub mode: Mode,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    /// True when every subset was enumerated for condition (c).
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub mode: Mode,
    pub agree: bool,
    pub is_lattice: bool,
    pub reports: Vec<ConditionReport>,
}

/// Subsets for (c) are enumerated exhaustively up to this carrier size.
pub const EXHAUSTIVE_SUBSET_LIMIT: usize = 6;
const SAMPLED_SUBSETS: usize = 256;
const MAX_WITNESSES: usize = 8;

impl FiniteOrderedGroupoid {
    pub fn new(labels: Vec<String>, add: Vec<Vec<usize>>, leq: Vec<Vec<bool>>) -> Result<Self, GroupoidError> {
        let n = labels.len();
        if n == 0 {
            return Err(GroupoidError::Empty);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(GroupoidError::DuplicateLabel(l.clone()));
            }
        }
        if add.len() != n || add.iter().any(|r| r.len() != n) {
            return Err(GroupoidError::Shape("add", n));
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(GroupoidError::Shape("leq", n));
        }
        for (i, row) in add.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                if k >= n {
                    return Err(GroupoidError::OutOfRange(i, j, k));
                }
            }
        }
        let g = FiniteOrderedGroupoid { labels, add, leq };
        let l = |i: usize| g.labels[i].clone();
        for i in 0..n {
            if !g.leq[i][i] {
                return Err(GroupoidError::NotReflexive(l(i)));
            }
            for j in 0..n {
                if g.add[i][j] != g.add[j][i] {
                    return Err(GroupoidError::NotCommutative(l(i), l(j)));
                }
                if i != j && g.leq[i][j] && g.leq[j][i] {
                    return Err(GroupoidError::NotAntisymmetric(l(i), l(j)));
                }
                for k in 0..n {
                    if g.leq[i][j] && g.leq[j][k] && !g.leq[i][k] {
                        return Err(GroupoidError::NotTransitive(l(i), l(j), l(k)));
                    }
                    if g.leq[i][j] && !g.leq[g.add[i][k]][g.add[j][k]] {
                        return Err(GroupoidError::NotCompatible(l(i), l(j), l(k)));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Builds the groupoid from labelled tables, as in the JSON input.
    pub fn from_labelled(
        carrier: Vec<String>,
        add: Vec<Vec<String>>,
        leq: Vec<Vec<bool>>,
    ) -> Result<Self, GroupoidError> {
        let n = carrier.len();
        if add.len() != n || add.iter().any(|r| r.len() != n) {
            return Err(GroupoidError::Shape("add", n));
        }
        let mut idx = Vec::with_capacity(n);
        for (i, row) in add.iter().enumerate() {
            let mut r = Vec::with_capacity(n);
            for (j, s) in row.iter().enumerate() {
                match carrier.iter().position(|c| c == s) {
                    Some(k) => r.push(k),
                    None => return Err(GroupoidError::UnknownLabel(i, j, s.clone())),
                }
            }
            idx.push(r);
        }
        Self::new(carrier, idx, leq)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn leq_table(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn sum(&self, u: usize, v: usize) -> usize {
        self.add[u][v]
    }

    pub fn le(&self, u: usize, v: usize) -> bool {
        self.leq[u][v]
    }

    /// Order as seen by `mode`: sup mode is inf mode in the reversed order.
    fn le_m(&self, mode: Mode, u: usize, v: usize) -> bool {
        match mode {
            Mode::Inf => self.leq[u][v],
            Mode::Sup => self.leq[v][u],
        }
    }

    /// inf (mode inf) or sup (mode sup) of a subset, if it exists.
    fn meet_m(&self, mode: Mode, m: &[usize]) -> Option<usize> {
        let n = self.len();
        let lower: Vec<usize> = (0..n).filter(|&x| m.iter().all(|&y| self.le_m(mode, x, y))).collect();
        lower.iter().copied().find(|&g| lower.iter().all(|&x| self.le_m(mode, x, g)))
    }

    pub fn inf_of(&self, m: &[usize]) -> Option<usize> {
        self.meet_m(Mode::Inf, m)
    }

    pub fn sup_of(&self, m: &[usize]) -> Option<usize> {
        self.meet_m(Mode::Sup, m)
    }

    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.inf_of(&[i, j]).is_some() && self.sup_of(&[i, j]).is_some()))
            && self.inf_of(&[]).is_some()
            && self.sup_of(&[]).is_some()
    }

    /// `{w' : u ≤ v + w'}` in inf mode, `{w' : v + w' ≤ u}` in sup mode.
    fn residual_set(&self, mode: Mode, u: usize, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&w| self.le_m(mode, u, self.sum(v, w))).collect()
    }

    fn witness(&self, u: usize, v: Option<usize>, subset: Option<&[usize]>) -> Witness {
        Witness {
            u: self.labels[u].clone(),
            v: v.map(|v| self.labels[v].clone()),
            subset: subset.map(|s| s.iter().map(|&i| self.labels[i].clone()).collect()),
        }
    }

    fn subsets(&self) -> (Vec<Vec<usize>>, bool) {
        let n = self.len();
        if n <= EXHAUSTIVE_SUBSET_LIMIT {
            let all = (0u32..1 << n).map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect()).collect();
            return (all, true);
        }
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(n as u64);
        let mut out: Vec<Vec<usize>> = vec![vec![], (0..n).collect()];
        out.extend((0..n).map(|i| vec![i]));
        for _ in 0..SAMPLED_SUBSETS {
            out.push((0..n).filter(|_| rng.gen_bool(0.5)).collect());
        }
        (out, false)
    }
}

/// Least (inf mode) or greatest (sup mode) element of the residual set.
pub fn residual(g: &FiniteOrderedGroupoid, u: usize, v: usize, mode: Mode) -> Option<usize> {
    let r = g.residual_set(mode, u, v);
    r.iter().copied().find(|&w| r.iter().all(|&x| g.le_m(mode, w, x)))
}

pub fn check_condition(g: &FiniteOrderedGroupoid, condition: Condition, mode: Mode) -> ConditionReport {
    let n = g.len();
    let mut witnesses = Vec::new();
    let mut exhaustive = true;
    let mut push = |w: Witness| {
        if witnesses.len() < MAX_WITNESSES {
            witnesses.push(w);
        }
    };
    let mut failed = false;
    match condition {
        Condition::A => {
            for u in 0..n {
                for v in 0..n {
                    let ok = (0..n).any(|w| (0..n).all(|w2| g.le_m(mode, u, g.sum(v, w2)) == g.le_m(mode, w, w2)));
                    if !ok {
                        failed = true;
                        push(g.witness(u, Some(v), None));
                    }
                }
            }
        }
        Condition::B => {
            for u in 0..n {
                for v in 0..n {
                    if residual(g, u, v, mode).is_none() {
                        failed = true;
                        push(g.witness(u, Some(v), None));
                    }
                }
            }
        }
        Condition::C => {
            let (subsets, exh) = g.subsets();
            exhaustive = exh;
            for m in &subsets {
                let Some(im) = g.meet_m(mode, m) else { continue };
                for u in 0..n {
                    let mut um: Vec<usize> = m.iter().map(|&x| g.sum(u, x)).collect();
                    um.sort_unstable();
                    um.dedup();
                    if g.meet_m(mode, &um) != Some(g.sum(u, im)) {
                        failed = true;
                        push(g.witness(u, None, Some(m)));
                    }
                }
            }
        }
        Condition::D => {
            for u in 0..n {
                for v in 0..n {
                    let r = g.residual_set(mode, u, v);
                    let ok = match g.meet_m(mode, &r) {
                        Some(w) => g.le_m(mode, u, g.sum(v, w)),
                        None => false,
                    };
                    if !ok {
                        failed = true;
                        push(g.witness(u, Some(v), None));
                    }
                }
            }
        }
    }
    ConditionReport { condition, mode, holds: !failed, witnesses, exhaustive }
}

pub fn check_equivalence(g: &FiniteOrderedGroupoid, mode: Mode) -> EquivalenceReport {
    let reports: Vec<ConditionReport> = Condition::ALL.iter().map(|&c| check_condition(g, c, mode)).collect();
    let agree = reports.iter().all(|r| r.holds == reports[0].holds);
    EquivalenceReport { mode, agree, is_lattice: g.is_lattice(), reports }
}

/// Which addition the three-point model `{−∞, 0, +∞}` carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThreePoint {
    InfAddition,
    SupAddition,
}

fn three_point_values() -> [Ext; 3] {
    [Ext::NegInf, Ext::ZERO, Ext::PosInf]
}

fn three_point_labels() -> Vec<String> {
    vec!["-inf".into(), "0".into(), "inf".into()]
}

fn three_point_index(e: Ext) -> usize {
    match e {
        Ext::NegInf => 0,
        Ext::Finite(_) => 1,
        Ext::PosInf => 2,
    }
}

fn three_point_sum(kind: ThreePoint, a: Ext, b: Ext) -> Ext {
    match kind {
        ThreePoint::InfAddition => UpReal::from_ext(a).isum(UpReal::from_ext(b)).ext(),
        ThreePoint::SupAddition => {
            crate::extreal::DownReal::from_ext(a).ssum(crate::extreal::DownReal::from_ext(b)).ext()
        }
    }
}

/// `({−∞, 0, +∞}, ⊞, ≤)` with the addition taken from the extreal module.
pub fn three_point_groupoid(kind: ThreePoint) -> FiniteOrderedGroupoid {
    let vals = three_point_values();
    let add =
        vals.iter().map(|&a| vals.iter().map(|&b| three_point_index(three_point_sum(kind, a, b))).collect()).collect();
    let leq = vals.iter().map(|&a| vals.iter().map(|&b| a <= b).collect()).collect();
    FiniteOrderedGroupoid::new(three_point_labels(), add, leq).expect("three-point model is valid")
}

/// Random finite lattice with a commutative order-compatible addition.
///
/// Element 0 is the bottom and `n-1` the top. The order on the middle
/// elements is a random DAG closed transitively; candidates that are not
/// lattices are rejected. The addition is the join-closure (or meet-closure)
/// of a random symmetric table, which makes it monotone in each argument.
pub fn random_lattice_groupoid<R: Rng>(rng: &mut R, n: usize) -> FiniteOrderedGroupoid {
    assert!(n >= 1);
    let leq = loop {
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
            leq[0][i] = true;
            leq[i][n - 1] = true;
        }
        let p = rng.gen_range(0.2..0.8);
        let mut perm: Vec<usize> = (1..n.saturating_sub(1)).collect();
        perm.shuffle(rng);
        for a in 0..perm.len() {
            for b in a + 1..perm.len() {
                if rng.gen_bool(p) {
                    leq[perm[a]][perm[b]] = true;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        let probe = FiniteOrderedGroupoid {
            labels: (0..n).map(|i| format!("e{i}")).collect(),
            add: vec![vec![0; n]; n],
            leq: leq.clone(),
        };
        if probe.is_lattice() {
            break leq;
        }
    };
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut t = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in i..n {
            let k = rng.gen_range(0..n);
            t[i][j] = k;
            t[j][i] = k;
        }
    }
    let shell = FiniteOrderedGroupoid { labels: labels.clone(), add: vec![vec![0; n]; n], leq: leq.clone() };
    let style = rng.gen_range(0..4);
    let add: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| match style {
                    // lattice join / meet themselves
                    0 => shell.sup_of(&[u, v]).unwrap(),
                    1 => shell.inf_of(&[u, v]).unwrap(),
                    2 => {
                        let below: Vec<usize> = (0..n)
                            .flat_map(|a| (0..n).map(move |b| (a, b)))
                            .filter(|&(a, b)| leq[a][u] && leq[b][v])
                            .map(|(a, b)| t[a][b])
                            .collect();
                        shell.sup_of(&below).unwrap()
                    }
                    _ => {
                        let above: Vec<usize> = (0..n)
                            .flat_map(|a| (0..n).map(move |b| (a, b)))
                            .filter(|&(a, b)| leq[u][a] && leq[v][b])
                            .map(|(a, b)| t[a][b])
                            .collect();
                        shell.inf_of(&above).unwrap()
                    }
                })
                .collect()
        })
        .collect();
    FiniteOrderedGroupoid::new(labels, add, leq).expect("generator yields valid groupoids")
}

/// Finite structure with an addition and a scaling by a probe set of
/// non-negative reals, for the conlinear-space axioms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteConlinear {
    pub labels: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub scalars: Vec<f64>,
    /// `scale[k][w]` is the index of `scalars[k]·w`.
    pub scale: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConlinearReport {
    pub conlinear: bool,
    pub neutral: Option<String>,
    pub violations: Vec<AxiomViolation>,
    pub convex_elements: Vec<String>,
}

impl FiniteConlinear {
    pub fn new(
        labels: Vec<String>,
        add: Vec<Vec<usize>>,
        scalars: Vec<f64>,
        scale: Vec<Vec<usize>>,
    ) -> Result<Self, GroupoidError> {
        let n = labels.len();
        if n == 0 {
            return Err(GroupoidError::Empty);
        }
        if add.len() != n || add.iter().any(|r| r.len() != n || r.iter().any(|&k| k >= n)) {
            return Err(GroupoidError::Shape("add", n));
        }
        if scale.len() != scalars.len() || scale.iter().any(|r| r.len() != n || r.iter().any(|&k| k >= n)) {
            return Err(GroupoidError::Shape("scale", n));
        }
        for req in [0.0, 1.0] {
            if !scalars.contains(&req) {
                return Err(GroupoidError::MissingScalar(req));
            }
        }
        Ok(FiniteConlinear { labels, add, scalars, scale })
    }

    fn scalar_index(&self, t: f64) -> Option<usize> {
        self.scalars.iter().position(|&s| (s - t).abs() <= 1e-12 * (1.0 + t.abs()))
    }
}

/// Checks (C1) commutative monoid and (C2)(i)–(iv) over the probe scalars.
/// Products and sums of probe scalars that fall outside the probe set are
/// skipped.
pub fn check_conlinear(s: &FiniteConlinear) -> ConlinearReport {
    let n = s.labels.len();
    let l = |i: usize| s.labels[i].as_str();
    let mut violations = Vec::new();
    let mut v = |axiom: &str, detail: String| {
        if violations.len() < 32 {
            violations.push(AxiomViolation { axiom: axiom.into(), detail });
        }
    };
    for a in 0..n {
        for b in 0..n {
            if s.add[a][b] != s.add[b][a] {
                v("C1 commutative", format!("{}+{} != {}+{}", l(a), l(b), l(b), l(a)));
            }
            for c in 0..n {
                if s.add[s.add[a][b]][c] != s.add[a][s.add[b][c]] {
                    v("C1 associative", format!("({}+{})+{}", l(a), l(b), l(c)));
                }
            }
        }
    }
    let neutral = (0..n).find(|&e| (0..n).all(|a| s.add[a][e] == a));
    if neutral.is_none() {
        v("C1 neutral", "no neutral element".into());
    }
    let m = s.scalars.len();
    for i in 0..m {
        for j in 0..m {
            let (si, sj) = (s.scalars[i], s.scalars[j]);
            if let Some(k) = s.scalar_index(si * sj) {
                for w in 0..n {
                    if s.scale[i][s.scale[j][w]] != s.scale[k][w] {
                        v("C2(i)", format!("{si}·({sj}·{}) != ({})·{}", l(w), si * sj, l(w)));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let lhs = s.scale[i][s.add[a][b]];
                let rhs = s.add[s.scale[i][a]][s.scale[i][b]];
                if lhs != rhs {
                    v("C2(ii)", format!("{}·({}+{})", s.scalars[i], l(a), l(b)));
                }
            }
        }
    }
    let one = s.scalar_index(1.0).expect("validated");
    let zero = s.scalar_index(0.0).expect("validated");
    for w in 0..n {
        if s.scale[one][w] != w {
            v("C2(iii)", format!("1·{} != {}", l(w), l(w)));
        }
        if Some(s.scale[zero][w]) != neutral {
            v("C2(iv)", format!("0·{} is not the neutral element", l(w)));
        }
    }
    let convex_elements = (0..n)
        .filter(|&w| {
            (0..m).all(|i| {
                (0..m).all(|j| match s.scalar_index(s.scalars[i] + s.scalars[j]) {
                    Some(k) => s.scale[k][w] == s.add[s.scale[i][w]][s.scale[j][w]],
                    None => true,
                })
            })
        })
        .map(|w| s.labels[w].clone())
        .collect();
    ConlinearReport {
        conlinear: violations.is_empty(),
        neutral: neutral.map(|e| s.labels[e].clone()),
        violations,
        convex_elements,
    }
}

/// The three-point model with scaling by `scalars` (0·(±∞) = 0).
pub fn three_point_conlinear(kind: ThreePoint, scalars: &[f64]) -> FiniteConlinear {
    let g = three_point_groupoid(kind);
    let vals = three_point_values();
    let scale = scalars
        .iter()
        .map(|&t| {
            vals.iter().map(|&w| three_point_index(UpReal::from_ext(w).scale(t).expect("non-negative").ext())).collect()
        })
        .collect();
    FiniteConlinear::new(g.labels.clone(), g.add.clone(), scalars.to_vec(), scale).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn three_point_inf_addition_is_residuated() {
        let g = three_point_groupoid(ThreePoint::InfAddition);
        let r = check_equivalence(&g, Mode::Inf);
        assert!(r.agree && r.reports.iter().all(|c| c.holds));
        assert_eq!(residual(&g, 1, 1, Mode::Inf), Some(1));
        assert_eq!(residual(&g, 2, 0, Mode::Inf), Some(2));
    }

    #[test]
    fn three_point_sup_addition() {
        let g = three_point_groupoid(ThreePoint::SupAddition);
        let r = check_equivalence(&g, Mode::Inf);
        assert!(r.agree && r.reports.iter().all(|c| !c.holds));
        let d = &r.reports[3];
        assert!(d.witnesses.contains(&Witness { u: "inf".into(), v: Some("-inf".into()), subset: None }));
        assert_eq!(residual(&g, 2, 0, Mode::Inf), None);
        let s = check_equivalence(&g, Mode::Sup);
        assert!(s.agree && s.reports.iter().all(|c| c.holds));
    }

    #[test]
    fn trivial_groupoid() {
        let g = FiniteOrderedGroupoid::new(vec!["o".into()], vec![vec![0]], vec![vec![true]]).unwrap();
        for mode in [Mode::Inf, Mode::Sup] {
            assert!(check_equivalence(&g, mode).reports.iter().all(|c| c.holds));
        }
    }

    #[test]
    fn rejects_incompatible_order() {
        // 0 < 1 but 0+1 = 1 and 1+1 = 0
        let e = FiniteOrderedGroupoid::new(
            vec!["a".into(), "b".into()],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![true, true], vec![false, true]],
        );
        assert!(matches!(e, Err(GroupoidError::NotCompatible(..))));
    }

    #[test]
    fn random_groupoids_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..=6);
            let g = random_lattice_groupoid(&mut rng, n);
            assert!(g.is_lattice());
            for mode in [Mode::Inf, Mode::Sup] {
                let r = check_equivalence(&g, mode);
                assert!(r.agree, "{:?}", r);
            }
        }
    }

    #[test]
    fn conlinear_three_point() {
        let probe = [0.0, 1.0, 2.0, 0.5];
        for kind in [ThreePoint::InfAddition, ThreePoint::SupAddition] {
            let r = check_conlinear(&three_point_conlinear(kind, &probe));
            assert!(r.conlinear, "{:?}", r.violations);
            assert_eq!(r.neutral.as_deref(), Some("0"));
        }
        let r = check_conlinear(&three_point_conlinear(ThreePoint::InfAddition, &probe));
        assert_eq!(r.convex_elements.len(), 3);
    }

    #[test]
    fn conlinear_broken_zero_scaling() {
        let mut s = three_point_conlinear(ThreePoint::InfAddition, &[0.0, 1.0, 2.0]);
        s.scale[0][2] = 2; // 0·(+∞) = +∞
        let r = check_conlinear(&s);
        assert!(!r.conlinear);
        assert!(r.violations.iter().any(|v| v.axiom == "C2(iv)"));
    }
}
