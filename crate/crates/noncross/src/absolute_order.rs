//! The absolute order on `C_n` and `D_n`: the prefix order induced by
//! reflection length, enumeration of the interval below a chosen top
//! element, the circular noncrossing characterization of the type-C
//! interval, meets and joins with lattice certification, the structured
//! type-D meet, and reduced reflection factorizations.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::signed_perm::{
    coxeter_element, reflections, Cycle, GroupType, Reflection, SignedPerm,
};

pub type ElemId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("top element is not a member of {0}")]
    GammaNotInGroup(GroupType),
    #[error("element {0} is not in the interval")]
    NotInInterval(String),
    #[error("operation requires the type-D Coxeter interval")]
    NotDCoxeterInterval,
    #[error("internal falsification: {0}")]
    Falsified(String),
}

/// A meet or join failed to be unique: the two witnesses are incomparable
/// maximal common lower bounds (resp. minimal upper bounds) of `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no unique {op} for elements {a} and {b} (witnesses {w1}, {w2})")]
pub struct LatticeFailure {
    pub op: BoundKind,
    pub a: ElemId,
    pub b: ElemId,
    pub w1: ElemId,
    pub w2: ElemId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Meet => write!(f, "meet"),
            BoundKind::Join => write!(f, "join"),
        }
    }
}

/// Violation of the balanced-cycle prefix profile of a reflection
/// factorization of a Coxeter element.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("balanced-cycle profile {counts:?} violates the Coxeter profile at prefix {at}")]
pub struct ProfileViolation {
    pub at: usize,
    pub counts: Vec<usize>,
}

/// `u <= w` in the absolute order: some shortest reflection factorization of
/// `w` has a shortest factorization of `u` as a prefix.
pub fn leq(u: &SignedPerm, w: &SignedPerm) -> bool {
    assert_eq!(u.rank(), w.rank(), "leq requires equal ranks");
    let quotient = u.inverse().compose(w).expect("same rank");
    w.reflection_length() == u.reflection_length() + quotient.reflection_length()
}

/// Cycle-structure test for `r <= a`, avoiding length arithmetic: `r` is
/// contained in a single cycle of `a`, or is a transposition pair whose two
/// indices sit in two distinct balanced cycles.
pub fn reflection_below(r: &Reflection, a: &SignedPerm) -> bool {
    let d = a.decompose();
    match *r {
        Reflection::SignChange(i) => {
            // (i,-i) must sit inside one orbit: only balanced cycles contain
            // both signs of an index.
            d.balanced.iter().any(|c| c.entries().iter().any(|e| e.abs() == i))
        }
        Reflection::Transposition(i, j) => {
            // Containment: some orbit of `a` contains the chord {i,j} (or its
            // negation). Paired cycles contribute the orbits of their entry
            // list and its negation; balanced cycles one sign-closed orbit.
            let in_one_cycle = d.paired.iter().any(|c| {
                let has = |x: i32| c.entries().contains(&x);
                (has(i) && has(j)) || (has(-i) && has(-j))
            }) || d.balanced.iter().any(|c| {
                let has = |x: i32| c.entries().iter().any(|e| e.abs() == x.abs());
                has(i) && has(j)
            });
            if in_one_cycle {
                return true;
            }
            // s-containment: the two indices lie in two distinct balanced
            // cycles.
            let home = |x: i32| {
                d.balanced
                    .iter()
                    .position(|c| c.entries().iter().any(|e| e.abs() == x.abs()))
            };
            match (home(i), home(j)) {
                (Some(bi), Some(bj)) => bi != bj,
                _ => false,
            }
        }
    }
}

/// Position of a signed index on the `2n`-circle traversed by the type-C
/// Coxeter element: `1,2,..,n,-1,-2,..,-n`.
fn circle_pos(x: i32, n: usize) -> usize {
    if x > 0 {
        (x - 1) as usize
    } else {
        n + (-x - 1) as usize
    }
}

/// An ordered list of signed indices is consistently oriented when walking
/// the circle once from its first entry meets the remaining entries in order.
fn consistently_oriented_seq(seq: &[i32], n: usize) -> bool {
    let two_n = 2 * n;
    let base = circle_pos(seq[0], n);
    let mut prev = 0usize;
    for &x in &seq[1..] {
        let rel = (circle_pos(x, n) + two_n - base) % two_n;
        if rel <= prev {
            return false;
        }
        prev = rel;
    }
    true
}

/// A cycle is consistently oriented when some written form, doubled to
/// `i_1,..,i_s,-i_1,..,-i_s`, visits the circle in increasing powers of the
/// type-C Coxeter element. The written form matters, so all of them are
/// tried.
fn cycle_consistently_oriented(c: &Cycle, n: usize) -> bool {
    c.written_forms().iter().any(|form| {
        let mut doubled = form.clone();
        doubled.extend(form.iter().map(|e| -e));
        consistently_oriented_seq(&doubled, n)
    })
}

/// Every cycle of `a` is consistently oriented with the circle order.
pub fn is_consistently_oriented(a: &SignedPerm) -> bool {
    let n = a.rank();
    let d = a.decompose();
    d.paired
        .iter()
        .chain(d.balanced.iter())
        .all(|c| cycle_consistently_oriented(c, n))
}

/// Reflections contained in a single paired or balanced cycle.
fn contained_reflections(c: &Cycle) -> Vec<Reflection> {
    let e = c.entries();
    let mut out = Vec::new();
    match c.kind() {
        crate::signed_perm::CycleKind::Paired => {
            for x in 0..e.len() {
                for y in x + 1..e.len() {
                    out.push(Reflection::transposition(e[x], e[y]));
                }
            }
        }
        crate::signed_perm::CycleKind::Balanced => {
            for x in 0..e.len() {
                out.push(Reflection::sign_change(e[x]));
                for y in x + 1..e.len() {
                    out.push(Reflection::transposition(e[x], e[y]));
                    out.push(Reflection::transposition(e[x], -e[y]));
                }
            }
        }
    }
    out
}

/// Two disjoint reflections cross when, for some written forms `(i,j)` and
/// `(k,l)` of the two, the ordered set `i,k,j,l` is consistently oriented.
/// Ranging over all written forms covers the four ordered-set cases for each
/// of the pair/pair and pair/sign-change combinations, and extends the same
/// pattern to two sign changes (which always interleave).
fn reflections_cross(r1: &Reflection, r2: &Reflection, n: usize) -> bool {
    let forms = |r: &Reflection| -> Vec<(i32, i32)> {
        r.chords().into_iter().flat_map(|(a, b)| [(a, b), (b, a)]).collect()
    };
    for &(i, j) in &forms(r1) {
        for &(k, l) in &forms(r2) {
            if consistently_oriented_seq(&[i, k, j, l], n) {
                return true;
            }
        }
    }
    false
}

/// No two disjoint cycles of `a` contain crossing reflections. Only
/// genuinely disjoint cycles are ever tested, so the crossing test never
/// sees two reflections sharing an index.
pub fn is_noncrossing(a: &SignedPerm) -> bool {
    let n = a.rank();
    let d = a.decompose();
    let cycles: Vec<&Cycle> = d.paired.iter().chain(d.balanced.iter()).collect();
    let refl_lists: Vec<Vec<Reflection>> =
        cycles.iter().map(|c| contained_reflections(c)).collect();
    for x in 0..cycles.len() {
        for y in x + 1..cycles.len() {
            for r1 in &refl_lists[x] {
                for r2 in &refl_lists[y] {
                    if reflections_cross(r1, r2, n) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Geometric membership test for the type-C Coxeter interval: consistently
/// oriented and noncrossing. Agrees with `leq(a, coxeter_element(C_n))`.
pub fn below_coxeter_c(a: &SignedPerm) -> bool {
    is_consistently_oriented(a) && is_noncrossing(a)
}

/// Fixed-width bitset over the reflection enumeration of the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflSet {
    bits: Vec<u64>,
}

impl ReflSet {
    fn new(n_bits: usize) -> Self {
        ReflSet { bits: vec![0; n_bits.div_ceil(64)] }
    }

    fn insert(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_subset(&self, other: &ReflSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ReflSet) -> ReflSet {
        ReflSet { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect() }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

/// The graded interval `[I, gamma]` in the absolute order, with its order
/// matrix, reflection sets, and all two-letter factorizations of each
/// element. Immutable once built.
pub struct Interval {
    group: GroupType,
    elements: Vec<SignedPerm>,
    names: Vec<String>,
    lengths: Vec<usize>,
    order: Vec<Vec<bool>>,
    gamma_id: ElemId,
    refls: Vec<Reflection>,
    refl_perms: Vec<SignedPerm>,
    refl_sets: Vec<ReflSet>,
    index: HashMap<SignedPerm, ElemId>,
    factor_pairs: Vec<Vec<(ElemId, ElemId)>>,
}

impl Interval {
    /// Enumerates `[I, gamma]` by downward closure: repeatedly multiply on
    /// the right by reflections that drop the length by one.
    pub fn new(gt: GroupType, gamma: &SignedPerm) -> Result<Interval, IntervalError> {
        if !gamma.is_member(gt) {
            return Err(IntervalError::GammaNotInGroup(gt));
        }
        let refls = reflections(gt);
        let refl_perms: Vec<SignedPerm> =
            refls.iter().map(|r| r.to_perm(gt.rank()).expect("valid rank")).collect();

        let mut seen: HashSet<SignedPerm> = HashSet::new();
        let mut stack = vec![gamma.clone()];
        seen.insert(gamma.clone());
        while let Some(w) = stack.pop() {
            let lw = w.reflection_length();
            if lw == 0 {
                continue;
            }
            for rp in &refl_perms {
                let w2 = w.compose(rp).expect("same rank");
                if w2.reflection_length() + 1 == lw && !seen.contains(&w2) {
                    seen.insert(w2.clone());
                    stack.push(w2);
                }
            }
        }

        let mut elements: Vec<SignedPerm> = seen.into_iter().collect();
        elements.sort_by_cached_key(|e| (e.reflection_length(), e.to_string()));
        let names: Vec<String> = elements.iter().map(|e| e.to_string()).collect();
        let lengths: Vec<usize> = elements.iter().map(|e| e.reflection_length()).collect();
        let index: HashMap<SignedPerm, ElemId> =
            elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let gamma_id = index[gamma];

        let m = elements.len();
        let mut order = vec![vec![false; m]; m];
        for u in 0..m {
            for w in 0..m {
                order[u][w] = leq(&elements[u], &elements[w]);
            }
        }

        let iv = Interval {
            group: gt,
            elements,
            names,
            lengths,
            order,
            gamma_id,
            refls,
            refl_perms,
            refl_sets: Vec::new(),
            index,
            factor_pairs: Vec::new(),
        };
        iv.validate()?;
        Ok(iv.finish())
    }

    fn validate(&self) -> Result<(), IntervalError> {
        let m = self.elements.len();
        for u in 0..m {
            if !self.order[u][u] {
                return Err(IntervalError::Falsified(format!("order not reflexive at {u}")));
            }
            if !self.order[u][self.gamma_id] {
                return Err(IntervalError::Falsified(format!(
                    "element {} not below the top",
                    self.names[u]
                )));
            }
            for w in 0..m {
                if u != w && self.order[u][w] {
                    if self.order[w][u] {
                        return Err(IntervalError::Falsified("order not antisymmetric".into()));
                    }
                    if self.lengths[u] >= self.lengths[w] {
                        return Err(IntervalError::Falsified("grading broken".into()));
                    }
                }
            }
        }
        // Transitivity is cubic in the interval size; run it whenever the
        // interval is at desk scale.
        if m <= 1500 {
            for u in 0..m {
                for v in 0..m {
                    if !self.order[u][v] {
                        continue;
                    }
                    for w in 0..m {
                        if self.order[v][w] && !self.order[u][w] {
                            return Err(IntervalError::Falsified("order not transitive".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn finish(mut self) -> Interval {
        let m = self.elements.len();
        let mut refl_sets = Vec::with_capacity(m);
        for e in &self.elements {
            let mut set = ReflSet::new(self.refls.len());
            for (ri, rp) in self.refl_perms.iter().enumerate() {
                if leq(rp, e) {
                    set.insert(ri);
                }
            }
            refl_sets.push(set);
        }
        self.refl_sets = refl_sets;

        let mut factor_pairs = vec![Vec::new(); m];
        #[allow(clippy::needless_range_loop)]
        for w3 in 0..m {
            if self.lengths[w3] < 2 {
                continue;
            }
            for w1 in 1..m {
                if w1 == w3 || !self.order[w1][w3] {
                    continue;
                }
                let q = self.elements[w1].inverse().compose(&self.elements[w3]).unwrap();
                let w2 = self.index[&q];
                debug_assert!(w2 != 0 && self.order[w2][w3]);
                factor_pairs[w3].push((w1, w2));
            }
        }
        self.factor_pairs = factor_pairs;
        self
    }

    pub fn group(&self) -> GroupType {
        self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn gamma_id(&self) -> ElemId {
        self.gamma_id
    }

    pub fn identity_id(&self) -> ElemId {
        0
    }

    pub fn element(&self, i: ElemId) -> &SignedPerm {
        &self.elements[i]
    }

    pub fn name(&self, i: ElemId) -> &str {
        &self.names[i]
    }

    pub fn length(&self, i: ElemId) -> usize {
        self.lengths[i]
    }

    pub fn le(&self, u: ElemId, w: ElemId) -> bool {
        self.order[u][w]
    }

    pub fn id_of(&self, p: &SignedPerm) -> Option<ElemId> {
        self.index.get(p).copied()
    }

    pub fn reflection_list(&self) -> &[Reflection] {
        &self.refls
    }

    pub fn reflection_perm(&self, ri: usize) -> &SignedPerm {
        &self.refl_perms[ri]
    }

    pub fn refl_set(&self, i: ElemId) -> &ReflSet {
        &self.refl_sets[i]
    }

    /// Ids of the length-one elements, i.e. the reflections below the top.
    pub fn atoms(&self) -> Vec<ElemId> {
        (0..self.len()).filter(|&i| self.lengths[i] == 1).collect()
    }

    /// All pairs `(w1, w2)` of non-identity elements with `w1·w2 = w3` and
    /// lengths adding, i.e. the two-letter factorizations of `w3`.
    pub fn factor_pairs(&self, w3: ElemId) -> &[(ElemId, ElemId)] {
        &self.factor_pairs[w3]
    }

    fn bound_candidates(&self, a: ElemId, b: ElemId, kind: BoundKind) -> Vec<ElemId> {
        (0..self.len())
            .filter(|&x| match kind {
                BoundKind::Meet => self.order[x][a] && self.order[x][b],
                BoundKind::Join => self.order[a][x] && self.order[b][x],
            })
            .collect()
    }

    fn unique_extremum(
        &self,
        a: ElemId,
        b: ElemId,
        kind: BoundKind,
    ) -> Result<ElemId, LatticeFailure> {
        let cand = self.bound_candidates(a, b, kind);
        let extremal: Vec<ElemId> = cand
            .iter()
            .copied()
            .filter(|&x| {
                cand.iter().all(|&y| {
                    y == x
                        || match kind {
                            BoundKind::Meet => !self.order[x][y],
                            BoundKind::Join => !self.order[y][x],
                        }
                })
            })
            .collect();
        match extremal[..] {
            [m] => Ok(m),
            [w1, w2, ..] => Err(LatticeFailure { op: kind, a, b, w1, w2 }),
            [] => unreachable!("bounds always include an endpoint of the interval"),
        }
    }

    /// Greatest lower bound; the error carries two incomparable maximal
    /// common lower bounds and doubles as a lattice falsifier.
    pub fn meet(&self, a: ElemId, b: ElemId) -> Result<ElemId, LatticeFailure> {
        self.unique_extremum(a, b, BoundKind::Meet)
    }

    /// Least upper bound within the interval.
    pub fn join(&self, a: ElemId, b: ElemId) -> Result<ElemId, LatticeFailure> {
        self.unique_extremum(a, b, BoundKind::Join)
    }

    /// Full meet and join tables, or the first falsifying pair.
    pub fn certify_lattice(&self) -> Result<LatticeCertificate, LatticeFailure> {
        let m = self.len();
        let mut meet = vec![vec![0; m]; m];
        let mut join = vec![vec![0; m]; m];
        for a in 0..m {
            for b in a..m {
                let mv = self.meet(a, b)?;
                let jv = self.join(a, b)?;
                meet[a][b] = mv;
                meet[b][a] = mv;
                join[a][b] = jv;
                join[b][a] = jv;
            }
        }
        Ok(LatticeCertificate { n_elements: m, meet, join })
    }

    /// The noncrossing partition of `{±1..±n}` carved out by the cycle
    /// supports of an element of a type-C interval.
    pub fn to_ncp(&self, a: ElemId) -> NoncrossingPartition {
        NoncrossingPartition::from_perm(&self.elements[a])
    }

    /// Number of maximal chains `I < w_1 < .. < gamma`, counted level by
    /// level through the order matrix.
    pub fn maximal_chain_count(&self) -> u64 {
        let m = self.len();
        let mut count = vec![0u64; m];
        count[self.identity_id()] = 1;
        let top = self.lengths[self.gamma_id];
        for l in 1..=top {
            for w in 0..m {
                if self.lengths[w] != l {
                    continue;
                }
                count[w] = (0..m)
                    .filter(|&u| self.lengths[u] + 1 == l && self.order[u][w])
                    .map(|u| count[u])
                    .sum();
            }
        }
        count[self.gamma_id]
    }

    /// JSON document with elements, lengths, the order matrix, optional
    /// meet/join tables, and (type C) the noncrossing partition blocks.
    pub fn export_json(&self, cert: Option<&LatticeCertificate>) -> serde_json::Value {
        let order: Vec<Vec<u8>> = self
            .order
            .iter()
            .map(|row| row.iter().map(|&b| u8::from(b)).collect())
            .collect();
        let mut doc = serde_json::json!({
            "group": self.group.to_string(),
            "n": self.group.rank(),
            "gamma": self.names[self.gamma_id],
            "elements": self.names,
            "lengths": self.lengths,
            "order": order,
        });
        if let Some(c) = cert {
            doc["meet"] = serde_json::json!(c.meet);
            doc["join"] = serde_json::json!(c.join);
        }
        if !self.group.is_d() {
            let ncp: Vec<Vec<Vec<i32>>> =
                (0..self.len()).map(|i| self.to_ncp(i).blocks().to_vec()).collect();
            doc["ncp"] = serde_json::json!(ncp);
        }
        doc
    }
}

/// Meet and join tables for a certified lattice interval. Possession of a
/// certificate is the precondition for the normal-form machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeCertificate {
    n_elements: usize,
    meet: Vec<Vec<ElemId>>,
    join: Vec<Vec<ElemId>>,
}

impl LatticeCertificate {
    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn meet(&self, a: ElemId, b: ElemId) -> ElemId {
        self.meet[a][b]
    }

    pub fn join(&self, a: ElemId, b: ElemId) -> ElemId {
        self.join[a][b]
    }

    pub fn meet_table(&self) -> &Vec<Vec<ElemId>> {
        &self.meet
    }

    pub fn join_table(&self) -> &Vec<Vec<ElemId>> {
        &self.join
    }
}

/// A partition of `{±1..±n}` closed under negation as a set system, with at
/// most one self-negated block. Blocks are sorted along the circle order for
/// deterministic printing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoncrossingPartition {
    n: usize,
    blocks: Vec<Vec<i32>>,
}

impl NoncrossingPartition {
    pub fn from_perm(p: &SignedPerm) -> Self {
        let n = p.rank();
        let d = p.decompose();
        let mut blocks: Vec<Vec<i32>> = Vec::new();
        for c in &d.paired {
            blocks.push(c.entries().to_vec());
            blocks.push(c.entries().iter().map(|e| -e).collect());
        }
        for c in &d.balanced {
            blocks.push(c.support());
        }
        for b in &mut blocks {
            b.sort_by_key(|&x| circle_pos(x, n));
        }
        blocks.sort_by_key(|b| circle_pos(b[0], n));
        NoncrossingPartition { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<i32>] {
        &self.blocks
    }

    fn block_of(&self, x: i32) -> usize {
        self.blocks.iter().position(|b| b.contains(&x)).expect("partition covers ±1..±n")
    }

    /// Every block of `self` is contained in a block of `other`.
    pub fn refines(&self, other: &NoncrossingPartition) -> bool {
        self.blocks.iter().all(|b| {
            let target = other.block_of(b[0]);
            b.iter().all(|&x| other.blocks[target].contains(&x))
        })
    }

    /// Common refinement (blockwise intersection) with another partition.
    pub fn common_refinement(&self, other: &NoncrossingPartition) -> NoncrossingPartition {
        let n = self.n;
        let mut groups: HashMap<(usize, usize), Vec<i32>> = HashMap::new();
        for x in (1..=n as i32).chain((1..=n as i32).map(|i| -i)) {
            groups.entry((self.block_of(x), other.block_of(x))).or_default().push(x);
        }
        let mut blocks: Vec<Vec<i32>> = groups.into_values().collect();
        for b in &mut blocks {
            b.sort_by_key(|&x| circle_pos(x, n));
        }
        blocks.sort_by_key(|b| circle_pos(b[0], n));
        NoncrossingPartition { n, blocks }
    }

    /// The unique element below the type-C Coxeter element whose cycle
    /// supports are the blocks: each block becomes a cycle traversed in
    /// circle order.
    pub fn to_perm(&self) -> SignedPerm {
        let n = self.n;
        let mut p = SignedPerm::identity(n);
        let mut used: HashSet<Vec<i32>> = HashSet::new();
        for b in &self.blocks {
            let negated: Vec<i32> = {
                let mut v: Vec<i32> = b.iter().map(|e| -e).collect();
                v.sort_by_key(|&x| circle_pos(x, n));
                v
            };
            if negated == *b {
                // Self-negated block: the circle-ordered listing is
                // antiperiodic, so its first half writes the balanced cycle.
                let k = b.len() / 2;
                let c = Cycle::balanced(b[..k].to_vec()).expect("distinct entries");
                p = p.compose(&c.to_perm(n).unwrap()).unwrap();
            } else {
                if used.contains(b) || b.len() < 2 {
                    continue;
                }
                used.insert(negated);
                let c = Cycle::paired(b.clone()).expect("distinct entries");
                p = p.compose(&c.to_perm(n).unwrap()).unwrap();
            }
        }
        p
    }
}

/// Meet of two elements of a type-C Coxeter interval through the
/// noncrossing-partition model: the common refinement of the cycle-support
/// partitions, read back as a group element.
pub fn meet_c_ncp(a: &SignedPerm, b: &SignedPerm) -> SignedPerm {
    debug_assert!(below_coxeter_c(a) && below_coxeter_c(b));
    NoncrossingPartition::from_perm(a)
        .common_refinement(&NoncrossingPartition::from_perm(b))
        .to_perm()
}

impl Interval {
    /// The type-D meet by case analysis on balanced/paired elements, fully
    /// independent of the generic table-driven meet.
    ///
    /// Balanced elements (those containing balanced cycles) are handled by
    /// stripping the forced `[1]` cycle and recursing into the rank `n-1`
    /// type-C noncrossing model on coordinates `2..n`. As soon as one input
    /// is paired, the pair is conjugated by a power of `[2,..,n]` until the
    /// paired input sits below `((1,2,..,n))`; there the relation
    /// `i ~ j  iff  (i,j) <= both` partitions `{1..n}` and the blocks,
    /// traversed in increasing order, spell out the meet.
    pub fn meet_d_structured(&self, a: ElemId, b: ElemId) -> Result<ElemId, IntervalError> {
        let n = self.group.rank();
        if !self.group.is_d() || self.elements[self.gamma_id] != coxeter_element(self.group) {
            return Err(IntervalError::NotDCoxeterInterval);
        }
        let balanced = |x: ElemId| self.elements[x].decompose().balanced_count() > 0;
        let result = match (balanced(a), balanced(b)) {
            (true, true) => self.meet_d_balanced(&self.elements[a], &self.elements[b])?,
            (false, _) => self.meet_d_sim(&self.elements[a], &self.elements[b])?,
            (_, false) => self.meet_d_sim(&self.elements[b], &self.elements[a])?,
        };
        self.id_of(&result).ok_or_else(|| {
            IntervalError::Falsified(format!("structured meet {result} not in the interval"))
        })?;
        debug_assert_eq!(result.rank(), n);
        Ok(self.id_of(&result).unwrap())
    }

    fn meet_d_balanced(
        &self,
        a: &SignedPerm,
        b: &SignedPerm,
    ) -> Result<SignedPerm, IntervalError> {
        let n = self.group.rank();
        let strip = |p: &SignedPerm| -> Result<SignedPerm, IntervalError> {
            if p.apply(1) != -1 {
                return Err(IntervalError::Falsified(format!(
                    "balanced element {p} does not contain the cycle [1]"
                )));
            }
            let images: Vec<i32> = (2..=n as i32)
                .map(|i| {
                    let v = p.apply(i);
                    v.signum() * (v.abs() - 1)
                })
                .collect();
            SignedPerm::from_images(images)
                .map_err(|e| IntervalError::Falsified(e.to_string()))
        };
        let sigma_low = meet_c_ncp(&strip(a)?, &strip(b)?);
        let attach_one = sigma_low.decompose().balanced_count() > 0;
        let mut images = Vec::with_capacity(n);
        images.push(if attach_one { -1 } else { 1 });
        for i in 1..=(n as i32 - 1) {
            let v = sigma_low.apply(i);
            images.push(v.signum() * (v.abs() + 1));
        }
        SignedPerm::from_images(images).map_err(|e| IntervalError::Falsified(e.to_string()))
    }

    fn meet_d_sim(
        &self,
        paired: &SignedPerm,
        other: &SignedPerm,
    ) -> Result<SignedPerm, IntervalError> {
        let n = self.group.rank();
        let delta = Cycle::paired((1..=n as i32).collect())
            .unwrap()
            .to_perm(n)
            .expect("valid rank");
        let rot = Cycle::balanced((2..=n as i32).collect())
            .unwrap()
            .to_perm(n)
            .expect("valid rank");
        // Conjugation by [2,..,n] is a poset automorphism of the interval;
        // some power moves the paired input below ((1,2,..,n)).
        let mut conj = SignedPerm::identity(n);
        let mut found = None;
        for _ in 0..2 * (n - 1) {
            let pm = conj.conjugate(paired).expect("same rank");
            if leq(&pm, &delta) {
                found = Some((pm, conj.conjugate(other).expect("same rank"), conj.clone()));
                break;
            }
            conj = rot.compose(&conj).expect("same rank");
        }
        let (pm, om, conj) = found.ok_or_else(|| {
            IntervalError::Falsified(format!("paired element {paired} missed every coatom"))
        })?;

        // i ~ j iff (i,j) lies below both inputs; transitivity must hold.
        let mut repr: Vec<usize> = (0..=n).collect();
        fn find(repr: &mut [usize], mut x: usize) -> usize {
            while repr[x] != x {
                repr[x] = repr[repr[x]];
                x = repr[x];
            }
            x
        }
        let related = |i: i32, j: i32| {
            let r = Reflection::transposition(i, j);
            reflection_below(&r, &pm) && reflection_below(&r, &om)
        };
        for i in 1..=n as i32 {
            for j in i + 1..=n as i32 {
                if related(i, j) {
                    let (ri, rj) = (find(&mut repr, i as usize), find(&mut repr, j as usize));
                    repr[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        for i in 1..=n as i32 {
            for j in i + 1..=n as i32 {
                let same = find(&mut repr, i as usize) == find(&mut repr, j as usize);
                if same != related(i, j) {
                    return Err(IntervalError::Falsified(format!(
                        "~ relation not transitive at ({i},{j}) for {pm} and {om}"
                    )));
                }
            }
        }
        let mut blocks: HashMap<usize, Vec<i32>> = HashMap::new();
        for i in 1..=n {
            blocks.entry(find(&mut repr, i)).or_default().push(i as i32);
        }
        let mut sigma = SignedPerm::identity(n);
        let mut keys: Vec<usize> = blocks.keys().copied().collect();
        keys.sort_unstable();
        for k in keys {
            let block = &blocks[&k];
            if block.len() < 2 {
                continue;
            }
            let c = Cycle::paired(block.clone()).expect("distinct entries");
            sigma = sigma.compose(&c.to_perm(n).unwrap()).unwrap();
        }
        // Undo the conjugation.
        conj.inverse().conjugate(&sigma).map_err(|e| IntervalError::Falsified(e.to_string()))
    }
}

/// All shortest reflection factorizations of `w`, by depth-first search over
/// the reflections that drop the length, in enumeration order.
pub fn reduced_factorizations(w: &SignedPerm, gt: GroupType) -> Vec<Vec<Reflection>> {
    assert!(w.is_member(gt), "factorization target must lie in the group");
    let refls = reflections(gt);
    let refl_perms: Vec<SignedPerm> =
        refls.iter().map(|r| r.to_perm(gt.rank()).expect("valid rank")).collect();
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    dfs_factorizations(w, &refls, &refl_perms, &mut prefix, &mut out);
    out
}

fn dfs_factorizations(
    w: &SignedPerm,
    refls: &[Reflection],
    refl_perms: &[SignedPerm],
    prefix: &mut Vec<Reflection>,
    out: &mut Vec<Vec<Reflection>>,
) {
    let lw = w.reflection_length();
    if lw == 0 {
        out.push(prefix.clone());
        return;
    }
    for (ri, rp) in refl_perms.iter().enumerate() {
        // Peeling the first letter: w = r · (r·w) with the remainder shorter.
        let rest = rp.compose(w).expect("same rank");
        if rest.reflection_length() + 1 == lw {
            prefix.push(refls[ri]);
            dfs_factorizations(&rest, refls, refl_perms, prefix, out);
            prefix.pop();
        }
    }
}

/// Balanced-cycle counts of the prefix products of a reflection sequence.
/// When the product is the Coxeter element of `C_n` (resp. of `D_n`, using
/// type-D reflections only), the counts must be zero up to some point and
/// then constant `1` (resp. constant `2` with `[1]` among the balanced
/// cycles); any other shape is reported as a violation.
pub fn balanced_cycle_profile(
    seq: &[Reflection],
    n: usize,
) -> Result<Vec<usize>, ProfileViolation> {
    let mut counts = Vec::with_capacity(seq.len());
    let mut prefix = SignedPerm::identity(n);
    let mut has_one = Vec::with_capacity(seq.len());
    for r in seq {
        prefix = prefix.compose(&r.to_perm(n).expect("valid rank")).expect("same rank");
        let d = prefix.decompose();
        counts.push(d.balanced_count());
        has_one.push(d.balanced.iter().any(|c| c.entries() == [1]));
    }
    let check_shape = |level: usize, need_one: bool| -> Result<(), ProfileViolation> {
        let jump = counts.iter().position(|&c| c != 0).unwrap_or(counts.len());
        for (i, &c) in counts.iter().enumerate() {
            let expected = if i < jump { 0 } else { level };
            if c != expected || (need_one && i >= jump && !has_one[i]) {
                return Err(ProfileViolation { at: i + 1, counts: counts.clone() });
            }
        }
        Ok(())
    };
    // The profile law concerns reduced factorizations of a Coxeter element;
    // longer sequences may wander and are only counted.
    if seq.len() == n && prefix == coxeter_element(GroupType::C(n)) {
        check_shape(1, false)?;
    } else if seq.len() == n
        && n >= 2
        && prefix == coxeter_element(GroupType::D(n))
        && seq.iter().all(|r| !r.is_sign_change())
    {
        check_shape(2, true)?;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_perm::parse_element;

    fn perm(s: &str, n: usize) -> SignedPerm {
        parse_element(s, n).unwrap()
    }

    fn coxeter_interval(gt: GroupType) -> Interval {
        Interval::new(gt, &coxeter_element(gt)).unwrap()
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&perm("(1,2)", 2), &perm("[1,2]", 2)));
        assert!(leq(&SignedPerm::identity(3), &perm("[1,2,3]", 3)));
        assert!(!leq(&perm("(1,3) [2]", 3), &perm("[1,2,3]", 3)));
    }

    #[test]
    fn reflection_below_examples() {
        for n in 2..=5 {
            let gamma = coxeter_element(GroupType::C(n));
            assert!(reflection_below(&Reflection::transposition(1, 2), &gamma));
        }
        assert!(reflection_below(&Reflection::transposition(1, 3), &perm("[1] [2,3]", 3)));
        assert!(!reflection_below(&Reflection::sign_change(1), &perm("(1,2)", 2)));
    }

    #[test]
    fn orientation_examples() {
        assert!(is_consistently_oriented(&coxeter_element(GroupType::C(3))));
        assert!(!is_consistently_oriented(&perm("(1,3,2)", 3)));
        assert!(is_consistently_oriented(&perm("(2,3,-1)", 3)));
    }

    #[test]
    fn noncrossing_examples() {
        assert!(!is_noncrossing(&perm("(1,3) [2]", 3)));
        assert!(is_noncrossing(&perm("(1,3,2)", 3)));
        assert!(is_noncrossing(&perm("(1,2) (3)", 3)));
        // Two singleton balanced cycles always cross.
        assert!(!is_noncrossing(&perm("[1] [2]", 2)));
    }

    #[test]
    fn below_coxeter_examples() {
        assert!(below_coxeter_c(&coxeter_element(GroupType::C(3))));
        assert!(!below_coxeter_c(&perm("(1,3) [2]", 3)));
    }

    #[test]
    fn interval_sizes() {
        assert_eq!(coxeter_interval(GroupType::C(2)).len(), 6);
        assert_eq!(coxeter_interval(GroupType::C(3)).len(), 20);
        assert_eq!(coxeter_interval(GroupType::D(3)).len(), 14);
    }

    #[test]
    fn interval_c2_contents() {
        let iv = coxeter_interval(GroupType::C(2));
        let names: Vec<&str> = (0..iv.len()).map(|i| iv.name(i)).collect();
        assert_eq!(names, ["I", "(1,-2)", "(1,2)", "[1]", "[2]", "[1,2]"]);
    }

    #[test]
    fn interval_rejects_non_members() {
        let gamma = perm("[1]", 3);
        assert!(Interval::new(GroupType::D(3), &gamma).is_err());
    }

    #[test]
    fn meet_examples() {
        let ivd = coxeter_interval(GroupType::D(3));
        let id = |s: &str| ivd.id_of(&perm(s, 3)).unwrap();
        assert_eq!(ivd.meet(id("[1] [2]"), id("[1] [2]")).unwrap(), id("[1] [2]"));
        assert_eq!(ivd.meet(id("[1] [2]"), id("[1] [3]")).unwrap(), ivd.identity_id());

        let ivc = coxeter_interval(GroupType::C(3));
        let idc = |s: &str| ivc.id_of(&perm(s, 3)).unwrap();
        assert_eq!(ivc.meet(idc("[1,2]"), idc("[1,3]")).unwrap(), idc("[1]"));
    }

    #[test]
    fn join_examples() {
        let ivc = coxeter_interval(GroupType::C(2));
        let id = |s: &str| ivc.id_of(&perm(s, 2)).unwrap();
        assert_eq!(ivc.join(ivc.identity_id(), id("[2]")).unwrap(), id("[2]"));
        assert_eq!(ivc.join(id("(1,2)"), id("(1,-2)")).unwrap(), id("[1,2]"));

        let ivd = coxeter_interval(GroupType::D(3));
        let idd = |s: &str| ivd.id_of(&perm(s, 3)).unwrap();
        assert_eq!(ivd.join(idd("(1,2)"), idd("(1,-2)")).unwrap(), idd("[1] [2]"));
    }

    #[test]
    fn certification_small() {
        assert!(coxeter_interval(GroupType::C(2)).certify_lattice().is_ok());
        assert!(coxeter_interval(GroupType::D(3)).certify_lattice().is_ok());
        // Non-Coxeter top: the central element of C_2 still spans a lattice.
        let iv = Interval::new(GroupType::C(2), &perm("[1] [2]", 2)).unwrap();
        assert_eq!(iv.len(), 6);
        assert_eq!(iv.atoms().len(), 4);
        assert!(iv.certify_lattice().is_ok());
    }

    #[test]
    fn structured_meet_examples() {
        let iv = coxeter_interval(GroupType::D(3));
        let id = |s: &str| iv.id_of(&perm(s, 3)).unwrap();
        assert_eq!(
            iv.meet_d_structured(id("[1] [2]"), id("[1] [3]")).unwrap(),
            iv.identity_id()
        );
        assert_eq!(iv.meet_d_structured(id("(1,2)"), id("(1,2,3)")).unwrap(), id("(1,2)"));
        assert_eq!(iv.meet_d_structured(id("(1,2)"), id("[1] [2]")).unwrap(), id("(1,2)"));
    }

    #[test]
    fn non_lattice_interval_yields_a_witness() {
        // Two commuting balanced 2-cycles span an interval where the joins
        // of certain crossing reflections are not unique.
        let gamma = perm("[1,2] [3,4]", 4);
        let iv = Interval::new(GroupType::C(4), &gamma).unwrap();
        let f = iv.certify_lattice().unwrap_err();
        assert_eq!(f.op, BoundKind::Join);
        assert!(!iv.le(f.w1, f.w2) && !iv.le(f.w2, f.w1));
        assert!(iv.le(f.a, f.w1) && iv.le(f.b, f.w1));
        assert!(iv.le(f.a, f.w2) && iv.le(f.b, f.w2));
        let a = iv.id_of(&perm("(1,-3)", 4)).unwrap();
        let b = iv.id_of(&perm("(2,-4)", 4)).unwrap();
        assert!(iv.join(a, b).is_err());
        assert!(iv.meet(a, b).is_ok());
    }

    #[test]
    fn structured_meet_needs_type_d() {
        let iv = coxeter_interval(GroupType::C(2));
        assert_eq!(
            iv.meet_d_structured(0, 0).unwrap_err(),
            IntervalError::NotDCoxeterInterval
        );
    }

    #[test]
    fn ncp_examples() {
        let iv = coxeter_interval(GroupType::C(2));
        let id_i = iv.identity_id();
        assert_eq!(iv.to_ncp(id_i).blocks().len(), 4);
        let top = iv.to_ncp(iv.gamma_id());
        assert_eq!(top.blocks(), [vec![1, 2, -1, -2]]);
        let pc = iv.to_ncp(iv.id_of(&perm("(1,2)", 2)).unwrap());
        assert_eq!(pc.blocks(), [vec![1, 2], vec![-1, -2]]);
    }

    #[test]
    fn ncp_round_trip() {
        for gt in [GroupType::C(3), GroupType::C(4)] {
            let iv = coxeter_interval(gt);
            for i in 0..iv.len() {
                assert_eq!(iv.to_ncp(i).to_perm(), *iv.element(i), "{}", iv.name(i));
            }
        }
    }

    #[test]
    fn factorization_examples() {
        let facts = reduced_factorizations(&perm("[1] [2]", 2), GroupType::C(2));
        let strings: Vec<String> = facts
            .iter()
            .map(|f| f.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        assert_eq!(strings, ["[1] [2]", "[2] [1]", "(1,2) (1,-2)", "(1,-2) (1,2)"]);

        let single = reduced_factorizations(&perm("(1,-2)", 2), GroupType::C(2));
        assert_eq!(single.len(), 1);

        let c3 = reduced_factorizations(&coxeter_element(GroupType::C(3)), GroupType::C(3));
        assert_eq!(c3.len(), 27);
    }

    #[test]
    fn factorizations_match_products() {
        let gt = GroupType::D(3);
        let gamma = coxeter_element(gt);
        let facts = reduced_factorizations(&gamma, gt);
        assert_eq!(facts.len(), 16);
        for f in &facts {
            let mut p = SignedPerm::identity(3);
            for r in f {
                p = p.compose(&r.to_perm(3).unwrap()).unwrap();
            }
            assert_eq!(p, gamma);
        }
    }

    #[test]
    fn profile_examples() {
        let n = 2;
        let seq = [Reflection::sign_change(1), Reflection::sign_change(2)];
        assert_eq!(balanced_cycle_profile(&seq, n).unwrap(), vec![1, 2]);
        let seq = [Reflection::transposition(1, 2), Reflection::transposition(1, -2)];
        assert_eq!(balanced_cycle_profile(&seq, n).unwrap(), vec![0, 2]);
        // Type-C factorizations jump exactly once, by one.
        for f in reduced_factorizations(&coxeter_element(GroupType::C(3)), GroupType::C(3)) {
            let counts = balanced_cycle_profile(&f, 3).unwrap();
            assert_eq!(counts.iter().filter(|&&c| c == 1).count(), counts.iter().filter(|&&c| c != 0).count());
        }
        // Non-reduced sequences are counted but not constrained.
        let wandering = [Reflection::sign_change(1); 3];
        assert_eq!(balanced_cycle_profile(&wandering, 1).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn maximal_chtable_matches_factorizations() {
        for gt in [GroupType::C(2), GroupType::C(3), GroupType::D(3)] {
            let iv = coxeter_interval(gt);
            let chains = iv.maximal_chain_count();
            let facts = reduced_factorizations(&coxeter_element(gt), gt).len() as u64;
            assert_eq!(chains, facts, "{gt}");
        }
    }
}
