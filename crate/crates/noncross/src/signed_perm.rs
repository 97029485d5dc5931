//! Elements of the hyperoctahedral group `C_n` as signed permutations of
//! `{1..n}`, their paired/balanced cycle decompositions, the reflection sets
//! of types C and D, and the reflection length function.
//!
//! An element `a` acts on the signed index set `{±1..±n}` with
//! `a(-i) = -a(i)`, so only the images of the positive indices are stored.
//! Products are ordinary composition of maps: `(a·b)(x) = a(b(x))`, the
//! convention under which the classical cycle identities such as
//! `[i_1,..,i_k]·[i_k] = ((i_1,..,i_k))` hold verbatim.

use std::fmt;

use thiserror::Error;

/// Largest supported rank. Indices always fit in an `i32` and the exhaustive
/// routines elsewhere in the crate stay tractable.
pub const MAX_RANK: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank {0} out of range (1..={MAX_RANK})")]
    RankOutOfRange(usize),
    #[error("type D requires rank >= 2, got {0}")]
    RankTooSmallForD(usize),
    #[error("images do not form a signed permutation")]
    InvalidImages,
    #[error("invalid cycle: {0}")]
    InvalidCycle(&'static str),
    #[error("unknown group type tag {0:?} (expected C or D)")]
    UnknownGroupType(char),
    #[error("element is not a member of {0}")]
    NotAMember(GroupType),
}

/// Syntax error in the element grammar, with a byte offset into the input.
/// Inputs are single-line, so the position reads as line 1, column
/// `offset + 1`.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at line 1, column {}: {msg}", offset + 1)]
pub struct ParseError {
    pub offset: usize,
    pub msg: String,
}

impl ParseError {
    fn new(offset: usize, msg: impl Into<String>) -> Self {
        ParseError { offset, msg: msg.into() }
    }
}

/// One of the two families of finite reflection groups handled here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupType {
    C(usize),
    D(usize),
}

impl GroupType {
    pub fn new(tag: char, n: usize) -> Result<Self, GroupError> {
        if !(1..=MAX_RANK).contains(&n) {
            return Err(GroupError::RankOutOfRange(n));
        }
        match tag {
            'C' | 'c' => Ok(GroupType::C(n)),
            'D' | 'd' => {
                if n < 2 {
                    Err(GroupError::RankTooSmallForD(n))
                } else {
                    Ok(GroupType::D(n))
                }
            }
            tag => Err(GroupError::UnknownGroupType(tag)),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            GroupType::C(n) | GroupType::D(n) => n,
        }
    }

    pub fn is_d(&self) -> bool {
        matches!(self, GroupType::D(_))
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::C(n) => write!(f, "C{n}"),
            GroupType::D(n) => write!(f, "D{n}"),
        }
    }
}

/// A signed permutation: entry `i-1` is the image of `+i`, in `{±1..±n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    images: Vec<i32>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { images: (1..=n as i32).collect() }
    }

    /// Builds an element from the images of `1..=n`, validating that the
    /// absolute values form a permutation.
    pub fn from_images(images: Vec<i32>) -> Result<Self, GroupError> {
        let n = images.len();
        if n == 0 || n > MAX_RANK {
            return Err(GroupError::RankOutOfRange(n));
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(GroupError::InvalidImages);
            }
            seen[a] = true;
        }
        Ok(SignedPerm { images })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// Image of a signed index, using `a(-i) = -a(i)`.
    pub fn apply(&self, i: i32) -> i32 {
        debug_assert!(i != 0 && i.unsigned_abs() as usize <= self.rank());
        if i > 0 {
            self.images[(i - 1) as usize]
        } else {
            -self.images[(-i - 1) as usize]
        }
    }

    /// Group product `self · other`, i.e. the map `x -> self(other(x))`.
    pub fn compose(&self, other: &SignedPerm) -> Result<SignedPerm, GroupError> {
        if self.rank() != other.rank() {
            return Err(GroupError::RankMismatch(self.rank(), other.rank()));
        }
        let images = (1..=self.rank() as i32).map(|i| self.apply(other.apply(i))).collect();
        Ok(SignedPerm { images })
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.rank();
        let mut images = vec![0; n];
        for i in 1..=n as i32 {
            let v = self.apply(i);
            if v > 0 {
                images[(v - 1) as usize] = i;
            } else {
                images[(-v - 1) as usize] = -i;
            }
        }
        SignedPerm { images }
    }

    /// `self · other · self^{-1}`.
    pub fn conjugate(&self, other: &SignedPerm) -> Result<SignedPerm, GroupError> {
        self.compose(other)?.compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i as i32 + 1)
    }

    /// Disjoint paired/balanced cycle decomposition; fixed points appear as
    /// singleton paired cycles.
    pub fn decompose(&self) -> CycleDecomposition {
        let n = self.rank();
        let mut visited = vec![false; n + 1]; // by absolute value
        let mut paired = Vec::new();
        let mut balanced = Vec::new();
        for start in 1..=n as i32 {
            if visited[start as usize] {
                continue;
            }
            // Walk the orbit of +start. If it returns to -start the orbit is
            // a single self-negated 2k-cycle (balanced); otherwise it pairs
            // with its negation (paired).
            let mut orbit = vec![start];
            let mut cur = self.apply(start);
            while cur != start && cur != -start {
                orbit.push(cur);
                cur = self.apply(cur);
            }
            for &v in &orbit {
                visited[v.unsigned_abs() as usize] = true;
            }
            if cur == -start {
                let k = orbit.len();
                debug_assert!(k % 2 == 0 || k == orbit.len());
                // orbit holds the first half i_1..i_k of (i_1..i_k,-i_1..-i_k)
                balanced.push(Cycle::balanced(orbit).expect("orbit entries are distinct"));
            } else {
                paired.push(Cycle::paired(orbit).expect("orbit entries are distinct"));
            }
        }
        paired.sort_by_key(|c| c.entries()[0]);
        balanced.sort_by_key(|c| c.entries()[0]);
        CycleDecomposition { n, paired, balanced }
    }

    /// Minimal number of reflections of `C_n` whose product is `self`.
    pub fn reflection_length(&self) -> usize {
        self.rank() - self.decompose().paired.len()
    }

    /// Dimension of the fixed subspace; complements `reflection_length`.
    pub fn fixed_space_dim(&self) -> usize {
        self.decompose().paired.len()
    }

    /// Length with respect to all transpositions of the symmetric group on
    /// `{±1..±n}`: `2n` minus the number of orbits.
    pub fn transposition_length(&self) -> usize {
        let n = self.rank();
        let d = self.decompose();
        let orbits: usize = d.paired.iter().map(|_| 2).sum::<usize>() + d.balanced.len();
        2 * n - orbits
    }

    /// Membership test: every element lies in `C_n`; membership in `D_n`
    /// requires an even number of balanced cycles.
    pub fn is_member(&self, gt: GroupType) -> bool {
        if self.rank() != gt.rank() {
            return false;
        }
        match gt {
            GroupType::C(_) => true,
            GroupType::D(_) => self.decompose().balanced.len().is_multiple_of(2),
        }
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPerm({self})")
    }
}

/// Canonical printed form: disjoint cycles sorted by leading entry, fixed
/// points omitted, identity printed as `I`.
impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.decompose();
        let mut cycles: Vec<&Cycle> = d
            .paired
            .iter()
            .filter(|c| c.entries().len() > 1)
            .chain(d.balanced.iter())
            .collect();
        cycles.sort_by_key(|c| c.entries()[0]);
        if cycles.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<String> = cycles.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleKind {
    Paired,
    Balanced,
}

/// One paired cycle `((i_1,..,i_k))` or balanced cycle `[i_1,..,i_k]`,
/// stored in canonical form: rotated so the entry of least absolute value
/// comes first, and negated if necessary so that entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    kind: CycleKind,
    entries: Vec<i32>,
}

impl Cycle {
    pub fn paired(entries: Vec<i32>) -> Result<Self, GroupError> {
        Self::build(CycleKind::Paired, entries)
    }

    pub fn balanced(entries: Vec<i32>) -> Result<Self, GroupError> {
        Self::build(CycleKind::Balanced, entries)
    }

    fn build(kind: CycleKind, entries: Vec<i32>) -> Result<Self, GroupError> {
        if entries.is_empty() {
            return Err(GroupError::InvalidCycle("no entries"));
        }
        let mut abs: Vec<u32> = entries.iter().map(|e| e.unsigned_abs()).collect();
        abs.sort_unstable();
        if abs.contains(&0) || abs.windows(2).any(|w| w[0] == w[1]) {
            return Err(GroupError::InvalidCycle("entries must have distinct nonzero absolute values"));
        }
        let mut c = Cycle { kind, entries };
        c.canonicalize();
        Ok(c)
    }

    fn canonicalize(&mut self) {
        let k = self.entries.len();
        match self.kind {
            CycleKind::Paired => {
                // Rotations and the global negation all write the same
                // paired cycle; lead with the positive minimum.
                let min_pos = self
                    .entries
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, e)| e.unsigned_abs())
                    .map(|(i, _)| i)
                    .unwrap();
                self.entries.rotate_left(min_pos);
                if self.entries[0] < 0 {
                    for e in &mut self.entries {
                        *e = -*e;
                    }
                }
            }
            CycleKind::Balanced => {
                // The 2k windows of (i_1..i_k,-i_1..-i_k) are the written
                // forms; take the one starting at the positive minimum.
                let mut doubled = self.entries.clone();
                doubled.extend(self.entries.iter().map(|e| -e));
                let min = self.entries.iter().map(|e| e.abs()).min().unwrap();
                let p = doubled.iter().position(|&e| e == min).unwrap();
                self.entries = (0..k).map(|i| doubled[(p + i) % (2 * k)]).collect();
            }
        }
    }

    /// Every way of writing this cycle: rotations and the negation for a
    /// paired cycle, the `2k` windows of the doubled word for a balanced one.
    pub fn written_forms(&self) -> Vec<Vec<i32>> {
        let k = self.entries.len();
        match self.kind {
            CycleKind::Paired => {
                let mut out = Vec::with_capacity(2 * k);
                for negate in [false, true] {
                    let base: Vec<i32> = if negate {
                        self.entries.iter().map(|e| -e).collect()
                    } else {
                        self.entries.clone()
                    };
                    for r in 0..k {
                        let mut form = base.clone();
                        form.rotate_left(r);
                        out.push(form);
                    }
                }
                out
            }
            CycleKind::Balanced => {
                let mut doubled = self.entries.clone();
                doubled.extend(self.entries.iter().map(|e| -e));
                (0..2 * k)
                    .map(|r| (0..k).map(|i| doubled[(r + i) % (2 * k)]).collect())
                    .collect()
            }
        }
    }

    pub fn kind(&self) -> CycleKind {
        self.kind
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    /// Reflection length of the cycle as a group element: `k-1` for a paired
    /// cycle, `k` for a balanced one.
    pub fn reflection_length(&self) -> usize {
        match self.kind {
            CycleKind::Paired => self.entries.len() - 1,
            CycleKind::Balanced => self.entries.len(),
        }
    }

    /// The signed permutation of rank `n` given by this single cycle.
    pub fn to_perm(&self, n: usize) -> Result<SignedPerm, GroupError> {
        let mut p = SignedPerm::identity(n);
        if self.entries.iter().any(|e| e.unsigned_abs() as usize > n) {
            return Err(GroupError::InvalidCycle("entry exceeds the rank"));
        }
        let k = self.entries.len();
        let set = |p: &mut SignedPerm, from: i32, to: i32| {
            if from > 0 {
                p.images[(from - 1) as usize] = to;
            } else {
                p.images[(-from - 1) as usize] = -to;
            }
        };
        match self.kind {
            CycleKind::Paired => {
                for i in 0..k {
                    set(&mut p, self.entries[i], self.entries[(i + 1) % k]);
                }
            }
            CycleKind::Balanced => {
                // Underlying 2k-cycle (i_1,..,i_k,-i_1,..,-i_k).
                for i in 0..k {
                    let next = if i + 1 == k { -self.entries[0] } else { self.entries[i + 1] };
                    set(&mut p, self.entries[i], next);
                }
            }
        }
        Ok(p)
    }

    /// The signed indices moved by this cycle.
    pub fn support(&self) -> Vec<i32> {
        match self.kind {
            CycleKind::Paired => self.entries.clone(),
            CycleKind::Balanced => {
                let mut s = self.entries.clone();
                s.extend(self.entries.iter().map(|e| -e));
                s
            }
        }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        match self.kind {
            CycleKind::Paired => write!(f, "({})", inner.join(",")),
            CycleKind::Balanced => write!(f, "[{}]", inner.join(",")),
        }
    }
}

/// Disjoint paired and balanced cycles whose product is a group element;
/// fixed points are kept as singleton paired cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub n: usize,
    pub paired: Vec<Cycle>,
    pub balanced: Vec<Cycle>,
}

impl CycleDecomposition {
    pub fn to_perm(&self) -> Result<SignedPerm, GroupError> {
        let mut p = SignedPerm::identity(self.n);
        for c in self.paired.iter().chain(self.balanced.iter()) {
            p = p.compose(&c.to_perm(self.n)?)?;
        }
        Ok(p)
    }

    pub fn reflection_length(&self) -> usize {
        self.paired.iter().map(Cycle::reflection_length).sum::<usize>()
            + self.balanced.iter().map(Cycle::reflection_length).sum::<usize>()
    }

    pub fn balanced_count(&self) -> usize {
        self.balanced.len()
    }
}

/// A reflection of `C_n`: the sign change `[i]` (hyperplane `x_i = 0`) or a
/// transposition pair `(i, ±j)` (hyperplane `x_i = ∓x_j`), canonicalized so
/// that `0 < i < j` with the sign carried by `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reflection {
    SignChange(i32),
    Transposition(i32, i32),
}

impl Reflection {
    pub fn sign_change(i: i32) -> Self {
        debug_assert!(i != 0);
        Reflection::SignChange(i.abs())
    }

    /// Transposition reflection through `x_{|i|} = ±x_{|j|}`, from any of its
    /// written forms `(i,j) = (j,i) = (-i,-j) = (-j,-i)`.
    pub fn transposition(i: i32, j: i32) -> Self {
        debug_assert!(i != 0 && j != 0 && i.abs() != j.abs());
        let (a, b) = if i.abs() < j.abs() { (i, j) } else { (j, i) };
        if a > 0 {
            Reflection::Transposition(a, b)
        } else {
            Reflection::Transposition(-a, -b)
        }
    }

    pub fn to_perm(&self, n: usize) -> Result<SignedPerm, GroupError> {
        match *self {
            Reflection::SignChange(i) => Cycle::balanced(vec![i])?.to_perm(n),
            Reflection::Transposition(i, j) => Cycle::paired(vec![i, j])?.to_perm(n),
        }
    }

    pub fn is_sign_change(&self) -> bool {
        matches!(self, Reflection::SignChange(_))
    }

    /// The chords this reflection draws on the circle `{±1..±n}`: one
    /// antipodal chord `{k,-k}` for a sign change, two chords `{i,j}` and
    /// `{-i,-j}` for a transposition pair.
    pub fn chords(&self) -> Vec<(i32, i32)> {
        match *self {
            Reflection::SignChange(i) => vec![(i, -i)],
            Reflection::Transposition(i, j) => vec![(i, j), (-i, -j)],
        }
    }

    /// Recognizes a reflection from a full group element.
    pub fn from_perm(p: &SignedPerm) -> Option<Reflection> {
        let d = p.decompose();
        if d.balanced.len() == 1 && d.balanced[0].entries().len() == 1 && d.paired.len() == p.rank() - 1
        {
            return Some(Reflection::sign_change(d.balanced[0].entries()[0]));
        }
        if d.balanced.is_empty() && d.paired.len() == p.rank() - 1 {
            let c = d.paired.iter().find(|c| c.entries().len() == 2)?;
            return Some(Reflection::transposition(c.entries()[0], c.entries()[1]));
        }
        None
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Reflection::SignChange(i) => write!(f, "[{i}]"),
            Reflection::Transposition(i, j) => write!(f, "({i},{j})"),
        }
    }
}

/// The full reflection set of the group, in a fixed enumeration order:
/// sign changes `[1]..[n]` first (type C only), then `(i,j)`, `(i,-j)`
/// lexicographically. `n²` reflections for `C_n`, `n(n-1)` for `D_n`.
pub fn reflections(gt: GroupType) -> Vec<Reflection> {
    let n = gt.rank() as i32;
    let mut out = Vec::new();
    if !gt.is_d() {
        for i in 1..=n {
            out.push(Reflection::SignChange(i));
        }
    }
    for i in 1..n {
        for j in i + 1..=n {
            out.push(Reflection::Transposition(i, j));
            out.push(Reflection::Transposition(i, -j));
        }
    }
    out
}

/// The chosen Coxeter elements: `[1,2,..,n]` for `C_n` and `[1][2,3,..,n]`
/// for `D_n`.
pub fn coxeter_element(gt: GroupType) -> SignedPerm {
    let n = gt.rank();
    match gt {
        GroupType::C(_) => Cycle::balanced((1..=n as i32).collect())
            .and_then(|c| c.to_perm(n))
            .expect("valid rank"),
        GroupType::D(_) => {
            let one = Cycle::balanced(vec![1]).unwrap().to_perm(n).expect("valid rank");
            let rest = Cycle::balanced((2..=n as i32).collect())
                .and_then(|c| c.to_perm(n))
                .expect("valid rank");
            one.compose(&rest).expect("same rank")
        }
    }
}

/// Every element of `C_n`, in a deterministic order. Exponential in `n`;
/// meant for the exhaustive scans of the test suites and small demos.
pub fn all_elements(n: usize) -> Vec<SignedPerm> {
    assert!((1..=8).contains(&n), "exhaustive enumeration is for small ranks");
    let mut perms: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for v in 1..=n as i32 {
                if !p.iter().any(|e| e.abs() == v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    let mut out = Vec::with_capacity(perms.len() << n);
    for p in perms {
        for mask in 0..1u32 << n {
            let images = p
                .iter()
                .enumerate()
                .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                .collect();
            out.push(SignedPerm { images });
        }
    }
    out
}

/// Parses the element grammar: `I`, `[i1,..,ik]` (balanced), `(i1,..,ik)`
/// (paired), disjoint cycles juxtaposed with spaces, entries negated as
/// `-j`. The result is the product of the listed cycles.
pub fn parse_element(input: &str, n: usize) -> Result<SignedPerm, ParseError> {
    if n == 0 || n > MAX_RANK {
        return Err(ParseError::new(0, format!("rank {n} out of range")));
    }
    let s = input.trim();
    let base = input.len() - input.trim_start().len();
    if s.is_empty() {
        return Err(ParseError::new(base, "empty element"));
    }
    if s == "I" {
        return Ok(SignedPerm::identity(n));
    }
    let bytes = s.as_bytes();
    let mut pos = 0usize;
    let mut cycles: Vec<Cycle> = Vec::new();
    let mut used = vec![false; n + 1];
    while pos < bytes.len() {
        while pos < bytes.len() && bytes[pos] == b' ' {
            pos += 1;
        }
        if pos >= bytes.len() {
            break;
        }
        let (open, close, kind) = match bytes[pos] {
            b'[' => (b'[', b']', CycleKind::Balanced),
            b'(' => (b'(', b')', CycleKind::Paired),
            _ => {
                return Err(ParseError::new(base + pos, "expected '[' or '('"));
            }
        };
        debug_assert_eq!(bytes[pos], open);
        let start = pos;
        pos += 1;
        let mut entries = Vec::new();
        loop {
            let num_start = pos;
            if pos < bytes.len() && bytes[pos] == b'-' {
                pos += 1;
            }
            let digits_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == digits_start {
                return Err(ParseError::new(base + pos, "expected an integer entry"));
            }
            let v: i64 = s[num_start..pos].parse().map_err(|_| {
                ParseError::new(base + num_start, "integer entry out of range")
            })?;
            if v == 0 || v.unsigned_abs() as usize > n {
                return Err(ParseError::new(
                    base + num_start,
                    format!("entry {v} outside 1..={n} in absolute value"),
                ));
            }
            let a = v.unsigned_abs() as usize;
            if used[a] {
                return Err(ParseError::new(
                    base + num_start,
                    format!("index {a} appears in two cycles"),
                ));
            }
            used[a] = true;
            entries.push(v as i32);
            if pos < bytes.len() && bytes[pos] == b',' {
                pos += 1;
                continue;
            }
            break;
        }
        if pos >= bytes.len() || bytes[pos] != close {
            return Err(ParseError::new(base + pos, format!("expected '{}'", close as char)));
        }
        pos += 1;
        let cycle = match kind {
            CycleKind::Paired => Cycle::paired(entries),
            CycleKind::Balanced => Cycle::balanced(entries),
        }
        .map_err(|_| ParseError::new(base + start, "repeated index inside a cycle"))?;
        cycles.push(cycle);
    }
    let mut p = SignedPerm::identity(n);
    for c in &cycles {
        let q = c.to_perm(n).map_err(|_| ParseError::new(base, "cycle entry exceeds rank"))?;
        p = p.compose(&q).expect("same rank");
    }
    Ok(p)
}

/// Parses an element and checks membership in the given group.
pub fn parse_element_in(input: &str, gt: GroupType) -> Result<SignedPerm, ParseError> {
    let p = parse_element(input, gt.rank())?;
    if !p.is_member(gt) {
        return Err(ParseError::new(0, format!("element is not a member of {gt}")));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> SignedPerm {
        parse_element(s, n).unwrap()
    }

    #[test]
    fn compose_matches_cycle_identities() {
        // [1,2,3]·[3] = ((1,2,3))
        let lhs = perm("[1,2,3]", 3).compose(&perm("[3]", 3)).unwrap();
        assert_eq!(lhs, perm("(1,2,3)", 3));
        // identity and involutions
        let a = perm("[1,2]", 2);
        assert_eq!(a.compose(&SignedPerm::identity(2)).unwrap(), a);
        let r = perm("(1,2)", 2);
        assert!(r.compose(&r).unwrap().is_identity());
    }

    #[test]
    fn compose_rank_mismatch() {
        let a = SignedPerm::identity(2);
        let b = SignedPerm::identity(3);
        assert_eq!(a.compose(&b), Err(GroupError::RankMismatch(2, 3)));
    }

    #[test]
    fn inverse_round_trips() {
        assert!(SignedPerm::identity(4).inverse().is_identity());
        let invol = perm("(1,-2)", 2);
        assert_eq!(invol.inverse(), invol);
        let b = perm("[1,2,3]", 3);
        assert!(b.compose(&b.inverse()).unwrap().is_identity());
        assert!(b.inverse().compose(&b).unwrap().is_identity());
    }

    #[test]
    fn decompose_examples() {
        let d = SignedPerm::identity(2).decompose();
        assert_eq!(d.paired.len(), 2);
        assert!(d.balanced.is_empty());
        assert_eq!(d.paired[0].entries(), &[1]);

        let zeta = SignedPerm::from_images(vec![-1, -2]).unwrap();
        let d = zeta.decompose();
        assert!(d.paired.is_empty());
        assert_eq!(d.balanced.len(), 2);
        assert_eq!(zeta.to_string(), "[1] [2]");

        let gd = coxeter_element(GroupType::D(3));
        let d = gd.decompose();
        assert_eq!(d.balanced.len(), 2);
        assert_eq!(d.balanced[0].entries(), &[1]);
        assert_eq!(d.balanced[1].entries(), &[2, 3]);
        assert_eq!(gd.to_string(), "[1] [2,3]");
    }

    #[test]
    fn reflection_sets() {
        let rc: Vec<String> =
            reflections(GroupType::C(2)).iter().map(|r| r.to_string()).collect();
        assert_eq!(rc, ["[1]", "[2]", "(1,2)", "(1,-2)"]);
        let rd: Vec<String> =
            reflections(GroupType::D(2)).iter().map(|r| r.to_string()).collect();
        assert_eq!(rd, ["(1,2)", "(1,-2)"]);
        assert_eq!(reflections(GroupType::C(1)).len(), 1);
        assert_eq!(reflections(GroupType::C(4)).len(), 16);
        assert_eq!(reflections(GroupType::D(4)).len(), 12);
    }

    #[test]
    fn reflections_have_length_one() {
        for gt in [GroupType::C(4), GroupType::D(4)] {
            for r in reflections(gt) {
                let p = r.to_perm(4).unwrap();
                assert_eq!(p.reflection_length(), 1, "{r}");
                assert!(p.is_member(gt), "{r} in {gt}");
            }
        }
    }

    #[test]
    fn length_examples() {
        assert_eq!(perm("(1,2,3)", 3).reflection_length(), 2);
        assert_eq!(perm("[1,2,3]", 3).reflection_length(), 3);
        assert_eq!(SignedPerm::identity(3).reflection_length(), 0);
        assert_eq!(perm("(1,2) [3]", 3).reflection_length(), 2);
    }

    #[test]
    fn fixed_space_dims() {
        for n in 1..=5usize {
            for k in 1..=n {
                let c = Cycle::paired((1..=k as i32).collect()).unwrap().to_perm(n).unwrap();
                assert_eq!(c.fixed_space_dim(), n - k + 1);
                let b = Cycle::balanced((1..=k as i32).collect()).unwrap().to_perm(n).unwrap();
                assert_eq!(b.fixed_space_dim(), n - k);
            }
            assert_eq!(SignedPerm::identity(n).fixed_space_dim(), n);
        }
    }

    #[test]
    fn transposition_lengths() {
        for n in 2..=5usize {
            for k in 1..=n {
                let c = Cycle::paired((1..=k as i32).collect()).unwrap().to_perm(n).unwrap();
                assert_eq!(c.transposition_length(), 2 * k - 2);
                let b = Cycle::balanced((1..=k as i32).collect()).unwrap().to_perm(n).unwrap();
                assert_eq!(b.transposition_length(), 2 * k - 1);
            }
            assert_eq!(SignedPerm::identity(n).transposition_length(), 0);
        }
    }

    #[test]
    fn d_membership() {
        assert!(perm("[1] [2]", 2).is_member(GroupType::D(2)));
        assert!(!perm("[1]", 3).is_member(GroupType::D(3)));
        assert!(SignedPerm::identity(3).is_member(GroupType::D(3)));
    }

    #[test]
    fn coxeter_elements() {
        assert_eq!(coxeter_element(GroupType::C(2)).to_string(), "[1,2]");
        assert_eq!(coxeter_element(GroupType::D(3)).to_string(), "[1] [2,3]");
        assert_eq!(coxeter_element(GroupType::C(1)).to_string(), "[1]");
        assert_eq!(coxeter_element(GroupType::C(4)).reflection_length(), 4);
        assert_eq!(coxeter_element(GroupType::D(4)).reflection_length(), 4);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_element("", 2).is_err());
        assert!(parse_element("[1,1]", 2).is_err());
        assert!(parse_element("[1] [1]", 2).is_err());
        assert!(parse_element("[3]", 2).is_err());
        assert!(parse_element("[0]", 2).is_err());
        assert!(parse_element("(1", 2).is_err());
        assert!(parse_element("x", 2).is_err());
        let err = parse_element("[1] [x]", 3).unwrap_err();
        assert_eq!(err.offset, 5);
    }

    #[test]
    fn parse_accepts_noncanonical_forms() {
        assert_eq!(perm("(2,1)", 3), perm("(1,2)", 3));
        assert_eq!(perm("(-1,-2)", 3), perm("(1,2)", 3));
        assert_eq!(perm("[2,-1]", 2), perm("[1,2]", 2));
        assert_eq!(perm("(3) (1,2)", 3), perm("(1,2)", 3));
    }

    #[test]
    fn canonical_print_is_stable() {
        assert_eq!(SignedPerm::identity(3).to_string(), "I");
        assert_eq!(perm("[2,3] [1]", 3).to_string(), "[1] [2,3]");
        assert_eq!(perm("(2,-3)", 4).to_string(), "(2,-3)");
    }
}
