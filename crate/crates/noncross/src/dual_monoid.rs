//! The interval monoid attached to `[I, gamma]`: positive words over the
//! non-identity interval elements, the defining relations
//! `{w1}{w2} = {w3}` for `w1 <= w3` with `w2 = w1^{-1}w3`, a breadth-first
//! rewriting oracle for positive equality, and a greedy left-weighted normal
//! form that decides the word problem on certified lattice intervals.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::absolute_order::{ElemId, Interval, LatticeCertificate};
use crate::signed_perm::ParseError;

/// Closure cap for the breadth-first oracle; exceeding it is an explicit
/// error, never a silent wrong answer.
pub const BFS_VISIT_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonoidError {
    #[error("positive words must not contain the identity letter")]
    IdentityLetter,
    #[error("letter index {0} outside the interval")]
    LetterOutOfRange(usize),
    #[error("positive words must contain at least one letter")]
    EmptyWord,
    #[error("rewriting closure exceeded {0} visited words")]
    ResourceLimit(usize),
}

/// A word in the monoid generators: a sequence of non-identity interval
/// element ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositiveWord {
    letters: Vec<ElemId>,
}

impl PositiveWord {
    pub fn new(letters: Vec<ElemId>, iv: &Interval) -> Result<Self, MonoidError> {
        if letters.is_empty() {
            return Err(MonoidError::EmptyWord);
        }
        for &l in &letters {
            if l >= iv.len() {
                return Err(MonoidError::LetterOutOfRange(l));
            }
            if l == iv.identity_id() {
                return Err(MonoidError::IdentityLetter);
            }
        }
        Ok(PositiveWord { letters })
    }

    pub fn single(letter: ElemId, iv: &Interval) -> Result<Self, MonoidError> {
        Self::new(vec![letter], iv)
    }

    pub fn letters(&self) -> &[ElemId] {
        &self.letters
    }

    /// Sum of the reflection lengths of the letters; invariant under every
    /// defining relation.
    pub fn word_length(&self, iv: &Interval) -> usize {
        self.letters.iter().map(|&l| iv.length(l)).sum()
    }

    pub fn concat(&self, other: &PositiveWord) -> PositiveWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        PositiveWord { letters }
    }
}

/// One defining relation `{w1}{w2} = {w3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relation {
    pub left: (ElemId, ElemId),
    pub right: ElemId,
}

/// All defining relations of the monoid of `iv`.
pub fn relations(iv: &Interval) -> Vec<Relation> {
    let mut out = Vec::new();
    for w3 in 0..iv.len() {
        for &(w1, w2) in iv.factor_pairs(w3) {
            out.push(Relation { left: (w1, w2), right: w3 });
        }
    }
    out
}

fn letter_lengths(word: &[ElemId], iv: &Interval) -> usize {
    word.iter().map(|&l| iv.length(l)).sum()
}

/// Words reachable from `word` by one application of a defining relation:
/// split one letter, merge an adjacent pair, or replace an adjacent pair by
/// another factorization of the same product.
pub fn rewrite_neighbors(word: &[ElemId], iv: &Interval) -> Vec<Vec<ElemId>> {
    let total = letter_lengths(word, iv);
    let mut out = Vec::new();
    for i in 0..word.len() {
        for &(w1, w2) in iv.factor_pairs(word[i]) {
            let mut next = Vec::with_capacity(word.len() + 1);
            next.extend_from_slice(&word[..i]);
            next.push(w1);
            next.push(w2);
            next.extend_from_slice(&word[i + 1..]);
            out.push(next);
        }
    }
    for i in 0..word.len().saturating_sub(1) {
        let product = iv.element(word[i]).compose(iv.element(word[i + 1])).expect("same rank");
        let Some(z) = iv.id_of(&product) else { continue };
        if iv.length(z) != iv.length(word[i]) + iv.length(word[i + 1]) {
            continue;
        }
        let mut merged = Vec::with_capacity(word.len() - 1);
        merged.extend_from_slice(&word[..i]);
        merged.push(z);
        merged.extend_from_slice(&word[i + 2..]);
        out.push(merged);
        for &(w1, w2) in iv.factor_pairs(z) {
            if (w1, w2) == (word[i], word[i + 1]) {
                continue;
            }
            let mut next = word.to_vec();
            next[i] = w1;
            next[i + 1] = w2;
            out.push(next);
        }
    }
    for next in &out {
        assert_eq!(letter_lengths(next, iv), total, "rewrite changed the word length");
    }
    out
}

/// The full positive-equality class of a word, by breadth-first closure
/// capped at `cap` visited words.
pub fn equality_class(
    word: &PositiveWord,
    iv: &Interval,
    cap: usize,
) -> Result<HashSet<Vec<ElemId>>, MonoidError> {
    let mut seen: HashSet<Vec<ElemId>> = HashSet::new();
    let mut queue: VecDeque<Vec<ElemId>> = VecDeque::new();
    seen.insert(word.letters().to_vec());
    queue.push_back(word.letters().to_vec());
    while let Some(w) = queue.pop_front() {
        for next in rewrite_neighbors(&w, iv) {
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(MonoidError::ResourceLimit(cap));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Breadth-first oracle for positive equality. Words of different word
/// length are immediately unequal.
pub fn positively_equal(
    a: &PositiveWord,
    b: &PositiveWord,
    iv: &Interval,
) -> Result<bool, MonoidError> {
    if a.word_length(iv) != b.word_length(iv) {
        return Ok(false);
    }
    if a == b {
        return Ok(true);
    }
    let target = b.letters().to_vec();
    let mut seen: HashSet<Vec<ElemId>> = HashSet::new();
    let mut queue: VecDeque<Vec<ElemId>> = VecDeque::new();
    seen.insert(a.letters().to_vec());
    queue.push_back(a.letters().to_vec());
    while let Some(w) = queue.pop_front() {
        for next in rewrite_neighbors(&w, iv) {
            if next == target {
                return Ok(true);
            }
            if !seen.contains(&next) {
                if seen.len() >= BFS_VISIT_CAP {
                    return Err(MonoidError::ResourceLimit(BFS_VISIT_CAP));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// Canonical left-weighted representative of a positive-equality class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    letters: Vec<ElemId>,
}

impl NormalForm {
    pub fn letters(&self) -> &[ElemId] {
        &self.letters
    }

    pub fn to_word(&self, iv: &Interval) -> PositiveWord {
        PositiveWord::new(self.letters.clone(), iv).expect("normal forms are valid words")
    }
}

/// Greedy left-weighting pass: while some reflection below the right letter
/// extends the left letter inside the interval, transfer it. Each transfer
/// moves one unit of length leftward, so the vector of prefix length sums
/// increases lexicographically and is bounded; the sweep terminates. On a
/// certified lattice interval the fixpoint is a canonical representative:
/// positively equal inputs produce letter-identical output.
///
/// The certificate parameter is the required evidence of the lattice
/// precondition; it is not consulted.
pub fn greedy_normal_form(
    word: &PositiveWord,
    iv: &Interval,
    _cert: &LatticeCertificate,
) -> NormalForm {
    let mut w = word.letters().to_vec();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < w.len() {
            loop {
                let (x, y) = (w[i], w[i + 1]);
                let mut moved = false;
                for ri in iv.refl_set(y).iter_ones() {
                    let xr = iv.element(x).compose(iv.reflection_perm(ri)).expect("same rank");
                    let Some(z) = iv.id_of(&xr) else { continue };
                    if iv.length(z) != iv.length(x) + 1 {
                        continue;
                    }
                    let y2 = iv.reflection_perm(ri).compose(iv.element(y)).expect("same rank");
                    let y2id = iv
                        .id_of(&y2)
                        .expect("left quotient of an interval element stays below it");
                    w[i] = z;
                    if y2id == iv.identity_id() {
                        w.remove(i + 1);
                    } else {
                        w[i + 1] = y2id;
                    }
                    moved = true;
                    changed = true;
                    break;
                }
                if !moved || i + 1 >= w.len() {
                    break;
                }
            }
            i += 1;
        }
        if !changed {
            return NormalForm { letters: w };
        }
    }
}

/// Decides equality in the monoid via normal forms.
pub fn word_problem(
    a: &PositiveWord,
    b: &PositiveWord,
    iv: &Interval,
    cert: &LatticeCertificate,
) -> bool {
    if a.word_length(iv) != b.word_length(iv) {
        return false;
    }
    greedy_normal_form(a, iv, cert) == greedy_normal_form(b, iv, cert)
}

/// How a checking suite should draw its cases.
#[derive(Debug, Clone, Copy)]
pub enum CheckScope {
    /// Every word with at most this many letters.
    Exhaustive { max_letters: usize },
    /// Seeded random cases.
    Sampled { cases: usize, max_letters: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationReport {
    pub cases: u64,
    /// Cases where the hypothesis `{c}A = {c}B` (or its right analogue)
    /// actually held, so the implication had content.
    pub nontrivial: u64,
    pub violations: Vec<String>,
}

impl CancellationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn all_words(iv: &Interval, max_letters: usize) -> Vec<Vec<ElemId>> {
    let letters: Vec<ElemId> = (0..iv.len()).filter(|&i| i != iv.identity_id()).collect();
    let mut out: Vec<Vec<ElemId>> = Vec::new();
    let mut level: Vec<Vec<ElemId>> = vec![vec![]];
    for _ in 0..max_letters {
        let mut next = Vec::with_capacity(level.len() * letters.len());
        for w in &level {
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

fn random_word(iv: &Interval, max_letters: usize, rng: &mut impl Rng) -> Vec<ElemId> {
    let len = rng.gen_range(1..=max_letters);
    (0..len)
        .map(|_| {
            let mut l = rng.gen_range(1..iv.len());
            if l == iv.identity_id() {
                l = iv.gamma_id();
            }
            l
        })
        .collect()
}

/// Left and right cancellation: `{c}A = {c}B` forces `A = B`, and
/// symmetrically. Decisions go through the normal form.
pub fn check_cancellation(
    iv: &Interval,
    cert: &LatticeCertificate,
    scope: CheckScope,
) -> CancellationReport {
    let nf = |letters: &[ElemId]| {
        let w = PositiveWord::new(letters.to_vec(), iv).expect("non-identity letters");
        greedy_normal_form(&w, iv, cert)
    };
    let mut report = CancellationReport { cases: 0, nontrivial: 0, violations: Vec::new() };
    match scope {
        CheckScope::Exhaustive { max_letters } => {
            // Compare cached normal forms so the triple loop is pure lookups.
            let words = all_words(iv, max_letters);
            let base: Vec<NormalForm> = words.iter().map(|w| nf(w)).collect();
            for c in 0..iv.len() {
                if c == iv.identity_id() {
                    continue;
                }
                for right in [false, true] {
                    let glued: Vec<NormalForm> = words
                        .iter()
                        .map(|w| {
                            let mut g = w.clone();
                            if right {
                                g.push(c);
                            } else {
                                g.insert(0, c);
                            }
                            nf(&g)
                        })
                        .collect();
                    for i in 0..words.len() {
                        for j in 0..words.len() {
                            report.cases += 1;
                            let side = if right { "right" } else { "left" };
                            if glued[i] == glued[j] {
                                report.nontrivial += 1;
                                if base[i] != base[j] {
                                    report.violations.push(format!(
                                        "{side} cancellation fails: c={} a={:?} b={:?}",
                                        iv.name(c),
                                        words[i],
                                        words[j]
                                    ));
                                }
                            } else if base[i] == base[j] {
                                report.violations.push(format!(
                                    "{side} congruence fails: c={} a={:?} b={:?}",
                                    iv.name(c),
                                    words[i],
                                    words[j]
                                ));
                            }
                        }
                    }
                }
            }
        }
        CheckScope::Sampled { cases, max_letters, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..cases {
                let mut c = rng.gen_range(1..iv.len());
                if c == iv.identity_id() {
                    c = iv.gamma_id();
                }
                let a = random_word(iv, max_letters, &mut rng);
                // Half the time probe a genuinely equal pair by rewriting.
                let b = if rng.gen_bool(0.5) {
                    let mut b = a.clone();
                    for _ in 0..3 {
                        let nexts = rewrite_neighbors(&b, iv);
                        if nexts.is_empty() {
                            break;
                        }
                        b = nexts[rng.gen_range(0..nexts.len())].clone();
                    }
                    b
                } else {
                    random_word(iv, max_letters, &mut rng)
                };
                for right in [false, true] {
                    let glue = |w: &[ElemId]| -> Vec<ElemId> {
                        if right {
                            w.iter().copied().chain([c]).collect()
                        } else {
                            [c].iter().copied().chain(w.iter().copied()).collect()
                        }
                    };
                    report.cases += 1;
                    let side = if right { "right" } else { "left" };
                    if nf(&glue(&a)) == nf(&glue(&b)) {
                        report.nontrivial += 1;
                        if nf(&a) != nf(&b) {
                            report.violations.push(format!(
                                "{side} cancellation fails: c={} a={a:?} b={b:?}",
                                iv.name(c)
                            ));
                        }
                    } else if nf(&a) == nf(&b) {
                        report.violations.push(format!(
                            "{side} congruence fails: c={} a={a:?} b={b:?}",
                            iv.name(c)
                        ));
                    }
                }
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NineElementReport {
    pub cases: u64,
    pub violations: Vec<String>,
}

impl NineElementReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For `a, b, c` in the interval, the nine derived elements defined by
///
/// ```text
/// a∨b = ad = be,  b∨c = bf = cg,  c∨a = ch = ak,
/// a∨b∨c = (a∨b)l = (b∨c)m = (c∨a)n
/// ```
///
/// must satisfy `e∨f = el = fm`, `d∨k = dl = kn` and `h∨g = hn = gm`.
pub fn check_nine_element_lemma(
    iv: &Interval,
    cert: &LatticeCertificate,
    scope: CheckScope,
) -> NineElementReport {
    let mut report = NineElementReport { cases: 0, violations: Vec::new() };
    let mut run = |a: ElemId, b: ElemId, c: ElemId| {
        report.cases += 1;
        if let Err(msg) = nine_element_case(iv, cert, a, b, c) {
            report.violations.push(msg);
        }
    };
    match scope {
        CheckScope::Exhaustive { .. } => {
            for a in 0..iv.len() {
                for b in 0..iv.len() {
                    for c in 0..iv.len() {
                        run(a, b, c);
                    }
                }
            }
        }
        CheckScope::Sampled { cases, seed, .. } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..cases {
                run(
                    rng.gen_range(0..iv.len()),
                    rng.gen_range(0..iv.len()),
                    rng.gen_range(0..iv.len()),
                );
            }
        }
    }
    report
}

fn nine_element_case(
    iv: &Interval,
    cert: &LatticeCertificate,
    a: ElemId,
    b: ElemId,
    c: ElemId,
) -> Result<(), String> {
    let quot = |u: ElemId, w: ElemId| -> Result<ElemId, String> {
        let q = iv.element(u).inverse().compose(iv.element(w)).expect("same rank");
        iv.id_of(&q).ok_or_else(|| format!("quotient {q} of ({u},{w}) left the interval"))
    };
    let prod_is = |x: ElemId, y: ElemId, expect: ElemId, tag: &str| -> Result<(), String> {
        let p = iv.element(x).compose(iv.element(y)).expect("same rank");
        match iv.id_of(&p) {
            Some(id) if id == expect => Ok(()),
            got => Err(format!(
                "{tag}: product {}·{} gives {got:?}, expected {} (a={a} b={b} c={c})",
                iv.name(x),
                iv.name(y),
                iv.name(expect)
            )),
        }
    };
    let ab = cert.join(a, b);
    let bc = cert.join(b, c);
    let ca = cert.join(c, a);
    let abc = cert.join(ab, c);
    let d = quot(a, ab)?;
    let e = quot(b, ab)?;
    let f = quot(b, bc)?;
    let g = quot(c, bc)?;
    let h = quot(c, ca)?;
    let k = quot(a, ca)?;
    let l = quot(ab, abc)?;
    let m = quot(bc, abc)?;
    let n = quot(ca, abc)?;

    prod_is(e, l, cert.join(e, f), "e∨f = el")?;
    prod_is(f, m, cert.join(e, f), "e∨f = fm")?;
    prod_is(d, l, cert.join(d, k), "d∨k = dl")?;
    prod_is(k, n, cert.join(d, k), "d∨k = kn")?;
    prod_is(h, n, cert.join(h, g), "h∨g = hn")?;
    prod_is(g, m, cert.join(h, g), "h∨g = gm")?;
    Ok(())
}

/// Parses the word grammar: letters are parenthesized element literals
/// separated by `.`, e.g. `([1]).([2])`.
pub fn parse_word(input: &str, iv: &Interval) -> Result<PositiveWord, ParseError> {
    let s = input.trim();
    let base = input.len() - input.trim_start().len();
    let bytes = s.as_bytes();
    if s.is_empty() {
        return Err(ParseError { offset: base, msg: "empty word".into() });
    }
    let mut letters = Vec::new();
    let mut pos = 0usize;
    loop {
        if pos >= bytes.len() || bytes[pos] != b'(' {
            return Err(ParseError { offset: base + pos, msg: "expected '(' opening a letter".into() });
        }
        let start = pos;
        let mut depth = 0usize;
        let mut close = None;
        for (off, &ch) in bytes.iter().enumerate().skip(pos) {
            match ch {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(off);
                        break;
                    }
                }
                _ => {}
            }
        }
        let Some(close) = close else {
            return Err(ParseError { offset: base + start, msg: "unbalanced '(' in letter".into() });
        };
        let inner = &s[start + 1..close];
        let elem = crate::signed_perm::parse_element(inner, iv.group().rank()).map_err(|e| {
            ParseError { offset: base + start + 1 + e.offset, msg: e.msg }
        })?;
        let id = iv.id_of(&elem).ok_or_else(|| ParseError {
            offset: base + start,
            msg: format!("letter {elem} is not in the interval"),
        })?;
        if id == iv.identity_id() {
            return Err(ParseError {
                offset: base + start,
                msg: "identity letters are not allowed".into(),
            });
        }
        letters.push(id);
        pos = close + 1;
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'.' {
            return Err(ParseError { offset: base + pos, msg: "expected '.' between letters".into() });
        }
        pos += 1;
    }
    PositiveWord::new(letters, iv)
        .map_err(|e| ParseError { offset: base, msg: e.to_string() })
}

/// Prints a word in the grammar accepted by [`parse_word`].
pub fn format_word(letters: &[ElemId], iv: &Interval) -> String {
    letters.iter().map(|&l| format!("({})", iv.name(l))).collect::<Vec<_>>().join(".")
}

/// Builds the positive word of lifted letters from a reflection
/// factorization.
pub fn factorization_word(
    factorization: &[crate::signed_perm::Reflection],
    iv: &Interval,
) -> PositiveWord {
    let letters: Vec<ElemId> = factorization
        .iter()
        .map(|r| {
            let p = r.to_perm(iv.group().rank()).expect("valid rank");
            iv.id_of(&p).expect("reflections in a factorization of gamma lie below it")
        })
        .collect();
    PositiveWord::new(letters, iv).expect("reflections are non-identity letters")
}

/// Every positive-equality class of words over the monoid is partitioned by
/// `word_length`; expose the map used by the test suites.
pub fn class_partition(
    words: &[Vec<ElemId>],
    iv: &Interval,
    cert: &LatticeCertificate,
) -> HashMap<NormalForm, Vec<Vec<ElemId>>> {
    let mut map: HashMap<NormalForm, Vec<Vec<ElemId>>> = HashMap::new();
    for w in words {
        let word = PositiveWord::new(w.clone(), iv).expect("valid letters");
        map.entry(greedy_normal_form(&word, iv, cert)).or_default().push(w.clone());
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_perm::{coxeter_element, parse_element, GroupType};

    fn interval(gt: GroupType) -> Interval {
        Interval::new(gt, &coxeter_element(gt)).unwrap()
    }

    fn central_c2() -> Interval {
        let gamma = parse_element("[1] [2]", 2).unwrap();
        Interval::new(GroupType::C(2), &gamma).unwrap()
    }

    fn word(s: &str, iv: &Interval) -> PositiveWord {
        parse_word(s, iv).unwrap()
    }

    #[test]
    fn relations_of_the_central_interval() {
        let iv = central_c2();
        let rels = relations(&iv);
        assert_eq!(rels.len(), 4);
        let top = iv.gamma_id();
        for r in &rels {
            assert_eq!(r.right, top);
            assert_ne!(r.left.0, iv.identity_id());
            assert_ne!(r.left.1, iv.identity_id());
        }
    }

    #[test]
    fn relations_of_the_coxeter_interval() {
        let iv = interval(GroupType::C(2));
        let rels = relations(&iv);
        let pair = (
            iv.id_of(&parse_element("(1,2)", 2).unwrap()).unwrap(),
            iv.id_of(&parse_element("[2]", 2).unwrap()).unwrap(),
        );
        let top = iv.gamma_id();
        assert!(rels.iter().any(|r| r.left == pair && r.right == top));
    }

    #[test]
    fn oracle_examples() {
        let iv = central_c2();
        let a = word("([1]).([2])", &iv);
        let b = word("((1,2)).((1,-2))", &iv);
        assert!(positively_equal(&a, &b, &iv).unwrap());
        assert!(positively_equal(&a, &a, &iv).unwrap());
        let x = word("([1])", &iv);
        let y = word("([2])", &iv);
        assert!(!positively_equal(&x, &y, &iv).unwrap());
    }

    #[test]
    fn normal_form_examples() {
        let iv = central_c2();
        let cert = iv.certify_lattice().unwrap();
        let w = word("((1,2)).((1,-2))", &iv);
        let nf = greedy_normal_form(&w, &iv, &cert);
        assert_eq!(format_word(nf.letters(), &iv), "([1] [2])");

        let single = word("([1])", &iv);
        assert_eq!(greedy_normal_form(&single, &iv, &cert).letters(), single.letters());

        let iv3 = interval(GroupType::C(3));
        let cert3 = iv3.certify_lattice().unwrap();
        let w3 = word("((1,2)).((2,3))", &iv3);
        let nf3 = greedy_normal_form(&w3, &iv3, &cert3);
        assert_eq!(format_word(nf3.letters(), &iv3), "((1,2,3))");
    }

    #[test]
    fn word_problem_examples() {
        let iv = central_c2();
        let cert = iv.certify_lattice().unwrap();
        let words: Vec<PositiveWord> = ["([1]).([2])", "([2]).([1])", "((1,2)).((1,-2))", "((1,-2)).((1,2))"]
            .iter()
            .map(|s| word(s, &iv))
            .collect();
        for w in &words {
            assert!(word_problem(&words[0], w, &iv, &cert));
            assert!(positively_equal(&words[0], w, &iv).unwrap());
        }
        let short = word("([1])", &iv);
        assert!(!word_problem(&words[0], &short, &iv, &cert));
    }

    #[test]
    fn factorization_words_normalize_to_the_top() {
        for gt in [GroupType::C(3), GroupType::D(3)] {
            let iv = interval(gt);
            let cert = iv.certify_lattice().unwrap();
            let gamma = coxeter_element(gt);
            for f in crate::absolute_order::reduced_factorizations(&gamma, gt) {
                let w = factorization_word(&f, &iv);
                let nf = greedy_normal_form(&w, &iv, &cert);
                assert_eq!(nf.letters(), [iv.gamma_id()]);
            }
        }
    }

    #[test]
    fn cancellation_exhaustive_small() {
        let iv = central_c2();
        let cert = iv.certify_lattice().unwrap();
        let report = check_cancellation(&iv, &cert, CheckScope::Exhaustive { max_letters: 2 });
        assert!(report.ok(), "{:?}", report.violations);
        assert!(report.nontrivial > 0);
    }

    #[test]
    fn nine_element_exhaustive_small() {
        let iv = interval(GroupType::C(2));
        let cert = iv.certify_lattice().unwrap();
        let report = check_nine_element_lemma(&iv, &cert, CheckScope::Exhaustive { max_letters: 0 });
        assert_eq!(report.cases, 6 * 6 * 6);
        assert!(report.ok(), "{:?}", report.violations);
    }

    #[test]
    fn word_grammar_round_trip() {
        let iv = interval(GroupType::C(3));
        let w = word("((1,2)).([3]).((1,2,3))", &iv);
        assert_eq!(format_word(w.letters(), &iv), "((1,2)).([3]).((1,2,3))");
        assert!(parse_word("([9])", &iv).is_err());
        assert!(parse_word("(I)", &iv).is_err());
        assert!(parse_word("", &iv).is_err());
        assert!(parse_word("([1])x([2])", &iv).is_err());
        // Elements outside the interval are rejected even when in the group.
        assert!(parse_word("((1,3) [2])", &iv).is_err());
    }

    #[test]
    fn bfs_respects_the_cap() {
        let iv = interval(GroupType::C(2));
        let gamma_letter = PositiveWord::single(iv.gamma_id(), &iv).unwrap();
        let w = gamma_letter.concat(&gamma_letter).concat(&gamma_letter);
        let class = equality_class(&w, &iv, BFS_VISIT_CAP).unwrap();
        assert!(class.len() < BFS_VISIT_CAP);
        assert!(matches!(
            equality_class(&w, &iv, 3),
            Err(MonoidError::ResourceLimit(3))
        ));
    }
}
