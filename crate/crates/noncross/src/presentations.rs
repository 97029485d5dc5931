//! Group presentations attached to an interval — the poset presentation on
//! all non-identity elements, the reflection presentation equating the
//! factorization words of the top, and the standard Artin presentations of
//! types C and D — together with the generator map into the interval monoid
//! and the mechanical verification of the identity families that make that
//! map an isomorphism. Everything is decided inside the positive monoid via
//! the word problem; no general Artin-group machinery is involved.

use std::fmt;

use thiserror::Error;

use crate::absolute_order::{
    reduced_factorizations, ElemId, Interval, LatticeCertificate,
};
use crate::dual_monoid::{factorization_word, greedy_normal_form, word_problem, PositiveWord};
use crate::signed_perm::{coxeter_element, Cycle, GroupType, SignedPerm};
use crate::smith::{AbelianGroup, IntMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("rank {0} too small for an Artin presentation (need >= 2)")]
    RankTooSmall(usize),
    #[error("operation requires the Coxeter interval of {0}")]
    NotCoxeterInterval(GroupType),
    #[error("internal falsification: {0}")]
    Falsified(String),
}

/// Named generators with relators stored as pairs of positive words over
/// generator indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<(Vec<usize>, Vec<usize>)>,
}

impl GroupPresentation {
    fn validate(self) -> Self {
        for (lhs, rhs) in &self.relators {
            for &g in lhs.iter().chain(rhs) {
                assert!(g < self.generators.len(), "relator uses an undeclared generator");
            }
        }
        self
    }

    fn word_string(&self, word: &[usize]) -> String {
        word.iter().map(|&g| format!("({})", self.generators[g])).collect::<Vec<_>>().join(".")
    }
}

/// Plain-text export: one `gens:` line, then one `rels: w = w'` line per
/// relator, words in the letter grammar.
impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" ; "))?;
        for (lhs, rhs) in &self.relators {
            writeln!(f, "rels: {} = {}", self.word_string(lhs), self.word_string(rhs))?;
        }
        Ok(())
    }
}

/// Generators are the non-identity interval elements; relators encode every
/// `{w1}{w2} = {w3}`.
pub fn poset_presentation(iv: &Interval) -> GroupPresentation {
    let generators: Vec<String> =
        (1..iv.len()).map(|i| iv.name(i).to_string()).collect();
    let mut relators = Vec::new();
    for w3 in 0..iv.len() {
        for &(w1, w2) in iv.factor_pairs(w3) {
            relators.push((vec![w1 - 1, w2 - 1], vec![w3 - 1]));
        }
    }
    GroupPresentation { generators, relators }.validate()
}

/// Generators are the reflections below the top; relators equate every
/// reduced factorization word of the top with the first one.
pub fn reflection_presentation(iv: &Interval) -> GroupPresentation {
    let atoms = iv.atoms();
    let generators: Vec<String> = atoms.iter().map(|&a| iv.name(a).to_string()).collect();
    let gen_of = |id: ElemId| atoms.iter().position(|&a| a == id).expect("atom");
    let gamma = iv.element(iv.gamma_id()).clone();
    let words: Vec<Vec<usize>> = reduced_factorizations(&gamma, iv.group())
        .iter()
        .map(|f| {
            f.iter()
                .map(|r| {
                    let p = r.to_perm(iv.group().rank()).expect("valid rank");
                    gen_of(iv.id_of(&p).expect("reflection below the top"))
                })
                .collect()
        })
        .collect();
    let relators = words[1..].iter().map(|w| (words[0].clone(), w.clone())).collect();
    GroupPresentation { generators, relators }.validate()
}

/// The standard Artin presentation of the given type on generators
/// `x1..xn`.
pub fn artin_presentation(gt: GroupType) -> Result<GroupPresentation, PresentationError> {
    let n = gt.rank();
    if n < 2 {
        return Err(PresentationError::RankTooSmall(n));
    }
    let generators: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let g = |i: usize| i - 1; // 1-based names to indices
    let mut relators: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    match gt {
        GroupType::C(_) => {
            relators.push((
                vec![g(1), g(2), g(1), g(2)],
                vec![g(2), g(1), g(2), g(1)],
            ));
            for i in 2..n {
                relators.push((
                    vec![g(i), g(i + 1), g(i)],
                    vec![g(i + 1), g(i), g(i + 1)],
                ));
            }
            for i in 1..=n {
                for j in i + 2..=n {
                    relators.push((vec![g(i), g(j)], vec![g(j), g(i)]));
                }
            }
        }
        GroupType::D(_) => {
            relators.push((vec![g(1), g(2)], vec![g(2), g(1)]));
            if n >= 3 {
                relators.push((vec![g(1), g(3), g(1)], vec![g(3), g(1), g(3)]));
            }
            for i in 4..=n {
                relators.push((vec![g(1), g(i)], vec![g(i), g(1)]));
            }
            for i in 2..n {
                relators.push((
                    vec![g(i), g(i + 1), g(i)],
                    vec![g(i + 1), g(i), g(i + 1)],
                ));
            }
            for i in 2..=n {
                for j in i + 2..=n {
                    relators.push((vec![g(i), g(j)], vec![g(j), g(i)]));
                }
            }
        }
    }
    Ok(GroupPresentation { generators, relators }.validate())
}

/// Images of the Artin generators in the interval monoid: atoms, one per
/// generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    targets: Vec<ElemId>,
}

impl GeneratorMap {
    /// Image of the 1-based generator `xi` as a single interval letter.
    pub fn target(&self, i: usize) -> ElemId {
        self.targets[i - 1]
    }

    pub fn targets(&self) -> &[ElemId] {
        &self.targets
    }

    /// Image of a positive Artin word (0-based generator indices).
    pub fn word(&self, artin_word: &[usize], iv: &Interval) -> PositiveWord {
        let letters: Vec<ElemId> = artin_word.iter().map(|&g| self.targets[g]).collect();
        PositiveWord::new(letters, iv).expect("generator images are non-identity")
    }
}

fn require_coxeter(iv: &Interval) -> Result<(), PresentationError> {
    if *iv.element(iv.gamma_id()) != coxeter_element(iv.group()) {
        return Err(PresentationError::NotCoxeterInterval(iv.group()));
    }
    Ok(())
}

fn id_of_perm(iv: &Interval, p: &SignedPerm) -> Result<ElemId, PresentationError> {
    iv.id_of(p)
        .ok_or_else(|| PresentationError::Falsified(format!("{p} is not below the top")))
}

fn id_of_paired(iv: &Interval, entries: Vec<i32>) -> Result<ElemId, PresentationError> {
    let p = Cycle::paired(entries)
        .map_err(|e| PresentationError::Falsified(e.to_string()))?
        .to_perm(iv.group().rank())
        .map_err(|e| PresentationError::Falsified(e.to_string()))?;
    id_of_perm(iv, &p)
}

fn id_of_balanced_product(
    iv: &Interval,
    cycles: &[Vec<i32>],
) -> Result<ElemId, PresentationError> {
    let n = iv.group().rank();
    let mut p = SignedPerm::identity(n);
    for entries in cycles {
        let c = Cycle::balanced(entries.clone())
            .map_err(|e| PresentationError::Falsified(e.to_string()))?
            .to_perm(n)
            .map_err(|e| PresentationError::Falsified(e.to_string()))?;
        p = p.compose(&c).expect("same rank");
    }
    id_of_perm(iv, &p)
}

/// The generator map of the isomorphism: `x1` goes to the lift of `[1]`
/// (type C) or of `(1,-2)` (type D); `xi` goes to the lift of `(i-1,i)`.
pub fn phi(iv: &Interval) -> Result<GeneratorMap, PresentationError> {
    require_coxeter(iv)?;
    let n = iv.group().rank();
    if n < 2 {
        return Err(PresentationError::RankTooSmall(n));
    }
    let mut targets = Vec::with_capacity(n);
    let first = match iv.group() {
        GroupType::C(_) => id_of_balanced_product(iv, &[vec![1]])?,
        GroupType::D(_) => id_of_paired(iv, vec![1, -2])?,
    };
    targets.push(first);
    for i in 2..=n as i32 {
        targets.push(id_of_paired(iv, vec![i - 1, i])?);
    }
    Ok(GeneratorMap { targets })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub label: String,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl VerificationReport {
    fn new(label: &str) -> Self {
        VerificationReport { label: label.to_string(), checks: 0, failures: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }
}

/// Verifies that the generator map respects every Artin relator, and
/// witnesses surjectivity by exhibiting, for every reflection lift, a
/// positive identity that expresses it through generator images. Each
/// witness is one or two word-problem instances.
pub fn verify_phi(
    iv: &Interval,
    cert: &LatticeCertificate,
) -> Result<VerificationReport, PresentationError> {
    require_coxeter(iv)?;
    let gt = iv.group();
    let n = gt.rank();
    let map = phi(iv)?;
    let pres = artin_presentation(gt)?;
    let mut report = VerificationReport::new("phi");

    for (lhs, rhs) in &pres.relators {
        let a = map.word(lhs, iv);
        let b = map.word(rhs, iv);
        report.check(word_problem(&a, &b, iv, cert), || {
            format!("relator {} = {} breaks under the generator map",
                pres.word_string(lhs), pres.word_string(rhs))
        });
    }

    // Surjectivity witnesses, counted per reflection below the top.
    let mut witnessed = 0u64;
    let run_word = |i: usize, j: usize| -> Vec<usize> {
        // x_{i+1} .. x_j as 0-based generator indices
        (i + 1..=j).map(|k| k - 1).collect()
    };
    let wp = |a: &PositiveWord, b: &PositiveWord| word_problem(a, b, iv, cert);
    let single = |id: ElemId| PositiveWord::single(id, iv).expect("non-identity");

    // Paired-cycle and band lifts through the braid copy, both types.
    for i in 1..n {
        for j in i + 1..=n {
            let run = id_of_paired(iv, (i as i32..=j as i32).collect())?;
            let a = map.word(&run_word(i, j), iv);
            report.check(wp(&a, &single(run)), || {
                format!("run lift ((..)) fails at ({i},{j})")
            });
            let band = id_of_paired(iv, vec![i as i32, j as i32])?;
            // j = i+1 gives the empty run; the band is the generator itself.
            let lhs = if i + 1 == j {
                single(band)
            } else {
                map.word(&run_word(i + 1, j), iv).concat(&single(band))
            };
            report.check(wp(&lhs, &a), || format!("band lift (i,j) fails at ({i},{j})"));
            witnessed += 1;
        }
    }
    witnessed += 1; // the image of x1 is a reflection lift by definition

    match gt {
        GroupType::C(_) => {
            for j in 2..=n {
                let sign_1 = id_of_balanced_product(iv, &[vec![1]])?;
                let sign_j = id_of_balanced_product(iv, &[vec![j as i32]])?;
                let band_1j = id_of_paired(iv, vec![1, j as i32])?;
                let mid = id_of_balanced_product(iv, &[vec![1, j as i32]])?;
                let lhs = single(sign_1).concat(&single(band_1j));
                report.check(wp(&lhs, &single(mid)), || format!("[1](1,{j}) vs [1,{j}]"));
                let rhs = single(band_1j).concat(&single(sign_j));
                report.check(wp(&single(mid), &rhs), || format!("[1,{j}] vs (1,{j})[{j}]"));
                witnessed += 1;
            }
            for i in 1..n {
                for j in i + 1..=n {
                    let band = id_of_paired(iv, vec![i as i32, j as i32])?;
                    let neg = id_of_paired(iv, vec![i as i32, -(j as i32)])?;
                    let sign_j = id_of_balanced_product(iv, &[vec![j as i32]])?;
                    let mid = id_of_balanced_product(iv, &[vec![i as i32, j as i32]])?;
                    let lhs = single(band).concat(&single(sign_j));
                    report.check(wp(&lhs, &single(mid)), || format!("(i,j)[j] vs [i,j] at ({i},{j})"));
                    let rhs = single(sign_j).concat(&single(neg));
                    report.check(wp(&single(mid), &rhs), || format!("[i,j] vs [j](i,-j) at ({i},{j})"));
                    witnessed += 1;
                }
            }
        }
        GroupType::D(_) => {
            for j in 2..=n {
                let word: Vec<usize> = (1..=j).map(|k| k - 1).collect();
                let target =
                    id_of_balanced_product(iv, &[vec![1], (2..=j as i32).collect()])?;
                let a = map.word(&word, iv);
                report.check(wp(&a, &single(target)), || {
                    format!("x1..x{j} vs [1][2..{j}]")
                });
                if j >= 3 {
                    let run = id_of_paired(iv, (1..=j as i32).collect())?;
                    let neg = id_of_paired(iv, vec![1, -(j as i32)])?;
                    let lhs = single(run).concat(&single(neg));
                    report.check(wp(&lhs, &single(target)), || {
                        format!("(1..{j})(1,-{j}) vs [1][2..{j}]")
                    });
                    witnessed += 1;
                }
            }
            for j in 3..=n {
                let x1 = single(map.target(1));
                let band_1j = id_of_paired(iv, vec![1, j as i32])?;
                let mid = id_of_paired(iv, vec![1, j as i32, -2])?;
                let neg_2j = id_of_paired(iv, vec![2, -(j as i32)])?;
                let lhs = x1.concat(&single(band_1j));
                report.check(wp(&lhs, &single(mid)), || format!("(1,-2)(1,{j}) vs (1,{j},-2)"));
                let rhs = single(neg_2j).concat(&x1);
                report.check(wp(&single(mid), &rhs), || format!("(1,{j},-2) vs (2,-{j})(1,-2)"));
                witnessed += 1;
            }
            for i in 3..n {
                for j in i + 1..=n {
                    let neg_ij = id_of_paired(iv, vec![i as i32, -(j as i32)])?;
                    let band_1i = id_of_paired(iv, vec![1, i as i32])?;
                    let neg_1i = id_of_paired(iv, vec![1, -(i as i32)])?;
                    let band_ij = id_of_paired(iv, vec![i as i32, j as i32])?;
                    let mid = id_of_balanced_product(iv, &[vec![1], vec![i as i32, j as i32]])?;
                    let lhs =
                        single(neg_ij).concat(&single(band_1i)).concat(&single(neg_1i));
                    report.check(wp(&lhs, &single(mid)), || {
                        format!("(i,-j)(1,i)(1,-i) vs [1][i,j] at ({i},{j})")
                    });
                    let rhs =
                        single(band_1i).concat(&single(neg_1i)).concat(&single(band_ij));
                    report.check(wp(&rhs, &single(mid)), || {
                        format!("(1,i)(1,-i)(i,j) vs [1][i,j] at ({i},{j})")
                    });
                    witnessed += 1;
                }
            }
        }
    }

    let expected = match gt {
        GroupType::C(_) => (n * n) as u64,
        GroupType::D(_) => (n * (n - 1)) as u64,
    };
    if witnessed != expected {
        return Err(PresentationError::Falsified(format!(
            "witnessed {witnessed} reflection lifts, expected {expected}"
        )));
    }
    Ok(report)
}

/// Formal letters of the derived-generator identities: positive words over
/// the Artin generators together with the derived symbols they define.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    /// `xi`, 1-based.
    Gen(usize),
    /// Band generator lifting the reflection `(i,j)`.
    Band(usize, usize),
    /// Lift of `(i,-j)`.
    NegBand(usize, usize),
    /// Lift of the sign change `[j]` (type C only).
    SignLift(usize),
    /// The run `x_{i+1}..x_j`; expands to a word of generators.
    Run(usize, usize),
    /// The product of all generators; expands to the lift of the top.
    Garside,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::Gen(i) => write!(f, "x{i}"),
            Letter::Band(i, j) => write!(f, "x({i},{j})"),
            Letter::NegBand(i, j) => write!(f, "z({i},{j})"),
            Letter::SignLift(j) => write!(f, "y({j})"),
            Letter::Run(i, j) => write!(f, "Y({i},{j})"),
            Letter::Garside => write!(f, "X"),
        }
    }
}

/// A defining identity of a derived generator, rearranged inverse-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedIdentity {
    pub symbol: Letter,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

impl fmt::Display for DerivedIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |w: &[Letter]| {
            w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(".")
        };
        write!(f, "{}: {} = {}", self.symbol, side(&self.lhs), side(&self.rhs))
    }
}

/// The defining identities of the derived generators `x(i,j)`, `y(j)`,
/// `z(i,j)` and of the full product, in inverse-free form.
pub fn derived_generator_words(gt: GroupType) -> Result<Vec<DerivedIdentity>, PresentationError> {
    let n = gt.rank();
    if n < 2 {
        return Err(PresentationError::RankTooSmall(n));
    }
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 1..=n {
            if j == i + 1 {
                out.push(DerivedIdentity {
                    symbol: Letter::Band(i, j),
                    lhs: vec![Letter::Band(i, j)],
                    rhs: vec![Letter::Gen(j)],
                });
            } else {
                out.push(DerivedIdentity {
                    symbol: Letter::Band(i, j),
                    lhs: vec![Letter::Run(i, j)],
                    rhs: vec![Letter::Run(i + 1, j), Letter::Band(i, j)],
                });
            }
        }
    }
    match gt {
        GroupType::C(_) => {
            out.push(DerivedIdentity {
                symbol: Letter::SignLift(1),
                lhs: vec![Letter::SignLift(1)],
                rhs: vec![Letter::Gen(1)],
            });
            for j in 2..=n {
                out.push(DerivedIdentity {
                    symbol: Letter::SignLift(j),
                    lhs: (1..=j).map(Letter::Gen).collect(),
                    rhs: (2..=j).map(Letter::Gen).chain([Letter::SignLift(j)]).collect(),
                });
            }
            for i in 1..n {
                for j in i + 1..=n {
                    out.push(DerivedIdentity {
                        symbol: Letter::NegBand(i, j),
                        lhs: vec![Letter::NegBand(i, j), Letter::SignLift(i)],
                        rhs: vec![Letter::SignLift(i), Letter::Band(i, j)],
                    });
                }
            }
        }
        GroupType::D(_) => {
            out.push(DerivedIdentity {
                symbol: Letter::NegBand(1, 2),
                lhs: vec![Letter::NegBand(1, 2)],
                rhs: vec![Letter::Gen(1)],
            });
            for j in 3..=n {
                out.push(DerivedIdentity {
                    symbol: Letter::NegBand(1, j),
                    lhs: vec![Letter::NegBand(1, j), Letter::Gen(1)],
                    rhs: vec![Letter::Gen(1), Letter::Band(2, j)],
                });
                out.push(DerivedIdentity {
                    symbol: Letter::NegBand(2, j),
                    lhs: vec![Letter::NegBand(2, j), Letter::Gen(1)],
                    rhs: vec![Letter::Gen(1), Letter::Band(1, j)],
                });
            }
            for i in 3..n {
                for j in i + 1..=n {
                    out.push(DerivedIdentity {
                        symbol: Letter::NegBand(i, j),
                        lhs: vec![
                            Letter::NegBand(i, j),
                            Letter::Band(1, i),
                            Letter::NegBand(1, i),
                        ],
                        rhs: vec![
                            Letter::Band(1, i),
                            Letter::NegBand(1, i),
                            Letter::Band(i, j),
                        ],
                    });
                }
            }
        }
    }
    out.push(DerivedIdentity {
        symbol: Letter::Garside,
        lhs: vec![Letter::Garside],
        rhs: (1..=n).map(Letter::Gen).collect(),
    });
    Ok(out)
}

fn expand_letter(
    letter: Letter,
    iv: &Interval,
    map: &GeneratorMap,
) -> Result<Vec<ElemId>, PresentationError> {
    Ok(match letter {
        Letter::Gen(i) => vec![map.target(i)],
        Letter::Band(i, j) => vec![id_of_paired(iv, vec![i as i32, j as i32])?],
        Letter::NegBand(i, j) => vec![id_of_paired(iv, vec![i as i32, -(j as i32)])?],
        Letter::SignLift(j) => vec![id_of_balanced_product(iv, &[vec![j as i32]])?],
        Letter::Run(i, j) => (i + 1..=j).map(|k| map.target(k)).collect(),
        Letter::Garside => vec![iv.gamma_id()],
    })
}

fn expand_word(
    word: &[Letter],
    iv: &Interval,
    map: &GeneratorMap,
) -> Result<PositiveWord, PresentationError> {
    let mut letters = Vec::new();
    for &l in word {
        letters.extend(expand_letter(l, iv, map)?);
    }
    PositiveWord::new(letters, iv).map_err(|e| PresentationError::Falsified(e.to_string()))
}

/// Verifies, inside the positive monoid:
///
/// 1. every defining identity of the derived generators, with the candidate
///    lift of each derived symbol substituted;
/// 2. the conjugation table `{gamma}{R} = {gamma R gamma^{-1}}{gamma}` for
///    every reflection below the top (conjugation by the top permutes that
///    set);
/// 3. lift normalization: every reduced factorization word of the top equals
///    the standard word of generator images and reduces to the single letter
///    of the top.
pub fn verify_theta_identities(
    iv: &Interval,
    cert: &LatticeCertificate,
) -> Result<VerificationReport, PresentationError> {
    require_coxeter(iv)?;
    let gt = iv.group();
    let map = phi(iv)?;
    let mut report = VerificationReport::new("theta");

    for identity in derived_generator_words(gt)? {
        let lhs = expand_word(&identity.lhs, iv, &map)?;
        let rhs = expand_word(&identity.rhs, iv, &map)?;
        report.check(word_problem(&lhs, &rhs, iv, cert), || {
            format!("defining identity fails: {identity}")
        });
    }

    let gamma = iv.element(iv.gamma_id()).clone();
    let atoms = iv.atoms();
    let mut conjugated: Vec<ElemId> = Vec::new();
    for &a in &atoms {
        let conj = gamma.conjugate(iv.element(a)).expect("same rank");
        let cid = id_of_perm(iv, &conj)?;
        report.check(iv.length(cid) == 1, || {
            format!("conjugate of {} by the top is not a reflection below it", iv.name(a))
        });
        conjugated.push(cid);
        let lhs = PositiveWord::new(vec![iv.gamma_id(), a], iv).expect("letters");
        let rhs = PositiveWord::new(vec![cid, iv.gamma_id()], iv).expect("letters");
        report.check(word_problem(&lhs, &rhs, iv, cert), || {
            format!("conjugation identity fails for {}", iv.name(a))
        });
    }
    let mut sorted = conjugated.clone();
    sorted.sort_unstable();
    sorted.dedup();
    report.check(sorted.len() == atoms.len(), || {
        "conjugation by the top does not permute the reflections below it".to_string()
    });

    let standard = expand_word(&[Letter::Garside], iv, &map)?;
    let standard_letters = expand_word(
        &(1..=gt.rank()).map(Letter::Gen).collect::<Vec<_>>(),
        iv,
        &map,
    )?;
    report.check(word_problem(&standard, &standard_letters, iv, cert), || {
        "standard word does not reduce to the top letter".to_string()
    });
    for f in reduced_factorizations(&gamma, gt) {
        let w = factorization_word(&f, iv);
        report.check(word_problem(&w, &standard_letters, iv, cert), || {
            format!("factorization word {f:?} is not the standard lift")
        });
        let nf = greedy_normal_form(&w, iv, cert);
        report.check(nf.letters() == [iv.gamma_id()], || {
            format!("factorization word {f:?} does not normalize to the top")
        });
    }
    Ok(report)
}

/// Exponent-sum abelianization of a presentation.
pub fn abelianization(p: &GroupPresentation) -> AbelianGroup {
    let gens = p.generators.len();
    let mut m = IntMatrix::zeros(gens, p.relators.len());
    for (col, (lhs, rhs)) in p.relators.iter().enumerate() {
        for &g in lhs {
            m.add_to(g, col, 1);
        }
        for &g in rhs {
            m.add_to(g, col, -1);
        }
    }
    AbelianGroup::from_relation_matrix(gens, &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_perm::parse_element;

    fn coxeter_interval(gt: GroupType) -> Interval {
        Interval::new(gt, &coxeter_element(gt)).unwrap()
    }

    #[test]
    fn poset_presentation_of_the_central_example() {
        let gamma = parse_element("[1] [2]", 2).unwrap();
        let iv = Interval::new(GroupType::C(2), &gamma).unwrap();
        let p = poset_presentation(&iv);
        assert_eq!(p.generators, ["(1,-2)", "(1,2)", "[1]", "[2]", "[1] [2]"]);
        // x = ab = ba = cd = dc, as four two-letter factorizations of the top
        assert_eq!(p.relators.len(), 4);
        let top = 4usize;
        let pairs: Vec<(usize, usize)> =
            p.relators.iter().map(|(l, r)| { assert_eq!(r, &[top]); (l[0], l[1]) }).collect();
        assert!(pairs.contains(&(2, 3)) && pairs.contains(&(3, 2)));
        assert!(pairs.contains(&(0, 1)) && pairs.contains(&(1, 0)));
    }

    #[test]
    fn poset_presentation_one_generator() {
        let gamma = parse_element("[1]", 1).unwrap();
        let iv = Interval::new(GroupType::C(1), &gamma).unwrap();
        let p = poset_presentation(&iv);
        assert_eq!(p.generators.len(), 1);
        assert!(p.relators.is_empty());
        assert_eq!(abelianization(&p), AbelianGroup::free(1));
    }

    #[test]
    fn reflection_presentation_examples() {
        let gamma = parse_element("[1] [2]", 2).unwrap();
        let iv = Interval::new(GroupType::C(2), &gamma).unwrap();
        let p = reflection_presentation(&iv);
        assert_eq!(p.generators.len(), 4);
        assert_eq!(p.relators.len(), 3);

        let iv = coxeter_interval(GroupType::C(3));
        let p = reflection_presentation(&iv);
        assert_eq!(p.generators.len(), 9);
        assert_eq!(p.relators.len(), 26);
    }

    #[test]
    fn artin_presentations() {
        let c2 = artin_presentation(GroupType::C(2)).unwrap();
        assert_eq!(c2.generators, ["x1", "x2"]);
        assert_eq!(c2.relators, vec![(vec![0, 1, 0, 1], vec![1, 0, 1, 0])]);

        let d2 = artin_presentation(GroupType::D(2)).unwrap();
        assert_eq!(d2.relators, vec![(vec![0, 1], vec![1, 0])]);

        let c3 = artin_presentation(GroupType::C(3)).unwrap();
        assert_eq!(c3.relators.len(), 3);

        assert!(artin_presentation(GroupType::C(1)).is_err());
    }

    #[test]
    fn phi_images_are_atoms() {
        for gt in [GroupType::C(3), GroupType::D(3)] {
            let iv = coxeter_interval(gt);
            let map = phi(&iv).unwrap();
            for i in 1..=3 {
                assert_eq!(iv.length(map.target(i)), 1);
            }
            assert_eq!(iv.name(map.target(2)), "(1,2)");
            assert_eq!(iv.name(map.target(3)), "(2,3)");
        }
        let ivc = coxeter_interval(GroupType::C(3));
        assert_eq!(ivc.name(phi(&ivc).unwrap().target(1)), "[1]");
        let ivd = coxeter_interval(GroupType::D(3));
        assert_eq!(ivd.name(phi(&ivd).unwrap().target(1)), "(1,-2)");
    }

    #[test]
    fn verify_phi_small_ranks() {
        for gt in [GroupType::C(2), GroupType::C(3), GroupType::D(2), GroupType::D(3)] {
            let iv = coxeter_interval(gt);
            let cert = iv.certify_lattice().unwrap();
            let report = verify_phi(&iv, &cert).unwrap();
            assert!(report.ok(), "{gt}: {:?}", report.failures);
        }
    }

    #[test]
    fn verify_theta_small_ranks() {
        for gt in [GroupType::C(2), GroupType::C(3), GroupType::D(2), GroupType::D(3)] {
            let iv = coxeter_interval(gt);
            let cert = iv.certify_lattice().unwrap();
            let report = verify_theta_identities(&iv, &cert).unwrap();
            assert!(report.ok(), "{gt}: {:?}", report.failures);
        }
    }

    #[test]
    fn derived_identities_exist_for_both_types() {
        let c = derived_generator_words(GroupType::C(3)).unwrap();
        assert!(c.iter().any(|d| matches!(d.symbol, Letter::SignLift(_))));
        let d = derived_generator_words(GroupType::D(3)).unwrap();
        assert!(d.iter().all(|i| !matches!(i.symbol, Letter::SignLift(_))));
        assert!(d.iter().any(|i| matches!(i.symbol, Letter::NegBand(1, 2))));
    }

    #[test]
    fn abelianizations() {
        for n in 2..=4 {
            let c = artin_presentation(GroupType::C(n)).unwrap();
            assert_eq!(abelianization(&c), AbelianGroup::free(2), "C{n}");
        }
        for n in 3..=4 {
            let d = artin_presentation(GroupType::D(n)).unwrap();
            assert_eq!(abelianization(&d), AbelianGroup::free(1), "D{n}");
        }
        let d2 = artin_presentation(GroupType::D(2)).unwrap();
        assert_eq!(abelianization(&d2), AbelianGroup::free(2));
    }

    #[test]
    fn presentation_export_is_stable() {
        let p = artin_presentation(GroupType::C(2)).unwrap();
        assert_eq!(p.to_string(), "gens: x1 ; x2\nrels: (x1).(x2).(x1).(x2) = (x2).(x1).(x2).(x1)\n");
    }
}
