//! Alphabet, Dyck-monoid reduction and the forbidden-word subshift specification.
//!
//! Symbols are `α⁻(n, m)` (openers) and `α⁺(n, m)` (closers) with bracket class
//! `n ∈ [0, N)` and copy index `m ∈ [1, M_n]`. An opener and a closer cancel to
//! the identity when their classes agree and to zero otherwise; the copy index
//! never matters to the monoid, only to the excluded words.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SignedSymbol {
    pub sign: Sign,
    pub class: usize,
    /// 1-based copy index.
    pub copy: usize,
}

impl SignedSymbol {
    pub const fn minus(class: usize, copy: usize) -> Self {
        SignedSymbol { sign: Sign::Minus, class, copy }
    }

    pub const fn plus(class: usize, copy: usize) -> Self {
        SignedSymbol { sign: Sign::Plus, class, copy }
    }

    pub fn is_minus(&self) -> bool {
        self.sign == Sign::Minus
    }

    pub fn is_plus(&self) -> bool {
        self.sign == Sign::Plus
    }

    /// Same class and copy, opposite sign.
    pub fn flipped(&self) -> Self {
        let sign = match self.sign {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        };
        SignedSymbol { sign, ..*self }
    }
}

impl fmt::Display for SignedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.is_minus() { '-' } else { '+' };
        write!(f, "a{s}({},{})", self.class, self.copy)
    }
}

pub type Word = Vec<SignedSymbol>;

pub fn format_word(word: &[SignedSymbol]) -> String {
    word.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// `ρ(α⁻) = 1`, `ρ(α⁺) = -1`.
pub fn rho(symbol: &SignedSymbol) -> i32 {
    match symbol.sign {
        Sign::Minus => 1,
        Sign::Plus => -1,
    }
}

/// Monoid value of a word in normal form: unmatched closers, then unmatched openers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ReducedElement {
    Zero,
    Element { unmatched_plus: Vec<SignedSymbol>, unmatched_minus: Vec<SignedSymbol> },
}

impl ReducedElement {
    pub fn identity() -> Self {
        ReducedElement::Element { unmatched_plus: Vec::new(), unmatched_minus: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ReducedElement::Zero)
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, ReducedElement::Element { unmatched_plus, unmatched_minus }
            if unmatched_plus.is_empty() && unmatched_minus.is_empty())
    }

    /// A word representing the element; `None` for zero.
    pub fn to_word(&self) -> Option<Word> {
        match self {
            ReducedElement::Zero => None,
            ReducedElement::Element { unmatched_plus, unmatched_minus } => {
                Some(unmatched_plus.iter().chain(unmatched_minus).copied().collect())
            }
        }
    }

    pub fn class(&self) -> MultiplierClass {
        match self {
            ReducedElement::Zero => MultiplierClass::Zero,
            ReducedElement::Element { unmatched_plus, unmatched_minus } => {
                match (unmatched_plus.is_empty(), unmatched_minus.is_empty()) {
                    (true, true) => MultiplierClass::Neutral,
                    (true, false) => MultiplierClass::NonPositive,
                    (false, true) => MultiplierClass::NonNegative,
                    (false, false) => MultiplierClass::Mixed,
                }
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum MultiplierClass {
    Zero,
    Neutral,
    NonPositive,
    NonNegative,
    Mixed,
}

/// Evaluates the product of a word in the monoid by bracket matching.
pub fn reduce(word: &[SignedSymbol]) -> ReducedElement {
    let mut unmatched_plus = Vec::new();
    let mut open: Vec<SignedSymbol> = Vec::new();
    for &s in word {
        match s.sign {
            Sign::Minus => open.push(s),
            Sign::Plus => match open.pop() {
                Some(o) if o.class == s.class => {}
                Some(_) => return ReducedElement::Zero,
                None => unmatched_plus.push(s),
            },
        }
    }
    ReducedElement::Element { unmatched_plus, unmatched_minus: open }
}

pub fn multiplier_class(word: &[SignedSymbol]) -> MultiplierClass {
    reduce(word).class()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("at least one bracket class is required")]
    NoClasses,
    #[error("copy count M_{class} must be positive")]
    ZeroCopies { class: usize },
    #[error("matrix {matrix} has dimension {found}, expected {expected}")]
    Dimension { matrix: &'static str, found: usize, expected: usize },
    #[error("matrix {matrix} entry ({row},{col}) = {value} is negative")]
    NegativeEntry { matrix: &'static str, row: usize, col: usize, value: i64 },
    #[error(
        "matrix {matrix} entry ({row},{col}) = {value} exceeds M_{col} = {bound}; \
         each entry at (n, n') is the size of a subset of [1, M_n']"
    )]
    EntryExceedsCopies { matrix: &'static str, row: usize, col: usize, value: i64, bound: usize },
    #[error("subset {matrix}[{row}][{col}] contains {value}, outside [1, {bound}]")]
    SubsetOutOfRange { matrix: &'static str, row: usize, col: usize, value: usize, bound: usize },
    #[error("subset {matrix}[{row}][{col}] has {found} elements but the matrix entry is {expected}")]
    SubsetCardinality { matrix: &'static str, row: usize, col: usize, found: usize, expected: i64 },
    #[error("specs have different cardinality matrices")]
    CardinalityMismatch,
    #[error("word is not locally admissible for the source spec")]
    NotAdmissible,
    #[error("symbol {0} is not part of the alphabet")]
    InvalidSymbol(SignedSymbol),
}

/// Explicit subsets `𝒜⁻_{n,n'}`, `𝒜_{n,n'}`, `𝒜⁺_{n,n'} ⊂ [1, M_{n'}]`, indexed `[n][n']`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SubsetFamily {
    pub minus: Vec<Vec<BTreeSet<usize>>>,
    pub mid: Vec<Vec<BTreeSet<usize>>>,
    pub plus: Vec<Vec<BTreeSet<usize>>>,
}

impl SubsetFamily {
    /// Initial intervals `[1, A(n, n')]`.
    pub fn intervals(a_minus: &IntMatrix, a: &IntMatrix, a_plus: &IntMatrix) -> Self {
        let iv = |m: &IntMatrix| -> Vec<Vec<BTreeSet<usize>>> {
            (0..m.dim())
                .map(|i| (0..m.dim()).map(|j| (1..=m.get(i, j) as usize).collect()).collect())
                .collect()
        };
        SubsetFamily { minus: iv(a_minus), mid: iv(a), plus: iv(a_plus) }
    }

    fn cardinalities(sets: &[Vec<BTreeSet<usize>>]) -> Vec<Vec<i64>> {
        sets.iter().map(|row| row.iter().map(|s| s.len() as i64).collect()).collect()
    }
}

/// Which of the three constrained length-two patterns an adjacency is.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Adjacency {
    MinusMinus,
    PlusMinus,
    PlusPlus,
    /// Never excluded.
    MinusPlus,
}

impl Adjacency {
    pub fn of(prev: &SignedSymbol, next: &SignedSymbol) -> Self {
        match (prev.sign, next.sign) {
            (Sign::Minus, Sign::Minus) => Adjacency::MinusMinus,
            (Sign::Plus, Sign::Minus) => Adjacency::PlusMinus,
            (Sign::Plus, Sign::Plus) => Adjacency::PlusPlus,
            (Sign::Minus, Sign::Plus) => Adjacency::MinusPlus,
        }
    }
}

/// The data `(N, (M_n), A⁻, A, A⁺)` with optional explicit subsets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubshiftSpec {
    copies: Vec<usize>,
    a_minus: IntMatrix,
    a: IntMatrix,
    a_plus: IntMatrix,
    subsets: Option<SubsetFamily>,
}

impl SubshiftSpec {
    /// Spec with the default interval subsets.
    pub fn new(copies: Vec<usize>, a_minus: IntMatrix, a: IntMatrix, a_plus: IntMatrix) -> Result<Self, SpecError> {
        let spec = SubshiftSpec { copies, a_minus, a, a_plus, subsets: None };
        spec.validate()?;
        Ok(spec)
    }

    /// Spec defined by explicit subsets; the matrices are their cardinalities.
    pub fn with_subsets(copies: Vec<usize>, subsets: SubsetFamily) -> Result<Self, SpecError> {
        let n = copies.len();
        let to_matrix = |name: &'static str, sets: &[Vec<BTreeSet<usize>>]| -> Result<IntMatrix, SpecError> {
            IntMatrix::from_rows(&SubsetFamily::cardinalities(sets))
                .filter(|m| m.dim() == n)
                .ok_or(SpecError::Dimension { matrix: name, found: sets.len(), expected: n })
        };
        let a_minus = to_matrix("Aminus", &subsets.minus)?;
        let a = to_matrix("A", &subsets.mid)?;
        let a_plus = to_matrix("Aplus", &subsets.plus)?;
        let spec = SubshiftSpec { copies, a_minus, a, a_plus, subsets: Some(subsets) };
        spec.validate()?;
        Ok(spec)
    }

    /// Spec with explicit subsets that must match given cardinality matrices.
    pub fn with_checked_subsets(
        copies: Vec<usize>,
        a_minus: IntMatrix,
        a: IntMatrix,
        a_plus: IntMatrix,
        subsets: SubsetFamily,
    ) -> Result<Self, SpecError> {
        let spec = SubshiftSpec { copies, a_minus, a, a_plus, subsets: Some(subsets) };
        spec.validate()?;
        Ok(spec)
    }

    /// The Dyck shift `D_N`.
    pub fn dyck(n: usize) -> Self {
        let ones = IntMatrix::constant(n, 1);
        SubshiftSpec::new(vec![1; n], ones.clone(), ones.clone(), ones).expect("valid")
    }

    /// Random spec with `M_n` uniform in `[1, max_copies]` and each entry
    /// `(n, n')` uniform in `[0, M_n']`.
    pub fn random<R: rand::Rng>(rng: &mut R, classes: usize, max_copies: usize) -> Self {
        let copies: Vec<usize> = (0..classes).map(|_| rng.gen_range(1..=max_copies)).collect();
        let mut mat = || {
            let mut m = IntMatrix::zeros(classes);
            for i in 0..classes {
                for j in 0..classes {
                    m.set(i, j, rng.gen_range(0..=copies[j] as i64));
                }
            }
            m
        };
        let (am, a, ap) = (mat(), mat(), mat());
        SubshiftSpec::new(copies, am, a, ap).expect("entries bounded by copies")
    }

    fn validate(&self) -> Result<(), SpecError> {
        let n = self.copies.len();
        if n == 0 {
            return Err(SpecError::NoClasses);
        }
        if let Some(class) = self.copies.iter().position(|&m| m == 0) {
            return Err(SpecError::ZeroCopies { class });
        }
        for (name, m) in self.named_matrices() {
            if m.dim() != n {
                return Err(SpecError::Dimension { matrix: name, found: m.dim(), expected: n });
            }
            for row in 0..n {
                for col in 0..n {
                    let value = m.get(row, col);
                    if value < 0 {
                        return Err(SpecError::NegativeEntry { matrix: name, row, col, value });
                    }
                    if value as usize > self.copies[col] {
                        return Err(SpecError::EntryExceedsCopies { matrix: name, row, col, value, bound: self.copies[col] });
                    }
                }
            }
        }
        if let Some(sub) = &self.subsets {
            for ((name, m), sets) in self.named_matrices().into_iter().zip([&sub.minus, &sub.mid, &sub.plus]) {
                if sets.len() != n || sets.iter().any(|r| r.len() != n) {
                    return Err(SpecError::Dimension { matrix: name, found: sets.len(), expected: n });
                }
                for row in 0..n {
                    for col in 0..n {
                        let set = &sets[row][col];
                        if let Some(&value) = set.iter().find(|&&v| v == 0 || v > self.copies[col]) {
                            return Err(SpecError::SubsetOutOfRange { matrix: name, row, col, value, bound: self.copies[col] });
                        }
                        if set.len() as i64 != m.get(row, col) {
                            return Err(SpecError::SubsetCardinality {
                                matrix: name,
                                row,
                                col,
                                found: set.len(),
                                expected: m.get(row, col),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn named_matrices(&self) -> [(&'static str, &IntMatrix); 3] {
        [("Aminus", &self.a_minus), ("A", &self.a), ("Aplus", &self.a_plus)]
    }

    pub fn classes(&self) -> usize {
        self.copies.len()
    }

    pub fn copies(&self) -> &[usize] {
        &self.copies
    }

    pub fn a_minus(&self) -> &IntMatrix {
        &self.a_minus
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn a_plus(&self) -> &IntMatrix {
        &self.a_plus
    }

    pub fn subsets(&self) -> Option<&SubsetFamily> {
        self.subsets.as_ref()
    }

    pub fn is_valid_symbol(&self, s: &SignedSymbol) -> bool {
        s.class < self.classes() && s.copy >= 1 && s.copy <= self.copies[s.class]
    }

    /// Alphabet in a fixed order: openers by `(n, m)`, then closers by `(n, m)`.
    pub fn alphabet(&self) -> Vec<SignedSymbol> {
        let mut out = Vec::new();
        for sign in [Sign::Minus, Sign::Plus] {
            for (class, &m) in self.copies.iter().enumerate() {
                for copy in 1..=m {
                    out.push(SignedSymbol { sign, class, copy });
                }
            }
        }
        out
    }

    /// Whether copy `m2` of class `n2` may follow a symbol of class `n` under the given pattern.
    pub fn allows_copy(&self, kind: Adjacency, n: usize, n2: usize, m2: usize) -> bool {
        let (matrix, sets) = match (kind, &self.subsets) {
            (Adjacency::MinusPlus, _) => return true,
            (Adjacency::MinusMinus, s) => (&self.a_minus, s.as_ref().map(|s| &s.minus)),
            (Adjacency::PlusMinus, s) => (&self.a, s.as_ref().map(|s| &s.mid)),
            (Adjacency::PlusPlus, s) => (&self.a_plus, s.as_ref().map(|s| &s.plus)),
        };
        match sets {
            Some(sets) => sets[n][n2].contains(&m2),
            None => m2 as i64 <= matrix.get(n, n2),
        }
    }

    /// `true` iff the length-two word `prev next` is not an excluded word.
    pub fn allows_pair(&self, prev: &SignedSymbol, next: &SignedSymbol) -> bool {
        self.allows_copy(Adjacency::of(prev, next), prev.class, next.class, next.copy)
    }
}

/// Nonzero monoid product and no excluded length-two factor.
pub fn is_locally_admissible(spec: &SubshiftSpec, word: &[SignedSymbol]) -> bool {
    word.windows(2).all(|w| spec.allows_pair(&w[0], &w[1])) && !reduce(word).is_zero()
}

/// Decides whether `word^∞` is a point of the subshift.
///
/// Returns the multiplier class of the point when it is: `Neutral` if some
/// rotation reduces to the identity, otherwise the class of the pure rotation.
pub fn is_periodic_word(spec: &SubshiftSpec, word: &[SignedSymbol]) -> Option<MultiplierClass> {
    let n = word.len();
    if n == 0 {
        return None;
    }
    if !(0..n).all(|i| spec.allows_pair(&word[i], &word[(i + 1) % n])) {
        return None;
    }
    let mut found = None;
    let mut rotated = Vec::with_capacity(n);
    for shift in 0..n {
        rotated.clear();
        rotated.extend_from_slice(&word[shift..]);
        rotated.extend_from_slice(&word[..shift]);
        match multiplier_class(&rotated) {
            MultiplierClass::Neutral => return Some(MultiplierClass::Neutral),
            c @ (MultiplierClass::NonPositive | MultiplierClass::NonNegative) => found = Some(c),
            MultiplierClass::Zero | MultiplierClass::Mixed => {}
        }
    }
    found
}

/// All locally admissible words of a given length, in lexicographic alphabet order.
pub fn locally_admissible_words(spec: &SubshiftSpec, len: usize) -> Vec<Word> {
    fn go(spec: &SubshiftSpec, alphabet: &[SignedSymbol], len: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == len {
            if !reduce(cur).is_zero() {
                out.push(cur.clone());
            }
            return;
        }
        for s in alphabet {
            if let Some(last) = cur.last() {
                if !spec.allows_pair(last, s) {
                    continue;
                }
            }
            cur.push(*s);
            if !reduce(cur).is_zero() {
                go(spec, alphabet, len, cur, out);
            }
            cur.pop();
        }
    }
    let alphabet = spec.alphabet();
    let mut out = Vec::new();
    go(spec, &alphabet, len, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Permutations `Ψ⁻`, `Ψ`, `Ψ⁺` of each `[1, M_{n'}]`, indexed `[n][n'][m' - 1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelabelMap {
    source: SubshiftSpec,
    target: SubshiftSpec,
    minus: Vec<Vec<Vec<usize>>>,
    mid: Vec<Vec<Vec<usize>>>,
    plus: Vec<Vec<Vec<usize>>>,
}

impl RelabelMap {
    pub fn source(&self) -> &SubshiftSpec {
        &self.source
    }

    pub fn target(&self) -> &SubshiftSpec {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        [&self.minus, &self.mid, &self.plus]
            .iter()
            .all(|f| f.iter().flatten().all(|p| p.iter().enumerate().all(|(i, &v)| v == i + 1)))
    }

    /// The permutation applied to `m'` for the given adjacency pattern.
    pub fn image(&self, kind: Adjacency, n: usize, n2: usize, m2: usize) -> usize {
        match kind {
            Adjacency::MinusPlus => m2,
            Adjacency::MinusMinus => self.minus[n][n2][m2 - 1],
            Adjacency::PlusMinus => self.mid[n][n2][m2 - 1],
            Adjacency::PlusPlus => self.plus[n][n2][m2 - 1],
        }
    }

    pub fn inverse(&self) -> RelabelMap {
        let inv = |f: &Vec<Vec<Vec<usize>>>| -> Vec<Vec<Vec<usize>>> {
            f.iter()
                .map(|row| {
                    row.iter()
                        .map(|p| {
                            let mut q = vec![0; p.len()];
                            for (i, &v) in p.iter().enumerate() {
                                q[v - 1] = i + 1;
                            }
                            q
                        })
                        .collect()
                })
                .collect()
        };
        RelabelMap {
            source: self.target.clone(),
            target: self.source.clone(),
            minus: inv(&self.minus),
            mid: inv(&self.mid),
            plus: inv(&self.plus),
        }
    }

    /// `other ∘ self`; `self.target` must equal `other.source`.
    pub fn then(&self, other: &RelabelMap) -> RelabelMap {
        assert_eq!(self.target, other.source, "relabel maps do not compose");
        let comp = |f: &Vec<Vec<Vec<usize>>>, g: &Vec<Vec<Vec<usize>>>| -> Vec<Vec<Vec<usize>>> {
            f.iter()
                .zip(g)
                .map(|(fr, gr)| fr.iter().zip(gr).map(|(p, q)| p.iter().map(|&v| q[v - 1]).collect()).collect())
                .collect()
        };
        RelabelMap {
            source: self.source.clone(),
            target: other.target.clone(),
            minus: comp(&self.minus, &other.minus),
            mid: comp(&self.mid, &other.mid),
            plus: comp(&self.plus, &other.plus),
        }
    }

    /// Conjugacy between two subset specs with equal cardinality matrices.
    pub fn between(source: &SubshiftSpec, target: &SubshiftSpec) -> Result<RelabelMap, SpecError> {
        let (canon_s, to_s) = canonicalize(source)?;
        let (canon_t, to_t) = canonicalize(target)?;
        if canon_s != canon_t {
            return Err(SpecError::CardinalityMismatch);
        }
        Ok(to_s.then(&to_t.inverse()))
    }
}

/// Interval-subset spec with the same cardinalities, and the relabelling onto it.
pub fn canonicalize(spec: &SubshiftSpec) -> Result<(SubshiftSpec, RelabelMap), SpecError> {
    let target = SubshiftSpec {
        copies: spec.copies.clone(),
        a_minus: spec.a_minus.clone(),
        a: spec.a.clone(),
        a_plus: spec.a_plus.clone(),
        subsets: None,
    };
    let n = spec.classes();
    let perms = |sets: Option<&Vec<Vec<BTreeSet<usize>>>>| -> Vec<Vec<Vec<usize>>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let m = spec.copies[j];
                        match sets {
                            None => (1..=m).collect(),
                            Some(sets) => {
                                // members in order go to 1..=k, the rest follow in order
                                let set = &sets[i][j];
                                let mut p = vec![0; m];
                                let ordered = set.iter().copied().chain((1..=m).filter(|v| !set.contains(v)));
                                for (rank, v) in ordered.enumerate() {
                                    p[v - 1] = rank + 1;
                                }
                                p
                            }
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let sub = spec.subsets.as_ref();
    let map = RelabelMap {
        source: spec.clone(),
        target: target.clone(),
        minus: perms(sub.map(|s| &s.minus)),
        mid: perms(sub.map(|s| &s.mid)),
        plus: perms(sub.map(|s| &s.plus)),
    };
    Ok((target, map))
}

/// 2-block relabelling of a finite word. The first symbol has no predecessor and is kept.
pub fn relabel_word(word: &[SignedSymbol], map: &RelabelMap) -> Result<Word, SpecError> {
    if !is_locally_admissible(&map.source, word) {
        return Err(SpecError::NotAdmissible);
    }
    let mut out = Vec::with_capacity(word.len());
    if let Some(&first) = word.first() {
        out.push(first);
    }
    for w in word.windows(2) {
        let (prev, cur) = (w[0], w[1]);
        let copy = map.image(Adjacency::of(&prev, &cur), prev.class, cur.class, cur.copy);
        out.push(SignedSymbol { copy, ..cur });
    }
    Ok(out)
}

/// Relabelling of the periodic point `word^∞`, one period of the image.
pub fn relabel_cyclic(word: &[SignedSymbol], map: &RelabelMap) -> Word {
    let n = word.len();
    (0..n)
        .map(|i| {
            let prev = word[(i + n - 1) % n];
            let cur = word[i];
            let copy = map.image(Adjacency::of(&prev, &cur), prev.class, cur.class, cur.copy);
            SignedSymbol { copy, ..cur }
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct Diagnostics {
    /// Classes all of whose symbols are dead.
    pub empty_alphabet_classes: Vec<usize>,
    pub dead_symbols: Vec<DeadSymbol>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DeadSymbol {
    pub symbol: SignedSymbol,
    pub no_predecessor: bool,
    pub no_successor: bool,
}

impl Diagnostics {
    pub fn is_empty(&self) -> bool {
        self.empty_alphabet_classes.is_empty() && self.dead_symbols.is_empty()
    }
}

/// Symbols that no allowed length-two word can enter or leave. Advisory only.
pub fn diagnostics(spec: &SubshiftSpec) -> Diagnostics {
    let alphabet = spec.alphabet();
    let admissible = |a: &SignedSymbol, b: &SignedSymbol| spec.allows_pair(a, b) && !reduce(&[*a, *b]).is_zero();
    let mut report = Diagnostics::default();
    for s in &alphabet {
        let no_predecessor = !alphabet.iter().any(|p| admissible(p, s));
        let no_successor = !alphabet.iter().any(|q| admissible(s, q));
        if no_predecessor || no_successor {
            report.dead_symbols.push(DeadSymbol { symbol: *s, no_predecessor, no_successor });
        }
    }
    for class in 0..spec.classes() {
        let total = 2 * spec.copies[class];
        let dead = report.dead_symbols.iter().filter(|d| d.symbol.class == class).count();
        if dead == total {
            report.empty_alphabet_classes.push(class);
        }
    }
    report
}
