//! Labelled-graph presentations of two-class subshifts with one copy per
//! class, the symmetries (time reversal, index swap) of 0-1 triplets, and the
//! exhaustive classification of triplets admitting a presentation with
//! `g₀ = g₁`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genfun::{solve_genfun, GenFunError};
use crate::identities::{diag_conditions, family_of, FamilyForm, Triplet};
use crate::kernel::{is_locally_admissible, is_periodic_word, reduce, SignedSymbol, SpecError, Word};
use crate::matrix::IntMatrix;

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("triplet {0} does not satisfy the presentation conditions")]
    Conditions(Triplet),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    GenFun(#[from] GenFunError),
    #[error("unknown format {0:?} (expected json, tsv or dot)")]
    UnknownFormat(String),
    #[error("format {0} is not available for this output")]
    Unsupported(Format),
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
}

impl From<serde_json::Error> for PresentationError {
    fn from(e: serde_json::Error) -> Self {
        PresentationError::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

/// Rows of `A⁻` nonzero, `A` irreducible (both off-diagonal entries
/// positive) and columns of `A⁺` nonzero.
pub fn presentation_conditions(t: &Triplet) -> bool {
    let (am, a, ap) = (&t.a_minus, &t.a, &t.a_plus);
    let rows = (0..2).all(|i| am.get(i, 0) != 0 || am.get(i, 1) != 0);
    let cols = (0..2).all(|j| ap.get(0, j) != 0 || ap.get(1, j) != 0);
    rows && a.get(0, 1) > 0 && a.get(1, 0) > 0 && cols
}

/// How an edge `β₋₁β₀β₁` is labelled.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub enum LabelRule {
    /// The middle symbol `β₀`.
    #[default]
    Middle,
    /// `β₋₁` when `β₋₁β₀` are both openers, `β₁` when `β₀β₁` are both
    /// closers, the identity otherwise.
    ThreeCase,
}

impl LabelRule {
    pub fn label(self, w: &[SignedSymbol; 3]) -> Option<SignedSymbol> {
        match self {
            LabelRule::Middle => Some(w[1]),
            LabelRule::ThreeCase => {
                if w[0].is_minus() && w[1].is_minus() {
                    Some(w[0])
                } else if w[1].is_plus() && w[2].is_plus() {
                    Some(w[2])
                } else {
                    None
                }
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub word: [SignedSymbol; 3],
    /// `None` is the monoid identity.
    pub label: Option<SignedSymbol>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PresentationGraph {
    pub triplet: Triplet,
    pub rule: LabelRule,
    pub vertices: Vec<[SignedSymbol; 2]>,
    pub edges: Vec<Edge>,
}

/// The graph on two-blocks with three-block edges.
pub fn build_presentation(t: &Triplet, rule: LabelRule) -> Result<PresentationGraph, PresentationError> {
    if !presentation_conditions(t) {
        return Err(PresentationError::Conditions(t.clone()));
    }
    Ok(block_graph(t, rule)?)
}

/// Same graph without checking the presentation conditions.
pub fn block_graph(t: &Triplet, rule: LabelRule) -> Result<PresentationGraph, SpecError> {
    let spec = t.to_spec(1)?;
    let alphabet = spec.alphabet();
    let mut vertices = Vec::new();
    for &a in &alphabet {
        for &b in &alphabet {
            if is_locally_admissible(&spec, &[a, b]) {
                vertices.push([a, b]);
            }
        }
    }
    let index: BTreeMap<[SignedSymbol; 2], usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut edges = Vec::new();
    for (from, v) in vertices.iter().enumerate() {
        for &c in &alphabet {
            let word = [v[0], v[1], c];
            if reduce(&word).is_zero() {
                continue;
            }
            if let Some(&to) = index.get(&[v[1], c]) {
                edges.push(Edge { from, to, word, label: rule.label(&word) });
            }
        }
    }
    Ok(PresentationGraph { triplet: t.clone(), rule, vertices, edges })
}

impl PresentationGraph {
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(move |(_, e)| e.from == v)
    }

    /// Every vertex has an incoming and an outgoing edge.
    pub fn is_essential(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.edges.iter().any(|e| e.from == v) && self.edges.iter().any(|e| e.to == v))
    }

    /// All edge paths with `len` edges, as edge-index sequences.
    pub fn paths(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = if len == 0 { vec![] } else { (0..self.edges.len()).map(|e| vec![e]).collect() };
        for _ in 1..len {
            out = out
                .into_iter()
                .flat_map(|p| {
                    let last = self.edges[*p.last().expect("nonempty")].to;
                    self.out_edges(last)
                        .map(|(e, _)| {
                            let mut q = p.clone();
                            q.push(e);
                            q
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        out
    }

    pub fn middle_word(&self, path: &[usize]) -> Word {
        path.iter().map(|&e| self.edges[e].word[1]).collect()
    }

    pub fn path_label(&self, path: &[usize]) -> Word {
        path.iter().filter_map(|&e| self.edges[e].label).collect()
    }

    /// Checks `λ(b) ≠ 0 ⇔ the middle-symbol word of b is admissible` on all
    /// paths of up to `max_len` edges. Returns the first path where it fails.
    pub fn check_label_property(&self, max_len: usize) -> Result<(), Vec<usize>> {
        let spec = self.triplet.to_spec(1).expect("graph built from a valid spec");
        for len in 1..=max_len {
            for p in self.paths(len) {
                let nonzero = !reduce(&self.path_label(&p)).is_zero();
                if nonzero != is_locally_admissible(&spec, &self.middle_word(&p)) {
                    return Err(p);
                }
            }
        }
        Ok(())
    }

    /// Number of closed paths with `n` edges whose label word gives a periodic point.
    pub fn periodic_path_count(&self, n: usize) -> u64 {
        let spec = self.triplet.to_spec(1).expect("graph built from a valid spec");
        self.paths(n)
            .into_iter()
            .filter(|p| self.edges[p[n - 1]].to == self.edges[p[0]].from)
            .filter(|p| is_periodic_word(&spec, &self.middle_word(p)).is_some())
            .count() as u64
    }
}

/// `((A⁺)ᵀ, Aᵀ, (A⁻)ᵀ)`: the triplet of the reversed, sign-swapped subshift.
pub fn time_reverse(t: &Triplet) -> Triplet {
    Triplet::new(t.a_plus.transpose(), t.a.transpose(), t.a_minus.transpose())
}

/// Exchanges the class indices 0 and 1 in all three matrices.
pub fn swap_indices(t: &Triplet) -> Triplet {
    let p = [1, 0];
    Triplet::new(t.a_minus.permute(&p), t.a.permute(&p), t.a_plus.permute(&p))
}

/// The orbit of `t` under index swap and time reversal, sorted and deduplicated.
pub fn orbit(t: &Triplet) -> Vec<Triplet> {
    let s = swap_indices(t);
    let mut out = vec![t.clone(), time_reverse(t), time_reverse(&s), s];
    out.sort();
    out.dedup();
    out
}

pub fn in_t(t: &Triplet) -> bool {
    presentation_conditions(t) && diag_conditions(t) == (true, true)
}

/// The `(A⁻, A⁺)` pairs listed as non-family representatives, each with the
/// `A` matrices it is listed against.
pub fn listed_pairs() -> Vec<(IntMatrix, IntMatrix, Vec<IntMatrix>)> {
    let m = IntMatrix::m2;
    let golden = m([[1, 1], [1, 0]]);
    let swap = m([[0, 1], [1, 0]]);
    let ones = m([[1, 1], [1, 1]]);
    let tail = vec![swap.clone(), ones.clone()];
    vec![
        (golden.clone(), swap.clone(), vec![golden.clone()]),
        (ones.clone(), IntMatrix::identity(2), tail.clone()),
        (m([[1, 1], [0, 1]]), m([[1, 1], [0, 1]]), tail.clone()),
        (ones.clone(), swap, tail.clone()),
        (golden, m([[0, 1], [1, 1]]), tail),
    ]
}

/// The three `A` matrices named alongside the listed pairs.
pub fn listed_a_candidates() -> Vec<IntMatrix> {
    vec![IntMatrix::m2([[1, 1], [1, 0]]), IntMatrix::m2([[0, 1], [1, 0]]), IntMatrix::m2([[1, 1], [1, 1]])]
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ListedPairing {
    pub triplet: Triplet,
    /// `A` is one the pair is listed against.
    pub listed_with: bool,
    pub conditions: bool,
    pub member: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TripletClass {
    /// Lexicographically least orbit member.
    pub representative: Triplet,
    pub orbit: Vec<Triplet>,
    pub families: Vec<FamilyForm>,
    pub member: bool,
    pub listed: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Classification {
    pub members: usize,
    pub classes: Vec<TripletClass>,
    /// Every listed pair combined with every candidate `A`.
    pub listed_pairings: Vec<ListedPairing>,
    /// Order of the direct `g₀ = g₁` comparison, if one was run.
    pub slow_path_order: Option<usize>,
    /// Triplets where the direct comparison disagrees with membership.
    pub slow_path_mismatches: Vec<Triplet>,
}

impl Classification {
    pub fn outside_families(&self) -> impl Iterator<Item = &TripletClass> {
        self.classes.iter().filter(|c| c.families.is_empty())
    }

    /// Listed pairings with a listed `A` that pass the conditions but are not members.
    pub fn listed_failures(&self) -> Vec<&ListedPairing> {
        self.listed_pairings.iter().filter(|p| p.listed_with && p.conditions && !p.member).collect()
    }
}

#[allow(non_snake_case)]
pub fn enumerate_T() -> Result<Classification, PresentationError> {
    enumerate_t_with(Some(24))
}

/// Sweeps all 0-1 triplets. With `slow_order`, every triplet satisfying the
/// presentation conditions is also checked by comparing `g₀` and `g₁`
/// through that order.
pub fn enumerate_t_with(slow_order: Option<usize>) -> Result<Classification, PresentationError> {
    let mut listed = Vec::new();
    for (am, ap, with) in listed_pairs() {
        for a in listed_a_candidates() {
            let t = Triplet::new(am.clone(), a.clone(), ap.clone());
            listed.push(ListedPairing { listed_with: with.contains(&a), conditions: presentation_conditions(&t), member: in_t(&t), triplet: t });
        }
    }
    let listed_set: Vec<Triplet> = listed.iter().filter(|p| p.listed_with).map(|p| p.triplet.clone()).collect();

    let mut members = 0;
    let mut by_key: BTreeMap<Triplet, TripletClass> = BTreeMap::new();
    let mut mismatches = Vec::new();
    for t in Triplet::all_binary() {
        let member = in_t(&t);
        if let (Some(order), true) = (slow_order, presentation_conditions(&t)) {
            let sol = solve_genfun(&t.to_spec(1)?, order)?;
            if (sol.g[0] == sol.g[1]) != member {
                mismatches.push(t.clone());
            }
        }
        if !member {
            continue;
        }
        members += 1;
        let orb = orbit(&t);
        let key = orb[0].clone();
        by_key.entry(key.clone()).or_insert_with(|| TripletClass {
            families: family_of(&key),
            listed: orb.iter().any(|o| listed_set.contains(o)),
            member,
            representative: key,
            orbit: orb,
        });
    }
    Ok(Classification {
        members,
        classes: by_key.into_values().collect(),
        listed_pairings: listed,
        slow_path_order: slow_order,
        slow_path_mismatches: mismatches,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Format {
    Json,
    Tsv,
    Dot,
}

impl std::str::FromStr for Format {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "dot" => Ok(Format::Dot),
            other => Err(PresentationError::UnknownFormat(other.to_string())),
        }
    }
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Tsv => "tsv",
            Format::Dot => "dot",
        })
    }
}

fn symbol_label(s: &Option<SignedSymbol>) -> String {
    match s {
        Some(s) => s.to_string(),
        None => "1".to_string(),
    }
}

pub fn export_graph(g: &PresentationGraph, format: Format) -> Result<String, PresentationError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(g)? + "\n"),
        Format::Dot => {
            let mut out = String::from("digraph presentation {\n");
            for (i, v) in g.vertices.iter().enumerate() {
                writeln!(out, "  v{i} [label=\"{} {}\"];", v[0], v[1]).unwrap();
            }
            for e in &g.edges {
                writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.from, e.to, symbol_label(&e.label)).unwrap();
            }
            out.push_str("}\n");
            Ok(out)
        }
        Format::Tsv => {
            let mut out = String::from("from\tto\tword\tlabel\n");
            for e in &g.edges {
                let w = e.word.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
                writeln!(out, "{}\t{}\t{}\t{}", e.from, e.to, w, symbol_label(&e.label)).unwrap();
            }
            Ok(out)
        }
    }
}

pub fn import_graph(json: &str) -> Result<PresentationGraph, PresentationError> {
    Ok(serde_json::from_str(json)?)
}

pub fn export_classification(c: &Classification, format: Format) -> Result<String, PresentationError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(c)? + "\n"),
        Format::Tsv => Ok(classification_tsv(&c.classes)),
        Format::Dot => Err(PresentationError::Unsupported(format)),
    }
}

pub fn import_classification(json: &str) -> Result<Classification, PresentationError> {
    Ok(serde_json::from_str(json)?)
}

/// One row per orbit.
pub fn classification_tsv(classes: &[TripletClass]) -> String {
    let mut out = String::from("Aminus\tA\tAplus\torbit_size\tfamilies\tlisted\n");
    for c in classes {
        let fams = if c.families.is_empty() {
            "-".to_string()
        } else {
            c.families.iter().map(|f| f.name()).collect::<Vec<_>>().join(",")
        };
        let r = &c.representative;
        let listed = if c.listed { "listed" } else { "-" };
        writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}", r.a_minus, r.a, r.a_plus, c.orbit.len(), fams, listed).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones() -> IntMatrix {
        IntMatrix::constant(2, 1)
    }

    #[test]
    fn condition_examples() {
        assert!(presentation_conditions(&Triplet::ones()));
        assert!(!presentation_conditions(&Triplet::new(ones(), IntMatrix::identity(2), ones())));
        assert!(presentation_conditions(&Triplet::m2([[1, 1], [1, 0]], [[1, 1], [1, 0]], [[0, 1], [1, 0]])));
    }

    #[test]
    fn full_d2_graph() {
        let g = build_presentation(&Triplet::ones(), LabelRule::Middle).unwrap();
        assert_eq!(g.vertices.len(), 14);
        assert_eq!(g.edges.len(), 48);
        assert!(g.is_essential());
        assert!(g.check_label_property(4).is_ok());
    }

    #[test]
    fn identity_aplus_drops_mixed_closer_pairs() {
        let g = build_presentation(&Triplet::new(ones(), ones(), IntMatrix::identity(2)), LabelRule::Middle).unwrap();
        let p = |n| SignedSymbol::plus(n, 1);
        assert!(!g.vertices.contains(&[p(0), p(1)]));
        assert!(!g.vertices.contains(&[p(1), p(0)]));
        assert!(g.vertices.contains(&[p(0), p(0)]));
    }

    #[test]
    fn closed_paths_count_periodic_points() {
        let t = Triplet::ones();
        let g = build_presentation(&t, LabelRule::Middle).unwrap();
        let census = crate::zeta::periodic_census(&t.to_spec(1).unwrap(), 6).unwrap();
        for n in 1..=6 {
            assert_eq!(g.periodic_path_count(n), census.total[n - 1], "n = {n}");
        }
    }

    #[test]
    fn three_case_labels_break_the_property() {
        let g = build_presentation(&Triplet::ones(), LabelRule::ThreeCase).unwrap();
        assert!(g.check_label_property(4).is_err());
    }

    #[test]
    fn symmetry_examples() {
        let t = Triplet::ones();
        assert_eq!(time_reverse(&t), t);
        assert_eq!(swap_indices(&t), t);
        let listed = Triplet::m2([[1, 1], [1, 0]], [[1, 1], [1, 0]], [[0, 1], [1, 0]]);
        assert_eq!(time_reverse(&listed), Triplet::m2([[0, 1], [1, 0]], [[1, 1], [1, 0]], [[1, 1], [1, 0]]));
        let t = Triplet::m2([[1, 0], [1, 1]], [[0, 1], [1, 1]], [[1, 1], [0, 1]]);
        assert_eq!(time_reverse(&time_reverse(&t)), t);
        assert_eq!(swap_indices(&swap_indices(&t)), t);
    }

    #[test]
    fn listed_examples_are_members() {
        let m = IntMatrix::m2;
        assert!(in_t(&Triplet::new(m([[1, 1], [0, 1]]), m([[0, 1], [1, 0]]), m([[1, 1], [0, 1]]))));
        assert!(in_t(&Triplet::new(ones(), m([[0, 1], [1, 0]]), m([[0, 1], [1, 0]]))));
        // not every pair works with every A
        assert!(!in_t(&Triplet::new(ones(), m([[1, 1], [1, 0]]), IntMatrix::identity(2))));
    }

    #[test]
    fn classification_is_consistent() {
        let c = enumerate_t_with(Some(12)).unwrap();
        assert!(c.slow_path_mismatches.is_empty());
        assert!(c.listed_failures().is_empty());
        assert_eq!(c.listed_pairings.iter().filter(|p| p.listed_with).count(), 9);
        let total: usize = c.classes.iter().map(|k| k.orbit.len()).sum();
        assert_eq!(total, c.members);
        for k in &c.classes {
            assert!(k.orbit.iter().all(in_t));
        }
        assert!(c.classes.iter().any(|k| k.listed));
    }

    #[test]
    fn exports() {
        let g = build_presentation(&Triplet::ones(), LabelRule::Middle).unwrap();
        let dot = export_graph(&g, Format::Dot).unwrap();
        assert_eq!(dot.matches("->").count(), 48);
        assert_eq!(dot.matches("[label=\"a").count() - 48, 14);
        let json = export_graph(&g, Format::Json).unwrap();
        assert_eq!(import_graph(&json).unwrap(), g);
        assert_eq!(classification_tsv(&[]), "Aminus\tA\tAplus\torbit_size\tfamilies\tlisted\n");
        assert!(matches!("xml".parse::<Format>(), Err(PresentationError::UnknownFormat(_))));
        assert!(matches!(import_graph("{\n  \"triplet\": 3"), Err(PresentationError::Json { line: 2, .. })));
    }
}
