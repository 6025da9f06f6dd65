//! Named elements of `A(E6)` and the vertex labeling they are written in.
//!
//! The words for `b`, `w`, `κ` and `Δ` are fixed letter sequences; what they
//! mean depends on how the six generators sit on the E6 diagram. Rather than
//! guess, [`resolve_labeling`] tries an ordered list of candidate labelings
//! and keeps the first one under which the expected identities hold:
//!
//! 1. conjugation by `b` swaps `a2` and `a5`;
//! 2. `a1` commutes with `a2` and `a5`;
//! 3. `b` is supported on `{a2,…,a6}`, which spans an A5 subdiagram.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{CoxeterGraph, GraphError};
use crate::exec::{self, Execution};
use crate::garside::{GarsideGroup, GeneratorWord};
use crate::lang::{self, Convention, Environment};

/// Bindings for every catalog element, in word-language syntax.
pub const CATALOG_SCRIPT: &str = "\
let b = a4*a5*a3*a4*a2*a6*a5*a3*a4;
let w = a1 * a1^b * a1 * (a1^-1)^b * a1^-1 * (a1^-1)^b;
let kappa = a4*a1*a3*a2*a4*a5*a4*a1*a3*a2*a6*a5*a5*a6*a2*a3*a1*a4*a5*a4*a2*a3*a1*a4;
let delta = (a1*a3*a5*a2*a4*a6)^6;
";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("labeling `{name}` is of type {found}, not E6")]
    NotE6 { name: String, found: String },
    #[error("no candidate labeling satisfies every check:\n{}", format_matrix(.0))]
    NoCompliantLabeling(Vec<Compliance>),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An E6 diagram with a fixed assignment of labels `1..=6` to vertices.
#[derive(Debug, Clone)]
pub struct Labeling {
    name: String,
    graph: CoxeterGraph,
}

impl Labeling {
    pub fn new(name: &str, edges: &[(usize, usize)]) -> Result<Self, CatalogError> {
        let graph = CoxeterGraph::new(6, edges)?;
        if graph.type_name() != "E6" {
            return Err(CatalogError::NotE6 { name: name.to_string(), found: graph.type_name() });
        }
        Ok(Labeling { name: name.to_string(), graph })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    /// The labeling the catalog words are written in: chain `2–3–4–5–6`
    /// with `1` attached to `4`.
    pub fn resolved() -> Labeling {
        Labeling::new("linear-6-on-3-mirrored", &[(2, 3), (3, 4), (4, 5), (5, 6), (1, 4)]).expect("E6")
    }
}

/// A candidate labeling given by edges, not yet checked to be E6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub name: String,
    pub edges: Vec<(usize, usize)>,
}

/// Candidates in resolution order: three diagram conventions, then each
/// relabelled by `i ↦ 7 − i`.
pub fn candidates() -> Vec<Candidate> {
    let base: [(&str, Vec<(usize, usize)>); 3] = [
        ("bourbaki", vec![(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]),
        ("linear-6-on-3", vec![(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)]),
        ("linear-6-on-4", vec![(1, 2), (2, 3), (3, 4), (4, 5), (4, 6)]),
    ];
    let mirrored: Vec<Candidate> = base
        .iter()
        .map(|(name, edges)| Candidate {
            name: format!("{name}-mirrored"),
            edges: edges.iter().map(|&(i, j)| (7 - i, 7 - j)).collect(),
        })
        .collect();
    base.into_iter().map(|(name, edges)| Candidate { name: name.to_string(), edges }).chain(mirrored).collect()
}

/// Outcome of every check for one candidate. `None` means not applicable
/// because the candidate is not an E6 diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Compliance {
    pub candidate: String,
    pub diagram_type: String,
    pub swap_right: Option<bool>,
    pub swap_left: Option<bool>,
    pub commutes: Option<bool>,
    pub support: Option<bool>,
}

impl Compliance {
    pub fn swap(&self) -> Option<bool> {
        Some(self.swap_right? || self.swap_left?)
    }

    pub fn passes(&self) -> bool {
        self.swap() == Some(true) && self.commutes == Some(true) && self.support == Some(true)
    }

    /// First convention under which the swap holds.
    pub fn convention(&self) -> Option<Convention> {
        match (self.swap_right, self.swap_left) {
            (Some(true), _) => Some(Convention::RightAction),
            (_, Some(true)) => Some(Convention::LeftAction),
            _ => None,
        }
    }
}

fn mark(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "pass",
        Some(false) => "FAIL",
        None => "n/a",
    }
}

/// One row per candidate.
pub fn format_matrix(rows: &[Compliance]) -> String {
    let mut out = format!("{:<24} {:<6} {:<11} {:<11} {:<8} {}\n", "candidate", "type", "swap-right", "swap-left", "commute", "support");
    for r in rows {
        out.push_str(&format!(
            "{:<24} {:<6} {:<11} {:<11} {:<8} {}\n",
            r.candidate,
            r.diagram_type,
            mark(r.swap_right),
            mark(r.swap_left),
            mark(r.commutes),
            mark(r.support)
        ));
    }
    out
}

/// Runs the three checks against one labeling.
pub fn check_labeling(labeling: &Labeling) -> Compliance {
    let group = GarsideGroup::new(labeling.graph.clone());
    let b = group.normalize(&b_word()).expect("rank 6");
    let gen = |i: usize| group.generator(i - 1).expect("rank 6");
    let (a1, a2, a5) = (gen(1), gen(2), gen(5));
    let expected: BTreeSet<String> = [group.format(&a2), group.format(&a5)].into();
    let swap = |conv: Convention| {
        let by = match conv {
            Convention::RightAction => b.clone(),
            Convention::LeftAction => group.inverse(&b),
        };
        let got: BTreeSet<String> = [&a2, &a5].iter().map(|x| group.format(&group.conjugate(x, &by))).collect();
        got == expected
    };
    let commutes = |x| group.multiply(&a1, x) == group.multiply(x, &a1);
    let support: BTreeSet<usize> = b.factors.iter().flat_map(|s| group.roots().support(s)).collect();
    let span: Vec<(usize, usize)> =
        labeling.graph.edges().filter(|&(i, j)| i != 1 && j != 1).map(|(i, j)| (i - 1, j - 1)).collect();
    let is_a5 = CoxeterGraph::new(5, &span).map(|g| g.type_name() == "A5").unwrap_or(false);
    Compliance {
        candidate: labeling.name.clone(),
        diagram_type: "E6".into(),
        swap_right: Some(swap(Convention::RightAction)),
        swap_left: Some(swap(Convention::LeftAction)),
        commutes: Some(commutes(&a2) && commutes(&a5)),
        support: Some(support == (1..6).collect::<BTreeSet<_>>() && is_a5),
    }
}

fn check_candidate(c: &Candidate) -> Compliance {
    match Labeling::new(&c.name, &c.edges) {
        Ok(l) => check_labeling(&l),
        Err(_) => Compliance {
            candidate: c.name.clone(),
            diagram_type: CoxeterGraph::new(6, &c.edges).map(|g| g.type_name()).unwrap_or_else(|_| "?".into()),
            swap_right: None,
            swap_left: None,
            commutes: None,
            support: None,
        },
    }
}

/// The chosen labeling, the conjugation convention the swap was first
/// observed under, and the full compliance matrix.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub labeling: Labeling,
    pub convention: Convention,
    pub matrix: Vec<Compliance>,
}

pub fn resolve_labeling(mode: Execution) -> Result<Resolution, CatalogError> {
    resolve_among(&candidates(), mode)
}

/// Picks the first passing candidate in list order; the checks themselves
/// may run concurrently.
pub fn resolve_among(list: &[Candidate], mode: Execution) -> Result<Resolution, CatalogError> {
    let matrix = exec::map(mode, list, check_candidate);
    match matrix.iter().position(Compliance::passes) {
        Some(i) => Ok(Resolution {
            labeling: Labeling::new(&list[i].name, &list[i].edges)?,
            convention: matrix[i].convention().expect("passing row has a convention"),
            matrix,
        }),
        None => Err(CatalogError::NoCompliantLabeling(matrix)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symbol {
    B,
    W,
    Kappa,
    Delta,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::B, Symbol::W, Symbol::Kappa, Symbol::Delta];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::B => "b",
            Symbol::W => "w",
            Symbol::Kappa => "kappa",
            Symbol::Delta => "delta",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct NamedElement {
    pub symbol: Symbol,
    pub word: GeneratorWord,
    pub labeling: Labeling,
}

/// The catalog bindings as an [`Environment`].
pub fn environment() -> Environment {
    lang::load_script(CATALOG_SCRIPT).expect("catalog script is well formed")
}

fn catalog_word(symbol: Symbol, convention: Convention) -> GeneratorWord {
    lang::expand_str(symbol.name(), &environment(), convention).expect("catalog names are bound")
}

fn b_word() -> GeneratorWord {
    catalog_word(Symbol::B, Convention::RightAction)
}

pub fn make_b(labeling: &Labeling) -> NamedElement {
    NamedElement { symbol: Symbol::B, word: b_word(), labeling: labeling.clone() }
}

pub fn make_w(labeling: &Labeling, convention: Convention) -> NamedElement {
    NamedElement { symbol: Symbol::W, word: catalog_word(Symbol::W, convention), labeling: labeling.clone() }
}

pub fn make_kappa(labeling: &Labeling) -> NamedElement {
    NamedElement { symbol: Symbol::Kappa, word: catalog_word(Symbol::Kappa, Convention::RightAction), labeling: labeling.clone() }
}

pub fn make_delta(labeling: &Labeling) -> NamedElement {
    NamedElement { symbol: Symbol::Delta, word: catalog_word(Symbol::Delta, Convention::RightAction), labeling: labeling.clone() }
}

/// Text for `catalog dump`: a header naming the labeling, then the script.
pub fn dump(resolution: &Resolution) -> String {
    let edges: Vec<String> = resolution.labeling.graph.edges().map(|(i, j)| format!("{i}-{j}")).collect();
    format!(
        "# labeling: {} (edges {})\n# convention: {}\n{}",
        resolution.labeling.name,
        edges.join(" "),
        resolution.convention.describe(),
        CATALOG_SCRIPT
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolved() -> Resolution {
        resolve_labeling(Execution::Sequential).unwrap()
    }

    #[test]
    fn resolution_picks_the_mirrored_linear_labeling() {
        let r = resolved();
        assert_eq!(r.labeling.name(), "linear-6-on-3-mirrored");
        assert_eq!(r.convention, Convention::RightAction);
        assert_eq!(r.matrix.len(), 6);
        assert_eq!(r.matrix.iter().filter(|c| c.passes()).count(), 1);
        let expected: Vec<_> = Labeling::resolved().graph().edges().collect();
        assert_eq!(r.labeling.graph().edges().collect::<Vec<_>>(), expected);
        let par = resolve_labeling(Execution::Parallel).unwrap();
        assert_eq!(par.matrix, r.matrix);
    }

    #[test]
    fn linear_6_on_4_is_not_e6() {
        let r = resolved();
        for row in r.matrix.iter().filter(|c| c.candidate.starts_with("linear-6-on-4")) {
            assert_eq!(row.diagram_type, "D6");
            assert_eq!(row.swap(), None);
            assert!(!row.passes());
        }
    }

    #[test]
    fn branch_vertex_one_fails_commutation() {
        let l = Labeling::new("one-is-branch", &[(1, 2), (2, 3), (1, 4), (4, 6), (1, 5)]).unwrap();
        let c = check_labeling(&l);
        assert_eq!(c.commutes, Some(false));
        assert!(!c.passes());
    }

    #[test]
    fn exhausted_candidates_report_every_row() {
        let list: Vec<Candidate> = candidates().into_iter().take(3).collect();
        match resolve_among(&list, Execution::Sequential) {
            Err(CatalogError::NoCompliantLabeling(rows)) => {
                assert_eq!(rows.len(), 3);
                let text = format_matrix(&rows);
                assert!(text.contains("bourbaki") && text.contains("FAIL"));
            }
            other => panic!("expected NoCompliantLabeling, got {other:?}"),
        }
    }

    #[test]
    fn named_element_basics() {
        let l = Labeling::resolved();
        let g = GarsideGroup::new(l.graph().clone());
        let b = make_b(&l);
        assert_eq!(b.word.degree(), 9);
        let bn = g.normalize(&b.word).unwrap();
        assert!(!bn.is_identity());
        assert!(g.in_standard_parabolic(&bn, &(1..6).collect()).unwrap());

        for conv in Convention::BOTH {
            let w = make_w(&l, conv);
            assert_eq!(w.word.len(), 60);
            assert_eq!(w.word.degree(), 0);
            assert!(!g.is_trivial(&w.word).unwrap());
        }

        let k = make_kappa(&l);
        assert_eq!(k.word.len(), 24);
        assert_eq!(k.word.degree(), 24);
        let kn = g.normalize(&k.word).unwrap();
        assert!(kn.canonical_length() >= 1);

        let d = make_delta(&l);
        assert_eq!(g.normalize(&d.word).unwrap(), g.delta_power(1));
    }

    #[test]
    fn swap_and_commutation_identities() {
        let l = Labeling::resolved();
        let g = GarsideGroup::new(l.graph().clone());
        let b = b_word();
        let a = |i: i64| GeneratorWord::from_signed(&[i]);
        let swapped = a(2).conjugate_by(&b).concat(&a(-5));
        assert!(g.is_trivial(&swapped).unwrap());
        let swapped = a(5).conjugate_by(&b).concat(&a(-2));
        assert!(g.is_trivial(&swapped).unwrap());
        for j in [2, 5] {
            assert!(g.is_trivial(&GeneratorWord::from_signed(&[1, j, -1, -j])).unwrap());
        }
    }

    #[test]
    fn w_is_independent_of_association() {
        let l = Labeling::resolved();
        let g = GarsideGroup::new(l.graph().clone());
        let env = environment();
        let w = g.normalize(&make_w(&l, Convention::RightAction).word).unwrap();
        for text in ["(a1 * a1^b) * (a1 * (a1^-1)^b) * (a1^-1 * (a1^-1)^b)", "a1 * (a1^b * (a1 * ((a1^-1)^b * (a1^-1 * (a1^-1)^b))))"] {
            let other = lang::expand_str(text, &env, Convention::RightAction).unwrap();
            assert_eq!(g.normalize(&other).unwrap(), w);
        }
    }

    #[test]
    fn dump_mentions_labeling_and_all_symbols() {
        let text = dump(&resolved());
        assert!(text.starts_with("# labeling: linear-6-on-3-mirrored"));
        for s in Symbol::ALL {
            assert!(text.contains(&format!("let {s} = ")));
        }
        let env = lang::load_script(&text).unwrap();
        assert_eq!(env.len(), 4);
    }
}
