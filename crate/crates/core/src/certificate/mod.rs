//! Replayable certificates for the computational claims about the Wajnryb
//! element `w` and the Calvez–Wiest element `κ` of `A(E6)`.
//!
//! Each pipeline returns a [`CertificateReport`] whose evidence (normal
//! forms, degrees, homology matrices) can be re-checked by [`replay`]
//! without rerunning the pipeline.

mod report;

use std::collections::BTreeSet;
use std::ops::RangeInclusive;
use std::time::Instant;

use thiserror::Error;

use crate::catalog::{self, CatalogError, Labeling, Symbol};
use crate::coxeter::{CoxeterGraph, GraphError, IndexOutOfRange};
use crate::exec::{self, Execution};
use crate::garside::{GarsideElement, GarsideGroup, GeneratorWord};
use crate::homology::{HomologyError, KernelWitness, Representation};
use crate::lang::{self, Convention, Environment, WordError, WordExpr};

pub use report::{aggregate, format_reports, parse_reports, CertificateReport, Check, Evidence, Format, Status};
use report::convention_tag;

/// Genus of the surface carrying the homology representation.
pub const GENUS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Index(#[from] IndexOutOfRange),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Settings {
    pub mode: Execution,
    /// Record wall-clock durations in reports.
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

/// Everything a pipeline needs: the labeled group, its homology
/// representation and the bindings that expressions are expanded in.
#[derive(Debug, Clone)]
pub struct Context {
    pub labeling: Labeling,
    pub convention: Convention,
    pub group: GarsideGroup,
    pub rep: Representation,
    pub env: Environment,
    pub settings: Settings,
}

impl Context {
    /// Resolves the labeling and builds the context on it.
    pub fn resolve(settings: Settings) -> Result<Self, CertificateError> {
        let r = catalog::resolve_labeling(settings.mode)?;
        Self::with_labeling(r.labeling, r.convention, settings)
    }

    pub fn with_labeling(labeling: Labeling, convention: Convention, settings: Settings) -> Result<Self, CertificateError> {
        let group = GarsideGroup::new(labeling.graph().clone());
        let rep = Representation::for_graph(labeling.graph(), GENUS)?;
        Ok(Context { labeling, convention, group, rep, env: catalog::environment(), settings })
    }

    /// Script bindings shadow catalog names of the same name.
    pub fn with_bindings(mut self, script: &Environment) -> Self {
        let mut env = script.clone();
        env.extend_missing(&self.env);
        self.env = env;
        self
    }

    pub fn expand(&self, expr: &WordExpr, convention: Convention) -> Result<GeneratorWord, CertificateError> {
        let word = lang::expand(expr, &self.env, convention)?;
        word.validate(self.group.rank())?;
        Ok(word)
    }

    fn base_params(&self, report: &mut CertificateReport) {
        report.param("labeling", self.labeling.name());
        report.param("rank", self.group.rank());
        report.param("edges", edge_list(self.labeling.graph()));
        report.param("convention", convention_tag(self.convention));
        report.param("genus", GENUS);
        let classes: Vec<String> = self.rep.classes().iter().map(ToString::to_string).collect();
        report.param("curve_classes", classes.join(" "));
    }

    fn nf_evidence(&self, label: impl Into<String>, word: &GeneratorWord, nf: &GarsideElement) -> Evidence {
        Evidence::NormalForm { label: label.into(), word: word.to_string(), normal_form: self.group.format(nf) }
    }

    fn timed(&self, start: Instant, report: &mut CertificateReport) {
        if self.settings.timings {
            report.duration_ms = Some(start.elapsed().as_millis() as u64);
        }
    }
}

fn edge_list(graph: &CoxeterGraph) -> String {
    graph.edges().map(|(i, j)| format!("{i}-{j}")).collect::<Vec<_>>().join(" ")
}

pub fn catalog_expr(symbol: Symbol) -> WordExpr {
    WordExpr::named(symbol.name())
}

fn matrix_evidence(label: impl Into<String>, word: &GeneratorWord, witness: &KernelWitness) -> Evidence {
    Evidence::Matrix { label: label.into(), word: word.to_string(), rows: witness.matrix.rows() }
}

/// `candidate ≠ 1` by normal form, `deg = 0`, and trivial homological
/// image, each under both conjugation conventions.
pub fn verify_wajnryb(ctx: &Context, candidate: &WordExpr) -> Result<CertificateReport, CertificateError> {
    let start = Instant::now();
    let mut r = CertificateReport::new("wajnryb");
    ctx.base_params(&mut r);
    r.param("element", candidate);
    for conv in Convention::BOTH {
        let tag = convention_tag(conv);
        let word = ctx.expand(candidate, conv)?;
        let nf = ctx.group.normalize(&word)?;
        let degree = ctx.group.degree(&nf);
        let witness = ctx.rep.kernel_witness(&word)?;
        let ok1 = r.check(format!("(1) {candidate} is nontrivial [{tag}]"), !nf.is_identity());
        let ok2 = r.check(format!("(2) deg({candidate}) = 0 [{tag}]"), degree == 0);
        let ok3 = r.check(format!("(3) {candidate} has trivial homological image [{tag}]"), witness.trivial);
        let label = format!("{candidate} [{tag}]");
        r.evidence.push(ctx.nf_evidence(label.clone(), &word, &nf));
        r.evidence.push(Evidence::Degree { label: label.clone(), word: word.to_string(), degree });
        r.evidence.push(matrix_evidence(label.clone(), &word, &witness));
        if !(ok1 && ok2 && ok3) {
            let reason = [(ok1, "trivial"), (ok2, "nonzero degree"), (ok3, "nontrivial homological image")]
                .iter()
                .filter(|(ok, _)| !ok)
                .map(|(_, why)| *why)
                .collect::<Vec<_>>()
                .join(", ");
            r.evidence.push(Evidence::Counterexample { label, word: word.to_string(), reason });
        }
    }
    r.notes.push(KernelWitness::CAVEAT.to_string());
    r.settle();
    ctx.timed(start, &mut r);
    Ok(r)
}

/// Conjugating the standard parabolic on `subgroup` (1-based labels) by
/// `swapper`, `centralizer` and their inverses stays inside it; `swapper`
/// permutes the generators; `centralizer` commutes with each of them.
pub fn verify_normalizer(
    ctx: &Context,
    swapper: &WordExpr,
    centralizer: &WordExpr,
    subgroup: &[usize],
) -> Result<CertificateReport, CertificateError> {
    let start = Instant::now();
    let mut r = CertificateReport::new("normalizer");
    ctx.base_params(&mut r);
    if subgroup.is_empty() || subgroup.iter().any(|&i| i == 0) {
        return Err(CertificateError::InvalidParameter("subgroup labels must be nonempty and 1-based".into()));
    }
    let subset: BTreeSet<usize> = subgroup.iter().map(|i| i - 1).collect();
    let gens_text: Vec<String> = subgroup.iter().map(|i| format!("a{i}")).collect();
    let span = format!("<{}>", gens_text.join(","));
    r.param("swapper", swapper);
    r.param("centralizer", centralizer);
    r.param("subgroup", &span);

    let conv = ctx.convention;
    let gens: Vec<(String, GarsideElement)> =
        subgroup.iter().map(|&i| Ok((format!("a{i}"), ctx.group.generator(i - 1)?))).collect::<Result<_, IndexOutOfRange>>()?;
    for g in [swapper, centralizer] {
        for sign in [1i64, -1] {
            let by_expr = if sign == 1 { g.clone() } else { WordExpr::power(g.clone(), -1) };
            for (x_name, _) in &gens {
                let expr = WordExpr::conjugate(lang::parse(x_name)?, by_expr.clone());
                let word = ctx.expand(&expr, conv)?;
                let nf = ctx.group.normalize(&word)?;
                let inside = ctx.group.in_standard_parabolic(&nf, &subset)?;
                r.check(format!("{expr} lies in {span}"), inside);
                r.evidence.push(ctx.nf_evidence(expr.to_string(), &word, &nf));
                if !inside {
                    r.evidence.push(Evidence::Counterexample {
                        label: expr.to_string(),
                        word: word.to_string(),
                        reason: format!("not in {span}"),
                    });
                }
            }
        }
    }

    let originals: BTreeSet<String> = gens.iter().map(|(_, g)| ctx.group.format(g)).collect();
    let mut images = BTreeSet::new();
    for (x_name, _) in &gens {
        let expr = WordExpr::conjugate(lang::parse(x_name)?, swapper.clone());
        images.insert(ctx.group.format(&ctx.group.normalize(&ctx.expand(&expr, conv)?)?));
    }
    let swap_ok = r.check(format!("conjugation by {swapper} permutes the generators of {span}"), images == originals);
    if !swap_ok {
        r.notes.push(format!("images under {swapper}: {}", images.into_iter().collect::<Vec<_>>().join(", ")));
    }

    for (x_name, _) in &gens {
        let x = lang::parse(x_name)?;
        let commutator = WordExpr::product(vec![
            centralizer.clone(),
            x.clone(),
            WordExpr::power(centralizer.clone(), -1),
            WordExpr::power(x, -1),
        ]);
        let word = ctx.expand(&commutator, conv)?;
        let nf = ctx.group.normalize(&word)?;
        let ok = r.check(format!("{centralizer} commutes with {x_name}"), nf.is_identity());
        r.evidence.push(ctx.nf_evidence(commutator.to_string(), &word, &nf));
        if !ok {
            r.evidence.push(Evidence::Counterexample {
                label: commutator.to_string(),
                word: word.to_string(),
                reason: "commutator is nontrivial".into(),
            });
        }
    }
    r.settle();
    ctx.timed(start, &mut r);
    Ok(r)
}

/// For `m = 1..=max_power`, `x^m` is neither trivial nor central.
pub fn verify_torsion(ctx: &Context, max_power: i64, element: &WordExpr) -> Result<CertificateReport, CertificateError> {
    if max_power < 1 {
        return Err(CertificateError::InvalidParameter("max power must be at least 1".into()));
    }
    let start = Instant::now();
    let mut r = CertificateReport::new("torsion");
    ctx.base_params(&mut r);
    r.param("element", element);
    r.param("max_power", max_power);
    let word = ctx.expand(element, ctx.convention)?;
    let x = ctx.group.normalize(&word)?;
    let powers: Vec<i64> = (1..=max_power).collect();
    let results = exec::map(ctx.settings.mode, &powers, |&m| ctx.group.power(&x, m));
    for (m, xm) in powers.iter().zip(&results) {
        let nontrivial = !xm.is_identity();
        let non_central = !ctx.group.is_central(xm);
        let ok = r.check(format!("{element}^{m} is nontrivial and non-central"), nontrivial && non_central);
        if !ok {
            let label = format!("{element}^{m}");
            let reason = if nontrivial { "central" } else { "trivial" };
            r.evidence.push(ctx.nf_evidence(label.clone(), &word.pow(*m), xm));
            r.evidence.push(Evidence::Counterexample { label, word: word.pow(*m).to_string(), reason: reason.into() });
        }
    }
    r.evidence.push(ctx.nf_evidence(element.to_string(), &word, &x));
    let degree = ctx.group.degree(&x);
    r.evidence.push(Evidence::Degree { label: element.to_string(), word: word.to_string(), degree });
    let delta = ctx.group.delta_word();
    r.evidence.push(Evidence::Degree {
        label: "delta".into(),
        word: delta.to_string(),
        degree: ctx.group.degree(&ctx.group.delta_power(1)),
    });
    r.notes.push(format!(
        "deg({element}) = {degree} while deg(delta^k) = {}k, so no power {element}^m with m != 0 equals delta^k for k != 0",
        ctx.group.delta_degree()
    ));
    r.notes.push(format!("center generated by delta^{}", ctx.group.center_exponent()));
    r.settle();
    ctx.timed(start, &mut r);
    Ok(r)
}

const LETTERS: [&str; 4] = ["w", "w^-1", "c", "c^-1"];

fn letter_inverse(l: u8) -> u8 {
    l ^ 1
}

fn letters_text(word: &[u8]) -> String {
    word.iter().map(|&l| LETTERS[l as usize]).collect::<Vec<_>>().join(" * ")
}

/// Outcome of the enumeration for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub n: i64,
    pub words: usize,
    pub nontrivial_mod_center: usize,
    pub nontrivial: usize,
    /// First word (in depth-first, smallest-letter-first order) that is central.
    pub first_failure: Option<Vec<u8>>,
}

impl ScanResult {
    pub fn passes(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Evaluates every freely reduced word of length `1..=max_len` in the
/// letters `[x, x⁻¹, y, y⁻¹]`, level by level so each product extends a
/// cached prefix. Results come back in depth-first order.
pub fn enumerate_words(
    group: &GarsideGroup,
    mode: Execution,
    x: &GarsideElement,
    y: &GarsideElement,
    max_len: usize,
) -> Vec<(Vec<u8>, GarsideElement)> {
    let gens = [x.clone(), group.inverse(x), y.clone(), group.inverse(y)];
    let mut level: Vec<(Vec<u8>, GarsideElement)> = vec![(Vec::new(), GarsideElement::identity())];
    let mut all = Vec::new();
    for _ in 0..max_len {
        let pairs: Vec<(usize, u8)> = level
            .iter()
            .enumerate()
            .flat_map(|(i, (w, _))| {
                let last = w.last().copied();
                (0..4u8).filter(move |&l| last.map_or(true, |p| letter_inverse(p) != l)).map(move |l| (i, l))
            })
            .collect();
        let products = exec::map(mode, &pairs, |&(i, l)| group.multiply(&level[i].1, &gens[l as usize]));
        level = pairs
            .into_iter()
            .zip(products)
            .map(|((i, l), p)| {
                let mut w = level[i].0.clone();
                w.push(l);
                (w, p)
            })
            .collect();
        all.extend(level.iter().cloned());
    }
    all.sort_by(|a, b| a.0.cmp(&b.0));
    all
}

pub fn scan(group: &GarsideGroup, mode: Execution, n: i64, x: &GarsideElement, y: &GarsideElement, max_len: usize) -> ScanResult {
    let words = enumerate_words(group, mode, x, y, max_len);
    let central: Vec<bool> = exec::map(mode, &words, |(_, e)| group.is_central(e));
    ScanResult {
        n,
        words: words.len(),
        nontrivial_mod_center: central.iter().filter(|c| !**c).count(),
        nontrivial: words.iter().filter(|(_, e)| !e.is_identity()).count(),
        first_failure: words.iter().zip(&central).find(|(_, c)| **c).map(|((w, _), _)| w.clone()),
    }
}

/// For each `n` in the range, with `c = κ⁻ⁿ w κⁿ`: both generators have
/// trivial homological image, and every freely reduced word of length at
/// most `max_len` in `w^±1, c^±1` is nontrivial modulo the center.
pub fn freeness_certificate(
    ctx: &Context,
    n_range: RangeInclusive<i64>,
    max_len: usize,
) -> Result<CertificateReport, CertificateError> {
    freeness_with(ctx, &catalog_expr(Symbol::W), &catalog_expr(Symbol::Kappa), n_range, max_len)
}

pub fn freeness_with(
    ctx: &Context,
    element: &WordExpr,
    conjugator: &WordExpr,
    n_range: RangeInclusive<i64>,
    max_len: usize,
) -> Result<CertificateReport, CertificateError> {
    if n_range.is_empty() || *n_range.start() < 1 || max_len < 1 {
        return Err(CertificateError::InvalidParameter("n range and word length must be at least 1".into()));
    }
    let start = Instant::now();
    let mut r = CertificateReport::new("free");
    ctx.base_params(&mut r);
    r.param("element", element);
    r.param("conjugator", conjugator);
    r.param("n_range", format!("{}..{}", n_range.start(), n_range.end()));
    r.param("max_word_len", max_len);
    let conv = ctx.convention;

    let w_word = ctx.expand(element, conv)?;
    let w = ctx.group.normalize(&w_word)?;
    let w_witness = ctx.rep.kernel_witness(&w_word)?;
    r.check(format!("{element} has trivial homological image"), w_witness.trivial);
    r.evidence.push(matrix_evidence(element.to_string(), &w_word, &w_witness));

    let mut certified = None;
    for n in n_range {
        let c_expr = WordExpr::conjugate(element.clone(), WordExpr::power(conjugator.clone(), n));
        let c_word = ctx.expand(&c_expr, conv)?;
        let c = ctx.group.normalize(&c_word)?;
        let c_witness = ctx.rep.kernel_witness(&c_word)?;
        r.check(format!("{c_expr} has trivial homological image"), c_witness.trivial);
        let result = scan(&ctx.group, ctx.settings.mode, n, &w, &c, max_len);
        r.evidence.push(Evidence::Scan {
            n,
            words: result.words,
            nontrivial_mod_center: result.nontrivial_mod_center,
            nontrivial: result.nontrivial,
            first_failure: result.first_failure.as_deref().map(letters_text),
        });
        if result.passes() && certified.is_none() {
            certified = Some(n);
            r.evidence.push(matrix_evidence(c_expr.to_string(), &c_word, &c_witness));
            let w_cinv = ctx.group.multiply(&w, &ctx.group.inverse(&c));
            r.evidence.push(ctx.nf_evidence(format!("w * c^-1 (n={n})"), &w_word.concat(&c_word.inverse()), &w_cinv));
            let comm_word = w_word.inverse().concat(&c_word.inverse()).concat(&w_word).concat(&c_word);
            let comm = ctx.group.normalize(&comm_word)?;
            r.evidence.push(ctx.nf_evidence(format!("w^-1 * c^-1 * w * c (n={n})"), &comm_word, &comm));
        } else if let Some(fail) = &result.first_failure {
            let word: GeneratorWord = fail
                .iter()
                .map(|&l| match l {
                    0 => w_word.clone(),
                    1 => w_word.inverse(),
                    2 => c_word.clone(),
                    _ => c_word.inverse(),
                })
                .fold(GeneratorWord::empty(), |acc, x| acc.concat(&x));
            r.evidence.push(Evidence::Counterexample {
                label: format!("{} (n={n})", letters_text(fail)),
                word: word.to_string(),
                reason: "central".into(),
            });
        }
    }
    let homology_ok = r.all_passed();
    r.check("some n passes the enumeration", certified.is_some());
    r.status = match (homology_ok, certified) {
        (false, _) => Status::Refuted,
        (true, Some(_)) => Status::Verified,
        (true, None) => Status::ExhaustedWithoutDecision,
    };
    if let Some(n) = certified {
        r.param("certified_n", n);
    }
    r.notes.push("c = kappa^-n * w * kappa^n; words are checked modulo the center, the scan line also counts words nontrivial in the group itself".into());
    r.notes.push("a passing enumeration is consistent with freeness of <w, c>, not a proof of it".into());
    r.notes.push(KernelWitness::CAVEAT.to_string());
    ctx.timed(start, &mut r);
    Ok(r)
}

/// Default pipelines for a profile, in a fixed order.
pub fn run_all(ctx: &Context, profile: Profile) -> Result<Vec<CertificateReport>, CertificateError> {
    let (max_power, n_range, max_len) = match profile {
        Profile::Quick => (3, 1..=2, 2),
        Profile::Full => (6, 1..=8, 4),
    };
    let w = catalog_expr(Symbol::W);
    Ok(vec![
        verify_wajnryb(ctx, &w)?,
        verify_normalizer(ctx, &catalog_expr(Symbol::B), &WordExpr::Generator(1), &[2, 5])?,
        verify_torsion(ctx, max_power, &w)?,
        freeness_certificate(ctx, n_range, max_len)?,
    ])
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("report parameter `{0}` is missing or malformed")]
    Parameter(String),
    #[error("evidence `{label}` does not replay: expected {expected}, found {found}")]
    Mismatch { label: String, expected: String, found: String },
    #[error(transparent)]
    Certificate(#[from] CertificateError),
}

/// Rebuilds the group and representation from a report's parameters and
/// re-checks every normal-form, degree and matrix evidence entry. Returns
/// the number of entries checked.
pub fn replay(report: &CertificateReport) -> Result<usize, ReplayError> {
    let param = |k: &str| report.params.get(k).ok_or_else(|| ReplayError::Parameter(k.into()));
    let rank: usize = param("rank")?.parse().map_err(|_| ReplayError::Parameter("rank".into()))?;
    let genus: usize = param("genus")?.parse().map_err(|_| ReplayError::Parameter("genus".into()))?;
    let edges: Vec<(usize, usize)> = param("edges")?
        .split_whitespace()
        .map(|e| {
            let (i, j) = e.split_once('-')?;
            Some((i.parse().ok()?, j.parse().ok()?))
        })
        .collect::<Option<_>>()
        .ok_or_else(|| ReplayError::Parameter("edges".into()))?;
    let graph = CoxeterGraph::new(rank, &edges).map_err(CertificateError::from)?;
    let group = GarsideGroup::new(graph.clone());
    let rep = Representation::for_graph(&graph, genus).map_err(CertificateError::from)?;
    let classes: Vec<String> = rep.classes().iter().map(ToString::to_string).collect();
    if *param("curve_classes")? != classes.join(" ") {
        return Err(ReplayError::Parameter("curve_classes".into()));
    }
    let empty = Environment::new();
    let parse_word = |w: &str| -> Result<GeneratorWord, ReplayError> {
        Ok(lang::expand_str(w, &empty, Convention::RightAction).map_err(CertificateError::from)?)
    };
    let mut checked = 0;
    for e in &report.evidence {
        let (label, expected, found) = match e {
            Evidence::NormalForm { label, word, normal_form } => {
                let nf = group.normalize(&parse_word(word)?).map_err(CertificateError::from)?;
                (label, normal_form.clone(), group.format(&nf))
            }
            Evidence::Degree { label, word, degree } => {
                let nf = group.normalize(&parse_word(word)?).map_err(CertificateError::from)?;
                (label, degree.to_string(), group.degree(&nf).to_string())
            }
            Evidence::Matrix { label, word, rows } => {
                let m = rep.evaluate(&parse_word(word)?).map_err(CertificateError::from)?;
                (label, format!("{rows:?}"), format!("{:?}", m.rows()))
            }
            Evidence::Scan { .. } | Evidence::Counterexample { .. } => continue,
        };
        if expected != found {
            return Err(ReplayError::Mismatch { label: label.clone(), expected, found });
        }
        checked += 1;
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::with_labeling(Labeling::resolved(), Convention::RightAction, Settings::default()).unwrap()
    }

    #[test]
    fn wajnryb_default_and_replacements() {
        let c = ctx();
        let r = verify_wajnryb(&c, &catalog_expr(Symbol::W)).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", format_reports(std::slice::from_ref(&r), Format::Text));
        assert_eq!(r.checks.len(), 6);
        assert!(replay(&r).unwrap() >= 6);

        let r = verify_wajnryb(&c, &WordExpr::Generator(1)).unwrap();
        assert_eq!(r.status, Status::Refuted);
        assert!(r.checks.iter().any(|ch| ch.name.starts_with("(3)") && !ch.passed));
        assert!(r.evidence.iter().any(|e| matches!(e, Evidence::Counterexample { word, .. } if word == "a1")));

        let r = verify_wajnryb(&c, &WordExpr::Identity).unwrap();
        assert_eq!(r.status, Status::Refuted);
        assert!(!r.first_failure().unwrap().passed);
        assert!(r.first_failure().unwrap().name.starts_with("(1)"));
    }

    #[test]
    fn normalizer_default_and_replacements() {
        let c = ctx();
        let b = catalog_expr(Symbol::B);
        let a1 = WordExpr::Generator(1);
        let r = verify_normalizer(&c, &b, &a1, &[2, 5]).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert!(replay(&r).unwrap() > 0);
        let r = verify_normalizer(&c, &WordExpr::Generator(3), &a1, &[2, 5]).unwrap();
        assert_eq!(r.status, Status::Refuted);
        assert!(r.checks.iter().any(|ch| ch.name == "a2^a3 lies in <a2,a5>" && !ch.passed));
        let r = verify_normalizer(&c, &b, &a1, &[2]).unwrap();
        assert_eq!(r.status, Status::Refuted);
        assert!(verify_normalizer(&c, &b, &a1, &[]).is_err());
    }

    #[test]
    fn torsion_checks() {
        let c = ctx();
        let r = verify_torsion(&c, 3, &catalog_expr(Symbol::W)).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert!(r.evidence.iter().any(|e| matches!(e, Evidence::Degree { label, degree: 36, .. } if label == "delta")));
        let d2 = WordExpr::power(catalog_expr(Symbol::Delta), 2);
        let r = verify_torsion(&c, 2, &d2).unwrap();
        assert_eq!(r.status, Status::Refuted);
        assert!(!r.checks[0].passed);
        assert!(verify_torsion(&c, 0, &d2).is_err());
    }

    #[test]
    fn freeness_quick() {
        let c = ctx();
        let r = freeness_certificate(&c, 1..=2, 2).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", format_reports(std::slice::from_ref(&r), Format::Text));
        assert_eq!(r.params["certified_n"], "1");
        assert!(replay(&r).unwrap() >= 3);
    }

    #[test]
    fn enumeration_order_and_count() {
        let g = GarsideGroup::new(CoxeterGraph::named("A2").unwrap());
        let x = g.generator(0).unwrap();
        let y = g.generator(1).unwrap();
        let words = enumerate_words(&g, Execution::Sequential, &x, &y, 3);
        assert_eq!(words.len(), 4 + 12 + 36);
        assert_eq!(words[0].0, vec![0]);
        assert_eq!(words[1].0, vec![0, 0]);
        assert_eq!(words[2].0, vec![0, 0, 0]);
        assert!(words.iter().all(|(w, _)| w.windows(2).all(|p| p[0] ^ 1 != p[1])));
        let par = enumerate_words(&g, Execution::Parallel, &x, &y, 3);
        assert_eq!(words, par);
        // In A2, a1 a2 a1 = a2 a1 a2 is not central but (a1 a2)^3 is.
        let s = scan(&g, Execution::Sequential, 1, &g.multiply(&x, &y), &x, 3);
        assert_eq!(s.first_failure, Some(vec![0, 0, 0]));
    }

    #[test]
    fn reports_round_trip_through_json() {
        let c = ctx();
        let reports = run_all(&c, Profile::Quick).unwrap();
        assert_eq!(aggregate(&reports), Status::Verified);
        let json = format_reports(&reports, Format::Json);
        assert_eq!(parse_reports(&json).unwrap(), reports);
        assert_eq!(format_reports(&[], Format::Json), "[]\n");
        let again = run_all(&c, Profile::Quick).unwrap();
        assert_eq!(format_reports(&again, Format::Json), json);
    }

    #[test]
    fn tampered_evidence_fails_replay() {
        let c = ctx();
        let mut r = verify_wajnryb(&c, &catalog_expr(Symbol::W)).unwrap();
        if let Some(Evidence::NormalForm { normal_form, .. }) = r.evidence.first_mut() {
            normal_form.push_str(" | a1");
        }
        assert!(matches!(replay(&r), Err(ReplayError::Mismatch { .. })));
    }
}
