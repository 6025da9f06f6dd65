//! Left normal forms `Δ^k s₁…s_n` in spherical Artin groups.
//!
//! Simple elements are represented by their images in the Coxeter group.
//! A word is normalized letter by letter: `a_i` multiplies by the simple
//! element `s_i`, and `a_i⁻¹ = ∂(s_i)·Δ⁻¹` multiplies by the complement and
//! then shifts one power of `Δ` to the front through the diagram
//! automorphism `τ`. Each right multiplication by a simple element restores
//! left-weightedness with a single right-to-left sliding pass.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::coxeter::{CoxeterElement, CoxeterGraph, IndexOutOfRange, RootSystem};

/// A standard generator or its inverse (0-based generator index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn neg(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "a{}^-1", self.generator + 1)
        } else {
            write!(f, "a{}", self.generator + 1)
        }
    }
}

/// A word in the standard generators and their inverses.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GeneratorWord(Vec<Letter>);

impl GeneratorWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GeneratorWord(letters)
    }

    pub fn empty() -> Self {
        GeneratorWord(Vec::new())
    }

    /// From signed 1-based labels: `3` is `a3`, `-3` is `a3⁻¹`.
    pub fn from_signed(labels: &[i64]) -> Self {
        GeneratorWord(
            labels
                .iter()
                .map(|&l| {
                    assert!(l != 0, "generator labels start at 1");
                    Letter { generator: l.unsigned_abs() as usize - 1, inverse: l < 0 }
                })
                .collect(),
        )
    }

    /// Positive word from 1-based labels.
    pub fn positive(labels: &[usize]) -> Self {
        GeneratorWord(labels.iter().map(|&l| Letter::pos(l - 1)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &GeneratorWord) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    /// Reversed, with every exponent negated.
    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn pow(&self, m: i64) -> GeneratorWord {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let mut out = GeneratorWord::empty();
        for _ in 0..m.unsigned_abs() {
            out.extend_from(&base);
        }
        out
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &GeneratorWord) -> GeneratorWord {
        g.inverse().concat(self).concat(g)
    }

    /// Exponent sum; a homomorphism to ℤ since every relation is length-balanced.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|l| l.exponent()).sum()
    }

    /// Cancels adjacent `a a⁻¹` pairs.
    pub fn freely_reduced(&self) -> GeneratorWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GeneratorWord(out)
    }

    pub fn validate(&self, rank: usize) -> Result<(), IndexOutOfRange> {
        match self.0.iter().find(|l| l.generator >= rank) {
            Some(l) => Err(IndexOutOfRange { index: l.generator, rank }),
            None => Ok(()),
        }
    }

    /// Set of generators used (0-based).
    pub fn support(&self) -> BTreeSet<usize> {
        self.0.iter().map(|l| l.generator).collect()
    }
}

impl fmt::Display for GeneratorWord {
    /// Word-language syntax: `a1*a2^-1*a3`, or `eps` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("eps");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for GeneratorWord {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        GeneratorWord(iter.into_iter().collect())
    }
}

/// An Artin group element in left normal form.
///
/// `factors` are simple elements, none trivial and none equal to `Δ`, with
/// every adjacent pair left-weighted. Two elements are equal in the group
/// iff their normal forms are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GarsideElement {
    pub delta_power: i64,
    pub factors: Vec<CoxeterElement>,
}

impl GarsideElement {
    pub fn identity() -> Self {
        GarsideElement { delta_power: 0, factors: Vec::new() }
    }

    pub fn inf(&self) -> i64 {
        self.delta_power
    }

    pub fn sup(&self) -> i64 {
        self.delta_power + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    /// True iff the element is `Δ^k` for some `k`.
    pub fn is_delta_power(&self) -> bool {
        self.factors.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("malformed normal form text: {0}")]
    Syntax(String),
    #[error("factor {index} is trivial")]
    TrivialFactor { index: usize },
    #[error("factor {index} equals Δ")]
    DeltaFactor { index: usize },
    #[error("factor {index} is not given by a reduced word")]
    NotReduced { index: usize },
    #[error("factors {index} and {} are not left-weighted", index + 1)]
    NotLeftWeighted { index: usize },
    #[error(transparent)]
    Index(#[from] IndexOutOfRange),
}

/// Garside structure of `A(Γ)` for a spherical simply-laced graph.
#[derive(Debug, Clone)]
pub struct GarsideGroup {
    roots: RootSystem,
    generators: Vec<CoxeterElement>,
    complements: Vec<CoxeterElement>,
    delta_length: u32,
    center: OnceLock<i64>,
}

impl GarsideGroup {
    pub fn new(graph: CoxeterGraph) -> Self {
        let roots = RootSystem::new(graph);
        let generators: Vec<CoxeterElement> =
            (0..roots.rank()).map(|i| roots.simple_reflection(i).expect("index in range")).collect();
        let complements = generators.iter().map(|s| roots.right_complement(s)).collect();
        let delta_length = roots.longest_element().length() as u32;
        GarsideGroup { roots, generators, complements, delta_length, center: OnceLock::new() }
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn graph(&self) -> &CoxeterGraph {
        self.roots.graph()
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    /// The longest element `w0`, image of `Δ`.
    pub fn delta_simple(&self) -> &CoxeterElement {
        self.roots.longest_element()
    }

    /// Letter length of `Δ`, equal to the number of positive roots.
    pub fn delta_degree(&self) -> i64 {
        i64::from(self.delta_length)
    }

    pub fn delta_power(&self, k: i64) -> GarsideElement {
        GarsideElement { delta_power: k, factors: Vec::new() }
    }

    /// A positive reduced word for `Δ` (the lexicographically smallest one).
    pub fn delta_word(&self) -> GeneratorWord {
        GeneratorWord(self.roots.reduced_word(self.delta_simple()).into_iter().map(Letter::pos).collect())
    }

    pub fn generator(&self, i: usize) -> Result<GarsideElement, IndexOutOfRange> {
        self.roots.check_index(i)?;
        let mut acc = Accumulator::new(self);
        acc.mul_simple(&self.generators[i]);
        Ok(acc.finish())
    }

    pub fn normalize(&self, word: &GeneratorWord) -> Result<GarsideElement, IndexOutOfRange> {
        word.validate(self.rank())?;
        let mut acc = Accumulator::new(self);
        for &letter in word.letters() {
            acc.mul_letter(letter);
        }
        Ok(acc.finish())
    }

    pub fn multiply(&self, x: &GarsideElement, y: &GarsideElement) -> GarsideElement {
        let mut acc = Accumulator::from_element(self, x);
        acc.mul_element(y);
        acc.finish()
    }

    /// `x · a` for a single letter.
    pub fn multiply_letter(&self, x: &GarsideElement, letter: Letter) -> GarsideElement {
        let mut acc = Accumulator::from_element(self, x);
        acc.mul_letter(letter);
        acc.finish()
    }

    pub fn inverse(&self, x: &GarsideElement) -> GarsideElement {
        // (Δ^k s₁…s_n)⁻¹ = s_n⁻¹…s₁⁻¹ Δ^{-k}, and s⁻¹ = ∂(s) Δ⁻¹.
        let mut acc = Accumulator::new(self);
        for s in x.factors.iter().rev() {
            acc.mul_simple(&self.roots.right_complement(s));
            acc.mul_delta(-1);
        }
        acc.mul_delta(-x.delta_power);
        acc.finish()
    }

    pub fn power(&self, x: &GarsideElement, m: i64) -> GarsideElement {
        let base = if m < 0 { self.inverse(x) } else { x.clone() };
        let mut acc = Accumulator::new(self);
        for _ in 0..m.unsigned_abs() {
            acc.mul_element(&base);
        }
        acc.finish()
    }

    /// `g⁻¹ x g`.
    pub fn conjugate(&self, x: &GarsideElement, g: &GarsideElement) -> GarsideElement {
        let mut acc = Accumulator::from_element(self, &self.inverse(g));
        acc.mul_element(x);
        acc.mul_element(g);
        acc.finish()
    }

    /// Equality in the group: identical normal forms.
    pub fn equal(&self, x: &GeneratorWord, y: &GeneratorWord) -> Result<bool, IndexOutOfRange> {
        Ok(self.normalize(x)? == self.normalize(y)?)
    }

    pub fn is_trivial(&self, x: &GeneratorWord) -> Result<bool, IndexOutOfRange> {
        Ok(self.normalize(x)?.is_identity())
    }

    /// Exponent sum of the element, read off its normal form.
    pub fn degree(&self, x: &GarsideElement) -> i64 {
        x.delta_power * self.delta_degree() + x.factors.iter().map(|s| s.length() as i64).sum::<i64>()
    }

    /// `x` absorbs `y` iff `y` has `sup = 0` or `inf = 0`, and multiplying by
    /// `y` changes neither `inf(x)` nor `sup(x)`.
    pub fn absorbs(&self, x: &GarsideElement, y: &GarsideElement) -> bool {
        let xy = self.multiply(x, y);
        (y.sup() == 0 || y.inf() == 0) && xy.sup() == x.sup() && xy.inf() == x.inf()
    }

    /// Smallest `c ≥ 1` such that `Δ^c` commutes with every generator.
    pub fn center_exponent(&self) -> i64 {
        *self.center.get_or_init(|| self.compute_center_exponent())
    }

    fn compute_center_exponent(&self) -> i64 {
        (1..)
            .find(|&c| {
                (0..self.rank()).all(|i| {
                    let a = self.generator(i).expect("in range");
                    self.conjugate(&a, &self.delta_power(c)) == a
                })
            })
            .expect("Δ² is always central")
    }

    /// Whether `x` is central, i.e. a power of `Δ^c`.
    pub fn is_central(&self, x: &GarsideElement) -> bool {
        x.is_delta_power() && x.delta_power.rem_euclid(self.center_exponent()) == 0
    }

    /// Equality in `A(Γ)` modulo its center.
    pub fn mod_center_equal(&self, x: &GarsideElement, y: &GarsideElement) -> bool {
        self.is_central(&self.multiply(x, &self.inverse(y)))
    }

    /// Membership in the standard parabolic subgroup generated by `subset`
    /// (0-based). Writes `x = p⁻¹q` with `p, q` positive and coprime, then
    /// checks that both only involve generators from `subset`.
    pub fn in_standard_parabolic(&self, x: &GarsideElement, subset: &BTreeSet<usize>) -> Result<bool, IndexOutOfRange> {
        for &i in subset {
            self.roots.check_index(i)?;
        }
        let (p, q) = self.fraction(x);
        Ok(self.positive_support(&p).is_subset(subset) && self.positive_support(&q).is_subset(subset))
    }

    /// Left fraction `x = p⁻¹ q` with `p, q` positive and `gcd(p, q) = 1`.
    pub fn fraction(&self, x: &GarsideElement) -> (GarsideElement, GarsideElement) {
        if x.delta_power >= 0 {
            return (GarsideElement::identity(), x.clone());
        }
        // For positive q = s₁…s_n, gcd(Δ^m, q) = s₁…s_min(m,n).
        let m = -x.delta_power;
        let j = (m as usize).min(x.factors.len());
        let g = GarsideElement { delta_power: 0, factors: x.factors[..j].to_vec() };
        let q = GarsideElement { delta_power: 0, factors: x.factors[j..].to_vec() };
        let p = self.multiply(&self.inverse(&g), &self.delta_power(m));
        debug_assert!(p.delta_power >= 0);
        (p, q)
    }

    /// Generators appearing in a positive element.
    fn positive_support(&self, x: &GarsideElement) -> BTreeSet<usize> {
        if x.delta_power > 0 {
            return (0..self.rank()).collect();
        }
        x.factors.iter().flat_map(|s| self.roots.support(s)).collect()
    }

    /// Verbatim left-weightedness: `gcd(∂s, t) = 1`.
    pub fn is_left_weighted(&self, s: &CoxeterElement, t: &CoxeterElement) -> bool {
        self.roots.meet_left(&self.roots.right_complement(s), t).is_identity()
    }

    /// Checks every normal-form invariant.
    pub fn validate(&self, x: &GarsideElement) -> Result<(), NormalFormError> {
        for (index, s) in x.factors.iter().enumerate() {
            if s.is_identity() {
                return Err(NormalFormError::TrivialFactor { index });
            }
            if s == self.delta_simple() {
                return Err(NormalFormError::DeltaFactor { index });
            }
        }
        for (index, pair) in x.factors.windows(2).enumerate() {
            if !self.is_left_weighted(&pair[0], &pair[1]) {
                return Err(NormalFormError::NotLeftWeighted { index });
            }
        }
        Ok(())
    }

    /// Letter expansion of a normal form.
    pub fn to_word(&self, x: &GarsideElement) -> GeneratorWord {
        let delta = self.delta_word();
        let mut word = delta.pow(x.delta_power);
        for s in &x.factors {
            word.0.extend(self.roots.reduced_word(s).into_iter().map(Letter::pos));
        }
        word
    }

    /// Text form `D^k | w1 | w2 | ...`; each `wj` is the lexicographically
    /// smallest reduced word of the factor, e.g. `D^-1 | a1*a2`. The
    /// identity prints as `D^0 |`.
    pub fn format(&self, x: &GarsideElement) -> String {
        let mut out = format!("D^{} |", x.delta_power);
        for (i, s) in x.factors.iter().enumerate() {
            if i > 0 {
                out.push_str(" |");
            }
            let word: Vec<String> = self.roots.reduced_word(s).iter().map(|g| format!("a{}", g + 1)).collect();
            out.push(' ');
            out.push_str(&word.join("*"));
        }
        out
    }

    pub fn parse_normal_form(&self, text: &str) -> Result<GarsideElement, NormalFormError> {
        let syntax = |m: &str| NormalFormError::Syntax(m.to_string());
        let mut parts = text.split('|').map(str::trim);
        let head = parts.next().ok_or_else(|| syntax("empty input"))?;
        let k: i64 = head
            .strip_prefix("D^")
            .ok_or_else(|| syntax("expected `D^k` before the first `|`"))?
            .parse()
            .map_err(|_| syntax("Δ exponent is not an integer"))?;
        if !text.contains('|') {
            return Err(syntax("missing `|` after the Δ power"));
        }
        let mut factors = Vec::new();
        let parts: Vec<&str> = parts.collect();
        for (index, part) in parts.iter().enumerate() {
            if part.is_empty() && index + 1 == parts.len() && index == 0 {
                break;
            }
            let mut letters = Vec::new();
            for token in part.split('*').map(str::trim) {
                let g: usize = token
                    .strip_prefix('a')
                    .and_then(|d| d.parse().ok())
                    .filter(|&g| g >= 1)
                    .ok_or_else(|| syntax(&format!("bad letter `{token}` in factor {index}")))?;
                letters.push(g - 1);
            }
            let s = self.roots.element_from_word(&letters)?;
            if s.length() != letters.len() {
                return Err(NormalFormError::NotReduced { index });
            }
            factors.push(s);
        }
        let x = GarsideElement { delta_power: k, factors };
        self.validate(&x)?;
        Ok(x)
    }
}

/// Running product `Δ^k · τ^t(stored factors)`; the twist `t ∈ {0,1}` is
/// applied lazily so that shifting `Δ⁻¹` to the front costs O(1).
struct Accumulator<'g> {
    group: &'g GarsideGroup,
    delta_power: i64,
    twisted: bool,
    factors: Vec<CoxeterElement>,
}

impl<'g> Accumulator<'g> {
    fn new(group: &'g GarsideGroup) -> Self {
        Accumulator { group, delta_power: 0, twisted: false, factors: Vec::new() }
    }

    fn from_element(group: &'g GarsideGroup, x: &GarsideElement) -> Self {
        Accumulator { group, delta_power: x.delta_power, twisted: false, factors: x.factors.clone() }
    }

    fn mul_letter(&mut self, letter: Letter) {
        let g = self.group;
        if letter.inverse {
            self.mul_simple(&g.complements[letter.generator]);
            self.mul_delta(-1);
        } else {
            self.mul_simple(&g.generators[letter.generator]);
        }
    }

    /// `x Δ^k = Δ^k τ^k(x)`.
    fn mul_delta(&mut self, k: i64) {
        self.delta_power += k;
        if k % 2 != 0 {
            self.twisted = !self.twisted;
        }
    }

    fn mul_element(&mut self, y: &GarsideElement) {
        self.mul_delta(y.delta_power);
        for s in &y.factors {
            self.mul_simple(s);
        }
    }

    fn mul_simple(&mut self, s: &CoxeterElement) {
        if s.is_identity() {
            return;
        }
        if s.length == self.group.delta_length {
            self.mul_delta(1);
            return;
        }
        let stored = if self.twisted { self.group.roots.conjugate_by_longest(s) } else { s.clone() };
        self.push(stored);
    }

    fn push(&mut self, t: CoxeterElement) {
        let roots = &self.group.roots;
        self.factors.push(t);
        let mut j = self.factors.len() - 1;
        while j > 0 {
            let (left, right) = self.factors.split_at_mut(j);
            if !slide(roots, &mut left[j - 1], &mut right[0]) {
                break;
            }
            j -= 1;
        }
        if self.factors.last().is_some_and(CoxeterElement::is_identity) {
            self.factors.pop();
        }
        let full = self.group.delta_length;
        let leading = self.factors.iter().take_while(|s| s.length == full).count();
        if leading > 0 {
            self.factors.drain(..leading);
            self.delta_power += leading as i64;
        }
        debug_assert!(self.factors.iter().all(|s| !s.is_identity()));
    }

    fn finish(self) -> GarsideElement {
        let factors = if self.twisted {
            self.factors.iter().map(|s| self.group.roots.conjugate_by_longest(s)).collect()
        } else {
            self.factors
        };
        GarsideElement { delta_power: self.delta_power, factors }
    }
}

/// Makes `(s, t)` left-weighted by moving `gcd(∂s, t)` from `t` into `s`.
/// A generator can move iff it is a left descent of `t` and not a right
/// descent of `s`. Returns whether anything moved.
fn slide(roots: &RootSystem, s: &mut CoxeterElement, t: &mut CoxeterElement) -> bool {
    let mut moved = false;
    loop {
        let movable = t.left_descent_mask() & !s.right_descent_mask();
        if movable == 0 {
            return moved;
        }
        let i = movable.trailing_zeros() as usize;
        roots.right_mul_simple(s, i);
        roots.left_mul_simple(t, i);
        moved = true;
    }
}
