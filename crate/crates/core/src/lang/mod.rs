//! A small expression language for group words.
//!
//! The Wajnryb element is written directly in this notation:
//!
//! ```text
//! let b = a4*a5*a3*a4*a2*a6*a5*a3*a4;
//! let w = a1 * a1^b * a1 * (a1^-1)^b * a1^-1 * (a1^-1)^b;
//! ```
//!
//! `x^k` is a power (negative `k` inverts), `x^g` conjugates. The default
//! conjugation convention is `x^g = g⁻¹ x g`; see [`Convention`].

mod ast;
mod parser;

use std::collections::HashMap;

use thiserror::Error;

use crate::garside::{GeneratorWord, Letter};

pub use ast::WordExpr;
pub use parser::{parse, MAX_EXPONENT};

/// Upper bound on the number of letters an expansion may produce.
pub const MAX_EXPANSION: usize = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("exponent `{text}` at {line}:{column} exceeds the bound {MAX_EXPONENT}")]
    ExponentTooLarge { line: usize, column: usize, text: String },
    #[error("unbound name `{0}`")]
    UnboundName(String),
    #[error("cyclic binding: {}", .0.join(" -> "))]
    CyclicBinding(Vec<String>),
    #[error("name `{name}` bound twice (second binding at line {line})")]
    DuplicateName { name: String, line: usize },
    #[error("expansion exceeds {MAX_EXPANSION} letters")]
    ExpansionTooLarge,
}

/// How `x^g` expands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
pub enum Convention {
    /// `x^g = g⁻¹ x g`
    #[default]
    RightAction,
    /// `x^g = g x g⁻¹`
    LeftAction,
}

impl Convention {
    pub const BOTH: [Convention; 2] = [Convention::RightAction, Convention::LeftAction];

    pub fn describe(self) -> &'static str {
        match self {
            Convention::RightAction => "x^g = g^-1 x g",
            Convention::LeftAction => "x^g = g x g^-1",
        }
    }
}

/// Named bindings in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Environment {
    entries: Vec<(String, WordExpr)>,
    index: HashMap<String, usize>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &str, expr: WordExpr) -> Result<(), WordError> {
        if self.index.contains_key(name) {
            return Err(WordError::DuplicateName { name: name.to_string(), line: 0 });
        }
        self.index.insert(name.to_string(), self.entries.len());
        self.entries.push((name.to_string(), expr));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&WordExpr> {
        self.index.get(name).map(|&i| &self.entries[i].1)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &WordExpr)> {
        self.entries.iter().map(|(n, e)| (n.as_str(), e))
    }

    /// Adds every binding of `other` whose name is not bound here yet.
    pub fn extend_missing(&mut self, other: &Environment) {
        for (name, expr) in other.iter() {
            if !self.contains(name) {
                self.insert(name, expr.clone()).expect("name checked absent");
            }
        }
    }
}

/// Reads `let name = expr;` statements in order. A binding may only refer
/// to names bound on earlier lines.
pub fn load_script(text: &str) -> Result<Environment, WordError> {
    let mut env = Environment::new();
    for binding in parser::parse_script(text)? {
        if env.contains(&binding.name) {
            return Err(WordError::DuplicateName { name: binding.name, line: binding.line });
        }
        for name in binding.expr.names() {
            if name == binding.name {
                return Err(WordError::CyclicBinding(vec![binding.name.clone(), binding.name.clone()]));
            }
            if !env.contains(name) {
                return Err(WordError::UnboundName(name.to_string()));
            }
        }
        let _ = binding.column;
        env.insert(&binding.name, binding.expr)?;
    }
    Ok(env)
}

/// Flattens an expression into a letter sequence (no free reduction).
pub fn expand(expr: &WordExpr, env: &Environment, convention: Convention) -> Result<GeneratorWord, WordError> {
    let mut ctx = Expander { env, convention, cache: HashMap::new(), stack: Vec::new() };
    ctx.expand(expr)
}

/// Parses and expands in one step.
pub fn expand_str(text: &str, env: &Environment, convention: Convention) -> Result<GeneratorWord, WordError> {
    expand(&parse(text)?, env, convention)
}

struct Expander<'e> {
    env: &'e Environment,
    convention: Convention,
    cache: HashMap<String, GeneratorWord>,
    stack: Vec<String>,
}

impl Expander<'_> {
    fn expand(&mut self, expr: &WordExpr) -> Result<GeneratorWord, WordError> {
        let word = match expr {
            WordExpr::Identity => GeneratorWord::empty(),
            WordExpr::Generator(n) => GeneratorWord::new(vec![Letter::pos(n - 1)]),
            WordExpr::Named(name) => self.named(name)?,
            WordExpr::Product(items) => {
                let mut out = GeneratorWord::empty();
                for item in items {
                    let w = self.expand(item)?;
                    check_size(out.len() + w.len())?;
                    out.extend_from(&w);
                }
                out
            }
            WordExpr::Power(base, k) => {
                let w = self.expand(base)?;
                check_size(w.len().saturating_mul(k.unsigned_abs() as usize))?;
                w.pow(*k)
            }
            WordExpr::Conjugate(base, by) => {
                let x = self.expand(base)?;
                let g = self.expand(by)?;
                check_size(x.len() + 2 * g.len())?;
                match self.convention {
                    Convention::RightAction => g.inverse().concat(&x).concat(&g),
                    Convention::LeftAction => g.concat(&x).concat(&g.inverse()),
                }
            }
        };
        Ok(word)
    }

    fn named(&mut self, name: &str) -> Result<GeneratorWord, WordError> {
        if let Some(w) = self.cache.get(name) {
            return Ok(w.clone());
        }
        if let Some(start) = self.stack.iter().position(|n| n == name) {
            let mut cycle = self.stack[start..].to_vec();
            cycle.push(name.to_string());
            return Err(WordError::CyclicBinding(cycle));
        }
        let body = self.env.get(name).ok_or_else(|| WordError::UnboundName(name.to_string()))?;
        self.stack.push(name.to_string());
        let w = self.expand(body)?;
        self.stack.pop();
        self.cache.insert(name.to_string(), w.clone());
        Ok(w)
    }
}

fn check_size(n: usize) -> Result<(), WordError> {
    if n > MAX_EXPANSION {
        Err(WordError::ExpansionTooLarge)
    } else {
        Ok(())
    }
}
