//! Hand-written lexer and recursive-descent parser.
//!
//! ```text
//! script    := { "let" NAME "=" expr ";" }
//! expr      := term { "*" term }
//! term      := primary { "^" suffix }
//! suffix    := ["-"] INT | NAME | "(" expr ")"
//! primary   := NAME | "(" expr ")"
//! ```
//!
//! `NAME` covers generators (`a1`, `a2`, ...), the identity `eps` and bound
//! symbols. `#` starts a comment running to the end of the line.

use super::ast::WordExpr;
use super::WordError;

/// Largest accepted absolute exponent.
pub const MAX_EXPONENT: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Star,
    Caret,
    Minus,
    LParen,
    RParen,
    Let,
    Assign,
    Semi,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(k) => format!("`{k}`"),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Minus => "`-`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Let => "`let`".into(),
            Tok::Assign => "`=`".into(),
            Tok::Semi => "`;`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, WordError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => advance(1, &mut i),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '*' => {
                out.push((Tok::Star, pos));
                advance(1, &mut i);
            }
            '^' => {
                out.push((Tok::Caret, pos));
                advance(1, &mut i);
            }
            '-' => {
                out.push((Tok::Minus, pos));
                advance(1, &mut i);
            }
            '(' => {
                out.push((Tok::LParen, pos));
                advance(1, &mut i);
            }
            ')' => {
                out.push((Tok::RParen, pos));
                advance(1, &mut i);
            }
            '=' => {
                out.push((Tok::Assign, pos));
                advance(1, &mut i);
            }
            ';' => {
                out.push((Tok::Semi, pos));
                advance(1, &mut i);
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                col += i - start;
                let value = digits.parse::<i64>().ok().filter(|v| *v <= MAX_EXPONENT).ok_or(WordError::ExponentTooLarge {
                    line: pos.line,
                    column: pos.column,
                    text: digits,
                })?;
                out.push((Tok::Int(value), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                col += i - start;
                out.push((if word == "let" { Tok::Let } else { Tok::Ident(word) }, pos));
            }
            other => {
                return Err(WordError::Syntax {
                    line: pos.line,
                    column: pos.column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    out.push((Tok::End, Pos { line, column: col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> WordError {
        let p = self.pos();
        WordError::Syntax { line: p.line, column: p.column, message: message.into() }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), WordError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {}, found {}", tok.describe(), self.peek().describe())))
        }
    }

    fn expr(&mut self) -> Result<WordExpr, WordError> {
        let mut items = vec![self.term()?];
        while *self.peek() == Tok::Star {
            self.bump();
            items.push(self.term()?);
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { WordExpr::Product(items) })
    }

    fn term(&mut self) -> Result<WordExpr, WordError> {
        let mut base = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            base = match self.peek().clone() {
                Tok::Minus => {
                    self.bump();
                    match self.bump() {
                        Tok::Int(k) => WordExpr::power(base, -k),
                        other => return Err(self.error(format!("expected an exponent after `^-`, found {}", other.describe()))),
                    }
                }
                Tok::Int(k) => {
                    self.bump();
                    WordExpr::power(base, k)
                }
                Tok::Ident(_) => {
                    let by = self.primary()?;
                    WordExpr::conjugate(base, by)
                }
                Tok::LParen => {
                    self.bump();
                    let by = self.expr()?;
                    self.expect(Tok::RParen)?;
                    WordExpr::conjugate(base, by)
                }
                other => return Err(self.error(format!("expected an exponent or conjugator after `^`, found {}", other.describe()))),
            };
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<WordExpr, WordError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let err = self.error(format!("generator labels start at 1, found `{name}`"));
                self.bump();
                atom(&name).ok_or(err)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(self.error(format!("expected a generator, name or `(`, found {}", other.describe()))),
        }
    }
}

/// `aN` → generator, `eps` → identity, anything else → a name.
fn atom(name: &str) -> Option<WordExpr> {
    if name == "eps" {
        return Some(WordExpr::Identity);
    }
    if let Some(digits) = name.strip_prefix('a') {
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            return digits.parse::<usize>().ok().filter(|&n| n >= 1).map(WordExpr::Generator);
        }
    }
    Some(WordExpr::Named(name.to_string()))
}

pub fn parse(text: &str) -> Result<WordExpr, WordError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(format!("unexpected {} after expression", p.peek().describe())));
    }
    Ok(e)
}

/// A `let` statement with the source line it starts on.
pub(super) struct Binding {
    pub name: String,
    pub expr: WordExpr,
    pub line: usize,
    pub column: usize,
}

pub(super) fn parse_script(text: &str) -> Result<Vec<Binding>, WordError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let mut out = Vec::new();
    while *p.peek() != Tok::End {
        p.expect(Tok::Let)?;
        let pos = p.pos();
        let name = match p.bump() {
            Tok::Ident(n) if matches!(atom(&n), Some(WordExpr::Named(_))) => n,
            other => {
                return Err(WordError::Syntax {
                    line: pos.line,
                    column: pos.column,
                    message: format!("expected a binding name, found {}", other.describe()),
                })
            }
        };
        p.expect(Tok::Assign)?;
        let expr = p.expr()?;
        p.expect(Tok::Semi)?;
        out.push(Binding { name, expr, line: pos.line, column: pos.column });
    }
    Ok(out)
}
