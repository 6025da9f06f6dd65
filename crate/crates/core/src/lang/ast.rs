use std::fmt;

/// Abstract syntax of a group word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WordExpr {
    /// `eps`
    Identity,
    /// `aN`, holding the 1-based label `N`.
    Generator(usize),
    Named(String),
    /// `x * y * ...`; parenthesized sub-products stay nested.
    Product(Vec<WordExpr>),
    /// `x^k`
    Power(Box<WordExpr>, i64),
    /// `x^g`, conjugation of the base by `g`.
    Conjugate(Box<WordExpr>, Box<WordExpr>),
}

impl WordExpr {
    pub fn product(items: Vec<WordExpr>) -> WordExpr {
        WordExpr::Product(items)
    }

    pub fn power(base: WordExpr, k: i64) -> WordExpr {
        WordExpr::Power(Box::new(base), k)
    }

    pub fn conjugate(base: WordExpr, by: WordExpr) -> WordExpr {
        WordExpr::Conjugate(Box::new(base), Box::new(by))
    }

    pub fn named(name: &str) -> WordExpr {
        WordExpr::Named(name.to_string())
    }

    /// Every `Named` symbol referenced, in first-occurrence order.
    pub fn names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            WordExpr::Identity | WordExpr::Generator(_) => {}
            WordExpr::Named(n) => {
                if !out.contains(&n.as_str()) {
                    out.push(n);
                }
            }
            WordExpr::Product(items) => items.iter().for_each(|i| i.collect_names(out)),
            WordExpr::Power(b, _) => b.collect_names(out),
            WordExpr::Conjugate(b, g) => {
                b.collect_names(out);
                g.collect_names(out);
            }
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(self, WordExpr::Identity | WordExpr::Generator(_) | WordExpr::Named(_))
    }

    /// Operand of a postfix `^`: only atoms print bare.
    fn fmt_base(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_atomic() {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }

    /// Factor of a product: nested products keep their parentheses.
    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordExpr::Product(_) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordExpr::Identity => f.write_str("eps"),
            WordExpr::Generator(n) => write!(f, "a{n}"),
            WordExpr::Named(n) => f.write_str(n),
            WordExpr::Product(items) => {
                if items.is_empty() {
                    return f.write_str("eps");
                }
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    item.fmt_factor(f)?;
                }
                Ok(())
            }
            WordExpr::Power(base, k) => {
                base.fmt_base(f)?;
                write!(f, "^{k}")
            }
            WordExpr::Conjugate(base, by) => {
                base.fmt_base(f)?;
                if by.is_atomic() {
                    write!(f, "^{by}")
                } else {
                    write!(f, "^({by})")
                }
            }
        }
    }
}
