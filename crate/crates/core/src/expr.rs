//! Small expression language for group-algebra closed forms.
//!
//! Expressions are sums of products over named group elements, written the
//! way they appear in hand computations:
//!
//! ```text
//! hg^3h(a^2b^2 + ab - a^2 - a)      h^2gh^2g^3h hat(a) hat(b)
//! (g^2h^2)^-1 gh^2g                 [gh, g, gh, gh]
//! ```
//!
//! Juxtaposition is multiplication, `^` binds to the preceding factor, `hat(x)`
//! is the sum over the cyclic subgroup generated by `x`, integers are scalar
//! multiples of the identity, and `^-k` is only allowed on single group elements.
//! Symbols are single letters, or `z` followed by digits.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{AlgebraContext, AlgebraElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Sym(String),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, i64),
    Hat(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError(pub String);

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ExprError {}

/// Symbol bindings: symbol name to group element index.
pub type Bindings = HashMap<String, usize>;

pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let mut parser = Parser::new(text);
    let e = parser.sum()?;
    parser.finish()?;
    Ok(e)
}

/// Parses a left-normed commutator label `[x1, .., xn]`.
pub fn parse_commutator(text: &str) -> Result<Vec<Expr>, ExprError> {
    let mut parser = Parser::new(text);
    parser.expect('[')?;
    let mut args = vec![parser.sum()?];
    while parser.eat(',') {
        args.push(parser.sum()?);
    }
    parser.expect(']')?;
    parser.finish()?;
    Ok(args)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text
                .chars()
                .filter(|c| !c.is_whitespace() && *c != '*' && *c != '·')
                .collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn finish(&self) -> Result<(), ExprError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("trailing input")),
        }
    }

    fn error(&self, msg: &str) -> ExprError {
        let text: String = self.chars.iter().collect();
        ExprError(format!("{msg} at offset {} in {text:?}", self.pos))
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        loop {
            terms.push((negative, self.product()?));
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 && !terms[0].0 {
            terms.pop().unwrap().1
        } else {
            Expr::Sum(terms)
        })
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut factors = Vec::new();
        while let Some(c) = self.peek() {
            if matches!(c, '+' | '-' | ')' | ']' | ',') {
                break;
            }
            factors.push(self.power()?);
        }
        match factors.len() {
            0 => Err(self.error("empty product")),
            1 => Ok(factors.pop().unwrap()),
            _ => Ok(Expr::Product(factors)),
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if self.eat('^') {
            let negative = self.eat('-');
            let k = self.integer()?;
            Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<i64, ExprError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error("integer overflow"))
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end"))?;
        if c.is_ascii_digit() {
            return Ok(Expr::Int(self.integer()?));
        }
        if c == '(' {
            self.pos += 1;
            let e = self.sum()?;
            self.expect(')')?;
            return Ok(e);
        }
        if self.chars[self.pos..].starts_with(&['h', 'a', 't', '(']) {
            self.pos += 4;
            let e = self.sum()?;
            self.expect(')')?;
            return Ok(Expr::Hat(Box::new(e)));
        }
        if c.is_ascii_alphabetic() {
            self.pos += 1;
            let mut name = c.to_string();
            if c == 'z' {
                while let Some(d) = self.peek().filter(char::is_ascii_digit) {
                    name.push(d);
                    self.pos += 1;
                }
            }
            return Ok(Expr::Sym(name));
        }
        Err(self.error(&format!("unexpected '{c}'")))
    }
}

impl Expr {
    /// Evaluates in `KG` with the given symbol bindings.
    pub fn eval(&self, ctx: &AlgebraContext<'_>, env: &Bindings) -> Result<AlgebraElement, ExprError> {
        match self {
            Expr::Int(n) => Ok(ctx.scale(n.rem_euclid(ctx.p() as i64) as u8, &ctx.one())),
            Expr::Sym(s) => env
                .get(s)
                .map(|&g| ctx.basis(g))
                .ok_or_else(|| ExprError(format!("unbound symbol {s}"))),
            Expr::Sum(terms) => {
                let mut acc = ctx.zero();
                for (negative, e) in terms {
                    let v = e.eval(ctx, env)?;
                    acc = if *negative { ctx.sub(&acc, &v) } else { ctx.add(&acc, &v) };
                }
                Ok(acc)
            }
            Expr::Product(factors) => {
                let mut acc = ctx.one();
                for e in factors {
                    acc = ctx.mul(&acc, &e.eval(ctx, env)?);
                }
                Ok(acc)
            }
            Expr::Pow(base, k) => {
                let v = base.eval(ctx, env)?;
                if *k >= 0 {
                    Ok((0..*k).fold(ctx.one(), |acc, _| ctx.mul(&acc, &v)))
                } else {
                    let g = as_group_element(&v)
                        .ok_or_else(|| ExprError("negative power of a non-monomial".into()))?;
                    let inv = ctx.group().inv(g);
                    Ok(ctx.basis(ctx.group().pow(inv, k.unsigned_abs())))
                }
            }
            Expr::Hat(inner) => {
                let v = inner.eval(ctx, env)?;
                let g = as_group_element(&v)
                    .ok_or_else(|| ExprError("hat of a non-monomial".into()))?;
                Ok(ctx.hat(g))
            }
        }
    }

    /// Evaluates to a group element; fails unless the value is a single basis element.
    pub fn eval_group(&self, ctx: &AlgebraContext<'_>, env: &Bindings) -> Result<usize, ExprError> {
        let v = self.eval(ctx, env)?;
        as_group_element(&v).ok_or_else(|| ExprError(format!("{self:?} is not a group element")))
    }
}

/// `Some(g)` when `u` is exactly the basis element `g`.
pub fn as_group_element(u: &AlgebraElement) -> Option<usize> {
    let mut support = u.support();
    match (support.next(), support.next()) {
        (Some((g, 1)), None) => Some(g),
        _ => None,
    }
}

/// Evaluates a commutator label `[x1, .., xn]` as a left-normed Lie bracket.
pub fn eval_commutator(
    ctx: &AlgebraContext<'_>,
    label: &str,
    env: &Bindings,
) -> Result<AlgebraElement, ExprError> {
    let args = parse_commutator(label)?
        .iter()
        .map(|e| e.eval(ctx, env))
        .collect::<Result<Vec<_>, _>>()?;
    ctx.left_normed(&args).map_err(|e| ExprError(e.to_string()))
}

pub fn eval_str(ctx: &AlgebraContext<'_>, text: &str, env: &Bindings) -> Result<AlgebraElement, ExprError> {
    parse(text)?.eval(ctx, env)
}
