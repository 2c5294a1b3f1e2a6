//! A small expression language for functions of two variables.
//!
//! A program is a list of branches separated by `;`:
//!
//! ```text
//! if y == 0: 0; else: 1 / y
//! ```
//!
//! Each branch is `if <condition>: <expression>`, `else: <expression>`, or a
//! bare `<expression>`. Branches are tried in order and the first whose
//! condition holds supplies the value, so the final branch must be
//! unconditional (`else:` or bare) and no earlier branch may be.
//!
//! Conditions compare arithmetic subexpressions with `<`, `<=`, `==`, `>=`,
//! `>`, joined by `and` / `or` at equal precedence, left to right.
//! Comparisons are exact IEEE comparisons — no tolerance is applied, which
//! lets piecewise definitions pin special points like `y == 0` reliably on
//! grids that hit them exactly.
//!
//! Arithmetic on the variables `x` and `y`: `+ - * /`, right-associative `^`
//! binding tighter than unary minus (`-x^2` is `-(x^2)`), `abs(e)`, `ln(e)`,
//! `min(a, b)`, `max(a, b)`, parentheses, and numeric literals with optional
//! scientific notation. Evaluation follows IEEE semantics throughout, so
//! expressions may produce infinities or NaN; callers sampling tables decide
//! how to treat non-finite values.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DslError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("the final branch must be unconditional so every input has a value")]
    NonTotal,
    #[error("unconditional branch {index} makes the branches after it unreachable")]
    Unreachable { index: usize },
}

fn parse_err(offset: usize, message: impl Into<String>) -> DslError {
    DslError::Parse {
        offset,
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Var {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Func1 {
    Abs,
    Ln,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Func2 {
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum RelOp {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

#[derive(Clone, Debug, PartialEq)]
enum Expr {
    Number(f64),
    Var(Var),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call1(Func1, Box<Expr>),
    Call2(Func2, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Cond {
    Cmp(Box<Expr>, RelOp, Box<Expr>),
    And(Box<Cond>, Box<Cond>),
    Or(Box<Cond>, Box<Cond>),
}

#[derive(Clone, Debug, PartialEq)]
struct Branch {
    condition: Option<Cond>,
    body: Expr,
}

/// A parsed piecewise expression in `x` and `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Piecewise {
    branches: Vec<Branch>,
}

impl Expr {
    fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Expr::Number(c) => *c,
            Expr::Var(Var::X) => x,
            Expr::Var(Var::Y) => y,
            Expr::Neg(e) => -e.eval(x, y),
            Expr::Bin(op, a, b) => {
                let a = a.eval(x, y);
                let b = b.eval(x, y);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => pow(a, b),
                }
            }
            Expr::Call1(Func1::Abs, e) => e.eval(x, y).abs(),
            Expr::Call1(Func1::Ln, e) => e.eval(x, y).ln(),
            Expr::Call2(f, a, b) => {
                let a = a.eval(x, y);
                let b = b.eval(x, y);
                match f {
                    Func2::Min => a.min(b),
                    Func2::Max => a.max(b),
                }
            }
        }
    }
}

/// Integer powers with small exponents go through `powi`, which is exact for
/// small integer bases and keeps identities like `(-3)^2 == 9` bit-clean.
fn pow(a: f64, b: f64) -> f64 {
    if b.fract() == 0.0 && b.abs() <= 32.0 {
        a.powi(b as i32)
    } else {
        a.powf(b)
    }
}

impl Cond {
    fn eval(&self, x: f64, y: f64) -> bool {
        match self {
            Cond::Cmp(a, op, b) => {
                let a = a.eval(x, y);
                let b = b.eval(x, y);
                match op {
                    RelOp::Lt => a < b,
                    RelOp::Le => a <= b,
                    RelOp::Eq => a == b,
                    RelOp::Ge => a >= b,
                    RelOp::Gt => a > b,
                }
            }
            Cond::And(a, b) => a.eval(x, y) && b.eval(x, y),
            Cond::Or(a, b) => a.eval(x, y) || b.eval(x, y),
        }
    }
}

impl Piecewise {
    pub fn parse(source: &str) -> Result<Self, DslError> {
        let tokens = tokenize(source)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            end: source.len(),
        };
        let mut branches = Vec::new();
        loop {
            branches.push(parser.branch()?);
            match parser.peek() {
                Some(Tok::Semi) => {
                    parser.advance();
                    if parser.peek().is_none() {
                        break; // trailing semicolon
                    }
                }
                None => break,
                Some(_) => {
                    return Err(parse_err(
                        parser.offset(),
                        "expected ';' between branches or the end of the input",
                    ))
                }
            }
        }
        for (index, branch) in branches.iter().enumerate() {
            let last = index + 1 == branches.len();
            match (&branch.condition, last) {
                (Some(_), true) => return Err(DslError::NonTotal),
                (None, false) => return Err(DslError::Unreachable { index }),
                _ => {}
            }
        }
        Ok(Piecewise { branches })
    }

    /// Value at `(x, y)`: the first branch whose condition holds.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.branches[self.active_branch(x, y)].body.eval(x, y)
    }

    /// Index of the branch that would supply the value at `(x, y)`.
    pub fn active_branch(&self, x: f64, y: f64) -> usize {
        self.branches
            .iter()
            .position(|b| b.condition.as_ref().map_or(true, |c| c.eval(x, y)))
            .expect("the final branch is unconditional")
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    /// Value of one branch's expression at `(x, y)`, ignoring all
    /// conditions. Used to follow a branch up to the edge of its region when
    /// probing one-sided limits.
    pub fn eval_branch(&self, index: usize, x: f64, y: f64) -> f64 {
        self.branches[index].body.eval(x, y)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Number(f64),
    If,
    Else,
    And,
    Or,
    Var(Var),
    Func1(Func1),
    Func2(Func2),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Colon,
    Semi,
    Rel(RelOp),
}

struct Lexed {
    tok: Tok,
    offset: usize,
}

fn tokenize(src: &str) -> Result<Vec<Lexed>, DslError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let offset = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'-' => {
                i += 1;
                Tok::Minus
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'/' => {
                i += 1;
                Tok::Slash
            }
            b'^' => {
                i += 1;
                Tok::Caret
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b':' => {
                i += 1;
                Tok::Colon
            }
            b';' => {
                i += 1;
                Tok::Semi
            }
            b'<' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    i += 2;
                    Tok::Rel(RelOp::Le)
                } else {
                    i += 1;
                    Tok::Rel(RelOp::Lt)
                }
            }
            b'>' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    i += 2;
                    Tok::Rel(RelOp::Ge)
                } else {
                    i += 1;
                    Tok::Rel(RelOp::Gt)
                }
            }
            b'=' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    i += 2;
                    Tok::Rel(RelOp::Eq)
                } else {
                    return Err(parse_err(offset, "single '='; comparisons use '=='"));
                }
            }
            b'0'..=b'9' | b'.' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if bytes.get(j) == Some(&b'.') {
                    j += 1;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                if matches!(bytes.get(j), Some(b'e') | Some(b'E')) {
                    let mut k = j + 1;
                    if matches!(bytes.get(k), Some(b'+') | Some(b'-')) {
                        k += 1;
                    }
                    if bytes.get(k).is_some_and(u8::is_ascii_digit) {
                        j = k;
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                    }
                }
                let text = &src[i..j];
                let value: f64 = text
                    .parse()
                    .map_err(|_| parse_err(offset, format!("bad number literal '{text}'")))?;
                i = j;
                Tok::Number(value)
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let mut j = i;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let word = &src[i..j];
                i = j;
                match word {
                    "if" => Tok::If,
                    "else" => Tok::Else,
                    "and" => Tok::And,
                    "or" => Tok::Or,
                    "x" => Tok::Var(Var::X),
                    "y" => Tok::Var(Var::Y),
                    "abs" => Tok::Func1(Func1::Abs),
                    "ln" => Tok::Func1(Func1::Ln),
                    "min" => Tok::Func2(Func2::Min),
                    "max" => Tok::Func2(Func2::Max),
                    _ => return Err(parse_err(offset, format!("unknown name '{word}'"))),
                }
            }
            other => {
                return Err(parse_err(
                    offset,
                    format!("unexpected character '{}'", other as char),
                ))
            }
        };
        out.push(Lexed { tok, offset });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Lexed>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|l| &l.tok)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |l| l.offset)
    }

    fn advance(&mut self) -> Option<&Tok> {
        let tok = self.tokens.get(self.pos).map(|l| &l.tok);
        self.pos += 1;
        tok
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), DslError> {
        if self.peek() == Some(&want) {
            self.advance();
            Ok(())
        } else {
            Err(parse_err(self.offset(), format!("expected {what}")))
        }
    }

    fn branch(&mut self) -> Result<Branch, DslError> {
        match self.peek() {
            Some(Tok::If) => {
                self.advance();
                let condition = self.condition()?;
                self.expect(Tok::Colon, "':' after the condition")?;
                let body = self.expression()?;
                Ok(Branch {
                    condition: Some(condition),
                    body,
                })
            }
            Some(Tok::Else) => {
                self.advance();
                self.expect(Tok::Colon, "':' after 'else'")?;
                let body = self.expression()?;
                Ok(Branch {
                    condition: None,
                    body,
                })
            }
            _ => Ok(Branch {
                condition: None,
                body: self.expression()?,
            }),
        }
    }

    fn condition(&mut self) -> Result<Cond, DslError> {
        let mut cond = self.comparison()?;
        loop {
            match self.peek() {
                Some(Tok::And) => {
                    self.advance();
                    let rhs = self.comparison()?;
                    cond = Cond::And(Box::new(cond), Box::new(rhs));
                }
                Some(Tok::Or) => {
                    self.advance();
                    let rhs = self.comparison()?;
                    cond = Cond::Or(Box::new(cond), Box::new(rhs));
                }
                _ => return Ok(cond),
            }
        }
    }

    fn comparison(&mut self) -> Result<Cond, DslError> {
        let lhs = self.expression()?;
        let op = match self.peek() {
            Some(Tok::Rel(op)) => *op,
            _ => {
                return Err(parse_err(
                    self.offset(),
                    "expected a comparison operator (<, <=, ==, >=, >)",
                ))
            }
        };
        self.advance();
        let rhs = self.expression()?;
        Ok(Cond::Cmp(Box::new(lhs), op, Box::new(rhs)))
    }

    fn expression(&mut self) -> Result<Expr, DslError> {
        let mut out = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(out),
            };
            self.advance();
            let rhs = self.term()?;
            out = Expr::Bin(op, Box::new(out), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut out = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => return Ok(out),
            };
            self.advance();
            let rhs = self.factor()?;
            out = Expr::Bin(op, Box::new(out), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Expr, DslError> {
        if self.peek() == Some(&Tok::Minus) {
            self.advance();
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, DslError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.advance();
            // Right-associative, and the exponent may carry a sign of its
            // own: `x^-2` and `2^3^2 == 2^(3^2)`.
            let exponent = self.factor()?;
            return Ok(Expr::Bin(
                BinOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        let offset = self.offset();
        match self.advance() {
            Some(Tok::Number(value)) => Ok(Expr::Number(*value)),
            Some(Tok::Var(v)) => Ok(Expr::Var(*v)),
            Some(Tok::Func1(f)) => {
                let f = *f;
                self.expect(Tok::LParen, "'(' after the function name")?;
                let arg = self.expression()?;
                self.expect(Tok::RParen, "')' closing the argument")?;
                Ok(Expr::Call1(f, Box::new(arg)))
            }
            Some(Tok::Func2(f)) => {
                let f = *f;
                self.expect(Tok::LParen, "'(' after the function name")?;
                let a = self.expression()?;
                self.expect(Tok::Comma, "',' between the two arguments")?;
                let b = self.expression()?;
                self.expect(Tok::RParen, "')' closing the arguments")?;
                Ok(Expr::Call2(f, Box::new(a), Box::new(b)))
            }
            Some(Tok::LParen) => {
                let inner = self.expression()?;
                self.expect(Tok::RParen, "')' closing the group")?;
                Ok(inner)
            }
            _ => Err(parse_err(offset, "expected an expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(src: &str, x: f64, y: f64) -> f64 {
        Piecewise::parse(src).unwrap().eval(x, y)
    }

    #[test]
    fn difference_of_the_two_variables() {
        assert_eq!(eval("y - x", 0.25, 0.75), 0.5);
    }

    #[test]
    fn cubic_test_function() {
        assert_eq!(eval("y^3 - x", 1.0, 2.0), 7.0);
    }

    #[test]
    fn piecewise_first_match_wins() {
        let p = Piecewise::parse("if y == 1: 0; else: y - 2").unwrap();
        assert_eq!(p.eval(0.0, 1.0), 0.0);
        assert_eq!(p.eval(0.0, 0.25), -1.75);
        assert_eq!(p.active_branch(0.0, 1.0), 0);
        assert_eq!(p.active_branch(0.0, 0.25), 1);
    }

    #[test]
    fn branch_bodies_can_be_evaluated_directly() {
        let p = Piecewise::parse("if y < 1: y; else: 0").unwrap();
        assert_eq!(p.branch_count(), 2);
        // Branch 0's expression at y=1, even though its condition fails there.
        assert_eq!(p.eval_branch(0, 0.0, 1.0), 1.0);
        assert_eq!(p.eval_branch(1, 0.0, 0.5), 0.0);
    }

    #[test]
    fn conditions_combine_with_and_or() {
        let p =
            Piecewise::parse("if x == 1 and y == 0: 1; if x == 0 and y == 1: 1; else: 0").unwrap();
        assert_eq!(p.eval(1.0, 0.0), 1.0);
        assert_eq!(p.eval(0.0, 1.0), 1.0);
        assert_eq!(p.eval(1.0, 1.0), 0.0);
        assert_eq!(p.eval(0.5, 0.0), 0.0);
        let q = Piecewise::parse("if y < 0 or y > 1: 5; else: 0").unwrap();
        assert_eq!(q.eval(0.0, -0.5), 5.0);
        assert_eq!(q.eval(0.0, 2.0), 5.0);
        assert_eq!(q.eval(0.0, 0.5), 0.0);
    }

    #[test]
    fn missing_fallback_branch_is_rejected() {
        assert_eq!(
            Piecewise::parse("if y < 1: y"),
            Err(DslError::NonTotal)
        );
    }

    #[test]
    fn early_unconditional_branch_is_rejected() {
        assert_eq!(
            Piecewise::parse("y; else: 0"),
            Err(DslError::Unreachable { index: 0 })
        );
    }

    #[test]
    fn power_binds_tighter_than_unary_minus() {
        assert_eq!(eval("-x^2", 2.0, 0.0), -4.0);
        assert_eq!(eval("(-x)^2", 2.0, 0.0), 4.0);
    }

    #[test]
    fn power_is_right_associative() {
        assert_eq!(eval("2^3^2", 0.0, 0.0), 512.0);
    }

    #[test]
    fn small_integer_powers_are_exact() {
        assert_eq!(eval("x^2", -3.0, 0.0), 9.0);
        assert_eq!(eval("x^3", -3.0, 0.0), -27.0);
        assert_eq!(eval("x^0.5", 4.0, 0.0), 2.0);
        assert_eq!(eval("y^-1", 0.0, 4.0), 0.25);
    }

    #[test]
    fn subtraction_and_division_are_left_associative() {
        assert_eq!(eval("1 - 2 - 3", 0.0, 0.0), -4.0);
        assert_eq!(eval("8 / 4 / 2", 0.0, 0.0), 1.0);
    }

    #[test]
    fn scientific_notation_literals() {
        assert_eq!(eval("1.5e-3", 0.0, 0.0), 0.0015);
        assert_eq!(eval("2E2 + 1", 0.0, 0.0), 201.0);
    }

    #[test]
    fn named_functions_evaluate() {
        assert_eq!(eval("abs(y)", 0.0, -2.5), 2.5);
        assert_eq!(eval("ln(abs(y))", 0.0, 1.0), 0.0);
        assert_eq!(eval("min(x, y)", 1.0, 2.0), 1.0);
        assert_eq!(eval("max(x, y)", 1.0, 2.0), 2.0);
    }

    #[test]
    fn ieee_semantics_pass_through() {
        assert_eq!(eval("1 / y", 0.0, 0.0), f64::INFINITY);
        assert_eq!(eval("-1 / y", 0.0, 0.0), f64::NEG_INFINITY);
        assert!(eval("ln(y)", 0.0, -1.0).is_nan());
    }

    #[test]
    fn comparisons_are_exact() {
        let p = Piecewise::parse("if y == 0.1: 5; else: 0").unwrap();
        assert_eq!(p.eval(0.0, 0.1), 5.0);
        assert_eq!(p.eval(0.0, 0.1 + f64::EPSILON), 0.0);
    }

    #[test]
    fn parse_errors_carry_byte_offsets() {
        match Piecewise::parse("x $ y") {
            Err(DslError::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected a parse error, got {other:?}"),
        }
        match Piecewise::parse("z + 1") {
            Err(DslError::Parse { offset, message }) => {
                assert_eq!(offset, 0);
                assert!(message.contains('z'));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
        match Piecewise::parse("min(x)") {
            Err(DslError::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("expected a parse error, got {other:?}"),
        }
        match Piecewise::parse("x = 1") {
            Err(DslError::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn trailing_semicolon_is_allowed() {
        let p = Piecewise::parse("if y < 1: y; else: 0;").unwrap();
        assert_eq!(p.branch_count(), 2);
    }

    #[test]
    fn empty_input_is_a_parse_error() {
        assert!(matches!(
            Piecewise::parse(""),
            Err(DslError::Parse { .. })
        ));
        assert!(matches!(
            Piecewise::parse("   "),
            Err(DslError::Parse { .. })
        ));
    }
}
