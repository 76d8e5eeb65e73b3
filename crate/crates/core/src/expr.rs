//! Grey-number expressions.
//!
//! ```plain
//! expr     := term (('+' | '-') term)*
//! term     := factor (('*' | '/') factor)*
//! factor   := interval | number | '(' expr ')'
//! interval := '[' number ',' number ']'
//! ```
//!
//! Whitespace is insignificant. A bare number `x` is the white number `[x, x]`.
//! Numbers may carry a leading sign, so `1 - -2` reads as `1 - [-2, -2]`.

use std::fmt;

use thiserror::Error;

use crate::grey::GreyNumber;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }

    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Interval(GreyNumber),
    Number(f64),
    Binary {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
}

impl Expr {
    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary { op, .. } => op.precedence(),
            _ => u8::MAX,
        }
    }

    /// Bottom-up evaluation with grey-number arithmetic.
    pub fn eval(&self) -> Result<GreyNumber, EvalError> {
        match self {
            Expr::Interval(g) => Ok(*g),
            // finiteness is checked when the literal is parsed or built
            Expr::Number(x) => {
                GreyNumber::white(*x).map_err(|_| EvalError::NonFinite(self.to_string()))
            }
            Expr::Binary { op, lhs, rhs } => {
                let (a, b) = (lhs.eval()?, rhs.eval()?);
                let r = match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a.try_div(b).map_err(|_| EvalError::DivisionByZero {
                        divisor: rhs.to_string(),
                        value: b,
                    })?,
                };
                // overflow to infinity leaves the representable range
                GreyNumber::new(r.lower(), r.upper())
                    .map_err(|_| EvalError::NonFinite(self.to_string()))
            }
        }
    }
}

/// Prints with the fewest parentheses that re-parse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Interval(g) => write!(f, "[{}, {}]", g.lower(), g.upper()),
            Expr::Number(x) => write!(f, "{x}"),
            Expr::Binary { op, lhs, rhs } => {
                let p = op.precedence();
                if lhs.precedence() < p {
                    write!(f, "({lhs})")?;
                } else {
                    write!(f, "{lhs}")?;
                }
                write!(f, " {} ", op.symbol())?;
                // left associative: an equal-precedence right operand needs parens
                if rhs.precedence() <= p {
                    write!(f, "({rhs})")
                } else {
                    write!(f, "{rhs}")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    Expected(&'static str),
    InvalidNumber(String),
    InvalidInterval(String),
    TooDeep,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::InvalidNumber(s) => write!(f, "invalid number `{s}`"),
            ParseErrorKind::InvalidInterval(s) => {
                write!(f, "invalid interval {s}: lower bound exceeds upper bound")
            }
            ParseErrorKind::TooDeep => {
                write!(f, "expression nested deeper than {MAX_DEPTH} levels")
            }
        }
    }
}

/// A syntax error at byte `offset` of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by `{divisor}` = {value}, which contains zero")]
    DivisionByZero { divisor: String, value: GreyNumber },
    #[error("`{0}` does not evaluate to a finite interval")]
    NonFinite(String),
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nesting: 0,
    };
    let (e, _) = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(e),
        Some(_) => Err(p.error(ParseErrorKind::UnexpectedChar(p.current_char()))),
    }
}

/// Limit on parenthesis nesting and on tree depth.
pub const MAX_DEPTH: usize = 256;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nesting: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            offset: self.pos,
            kind,
        }
    }

    /// The full UTF-8 character at the cursor.
    fn current_char(&self) -> char {
        String::from_utf8_lossy(&self.src[self.pos..])
            .chars()
            .next()
            .unwrap_or(char::REPLACEMENT_CHARACTER)
    }

    /// Error for whatever sits at the cursor when `what` was needed.
    fn expected(&self, what: &'static str) -> ParseError {
        match self.peek() {
            None => self.error(ParseErrorKind::UnexpectedEnd),
            Some(c) if !c.is_ascii() => {
                self.error(ParseErrorKind::UnexpectedChar(self.current_char()))
            }
            Some(_) => self.error(ParseErrorKind::Expected(what)),
        }
    }

    fn eat(&mut self, c: u8, what: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.expected(what))
        }
    }

    fn expr(&mut self) -> Result<(Expr, usize), ParseError> {
        let (mut lhs, mut depth) = self.term()?;
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok((lhs, depth)),
            };
            self.pos += 1;
            let (rhs, rd) = self.term()?;
            depth = self.deeper(depth, rd)?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<(Expr, usize), ParseError> {
        let (mut lhs, mut depth) = self.factor()?;
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok((lhs, depth)),
            };
            self.pos += 1;
            let (rhs, rd) = self.factor()?;
            depth = self.deeper(depth, rd)?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    /// Depth of a new binary node over children of depth `l` and `r`.
    fn deeper(&self, l: usize, r: usize) -> Result<usize, ParseError> {
        let d = l.max(r) + 1;
        if d > MAX_DEPTH {
            return Err(self.error(ParseErrorKind::TooDeep));
        }
        Ok(d)
    }

    fn factor(&mut self) -> Result<(Expr, usize), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                if self.nesting == MAX_DEPTH {
                    return Err(self.error(ParseErrorKind::TooDeep));
                }
                self.pos += 1;
                self.nesting += 1;
                let e = self.expr()?;
                self.nesting -= 1;
                self.eat(b')', "`)`")?;
                Ok(e)
            }
            Some(b'[') => Ok((self.interval()?, 0)),
            Some(c) if c == b'-' || c == b'+' || c == b'.' || c.is_ascii_digit() => {
                Ok((Expr::Number(self.number()?), 0))
            }
            _ => Err(self.expected("a number, `[` or `(`")),
        }
    }

    fn interval(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        self.pos += 1;
        self.skip_ws();
        let lower = self.number()?;
        self.eat(b',', "`,`")?;
        self.skip_ws();
        let upper = self.number()?;
        self.eat(b']', "`]`")?;
        GreyNumber::new(lower, upper)
            .map(Expr::Interval)
            .map_err(|_| ParseError {
                offset: start,
                kind: ParseErrorKind::InvalidInterval(format!("[{lower}, {upper}]")),
            })
    }

    /// `[+-]? (digits ('.' digits?)? | '.' digits) ([eE] [+-]? digits)?`
    fn number(&mut self) -> Result<f64, ParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos - s
        };

        if matches!(self.peek(), Some(b'+' | b'-')) {
            self.pos += 1;
        }
        let mut mantissa = digits(self);
        if self.peek() == Some(b'.') {
            self.pos += 1;
            mantissa += digits(self);
        }
        if mantissa == 0 {
            return Err(self.expected("a number"));
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = mark;
                return Err(self.error(ParseErrorKind::Expected("exponent digits")));
            }
        }

        // only ASCII was consumed
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(ParseError {
                offset: start,
                kind: ParseErrorKind::InvalidNumber(text.to_string()),
            }),
        }
    }
}

/// Parses and evaluates in one step.
pub fn evaluate(text: &str) -> Result<GreyNumber, CalcError> {
    Ok(parse(text)?.eval()?)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalcError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
