//! Text form of [`PolyTrig`] expressions.
//!
//! ```text
//! expr    := term (('+'|'-') term)*
//! term    := unary (('*'|'/') unary)*          division only by constants
//! unary   := ('-'|'+') unary | power
//! power   := primary ('^' uint)*
//! primary := number | 'pi' | var | 'cos(' expr ')' | 'sin(' expr ')'
//!          | 'exp2pii(' expr ')' | '(' expr ')'
//! var     := letter uint                       e.g. x1, i2, j3
//! ```
//!
//! Integers and ratios of integers are exact; literals with a decimal point or
//! exponent are floats. The arguments of `cos`/`sin` must be `2π·(integer
//! linear form) + constant`, and the argument of `exp2pii` an integer linear
//! form plus a constant.

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::expr::{PolyTrig, Wave};
use super::scalar::{qi, unit_turn, Scalar, Q};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("non-integer frequency at offset {offset}: {message}")]
    NonIntegerFrequency { offset: usize, message: String },
    #[error("variable {name} at offset {offset} exceeds dimension {dim}")]
    DimensionMismatch {
        offset: usize,
        name: String,
        dim: usize,
    },
}

/// Variable groups of an expression, e.g. `x1..x3` followed by `i1..i3`.
/// Variables are numbered consecutively across groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarScheme {
    groups: Vec<(char, usize)>,
}

impl VarScheme {
    pub fn new(groups: &[(char, usize)]) -> Self {
        VarScheme {
            groups: groups.to_vec(),
        }
    }

    /// Only `x1..xd`.
    pub fn spatial(d: usize) -> Self {
        Self::new(&[('x', d)])
    }

    pub fn dim(&self) -> usize {
        self.groups.iter().map(|g| g.1).sum()
    }

    fn index_of(&self, letter: char, idx: usize) -> Option<Result<usize, usize>> {
        let mut base = 0;
        for &(c, n) in &self.groups {
            if c == letter {
                return Some(if idx >= 1 && idx <= n {
                    Ok(base + idx - 1)
                } else {
                    Err(n)
                });
            }
            base += n;
        }
        None
    }
}

/// Parse an expression in the variables `x1..xd`.
pub fn parse_expr(text: &str, d: usize) -> Result<PolyTrig, ParseError> {
    parse_with(text, &VarScheme::spatial(d))
}

pub fn parse_with(text: &str, scheme: &VarScheme) -> Result<PolyTrig, ParseError> {
    let tokens = lex(text, scheme)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        dim: scheme.dim(),
    };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        _ => Err(p.syntax("unexpected input")),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(Q),
    Float(f64),
    Pi,
    Var(usize),
    Func(Func),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    /// An identifier that failed to resolve; reported when the parser reaches
    /// it, so that lexical errors later in the text take precedence.
    Bad(Box<ParseError>),
    End,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Func {
    Cos,
    Sin,
    Exp2pii,
}

fn lex(text: &str, scheme: &VarScheme) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, start));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut is_float = false;
            if i < bytes.len() && bytes[i] == b'.' {
                is_float = true;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    is_float = true;
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let lit = &text[start..i];
            let tok = if is_float {
                let v: f64 = lit.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    message: format!("bad number {lit:?}"),
                })?;
                Tok::Float(v)
            } else {
                let n: num_bigint::BigInt = lit.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    message: format!("bad number {lit:?}"),
                })?;
                Tok::Int(Q::from_integer(n))
            };
            out.push((tok, start));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word = &text[start..i];
            let tok = match word {
                "pi" => Tok::Pi,
                "cos" => Tok::Func(Func::Cos),
                "sin" => Tok::Func(Func::Sin),
                "exp2pii" => Tok::Func(Func::Exp2pii),
                _ => lex_var(word, start, scheme).unwrap_or_else(|e| Tok::Bad(Box::new(e))),
            };
            out.push((tok, start));
            continue;
        }
        return Err(ParseError::Syntax {
            offset: start,
            message: format!(
                "unexpected character {:?}",
                text[start..].chars().next().unwrap_or('?')
            ),
        });
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

fn lex_var(word: &str, offset: usize, scheme: &VarScheme) -> Result<Tok, ParseError> {
    let mut chars = word.chars();
    let letter = chars.next().unwrap_or(' ');
    let digits = chars.as_str();
    let unknown = || ParseError::Syntax {
        offset,
        message: format!("unknown identifier {word:?}"),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(unknown());
    }
    let idx: usize = digits.parse().map_err(|_| unknown())?;
    match scheme.index_of(letter, idx) {
        Some(Ok(v)) => Ok(Tok::Var(v)),
        Some(Err(dim)) => Err(ParseError::DimensionMismatch {
            offset,
            name: word.to_string(),
            dim,
        }),
        None => Err(unknown()),
    }
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    dim: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            message: message.to_string(),
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(&format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<PolyTrig, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyTrig, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let divisor = self.unary()?;
                    let inv = divisor.constant_term().and_then(|c| c.recip()).ok_or_else(|| ParseError::Syntax {
                        offset: at,
                        message: "division only by a nonzero rational multiple of a power of pi or a float".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<PolyTrig, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyTrig, ParseError> {
        let mut base = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let exp = match self.bump() {
                Tok::Int(n) => n.to_integer().to_u32(),
                _ => None,
            };
            let Some(exp) = exp else {
                self.pos -= 1;
                return Err(self.syntax("expected a non-negative integer exponent"));
            };
            base = base.pow(exp);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<PolyTrig, ParseError> {
        let d = self.dim;
        let start = self.offset();
        match self.bump() {
            Tok::Int(n) => Ok(PolyTrig::constant(d, Scalar::rational(n))),
            Tok::Float(v) => Ok(PolyTrig::constant(d, Scalar::float(v))),
            Tok::Pi => Ok(PolyTrig::constant(d, Scalar::pi_multiple(qi(1)))),
            Tok::Var(a) => Ok(PolyTrig::var(d, a)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Func(f) => {
                self.expect(Tok::LParen, "'(' after function name")?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                apply_func(f, &arg, start)
            }
            Tok::Bad(e) => Err(*e),
            Tok::End => Err(ParseError::Syntax {
                offset: start,
                message: "unexpected end of input".into(),
            }),
            _ => Err(ParseError::Syntax {
                offset: start,
                message: "expected a value".into(),
            }),
        }
    }
}

/// Split an argument into per-variable coefficients and a constant; `None`
/// when it is not affine.
fn affine_parts(arg: &PolyTrig) -> Option<(Vec<Scalar>, Scalar)> {
    let d = arg.dim();
    let mut coeffs = vec![Scalar::zero(); d];
    let mut constant = Scalar::zero();
    for (m, c) in arg.terms() {
        if m.freq.iter().any(|k| !k.is_zero()) {
            return None;
        }
        let total: u32 = m.powers.iter().sum();
        match total {
            0 => constant = c.clone(),
            1 => {
                let a = m.powers.iter().position(|&p| p == 1)?;
                coeffs[a] = c.clone();
            }
            _ => return None,
        }
    }
    Some((coeffs, constant))
}

fn integer_coefficient(c: &Scalar, over_two_pi: bool) -> Option<Q> {
    let r = if over_two_pi {
        match c {
            Scalar::Exact { re, im } if im.is_zero() => re.as_pi_multiple()? / qi(2),
            _ => return None,
        }
    } else {
        c.as_rational()?
    };
    if r.is_integer() {
        Some(r)
    } else {
        None
    }
}

fn apply_func(f: Func, arg: &PolyTrig, offset: usize) -> Result<PolyTrig, ParseError> {
    let d = arg.dim();
    let bad = |message: &str| ParseError::NonIntegerFrequency {
        offset,
        message: message.to_string(),
    };
    let (coeffs, constant) =
        affine_parts(arg).ok_or_else(|| bad("argument must be affine in the variables"))?;
    let over_two_pi = f != Func::Exp2pii;
    let mut freq = Vec::with_capacity(d);
    for c in &coeffs {
        if c.is_zero() {
            freq.push(Q::zero());
            continue;
        }
        let k = integer_coefficient(c, over_two_pi).ok_or_else(|| {
            bad(if over_two_pi {
                "variable coefficients must be 2*pi times an integer"
            } else {
                "variable coefficients must be integers"
            })
        })?;
        freq.push(k);
    }
    // Constant phase as a fraction of a full turn.
    let turn = if over_two_pi {
        constant.shift_pi(-1).scale_q(&Q::new(1.into(), 2.into()))
    } else {
        constant
    };
    let (cp, sp) = unit_turn(&turn);
    let zero = vec![0; d];
    let mut out = PolyTrig::zero(d);
    match f {
        Func::Cos => {
            out.push(zero.clone(), freq.clone(), Wave::Cos, cp);
            out.push(zero, freq, Wave::Sin, -sp);
        }
        Func::Sin => {
            out.push(zero.clone(), freq.clone(), Wave::Cos, sp);
            out.push(zero, freq, Wave::Sin, cp);
        }
        Func::Exp2pii => {
            let phase = &cp + &(&Scalar::imag_unit() * &sp);
            out = PolyTrig::character(d, freq).scale(&phase);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytrig::scalar::q;

    #[test]
    fn literal_product() {
        let p = parse_expr("2*pi*3*x1", 2).unwrap();
        assert_eq!(
            p,
            PolyTrig::monomial(2, vec![1, 0], Scalar::pi_multiple(qi(6)))
        );
    }

    #[test]
    fn euler_expansion() {
        let p = parse_expr("x2*cos(2*pi*x1)", 2).unwrap();
        let terms = p.exponential_terms();
        assert_eq!(terms.len(), 2);
        for (powers, freq, c) in &terms {
            assert_eq!(powers, &vec![0, 1]);
            assert!(freq == &vec![qi(1), qi(0)] || freq == &vec![qi(-1), qi(0)]);
            assert_eq!(c, &Scalar::rational(q(1, 2)));
        }
    }

    #[test]
    fn bad_character_offset() {
        match parse_expr("exp是", 2) {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_fractional_frequency() {
        assert!(matches!(
            parse_expr("cos(pi*x1)", 2),
            Err(ParseError::NonIntegerFrequency { .. })
        ));
        assert!(matches!(
            parse_expr("exp2pii(x1/2)", 2),
            Err(ParseError::NonIntegerFrequency { .. })
        ));
    }

    #[test]
    fn rejects_out_of_range_variable() {
        assert!(matches!(
            parse_expr("x3", 2),
            Err(ParseError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn phases_and_characters() {
        let p = parse_expr("exp2pii(x1)*exp2pii(-x1)", 1).unwrap();
        assert_eq!(p, PolyTrig::one(1));
        let s = parse_expr("sin(2*pi*x1 + pi/2)", 1).unwrap();
        assert_eq!(s, parse_expr("cos(2*pi*x1)", 1).unwrap());
        let i = parse_expr("exp2pii(1/4)", 1).unwrap();
        assert_eq!(i, PolyTrig::constant(1, Scalar::imag_unit()));
    }

    #[test]
    fn division_and_powers() {
        let p = parse_expr("(x1 + 1)^2/2 - x1^2/2 - x1", 1).unwrap();
        assert_eq!(p, PolyTrig::constant(1, Scalar::rational(q(1, 2))));
        assert!(parse_expr("1/x1", 1).is_err());
        let r = parse_expr("3/pi", 1).unwrap();
        assert_eq!(r, PolyTrig::constant(1, Scalar::pi_monomial(qi(3), -1)));
    }

    #[test]
    fn floats_are_tier_f() {
        let p = parse_expr("0.5*x1", 1).unwrap();
        assert!(!p.is_exact());
    }

    #[test]
    fn scheme_variables() {
        let scheme = VarScheme::new(&[('x', 3), ('i', 3), ('j', 3)]);
        let p = parse_with("-2*pi*j1*i2*x3", &scheme).unwrap();
        assert_eq!(p.dim(), 9);
        let mut powers = vec![0; 9];
        powers[2] = 1;
        powers[4] = 1;
        powers[6] = 1;
        assert_eq!(
            p,
            PolyTrig::monomial(9, powers, Scalar::pi_multiple(qi(-2)))
        );
    }

    #[test]
    fn print_parse_round_trip_examples() {
        for text in [
            "0",
            "x1*x2^3 - 7/3",
            "2*pi*x1 + 1/pi*cos(2*pi*(x1 - 3*x2))",
            "exp2pii(x1 + 2*x2 + 1/4)*x1",
            "pi^2*sin(2*pi*x2) - 1/2*x1^2*cos(2*pi*x1)",
        ] {
            let p = parse_expr(text, 2).unwrap();
            let printed = p.to_string();
            assert_eq!(parse_expr(&printed, 2).unwrap(), p, "{text} -> {printed}");
        }
    }
}
