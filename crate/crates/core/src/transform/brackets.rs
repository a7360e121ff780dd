//! Bracket encoding: a nonassociative monomial becomes a word over the
//! variables and two extra letters `(` and `)`. `((x1 x2) x2)` encodes as
//! `( ( x1 x2 ) x2 )`, and a circuit becomes an associative circuit over
//! `n + 2` variables computing the encoded polynomial.

use std::fmt;

use thiserror::Error;

use crate::circuit::{Circuit, CircuitBuilder, Gate, GateId, Monomial, VarId};
use crate::field::Scalar;

/// One letter of an encoded word. Variables sort before `(`, which sorts
/// before `)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Var(VarId),
    Open,
    Close,
}

impl Letter {
    /// The letter for variable index `i` of an encoded circuit over `n + 2`
    /// variables: `n + 1` is `(` and `n + 2` is `)`.
    pub fn from_index(i: usize, n: usize) -> Letter {
        match i {
            _ if i == n + 1 => Letter::Open,
            _ if i == n + 2 => Letter::Close,
            _ => Letter::Var(VarId::new(i)),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Var(v) => write!(f, "{v}"),
            Letter::Open => f.write_str("("),
            Letter::Close => f.write_str(")"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EncodedWord(pub Vec<Letter>);

impl EncodedWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for EncodedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("word ends before the monomial is complete")]
    Truncated,
    #[error("unexpected `{0}` at position {1}")]
    Unexpected(Letter, usize),
    #[error("trailing letters after position {0}")]
    Trailing(usize),
}

pub fn encode_monomial(m: &Monomial) -> EncodedWord {
    fn walk(m: &Monomial, out: &mut Vec<Letter>) {
        match m {
            Monomial::Var(v) => out.push(Letter::Var(*v)),
            Monomial::Node(l, r) => {
                out.push(Letter::Open);
                walk(l, out);
                walk(r, out);
                out.push(Letter::Close);
            }
        }
    }
    let mut out = Vec::with_capacity(3 * m.degree() - 2);
    walk(m, &mut out);
    EncodedWord(out)
}

pub fn decode_word(w: &EncodedWord) -> Result<Monomial, DecodeError> {
    fn parse(w: &[Letter], pos: &mut usize) -> Result<Monomial, DecodeError> {
        let at = *pos;
        match w.get(at) {
            None => Err(DecodeError::Truncated),
            Some(Letter::Var(v)) => {
                *pos += 1;
                Ok(Monomial::Var(*v))
            }
            Some(Letter::Open) => {
                *pos += 1;
                let l = parse(w, pos)?;
                let r = parse(w, pos)?;
                match w.get(*pos) {
                    Some(Letter::Close) => {
                        *pos += 1;
                        Ok(Monomial::product(l, r))
                    }
                    Some(other) => Err(DecodeError::Unexpected(*other, *pos)),
                    None => Err(DecodeError::Truncated),
                }
            }
            Some(Letter::Close) => Err(DecodeError::Unexpected(Letter::Close, at)),
        }
    }
    let mut pos = 0;
    let m = parse(&w.0, &mut pos)?;
    if pos != w.0.len() {
        return Err(DecodeError::Trailing(pos));
    }
    Ok(m)
}

/// The associative circuit over `n + 2` variables computing the encoded
/// polynomial. Each product `u·v` becomes `( · u · v · )`, read as a word.
///
/// Products with a constant operand are not bracketed: the constant part of
/// each gate is tracked separately so that `(1 · y)` encodes as `y`, which is
/// what keeps the encoding injective on polynomials.
pub fn encode_brackets(c: &Circuit) -> Circuit {
    let n = c.num_vars();
    let field = c.field();
    let mut b = CircuitBuilder::new(field, n + 2);
    let open = b.var(n + 1);
    let close = b.var(n + 2);
    // (constant part, gate for the nonconstant part)
    let mut parts: Vec<(Scalar, GateId)> = Vec::with_capacity(c.size());
    for gate in c.gates() {
        let part = match gate {
            Gate::Input(v) => (field.zero(), b.var(v.index())),
            Gate::Const(s) => (s.clone(), b.zero()),
            Gate::Mul(l, r) => {
                let (c0u, pu) = parts[*l].clone();
                let (c0v, pv) = parts[*r].clone();
                let a = b.mul(open, pu);
                let a = b.mul(a, pv);
                let bracketed = b.mul(a, close);
                let left_const = b.scale(&c0u, pv);
                let right_const = b.scale(&c0v, pu);
                (&c0u * &c0v, b.add([bracketed, left_const, right_const]))
            }
            Gate::Add(children) => {
                let c0 = children.iter().fold(field.zero(), |acc, &k| &acc + &parts[k].0);
                let kids: Vec<GateId> = children.iter().map(|&k| parts[k].1).collect();
                (c0, b.add(kids))
            }
        };
        parts.push(part);
    }
    let (c0, p) = parts[c.output()].clone();
    let k = b.constant(c0);
    let root = b.add([p, k]);
    b.extract(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn figure_monomial_encoding() {
        let w = encode_monomial(&m("((x1 x2) x2)"));
        assert_eq!(w.to_string(), "( ( x1 x2 ) x2 )");
        assert_eq!(decode_word(&w).unwrap(), m("((x1 x2) x2)"));
    }

    #[test]
    fn leaf_encoding() {
        let w = encode_monomial(&m("x1"));
        assert_eq!(w.len(), 1);
        assert_eq!(decode_word(&w).unwrap(), m("x1"));
    }

    #[test]
    fn degree_three_bracketings_differ() {
        let a = encode_monomial(&m("((x1 x1) x1)"));
        let b = encode_monomial(&m("(x1 (x1 x1))"));
        assert_ne!(a, b);
        assert_eq!(a.len(), 7);
        assert_eq!(b.len(), 7);
    }

    #[test]
    fn malformed_words() {
        let x = Letter::Var(VarId::new(1));
        let cases = [
            vec![],
            vec![Letter::Open, x, x],
            vec![Letter::Close],
            vec![x, x],
            vec![Letter::Open, x, Letter::Close],
            vec![Letter::Open, x, x, x, Letter::Close],
        ];
        for w in cases {
            assert!(decode_word(&EncodedWord(w.clone())).is_err(), "{w:?}");
        }
    }

    #[test]
    fn word_order_matches_monomial_order() {
        let ms = ["x1", "x2", "(x1 x2)", "(x2 x1)", "((x1 x1) x1)", "(x1 (x1 x1))"];
        for a in ms {
            for b in ms {
                assert_eq!(m(a).cmp(&m(b)), encode_monomial(&m(a)).cmp(&encode_monomial(&m(b))), "{a} {b}");
            }
        }
    }

    #[test]
    fn variable_circuit_is_unchanged() {
        let c = Circuit::variable(FieldSpec::Rationals, 1, 1);
        let e = encode_brackets(&c);
        assert_eq!(e.num_vars(), 3);
        assert_eq!(e.gates(), c.gates());
    }
}
