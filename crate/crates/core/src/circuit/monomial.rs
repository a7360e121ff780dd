//! Nonassociative monomials: full binary trees with variable leaves.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("cannot parse monomial: {0}")]
    Parse(String),
    #[error("a single variable has no top split")]
    SplitOfLeaf,
}

/// A variable `x_i`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(u32);

impl VarId {
    pub fn new(index: usize) -> Self {
        assert!(index >= 1, "variables are numbered from 1");
        VarId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A monomial of F{X}. `(x1 (x2 x1))` and `((x1 x2) x1)` are different
/// monomials; equality is tree equality.
///
/// The ordering is lexicographic on bracket encodings over the alphabet
/// `x1 < x2 < … < ( < )`, so every variable precedes every product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Monomial {
    Var(VarId),
    Node(Arc<Monomial>, Arc<Monomial>),
}

impl Monomial {
    pub fn var(index: usize) -> Self {
        Monomial::Var(VarId::new(index))
    }

    /// The product `(left right)`.
    pub fn product(left: Monomial, right: Monomial) -> Self {
        Monomial::Node(Arc::new(left), Arc::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Monomial::Var(_))
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        match self {
            Monomial::Var(_) => 1,
            Monomial::Node(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn top_split(&self) -> Result<(&Monomial, &Monomial), MonomialError> {
        match self {
            Monomial::Var(_) => Err(MonomialError::SplitOfLeaf),
            Monomial::Node(l, r) => Ok((l, r)),
        }
    }

    /// Largest variable index occurring in the monomial.
    pub fn max_var(&self) -> usize {
        match self {
            Monomial::Var(v) => v.index(),
            Monomial::Node(l, r) => l.max_var().max(r.max_var()),
        }
    }

    /// Swaps left and right children at every node.
    pub fn mirror(&self) -> Monomial {
        match self {
            Monomial::Var(_) => self.clone(),
            Monomial::Node(l, r) => Monomial::product(r.mirror(), l.mirror()),
        }
    }

    /// Distinct subtrees, children before parents; the monomial itself is last.
    pub fn subtrees(&self) -> Vec<Monomial> {
        fn walk(m: &Monomial, out: &mut Vec<Monomial>) {
            if let Monomial::Node(l, r) = m {
                walk(l, out);
                walk(r, out);
            }
            if !out.contains(m) {
                out.push(m.clone());
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Encodings are prefix-free, so comparing children in order is the
        // same as comparing the encoded words.
        match (self, other) {
            (Monomial::Var(a), Monomial::Var(b)) => a.cmp(b),
            (Monomial::Var(_), Monomial::Node(..)) => Ordering::Less,
            (Monomial::Node(..), Monomial::Var(_)) => Ordering::Greater,
            (Monomial::Node(a1, a2), Monomial::Node(b1, b2)) => a1.cmp(b1).then_with(|| a2.cmp(b2)),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Var(v) => write!(f, "{v}"),
            Monomial::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

impl FromStr for Monomial {
    type Err = MonomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(s)?;
        let mut pos = 0;
        let m = parse_tokens(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(MonomialError::Parse(format!("trailing input in `{s}`")));
        }
        Ok(m)
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Var(usize),
}

fn tokenize(s: &str) -> Result<Vec<Token>, MonomialError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'(' => {
                out.push(Token::Open);
                i += 1;
            }
            b')' => {
                out.push(Token::Close);
                i += 1;
            }
            b'x' => {
                let start = i + 1;
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let index: usize =
                    s[start..end].parse().map_err(|_| MonomialError::Parse(format!("bad variable in `{s}`")))?;
                if index == 0 {
                    return Err(MonomialError::Parse("variables are numbered from 1".into()));
                }
                out.push(Token::Var(index));
                i = end;
            }
            other => return Err(MonomialError::Parse(format!("unexpected character `{}` in `{s}`", other as char))),
        }
    }
    Ok(out)
}

fn parse_tokens(tokens: &[Token], pos: &mut usize) -> Result<Monomial, MonomialError> {
    match tokens.get(*pos) {
        Some(Token::Var(i)) => {
            *pos += 1;
            Ok(Monomial::var(*i))
        }
        Some(Token::Open) => {
            *pos += 1;
            let left = parse_tokens(tokens, pos)?;
            let right = parse_tokens(tokens, pos)?;
            match tokens.get(*pos) {
                Some(Token::Close) => {
                    *pos += 1;
                    Ok(Monomial::product(left, right))
                }
                _ => Err(MonomialError::Parse("expected `)`".into())),
            }
        }
        Some(Token::Close) => Err(MonomialError::Parse("unexpected `)`".into())),
        None => Err(MonomialError::Parse("unexpected end of input".into())),
    }
}
