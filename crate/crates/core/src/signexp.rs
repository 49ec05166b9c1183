//! Finite sign expansions: the tree view of dyadic surreals.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gameform::{Context, FormId};
use crate::numeric::Dyadic;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    /// Position in `− ≺ undefined ≺ +`.
    fn rank(s: Option<Sign>) -> u8 {
        match s {
            Some(Sign::Minus) => 0,
            None => 1,
            Some(Sign::Plus) => 2,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SignExpansion {
    signs: Vec<Sign>,
}

impl SignExpansion {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignExpansion { signs }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn push(&mut self, s: Sign) {
        self.signs.push(s);
    }

    pub fn negate(&self) -> SignExpansion {
        SignExpansion {
            signs: self.signs.iter().map(|s| s.flip()).collect(),
        }
    }

    /// Walks the binary tree from 0: each `+` moves right, each `−` left.
    pub fn to_dyadic(&self) -> Dyadic {
        let mut nav = TreeCursor::root();
        for &s in &self.signs {
            nav.step(s);
        }
        nav.value
    }

    pub fn from_dyadic(d: &Dyadic) -> SignExpansion {
        let mut nav = TreeCursor::root();
        let mut out = SignExpansion::default();
        while nav.value != *d {
            let s = if *d > nav.value { Sign::Plus } else { Sign::Minus };
            nav.step(s);
            out.push(s);
        }
        out
    }

    pub fn to_canonical_form(&self, ctx: &mut Context) -> FormId {
        ctx.dyadic(&self.to_dyadic())
    }
}

/// A node of the dyadic tree together with the open interval of its subtree.
struct TreeCursor {
    value: Dyadic,
    lower: Option<Dyadic>,
    upper: Option<Dyadic>,
}

impl TreeCursor {
    fn root() -> Self {
        TreeCursor {
            value: Dyadic::zero(),
            lower: None,
            upper: None,
        }
    }

    fn step(&mut self, s: Sign) {
        match s {
            Sign::Plus => self.lower = Some(self.value.clone()),
            Sign::Minus => self.upper = Some(self.value.clone()),
        }
        self.value = match (&self.lower, &self.upper) {
            (Some(l), None) => l + &Dyadic::one(),
            (None, Some(u)) => u - &Dyadic::one(),
            (Some(l), Some(u)) => (l + u).half(),
            (None, None) => unreachable!("a step always fixes one bound"),
        };
    }
}

/// Lexicographic order with `− ≺ undefined ≺ +`.
impl Ord for SignExpansion {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.len().max(other.len());
        for i in 0..n {
            let a = self.signs.get(i).copied();
            let b = other.signs.get(i).copied();
            if a != b {
                return Sign::rank(a).cmp(&Sign::rank(b));
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for SignExpansion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn lex_cmp(x: &SignExpansion, y: &SignExpansion) -> Ordering {
    x.cmp(y)
}

impl fmt::Display for SignExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for SignExpansion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '+' => Ok(Sign::Plus),
                '-' | '−' => Ok(Sign::Minus),
                _ => Err(Error::Syntax {
                    column: i + 1,
                    message: format!("unexpected {c:?} in sign expansion"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignExpansion::new)
    }
}

/// All sign expansions of exactly `len` signs, in lexicographic bit order.
pub fn all_of_length(len: usize) -> impl Iterator<Item = SignExpansion> {
    (0u64..(1u64 << len)).map(move |bits| {
        SignExpansion::new(
            (0..len)
                .map(|i| if bits >> (len - 1 - i) & 1 == 1 { Sign::Plus } else { Sign::Minus })
                .collect(),
        )
    })
}
