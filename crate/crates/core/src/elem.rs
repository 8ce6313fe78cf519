//! The universal element type shared by all coded orders.

use std::fmt;

use crate::exp_derivative::ETerm;
use crate::ordinal::Ordinal;

/// An element of some coded order.
///
/// Which variants are legal depends on the order: `Nat` for finite orders and
/// atoms, `Ord` for ordinals-as-orders, `Bot` for the fresh minimum of `1+X`
/// (and the bottom of `F(X)`), `Pair` for `(1+X)²` and `F(X)`, `Seq` for
/// `2^X`, `Ext` for `⟨a, σ⟩ ∈ D^T(X)` and `E` for terms of the exponential
/// dilator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Nat(u64),
    Int(i64),
    Ord(Ordinal),
    Bot,
    Top,
    Pair(Box<Elem>, Box<Elem>),
    Seq(Vec<Elem>),
    Ext(Vec<Elem>, Box<Elem>),
    E(ETerm),
}

impl Elem {
    pub fn pair(x: Elem, y: Elem) -> Self {
        Elem::Pair(Box::new(x), Box::new(y))
    }

    pub fn ext(a: Vec<Elem>, sigma: Elem) -> Self {
        Elem::Ext(a, Box::new(sigma))
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Elem::Nat(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_ext(&self) -> Option<(&[Elem], &Elem)> {
        match self {
            Elem::Ext(a, s) => Some((a, s)),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Elem, &Elem)> {
        match self {
            Elem::Pair(x, y) => Some((x, y)),
            _ => None,
        }
    }
}

fn list(f: &mut fmt::Formatter<'_>, items: &[Elem]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Nat(n) => write!(f, "{n}"),
            Elem::Int(i) => write!(f, "{i}"),
            Elem::Ord(o) => write!(f, "{o}"),
            Elem::Bot => write!(f, "⊥"),
            Elem::Top => write!(f, "⊤"),
            Elem::Pair(x, y) => write!(f, "<{x},{y}>"),
            Elem::Seq(xs) => {
                write!(f, "[")?;
                list(f, xs)?;
                write!(f, "]")
            }
            Elem::Ext(a, s) => {
                write!(f, "<{{")?;
                list(f, a)?;
                write!(f, "}};{s}>")
            }
            Elem::E(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
