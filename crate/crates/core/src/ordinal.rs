//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `ω^β₁·c₁ + … + ω^βₖ·cₖ` with strictly
//! decreasing exponents and positive coefficients. The representation is
//! canonical, so structural equality is ordinal equality and the derived
//! lexicographic order on the term list is the ordinal order.
//!
//! Besides the usual arithmetic this module evaluates the normal functions
//!
//! - `f(0) = 1`, `f(α+1) = f(α)+1+α`, continuous at limits,
//! - `g(0) = 1`, `g(α+1) = (α+1)·2`, continuous at limits,
//!
//! in closed form, together with their derivatives `f′(α) = ω^(ω^α)` and
//! `g′(α) = ω^(1+α)`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("exponents must be strictly decreasing")]
    NotDecreasing,
    #[error("coefficients must be positive")]
    ZeroCoefficient,
    #[error("{0} is not a limit ordinal")]
    NotLimit(Ordinal),
}

/// One summand `ω^exponent · coefficient` of a Cantor normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub exponent: Ordinal,
    pub coefficient: u64,
}

/// An ordinal below ε₀ in Cantor normal form.
///
/// Field order matters: the derived `Ord` compares the term vectors
/// lexicographically, which is exactly the comparison of normal forms.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// Zero, successor or limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrdKind {
    Zero,
    Successor(Ordinal),
    Limit,
}

fn checked(v: Option<u64>) -> u64 {
    v.expect("ordinal coefficient overflow")
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![Term { exponent: Self::zero(), coefficient: n }] }
        }
    }

    pub fn omega() -> Self {
        omega_pow(&Self::one())
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs, checking the
    /// normal-form invariants.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self, OrdinalError> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(OrdinalError::NotDecreasing);
            }
        }
        if terms.iter().any(|(_, c)| *c == 0) {
            return Err(OrdinalError::ZeroCoefficient);
        }
        Ok(Ordinal { terms: terms.into_iter().map(|(exponent, coefficient)| Term { exponent, coefficient }).collect() })
    }

    /// `ω^exponent · coefficient`; zero when the coefficient is zero.
    pub fn monomial(exponent: Ordinal, coefficient: u64) -> Self {
        if coefficient == 0 {
            return Self::zero();
        }
        Ordinal { terms: vec![Term { exponent, coefficient }] }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    /// Exponent of the leading term; zero for the ordinal zero.
    pub fn leading_exponent(&self) -> Ordinal {
        self.terms.first().map(|t| t.exponent.clone()).unwrap_or_default()
    }

    /// Number of symbols in the normal form: coefficients plus exponent sizes.
    pub fn size(&self) -> u64 {
        self.terms
            .iter()
            .map(|t| if t.exponent.is_zero() { t.coefficient } else { t.exponent.size() + t.coefficient })
            .sum()
    }

    pub fn classify(&self) -> OrdKind {
        match self.terms.last() {
            None => OrdKind::Zero,
            Some(t) if t.exponent.is_zero() => {
                let mut pred = self.clone();
                let last = pred.terms.last_mut().unwrap();
                last.coefficient -= 1;
                if last.coefficient == 0 {
                    pred.terms.pop();
                }
                OrdKind::Successor(pred)
            }
            Some(_) => OrdKind::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.classify() == OrdKind::Limit
    }

    pub fn succ(&self) -> Self {
        add(self, &Self::one())
    }

    /// Splits `self = ν + ω^β` where the last term's coefficient is reduced by
    /// one to form `ν`. Returns `None` for zero.
    fn split_last(&self) -> Option<(Ordinal, Ordinal)> {
        let last = self.terms.last()?;
        let mut head = self.clone();
        let l = head.terms.last_mut().unwrap();
        l.coefficient -= 1;
        if l.coefficient == 0 {
            head.terms.pop();
        }
        Some((head, last.exponent.clone()))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

pub fn cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

pub fn add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let Some(head) = b.terms.first() else {
        return a.clone();
    };
    let mut terms: Vec<Term> = a.terms.iter().take_while(|t| t.exponent > head.exponent).cloned().collect();
    let mut rest = b.terms.iter().cloned();
    if let Some(equal) = a.terms.iter().find(|t| t.exponent == head.exponent) {
        let first = rest.next().unwrap();
        terms.push(Term {
            exponent: first.exponent,
            coefficient: checked(equal.coefficient.checked_add(first.coefficient)),
        });
    }
    terms.extend(rest);
    Ordinal { terms }
}

pub fn mul(a: &Ordinal, b: &Ordinal) -> Ordinal {
    if a.is_zero() || b.is_zero() {
        return Ordinal::zero();
    }
    let lead = a.leading_exponent();
    let mut out = Ordinal::zero();
    for t in &b.terms {
        let part = if t.exponent.is_zero() {
            // α·c multiplies only the leading coefficient
            let mut p = a.clone();
            p.terms[0].coefficient = checked(p.terms[0].coefficient.checked_mul(t.coefficient));
            p
        } else {
            Ordinal::monomial(add(&lead, &t.exponent), t.coefficient)
        };
        out = add(&out, &part);
    }
    out
}

pub fn omega_pow(a: &Ordinal) -> Ordinal {
    Ordinal::monomial(a.clone(), 1)
}

/// `2^a`, computed as `ω^q · 2^r` for `a = ω·q + r` with `r` finite.
pub fn two_pow(a: &Ordinal) -> Ordinal {
    let mut q = Vec::new();
    let mut r = 0u64;
    for t in &a.terms {
        if t.exponent.is_zero() {
            r = t.coefficient;
        } else {
            // the unique e' with 1 + e' = e
            let e = match t.exponent.as_nat() {
                Some(k) => Ordinal::nat(k - 1),
                None => t.exponent.clone(),
            };
            q.push(Term { exponent: e, coefficient: t.coefficient });
        }
    }
    let r = u32::try_from(r).ok().and_then(|r| 2u64.checked_pow(r));
    mul(&omega_pow(&Ordinal { terms: q }), &Ordinal::nat(checked(r)))
}

pub fn square(a: &Ordinal) -> Ordinal {
    mul(a, a)
}

/// `a` is a positive ordinal closed under addition, i.e. of the form `ω^β`.
pub fn is_add_principal(a: &Ordinal) -> bool {
    matches!(a.terms.as_slice(), [t] if t.coefficient == 1)
}

/// `a` is a positive ordinal closed under multiplication: 1, 2 or `ω^(ω^β)`.
pub fn is_mult_principal(a: &Ordinal) -> bool {
    if a.as_nat().is_some_and(|n| n == 1 || n == 2) {
        return true;
    }
    matches!(a.terms.as_slice(), [t] if t.coefficient == 1 && !t.exponent.is_zero() && is_add_principal(&t.exponent))
}

/// Canonical fundamental sequence of a limit ordinal.
pub fn fund_seq(l: &Ordinal, n: u64) -> Result<Ordinal, OrdinalError> {
    if !l.is_limit() {
        return Err(OrdinalError::NotLimit(l.clone()));
    }
    let (head, exponent) = l.split_last().unwrap();
    Ok(add(&head, &omega_pow_fund(&exponent, n)))
}

// ω^e[n] for e > 0
fn omega_pow_fund(e: &Ordinal, n: u64) -> Ordinal {
    match e.classify() {
        OrdKind::Successor(p) => Ordinal::monomial(p, n),
        OrdKind::Limit => omega_pow(&fund_seq(e, n).unwrap()),
        OrdKind::Zero => unreachable!("ω^0 is not a limit"),
    }
}

/// `Σ_{γ<a} (1+γ)`, so that `f(a) = 1 + sum_below(a)`.
fn sum_below(a: &Ordinal) -> Ordinal {
    let mut sum = Ordinal::zero();
    let mut prefix = Ordinal::zero();
    for t in &a.terms {
        let c = t.coefficient;
        if t.exponent.is_zero() {
            if prefix.is_zero() {
                sum = Ordinal::nat(checked(c.checked_mul(c + 1)) / 2);
            } else {
                // (μ+0) + (μ+1) + … + (μ+c−1) for infinite μ
                sum = add(&sum, &add(&mul(&prefix, &Ordinal::nat(c)), &Ordinal::nat(c - 1)));
            }
        } else if prefix.is_zero() {
            // Σ over γ < ω^β, then c−1 further blocks of ω^(β+β) each
            let (pred, _) = t.exponent.split_last().unwrap();
            sum = omega_pow(&add(&pred, &t.exponent));
            let block = add(&t.exponent, &t.exponent);
            sum = add(&sum, &Ordinal::monomial(block, c - 1));
        } else {
            let block = add(&prefix.leading_exponent(), &t.exponent);
            sum = add(&sum, &Ordinal::monomial(block, c));
        }
        prefix = add(&prefix, &Ordinal::monomial(t.exponent.clone(), c));
    }
    sum
}

/// `f(a) = 1 + Σ_{γ<a} (1+γ)`.
pub fn f_eval(a: &Ordinal) -> Ordinal {
    add(&Ordinal::one(), &sum_below(a))
}

/// `g(0) = 1`, `g(α+1) = (α+1)·2` and `g(ν+ω^β) = ν + (ν+ω^β)` at limits.
pub fn g_eval(a: &Ordinal) -> Ordinal {
    match a.classify() {
        OrdKind::Zero => Ordinal::one(),
        OrdKind::Successor(_) => mul(a, &Ordinal::nat(2)),
        OrdKind::Limit => {
            let (head, _) = a.split_last().unwrap();
            add(&head, a)
        }
    }
}

pub fn f_derivative(a: &Ordinal) -> Ordinal {
    omega_pow(&omega_pow(a))
}

pub fn g_derivative(a: &Ordinal) -> Ordinal {
    omega_pow(&add(&Ordinal::one(), a))
}

/// All ordinals below `bound` whose normal form has the given [`Ordinal::size`],
/// in increasing order.
pub fn ordinals_of_size_below(size: u64, bound: &Ordinal) -> Vec<Ordinal> {
    if bound.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<Ordinal> =
        of_size(size, None, &bound.leading_exponent()).into_iter().filter(|o| o < bound).collect();
    out.sort();
    out
}

// Ordinals of exact size `s` whose exponents are `< exp_below` and `<= cap`.
fn of_size(s: u64, exp_below: Option<&Ordinal>, cap: &Ordinal) -> Vec<Ordinal> {
    if s == 0 {
        return vec![Ordinal::zero()];
    }
    let mut out = Vec::new();
    if exp_below.is_none_or(|b| !b.is_zero()) {
        out.push(Ordinal::nat(s));
    }
    if cap.is_zero() || exp_below.is_some_and(|b| *b == Ordinal::one()) {
        // only the finite ordinal remains; recursing would be exponential
        return out;
    }
    for exp_size in 1..s {
        for e in of_size(exp_size, None, &cap.leading_exponent()) {
            if e.is_zero() || &e > cap || exp_below.is_some_and(|b| &e >= b) {
                continue;
            }
            for c in 1..=(s - exp_size) {
                for rest in of_size(s - exp_size - c, Some(&e), cap) {
                    let mut terms = vec![Term { exponent: e.clone(), coefficient: c }];
                    terms.extend(rest.terms);
                    out.push(Ordinal { terms });
                }
            }
        }
    }
    out
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            if t.exponent == Ordinal::one() {
                write!(f, "w")?;
            } else if t.exponent.is_finite() || is_add_principal(&t.exponent) {
                // `^` is right associative and binds tighter than `*`
                write!(f, "w^{}", t.exponent)?;
            } else {
                write!(f, "w^({})", t.exponent)?;
            }
            if t.coefficient > 1 {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
