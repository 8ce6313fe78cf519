//! The exponential dilator `E` with `E(X) ≅ ω^(ω^X)` and the upper derivative
//! of `F` built from it.
//!
//! A term of `E(X)` is a two-level normal form `Σᵢ ω^(βᵢ)·cᵢ` with
//! `βᵢ = Σⱼ ω^(xᵢⱼ)·dᵢⱼ` and atoms `xᵢⱼ ∈ X`, both levels strictly decreasing.
//! Every operation here only compares atoms, so it is natural in `X`.
//!
//! `ξ: F∘E ⇒ E` evaluates the rank of `F` symbolically, which makes
//! `(E, ξ)` an upper derivative of `F`. From it we get `ξ^F_X: F(D^E(X)) →
//! D^E(X)` and the embedding `J: 2^X → D^E(X)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Arc;

use thiserror::Error;

use crate::elem::Elem;
use crate::extension::{dext_xi, ext_mu, ext_order, ExtError, ExtOrder, NaturalFamily, Zeta};
use crate::normal_f::{eta, eta_inverse, f_build};
use crate::order::{self, fin, CodedOrder, Order, OrderEmbedding};
use crate::ordinal::{self, Ordinal};
use crate::praedilator::{Dilator, NormalData, PraeDilator};

/// Exponent of an outer term: `Σ ω^(atom)·d` with strictly decreasing atoms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Inner(pub Vec<(Elem, u64)>);

/// `Σ ω^(inner)·c` with strictly decreasing exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ETerm(pub Vec<(Inner, u64)>);

impl Inner {
    pub fn atom(x: Elem) -> Self {
        Inner(vec![(x, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn size(&self) -> u64 {
        self.0.iter().map(|(_, d)| d).sum()
    }
}

impl ETerm {
    pub fn zero() -> Self {
        ETerm(Vec::new())
    }

    pub fn nat(k: u64) -> Self {
        if k == 0 {
            ETerm::zero()
        } else {
            ETerm(vec![(Inner::default(), k)])
        }
    }

    pub fn monomial(inner: Inner, c: u64) -> Self {
        if c == 0 {
            ETerm::zero()
        } else {
            ETerm(vec![(inner, c)])
        }
    }

    /// `ω^(ω^x)`.
    pub fn omega_omega(x: Elem) -> Self {
        ETerm::monomial(Inner::atom(x), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of all coefficients at both levels.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|(b, c)| b.size() + c).sum()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Elem> {
        self.0.iter().flat_map(|(b, _)| b.0.iter().map(|(x, _)| x))
    }

    /// Applies `h` to every atom.
    pub fn rename(&self, h: &dyn Fn(&Elem) -> Elem) -> ETerm {
        ETerm(self.0.iter().map(|(b, c)| (Inner(b.0.iter().map(|(x, d)| (h(x), *d)).collect()), *c)).collect())
    }
}

impl fmt::Display for Inner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (x, d)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match x {
                Elem::Nat(_) => write!(f, "w^{x}")?,
                _ => write!(f, "w^({x})")?,
            }
            if *d > 1 {
                write!(f, "*{d}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ETerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if b.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            write!(f, "w^({b})")?;
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ETerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Normal-form arithmetic on terms, relative to an atom comparison.
#[derive(Clone, Copy)]
pub struct Arith<'a> {
    atoms: &'a dyn Fn(&Elem, &Elem) -> Ordering,
}

impl<'a> Arith<'a> {
    pub fn new(atoms: &'a dyn Fn(&Elem, &Elem) -> Ordering) -> Self {
        Arith { atoms }
    }

    pub fn cmp_inner(&self, a: &Inner, b: &Inner) -> Ordering {
        for ((x, d), (y, e)) in a.0.iter().zip(&b.0) {
            let o = (self.atoms)(x, y).then(d.cmp(e));
            if o != Ordering::Equal {
                return o;
            }
        }
        a.0.len().cmp(&b.0.len())
    }

    pub fn cmp(&self, s: &ETerm, t: &ETerm) -> Ordering {
        for ((a, c), (b, d)) in s.0.iter().zip(&t.0) {
            let o = self.cmp_inner(a, b).then(c.cmp(d));
            if o != Ordering::Equal {
                return o;
            }
        }
        s.0.len().cmp(&t.0.len())
    }

    pub fn is_valid(&self, t: &ETerm) -> bool {
        let inner_ok = |b: &Inner| {
            b.0.iter().all(|(_, d)| *d > 0)
                && b.0.windows(2).all(|w| (self.atoms)(&w[0].0, &w[1].0) == Ordering::Greater)
        };
        t.0.iter().all(|(b, c)| *c > 0 && inner_ok(b))
            && t.0.windows(2).all(|w| self.cmp_inner(&w[0].0, &w[1].0) == Ordering::Greater)
    }

    pub fn add_inner(&self, a: &Inner, b: &Inner) -> Inner {
        let Some((lead, d0)) = b.0.first() else { return a.clone() };
        let mut out: Vec<(Elem, u64)> = Vec::new();
        let mut carry = 0;
        for (x, d) in &a.0 {
            match (self.atoms)(x, lead) {
                Ordering::Greater => out.push((x.clone(), *d)),
                Ordering::Equal => carry = *d,
                Ordering::Less => break,
            }
        }
        out.push((lead.clone(), carry + d0));
        out.extend(b.0[1..].iter().cloned());
        Inner(out)
    }

    pub fn add(&self, s: &ETerm, t: &ETerm) -> ETerm {
        let Some((lead, c0)) = t.0.first() else { return s.clone() };
        let mut out: Vec<(Inner, u64)> = Vec::new();
        let mut carry = 0;
        for (b, c) in &s.0 {
            match self.cmp_inner(b, lead) {
                Ordering::Greater => out.push((b.clone(), *c)),
                Ordering::Equal => carry = *c,
                Ordering::Less => break,
            }
        }
        out.push((lead.clone(), carry + c0));
        out.extend(t.0[1..].iter().cloned());
        ETerm(out)
    }

    /// `t·k` for a natural `k`.
    pub fn mul_nat(&self, t: &ETerm, k: u64) -> ETerm {
        if k == 0 || t.is_zero() {
            return ETerm::zero();
        }
        let mut out = t.clone();
        out.0[0].1 = out.0[0].1.checked_mul(k).expect("coefficient overflow");
        out
    }

    // Σ_{γ<t} (1+γ), term by term
    fn sum_below(&self, t: &ETerm) -> ETerm {
        let mut sum = ETerm::zero();
        let mut prefix = ETerm::zero();
        for (beta, c) in &t.0 {
            let c = *c;
            if beta.is_zero() {
                if prefix.is_zero() {
                    sum = ETerm::nat(c * (c + 1) / 2);
                } else {
                    let tail = self.add(&self.mul_nat(&prefix, c), &ETerm::nat(c - 1));
                    sum = self.add(&sum, &tail);
                }
            } else if prefix.is_zero() {
                let mut pred = beta.clone();
                let last = pred.0.last_mut().unwrap();
                last.1 -= 1;
                if last.1 == 0 {
                    pred.0.pop();
                }
                sum = ETerm::monomial(self.add_inner(&pred, beta), 1);
                sum = self.add(&sum, &ETerm::monomial(self.add_inner(beta, beta), c - 1));
            } else {
                let block = self.add_inner(&prefix.0[0].0, beta);
                sum = self.add(&sum, &ETerm::monomial(block, c));
            }
            prefix = self.add(&prefix, &ETerm::monomial(beta.clone(), c));
        }
        sum
    }

    /// `f̂(t)`: the rank function `f(γ) = 1 + Σ_{δ<γ} (1+δ)` on terms.
    pub fn symbolic_f(&self, t: &ETerm) -> ETerm {
        self.add(&ETerm::nat(1), &self.sum_below(t))
    }
}

fn nat_cmp(a: &Elem, b: &Elem) -> Ordering {
    a.as_nat().cmp(&b.as_nat())
}

/// The ordinal a term denotes, given the ordinals its atoms denote.
pub fn denote_e(t: &ETerm, atom: &dyn Fn(&Elem) -> Option<Ordinal>) -> Option<Ordinal> {
    let mut out = Ordinal::zero();
    for (b, c) in &t.0 {
        let mut exp = Ordinal::zero();
        for (x, d) in &b.0 {
            exp = ordinal::add(&exp, &Ordinal::monomial(atom(x)?, *d));
        }
        out = ordinal::add(&out, &Ordinal::monomial(exp, *c));
    }
    Some(out)
}

/// `f̂` over atoms that are naturals.
pub fn symbolic_f(t: &ETerm) -> ETerm {
    Arith::new(&nat_cmp).symbolic_f(t)
}

/// `E(X)` for an arbitrary coded order.
pub struct EOrder {
    x: Order,
}

pub fn e_order(x: Order) -> Order {
    Arc::new(EOrder { x })
}

fn as_term(e: &Elem) -> &ETerm {
    match e {
        Elem::E(t) => t,
        other => panic!("{other} is not a term of E"),
    }
}

// all inner exponents over `atoms` (descending) with size at most `budget`
fn inners_up_to(atoms: &[Elem], budget: u64) -> Vec<Inner> {
    fn go(atoms: &[Elem], i: usize, budget: u64, cur: &mut Vec<(Elem, u64)>, out: &mut Vec<Inner>) {
        out.push(Inner(cur.clone()));
        for j in i..atoms.len() {
            for d in 1..=budget {
                cur.push((atoms[j].clone(), d));
                go(atoms, j + 1, budget - d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(atoms, 0, budget, &mut Vec::new(), &mut out);
    out
}

fn terms_up_to(inners: &[Inner], budget: u64) -> Vec<ETerm> {
    fn go(inners: &[Inner], i: usize, budget: u64, cur: &mut Vec<(Inner, u64)>, out: &mut Vec<ETerm>) {
        out.push(ETerm(cur.clone()));
        for j in i..inners.len() {
            let cost = inners[j].size();
            for c in 1..=budget.saturating_sub(cost) {
                cur.push((inners[j].clone(), c));
                go(inners, j + 1, budget - cost - c, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(inners, 0, budget, &mut Vec::new(), &mut out);
    out
}

impl CodedOrder for EOrder {
    fn describe(&self) -> String {
        format!("E({})", self.x.describe())
    }

    fn compare(&self, a: &Elem, b: &Elem) -> Ordering {
        let ac = |p: &Elem, q: &Elem| self.x.compare(p, q);
        Arith::new(&ac).cmp(as_term(a), as_term(b))
    }

    fn contains(&self, e: &Elem) -> bool {
        let Elem::E(t) = e else { return false };
        let ac = |p: &Elem, q: &Elem| self.x.compare(p, q);
        t.atoms().all(|x| self.x.contains(x)) && Arith::new(&ac).is_valid(t)
    }

    /// Stage `s` holds the terms of size at most `s` over the first `s` atoms.
    fn enumerate(&self, k: usize) -> Vec<Elem> {
        order::staged_enumerate(self, k, |s| {
            let mut atoms = self.x.enumerate(s);
            atoms.sort_by(|a, b| self.x.compare(b, a));
            let ac = |p: &Elem, q: &Elem| self.x.compare(p, q);
            let arith = Arith::new(&ac);
            let mut inners = inners_up_to(&atoms, s as u64);
            inners.sort_by(|a, b| arith.cmp_inner(b, a));
            terms_up_to(&inners, s as u64).into_iter().map(Elem::E).collect()
        })
    }

    fn size(&self) -> Option<usize> {
        None
    }

    fn order_type(&self) -> Option<Ordinal> {
        self.x.order_type().map(|a| ordinal::f_derivative(&a))
    }

    fn denote(&self, e: &Elem) -> Option<Ordinal> {
        match e {
            Elem::E(t) => denote_e(t, &|x| self.x.denote(x)),
            _ => None,
        }
    }
}

/// `E` as a prae-dilator on finite orders.
pub struct EDilator;

pub fn e_build() -> Dilator {
    Arc::new(EDilator)
}

struct EMu;

impl NormalData for EMu {
    fn mu(&self, _n: usize, m: usize) -> Elem {
        Elem::E(ETerm::omega_omega(Elem::Nat(m as u64)))
    }
}

fn nat(e: &Elem) -> usize {
    e.as_nat().expect("E(n) has natural atoms") as usize
}

impl PraeDilator for EDilator {
    fn name(&self) -> String {
        "E".into()
    }

    fn at(&self, n: usize) -> Order {
        e_order(fin(n))
    }

    fn map(&self, f: &OrderEmbedding, sigma: &Elem) -> Elem {
        Elem::E(as_term(sigma).rename(&|x| Elem::Nat(f.apply(nat(x)) as u64)))
    }

    fn supp(&self, _n: usize, sigma: &Elem) -> Vec<usize> {
        let mut out: Vec<usize> = as_term(sigma).atoms().map(nat).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn normalize(&self, n: usize, sigma: &Elem) -> Option<(Vec<usize>, Elem)> {
        let supp = self.supp(n, sigma);
        if supp.last().is_some_and(|&i| i >= n) {
            return None;
        }
        let pos = |x: &Elem| Elem::Nat(supp.binary_search(&nat(x)).unwrap() as u64);
        let tau = Elem::E(as_term(sigma).rename(&pos));
        Some((supp, tau))
    }

    fn normal(&self) -> Option<Arc<dyn NormalData>> {
        Some(Arc::new(EMu))
    }
}

/// `ξ_n: D^F(E(n)) → E(n)`: `⊥ ↦ 0`, `⟨t,⊥⟩ ↦ f̂(t)`, `⟨t,s⟩ ↦ f̂(t)+1+s`.
pub struct RankXi;

impl NaturalFamily for RankXi {
    fn apply(&self, _n: usize, sigma: &Elem) -> Elem {
        let arith = Arith::new(&nat_cmp);
        let t = eta(sigma).expect("ξ applies to D^F(E(n))");
        let value = match &t {
            Elem::Bot => ETerm::zero(),
            Elem::Pair(x, y) => {
                let ft = arith.symbolic_f(as_term(x));
                match &**y {
                    Elem::Bot => ft,
                    y => arith.add(&arith.add(&ft, &ETerm::nat(1)), as_term(y)),
                }
            }
            other => panic!("{other} is not an element of F(E(n))"),
        };
        Elem::E(value)
    }
}

/// An upper derivative `(S, ξ: F∘S ⇒ S)` of `F`.
#[derive(Clone)]
pub struct UpperDerivative {
    pub s: Dilator,
    pub xi: Arc<dyn NaturalFamily>,
}

pub fn xi_build() -> UpperDerivative {
    UpperDerivative { s: e_build(), xi: Arc::new(RankXi) }
}

/// `ξ^F_X = D^ξ_X ∘ ζ^{F,S}_X ∘ η^{-1}: F(D^S(X)) → D^S(X)`.
pub struct XiF {
    g: UpperDerivative,
    zeta: Zeta,
    dg: Arc<ExtOrder>,
}

pub fn xi_f(x: Order, g: &UpperDerivative) -> XiF {
    XiF { g: g.clone(), zeta: Zeta::new(f_build(), g.s.clone(), x.clone()), dg: ext_order(g.s.clone(), x) }
}

impl XiF {
    pub fn domain(&self) -> Order {
        crate::normal_f::f_order(self.dg.clone())
    }

    pub fn codomain(&self) -> Arc<ExtOrder> {
        self.dg.clone()
    }

    pub fn apply(&self, t: &Elem) -> Result<Elem, ExtError> {
        let e = self.zeta.forward(&eta_inverse(t))?;
        dext_xi(&*self.g.s, &*self.g.xi, &e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JError {
    #[error("{0} is not an element of {1}")]
    NotAnElement(Elem, String),
    #[error("sequence is not strictly descending at {0}, {1}")]
    NotDescending(Elem, Elem),
    #[error(transparent)]
    Ext(#[from] ExtError),
}

/// `J: 2^X → D^S(X)` with `J⟨⟩ = ξ^F(⊥)` and
/// `J⟨x₀, x₁, …⟩ = ξ^F⟨D^μ(x₀), J⟨x₁, …⟩⟩`.
///
/// Whenever `J⟨x₁, …⟩ < D^μ(x₀)` fails the value falls back to `ξ^F(⊥)`;
/// such fallbacks are counted so callers can check that none occur.
pub struct JEmbedding {
    x: Order,
    g: UpperDerivative,
    xi: XiF,
    defaults: AtomicUsize,
}

pub fn j_embed(x: Order, g: &UpperDerivative) -> JEmbedding {
    JEmbedding { xi: xi_f(x.clone(), g), x, g: g.clone(), defaults: AtomicUsize::new(0) }
}

impl JEmbedding {
    pub fn codomain(&self) -> Arc<ExtOrder> {
        self.xi.codomain()
    }

    pub fn defaults_hit(&self) -> usize {
        self.defaults.load(AtomicOrdering::Relaxed)
    }

    /// `D^μ_X(x)` for the derivative's normal structure.
    pub fn mu(&self, x: &Elem) -> Result<Elem, JError> {
        Ok(ext_mu(&*self.g.s, &*self.x, x)?)
    }

    pub fn apply(&self, seq: &[Elem]) -> Result<Elem, JError> {
        if let Some(bad) = seq.iter().find(|e| !self.x.contains(e)) {
            return Err(JError::NotAnElement(bad.clone(), self.x.describe()));
        }
        if let Some(w) = seq.windows(2).find(|w| !self.x.less(&w[1], &w[0])) {
            return Err(JError::NotDescending(w[0].clone(), w[1].clone()));
        }
        let dg = self.codomain();
        let bottom = self.xi.apply(&Elem::Bot)?;
        let mut value = bottom.clone();
        for x in seq.iter().rev() {
            let m = self.mu(x)?;
            if dg.less(&value, &m) {
                value = self.xi.apply(&Elem::pair(m, value))?;
            } else {
                self.defaults.fetch_add(1, AtomicOrdering::Relaxed);
                value = bottom.clone();
            }
        }
        Ok(value)
    }

    /// `J(σ) < D^μ(x)` whenever `σ` is empty or starts below `x`.
    pub fn invariant_holds(&self, seq: &[Elem], x: &Elem) -> Result<bool, JError> {
        if seq.first().is_some_and(|h| !self.x.less(h, x)) {
            return Ok(true);
        }
        Ok(self.codomain().less(&self.apply(seq)?, &self.mu(x)?))
    }
}
