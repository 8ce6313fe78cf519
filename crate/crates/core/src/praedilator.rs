//! Prae-dilators: functors from the category of finite orders and embeddings
//! to linear orders, equipped with natural supports.
//!
//! Instances are code-level implementations of [`PraeDilator`]. The
//! validators check the defining laws exhaustively over all embeddings
//! between orders of size at most `N`, on the first `K` enumerated elements of
//! each `T(n)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::elem::Elem;
use crate::order::{self, CodedOrder, Order, OrderEmbedding};

/// Bound used by [`search_normalize`] when a dilator does not override
/// [`PraeDilator::normalize`].
pub const DEFAULT_SEARCH_BOUND: usize = 256;

pub trait PraeDilator: Send + Sync {
    fn name(&self) -> String;

    /// The order `T(n)`.
    fn at(&self, n: usize) -> Order;

    /// `T(f)(σ)` for `f: m → n` and `σ ∈ T(m)`.
    fn map(&self, f: &OrderEmbedding, sigma: &Elem) -> Elem;

    /// `supp_n(σ) ⊆ {0, …, n−1}`, sorted.
    fn supp(&self, n: usize, sigma: &Elem) -> Vec<usize>;

    /// Splits `σ ∈ T(n)` into its support and the unique full-support
    /// `τ ∈ T(|supp|)` with `T(en_supp)(τ) = σ`.
    fn normalize(&self, n: usize, sigma: &Elem) -> Option<(Vec<usize>, Elem)> {
        search_normalize(self, n, sigma, DEFAULT_SEARCH_BOUND)
    }

    fn normal(&self) -> Option<Arc<dyn NormalData>> {
        None
    }
}

/// The embeddings `μ_n: n → T(n)` of a normal prae-dilator.
pub trait NormalData: Send + Sync {
    fn mu(&self, n: usize, m: usize) -> Elem;
}

pub type Dilator = Arc<dyn PraeDilator>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DilatorError {
    #[error("unknown dilator `{0}`")]
    UnknownName(String),
    #[error("dilator {0} has no normal structure")]
    NotNormal(String),
}

/// Support normalization by bounded search among the first `bound` elements
/// of `T(|supp|)`.
pub fn search_normalize<T: PraeDilator + ?Sized>(
    t: &T,
    n: usize,
    sigma: &Elem,
    bound: usize,
) -> Option<(Vec<usize>, Elem)> {
    let supp = t.supp(n, sigma);
    let en = OrderEmbedding::enumerating(n, &supp).ok()?;
    let found = t.at(supp.len()).enumerate(bound).into_iter().find(|tau| t.map(&en, tau) == *sigma)?;
    Some((supp, found))
}

/// The `ρ ∈ T(m)` with `T(f)(ρ) = σ`, if `supp(σ)` lies in the image of `f: m → n`.
pub fn preimage(t: &dyn PraeDilator, f: &OrderEmbedding, sigma: &Elem) -> Option<Elem> {
    let (supp, tau) = t.normalize(f.cod(), sigma)?;
    let positions: Option<Vec<usize>> = supp.iter().map(|&j| f.preimage(j)).collect();
    let g = OrderEmbedding::new(supp.len(), f.dom(), positions?).ok()?;
    Some(t.map(&g, &tau))
}

pub fn has_full_support(t: &dyn PraeDilator, n: usize, sigma: &Elem) -> bool {
    t.supp(n, sigma).iter().copied().eq(0..n)
}

/// The defining law a [`Violation`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    Membership,
    LinearOrder,
    Identity,
    Composition,
    OrderPreservation,
    SuppNaturality,
    SupportCondition,
    MuMembership,
    MuIncreasing,
    MuNaturality,
    MuBiconditional,
    MuSupport,
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub law: Law,
    pub witness: String,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, law: Law) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    fn check(&mut self, ok: bool, law: Law, witness: impl FnOnce() -> String) {
        self.checks += 1;
        // keep reports readable on badly broken instances
        if !ok && self.violations.iter().filter(|v| v.law == law).count() < 16 {
            self.violations.push(Violation { law, witness: witness() });
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass ({} checks)", self.checks);
        }
        writeln!(f, "FAIL ({} checks, {} violations)", self.checks, self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {:?}: {}", v.law, v.witness)?;
        }
        Ok(())
    }
}

fn sorted_prefix(t: &dyn PraeDilator, n: usize, k: usize) -> (Order, Vec<Elem>) {
    let order = t.at(n);
    let mut elems = order.enumerate(k);
    elems.sort_by(|a, b| order.compare(a, b));
    (order, elems)
}

/// Checks functoriality, order preservation, naturality of supports and the
/// support condition for all `n ≤ max_n` on the first `k` elements of each `T(n)`.
pub fn validate_praedilator(t: &dyn PraeDilator, max_n: usize, k: usize) -> Report {
    let mut report = Report::default();
    let prefixes: Vec<(Order, Vec<Elem>)> = (0..=max_n).map(|n| sorted_prefix(t, n, k)).collect();

    for (n, (order, elems)) in prefixes.iter().enumerate() {
        for w in elems.windows(2) {
            report.check(
                order.compare(&w[0], &w[1]) == Ordering::Less && order.compare(&w[1], &w[0]) == Ordering::Greater,
                Law::LinearOrder,
                || format!("T({n}): {} and {} not strictly ordered", w[0], w[1]),
            );
        }
        let id = OrderEmbedding::identity(n);
        for sigma in elems {
            report.check(order.contains(sigma), Law::Membership, || format!("{sigma} ∉ T({n})"));
            report.check(t.map(&id, sigma) == *sigma, Law::Identity, || format!("T(id_{n})({sigma}) ≠ {sigma}"));
            let supp = t.supp(n, sigma);
            report.check(
                supp.windows(2).all(|w| w[0] < w[1]) && supp.iter().all(|&i| i < n),
                Law::SuppNaturality,
                || format!("supp_{n}({sigma}) = {supp:?} is not a subset of {n}"),
            );
            let found = search_normalize(t, n, sigma, k);
            report.check(found.is_some(), Law::SupportCondition, || {
                format!("{sigma} ∈ T({n}) has no preimage along en over supp {supp:?} within {k} elements")
            });
        }
        for (m, (_, small)) in prefixes.iter().enumerate().take(n + 1) {
            for f in order::enumerate_all(m, n) {
                let images: Vec<Elem> = small.iter().map(|s| t.map(&f, s)).collect();
                for (s, img) in small.iter().zip(&images) {
                    report.check(order.contains(img), Law::Membership, || format!("T({f:?})({s}) = {img} ∉ T({n})"));
                    let want: Vec<usize> = t.supp(m, s).iter().map(|&i| f.apply(i)).collect();
                    let got = t.supp(n, img);
                    report.check(want == got, Law::SuppNaturality, || {
                        format!("supp(T({f:?})({s})) = {got:?}, expected {want:?}")
                    });
                }
                for (i, w) in images.windows(2).enumerate() {
                    report.check(order.less(&w[0], &w[1]), Law::OrderPreservation, || {
                        format!("T({f:?}) maps {} < {} to {} ≮ {}", small[i], small[i + 1], w[0], w[1])
                    });
                }
                for p in n..=max_n {
                    for g in order::enumerate_all(n, p) {
                        let gf = f.then(&g).unwrap();
                        for (s, img) in small.iter().zip(&images) {
                            report.check(t.map(&gf, s) == t.map(&g, img), Law::Composition, || {
                                format!("T({gf:?})({s}) ≠ T({g:?})(T({f:?})({s}))")
                            });
                        }
                    }
                }
            }
        }
    }
    report
}

/// Checks the normality laws: each `μ_n` is a natural strictly increasing map
/// with `σ < μ_n(m) ⇔ supp_n(σ) ⊆ m`.
pub fn validate_normal(t: &dyn PraeDilator, mu: &dyn NormalData, max_n: usize, k: usize) -> Report {
    let mut report = Report::default();
    for n in 0..=max_n {
        let (order, elems) = sorted_prefix(t, n, k);
        let mus: Vec<Elem> = (0..n).map(|m| mu.mu(n, m)).collect();
        for (m, x) in mus.iter().enumerate() {
            report.check(order.contains(x), Law::MuMembership, || format!("μ_{n}({m}) = {x} ∉ T({n})"));
        }
        for (m, w) in mus.windows(2).enumerate() {
            report.check(order.less(&w[0], &w[1]), Law::MuIncreasing, || format!("μ_{n}({m}) ≮ μ_{n}({})", m + 1));
        }
        for sigma in &elems {
            let supp = t.supp(n, sigma);
            for (m, x) in mus.iter().enumerate() {
                let below = order.less(sigma, x);
                let inside = supp.iter().all(|&i| i < m);
                report.check(below == inside, Law::MuBiconditional, || {
                    format!("σ = {sigma} with supp {supp:?}: σ < μ_{n}({m}) is {below}, supp ⊆ {m} is {inside}")
                });
            }
        }
        for m in 0..=n {
            for f in order::enumerate_all(m, n) {
                for i in 0..m {
                    let lhs = t.map(&f, &mu.mu(m, i));
                    let rhs = &mus[f.apply(i)];
                    report.check(lhs == *rhs, Law::MuNaturality, || format!("T({f:?})(μ_{m}({i})) = {lhs} ≠ {rhs}"));
                }
            }
        }
    }
    if max_n >= 1 {
        let s = t.supp(1, &mu.mu(1, 0));
        report.check(s == vec![0], Law::MuSupport, || format!("supp_1(μ_1(0)) = {s:?}"));
    }
    report
}

/// `T(n) = n`, with singleton supports and `μ_n(m) = m`.
pub struct Identity;

struct IdentityMu;

impl NormalData for IdentityMu {
    fn mu(&self, _n: usize, m: usize) -> Elem {
        Elem::Nat(m as u64)
    }
}

impl PraeDilator for Identity {
    fn name(&self) -> String {
        "identity".into()
    }
    fn at(&self, n: usize) -> Order {
        order::fin(n)
    }
    fn map(&self, f: &OrderEmbedding, sigma: &Elem) -> Elem {
        Elem::Nat(f.apply(sigma.as_nat().expect("identity elements are naturals") as usize) as u64)
    }
    fn supp(&self, _n: usize, sigma: &Elem) -> Vec<usize> {
        vec![sigma.as_nat().unwrap() as usize]
    }
    fn normalize(&self, _n: usize, sigma: &Elem) -> Option<(Vec<usize>, Elem)> {
        Some((vec![sigma.as_nat()? as usize], Elem::Nat(0)))
    }
    fn normal(&self) -> Option<Arc<dyn NormalData>> {
        Some(Arc::new(IdentityMu))
    }
}

/// `T(n) = n + 1`: a copy of `n` below a top element `⊤` of empty support.
pub struct Successor;

struct SuccessorOrder(usize);

impl CodedOrder for SuccessorOrder {
    fn describe(&self) -> String {
        format!("successor({})", self.0)
    }
    fn compare(&self, a: &Elem, b: &Elem) -> Ordering {
        match (a, b) {
            (Elem::Top, Elem::Top) => Ordering::Equal,
            (Elem::Top, _) => Ordering::Greater,
            (_, Elem::Top) => Ordering::Less,
            _ => a.as_nat().cmp(&b.as_nat()),
        }
    }
    fn contains(&self, e: &Elem) -> bool {
        *e == Elem::Top || e.as_nat().is_some_and(|i| (i as usize) < self.0)
    }
    fn enumerate(&self, k: usize) -> Vec<Elem> {
        let mut out: Vec<Elem> = (0..self.0 as u64).map(Elem::Nat).collect();
        out.push(Elem::Top);
        out.truncate(k);
        out
    }
    fn size(&self) -> Option<usize> {
        Some(self.0 + 1)
    }
}

impl PraeDilator for Successor {
    fn name(&self) -> String {
        "successor".into()
    }
    fn at(&self, n: usize) -> Order {
        Arc::new(SuccessorOrder(n))
    }
    fn map(&self, f: &OrderEmbedding, sigma: &Elem) -> Elem {
        match sigma {
            Elem::Top => Elem::Top,
            Elem::Nat(i) => Elem::Nat(f.apply(*i as usize) as u64),
            other => panic!("{other} is not an element of a successor order"),
        }
    }
    fn supp(&self, _n: usize, sigma: &Elem) -> Vec<usize> {
        match sigma {
            Elem::Nat(i) => vec![*i as usize],
            _ => Vec::new(),
        }
    }
}

/// `T(n) = c` for every `n`, all supports empty.
pub struct Constant(pub usize);

impl PraeDilator for Constant {
    fn name(&self) -> String {
        format!("constant_{}", self.0)
    }
    fn at(&self, _n: usize) -> Order {
        order::fin(self.0)
    }
    fn map(&self, _f: &OrderEmbedding, sigma: &Elem) -> Elem {
        sigma.clone()
    }
    fn supp(&self, _n: usize, _sigma: &Elem) -> Vec<usize> {
        Vec::new()
    }
    fn normalize(&self, _n: usize, sigma: &Elem) -> Option<(Vec<usize>, Elem)> {
        Some((Vec::new(), sigma.clone()))
    }
}

/// Looks up `identity`, `successor` or `constant_<c>`.
pub fn zoo(name: &str) -> Result<Dilator, DilatorError> {
    match name {
        "identity" => Ok(Arc::new(Identity)),
        "successor" => Ok(Arc::new(Successor)),
        _ => name
            .strip_prefix("constant_")
            .and_then(|c| c.parse::<usize>().ok())
            .map(|c| Arc::new(Constant(c)) as Dilator)
            .ok_or_else(|| DilatorError::UnknownName(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct FixedMu(Elem);
    impl NormalData for FixedMu {
        fn mu(&self, _n: usize, _m: usize) -> Elem {
            self.0.clone()
        }
    }
    struct NatMu;
    impl NormalData for NatMu {
        fn mu(&self, _n: usize, m: usize) -> Elem {
            Elem::Nat(m as u64)
        }
    }

    /// Identity functor whose supports are always empty.
    struct EmptySupport;
    impl PraeDilator for EmptySupport {
        fn name(&self) -> String {
            "empty-support".into()
        }
        fn at(&self, n: usize) -> Order {
            order::fin(n)
        }
        fn map(&self, f: &OrderEmbedding, sigma: &Elem) -> Elem {
            Identity.map(f, sigma)
        }
        fn supp(&self, _n: usize, _s: &Elem) -> Vec<usize> {
            Vec::new()
        }
    }

    #[test]
    fn zoo_instances_are_praedilators() {
        for name in ["identity", "successor", "constant_0", "constant_2", "constant_3"] {
            let t = zoo(name).unwrap();
            let r = validate_praedilator(&*t, 6, 50);
            assert!(r.passed(), "{name}: {r}");
        }
        assert_eq!(zoo("nope").err(), Some(DilatorError::UnknownName("nope".into())));
        assert!(zoo("constant_x").is_err());
    }

    #[test]
    fn zoo_shapes() {
        assert_eq!(Identity.at(3).enumerate(10).len(), 3);
        let top = Successor.at(0).enumerate(10);
        assert_eq!(top, vec![Elem::Top]);
        assert!(Successor.supp(0, &Elem::Top).is_empty());
        let c = Constant(2);
        let f = OrderEmbedding::new(1, 4, vec![2]).unwrap();
        for s in c.at(1).enumerate(5) {
            assert_eq!(c.map(&f, &s), s);
        }
    }

    #[test]
    fn identity_is_normal() {
        let mu = Identity.normal().unwrap();
        assert!(validate_normal(&Identity, &*mu, 6, 50).passed());
    }

    #[test]
    fn successor_has_no_normal_structure() {
        assert!(Successor.normal().is_none());
        let r = validate_normal(&Successor, &FixedMu(Elem::Top), 4, 50);
        assert!(r.has(Law::MuBiconditional) && r.has(Law::MuIncreasing), "{r}");
        assert!(r.has(Law::MuSupport));
        // even the natural choice μ_n(m) = m fails: ⊤ has empty support but lies above every m
        let r = validate_normal(&Successor, &NatMu, 4, 50);
        assert!(r.has(Law::MuBiconditional), "{r}");
    }

    #[test]
    fn broken_support_is_caught() {
        let r = validate_praedilator(&EmptySupport, 3, 20);
        assert!(r.has(Law::SupportCondition), "{r}");
        assert!(!r.has(Law::Composition));
    }

    #[test]
    fn normalization_matches_search() {
        let t = Identity;
        for n in 0..5 {
            for s in t.at(n).enumerate(10) {
                assert_eq!(t.normalize(n, &s), search_normalize(&t, n, &s, 10));
            }
        }
        let f = OrderEmbedding::new(2, 4, vec![1, 3]).unwrap();
        assert_eq!(preimage(&t, &f, &Elem::Nat(3)), Some(Elem::Nat(1)));
        assert_eq!(preimage(&t, &f, &Elem::Nat(2)), None);
    }
}
