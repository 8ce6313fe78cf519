//! The extension `D^T(X)` of a prae-dilator to an arbitrary coded order.
//!
//! Elements are pairs `⟨a, σ⟩` where `a` is a finite subset of `X` and
//! `σ ∈ T(|a|)` has full support. Two elements are compared by pushing both
//! `σ`s into `T(|a₀ ∪ a₁|)` along the inclusions and comparing there.
//!
//! Composition `(T∘S)(n) = D^T(S(n))` and the isomorphism
//! `ζ: D^T(D^S(X)) → D^{T∘S}(X)` live here as well.

use std::cmp::Ordering;
use std::sync::Arc;

use thiserror::Error;

use crate::elem::Elem;
use crate::order::{self, CodedOrder, FinSubset, Order, OrderEmbedding, OrderError};
use crate::praedilator::{has_full_support, preimage, Dilator, DilatorError, NormalData, PraeDilator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("{0} is not an element of {1}")]
    NotAnElement(Elem, String),
    #[error("{sigma} does not have full support over {size} elements")]
    PartialSupport { sigma: Elem, size: usize },
    #[error("support normalization failed for {0}")]
    NoNormalForm(Elem),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Dilator(#[from] DilatorError),
}

/// The order `D^T(X)`.
pub struct ExtOrder {
    t: Dilator,
    x: Order,
}

pub fn ext_order(t: Dilator, x: Order) -> Arc<ExtOrder> {
    Arc::new(ExtOrder { t, x })
}

fn split(e: &Elem) -> (&[Elem], &Elem) {
    e.as_ext().unwrap_or_else(|| panic!("{e} is not an extension element"))
}

impl ExtOrder {
    pub fn dilator(&self) -> &Dilator {
        &self.t
    }

    pub fn base(&self) -> &Order {
        &self.x
    }

    /// Builds `⟨a, σ⟩`, rejecting unsorted `a` and `σ` without full support.
    pub fn make(&self, a: Vec<Elem>, sigma: Elem) -> Result<Elem, ExtError> {
        let subset = FinSubset::new(&*self.x, a)?;
        let n = subset.len();
        if !self.t.at(n).contains(&sigma) {
            return Err(ExtError::NotAnElement(sigma, format!("{}({n})", self.t.name())));
        }
        if !has_full_support(&*self.t, n, &sigma) {
            return Err(ExtError::PartialSupport { sigma, size: n });
        }
        Ok(Elem::ext(subset.into_elements(), sigma))
    }

    fn full_support_prefix(&self, m: usize, k: usize) -> Vec<Elem> {
        self.t.at(m).enumerate(k).into_iter().filter(|s| has_full_support(&*self.t, m, s)).collect()
    }
}

impl CodedOrder for ExtOrder {
    fn describe(&self) -> String {
        format!("D^{}({})", self.t.name(), self.x.describe())
    }

    fn compare(&self, e0: &Elem, e1: &Elem) -> Ordering {
        let (a0, s0) = split(e0);
        let (a1, s1) = split(e1);
        if a0 == a1 {
            return self.t.at(a0.len()).compare(s0, s1);
        }
        let union = order::merge_union(&*self.x, a0, a1);
        let n = union.len();
        let i0 = OrderEmbedding::new(a0.len(), n, order::inclusion_positions(&*self.x, a0, &union)).unwrap();
        let i1 = OrderEmbedding::new(a1.len(), n, order::inclusion_positions(&*self.x, a1, &union)).unwrap();
        self.t.at(n).compare(&self.t.map(&i0, s0), &self.t.map(&i1, s1))
    }

    fn contains(&self, e: &Elem) -> bool {
        let Some((a, sigma)) = e.as_ext() else { return false };
        FinSubset::new(&*self.x, a.to_vec()).is_ok()
            && self.t.at(a.len()).contains(sigma)
            && has_full_support(&*self.t, a.len(), sigma)
    }

    fn enumerate(&self, k: usize) -> Vec<Elem> {
        order::staged_enumerate(self, k, |s| {
            let mut pool = self.x.enumerate(s);
            pool.sort_by(|a, b| self.x.compare(a, b));
            let mut out = Vec::new();
            for m in 0..=pool.len() {
                // σ ranges over the first s − m elements of T(m)
                let sigmas = self.full_support_prefix(m, s - m);
                if sigmas.is_empty() {
                    continue;
                }
                for a in order::subsets_of_size(&pool, m) {
                    for sigma in &sigmas {
                        out.push(Elem::ext(a.clone(), sigma.clone()));
                    }
                }
            }
            out
        })
    }

    fn size(&self) -> Option<usize> {
        let n = self.x.size()?;
        let mut total = 0usize;
        let mut binom = 1usize;
        for m in 0..=n {
            let tm = self.t.at(m);
            let full = self.full_support_prefix(m, tm.size()?).len();
            total += binom * full;
            binom = binom * (n - m) / (m + 1);
        }
        Some(total)
    }
}

/// `D^T(h)`: renames the support along an embedding `h: X → Y`.
pub fn ext_map(y: &dyn CodedOrder, h: &dyn Fn(&Elem) -> Elem, e: &Elem) -> Result<Elem, ExtError> {
    let (a, sigma) = e.as_ext().ok_or_else(|| ExtError::NotAnElement(e.clone(), "an extension".into()))?;
    let image: Vec<Elem> = a.iter().map(h).collect();
    let image = FinSubset::new(y, image)?;
    Ok(Elem::ext(image.into_elements(), sigma.clone()))
}

/// `supp_X(⟨a, σ⟩) = a`.
pub fn ext_supp(e: &Elem) -> Vec<Elem> {
    split(e).0.to_vec()
}

/// `D^μ_X(x) = ⟨{x}, μ_1(0)⟩`.
pub fn ext_mu(t: &dyn PraeDilator, x: &dyn CodedOrder, elem: &Elem) -> Result<Elem, ExtError> {
    if !x.contains(elem) {
        return Err(ExtError::NotAnElement(elem.clone(), x.describe()));
    }
    let mu = t.normal().ok_or_else(|| DilatorError::NotNormal(t.name()))?;
    Ok(Elem::ext(vec![elem.clone()], mu.mu(1, 0)))
}

/// `T∘S` with `(T∘S)(n) = D^T(S(n))`.
pub struct Composite {
    outer: Dilator,
    inner: Dilator,
}

pub fn compose(outer: Dilator, inner: Dilator) -> Dilator {
    Arc::new(Composite { outer, inner })
}

struct CompositeMu {
    outer_mu: Elem,
    inner: Arc<dyn NormalData>,
}

impl NormalData for CompositeMu {
    // μ^{T∘S}_n = D^{μ^T}_{S(n)} ∘ μ^S_n
    fn mu(&self, n: usize, m: usize) -> Elem {
        Elem::ext(vec![self.inner.mu(n, m)], self.outer_mu.clone())
    }
}

impl PraeDilator for Composite {
    fn name(&self) -> String {
        format!("{}∘{}", self.outer.name(), self.inner.name())
    }

    fn at(&self, n: usize) -> Order {
        ext_order(self.outer.clone(), self.inner.at(n))
    }

    fn map(&self, f: &OrderEmbedding, sigma: &Elem) -> Elem {
        let (a, tau) = split(sigma);
        Elem::ext(a.iter().map(|s| self.inner.map(f, s)).collect(), tau.clone())
    }

    fn supp(&self, n: usize, sigma: &Elem) -> Vec<usize> {
        let mut out: Vec<usize> = split(sigma).0.iter().flat_map(|s| self.inner.supp(n, s)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn normalize(&self, n: usize, sigma: &Elem) -> Option<(Vec<usize>, Elem)> {
        let supp = self.supp(n, sigma);
        let en = OrderEmbedding::enumerating(n, &supp).ok()?;
        let (a, tau) = split(sigma);
        let pulled: Option<Vec<Elem>> = a.iter().map(|s| preimage(&*self.inner, &en, s)).collect();
        Some((supp, Elem::ext(pulled?, tau.clone())))
    }

    fn normal(&self) -> Option<Arc<dyn NormalData>> {
        let outer_mu = self.outer.normal()?.mu(1, 0);
        Some(Arc::new(CompositeMu { outer_mu, inner: self.inner.normal()? }))
    }
}

/// `ζ^{T,S}_X: D^T(D^S(X)) ≅ D^{T∘S}(X)`.
pub struct Zeta {
    t: Dilator,
    s: Dilator,
    x: Order,
}

impl Zeta {
    pub fn new(t: Dilator, s: Dilator, x: Order) -> Self {
        Zeta { t, s, x }
    }

    pub fn domain(&self) -> Arc<ExtOrder> {
        ext_order(self.t.clone(), ext_order(self.s.clone(), self.x.clone()))
    }

    pub fn codomain(&self) -> Arc<ExtOrder> {
        ext_order(compose(self.t.clone(), self.s.clone()), self.x.clone())
    }

    /// `⟨{⟨b₁,s₁⟩, …, ⟨bₖ,sₖ⟩}, τ⟩ ↦ ⟨c, ⟨{S(|ιᵢ|)(sᵢ)}, τ⟩⟩` with `c = ⋃ bᵢ`.
    pub fn forward(&self, e: &Elem) -> Result<Elem, ExtError> {
        let (outer, tau) = e.as_ext().ok_or_else(|| ExtError::NotAnElement(e.clone(), "D^T(D^S(X))".into()))?;
        let mut union: Vec<Elem> = Vec::new();
        for inner in outer {
            let (b, _) = inner.as_ext().ok_or_else(|| ExtError::NotAnElement(inner.clone(), "D^S(X)".into()))?;
            union = order::merge_union(&*self.x, &union, b);
        }
        let pushed = outer
            .iter()
            .map(|inner| {
                let (b, s) = split(inner);
                let iota = OrderEmbedding::new(b.len(), union.len(), order::inclusion_positions(&*self.x, b, &union))?;
                Ok(self.s.map(&iota, s))
            })
            .collect::<Result<Vec<_>, ExtError>>()?;
        Ok(Elem::ext(union, Elem::ext(pushed, tau.clone())))
    }

    /// Collapses supports: each `s′ ∈ S(|c|)` becomes `⟨c↾supp(s′), s⟩`.
    pub fn inverse(&self, e: &Elem) -> Result<Elem, ExtError> {
        let bad = || ExtError::NotAnElement(e.clone(), "D^{T∘S}(X)".into());
        let (c, rho) = e.as_ext().ok_or_else(bad)?;
        let (pushed, tau) = rho.as_ext().ok_or_else(bad)?;
        let outer = pushed
            .iter()
            .map(|sp| {
                let (supp, s) = self.s.normalize(c.len(), sp).ok_or_else(|| ExtError::NoNormalForm(sp.clone()))?;
                Ok(Elem::ext(supp.iter().map(|&i| c[i].clone()).collect(), s))
            })
            .collect::<Result<Vec<_>, ExtError>>()?;
        Ok(Elem::ext(outer, tau.clone()))
    }
}

/// A natural family `ξ_n: (T∘S)(n) → S(n)`.
pub trait NaturalFamily: Send + Sync {
    fn apply(&self, n: usize, sigma: &Elem) -> Elem;
}

/// `D^ξ_X: D^{T∘S}(X) → D^S(X)`, applying `ξ_{|a|}` and renormalizing the support.
pub fn dext_xi(s: &dyn PraeDilator, xi: &dyn NaturalFamily, e: &Elem) -> Result<Elem, ExtError> {
    let (a, sigma) = e.as_ext().ok_or_else(|| ExtError::NotAnElement(e.clone(), "D^{T∘S}(X)".into()))?;
    let image = xi.apply(a.len(), sigma);
    let (supp, tau) = s.normalize(a.len(), &image).ok_or_else(|| ExtError::NoNormalForm(image.clone()))?;
    Ok(Elem::ext(supp.iter().map(|&i| a[i].clone()).collect(), tau))
}
