//! The normal prae-dilator `F` with `F(X) = {⊥} ∪ {⟨x, y⟩ : x ∈ X, y ∈ 1+X, y < x}`,
//! ordered by `⊥` first and then lexicographically.
//!
//! Its order type on an ordinal `α` is `f(α) = 1 + Σ_{γ<α} (1+γ)`, via the rank
//! `val(⊥) = 0`, `val⟨x,⊥⟩ = f(x)` and `val⟨x,y⟩ = f(x) + 1 + y`.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::elem::Elem;
use crate::order::{self, fin, CodedOrder, Lift, Order, OrderEmbedding};
use crate::ordinal::{self, Ordinal};
use crate::praedilator::{Dilator, NormalData, PraeDilator};

/// `F(X)` over an arbitrary coded order.
pub struct FOrder {
    lifted: Lift,
}

pub fn f_order(x: Order) -> Order {
    Arc::new(FOrder { lifted: Lift(x) })
}

impl FOrder {
    fn base(&self) -> &Order {
        &self.lifted.0
    }
}

impl CodedOrder for FOrder {
    fn describe(&self) -> String {
        format!("F({})", self.base().describe())
    }

    fn compare(&self, a: &Elem, b: &Elem) -> Ordering {
        match (a.as_pair(), b.as_pair()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some((a0, a1)), Some((b0, b1))) => self.base().compare(a0, b0).then_with(|| self.lifted.compare(a1, b1)),
        }
    }

    fn contains(&self, e: &Elem) -> bool {
        match e {
            Elem::Bot => true,
            Elem::Pair(x, y) => self.base().contains(x) && self.lifted.contains(y) && self.lifted.less(y, x),
            _ => false,
        }
    }

    fn enumerate(&self, k: usize) -> Vec<Elem> {
        order::staged_enumerate(self, k, |s| {
            let pool = self.base().enumerate(s);
            let mut out = vec![Elem::Bot];
            for x in &pool {
                out.push(Elem::pair(x.clone(), Elem::Bot));
                for y in pool.iter().filter(|y| self.base().less(y, x)) {
                    out.push(Elem::pair(x.clone(), y.clone()));
                }
            }
            out
        })
    }

    fn size(&self) -> Option<usize> {
        let n = self.base().size()?;
        Some(1 + n * (n + 1) / 2)
    }

    fn order_type(&self) -> Option<Ordinal> {
        self.base().order_type().map(|a| ordinal::f_eval(&a))
    }

    fn denote(&self, e: &Elem) -> Option<Ordinal> {
        match e {
            Elem::Bot => Some(Ordinal::zero()),
            Elem::Pair(x, y) => {
                let fx = ordinal::f_eval(&self.base().denote(x)?);
                match **y {
                    Elem::Bot => Some(fx),
                    _ => Some(ordinal::add(&ordinal::add(&fx, &Ordinal::one()), &self.base().denote(y)?)),
                }
            }
            _ => None,
        }
    }
}

/// `val` on `F(α)` where elements of `α` are `Elem::Ord`.
pub fn f_val(e: &Elem) -> Option<Ordinal> {
    let ord = |x: &Elem| match x {
        Elem::Ord(o) => Some(o.clone()),
        Elem::Nat(n) => Some(Ordinal::nat(*n)),
        _ => None,
    };
    match e {
        Elem::Bot => Some(Ordinal::zero()),
        Elem::Pair(x, y) => {
            let fx = ordinal::f_eval(&ord(x)?);
            match **y {
                Elem::Bot => Some(fx),
                _ => Some(ordinal::add(&ordinal::add(&fx, &Ordinal::one()), &ord(y)?)),
            }
        }
        _ => None,
    }
}

/// `F(h)` for any map `h` on the base.
pub fn f_map(h: &dyn Fn(&Elem) -> Elem, e: &Elem) -> Elem {
    match e {
        Elem::Pair(x, y) => {
            let y = if **y == Elem::Bot { Elem::Bot } else { h(y) };
            Elem::pair(h(x), y)
        }
        other => other.clone(),
    }
}

/// `supp_X`: the base elements mentioned, in increasing order.
pub fn f_supp(e: &Elem) -> Vec<Elem> {
    match e {
        Elem::Pair(x, y) if **y == Elem::Bot => vec![(**x).clone()],
        Elem::Pair(x, y) => vec![(**y).clone(), (**x).clone()],
        _ => Vec::new(),
    }
}

/// `F` as a prae-dilator on finite orders.
pub struct FDilator;

pub fn f_build() -> Dilator {
    Arc::new(FDilator)
}

struct FMu;

impl NormalData for FMu {
    fn mu(&self, _n: usize, m: usize) -> Elem {
        Elem::pair(Elem::Nat(m as u64), Elem::Bot)
    }
}

fn nat(e: &Elem) -> usize {
    e.as_nat().expect("F(n) mentions naturals") as usize
}

impl PraeDilator for FDilator {
    fn name(&self) -> String {
        "F".into()
    }

    fn at(&self, n: usize) -> Order {
        f_order(fin(n))
    }

    fn map(&self, f: &OrderEmbedding, sigma: &Elem) -> Elem {
        f_map(&|x| Elem::Nat(f.apply(nat(x)) as u64), sigma)
    }

    fn supp(&self, _n: usize, sigma: &Elem) -> Vec<usize> {
        f_supp(sigma).iter().map(nat).collect()
    }

    fn normalize(&self, n: usize, sigma: &Elem) -> Option<(Vec<usize>, Elem)> {
        let (supp, tau) = eta_inverse_parts(sigma);
        let supp: Vec<usize> = supp.iter().map(nat).collect();
        if supp.iter().any(|&i| i >= n) {
            return None;
        }
        Some((supp, tau))
    }

    fn normal(&self) -> Option<Arc<dyn NormalData>> {
        Some(Arc::new(FMu))
    }
}

fn eta_inverse_parts(t: &Elem) -> (Vec<Elem>, Elem) {
    let tau = match t {
        Elem::Bot => Elem::Bot,
        Elem::Pair(_, y) if **y == Elem::Bot => Elem::pair(Elem::Nat(0), Elem::Bot),
        Elem::Pair(..) => Elem::pair(Elem::Nat(1), Elem::Nat(0)),
        other => panic!("{other} is not an element of F(X)"),
    };
    (f_supp(t), tau)
}

/// `η_X: D^F(X) → F(X)`, `⟨a, σ⟩ ↦ F(en_a)(σ)`.
pub fn eta(e: &Elem) -> Option<Elem> {
    let (a, sigma) = e.as_ext()?;
    let pick = |x: &Elem| a[nat(x)].clone();
    Some(f_map(&pick, sigma))
}

/// `η_X^{-1}`: `⊥ ↦ ⟨∅,⊥⟩`, `⟨x,⊥⟩ ↦ ⟨{x},⟨0,⊥⟩⟩`, `⟨x,y⟩ ↦ ⟨{y,x},⟨1,0⟩⟩`.
pub fn eta_inverse(t: &Elem) -> Elem {
    let (a, tau) = eta_inverse_parts(t);
    Elem::ext(a, tau)
}

/// The inclusion `F(X) ↪ (1+X)²` sending `⊥` to `⟨⊥,⊥⟩`.
pub fn square_embed(t: &Elem) -> Elem {
    match t {
        Elem::Bot => Elem::pair(Elem::Bot, Elem::Bot),
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::ext_order;
    use crate::order::{lex_square, ordinal_order, CheckMode};
    use crate::praedilator::{search_normalize, validate_normal, validate_praedilator};

    #[test]
    fn sizes_of_finite_stages() {
        let expected = [1, 2, 4, 7, 11, 16, 22, 29];
        for (n, &want) in expected.iter().enumerate() {
            assert_eq!(FDilator.at(n).size(), Some(want));
            assert_eq!(FDilator.at(n).enumerate(100).len(), want);
            assert_eq!(ext_order(f_build(), fin(n)).size(), Some(want), "D^F({n})");
        }
    }

    #[test]
    fn laws_hold() {
        let r = validate_praedilator(&FDilator, 5, 40);
        assert!(r.passed(), "{r}");
        let r = validate_normal(&FDilator, &FMu, 5, 40);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn support_and_normal_form() {
        let s = Elem::pair(Elem::Nat(1), Elem::Nat(0));
        assert_eq!(FDilator.supp(2, &s), vec![0, 1]);
        assert_eq!(FDilator.supp(1, &Elem::pair(Elem::Nat(0), Elem::Bot)), vec![0]);
        for n in 0..5 {
            for e in FDilator.at(n).enumerate(30) {
                assert_eq!(FDilator.normalize(n, &e), search_normalize(&FDilator, n, &e, 50));
            }
        }
    }

    #[test]
    fn rank_examples() {
        let w = Ordinal::omega();
        let e = Elem::pair(Elem::Ord(w.clone()), Elem::Ord(Ordinal::nat(3)));
        assert_eq!(f_val(&e), Some(ordinal::add(&w, &Ordinal::nat(4))));
        let x = ordinal_order(ordinal::mul(&w, &Ordinal::nat(2)));
        let fx = f_order(x);
        assert_eq!(fx.denote(&e), f_val(&e));
        assert_eq!(f_val(&Elem::Bot), Some(Ordinal::zero()));
    }

    #[test]
    fn rank_is_an_isomorphism_onto_f_of_alpha() {
        let a = ordinal::add(&Ordinal::omega(), &Ordinal::nat(2));
        let fx = f_order(ordinal_order(a.clone()));
        let target = ordinal_order(ordinal::f_eval(&a));
        let h = |e: &Elem| Elem::Ord(fx.denote(e).unwrap());
        let r = order::order_iso_check(&*fx, &*target, &h, 150, CheckMode::Embedding);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn eta_round_trip() {
        let x = fin(4);
        let fx = f_order(x.clone());
        let d = ext_order(f_build(), x);
        for t in fx.enumerate(20) {
            let e = eta_inverse(&t);
            assert!(d.contains(&e), "{e}");
            assert_eq!(eta(&e), Some(t));
        }
        for e in d.enumerate(20) {
            assert_eq!(eta_inverse(&eta(&e).unwrap()), e);
        }
    }

    #[test]
    fn embeds_into_lex_square() {
        let x = fin(4);
        let fx = f_order(x.clone());
        let sq = lex_square(x);
        let r = order::order_iso_check(&*fx, &*sq, &square_embed, 50, CheckMode::Embedding);
        assert!(r.passed(), "{r:?}");
    }
}
