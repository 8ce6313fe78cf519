//! Bounded evidence about well-foundedness.
//!
//! Nothing here decides well-foundedness: [`descending_search`] can only find
//! a descending chain or report that none turned up within its budget, and
//! [`chain_transfer`] pushes descending chains along embeddings.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::elem::Elem;
use crate::order::{CodedOrder, Lift, Order};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WfError {
    #[error("{0} is not an element of {1}")]
    NotAnElement(Elem, String),
    #[error("chain does not descend at {0}, {1}")]
    NotDescending(Elem, Elem),
    #[error("{0} is not a pair")]
    NotAPair(Elem),
    #[error("map is not strict: {} > {} but images {}, {}", .0.a0, .0.a1, .0.b0, .0.b1)]
    NotStrict(Box<StrictnessWitness>),
}

/// Adjacent chain elements `a0 > a1` whose images `b0, b1` do not descend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictnessWitness {
    pub a0: Elem,
    pub a1: Elem,
    pub b0: Elem,
    pub b1: Elem,
}

/// A strictly decreasing finite sequence in some order.
#[derive(Clone)]
pub struct DescendingChain {
    order: Order,
    elements: Vec<Elem>,
}

impl DescendingChain {
    pub fn new(order: Order, elements: Vec<Elem>) -> Result<Self, WfError> {
        if let Some(e) = elements.iter().find(|e| !order.contains(e)) {
            return Err(WfError::NotAnElement(e.clone(), order.describe()));
        }
        if let Some(w) = elements.windows(2).find(|w| !order.less(&w[1], &w[0])) {
            return Err(WfError::NotDescending(w[0].clone(), w[1].clone()));
        }
        Ok(DescendingChain { order, elements })
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl fmt::Debug for DescendingChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} in {}",
            self.elements.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" > "),
            self.order.describe()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Step to the earliest enumerated element below the current one.
    Greedy,
    /// Step to a seeded random choice among the few earliest elements below.
    Random { seed: u64 },
}

/// Candidates are drawn from the first `budget·50` enumerated elements; each
/// of the first `budget` of them is tried as a starting point.
pub fn descending_search(x: &Order, budget: usize, strategy: Strategy) -> Option<DescendingChain> {
    if budget == 0 {
        return DescendingChain::new(x.clone(), Vec::new()).ok();
    }
    let pool = x.enumerate(budget.saturating_mul(50));
    let mut rng = match strategy {
        Strategy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        Strategy::Greedy => None,
    };
    for start in pool.iter().take(budget) {
        let mut chain = vec![start.clone()];
        while chain.len() < budget {
            let cur = chain.last().unwrap();
            let below: Vec<&Elem> = match rng {
                None => pool.iter().filter(|e| x.less(e, cur)).take(1).collect(),
                Some(_) => pool.iter().filter(|e| x.less(e, cur)).take(4).collect(),
            };
            if below.is_empty() {
                break;
            }
            let i = rng.as_mut().map_or(0, |r| r.gen_range(0..below.len()));
            chain.push(below[i].clone());
        }
        if chain.len() == budget {
            return DescendingChain::new(x.clone(), chain).ok();
        }
    }
    None
}

/// The least `N` such that the first components are constant from `N` on,
/// for a chain in `(1+X)²`. The tail of second components is checked to be
/// strictly decreasing in `1+X`.
pub fn stabilize_index(chain: &DescendingChain, base: &Order) -> Result<usize, WfError> {
    let pairs = chain
        .elements()
        .iter()
        .map(|e| e.as_pair().ok_or_else(|| WfError::NotAPair(e.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let Some(last) = pairs.last() else { return Ok(0) };
    let n = pairs.iter().rposition(|(x, _)| x != &last.0).map_or(0, |i| i + 1);
    let lifted = Lift(base.clone());
    if let Some(w) = pairs[n..].windows(2).find(|w| !lifted.less(w[1].1, w[0].1)) {
        return Err(WfError::NotDescending(w[0].1.clone(), w[1].1.clone()));
    }
    Ok(n)
}

/// Maps a chain of `A` along `h: A → B`, checking strict descent of the image.
pub fn chain_transfer(
    h: &dyn Fn(&Elem) -> Elem,
    b: Order,
    chain: &DescendingChain,
) -> Result<DescendingChain, WfError> {
    let image: Vec<Elem> = chain.elements().iter().map(h).collect();
    if let Some(e) = image.iter().find(|e| !b.contains(e)) {
        return Err(WfError::NotAnElement(e.clone(), b.describe()));
    }
    for i in 1..image.len() {
        if !b.less(&image[i], &image[i - 1]) {
            return Err(WfError::NotStrict(Box::new(StrictnessWitness {
                a0: chain.elements()[i - 1].clone(),
                a1: chain.elements()[i].clone(),
                b0: image[i - 1].clone(),
                b1: image[i].clone(),
            })));
        }
    }
    Ok(DescendingChain { order: b, elements: image })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp_derivative::{j_embed, xi_build};
    use crate::extension::ext_order;
    use crate::normal_f::{eta, f_build, square_embed};
    use crate::order::{fin, lex_square, ordinal_order, pow2, Integers};
    use crate::ordinal::{self, Ordinal};
    use std::sync::Arc;

    fn n(k: u64) -> Elem {
        Elem::Nat(k)
    }

    fn omega_sq() -> Ordinal {
        ordinal::mul(&Ordinal::omega(), &Ordinal::omega())
    }

    #[test]
    fn chains_are_validated() {
        assert!(DescendingChain::new(fin(4), vec![n(3), n(1), n(0)]).is_ok());
        assert!(matches!(DescendingChain::new(fin(4), vec![n(1), n(1)]), Err(WfError::NotDescending(..))));
        assert!(matches!(DescendingChain::new(fin(4), vec![n(7)]), Err(WfError::NotAnElement(..))));
    }

    #[test]
    fn search_finds_chains_only_in_the_control_order() {
        let ints: Order = Arc::new(Integers);
        for strategy in [Strategy::Greedy, Strategy::Random { seed: 7 }] {
            let c = descending_search(&ints, 20, strategy).expect("integers are ill-founded");
            assert_eq!(c.len(), 20);
            assert!(descending_search(&ordinal_order(omega_sq()), 20, strategy).is_none());
            assert!(descending_search(&pow2(ordinal_order(Ordinal::omega())), 20, strategy).is_none());
        }
    }

    #[test]
    fn search_is_deterministic() {
        let ints: Order = Arc::new(Integers);
        let a = descending_search(&ints, 15, Strategy::Random { seed: 3 }).unwrap();
        let b = descending_search(&ints, 15, Strategy::Random { seed: 3 }).unwrap();
        assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn stabilize_examples() {
        let base = fin(10);
        let sq = lex_square(base.clone());
        let chain = |v: &[(u64, u64)]| {
            DescendingChain::new(sq.clone(), v.iter().map(|&(a, b)| Elem::pair(n(a), n(b))).collect()).unwrap()
        };
        assert_eq!(stabilize_index(&chain(&[(2, 5), (2, 3), (2, 1)]), &base), Ok(0));
        assert_eq!(stabilize_index(&chain(&[(3, 0), (2, 9), (2, 4)]), &base), Ok(1));
        assert_eq!(stabilize_index(&chain(&[(4, 4)]), &base), Ok(0));
    }

    #[test]
    fn transfer_along_identity_and_j() {
        let c = DescendingChain::new(fin(5), vec![n(4), n(2)]).unwrap();
        let same = chain_transfer(&|e| e.clone(), fin(5), &c).unwrap();
        assert_eq!(same.elements(), c.elements());

        let x = fin(4);
        let p = pow2(x.clone());
        let seqs = vec![Elem::Seq(vec![n(3), n(2)]), Elem::Seq(vec![n(3), n(1)]), Elem::Seq(vec![n(3)])];
        let c = DescendingChain::new(p, seqs).unwrap();
        let j = j_embed(x, &xi_build());
        let h = |e: &Elem| match e {
            Elem::Seq(xs) => j.apply(xs).unwrap(),
            _ => unreachable!(),
        };
        let out = chain_transfer(&h, j.codomain(), &c).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(j.defaults_hit(), 0);
    }

    #[test]
    fn transfer_along_square_embed_after_eta() {
        let d = ext_order(f_build(), fin(3));
        let mut elems = d.enumerate(20);
        elems.sort_by(|a, b| d.compare(b, a));
        let c = DescendingChain::new(d, elems).unwrap();
        let h = |e: &Elem| square_embed(&eta(e).unwrap());
        let out = chain_transfer(&h, lex_square(fin(3)), &c).unwrap();
        assert_eq!(out.len(), c.len());
    }

    #[test]
    fn non_strict_map_is_reported() {
        let c = DescendingChain::new(fin(5), vec![n(4), n(2)]).unwrap();
        let err = chain_transfer(&|_| n(0), fin(5), &c).unwrap_err();
        assert!(matches!(err, WfError::NotStrict(_)));
    }
}
