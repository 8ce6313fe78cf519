//! Finite orders, embeddings between them, finite subsets and coded
//! countable linear orders.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::elem::Elem;
use crate::ordinal::{self, Ordinal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("embedding values {0:?} are not strictly increasing")]
    NotIncreasing(Vec<usize>),
    #[error("embedding value {value} out of range for codomain {cod}")]
    OutOfRange { value: usize, cod: usize },
    #[error("embedding has {got} values but domain {dom}")]
    WrongLength { got: usize, dom: usize },
    #[error("cannot compose {0} → {1} with {2} → {3}")]
    Mismatch(usize, usize, usize, usize),
    #[error("{0} is not an element of {1}")]
    NotAnElement(Elem, String),
    #[error("map is not order preserving on {0} < {1}")]
    NotOrderPreserving(Elem, Elem),
}

/// A strictly increasing map `dom → cod` between finite orders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderEmbedding {
    dom: usize,
    cod: usize,
    values: Vec<usize>,
}

impl OrderEmbedding {
    pub fn new(dom: usize, cod: usize, values: Vec<usize>) -> Result<Self, OrderError> {
        if values.len() != dom {
            return Err(OrderError::WrongLength { got: values.len(), dom });
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(OrderError::NotIncreasing(values));
        }
        if let Some(&value) = values.iter().find(|&&v| v >= cod) {
            return Err(OrderError::OutOfRange { value, cod });
        }
        Ok(OrderEmbedding { dom, cod, values })
    }

    pub fn identity(n: usize) -> Self {
        OrderEmbedding { dom: n, cod: n, values: (0..n).collect() }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &OrderEmbedding) -> Result<OrderEmbedding, OrderError> {
        if self.cod != next.dom {
            return Err(OrderError::Mismatch(self.dom, self.cod, next.dom, next.cod));
        }
        Ok(OrderEmbedding {
            dom: self.dom,
            cod: next.cod,
            values: self.values.iter().map(|&i| next.values[i]).collect(),
        })
    }

    /// The position of `j` in the image, if any.
    pub fn preimage(&self, j: usize) -> Option<usize> {
        self.values.binary_search(&j).ok()
    }

    /// The increasing enumeration `|s| → n` of a sorted subset `s ⊆ n`.
    pub fn enumerating(n: usize, subset: &[usize]) -> Result<Self, OrderError> {
        Self::new(subset.len(), n, subset.to_vec())
    }
}

impl fmt::Debug for OrderEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {} → {}", self.values, self.dom, self.cod)
    }
}

/// `g ∘ f`, applying `f` first.
pub fn compose(f: &OrderEmbedding, g: &OrderEmbedding) -> Result<OrderEmbedding, OrderError> {
    f.then(g)
}

/// All `C(n, m)` embeddings `m → n` in lexicographic order of their values.
pub fn enumerate_all(m: usize, n: usize) -> Vec<OrderEmbedding> {
    fn go(start: usize, left: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..=(n - left) {
            cur.push(v);
            go(v + 1, left - 1, n, cur, out);
            cur.pop();
        }
    }
    if m > n {
        return Vec::new();
    }
    let mut raw = Vec::new();
    go(0, m, n, &mut Vec::new(), &mut raw);
    raw.into_iter().map(|values| OrderEmbedding { dom: m, cod: n, values }).collect()
}

/// A countable linear order with decidable comparison and a deterministic
/// injective enumeration.
pub trait CodedOrder: Send + Sync {
    fn describe(&self) -> String;

    fn compare(&self, a: &Elem, b: &Elem) -> Ordering;

    /// Validity predicate for terms of this order.
    fn contains(&self, e: &Elem) -> bool;

    /// The first `k` elements of the enumeration (fewer if the order is smaller).
    fn enumerate(&self, k: usize) -> Vec<Elem>;

    /// Number of elements, `None` when infinite.
    fn size(&self) -> Option<usize>;

    /// Order type, when it is known to be an ordinal below ε₀.
    fn order_type(&self) -> Option<Ordinal> {
        None
    }

    /// Rank of an element as an ordinal, when available.
    fn denote(&self, _e: &Elem) -> Option<Ordinal> {
        None
    }

    fn less(&self, a: &Elem, b: &Elem) -> bool {
        self.compare(a, b) == Ordering::Less
    }
}

pub type Order = Arc<dyn CodedOrder>;

/// Shared enumeration driver: `stage(s)` returns every element of stage `s`
/// (stages are increasing and exhaust the order); each stage's new elements
/// are emitted in the order's own comparison order.
pub(crate) fn staged_enumerate<O, S>(order: &O, k: usize, stage: S) -> Vec<Elem>
where
    O: CodedOrder + ?Sized,
    S: Fn(usize) -> Vec<Elem>,
{
    let cap = order.size().map_or(k, |n| n.min(k));
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut idle = 0;
    let mut s = 0;
    while out.len() < cap {
        let mut fresh: Vec<Elem> = stage(s).into_iter().filter(|e| !seen.contains(e)).collect();
        fresh.sort_by(|a, b| order.compare(a, b));
        fresh.dedup();
        if fresh.is_empty() {
            idle += 1;
            if idle > 64 {
                break;
            }
        } else {
            idle = 0;
        }
        for e in fresh {
            seen.insert(e.clone());
            out.push(e);
        }
        s += 1;
    }
    out.truncate(cap);
    out
}

/// A finite subset of an ambient order, stored in increasing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinSubset {
    elements: Vec<Elem>,
}

impl FinSubset {
    pub fn empty() -> Self {
        FinSubset { elements: Vec::new() }
    }

    /// Checks that `elements` are members of `ambient` listed in strictly
    /// increasing order.
    pub fn new(ambient: &dyn CodedOrder, elements: Vec<Elem>) -> Result<Self, OrderError> {
        if let Some(e) = elements.iter().find(|e| !ambient.contains(e)) {
            return Err(OrderError::NotAnElement(e.clone(), ambient.describe()));
        }
        if let Some(w) = elements.windows(2).find(|w| !ambient.less(&w[0], &w[1])) {
            return Err(OrderError::NotOrderPreserving(w[0].clone(), w[1].clone()));
        }
        Ok(FinSubset { elements })
    }

    pub fn from_unsorted(ambient: &dyn CodedOrder, mut elements: Vec<Elem>) -> Result<Self, OrderError> {
        elements.sort_by(|a, b| ambient.compare(a, b));
        elements.dedup();
        Self::new(ambient, elements)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Elem> {
        self.elements
    }

    /// `en_a(i)`: the `i`-th smallest element.
    pub fn en(&self, i: usize) -> &Elem {
        &self.elements[i]
    }

    pub fn position(&self, ambient: &dyn CodedOrder, x: &Elem) -> Option<usize> {
        self.elements.binary_search_by(|e| ambient.compare(e, x)).ok()
    }
}

/// `|f|: |a| → |b|` for an order-preserving `f: a → b` between finite subsets.
pub fn restrict(
    ambient: &dyn CodedOrder,
    a: &FinSubset,
    b: &FinSubset,
    f: &dyn Fn(&Elem) -> Elem,
) -> Result<OrderEmbedding, OrderError> {
    let mut values = Vec::with_capacity(a.len());
    for x in a.elements() {
        let y = f(x);
        match b.position(ambient, &y) {
            Some(j) => values.push(j),
            None => return Err(OrderError::NotAnElement(y, "the target subset".into())),
        }
    }
    if let Some(i) = values.windows(2).position(|w| w[0] >= w[1]) {
        return Err(OrderError::NotOrderPreserving(a.en(i).clone(), a.en(i + 1).clone()));
    }
    OrderEmbedding::new(a.len(), b.len(), values)
}

/// Positions of the elements of a sorted `sub` inside the sorted `sup`.
pub(crate) fn inclusion_positions(ambient: &dyn CodedOrder, sub: &[Elem], sup: &[Elem]) -> Vec<usize> {
    sub.iter()
        .map(|x| sup.binary_search_by(|e| ambient.compare(e, x)).expect("subset element missing from superset"))
        .collect()
}

/// Sorted union of two sorted lists.
pub(crate) fn merge_union(ambient: &dyn CodedOrder, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ambient.compare(&a[i], &b[j]) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// All subsets of `pool` (given in increasing order) with at most `max` elements.
pub(crate) fn subsets_up_to(pool: &[Elem], max: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for x in pool {
        let grown: Vec<Vec<Elem>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| {
                let mut t = s.clone();
                t.push(x.clone());
                t
            })
            .collect();
        out.extend(grown);
    }
    out
}

/// All `m`-element subsets of `pool`, each listed in pool order.
pub(crate) fn subsets_of_size(pool: &[Elem], m: usize) -> Vec<Vec<Elem>> {
    fn go(pool: &[Elem], start: usize, m: usize, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < m - cur.len() {
                break;
            }
            cur.push(pool[i].clone());
            go(pool, i + 1, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, 0, m, &mut Vec::new(), &mut out);
    out
}

/// The finite order `n = {0, …, n−1}`.
pub struct Fin(pub usize);

impl CodedOrder for Fin {
    fn describe(&self) -> String {
        format!("fin({})", self.0)
    }
    fn compare(&self, a: &Elem, b: &Elem) -> Ordering {
        a.as_nat().cmp(&b.as_nat())
    }
    fn contains(&self, e: &Elem) -> bool {
        e.as_nat().is_some_and(|n| (n as usize) < self.0)
    }
    fn enumerate(&self, k: usize) -> Vec<Elem> {
        (0..self.0.min(k) as u64).map(Elem::Nat).collect()
    }
    fn size(&self) -> Option<usize> {
        Some(self.0)
    }
    fn order_type(&self) -> Option<Ordinal> {
        Some(Ordinal::nat(self.0 as u64))
    }
    fn denote(&self, e: &Elem) -> Option<Ordinal> {
        e.as_nat().map(Ordinal::nat)
    }
}

/// The ordinal `α` viewed as the order of all smaller ordinals.
pub struct OrdinalOrder(pub Ordinal);

impl CodedOrder for OrdinalOrder {
    fn describe(&self) -> String {
        format!("ordinal({})", self.0)
    }
    fn compare(&self, a: &Elem, b: &Elem) -> Ordering {
        match (a, b) {
            (Elem::Ord(x), Elem::Ord(y)) => ordinal::cmp(x, y),
            _ => panic!("ordinal order compares ordinals only, got {a} and {b}"),
        }
    }
    fn contains(&self, e: &Elem) -> bool {
        matches!(e, Elem::Ord(x) if *x < self.0)
    }
    fn enumerate(&self, k: usize) -> Vec<Elem> {
        let cap = self.size().map_or(k, |n| n.min(k));
        let mut out = Vec::new();
        let mut s = 0;
        while out.len() < cap {
            out.extend(ordinal::ordinals_of_size_below(s, &self.0).into_iter().map(Elem::Ord));
            s += 1;
        }
        out.truncate(cap);
        out
    }
    fn size(&self) -> Option<usize> {
        self.0.as_nat().map(|n| n as usize)
    }
    fn order_type(&self) -> Option<Ordinal> {
        Some(self.0.clone())
    }
    fn denote(&self, e: &Elem) -> Option<Ordinal> {
        match e {
            Elem::Ord(x) => Some(x.clone()),
            _ => None,
        }
    }
}

/// `1+X`: a fresh minimum `⊥` below a copy of `X`.
pub struct Lift(pub Order);

impl CodedOrder for Lift {
    fn describe(&self) -> String {
        format!("lift({})", self.0.describe())
    }
    fn compare(&self, a: &Elem, b: &Elem) -> Ordering {
        match (a, b) {
            (Elem::Bot, Elem::Bot) => Ordering::Equal,
            (Elem::Bot, _) => Ordering::Less,
            (_, Elem::Bot) => Ordering::Greater,
            _ => self.0.compare(a, b),
        }
    }
    fn contains(&self, e: &Elem) -> bool {
        *e == Elem::Bot || self.0.contains(e)
    }
    fn enumerate(&self, k: usize) -> Vec<Elem> {
        if k == 0 {
            return Vec::new();
        }
        let mut out = vec![Elem::Bot];
        out.extend(self.0.enumerate(k - 1));
        out
    }
    fn size(&self) -> Option<usize> {
        self.0.size().map(|n| n + 1)
    }
    fn order_type(&self) -> Option<Ordinal> {
        self.0.order_type().map(|a| ordinal::add(&Ordinal::one(), &a))
    }
    fn denote(&self, e: &Elem) -> Option<Ordinal> {
        match e {
            Elem::Bot => Some(Ordinal::zero()),
            _ => self.0.denote(e).map(|d| ordinal::add(&Ordinal::one(), &d)),
        }
    }
}

/// `(1+X)²` with the lexicographic order, first component most significant.
pub struct LexSquare {
    lifted: Lift,
}

impl LexSquare {
    pub fn new(base: Order) -> Self {
        LexSquare { lifted: Lift(base) }
    }
}

impl CodedOrder for LexSquare {
    fn describe(&self) -> String {
        format!("lex_square({})", self.lifted.0.describe())
    }
    fn compare(&self, a: &Elem, b: &Elem) -> Ordering {
        let (a0, a1) = a.as_pair().expect("lex_square compares pairs");
        let (b0, b1) = b.as_pair().expect("lex_square compares pairs");
        self.lifted.compare(a0, b0).then_with(|| self.lifted.compare(a1, b1))
    }
    fn contains(&self, e: &Elem) -> bool {
        e.as_pair().is_some_and(|(x, y)| self.lifted.contains(x) && self.lifted.contains(y))
    }
    fn enumerate(&self, k: usize) -> Vec<Elem> {
        staged_enumerate(self, k, |s| {
            let pool = self.lifted.enumerate(s);
            let mut out = Vec::new();
            for x in &pool {
                for y in &pool {
                    out.push(Elem::pair(x.clone(), y.clone()));
                }
            }
            out
        })
    }
    fn size(&self) -> Option<usize> {
        self.lifted.size().map(|n| n * n)
    }
    fn order_type(&self) -> Option<Ordinal> {
        self.lifted.order_type().map(|a| ordinal::mul(&a, &a))
    }
    fn denote(&self, e: &Elem) -> Option<Ordinal> {
        let (x, y) = e.as_pair()?;
        let width = self.lifted.order_type()?;
        Some(ordinal::add(&ordinal::mul(&width, &self.lifted.denote(x)?), &self.lifted.denote(y)?))
    }
}

/// `2^X`: strictly descending finite sequences `⟨x₁, …, xₙ⟩` over `X`
/// (stored with `x₁` first), compared lexicographically.
pub struct Pow2(pub Order);

impl Pow2 {
    pub fn compare_seqs(&self, a: &[Elem], b: &[Elem]) -> Ordering {
        for (x, y) in a.iter().zip(b) {
            match self.0.compare(x, y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        a.len().cmp(&b.len())
    }

    pub fn is_descending(&self, xs: &[Elem]) -> bool {
        xs.windows(2).all(|w| self.0.less(&w[1], &w[0]))
    }
}

impl CodedOrder for Pow2 {
    fn describe(&self) -> String {
        format!("pow2({})", self.0.describe())
    }
    fn compare(&self, a: &Elem, b: &Elem) -> Ordering {
        match (a, b) {
            (Elem::Seq(x), Elem::Seq(y)) => self.compare_seqs(x, y),
            _ => panic!("pow2 compares sequences only, got {a} and {b}"),
        }
    }
    fn contains(&self, e: &Elem) -> bool {
        matches!(e, Elem::Seq(xs) if xs.iter().all(|x| self.0.contains(x)) && self.is_descending(xs))
    }
    fn enumerate(&self, k: usize) -> Vec<Elem> {
        staged_enumerate(self, k, |s| {
            let mut pool = self.0.enumerate(s);
            pool.sort_by(|a, b| self.0.compare(b, a));
            // subsets of a descending pool stay descending
            subsets_up_to(&pool, pool.len()).into_iter().map(Elem::Seq).collect()
        })
    }
    fn size(&self) -> Option<usize> {
        self.0.size().map(|n| 1usize << n)
    }
    fn order_type(&self) -> Option<Ordinal> {
        self.0.order_type().map(|a| ordinal::two_pow(&a))
    }
    fn denote(&self, e: &Elem) -> Option<Ordinal> {
        let Elem::Seq(xs) = e else { return None };
        let mut out = Ordinal::zero();
        for x in xs {
            out = ordinal::add(&out, &ordinal::two_pow(&self.0.denote(x)?));
        }
        Some(out)
    }
}

/// The ill-founded control order `… < −2 < −1 < 0 < 1 < …`, enumerated as
/// `0, −1, 1, −2, 2, …`.
pub struct Integers;

impl CodedOrder for Integers {
    fn describe(&self) -> String {
        "integers".into()
    }
    fn compare(&self, a: &Elem, b: &Elem) -> Ordering {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => x.cmp(y),
            _ => panic!("integers compare Int elements only"),
        }
    }
    fn contains(&self, e: &Elem) -> bool {
        matches!(e, Elem::Int(_))
    }
    fn enumerate(&self, k: usize) -> Vec<Elem> {
        (0..k as i64).map(|i| Elem::Int(if i % 2 == 1 { -(i + 1) / 2 } else { i / 2 })).collect()
    }
    fn size(&self) -> Option<usize> {
        None
    }
}

/// Descriptor of the orders built by [`build_order`].
#[derive(Debug, Clone, PartialEq)]
pub enum OrderSpec {
    Fin(usize),
    Ordinal(Ordinal),
    Lift(Box<OrderSpec>),
    LexSquare(Box<OrderSpec>),
    Pow2(Box<OrderSpec>),
}

pub fn build_order(spec: &OrderSpec) -> Order {
    match spec {
        OrderSpec::Fin(n) => fin(*n),
        OrderSpec::Ordinal(a) => ordinal_order(a.clone()),
        OrderSpec::Lift(x) => lift(build_order(x)),
        OrderSpec::LexSquare(x) => lex_square(build_order(x)),
        OrderSpec::Pow2(x) => pow2(build_order(x)),
    }
}

pub fn fin(n: usize) -> Order {
    Arc::new(Fin(n))
}

pub fn ordinal_order(a: Ordinal) -> Order {
    Arc::new(OrdinalOrder(a))
}

pub fn lift(x: Order) -> Order {
    Arc::new(Lift(x))
}

pub fn lex_square(x: Order) -> Order {
    Arc::new(LexSquare::new(x))
}

pub fn pow2(x: Order) -> Order {
    Arc::new(Pow2(x))
}

/// Outcome of [`order_iso_check`].
#[derive(Debug, Clone, Default)]
pub struct IsoReport {
    pub pairs_checked: usize,
    /// A pair `a < b` in the source whose images are not strictly increasing.
    pub order_violation: Option<(Elem, Elem)>,
    /// A source element whose image is not a member of the target.
    pub membership_violation: Option<Elem>,
    /// In iso modes: a target element not reached.
    pub missed: Option<Elem>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.order_violation.is_none() && self.membership_violation.is_none() && self.missed.is_none()
    }
}

pub enum CheckMode<'a> {
    Embedding,
    /// Every enumerated target element must be the image of an enumerated source element.
    Iso,
    /// Every enumerated target element `y` must satisfy `h(inv(y)) = y`.
    IsoWithInverse(&'a dyn Fn(&Elem) -> Elem),
}

/// Checks that `h` strictly preserves order on all pairs among the first
/// `bound` elements of `x`, and optionally that it is onto.
pub fn order_iso_check(
    x: &dyn CodedOrder,
    y: &dyn CodedOrder,
    h: &dyn Fn(&Elem) -> Elem,
    bound: usize,
    mode: CheckMode<'_>,
) -> IsoReport {
    let mut report = IsoReport::default();
    let mut src = x.enumerate(bound);
    src.sort_by(|a, b| x.compare(a, b));
    let images: Vec<Elem> = src.iter().map(h).collect();
    report.membership_violation = src.iter().zip(&images).find(|(_, img)| !y.contains(img)).map(|(s, _)| s.clone());
    'outer: for i in 0..src.len() {
        for j in (i + 1)..src.len() {
            report.pairs_checked += 1;
            if !y.less(&images[i], &images[j]) {
                report.order_violation = Some((src[i].clone(), src[j].clone()));
                break 'outer;
            }
        }
    }
    match mode {
        CheckMode::Embedding => {}
        CheckMode::Iso => {
            let hit: HashSet<&Elem> = images.iter().collect();
            report.missed = y.enumerate(bound).into_iter().find(|e| !hit.contains(e));
        }
        CheckMode::IsoWithInverse(inv) => {
            report.missed = y.enumerate(bound).into_iter().find(|e| {
                let back = inv(e);
                !x.contains(&back) || h(&back) != *e
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn emb(dom: usize, cod: usize, v: &[usize]) -> OrderEmbedding {
        OrderEmbedding::new(dom, cod, v.to_vec()).unwrap()
    }

    #[test]
    fn embeddings() {
        assert_eq!(OrderEmbedding::identity(3).values(), &[0, 1, 2]);
        assert_eq!(enumerate_all(2, 3).len(), 3);
        assert_eq!(enumerate_all(0, 4).len(), 1);
        assert_eq!(enumerate_all(3, 2).len(), 0);
        let c = compose(&emb(2, 3, &[0, 2]), &emb(3, 5, &[1, 3, 4])).unwrap();
        assert_eq!(c, emb(2, 5, &[1, 4]));
        assert!(matches!(OrderEmbedding::new(2, 3, vec![1, 1]), Err(OrderError::NotIncreasing(_))));
        assert!(matches!(OrderEmbedding::new(2, 3, vec![1, 3]), Err(OrderError::OutOfRange { .. })));
        assert!(compose(&emb(2, 3, &[0, 2]), &emb(2, 3, &[0, 1])).is_err());
    }

    #[test]
    fn binomial_counts() {
        for n in 0..8 {
            for m in 0..=n {
                let all = enumerate_all(m, n);
                let binom = (0..m).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
                assert_eq!(all.len(), binom);
                let distinct: HashSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), binom);
            }
        }
    }

    #[test]
    fn enumerations_and_restriction() {
        let x = Fin(10);
        let a = FinSubset::new(&x, vec![Elem::Nat(2), Elem::Nat(5), Elem::Nat(6)]).unwrap();
        assert_eq!(a.en(1), &Elem::Nat(5));
        let single = FinSubset::new(&x, vec![Elem::Nat(4)]).unwrap();
        assert_eq!(single.en(0), &Elem::Nat(4));
        let small = FinSubset::new(&x, vec![Elem::Nat(3), Elem::Nat(7)]).unwrap();
        let big = FinSubset::new(&x, vec![Elem::Nat(1), Elem::Nat(3), Elem::Nat(7)]).unwrap();
        let r = restrict(&x, &small, &big, &|e| e.clone()).unwrap();
        assert_eq!(r, emb(2, 3, &[1, 2]));
        // en(b) ∘ |f| = f ∘ en(a)
        for i in 0..small.len() {
            assert_eq!(big.en(r.apply(i)), small.en(i));
        }
        let swap = |e: &Elem| if *e == Elem::Nat(3) { Elem::Nat(7) } else { Elem::Nat(3) };
        assert!(restrict(&x, &small, &big, &swap).is_err());
        assert!(FinSubset::new(&x, vec![Elem::Nat(5), Elem::Nat(2)]).is_err());
        assert!(FinSubset::new(&x, vec![Elem::Nat(11)]).is_err());
    }

    #[test]
    fn built_orders() {
        let p = pow2(fin(2));
        let got = p.enumerate(10);
        let mut sorted = got.clone();
        sorted.sort_by(|a, b| p.compare(a, b));
        let want = vec![
            Elem::Seq(vec![]),
            Elem::Seq(vec![Elem::Nat(0)]),
            Elem::Seq(vec![Elem::Nat(1)]),
            Elem::Seq(vec![Elem::Nat(1), Elem::Nat(0)]),
        ];
        assert_eq!(sorted, want);
        assert_eq!(lift(fin(0)).enumerate(5), vec![Elem::Bot]);
        let w = ordinal_order(Ordinal::omega());
        assert_eq!(w.enumerate(3), vec![Elem::Ord(0.into()), Elem::Ord(1.into()), Elem::Ord(2.into())]);
        for n in 0..=10 {
            assert_eq!(pow2(ordinal_order(Ordinal::nat(n))).enumerate(5000).len(), 1 << n);
        }
        assert_eq!(lex_square(fin(3)).enumerate(100).len(), 16);
    }

    #[test]
    fn iso_checker() {
        let x = fin(4);
        let id = |e: &Elem| e.clone();
        assert!(order_iso_check(&*x, &*x, &id, 4, CheckMode::Iso).passed());
        let two = fin(2);
        let constant = |_: &Elem| Elem::Nat(0);
        let r = order_iso_check(&*two, &*two, &constant, 2, CheckMode::Embedding);
        assert_eq!(r.order_violation, Some((Elem::Nat(0), Elem::Nat(1))));
        let w2 = OrdinalOrder(ordinal::omega_pow(&2.into()));
        let denote = |e: &Elem| Elem::Ord(w2.denote(e).unwrap());
        assert!(order_iso_check(&w2, &w2, &denote, 50, CheckMode::Embedding).passed());
        // the shift n ↦ n+1 on fin(3) → fin(4) is an embedding but not onto
        let shift = |e: &Elem| Elem::Nat(e.as_nat().unwrap() + 1);
        let r = order_iso_check(&Fin(3), &Fin(4), &shift, 10, CheckMode::Iso);
        assert!(r.order_violation.is_none());
        assert_eq!(r.missed, Some(Elem::Nat(0)));
    }

    #[test]
    fn integers_enumerate_both_directions() {
        let z = Integers.enumerate(5);
        assert_eq!(z, vec![Elem::Int(0), Elem::Int(-1), Elem::Int(1), Elem::Int(-2), Elem::Int(2)]);
    }
}
