use dilator_core::exp_derivative::{e_build, xi_build, xi_f, ETerm};
use dilator_core::extension::{compose, ext_mu, Zeta};
use dilator_core::normal_f::f_build;
use dilator_core::order::{self, fin, ordinal_order, CheckMode, CodedOrder};
use dilator_core::ordinal::{self, Ordinal};
use dilator_core::praedilator::validate_praedilator;
use dilator_core::Elem;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn xi_f_fixes_mu_images() {
    let g = xi_build();
    for x in [fin(3), ordinal_order(ordinal::mul(&Ordinal::omega(), &Ordinal::omega()))] {
        let xi = xi_f(x.clone(), &g);
        for pt in x.enumerate(8) {
            let m = ext_mu(&*g.s, &*x, &pt).unwrap();
            assert_eq!(xi.apply(&Elem::pair(m.clone(), Elem::Bot)).unwrap(), m);
        }
        assert_eq!(xi.apply(&Elem::Bot).unwrap(), Elem::ext(vec![], Elem::E(ETerm::zero())));
    }
}

#[test]
fn xi_f_is_monotone_on_random_pairs() {
    let g = xi_build();
    let xi = xi_f(fin(3), &g);
    let dom = xi.domain();
    let cod = xi.codomain();
    let elems = dom.enumerate(200);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let a = elems.choose(&mut rng).unwrap();
        let b = elems.choose(&mut rng).unwrap();
        let (xa, xb) = (xi.apply(a).unwrap(), xi.apply(b).unwrap());
        assert_eq!(dom.compare(a, b), cod.compare(&xa, &xb), "{a} vs {b}");
    }
}

#[test]
fn zeta_for_f_and_e_is_an_isomorphism() {
    let z = Zeta::new(f_build(), e_build(), fin(2));
    let (dom, cod) = (z.domain(), z.codomain());
    let fwd = |e: &Elem| z.forward(e).unwrap();
    let inv = |e: &Elem| z.inverse(e).unwrap();
    let r = order::order_iso_check(&*dom, &*cod, &fwd, 120, CheckMode::Embedding);
    assert!(r.passed(), "{r:?}");
    for e in cod.enumerate(120) {
        assert_eq!(fwd(&inv(&e)), e);
    }
}

#[test]
fn composites_of_f_are_praedilators() {
    let ff = compose(f_build(), f_build());
    let r = validate_praedilator(&*ff, 3, 30);
    assert!(r.passed(), "{r}");
    let fe = compose(f_build(), e_build());
    let r = validate_praedilator(&*fe, 3, 30);
    assert!(r.passed(), "{r}");
}
