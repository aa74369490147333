use super::*;

fn l(t: &[(i64, i64)]) -> LaurentInt {
    LaurentInt::from_pairs(t)
}

fn r(t: &[(i64, i64)]) -> RatFunc {
    RatFunc::from(l(t))
}

fn alg(t: &str, h: u32) -> Algebra {
    Algebra::new(RootDatum::named(t).unwrap(), h)
}

fn w(v: &[u32]) -> Weight {
    Weight(v.to_vec())
}

#[test]
fn gram_examples() {
    let a2 = alg("A2", 4);
    let sp = a2.weight_space(&w(&[1, 1])).unwrap();
    assert_eq!(sp.words(), &[vec![0, 1], vec![1, 0]]);
    assert_eq!(sp.gram(), &[vec![l(&[(0, 1)]), l(&[(1, 1)])], vec![l(&[(1, 1)]), l(&[(0, 1)])]]);
    assert_eq!(sp.pivots(), &[0, 1]);

    let aff = alg("A1(1)", 4);
    let sp = aff.weight_space(&w(&[1, 1])).unwrap();
    assert_eq!(sp.gram()[0][1], l(&[(2, 1)]));

    let a1 = alg("A1", 4);
    let sp = a1.weight_space(&w(&[2])).unwrap();
    assert_eq!(sp.gram(), &[vec![l(&[(0, 1), (-2, 1)])]]);
}

#[test]
fn gram_is_symmetric_and_dimensions_match_known_values() {
    for (t, nu, dim) in [("A2", vec![2, 1], 2), ("A2", vec![2, 2], 3), ("B2", vec![1, 2], 3), ("G2", vec![1, 3], 4), ("A3", vec![1, 1, 1], 4)] {
        let a = alg(t, 6);
        let sp = a.weight_space(&w(&nu)).unwrap();
        let g = sp.gram();
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, g[j][i]);
            }
        }
        assert_eq!(sp.dim(), dim, "{t} {nu:?}");
    }
}

#[test]
fn pairing_examples() {
    let a2 = alg("A2", 4);
    let f = |v: &[usize]| a2.word(v).unwrap();
    assert_eq!(a2.pair(&f(&[0]), &f(&[0])).unwrap(), RatFunc::one());
    assert_eq!(a2.pair(&f(&[0]), &f(&[1])).unwrap(), RatFunc::zero());
    assert_eq!(a2.pair(&f(&[0, 1]), &f(&[1, 0])).unwrap(), r(&[(1, 1)]));
    let a1 = alg("A1", 4);
    let f2 = a1.word(&[0, 0]).unwrap();
    assert_eq!(a1.pair(&f2, &f2).unwrap(), r(&[(0, 1), (-2, 1)]));
}

#[test]
fn multiply_examples() {
    let a2 = alg("A2", 4);
    let f1 = a2.generator(0).unwrap();
    let f2 = a2.generator(1).unwrap();
    assert_eq!(a2.multiply(&a2.one(), &f2).unwrap(), f2);
    assert_eq!(a2.multiply(&f1, &f2).unwrap().coords(), &[RatFunc::one(), RatFunc::zero()]);
    let a1 = alg("A1", 4);
    let f = a1.generator(0).unwrap();
    let ff = a1.multiply(&f, &f).unwrap();
    assert_eq!(ff.coords(), &[RatFunc::one()]);
    assert_eq!(a1.pair(&ff, &a1.word(&[0, 0]).unwrap()).unwrap(), r(&[(0, 1), (-2, 1)]));
}

#[test]
fn derivation_examples() {
    let a2 = alg("A2", 4);
    let f = |v: &[usize]| a2.word(v).unwrap();
    assert_eq!(a2.ir(&f(&[0]), 0).unwrap(), a2.one());
    assert!(a2.ir_opt(&f(&[1]), 0).unwrap().is_none());
    assert_eq!(a2.ir(&f(&[1, 0]), 0).unwrap(), f(&[1]).shift(1));
    let t = &f(&[0, 1]) - &f(&[1, 0]).shift(1);
    assert!(a2.ri(&t, 0).unwrap().is_zero());
}

#[test]
fn involution_examples() {
    let a2 = alg("A2", 4);
    let f12 = a2.word(&[0, 1]).unwrap();
    let f21 = a2.word(&[1, 0]).unwrap();
    assert_eq!(a2.star(&f12).unwrap(), f21);
    assert_eq!(a2.bar(&f12.shift(1)), f12.shift(-1));
    let x = &f12.scale(&r(&[(2, 3)])) + &f21.scale(&r(&[(-1, 1), (0, 2)]));
    assert_eq!(a2.star(&a2.star(&x).unwrap()).unwrap(), x);
    assert_eq!(a2.bar(&a2.bar(&x)), x);
    assert_eq!(a2.sigma(&a2.sigma(&x).unwrap()).unwrap(), x);
}

#[test]
fn divided_monomial_examples() {
    let a1 = alg("A1", 4);
    let d = a1.divided_monomial(&[(0, 2)]).unwrap();
    let expect = a1.word(&[0, 0]).unwrap().scale(&RatFunc::new(LaurentInt::one(), l(&[(1, 1), (-1, 1)])).unwrap());
    assert_eq!(d, expect);
    assert_eq!(a1.divided_monomial(&[(0, 1)]).unwrap(), a1.generator(0).unwrap());
    let a2 = alg("A2", 4);
    assert_eq!(a2.divided_monomial(&[(0, 1), (1, 1), (0, 1)]).unwrap(), a2.word(&[0, 1, 0]).unwrap());
}

#[test]
fn decomposition_examples() {
    let a2 = alg("A2", 4);
    let f = |v: &[usize]| a2.word(v).unwrap();
    assert_eq!(a2.kashiwara_decompose(&f(&[1]), 0).unwrap(), vec![(0, f(&[1]))]);
    assert_eq!(a2.kashiwara_decompose(&f(&[0, 1]), 0).unwrap(), vec![(1, f(&[1]))]);
    let parts = a2.kashiwara_decompose(&f(&[1, 0]), 0).unwrap();
    assert_eq!(parts, vec![(0, &f(&[1, 0]) - &f(&[0, 1]).shift(1)), (1, f(&[1]).shift(1))]);
}

#[test]
fn kashiwara_operator_examples() {
    let a2 = alg("A2", 4);
    let f = |v: &[usize]| a2.word(v).unwrap();
    assert_eq!(a2.kashiwara_f(&a2.one(), 0).unwrap(), f(&[0]));
    assert_eq!(a2.kashiwara_f(&f(&[1]), 0).unwrap(), f(&[0, 1]));
    assert_eq!(a2.kashiwara_e(&f(&[1, 0]), 0).unwrap().unwrap(), f(&[1]).shift(1));
    assert!(a2.kashiwara_e(&f(&[1]), 0).unwrap().is_none());
}

#[test]
fn dual_integral_examples() {
    let a1 = alg("A1", 4);
    assert!(a1.in_dual_integral_form(&a1.generator(0).unwrap()).unwrap());
    assert!(a1.in_dual_integral_form(&a1.word(&[0, 0]).unwrap().shift(1)).unwrap());
    assert_eq!(a1.dual_integrality(&a1.word(&[0, 0]).unwrap().scale(&RatFunc::new(l(&[(0, 1)]), l(&[(0, 2)])).unwrap())).unwrap(), Integrality::RationalOnly);
    let a2 = alg("A2", 4);
    let up = (&a2.word(&[0, 1]).unwrap() - &a2.word(&[1, 0]).unwrap().shift(1)).scale(&RatFunc::new(LaurentInt::one(), l(&[(0, 1), (2, -1)])).unwrap());
    assert!(a2.in_dual_integral_form(&up).unwrap());
    assert!(!a2.in_dual_integral_form(&a2.word(&[0, 1]).unwrap().scale(&RatFunc::new(LaurentInt::one(), l(&[(0, 1), (2, -1)])).unwrap())).unwrap());
    assert_eq!(a2.divided_words(&w(&[1, 1])).len(), 2);
    assert_eq!(a2.divided_words(&w(&[2, 1])).len(), 3);
}

#[test]
fn q_serre_vanishes() {
    for t in ["A2", "B2", "G2", "A3", "A1(1)"] {
        assert!(alg(t, 5).q_serre_certificate().unwrap(), "{t}");
    }
    let a2 = alg("A2", 4);
    assert_eq!(a2.q_serre_residuals(0, 1).unwrap().len(), 3);
    assert_eq!(a2.dim(&w(&[2, 1])).unwrap(), 2);
}

#[test]
fn height_bound_is_enforced() {
    let a2 = alg("A2", 2);
    assert!(matches!(a2.weight_space(&w(&[2, 1])), Err(Error::HeightExceeded { height: 3, bound: 2 })));
}

#[test]
fn json_roundtrip() {
    let a2 = alg("A2", 4);
    let x = &a2.word(&[0, 1]).unwrap() - &a2.word(&[1, 0]).unwrap().shift(1);
    let v = a2.to_json(&x).unwrap();
    assert_eq!(v["weight"], serde_json::json!([1, 1]));
    assert_eq!(v["coords"]["12"], serde_json::json!({"num": {"0": 1}, "den": {"0": 1}}));
    assert_eq!(a2.from_json(&v).unwrap(), x);
    assert_eq!(a2.describe(&x), "f12 + (-q)·f21");
}
