use super::*;
use crate::rootdata::RootDatum;

fn ctx(t: &str, h: u32) -> CanonicalContext {
    CanonicalContext::new(RootDatum::named(t).unwrap(), h)
}

fn w(v: &[u32]) -> Weight {
    Weight(v.to_vec())
}

fn record<'a>(r: &'a VerifyReport, nu: &[u32]) -> &'a WeightRecord {
    r.records.iter().find(|x| x.weight == w(nu)).unwrap()
}

fn entry(rec: &WeightRecord, row: &str, col: &str) -> RatFunc {
    let i = rec.rows.iter().position(|r| r == row).unwrap();
    let j = rec.columns.iter().position(|c| c == col).unwrap();
    rec.matrix[i][j].clone()
}

#[test]
fn a2_s1_factorization_example() {
    let c = ctx("A2", 4);
    let r = check_factorization(&c, &[0], Sign::Plus, false).unwrap();
    assert!(r.pass(), "{:?}", r.failures().next());
    let rec = record(&r, &[1, 1]);
    assert_eq!(rec.rows, vec!["u ⊗ b[21]", "b[1] ⊗ b[2]"]);
    assert_eq!(entry(rec, "b[1] ⊗ b[2]", "b[12]"), RatFunc::one());
    assert_eq!(entry(rec, "b[1] ⊗ b[2]", "b[21]"), RatFunc::q_pow(1));
    assert_eq!(entry(rec, "u ⊗ b[21]", "b[21]"), RatFunc::one());
    assert_eq!(entry(rec, "u ⊗ b[21]", "b[12]"), RatFunc::zero());
    let zero = record(&r, &[0, 0]);
    assert_eq!(zero.matrix, vec![vec![RatFunc::one()]]);

    let opp = check_factorization(&c, &[0], Sign::Plus, true).unwrap();
    assert!(opp.pass(), "{:?}", opp.failures().next());
    let rec = record(&opp, &[1, 1]);
    assert_eq!(entry(rec, "b[1] ⊗ b[2]", "b[12]"), RatFunc::q_pow(1));
    assert_eq!(rec.rows, record(&r, &[1, 1]).rows);
}

#[test]
fn a2_main_checks_pass_for_small_words() {
    let c = ctx("A2", 4);
    for word in [vec![0usize], vec![0, 1], vec![0, 1, 0]] {
        for eps in [Sign::Plus, Sign::Minus] {
            for rep in [
                check_factorization(&c, &word, eps, false).unwrap(),
                check_factorization(&c, &word, eps, true).unwrap(),
                check_multiplicity_free(&c, &word, eps).unwrap(),
                check_omega(&c, &word, eps).unwrap(),
            ] {
                assert!(rep.pass(), "{} {word:?} {eps}: {:?}", rep.theorem.tag(), rep.failures().next().map(|f| &f.witness));
            }
        }
    }
}

#[test]
fn truncated_products_example() {
    let c = ctx("A2", 4);
    for p in 0..3 {
        let r = check_truncated_products(&c, &[0, 1, 0], Sign::Plus, p).unwrap();
        assert!(r.pass(), "p={p}: {:?}", r.failures().next().map(|f| &f.witness));
    }
    let r = check_truncated_products(&c, &[0, 1, 0], Sign::Plus, 1).unwrap();
    let rec = record(&r, &[1, 1]);
    assert_eq!(entry(rec, "(1,0,1)", "b[12]"), RatFunc::one());
    assert_eq!(entry(rec, "(1,0,1)", "b[21]"), RatFunc::q_pow(1));
    assert!(check_truncated_products(&c, &[0, 1, 0], Sign::Plus, 3).is_err());
}

#[test]
fn triple_intersection_small() {
    let c = ctx("A2", 4);
    for p in 0..=3 {
        let r = check_triple_intersection(&c, &[0, 1, 0], p).unwrap();
        assert!(r.pass(), "p={p}: {:?}", r.failures().next().map(|f| &f.witness));
        assert_eq!(r.findings().count(), 0);
    }
}

#[test]
fn affine_factorization_small() {
    let c = ctx("A1(1)", 4);
    for word in [vec![0usize], vec![0, 1]] {
        let r = check_factorization(&c, &word, Sign::Plus, false).unwrap();
        assert!(r.pass(), "{word:?}: {:?}", r.failures().next().map(|f| &f.witness));
    }
}

#[test]
fn failing_rows_carry_witnesses() {
    let names = vec!["b[1]".to_string(), "b[2]".to_string()];
    let data = vec![vec![1], vec![0]];
    let mut rec = WeightRecord::new(w(&[1, 1]), 2);
    check_row(&mut rec, "r", &[RatFunc::from_int(2), RatFunc::zero()], 0, &data, &names, 0, false);
    assert_eq!(rec.witness.as_ref().unwrap().kind, "leading-coefficient");
    assert_eq!(rec.witness.as_ref().unwrap().coefficient.as_deref(), Some("2"));

    let mut rec = WeightRecord::new(w(&[1, 1]), 2);
    check_row(&mut rec, "r", &[RatFunc::one(), RatFunc::one()], 0, &data, &names, 0, false);
    assert_eq!(rec.witness.as_ref().unwrap().kind, "tail-coefficient");

    let mut rec = WeightRecord::new(w(&[1, 1]), 2);
    check_row(&mut rec, "r", &[RatFunc::q_pow(1), RatFunc::one()], 1, &data, &names, 0, false);
    assert_eq!(rec.witness.as_ref().unwrap().kind, "support-order");

    let mut rec = WeightRecord::new(w(&[1, 1]), 2);
    rec.rows = vec!["x".into()];
    rec.matrix = vec![vec![RatFunc::one(), RatFunc::zero()]];
    check_unit_det(&mut rec);
    assert_eq!(rec.witness.as_ref().unwrap().kind, "dimension");
}

#[test]
fn report_serialization() {
    let c = ctx("A2", 2);
    let r = check_factorization(&c, &[0], Sign::Plus, false).unwrap();
    let v = r.to_json();
    assert_eq!(v["theorem"], "factorization");
    assert_eq!(v["type"], "A2");
    assert_eq!(v["word"], serde_json::json!(["1"]));
    assert_eq!(v["epsilon"], 1);
    assert_eq!(v["pass"], true);
    let rec = &v["weights"][4];
    assert_eq!(rec["weight"], serde_json::json!([1, 1]));
    assert_eq!(rec["dim"], 2);
    assert_eq!(rec["witness"], serde_json::Value::Null);
    let csv = r.to_csv();
    assert!(csv.starts_with("theorem,type,word,epsilon,weight,dim,pass,row,column,value,witness\n"));
    assert!(csv.contains("factorization,A2,1,1,\"(1,1)\",2,true,b[1] ⊗ b[2],b[21],q,"));
    assert_eq!(Theorem::from_tag("omega"), Some(Theorem::Omega));
}
