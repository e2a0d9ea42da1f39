//! The same sequence computed by independent parts of the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use signed_bernoulli::algebraic::FieldSpec;
use signed_bernoulli::asymptotics::recurrence;
use signed_bernoulli::measure::SignedMeasure;
use signed_bernoulli::oddm;
use signed_bernoulli::tree::PrunedTree;

#[test]
fn recurrence_total_variation_and_tree_sizes_agree() {
    for m in [2, 4, 6] {
        let spec = FieldSpec::new(m).unwrap();
        let table = recurrence(m, 16).unwrap();
        let tree = PrunedTree::build(&spec, 16).unwrap();
        for (n, nu) in SignedMeasure::signed_levels(&spec, 16)
            .unwrap()
            .iter()
            .enumerate()
        {
            let scaled = nu.total_variation() * BigRational::from_integer(BigInt::from(1u64 << n));
            assert_eq!(
                scaled,
                BigRational::from_integer(table.values()[n].clone()),
                "m={m} n={n}"
            );
            assert_eq!(
                BigInt::from(tree.level(n).len()),
                table.values()[n],
                "m={m} n={n}"
            );
        }
    }
}

#[test]
fn odd_m_totals_agree_with_measure_module() {
    let spec = FieldSpec::new(3).unwrap();
    let report = oddm::verify_no_decay(&spec, 9).unwrap();
    for level in &report.levels {
        let tv = SignedMeasure::signed(&spec, level.n)
            .unwrap()
            .total_variation();
        assert_eq!(
            level.total_variation,
            format!("{}/{}", tv.numer(), tv.denom())
        );
    }
}

#[test]
fn measure_json_round_trip() {
    let spec = FieldSpec::new(4).unwrap();
    let nu = SignedMeasure::signed(&spec, 9).unwrap();
    let back = SignedMeasure::from_json(&spec, &nu.to_json()).unwrap();
    assert_eq!(nu, back);
}
