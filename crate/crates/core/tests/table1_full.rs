//! Full hull enumeration for the larger reference rows. Minutes of CPU, so
//! ignored by default: `cargo test --release -p cyclotope --test table1_full -- --ignored`.

use cyclotope::facets3::AbcSpec;
use cyclotope::hull::{HullBudget, PointConfiguration};

fn facets(a: u64, b: u64, c: u64) -> (usize, usize, usize) {
    let spec = AbcSpec::new(a, b, c).unwrap();
    let config = PointConfiguration::from_cycle_type(&spec.cycle_type()).unwrap();
    let budget = HullBudget {
        max_rays: 5_000_000,
        ..HullBudget::default()
    };
    let h = config.facets(&budget).unwrap();
    (h.dim(), config.len(), h.inequalities.len())
}

#[test]
#[ignore]
fn row_2_5_7() {
    assert_eq!(facets(2, 5, 7), (45, 70, 3839));
}

#[test]
#[ignore]
fn row_2_5_9() {
    assert_eq!(facets(2, 5, 9), (57, 90, 15373));
}

#[test]
#[ignore]
fn row_3_4_5() {
    assert_eq!(facets(3, 4, 5), (35, 60, 29387));
}
