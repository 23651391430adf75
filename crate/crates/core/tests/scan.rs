use ballmaps_core::{
    scan, standard_catalog, ClassifyOptions, Compactness, ScanFilter, ScanRow, ScanStage, Stage, Witness,
};

fn rows(filter: ScanFilter) -> Vec<ScanRow> {
    let cat = standard_catalog();
    scan(&cat, &cat, &filter, &ClassifyOptions::default())
}

fn pairs(rows: &[ScanRow]) -> Vec<String> {
    let mut v: Vec<String> = rows.iter().map(|r| format!("{} -> {}", r.source.weights, r.target.weights)).collect();
    v.dedup();
    v
}

fn cocompact(m: std::ops::RangeInclusive<usize>, n: std::ops::RangeInclusive<usize>, stage: ScanStage) -> ScanFilter {
    ScanFilter { source_dims: m, target_dims: n, compactness: Compactness::Cocompact, stage, include_trivial: false }
}

#[test]
fn cocompact_divisibility_stage() {
    let r = rows(cocompact(3..=9, 1..=9, ScanStage::Divisibility));
    assert_eq!(
        pairs(&r),
        vec!["(3,3,3,3,3,1)/8 -> (5,5,5,1)/8", "(3,3,3,3,3,1)/8 -> (7,3,3,3)/8", "(6,3,3,3,3,2)/10 -> (8,3,3,3,3)/10"]
    );
    let last = r.last().unwrap();
    let c = last.finest_choice().unwrap();
    assert!(!c.verdict.qprime_ok);
    assert!(
        matches!(&c.verdict.witnesses[..], [(Stage::QPrime, Witness::FixedElement { element })] if element.cycle_type() == [2, 2])
    );
}

#[test]
fn cocompact_full_pipeline() {
    let r = rows(cocompact(3..=9, 1..=9, ScanStage::Full));
    assert_eq!(pairs(&r), vec!["(3,3,3,3,3,1)/8 -> (5,5,5,1)/8", "(3,3,3,3,3,1)/8 -> (7,3,3,3)/8"]);
    assert_eq!(r[0].dual_partner.as_ref().unwrap(), &r[1].target.weights);
}

#[test]
fn non_compact_divisibility_stage() {
    let r = rows(ScanFilter {
        compactness: Compactness::NonCompact,
        stage: ScanStage::Divisibility,
        ..ScanFilter::default()
    });
    assert_eq!(
        pairs(&r),
        vec![
            "(3,3,2,2,2)/6 -> (5,2,2,2,1)/6",
            "(7,5,4,4,4)/12 -> (5,2,2,2,1)/6",
            "(3,3,2,2,1,1)/6 -> (4,4,3,1)/6",
            "(3,3,2,2,1,1)/6 -> (5,3,2,2)/6",
            "(3,3,2,2,1,1)/6 -> (9,7,7,1)/12",
            "(3,3,2,2,1,1)/6 -> (11,5,5,3)/12",
        ]
    );
}

#[test]
fn four_dimensional_sources_never_map() {
    for n in 1..=4 {
        assert!(rows(cocompact(4..=4, n..=n, ScanStage::Full)).is_empty());
    }
}
