use kdv_core::algebra::{int, rat};
use kdv_core::diffalg::Hierarchy;
use kdv_core::dmod::{calibrate_c0, char_report, Provenance, ResolutionSlice};
use kdv_core::{Error, Strategy};

#[test]
fn generators_through_degree_eight() {
    let rs = ResolutionSlice::new(8, Strategy::Sequential).unwrap();
    let reports = rs.kernel_reports(8).unwrap();
    for r in reports.iter().filter(|r| r.degree <= 3) {
        assert!(r.generators.is_empty(), "degree {}", r.degree);
    }
    let at = |d: u32| -> Vec<String> {
        reports[d as usize - 1]
            .generators
            .iter()
            .map(|g| g.expression.clone())
            .collect()
    };
    assert_eq!(at(4), ["∂₁²S₂ − 4S₄ + 6S₂²"]);
    assert_eq!(at(5), ["∂₃S₂ − ∂₁S₄"]);
    assert!(reports
        .iter()
        .flat_map(|r| &r.generators)
        .all(|g| g.provenance != Provenance::Unexplained));
    let json = serde_json::to_value(&reports[3]).unwrap();
    assert_eq!(json["generators"][0]["provenance"], "c-image");
}

#[test]
fn strategies_agree() {
    let a = ResolutionSlice::new(9, Strategy::Sequential)
        .unwrap()
        .kernel_reports(9)
        .unwrap();
    let b = ResolutionSlice::new(9, Strategy::Parallel)
        .unwrap()
        .kernel_reports(9)
        .unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn both_evaluations_define_the_same_quotient() {
    let rs = ResolutionSlice::new(8, Strategy::Parallel).unwrap();
    for d in 2..=8 {
        assert!(rs.same_quotient(d).unwrap().same, "degree {d}");
    }
}

#[test]
fn calibration_under_other_flow_constants() {
    assert_eq!(
        calibrate_c0(8, int(-2), Strategy::Parallel).unwrap(),
        int(2)
    );
    assert_eq!(
        calibrate_c0(8, int(1), Strategy::Parallel).unwrap(),
        rat(1, 2)
    );
}

#[test]
fn literal_constants_break_only_c() {
    let rs = ResolutionSlice::with_conventions(6, int(1), int(2), Strategy::Sequential).unwrap();
    assert!(rs.ev1_q_failures(6).unwrap().is_empty());
    assert!(!rs.ev1_c_failures(6).unwrap().is_empty());
}

#[test]
fn character_columns_telescope() {
    let r = char_report(30);
    assert!(r.equal);
    assert_eq!(r.columns.len(), 6);
}

#[test]
fn shallow_tables_are_reported() {
    let h = Hierarchy::new(4).unwrap();
    assert!(matches!(h.s(40), Err(Error::InsufficientDepth { .. })));
}
