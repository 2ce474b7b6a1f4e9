//! JSON schema stability: each report kind is rendered from a fixed input
//! and compared byte-for-byte with a checked-in file. Set `UPDATE_GOLDEN=1`
//! to rewrite the files after an intentional schema change.

use std::path::PathBuf;

use nestvar::io::{histogram, render, Format, Metadata, ReportBody, ReportDocument};
use nestvar::{
    decompose_ordered, generate_exam_like, random_subset_baseline, robustness_check, simulate_soo_recovery,
    soo_rank, BaselineConfig, CharacterColumn, Dataset, NumericVector, SimulationConfig,
};

fn d1() -> Dataset {
    Dataset::new(
        NumericVector::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap(),
        vec![
            CharacterColumn::new("A", vec!["a", "a", "b", "b"]).unwrap(),
            CharacterColumn::new("B", vec!["u", "v", "u", "v"]).unwrap(),
        ],
    )
    .unwrap()
}

fn check(name: &str, body: ReportBody) {
    let mut metadata = Metadata {
        tool_version: "golden".into(),
        input: Some("fixture".into()),
        ..Default::default()
    };
    metadata.config.insert("kind".into(), body.kind().into());
    let doc = ReportDocument::new(body, metadata);
    let json = render(&doc, Format::Json).unwrap();
    assert_eq!(ReportDocument::from_json(&json).unwrap(), doc);

    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &json).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(json, expected, "{name} drifted from its golden file");
}

#[test]
fn decomposition() {
    check(
        "decomposition",
        ReportBody::Decomposition(decompose_ordered(&d1(), &["A", "B"]).unwrap()),
    );
}

#[test]
fn ranking() {
    check("ranking", ReportBody::Ranking(soo_rank(&d1(), None).unwrap()));
}

#[test]
fn robustness() {
    check(
        "robustness",
        ReportBody::Robustness(robustness_check(&d1()).unwrap()),
    );
}

#[test]
fn baseline() {
    let d = generate_exam_like(4, 30, 1.0, 5).unwrap();
    let cfg = BaselineConfig {
        subset_size: 2,
        trials: 3,
        seed: 5,
    };
    check(
        "baseline",
        ReportBody::Baseline(random_subset_baseline(&d, &cfg).unwrap()),
    );
}

#[test]
fn simulation() {
    let cfg = SimulationConfig {
        num_characters: 3,
        population: 20,
        coefficients: vec![1.0, 0.6, 0.2],
        trials: 3,
        seed: 5,
        ..Default::default()
    };
    check(
        "simulation",
        ReportBody::Simulation(simulate_soo_recovery(&cfg).unwrap()),
    );
}

#[test]
fn histogram_report() {
    check(
        "histogram",
        ReportBody::Histogram(histogram(&[1.0, 2.0, 3.0, 4.0, -1.0], 2.0, 0.0, None).unwrap()),
    );
}
