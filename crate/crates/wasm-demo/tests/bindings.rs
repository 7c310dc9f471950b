use crgeom_wasm_demo::{flow_explorer, positivity, webster_search, DIRECTION_SAMPLES};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.expect("binding succeeded")).expect("valid JSON")
}

#[test]
fn positivity_margin_is_the_minimum_direction() {
    let v = parse(positivity(1.0, 0.3, 0.1, 0.5));
    let dirs: Vec<f64> = v["directions"].as_array().unwrap().iter().map(|d| d.as_f64().unwrap()).collect();
    assert_eq!(dirs.len(), DIRECTION_SAMPLES);
    let min = dirs.iter().copied().fold(f64::INFINITY, f64::min);
    let margin = v["margin"].as_f64().unwrap();
    assert!(min >= margin - 1e-12 && min - margin < 1e-3);
    assert_eq!(v["verdict"], "positive");
    assert!(positivity(1.0, 0.0, 0.0, -1.0).is_err());
}

#[test]
fn webster_interval_and_curve() {
    let v = parse(webster_search(2.0, 1.0));
    let lambda = v["lambda"].as_f64().unwrap();
    assert!((lambda - 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(v["curve"].as_array().unwrap().len(), 121);

    let v = parse(webster_search(0.5, 1.0));
    assert!(v["mu_interval"].is_null());
    assert!(v["curve"].as_array().unwrap().iter().all(|p| p[1].as_f64().unwrap() <= 0.0));
}

#[test]
fn flow_explorer_runs_presets() {
    let v = parse(flow_explorer("pinched-demo", 8, 0.5, 0.05));
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.len() > 2);
    assert!(rows.iter().all(|r| r["margin"].as_f64().unwrap() > 0.0));
    assert_eq!(v["blowup"], false);

    let v = parse(flow_explorer("homogeneous:1,0", 8, 0.5, 1.0));
    assert_eq!(v["blowup"], true);

    assert!(flow_explorer("nonsense", 8, 0.5, 0.1).is_err());
    assert!(flow_explorer("pinched-demo", 64, 0.5, 0.1).is_err());
}
