use serde_json::Value;
use wkb_web::{airy_sweep, hardy_profile, stokes_view};

#[test]
fn canonical_and_traced_stokes() {
    let v: Value = serde_json::from_str(&stokes_view("", 0.0, 1.0).unwrap()).unwrap();
    assert_eq!(v["lines"].as_array().unwrap().len(), 3);
    let v: Value = serde_json::from_str(&stokes_view(r#"[["1",[1,0]],["2",[0.5,0]]]"#, 0.0, 0.8).unwrap()).unwrap();
    assert!(v["max_residual"].as_f64().unwrap() < 1e-10);
    assert!(stokes_view("[", 0.0, 1.0).is_err());
}

#[test]
fn sweep_tracks_contour() {
    let v: Value = serde_json::from_str(&airy_sweep(1.0, 0.0, 0.05, 0.2, 4, 24).unwrap()).unwrap();
    let pts = v.as_array().unwrap();
    assert_eq!(pts.len(), 4);
    assert!(pts.iter().all(|p| p["rel_error"].as_f64().unwrap() < 1e-8));
    assert!(airy_sweep(1.0, 0.0, 0.0, 0.2, 4, 24).is_err());
}

#[test]
fn hardy_samples() {
    let v: Value = serde_json::from_str(&hardy_profile(1, 0.1, 0.2, 1.2, 5).unwrap()).unwrap();
    assert_eq!(v["s"], "8/3*zh^3 - 2*zh*z");
    assert_eq!(v["samples"].as_array().unwrap().len(), 5);
}
