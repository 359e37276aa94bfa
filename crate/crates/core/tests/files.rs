use std::sync::Arc;

use fdtw_core::format::{cw_field, load_cdc, load_cw, save_cdc, save_cw};
use fdtw_core::verify::min_distance;
use fdtw_core::{construct, ConstantDimensionCode, FieldContext, Provenance};

#[test]
fn cdc_and_cw_files_round_trip_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let field = Arc::new(FieldContext::new(2, 4, None).unwrap());
    let cdc = ConstantDimensionCode::spread(field.clone(), 2).unwrap();

    let cdc_path = dir.path().join("spread.cdc");
    save_cdc(&cdc, &cdc_path).unwrap();
    let loaded = load_cdc(&cdc_path, 1000).unwrap();
    assert_eq!(loaded.words(), cdc.words());
    assert_eq!(loaded.tag(), Provenance::Spread);
    assert!(loaded.is_verified());

    let code = construct(&loaded).unwrap();
    let cw_path = dir.path().join("spread.cw");
    save_cw(&code, Some(&field), &cw_path).unwrap();
    let back = load_cw(&cw_path).unwrap();
    assert_eq!(back.words(), code.words());
    assert_eq!(min_distance(&back).unwrap().distance, 6);
    let text = std::fs::read_to_string(&cw_path).unwrap();
    assert_eq!(cw_field(&text).unwrap().as_ref(), Some(&*field));
}

#[test]
fn imported_codes_are_re_verified() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cdc");
    std::fs::write(&path, "2 4 1,1,0,0,1 2 4 file 2\n1000\n0100\n1000\n0010\n").unwrap();
    assert!(load_cdc(&path, 1000).is_err());
    assert!(load_cdc(&dir.path().join("missing.cdc"), 1000).is_err());
}
