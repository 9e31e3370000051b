use amc_core::baseline::{check, Baselines, CHECKS};
use amc_core::curves::CurveSystem;
use amc_core::farey::Slope;
use amc_core::fixtures::{bundled, farey_base, sphere_base};
use amc_core::io::{self, BallFile, CurveFile, MarkingFile, ScaleSpec};
use amc_core::markings::{from_record, BallGraph, Caps, FareyModel, SphereModel};
use amc_core::{Error, SurfaceKind};

#[test]
fn bundled_fixtures_are_current() {
    let dir = io::fixture_dir();
    let files = bundled().unwrap();
    assert_eq!(files.len(), 11);
    for (name, value) in files {
        let on_disk: serde_json::Value = io::read_json(&dir.join(&name)).unwrap();
        assert_eq!(on_disk, value, "{name} differs from its generator");
    }
}

#[test]
fn marking_files_round_trip() {
    let model = SphereModel::new().unwrap();
    let m = sphere_base(&model).unwrap().with_depths(&[4, 1]).unwrap();
    let file = MarkingFile::new(SurfaceKind::S05, &m);
    let text = serde_json::to_string(&file).unwrap();
    let back: MarkingFile = serde_json::from_str(&text).unwrap();
    assert_eq!(from_record(&model, &back.record::<CurveSystem>().unwrap()).unwrap(), m);
    assert!(text.contains("\"0,5\""));

    let fm = FareyModel::new(SurfaceKind::S11).unwrap();
    let f = MarkingFile::new(SurfaceKind::S11, &farey_base());
    let back: MarkingFile = serde_json::from_value(serde_json::to_value(&f).unwrap()).unwrap();
    assert_eq!(from_record(&fm, &back.record::<Slope>().unwrap()).unwrap(), farey_base());
}

#[test]
fn curve_files_validate_coordinates() {
    let model = SphereModel::new().unwrap();
    let c = model.atlas().engine().round_curve(2).clone();
    let file = CurveFile::new(SurfaceKind::S05, &c);
    assert_eq!(file.curve::<CurveSystem>().unwrap(), c);
    let mut bad = file.clone();
    bad.coords[0] += 1;
    assert!(bad.curve::<CurveSystem>().is_err());
}

#[test]
fn ball_files_round_trip() {
    let model = FareyModel::new(SurfaceKind::S04).unwrap();
    let g = BallGraph::generate(&model, &farey_base(), 3, &Caps::default()).unwrap();
    let file = BallFile::new(SurfaceKind::S04, &g);
    let back: BallFile = serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
    let h = back.graph::<Slope>().unwrap();
    assert_eq!(h.vertices, g.vertices);
    assert_eq!(h.adjacency, g.adjacency);
    assert_eq!(h.depth, g.depth);
}

#[test]
fn scale_specs() {
    assert_eq!(ScaleSpec::Named("lin".into()).build(3).unwrap().values(), &[1, 2, 3]);
    assert_eq!(ScaleSpec::Named("quad".into()).build(3).unwrap().values(), &[1, 4, 9]);
    assert!(ScaleSpec::Named("cubic".into()).build(3).is_err());
    let parsed: ScaleSpec = serde_json::from_str("[2, 3, 5]").unwrap();
    assert_eq!(parsed.build(3).unwrap().values(), &[2, 3, 5]);
    assert!(parsed.build(4).is_err());
}

#[test]
fn missing_fixture_is_an_error() {
    let r: amc_core::Result<serde_json::Value> = io::read_json(&io::fixture_dir().join("no_such_file.json"));
    assert!(r.is_err());
}

#[test]
fn regression_checks_detect_tampering() {
    let frozen = Baselines::load(&Baselines::default_path()).unwrap();
    for name in ["ball-s04-r6", "twist-coordinate", "bgit"] {
        assert!(CHECKS.contains(&name));
        assert!(check(name, &frozen).unwrap().pass, "{name} fails against its frozen value");
    }
    let mut tampered = frozen.clone();
    tampered.s04_ball6.1 += 1;
    tampered.twist_excess.1 -= 1;
    tampered.bgit.0 += 1;
    for name in ["ball-s04-r6", "twist-coordinate", "bgit"] {
        assert!(!check(name, &tampered).unwrap().pass, "{name} accepts a tampered value");
    }
    assert_eq!(check("nonsense", &frozen), Err(Error::UnknownCheck("nonsense".into())));
}

#[test]
fn baselines_round_trip_atomically() {
    let frozen = Baselines::load(&Baselines::default_path()).unwrap();
    let dir = std::env::temp_dir().join(format!("amc-io-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("baselines.json");
    frozen.save(&path).unwrap();
    assert_eq!(Baselines::load(&path).unwrap(), frozen);
    assert!(!dir.join("baselines.json.tmp").exists());
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(matches!(Baselines::load(&path), Err(Error::MissingBaseline(_))));
}
