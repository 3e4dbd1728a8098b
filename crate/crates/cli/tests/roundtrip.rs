use pmod::construct::{random_rect_barcode, random_upperset_barcode};
use pmod::GridPoint;
use pmod_cli::format::{GeneratedSpec, PolygonSpec};
use pmod_cli::{BarcodeFile, IntervalSpec, ModuleSpec};
use proptest::prelude::*;

fn coords(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1000i64..1000, dim)
}

fn spec(dim: usize) -> impl Strategy<Value = IntervalSpec> {
    let generated = move || {
        (prop::collection::vec(coords(dim), 0..4), coords(dim), coords(dim)).prop_map(|(generators, lo, hi)| {
            GeneratedSpec {
                generators,
                window: [lo, hi],
            }
        })
    };
    let rational = (-50i64..50, 1i64..9).prop_map(|(n, d)| [n, d]);
    prop_oneof![
        prop::collection::vec(coords(dim), 0..6).prop_map(IntervalSpec::Points),
        (coords(dim), coords(dim)).prop_map(|(a, b)| IntervalSpec::Rect([a, b])),
        generated().prop_map(IntervalSpec::Upperset),
        generated().prop_map(IntervalSpec::Downset),
        (prop::collection::vec([rational.clone(), rational], 0..6), 1u64..64)
            .prop_map(|(vertices, scale)| IntervalSpec::Polygon(PolygonSpec { vertices, scale })),
    ]
}

fn file() -> impl Strategy<Value = BarcodeFile> {
    (1usize..4).prop_flat_map(|dim| {
        let module = ("[A-Za-z0-9 _#\"\\\\]{0,8}", prop::collection::vec(spec(dim), 0..4))
            .prop_map(|(name, intervals)| ModuleSpec { name, intervals });
        (prop::collection::vec(module, 0..4), prop::option::of(1u64..100)).prop_map(move |(modules, scale)| {
            let mut f = BarcodeFile::new(dim, modules);
            f.scale = scale;
            f
        })
    })
}

proptest! {
    #[test]
    fn parse_inverts_print(f in file()) {
        let text = f.print();
        prop_assert_eq!(BarcodeFile::parse(&text).unwrap(), f);
    }

    #[test]
    fn specs_rebuild_the_same_bars(seed in any::<u64>(), dim in 1usize..4) {
        let b = random_rect_barcode(dim, 3, (-5, 5), 4, seed).unwrap();
        let m = ModuleSpec::from_barcode("M", &b);
        prop_assert_eq!(m.barcode(dim).unwrap(), b);
        let u = random_upperset_barcode(2, &GridPoint::from([0, 0]), &GridPoint::from([5, 5]), 3, seed).unwrap();
        let m = ModuleSpec::from_barcode("U", &u);
        let back = BarcodeFile::parse(&BarcodeFile::new(2, vec![m]).print()).unwrap();
        prop_assert_eq!(back.modules[0].barcode(2).unwrap(), u);
    }
}

#[test]
fn wrong_version_is_rejected() {
    let e = BarcodeFile::parse(r#"{"version": 2, "dim": 2, "modules": []}"#).unwrap_err();
    assert!(e.to_string().contains("version 2"));
}

#[test]
fn unknown_fields_are_rejected() {
    assert!(BarcodeFile::parse(r#"{"version": 1, "dim": 2, "modules": [], "extra": 0}"#).is_err());
    assert!(
        BarcodeFile::parse(r#"{"version": 1, "dim": 2, "modules": [{"name": "M", "intervals": [{"box": []}]}]}"#)
            .is_err()
    );
}

#[test]
fn polygon_spec_rasterizes() {
    let f = BarcodeFile::parse(
        r#"{"version": 1, "dim": 2, "modules": [{"name": "P", "intervals": [
            {"polygon": {"vertices": [[[0, 1], [0, 1]], [[1, 1], [0, 1]], [[1, 1], [1, 1]], [[0, 1], [1, 1]]], "scale": 4}}
        ]}]}"#,
    )
    .unwrap();
    let bars = f.modules[0].intervals(2).unwrap();
    // strict interior of [0, 4]²
    assert_eq!(
        bars[0],
        pmod::IntervalSet::rect(&GridPoint::from([1, 1]), &GridPoint::from([3, 3])).unwrap()
    );
    assert_eq!(f.modules[0].scales(), vec![4]);
}
