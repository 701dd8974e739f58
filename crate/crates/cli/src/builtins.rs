//! Scenarios shipped with the binary.

pub const BUILTINS: &[(&str, &str)] = &[
    ("z6-counterexample", include_str!("../scenarios/z6-counterexample.json")),
    ("notlattice-chain", include_str!("../scenarios/notlattice-chain.json")),
    ("goldie3-good", include_str!("../scenarios/goldie3-good.json")),
    ("goldie4", include_str!("../scenarios/goldie4.json")),
    ("eq-bad", include_str!("../scenarios/eq-bad.json")),
    ("wb-hull-roundtrip", include_str!("../scenarios/wb-hull-roundtrip.json")),
    ("pl-sine-analog", include_str!("../scenarios/pl-sine-analog.json")),
    ("cozbad", include_str!("../scenarios/cozbad.json")),
    ("liftwb-demo", include_str!("../scenarios/liftwb-demo.json")),
    ("pierce-stalks", include_str!("../scenarios/pierce-stalks.json")),
];

pub fn get(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
