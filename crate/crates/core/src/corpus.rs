//! The bundled example manifests.

use crate::manifest::Manifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
}

macro_rules! fixture {
    ($name:literal) => {
        Fixture { name: $name, source: include_str!(concat!("../fixtures/", $name, ".toml")) }
    };
}

pub const CORPUS: [Fixture; 8] = [
    fixture!("parallel-z"),
    fixture!("normal-xy"),
    fixture!("almost-paracosymplectic"),
    fixture!("inverse-root"),
    fixture!("g12-linear"),
    fixture!("paracontact-exp"),
    fixture!("eta-einstein-x2"),
    fixture!("flat-yz"),
];

pub fn find(name: &str) -> Option<&'static Fixture> {
    CORPUS.iter().find(|f| f.name == name)
}

impl Fixture {
    pub fn manifest(&self) -> Manifest {
        Manifest::parse(self.source).expect("bundled manifests are valid")
    }
}
