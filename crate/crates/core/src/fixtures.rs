//! Bundled example inputs, embedded at compile time.

use std::sync::Arc;

use crate::functor::CoefFunctor;
use crate::global::GlobalCoveringFamily;
use crate::io::{self, ComplexFile, CoxeterFile, FunctorFile, GlobalFamilyFile, LocalFamilyFile, MorseFile, PosetFile};
use crate::poset::GradedPoset;
use crate::simplex::LocalCoveringFamily;

/// Three layers `x2,y2 ≤ x1,y1 ≤ x0,y0` (a 2-sphere) carrying `Z/2 → Z/4 → Z/12`.
pub const TORSION_TOWER_POSET: &str = include_str!("../fixtures/torsion_tower.poset.json");
pub const TORSION_TOWER_FUNCTOR: &str = include_str!("../fixtures/torsion_tower.functor.json");
pub const TORSION_TOWER_FAMILY: &str = include_str!("../fixtures/torsion_tower.family.json");

/// Three layers `a,b ≤ c,d,e ≤ f,g,h` with constant `Z` values and sign
/// `−1` on every arrow into or out of `d`.
pub const SIGNED_LAYERS_POSET: &str = include_str!("../fixtures/signed_layers.poset.json");
pub const SIGNED_LAYERS_FUNCTOR: &str = include_str!("../fixtures/signed_layers.functor.json");
pub const SIGNED_LAYERS_FAMILY: &str = include_str!("../fixtures/signed_layers.family.json");

/// Projective plane with 3 vertices, 6 edges and 4 triangles.
pub const RP2_POSET: &str = include_str!("../fixtures/rp2.poset.json");
pub const RP2_GLOBAL: &str = include_str!("../fixtures/rp2.global.json");

pub const TRIANGLE_BOUNDARY: &str = include_str!("../fixtures/triangle_boundary.complex.json");
pub const TETRAHEDRON_BOUNDARY: &str = include_str!("../fixtures/tetrahedron_boundary.complex.json");

pub const PATH_MORSE: &str = include_str!("../fixtures/path.morse.json");
/// Boundary of a triangle with exactly two critical cells.
pub const TRIANGLE_MORSE: &str = include_str!("../fixtures/triangle.morse.json");
/// A constant function, which is not a Morse function.
pub const TRIANGLE_CONSTANT_MORSE: &str = include_str!("../fixtures/triangle_constant.morse.json");

pub const COXETER_A1: &str = include_str!("../fixtures/a1.coxeter.json");
pub const COXETER_A2: &str = include_str!("../fixtures/a2.coxeter.json");
pub const COXETER_A1XA1: &str = include_str!("../fixtures/a1xa1.coxeter.json");
pub const COXETER_A3: &str = include_str!("../fixtures/a3.coxeter.json");
pub const COXETER_B3: &str = include_str!("../fixtures/b3.coxeter.json");
pub const COXETER_I2_5: &str = include_str!("../fixtures/i2_5.coxeter.json");

/// Simplicial complexes shipped as facet lists, by name.
pub const COMPLEXES: &[(&str, &str)] =
    &[("triangle_boundary", TRIANGLE_BOUNDARY), ("tetrahedron_boundary", TETRAHEDRON_BOUNDARY)];

/// Posets shipped as object/relation lists, by name.
pub const POSETS: &[(&str, &str)] =
    &[("torsion_tower", TORSION_TOWER_POSET), ("signed_layers", SIGNED_LAYERS_POSET), ("rp2", RP2_POSET)];

/// Valid Morse function fixtures, by name.
pub const MORSE: &[(&str, &str)] = &[("path", PATH_MORSE), ("triangle", TRIANGLE_MORSE)];

pub const COXETER: &[(&str, &str)] = &[
    ("a1", COXETER_A1),
    ("a2", COXETER_A2),
    ("a1xa1", COXETER_A1XA1),
    ("a3", COXETER_A3),
    ("b3", COXETER_B3),
    ("i2_5", COXETER_I2_5),
];

pub fn poset(text: &str) -> Arc<GradedPoset> {
    let file: PosetFile = io::parse(text).expect("bundled poset parses");
    Arc::new(GradedPoset::new(&file.to_data()).expect("bundled poset is valid"))
}

pub fn complex_poset(text: &str) -> Arc<GradedPoset> {
    let file: ComplexFile = io::parse(text).expect("bundled complex parses");
    Arc::new(file.build().expect("bundled complex is valid").face_poset())
}

pub fn functor(poset: &Arc<GradedPoset>, text: &str) -> CoefFunctor {
    let file: FunctorFile = io::parse(text).expect("bundled functor parses");
    file.build(poset.clone()).expect("bundled functor is valid")
}

pub fn local_family(poset: &GradedPoset, text: &str) -> LocalCoveringFamily {
    let file: LocalFamilyFile = io::parse(text).expect("bundled family parses");
    file.build(poset).expect("bundled family is valid")
}

pub fn global_family(poset: &GradedPoset, text: &str) -> GlobalCoveringFamily {
    let file: GlobalFamilyFile = io::parse(text).expect("bundled family parses");
    file.build(poset).expect("bundled family is valid")
}

pub fn morse(text: &str) -> MorseFile {
    io::parse(text).expect("bundled Morse file parses")
}

pub fn coxeter(text: &str) -> crate::coxeter::CoxeterSystem {
    let file: CoxeterFile = io::parse(text).expect("bundled Coxeter file parses");
    file.build().expect("bundled Coxeter system is valid")
}
