//! The bundled preset models. Each has a matching `catalog/<name>.json`.

use crate::group_model::{
    build_from_descriptor, CartanType, EssUnramDescriptor, FactorSpec, GroupModel, GroupSpec, Isogeny,
};

fn preset(label: &str, t: CartanType, iso: Isogeny, e: usize, f: usize, aut: Vec<usize>) -> GroupModel {
    let desc = EssUnramDescriptor::single(FactorSpec { cartan_type: t, isogeny: iso, e, f, frobenius_diagram_aut: aut });
    let mut m = build_from_descriptor(&desc).expect("catalog presets are valid");
    m.label = label.to_string();
    m
}

fn split(label: &str, t: CartanType, iso: Isogeny) -> GroupModel {
    preset(label, t, iso, 1, 1, (0..t.rank()).collect())
}

pub fn gl(n: usize) -> GroupModel {
    split(&format!("GL{n}"), CartanType::A(n - 1), Isogeny::GlType)
}

pub fn sl(n: usize) -> GroupModel {
    split(&format!("SL{n}"), CartanType::A(n - 1), Isogeny::SimplyConnected)
}

pub fn pgl(n: usize) -> GroupModel {
    split(&format!("PGL{n}"), CartanType::A(n - 1), Isogeny::Adjoint)
}

/// Quasi-split unramified `SU_3`: simply connected `A_2`, Frobenius the flip.
pub fn su3() -> GroupModel {
    preset("SU3", CartanType::A(2), Isogeny::SimplyConnected, 1, 1, vec![1, 0])
}

/// Quasi-split unramified `U_3`.
pub fn u3() -> GroupModel {
    preset("U3", CartanType::A(2), Isogeny::GlType, 1, 1, vec![1, 0])
}

pub fn b2() -> GroupModel {
    split("B2", CartanType::B(2), Isogeny::SimplyConnected)
}

pub fn g2() -> GroupModel {
    split("G2", CartanType::G2, Isogeny::Adjoint)
}

pub fn res_ram_gl2() -> GroupModel {
    preset("ResRam GL2 (e=2)", CartanType::A(1), Isogeny::GlType, 2, 1, vec![0])
}

pub fn res_unram_gl2() -> GroupModel {
    preset("ResUnram GL2 (f=2)", CartanType::A(1), Isogeny::GlType, 1, 2, vec![0])
}

pub fn res_ram_sl2() -> GroupModel {
    preset("ResRam SL2 (e=2)", CartanType::A(1), Isogeny::SimplyConnected, 2, 1, vec![0])
}

pub fn res_ram_pgl2() -> GroupModel {
    preset("ResRam PGL2 (e=2)", CartanType::A(1), Isogeny::Adjoint, 2, 1, vec![0])
}

pub fn res_unram_sl2() -> GroupModel {
    preset("ResUnram SL2 (f=2)", CartanType::A(1), Isogeny::SimplyConnected, 1, 2, vec![0])
}

/// `(file stem, model)` for every catalog entry, in a fixed order.
pub fn all() -> Vec<(&'static str, GroupModel)> {
    vec![
        ("gl2", gl(2)),
        ("gl3", gl(3)),
        ("gl4", gl(4)),
        ("sl2", sl(2)),
        ("pgl2", pgl(2)),
        ("sl3", sl(3)),
        ("pgl3", pgl(3)),
        ("su3", su3()),
        ("u3", u3()),
        ("b2", b2()),
        ("g2", g2()),
        ("res_ram_gl2", res_ram_gl2()),
        ("res_unram_gl2", res_unram_gl2()),
        ("res_ram_sl2", res_ram_sl2()),
        ("res_ram_pgl2", res_ram_pgl2()),
        ("res_unram_sl2", res_unram_sl2()),
    ]
}

pub fn by_name(name: &str) -> Option<GroupModel> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, m)| m)
}

/// The `group-spec v1` document for a catalog model.
pub fn spec_of(model: &GroupModel) -> GroupSpec {
    GroupSpec::from_preset(&model.label, model.preset.clone().expect("catalog models are presets"))
}
