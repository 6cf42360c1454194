//! Fixtures shared by the criterion benchmarks in `benches/`.

use fgrad_core::{AdmissibleModule, DegreeWindow, ModulePresentation, Polynomial, Ring, RingRef};

pub fn polys(r: &RingRef, s: &[&str]) -> Vec<Polynomial> {
    r.parse_list(s).expect("fixture parses")
}

/// Ideals of growing Gröbner difficulty in Q[x,y,z].
pub fn buchberger_inputs() -> Vec<(&'static str, Vec<Polynomial>)> {
    let r = Ring::rational(&["x", "y", "z"]);
    vec![
        ("twisted-cubic", polys(&r, &["x*z - y^2", "x^2*y - z^2", "x^3 - y*z"])),
        ("symmetric", polys(&r, &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"])),
        ("cyclic3", polys(&r, &["x^2*y - z^3", "x*z^2 - y^3", "y*z^2 - x^3"])),
    ]
}

/// Modules M for Ext^i(M, R) on Q[x,y,z].
pub fn ext_inputs() -> Vec<(&'static str, ModulePresentation)> {
    let r = Ring::rational(&["x", "y", "z"]);
    let cyc = |g: &[&str]| ModulePresentation::cyclic(&r, &polys(&r, g)).expect("cyclic module");
    vec![
        ("residue-field", cyc(&["x", "y", "z"])),
        ("two-lines", cyc(&["x*y", "x*z"])),
        ("quadrics", cyc(&["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"])),
    ]
}

/// (a, M, N, window) inputs for Čech tables on the fine-graded Q[x,y,z].
pub fn cech_inputs() -> Vec<(&'static str, Vec<Polynomial>, ModulePresentation, AdmissibleModule, DegreeWindow)> {
    let r = Ring::rational_fine(&["x", "y", "z"]);
    let adm = |g: &[&str]| AdmissibleModule::cyclic(&r, &polys(&r, g)).expect("admissible module");
    let free = ModulePresentation::ring_module(&r);
    let window = |k: i64| DegreeWindow::cube(3, -k, k).expect("window");
    vec![
        ("local-m", polys(&r, &["x", "y", "z"]), free.clone(), adm(&[]), window(2)),
        ("local-lines", polys(&r, &["y", "z"]), free, adm(&["x*y", "x*z"]), window(3)),
        (
            "gen-quotient",
            polys(&r, &["x", "y"]),
            ModulePresentation::cyclic(&r, &polys(&r, &["x"])).expect("cyclic module"),
            adm(&["y*z"]),
            window(2),
        ),
    ]
}
