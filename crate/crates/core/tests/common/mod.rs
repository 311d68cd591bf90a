//! Classical monomial counts shared by the oracle and acceptance suites.

/// Classical shape of a presentation: generators with unbounded exponent,
/// generators with exponent at most one, and pairs that may not both occur.
pub struct Shape {
    pub free: &'static [&'static str],
    pub square_zero: &'static [&'static str],
    pub forbidden: &'static [(&'static str, &'static str)],
}

/// Monomials of degree `n`, by direct enumeration of exponent vectors.
pub fn count(shape: &Shape, n: usize) -> usize {
    let names: Vec<&str> = shape.free.iter().chain(shape.square_zero).copied().collect();
    let k = names.len();
    let mut total = 0;
    let mut exps = vec![0usize; k];
    fn rec(i: usize, left: usize, exps: &mut Vec<usize>, names: &[&str], shape: &Shape, total: &mut usize) {
        if i == exps.len() {
            if left == 0 {
                let pos = |g: &str| names.iter().position(|x| *x == g).unwrap();
                if shape.forbidden.iter().all(|(a, b)| exps[pos(a)] == 0 || exps[pos(b)] == 0) {
                    *total += 1;
                }
            }
            return;
        }
        let cap = if shape.square_zero.contains(&names[i]) { left.min(1) } else { left };
        for e in 0..=cap {
            exps[i] = e;
            rec(i + 1, left - e, exps, names, shape, total);
        }
        exps[i] = 0;
    }
    rec(0, n, &mut exps, &names, shape, &mut total);
    total
}

pub fn shapes() -> Vec<(&'static str, Shape)> {
    let s = |free, square_zero| Shape { free, square_zero, forbidden: &[] };
    vec![
        ("pres.cq2", s(&["x", "y"], &[])),
        ("pres.eq8", s(&["r", "p"], &[])),
        ("pres.ch2", s(&["rhat", "p"], &[])),
        ("pres.eq11", s(&["x"], &["y"])),
        ("pres.eq6", s(&["a", "b", "c", "d"], &[])),
        ("pres.eq12", s(&["a", "d"], &["b", "c"])),
        ("pres.eq9", s(&["s", "t", "u", "w"], &[])),
        ("pres.cq11", s(&["x"], &["theta"])),
        ("pres.eq13", s(&["a", "b"], &["alpha", "beta"])),
        ("pres.eq15", s(&["y"], &["xi"])),
        ("pres.eq16", s(&["y"], &["xi"])),
        ("pres.eq17", s(&["m", "n"], &["phi", "psi"])),
        ("pres.cq11-exotic", s(&["z", "mu"], &[])),
        ("pres.eq18", s(&["c", "d", "gamma", "delta"], &[])),
        ("pres.eq19", s(&["t"], &["nu"])),
        ("pres.ch11-exotic", s(&["t"], &["nu"])),
        ("pres.eq21", s(&["x"], &["theta1", "theta2"])),
        ("pres.eq23", s(&["x"], &["xi1", "xi2"])),
        ("pres.eq24", s(&["x"], &["xi1", "xi2"])),
        ("pres.eq25", s(&[], &["xi1", "xi2"])),
        ("pres.eq27", Shape { free: &["k", "kinv", "r", "m"], square_zero: &[], forbidden: &[("k", "kinv")] }),
        ("pres.eq12-printed", s(&["a", "d"], &["b", "c"])),
    ]
}
