//! Acceptance suite: one line per criterion, exact arithmetic throughout.

mod common;

use std::path::PathBuf;
use std::process::Command;

use common::{count, shapes};
use qplane::catalog_cli::io::to_json;
use qplane::catalog_cli::pipelines::{
    cartesian_group, compare, conjugate_route, derive_group, derive_space, run_pipeline, ybe_check,
};
use qplane::catalog_cli::{Catalog, ParseContext, Payload};
use qplane::contract::{contract, ContractionMode};
use qplane::derive::{convention_scan, SignConvention};
use qplane::freealg::Element;
use qplane::morphisms::{coaction_check, transform_presentation};
use qplane::presentations::{
    add_relation, confluence_check, hilbert_dims, quotient_set_generator, rewriting_to_degree, Presentation,
};
use qplane::report::{CheckReport, Outcome};
use qplane::scalars::Scalar;
use qplane::tensor::verify_graded_ybe;

struct Line {
    ok: bool,
    detail: String,
}

fn line(ok: bool, detail: impl Into<String>) -> Line {
    Line { ok, detail: detail.into() }
}

fn first_failure(reps: &[CheckReport]) -> String {
    reps.iter()
        .find(|r| !r.passed())
        .map(|r| r.to_string().lines().take(3).collect::<Vec<_>>().join(" | "))
        .unwrap_or_default()
}

const RMATRICES: [&str; 5] = ["R.glq2", "R.glq2-exotic", "R.glq11", "R.glq11-exotic", "R.glq12"];

fn ybe(c: &Catalog) -> Line {
    let mut mutants = 0;
    for id in RMATRICES {
        let r = c.rmatrix(id).unwrap();
        if !ybe_check(id, &r).unwrap().passed() {
            return line(false, format!("{id} does not satisfy the equation"));
        }
        for (i, j) in r.matrix.nonzero_positions() {
            let mut m = r.matrix.clone();
            m.set(i, j, m.get(i, j).add(&Scalar::one()));
            let rep = verify_graded_ybe(id, &m, &r.parities).unwrap();
            if rep.passed() {
                return line(false, format!("{id} still passes after entry ({i},{j}) + 1"));
            }
            mutants += 1;
        }
    }
    line(true, format!("5 R-matrices pass with zero residual; all {mutants} single-entry mutants fail"))
}

fn golden(name: &str, body: &str) -> Result<(), String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var("QPLANE_BLESS").is_ok_and(|v| v == "1") || !path.exists() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, body).unwrap();
        return Ok(());
    }
    if std::fs::read_to_string(&path).unwrap() == body {
        Ok(())
    } else {
        Err(format!("{} differs from the recorded outcome", path.display()))
    }
}

fn groups(c: &Catalog) -> Line {
    let mut reps = vec![];
    for (rid, target) in [("R.glq2", "pres.eq6"), ("R.glq2-exotic", "pres.eq12")] {
        let g = derive_group(&c.rmatrix(rid).unwrap(), rid, SignConvention::Ungraded).unwrap();
        reps.push(compare(rid, &g, &c.presentation(target).unwrap(), 2).unwrap());
    }
    let mut record = serde_json::Map::new();
    let mut summary = vec![];
    for (rid, target) in [("R.glq11", "pres.eq13"), ("R.glq11-exotic", "pres.eq18")] {
        let r = c.rmatrix(rid).unwrap();
        let (gm, _) = r.group.clone().unwrap();
        let (_, outcomes) = convention_scan(&r.params, &r.matrix, &gm, &c.presentation(target).unwrap()).unwrap();
        let matched: Vec<String> = outcomes.iter().filter(|o| o.matches).map(|o| o.convention.to_string()).collect();
        summary.push(format!(
            "{target} matched by {}",
            if matched.is_empty() { "none".into() } else { matched.join("/") }
        ));
        record.insert(target.to_string(), serde_json::to_value(&outcomes).unwrap());
        if matched.is_empty() {
            return line(false, format!("no convention reproduces {target}"));
        }
    }
    if let Err(e) = golden("convention_scan.json", &to_json(&record)) {
        return line(false, e);
    }
    let ok = reps.iter().all(CheckReport::passed);
    line(
        ok,
        if ok {
            format!("RTT ideals equal pres.eq6 and pres.eq12 at degree 2; scan: {}", summary.join("; "))
        } else {
            first_failure(&reps)
        },
    )
}

fn spaces(c: &Catalog) -> Line {
    let mut reps = vec![];
    for (rid, target) in
        [("R.glq2", "pres.cq2"), ("R.glq2-exotic", "pres.eq11"), ("R.glq11", "pres.cq11"), ("R.glq12", "pres.eq21")]
    {
        let r = c.rmatrix(rid).unwrap();
        let conv =
            if r.parities.iter().any(|p| p.is_odd()) { SignConvention::Graded } else { SignConvention::Ungraded };
        let s = derive_space(&r, rid, conv).unwrap();
        reps.push(compare(rid, &s, &c.presentation(target).unwrap(), 3).unwrap());
    }
    let r = c.rmatrix("R.glq11-exotic").unwrap();
    let target = c.presentation("pres.cq11-exotic").unwrap();
    let plain = derive_space(&r, "R.glq11-exotic", SignConvention::Ungraded).unwrap();
    let mu = plain.gen("mu").unwrap();
    let rs = rewriting_to_degree(&plain, 3).unwrap();
    let mu2_vanishes = rs.normal_form(&mu.mul(&mu)).is_zero();
    let anomaly = !compare("plain", &plain, &target, 3).unwrap().passed() && mu2_vanishes;
    let eq18 = &run_pipeline(c, "eq18").unwrap()[0];
    let reported = eq18.checks.iter().any(|k| k.result == Outcome::Anomaly && k.check.contains("plain flip"));
    let ok = reps.iter().all(CheckReport::passed) && anomaly && reported;
    line(
        ok,
        if ok {
            "xy=qyx, D_q(2), C_q(1|1), C_q(1|2) reproduced; zeta=-q reported as anomaly (plain flip derives mu^2=0)"
                .to_string()
        } else {
            format!("{} anomaly={anomaly} reported={reported}", first_failure(&reps))
        },
    )
}

fn cartesian(c: &Catalog) -> Line {
    let mut reps = vec![];
    for (mid, rid, target) in [("map.eq7", "R.glq2", "pres.eq8"), ("map.eq22", "R.glq12", "pres.eq23")] {
        let m = c.map(mid).unwrap();
        let src = c.presentation(&m.source).unwrap();
        let out = transform_presentation(&src, &m.map, mid).unwrap();
        reps.push(compare(mid, &out, &c.presentation(target).unwrap(), 3).unwrap());
        reps.push(conjugate_route(c, rid, mid, target).unwrap());
    }
    let ok = reps.iter().all(CheckReport::passed);
    line(
        ok,
        if ok {
            "map.eq7 and map.eq22 images equal pres.eq8 and pres.eq23; conjugate-R routes agree at degree 2".into()
        } else {
            first_failure(&reps)
        },
    )
}

fn superlinear(c: &Catalog) -> Line {
    let mut reps = vec![];
    let m = c.map("map.eq14").unwrap();
    let out = transform_presentation(&c.presentation(&m.source).unwrap(), &m.map, "eq14").unwrap();
    reps.push(compare("eq14", &out, &c.presentation("pres.eq15").unwrap(), 3).unwrap());
    let lim = qplane::contract::parameter_limit(&out.reduced().unwrap(), "v").unwrap();
    reps.push(compare("v -> 0", &lim, &c.presentation("pres.eq16").unwrap(), 3).unwrap());
    let m = c.map("map.eq19").unwrap();
    let out = transform_presentation(&c.presentation(&m.source).unwrap(), &m.map, "eq19").unwrap();
    let nu = out.gen("nu").unwrap();
    let with_nu = add_relation(&out, nu.mul(&nu)).unwrap();
    // Independent statement of the expected ideals, parsed from text.
    let expected = |rels: &[&str], params: &qplane::scalars::ParameterSet| {
        let ctx = ParseContext::new(params.clone(), with_nu.algebra().clone()).unwrap();
        let rels: Vec<Element> = rels.iter().map(|r| ctx.parse(r).unwrap()).collect();
        with_nu.with_relations("expected", rels).unwrap()
    };
    let e19 = expected(&["t*nu - nu*t - h*t*t - v*nu*t", "nu*nu"], &with_nu.params);
    reps.push(compare("eq19 analog", &with_nu, &e19, 3).unwrap());
    let lim = qplane::contract::parameter_limit(&with_nu.reduced().unwrap(), "v").unwrap();
    let mut e19h = expected(&["t*nu - nu*t - h*t*t", "nu*nu"], &with_nu.params);
    e19h.params = lim.params.clone();
    reps.push(compare("eq19 analog at v=0", &lim, &e19h, 3).unwrap());
    let ok = reps.iter().all(CheckReport::passed);
    line(
        ok,
        if ok {
            "map.eq14 gives pres.eq15, v->0 gives pres.eq16; map.eq19 plus nu^2 gives {[t,nu]-ht^2-v nu t, nu^2} then {[t,nu]-ht^2, nu^2}"
                .into()
        } else {
            first_failure(&reps)
        },
    )
}

fn contractions(c: &Catalog) -> Line {
    let mut reps = vec![];
    for (cid, src) in
        [("contract.eq8", None), ("contract.eq23", None), ("contract.eq9", Some(cartesian_group(c).unwrap().0))]
    {
        let ce = c.contraction(cid).unwrap();
        let src = src.unwrap_or_else(|| c.presentation(&ce.source).unwrap());
        let (out, _) = contract(&src, &ce.scheme).unwrap();
        reps.push(compare(cid, &out, &c.presentation(&ce.expected).unwrap(), 3).unwrap());
    }
    // {[rhat,p] - h p^2} with h = iv/2, written out directly.
    let ch2 = c.presentation("pres.ch2").unwrap();
    let ctx = ParseContext::new(ch2.params.clone(), ch2.algebra().clone()).unwrap();
    let direct = ch2.with_relations("direct", vec![ctx.parse("rhat*p - p*rhat - i*v/2*p*p").unwrap()]).unwrap();
    reps.push(compare("h = iv/2", &ch2, &direct, 3).unwrap());
    let (q, info) = quotient_set_generator(&c.presentation("pres.eq24").unwrap(), "x", &Scalar::one()).unwrap();
    reps.push(compare("x = 1", &q, &c.presentation("pres.eq25").unwrap(), 3).unwrap());
    let ok = reps.iter().all(CheckReport::passed);
    line(
        ok,
        if ok {
            format!(
                "pres.eq8 -> {{[rhat,p]-hp^2}}, Cartesian GL_q(2) -> pres.eq9, pres.eq23 -> pres.eq24, x=1 in pres.eq24 -> pres.eq25 (collapsing={})",
                info.collapsing
            )
        } else {
            first_failure(&reps)
        },
    )
}

/// Scale every term but the leading one by 2; monomial relations are deleted.
fn mutate(p: &Presentation, i: usize) -> Presentation {
    let r = &p.relations()[i];
    let (w, lc) = p.order().leading(r).unwrap();
    let lead = Element::term(p.algebra(), lc, w);
    let rest = r.sub(&lead);
    let mut rels = p.relations().to_vec();
    if rest.is_zero() {
        rels.remove(i);
    } else {
        rels[i] = lead.add(&rest.scale(&Scalar::int(2)));
    }
    p.with_relations(&format!("{} mutated", p.name), rels).unwrap()
}

fn coactions(c: &Catalog) -> Line {
    let ids = ["coact.eq6", "coact.eq10", "coact.eq13", "coact.eq17", "coact.eq26"];
    let mut reps = vec![];
    let mut total = 0;
    let mut survivors = vec![];
    for id in ids {
        let spec = c.coaction(id).unwrap();
        reps.push(coaction_check(&spec).unwrap());
        for i in 0..spec.group.relations().len() {
            let mut m = spec.clone();
            m.group = mutate(&spec.group, i);
            total += 1;
            if coaction_check(&m).unwrap().passed() {
                survivors.push(format!("{id}: {}", spec.group.relations()[i]));
            }
        }
    }
    if !reps.iter().all(CheckReport::passed) {
        return line(false, first_failure(&reps));
    }
    let ok = survivors.is_empty();
    line(
        ok,
        if ok {
            format!("5 coactions pass; all {total} single-relation mutants fail")
        } else {
            format!(
                "5 coactions pass; {} of {total} mutants still pass because the coaction does not constrain them: {}",
                survivors.len(),
                survivors.join("; ")
            )
        },
    )
}

fn pbw(c: &Catalog) -> Line {
    let mut bad = vec![];
    let table = shapes();
    for (id, shape) in &table {
        let p = c.presentation(id).unwrap();
        let want: Vec<usize> = (0..=4).map(|d| count(shape, d)).collect();
        match rewriting_to_degree(&p, 4) {
            Ok(rs) => {
                let conf = confluence_check(&rs, 3);
                let dims = hilbert_dims(&rs, 4).dims;
                if !conf.passed() || dims != want {
                    bad.push(format!("{id} (dims {dims:?}, classical {want:?}, confluent {})", conf.passed()));
                }
            }
            Err(err) => bad.push(format!("{id} ({err})")),
        }
    }
    let n = c.entries().filter(|e| matches!(e.payload, Payload::Presentation(_))).count();
    if n != table.len() {
        return line(false, format!("oracle covers {} of {n} presentations", table.len()));
    }
    let ok = bad.is_empty();
    line(
        ok,
        if ok {
            format!("{n} presentations confluent at degree 3 with classical dimension tables")
        } else {
            format!("{} of {n} presentations are not flat: {}", bad.len(), bad.join("; "))
        },
    )
}

fn semantics(c: &Catalog) -> Line {
    let mut reps = vec![];
    let second_order = ParseContext::scalars(qplane::scalars::ParameterSet::new(&["v", "eps"], &[], &[]).unwrap())
        .parse_scalar("1 + eps*v + eps^2*v^2/2")
        .unwrap();
    for cid in ["contract.eq8", "contract.eq9", "contract.eq23"] {
        let ce = c.contraction(cid).unwrap();
        let src =
            if cid == "contract.eq9" { cartesian_group(c).unwrap().0 } else { c.presentation(&ce.source).unwrap() };
        let (lead, _) = contract(&src, &ce.scheme).unwrap();
        let (nil, _) = contract(&src, &ce.scheme.clone().with_mode(ContractionMode::Nilpotent)).unwrap();
        reps.push(compare(&format!("{cid} nilpotent"), &nil, &lead, 3).unwrap());
        let (so, _) = contract(&src, &ce.scheme.clone().subst("q", second_order.clone())).unwrap();
        reps.push(compare(&format!("{cid} second order"), &so, &lead, 3).unwrap());
    }
    let ok = reps.iter().all(CheckReport::passed);
    line(
        ok,
        if ok {
            "nilpotent and leading-order modes agree on 3 contractions; the eps^2 term changes nothing".into()
        } else {
            first_failure(&reps)
        },
    )
}

fn determinism() -> Line {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = Command::new(env!("CARGO_BIN_EXE_qplane"))
            .args(["pipeline", "all", "--json", path.to_str().unwrap(), "--quiet"])
            .output()
            .unwrap();
        (out.status.code(), std::fs::read(&path).unwrap_or_default())
    };
    let (ca, ja) = run("a.json");
    let (cb, jb) = run("b.json");
    let reports: Vec<serde_json::Value> = serde_json::from_slice(&ja).unwrap_or_default();
    let mut anomalies = vec![];
    for r in &reports {
        for k in r["checks"].as_array().into_iter().flatten() {
            if k["result"] != "pass" {
                anomalies.push(format!(
                    "{}: {} [{}]",
                    r["name"].as_str().unwrap_or(""),
                    k["check"].as_str().unwrap_or(""),
                    k["result"].as_str().unwrap_or("")
                ));
            }
        }
    }
    let only_documented = anomalies.iter().all(|a| a.contains("plain flip") && a.ends_with("[anomaly]"));
    let ok = matches!(ca, Some(0) | Some(3)) && ca == cb && ja == jb && !ja.is_empty() && only_documented;
    line(ok, format!("exit {:?}, {} bytes, identical={}, findings: {}", ca, ja.len(), ja == jb, anomalies.join("; ")))
}

#[test]
fn acceptance() {
    let c = Catalog::builtin().unwrap();
    let criteria: Vec<(&str, Line)> = vec![
        ("YBE", ybe(&c)),
        ("group derivation", groups(&c)),
        ("space derivation", spaces(&c)),
        ("Cartesian transforms", cartesian(&c)),
        ("superlinear transform", superlinear(&c)),
        ("contractions", contractions(&c)),
        ("coactions", coactions(&c)),
        ("PBW/flatness", pbw(&c)),
        ("contraction semantics", semantics(&c)),
        ("determinism and interface", determinism()),
    ];
    let mut failed = vec![];
    for (i, (name, l)) in criteria.iter().enumerate() {
        println!("criterion {:>2} {} {}: {}", i + 1, if l.ok { "PASS" } else { "FAIL" }, name, l.detail);
        if !l.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
