//! Built-in objects: R-matrices, presentations, basis maps, coactions and
//! contraction schemes.

use std::collections::BTreeMap;

use crate::contract::ContractionScheme;
use crate::derive::GeneratorMatrix;
use crate::error::{Error, Result};
use crate::freealg::{Algebra, Element, Generator};
use crate::morphisms::{BasisMap, CoactionSpec, CrossSign};
use crate::presentations::Presentation;
use crate::scalars::{ParameterSet, Parity, Scalar};
use crate::tensor::SMatrix;

use super::parse::ParseContext;

#[derive(Clone, Debug, PartialEq)]
pub struct RMatrixEntry {
    pub matrix: SMatrix,
    pub params: ParameterSet,
    /// Row parities of the underlying space.
    pub parities: Vec<Parity>,
    /// The scalar `q` in `R̂ - q I`.
    pub q: Scalar,
    /// Space generators with precedence, used by derivations.
    pub space_gens: Vec<Generator>,
    pub space_precedence: Vec<String>,
    pub group: Option<(GeneratorMatrix, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapEntry {
    pub map: BasisMap,
    pub source: String,
    /// Presentation whose ideal the image should equal.
    pub expected: Option<String>,
    /// Matrix `D` with `X = D Y`, when the map is linear and even.
    pub matrix: Option<SMatrix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionEntry {
    pub scheme: ContractionScheme,
    pub source: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    RMatrix(Box<RMatrixEntry>),
    Presentation(Box<Presentation>),
    Map(Box<MapEntry>),
    Coaction(Box<CoactionSpec>),
    Contraction(Box<ContractionEntry>),
    Pipeline,
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::RMatrix(_) => "rmatrix",
            Payload::Presentation(_) => "presentation",
            Payload::Map(_) => "basismap",
            Payload::Coaction(_) => "coaction",
            Payload::Contraction(_) => "contraction",
            Payload::Pipeline => "pipeline",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub id: String,
    pub title: String,
    pub notes: Vec<String>,
    pub payload: Payload,
}

pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
}

fn q() -> Scalar {
    Scalar::param("q")
}

fn lambda() -> Scalar {
    q().sub(&q().inv().unwrap())
}

/// `h = i v / 2`, the even deformation parameter of the contracted planes.
fn h_even() -> Scalar {
    Scalar::imag_unit().mul(&Scalar::param("v")).mul(&Scalar::ratio(1, 2))
}

fn ps(even: &[&str], odd: &[&str]) -> ParameterSet {
    ParameterSet::new(even, &[], odd).expect("valid parameter names")
}

fn e(n: &str) -> Generator {
    Generator::even(n)
}

fn o(n: &str) -> Generator {
    Generator::odd(n)
}

struct Pres<'a> {
    name: &'a str,
    params: ParameterSet,
    gens: Vec<Generator>,
    precedence: Vec<&'a str>,
    defs: Vec<(&'a str, Scalar)>,
    relations: Vec<&'a str>,
}

impl Pres<'_> {
    fn build(self) -> Result<Presentation> {
        super::build_presentation(self.name, &self.params, &self.gens, &self.precedence, &self.defs, &self.relations)
    }
}

fn matrix(params: &ParameterSet, defs: &[(&str, Scalar)], rows: &[&[&str]]) -> Result<SMatrix> {
    let mut ctx = ParseContext::scalars(params.clone());
    for (n, v) in defs {
        ctx.define(n, v.clone())?;
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| ctx.parse_scalar(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    SMatrix::from_rows(rows)
}

fn lam_def() -> Vec<(&'static str, Scalar)> {
    vec![("lambda", lambda())]
}

fn r4(zeta: &str) -> Result<SMatrix> {
    matrix(
        &ps(&["q"], &[]),
        &lam_def(),
        &[&["q", "0", "0", "0"], &["0", "1", "0", "0"], &["0", "lambda", "1", "0"], &["0", "0", "0", zeta]],
    )
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn map_from(
    name: &str,
    params: ParameterSet,
    target: Vec<Generator>,
    precedence: &[&str],
    defs: &[(&str, Scalar)],
    images: &[(&str, &str)],
    param_subst: &[(&str, &str)],
) -> Result<BasisMap> {
    let alg = Algebra::new(target)?;
    let mut ctx = ParseContext::new(params.clone(), alg.clone())?;
    for (n, v) in defs {
        ctx.define(n, v.clone())?;
    }
    let images =
        images.iter().map(|(g, src)| Ok((g.to_string(), ctx.parse(src)?))).collect::<Result<BTreeMap<_, _>>>()?;
    let param_subst = param_subst
        .iter()
        .map(|(p, src)| Ok((p.to_string(), ctx.parse_scalar(src)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(BasisMap {
        name: name.to_string(),
        target: alg,
        target_precedence: strings(precedence),
        params,
        images,
        param_subst,
        projection: false,
    })
}

fn coaction(
    name: &str,
    group: &Presentation,
    space: &Presentation,
    rows: &[&[&str]],
    defs: &[(&str, Scalar)],
    notes: &[&str],
) -> Result<CoactionSpec> {
    let mut ctx = ParseContext::new(group.params.clone(), group.algebra().clone())?;
    for (n, v) in defs {
        ctx.define(n, v.clone())?;
    }
    let matrix = rows
        .iter()
        .map(|r| r.iter().map(|s| ctx.parse(s)).collect::<Result<Vec<Element>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(CoactionSpec {
        name: name.to_string(),
        group: group.clone(),
        space: space.clone(),
        matrix,
        cross: CrossSign::Koszul,
        notes: notes.iter().map(|s| s.to_string()).collect(),
    })
}

/// Pipelines shipped with the catalog, in execution order.
pub const PIPELINES: &[&str] = &[
    "ybe-all",
    "eq6",
    "eq8",
    "eq9",
    "eq11",
    "eq12",
    "eq13",
    "eq15",
    "eq16",
    "eq17-coact",
    "eq18",
    "eq21",
    "eq23",
    "eq24",
    "eq25",
    "eq26-coact",
];

/// id, title, zeta, parities, space generators, group generators with precedence.
type RCase<'a> = (&'a str, &'a str, &'a str, Vec<Parity>, [&'a str; 2], Option<(GeneratorMatrix, [&'a str; 4])>);

impl Catalog {
    pub fn builtin() -> Result<Catalog> {
        let mut c = Catalog { entries: BTreeMap::new() };
        c.add_rmatrices()?;
        c.add_planes()?;
        c.add_groups()?;
        c.add_super()?;
        c.add_n3()?;
        c.add_maps()?;
        c.add_coactions()?;
        c.add_contractions()?;
        for p in PIPELINES.iter().chain(["all"].iter()) {
            c.insert(&format!("pipeline.{p}"), "scripted check", &[], Payload::Pipeline);
        }
        Ok(c)
    }

    fn insert(&mut self, id: &str, title: &str, notes: &[&str], payload: Payload) {
        self.entries.insert(
            id.to_string(),
            CatalogEntry {
                id: id.to_string(),
                title: title.to_string(),
                notes: notes.iter().map(|s| s.to_string()).collect(),
                payload,
            },
        );
    }

    fn pres(&mut self, id: &str, title: &str, notes: &[&str], p: Pres<'_>) -> Result<()> {
        let p = p.build()?;
        self.insert(id, title, notes, Payload::Presentation(Box::new(p)));
        Ok(())
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    pub fn get(&self, id: &str) -> Result<CatalogEntry> {
        self.entries
            .get(id)
            .cloned()
            .ok_or_else(|| Error::UnknownId { id: id.to_string(), suggestion: self.suggest(id) })
    }

    fn suggest(&self, id: &str) -> Option<String> {
        self.entries
            .keys()
            .map(|k| (edit_distance(id, k), k))
            .filter(|(d, k)| *d <= (k.len() / 2).max(2))
            .min()
            .map(|(_, k)| k.clone())
    }

    pub fn presentation(&self, id: &str) -> Result<Presentation> {
        match self.get(id)?.payload {
            Payload::Presentation(p) => Ok(*p),
            other => Err(Error::Input(format!("`{id}` is a {}, not a presentation", other.kind()))),
        }
    }

    pub fn rmatrix(&self, id: &str) -> Result<RMatrixEntry> {
        match self.get(id)?.payload {
            Payload::RMatrix(r) => Ok(*r),
            other => Err(Error::Input(format!("`{id}` is a {}, not an R-matrix", other.kind()))),
        }
    }

    pub fn map(&self, id: &str) -> Result<MapEntry> {
        match self.get(id)?.payload {
            Payload::Map(m) => Ok(*m),
            other => Err(Error::Input(format!("`{id}` is a {}, not a basis map", other.kind()))),
        }
    }

    pub fn coaction(&self, id: &str) -> Result<CoactionSpec> {
        match self.get(id)?.payload {
            Payload::Coaction(c) => Ok(*c),
            other => Err(Error::Input(format!("`{id}` is a {}, not a coaction", other.kind()))),
        }
    }

    pub fn contraction(&self, id: &str) -> Result<ContractionEntry> {
        match self.get(id)?.payload {
            Payload::Contraction(c) => Ok(*c),
            other => Err(Error::Input(format!("`{id}` is a {}, not a contraction", other.kind()))),
        }
    }

    fn add_rmatrices(&mut self) -> Result<()> {
        let even2 = vec![Parity::Even, Parity::Even];
        let super2 = vec![Parity::Even, Parity::Odd];
        let abcd = GeneratorMatrix::new(&[&["a", "b"], &["c", "d"]], &even2)?;
        let g11 = GeneratorMatrix::new(&[&["a", "alpha"], &["beta", "b"]], &super2)?;
        let g11x = GeneratorMatrix::new(&[&["c", "gamma"], &["delta", "d"]], &super2)?;
        let cases: [RCase; 4] = [
            (
                "R.glq2",
                "standard solution, GL_q(2)",
                "q",
                even2.clone(),
                ["x", "y"],
                Some((abcd.clone(), ["d", "c", "b", "a"])),
            ),
            ("R.glq2-exotic", "exotic solution", "-1/q", even2, ["x", "y"], Some((abcd, ["d", "c", "b", "a"]))),
            (
                "R.glq11",
                "graded standard solution, GL_q(1|1)",
                "1/q",
                super2.clone(),
                ["x", "theta"],
                Some((g11, ["b", "beta", "alpha", "a"])),
            ),
            (
                "R.glq11-exotic",
                "graded exotic solution",
                "-q",
                super2,
                ["z", "mu"],
                Some((g11x, ["d", "delta", "gamma", "c"])),
            ),
        ];
        for (id, title, zeta, par, names, group) in cases {
            let space_gens: Vec<Generator> = names.iter().zip(&par).map(|(n, p)| Generator::new(n, *p)).collect();
            let entry = RMatrixEntry {
                matrix: r4(zeta)?,
                params: ps(&["q"], &[]),
                parities: par,
                q: q(),
                space_gens,
                space_precedence: strings(&[names[1], names[0]]),
                group: group.map(|(gm, prec)| (gm, strings(&prec))),
            };
            self.insert(id, title, &[], Payload::RMatrix(Box::new(entry)));
        }
        let qi = "1/q";
        let m = matrix(
            &ps(&["q"], &[]),
            &lam_def(),
            &[
                &["q", "0", "0", "0", "0", "0", "0", "0", "0"],
                &["0", "1", "0", "0", "0", "0", "0", "0", "0"],
                &["0", "0", "1", "0", "0", "0", "0", "0", "0"],
                &["0", "lambda", "0", "1", "0", "0", "0", "0", "0"],
                &["0", "0", "0", "0", qi, "0", "0", "0", "0"],
                &["0", "0", "0", "0", "0", "1", "0", "0", "0"],
                &["0", "0", "lambda", "0", "0", "0", "1", "0", "0"],
                &["0", "0", "0", "0", "0", "-lambda", "0", "1", "0"],
                &["0", "0", "0", "0", "0", "0", "0", "0", qi],
            ],
        )?;
        let par = vec![Parity::Even, Parity::Odd, Parity::Odd];
        let gm = GeneratorMatrix::new(&[&["t11", "t12", "t13"], &["t21", "t22", "t23"], &["t31", "t32", "t33"]], &par)?;
        let entry = RMatrixEntry {
            matrix: m,
            params: ps(&["q"], &[]),
            parities: par,
            q: q(),
            space_gens: vec![e("x"), o("theta1"), o("theta2")],
            space_precedence: strings(&["theta2", "theta1", "x"]),
            group: Some((gm, strings(&["t33", "t32", "t31", "t23", "t22", "t21", "t13", "t12", "t11"]))),
        };
        self.insert("R.glq12", "graded N=3 solution, GL_q(1|2)", &[], Payload::RMatrix(Box::new(entry)));
        Ok(())
    }

    fn add_planes(&mut self) -> Result<()> {
        self.pres(
            "pres.cq2",
            "quantum plane C_q(2)",
            &[],
            Pres {
                name: "C_q(2)",
                params: ps(&["q"], &[]),
                gens: vec![e("x"), e("y")],
                precedence: vec!["y", "x"],
                defs: vec![],
                relations: vec!["x*y - q*y*x"],
            },
        )?;
        self.pres(
            "pres.eq8",
            "C_q(2) in the Cartesian basis",
            &[],
            Pres {
                name: "C_q(2) Cartesian",
                params: ps(&["q"], &[]),
                gens: vec![e("p"), e("r")],
                precedence: vec!["r", "p"],
                defs: vec![],
                relations: vec!["r*p - p*r - i*(q-1)/(q+1)*(r^2 + p^2)"],
            },
        )?;
        self.pres(
            "pres.ch2",
            "h-plane C_h(2), h = i v/2",
            &[],
            Pres {
                name: "C_h(2)",
                params: ps(&["v"], &[]),
                gens: vec![e("p"), e("rhat")],
                precedence: vec!["rhat", "p"],
                defs: vec![("h", h_even())],
                relations: vec!["rhat*p - p*rhat - h*p^2"],
            },
        )?;
        self.pres(
            "pres.eq11",
            "quantum dual plane D_q(2)",
            &[],
            Pres {
                name: "D_q(2)",
                params: ps(&["q"], &[]),
                gens: vec![e("x"), e("y")],
                precedence: vec!["y", "x"],
                defs: vec![],
                relations: vec!["x*y - q*y*x", "y^2"],
            },
        )?;
        Ok(())
    }

    fn add_groups(&mut self) -> Result<()> {
        let abcd = vec![e("a"), e("b"), e("c"), e("d")];
        self.pres(
            "pres.eq6",
            "quantum group GL_q(2)",
            &[],
            Pres {
                name: "GL_q(2)",
                params: ps(&["q"], &[]),
                gens: abcd.clone(),
                precedence: vec!["d", "c", "b", "a"],
                defs: lam_def(),
                relations: vec![
                    "a*b - q*b*a",
                    "a*c - q*c*a",
                    "b*d - q*d*b",
                    "c*d - q*d*c",
                    "b*c - c*b",
                    "a*d - d*a - lambda*b*c",
                ],
            },
        )?;
        let exotic_rels =
            vec!["b^2", "c^2", "b*c - c*b", "a*c - q*c*a", "d*b + q*b*d", "d*c + q*c*d", "a*d - d*a - lambda*b*c"];
        let mut with_ab = exotic_rels.clone();
        with_ab.push("a*b - q*b*a");
        self.pres(
            "pres.eq12",
            "exotic quantum group, with ab = q ba",
            &["the printed list omits ab = q ba; it is restored here because RTT yields it and PBW needs it"],
            Pres {
                name: "GL~_q(2)",
                params: ps(&["q"], &[]),
                gens: abcd.clone(),
                precedence: vec!["d", "c", "b", "a"],
                defs: lam_def(),
                relations: with_ab,
            },
        )?;
        self.pres(
            "pres.eq12-printed",
            "exotic quantum group, relations exactly as printed",
            &[],
            Pres {
                name: "GL~_q(2) printed",
                params: ps(&["q"], &[]),
                gens: abcd.clone(),
                precedence: vec!["d", "c", "b", "a"],
                defs: lam_def(),
                relations: exotic_rels,
            },
        )?;
        self.pres(
            "pres.eq9",
            "contracted group GL_h(2), h = i v/2",
            &[],
            Pres {
                name: "GL_h(2)",
                params: ps(&["v"], &[]),
                gens: vec![e("s"), e("t"), e("u"), e("w")],
                precedence: vec!["t", "u", "w", "s"],
                defs: vec![("h", h_even())],
                relations: vec![
                    "s*w - w*s",
                    "u*t - t*u - h*(s+w)*(t+u)",
                    "s*t - t*s - h*s*(s-w)",
                    "u*s - s*u - h*s*(s-w)",
                    "t*w - w*t - h*w*(s-w)",
                    "w*u - u*w - h*w*(s-w)",
                ],
            },
        )?;
        Ok(())
    }

    fn add_super(&mut self) -> Result<()> {
        self.pres(
            "pres.cq11",
            "quantum superplane C_q(1|1)",
            &[],
            Pres {
                name: "C_q(1|1)",
                params: ps(&["q"], &[]),
                gens: vec![e("x"), o("theta")],
                precedence: vec!["theta", "x"],
                defs: vec![],
                relations: vec!["x*theta - q*theta*x", "theta^2"],
            },
        )?;
        self.pres(
            "pres.eq13",
            "quantum supergroup GL_q(1|1)",
            &[],
            Pres {
                name: "GL_q(1|1)",
                params: ps(&["q"], &[]),
                gens: vec![e("a"), o("alpha"), o("beta"), e("b")],
                precedence: vec!["b", "beta", "alpha", "a"],
                defs: lam_def(),
                relations: vec![
                    "alpha^2",
                    "beta^2",
                    "alpha*beta + beta*alpha",
                    "a*alpha - q*alpha*a",
                    "a*beta - q*beta*a",
                    "b*alpha - q*alpha*b",
                    "b*beta - q*beta*b",
                    "a*b - b*a - lambda*beta*alpha",
                ],
            },
        )?;
        self.pres(
            "pres.eq15",
            "C_q(1|1) in the superlinear basis, q = 1 + v, h odd",
            &[],
            Pres {
                name: "C_q(1|1) superlinear",
                params: ps(&["v"], &["h"]),
                gens: vec![e("y"), o("xi")],
                precedence: vec!["xi", "y"],
                defs: vec![],
                relations: vec!["y*xi - xi*y - h*y^2 - v*xi*y", "xi^2 + h*xi*y"],
            },
        )?;
        self.pres(
            "pres.eq16",
            "h-superplane C_h(1|1)",
            &[],
            Pres {
                name: "C_h(1|1)",
                params: ps(&[], &["h"]),
                gens: vec![e("y"), o("xi")],
                precedence: vec!["xi", "y"],
                defs: vec![],
                relations: vec!["y*xi - xi*y - h*y^2", "xi^2 + h*xi*y"],
            },
        )?;
        self.pres(
            "pres.eq17",
            "supergroup GL_h(1|1), h odd",
            &[],
            Pres {
                name: "GL_h(1|1)",
                params: ps(&[], &["h"]),
                gens: vec![e("m"), o("psi"), o("phi"), e("n")],
                precedence: vec!["phi", "n", "m", "psi"],
                defs: vec![],
                relations: vec![
                    "psi^2",
                    "phi^2 - h*phi*(n-m)",
                    "psi*phi + phi*psi - h*psi*(n-m)",
                    "m*phi - phi*m - h*(phi*psi - m*(n-m))",
                    "n*phi - phi*n - h*(phi*psi - n*(n-m))",
                    "m*psi - psi*m",
                    "n*psi - psi*n",
                    "n*m - m*n - h*psi*(n-m)",
                ],
            },
        )?;
        self.pres(
            "pres.cq11-exotic",
            "exotic graded plane, no square relation",
            &[],
            Pres {
                name: "C~_q(1|1)",
                params: ps(&["q"], &[]),
                gens: vec![e("z"), o("mu")],
                precedence: vec!["mu", "z"],
                defs: vec![],
                relations: vec!["z*mu - q*mu*z"],
            },
        )?;
        self.pres(
            "pres.eq18",
            "exotic graded group",
            &[],
            Pres {
                name: "GL~_q(1|1)",
                params: ps(&["q"], &[]),
                gens: vec![e("c"), o("gamma"), o("delta"), e("d")],
                precedence: vec!["d", "delta", "gamma", "c"],
                defs: lam_def(),
                relations: vec![
                    "delta*gamma + gamma*delta",
                    "c*gamma - q*gamma*c",
                    "c*delta - q*delta*c",
                    "gamma*d + q*d*gamma",
                    "delta*d + q*d*delta",
                    "c*d - d*c - lambda*delta*gamma",
                ],
            },
        )?;
        self.pres(
            "pres.eq19",
            "exotic plane in the superlinear basis, with nu^2 = 0 adjoined",
            &[],
            Pres {
                name: "C~_q(1|1) superlinear",
                params: ps(&["v"], &["h"]),
                gens: vec![e("t"), o("nu")],
                precedence: vec!["nu", "t"],
                defs: vec![],
                relations: vec!["t*nu - nu*t - h*t^2 - v*nu*t", "nu^2"],
            },
        )?;
        self.pres(
            "pres.ch11-exotic",
            "exotic h-superplane",
            &[],
            Pres {
                name: "C~_h(1|1)",
                params: ps(&[], &["h"]),
                gens: vec![e("t"), o("nu")],
                precedence: vec!["nu", "t"],
                defs: vec![],
                relations: vec!["t*nu - nu*t - h*t^2", "nu^2"],
            },
        )?;
        Ok(())
    }

    fn add_n3(&mut self) -> Result<()> {
        self.pres(
            "pres.eq21",
            "quantum superspace C_q(1|2)",
            &[],
            Pres {
                name: "C_q(1|2)",
                params: ps(&["q"], &[]),
                gens: vec![e("x"), o("theta1"), o("theta2")],
                precedence: vec!["theta2", "theta1", "x"],
                defs: vec![],
                relations: vec![
                    "x*theta1 - q*theta1*x",
                    "x*theta2 - q*theta2*x",
                    "theta1*theta2 + q*theta2*theta1",
                    "theta1^2",
                    "theta2^2",
                ],
            },
        )?;
        let xi = vec![e("x"), o("xi1"), o("xi2")];
        self.pres(
            "pres.eq23",
            "C_q(1|2) in the Cartesian basis",
            &["x xi_k = q xi_k x, reading the printed right-hand side with the x restored"],
            Pres {
                name: "C_q(1|2) Cartesian",
                params: ps(&["q"], &[]),
                gens: xi.clone(),
                precedence: vec!["xi2", "xi1", "x"],
                defs: vec![("c", Scalar::imag_unit().mul(&q().sub(&Scalar::one())).div(&q().add(&Scalar::one()))?)],
                relations: vec![
                    "x*xi1 - q*xi1*x",
                    "x*xi2 - q*xi2*x",
                    "xi1*xi2 + xi2*xi1",
                    "xi1^2 - c*xi1*xi2",
                    "xi2^2 - c*xi1*xi2",
                ],
            },
        )?;
        self.pres(
            "pres.eq24",
            "quantum flag superspace C_h(1|2; iota), h = i v/2",
            &[],
            Pres {
                name: "C_h(1|2;iota)",
                params: ps(&["v"], &[]),
                gens: xi.clone(),
                precedence: vec!["xi2", "xi1", "x"],
                defs: vec![("h", h_even())],
                relations: vec!["x*xi1 - xi1*x", "x*xi2 - xi2*x", "xi1*xi2 + xi2*xi1", "xi1^2", "xi2^2 - h*xi1*xi2"],
            },
        )?;
        self.pres(
            "pres.eq25",
            "flag superplane, quotient by x = 1",
            &[],
            Pres {
                name: "C^_h(2)",
                params: ps(&["v"], &[]),
                gens: vec![o("xi1"), o("xi2")],
                precedence: vec!["xi2", "xi1"],
                defs: vec![("h", h_even())],
                relations: vec!["xi1*xi2 + xi2*xi1", "xi1^2", "xi2^2 - h*xi1*xi2"],
            },
        )?;
        self.pres(
            "pres.eq27",
            "contracted group SL_h(1|2; iota) with k kinv = kinv k = 1",
            &["the unit relations for k and kinv are adjoined"],
            Pres {
                name: "SL_h(1|2;iota)",
                params: ps(&["v"], &[]),
                gens: vec![e("k"), e("kinv"), e("r"), e("m")],
                precedence: vec!["m", "r", "kinv", "k"],
                defs: vec![("h", h_even())],
                relations: vec![
                    "r*k - k*r - h*(k^2 - 1)",
                    "k*m - m*k - h*(k^2 - 1)",
                    "kinv*r - r*kinv - h*(1 - kinv^2)",
                    "m*kinv - kinv*m - h*(1 - kinv^2)",
                    "r*m - m*r - h*(k + kinv)*(r + m)",
                    "k*kinv - 1",
                    "kinv*k - 1",
                ],
            },
        )?;
        Ok(())
    }

    fn add_maps(&mut self) -> Result<()> {
        let pq = ps(&["q"], &[]);
        let d7 = matrix(&pq, &[], &[&["1", "-i"], &["1", "i"]])?;
        let m7 = map_from(
            "cartesian",
            pq.clone(),
            vec![e("p"), e("r")],
            &["r", "p"],
            &[],
            &[("x", "p - i*r"), ("y", "p + i*r")],
            &[],
        )?;
        self.insert(
            "map.eq7",
            "Cartesian basis X = D Y, without the 1/sqrt 2",
            &[],
            Payload::Map(Box::new(MapEntry {
                map: m7,
                source: "pres.cq2".into(),
                expected: Some("pres.eq8".into()),
                matrix: Some(d7),
            })),
        );
        let d22 = matrix(&pq, &[], &[&["1", "0", "0"], &["0", "1", "-i"], &["0", "1", "i"]])?;
        let m22 = map_from(
            "cartesian",
            pq,
            vec![e("x"), o("xi1"), o("xi2")],
            &["xi2", "xi1", "x"],
            &[],
            &[("x", "x"), ("theta1", "xi1 - i*xi2"), ("theta2", "xi1 + i*xi2")],
            &[],
        )?;
        self.insert(
            "map.eq22",
            "Cartesian odd basis, without the 1/sqrt 2",
            &[],
            Payload::Map(Box::new(MapEntry {
                map: m22,
                source: "pres.eq21".into(),
                expected: Some("pres.eq23".into()),
                matrix: Some(d22),
            })),
        );
        let pvh = ps(&["v"], &["h"]);
        let m14 = map_from(
            "superlinear",
            pvh.clone(),
            vec![e("y"), o("xi")],
            &["xi", "y"],
            &[],
            &[("x", "y + h/v*xi"), ("theta", "xi + h/v*y")],
            &[("q", "1 + v")],
        )?;
        self.insert(
            "map.eq14",
            "superlinear change of generators with q = 1 + v",
            &[],
            Payload::Map(Box::new(MapEntry {
                map: m14,
                source: "pres.cq11".into(),
                expected: Some("pres.eq15".into()),
                matrix: None,
            })),
        );
        let m19 = map_from(
            "superlinear",
            pvh,
            vec![e("t"), o("nu")],
            &["nu", "t"],
            &[],
            &[("z", "t + h/v*nu"), ("mu", "nu + h/v*t")],
            &[("q", "1 + v")],
        )?;
        self.insert(
            "map.eq19",
            "superlinear change for the exotic plane",
            &["nu^2 = 0 is adjoined after the change"],
            Payload::Map(Box::new(MapEntry {
                map: m19,
                source: "pres.cq11-exotic".into(),
                expected: Some("pres.eq19".into()),
                matrix: None,
            })),
        );
        Ok(())
    }

    fn add_coactions(&mut self) -> Result<()> {
        let g6 = self.presentation("pres.eq6")?;
        let c2 = self.presentation("pres.cq2")?;
        let c = coaction("GL_q(2) on C_q(2)", &g6, &c2, &[&["a", "b"], &["c", "d"]], &[], &[])?;
        self.insert("coact.eq6", "GL_q(2) coacting on C_q(2)", &[], Payload::Coaction(Box::new(c)));

        let g9 = self.presentation("pres.eq9")?;
        let ch2 = self.presentation("pres.ch2")?;
        let c = coaction(
            "GL_h(2) on C_h(2)",
            &g9,
            &ch2,
            &[&["s", "0"], &["u", "w"]],
            &[],
            &["effective map: the iota t term drops against iota rhat since iota^2 = 0"],
        )?;
        self.insert("coact.eq10", "GL_h(2) coacting on C_h(2)", &[], Payload::Coaction(Box::new(c)));

        let g13 = self.presentation("pres.eq13")?;
        let c11 = self.presentation("pres.cq11")?;
        let c = coaction("GL_q(1|1) on C_q(1|1)", &g13, &c11, &[&["a", "alpha"], &["beta", "b"]], &[], &[])?;
        self.insert("coact.eq13", "GL_q(1|1) coacting on C_q(1|1)", &[], Payload::Coaction(Box::new(c)));

        let g17 = self.presentation("pres.eq17")?;
        let c16 = self.presentation("pres.eq16")?;
        let c = coaction("GL_h(1|1) on C_h(1|1)", &g17, &c16, &[&["m", "psi"], &["phi", "n"]], &[], &[])?;
        self.insert("coact.eq17", "GL_h(1|1) coacting on C_h(1|1)", &[], Payload::Coaction(Box::new(c)));

        let g27 = self.presentation("pres.eq27")?;
        let c24 = self.presentation("pres.eq24")?;
        let c = coaction(
            "SL_h(1|2;iota) on C_h(1|2;iota)",
            &g27,
            &c24,
            &[&["1", "0", "0"], &["0", "k", "0"], &["0", "m", "kinv"]],
            &[],
            &["effective map: the iota r term drops against iota xi2 since iota^2 = 0"],
        )?;
        self.insert("coact.eq26", "SL_h(1|2;iota) coacting on C_h(1|2;iota)", &[], Payload::Coaction(Box::new(c)));
        Ok(())
    }

    fn add_contractions(&mut self) -> Result<()> {
        let eps_q = Scalar::one().add(&Scalar::param("eps").mul(&Scalar::param("v")));
        let pv = ps(&["v"], &[]);
        let s = ContractionScheme::new("eps")
            .weight("r", 1)
            .subst("q", eps_q.clone())
            .rename("r", "rhat")
            .with_params(pv.clone());
        self.insert(
            "contract.eq8",
            "Cartesian plane to the h-plane",
            &[],
            Payload::Contraction(Box::new(ContractionEntry {
                scheme: s,
                source: "pres.eq8".into(),
                expected: "pres.ch2".into(),
            })),
        );
        let s = ContractionScheme::new("eps")
            .weight("t", 1)
            .weight("u", 1)
            .subst("q", eps_q.clone())
            .with_params(pv.clone());
        self.insert(
            "contract.eq9",
            "Cartesian GL_q(2) to GL_h(2)",
            &["source is the similarity transform of GL_q(2) by the Cartesian matrix"],
            Payload::Contraction(Box::new(ContractionEntry {
                scheme: s,
                source: "pres.eq6".into(),
                expected: "pres.eq9".into(),
            })),
        );
        let s = ContractionScheme::new("eps").weight("xi2", 1).subst("q", eps_q).with_params(pv);
        self.insert(
            "contract.eq23",
            "Cartesian C_q(1|2) to the flag superspace",
            &[],
            Payload::Contraction(Box::new(ContractionEntry {
                scheme: s,
                source: "pres.eq23".into(),
                expected: "pres.eq24".into(),
            })),
        );
        Ok(())
    }
}

/// Levenshtein distance, used for id suggestions.
fn edit_distance(a: &str, b: &str) -> usize {
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.chars().enumerate() {
        let mut cur = vec![i + 1];
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != *cb);
            cur.push(sub.min(prev[j + 1] + 1).min(cur[j] + 1));
        }
        prev = cur;
    }
    prev[b.len()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_builds() {
        let c = Catalog::builtin().unwrap();
        assert!(c.ids().count() > 30);
    }

    #[test]
    fn unknown_id_suggests() {
        let c = Catalog::builtin().unwrap();
        match c.get("pres.eq26") {
            Err(Error::UnknownId { suggestion: Some(s), .. }) => assert_eq!(edit_distance("pres.eq26", &s), 1, "{s}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(c.get("nosuch"), Err(Error::UnknownId { suggestion: None, .. })));
    }

    #[test]
    fn kinds_are_checked() {
        let c = Catalog::builtin().unwrap();
        assert!(c.presentation("R.glq2").is_err());
        assert!(c.rmatrix("R.glq2").is_ok());
    }
}
