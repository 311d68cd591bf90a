//! Linear changes of generators, tensor-product algebras and coactions.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::derive::GeneratorMatrix;
use crate::error::{Error, Result};
use crate::freealg::{Algebra, Element, Generator, Word};
use crate::presentations::{confluence_check, orient_relations, Presentation};
use crate::report::CheckReport;
use crate::scalars::{ParameterSet, Parity, Scalar};
use crate::tensor::SMatrix;

/// Old generators expressed through new ones.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisMap {
    pub name: String,
    /// New generators, with precedence high to low.
    pub target: Arc<Algebra>,
    pub target_precedence: Vec<String>,
    /// Parameters of the transformed presentation.
    pub params: ParameterSet,
    /// Image of each old generator, by name.
    pub images: BTreeMap<String, Element>,
    pub param_subst: BTreeMap<String, Scalar>,
    /// Degenerate maps are accepted without the invertibility check.
    pub projection: bool,
}

impl BasisMap {
    fn images_for(&self, p: &Presentation) -> Result<Vec<Element>> {
        p.generators()
            .iter()
            .map(|g| {
                let e = self
                    .images
                    .get(&g.name)
                    .ok_or_else(|| Error::GeneratorMismatch(format!("no image for `{}`", g.name)))?;
                if !crate::freealg::same_algebra(e.algebra(), &self.target) {
                    return Err(Error::AlgebraMismatch);
                }
                if e.degree().unwrap_or(0) > 1 {
                    return Err(Error::Input(format!("image of `{}` has degree above one", g.name)));
                }
                match e.parity() {
                    Some(par) if par != g.parity => Err(Error::ParityViolation(format!(
                        "`{}` is {} but its image `{e}` is {par}",
                        g.name, g.parity
                    ))),
                    None if !e.is_zero() => Err(Error::ParityViolation(format!("image `{e}` has mixed parity"))),
                    _ => Ok(e.clone()),
                }
            })
            .collect()
    }

    /// Coefficients of the degree-one parts: row per old generator.
    pub fn linear_part(&self, old: &[Generator]) -> Result<SMatrix> {
        let n = self.target.len();
        let mut m = SMatrix::zeros(old.len(), n.max(1));
        for (i, g) in old.iter().enumerate() {
            let e = self.images.get(&g.name).ok_or_else(|| Error::GeneratorMismatch(g.name.clone()))?;
            for j in 0..n {
                m.set(i, j, e.coefficient(&Word(vec![j as u32])));
            }
        }
        Ok(m)
    }

    /// Invertible iff the body of the linear part has a unit determinant.
    pub fn check_invertible(&self, old: &[Generator]) -> Result<()> {
        let m = self.linear_part(old)?;
        if m.rows() != m.cols() {
            return Err(Error::SingularTransform);
        }
        let body = m.map(|s| Ok(Scalar::from_ratfunc(s.body())))?;
        if body.determinant()?.is_unit() {
            Ok(())
        } else {
            Err(Error::SingularTransform)
        }
    }
}

/// Substitute the images into every relation. Relations are returned as
/// substituted, without interreduction.
pub fn transform_presentation(p: &Presentation, m: &BasisMap, name: &str) -> Result<Presentation> {
    let images = m.images_for(p)?;
    if !m.projection {
        m.check_invertible(p.generators())?;
    }
    let subst = if m.param_subst.is_empty() { None } else { Some(&m.param_subst) };
    let rels =
        p.relations().iter().map(|r| r.substitute_generators(&images, &m.target, subst)).collect::<Result<Vec<_>>>()?;
    let prec: Vec<&str> = m.target_precedence.iter().map(String::as_str).collect();
    Presentation::new(name, m.params.clone(), m.target.clone(), &prec, rels)
}

/// `T = D U D^{-1}` entrywise, as a map from `t_ij` to the `u_ij`.
pub fn induced_group_map(
    old: &GeneratorMatrix,
    new: &GeneratorMatrix,
    new_precedence: &[String],
    params: &ParameterSet,
    d: &SMatrix,
) -> Result<BasisMap> {
    let n = old.n();
    if new.n() != n || d.rows() != n || !d.is_square() {
        return Err(Error::DimensionMismatch("transform and generator matrices differ in size".into()));
    }
    let di = d.inverse()?;
    let alg = Algebra::new(new.generators())?;
    let u = |k: usize, l: usize| Element::gen(&alg, k * n + l);
    let mut images = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let mut e = Element::zero(&alg);
            for k in 0..n {
                for l in 0..n {
                    let c = d.get(i, k).mul(di.get(l, j));
                    if !c.is_zero() {
                        e = e.add(&u(k, l).scale(&c));
                    }
                }
            }
            images.insert(old.name(i, j).to_string(), e);
        }
    }
    Ok(BasisMap {
        name: "similarity".into(),
        target: alg,
        target_precedence: new_precedence.to_vec(),
        params: params.clone(),
        images,
        param_subst: BTreeMap::new(),
        projection: false,
    })
}

pub fn induced_group_transform(
    g: &Presentation,
    old: &GeneratorMatrix,
    new: &GeneratorMatrix,
    new_precedence: &[String],
    d: &SMatrix,
    name: &str,
) -> Result<Presentation> {
    let m = induced_group_map(old, new, new_precedence, &g.params, d)?;
    transform_presentation(g, &m, name)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossSign {
    Koszul,
    Plain,
}

/// Generators of `g` and `s` with `x t = ± t x` for every space generator
/// `x` and group generator `t`. Space generators that clash with group
/// names are primed.
pub fn tensor_product_algebra(
    g: &Presentation,
    s: &Presentation,
    cross: CrossSign,
) -> Result<(Presentation, Vec<String>)> {
    let group_names: Vec<String> = g.generators().iter().map(|x| x.name.clone()).collect();
    let mut space_names = Vec::new();
    for x in s.generators() {
        let mut nm = x.name.clone();
        while group_names.contains(&nm) || space_names.contains(&nm) {
            nm.push('\'');
        }
        space_names.push(nm);
    }
    let mut gens: Vec<Generator> = g.generators().to_vec();
    for (x, nm) in s.generators().iter().zip(&space_names) {
        gens.push(Generator::new(nm, x.parity));
    }
    let alg = Algebra::new(gens)?;
    let ng = g.generators().len();
    let g_img: Vec<Element> = (0..ng).map(|i| Element::gen(&alg, i)).collect();
    let s_img: Vec<Element> = (0..s.generators().len()).map(|i| Element::gen(&alg, ng + i)).collect();
    let mut rels = Vec::new();
    for r in g.relations() {
        rels.push(r.substitute_generators(&g_img, &alg, None)?);
    }
    for r in s.relations() {
        rels.push(r.substitute_generators(&s_img, &alg, None)?);
    }
    for (xi, x) in s.generators().iter().enumerate() {
        for (ti, t) in g.generators().iter().enumerate() {
            let sign = cross == CrossSign::Koszul && x.parity.is_odd() && t.parity.is_odd();
            let xt = s_img[xi].mul(&g_img[ti]);
            let tx = g_img[ti].mul(&s_img[xi]);
            rels.push(if sign { xt.add(&tx) } else { xt.sub(&tx) });
        }
    }
    let mut prec: Vec<String> = s.precedence().iter().map(|&i| space_names[i as usize].clone()).collect();
    prec.extend(g.precedence_names());
    let prec_ref: Vec<&str> = prec.iter().map(String::as_str).collect();
    let params = g.params.merge(&s.params)?;
    let name = format!("{} (x) {}", g.name, s.name);
    Ok((Presentation::new(&name, params, alg, &prec_ref, rels)?, space_names))
}

/// `δ(x_i) = Σ_k M_ik ⊗ x_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoactionSpec {
    pub name: String,
    pub group: Presentation,
    pub space: Presentation,
    /// Entries are elements of the group algebra, rows indexed by space
    /// generators.
    pub matrix: Vec<Vec<Element>>,
    pub cross: CrossSign,
    pub notes: Vec<String>,
}

impl CoactionSpec {
    fn validate(&self) -> Result<()> {
        let n = self.space.generators().len();
        if self.matrix.len() != n || self.matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("coaction matrix must be {n}x{n}")));
        }
        for (i, row) in self.matrix.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                if !crate::freealg::same_algebra(e.algebra(), self.group.algebra()) {
                    return Err(Error::AlgebraMismatch);
                }
                let want = self.space.generators()[i].parity + self.space.generators()[k].parity;
                if e.is_zero() {
                    continue;
                }
                match e.parity() {
                    Some(p) if p != want => {
                        return Err(Error::ParityViolation(format!("entry ({i},{k}) `{e}` should be {want}")))
                    }
                    None if !e.is_zero() => {
                        return Err(Error::ParityViolation(format!("entry ({i},{k}) `{e}` has mixed parity")))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

pub fn coaction_check(spec: &CoactionSpec) -> Result<CheckReport> {
    spec.validate()?;
    let mut rep = CheckReport::new("coaction", &[&spec.group.name, &spec.space.name]);
    let (ta, space_names) = tensor_product_algebra(&spec.group, &spec.space, spec.cross)?;
    let alg = ta.algebra().clone();
    let rs = match orient_relations(&ta) {
        Ok(rs) => rs,
        Err(e) => {
            rep.fail(format!("tensor algebra cannot be oriented: {e}"));
            return Ok(rep);
        }
    };
    let conf = confluence_check(&rs, 3);
    if !conf.passed() {
        rep.absorb("tensor algebra confluence", &conf);
        rep.fail("tensor algebra is not confluent in degree 3, so reductions are not conclusive");
        return Ok(rep);
    }
    let ng = spec.group.generators().len();
    let g_img: Vec<Element> = (0..ng).map(|i| Element::gen(&alg, i)).collect();
    let mut images = Vec::new();
    for row in &spec.matrix {
        let mut e = Element::zero(&alg);
        for (k, m) in row.iter().enumerate() {
            let mk = m.substitute_generators(&g_img, &alg, None)?;
            e = e.add(&mk.mul(&Element::gen_named(&alg, &space_names[k])?));
        }
        images.push(e);
    }
    for r in spec.space.relations() {
        let d = r.substitute_generators(&images, &alg, None)?;
        let nf = rs.normal_form(&d);
        if !nf.is_zero() {
            rep.residual(format!("δ({r})"), nf);
        }
    }
    let unused: Vec<&str> = spec
        .group
        .generators()
        .iter()
        .enumerate()
        .filter(|(gi, _)| !spec.matrix.iter().flatten().any(|e| e.mentions_generator(*gi as u32)))
        .map(|(_, g)| g.name.as_str())
        .collect();
    if !unused.is_empty() {
        rep.note(format!("generators not entering the coaction are unconstrained: {}", unused.join(", ")));
    }
    for n in &spec.notes {
        rep.note(n.clone());
    }
    Ok(rep)
}

/// The coaction `δ(X) = T ⊗ X` of a group on `t_ij` over a space.
pub fn standard_coaction(group: &Presentation, gm: &GeneratorMatrix, space: &Presentation) -> Result<CoactionSpec> {
    let n = gm.n();
    if space.generators().len() != n {
        return Err(Error::DimensionMismatch("space and generator matrix differ in size".into()));
    }
    let matrix = (0..n)
        .map(|i| (0..n).map(|k| group.gen(gm.name(i, k))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(CoactionSpec {
        name: format!("{} on {}", group.name, space.name),
        group: group.clone(),
        space: space.clone(),
        matrix,
        cross: CrossSign::Koszul,
        notes: vec![],
    })
}

/// Parities of a space's generators.
pub fn parities(p: &Presentation) -> Vec<Parity> {
    p.generators().iter().map(|g| g.parity).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog_cli::build_presentation;

    fn ps() -> ParameterSet {
        ParameterSet::new(&["q"], &[], &[]).unwrap()
    }

    #[test]
    fn tensor_product_cross_rules() {
        let g = build_presentation("g", &ps(), &[Generator::even("t")], &["t"], &[], &[]).unwrap();
        let s = build_presentation("s", &ps(), &[Generator::even("x")], &["x"], &[], &[]).unwrap();
        let (ta, _) = tensor_product_algebra(&g, &s, CrossSign::Koszul).unwrap();
        assert_eq!(ta.relations().len(), 1);
        let go = build_presentation("g", &ps(), &[Generator::odd("t")], &["t"], &[], &[]).unwrap();
        let so = build_presentation("s", &ps(), &[Generator::odd("x")], &["x"], &[], &[]).unwrap();
        let (ta, _) = tensor_product_algebra(&go, &so, CrossSign::Koszul).unwrap();
        let want =
            ta.gen("x").unwrap().mul(&ta.gen("t").unwrap()).add(&ta.gen("t").unwrap().mul(&ta.gen("x").unwrap()));
        assert_eq!(ta.relations(), &[want]);
    }

    #[test]
    fn clashing_names_are_primed() {
        let g = build_presentation("g", &ps(), &[Generator::even("x")], &["x"], &[], &[]).unwrap();
        let (ta, names) = tensor_product_algebra(&g, &g, CrossSign::Plain).unwrap();
        assert_eq!(names, vec!["x'".to_string()]);
        assert_eq!(ta.generators().len(), 2);
    }

    #[test]
    fn singular_map_is_rejected() {
        let s = build_presentation(
            "s",
            &ps(),
            &[Generator::even("x"), Generator::even("y")],
            &["y", "x"],
            &[],
            &["x*y - q*y*x"],
        )
        .unwrap();
        let alg = Algebra::new(vec![Generator::even("p"), Generator::even("r")]).unwrap();
        let p = Element::gen(&alg, 0);
        let images = BTreeMap::from([("x".to_string(), p.clone()), ("y".to_string(), p.clone())]);
        let m = BasisMap {
            name: "bad".into(),
            target: alg,
            target_precedence: vec!["r".into(), "p".into()],
            params: ps(),
            images,
            param_subst: BTreeMap::new(),
            projection: false,
        };
        assert_eq!(transform_presentation(&s, &m, "t"), Err(Error::SingularTransform));
    }
}
