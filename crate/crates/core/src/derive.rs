//! Quantum spaces and quantum groups from an R-matrix.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealg::{Algebra, Element, Generator};
use crate::presentations::{ideals_equal_upto_degree, Presentation};
use crate::report::CheckReport;
use crate::scalars::{ParameterSet, Parity, Scalar};
use crate::tensor::{graded_permutation_matrix, permutation_matrix, SMatrix, TensorIndex};

/// Sign rule for the tensor legs `T1 = T ⊗ I`, `T2 = I ⊗ T` and for the flip
/// in `R̂ = P R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignConvention {
    Ungraded,
    /// Koszul signs on both legs and on the flip.
    Graded,
    /// Sign `(-1)^{p_k (p_i + p_j)}` on `T1` only.
    GradedT1,
    /// Sign `(-1)^{p_i (p_k + p_l)}` on `T2` only.
    GradedT2,
}

impl SignConvention {
    pub const ALL: [SignConvention; 4] =
        [SignConvention::Ungraded, SignConvention::Graded, SignConvention::GradedT1, SignConvention::GradedT2];

    fn signs_t1(self) -> bool {
        matches!(self, SignConvention::Graded | SignConvention::GradedT1)
    }

    fn signs_t2(self) -> bool {
        matches!(self, SignConvention::Graded | SignConvention::GradedT2)
    }

    fn graded_flip(self) -> bool {
        self != SignConvention::Ungraded
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SignConvention::Ungraded => "ungraded",
            SignConvention::Graded => "graded",
            SignConvention::GradedT1 => "graded-t1",
            SignConvention::GradedT2 => "graded-t2",
        }
    }
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SignConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SignConvention::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown convention `{s}`")))
    }
}

/// `n × n` matrix of generators `t_ij` with parity `p_i + p_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMatrix {
    pub names: Vec<Vec<String>>,
    pub parities: Vec<Parity>,
}

impl GeneratorMatrix {
    pub fn new(names: &[&[&str]], parities: &[Parity]) -> Result<Self> {
        let n = parities.len();
        if names.len() != n || names.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("generator matrix must be {n}x{n}")));
        }
        let gm = GeneratorMatrix {
            names: names.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
            parities: parities.to_vec(),
        };
        Algebra::new(gm.generators())?;
        Ok(gm)
    }

    pub fn n(&self) -> usize {
        self.parities.len()
    }

    pub fn name(&self, i: usize, j: usize) -> &str {
        &self.names[i][j]
    }

    pub fn parity(&self, i: usize, j: usize) -> Parity {
        self.parities[i] + self.parities[j]
    }

    /// Generators in row-major order.
    pub fn generators(&self) -> Vec<Generator> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| Generator::new(self.name(i, j), self.parity(i, j)))
            .collect()
    }
}

fn check_dims(r: &SMatrix, n: usize) -> Result<TensorIndex> {
    let ix = TensorIndex::of_square(r.rows())?;
    if !r.is_square() || ix.n != n {
        return Err(Error::DimensionMismatch(format!(
            "R is {}x{} but {} generators were given",
            r.rows(),
            r.cols(),
            n
        )));
    }
    Ok(ix)
}

fn precedence_refs(p: &[String]) -> Vec<&str> {
    p.iter().map(String::as_str).collect()
}

/// Components of `(R̂ - q I)(X ⊗ X)`.
pub fn space_relations(
    name: &str,
    params: &ParameterSet,
    r: &SMatrix,
    gens: &[Generator],
    precedence: &[String],
    q: &Scalar,
    conv: SignConvention,
) -> Result<Presentation> {
    let n = gens.len();
    let ix = check_dims(r, n)?;
    let flip = if conv.graded_flip() {
        graded_permutation_matrix(&gens.iter().map(|g| g.parity).collect::<Vec<_>>())
    } else {
        permutation_matrix(n)
    };
    let op = flip.mul(r)?.sub(&SMatrix::identity(n * n).scale(q))?;
    let alg = Algebra::new(gens.to_vec())?;
    let mut rels = Vec::new();
    for row in 0..n * n {
        let mut e = Element::zero(&alg);
        for col in 0..n * n {
            let c = op.get(row, col);
            if !c.is_zero() {
                let (k, l) = ix.pair(col);
                e = e.add(&Element::gen(&alg, k).mul(&Element::gen(&alg, l)).scale(c));
            }
        }
        rels.push(e);
    }
    Presentation::new(name, params.clone(), alg, &precedence_refs(precedence), rels)
}

/// Entries of `R T1 T2 - T2 T1 R`.
pub fn group_relations(
    name: &str,
    params: &ParameterSet,
    r: &SMatrix,
    gm: &GeneratorMatrix,
    precedence: &[String],
    conv: SignConvention,
) -> Result<Presentation> {
    let n = gm.n();
    let ix = check_dims(r, n)?;
    let alg = Algebra::new(gm.generators())?;
    let p = |i: usize| gm.parities[i].is_odd() as usize;
    let t = |i: usize, j: usize| Element::gen(&alg, i * n + j);
    let sign = |on: bool, e: usize| if on && e % 2 == 1 { -1 } else { 1 };
    let s1 = |i: usize, k: usize, j: usize| sign(conv.signs_t1(), p(k) * (p(i) + p(j)));
    let s2 = |i: usize, k: usize, l: usize| sign(conv.signs_t2(), p(i) * (p(k) + p(l)));
    // (T1 T2) and (T2 T1) at ((a,b),(j,l))
    let t1t2 =
        |a: usize, b: usize, j: usize, l: usize| t(a, j).mul(&t(b, l)).scale(&Scalar::int(s1(a, b, j) * s2(j, b, l)));
    let t2t1 =
        |a: usize, b: usize, j: usize, l: usize| t(b, l).mul(&t(a, j)).scale(&Scalar::int(s2(a, b, l) * s1(a, l, j)));
    let mut rels = Vec::new();
    for row in 0..n * n {
        for col in 0..n * n {
            let (j, l) = ix.pair(col);
            let (a, b) = ix.pair(row);
            let mut e = Element::zero(&alg);
            for m in 0..n * n {
                let (c, d) = ix.pair(m);
                let rl = r.get(row, m);
                if !rl.is_zero() {
                    e = e.add(&t1t2(c, d, j, l).scale(rl));
                }
                let rr = r.get(m, col);
                if !rr.is_zero() {
                    e = e.sub(&t2t1(a, b, c, d).scale(rr));
                }
            }
            rels.push(e);
        }
    }
    Presentation::new(name, params.clone(), alg, &precedence_refs(precedence), rels)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConventionOutcome {
    pub convention: SignConvention,
    pub matches: bool,
    pub detail: String,
}

/// Derive the group under every convention and compare with `target` in
/// degree at most 2.
pub fn convention_scan(
    params: &ParameterSet,
    r: &SMatrix,
    gm: &GeneratorMatrix,
    target: &Presentation,
) -> Result<(CheckReport, Vec<ConventionOutcome>)> {
    let prec = target.precedence_names();
    let mut rep = CheckReport::new("convention-scan", &[&target.name]);
    let mut outcomes = Vec::new();
    for conv in SignConvention::ALL {
        let derived = group_relations(&format!("rtt[{conv}]"), params, r, gm, &prec, conv)?;
        let (matches, detail) = match ideals_equal_upto_degree(&derived, target, 2) {
            Ok(c) if c.passed() => (true, "ideal matches in degree 2".to_string()),
            Ok(c) => (false, format!("{} residuals; {}", c.residuals.len(), c.notes.join("; "))),
            Err(e) => (false, e.to_string()),
        };
        rep.note(format!("{conv}: {}", if matches { "match" } else { "mismatch" }));
        outcomes.push(ConventionOutcome { convention: conv, matches, detail });
    }
    if !outcomes.iter().any(|o| o.matches) {
        rep.fail("no convention reproduces the target");
    }
    Ok((rep, outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{confluence_check, hilbert_dims, orient_relations};

    fn r5(zeta: Scalar) -> SMatrix {
        let q = Scalar::param("q");
        let lam = q.sub(&q.inv().unwrap());
        let z = Scalar::zero;
        SMatrix::from_rows(vec![
            vec![q.clone(), z(), z(), z()],
            vec![z(), Scalar::one(), z(), z()],
            vec![z(), lam, Scalar::one(), z()],
            vec![z(), z(), z(), zeta],
        ])
        .unwrap()
    }

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn plane_from_standard_solution() {
        let ps = ParameterSet::new(&["q"], &[], &[]).unwrap();
        let q = Scalar::param("q");
        let gens = [Generator::even("x"), Generator::even("y")];
        let p =
            space_relations("c", &ps, &r5(q.clone()), &gens, &strs(&["y", "x"]), &q, SignConvention::Ungraded).unwrap();
        assert_eq!(p.relations().len(), 1);
        let rs = orient_relations(&p).unwrap();
        assert_eq!(hilbert_dims(&rs, 3).dims, vec![1, 2, 3, 4]);
    }

    #[test]
    fn identity_r_gives_commutative_group() {
        let ps = ParameterSet::default();
        let gm = GeneratorMatrix::new(&[&["a", "b"], &["c", "d"]], &[Parity::Even, Parity::Even]).unwrap();
        let g = group_relations(
            "g",
            &ps,
            &SMatrix::identity(4),
            &gm,
            &strs(&["d", "c", "b", "a"]),
            SignConvention::Ungraded,
        )
        .unwrap();
        let rs = orient_relations(&g).unwrap();
        assert_eq!(rs.rules().len(), 6);
        assert!(confluence_check(&rs, 3).passed());
        assert_eq!(hilbert_dims(&rs, 3).dims, vec![1, 4, 10, 20]);
    }

    #[test]
    fn dimension_mismatch() {
        let ps = ParameterSet::default();
        let gens = [Generator::even("x")];
        let e = space_relations(
            "c",
            &ps,
            &SMatrix::identity(4),
            &gens,
            &strs(&["x"]),
            &Scalar::one(),
            SignConvention::Ungraded,
        );
        assert!(matches!(e, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn convention_parse() {
        for c in SignConvention::ALL {
            assert_eq!(c.as_str().parse::<SignConvention>().unwrap(), c);
        }
        assert!("sideways".parse::<SignConvention>().is_err());
    }
}
