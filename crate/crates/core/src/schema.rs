//! JSON problem files and output documents.
//!
//! Problem file:
//!
//! ```json
//! {
//!   "n": 2,
//!   "field": {"min_poly": ["-2/1", "0/1", "1/1"],
//!             "root_box": {"re": ["1/1", "2/1"], "im": ["0/1", "0/1"]}},
//!   "center": [["0/1", "1/1"], ["1/1"]],
//!   "base_point": ["0/1", "0/1"],
//!   "form": null,
//!   "mode": "theorem"
//! }
//! ```
//!
//! Rationals are `"p/q"` or integer strings; JSON numbers are rejected in
//! exact fields. `min_poly` is constant-first; each center coordinate is a
//! power-basis coefficient vector of length at most `d`. `form` and `mode`
//! may be omitted.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ball::ComplexBall;
use crate::closure::RhsConstraint;
use crate::error::Error;
use crate::geometry::{ClosureKind, ClosureObject, Mode, QuadraticFormQ, SphereSpec};
use crate::linalg::{AffineFrame, MatrixQ};
use crate::numberfield::{make_field, EmbeddingSet, FieldElement, NumberField, RootBox};
use crate::poly::PolyQ;
use crate::rational::{format_rational, parse_decimal, serde_rat, Rational};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    pub field: FieldJson,
    #[serde(with = "serde_rat::mat")]
    pub center: Vec<Vec<Rational>>,
    #[serde(with = "serde_rat::vec")]
    pub base_point: Vec<Rational>,
    #[serde(default, deserialize_with = "optional_matrix")]
    pub form: Option<Vec<Vec<Rational>>>,
    #[serde(default = "default_mode")]
    pub mode: ModeJson,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    #[serde(with = "serde_rat::vec")]
    pub min_poly: Vec<Rational>,
    pub root_box: RootBoxJson,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootBoxJson {
    #[serde(with = "serde_rat::vec")]
    pub re: Vec<Rational>,
    #[serde(with = "serde_rat::vec")]
    pub im: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeJson {
    Theorem,
    Generalized,
}

fn default_mode() -> ModeJson {
    ModeJson::Theorem
}

fn optional_matrix<'de, D>(d: D) -> Result<Option<Vec<Vec<Rational>>>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    #[derive(Deserialize)]
    struct Wrap(#[serde(with = "serde_rat::mat")] Vec<Vec<Rational>>);
    Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
}

/// Why a problem could not be loaded.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadError {
    /// Malformed JSON, wrong types or inconsistent shapes.
    Input(String),
    /// Well-formed input rejected by the mathematical layer.
    Math(Error),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Input(m) => write!(f, "input error: {m}"),
            LoadError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl From<Error> for LoadError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSpec(m) => LoadError::Input(m),
            e => LoadError::Math(e),
        }
    }
}

/// Parses problem text, reporting the field path and position on failure.
pub fn parse_problem_file(text: &str) -> Result<ProblemFile, LoadError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let parsed: Result<ProblemFile, _> = serde_path_to_error::deserialize(de);
    parsed.map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        LoadError::Input(format!(
            "at `{path}` (line {}, column {}): {inner}",
            inner.line(),
            inner.column()
        ))
    })
}

pub fn load_problem(text: &str) -> Result<SphereSpec, LoadError> {
    problem_to_spec(&parse_problem_file(text)?)
}

pub fn problem_to_spec(p: &ProblemFile) -> Result<SphereSpec, LoadError> {
    let input = |m: String| LoadError::Input(m);
    let pair = |v: &[Rational], name: &str| -> Result<(Rational, Rational), LoadError> {
        match v {
            [lo, hi] => Ok((lo.clone(), hi.clone())),
            _ => Err(input(format!("`field.root_box.{name}` must have two entries"))),
        }
    };
    let re = pair(&p.field.root_box.re, "re")?;
    let im = pair(&p.field.root_box.im, "im")?;
    let field = make_field(&PolyQ::new(p.field.min_poly.clone()), RootBox::new(re, im))?;
    let d = field.degree();
    if p.center.len() != p.n {
        return Err(input(format!("`center` has {} entries, expected n = {}", p.center.len(), p.n)));
    }
    if p.base_point.len() != p.n {
        return Err(input(format!(
            "`base_point` has {} entries, expected n = {}",
            p.base_point.len(),
            p.n
        )));
    }
    let mut center = Vec::with_capacity(p.n);
    for (i, c) in p.center.iter().enumerate() {
        if c.len() > d {
            return Err(input(format!("`center[{i}]` has {} coefficients, field degree is {d}", c.len())));
        }
        let mut coeffs = c.clone();
        coeffs.resize(d, Rational::from_integer(0.into()));
        center.push(field.element(coeffs));
    }
    let form = match &p.form {
        None => None,
        Some(rows) => {
            if rows.len() != p.n || rows.iter().any(|r| r.len() != p.n) {
                return Err(input(format!("`form` must be {0} x {0}", p.n)));
            }
            Some(QuadraticFormQ::new(MatrixQ::from_rows(&(), rows.clone(), p.n))?)
        }
    };
    let mode = match p.mode {
        ModeJson::Theorem => Mode::Theorem,
        ModeJson::Generalized => Mode::Generalized,
    };
    Ok(SphereSpec::new(field, center, p.base_point.clone(), form, mode)?)
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn coeffs(e: &FieldElement) -> Vec<String> {
    rats(e.coeffs())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarrierJson {
    pub base: Vec<String>,
    pub directions: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenterJson {
    pub exact: Option<Vec<Vec<String>>>,
    pub approx: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusJson {
    pub exact: Option<Vec<String>>,
    pub approx: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhsJson {
    pub embedding_index: usize,
    pub center_re: Vec<String>,
    pub normal_im: Vec<String>,
    pub radius_sq_re: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureJson {
    pub kind: String,
    pub dim: usize,
    pub carrier: CarrierJson,
    pub center: CenterJson,
    pub radius_sq: RadiusJson,
    pub rhs: Vec<RhsJson>,
}

pub fn kind_name(k: ClosureKind) -> &'static str {
    match k {
        ClosureKind::Point => "point",
        ClosureKind::SubSphere => "subsphere",
        ClosureKind::FullSphere => "full_sphere",
    }
}

pub fn rhs_to_json(r: &RhsConstraint, digits: u32) -> RhsJson {
    let dec = |v: &[ComplexBall]| v.iter().map(|b| b.re_decimal(digits)).collect();
    RhsJson {
        embedding_index: r.embedding_index,
        center_re: dec(&r.center_re),
        normal_im: dec(&r.normal_im),
        radius_sq_re: r.radius_sq_re.re_decimal(digits),
    }
}

/// Output document; decimals carry `c.digits` fractional digits.
pub fn closure_to_json(c: &ClosureObject, rhs: &[RhsConstraint]) -> ClosureJson {
    let digits = c.digits;
    ClosureJson {
        kind: kind_name(c.kind).to_string(),
        dim: c.dim,
        carrier: CarrierJson {
            base: rats(c.carrier.base()),
            directions: c.carrier.directions().iter().map(|d| rats(d)).collect(),
        },
        center: CenterJson {
            exact: c.center_exact.as_ref().map(|v| v.iter().map(coeffs).collect()),
            approx: c.center_approx.iter().map(|b| b.re_decimal(digits)).collect(),
        },
        radius_sq: RadiusJson {
            exact: c.radius_sq_exact.as_ref().map(coeffs),
            approx: c.radius_sq_approx.re_decimal(digits),
        },
        rhs: rhs.iter().map(|r| rhs_to_json(r, digits)).collect(),
    }
}

/// Rebuilds a closure object from its document for the field of `spec`.
/// Approximate values become balls of radius half a unit in the last digit.
pub fn closure_from_json(j: &ClosureJson, spec: &SphereSpec) -> Result<ClosureObject, LoadError> {
    let input = |m: String| LoadError::Input(m);
    let parse = |s: &String| crate::rational::parse_rational(s).map_err(|e| input(e.to_string()));
    let parse_vec = |v: &[String]| v.iter().map(parse).collect::<Result<Vec<_>, _>>();
    let kind = match j.kind.as_str() {
        "point" => ClosureKind::Point,
        "subsphere" => ClosureKind::SubSphere,
        "full_sphere" => ClosureKind::FullSphere,
        other => return Err(input(format!("unknown kind {other:?}"))),
    };
    let base = parse_vec(&j.carrier.base)?;
    let dirs = j
        .carrier
        .directions
        .iter()
        .map(|d| parse_vec(d))
        .collect::<Result<Vec<_>, _>>()?;
    let carrier = AffineFrame::new(&(), base, dirs)?;
    let k: &NumberField = spec.field();
    let elem = |c: &[String]| -> Result<FieldElement, LoadError> {
        let mut v = parse_vec(c)?;
        if v.len() > k.degree() {
            return Err(input("too many coefficients".into()));
        }
        v.resize(k.degree(), Rational::from_integer(0.into()));
        Ok(k.element(v))
    };
    let digits = j.center.approx.first().map_or(0, |s| {
        s.split_once('.').map_or(0, |(_, f)| f.len() as u32)
    });
    let prec = crate::ball::bits_for_digits(digits.max(1), 16);
    let approx = |s: &String| -> Result<ComplexBall, LoadError> {
        let v = parse_decimal(s).map_err(|e| input(e.to_string()))?;
        let half_ulp = crate::ball::pow10_neg(digits) / Rational::from_integer(2.into());
        let b = ComplexBall::from_rational(&v, prec);
        let (r, _) = crate::ball::scaled_rational(&half_ulp, prec);
        Ok(ComplexBall::from_parts(
            b.mid_re_raw().clone(),
            b.mid_im_raw().clone(),
            b.rad_raw() + r + 1,
            prec,
        ))
    };
    Ok(ClosureObject {
        kind,
        dim: j.dim,
        carrier,
        center_exact: match &j.center.exact {
            Some(v) => Some(v.iter().map(|c| elem(c)).collect::<Result<_, _>>()?),
            None => None,
        },
        center_approx: j.center.approx.iter().map(approx).collect::<Result<_, _>>()?,
        radius_sq_exact: j.radius_sq.exact.as_ref().map(|c| elem(c)).transpose()?,
        radius_sq_approx: approx(&j.radius_sq.approx)?,
        digits,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootJson {
    pub index: usize,
    pub re: String,
    pub im: String,
    pub radius: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingsJson {
    pub min_poly: Vec<String>,
    pub digits: u32,
    pub designated_index: usize,
    pub roots: Vec<RootJson>,
}

pub fn embeddings_to_json(emb: &EmbeddingSet) -> EmbeddingsJson {
    let digits = emb.digits();
    EmbeddingsJson {
        min_poly: rats(emb.field().min_poly().coeffs()),
        digits,
        designated_index: emb.designated_index(),
        roots: emb
            .roots()
            .iter()
            .enumerate()
            .map(|(index, r)| RootJson {
                index,
                re: r.re_decimal(digits),
                im: r.im_decimal(digits),
                radius: r.rad_decimal(),
            })
            .collect(),
    }
}

/// Single-line JSON text with a trailing newline.
pub fn to_json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("output documents always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{compute_closure_with_digits, rhs_constraints};
    use crate::geometry::closure_membership;
    use crate::rational::int;

    const EXAMPLE_A: &str = r#"{
        "n": 2,
        "field": {"min_poly": ["-2/1", "0/1", "1/1"],
                  "root_box": {"re": ["1/1", "2/1"], "im": ["0/1", "0/1"]}},
        "center": [["0/1", "1/1"], ["1/1"]],
        "base_point": ["0/1", "0/1"],
        "form": null,
        "mode": "theorem"
    }"#;

    #[test]
    fn loads_and_round_trips() {
        let spec = load_problem(EXAMPLE_A).unwrap();
        assert_eq!(spec.n(), 2);
        let c = compute_closure_with_digits(&spec, 16).unwrap();
        let rhs = rhs_constraints(&spec, 16).unwrap();
        let j = closure_to_json(&c, &rhs);
        assert_eq!(j.kind, "subsphere");
        assert_eq!(j.carrier.directions, vec![vec!["0/1".to_string(), "1/1".to_string()]]);
        assert_eq!(j.radius_sq.exact, Some(vec!["1/1".to_string(), "0/1".to_string()]));
        assert_eq!(j.center.approx, vec!["0.0000000000000000", "1.0000000000000000"]);
        let text = to_json_line(&j);
        assert!(text.ends_with("}\n"));
        let back: ClosureJson = serde_json::from_str(&text).unwrap();
        let c2 = closure_from_json(&back, &spec).unwrap();
        for x in [[0, 2], [0, 0], [0, 1], [2, 0]] {
            let x: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
            assert_eq!(closure_membership(&c, &x, &spec), closure_membership(&c2, &x, &spec));
        }
    }

    #[test]
    fn schema_errors_name_the_field() {
        let bad = EXAMPLE_A.replace(r#""base_point": ["0/1", "0/1"]"#, r#""base_point": ["0/1", 0.5]"#);
        match load_problem(&bad) {
            Err(LoadError::Input(m)) => assert!(m.contains("base_point"), "{m}"),
            other => panic!("{other:?}"),
        }
        let bad = EXAMPLE_A.replace(r#"["-2/1", "0/1", "1/1"]"#, r#"["-2/1", "0.0", "1/1"]"#);
        match load_problem(&bad) {
            Err(LoadError::Input(m)) => assert!(m.contains("min_poly"), "{m}"),
            other => panic!("{other:?}"),
        }
        let bad = EXAMPLE_A.replace(r#""n": 2"#, r#""n": 3"#);
        assert!(matches!(load_problem(&bad), Err(LoadError::Input(_))));
        let bad = EXAMPLE_A.replace(r#""mode": "theorem""#, r#""mode": "other""#);
        assert!(matches!(load_problem(&bad), Err(LoadError::Input(_))));
    }

    #[test]
    fn math_errors_are_separate() {
        let bad = EXAMPLE_A.replace(r#"["-2/1", "0/1", "1/1"]"#, r#"["-1/1", "0/1", "1/1"]"#);
        assert!(matches!(load_problem(&bad), Err(LoadError::Math(Error::ReduciblePolynomial(_)))));
        let bad = EXAMPLE_A.replace(r#""form": null"#, r#""form": [["1/1", "0/1"], ["0/1", "-1/1"]]"#);
        assert!(matches!(load_problem(&bad), Err(LoadError::Math(Error::InvalidForm(_)))));
    }

    #[test]
    fn defaults_apply() {
        let t = r#"{"n": 2,
            "field": {"min_poly": ["-2", "0", "1"], "root_box": {"re": ["1", "2"], "im": ["0", "0"]}},
            "center": [["0", "1"], ["1"]], "base_point": ["0", "0"]}"#;
        let spec = load_problem(t).unwrap();
        assert_eq!(spec.mode(), Mode::Theorem);
        assert!(spec.form().is_identity());
        let extra = t.replace(r#""base_point""#, r#""extra": 1, "base_point""#);
        assert!(matches!(load_problem(&extra), Err(LoadError::Input(_))));
    }
}
