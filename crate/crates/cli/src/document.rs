//! Input documents: one JSON object describing a surface, a polarization, a
//! character and (optionally) a curve.
//!
//! ```json
//! {
//!   "surface": {"kind": "p2"},
//!   "polarization": ["1"],
//!   "twist": "auto",
//!   "character": {"ch0": 2, "ch1": ["1"], "ch2": "-3/2"},
//!   "curve": {"dH": 4},
//!   "options": {"depth": 12, "d_max": 100, "output": "table"}
//! }
//! ```
//!
//! Rationals are `"p/q"` strings or JSON integers. Floats are rejected.

use serde::Deserialize;
use serde_json::Value;

use restrictor_core::chern::minimizing_twist;
use restrictor_core::p2x::DEFAULT_DEPTH;
use restrictor_core::rational::int;
use restrictor_core::{ChernCharacter, DivisorClass, Error, SurfaceModel, TwistContext};

use crate::CliError;

pub const DEFAULT_D_MAX: i64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Table,
    Csv,
    Svg,
    Json,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SurfaceInput {
    #[serde(rename = "p2")]
    P2,
    Hirzebruch { m: u32 },
    Custom {
        intersection: Vec<Vec<i64>>,
        canonical: DivisorClass,
        chi: i64,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub depth: Option<u32>,
    pub d_max: Option<i64>,
    pub output: Option<OutputFormat>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub surface: SurfaceInput,
    #[serde(default)]
    pub polarization: Option<DivisorClass>,
    /// `"auto"` or a class; absent means no twist.
    #[serde(default)]
    pub twist: Option<Value>,
    pub character: ChernCharacter,
    /// `{"dH": d}` or a class.
    #[serde(default)]
    pub curve: Option<Value>,
    #[serde(default)]
    pub options: Options,
}

/// A curve class, with `d` when it is `dH` for a positive integer `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub class: DivisorClass,
    pub degree: Option<i64>,
}

/// A validated document ready for the computations.
#[derive(Debug, Clone)]
pub struct Problem {
    pub surface: SurfaceModel,
    pub v: ChernCharacter,
    pub ctx: TwistContext,
    pub twist_auto: bool,
    pub curve: Option<Curve>,
    pub depth: u32,
    pub d_max: i64,
    pub output: Option<OutputFormat>,
}

impl Problem {
    pub fn curve(&self) -> Result<&Curve, CliError> {
        self.curve
            .as_ref()
            .ok_or_else(|| CliError::Input("document has no \"curve\"".into()))
    }

    pub fn polarization(&self) -> &DivisorClass {
        self.ctx.h()
    }
}

pub fn parse_document(text: &str) -> Result<Problem, CliError> {
    let doc: InputDocument = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    doc.resolve()
}

fn field<T: for<'de> Deserialize<'de>>(name: &str, value: Value) -> Result<T, CliError> {
    serde_json::from_value(value).map_err(|e| CliError::Input(format!("\"{name}\": {e}")))
}

impl InputDocument {
    pub fn resolve(self) -> Result<Problem, CliError> {
        let surface = match self.surface {
            SurfaceInput::P2 => SurfaceModel::p2(),
            SurfaceInput::Hirzebruch { m } => SurfaceModel::hirzebruch(m)?,
            SurfaceInput::Custom {
                intersection,
                canonical,
                chi,
            } => SurfaceModel::custom(intersection, canonical, chi)?,
        };
        let h = match (self.polarization, surface.hirzebruch_parameter()) {
            (Some(h), _) => h,
            (None, _) if surface.is_p2() => DivisorClass::from_ints(&[1]),
            (None, Some(m)) => SurfaceModel::class2(1, i64::from(m) + 1),
            (None, None) => return Err(CliError::Input("custom surfaces need a \"polarization\"".into())),
        };
        surface.check(&h)?;
        match surface.is_ample(&h) {
            Ok(true) | Err(Error::UnsupportedSurface) => {}
            Ok(false) => return Err(Error::NotAmple.into()),
            Err(e) => return Err(e.into()),
        }
        let v = self.character;
        surface.check(&v.ch1)?;

        let (d, twist_auto) = match self.twist {
            None => (surface.zero_class(), false),
            Some(Value::String(s)) if s == "auto" => (minimizing_twist(&surface, &v, &h)?, true),
            Some(other) => (field::<DivisorClass>("twist", other)?, false),
        };
        let ctx = TwistContext::new(&surface, h.clone(), d)?;

        let curve = match self.curve {
            None => None,
            Some(Value::Object(map)) if map.contains_key("dH") => {
                let d: i64 = field("curve.dH", map["dH"].clone())?;
                if d < 1 {
                    return Err(Error::BadDegree(d).into());
                }
                Some(Curve {
                    class: h.scale(&int(d)),
                    degree: Some(d),
                })
            }
            Some(other) => {
                let class: DivisorClass = field("curve", other)?;
                surface.check(&class)?;
                let degree = multiple_of(&class, &h);
                Some(Curve { class, degree })
            }
        };

        let depth = self.options.depth.unwrap_or(DEFAULT_DEPTH);
        let d_max = self.options.d_max.unwrap_or(DEFAULT_D_MAX);
        if d_max < 1 {
            return Err(CliError::Input(format!("d_max must be >= 1, got {d_max}")));
        }
        Ok(Problem {
            surface,
            v,
            ctx,
            twist_auto,
            curve,
            depth,
            d_max,
            output: self.options.output,
        })
    }
}

/// `Some(d)` when `class = d * h` for a positive integer `d`.
fn multiple_of(class: &DivisorClass, h: &DivisorClass) -> Option<i64> {
    let (i, hi) = h.coefficients().iter().enumerate().find(|(_, c)| !num_traits::Zero::is_zero(*c))?;
    let k = &class[i] / hi;
    if !k.is_integer() || &h.scale(&k) != class {
        return None;
    }
    num_traits::ToPrimitive::to_i64(&k.to_integer()).filter(|&d| d >= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use restrictor_core::rational::q;

    #[test]
    fn running_example_document() {
        let p = parse_document(r#"{"surface":{"kind":"p2"},"character":{"ch0":2,"ch1":["1"],"ch2":"-3/2"},"curve":{"dH":4}}"#).unwrap();
        assert_eq!(p.v.ch2, q(-3, 2));
        assert_eq!(p.curve.unwrap().degree, Some(4));
        assert_eq!(p.depth, DEFAULT_DEPTH);
    }

    #[test]
    fn rejects_bad_rationals_and_floats() {
        let zero_den = parse_document(r#"{"surface":{"kind":"p2"},"character":{"ch0":2,"ch1":["1/0"],"ch2":"0"}}"#).unwrap_err();
        assert!(zero_den.to_string().contains("1/0"), "{zero_den}");
        assert!(zero_den.to_string().contains("line 1"), "{zero_den}");
        let float = parse_document(r#"{"surface":{"kind":"p2"},"character":{"ch0":2,"ch1":[0.5],"ch2":"0"}}"#).unwrap_err();
        assert!(float.to_string().contains("non-integer number"), "{float}");
    }

    #[test]
    fn class_curves_and_defaults() {
        let p = parse_document(r#"{"surface":{"kind":"hirzebruch","m":1},"character":{"ch0":2,"ch1":["2","4"],"ch2":"0"},"curve":["3","6"]}"#).unwrap();
        assert_eq!(p.polarization(), &SurfaceModel::class2(1, 2));
        assert_eq!(p.curve.unwrap().degree, Some(3));
        let p = parse_document(r#"{"surface":{"kind":"hirzebruch","m":1},"character":{"ch0":2,"ch1":["2","4"],"ch2":"0"},"curve":["1","5"],"twist":"auto"}"#).unwrap();
        assert_eq!(p.curve.unwrap().degree, None);
        assert!(p.twist_auto);
    }

    #[test]
    fn rejects_non_ample_polarization() {
        let err = parse_document(r#"{"surface":{"kind":"hirzebruch","m":1},"polarization":["1","1"],"character":{"ch0":2,"ch1":["0","0"],"ch2":"0"}}"#).unwrap_err();
        assert!(matches!(err, CliError::Core(Error::NotAmple)));
    }
}
