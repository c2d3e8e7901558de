use berkovich::field::parse_rational;
use berkovich::newton::{TailBound, TruncatedEntireSeries};
use berkovich::{BerkovichPoint, FieldDescriptor, FieldElement, Log, LogValue, Rational};
use serde_json::{Map, Value};

use crate::report::Failure;

pub const COMMANDS: &[&str] =
    &["phi", "julia-ray", "iterate", "annuli", "enumerate", "probe", "cantor", "fast-arc", "degree-check", "classify"];

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub field: FieldDescriptor,
    pub command: String,
    pub params: Map<String, Value>,
    pub seed: u64,
    pub out: Option<String>,
    pub format: Option<String>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let v: Value = serde_json::from_str(text).map_err(|e| Failure::config(format!("config is not JSON: {e}")))?;
        let obj = v.as_object().ok_or_else(|| Failure::config("config must be an object"))?;
        for k in obj.keys() {
            if !["field", "command", "params", "seed", "out", "format"].contains(&k.as_str()) {
                return Err(Failure::config(format!("unknown key \"{k}\"")));
            }
        }
        let field = obj.get("field").ok_or_else(|| Failure::config("missing \"field\""))?;
        let field: FieldDescriptor =
            serde_json::from_value(field.clone()).map_err(|e| Failure::config(format!("bad field: {e}")))?;
        let command = obj
            .get("command")
            .and_then(|c| c.as_str())
            .ok_or_else(|| Failure::config("missing \"command\""))?
            .to_string();
        if !COMMANDS.contains(&command.as_str()) {
            return Err(Failure::config(format!("unknown command \"{command}\"")));
        }
        let params = match obj.get("params") {
            None => Map::new(),
            Some(Value::Object(m)) => m.clone(),
            Some(_) => return Err(Failure::config("\"params\" must be an object")),
        };
        let seed = match obj.get("seed") {
            None => 0,
            Some(s) => s.as_u64().ok_or_else(|| Failure::config("\"seed\" must be a nonnegative integer"))?,
        };
        let string = |k: &str| -> Result<Option<String>, Failure> {
            match obj.get(k) {
                None => Ok(None),
                Some(Value::String(s)) => Ok(Some(s.clone())),
                Some(_) => Err(Failure::config(format!("\"{k}\" must be a string"))),
            }
        };
        Ok(RunConfig { field, command, params, seed, out: string("out")?, format: string("format")? })
    }
}

/// Typed access to a command's parameters.
pub struct Params<'a> {
    pub desc: FieldDescriptor,
    map: &'a Map<String, Value>,
}

impl<'a> Params<'a> {
    pub fn new(desc: FieldDescriptor, map: &'a Map<String, Value>, allowed: &[&str]) -> Result<Self, Failure> {
        if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Failure::config(format!("unknown parameter \"{k}\"")));
        }
        Ok(Params { desc, map })
    }

    pub fn has(&self, k: &str) -> bool {
        self.map.contains_key(k)
    }

    pub fn get(&self, k: &str) -> Result<&'a Value, Failure> {
        self.map.get(k).ok_or_else(|| Failure::config(format!("missing parameter \"{k}\"")))
    }

    pub fn usize(&self, k: &str) -> Result<usize, Failure> {
        self.get(k)?
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| Failure::config(format!("\"{k}\" must be a nonnegative integer")))
    }

    pub fn usize_or(&self, k: &str, default: usize) -> Result<usize, Failure> {
        if self.has(k) {
            self.usize(k)
        } else {
            Ok(default)
        }
    }

    pub fn rational(&self, k: &str) -> Result<Rational, Failure> {
        rational(self.get(k)?).map_err(|m| Failure::config(format!("\"{k}\": {m}")))
    }

    pub fn elem(&self, k: &str) -> Result<FieldElement, Failure> {
        Ok(FieldElement::from_json(self.desc, self.get(k)?)?)
    }

    pub fn point(&self, k: &str) -> Result<BerkovichPoint, Failure> {
        Ok(BerkovichPoint::from_json(self.desc, self.get(k)?)?)
    }

    pub fn points(&self, k: &str) -> Result<Vec<BerkovichPoint>, Failure> {
        let arr = self.get(k)?.as_array().ok_or_else(|| Failure::config(format!("\"{k}\" must be a list")))?;
        Ok(arr.iter().map(|p| BerkovichPoint::from_json(self.desc, p)).collect::<Result<_, _>>()?)
    }

    pub fn window(&self) -> Result<(Rational, Rational), Failure> {
        match self.get("window")?.as_array().map(|a| a.as_slice()) {
            Some([lo, hi]) => Ok((
                rational(lo).map_err(|m| Failure::config(format!("window: {m}")))?,
                rational(hi).map_err(|m| Failure::config(format!("window: {m}")))?,
            )),
            _ => Err(Failure::config("\"window\" must be [lo, hi]")),
        }
    }
}

/// A rational given as a JSON integer or an `"a/b"` string.
pub fn rational(v: &Value) -> Result<Rational, String> {
    match v {
        Value::Number(n) => {
            n.as_i64().map(|i| Rational::from_integer(i.into())).ok_or_else(|| format!("{n} is not an integer"))
        }
        Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
        _ => Err(format!("expected a rational, got {v}")),
    }
}

fn log_value(v: &Value) -> Result<Log, String> {
    match v {
        Value::String(s) if s == "inf" => Ok(LogValue::PosInf),
        Value::String(s) if s == "-inf" => Ok(LogValue::NegInf),
        other => rational(other).map(LogValue::Finite),
    }
}

/// `{"family": "geometric"|"baker"|"explicit", "params": {...}, "N": n}`.
pub fn series(v: &Value, hi: &Rational) -> Result<TruncatedEntireSeries<Rational>, Failure> {
    let obj = v.as_object().ok_or_else(|| Failure::config("series must be an object"))?;
    if let Some(k) = obj.keys().find(|k| !["family", "params", "N"].contains(&k.as_str())) {
        return Err(Failure::config(format!("unknown series key \"{k}\"")));
    }
    let family =
        obj.get("family").and_then(|f| f.as_str()).ok_or_else(|| Failure::config("series needs \"family\""))?;
    let empty = Map::new();
    let params = match obj.get("params") {
        None => &empty,
        Some(Value::Object(m)) => m,
        Some(_) => return Err(Failure::config("series params must be an object")),
    };
    // Enough terms for the window unless told otherwise.
    let default_n = (hi.ceil().to_integer().try_into().unwrap_or(0usize) + 1).max(8);
    let n = match obj.get("N") {
        None => default_n,
        Some(x) => x.as_u64().ok_or_else(|| Failure::config("\"N\" must be a nonnegative integer"))? as usize,
    };
    let get = |k: &str| -> Result<Rational, Failure> {
        let x = params.get(k).ok_or_else(|| Failure::config(format!("{family} series needs \"{k}\"")))?;
        rational(x).map_err(|m| Failure::config(format!("\"{k}\": {m}")))
    };
    let allow = |keys: &[&str]| -> Result<(), Failure> {
        match params.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(Failure::config(format!("unknown {family} parameter \"{k}\""))),
            None => Ok(()),
        }
    };
    match family {
        "geometric" => {
            allow(&["v_lambda"])?;
            Ok(TruncatedEntireSeries::geometric(-get("v_lambda")?, n))
        }
        "baker" => {
            allow(&["v_lambda", "l5", "l6"])?;
            Ok(TruncatedEntireSeries::baker(-get("v_lambda")?, get("l5")?, get("l6")?, n)?)
        }
        "explicit" => {
            allow(&["vals"])?;
            let vals = params
                .get("vals")
                .and_then(|v| v.as_array())
                .ok_or_else(|| Failure::config("explicit series needs a \"vals\" list"))?
                .iter()
                .map(|x| log_value(x).map_err(|m| Failure::config(format!("vals: {m}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TruncatedEntireSeries::explicit(vals, TailBound::None))
        }
        other => Err(Failure::config(format!("unknown series family \"{other}\""))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use berkovich::rat;
    use serde_json::json;

    #[test]
    fn parses_minimal_config() {
        let c = RunConfig::parse(r#"{"field": {"kind": "laurent-q"}, "command": "phi"}"#).unwrap();
        assert_eq!(c.seed, 0);
        assert!(c.params.is_empty() && c.out.is_none());
        assert!(RunConfig::parse(r#"{"field": {"kind": "laurent-q"}, "command": "phi", "seed": -1}"#).is_err());
        assert!(RunConfig::parse("[]").is_err());
    }

    #[test]
    fn rationals_from_numbers_and_strings() {
        assert_eq!(rational(&json!(3)), Ok(rat(3, 1)));
        assert_eq!(rational(&json!("-7/14")), Ok(rat(-1, 2)));
        assert!(rational(&json!(0.5)).is_err());
        assert!(rational(&json!("1/0")).is_err());
    }

    #[test]
    fn series_defaults_cover_the_window() {
        let s = series(&json!({"family": "geometric", "params": {"v_lambda": -1}}), &rat(19, 2)).unwrap();
        assert_eq!(s.order(), 11);
        let s = series(&json!({"family": "explicit", "params": {"vals": ["inf", 0, "-1/2"]}}), &rat(1, 1)).unwrap();
        assert_eq!(s.vals()[2], LogValue::Finite(rat(-1, 2)));
        assert!(series(&json!({"family": "baker", "params": {"v_lambda": -1, "l5": -1}}), &rat(1, 1)).is_err());
        assert!(series(&json!({"family": "geometric", "params": {"v_lambda": -1, "x": 1}}), &rat(1, 1)).is_err());
    }
}
