use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserialize, Deserializer};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::combinatorics::{to_f64, ExactRational};
use crate::error::{Error, Result};

/// Named parameter assignment (`k=5`, `x=-1/2`, …), ordered by name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params(BTreeMap<String, ExactRational>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_int(mut self, name: &str, v: i64) -> Self {
        self.0.insert(name.to_string(), ExactRational::from_integer(BigInt::from(v)));
        self
    }

    pub fn with(mut self, name: &str, v: ExactRational) -> Self {
        self.0.insert(name.to_string(), v);
        self
    }

    pub fn set(&mut self, name: &str, v: ExactRational) {
        self.0.insert(name.to_string(), v);
    }

    pub fn get(&self, name: &str) -> Option<&ExactRational> {
        self.0.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Integer parameter; panics if absent (records validate first).
    pub fn int(&self, name: &str) -> i64 {
        self.0
            .get(name)
            .and_then(|v| v.to_integer().to_i64())
            .unwrap_or_else(|| panic!("missing integer parameter {name}"))
    }

    pub fn u(&self, name: &str) -> u32 {
        self.int(name) as u32
    }

    pub fn rat(&self, name: &str) -> ExactRational {
        self.0
            .get(name)
            .cloned()
            .unwrap_or_else(|| panic!("missing parameter {name}"))
    }

    pub fn real(&self, name: &str) -> f64 {
        to_f64(&self.rat(name))
    }

    pub(crate) fn is_integer(&self, name: &str) -> bool {
        self.0.get(name).is_some_and(|v| v.is_integer())
    }

    /// Parse one `name=value` override; values are integers or `a/b`.
    pub fn parse_assignment(text: &str) -> Result<(String, ExactRational)> {
        let (name, value) = text.split_once('=').ok_or_else(|| Error::Parse {
            position: 0,
            message: format!("expected name=value, got '{text}'"),
        })?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::Parse {
                position: 0,
                message: format!("invalid parameter name '{name}'"),
            });
        }
        let v = parse_rational(value.trim()).map_err(|message| Error::Parse {
            position: name.len() + 1,
            message,
        })?;
        Ok((name.to_string(), v))
    }
}

fn parse_rational(s: &str) -> std::result::Result<ExactRational, String> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| format!("'{s}' is not an integer or fraction"))?;
    let den = BigInt::from_str(den).map_err(|_| format!("'{s}' is not an integer or fraction"))?;
    if den.is_zero() {
        return Err(format!("'{s}' has a zero denominator"));
    }
    Ok(ExactRational::new(num, den))
}

impl FromStr for Params {
    type Err = Error;

    /// Comma-separated `name=value` list; the empty string gives no parameters.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Params::new();
        for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (name, v) = Params::parse_assignment(part)?;
            p.set(&name, v);
        }
        Ok(p)
    }
}

fn fmt_value(v: &ExactRational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, v)| format!("{k}={}", fmt_value(v)))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for Params {
    /// Integers become JSON numbers, fractions strings such as `"-1/2"`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            match v.to_integer().to_i64().filter(|_| v.is_integer()) {
                Some(i) => map.serialize_entry(k, &i)?,
                None => map.serialize_entry(k, &fmt_value(v))?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Params {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Value {
            Int(i64),
            Text(String),
        }
        let raw = BTreeMap::<String, Value>::deserialize(deserializer)?;
        let mut p = Params::new();
        for (k, v) in raw {
            let v = match v {
                Value::Int(i) => ExactRational::from_integer(BigInt::from(i)),
                Value::Text(t) => parse_rational(&t).map_err(de::Error::custom)?,
            };
            p.set(&k, v);
        }
        Ok(p)
    }
}

/// Cartesian product of integer parameter values.
pub fn int_grid(axes: &[(&str, &[i64])]) -> Vec<Params> {
    let mut out = vec![Params::new()];
    for (name, values) in axes {
        out = out
            .into_iter()
            .flat_map(|p| values.iter().map(move |v| p.clone().with_int(name, *v)))
            .collect();
    }
    out
}

/// Cartesian product of rational parameter values.
pub fn rational_grid(base: Vec<Params>, axes: &[(&str, &[ExactRational])]) -> Vec<Params> {
    let mut out = base;
    for (name, values) in axes {
        out = out
            .into_iter()
            .flat_map(|p| values.iter().map(move |v| p.clone().with(name, v.clone())))
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rational;

    #[test]
    fn parse_and_display() {
        let p: Params = "k=5, x=-1/2,m=2".parse().unwrap();
        assert_eq!(p.int("k"), 5);
        assert_eq!(p.rat("x"), rational(-1, 2));
        assert_eq!(p.to_string(), "k=5,m=2,x=-1/2");
        assert!("k=".parse::<Params>().is_err());
        assert!("k=1/0".parse::<Params>().is_err());
        assert!("=3".parse::<Params>().is_err());
    }

    #[test]
    fn json_shape() {
        let p: Params = "k=5,x=1/2".parse().unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"k":5,"x":"1/2"}"#);
        assert_eq!(serde_json::from_str::<Params>(&json).unwrap(), p);
    }

    #[test]
    fn grids() {
        let g = int_grid(&[("k", &[1, 2]), ("m", &[1, 2, 3])]);
        assert_eq!(g.len(), 6);
        assert_eq!(g[1].to_string(), "k=1,m=2");
    }
}
