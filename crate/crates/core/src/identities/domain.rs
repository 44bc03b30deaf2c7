use std::fmt;

use num_traits::{One, Signed};

use super::params::Params;
use crate::combinatorics::ExactRational;

/// One restriction on a parameter assignment.
#[derive(Clone)]
pub enum Constraint {
    /// Integer parameter with a lower bound.
    Int(&'static str, i64),
    /// Rational parameter in `[−1, 1]`.
    Unit(&'static str),
    /// `a < b` for integer parameters.
    Less(&'static str, &'static str),
    /// Anything else; the text is the message on violation.
    Custom(&'static str, fn(&Params) -> bool),
}

/// Conjunction of constraints; also fixes the set of parameter names.
#[derive(Clone, Default)]
pub struct Domain {
    pub constraints: Vec<Constraint>,
}

fn show(v: &ExactRational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        v.to_string()
    }
}

impl Domain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn int(mut self, name: &'static str, min: i64) -> Self {
        self.constraints.push(Constraint::Int(name, min));
        self
    }

    pub fn unit(mut self, name: &'static str) -> Self {
        self.constraints.push(Constraint::Unit(name));
        self
    }

    pub fn less(mut self, a: &'static str, b: &'static str) -> Self {
        self.constraints.push(Constraint::Less(a, b));
        self
    }

    pub fn custom(mut self, text: &'static str, f: fn(&Params) -> bool) -> Self {
        self.constraints.push(Constraint::Custom(text, f));
        self
    }

    /// Declared parameter names, in declaration order.
    pub fn names(&self) -> Vec<&'static str> {
        self.constraints
            .iter()
            .filter_map(|c| match c {
                Constraint::Int(n, _) | Constraint::Unit(n) => Some(*n),
                _ => None,
            })
            .collect()
    }

    pub fn has(&self, name: &str) -> bool {
        self.names().contains(&name)
    }

    /// `Err(message)` naming the first violated constraint.
    pub fn check(&self, p: &Params) -> Result<(), String> {
        let names = self.names();
        if let Some(extra) = p.names().find(|n| !names.contains(n)) {
            return Err(format!("unknown parameter '{extra}' (expected {})", names.join(", ")));
        }
        if let Some(missing) = names.iter().find(|n| p.get(n).is_none()) {
            return Err(format!("missing parameter '{missing}'"));
        }
        for c in &self.constraints {
            match c {
                Constraint::Int(n, min) => {
                    if !p.is_integer(n) {
                        return Err(format!("requires integer {n}, got {n} = {}", show(&p.rat(n))));
                    }
                    let v = p.int(n);
                    if v < *min {
                        return Err(format!("requires {n} ≥ {min}, got {n} = {v}"));
                    }
                }
                Constraint::Unit(n) => {
                    let v = p.rat(n);
                    if v.abs() > ExactRational::one() {
                        return Err(format!("requires −1 ≤ {n} ≤ 1, got {n} = {}", show(&v)));
                    }
                }
                Constraint::Less(a, b) => {
                    if p.int(a) >= p.int(b) {
                        return Err(format!(
                            "requires {a} < {b}, got {a} = {}, {b} = {}",
                            p.int(a),
                            p.int(b)
                        ));
                    }
                }
                Constraint::Custom(text, f) => {
                    if !f(p) {
                        return Err(format!("requires {text}, got {p}"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .constraints
            .iter()
            .map(|c| match c {
                Constraint::Int(n, min) => format!("{n} ≥ {min}"),
                Constraint::Unit(n) => format!("{n} ∈ [−1, 1]"),
                Constraint::Less(a, b) => format!("{a} < {b}"),
                Constraint::Custom(text, _) => text.to_string(),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "—")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages() {
        let d = Domain::new().int("k", 1).int("r", 1).less("r", "k");
        assert!(d.check(&"k=3,r=1".parse().unwrap()).is_ok());
        let e = d.check(&"k=2,r=3".parse().unwrap()).unwrap_err();
        assert!(e.starts_with("requires r < k"), "{e}");
        let e = d.check(&"k=2,r=0".parse().unwrap()).unwrap_err();
        assert!(e.starts_with("requires r ≥ 1"), "{e}");
        assert!(d.check(&"k=2".parse().unwrap()).unwrap_err().contains("missing"));
        assert!(d.check(&"k=2,r=1,q=1".parse().unwrap()).unwrap_err().contains("unknown"));
        assert!(d.check(&"k=1/2,r=1".parse().unwrap()).unwrap_err().contains("integer"));
        assert_eq!(d.to_string(), "k ≥ 1, r ≥ 1, r < k");
    }
}
