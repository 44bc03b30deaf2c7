//! Text form of sum descriptors, modelled on the `S_{π₁,π₂,p}` notation.
//!
//! ```text
//! S[<pi1>;<pi2>;p=<int>]          Σ Π ζ_n(base)^exp · Π L_n(base)^exp / n^p
//! Sbar[<pi1>;<pi2>;p=<int>]       same with (−1)^{n−1}
//! K[m=<int>,k=<int>,r=<int>,type=zeta|L]   Σ ζ_n(m) or L_n(m) / ((n+r)(n+k))
//! ST[p=<int>,k=<int>]             Σ S(n+1,p) / (n! · n(n+k))
//! <pi> := 0 | item (',' item)*     item := base ('^' exp)?
//! ```

use super::descriptor::{Factor, SumDescriptor};
use crate::error::{Error, Result};

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.err(format!("expected '{c}', found '{got}'")),
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.chars.get(self.pos) {
                Some(c) => self.err(format!("expected an integer, found '{c}'")),
                None => self.err("expected an integer, found end of input"),
            };
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().or_else(|_| {
            self.pos = start;
            self.err(format!("integer '{text}' out of range"))
        })
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected trailing '{c}'")),
        }
    }

    /// `name=<int>` or `name=<word>`; returns (name, value text, value start).
    fn assignment(&mut self) -> Result<(String, String, usize)> {
        let name = self.word();
        if name.is_empty() {
            return self.err("expected a parameter name");
        }
        self.expect('=')?;
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(format!("missing value for '{name}'"));
        }
        Ok((name, self.chars[start..self.pos].iter().collect(), start))
    }
}

fn index_list(cur: &mut Cursor) -> Result<Vec<(u32, u32)>> {
    let mut items = Vec::new();
    loop {
        let at = {
            cur.skip_ws();
            cur.pos
        };
        let base = cur.int()?;
        if base == 0 {
            if items.is_empty() && !matches!(cur.peek(), Some(',') | Some('^')) {
                return Ok(items);
            }
            cur.pos = at;
            return cur.err("index 0 is only allowed alone, meaning an empty list");
        }
        let exp = if cur.peek() == Some('^') {
            cur.pos += 1;
            let at = cur.pos;
            let e = cur.int()?;
            if e == 0 {
                cur.pos = at;
                return cur.err("exponent must be ≥ 1");
            }
            e
        } else {
            1
        };
        items.push((base, exp));
        if cur.peek() == Some(',') {
            cur.pos += 1;
        } else {
            return Ok(items);
        }
    }
}

fn named_ints(cur: &mut Cursor, names: &[&str]) -> Result<Vec<(String, String, usize)>> {
    let mut out = Vec::new();
    loop {
        let at = {
            cur.skip_ws();
            cur.pos
        };
        let (name, value, pos) = cur.assignment()?;
        if !names.contains(&name.as_str()) {
            cur.pos = at;
            return cur.err(format!("unknown parameter '{name}' (expected one of {})", names.join(", ")));
        }
        if out.iter().any(|(n, _, _)| *n == name) {
            cur.pos = at;
            return cur.err(format!("parameter '{name}' given twice"));
        }
        out.push((name, value, pos));
        match cur.peek() {
            Some(',') => cur.pos += 1,
            _ => return Ok(out),
        }
    }
}

fn get_int(cur: &mut Cursor, params: &[(String, String, usize)], name: &str, default: Option<u32>) -> Result<u32> {
    match params.iter().find(|(n, _, _)| n == name) {
        Some((_, v, pos)) => v.parse().or_else(|_| {
            cur.pos = *pos;
            cur.err(format!("'{name}' must be a non-negative integer, got '{v}'"))
        }),
        None => match default {
            Some(d) => Ok(d),
            None => cur.err(format!("missing parameter '{name}'")),
        },
    }
}

/// Parse a sum specification into a descriptor.
pub fn parse_sum_spec(src: &str) -> Result<SumDescriptor> {
    let mut cur = Cursor::new(src);
    let head = cur.word();
    let desc = match head.as_str() {
        "S" | "Sbar" => {
            cur.expect('[')?;
            let pi1 = index_list(&mut cur)?;
            cur.expect(';')?;
            let pi2 = index_list(&mut cur)?;
            cur.expect(';')?;
            let params = named_ints(&mut cur, &["p"])?;
            let p = get_int(&mut cur, &params, "p", None)?;
            cur.expect(']')?;
            let mut d = SumDescriptor::power(p);
            for (b, e) in pi1 {
                d = d.with(Factor::Zeta(b), e);
            }
            for (b, e) in pi2 {
                d = d.with(Factor::Alt(b), e);
            }
            if head == "Sbar" {
                d = d.alternating();
            }
            d
        }
        "K" => {
            cur.expect('[')?;
            let params = named_ints(&mut cur, &["m", "k", "r", "type"])?;
            let m = get_int(&mut cur, &params, "m", None)?;
            let k = get_int(&mut cur, &params, "k", None)?;
            let r = get_int(&mut cur, &params, "r", Some(0))?;
            let kind = params
                .iter()
                .find(|(n, _, _)| n == "type")
                .map(|(_, v, p)| (v.clone(), *p));
            let factor = match kind {
                None => Factor::Zeta(m),
                Some((v, _)) if v == "zeta" => Factor::Zeta(m),
                Some((v, _)) if v == "L" => Factor::Alt(m),
                Some((v, p)) => {
                    cur.pos = p;
                    return cur.err(format!("type must be 'zeta' or 'L', got '{v}'"));
                }
            };
            cur.expect(']')?;
            if m == 0 || k == 0 {
                return Err(Error::InvalidArgument("K[] requires m ≥ 1 and k ≥ 1".into()));
            }
            if r >= k {
                return Err(Error::InvalidArgument(format!("K[] requires r < k, got r = {r}, k = {k}")));
            }
            SumDescriptor::kernel(r, k).with(factor, 1)
        }
        "ST" => {
            cur.expect('[')?;
            let params = named_ints(&mut cur, &["p", "k"])?;
            let p = get_int(&mut cur, &params, "p", None)?;
            let k = get_int(&mut cur, &params, "k", None)?;
            cur.expect(']')?;
            if p < 2 || k == 0 {
                return Err(Error::InvalidArgument("ST[] requires p ≥ 2 and k ≥ 1".into()));
            }
            SumDescriptor::kernel(0, k).with(Factor::StirlingWeight(p), 1)
        }
        "" => return cur.err("expected S, Sbar, K or ST"),
        other => {
            cur.pos -= other.chars().count();
            return cur.err(format!("unknown sum kind '{other}' (expected S, Sbar, K or ST)"));
        }
    };
    cur.end()?;
    desc.validate()?;
    Ok(desc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::descriptor::Outer;

    #[test]
    fn euler_sum() {
        let d = parse_sum_spec("S[1^3,2^5,3^2;1^2,2^3;p=4]").unwrap();
        assert_eq!(d.outer, Outer::Power(4));
        assert_eq!(d.factors.len(), 5);
        assert!(!d.alternating);
        let d = parse_sum_spec(" Sbar[ 0 ; 1 ; p = 3 ]").unwrap();
        assert_eq!(d.factors, vec![(Factor::Alt(1), 1)]);
        assert!(d.alternating);
        let d = parse_sum_spec("S[2;0;p=6]").unwrap();
        assert_eq!(d.factors, vec![(Factor::Zeta(2), 1)]);
    }

    #[test]
    fn kernel_and_stirling() {
        let d = parse_sum_spec("K[m=1,k=1,r=0,type=zeta]").unwrap();
        assert_eq!(d.outer, Outer::Kernel { r: 0, k: 1 });
        let d = parse_sum_spec("K[m=2,k=3,type=L]").unwrap();
        assert_eq!(d.factors, vec![(Factor::Alt(2), 1)]);
        let d = parse_sum_spec("ST[p=3,k=2]").unwrap();
        assert_eq!(d.factors, vec![(Factor::StirlingWeight(3), 1)]);
    }

    #[test]
    fn errors_carry_positions() {
        for (src, pos) in [("S[1;0;q=1]", 6), ("S[1;0;p=1", 9), ("X[1]", 0), ("S[1,0;0;p=2]", 4), ("S[1^;0;p=2]", 4)] {
            match parse_sum_spec(src) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
        assert!(matches!(parse_sum_spec("K[m=1,k=2,r=3]"), Err(Error::InvalidArgument(_))));
    }
}
