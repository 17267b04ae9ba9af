//! Text grammar for maps and coordinate changes.
//!
//! ```text
//! map   := name | name ':' params | '(' map ')'
//!        | 'conj:' map '|' homeo | 'comp:' map '|' map
//!        | 'unimodal:v=' num ',l=' map ',r=' map | 'homeo:' homeo
//! homeo := atom ( 'o' homeo )?
//! atom  := 'ulam' | 'alpha' | 'reflect' | 'id' | 'affine:p=,q=' | 'power:g='
//!        | 'mobius:a=,b=[,lo=,hi=]' | 'pwlh:x,y;…' | 'inv:' atom | '(' homeo ')'
//! ```
//!
//! The `Display` forms of [`MapDescriptor`] and [`Homeomorphism`] parse back
//! to the same value.

use conjugate_core::{Error as CoreError, Homeomorphism, MapDescriptor};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    /// The text does not follow the grammar.
    #[error("{0}")]
    Syntax(String),
    /// Well formed, but the library rejected the parameters.
    #[error(transparent)]
    Invalid(#[from] CoreError),
}

type Result<T> = std::result::Result<T, SpecError>;

pub fn parse_map(text: &str) -> Result<MapDescriptor> {
    let mut p = Parser::new(text);
    let m = p.map()?;
    p.finish(text, "map")?;
    Ok(m)
}

pub fn parse_homeo(text: &str) -> Result<Homeomorphism> {
    let mut p = Parser::new(text);
    let h = p.homeo()?;
    p.finish(text, "coordinate change")?;
    Ok(h)
}

const MAP_NAMES: &str = "logistic, tent, halftent, quadratic, doubling, cosine, sin2, id, hyperbola:, verhulst:, \
                         pwl:, linear:, conj:, comp:, unimodal:, homeo:";
const HOMEO_NAMES: &str = "ulam, alpha, reflect, id, affine:, power:, mobius:, pwlh:, inv:";

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { s, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.s.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn error(&self, what: &str) -> SpecError {
        match self.peek() {
            Some(_) => SpecError::Syntax(format!("{what} at '{}' in '{}'", self.rest(), self.s)),
            None => SpecError::Syntax(format!("{what} at end of '{}'", self.s)),
        }
    }

    fn finish(&mut self, text: &str, what: &str) -> Result<()> {
        self.skip_ws();
        if self.pos == self.s.len() {
            Ok(())
        } else {
            Err(SpecError::Syntax(format!(
                "unexpected '{}' after {what} in '{text}'",
                self.rest()
            )))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        let id = &self.rest()[..len];
        self.pos += len;
        id
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| matches!(c, ',' | ';' | '|' | ')' | '(' | '∘') || c.is_whitespace())
            .unwrap_or(self.rest().len());
        let tok = &self.rest()[..len];
        let v: f64 = tok
            .parse()
            .map_err(|_| self.error(&format!("'{tok}' is not a number")))?;
        if !v.is_finite() {
            return Err(self.error(&format!("'{tok}' is not finite")));
        }
        self.pos += len;
        Ok(v)
    }

    /// `k1=v1,k2=v2,…` with every key in `keys` present once; keys in
    /// `optional` may be left out.
    fn params(&mut self, keys: &[&str], optional: &[&str]) -> Result<Vec<Option<f64>>> {
        let all: Vec<&str> = keys.iter().chain(optional).copied().collect();
        let mut values = vec![None; all.len()];
        loop {
            let key = self.ident();
            let slot = all
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| self.error(&format!("unknown parameter '{key}', expected one of {}", all.join(", "))))?;
            if values[slot].is_some() {
                return Err(self.error(&format!("parameter '{key}' given twice")));
            }
            self.expect('=')?;
            values[slot] = Some(self.number()?);
            if !self.eat(',') {
                break;
            }
            // a comma followed by something other than a known key ends the list
            let save = self.pos;
            let next = self.ident();
            self.pos = save;
            if !all.contains(&next) {
                self.pos -= 1;
                break;
            }
        }
        for (k, v) in keys.iter().zip(&values) {
            if v.is_none() {
                return Err(self.error(&format!("missing parameter '{k}'")));
            }
        }
        Ok(values)
    }

    fn knots(&mut self) -> Result<Vec<(f64, f64)>> {
        let mut knots = Vec::new();
        loop {
            let x = self.number()?;
            self.expect(',')?;
            let y = self.number()?;
            knots.push((x, y));
            if !self.eat(';') {
                return Ok(knots);
            }
        }
    }

    fn map(&mut self) -> Result<MapDescriptor> {
        if self.eat('(') {
            let m = self.map()?;
            self.expect(')')?;
            return Ok(m);
        }
        let name = self.ident();
        let with_params = self.peek() == Some(':');
        if with_params {
            self.pos += 1;
        }
        let m = match (name, with_params) {
            ("logistic", false) => MapDescriptor::Logistic,
            ("tent", false) => MapDescriptor::Tent,
            ("halftent", false) => MapDescriptor::HalfTent,
            ("quadratic", false) => MapDescriptor::Quadratic,
            ("doubling", false) => MapDescriptor::Doubling,
            ("cosine", false) => MapDescriptor::Cosine,
            ("sin2", false) => MapDescriptor::SineSquared,
            ("id", false) => MapDescriptor::identity_on(0.0, 1.0)?,
            ("hyperbola", true) => {
                let v = self.params(&["e", "a"], &[])?;
                MapDescriptor::hyperbola(v[0].unwrap(), v[1].unwrap())?
            }
            ("verhulst", true) => {
                let v = self.params(&["m", "n"], &[])?;
                MapDescriptor::Verhulst {
                    m: v[0].unwrap(),
                    n: v[1].unwrap(),
                }
            }
            ("linear", true) => {
                let v = self.params(&["p", "q"], &[])?;
                MapDescriptor::linear(v[0].unwrap(), v[1].unwrap())
            }
            ("pwl", true) => MapDescriptor::piecewise_linear(self.knots()?)?,
            ("conj", true) => {
                let base = self.map()?;
                self.expect('|')?;
                MapDescriptor::conjugated(base, self.homeo()?)
            }
            ("comp", true) => {
                let outer = self.map()?;
                self.expect('|')?;
                MapDescriptor::compose(outer, self.map()?)
            }
            ("unimodal", true) => {
                let v = self.params(&["v"], &[])?;
                self.expect(',')?;
                self.keyword("l")?;
                let left = self.map()?;
                self.expect(',')?;
                self.keyword("r")?;
                let right = self.map()?;
                MapDescriptor::unimodal(v[0].unwrap(), left, right)?
            }
            ("homeo", true) => MapDescriptor::homeo(self.homeo()?),
            ("", _) => return Err(self.error("expected a map name")),
            _ => {
                return Err(SpecError::Syntax(format!(
                    "unknown map '{name}{}' (known: {MAP_NAMES})",
                    if with_params { ":" } else { "" }
                )))
            }
        };
        Ok(m)
    }

    fn keyword(&mut self, key: &str) -> Result<()> {
        let save = self.pos;
        if self.ident() == key && self.eat('=') {
            Ok(())
        } else {
            self.pos = save;
            Err(self.error(&format!("expected '{key}='")))
        }
    }

    fn homeo(&mut self) -> Result<Homeomorphism> {
        let outer = self.homeo_atom()?;
        self.skip_ws();
        let rest = self.rest();
        let sep = if rest.starts_with('∘') {
            Some('∘'.len_utf8())
        } else if rest.starts_with('o') && !rest[1..].starts_with(|c: char| c.is_ascii_alphanumeric()) {
            Some(1)
        } else {
            None
        };
        match sep {
            Some(len) => {
                self.pos += len;
                Ok(Homeomorphism::compose(outer, self.homeo()?))
            }
            None => Ok(outer),
        }
    }

    fn homeo_atom(&mut self) -> Result<Homeomorphism> {
        if self.eat('(') {
            let h = self.homeo()?;
            self.expect(')')?;
            return Ok(h);
        }
        let name = self.ident();
        let with_params = self.peek() == Some(':');
        if with_params {
            self.pos += 1;
        }
        let h = match (name, with_params) {
            ("ulam", false) => Homeomorphism::UlamArcsin,
            ("alpha", false) => Homeomorphism::AlphaArcsin,
            ("reflect", false) => Homeomorphism::Reflect,
            ("id", false) => Homeomorphism::identity(),
            ("affine", true) => {
                let v = self.params(&["p", "q"], &[])?;
                Homeomorphism::affine(v[0].unwrap(), v[1].unwrap())?
            }
            ("power", true) => Homeomorphism::power(self.params(&["g"], &[])?[0].unwrap())?,
            ("mobius", true) => {
                let v = self.params(&["a", "b"], &["lo", "hi"])?;
                let (a, b) = (v[0].unwrap(), v[1].unwrap());
                let (lo, hi) = match (v[2], v[3]) {
                    (Some(lo), Some(hi)) => (lo, hi),
                    (None, None) => (0.0, 1.0),
                    _ => return Err(self.error("mobius needs both lo and hi, or neither")),
                };
                conjugate_core::conjugacy::mobius_involution(a, b, lo, hi)?
            }
            ("pwlh", true) => Homeomorphism::piecewise_linear(self.knots()?)?,
            ("inv", true) => self.homeo_atom()?.inverse(),
            ("", _) => return Err(self.error("expected a coordinate change")),
            _ => {
                return Err(SpecError::Syntax(format!(
                    "unknown coordinate change '{name}{}' (known: {HOMEO_NAMES})",
                    if with_params { ":" } else { "" }
                )))
            }
        };
        Ok(h)
    }
}
