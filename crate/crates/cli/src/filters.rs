//! Filter specifications on the command line.
//!
//! ```text
//! trivial | all | dense
//! ore(e, e, ...)                 multiplicative set of regular elements
//! ideals([e, ...], [e, ...])     explicit ideals, closed to a filter
//! generated([e, ...], ...)       generator lists, each generating an ideal
//! ```
//!
//! An element `e` is an index or a quoted label such as `"(1,0)"`.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Result};

use twoloc_core::filter::{dense_filter, filter_closure, is_gabriel_filter, ore_filter, GabrielFilter};
use twoloc_core::ideal::{generate, is_ideal, Side};
use twoloc_core::ring::Ring;
use twoloc_core::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

impl ElementRef {
    pub fn resolve(&self, ring: &Ring) -> Result<usize> {
        match self {
            ElementRef::Index(i) if *i < ring.order() => Ok(*i),
            ElementRef::Index(i) => bail!("element {i} is outside a ring of order {}", ring.order()),
            ElementRef::Label(l) => ring.element(l).ok_or_else(|| anyhow!("no element labelled {l:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterSpec {
    Trivial,
    All,
    Dense,
    Ore(Vec<ElementRef>),
    Ideals(Vec<Vec<ElementRef>>),
    Generated(Vec<Vec<ElementRef>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "filter spec, column {}: {}", self.column + 1, self.message)?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(self.input[..self.column].chars().count()))
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            input: self.input.to_string(),
            column: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.input.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-'))
            .unwrap_or(self.rest().len());
        let w = &self.rest()[..len];
        self.pos += len;
        w
    }

    fn element(&mut self) -> Result<ElementRef, ParseError> {
        match self.peek() {
            Some('"') => {
                self.pos += 1;
                let end = self.rest().find('"').ok_or_else(|| self.error("unterminated label"))?;
                let label = self.rest()[..end].to_string();
                self.pos += end + 1;
                Ok(ElementRef::Label(label))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let w = self.word();
                w.parse().map(ElementRef::Index).map_err(|_| ParseError {
                    input: self.input.to_string(),
                    column: start,
                    message: format!("{w:?} is not an element index"),
                })
            }
            _ => Err(self.error("expected an element index or a quoted label")),
        }
    }

    /// `open e, e, ... close`, possibly empty.
    fn list<T>(
        &mut self,
        open: char,
        close: char,
        item: impl Fn(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        self.expect(open)?;
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.error(format!("expected ',' or '{close}'"))),
            }
        }
    }

    fn element_list(&mut self) -> Result<Vec<ElementRef>, ParseError> {
        self.list('[', ']', Self::element)
    }

    fn spec(&mut self) -> Result<FilterSpec, ParseError> {
        let start = self.pos;
        let spec = match self.word() {
            "trivial" => FilterSpec::Trivial,
            "all" => FilterSpec::All,
            "dense" => FilterSpec::Dense,
            "ore" => FilterSpec::Ore(self.list('(', ')', Self::element)?),
            "ideals" => FilterSpec::Ideals(self.list('(', ')', Self::element_list)?),
            "generated" => FilterSpec::Generated(self.list('(', ')', Self::element_list)?),
            w => {
                return Err(ParseError {
                    input: self.input.to_string(),
                    column: start,
                    message: format!(
                        "unknown filter kind {w:?}; expected trivial, all, dense, ore, ideals or generated"
                    ),
                })
            }
        };
        self.skip_ws();
        if !self.rest().is_empty() {
            return Err(self.error("trailing input"));
        }
        Ok(spec)
    }
}

impl FromStr for FilterSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        Parser { input: s, pos: 0 }.spec()
    }
}

fn resolve_all(ring: &Ring, list: &[ElementRef]) -> Result<Vec<usize>> {
    list.iter().map(|e| e.resolve(ring)).collect()
}

impl FilterSpec {
    /// Elements of an `ore(...)` set.
    pub fn ore_set(&self, ring: &Ring) -> Result<Option<Vec<usize>>> {
        match self {
            FilterSpec::Ore(list) => Ok(Some(resolve_all(ring, list)?)),
            _ => Ok(None),
        }
    }

    /// The seed ideals, before closing.
    pub fn seeds(&self, ring: &Ring, side: Side) -> Result<Option<Vec<ElemSet>>> {
        let n = ring.order();
        match self {
            FilterSpec::Ideals(lists) => lists
                .iter()
                .map(|l| {
                    let set = ElemSet::from_iter(n, resolve_all(ring, l)?);
                    if !is_ideal(ring, side, &set) {
                        bail!("{:?} is not a {side} ideal", labels(ring, &set));
                    }
                    Ok(set)
                })
                .collect::<Result<_>>()
                .map(Some),
            FilterSpec::Generated(lists) => lists
                .iter()
                .map(|l| Ok(generate(ring, side, resolve_all(ring, l)?)))
                .collect::<Result<_>>()
                .map(Some),
            _ => Ok(None),
        }
    }

    /// Whether the listed ideals already form a Gabriel filter, when the spec lists ideals.
    pub fn check_family(&self, ring: &Ring, side: Side) -> Result<Option<std::result::Result<(), String>>> {
        match self {
            FilterSpec::Ideals(_) => {
                let family = self.seeds(ring, side)?.unwrap_or_default();
                Ok(Some(is_gabriel_filter(ring, side, &family)?.map_err(|v| v.to_string())))
            }
            _ => Ok(None),
        }
    }

    pub fn build(&self, ring: &Ring, side: Side) -> Result<GabrielFilter> {
        Ok(match self {
            FilterSpec::Trivial => GabrielFilter::trivial(ring, side),
            FilterSpec::All => GabrielFilter::all(ring, side),
            FilterSpec::Dense => dense_filter(ring, side)?,
            FilterSpec::Ore(list) => ore_filter(ring, &resolve_all(ring, list)?, side)?,
            FilterSpec::Ideals(_) | FilterSpec::Generated(_) => {
                let seeds = self.seeds(ring, side)?.unwrap_or_default();
                filter_closure(ring, side, &seeds)?
            }
        })
    }
}

pub fn labels(ring: &Ring, set: &ElemSet) -> Vec<String> {
    set.iter().map(|x| ring.label(x).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keywords() {
        assert_eq!("trivial".parse::<FilterSpec>().unwrap(), FilterSpec::Trivial);
        assert_eq!(" dense ".parse::<FilterSpec>().unwrap(), FilterSpec::Dense);
    }

    #[test]
    fn nested_lists_and_labels() {
        let spec: FilterSpec = r#"generated([2], ["(1,0)", 3])"#.parse().unwrap();
        assert_eq!(
            spec,
            FilterSpec::Generated(vec![
                vec![ElementRef::Index(2)],
                vec![ElementRef::Label("(1,0)".into()), ElementRef::Index(3)],
            ])
        );
        assert_eq!("ore()".parse::<FilterSpec>().unwrap(), FilterSpec::Ore(vec![]));
    }

    #[test]
    fn errors_point_at_the_column() {
        let e = "ideals([0, 2], [x])".parse::<FilterSpec>().unwrap_err();
        assert_eq!(e.column, 16);
        let e = "dense junk".parse::<FilterSpec>().unwrap_err();
        assert_eq!(e.message, "trailing input");
        let e = "weird".parse::<FilterSpec>().unwrap_err();
        assert_eq!(e.column, 0);
    }
}
