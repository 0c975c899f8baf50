//! Ring specifications from files or the built-in corpus.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use toml::Spanned;

use twoloc_core::corpus;
use twoloc_core::ring::{make_ring, MatrixShape, Ring, RingSpec};

/// A path to a TOML ring spec, or `corpus:<name>` for a built-in ring.
pub fn load_ring_spec(source: &str) -> Result<RingSpec> {
    if let Some(name) = source.strip_prefix("corpus:") {
        return Ok(corpus::ring_spec(name)?);
    }
    let text = fs::read_to_string(Path::new(source)).with_context(|| format!("reading ring spec {source}"))?;
    parse_ring_spec(&text).with_context(|| format!("in ring spec {source}"))
}

/// Every field any kind may use. Deserializing straight into this struct
/// (rather than the tagged enum) keeps toml's line/column diagnostics.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: Spanned<String>,
    n: Option<usize>,
    p: Option<usize>,
    tail: Option<Vec<usize>>,
    base: Option<Box<RawSpec>>,
    size: Option<usize>,
    shape: Option<MatrixShape>,
    factors: Option<Vec<RawSpec>>,
    order: Option<usize>,
    add: Option<Vec<Vec<usize>>>,
    mul: Option<Vec<Vec<usize>>>,
    zero: Option<usize>,
    one: Option<usize>,
    labels: Option<Vec<String>>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

impl RawSpec {
    fn into_spec(self, text: &str) -> Result<RingSpec> {
        let (line, col) = line_col(text, self.kind.span().start);
        let need = |field: &str| {
            anyhow!(
                "line {line}, column {col}: kind {:?} needs field `{field}`",
                self.kind.get_ref()
            )
        };
        Ok(match self.kind.get_ref().as_str() {
            "zmod" => RingSpec::Zmod { n: self.n.ok_or_else(|| need("n"))? },
            "poly-quotient" => RingSpec::PolyQuotient {
                p: self.p.ok_or_else(|| need("p"))?,
                tail: self.tail.clone().ok_or_else(|| need("tail"))?,
            },
            "matrix" => RingSpec::Matrix {
                size: self.size.ok_or_else(|| need("size"))?,
                shape: self.shape.unwrap_or_default(),
                base: Box::new(self.base.ok_or_else(|| need("base"))?.into_spec(text)?),
            },
            "product" => RingSpec::Product {
                factors: self
                    .factors
                    .ok_or_else(|| need("factors"))?
                    .into_iter()
                    .map(|f| f.into_spec(text))
                    .collect::<Result<_>>()?,
            },
            "table" => RingSpec::Table {
                order: self.order.ok_or_else(|| need("order"))?,
                add: self.add.clone().ok_or_else(|| need("add"))?,
                mul: self.mul.clone().ok_or_else(|| need("mul"))?,
                zero: self.zero.ok_or_else(|| need("zero"))?,
                one: self.one.ok_or_else(|| need("one"))?,
                labels: self.labels,
            },
            other => bail!(
                "line {line}, column {col}: unknown kind {other:?}; expected zmod, poly-quotient, matrix, product or table"
            ),
        })
    }
}

pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let raw: RawSpec = toml::from_str(text)?;
    raw.into_spec(text)
}

pub fn load_ring(source: &str) -> Result<Ring> {
    let spec = load_ring_spec(source)?;
    make_ring(&spec).with_context(|| format!("building ring from {source}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_constructors() {
        let spec = parse_ring_spec(
            "kind = \"matrix\"\nsize = 2\nshape = \"upper-triangular\"\n[base]\nkind = \"zmod\"\nn = 2\n",
        )
        .unwrap();
        assert_eq!(
            spec,
            RingSpec::Matrix {
                base: Box::new(RingSpec::Zmod { n: 2 }),
                size: 2,
                shape: MatrixShape::UpperTriangular,
            }
        );
    }

    #[test]
    fn explicit_tables() {
        let text = "kind = \"table\"\norder = 2\nadd = [[0, 1], [1, 0]]\nmul = [[0, 0], [0, 1]]\nzero = 0\none = 1\n";
        let r = make_ring(&parse_ring_spec(text).unwrap()).unwrap();
        assert_eq!(r.order(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_ring_spec("kind = \"zmod\"\nn = \"six\"\n")
            .unwrap_err()
            .to_string();
        assert!(e.contains("line 2"), "{e}");
        let e = parse_ring_spec("kind = \"matrix\"\nsize = 2\n")
            .unwrap_err()
            .to_string();
        assert!(e.contains("line 1") && e.contains("`base`"), "{e}");
        let e = parse_ring_spec("kind = \"zmod\"\nm = 6\n").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
    }

    #[test]
    fn shipped_examples_load() {
        let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../rings");
        let orders = [("zmod6", 6), ("t2f2", 8), ("f2xf2", 4)];
        for (name, order) in orders {
            let r = load_ring(&format!("{dir}/{name}.toml")).unwrap();
            assert_eq!(r.order(), order, "{name}");
        }
    }

    #[test]
    fn corpus_names() {
        assert_eq!(load_ring("corpus:f4").unwrap().order(), 4);
        assert!(load_ring("corpus:nothing").is_err());
    }
}
