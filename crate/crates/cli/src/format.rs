//! Plain-text polygon files.
//!
//! ```text
//! # comment
//! n 6
//! 0 0
//! 2 0
//! 2 1
//! 1 1
//! 1 2
//! 0 2
//! s 3/2 1/4
//! t 9/10 19/10
//! ```

use std::fmt;

use diffuse_core::{Point, Polygon, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line \"n <count>\"")]
    MissingHeader,
    #[error("expected {expected} vertices, found {found}")]
    VertexCount { expected: usize, found: usize },
}

/// Vertex list plus optional designated points, as read from disk. The
/// vertices are not validated here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonFile {
    pub vertices: Vec<Point>,
    pub source: Option<Point>,
    pub target: Option<Point>,
}

impl PolygonFile {
    pub fn new(polygon: &Polygon, source: Option<Point>, target: Option<Point>) -> Self {
        PolygonFile { vertices: polygon.vertices().to_vec(), source, target }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut expected = None;
        let mut vertices = Vec::new();
        let (mut source, mut target) = (None, None);
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let syntax = |msg: String| FormatError::Syntax { line, msg };
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let words: Vec<&str> = raw.split_whitespace().collect();
            match words[0] {
                "n" => {
                    if expected.is_some() {
                        return Err(syntax("repeated header".into()));
                    }
                    let [_, count] = words[..] else {
                        return Err(syntax("expected \"n <count>\"".into()));
                    };
                    expected = Some(count.parse::<usize>().map_err(|e| syntax(format!("bad count: {e}")))?);
                }
                tag @ ("s" | "t") => {
                    let p = point(&words[1..]).map_err(syntax)?;
                    let slot = if tag == "s" { &mut source } else { &mut target };
                    if slot.replace(p).is_some() {
                        return Err(syntax(format!("repeated \"{tag}\" line")));
                    }
                }
                _ => {
                    if expected.is_none() {
                        return Err(FormatError::MissingHeader);
                    }
                    if source.is_some() || target.is_some() {
                        return Err(syntax("vertex after designated points".into()));
                    }
                    vertices.push(point(&words).map_err(syntax)?);
                }
            }
        }
        let expected = expected.ok_or(FormatError::MissingHeader)?;
        if vertices.len() != expected {
            return Err(FormatError::VertexCount { expected, found: vertices.len() });
        }
        Ok(PolygonFile { vertices, source, target })
    }
}

fn point(words: &[&str]) -> Result<Point, String> {
    let [x, y] = words else {
        return Err(format!("expected two coordinates, found {}", words.len()));
    };
    Ok(Point::new(coord(x)?, coord(y)?))
}

pub fn coord(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|_| format!("bad coordinate {s:?}"))
}

/// Canonical form; `parse` inverts it exactly.
impl fmt::Display for PolygonFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.vertices.len())?;
        for v in &self.vertices {
            writeln!(f, "{} {}", v.x, v.y)?;
        }
        if let Some(s) = &self.source {
            writeln!(f, "s {} {}", s.x, s.y)?;
        }
        if let Some(t) = &self.target {
            writeln!(f, "t {} {}", t.x, t.y)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const L6: &str = "# L shape\nn 6\n0 0\n2 0\n2 1\n1 1\n1 2\n0 2\ns 3/2 1/4\nt 9/10 19/10\n";

    #[test]
    fn parses_l6() {
        let f = PolygonFile::parse(L6).unwrap();
        assert_eq!(f.vertices.len(), 6);
        assert_eq!(f.source, Some(Point::frac(3, 2, 1, 4)));
        assert_eq!(f.target, Some(Point::frac(9, 10, 19, 10)));
        assert_eq!(f.to_string(), L6.trim_start_matches("# L shape\n"));
    }

    #[test]
    fn reports_errors() {
        assert_eq!(PolygonFile::parse("0 0\n"), Err(FormatError::MissingHeader));
        assert_eq!(PolygonFile::parse("n 3\n0 0\n1 0\n"), Err(FormatError::VertexCount { expected: 3, found: 2 }));
        assert!(matches!(PolygonFile::parse("n 1\n0 x\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(PolygonFile::parse("n 1\n0 1/0\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(PolygonFile::parse("n 1\n0 0 0\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(PolygonFile::parse("n 1\ns 0 0\ns 1 1\n"), Err(FormatError::Syntax { line: 3, .. })));
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..50).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn round_trip(
            pts in prop::collection::vec((rational(), rational()), 0..12),
            s in prop::option::of((rational(), rational())),
            t in prop::option::of((rational(), rational())),
        ) {
            let to_point = |(x, y): (Rational, Rational)| Point::new(x, y);
            let file = PolygonFile {
                vertices: pts.into_iter().map(to_point).collect(),
                source: s.map(to_point),
                target: t.map(to_point),
            };
            let text = file.to_string();
            let back = PolygonFile::parse(&text).unwrap();
            prop_assert_eq!(&back, &file);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
