//! Line-delimited ASCII transcript of a game: the single source of truth for
//! replay and independent verification.
//!
//! ```text
//! ogc-transcript v1 presenter=<name> algorithm=<name> c=<int> seed=<uint64>
//! <round>;<comma-separated neighbor ids, empty allowed>;<color>;<annotation>
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Color, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptHeader {
    pub presenter: String,
    pub algorithm: String,
    pub target_colors: u32,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    pub index: u32,
    pub neighbors: Vec<VertexId>,
    pub color: Color,
    pub annotation: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub header: TranscriptHeader,
    pub rounds: Vec<RoundRecord>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("transcript line {line}: {message}")]
pub struct TranscriptError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> TranscriptError {
    TranscriptError {
        line,
        message: message.into(),
    }
}

impl Transcript {
    /// Renders the bit-exact text form; every line is LF-terminated.
    pub fn render(&self) -> String {
        let mut out = String::new();
        fmt::Write::write_fmt(
            &mut out,
            format_args!(
                "ogc-transcript v1 presenter={} algorithm={} c={} seed={}\n",
                self.header.presenter,
                self.header.algorithm,
                self.header.target_colors,
                self.header.seed
            ),
        )
        .unwrap();
        for r in &self.rounds {
            let neighbors = r
                .neighbors
                .iter()
                .map(|v| v.get().to_string())
                .collect::<Vec<_>>()
                .join(",");
            fmt::Write::write_fmt(
                &mut out,
                format_args!("{};{};{};{}\n", r.index, neighbors, r.color.get(), r.annotation),
            )
            .unwrap();
        }
        out
    }
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn parse_kv<'a>(token: &'a str, key: &str, line: usize) -> Result<&'a str, TranscriptError> {
    token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| err(line, format!("expected `{}=<value>`, found `{}`", key, token)))
}

impl FromStr for Transcript {
    type Err = TranscriptError;

    fn from_str(text: &str) -> Result<Transcript, TranscriptError> {
        if !text.is_ascii() {
            return Err(err(0, "transcript must be ASCII"));
        }
        let mut lines = text.split('\n').enumerate();
        let (_, header_line) = lines.next().ok_or_else(|| err(1, "empty input"))?;
        let tokens: Vec<&str> = header_line.split(' ').collect();
        if tokens.len() != 6 || tokens[0] != "ogc-transcript" || tokens[1] != "v1" {
            return Err(err(1, "malformed header; expected `ogc-transcript v1 ...`"));
        }
        let presenter = parse_kv(tokens[2], "presenter", 1)?.to_string();
        let algorithm = parse_kv(tokens[3], "algorithm", 1)?.to_string();
        let target_colors: u32 = parse_kv(tokens[4], "c", 1)?
            .parse()
            .map_err(|_| err(1, "invalid target color count"))?;
        let seed: u64 = parse_kv(tokens[5], "seed", 1)?
            .parse()
            .map_err(|_| err(1, "invalid seed"))?;

        let mut rounds = Vec::new();
        for (idx, raw) in lines {
            let line_no = idx + 1;
            if raw.is_empty() {
                continue; // trailing newline
            }
            let mut parts = raw.splitn(4, ';');
            let index: u32 = parts
                .next()
                .unwrap()
                .parse()
                .map_err(|_| err(line_no, "invalid round index"))?;
            let neighbor_field = parts
                .next()
                .ok_or_else(|| err(line_no, "missing neighbor field"))?;
            let color_field = parts
                .next()
                .ok_or_else(|| err(line_no, "missing color field"))?;
            let annotation = parts
                .next()
                .ok_or_else(|| err(line_no, "missing annotation field"))?
                .to_string();
            let mut neighbors = Vec::new();
            if !neighbor_field.is_empty() {
                for id in neighbor_field.split(',') {
                    let id: u32 = id
                        .parse()
                        .map_err(|_| err(line_no, format!("invalid neighbor id `{}`", id)))?;
                    if id == 0 {
                        return Err(err(line_no, "neighbor ids start at 1"));
                    }
                    neighbors.push(VertexId::new(id));
                }
            }
            let color: u32 = color_field
                .parse()
                .map_err(|_| err(line_no, "invalid color"))?;
            if color == 0 {
                return Err(err(line_no, "colors start at 1"));
            }
            if index == 0 {
                return Err(err(line_no, "round indices start at 1"));
            }
            rounds.push(RoundRecord {
                index,
                neighbors,
                color: Color::new(color),
                annotation,
            });
        }
        Ok(Transcript {
            header: TranscriptHeader {
                presenter,
                algorithm,
                target_colors,
                seed,
            },
            rounds,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Transcript {
        Transcript {
            header: TranscriptHeader {
                presenter: "bipartite".into(),
                algorithm: "first-fit".into(),
                target_colors: 2,
                seed: 0,
            },
            rounds: vec![
                RoundRecord {
                    index: 1,
                    neighbors: vec![],
                    color: Color::new(1),
                    annotation: "phase=1 rule=introduce k=0".into(),
                },
                RoundRecord {
                    index: 2,
                    neighbors: vec![VertexId::new(1)],
                    color: Color::new(2),
                    annotation: "phase=1 rule=introduce k=0".into(),
                },
            ],
        }
    }

    #[test]
    fn renders_pinned_format() {
        let expected = "ogc-transcript v1 presenter=bipartite algorithm=first-fit c=2 seed=0\n\
                        1;;1;phase=1 rule=introduce k=0\n\
                        2;1;2;phase=1 rule=introduce k=0\n";
        assert_eq!(sample().render(), expected);
    }

    #[test]
    fn parses_what_it_renders() {
        let t = sample();
        let parsed: Transcript = t.render().parse().unwrap();
        assert_eq!(parsed, t);
    }

    #[test]
    fn header_only_transcript_is_valid() {
        let parsed: Transcript = "ogc-transcript v1 presenter=x algorithm=y c=1 seed=7\n"
            .parse()
            .unwrap();
        assert!(parsed.rounds.is_empty());
        assert_eq!(parsed.header.seed, 7);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let text = "ogc-transcript v1 presenter=x algorithm=y c=1 seed=0\n1;;1;ok\nbroken\n";
        let e = text.parse::<Transcript>().unwrap_err();
        assert_eq!(e.line, 3);
    }
}
