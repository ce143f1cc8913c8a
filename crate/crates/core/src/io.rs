//! Text formats: gluing tables and move paths.
//!
//! Gluing table:
//!
//! ```text
//! # comment
//! tets 2
//! 1:0132 1:0132 1:0132 1:0132
//! 0:0132 0:0132 0:0132 0:0132
//! ```
//!
//! Row `i` lists faces `0..3` of tetrahedron `i` as `partner:image`, where
//! `image` is the permutation's image of `0123`. A free face is written `-`
//! (only accepted by [`parse_fragment`]).

use std::fmt::Write as _;

use crate::error::{GluingError, ParseError};
use crate::moves::Move;
use crate::perm::Perm;
use crate::triangulation::{FaceRef, Triangulation};

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

/// Lines that are not blank or comments, with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_perm(s: &str) -> Option<Perm> {
    let b = s.as_bytes();
    if b.len() != 4 || !b.iter().all(|c| (b'0'..=b'3').contains(c)) {
        return None;
    }
    Perm::new([b[0] - b'0', b[1] - b'0', b[2] - b'0', b[3] - b'0'])
}

/// Parses a closed gluing table.
pub fn parse_table(text: &str) -> Result<Triangulation, ParseError> {
    parse_inner(text, false)
}

/// Parses a table that may contain free faces.
pub fn parse_fragment(text: &str) -> Result<Triangulation, ParseError> {
    parse_inner(text, true)
}

fn parse_inner(text: &str, allow_free: bool) -> Result<Triangulation, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| syntax(0, "empty input"))?;
    let n: usize = header
        .strip_prefix("tets")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| syntax(hline, "expected `tets N`"))?;
    if n == 0 {
        return Err(ParseError::Gluing { line: hline, source: GluingError::Empty });
    }
    let mut rows: Vec<(usize, [Option<(usize, Perm)>; 4])> = Vec::with_capacity(n);
    for (line, l) in lines {
        if rows.len() == n {
            return Err(syntax(line, "more rows than tetrahedra"));
        }
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(syntax(line, format!("expected 4 entries, found {}", fields.len())));
        }
        let mut row = [None; 4];
        for (f, field) in fields.iter().enumerate() {
            if *field == "-" {
                if !allow_free {
                    let here = FaceRef::new(rows.len(), f);
                    return Err(ParseError::Gluing { line, source: GluingError::Unpaired(here) });
                }
                continue;
            }
            let (t, p) = field
                .split_once(':')
                .ok_or_else(|| syntax(line, format!("bad entry `{field}`")))?;
            let t: usize = t.parse().map_err(|_| syntax(line, format!("bad tetrahedron `{t}`")))?;
            let p = parse_perm(p).ok_or_else(|| syntax(line, format!("bad permutation `{p}`")))?;
            row[f] = Some((t, p));
        }
        rows.push((line, row));
    }
    if rows.len() != n {
        return Err(syntax(hline, format!("expected {n} rows, found {}", rows.len())));
    }

    // Validate pairwise before building so errors carry line numbers.
    for (t, (line, row)) in rows.iter().enumerate() {
        for (f, entry) in row.iter().enumerate() {
            let here = FaceRef::new(t, f);
            let Some((u, p)) = *entry else { continue };
            let err = |source| ParseError::Gluing { line: *line, source };
            if u >= n {
                return Err(err(GluingError::TetOutOfRange(here, u)));
            }
            let back = p.apply(f);
            if u == t && back == f {
                return Err(err(GluingError::SelfGlued(here)));
            }
            match rows[u].1[back] {
                Some((t2, p2)) if t2 == t && p2 == p.inverse() => {}
                _ => return Err(err(GluingError::NotInvolutive(here, FaceRef::new(u, back)))),
            }
        }
    }
    let mut tri = Triangulation::with_tets(n);
    for (t, (_, row)) in rows.iter().enumerate() {
        for (f, entry) in row.iter().enumerate() {
            if let Some((u, p)) = *entry {
                if tri.gluing(t, f).is_none() {
                    tri.join(t, f, u, p);
                }
            }
        }
    }
    Ok(tri)
}

pub fn write_table(tri: &Triangulation) -> String {
    let mut out = format!("tets {}\n", tri.len());
    for t in 0..tri.len() {
        let entries: Vec<String> = (0..4)
            .map(|f| match tri.gluing(t, f) {
                Some(g) => format!("{}:{}", g.tet, g.perm),
                None => "-".to_string(),
            })
            .collect();
        let _ = writeln!(out, "{}", entries.join(" "));
    }
    out
}

/// Parses one move in path syntax: `23 t f`, `32 e`, `02 e p q` or `20 e`.
pub fn parse_move(s: &str) -> Result<Move, String> {
    let fields: Vec<&str> = s.split_whitespace().collect();
    let nums: Result<Vec<usize>, _> = fields.iter().skip(1).map(|x| x.parse::<usize>()).collect();
    let nums = nums.map_err(|_| format!("bad number in move `{s}`"))?;
    match (fields.first().copied(), nums.as_slice()) {
        (Some("23"), &[t, f]) if f < 4 => Ok(Move::TwoThree(FaceRef::new(t, f))),
        (Some("32"), &[e]) => Ok(Move::ThreeTwo(e)),
        (Some("02"), &[e, p, q]) => Ok(Move::ZeroTwo { edge: e, p, q }),
        (Some("20"), &[e]) => Ok(Move::TwoZero(e)),
        _ => Err(format!("unrecognised move `{s}`")),
    }
}

pub fn write_move(m: &Move) -> String {
    match *m {
        Move::TwoThree(f) => format!("23 {} {}", f.tet, f.face),
        Move::ThreeTwo(e) => format!("32 {e}"),
        Move::ZeroTwo { edge, p, q } => format!("02 {edge} {p} {q}"),
        Move::TwoZero(e) => format!("20 {e}"),
    }
}

/// A parsed path file: the referenced triangulation file and the moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFile {
    pub triangulation: String,
    pub moves: Vec<Move>,
}

pub fn parse_path(text: &str) -> Result<PathFile, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| syntax(0, "empty path file"))?;
    let triangulation = header
        .strip_prefix("triangulation")
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| syntax(hline, "expected `triangulation <file>`"))?
        .to_string();
    let mut moves = Vec::new();
    for (line, l) in lines {
        let l = l.split('#').next().unwrap_or("").trim();
        moves.push(parse_move(l).map_err(|m| syntax(line, m))?);
    }
    Ok(PathFile { triangulation, moves })
}

pub fn write_path(triangulation: &str, moves: &[Move]) -> String {
    let mut out = format!("triangulation {triangulation}\n");
    for m in moves {
        out.push_str(&write_move(m));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_line_of_non_involutive_entry() {
        let text = "# two tets\ntets 2\n1:0123 1:0123 1:0123 1:0123\n0:0123 0:0123 0:0123 0:1023\n";
        match parse_table(text) {
            Err(ParseError::Gluing { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reports_self_glued_face() {
        let text = "tets 1\n0:0213 0:0132 0:0132 0:0213\n";
        match parse_table(text) {
            Err(ParseError::Gluing { line: 2, source: GluingError::SelfGlued(f) }) => {
                assert_eq!(f, FaceRef::new(0, 0))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_faces_only_in_fragments() {
        let text = "tets 2\n1:0132 - - -\n0:0132 - - -\n";
        assert!(parse_table(text).is_err());
        let frag = parse_fragment(text).unwrap();
        assert_eq!(frag.free_faces().len(), 6);
        assert_eq!(write_table(&frag).lines().count(), 3);
    }

    #[test]
    fn move_syntax() {
        for s in ["23 0 2", "32 4", "02 1 0 2", "20 3"] {
            assert_eq!(write_move(&parse_move(s).unwrap()), s);
        }
        assert!(parse_move("23 0 4").is_err());
        assert!(parse_move("44 1").is_err());
    }
}
