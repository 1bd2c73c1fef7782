//! Line-oriented design file format.
//!
//! ```text
//! % comment
//! #DGDD v=12 k=4 lambda=1 directed=0
//! G: 0 1 2
//! G: 3 4 5
//! ...
//! 0 3 6 9
//! ```
//!
//! Exactly one header (`#DD v= k= lambda=` or `#DGDD v= k= lambda= directed=`),
//! then for `#DGDD` the group lines, then one block per line. Numbers are
//! decimal without leading zeros, separated by single spaces, LF endings.
//! Undirected grouped files may mix block sizes up to `k` (truncated TDs).

use crate::error::ParseError;
use crate::model::{DesignObject, DesignParams, DirectedDesign, GroupedDesign, OrderedBlock, Point};
use crate::trade::BoundCertificate;

enum Header {
    Dd(DesignParams),
    Dgdd(DesignParams, bool),
}

fn parse_number(tok: &str, line: usize) -> Result<u32, ParseError> {
    let ok = !tok.is_empty() && tok.bytes().all(|b| b.is_ascii_digit()) && (tok == "0" || !tok.starts_with('0'));
    if !ok {
        return Err(ParseError::new(line, format!("bad number `{tok}`")));
    }
    tok.parse().map_err(|_| ParseError::new(line, format!("number `{tok}` too large")))
}

fn parse_field(tok: Option<&str>, key: &str, line: usize) -> Result<u32, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::new(line, format!("bad header: missing `{key}=`")))?;
    let value = tok
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| ParseError::new(line, format!("bad header: expected `{key}=`, found `{tok}`")))?;
    parse_number(value, line)
}

fn parse_header(text: &str, line: usize) -> Result<Header, ParseError> {
    let mut toks = text.split(' ');
    let kind = toks.next().unwrap_or_default();
    let (v, k, lambda) = match kind {
        "#DD" | "#DGDD" => (
            parse_field(toks.next(), "v", line)?,
            parse_field(toks.next(), "k", line)?,
            parse_field(toks.next(), "lambda", line)?,
        ),
        other => return Err(ParseError::new(line, format!("bad header `{other}`"))),
    };
    if k < 2 || lambda < 1 {
        return Err(ParseError::new(line, format!("bad header: k={k} lambda={lambda}")));
    }
    let params = DesignParams::unchecked(v, k, lambda);
    let header = if kind == "#DD" {
        Header::Dd(params)
    } else {
        let directed = match parse_field(toks.next(), "directed", line)? {
            0 => false,
            1 => true,
            d => return Err(ParseError::new(line, format!("bad header: directed={d}"))),
        };
        Header::Dgdd(params, directed)
    };
    if let Some(extra) = toks.next() {
        return Err(ParseError::new(line, format!("bad header: unexpected `{extra}`")));
    }
    Ok(header)
}

fn parse_points(text: &str, line: usize) -> Result<Vec<Point>, ParseError> {
    text.split(' ').map(|t| parse_number(t, line)).collect()
}

/// Parses a design file. Point labels are kept exactly as written.
pub fn parse_design_file(text: &str) -> Result<DesignObject, ParseError> {
    let mut header: Option<(Header, usize)> = None;
    let mut groups: Vec<Vec<Point>> = Vec::new();
    let mut blocks: Vec<OrderedBlock> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.split('\n').enumerate() {
        let line = i + 1;
        last_line = line;
        if raw.contains('\r') {
            return Err(ParseError::new(line, "CR in line ending"));
        }
        if raw.is_empty() || raw.starts_with('%') {
            continue;
        }
        let Some((h, _)) = &header else {
            header = Some((parse_header(raw, line)?, line));
            continue;
        };
        if raw.starts_with('#') {
            return Err(ParseError::new(line, "bad header: more than one header"));
        }
        let (params, directed, grouped) = match h {
            Header::Dd(p) => (*p, true, false),
            Header::Dgdd(p, d) => (*p, *d, true),
        };
        if let Some(rest) = raw.strip_prefix("G:") {
            if !grouped {
                return Err(ParseError::new(line, "group line in #DD file"));
            }
            if !blocks.is_empty() {
                return Err(ParseError::new(line, "group line after block lines"));
            }
            let rest = rest
                .strip_prefix(' ')
                .ok_or_else(|| ParseError::new(line, "group line needs at least one point"))?;
            let cell = parse_points(rest, line)?;
            if let Some(&p) = cell.iter().find(|&&p| p >= params.v) {
                return Err(ParseError::new(line, format!("point {p} out of range for v={}", params.v)));
            }
            groups.push(cell);
            continue;
        }
        let pts = parse_points(raw, line)?;
        let arity_ok = if directed { pts.len() == params.k as usize } else { (2..=params.k as usize).contains(&pts.len()) };
        if !arity_ok {
            return Err(ParseError::new(line, format!("wrong arity: {} points, k={}", pts.len(), params.k)));
        }
        if let Some(&p) = pts.iter().find(|&&p| p >= params.v) {
            return Err(ParseError::new(line, format!("point {p} out of range for v={}", params.v)));
        }
        let block = OrderedBlock::new(&pts).map_err(|e| ParseError::new(line, e.to_string()))?;
        blocks.push(block);
    }

    let (h, header_line) = header.ok_or_else(|| ParseError::new(last_line.max(1), "bad header: missing"))?;
    match h {
        Header::Dd(params) => {
            let d = DirectedDesign::new(params, blocks).map_err(|e| ParseError::new(header_line, e.to_string()))?;
            Ok(DesignObject::Plain(d))
        }
        Header::Dgdd(params, directed) => {
            let d = DirectedDesign::new(params, blocks).map_err(|e| ParseError::new(header_line, e.to_string()))?;
            let g = GroupedDesign::new(d, groups, directed).map_err(|e| ParseError::new(header_line, e.to_string()))?;
            Ok(DesignObject::Grouped(g))
        }
    }
}

fn push_points(out: &mut String, pts: &[Point]) {
    for (i, p) in pts.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&p.to_string());
    }
    out.push('\n');
}

fn header_line(obj: &DesignObject) -> String {
    let p = obj.design().params;
    match obj {
        DesignObject::Plain(_) => format!("#DD v={} k={} lambda={}\n", p.v, p.k, p.lambda),
        DesignObject::Grouped(g) => {
            format!("#DGDD v={} k={} lambda={} directed={}\n", p.v, p.k, p.lambda, g.directed as u8)
        }
    }
}

/// Serializes a design: header, canonical groups, then blocks sorted
/// lexicographically.
pub fn write_design_file(obj: &DesignObject) -> String {
    write_design_with_certificate(obj, None)
}

/// Like [`write_design_file`], appending `%CERT` lines whose block indices are
/// remapped to the sorted block order of the output.
pub fn write_design_with_certificate(obj: &DesignObject, cert: Option<&BoundCertificate>) -> String {
    let mut out = header_line(obj);
    if let DesignObject::Grouped(g) = obj {
        for cell in g.canonical_groups() {
            out.push_str("G: ");
            push_points(&mut out, &cell);
        }
    }
    let design = obj.design();
    let order = design.sorted_order();
    for &i in &order {
        push_points(&mut out, design.blocks[i].points());
    }
    if let Some(cert) = cert {
        let mut new_index = vec![0usize; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let remapped = cert.remap(|i| new_index.get(i).copied().unwrap_or(i));
        out.push_str(&remapped.to_comment_lines());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only_parses_empty_design() {
        let obj = parse_design_file("#DD v=13 k=4 lambda=2\n").unwrap();
        assert_eq!(obj.design().block_count(), 0);
        assert_eq!(write_design_file(&obj), "#DD v=13 k=4 lambda=2\n");
    }

    #[test]
    fn rejects_repeated_point() {
        let err = parse_design_file("#DD v=13 k=4 lambda=2\n% x\n0 1 1 5\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.reason.contains("repeated"), "{err}");
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("", "missing"),
            ("#DX v=1 k=4 lambda=2\n", "bad header"),
            ("#DD v=13 k=4 lambda=2\n0 1 2\n", "arity"),
            ("#DD v=13 k=4 lambda=2\n0 1 2 13\n", "out of range"),
            ("#DD v=13 k=4 lambda=2\n0 01 2 3\n", "bad number"),
            ("#DD v=13 k=4 lambda=2\n0  1 2 3\n", "bad number"),
            ("#DD v=13 k=4 lambda=2\r\n", "CR"),
            ("#DD v=13 k=4 lambda=2\n#DD v=13 k=4 lambda=2\n", "more than one"),
            ("#DGDD v=4 k=4 lambda=1 directed=0\nG: 0 1\nG: 1 2 3\n", "partition"),
            ("#DGDD v=4 k=2 lambda=1 directed=0\nG: 0 1\n0 2\nG: 2 3\n", "after block"),
            ("#DD v=4 k=4 lambda=2\nG: 0 1 2 3\n", "#DD"),
        ];
        for (text, needle) in cases {
            let err = parse_design_file(text).unwrap_err();
            assert!(err.to_string().contains(needle), "{text:?}: {err}");
        }
    }

    #[test]
    fn grouped_round_trip() {
        let text = "#DGDD v=6 k=3 lambda=1 directed=0\nG: 4 5\nG: 0 1\nG: 2 3\n1 5 3\n0 2 4\n";
        let obj = parse_design_file(text).unwrap();
        let out = write_design_file(&obj);
        assert_eq!(out, "#DGDD v=6 k=3 lambda=1 directed=0\nG: 0 1\nG: 2 3\nG: 4 5\n0 2 4\n1 5 3\n");
        let again = parse_design_file(&out).unwrap();
        assert_eq!(again.design().block_multiset(), obj.design().block_multiset());
        assert_eq!(again.as_grouped().unwrap().canonical_groups(), obj.as_grouped().unwrap().canonical_groups());
    }

    #[test]
    fn undirected_files_accept_short_blocks() {
        let obj = parse_design_file("#DGDD v=5 k=3 lambda=1 directed=0\nG: 0\nG: 1\nG: 2\nG: 3\nG: 4\n0 1 2\n3 4\n").unwrap();
        assert_eq!(obj.design().blocks[1].len(), 2);
        assert!(parse_design_file("#DGDD v=5 k=3 lambda=1 directed=1\nG: 0 1 2 3 4\n3 4\n").is_err());
    }
}
