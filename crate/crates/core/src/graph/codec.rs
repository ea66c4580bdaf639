//! `planar_code` binary codec and the plain-text `adjlist` format.
//!
//! planar_code: optional header `>>planar_code<<`, then per graph the vertex
//! count (one byte, or a zero byte followed by a little-endian `u16` when
//! n > 255), then for each vertex its 1-based neighbours in rotation order
//! terminated by a zero entry of the same width.

use thiserror::Error;

use super::{EmbeddedGraph, GraphError};

pub const PLANAR_CODE_HEADER: &[u8] = b">>planar_code<<";
const HEADER_PREFIX: &[u8] = b">>planar_code";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("byte {offset}: stream truncated")]
    Truncated { offset: usize },
    #[error("byte {offset}: vertex index {index} out of range 1..={n}")]
    VertexOutOfRange { offset: usize, index: usize, n: usize },
    #[error("byte {offset}: missing terminator for vertex {vertex}")]
    MissingTerminator { offset: usize, vertex: usize },
    #[error("byte {offset}: unsupported header {header:?}")]
    BadHeader { offset: usize, header: String },
    #[error("byte {offset}: graph with zero vertices")]
    ZeroVertices { offset: usize },
    #[error("graph {index} (starting at byte {offset}) is invalid: {source}")]
    InvalidGraph {
        index: usize,
        offset: usize,
        #[source]
        source: GraphError,
    },
    #[error("graph {index} has {n} vertices; planar_code supports at most 65535")]
    TooLarge { index: usize, n: usize },
    #[error("line {line}: {message}")]
    Text { line: usize, message: String },
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn byte(&mut self) -> Option<u8> {
        let b = *self.bytes.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    fn entry(&mut self, wide: bool) -> Option<usize> {
        if wide {
            let lo = self.byte()? as usize;
            let hi = self.byte()? as usize;
            Some(lo | (hi << 8))
        } else {
            self.byte().map(usize::from)
        }
    }
}

pub fn parse_planar_code(bytes: &[u8]) -> Result<Vec<EmbeddedGraph>, CodecError> {
    let mut r = Reader { bytes, pos: 0 };
    if bytes.starts_with(HEADER_PREFIX) {
        let rest = &bytes[HEADER_PREFIX.len()..];
        let close = rest
            .windows(2)
            .position(|w| w == b"<<")
            .ok_or(CodecError::Truncated { offset: bytes.len() })?;
        let tag = String::from_utf8_lossy(&rest[..close]).trim().to_string();
        if !(tag.is_empty() || tag == "le") {
            return Err(CodecError::BadHeader { offset: 0, header: tag });
        }
        r.pos = HEADER_PREFIX.len() + close + 2;
    }

    let mut graphs = Vec::new();
    while r.pos < bytes.len() {
        let start = r.pos;
        let mut n = r.byte().expect("checked above") as usize;
        let wide = n == 0;
        if wide {
            let at = r.pos;
            n = r.entry(true).ok_or(CodecError::Truncated { offset: at })?;
            if n == 0 {
                return Err(CodecError::ZeroVertices { offset: start });
            }
        }
        let mut rotation = Vec::with_capacity(n);
        for vertex in 0..n {
            let mut list = Vec::new();
            loop {
                let offset = r.pos;
                let x = r.entry(wide).ok_or(CodecError::MissingTerminator { offset, vertex })?;
                if x == 0 {
                    break;
                }
                if x > n {
                    return Err(CodecError::VertexOutOfRange { offset, index: x, n });
                }
                list.push(x - 1);
            }
            rotation.push(list);
        }
        let graph = EmbeddedGraph::from_rotation(rotation).map_err(|source| {
            CodecError::InvalidGraph { index: graphs.len(), offset: start, source }
        })?;
        graphs.push(graph);
    }
    Ok(graphs)
}

pub fn write_planar_code<'a, I>(graphs: I) -> Result<Vec<u8>, CodecError>
where
    I: IntoIterator<Item = &'a EmbeddedGraph>,
{
    let mut out = PLANAR_CODE_HEADER.to_vec();
    for (index, g) in graphs.into_iter().enumerate() {
        let n = g.n();
        if n > u16::MAX as usize {
            return Err(CodecError::TooLarge { index, n });
        }
        let wide = n > u8::MAX as usize;
        if wide {
            out.push(0);
        }
        let mut put = |x: usize| {
            if wide {
                out.extend_from_slice(&(x as u16).to_le_bytes());
            } else {
                out.push(x as u8);
            }
        };
        put(n);
        for v in 0..n {
            for &w in g.rotation(v) {
                put(w + 1);
            }
            put(0);
        }
    }
    Ok(out)
}

/// Parses whitespace-separated 1-based rotations, one vertex per line, with
/// blank lines between graphs. Lines starting with `#` are ignored.
pub fn parse_adjlist(text: &str) -> Result<Vec<EmbeddedGraph>, CodecError> {
    let mut graphs = Vec::new();
    let mut current: Vec<(usize, Vec<usize>)> = Vec::new();
    let flush = |block: &mut Vec<(usize, Vec<usize>)>, graphs: &mut Vec<EmbeddedGraph>| {
        if block.is_empty() {
            return Ok(());
        }
        let n = block.len();
        let first_line = block[0].0;
        let mut rotation = Vec::with_capacity(n);
        for (line, ids) in block.drain(..) {
            let mut list = Vec::with_capacity(ids.len());
            for id in ids {
                if id == 0 || id > n {
                    return Err(CodecError::Text {
                        line,
                        message: format!("vertex id {id} out of range 1..={n}"),
                    });
                }
                list.push(id - 1);
            }
            rotation.push(list);
        }
        let g = EmbeddedGraph::from_rotation(rotation).map_err(|e| CodecError::Text {
            line: first_line,
            message: e.to_string(),
        })?;
        graphs.push(g);
        Ok(())
    };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            flush(&mut current, &mut graphs)?;
            continue;
        }
        let ids = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| CodecError::Text {
                    line: i + 1,
                    message: format!("not a vertex id: {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        current.push((i + 1, ids));
    }
    flush(&mut current, &mut graphs)?;
    Ok(graphs)
}

pub fn write_adjlist<'a, I>(graphs: I) -> String
where
    I: IntoIterator<Item = &'a EmbeddedGraph>,
{
    let mut blocks = Vec::new();
    for g in graphs {
        let mut block = String::new();
        for v in 0..g.n() {
            let line: Vec<String> = g.rotation(v).iter().map(|w| (w + 1).to_string()).collect();
            block.push_str(&line.join(" "));
            block.push('\n');
        }
        blocks.push(block);
    }
    blocks.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::samples::{cycle, k4};
    use proptest::prelude::*;

    #[test]
    fn k4_roundtrip() {
        let g = k4();
        let bytes = write_planar_code([&g]).unwrap();
        let back = parse_planar_code(&bytes).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0], g);
        assert_eq!((back[0].n(), back[0].m(), back[0].face_count()), (4, 6, 4));
    }

    #[test]
    fn single_vertex_encoding() {
        let g = EmbeddedGraph::from_rotation(vec![vec![]]).unwrap();
        let bytes = write_planar_code([&g]).unwrap();
        let mut expected = PLANAR_CODE_HEADER.to_vec();
        expected.extend_from_slice(&[1, 0]);
        assert_eq!(bytes, expected);
    }

    #[test]
    fn header_only_is_empty() {
        assert!(parse_planar_code(PLANAR_CODE_HEADER).unwrap().is_empty());
        assert!(parse_planar_code(b"").unwrap().is_empty());
        assert!(parse_planar_code(b">>planar_code le<<").unwrap().is_empty());
    }

    #[test]
    fn headerless_input_is_accepted() {
        let bytes = [3u8, 2, 3, 0, 3, 1, 0, 1, 2, 0];
        let gs = parse_planar_code(&bytes).unwrap();
        assert_eq!(gs[0].n(), 3);
        assert_eq!(gs[0].face_count(), 2);
    }

    #[test]
    fn errors_carry_offsets() {
        let mut bytes = PLANAR_CODE_HEADER.to_vec();
        bytes.extend_from_slice(&[3, 2, 3, 0, 3]);
        assert_eq!(
            parse_planar_code(&bytes),
            Err(CodecError::MissingTerminator { offset: 20, vertex: 1 })
        );

        let mut bytes = PLANAR_CODE_HEADER.to_vec();
        bytes.extend_from_slice(&[2, 7, 0, 1, 0]);
        assert_eq!(
            parse_planar_code(&bytes),
            Err(CodecError::VertexOutOfRange { offset: 16, index: 7, n: 2 })
        );

        let mut bytes = PLANAR_CODE_HEADER.to_vec();
        bytes.extend_from_slice(&[0, 1]);
        assert_eq!(parse_planar_code(&bytes), Err(CodecError::Truncated { offset: 16 }));

        assert!(matches!(
            parse_planar_code(b">>planar_code be<<"),
            Err(CodecError::BadHeader { .. })
        ));
    }

    #[test]
    fn wide_mode_for_large_graphs() {
        let g = cycle(300);
        let bytes = write_planar_code([&g]).unwrap();
        let h = PLANAR_CODE_HEADER.len();
        assert_eq!(&bytes[h..h + 3], &[0, 44, 1]);
        assert_eq!(bytes.len(), h + 3 + 2 * (600 + 300));
        let back = parse_planar_code(&bytes).unwrap();
        assert_eq!(back[0], g);
        assert_eq!(write_planar_code(&back).unwrap(), bytes);
    }

    #[test]
    fn adjlist_roundtrip() {
        let graphs = vec![k4(), cycle(6)];
        let text = write_adjlist(&graphs);
        assert_eq!(parse_adjlist(&text).unwrap(), graphs);
    }

    #[test]
    fn adjlist_rejects_bad_ids() {
        assert!(matches!(parse_adjlist("2\n3\n"), Err(CodecError::Text { line: 2, .. })));
        assert!(matches!(parse_adjlist("2 x\n1\n"), Err(CodecError::Text { line: 1, .. })));
    }

    proptest! {
        #[test]
        fn cycles_and_concatenations_roundtrip(lens in proptest::collection::vec(3usize..400, 1..4)) {
            let graphs: Vec<_> = lens.iter().map(|&n| cycle(n)).collect();
            let bytes = write_planar_code(&graphs).unwrap();
            let back = parse_planar_code(&bytes).unwrap();
            prop_assert_eq!(&back, &graphs);
            prop_assert_eq!(write_planar_code(&back).unwrap(), bytes);
        }
    }
}
