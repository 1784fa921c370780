//! Plain edge lists with 1-based labels:
//!
//! ```text
//! # comment
//! id=fig5-top
//! n=4
//! 1 2
//! 2 3
//! 3 4
//! order: 2 1 3 4
//! ```
//!
//! `id=` is optional and must precede `n=`. Without an `order:` line the
//! attested order is `1..n`. A file may hold several records; each `n=`
//! starts a new one.

use super::{ParseError, Provenance, Sentence};
use crate::arrangement::LinearArrangement;
use crate::tree::Tree;

struct Draft {
    id: Option<String>,
    n: usize,
    edges: Vec<(usize, usize)>,
    order: Option<Vec<usize>>,
    first_line: usize,
    last_line: usize,
}

/// Parses every record in `text`. A malformed line invalidates only the
/// record it belongs to.
pub fn parse_edge_lists(text: &str, source: &str) -> Vec<Result<Sentence, ParseError>> {
    let mut out = Vec::new();
    let mut draft: Option<Result<Draft, ParseError>> = None;
    let mut pending_id: Option<(String, usize)> = None;
    let malformed = |line: usize, reason: String| ParseError::MalformedRow { file: source.to_string(), line, reason };

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(id) = line.strip_prefix("id=") {
            if let Some(d) = draft.take() {
                out.push(d.and_then(|d| finish(d, source)));
            }
            pending_id = Some((id.trim().to_string(), lineno));
            continue;
        }
        if let Some(n) = line.strip_prefix("n=") {
            if let Some(d) = draft.take() {
                out.push(d.and_then(|d| finish(d, source)));
            }
            let (id, first_line) = match pending_id.take() {
                Some((id, l)) => (Some(id), l),
                None => (None, lineno),
            };
            draft = Some(match n.trim().parse::<usize>() {
                Ok(n) => Ok(Draft { id, n, edges: Vec::new(), order: None, first_line, last_line: lineno }),
                Err(_) => Err(malformed(lineno, format!("bad vertex count {:?}", n.trim()))),
            });
            continue;
        }
        let Some(current) = draft.as_mut() else {
            draft = Some(Err(malformed(lineno, "expected n=<int> before edges".into())));
            continue;
        };
        let Ok(d) = current else { continue };
        d.last_line = lineno;
        let parsed = if let Some(rest) = line.strip_prefix("order:") {
            parse_ints(rest).map(|o| d.order = Some(o))
        } else {
            parse_ints(line).and_then(|e| match e.as_slice() {
                &[u, v] => {
                    d.edges.push((u, v));
                    Ok(())
                }
                _ => Err(format!("expected an edge \"u v\", got {line:?}")),
            })
        };
        if let Err(reason) = parsed {
            *current = Err(malformed(lineno, reason));
        }
    }
    if let Some(d) = draft.take() {
        out.push(d.and_then(|d| finish(d, source)));
    }
    if let Some((_, lineno)) = pending_id {
        out.push(Err(malformed(lineno, "id= without a following n=<int>".into())));
    }
    out
}

/// Parses a text holding exactly one record.
pub fn parse_edge_list(text: &str) -> Result<Sentence, ParseError> {
    let mut all = parse_edge_lists(text, "<input>");
    match all.len() {
        1 => all.remove(0),
        k => Err(ParseError::MalformedRow {
            file: "<input>".into(),
            line: 1,
            reason: format!("expected one record, found {k}"),
        }),
    }
}

fn parse_ints(s: &str) -> Result<Vec<usize>, String> {
    s.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| format!("bad integer {t:?}"))).collect()
}

fn finish(d: Draft, source: &str) -> Result<Sentence, ParseError> {
    let id = d.id.unwrap_or_else(|| format!("{source}:{}", d.first_line));
    let tree = Tree::from_labels(d.n, &d.edges).map_err(|error| ParseError::Tree { sentence: id.clone(), error })?;
    let arrangement = match d.order {
        None => LinearArrangement::identity(d.n),
        Some(order) => {
            let zero_based: Option<Vec<usize>> = order.iter().map(|&v| v.checked_sub(1)).collect();
            zero_based
                .ok_or(crate::Error::NotBijective { n: d.n })
                .and_then(|o| {
                    if o.len() != d.n {
                        return Err(crate::Error::SizeMismatch { expected: d.n, found: o.len() });
                    }
                    LinearArrangement::from_order(&o)
                })
                .map_err(|error| ParseError::Tree { sentence: id.clone(), error })?
        }
    };
    let provenance = Provenance { source: source.to_string(), first_line: d.first_line, last_line: d.last_line };
    Ok(Sentence { id, tree, arrangement, provenance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::{Error, NotATreeReason};

    #[test]
    fn path_of_three() {
        let s = parse_edge_list("n=3\n1 2\n2 3\n").unwrap();
        assert_eq!(s.tree.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(s.tree.degrees(), vec![1, 2, 1]);
        assert_eq!(s.arrangement, LinearArrangement::identity(3));
        assert_eq!(s.id, "<input>:1");
    }

    #[test]
    fn missing_edge() {
        let err = parse_edge_list("n=3\n1 2\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Tree { error: Error::NotATree(NotATreeReason::WrongEdgeCount { expected: 2, found: 1 }), .. }
        ));
    }

    #[test]
    fn order_and_several_records() {
        let text = "# two records\nid=a\nn=3\n1 2\n2 3\norder: 2 3 1\n\nid=b\nn=2\n1 2 # trailing\n";
        let all = parse_edge_lists(text, "f.txt");
        assert_eq!(all.len(), 2);
        let a = all[0].as_ref().unwrap();
        assert_eq!(a.id, "a");
        assert_eq!(a.arrangement.order(), vec![1, 2, 0]);
        assert_eq!(a.provenance.first_line, 2);
        assert_eq!(a.provenance.last_line, 6);
        assert_eq!(all[1].as_ref().unwrap().id, "b");
    }

    #[test]
    fn bad_lines_spoil_one_record() {
        let text = "n=3\n1 x\n2 3\nn=2\n1 2\n";
        let all = parse_edge_lists(text, "f");
        assert!(matches!(all[0], Err(ParseError::MalformedRow { line: 2, .. })));
        assert!(all[1].is_ok());
        assert!(parse_edge_list("n=3\n1 2\n2 3\norder: 1 2\n").is_err());
        assert!(parse_edge_list("n=3\n1 2\n2 3\norder: 1 1 2\n").is_err());
        assert!(parse_edge_list("1 2\n").is_err());
    }
}
