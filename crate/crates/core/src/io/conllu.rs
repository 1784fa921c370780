use super::{ParseError, Provenance, Sentence};
use crate::arrangement::LinearArrangement;
use crate::tree::Tree;
use std::io::BufRead;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConlluOptions {
    /// Remove tokens whose relation is `punct`. Their dependents, if any,
    /// are attached to the removed token's head.
    pub drop_punct: bool,
}

/// One sentence as read: surface forms in order and 1-based heads (0 marks
/// the root).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceRecord {
    pub id: String,
    pub tokens: Vec<String>,
    pub heads: Vec<usize>,
    pub deprels: Vec<String>,
    pub provenance: Provenance,
}

impl SentenceRecord {
    /// The word-level tree; the attachment to the root is not an edge.
    pub fn tree(&self) -> Result<Tree, ParseError> {
        let labels: Vec<(usize, usize)> = self
            .heads
            .iter()
            .enumerate()
            .filter(|&(_, &h)| h != 0)
            .map(|(i, &h)| (i + 1, h))
            .collect();
        Tree::from_labels(self.tokens.len(), &labels)
            .map_err(|error| ParseError::Tree { sentence: self.id.clone(), error })
    }

    pub fn into_sentence(self) -> Result<Sentence, ParseError> {
        let tree = self.tree()?;
        let arrangement = LinearArrangement::identity(tree.n());
        Ok(Sentence { id: self.id, tree, arrangement, provenance: self.provenance })
    }

    fn validate(&self) -> Result<(), ParseError> {
        let sentence = || self.id.clone();
        match self.heads.iter().filter(|&&h| h == 0).count() {
            0 => return Err(ParseError::NoRoot { sentence: sentence() }),
            1 => {}
            _ => return Err(ParseError::MultipleRoots { sentence: sentence() }),
        }
        // 0 unvisited, 1 on the current walk, 2 known to reach the root
        let mut state = vec![0u8; self.heads.len() + 1];
        state[0] = 2;
        for start in 1..=self.heads.len() {
            let mut walk = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                walk.push(v);
                v = self.heads[v - 1];
            }
            if state[v] == 1 {
                return Err(ParseError::CycleInHeads { sentence: sentence() });
            }
            for w in walk {
                state[w] = 2;
            }
        }
        Ok(())
    }

    fn drop_punct(&mut self) {
        let n = self.tokens.len();
        let keep: Vec<bool> = self.deprels.iter().map(|r| r != "punct").collect();
        if keep.iter().all(|&k| k) {
            return;
        }
        let mut new_index = vec![0usize; n + 1];
        let mut next = 0;
        for i in 0..n {
            if keep[i] {
                next += 1;
                new_index[i + 1] = next;
            }
        }
        let resolve = |mut h: usize| {
            while h != 0 && !keep[h - 1] {
                h = self.heads[h - 1];
            }
            new_index[h]
        };
        let heads: Vec<usize> = (0..n).filter(|&i| keep[i]).map(|i| resolve(self.heads[i])).collect();
        let retain = |v: &Vec<String>| v.iter().zip(&keep).filter(|(_, &k)| k).map(|(s, _)| s.clone()).collect();
        self.tokens = retain(&self.tokens);
        self.deprels = retain(&self.deprels);
        self.heads = heads;
    }
}

/// Streams sentences from CoNLL-U text. Each item is a sentence or the one
/// error that made it unusable; reading continues with the next sentence.
pub fn parse_conllu<R: BufRead>(reader: R, source: &str, options: ConlluOptions) -> ConlluReader<R> {
    ConlluReader { reader, source: source.to_string(), options, line: 0, sentences: 0, done: false }
}

pub struct ConlluReader<R> {
    reader: R,
    source: String,
    options: ConlluOptions,
    line: usize,
    sentences: usize,
    done: bool,
}

impl<R: BufRead> ConlluReader<R> {
    fn read_line(&mut self) -> Result<Option<String>, ParseError> {
        let mut buf = String::new();
        if self.reader.read_line(&mut buf)? == 0 {
            return Ok(None);
        }
        self.line += 1;
        let trimmed = buf.trim_end_matches(['\n', '\r']).len();
        buf.truncate(trimmed);
        Ok(Some(buf))
    }

    fn next_block(&mut self) -> Result<Option<SentenceRecord>, ParseError> {
        let mut id = None;
        let mut first_line = 0;
        let mut tokens = Vec::new();
        let mut heads = Vec::new();
        let mut deprels = Vec::new();
        let mut bad: Option<ParseError> = None;
        loop {
            let line = self.read_line()?;
            let line = match line {
                None => {
                    self.done = true;
                    break;
                }
                Some(l) => l,
            };
            if line.trim().is_empty() {
                if first_line == 0 {
                    continue;
                }
                break;
            }
            if first_line == 0 {
                first_line = self.line;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(value) = comment.trim().strip_prefix("sent_id") {
                    if let Some(value) = value.trim_start().strip_prefix('=') {
                        id = Some(value.trim().to_string());
                    }
                }
                continue;
            }
            if bad.is_some() {
                continue;
            }
            match self.parse_row(&line, tokens.len() + 1) {
                Ok(None) => {}
                Ok(Some((form, head, deprel))) => {
                    tokens.push(form);
                    heads.push(head);
                    deprels.push(deprel);
                }
                Err(e) => bad = Some(e),
            }
        }
        if first_line == 0 {
            return Ok(None);
        }
        self.sentences += 1;
        if let Some(e) = bad {
            return Err(e);
        }
        let id = id.unwrap_or_else(|| format!("{}#{}", self.source, self.sentences));
        let provenance = Provenance { source: self.source.clone(), first_line, last_line: self.line };
        Ok(Some(SentenceRecord { id, tokens, heads, deprels, provenance }))
    }

    /// `Ok(None)` for multiword ranges and empty nodes.
    fn parse_row(&self, line: &str, expected_id: usize) -> Result<Option<(String, usize, String)>, ParseError> {
        let malformed = |reason: String| ParseError::MalformedRow { file: self.source.clone(), line: self.line, reason };
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(malformed(format!("expected 10 tab-separated columns, found {}", cols.len())));
        }
        if cols[0].contains('-') || cols[0].contains('.') {
            return Ok(None);
        }
        let id: usize = cols[0].parse().map_err(|_| malformed(format!("bad ID {:?}", cols[0])))?;
        if id != expected_id {
            return Err(malformed(format!("expected ID {expected_id}, found {id}")));
        }
        let head: usize = cols[6].parse().map_err(|_| malformed(format!("bad HEAD {:?}", cols[6])))?;
        if head == id {
            return Err(malformed(format!("token {id} is its own head")));
        }
        Ok(Some((cols[1].to_string(), head, cols[7].to_string())))
    }
}

impl<R: BufRead> Iterator for ConlluReader<R> {
    type Item = Result<SentenceRecord, ParseError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let record = match self.next_block() {
            Ok(Some(r)) => r,
            Ok(None) => return None,
            Err(e) => return Some(Err(e)),
        };
        if let Some(&h) = record.heads.iter().find(|&&h| h > record.tokens.len()) {
            return Some(Err(ParseError::MalformedRow {
                file: self.source.clone(),
                line: record.provenance.first_line,
                reason: format!("HEAD {h} out of range in sentence {}", record.id),
            }));
        }
        if let Err(e) = record.validate() {
            return Some(Err(e));
        }
        let mut record = record;
        if self.options.drop_punct {
            record.drop_punct();
            if record.tokens.is_empty() {
                return Some(Err(ParseError::NoRoot { sentence: record.id }));
            }
            // removing a punctuation root can leave several roots behind
            if let Err(e) = record.validate() {
                return Some(Err(e));
            }
        }
        Some(Ok(record))
    }
}
