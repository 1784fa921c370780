//! Reading dependency trees from CoNLL-U and edge-list files, and writing
//! per-sentence analysis tables.

mod conllu;
mod edgelist;
mod table;

pub use conllu::{parse_conllu, ConlluOptions, ConlluReader, SentenceRecord};
pub use edgelist::{parse_edge_list, parse_edge_lists};
pub use table::{format_decimal, read_csv, write_csv, TableRow, CSV_COLUMNS};

use crate::arrangement::LinearArrangement;
use crate::error::Error;
use crate::tree::Tree;

/// Where a sentence came from: file name and 1-based inclusive line span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub source: String,
    pub first_line: usize,
    pub last_line: usize,
}

/// A tree with its attested word order.
#[derive(Debug, Clone, PartialEq)]
pub struct Sentence {
    pub id: String,
    pub tree: Tree,
    pub arrangement: LinearArrangement,
    pub provenance: Provenance,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ParseError {
    #[error("{file}:{line}: malformed row: {reason}")]
    MalformedRow { file: String, line: usize, reason: String },
    #[error("sentence {sentence}: more than one token attached to the root")]
    MultipleRoots { sentence: String },
    #[error("sentence {sentence}: no token attached to the root")]
    NoRoot { sentence: String },
    #[error("sentence {sentence}: head assignments form a cycle")]
    CycleInHeads { sentence: String },
    #[error("sentence {sentence}: {error}")]
    Tree { sentence: String, error: Error },
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for ParseError {
    fn from(e: std::io::Error) -> Self {
        ParseError::Io(e.to_string())
    }
}
