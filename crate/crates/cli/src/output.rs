use crate::{InputArgs, InputFormat, EXIT_CONFIG, EXIT_INPUT, EXIT_OK};
use depcross::io::{parse_conllu, parse_edge_lists, ConlluOptions, ParseError, Sentence};
use std::io::{Read, Write};
use std::path::Path;

/// Run parameters echoed at the top of every output file.
pub struct Metadata {
    entries: Vec<(&'static str, String)>,
}

impl Metadata {
    pub fn new(command: &str) -> Metadata {
        Metadata {
            entries: vec![("tool", format!("depcross {}", env!("CARGO_PKG_VERSION"))), ("command", command.to_string())],
        }
    }

    pub fn with(mut self, key: &'static str, value: impl ToString) -> Metadata {
        self.entries.push((key, value.to_string()));
        self
    }

    pub fn write_comments(&self, sink: &mut Vec<u8>) {
        for (k, v) in &self.entries {
            writeln!(sink, "# {k}: {v}").expect("in-memory write");
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.entries.iter().map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone()))).collect(),
        )
    }
}

/// Writes the finished output to `--out` or standard output.
pub fn deliver(bytes: &[u8], out: Option<&Path>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match out {
        Some(path) => std::fs::write(path, bytes),
        None => stdout.write_all(bytes).and_then(|_| stdout.flush()),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let target = out.map_or("standard output".to_string(), |p| p.display().to_string());
            let _ = writeln!(stderr, "error: cannot write {target}: {e}");
            EXIT_INPUT
        }
    }
}

pub fn config_error(stderr: &mut dyn Write, message: impl std::fmt::Display) -> i32 {
    let _ = writeln!(stderr, "error: {message}");
    EXIT_CONFIG
}

fn is_conllu(path: &Path) -> bool {
    matches!(path.extension().and_then(|e| e.to_str()), Some("conllu" | "conll"))
}

/// Reads every sentence of every input, in order. Bad sentences are fatal
/// (exit 1) unless `skip_bad` is set, in which case they are reported and
/// dropped.
pub fn read_sentences(input: &InputArgs, stderr: &mut dyn Write) -> Result<Vec<Sentence>, i32> {
    let mut sources: Vec<(String, String, bool)> = Vec::new();
    if input.inputs.is_empty() {
        let mut text = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut text) {
            let _ = writeln!(stderr, "error: cannot read standard input: {e}");
            return Err(EXIT_INPUT);
        }
        sources.push(("<stdin>".into(), text, input.format == InputFormat::Conllu));
    }
    for path in &input.inputs {
        match std::fs::read_to_string(path) {
            Ok(text) => {
                let conllu = match input.format {
                    InputFormat::Auto => is_conllu(path),
                    InputFormat::Conllu => true,
                    InputFormat::Edgelist => false,
                };
                sources.push((path.display().to_string(), text, conllu));
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot read {}: {e}", path.display());
                return Err(EXIT_INPUT);
            }
        }
    }

    let mut sentences = Vec::new();
    let mut failed = false;
    for (name, text, conllu) in &sources {
        let parsed: Vec<Result<Sentence, ParseError>> = if *conllu {
            let options = ConlluOptions { drop_punct: input.drop_punct };
            parse_conllu(text.as_bytes(), name, options).map(|r| r.and_then(|r| r.into_sentence())).collect()
        } else {
            parse_edge_lists(text, name)
        };
        for item in parsed {
            match item {
                Ok(s) => sentences.push(s),
                Err(e) => {
                    let level = if input.skip_bad { "skipped" } else { "error" };
                    let _ = writeln!(stderr, "{level}: {e}");
                    failed = true;
                }
            }
        }
    }
    if failed && !input.skip_bad {
        return Err(EXIT_INPUT);
    }
    Ok(sentences)
}
