use crate::output::{config_error, deliver, read_sentences, Metadata};
use crate::{AnalyzeArgs, Emit, EXIT_INPUT};
use depcross::ensembles::RNG_ALGORITHM;
use depcross::io::write_csv;
use depcross::statistics::min_significance;
use depcross::{analyze_sentence, AnalysisConfig, SentenceAnalysis};
use rayon::prelude::*;
use std::io::Write;

pub fn cmd_analyze(args: &AnalyzeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let config = AnalysisConfig {
        max_exhaustive_n: args.ensemble.max_exhaustive_n,
        samples: args.ensemble.samples,
        seed: args.ensemble.seed,
        alpha: args.alpha,
    };
    if let Err(e) = config.validate() {
        return config_error(stderr, e);
    }
    let sentences = match read_sentences(&args.input, stderr) {
        Ok(s) => s,
        Err(code) => return code,
    };

    let results: Vec<_> = sentences
        .par_iter()
        .map(|s| analyze_sentence(&s.id, &s.tree, &s.arrangement, &config))
        .collect();
    let mut rows: Vec<SentenceAnalysis> = Vec::with_capacity(results.len());
    let mut failed = false;
    for (s, result) in sentences.iter().zip(results) {
        match result {
            Ok(row) => rows.push(row),
            Err(e) => {
                let level = if args.input.skip_bad { "skipped" } else { "error" };
                let _ = writeln!(stderr, "{level}: sentence {}: {e}", s.id);
                failed = true;
            }
        }
    }
    if failed && !args.input.skip_bad {
        return EXIT_INPUT;
    }
    for row in rows.iter().filter(|r| r.r == 0) {
        let _ = writeln!(
            stderr,
            "warning: sentence {}: no sampled arrangement has D = {}; conditional columns left empty",
            row.sentence_id, row.d
        );
    }

    let mut meta = Metadata::new("analyze")
        .with("seed", config.seed)
        .with(
            "method",
            format!(
                "exhaustive for n <= {}, monte_carlo above ({} samples)",
                config.max_exhaustive_n, config.samples
            ),
        )
        .with("rng", RNG_ALGORITHM)
        .with("alpha", config.alpha);
    let r_values: Vec<u64> = rows.iter().map(|r| r.r).collect();
    if let Ok(check) = min_significance(&r_values, config.alpha) {
        meta = meta.with("r_min", check.r_min).with("alpha_admissible", check.admissible);
    }

    let mut buf = Vec::new();
    match args.emit {
        Emit::Csv => {
            meta.write_comments(&mut buf);
            write_csv(&rows, &mut buf).expect("in-memory write");
        }
        Emit::Json => {
            let doc = serde_json::json!({ "metadata": meta.to_json(), "sentences": rows });
            serde_json::to_writer_pretty(&mut buf, &doc).expect("in-memory write");
            buf.push(b'\n');
        }
    }
    deliver(&buf, args.out.as_deref(), stdout, stderr)
}
