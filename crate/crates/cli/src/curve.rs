use crate::output::{config_error, deliver, read_sentences, Metadata};
use crate::{CurveArgs, EXIT_INPUT};
use depcross::ensembles::{EnsembleMethod, MAX_EXHAUSTIVE_N, RNG_ALGORITHM};
use depcross::predictors::{e0_crossings_of, e0_length};
use depcross::{to_f64, PermutationEnsemble};
use std::io::Write;

pub fn cmd_curve(args: &CurveArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let e = &args.ensemble;
    if !(4..=MAX_EXHAUSTIVE_N).contains(&e.max_exhaustive_n) {
        return config_error(stderr, format!("max exhaustive n must lie in 4..={MAX_EXHAUSTIVE_N}"));
    }
    if e.samples == 0 {
        return config_error(stderr, "samples must be >= 1");
    }
    let sentences = match read_sentences(&args.input, stderr) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let chosen = match &args.sentence {
        Some(id) => sentences.iter().find(|s| &s.id == id),
        None => sentences.first(),
    };
    let Some(sentence) = chosen else {
        let what = args.sentence.as_deref().map_or("any sentence".to_string(), |id| format!("sentence {id}"));
        let _ = writeln!(stderr, "error: input has no {what}");
        return EXIT_INPUT;
    };
    let tree = &sentence.tree;
    let ensemble = if args.exact {
        PermutationEnsemble::exhaustive(tree, e.max_exhaustive_n)
    } else {
        PermutationEnsemble::build(tree, e.max_exhaustive_n, e.samples, e.seed)
    };
    let ensemble = match ensemble {
        Ok(ens) => ens,
        Err(err) => {
            let _ = writeln!(stderr, "error: sentence {}: {err}", sentence.id);
            return EXIT_INPUT;
        }
    };

    let method = match ensemble.method {
        EnsembleMethod::Exhaustive => "exhaustive".to_string(),
        EnsembleMethod::MonteCarlo { samples, .. } => format!("monte_carlo ({samples} samples)"),
    };
    let mut meta = Metadata::new("curve")
        .with("sentence", &sentence.id)
        .with("n", tree.n())
        .with("method", method)
        .with("E0_D", to_f64(e0_length(tree.n())))
        .with("E0_C", to_f64(e0_crossings_of(tree)));
    if !ensemble.is_exhaustive() {
        meta = meta.with("seed", e.seed).with("rng", RNG_ALGORITHM);
    }
    let mut buf = Vec::new();
    meta.write_comments(&mut buf);
    ensemble.write_curve_csv(&mut buf).expect("in-memory write");
    deliver(&buf, args.out.as_deref(), stdout, stderr)
}
