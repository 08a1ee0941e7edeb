use std::path::PathBuf;
use std::str::FromStr;

use clap::Subcommand;
use cubecone::smallcancel::{check_small_cancellation, Presentation, TWitness};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::common::pass;
use crate::report::{Inputs, Outcome};
use crate::CliError;

#[derive(Subcommand)]
pub enum ScCmd {
    /// Decide C'(lambda) and T(t); exit 1 if either fails.
    Check {
        file: PathBuf,
        /// A rational such as 1/4.
        #[arg(long, default_value = "1/4")]
        lambda: String,
        #[arg(long, default_value_t = 4)]
        t: usize,
    },
}

pub fn parse_ratio(text: &str) -> Result<Ratio<i64>, CliError> {
    let r = Ratio::<i64>::from_str(text.trim()).map_err(|_| CliError(format!("`{text}` is not a rational number")))?;
    if *r.denom() == 0 {
        return Err(CliError(format!("`{text}` has a zero denominator")));
    }
    Ok(r)
}

pub fn run(cmd: ScCmd, inputs: &mut Inputs) -> Result<(&'static str, Outcome), CliError> {
    let ScCmd::Check { file, lambda, t } = cmd;
    let lam = parse_ratio(&lambda)?;
    let text = inputs.read(&file)?;
    let p = Presentation::parse(&text).map_err(|e| CliError(format!("{}: {e}", file.display())))?;
    let r = check_small_cancellation(&p, lam, t).map_err(|e| CliError(format!("{}: {e}", file.display())))?;
    let relators: Vec<Value> =
        r.relators.iter().map(|x| json!({ "label": x.label, "word": x.word, "length": x.length })).collect();
    let pieces: Vec<Value> = r
        .pieces
        .iter()
        .map(|x| {
            json!({
                "word": x.word,
                "length": x.length,
                "consolidated": x.consolidated,
                "witnesses": [x.witnesses.0, x.witnesses.1],
                "ratio": x.ratio.to_string(),
                "shortest": x.shortest,
            })
        })
        .collect();
    let cwit = r.cprime.witness.as_ref().map_or(Value::Null, |w| {
        json!({
            "piece": w.piece,
            "piece_length": w.piece_length,
            "relator": w.relator,
            "relator_length": w.relator_length,
            "other": w.other,
            "ratio": w.ratio.to_string(),
        })
    });
    let twit = match &r.t_condition.witness {
        None => Value::Null,
        Some(TWitness::Cycle(rs)) => json!({ "cycle": rs }),
        Some(TWitness::Letters { factor, letters }) => json!({ "factor": factor, "letters": letters }),
    };
    let ok = r.cprime.pass && r.t_condition.pass;
    let results = json!({
        "Cprime": pass(r.cprime.pass),
        "T": pass(r.t_condition.pass),
        "free_product": r.free_product,
        "relators": relators,
        "family_size": r.family_size,
        "max_piece": r.max_piece,
        "max_ratio": r.cprime.max_ratio.to_string(),
        "pieces": pieces,
        "cprime_witness": cwit,
        "t_witness": twit,
        "notes": r.notes,
        "method": "exact",
    });
    let out = Outcome::new(results).param("lambda", lam.to_string()).param("t", t).negative(!ok);
    Ok(("sc check", out))
}
