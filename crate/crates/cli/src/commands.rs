use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use serde_json::{json, Value};
use tridice_core::dice::{build_cycle_event, build_qk};
use tridice_core::polytope::format::{parse_polytope, write_polytope};
use tridice_core::tournaments::{
    assemble_four_dice, cycle_probabilities, cycle_probability, four_cycle_report, probability_report,
    three_dice_report, ProbabilityReport, Rendered, DECIMAL_DIGITS,
};
use tridice_core::{estimate, Rational, SamplerConfig, SigmaWord};

/// What a command produced: text lines for humans, plus the pieces of the
/// JSON report.
pub struct Output {
    pub lines: Vec<String>,
    pub inputs: Value,
    pub results: Value,
}

fn exact_and_decimal(r: &Rational) -> String {
    format!("{r} = {}", r.to_decimal(DECIMAL_DIGITS))
}

fn rendered(r: &Rational) -> Value {
    serde_json::to_value(Rendered::of(r)).expect("rendered value serializes")
}

fn report_lines(report: &ProbabilityReport) -> Vec<String> {
    report.entries().iter().map(|(name, p)| format!("{name:<13} {}", exact_and_decimal(p))).collect()
}

pub fn volume(path: &Path) -> anyhow::Result<Output> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let p = parse_polytope(&text).with_context(|| format!("parsing {}", path.display()))?;
    let dim = p.dimension();
    let vol = p.volume()?;
    Ok(Output {
        lines: vec![format!("dim {dim}, volume {vol}")],
        inputs: json!({ "path": path.display().to_string() }),
        results: json!({ "ambient_dim": p.ambient_dim(), "dim": dim, "volume": rendered(&vol) }),
    })
}

pub fn three_dice() -> anyhow::Result<Output> {
    let q3 = build_qk(3)?.volume()?;
    let rep = three_dice_report()?;
    let lines = vec![
        format!("vol(Q3) = {q3}"),
        format!("P(E123) = {}", exact_and_decimal(&rep.p_e123)),
        format!("P(E132) = {}", exact_and_decimal(&rep.p_e132)),
        format!("P(A>B>C>A) = P(E) = {}", exact_and_decimal(&rep.p_e)),
        format!("P(intransitive) = {}", exact_and_decimal(&rep.p_triangle)),
        format!("P(transitive) = {}", exact_and_decimal(&rep.p_3line)),
    ];
    Ok(Output {
        lines,
        inputs: json!({}),
        results: json!({
            "vol_q3": rendered(&q3),
            "p_e123": rendered(&rep.p_e123),
            "p_e132": rendered(&rep.p_e132),
            "p_e": rendered(&rep.p_e),
            "p_triangle": rendered(&rep.p_triangle),
            "p_3line": rendered(&rep.p_3line),
        }),
    })
}

fn event_label(sigma: &SigmaWord) -> String {
    let letters: Vec<String> = sigma.letters().iter().map(u8::to_string).collect();
    let name = if sigma.len() == 3 { "E" } else { "G" };
    format!("{name}({})", letters.join(","))
}

/// Probabilities of all 36 non-degenerate words, checked equal within each
/// cyclic class. Returns the representatives' values.
fn full_four_cycles(lines: &mut Vec<String>) -> anyhow::Result<(Vec<(SigmaWord, Rational)>, Value)> {
    let words: Vec<SigmaWord> = SigmaWord::all(4).into_iter().filter(|s| s.distinct_letters() == 3).collect();
    let probs = cycle_probabilities(&words)?;
    let mut classes: BTreeMap<SigmaWord, Vec<(SigmaWord, Rational)>> = BTreeMap::new();
    for (w, p) in words.into_iter().zip(probs) {
        classes.entry(w.cyclic_representative()).or_default().push((w, p));
    }
    let mut reps = Vec::new();
    let mut all = serde_json::Map::new();
    for (rep, members) in classes {
        let first = members[0].1.clone();
        for (w, p) in &members {
            lines.push(format!("{:<14}{p}", event_label(w)));
            all.insert(w.to_string(), rendered(p));
            if *p != first {
                bail!("cyclic class of {rep}: P(G_{w}) = {p} differs from {first}");
            }
        }
        reps.push((rep, first));
    }
    if reps.len() != 9 {
        bail!("expected 9 cyclic classes, found {}", reps.len());
    }
    lines.push(format!("cyclic classes: {}, all rotations equal", reps.len()));
    Ok((reps, Value::Object(all)))
}

pub fn four_dice(full: bool) -> anyhow::Result<Output> {
    let mut lines = vec![format!("{:<14}{}", "Event", "Probability")];
    let (reps, p_g, all_words) = if full {
        let (reps, all) = full_four_cycles(&mut lines)?;
        let p_g = Rational::from(4) * reps.iter().map(|(_, p)| p).sum::<Rational>();
        (reps, p_g, Some(all))
    } else {
        let four = four_cycle_report()?;
        for (w, p) in &four.representatives {
            lines.push(format!("{:<14}{p}", event_label(w)));
        }
        (four.representatives, four.p_g, None)
    };
    let three = three_dice_report()?;
    let report = assemble_four_dice(&p_g, &three.p_3line, &three.p_triangle)?;
    lines.push(format!("P(A>B>C>D>A) = P(G) = {}", exact_and_decimal(&p_g)));
    lines.extend(report_lines(&report));

    let mut results = json!({
        "representatives": reps.iter().map(|(w, p)| (w.to_string(), rendered(p))).collect::<serde_json::Map<_, _>>(),
        "p_g": rendered(&p_g),
        "report": report,
    });
    if let Some(all) = all_words {
        results["all_words"] = all;
    }
    Ok(Output { lines, inputs: json!({ "full": full }), results })
}

pub fn sigma(word: &str, dump: Option<&Path>) -> anyhow::Result<Output> {
    let sigma: SigmaWord = word.parse()?;
    if !(3..=4).contains(&sigma.len()) {
        bail!("word {word:?} must have 3 or 4 letters");
    }
    let p = build_cycle_event(&sigma);
    let full_dim = 2 * sigma.len() as i64;
    let dim = p.dimension();
    let prob = cycle_probability(&sigma)?;
    let label = event_label(&sigma);
    let mut lines = vec![format!("{label}: dim {dim} of {full_dim}, probability {}", exact_and_decimal(&prob))];
    if let Some(path) = dump {
        let header = format!("{label}: {} inequalities", p.halfspaces().len());
        fs::write(path, write_polytope(&p, &[&header])).with_context(|| format!("writing {}", path.display()))?;
        lines.push(format!("wrote {}", path.display()));
    }
    Ok(Output {
        lines,
        inputs: json!({ "word": sigma.to_string(), "dump": dump.map(|d| d.display().to_string()) }),
        results: json!({
            "event": label,
            "dim": dim,
            "full_dim": full_dim,
            "inequalities": p.halfspaces().len(),
            "probability": rendered(&prob),
        }),
    })
}

pub fn simulate(dice: usize, trials: u64, seed: u64, workers: usize) -> anyhow::Result<Output> {
    let config = SamplerConfig::new(seed, trials, dice)?.with_workers(workers)?;
    let exact = probability_report()?;
    let report = estimate(&config, &exact)?;
    let mut lines = vec![
        format!("{dice} dice, {trials} trials, seed {seed}, {workers} workers"),
        format!("{:<20}{:>10}  {:>12}  {:>12}  {:>7}", "class", "count", "frequency", "exact", "z"),
    ];
    for c in &report.classes {
        let z = c.z_score.map_or_else(|| "-".to_string(), |z| format!("{z:.2}"));
        lines.push(format!("{:<20}{:>10}  {:>12.8}  {:>12.8}  {:>7}", c.class, c.count, c.frequency, c.exact_decimal, z));
    }
    lines.push(format!("ties {}", report.ties));
    lines.push(format!("max |z| {:.2}", report.max_abs_z()));
    Ok(Output {
        lines,
        inputs: json!({ "dice": dice, "trials": trials, "seed": seed, "workers": workers }),
        results: serde_json::to_value(&report)?,
    })
}
