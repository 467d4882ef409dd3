use std::io::Write;

use idealis::arrangement::{
    build_named, hexagonal_group, table2, verify_realization, Arrangement, CharPoly, Model, Orbit, TVector,
};
use idealis::Field;
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::error::{CliError, Result, EXIT_INTERNAL, EXIT_OK};
use crate::instance::{load, parse_model, Instance};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Fixture name (A313, A312, B21, initial10_A313, initial10_A312, dualHesse, triangle) or JSON file.
    pub instance: String,
    /// Coordinates for named arrangements: sqrt3 or rational.
    #[arg(long)]
    pub model: Option<String>,
    /// Counts t_k of points on exactly k lines.
    #[arg(long)]
    pub t_vector: bool,
    /// Every intersection point with its multiplicity.
    #[arg(long)]
    pub points: bool,
    /// Orbits of the points under the order-12 hexagonal group.
    #[arg(long)]
    pub orbits: bool,
    /// Characteristic polynomial and the freeness test.
    #[arg(long)]
    pub charpoly: bool,
    /// Checks the rational realization against the printed point table.
    #[arg(long)]
    pub verify_tables: bool,
    /// Prints the arrangement in the JSON file format.
    #[arg(long)]
    pub dump: bool,
}

pub fn t_vector_line(t: &TVector) -> String {
    let counts: Vec<String> = t.0.iter().filter(|(_, &c)| c > 0).map(|(k, c)| format!("t{k}={c}")).collect();
    format!("{}; {} points", counts.join(" "), t.points())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn charpoly_lines(chi: &CharPoly) -> String {
    let free = match chi.freeness() {
        "not free" => "no".to_string(),
        other => other.to_string(),
    };
    format!(
        "charpoly: {}\nquotient: {}; splits/Z: {}; free: {free}",
        chi.cubic_string(),
        chi.quotient_string(),
        yes_no(chi.splits_over_z())
    )
}

fn decomposition(orbits: &[Orbit]) -> String {
    let mut sizes = std::collections::BTreeMap::<usize, usize>::new();
    for o in orbits {
        *sizes.entry(o.points.len()).or_default() += 1;
    }
    sizes.iter().map(|(s, c)| format!("{c}x{s}")).collect::<Vec<_>>().join(" + ")
}

/// Table 2 lists the points of the rational 31-line model; the 21-line
/// sub-arrangement is checked by its t-vector only.
fn verify_tables(inst: &Instance) -> Result<(bool, String, Value)> {
    let expected = match inst.name.as_str() {
        "A313" => TVector::a31(),
        "B21" => TVector::b21(),
        other => return Err(CliError::Usage(format!("no printed table covers `{other}` (A313 or B21)"))),
    };
    let q = Field::Rational;
    let arr = build_named(&inst.name, Model::RationalTable1, q)?;
    if inst.name == "B21" {
        let t = arr.t_vector()?;
        let ok = t == expected;
        let text = format!("21 table lines; t-vector {}: {}", t_vector_line(&t), if ok { "matched" } else { "MISMATCH" });
        return Ok((ok, text, json!({ "consistent": ok, "t_vector": t })));
    }
    let report = verify_realization(&arr, &table2(q)?, &expected)?;
    let ok = report.is_consistent();
    let mut text = format!("{}/{} points matched", report.matched, report.computed_points);
    for p in &report.unlisted {
        text.push_str(&format!("\nunlisted: {p}"));
    }
    for p in &report.spurious {
        text.push_str(&format!("\nnot an intersection point: {p}"));
    }
    for (p, class, m) in &report.class_mismatches {
        text.push_str(&format!("\n{p}: listed with multiplicity {class}, computed {m}"));
    }
    let v = json!({
        "consistent": ok,
        "matched": report.matched,
        "computed_points": report.computed_points,
        "table_points": report.table_points,
        "unlisted": report.unlisted,
        "spurious": report.spurious,
        "class_mismatches": report.class_mismatches.iter().map(|(p, c, m)| json!([p, c, m])).collect::<Vec<_>>(),
    });
    Ok((ok, text, v))
}

fn summary(arr: &Arrangement) -> String {
    format!("{} lines over {}", arr.len(), arr.field())
}

pub fn run(cfg: &RunConfig, args: &Args, out: &mut dyn Write) -> Result<u8> {
    let model = parse_model(args.model.as_deref())?;
    let inst = load(&args.instance, model, cfg.field)?;
    let arr = &inst.arrangement;
    let nothing_asked = !(args.t_vector || args.points || args.orbits || args.charpoly || args.verify_tables || args.dump);

    let mut text: Vec<String> = Vec::new();
    let mut report = Map::new();
    report.insert("instance".into(), json!(inst.name));
    report.insert("field".into(), json!(arr.field().to_string()));
    report.insert("lines".into(), json!(arr.len()));
    let mut code = EXIT_OK;

    if nothing_asked {
        text.push(summary(arr));
    }
    if args.t_vector || nothing_asked {
        let t = arr.t_vector()?;
        text.push(t_vector_line(&t));
        report.insert("t_vector".into(), json!(t));
        report.insert("points".into(), json!(t.points()));
    }
    if args.points {
        let ps = arr.intersection_points()?;
        text.extend(ps.iter().map(|(p, m)| format!("{p} {m}")));
        report.insert("point_list".into(), ps.to_json());
    }
    if args.orbits {
        let group = hexagonal_group(arr.field())?;
        let orbits = group.orbits(arr.intersection_points()?)?;
        text.push(format!("group order {}; orbits: {}", group.order(), decomposition(&orbits)));
        text.extend(orbits.iter().map(|o| format!("{} x{} mult {}", o.representative, o.points.len(), o.multiplicity)));
        report.insert(
            "orbits".into(),
            json!({
                "group_order": group.order(),
                "decomposition": decomposition(&orbits),
                "orbits": orbits.iter().map(|o| json!({
                    "representative": o.representative,
                    "size": o.points.len(),
                    "multiplicity": o.multiplicity,
                })).collect::<Vec<_>>(),
            }),
        );
    }
    if args.charpoly {
        let chi = arr.char_poly()?;
        text.push(charpoly_lines(&chi));
        report.insert(
            "charpoly".into(),
            json!({
                "cubic": chi.cubic(),
                "quotient": chi.quotient(),
                "quotient_string": chi.quotient_string(),
                "splits_over_z": chi.splits_over_z(),
                "freeness": chi.freeness(),
            }),
        );
    }
    if args.verify_tables {
        let (ok, t, v) = verify_tables(&inst)?;
        text.push(t);
        report.insert("verify_tables".into(), v);
        if !ok {
            code = EXIT_INTERNAL;
        }
    }
    if args.dump {
        text.push(serde_json::to_string_pretty(&arr.to_json()).expect("serializable"));
        report.insert("arrangement".into(), arr.to_json());
    }

    if cfg.json {
        cfg.emit_json(out, Value::Object(report))?;
    } else {
        for line in text {
            writeln!(out, "{line}")?;
        }
    }
    Ok(code)
}
