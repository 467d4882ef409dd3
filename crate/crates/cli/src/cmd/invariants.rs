use std::io::Write;

use idealis::arrangement::hexagonal_group;
use idealis::invariant::{interpolate_named, molien_dimension, singular_report, CurveReport, NamedCurve};
use idealis::text::format_scalar;
use idealis::Field;
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::error::{CliError, Result, EXIT_OK};

/// Prime for `--genus` when no scan prime is given: 3 is a square mod 1009
/// and the scan of P²(F_1009) takes a fraction of a second.
pub const DEFAULT_SCAN_PRIME: u64 = 1009;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Dimension of the degree-d invariants of the hexagonal group.
    #[arg(long, value_name = "D")]
    pub molien: Option<u32>,
    /// Interpolates an invariant curve: gamma (degree 12) or delta (degree 10).
    #[arg(long)]
    pub curve: Option<NamedCurve>,
    /// Lists the singular points of the curve mod P by a full scan of P²(F_P).
    #[arg(long, value_name = "P")]
    pub singular_scan: Option<u64>,
    /// Classifies the singular points and applies the genus formula.
    #[arg(long)]
    pub genus: bool,
}

fn curve_text(report: &CurveReport) -> Vec<String> {
    let basis = &report.basis;
    let mut lines = vec![
        format!(
            "{}: degree {} over {}, kernel dimension {}",
            report.name,
            report.curve.degree,
            basis.ring().field(),
            report.kernel_dim
        ),
        format!("generators (weights {:?}):", basis.weights),
    ];
    lines.extend(basis.generators.iter().enumerate().map(|(i, g)| format!("  f{} = {g}", i + 1)));
    // shown in the printed normalization when the table has an f1^d entry
    let lead = [basis.degree, 0, 0];
    let printed_lead = report.name.printed().iter().find(|(e, _, _)| *e == lead);
    let field = basis.ring().field();
    let scaled = printed_lead
        .and_then(|&(_, n, d)| field.from_ratio(n, d).ok())
        .and_then(|v| report.curve.rescaled(&lead, &v));
    lines.push(match scaled {
        Some(_) => format!("coefficients, scaled so that f1^{} has the printed value:", basis.degree),
        None => "coefficients:".to_string(),
    });
    let coefficients = scaled.unwrap_or_else(|| report.curve.coefficients.clone());
    for (i, c) in coefficients.iter().enumerate() {
        let label = basis.label(i);
        let flag = match report.printed.mismatches.iter().find(|(l, _, _)| *l == label) {
            Some((_, _, printed)) => format!("  (printed {})", format_scalar(printed)),
            None => String::new(),
        };
        lines.push(format!("  {label:<12} {}{flag}", format_scalar(c)));
    }
    lines.push(if report.printed.projective_match {
        format!("printed table: all {} coefficients match projectively", basis.len())
    } else {
        format!("printed table: {} coefficient(s) differ", report.printed.mismatches.len())
    });
    for c in &report.verification {
        lines.push(format!(
            "orbit of {} ({} points): order {} imposed, {} found{}",
            c.representative,
            c.orbit_size,
            c.imposed_order,
            c.min_order,
            if c.holds() { "" } else { "  FAILED" }
        ));
    }
    lines.push(format!("expanded: {}", report.curve.polynomial));
    lines
}

pub fn run(cfg: &RunConfig, args: &Args, out: &mut dyn Write) -> Result<u8> {
    if args.molien.is_none() && args.curve.is_none() {
        return Err(CliError::Usage("nothing to do: give --molien D and/or --curve gamma|delta".into()));
    }
    if (args.singular_scan.is_some() || args.genus) && args.curve.is_none() {
        return Err(CliError::Usage("--singular-scan and --genus need --curve".into()));
    }
    let field = cfg.field.unwrap_or(Field::Quadratic(3));
    let mut text = Vec::new();
    let mut report = Map::new();

    if let Some(d) = args.molien {
        let group = hexagonal_group(field)?;
        let dim = molien_dimension(&group, d)?;
        text.push(dim.to_string());
        report.insert("molien".into(), json!({ "degree": d, "dimension": dim, "group_order": group.order() }));
    }

    if let Some(name) = args.curve {
        let curve = interpolate_named(name, field)?;
        if args.genus || args.singular_scan.is_none() {
            text.extend(curve_text(&curve));
        }
        report.insert("curve".into(), curve.to_json());

        if args.singular_scan.is_some() || args.genus {
            let p = match (field, args.singular_scan) {
                (Field::Prime(q), Some(p)) if p != q => {
                    return Err(CliError::Usage(format!("the curve is over {field}; cannot scan mod {p}")));
                }
                (Field::Prime(q), _) => q,
                (_, p) => p.unwrap_or(DEFAULT_SCAN_PRIME),
            };
            let sing = singular_report(&curve.curve.polynomial, p)?;
            if args.singular_scan.is_some() {
                text.push(format!("singular points mod {p}: {}", sing.points.len()));
                text.extend(
                    sing.points
                        .iter()
                        .map(|(q, rank)| format!("  {q} hessian rank {rank}{}", if *rank == 2 { " (node)" } else { "" })),
                );
            }
            if args.genus {
                text.push(sing.to_string());
            }
            report.insert("singular".into(), sing.to_json());
        }
    }

    if cfg.json {
        cfg.emit_json(out, Value::Object(report))?;
    } else {
        for line in text {
            writeln!(out, "{line}")?;
        }
    }
    Ok(EXIT_OK)
}
