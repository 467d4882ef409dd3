use std::io::Write;

use idealis::arrangement::Model;
use idealis::containment::{
    build_witness, check_containment, digest, witness_check, Certificate, ContainmentOptions, ContainmentVerdict,
    Strategy, WitnessName, WitnessVerdict,
};
use idealis::{Error, Field, Polynomial};
use serde_json::json;

use crate::config::RunConfig;
use crate::error::{CliError, Result, EXIT_NON_CONTAINMENT, EXIT_OK, EXIT_UNDECIDED};
use crate::instance::{default_field, load, load_mod_p, parse_model, Instance};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Fixture name or JSON arrangement file; the points are its intersection points.
    pub instance: String,
    /// Symbolic power I^(m).
    #[arg(long, default_value_t = 3)]
    pub m: u32,
    /// Ordinary power I^r.
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    /// intersection or interpolation; by default interpolation from 10 points on.
    #[arg(long)]
    pub strategy: Option<Strategy>,
    /// Works mod P after checking that P is good for the characteristic-zero model.
    #[arg(long, value_name = "P")]
    pub prime: Option<u64>,
    /// sqrt3 or rational. Witnesses default to the rational model.
    #[arg(long)]
    pub model: Option<String>,
    /// Tests only the named witness (A313: degree 33, B21: degree 31) instead of all of I^(m).
    #[arg(long)]
    pub witness_only: bool,
}

fn options(cfg: &RunConfig, args: &Args) -> ContainmentOptions {
    ContainmentOptions {
        strategy: args.strategy,
        config: cfg.groebner.clone(),
    }
}

fn inclusion(m: u32, r: u32, holds: bool) -> String {
    format!("I^({m}) {} I^{r}", if holds { "⊆" } else { "⊄" })
}

fn undecided(cfg: &RunConfig, out: &mut dyn Write, instance: &str, e: &Error) -> Result<u8> {
    let Error::ResourceLimit { resource, pairs, basis } = e else { unreachable!() };
    if cfg.json {
        let v = json!({
            "instance": instance,
            "undecided": { "resource": resource.to_string(), "pairs_processed": pairs, "basis_size": basis },
        });
        cfg.emit_json(out, v)?;
    } else {
        writeln!(out, "undecided: {e}")?;
    }
    Ok(EXIT_UNDECIDED)
}

fn verdict_text(inst: &Instance, v: &ContainmentVerdict) -> Vec<String> {
    let [i, ir, basis, im] = v.generator_counts;
    let mut lines = vec![
        format!(
            "{} over {}: {} points, m={} r={}, strategy {}",
            inst.name, v.field, v.points, v.m, v.r, v.strategy
        ),
        format!(
            "I: {i} generators; I^{r}: {ir} generators, basis {basis} elements; I^({m}): {im} generators of degrees {:?}",
            v.symbolic_degrees,
            r = v.r,
            m = v.m
        ),
        format!("verdict: {}: {}", inclusion(v.m, v.r, v.holds), v.label()),
    ];
    if let Certificate::NonzeroNormalForm {
        generator_index,
        generator,
        normal_form,
    } = &v.certificate
    {
        lines.push(format!(
            "certificate: generator #{generator_index} (degree {}) has a nonzero normal form ({} terms, digest {})",
            generator.degree().unwrap_or(0),
            normal_form.len(),
            digest(normal_form)
        ));
    }
    lines
}

fn full_check(cfg: &RunConfig, args: &Args, out: &mut dyn Write) -> Result<u8> {
    let model = parse_model(args.model.as_deref())?;
    let inst = match args.prime {
        Some(p) => load_mod_p(&args.instance, model, p, &[])?,
        None => load(&args.instance, model, cfg.field)?,
    };
    let points = inst.arrangement.intersection_points()?.points();
    let verdict = match check_containment(&points, args.m, args.r, &options(cfg, args)) {
        Err(e @ Error::ResourceLimit { .. }) => return undecided(cfg, out, &inst.name, &e),
        other => other?,
    };
    if cfg.json {
        cfg.emit_json(out, verdict.to_json(&inst.name))?;
    } else {
        for line in verdict_text(&inst, &verdict) {
            writeln!(out, "{line}")?;
        }
    }
    Ok(if verdict.holds { EXIT_OK } else { EXIT_NON_CONTAINMENT })
}

fn witness_text(inst: &Instance, w: &WitnessVerdict) -> Vec<String> {
    let mut lines = vec![
        format!(
            "witness for {} ({} model): degree {} over {} on {} points",
            inst.name,
            inst.model,
            w.degree,
            w.field,
            inst.arrangement.intersection_points().map_or(0, |p| p.len())
        ),
        format!(
            "(a) order >= {} at every point: {}",
            w.m,
            if w.symbolic.holds { "yes".to_string() } else { format!("no, fails at {} points", w.symbolic.failures.len()) }
        ),
    ];
    lines.push(match &w.ordinary {
        Ok(o) if o.member => format!("(b) normal form modulo I^{}: zero", w.r),
        Ok(o) => format!(
            "(b) normal form modulo I^{}: nonzero, {} terms, digest {}",
            w.r,
            o.normal_form.len(),
            digest(&o.normal_form)
        ),
        Err(e) => format!("(b) undecided: {e}"),
    });
    lines.push(if w.certifies_non_containment() {
        format!("verdict: {}: {}", inclusion(w.m, w.r, false), idealis::containment::epistemic_label(w.field, false))
    } else {
        "verdict: inconclusive (the witness does not certify non-containment)".to_string()
    });
    lines
}

fn witness_only(cfg: &RunConfig, args: &Args, out: &mut dyn Write) -> Result<u8> {
    let name: WitnessName = args.instance.parse()?;
    let model = match args.model.as_deref() {
        None => Model::RationalTable1,
        some => parse_model(some)?,
    };
    let (inst, f): (Instance, Polynomial) = match args.prime {
        Some(p) => {
            let zero_char = default_field(name.arrangement(), model);
            let f = build_witness(name, model, zero_char)?;
            let inst = load_mod_p(name.arrangement(), model, p, &[&f])?;
            (inst, f.specialize(p)?)
        }
        None => {
            let field = cfg.field.unwrap_or_else(|| default_field(name.arrangement(), model));
            (load(name.arrangement(), model, Some(field))?, build_witness(name, model, field)?)
        }
    };
    let points = inst.arrangement.intersection_points()?;
    let w = witness_check(&f, points, args.m, args.r, &options(cfg, args))?;
    if cfg.json {
        cfg.emit_json(out, w.to_json(&inst.name))?;
    } else {
        for line in witness_text(&inst, &w) {
            writeln!(out, "{line}")?;
        }
    }
    Ok(if w.certifies_non_containment() { EXIT_NON_CONTAINMENT } else { EXIT_UNDECIDED })
}

pub fn run(cfg: &RunConfig, args: &Args, out: &mut dyn Write) -> Result<u8> {
    if args.m == 0 || args.r == 0 {
        return Err(CliError::Usage("--m and --r must be positive".into()));
    }
    if let (Some(p), Some(f)) = (args.prime, cfg.field) {
        if f != Field::Prime(p) {
            return Err(CliError::Usage(format!("--prime {p} conflicts with --field {f}")));
        }
    }
    if args.witness_only {
        witness_only(cfg, args, out)
    } else {
        full_check(cfg, args, out)
    }
}
