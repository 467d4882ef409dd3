use std::io::Write;
use std::path::PathBuf;

use idealis::arrangement::Model;
use idealis::containment::rational_model_curve;
use idealis::invariant::{interpolate_named, NamedCurve};

use crate::config::RunConfig;
use crate::error::{CliError, Result, EXIT_OK};
use crate::instance::{default_field, load, parse_model};
use crate::render::{choose_chart, render, summary, Chart, RenderRequest, Window};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Fixture name or JSON arrangement file over q or qsqrt:d.
    pub instance: String,
    /// Adds an invariant curve: gamma or delta.
    #[arg(long)]
    pub curve: Option<NamedCurve>,
    /// Output file; the SVG goes to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Affine window "xmin,xmax,ymin,ymax" with rational entries; fitted to the points by default.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// sqrt3 or rational.
    #[arg(long)]
    pub model: Option<String>,
    /// auto, z (the chart z=1) or generic (a line through no intersection point at infinity).
    #[arg(long, default_value = "auto")]
    pub chart: String,
    /// Grid cells across the picture for the curve contour.
    #[arg(long, default_value_t = 300)]
    pub resolution: u32,
}

pub fn run(cfg: &RunConfig, args: &Args, out: &mut dyn Write) -> Result<u8> {
    let model = parse_model(args.model.as_deref())?;
    let field = cfg.field.unwrap_or_else(|| default_field(&args.instance, model));
    if !field.is_real() {
        return Err(CliError::NonReal(field));
    }
    let inst = load(&args.instance, model, Some(field))?;
    let window = args.window.as_deref().map(Window::parse).transpose()?;
    if args.resolution == 0 || args.resolution > 4000 {
        return Err(CliError::Usage("--resolution must lie in 1..=4000".into()));
    }
    let curve = match (args.curve, model) {
        (None, _) => None,
        (Some(name), Model::Sqrt3) => Some(interpolate_named(name, field)?.curve.polynomial),
        (Some(name), Model::RationalTable1) => Some(rational_model_curve(name, field)?),
    };
    let chart = match args.chart.as_str() {
        "auto" => choose_chart(&inst.arrangement)?,
        "z" => Chart::Standard,
        "generic" => match choose_chart(&inst.arrangement)? {
            Chart::Standard => Chart::Generic([1, 1, 1]),
            c => c,
        },
        other => return Err(CliError::Usage(format!("unknown chart `{other}` (auto, z, generic)"))),
    };
    let title = match args.curve {
        Some(c) => format!("{} with {c}", inst.name),
        None => inst.name.clone(),
    };
    let picture = render(&RenderRequest {
        title: &title,
        arrangement: &inst.arrangement,
        curve: curve.as_ref(),
        window,
        chart,
        resolution: args.resolution,
    })?;
    match &args.out {
        Some(path) => {
            std::fs::write(path, &picture.svg).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let shown = path.display().to_string();
            if cfg.json {
                cfg.emit_json(out, summary(&picture, Some(&shown)))?;
            } else {
                writeln!(
                    out,
                    "wrote {shown}: {} line strokes, {} vertices, {} contour cells",
                    picture.strokes, picture.vertices, picture.contour_cells
                )?;
            }
        }
        None => out.write_all(picture.svg.as_bytes())?,
    }
    Ok(EXIT_OK)
}
