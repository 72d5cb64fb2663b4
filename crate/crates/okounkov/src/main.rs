//! Command line front end: validation, section spaces, Okounkov bodies,
//! global bodies, downgrades, degeneration chains and decomposition checks.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use okounkov::body::{class_group, global_okounkov, okounkov_body};
use okounkov::degen::{newton_okounkov, value_semigroup, wps_degeneration_chain};
use okounkov::error::Error;
use okounkov::fansy::downgrade_divisor;
use okounkov::linalg::to_qvec;
use okounkov::model::{
    export_csv, export_off, model_document, parse_downgrade_str, parse_model_str,
    polytope_document, ParsedModel, PolytopeDocument,
};
use okounkov::rat::format_rat;
use okounkov::support::{hstar, section_dimension_at, total_sections};

#[derive(Parser)]
#[command(name = "okounkov", version, about = "Okounkov bodies of complexity-one T-varieties over P1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Off,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a model file (fansy conditions, support function, flags)
    Validate {
        #[arg(long)]
        model: PathBuf,
    },
    /// Weight box, per-weight section dimensions and the total
    Sections {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Okounkov body of the model's divisor for a named flag
    Okounkov {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        flag: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// pad 2-dimensional bodies with a zero coordinate for OFF export
        #[arg(long, default_value_t = false)]
        embed: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The global Okounkov body and the class group rank
    GlobalOkounkov {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        flag: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Downgrade a complete toric fan along a corank-one splitting
    Downgrade {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Level sets of the value semigroup and the Newton-Okounkov body
    NewtonOkounkov {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        flag: String,
        #[arg(long, default_value_t = 3)]
        mmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degenerate a 2D lattice polytope to a weighted projective plane
    DegenerateWps {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an alpha-admissible one-parameter decomposition
    CheckDecomposition {
        #[arg(long)]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::FAILURE
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => fs::write(p, text).map_err(|e| Error::Schema(format!("{}: {e}", p.display()))),
    }
}

fn load(path: &PathBuf) -> Result<ParsedModel, Error> {
    parse_model_str(&read(path)?)
}

fn need_flag<'a>(m: &'a ParsedModel, name: &str) -> Result<&'a okounkov::flag::Flag, Error> {
    m.flags
        .get(name)
        .ok_or_else(|| Error::Schema(format!("no flag named {name:?} in the model file")))
}

fn need_support(m: &ParsedModel) -> Result<&okounkov::support::SupportFn, Error> {
    m.support
        .as_ref()
        .ok_or_else(|| Error::Schema("model file carries no support_function".into()))
}

fn polytope_output(
    doc: &PolytopeDocument,
    p: &okounkov::poly::Polyhedron,
    format: Format,
    embed: bool,
) -> Result<String, Error> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(doc).map_err(|e| Error::Schema(e.to_string()))? + "\n",
        Format::Off => export_off(p, embed)?,
        Format::Csv => export_csv(p),
    })
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Validate { model } => {
            let parsed = load(&model)?;
            let viol = parsed.model.validate();
            if !viol.is_empty() {
                return Err(Error::Validation(viol.join("; ")));
            }
            if let Some(h) = &parsed.support {
                let v = h.validate();
                if !v.is_empty() {
                    return Err(Error::Validation(v.join("; ")));
                }
            }
            println!("OK");
            Ok(())
        }
        Command::Sections { model, format, out } => {
            let parsed = load(&model)?;
            let h = need_support(&parsed)?;
            let hs = hstar(h)?;
            let total = total_sections(h)?;
            match format {
                Format::Csv => {
                    let mut text = String::new();
                    for u in hs.bx.lattice_points()? {
                        let d = section_dimension_at(&hs, &to_qvec(&u));
                        let coords: Vec<String> = u.iter().map(|x| x.to_string()).collect();
                        text.push_str(&format!("{},{}\n", coords.join(","), d));
                    }
                    text.push_str(&format!("total,{total}\n"));
                    emit(&out, &text)
                }
                _ => {
                    let mut weights = Vec::new();
                    for u in hs.bx.lattice_points()? {
                        let d = section_dimension_at(&hs, &to_qvec(&u));
                        let coords: Vec<i64> = u
                            .iter()
                            .map(|x| {
                                use num::ToPrimitive;
                                x.to_i64().unwrap_or_default()
                            })
                            .collect();
                        weights.push(serde_json::json!({"u": coords, "dim": d.to_string()}));
                    }
                    let doc = serde_json::json!({
                        "box": polytope_document(&hs.bx, false)?,
                        "weights": weights,
                        "total": total.to_string(),
                    });
                    emit(
                        &out,
                        &(serde_json::to_string_pretty(&doc)
                            .map_err(|e| Error::Schema(e.to_string()))?
                            + "\n"),
                    )
                }
            }
        }
        Command::Okounkov { model, flag, format, embed, out } => {
            let parsed = load(&model)?;
            let h = need_support(&parsed)?;
            let f = need_flag(&parsed, &flag)?;
            let body = okounkov_body(h, f)?;
            let doc = polytope_document(&body.polytope, true)?;
            let text = polytope_output(&doc, &body.polytope, format, embed)?;
            emit(&out, &text)
        }
        Command::GlobalOkounkov { model, flag, out } => {
            let parsed = load(&model)?;
            let f = need_flag(&parsed, &flag)?;
            let g = global_okounkov(&parsed.model, f)?;
            let doc = serde_json::json!({
                "class_rank": g.class_group.rank(),
                "flag_dimension": g.flag_dim,
                "cone": polytope_document(&g.cone, false)?,
                "keys": g.class_group.keys.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            });
            emit(
                &out,
                &(serde_json::to_string_pretty(&doc).map_err(|e| Error::Schema(e.to_string()))?
                    + "\n"),
            )
        }
        Command::Downgrade { fan, out } => {
            let (fan, split, divisor) = parse_downgrade_str(&read(&fan)?)?;
            let dg = okounkov::fansy::downgrade(&fan, &split)?;
            let weil = divisor.map(|coeffs| downgrade_divisor(&dg, &fan, &coeffs));
            let doc = model_document(&dg.fansy, weil.as_ref())?;
            emit(
                &out,
                &(serde_json::to_string_pretty(&doc).map_err(|e| Error::Schema(e.to_string()))?
                    + "\n"),
            )
        }
        Command::NewtonOkounkov { model, flag, mmax, out } => {
            let parsed = load(&model)?;
            let h = need_support(&parsed)?;
            let f = need_flag(&parsed, &flag)?;
            let v = value_semigroup(h, f, mmax)?;
            let nb = newton_okounkov(&v)?;
            let levels: BTreeMap<String, Vec<Vec<String>>> = v
                .levels
                .iter()
                .map(|(m, set)| {
                    (
                        m.to_string(),
                        set.iter()
                            .map(|x| x.iter().map(|c| c.to_string()).collect())
                            .collect(),
                    )
                })
                .collect();
            let doc = serde_json::json!({
                "levels": levels,
                "newton_okounkov_body": polytope_document(&nb, true)?,
                "finitely_generated": true,
            });
            emit(
                &out,
                &(serde_json::to_string_pretty(&doc).map_err(|e| Error::Schema(e.to_string()))?
                    + "\n"),
            )
        }
        Command::DegenerateWps { polytope, out } => {
            let doc: PolytopeDocument = serde_json::from_str(&read(&polytope)?)
                .map_err(|e| Error::Schema(e.to_string()))?;
            let verts: Vec<Vec<okounkov::Rat>> = doc
                .vertices
                .iter()
                .map(|v| v.iter().map(|s| okounkov::rat::parse_rat(s)).collect())
                .collect::<Result<_, _>>()?;
            let rank = verts.first().map(|v| v.len()).unwrap_or(2);
            let p = okounkov::poly::Polyhedron::from_vertices(rank, &verts)?;
            let chain = wps_degeneration_chain(&p)?;
            let mut docs = Vec::new();
            for step in &chain {
                docs.push(polytope_document(step, true)?);
            }
            let last = chain.last().unwrap();
            let weights = okounkov::fan::triangle_weights(last)?;
            let doc = serde_json::json!({
                "chain": docs,
                "weights": weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            });
            emit(
                &out,
                &(serde_json::to_string_pretty(&doc).map_err(|e| Error::Schema(e.to_string()))?
                    + "\n"),
            )
        }
        Command::CheckDecomposition { input } => {
            let doc: DecompositionDocument = serde_json::from_str(&read(&input)?)
                .map_err(|e| Error::Schema(e.to_string()))?;
            let (dp, zero_point, dec) = doc.build()?;
            let viol = okounkov::degen::check_decomposition(&dp, &zero_point, &dec)?;
            if viol.is_empty() {
                println!("OK");
                Ok(())
            } else {
                Err(Error::Validation(viol.join("; ")))
            }
        }
    }
}

use serde::Deserialize;

#[derive(Deserialize)]
struct PlPieceDocument {
    vertices: Vec<Vec<String>>,
    #[serde(default)]
    rays: Vec<Vec<i64>>,
    slope: Vec<String>,
    constant: String,
}

#[derive(Deserialize)]
struct PlDocument {
    pieces: Vec<PlPieceDocument>,
}

#[derive(Deserialize)]
struct DecompositionDocument {
    box_vertices: Vec<Vec<String>>,
    /// the distinguished point of P1 carrying Psi_0
    zero_point: String,
    /// concave min-of-affine data for Psi_0
    psi0: Vec<(Vec<String>, String)>,
    alpha: String,
    psi0_0: PlDocument,
    psi0_1: PlDocument,
}

impl DecompositionDocument {
    fn build(
        &self,
    ) -> Result<
        (okounkov::degen::DivisorialPolytope, okounkov::fansy::CurvePoint, okounkov::degen::Decomposition),
        Error,
    > {
        use okounkov::rat::parse_rat;
        let verts: Vec<Vec<okounkov::Rat>> = self
            .box_vertices
            .iter()
            .map(|v| v.iter().map(|s| parse_rat(s)).collect())
            .collect::<Result<_, _>>()?;
        let rank = verts.first().map(|v| v.len()).unwrap_or(1);
        let bx = okounkov::poly::Polyhedron::from_vertices(rank, &verts)?;
        let zero_point = if self.zero_point == "inf" {
            okounkov::fansy::CurvePoint::Infinity
        } else {
            okounkov::fansy::CurvePoint::Finite(parse_rat(&self.zero_point)?)
        };
        let mut pieces = Vec::new();
        for (slope, constant) in &self.psi0 {
            pieces.push(okounkov::support::AffinePiece {
                slope: slope.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>()?,
                constant: parse_rat(constant)?,
            });
        }
        let mut psi = BTreeMap::new();
        psi.insert(zero_point.clone(), pieces);
        let dp = okounkov::degen::DivisorialPolytope { bx, psi };
        let build_pl = |pl: &PlDocument| -> Result<okounkov::degen::PiecewiseAffine, Error> {
            let mut pieces = Vec::new();
            for p in &pl.pieces {
                let verts: Vec<Vec<okounkov::Rat>> = p
                    .vertices
                    .iter()
                    .map(|v| v.iter().map(|s| parse_rat(s)).collect())
                    .collect::<Result<_, _>>()?;
                let rays: Vec<okounkov::linalg::IVec> = p
                    .rays
                    .iter()
                    .map(|r| r.iter().map(|&x| okounkov::Int::from(x)).collect())
                    .collect();
                let cell = okounkov::poly::Polyhedron::from_generators(rank, &verts, &rays)?;
                pieces.push((
                    cell,
                    okounkov::support::AffinePiece {
                        slope: p.slope.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>()?,
                        constant: parse_rat(&p.constant)?,
                    },
                ));
            }
            Ok(okounkov::degen::PiecewiseAffine { pieces })
        };
        let dec = okounkov::degen::Decomposition {
            psi0_0: build_pl(&self.psi0_0)?,
            psi0_1: build_pl(&self.psi0_1)?,
            alpha: parse_rat(&self.alpha)?,
        };
        Ok((dp, zero_point, dec))
    }
}

#[allow(dead_code)]
fn unused(_: &str) -> String {
    format_rat(&okounkov::Rat::from_integer(okounkov::Int::from(0)))
}
