use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use topoline_core::arrangement::build_arrangement;
use topoline_core::faces::{direct_region_count, grid_flood_fill_oracle, oracle_min_resolution};
use topoline_core::format::{emit_arrangement_file, parse_arrangement_file, projective_json, reglue_steps_json};
use topoline_core::generate::generate_random_arrangement;
use topoline_core::geom::ClipBox;
use topoline_core::projective::{projectivize, tail_order, ProjectiveError};
use topoline_core::reglue::make_affine;
use topoline_core::semilattice::{parse_abstract, semilattice_of};
use topoline_core::svg::{render_svg, RenderOptions};
use topoline_core::{Arrangement, PairClass, Rat};

#[derive(Parser)]
#[command(
    name = "topoline",
    version,
    about = "Exact topoline arrangements and intersection semilattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file describes a valid arrangement.
    Validate { path: PathBuf },
    /// Count regions.
    Count {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Grid cells per unit length for the oracle; defaults to the
        /// smallest accepted value.
        #[arg(long)]
        resolution: Option<u64>,
    },
    /// Reglue into an affine arrangement with the same faces.
    Reglue {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Add a line at infinity, if parallelism allows it.
    Projectivize {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw an arrangement as SVG.
    Render {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Outline the inner and outer boxes used for projectivization.
        #[arg(long)]
        boxes: bool,
    },
    /// Write a random valid arrangement.
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        lines: usize,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Direct,
    Oracle,
    All,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail<T>(code: u8, message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure {
        code,
        message: message.into(),
    })
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).or_else(|e| fail(1, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).or_else(|e| fail(1, format!("{}: {e}", path.display())))
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => fail(1, format!("stdout: {e}")),
        _ => Ok(()),
    }
}

fn is_abstract(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "slat")
}

fn load(path: &Path) -> Result<Arrangement, Failure> {
    if is_abstract(path) {
        return fail(
            1,
            format!("{}: expected an arrangement file, not a semilattice", path.display()),
        );
    }
    let lines = parse_arrangement_file::<Rat>(&read(path)?).or_else(|e| fail(1, format!("{}: {e}", path.display())))?;
    build_arrangement(lines).or_else(|e| fail(2, format!("{}: invalid arrangement: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { path } => {
            let arr = load(&path)?;
            let count = |c: PairClass| arr.pair_table().values().filter(|v| **v == c).count();
            emit(&format!(
                "valid: {} lines, {} intersection points, {} crossing, {} touching, {} disjoint pairs\n",
                arr.lines().len(),
                arr.points().len(),
                count(PairClass::Crossing),
                count(PairClass::Touching),
                count(PairClass::Disjoint)
            ))
        }
        Command::Count {
            path,
            method,
            resolution,
        } => count(&path, method, resolution),
        Command::Reglue { path, out } => {
            let arr = load(&path)?;
            let (affine, steps) = make_affine(&arr).or_else(|e| fail(2, e.to_string()))?;
            write(&out, &emit_arrangement_file(affine.lines()))?;
            let audit = serde_json::json!({ "steps": reglue_steps_json(&steps) });
            emit(&(serde_json::to_string_pretty(&audit).expect("json") + "\n"))
        }
        Command::Projectivize { path, out } => {
            let arr = load(&path)?;
            match projectivize(&arr) {
                Ok(s) => {
                    write(&out, &emit_arrangement_file(s.rerouted.lines()))?;
                    emit(&(serde_json::to_string_pretty(&projective_json(&s)).expect("json") + "\n"))
                }
                Err(ProjectiveError::NotProjectivizable(reason)) => fail(3, format!("not projectivizable: {reason}")),
                Err(e) => fail(2, e.to_string()),
            }
        }
        Command::Render { path, out, boxes } => {
            let arr = load(&path)?;
            let mut opts = RenderOptions::default();
            if boxes && !arr.lines().is_empty() {
                let inner = tail_order(&arr);
                opts.boxes.push(inner.inner.clone());
                opts.boxes
                    .push(ClipBox::centered(Rat::from_integer(2.into()) * &inner.half_width));
            }
            write(&out, &render_svg(&arr, &opts))
        }
        Command::Generate {
            seed,
            lines,
            max_vertices,
            out,
        } => {
            let generated =
                generate_random_arrangement::<Rat>(seed, lines, max_vertices).or_else(|e| fail(1, e.to_string()))?;
            let text = emit_arrangement_file(&generated);
            match out {
                Some(p) => write(&p, &text),
                None => emit(&text),
            }
        }
    }
}

fn count(path: &Path, method: Method, resolution: Option<u64>) -> Result<(), Failure> {
    if is_abstract(path) {
        if matches!(method, Method::Direct | Method::Oracle) {
            return fail(1, "only the formula applies to an abstract semilattice");
        }
        let sl = parse_abstract(&read(path)?).or_else(|e| fail(1, format!("{}: {e}", path.display())))?;
        return emit(&format!("formula: {}\n", sl.region_count()));
    }
    let arr = load(path)?;
    let mut values = Vec::new();
    if matches!(method, Method::Formula | Method::All) {
        let v = semilattice_of(&arr).region_count();
        emit(&format!("formula: {v}\n"))?;
        values.push(v);
    }
    if matches!(method, Method::Direct | Method::All) {
        let v = direct_region_count(&arr).regions;
        emit(&format!("direct: {v}\n"))?;
        values.push(v);
    }
    if matches!(method, Method::Oracle | Method::All) {
        let res = resolution.unwrap_or_else(|| oracle_min_resolution(&arr));
        match grid_flood_fill_oracle(&arr, res) {
            Ok(v) => {
                emit(&format!("oracle: {v} (resolution {res})\n"))?;
                values.push(v);
            }
            Err(e) if method == Method::Oracle => return fail(1, format!("oracle: {e}")),
            Err(e) => emit(&format!("oracle: skipped ({e})\n"))?,
        }
    }
    if values.windows(2).any(|w| w[0] != w[1]) {
        return fail(3, "counts disagree");
    }
    Ok(())
}

fn main() -> ExitCode {
    // Usage errors exit with 1; 2 is reserved for invalid arrangements.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
