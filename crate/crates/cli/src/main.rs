mod oeis;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyforms::bfile::{compare, parse_counts, BFile};
use polyforms::canonical::{format_cells, parse_cells};
use polyforms::enumerate::read_emission;
use polyforms::export::{form_off, form_svg, gallery_svg, ExportError};
use polyforms::packing::{
    generate_region, parse_instance, solve_pack, verify_solution, Instance, Multiplicity, PackOptions, PieceSet,
    PlacementGroup, RegionKind, SearchMode, StopReason,
};
use polyforms::tiling::{load_tiling, validate, DEFAULT_RADIUS};
use polyforms::{enumerate_counts, EnumerateError, EnumerateOptions, Point, SymmetryMode, TilingSpec};

const EXIT_USAGE: u8 = 1;
const EXIT_LIMIT: u8 = 2;
const EXIT_CHECK: u8 = 3;
const EXIT_NO_DATA: u8 = 4;
const EXIT_EMPTY: u8 = 5;

/// Enumerate, validate, draw and pack polyforms on periodic tilings.
///
/// Exit codes: 0 success, 1 usage or parse error, 2 resource or time limit,
/// 3 failed validation or comparison, 4 missing render data, 5 nothing to
/// compare.
#[derive(Parser)]
#[command(name = "polyforms", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count polyforms level by level.
    Enumerate(EnumerateArgs),
    /// Check a tiling spec for consistency.
    Validate(ValidateArgs),
    /// Write SVG (2D) or OFF (3D) geometry for forms.
    Export(ExportArgs),
    /// Compare counts against an OEIS b-file.
    Compare(CompareArgs),
    /// Solve an exact-cover packing puzzle.
    Pack(PackArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Built-in tiling name or path to a spec file.
    #[arg(long)]
    tiling: String,
    #[arg(long, default_value = "free")]
    mode: SymmetryMode,
    #[arg(long)]
    max_n: usize,
    /// Write one sorted form file per level into this directory.
    #[arg(long, value_name = "DIR")]
    emit_forms: Option<PathBuf>,
    /// Canonical-parent generation without a global form set.
    #[arg(long)]
    pruned: bool,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    json: bool,
    #[arg(long, value_name = "BYTES")]
    memory_limit: Option<u64>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    tiling: String,
    #[arg(long, default_value_t = DEFAULT_RADIUS)]
    radius: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Off,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    tiling: String,
    /// Form file as written by `enumerate --emit-forms`.
    #[arg(long, value_name = "FILE", conflicts_with = "form", required_unless_present = "form")]
    forms: Option<PathBuf>,
    /// A single form, e.g. `0,0;8/21,2/21`.
    #[arg(long)]
    form: Option<String>,
    #[arg(long, value_enum)]
    format: Format,
    /// Output file, or directory with `--each` (and for OFF with several forms).
    #[arg(short, long)]
    output: PathBuf,
    /// One SVG per form instead of a gallery.
    #[arg(long)]
    each: bool,
    #[arg(long, default_value_t = 8)]
    columns: usize,
}

#[derive(Args)]
struct CompareArgs {
    /// Output of `enumerate` (text or JSON); `-` reads stdin.
    #[arg(long)]
    counts: String,
    #[arg(long, conflicts_with = "fetch", required_unless_present = "fetch")]
    bfile: Option<PathBuf>,
    /// Sequence id, e.g. A383908; read from the cache or downloaded.
    #[arg(long, value_name = "ID")]
    fetch: Option<String>,
    /// Never touch the network.
    #[arg(long)]
    offline: bool,
    /// Overrides POLYFORMS_CACHE_DIR.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct PackArgs {
    /// Instance file; the flags below build one instead.
    #[arg(long, conflicts_with_all = ["tiling", "region"])]
    instance: Option<PathBuf>,
    #[arg(long, requires = "region")]
    tiling: Option<String>,
    /// rect, box, bcc-box or tet-region.
    #[arg(long, requires_all = ["tiling", "params"])]
    region: Option<String>,
    /// Comma-separated region sizes, e.g. `20,3`.
    #[arg(long, value_delimiter = ',')]
    params: Vec<i64>,
    /// A piece; repeat for several.
    #[arg(long = "piece")]
    pieces: Vec<String>,
    /// Pieces from a form file.
    #[arg(long)]
    pieces_file: Option<PathBuf>,
    /// Pieces are every n-form of this mode.
    #[arg(long, value_name = "N")]
    pieces_n: Option<usize>,
    #[arg(long, default_value = "free")]
    pieces_mode: SymmetryMode,
    /// Pieces may be reused any number of times.
    #[arg(long)]
    unbounded: bool,
    #[arg(long, group = "search")]
    count_all: bool,
    #[arg(long, group = "search")]
    first: bool,
    /// Stop after this many solutions.
    #[arg(long, group = "search", value_name = "K")]
    limit: Option<u64>,
    /// Stop after this many seconds.
    #[arg(long, value_name = "SECONDS")]
    limit_time: Option<f64>,
    #[arg(long)]
    modulo_region_symmetry: bool,
    /// Allow mirror images of the pieces.
    #[arg(long)]
    reflections: bool,
    /// Print every solution found.
    #[arg(long)]
    show_solutions: bool,
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> Failure {
    Failure { code, msg: msg.to_string() }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match cli.cmd {
        Cmd::Enumerate(a) => cmd_enumerate(a),
        Cmd::Validate(a) => cmd_validate(a),
        Cmd::Export(a) => cmd_export(a),
        Cmd::Compare(a) => cmd_compare(a),
        Cmd::Pack(a) => cmd_pack(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("polyforms: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn tiling(name: &str) -> Result<TilingSpec, Failure> {
    load_tiling(name).map_err(|e| fail(EXIT_USAGE, e))
}

fn cmd_enumerate(a: EnumerateArgs) -> CmdResult {
    let spec = tiling(&a.tiling)?;
    let opts = EnumerateOptions {
        retain_forms: false,
        pruned: a.pruned,
        threads: a.threads,
        emit_path: a.emit_forms,
        memory_limit: a.memory_limit,
    };
    let render = |r: &polyforms::EnumerationResult| if a.json { r.to_json() + "\n" } else { r.to_text() };
    match enumerate_counts(&spec, a.mode, a.max_n, &opts) {
        Ok(r) => {
            print!("{}", render(&r));
            Ok(0)
        }
        Err(EnumerateError::MemoryLimit { level, limit, partial }) => {
            print!("{}", render(&partial));
            if !a.json {
                println!("# partial: level {level} would exceed the memory limit of {limit} bytes");
            }
            Err(fail(EXIT_LIMIT, format!("memory limit of {limit} bytes reached at level {level}")))
        }
        Err(e) => Err(fail(EXIT_USAGE, e)),
    }
}

fn cmd_validate(a: ValidateArgs) -> CmdResult {
    let spec = tiling(&a.tiling)?;
    let report = validate(&spec, a.radius).map_err(|e| fail(EXIT_USAGE, e))?;
    print!("{report}");
    Ok(if report.all_passed() { 0 } else { EXIT_CHECK })
}

fn export_error(e: ExportError) -> Failure {
    match e {
        ExportError::NoRenderData => fail(EXIT_NO_DATA, e),
        _ => fail(EXIT_USAGE, e),
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn cmd_export(a: ExportArgs) -> CmdResult {
    let spec = tiling(&a.tiling)?;
    let names: Vec<String> = match (&a.form, &a.forms) {
        (Some(f), _) => vec![f.clone()],
        (None, Some(path)) => read_emission(path).map_err(|e| fail(EXIT_USAGE, e))?,
        (None, None) => unreachable!("clap requires one of --form and --forms"),
    };
    let forms: Vec<(String, Vec<Point>)> = names
        .into_iter()
        .map(|n| parse_cells(&n).map(|c| (n, c)))
        .collect::<Result<_, _>>()
        .map_err(|e| fail(EXIT_USAGE, e))?;
    let many = a.each || (matches!(a.format, Format::Off) && forms.len() > 1);
    if many {
        std::fs::create_dir_all(&a.output).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", a.output.display())))?;
    }
    let ext = match a.format {
        Format::Svg => "svg",
        Format::Off => "off",
    };
    let one = |cells: &[Point]| match a.format {
        Format::Svg => form_svg(&spec, cells),
        Format::Off => form_off(&spec, cells),
    };
    if many {
        for (i, (_, cells)) in forms.iter().enumerate() {
            let text = one(cells).map_err(export_error)?;
            write(&a.output.join(format!("form-{:04}.{ext}", i + 1)), &text)?;
        }
        println!("wrote {} files to {}", forms.len(), a.output.display());
    } else {
        let text = match (a.format, forms.as_slice()) {
            (Format::Svg, [(_, cells)]) => form_svg(&spec, cells),
            (Format::Svg, _) => gallery_svg(&spec, &forms, a.columns),
            (Format::Off, [(_, cells)]) => form_off(&spec, cells),
            (Format::Off, _) => unreachable!("several OFF forms go to a directory"),
        }
        .map_err(export_error)?;
        write(&a.output, &text)?;
        println!("wrote {}", a.output.display());
    }
    Ok(0)
}

fn cmd_compare(a: CompareArgs) -> CmdResult {
    let text = if a.counts == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| fail(EXIT_USAGE, e))?;
        s
    } else {
        std::fs::read_to_string(&a.counts).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", a.counts)))?
    };
    let counts = parse_counts(&text).map_err(|e| fail(EXIT_USAGE, e))?;
    let bfile = match (&a.bfile, &a.fetch) {
        (Some(path), _) => {
            let body =
                std::fs::read_to_string(path).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
            let id = path
                .file_stem()
                .and_then(|s| s.to_str())
                .and_then(|s| s.strip_prefix('b'))
                .map(|d| format!("A{d}"))
                .unwrap_or_else(|| "b-file".to_string());
            BFile::parse(&id, &body).map_err(|e| fail(EXIT_USAGE, e))?
        }
        (None, Some(id)) => {
            let dir = a.cache_dir.clone().unwrap_or_else(oeis::default_cache_dir);
            oeis::fetch_bfile(id, &dir, a.offline).map_err(|e| fail(EXIT_USAGE, e))?
        }
        (None, None) => unreachable!("clap requires one of --bfile and --fetch"),
    };
    let report = compare(&counts, &bfile);
    print!("{report}");
    if report.overlap() == 0 {
        return Err(fail(EXIT_EMPTY, "nothing to compare"));
    }
    Ok(if report.matches() { 0 } else { EXIT_CHECK })
}

fn assembled_instance(a: &PackArgs) -> Result<Instance, Failure> {
    let usage = |e: &dyn std::fmt::Display| fail(EXIT_USAGE, e);
    let spec = tiling(a.tiling.as_deref().ok_or_else(|| fail(EXIT_USAGE, "--instance or --tiling is required"))?)?;
    let kind = RegionKind::from_params(a.region.as_deref().unwrap_or_default(), &a.params).map_err(|e| usage(&e))?;
    let region = generate_region(&spec, &kind).map_err(|e| usage(&e))?;
    let mut pieces: Vec<Vec<Point>> = Vec::new();
    for p in &a.pieces {
        pieces.push(parse_cells(p).map_err(|e| usage(&e))?);
    }
    if let Some(path) = &a.pieces_file {
        for line in read_emission(path).map_err(|e| usage(&e))? {
            pieces.push(parse_cells(&line).map_err(|e| usage(&e))?);
        }
    }
    if let Some(n) = a.pieces_n {
        let opts = EnumerateOptions { retain_forms: true, ..Default::default() };
        let r = enumerate_counts(&spec, a.pieces_mode, n, &opts).map_err(|e| usage(&e))?;
        let forms = r.levels.into_iter().last().and_then(|l| l.forms).unwrap_or_default();
        pieces.extend(forms.into_iter().map(|f| f.into_cells()));
    }
    let multiplicity = if a.unbounded { Multiplicity::Unbounded } else { Multiplicity::EachOnce };
    let pieces = PieceSet { pieces, multiplicity };
    pieces.check_distinct(&spec, a.pieces_mode).map_err(|e| usage(&e))?;
    Ok(Instance { spec, region, pieces, group: PlacementGroup::Rotations, description: None })
}

fn cmd_pack(a: PackArgs) -> CmdResult {
    let mut inst = match &a.instance {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
            let base = path.parent().unwrap_or(Path::new("."));
            parse_instance(&text, base).map_err(|e| fail(EXIT_USAGE, e))?
        }
        None => assembled_instance(&a)?,
    };
    if a.reflections {
        inst.group = PlacementGroup::RotationsAndReflections;
    }
    let search = match (a.first, a.limit) {
        (true, _) => SearchMode::First,
        (_, Some(k)) => SearchMode::Limit(k),
        _ => SearchMode::CountAll,
    };
    let time_limit = match a.limit_time {
        Some(s) if !(s >= 0.0 && s.is_finite()) => {
            return Err(fail(EXIT_USAGE, "--limit-time must be a nonnegative number"))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let show = a.show_solutions || a.first;
    let opts = PackOptions { search, time_limit, keep_solutions: show, modulo_symmetry: a.modulo_region_symmetry };
    let r = solve_pack(&inst.spec, &inst.region, &inst.pieces, inst.group, &opts).map_err(|e| fail(EXIT_USAGE, e))?;
    println!(
        "region {} cells, {} pieces, {} placements",
        inst.region.len(),
        inst.pieces.pieces.len(),
        r.placement_count
    );
    for (i, s) in r.solutions.iter().enumerate() {
        verify_solution(&inst.spec, &inst.region, &inst.pieces, inst.group, s)
            .map_err(|e| fail(EXIT_CHECK, format!("solution {} failed verification: {e}", i + 1)))?;
        if show {
            println!("solution {} (verified)", i + 1);
            for p in s {
                println!("  {} {}", p.piece, format_cells(&p.cells));
            }
        }
    }
    let bound = if r.complete() { "" } else { " (lower bound)" };
    println!("raw solutions {}{bound}", r.raw_count);
    if a.modulo_region_symmetry {
        match r.modulo_symmetry {
            Some(m) => println!("modulo region symmetry {m} ({} symmetries)", r.region_symmetries),
            None => println!("modulo region symmetry unavailable: search did not complete"),
        }
    }
    match r.stop {
        StopReason::TimeLimit => {
            println!("stopped: time limit");
            Ok(EXIT_LIMIT)
        }
        StopReason::SolutionLimit => {
            println!("stopped: solution limit");
            Ok(0)
        }
        StopReason::Complete => Ok(0),
    }
}
