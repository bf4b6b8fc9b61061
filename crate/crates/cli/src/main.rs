use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use curvigrid::{
    check_interfaces, generate_block, generate_multiblock, parse_block_file, parse_mesh, quality_report, render_svg,
    write_mesh, write_vtk, BlockInput, GeneratedBlock, SolverConfig, StructuredGrid,
};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_NOT_CONVERGED: u8 = 2;
const EXIT_FOLDED: u8 = 3;

#[derive(Parser)]
#[command(name = "curvigrid", version, about = "Structured 2D mesh generation in generalized coordinates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a mesh for one block file
    Generate {
        block_file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Mesh output path (standard output if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Legacy VTK output path
        #[arg(long)]
        vtk: Option<PathBuf>,
        /// SVG plot output path
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        plot: PlotArgs,
    },
    /// Generate several blocks and plot them together
    Multiblock {
        #[arg(required = true)]
        block_files: Vec<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
        /// Directory for per-block `<name>.mesh` files
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Combined SVG plot output path
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Distance under which boundary nodes of two blocks count as shared
        #[arg(long, default_value_t = 1e-6)]
        interface_tol: f64,
        #[command(flatten)]
        plot: PlotArgs,
    },
    /// Print quality statistics for a mesh file
    Quality { mesh_file: PathBuf },
}

#[derive(Args)]
struct SolverArgs {
    /// Convergence tolerance on the max nodal displacement per sweep
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    /// Relaxation factor (1 = Gauss-Seidel)
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Write folded meshes and exit 0 with a warning instead of exiting 3
    #[arg(long)]
    allow_folded: bool,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            tolerance: self.tol,
            max_iterations: self.max_iters,
            relaxation: self.omega,
            ..SolverConfig::default()
        }
    }
}

#[derive(Args)]
struct PlotArgs {
    /// SVG stroke width in physical units (default: 0.2% of the plot extent)
    #[arg(long)]
    stroke_width: Option<f64>,
}

/// Failure that maps to exit code 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_block(path: &Path) -> Result<BlockInput, Failure> {
    parse_block_file(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn svg_text(grids: &[StructuredGrid], plot: &PlotArgs) -> Result<String, Failure> {
    let width = plot.stroke_width.unwrap_or_else(|| {
        let extent = grids
            .iter()
            .map(|g| {
                let (lo, hi) = g.bounding_box();
                (hi.x - lo.x).max(hi.y - lo.y)
            })
            .fold(0.0, f64::max);
        0.002 * extent
    });
    Ok(render_svg(grids, width)?)
}

fn report(block: &GeneratedBlock) {
    let (s, q) = (&block.solve, &block.quality);
    eprintln!(
        "{}: iterations {} final_max_change {:e} residual {:e} converged {} min_jacobian_det {} folded {}",
        block.grid.name(),
        s.iterations,
        s.final_max_change,
        s.residual_max,
        s.converged,
        q.min_jacobian_det,
        q.folded_node_count
    );
}

/// Exit status for a set of generated blocks: non-convergence first, then folds.
fn status(blocks: &[GeneratedBlock], allow_folded: bool) -> u8 {
    if let Some(b) = blocks.iter().find(|b| !b.solve.converged) {
        eprintln!("error: block `{}` did not converge", b.grid.name());
        return EXIT_NOT_CONVERGED;
    }
    if let Some(b) = blocks.iter().find(|b| b.quality.is_folded()) {
        let n = b.quality.folded_node_count;
        if allow_folded {
            eprintln!("warning: block `{}` has {n} folded nodes", b.grid.name());
        } else {
            eprintln!("error: block `{}` has {n} folded nodes", b.grid.name());
            return EXIT_FOLDED;
        }
    }
    EXIT_OK
}

fn cmd_generate(
    path: &Path,
    solver: &SolverArgs,
    out: Option<&Path>,
    vtk: Option<&Path>,
    svg: Option<&Path>,
    plot: &PlotArgs,
) -> Result<u8, Failure> {
    let input = load_block(path)?;
    let block = generate_block(&input, &solver.config())?;
    report(&block);

    let mesh = write_mesh(&block.grid);
    let plot_text = svg.map(|_| svg_text(std::slice::from_ref(&block.grid), plot)).transpose()?;
    match out {
        Some(p) => write(p, &mesh)?,
        None => print!("{mesh}"),
    }
    if let Some(p) = vtk {
        write(p, &write_vtk(&block.grid))?;
    }
    if let (Some(p), Some(text)) = (svg, plot_text) {
        write(p, &text)?;
    }
    Ok(status(std::slice::from_ref(&block), solver.allow_folded))
}

fn cmd_multiblock(
    paths: &[PathBuf],
    solver: &SolverArgs,
    out_dir: Option<&Path>,
    svg: Option<&Path>,
    interface_tol: f64,
    plot: &PlotArgs,
) -> Result<u8, Failure> {
    let inputs = paths.iter().map(|p| load_block(p)).collect::<Result<Vec<_>, _>>()?;
    let mesh = generate_multiblock(&inputs, &solver.config())?;
    let blocks: Vec<GeneratedBlock> = mesh
        .blocks
        .iter()
        .zip(&mesh.reports)
        .map(|(g, (s, q))| GeneratedBlock { grid: g.clone(), solve: s.clone(), quality: q.clone() })
        .collect();
    blocks.iter().for_each(report);

    let interfaces = (mesh.len() >= 2).then(|| check_interfaces(&mesh, interface_tol)).transpose()?;
    let plot_text = svg.map(|_| svg_text(&mesh.blocks, plot)).transpose()?;

    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
        for g in &mesh.blocks {
            write(&dir.join(format!("{}.mesh", g.name())), &write_mesh(g))?;
        }
    }
    if let (Some(p), Some(text)) = (svg, plot_text) {
        write(p, &text)?;
    }
    if let Some(r) = interfaces {
        print!("{r}");
    }
    Ok(status(&blocks, solver.allow_folded))
}

fn cmd_quality(path: &Path) -> Result<u8, Failure> {
    let text = read(path)?;
    let grid = parse_mesh(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let q = quality_report(&grid);
    print!("{q}");
    Ok(if q.is_folded() { EXIT_FOLDED } else { EXIT_OK })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Generate { block_file, solver, out, vtk, svg, plot } => {
            cmd_generate(block_file, solver, out.as_deref(), vtk.as_deref(), svg.as_deref(), plot)
        }
        Command::Multiblock { block_files, solver, out_dir, svg, interface_tol, plot } => {
            cmd_multiblock(block_files, solver, out_dir.as_deref(), svg.as_deref(), *interface_tol, plot)
        }
        Command::Quality { mesh_file } => cmd_quality(mesh_file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
