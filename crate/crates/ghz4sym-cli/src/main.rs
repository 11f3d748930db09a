//! Command-line front end: builds states, twirls pure states, sweeps
//! boundary surfaces, runs the oracle, builds region hulls, checks
//! inclusions, and runs the verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 solver/runtime failure.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ghz4sym::boundaries::effective_xmax;
use ghz4sym::export::{hull_to_obj, write_surface_csv, write_surface_csv_path};
use ghz4sym::hull::{hull_volume, Hull};
use ghz4sym::oracle::{maximize_x, OptimConfig};
use ghz4sym::region::{check_hierarchy, region_hull, sample_surface, InclusionReport};
use ghz4sym::slocc::SloccClass;
use ghz4sym::symstate::{
    physicality_report, to_density, twirl, DensityMatrix, ParamPoint, PureState, SymmetricState,
};
use ghz4sym::verify::run_all;
use ghz4sym::Error as LibError;
use num_complex::Complex64;

#[derive(Parser)]
#[command(
    name = "ghz4sym",
    version,
    about = "Four-qubit GHZ-symmetric states: geometry, SLOCC boundary surfaces, oracle, hulls"
)]
struct Cli {
    /// Worker threads for grid sweeps and oracle restarts (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a symmetric state from alpha1,alpha2,alpha3 and beta; print its
    /// coordinates, physicality, and a density-matrix checksum.
    State {
        /// Comma-separated diagonal parameters a1,a2,a3.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        alphas: Vec<f64>,
        /// Coherence between |0000> and |1111>.
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        json: bool,
    },
    /// Twirl a pure state into the symmetric family. Input: JSON with 16
    /// complex amplitudes as [re, im] pairs (bare array or under
    /// an "amplitudes" key); "-" reads stdin. Amplitudes are normalized.
    Twirl {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Sample a class boundary surface on the triangular (y, z) grid and
    /// write it as CSV (stdout when --out is omitted).
    Boundary {
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 24)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximize the coherence x at (y, z) numerically from the class anchor;
    /// prints the result and the analytic comparison as JSON.
    Oracle {
        #[arg(long)]
        class: String,
        #[arg(long)]
        y: f64,
        #[arg(long)]
        z: f64,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Build the convex hull of the mirrored class region; writes an OBJ
    /// mesh to --out and the full hull as JSON next to it.
    Hull {
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 24)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pointwise inclusion check of one class region inside another.
    /// Exit code 0 iff the inclusion holds at the tolerance.
    Hierarchy {
        #[arg(long)]
        inner: String,
        #[arg(long)]
        outer: String,
        #[arg(long, default_value_t = 40)]
        grid: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Run the full verification suite; one line per criterion.
    Verify,
}

/// JSON float: 17 significant digits; non-finite values become null.
fn jf(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// Human-readable float: 9 significant digits.
fn hf(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..9).contains(&mag) {
        format!("{:.*}", (8 - mag).max(0) as usize, x)
    } else {
        format!("{x:.8e}")
    }
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

fn lib_code(e: &LibError) -> u8 {
    match e {
        LibError::NonFinite(_)
        | LibError::NotNormalized(_)
        | LibError::ZeroState
        | LibError::BadParamCount(..)
        | LibError::NoAnchor(_)
        | LibError::Unsolved(_)
        | LibError::UnknownTag(_)
        | LibError::Parse { .. } => 2,
        LibError::SingularOp(..)
        | LibError::DegeneratePoly
        | LibError::TooFewPoints(..)
        | LibError::Io(_) => 3,
    }
}

fn lib_fail(e: LibError) -> Failure {
    let code = lib_code(&e);
    let msg = match &e {
        LibError::Unsolved(tag) => format!(
            "{e}: the boundary of {tag} is an open problem; solved classes are \
             gabcd, labc2, la2b2, la2o31, l031031, la4"
        ),
        LibError::UnknownTag(_) => format!(
            "{e}; known tags: gabcd, labc2, la2b2, lab3, la4, la2o31, l053, l071, l031031"
        ),
        _ => e.to_string(),
    };
    fail(code, msg)
}

fn parse_class(tag: &str) -> Result<SloccClass, Failure> {
    tag.parse::<SloccClass>().map_err(lib_fail)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ghz4sym::exec::configure_threads(cli.threads);
    match dispatch(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<u8, Failure> {
    match cmd {
        Cmd::State { alphas, beta, json } => cmd_state(&alphas, beta, json),
        Cmd::Twirl { input, json } => cmd_twirl(&input, json),
        Cmd::Boundary { class, grid, out } => cmd_boundary(&class, grid, out.as_deref()),
        Cmd::Oracle {
            class,
            y,
            z,
            restarts,
            seed,
        } => cmd_oracle(&class, y, z, restarts, seed),
        Cmd::Hull { class, grid, out } => cmd_hull(&class, grid, &out),
        Cmd::Hierarchy {
            inner,
            outer,
            grid,
            tol,
            json,
        } => cmd_hierarchy(&inner, &outer, grid, tol, json),
        Cmd::Verify => cmd_verify(),
    }
}

fn density_checksum(m: &DensityMatrix) -> u64 {
    // FNV-1a over the little-endian bytes of all entries, row-major.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for row in m.iter() {
        for v in row.iter() {
            for part in [v.re, v.im] {
                for b in part.to_le_bytes() {
                    h ^= b as u64;
                    h = h.wrapping_mul(0x0000_0100_0000_01b3);
                }
            }
        }
    }
    h
}

fn state_json(s: &SymmetricState, p: ParamPoint) -> String {
    let rep = physicality_report(s);
    let rho = to_density(s);
    let purity: f64 = rho
        .iter()
        .flat_map(|row| row.iter())
        .map(|v| v.norm_sqr())
        .sum();
    format!(
        "{{\"alpha1\": {}, \"alpha2\": {}, \"alpha3\": {}, \"beta\": {}, \
         \"trace_residual\": {}, \"point\": {{\"x\": {}, \"y\": {}, \"z\": {}}}, \
         \"physical\": {}, \"purity\": {}, \"density_checksum\": \"{:016x}\"}}",
        jf(s.alpha1),
        jf(s.alpha2),
        jf(s.alpha3),
        jf(s.beta),
        jf(s.trace_residual()),
        jf(p.x),
        jf(p.y),
        jf(p.z),
        rep.ok,
        jf(purity),
        density_checksum(&rho)
    )
}

fn print_state_human(s: &SymmetricState, p: ParamPoint) {
    let rep = physicality_report(s);
    let rho = to_density(s);
    let purity: f64 = rho
        .iter()
        .flat_map(|row| row.iter())
        .map(|v| v.norm_sqr())
        .sum();
    println!(
        "state: alpha1 = {}, alpha2 = {}, alpha3 = {}, beta = {}",
        hf(s.alpha1),
        hf(s.alpha2),
        hf(s.alpha3),
        hf(s.beta)
    );
    println!("trace residual: {}", hf(s.trace_residual()));
    println!("point: ({}, {}, {})", hf(p.x), hf(p.y), hf(p.z));
    if rep.ok {
        println!("physical: yes");
    } else {
        println!("physical: no ({})", rep.violations.join("; "));
    }
    println!(
        "density matrix: purity = {}, checksum = {:016x}",
        hf(purity),
        density_checksum(&rho)
    );
}

fn cmd_state(alphas: &[f64], beta: f64, json: bool) -> Result<u8, Failure> {
    if alphas.len() != 3 {
        return Err(fail(
            2,
            format!("--alphas needs exactly 3 comma-separated values, got {}", alphas.len()),
        ));
    }
    for v in alphas.iter().chain(std::iter::once(&beta)) {
        if !v.is_finite() {
            return Err(fail(2, "state parameters must be finite"));
        }
    }
    let s = ghz4sym::symstate::make_state(alphas[0], alphas[1], alphas[2], beta)
        .map_err(lib_fail)?;
    let residual = s.trace_residual();
    if residual.abs() > 1e-9 {
        return Err(fail(
            2,
            format!(
                "trace constraint violated: alpha1 + 4 alpha2 + 3 alpha3 - 1/2 = {residual:e} \
                 (the coordinates assume the constraint)"
            ),
        ));
    }
    let p = s.to_point();
    if json {
        println!("{}", state_json(&s, p));
    } else {
        print_state_human(&s, p);
    }
    Ok(0)
}

fn parse_amplitudes(text: &str) -> Result<PureState, Failure> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| fail(2, format!("input is not valid JSON: {e}")))?;
    let arr = match &value {
        serde_json::Value::Array(a) => a,
        serde_json::Value::Object(o) => o
            .get("amplitudes")
            .and_then(|v| v.as_array())
            .ok_or_else(|| fail(2, "expected an \"amplitudes\" array of 16 entries"))?,
        _ => return Err(fail(2, "expected a JSON array or an object with \"amplitudes\"")),
    };
    if arr.len() != 16 {
        return Err(fail(2, format!("expected 16 amplitudes, got {}", arr.len())));
    }
    let mut psi = PureState::zero();
    for (i, entry) in arr.iter().enumerate() {
        let (re, im) = match entry {
            serde_json::Value::Array(pair) if pair.len() == 2 => {
                let re = pair[0].as_f64();
                let im = pair[1].as_f64();
                match (re, im) {
                    (Some(re), Some(im)) => (re, im),
                    _ => return Err(fail(2, format!("amplitude {i} is not a [re, im] pair"))),
                }
            }
            serde_json::Value::Number(n) => (n.as_f64().unwrap_or(f64::NAN), 0.0),
            _ => return Err(fail(2, format!("amplitude {i} is not a number or [re, im] pair"))),
        };
        if !re.is_finite() || !im.is_finite() {
            return Err(fail(2, format!("amplitude {i} is not finite")));
        }
        psi.amplitudes[i] = Complex64::new(re, im);
    }
    psi.normalized().map_err(lib_fail)
}

fn cmd_twirl(input: &str, json: bool) -> Result<u8, Failure> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| fail(3, format!("reading stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(input).map_err(|e| fail(2, format!("cannot read {input}: {e}")))?
    };
    let psi = parse_amplitudes(&text)?;
    let s = twirl(&psi).map_err(lib_fail)?;
    let p = s.to_point();
    if json {
        println!("{}", state_json(&s, p));
    } else {
        println!(
            "twirled state: alpha1 = {}, alpha2 = {}, alpha3 = {}, beta = {}",
            hf(s.alpha1),
            hf(s.alpha2),
            hf(s.alpha3),
            hf(s.beta)
        );
        println!("point: ({}, {}, {})", hf(p.x), hf(p.y), hf(p.z));
    }
    Ok(0)
}

fn cmd_boundary(class: &str, grid: usize, out: Option<&Path>) -> Result<u8, Failure> {
    let cls = parse_class(class)?;
    if grid < 2 {
        return Err(fail(2, "--grid must be at least 2"));
    }
    let surface = sample_surface(cls, grid).map_err(lib_fail)?;
    match out {
        Some(path) => {
            write_surface_csv_path(path, &surface).map_err(lib_fail)?;
            println!(
                "wrote {} rows ({} empty) to {}",
                surface.points.len(),
                surface.points.iter().filter(|p| p.empty).count(),
                path.display()
            );
        }
        None => {
            let stdout = std::io::stdout();
            write_surface_csv(stdout.lock(), &surface).map_err(lib_fail)?;
        }
    }
    Ok(0)
}

fn op_json(op: &ghz4sym::slocc::LocalOp) -> String {
    let mats: Vec<String> = op
        .mats
        .iter()
        .map(|m| {
            let rows: Vec<String> = m
                .iter()
                .map(|row| {
                    let cells: Vec<String> = row
                        .iter()
                        .map(|c| format!("[{}, {}]", jf(c.re), jf(c.im)))
                        .collect();
                    format!("[{}]", cells.join(", "))
                })
                .collect();
            format!("[{}]", rows.join(", "))
        })
        .collect();
    format!("[{}]", mats.join(", "))
}

fn cmd_oracle(class: &str, y: f64, z: f64, restarts: usize, seed: u64) -> Result<u8, Failure> {
    let cls = parse_class(class)?;
    if !y.is_finite() || !z.is_finite() {
        return Err(fail(2, "--y and --z must be finite"));
    }
    if restarts == 0 {
        return Err(fail(2, "--restarts must be positive"));
    }
    let cfg = OptimConfig {
        restarts,
        seed,
        ..OptimConfig::default()
    };
    let res = maximize_x(cls, y, z, &cfg).map_err(lib_fail)?;
    let analytic = match effective_xmax(cls, y, z) {
        Ok(b) => {
            let cmp = if b.empty {
                "null".to_string()
            } else {
                jf(res.x_best - b.x_effective)
            };
            format!(
                "{{\"x_max\": {}, \"x_effective\": {}, \"empty\": {}, \"oracle_minus_effective\": {}}}",
                jf(b.x_max),
                jf(b.x_effective),
                b.empty,
                cmp
            )
        }
        Err(LibError::Unsolved(_)) => "null".to_string(),
        Err(e) => return Err(lib_fail(e)),
    };
    println!(
        "{{\"class\": \"{}\", \"y\": {}, \"z\": {}, \"restarts\": {}, \"seed\": {}, \
         \"x_best\": {}, \"constraint_residual\": {}, \"starts_converged\": {}, \
         \"best_op\": {}, \"analytic\": {}}}",
        cls.tag(),
        jf(y),
        jf(z),
        restarts,
        seed,
        jf(res.x_best),
        jf(res.constraint_residual),
        res.starts_converged,
        op_json(&res.best_op),
        analytic
    );
    if res.starts_converged == 0 {
        eprintln!("error: no restart reached the diagonal constraint (residual {:e})", res.constraint_residual);
        return Ok(3);
    }
    Ok(0)
}

fn hull_json(cls: SloccClass, grid: usize, h: &Hull) -> String {
    let verts: Vec<String> = h
        .vertices
        .iter()
        .map(|v| format!("[{}, {}, {}]", jf(v[0]), jf(v[1]), jf(v[2])))
        .collect();
    let faces: Vec<String> = h
        .faces
        .iter()
        .map(|f| format!("[{}, {}, {}]", f[0], f[1], f[2]))
        .collect();
    format!(
        "{{\"class\": \"{}\", \"resolution\": {}, \"coplanar\": {}, \"volume\": {}, \
         \"vertices\": [{}], \"faces\": [{}]}}",
        cls.tag(),
        grid,
        h.coplanar,
        jf(hull_volume(h)),
        verts.join(", "),
        faces.join(", ")
    )
}

fn cmd_hull(class: &str, grid: usize, out: &Path) -> Result<u8, Failure> {
    let cls = parse_class(class)?;
    if grid < 2 {
        return Err(fail(2, "--grid must be at least 2"));
    }
    let h = region_hull(cls, grid).map_err(lib_fail)?;
    fs::write(out, hull_to_obj(&h)).map_err(|e| fail(3, format!("writing {}: {e}", out.display())))?;
    let json_path = out.with_extension("json");
    fs::write(&json_path, hull_json(cls, grid, &h))
        .map_err(|e| fail(3, format!("writing {}: {e}", json_path.display())))?;
    println!(
        "hull of {}: {} vertices, {} faces, volume {}{}",
        cls.tag(),
        h.vertices.len(),
        h.faces.len(),
        hf(hull_volume(&h)),
        if h.coplanar { " (planar)" } else { "" }
    );
    println!("wrote {} and {}", out.display(), json_path.display());
    Ok(0)
}

fn report_json(rep: &InclusionReport) -> String {
    let viol: Vec<String> = rep
        .violating_points
        .iter()
        .map(|v| {
            format!(
                "{{\"y\": {}, \"z\": {}, \"inner_x\": {}, \"outer_x\": {}, \"outer_empty\": {}}}",
                jf(v.y),
                jf(v.z),
                jf(v.inner_x),
                jf(v.outer_x),
                v.outer_empty
            )
        })
        .collect();
    format!(
        "{{\"inner\": \"{}\", \"outer\": \"{}\", \"resolution\": {}, \"tolerance\": {}, \
         \"compared\": {}, \"max_violation\": {}, \"holds\": {}, \"violating_points\": [{}]}}",
        rep.inner.tag(),
        rep.outer.tag(),
        rep.resolution,
        jf(rep.tolerance),
        rep.compared,
        jf(rep.max_violation),
        rep.passes(),
        viol.join(", ")
    )
}

fn cmd_hierarchy(inner: &str, outer: &str, grid: usize, tol: f64, json: bool) -> Result<u8, Failure> {
    let inner = parse_class(inner)?;
    let outer = parse_class(outer)?;
    if grid < 2 {
        return Err(fail(2, "--grid must be at least 2"));
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(fail(2, "--tol must be a nonnegative finite number"));
    }
    let rep = check_hierarchy(inner, outer, grid, tol).map_err(lib_fail)?;
    if json {
        println!("{}", report_json(&rep));
    } else {
        println!(
            "inclusion {} within {}: {} (grid {}, tol {})",
            rep.inner.tag(),
            rep.outer.tag(),
            if rep.passes() { "HOLDS" } else { "VIOLATED" },
            rep.resolution,
            hf(rep.tolerance)
        );
        println!(
            "columns compared: {}, max violation: {}",
            rep.compared,
            hf(rep.max_violation)
        );
        if !rep.violating_points.is_empty() {
            println!("violations ({} columns, showing up to 10):", rep.violating_points.len());
            for v in rep.violating_points.iter().take(10) {
                println!(
                    "  (y, z) = ({}, {}): inner x = {}, outer {}",
                    hf(v.y),
                    hf(v.z),
                    hf(v.inner_x),
                    if v.outer_empty {
                        "region empty".to_string()
                    } else {
                        format!("x = {}", hf(v.outer_x))
                    }
                );
            }
        }
    }
    Ok(if rep.passes() { 0 } else { 1 })
}

fn cmd_verify() -> Result<u8, Failure> {
    let reports = run_all();
    let mut failed = 0usize;
    for rep in &reports {
        println!("{}", rep.line());
        for d in &rep.details {
            println!("    {d}");
        }
        if !rep.passed {
            failed += 1;
        }
    }
    println!(
        "{}/{} criteria passed",
        reports.len() - failed,
        reports.len()
    );
    Ok(if failed == 0 { 0 } else { 1 })
}
