//! Command-line surface for the phonon fluctuation library.
//!
//! Every computation prints a single JSON document (or CSV for the profile
//! commands) and exits 0. Domain errors exit 1, numerical non-convergence 2,
//! usage errors 64, malformed config 65, missing config 66. Identical
//! invocations produce byte-identical output.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use phonon_casimir::boundaries::{
    casimir_force_per_area, cosmic_string, default_point_split_deltas, parallel_plates_closed,
    parallel_plates_image_sum, point_split_oracle, single_plate, torus, wedge, PointSplitGeometry,
};
use phonon_casimir::freefield::{
    correlation_coefficient, correlation_sign, fourier_oracle_extrapolated_from, SignClass,
    SpacetimeSeparation, Variant,
};
use phonon_casimir::parabola::{
    focus_integral_closed, focus_variance, MirrorConfig, MirrorKind,
};
use phonon_casimir::scattering::{
    load_material, stokes_factor, thermal_ratio, total_factor, zp_cross_section_parts,
    MaterialOptics, ScatteringKinematics,
};
use phonon_casimir::squeezed::{
    squeezed_average, squeezed_coefficient, squeezed_extrema, squeezed_variance, SqueezeState,
};
use phonon_casimir::{Error, ErrorClass, FluidSpec, GeometryResult};

const ENV_CONFIG: &str = "PHONON_CASIMIR_CONFIG";

#[derive(Parser)]
#[command(name = "phonon-casimir", version, disable_help_subcommand = true)]
/// Quantum density fluctuations of a phonon fluid: free-space correlations,
/// squeezed states, boundary-modified variances, light scattering.
struct Cli {
    /// Fluid spec JSON file; PHONON_CASIMIR_CONFIG is the fallback, then
    /// natural units (hbar = rho0 = cS = 1).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output format for scalar results (profiles always emit CSV).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,

    /// Write the result to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Printed,
    Standard,
}

#[derive(Subcommand)]
enum Command {
    /// Free-space correlation function at a spacetime separation.
    Freespace {
        #[arg(long, allow_hyphen_values = true)]
        dx: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        dt: f64,
        #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
        variant: VariantArg,
        /// Run the regulated Fourier oracle with this starting regulator.
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Squeezed-vacuum shift of the mean squared density.
    Squeezed(SqueezedArgs),
    /// Single plate at distance z.
    Plate {
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
    },
    /// Two parallel plates with gap a, field point at z.
    Plates(PlatesArgs),
    /// Rectangular torus with periodicity lengths L1, L2, L3.
    Torus {
        #[arg(long = "L1", visible_alias = "l1", allow_hyphen_values = true)]
        l1: f64,
        #[arg(long = "L2", visible_alias = "l2", allow_hyphen_values = true)]
        l2: f64,
        #[arg(long = "L3", visible_alias = "l3", allow_hyphen_values = true)]
        l3: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Wedge of opening alpha, field point at (r, theta).
    Wedge {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        /// Also run the point-split oracle and report the discrepancy ratio.
        #[arg(long)]
        oracle: bool,
    },
    /// Cosmic string with cone angle alpha at distance r.
    #[command(name = "string")]
    CosmicString {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
    },
    /// Parabolic-mirror focus computations.
    Parabola {
        #[command(subcommand)]
        command: ParabolaCommand,
    },
    /// Zero-point Brillouin scattering for a material.
    Scattering(ScatteringArgs),
}

#[derive(Args)]
struct SqueezedArgs {
    #[arg(long, allow_hyphen_values = true)]
    r: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    delta: f64,
    #[arg(long, allow_hyphen_values = true)]
    omega: f64,
    #[arg(long, allow_hyphen_values = true)]
    k: f64,
    #[arg(long = "V", visible_alias = "volume", allow_hyphen_values = true)]
    volume: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    z: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t: f64,
    /// Emit a CSV profile of N phase samples over one period instead.
    #[arg(long, value_name = "N")]
    profile: Option<u32>,
}

#[derive(Args)]
struct PlatesArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, required_unless_present = "profile")]
    z: Option<f64>,
    /// Also run the image-sum oracle.
    #[arg(long = "image-sum")]
    image_sum: bool,
    #[arg(long, default_value_t = 2000)]
    nmax: u32,
    /// Emit a CSV profile of N points across the gap instead.
    #[arg(long, value_name = "N")]
    profile: Option<u32>,
}

#[derive(Subcommand)]
enum ParabolaCommand {
    /// Mean squared density at the focus (gamma = pi/2 closed form).
    Rho2 {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta0: f64,
        /// Parabolic cylinder instead of a parabola of revolution.
        #[arg(long)]
        cylinder: bool,
    },
    /// Conjugate ray pair and path difference at a reflected angle.
    Rays {
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta0: f64,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        /// Mirror scale; the default keeps a/b = 1e-3.
        #[arg(long)]
        b: Option<f64>,
    },
    /// CSV curve of the closed-form focus integral over the aperture.
    Gcurve {
        #[arg(long, default_value_t = 100)]
        n: u32,
        #[arg(long, default_value_t = 0.1)]
        min: f64,
        #[arg(long, default_value_t = 2.0 * PI / 3.0 - 0.01)]
        max: f64,
    },
}

#[derive(Args)]
struct ScatteringArgs {
    /// Material name (looked up in ./materials.json) or a JSON file path.
    #[arg(long)]
    material: String,
    #[arg(long = "lambda-nm")]
    lambda_nm: f64,
    #[arg(long, allow_hyphen_values = true)]
    theta: f64,
    /// Override the material file's temperature.
    #[arg(long)]
    temperature: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    volume: f64,
    #[arg(long = "pol-dot", default_value_t = 1.0, allow_hyphen_values = true)]
    pol_dot: f64,
}

/// The JSON result document. Scalar values always satisfy
/// value = coefficient * scale when both fields are present.
#[derive(Debug, Serialize, Deserialize)]
struct Output {
    command: String,
    units: String,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficient: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    length_scale: Option<f64>,
    inputs: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sign_class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    variant: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    extras: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
    fluid: FluidDoc,
}

#[derive(Debug, Serialize, Deserialize)]
struct FluidDoc {
    hbar: f64,
    rho0: f64,
    #[serde(rename = "cS")]
    c_s: f64,
}

impl Output {
    fn new(command: &str, spec: &FluidSpec, value: f64) -> Self {
        Output {
            command: command.to_owned(),
            units: spec.units().label().to_owned(),
            value,
            coefficient: None,
            scale: None,
            length_scale: None,
            inputs: BTreeMap::new(),
            oracle: None,
            discrepancy_ratio: None,
            sign_class: None,
            variant: None,
            extras: BTreeMap::new(),
            warning: None,
            fluid: FluidDoc {
                hbar: spec.hbar(),
                rho0: spec.rho0(),
                c_s: spec.sound_speed(),
            },
        }
    }

    fn from_geometry(command: &str, spec: &FluidSpec, g: &GeometryResult) -> Self {
        let mut out = Output::new(command, spec, g.value);
        out.coefficient = Some(g.coefficient);
        out.scale = Some(spec.fluctuation_scale(g.length_scale).unwrap_or(f64::NAN));
        out.length_scale = Some(g.length_scale);
        out.inputs = g.inputs.clone();
        out.extras = g.extras.clone();
        if let Some(b) = g.error_bound {
            out.extras.insert("error_bound".to_owned(), b);
        }
        out.warning = g.warning.clone();
        out
    }

    fn input(mut self, name: &str, value: f64) -> Self {
        self.inputs.insert(name.to_owned(), value);
        self
    }

    fn extra(mut self, name: &str, value: f64) -> Self {
        self.extras.insert(name.to_owned(), value);
        self
    }
}

enum Rendered {
    Json(Output),
    Csv(String),
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.class() {
            ErrorClass::Domain => 1,
            ErrorClass::NonConvergence => 2,
        };
        // config problems carry their own exit codes
        let code = if matches!(e, Error::Config(_)) { 65 } else { code };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    return ExitCode::SUCCESS;
                }
                _ => 64,
            };
            eprint!("{e}");
            return ExitCode::from(code);
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

fn load_fluid_spec(path: Option<&Path>) -> Result<FluidSpec, Failure> {
    let chosen: Option<PathBuf> = match path {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os(ENV_CONFIG).map(PathBuf::from),
    };
    match chosen {
        None => Ok(FluidSpec::natural()),
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Failure::new(66, format!("cannot read config {}: {e}", p.display())))?;
            FluidSpec::from_json_str(&text)
                .map_err(|e| Failure::new(65, format!("{} : {e}", p.display())))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let spec = load_fluid_spec(cli.config.as_deref())?;
    let rendered = dispatch(&cli.command, &spec)?;
    let text = match (&rendered, cli.output) {
        (Rendered::Csv(csv), _) => csv.clone(),
        (Rendered::Json(out), Format::Json) => {
            let mut s = serde_json::to_string_pretty(out)
                .map_err(|e| Failure::new(70, format!("serialization failed: {e}")))?;
            s.push('\n');
            s
        }
        (Rendered::Json(out), Format::Csv) => scalar_csv(out),
    };
    match cli.out {
        None => print!("{text}"),
        Some(p) => std::fs::write(&p, text)
            .map_err(|e| Failure::new(74, format!("cannot write {}: {e}", p.display())))?,
    }
    Ok(())
}

/// One-row CSV rendering of a scalar result.
fn scalar_csv(out: &Output) -> String {
    let mut header = Vec::new();
    let mut row = Vec::new();
    for (k, v) in &out.inputs {
        header.push(k.clone());
        row.push(format!("{v:.16e}"));
    }
    header.push("value".into());
    row.push(format!("{:.16e}", out.value));
    if let Some(c) = out.coefficient {
        header.push("coefficient".into());
        row.push(format!("{c:.16e}"));
    }
    if let Some(o) = out.oracle {
        header.push("oracle".into());
        row.push(format!("{o:.16e}"));
    }
    for (k, v) in &out.extras {
        header.push(k.clone());
        row.push(format!("{v:.16e}"));
    }
    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn sign_label(class: SignClass) -> &'static str {
    match class {
        SignClass::Anticorrelated => "anticorrelated",
        SignClass::Correlated => "correlated",
        SignClass::OnCone => "on_cone",
    }
}

fn dispatch(command: &Command, spec: &FluidSpec) -> Result<Rendered, Failure> {
    match command {
        Command::Freespace {
            dx,
            dt,
            variant,
            epsilon,
        } => {
            let sep = SpacetimeSeparation::new(*dx, *dt)?;
            let variant_lib = match variant {
                VariantArg::Printed => Variant::AsPrinted,
                VariantArg::Standard => Variant::Standard,
            };
            let (coeff, length) = correlation_coefficient(spec, &sep, variant_lib)?;
            let scale = spec.fluctuation_scale(length)?;
            let value = coeff * scale;
            let mut out = Output::new("freespace", spec, value)
                .input("dx", *dx)
                .input("dt", *dt);
            out.coefficient = Some(coeff);
            out.scale = Some(scale);
            out.length_scale = Some(length);
            out.sign_class = Some(sign_label(correlation_sign(spec, &sep, variant_lib)).to_owned());
            out.variant = Some(
                match variant {
                    VariantArg::Printed => "printed",
                    VariantArg::Standard => "standard",
                }
                .to_owned(),
            );
            if let Some(eps) = epsilon {
                let oracle = fourier_oracle_extrapolated_from(spec, &sep, *eps)?;
                out.oracle = Some(oracle.value);
                out.discrepancy_ratio = Some(oracle.value / value);
                out = out.extra("oracle_error_estimate", oracle.error_estimate);
            }
            Ok(Rendered::Json(out))
        }

        Command::Squeezed(args) => {
            let state = SqueezeState::new(spec, args.r, args.delta, args.omega, args.k, args.volume)?;
            if let Some(n) = args.profile {
                let n = n.max(2);
                let period = PI / args.omega;
                let mut csv = String::from("t,phase_rad,value_rho2\n");
                for i in 0..n {
                    let t = period * i as f64 / n as f64;
                    let phase = 2.0 * (args.k * args.z - args.omega * t) + args.delta;
                    let v = squeezed_variance(spec, &state, args.z, t);
                    let _ = writeln!(csv, "{t:.16e},{phase:.16e},{v:.16e}");
                }
                return Ok(Rendered::Csv(csv));
            }
            let coeff = squeezed_coefficient(&state, args.z, args.t);
            let prefactor = state.prefactor(spec);
            let value = coeff * prefactor;
            let (min_v, max_v) = squeezed_extrema(spec, &state);
            let mut out = Output::new("squeezed", spec, value)
                .input("r", args.r)
                .input("delta", args.delta)
                .input("omega", args.omega)
                .input("k", args.k)
                .input("V", args.volume)
                .input("z", args.z)
                .input("t", args.t)
                .extra("average", squeezed_average(spec, &state))
                .extra("min", min_v)
                .extra("max", max_v);
            out.coefficient = Some(coeff);
            out.scale = Some(prefactor);
            Ok(Rendered::Json(out))
        }

        Command::Plate { z } => {
            let g = single_plate(spec, *z)?;
            Ok(Rendered::Json(Output::from_geometry("plate", spec, &g)))
        }

        Command::Plates(args) => {
            if let Some(n) = args.profile {
                let n = n.max(1);
                let mut csv = String::from("z,value_printed_rho2,value_image_normalized_rho2\n");
                for i in 1..=n {
                    let z = args.a * i as f64 / (n + 1) as f64;
                    let g = parallel_plates_closed(spec, args.a, z)?;
                    let norm = g.extras["image_sum_normalized"];
                    let _ = writeln!(csv, "{z:.16e},{:.16e},{norm:.16e}", g.value);
                }
                return Ok(Rendered::Csv(csv));
            }
            let z = args.z.expect("clap enforces z without --profile");
            let g = parallel_plates_closed(spec, args.a, z)?;
            let mut out = Output::from_geometry("plates", spec, &g)
                .extra("force_per_area", casimir_force_per_area(spec, args.a)?);
            if args.image_sum {
                let sum = parallel_plates_image_sum(spec, args.a, z, args.nmax)?;
                out.oracle = Some(sum.value);
                out.discrepancy_ratio = Some(sum.value / g.value);
                if let Some(b) = sum.error_bound {
                    out = out.extra("oracle_error_bound", b);
                }
                if out.warning.is_none() {
                    out.warning = sum.warning.clone();
                }
            }
            Ok(Rendered::Json(out))
        }

        Command::Torus { l1, l2, l3, tol } => {
            let g = torus(spec, *l1, *l2, *l3, *tol)?;
            Ok(Rendered::Json(Output::from_geometry("torus", spec, &g)))
        }

        Command::Wedge {
            alpha,
            r,
            theta,
            oracle,
        } => {
            let g = wedge(spec, *alpha, *r, *theta)?;
            let mut out = Output::from_geometry("wedge", spec, &g);
            if *oracle {
                let deltas = default_point_split_deltas();
                let o = point_split_oracle(spec, PointSplitGeometry::Wedge, *alpha, *r, *theta, &deltas)?;
                out.oracle = Some(o.value);
                out.discrepancy_ratio = Some(o.value / g.value);
                out = out.extra("oracle_error_estimate", o.error_estimate);
            }
            Ok(Rendered::Json(out))
        }

        Command::CosmicString { alpha, r } => {
            let g = cosmic_string(spec, *alpha, *r)?;
            Ok(Rendered::Json(Output::from_geometry("string", spec, &g)))
        }

        Command::Parabola { command } => dispatch_parabola(command, spec),

        Command::Scattering(args) => dispatch_scattering(args, spec),
    }
}

fn dispatch_parabola(command: &ParabolaCommand, spec: &FluidSpec) -> Result<Rendered, Failure> {
    match command {
        ParabolaCommand::Rho2 {
            a,
            b,
            theta0,
            cylinder,
        } => {
            let config = MirrorConfig::new(*a, *b, FRAC_PI_2, *theta0)?;
            let kind = if *cylinder {
                MirrorKind::Cylinder
            } else {
                MirrorKind::Revolution
            };
            let g = focus_variance(spec, &config, kind)?;
            Ok(Rendered::Json(Output::from_geometry("parabola rho2", spec, &g)))
        }

        ParabolaCommand::Rays {
            gamma,
            alpha,
            theta0,
            a,
            b,
        } => {
            let b = b.unwrap_or(1000.0 * a);
            let config = MirrorConfig::new(*a, b, *gamma, *theta0)?;
            let pair = config.ray_pair(*alpha)?;
            let mut out = Output::new("parabola rays", spec, pair.dl)
                .input("gamma", *gamma)
                .input("alpha", *alpha)
                .input("theta0", *theta0)
                .input("a", *a)
                .input("b", b)
                .extra("beta", pair.beta)
                .extra("theta", pair.theta)
                .extra("dl1", pair.dl1)
                .extra("dl2", pair.dl2)
                .extra("paired_alpha", pair.alpha);
            out.warning = Some(
                "value is the corrected path difference dl = dl1 - dl2 for the conjugate pair"
                    .to_owned(),
            );
            Ok(Rendered::Json(out))
        }

        ParabolaCommand::Gcurve { n, min, max } => {
            let n = (*n).max(2);
            if !(*min > 0.0 && max > min && *max < 2.0 * PI / 3.0) {
                return Err(Failure::new(
                    1,
                    format!("gcurve range must satisfy 0 < min < max < 2 pi/3, got [{min}, {max}]"),
                ));
            }
            let mut csv = String::from("theta0_rad,g_dimensionless\n");
            for i in 0..n {
                let t = min + (max - min) * i as f64 / (n - 1) as f64;
                let g = focus_integral_closed(t)?;
                let _ = writeln!(csv, "{t:.16e},{g:.16e}");
            }
            Ok(Rendered::Csv(csv))
        }
    }
}

/// Resolve --material: an existing file path wins; otherwise the name is
/// looked up in ./materials.json (an array of material documents).
fn resolve_material(arg: &str) -> Result<(MaterialOptics, FluidSpec), Failure> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::new(66, format!("cannot read {}: {e}", path.display())))?;
        return load_material(&text).map_err(|e| Failure::new(65, e.to_string()));
    }
    let presets = Path::new("materials.json");
    if !presets.exists() {
        return Err(Failure::new(
            66,
            format!(
                "material '{arg}' is not a file and ./materials.json does not exist for name lookup"
            ),
        ));
    }
    let text = std::fs::read_to_string(presets)
        .map_err(|e| Failure::new(66, format!("cannot read materials.json: {e}")))?;
    let docs: Vec<serde_json::Value> = serde_json::from_str(&text)
        .map_err(|e| Failure::new(65, format!("materials.json: expected a JSON array: {e}")))?;
    for doc in docs {
        if doc.get("name").and_then(|v| v.as_str()) == Some(arg) {
            return load_material(&doc.to_string()).map_err(|e| Failure::new(65, e.to_string()));
        }
    }
    Err(Failure::new(
        65,
        format!("material '{arg}' not found in materials.json"),
    ))
}

fn dispatch_scattering(args: &ScatteringArgs, _cli_spec: &FluidSpec) -> Result<Rendered, Failure> {
    let (mut mat, spec) = resolve_material(&args.material)?;
    if let Some(t) = args.temperature {
        mat = MaterialOptics::new(&mat.name, mat.eta, mat.depsdrho, t)?;
    }
    if args.lambda_nm <= 0.0 {
        return Err(Failure::new(1, format!("lambda-nm must be positive, got {}", args.lambda_nm)));
    }
    let c = spec.light_speed();
    let omega = 2.0 * PI * c / (args.lambda_nm * 1e-9);
    let kin = ScatteringKinematics::new(omega, args.theta, args.volume, args.pol_dot)?;
    let (coeff, scale) = zp_cross_section_parts(&spec, &mat, &kin);
    let dsigma = coeff * scale;

    // Brillouin phonon frequency for the thermal factors: the transferred
    // wavevector is q = 2 eta (omega/c) sin(theta/2), so Omega_q = cS q
    let q = 2.0 * mat.eta * omega / c * (0.5 * args.theta).sin().abs();
    let mut out = Output::new("scattering", &spec, dsigma)
        .input("lambda_nm", args.lambda_nm)
        .input("theta", args.theta)
        .input("volume", args.volume)
        .input("pol_dot", args.pol_dot)
        .input("eta", mat.eta)
        .input("depsdrho", mat.depsdrho)
        .input("T", mat.temperature)
        .extra("omega", omega)
        .extra("Omega_q", spec.sound_speed() * q);
    out.coefficient = Some(coeff);
    out.scale = Some(scale);
    if q > 0.0 {
        out = out
            .extra("stokes_factor", stokes_factor(&spec, spec.sound_speed() * q, mat.temperature)?)
            .extra("total_factor", total_factor(&spec, spec.sound_speed() * q, mat.temperature)?);
    }
    match thermal_ratio(&spec, &mat, &kin) {
        Ok(ratio) => {
            out = out.extra("R", ratio);
        }
        Err(_) => {
            out.warning = Some(
                "T = 0: zero-point scattering is the sole cross section; R is undefined".to_owned(),
            );
        }
    }
    Ok(Rendered::Json(out))
}
