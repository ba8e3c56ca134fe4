//! Command-line front end: every verb prints one JSON document carrying `"schema": 1`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncpfiber_core::homology::HomologyEntry;
use ncpfiber_core::{lcc, monodromy, morse};
use ncpfiber_core::{Error, FpComplex, FqComplex, GroupFamily, HomologyGroup, NcpLattice, ReflectionGroup, XpWindow};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ncpfiber", version, about = "Non-crossing partition models of Milnor fibers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Group spec: A<n>, B<n>, D<n> or I2_<m>.
    #[arg(value_name = "GROUP")]
    group: Option<String>,
    /// Group spec, as an alternative to the positional argument.
    #[arg(long = "group", value_name = "GROUP")]
    group_flag: Option<String>,
    /// Coxeter element to use in place of the canonical one.
    #[arg(long)]
    gamma: Option<String>,
    /// Write JSON here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Reserved; the computations are deterministic.
    #[arg(long, hide = true)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GroupAction {
    Info,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NcpAction {
    Export,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FiberAction {
    Build,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    Fp,
    Fq,
    Lcc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Morse,
    Incidence,
    Lattice,
    Cone,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Group data: order, reflections, Coxeter element.
    Group {
        action: GroupAction,
        #[command(flatten)]
        common: Common,
    },
    /// The non-crossing partition lattice [e, γ].
    Ncp {
        action: NcpAction,
        #[command(flatten)]
        common: Common,
    },
    /// Cells and boundary matrices of F̂_P or F̂_Q.
    Fiber {
        action: FiberAction,
        #[arg(long, value_enum, default_value = "fp")]
        space: Space,
        #[command(flatten)]
        common: Common,
    },
    /// Integral homology of F̂_P, F̂_Q or the lattice chain complex.
    Homology {
        #[arg(long, value_enum, default_value = "fp")]
        space: Space,
        #[command(flatten)]
        common: Common,
    },
    /// Induced monodromy action on homology.
    Monodromy {
        #[arg(long, value_enum, default_value = "fp")]
        space: Space,
        /// Largest order searched for.
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Check a structural property; exits 1 if it fails.
    Verify {
        property: Property,
        /// Height window `lo:hi` for morse and incidence.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
        window: Option<(i64, i64)>,
        #[command(flatten)]
        common: Common,
    },
    /// The chain complex built from truncated lattices.
    Lcc {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("lower bound: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("upper bound: {e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

struct Outcome {
    doc: Value,
    ok: bool,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome { doc, ok: true }
    }
}

fn with_schema(mut doc: Value) -> Value {
    if let Value::Object(map) = &mut doc {
        map.insert("schema".into(), json!(1));
    }
    doc
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn group_of(common: &Common) -> Result<Arc<ReflectionGroup>, Failure> {
    let spec = match (&common.group, &common.group_flag) {
        (Some(a), Some(b)) if a != b => return Err(Failure::Usage(format!("conflicting groups {a} and {b}"))),
        (Some(s), _) | (None, Some(s)) => s,
        (None, None) => return Err(Failure::Usage("missing group spec".into())),
    };
    let family: GroupFamily = spec.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    ReflectionGroup::new(family).map(Arc::new).map_err(|e| Failure::Usage(e.to_string()))
}

fn lattice_of(common: &Common) -> Result<Arc<NcpLattice>, Failure> {
    let g = group_of(common)?;
    let lattice = match &common.gamma {
        Some(text) => {
            let gamma = g.parse_element(text).map_err(|e| Failure::Usage(e.to_string()))?;
            NcpLattice::new(g, gamma).map_err(|e| match e {
                Error::NotCoxeter(_) => Failure::Usage(e.to_string()),
                other => Failure::Compute(other),
            })?
        }
        None => NcpLattice::canonical(g)?,
    };
    Ok(Arc::new(lattice))
}

fn homology_doc(group: &str, space: &str, h: &[HomologyGroup]) -> Value {
    let entries: Vec<HomologyEntry> = h.iter().enumerate().map(|(d, g)| HomologyEntry::new(d as i64, g)).collect();
    json!({
        "group": group,
        "space": space,
        "betti": h.iter().map(|g| g.betti).collect::<Vec<_>>(),
        "homology": entries,
    })
}

fn default_window(lattice: &NcpLattice) -> (i64, i64) {
    let n = lattice.rank() as i64;
    (-(n + 1), 2 * n)
}

fn execute(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Group { action: GroupAction::Info, common } => {
            let g = group_of(common)?;
            let gamma = match &common.gamma {
                Some(text) => {
                    let id = g.parse_element(text).map_err(|e| Failure::Usage(e.to_string()))?;
                    if !g.is_coxeter_element(id) {
                        return Err(Failure::Usage(format!("{text} is not a Coxeter element")));
                    }
                    id
                }
                None => g.gamma(),
            };
            Ok(Outcome::ok(json!({
                "group": g.family().to_string(),
                "rank": g.rank(),
                "order": g.order(),
                "reflections": g.reflections().len(),
                "simple_reflections": g.simple_reflections().iter().map(|&s| g.repr(s)).collect::<Vec<_>>(),
                "gamma": g.repr(gamma),
                "coxeter_number": g.element_order(gamma),
            })))
        }
        Command::Ncp { action: NcpAction::Export, common } => Ok(Outcome::ok(to_json(&lattice_of(common)?.export()))),
        Command::Fiber { action: FiberAction::Build, space, common } => {
            let fp = FpComplex::build(lattice_of(common)?)?;
            let doc = match space {
                Space::Fp => to_json(&fp.export()),
                Space::Fq => to_json(&FqComplex::build(&fp)?.export()),
                Space::Lcc => return Err(Failure::Usage("fiber build takes --space fp or fq".into())),
            };
            Ok(Outcome::ok(doc))
        }
        Command::Homology { space, common } => {
            let fp = FpComplex::build(lattice_of(common)?)?;
            let group = fp.lattice().group().family().to_string();
            let h = match space {
                Space::Fp => fp.complex().homology()?,
                Space::Fq => FqComplex::build(&fp)?.complex().homology()?,
                Space::Lcc => lcc::build_lattice_chain_complex(fp.lattice())?.homology()?,
            };
            let name = match space {
                Space::Fp => "fp",
                Space::Fq => "fq",
                Space::Lcc => "lcc",
            };
            Ok(Outcome::ok(homology_doc(&group, name, &h)))
        }
        Command::Monodromy { space, cap, common } => {
            let fp = FpComplex::build(lattice_of(common)?)?;
            let cap = cap.unwrap_or_else(|| monodromy::default_cap(fp.lattice()));
            let report = match space {
                Space::Fp => monodromy::fp_report(&fp, cap)?,
                Space::Fq => monodromy::fq_report(&fp, &FqComplex::build(&fp)?, cap)?,
                Space::Lcc => return Err(Failure::Usage("monodromy takes --space fp or fq".into())),
            };
            Ok(Outcome { ok: report.ok(), doc: to_json(&report) })
        }
        Command::Verify { property, window, common } => verify(*property, *window, common),
        Command::Lcc { common } => {
            let fp = FpComplex::build(lattice_of(common)?)?;
            let report = lcc::lcc_report(&fp)?;
            Ok(Outcome { ok: report.ok(), doc: to_json(&report) })
        }
    }
}

fn verify(property: Property, window: Option<(i64, i64)>, common: &Common) -> Result<Outcome, Failure> {
    if property == Property::Lattice {
        let g = group_of(common)?;
        return Ok(match lattice_of(common) {
            Ok(l) => Outcome::ok(json!({ "is_lattice": true, "elements": l.len() })),
            Err(Failure::Compute(Error::Structural(msg))) => Outcome {
                doc: json!({ "group": g.family().to_string(), "is_lattice": false, "reason": msg }),
                ok: false,
            },
            Err(other) => return Err(other),
        });
    }
    let lattice = lattice_of(common)?;
    match property {
        Property::Morse | Property::Incidence => {
            let (lo, hi) = window.unwrap_or_else(|| default_window(&lattice));
            let w = XpWindow::build(lattice, lo, hi)?;
            Ok(if property == Property::Morse {
                let r = morse::verify_matching(&w)?;
                Outcome { ok: r.ok(), doc: to_json(&r) }
            } else {
                let r = morse::verify_incidence(&w)?;
                Outcome { ok: r.holds, doc: to_json(&r) }
            })
        }
        Property::Cone => {
            let fp = FpComplex::build(lattice)?;
            let checks = (0..fp.lattice().rank())
                .map(|p| lcc::mapping_cone_check(&fp, p))
                .collect::<ncpfiber_core::Result<Vec<_>>>()?;
            let ok = checks.iter().all(lcc::ConeCheck::ok);
            Ok(Outcome {
                ok,
                doc: json!({
                    "group": fp.lattice().group().family().to_string(),
                    "ok": ok,
                    "checks": to_json(&checks),
                }),
            })
        }
        Property::Lattice => unreachable!("handled above"),
    }
}

fn output_path(command: &Command) -> Option<&PathBuf> {
    let common = match command {
        Command::Group { common, .. }
        | Command::Ncp { common, .. }
        | Command::Fiber { common, .. }
        | Command::Homology { common, .. }
        | Command::Monodromy { common, .. }
        | Command::Verify { common, .. }
        | Command::Lcc { common } => common,
    };
    common.output.as_ref()
}

/// Parses `args` (including the program name), runs the verb and writes JSON
/// to `out` or to `--output`. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAILED;
        }
    };
    let text = serde_json::to_string_pretty(&with_schema(outcome.doc)).expect("JSON values serialize");
    let written = match output_path(&cli.command) {
        Some(path) => std::fs::write(path, format!("{text}\n")),
        None => writeln!(out, "{text}"),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_FAILED;
    }
    if outcome.ok {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
