//! Command line parsing and the subcommands.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use fintop_core::consonance::{check_consonance, scott_open_families, Mode};
use fintop_core::poset::named;
use fintop_core::powerspace::product_space;
use fintop_core::suite::run_instance;
use fintop_core::topology::product_scott_check;
use fintop_core::transport::{
    product_section_retraction, transport_co_consonance, transport_consonance, transport_samples,
    verify_retraction, Direction, PowerContext, Retraction,
};
use fintop_core::{
    Caps, ContinuousMap, Error, Extent, FinitePoset, FiniteSpace, IndexedLattice, PowerKind,
    PowerSpace, ScottOpenFamily, Subset,
};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error as ThisError;

use crate::corpus::{generate_corpus, GenSpec, GenSpecError};
use crate::instance::{parse_instance, InstanceError, InstanceFile};
use crate::report::{certificate, labels_of, Check, InstanceEntry, Report, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Used by `suite` when neither `--corpus` nor `--gen` is given.
pub const DEFAULT_GEN: &str = "max_size=5,min_size=5,count=25,seed=1,all_up_to=4";

#[derive(Debug, Parser)]
#[command(name = "fintop", version, about = "Checks order-theoretic and topological properties of finite posets")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest carrier or powerspace built; lattices and family
    /// enumerations are capped at sixteen times this.
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<usize>,
    /// Seed for generated corpora when `--gen` sets none.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Record elapsed milliseconds (makes output run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PowerArg {
    Smyth,
    Lower,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Consonant,
    CoConsonant,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Space properties, sobriety, consonance and order classification.
    Props {
        /// Instance file.
        file: PathBuf,
    },
    /// The lattices of open and of closed sets.
    Lattice {
        /// Instance file.
        file: PathBuf,
    },
    /// A powerspace of one file, or the product of two.
    Powerspace {
        /// Smyth (nonempty up-sets), lower (down-sets) or product.
        #[arg(long, value_enum)]
        kind: PowerArg,
        /// Instance file.
        file: PathBuf,
        /// Second factor for `--kind product` (defaults to the first).
        file2: Option<PathBuf>,
    },
    /// Consonance or co-consonance, family by family.
    Consonance {
        /// Witness sets: one compact set, or a finite family of closed sets.
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Include every certificate in the report.
        #[arg(long)]
        witnesses: bool,
        /// Instance file.
        file: PathBuf,
    },
    /// Transport certificates along a retraction or to/from a powerspace.
    Transport {
        /// 3.8/3.9: consonance/co-consonance along a retraction. 4.2/4.4:
        /// Smyth powerspace down/up. 4.6/4.9: lower powerspace down/up.
        #[arg(long, value_parser = ["3.8", "3.9", "4.2", "4.4", "4.6", "4.9"])]
        theorem: String,
        /// Instance file.
        file: PathBuf,
        /// The space `Y` that the file is a retract of (retract transports only). Without it
        /// `Y` is the product with a two-element chain.
        #[arg(long, requires_all = ["section", "retraction"])]
        into: Option<PathBuf>,
        /// The section `f: X -> Y` as `x=y` pairs.
        #[arg(long, requires = "into")]
        section: Option<String>,
        /// The retraction `g: Y -> X` as `y=x` pairs.
        #[arg(long, requires = "into")]
        retraction: Option<String>,
        /// Labels of an open set of the file's space to transport at.
        #[arg(long)]
        target: Option<String>,
        /// Include every certificate in the report.
        #[arg(long)]
        witnesses: bool,
    },
    /// Every check on every instance of a corpus.
    Suite {
        /// Directory of instance files.
        #[arg(long, conflicts_with = "gen")]
        corpus: Option<PathBuf>,
        /// Generated corpus, e.g. `max_size=4,count=25,seed=1`. The
        /// default corpus is used when neither option is given.
        #[arg(long)]
        gen: Option<String>,
    },
    /// Writes a generated corpus as instance files.
    Generate {
        /// Corpus to generate.
        #[arg(long, default_value = DEFAULT_GEN)]
        gen: String,
        /// Directory to write `<name>.poset` files into (created if missing).
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, ThisError)]
pub enum AppError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Instance {
        path: String,
        source: InstanceError,
    },
    #[error("bad corpus spec: {0}")]
    Gen(#[from] GenSpecError),
    #[error("{0}")]
    Usage(String),
}

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, AppError> {
    let caps = cli.cap.map(Caps::with_points).unwrap_or_default();
    let ctx = Ctx {
        caps,
        timings: cli.timings,
    };
    let report = match &cli.command {
        Command::Props { file } => single("props", file, |f| ctx.props(f))?,
        Command::Lattice { file } => single("lattice", file, |f| ctx.lattice(f))?,
        Command::Powerspace { kind, file, file2 } => {
            let second = file2.as_deref().map(load).transpose()?;
            single("powerspace", file, |f| ctx.powerspace(*kind, f, second.as_ref()))?
        }
        Command::Consonance {
            mode,
            witnesses,
            file,
        } => single("consonance", file, |f| Ok(ctx.consonance(*mode, *witnesses, f)))?,
        Command::Transport {
            theorem,
            file,
            into,
            section,
            retraction,
            target,
            witnesses,
        } => {
            let spec = TransportSpec {
                theorem,
                into: into.as_deref().map(load).transpose()?,
                section: section.as_deref(),
                retraction: retraction.as_deref(),
                target: target.as_deref(),
                witnesses: *witnesses,
            };
            single("transport", file, |f| ctx.transport(&spec, f))?
        }
        Command::Suite { corpus, gen } => {
            let files = match (corpus, gen) {
                (Some(dir), _) => load_dir(dir)?,
                (None, g) => {
                    let mut base = GenSpec::default();
                    if let Some(seed) = cli.seed {
                        base.seed = seed;
                    }
                    let spec = match g {
                        Some(text) => GenSpec::parse_with(text, GenSpec { seed: base.seed, ..GenSpec::new(1, 0, 0) })?,
                        None => base,
                    };
                    generate_corpus(&spec)
                }
            };
            ctx.suite(&files)?
        }
        Command::Generate { gen, out: dir } => {
            let spec = GenSpec::parse_with(gen, GenSpec {
                seed: cli.seed.unwrap_or(0),
                ..GenSpec::new(1, 0, 0)
            })?;
            write_corpus(dir, &generate_corpus(&spec))?;
            let _ = writeln!(out, "wrote {}", dir.display());
            return Ok(EXIT_OK);
        }
    };
    let text = if cli.json { report.to_json() } else { report.to_text() };
    out.write_all(text.as_bytes()).map_err(|source| AppError::Io {
        path: "<stdout>".into(),
        source,
    })?;
    Ok(if report.any_failed() { EXIT_FAILED } else { EXIT_OK })
}

pub fn load(path: &Path) -> Result<InstanceFile, AppError> {
    let text = std::fs::read_to_string(path).map_err(|source| AppError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
    parse_instance(&text, stem).map_err(|source| AppError::Instance {
        path: path.display().to_string(),
        source,
    })
}

/// Every regular file in `dir` not starting with `.`, sorted by path.
pub fn load_dir(dir: &Path) -> Result<Vec<InstanceFile>, AppError> {
    let io = |source| AppError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut paths = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let entry = entry.map_err(io)?;
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        if entry.file_type().map_err(io)?.is_file() && !hidden {
            paths.push(entry.path());
        }
    }
    paths.sort();
    let files = paths.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
    let mut names = BTreeSet::new();
    for f in &files {
        if !names.insert(f.name.as_str()) {
            return Err(usage(format!("duplicate instance name `{}` in corpus", f.name)));
        }
    }
    Ok(files)
}

pub fn write_corpus(dir: &Path, files: &[InstanceFile]) -> Result<(), AppError> {
    let io = |source| AppError::Io {
        path: dir.display().to_string(),
        source,
    };
    std::fs::create_dir_all(dir).map_err(io)?;
    for f in files {
        std::fs::write(dir.join(format!("{}.poset", f.name)), f.to_string()).map_err(io)?;
    }
    Ok(())
}

fn single(
    command: &str,
    path: &Path,
    body: impl FnOnce(&InstanceFile) -> Result<Vec<Check>, AppError>,
) -> Result<Report, AppError> {
    let file = load(path)?;
    let checks = body(&file)?;
    Ok(Report::new(
        command,
        vec![InstanceEntry {
            name: file.name.clone(),
            size: file.elements.len(),
            checks,
            elapsed_ms: None,
        }],
    ))
}

fn space_of(file: &InstanceFile) -> Result<FiniteSpace, AppError> {
    let p = file.poset().map_err(|source| AppError::Instance {
        path: file.name.clone(),
        source,
    })?;
    Ok(FiniteSpace::new(p))
}

/// Files a library error as a check: over-cap work is skipped, anything
/// else fails.
fn error_check(id: &str, e: Error) -> Check {
    match e {
        Error::CapExceeded { what, cap } => Check::new(id, Verdict::Skipped, format!("{what} exceeds cap {cap}")),
        other => Check::new(id, Verdict::Fail, other.to_string()),
    }
}

fn sets(space: &FiniteSpace, family: &[Subset]) -> Vec<Vec<String>> {
    family.iter().map(|s| labels_of(space, s)).collect()
}

fn lattice_json(space: &FiniteSpace, l: &IndexedLattice) -> serde_json::Value {
    json!({
        "sets": sets(space, l.sets()),
        "covers": l.order().covers(),
    })
}

struct TransportSpec<'a> {
    theorem: &'a str,
    into: Option<InstanceFile>,
    section: Option<&'a str>,
    retraction: Option<&'a str>,
    target: Option<&'a str>,
    witnesses: bool,
}

struct Ctx {
    caps: Caps,
    timings: bool,
}

impl Ctx {
    fn timed(&self, f: impl FnOnce() -> Check) -> Check {
        let start = Instant::now();
        let mut c = f();
        if self.timings {
            c.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        c
    }

    fn props(&self, file: &InstanceFile) -> Result<Vec<Check>, AppError> {
        let x = space_of(file)?;
        let caps = self.caps;
        let mut checks = Vec::new();
        checks.push(self.timed(|| match x.sobriety_report(caps.families) {
            Ok(s) => Check::pass_if(
                "space.sober",
                s.is_sober && s.closure_identity,
                format!("{} irreducible closed sets, each the closure of one point", s.irreducibles.len()),
            )
            .with_data(json!({ "irreducibles": sets(&x, &s.irreducibles) })),
            Err(e) => error_check("space.sober", e),
        }));
        match x.properties(caps.families) {
            Ok(p) => {
                for (id, holds) in [
                    ("space.well-filtered", p.well_filtered),
                    ("space.coherent", p.coherent),
                    ("space.locally-compact", p.locally_compact),
                    ("space.core-compact", p.core_compact),
                ] {
                    checks.push(Check::pass_if(id, holds, holds.to_string()));
                }
                let violation = p.ic_violation.as_ref().map(|v| {
                    json!({ "u": labels_of(&x, &v.u), "v": labels_of(&x, &v.v), "w": labels_of(&x, &v.w) })
                });
                let c = x.order().classify();
                checks.push(
                    Check::new(
                        "space.classification",
                        Verdict::Pass,
                        format!(
                            "chain {}, lattice {}, complete lattice {}, continuous {}, frame {}, intersection-compatible {}",
                            c.is_chain, c.is_lattice, c.is_complete_lattice, c.is_continuous, c.is_frame, p.intersection_compatible
                        ),
                    )
                    .with_data(json!({
                        "chain": c.is_chain,
                        "lattice": c.is_lattice,
                        "complete_lattice": c.is_complete_lattice,
                        "continuous": c.is_continuous,
                        "frame": c.is_frame,
                        "intersection_compatible": p.intersection_compatible,
                        "ic_violation": violation,
                    })),
                );
            }
            Err(e) => checks.push(error_check("space.properties", e)),
        }
        for mode in [ModeArg::Consonant, ModeArg::CoConsonant] {
            checks.extend(self.consonance(mode, false, file));
        }
        Ok(checks)
    }

    fn lattice(&self, file: &InstanceFile) -> Result<Vec<Check>, AppError> {
        let x = space_of(file)?;
        let cap = self.caps.families;
        let (opens, closed) = match (x.open_set_lattice(cap), x.closed_set_lattice(cap)) {
            (Ok(o), Ok(c)) => (o, c),
            (Err(e), _) | (_, Err(e)) => return Ok(vec![error_check("lattice.opens", e)]),
        };
        let o_frame = opens.order().is_frame();
        let c_frame = closed.order().is_frame();
        let complements_match = opens.len() == closed.len()
            && opens.sets().iter().enumerate().all(|(i, u)| {
                let ci = closed.index_of(&u.complement());
                ci.is_some_and(|ci| {
                    (0..opens.len()).all(|j| {
                        let cj = closed.index_of(&opens.set(j).complement()).expect("complement is closed");
                        opens.order().leq(i, j) == closed.order().leq(cj, ci)
                    })
                })
            });
        Ok(vec![
            Check::pass_if("lattice.opens", o_frame, format!("{} open sets, frame {o_frame}", opens.len()))
                .with_data(lattice_json(&x, &opens)),
            Check::pass_if("lattice.closed", c_frame, format!("{} closed sets, distributive {c_frame}", closed.len()))
                .with_data(lattice_json(&x, &closed)),
            Check::pass_if(
                "lattice.complement-duality",
                complements_match,
                "complement is an order-reversing bijection between opens and closed sets",
            ),
        ])
    }

    fn powerspace(&self, kind: PowerArg, file: &InstanceFile, second: Option<&InstanceFile>) -> Result<Vec<Check>, AppError> {
        let x = space_of(file)?;
        let kind = match kind {
            PowerArg::Smyth => PowerKind::Smyth,
            PowerArg::Lower => PowerKind::Lower,
            PowerArg::Product => {
                let y = match second {
                    Some(f) => space_of(f)?,
                    None => x.clone(),
                };
                return Ok(vec![self.product(&x, &y)]);
            }
        };
        if second.is_some() {
            return Err(usage("a second file is only used with --kind product"));
        }
        let ps = match PowerSpace::new(kind, &x, self.caps.points) {
            Ok(ps) => ps,
            Err(e) => return Ok(vec![error_check("powerspace.points", e)]),
        };
        let law = ps.specialization_law_holds();
        let (name, relation) = match kind {
            PowerKind::Smyth => ("smyth", "reverse inclusion"),
            PowerKind::Lower => ("lower", "inclusion"),
        };
        let points = Check::pass_if(
            "powerspace.points",
            law,
            format!("{} points of the {name} powerspace; specialization is {relation}: {law}", ps.len()),
        )
        .metric("points", ps.len())
        .with_data(json!({
            "points": sets(&x, ps.points()),
            "covers": ps.space().order().covers(),
        }));
        let laws = match self.extent_laws(&x, &ps) {
            Ok(c) => c,
            Err(e) => error_check("powerspace.laws", e),
        };
        Ok(vec![points, laws])
    }

    /// `□(U∩V) = □U∩□V` on the Smyth powerspace, `◊(U∪V) = ◊U∪◊V` on the
    /// lower one, over all pairs of opens.
    fn extent_laws(&self, x: &FiniteSpace, ps: &PowerSpace) -> Result<Check, Error> {
        let opens = x.opens(self.caps.families)?;
        let mut pairs = 0;
        for (i, u) in opens.iter().enumerate() {
            for v in &opens[i..] {
                pairs += 1;
                let ok = match ps.kind() {
                    PowerKind::Smyth => {
                        ps.extent(Extent::Box, &u.intersection(v))?
                            == ps.extent(Extent::Box, u)?.intersection(&ps.extent(Extent::Box, v)?)
                    }
                    PowerKind::Lower => {
                        ps.extent(Extent::Diamond, &u.union(v))?
                            == ps.extent(Extent::Diamond, u)?.union(&ps.extent(Extent::Diamond, v)?)
                    }
                };
                if !ok {
                    return Ok(Check::new(
                        "powerspace.laws",
                        Verdict::Fail,
                        format!("fails on U={}, V={}", x.show(u), x.show(v)),
                    ));
                }
            }
        }
        let law = match ps.kind() {
            PowerKind::Smyth => "□(U∩V) = □U∩□V",
            PowerKind::Lower => "◊(U∪V) = ◊U∪◊V",
        };
        Ok(Check::new("powerspace.laws", Verdict::Pass, format!("{law} on all open pairs")).metric("open_pairs", pairs))
    }

    fn product(&self, x: &FiniteSpace, y: &FiniteSpace) -> Check {
        let id = "powerspace.product";
        let xy = match product_space(x, y) {
            Ok(s) => s,
            Err(e) => return error_check(id, e),
        };
        match product_scott_check(x.order(), y.order(), self.caps.families) {
            Ok(ok) => Check::pass_if(
                id,
                ok,
                format!("{} points; Scott topology of the product is the product topology: {ok}", xy.len()),
            )
            .metric("points", xy.len())
            .with_data(json!({ "points": xy.labels(), "covers": xy.order().covers() })),
            Err(e) => error_check(id, e),
        }
    }

    fn consonance(&self, mode: ModeArg, witnesses: bool, file: &InstanceFile) -> Vec<Check> {
        let (mode, id) = match mode {
            ModeArg::Consonant => (Mode::Consonant, "consonance.consonant"),
            ModeArg::CoConsonant => (Mode::CoConsonant, "consonance.co-consonant"),
        };
        let x = match space_of(file) {
            Ok(x) => x,
            Err(e) => return vec![Check::new(id, Verdict::Fail, e.to_string())],
        };
        vec![self.timed(|| {
            let report = match check_consonance(&x, mode, self.caps) {
                Ok(r) => r,
                Err(e) => return error_check(id, e),
            };
            let lattice = match x.open_set_lattice(self.caps.families) {
                Ok(l) => l,
                Err(e) => return error_check(id, e),
            };
            let reverified = report.certificates.iter().all(|c| c.verify(&x, &lattice));
            let ok = report.holds && reverified && report.formulations_agree();
            let detail = match report.quantified {
                Some(q) => format!(
                    "{} families, {} certificates re-verified {reverified}, quantified {q}, topological {}",
                    report.families,
                    report.certificates.len(),
                    report.topological
                ),
                None => format!("family enumeration over cap, topological {}", report.topological),
            };
            let mut c = Check::pass_if(id, ok, detail)
                .metric("families", report.families)
                .metric("certificates", report.certificates.len())
                .metric("empty_targets", report.empty_targets);
            if witnesses {
                c.certificates = Some(report.certificates.iter().map(|w| certificate(&x, &lattice, w, &[])).collect());
            }
            c
        })]
    }

    fn transport(&self, spec: &TransportSpec, file: &InstanceFile) -> Result<Vec<Check>, AppError> {
        let x = space_of(file)?;
        let lat_x = match x.open_set_lattice(self.caps.families) {
            Ok(l) => l,
            Err(e) => return Ok(vec![error_check("transport.setup", e)]),
        };
        let target = match spec.target {
            Some(t) => Some(parse_open(&x, &lat_x, t)?),
            None => None,
        };
        match spec.theorem {
            "3.8" | "3.9" => {
                let mode = if spec.theorem == "3.8" { Mode::Consonant } else { Mode::CoConsonant };
                let r = match &spec.into {
                    Some(y) => {
                        let y = space_of(y)?;
                        let f = parse_map(&x, &y, spec.section.unwrap_or_default(), "--section")?;
                        let g = parse_map(&y, &x, spec.retraction.unwrap_or_default(), "--retraction")?;
                        let maps = ContinuousMap::new(x.clone(), y.clone(), f)
                            .and_then(|f| Ok((f, ContinuousMap::new(y, x.clone(), g)?)));
                        match maps.and_then(|(f, g)| verify_retraction(f, g, false)) {
                            Ok(r) => r,
                            Err(e) => return Ok(vec![error_check("transport.retraction", e)]),
                        }
                    }
                    None => {
                        let c2 = FiniteSpace::new(named::chain(2));
                        match product_section_retraction(&x, &c2, 0) {
                            Ok(r) => r,
                            Err(e) => return Ok(vec![error_check("transport.retraction", e)]),
                        }
                    }
                };
                Ok(vec![self.timed(|| self.retract_transport(&r, &lat_x, mode, target, spec.witnesses))])
            }
            theorem => {
                let (kind, direction, id) = match theorem {
                    "4.2" => (PowerKind::Smyth, Direction::Down, "transport.smyth-down"),
                    "4.4" => (PowerKind::Smyth, Direction::Up, "transport.smyth-up"),
                    "4.6" => (PowerKind::Lower, Direction::Down, "transport.lower-down"),
                    _ => (PowerKind::Lower, Direction::Up, "transport.lower-up"),
                };
                Ok(vec![self.timed(|| self.power_transport(&x, kind, direction, id, target, spec.witnesses))])
            }
        }
    }

    fn retract_transport(
        &self,
        r: &Retraction,
        lat_x: &IndexedLattice,
        mode: Mode,
        target: Option<usize>,
        witnesses: bool,
    ) -> Check {
        let id = match mode {
            Mode::Consonant => "transport.retract-consonant",
            Mode::CoConsonant => "transport.retract-co-consonant",
        };
        let families = match scott_open_families(lat_x, self.caps.families) {
            Ok(f) => f,
            Err(e) => return error_check(id, e),
        };
        let mut certs = Vec::new();
        let mut count = 0;
        for family in &families {
            for u in family.members().iter() {
                if lat_x.set(u).is_empty() || target.is_some_and(|t| t != u) {
                    continue;
                }
                let t = match mode {
                    Mode::Consonant => transport_consonance(r, lat_x, family, u, self.caps),
                    Mode::CoConsonant => transport_co_consonance(r, lat_x, family, u, self.caps),
                };
                let t = match t {
                    Ok(t) => t,
                    Err(e) => return error_check(id, e),
                };
                if !t.certificate.verify(r.x(), lat_x) {
                    return Check::new(
                        id,
                        Verdict::Fail,
                        format!("transported certificate for U={} fails to verify", r.x().show(lat_x.set(u))),
                    );
                }
                count += 1;
                if witnesses {
                    certs.push(certificate(r.x(), lat_x, &t.certificate, &t.trace));
                }
            }
        }
        let mut c = Check::new(
            id,
            Verdict::Pass,
            format!(
                "{count} certificates transported from a {}-point space and re-verified",
                r.y().len()
            ),
        )
        .metric("families", families.len())
        .metric("certificates", count);
        if witnesses {
            c.certificates = Some(certs);
        }
        c
    }

    fn power_transport(
        &self,
        x: &FiniteSpace,
        kind: PowerKind,
        direction: Direction,
        id: &str,
        target: Option<usize>,
        witnesses: bool,
    ) -> Check {
        let ctx = match PowerContext::new(x, kind, self.caps) {
            Ok(c) => c,
            Err(e) => return error_check(id, e),
        };
        let samples = match target {
            None => transport_samples(&ctx, direction),
            Some(u) => target_samples(&ctx, direction, u, self.caps),
        };
        let samples = match samples {
            Ok(s) => s,
            Err(e) => return error_check(id, e),
        };
        let mut certs = Vec::new();
        for (family, t) in &samples {
            let tr = match ctx.transport(direction, family, *t) {
                Ok(tr) => tr,
                Err(Error::NotIntersectionCompatible { u, v, w }) => {
                    return Check::new(
                        id,
                        Verdict::Fail,
                        format!("not intersection-compatible: U={}, V={}, W={}", x.show(&u), x.show(&v), x.show(&w)),
                    )
                }
                Err(e) => return error_check(id, e),
            };
            if !tr.certificate.verify(&tr.space, &tr.lattice) {
                return Check::new(id, Verdict::Fail, "transported certificate fails to verify");
            }
            if witnesses {
                certs.push(certificate(&tr.space, &tr.lattice, &tr.certificate, &tr.trace));
            }
        }
        let mut c = Check::new(
            id,
            Verdict::Pass,
            format!("{} families transported and re-verified", samples.len()),
        )
        .metric("certificates", samples.len())
        .metric("power_points", ctx.power().len());
        if witnesses {
            c.certificates = Some(certs);
        }
        c
    }

    fn suite(&self, files: &[InstanceFile]) -> Result<Report, AppError> {
        let posets = files
            .iter()
            .map(|f| Ok((f.name.clone(), space_of(f)?.order().clone())))
            .collect::<Result<Vec<(String, FinitePoset)>, AppError>>()?;
        let mut entries: Vec<InstanceEntry> = posets
            .par_iter()
            .map(|(name, p)| {
                let start = Instant::now();
                let mut e = InstanceEntry::from(&run_instance(name, p, self.caps));
                if self.timings {
                    e.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                }
                e
            })
            .collect();
        entries.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(Report::new("suite", entries))
    }
}

/// With a target `U`: on the way down every Scott-open family of `O(X)`
/// containing `U`; on the way up the principal family of `□U` or `◊U`.
fn target_samples(
    ctx: &PowerContext,
    direction: Direction,
    u: usize,
    caps: Caps,
) -> Result<Vec<(Subset, usize)>, Error> {
    match direction {
        Direction::Down => Ok(scott_open_families(ctx.base_lattice(), caps.families)?
            .into_iter()
            .filter(|f| f.contains(u))
            .map(|f| (f.members().clone(), u))
            .collect()),
        Direction::Up => {
            let set = ctx.base_lattice().set(u);
            let extent = match ctx.power().kind() {
                PowerKind::Smyth => Extent::Box,
                PowerKind::Lower => Extent::Diamond,
            };
            let basic = ctx.power().extent(extent, set)?;
            let lat = ctx.power_lattice();
            let i = lat.index_of(&basic).expect("basic opens are open");
            let family = ScottOpenFamily::principal(lat, i)?;
            Ok(vec![(family.members().clone(), i)])
        }
    }
}

fn label_index(space: &FiniteSpace, label: &str, what: &str) -> Result<usize, AppError> {
    space
        .order()
        .index_of(label)
        .ok_or_else(|| usage(format!("{what}: unknown label `{label}`")))
}

fn split_items(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty())
}

/// A nonempty open set given by its labels.
fn parse_open(x: &FiniteSpace, lat: &IndexedLattice, text: &str) -> Result<usize, AppError> {
    let mut s = x.empty_set();
    for item in split_items(text) {
        s.insert(label_index(x, item, "--target")?);
    }
    if s.is_empty() {
        return Err(usage("--target: empty set"));
    }
    lat.index_of(&s)
        .ok_or_else(|| usage(format!("--target: {} is not open", x.show(&s))))
}

/// A total map given as `a=b` pairs.
fn parse_map(from: &FiniteSpace, to: &FiniteSpace, text: &str, what: &str) -> Result<Vec<usize>, AppError> {
    let mut map = vec![None; from.len()];
    for item in split_items(text) {
        let (a, b) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("{what}: expected `a=b`, found `{item}`")))?;
        let a = label_index(from, a, what)?;
        if map[a].is_some() {
            return Err(usage(format!("{what}: `{}` assigned twice", from.labels()[a])));
        }
        map[a] = Some(label_index(to, b, what)?);
    }
    map.iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| usage(format!("{what}: no image for `{}`", from.labels()[i]))))
        .collect()
}
