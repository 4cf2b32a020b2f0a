mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use frankl_core::analysis::{
    averaged_frankl, comodernistic_violation, dual_semimodularity_violation, frankl_certify,
    has_left_modular_maximal_chain, has_sufficient_condition, left_modular_elements,
};
use frankl_core::certificate::{build_certificate, build_certificate_generalized};
use frankl_core::enumerate::{enumerate_lattices, scan_lattices, ENUMERATION_CAP};
use frankl_core::group::{parse_group_file, GroupSpec, DEFAULT_ORDER_CAP};
use frankl_core::subgroups::{certify_interval, frankl_full, verify_solvable_intervals};
use frankl_core::suite::{run_suite, SuiteConfig};
use frankl_core::{
    verify_certificate, ElementId, Error, FiniteGroup, FiniteLattice, FranklReport, GroupFranklReport, SubgroupLattice,
};

use report::{list, Format, Report, Status};

#[derive(Parser)]
#[command(name = "frankl", version, about = "Union-closed (Frankl) checks for finite lattices and subgroup lattices")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    /// Include injection certificates in the output
    #[arg(long, global = true)]
    emit_certificate: bool,

    /// Worker threads for sweeps (defaults to all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Seed for randomized self-checks; never changes reported results
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattices read from text files
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Groups given by a spec such as `sym:4` or a group file
    #[command(subcommand)]
    Group(GroupCommand),
    /// Run the full verification battery
    Suite {
        #[arg(long, default_value_t = 8)]
        max_lattice: usize,
        #[arg(long, default_value_t = 24)]
        max_group: usize,
    },
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Find a join-irreducible whose up-set holds at most half the lattice
    Check { file: PathBuf },
    /// Build and verify the injection for a triple (m, x, y)
    Certify {
        file: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        /// Only require the relaxed identity above x ∨ y
        #[arg(long)]
        generalized: bool,
    },
    /// Structural predicates
    Props { file: PathBuf },
    /// All lattices with N elements up to isomorphism
    Enumerate {
        n: usize,
        /// Write each lattice to DIR/lattice_<N>_<index>.lat
        #[arg(long, value_name = "DIR")]
        emit_files: Option<PathBuf>,
        /// Run the Frankl scan over the enumerated lattices
        #[arg(long)]
        scan: bool,
    },
}

#[derive(Args)]
struct GroupInput {
    /// Group spec (`cyclic:N`, `dihedral:N`, `dicyclic:N`, `sym:N`, `alt:N`, `elem:p^k`, `direct:(A,B)`) or file path
    group: String,
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Frankl report for the subgroup lattice
    Check(GroupInput),
    /// Write the subgroup lattice in lattice text format
    Lattice {
        #[command(flatten)]
        input: GroupInput,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Frankl report for the interval [H, G]
    Interval {
        #[command(flatten)]
        input: GroupInput,
        /// Comma-separated element indices generating H (empty for the trivial subgroup)
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Check every interval of a solvable group's subgroup lattice
    SolvableIntervals(GroupInput),
}

/// Errors that map to exit code 2 unless they signal an internal contradiction.
struct Failure(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.into())
    }
}

fn exit_code_for(error: &anyhow::Error) -> u8 {
    match error.downcast_ref::<Error>() {
        Some(Error::InternalCheckFailed(_) | Error::CrossCheckFailed(_)) => 3,
        _ => 2,
    }
}

fn order_cap() -> anyhow::Result<usize> {
    match std::env::var("FRANKL_MAX_ORDER") {
        Ok(v) => {
            let cap: usize = v.trim().parse().with_context(|| format!("FRANKL_MAX_ORDER={v:?} is not a number"))?;
            if cap == 0 {
                bail!("FRANKL_MAX_ORDER must be positive");
            }
            Ok(cap)
        }
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

fn read_lattice(path: &Path) -> anyhow::Result<FiniteLattice> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    FiniteLattice::parse_text(&text).with_context(|| format!("{}", path.display()))
}

fn read_group(input: &str) -> anyhow::Result<FiniteGroup> {
    let cap = order_cap()?;
    let path = Path::new(input);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {input}"))?;
        return parse_group_file(&text, cap).with_context(|| input.to_string());
    }
    let spec = GroupSpec::parse(input).with_context(|| format!("{input:?} is neither a file nor a group spec"))?;
    Ok(spec.build(cap)?)
}

fn opt<T: std::fmt::Display>(value: Option<T>) -> String {
    value.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn lattice_report_row(report: &FranklReport) -> Vec<String> {
    vec![
        report.lattice_size.to_string(),
        report.satisfied.to_string(),
        opt(report.witness),
        report.upper_interval_size.to_string(),
        report.certification_path.as_str().to_string(),
    ]
}

fn lattice_check(file: &Path, emit_certificate: bool) -> Result<Report, Failure> {
    let lattice = read_lattice(file)?;
    let report = frankl_certify(&lattice)?;
    let mut out = Report::new("lattice check", vec!["size", "satisfied", "witness", "up_set", "path"]);
    out.rows.push(lattice_report_row(&report));
    if !report.satisfied {
        out.status = if has_sufficient_condition(&lattice) { Status::Critical } else { Status::Failed };
    }
    if emit_certificate {
        if let Some(cert) = &report.certificate {
            out.details.push(cert.to_string());
        }
        out.set("report", &report);
    } else {
        let mut plain = report.clone();
        plain.certificate = None;
        out.set("report", &plain);
    }
    out.set("join_irreducibles", lattice.join_irreducibles());
    Ok(out)
}

fn lattice_certify(file: &Path, m: usize, x: usize, y: usize, generalized: bool) -> Result<Report, Failure> {
    let lattice = read_lattice(file)?;
    let (m, x, y) = (ElementId(m), ElementId(x), ElementId(y));
    let cert = if generalized {
        build_certificate_generalized(&lattice, m, x, y)?
    } else {
        build_certificate(&lattice, m, x, y)?
    };
    let verified = verify_certificate(&lattice, &cert);
    let size = lattice.up_size(cert.witness);
    let mut out =
        Report::new("lattice certify", vec!["size", "witness", "partner", "modular_element", "up_set", "verified"]);
    out.rows.push(vec![
        lattice.len().to_string(),
        cert.witness.to_string(),
        cert.partner.to_string(),
        cert.modular_element.to_string(),
        size.to_string(),
        verified.is_ok().to_string(),
    ]);
    out.details.push(cert.to_string());
    if let Err(defect) = &verified {
        out.details.push(format!("verification failed: {defect}"));
        out.status = Status::Critical;
    }
    out.set("certificate", &cert);
    out.set("verified", verified.is_ok());
    out.set("lattice_size", lattice.len());
    out.set("upper_interval_size", size);
    Ok(out)
}

fn lattice_props(file: &Path) -> Result<Report, Failure> {
    let lattice = read_lattice(file)?;
    let jis = lattice.join_irreducibles();
    let lm = left_modular_elements(&lattice);
    let dsm = dual_semimodularity_violation(&lattice);
    let chain = has_left_modular_maximal_chain(&lattice);
    let como = comodernistic_violation(&lattice);
    let mut out = Report::new("lattice props", vec!["property", "value"]);
    let pair = |p: Option<(ElementId, ElementId)>| p.map_or("none".to_string(), |(a, b)| format!("{a} {b}"));
    let mut rows = vec![
        ("size", lattice.len().to_string()),
        ("join_irreducibles", list(&jis)),
        ("left_modular_elements", list(&lm)),
        ("dually_semimodular", (dsm.is_none()).to_string()),
        ("dual_semimodularity_violation", pair(dsm)),
        ("left_modular_chain", chain.as_deref().map_or("none".to_string(), list)),
        ("comodernistic", (como.is_none()).to_string()),
        ("comodernistic_violation", pair(como)),
    ];
    if lattice.len() >= 2 {
        let avg = averaged_frankl(&lattice)?;
        rows.push(("average_up_set", avg.average.to_string()));
        rows.push(("averaged_condition", avg.satisfied.to_string()));
        out.set("average_up_set", avg.average.to_string());
        out.set("averaged_condition", avg.satisfied);
    }
    out.rows = rows.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect();
    out.set("size", lattice.len());
    out.set("join_irreducibles", &jis);
    out.set("left_modular_elements", &lm);
    out.set("dually_semimodular", dsm.is_none());
    out.set("dual_semimodularity_violation", dsm);
    out.set("left_modular_chain", &chain);
    out.set("comodernistic", como.is_none());
    out.set("comodernistic_violation", como);
    Ok(out)
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("1 {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn lattice_enumerate(n: usize, emit_files: Option<&Path>, scan: bool) -> Result<Report, Failure> {
    if n == 0 || n > ENUMERATION_CAP {
        return Err(Failure(anyhow::anyhow!("N must be between 1 and {ENUMERATION_CAP}")));
    }
    let lattices = enumerate_lattices(n)?;
    if let Some(dir) = emit_files {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for (i, l) in lattices.iter().enumerate() {
            let path = dir.join(format!("lattice_{n}_{i:04}.lat"));
            fs::write(&path, l.to_text()).with_context(|| format!("cannot write {}", path.display()))?;
        }
    }
    if !scan {
        let mut out = Report::new("lattice enumerate", vec!["index", "join_irreducibles", "atoms", "coatoms"]);
        out.summary.push(format!("{} on {n} elements", plural(lattices.len(), "lattice")));
        for (i, l) in lattices.iter().enumerate() {
            out.rows.push(vec![
                i.to_string(),
                l.join_irreducibles().len().to_string(),
                l.atoms().len().to_string(),
                l.coatoms().len().to_string(),
            ]);
        }
        out.set("size", n);
        out.set("count", lattices.len());
        out.set("lattices", lattices.iter().map(FiniteLattice::to_text).collect::<Vec<_>>());
        return Ok(out);
    }
    let total = scan_lattices(&lattices)?.total();
    let mut out = Report::new("lattice enumerate", vec!["path", "lattices"]);
    out.summary.push(format!("{}, {} counterexamples", plural(lattices.len(), "lattice"), total.counterexamples));
    out.summary.push(format!(
        "{} dually semimodular, {} with a left-modular maximal chain, {} comodernistic",
        total.dually_semimodular, total.left_modular_chain, total.comodernistic
    ));
    for (path, count) in &total.by_path {
        out.rows.push(vec![path.as_str().to_string(), count.to_string()]);
    }
    if total.counterexamples > 0 {
        out.status = if total.critical > 0 { Status::Critical } else { Status::Failed };
    }
    out.set("size", n);
    out.set("count", lattices.len());
    out.set("scan", &total);
    Ok(out)
}

fn group_row(name: &str, sl: &SubgroupLattice, r: &GroupFranklReport) -> Vec<String> {
    let g = sl.group();
    let generators = r.generator_pair.map(|(x, y)| format!("{} {}", g.label(x), g.label(y)));
    vec![
        name.to_string(),
        g.order().to_string(),
        sl.lattice().len().to_string(),
        r.report.satisfied.to_string(),
        opt(r.witness_subgroup.as_ref()),
        r.report.upper_interval_size.to_string(),
        r.certification.as_str().to_string(),
        opt(r.normal_subgroup_used.as_ref()),
        opt(generators),
    ]
}

const GROUP_HEADER: [&str; 9] =
    ["group", "order", "lattice", "satisfied", "witness", "up_set", "certification", "normal", "generators"];

fn group_status(r: &GroupFranklReport) -> Status {
    if r.critical {
        Status::Critical
    } else if r.report.satisfied {
        Status::Ok
    } else {
        Status::Failed
    }
}

fn finish_group_report(out: &mut Report, r: &GroupFranklReport, emit_certificate: bool) {
    out.status = group_status(r);
    let mut shown = r.clone();
    if emit_certificate {
        if let Some(cert) = &r.report.certificate {
            out.details.push(cert.to_string());
        }
    } else {
        shown.report.certificate = None;
    }
    out.set("report", &shown);
}

fn group_check(input: &str, emit_certificate: bool) -> Result<Report, Failure> {
    let sl = SubgroupLattice::build(read_group(input)?)?;
    sl.join_irreducible_subgroups()?;
    let r = frankl_full(&sl)?;
    let mut out = Report::new("group check", GROUP_HEADER.to_vec());
    out.rows.push(group_row(input, &sl, &r));
    finish_group_report(&mut out, &r, emit_certificate);
    out.set("group", input);
    out.set("order", sl.group().order());
    out.set("subgroups", sl.lattice().len());
    Ok(out)
}

fn subgroup_lattice_text(name: &str, sl: &SubgroupLattice) -> String {
    let mut text = format!("# subgroup lattice of {name}\n");
    for e in sl.lattice().elements() {
        text.push_str(&format!("# {e} = {}\n", sl.label(e)));
    }
    text.push_str(&sl.lattice().to_text());
    text
}

fn group_lattice(input: &str, out_path: Option<&Path>, format: Format) -> Result<Option<Report>, Failure> {
    let sl = SubgroupLattice::build(read_group(input)?)?;
    let text = subgroup_lattice_text(input, &sl);
    let Some(path) = out_path else {
        if format == Format::Table {
            print!("{text}");
            return Ok(None);
        }
        let mut out = Report::new("group lattice", vec!["element", "subgroup", "order"]);
        for e in sl.lattice().elements() {
            out.rows.push(vec![e.to_string(), sl.label(e).to_string(), sl.label(e).order().to_string()]);
        }
        out.set("group", input);
        out.set("lattice", sl.lattice().to_text());
        out.set("labels", sl.labels());
        return Ok(Some(out));
    };
    fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
    let mut out = Report::new("group lattice", vec!["group", "subgroups", "file"]);
    out.rows.push(vec![input.to_string(), sl.lattice().len().to_string(), path.display().to_string()]);
    out.set("group", input);
    out.set("subgroups", sl.lattice().len());
    out.set("file", path.display().to_string());
    Ok(Some(out))
}

fn parse_selector(text: &str, order: usize) -> anyhow::Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let g: usize = s.parse().with_context(|| format!("bad element index {s:?}"))?;
            if g >= order {
                bail!("element index {g} out of range for a group of order {order}");
            }
            Ok(g)
        })
        .collect()
}

fn group_interval(input: &str, selector: &str, emit_certificate: bool) -> Result<Report, Failure> {
    let sl = SubgroupLattice::build(read_group(input)?)?;
    let seed = parse_selector(selector, sl.group().order())?;
    let h = sl.group().generated_subgroup(&seed);
    let r = certify_interval(&sl, &h)?;
    let mut header = vec!["subgroup_h", "interval"];
    header.extend(["satisfied", "witness", "up_set", "certification", "normal"]);
    let mut out = Report::new("group interval", header);
    out.rows.push(vec![
        h.to_string(),
        r.report.lattice_size.to_string(),
        r.report.satisfied.to_string(),
        opt(r.witness_subgroup.as_ref()),
        r.report.upper_interval_size.to_string(),
        r.certification.as_str().to_string(),
        opt(r.normal_subgroup_used.as_ref()),
    ]);
    finish_group_report(&mut out, &r, emit_certificate);
    out.set("group", input);
    out.set("subgroup_h", &h);
    Ok(out)
}

fn group_solvable_intervals(input: &str) -> Result<Report, Failure> {
    let sl = SubgroupLattice::build(read_group(input)?)?;
    let s = verify_solvable_intervals(&sl)?;
    let mut out = Report::new(
        "group solvable-intervals",
        vec!["group", "intervals", "frankl_failures", "with_lm_coatom", "without_lm_coatom"],
    );
    out.rows.push(vec![
        input.to_string(),
        s.intervals_checked.to_string(),
        s.frankl_failures.to_string(),
        s.with_left_modular_coatom.to_string(),
        s.without_left_modular_coatom.to_string(),
    ]);
    for (lo, hi) in &s.failing_intervals {
        out.details.push(format!("failing interval [{}, {}]", sl.label(*lo), sl.label(*hi)));
    }
    if !s.passed() {
        out.status = Status::Critical;
    }
    out.set("group", input);
    out.set("summary_counts", &s);
    Ok(out)
}

fn suite(max_lattice: usize, max_group: usize) -> Result<Report, Failure> {
    if max_lattice == 0 || max_lattice > ENUMERATION_CAP {
        return Err(Failure(anyhow::anyhow!("--max-lattice must be between 1 and {ENUMERATION_CAP}")));
    }
    let report = run_suite(&SuiteConfig { max_lattice, max_group, order_cap: order_cap()? })?;
    let mut out = Report::new("suite", vec!["check", "passed", "detail"]);
    for c in &report.checks {
        let detail = c.detail.lines().next().unwrap_or("").to_string();
        out.rows.push(vec![c.name.to_string(), c.passed.to_string(), detail]);
    }
    out.status = if report.critical() {
        Status::Critical
    } else if report.passed() {
        Status::Ok
    } else {
        Status::Failed
    };
    out.set("max_lattice", max_lattice);
    out.set("max_group", max_group);
    out.set("checks", &report.checks);
    Ok(out)
}

fn run(cli: &Cli) -> Result<Option<Report>, Failure> {
    let cert = cli.emit_certificate;
    Ok(Some(match &cli.command {
        Command::Lattice(LatticeCommand::Check { file }) => lattice_check(file, cert)?,
        Command::Lattice(LatticeCommand::Certify { file, m, x, y, generalized }) => {
            lattice_certify(file, *m, *x, *y, *generalized)?
        }
        Command::Lattice(LatticeCommand::Props { file }) => lattice_props(file)?,
        Command::Lattice(LatticeCommand::Enumerate { n, emit_files, scan }) => {
            lattice_enumerate(*n, emit_files.as_deref(), *scan)?
        }
        Command::Group(GroupCommand::Check(input)) => group_check(&input.group, cert)?,
        Command::Group(GroupCommand::Lattice { input, out }) => {
            return group_lattice(&input.group, out.as_deref(), cli.format);
        }
        Command::Group(GroupCommand::Interval { input, h }) => group_interval(&input.group, h, cert)?,
        Command::Group(GroupCommand::SolvableIntervals(input)) => group_solvable_intervals(&input.group)?,
        Command::Suite { max_lattice, max_group } => suite(*max_lattice, *max_group)?,
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            if let Err(e) = report.render(cli.format, &mut lock).and_then(|_| lock.flush()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(report.status.code())
        }
        Err(Failure(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
