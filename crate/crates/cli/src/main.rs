mod family;
mod report;

use clap::{Parser, Subcommand};
use extiso::abelian::primary_decomposition;
use extiso::builders::find_complement;
use extiso::cayley::{quotient_with_section, write_table, CayleyGroup, QuotientPresentation, Subgroup};
use extiso::cohomology::{coboundary_basis, cohomologous, extract_extension_data, ExtensionData};
use extiso::isoengine::{iso_with_strategy, Strategy};
use extiso::{Caps, EngineConfig, Error};
use report::{Report, EXIT_INPUT, EXIT_NOT_ISOMORPHIC, EXIT_OK};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

/// Isomorphism testing of finite groups given by Cayley tables.
///
/// Exit codes: 0 isomorphic or success, 1 not isomorphic, 2 strategy
/// inapplicable or cap exceeded, 3 invalid input or engine error, 4 I/O error.
#[derive(Parser, Debug)]
#[command(name = "extiso", version)]
struct Cli {
    /// Largest group order for exhaustive searches (overrides EXTISO_CAP).
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Checks that a file holds a group table.
    Validate { file: PathBuf },
    /// Order, center, radical, filtration sizes and socle factors.
    Invariants { file: PathBuf },
    /// Decides whether two groups are isomorphic.
    Iso {
        g: PathBuf,
        h: PathBuf,
        /// auto, central-radical, elem-abelian-radical, ss-product-1, ss-product-2 or brute.
        #[arg(long, default_value = "auto")]
        strategy: Strategy,
        /// Cross-check the verdict by brute force when the order allows.
        #[arg(long)]
        oracle_check: bool,
        /// Print the isomorphism as the image of each element.
        #[arg(long)]
        witness: bool,
        /// Print the elapsed time (makes the report nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Writes a Cayley table for a family spec, or the whole corpus.
    Gen {
        /// Output file, or directory for `corpus`; stdout when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Family and arguments, e.g. `cyclic 4` or `baer 3 1 2 1,2=1`.
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Dumps extension data over a normal subgroup.
    Extdata {
        file: PathBuf,
        /// center, radical, derived, or a comma-separated element list.
        #[arg(long, default_value = "center")]
        normal: String,
        /// Take the section through a complement when one exists.
        #[arg(long)]
        complement_section: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    let mut caps = Caps::from_env();
    if let Some(n) = cli.cap {
        caps.group_order = n;
    }
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Invariants { file } => invariants(&file),
        Command::Iso { g, h, strategy, oracle_check, witness, timing } => {
            let config = EngineConfig { caps, oracle_check, ..EngineConfig::default() };
            iso(&g, &h, strategy, &config, witness, timing)
        }
        Command::Gen { out, spec } => gen(&spec, out.as_deref(), &caps),
        Command::Extdata { file, normal, complement_section } => extdata(&file, &normal, complement_section),
    }
}

/// Reads and validates a table, reporting failures on `r`.
fn load(r: &mut Option<Report>, key: &str, path: &Path) -> Result<Arc<CayleyGroup>, ExitCode> {
    let rep = r.as_mut().expect("report");
    rep.field(key, path.display());
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Err(r.take().expect("report").io_error(&path.display().to_string(), e)),
    };
    match extiso::cayley::parse_table(&text) {
        Ok(g) => {
            r.as_mut().expect("report").field(&format!("{key}-order"), g.order());
            Ok(Arc::new(g))
        }
        Err(e) => Err(r.take().expect("report").fail(&e)),
    }
}

fn validate(file: &Path) -> ExitCode {
    let mut r = Some(Report::new("validate"));
    let g = match load(&mut r, "input", file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mut r = r.expect("report");
    r.field("identity", g.identity());
    r.field("abelian", yes_no(g.is_abelian()));
    r.finish("ok", EXIT_OK)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(it: impl IntoIterator<Item = T>) -> String {
    it.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn invariants(file: &Path) -> ExitCode {
    let mut r = Some(Report::new("invariants"));
    let g = match load(&mut r, "input", file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mut r = r.expect("report");
    r.field("order", g.order());
    r.field("abelian", yes_no(g.is_abelian()));
    if g.is_abelian() {
        match primary_decomposition(g.clone()) {
            Ok(a) => r.field("abelian-type", join(a.orders())),
            Err(e) => return r.fail(&e),
        }
    }
    r.field("exponent", g.exponent());
    let z = g.center();
    r.field("center-order", z.len());
    r.field("derived-order", g.commutator_subgroup().len());
    let f = g.babai_beals_filtration();
    r.field("radical-order", f.radical.len());
    r.field("socle-star-order", f.socle_star.len());
    r.field("pker-star-order", f.pker_star.len());
    r.field("central-radical", yes_no(f.radical.members() == z.members()));
    match socle_factor_orders(&g, &f.radical) {
        Ok(v) if v.is_empty() => r.field("socle-factors", "none"),
        Ok(v) => r.field("socle-factors", join(v)),
        Err(e) => return r.fail(&e),
    }
    r.finish("ok", EXIT_OK)
}

/// Orders of the simple direct factors of `Soc(G / rad G)`.
fn socle_factor_orders(g: &Arc<CayleyGroup>, radical: &Subgroup) -> extiso::Result<Vec<usize>> {
    let qp = quotient_with_section(g.clone(), radical)?;
    let q = &qp.quotient;
    let mut soc = Subgroup::trivial(q);
    for m in q.minimal_normal_subgroups() {
        soc = soc.join(q, &m);
    }
    let (s, _) = soc.as_group(q);
    let mut orders: Vec<usize> = s.simple_factor_decomposition()?.iter().map(Subgroup::len).collect();
    orders.sort_unstable();
    Ok(orders)
}

fn iso(g: &Path, h: &Path, strategy: Strategy, config: &EngineConfig, witness: bool, timing: bool) -> ExitCode {
    let start = Instant::now();
    let mut r = Some(Report::new("iso"));
    let gg = match load(&mut r, "input-g", g) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let hh = match load(&mut r, "input-h", h) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let mut r = r.expect("report");
    r.field("strategy-requested", strategy.label());
    r.field("oracle-check", if config.oracle_check { "on" } else { "off" });
    r.field("group-order-cap", config.caps.group_order);
    let outcome = iso_with_strategy(&gg, &hh, strategy, config);
    if timing {
        r.field("elapsed-ms", start.elapsed().as_millis());
    }
    let v = match outcome {
        Ok(v) => v,
        Err(e) => return r.fail(&e),
    };
    r.field("strategy", v.strategy);
    for c in &v.certificate {
        r.field("certificate", c);
    }
    if witness {
        if let Some(w) = &v.witness {
            r.field("witness", join(&w.image));
        }
    }
    let code = if v.is_isomorphic() { EXIT_OK } else { EXIT_NOT_ISOMORPHIC };
    r.finish(&v.result.to_string(), code)
}

fn file_name(name: &str) -> String {
    let s: String = name.replace('\'', "-relabeled").chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    format!("{}.tbl", s.trim_matches('_'))
}

fn gen(spec: &[String], out: Option<&Path>, caps: &Caps) -> ExitCode {
    let mut r = Report::new("gen");
    r.field("family", spec.join(" "));
    if spec[0] == "corpus" {
        let Some(dir) = out else {
            r.field("error", "corpus needs --out DIR");
            return r.finish("error", EXIT_INPUT);
        };
        let groups = match extiso::corpus::corpus() {
            Ok(c) => c,
            Err(e) => return r.fail(&e),
        };
        if let Err(e) = std::fs::create_dir_all(dir) {
            return r.io_error(&dir.display().to_string(), e);
        }
        for c in groups {
            let path = dir.join(file_name(&c.name));
            if let Err(e) = std::fs::write(&path, format!("# {}\n{}", c.name, write_table(&c.group))) {
                return r.io_error(&path.display().to_string(), e);
            }
            r.field("file", format!("{} {} {}", path.display(), c.name, c.group.order()));
        }
        return r.finish("ok", EXIT_OK);
    }
    let g = match family::build(spec, caps) {
        Ok(g) => g,
        Err(e) => {
            return match e.downcast_ref::<Error>() {
                Some(err) => r.fail(err),
                None => {
                    r.field("error", format!("{e:#}"));
                    r.finish("invalid", EXIT_INPUT)
                }
            }
        }
    };
    let text = write_table(&g);
    match out {
        None => {
            print!("{text}");
            ExitCode::from(EXIT_OK)
        }
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return r.io_error(&path.display().to_string(), e);
            }
            r.field("output", path.display());
            r.field("order", g.order());
            r.finish("ok", EXIT_OK)
        }
    }
}

fn pick_normal(g: &Arc<CayleyGroup>, which: &str) -> Result<Subgroup, String> {
    match which {
        "center" => Ok(g.center()),
        "radical" => Ok(g.solvable_radical()),
        "derived" => Ok(g.commutator_subgroup()),
        list => {
            let members: Vec<usize> = list
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad element {t:?}")))
                .collect::<Result<_, _>>()?;
            if let Some(x) = members.iter().find(|&&x| x >= g.order()) {
                return Err(format!("element {x} out of range"));
            }
            Subgroup::from_members(g, &members).map_err(|e| e.to_string())
        }
    }
}

/// The presentation over `n` with section through `c`.
fn through_complement(qp: &QuotientPresentation, c: &Subgroup) -> extiso::Result<QuotientPresentation> {
    let mut section = vec![0u32; qp.quotient.order()];
    for &x in c.members() {
        section[qp.project(x)] = x as u32;
    }
    QuotientPresentation::from_parts(qp.group.clone(), qp.normal.clone(), qp.quotient.clone(), qp.projection.clone(), section)
}

fn extdata(file: &Path, which: &str, complement_section: bool) -> ExitCode {
    let mut r = Some(Report::new("extdata"));
    let g = match load(&mut r, "input", file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mut r = r.expect("report");
    r.field("normal", which);
    let n = match pick_normal(&g, which) {
        Ok(n) => n,
        Err(e) => {
            r.field("error", e);
            return r.finish("invalid", EXIT_INPUT);
        }
    };
    r.field("normal-order", n.len());
    if !n.is_normal_in(&g) {
        return r.fail(&Error::NotNormal);
    }
    if !n.is_abelian(&g) {
        return r.fail(&Error::NotAbelian);
    }
    let mut qp = match quotient_with_section(g.clone(), &n) {
        Ok(qp) => qp,
        Err(e) => return r.fail(&e),
    };
    r.field("quotient-order", qp.quotient.order());
    let mut section = "minimal";
    if complement_section {
        match find_complement(&g, &n) {
            Ok(Some(c)) => match through_complement(&qp, &c) {
                Ok(q2) => {
                    qp = q2;
                    section = "complement";
                }
                Err(e) => return r.fail(&e),
            },
            Ok(None) => section = "minimal (no complement)",
            Err(e) => return r.fail(&e),
        }
    }
    r.field("section", section);
    let ed = match extract_extension_data(&qp) {
        Ok(ed) => ed,
        Err(e) => return r.fail(&e),
    };
    r.field("coefficient", join(ed.coefficient.orders()));
    r.field("action-trivial", yes_no(ed.is_trivial_action()));
    for (q, t) in ed.action.iter().enumerate() {
        let rows: Vec<String> = t.matrix.iter().map(|row| join(row)).collect();
        r.field("action", format!("{q}: {}", rows.join("; ")));
    }
    r.block("cocycle", &ed.cocycle.serialize());
    r.field("cocycle-zero", yes_no(ed.cocycle.is_zero()));
    let basis = coboundary_basis(&ed.quotient, &ed.coefficient, &ed.action);
    r.field("coboundary-basis-size", basis.len());
    let zero = ExtensionData::from_values(ed.coefficient.clone(), ed.quotient.clone(), ed.action.clone(), |_, _| vec![0; ed.k()]);
    match cohomologous(&ed, &zero) {
        Ok(split) => r.field("class", if split { "trivial" } else { "nontrivial" }),
        Err(e) => return r.fail(&e),
    }
    r.finish("ok", EXIT_OK)
}
