//! Command-line front end for `discarr`.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use discarr::arrangement::{parse, Arrangement};
use discarr::charpoly::{
    char_poly_via_flats, count_cones, count_cones_deletion_restriction, whitney_char_poly, CharPoly,
};
use discarr::conegeom::{correspondence_report, facets, sign_vector, simplex_cells, svg::render_svg};
use discarr::discriminantal::build_disc;
use discarr::exactmath::{format_rational, RatMatrix};
use discarr::fixtures::{fixture_names, load_fixture};
use discarr::lattice::{closure, concurrency_sets, enumerate_p, iso_check};
use discarr::matroid::is_very_generic;
use discarr::verify::{render_table, verify_paper};
use discarr::{SubsetFamily, SubsetIndex};

#[derive(Parser, Debug)]
#[command(
    name = "discarr",
    version,
    about = "Exact computations on discriminantal arrangements"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discriminantal arrangement of a generic arrangement.
    #[command(subcommand)]
    Disc(DiscCmd),
    /// Characteristic polynomial and cone count of a central arrangement.
    Chi(ChiArgs),
    /// Dilworth matroid representability.
    #[command(subcommand)]
    Matroid(MatroidCmd),
    /// The poset P(n,k) and concurrency-closed collections.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Cones of Disc(A), facets and simplex cells.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Run every bundled fixture check and print a PASS/FAIL table.
    VerifyPaper,
}

/// An arrangement JSON file, or the name of a bundled fixture.
#[derive(Args, Debug)]
struct Input {
    arrangement: String,
}

#[derive(Subcommand, Debug)]
enum DiscCmd {
    /// Print the normals M_S in dictionary order of S.
    Build {
        #[command(flatten)]
        input: Input,
        /// Scale each normal to a primitive integer vector with positive leading entry.
        #[arg(long)]
        canonical: bool,
    },
}

#[derive(Args, Debug)]
struct ChiArgs {
    #[command(flatten)]
    input: Input,
    /// Use the normals of Disc(A) rather than the rows of A.
    #[arg(long)]
    disc: bool,
    /// Also run the flats and deletion-restriction routes; fail on disagreement.
    #[arg(long)]
    oracle: bool,
}

#[derive(Subcommand, Debug)]
enum MatroidCmd {
    /// Decide whether Disc(A) represents the Dilworth matroid.
    VeryGeneric {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// JSON file: {"n":6,"k":2,"members":[[1,2,3],...]} or a bare list of sets.
    family: PathBuf,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// Enumerate P(n,k).
    P {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Print the characteristic polynomial from the Möbius function.
        #[arg(long)]
        chi: bool,
        /// List every element.
        #[arg(long)]
        list: bool,
    },
    /// Concurrency closure of a family of (k+1)-sets.
    Closure(FamilyArgs),
    /// Sets of concurrencies of a concurrency-closed collection.
    Sigma(FamilyArgs),
    /// Compare P(n,m) with the flats of Disc(A).
    IsoCheck {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand, Debug)]
enum ConeCmd {
    /// Facets of the cone of Disc(A) containing the constants.
    Facets {
        #[command(flatten)]
        input: Input,
    },
    /// Simplex cells of the arrangement.
    Cells {
        #[command(flatten)]
        input: Input,
    },
    /// Simplex-cell status against facet status for every (m+1)-subset.
    Report {
        #[command(flatten)]
        input: Input,
    },
    /// Draw a line arrangement with its simplex cells shaded.
    Svg {
        #[command(flatten)]
        input: Input,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Check(String),
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<discarr::Error> for Failure {
    fn from(e: discarr::Error) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn load(input: &Input) -> anyhow::Result<Arrangement> {
    let path = Path::new(&input.arrangement);
    if path.exists() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return parse(&text).with_context(|| format!("parsing {}", path.display()));
    }
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(&input.arrangement);
    if fixture_names().contains(&name) {
        return Ok(load_fixture(name)?.arrangement);
    }
    Err(anyhow!(
        "no file `{}` and no bundled fixture of that name (available: {})",
        input.arrangement,
        fixture_names().join(", ")
    ))
}

fn load_family(args: &FamilyArgs) -> anyhow::Result<SubsetFamily> {
    let text =
        fs::read_to_string(&args.family).with_context(|| format!("reading {}", args.family.display()))?;
    let doc: Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", args.family.display()))?;
    let (members, n, k) = match &doc {
        Value::Array(_) => (doc.clone(), None, None),
        Value::Object(o) => (
            o.get("members")
                .cloned()
                .ok_or_else(|| anyhow!("missing `members`"))?,
            o.get("n").and_then(Value::as_u64).map(|x| x as usize),
            o.get("k").and_then(Value::as_u64).map(|x| x as usize),
        ),
        _ => bail!("family must be a list of sets or an object with `members`"),
    };
    let members: Vec<Vec<usize>> =
        serde_json::from_value(members).context("members must be lists of positive integers")?;
    let members = members
        .into_iter()
        .map(SubsetIndex::from_unsorted)
        .collect::<discarr::Result<Vec<_>>>()?;
    let n = args
        .n
        .or(n)
        .or_else(|| members.iter().filter_map(SubsetIndex::max_element).max())
        .ok_or_else(|| anyhow!("cannot infer n from an empty family; pass --n"))?;
    let k = args
        .k
        .or(k)
        .or_else(|| members.first().map(|m| m.len().saturating_sub(1)))
        .ok_or_else(|| anyhow!("cannot infer k from an empty family; pass --k"))?;
    Ok(SubsetFamily::new(n, k, members)?)
}

fn family_json(f: &SubsetFamily) -> Value {
    json!({ "n": f.n, "k": f.k, "members": f.members })
}

fn poly_json(p: &CharPoly) -> Value {
    json!({
        "polynomial": p.to_string(),
        "coeffs": p.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn emit(out: &mut dyn Write, json_mode: bool, value: Value, text: String) -> std::io::Result<()> {
    if json_mode {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        )
    } else {
        write!(out, "{text}")
    }
}

fn chi(args: &ChiArgs, json_mode: bool, out: &mut dyn Write) -> Outcome {
    let h = load(&args.input)?;
    let normals: RatMatrix = if args.disc {
        build_disc(h.coeffs())?.normals().clone()
    } else {
        h.coeffs().clone()
    };
    let dim = normals.cols();
    let poly = whitney_char_poly(&normals)?;
    let cones = count_cones(&poly, dim);
    let mut text = format!("chi(x) = {poly}\ncones = {cones}\n");
    let mut value = json!({ "dimension": dim, "hyperplanes": normals.rows(), "chi": poly_json(&poly), "cones": cones.to_string() });
    let mut disagreement = None;
    if args.oracle {
        let flats = char_poly_via_flats(&normals)?;
        let dr = count_cones_deletion_restriction(&normals)?;
        text.push_str(&format!(
            "flats: chi(x) = {flats}\ndeletion-restriction: cones = {dr}\n"
        ));
        value["oracle"] = json!({ "flats": poly_json(&flats), "deletion_restriction": dr.to_string() });
        if flats != poly || cones.to_string() != dr.to_string() {
            disagreement = Some(format!(
                "oracles disagree: Whitney {poly} / {cones}, flats {flats}, deletion-restriction {dr}"
            ));
        }
    }
    emit(out, json_mode, value, text)?;
    match disagreement {
        Some(msg) => Err(Failure::Check(msg)),
        None => Ok(()),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let json_mode = cli.json;
    match &cli.command {
        Command::Disc(DiscCmd::Build { input, canonical }) => {
            let h = load(input)?;
            let mut d = build_disc(h.coeffs())?;
            if *canonical {
                d = d.canonicalize();
            }
            let mut text = String::new();
            for (i, s) in d.subsets().iter().enumerate() {
                let row: Vec<String> = d.normal(i).iter().map(format_rational).collect();
                text.push_str(&format!("M_{s}\t({})\n", row.join(", ")));
            }
            emit(out, json_mode, d.to_json(), text)?;
        }
        Command::Chi(args) => chi(args, json_mode, out)?,
        Command::Matroid(MatroidCmd::VeryGeneric { input }) => {
            let h = load(input)?;
            let cert = is_very_generic(h.coeffs())?;
            let mut text = format!("very generic: {}\n", cert.verdict);
            if let Some(w) = &cert.witness {
                text.push_str(&format!("witness: {w}\n"));
            }
            text.push_str(&format!("independent collections checked: {}\n", cert.checked));
            let value = json!({
                "verdict": cert.verdict,
                "witness": cert.witness.as_ref().map(family_json),
                "checked": cert.checked,
            });
            emit(out, json_mode, value, text)?;
        }
        Command::Lattice(cmd) => lattice(cmd, json_mode, out)?,
        Command::Cone(cmd) => cone(cmd, json_mode, out)?,
        Command::VerifyPaper => {
            let outcomes = verify_paper();
            let failed = outcomes.iter().filter(|o| !o.pass).count();
            let value = json!({ "checks": outcomes, "passed": outcomes.len() - failed, "failed": failed });
            emit(out, json_mode, value, render_table(&outcomes))?;
            if failed > 0 {
                return Err(Failure::Check(format!("{failed} check(s) failed")));
            }
        }
    }
    Ok(())
}

fn lattice(cmd: &LatticeCmd, json_mode: bool, out: &mut dyn Write) -> Outcome {
    match cmd {
        LatticeCmd::P { n, k, chi, list } => {
            let p = enumerate_p(*n, *k)?;
            let counts = p.rank_counts();
            let mut text = format!(
                "P({n},{k}): {} elements\nelements per rank: {}\n",
                p.len(),
                counts
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            let mut value = json!({ "n": n, "k": k, "size": p.len(), "rank_counts": counts });
            if *chi {
                let poly = p.char_poly(*n);
                text.push_str(&format!("{poly}\ncones = {}\n", count_cones(&poly, *n)));
                value["chi"] = poly_json(&poly);
                value["cones"] = json!(count_cones(&poly, *n).to_string());
            }
            if *list {
                for (f, r) in p.elements.iter().zip(&p.ranks) {
                    text.push_str(&format!("{r}\t{f}\n"));
                }
                value["elements"] = json!(p
                    .elements
                    .iter()
                    .zip(&p.ranks)
                    .map(|(f, r)| json!({ "rank": r, "members": f.members }))
                    .collect::<Vec<_>>());
            }
            emit(out, json_mode, value, text)?;
        }
        LatticeCmd::Closure(args) => {
            let f = load_family(args)?;
            let c = closure(&f)?;
            emit(out, json_mode, family_json(&c), format!("{c}\n"))?;
        }
        LatticeCmd::Sigma(args) => {
            let f = load_family(args)?;
            let s = concurrency_sets(&f)?;
            emit(out, json_mode, family_json(&s), format!("{s}\n"))?;
        }
        LatticeCmd::IsoCheck { input } => {
            let h = load(input)?;
            let r = iso_check(h.coeffs())?;
            let text = format!(
                "very generic: {}\n|P| = {}, |L| = {}\nbijective: {}\norder preserving: {}\ndimensions match: {}\n",
                r.very_generic, r.p_size, r.l_size, r.bijective, r.order_preserving, r.dims_match
            );
            let value = serde_json::to_value(&r).expect("serializable");
            emit(out, json_mode, value, text)?;
            if r.very_generic && !r.isomorphic() {
                return Err(Failure::Check(
                    "very generic A but phi is not an isomorphism".into(),
                ));
            }
        }
    }
    Ok(())
}

fn cone(cmd: &ConeCmd, json_mode: bool, out: &mut dyn Write) -> Outcome {
    match cmd {
        ConeCmd::Facets { input } => {
            let h = load(input)?;
            let d = build_disc(h.coeffs())?;
            let sigma = sign_vector(&d, h.constants())?;
            let found = facets(&d, &sigma)?;
            let signs: String = sigma
                .signs
                .iter()
                .map(|&s| if s > 0 { '+' } else { '-' })
                .collect();
            let mut text = format!("sign vector: {signs}\nfacets ({}):\n", found.len());
            for s in &found {
                text.push_str(&format!("  M_{s}\n"));
            }
            emit(
                out,
                json_mode,
                json!({ "signs": sigma.signs, "facets": found }),
                text,
            )?;
        }
        ConeCmd::Cells { input } => {
            let h = load(input)?;
            let cells = simplex_cells(&h)?;
            let mut text = format!("simplex cells ({}):\n", cells.len());
            for c in &cells {
                let pts: Vec<String> = c
                    .vertices
                    .iter()
                    .map(|v| {
                        format!(
                            "({})",
                            v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
                        )
                    })
                    .collect();
                text.push_str(&format!("  {}\t{}\n", c.hyperplanes, pts.join(" ")));
            }
            emit(
                out,
                json_mode,
                serde_json::to_value(&cells).expect("serializable"),
                text,
            )?;
        }
        ConeCmd::Report { input } => {
            let h = load(input)?;
            let report = correspondence_report(&h)?;
            let mut text = String::from("subset\tcell\tfacet\n");
            for r in &report {
                let flag = if r.cell_present != r.facet { "\t*" } else { "" };
                text.push_str(&format!("{}\t{}\t{}{flag}\n", r.subset, r.cell_present, r.facet));
            }
            emit(
                out,
                json_mode,
                serde_json::to_value(&report).expect("serializable"),
                text,
            )?;
        }
        ConeCmd::Svg { input, output } => {
            let h = load(input)?;
            let svg = render_svg(&h)?;
            match output {
                Some(path) => {
                    fs::write(path, &svg).with_context(|| format!("writing {}", path.display()))?;
                    emit(
                        out,
                        json_mode,
                        json!({ "written": path }),
                        format!("wrote {}\n", path.display()),
                    )?;
                }
                None => write!(out, "{svg}")?,
            }
        }
    }
    Ok(())
}

/// Parses `argv` (including the program name), runs the command, and
/// returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            1
        }
        Err(Failure::Usage(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}
