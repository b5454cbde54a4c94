use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use kh_core::bracket::{bracket_a, bracket_q, jones_j, jones_v, normalized_f};
use kh_core::category::{khovanov_homology_via_nerve, nerve, simplex_category, ModuleFunctor};
use kh_core::dold_kan::{random_complex, roundtrip_check, GammaModel, RoundtripReport, MAX_GAMMA_TRUNCATION};
use kh_core::fuzz;
use kh_core::verify::{run_checks, CheckConfig, CheckName};
use kh_core::{khovanov_homology, parse_pd, ChainComplex, KhovanovComplex, LaurentPoly, LinkDiagram, Matrix, SignConvention};

#[derive(Parser)]
#[command(name = "kh", version, about = "Khovanov homology and the simplicial machinery around it")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Direct,
    Nerve,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Moore,
    Normalized,
}

#[derive(Args)]
struct Input {
    /// Planar diagram code, e.g. "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]" or "O".
    #[arg(short = 'd', long = "diagram", conflicts_with = "file")]
    diagram: Option<String>,
    /// File holding a planar diagram code.
    #[arg(short = 'f', long = "file")]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket, Jones and normalized polynomials of a diagram.
    Jones {
        #[command(flatten)]
        input: Input,
    },
    /// Khovanov homology table in shifted gradings.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Route::Direct)]
        route: Route,
    },
    /// The nerve of Cat[n], or Khovanov homology through the nerve when a
    /// diagram is given.
    Nerve {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        truncation: usize,
    },
    /// Gamma of a chain complex and the normalization roundtrip.
    Doldkan {
        #[command(flatten)]
        input: Input,
        /// JSON object {"ranks": [...], "boundaries": [matrix, ...]} with
        /// boundaries C_1 -> C_0, C_2 -> C_1, ... given as row lists.
        #[arg(long)]
        complex: Option<String>,
        #[arg(long, default_value_t = 4)]
        truncation: usize,
        #[arg(long, value_enum, default_value_t = ModelArg::Moore)]
        model: ModelArg,
        /// Random complexes to test when no input is given.
        #[arg(long, default_value_t = 5)]
        fuzz: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Runs the verification suite.
    Check {
        #[arg(long, default_value_t = 10)]
        fuzz: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated check names.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Simplex dimension for the subdivision check.
        #[arg(short = 'n')]
        n: Option<usize>,
        #[arg(long, hide = true)]
        inject_sign_bug: bool,
    },
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<kh_core::Error> for Failure {
    fn from(e: kh_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(String, bool), Failure>;

fn read_diagram(input: &Input) -> Result<Option<LinkDiagram>, Failure> {
    let text = match (&input.diagram, &input.file) {
        (Some(d), _) => d.clone(),
        (None, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?
        }
        (None, None) => return Ok(None),
    };
    Ok(Some(parse_pd(&text)?))
}

fn require_diagram(input: &Input) -> Result<LinkDiagram, Failure> {
    read_diagram(input)?.ok_or_else(|| Failure::Input("a diagram is required (-d or -f)".into()))
}

/// `q^-1 + q` becomes `q^{-1} + q`.
fn latex_poly(p: &LaurentPoly) -> String {
    let s = p.to_string();
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        out.push(c);
        if c == '^' {
            let mut exp = String::new();
            while let Some(&n) = chars.peek() {
                if n == ' ' {
                    break;
                }
                exp.push(n);
                chars.next();
            }
            out += &format!("{{{}}}", exp.trim_matches(|c| c == '(' || c == ')'));
        }
    }
    out
}

fn cmd_jones(input: &Input, format: Format) -> Outcome {
    let d = require_diagram(input)?;
    let polys = [
        ("bracket_A", bracket_a(&d)),
        ("bracket_q", bracket_q(&d)),
        ("jones_J", jones_j(&d)),
        ("f_K", normalized_f(&d)),
        ("V_K", jones_v(&d)),
    ];
    let text = match format {
        Format::Text => polys.iter().map(|(k, p)| format!("{k} = {p}\n")).collect(),
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                schema: &'static str,
                #[serde(rename = "bracket_A")]
                bracket_a: String,
                bracket_q: String,
                #[serde(rename = "jones_J")]
                jones_j: String,
                #[serde(rename = "f_K")]
                f_k: String,
                #[serde(rename = "V_K")]
                v_k: String,
            }
            let [a, q, j, f, v] = polys.each_ref().map(|(_, p)| p.to_string());
            let doc = Doc {
                schema: "kh/1",
                bracket_a: a,
                bracket_q: q,
                jones_j: j,
                f_k: f,
                v_k: v,
            };
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Latex => {
            let names = ["\\langle K \\rangle_A", "\\langle K \\rangle_q", "J_K", "f_K", "V_K"];
            let mut out = String::from("% schema kh/1\n\\begin{align*}\n");
            for (name, (_, p)) in names.iter().zip(&polys) {
                out += &format!("{name} &= {} \\\\\n", latex_poly(p));
            }
            out + "\\end{align*}\n"
        }
    };
    Ok((text, true))
}

fn render_homology(d: &LinkDiagram, route: Route, format: Format) -> Result<String, Failure> {
    let h = match route {
        Route::Direct => khovanov_homology(d)?,
        Route::Nerve => khovanov_homology_via_nerve(d)?,
    };
    let j = jones_j(d);
    Ok(match format {
        Format::Text => h.to_text(&j),
        Format::Json => h.to_json(&j) + "\n",
        Format::Latex => h.to_latex(&j),
    })
}

fn cmd_homology(input: &Input, route: Route, format: Format) -> Outcome {
    let d = require_diagram(input)?;
    Ok((render_homology(&d, route, format)?, true))
}

#[derive(Serialize)]
struct NerveSummary {
    schema: &'static str,
    n: usize,
    truncation: usize,
    objects: usize,
    morphisms: usize,
    generators: usize,
    simplices: Vec<usize>,
    nondegenerate: Vec<usize>,
    identities_ok: bool,
    constant_homology: Vec<String>,
}

fn cmd_nerve(input: &Input, n: usize, truncation: usize, format: Format) -> Outcome {
    if let Some(d) = read_diagram(input)? {
        let direct = khovanov_homology(&d)?;
        let via = khovanov_homology_via_nerve(&d)?;
        let agree = direct.nonzero_shifted() == via.nonzero_shifted();
        let mut text = render_homology(&d, Route::Nerve, format)?;
        if format == Format::Text {
            text += &format!("direct route agrees: {}\n", if agree { "yes" } else { "no" });
        }
        return if agree {
            Ok((text, true))
        } else {
            Err(Failure::Verification(text + "nerve and direct routes disagree\n"))
        };
    }
    let c = simplex_category(n)?;
    let x = nerve(&c, truncation)?;
    let homology = kh_core::category::functor_homology(&c, &ModuleFunctor::constant(&c, 1), truncation)?;
    let summary = NerveSummary {
        schema: "kh/1",
        n,
        truncation,
        objects: c.object_count(),
        morphisms: c.morphism_count(),
        generators: c.generators().len(),
        simplices: x.sizes(),
        nondegenerate: x.nondegenerate_counts(),
        identities_ok: x.check_identities().ok(),
        constant_homology: (0..truncation as i64)
            .map(|k| homology.get(&k).map_or("0".into(), |g| g.to_string()))
            .collect(),
    };
    let ok = summary.identities_ok;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&summary).expect("serializable") + "\n",
        Format::Text => {
            let mut out = format!(
                "Cat[{n}]: {} objects, {} morphisms, {} generators\n",
                summary.objects, summary.morphisms, summary.generators
            );
            for (k, (all, nd)) in summary.simplices.iter().zip(&summary.nondegenerate).enumerate() {
                out += &format!("level {k}: {all} simplices, {nd} nondegenerate\n");
            }
            out += &format!("identities: {}\n", if ok { "ok" } else { "violated" });
            for (k, g) in summary.constant_homology.iter().enumerate() {
                out += &format!("H_{k}(Cat[{n}]; Z) = {g}\n");
            }
            out
        }
        Format::Latex => {
            let mut out = String::from("% schema kh/1\n\\begin{tabular}{rrr}\nlevel & simplices & nondegenerate \\\\\n\\hline\n");
            for (k, (all, nd)) in summary.simplices.iter().zip(&summary.nondegenerate).enumerate() {
                out += &format!("{k} & {all} & {nd} \\\\\n");
            }
            out + "\\end{tabular}\n"
        }
    };
    Ok((text, ok))
}

#[derive(Deserialize)]
struct ComplexInput {
    ranks: Vec<usize>,
    boundaries: Vec<Vec<Vec<i64>>>,
}

fn parse_complex(json: &str) -> Result<ChainComplex<i64>, Failure> {
    let input: ComplexInput = serde_json::from_str(json).map_err(|e| Failure::Input(format!("complex: {e}")))?;
    if input.boundaries.len() + 1 != input.ranks.len().max(1) {
        return Err(Failure::Input("complex: need one boundary per positive degree".into()));
    }
    let maps = input
        .boundaries
        .iter()
        .enumerate()
        .map(|(k, rows)| {
            let (r, c) = (input.ranks[k], input.ranks[k + 1]);
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Failure::Input(format!("complex: boundary {} must be {r} x {c}", k + 1)));
            }
            Ok(Matrix::from_rows(r, c, rows.concat()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let c = ChainComplex::from_maps(0, &input.ranks, maps)?;
    c.check()?;
    Ok(c)
}

/// Quantum-degree strands of the Khovanov complex, regraded so that
/// homological degree `n - i` is nonnegative.
fn khovanov_strands(d: &LinkDiagram) -> Result<Vec<(String, ChainComplex<i64>)>, Failure> {
    let cx = KhovanovComplex::build(d)?;
    cx.quantum_degrees()
        .into_iter()
        .map(|j| {
            let s = cx.strand(j);
            let boundaries = s.degrees().map(|k| s.boundary(k)).collect();
            Ok((format!("strand j = {j}"), ChainComplex::new(0, boundaries)?))
        })
        .collect()
}

#[derive(Serialize)]
struct RoundtripJson {
    label: String,
    passed: bool,
    ranks: Vec<(usize, usize)>,
    snf: Vec<(Vec<String>, Vec<String>)>,
    homology: Vec<(String, String)>,
}

fn roundtrip_json(label: &str, r: &RoundtripReport) -> RoundtripJson {
    let strs = |v: &[kh_core::Int]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    RoundtripJson {
        label: label.into(),
        passed: r.passed(),
        ranks: r.rows.iter().map(|row| (row.rank_c, row.rank_n)).collect(),
        snf: r.rows.iter().map(|row| (strs(&row.snf_c), strs(&row.snf_n))).collect(),
        homology: r
            .rows
            .iter()
            .filter_map(|row| row.homology.as_ref().map(|(a, b)| (a.to_string(), b.to_string())))
            .collect(),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_doldkan(input: &Input, complex: Option<&str>, truncation: usize, model: ModelArg, fuzz_count: usize, seed: u64, format: Format) -> Outcome {
    if truncation > MAX_GAMMA_TRUNCATION {
        return Err(Failure::Input(format!("truncation is limited to {MAX_GAMMA_TRUNCATION}")));
    }
    let model = match model {
        ModelArg::Moore => GammaModel::Moore,
        ModelArg::Normalized => GammaModel::Normalized,
    };
    let complexes: Vec<(String, ChainComplex<i64>)> = if let Some(json) = complex {
        vec![("complex".into(), parse_complex(json)?)]
    } else if let Some(d) = read_diagram(input)? {
        khovanov_strands(&d)?
    } else {
        let mut r = fuzz::rng(seed);
        (0..fuzz_count)
            .map(|k| Ok((format!("random complex {k}"), random_complex(&mut r, 3, 3)?)))
            .collect::<Result<Vec<_>, Failure>>()?
    };
    let reports = complexes
        .iter()
        .map(|(label, c)| Ok((label.clone(), roundtrip_check(c, truncation, model)?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let ok = reports.iter().all(|(_, r)| r.passed());
    let text = match format {
        Format::Json => {
            let docs: Vec<RoundtripJson> = reports.iter().map(|(l, r)| roundtrip_json(l, r)).collect();
            serde_json::to_string_pretty(&serde_json::json!({ "schema": "kh/1", "roundtrips": docs })).expect("serializable")
                + "\n"
        }
        Format::Text => reports.iter().map(|(l, r)| format!("{l}\n{r}")).collect(),
        Format::Latex => {
            let mut out = String::from("% schema kh/1\n\\begin{tabular}{lrl}\ncomplex & degree & ranks \\\\\n\\hline\n");
            for (l, r) in &reports {
                for row in &r.rows {
                    out += &format!("{l} & {} & {} / {} \\\\\n", row.degree, row.rank_c, row.rank_n);
                }
            }
            out + "\\end{tabular}\n"
        }
    };
    Ok((text, ok))
}

fn cmd_check(fuzz: usize, seed: u64, only: &[String], n: Option<usize>, bug: bool, format: Format) -> Outcome {
    let only = only
        .iter()
        .map(|s| s.parse::<CheckName>())
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(n) = n {
        if !(1..=4).contains(&n) {
            return Err(Failure::Input("-n must lie in 1..=4".into()));
        }
    }
    let cfg = CheckConfig {
        fuzz,
        seed,
        only,
        n,
        signs: if bug { SignConvention::Unsigned } else { SignConvention::Standard },
    };
    let report = run_checks(&cfg);
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
        Format::Latex => report.to_latex(),
    };
    Ok((text, report.passed()))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Jones { input } => cmd_jones(input, cli.format),
        Command::Homology { input, route } => cmd_homology(input, *route, cli.format),
        Command::Nerve { input, n, truncation } => cmd_nerve(input, *n, *truncation, cli.format),
        Command::Doldkan {
            input,
            complex,
            truncation,
            model,
            fuzz,
            seed,
        } => cmd_doldkan(input, complex.as_deref(), *truncation, *model, *fuzz, *seed, cli.format),
        Command::Check {
            fuzz,
            seed,
            only,
            n,
            inject_sign_bug,
        } => cmd_check(*fuzz, *seed, only, *n, *inject_sign_bug, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
