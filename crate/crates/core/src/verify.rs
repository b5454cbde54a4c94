//! The verification suite behind `kh check`.
//!
//! Every check draws from its own seeded stream, so the outcome of one
//! check does not depend on which others run. Output is assembled in a
//! fixed order and never mentions timing or thread counts.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bracket::{bracket_q, jones_j};
use crate::category::{
    khovanov_homology_via_nerve, nerve, nerve_module, random_functor, simplex_category, subdivision_theorem_check,
    FunctorKind, ModuleFunctor,
};
use crate::dold_kan::{gamma, moore_of_simplex, random_complex, roundtrip_check, GammaModel};
use crate::error::{Error, Result};
use crate::fuzz::{diagram_corpus, move_pairs, random_presentation, rng, MAX_FUZZ_CROSSINGS};
use crate::homology::{ChainComplex, HomologyGroup};
use crate::khovanov::{KhovanovComplex, SignConvention};
use crate::link::{catalog, LinkDiagram};
use crate::simplicial::{
    classifying_space, cyclic_group, product, random_module, standard_simplex, FinSimplicialModule, IdentityReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckName {
    Identities,
    Differential,
    Euler,
    Reidemeister,
    Nerve,
    Moore,
    Witness,
    Subdivision,
    Doldkan,
    Classifying,
}

impl CheckName {
    pub const ALL: [CheckName; 10] = [
        CheckName::Identities,
        CheckName::Differential,
        CheckName::Euler,
        CheckName::Reidemeister,
        CheckName::Nerve,
        CheckName::Moore,
        CheckName::Witness,
        CheckName::Subdivision,
        CheckName::Doldkan,
        CheckName::Classifying,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Identities => "identities",
            CheckName::Differential => "differential",
            CheckName::Euler => "euler",
            CheckName::Reidemeister => "reidemeister",
            CheckName::Nerve => "nerve",
            CheckName::Moore => "moore",
            CheckName::Witness => "witness",
            CheckName::Subdivision => "subdivision",
            CheckName::Doldkan => "doldkan",
            CheckName::Classifying => "classifying",
        }
    }

    fn stream(self) -> u64 {
        Self::ALL.iter().position(|&c| c == self).unwrap() as u64
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct CheckConfig {
    /// Random cases per check.
    pub fuzz: usize,
    pub seed: u64,
    /// Checks to run; empty means all.
    pub only: Vec<CheckName>,
    /// Restricts the subdivision check to one simplex dimension.
    pub n: Option<usize>,
    /// Sign rule for the Khovanov differential; anything but the standard
    /// rule is a negative control.
    pub signs: SignConvention,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            fuzz: 10,
            seed: 0,
            only: Vec::new(),
            n: None,
            signs: SignConvention::Standard,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: CheckName,
    pub cases: usize,
    pub failures: Vec<String>,
    /// Extra lines, such as the per-degree subdivision table.
    pub details: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub schema: &'static str,
    pub seed: u64,
    pub fuzz: usize,
    pub checks: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("seed {} fuzz {}\n", self.seed, self.fuzz);
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            out += &format!("{:<13}{status} ({} cases)\n", c.name.as_str(), c.cases);
            for d in &c.details {
                out += &format!("  {d}\n");
            }
            for f in c.failures.iter().take(5) {
                out += &format!("  failure: {f}\n");
            }
            if c.failures.len() > 5 {
                out += &format!("  ... {} more failures\n", c.failures.len() - 5);
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        out += &format!("{} checks, {failed} failed\n", self.checks.len());
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{tabular}{lrl}\ncheck & cases & status \\\\\n\\hline\n");
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "fail" };
            out += &format!("{} & {} & {status} \\\\\n", c.name.as_str(), c.cases);
        }
        out += "\\end{tabular}\n";
        out
    }
}

pub fn run_checks(cfg: &CheckConfig) -> CheckReport {
    let names: Vec<CheckName> = if cfg.only.is_empty() {
        CheckName::ALL.to_vec()
    } else {
        CheckName::ALL.into_iter().filter(|c| cfg.only.contains(c)).collect()
    };
    let checks = names.into_iter().map(|name| run_one(name, cfg)).collect();
    CheckReport {
        schema: "kh/1",
        seed: cfg.seed,
        fuzz: cfg.fuzz,
        checks,
    }
}

fn run_one(name: CheckName, cfg: &CheckConfig) -> CheckOutcome {
    let seed = cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(name.stream());
    let mut out = CheckOutcome {
        name,
        cases: 0,
        failures: Vec::new(),
        details: Vec::new(),
    };
    let result = match name {
        CheckName::Identities => check_identities(seed, cfg.fuzz, &mut out),
        CheckName::Differential => check_differential(seed, cfg, &mut out),
        CheckName::Euler => check_euler(seed, cfg.fuzz, &mut out),
        CheckName::Reidemeister => check_reidemeister(seed, cfg.fuzz, &mut out),
        CheckName::Nerve => check_nerve(&mut out),
        CheckName::Moore => check_moore(seed, cfg.fuzz, &mut out),
        CheckName::Witness => check_witness(seed, cfg.fuzz, &mut out),
        CheckName::Subdivision => check_subdivision(seed, cfg, &mut out),
        CheckName::Doldkan => check_dold_kan(seed, cfg.fuzz, &mut out),
        CheckName::Classifying => check_classifying(&mut out),
    };
    if let Err(e) = result {
        out.failures.push(format!("error: {e}"));
    }
    out
}

fn record(out: &mut CheckOutcome, label: impl fmt::Display, ok: bool) {
    out.cases += 1;
    if !ok {
        out.failures.push(label.to_string());
    }
}

fn record_identities(out: &mut CheckOutcome, label: impl fmt::Display, r: &IdentityReport) {
    out.cases += 1;
    if let Some(v) = r.first_violation() {
        out.failures.push(format!("{label}: {v}"));
    }
}

fn pd(d: &LinkDiagram) -> String {
    d.to_string()
}

fn check_identities(seed: u64, fuzz: usize, out: &mut CheckOutcome) -> Result<()> {
    let mut r = rng(seed);
    for k in 0..fuzz {
        let x = random_presentation(&mut r, 3);
        record_identities(out, format!("presentation {k}"), &x.check_identities());
    }
    for n in 0..=3 {
        record_identities(out, format!("Delta[{n}]"), &standard_simplex(n, 4)?.check_identities());
    }
    for n in 1..=2 {
        let c = simplex_category(n)?;
        record_identities(out, format!("nerve Cat[{n}]"), &nerve(&c, 3)?.check_identities());
        let m = nerve_module(&c, &ModuleFunctor::constant(&c, 1), 3)?;
        record_identities(out, format!("nerve module Cat[{n}]"), &m.check_identities());
    }
    record_identities(out, "B(Z/2)", &classifying_space(&cyclic_group(2), 4)?.check_identities());
    record_identities(out, "B(Z/3)", &classifying_space(&cyclic_group(3), 3)?.check_identities());
    let d1 = standard_simplex(1, 3)?;
    record_identities(out, "Delta[1] x Delta[1]", &product(&d1, &d1)?.check_identities());
    for k in 0..fuzz.min(5) {
        let c = random_complex(&mut r, 2, 2)?;
        record_identities(out, format!("Gamma(C) {k}"), &gamma(&c, 3, GammaModel::Moore)?.module.check_identities());
    }
    Ok(())
}

fn check_differential(seed: u64, cfg: &CheckConfig, out: &mut CheckOutcome) -> Result<()> {
    let corpus = diagram_corpus(seed, cfg.fuzz, MAX_FUZZ_CROSSINGS);
    let results: Vec<(String, bool)> = corpus
        .par_iter()
        .map(|d| {
            let r = KhovanovComplex::build_with(d, cfg.signs);
            (format!("{}: {}", pd(d), r.as_ref().err().map_or(String::new(), |e| e.to_string())), r.is_ok())
        })
        .collect();
    for (label, ok) in results {
        record(out, label, ok);
    }
    Ok(())
}

fn check_euler(seed: u64, fuzz: usize, out: &mut CheckOutcome) -> Result<()> {
    let corpus = diagram_corpus(seed, fuzz, MAX_FUZZ_CROSSINGS);
    let results = corpus
        .par_iter()
        .map(|d| -> Result<(String, bool)> {
            let cx = KhovanovComplex::build(d)?;
            let euler = cx.graded_euler() == bracket_q(d);
            let poincare = cx.homology()?.poincare().at_t_minus_one() == jones_j(d);
            Ok((pd(d), euler && poincare))
        })
        .collect::<Result<Vec<_>>>()?;
    for (label, ok) in results {
        record(out, label, ok);
    }
    Ok(())
}

fn check_reidemeister(seed: u64, fuzz: usize, out: &mut CheckOutcome) -> Result<()> {
    let pairs = move_pairs(seed, fuzz, MAX_FUZZ_CROSSINGS);
    let results = pairs
        .par_iter()
        .map(|p| -> Result<(String, bool)> {
            let h0 = crate::khovanov::khovanov_homology(&p.before)?.nonzero_shifted();
            let h1 = crate::khovanov::khovanov_homology(&p.after)?.nonzero_shifted();
            let ok = h0 == h1 && jones_j(&p.before) == jones_j(&p.after);
            Ok((format!("{} via {:?}", pd(&p.before), p.movement), ok))
        })
        .collect::<Result<Vec<_>>>()?;
    for (label, ok) in results {
        record(out, label, ok);
    }
    Ok(())
}

fn check_nerve(out: &mut CheckOutcome) -> Result<()> {
    let diagrams = [
        ("unknot", catalog::unknot()),
        ("curl", catalog::curl_positive()),
        ("hopf", catalog::hopf()),
        ("trefoil", catalog::trefoil()),
    ];
    for (name, d) in diagrams {
        let direct = crate::khovanov::khovanov_homology(&d)?;
        let via = khovanov_homology_via_nerve(&d)?;
        record(out, name, direct.nonzero_shifted() == via.nonzero_shifted());
    }
    Ok(())
}

fn homology_below(cx: &ChainComplex<i64>, top: i64) -> Result<Vec<HomologyGroup>> {
    let h = cx.homology()?;
    Ok((0..top).map(|k| h.get(&k).cloned().unwrap_or_else(|| HomologyGroup::free(0))).collect())
}

fn check_moore(seed: u64, fuzz: usize, out: &mut CheckOutcome) -> Result<()> {
    let d1 = moore_of_simplex(1)?;
    record(out, "Delta-bar[1] ranks", (d1.rank(0), d1.rank(1)) == (2, 1));
    let mut r = rng(seed);
    for k in 0..fuzz {
        let m = random_module(&mut r, 4);
        let ok = homology_below(&m.moore_complex()?, 4)? == homology_below(&m.chain_complex(), 4)?;
        record(out, format!("module {k}"), ok);
    }
    Ok(())
}

fn check_witness(seed: u64, fuzz: usize, out: &mut CheckOutcome) -> Result<()> {
    let m = FinSimplicialModule::free(&standard_simplex(1, 2)?)?;
    let mut r = rng(seed);
    for k in 0..fuzz.max(1) {
        let mut v = || (0..m.rank(1)).map(|_| r.gen_range(-3..=3)).collect::<Vec<i64>>();
        let (a, b) = (v(), v());
        let ok = match m.homologous_witness(&a, &b) {
            Ok(w) => w.boundary.to_string() == "-[a+b] + a + b",
            Err(_) => false,
        };
        record(out, format!("witness {k}: a = {a:?}, b = {b:?}"), ok);
    }
    Ok(())
}

fn check_subdivision(seed: u64, cfg: &CheckConfig, out: &mut CheckOutcome) -> Result<()> {
    let dims: Vec<usize> = match cfg.n {
        Some(n) => vec![n],
        None => vec![1, 2, 3],
    };
    let mut r = rng(seed);
    for n in dims {
        let c = simplex_category(n)?;
        let kinds = [FunctorKind::Scalar { rank: 1 }, FunctorKind::Scalar { rank: 2 }, FunctorKind::VertexProjection];
        let functors = (0..cfg.fuzz)
            .map(|k| random_functor(&c, n, kinds[k % kinds.len()], &mut r))
            .collect::<Result<Vec<_>>>()?;
        let reports = functors
            .par_iter()
            .map(|f| subdivision_theorem_check(n, f))
            .collect::<Result<Vec<_>>>()?;
        for (k, rep) in reports.iter().enumerate() {
            record(out, format!("n = {n}, functor {k}: mismatch in degrees {:?}", rep.mismatches()), rep.agree());
        }
        if let Some(rep) = reports.first() {
            out.details.extend(rep.to_string().lines().map(|l| format!("n = {n}, functor 0, {l}")));
        }
    }
    Ok(())
}

fn check_dold_kan(seed: u64, fuzz: usize, out: &mut CheckOutcome) -> Result<()> {
    let mut r = rng(seed);
    let complexes = (0..fuzz).map(|_| random_complex(&mut r, 3, 3)).collect::<Result<Vec<_>>>()?;
    let results = complexes
        .par_iter()
        .map(|c| -> Result<bool> {
            let moore = roundtrip_check(c, 4, GammaModel::Moore)?;
            let normalized = roundtrip_check(c, 4, GammaModel::Normalized)?;
            Ok(moore.passed() && normalized.passed())
        })
        .collect::<Result<Vec<_>>>()?;
    for (k, ok) in results.into_iter().enumerate() {
        record(out, format!("complex {k}"), ok);
    }
    Ok(())
}

fn check_classifying(out: &mut CheckOutcome) -> Result<()> {
    let h = classifying_space(&cyclic_group(2), 4)?.chain_complex().homology()?;
    record(out, "B(Z/2): H1 = Z/2", h[&1].to_string() == "Z/2");
    record(out, "B(Z/2): H2 = 0", h[&2].is_zero());
    let t = classifying_space(&cyclic_group(1), 4)?.chain_complex().homology()?;
    record(out, "B(1): positive homology vanishes", (1..4).all(|k| t[&k].is_zero()));
    Ok(())
}
