//! Command-line front end: verification suites, module construction,
//! classification of the truncated shifted quotients, and Drinfeld
//! polynomials.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 usage error.
//! Reports embed (p, m, N, seed, version) and, for the same configuration
//! and seed, the JSON output is byte-identical across runs.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{parse_element, FieldDesc, Fq};
use crate::hopf;
use crate::module::{self, Irreducibility, SuperModule};
use crate::pbw::{center, normal_form, Element, Gen, Kind};
use crate::poly::Poly;
use crate::report::{self, CheckReport, Params};
use crate::rtt;
use crate::series::{Compare, Tail};
use crate::shifted::{self, Shift, Tableau};

#[derive(Parser)]
#[command(
    name = "yangian",
    version,
    about = "Exact computations in the super Yangian of gl(1|1) in odd characteristic",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    cfg: RunConfig,
}

#[derive(Args, Clone)]
struct RunConfig {
    /// Field characteristic; must be an odd prime.
    #[arg(long, global = true, default_value_t = 3)]
    p: u32,

    /// Extension degree m; computations run over F_{p^m}.
    #[arg(long = "ext-degree", global = true, default_value_t = 1)]
    ext_degree: u32,

    /// Truncation order for series comparisons.
    #[arg(long, global = true, default_value_t = 6)]
    order: usize,

    /// Seed for the randomized parts of the suites.
    #[arg(long, global = true, default_value_t = 24210)]
    seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Bound on enumeration sizes (classification sweeps).
    #[arg(long, global = true, default_value_t = 100_000)]
    cap: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteName,
    },
    /// Build a module and report dimension, weights, and verdicts.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Enumerate the simple modules of a truncated shifted quotient.
    Classify {
        /// Shift matrix as "s12,s21".
        #[arg(long, value_parser = parse_shift)]
        shift: Shift,
        /// Level of the truncation.
        #[arg(long)]
        level: usize,
    },
    /// Drinfeld polynomials and finite-dimensionality of a highest weight.
    DrinfeldPoly {
        /// lambda1(u), a polynomial in u^-1 with constant term 1.
        lambda1: String,
        /// lambda2(u), same grammar.
        lambda2: String,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum SuiteName {
    /// RTT defining relations and the Gauss-decomposition inverse.
    Relations,
    /// Normal-form confluence and grading stability on random words.
    Pbw,
    /// Vanishing, centrality, and restricted-basis rank of the p-center.
    Pcenter,
    /// Coproduct, counit, antipode axioms; grouplike property of the center.
    Hopf,
    /// Shift identities and the diagonal-string coproduct.
    Appendix,
    /// Evaluation modules: dimensions, weights, duality, ev(b1) divisibility.
    Evaluation,
}

impl SuiteName {
    fn as_str(self) -> &'static str {
        match self {
            SuiteName::Relations => "relations",
            SuiteName::Pbw => "pbw",
            SuiteName::Pcenter => "pcenter",
            SuiteName::Hopf => "hopf",
            SuiteName::Appendix => "appendix",
            SuiteName::Evaluation => "evaluation",
        }
    }
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Evaluation module with highest weight (1 + l1 u^-1, 1 - l2 u^-1).
    Eval { lambda1: String, lambda2: String },
    /// Tensor product of evaluation modules; each factor is "l1,l2".
    Tensor {
        #[arg(required = true)]
        factors: Vec<String>,
    },
    /// Standard module V(A) of a tableau, rows as "a1,..;b1,..".
    Tableau {
        rows: String,
        /// Shift matrix as "s12,s21".
        #[arg(long, value_parser = parse_shift)]
        shift: Shift,
    },
}

fn parse_shift(src: &str) -> std::result::Result<Shift, String> {
    let (a, b) = src
        .split_once(',')
        .ok_or_else(|| format!("expected \"s12,s21\", got \"{src}\""))?;
    let s12 = a.trim().parse().map_err(|e| format!("s12: {e}"))?;
    let s21 = b.trim().parse().map_err(|e| format!("s21: {e}"))?;
    Ok(Shift::new(s12, s21))
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let cfg = &cli.cfg;
    if cfg.order == 0 {
        return Err(Error::Invalid("truncation order must be at least 1".into()));
    }
    let desc = FieldDesc::new(cfg.p, cfg.ext_degree)?;
    let params = report::params_for(desc, cfg.order, cfg.seed);
    match &cli.cmd {
        Cmd::Verify { suite } => run_suite(*suite, desc, cfg, params),
        Cmd::Module(mc) => run_module(mc, desc, cfg, params),
        Cmd::Classify { shift, level } => run_classify(*shift, *level, desc, cfg, params),
        Cmd::DrinfeldPoly { lambda1, lambda2 } => {
            run_drinfeld(lambda1, lambda2, desc, cfg, params)
        }
    }
}

// ---------------------------------------------------------------- suites

fn run_suite(suite: SuiteName, desc: FieldDesc, cfg: &RunConfig, params: Params) -> Result<i32> {
    let n = cfg.order;
    let checks = match suite {
        SuiteName::Relations => relations_suite(desc, n, params),
        SuiteName::Pbw => pbw_suite(desc, cfg.seed, params),
        SuiteName::Pcenter => pcenter_suite(desc, params),
        SuiteName::Hopf => hopf_suite(desc, n, params),
        SuiteName::Appendix => appendix_suite(desc, n, params),
        SuiteName::Evaluation => evaluation_suite(desc, n, cfg.cap, params)?,
    };
    let ok = checks.iter().all(|c| c.ok());
    match cfg.format {
        Format::Text => {
            for c in &checks {
                println!("{}", c.text_line());
            }
            println!(
                "suite {}: {}",
                suite.as_str(),
                if ok { "pass" } else { "FAIL" }
            );
        }
        Format::Json => {
            let v = report::suite_value(suite.as_str(), params, &checks);
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn option_check<W: Into<Value>>(name: &str, params: Params, w: Option<W>) -> CheckReport {
    match w {
        None => CheckReport::pass(name, params),
        Some(w) => CheckReport::fail(name, params, w.into()),
    }
}

fn rtt_witness_value(w: &rtt::RttWitness) -> Value {
    json!({ "i": w.i, "j": w.j, "k": w.k, "l": w.l, "r": w.r, "s": w.s })
}

fn axiom_witness_value(w: &hopf::AxiomWitness) -> Value {
    json!({ "axiom": w.axiom, "i": w.i, "j": w.j, "r": w.r })
}

fn relations_suite(desc: FieldDesc, n: usize, params: Params) -> Vec<CheckReport> {
    let mut out = Vec::new();
    out.push(option_check(
        "rtt-defining-relations",
        params,
        rtt::verify_rtt_all(desc, n).map(|w| rtt_witness_value(&w)),
    ));
    out.push(gauss_inverse_check(desc, n, params));
    out
}

/// T(u) T'(u) = T'(u) T(u) = 1, multiplied out in the PBW engine.
fn gauss_inverse_check(desc: FieldDesc, n: usize, params: Params) -> CheckReport {
    let t = rtt::t_matrix(desc, n);
    let tp = rtt::t_prime_matrix(desc, n);
    for (label, a, b) in [("t*t'", &t, &tp), ("t'*t", &tp, &t)] {
        for i in 0..2 {
            for j in 0..2 {
                let mut acc: Tail<Element<Fq>> = Tail::zero_tail(n);
                for k in 0..2 {
                    acc = acc.add(&a[i][k].mul(&b[k][j], n));
                }
                let want = if i == j {
                    Tail::one(n)
                } else {
                    Tail::zero_tail(n)
                };
                if let Compare::Differs { index } = acc.compare(&want) {
                    return CheckReport::fail(
                        "gauss-inverse",
                        params,
                        json!({ "product": label, "i": i + 1, "j": j + 1, "coefficient": index }),
                    );
                }
            }
        }
    }
    CheckReport::pass("gauss-inverse", params)
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize, max_sup: u16) -> Vec<Gen> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let kind = Kind::all()[rng.gen_range(0..4)];
            Gen::new(kind, rng.gen_range(1..=max_sup))
        })
        .collect()
}

fn word_strings(w: &[Gen]) -> Vec<String> {
    w.iter()
        .map(|g| format!("{}^({})", g.kind.name(), g.sup))
        .collect()
}

fn pbw_suite(desc: FieldDesc, seed: u64, params: Params) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut witness = None;
    'conf: for _ in 0..200 {
        let w = random_word(&mut rng, 5, 4);
        let whole: Element<Fq> = normal_form(&w);
        let whole = whole.scale(&desc.one());
        for i in 0..=w.len() {
            let left: Element<Fq> = normal_form(&w[..i]);
            let right: Element<Fq> = normal_form(&w[i..]);
            let split = (left * right).scale(&desc.one());
            if whole != split {
                witness = Some(json!({ "word": word_strings(&w), "split": i }));
                break 'conf;
            }
        }
    }
    out.push(option_check("split-confluence", params, witness));

    let mut witness = None;
    'grad: for _ in 0..200 {
        let w = random_word(&mut rng, 6, 4);
        let weight: u64 = w.iter().map(|g| g.sup as u64).sum();
        let parity = (w.iter().filter(|g| g.is_odd()).count() % 2) as u8;
        let zdeg: i64 = w
            .iter()
            .map(|g| match g.kind {
                Kind::E => 1,
                Kind::F => -1,
                _ => 0,
            })
            .sum();
        let nf: Element<Fq> = normal_form(&w);
        let nf = nf.scale(&desc.one());
        for (m, _) in nf.iter() {
            if m.weight() > weight || m.parity() != parity || m.z_degree() != zdeg {
                witness = Some(json!({ "word": word_strings(&w) }));
                break 'grad;
            }
        }
    }
    out.push(option_check("grading-stability", params, witness));
    out
}

fn pcenter_suite(desc: FieldDesc, params: Params) -> Vec<CheckReport> {
    let p = desc.p as usize;
    let mut out = Vec::new();

    let b1 = center::b_series(desc, 1, p - 1);
    let bad = (1..p).find(|&r| !b1.coeff(r).is_zero());
    out.push(option_check(
        "low-coefficients-vanish",
        params,
        bad.map(|r| json!({ "i": 1, "r": r })),
    ));

    for i in 1u8..=2 {
        let mut witness = None;
        'cent: for r in 1..=2 * p {
            if let Some(g) = center::centrality_check(desc, i, r, 4) {
                witness = Some(json!({
                    "i": i,
                    "r": r,
                    "generator": format!("{}^({})", g.kind.name(), g.sup),
                }));
                break 'cent;
            }
        }
        out.push(option_check(
            &format!("centrality-b{i}"),
            params,
            witness,
        ));
    }

    let mut witness = None;
    for w in 1..=2 * p as u64 {
        let rep = center::restricted_slice(desc, w);
        if !(rep.independent && rep.complement) {
            witness = Some(json!({
                "weight": w,
                "dim": rep.dim,
                "restricted": rep.restricted,
                "ideal_rank": rep.ideal_rank,
            }));
            break;
        }
    }
    out.push(option_check(
        "restricted-monomials-independent",
        params,
        witness,
    ));
    out
}

fn bool_check(name: &str, params: Params, ok: bool) -> CheckReport {
    if ok {
        CheckReport::pass(name, params)
    } else {
        CheckReport::fail(name, params, json!("sampled identity failed"))
    }
}

fn hopf_suite(desc: FieldDesc, n: usize, params: Params) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (name, w) in [
        ("counit-axiom", hopf::verify_counit_axiom(desc, n)),
        ("coassociativity", hopf::verify_coassociativity(desc, n)),
        ("antipode-axiom", hopf::verify_antipode_axiom(desc, n)),
        ("antipode-on-generators", hopf::verify_antipode_on_t(desc, n)),
    ] {
        out.push(option_check(
            name,
            params,
            w.map(|w| axiom_witness_value(&w)),
        ));
    }
    out.push(bool_check(
        "coproduct-multiplicative",
        params,
        hopf::verify_coproduct_multiplicative(desc, n),
    ));
    out.push(bool_check(
        "antipode-anti-automorphism",
        params,
        hopf::verify_antipode_anti_hom(desc, n),
    ));
    for i in 1u8..=2 {
        out.push(CheckReport::from_compare(
            &format!("center-grouplike-b{i}"),
            params,
            &hopf::verify_center_coproduct(desc, i, n),
            n,
        ));
    }
    out.push(option_check(
        "center-antipode",
        params,
        hopf::verify_center_antipode(desc, n).map(|(i, r)| json!({ "i": i, "coefficient": r })),
    ));
    out
}

fn appendix_suite(desc: FieldDesc, n: usize, params: Params) -> Vec<CheckReport> {
    let mut out = Vec::new();
    out.push(option_check(
        "shift-identities",
        params,
        rtt::verify_shift_identities(desc, n, 4).map(|w| {
            json!({ "identity": w.identity, "k": w.k, "coefficient": w.order })
        }),
    ));
    for nn in 1..=desc.p {
        out.push(CheckReport::from_compare(
            &format!("diagonal-string-coproduct-{nn}"),
            params,
            &hopf::verify_diagonal_string_coproduct(desc, nn, n),
            n,
        ));
    }
    out
}

fn evaluation_suite(
    desc: FieldDesc,
    n: usize,
    cap: u64,
    params: Params,
) -> Result<Vec<CheckReport>> {
    let q = desc.q();
    if q.saturating_mul(q) > cap {
        return Err(Error::CapExceeded(format!(
            "the sweep covers q^2 = {} weight pairs, more than the cap {cap}",
            q * q
        )));
    }
    let elems: Vec<Fq> = desc.elements().collect();
    let mut dim_witness = None;
    let mut hw_witness = None;
    let mut rtt_witness = None;
    let mut dual_witness = None;
    for l1 in &elems {
        for l2 in &elems {
            let pair = || json!([l1.coeff_string(), l2.coeff_string()]);
            let m = SuperModule::eval(desc, l1, l2);
            let want = if (l1.clone() + l2.clone()).is_zero() { 1 } else { 2 };
            if m.dim() != want && dim_witness.is_none() {
                dim_witness = Some(json!({ "weight": pair(), "dim": m.dim() }));
            }
            if hw_witness.is_none() {
                let want1 = Tail::new(vec![desc.one(), l1.clone()]);
                let want2 = Tail::new(vec![desc.one(), -l2.clone()]);
                match m.highest_weight() {
                    Ok(hw) if hw.lambda1.agrees_with(&want1) && hw.lambda2.agrees_with(&want2) => {}
                    _ => hw_witness = Some(json!({ "weight": pair() })),
                }
            }
            if rtt_witness.is_none() {
                if let Some(w) = m.verify_rtt(n) {
                    rtt_witness =
                        Some(json!({ "weight": pair(), "relation": rtt_witness_value(&w) }));
                }
            }
            if dual_witness.is_none() {
                let dual = m.dual();
                let target = SuperModule::eval(desc, &-l2.clone(), &-l1.clone());
                let same = dual.dim() == target.dim()
                    && match (dual.highest_weight(), target.highest_weight()) {
                        (Ok(a), Ok(b)) => {
                            a.lambda1.agrees_with(&b.lambda1) && a.lambda2.agrees_with(&b.lambda2)
                        }
                        _ => false,
                    };
                if !same {
                    dual_witness = Some(json!({ "weight": pair() }));
                }
            }
        }
    }
    let mut out = vec![
        option_check("dimension-law", params, dim_witness),
        option_check("highest-weight", params, hw_witness),
        option_check("rtt-on-modules", params, rtt_witness),
        option_check("duality", params, dual_witness),
    ];

    let span = 2 * desc.p as usize;
    let series = module::ev_b1_poly(desc, span);
    let divisor = {
        // e11^p - e11 as a univariate polynomial.
        let mut c = vec![desc.zero(); desc.p as usize + 1];
        c[1] = -desc.one();
        c[desc.p as usize] = desc.one();
        Poly::new(c)
    };
    let bad = (1..=span).find(|&r| !divisor.divides(series.coeff(r)).unwrap());
    out.push(option_check(
        "center-divisibility",
        params,
        bad.map(|r| json!({ "r": r })),
    ));
    Ok(out)
}

// --------------------------------------------------------------- modules

fn coeff_text(x: &Fq) -> String {
    let s = x.coeff_string();
    if s.contains(',') {
        format!("({s})")
    } else {
        s
    }
}

fn tail_text(t: &Tail<Fq>) -> String {
    let mut parts = Vec::new();
    for (k, c) in t.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cs = coeff_text(c);
        parts.push(match k {
            0 => cs,
            _ if cs == "1" => format!("u^-{k}"),
            _ => format!("{cs}*u^-{k}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn poly_text(p: &Poly) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = coeff_text(c);
        parts.push(match k {
            0 => cs,
            1 if cs == "1" => "u".into(),
            1 => format!("{cs}*u"),
            _ if cs == "1" => format!("u^{k}"),
            _ => format!("{cs}*u^{k}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn poly_value(p: &Poly) -> Value {
    json!({
        "string": poly_text(p),
        "coeffs": p.coeffs().iter().map(|c| c.coeff_string()).collect::<Vec<_>>(),
    })
}

fn irreducibility_text(v: &Irreducibility) -> String {
    match v {
        Irreducibility::Absolutely => "yes (absolutely)".into(),
        Irreducibility::RelativeOnly => "over the base field only".into(),
        Irreducibility::Reducible { invariant } => format!(
            "no (invariant subspace of dimension {})",
            invariant.len()
        ),
        Irreducibility::Undetermined => "undetermined".into(),
    }
}

fn restricted_text(w: &Option<(u8, usize)>) -> String {
    match w {
        None => "yes".into(),
        Some((i, r)) => format!("no (b{i} coefficient {r} acts nontrivially)"),
    }
}

fn run_module(mc: &ModuleCmd, desc: FieldDesc, cfg: &RunConfig, params: Params) -> Result<i32> {
    match mc {
        ModuleCmd::Eval { lambda1, lambda2 } => {
            let l1 = parse_element(desc, lambda1)?;
            let l2 = parse_element(desc, lambda2)?;
            let m = SuperModule::eval(desc, &l1, &l2);
            print_super_module("eval", &m, params, cfg.format, Vec::new())
        }
        ModuleCmd::Tensor { factors } => {
            let mut m = SuperModule::trivial(desc);
            for f in factors {
                let (a, b) = f.split_once(',').ok_or_else(|| {
                    Error::Parse(format!("factor \"{f}\" is not a \"l1,l2\" pair"))
                })?;
                let l1 = parse_element(desc, a)?;
                let l2 = parse_element(desc, b)?;
                m = m.tensor(&SuperModule::eval(desc, &l1, &l2));
            }
            let extra = vec![("factors".to_string(), json!(factors.len()))];
            print_super_module("tensor", &m, params, cfg.format, extra)
        }
        ModuleCmd::Tableau { rows, shift } => {
            let tab = Tableau::parse(desc, *shift, rows)?;
            print_tableau_module(&tab, params, cfg.format)
        }
    }
}

fn print_super_module(
    kind: &str,
    m: &SuperModule,
    params: Params,
    format: Format,
    extra: Vec<(String, Value)>,
) -> Result<i32> {
    let singular = m.singular_basis();
    let hw = if singular.len() == 1 {
        Some(m.highest_weight()?)
    } else {
        None
    };
    let irr = m.is_irreducible();
    let restr = m.restricted_action_check();
    match format {
        Format::Text => {
            println!("module: {kind}");
            println!("dim: {}", m.dim());
            println!("parity: {}", report::parity_signature(m.parity()));
            println!("degree: {}", m.degree());
            match &hw {
                Some(h) => {
                    println!("highest weight: lambda1 = {}", tail_text(&h.lambda1));
                    println!("                lambda2 = {}", tail_text(&h.lambda2));
                }
                None => println!(
                    "highest weight: not unique (singular space has dimension {})",
                    singular.len()
                ),
            }
            println!("irreducible: {}", irreducibility_text(&irr));
            println!("restricted: {}", restricted_text(&restr));
        }
        Format::Json => {
            let mut obj = json!({
                "command": format!("module {kind}"),
                "params": params,
                "module": report::module_value(m),
                "singular_dimension": singular.len(),
                "highest_weight": hw
                    .as_ref()
                    .map(report::highest_weight_value)
                    .unwrap_or(Value::Null),
                "irreducible": report::irreducibility_value(&irr),
                "restricted": restr.is_none(),
            });
            if let Some((i, r)) = restr {
                obj["restricted_witness"] = json!({ "i": i, "coefficient": r });
            }
            for (k, v) in extra {
                obj[k] = v;
            }
            println!("{}", serde_json::to_string_pretty(&obj).unwrap());
        }
    }
    Ok(0)
}

fn print_tableau_module(tab: &Tableau, params: Params, format: Format) -> Result<i32> {
    let va = shifted::build_va(tab, shifted::certified_order(tab));
    let h = tab.matched();
    let simple = shifted::simple_module(tab)?;
    let (l1, l2) = va.highest_weight()?;
    let cut = tab.level().min(l1.order());
    let (l1, l2) = (l1.truncated(cut), l2.truncated(cut));
    let singular = va.singular_basis();
    let irr = va.is_irreducible();
    let restr = va.restricted_check();
    match format {
        Format::Text => {
            println!("module: tableau {tab}  (shift {},{})", tab.shift().s12, tab.shift().s21);
            println!("dim: {}", va.dim());
            println!("parity: {}", report::parity_signature(va.parity()));
            println!("h: {h}");
            println!("simple quotient dim: {}", simple.dim());
            println!("highest weight: lambda1 = {}", tail_text(&l1));
            println!("                lambda2 = {}", tail_text(&l2));
            println!("singular space dimension: {}", singular.len());
            println!("irreducible: {}", irreducibility_text(&irr));
            println!("restricted: {}", restricted_text(&restr));
        }
        Format::Json => {
            let mut obj = json!({
                "command": "module tableau",
                "params": params,
                "tableau": tab.to_string(),
                "shift": [tab.shift().s12, tab.shift().s21],
                "level": tab.level(),
                "h": h,
                "dim": va.dim(),
                "parity": report::parity_signature(va.parity()),
                "simple_dim": simple.dim(),
                "highest_weight": {
                    "lambda1": report::series_value(&l1),
                    "lambda2": report::series_value(&l2),
                },
                "singular_dimension": singular.len(),
                "irreducible": report::irreducibility_value(&irr),
                "restricted": restr.is_none(),
            });
            if let Some((i, r)) = restr {
                obj["restricted_witness"] = json!({ "i": i, "coefficient": r });
            }
            println!("{}", serde_json::to_string_pretty(&obj).unwrap());
        }
    }
    Ok(0)
}

// ---------------------------------------------- classification, Drinfeld

fn run_classify(
    shift: Shift,
    level: usize,
    desc: FieldDesc,
    cfg: &RunConfig,
    params: Params,
) -> Result<i32> {
    let inner = level.checked_sub(shift.total()).ok_or_else(|| {
        Error::ShapeMismatch(format!(
            "level {level} is smaller than the shift total {}",
            shift.total()
        ))
    })?;
    let budget = desc
        .q()
        .checked_pow((inner + level) as u32)
        .filter(|&b| b <= cfg.cap);
    if budget.is_none() {
        return Err(Error::CapExceeded(format!(
            "q^(k+l) = {}^{} exceeds the cap {}",
            desc.q(),
            inner + level,
            cfg.cap
        )));
    }
    let rows = shifted::classify(desc, shift, level)?;
    match cfg.format {
        Format::Text => {
            for row in &rows {
                let fmt = |xs: &[Fq]| {
                    xs.iter().map(coeff_text).collect::<Vec<_>>().join(",")
                };
                println!(
                    "{};{}  h={}  dim={}  lambda1 = {}  lambda2 = {}",
                    fmt(&row.a),
                    fmt(&row.b),
                    row.h,
                    row.dim,
                    tail_text(&row.lambda1),
                    tail_text(&row.lambda2),
                );
            }
            println!("{} classes", rows.len());
        }
        Format::Json => {
            let obj = json!({
                "command": "classify",
                "params": params,
                "shift": [shift.s12, shift.s21],
                "level": level,
                "count": rows.len(),
                "rows": rows.iter().map(report::class_row_value).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&obj).unwrap());
        }
    }
    Ok(0)
}

/// Parses the series grammar: a sum of terms "c", "c*u^-k", or "u^-k",
/// where c is an integer or a monomial in the extension generator w.
fn parse_tail(desc: FieldDesc, src: &str) -> Result<Tail<Fq>> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty series".into()));
    }
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        // A sign starts a new term unless it follows '^' (as in u^-k).
        if (c == '+' || c == '-') && !cur.is_empty() && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
            if c == '-' {
                cur.push('-');
            }
        } else {
            cur.push(c);
        }
    }
    terms.push(cur);
    let mut coeffs = vec![desc.zero()];
    for term in &terms {
        let (coeff, power) = match term.find("u^-") {
            Some(pos) => {
                let k: usize = term[pos + 3..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad power in \"{term}\"")))?;
                let head = term[..pos].trim_end_matches('*');
                let c = match head {
                    "" => desc.one(),
                    "-" => -desc.one(),
                    _ => parse_element(desc, head)?,
                };
                (c, k)
            }
            None => (parse_element(desc, term)?, 0),
        };
        if power >= coeffs.len() {
            coeffs.resize(power + 1, desc.zero());
        }
        coeffs[power] = coeffs[power].clone() + coeff;
    }
    Ok(Tail::new(coeffs))
}

fn tail_from_monic(p: &Poly) -> Tail<Fq> {
    let k = p.deg().expect("monic polynomial");
    let coeffs = (0..=k).map(|r| p.coeff(k - r)).collect();
    let t = Tail::new(coeffs);
    assert!(t.coeff(0).is_one());
    t
}

fn run_drinfeld(
    l1src: &str,
    l2src: &str,
    desc: FieldDesc,
    cfg: &RunConfig,
    params: Params,
) -> Result<i32> {
    let l1 = parse_tail(desc, l1src)?;
    let l2 = parse_tail(desc, l2src)?;
    for (name, t) in [("lambda1", &l1), ("lambda2", &l2)] {
        if !t.coeff(0).is_one() {
            return Err(Error::Invalid(format!("{name} must have constant term 1")));
        }
        let k = (0..=t.order()).rev().find(|&r| !t.coeff(r).is_zero()).unwrap();
        // Truncated equality of the orbit product with 1 through p*k is an
        // exact certificate: both sides are ratios of monic polynomials of
        // degree p*k in u.
        let n = desc.p as usize * k + 1;
        if let Some(idx) = t.extended(n).restricted_defect(desc.p, n) {
            return Err(Error::NotRestricted(format!(
                "{name}: the p-fold shifted product differs from 1 at u^-{idx}"
            )));
        }
    }
    let (p1, p2) = module::drinfeld_polys(desc, &l1, &l2)?;
    let g = p1.gcd(&p2)?;
    let coprime = g.deg() == Some(0);
    let m = if coprime {
        module::build_finite_irrep(desc, &l1, &l2)?
    } else {
        // Split off the common factor as a one-dimensional twist.
        let r1 = p1.divrem(&g)?.0;
        let r2 = p2.divrem(&g)?.0;
        let reduced = module::build_finite_irrep(
            desc,
            &tail_from_monic(&r1),
            &tail_from_monic(&r2),
        )?;
        reduced.twist(&tail_from_monic(&g))?
    };
    match cfg.format {
        Format::Text => {
            println!("lambda1 = {}", tail_text(&l1));
            println!("lambda2 = {}", tail_text(&l2));
            println!("verdict: finite dimensional");
            println!("P1 = {}", poly_text(&p1));
            println!("P2 = {}", poly_text(&p2));
            if coprime {
                println!("coprime: yes");
            } else {
                println!("coprime: no (common factor {})", poly_text(&g));
            }
            println!("dim = {}", m.dim());
        }
        Format::Json => {
            let mut obj = json!({
                "command": "drinfeld-poly",
                "params": params,
                "lambda1": report::series_value(&l1),
                "lambda2": report::series_value(&l2),
                "verdict": "finite",
                "P1": poly_value(&p1),
                "P2": poly_value(&p2),
                "coprime": coprime,
                "dim": m.dim(),
            });
            if !coprime {
                obj["common_factor"] = poly_value(&g);
            }
            println!("{}", serde_json::to_string_pretty(&obj).unwrap());
        }
    }
    Ok(0)
}
