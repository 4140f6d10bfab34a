use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use jantzen_core::dmodules::{
    act, stabilization_check, weight_space_basis, Element, ModuleFamily, Monomial, OpName,
    StabilizationReport, WeightWindow,
};
use jantzen_core::filtration::{maxext_monodromy_profile, monodromy, verify_monodromy};
use jantzen_core::jantzen::{
    algebraic_jantzen, compare_filtrations, composition_series_check_with, sum_formula_check,
    ComparisonReport, CompositionReport, JantzenError, SumFormulaReport,
};
use jantzen_core::linalg::QMatrix;
use jantzen_core::render::{build_diagram, emit, figure_spec, DiagramKind, DiagramSpec, Format};
use jantzen_core::scalar::{rat, Rational};
use jantzen_core::weyl::{
    casimir_identity_check, check_resolution_complexes, commutation_relations, parse_operator,
    CasimirReport, CommutationRelation, ResolutionReport,
};

use crate::{
    ActArgs, Cli, Command, FigureArgs, JantzenArgs, MonodromyArgs, NormalOrderArgs, OutFormat,
    VerifyArgs, WeightsArgs, WindowArgs,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

fn internal(e: impl fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn new(text: String, passed: bool) -> Self {
        Output { text, passed }
    }

    fn json<T: Serialize>(value: &T, passed: bool) -> Result<Self, CliError> {
        let text = serde_json::to_string_pretty(value).map_err(internal)? + "\n";
        Ok(Output { text, passed })
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Verify(a) => verify(a, cli.json),
        Command::Act(a) => act_cmd(a, cli.json),
        Command::Weights(a) => weights(a, cli.json),
        Command::Monodromy(a) => monodromy_cmd(a, cli.json),
        Command::Jantzen(a) => jantzen(a, cli.json),
        Command::Figure(a) => figure(a, cli.json),
        Command::NormalOrder(a) => normal_order(a, cli.json),
    }
}

fn window(w: &WindowArgs) -> Result<WeightWindow, CliError> {
    let def = WeightWindow::default_for(w.slice);
    let win = WeightWindow::new(w.wmin.unwrap_or(def.wmin), w.wmax.unwrap_or(def.wmax));
    if win.is_empty() {
        return Err(usage(format!(
            "empty weight window [{}, {}]",
            win.wmin, win.wmax
        )));
    }
    Ok(win)
}

fn check_order(n: usize, min: usize) -> Result<(), CliError> {
    if n < min {
        return Err(usage(format!("--n must be at least {min}")));
    }
    Ok(())
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var("JANTZEN_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("JANTZEN_SEED={v:?} is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

#[derive(Serialize)]
struct RandomReport {
    seed: u64,
    samples: usize,
    failures: Vec<String>,
}

/// Random `P J P^{-1}` with `J` a random nilpotent Jordan matrix of size at most 6.
fn random_nilpotent(rng: &mut ChaCha8Rng) -> QMatrix {
    let d = rng.gen_range(1..=6);
    let mut j = QMatrix::zeros(d, d);
    let mut i = 0;
    while i < d {
        let b = rng.gen_range(1..=d - i);
        for t in i..i + b - 1 {
            j.set(t + 1, t, rat(1));
        }
        i += b;
    }
    let p = loop {
        let rows: Vec<Vec<Rational>> = (0..d)
            .map(|_| (0..d).map(|_| rat(rng.gen_range(-3..=3))).collect())
            .collect();
        let p = QMatrix::from_rows(d, rows).expect("square");
        if p.inverse().is_some() {
            break p;
        }
    };
    let inv = p.inverse().expect("invertible");
    p.mul(&j).and_then(|pj| pj.mul(&inv)).expect("square")
}

fn random_suite(seed: u64, samples: usize) -> Result<RandomReport, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..samples {
        let m = random_nilpotent(&mut rng);
        let f = monodromy(&m).map_err(internal)?;
        let check = verify_monodromy(&m, &f).map_err(internal)?;
        if !check.passed() {
            failures.push(format!("case {case}: {}", check.failures.join("; ")));
        }
    }
    Ok(RandomReport {
        seed,
        samples,
        failures,
    })
}

#[derive(Serialize, Default)]
struct VerifyReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    relations: Option<Vec<CommutationRelation>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    casimir: Option<CasimirReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    resolutions: Option<ResolutionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stabilization: Option<Vec<StabilizationReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    random: Option<RandomReport>,
    passed: bool,
}

fn verify(a: &VerifyArgs, json: bool) -> Result<Output, CliError> {
    if !(a.all || a.relations || a.resolutions || a.stabilization || a.random) {
        return Err(usage(
            "verify needs one of --all, --relations, --resolutions, --stabilization, --random",
        ));
    }
    check_order(a.n, 2)?;
    let seed = seed(a.seed)?;
    let mut rep = VerifyReport::default();
    let mut text = String::new();
    let mut passed = true;
    if a.all || a.relations {
        let rels = commutation_relations(a.n).map_err(internal)?;
        for r in &rels {
            passed &= r.holds;
            let _ = writeln!(text, "{}  {:<22} {}", mark(r.holds), r.name, r.computed);
        }
        let cas = casimir_identity_check(a.n).map_err(internal)?;
        passed &= cas.passed();
        let _ = writeln!(
            text,
            "{}  {:<22} {}",
            mark(cas.passed()),
            "L(Omega) = R_h^2 + 2R_h",
            cas.l_omega
        );
        let _ = writeln!(
            text,
            "{}  {:<22} {}",
            mark(cas.hc_is_h2_plus_2h),
            "HC(Omega)",
            cas.hc_projection
        );
        rep.relations = Some(rels);
        rep.casimir = Some(cas);
    }
    if a.all || a.resolutions {
        let res = check_resolution_complexes(a.n).map_err(internal)?;
        for c in &res.complexes {
            passed &= c.is_complex;
            let _ = writeln!(
                text,
                "{}  {:<22} d0 d1 = {}",
                mark(c.is_complex),
                c.name,
                c.composition
            );
        }
        rep.resolutions = Some(res);
    }
    if a.all || a.stabilization {
        let orders: Vec<usize> = (2..=a.n.max(2)).collect();
        let mut reports = Vec::new();
        for slice in -2..=3 {
            let r = stabilization_check(slice, WeightWindow::default_for(slice), &orders)
                .map_err(internal)?;
            let ok = r.stable && r.matches_maxext;
            passed &= ok;
            let dims: Vec<usize> = r.rows.iter().map(|row| row.maxext_dim).collect();
            let _ = writeln!(
                text,
                "{}  stabilization slice {:<3} n = {:?}, dims {:?}",
                mark(ok),
                slice,
                orders,
                dims
            );
            reports.push(r);
        }
        rep.stabilization = Some(reports);
    }
    if a.all || a.random {
        let r = random_suite(seed, a.samples)?;
        let ok = r.failures.is_empty();
        passed &= ok;
        let _ = writeln!(
            text,
            "{}  monodromy axioms on {} random matrices (seed {})",
            mark(ok),
            r.samples,
            r.seed
        );
        for f in &r.failures {
            let _ = writeln!(text, "      {f}");
        }
        rep.random = Some(r);
    }
    rep.passed = passed;
    if json {
        Output::json(&rep, passed)
    } else {
        Ok(Output::new(text, passed))
    }
}

fn parse_family(name: &str, n: usize) -> Result<ModuleFamily, CliError> {
    ModuleFamily::parse(name, n).map_err(usage)
}

fn act_cmd(a: &ActArgs, json: bool) -> Result<Output, CliError> {
    check_order(a.n, 1)?;
    let family = parse_family(&a.family, a.n)?;
    let op: OpName = a.op.parse().map_err(usage)?;
    let mono: Monomial = a.monomial.parse().map_err(usage)?;
    let v = Element::monomial(family, mono).map_err(usage)?;
    let out = act(op, &v);
    if json {
        Output::json(&out, true)
    } else {
        Ok(Output::new(format!("{out}\n"), true))
    }
}

#[derive(Serialize)]
struct WeightSpace {
    weight: i64,
    basis: Vec<Monomial>,
    labels: Vec<String>,
}

#[derive(Serialize)]
struct WeightsReport {
    family: ModuleFamily,
    slice: i64,
    window: WeightWindow,
    weights: Vec<WeightSpace>,
}

fn weights(a: &WeightsArgs, json: bool) -> Result<Output, CliError> {
    check_order(a.n, 1)?;
    let family = parse_family(&a.family, a.n)?;
    let win = window(&a.window)?;
    let slice = a.window.slice;
    let spaces: Vec<WeightSpace> = win
        .weights(slice)
        .into_iter()
        .map(|w| {
            let basis = weight_space_basis(family, slice, w);
            let labels = basis.iter().map(|m| m.text(family)).collect();
            WeightSpace {
                weight: w,
                basis,
                labels,
            }
        })
        .collect();
    if json {
        return Output::json(
            &WeightsReport {
                family,
                slice,
                window: win,
                weights: spaces,
            },
            true,
        );
    }
    let mut text = format!("{family}, slice {slice}\n");
    for s in &spaces {
        let _ = writeln!(
            text,
            "{:>4}  dim {}  {}",
            s.weight,
            s.basis.len(),
            s.labels.join(", ")
        );
    }
    Ok(Output::new(text, true))
}

fn monodromy_cmd(a: &MonodromyArgs, json: bool) -> Result<Output, CliError> {
    let win = window(&a.window)?;
    let prof = maxext_monodromy_profile(a.window.slice, win).map_err(internal)?;
    let passed = prof.passed();
    if json {
        return Output::json(&prof, passed);
    }
    let mut text = format!("MaxExt slice {}: dims of mu^r for r = -2..1\n", prof.slice);
    for row in &prof.rows {
        let gr: Vec<String> = row
            .gr_dims
            .iter()
            .map(|(r, d)| format!("gr^{r}={d}"))
            .collect();
        let _ = writeln!(
            text,
            "{}  weight {:>4}  dim {}  mu {:?}  {}",
            mark(row.verified && row.matches_image_kernel),
            row.weight,
            row.basis.len(),
            row.mu_dims,
            gr.join(" ")
        );
    }
    Ok(Output::new(text, passed))
}

#[derive(Serialize)]
struct LayerRow {
    weight: i64,
    dims: Vec<usize>,
}

#[derive(Serialize)]
struct JantzenReport {
    slice: i64,
    n: usize,
    window: WeightWindow,
    layers: Vec<LayerRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comparison: Option<ComparisonReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sum_formula: Option<SumFormulaReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    composition: Option<CompositionReport>,
    passed: bool,
}

fn jantzen_error(e: JantzenError) -> CliError {
    match e {
        JantzenError::DepthUnresolved { .. } => CliError::Failed(format!("{e}; try a larger --n")),
        other => internal(other),
    }
}

fn jantzen(a: &JantzenArgs, json: bool) -> Result<Output, CliError> {
    check_order(a.n, 2)?;
    let win = window(&a.window)?;
    let slice = a.window.slice;
    if (a.sum_formula || a.composition) && slice < 0 {
        return Err(usage(
            "--sum-formula and --composition need a nonnegative slice",
        ));
    }
    let alg = algebraic_jantzen(slice, a.n, win).map_err(jantzen_error)?;
    let layers = alg
        .weights
        .iter()
        .map(|w| LayerRow {
            weight: w.weight,
            dims: w.dims(),
        })
        .collect();
    let mut rep = JantzenReport {
        slice,
        n: a.n,
        window: win,
        layers,
        comparison: None,
        sum_formula: None,
        composition: None,
        passed: true,
    };
    let mut text = format!("Shriek slice {slice}, n = {}: dims of M^i\n", a.n);
    for l in &rep.layers {
        let _ = writeln!(text, "{:>4}  {:?}", l.weight, l.dims);
    }
    if a.compare {
        let c = compare_filtrations(slice, a.n, win).map_err(jantzen_error)?;
        rep.passed &= c.aligned();
        let _ = writeln!(
            text,
            "comparison: shift {}, geometric shift {}",
            c.shift, c.geometric_shift
        );
        for w in &c.weights {
            let _ = writeln!(
                text,
                "{:>4}  {:<8}  algebraic {:?}  geometric {:?}  raw_equal {}",
                w.weight, w.verdict, w.layers, w.geometric_layers, w.raw_equal
            );
        }
        rep.comparison = Some(c);
    }
    if a.sum_formula {
        let s = sum_formula_check(slice, a.n, win).map_err(jantzen_error)?;
        rep.passed &= s.passed();
        let _ = writeln!(text, "{}  sum formula", mark(s.passed()));
        for r in &s.rows {
            let _ = writeln!(
                text,
                "{:>4}  sum {}  expected {}",
                r.weight, r.sum, r.expected
            );
        }
        rep.sum_formula = Some(s);
    }
    if a.composition {
        let c = composition_series_check_with(slice, a.n, win).map_err(jantzen_error)?;
        rep.passed &= c.passed();
        let _ = writeln!(text, "{}  composition series", mark(c.passed()));
        for r in &c.rows {
            let _ = writeln!(
                text,
                "{:>4}  gr0 {} (L: {})  gr1 {} (M: {})  higher {}",
                r.weight, r.gr0, r.expected_simple, r.gr1, r.expected_verma, r.higher
            );
        }
        rep.composition = Some(c);
    }
    let passed = rep.passed;
    if json {
        Output::json(&rep, passed)
    } else {
        Ok(Output::new(text, passed))
    }
}

fn parse_slices(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || usage(format!("invalid --slices {s:?}, expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b): (i64, i64) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn figure_spec_from(a: &FigureArgs) -> Result<DiagramSpec, CliError> {
    let mut spec = match (a.which, &a.kind) {
        (Some(w), _) => {
            figure_spec(w).ok_or_else(|| usage(format!("no figure {w}, expected 1..8")))?
        }
        (None, Some(k)) => {
            let kind = DiagramKind::parse(k).map_err(usage)?;
            let slice = a.slice.unwrap_or(0);
            DiagramSpec::single(kind, slice, WeightWindow::default_for(slice), 3)
        }
        (None, None) => return Err(usage("figure needs --which or --kind")),
    };
    if let (Some(_), Some(k)) = (a.which, &a.kind) {
        spec.kind = DiagramKind::parse(k).map_err(usage)?;
    }
    if let Some(s) = a.slice {
        spec.slice_min = s;
        spec.slice_max = s;
    }
    if let Some(s) = &a.slices {
        (spec.slice_min, spec.slice_max) = parse_slices(s)?;
    }
    spec.window = WeightWindow::new(
        a.wmin.unwrap_or(spec.window.wmin),
        a.wmax.unwrap_or(spec.window.wmax),
    );
    if spec.window.is_empty() {
        return Err(usage(format!(
            "empty weight window [{}, {}]",
            spec.window.wmin, spec.window.wmax
        )));
    }
    if let Some(n) = a.n {
        check_order(n, 1)?;
        spec.n = n;
    }
    Ok(spec)
}

fn figure(a: &FigureArgs, json: bool) -> Result<Output, CliError> {
    let spec = figure_spec_from(a)?;
    let format = match (json, a.format) {
        (true, _) | (_, OutFormat::Json) => Format::Json,
        (_, OutFormat::Dot) => Format::Dot,
        (_, OutFormat::Ascii) => Format::Ascii,
    };
    let d = build_diagram(&spec).map_err(internal)?;
    let mut text = emit(&d, format);
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| internal(format!("{}: {e}", path.display())))?;
            Ok(Output::new(String::new(), true))
        }
        None => Ok(Output::new(text, true)),
    }
}

#[derive(Serialize)]
struct NormalOrderReport<'a> {
    input: &'a str,
    order: usize,
    normal_form: String,
}

fn normal_order(a: &NormalOrderArgs, json: bool) -> Result<Output, CliError> {
    check_order(a.n, 1)?;
    let op = parse_operator(&a.expr, a.n).map_err(usage)?;
    if json {
        Output::json(
            &NormalOrderReport {
                input: &a.expr,
                order: a.n,
                normal_form: op.to_string(),
            },
            true,
        )
    } else {
        Ok(Output::new(format!("{op}\n"), true))
    }
}
