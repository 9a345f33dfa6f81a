use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;
use xasp_core::format::parse_aspif_with_warnings;
use xasp_core::{
    analyze_assumptions, assumption_diagnostic, build_support_table, cautious_consequences, emit_dot, emit_text,
    enumerate_answer_sets, explanation_graphs_capped, is_answer_set, parse_program, validate_explanation_graph,
    well_founded_model, Atom, AtomSet, GraphDocument, GroundProgram, Interpretation, SolveOptions, SupportSet,
    SupportTable,
};

use crate::args::{AssumptionSelector, Command, GraphOutput, InputArgs, InputFormat, ListOutput, SelectArgs};
use crate::{CliError, Paint};

type Out<'a> = &'a mut dyn Write;

pub fn dispatch(cmd: Command, out: Out, err: Out, paint: Paint) -> Result<(), CliError> {
    match cmd {
        Command::Solve { input, limit, output } => solve(&input, limit, output, out, err),
        Command::Cautious { input, output } => cautious(&input, output, out, err),
        Command::Wf { input, output } => wf(&input, output, out, err),
        Command::Supports { input, select, output } => supports(&input, &select, output, out, err, paint),
        Command::Assumptions { input, select, selection_cap, diagnose, output } => {
            assumptions(&input, &select, selection_cap.get(), diagnose, output, out, err, paint)
        }
        Command::Explain { input, select, atom, assumption_set, selection_cap, output, out_dir } => {
            let select = select.into();
            let req = ExplainRequest {
                atom: &atom,
                assumption_set,
                selection_cap: selection_cap.get(),
                output,
                out_dir: out_dir.as_deref(),
            };
            explain(&input, &select, &req, out, err, paint)
        }
    }
}

fn load(input: &InputArgs, err: Out) -> Result<GroundProgram, CliError> {
    let path = input.input.display().to_string();
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(&input.input).map_err(|e| CliError::Input(format!("{path}: {e}")))?
    };
    let format = input.format.unwrap_or_else(|| {
        if input.input.extension().is_some_and(|e| e == "aspif") {
            InputFormat::Aspif
        } else {
            InputFormat::Native
        }
    });
    match format {
        InputFormat::Native => parse_program(&text).map_err(|e| CliError::Input(format!("{path}:{e}"))),
        InputFormat::Aspif => {
            let (p, warnings) = parse_aspif_with_warnings(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
            for w in warnings {
                writeln!(err, "warning: {path}: {w}")?;
            }
            Ok(p)
        }
    }
}

fn solve_opts(input: &InputArgs) -> SolveOptions {
    SolveOptions { branching_cap: input.branching_cap.get(), limit: None }
}

fn names<'a>(p: &GroundProgram, atoms: impl IntoIterator<Item = &'a Atom>) -> Vec<String> {
    let mut v: Vec<String> = atoms.into_iter().map(|a| p.name(*a).to_string()).collect();
    v.sort();
    v
}

fn json(out: Out, value: &impl Serialize) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::Internal(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn solve(input: &InputArgs, limit: Option<usize>, output: ListOutput, out: Out, err: Out) -> Result<(), CliError> {
    let p = load(input, err)?;
    let opts = SolveOptions { limit, ..solve_opts(input) };
    let sets = enumerate_answer_sets(&p, &opts)?;
    match output {
        ListOutput::Text => {
            for s in &sets {
                writeln!(out, "{}", p.set_str(s.as_set()))?;
            }
            writeln!(out, "{} answer set(s)", sets.len())?;
        }
        ListOutput::Structured => {
            #[derive(Serialize)]
            struct Listing {
                answer_sets: Vec<Vec<String>>,
                count: usize,
            }
            let answer_sets: Vec<Vec<String>> = sets.iter().map(|s| names(&p, s.as_set())).collect();
            json(out, &Listing { count: answer_sets.len(), answer_sets })?;
        }
    }
    Ok(())
}

fn cautious(input: &InputArgs, output: ListOutput, out: Out, err: Out) -> Result<(), CliError> {
    let p = load(input, err)?;
    let c = cautious_consequences(&p, input.branching_cap.get())?;
    match output {
        ListOutput::Text if c.inconsistent => writeln!(out, "inconsistent: the program has no answer set")?,
        ListOutput::Text => {
            writeln!(out, "C+ = {}", p.set_str(&c.c_plus))?;
            writeln!(out, "C- = {}", p.set_str(&c.c_minus))?;
        }
        ListOutput::Structured => {
            #[derive(Serialize)]
            struct Cautious {
                inconsistent: bool,
                c_plus: Vec<String>,
                c_minus: Vec<String>,
            }
            let (plus, minus) = if c.inconsistent { (vec![], vec![]) } else { (names(&p, &c.c_plus), names(&p, &c.c_minus)) };
            json(out, &Cautious { inconsistent: c.inconsistent, c_plus: plus, c_minus: minus })?;
        }
    }
    Ok(())
}

fn wf(input: &InputArgs, output: ListOutput, out: Out, err: Out) -> Result<(), CliError> {
    let p = load(input, err)?;
    let m = well_founded_model(&p);
    match output {
        ListOutput::Text => {
            writeln!(out, "true = {}", p.set_str(&m.wf_true))?;
            writeln!(out, "false = {}", p.set_str(&m.wf_false))?;
            writeln!(out, "unknown = {}", p.set_str(&m.unknown))?;
        }
        ListOutput::Structured => {
            #[derive(Serialize)]
            struct Wf {
                #[serde(rename = "true")]
                wf_true: Vec<String>,
                #[serde(rename = "false")]
                wf_false: Vec<String>,
                unknown: Vec<String>,
            }
            json(out, &Wf { wf_true: names(&p, &m.wf_true), wf_false: names(&p, &m.wf_false), unknown: names(&p, &m.unknown) })?;
        }
    }
    Ok(())
}

/// Splits on commas outside parentheses; tolerates surrounding braces.
fn split_atoms(s: &str) -> Vec<String> {
    let s = s.trim();
    let s = s.strip_prefix('{').and_then(|x| x.strip_suffix('}')).unwrap_or(s);
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        if !c.is_whitespace() {
            cur.push(c);
        }
    }
    parts.push(cur);
    parts.into_iter().filter(|x| !x.is_empty()).collect()
}

fn unknown_atom(p: &GroundProgram, name: &str) -> CliError {
    let mut scored: Vec<(usize, &str)> =
        p.atoms().iter().map(|(_, n)| (strsim::levenshtein(name, n), n)).filter(|(d, _)| *d <= (name.len() / 3).max(2)).collect();
    scored.sort();
    let close: Vec<String> = scored.iter().take(3).map(|(_, n)| format!("`{n}`")).collect();
    if close.is_empty() {
        CliError::Input(format!("unknown atom `{name}`"))
    } else {
        CliError::Input(format!("unknown atom `{name}`; did you mean {}?", close.join(", ")))
    }
}

fn lookup_atom(p: &GroundProgram, name: &str) -> Result<Atom, CliError> {
    let canon: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    p.atom(&canon).ok_or_else(|| unknown_atom(p, &canon))
}

fn select(p: &GroundProgram, sel: &SelectArgs, input: &InputArgs) -> Result<Vec<Interpretation>, CliError> {
    if let Some(lits) = &sel.answer_set_lits {
        let atoms = split_atoms(lits).iter().map(|n| lookup_atom(p, n)).collect::<Result<AtomSet, _>>()?;
        let ans = Interpretation::from(atoms);
        if !is_answer_set(p, &ans) {
            return Err(CliError::Input(format!("{} is not an answer set of the program", p.set_str(ans.as_set()))));
        }
        return Ok(vec![ans]);
    }
    if sel.all {
        let sets = enumerate_answer_sets(p, &solve_opts(input))?;
        if sets.is_empty() {
            return Err(CliError::Input("the program has no answer set".into()));
        }
        return Ok(sets);
    }
    let i = sel.answer_set.unwrap_or(0);
    let opts = SolveOptions { limit: Some(i + 1), ..solve_opts(input) };
    let mut sets = enumerate_answer_sets(p, &opts)?;
    if i >= sets.len() {
        let all = enumerate_answer_sets(p, &solve_opts(input))?.len();
        return Err(CliError::Input(format!("answer set index {i} is out of range: the program has {all} answer set(s)")));
    }
    Ok(vec![sets.swap_remove(i)])
}

fn support_strs(p: &GroundProgram, s: &SupportSet) -> Vec<String> {
    match s {
        SupportSet::Literals(l) => l.iter().map(|x| p.literal_str(*x)).collect(),
        SupportSet::Fact => vec!["T".into()],
        SupportSet::NoRule => vec!["F".into()],
        SupportSet::Assume => vec!["assume".into()],
    }
}

fn render_table(p: &GroundProgram, t: &SupportTable, paint: Paint) -> String {
    let mut s = String::new();
    for (k, sets) in t.entries() {
        let sets: Vec<String> = sets.iter().map(|x| x.render(p)).collect();
        s.push_str(&format!("{} : [{}]\n", paint.bold(&p.literal_str(*k)), sets.join(", ")));
    }
    s
}

fn supports(input: &InputArgs, sel: &SelectArgs, output: ListOutput, out: Out, err: Out, paint: Paint) -> Result<(), CliError> {
    let p = load(input, err)?;
    let chosen = select(&p, sel, input)?;
    #[derive(Serialize)]
    struct Entry {
        key: String,
        supports: Vec<Vec<String>>,
    }
    #[derive(Serialize)]
    struct Table {
        answer_set: Vec<String>,
        entries: Vec<Entry>,
    }
    let mut tables = Vec::new();
    for (i, ans) in chosen.iter().enumerate() {
        let t = build_support_table(&p, ans)?;
        match output {
            ListOutput::Text => {
                if sel.all {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    writeln!(out, "% answer set {i}: {}", p.set_str(ans.as_set()))?;
                }
                write!(out, "{}", render_table(&p, &t, paint))?;
            }
            ListOutput::Structured => tables.push(Table {
                answer_set: names(&p, ans.as_set()),
                entries: t
                    .entries()
                    .iter()
                    .map(|(k, v)| Entry { key: p.literal_str(*k), supports: v.iter().map(|s| support_strs(&p, s)).collect() })
                    .collect(),
            }),
        }
    }
    if output == ListOutput::Structured {
        json(out, &tables)?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn assumptions(
    input: &InputArgs,
    sel: &SelectArgs,
    cap: usize,
    diagnose: bool,
    output: ListOutput,
    out: Out,
    err: Out,
    paint: Paint,
) -> Result<(), CliError> {
    let p = load(input, err)?;
    let chosen = select(&p, sel, input)?;
    let c = cautious_consequences(&p, input.branching_cap.get())?;
    #[derive(Serialize)]
    struct Diagnostic {
        cautious_equals_answer_set: bool,
        well_founded_equals_answer_set: bool,
    }
    #[derive(Serialize)]
    struct Report {
        answer_set: Vec<String>,
        tentative: Vec<String>,
        must_assume: Vec<String>,
        dependencies: BTreeMap<String, Vec<String>>,
        truncated: Vec<String>,
        assumption_sets: Vec<Vec<String>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        diagnostics: Option<Vec<Diagnostic>>,
    }
    let mut reports = Vec::new();
    for (i, ans) in chosen.iter().enumerate() {
        let table = build_support_table(&p, ans)?;
        let a = analyze_assumptions(&p, ans, &c, &table, cap)?;
        for t in &a.tentative.truncated {
            writeln!(err, "warning: selection cap {cap} reached for {}; treated as must-assume", p.name(*t))?;
        }
        let diagnostics = if diagnose {
            let mut v = Vec::new();
            for u in &a.assumption_sets {
                let d = assumption_diagnostic(&p, ans, u, input.branching_cap.get())?;
                v.push(Diagnostic {
                    cautious_equals_answer_set: d.cautious_equals_answer_set,
                    well_founded_equals_answer_set: d.well_founded_equals_answer_set,
                });
            }
            Some(v)
        } else {
            None
        };
        let dependencies: BTreeMap<String, Vec<String>> =
            a.tentative.dependencies.iter().map(|(k, v)| (p.name(*k).to_string(), names(&p, v))).collect();
        let report = Report {
            answer_set: names(&p, ans.as_set()),
            tentative: names(&p, &a.tentative.atoms),
            must_assume: names(&p, &a.tentative.must_assume),
            dependencies,
            truncated: names(&p, &a.tentative.truncated),
            assumption_sets: a.assumption_sets.iter().map(|u| names(&p, &u.atoms)).collect(),
            diagnostics,
        };
        match output {
            ListOutput::Text => {
                if sel.all {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    writeln!(out, "% answer set {i}: {}", p.set_str(ans.as_set()))?;
                }
                let braces = |v: &[String]| format!("{{{}}}", v.join(","));
                writeln!(out, "{} = {}", paint.bold("TA"), braces(&report.tentative))?;
                writeln!(out, "{} = {}", paint.bold("T"), braces(&report.must_assume))?;
                writeln!(out, "{}:", paint.bold("DA"))?;
                for (k, v) in &report.dependencies {
                    writeln!(out, "  {k} -> {}", braces(v))?;
                }
                for (j, u) in report.assumption_sets.iter().enumerate() {
                    write!(out, "{} = {}", paint.bold(&format!("U[{j}]")), braces(u))?;
                    if let Some(d) = report.diagnostics.as_ref().map(|d| &d[j]) {
                        let yn = |b: bool| if b { "yes" } else { "no" };
                        write!(
                            out,
                            "  (cautious = A: {}, well-founded = A: {})",
                            yn(d.cautious_equals_answer_set),
                            yn(d.well_founded_equals_answer_set)
                        )?;
                    }
                    writeln!(out)?;
                }
            }
            ListOutput::Structured => reports.push(report),
        }
    }
    if output == ListOutput::Structured {
        json(out, &reports)?;
    }
    Ok(())
}

pub struct ExplainRequest<'a> {
    pub atom: &'a str,
    pub assumption_set: AssumptionSelector,
    pub selection_cap: usize,
    pub output: GraphOutput,
    pub out_dir: Option<&'a Path>,
}

/// Atom name reduced to `[A-Za-z0-9_]`, for file names.
fn sanitize(name: &str) -> String {
    let s: String = name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' }).collect();
    let s = s.trim_matches('_');
    if s.is_empty() { "atom".into() } else { s.to_string() }
}

fn explain(input: &InputArgs, sel: &SelectArgs, req: &ExplainRequest, out: Out, err: Out, paint: Paint) -> Result<(), CliError> {
    let p = load(input, err)?;
    let atom = lookup_atom(&p, req.atom)?;
    let ans = select(&p, sel, input)?.remove(0);
    let c = cautious_consequences(&p, input.branching_cap.get())?;
    let table = build_support_table(&p, &ans)?;
    let a = analyze_assumptions(&p, &ans, &c, &table, req.selection_cap)?;
    for t in &a.tentative.truncated {
        writeln!(err, "warning: selection cap {} reached for {}; treated as must-assume", req.selection_cap, p.name(*t))?;
    }
    let chosen: Vec<usize> = match req.assumption_set {
        AssumptionSelector::All => (0..a.assumption_sets.len()).collect(),
        AssumptionSelector::Index(i) if i < a.assumption_sets.len() => vec![i],
        AssumptionSelector::Index(i) => {
            return Err(CliError::Input(format!(
                "assumption set index {i} is out of range: there are {} minimal assumption set(s)",
                a.assumption_sets.len()
            )))
        }
    };
    if let Some(dir) = req.out_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    }
    let stem = sanitize(p.name(atom));
    let mut first = true;
    for ui in chosen {
        let u = &a.assumption_sets[ui];
        let found = explanation_graphs_capped(atom, &table, u, req.selection_cap)?;
        if found.truncated {
            writeln!(err, "warning: selection cap {} reached; the graph list may be incomplete", req.selection_cap)?;
        }
        if found.graphs.is_empty() {
            writeln!(err, "warning: no explanation graph for {} under assumption set {ui}", p.name(atom))?;
        }
        for (gi, g) in found.graphs.iter().enumerate() {
            validate_explanation_graph(g, &p, &ans, u)
                .map_err(|v| CliError::Internal(format!("emitted graph {gi} under assumption set {ui} is invalid: {v}")))?;
            let doc = GraphDocument::new(g, &p, &ans, u);
            let body = match req.output {
                GraphOutput::Dot => emit_dot(&doc),
                GraphOutput::Structured => doc.to_json(),
                GraphOutput::Text => colored_text(&doc, paint),
            };
            match req.out_dir {
                Some(dir) => {
                    let path = dir.join(format!("explain_{stem}_{ui}_{gi}.{}", req.output.extension()));
                    fs::write(&path, &body).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    writeln!(out, "{}", path.display())?;
                }
                None => {
                    if !first && req.output != GraphOutput::Structured {
                        writeln!(out)?;
                    }
                    match req.output {
                        GraphOutput::Dot => writeln!(out, "// assumption set {ui} {}, graph {gi}", p.set_str(&u.atoms))?,
                        GraphOutput::Text => writeln!(out, "# assumption set {ui} {}, graph {gi}", p.set_str(&u.atoms))?,
                        GraphOutput::Structured => {}
                    }
                    write!(out, "{body}")?;
                }
            }
            first = false;
        }
    }
    Ok(())
}

fn colored_text(doc: &GraphDocument, paint: Paint) -> String {
    if !paint.enabled {
        return emit_text(doc);
    }
    let mut s = format!("root {}\n", paint.bold(&doc.display_name(doc.root)));
    for e in &doc.edges {
        s.push_str(&format!("{} -> {} ({})\n", doc.display_name(e.from), doc.display_name(e.to), paint.label(e.label)));
    }
    s
}
