use std::fmt::Write as _;
use std::path::Path as FsPath;

use cdomain_core::acceptance::{self, Selector};
use cdomain_core::cantor::{self, CantorError};
use cdomain_core::order::{domain_report, FinPoset, Path, PosetJson, ReportOptions};
use cdomain_core::ortho::{self, Omp, OmpJson, OrthoError};
use cdomain_core::partitions::{partition_lattice, EqRel, EqRelJson, Orientation};
use cdomain_core::scatter::{cb_rank_fin, stone_scattered_check, FinTop, FinTopJson, OrdinalCnf};
use cdomain_core::staralg::{self, AlgebraJson, StarAlgebra};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::report::{CliError, Done, Inputs};

type CmdResult = Result<Done, CliError>;

fn read_json<T: DeserializeOwned>(path: &FsPath, inputs: &mut Inputs) -> Result<T, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
    inputs.add("file", &bytes);
    serde_json::from_slice(&bytes).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

fn done(results: Value, pass: bool, text: String) -> Done {
    Done { results, pass, text, dot: None }
}

fn load_poset(path: &FsPath, inputs: &mut Inputs) -> Result<FinPoset, CliError> {
    let json: PosetJson = read_json(path, inputs)?;
    FinPoset::from_json(json).map_err(CliError::input)
}

fn label_opt(p: &FinPoset, x: Option<usize>) -> Value {
    x.map_or(Value::Null, |i| json!(p.label(i)))
}

pub fn poset_check(path: &FsPath, inputs: &mut Inputs) -> CmdResult {
    let p = load_poset(path, inputs)?;
    let results = json!({
        "input": to_value(&p.to_json()),
        "elements": p.len(),
        "bottom": label_opt(&p, p.bottom()),
        "top": label_opt(&p, p.top()),
        "meet_semilattice": p.is_meet_semilattice(),
        "lattice": p.is_lattice(),
    });
    let text = format!("valid poset with {} elements; lattice: {}\n", p.len(), p.is_lattice());
    Ok(done(results, true, text))
}

pub fn poset_report(
    path: &FsPath,
    fin_bound: Option<usize>,
    eval_path: Option<Path>,
    generic_dense_chain: bool,
    inputs: &mut Inputs,
) -> CmdResult {
    let p = load_poset(path, inputs)?;
    inputs.add("fin_bound", format!("{fin_bound:?}").as_bytes());
    inputs.add("path", format!("{eval_path:?}").as_bytes());
    inputs.add("generic_dense_chain", &[u8::from(generic_dense_chain)]);
    let opts = ReportOptions { fin_bound, path: eval_path, generic_dense_chain, ..Default::default() };
    let report = domain_report(&p, &opts).map_err(CliError::input)?;
    let flag = |b: bool| if b { "yes" } else { "no" };
    let mut text = String::new();
    for (name, v) in [
        ("algebraic", report.algebraic),
        ("continuous", report.continuous),
        ("atomistic", report.atomistic),
        ("quasi-continuous", report.quasi_continuous),
        ("quasi-algebraic", report.quasi_algebraic),
        ("order-scattered", report.order_scattered),
    ] {
        let _ = writeln!(text, "{name:<18} {}", flag(v));
    }
    let meet = report.meet_continuous.map_or("not applicable", flag);
    let _ = writeln!(text, "{:<18} {meet}", "meet-continuous");
    let pass = report.all_true();
    Ok(done(to_value(&report), pass, text))
}

pub fn poset_hasse(path: &FsPath, inputs: &mut Inputs) -> CmdResult {
    let p = load_poset(path, inputs)?;
    let edges: Vec<[&str; 2]> = p.hasse().into_iter().map(|(a, b)| [p.label(a), p.label(b)]).collect();
    let text: String = edges.iter().map(|[a, b]| format!("{a} -< {b}\n")).collect();
    Ok(Done { results: json!({ "edges": edges }), pass: true, text, dot: Some(p.to_dot("hasse")) })
}

fn load_eqrel(arg: &str, inputs: &mut Inputs) -> Result<EqRel, CliError> {
    if arg.trim_start().starts_with('{') {
        inputs.add("inline", arg.as_bytes());
        return arg.parse().map_err(CliError::input);
    }
    let json: EqRelJson = read_json(FsPath::new(arg), inputs)?;
    EqRel::from_json(&json).map_err(CliError::input)
}

pub fn eqrel_pair(left: &str, right: &str, join: bool, inputs: &mut Inputs) -> CmdResult {
    let a = load_eqrel(left, inputs)?;
    let b = load_eqrel(right, inputs)?;
    let r = if join { a.join(&b) } else { a.meet(&b) }.map_err(CliError::input)?;
    Ok(done(to_value(&r.to_json()), true, format!("{r}\n")))
}

pub fn eqrel_lattice(n: usize, orientation: Orientation, inputs: &mut Inputs) -> CmdResult {
    inputs.add("n", &n.to_le_bytes());
    inputs.add("orientation", format!("{orientation:?}").as_bytes());
    let lat = partition_lattice(n, orientation).map_err(CliError::input)?;
    let labels: Vec<String> = lat.partitions.iter().map(ToString::to_string).collect();
    let text = format!("{} partitions\n{}\n", lat.len(), labels.join("\n"));
    let results = json!({ "size": lat.len(), "partitions": labels, "covers": lat.poset.hasse() });
    Ok(Done { results, pass: true, text, dot: Some(lat.poset.to_dot("partitions")) })
}

pub fn cantor_verify(depth: usize, inputs: &mut Inputs) -> CmdResult {
    inputs.add("depth", &depth.to_le_bytes());
    match cantor::verify_counterexample(depth) {
        Ok(report) => {
            let text: String = report
                .checks
                .iter()
                .map(|c| format!("{} {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.witness))
                .collect();
            Ok(done(to_value(&report), report.all_pass(), text))
        }
        Err(e @ CantorError::AssertionFailed(_)) => Ok(Done::failed(e)),
        Err(e) => Err(CliError::input(e)),
    }
}

pub fn cantor_chain(n: usize, inputs: &mut Inputs) -> CmdResult {
    inputs.add("n", &n.to_le_bytes());
    let chain = cantor::dense_chain_witness(n).map_err(CliError::input)?;
    let decreasing = chain.is_strictly_decreasing();
    let mut midpoints = Vec::new();
    for i in 0..n - 1 {
        let mid = chain.refine(i).map_err(CliError::input)?;
        midpoints.push(chain.strictly_between(i, &mid));
    }
    let pass = decreasing && midpoints.iter().all(|&b| b);
    let cuts: Vec<String> = chain.cuts.iter().map(ToString::to_string).collect();
    let text = format!(
        "cuts {}\nstrictly decreasing: {decreasing}\nmidpoints strictly between: {}\n",
        cuts.join(" "),
        midpoints.iter().all(|&b| b)
    );
    let results = json!({
        "cuts": cuts,
        "relations": to_value(&chain.relations),
        "strictly_decreasing": decreasing,
        "midpoints_between": midpoints,
    });
    Ok(done(results, pass, text))
}

fn load_algebra(path: &FsPath, inputs: &mut Inputs) -> Result<StarAlgebra, CliError> {
    let json: AlgebraJson = read_json(path, inputs)?;
    StarAlgebra::from_json(&json).map_err(CliError::input)
}

pub fn calg_generate(path: &FsPath, inputs: &mut Inputs) -> CmdResult {
    let a = load_algebra(path, inputs)?;
    let commutative = a.is_commutative();
    let projections = if commutative { Some(staralg::generated_by_projections(&a).map_err(CliError::input)?) } else { None };
    let text = format!("dimension {} in {}x{} matrices; commutative: {commutative}\n", a.dim(), a.ambient(), a.ambient());
    let results = json!({
        "input": to_value(&a.to_json()),
        "ambient": a.ambient(),
        "dim": a.dim(),
        "commutative": commutative,
        "basis": to_value(&a.basis()),
        "projections": to_value(&projections),
    });
    Ok(done(results, true, text))
}

pub fn calg_lattice(path: &FsPath, inputs: &mut Inputs) -> CmdResult {
    let a = load_algebra(path, inputs)?;
    let lat = staralg::c_lattice(&a).map_err(CliError::input)?;
    let mismatch = lat.verify_inclusions();
    let nodes: Vec<Value> = lat
        .nodes
        .iter()
        .map(|nd| json!({ "partition": nd.partition.to_string(), "dim": nd.algebra.dim() }))
        .collect();
    let mut text = format!("{} commutative subalgebras\n", lat.len());
    for nd in &lat.nodes {
        let _ = writeln!(text, "{} (dim {})", nd.partition, nd.algebra.dim());
    }
    let results = json!({
        "size": lat.len(),
        "minimal_projections": lat.minimal_projections.iter().map(|m| m.short_label()).collect::<Vec<_>>(),
        "nodes": nodes,
        "covers": lat.poset.hasse(),
        "inclusion_mismatch": mismatch,
    });
    Ok(Done { results, pass: mismatch.is_none(), text, dot: Some(lat.to_dot("subalgebras")) })
}

pub fn calg_atoms(path: &FsPath, inputs: &mut Inputs) -> CmdResult {
    let a = load_algebra(path, inputs)?;
    let found = staralg::atoms(&a).map_err(CliError::input)?;
    let lat = staralg::c_lattice(&a).map_err(CliError::input)?;
    let labels: Vec<String> = found
        .iter()
        .map(|c| lat.index_of(c).map_or_else(|| "?".into(), |i| lat.nodes[i].partition.to_string()))
        .collect();
    let text = format!("{} atoms\n{}\n", found.len(), labels.join("\n"));
    Ok(done(json!({ "count": found.len(), "atoms": labels }), true, text))
}

pub fn calg_spectrum(path: &FsPath, inputs: &mut Inputs) -> CmdResult {
    let a = load_algebra(path, inputs)?;
    let s = staralg::spectrum(&a).map_err(CliError::input)?;
    let text: String = s.projections.iter().enumerate().map(|(j, p)| format!("character {j}: {}\n", p.short_label())).collect();
    Ok(done(to_value(&s), true, text))
}

pub fn calg_caf_iso(path: &FsPath, inputs: &mut Inputs) -> CmdResult {
    let a = load_algebra(path, inputs)?;
    match ortho::verify_caf_iso(&a) {
        Ok(r) => {
            let mut text = format!("{} subalgebras, {} Boolean subalgebras\n", r.subalgebras, r.boolean_subalgebras);
            for (c, b) in &r.correspondence {
                let _ = writeln!(text, "{c} -> {b}");
            }
            Ok(done(to_value(&r), true, text))
        }
        Err(e @ OrthoError::IsoFailure(_)) => Ok(Done::failed(e)),
        Err(e) => Err(CliError::input(e)),
    }
}

fn load_omp_tables(path: &FsPath, inputs: &mut Inputs) -> Result<(OmpJson, FinPoset), CliError> {
    let json: OmpJson = read_json(path, inputs)?;
    let p = FinPoset::from_json(PosetJson { elements: json.elements.clone(), leq: json.leq.clone() }).map_err(CliError::input)?;
    Ok((json, p))
}

pub fn omp_validate(path: &FsPath, inputs: &mut Inputs) -> CmdResult {
    let (json, p) = load_omp_tables(path, inputs)?;
    let violations = ortho::violations(&p, &json.ortho).map_err(CliError::input)?;
    let text = if violations.is_empty() {
        "valid orthomodular poset\n".to_string()
    } else {
        violations
            .iter()
            .map(|v| {
                let w: Vec<&str> = v.witness.iter().map(|&i| p.label(i)).collect();
                format!("{} violated at {}\n", v.axiom, w.join(", "))
            })
            .collect()
    };
    let results = json!({ "input": to_value(&json), "violations": to_value(&violations) });
    Ok(done(results, violations.is_empty(), text))
}

pub fn omp_boolsub(path: &FsPath, inputs: &mut Inputs) -> CmdResult {
    let (json, _) = load_omp_tables(path, inputs)?;
    let omp = match Omp::from_json(json) {
        Ok(o) => o,
        Err(e @ OrthoError::AxiomViolated { .. }) => return Ok(Done::failed(e)),
        Err(e) => return Err(CliError::input(e)),
    };
    let lat = ortho::boolean_subalgebras(&omp).map_err(CliError::input)?;
    let blocks = ortho::blocks(&omp).map_err(CliError::input)?;
    let labels: Vec<String> = lat.subalgebras.iter().map(|&m| omp.mask_label(m)).collect();
    let block_labels: Vec<String> = blocks.iter().map(|&m| omp.mask_label(m)).collect();
    let text = format!("{} Boolean subalgebras\n{}\nblocks: {}\n", lat.len(), labels.join("\n"), block_labels.join(" "));
    let results = json!({ "count": lat.len(), "subalgebras": labels, "blocks": block_labels, "covers": lat.poset.hasse() });
    Ok(Done { results, pass: true, text, dot: Some(lat.poset.to_dot("boolean_subalgebras")) })
}

fn load_space(path: &FsPath, inputs: &mut Inputs) -> Result<FinTop, CliError> {
    let json: FinTopJson = read_json(path, inputs)?;
    FinTop::from_json(&json).map_err(CliError::input)
}

pub fn cb_rank(ordinal: Option<&str>, input: Option<&FsPath>, inputs: &mut Inputs) -> CmdResult {
    if let Some(s) = ordinal {
        inputs.add("ordinal", s.as_bytes());
        let alpha: OrdinalCnf = s.parse().map_err(CliError::input)?;
        let mut derivatives = vec![alpha.to_string()];
        let mut cur = alpha.clone();
        while let Some(next) = cur.cb_derivative() {
            derivatives.push(next.to_string());
            cur = next;
        }
        let text = format!("rank {}\nderivatives {}\n", alpha.cb_rank(), derivatives.join(" -> "));
        let results = json!({ "ordinal": alpha.to_string(), "rank": alpha.cb_rank(), "derivatives": derivatives });
        return Ok(done(results, true, text));
    }
    let path = input.ok_or_else(|| CliError("either --ordinal or --input is required".into()))?;
    let t = load_space(path, inputs)?;
    let r = cb_rank_fin(&t);
    let text = if r.scattered {
        format!("rank {}\n", r.rank)
    } else {
        format!("not scattered; perfect residue {}\n", r.residue.join(" "))
    };
    Ok(done(to_value(&r), true, text))
}

pub fn topo_check(path: &FsPath, inputs: &mut Inputs) -> CmdResult {
    let t = load_space(path, inputs)?;
    let r = stone_scattered_check(&t);
    let mut text = format!("stonean: {}\nscattered: {}\n", r.stonean, r.scattered);
    for s in &r.stages {
        let _ = writeln!(text, "{} isolated at stage {}", s.point, s.stage);
    }
    let results = json!({
        "input": to_value(&t.to_json()),
        "report": to_value(&r),
        "hausdorff": t.is_hausdorff(),
        "totally_disconnected": t.is_totally_disconnected(),
    });
    Ok(done(results, r.pass, text))
}

pub fn accept(suite: Selector, inputs: &mut Inputs) -> Done {
    inputs.add("suite", format!("{suite:?}").as_bytes());
    let outcomes = acceptance::run(suite);
    let pass = outcomes.iter().all(|o| o.pass);
    let mut text: String = outcomes.iter().map(|o| o.line() + "\n").collect();
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let _ = writeln!(text, "{passed} of {} criteria passed", outcomes.len());
    done(json!({ "suite": suite, "criteria": to_value(&outcomes) }), pass, text)
}
