//! One function per subcommand. Each returns the `result` block of the
//! report, files to write next to it, and a failure to raise after the report
//! has been written.

use dshier::ds::{
    densities, densities_agree, flatness_check, gauge_perturb, kdv_comparison, random_kernel_element, solve_recursion,
    HierarchyResult,
};
use dshier::grading::{
    classify_perturbation, find_integrable_element, integrable_triple_check, nilpotent_type_probe, nilpotent_type_test,
    table1_lookup, table1_rows, DegreeChoice, DynkinGrading, IntegrableTriple, SearchBudget,
};
use dshier::liealg::LieAlgebraJson;
use dshier::pva::{
    affine_bracket, check_axioms, functional_bracket, lenard_run, DiffPoly, GenBracketTable, LocalFunctional,
    RandomShape, VarSet,
};
use dshier::HalfInt;
use serde_json::{json, Value};

use crate::config::{JobConfig, TableChoice};
use crate::setup::{self, Kind};
use crate::Failure;

pub struct Outcome {
    pub result: Value,
    /// `(file name, contents)`, written into the output directory.
    pub artifacts: Vec<(String, String)>,
    pub failure: Option<Failure>,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome { result, artifacts: Vec::new(), failure: None }
    }

    fn fail_if(mut self, bad: bool, code: i32, msg: impl Into<String>) -> Self {
        if bad && self.failure.is_none() {
            self.failure = Some(Failure::new(code, msg));
        }
        self
    }
}

pub fn algebra_build(cfg: &JobConfig) -> Result<Outcome, Failure> {
    let s = setup::algebra(cfg)?;
    let valid = s.alg.validate();
    let out = Outcome::ok(json!({
        "name": s.alg.name(),
        "dim": s.alg.dim(),
        "valid": valid.is_ok(),
        "algebra": LieAlgebraJson::from_spec(&s.alg),
    }));
    Ok(match valid {
        Ok(()) => out,
        Err(e) => out.fail_if(true, 3, e.to_string()),
    })
}

fn search_json(grading: &DynkinGrading, choice: DegreeChoice, seed: u64) -> Result<(bool, Value), Failure> {
    let out = find_integrable_element(grading, choice, SearchBudget::default(), seed).map_err(Failure::from_core)?;
    let found = out.found.as_ref().map(|t| -> Result<Value, Failure> {
        let c = classify_perturbation(grading.f(), &t.big_e, grading).map_err(Failure::from_core)?;
        Ok(json!({ "classification": c, "triple": t.to_json() }))
    });
    let found = found.transpose()?;
    Ok((
        found.is_some(),
        json!({
            "degree": choice.degree(grading),
            "candidates_tried": out.candidates_tried,
            "found": found,
        }),
    ))
}

pub fn classify(cfg: &JobConfig) -> Result<Outcome, Failure> {
    let s = setup::algebra(cfg)?;
    let triple = setup::sl2_triple(&s, cfg)?;
    let gr = DynkinGrading::from_triple(&triple).map_err(Failure::from_core)?;
    let depth = gr.depth();
    let nilpotent_type = nilpotent_type_test(&gr);
    let trials = cfg.trials.unwrap_or(20);
    let mut probes = Vec::new();
    for seed in cfg.seeds() {
        let v = nilpotent_type_probe(&triple.f, &gr, trials, seed).map_err(Failure::from_core)?;
        probes.push(json!({ "seed": seed, "result": v }));
    }
    let non_nilpotent_seen = probes.iter().any(|p| p["result"]["verdict"] == json!("not_nilpotent_type"));
    let seed = cfg.seeds()[0];
    let (_, cyclic) = search_json(&gr, DegreeChoice::Depth, seed)?;
    let (quasicyclic_exists, quasicyclic) = search_json(&gr, DegreeChoice::DepthMinusHalf, seed)?;
    let row = match (s.kind.table_key(), cfg.nilpotent_label.as_deref()) {
        (Some(alg), Some(label)) => table1_lookup(alg, label).ok(),
        _ => None,
    };
    let pieces: Vec<Value> = gr.pieces().iter().map(|(k, v)| json!({ "degree": k, "dim": v.len() })).collect();
    let table_conflict = row.as_ref().is_some_and(|r| {
        r.depth != depth || (r.status == dshier::grading::Table1Status::NeverQuasicyclic && quasicyclic_exists)
    });
    Ok(Outcome::ok(json!({
        "algebra": s.alg.name(),
        "nilpotent": s.nilpotent,
        "depth": depth,
        "nilpotent_type": nilpotent_type,
        "omega_rank": gr.omega_form().rank(),
        "piece_dims": pieces,
        "cyclic_probe": { "trials": trials, "seeds": probes, "non_nilpotent_found": non_nilpotent_seen },
        "cyclic_search": cyclic,
        "quasicyclic_search": quasicyclic,
        "quasicyclic_exists": quasicyclic_exists,
        "table1_row": row,
    }))
    .fail_if(nilpotent_type && non_nilpotent_seen, 3, "non-integral depth but a cyclic element is not nilpotent")
    .fail_if(table_conflict, 3, "search result contradicts the classification table"))
}

fn triple_block(t: &IntegrableTriple) -> Result<(bool, Value), Failure> {
    let report = integrable_triple_check(t);
    let c = classify_perturbation(t.f(), &t.big_e, &t.grading).map_err(Failure::from_core)?;
    Ok((report.all_pass(), json!({ "triple": t.to_json(), "classification": c, "check": report })))
}

pub fn triple_build(cfg: &JobConfig) -> Result<Outcome, Failure> {
    let s = setup::algebra(cfg)?;
    let (t, provenance) = setup::integrable_triple(&s, cfg)?;
    let (pass, mut block) = triple_block(&t)?;
    block["provenance"] = json!(provenance);
    Ok(Outcome::ok(block).fail_if(!pass, 4, "constructed triple fails the integrability conditions"))
}

pub fn triple_check(cfg: &JobConfig) -> Result<Outcome, Failure> {
    let s = setup::algebra(cfg)?;
    let (t, _) = setup::integrable_triple(&s, cfg)?;
    let (pass, block) = triple_block(&t)?;
    Ok(Outcome::ok(block).fail_if(!pass, 4, "triple fails the integrability conditions"))
}

fn listing(r: &HierarchyResult, ds: &[dshier::ds::Density], slices: Option<&[String]>) -> String {
    let vars = &r.data().vars;
    let mut out = String::new();
    for (n, d) in ds.iter().enumerate() {
        out.push_str(&format!("g{} z^{}: {}\n", d.index, d.z_power, d.functional.density().to_text(vars)));
        if let Some(s) = slices.and_then(|s| s.get(n)) {
            out.push_str(&format!("g{} at u_H1 = 0, u = u_E21: {}\n", d.index, s));
        }
    }
    out
}

pub fn hierarchy_run(cfg: &JobConfig) -> Result<Outcome, Failure> {
    let s = setup::algebra(cfg)?;
    let (t, provenance) = setup::integrable_triple(&s, cfg)?;
    let check = integrable_triple_check(&t);
    if !check.all_pass() {
        return Err(Failure::new(
            4,
            format!("triple fails the integrability conditions: {}", check.failures.join("; ")),
        ));
    }
    let max = cfg.max_degree.unwrap_or(HalfInt::from_int(2));
    let r = solve_recursion(&t, max).map_err(Failure::from_core)?;
    let a = r.data().semisimple.clone();
    let ds = match cfg.densities {
        Some(n) => densities(&r, &a, n).map_err(Failure::from_core)?,
        None => r.densities().to_vec(),
    };

    let flat = flatness_check(&r, &a, max).map_err(Failure::from_core)?;
    let shape = RandomShape { max_order: 1, max_degree: 2, max_terms: 2, coeff_bound: 3, ..RandomShape::default() };
    let mut gauge = Vec::new();
    let mut gauge_ok = true;
    for seed in cfg.seeds() {
        let entry = match random_kernel_element(r.data(), max, seed, &shape) {
            Ok(sg) => {
                let p = gauge_perturb(&r, &sg).map_err(Failure::from_core)?;
                let pd = densities(&p, &a, ds.len()).map_err(Failure::from_core)?;
                let agree = densities_agree(&ds, &pd);
                let pflat = flatness_check(&p, &a, max).map_err(Failure::from_core)?.passed();
                gauge_ok &= agree && pflat;
                json!({ "seed": seed, "h_changed": p.h() != r.h(), "densities_agree": agree, "flatness_passed": pflat })
            }
            Err(e) => json!({ "seed": seed, "skipped": e.to_string() }),
        };
        gauge.push(entry);
    }
    let kdv = match s.kind {
        Kind::Sl(2) => Some(kdv_comparison(&r, ds.len()).map_err(Failure::from_core)?),
        _ => None,
    };
    let involution = match &kdv {
        Some(k) => json!({ "pair": "virasoro(c*), derivation", "comparison": k.to_json() }),
        None => json!({ "skipped": "no bracket pair is available for this algebra" }),
    };
    let kdv_ok = kdv.as_ref().map_or(true, |k| k.matches_oracle && k.involutive && k.independent);
    let slices: Option<Vec<String>> = kdv.as_ref().map(|k| k.to_json().slices);

    let hierarchy = r.to_json();
    let density_list: Vec<Value> = ds
        .iter()
        .map(|d| json!({ "index": d.index, "z_power": d.z_power, "density": d.functional.density().to_text(&r.data().vars) }))
        .collect();
    let listing = listing(&r, &ds, slices.as_deref());
    let out = Outcome {
        result: json!({
            "algebra": hierarchy.algebra,
            "nilpotent": s.nilpotent,
            "provenance": provenance,
            "max_degree": max,
            "variables": hierarchy.variables.iter().map(|v| v.name.clone()).collect::<Vec<_>>(),
            "n_top": r.n_top(),
            "densities": density_list,
            "verification": {
                "residual_zero": true,
                "flatness": flat,
                "gauge_invariance": gauge,
                "involution": involution,
            },
        }),
        artifacts: vec![
            ("hierarchy.json".into(), serde_json::to_string_pretty(&hierarchy).expect("serializes") + "\n"),
            ("densities.txt".into(), listing),
        ],
        failure: None,
    };
    Ok(out
        .fail_if(!flat.passed(), 3, "flatness residual is nonzero")
        .fail_if(!gauge_ok, 3, "gauge perturbation changed the densities")
        .fail_if(!kdv_ok, 3, "densities disagree with the KdV chain"))
}

fn axioms_json(name: &str, t: &GenBracketTable) -> (bool, Value) {
    let rep = check_axioms(t);
    let names = t.vars().names();
    let skew: Vec<String> = rep.skew_violations.iter().map(|&(i, j)| format!("({}, {})", names[i], names[j])).collect();
    let jac: Vec<String> =
        rep.jacobi_violations.iter().map(|&(i, j, k)| format!("({}, {}, {})", names[i], names[j], names[k])).collect();
    (
        rep.passed(),
        json!({ "table": name, "generators": names, "passed": rep.passed(), "skew_violations": skew, "jacobi_violations": jac }),
    )
}

pub fn pva_check(cfg: &JobConfig) -> Result<Outcome, Failure> {
    let mut tables = Vec::new();
    match cfg.table.unwrap_or_default() {
        TableChoice::Virasoro => tables.push(("virasoro".to_string(), GenBracketTable::virasoro())),
        TableChoice::Derivation => tables.push(("derivation".to_string(), GenBracketTable::derivation())),
        TableChoice::Affine => {
            let s = setup::algebra(cfg)?;
            let (t, _) = setup::integrable_triple(&s, cfg)?;
            let (t0, tinf) = affine_bracket(t.algebra(), &t.big_e).map_err(Failure::from_core)?;
            let sum = t0.add(&tinf).map_err(Failure::from_core)?;
            tables.push(("affine".into(), t0));
            tables.push(("affine E-bracket".into(), tinf));
            tables.push(("affine pencil sum".into(), sum));
        }
    }
    let (pass, reports): (Vec<bool>, Vec<Value>) = tables.iter().map(|(n, t)| axioms_json(n, t)).unzip();
    let all = pass.iter().all(|&p| p);
    Ok(Outcome::ok(json!({ "passed": all, "tables": reports })).fail_if(!all, 3, "λ-bracket axioms fail"))
}

pub fn lenard(cfg: &JobConfig) -> Result<Outcome, Failure> {
    let u = VarSet::named(["u"]);
    let start = cfg.start.clone().unwrap_or_else(|| "u".into());
    let seed = DiffPoly::parse(&start, &u).map_err(Failure::config_err)?;
    let steps = cfg.densities.unwrap_or(4);
    let (vir, der) = (GenBracketTable::virasoro(), GenBracketTable::derivation());
    let run = lenard_run(&vir, &der, &LocalFunctional::new(seed), steps);
    let mut commuting = true;
    for (i, a) in run.functionals.iter().enumerate() {
        for b in &run.functionals[i + 1..] {
            for t in [&vir, &der] {
                commuting &= functional_bracket(a, b, t).map_err(Failure::from_core)?.is_zero();
            }
        }
    }
    let fs: Vec<String> = run.functionals.iter().map(|f| f.density().to_text(&u)).collect();
    Ok(Outcome::ok(json!({
        "pair": "virasoro, derivation",
        "start": start,
        "requested": steps,
        "functionals": fs,
        "completed": run.failure.is_none(),
        "failure": run.failure.map(|e| e.to_string()),
        "in_involution": commuting,
    }))
    .fail_if(!commuting, 3, "Lenard functionals do not commute"))
}

pub fn table1_show(cfg: &JobConfig) -> Result<Outcome, Failure> {
    let rows: Vec<_> = table1_rows()
        .iter()
        .filter(|r| cfg.algebra.as_ref().map_or(true, |a| r.algebra.eq_ignore_ascii_case(a)))
        .filter(|r| cfg.nilpotent_label.as_ref().map_or(true, |l| &r.nilpotent == l))
        .collect();
    if rows.is_empty() && (cfg.algebra.is_some() || cfg.nilpotent_label.is_some()) {
        return Err(Failure::config("no table row matches the filter"));
    }
    Ok(Outcome::ok(json!({ "rows": rows })))
}
