use grovlab_core::conjlab::{
    conjecture_report, kappa_sweep, random_state, scan_all, scan_family, search_counterexamples, Analytic, FamilyKind,
    ScanOptions, SearchOptions,
};
use grovlab_core::groverian::{
    bloch_data, pmax_alternating, pmax_bloch, pmax_reduced, GroverianResult, SolverOptions, StationaryPoint,
};
use grovlab_core::protocols::{
    bob_mixedness_gap, build_protocol, simulate_teleport, superdense_check, teleport_feasible, Assignment,
    OUTCOME_LABELS,
};
use grovlab_core::qcore::{Operator1Q, PureState, Qubit};
use grovlab_core::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::parse_complex_list;
use crate::output::{json_bytes, scan_csv, sweep_csv, Envelope};
use crate::{CliError, DenseArgs, Format, Global, MethodArg, PmaxArgs, ReportArgs, ScanArgs, SweepArgs, TeleportArgs};

/// Bytes to write, and the exit status to report once they are written.
pub type Outcome = (Vec<u8>, Result<(), CliError>);

fn c(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn amps(s: &PureState) -> Vec<[f64; 2]> {
    s.amplitudes().iter().map(c).collect()
}

fn op(o: &Operator1Q) -> [[[f64; 2]; 2]; 2] {
    o.matrix.map(|row| row.map(|z| c(&z)))
}

fn qubit_json(q: &Qubit) -> Value {
    let (theta, phi) = q.bloch_angles();
    json!({ "theta": theta, "phi": phi, "amplitudes": q.amplitudes().iter().map(c).collect::<Vec<_>>() })
}

fn result_json(r: &GroverianResult) -> Value {
    json!({
        "method": r.method,
        "p_max": r.p_max,
        "g_measure": r.g_measure,
        "converged": r.converged,
        "restarts_used": r.restarts_used,
        "maximizer": r.maximizer.factors().iter().map(qubit_json).collect::<Vec<_>>(),
    })
}

fn stationary_json(p: &StationaryPoint, residual: f64) -> Value {
    json!({ "s2": p.s2, "s3": p.s3, "lambda1": p.lambda1, "lambda2": p.lambda2, "residual": residual })
}

pub fn pmax(a: &PmaxArgs, g: &Global) -> Result<Outcome, CliError> {
    let inp = a.state.resolve()?;
    let opts = SolverOptions { restarts: a.restarts, seed: g.seed, exec: g.exec, ..SolverOptions::default() };
    let s = &inp.state;
    let bloch = |s: &PureState| -> Result<(GroverianResult, Value), CliError> {
        let (r, pt) = pmax_bloch(s, &opts)?;
        let res = pt.residual(&bloch_data(s, 0)?);
        Ok((r, stationary_json(&pt, res)))
    };

    let mut runs: Vec<(GroverianResult, Option<Value>)> = Vec::new();
    match a.method {
        MethodArg::Alternating => runs.push((pmax_alternating(s, &opts)?, None)),
        MethodArg::Reduced => runs.push((pmax_reduced(s, &opts)?, None)),
        MethodArg::Bloch => {
            let (r, st) = bloch(s)?;
            runs.push((r, Some(st)));
        }
        MethodArg::Auto => {
            runs.push((pmax_alternating(s, &opts)?, None));
            runs.push((pmax_reduced(s, &opts)?, None));
            if s.n_qubits() == 3 {
                let (r, st) = bloch(s)?;
                runs.push((r, Some(st)));
            }
        }
    }
    let converged = runs.iter().all(|(r, _)| r.converged);
    let run_values: Vec<Value> = runs
        .iter()
        .map(|(r, st)| {
            let mut v = result_json(r);
            if let Some(st) = st {
                v["stationary"] = st.clone();
            }
            v
        })
        .collect();
    let results = if a.method == MethodArg::Auto {
        let closed = inp.spec.map(|sp| sp.analytic());
        let closed_json = match closed {
            Some(Analytic::Value(p, b)) => json!({ "p_max": p, "branch": b }),
            Some(Analytic::Degenerate(b)) => json!({ "p_max": null, "branch": b }),
            _ => Value::Null,
        };
        let mut named: Vec<(String, f64)> = runs.iter().map(|(r, _)| (r.method.to_string(), r.p_max)).collect();
        if let Some(Analytic::Value(p, _)) = closed {
            named.push(("closed-form".into(), p));
        }
        let mut deltas = serde_json::Map::new();
        for i in 0..named.len() {
            for j in i + 1..named.len() {
                deltas.insert(format!("{}-{}", named[i].0, named[j].0), json!((named[i].1 - named[j].1).abs()));
            }
        }
        json!({
            "p_max": runs[0].0.p_max,
            "g_measure": runs[0].0.g_measure,
            "converged": converged,
            "runs": run_values,
            "closed_form": closed_json,
            "deltas": deltas,
        })
    } else {
        run_values.into_iter().next().expect("one run")
    };
    let env = Envelope::new("pmax", g.seed, inp.echo, results, g.reproducible);
    let status = if converged { Ok(()) } else { Err(CliError::NotConverged) };
    Ok((json_bytes(&env), status))
}

fn input_qubit(raw: &str) -> Result<Qubit, CliError> {
    let v = parse_complex_list(raw)?;
    if v.len() != 2 {
        return Err(CliError::Parse(format!("--input needs two amplitudes, got {}", v.len())));
    }
    let n2 = v[0].norm_sqr() + v[1].norm_sqr();
    if (n2 - 1.0).abs() > 1e-6 {
        eprintln!("warning: input norm^2 is {n2}; normalizing");
    }
    Qubit::normalized(v[0], v[1]).ok_or_else(|| CliError::Parse("input qubit is zero".into()))
}

pub fn teleport(a: &TeleportArgs, g: &Global) -> Result<Outcome, CliError> {
    let inp = a.state.resolve()?;
    let assign = Assignment::bob(a.bob)?;
    let s = &inp.state;
    let feasible = teleport_feasible(s, assign)?;
    let gap = bob_mixedness_gap(s, assign)?;
    let fixed = a.input.as_deref().map(input_qubit).transpose()?;

    let mut results = json!({ "bob": a.bob, "feasible": feasible, "bob_mixedness_gap": gap });
    if feasible {
        let proto = build_protocol(s, assign)?;
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        let mut trials = Vec::with_capacity(a.trials);
        let mut histogram = [0usize; 4];
        let mut min_fid = f64::INFINITY;
        for _ in 0..a.trials {
            let q = match fixed {
                Some(q) => q,
                None => {
                    let r = random_state(1, &mut rng)?;
                    Qubit::new(r.amplitude(0), r.amplitude(1))?
                }
            };
            let run = simulate_teleport(&proto, s, &q, rng.next_u64())?;
            histogram[run.outcome] += 1;
            min_fid = min_fid.min(run.fidelity);
            trials.push(json!({
                "input": q.amplitudes().iter().map(c).collect::<Vec<_>>(),
                "outcome": run.outcome,
                "fidelity": run.fidelity,
            }));
        }
        let expect = a.trials as f64 / 4.0;
        let chi2: f64 = histogram.iter().map(|&n| (n as f64 - expect).powi(2) / expect).sum();
        results["protocol"] = json!({
            "outcome_labels": OUTCOME_LABELS,
            "basis": proto.basis.iter().map(amps).collect::<Vec<_>>(),
            "corrections": proto.corrections.iter().map(op).collect::<Vec<_>>(),
            "probabilities": proto.probabilities,
            "bob_basis": proto.bob_basis.iter().map(|q| q.amplitudes().map(|z| c(&z))).collect::<Vec<_>>(),
        });
        results["trials"] = json!(trials);
        results["summary"] = json!({
            "trials": a.trials,
            "min_fidelity": if a.trials > 0 { json!(min_fid) } else { Value::Null },
            "histogram": histogram,
            "chi_square_uniform": if a.trials > 0 { json!(chi2) } else { Value::Null },
        });
    }
    let env = Envelope::new("teleport", g.seed, inp.echo, results, g.reproducible);
    let status = if !feasible && a.require_feasible {
        Err(CliError::Infeasible(format!("bob qubit {} is not maximally mixed (gap {gap:e})", a.bob)))
    } else {
        Ok(())
    };
    Ok((json_bytes(&env), status))
}

pub fn dense(a: &DenseArgs, g: &Global) -> Result<Outcome, CliError> {
    let inp = a.state.resolve()?;
    let rep = superdense_check(&inp.state, a.alice)?;
    let gram: Vec<Vec<[f64; 2]>> = (0..4).map(|r| (0..4).map(|k| c(&rep.gram.get(r, k))).collect()).collect();
    let results = json!({
        "alice": rep.alice_qubit,
        "feasible": rep.feasible,
        "max_overlap": rep.max_overlap(),
        "encodings": ["I", "Z", "X", "-iY"],
        "gram": gram,
        "encoded": rep.encoded.iter().map(amps).collect::<Vec<_>>(),
    });
    let env = Envelope::new("dense", g.seed, inp.echo, results, g.reproducible);
    Ok((json_bytes(&env), Ok(())))
}

pub fn scan(a: &ScanArgs, g: &Global) -> Result<Outcome, CliError> {
    let opts = ScanOptions {
        seed: g.seed,
        restarts: a.restarts,
        cross_check: !a.no_cross_check,
        exec: g.exec,
        ..ScanOptions::default()
    };
    let records = if a.family.eq_ignore_ascii_case("all") {
        scan_all(a.grid, &opts)?
    } else {
        let kind: FamilyKind = a.family.parse()?;
        scan_family(kind, a.grid, &opts)?
    };
    let bytes = match a.format {
        Format::Csv => scan_csv(&records)?,
        Format::Json => {
            let summary = conjecture_report(&records);
            let input =
                json!({ "family": a.family, "grid": a.grid, "restarts": a.restarts, "cross_check": opts.cross_check });
            let results = json!({ "records": records, "summary": summary });
            json_bytes(&Envelope::new("scan", g.seed, input, results, g.reproducible))
        }
    };
    Ok((bytes, Ok(())))
}

fn parse_kappa(s: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || CliError::Parse(format!("expected `min:max:steps`, got `{s}`"));
    let p: Vec<&str> = s.split(':').map(str::trim).collect();
    if p.len() != 3 {
        return Err(bad());
    }
    Ok((p[0].parse().map_err(|_| bad())?, p[1].parse().map_err(|_| bad())?, p[2].parse().map_err(|_| bad())?))
}

pub fn sweep(a: &SweepArgs, g: &Global) -> Result<Outcome, CliError> {
    let (lo, hi, steps) = parse_kappa(&a.kappa)?;
    let sw = kappa_sweep(lo, hi, steps)?;
    let bytes = match a.format {
        Format::Csv => sweep_csv(&sw.points)?,
        Format::Json => {
            let input = json!({ "kappa_min": lo, "kappa_max": hi, "steps": steps });
            json_bytes(&Envelope::new("sweep", g.seed, input, json!(sw), g.reproducible))
        }
    };
    Ok((bytes, Ok(())))
}

pub fn report(a: &ReportArgs, g: &Global) -> Result<Outcome, CliError> {
    let records = scan_all(a.grid, &ScanOptions { seed: g.seed, exec: g.exec, ..ScanOptions::default() })?;
    let scan = conjecture_report(&records);
    let search = search_counterexamples(&SearchOptions {
        haar_states: a.haar,
        feasible_states: a.feasible,
        probes: a.probes,
        seed: g.seed,
        exec: g.exec,
        ..SearchOptions::default()
    })?;
    let input = json!({ "grid": a.grid, "haar": a.haar, "feasible": a.feasible, "probes": a.probes });
    let results = json!({
        "scan": scan,
        "search": search,
        "text": format!("{scan}\n{search}"),
    });
    Ok((json_bytes(&Envelope::new("report", g.seed, input, results, g.reproducible)), Ok(())))
}
