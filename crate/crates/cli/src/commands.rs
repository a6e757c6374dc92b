use std::path::Path;

use serde_json::{json, Value};

use floer_core::floer::{
    build_complex, enumerate_hearts, geo_oracle, heart_pairing_check, Coeff, FloerComplex, FloerError,
};
use floer_core::geom::Pt;
use floer_core::io::{parse_rational, IoError, PairFile};
use floer_core::isotopy::{self, primitive_lune, IsotopyMove, MoveReport};
use floer_core::lune::{lune_violations, primitive_existence_check, Lune};
use floer_core::reduction::{ComplexFile, ConnectionComplex};
use floer_core::surface::{ArcSpec, CurvePair, LiftedPath};
use floer_core::trace::{trace_with_wraps, Trace};

use crate::render;
use crate::report::{Report, INVALID, VIOLATION};
use crate::CoeffArg;

pub fn coeff(c: CoeffArg) -> Coeff {
    match c {
        CoeffArg::F2 => Coeff::F2,
        CoeffArg::Z => Coeff::Z,
    }
}

pub fn pt(p: &Pt) -> Value {
    json!([p.x.to_string(), p.y.to_string()])
}

fn path_json(p: &LiftedPath) -> Value {
    json!({"from": p.from.to_string(), "to": p.to.to_string(), "offset": [p.offset.0, p.offset.1]})
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// Reads and validates a pair file, filling in the flags of `report`.
pub fn load(path: &Path, report: &mut Report) -> Result<CurvePair, String> {
    let text = read(path)?;
    let pair = floer_core::io::load_pair(&text).map_err(|e| e.to_string())?;
    report.flags = Some(serde_json::to_value(pair.flags).expect("flags serialize"));
    Ok(pair)
}

/// Runs `body` on the loaded pair; load failures exit with status 1.
fn with_pair(
    command: &str,
    path: &Path,
    body: impl FnOnce(&CurvePair, &mut Report) -> Result<Value, (u8, String)>,
) -> Report {
    let mut report = Report::new(command, &path.display().to_string());
    let pair = match load(path, &mut report) {
        Ok(p) => p,
        Err(e) => return report.fail(INVALID, e),
    };
    match body(&pair, &mut report) {
        Ok(v) => {
            report.payload = v;
            report
        }
        Err((code, msg)) => report.fail(code, msg),
    }
}

fn floer_err(e: FloerError) -> (u8, String) {
    let code = match e {
        FloerError::Unsupported(_) => INVALID,
        _ => VIOLATION,
    };
    (code, e.to_string())
}

pub fn validate(path: &Path) -> Report {
    let mut report = Report::new("validate", &path.display().to_string());
    let text = match read(path) {
        Ok(t) => t,
        Err(e) => return report.fail(INVALID, e),
    };
    match floer_core::io::load_pair(&text) {
        Ok(pair) => {
            report.flags = Some(serde_json::to_value(pair.flags).expect("flags serialize"));
            report.payload = json!({
                "valid": true,
                "surface": pair.surface.name(),
                "num": pair.num(),
                "alg": pair.alg(),
                "hypotheses": pair.flags.all(),
            });
            if !pair.flags.all() {
                report.warnings.push(
                    "the curves are not both noncontractible and nonisotopic; theorem checks do not apply".into(),
                );
            }
            report
        }
        Err(IoError::Invalid(errs)) => {
            report.payload = json!({
                "valid": false,
                "errors": errs.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            });
            report.exit_code = INVALID;
            report
        }
        Err(e) => {
            report.payload = json!({"valid": false, "errors": [e.to_string()]});
            report.exit_code = INVALID;
            report
        }
    }
}

pub fn intersections(path: &Path) -> Report {
    with_pair("intersections", path, |pair, _| {
        let points: Vec<Value> = pair
            .points
            .iter()
            .map(|p| {
                json!({
                    "id": p.id,
                    "pos": pt(&p.pos),
                    "eps": p.eps,
                    "along_alpha": p.along_alpha.to_string(),
                    "along_beta": p.along_beta.to_string(),
                    "beta_shift": [p.beta_shift.0, p.beta_shift.1],
                })
            })
            .collect();
        Ok(json!({
            "num": pair.num(),
            "alg": pair.alg(),
            "geo": geo_oracle(pair).ok(),
            "points": points,
        }))
    })
}

pub fn lune_json(pair: &CurvePair, l: &Lune) -> Value {
    let t = &l.trace;
    json!({
        "x": l.x(),
        "y": l.y(),
        "sign": l.sign,
        "primitive": l.primitive,
        "area": l.area.to_string(),
        "maslov": t.maslov(pair).ok(),
        "shift": t.shift(),
        "alpha": path_json(&t.alpha),
        "beta": path_json(&t.beta),
    })
}

pub fn lunes(path: &Path) -> Report {
    with_pair("lunes", path, |pair, _| {
        let table = floer_core::lune::all_lunes(pair).map_err(|e| (VIOLATION, e.to_string()))?;
        let counts: Vec<Value> = table
            .lunes
            .keys()
            .map(|&(x, y)| json!({"x": x, "y": y, "count": table.get(x, y).len(), "n_mod2": table.n_mod2(x, y), "n_z": table.n_z(x, y)}))
            .collect();
        Ok(json!({
            "count": table.len(),
            "counts": counts,
            "lunes": table.iter().map(|l| lune_json(pair, l)).collect::<Vec<_>>(),
            "primitive_check": primitive_existence_check(pair, &table),
        }))
    })
}

fn parse_pair_arg<T: std::str::FromStr>(s: &str, what: &str) -> Result<(T, T), (u8, String)> {
    let bad = || {
        (
            INVALID,
            format!("expected two comma-separated values for {what}, got {s:?}"),
        )
    };
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_dir(s: &str) -> Result<bool, (u8, String)> {
    match s {
        "fwd" => Ok(true),
        "bwd" => Ok(false),
        _ => Err((INVALID, format!("arc direction must be fwd or bwd, got {s:?}"))),
    }
}

fn check_id(pair: &CurvePair, i: usize) -> Result<usize, (u8, String)> {
    if i < pair.num() {
        Ok(i)
    } else {
        Err((
            INVALID,
            format!("crossing {i} does not exist ({} crossings)", pair.num()),
        ))
    }
}

pub fn trace_json(pair: &CurvePair, t: &Trace) -> Value {
    let bd = t.boundary(pair);
    let arc = bd.satisfies_arc_condition();
    json!({
        "x": t.x,
        "y": t.y,
        "mu": t.maslov(pair).ok(),
        "m_x": t.m_at(pair, &t.lift_x(pair)).ok(),
        "m_y": t.m_at(pair, &t.lift_y(pair)).ok(),
        "arc_condition": arc,
        "mu_plane_form": if arc { t.maslov_plane_form(pair).ok() } else { None },
        "boundary": {"alpha": bd.alpha, "beta": bd.beta},
        "area": t.area().to_string(),
        "min_winding": t.chain.min_value(),
        "lune_violations": lune_violations(pair, t).ok(),
        "alpha": path_json(&t.alpha),
        "beta": path_json(&t.beta),
    })
}

pub fn maslov(path: &Path, from: usize, to: usize, arcs: &str, wraps: &str) -> Report {
    with_pair("maslov", path, |pair, _| {
        let (x, y) = (check_id(pair, from)?, check_id(pair, to)?);
        let (da, db): (String, String) = parse_pair_arg(arcs, "--arcs")?;
        let (wa, wb): (i64, i64) = parse_pair_arg(wraps, "--wraps")?;
        if wa < 0 || wb < 0 {
            return Err((INVALID, "wraps must be nonnegative".into()));
        }
        let sa = ArcSpec::new(parse_dir(&da)?, wa);
        let sb = ArcSpec::new(parse_dir(&db)?, wb);
        match trace_with_wraps(pair, x, y, sa, sb).map_err(|e| (VIOLATION, e.to_string()))? {
            Some(t) => Ok(trace_json(pair, &t)),
            None => Err((
                INVALID,
                "the chosen arcs do not end at the same lift of the target".into(),
            )),
        }
    })
}

fn complex_json(fc: &FloerComplex) -> Value {
    let gens: Vec<Value> = (0..fc.generators)
        .map(|i| {
            json!({
                "id": i,
                "eps": fc.eps[i],
                "mod2_grade": fc.mod2_grade[i],
                "component": fc.components[i],
                "rel_grade": fc.rel_grade[i],
            })
        })
        .collect();
    let sq = fc.d_squared();
    json!({
        "coeff": fc.coeff,
        "generators": gens,
        "differential": fc.differential,
        "d_squared": {"zero": sq.zero, "matrix": sq.matrix},
        "grading_consistent": fc.grading_consistent,
    })
}

pub fn complex(path: &Path, c: CoeffArg, export: Option<&Path>) -> Report {
    with_pair("complex", path, |pair, report| {
        let fc = build_complex(pair, coeff(c)).map_err(floer_err)?;
        if let Some(out) = export {
            let file = ComplexFile::from_complex(&floer_core::reduction::export(&fc));
            let text = serde_json::to_string_pretty(&file).expect("complex serializes");
            std::fs::write(out, text + "\n").map_err(|e| (INVALID, format!("cannot write {}: {e}", out.display())))?;
        }
        if !fc.d_squared().zero {
            report.warnings.push("the differential does not square to zero".into());
        }
        Ok(complex_json(&fc))
    })
}

pub fn homology(path: &Path, c: CoeffArg) -> Report {
    let mut theorem_violated = false;
    let mut report = with_pair("homology", path, |pair, report| {
        let fc = build_complex(pair, coeff(c)).map_err(floer_err)?;
        let sq = fc.d_squared();
        if let Err(FloerError::TheoremViolated) = fc.d_squared_checked() {
            theorem_violated = true;
        }
        let homology = match fc.homology() {
            Ok(h) => json!(h),
            Err(e) => {
                report.warnings.push(format!("homology refused: {e}"));
                json!({"refused": e.to_string()})
            }
        };
        Ok(json!({
            "coeff": fc.coeff,
            "generators": fc.generators,
            "differential": fc.differential,
            "d_squared": {"zero": sq.zero, "matrix": sq.matrix},
            "homology": homology,
            "euler": fc.euler_characteristic().ok(),
            "alg": pair.alg(),
            "geo": geo_oracle(pair).ok(),
        }))
    });
    if theorem_violated {
        report.exit_code = VIOLATION;
        report
            .warnings
            .push("the differential squares to a nonzero map although all hypotheses hold".into());
    }
    report
}

pub fn hearts(path: &Path) -> Report {
    let mut violated = false;
    let mut report = with_pair("hearts", path, |pair, _| {
        let table = floer_core::lune::all_lunes(pair).map_err(|e| (VIOLATION, e.to_string()))?;
        let check = heart_pairing_check(pair, &table).map_err(floer_err)?;
        let mut list = Vec::new();
        for x in 0..pair.num() {
            for z in 0..pair.num() {
                for h in enumerate_hearts(pair, &table, x, z).map_err(floer_err)? {
                    list.push(json!({"x": h.x, "y": h.y, "z": h.z, "kind": h.kind, "maslov": h.maslov}));
                }
            }
        }
        violated = !check.agrees_with_d_squared || (pair.flags.all() && !check.holds);
        Ok(json!({"hearts": list, "pairing": check}))
    });
    if violated {
        report.exit_code = VIOLATION;
    }
    report
}

pub fn reduce(path: &Path, pivot: &str, output: Option<&Path>) -> Report {
    let mut report = Report::new("reduce", &path.display().to_string());
    let result = (|| -> Result<(Value, bool), (u8, String)> {
        let text = read(path).map_err(|e| (INVALID, e))?;
        let file: ComplexFile =
            serde_json::from_str(&text).map_err(|e| (INVALID, format!("malformed complex: {e}")))?;
        let cc: ConnectionComplex = file.into_complex().map_err(|e| (INVALID, e.to_string()))?;
        let (p, q): (String, String) = parse_pair_arg(pivot, "--pair")?;
        let pi = cc.index_of(&p).map_err(|e| (INVALID, e.to_string()))?;
        let qi = cc.index_of(&q).map_err(|e| (INVALID, e.to_string()))?;
        let violations = cc.verify();
        let before = cc.homology().map_err(|e| (INVALID, e.to_string()))?;
        let maps = cc.chain_maps(pi, qi).map_err(|e| (INVALID, e.to_string()))?;
        let after = maps.reduced.homology().map_err(|e| (VIOLATION, e.to_string()))?;
        let reduced_violations = maps.reduced.verify();
        let reduced_file = ComplexFile::from_complex(&maps.reduced);
        if let Some(out) = output {
            let text = serde_json::to_string_pretty(&reduced_file).expect("complex serializes");
            std::fs::write(out, text + "\n").map_err(|e| (INVALID, format!("cannot write {}: {e}", out.display())))?;
        }
        let ok = maps.all_hold()
            && before.dim == after.dim
            && before.graded == after.graded
            && (!violations.is_empty() || reduced_violations.is_empty());
        Ok((
            json!({
                "pivot": [p, q],
                "input_violations": violations,
                "reduced": reduced_file,
                "reduced_violations": reduced_violations,
                "homology_before": before,
                "homology_after": after,
                "chain_maps": {
                    "phi": maps.phi,
                    "psi": maps.psi,
                    "t": maps.t,
                    "phi_commutes": maps.phi_chain,
                    "psi_commutes": maps.psi_chain,
                    "psi_phi_identity": maps.psi_phi_id,
                    "homotopy": maps.homotopy,
                },
            }),
            ok,
        ))
    })();
    match result {
        Ok((v, ok)) => {
            report.payload = v;
            if !ok {
                report.exit_code = VIOLATION;
            }
            report
        }
        Err((code, msg)) => report.fail(code, msg),
    }
}

fn write_pair(pair: &CurvePair, out: &Path) -> Result<(), (u8, String)> {
    std::fs::write(out, PairFile::from_pair(pair).to_json() + "\n")
        .map_err(|e| (INVALID, format!("cannot write {}: {e}", out.display())))
}

fn move_json(mv: &IsotopyMove, r: &MoveReport) -> Value {
    json!({
        "move": mv.kind,
        "crossings_before": mv.before.num(),
        "crossings_after": mv.after.num(),
        "bijection": mv.bijection,
        "created": mv.created,
        "verification": r,
    })
}

fn finish_move(mv: IsotopyMove, out: &Path, report: &mut Report, violated: &mut bool) -> Result<Value, (u8, String)> {
    write_pair(&mv.after, out)?;
    let r = isotopy::verify(&mv).map_err(|e| (VIOLATION, e.to_string()))?;
    if !r.precondition {
        report.warnings.push(format!(
            "n({}, {}) is even, so the deformation formula does not apply",
            r.x, r.y
        ));
    } else if !r.holds {
        *violated = true;
    }
    Ok(move_json(&mv, &r))
}

pub fn isotopy_cancel(path: &Path, pivot: &str, out: &Path) -> Report {
    let mut violated = false;
    let mut report = with_pair("isotopy-cancel", path, |pair, report| {
        let (x, y): (usize, usize) = parse_pair_arg(pivot, "--pair")?;
        check_id(pair, x)?;
        check_id(pair, y)?;
        let fc = build_complex(pair, Coeff::F2).map_err(floer_err)?;
        let lune = match (primitive_lune(&fc, x, y), fc.lunes.get(x, y).first()) {
            (Some(l), _) => l,
            (None, Some(l)) => l,
            (None, None) => return Err((INVALID, format!("there is no lune from {x} to {y}"))),
        };
        let mv = isotopy::cancel_pair(pair, lune).map_err(|e| (INVALID, e.to_string()))?;
        finish_move(mv, out, report, &mut violated)
    });
    if violated {
        report.exit_code = VIOLATION;
    }
    report
}

pub fn isotopy_create(path: &Path, anchor: &str, target: &str, out: &Path) -> Report {
    let mut violated = false;
    let mut report = with_pair("isotopy-create", path, |pair, report| {
        let a = parse_rational(anchor).map_err(|e| (INVALID, e.to_string()))?;
        let t = parse_rational(target).map_err(|e| (INVALID, e.to_string()))?;
        let mv = isotopy::create_pair(pair, &a, &t).map_err(|e| (INVALID, e.to_string()))?;
        finish_move(mv, out, report, &mut violated)
    });
    if violated {
        report.exit_code = VIOLATION;
    }
    report
}

pub fn render(path: &Path, out: &Path, lunes: bool) -> Report {
    with_pair("render", path, |pair, _| {
        let table = if lunes {
            Some(floer_core::lune::all_lunes(pair).map_err(|e| (VIOLATION, e.to_string()))?)
        } else {
            None
        };
        let svg = render::svg(pair, table.as_ref());
        std::fs::write(out, &svg).map_err(|e| (INVALID, format!("cannot write {}: {e}", out.display())))?;
        Ok(json!({
            "output": out.display().to_string(),
            "bytes": svg.len(),
            "lunes_drawn": table.map(|t| t.len()).unwrap_or(0),
        }))
    })
}
