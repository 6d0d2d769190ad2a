use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use stackstab::filtration::{build_lattice, s_equivalent, SubobjectLattice};
use stackstab::gerbe::{poly_split_check, semistable_gerbe};
use stackstab::gitbounds::{
    find_mtilde, git_semistable_check, git_semistable_check_poly, hm_weight, langer_h0_bound, lepotier_counts,
    lepotier_regularity, mu_hat_max, regularity_bound, slope_bound_check, validation_injectivity,
};
use stackstab::reptheory::{distinguishes, point_table as table_of, preset, CharacterRep, PRESET_NAMES};
use stackstab::rootcurve::{g_d_line, parabolic_levels, parabolic_line_data, semistable};
use stackstab::{modified_hilbert, Error, QPoly, Rational};

use crate::problem::{require, schema_hint, GeneratingSpec, ProblemFile, RootcurvePayload};

pub struct Failure {
    pub code: u8,
    pub message: String,
    pub hint: Option<&'static str>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure { code: if e.is_invariant_violation() { 3 } else { 2 }, message: e.to_string(), hint: None }
    }
}

impl Failure {
    fn input(message: String, kind: &str) -> Failure {
        Failure { code: 2, message, hint: Some(schema_hint(kind)) }
    }
}

/// A command result: JSON always, and a table when the result is tabular.
pub struct Report {
    json: Value,
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Report {
    fn new(json: Value) -> Report {
        Report { json, table: None }
    }

    fn with_table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Report {
        self.table = Some((header.iter().map(|s| s.to_string()).collect(), rows));
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
        s.push('\n');
        s
    }

    /// The table if there is one, otherwise `field,value` rows of the top-level entries.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        match &self.table {
            Some((header, rows)) => {
                w.write_record(header).expect("in-memory write");
                for row in rows {
                    w.write_record(row).expect("in-memory write");
                }
            }
            None => {
                w.write_record(["field", "value"]).expect("in-memory write");
                if let Value::Object(map) = &self.json {
                    for (k, v) in map {
                        let cell = match v {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        };
                        w.write_record([k.as_str(), cell.as_str()]).expect("in-memory write");
                    }
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("values serialize")
}

fn load(path: &Path) -> Result<ProblemFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", path.display()),
        hint: None,
    })?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display()), ""))
}

fn wrong_kind(found: &ProblemFile, expected: &'static str) -> Failure {
    Failure::input(format!("this subcommand needs kind {expected:?}, the file has {:?}", found.kind()), expected)
}

fn load_rootcurve(path: &Path) -> Result<RootcurvePayload, Failure> {
    match load(path)? {
        ProblemFile::Rootcurve(p) => {
            if p.sheaf.is_zero() {
                return Err(Failure::input("the sheaf has no summands".into(), "rootcurve"));
            }
            Ok(p)
        }
        other => Err(wrong_kind(&other, "rootcurve")),
    }
}

fn poly_str(p: &QPoly) -> String {
    p.to_string()
}

fn lattice_of(p: &RootcurvePayload) -> Result<SubobjectLattice, Failure> {
    let e = p.setup()?;
    Ok(build_lattice(&p.sheaf, &e, &p.curve)?)
}

pub fn point_table(preset_name: Option<&str>, file: Option<&Path>) -> Result<Report, Failure> {
    let (points, twists) = match (preset_name, file) {
        (Some(name), _) => preset(name).ok_or_else(|| Failure {
            code: 2,
            message: format!("unknown preset {name:?}; available: {}", PRESET_NAMES.join(", ")),
            hint: None,
        })?,
        (None, Some(path)) => match load(path)? {
            ProblemFile::PointTable(p) => (p.points, p.twists),
            other => return Err(wrong_kind(&other, "point_table")),
        },
        (None, None) => unreachable!("clap requires one of --preset and --file"),
    };
    let table = table_of(&points, &twists);
    let reps: Vec<CharacterRep> = points.iter().map(|p| p.rep.clone()).collect();
    let mut header = vec!["label".to_string()];
    header.extend(twists.iter().map(|t| format!("n_{t}")));
    header.push("n".into());
    let rows = table
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.label.clone()];
            row.extend(r.n_i.iter().map(u64::to_string));
            row.push(r.n.to_string());
            row
        })
        .collect();
    let json = json!({
        "twists": twists,
        "rows": table.rows,
        "distinguishes": distinguishes(&reps, &twists),
    });
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    Ok(Report::new(json).with_table(&header, rows))
}

pub fn hilbert(path: &Path) -> Result<Report, Failure> {
    let p = load_rootcurve(path)?;
    let e = p.setup()?;
    let h = modified_hilbert(&p.sheaf, &e, &p.curve)?;
    let alpha = h.alpha_coeffs();
    let rows = (0..alpha.len().max(1))
        .map(|i| vec![i.to_string(), alpha.get(i).cloned().unwrap_or_default().to_string(), h.coeff(i).to_string()])
        .collect();
    Ok(Report::new(json!({ "alpha": alpha, "coeffs": h, "polynomial": poly_str(&h) }))
        .with_table(&["i", "alpha", "coeff"], rows))
}

pub fn stability(path: &Path) -> Result<Report, Failure> {
    let p = load_rootcurve(path)?;
    let e = p.setup()?;
    let h = modified_hilbert(&p.sheaf, &e, &p.curve)?;
    let verdict =
        if p.sheaf.is_locally_free() { semistable(&p.sheaf, &e, &p.curve)? } else { lattice_of(&p)?.stability()? };
    Ok(Report::new(json!({ "stability": verdict, "reduced": poly_str(&h.reduced()?) })))
}

pub fn hn(path: &Path) -> Result<Report, Failure> {
    let p = load_rootcurve(path)?;
    let f = lattice_of(&p)?.hn()?;
    let reduced = f.graded_reduced()?;
    let steps: Vec<Value> = (0..f.steps())
        .map(|i| {
            json!({
                "subobject": f.labels[i + 1],
                "graded": f.graded[i],
                "graded_polynomial": poly_str(&f.graded[i]),
                "reduced": poly_str(&reduced[i]),
            })
        })
        .collect();
    let rows = (0..f.steps())
        .map(|i| vec![(i + 1).to_string(), f.labels[i + 1].clone(), poly_str(&f.graded[i]), poly_str(&reduced[i])])
        .collect();
    Ok(Report::new(json!({ "chain": f.labels, "steps": steps }))
        .with_table(&["step", "subobject", "graded", "reduced"], rows))
}

pub fn jh(path: &Path, seed: u64) -> Result<Report, Failure> {
    let p = load_rootcurve(path)?;
    let j = lattice_of(&p)?.jh(seed)?;
    let pieces: Vec<Value> = j
        .pieces
        .iter()
        .map(|g| json!({ "label": g.label, "hilbert": g.hilbert, "polynomial": poly_str(&g.hilbert) }))
        .collect();
    let rows = j.pieces.iter().map(|g| vec![g.label.clone(), poly_str(&g.hilbert)]).collect();
    Ok(Report::new(json!({ "chain": j.filtration.labels, "pieces": pieces })).with_table(&["label", "graded"], rows))
}

pub fn sequiv(path: &Path) -> Result<Report, Failure> {
    let p = load_rootcurve(path)?;
    let other = require(p.other.clone(), "other", "rootcurve")?;
    let e = p.setup()?;
    let a = build_lattice(&p.sheaf, &e, &p.curve)?.jh(0)?;
    let b = build_lattice(&other, &e, &p.curve)?.jh(0)?;
    Ok(Report::new(json!({ "s_equivalent": s_equivalent(&a.pieces, &b.pieces)? })))
}

pub fn torsion(path: &Path) -> Result<Report, Failure> {
    let p = load_rootcurve(path)?;
    let lat = lattice_of(&p)?;
    let t = lat.torsion_filtration()?;
    let levels: Vec<Value> = t
        .levels
        .iter()
        .enumerate()
        .map(|(i, &n)| json!({ "dim": i, "subobject": lat.node(n).label, "hilbert": lat.hilbert(n) }))
        .collect();
    let rows = t
        .levels
        .iter()
        .enumerate()
        .map(|(i, &n)| vec![i.to_string(), lat.node(n).label.clone(), poly_str(lat.hilbert(n))])
        .collect();
    Ok(Report::new(json!({ "levels": levels, "chain": t.filtration.labels }))
        .with_table(&["dim", "subobject", "hilbert"], rows))
}

pub fn parabolic(path: &Path) -> Result<Report, Failure> {
    let p = load_rootcurve(path)?;
    p.curve.validate()?;
    let mut points = Vec::new();
    let mut rows = Vec::new();
    for i in 0..p.curve.num_points() {
        let levels = parabolic_levels(&p.sheaf, &p.curve, i)?;
        for lv in &levels {
            let degrees: Vec<String> = lv.degrees.iter().map(i64::to_string).collect();
            rows.push(vec![i.to_string(), lv.level.to_string(), degrees.join(" ")]);
        }
        points.push(json!({ "point": i, "levels": levels }));
    }
    let mut json = json!({ "points": points });
    if let [line] = p.sheaf.lines.as_slice() {
        if p.curve.num_points() > 0 {
            let data = parabolic_line_data(line, &p.curve)?;
            json["reconstructed"] = to_value(&g_d_line(&data, &p.curve)?);
        }
    }
    Ok(Report::new(json).with_table(&["point", "level", "degrees"], rows))
}

pub fn gerbe_split(path: &Path) -> Result<Report, Failure> {
    let f = match load(path)? {
        ProblemFile::Gerbe(g) => g,
        other => return Err(wrong_kind(&other, "gerbe")),
    };
    let split = f.split()?;
    let label = f.component_label()?;
    let total = f.total_hilbert()?;
    let locally_free = f.components.values().all(|c| c.is_locally_free());
    let verdict = if locally_free { Some(semistable_gerbe(&f)?) } else { None };
    let components: Vec<Value> = split
        .iter()
        .map(|s| json!({ "character": s.character, "hilbert": s.hilbert, "polynomial": poly_str(&s.hilbert) }))
        .collect();
    let rows = label.iter().enumerate().map(|(chi, p)| vec![chi.to_string(), poly_str(p)]).collect();
    Ok(Report::new(json!({
        "components": components,
        "label": label,
        "total": total,
        "split_ok": poly_split_check(&f)?,
        "stability": verdict,
    }))
    .with_table(&["character", "hilbert"], rows))
}

fn load_git(path: &Path) -> Result<crate::problem::GitPayload, Failure> {
    match load(path)? {
        ProblemFile::Git(g) => Ok(g),
        other => Err(wrong_kind(&other, "git")),
    }
}

pub fn git_weight(path: &Path, l: i64) -> Result<Report, Failure> {
    let g = load_git(path)?;
    let w = require(g.weights, "weights", "git")?;
    w.validate()?;
    Ok(Report::new(json!({
        "l": l,
        "weight": hm_weight(&w, l),
        "total_dim": w.total_dim(),
        "special_linear": w.is_special_linear(),
    })))
}

pub fn git_check(path: &Path, l: Option<i64>, strict: bool) -> Result<Report, Failure> {
    let g = load_git(path)?;
    let n = require(g.dim, "dim", "git")?;
    let p = require(g.hilbert, "hilbert", "git")?;
    let verdict = match l {
        Some(l) => git_semistable_check(n, &p, &g.pairs, l, strict)?,
        None => git_semistable_check_poly(n, &p, &g.pairs, strict)?,
    };
    Ok(Report::new(json!({
        "l": l,
        "strict": strict,
        "semistable": verdict,
        "injective": validation_injectivity(&g.pairs),
    })))
}

pub fn bounds_check(path: &Path, m: Option<i64>) -> Result<Report, Failure> {
    let b = match load(path)? {
        ProblemFile::Bounds(b) => b,
        other => return Err(wrong_kind(&other, "bounds")),
    };
    let curve = require(b.curve, "curve", "bounds")?;
    let sheaf = require(b.sheaf, "sheaf", "bounds")?;
    curve.validate()?;
    let e = GeneratingSpec::resolve(b.generating.as_ref(), &curve)?;
    let h = modified_hilbert(&sheaf, &e, &curve)?;
    let mtilde = find_mtilde(&e, &curve)?;
    let slope = match slope_bound_check(&sheaf, &e, &curve, mtilde) {
        Ok(s) => to_value(&s),
        Err(Error::NotSemistable) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let mu_max = mu_hat_max(&sheaf, &e, &curve)?;
    let r = h.top_alpha()?;
    let r_int = r
        .to_i64()
        .filter(|&r| r > 0)
        .ok_or_else(|| Error::InvalidInput("multiplicity is not a positive integer".into()))? as u64;
    let langer = langer_h0_bound(&mu_max, r_int, 1);
    let h0 = lepotier_counts(&sheaf, &e, &curve, 0)?.h0;
    let regularity = lepotier_regularity(&sheaf, &e, &curve)?;
    let m = m.unwrap_or(regularity);
    let counts = lepotier_counts(&sheaf, &e, &curve, m)?;
    Ok(Report::new(json!({
        "mtilde": mtilde,
        "semistable": semistable(&sheaf, &e, &curve)? != stackstab::Stability::Unstable,
        "slope_bound": slope,
        "langer": { "mu_max": mu_max, "r": r, "d": 1, "bound": langer, "h0": h0.clone(), "dominates": langer >= h0 },
        "lepotier": {
            "m": m,
            "regularity": regularity,
            "h0": counts.h0,
            "rp": counts.rp,
            "equal": counts.h0 == counts.rp,
        },
    })))
}

pub fn regularity(path: &Path) -> Result<Report, Failure> {
    let b = match load(path)? {
        ProblemFile::Bounds(b) => b,
        other => return Err(wrong_kind(&other, "bounds")),
    };
    let ints = |v: Vec<Rational>, name: &str| -> Result<Vec<num_bigint::BigInt>, Failure> {
        v.into_iter()
            .map(|x| {
                if x.is_integer() {
                    Ok(x.numer().clone())
                } else {
                    Err(Failure::input(format!("{name} entries must be integers, got {x}"), "bounds"))
                }
            })
            .collect()
    };
    let a = ints(require(b.a, "a", "bounds")?, "a")?;
    let bb = ints(require(b.b, "b", "bounds")?, "b")?;
    let n = regularity_bound(&a, &bb)?;
    Ok(Report::new(json!({ "n": Rational::from(n) })))
}
