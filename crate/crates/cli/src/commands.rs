use std::fmt::Display;
use std::path::Path;

use serde_json::{json, Map, Value};
use ybx_core::families::{canonical_idempotent_system, construct, family_covers, FamilyError};
use ybx_core::io::{matrix_to_json, system_to_json, RawFamily, RawMatrix, RawSystem};
use ybx_core::linalg::{Fp, Matrix, Rational, Scalar, F11, F13, F3, F5, F7};
use ybx_core::oracle::{cross_validate, default_workers, enumerate_solutions_with};
use ybx_core::polyalg::{buchberger, eliminate, ideal_equal, VarTable};
use ybx_core::ybe::{
    charpoly_annihilation, commuting_solution_check, det_cube_condition, eigen_pair_sum_zero,
    eigenspace_annihilation_check, entry_variable_names, equations_from_system, iprime_check,
    is_solution, kernel_lemma_checks, pencil_conditions, power_identity_check, residuals,
    spectrum_square_check, sylvester_pair_check, SystemInstance,
};

use crate::{Command, Outcome, Pair};

type CmdResult = Result<Outcome, String>;

/// Run `$f::<T>(args)` with `T` the scalar domain for `$modulus`.
macro_rules! with_domain {
    ($modulus:expr, $f:ident($($arg:expr),*)) => {
        match $modulus {
            None => $f::<Rational>($($arg),*),
            Some(3) => $f::<F3>($($arg),*),
            Some(5) => $f::<F5>($($arg),*),
            Some(7) => $f::<F7>($($arg),*),
            Some(11) => $f::<F11>($($arg),*),
            Some(13) => $f::<F13>($($arg),*),
            Some(p) => Err(unsupported(p)),
        }
    };
}

fn unsupported(p: u32) -> String {
    format!("unsupported modulus {p}; choose one of 3, 5, 7, 11, 13")
}

pub fn run(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Verify { pair, x } => {
            let loaded = Loaded::new(pair, &[x])?;
            with_domain!(loaded.modulus, verify(&loaded))
        }
        Command::Conditions { pair, x, lambda } => {
            let extra: Vec<&Path> = x.iter().map(|p| p.as_path()).collect();
            let loaded = Loaded::new(pair, &extra)?;
            with_domain!(loaded.modulus, conditions(&loaded, lambda.as_deref()))
        }
        Command::Equations {
            pair,
            vars,
            keep_zero,
        } => {
            let loaded = Loaded::new(pair, &[])?;
            if loaded.modulus.is_some() {
                return Err("equations are generated over the rationals; drop the modulus".into());
            }
            equations(&loaded, vars.as_deref(), *keep_zero)
        }
        Command::Groebner {
            system,
            order,
            eliminate,
            compare,
        } => groebner(system, order.as_deref(), *eliminate, compare.as_deref()),
        Command::Family { params } => {
            let raw = RawFamily::parse(&read(params)?).map_err(|e| located(params, e))?;
            with_domain!(raw.modulus, family(&raw))
        }
        Command::Enumerate {
            modulus,
            a,
            b,
            dim,
            rank,
            complement,
            workers,
            no_cross_validate,
            strict,
        } => {
            let source = match (a, b, dim) {
                (Some(a), Some(b), _) => Source::Files(
                    RawMatrix::parse(&read(a)?).map_err(|e| located(a, e))?,
                    RawMatrix::parse(&read(b)?).map_err(|e| located(b, e))?,
                ),
                (_, _, Some(n)) => {
                    let r = rank.ok_or("--dim needs --rank")?;
                    if r == 0 || r >= *n {
                        return Err(format!("need 0 < rank < dim, got rank {r}, dim {n}"));
                    }
                    let s = complement.unwrap_or(n - r);
                    if s == 0 || r + s > *n {
                        return Err(format!("need 1 ≤ complement ≤ dim − rank, got {s}"));
                    }
                    Source::Canonical(*n, r, s)
                }
                _ => return Err("give --A and --B, or --dim and --rank".into()),
            };
            let workers = match workers {
                Some(0) => return Err("--workers must be positive".into()),
                Some(w) => *w,
                None => default_workers().map_err(|e| e.to_string())?,
            };
            let opts = EnumerateOpts {
                workers,
                cross: !no_cross_validate,
                strict: *strict,
            };
            match modulus {
                3 => enumerate::<3>(&source, &opts),
                5 => enumerate::<5>(&source, &opts),
                7 => enumerate::<7>(&source, &opts),
                11 => enumerate::<11>(&source, &opts),
                13 => enumerate::<13>(&source, &opts),
                p => Err(unsupported(*p)),
            }
        }
        Command::Classify { pair, x } => {
            let loaded = Loaded::new(pair, &[x])?;
            with_domain!(loaded.modulus, classify(&loaded))
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn located(path: &Path, e: impl Display) -> String {
    format!("{}: {e}", path.display())
}

/// Matrix files parsed up to the choice of scalar domain.
struct Loaded {
    modulus: Option<u32>,
    files: Vec<(String, RawMatrix)>,
}

impl Loaded {
    fn new(pair: &Pair, extra: &[&Path]) -> Result<Self, String> {
        let mut files = Vec::new();
        for path in [pair.a.as_path(), pair.b.as_path()]
            .into_iter()
            .chain(extra.iter().copied())
        {
            let raw = RawMatrix::parse(&read(path)?).map_err(|e| located(path, e))?;
            files.push((path.display().to_string(), raw));
        }
        let mut modulus = pair.modulus;
        for (name, raw) in &files {
            match (modulus, raw.modulus) {
                (_, None) => {}
                (None, Some(p)) => modulus = Some(p),
                (Some(p), Some(q)) if p != q => {
                    return Err(format!("{name}: modulus {q} conflicts with {p}"));
                }
                _ => {}
            }
        }
        Ok(Loaded { modulus, files })
    }

    fn matrix<T: Scalar>(&self, i: usize) -> Result<Matrix<T>, String> {
        let (name, raw) = &self.files[i];
        raw.to_matrix().map_err(|e| format!("{name}: {e}"))
    }

    fn system<T: Scalar>(&self) -> Result<SystemInstance<T>, String> {
        SystemInstance::new(self.matrix(0)?, self.matrix(1)?).map_err(|e| e.to_string())
    }

    fn unknown<T: Scalar>(&self, sys: &SystemInstance<T>) -> Result<Matrix<T>, String> {
        let x = self.matrix(2)?;
        if x.shape() != sys.a().shape() {
            return Err(format!(
                "{}: X is {}×{} but A is {}×{}",
                self.files[2].0,
                x.rows(),
                x.cols(),
                sys.n(),
                sys.n()
            ));
        }
        Ok(x)
    }
}

/// ℓ1 norm over ℚ, count of nonzero entries over F_p.
fn residual_norm<T: Scalar>(m: &Matrix<T>) -> String {
    if T::CHARACTERISTIC == 0 {
        let sum = m
            .entries()
            .iter()
            .fold(Rational::from_integer(0.into()), |acc, v| {
                let q = Rational::parse_scalar(&v.to_string()).expect("rational display parses");
                acc + if q < Rational::from_integer(0.into()) {
                    -q
                } else {
                    q
                }
            });
        sum.to_string()
    } else {
        m.entries()
            .iter()
            .filter(|v| !v.is_zero())
            .count()
            .to_string()
    }
}

fn residual_json<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
) -> Result<(bool, Value), String> {
    let (r1, r2) = residuals(sys, x).map_err(|e| e.to_string())?;
    let ok = r1.is_zero() && r2.is_zero();
    Ok((
        ok,
        json!({
            "is_solution": ok,
            "residual_norms": [residual_norm(&r1), residual_norm(&r2)],
            "residuals": {
                "AXA-XBX": matrix_to_json(&r1),
                "BXB-XAX": matrix_to_json(&r2),
            },
        }),
    ))
}

fn verify<T: Scalar>(loaded: &Loaded) -> CmdResult {
    let sys = loaded.system::<T>()?;
    let x = loaded.unknown(&sys)?;
    let (ok, mut value) = residual_json(&sys, &x)?;
    value["domain"] = json!(T::domain_name());
    Ok(Outcome { value, ok })
}

fn report<S: serde::Serialize, E: Display>(r: Result<S, E>) -> Value {
    match r {
        Ok(v) => serde_json::to_value(v).expect("serializable report"),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn conditions<T: Scalar>(loaded: &Loaded, lambda: Option<&str>) -> CmdResult {
    let sys = loaded.system::<T>()?;
    let mut out = Map::new();
    out.insert("domain".into(), json!(T::domain_name()));
    out.insert("pencil".into(), report(pencil_conditions(&sys)));
    out.insert("eigen_pair".into(), report(eigen_pair_sum_zero(&sys)));
    let x = if loaded.files.len() > 2 {
        Some(loaded.unknown(&sys)?)
    } else {
        None
    };
    out.insert(
        "det_cube".into(),
        report(det_cube_condition(&sys, x.as_ref())),
    );
    let mut ok = true;
    if let Some(x) = &x {
        ok = is_solution(&sys, x).map_err(|e| e.to_string())?;
        out.insert("is_solution".into(), json!(ok));
        out.insert(
            "sylvester_pair".into(),
            report(sylvester_pair_check(&sys, x)),
        );
        let powers: Vec<Value> = (1..=4)
            .map(|k| json!({ "k": k, "holds": report(power_identity_check(&sys, x, k)) }))
            .collect();
        out.insert("power_identity".into(), json!(powers));
        out.insert(
            "charpoly_annihilation".into(),
            report(charpoly_annihilation(&sys, x)),
        );
        out.insert("kernel".into(), report(kernel_lemma_checks(&sys, x)));
        out.insert(
            "spectrum_square".into(),
            report(spectrum_square_check(&sys, x)),
        );
        out.insert(
            "commuting".into(),
            report(commuting_solution_check(&sys, x)),
        );
        out.insert("iprime".into(), report(iprime_check(&sys, x)));
        if let Some(l) = lambda {
            let l = T::parse_scalar(l).map_err(|e| format!("--lambda: {e}"))?;
            out.insert(
                "eigenspace".into(),
                report(eigenspace_annihilation_check(&sys, x, &l)),
            );
        }
    }
    Ok(Outcome {
        value: Value::Object(out),
        ok,
    })
}

fn equations(loaded: &Loaded, vars: Option<&str>, keep_zero: bool) -> CmdResult {
    let sys = loaded.system::<Rational>()?;
    let vars = match vars {
        Some(v) => VarTable::parse_list(v).map_err(|e| format!("--vars: {e}"))?,
        None => VarTable::new(&entry_variable_names(sys.n())).map_err(|e| e.to_string())?,
    };
    let mut polys = equations_from_system(&sys, &vars).map_err(|e| e.to_string())?;
    if !keep_zero {
        polys.retain(|p| !p.is_zero());
    }
    Ok(Outcome {
        value: system_to_json(&vars, &polys),
        ok: true,
    })
}

fn groebner(
    system: &Path,
    order: Option<&str>,
    elim: Option<usize>,
    compare: Option<&Path>,
) -> CmdResult {
    let order = order
        .map(VarTable::parse_list)
        .transpose()
        .map_err(|e| format!("--order: {e}"))?;
    let raw = RawSystem::parse(&read(system)?).map_err(|e| located(system, e))?;
    let (vars, polys) = raw
        .resolve(order.as_ref())
        .map_err(|e| located(system, e))?;
    let basis = buchberger(&vars, &polys).map_err(|e| e.to_string())?;
    let mut out = Map::new();
    out.insert("variables".into(), json!(vars.names()));
    out.insert("basis".into(), json!(basis.to_strings()));
    out.insert("size".into(), json!(basis.len()));
    out.insert("is_unit".into(), json!(basis.is_unit()));
    if let Some(k) = elim {
        if k > vars.len() {
            return Err(format!("--eliminate {k} exceeds {} variables", vars.len()));
        }
        let e = eliminate(&basis, vars.len() - k).map_err(|e| e.to_string())?;
        out.insert(
            "elimination".into(),
            json!({
                "variables": e.vars().names(),
                "basis": e.to_strings(),
            }),
        );
    }
    let mut ok = true;
    if let Some(other) = compare {
        let raw = RawSystem::parse(&read(other)?).map_err(|e| located(other, e))?;
        let (_, theirs) = raw.resolve(Some(&vars)).map_err(|e| located(other, e))?;
        ok = ideal_equal(&vars, &polys, &theirs).map_err(|e| e.to_string())?;
        out.insert("ideal_equal".into(), json!(ok));
    }
    Ok(Outcome {
        value: Value::Object(out),
        ok,
    })
}

fn family<T: Scalar>(raw: &RawFamily) -> CmdResult {
    let params = raw.to_params::<T>().map_err(|e| e.to_string())?;
    match construct(raw.case, &params) {
        Ok(inst) => {
            let (ok, cert) = residual_json(&inst.system, &inst.solution)?;
            Ok(Outcome {
                value: json!({
                    "case": inst.case,
                    "domain": T::domain_name(),
                    "A": matrix_to_json(inst.system.a()),
                    "B": matrix_to_json(inst.system.b()),
                    "X": matrix_to_json(&inst.solution),
                    "certificate": cert,
                }),
                ok,
            })
        }
        Err(
            e @ (FamilyError::Constraint { .. }
            | FamilyError::TrivialOnly { .. }
            | FamilyError::NoClosedForm { .. }
            | FamilyError::NotVerified { .. }),
        ) => Ok(Outcome {
            value: json!({ "case": raw.case, "rejected": e.to_string() }),
            ok: false,
        }),
        Err(e) => Err(e.to_string()),
    }
}

enum Source {
    Files(RawMatrix, RawMatrix),
    Canonical(usize, usize, usize),
}

struct EnumerateOpts {
    workers: usize,
    cross: bool,
    strict: bool,
}

fn enumerate<const P: u32>(source: &Source, opts: &EnumerateOpts) -> CmdResult {
    let sys: SystemInstance<Fp<P>> = match source {
        Source::Files(a, b) => {
            for m in [a, b] {
                if let Some(q) = m.modulus.filter(|&q| q != P) {
                    return Err(format!("matrix modulus {q} conflicts with --modulus {P}"));
                }
            }
            let a = a.to_matrix().map_err(|e| format!("A: {e}"))?;
            let b = b.to_matrix().map_err(|e| format!("B: {e}"))?;
            SystemInstance::new(a, b).map_err(|e| e.to_string())?
        }
        Source::Canonical(n, r, s) => canonical_idempotent_system(*n, *r, *s),
    };
    let mut rep =
        enumerate_solutions_with(sys.a(), sys.b(), opts.workers).map_err(|e| e.to_string())?;
    if opts.cross {
        rep = cross_validate(rep);
    }
    let clean = rep.unclassified == 0 && rep.property_failures.is_empty();
    let mut value = serde_json::to_value(&rep).expect("serializable report");
    let summary: Map<String, Value> = rep
        .label_counts()
        .into_iter()
        .map(|(l, k)| (l, json!(k)))
        .collect();
    value["label_counts"] = Value::Object(summary);
    Ok(Outcome {
        value,
        ok: !opts.strict || clean,
    })
}

fn classify<T: Scalar>(loaded: &Loaded) -> CmdResult {
    let sys = loaded.system::<T>()?;
    let x = loaded.unknown(&sys)?;
    let solves = is_solution(&sys, &x).map_err(|e| e.to_string())?;
    let coverage = family_covers(&sys, &x);
    let mut value = serde_json::to_value(&coverage).expect("serializable coverage");
    value["label"] = json!(coverage.label());
    value["is_solution"] = json!(solves);
    Ok(Outcome { value, ok: solves })
}
