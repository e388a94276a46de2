//! Exhaustive enumeration of all solutions over small prime fields, and
//! cross-validation of every solution against the family classifier and
//! the necessary conditions.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::families::family_covers;
use crate::linalg::{reduce_rational, Fp, Matrix, Scalar, UniPoly};
use crate::polyalg::GroebnerBasis;
use crate::ybe::{
    charpoly_annihilation, det_cube_condition, is_solution, kernel_lemma_checks,
    poly_intertwine_check, power_identity_check, spectrum_square_check, SystemInstance, YbeError,
};

/// Largest `p^(n²)` accepted by [`enumerate_solutions`].
pub const SEARCH_LIMIT: u64 = 5_000_000;

/// Environment variable read for the default worker count.
pub const WORKERS_ENV: &str = "YBX_WORKERS";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("search space {modulus}^{cells} exceeds the limit of {limit} candidates")]
    SearchSpace {
        modulus: u32,
        cells: usize,
        limit: u64,
    },
    #[error("invalid worker count {0:?}")]
    Workers(String),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Ybe(#[from] YbeError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyFailure {
    /// Index into `solutions`.
    pub solution: usize,
    pub property: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct EnumerationReport<T: Scalar> {
    pub modulus: u64,
    pub n: usize,
    #[serde(flatten)]
    pub system: SystemInstance<T>,
    pub solution_count: usize,
    /// Lexicographic over row-major entries.
    pub solutions: Vec<Matrix<T>>,
    /// Aligned with `solutions`: `"trivial"`, a case tag or
    /// `"unclassified"`. Empty until cross-validated.
    pub classification: Vec<String>,
    pub unclassified: usize,
    pub property_failures: Vec<PropertyFailure>,
    pub cross_validated: bool,
}

impl<T: Scalar> EnumerationReport<T> {
    /// Number of solutions carrying each label, in first-seen order.
    pub fn label_counts(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        for label in &self.classification {
            match out.iter_mut().find(|(l, _)| l == label) {
                Some((_, k)) => *k += 1,
                None => out.push((label.clone(), 1)),
            }
        }
        out
    }
}

/// Worker count from `YBX_WORKERS`, else the available parallelism.
pub fn default_workers() -> Result<usize, OracleError> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(w) if w > 0 => Ok(w),
            _ => Err(OracleError::Workers(v)),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

pub fn enumerate_solutions<const P: u32>(
    a: &Matrix<Fp<P>>,
    b: &Matrix<Fp<P>>,
) -> Result<EnumerationReport<Fp<P>>, OracleError> {
    enumerate_solutions_with(a, b, default_workers()?)
}

/// Enumerate with an explicit worker count. Work units are the `p^n`
/// possible first rows; results are merged in order, so the output does
/// not depend on `workers`.
pub fn enumerate_solutions_with<const P: u32>(
    a: &Matrix<Fp<P>>,
    b: &Matrix<Fp<P>>,
    workers: usize,
) -> Result<EnumerationReport<Fp<P>>, OracleError> {
    if workers == 0 {
        return Err(OracleError::Workers("0".into()));
    }
    let system = SystemInstance::new(a.clone(), b.clone())?;
    let n = system.n();
    let cells = n * n;
    let too_big = || OracleError::SearchSpace {
        modulus: P,
        cells,
        limit: SEARCH_LIMIT,
    };
    let size = (P as u64).checked_pow(cells as u32).ok_or_else(too_big)?;
    if size > SEARCH_LIMIT {
        return Err(too_big());
    }
    let kernel = Kernel {
        n,
        p: P as u64,
        a: a.entries().iter().map(|v| v.value() as u64).collect(),
        b: b.entries().iter().map(|v| v.value() as u64).collect(),
    };
    let prefixes = (P as u64).pow(n as u32);
    let chunks: Vec<Vec<Vec<u64>>> = if workers == 1 {
        (0..prefixes).map(|pre| kernel.search(pre)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| OracleError::Pool(e.to_string()))?;
        pool.install(|| {
            (0..prefixes)
                .into_par_iter()
                .map(|pre| kernel.search(pre))
                .collect()
        })
    };
    let solutions: Vec<Matrix<Fp<P>>> = chunks
        .into_iter()
        .flatten()
        .map(|x| {
            Matrix::new(n, n, x.into_iter().map(|v| Fp::new(v as i64)).collect())
                .expect("n² entries")
        })
        .collect();
    Ok(EnumerationReport {
        modulus: P as u64,
        n,
        system,
        solution_count: solutions.len(),
        solutions,
        classification: Vec::new(),
        unclassified: 0,
        property_failures: Vec::new(),
        cross_validated: false,
    })
}

/// Residual test on raw residues, avoiding field-element overhead.
struct Kernel {
    n: usize,
    p: u64,
    a: Vec<u64>,
    b: Vec<u64>,
}

impl Kernel {
    fn mul(&self, x: &[u64], y: &[u64], out: &mut [u64]) {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc += x[i * n + k] * y[k * n + j];
                }
                out[i * n + j] = acc % self.p;
            }
        }
    }

    /// `MXM == XNX`
    fn side_equal(&self, m: &[u64], nn: &[u64], x: &[u64], t: &mut [[u64; 9]; 4]) -> bool {
        let [t0, t1, t2, t3] = t;
        let c = self.n * self.n;
        self.mul(m, x, &mut t0[..c]);
        self.mul(&t0[..c], m, &mut t1[..c]);
        self.mul(x, nn, &mut t2[..c]);
        self.mul(&t2[..c], x, &mut t3[..c]);
        t1[..c] == t3[..c]
    }

    fn search(&self, prefix: u64) -> Vec<Vec<u64>> {
        let (n, p) = (self.n, self.p);
        let cells = n * n;
        let mut x = vec![0u64; cells];
        // first row: base-p digits of the prefix, most significant first
        let mut rest = prefix;
        for j in (0..n).rev() {
            x[j] = rest % p;
            rest /= p;
        }
        let mut scratch = [[0u64; 9]; 4];
        let mut found = Vec::new();
        loop {
            if self.side_equal(&self.a, &self.b, &x, &mut scratch)
                && self.side_equal(&self.b, &self.a, &x, &mut scratch)
            {
                found.push(x.clone());
            }
            // odometer over the remaining entries, last entry fastest
            let mut k = cells;
            loop {
                if k == n {
                    return found;
                }
                k -= 1;
                x[k] += 1;
                if x[k] < p {
                    break;
                }
                x[k] = 0;
            }
        }
    }
}

/// Fixed test polynomials for the intertwining identity.
fn probe_polys<T: Scalar>() -> Vec<UniPoly<T>> {
    let c = |v: &[i64]| UniPoly::new(v.iter().map(|&k| T::from_i64(k)).collect());
    vec![c(&[1, 0, 1]), c(&[3, -2, 0, 1]), c(&[0, 1, 1, 0, 2])]
}

/// Every necessary-condition identity that applies to `x`, as
/// `(property, detail)` pairs for the ones that fail.
pub fn solution_property_failures<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
) -> Vec<(String, String)> {
    let mut fails = Vec::new();
    let mut record = |name: String, r: Result<bool, YbeError>| match r {
        Ok(true) => {}
        Ok(false) => fails.push((name, "identity does not hold".to_string())),
        Err(e) => fails.push((name, e.to_string())),
    };
    match is_solution(sys, x) {
        Ok(true) => {}
        other => {
            record("residual".into(), other);
            return fails;
        }
    }
    for k in 1..=4 {
        record(
            format!("power_identity k={k}"),
            power_identity_check(sys, x, k),
        );
    }
    record(
        "charpoly_annihilation".into(),
        charpoly_annihilation(sys, x),
    );
    for f in probe_polys::<T>() {
        record(
            format!("poly_intertwine f={f}"),
            poly_intertwine_check(sys, x, &f),
        );
    }
    record(
        "kernel_lemmas".into(),
        kernel_lemma_checks(sys, x).map(|r| r.all_hold()),
    );
    record(
        "det_relation".into(),
        det_cube_condition(sys, Some(x)).map(|r| r.solution_relation != Some(false)),
    );
    if sys.a().is_invertible() && sys.b().is_invertible() && x.is_invertible() {
        record(
            "spectrum_square".into(),
            spectrum_square_check(sys, x).map(|r| r.conjugation_holds && r.char_polys_equal),
        );
    }
    fails
}

/// Classify every solution and run the property checks on it.
pub fn cross_validate<T: Scalar>(mut report: EnumerationReport<T>) -> EnumerationReport<T> {
    let sys = &report.system;
    let per_solution: Vec<(String, Vec<(String, String)>)> = report
        .solutions
        .par_iter()
        .map(|x| {
            (
                family_covers(sys, x).label(),
                solution_property_failures(sys, x),
            )
        })
        .collect();
    report.classification.clear();
    report.property_failures.clear();
    for (i, (label, fails)) in per_solution.into_iter().enumerate() {
        report.classification.push(label);
        report
            .property_failures
            .extend(fails.into_iter().map(|(property, detail)| PropertyFailure {
                solution: i,
                property,
                detail,
            }));
    }
    report.unclassified = report
        .classification
        .iter()
        .filter(|l| *l == "unclassified")
        .count();
    report.cross_validated = true;
    report
}

/// Reduce the basis mod p and evaluate it at the entries of `x`
/// (row-major, one variable per entry). `None` when p divides a
/// coefficient denominator or the variable count is not `n²`.
pub fn basis_vanishes_at<const P: u32>(basis: &GroebnerBasis, x: &Matrix<Fp<P>>) -> Option<bool> {
    if basis.vars().len() != x.rows() * x.cols() {
        return None;
    }
    let mut all = true;
    for g in basis.generators() {
        let v = g.eval_in(x.entries(), reduce_rational::<P>)?;
        all &= v.is_zero();
    }
    Some(all)
}
