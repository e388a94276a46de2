//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    four_by_four, polys, random_params, rng, symbolic_2x2, three_by_three, CONSTRUCTIBLE,
};
use rand_chacha::ChaCha8Rng;
use ybx_core::families::{
    canonical_idempotent_system, construct, family_covers, jordan_block, FamilyCase,
};
use ybx_core::linalg::{Fp, Matrix, Rational, Scalar, UniPoly, F13, F3, F5, F7};
use ybx_core::oracle::{
    cross_validate, default_workers, enumerate_solutions_with, EnumerationReport,
};
use ybx_core::polyalg::{buchberger, eliminate, ideal_equal, MultiPoly, VarTable};
use ybx_core::ybe::{
    charpoly_annihilation, equations_from_polys, equations_from_system, is_solution,
    kernel_lemma_checks, poly_intertwine_check, power_identity_check, residuals,
    simultaneous_diagonalize, spectrum_square_check, PolyMatrix, SystemInstance,
};

type Pairs<T> = Vec<(SystemInstance<T>, Matrix<T>)>;

/// Solutions gathered by the family and oracle criteria, rechecked by the
/// identity criterion.
#[derive(Default)]
struct Corpus {
    rational: Pairs<Rational>,
    f3: Pairs<F3>,
    f5: Pairs<F5>,
    f7: Pairs<F7>,
    f13: Pairs<F13>,
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn diag(entries: &[i64]) -> Matrix<Rational> {
    Matrix::diag(
        &entries
            .iter()
            .map(|&k| Rational::from_i64(k))
            .collect::<Vec<_>>(),
    )
}

fn idempotent_complements(a: &Matrix<Rational>, b: &Matrix<Rational>) -> bool {
    &(a * a) == a && &(b * b) == b && (a * b).is_zero() && (b * a).is_zero()
}

fn three_by_three_fixture() -> Check {
    let (a, b, u, u_inv) = (
        three_by_three::a(),
        three_by_three::b(),
        three_by_three::u(),
        three_by_three::u_inv(),
    );
    ensure(idempotent_complements(&a, &b), || {
        "A, B are not idempotent complements".into()
    })?;
    ensure(&u * &u_inv == Matrix::identity(3), || "U·U⁻¹ ≠ I".into())?;
    ensure(&(&u * &a) * &u_inv == diag(&[1, 1, 0]), || {
        "U·A·U⁻¹ ≠ diag(1,1,0)".into()
    })?;
    ensure(&(&u * &b) * &u_inv == diag(&[0, 0, 1]), || {
        "U·B·U⁻¹ ≠ diag(0,0,1)".into()
    })?;
    Ok("idempotent complements, printed diagonalizer exact".into())
}

fn three_by_three_groebner() -> Check {
    let sys = SystemInstance::new(diag(&[1, 1, 0]), diag(&[0, 0, 1])).unwrap();
    let vars = VarTable::parse_list(three_by_three::VARIABLES).unwrap();
    let eqs = equations_from_system(&sys, &vars).unwrap();
    ensure(eqs.len() == 18, || {
        format!("{} generated polynomials, expected 18", eqs.len())
    })?;
    let printed = polys(&vars, &three_by_three::BASIS);
    ensure(ideal_equal(&vars, &eqs, &printed).unwrap(), || {
        "basis differs from printed list".into()
    })?;
    let g = buchberger(&vars, &eqs).unwrap();
    let last = eliminate(&g, 1).unwrap().to_strings();
    ensure(last == ["i^2"], || format!("elimination ideal {last:?}"))?;
    Ok(format!(
        "{}-element reduced basis ideal-equal to printed list, eliminates to i^2",
        g.len()
    ))
}

fn four_by_four_fixture() -> Check {
    let (a, b, u, u_inv) = (
        four_by_four::a(),
        four_by_four::b(),
        four_by_four::u(),
        four_by_four::u_inv(),
    );
    ensure(idempotent_complements(&a, &b), || {
        "A, B are not idempotent complements".into()
    })?;
    ensure(&(&u * &a) * &u_inv == diag(&[1, 1, 0, 0]), || {
        "printed U does not diagonalize A".into()
    })?;
    ensure(&(&u * &b) * &u_inv == diag(&[0, 0, 1, 0]), || {
        "printed U does not diagonalize B".into()
    })?;
    let pair = simultaneous_diagonalize(&SystemInstance::new(a, b).unwrap()).unwrap();
    ensure(pair.ja == diag(&[1, 1, 0, 0]), || {
        format!("J_A = {:?}", pair.ja)
    })?;
    ensure(pair.jb == diag(&[0, 0, 1, 0]), || {
        format!("J_B = {:?}", pair.jb)
    })?;

    let vars = VarTable::parse_list(four_by_four::VARIABLES).unwrap();
    let eqs = equations_from_system(&pair.canonical_system(), &vars).unwrap();
    let printed = polys(&vars, &four_by_four::BASIS);
    ensure(ideal_equal(&vars, &eqs, &printed).unwrap(), || {
        "basis differs from printed list".into()
    })?;
    let g = buchberger(&vars, &eqs).unwrap();
    for key in ["a+f-k", "l*p", "k^2"] {
        ensure(g.contains(&polys(&vars, &[key])[0]), || {
            format!("{key} not in the ideal")
        })?;
    }
    let p = polys(&vars, &["a+f", "k"]);
    ensure(g.reduce(&p[0]) == g.reduce(&p[1]), || {
        "a+f is not congruent to k".into()
    })?;
    Ok(format!(
        "diagonalized to (J_A, J_B), {}-element basis ideal-equal to printed list, k^2 and a+f-k present",
        g.len()
    ))
}

fn symbolic_system(
    vars: &str,
    a: &[[&str; 2]; 2],
    b: &[[&str; 2]; 2],
    x: &[[&str; 2]; 2],
) -> (VarTable, Vec<MultiPoly>) {
    let vars = VarTable::parse_list(vars).unwrap();
    let parse = |m: &[[&str; 2]; 2]| {
        let rows: Vec<Vec<&str>> = m.iter().map(|r| r.to_vec()).collect();
        PolyMatrix::parse(&rows, &vars).unwrap()
    };
    let eqs = equations_from_polys(&parse(a), &parse(b), &parse(x)).unwrap();
    let eqs = eqs.into_iter().filter(|p| !p.is_zero()).collect();
    (vars, eqs)
}

fn symbolic_bases() -> Check {
    use symbolic_2x2::*;
    let (vars, eqs) = symbolic_system(DIAGONAL_VARIABLES, &DIAGONAL_A, &DIAGONAL_B, &DIAGONAL_X);
    ensure(
        ideal_equal(&vars, &eqs, &polys(&vars, &DIAGONAL_BASIS)).unwrap(),
        || "diagonal-pair basis differs from printed list".into(),
    )?;
    let (vars, eqs) = symbolic_system(JORDAN_VARIABLES, &JORDAN_A, &JORDAN_B, &JORDAN_X);
    ensure(
        ideal_equal(&vars, &eqs, &polys(&vars, &JORDAN_BASIS)).unwrap(),
        || "Jordan/diagonal basis differs from printed list".into(),
    )?;
    Ok("diagonal and Jordan/diagonal symbolic bases ideal-equal to printed lists".into())
}

fn draws<T: Scalar>(seed: u64, per_case: usize, out: &mut Pairs<T>) -> Result<(), String> {
    for (k, case) in CONSTRUCTIBLE.iter().enumerate() {
        let mut r = rng(seed + k as u64);
        for i in 0..per_case {
            let inst = construct(*case, &random_params::<T>(*case, &mut r))
                .map_err(|e| format!("{case} draw {i} over {}: {e}", T::domain_name()))?;
            let (r1, r2) = residuals(&inst.system, &inst.solution).unwrap();
            ensure(r1.is_zero() && r2.is_zero(), || {
                format!(
                    "{case} draw {i} over {} has a nonzero residual",
                    T::domain_name()
                )
            })?;
            out.push((inst.system, inst.solution));
        }
    }
    Ok(())
}

fn cube_root_draws<T: Scalar>(seed: u64, count: usize, out: &mut Pairs<T>) -> Result<(), String> {
    let mut r = rng(seed);
    for case in [FamilyCase::P51II, FamilyCase::P51III] {
        for _ in 0..count {
            let inst = construct(case, &common::p51_cube_root_params::<T>(&mut r))
                .map_err(|e| format!("{case} over {}: {e}", T::domain_name()))?;
            ensure(is_solution(&inst.system, &inst.solution).unwrap(), || {
                format!("{case} over {} is not a solution", T::domain_name())
            })?;
            out.push((inst.system, inst.solution));
        }
    }
    Ok(())
}

fn family_soundness(corpus: &mut Corpus) -> Check {
    draws::<Rational>(5000, 100, &mut corpus.rational)?;
    let rational = corpus.rational.len();
    draws::<F7>(6000, 20, &mut corpus.f7)?;
    draws::<F13>(7000, 20, &mut corpus.f13)?;
    cube_root_draws::<F7>(8000, 20, &mut corpus.f7)?;
    cube_root_draws::<F13>(9000, 20, &mut corpus.f13)?;
    Ok(format!(
        "{rational} rational draws over {} cases, {} F7 and {} F13 draws, all residuals zero",
        CONSTRUCTIBLE.len(),
        corpus.f7.len(),
        corpus.f13.len()
    ))
}

fn enumerate<const P: u32>(
    sys: &SystemInstance<Fp<P>>,
) -> Result<EnumerationReport<Fp<P>>, String> {
    let workers = default_workers().map_err(|e| e.to_string())?;
    let rep = enumerate_solutions_with(sys.a(), sys.b(), workers).map_err(|e| e.to_string())?;
    Ok(cross_validate(rep))
}

fn canonical_run<const P: u32>(
    n: usize,
    r: usize,
    s: usize,
    expected: Option<usize>,
) -> Result<EnumerationReport<Fp<P>>, String> {
    let rep = enumerate::<P>(&canonical_idempotent_system(n, r, s))?;
    if let Some(count) = expected {
        ensure(rep.solution_count == count, || {
            format!(
                "F{P} n={n}: {} solutions, expected {count}",
                rep.solution_count
            )
        })?;
    }
    ensure(rep.unclassified == 0, || {
        format!("F{P} n={n} r={r} s={s}: {} unclassified", rep.unclassified)
    })?;
    Ok(rep)
}

fn oracle_completeness(corpus: &mut Corpus) -> Check {
    let f3 = canonical_run::<3>(2, 1, 1, Some(5))?;
    let f5 = canonical_run::<5>(2, 1, 1, Some(9))?;
    let big = canonical_run::<3>(3, 1, 1, None)?;
    let summary = format!(
        "n=2: {} over F3, {} over F5; n=3 (r=s=1) over F3: {} solutions; zero unclassified",
        f3.solution_count, f5.solution_count, big.solution_count
    );
    for rep in [f3, big] {
        corpus.f3.extend(
            rep.solutions
                .iter()
                .map(|x| (rep.system.clone(), x.clone())),
        );
    }
    corpus
        .f5
        .extend(f5.solutions.iter().map(|x| (f5.system.clone(), x.clone())));
    Ok(summary)
}

fn random_poly<T: Scalar>(r: &mut ChaCha8Rng) -> UniPoly<T> {
    use rand::Rng;
    let degree = r.gen_range(1..=4);
    UniPoly::new((0..=degree).map(|_| common::scalar::<T>(r)).collect())
}

#[derive(Default)]
struct Tally {
    solutions: usize,
    nonsingular: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check<T: Scalar>(&mut self, r: &mut ChaCha8Rng, sys: &SystemInstance<T>, x: &Matrix<T>) {
        let domain = T::domain_name();
        let mut fail = |what: String| {
            self.failures
                .push(format!("{domain}: {what} for X = {x:?}"))
        };
        for k in 1..=4 {
            if !power_identity_check(sys, x, k).unwrap() {
                fail(format!("power identity k={k}"));
            }
        }
        if !charpoly_annihilation(sys, x).unwrap() {
            fail("characteristic polynomial annihilation".into());
        }
        for _ in 0..5 {
            let f = random_poly::<T>(r);
            if !poly_intertwine_check(sys, x, &f).unwrap() {
                fail(format!("polynomial intertwining f={f}"));
            }
        }
        if !kernel_lemma_checks(sys, x).unwrap().all_hold() {
            fail("kernel lemmas".into());
        }
        self.solutions += 1;
        if T::CHARACTERISTIC > 0
            && sys.a().is_invertible()
            && sys.b().is_invertible()
            && x.is_invertible()
        {
            self.nonsingular += 1;
            let spec = spectrum_square_check(sys, x).unwrap();
            if !spec.char_polys_equal {
                fail("char_poly(X²) ≠ char_poly(BA)".into());
            }
            let (da, db, dx) = (
                sys.a().det().unwrap(),
                sys.b().det().unwrap(),
                x.det().unwrap(),
            );
            if dx * db != da.clone() * da {
                fail("det(X)·det(B) ≠ det(A²)".into());
            }
        }
    }

    fn all<T: Scalar>(&mut self, r: &mut ChaCha8Rng, pairs: &Pairs<T>) {
        for (sys, x) in pairs {
            self.check(r, sys, x);
        }
    }
}

/// Every 2×2 diagonal pair and every Jordan pair with a diagonal or
/// Jordan partner over F5.
fn two_by_two_sweep() -> Result<Pairs<F5>, String> {
    let values: Vec<F5> = F5::elements().unwrap();
    let mut systems = Vec::new();
    for a in &values {
        for b in &values {
            let ja = jordan_block(*a);
            systems.push((ja.clone(), jordan_block(*b)));
            for c in &values {
                systems.push((ja.clone(), Matrix::diag(&[*b, *c])));
                for d in &values {
                    systems.push((Matrix::diag(&[*a, *b]), Matrix::diag(&[*c, *d])));
                }
            }
        }
    }
    let mut out = Vec::new();
    for (a, b) in systems {
        let sys = SystemInstance::new(a, b).unwrap();
        let rep = enumerate::<5>(&sys)?;
        out.extend(rep.solutions.into_iter().map(|x| (sys.clone(), x)));
    }
    Ok(out)
}

fn identity_suite(corpus: &Corpus) -> Check {
    let mut r = rng(42);
    let mut tally = Tally::default();
    tally.all(&mut r, &corpus.rational);
    tally.all(&mut r, &corpus.f3);
    tally.all(&mut r, &corpus.f5);
    tally.all(&mut r, &corpus.f7);
    tally.all(&mut r, &corpus.f13);
    let sweep = two_by_two_sweep()?;
    tally.all(&mut r, &sweep);
    if let Some(first) = tally.failures.first() {
        return Err(format!("{} failures, first: {first}", tally.failures.len()));
    }
    ensure(tally.nonsingular > 0, || {
        "no nonsingular triple found".into()
    })?;
    Ok(format!(
        "{} solutions checked ({} from the 2×2 F5 sweep), {} nonsingular triples, zero failures",
        tally.solutions,
        sweep.len(),
        tally.nonsingular
    ))
}

fn only_zero(sys: &SystemInstance<F5>, label: &str) -> Result<(), String> {
    let rep = enumerate::<5>(sys)?;
    ensure(
        rep.solution_count == 1 && rep.solutions[0].is_zero(),
        || {
            format!(
                "{label}: {} solutions, first nonzero {:?}",
                rep.solution_count,
                rep.solutions.iter().find(|x| !x.is_zero())
            )
        },
    )
}

fn trivial_only() -> Check {
    let values: Vec<F5> = F5::elements().unwrap();
    let zero = F5::from_i64(0);
    let mut systems = 0;
    for a in values.iter().filter(|v| **v != zero) {
        for b in &values {
            for c in &values {
                let sys = SystemInstance::new(jordan_block(*a), Matrix::diag(&[*b, *c])).unwrap();
                only_zero(&sys, &format!("Jordan a={a}, diag({b}, {c})"))?;
                systems += 1;
            }
        }
        for (x, y) in [(*a, zero), (zero, *a)] {
            let sys = SystemInstance::new(jordan_block(x), jordan_block(y)).unwrap();
            only_zero(&sys, &format!("Jordan pair a={x}, b={y}"))?;
            systems += 1;
        }
    }
    let classified = family_covers(
        &SystemInstance::new(jordan_block(F5::from_i64(1)), jordan_block(zero)).unwrap(),
        &Matrix::zeros(2, 2),
    );
    ensure(classified.is_classified(), || {
        "X = 0 left unclassified".into()
    })?;
    Ok(format!(
        "{systems} systems over F5, each with X = 0 as the only solution"
    ))
}

fn main() -> ExitCode {
    let mut corpus = Corpus::default();
    let mut failed = 0;
    let mut run =
        |n: usize, name: &str, budget: Duration, f: &mut dyn FnMut(&mut Corpus) -> Check| {
            let start = Instant::now();
            let result = catch_unwind(AssertUnwindSafe(|| f(&mut corpus)))
                .unwrap_or_else(|_| Err("panicked".into()));
            let elapsed = start.elapsed();
            let result = result.and_then(|msg| {
                if elapsed > budget {
                    Err(format!("{msg}; took {elapsed:.2?}, budget {budget:?}"))
                } else {
                    Ok(msg)
                }
            });
            match result {
                Ok(msg) => println!("PASS criterion {n}: {name}: {msg} [{elapsed:.2?}]"),
                Err(msg) => {
                    failed += 1;
                    println!("FAIL criterion {n}: {name}: {msg} [{elapsed:.2?}]");
                }
            }
        };
    let secs = Duration::from_secs;
    run(1, "three-by-three fixture", secs(1), &mut |_| {
        three_by_three_fixture()
    });
    run(2, "three-by-three Gröbner basis", secs(30), &mut |_| {
        three_by_three_groebner()
    });
    run(
        3,
        "four-by-four fixture and Gröbner basis",
        secs(60),
        &mut |_| four_by_four_fixture(),
    );
    run(4, "symbolic 2×2 bases", secs(10), &mut |_| {
        symbolic_bases()
    });
    run(5, "family soundness", secs(10), &mut family_soundness);
    run(
        6,
        "oracle completeness",
        secs(300),
        &mut oracle_completeness,
    );
    run(
        7,
        "necessary-condition identities",
        Duration::MAX,
        &mut |c| identity_suite(c),
    );
    run(8, "trivial-only shapes", secs(60), &mut |_| trivial_only());
    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
