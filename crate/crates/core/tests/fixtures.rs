mod common;

use common::{four_by_four, polys, symbolic_2x2, three_by_three};
use ybx_core::linalg::{Matrix, Rational};
use ybx_core::polyalg::{buchberger, eliminate, ideal_equal, VarTable};
use ybx_core::ybe::{
    equations_from_polys, equations_from_system, simultaneous_diagonalize, PolyMatrix,
    SystemInstance,
};

fn diag(entries: &[i64]) -> Matrix<Rational> {
    Matrix::diag(
        &entries
            .iter()
            .map(|&k| Rational::from_integer(k.into()))
            .collect::<Vec<_>>(),
    )
}

fn assert_idempotent_complements(a: &Matrix<Rational>, b: &Matrix<Rational>) {
    assert_eq!(&(a * a), a);
    assert_eq!(&(b * b), b);
    assert!((a * b).is_zero());
    assert!((b * a).is_zero());
}

#[test]
fn three_by_three_pair_and_printed_diagonalizer() {
    let (a, b, u, u_inv) = (
        three_by_three::a(),
        three_by_three::b(),
        three_by_three::u(),
        three_by_three::u_inv(),
    );
    assert_idempotent_complements(&a, &b);
    assert_eq!(&u * &u_inv, Matrix::identity(3));
    assert_eq!(&(&u * &a) * &u_inv, diag(&[1, 1, 0]));
    assert_eq!(&(&u * &b) * &u_inv, diag(&[0, 0, 1]));
}

#[test]
fn three_by_three_diagonalized_by_library() {
    let sys = SystemInstance::new(three_by_three::a(), three_by_three::b()).unwrap();
    let pair = simultaneous_diagonalize(&sys).unwrap();
    assert_eq!(pair.ja, diag(&[1, 1, 0]));
    assert_eq!(pair.jb, diag(&[0, 0, 1]));
    assert_eq!((pair.rank_a, pair.rank_b), (2, 1));
}

#[test]
fn three_by_three_groebner_basis() {
    let sys = SystemInstance::new(diag(&[1, 1, 0]), diag(&[0, 0, 1])).unwrap();
    let vars = VarTable::parse_list(three_by_three::VARIABLES).unwrap();
    let eqs = equations_from_system(&sys, &vars).unwrap();
    assert_eq!(eqs.len(), 18);
    let printed = polys(&vars, &three_by_three::BASIS);
    assert!(ideal_equal(&vars, &eqs, &printed).unwrap());
    let g = buchberger(&vars, &eqs).unwrap();
    for p in &printed {
        assert!(g.contains(p));
    }
    let last = eliminate(&g, 1).unwrap();
    assert_eq!(last.to_strings(), ["i^2"]);
}

#[test]
fn four_by_four_pair_and_printed_diagonalizer() {
    let (a, b, u, u_inv) = (
        four_by_four::a(),
        four_by_four::b(),
        four_by_four::u(),
        four_by_four::u_inv(),
    );
    assert_idempotent_complements(&a, &b);
    assert_eq!(&u * &u_inv, Matrix::identity(4));
    assert_eq!(&(&u * &a) * &u_inv, diag(&[1, 1, 0, 0]));
    assert_eq!(&(&u * &b) * &u_inv, diag(&[0, 0, 1, 0]));
    let pair = simultaneous_diagonalize(&SystemInstance::new(a, b).unwrap()).unwrap();
    assert_eq!(pair.ja, diag(&[1, 1, 0, 0]));
    assert_eq!(pair.jb, diag(&[0, 0, 1, 0]));
}

#[test]
fn four_by_four_groebner_basis() {
    let sys = SystemInstance::new(diag(&[1, 1, 0, 0]), diag(&[0, 0, 1, 0])).unwrap();
    let vars = VarTable::parse_list(four_by_four::VARIABLES).unwrap();
    let eqs = equations_from_system(&sys, &vars).unwrap();
    let printed = polys(&vars, &four_by_four::BASIS);
    assert!(ideal_equal(&vars, &eqs, &printed).unwrap());
    let g = buchberger(&vars, &eqs).unwrap();
    for key in ["a+f-k", "l*p", "k^2"] {
        assert!(g.contains(&polys(&vars, &[key])[0]), "{key}");
    }
    // k² ∈ I forces k = 0, and a + f ≡ k, so a = −f
    let p = polys(&vars, &["a+f", "k"]);
    assert_eq!(g.reduce(&p[0]), g.reduce(&p[1]));
    assert!(!g.contains(&p[1]));
}

fn rows<'a>(m: &[[&'a str; 2]; 2]) -> Vec<Vec<&'a str>> {
    m.iter().map(|r| r.to_vec()).collect()
}

fn symbolic_equations(
    vars: &str,
    a: &[[&str; 2]; 2],
    b: &[[&str; 2]; 2],
    x: &[[&str; 2]; 2],
) -> (VarTable, Vec<ybx_core::polyalg::MultiPoly>) {
    let vars = VarTable::parse_list(vars).unwrap();
    let pa = PolyMatrix::parse(&rows(a), &vars).unwrap();
    let pb = PolyMatrix::parse(&rows(b), &vars).unwrap();
    let px = PolyMatrix::parse(&rows(x), &vars).unwrap();
    let eqs = equations_from_polys(&pa, &pb, &px).unwrap();
    (vars, eqs.into_iter().filter(|p| !p.is_zero()).collect())
}

#[test]
fn diagonal_symbolic_basis() {
    use symbolic_2x2::*;
    let (vars, eqs) = symbolic_equations(DIAGONAL_VARIABLES, &DIAGONAL_A, &DIAGONAL_B, &DIAGONAL_X);
    assert!(ideal_equal(&vars, &eqs, &polys(&vars, &DIAGONAL_BASIS)).unwrap());
}

#[test]
fn jordan_symbolic_basis() {
    use symbolic_2x2::*;
    let (vars, eqs) = symbolic_equations(JORDAN_VARIABLES, &JORDAN_A, &JORDAN_B, &JORDAN_X);
    assert!(ideal_equal(&vars, &eqs, &polys(&vars, &JORDAN_BASIS)).unwrap());
}

#[test]
fn perturbed_basis_is_not_ideal_equal() {
    let sys = SystemInstance::new(diag(&[1, 1, 0]), diag(&[0, 0, 1])).unwrap();
    let vars = VarTable::parse_list(three_by_three::VARIABLES).unwrap();
    let eqs = equations_from_system(&sys, &vars).unwrap();
    let mut wrong = three_by_three::BASIS.to_vec();
    wrong[1] = "i";
    assert!(!ideal_equal(&vars, &eqs, &polys(&vars, &wrong)).unwrap());
}
