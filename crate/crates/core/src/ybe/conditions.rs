use serde::Serialize;

use crate::linalg::{det_pencil, Matrix, Scalar, UniPoly};
use crate::serde_util::{display, display_opt};

use super::{is_solution, solves_single_ybe, SystemInstance, YbeError};

fn nonconstant<T: Scalar>(p: &UniPoly<T>) -> bool {
    p.degree().is_some_and(|d| d > 0)
}

/// `M·v = 0` for every column `v` of the basis.
fn annihilates<T: Scalar>(m: &Matrix<T>, basis: &[Matrix<T>]) -> bool {
    basis.iter().all(|v| (m * v).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct SylvesterPairReport<T: Scalar> {
    pub solves_system: bool,
    /// `CXC = XCX` with `C = A + B`.
    pub solves_single_ybe: bool,
    /// `AXB + BXA`
    pub lhs: Matrix<T>,
    /// `None` when a precondition fails; no claim is made then.
    pub conclusion: Option<bool>,
}

pub fn sylvester_pair_check<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
) -> Result<SylvesterPairReport<T>, YbeError> {
    let solves_system = is_solution(sys, x)?;
    let solves_single_ybe = solves_single_ybe(&sys.c(), x);
    let (a, b) = (sys.a(), sys.b());
    let lhs = &(&(a * x) * b) + &(&(b * x) * a);
    Ok(SylvesterPairReport {
        conclusion: (solves_system && solves_single_ybe).then(|| lhs.is_zero()),
        solves_system,
        solves_single_ybe,
        lhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct PencilReport<T: Scalar> {
    /// `det(A + λB)`
    pub p_plus: UniPoly<T>,
    /// `det(A − λB)`
    pub p_minus: UniPoly<T>,
    pub plus_regular: bool,
    pub minus_regular: bool,
    pub gcd: UniPoly<T>,
    pub common_spectrum: bool,
    /// Both pencils regular with disjoint spectra: the only simultaneous
    /// solution of the system and `CXC = XCX` is zero.
    pub only_trivial_simultaneous: bool,
}

pub fn pencil_conditions<T: Scalar>(sys: &SystemInstance<T>) -> Result<PencilReport<T>, YbeError> {
    let p_plus = det_pencil(sys.a(), sys.b())?;
    let p_minus = det_pencil(sys.a(), &-sys.b())?;
    let gcd = p_plus.gcd(&p_minus);
    let plus_regular = !p_plus.is_zero();
    let minus_regular = !p_minus.is_zero();
    // gcd(0, 0) = 0: every λ is shared
    let common_spectrum = gcd.is_zero() || nonconstant(&gcd);
    Ok(PencilReport {
        only_trivial_simultaneous: plus_regular && minus_regular && !common_spectrum,
        p_plus,
        p_minus,
        plus_regular,
        minus_regular,
        gcd,
        common_spectrum,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct EigenPairReport<T: Scalar> {
    /// Characteristic polynomial of `BA⁻¹`.
    pub char_poly: UniPoly<T>,
    pub reflected: UniPoly<T>,
    pub gcd: UniPoly<T>,
    /// Some `μ` and `−μ` are both eigenvalues (over the algebraic closure).
    pub condition_holds: bool,
}

pub fn eigen_pair_sum_zero<T: Scalar>(
    sys: &SystemInstance<T>,
) -> Result<EigenPairReport<T>, YbeError> {
    let a_inv = sys
        .a()
        .inverse()
        .map_err(|_| YbeError::Precondition("A is singular".into()))?;
    let p = (sys.b() * &a_inv).char_poly()?;
    let reflected = p.reflect();
    let gcd = p.gcd(&reflected);
    Ok(EigenPairReport {
        condition_holds: nonconstant(&gcd),
        char_poly: p,
        reflected,
        gcd,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct DetCubeReport<T: Scalar> {
    #[serde(serialize_with = "display")]
    pub det_a: T,
    #[serde(serialize_with = "display")]
    pub det_b: T,
    #[serde(serialize_with = "display")]
    pub det_a_cubed: T,
    #[serde(serialize_with = "display")]
    pub det_b_cubed: T,
    pub cubes_equal: bool,
    pub both_nonsingular: bool,
    /// False exactly when both are nonsingular and the cubes differ.
    pub nonsingular_solution_possible: bool,
    #[serde(serialize_with = "display_opt")]
    pub det_x: Option<T>,
    /// For a supplied nonsingular solution: `det(X)·det(B) = det(A)²` and
    /// `det(X)·det(A) = det(B)²`.
    pub solution_relation: Option<bool>,
}

pub fn det_cube_condition<T: Scalar>(
    sys: &SystemInstance<T>,
    x: Option<&Matrix<T>>,
) -> Result<DetCubeReport<T>, YbeError> {
    let det_a = sys.a().det()?;
    let det_b = sys.b().det()?;
    let det_a_cubed = det_a.pow(3);
    let det_b_cubed = det_b.pow(3);
    let cubes_equal = det_a_cubed == det_b_cubed;
    let both_nonsingular = !det_a.is_zero() && !det_b.is_zero();
    let (det_x, solution_relation) = match x {
        None => (None, None),
        Some(x) => {
            sys.require_solution(x)?;
            let dx = x.det()?;
            let rel = (!dx.is_zero()).then(|| {
                dx.clone() * det_b.clone() == det_a.pow(2)
                    && dx.clone() * det_a.clone() == det_b.pow(2)
            });
            (Some(dx), rel)
        }
    };
    Ok(DetCubeReport {
        nonsingular_solution_possible: !both_nonsingular || cubes_equal,
        det_a,
        det_b,
        det_a_cubed,
        det_b_cubed,
        cubes_equal,
        both_nonsingular,
        det_x,
        solution_relation,
    })
}

/// `X^{2k}·BX = BX·(BA)^k`
pub fn power_identity_check<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
    k: u32,
) -> Result<bool, YbeError> {
    sys.require_solution(x)?;
    let bx = sys.b() * x;
    let ba = sys.b() * sys.a();
    let lhs = &x.pow(2 * k)? * &bx;
    let rhs = &bx * &ba.pow(k)?;
    Ok(lhs == rhs)
}

/// `Φ_BA(X²)·BX = 0`
pub fn charpoly_annihilation<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
) -> Result<bool, YbeError> {
    sys.require_solution(x)?;
    let phi = (sys.b() * sys.a()).char_poly()?;
    let lhs = &(&(x * x).poly_eval(&phi)? * sys.b()) * x;
    Ok(lhs.is_zero())
}

/// `f(X²)·BX = BX·f(BA)`
pub fn poly_intertwine_check<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
    f: &UniPoly<T>,
) -> Result<bool, YbeError> {
    sys.require_solution(x)?;
    let bx = sys.b() * x;
    let lhs = &(x * x).poly_eval(f)? * &bx;
    let rhs = &bx * &(sys.b() * sys.a()).poly_eval(f)?;
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub a_singular: bool,
    pub b_singular: bool,
    pub x_singular: bool,
    /// Exactly one of A, B singular: X must be singular.
    pub mixed_singularity: Option<bool>,
    /// Exactly one of A, B singular, say A: every `u ∈ Ker(A)` has
    /// `u ∈ Ker(X)` or `BXu ∈ Ker(X)`. Checked as `XBXu = 0` on a basis,
    /// which gives the alternative for every kernel vector.
    pub kernel_alternative: Option<bool>,
    /// A, B both nonsingular: `v ∈ Ker(X)` implies `XAv = XBv = 0`.
    pub invertible_kernel: Option<bool>,
}

impl KernelReport {
    pub fn all_hold(&self) -> bool {
        [
            self.mixed_singularity,
            self.kernel_alternative,
            self.invertible_kernel,
        ]
        .iter()
        .all(|c| c.unwrap_or(true))
    }
}

pub fn kernel_lemma_checks<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
) -> Result<KernelReport, YbeError> {
    sys.require_solution(x)?;
    let (a, b) = (sys.a(), sys.b());
    let a_singular = !a.is_invertible();
    let b_singular = !b.is_invertible();
    let x_singular = !x.is_invertible();
    let mixed = a_singular != b_singular;
    let kernel_alternative = mixed.then(|| {
        let (sing, other) = if a_singular { (a, b) } else { (b, a) };
        let xox = &(x * other) * x;
        annihilates(&xox, &sing.null_space())
    });
    let invertible_kernel = (!a_singular && !b_singular).then(|| {
        let ker = x.null_space();
        annihilates(&(x * a), &ker) && annihilates(&(x * b), &ker)
    });
    Ok(KernelReport {
        a_singular,
        b_singular,
        x_singular,
        mixed_singularity: mixed.then_some(x_singular),
        kernel_alternative,
        invertible_kernel,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenspaceReport {
    /// `BA` when B is invertible, otherwise `AB`.
    pub product: &'static str,
    pub eigenspace_dim: usize,
    pub generalized_dim: usize,
    pub eigenspace_annihilated: bool,
    pub generalized_annihilated: bool,
}

/// `X` kills the λ-eigenspace and the generalized λ-eigenspace of `BA`.
/// When only A is invertible the roles of A and B are exchanged, which the
/// system allows, and `AB` is used.
pub fn eigenspace_annihilation_check<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
    lambda: &T,
) -> Result<EigenspaceReport, YbeError> {
    let (a, b) = (sys.a(), sys.b());
    let (product, m) = if b.is_invertible() {
        ("BA", b * a)
    } else if a.is_invertible() {
        ("AB", a * b)
    } else {
        return Err(YbeError::Precondition(
            "neither A nor B is invertible".into(),
        ));
    };
    if !m.char_poly()?.eval(lambda).is_zero() {
        return Err(YbeError::Precondition(format!(
            "{lambda} is not an eigenvalue of {product}"
        )));
    }
    if (x * x).char_poly()?.eval(lambda).is_zero() {
        return Err(YbeError::Precondition(format!(
            "{lambda} is an eigenvalue of X²"
        )));
    }
    sys.require_solution(x)?;
    let n = sys.n();
    let shifted = &m - &Matrix::identity(n).scale(lambda);
    let eig = shifted.null_space();
    let gen = shifted.pow(n as u32)?.null_space();
    Ok(EigenspaceReport {
        product,
        eigenspace_dim: eig.len(),
        generalized_dim: gen.len(),
        eigenspace_annihilated: annihilates(x, &eig),
        generalized_annihilated: annihilates(x, &gen),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct SpectrumSquareReport<T: Scalar> {
    /// `X²·(BX) = (BX)·BA`, with `BX` invertible.
    pub conjugation_holds: bool,
    pub char_poly_x2: UniPoly<T>,
    pub char_poly_ba: UniPoly<T>,
    pub char_polys_equal: bool,
}

pub fn spectrum_square_check<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
) -> Result<SpectrumSquareReport<T>, YbeError> {
    for (name, m) in [("A", sys.a()), ("B", sys.b()), ("X", x)] {
        if !m.is_invertible() {
            return Err(YbeError::Precondition(format!("{name} is singular")));
        }
    }
    sys.require_solution(x)?;
    let x2 = x * x;
    let bx = sys.b() * x;
    let ba = sys.b() * sys.a();
    let char_poly_x2 = x2.char_poly()?;
    let char_poly_ba = ba.char_poly()?;
    Ok(SpectrumSquareReport {
        conjugation_holds: &x2 * &bx == &bx * &ba,
        char_polys_equal: char_poly_x2 == char_poly_ba,
        char_poly_x2,
        char_poly_ba,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutingReport {
    pub a_invertible: bool,
    pub b_invertible: bool,
    pub ab_commute: bool,
    pub x_commutes: bool,
    pub solves_system: bool,
    pub solves_single_ybe: bool,
    pub hypotheses_hold: bool,
    pub x_is_zero: bool,
    /// `None` unless every hypothesis holds; then X must be zero.
    pub conclusion: Option<bool>,
}

pub fn commuting_solution_check<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
) -> Result<CommutingReport, YbeError> {
    let (a, b) = (sys.a(), sys.b());
    let solves_system = is_solution(sys, x)?;
    let a_invertible = a.is_invertible();
    let b_invertible = b.is_invertible();
    let ab_commute = a * b == b * a;
    let x_commutes = x * a == a * x && x * b == b * x;
    let solves_single = solves_single_ybe(&sys.c(), x);
    let hypotheses_hold =
        a_invertible && b_invertible && ab_commute && x_commutes && solves_system && solves_single;
    let x_is_zero = x.is_zero();
    Ok(CommutingReport {
        a_invertible,
        b_invertible,
        ab_commute,
        x_commutes,
        solves_system,
        solves_single_ybe: solves_single,
        hypotheses_hold,
        x_is_zero,
        conclusion: hypotheses_hold.then_some(x_is_zero),
    })
}
