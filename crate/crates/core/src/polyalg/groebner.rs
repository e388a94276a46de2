use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{One, Zero};

use crate::linalg::Rational;

use super::{Monomial, MultiPoly, PolyError, Term, VarTable};

/// Reduced lex Gröbner basis: monic generators sorted by leading monomial,
/// highest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    vars: VarTable,
    generators: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        normal_form(f, &self.generators).is_zero()
    }

    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        normal_form(f, &self.generators)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.to_text(&self.vars))
            .collect()
    }
}

fn check_width(vars: &VarTable, polys: &[MultiPoly]) -> Result<(), PolyError> {
    for p in polys {
        if p.nvars() != vars.len() {
            return Err(PolyError::VarTableMismatch {
                left: vars.len(),
                right: p.nvars(),
            });
        }
    }
    Ok(())
}

/// Full multivariate division remainder: no term of the result is
/// divisible by a leading monomial of `g`.
pub fn normal_form(f: &MultiPoly, g: &[MultiPoly]) -> MultiPoly {
    let divisors: Vec<&MultiPoly> = g.iter().filter(|p| !p.is_zero()).collect();
    for d in &divisors {
        assert_eq!(d.nvars(), f.nvars(), "variable table width");
    }
    let mut work: BTreeMap<Monomial, Rational> = f
        .terms()
        .iter()
        .map(|t| (t.mono.clone(), t.coeff.clone()))
        .collect();
    let mut rem = Vec::new();
    while let Some((m, c)) = work.pop_last() {
        let lead = |d: &&&MultiPoly| d.leading_monomial().is_some_and(|lm| lm.divides(&m));
        let Some(d) = divisors.iter().find(lead) else {
            rem.push(Term { coeff: c, mono: m });
            continue;
        };
        let lt = d.leading_term().expect("nonzero divisor");
        let q = &c / &lt.coeff;
        let shift = lt.mono.quotient_of(&m);
        for t in &d.terms()[1..] {
            let mono = t.mono.mul(&shift);
            let e = work.entry(mono.clone()).or_insert_with(Rational::zero);
            *e -= &q * &t.coeff;
            if e.is_zero() {
                work.remove(&mono);
            }
        }
    }
    MultiPoly::from_terms(f.nvars(), rem)
}

/// `(L/lt(f))·f − (L/lt(g))·g` with `L = lcm(lm(f), lm(g))`.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly, PolyError> {
    let (Some(tf), Some(tg)) = (f.leading_term(), g.leading_term()) else {
        return Err(PolyError::ZeroInput);
    };
    if f.nvars() != g.nvars() {
        return Err(PolyError::VarTableMismatch {
            left: f.nvars(),
            right: g.nvars(),
        });
    }
    let l = tf.mono.lcm(&tg.mono);
    let a = f.mul_term(&tf.coeff.recip(), &tf.mono.quotient_of(&l));
    let b = g.mul_term(&tg.coeff.recip(), &tg.mono.quotient_of(&l));
    Ok(a.sub(&b))
}

/// Buchberger's algorithm with the product and chain criteria. Pairs are
/// processed smallest lcm first, ties broken by index, so the output is
/// deterministic.
pub fn buchberger(vars: &VarTable, input: &[MultiPoly]) -> Result<GroebnerBasis, PolyError> {
    check_width(vars, input)?;
    let n = vars.len();
    let unit = || GroebnerBasis {
        vars: vars.clone(),
        generators: vec![MultiPoly::constant(n, Rational::one())],
    };

    let mut basis: Vec<MultiPoly> = Vec::new();
    let mut queue: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |h: MultiPoly,
               basis: &mut Vec<MultiPoly>,
               queue: &mut BTreeSet<(Monomial, usize, usize)>,
               pending: &mut HashSet<(usize, usize)>| {
        let h = h.monic();
        let lm = h.leading_monomial().expect("nonzero").clone();
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let l = g.leading_monomial().expect("nonzero").lcm(&lm);
            queue.insert((l, i, j));
            pending.insert((i, j));
        }
        basis.push(h);
    };

    for f in input {
        let h = normal_form(f, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit());
        }
        add(h, &mut basis, &mut queue, &mut pending);
    }

    while let Some((l, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        let (lmi, lmj) = (
            basis[i].leading_monomial().expect("nonzero"),
            basis[j].leading_monomial().expect("nonzero"),
        );
        if lmi.is_coprime(lmj) {
            continue;
        }
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().expect("nonzero").divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j])?;
        let h = normal_form(&s, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit());
        }
        add(h, &mut basis, &mut queue, &mut pending);
    }

    Ok(GroebnerBasis {
        vars: vars.clone(),
        generators: reduce_basis(basis),
    })
}

/// Drop generators with redundant leading monomials, then interreduce.
fn reduce_basis(basis: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let lms: Vec<&Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial().expect("nonzero"))
        .collect();
    let minimal: Vec<MultiPoly> = basis
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !lms.iter().enumerate().any(|(k, lk)| {
                // equal leading monomials: keep the earlier one
                k != *i && lk.divides(lms[*i]) && (lk != &lms[*i] || k < *i)
            })
        })
        .map(|(_, g)| g.clone())
        .collect();
    let mut out: Vec<MultiPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<MultiPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, g)| g.clone())
                .collect();
            normal_form(&minimal[i], &others).monic()
        })
        .collect();
    out.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    out
}

/// Generators of `G` that only involve the last `keep` variables. For a lex
/// basis these form a Gröbner basis of the elimination ideal.
pub fn eliminate(g: &GroebnerBasis, keep: usize) -> Result<GroebnerBasis, PolyError> {
    let n = g.vars.len();
    if keep > n {
        return Err(PolyError::KeepOutOfRange { keep, nvars: n });
    }
    Ok(GroebnerBasis {
        vars: g.vars.clone(),
        generators: g
            .generators
            .iter()
            .filter(|p| p.only_uses_suffix(n - keep))
            .cloned()
            .collect(),
    })
}

/// True when `F` and `G` generate the same ideal.
pub fn ideal_equal(vars: &VarTable, f: &[MultiPoly], g: &[MultiPoly]) -> Result<bool, PolyError> {
    let gf = buchberger(vars, f)?;
    let gg = buchberger(vars, g)?;
    Ok(g.iter().all(|p| gf.contains(p)) && f.iter().all(|p| gg.contains(p)))
}
