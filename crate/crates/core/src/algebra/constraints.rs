//! Poisson and Dirac brackets, the reduced model's constraints and the
//! angular-momentum identities.

use super::phase::PhasePoly;
use super::ratfun::ParamField;
use super::symbolic::SymbolicConfig;
use crate::error::{Error, Result};
use crate::params::FieldKind;

pub type Matrix = Vec<Vec<ParamField>>;

/// `sum_i (df/dx_i dg/dp_i - df/dp_i dg/dx_i)`.
pub fn poisson_bracket(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    let mut out = PhasePoly::zero();
    for i in 1..=2 {
        out = out
            .add(&f.dx(i).mul(&g.dp(i)))
            .sub(&f.dp(i).mul(&g.dx(i)));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    SecondClass,
    NotSecondClass,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSystem {
    pub constraints: Vec<PhasePoly>,
    pub bracket_matrix: Matrix,
    pub determinant: ParamField,
    pub classification: Classification,
    pub inverse: Option<Matrix>,
}

impl ConstraintSystem {
    /// Classifies a constraint list by its bracket matrix, which must be
    /// constant on phase space.
    pub fn from_constraints(constraints: Vec<PhasePoly>) -> Result<Self> {
        let n = constraints.len();
        let mut bracket_matrix = vec![vec![ParamField::zero(); n]; n];
        for a in 0..n {
            for b in (a + 1)..n {
                let pb = poisson_bracket(&constraints[a], &constraints[b]);
                let v = pb.as_constant().ok_or_else(|| {
                    Error::Algebra(format!("constraint bracket {{phi_{a}, phi_{b}}} = {pb} is not constant"))
                })?;
                bracket_matrix[b][a] = v.neg();
                bracket_matrix[a][b] = v;
            }
        }
        let determinant = bareiss_determinant(&bracket_matrix);
        let (classification, inverse) = if n > 0 && determinant.is_zero() {
            (Classification::NotSecondClass, None)
        } else {
            (Classification::SecondClass, Some(gauss_jordan_inverse(&bracket_matrix)?))
        };
        Ok(ConstraintSystem {
            constraints,
            bracket_matrix,
            determinant,
            classification,
            inverse,
        })
    }
}

/// Fraction-free elimination; every intermediate division is exact.
pub fn bareiss_determinant(m: &Matrix) -> ParamField {
    let n = m.len();
    if n == 0 {
        return ParamField::one();
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = ParamField::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return ParamField::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div(&prev).expect("previous pivot is non-zero");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

pub fn gauss_jordan_inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv: Matrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ParamField::one() } else { ParamField::zero() }).collect())
        .collect();
    for k in 0..n {
        let r = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::NotSecondClass)?;
        a.swap(k, r);
        inv.swap(k, r);
        let p = a[k][k].inv()?;
        for j in 0..n {
            a[k][j] = a[k][j].mul(&p);
            inv[k][j] = inv[k][j].mul(&p);
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in 0..n {
                    a[i][j] = a[i][j].sub(&f.mul(&a[k][j]));
                    inv[i][j] = inv[i][j].sub(&f.mul(&inv[k][j]));
                }
            }
        }
    }
    Ok(inv)
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let p = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| {
                    (0..b.len()).fold(ParamField::zero(), |acc, k| acc.add(&a[i][k].mul(&b[k][j])))
                })
                .collect()
        })
        .collect()
}

/// `epsilon_ij` with `epsilon_12 = +1`.
pub fn levi_civita(i: usize, j: usize) -> i64 {
    match (i, j) {
        (1, 2) => 1,
        (2, 1) => -1,
        _ => 0,
    }
}

/// Radial profile `f = line / (2 pi) u + volume / 2` multiplying `x_j`
/// in both the source field and the effective potential.
fn radial_profile(line: &ParamField, volume: &ParamField) -> PhasePoly {
    let two_pi = ParamField::int(2).mul(&ParamField::sym("pi"));
    PhasePoly::u()
        .scale(&line.div(&two_pi).expect("pi != 0"))
        .add(&PhasePoly::constant(volume.div(&ParamField::int(2)).unwrap()))
}

/// Source field `B_i` (or `E_i`) as phase-space polynomials.
pub fn source_field(cfg: &SymbolicConfig) -> [PhasePoly; 2] {
    let (lambda, rho) = match cfg.kind {
        FieldKind::MagneticHMW => (cfg.lambda.clone(), cfg.rho.clone()),
        FieldKind::ElectricAC => {
            let e = cfg.eps0();
            (cfg.lambda.div(&e).unwrap(), cfg.rho.div(&e).unwrap())
        }
    };
    let f = radial_profile(&lambda, &rho);
    [PhasePoly::x(1).mul(&f), PhasePoly::x(2).mul(&f)]
}

/// Effective gauge potential `a_i = eps_ij x_j f`.
pub fn gauge_potential(cfg: &SymbolicConfig) -> [PhasePoly; 2] {
    let f = radial_profile(&cfg.line_coupling(), &cfg.volume_coupling());
    [PhasePoly::x(2).mul(&f), PhasePoly::x(1).mul(&f).neg()]
}

/// `phi_i = p_i - a_i`.
pub fn build_reduced_constraints(cfg: &SymbolicConfig) -> Result<ConstraintSystem> {
    let [a1, a2] = gauge_potential(cfg);
    ConstraintSystem::from_constraints(vec![PhasePoly::p(1).sub(&a1), PhasePoly::p(2).sub(&a2)])
}

/// `{f, g}_D = {f, g} - {f, phi_a} C^-1_ab {phi_b, g}`.
pub fn dirac_bracket(f: &PhasePoly, g: &PhasePoly, cs: &ConstraintSystem) -> Result<PhasePoly> {
    let inv = match (&cs.classification, &cs.inverse) {
        (Classification::SecondClass, Some(inv)) => inv,
        _ => return Err(Error::NotSecondClass),
    };
    let fa: Vec<PhasePoly> = cs.constraints.iter().map(|phi| poisson_bracket(f, phi)).collect();
    let bg: Vec<PhasePoly> = cs.constraints.iter().map(|phi| poisson_bracket(phi, g)).collect();
    let mut out = poisson_bracket(f, g);
    for (a, fa) in fa.iter().enumerate() {
        if fa.is_zero() {
            continue;
        }
        for (b, bg) in bg.iter().enumerate() {
            if inv[a][b].is_zero() || bg.is_zero() {
                continue;
            }
            out = out.sub(&fa.mul(bg).scale(&inv[a][b]));
        }
    }
    Ok(out)
}

/// Canonical angular momentum `J_c = eps_ij x_i p_j`.
pub fn canonical_angular_momentum() -> PhasePoly {
    PhasePoly::x(1).mul(&PhasePoly::p(2)).sub(&PhasePoly::x(2).mul(&PhasePoly::p(1)))
}

/// `J_c` with the momenta eliminated through the constraints `p_i = a_i`.
pub fn reduced_angular_momentum(cs: &ConstraintSystem) -> Result<PhasePoly> {
    if cs.constraints.len() != 2 {
        return Err(Error::Algebra("expected the two momentum constraints".into()));
    }
    // phi_i = p_i - a_i, so a_i = p_i - phi_i.
    let a1 = PhasePoly::p(1).sub(&cs.constraints[0]);
    let a2 = PhasePoly::p(2).sub(&cs.constraints[1]);
    if a1.dp(1) != PhasePoly::zero() || a2.dp(2) != PhasePoly::zero() {
        return Err(Error::Algebra("constraints are not of the form p_i - a_i(x)".into()));
    }
    Ok(canonical_angular_momentum().substitute_momenta(&a1, &a2))
}

/// The closed form `-(d / 2c^2) (rho r^2 + lambda / pi)`, built directly
/// (with `-mu / eps0` in place of `d` for the electric family).
pub fn reduced_angular_momentum_expected(cfg: &SymbolicConfig) -> PhasePoly {
    let r2 = PhasePoly::x(1).pow(2).add(&PhasePoly::x(2).pow(2));
    let k = cfg.family_factor().div(&ParamField::int(2)).unwrap().neg();
    let lam = cfg.lambda.div(&ParamField::sym("pi")).unwrap();
    r2.scale(&cfg.rho).add(&PhasePoly::constant(lam)).scale(&k)
}

/// Trapped Hamiltonian `(p - a)^2 / 2m + K r^2 / 2`.
pub fn trapped_hamiltonian(cfg: &SymbolicConfig) -> PhasePoly {
    let [a1, a2] = gauge_potential(cfg);
    let k1 = PhasePoly::p(1).sub(&a1);
    let k2 = PhasePoly::p(2).sub(&a2);
    let two_m = ParamField::int(2).mul(&cfg.m);
    let kin = k1.pow(2).add(&k2.pow(2)).scale(&two_m.inv().expect("m != 0"));
    let r2 = PhasePoly::x(1).pow(2).add(&PhasePoly::x(2).pow(2));
    kin.add(&r2.scale(&cfg.k_trap.div(&ParamField::int(2)).unwrap()))
}

/// Shift terms `J_c - J_k` for the two cyon realizations.
#[derive(Debug, Clone, PartialEq)]
pub struct CyonIdentities {
    /// `-q Phi / (2 pi c)` for a charge around a thin solenoid.
    pub charged_shift: ParamField,
    /// `-lambda d / (2 pi c^2)` for a dipole around a charged filament.
    pub atom_shift: ParamField,
    /// Both Hamiltonians commute with `J_c`.
    pub canonical_conserved: bool,
}

/// Charge `q` around a solenoid of flux `Phi`, vector potential
/// `A_i = -(Phi / 2 pi) eps_ij x_j u`, momenta `p = m v - (q/c) A`.
pub fn charged_model() -> (PhasePoly, [PhasePoly; 2]) {
    let q = ParamField::sym("q");
    let c = ParamField::sym("c");
    let phi = ParamField::sym("Phi");
    let two_pi = ParamField::int(2).mul(&ParamField::sym("pi"));
    let k = phi.div(&two_pi).unwrap().neg();
    let a = [
        PhasePoly::x(2).mul(&PhasePoly::u()).scale(&k),
        PhasePoly::x(1).mul(&PhasePoly::u()).scale(&k.neg()),
    ];
    let qc = q.div(&c).unwrap();
    // m v_i = p_i + (q/c) A_i
    let mv = [
        PhasePoly::p(1).add(&a[0].scale(&qc)),
        PhasePoly::p(2).add(&a[1].scale(&qc)),
    ];
    let h = mv[0]
        .pow(2)
        .add(&mv[1].pow(2))
        .scale(&ParamField::int(2).mul(&ParamField::sym("m")).inv().unwrap());
    (h, mv)
}

/// `eps_ij x_i (m v_j)`.
fn kinetic_angular_momentum(mv: &[PhasePoly; 2]) -> PhasePoly {
    PhasePoly::x(1).mul(&mv[1]).sub(&PhasePoly::x(2).mul(&mv[0]))
}

pub fn charged_model_identities() -> Result<CyonIdentities> {
    let jc = canonical_angular_momentum();
    let (h_charged, mv) = charged_model();
    let charged_shift = jc
        .sub(&kinetic_angular_momentum(&mv))
        .as_constant()
        .ok_or_else(|| Error::Algebra("charged-model shift is not constant".into()))?;

    // Atom around a bare filament: a_i = eps_ij x_j (d/c^2) lambda u / (2 pi).
    let atom = SymbolicConfig {
        rho: ParamField::zero(),
        ..SymbolicConfig::hmw()
    };
    let [a1, a2] = gauge_potential(&atom);
    let mv_atom = [PhasePoly::p(1).sub(&a1), PhasePoly::p(2).sub(&a2)];
    let atom_shift = jc
        .sub(&kinetic_angular_momentum(&mv_atom))
        .as_constant()
        .ok_or_else(|| Error::Algebra("atom-model shift is not constant".into()))?;

    let h_atom = mv_atom[0]
        .pow(2)
        .add(&mv_atom[1].pow(2))
        .scale(&ParamField::int(2).mul(&atom.m).inv().unwrap());
    let canonical_conserved = poisson_bracket(&jc, &h_charged).is_zero()
        && poisson_bracket(&jc, &h_atom).is_zero()
        && poisson_bracket(&jc, &trapped_hamiltonian(&SymbolicConfig::hmw())).is_zero();

    Ok(CyonIdentities {
        charged_shift,
        atom_shift,
        canonical_conserved,
    })
}

/// Commutator text `[f, g] = i*hbar*(...)` from the classical bracket.
pub fn quantized_commutator(bracket: &PhasePoly) -> String {
    let scaled = bracket.scale(&ParamField::sym("hbar"));
    if scaled.is_zero() {
        "0".to_string()
    } else {
        format!("i*({scaled})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_param_field;

    #[test]
    fn canonical_brackets() {
        let one = PhasePoly::one();
        assert_eq!(poisson_bracket(&PhasePoly::x(1), &PhasePoly::p(1)), one);
        assert!(poisson_bracket(&PhasePoly::x(1), &PhasePoly::x(2)).is_zero());
        let j = canonical_angular_momentum();
        // {J, x_i} = eps_ij x_j
        assert_eq!(poisson_bracket(&j, &PhasePoly::x(1)), PhasePoly::x(2));
        assert_eq!(poisson_bracket(&j, &PhasePoly::x(2)), PhasePoly::x(1).neg());
        assert_eq!(poisson_bracket(&j, &PhasePoly::p(1)), PhasePoly::p(2));
        assert_eq!(poisson_bracket(&j, &PhasePoly::p(2)), PhasePoly::p(1).neg());
    }

    #[test]
    fn constraint_matrix_is_minus_curl() {
        let cs = build_reduced_constraints(&SymbolicConfig::hmw()).unwrap();
        let k = parse_param_field("d*rho_m/c^2").unwrap();
        assert_eq!(cs.bracket_matrix[0][1], k.neg());
        assert_eq!(cs.bracket_matrix[1][0], k);
        assert_eq!(cs.determinant, k.mul(&k));
        assert_eq!(cs.classification, Classification::SecondClass);
        let inv = cs.inverse.as_ref().unwrap();
        let id = mat_mul(inv, &cs.bracket_matrix);
        assert!(id[0][0].is_one() && id[1][1].is_one());
        assert!(id[0][1].is_zero() && id[1][0].is_zero());
    }

    #[test]
    fn vanishing_volume_source_is_not_second_class() {
        let cfg = SymbolicConfig {
            rho: ParamField::zero(),
            ..SymbolicConfig::hmw()
        };
        let cs = build_reduced_constraints(&cfg).unwrap();
        assert_eq!(cs.classification, Classification::NotSecondClass);
        assert!(cs.inverse.is_none());
        let err = dirac_bracket(&PhasePoly::x(1), &PhasePoly::x(2), &cs).unwrap_err();
        assert!(matches!(err, Error::NotSecondClass));
    }

    #[test]
    fn dirac_bracket_of_coordinates() {
        let cs = build_reduced_constraints(&SymbolicConfig::hmw()).unwrap();
        let b = dirac_bracket(&PhasePoly::x(1), &PhasePoly::x(2), &cs).unwrap();
        assert_eq!(b.to_string(), "c^2/(d*rho_m)");
        assert_eq!(quantized_commutator(&b), "i*(c^2*hbar/(d*rho_m))");
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let s = |n: &str| ParamField::sym(n);
        let m = vec![
            vec![s("m"), s("d"), ParamField::int(2)],
            vec![s("c"), ParamField::zero(), s("K")],
            vec![ParamField::int(1), s("q"), s("m")],
        ];
        let cof = s("m")
            .mul(&ParamField::zero().mul(&s("m")).sub(&s("K").mul(&s("q"))))
            .sub(&s("d").mul(&s("c").mul(&s("m")).sub(&s("K"))))
            .add(&ParamField::int(2).mul(&s("c").mul(&s("q"))));
        assert_eq!(bareiss_determinant(&m), cof);
        let inv = gauss_jordan_inverse(&m).unwrap();
        let id = mat_mul(&m, &inv);
        for (i, row) in id.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(v.is_one(), i == j);
                assert_eq!(v.is_zero(), i != j);
            }
        }
    }
}
