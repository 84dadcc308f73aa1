use super::Case;
use crate::error::{Error, Result};
use crate::graph::{enumerate_st_paths, Graph};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Row families of the rerouting inequality system. Equalities splitting a
/// realizing path at `u`/`v` appear as two `<=` rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `k - l(bi bj) <= 0`, indices `[i, j]`.
    Tetrasubdiv,
    /// `sum of segments - l(bi bj) <= 0`, indices `[i, j]`.
    UvBreakupLe,
    /// `l(bi bj) - sum of segments <= 0`, indices `[i, j]`.
    UvBreakupGe,
    /// `d - len(P) <= 0`; indices are the branch labels `P` visits.
    ShortestPath,
    /// `len(P) - d - k <= -1`.
    NoLongPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertRow {
    pub family: Family,
    pub indices: Vec<usize>,
    pub coeff_num: i64,
    pub coeff_den: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCertificate {
    pub case: Case,
    pub rows: Vec<CertRow>,
}

impl DualCertificate {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

const CERT_A: &str = include_str!("../../data/cert_a.json");
const CERT_B: &str = include_str!("../../data/cert_b.json");
const CERT_C: &str = include_str!("../../data/cert_c.json");

/// The shipped certificate for a case.
pub fn builtin_certificate(case: Case) -> DualCertificate {
    let text = match case {
        Case::A => CERT_A,
        Case::B => CERT_B,
        Case::C => CERT_C,
    };
    DualCertificate::from_json(text).expect("bundled certificate parses")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemRow {
    pub family: Family,
    pub indices: Vec<usize>,
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

/// `A x <= b` over named variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub case: Case,
    pub variables: Vec<String>,
    pub rows: Vec<SystemRow>,
}

type Segments = Vec<(usize, usize, &'static str)>;
type Breakups = Vec<((usize, usize), Vec<&'static str>)>;

/// Segment edges of the abstract `(u,v)` graph on `b1..b4 = 0..=3, u = 4,
/// v = 5`, the realizing paths they break up, and the variable count.

fn case_layout(case: Case) -> (Segments, Breakups, usize) {
    const U: usize = 4;
    const V: usize = 5;
    match case {
        Case::A => (
            vec![(0, U, "l1u"), (U, V, "luv"), (V, 1, "l2v")],
            vec![((1, 2), vec!["l1u", "luv", "l2v"])],
            11,
        ),
        Case::B => (
            vec![(0, U, "l1u"), (U, 1, "l2u"), (0, V, "l1v"), (V, 2, "l3v")],
            vec![((1, 2), vec!["l1u", "l2u"]), ((1, 3), vec!["l1v", "l3v"])],
            12,
        ),
        Case::C => (
            vec![(0, U, "l1u"), (U, 1, "l2u"), (2, V, "l3v"), (V, 3, "l4v")],
            vec![((1, 2), vec!["l1u", "l2u"]), ((3, 4), vec!["l3v", "l4v"])],
            12,
        ),
    }
}

/// Builds the case's system from scratch: the `(u,v)`-paths are enumerated
/// in the abstract graph rather than copied from a list.
pub fn case_system(case: Case) -> Result<LinearSystem> {
    let (segments, breakups, expected_vars) = case_layout(case);
    let pairs: Vec<(usize, usize)> = (1..=4).flat_map(|i| (i + 1..=4).map(move |j| (i, j))).collect();
    let mut variables = vec!["d".to_string(), "k".to_string()];
    variables.extend(pairs.iter().map(|(i, j)| format!("l{i}{j}")));
    variables.extend(segments.iter().map(|s| s.2.to_string()));
    if variables.len() != expected_vars {
        return Err(Error::Structural(format!("case {case:?}: {} variables, expected {expected_vars}", variables.len())));
    }
    let idx: HashMap<String, usize> = variables.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let nv = variables.len();
    let row = |family, indices: Vec<usize>, terms: &[(&str, i64)], rhs: i64| {
        let mut coeffs = vec![BigInt::zero(); nv];
        for (name, c) in terms {
            coeffs[idx[*name]] += BigInt::from(*c);
        }
        SystemRow { family, indices, coeffs, rhs: BigInt::from(rhs) }
    };
    let mut rows = Vec::new();
    for &(i, j) in &pairs {
        rows.push(row(Family::Tetrasubdiv, vec![i, j], &[("k", 1), (&format!("l{i}{j}"), -1)], 0));
    }
    for ((i, j), parts) in &breakups {
        let whole = format!("l{i}{j}");
        let mut le: Vec<(&str, i64)> = parts.iter().map(|p| (*p, 1)).collect();
        le.push((&whole, -1));
        let ge: Vec<(&str, i64)> = le.iter().map(|&(n, c)| (n, -c)).collect();
        rows.push(row(Family::UvBreakupLe, vec![*i, *j], &le, 0));
        rows.push(row(Family::UvBreakupGe, vec![*i, *j], &ge, 0));
    }

    // abstract graph: K4 minus the broken edges, plus the segments
    let mut name_of: HashMap<(usize, usize), String> = HashMap::new();
    for &(i, j) in &pairs {
        if !breakups.iter().any(|(e, _)| *e == (i, j)) {
            name_of.insert((i - 1, j - 1), format!("l{i}{j}"));
        }
    }
    for &(a, b, n) in &segments {
        name_of.insert((a.min(b), a.max(b)), n.to_string());
    }
    let g = Graph::undirected(6, name_of.keys().copied()).expect("abstract graph is simple");
    for p in enumerate_st_paths(&g, 4, 5, 64)? {
        let vs = p.vertices();
        let labels: Vec<usize> = vs[1..vs.len() - 1].iter().map(|&x| x + 1).collect();
        let segs: Vec<&str> = vs.windows(2).map(|w| name_of[&(w[0].min(w[1]), w[0].max(w[1]))].as_str()).collect();
        let mut short: Vec<(&str, i64)> = segs.iter().map(|s| (*s, -1)).collect();
        short.push(("d", 1));
        let mut long: Vec<(&str, i64)> = segs.iter().map(|s| (*s, 1)).collect();
        long.extend([("d", -1), ("k", -1)]);
        rows.push(row(Family::ShortestPath, labels.clone(), &short, 0));
        rows.push(row(Family::NoLongPath, labels, &long, -1));
    }
    Ok(LinearSystem { case, variables, rows })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub case: Case,
    /// `b^T y`.
    pub objective: BigRational,
    /// Nonzero entries of `A^T y`, by variable name.
    pub residual: Vec<(String, BigRational)>,
    pub nonnegative: bool,
    pub no_long_path_positive: bool,
}

impl VerificationReport {
    /// `y >= 0`, `A^T y = 0`, `b^T y < 0`, with weight on a no-long-path row.
    pub fn verified(&self) -> bool {
        self.residual.is_empty() && self.nonnegative && self.objective.is_negative() && self.no_long_path_positive
    }
}

/// Checks the certificate in exact arithmetic against the re-derived system.
pub fn verify_certificate(cert: &DualCertificate) -> Result<VerificationReport> {
    let sys = case_system(cert.case)?;
    let nv = sys.variables.len();
    let mut total = vec![BigRational::zero(); nv];
    let mut objective = BigRational::zero();
    let mut nonnegative = true;
    let mut no_long_path_positive = false;
    for r in &cert.rows {
        let row = sys
            .rows
            .iter()
            .find(|s| s.family == r.family && s.indices == r.indices)
            .ok_or_else(|| {
                Error::Structural(format!("row {:?} {:?} is not part of the case {:?} system", r.family, r.indices, cert.case))
            })?;
        if r.coeff_den == 0 {
            return Err(Error::Structural("zero denominator in certificate".into()));
        }
        let y = BigRational::new(BigInt::from(r.coeff_num), BigInt::from(r.coeff_den));
        nonnegative &= !y.is_negative();
        no_long_path_positive |= r.family == Family::NoLongPath && y.is_positive();
        for (acc, a) in total.iter_mut().zip(&row.coeffs) {
            *acc += &y * BigRational::from_integer(a.clone());
        }
        objective += &y * BigRational::from_integer(row.rhs.clone());
    }
    let residual = sys.variables.iter().cloned().zip(total).filter(|(_, v)| !v.is_zero()).collect();
    Ok(VerificationReport { case: cert.case, objective, residual, nonnegative, no_long_path_positive })
}

/// Rows allowed during elimination before giving up.
const FM_ROW_LIMIT: usize = 500_000;

type Ineq = (Vec<BigInt>, BigInt);

fn normalize((coeffs, rhs): Ineq) -> Ineq {
    let g = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return (coeffs, rhs);
    }
    // no rounding of b: the system is over the rationals
    if (&rhs % &g).is_zero() {
        (coeffs.iter().map(|c| c / &g).collect(), rhs / &g)
    } else {
        (coeffs, rhs)
    }
}

/// Decides feasibility of `A x <= b` over the rationals by Fourier-Motzkin
/// elimination.
pub fn fourier_motzkin_feasible(sys: &LinearSystem) -> Result<bool> {
    let nv = sys.variables.len();
    let mut rows: Vec<Ineq> = sys.rows.iter().map(|r| normalize((r.coeffs.clone(), r.rhs.clone()))).collect();
    let mut alive: Vec<usize> = (0..nv).collect();
    while !alive.is_empty() {
        if rows.iter().any(|(a, b)| a.iter().all(Zero::is_zero) && b.is_negative()) {
            return Ok(false);
        }
        // eliminate the variable producing the fewest combinations
        let (pos_of, var) = alive
            .iter()
            .enumerate()
            .map(|(p, &v)| {
                let pos = rows.iter().filter(|r| r.0[v].is_positive()).count();
                let neg = rows.iter().filter(|r| r.0[v].is_negative()).count();
                (pos * neg, p, v)
            })
            .min()
            .map(|(_, p, v)| (p, v))
            .unwrap();
        alive.remove(pos_of);
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            match r.0[var].sign() {
                num_bigint::Sign::Plus => pos.push(r),
                num_bigint::Sign::Minus => neg.push(r),
                num_bigint::Sign::NoSign => next.push(r),
            }
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                let (cp, cn) = (pa[var].clone(), -na[var].clone());
                let coeffs: Vec<BigInt> = pa.iter().zip(na).map(|(x, y)| x * &cn + y * &cp).collect();
                let rhs = pb * &cn + nb * &cp;
                next.push(normalize((coeffs, rhs)));
                if next.len() > FM_ROW_LIMIT {
                    return Err(Error::Resource("Fourier-Motzkin elimination exceeded its row limit".into()));
                }
            }
        }
        // keep the tightest bound per coefficient vector
        let mut best: HashMap<Vec<BigInt>, BigInt> = HashMap::new();
        for (a, b) in next {
            best.entry(a).and_modify(|old| if b < *old { *old = b.clone() }).or_insert(b);
        }
        rows = best.into_iter().collect();
        rows.sort();
    }
    Ok(!rows.iter().any(|(_, b)| b.is_negative()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn variable_counts() {
        assert_eq!(case_system(Case::A).unwrap().variables.len(), 11);
        assert_eq!(case_system(Case::B).unwrap().variables.len(), 12);
        assert_eq!(case_system(Case::C).unwrap().variables.len(), 12);
    }

    #[test]
    fn path_row_counts_match_the_census() {
        for (case, paths) in [(Case::A, 5), (Case::B, 7), (Case::C, 8)] {
            let sys = case_system(case).unwrap();
            let count = sys.rows.iter().filter(|r| r.family == Family::NoLongPath).count();
            assert_eq!(count, paths, "{case:?}");
        }
    }

    #[test]
    fn builtin_certificates_verify() {
        for case in [Case::A, Case::B, Case::C] {
            let report = verify_certificate(&builtin_certificate(case)).unwrap();
            assert!(report.verified(), "{case:?}: {report:?}");
            assert_eq!(report.objective.to_integer().to_i64(), Some(-2));
        }
    }

    #[test]
    fn perturbed_certificate_names_a_column() {
        let mut cert = builtin_certificate(Case::A);
        cert.rows[3].coeff_num = 2;
        let report = verify_certificate(&cert).unwrap();
        assert!(!report.verified());
        assert!(report.residual.iter().any(|(v, _)| v == "d"));
    }

    #[test]
    fn foreign_rows_are_structural_errors() {
        let mut cert = builtin_certificate(Case::C);
        cert.rows[1].indices = vec![1, 4, 3, 2];
        assert!(matches!(verify_certificate(&cert), Err(Error::Structural(_))));
    }

    #[test]
    fn json_round_trip() {
        let cert = builtin_certificate(Case::B);
        assert_eq!(DualCertificate::from_json(&cert.to_json()).unwrap(), cert);
    }

    #[test]
    fn primal_systems_are_infeasible() {
        for case in [Case::A, Case::B, Case::C] {
            assert!(!fourier_motzkin_feasible(&case_system(case).unwrap()).unwrap(), "{case:?}");
        }
    }

    #[test]
    fn relaxed_systems_are_feasible() {
        // dropping the no-long-path rows leaves a satisfiable system
        for case in [Case::A, Case::B, Case::C] {
            let mut sys = case_system(case).unwrap();
            sys.rows.retain(|r| r.family != Family::NoLongPath);
            assert!(fourier_motzkin_feasible(&sys).unwrap());
        }
    }
}
