//! Terminality of a measuring within a dimension bound, by exhaustive
//! enumeration over F₂.

use rayon::prelude::*;

use super::algebra::{
    audit_algebra, audit_coalgebra, decode_f2, decode_vec_f2, Algebra, Coalgebra, Tensor3,
};
use super::field::{Field, F2};
use super::ops::{check_coalgebra_map, verify_measuring, Measuring};
use crate::cert::Certificate;
use crate::error::{Error, Result};

/// How many failures a report lists in full.
pub const LISTED_FAILURES: usize = 16;

/// A measuring `σ: C⊗A → B` that does not factor uniquely through the
/// candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationFailure {
    pub coalgebra: Coalgebra<F2>,
    pub sigma: Tensor3<F2>,
    /// Number of coalgebra maps `g: C → P` with `ρ∘(g⊗1) = σ`.
    pub factorizations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalityReport {
    pub search_dim: usize,
    /// Upper bound on the candidates examined.
    pub bound: u128,
    /// Whether the candidate itself is a measuring.
    pub candidate: Certificate,
    pub coalgebras: usize,
    pub measurings: usize,
    pub failure_count: usize,
    /// The first [`LISTED_FAILURES`] failures, in enumeration order.
    pub failures: Vec<FactorizationFailure>,
    pub pass: bool,
}

fn pow2(bits: usize) -> u128 {
    if bits >= 127 {
        u128::MAX
    } else {
        1u128 << bits
    }
}

/// `Σ_{d ≤ search_dim} 2^{d³+d} · 2^{d·dim A·dim B} · 2^{d·dim P}`.
pub fn search_bound(search_dim: usize, a: usize, b: usize, p: usize) -> u128 {
    (1..=search_dim).fold(0u128, |acc, d| {
        let bits = d
            .saturating_pow(3)
            .saturating_add(d)
            .saturating_add(d.saturating_mul(a).saturating_mul(b))
            .saturating_add(d.saturating_mul(p));
        acc.saturating_add(pow2(bits))
    })
}

/// Every coalgebra structure on `F₂^d`, by structure-constant table.
pub fn enumerate_coalgebras_f2(d: usize) -> Vec<Coalgebra<F2>> {
    let bits = d * d * d + d;
    assert!(
        bits < 64,
        "coalgebra enumeration over F2 is limited to dimension 3"
    );
    (0..1u64 << bits)
        .into_par_iter()
        .filter_map(|code| {
            let comult = decode_f2(code, d, d, d);
            let counit = decode_vec_f2(code >> (d * d * d), d);
            match audit_coalgebra(&comult, &counit) {
                Ok(Certificate::Pass) => Some(Coalgebra::new(comult, counit).expect("audited")),
                _ => None,
            }
        })
        .collect()
}

/// Every algebra structure on `F₂^d`, by structure-constant table.
pub fn enumerate_algebras_f2(d: usize) -> Vec<Algebra<F2>> {
    let bits = d * d * d + d;
    assert!(
        bits < 64,
        "algebra enumeration over F2 is limited to dimension 3"
    );
    (0..1u64 << bits)
        .into_par_iter()
        .filter_map(|code| {
            let mult = decode_f2(code, d, d, d);
            let unit = decode_vec_f2(code >> (d * d * d), d);
            match audit_algebra(&mult, &unit) {
                Ok(Certificate::Pass) => Some(Algebra::new(mult, unit).expect("audited")),
                _ => None,
            }
        })
        .collect()
}

/// Every linear map `F₂^m → F₂^n` as a matrix `g[i][j]`.
fn matrices(m: usize, n: usize) -> impl Iterator<Item = Vec<Vec<F2>>> {
    (0..1u64 << (m * n)).map(move |code| decode_f2::<F2>(code, 1, m, n).remove(0))
}

/// For every coalgebra `C` with `dim C ≤ search_dim` and every measuring
/// `σ: C⊗A → B`, counts the coalgebra maps `g: C → P` with `ρ∘(g⊗1) = σ`.
/// The candidate `ρ: P⊗A → B` passes when every count is exactly one.
pub fn certify_universal_measuring(
    candidate: &Measuring<F2>,
    search_dim: usize,
    cap: u128,
) -> Result<UniversalityReport> {
    let (p, a, b) = (
        candidate.coalgebra(),
        candidate.source(),
        candidate.target(),
    );
    let bound = search_bound(search_dim, a.dim(), b.dim(), p.dim());
    if bound > cap || search_dim > 3 {
        return Err(Error::SearchSpaceTooLarge { bound, cap });
    }
    let rho = verify_measuring(candidate);
    let coalgebras: Vec<Coalgebra<F2>> =
        (1..=search_dim).flat_map(enumerate_coalgebras_f2).collect();
    let per_coalgebra: Vec<(usize, Vec<FactorizationFailure>)> = coalgebras
        .par_iter()
        .map(|c| {
            let maps: Vec<Vec<Vec<F2>>> = matrices(c.dim(), p.dim())
                .filter(|g| check_coalgebra_map(c, p, g).passed())
                .collect();
            let images: Vec<Tensor3<F2>> = maps
                .iter()
                .map(|g| {
                    candidate
                        .precompose(c, g)
                        .expect("shapes agree")
                        .sigma()
                        .clone()
                })
                .collect();
            let mut measurings = 0;
            let mut failures = Vec::new();
            for code in 0..1u64 << (c.dim() * a.dim() * b.dim()) {
                let sigma = decode_f2::<F2>(code, c.dim(), a.dim(), b.dim());
                let m =
                    Measuring::new(c.clone(), a.clone(), b.clone(), sigma).expect("shapes agree");
                if !verify_measuring(&m).passed() {
                    continue;
                }
                measurings += 1;
                let factorizations = images.iter().filter(|s| *s == m.sigma()).count();
                if factorizations != 1 {
                    failures.push(FactorizationFailure {
                        coalgebra: c.clone(),
                        sigma: m.sigma().clone(),
                        factorizations,
                    });
                }
            }
            (measurings, failures)
        })
        .collect();
    let measurings = per_coalgebra.iter().map(|(n, _)| n).sum();
    let failure_count = per_coalgebra.iter().map(|(_, f)| f.len()).sum();
    let failures: Vec<FactorizationFailure> = per_coalgebra
        .into_iter()
        .flat_map(|(_, f)| f)
        .take(LISTED_FAILURES)
        .collect();
    let pass = rho.passed() && failure_count == 0;
    Ok(UniversalityReport {
        search_dim,
        bound,
        candidate: rho,
        coalgebras: coalgebras.len(),
        measurings,
        failure_count,
        failures,
        pass,
    })
}

/// `P ⊕ P` with `ρ` on both summands: every measuring that factors at all
/// factors at least twice.
pub fn doubled_candidate<F: Field>(candidate: &Measuring<F>) -> Result<Measuring<F>> {
    let p = candidate.coalgebra();
    let sigma = candidate
        .sigma()
        .iter()
        .chain(candidate.sigma())
        .cloned()
        .collect();
    Measuring::new(
        p.direct_sum(p),
        candidate.source().clone(),
        candidate.target().clone(),
        sigma,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ops::evaluation_measuring;

    #[test]
    fn one_dimensional_coalgebras() {
        // only Δe = e⊗e, εe = 1
        assert_eq!(enumerate_coalgebras_f2(1), vec![Coalgebra::ground()]);
        assert_eq!(enumerate_algebras_f2(1), vec![Algebra::ground()]);
    }

    #[test]
    fn ground_field_is_universal_for_k_to_k() {
        let k = Algebra::<F2>::ground();
        let rho = evaluation_measuring(&k, &k).unwrap();
        let report = certify_universal_measuring(&rho, 2, 1 << 24).unwrap();
        assert!(report.pass);
        assert!(report.measurings > 0);
    }

    #[test]
    fn oversized_search_is_refused() {
        let a = Algebra::<F2>::diagonal(3);
        let rho = evaluation_measuring(&a, &Algebra::ground()).unwrap();
        let err = certify_universal_measuring(&rho, 3, 1 << 24).unwrap_err();
        assert!(matches!(err, Error::SearchSpaceTooLarge { .. }));
    }
}
