//! The restriction map `ψ: C[p^N]^K → C[a^N]^{W₀}`, the map `θ` (inclusion
//! followed by the Reynolds projection) and per-degree verdicts.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{intersection_dim, kernel_basis, rank, Mat, Scalar};
use crate::invring::{k_invariants, w0_invariants, KInvariants, PAction, Poly, W0Invariants, DEFAULT_MONOMIAL_CAP};
use crate::par::Exec;
use crate::rootsys::molien_dim;
use crate::sympair::SymmetricPair;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub monomial_cap: usize,
    pub exec: Exec,
    /// Re-check the Reynolds projection against every monomial.
    pub check_reynolds: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            monomial_cap: DEFAULT_MONOMIAL_CAP,
            exec: Exec::default(),
            check_reynolds: true,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RestrictionVerdict {
    pub pair: String,
    pub copies: usize,
    pub degree: usize,
    pub dim_source_invariants: usize,
    pub psi_rank: usize,
    pub psi_kernel_dim: usize,
    pub dim_target_invariants: usize,
    pub molien_dim: usize,
    pub theta_rank: usize,
    pub surjective: bool,
    pub theta_injective: bool,
    pub kernel_meets_image: bool,
    pub psi_theta_bijective: bool,
    pub reynolds_checked: bool,
}

impl RestrictionVerdict {
    /// The theorem at this degree: `ψ` onto the target.
    pub fn theorem_holds(&self) -> bool {
        self.surjective && self.dim_target_invariants == self.molien_dim
    }

    /// For one copy `ψ` is also injective.
    pub fn isomorphism(&self) -> bool {
        self.theorem_holds() && self.psi_kernel_dim == 0
    }

    /// `θ` injective, `Ker ψ ∩ Im θ = 0` and `ψθ` bijective.
    pub fn lemma_1_1_holds(&self) -> bool {
        self.theta_injective && !self.kernel_meets_image && self.psi_theta_bijective
    }
}

fn a_variables(pair: &SymmetricPair, copies: usize) -> Vec<usize> {
    (0..copies)
        .flat_map(|c| (0..pair.rank()).map(move |j| c * pair.dim_p() + j))
        .collect()
}

/// Sets every non-`a` coordinate to zero in every copy.
pub fn restrict_poly(pair: &SymmetricPair, copies: usize, f: &Poly) -> Result<Poly> {
    if f.nvars() != pair.dim_p() * copies {
        return Err(Error::SizeMismatch(format!(
            "expected {} variables, got {}",
            pair.dim_p() * copies,
            f.nvars()
        )));
    }
    Ok(f.restrict_to(&a_variables(pair, copies)))
}

/// Views a polynomial on `a^N` as a polynomial on `p^N` through the coordinate inclusion.
pub fn include_poly(pair: &SymmetricPair, copies: usize, f: &Poly) -> Result<Poly> {
    if f.nvars() != pair.rank() * copies {
        return Err(Error::SizeMismatch(format!(
            "expected {} variables, got {}",
            pair.rank() * copies,
            f.nvars()
        )));
    }
    Ok(f.embed(&a_variables(pair, copies), pair.dim_p() * copies))
}

/// Everything needed at one `(pair, N, d)`.
pub struct DegreeData<'a> {
    pub pair: &'a SymmetricPair,
    pub copies: usize,
    pub degree: usize,
    pub source: KInvariants,
    pub target: W0Invariants,
}

impl<'a> DegreeData<'a> {
    pub fn compute(pair: &'a SymmetricPair, copies: usize, degree: usize, opts: &VerifyOptions) -> Result<Self> {
        let source = k_invariants(pair, copies, degree, opts.monomial_cap, opts.exec)?;
        let target = w0_invariants(pair, copies, degree, opts.monomial_cap, opts.exec)?;
        Ok(DegreeData {
            pair,
            copies,
            degree,
            source,
            target,
        })
    }

    /// Matrix of `ψ` from the `K`-invariant basis to the `W₀`-invariant basis.
    /// Fails if some restriction is not `W₀`-invariant.
    pub fn psi(&self) -> Result<Mat> {
        let cols = self
            .source
            .basis()
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let r = restrict_poly(self.pair, self.copies, f)?;
                self.target
                    .coords(&r)?
                    .ok_or_else(|| Error::NotW0Invariant(format!("{} N={} d={} basis element {i}", self.pair.id, self.copies, self.degree)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_cols(&cols, self.target.dim()))
    }

    /// Matrix of `θ` from the `W₀`-invariant basis to the `K`-invariant basis.
    pub fn theta(&self) -> Result<Mat> {
        let cols = self
            .target
            .basis()
            .iter()
            .map(|w| {
                let f = include_poly(self.pair, self.copies, w)?;
                self.source.reynolds_coords(&f)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_cols(&cols, self.source.dim()))
    }
}

/// Full verdict at `(pair, N, d)`: ranks of `ψ` and `θ`, `Ker ψ ∩ Im θ`,
/// bijectivity of `ψθ`, and the Molien cross-check.
pub fn verify_degree(pair: &SymmetricPair, copies: usize, d: usize, opts: &VerifyOptions) -> Result<RestrictionVerdict> {
    let data = DegreeData::compute(pair, copies, d, opts)?;
    if opts.check_reynolds {
        data.source.verify_reynolds(&PAction::new(pair)?)?;
    }
    let psi = data.psi()?;
    let theta = data.theta()?;
    let (src, tgt) = (data.source.dim(), data.target.dim());
    let psi_rank = if src == 0 || tgt == 0 { 0 } else { rank(&psi) };
    let theta_rank = if src == 0 || tgt == 0 { 0 } else { rank(&theta) };
    let ker: Vec<Vec<Scalar>> = if tgt == 0 {
        (0..src).map(|i| unit(src, i)).collect()
    } else {
        kernel_basis(&psi)
    };
    let image: Vec<Vec<Scalar>> = (0..tgt).map(|j| theta.col(j)).collect();
    let meets = src > 0 && !ker.is_empty() && !image.is_empty() && intersection_dim(&ker, &image) > 0;
    let composite_rank = if tgt == 0 { 0 } else { rank(&(&psi * &theta)) };
    let verdict = RestrictionVerdict {
        pair: pair.id.clone(),
        copies,
        degree: d,
        dim_source_invariants: src,
        psi_rank,
        psi_kernel_dim: src - psi_rank,
        dim_target_invariants: tgt,
        molien_dim: molien_dim(&pair.w0, copies, d),
        theta_rank,
        surjective: psi_rank == tgt,
        theta_injective: theta_rank == tgt,
        kernel_meets_image: meets,
        psi_theta_bijective: composite_rank == tgt,
        reynolds_checked: opts.check_reynolds,
    };
    // The argument of the lemma, instance by instance: a failure here means the
    // implementation is wrong, not the statement.
    if verdict.theta_injective && !verdict.kernel_meets_image && !(verdict.psi_theta_bijective && verdict.surjective) {
        return Err(Error::Falsified(format!(
            "{} N={copies} d={d}: θ injective and Ker ψ ∩ Im θ = 0 but ψθ not bijective",
            pair.id
        )));
    }
    Ok(verdict)
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::from_integer(1.into());
    v
}

pub fn check_surjectivity(pair: &SymmetricPair, copies: usize, d: usize) -> Result<RestrictionVerdict> {
    verify_degree(pair, copies, d, &VerifyOptions::default())
}

pub fn check_lemma_1_1(pair: &SymmetricPair, copies: usize, d: usize) -> Result<RestrictionVerdict> {
    let v = verify_degree(pair, copies, d, &VerifyOptions::default())?;
    if v.theta_injective && !v.surjective {
        return Err(Error::Falsified(format!("{} N={copies} d={d}: θ injective but ψ not surjective", pair.id)));
    }
    Ok(v)
}

/// `θ` as a matrix (columns: `W₀`-invariant basis, rows: `K`-invariant basis).
pub fn theta(pair: &SymmetricPair, copies: usize, d: usize) -> Result<Mat> {
    DegreeData::compute(pair, copies, d, &VerifyOptions::default())?.theta()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use crate::sympair::build_pair;

    #[test]
    fn restrict_examples() {
        let pair = build_pair("AI:2").unwrap();
        let one = Poly::constant(2, int(1));
        assert_eq!(restrict_poly(&pair, 1, &one).unwrap(), Poly::constant(1, int(1)));
        let y = Poly::var(2, 1);
        assert!(restrict_poly(&pair, 1, &y.mul(&y)).unwrap().is_zero());
        assert!(restrict_poly(&pair, 2, &one).is_err());
        // The invariant quadric restricts to a nonzero multiple of t².
        let data = DegreeData::compute(&pair, 1, 2, &VerifyOptions::default()).unwrap();
        let q = &data.source.basis()[0];
        let r = restrict_poly(&pair, 1, q).unwrap();
        assert!(!r.coeff(&[2]).is_zero());
        assert_eq!(r.terms().len(), 1);
    }

    #[test]
    fn inclusion_then_restriction_is_identity() {
        let pair = build_pair("AI:3").unwrap();
        let t = Poly::var(4, 0).mul(&Poly::var(4, 3)).plus(&Poly::var(4, 1).mul(&Poly::var(4, 1)));
        let up = include_poly(&pair, 2, &t).unwrap();
        assert_eq!(restrict_poly(&pair, 2, &up).unwrap(), t);
    }

    #[test]
    fn degree_zero_is_trivial() {
        let pair = build_pair("CI:2").unwrap();
        let v = check_lemma_1_1(&pair, 2, 0).unwrap();
        assert_eq!((v.dim_source_invariants, v.dim_target_invariants, v.psi_rank), (1, 1, 1));
        assert!(v.lemma_1_1_holds() && v.theorem_holds());
        assert_eq!(theta(&pair, 1, 0).unwrap(), Mat::identity(1));
    }

    #[test]
    fn two_copy_examples() {
        for id in ["AI:2", "ADJ:sl2"] {
            let pair = build_pair(id).unwrap();
            let v = check_surjectivity(&pair, 2, 2).unwrap();
            assert_eq!((v.psi_rank, v.dim_target_invariants), (3, 3), "{id}");
        }
    }

    #[test]
    fn ai2_one_copy_isomorphism() {
        let pair = build_pair("AI:2").unwrap();
        for d in 0..=6 {
            let v = check_lemma_1_1(&pair, 1, d).unwrap();
            assert!(v.isomorphism() && v.lemma_1_1_holds(), "d={d}");
        }
    }

    #[test]
    fn adjoint_two_copies_theta_apparatus() {
        let pair = build_pair("ADJ:sl2").unwrap();
        for d in 0..=4 {
            let v = check_lemma_1_1(&pair, 2, d).unwrap();
            assert!(v.lemma_1_1_holds() && v.theorem_holds(), "d={d}");
        }
    }

    #[test]
    fn theta_rank_bounded() {
        let pair = build_pair("AI:3").unwrap();
        let t = theta(&pair, 2, 2).unwrap();
        assert!(rank(&t) <= t.rows().min(t.cols()));
    }
}
