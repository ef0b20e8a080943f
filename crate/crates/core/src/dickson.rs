//! Dickson invariant generators and subgroup flags.
//!
//! The invariants of the full general linear group acting on `F2[t1..tn]`
//! form a polynomial algebra on classes `c_1, .., c_n` of degree
//! `2^n - 2^{n-i}`. The classes are computed here as coefficients of the
//! product of `X + u` over all nonzero linear forms `u`: writing
//! `g(X) = prod_u (X + u)`, only the powers `X^{2^k - 1}` survive and
//! `c_i` is the coefficient of `X^{2^{n-i} - 1}`; in particular the
//! constant coefficient `c_n` is the product of all nonzero forms.
//!
//! Subgroups enter as flags: an invertible change of basis after which the
//! subgroup is cut out by vanishing of the last `codim` dual variables, so
//! restriction becomes literal truncation of variables.

use crate::error::Error;
use crate::f2poly::{cohomology_ring, AlgebraMap, Monomial, Polynomial, Ring, RingDescriptor};
use crate::linalg::BitMatrix;
use crate::Result;

/// The Dickson generators for a fixed rank, with the descriptor of the
/// polynomial algebra they generate.
#[derive(Debug, Clone)]
pub struct DicksonSystem {
    rank: u32,
    classes: Vec<Polynomial>,
    ring_dv: Ring,
}

impl DicksonSystem {
    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// The classes `c_1, .., c_n` as polynomials in `F2[t1..tn]`.
    pub fn classes(&self) -> &[Polynomial] {
        &self.classes
    }

    /// Descriptor of `F2[c1..cn]` with the invariant-theoretic degrees.
    pub fn ring_dv(&self) -> &Ring {
        &self.ring_dv
    }

    /// The inclusion of the invariant algebra into `F2[t1..tn]`.
    pub fn inclusion(&self) -> AlgebraMap {
        let hv = cohomology_ring(self.rank);
        AlgebraMap::new(&self.ring_dv, &hv, self.classes.clone())
            .expect("Dickson classes have the declared degrees")
    }
}

/// Degree of the `i`-th Dickson class (1-based) at rank `n`.
pub fn dickson_degree(n: u32, i: u32) -> u32 {
    (1u32 << n) - (1u32 << (n - i))
}

/// Dickson generators of the GL-invariants of `F2[t1..tn]`.
pub fn dickson_classes(n: u32) -> DicksonSystem {
    assert!(n >= 1, "rank must be positive");
    let coeffs = fundamental_polynomial_coefficients(n);
    let classes: Vec<Polynomial> = (1..=n)
        .map(|i| coeffs[(1usize << (n - i)) - 1].clone())
        .collect();
    let ring_dv = RingDescriptor::new(
        (1..=n)
            .map(|i| (format!("c{i}"), dickson_degree(n, i)))
            .collect(),
    )
    .expect("valid descriptor");
    DicksonSystem {
        rank: n,
        classes,
        ring_dv,
    }
}

/// Full coefficient list of `prod_u (X + u)` by power of `X`; exposed for
/// verification (all powers other than `2^k - 1` must carry zero).
pub fn fundamental_polynomial_coefficients(n: u32) -> Vec<Polynomial> {
    let hv = cohomology_ring(n);
    let mut coeffs: Vec<Polynomial> = vec![Polynomial::one(&hv)];
    for form in crate::f2poly::nonzero_linear_forms(n) {
        let mut next: Vec<Polynomial> = Vec::with_capacity(coeffs.len() + 1);
        for k in 0..=coeffs.len() {
            let shifted = if k > 0 {
                coeffs[k - 1].clone()
            } else {
                Polynomial::zero(&hv)
            };
            let scaled = if k < coeffs.len() {
                form.mul(&coeffs[k]).expect("same ring")
            } else {
                Polynomial::zero(&hv)
            };
            next.push(shifted.add(&scaled).expect("homogeneous by construction"));
        }
        coeffs = next;
    }
    coeffs
}

/// A subgroup `W` of `(Z/2)^n` encoded by a change of basis after which the
/// last `codim` dual variables vanish on `W`.
#[derive(Debug, Clone)]
pub struct SubgroupFlag {
    n: u32,
    basis_change: BitMatrix,
    codim: u32,
}

impl SubgroupFlag {
    pub fn new(n: u32, basis_change: BitMatrix, codim: u32) -> Result<Self> {
        if codim == 0 || codim > n {
            return Err(Error::Unsupported(format!(
                "codimension {codim} out of range 1..={n}"
            )));
        }
        if basis_change.rows() != n as usize || basis_change.cols() != n as usize {
            return Err(Error::Unsupported("basis change must be n x n".into()));
        }
        if basis_change.rank() != n as usize {
            return Err(Error::Unsupported(
                "basis change matrix is singular over GF(2)".into(),
            ));
        }
        Ok(SubgroupFlag {
            n,
            basis_change,
            codim,
        })
    }

    /// Identity basis change: the subgroup cut out by `t_{n-codim+1} = .. = t_n = 0`.
    pub fn standard(n: u32, codim: u32) -> Result<Self> {
        SubgroupFlag::new(n, BitMatrix::identity(n as usize), codim)
    }

    pub fn ambient_rank(&self) -> u32 {
        self.n
    }

    pub fn codim(&self) -> u32 {
        self.codim
    }

    pub fn subgroup_rank(&self) -> u32 {
        self.n - self.codim
    }

    pub fn basis_change(&self) -> &BitMatrix {
        &self.basis_change
    }

    pub fn is_standard(&self) -> bool {
        self.basis_change == BitMatrix::identity(self.n as usize)
    }

    fn row_form(&self, ring: &Ring, j: usize) -> Polynomial {
        let monomials = (0..self.n as usize)
            .filter(|k| self.basis_change.get(j, *k))
            .map(|k| Monomial::var(self.n as usize, k))
            .collect();
        Polynomial::from_monomials(ring, monomials).expect("linear form is homogeneous")
    }

    /// The automorphism of `F2[t1..tn]` sending each variable to its row of
    /// the basis-change matrix. Restricting scalars along it rewrites a
    /// module in the coordinates of the flag.
    pub fn change_of_basis_map(&self) -> AlgebraMap {
        let hv = cohomology_ring(self.n);
        let images = (0..self.n as usize)
            .map(|j| self.row_form(&hv, j))
            .collect();
        AlgebraMap::new(&hv, &hv, images).expect("linear images preserve degree")
    }

    /// Restriction `F2[t1..tn] -> F2[t1..tm]`, `m = n - codim`: change basis,
    /// then drop the killed variables.
    pub fn restriction_map(&self) -> AlgebraMap {
        let hv = cohomology_ring(self.n);
        let hw = cohomology_ring(self.subgroup_rank());
        let m = self.subgroup_rank() as usize;
        let images = (0..self.n as usize)
            .map(|j| {
                let monomials = (0..m)
                    .filter(|k| self.basis_change.get(j, *k))
                    .map(|k| Monomial::var(m, k))
                    .collect();
                Polynomial::from_monomials(&hw, monomials).expect("linear form")
            })
            .collect();
        AlgebraMap::new(&hv, &hw, images).expect("degree 1 images")
    }

    /// Descriptor of the quotient-group cohomology `F2[t_{m+1}..t_n]`.
    pub fn quotient_ring(&self) -> Ring {
        let m = self.subgroup_rank();
        RingDescriptor::new((m + 1..=self.n).map(|i| (format!("t{i}"), 1)).collect())
            .expect("valid descriptor")
    }

    /// Inclusion of the quotient-group cohomology into `F2[t1..tn]`,
    /// sending each killed variable to its basis-changed form.
    pub fn quotient_inclusion(&self) -> AlgebraMap {
        let hv = cohomology_ring(self.n);
        let qring = self.quotient_ring();
        let m = self.subgroup_rank() as usize;
        let images = (m..self.n as usize)
            .map(|j| self.row_form(&hv, j))
            .collect();
        AlgebraMap::new(&qring, &hv, images).expect("degree 1 images")
    }

    /// The basis-changed forms that cut out the subgroup, as elements of
    /// `F2[t1..tn]` (for the standard flag: the literal last variables).
    pub fn killed_forms(&self) -> Vec<Polynomial> {
        let hv = cohomology_ring(self.n);
        (self.subgroup_rank() as usize..self.n as usize)
            .map(|j| self.row_form(&hv, j))
            .collect()
    }
}

/// Dickson system of the subgroup: rank `n - codim` classes in the retained
/// variables `t1..tm` of the normalized basis.
pub fn dickson_classes_for_subgroup(flag: &SubgroupFlag) -> Result<DicksonSystem> {
    let m = flag.subgroup_rank();
    if m == 0 {
        // rank-zero subgroup: the invariant ring is the ground field
        return Ok(DicksonSystem {
            rank: 0,
            classes: Vec::new(),
            ring_dv: RingDescriptor::new(Vec::new())?,
        });
    }
    Ok(dickson_classes(m))
}

/// Generators of the intermediate invariant algebra for a corank-one flag:
/// the subgroup's Dickson classes viewed inside `F2[t1..tn]`, followed by
/// the surviving degree-one variable `t_n`. Returns the generators and the
/// descriptor of the polynomial algebra they generate (degrees
/// `2^{n-1} - 2^{n-1-i}` and `1`).
pub fn dtilde_generators(flag: &SubgroupFlag) -> Result<(Vec<Polynomial>, Ring)> {
    if flag.codim() != 1 {
        return Err(Error::Unsupported(format!(
            "intermediate invariants need codimension 1, got {}",
            flag.codim()
        )));
    }
    let n = flag.ambient_rank();
    let hv = cohomology_ring(n);
    let mut gens: Vec<Polynomial> = Vec::new();
    let mut descr: Vec<(String, u32)> = Vec::new();
    if n >= 2 {
        let dw = dickson_classes(n - 1);
        let hw = cohomology_ring(n - 1);
        let embed = AlgebraMap::inclusion(&hw, &hv)?;
        for (i, class) in dw.classes().iter().enumerate() {
            gens.push(embed.apply(class)?);
            descr.push((format!("c{}", i + 1), dickson_degree(n - 1, (i + 1) as u32)));
        }
    }
    gens.push(Polynomial::var(&hv, n as usize - 1));
    descr.push((format!("t{n}"), 1));
    Ok((gens, RingDescriptor::new(descr)?))
}

/// The substitution endomorphism of `F2[t1..tn]` defined by an invertible
/// matrix: variable `j` maps to the linear form in row `j`.
pub fn linear_substitution(n: u32, mat: &BitMatrix) -> Result<AlgebraMap> {
    if mat.rows() != n as usize || mat.cols() != n as usize {
        return Err(Error::Unsupported(
            "substitution matrix must be n x n".into(),
        ));
    }
    let hv = cohomology_ring(n);
    let images = (0..n as usize)
        .map(|j| {
            let monomials = (0..n as usize)
                .filter(|k| mat.get(j, *k))
                .map(|k| Monomial::var(n as usize, k))
                .collect();
            Polynomial::from_monomials(&hv, monomials).expect("linear form")
        })
        .collect();
    AlgebraMap::new(&hv, &hv, images)
}
