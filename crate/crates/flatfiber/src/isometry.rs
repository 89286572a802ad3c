//! Affine isometries a + A and the Gram-form machinery that keeps
//! "orthogonal" exact-rational.
//!
//! Groups are handled in arithmetic coordinates (lattice = Z^n up to a
//! denominator, point group in GL(n, Q)); the Euclidean structure is
//! carried entirely by an invariant Gram form. Hexagonal point groups
//! involve sqrt(3) in orthonormal coordinates but stay rational here.

use crate::exact::{
    dot, is_zero_vec, kernel_basis, rref, solve, vadd, zero_vec, Mat, Rat, Vector,
};
use crate::{Error, Result};
use num_traits::Zero;

/// One group element a + A: x maps to a + A x.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffineIso {
    trans: Vector,
    lin: Mat,
}

impl AffineIso {
    pub fn new(trans: Vector, lin: Mat) -> Result<Self> {
        if lin.rows() != lin.cols() || lin.rows() != trans.len() {
            return Err(Error::DimensionMismatch { expected: lin.rows(), got: trans.len() });
        }
        if lin.det().is_zero() {
            return Err(Error::SingularLinearPart);
        }
        Ok(AffineIso { trans, lin })
    }

    pub fn identity(dim: usize) -> Self {
        AffineIso { trans: zero_vec(dim), lin: Mat::identity(dim) }
    }

    pub fn translation(t: Vector) -> Self {
        let lin = Mat::identity(t.len());
        AffineIso { trans: t, lin }
    }

    pub fn linear(lin: Mat) -> Result<Self> {
        let t = zero_vec(lin.rows());
        AffineIso::new(t, lin)
    }

    pub fn dim(&self) -> usize {
        self.trans.len()
    }

    pub fn trans(&self) -> &Vector {
        &self.trans
    }

    pub fn lin(&self) -> &Mat {
        &self.lin
    }

    pub fn is_identity(&self) -> bool {
        self.lin.is_identity() && is_zero_vec(&self.trans)
    }

    pub fn is_translation(&self) -> bool {
        self.lin.is_identity()
    }

    /// (a+A)(b+B) = (a + A b) + A B.
    pub fn compose(&self, other: &AffineIso) -> AffineIso {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        AffineIso {
            trans: vadd(&self.trans, &self.lin.mul_vec(&other.trans)),
            lin: &self.lin * &other.lin,
        }
    }

    /// (a+A)^{-1} = (-A^{-1} a) + A^{-1}.
    pub fn inverse(&self) -> AffineIso {
        let inv = self.lin.inverse().expect("invertible by construction");
        let t = inv.mul_vec(&self.trans).iter().map(|x| -x).collect();
        AffineIso { trans: t, lin: inv }
    }

    pub fn apply(&self, x: &[Rat]) -> Vector {
        vadd(&self.trans, &self.lin.mul_vec(x))
    }

    pub fn conjugate_by(&self, phi: &AffineIso) -> AffineIso {
        phi.compose(self).compose(&phi.inverse())
    }
}

/// Rational positive-definite form G with B^T G B = G over the point
/// group; stands in for the Euclidean inner product in arithmetic
/// coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GramForm {
    g: Mat,
}

impl GramForm {
    pub fn new(g: Mat) -> Result<Self> {
        let n = g.rows();
        if g.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: g.cols() });
        }
        if g != g.transpose() {
            return Err(Error::Unsupported("gram form must be symmetric".into()));
        }
        // positive definite iff all leading principal minors are positive
        for k in 1..=n {
            let mut minor = Mat::zero(k, k);
            for i in 0..k {
                for j in 0..k {
                    minor[(i, j)] = g[(i, j)].clone();
                }
            }
            if minor.det() <= Rat::zero() {
                return Err(Error::Unsupported("gram form must be positive definite".into()));
            }
        }
        Ok(GramForm { g })
    }

    pub fn identity(n: usize) -> Self {
        GramForm { g: Mat::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    pub fn mat(&self) -> &Mat {
        &self.g
    }

    pub fn inner(&self, a: &[Rat], b: &[Rat]) -> Rat {
        dot(a, &self.g.mul_vec(b))
    }

    pub fn norm(&self, a: &[Rat]) -> Rat {
        self.inner(a, a)
    }

    pub fn is_invariant_under(&self, b: &Mat) -> bool {
        &(&b.transpose() * &self.g) * b == self.g
    }

    /// Restriction of the form to the span of `basis` rows.
    pub fn restrict(&self, basis: &[Vector]) -> GramForm {
        let r = basis.len();
        let mut g = Mat::zero(r, r);
        for i in 0..r {
            for j in 0..r {
                g[(i, j)] = self.inner(&basis[i], &basis[j]);
            }
        }
        GramForm { g }
    }
}

/// Averaging B^T B over a finite point group yields a rational invariant
/// positive-definite form.
pub fn invariant_gram(point_group: &[Mat]) -> Result<GramForm> {
    let n = point_group.first().map_or(0, |m| m.rows());
    // reject a non-closed list
    for a in point_group {
        for b in point_group {
            let p = a * b;
            if !point_group.contains(&p) {
                return Err(Error::NotClosed);
            }
        }
    }
    let mut sum = Mat::zero(n, n);
    for b in point_group {
        let btb = &b.transpose() * b;
        for i in 0..n {
            for j in 0..n {
                let t = btb[(i, j)].clone();
                sum[(i, j)] += t;
            }
        }
    }
    let g = GramForm::new(sum)?;
    for b in point_group {
        debug_assert!(g.is_invariant_under(b));
    }
    Ok(g)
}

/// A linear subspace with a canonical (RREF-row) basis, so subspace
/// equality is a raw comparison.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    dim: usize,
    basis: Vec<Vector>, // RREF rows, linearly independent
}

impl Subspace {
    pub fn from_spanning(dim: usize, vectors: &[Vector]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), dim);
        }
        if vectors.is_empty() {
            return Subspace { dim, basis: vec![] };
        }
        let (r, pivots) = rref(&Mat::from_rows(vectors.to_vec()));
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { dim, basis }
    }

    pub fn zero(dim: usize) -> Self {
        Subspace { dim, basis: vec![] }
    }

    pub fn full(dim: usize) -> Self {
        Subspace::from_spanning(dim, &Mat::identity(dim).row_vecs())
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        if self.basis.is_empty() {
            return is_zero_vec(v);
        }
        let m = Mat::from_rows(self.basis.clone()).transpose();
        solve(&m, v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of v in this basis; None if v is outside the span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vector> {
        let m = Mat::from_rows(self.basis.clone()).transpose();
        let c = solve(&m, v)?;
        if m.mul_vec(&c) == v.to_vec() {
            Some(c)
        } else {
            None
        }
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.dim, other.dim);
        if self.rank() == 0 || other.rank() == 0 {
            return Subspace::zero(self.dim);
        }
        // kernel of the joint coefficient matrix [A^T | -B^T]
        let a = Mat::from_rows(self.basis.clone()).transpose();
        let b = Mat::from_rows(other.basis.clone()).transpose();
        let joint = a.hstack(&b.neg());
        let mut vecs = Vec::new();
        for k in kernel_basis(&joint) {
            let coeff: Vector = k[..self.rank()].to_vec();
            vecs.push(a.mul_vec(&coeff));
        }
        Subspace::from_spanning(self.dim, &vecs)
    }

    /// G-orthogonal complement: every pairing v^T G w vanishes.
    pub fn orthogonal_complement(&self, g: &GramForm) -> Subspace {
        assert_eq!(self.dim, g.dim());
        if self.basis.is_empty() {
            return Subspace::full(self.dim);
        }
        let constraint = &Mat::from_rows(self.basis.clone()) * g.mat();
        Subspace::from_spanning(self.dim, &kernel_basis(&constraint))
    }

    /// G-orthogonal projection of x onto this subspace.
    pub fn project(&self, x: &[Rat], g: &GramForm) -> Vector {
        if self.basis.is_empty() {
            return zero_vec(self.dim);
        }
        // solve (B G B^T) c = B G x, projection = B^T c
        let b = Mat::from_rows(self.basis.clone());
        let bg = &b * g.mat();
        let gram = &bg * &b.transpose();
        let rhs = bg.mul_vec(x);
        let c = solve(&gram, &rhs).expect("positive definite gram");
        b.transpose().mul_vec(&c)
    }
}

/// Restrict g to a pair of complementary invariant subspaces: returns the
/// components in the coordinates of the given bases. Errors if the linear
/// part does not preserve `v`.
pub fn restrict(g: &AffineIso, v: &Subspace, w: &Subspace) -> Result<(AffineIso, AffineIso)> {
    let n = g.dim();
    assert_eq!(v.ambient_dim(), n);
    assert_eq!(w.ambient_dim(), n);
    assert_eq!(v.rank() + w.rank(), n, "bases must be complementary");
    let part = |s: &Subspace, other: &Subspace| -> Result<AffineIso> {
        let r = s.rank();
        let mut lin = Mat::zero(r, r);
        for (j, bv) in s.basis().iter().enumerate() {
            let img = g.lin().mul_vec(bv);
            let c = s.coordinates(&img).ok_or(Error::NotInvariant)?;
            for i in 0..r {
                lin[(i, j)] = c[i].clone();
            }
        }
        // translation component: split trans along V ⊕ W
        let joint =
            Mat::from_rows(s.basis().to_vec()).vstack(&Mat::from_rows(other.basis().to_vec()));
        let coords = solve(&joint.transpose(), g.trans()).ok_or(Error::NotInvariant)?;
        let t = coords[..r].to_vec();
        AffineIso::new(t, lin)
    };
    Ok((part(v, w)?, part(w, v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    fn iso(t: &[i64], lin: &[i64]) -> AffineIso {
        let n = t.len();
        AffineIso::new(t.iter().map(|&x| rat(x)).collect(), Mat::from_i64(n, n, lin)).unwrap()
    }

    #[test]
    fn group_laws() {
        let a = AffineIso::translation(vec![rat(1), rat(0)]);
        let b = AffineIso::translation(vec![rat(0), rat(2)]);
        assert_eq!(a.compose(&b), AffineIso::translation(vec![rat(1), rat(2)]));

        // inverse(e1/2 + diag(1,-1)) = (-e1/2) + diag(1,-1), by multiplying out
        let g = AffineIso::new(vec![frac(1, 2), rat(0)], Mat::from_i64(2, 2, &[1, 0, 0, -1]))
            .unwrap();
        let inv = g.inverse();
        assert_eq!(inv.trans(), &vec![frac(-1, 2), rat(0)]);
        assert_eq!(inv.lin(), &Mat::from_i64(2, 2, &[1, 0, 0, -1]));
        assert!(g.compose(&inv).is_identity());
    }

    #[test]
    fn halfturn_fixes_cone_point() {
        // t1*alpha from the IT 113 presentation flips the long triangle side
        // about its midpoint (3/4, 1/4, 0).
        let t1a = AffineIso::new(
            vec![frac(3, 2), frac(1, 2), rat(0)],
            Mat::from_i64(3, 3, &[-1, 0, 0, 0, -1, 0, 0, 0, 1]),
        )
        .unwrap();
        let v0 = vec![frac(3, 4), frac(1, 4), rat(0)];
        assert_eq!(t1a.apply(&v0), v0);
    }

    #[test]
    fn invariant_gram_basics() {
        let g = invariant_gram(&[Mat::identity(2)]).unwrap();
        assert!(g.mat().is_identity());

        let d = Mat::from_i64(2, 2, &[1, 0, 0, -1]);
        let g = invariant_gram(&[Mat::identity(2), d.clone()]).unwrap();
        assert!(g.is_invariant_under(&d));
        assert_eq!(g.mat(), &Mat::from_i64(2, 2, &[2, 0, 0, 2]));

        // hexagonal: order-3 rotation in arithmetic coordinates
        let a = Mat::from_i64(2, 2, &[0, -1, 1, -1]);
        let a2 = &a * &a;
        let g = invariant_gram(&[Mat::identity(2), a.clone(), a2]).unwrap();
        assert!(g.is_invariant_under(&a));
        assert!(!g.mat()[(0, 1)].is_zero());

        assert!(invariant_gram(&[Mat::identity(2), a]).is_err());
    }

    #[test]
    fn orthogonal_complement_examples() {
        let g = GramForm::identity(3);
        let v = Subspace::from_spanning(3, &[vec![rat(1), rat(0), rat(0)]]);
        let c = v.orthogonal_complement(&g);
        assert_eq!(c.rank(), 2);
        assert!(c.contains(&[rat(0), rat(1), rat(0)]));
        assert_eq!(c.orthogonal_complement(&g), v);

        // Example 8 setting: V = Span{e1+e2} in E^3, complement Span{e1-e2, e3}
        let v = Subspace::from_spanning(3, &[vec![rat(1), rat(1), rat(0)]]);
        let c = v.orthogonal_complement(&g);
        assert!(c.contains(&[rat(1), rat(-1), rat(0)]));
        assert!(c.contains(&[rat(0), rat(0), rat(1)]));
        assert_eq!(c.rank(), 2);

        let full = Subspace::full(2);
        assert_eq!(full.orthogonal_complement(&GramForm::identity(2)).rank(), 0);
    }

    #[test]
    fn restrict_block_decomposition() {
        // Example 9's alpha = e3/2 + diag(1,-1,1) with V = Span{e3}:
        // on V a translation by 1/2, on the complement a reflection.
        let alpha = AffineIso::new(
            vec![rat(0), rat(0), frac(1, 2)],
            Mat::from_i64(3, 3, &[1, 0, 0, 0, -1, 0, 0, 0, 1]),
        )
        .unwrap();
        let v = Subspace::from_spanning(3, &[vec![rat(0), rat(0), rat(1)]]);
        let w = v.orthogonal_complement(&GramForm::identity(3));
        let (on_v, on_w) = restrict(&alpha, &v, &w).unwrap();
        assert_eq!(on_v.trans(), &vec![frac(1, 2)]);
        assert!(on_v.lin().is_identity());
        assert_eq!(on_w.lin(), &Mat::from_i64(2, 2, &[1, 0, 0, -1]));

        let (i1, i2) = restrict(&AffineIso::identity(3), &v, &w).unwrap();
        assert!(i1.is_identity() && i2.is_identity());

        // restriction is a homomorphism
        let g = iso(&[1, 0, 0], &[-1, 0, 0, 0, 1, 0, 0, 0, 1]);
        let h = iso(&[0, 2, 0], &[1, 0, 0, 0, -1, 0, 0, 0, 1]);
        let (gv, gw) = restrict(&g, &v, &w).unwrap();
        let (hv, hw) = restrict(&h, &v, &w).unwrap();
        let (ghv, ghw) = restrict(&g.compose(&h), &v, &w).unwrap();
        assert_eq!(gv.compose(&hv), ghv);
        assert_eq!(gw.compose(&hw), ghw);

        // V not invariant: rotate e3 into e1
        let rot = iso(&[0, 0, 0], &[0, 0, 1, 0, 1, 0, -1, 0, 0]);
        assert!(restrict(&rot, &v, &w).is_err());
    }
}
