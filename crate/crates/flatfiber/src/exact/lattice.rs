//! Integer normal forms (HNF, SNF) and rational lattices.
//!
//! A lattice is stored as a cleared common denominator together with an
//! integer basis in canonical row Hermite normal form, so lattice equality
//! is plain structural equality.

use super::mat::{is_zero_vec, left_kernel_basis, solve, zero_vec, Mat, Vector};
use super::rat::{common_denominator, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IVec = Vec<BigInt>;
pub type IMat = Vec<IVec>;

fn izero(n: usize) -> IVec {
    vec![BigInt::zero(); n]
}

fn ieye(n: usize) -> IMat {
    (0..n)
        .map(|i| {
            let mut r = izero(n);
            r[i] = BigInt::one();
            r
        })
        .collect()
}

fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = b.len();
    let cols = if n == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            let mut out = izero(cols);
            for (k, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    out[j] += e * &b[k][j];
                }
            }
            out
        })
        .collect()
}

fn idet(m: &IMat) -> BigInt {
    let n = m.len();
    let rows: Vec<Vector> = m
        .iter()
        .map(|r| r.iter().map(|e| Rat::from_integer(e.clone())).collect())
        .collect();
    assert!(rows.iter().all(|r| r.len() == n));
    let d = Mat::from_rows(rows).det();
    assert!(d.denom().is_one());
    d.to_integer()
}

/// Row Hermite normal form of the integer matrix whose rows are `rows`,
/// zero rows dropped: pivots positive, entries above each pivot reduced
/// into [0, pivot).
pub fn hnf_int(rows: &IMat) -> IMat {
    let (h, _) = hnf_int_with_transform(rows);
    h
}

/// HNF together with a unimodular U such that U * rows = [H; 0].
/// Returns (H without zero rows, U).
pub fn hnf_int_with_transform(rows: &IMat) -> (IMat, IMat) {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut a = rows.clone();
    let mut u = ieye(m);
    let mut r = 0;
    for c in 0..n {
        // Euclid on the entries of column c, rows r..
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !a[i][c].is_zero()
                    && best.map_or(true, |b| a[i][c].abs() < a[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            a.swap(p, r);
            u.swap(p, r);
            if a[r][c].is_negative() {
                for e in a[r].iter_mut() {
                    *e = -&*e;
                }
                for e in u[r].iter_mut() {
                    *e = -&*e;
                }
            }
            let mut done = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                if !q.is_zero() {
                    for j in 0..n {
                        let s = &q * &a[r][j];
                        a[i][j] -= s;
                    }
                    for j in 0..m {
                        let s = &q * &u[r][j];
                        u[i][j] -= s;
                    }
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m && !a[r][c].is_zero() {
            // reduce the entries above the pivot into [0, pivot)
            for i in 0..r {
                let q = a[i][c].div_floor(&a[r][c]);
                if !q.is_zero() {
                    for j in 0..n {
                        let s = &q * &a[r][j];
                        a[i][j] -= s;
                    }
                    for j in 0..m {
                        let s = &q * &u[r][j];
                        u[i][j] -= s;
                    }
                }
            }
            r += 1;
        }
    }
    (a.into_iter().take(r).collect(), u)
}

/// Smith normal form: returns (d, u, v) with u * m * v = diag(d),
/// d_1 | d_2 | ..., u and v unimodular. `d` is padded with zeros up to
/// min(rows, cols).
pub fn snf(m: &IMat) -> (Vec<BigInt>, IMat, IMat) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut u = ieye(rows);
    let mut v = ieye(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // find a nonzero pivot in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(pi, t);
        u.swap(pi, t);
        for row in a.iter_mut() {
            row.swap(pj, t);
        }
        for row in v.iter_mut() {
            row.swap(pj, t);
        }
        // clear row and column t
        let mut dirty = false;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            for j in 0..cols {
                let s = &q * &a[t][j];
                a[i][j] -= s;
            }
            for j in 0..rows {
                let s = &q * &u[t][j];
                u[i][j] -= s;
            }
            if !a[i][t].is_zero() {
                dirty = true;
            }
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for i in 0..rows {
                let s = &q * &a[i][t];
                a[i][j] -= s;
            }
            for i in 0..cols {
                let s = &q * &v[i][t];
                v[i][j] -= s;
            }
            if !a[t][j].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue; // remainders left: repeat with a smaller pivot
        }
        // divisibility: a[t][t] must divide everything below-right
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    // add row i to row t and restart this step
                    for k in 0..cols {
                        let s = a[i][k].clone();
                        a[t][k] += s;
                    }
                    for k in 0..rows {
                        let s = u[i][k].clone();
                        u[t][k] += s;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        if a[t][t].is_negative() {
            for j in 0..cols {
                a[t][j] = -&a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -&u[t][j];
            }
        }
        t += 1;
    }
    let d: Vec<BigInt> = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    debug_assert!({
        let prod = imat_mul(&imat_mul(&u, m), &v);
        let ok_diag = (0..rows).all(|i| {
            (0..cols).all(|j| if i == j { prod[i][j] == d[i] } else { prod[i][j].is_zero() })
        });
        let ok_uni = idet(&u).abs().is_one() && idet(&v).abs().is_one();
        let ok_chain = d.windows(2).all(|w| w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        ok_diag && ok_uni && ok_chain
    });
    (d, u, v)
}

/// One integer solution x of  m x = b, if any (m integer, b integer).
pub fn solve_int(m: &IMat, b: &IVec) -> Option<IVec> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    assert_eq!(rows, b.len());
    if cols == 0 {
        return if b.iter().all(|x| x.is_zero()) { Some(vec![]) } else { None };
    }
    let (d, u, v) = snf(m);
    // m x = b  <=>  D y = U b with x = V y
    let ub: IVec = u
        .iter()
        .map(|row| row.iter().zip(b).map(|(a, c)| a * c).fold(BigInt::zero(), |s, t| s + t))
        .collect();
    let mut y = izero(cols);
    for (i, ubi) in ub.iter().enumerate() {
        let di = d.get(i).cloned().unwrap_or_else(BigInt::zero);
        if di.is_zero() {
            if !ubi.is_zero() {
                return None;
            }
        } else {
            let (q, r) = ubi.div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    // x = V y
    let x: IVec = (0..cols)
        .map(|i| v[i].iter().zip(&y).map(|(a, c)| a * c).fold(BigInt::zero(), |s, t| s + t))
        .collect();
    Some(x)
}

/// A rational lattice of rank r inside Q^n: all integer combinations of
/// the basis rows. Canonical form: integer HNF basis over a minimal
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    dim: usize,
    den: BigInt,
    basis: IMat, // HNF rows, rank many
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, den: BigInt::one(), basis: vec![] }
    }

    pub fn standard(dim: usize) -> Self {
        Lattice { dim, den: BigInt::one(), basis: ieye(dim) }
    }

    /// Canonical lattice generated by rational vectors.
    pub fn from_generators(dim: usize, gens: &[Vector]) -> Self {
        for g in gens {
            assert_eq!(g.len(), dim, "generator dimension mismatch");
        }
        let all: Vec<Rat> = gens.iter().flatten().cloned().collect();
        let den = common_denominator(&all);
        let int_rows: IMat = gens
            .iter()
            .map(|g| g.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect())
            .collect();
        let h = hnf_int(&int_rows);
        Self::normalized(dim, den, h)
    }

    fn normalized(dim: usize, den: BigInt, basis: IMat) -> Self {
        let mut g = den.clone();
        for row in &basis {
            for e in row {
                g = g.gcd(e);
            }
        }
        if g.is_zero() || g.is_one() {
            return Lattice { dim, den, basis };
        }
        let basis = basis
            .iter()
            .map(|row| row.iter().map(|e| e / &g).collect())
            .collect();
        Lattice { dim, den: den / g, basis }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis rows as rational vectors.
    pub fn basis_vectors(&self) -> Vec<Vector> {
        let d = Rat::from_integer(self.den.clone());
        self.basis
            .iter()
            .map(|row| row.iter().map(|e| Rat::from_integer(e.clone()) / d.clone()).collect())
            .collect()
    }

    pub fn member(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.dim);
        // v in L  <=>  den*v integral and expressible in the integer basis
        let scaled: Vec<Rat> = v.iter().map(|x| x * Rat::from_integer(self.den.clone())).collect();
        if scaled.iter().any(|x| !x.denom().is_one()) {
            return false;
        }
        let mut target: IVec = scaled.into_iter().map(|x| x.to_integer()).collect();
        // reduce against the HNF rows
        for row in &self.basis {
            let p = row.iter().position(|e| !e.is_zero()).unwrap();
            if target[p].is_zero() {
                continue;
            }
            let (q, r) = target[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            for j in 0..self.dim {
                let s = &q * &row[j];
                target[j] -= s;
            }
        }
        target.iter().all(|x| x.is_zero())
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let mut gens = self.basis_vectors();
        gens.extend(other.basis_vectors());
        Lattice::from_generators(self.dim, &gens)
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        if self.rank() == 0 || other.rank() == 0 {
            return Lattice::zero(self.dim);
        }
        // Rescale both to a common denominator d, stack the integer bases,
        // and read the intersection off the left kernel.
        let d = self.den.clone().lcm(&other.den);
        let fa = &d / &self.den;
        let fb = &d / &other.den;
        let a: IMat = self
            .basis
            .iter()
            .map(|r| r.iter().map(|e| e * &fa).collect())
            .collect();
        let b: IMat = other
            .basis
            .iter()
            .map(|r| r.iter().map(|e| e * &fb).collect())
            .collect();
        let mut stacked = a.clone();
        stacked.extend(b.iter().cloned());
        let (h, u) = hnf_int_with_transform(&stacked);
        // rows of u beyond rank(h) are the integer left kernel of [A; B]
        let mut gens: Vec<Vector> = Vec::new();
        let dr = Rat::from_integer(d.clone());
        for urow in u.iter().skip(h.len()) {
            // x*A (coefficients from the first block) is in both lattices
            let mut vec = zero_vec(self.dim);
            for (i, arow) in a.iter().enumerate() {
                for j in 0..self.dim {
                    vec[j] += Rat::from_integer(&urow[i] * &arow[j]);
                }
            }
            gens.push(vec.iter().map(|x| x / dr.clone()).collect());
        }
        Lattice::from_generators(self.dim, &gens)
    }

    /// Index [self : sub] when `sub` has the same rank; `None` encodes an
    /// infinite index (rank drop). Errors if `sub` is not contained in self.
    pub fn index_of(&self, sub: &Lattice) -> Result<Option<BigInt>, crate::Error> {
        assert_eq!(self.dim, sub.dim);
        for v in sub.basis_vectors() {
            if !self.member(&v) {
                return Err(crate::Error::NotASublattice);
            }
        }
        if sub.rank() < self.rank() {
            return Ok(None);
        }
        // coordinates of sub's basis in self's basis form an integer matrix
        let mut coords: IMat = Vec::new();
        let bm = Mat::from_rows(self.basis_vectors()).transpose();
        for v in sub.basis_vectors() {
            let c = solve(&bm, &v).expect("member implies solvable");
            coords.push(c.into_iter().map(|x| x.to_integer()).collect());
        }
        Ok(Some(idet(&coords).abs()))
    }

    /// The sublattice of members lying in the given subspace (kernel-style
    /// constraint rows: v in result iff constraint * v = 0).
    pub fn intersect_nullspace(&self, constraint: &Mat) -> Lattice {
        assert_eq!(constraint.cols(), self.dim);
        if self.rank() == 0 {
            return Lattice::zero(self.dim);
        }
        // solve constraint * (c^T basis) = 0 over integer coefficient vectors c
        let b = Mat::from_rows(self.basis_vectors());
        let composed = constraint * &b.transpose(); // (k x rank)
        // integer kernel of `composed` acting on coefficient vectors:
        // clear denominators row-wise, then HNF-transform trick on transpose.
        let rows: IMat = (0..composed.rows())
            .map(|i| {
                let r = composed.row(i);
                let den = common_denominator(r);
                r.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect()
            })
            .collect();
        // integer kernel { c : rows * c = 0 } via left kernel of transpose
        let t: IMat = (0..self.rank())
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        let (h, u) = hnf_int_with_transform(&t);
        let base = self.basis_vectors();
        let mut gens = Vec::new();
        for urow in u.iter().skip(h.len()) {
            let mut v = zero_vec(self.dim);
            for (i, b) in base.iter().enumerate() {
                let c = Rat::from_integer(urow[i].clone());
                for j in 0..self.dim {
                    v[j] += &c * &b[j];
                }
            }
            gens.push(v);
        }
        Lattice::from_generators(self.dim, &gens)
    }

    /// Reduce `v` modulo the lattice into the canonical cell: the lattice
    /// coordinates of the reduced part lie in [0, 1).
    pub fn reduce_mod(&self, v: &[Rat]) -> Vector {
        assert_eq!(v.len(), self.dim);
        if self.rank() == 0 {
            return v.to_vec();
        }
        let b = Mat::from_rows(self.basis_vectors()).transpose();
        // least-squares-free: solve for the component inside span(L) exactly
        let span = Mat::from_rows(self.basis_vectors());
        let aug = span.transpose();
        // v = aug * c + w with w outside span: use rref on [aug | v]
        let c = match solve(&aug, v) {
            Some(c) => c,
            None => {
                // v not in span(L): split v = p + w with p in span and reduce p.
                // Solve span * G-free projection via plain linear algebra:
                // write v = aug*c + w, minimizing nothing; we instead reduce the
                // solvable part coordinate-wise using rref of the joint system.
                return self.reduce_affine_part(v);
            }
        };
        let fc: Vector = c.iter().map(|x| x - Rat::from_integer(super::rat::floor_int(x))).collect();
        b.mul_vec(&fc)
    }

    fn reduce_affine_part(&self, v: &[Rat]) -> Vector {
        // decompose v = p + w with p in span(L) (coordinates solved in a basis
        // extension) and return reduce_mod(p) + w.
        let mut rows = self.basis_vectors();
        let r = rows.len();
        // extend to a basis of Q^n with unit vectors
        for i in 0..self.dim {
            let mut cand = rows.clone();
            cand.push(crate::exact::mat::unit_vec(self.dim, i));
            if crate::exact::mat::rank(&Mat::from_rows(cand.clone())) > rows.len() {
                rows = cand;
            }
        }
        let basis = Mat::from_rows(rows).transpose();
        let c = solve(&basis, v).expect("full basis");
        let mut p = zero_vec(self.dim);
        let bv = self.basis_vectors();
        for i in 0..r {
            for j in 0..self.dim {
                p[j] += &c[i] * &bv[i][j];
            }
        }
        let w = super::mat::vsub(v, &p);
        super::mat::vadd(&self.reduce_mod(&p), &w)
    }
}

/// One rational solution of A x = b, if any.
pub fn solve_affine(a: &Mat, b: &[Rat]) -> Option<Vector> {
    solve(a, b)
}

/// One rational solution x of A x ≡ b (mod L): there must be a lattice
/// vector l with A x = b + l. Solved by treating the basis coefficients of
/// L as extra integer unknowns via Smith normal form.
pub fn solve_affine_mod_lattice(a: &Mat, b: &[Rat], l: &Lattice) -> Option<Vector> {
    assert_eq!(a.rows(), b.len());
    assert_eq!(a.rows(), l.dim());
    if l.rank() == 0 {
        return solve_affine(a, b);
    }
    let lb = Mat::from_rows(l.basis_vectors()).transpose(); // n x r
    // consistency constraints: y A = 0 row space
    let null = left_kernel_basis(a);
    if null.is_empty() {
        // A surjective: solve A x = b directly (l = 0 works)
        return solve(a, b);
    }
    let nmat = Mat::from_rows(null);
    // (N * LB) k = -N b over integers k
    let c = &nmat * &lb;
    let rhs: Vector = nmat.mul_vec(b).iter().map(|x| -x).collect();
    // clear denominators jointly per row
    let mut int_rows: IMat = Vec::new();
    let mut int_rhs: IVec = Vec::new();
    for i in 0..c.rows() {
        let mut all: Vec<Rat> = c.row(i).to_vec();
        all.push(rhs[i].clone());
        let den = common_denominator(&all);
        let df = Rat::from_integer(den);
        int_rows.push(c.row(i).iter().map(|x| (x * df.clone()).to_integer()).collect());
        int_rhs.push((&rhs[i] * df).to_integer());
    }
    let k = solve_int(&int_rows, &int_rhs)?;
    // rhs vector b + LB k
    let kk: Vector = k.into_iter().map(Rat::from_integer).collect();
    let shift = lb.mul_vec(&kk);
    let target = super::mat::vadd(b, &shift);
    let x = solve(a, &target)?;
    debug_assert!(l.member(&super::mat::vsub(&a.mul_vec(&x), b)));
    Some(x)
}

/// All solutions of A x ≡ b (mod L) form (x0 + ker A + M) for a lattice M;
/// this returns (x0, kernel basis, M) when solvable. ker A ⊕ M is the full
/// preimage { x : A x in L }: M is generated by preimages of a basis of
/// L ∩ Im(A), which can be strictly coarser than the preimages of L's own
/// basis vectors.
pub fn solve_affine_mod_lattice_full(
    a: &Mat,
    b: &[Rat],
    l: &Lattice,
) -> Option<(Vector, Vec<Vector>, Lattice)> {
    let x0 = solve_affine_mod_lattice(a, b, l)?;
    let ker = super::mat::kernel_basis(a);
    let lcap = {
        let null = left_kernel_basis(a);
        if null.is_empty() {
            l.clone()
        } else {
            l.intersect_nullspace(&Mat::from_rows(null))
        }
    };
    let mut gens = Vec::new();
    for lv in lcap.basis_vectors() {
        let x = solve(a, &lv).expect("basis of the image intersection is solvable");
        if !is_zero_vec(&x) {
            gens.push(x);
        }
    }
    let m = Lattice::from_generators(a.cols(), &gens);
    Some((x0, ker, m))
}
