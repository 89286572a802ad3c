//! Conjugacy classification of finite-order elements and order-<=2 pairs
//! in the affinity groups of the torus and the pillow, the classifying
//! pairs of codimension-1 fibrations, and the extension builder that
//! reconstructs a space group from a fiber group and its gluing data.

use crate::exact::{
    frac, kernel_basis, rat, vadd, vneg, vscale, vsub, zero_vec, Lattice, Mat, Rat,
    Vector,
};
use crate::fibration::{one_orb_type, OneOrbType, OrbifoldType, WallpaperType};
use crate::isometry::{AffineIso, Subspace};
use crate::normal::NormalAnalysis;
use crate::spacegroup::SpaceGroup;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::OnceLock;

// The reference matrices of Lemma 50: A of order 4, B of order 6 with
// B^3 = -I, C a centered reflection; CA = diag(1,-1) is the primitive
// reflection and B^2 generates the order-3 class.
pub fn mat_a() -> Mat {
    Mat::from_i64(2, 2, &[0, -1, 1, 0])
}
pub fn mat_b() -> Mat {
    Mat::from_i64(2, 2, &[0, -1, 1, 1])
}
pub fn mat_c() -> Mat {
    Mat::from_i64(2, 2, &[0, 1, 1, 0])
}
pub fn mat_ca() -> Mat {
    Mat::from_i64(2, 2, &[1, 0, 0, -1])
}
pub fn mat_b2() -> Mat {
    Mat::from_i64(2, 2, &[-1, -1, 1, 0])
}
fn mat_neg() -> Mat {
    Mat::from_i64(2, 2, &[-1, 0, 0, -1])
}

/// The seven conjugacy classes of finite-order elements of GL(2,Z).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConjClass {
    /// identity
    I,
    /// -I, the only central involution
    NegI,
    /// order 2, det -1, split eigenlattice (index 1): diag(1,-1)
    CA,
    /// order 2, det -1, centered eigenlattice (index 2)
    C,
    /// order 3
    B2,
    /// order 4
    A,
    /// order 6
    B,
}

impl ConjClass {
    pub fn label(&self) -> &'static str {
        match self {
            ConjClass::I => "I",
            ConjClass::NegI => "-I",
            ConjClass::CA => "CA",
            ConjClass::C => "C",
            ConjClass::B2 => "B^2",
            ConjClass::A => "A",
            ConjClass::B => "B",
        }
    }

    pub fn order(&self) -> usize {
        match self {
            ConjClass::I => 1,
            ConjClass::NegI | ConjClass::CA | ConjClass::C => 2,
            ConjClass::B2 => 3,
            ConjClass::A => 4,
            ConjClass::B => 6,
        }
    }

    pub fn representative(&self) -> Mat {
        match self {
            ConjClass::I => Mat::identity(2),
            ConjClass::NegI => mat_neg(),
            ConjClass::CA => mat_ca(),
            ConjClass::C => mat_c(),
            ConjClass::B2 => mat_b2(),
            ConjClass::A => mat_a(),
            ConjClass::B => mat_b(),
        }
    }
}

fn mat_order(m: &Mat, max: usize) -> Option<usize> {
    let mut p = m.clone();
    for k in 1..=max {
        if p.is_identity() {
            return Some(k);
        }
        p = &p * m;
    }
    None
}

/// Conjugacy class of a finite-order element of GL(2,Z): by (order, det),
/// with the order-2 reflection ambiguity resolved by the index of
/// L+ ⊕ L- in Z^2.
pub fn gl2z_finite_order_class(k: &Mat) -> Result<ConjClass> {
    assert_eq!(k.rows(), 2);
    let d = k.det();
    if !(d == rat(1) || d == rat(-1)) {
        return Err(Error::NotUnimodular);
    }
    for i in 0..2 {
        for j in 0..2 {
            if !k[(i, j)].denom().is_one() {
                return Err(Error::NotUnimodular);
            }
        }
    }
    let Some(order) = mat_order(k, 6) else {
        return Err(Error::InfiniteOrder);
    };
    Ok(match (order, d == rat(1)) {
        (1, _) => ConjClass::I,
        (2, true) => ConjClass::NegI,
        (2, false) => {
            let idx = crate::fibration::reflection_eigenlattice_index(k);
            if idx.is_one() {
                ConjClass::CA
            } else {
                ConjClass::C
            }
        }
        (3, _) => ConjClass::B2,
        (4, _) => ConjClass::A,
        (6, _) => ConjClass::B,
        _ => return Err(Error::InfiniteOrder),
    })
}

/// A unimodular U with U K U^{-1} equal to the class representative.
pub fn normalizing_transform(k: &Mat) -> Result<Mat> {
    let class = gl2z_finite_order_class(k)?;
    let from_cols = |c1: Vec<BigInt>, c2: Vec<BigInt>| -> Mat {
        let mut m = Mat::zero(2, 2);
        for i in 0..2 {
            m[(i, 0)] = Rat::from_integer(c1[i].clone());
            m[(i, 1)] = Rat::from_integer(c2[i].clone());
        }
        m
    };
    let u = match class {
        ConjClass::I | ConjClass::NegI => Mat::identity(2),
        ConjClass::CA => {
            let p = crate::fibration::primitive_eigenvector(k, 1);
            let m = crate::fibration::primitive_eigenvector(k, -1);
            from_cols(p, m).inverse().expect("index-1 eigenbasis")
        }
        ConjClass::C => {
            let p = crate::fibration::primitive_eigenvector(k, 1);
            let m = crate::fibration::primitive_eigenvector(k, -1);
            let u1 = vec![(&p[0] + &m[0]) / BigInt::from(2), (&p[1] + &m[1]) / BigInt::from(2)];
            let u2 = vec![(&p[0] - &m[0]) / BigInt::from(2), (&p[1] - &m[1]) / BigInt::from(2)];
            from_cols(u1, u2).inverse().expect("index-2 half basis")
        }
        ConjClass::B2 | ConjClass::A | ConjClass::B => {
            // basis (w, Kw) with w a shortest vector of the invariant form
            let ord = class.order();
            let mut g = Mat::zero(2, 2);
            let mut p = Mat::identity(2);
            for _ in 0..ord {
                let ptp = &p.transpose() * &p;
                for i in 0..2 {
                    for j in 0..2 {
                        let t = ptp[(i, j)].clone();
                        g[(i, j)] += t;
                    }
                }
                p = &p * k;
            }
            let w = gauss_shortest(&g);
            let kw = k.mul_vec(&w);
            let base = Mat::from_rows(vec![w, kw]).transpose();
            let u = base.inverse().expect("shortest basis");
            if class == ConjClass::B2 {
                // (w, Kw) yields [[0,-1],[1,-1]]; shift it onto B^2
                let p0 = Mat::from_i64(2, 2, &[1, -1, 0, 1]);
                &p0 * &u
            } else {
                u
            }
        }
    };
    debug_assert_eq!(
        &(&u * k) * &u.inverse().unwrap(),
        class.representative(),
        "normalization must reach the canonical representative"
    );
    Ok(u)
}

/// A shortest nonzero vector of a positive-definite binary form, by Gauss
/// reduction of the standard basis.
fn gauss_shortest(g: &Mat) -> Vector {
    let q = |v: &Vector| -> Rat { crate::exact::dot(v, &g.mul_vec(v)) };
    let mut u1 = vec![rat(1), rat(0)];
    let mut u2 = vec![rat(0), rat(1)];
    loop {
        if q(&u1) > q(&u2) {
            std::mem::swap(&mut u1, &mut u2);
        }
        let m = &crate::exact::dot(&u1, &g.mul_vec(&u2)) / &q(&u1);
        let mr = round_rat(&m);
        if mr.is_zero() {
            break;
        }
        u2 = vsub(&u2, &vscale(&Rat::from_integer(mr), &u1));
    }
    if q(&u1) > q(&u2) {
        std::mem::swap(&mut u1, &mut u2);
    }
    u1
}

fn round_rat(x: &Rat) -> BigInt {
    crate::exact::rat::floor_int(&(x + frac(1, 2)))
}

/// Normalizer of the cyclic group generated by a canonical finite-order
/// matrix: the square symmetries <A, C> for the order-2/4 classes and the
/// hexagonal symmetries <B, C> for the order-3/6 classes. Both are the
/// full automorphism groups of the respective invariant form rays, so
/// they are the complete residual conjugation sets after anchoring.
fn canonical_normalizer(class: ConjClass) -> Vec<Mat> {
    let words = |g1: Mat, g2: Mat, bound: usize| -> Vec<Mat> {
        group_closure(&[g1, g2], bound).expect("finite dihedral group")
    };
    match class {
        ConjClass::CA | ConjClass::C | ConjClass::A | ConjClass::NegI | ConjClass::I => {
            words(mat_a(), mat_c(), 16)
        }
        ConjClass::B2 | ConjClass::B => words(mat_b(), mat_c(), 16),
    }
}

/// Which affinity group the element/pair classification runs in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    /// Aff(torus): all translations available, sign matters
    Torus,
    /// Aff(pillow): half-integer translations, global sign quotient
    Pillow,
}

/// An affinity of the standard torus or pillow, stored as translation
/// plus integral linear part (translation taken mod Z^2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelAff {
    pub t: Vector,
    pub m: Mat,
}

impl ModelAff {
    pub fn new(t: Vector, m: Mat) -> Self {
        let z2 = Lattice::standard(2);
        ModelAff { t: z2.reduce_mod(&t), m }
    }

    pub fn identity() -> Self {
        ModelAff::new(zero_vec(2), Mat::identity(2))
    }

    pub fn to_iso(&self) -> AffineIso {
        AffineIso::new(self.t.clone(), self.m.clone()).expect("unimodular")
    }

    pub fn compose(&self, o: &ModelAff) -> ModelAff {
        ModelAff::new(vadd(&self.t, &self.m.mul_vec(&o.t)), &self.m * &o.m)
    }

    pub fn inverse(&self) -> ModelAff {
        let mi = self.m.inverse().expect("unimodular");
        ModelAff::new(vneg(&mi.mul_vec(&self.t)), mi)
    }

    /// Equality as an affinity of the model orbifold.
    pub fn same(&self, o: &ModelAff, flavor: Flavor) -> bool {
        let z2 = Lattice::standard(2);
        if self.m == o.m && z2.member(&vsub(&self.t, &o.t)) {
            return true;
        }
        if flavor == Flavor::Pillow
            && self.m == o.m.neg()
            && z2.member(&vadd(&self.t, &o.t))
        {
            return true;
        }
        false
    }

    /// Order as an affinity of the model orbifold, up to `max`.
    pub fn order(&self, flavor: Flavor, max: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=max {
            if p.same(&ModelAff::identity(), flavor) {
                return Some(k);
            }
            p = p.compose(self);
        }
        None
    }

    fn conj_linear(&self, p: &Mat) -> ModelAff {
        let pi = p.inverse().expect("unimodular");
        ModelAff::new(p.mul_vec(&self.t), &(p * &self.m) * &pi)
    }

    fn negate(&self) -> ModelAff {
        ModelAff::new(vneg(&self.t), self.m.neg())
    }
}

/// Exact canonical form of a single affinity or a pair, used as the
/// conjugacy-class key. Equality of forms is equality of classes.
pub type CanonKey = Vec<Rat>;

fn flatten(mats: &[&Mat], vecs: &[&Vector]) -> CanonKey {
    let mut out = Vec::new();
    for m in mats {
        for i in 0..2 {
            for j in 0..2 {
                out.push(m[(i, j)].clone());
            }
        }
    }
    for v in vecs {
        out.extend(v.iter().cloned());
    }
    out
}

/// Reduce x modulo span(w_basis) + lattice, canonically.
fn reduce_mod_subspace_lattice(x: &[Rat], w_basis: &[Vector], lattice: &Lattice) -> Vector {
    let dim = x.len();
    let w = Subspace::from_spanning(dim, w_basis);
    let reduce_w = |v: &[Rat]| -> Vector {
        if w.rank() == 0 {
            return v.to_vec();
        }
        // zero out the pivot coordinates of w's RREF basis
        let mut out = v.to_vec();
        for b in w.basis() {
            let p = b.iter().position(|e| !e.is_zero()).expect("nonzero basis row");
            let c = out[p].clone();
            if !c.is_zero() {
                out = vsub(&out, &vscale(&(&c / &b[p]), b));
            }
        }
        out
    };
    let x1 = reduce_w(x);
    // the lattice pushed into the complement coordinates
    let gens: Vec<Vector> = lattice.basis_vectors().iter().map(|g| reduce_w(g)).collect();
    let l2 = Lattice::from_generators(dim, &gens);
    l2.reduce_mod(&x1)
}

/// Lifts of the six elements of GL(2, F_2), for the translation orbit
/// when both linear parts are +-I.
fn gl2f2_lifts() -> Vec<Mat> {
    vec![
        Mat::identity(2),
        Mat::from_i64(2, 2, &[0, 1, 1, 0]),
        Mat::from_i64(2, 2, &[1, 1, 0, 1]),
        Mat::from_i64(2, 2, &[1, 0, 1, 1]),
        Mat::from_i64(2, 2, &[0, 1, 1, 1]),
        Mat::from_i64(2, 2, &[1, 1, 1, 0]),
    ]
}

fn pm_one(m: &Mat) -> bool {
    m.is_identity() || *m == mat_neg()
}

/// Candidate base changes for a pair with linear closure `h` (not inside
/// {+-I}): anchor every non-central element on its canonical
/// representative and compose with the normalizer of that representative.
/// The resulting set is conjugation-covariant, which makes the minimum
/// key a class invariant.
fn linear_candidates(h: &[Mat]) -> Vec<Mat> {
    let mut out: Vec<Mat> = Vec::new();
    for anchor in h {
        if pm_one(anchor) {
            continue;
        }
        let Ok(class) = gl2z_finite_order_class(anchor) else { continue };
        let u = normalizing_transform(anchor).expect("finite order anchor");
        for p in canonical_normalizer(class) {
            let cand = &p * &u;
            if !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

fn group_closure(gens: &[Mat], bound: usize) -> Result<Vec<Mat>> {
    let mut elems = vec![Mat::identity(2)];
    let mut head = 0;
    while head < elems.len() {
        let cur = elems[head].clone();
        for g in gens {
            let n = &cur * g;
            if !elems.contains(&n) {
                if elems.len() >= bound {
                    return Err(Error::InfiniteOrder);
                }
                elems.push(n);
            }
        }
        head += 1;
    }
    Ok(elems)
}

/// Canonical conjugacy key of an unordered pair of order-<=2 affinities
/// of the model torus or pillow (single elements pass `None`).
pub fn pair_canonical_key(kappa: &ModelAff, lambda: Option<&ModelAff>, flavor: Flavor) -> Result<CanonKey> {
    let single = lambda.is_none();
    let lam = lambda.cloned().unwrap_or_else(ModelAff::identity);

    // closure of the linear parts (plus -I for the pillow quotient)
    let mut gens = vec![kappa.m.clone(), lam.m.clone()];
    if flavor == Flavor::Pillow {
        gens.push(mat_neg());
    }
    let h = group_closure(&gens, 64)?;
    if h.len() > 24 {
        return Err(Error::InfiniteOrder);
    }

    let candidates: Vec<Mat> = if h.iter().all(pm_one) {
        gl2f2_lifts()
    } else {
        linear_candidates(&h)
    };

    let signs: Vec<(bool, bool)> = if flavor == Flavor::Pillow {
        vec![(false, false), (false, true), (true, false), (true, true)]
    } else {
        vec![(false, false)]
    };
    let swaps: Vec<bool> = if single { vec![false] } else { vec![false, true] };

    let mut best: Option<CanonKey> = None;
    for p in &candidates {
        for &(s1, s2) in &signs {
            for &sw in &swaps {
                let mut a = kappa.conj_linear(p);
                let mut b = lam.conj_linear(p);
                if s1 {
                    a = a.negate();
                }
                if s2 {
                    b = b.negate();
                }
                if sw {
                    std::mem::swap(&mut a, &mut b);
                }
                let key = reduced_key(&a, &b, single, flavor);
                if best.as_ref().is_none_or(|k| key < *k) {
                    best = Some(key);
                }
            }
        }
    }
    Ok(best.expect("candidate set nonempty"))
}

/// Reduce the translation pair modulo everything that preserves the class
/// and flatten into a comparable key.
fn reduced_key(a: &ModelAff, b: &ModelAff, single: bool, flavor: Flavor) -> CanonKey {
    let x: Vector = a.t.iter().chain(b.t.iter()).cloned().collect();
    let shift_pair = |v: &Vector| -> Vector {
        let sa = vsub(v, &a.m.mul_vec(v));
        let sb = vsub(v, &b.m.mul_vec(v));
        sa.into_iter().chain(sb).collect()
    };
    let e1 = vec![rat(1), rat(0)];
    let e2 = vec![rat(0), rat(1)];
    let reduced = match flavor {
        Flavor::Torus => {
            // subspace: simultaneous translation conjugation, plus the
            // E1 ∩ E2 deformations of Theorem 26 on either member
            let mut w = vec![shift_pair(&e1), shift_pair(&e2)];
            if !single {
                let mut me = Mat::identity(2);
                for i in 0..2 {
                    for j in 0..2 {
                        me[(i, j)] += a.m[(i, j)].clone();
                    }
                }
                let mut me2 = Mat::identity(2);
                for i in 0..2 {
                    for j in 0..2 {
                        me2[(i, j)] += b.m[(i, j)].clone();
                    }
                }
                let e = Subspace::from_spanning(2, &kernel_basis(&me))
                    .intersect(&Subspace::from_spanning(2, &kernel_basis(&me2)));
                for v in e.basis() {
                    let mut front = v.clone();
                    front.extend(zero_vec(2));
                    let mut back = zero_vec(2);
                    back.extend(v.clone());
                    w.push(front);
                    w.push(back);
                }
            } else {
                // single elements: translation conjugation only, but a
                // torus translation component fixed by the linear part is
                // a genuine modulus only for order-1 data; keep exact
            }
            reduce_mod_subspace_lattice(&x, &w, &Lattice::standard(4))
        }
        Flavor::Pillow => {
            // conjugating translations are half-integral: a lattice, not
            // a subspace
            let mut gens: Vec<Vector> = Lattice::standard(4).basis_vectors();
            gens.push(shift_pair(&vscale(&frac(1, 2), &e1)));
            gens.push(shift_pair(&vscale(&frac(1, 2), &e2)));
            let l = Lattice::from_generators(4, &gens);
            reduce_mod_subspace_lattice(&x, &[], &l)
        }
    };
    let (ta, tb) = (reduced[..2].to_vec(), reduced[2..].to_vec());
    if single {
        flatten(&[&a.m], &[&ta])
    } else {
        flatten(&[&a.m, &b.m], &[&ta, &tb])
    }
}

// ---------------------------------------------------------------------
// Named representatives of the torus and pillow affinity classes.
// ---------------------------------------------------------------------

fn half(x: i64, y: i64) -> Vector {
    vec![frac(x, 2), frac(y, 2)]
}

/// Standard torus affinity for a label from the classification tables.
/// An apostrophe suffix multiplies by h-rot, `^` by v-rot, `"` by 2-sym.
pub fn torus_rep(label: &str) -> Option<ModelAff> {
    let (base, modifier) = split_modifier(label);
    let rep = match base {
        "idt" => ModelAff::new(zero_vec(2), Mat::identity(2)),
        "h-rot" => ModelAff::new(half(1, 0), Mat::identity(2)),
        "v-rot" => ModelAff::new(half(0, 1), Mat::identity(2)),
        "2-sym" => ModelAff::new(half(1, 1), Mat::identity(2)),
        "2-rot" => ModelAff::new(zero_vec(2), mat_neg()),
        "h-ref" => ModelAff::new(zero_vec(2), mat_ca().neg()),
        "v-ref" => ModelAff::new(zero_vec(2), mat_ca()),
        "h-grf" => ModelAff::new(half(1, 0), mat_ca()),
        "v-grf" => ModelAff::new(half(0, 1), mat_ca().neg()),
        "d-ref" => ModelAff::new(zero_vec(2), mat_c()),
        "e-ref" => ModelAff::new(zero_vec(2), mat_c().neg()),
        "4-rot" => ModelAff::new(zero_vec(2), mat_a()),
        "4-sym" => ModelAff::new(half(0, 1), mat_c()),
        "3-aff" => ModelAff::new(zero_vec(2), mat_b2()),
        "6-aff" => ModelAff::new(zero_vec(2), mat_b()),
        "m-aff" => ModelAff::new(zero_vec(2), &mat_c() * &mat_b()),
        "n-aff" => ModelAff::new(zero_vec(2), &mat_c() * &mat_b2()),
        _ => return None,
    };
    Some(apply_modifier(rep, modifier, Flavor::Torus))
}

/// Standard pillow affinity for a label; a `'` suffix multiplies by the
/// central halfturn c-rot.
pub fn pillow_rep(label: &str) -> Option<ModelAff> {
    let (base, modifier) = split_modifier(label);
    let rep = match base {
        "idt" => ModelAff::new(zero_vec(2), Mat::identity(2)),
        "m-rot" => ModelAff::new(half(1, 0), Mat::identity(2)),
        "c-rot" => ModelAff::new(half(1, 1), Mat::identity(2)),
        "c-ref" => ModelAff::new(zero_vec(2), mat_ca().neg()),
        "m-ref" => ModelAff::new(half(1, 0), mat_ca().neg()),
        "2-sym" => ModelAff::new(half(1, 1), mat_ca().neg()),
        "d-ref" => ModelAff::new(zero_vec(2), mat_c()),
        "d-rot" => ModelAff::new(zero_vec(2), mat_a()),
        "3-aff" => ModelAff::new(zero_vec(2), mat_b()),
        "2-aff" => ModelAff::new(zero_vec(2), &mat_c() * &mat_b()),
        "4-rot" => ModelAff::new(half(1, 0), mat_a()),
        "4-sym" => ModelAff::new(half(1, 0), mat_c()),
        _ => return None,
    };
    Some(apply_modifier(rep, modifier, Flavor::Pillow))
}

fn split_modifier(label: &str) -> (&str, Option<char>) {
    for m in ['\'', '^', '"'] {
        if let Some(stripped) = label.strip_suffix(m) {
            return (stripped, Some(m));
        }
    }
    (label, None)
}

fn apply_modifier(rep: ModelAff, modifier: Option<char>, flavor: Flavor) -> ModelAff {
    let Some(m) = modifier else { return rep };
    let twist = match (flavor, m) {
        (Flavor::Torus, '\'') => ModelAff::new(half(1, 0), Mat::identity(2)),
        (Flavor::Torus, '^') => ModelAff::new(half(0, 1), Mat::identity(2)),
        (Flavor::Torus, '"') => ModelAff::new(half(1, 1), Mat::identity(2)),
        (Flavor::Pillow, '\'') => ModelAff::new(half(1, 1), Mat::identity(2)),
        _ => ModelAff::identity(),
    };
    twist.compose(&rep)
}

/// The printed class lists: inverse-pair classes for an infinite cyclic
/// quotient and order-<=2 pairs for an infinite dihedral quotient.
pub fn class_labels(flavor: Flavor, dihedral: bool) -> Vec<&'static str> {
    match (flavor, dihedral) {
        (Flavor::Torus, false) => {
            vec!["idt", "2-rot", "h-ref", "d-ref", "3-aff", "4-rot", "6-aff"]
        }
        (Flavor::Torus, true) => vec![
            "idt,idt", "idt,h-rot", "idt,2-rot", "idt,v-ref", "idt,h-grf", "idt,d-ref",
            "h-rot,h-rot", "2-rot,2-rot", "v-ref,v-ref", "h-grf,h-grf", "d-ref,d-ref",
            "h-rot,v-rot", "h-rot,2-rot", "h-rot,v-ref", "v-rot,v-ref", "2-sym,v-ref",
            "h-rot,h-grf", "v-rot,h-grf", "2-sym,h-grf^", "v-rot,d-ref", "2-sym,d-ref",
            "2-rot,v-ref", "2-rot,h-grf", "2-rot,d-ref", "v-ref,h-ref", "v-ref,h-grf",
            "h-ref',h-grf", "h-ref,d-ref", "h-grf^,v-grf'", "h-grf,d-ref", "d-ref,e-ref",
            "d-ref,n-aff", "m-aff,e-ref", "d-ref,m-aff",
        ],
        (Flavor::Pillow, false) => vec![
            "idt", "m-rot", "c-ref", "m-ref", "2-sym", "d-ref", "d-rot", "3-aff", "4-rot",
            "4-sym",
        ],
        (Flavor::Pillow, true) => vec![
            "idt,idt", "idt,m-rot", "idt,c-ref", "idt,m-ref", "idt,2-sym", "idt,d-ref",
            "idt,d-rot", "m-rot,m-rot", "c-ref,c-ref", "m-ref,m-ref", "2-sym,2-sym",
            "d-ref,d-ref", "d-rot,d-rot", "c-rot,m-rot", "c-rot,c-ref", "c-rot,m-ref",
            "c-rot,2-sym", "c-rot,d-ref", "c-rot,d-rot", "m-rot,c-ref", "m-rot,m-ref",
            "m-rot',m-ref", "m-rot',2-sym", "m-rot,d-ref", "m-rot,d-rot", "c-ref,m-ref",
            "c-ref,2-sym", "c-ref,d-ref", "c-ref,d-rot", "m-ref,m-ref'", "m-ref,2-sym",
            "m-ref,d-ref", "m-ref,d-rot", "2-sym,d-ref", "2-sym,d-rot'", "d-ref,d-ref'",
            "d-ref,d-rot", "d-ref,d-rot'", "d-rot,d-rot'", "d-ref,2-aff",
        ],
    }
}

fn rep_for(flavor: Flavor, label: &str) -> Option<ModelAff> {
    match flavor {
        Flavor::Torus => torus_rep(label),
        Flavor::Pillow => pillow_rep(label),
    }
}

/// Canonical key of a labelled class.
fn key_of_label(flavor: Flavor, dihedral: bool, label: &str) -> Result<CanonKey> {
    if dihedral {
        let (l1, l2) = label.split_once(',').expect("pair label");
        let a = rep_for(flavor, l1).ok_or_else(|| Error::Unsupported(format!("label {l1}")))?;
        let b = rep_for(flavor, l2).ok_or_else(|| Error::Unsupported(format!("label {l2}")))?;
        pair_canonical_key(&a, Some(&b), flavor)
    } else {
        let a = rep_for(flavor, label).ok_or_else(|| Error::Unsupported(format!("label {label}")))?;
        let k1 = pair_canonical_key(&a, None, flavor)?;
        let k2 = pair_canonical_key(&a.inverse(), None, flavor)?;
        Ok(k1.min(k2))
    }
}

struct ClassTable {
    entries: Vec<(String, CanonKey)>,
}

fn class_table(flavor: Flavor, dihedral: bool) -> &'static ClassTable {
    static TABLES: OnceLock<[ClassTable; 4]> = OnceLock::new();
    let idx = match (flavor, dihedral) {
        (Flavor::Torus, false) => 0,
        (Flavor::Torus, true) => 1,
        (Flavor::Pillow, false) => 2,
        (Flavor::Pillow, true) => 3,
    };
    &TABLES.get_or_init(|| {
        let build = |flavor: Flavor, dihedral: bool| -> ClassTable {
            let entries = class_labels(flavor, dihedral)
                .into_iter()
                .map(|l| (l.to_string(), key_of_label(flavor, dihedral, l).expect("table rep")))
                .collect();
            ClassTable { entries }
        };
        [
            build(Flavor::Torus, false),
            build(Flavor::Torus, true),
            build(Flavor::Pillow, false),
            build(Flavor::Pillow, true),
        ]
    })[idx]
}

/// The distinct classes of the enumeration theorems: 7/34 for the torus
/// and 10/40 for the pillow.
pub fn enumerate_pair_classes(flavor: Flavor, dihedral: bool) -> Vec<String> {
    let t = class_table(flavor, dihedral);
    // the table is only valid if the canonical keys are pairwise distinct
    for (i, (la, ka)) in t.entries.iter().enumerate() {
        for (lb, kb) in t.entries.iter().skip(i + 1) {
            assert_ne!(ka, kb, "classes {la} and {lb} collide");
        }
    }
    t.entries.iter().map(|(l, _)| l.clone()).collect()
}

/// Canonical label of an inverse-pair class (cyclic quotient).
pub fn cyclic_class(flavor: Flavor, g: &ModelAff) -> Result<String> {
    let k1 = pair_canonical_key(g, None, flavor)?;
    let k2 = pair_canonical_key(&g.inverse(), None, flavor)?;
    let key = k1.min(k2);
    lookup(flavor, false, &key)
}

/// Canonical label of an order-<=2 pair class (dihedral quotient).
pub fn pair_class(flavor: Flavor, a: &ModelAff, b: &ModelAff) -> Result<String> {
    let key = pair_canonical_key(a, Some(b), flavor)?;
    lookup(flavor, true, &key)
}

fn lookup(flavor: Flavor, dihedral: bool, key: &CanonKey) -> Result<String> {
    let t = class_table(flavor, dihedral);
    t.entries
        .iter()
        .find(|(_, k)| k == key)
        .map(|(l, _)| l.clone())
        .ok_or_else(|| Error::Unsupported("affinity class outside the catalogued lists".into()))
}

/// Canonical label of an order-<=2 pair of torus affinities.
pub fn torus_pair_class(a: &ModelAff, b: &ModelAff) -> Result<String> {
    pair_class(Flavor::Torus, a, b)
}

/// Canonical label of an order-<=2 pair of pillow affinities.
pub fn pillow_pair_class(a: &ModelAff, b: &ModelAff) -> Result<String> {
    pair_class(Flavor::Pillow, a, b)
}

/// Lemma-54-style label of a single order-<=2 torus affinity (the one
/// place the h-rot / v-rot distinction is collapsed by conjugacy).
pub fn torus_order2_class(g: &ModelAff) -> Result<String> {
    let cls = gl2z_finite_order_class(&g.m)?;
    let z2 = Lattice::standard(2);
    Ok(match cls {
        ConjClass::I => {
            if z2.member(&g.t) {
                "idt".into()
            } else if z2.member(&vadd(&g.t, &g.t)) {
                "h-rot".into()
            } else {
                return Err(Error::InfiniteOrder);
            }
        }
        ConjClass::NegI => "2-rot".into(),
        ConjClass::CA => {
            // v-ref has fixed points on the torus, h-grf does not
            let mut a = Mat::identity(2);
            for i in 0..2 {
                for j in 0..2 {
                    a[(i, j)] -= g.m[(i, j)].clone();
                }
            }
            if crate::exact::solve_affine_mod_lattice(&a, &g.t, &z2).is_some() {
                "v-ref".into()
            } else {
                "h-grf".into()
            }
        }
        ConjClass::C => "d-ref".into(),
        ConjClass::B2 => "3-aff".into(),
        ConjClass::A => "4-rot".into(),
        ConjClass::B => "6-aff".into(),
    })
}

// ---------------------------------------------------------------------
// Classifying pairs of codimension-1 fibrations, and the extension
// builder.
// ---------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DeltaKind {
    Cyclic,
    Dihedral,
}

impl DeltaKind {
    pub fn label(&self) -> &'static str {
        match self {
            DeltaKind::Cyclic => "cyclic",
            DeltaKind::Dihedral => "dihedral",
        }
    }
}

/// The classifying datum of a codimension-1 fibration: the quotient kind,
/// the induced fiber affinities of the lifted generator(s) in fiber
/// coordinates, their invariants, a canonical label (full labels over
/// 1-orbifold, torus and pillow fibers), and the E1 ∩ E2 eigenspace of
/// Theorem 26.
#[derive(Clone, Debug)]
pub struct ClassifyingPair {
    pub kind: DeltaKind,
    pub fiber: OrbifoldType,
    pub members: Vec<AffineIso>,
    pub label: Option<String>,
    /// per member: (order of the induced fiber map, orientation
    /// preserving, has fixed point on the fiber)
    pub invariants: Vec<(usize, bool, bool)>,
    pub e_dim: usize,
}

/// Map from fiber coordinates (V-basis coordinates) onto the standard
/// model of the fiber group: lattice to Z^2, and for a pillow fiber the
/// halfturn centered at the origin.
fn fiber_model_map(n_on_v: &GroupData2) -> Result<AffineIso> {
    let t = Mat::from_rows(n_on_v.lattice_basis.clone()).transpose();
    let tinv = t.inverse().expect("full rank fiber lattice");
    let mut shift = zero_vec(2);
    if let Some(v) = &n_on_v.halfturn_translation {
        // solve 2x = v: recenter the halfturn at the origin
        shift = vscale(&frac(-1, 2), v);
    }
    let translate = AffineIso::translation(shift);
    let linear = AffineIso::new(zero_vec(2), tinv).expect("invertible");
    Ok(linear.compose(&translate))
}

/// The small slice of fiber-group data the model map needs.
struct GroupData2 {
    lattice_basis: Vec<Vector>,
    halfturn_translation: Option<Vector>,
}

use crate::spacegroup::GroupData;

fn fiber_data2(n_on_v: &GroupData) -> Result<GroupData2> {
    if n_on_v.dim() != 2 {
        return Err(Error::FiberTooLarge);
    }
    let mut halfturn = None;
    for (b, v) in n_on_v.cosets() {
        if *b == mat_neg() {
            halfturn = Some(v.clone());
        }
    }
    Ok(GroupData2 { lattice_basis: n_on_v.lattice().basis_vectors(), halfturn_translation: halfturn })
}

fn induced_order(n_on_v: &GroupData, g: &AffineIso, max: usize) -> Option<usize> {
    let mut p = g.clone();
    for k in 1..=max {
        if n_on_v.contains(&p) {
            return Some(k);
        }
        p = p.compose(g);
    }
    None
}

/// Classifying pair of a codimension-1 complete normal subgroup, per the
/// HNN / Coxeter dichotomy on the quotient.
pub fn classifying_pair(a: &NormalAnalysis) -> Result<ClassifyingPair> {
    if a.v().rank() + 1 != a.parent().dim() {
        return Err(Error::Unsupported("requires a codimension-1 fiber".into()));
    }
    if !a.is_complete() {
        return Err(Error::Unsupported("N is not complete".into()));
    }
    let base = one_orb_type(&a.base_quotient_group()?)?;
    let kind = match base {
        OneOrbType::O => DeltaKind::Cyclic,
        OneOrbType::I => DeltaKind::Dihedral,
    };
    let n_on_v = a.fiber_group()?;
    let fiber = match n_on_v.dim() {
        1 => OrbifoldType::OneOrb(one_orb_type(&n_on_v)?),
        2 => OrbifoldType::Wallpaper(crate::fibration::wallpaper_type(&n_on_v)?),
        _ => return Err(Error::FiberTooLarge),
    };
    let s = a.structure().expect("complete");
    if !s.finite {
        return Err(Error::Unsupported("infinite structure group".into()));
    }
    let member_indices: Vec<usize> = match kind {
        DeltaKind::Cyclic => {
            let i = crate::splitting::lift_cyclic_generator(a)?
                .ok_or_else(|| Error::Unsupported("no generator lift (Theorem 27)".into()))?;
            vec![i]
        }
        DeltaKind::Dihedral => {
            let (i, j) = crate::splitting::lift_coxeter_generators(a)?
                .ok_or_else(|| Error::Unsupported("no Coxeter lift (Theorem 28)".into()))?;
            vec![i, j]
        }
    };
    let mut members = Vec::new();
    let mut invariants = Vec::new();
    for &i in &member_indices {
        let (fv, _) = a.actions_of(&s.reps[i])?;
        let order = induced_order(&n_on_v, &fv, 24).ok_or(Error::InfiniteOrder)?;
        let orient = crate::fibration::fiber_orientation_class(&n_on_v, &fv);
        let fix = crate::fibration::fiber_map_has_fixed_point(&n_on_v, &fv)?;
        members.push(fv);
        invariants.push((order, orient, fix));
    }
    // E_i = (-1)-eigenspace of the fiber linear part restricted to
    // Span(Z(N)); intersect over the dihedral pair
    let d = n_on_v.dim();
    let n_center = fiber_center_span(&n_on_v);
    let e_dim = match kind {
        DeltaKind::Cyclic => 0,
        DeltaKind::Dihedral => {
            let mut e = n_center;
            for m in &members {
                let mut k = Mat::identity(d);
                for i in 0..d {
                    for j in 0..d {
                        k[(i, j)] += m.lin()[(i, j)].clone();
                    }
                }
                e = e.intersect(&Subspace::from_spanning(d, &kernel_basis(&k)));
            }
            e.rank()
        }
    };
    let label = match fiber {
        OrbifoldType::OneOrb(_) => {
            // a 1-orbifold fiber: the outer automorphism group has order
            // 2, so members classify as identity / halfturn / reflection
            let one_d = |g: &AffineIso| -> &'static str {
                if g.lin()[(0, 0)] == rat(-1) {
                    "ref"
                } else if n_on_v.contains(g) {
                    "idt"
                } else {
                    "2-rot"
                }
            };
            Some(match kind {
                // for the HNN case only the outer class matters
                DeltaKind::Cyclic => {
                    if members[0].lin()[(0, 0)] == rat(-1) { "ref".into() } else { "idt".into() }
                }
                DeltaKind::Dihedral => {
                    let mut pair = [one_d(&members[0]), one_d(&members[1])];
                    pair.sort();
                    pair.join(",")
                }
            })
        }
        OrbifoldType::Wallpaper(w) if w == WallpaperType::P1 || w == WallpaperType::P2 => {
            let flavor = if w == WallpaperType::P1 { Flavor::Torus } else { Flavor::Pillow };
            let phi = fiber_model_map(&fiber_data2(&n_on_v)?)?;
            let to_model = |g: &AffineIso| -> ModelAff {
                let c = phi.compose(g).compose(&phi.inverse());
                ModelAff::new(c.trans().clone(), c.lin().clone())
            };
            Some(match kind {
                DeltaKind::Cyclic => cyclic_class(flavor, &to_model(&members[0]))?,
                DeltaKind::Dihedral => {
                    pair_class(flavor, &to_model(&members[0]), &to_model(&members[1]))?
                }
            })
        }
        _ => None,
    };
    Ok(ClassifyingPair { kind, fiber, members, label, invariants, e_dim })
}

fn fiber_center_span(n_on_v: &GroupData) -> Subspace {
    let d = n_on_v.dim();
    let mut stacked = Mat::zero(0, d);
    for b in n_on_v.point_group() {
        let mut bm = b.clone();
        for i in 0..d {
            bm[(i, i)] -= Rat::one();
        }
        stacked = stacked.vstack(&bm);
    }
    Subspace::from_spanning(d, &kernel_basis(&stacked))
}

/// Theorem-18 extension builder: from an m-space group M and fiber
/// affinities (one of finite outer order for a cyclic quotient, two of
/// induced order <= 2 for a dihedral quotient), build the unique
/// (m+1)-space group containing M (extended trivially) as a complete
/// normal subgroup realizing that gluing. Returns the group and the
/// extended generators of N.
pub fn build_extension(
    m: &SpaceGroup,
    kind: DeltaKind,
    affinities: &[AffineIso],
) -> Result<(SpaceGroup, Vec<AffineIso>)> {
    let d = m.dim();
    match kind {
        DeltaKind::Cyclic => {
            if affinities.len() != 1 {
                return Err(Error::Unsupported("cyclic gluing takes one affinity".into()));
            }
        }
        DeltaKind::Dihedral => {
            if affinities.len() != 2 {
                return Err(Error::Unsupported("dihedral gluing takes two affinities".into()));
            }
        }
    }
    for phi in affinities {
        if phi.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: phi.dim() });
        }
        // must normalize M
        for g in m.gens() {
            if !m.contains(&g.conjugate_by(phi)) || !m.contains(&g.conjugate_by(&phi.inverse())) {
                return Err(Error::Unsupported("affinity does not normalize the fiber group".into()));
            }
        }
        if kind == DeltaKind::Dihedral && !m.contains(&phi.compose(phi)) {
            return Err(Error::Unsupported("dihedral gluing needs induced order <= 2".into()));
        }
    }
    let extend = |g: &AffineIso, last_t: Rat, last_l: i64| -> AffineIso {
        let mut t = g.trans().clone();
        t.push(last_t);
        let mut lin = Mat::zero(d + 1, d + 1);
        for i in 0..d {
            for j in 0..d {
                lin[(i, j)] = g.lin()[(i, j)].clone();
            }
        }
        lin[(d, d)] = rat(last_l);
        AffineIso::new(t, lin).expect("invertible")
    };
    let n_gens: Vec<AffineIso> = m.gens().iter().map(|g| extend(g, Rat::zero(), 1)).collect();
    let mut gens = n_gens.clone();
    match kind {
        DeltaKind::Cyclic => gens.push(extend(&affinities[0], Rat::one(), 1)),
        DeltaKind::Dihedral => {
            gens.push(extend(&affinities[0], Rat::zero(), -1));
            gens.push(extend(&affinities[1], Rat::one(), -1));
        }
    }
    let gamma = SpaceGroup::build(d + 1, &gens)?;
    // N must come back complete
    let analysis = crate::normal::analyze(&gamma, &n_gens)?;
    if !analysis.is_complete() {
        return Err(Error::Unsupported("extension did not leave the fiber complete".into()));
    }
    Ok((gamma, n_gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2z_class_examples() {
        assert_eq!(gl2z_finite_order_class(&mat_a()).unwrap(), ConjClass::A);
        assert_eq!(gl2z_finite_order_class(&mat_ca()).unwrap(), ConjClass::CA);
        assert_eq!(gl2z_finite_order_class(&mat_c()).unwrap(), ConjClass::C);
        assert_eq!(gl2z_finite_order_class(&mat_b()).unwrap(), ConjClass::B);
        assert_eq!(gl2z_finite_order_class(&mat_b2()).unwrap(), ConjClass::B2);
        assert_eq!(gl2z_finite_order_class(&Mat::identity(2)).unwrap(), ConjClass::I);
        assert_eq!(gl2z_finite_order_class(&mat_neg()).unwrap(), ConjClass::NegI);
        assert!(matches!(
            gl2z_finite_order_class(&Mat::from_i64(2, 2, &[2, 0, 0, 1])),
            Err(Error::NotUnimodular)
        ));
        assert!(matches!(
            gl2z_finite_order_class(&Mat::from_i64(2, 2, &[1, 1, 0, 1])),
            Err(Error::InfiniteOrder)
        ));
    }

    #[test]
    fn normalization_reaches_representatives() {
        // conjugate each representative by assorted unimodular matrices and
        // check the normalizer brings it back
        let conjs = [
            Mat::from_i64(2, 2, &[1, 1, 0, 1]),
            Mat::from_i64(2, 2, &[1, 0, -2, 1]),
            Mat::from_i64(2, 2, &[2, 1, 1, 1]),
            Mat::from_i64(2, 2, &[3, -2, 1, -1]),
        ];
        for class in [ConjClass::NegI, ConjClass::CA, ConjClass::C, ConjClass::B2, ConjClass::A, ConjClass::B] {
            let r = class.representative();
            for p in &conjs {
                let pi = p.inverse().unwrap();
                let k = &(p * &r) * &pi;
                let u = normalizing_transform(&k).unwrap();
                assert_eq!(&(&u * &k) * &u.inverse().unwrap(), r, "{class:?}");
            }
        }
    }

    #[test]
    fn torus_order2_labels() {
        let h = torus_rep("h-rot").unwrap();
        assert_eq!(torus_order2_class(&h).unwrap(), "h-rot");
        let two = torus_rep("2-rot").unwrap();
        assert_eq!(torus_order2_class(&two).unwrap(), "2-rot");
        let v = torus_rep("v-ref").unwrap();
        assert_eq!(torus_order2_class(&v).unwrap(), "v-ref");
        let g = torus_rep("h-grf").unwrap();
        assert_eq!(torus_order2_class(&g).unwrap(), "h-grf");
        let d = torus_rep("d-ref").unwrap();
        assert_eq!(torus_order2_class(&d).unwrap(), "d-ref");
        // (1/2, 0) + I is h-rot; (0,0) + (-I) is 2-rot (Lemma 54 cases)
        let vrot = torus_rep("v-rot").unwrap();
        assert_eq!(torus_order2_class(&vrot).unwrap(), "h-rot");
    }

    #[test]
    fn amalgam_subgroup_orders() {
        // the two maximal finite subgroups of GL(2,Z) and their common
        // dihedral subgroup of order 4
        let square = group_closure(&[mat_a(), mat_c()], 32).unwrap();
        assert_eq!(square.len(), 8);
        let hex = group_closure(&[mat_b(), mat_c()], 32).unwrap();
        assert_eq!(hex.len(), 12);
        let meet: Vec<&Mat> = square.iter().filter(|m| hex.contains(m)).collect();
        assert_eq!(meet.len(), 4);
        assert!(meet.contains(&&mat_neg()) && meet.contains(&&mat_c()));
        // representative orders inside them: A and CA in the square part,
        // B and B^2 in the hexagonal part, C in both
        assert!(square.contains(&mat_ca()) && !hex.contains(&mat_ca()));
        assert!(hex.contains(&mat_b2()) && !square.contains(&mat_b2()));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_pair_classes(Flavor::Torus, false).len(), 7);
        assert_eq!(enumerate_pair_classes(Flavor::Torus, true).len(), 34);
        assert_eq!(enumerate_pair_classes(Flavor::Pillow, false).len(), 10);
        assert_eq!(enumerate_pair_classes(Flavor::Pillow, true).len(), 40);
    }

    #[test]
    fn pair_class_examples() {
        // two independent half-translations form the K2 pair
        let hrot = torus_rep("h-rot").unwrap();
        let vrot = torus_rep("v-rot").unwrap();
        assert_eq!(pair_class(Flavor::Torus, &hrot, &vrot).unwrap(), "h-rot,v-rot");
        let sym = torus_rep("2-sym").unwrap();
        assert_eq!(pair_class(Flavor::Torus, &sym, &hrot).unwrap(), "h-rot,v-rot");
        // {C*, (CA)*} = {d-ref, h-ref} (Lemma 55(4) with zero offsets)
        let dref = torus_rep("d-ref").unwrap();
        let href = torus_rep("h-ref").unwrap();
        let vref = torus_rep("v-ref").unwrap();
        assert_eq!(pair_class(Flavor::Torus, &dref, &href).unwrap(), "h-ref,d-ref");
        assert_eq!(pair_class(Flavor::Torus, &dref, &vref).unwrap(), "h-ref,d-ref");
        assert_eq!(pair_class(Flavor::Torus, &dref, &torus_rep("h-grf").unwrap()).unwrap(), "h-grf,d-ref");
        // {C*, (CB)*} = {d-ref, m-aff} (Lemma 55(6))
        let maff = torus_rep("m-aff").unwrap();
        assert_eq!(pair_class(Flavor::Torus, &dref, &maff).unwrap(), "d-ref,m-aff");
    }

    #[test]
    fn pair_class_conjugation_invariant() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(11);
        let samples = [
            ("v-ref", "h-grf"),
            ("2-rot", "d-ref"),
            ("h-rot", "v-ref"),
            ("d-ref", "n-aff"),
            ("m-aff", "e-ref"),
            ("2-rot", "2-rot"),
            ("h-grf^", "v-grf'"),
        ];
        for (l1, l2) in samples {
            let a = torus_rep(l1).unwrap();
            let b = torus_rep(l2).unwrap();
            let expect = pair_class(Flavor::Torus, &a, &b).unwrap();
            for _ in 0..50 {
                // random normalizer element of the torus group: any affinity
                let mut u = Mat::identity(2);
                for _ in 0..4 {
                    let k = rng.random_range(-2i64..=2);
                    u = &u * &Mat::from_i64(2, 2, &[1, k, 0, 1]);
                    if rng.random_bool(0.4) {
                        u = &u * &mat_c();
                    }
                }
                let t = vec![
                    frac(rng.random_range(-6i64..=6), rng.random_range(1i64..=4)),
                    frac(rng.random_range(-6i64..=6), rng.random_range(1i64..=4)),
                ];
                let phi = ModelAff::new(t, u);
                let ca = phi.compose(&a).compose(&phi.inverse());
                let cb = phi.compose(&b).compose(&phi.inverse());
                assert_eq!(pair_class(Flavor::Torus, &ca, &cb).unwrap(), expect, "{l1},{l2}");
            }
        }
    }

    #[test]
    fn pillow_classes() {
        let mrot = pillow_rep("m-rot").unwrap();
        let crot = pillow_rep("c-rot").unwrap();
        assert_eq!(cyclic_class(Flavor::Pillow, &mrot).unwrap(), "m-rot");
        assert_eq!(cyclic_class(Flavor::Pillow, &crot).unwrap(), "m-rot");
        assert_eq!(pair_class(Flavor::Pillow, &crot, &mrot).unwrap(), "c-rot,m-rot");
        let fourrot = pillow_rep("4-rot").unwrap();
        assert_eq!(cyclic_class(Flavor::Pillow, &fourrot).unwrap(), "4-rot");
        assert_eq!(cyclic_class(Flavor::Pillow, &fourrot.inverse()).unwrap(), "4-rot");
        let dref = pillow_rep("d-ref").unwrap();
        let twoaff = pillow_rep("2-aff").unwrap();
        assert_eq!(pair_class(Flavor::Pillow, &dref, &twoaff).unwrap(), "d-ref,2-aff");
    }

    #[test]
    fn brute_force_conjugacy_oracle_agrees() {
        // all finite-order matrices with entries in [-3, 3]: the classifier
        // must agree with a direct conjugacy search (conjugators bounded
        // by 5) against the seven representatives.
        type M = [i64; 4];
        let mul = |x: M, y: M| -> M {
            [
                x[0] * y[0] + x[1] * y[2],
                x[0] * y[1] + x[1] * y[3],
                x[2] * y[0] + x[3] * y[2],
                x[2] * y[1] + x[3] * y[3],
            ]
        };
        let inv = |x: M| -> M {
            let d = x[0] * x[3] - x[1] * x[2];
            [x[3] / d, -x[1] / d, -x[2] / d, x[0] / d]
        };
        let as_small = |m: &Mat| -> M {
            let g = |i, j| -> i64 { m[(i, j)].numer().to_string().parse().unwrap() };
            [g(0, 0), g(0, 1), g(1, 0), g(1, 1)]
        };
        let reps = [
            ConjClass::I,
            ConjClass::NegI,
            ConjClass::CA,
            ConjClass::C,
            ConjClass::B2,
            ConjClass::A,
            ConjClass::B,
        ];
        let rep_small: Vec<M> = reps.iter().map(|r| as_small(&r.representative())).collect();
        let mut conjugators: Vec<(M, M)> = Vec::new();
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                for c in -5i64..=5 {
                    for d in -5i64..=5 {
                        if (a * d - b * c).abs() == 1 {
                            let p = [a, b, c, d];
                            conjugators.push((p, inv(p)));
                        }
                    }
                }
            }
        }
        let mut count = 0usize;
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    for d in -3i64..=3 {
                        if (a * d - b * c).abs() != 1 {
                            continue;
                        }
                        let k = Mat::from_i64(2, 2, &[a, b, c, d]);
                        let Ok(class) = gl2z_finite_order_class(&k) else {
                            continue;
                        };
                        count += 1;
                        let ks = [a, b, c, d];
                        let brute: Vec<ConjClass> = reps
                            .iter()
                            .copied()
                            .zip(&rep_small)
                            .filter(|(_, rm)| {
                                conjugators.iter().any(|(p, pi)| mul(mul(*p, ks), *pi) == **rm)
                            })
                            .map(|(r, _)| r)
                            .collect();
                        assert_eq!(brute, vec![class], "matrix {k:?}");
                    }
                }
            }
        }
        assert_eq!(count, 72, "census of finite-order matrices with entries in [-3,3]");
    }

    #[test]
    fn build_extension_trivial_product() {
        // M x <translation>: trivial structure group
        let m = SpaceGroup::build(
            2,
            &[
                AffineIso::translation(vec![rat(1), rat(0)]),
                AffineIso::translation(vec![rat(0), rat(1)]),
            ],
        )
        .unwrap();
        let (gamma, n_gens) =
            build_extension(&m, DeltaKind::Cyclic, &[AffineIso::identity(2)]).unwrap();
        assert_eq!(gamma.dim(), 3);
        let a = crate::normal::analyze(&gamma, &n_gens).unwrap();
        assert!(a.is_complete());
        assert_eq!(a.structure().unwrap().order(), 1);
    }

    #[test]
    fn build_extension_it76_style() {
        // torus fiber, cyclic gluing by 4-rot: structure C4, quotient 442
        let m = SpaceGroup::build(
            2,
            &[
                AffineIso::translation(vec![rat(1), rat(0)]),
                AffineIso::translation(vec![rat(0), rat(1)]),
            ],
        )
        .unwrap();
        let rot = AffineIso::linear(mat_a()).unwrap();
        let (gamma, n_gens) = build_extension(&m, DeltaKind::Cyclic, &[rot]).unwrap();
        let a = crate::normal::analyze(&gamma, &n_gens).unwrap();
        assert!(a.is_complete() && a.dual_exists());
        let s = a.structure().unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.kind, crate::normal::GroupKind::Cyclic(4));
        let cp = classifying_pair(&a).unwrap();
        assert_eq!(cp.kind, DeltaKind::Cyclic);
        assert_eq!(cp.label.as_deref(), Some("4-rot"));
        assert_eq!(cp.e_dim, 0);
        let report = crate::fibration::fibration_report(&a).unwrap();
        assert_eq!(report.fiber, crate::fibration::OrbifoldType::Wallpaper(WallpaperType::P1));
        assert_eq!(
            report.quotient_fiber,
            crate::fibration::OrbifoldType::Wallpaper(WallpaperType::P4)
        );
        assert_eq!(report.base, crate::fibration::OrbifoldType::OneOrb(OneOrbType::O));
    }
}
