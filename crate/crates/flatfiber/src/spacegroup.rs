//! Finite descriptions of crystallographic groups and their subgroups:
//! point group closure, Schreier-generator translation lattices, vector
//! systems, and membership/center/Betti queries.

use crate::exact::{kernel_basis, vsub, Lattice, Mat, Rat, Vector};
use crate::isometry::{invariant_gram, AffineIso, GramForm, Subspace};
use crate::{Error, Result};
use num_traits::One;
use std::collections::BTreeMap;

/// Default cap on the point-group closure; real crystallographic point
/// groups in dim <= 4 are far smaller, so hitting the cap means the input
/// is not crystallographic.
pub const DEFAULT_POINT_GROUP_BOUND: usize = 10_000;

/// The closure bound in effect: the FLATFIBER_POINTGROUP_BOUND
/// environment variable overrides the default.
pub fn point_group_bound() -> usize {
    static BOUND: std::sync::OnceLock<usize> = std::sync::OnceLock::new();
    *BOUND.get_or_init(|| {
        std::env::var("FLATFIBER_POINTGROUP_BOUND")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_POINT_GROUP_BOUND)
    })
}

/// A group of affine isometries described by its (finite) point group,
/// one chosen translation representative per point-group element, and its
/// translation lattice. The lattice may have rank < dim for subgroups.
#[derive(Clone, Debug)]
pub struct GroupData {
    dim: usize,
    gens: Vec<AffineIso>,
    /// point-group elements in discovery order; index 0 is the identity
    point_group: Vec<Mat>,
    index: BTreeMap<Mat, usize>,
    /// canonical vector-system representative per point-group element,
    /// reduced into the fundamental cell of the lattice
    vector_system: Vec<Vector>,
    /// one witness word (as a group element) per point-group element
    words: Vec<AffineIso>,
    lattice: Lattice,
}

impl GroupData {
    /// Closure of the generators: point group by BFS over linear parts,
    /// vector system from BFS words, translation lattice from Schreier
    /// generators. Works for subgroups (lattice rank may be < dim).
    pub fn build(dim: usize, gens: &[AffineIso], bound: usize) -> Result<GroupData> {
        for g in gens {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.dim() });
            }
        }
        let mut step: Vec<AffineIso> = gens.to_vec();
        step.extend(gens.iter().map(AffineIso::inverse));

        let mut point_group = vec![Mat::identity(dim)];
        let mut words = vec![AffineIso::identity(dim)];
        let mut index = BTreeMap::new();
        index.insert(Mat::identity(dim), 0usize);
        let mut head = 0;
        while head < point_group.len() {
            let w = words[head].clone();
            for g in &step {
                let cand = w.compose(g);
                if !index.contains_key(cand.lin()) {
                    if point_group.len() >= bound {
                        return Err(Error::PointGroupNotFinite(bound));
                    }
                    index.insert(cand.lin().clone(), point_group.len());
                    point_group.push(cand.lin().clone());
                    words.push(cand);
                }
            }
            head += 1;
        }

        // Schreier generators of the translation subgroup
        let mut translations: Vec<Vector> = Vec::new();
        for w in &words {
            for g in &step {
                let h = w.compose(g);
                let rep = &words[index[h.lin()]];
                let s = h.compose(&rep.inverse());
                debug_assert!(s.lin().is_identity());
                translations.push(s.trans().clone());
            }
        }
        let lattice = Lattice::from_generators(dim, &translations);
        let vector_system = words.iter().map(|w| lattice.reduce_mod(w.trans())).collect();

        Ok(GroupData { dim, gens: gens.to_vec(), point_group, index, vector_system, words, lattice })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[AffineIso] {
        &self.gens
    }

    pub fn point_group(&self) -> &[Mat] {
        &self.point_group
    }

    pub fn point_group_order(&self) -> usize {
        self.point_group.len()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn has_linear_part(&self, b: &Mat) -> bool {
        self.index.contains_key(b)
    }

    /// Canonical translation representative of the coset of `b`.
    pub fn vector_rep(&self, b: &Mat) -> Option<&Vector> {
        self.index.get(b).map(|&i| &self.vector_system[i])
    }

    /// The canonical element v(b) + b of the coset of `b`.
    pub fn coset_rep(&self, b: &Mat) -> Option<AffineIso> {
        let v = self.vector_rep(b)?;
        Some(AffineIso::new(v.clone(), b.clone()).expect("point group is invertible"))
    }

    /// A BFS word for `b` (an actual group element with linear part `b`).
    pub fn word_for(&self, b: &Mat) -> Option<&AffineIso> {
        self.index.get(b).map(|&i| &self.words[i])
    }

    pub fn contains(&self, g: &AffineIso) -> bool {
        if g.dim() != self.dim {
            return false;
        }
        match self.vector_rep(g.lin()) {
            None => false,
            Some(v) => self.lattice.member(&vsub(g.trans(), v)),
        }
    }

    /// Same underlying set of isometries.
    pub fn same_group(&self, other: &GroupData) -> bool {
        self.dim == other.dim
            && self.lattice == other.lattice
            && self.point_group_order() == other.point_group_order()
            && self.point_group.iter().all(|b| {
                other.vector_rep(b).is_some_and(|v| {
                    self.lattice.member(&vsub(self.vector_rep(b).unwrap(), v))
                })
            })
    }

    pub fn is_subgroup_of(&self, other: &GroupData) -> bool {
        self.gens.iter().all(|g| other.contains(g))
            && self.lattice.basis_vectors().iter().all(|t| {
                other.contains(&AffineIso::translation(t.clone()))
            })
    }

    /// Span of the translation lattice.
    pub fn span(&self) -> Subspace {
        Subspace::from_spanning(self.dim, &self.lattice.basis_vectors())
    }

    pub fn is_translation_group(&self) -> bool {
        self.point_group_order() == 1
    }

    /// All elements with a given linear part have translation in
    /// v(b) + lattice; enumerate the group's canonical coset data.
    pub fn cosets(&self) -> impl Iterator<Item = (&Mat, &Vector)> {
        self.point_group.iter().zip(self.vector_system.iter())
    }
}

/// A full crystallographic group: cocompact (full-rank lattice), with an
/// invariant Gram form realizing orthogonality.
#[derive(Clone, Debug)]
pub struct SpaceGroup {
    data: GroupData,
    gram: GramForm,
}

impl SpaceGroup {
    pub fn build(dim: usize, gens: &[AffineIso]) -> Result<SpaceGroup> {
        Self::build_bounded(dim, gens, point_group_bound())
    }

    pub fn build_bounded(dim: usize, gens: &[AffineIso], bound: usize) -> Result<SpaceGroup> {
        let data = GroupData::build(dim, gens, bound)?;
        if data.lattice.rank() < dim {
            return Err(Error::NotCocompact { rank: data.lattice.rank(), dim });
        }
        // the lattice must be invariant under every point-group element
        for b in &data.point_group {
            for t in data.lattice.basis_vectors() {
                if !data.lattice.member(&b.mul_vec(&t)) {
                    return Err(Error::Unsupported(
                        "translation lattice is not point-group invariant".into(),
                    ));
                }
            }
        }
        let gram = invariant_gram(&data.point_group)?;
        Ok(SpaceGroup { data, gram })
    }

    pub fn data(&self) -> &GroupData {
        &self.data
    }

    pub fn dim(&self) -> usize {
        self.data.dim
    }

    pub fn gens(&self) -> &[AffineIso] {
        &self.data.gens
    }

    pub fn gram(&self) -> &GramForm {
        &self.gram
    }

    pub fn lattice(&self) -> &Lattice {
        self.data.lattice()
    }

    pub fn point_group(&self) -> &[Mat] {
        self.data.point_group()
    }

    pub fn contains(&self, g: &AffineIso) -> bool {
        self.data.contains(g)
    }

    /// Span(Z(Gamma)) = Fix(point group): the solution space of the
    /// stacked system { (B - I) x = 0 }.
    pub fn center_span(&self) -> Subspace {
        let n = self.dim();
        let mut stacked = Mat::zero(0, n);
        for b in self.point_group() {
            let mut bm = b.clone();
            for i in 0..n {
                bm[(i, i)] -= Rat::one();
            }
            stacked = stacked.vstack(&bm);
        }
        if stacked.rows() == 0 {
            return Subspace::full(n);
        }
        Subspace::from_spanning(n, &kernel_basis(&stacked))
    }

    /// Generators of the center: the lattice vectors fixed by the whole
    /// point group, as translations.
    pub fn center_generators(&self) -> Vec<AffineIso> {
        let n = self.dim();
        let mut stacked = Mat::zero(0, n);
        for b in self.point_group() {
            let mut bm = b.clone();
            for i in 0..n {
                bm[(i, i)] -= Rat::one();
            }
            stacked = stacked.vstack(&bm);
        }
        let fixed = self.lattice().intersect_nullspace(&stacked);
        fixed.basis_vectors().into_iter().map(AffineIso::translation).collect()
    }

    /// dim Span(Z(Gamma)): the first Betti number, which also equals the
    /// rank of the isometry group of the quotient orbifold.
    pub fn first_betti(&self) -> usize {
        self.center_span().rank()
    }

    pub fn isom_rank(&self) -> usize {
        self.first_betti()
    }

    pub fn orientation_preserving(&self) -> bool {
        self.point_group().iter().all(|b| b.det() == Rat::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat, zero_vec};

    pub(crate) fn translations2() -> Vec<AffineIso> {
        vec![
            AffineIso::translation(vec![rat(1), rat(0)]),
            AffineIso::translation(vec![rat(0), rat(1)]),
        ]
    }

    fn pg_gen() -> AffineIso {
        AffineIso::new(vec![frac(1, 2), rat(0)], Mat::from_i64(2, 2, &[1, 0, 0, -1])).unwrap()
    }

    #[test]
    fn build_p1_and_pg() {
        let p1 = SpaceGroup::build(2, &translations2()).unwrap();
        assert_eq!(p1.point_group().len(), 1);
        assert_eq!(p1.lattice(), &Lattice::standard(2));

        let mut gens = translations2();
        gens.push(pg_gen());
        let pg = SpaceGroup::build(2, &gens).unwrap();
        assert_eq!(pg.point_group().len(), 2);
        assert_eq!(pg.lattice(), &Lattice::standard(2));
    }

    #[test]
    fn not_cocompact_rejected() {
        let err = SpaceGroup::build(2, &[pg_gen()]).unwrap_err();
        assert!(matches!(err, Error::NotCocompact { rank: 1, dim: 2 }));
    }

    #[test]
    fn membership() {
        let p1 = SpaceGroup::build(2, &translations2()).unwrap();
        assert!(p1.contains(&AffineIso::translation(vec![rat(1), rat(1)])));
        assert!(!p1.contains(&AffineIso::translation(vec![frac(1, 2), rat(0)])));

        let mut gens = translations2();
        gens.push(AffineIso::linear(Mat::from_i64(2, 2, &[-1, 0, 0, -1])).unwrap());
        let p2 = SpaceGroup::build(2, &gens).unwrap();
        // membership of explicit generator words
        let w = gens[0].compose(&gens[1]).compose(&gens[2]);
        assert!(p2.contains(&w));
        assert_eq!(w.lin(), &Mat::from_i64(2, 2, &[-1, 0, 0, -1]));
        assert_eq!(w.trans(), &vec![rat(1), rat(1)]);
    }

    #[test]
    fn closure_properties_on_short_words() {
        let mut gens = translations2();
        gens.push(pg_gen());
        let pg = SpaceGroup::build(2, &gens).unwrap();
        let mut words = vec![AffineIso::identity(2)];
        for _ in 0..3 {
            let mut next = Vec::new();
            for w in &words {
                for g in &gens {
                    next.push(w.compose(g));
                    next.push(w.compose(&g.inverse()));
                }
            }
            words.extend(next);
        }
        for w in &words {
            assert!(pg.contains(w));
            assert!(pg.contains(&w.inverse()));
        }
    }

    #[test]
    fn rebuilding_from_other_generators_gives_same_group() {
        let mut gens = translations2();
        gens.push(pg_gen());
        let pg = SpaceGroup::build(2, &gens).unwrap();
        // remix: replace t1 by t1*t2, conjugate the glide
        let g2 = vec![
            gens[0].compose(&gens[1]),
            gens[1].clone(),
            gens[0].compose(&pg_gen()).compose(&gens[0].inverse()),
        ];
        let pg2 = SpaceGroup::build(2, &g2).unwrap();
        assert!(pg.data().same_group(pg2.data()));
        for w in &g2 {
            assert!(pg.contains(w));
        }
    }

    #[test]
    fn center_and_betti() {
        let p1 = SpaceGroup::build(2, &translations2()).unwrap();
        assert_eq!(p1.first_betti(), 2);

        let mut gens = translations2();
        gens.push(pg_gen());
        let pg = SpaceGroup::build(2, &gens).unwrap();
        assert_eq!(pg.first_betti(), 1);
        let z = pg.center_generators();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].trans(), &vec![rat(1), rat(0)]);

        let mut gens = translations2();
        gens.push(AffineIso::linear(Mat::from_i64(2, 2, &[-1, 0, 0, -1])).unwrap());
        let p2 = SpaceGroup::build(2, &gens).unwrap();
        assert_eq!(p2.first_betti(), 0);
        assert!(p2.center_generators().is_empty());

        // IT 7 (Example 9): Fix of {I, diag(1,-1,1)} is the (x,z)-plane
        let mut g3 = vec![
            AffineIso::translation(vec![rat(1), rat(0), rat(0)]),
            AffineIso::translation(vec![rat(0), rat(1), rat(0)]),
            AffineIso::translation(vec![rat(0), rat(0), rat(1)]),
        ];
        g3.push(
            AffineIso::new(
                vec![rat(0), rat(0), frac(1, 2)],
                Mat::from_i64(3, 3, &[1, 0, 0, 0, -1, 0, 0, 0, 1]),
            )
            .unwrap(),
        );
        let it7 = SpaceGroup::build(3, &g3).unwrap();
        assert_eq!(it7.first_betti(), 2);
    }

    #[test]
    fn orientation() {
        let mut gens = translations2();
        gens.push(AffineIso::linear(Mat::from_i64(2, 2, &[-1, 0, 0, -1])).unwrap());
        assert!(SpaceGroup::build(2, &gens).unwrap().orientation_preserving());

        let mut gens = translations2();
        gens.push(AffineIso::linear(Mat::from_i64(2, 2, &[1, 0, 0, -1])).unwrap());
        assert!(!SpaceGroup::build(2, &gens).unwrap().orientation_preserving());

        // IT 5 (Example 8) generator matrix has det +1
        let a = Mat::from_i64(3, 3, &[0, -1, 0, -1, 0, 0, 0, 0, -1]);
        assert_eq!(a.det(), rat(1));
    }

    #[test]
    fn lattice_point_group_invariance() {
        let mut gens = translations2();
        gens.push(pg_gen());
        let pg = SpaceGroup::build(2, &gens).unwrap();
        for b in pg.point_group() {
            for t in pg.lattice().basis_vectors() {
                assert!(pg.lattice().member(&b.mul_vec(&t)));
            }
        }
        let _ = zero_vec(2);
    }
}
