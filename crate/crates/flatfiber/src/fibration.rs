//! Orbifold-type recognition for fibers, bases and structure-group
//! quotients: the two 1-orbifolds (circle O, closed interval I), the 17
//! wallpaper types, and per-generator action invariants.

use crate::exact::{
    frac, rat, solve_affine_mod_lattice, Lattice, Mat, Rat, Vector,
};
use crate::isometry::AffineIso;
use crate::normal::{GroupKind, NormalAnalysis};
use crate::spacegroup::{point_group_bound, GroupData};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// The two compact 1-orbifolds.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OneOrbType {
    /// circle
    O,
    /// closed interval
    I,
}

impl OneOrbType {
    pub fn label(&self) -> &'static str {
        match self {
            OneOrbType::O => "O",
            OneOrbType::I => "I",
        }
    }
}

/// The 17 wallpaper (2-space-group) types.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WallpaperType {
    P1,
    P2,
    Pm,
    Pg,
    Cm,
    Pmm,
    Pmg,
    Pgg,
    Cmm,
    P4,
    P4m,
    P4g,
    P3,
    P3m1,
    P31m,
    P6,
    P6m,
}

impl WallpaperType {
    pub fn it_number(&self) -> u32 {
        use WallpaperType::*;
        match self {
            P1 => 1,
            P2 => 2,
            Pm => 3,
            Pg => 4,
            Cm => 5,
            Pmm => 6,
            Pmg => 7,
            Pgg => 8,
            Cmm => 9,
            P4 => 10,
            P4m => 11,
            P4g => 12,
            P3 => 13,
            P3m1 => 14,
            P31m => 15,
            P6 => 16,
            P6m => 17,
        }
    }

    /// Conway orbifold name (ASCII: `o` for the torus, `x` for crosscaps,
    /// `*` for kaleidoscopes).
    pub fn conway(&self) -> &'static str {
        use WallpaperType::*;
        match self {
            P1 => "o",
            P2 => "2222",
            Pm => "**",
            Pg => "xx",
            Cm => "*x",
            Pmm => "*2222",
            Pmg => "22*",
            Pgg => "22x",
            Cmm => "2*22",
            P4 => "442",
            P4m => "*442",
            P4g => "4*2",
            P3 => "333",
            P3m1 => "*333",
            P31m => "3*3",
            P6 => "632",
            P6m => "*632",
        }
    }

    pub fn it_name(&self) -> &'static str {
        use WallpaperType::*;
        match self {
            P1 => "p1",
            P2 => "p2",
            Pm => "pm",
            Pg => "pg",
            Cm => "cm",
            Pmm => "pmm",
            Pmg => "pmg",
            Pgg => "pgg",
            Cmm => "cmm",
            P4 => "p4",
            P4m => "p4m",
            P4g => "p4g",
            P3 => "p3",
            P3m1 => "p3m1",
            P31m => "p31m",
            P6 => "p6",
            P6m => "p6m",
        }
    }

    pub fn from_conway(s: &str) -> Option<Self> {
        use WallpaperType::*;
        [P1, P2, Pm, Pg, Cm, Pmm, Pmg, Pgg, Cmm, P4, P4m, P4g, P3, P3m1, P31m, P6, P6m]
            .into_iter()
            .find(|t| t.conway() == s)
    }
}

/// Either a 1-orbifold or a wallpaper orbifold type.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrbifoldType {
    OneOrb(OneOrbType),
    Wallpaper(WallpaperType),
}

impl OrbifoldType {
    pub fn label(&self) -> String {
        match self {
            OrbifoldType::OneOrb(t) => t.label().to_string(),
            OrbifoldType::Wallpaper(t) => t.conway().to_string(),
        }
    }
}

/// Type of a rank-1 crystallographic action: circle if every linear part
/// acts as +1 on the line, closed interval otherwise.
pub fn one_orb_type(g: &GroupData) -> Result<OneOrbType> {
    if g.dim() != 1 || g.lattice().rank() != 1 {
        return Err(Error::NotCocompactLine);
    }
    let flips = g.point_group().iter().any(|b| b[(0, 0)] == rat(-1));
    Ok(if flips { OneOrbType::I } else { OneOrbType::O })
}

/// How a structure-group element acts on a 1-orbifold factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BaseAction {
    Identity,
    /// rotation of the circle by `turns` of a full turn, 0 < turns < 1
    Rotation(Rat),
    Reflection,
}

impl BaseAction {
    pub fn label(&self) -> String {
        match self {
            BaseAction::Identity => "idt".into(),
            BaseAction::Rotation(t) => format!("rot {}", crate::exact::fmt_rat(t)),
            BaseAction::Reflection => "ref".into(),
        }
    }
}

/// Classify the action of `g` (an isometry of a line, in the 1-dimensional
/// coordinates of the base) on the quotient of the line by the rank-1
/// group `k`: reflection if the linear part is -1, otherwise the rotation
/// by translation-over-circumference.
pub fn classify_circle_action(g: &AffineIso, k_lattice: &Lattice) -> BaseAction {
    assert_eq!(g.dim(), 1);
    if g.lin()[(0, 0)] == rat(-1) {
        return BaseAction::Reflection;
    }
    if k_lattice.rank() == 0 {
        // no identifications: only the identity is trivial
        return if g.trans()[0].is_zero() {
            BaseAction::Identity
        } else {
            BaseAction::Rotation(g.trans()[0].clone())
        };
    }
    let gen = &k_lattice.basis_vectors()[0][0];
    let turns = &g.trans()[0] / gen;
    let frac_part = &turns - Rat::from_integer(crate::exact::rat::floor_int(&turns));
    if frac_part.is_zero() {
        BaseAction::Identity
    } else {
        BaseAction::Rotation(frac_part)
    }
}

/// Convert a 2D group to lattice coordinates: integer point group and a
/// rational vector system over the standard lattice Z^2.
struct LatticeCoords {
    point_group: Vec<Mat>,
    vector_system: Vec<Vector>,
}

fn to_lattice_coords(g: &GroupData) -> Result<LatticeCoords> {
    if g.dim() != 2 || g.lattice().rank() != 2 {
        return Err(Error::NotCocompact { rank: g.lattice().rank(), dim: 2 });
    }
    let t = Mat::from_rows(g.lattice().basis_vectors()).transpose();
    let tinv = t.inverse().expect("full-rank lattice");
    let mut point_group = Vec::new();
    let mut vector_system = Vec::new();
    let z2 = Lattice::standard(2);
    for (b, v) in g.cosets() {
        let m = &(&tinv * b) * &t;
        for i in 0..2 {
            for j in 0..2 {
                if !m[(i, j)].denom().is_one() {
                    return Err(Error::Unsupported(
                        "lattice is not invariant under the point group".into(),
                    ));
                }
            }
        }
        point_group.push(m);
        vector_system.push(z2.reduce_mod(&tinv.mul_vec(v)));
    }
    Ok(LatticeCoords { point_group, vector_system })
}

fn order_of(m: &Mat, max: usize) -> Option<usize> {
    let mut p = m.clone();
    for k in 1..=max {
        if p.is_identity() {
            return Some(k);
        }
        p = &p * m;
    }
    None
}

/// Index of L+ ⊕ L- in Z^2 for an integer reflection: 1 for the primitive
/// (pm-like) class, 2 for the centered (cm-like) class.
pub fn reflection_eigenlattice_index(r: &Mat) -> BigInt {
    let plus = primitive_eigenvector(r, 1);
    let minus = primitive_eigenvector(r, -1);
    let d = &plus[0] * &minus[1] - &plus[1] * &minus[0];
    d.abs()
}

/// Primitive integer eigenvector of an integer 2x2 matrix for eigenvalue
/// +1 or -1.
pub fn primitive_eigenvector(m: &Mat, sign: i64) -> Vec<BigInt> {
    let mut a = m.clone();
    a[(0, 0)] -= rat(sign);
    a[(1, 1)] -= rat(sign);
    let k = crate::exact::kernel_basis(&a);
    assert!(!k.is_empty(), "not an eigenvalue");
    let v = &k[0];
    let den = crate::exact::common_denominator(v);
    let ints: Vec<BigInt> =
        v.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
    ints.iter().map(|x| x / &g).collect()
}

/// Does the reflection class of `r` contain a true mirror? Solvable iff
/// (I - r) x ≡ v (mod Z^2) has a solution.
fn has_mirror(r: &Mat, v: &Vector) -> bool {
    let mut a = Mat::identity(2);
    for i in 0..2 {
        for j in 0..2 {
            a[(i, j)] -= r[(i, j)].clone();
        }
    }
    solve_affine_mod_lattice(&a, v, &Lattice::standard(2)).is_some()
}

/// Recognize one of the 17 wallpaper types from rank-2 cocompact group
/// data, via the arithmetic class of the point group plus mirror/glide
/// solvability tests.
pub fn wallpaper_type(g: &GroupData) -> Result<WallpaperType> {
    let lc = to_lattice_coords(g)?;
    let n = lc.point_group.len();
    let neg = Mat::from_i64(2, 2, &[-1, 0, 0, -1]);
    let reflections: Vec<usize> = (0..n)
        .filter(|&i| lc.point_group[i].det() == rat(-1) && order_of(&lc.point_group[i], 2) == Some(2))
        .collect();
    let max_rot = (0..n)
        .filter(|&i| lc.point_group[i].det() == rat(1))
        .map(|i| order_of(&lc.point_group[i], 6).ok_or(Error::PointGroupNotFinite(6)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(1);

    let mirror = |i: usize| has_mirror(&lc.point_group[i], &lc.vector_system[i]);

    match (n, max_rot, reflections.len()) {
        (1, _, _) => Ok(WallpaperType::P1),
        (2, 2, 0) => Ok(WallpaperType::P2),
        (2, 1, 1) => {
            let r = reflections[0];
            if reflection_eigenlattice_index(&lc.point_group[r]) == BigInt::from(2) {
                Ok(WallpaperType::Cm)
            } else if mirror(r) {
                Ok(WallpaperType::Pm)
            } else {
                Ok(WallpaperType::Pg)
            }
        }
        (3, 3, 0) => Ok(WallpaperType::P3),
        (4, 4, 0) => Ok(WallpaperType::P4),
        (4, 2, 2) => {
            let idx = reflection_eigenlattice_index(&lc.point_group[reflections[0]]);
            if idx == BigInt::from(2) {
                Ok(WallpaperType::Cmm)
            } else {
                let m0 = mirror(reflections[0]);
                let m1 = mirror(reflections[1]);
                match (m0, m1) {
                    (true, true) => Ok(WallpaperType::Pmm),
                    (false, false) => Ok(WallpaperType::Pgg),
                    _ => Ok(WallpaperType::Pmg),
                }
            }
        }
        (6, 6, 0) => Ok(WallpaperType::P6),
        (6, 3, 3) => {
            // two arithmetic classes of D3: distinguish by the index of the
            // sublattice spanned by the mirror-axis directions
            let dirs: Vec<Vector> = reflections
                .iter()
                .map(|&i| {
                    primitive_eigenvector(&lc.point_group[i], 1)
                        .into_iter()
                        .map(Rat::from_integer)
                        .collect()
                })
                .collect();
            let axes = Lattice::from_generators(2, &dirs);
            let idx = Lattice::standard(2).index_of(&axes)?.expect("rank 2");
            if idx == BigInt::from(3) {
                Ok(WallpaperType::P3m1)
            } else if idx.is_one() {
                Ok(WallpaperType::P31m)
            } else {
                Err(Error::Unsupported("unexpected hexagonal mirror lattice".into()))
            }
        }
        (8, 4, 4) => {
            // the primitive (index-1) reflection class is a true mirror in
            // p4m and a glide in p4g
            let prim = reflections
                .iter()
                .find(|&&i| reflection_eigenlattice_index(&lc.point_group[i]).is_one())
                .ok_or_else(|| Error::Unsupported("D4 without a primitive reflection".into()))?;
            if mirror(*prim) {
                Ok(WallpaperType::P4m)
            } else {
                Ok(WallpaperType::P4g)
            }
        }
        (12, 6, 6) => Ok(WallpaperType::P6m),
        _ => {
            let _ = neg;
            Err(Error::Unsupported(format!(
                "point group of order {n} is not a 2D crystallographic class"
            )))
        }
    }
}

/// Convention-free description of one structure-group element's action on
/// the fiber and base factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ActionInvariant {
    pub order: usize,
    pub orientation_preserving_on_fiber: bool,
    pub has_fixed_point_on_fiber: bool,
    pub base_action: BaseAction,
}

/// Whether the induced map on V/N is orientation preserving. When the
/// fiber group itself reverses orientation the quotient orbifold is
/// non-orientable and every induced map counts as preserving; otherwise
/// the determinant of any representative decides.
pub fn fiber_orientation_class(n_on_v: &GroupData, fiber_iso: &AffineIso) -> bool {
    let fiber_nonorientable =
        n_on_v.point_group().iter().any(|b| b.det() < Rat::zero());
    fiber_nonorientable || fiber_iso.lin().det() > Rat::zero()
}

/// Does the induced map of `fiber_iso` on V/N have a fixed point? Checked
/// by solvability of (I - D B) x ≡ v(D) + D c (mod L) over the finitely
/// many coset data (D, v(D)) of the fiber group.
pub fn fiber_map_has_fixed_point(n_on_v: &GroupData, fiber_iso: &AffineIso) -> Result<bool> {
    let d = n_on_v.dim();
    if d > 2 {
        return Err(Error::FiberTooLarge);
    }
    for (dm, dv) in n_on_v.cosets() {
        let db = dm * fiber_iso.lin();
        let mut a = Mat::identity(d);
        for i in 0..d {
            for j in 0..d {
                a[(i, j)] -= db[(i, j)].clone();
            }
        }
        let rhs = crate::exact::vadd(dv, &dm.mul_vec(fiber_iso.trans()));
        if solve_affine_mod_lattice(&a, &rhs, n_on_v.lattice()).is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Base-factor classification of the restricted action, for a base of
/// dimension 1 (mod the cofiber group) or 2 (coarse invariant label).
pub fn classify_base_action(k_on_w: &GroupData, base_iso: &AffineIso) -> BaseAction {
    match base_iso.dim() {
        1 => {
            if base_iso.lin()[(0, 0)] == rat(-1) {
                // reflection unless it is already an identification of K
                if k_on_w.contains(base_iso) {
                    BaseAction::Identity
                } else {
                    BaseAction::Reflection
                }
            } else if k_on_w.contains(base_iso) {
                BaseAction::Identity
            } else if k_on_w.point_group_order() == 1 {
                classify_circle_action(base_iso, k_on_w.lattice())
            } else {
                // interval base: the only nontrivial isometry is the flip
                BaseAction::Reflection
            }
        }
        _ => {
            if k_on_w.contains(base_iso) {
                BaseAction::Identity
            } else if base_iso.lin().det() < Rat::zero() {
                BaseAction::Reflection
            } else if base_iso.lin().is_identity() {
                BaseAction::Rotation(Rat::zero())
            } else {
                let ord = order_of(base_iso.lin(), 6).unwrap_or(0);
                BaseAction::Rotation(frac(1, ord as i64))
            }
        }
    }
}

/// Invariants of the `idx`-th structure-group representative.
pub fn fiber_action_invariant(a: &NormalAnalysis, idx: usize) -> Result<ActionInvariant> {
    let s = a.structure().ok_or(Error::Unsupported("N is not complete".into()))?;
    if !s.finite {
        return Err(Error::Unsupported("infinite structure group".into()));
    }
    let rep = &s.reps[idx];
    let (fiber, base) = a.actions_of(rep)?;
    let n_on_v = a.fiber_group()?;
    let k_on_w = a.cofiber_group()?;
    Ok(ActionInvariant {
        order: s.element_order(idx),
        orientation_preserving_on_fiber: fiber_orientation_class(&n_on_v, &fiber),
        has_fixed_point_on_fiber: fiber_map_has_fixed_point(&n_on_v, &fiber)?,
        base_action: classify_base_action(&k_on_w, &base),
    })
}

impl NormalAnalysis {
    fn restricted_group(&self, gens: &[AffineIso], first: bool) -> Result<GroupData> {
        let restricted: Result<Vec<AffineIso>> = gens
            .iter()
            .map(|g| self.actions_of(g).map(|(v, w)| if first { v } else { w }))
            .collect();
        GroupData::build(
            if first { self.v().rank() } else { self.vperp().rank() },
            &restricted?,
            point_group_bound(),
        )
    }

    /// N acting on V in the coordinates of V's canonical basis.
    pub fn fiber_group(&self) -> Result<GroupData> {
        let mut gens: Vec<AffineIso> = self
            .normal_subgroup()
            .lattice()
            .basis_vectors()
            .into_iter()
            .map(AffineIso::translation)
            .collect();
        gens.extend(self.normal_subgroup().gens().iter().cloned());
        self.restricted_group(&gens, true)
    }

    /// K acting on Vperp.
    pub fn cofiber_group(&self) -> Result<GroupData> {
        let mut gens: Vec<AffineIso> = self
            .kernel()
            .lattice()
            .basis_vectors()
            .into_iter()
            .map(AffineIso::translation)
            .collect();
        gens.extend(self.kernel().gens().iter().cloned());
        self.restricted_group(&gens, false)
    }

    /// Gamma acting on V (isomorphic to Gamma/K).
    pub fn fiber_quotient_group(&self) -> Result<GroupData> {
        self.restricted_group(self.parent().gens(), true)
    }

    /// Gamma acting on Vperp (isomorphic to Gamma/N).
    pub fn base_quotient_group(&self) -> Result<GroupData> {
        self.restricted_group(self.parent().gens(), false)
    }
}

fn orbifold_type_of(g: &GroupData) -> Result<OrbifoldType> {
    match g.dim() {
        0 => Err(Error::Unsupported("zero-dimensional factor".into())),
        1 => Ok(OrbifoldType::OneOrb(one_orb_type(g)?)),
        2 => Ok(OrbifoldType::Wallpaper(wallpaper_type(g)?)),
        d => Err(Error::Unsupported(format!("{d}-orbifold recognition unsupported"))),
    }
}

/// The assembled invariants of the fibered orbifold structure induced by
/// a complete normal subgroup with orthogonal dual.
#[derive(Clone, Debug)]
pub struct FibrationReport {
    pub fiber: OrbifoldType,
    pub cofiber: OrbifoldType,
    pub base: OrbifoldType,
    pub quotient_fiber: OrbifoldType,
    pub quotient_base: OrbifoldType,
    pub structure_kind: GroupKind,
    pub structure_order: usize,
    /// invariants of every non-identity structure-group element
    pub actions: Vec<ActionInvariant>,
    pub splits_orthogonally: bool,
    pub has_obstruction: bool,
}

/// Assemble the full fibration report for a complete normal subgroup with
/// an orthogonal dual.
pub fn fibration_report(a: &NormalAnalysis) -> Result<FibrationReport> {
    if !a.is_complete() {
        return Err(Error::Unsupported("normal subgroup is not complete".into()));
    }
    if !a.dual_exists() {
        return Err(Error::Unsupported("no orthogonal dual: structure group infinite".into()));
    }
    let s = a.structure().expect("complete");
    let fiber = orbifold_type_of(&a.fiber_group()?)?;
    let cofiber = orbifold_type_of(&a.cofiber_group()?)?;
    let base = orbifold_type_of(&a.base_quotient_group()?)?;
    let quotient_fiber = orbifold_type_of(&a.fiber_quotient_group()?)?;
    let actions: Result<Vec<ActionInvariant>> =
        (1..s.order()).map(|i| fiber_action_invariant(a, i)).collect();
    let verdict = crate::splitting::orthogonal_split(a)?;
    let obstruction = crate::splitting::lemma4_obstruction(a)?;
    Ok(FibrationReport {
        fiber,
        cofiber,
        base,
        quotient_fiber,
        quotient_base: base,
        structure_kind: s.kind,
        structure_order: s.order(),
        actions: actions?,
        splits_orthogonally: verdict.is_some(),
        has_obstruction: obstruction.is_some(),
    })
}
