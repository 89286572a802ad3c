//! Everything derived from a normal subgroup N of a space group: the span
//! V, completeness and the completion, the kernel K of the action on V,
//! the orthogonal dual, and the structure group of the induced fibered
//! orbifold structure together with its two restricted actions.

use crate::exact::{
    common_denominator, kernel_basis, solve_int, vadd, vsub, IMat, IVec, Mat, Rat,
    Vector,
};
use crate::isometry::{restrict, AffineIso, Subspace};
use crate::spacegroup::{point_group_bound, GroupData, SpaceGroup};
use crate::{Error, Result};
use num_traits::Zero;

/// Isomorphism type of a finite structure group.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupKind {
    Trivial,
    /// cyclic of the given order
    Cyclic(usize),
    /// dihedral of order 2n
    Dihedral(usize),
    /// never expected for the catalogued cases; reported loudly
    Other,
}

impl GroupKind {
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupKind::Trivial => Some(1),
            GroupKind::Cyclic(n) => Some(*n),
            GroupKind::Dihedral(n) => Some(2 * n),
            GroupKind::Other => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            GroupKind::Trivial => "C1".into(),
            GroupKind::Cyclic(n) => format!("C{n}"),
            GroupKind::Dihedral(n) => format!("D{n}"),
            GroupKind::Other => "other".into(),
        }
    }
}

/// The finite quotient Gamma/NK: coset representatives (identity first),
/// multiplication table, and isomorphism kind.
#[derive(Clone, Debug)]
pub struct StructureGroup {
    pub finite: bool,
    pub reps: Vec<AffineIso>,
    pub table: Vec<Vec<usize>>,
    pub kind: GroupKind,
}

impl StructureGroup {
    pub fn infinite() -> Self {
        StructureGroup { finite: false, reps: vec![], table: vec![], kind: GroupKind::Other }
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = i;
        let mut ord = 1;
        while k != 0 {
            k = self.table[k][i];
            ord += 1;
        }
        ord
    }

    pub fn inverse_of(&self, i: usize) -> usize {
        (0..self.order()).find(|&j| self.table[i][j] == 0).expect("closed table")
    }

    fn classify(&self) -> GroupKind {
        let n = self.order();
        if n == 1 {
            return GroupKind::Trivial;
        }
        if let Some(g) = (0..n).find(|&i| self.element_order(i) == n) {
            let _ = g;
            return GroupKind::Cyclic(n);
        }
        if n % 2 == 0 {
            let half = n / 2;
            // an index-2 cyclic subgroup inverted by an involution
            for c in 0..n {
                if self.element_order(c) != half {
                    continue;
                }
                let mut cyc = vec![0usize];
                let mut cur = c;
                while cur != 0 {
                    cyc.push(cur);
                    cur = self.table[cur][c];
                }
                if let Some(r) = (0..n).find(|&r| !cyc.contains(&r) && self.element_order(r) == 2)
                {
                    let rinv = self.inverse_of(r);
                    let conj = self.table[self.table[r][c]][rinv];
                    if conj == self.inverse_of(c) {
                        return GroupKind::Dihedral(half);
                    }
                }
            }
        }
        GroupKind::Other
    }
}

/// Everything the analysis derives from a pair (Gamma, N).
#[derive(Clone, Debug)]
pub struct NormalAnalysis {
    parent: SpaceGroup,
    n: GroupData,
    v: Subspace,
    vperp: Subspace,
    complete: bool,
    completion: GroupData,
    k: GroupData,
    dual_exists: bool,
    /// present iff N is complete
    structure: Option<StructureGroup>,
}

impl NormalAnalysis {
    pub fn parent(&self) -> &SpaceGroup {
        &self.parent
    }
    pub fn normal_subgroup(&self) -> &GroupData {
        &self.n
    }
    pub fn v(&self) -> &Subspace {
        &self.v
    }
    pub fn vperp(&self) -> &Subspace {
        &self.vperp
    }
    pub fn is_complete(&self) -> bool {
        self.complete
    }
    pub fn completion(&self) -> &GroupData {
        &self.completion
    }
    pub fn kernel(&self) -> &GroupData {
        &self.k
    }
    pub fn dual_exists(&self) -> bool {
        self.dual_exists
    }
    pub fn orthogonal_dual(&self) -> Option<&GroupData> {
        self.dual_exists.then_some(&self.k)
    }
    pub fn structure(&self) -> Option<&StructureGroup> {
        self.structure.as_ref()
    }

    /// Membership in the internal direct product NK: the linear part must
    /// split as (action on V) x (action on Vperp) with each factor in the
    /// respective subgroup, and likewise for the translation.
    pub fn in_nk(&self, g: &AffineIso) -> bool {
        let Some((nu, kappa)) = self.nk_factors(g) else { return false };
        self.n.contains(&nu) && self.k.contains(&kappa)
    }

    /// Split g = nu * kappa with nu acting only on V and kappa only on
    /// Vperp; None if the linear part does not block-decompose.
    pub fn nk_factors(&self, g: &AffineIso) -> Option<(AffineIso, AffineIso)> {
        let n = self.parent.dim();
        let bv = self.v.basis();
        let bw = self.vperp.basis();
        // coordinates of x in the joint basis [V; W]
        let joint = Mat::from_rows([bv.to_vec(), bw.to_vec()].concat()).transpose();
        let joint_inv = joint.inverse().expect("complementary bases");
        // block-split the linear part
        let lin_in_coords = &(&joint_inv * g.lin()) * &joint;
        let r = bv.len();
        for i in 0..n {
            for j in 0..n {
                if (i < r) != (j < r) && !lin_in_coords[(i, j)].is_zero() {
                    return None;
                }
            }
        }
        let mut a = Mat::identity(n);
        let mut b = Mat::identity(n);
        for i in 0..n {
            for j in 0..n {
                if i < r && j < r {
                    a[(i, j)] = lin_in_coords[(i, j)].clone();
                } else if i >= r && j >= r {
                    b[(i, j)] = lin_in_coords[(i, j)].clone();
                }
            }
        }
        let a_amb = &(&joint * &a) * &joint_inv;
        let b_amb = &(&joint * &b) * &joint_inv;
        let t_coords = joint_inv.mul_vec(g.trans());
        let mut tv = t_coords.clone();
        let mut tw = t_coords;
        for i in 0..n {
            if i < r {
                tw[i] = Rat::zero();
            } else {
                tv[i] = Rat::zero();
            }
        }
        let nu = AffineIso::new(joint.mul_vec(&tv), a_amb).ok()?;
        let kappa = AffineIso::new(joint.mul_vec(&tw), b_amb).ok()?;
        Some((nu, kappa))
    }

    /// Restricted pair of actions of a structure-group representative on
    /// V and Vperp, in the coordinates of their canonical bases.
    pub fn actions_of(&self, rep: &AffineIso) -> Result<(AffineIso, AffineIso)> {
        restrict(rep, &self.v, &self.vperp)
    }

    pub fn action_on_fiber(&self, rep: &AffineIso) -> Result<AffineIso> {
        Ok(self.actions_of(rep)?.0)
    }

    pub fn action_on_base(&self, rep: &AffineIso) -> Result<AffineIso> {
        Ok(self.actions_of(rep)?.1)
    }
}

/// Span of a subgroup: the span of its translation lattice.
pub fn span_of(n: &GroupData) -> Subspace {
    n.span()
}

/// Check the generators lie in Gamma, build the subgroup, and check
/// normality by conjugating subgroup generators with group generators.
pub fn verify_normal(gamma: &SpaceGroup, n_gens: &[AffineIso]) -> Result<GroupData> {
    for g in n_gens {
        if !gamma.contains(g) {
            return Err(Error::NotInGroup);
        }
    }
    let n = GroupData::build(gamma.dim(), n_gens, point_group_bound())?;
    let mut conjugators: Vec<AffineIso> = gamma.gens().to_vec();
    conjugators.extend(gamma.gens().iter().map(AffineIso::inverse));
    for c in &conjugators {
        for g in n_gens {
            if !n.contains(&g.conjugate_by(c)) {
                return Err(Error::NotNormal);
            }
        }
        for t in n.lattice().basis_vectors() {
            if !n.contains(&AffineIso::translation(t.clone()).conjugate_by(c)) {
                return Err(Error::NotNormal);
            }
        }
    }
    Ok(n)
}

/// Annihilator rows of a subspace: a matrix whose null space is exactly
/// the subspace.
fn annihilator(v: &Subspace) -> Mat {
    let n = v.ambient_dim();
    if v.rank() == 0 {
        return Mat::identity(n);
    }
    let rows = kernel_basis(&Mat::from_rows(v.basis().to_vec()));
    if rows.is_empty() {
        Mat::zero(0, n)
    } else {
        Mat::from_rows(rows)
    }
}

/// Find one lattice shift l with constraint * (base + l) = 0, over the
/// integer coefficients of the lattice basis.
fn coset_solution(
    gamma: &SpaceGroup,
    constraint: &Mat,
    base: &Vector,
) -> Option<Vector> {
    let lb = Mat::from_rows(gamma.lattice().basis_vectors()).transpose();
    let c = constraint * &lb;
    let rhs: Vector = constraint.mul_vec(base).iter().map(|x| -x).collect();
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
    let kk: Vector = k.into_iter().map(Rat::from_integer).collect();
    Some(vadd(base, &lb.mul_vec(&kk)))
}

/// The set { a+A in Gamma : a in V and Vperp ⊆ Fix(A) } as subgroup data:
/// with V = Span(N) this is the completion of N.
fn span_complete_subgroup(
    gamma: &SpaceGroup,
    v: &Subspace,
    vperp: &Subspace,
) -> Result<GroupData> {
    let ann_v = annihilator(v);
    let mut gens: Vec<AffineIso> = Vec::new();
    // translations: Gamma.lattice ∩ V
    for t in gamma.lattice().intersect_nullspace(&ann_v).basis_vectors() {
        gens.push(AffineIso::translation(t));
    }
    // cosets: point-group elements fixing Vperp pointwise, with a
    // representative whose translation lies in V
    for (b, vrep) in gamma.data().cosets() {
        if b.is_identity() {
            continue;
        }
        let fixes_vperp = vperp.basis().iter().all(|w| b.mul_vec(w) == *w);
        if !fixes_vperp {
            continue;
        }
        if let Some(t) = coset_solution(gamma, &ann_v, vrep) {
            gens.push(AffineIso::new(t, b.clone())?);
        }
    }
    GroupData::build(gamma.dim(), &gens, point_group_bound())
}

/// Completion of N in Gamma (Remark 1): the unique maximal normal
/// subgroup commensurable with N.
pub fn completion(gamma: &SpaceGroup, n: &GroupData) -> Result<GroupData> {
    let v = n.span();
    let vperp = v.orthogonal_complement(gamma.gram());
    span_complete_subgroup(gamma, &v, &vperp)
}

pub fn is_complete(gamma: &SpaceGroup, n: &GroupData) -> Result<bool> {
    Ok(completion(gamma, n)?.same_group(n))
}

/// Kernel of the action of Gamma on V: { b+B : b in Vperp, V ⊆ Fix(B) }.
/// Errors if V is not invariant under the point group.
pub fn kernel_of_action(gamma: &SpaceGroup, v: &Subspace) -> Result<GroupData> {
    for b in gamma.point_group() {
        for bv in v.basis() {
            if !v.contains(&b.mul_vec(bv)) {
                return Err(Error::NotInvariant);
            }
        }
    }
    let vperp = v.orthogonal_complement(gamma.gram());
    span_complete_subgroup(gamma, &vperp, v)
}

/// Full analysis of a pair (Gamma, N).
pub fn analyze(gamma: &SpaceGroup, n_gens: &[AffineIso]) -> Result<NormalAnalysis> {
    let n = verify_normal(gamma, n_gens)?;
    analyze_subgroup(gamma, n)
}

pub fn analyze_subgroup(gamma: &SpaceGroup, n: GroupData) -> Result<NormalAnalysis> {
    let v = n.span();
    let vperp = v.orthogonal_complement(gamma.gram());
    let completion = span_complete_subgroup(gamma, &v, &vperp)?;
    let complete = completion.same_group(&n);
    let k = kernel_of_action(gamma, &v)?;
    let dual_exists = k.span() == vperp;
    let mut analysis = NormalAnalysis {
        parent: gamma.clone(),
        n,
        v,
        vperp,
        complete,
        completion,
        k,
        dual_exists,
        structure: None,
    };
    if complete {
        let s = if dual_exists {
            structure_group_bfs(&analysis)?
        } else {
            // Theorem 5: no orthogonal dual means the quotient is infinite
            StructureGroup::infinite()
        };
        analysis.structure = Some(s);
    }
    debug_assert!(direct_product_check(&analysis));
    Ok(analysis)
}

/// N ∩ K = {I} and elementwise commutation, checked on generators.
fn direct_product_check(a: &NormalAnalysis) -> bool {
    let gens_n: Vec<AffineIso> = a
        .n
        .lattice()
        .basis_vectors()
        .into_iter()
        .map(AffineIso::translation)
        .chain(a.n.gens().iter().cloned())
        .collect();
    let gens_k: Vec<AffineIso> = a
        .k
        .lattice()
        .basis_vectors()
        .into_iter()
        .map(AffineIso::translation)
        .chain(a.k.gens().iter().cloned())
        .collect();
    for x in &gens_n {
        for y in &gens_k {
            if x.compose(y) != y.compose(x) {
                return false;
            }
        }
    }
    // intersection trivial: for a common linear part, the translation
    // cosets v_N + L_N and v_K + L_K may only meet at the identity
    if a.n.lattice().intersection(a.k.lattice()).rank() != 0 {
        return false;
    }
    for (b, vrep) in a.n.cosets() {
        if b.is_identity() {
            continue;
        }
        if let Some(kv) = a.k.vector_rep(b) {
            let d = vsub(vrep, kv);
            // the cosets intersect iff their difference lies in L_N + L_K
            if a.n.lattice().sum(a.k.lattice()).member(&d) {
                return false;
            }
        }
    }
    true
}

fn structure_group_bfs(a: &NormalAnalysis) -> Result<StructureGroup> {
    let gamma = &a.parent;
    let mut step: Vec<AffineIso> = gamma.gens().to_vec();
    step.extend(gamma.gens().iter().map(AffineIso::inverse));
    let mut reps = vec![AffineIso::identity(gamma.dim())];
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head].clone();
        for g in &step {
            let cand = r.compose(g);
            let known = reps.iter().any(|s| a.in_nk(&cand.compose(&s.inverse())));
            if !known {
                reps.push(cand);
                if reps.len() > 4096 {
                    return Err(Error::Unsupported(
                        "structure group enumeration exceeded bound".into(),
                    ));
                }
            }
        }
        head += 1;
    }
    let order = reps.len();
    let mut table = vec![vec![0usize; order]; order];
    for i in 0..order {
        for j in 0..order {
            let prod = reps[i].compose(&reps[j]);
            let k = (0..order)
                .find(|&k| a.in_nk(&prod.compose(&reps[k].inverse())))
                .expect("closed coset table");
            table[i][j] = k;
        }
    }
    let mut s = StructureGroup { finite: true, reps, table, kind: GroupKind::Trivial };
    s.kind = s.classify();
    Ok(s)
}
