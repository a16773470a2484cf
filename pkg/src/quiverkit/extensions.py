"""Extension constructions on based algebras.

* one-point extension A[M]: triangular matrix algebra on A and a module M,
  with one new source vertex whose indecomposable projective has radical M;
* one-point coextension: the dual construction, the new vertex is a sink;
* the bimodule of degree-2 self-extensions Ext^2(D A, A) with its exact
  left and right actions, computed from minimal resolutions of the
  indecomposable injectives;
* the trivial (relation) extension A x Ext^2(D A, A) for algebras of
  global dimension at most 2;
* an instance checker for commutation of the two constructions along a
  projective module, at the level of dimension, quiver and Cartan data.
"""

from __future__ import annotations

from dataclasses import dataclass

from quiverkit.algebra import (
    ArrowRep,
    BasedAlgebra,
    cartan_matrix,
    gabriel_quiver,
    opposite_algebra,
)
from quiverkit.homology import global_dim, lift_chain_map, min_resolution
from quiverkit.linalg import Matrix, SpanTracker
from quiverkit.quiver import quiver_isomorphism
from quiverkit.repmod import (
    Module,
    ModuleMap,
    decompose,
    direct_sum,
    dual_module,
    hom_basis,
    hom_coords,
    injective,
    is_isomorphic,
    projective,
    projective_basis_indices,
    radical_spans,
)


class ExtensionError(Exception):
    pass


def _fresh_names(base, count, taken):
    out = []
    k = 1
    while len(out) < count:
        cand = f"{base}{k}"
        if cand not in taken:
            out.append(cand)
            taken.add(cand)
        k += 1
    return out


def _fresh_vertex_id(vertices):
    try:
        return str(max(int(v) for v in vertices) + 1)
    except ValueError:
        k = 1
        while f"x{k}" in vertices:
            k += 1
        return f"x{k}"


def one_point_extension(a: BasedAlgebra, m: Module) -> BasedAlgebra:
    """The triangular matrix algebra on (a, m); the extension vertex is a
    source and the radical of its indecomposable projective is m."""
    if m.algebra is not a:
        raise ExtensionError("module is not over the algebra being extended")
    f = a.field
    nverts = len(a.vertices)
    new_id = _fresh_vertex_id(a.vertices)
    vertices = a.vertices + (new_id,)
    new_vi = nverts

    # basis: a-part, the new idempotent, then m-part grouped by vertex
    na = a.dim
    mslots = []  # (vertex index, local index)
    for v in range(nverts):
        for i in range(m.dims[v]):
            mslots.append((v, i))
    dim = na + 1 + len(mslots)
    taken = set(a.labels)
    e_label = f"e{new_id}"
    if e_label in taken:
        e_label = _fresh_names("e_ext", 1, taken)[0]
    taken.add(e_label)
    m_labels = _fresh_names("m", len(mslots), taken)
    labels = list(a.labels) + [e_label] + m_labels
    source = list(a.source) + [new_vi] + [new_vi] * len(mslots)
    target = list(a.target) + [new_vi] + [v for v, _ in mslots]
    idempotents = list(a.idempotents) + [na]
    radical = list(a.radical) + [na + 1 + t for t in range(len(mslots))]

    z = f.zero()
    zero_vec = [z] * dim
    moff = m.offsets()
    slot_of = {}
    for t, (v, i) in enumerate(mslots):
        slot_of[moff[v] + i] = na + 1 + t
    actions = m.basis_action()

    mult = [[list(zero_vec) for _ in range(dim)] for _ in range(dim)]
    for i in range(na):
        for j in range(na):
            prod = a.mult[i][j]
            vec = list(zero_vec)
            vec[:na] = list(prod)
            mult[i][j] = vec
    e_new = na
    vec = list(zero_vec)
    vec[e_new] = f.one()
    mult[e_new][e_new] = vec
    for t in range(len(mslots)):
        k = na + 1 + t
        vec = list(zero_vec)
        vec[k] = f.one()
        mult[e_new][k] = vec  # e_new is a left identity on the m-part
        v, i = mslots[t]
        et = a.idempotents[v]
        mult[k][et] = list(vec)  # and e_target a right identity
    for t, (v, i) in enumerate(mslots):
        k = na + 1 + t
        col = [z] * m.total_dim
        col[moff[v] + i] = f.one()
        for j in range(na):
            if j == a.idempotents[v]:
                continue
            img = actions[j].apply(col)
            vec = list(zero_vec)
            for pos, x in enumerate(img):
                if x != z:
                    vec[slot_of[pos]] = x
            mult[k][j] = vec

    # extension arrows: one per top(m) generator
    reps = []
    for r in a.arrow_reps:
        vec = list(zero_vec)
        vec[:na] = list(r.vector)
        reps.append(ArrowRep(r.name, r.source, r.target, tuple(vec)))
    rad = radical_spans(m)
    new_arrow_slots = []
    for v in range(nverts):
        d = m.dims[v]
        if d == 0:
            continue
        tr = SpanTracker(d, f)
        for vecs in rad[v]:
            tr.add(vecs)
        for i in range(d):
            unit = [z] * d
            unit[i] = f.one()
            if tr.add(unit):
                new_arrow_slots.append((v, i))
    arrow_names = _fresh_names("x", len(new_arrow_slots), set(r.name for r in reps))
    for nm, (v, i) in zip(arrow_names, new_arrow_slots):
        vec = list(zero_vec)
        vec[slot_of[moff[v] + i]] = f.one()
        reps.append(ArrowRep(nm, new_vi, v, tuple(vec)))

    return BasedAlgebra(f, vertices, labels, source, target, idempotents,
                        radical, mult, reps)


def one_point_coextension(a: BasedAlgebra, n: Module) -> BasedAlgebra:
    """Dual construction through the opposite algebra; the extension vertex
    is a sink (no outgoing arrows)."""
    op = a.opposite()
    dn = dual_module(n)
    ext = one_point_extension(op, Module(op, dn.dims, dn.mats, label=dn.label))
    return opposite_algebra(ext)


# ---------------------------------------------------------------------------
# the Ext^2 bimodule


@dataclass
class Bimodule:
    """Ext^2(D A, A) with its left and right A-actions.

    Basis vector t lives in the block (i, j) = blocks[t], meaning it is a
    degree-2 extension of the injective at j by the projective at i; under
    the actions these blocks behave like elements of e_i E e_j.
    """

    algebra: BasedAlgebra
    blocks: list  # (source vertex index, target vertex index) per basis vector
    left: list    # Matrix E -> E per algebra basis element
    right: list

    @property
    def dim(self):
        return len(self.blocks)

    def block_dims(self):
        out = {}
        for i, j in self.blocks:
            out[(i, j)] = out.get((i, j), 0) + 1
        return out

    def arrow_block_dims(self):
        """Dimensions per block of E modulo (rad.E + E.rad): the new-arrow
        counts of the trivial extension."""
        a = self.algebra
        f = a.field
        if self.dim == 0:
            return {}
        tr = SpanTracker(self.dim, f)
        for r in a.radical:
            for mat in (self.left[r], self.right[r]):
                for c in range(mat.cols):
                    tr.add(mat.column(c))
        out = {}
        for t in range(self.dim):
            unit = [f.zero()] * self.dim
            unit[t] = f.one()
            if tr.add(unit):
                key = self.blocks[t]
                out[key] = out.get(key, 0) + 1
        return out

    def act_left(self, algebra_vec, evec):
        f = self.algebra.field
        out = [f.zero()] * self.dim
        for k, c in enumerate(algebra_vec):
            if c == f.zero():
                continue
            img = self.left[k].apply(evec)
            out = [f.add(out[t], f.mul(c, img[t])) for t in range(self.dim)]
        return out

    def act_right(self, algebra_vec, evec):
        f = self.algebra.field
        out = [f.zero()] * self.dim
        for k, c in enumerate(algebra_vec):
            if c == f.zero():
                continue
            img = self.right[k].apply(evec)
            out = [f.add(out[t], f.mul(c, img[t])) for t in range(self.dim)]
        return out


def _left_mult_map(a, k, projs):
    """Left multiplication by basis element k as a map P(target) -> P(source)."""
    f = a.field
    s, t = a.source[k], a.target[k]
    src_mod = projs[t]
    tgt_mod = projs[s]
    blocks = []
    for w in range(len(a.vertices)):
        from_basis = projective_basis_indices(a, a.vertices[t])[w]
        to_basis = projective_basis_indices(a, a.vertices[s])[w]
        mat = Matrix.zeros(f, len(to_basis), len(from_basis))
        for col, kb in enumerate(from_basis):
            prod = a.mul_vec(a.unit(k), a.unit(kb))
            for row, kb2 in enumerate(to_basis):
                mat.data[row][col] = prod[kb2]
        blocks.append(mat)
    return ModuleMap(src_mod, tgt_mod, blocks)


def _dual_right_mult_map(a, k, injs):
    """D of right multiplication by basis element k: I(target) -> I(source)."""
    f = a.field
    s, t = a.source[k], a.target[k]
    src_mod = injs[t]
    tgt_mod = injs[s]
    blocks = []
    for w in range(len(a.vertices)):
        cols_basis = a.basis_by_grade(w, t)   # I(t)_w is dual to these
        rows_basis = a.basis_by_grade(w, s)
        # phi: e_w A e_s -> e_w A e_t, x -> x * b_k; dual matrix is phi^T
        phi = Matrix.zeros(f, len(cols_basis), len(rows_basis))
        for col, kb in enumerate(rows_basis):
            prod = a.mul_vec(a.unit(kb), a.unit(k))
            for row, kb2 in enumerate(cols_basis):
                phi.data[row][col] = prod[kb2]
        blocks.append(phi.transpose())
    return ModuleMap(src_mod, tgt_mod, blocks)


class _Ext2Block:
    """Cocycle bookkeeping for one block Ext^2(I(j), P(i)).

    With a resolution no longer than 2, every map out of the second term is
    a cocycle; representatives are hom-basis elements completing the
    boundary span, and `reduce` rewrites any cocycle over them through the
    change-of-basis matrix [boundaries | representatives].
    """

    def __init__(self, a, p2_mod, target, diff2):
        self.field = a.field
        self.hom = hom_basis(p2_mod, target) if p2_mod is not None else []
        self.rep_positions = []
        self._solve_matrix = None
        self._n_boundary = 0
        if p2_mod is None or not self.hom:
            return
        f = self.field
        nh = len(self.hom)
        tracker = SpanTracker(nh, f)
        boundary_cols = []
        if diff2 is not None:
            # boundaries psi o d2 with psi ranging over Hom(P1, target)
            for psi in hom_basis(diff2.target, target):
                coords = hom_coords(self.hom, psi.compose(diff2))
                if tracker.add(coords):
                    boundary_cols.append(coords)
        for pos in range(nh):
            unit = [f.zero()] * nh
            unit[pos] = f.one()
            if tracker.add(unit):
                self.rep_positions.append(pos)
        self._n_boundary = len(boundary_cols)
        cols = boundary_cols + [
            [f.one() if i == pos else f.zero() for i in range(nh)]
            for pos in self.rep_positions
        ]
        self._solve_matrix = Matrix(
            f, [[cols[j][i] for j in range(len(cols))] for i in range(nh)], nh, len(cols))

    @property
    def dim(self):
        return len(self.rep_positions)

    def reduce(self, mmap):
        """Coefficients over this block's representatives of a cocycle map."""
        f = self.field
        if not self.hom:
            return []
        coords = hom_coords(self.hom, mmap)
        if coords is None:
            raise ExtensionError("map is not in the hom space of this block")
        from quiverkit.linalg import solve as lin_solve
        sol = lin_solve(self._solve_matrix, coords)
        if sol is None:
            raise ExtensionError("cocycle reduction failed")
        return sol[self._n_boundary:]


def ext2_bimodule(c: BasedAlgebra) -> Bimodule:
    """Ext^2(D C, C) with its bimodule structure (global dimension <= 2).

    The left action post-composes cocycles with left-multiplication maps
    between projectives; the right action precomposes with deterministic
    chain lifts of the dualised right-multiplication maps on injectives.
    """
    gd = global_dim(c, cap=3)
    if gd is None or gd > 2:
        raise ExtensionError("relation extension needs global dimension <= 2")
    f = c.field
    nverts = len(c.vertices)
    projs = [projective(c, v) for v in c.vertices]
    injs = [injective(c, v) for v in c.vertices]
    resolutions = [min_resolution(injs[j], 3) for j in range(nverts)]
    for res in resolutions:
        t3 = res.term_module(3)
        if t3 is not None and not t3.is_zero():
            raise ExtensionError("resolution longer than the global dimension bound")

    blocks = {}
    basis = []  # (i, j, position within block)
    for j in range(nverts):
        res = resolutions[j]
        p2 = res.term_module(2)
        d2 = res.diffs[1] if len(res.diffs) >= 2 else None
        for i in range(nverts):
            blk = _Ext2Block(c, None if p2 is None or p2.is_zero() else p2,
                             projs[i], d2)
            blocks[(i, j)] = blk
            for t in range(blk.dim):
                basis.append((i, j, t))

    dimE = len(basis)
    pos_of = {}
    for pos, (i, j, t) in enumerate(basis):
        pos_of[(i, j, t)] = pos

    # precompute chain lifts of the dualised right-multiplication maps
    left_mats = []
    right_mats = []
    for k in range(c.dim):
        s, t = c.source[k], c.target[k]
        lm = Matrix.zeros(f, dimE, dimE)
        if dimE:
            lam = _left_mult_map(c, k, projs)
            for pos, (i, j, u) in enumerate(basis):
                if i != t:
                    continue
                blk = blocks[(i, j)]
                rep = blk.hom[blk.rep_positions[u]]
                image = lam.compose(rep)  # P2(I(j)) -> P(s)
                out_blk = blocks[(s, j)]
                coeffs = out_blk.reduce(image)
                for u2, val in enumerate(coeffs):
                    if val != f.zero():
                        lm.data[pos_of[(s, j, u2)]][pos] = val
        left_mats.append(lm)

        rm = Matrix.zeros(f, dimE, dimE)
        if dimE:
            mu = _dual_right_mult_map(c, k, injs)  # I(t) -> I(s)
            p2_src = resolutions[t].term_module(2)
            if p2_src is not None and not p2_src.is_zero():
                lifts = lift_chain_map(mu, resolutions[t], resolutions[s], 2)
                lam2 = lifts[2]
            else:
                lam2 = None
            for pos, (i, j, u) in enumerate(basis):
                if j != s or lam2 is None:
                    continue
                blk = blocks[(i, j)]
                rep = blk.hom[blk.rep_positions[u]]
                image = rep.compose(lam2)  # P2(I(t)) -> P(i)
                out_blk = blocks[(i, t)]
                coeffs = out_blk.reduce(image)
                for u2, val in enumerate(coeffs):
                    if val != f.zero():
                        rm.data[pos_of[(i, t, u2)]][pos] = val
        right_mats.append(rm)

    return Bimodule(c, [(i, j) for (i, j, _) in basis], left_mats, right_mats)


# ---------------------------------------------------------------------------
# trivial (relation) extension


def relation_extension(c: BasedAlgebra) -> BasedAlgebra:
    """The trivial extension of c by Ext^2(D c, c).

    Multiplication is (x, e)(x', e') = (x x', x.e' + e.x'); the second
    summand squares to zero and the radical is rad(c) plus the whole
    second summand.
    """
    ext2 = ext2_bimodule(c)
    f = c.field
    na = c.dim
    ne = ext2.dim
    dim = na + ne
    z = f.zero()
    zero_vec = [z] * dim
    taken = set(c.labels)
    e_labels = _fresh_names("n", ne, taken)
    labels = list(c.labels) + e_labels
    source = list(c.source) + [i for (i, j) in ext2.blocks]
    target = list(c.target) + [j for (i, j) in ext2.blocks]
    idempotents = list(c.idempotents)
    radical = list(c.radical) + [na + t for t in range(ne)]

    mult = [[list(zero_vec) for _ in range(dim)] for _ in range(dim)]
    for i in range(na):
        for j in range(na):
            vec = list(zero_vec)
            vec[:na] = list(c.mult[i][j])
            mult[i][j] = vec
    for i in range(na):
        for t in range(ne):
            vec = list(zero_vec)
            col = ext2.left[i].column(t)
            for u, x in enumerate(col):
                vec[na + u] = x
            mult[i][na + t] = vec
            vec = list(zero_vec)
            col = ext2.right[i].column(t)
            for u, x in enumerate(col):
                vec[na + u] = x
            mult[na + t][i] = vec
    # E * E = 0: already zero vectors

    reps = []
    for r in c.arrow_reps:
        vec = list(zero_vec)
        vec[:na] = list(r.vector)
        reps.append(ArrowRep(r.name, r.source, r.target, tuple(vec)))
    tr = SpanTracker(ne, f)
    for r in c.radical:
        for mat in (ext2.left[r], ext2.right[r]):
            for col in range(mat.cols):
                tr.add(mat.column(col))
    for t in range(ne):
        unit = [z] * ne
        unit[t] = f.one()
        if tr.add(unit):
            i, j = ext2.blocks[t]
            vec = list(zero_vec)
            vec[na + t] = f.one()
            reps.append(ArrowRep(e_labels[t], i, j, tuple(vec)))

    out = BasedAlgebra(f, c.vertices, labels, source, target, idempotents,
                       radical, mult, reps)
    out._ext2 = ext2  # kept for tests and the projective-lift check
    return out


def restrict_to_base(m: Module, c: BasedAlgebra) -> Module:
    """Restrict a module over the trivial extension of c along the canonical
    embedding of c (same vertices; the base arrows keep their names)."""
    r = m.algebra
    if r.vertices != c.vertices:
        raise ExtensionError("vertex mismatch with the base algebra")
    mats = {}
    for rep in c.arrow_reps:
        if rep.name not in m.mats:
            raise ExtensionError(f"arrow {rep.name} missing from the extension")
        mats[rep.name] = m.mats[rep.name]
    return Module(c, m.dims, mats, label=f"{m.label}|base")


def ext2_row_module(ext2: Bimodule, vertex_index: int) -> Module:
    """The right-module slice e_v . Ext^2(D c, c) of the bimodule."""
    c = ext2.algebra
    f = c.field
    nverts = len(c.vertices)
    positions = [[] for _ in range(nverts)]
    for t, (i, j) in enumerate(ext2.blocks):
        if i == vertex_index:
            positions[j].append(t)
    dims = [len(p) for p in positions]
    mats = {}
    for rep in c.arrow_reps:
        s, t = rep.source, rep.target
        mat = Matrix.zeros(f, dims[t], dims[s])
        for col, u in enumerate(positions[s]):
            unit = [f.zero()] * ext2.dim
            unit[u] = f.one()
            img = ext2.act_right(list(rep.vector), unit)
            for row, u2 in enumerate(positions[t]):
                mat.data[row][col] = img[u2]
        mats[rep.name] = mat
    return Module(c, dims, mats, label=f"ext2 row {c.vertices[vertex_index]}")


def lift_projective(c: BasedAlgebra, p: Module, r: BasedAlgebra) -> Module:
    """The projective over the trivial extension r with the same summand
    multiplicities as the projective p over c."""
    if p.algebra is not c:
        raise ExtensionError("module is not over the given algebra")
    mult_per_vertex = [0] * len(c.vertices)
    for summand, mult in decompose(p):
        match = None
        for vi, v in enumerate(c.vertices):
            if is_isomorphic(summand, projective(c, v)):
                match = vi
                break
        if match is None:
            raise ExtensionError("module is not projective")
        mult_per_vertex[match] += mult
    mods = []
    for vi, v in enumerate(r.vertices):
        for _ in range(mult_per_vertex[vi]):
            mods.append(projective(r, v))
    return direct_sum(r, mods, label=f"lift {p.label}")


# ---------------------------------------------------------------------------
# instance verification of the commutation of the two constructions


@dataclass
class CommutationReport:
    """Invariant-level comparison of the two composite extensions.

    A failed invariant disproves the isomorphism; all invariants passing is
    strong evidence, recorded as "consistent with isomorphism", not proof.
    """

    dimension_left: int
    dimension_right: int
    quiver_iso: object  # vertex map or None
    cartan_equal: bool
    verdict: str

    def to_json(self):
        return {
            "dimensions": [self.dimension_left, self.dimension_right],
            "quiver_iso": self.quiver_iso,
            "cartan_equal": self.cartan_equal,
            "verdict": self.verdict,
        }


def verify_extension_commutes(c: BasedAlgebra, p: Module) -> CommutationReport:
    """Compare the relation extension of the one-point extension with the
    one-point extension of the relation extension by the lifted projective."""
    left = relation_extension(one_point_extension(c, p))
    rc = relation_extension(c)
    pbar = lift_projective(c, p, rc)
    right = one_point_extension(rc, pbar)

    dim_l, dim_r = left.dim, right.dim
    gq_l, gq_r = gabriel_quiver(left), gabriel_quiver(right)
    ct_l, ct_r = cartan_matrix(left), cartan_matrix(right)
    perm = quiver_isomorphism(gq_l, gq_r, extra_matrices=([ct_l], [ct_r]))
    cartan_equal = perm is not None
    if perm is None:
        perm = quiver_isomorphism(gq_l, gq_r)
    ok = dim_l == dim_r and perm is not None and cartan_equal
    return CommutationReport(
        dimension_left=dim_l,
        dimension_right=dim_r,
        quiver_iso=perm,
        cartan_equal=cartan_equal,
        verdict="consistent with isomorphism" if ok else "NOT isomorphic",
    )
