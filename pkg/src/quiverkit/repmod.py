"""Right modules over a BasedAlgebra in quiver-representation form.

A module assigns to each vertex a finite-dimensional space and to each
Gabriel-quiver arrow i -> j a matrix M_i -> M_j (right action, arrows
composed left to right).  Everything downstream -- Hom spaces, radical
series, projective covers, duality, decomposition -- is exact linear
algebra over the algebra's field.
"""

from __future__ import annotations

from dataclasses import dataclass

from quiverkit.algebra import BasedAlgebra
from quiverkit.linalg import (
    Matrix,
    SpanTracker,
    kernel_basis,
    matmul,
    rref,
    solve,
)

import numpy as np


class ModuleError(Exception):
    pass


class Module:
    """A right module in representation form over a BasedAlgebra."""

    __slots__ = ("algebra", "dims", "mats", "label", "_basis_action", "_key")

    def __init__(self, algebra: BasedAlgebra, dims, mats, label="M", validate=False):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != len(algebra.vertices):
            raise ModuleError("one dimension per vertex required")
        self.mats = {}
        for rep in algebra.arrow_reps:
            m = mats.get(rep.name)
            expected = (self.dims[rep.target], self.dims[rep.source])
            if m is None:
                m = Matrix.zeros(algebra.field, *expected)
            if (m.rows, m.cols) != expected:
                raise ModuleError(
                    f"action for {rep.name} has shape {(m.rows, m.cols)}, expected {expected}"
                )
            self.mats[rep.name] = m
        self.label = label
        self._basis_action = None
        self._key = None
        if validate:
            _validate_relations(self)

    @property
    def total_dim(self):
        return sum(self.dims)

    def dim_vector(self):
        return self.dims

    def offsets(self):
        off = []
        acc = 0
        for d in self.dims:
            off.append(acc)
            acc += d
        return off

    def key(self):
        if self._key is None:
            self._key = (
                self.dims,
                tuple(sorted(
                    (name, tuple(tuple(row) for row in m.data))
                    for name, m in self.mats.items()
                )),
            )
        return self._key

    def is_zero(self):
        return self.total_dim == 0

    def arrow_big_matrix(self, name):
        """Arrow action as a map on the total space (block at (target, source))."""
        a = self.algebra
        rep = next(r for r in a.arrow_reps if r.name == name)
        T = self.total_dim
        off = self.offsets()
        big = Matrix.zeros(a.field, T, T)
        m = self.mats[name]
        r0, c0 = off[rep.target], off[rep.source]
        for i in range(m.rows):
            for j in range(m.cols):
                big.data[r0 + i][c0 + j] = m.data[i][j]
        return big

    def basis_action(self):
        """Total-space action matrix of every algebra basis element."""
        if self._basis_action is not None:
            return self._basis_action
        a = self.algebra
        f = a.field
        T = self.total_dim
        off = self.offsets()
        arrow_big = {r.name: self.arrow_big_matrix(r.name) for r in a.arrow_reps}
        proj = {}
        for vi in range(len(a.vertices)):
            p = Matrix.zeros(f, T, T)
            for i in range(self.dims[vi]):
                p.data[off[vi] + i][off[vi] + i] = f.one()
            proj[vi] = p
        out = []
        exprs = a.basis_expressions()
        for k in range(a.dim):
            acc = Matrix.zeros(f, T, T)
            for coeff, v0, word in exprs[k]:
                cur = proj[v0]
                for ai in word:
                    cur = matmul(arrow_big[a.arrow_reps[ai].name], cur)
                for i in range(T):
                    row = cur.data[i]
                    arow = acc.data[i]
                    for j in range(T):
                        if row[j] != f.zero():
                            arow[j] = f.add(arow[j], f.mul(coeff, row[j]))
            out.append(acc)
        self._basis_action = out
        return out

    def act_vec(self, algebra_vec):
        """Total-space matrix of the action of an algebra element."""
        a = self.algebra
        f = a.field
        T = self.total_dim
        acc = Matrix.zeros(f, T, T)
        actions = self.basis_action()
        for k, c in enumerate(algebra_vec):
            if c == f.zero():
                continue
            mk = actions[k]
            for i in range(T):
                row = mk.data[i]
                arow = acc.data[i]
                for j in range(T):
                    if row[j] != f.zero():
                        arow[j] = f.add(arow[j], f.mul(c, row[j]))
        return acc

    def __repr__(self):
        return f"Module({self.label}, dims={list(self.dims)})"


def _validate_relations(m: Module):
    a = m.algebra
    pres = a.origin
    if pres is None:
        # consistency of the arrow action with the structure constants:
        # the action of b_i composed with b_j must equal the action of b_i*b_j
        actions = m.basis_action()
        f = a.field
        for i in range(a.dim):
            for j in range(a.dim):
                # right action: act(x * y) = act(y) o act(x)
                lhs = matmul(actions[j], actions[i])
                rhs = m.act_vec(a.mult[i][j])
                if lhs != rhs:
                    raise ModuleError("module action violates the structure constants")
        return
    f = a.field
    for rel in pres.relations:
        acc = None
        for coeff, names in rel.terms:
            cur = None
            src = pres.quiver.arrow_by_name(names[0]).source
            si = a.vertex_index(src)
            cur = Matrix.identity(f, m.dims[si])
            for nm in names:
                cur = matmul(m.mats[nm], cur)
            term = Matrix(f, [[f.mul(coeff, x) for x in row] for row in cur.data],
                          cur.rows, cur.cols)
            acc = term if acc is None else Matrix(
                f,
                [[f.add(acc.data[i][j], term.data[i][j]) for j in range(acc.cols)]
                 for i in range(acc.rows)],
                acc.rows, acc.cols)
        if acc is not None and not acc.is_zero():
            raise ModuleError("a relation does not act as zero")


@dataclass
class ModuleMap:
    """A homomorphism of modules: one matrix per vertex, commuting with all
    arrow actions."""

    source: Module
    target: Module
    blocks: list  # Matrix per vertex: target.dims[v] x source.dims[v]

    def compose(self, first):
        """self after first (first: X -> source, result: X -> target)."""
        return ModuleMap(first.source, self.target,
                         [matmul(self.blocks[v], first.blocks[v])
                          for v in range(len(self.blocks))])

    def flatten(self):
        out = []
        for b in self.blocks:
            for row in b.data:
                out.extend(row)
        return out

    def is_invertible(self):
        if self.source.dims != self.target.dims:
            return False
        for b in self.blocks:
            if b.rows != b.cols:
                return False
            if b.rows and rref(b).rank != b.rows:
                return False
        return True

    def trace(self):
        f = self.source.algebra.field
        acc = f.zero()
        for b in self.blocks:
            for i in range(min(b.rows, b.cols)):
                acc = f.add(acc, b.data[i][i])
        return acc


def zero_map(m: Module, n: Module) -> ModuleMap:
    f = m.algebra.field
    return ModuleMap(m, n, [Matrix.zeros(f, n.dims[v], m.dims[v])
                            for v in range(len(m.dims))])


def identity_map(m: Module) -> ModuleMap:
    f = m.algebra.field
    return ModuleMap(m, m, [Matrix.identity(f, d) for d in m.dims])


def map_from_flat(m: Module, n: Module, flat) -> ModuleMap:
    f = m.algebra.field
    blocks = []
    pos = 0
    for v in range(len(m.dims)):
        r, c = n.dims[v], m.dims[v]
        data = []
        for i in range(r):
            data.append(list(flat[pos:pos + c]))
            pos += c
        blocks.append(Matrix(f, data, r, c))
    return ModuleMap(m, n, blocks)


# ---------------------------------------------------------------------------
# basic modules


def simple(a: BasedAlgebra, v) -> Module:
    i = a.vertex_index(v)
    dims = [0] * len(a.vertices)
    dims[i] = 1
    return Module(a, dims, {}, label=f"S({v})")


def projective_basis_indices(a: BasedAlgebra, v):
    """Basis indices of e_v * A grouped per target vertex (in basis order)."""
    vi = a.vertex_index(v)
    per_vertex = [[] for _ in a.vertices]
    for k in range(a.dim):
        if a.source[k] == vi:
            per_vertex[a.target[k]].append(k)
    return per_vertex

def projective(a: BasedAlgebra, v) -> Module:
    """P(v) = e_v A with action by right multiplication."""
    f = a.field
    per_vertex = projective_basis_indices(a, v)
    dims = [len(lst) for lst in per_vertex]
    mats = {}
    for rep in a.arrow_reps:
        src, tgt = rep.source, rep.target
        m = Matrix.zeros(f, dims[tgt], dims[src])
        for col, k in enumerate(per_vertex[src]):
            prod = a.mul_vec(a.unit(k), list(rep.vector))
            for row, k2 in enumerate(per_vertex[tgt]):
                m.data[row][col] = prod[k2]
        mats[rep.name] = m
    return Module(a, dims, mats, label=f"P({v})")


def dual_module(m: Module) -> Module:
    """D(M) over the opposite algebra: spaces dualised, actions transposed."""
    a = m.algebra
    op = a.opposite()
    mats = {}
    for rep in op.arrow_reps:
        # the op-arrow with the same name reverses the original arrow
        mats[rep.name] = m.mats[rep.name].transpose()
    return Module(op, list(m.dims), mats, label=f"D({m.label})")


def injective(a: BasedAlgebra, v) -> Module:
    """I(v) as the dual of the opposite algebra's projective at v."""
    m = dual_module(projective(a.opposite(), v))
    return Module(a, m.dims, m.mats, label=f"I({v})")


def direct_sum(a: BasedAlgebra, mods, label=None) -> Module:
    f = a.field
    n = len(a.vertices)
    dims = [sum(m.dims[v] for m in mods) for v in range(n)]
    mats = {}
    for rep in a.arrow_reps:
        big = Matrix.zeros(f, dims[rep.target], dims[rep.source])
        r0 = c0 = 0
        for m in mods:
            blk = m.mats[rep.name]
            for i in range(blk.rows):
                for j in range(blk.cols):
                    big.data[r0 + i][c0 + j] = blk.data[i][j]
            r0 += m.dims[rep.target]
            c0 += m.dims[rep.source]
        mats[rep.name] = big
    if label is None:
        label = "+".join(m.label for m in mods) if mods else "0"
    return Module(a, dims, mats, label=label)


def zero_module(a: BasedAlgebra) -> Module:
    return Module(a, [0] * len(a.vertices), {}, label="0")


# ---------------------------------------------------------------------------
# hom spaces


def hom_basis(m: Module, n: Module):
    """Basis of Hom(M, N): solutions of the arrow-commutation system."""
    if m.algebra is not n.algebra:
        raise ModuleError("modules over different algebras")
    a = m.algebra
    f = a.field
    if m.total_dim == 0 or n.total_dim == 0:
        return []
    if f.kind == "prime":
        return _hom_basis_prime(m, n)
    return _hom_basis_generic(m, n)


def _unknown_layout(m, n):
    offs = []
    pos = 0
    for v in range(len(m.dims)):
        offs.append(pos)
        pos += n.dims[v] * m.dims[v]
    return offs, pos


def _hom_basis_generic(m, n):
    a = m.algebra
    f = a.field
    offs, total = _unknown_layout(m, n)
    rows = []
    z = f.zero()
    for rep in a.arrow_reps:
        i, j = rep.source, rep.target
        A = m.mats[rep.name]   # m.dims[j] x m.dims[i]
        B = n.mats[rep.name]
        di, dj = m.dims[i], m.dims[j]
        ei, ej = n.dims[i], n.dims[j]
        if di == 0 or ej == 0:
            continue
        for r in range(ej):
            for c in range(di):
                row = [z] * total
                # + (F_j A)[r, c]
                for s in range(dj):
                    if A.data[s][c] != z:
                        row[offs[j] + r * dj + s] = f.add(row[offs[j] + r * dj + s], A.data[s][c])
                # - (B F_i)[r, c]
                for t in range(ei):
                    if B.data[r][t] != z:
                        idx = offs[i] + t * di + c
                        row[idx] = f.sub(row[idx], B.data[r][t])
                rows.append(row)
    if not rows:
        vecs = []
        for k in range(total):
            v = [z] * total
            v[k] = f.one()
            vecs.append(v)
    else:
        vecs = kernel_basis(Matrix(f, rows, len(rows), total))
    return [_unflatten_hom(m, n, v) for v in vecs]


def _hom_basis_prime(m, n):
    a = m.algebra
    p = a.field.p
    offs, total = _unknown_layout(m, n)
    blocks = []
    for rep in a.arrow_reps:
        i, j = rep.source, rep.target
        di, dj = m.dims[i], m.dims[j]
        ei, ej = n.dims[i], n.dims[j]
        if di == 0 or ej == 0:
            continue
        A = np.array(m.mats[rep.name].data, dtype=np.int64).reshape(dj, di)
        B = np.array(n.mats[rep.name].data, dtype=np.int64).reshape(ej, ei)
        rows = np.zeros((ej * di, total), dtype=np.int64)
        if dj:
            rows[:, offs[j]:offs[j] + ej * dj] = np.kron(np.eye(ej, dtype=np.int64), A.T)
        if ei:
            rows[:, offs[i]:offs[i] + ei * di] -= np.kron(B, np.eye(di, dtype=np.int64))
        blocks.append(rows % p)
    if not blocks:
        basis = np.eye(total, dtype=np.int64)
        vecs = [list(map(int, basis[k])) for k in range(total)]
    else:
        big = np.vstack(blocks)
        vecs = _nullspace_prime(big, p)
    return [_unflatten_hom(m, n, v) for v in vecs]


def _nullspace_prime(a, p):
    a = a % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    out = []
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for rr, pc in enumerate(pivots):
            if a[rr, fc]:
                v[pc] = (-a[rr, fc]) % p
        out.append([int(x) for x in v])
    return out


def _unflatten_hom(m, n, flat):
    f = m.algebra.field
    blocks = []
    pos = 0
    for v in range(len(m.dims)):
        r, c = n.dims[v], m.dims[v]
        data = [list(flat[pos + i * c: pos + (i + 1) * c]) for i in range(r)]
        pos += r * c
        blocks.append(Matrix(f, data, r, c))
    return ModuleMap(m, n, blocks)


def hom_coords(basis, target_map):
    """Coordinates of target_map in the given hom basis (None if outside)."""
    if not basis:
        return None if any(not b.is_zero() for b in target_map.blocks) else []
    f = basis[0].source.algebra.field
    cols = [b.flatten() for b in basis]
    mat = Matrix(f, [[cols[j][i] for j in range(len(cols))]
                     for i in range(len(cols[0]))])
    return solve(mat, target_map.flatten())


# ---------------------------------------------------------------------------
# submodules, quotients, kernels


def submodule_from_spans(m: Module, spans, label="U"):
    """Module on the given per-vertex spanning vectors, with the inclusion.

    spans[v] is a list of coordinate vectors in M_v whose span must be
    closed under all arrow actions.
    """
    a = m.algebra
    f = a.field
    bases = []
    for v in range(len(m.dims)):
        vecs = spans[v]
        if vecs:
            res = rref(Matrix(f, vecs, len(vecs), m.dims[v]))
            bases.append([res.reduced.data[i] for i in range(res.rank)])
        else:
            bases.append([])
    dims = [len(b) for b in bases]
    incl_blocks = [
        Matrix.from_columns(f, bases[v], m.dims[v]) if bases[v]
        else Matrix.zeros(f, m.dims[v], 0)
        for v in range(len(m.dims))
    ]
    mats = {}
    for rep in a.arrow_reps:
        src, tgt = rep.source, rep.target
        A = m.mats[rep.name]
        out = Matrix.zeros(f, dims[tgt], dims[src])
        if dims[src] and dims[tgt]:
            img = matmul(A, incl_blocks[src])
            for col in range(dims[src]):
                coords = solve(incl_blocks[tgt], img.column(col))
                if coords is None:
                    raise ModuleError("spans not closed under the arrow actions")
                for row in range(dims[tgt]):
                    out.data[row][col] = coords[row]
        elif dims[src]:
            img = matmul(A, incl_blocks[src])
            if not img.is_zero():
                raise ModuleError("spans not closed under the arrow actions")
        mats[rep.name] = out
    sub = Module(a, dims, mats, label=label)
    return sub, ModuleMap(sub, m, incl_blocks)


def quotient_module(m: Module, spans, label="Q"):
    """Quotient of M by the submodule spanned per-vertex by spans."""
    a = m.algebra
    f = a.field
    z = f.zero()
    proj_blocks = []
    sections = []
    for v in range(len(m.dims)):
        d = m.dims[v]
        vecs = spans[v]
        if not vecs:
            proj_blocks.append(Matrix.identity(f, d))
            sections.append(Matrix.identity(f, d))
            continue
        res = rref(Matrix(f, vecs, len(vecs), d))
        pivots = res.pivot_columns
        pivot_set = set(pivots)
        free = [c for c in range(d) if c not in pivot_set]
        # projection with kernel the span: free coordinates of the reduction
        pr = Matrix.zeros(f, len(free), d)
        for r_i, c in enumerate(free):
            pr.data[r_i][c] = f.one()
        for rr, pc in enumerate(pivots):
            for r_i, c in enumerate(free):
                val = res.reduced.data[rr][c]
                if val != z:
                    pr.data[r_i][pc] = f.neg(val)
        sec = Matrix.zeros(f, d, len(free))
        for r_i, c in enumerate(free):
            sec.data[c][r_i] = f.one()
        proj_blocks.append(pr)
        sections.append(sec)
    dims = [b.rows for b in proj_blocks]
    mats = {}
    for rep in a.arrow_reps:
        src, tgt = rep.source, rep.target
        A = m.mats[rep.name]
        if dims[src] and dims[tgt]:
            out = matmul(proj_blocks[tgt], matmul(A, sections[src]))
        else:
            out = Matrix.zeros(f, dims[tgt], dims[src])
        mats[rep.name] = out
    quot = Module(a, dims, mats, label=label)
    return quot, ModuleMap(m, quot, proj_blocks)


def kernel_of(fmap: ModuleMap, label="ker"):
    spans = []
    m = fmap.source
    for v in range(len(m.dims)):
        vecs = kernel_basis(fmap.blocks[v])
        spans.append(vecs)
    return submodule_from_spans(m, spans, label=label)


def image_spans(fmap: ModuleMap):
    return [[fmap.blocks[v].column(j) for j in range(fmap.blocks[v].cols)]
            for v in range(len(fmap.source.dims))]


def cokernel_of(fmap: ModuleMap, label="coker"):
    return quotient_module(fmap.target, image_spans(fmap), label=label)


# ---------------------------------------------------------------------------
# radical series, socle


def radical_spans(m: Module):
    """Per-vertex spanning vectors of M . rad (images of all arrow actions)."""
    spans = [[] for _ in m.dims]
    for rep in m.algebra.arrow_reps:
        A = m.mats[rep.name]
        for j in range(A.cols):
            spans[rep.target].append(A.column(j))
    return spans


def radical_of(m: Module) -> Module:
    sub, _ = submodule_from_spans(m, radical_spans(m), label=f"rad {m.label}")
    return sub


def radical_embedding(m: Module):
    return submodule_from_spans(m, radical_spans(m), label=f"rad {m.label}")


def top_of(m: Module) -> Module:
    quot, _ = quotient_module(m, radical_spans(m), label=f"top {m.label}")
    return quot


def socle_spans(m: Module):
    """Per-vertex joint kernels of all arrow actions out of the vertex."""
    a = m.algebra
    f = a.field
    spans = []
    for v in range(len(m.dims)):
        rows = []
        for rep in a.arrow_reps:
            if rep.source == v:
                rows.extend(m.mats[rep.name].data)
        if not rows:
            spans.append([list(row) for row in Matrix.identity(f, m.dims[v]).data])
        else:
            spans.append(kernel_basis(Matrix(f, rows, len(rows), m.dims[v])))
    return spans


def socle_of(m: Module) -> Module:
    sub, _ = submodule_from_spans(m, socle_spans(m), label=f"soc {m.label}")
    return sub


def socle_quotient(m: Module) -> Module:
    quot, _ = quotient_module(m, socle_spans(m), label=f"{m.label}/soc")
    return quot


def loewy_label(m: Module) -> str:
    """Radical-layer label such as "1/2 3/4" (top layer first)."""
    if m.is_zero():
        return "0"
    a = m.algebra
    layers = []
    cur = m
    while not cur.is_zero():
        nxt = radical_of(cur)
        content = [cur.dims[v] - nxt.dims[v] for v in range(len(cur.dims))]
        parts = []
        for v, c in enumerate(content):
            parts.extend([str(a.vertices[v])] * c)
        layers.append(" ".join(parts))
        cur = nxt
    return "/".join(layers)


# ---------------------------------------------------------------------------
# projective covers and presentations


@dataclass
class ProjectiveSum:
    """An explicit finite direct sum of indecomposable projectives.

    verts lists the defining vertex index of each summand; the module's
    vertex space at w concatenates the summands' spaces in order.
    """

    algebra: BasedAlgebra
    verts: list
    module: Module

    def summand_offsets(self, w):
        per = []
        acc = 0
        for v in self.verts:
            d = len([k for k in range(self.algebra.dim)
                     if self.algebra.source[k] == v and self.algebra.target[k] == w])
            per.append((acc, d))
            acc += d
        return per


def projective_sum(a: BasedAlgebra, verts, label=None) -> ProjectiveSum:
    mods = [projective(a, a.vertices[v]) for v in verts]
    label = label or "+".join(f"P({a.vertices[v]})" for v in verts)
    return ProjectiveSum(a, list(verts), direct_sum(a, mods, label=label or "P"))


def psum_map(psum: ProjectiveSum, target: Module, gen_images) -> ModuleMap:
    """The module map out of the projective sum sending the c-th summand's
    generator (the idempotent basis element) to gen_images[c] (a coordinate
    vector in target at the summand's vertex)."""
    a = psum.algebra
    f = a.field
    m = psum.module
    blocks = [Matrix.zeros(f, target.dims[w], m.dims[w]) for w in range(len(m.dims))]
    actions = target.basis_action()
    toff = target.offsets()
    T = target.total_dim
    for c, v in enumerate(psum.verts):
        gvec = [f.zero()] * T
        for jj, x in enumerate(gen_images[c]):
            gvec[toff[v] + jj] = x
        per_vertex = projective_basis_indices(a, a.vertices[v])
        for w in range(len(a.vertices)):
            off, _ = psum.summand_offsets(w)[c]
            for pos, k in enumerate(per_vertex[w]):
                col = actions[k].apply(gvec)  # generator acted on by b_k
                for i in range(target.dims[w]):
                    blocks[w].data[i][off + pos] = col[toff[w] + i]
    return ModuleMap(m, target, blocks)


def projective_cover(m: Module):
    """(projective sum P, epi P ->> M) with superfluous kernel."""
    a = m.algebra
    f = a.field
    rad = radical_spans(m)
    verts = []
    gens = []
    for v in range(len(m.dims)):
        d = m.dims[v]
        if d == 0:
            continue
        res = rref(Matrix(f, rad[v], len(rad[v]), d)) if rad[v] else None
        tr = SpanTracker(d, f)
        if res:
            for i in range(res.rank):
                tr.add(res.reduced.data[i])
        for c in range(d):
            unit = [f.zero()] * d
            unit[c] = f.one()
            if tr.add(unit):
                verts.append(v)
                gens.append(unit)
    psum = projective_sum(a, verts)
    epi = psum_map(psum, m, gens)
    return psum, epi


def min_proj_presentation(m: Module):
    """(P1, P0, d1: P1 -> P0, epi: P0 ->> M), both covers minimal."""
    p0, epi = projective_cover(m)
    ker, incl = kernel_of(epi, label="omega")
    p1, cover1 = projective_cover(ker)
    d1 = incl.compose(cover1)
    return p1, p0, d1, epi


# ---------------------------------------------------------------------------
# isomorphism and decomposition


def _end_radical_dim(ends):
    """Dimension of the Jacobson radical of End(M) via the trace form
    (valid in characteristic zero and for p much larger than dim End)."""
    if not ends:
        return 0
    f = ends[0].source.algebra.field
    n = len(ends)
    gram = Matrix.zeros(f, n, n)
    for i in range(n):
        for j in range(n):
            gram.data[i][j] = ends[i].compose(ends[j]).trace()
    return n - rref(gram).rank


def _indec_iso(m: Module, n: Module) -> bool:
    """Isomorphism test for modules known to be indecomposable: any basis
    of Hom between isomorphic indecomposables contains an isomorphism."""
    if m.dims != n.dims:
        return False
    if m.total_dim == 0:
        return True
    return any(h.is_invertible() for h in hom_basis(m, n))


def _fitting_split(m: Module, f: ModuleMap):
    """Split M along ker(f^N) + im(f^N); None when the split is trivial."""
    power = f
    for _ in range(m.total_dim.bit_length() + 1):
        power = power.compose(power)
    ker, _ = kernel_of(power, label=f"{m.label}'")
    if ker.total_dim == 0 or ker.total_dim == m.total_dim:
        return None
    img, _ = submodule_from_spans(m, image_spans(power), label=f"{m.label}''")
    if ker.total_dim + img.total_dim != m.total_dim:
        return None
    return ker, img


class DecompositionError(Exception):
    pass


def _indecomposable_pieces(m: Module):
    if m.total_dim == 0:
        return []
    ends = hom_basis(m, m)
    if len(ends) == 1:
        return [m]
    candidates = list(ends)
    for i in range(len(ends)):
        for j in range(i + 1, len(ends)):
            f = m.algebra.field
            plus = ModuleMap(m, m, [
                Matrix(f, [[f.add(ends[i].blocks[v].data[r][c], ends[j].blocks[v].data[r][c])
                            for c in range(ends[i].blocks[v].cols)]
                           for r in range(ends[i].blocks[v].rows)])
                for v in range(len(m.dims))])
            minus = ModuleMap(m, m, [
                Matrix(f, [[f.sub(ends[i].blocks[v].data[r][c], ends[j].blocks[v].data[r][c])
                            for c in range(ends[i].blocks[v].cols)]
                           for r in range(ends[i].blocks[v].rows)])
                for v in range(len(m.dims))])
            candidates.append(plus)
            candidates.append(minus)
    for cand in candidates:
        split = _fitting_split(m, cand)
        if split is not None:
            a, b = split
            return _indecomposable_pieces(a) + _indecomposable_pieces(b)
    if len(ends) - _end_radical_dim(ends) == 1:
        return [m]
    raise DecompositionError(
        "could not certify indecomposability: End/rad has dimension > 1 "
        "and no Fitting split was found"
    )


def decompose(m: Module):
    """Indecomposable summands with multiplicities, [(module, mult), ...]."""
    pieces = _indecomposable_pieces(m)
    out = []
    for p in pieces:
        for i, (q, mult) in enumerate(out):
            if _indec_iso(p, q):
                out[i] = (q, mult + 1)
                break
        else:
            out.append((p, 1))
    return out


def is_isomorphic(m: Module, n: Module) -> bool:
    if m.algebra is not n.algebra:
        raise ModuleError("modules over different algebras")
    if m.dims != n.dims:
        return False
    if m.total_dim == 0:
        return True
    if any(h.is_invertible() for h in hom_basis(m, n)):
        return True
    dm = decompose(m)
    dn = decompose(n)
    if len(dm) != len(dn):
        return False
    used = [False] * len(dn)
    for p, mult in dm:
        for i, (q, mult2) in enumerate(dn):
            if not used[i] and mult == mult2 and _indec_iso(p, q):
                used[i] = True
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# transport between related algebras


def restrict_along_quotient(m: Module, quot: BasedAlgebra, label=None) -> Module:
    """View a module annihilated by the quotient ideal as a module over the
    quotient algebra (whose basis is a subset of the parent's)."""
    a = m.algebra
    if quot.parent is not a:
        raise ModuleError("not a quotient of the module's algebra")
    f = a.field
    old_index = {a.vertices[i]: i for i in range(len(a.vertices))}
    dims = [m.dims[old_index[v]] for v in quot.vertices]
    mats = {}
    for rep in quot.arrow_reps:
        parent_vec = [f.zero()] * a.dim
        for pos, c in enumerate(rep.vector):
            if c != f.zero():
                parent_vec[quot.parent_basis[pos]] = c
        big = m.act_vec(parent_vec)
        src_old = old_index[quot.vertices[rep.source]]
        tgt_old = old_index[quot.vertices[rep.target]]
        off = m.offsets()
        blk = Matrix.zeros(f, m.dims[tgt_old], m.dims[src_old])
        for i in range(m.dims[tgt_old]):
            for j in range(m.dims[src_old]):
                blk.data[i][j] = big.data[off[tgt_old] + i][off[src_old] + j]
        mats[rep.name] = blk
    return Module(quot, dims, mats, label=label or m.label)


def transport_module(m: Module, target: BasedAlgebra, label=None) -> Module:
    """Re-express a module over an algebra with matching vertex ids.

    Arrows are matched by name when possible, otherwise by being the unique
    arrow with the same (source, target); arrows of the target with no match
    act as zero.  Raises when a nonzero action cannot be matched or the
    match is ambiguous.
    """
    f = target.field
    src_alg = m.algebra
    old_index = {src_alg.vertices[i]: i for i in range(len(src_alg.vertices))}
    dims = []
    for v in target.vertices:
        dims.append(m.dims[old_index[v]] if v in old_index else 0)
    by_name = {r.name: r for r in src_alg.arrow_reps}
    mats = {}
    used = set()
    for rep in target.arrow_reps:
        sv = target.vertices[rep.source]
        tv = target.vertices[rep.target]
        blk = None
        if rep.name in by_name:
            old = by_name[rep.name]
            if (src_alg.vertices[old.source], src_alg.vertices[old.target]) == (sv, tv):
                blk = m.mats[rep.name]
                used.add(rep.name)
        if blk is None and sv in old_index and tv in old_index:
            cands = [r for r in src_alg.arrow_reps
                     if (src_alg.vertices[r.source], src_alg.vertices[r.target]) == (sv, tv)
                     and r.name not in used]
            if len(cands) == 1:
                blk = m.mats[cands[0].name]
                used.add(cands[0].name)
            elif len(cands) > 1:
                raise ModuleError(f"ambiguous arrow match for {rep.name}")
        if blk is None:
            blk = Matrix.zeros(f, dims[rep.target], dims[rep.source])
        mats[rep.name] = blk
    # every nonzero action of the source must have been carried over
    for r in src_alg.arrow_reps:
        if r.name not in used and not m.mats[r.name].is_zero():
            raise ModuleError(f"arrow {r.name} with nonzero action has no counterpart")
    return Module(target, dims, mats, label=label or m.label)


# ---------------------------------------------------------------------------
# JSON


def module_to_json(m: Module) -> dict:
    f = m.algebra.field
    return {
        "dims": {str(m.algebra.vertices[v]): m.dims[v] for v in range(len(m.dims))},
        "actions": {
            name: [[f.scalar_to_str(x) for x in row] for row in mat.data]
            for name, mat in sorted(m.mats.items())
        },
        "label": m.label,
    }


def module_from_json(a: BasedAlgebra, data: dict) -> Module:
    f = a.field
    dims = [int(data["dims"].get(str(v), 0)) for v in a.vertices]
    mats = {}
    for rep in a.arrow_reps:
        rows = data["actions"].get(rep.name)
        if rows is not None:
            mats[rep.name] = Matrix(
                f, [[f.scalar_from_str(x) for x in row] for row in rows],
                dims[rep.target], dims[rep.source])
    return Module(a, dims, mats, label=data.get("label", "M"), validate=True)
