"""Modules over the group algebra F_p(G).

Convention: module elements are row vectors, acted on from the right by one
matrix per group element, with act(gh) = act(g) @ act(h).  A left module is
the same data over the opposite multiplication table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import fp_linalg as fl
from .fp_linalg import FpSubspace, RowSpace
from .group_core import GroupTable, Subgroup, opposite, quotient, subgroup_closure

DEFAULT_DIM_CAP = 8192


class ModuleError(ValueError):
    pass


class GModule:
    """Finite-dimensional right module over F_p(group)."""

    def __init__(
        self,
        group: GroupTable,
        act: np.ndarray,
        side: str = "right",
        check: bool = True,
        name: str = "",
    ):
        self.group = group
        self.p = group.p
        act = np.asarray(act, dtype=np.int64) % self.p
        if act.ndim != 3 or act.shape[0] != group.order or act.shape[1] != act.shape[2]:
            raise ModuleError("act must be (order, dim, dim)")
        if act.shape[1] > DEFAULT_DIM_CAP:
            raise ModuleError("dimension cap exceeded")
        self.act = act
        self.act.setflags(write=False)
        self.dim = act.shape[1]
        if side not in ("right", "left"):
            raise ModuleError("side must be 'right' or 'left'")
        self.side = side
        self.name = name
        self._cache: dict = {}
        if check:
            self._validate()

    def _validate(self):
        if not np.array_equal(self.act[0], np.eye(self.dim, dtype=np.int64)):
            raise ModuleError("act(identity) != identity")
        gens = self.group.generating_sequence()
        for g in gens:
            if not fl.is_invertible(self.act[g], self.p):
                raise ModuleError("action matrix not invertible")
            prod = (self.act[g][None] @ self.act) % self.p
            if not np.array_equal(prod, self.act[self.group.mul[g]]):
                raise ModuleError("action is not a homomorphism")

    def apply(self, v: np.ndarray, g: int) -> np.ndarray:
        return (np.asarray(v, dtype=np.int64) @ self.act[g]) % self.p

    def full_space(self) -> FpSubspace:
        return FpSubspace.full(self.dim, self.p)

    def __repr__(self):
        return f"<{self.side} module dim {self.dim} over {self.group.name or 'G'}>"


def trivial_module(group: GroupTable, dim: int = 1) -> GModule:
    act = np.broadcast_to(np.eye(dim, dtype=np.int64), (group.order, dim, dim)).copy()
    return GModule(group, act, check=False, name="trivial")


def regular_module(group: GroupTable) -> GModule:
    """Right regular module: basis indexed by group elements, v_h . g = v_{hg}."""
    n = group.order
    act = np.zeros((n, n, n), dtype=np.int64)
    rows = np.arange(n)
    for g in range(n):
        act[g, rows, group.mul[rows, g]] = 1
    return GModule(group, act, check=False, name="regular")


def dual_module(m: GModule) -> GModule:
    """Contragredient module; lives over the opposite table with side flipped."""
    opp = opposite(m.group)
    act = np.ascontiguousarray(np.transpose(m.act, (0, 2, 1)))
    side = "left" if m.side == "right" else "right"
    return GModule(opp, act, side=side, check=False, name=f"dual({m.name})")


def restrict_to_subgroup(m: GModule, h: Subgroup, h_table: GroupTable, h_index: np.ndarray) -> GModule:
    """Module over a subgroup's own table; h_index maps h-table indices to parent elements."""
    act = m.act[h_index]
    return GModule(h_table, act, side=m.side, check=False)


@dataclass
class Submodule:
    """Carrier subspace of a module, stable under the module action."""

    ambient: "FreeBimodule | GModule"
    carrier: FpSubspace

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def p(self) -> int:
        return self.carrier.p

    def size(self) -> int:
        return self.p**self.dim


# -- core operations ---------------------------------------------------------


def fixed_points(m: GModule) -> FpSubspace:
    """Vectors fixed by every group element: intersection of ker(act(g) - 1)."""
    key = "fixed"
    if key in m._cache:
        return m._cache[key]
    blocks = []
    for g in m.group.generating_sequence():
        blocks.append((m.act[g] - np.eye(m.dim, dtype=np.int64)) % m.p)
    if not blocks:
        out = FpSubspace.full(m.dim, m.p)
    else:
        stacked = np.hstack(blocks)  # v @ stacked = 0 for all generators
        rows = fl.left_kernel_array(stacked, m.p)
        out = FpSubspace.from_rows(rows, m.p, m.dim)
    m._cache[key] = out
    return out


def radical(m: GModule) -> FpSubspace:
    """J_G(m): the span of all v(g - 1); the augmentation ideal acting on m."""
    key = "radical"
    if key in m._cache:
        return m._cache[key]
    out = radical_of_carrier(m, FpSubspace.full(m.dim, m.p))
    m._cache[key] = out
    return out


def radical_of_carrier(m: GModule, carrier: FpSubspace) -> FpSubspace:
    rs = RowSpace(m.p, m.dim)
    basis = carrier.basis.a
    for g in m.group.generating_sequence():
        rs.add((basis @ ((m.act[g] - np.eye(m.dim, dtype=np.int64)) % m.p)) % m.p)
    # (gh - 1) = (g - 1)h + (h - 1): generator images must be closed off under
    # the action to span the full radical.
    changed = True
    while changed:
        changed = False
        for g in m.group.generating_sequence():
            if rs.add((rs.basis @ m.act[g]) % m.p):
                changed = True
    return rs.subspace()


def d_G(m: GModule, carrier: Optional[FpSubspace] = None) -> int:
    """Minimal number of module generators (dim of the radical quotient)."""
    if carrier is None:
        return m.dim - radical(m).dim
    rad = radical_of_carrier(m, carrier)
    return carrier.dim - rad.dim


def minimal_generators(m: GModule, carrier: Optional[FpSubspace] = None) -> np.ndarray:
    """Lexicographically-first echelon lift of a basis of m / J_G(m)."""
    if carrier is None:
        carrier = FpSubspace.full(m.dim, m.p)
    rad = radical_of_carrier(m, carrier)
    reps = fl.complement_reps(rad.basis.a, carrier.basis.a, m.p)
    return reps


def generated_submodule(m: GModule, vectors: np.ndarray) -> FpSubspace:
    """Least action-stable subspace containing the given row vectors."""
    rs = RowSpace(m.p, m.dim)
    rs.add(np.atleast_2d(vectors))
    gens = m.group.generating_sequence()
    changed = True
    while changed:
        changed = False
        for g in gens:
            if rs.add((rs.basis @ m.act[g]) % m.p):
                changed = True
    return rs.subspace()


def is_stable(m: GModule, carrier: FpSubspace) -> bool:
    basis = carrier.basis.a
    for g in m.group.generating_sequence():
        if not carrier.contains(FpSubspace.from_rows((basis @ m.act[g]) % m.p, m.p, m.dim)):
            return False
    return True


def restrict_action(m: GModule, carrier: FpSubspace) -> Tuple[GModule, np.ndarray]:
    """Abstract module on a stable carrier; returns (module, basis rows)."""
    if not is_stable(m, carrier):
        raise ModuleError("carrier not stable under the action")
    basis = carrier.basis.a
    k = carrier.dim
    act = np.zeros((m.group.order, k, k), dtype=np.int64)
    for g in range(m.group.order):
        img = (basis @ m.act[g]) % m.p
        # Coordinates of img rows in the carrier basis: solve against RREF basis.
        coords = _coords_in_rref_basis(img, carrier)
        act[g] = coords
    return GModule(m.group, act, side=m.side, check=False), basis


def _coords_in_rref_basis(rows: np.ndarray, space: FpSubspace) -> np.ndarray:
    """Coordinates of rows in the RREF basis of `space` (must lie inside)."""
    basis = space.basis.a
    piv = []
    for r in basis:
        piv.append(int(np.nonzero(r)[0][0]))
    coords = rows[:, piv] % space.p
    if np.any((coords @ basis - rows) % space.p):
        raise ModuleError("vector outside carrier")
    return coords


def quotient_module(m: GModule, sub: FpSubspace) -> Tuple[GModule, np.ndarray]:
    """Module on a complement basis of `sub`; returns (module, complement rows)."""
    if not is_stable(m, sub):
        raise ModuleError("quotient by unstable subspace")
    comp = fl.complement_reps(sub.basis.a, np.eye(m.dim, dtype=np.int64), m.p)
    k = comp.shape[0]
    # Full basis: radical rows then complement rows; coordinates of images.
    full = np.vstack([sub.basis.a, comp]) if sub.dim else comp
    act = np.zeros((m.group.order, k, k), dtype=np.int64)
    for g in range(m.group.order):
        img = (comp @ m.act[g]) % m.p
        coords = _solve_coords(full, img, m.p)
        act[g] = coords[:, sub.dim :]
    return GModule(m.group, act, side=m.side, check=False), comp


def _solve_coords(basis: np.ndarray, rows: np.ndarray, p: int) -> np.ndarray:
    """Coordinates of rows in an arbitrary (independent-row) basis."""
    sols = []
    bt = np.ascontiguousarray(basis.T)
    for r in rows:
        x = fl.solve_array(bt, r, p)
        if x is None:
            raise ModuleError("vector outside span")
        sols.append(x)
    return np.array(sols, dtype=np.int64)


# -- conjugation modules -------------------------------------------------------


@dataclass
class ConjugationModule:
    """W as a module over G/N via conjugation, with the element/vector bridge."""

    module: GModule
    quotient_map: object  # QuotientMap
    w_members: np.ndarray
    basis_elements: List[int]  # independent generators of W, ascending
    vec_of_element: dict  # element index -> tuple vector
    element_of_vec: dict  # tuple vector -> element index


def module_from_conjugation(g: GroupTable, n1: Subgroup, w: Subgroup) -> ConjugationModule:
    """Realize an elementary abelian normal W as a right G/N1-module.

    Requires W normal, elementary abelian, and centralized by N1 (so the
    quotient action by conjugation is well defined).
    """
    p = g.p
    orders = g.element_orders()
    if np.any(orders[w.members] > p):
        raise ModuleError("W is not elementary abelian")
    if not w.is_normal():
        raise ModuleError("W is not normal")
    # N1 must centralize W (pointwise), so the quotient action is well defined.
    for x in n1.members:
        row = g.mul[g.mul[g.inv[x], w.members], x]
        if not np.array_equal(row, w.members):
            raise ModuleError("N1 does not centralize W")
    # Greedy least-index basis of W.
    basis_elements: List[int] = []
    span = subgroup_closure(g, [0])
    for x in w.members:
        if x == 0 or span.contains(int(x)):
            continue
        basis_elements.append(int(x))
        span = subgroup_closure(g, basis_elements)
        if span.order == w.order:
            break
    k = len(basis_elements)
    # Element <-> vector bridge by exhaustive combination (W is small).
    vec_of_element = {}
    element_of_vec = {}
    from itertools import product as iproduct

    for coeffs in iproduct(range(p), repeat=k):
        e = 0
        for b, c in zip(basis_elements, coeffs):
            e = g.mul[e, g.power(b, c)]
        vec = tuple(int(c) for c in coeffs)
        e = int(e)
        if e in vec_of_element:
            raise ModuleError("W basis is not independent")
        vec_of_element[e] = vec
        element_of_vec[vec] = e
    if len(vec_of_element) != w.order:
        raise ModuleError("W basis does not span W")

    qt, qm = quotient(g, n1)
    act = np.zeros((qt.order, k, k), dtype=np.int64)
    for q in range(qt.order):
        r = int(qm.section[q])
        for i, b in enumerate(basis_elements):
            img = g.conjugate(b, r)
            if img not in vec_of_element:
                raise ModuleError("conjugation leaves W")
            act[q, i] = vec_of_element[img]
    module = GModule(qt, act, check=False, name="conj")
    module._validate()
    return ConjugationModule(module, qm, w.members.copy(), basis_elements, vec_of_element, element_of_vec)


# -- the free bimodule prod^n F_p(G) -----------------------------------------


class FreeBimodule:
    """prod^n F_p(G): coordinates indexed by (copy l, group element g)."""

    def __init__(self, group: GroupTable, n: int):
        if n < 1:
            raise ModuleError("n >= 1 required")
        self.group = group
        self.p = group.p
        self.n = n
        self.block = group.order
        self.dim = n * group.order
        self._cache: dict = {}

    def index(self, copy: int, element: int) -> int:
        return copy * self.block + element

    def right_mul_matrix(self, y: np.ndarray) -> np.ndarray:
        """Matrix R with (x @ R) = x*y per copy, y a group algebra vector."""
        y = fl.as_residues(y, self.p).reshape(-1)
        g = self.group
        R = y[g.mul[g.inv][:, :]]  # R[a, k] = y[a^-1 k]
        return self._blockdiag(R)

    def left_mul_matrix(self, y: np.ndarray) -> np.ndarray:
        """Matrix L with (x @ L) = y*x per copy."""
        y = fl.as_residues(y, self.p).reshape(-1)
        g = self.group
        # L[a, k] = y[k a^-1]
        L = y[g.mul[:, g.inv].T]
        return self._blockdiag(L)

    def _blockdiag(self, B: np.ndarray) -> np.ndarray:
        if self.n == 1:
            return B
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for l in range(self.n):
            out[l * self.block : (l + 1) * self.block, l * self.block : (l + 1) * self.block] = B
        return out

    def right_element_action(self, g_elt: int) -> np.ndarray:
        """Permutation action of a single group element on the right."""
        y = np.zeros(self.block, dtype=np.int64)
        y[g_elt] = 1
        return self.right_mul_matrix(y)

    def left_element_action(self, g_elt: int) -> np.ndarray:
        y = np.zeros(self.block, dtype=np.int64)
        y[g_elt] = 1
        return self.left_mul_matrix(y)

    def as_gmodule(self, side: str = "right") -> GModule:
        key = ("gmodule", side)
        if key in self._cache:
            return self._cache[key]
        n = self.group.order
        act = np.zeros((n, self.dim, self.dim), dtype=np.int64)
        for g in range(n):
            act[g] = (
                self.right_element_action(g) if side == "right" else self.left_element_action(g)
            )
        grp = self.group if side == "right" else opposite(self.group)
        mod = GModule(grp, act, side=side, check=False, name=f"free^{self.n}")
        self._cache[key] = mod
        return mod

    def socle_basis(self) -> np.ndarray:
        """One all-ones vector per copy: the fixed points of either action."""
        rows = np.zeros((self.n, self.dim), dtype=np.int64)
        for l in range(self.n):
            rows[l, l * self.block : (l + 1) * self.block] = 1
        return rows

    def algebra_product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Componentwise product of two tuple vectors."""
        x = fl.as_residues(x, self.p).reshape(self.n, self.block)
        y = fl.as_residues(y, self.p).reshape(self.n, self.block)
        g = self.group
        out = np.zeros((self.n, self.block), dtype=np.int64)
        for l in range(self.n):
            out[l] = (x[l] @ y[l][g.mul[g.inv][:, :]]) % self.p
        return out.reshape(-1)

    def dot_product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Dot product sum_l x_l y_l, valued in the group algebra."""
        x = fl.as_residues(x, self.p).reshape(self.n, self.block)
        y = fl.as_residues(y, self.p).reshape(self.n, self.block)
        g = self.group
        out = np.zeros(self.block, dtype=np.int64)
        for l in range(self.n):
            out = (out + x[l] @ y[l][g.mul[g.inv][:, :]]) % self.p
        return out

    def delta_pairing_matrix(self) -> np.ndarray:
        """Gram matrix of <x,y> = Delta(sum_l x_l y_l); a permutation matrix."""
        key = "gram"
        if key in self._cache:
            return self._cache[key]
        g = self.group
        B = np.zeros((self.dim, self.dim), dtype=np.int64)
        for l in range(self.n):
            for a in range(self.block):
                B[self.index(l, a), self.index(l, int(g.inv[a]))] = 1
        self._cache[key] = B
        return B

    def delta_pairing(self, x: np.ndarray, y: np.ndarray) -> int:
        B = self.delta_pairing_matrix()
        return int((fl.as_residues(x, self.p) @ B @ fl.as_residues(y, self.p)) % self.p)


def free_submodule_closure(fb: FreeBimodule, vectors: np.ndarray, side: str) -> FpSubspace:
    """Least one-sided (or two-sided) submodule containing the vectors."""
    rs = RowSpace(fb.p, fb.dim)
    rs.add(np.atleast_2d(vectors))
    gens = fb.group.generating_sequence()
    mats = []
    if side in ("right", "both"):
        mats += [fb.right_element_action(g) for g in gens]
    if side in ("left", "both"):
        mats += [fb.left_element_action(g) for g in gens]
    changed = True
    while changed:
        changed = False
        for mtx in mats:
            if rs.add((rs.basis @ mtx) % fb.p):
                changed = True
    return rs.subspace()


def is_free_submodule(fb: FreeBimodule, carrier: FpSubspace, side: str) -> bool:
    gens = fb.group.generating_sequence()
    basis = carrier.basis.a
    for g in gens:
        mtx = fb.right_element_action(g) if side == "right" else fb.left_element_action(g)
        reduced = (basis @ mtx) % fb.p
        if not carrier.contains(FpSubspace.from_rows(reduced, fb.p, fb.dim)):
            return False
    return True


def annihilator(fb: FreeBimodule, q: FpSubspace, side: str) -> FpSubspace:
    """Pairing-orthogonal annihilator.

    side='left_of_right': L(Q) = {x : x . y = 0 for all y in Q} for a right
    submodule Q; side='right_of_left' symmetrically.  For one-sided
    submodules the Delta-pairing orthogonal complement equals the honest
    product-zero annihilator; `annihilator_by_products` is the
    definition-level cross-check.
    """
    if side not in ("left_of_right", "right_of_left"):
        raise ModuleError("side must be left_of_right or right_of_left")
    want = "right" if side == "left_of_right" else "left"
    if not is_free_submodule(fb, q, want):
        raise ModuleError(f"carrier is not a {want} submodule")
    B = fb.delta_pairing_matrix()
    if side == "left_of_right":
        # x with x B y^T = 0 for y in Q: left kernel of B @ Q^T.
        m = (B @ q.basis.a.T) % fb.p
    else:
        # x with y B x^T = 0: kernel of (Q B)
        m = np.ascontiguousarray(((q.basis.a @ B) % fb.p).T)
    rows = fl.left_kernel_array(m, fb.p)
    return FpSubspace.from_rows(rows, fb.p, fb.dim)


def annihilator_by_products(fb: FreeBimodule, q: FpSubspace, side: str) -> FpSubspace:
    """Definition-level annihilator: full dot product zero in the algebra."""
    blocks = []
    g = fb.group
    for y in q.basis.a:
        yb = y.reshape(fb.n, fb.block)
        if side == "left_of_right":
            # x . y as a function of x: block l contributes x_l * y_l.
            cols = np.vstack([yb[l][g.mul[g.inv][:, :]] for l in range(fb.n)])
        else:
            cols = np.vstack([yb[l][g.mul[:, g.inv].T] for l in range(fb.n)])
        blocks.append(cols)
    if not blocks:
        return FpSubspace.full(fb.dim, fb.p)
    m = np.hstack(blocks)
    rows = fl.left_kernel_array(m, fb.p)
    return FpSubspace.from_rows(rows, fb.p, fb.dim)


def ann_tuple(fb: FreeBimodule, xs: Sequence[np.ndarray], side: str) -> FpSubspace:
    """Tuples (y_1..y_s) with sum_i (y_i,..,y_i) x_i = 0 in prod^n F_p(G).

    The product is the componentwise algebra product, so the condition is one
    equation per copy: sum_i y_i x_{i,l} = 0 for every l (side 'left'), or
    sum_i x_{i,l} y_i = 0 (side 'right').  Lives in prod^s F_p(G).
    """
    s = len(xs)
    if s < 1:
        raise ModuleError("s >= 1 required")
    g = fb.group
    m = np.zeros((s * fb.block, fb.n * fb.block), dtype=np.int64)
    for i, x in enumerate(xs):
        xb = fl.as_residues(x, fb.p).reshape(fb.n, fb.block)
        for l in range(fb.n):
            if side == "left":
                blk = xb[l][g.mul[g.inv][:, :]]  # y -> y * x_{i,l}
            else:
                blk = xb[l][g.mul[:, g.inv].T]  # y -> x_{i,l} * y
            m[i * fb.block : (i + 1) * fb.block, l * fb.block : (l + 1) * fb.block] = blk
    rows = fl.left_kernel_array(m, fb.p)
    return FpSubspace.from_rows(rows, fb.p, s * fb.block)


# -- embedding into the free module ------------------------------------------


@dataclass
class FreeEmbedding:
    free: FreeBimodule
    matrix: np.ndarray  # dim(m) x free.dim, v -> v @ matrix
    injective: bool


def embed_into_free(m: GModule) -> FreeEmbedding:
    """Equivariant injection of m into prod^n F_p(G) carrying m^G onto the socle.

    Solves the linear system 'equivariance + prescribed socle values'; a
    missing solution or a kernel is reported, never ignored.
    """
    fixed = fixed_points(m)
    n = fixed.dim
    if n < 1:
        raise ModuleError("module has no fixed points")
    fb = FreeBimodule(m.group, n)
    d, D = m.dim, fb.dim
    p = m.p
    # Unknown P is d x D, vectorized row-major: u[(i, j)] = P[i, j].
    nun = d * D
    eqs = RowSpace(p, nun + 1)  # last column holds the inhomogeneous part

    def eq_rows(coeff_rows, rhs_rows):
        block = np.zeros((coeff_rows.shape[0], nun + 1), dtype=np.int64)
        block[:, :nun] = coeff_rows
        block[:, nun] = rhs_rows
        eqs.add(block)

    # Equivariance: act_m(g) P - P R_free(g) = 0 for generators g, assembled
    # one i-block (equations (i, j) for all j) at a time to bound memory.
    idx = np.arange(D)
    for g in m.group.generating_sequence():
        A = m.act[g]
        R = fb.right_element_action(g)
        # Row (i,j): sum_k A[i,k] P[k,j] - sum_l P[i,l] R[l,j] = 0.
        for i in range(d):
            block = np.zeros((D, nun), dtype=np.int64)
            for k in range(d):
                if A[i, k]:
                    block[idx, k * D + idx] = (block[idx, k * D + idx] + A[i, k]) % p
            block[:, i * D : (i + 1) * D] = (block[:, i * D : (i + 1) * D] - R.T) % p
            eq_rows(block, np.zeros(D, dtype=np.int64))

    # Prescribed socle values: w_i P = socle_i.
    socle = fb.socle_basis()
    for i, w in enumerate(fixed.basis.a):
        coeff = np.zeros((D, nun), dtype=np.int64)
        for k in range(d):
            if w[k]:
                coeff[np.arange(D), k * D + np.arange(D)] = w[k]
        eq_rows(coeff, socle[i])

    # Solve: write the system as u @ M^T = rhs; use the accumulated reduced rows.
    A_rows = eqs.basis
    if A_rows.size == 0:
        raise ModuleError("empty system")
    M = A_rows[:, :nun]
    rhs = A_rows[:, nun]
    sol = fl.solve_array(M, rhs, p)
    if sol is None:
        return FreeEmbedding(fb, np.zeros((d, D), dtype=np.int64), injective=False)
    P = sol.reshape(d, D)
    injective = fl.rank_array(P, p) == d
    return FreeEmbedding(fb, P, injective)


# -- sampling ------------------------------------------------------------------


@dataclass
class SampledModule:
    free: FreeBimodule
    carrier: FpSubspace
    fixed_dim: int
    h1_dim: int
    is_nG: bool
    attempts: int


def random_right_submodule(
    fb: FreeBimodule, rng: np.random.Generator, extra_vectors: int = 2, with_socle: bool = True
) -> FpSubspace:
    seeds = rng.integers(0, fb.p, size=(extra_vectors, fb.dim))
    if with_socle:
        seeds = np.vstack([fb.socle_basis(), seeds])
    return free_submodule_closure(fb, seeds, "right")


def sample_nG_module(
    group: GroupTable,
    n: int,
    seed: int,
    max_retries: int = 64,
    h1_fn=None,
) -> SampledModule:
    """Seeded right submodule of prod^n F_p(G) containing the socle with
    fixed-point dimension exactly n; the cohomology bound is measured, with
    rejection sampling up to the retry cap.
    """
    fb = FreeBimodule(group, n)
    rng = np.random.default_rng(seed)
    best = None
    for attempt in range(1, max_retries + 1):
        carrier = random_right_submodule(fb, rng, extra_vectors=1 + attempt % 3)
        fixed = submodule_fixed_points(fb, carrier, "right")
        if fixed.dim != n:
            continue
        h1 = -1
        if h1_fn is not None:
            h1 = h1_fn(fb, carrier)
        ok = h1_fn is None or (0 <= h1 <= n)
        best = SampledModule(fb, carrier, fixed.dim, h1, ok, attempt)
        if ok:
            return best
    if best is None:
        carrier = free_submodule_closure(fb, fb.socle_basis(), "right")
        fixed = submodule_fixed_points(fb, carrier, "right")
        h1 = h1_fn(fb, carrier) if h1_fn is not None else -1
        best = SampledModule(fb, carrier, fixed.dim, h1, fixed.dim == n, max_retries)
    return best


def submodule_fixed_points(fb: FreeBimodule, carrier: FpSubspace, side: str) -> FpSubspace:
    mod = fb.as_gmodule(side)
    amb_fixed = fixed_points(mod)
    return amb_fixed.intersect(carrier)
