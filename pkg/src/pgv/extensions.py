"""Group extensions from 2-cocycles and the associated transfer machinery.

An extension of an elementary abelian kernel N (presented as a right module
of dimension t) by G lives on pairs (a, g) indexed a + |N|*g with

    (a, g)(b, h) = (a.act(h) + b + f(g, h), gh).

The transfer pair couples the group algebras of the extension and the base:
`down` sums coefficients over fibers of the projection, `up` lifts through
the canonical section times the kernel norm element.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import fp_linalg as fl
from .fp_linalg import FpSubspace, RowSpace
from .cohomology import TwoCocycle
from .group_core import (
    DEFAULT_ORDER_CAP,
    GroupError,
    GroupMap,
    GroupTable,
    Subgroup,
)
from .gmodule import FreeBimodule, GModule, free_submodule_closure


class ExtensionError(ValueError):
    pass


@dataclass
class ExtensionResult:
    total: GroupTable
    base: GroupTable
    module: GModule  # the kernel as a right module over the base
    cocycle: TwoCocycle
    projection: GroupMap  # total -> base
    kernel_embed: np.ndarray  # kernel element index (vector code) -> total index
    kernel: Subgroup
    section: np.ndarray  # base element -> total index (0, g)

    @property
    def t(self) -> int:
        return self.module.dim

    def kernel_generators(self) -> List[int]:
        """Images of the standard basis vectors of the kernel module."""
        p = self.base.p
        gens = []
        for i in range(self.t):
            code = p**i
            gens.append(int(self.kernel_embed[code]))
        return gens


def _vec_codes(t: int, p: int) -> Tuple[np.ndarray, Dict[Tuple[int, ...], int]]:
    """Vector <-> integer code bridge for F_p^t (little-endian digit i -> p^i)."""
    vecs = np.zeros((p**t, t), dtype=np.int64)
    lookup: Dict[Tuple[int, ...], int] = {}
    for code in range(p**t):
        c = code
        for i in range(t):
            vecs[code, i] = c % p
            c //= p
        lookup[tuple(int(x) for x in vecs[code])] = code
    return vecs, lookup


def build_extension(
    g: GroupTable,
    nmod: GModule,
    f: TwoCocycle,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> ExtensionResult:
    """Construct the extension group of the module kernel by g along f."""
    if f.group is not g and f.group.order != g.order:
        raise ExtensionError("cocycle not over this group")
    if f.module is not nmod and (f.module.dim != nmod.dim):
        raise ExtensionError("cocycle not over this module")
    if not f.is_normalized() or not f.is_cocycle():
        raise ExtensionError("not a cocycle")
    p = g.p
    t = nmod.dim
    nsize = p**t
    order = nsize * g.order
    if order > order_cap:
        raise ExtensionError(f"order cap: {order} > {order_cap}")

    vecs, lookup = _vec_codes(t, p)
    # Addition and action tables on kernel codes.
    add = np.zeros((nsize, nsize), dtype=np.int64)
    for a in range(nsize):
        summed = (vecs[a][None, :] + vecs) % p
        add[a] = [lookup[tuple(int(x) for x in row)] for row in summed]
    act_code = np.zeros((g.order, nsize), dtype=np.int64)
    for h in range(g.order):
        imgs = (vecs @ nmod.act[h]) % p
        act_code[h] = [lookup[tuple(int(x) for x in row)] for row in imgs]
    f_code = np.zeros((g.order, g.order), dtype=np.int64)
    for gg in range(g.order):
        for hh in range(g.order):
            f_code[gg, hh] = lookup[tuple(int(x) for x in f.table[gg, hh] % p)]

    mul = np.zeros((order, order), dtype=np.int64)
    a_idx = np.arange(order) % nsize
    g_idx = np.arange(order) // nsize
    for x in range(order):
        a, gg = int(a_idx[x]), int(g_idx[x])
        a_acted = act_code[g_idx, a]  # a.act(h) for every column's h
        part = add[a_acted, a_idx]  # + b
        total_a = add[part, f_code[gg, g_idx]]  # + f(g, h)
        mul[x] = total_a + nsize * g.mul[gg, g_idx]
    try:
        total = GroupTable(p, mul, name=f"ext({g.name})", order_cap=order_cap)
    except GroupError as e:
        raise ExtensionError(f"not a cocycle: extension table invalid ({e})") from e

    projection = GroupMap(total, g, g_idx, check=True)
    kernel_embed = np.arange(nsize, dtype=np.int64)  # (a, identity) has index a
    kernel = Subgroup(total, kernel_embed)
    section = (nsize * np.arange(g.order)).astype(np.int64)
    return ExtensionResult(total, g, nmod, f, projection, kernel_embed, kernel, section)


def section_is_homomorphism(ext: ExtensionResult) -> bool:
    sec = ext.section
    g = ext.base
    t = ext.total
    return bool(np.array_equal(sec[g.mul], t.mul[np.ix_(sec, sec)]))


def equivalence_map(
    ext: ExtensionResult, f: TwoCocycle, f2: TwoCocycle
) -> Optional[GroupMap]:
    """Isomorphism ext(f) -> ext(f2), (a, g) -> (a + sigma(g), g), when
    f - f2 is the coboundary of some normalized sigma; None otherwise."""
    m = f.module
    q = f.group.order
    d = m.dim
    p = m.p
    diff = (f.table - f2.table) % p
    # Solve dsigma = diff over unknowns sigma(g), g != 1:
    # s(g)A_h + s(h) - s(gh) = diff[g,h] for every pair.
    nun = (q - 1) * d
    eqs = []
    rhs_rows = []
    for gg, hh in iproduct(range(q), range(q)):
        block = np.zeros((d, nun), dtype=np.int64)
        if gg != 0:
            block[:, (gg - 1) * d : gg * d] += m.act[hh].T % p
        if hh != 0:
            block[:, (hh - 1) * d : hh * d] += np.eye(d, dtype=np.int64)
        gh = int(f.group.mul[gg, hh])
        if gh != 0:
            block[:, (gh - 1) * d : gh * d] -= np.eye(d, dtype=np.int64)
        eqs.append(block % p)
        rhs_rows.append(diff[gg, hh] % p)
    A = np.vstack(eqs)
    b = np.concatenate(rhs_rows)
    sol = fl.solve_array(A, b, p)
    if sol is None:
        return None
    sigma = np.zeros((q, d), dtype=np.int64)
    sigma[1:] = sol.reshape(q - 1, d)
    ext2 = build_extension(ext.base, m, f2)
    vecs, lookup = _vec_codes(d, p)
    nsize = p**d
    image = np.zeros(ext.total.order, dtype=np.int64)
    for x in range(ext.total.order):
        a, gg = x % nsize, x // nsize
        shifted = tuple(int(v) for v in (vecs[a] + sigma[gg]) % p)
        image[x] = lookup[shifted] + nsize * gg
    fmap = GroupMap(ext.total, ext2.total, image, check=False)
    if not fmap.is_homomorphism() or not fmap.is_bijective():
        return None
    return fmap


# -- transfer maps --------------------------------------------------------------


@dataclass
class TransferPair:
    ext: ExtensionResult
    n: int
    down: np.ndarray  # (n*|T|, n*|G|): x -> coefficient-sum over fibers
    up: np.ndarray  # (n*|G|, n*|T|): section * norm element
    norm_vector: np.ndarray  # the kernel norm element in F_p(T)
    e_index: Dict[Tuple[Tuple[int, ...], int], int]  # (exponent tuple, copy) -> row
    e_vectors: np.ndarray  # rows: the e_{i_1..i_t, l} vectors
    free_total: FreeBimodule
    free_base: FreeBimodule
    lambda_basis: np.ndarray  # rows: section(g) * e_{i,l} spanning ker(down)
    lambda1_basis: np.ndarray  # rows: e_{i,l} * section(g)
    lambda_meta: List[Tuple[Tuple[int, ...], int, int]]  # (exponents, copy, g)

    def e_vector(self, exps: Sequence[int], copy: int) -> np.ndarray:
        return self.e_vectors[self.e_index[(tuple(exps), copy)]]


def _algebra_power_product(
    total: GroupTable, gens: Sequence[int], exps: Sequence[int]
) -> np.ndarray:
    """(a_1 - 1)^{i_1} ... (a_t - 1)^{i_t} in F_p(total)."""
    p = total.p
    vec = np.zeros(total.order, dtype=np.int64)
    vec[0] = 1
    for a, e in zip(gens, exps):
        for _ in range(e):
            # multiply vec by (a - 1) on the right
            out = np.zeros(total.order, dtype=np.int64)
            nz = np.nonzero(vec)[0]
            for x in nz:
                out[total.mul[x, a]] = (out[total.mul[x, a]] + vec[x]) % p
                out[x] = (out[x] - vec[x]) % p
            vec = out
    return vec


def transfer_maps(ext: ExtensionResult, n: int) -> TransferPair:
    total, base = ext.total, ext.base
    p = total.p
    t = ext.t
    fb_total = FreeBimodule(total, n)
    fb_base = FreeBimodule(base, n)
    to, bo = total.order, base.order

    proj = ext.projection.image_of
    down = np.zeros((n * to, n * bo), dtype=np.int64)
    for l in range(n):
        for x in range(to):
            down[l * to + x, l * bo + proj[x]] = 1

    gens = ext.kernel_generators()
    norm = _algebra_power_product(total, gens, [p - 1] * t)
    # The norm element is the sum over the kernel.
    expected = np.zeros(to, dtype=np.int64)
    expected[ext.kernel.members] = 1
    if not np.array_equal(norm, expected):
        raise ExtensionError("kernel norm element mismatch")

    up = np.zeros((n * bo, n * to), dtype=np.int64)
    norm_R = FreeBimodule(total, 1).right_mul_matrix(norm)
    for l in range(n):
        for gg in range(bo):
            h = int(ext.section[gg])
            up[l * bo + gg, l * to : (l + 1) * to] = norm_R[h]  # h * norm

    # e_{i_1..i_t, l} vectors and the lambda basis of ker(down).
    e_index: Dict[Tuple[Tuple[int, ...], int], int] = {}
    e_rows = []
    metas: List[Tuple[Tuple[int, ...], int]] = []
    for exps in iproduct(range(p), repeat=t):
        for l in range(n):
            e_index[(tuple(exps), l)] = len(e_rows)
            vec = _algebra_power_product(total, gens, exps)
            full = np.zeros(n * to, dtype=np.int64)
            full[l * to : (l + 1) * to] = vec
            e_rows.append(full)
            metas.append((tuple(exps), l))
    e_vectors = np.array(e_rows, dtype=np.int64)

    lam_rows = []
    lam1_rows = []
    lam_meta: List[Tuple[Tuple[int, ...], int, int]] = []
    one_block = FreeBimodule(total, 1)
    for (exps, l), evec in zip(metas, e_vectors):
        if sum(exps) < 1:
            continue
        block = evec[l * to : (l + 1) * to]
        R = one_block.right_mul_matrix(block)  # row h: h * e-part
        L = one_block.left_mul_matrix(block)  # row h: e-part * h
        for gg in range(bo):
            h = int(ext.section[gg])
            row = np.zeros(n * to, dtype=np.int64)
            row[l * to : (l + 1) * to] = R[h]
            lam_rows.append(row)
            row1 = np.zeros(n * to, dtype=np.int64)
            row1[l * to : (l + 1) * to] = L[h]
            lam1_rows.append(row1)
            lam_meta.append((exps, l, gg))
    lambda_basis = (
        np.array(lam_rows, dtype=np.int64)
        if lam_rows
        else np.zeros((0, n * to), dtype=np.int64)
    )
    lambda1_basis = (
        np.array(lam1_rows, dtype=np.int64)
        if lam1_rows
        else np.zeros((0, n * to), dtype=np.int64)
    )
    return TransferPair(
        ext,
        n,
        down,
        up,
        norm,
        e_index,
        e_vectors,
        fb_total,
        fb_base,
        lambda_basis,
        lambda1_basis,
        lam_meta,
    )


def lambda_expansion(tp: TransferPair, y: np.ndarray) -> Optional[np.ndarray]:
    """Coefficients over the section-times-e basis of ker(down); None if y is
    outside the kernel.  Uniqueness holds because the basis is independent."""
    y = fl.as_residues(y, tp.ext.total.p).reshape(-1)
    if np.any((y @ tp.down) % tp.ext.total.p):
        return None
    coeffs = fl.solve_left(tp.lambda_basis, y, tp.ext.total.p)
    return coeffs


def kernel_of_down(tp: TransferPair) -> FpSubspace:
    rows = fl.left_kernel_array(tp.down, tp.ext.total.p)
    return FpSubspace.from_rows(rows, tp.ext.total.p, tp.down.shape[0])


def filtration(tp: TransferPair, m: int) -> FpSubspace:
    """Two-sided submodule generated by the e-vectors with exponent sum >= m."""
    p = tp.ext.total.p
    t = tp.ext.t
    if m <= 0:
        return FpSubspace.full(tp.free_total.dim, p)
    if m > t * (p - 1):
        return FpSubspace.zero(tp.free_total.dim, p)
    seeds = np.array(
        [
            vec
            for (exps, l), vec in zip(_filtration_meta(tp), tp.e_vectors)
            if sum(exps) >= m
        ],
        dtype=np.int64,
    )
    return free_submodule_closure(tp.free_total, seeds, "both")


def _filtration_meta(tp: TransferPair):
    p = tp.ext.total.p
    t = tp.ext.t
    metas = []
    for exps in iproduct(range(p), repeat=t):
        for l in range(tp.n):
            metas.append((tuple(exps), l))
    return metas


def filtration_product(tp: TransferPair, a: FpSubspace, b: FpSubspace) -> FpSubspace:
    """Span of pairwise algebra products of two carriers."""
    fbt = tp.free_total
    rs = RowSpace(fbt.p, fbt.dim)
    for x in a.basis.a:
        for y in b.basis.a:
            rs.add(fbt.algebra_product(x, y).reshape(1, -1))
    return rs.subspace()
