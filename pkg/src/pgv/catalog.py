"""Built-in group catalog and presentation-file ingestion.

The built-in set covers cyclic and all abelian p-groups of order <= 64,
the dihedral / quaternion / semidihedral / modular 2-group families, the
modular p-groups and both extraspecial groups of order p^3 for small odd p,
the full order-16 and order-81 classifications (data files), and pairwise
direct products up to a product cap.  Entries of the same order are
deduplicated up to isomorphism at load time.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .group_core import (
    DEFAULT_ORDER_CAP,
    GroupError,
    GroupTable,
    Subgroup,
    _group_invariants,
    find_isomorphism,
    from_pc_presentation,
)
from .presentations import PcPresentation, direct_product, parse_presentations

DEFAULT_PRODUCT_CAP = 64


class CatalogError(ValueError):
    pass


@dataclass
class CatalogEntry:
    name: str
    presentation: PcPresentation
    tags: Tuple[str, ...] = ()
    priority: int = 1  # lower wins when deduplicating isomorphic entries
    _table: Optional[GroupTable] = field(default=None, repr=False, compare=False)

    @property
    def order(self) -> int:
        return self.presentation.order()

    @property
    def p(self) -> int:
        return self.presentation.p

    def group(self, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
        if self._table is None:
            tbl = from_pc_presentation(self.presentation, order_cap=order_cap)
            tbl.name = self.name
            self._table = tbl
        return self._table

    def matches(self, expr: str) -> bool:
        import fnmatch

        needles = [s.strip() for s in expr.split(",") if s.strip()]
        for needle in needles:
            if needle in ("all", "*"):
                return True
            if needle.startswith("order<="):
                try:
                    if self.order <= int(needle[len("order<=") :]):
                        return True
                except ValueError:
                    continue
            elif needle.startswith("order="):
                try:
                    if self.order == int(needle[len("order=") :]):
                        return True
                except ValueError:
                    continue
            elif needle.startswith("p="):
                try:
                    if self.p == int(needle[2:]):
                        return True
                except ValueError:
                    continue
            elif fnmatch.fnmatch(self.name, needle) or any(
                fnmatch.fnmatch(t, needle) for t in self.tags
            ):
                return True
        return False


# -- family presentations -------------------------------------------------------


def _digits_word(exponent: int, p: int, npow: int, first_gen: int) -> List[int]:
    """Word for r^exponent where r-powers live on generators first_gen..(chain),
    generator (first_gen + j) carrying r^(p^j); exponent taken mod p^npow."""
    e = exponent % (p**npow)
    letters: List[int] = []
    for j in range(npow):
        d = (e // (p**j)) % p
        letters.extend([first_gen + j] * d)
    return letters


def abelian_presentation(p: int, parts: Sequence[int], name: str = "") -> PcPresentation:
    """Abelian p-group with cyclic factors p^parts[i] (parts descending)."""
    ngens = sum(parts)
    pow_words: Dict[int, List[int]] = {}
    idx = 1
    for k in parts:
        for j in range(k - 1):
            pow_words[idx + j] = [idx + j + 1]
        pow_words[idx + k - 1] = []
        idx += k
    label = name or "x".join(f"C{p**k}" for k in parts)
    return PcPresentation(p, ngens, label, pow_words, {})


def _two_group_family(kind: str, n: int) -> PcPresentation:
    """Dihedral / quaternion / semidihedral / modular group of order 2^n.

    Generators: g1 the twisting involution, g2..gn the cyclic chain with
    g_{j+2} = r^(2^j).
    """
    if n < 3:
        raise CatalogError("family needs order >= 8")
    npow = n - 1  # r has order 2^(n-1)
    pow_words: Dict[int, List[int]] = {1: []}
    for i in range(2, n):
        pow_words[i] = [i + 1]
    pow_words[n] = []
    comm: Dict[Tuple[int, int], List[int]] = {}
    if kind == "D":
        s_exp = -1
        name = f"D{2**n}"
    elif kind == "Q":
        s_exp = -1
        pow_words[1] = [n]  # s^2 = r^(2^(n-2)) = z
        name = f"Q{2**n}"
    elif kind == "SD":
        if n < 4:
            raise CatalogError("semidihedral needs order >= 16")
        s_exp = 2 ** (n - 2) - 1
        name = f"SD{2**n}"
    elif kind == "M":
        if n < 4:
            raise CatalogError("modular 2-group needs order >= 16")
        s_exp = 2 ** (n - 2) + 1
        name = f"M{2**n}"
    else:
        raise CatalogError(f"unknown family {kind}")
    for i in range(2, n + 1):
        k = 2 ** (i - 2)  # g_i = r^k
        comm_exp = (k * s_exp - k) % (2**npow)
        word = _digits_word(comm_exp, 2, npow, 2)
        word = [w for w in word if w > i]
        # commutator value r^(k(s_exp-1)) always lies above g_i in the chain
        if _digits_word(comm_exp, 2, npow, 2) != word:
            raise CatalogError("family commutator escaped the chain tail")
        if word:
            comm[(i, 1)] = word
    return PcPresentation(2, n, name, pow_words, comm)


def dihedral(n: int) -> PcPresentation:
    return _two_group_family("D", n)


def quaternion(n: int) -> PcPresentation:
    return _two_group_family("Q", n)


def semidihedral(n: int) -> PcPresentation:
    return _two_group_family("SD", n)


def modular2(n: int) -> PcPresentation:
    return _two_group_family("M", n)


def modular_odd(p: int, n: int) -> PcPresentation:
    """M_{p^n} = <a, b : a^(p^(n-1)) = b^p = 1, a^b = a^(1 + p^(n-2))>, p odd."""
    if n < 3:
        raise CatalogError("modular group needs order >= p^3")
    npow = n - 1
    pow_words: Dict[int, List[int]] = {1: []}
    for i in range(2, n):
        pow_words[i] = [i + 1]
    pow_words[n] = []
    comm_exp = p ** (n - 2)  # [a, b] = a^(p^(n-2))
    word = _digits_word(comm_exp, p, npow, 2)
    return PcPresentation(p, n, f"M{p**n}", pow_words, {(2, 1): word})


def heisenberg(p: int) -> PcPresentation:
    """Extraspecial of order p^3 and exponent p (p odd)."""
    return PcPresentation(p, 3, f"He{p**3}", {1: [], 2: [], 3: []}, {(2, 1): [3]})


def order27_list() -> List[PcPresentation]:
    return [
        abelian_presentation(3, [3], "C27"),
        abelian_presentation(3, [2, 1], "C9xC3"),
        abelian_presentation(3, [1, 1, 1], "C3xC3xC3"),
        heisenberg(3),
        modular_odd(3, 3),
    ]


def order8_list() -> List[PcPresentation]:
    return [
        abelian_presentation(2, [3], "C8"),
        abelian_presentation(2, [2, 1], "C4xC2"),
        abelian_presentation(2, [1, 1, 1], "C2xC2xC2"),
        dihedral(3),
        quaternion(3),
    ]


# -- presentation export (chief series digits) ----------------------------------


def table_to_presentation(g: GroupTable, name: str) -> PcPresentation:
    """Power-commutator presentation along a chief series with central factors."""
    p = g.p
    n = g.k
    # Build 1 = K_0 < K_1 < ... < K_n = G with [K_{i+1}, G] <= K_i, |K_i| = p^i.
    pivots: List[int] = []
    cur = Subgroup(g, [0], check=False)
    gens_of_g = g.generating_sequence()
    comm_tables = [
        np.array([g.commutator(x, gen) for x in range(g.order)], dtype=np.int64)
        for gen in gens_of_g
    ]
    pw = g.pow_p_table
    while cur.order < g.order:
        mask = ~cur.bitmap & cur.bitmap[pw]
        for tbl in comm_tables:
            mask &= cur.bitmap[tbl]
        cands = np.nonzero(mask)[0]
        if cands.size == 0:
            raise GroupError("no central extension step available")
        x = int(cands[0])
        pivots.append(x)
        members = [cur.members]
        y = x
        for _ in range(p - 1):
            members.append(g.mul[cur.members, y])
            y = g.mul[y, x]
        cur = Subgroup(g, np.concatenate(members), check=False)
    # Generator i (1-based) is the pivot added last minus i.
    gens = [pivots[n - i] for i in range(1, n + 1)]  # g_1 from the top layer

    def digits(y: int, level: int) -> List[int]:
        """Exponents (e_level..e_n) of y in <g_level..g_n>."""
        if level > n:
            if y != 0:
                raise GroupError("digit extraction failed")
            return []
        gen = gens[level - 1]
        for e in range(p):
            # Normal form is g_1^e1 ... g_n^en, so peel from the left.
            rest = g.mul[g.inv[g.power(gen, e)], y]
            try:
                tail = digits(int(rest), level + 1)
            except GroupError:
                continue
            return [e] + tail
        raise GroupError("digit extraction failed")

    def to_word(y: int, min_gen: int) -> List[int]:
        exps = digits(y, 1)
        letters: List[int] = []
        for i, e in enumerate(exps, start=1):
            if e and i <= min_gen:
                raise GroupError("relation word references a low generator")
            letters.extend([i] * e)
        return letters

    pow_words: Dict[int, List[int]] = {}
    comm_words: Dict[Tuple[int, int], List[int]] = {}
    for i in range(1, n + 1):
        pow_words[i] = to_word(g.power(gens[i - 1], p), i)
    for i in range(2, n + 1):
        for j in range(1, i):
            w = to_word(g.commutator(gens[i - 1], gens[j - 1]), i)
            if w:
                comm_words[(i, j)] = w
    return PcPresentation(p, n, name, pow_words, comm_words)


# -- built-in catalog ------------------------------------------------------------


def _partitions(k: int) -> List[List[int]]:
    if k == 0:
        return [[]]
    out = []

    def rec(rest, maxpart, acc):
        if rest == 0:
            out.append(list(acc))
            return
        for part in range(min(rest, maxpart), 0, -1):
            acc.append(part)
            rec(rest - part, part, acc)
            acc.pop()

    rec(k, k, [])
    return out


def _data_text(fname: str) -> str:
    path = resources.files("pgv").joinpath("data", fname)
    return path.read_text(encoding="utf-8")


def _base_entries(order_cap: int) -> List[CatalogEntry]:
    entries: List[CatalogEntry] = []

    def add(pres: PcPresentation, tags: Iterable[str], priority: int = 1):
        if pres.order() <= order_cap:
            entries.append(CatalogEntry(pres.name, pres, tuple(tags), priority))

    # Data files first (priority 0 so their names win deduplication).
    for fname, tagbase in (("order16.pres", "order16"), ("order81.pres", "order81")):
        try:
            text = _data_text(fname)
        except FileNotFoundError:
            continue
        for i, pres in enumerate(parse_presentations(text), start=1):
            tags = [tagbase, f"{tagbase}#{i}"]
            add(pres, tags, priority=0)

    # Abelian groups of order <= 64, every prime power and partition.
    for p in (2, 3, 5, 7):
        k = 1
        while p**k <= 64:
            for parts in _partitions(k):
                pres = abelian_presentation(p, sorted(parts, reverse=True))
                tags = ["abelian"]
                if len(parts) == 1:
                    tags.append("cyclic")
                if all(x == 1 for x in parts):
                    tags.append("elementary")
                add(pres, tags)
            k += 1

    # 2-group families up to order 64 (n <= 6).
    for n in range(3, 7):
        add(dihedral(n), ["dihedral"])
        add(quaternion(n), ["quaternion"])
        if n >= 4:
            add(semidihedral(n), ["semidihedral"])
            add(modular2(n), ["modular"])

    # Modular groups for odd p and the extraspecial pairs.
    for p, n in ((3, 3), (3, 4), (5, 3), (7, 3)):
        add(modular_odd(p, n), ["modular"] + (["extraspecial"] if n == 3 else []))
    for p in (3, 5, 7):
        add(heisenberg(p), ["extraspecial", "exponent-p"])

    return entries


def _product_entries(bases: List[CatalogEntry], product_cap: int) -> List[CatalogEntry]:
    out = []
    for i, a in enumerate(bases):
        for b in bases[i:]:
            if a.p != b.p:
                continue
            if a.order * b.order > product_cap:
                continue
            pres = direct_product(a.presentation, b.presentation, f"{a.name}x{b.name}")
            out.append(CatalogEntry(pres.name, pres, ("product",), priority=2))
    return out


def _dedupe(entries: List[CatalogEntry], order_cap: int) -> List[CatalogEntry]:
    by_order: Dict[int, List[CatalogEntry]] = {}
    for e in entries:
        by_order.setdefault(e.order, []).append(e)
    kept: List[CatalogEntry] = []
    for order in sorted(by_order):
        bucket = sorted(by_order[order], key=lambda e: (e.priority, e.name))
        kept_here: List[Tuple[tuple, CatalogEntry]] = []
        for e in bucket:
            try:
                tbl = e.group(order_cap=order_cap)
            except GroupError as exc:
                raise CatalogError(f"catalog entry {e.name} failed to build: {exc}")
            inv = _group_invariants(tbl)
            dup = None
            for inv2, other in kept_here:
                if inv2 == inv and find_isomorphism(other.group(), tbl) is not None:
                    dup = other
                    break
            if dup is None:
                kept_here.append((inv, e))
            else:
                # Keep the canonical entry but remember every family it realizes.
                merged = tuple(dict.fromkeys(dup.tags + e.tags))
                dup.tags = merged
        kept.extend(e for _, e in kept_here)
    names = [e.name for e in kept]
    if len(names) != len(set(names)):
        raise CatalogError("duplicate catalog names after deduplication")
    return kept


@functools.lru_cache(maxsize=4)
def builtin_catalog(
    order_cap: int = DEFAULT_ORDER_CAP, product_cap: int = DEFAULT_PRODUCT_CAP
) -> Tuple[CatalogEntry, ...]:
    bases = _dedupe(_base_entries(order_cap), order_cap)
    products = _product_entries(bases, min(product_cap, order_cap))
    entries = _dedupe(bases + products, order_cap)
    entries.sort(key=lambda e: (e.order, e.priority, e.name))
    return tuple(entries)


def load_catalog(path: Optional[str] = None, order_cap: int = DEFAULT_ORDER_CAP) -> List[CatalogEntry]:
    """Catalog from a presentation file, or the built-in set."""
    if path is None:
        return list(builtin_catalog(order_cap))
    text = Path(path).read_text(encoding="utf-8")
    presentations = parse_presentations(text)
    names = [p.name for p in presentations]
    dupes = {n for n in names if names.count(n) > 1}
    if dupes:
        raise CatalogError(f"duplicate name(s): {sorted(dupes)}")
    return [CatalogEntry(p.name, p, ("file",)) for p in presentations]


def find_entry(name: str, catalog: Optional[Sequence[CatalogEntry]] = None) -> CatalogEntry:
    cat = catalog if catalog is not None else builtin_catalog()
    for e in cat:
        if e.name == name:
            return e
    raise CatalogError(f"no catalog entry named {name!r}")
