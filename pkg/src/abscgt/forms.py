"""Hash-consed arena of short partizan game forms.

Every form lives in an :class:`Arena` and is referred to by a dense integer
id (``FormId``).  Interning sorts and deduplicates both option sets, so two
ids are equal exactly when the forms are structurally identical.  The only
adorn is 0, so an atom is simply an empty option set and the zero form
``{|}`` always has id 0.

With a single adorn the four-case definition of the disjunctive sum collapses
to the uniform recursion ``G + H = {G^L + H, G + H^L | G^R + H, G + H^R}``:
an empty option set on both sides yields an empty union, which is exactly the
atomic case.
"""

from __future__ import annotations

import sys
from collections.abc import Iterable, Iterator
from itertools import combinations
from typing import NamedTuple

from .errors import DomainError, FrozenArenaError, ResourceError, StructuralError

FormId = int
OptionSet = tuple[FormId, ...]

FAMILIES = ("moves", "hat", "ostar", "zeta")


class FormNode(NamedTuple):
    left: OptionSet
    right: OptionSet


class Arena:
    """Append-only table of interned forms plus memo tables for the algebra.

    ``max_nodes`` and ``max_birthday`` are hard limits; exceeding either
    raises :class:`ResourceError`.  After :meth:`freeze` no new form can be
    created, which makes the arena safe to share between readers.
    """

    ZERO: FormId = 0

    def __init__(self, max_nodes: int = 20_000_000, max_birthday: int = 512):
        self.max_nodes = max_nodes
        self.max_birthday = max_birthday
        self._nodes: list[FormNode] = []
        self._birthdays: list[int] = []
        self._index: dict[FormNode, FormId] = {}
        # option tuples are shared between nodes to keep large closures small
        self._option_sets: dict[OptionSet, OptionSet] = {(): ()}
        self._sum_cache: dict[tuple[FormId, FormId], FormId] = {}
        self._conj_cache: dict[FormId, FormId] = {}
        self._adj_cache: dict[FormId, FormId] = {}
        self._family_cache: dict[tuple[str, int], FormId] = {}
        self._frozen = False
        # scratch memo tables owned by other modules (outcomes, flags, ...)
        self.caches: dict[object, dict] = {}
        # recursion depth of every algebraic operation is bounded by birthday
        needed = 8 * max_birthday + 1000
        if sys.getrecursionlimit() < needed:
            sys.setrecursionlimit(needed)
        self.intern((), ())

    # -- table access -------------------------------------------------------

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, g: object) -> bool:
        return isinstance(g, int) and 0 <= g < len(self._nodes)

    def node(self, g: FormId) -> FormNode:
        return self._nodes[g]

    def left(self, g: FormId) -> OptionSet:
        return self._nodes[g].left

    def right(self, g: FormId) -> OptionSet:
        return self._nodes[g].right

    def options(self, g: FormId, side: str) -> OptionSet:
        node = self._nodes[g]
        return node.left if side == "Left" else node.right

    def cache(self, name: object) -> dict:
        """Return the scratch memo table registered under ``name``."""
        table = self.caches.get(name)
        if table is None:
            table = self.caches[name] = {}
        return table

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> None:
        """Forbid creation of new forms; lookups and cached reads stay valid."""
        self._frozen = True

    # -- interning ----------------------------------------------------------

    def _canonical(self, ids: Iterable[FormId]) -> OptionSet:
        opts = tuple(sorted(set(ids)))
        n = len(self._nodes)
        for x in opts:
            if not isinstance(x, int) or x < 0 or x >= n:
                raise StructuralError(f"unknown form id {x!r}")
        shared = self._option_sets.get(opts)
        if shared is None:
            shared = self._option_sets[opts] = opts
        return shared

    def intern(self, left: Iterable[FormId], right: Iterable[FormId]) -> FormId:
        """Return the unique id of the form ``{left | right}``."""
        key = FormNode(self._canonical(left), self._canonical(right))
        found = self._index.get(key)
        if found is not None:
            return found
        if self._frozen:
            raise FrozenArenaError("arena is frozen")
        if len(self._nodes) >= self.max_nodes:
            raise ResourceError(f"arena capacity of {self.max_nodes} forms exhausted")
        births = self._birthdays
        day = 1 + max((births[x] for x in key.left + key.right), default=-1)
        if day > self.max_birthday:
            raise ResourceError(f"birthday {day} exceeds limit {self.max_birthday}")
        gid = len(self._nodes)
        self._nodes.append(key)
        births.append(day)
        self._index[key] = gid
        return gid

    def lookup(self, left: Iterable[FormId], right: Iterable[FormId]) -> FormId | None:
        """Like :meth:`intern` but returns None instead of creating a form."""
        key = FormNode(self._canonical(left), self._canonical(right))
        return self._index.get(key)

    # -- basic queries ------------------------------------------------------

    def birthday(self, g: FormId) -> int:
        return self._birthdays[g]

    def is_left_atomic(self, g: FormId) -> bool:
        return not self._nodes[g].left

    def is_right_atomic(self, g: FormId) -> bool:
        return not self._nodes[g].right

    def followers(self, g: FormId) -> frozenset[FormId]:
        """``g`` together with every position reachable from it."""
        seen = {g}
        stack = [g]
        nodes = self._nodes
        while stack:
            node = nodes[stack.pop()]
            for x in node.left + node.right:
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        return frozenset(seen)

    # -- algebra ------------------------------------------------------------

    def sum(self, g: FormId, h: FormId) -> FormId:
        """Disjunctive sum, memoized on the unordered pair."""
        if g == 0:
            return h
        if h == 0:
            return g
        key = (g, h) if g <= h else (h, g)
        hit = self._sum_cache.get(key)
        if hit is not None:
            return hit
        gn = self._nodes[g]
        hn = self._nodes[h]
        add = self.sum
        left = [add(x, h) for x in gn.left]
        left += [add(g, y) for y in hn.left]
        right = [add(x, h) for x in gn.right]
        right += [add(g, y) for y in hn.right]
        result = self.intern(left, right)
        self._sum_cache[key] = result
        return result

    def sum_all(self, forms: Iterable[FormId]) -> FormId:
        total = self.ZERO
        for g in forms:
            total = self.sum(total, g)
        return total

    def conjugate(self, g: FormId) -> FormId:
        hit = self._conj_cache.get(g)
        if hit is not None:
            return hit
        node = self._nodes[g]
        conj = self.conjugate
        result = self.intern([conj(x) for x in node.right], [conj(x) for x in node.left])
        self._conj_cache[g] = result
        self._conj_cache[result] = g
        return result

    def adjoint(self, g: FormId) -> FormId:
        """The misère adjoint: a form with ``g + adjoint(g)`` a P-position."""
        hit = self._adj_cache.get(g)
        if hit is not None:
            return hit
        node = self._nodes[g]
        adj = self.adjoint
        if not node.left and not node.right:
            result = self.intern([0], [0])
        elif not node.left:
            result = self.intern([adj(x) for x in node.right], [0])
        elif not node.right:
            result = self.intern([0], [adj(x) for x in node.left])
        else:
            result = self.intern([adj(x) for x in node.right], [adj(x) for x in node.left])
        self._adj_cache[g] = result
        return result

    # -- named families -----------------------------------------------------

    @property
    def star(self) -> FormId:
        return self.intern([0], [0])

    def moves(self, n: int) -> FormId:
        """``n`` consecutive moves for Left (Right when ``n`` is negative)."""
        return self.construct_family("moves", n)

    def hat(self, n: int) -> FormId:
        """``n`` controlled moves ``{0, 1, ..., n-1 | }``."""
        return self.construct_family("hat", n)

    def ostar(self, n: int) -> FormId:
        """The tower ``{0 | ostar(n-1)}`` starting from ``ostar(0) = *``."""
        return self.construct_family("ostar", n)

    def zeta(self, n: int) -> FormId:
        """Left-hook ``{ | n}`` for ``n >= 2``; Right-hook ``{-n | }`` for ``n <= -2``."""
        return self.construct_family("zeta", n)

    def construct_family(self, kind: str, n: int) -> FormId:
        if kind not in FAMILIES:
            raise DomainError(f"unknown family {kind!r}")
        key = (kind, n)
        hit = self._family_cache.get(key)
        if hit is not None:
            return hit
        if kind == "ostar":
            if n < 0:
                raise DomainError("ostar requires n >= 0")
            g = self.star
            for _ in range(n):
                g = self.intern([0], [g])
        elif kind == "zeta":
            if abs(n) < 2:
                raise DomainError("zeta requires |n| >= 2")
            g = self.intern([], [self.moves(n)]) if n > 0 else self.conjugate(self.zeta(-n))
        elif n < 0:
            g = self.conjugate(self.construct_family(kind, -n))
        elif kind == "moves":
            g = 0
            for _ in range(n):
                g = self.intern([g], [])
        else:
            g = self.intern([self.moves(k) for k in range(n)], []) if n else 0
        self._family_cache[key] = g
        return g

    # -- enumeration --------------------------------------------------------

    def all_forms(self, max_birthday: int) -> list[FormId]:
        """Every form of birthday at most ``max_birthday`` (use only for <= 2)."""
        level = [0]
        for _ in range(max_birthday):
            subsets = list(powerset(level))
            level = sorted({self.intern(a, b) for a in subsets for b in subsets})
        return level

    def iter_ids(self) -> Iterator[FormId]:
        return iter(range(len(self._nodes)))


def powerset(items: Iterable[FormId]) -> Iterator[tuple[FormId, ...]]:
    """All subsets of ``items`` in order of size, then lexicographically."""
    pool = list(items)
    for size in range(len(pool) + 1):
        yield from combinations(pool, size)
