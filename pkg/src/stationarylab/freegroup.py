"""Exact arithmetic in finitely generated free groups.

Letters are packed signed integers: +i is the i-th generator, -i its inverse
(1-based, i <= rank).  Words are immutable, always freely reduced, and ordered
length-first then lexicographically with a < a^-1 < b < b^-1 < ...

String form (used by every CLI flag, JSON config, and CSV cell): generators are
'a'..'z' by index, inverses the corresponding uppercase letters, and the
identity is the one-character string "1"; e.g. "abAB" = a b a^-1 b^-1.
"""

from __future__ import annotations

import string
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import (
    ContextMismatchError,
    MalformedInputError,
    UndefinedAxisError,
)


class Generator(NamedTuple):
    """A single letter: generator index in [1, rank] and sign (+1 or -1)."""

    index: int
    sign: int

    @property
    def code(self) -> int:
        return self.index * self.sign

    @staticmethod
    def from_code(code: int) -> "Generator":
        return Generator(abs(code), 1 if code > 0 else -1)


def _letter_order(code: int) -> int:
    # a < a^-1 < b < b^-1 < ...
    return 2 * (abs(code) - 1) + (0 if code > 0 else 1)


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    """Freely reduce a letter sequence (cancel adjacent g g^-1 pairs)."""
    stack: list[int] = []
    for c in letters:
        if c == 0:
            raise MalformedInputError("letter code 0 is not a generator")
        if stack and stack[-1] == -c:
            stack.pop()
        else:
            stack.append(c)
    return tuple(stack)


class Word:
    """A freely reduced word in F_rank. Immutable; the empty word is the identity."""

    __slots__ = ("letters", "rank", "_hash")

    def __init__(self, letters: Iterable[int], rank: int, _reduced: bool = False):
        lt = tuple(letters) if _reduced else reduce_letters(letters)
        for c in lt:
            if abs(c) > rank:
                raise MalformedInputError(f"letter {c} out of range for rank {rank}")
        object.__setattr__(self, "letters", lt)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "_hash", hash((rank, lt)))

    def __setattr__(self, *args):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Word)
            and self.rank == other.rank
            and self.letters == other.letters
        )

    def sort_key(self):
        return (len(self.letters), tuple(_letter_order(c) for c in self.letters))

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if self.rank != other.rank:
            raise ContextMismatchError(
                f"rank mismatch: {self.rank} vs {other.rank}"
            )
        a, b = self.letters, other.letters
        i, j = len(a), 0
        while i > 0 and j < len(b) and a[i - 1] == -b[j]:
            i -= 1
            j += 1
        return Word(a[:i] + b[j:], self.rank, _reduced=True)

    def inverse(self) -> "Word":
        return Word(tuple(-c for c in reversed(self.letters)), self.rank, _reduced=True)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = Word((), self.rank, _reduced=True)
        for _ in range(n):
            out = out * self
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        if self.rank > 26:
            raise MalformedInputError("string form supports rank <= 26")
        out = []
        for c in self.letters:
            ch = string.ascii_lowercase[abs(c) - 1]
            out.append(ch if c > 0 else ch.upper())
        return "".join(out)

    def __repr__(self) -> str:
        return f"Word('{self}', rank={self.rank})"


@dataclass(frozen=True)
class FreeGroupContext:
    """Fixes the ambient free group F_rank for a computation."""

    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise MalformedInputError(f"rank must be >= 1, got {self.rank}")

    @property
    def identity(self) -> Word:
        return Word((), self.rank, _reduced=True)

    def generator(self, index: int, sign: int = 1) -> Word:
        if not 1 <= index <= self.rank:
            raise MalformedInputError(f"generator index {index} out of rank {self.rank}")
        if sign not in (1, -1):
            raise MalformedInputError(f"sign must be +-1, got {sign}")
        return Word((index * sign,), self.rank, _reduced=True)

    def generators(self) -> list[Word]:
        """All 2*rank single-letter words in the fixed order a, a^-1, b, b^-1, ..."""
        out = []
        for i in range(1, self.rank + 1):
            out.append(self.generator(i, 1))
            out.append(self.generator(i, -1))
        return out

    def word(self, spec: str | Iterable[int]) -> Word:
        if isinstance(spec, str):
            return word_from_str(spec, self.rank)
        return Word(spec, self.rank)

    def reduce(self, letters: Sequence[int] | Sequence[Generator]) -> Word:
        codes = [c.code if isinstance(c, Generator) else c for c in letters]
        return Word(codes, self.rank)

    def ball(self, radius: int) -> Iterator[Word]:
        return ball(self, radius)

    def sphere_size(self, n: int) -> int:
        if n == 0:
            return 1
        return 2 * self.rank * (2 * self.rank - 1) ** (n - 1)

    def ball_size(self, radius: int) -> int:
        return sum(self.sphere_size(n) for n in range(radius + 1))


def word_from_str(s: str, rank: int) -> Word:
    """Parse the serialization format: 'abA' etc., '1' for the identity."""
    if s == "1":
        return Word((), rank, _reduced=True)
    codes = []
    for ch in s:
        if ch in string.ascii_lowercase:
            codes.append(string.ascii_lowercase.index(ch) + 1)
        elif ch in string.ascii_uppercase:
            codes.append(-(string.ascii_uppercase.index(ch) + 1))
        else:
            raise MalformedInputError(f"bad character {ch!r} in word {s!r}")
    return Word(codes, rank)


def multiply(u: Word, v: Word) -> Word:
    """Product of reduced words: multiply(u, v) = reduce(u ++ v)."""
    return u * v


def conjugate(g: Word, h: Word) -> Word:
    """h^-1 g h."""
    return h.inverse() * g * h


def ball(context: FreeGroupContext, radius: int) -> Iterator[Word]:
    """Yield every reduced word of length <= radius once, in length-lex order."""
    if radius < 0:
        raise MalformedInputError(f"radius must be >= 0, got {radius}")
    yield context.identity
    codes = sorted(
        (i * s for i in range(1, context.rank + 1) for s in (1, -1)),
        key=_letter_order,
    )
    layer = [()]
    for _ in range(radius):
        nxt = []
        for tail in layer:
            for c in codes:
                if tail and tail[-1] == -c:
                    continue
                nxt.append(tail + (c,))
        for lt in nxt:
            yield Word(lt, context.rank, _reduced=True)
        layer = nxt


def cyclic_reduction(g: Word) -> tuple[Word, Word]:
    """Split g = w c w^-1 with c cyclically reduced; returns (w, c)."""
    lt = g.letters
    i, j = 0, len(lt)
    while j - i >= 2 and lt[i] == -lt[j - 1]:
        i += 1
        j -= 1
    return (
        Word(lt[:i], g.rank, _reduced=True),
        Word(lt[i:j], g.rank, _reduced=True),
    )


def axis_prefix(g: Word, depth: int) -> Word:
    """First `depth` letters of the attracting boundary point g g g ...

    With g = w c w^-1 (c cyclically reduced), the limit point reads
    w c c c ..., which is reduced as written.
    """
    if g.is_identity():
        raise UndefinedAxisError("the identity fixes no boundary axis")
    if depth < 0:
        raise MalformedInputError(f"depth must be >= 0, got {depth}")
    w, c = cyclic_reduction(g)
    out = list(w.letters[:depth])
    while len(out) < depth:
        out.extend(c.letters[: depth - len(out)])
    return Word(tuple(out), g.rank, _reduced=True)


# ---------------------------------------------------------------------------
# finite quotients (unitary images of the generators)
# ---------------------------------------------------------------------------


class FiniteQuotient:
    """A homomorphism F_rank -> U(m) given by the images of the generators.

    Images may be permutations of {0..m-1} (converted to permutation matrices)
    or explicit unitary matrices.
    """

    def __init__(self, rank: int, images: Sequence[np.ndarray], tol: float = 1e-10):
        if len(images) != rank:
            raise MalformedInputError(
                f"need {rank} generator images, got {len(images)}"
            )
        mats = [np.asarray(U, dtype=complex) for U in images]
        m = mats[0].shape[0]
        for U in mats:
            if U.shape != (m, m):
                raise MalformedInputError("generator images must share one dimension")
            if np.max(np.abs(U @ U.conj().T - np.eye(m))) > tol:
                raise MalformedInputError("generator image is not unitary")
        self.rank = rank
        self.dim = m
        self._images = mats

    @staticmethod
    def from_permutations(rank: int, perms: Sequence[Sequence[int]]) -> "FiniteQuotient":
        """Images given as permutations p of {0..m-1}; generator i sends e_j to e_p[j]."""
        mats = []
        for p in perms:
            m = len(p)
            U = np.zeros((m, m))
            for j, pj in enumerate(p):
                U[pj, j] = 1.0
            mats.append(U)
        return FiniteQuotient(rank, mats)

    @staticmethod
    def regular_from_permutations(
        rank: int, perms: Sequence[Sequence[int]]
    ) -> "FiniteQuotient":
        """Left regular representation of the finite group the images generate."""
        perms = [tuple(p) for p in perms]
        m0 = len(perms[0])
        ident = tuple(range(m0))

        def compose(p, q):  # (p o q)(i) = p(q(i))
            return tuple(p[q[i]] for i in range(m0))

        elems = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for g in frontier:
                for p in perms:
                    h = compose(p, g)
                    if h not in elems:
                        elems.add(h)
                        nxt.append(h)
            frontier = nxt
        order = sorted(elems)
        index = {g: i for i, g in enumerate(order)}
        images = []
        for p in perms:
            U = np.zeros((len(order), len(order)))
            for g in order:
                U[index[compose(p, g)], index[g]] = 1.0
            images.append(U)
        return FiniteQuotient(rank, images)

    def evaluate(self, w: Word) -> np.ndarray:
        """Image of a word; the image of g^-1 is the adjoint of the image of g."""
        if w.rank != self.rank:
            raise ContextMismatchError(
                f"word rank {w.rank} does not match quotient rank {self.rank}"
            )
        out = np.eye(self.dim, dtype=complex)
        for c in w.letters:
            U = self._images[abs(c) - 1]
            out = out @ (U if c > 0 else U.conj().T)
        return out


# ---------------------------------------------------------------------------
# free basis of a finitely generated subgroup (graph folding)
# ---------------------------------------------------------------------------


class FreeBasisDecomposition(NamedTuple):
    """Free basis of the subgroup generated by `words`, with rewrites.

    basis: one reduced ambient word per basis element.
    rewritten: for each input word, its reduced expression over the basis
               (tuple of signed 1-based basis indices).
    """

    basis: list[Word]
    rewritten: list[tuple[int, ...]]


def free_basis_decomposition(words: Sequence[Word]) -> FreeBasisDecomposition:
    """Fold the wedge of loops spelled by `words` and read off a free basis.

    Every input word is a loop at the base vertex of the folded graph; the
    non-tree edges of a spanning tree form a free basis of the subgroup the
    words generate, and tracing each loop through the graph rewrites it over
    that basis.
    """
    words = list(words)
    if not words:
        return FreeBasisDecomposition([], [])
    rank = words[0].rank

    parent: list[int] = []
    adj: list[dict[int, int]] = []

    def new_vertex() -> int:
        parent.append(len(parent))
        adj.append({})
        return len(parent) - 1

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    base = new_vertex()
    pending: deque[tuple[int, int, int]] = deque()
    for w in words:
        prev = base
        n = len(w.letters)
        for j, c in enumerate(w.letters):
            nxt = base if j == n - 1 else new_vertex()
            pending.append((prev, c, nxt))
            prev = nxt

    def merge(x: int, y: int) -> None:
        x, y = find(x), find(y)
        if x == y:
            return
        if len(adj[x]) < len(adj[y]):
            x, y = y, x
        parent[y] = x
        moved = adj[y]
        adj[y] = {}
        for lab, t in moved.items():
            pending.append((x, lab, t))

    while pending:
        u, lab, v = pending.popleft()
        u, v = find(u), find(v)
        cur = adj[u].get(lab)
        if cur is None:
            adj[u][lab] = v
            pending.append((v, -lab, u))
        else:
            cur = find(cur)
            adj[u][lab] = cur
            if cur != v:
                merge(cur, v)

    root = find(base)

    # spanning tree by BFS in deterministic label order
    tree_parent: dict[int, tuple[int, int]] = {}  # vertex -> (parent vertex, label read)
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for lab in sorted(adj[u], key=_letter_order):
            v = find(adj[u][lab])
            if v not in seen:
                seen.add(v)
                tree_parent[v] = (u, lab)
                queue.append(v)

    def path_from_root(v: int) -> tuple[int, ...]:
        out: list[int] = []
        while v != root:
            p, lab = tree_parent[v]
            out.append(lab)
            v = p
        return tuple(reversed(out))

    # non-tree edges, one orientation each, in a deterministic order
    tree_edges = set()
    for v, (p, lab) in tree_parent.items():
        tree_edges.add((p, lab, v))
        tree_edges.add((v, -lab, p))
    basis_index: dict[tuple[int, int, int], int] = {}
    basis_words: list[Word] = []
    for u in sorted(seen):
        for lab in sorted(adj[u], key=_letter_order):
            v = find(adj[u][lab])
            e = (u, lab, v)
            if e in tree_edges or (v, -lab, u) in basis_index or e in basis_index:
                continue
            basis_index[e] = len(basis_words)
            basis_words.append(
                Word(
                    path_from_root(u) + (lab,) + tuple(-c for c in reversed(path_from_root(v))),
                    rank,
                )
            )

    rewritten = []
    for w in words:
        v = root
        out: list[int] = []
        for c in w.letters:
            t = find(adj[v][c])
            e = (v, c, t)
            if e in basis_index:
                s = basis_index[e] + 1
            elif (t, -c, v) in basis_index:
                s = -(basis_index[(t, -c, v)] + 1)
            else:
                s = 0  # tree edge
            if s:
                if out and out[-1] == -s:
                    out.pop()
                else:
                    out.append(s)
            v = t
        rewritten.append(tuple(out))
    return FreeBasisDecomposition(basis_words, rewritten)
