"""Value types and exhaustive enumerators for the (2n-1)!! families.

Every object is an immutable value with a canonical text form and a JSON
form.  ``enumerate_family`` yields objects sorted by ``sort_key``, which is
lexicographic on the canonical serialization read as a sequence of
integers (step letters are ranked U < D < L and U < D < R < B).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Iterator, Union

from .config import check_bound
from .exactnum import binomial, double_factorial

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# value types


def _word_text(entries) -> str:
    if all(0 <= e <= 9 for e in entries):
        return "".join(map(str, entries))
    return " ".join(map(str, entries))


@dataclass(frozen=True)
class TrapezoidalWord:
    entries: tuple[int, ...]
    family = "trapezoidal"

    @property
    def size(self) -> int:
        return len(self.entries)

    def text(self) -> str:
        return _word_text(self.entries)

    def to_json(self):
        return {"family": self.family, "entries": list(self.entries)}


@dataclass(frozen=True)
class SymmetricTrapezoidalWord:
    entries: tuple[int, ...]
    family = "symmetric-trapezoidal"

    @property
    def size(self) -> int:
        return len(self.entries)

    def text(self) -> str:
        return _word_text(self.entries)

    def to_json(self):
        return {"family": self.family, "entries": list(self.entries)}


@dataclass(frozen=True)
class PerfectMatching:
    """Pairs (a(i), b(i)) listed with a(1) < a(2) < ... < a(n)."""

    pairs: tuple[tuple[int, int], ...]
    family = "perfect-matching"

    @property
    def size(self) -> int:
        return len(self.pairs)

    def text(self) -> str:
        if 2 * self.size <= 9:
            return "/".join(f"{a}{b}" for a, b in self.pairs)
        return "/".join(f"{a} {b}" for a, b in self.pairs)

    def to_json(self):
        return {"family": self.family, "pairs": [list(p) for p in self.pairs]}

    def word(self) -> tuple[int, ...]:
        """The listing a(1) b(1) a(2) b(2) ... a(n) b(n)."""
        return tuple(x for p in self.pairs for x in p)


@dataclass(frozen=True)
class StirlingPermutation:
    entries: tuple[int, ...]
    family = "stirling-permutation"

    @property
    def size(self) -> int:
        return len(self.entries) // 2

    def text(self) -> str:
        return _word_text(self.entries)

    def to_json(self):
        return {"family": self.family, "entries": list(self.entries)}


@dataclass(frozen=True)
class IncreasingTree:
    """Increasing ordered tree stored as child lists indexed by label.

    ``kids[v]`` lists the children of vertex v from left to right.  A
    standard tree of size n has labels 0..n with 0 at the root.
    """

    kids: tuple[tuple[int, ...], ...]
    family = "increasing-ordered-tree"

    @property
    def size(self) -> int:
        return len(self.kids) - 1

    def parent(self) -> dict[int, int]:
        return {c: v for v, cs in enumerate(self.kids) for c in cs}

    def walkaround(self) -> list[int]:
        """Non-root vertices in preorder, i.e. the order edges are first visited."""
        return walkaround(self.kids)

    def edges(self) -> list[tuple[int, int]]:
        """Edges in standard order: grouped by parent, siblings left to right."""
        return [(v, c) for v, cs in enumerate(self.kids) for c in cs]

    def text(self) -> str:
        def rec(v):
            if not self.kids[v]:
                return str(v)
            return f"{v}(" + ",".join(rec(c) for c in self.kids[v]) + ")"

        return rec(0)

    def to_json(self):
        return {"family": self.family, "children": [list(c) for c in self.kids]}

    @classmethod
    def from_edges(cls, edges, n: int | None = None) -> "IncreasingTree":
        """Build from (parent, child) pairs; sibling order follows the list."""
        if n is None:
            n = len(edges)
        kids: list[list[int]] = [[] for _ in range(n + 1)]
        for p, c in edges:
            kids[p].append(c)
        return cls(tuple(tuple(k) for k in kids))


def walkaround(kids) -> list[int]:
    """Clockwise depth-first order of the non-root vertices of a tree.

    ``kids`` maps a vertex to its ordered children (sequence or dict); the
    root is 0.  This is the single traversal shared by every tree-based map.
    """
    out: list[int] = []
    stack = list(reversed(kids[0]))
    while stack:
        v = stack.pop()
        out.append(v)
        stack.extend(reversed(kids[v]))
    return out


# Leaf-labeled 0-2 trees: a leaf is an int, an internal node a pair.
Tree02 = Union[int, tuple]


def _min_leaf(t: Tree02) -> int:
    return t if isinstance(t, int) else min(_min_leaf(t[0]), _min_leaf(t[1]))


def canonical02(t: Tree02) -> Tree02:
    """Order every sibling pair by smallest leaf label."""
    if isinstance(t, int):
        return t
    a, b = canonical02(t[0]), canonical02(t[1])
    return (a, b) if _min_leaf(a) < _min_leaf(b) else (b, a)


@dataclass(frozen=True)
class LeafLabeled02Tree:
    root: Tree02
    family = "leaf-labeled-02-tree"

    @property
    def size(self) -> int:
        return len(self.leaves()) - 1

    def leaves(self) -> list[int]:
        out: list[int] = []

        def rec(t):
            if isinstance(t, int):
                out.append(t)
            else:
                rec(t[0])
                rec(t[1])

        rec(self.root)
        return out

    def text(self) -> str:
        def rec(t):
            return str(t) if isinstance(t, int) else f"({rec(t[0])},{rec(t[1])})"

        return rec(self.root)

    def to_json(self):
        def rec(t):
            return t if isinstance(t, int) else [rec(t[0]), rec(t[1])]

        return {"family": self.family, "tree": rec(self.root)}


def path_heights(steps: str) -> list[int]:
    """Heights of the vertices of a U/D path, starting with 0."""
    h = [0]
    for s in steps:
        h.append(h[-1] + (1 if s == "U" else -1))
    return h


def upstep_top_heights(steps: str) -> list[int]:
    h = 0
    out = []
    for s in steps:
        h += 1 if s == "U" else -1
        if s == "U":
            out.append(h)
    return out


@dataclass(frozen=True)
class DyckPath:
    steps: str
    family = "dyck-path"

    @property
    def size(self) -> int:
        return len(self.steps) // 2

    def text(self) -> str:
        return self.steps

    def to_json(self):
        return {"family": self.family, "steps": self.steps}


@dataclass(frozen=True)
class UDPath:
    """Any word over U, D of length 2n (no positivity constraint)."""

    steps: str
    family = "ud-path"

    @property
    def size(self) -> int:
        return len(self.steps) // 2

    def text(self) -> str:
        return self.steps

    def to_json(self):
        return {"family": self.family, "steps": self.steps}


@dataclass(frozen=True)
class HLDyckPath:
    """Dyck path with one label per upstep, listed left to right."""

    steps: str
    labels: tuple[int, ...]
    family = "hl-dyck-path"

    @property
    def size(self) -> int:
        return len(self.steps) // 2

    def text(self) -> str:
        return f"{self.steps};" + ",".join(map(str, self.labels))

    def to_json(self):
        return {"family": self.family, "steps": self.steps, "labels": list(self.labels)}


# Ordered tree nodes for height-labeled trees: (label, (child, ...)).
OrderedNode = tuple


@dataclass(frozen=True)
class HLOrderedTree:
    """Ordered tree whose non-root vertices carry labels; the root holds 0."""

    root: OrderedNode
    family = "hl-ordered-tree"

    @property
    def size(self) -> int:
        def rec(node):
            return len(node[1]) + sum(rec(c) for c in node[1])

        return rec(self.root)

    def text(self) -> str:
        def rec(node):
            lab, cs = node
            if not cs:
                return str(lab)
            return f"{lab}(" + ",".join(rec(c) for c in cs) + ")"

        return rec(self.root)

    def to_json(self):
        def rec(node):
            return [node[0], [rec(c) for c in node[1]]]

        return {"family": self.family, "tree": rec(self.root)}


OVERHANG_STEPS = {"U": (1, 1), "D": (1, -1), "L": (-1, 1)}


@dataclass(frozen=True)
class OverhangPath:
    """Steps U=(1,1), D=(1,-1), L=(-1,1)."""

    steps: str
    family = "overhang-path"

    @property
    def size(self) -> int:
        return self.steps.count("U")

    def vertices(self) -> list[tuple[int, int]]:
        pts = [(0, 0)]
        for s in self.steps:
            dx, dy = OVERHANG_STEPS[s]
            x, y = pts[-1]
            pts.append((x + dx, y + dy))
        return pts

    def text(self) -> str:
        return self.steps

    def to_json(self):
        return {"family": self.family, "steps": self.steps}


@dataclass(frozen=True)
class UDFPath:
    """Bicolored UDF path: U, D, and flat steps colored R (red) or B (blue)."""

    steps: str
    family = "udf-bicolored"

    @property
    def size(self) -> int:
        return len(self.steps)

    @property
    def end_height(self) -> int:
        return self.steps.count("U") - self.steps.count("D")

    def text(self) -> str:
        return self.steps

    def to_json(self):
        return {"family": self.family, "steps": self.steps}


@dataclass(frozen=True)
class CodingWord:
    """Word of letters (value, subscript) with subscript 'Y' or 'N'."""

    letters: tuple[tuple[int, str], ...]
    family = "coding-word"

    @property
    def size(self) -> int:
        return len(self.letters)

    def text(self) -> str:
        return " ".join(f"{v}{s}" for v, s in self.letters)

    def to_json(self):
        return {"family": self.family, "letters": [[v, s] for v, s in self.letters]}


CombObject = Union[
    TrapezoidalWord,
    SymmetricTrapezoidalWord,
    PerfectMatching,
    StirlingPermutation,
    IncreasingTree,
    LeafLabeled02Tree,
    DyckPath,
    UDPath,
    HLDyckPath,
    HLOrderedTree,
    OverhangPath,
    UDFPath,
    CodingWord,
]


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _fail(msg: str) -> ValidationReport:
    return ValidationReport(False, msg)


_OK = ValidationReport(True)


def _validate_trapezoidal(w: TrapezoidalWord):
    for i, e in enumerate(w.entries, 1):
        if not 1 <= e <= 2 * i - 1:
            return _fail(f"entry {i} is {e}, outside [1, {2 * i - 1}]")
    return _OK


def _validate_symmetric(w: SymmetricTrapezoidalWord):
    for i, e in enumerate(w.entries, 1):
        if abs(e) > i - 1:
            return _fail(f"entry {i} is {e}, outside [{1 - i}, {i - 1}]")
    return _OK


def _validate_matching(m: PerfectMatching):
    n = m.size
    flat = sorted(m.word())
    if flat != list(range(1, 2 * n + 1)):
        return _fail(f"pairs do not partition [1, {2 * n}]")
    for i, (a, b) in enumerate(m.pairs, 1):
        if not a < b:
            return _fail(f"pair {i} has a(i) >= b(i)")
        if i > 1 and m.pairs[i - 2][0] >= a:
            return _fail("first entries are not increasing")
    return _OK


def _validate_stirling(p: StirlingPermutation, standard: bool = False):
    pos: dict[int, list[int]] = {}
    for i, e in enumerate(p.entries):
        pos.setdefault(e, []).append(i)
    for v, where in pos.items():
        if v < 1:
            return _fail(f"entry {v} is not a positive integer")
        if len(where) != 2:
            return _fail(f"{v} occurs {len(where)} times, not twice")
    if standard and sorted(pos) != list(range(1, len(pos) + 1)):
        return _fail("support is not [n]")
    for v, (i, j) in sorted(pos.items()):
        if any(e <= v for e in p.entries[i + 1 : j]):
            return _fail(f"an entry between the two occurrences of {v} does not exceed it")
    return _OK


def _validate_tree(t: IncreasingTree):
    n = t.size
    seen = [0] * (n + 1)
    for v, cs in enumerate(t.kids):
        for c in cs:
            if not 0 < c <= n:
                return _fail(f"label {c} outside [1, {n}]")
            if c <= v:
                return _fail(f"child {c} does not exceed its parent {v}")
            seen[c] += 1
    for c in range(1, n + 1):
        if seen[c] != 1:
            return _fail(f"vertex {c} has {seen[c]} parents")
    return _OK


def _validate_02(t: LeafLabeled02Tree):
    def shape_ok(x):
        if isinstance(x, int):
            return True
        return isinstance(x, tuple) and len(x) == 2 and shape_ok(x[0]) and shape_ok(x[1])

    if not shape_ok(t.root):
        return _fail("a vertex has a number of children other than 0 or 2")
    leaves = t.leaves()
    if sorted(leaves) != list(range(1, len(leaves) + 1)):
        return _fail(f"leaf labels are not [1, {len(leaves)}]")
    if canonical02(t.root) != t.root:
        return _fail("sibling subtrees are not ordered by smallest leaf")
    return _OK


def _validate_dyck_steps(steps: str):
    if set(steps) - {"U", "D"}:
        return _fail("steps must be U or D")
    h = path_heights(steps)
    if min(h) < 0:
        return _fail("path goes below its starting level")
    if h[-1] != 0:
        return _fail("path does not return to its starting level")
    return _OK


def _validate_dyck(p: DyckPath):
    return _validate_dyck_steps(p.steps)


def _validate_ud(p: UDPath):
    if set(p.steps) - {"U", "D"} or len(p.steps) % 2:
        return _fail("steps must be U or D, even length")
    return _OK


def _validate_hl_dyck(p: HLDyckPath):
    r = _validate_dyck_steps(p.steps)
    if not r:
        return r
    tops = upstep_top_heights(p.steps)
    if len(tops) != len(p.labels):
        return _fail("need exactly one label per upstep")
    for i, (lab, h) in enumerate(zip(p.labels, tops), 1):
        if not 1 <= lab <= h:
            return _fail(f"label {lab} on upstep {i} exceeds its top height {h}")
    return _OK


def _validate_hl_tree(t: HLOrderedTree):
    def rec(node, depth):
        lab, cs = node
        if depth > 0 and not 1 <= lab <= depth:
            return _fail(f"label {lab} exceeds vertex height {depth}")
        for c in cs:
            r = rec(c, depth + 1)
            if not r:
                return r
        return _OK

    return rec(t.root, 0)


def _validate_overhang(p: OverhangPath):
    if set(p.steps) - set(OVERHANG_STEPS):
        return _fail("steps must be U, D or L")
    pts = p.vertices()
    if any(x < 0 or y < 0 for x, y in pts):
        return _fail("path leaves the first quadrant")
    if len(set(pts)) != len(pts):
        return _fail("path revisits a vertex")
    if pts[-1] != (2 * p.size, 0):
        return _fail(f"path does not end at ({2 * p.size}, 0)")
    return _OK


def _validate_udf(p: UDFPath):
    if set(p.steps) - set("UDRB"):
        return _fail("steps must be U, D, R or B")
    return _OK


def _validate_coding(w: CodingWord):
    nn = 0
    for i, (v, s) in enumerate(w.letters, 1):
        if s not in ("Y", "N"):
            return _fail(f"letter {i} has subscript {s!r}")
        if i == 1 and (v, s) != (1, "Y"):
            return _fail("first letter must be 1Y")
        hi = 1 + nn if s == "Y" else 2 * i - 2 - nn
        if not 1 <= v <= hi:
            return _fail(f"letter {i} value {v} outside [1, {hi}]")
        nn += s == "N"
    return _OK


_VALIDATORS: dict[type, Callable] = {
    TrapezoidalWord: _validate_trapezoidal,
    SymmetricTrapezoidalWord: _validate_symmetric,
    PerfectMatching: _validate_matching,
    StirlingPermutation: _validate_stirling,
    IncreasingTree: _validate_tree,
    LeafLabeled02Tree: _validate_02,
    DyckPath: _validate_dyck,
    UDPath: _validate_ud,
    HLDyckPath: _validate_hl_dyck,
    HLOrderedTree: _validate_hl_tree,
    OverhangPath: _validate_overhang,
    UDFPath: _validate_udf,
    CodingWord: _validate_coding,
}


def validate(obj) -> ValidationReport:
    """Check every invariant of ``obj``'s family; report the first violation."""
    try:
        fn = _VALIDATORS[type(obj)]
    except KeyError:
        return _fail(f"not a known object type: {type(obj).__name__}")
    return fn(obj)


# ---------------------------------------------------------------------------
# enumeration primitives


def trapezoidal_words(n: int) -> Iterator[TrapezoidalWord]:
    for w in itertools.product(*(range(1, 2 * i) for i in range(1, n + 1))):
        yield TrapezoidalWord(w)


def symmetric_trapezoidal_words(n: int) -> Iterator[SymmetricTrapezoidalWord]:
    for w in itertools.product(*(range(1 - i, i) for i in range(1, n + 1))):
        yield SymmetricTrapezoidalWord(w)


def perfect_matchings(n: int) -> Iterator[PerfectMatching]:
    """Match the smallest free point with each later free point in turn."""

    def rec(free):
        if not free:
            yield ()
            return
        a = free[0]
        for j in range(1, len(free)):
            rest = free[1:j] + free[j + 1 :]
            for tail in rec(rest):
                yield ((a, free[j]),) + tail

    for pairs in rec(tuple(range(1, 2 * n + 1))):
        yield PerfectMatching(pairs)


def stirling_by_insertion(n: int) -> Iterator[StirlingPermutation]:
    """Insert the plateau nn into each of the 2n-1 gaps of a size n-1 permutation."""
    if n == 0:
        yield StirlingPermutation(())
        return
    for p in stirling_by_insertion(n - 1):
        e = p.entries
        for g in range(len(e) + 1):
            yield StirlingPermutation(e[:g] + (n, n) + e[g:])


def stirling_by_backtracking(n: int) -> Iterator[StirlingPermutation]:
    """Fill positions left to right; open values form an increasing stack."""
    word: list[int] = []
    used = [0] * (n + 1)

    def rec(stack):
        if len(word) == 2 * n:
            yield StirlingPermutation(tuple(word))
            return
        top = stack[-1] if stack else 0
        for v in range(1, n + 1):
            if used[v] == 1 and v == top:
                used[v] = 2
                word.append(v)
                yield from rec(stack[:-1])
            elif used[v] == 0 and v > top:
                used[v] = 1
                word.append(v)
                yield from rec(stack + [v])
            else:
                continue
            word.pop()
            used[v] -= 1

    yield from rec([])


def trees_by_insertion(n: int) -> Iterator[IncreasingTree]:
    """Insert leaf n in each of the 2n-1 child slots of a size n-1 tree."""
    if n == 0:
        yield IncreasingTree(((),))
        return
    for t in trees_by_insertion(n - 1):
        for v, cs in enumerate(t.kids):
            for slot in range(len(cs) + 1):
                kids = list(t.kids)
                kids[v] = cs[:slot] + (n,) + cs[slot:]
                kids.append(())
                yield IncreasingTree(tuple(kids))


def dyck_words(n: int) -> Iterator[str]:
    """Dyck words of semilength n in lexicographic order with U < D."""

    def rec(prefix, ups, h):
        if len(prefix) == 2 * n:
            yield prefix
            return
        if ups < n:
            yield from rec(prefix + "U", ups + 1, h + 1)
        if h > 0:
            yield from rec(prefix + "D", ups, h - 1)

    yield from rec("", 0, 0)


def dyck_to_shape(steps: str) -> tuple[tuple[int, ...], ...]:
    """Ordered tree shape of a Dyck word: vertices numbered in preorder."""
    kids: list[list[int]] = [[]]
    stack = [0]
    for s in steps:
        if s == "U":
            v = len(kids)
            kids.append([])
            kids[stack[-1]].append(v)
            stack.append(v)
        else:
            stack.pop()
    return tuple(tuple(k) for k in kids)


def trees_by_labeling(n: int) -> Iterator[IncreasingTree]:
    """Brute force: every ordered shape with every increasing labeling."""
    for steps in dyck_words(n):
        shape = dyck_to_shape(steps)
        for perm in itertools.permutations(range(1, n + 1)):
            lab = (0,) + perm
            if all(lab[c] > lab[v] for v, cs in enumerate(shape) for c in cs):
                kids: list[tuple[int, ...]] = [()] * (n + 1)
                for v, cs in enumerate(shape):
                    kids[lab[v]] = tuple(lab[c] for c in cs)
                yield IncreasingTree(tuple(kids))


def trees02_by_insertion(n: int) -> Iterator[LeafLabeled02Tree]:
    """Attach leaf n+1 as a new sibling of any of the 2n-1 existing vertices."""
    if n == 0:
        yield LeafLabeled02Tree(1)
        return
    new = n + 1

    def graft(t):
        yield (t, new)
        if not isinstance(t, int):
            for a in graft(t[0]):
                yield (a, t[1])
            for b in graft(t[1]):
                yield (t[0], b)

    for t in trees02_by_insertion(n - 1):
        for g in graft(t.root):
            yield LeafLabeled02Tree(canonical02(g))


def trees02_by_splitting(n: int) -> Iterator[LeafLabeled02Tree]:
    """Brute force: split the label set into two blocks, the first holding its minimum."""

    def rec(labels):
        if len(labels) == 1:
            yield labels[0]
            return
        first, rest = labels[0], labels[1:]
        for r in range(0, len(rest)):
            for extra in itertools.combinations(rest, r):
                left = (first,) + extra
                right = tuple(x for x in rest if x not in extra)
                for a in rec(left):
                    for b in rec(right):
                        yield (a, b)

    for t in rec(tuple(range(1, n + 2))):
        yield LeafLabeled02Tree(t)


def hl_dyck_by_labeling(n: int) -> Iterator[HLDyckPath]:
    for steps in dyck_words(n):
        tops = upstep_top_heights(steps)
        for labels in itertools.product(*(range(1, h + 1) for h in tops)):
            yield HLDyckPath(steps, labels)


def hl_dyck_insert(p: HLDyckPath, vertex: int) -> HLDyckPath:
    """Split at ``vertex``, insert an upstep labeled 1, bump later labels, append D."""
    s = p.steps
    before = s[:vertex].count("U")
    labels = p.labels[:before] + (1,) + tuple(x + 1 for x in p.labels[before:])
    return HLDyckPath(s[:vertex] + "U" + s[vertex:] + "D", labels)


def hl_dyck_remove(p: HLDyckPath) -> tuple[HLDyckPath, int]:
    """Undo ``hl_dyck_insert``: locate the last upstep labeled 1."""
    i = max(j for j, lab in enumerate(p.labels) if lab == 1)
    ups = [k for k, c in enumerate(p.steps) if c == "U"]
    vertex = ups[i]
    s = p.steps[:vertex] + p.steps[vertex + 1 : -1]
    labels = p.labels[:i] + tuple(x - 1 for x in p.labels[i + 1 :])
    return HLDyckPath(s, labels), vertex


def hl_dyck_by_insertion(n: int) -> Iterator[HLDyckPath]:
    if n == 0:
        yield HLDyckPath("", ())
        return
    for p in hl_dyck_by_insertion(n - 1):
        for v in range(2 * n - 1):
            yield hl_dyck_insert(p, v)


def ordered_shapes(n: int) -> Iterator[OrderedNode]:
    """Unlabeled ordered trees of n edges (labels 0 everywhere)."""

    def forests(m):
        if m == 0:
            yield ()
            return
        for k in range(m):
            for first in forests(k):
                for rest in forests(m - 1 - k):
                    yield ((0, first),) + rest

    for f in forests(n):
        yield (0, f)


def hl_ordered_trees(n: int) -> Iterator[HLOrderedTree]:
    def labelings(node, depth):
        _, cs = node
        lab_choices = [0] if depth == 0 else range(1, depth + 1)
        child_opts = [list(labelings(c, depth + 1)) for c in cs]
        for lab in lab_choices:
            for combo in itertools.product(*child_opts):
                yield (lab, tuple(combo))

    for shape in ordered_shapes(n):
        for t in labelings(shape, 0):
            yield HLOrderedTree(t)


def overhang_paths(n: int) -> Iterator[OverhangPath]:
    """Depth-first search for self-avoiding paths ending at (2n, 0)."""
    target = (2 * n, 0)
    visited = {(0, 0)}
    steps: list[str] = []

    def rec(x, y, ups):
        if (x, y) == target:
            yield OverhangPath("".join(steps))
            return
        for s, (dx, dy) in OVERHANG_STEPS.items():
            if s == "U" and ups == n:
                continue
            nx, ny = x + dx, y + dy
            if nx < 0 or ny < 0 or (nx, ny) in visited:
                continue
            # the endpoint is reachable only with enough upsteps left
            if nx - ny > 2 * n:
                continue
            visited.add((nx, ny))
            steps.append(s)
            yield from rec(nx, ny, ups + (s == "U"))
            steps.pop()
            visited.discard((nx, ny))

    if n == 0:
        yield OverhangPath("")
        return
    yield from rec(0, 0, 0)


def udf_paths(n: int, r: int | None = None) -> Iterator[UDFPath]:
    for w in itertools.product("UDRB", repeat=n):
        p = UDFPath("".join(w))
        if r is None or p.end_height == r:
            yield p


def coding_words(n: int) -> Iterator[CodingWord]:
    def rec(prefix, nn):
        i = len(prefix) + 1
        if i > n:
            yield CodingWord(prefix)
            return
        opts = [(v, "Y") for v in range(1, 2 + nn)]
        if i > 1:
            opts += [(v, "N") for v in range(1, 2 * i - 1 - nn)]
        for letter in opts:
            yield from rec(prefix + (letter,), nn + (letter[1] == "N"))

    if n == 0:
        yield CodingWord(())
        return
    yield from rec(((1, "Y"),), 0)


# ---------------------------------------------------------------------------
# sort keys


_STEP_RANK = {"U": 0, "D": 1, "L": 2, "R": 2, "B": 3}


def _steps_key(steps: str) -> tuple[int, ...]:
    return tuple(_STEP_RANK[s] for s in steps)


def _ordered_key(node, depth=0) -> tuple:
    out = [(depth, node[0])]
    for c in node[1]:
        out.extend(_ordered_key(c, depth + 1))
    return tuple(out)


def _tree_key(t: IncreasingTree) -> tuple:
    depth = {0: 0}
    order = [0] + t.walkaround()
    for v in order:
        for c in t.kids[v]:
            depth[c] = depth[v] + 1
    return tuple((depth[v], v) for v in order)


def _key02(t: LeafLabeled02Tree) -> tuple:
    out = []

    def rec(x, d):
        if isinstance(x, int):
            out.append((d, x))
        else:
            out.append((d, 0))
            rec(x[0], d + 1)
            rec(x[1], d + 1)

    rec(t.root, 0)
    return tuple(out)


def sort_key(obj) -> tuple:
    """Canonical ordering key for any object."""
    if isinstance(obj, (TrapezoidalWord, SymmetricTrapezoidalWord, StirlingPermutation)):
        return obj.entries
    if isinstance(obj, PerfectMatching):
        return obj.word()
    if isinstance(obj, IncreasingTree):
        return _tree_key(obj)
    if isinstance(obj, LeafLabeled02Tree):
        return _key02(obj)
    if isinstance(obj, HLDyckPath):
        return (_steps_key(obj.steps), obj.labels)
    if isinstance(obj, HLOrderedTree):
        return _ordered_key(obj.root)
    if isinstance(obj, (DyckPath, UDPath, OverhangPath, UDFPath)):
        return _steps_key(obj.steps)
    if isinstance(obj, CodingWord):
        return tuple((v, s == "N") for v, s in obj.letters)
    raise TypeError(f"no sort key for {type(obj).__name__}")


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class FamilyInfo:
    id: str
    generate: Callable[[int], Iterator]
    core: bool
    min_size: int = 0
    description: str = ""


FAMILIES: dict[str, FamilyInfo] = {
    f.id: f
    for f in [
        FamilyInfo("trapezoidal", trapezoidal_words, True, description="words with i-th entry in [1, 2i-1]"),
        FamilyInfo(
            "symmetric-trapezoidal",
            symmetric_trapezoidal_words,
            True,
            description="words with i-th entry in [-(i-1), i-1]",
        ),
        FamilyInfo("perfect-matching", perfect_matchings, True, description="perfect matchings of [2n]"),
        FamilyInfo(
            "stirling-permutation",
            stirling_by_insertion,
            True,
            description="each of 1..n twice, larger entries between the two copies of i",
        ),
        FamilyInfo(
            "increasing-ordered-tree",
            trees_by_insertion,
            True,
            description="ordered trees on 0..n with labels increasing away from the root",
        ),
        FamilyInfo(
            "leaf-labeled-02-tree",
            trees02_by_insertion,
            True,
            description="unordered trees with 0 or 2 children per vertex and leaves 1..n+1",
        ),
        FamilyInfo(
            "hl-dyck-path",
            hl_dyck_by_insertion,
            True,
            description="Dyck paths, each upstep labeled at most the height of its top",
        ),
        FamilyInfo(
            "hl-ordered-tree",
            hl_ordered_trees,
            True,
            description="ordered trees, each non-root vertex labeled at most its height",
        ),
        FamilyInfo(
            "overhang-path",
            overhang_paths,
            True,
            description="self-avoiding first-quadrant paths of U, D, L=(-1,1) to (2n,0)",
        ),
        FamilyInfo("coding-word", coding_words, True, description="words of letters vY / vN with bounded values"),
        FamilyInfo("dyck-path", lambda n: (DyckPath(s) for s in dyck_words(n)), False),
        FamilyInfo(
            "ud-path",
            lambda n: (UDPath("".join(w)) for w in itertools.product("UD", repeat=2 * n)),
            False,
            description="all U/D words of length 2n",
        ),
        FamilyInfo("udf-bicolored", udf_paths, False, description="UDF paths with red/blue flat steps"),
    ]
}

ALIASES = {
    "stirling": "stirling-permutation",
    "matching": "perfect-matching",
    "tree": "increasing-ordered-tree",
    "increasing-tree": "increasing-ordered-tree",
    "02-tree": "leaf-labeled-02-tree",
    "hl-dyck": "hl-dyck-path",
    "hl-tree": "hl-ordered-tree",
    "overhang": "overhang-path",
    "udf": "udf-bicolored",
}


def family_info(family: str) -> FamilyInfo:
    key = ALIASES.get(family, family)
    if key not in FAMILIES:
        raise KeyError(f"unknown family id {family!r}")
    return FAMILIES[key]


def enumerate_family(family: str, n: int, *, r: int | None = None, bound: int | None = None) -> Iterator:
    """Yield every object of the family at size n, in canonical order.

    ``r`` selects the end height for ``udf-bicolored`` (all heights when None).
    """
    info = family_info(family)
    if n < 0:
        raise ValueError("size must be nonnegative")
    check_bound(n, bound)
    if info.id == "udf-bicolored":
        objs = list(udf_paths(n, r))
    else:
        objs = list(info.generate(n))
    objs.sort(key=sort_key)
    return iter(objs)


def count_by_enumeration(family: str, n: int, *, r: int | None = None, bound: int | None = None) -> int:
    return sum(1 for _ in enumerate_family(family, n, r=r, bound=bound))


def expected_count(family: str, n: int, r: int | None = None) -> int:
    """Closed-form cardinality: (2n-1)!! for core families."""
    info = family_info(family)
    if info.id == "udf-bicolored":
        return 4**n if r is None else binomial(2 * n, n - r)
    if info.id == "dyck-path":
        return binomial(2 * n, n) // (n + 1)
    if info.id == "ud-path":
        return 4**n
    return double_factorial(2 * n - 1)


# ---------------------------------------------------------------------------
# JSON and text parsing

SCHEMAS = {
    "trapezoidal": {"entries": "list of int, entry i in [1, 2i-1]"},
    "symmetric-trapezoidal": {"entries": "list of int, entry i in [-(i-1), i-1]"},
    "perfect-matching": {"pairs": "list of [a, b] with a < b, a increasing"},
    "stirling-permutation": {"entries": "list of int"},
    "increasing-ordered-tree": {"children": "list indexed by label; children[v] = ordered child labels"},
    "leaf-labeled-02-tree": {"tree": "int leaf or [left, right], siblings sorted by smallest leaf"},
    "dyck-path": {"steps": "string over U, D"},
    "ud-path": {"steps": "string over U, D of even length"},
    "hl-dyck-path": {"steps": "string over U, D", "labels": "one int per upstep"},
    "hl-ordered-tree": {"tree": "[label, [child, ...]] with root label 0"},
    "overhang-path": {"steps": "string over U, D, L"},
    "udf-bicolored": {"steps": "string over U, D, R, B"},
    "coding-word": {"letters": "list of [value, 'Y' | 'N']"},
}


def schema(family: str) -> dict:
    info = family_info(family)
    return {"version": SCHEMA_VERSION, "family": info.id, "fields": SCHEMAS[info.id]}


def _tup(x):
    return tuple(_tup(y) for y in x) if isinstance(x, list) else x


def from_json(data, family: str | None = None):
    """Rebuild an object from its JSON form (dict or JSON text)."""
    if isinstance(data, str):
        data = json.loads(data)
    fam = family_info(family or data["family"]).id
    if fam == "trapezoidal":
        return TrapezoidalWord(tuple(data["entries"]))
    if fam == "symmetric-trapezoidal":
        return SymmetricTrapezoidalWord(tuple(data["entries"]))
    if fam == "perfect-matching":
        return PerfectMatching(tuple(tuple(p) for p in data["pairs"]))
    if fam == "stirling-permutation":
        return StirlingPermutation(tuple(data["entries"]))
    if fam == "increasing-ordered-tree":
        return IncreasingTree(tuple(tuple(c) for c in data["children"]))
    if fam == "leaf-labeled-02-tree":
        return LeafLabeled02Tree(_tup(data["tree"]))
    if fam == "dyck-path":
        return DyckPath(data["steps"])
    if fam == "ud-path":
        return UDPath(data["steps"])
    if fam == "hl-dyck-path":
        return HLDyckPath(data["steps"], tuple(data["labels"]))
    if fam == "hl-ordered-tree":

        def rec(node):
            return (node[0], tuple(rec(c) for c in node[1]))

        return HLOrderedTree(rec(data["tree"]))
    if fam == "overhang-path":
        return OverhangPath(data["steps"])
    if fam == "udf-bicolored":
        return UDFPath(data["steps"])
    if fam == "coding-word":
        return CodingWord(tuple((int(v), s) for v, s in data["letters"]))
    raise KeyError(fam)


def _parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if " " in text or "," in text:
        return tuple(int(t) for t in text.replace(",", " ").split())
    return tuple(int(c) for c in text)


def parse_text(family: str, text: str):
    """Parse the canonical text form of the word and path families."""
    fam = family_info(family).id
    text = text.strip()
    if fam == "trapezoidal":
        return TrapezoidalWord(_parse_word(text))
    if fam == "symmetric-trapezoidal":
        return SymmetricTrapezoidalWord(_parse_word(text))
    if fam == "stirling-permutation":
        return StirlingPermutation(_parse_word(text))
    if fam == "perfect-matching":
        pairs = []
        for block in text.split("/"):
            parts = block.split()
            pair = tuple(int(c) for c in (parts if len(parts) == 2 else block.strip()))
            pairs.append(pair)
        return PerfectMatching(tuple(pairs))
    if fam == "hl-dyck-path":
        steps, _, labels = text.partition(";")
        return HLDyckPath(steps, tuple(int(x) for x in labels.split(",") if x))
    if fam == "dyck-path":
        return DyckPath(text)
    if fam == "ud-path":
        return UDPath(text)
    if fam == "overhang-path":
        return OverhangPath(text)
    if fam == "udf-bicolored":
        return UDFPath(text)
    if fam == "coding-word":
        return CodingWord(tuple((int(t[:-1]), t[-1]) for t in text.split()))
    raise ValueError(f"no text form for {fam}; pass JSON instead")


def parse_object(family: str, raw: str):
    """Accept either JSON or canonical text."""
    raw = raw.strip()
    if raw.startswith("{") or raw.startswith("["):
        data = json.loads(raw)
        if isinstance(data, list):
            fam = family_info(family).id
            if fam in ("trapezoidal", "symmetric-trapezoidal", "stirling-permutation"):
                data = {"entries": data}
            elif fam == "perfect-matching":
                data = {"pairs": data}
            elif fam == "coding-word":
                data = {"letters": data}
            elif fam == "increasing-ordered-tree":
                data = {"children": data}
            else:
                data = {"tree": data}
        return from_json(data, family)
    return parse_text(family, raw)
