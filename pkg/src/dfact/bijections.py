"""Constructive bijections between the (2n-1)!! families, with inverses.

Every map comes with an explicit inverse (the Pfaffian involution is its
own inverse; the cascade step is inverted by searching its preimage).
``BIJECTIONS`` registers each pair together with the statistics it is
known to carry across, and the tests check those transports pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .families import (
    CodingWord,
    HLDyckPath,
    HLOrderedTree,
    IncreasingTree,
    OverhangPath,
    PerfectMatching,
    StirlingPermutation,
    SymmetricTrapezoidalWord,
    TrapezoidalWord,
    enumerate_family,
    hl_dyck_insert,
    hl_dyck_remove,
    walkaround,
)
from .statistics import max_before_first_one, rightmost_path, upstep_free_vertices


class BijectionError(ValueError):
    """Input outside the domain of a bijection."""


# ---------------------------------------------------------------------------
# shared tree utilities

Kids = dict[int, list[int]]


def tree_to_kids(t: IncreasingTree) -> Kids:
    return {v: list(cs) for v, cs in enumerate(t.kids)}


def standardize(kids: Kids) -> IncreasingTree:
    """Relabel a tree on any label set to 0..m, preserving the order of labels.

    The smallest label (the root) becomes 0, the next smallest 1, and so on.
    """
    rank = {v: i for i, v in enumerate(sorted(kids))}
    out: list[tuple[int, ...]] = [()] * len(rank)
    for v, cs in kids.items():
        out[rank[v]] = tuple(rank[c] for c in cs)
    return IncreasingTree(tuple(out))


def _parents(kids: Kids) -> dict[int, int]:
    return {c: v for v, cs in kids.items() for c in cs}


def _check_standard_tree(t: IncreasingTree) -> None:
    seen = sorted(c for cs in t.kids for c in cs)
    if seen != list(range(1, t.size + 1)):
        raise BijectionError("tree labels must be 0..n with 0 at the root")
    for v, cs in enumerate(t.kids):
        if any(c <= v for c in cs):
            raise BijectionError("tree is not increasing")


# ---------------------------------------------------------------------------
# increasing ordered trees <-> Stirling permutations


def janson(t: IncreasingTree) -> StirlingPermutation:
    """Move each label onto the edge above it and read the walkaround.

    Each edge is passed twice (down, then up), so each label appears twice.
    """
    _check_standard_tree(t)
    out: list[int] = []

    def rec(v):
        for c in t.kids[v]:
            out.append(c)
            rec(c)
            out.append(c)

    rec(0)
    return StirlingPermutation(tuple(out))


def janson_inverse(p: StirlingPermutation) -> IncreasingTree:
    n = p.size
    kids: list[list[int]] = [[] for _ in range(n + 1)]
    stack, seen = [0], set()
    for e in p.entries:
        if e in seen:
            if stack[-1] != e:
                raise BijectionError(f"{p.text()} is not a Stirling permutation")
            stack.pop()
        else:
            if not 1 <= e <= n:
                raise BijectionError("entries must lie in 1..n")
            kids[stack[-1]].append(e)
            seen.add(e)
            stack.append(e)
    return IncreasingTree(tuple(tuple(k) for k in kids))


# ---------------------------------------------------------------------------
# height-labeled trees <-> height-labeled Dyck paths


def accordion(t: HLOrderedTree) -> HLDyckPath:
    """Preorder: U (carrying the vertex label) on the way down, D on the way up."""
    steps: list[str] = []
    labels: list[int] = []

    def rec(node):
        for child in node[1]:
            steps.append("U")
            labels.append(child[0])
            rec(child)
            steps.append("D")

    rec(t.root)
    return HLDyckPath("".join(steps), tuple(labels))


def accordion_inverse(p: HLDyckPath) -> HLOrderedTree:
    stack: list[tuple[int, list]] = [(0, [])]
    labels = iter(p.labels)
    for s in p.steps:
        if s == "U":
            stack.append((next(labels), []))
        else:
            lab, cs = stack.pop()
            stack[-1][1].append((lab, tuple(cs)))
    if len(stack) != 1:
        raise BijectionError("unbalanced path")
    return HLOrderedTree((0, tuple(stack[0][1])))


# ---------------------------------------------------------------------------
# overhang paths <-> trapezoidal words


def overhang_to_trapezoidal(p: OverhangPath) -> TrapezoidalWord:
    """Ordinates of the upstep tops, left to right."""
    y, out = 0, []
    for s in p.steps:
        y += -1 if s == "D" else 1
        if s == "U":
            out.append(y)
    return TrapezoidalWord(tuple(out))


def trapezoidal_to_overhang(w: TrapezoidalWord) -> OverhangPath:
    """Rebuild the path; between two upsteps the run is all L or all D."""
    steps, y = [], 0
    for target in w.entries:
        start = target - 1
        if start > y:
            steps.append("L" * (start - y))
        elif start < y:
            steps.append("D" * (y - start))
        steps.append("U")
        y = target
    steps.append("D" * y)
    return OverhangPath("".join(steps))


# ---------------------------------------------------------------------------
# height-labeled Dyck paths <-> perfect matchings


def hldyck_to_matching(p: HLDyckPath) -> PerfectMatching:
    """Pair the i-th upstep position with the h(i)-th remaining downstep.

    Downstep positions (1-based) are kept in decreasing order and the
    choices are made for i = n down to 1.
    """
    ups = [i for i, s in enumerate(p.steps, 1) if s == "U"]
    downs = sorted((i for i, s in enumerate(p.steps, 1) if s == "D"), reverse=True)
    b = [0] * len(ups)
    for i in range(len(ups) - 1, -1, -1):
        h = p.labels[i]
        if not 1 <= h <= len(downs):
            raise BijectionError("label out of range")
        b[i] = downs.pop(h - 1)
    return PerfectMatching(tuple(zip(ups, b)))


def matching_to_hldyck(m: PerfectMatching) -> HLDyckPath:
    pairs = sorted(m.pairs)
    size = 2 * len(pairs)
    ups = {a for a, _ in pairs}
    steps = "".join("U" if i in ups else "D" for i in range(1, size + 1))
    downs = sorted((i for i in range(1, size + 1) if i not in ups), reverse=True)
    labels = [0] * len(pairs)
    for i in range(len(pairs) - 1, -1, -1):
        j = downs.index(pairs[i][1])
        labels[i] = j + 1
        downs.pop(j)
    return HLDyckPath(steps, tuple(labels))


# ---------------------------------------------------------------------------
# cut-and-paste on the rightmost path


@dataclass(frozen=True)
class SplitPair:
    """A k-subset X of tagged vertices (V) and edges (E) plus a tree T0."""

    X: frozenset
    T0: IncreasingTree
    family = "split-pair"

    @property
    def size(self) -> int:
        return self.T0.size + len(self.X)

    def tags(self) -> list[str]:
        return [f"{v}{t}" for v, t in sorted(self.X, key=lambda x: (x[1] == "E", x[0]))]

    def text(self) -> str:
        return "{" + ",".join(self.tags()) + "};" + self.T0.text()

    def to_json(self):
        return {"family": self.family, "X": self.tags(), "T0": self.T0.to_json()}


def rightpath_split(t: IncreasingTree, k: int) -> SplitPair:
    """Cut the first k rightmost-path edges out of t.

    Barren base vertices become V-tags; fertile ones are pasted into their
    predecessor and remembered by the position of their leftmost edge.
    """
    _check_standard_tree(t)
    path = rightmost_path(t)
    if k < 0 or len(path) < k:
        raise BijectionError(f"rightmost path has length {len(path)} < {k}")
    base = path[:k]
    kids = tree_to_kids(t)
    fertile = [v for v in base if len(kids[v]) > (0 if v == base[-1] else 1)]
    barren = [v for v in base if v not in fertile]
    highlighted = {kids[v][0] for v in fertile}

    parent = _parents(kids)
    for v in barren:
        p = parent[v]
        i = kids[p].index(v)
        if kids[v]:
            (c,) = kids[v]
            kids[p][i] = c
            parent[c] = p
        else:
            del kids[p][i]
        del kids[v]

    for b in fertile:
        labels = sorted(kids)
        pred = labels[labels.index(b) - 1]
        parent = _parents(kids)
        kids[parent[b]].remove(b)
        kids[pred].extend(kids.pop(b))

    t0 = standardize(kids)
    rank = {v: i for i, v in enumerate(sorted(kids))}
    hl_std = {rank[c] for c in highlighted}
    positions = [i for i, (_, c) in enumerate(t0.edges(), 1) if c in hl_std]
    X = frozenset([(v, "V") for v in barren] + [(i, "E") for i in positions])
    return SplitPair(X, t0)


def rightpath_merge(pair: SplitPair) -> IncreasingTree:
    """Inverse of :func:`rightpath_split`."""
    xv = sorted(v for v, tag in pair.X if tag == "V")
    xe = sorted(v for v, tag in pair.X if tag == "E")
    t0 = pair.T0
    n = t0.size + len(pair.X)
    edges = t0.edges()
    if any(not 1 <= i <= len(edges) for i in xe) or any(not 1 <= v <= n for v in xv):
        raise BijectionError("tag out of range")
    hl = [edges[i - 1][1] for i in xe]

    # vertex ids: T0 labels, then fresh ids for re-created base vertices
    kids = tree_to_kids(t0)
    order = list(range(t0.size + 1))
    fresh = t0.size + 1
    made: list[int] = [0] * len(hl)
    for j in range(len(hl) - 1, -1, -1):
        c = hl[j]
        parent = _parents(kids)
        p = parent[c]
        b = fresh
        fresh += 1
        order.insert(order.index(p) + 1, b)
        i = kids[p].index(c)
        kids[b] = kids[p][i:]
        kids[p] = kids[p][:i]
        q = order[0] if j == 0 else parent[hl[j - 1]]
        kids[q].append(b)
        made[j] = b

    free = [v for v in range(n + 1) if v not in set(xv)]
    if len(free) != len(order):
        raise BijectionError("inconsistent split pair")
    label = dict(zip(order, free))
    full: Kids = {label[v]: [label[c] for c in cs] for v, cs in kids.items()}
    fertile = [label[b] for b in made]
    # strip the contracted path (root -> b1 -> b2 ...), then rebuild it fully
    chain = [0] + fertile
    for u, w in zip(chain, chain[1:]):
        if not full[u] or full[u][-1] != w:
            raise BijectionError("inconsistent split pair")
        full[u].pop()
    for v in xv:
        full[v] = []
    base = sorted(fertile + xv)
    for u, w in zip([0] + base, base):
        full[u].append(w)
    out = IncreasingTree(tuple(tuple(full[v]) for v in range(n + 1)))
    _check_standard_tree(out)
    return out


def rightpath_to_rootchildren(t: IncreasingTree, k: int) -> IncreasingTree:
    """Delete the first k rightmost-path edges, shift labels up by one, and hang
    the old root and the k base vertices from a new root, in increasing order."""
    _check_standard_tree(t)
    path = rightmost_path(t)
    if k < 0 or len(path) < k:
        raise BijectionError(f"rightmost path has length {len(path)} < {k}")
    base = path[:k]
    kids = tree_to_kids(t)
    for u in ([0] + base)[:k]:
        kids[u].pop()
    out: list[tuple[int, ...]] = [tuple([1] + [v + 1 for v in base])]
    out += [tuple(c + 1 for c in kids[v]) for v in range(t.size + 1)]
    return IncreasingTree(tuple(out))


def rootchildren_to_rightpath(t: IncreasingTree) -> tuple[IncreasingTree, int]:
    """Inverse of :func:`rightpath_to_rootchildren`; also returns k."""
    roots = list(t.kids[0])
    if not roots or roots[0] != 1 or roots != sorted(roots):
        raise BijectionError("root children must start at 1 and increase")
    base = [r - 1 for r in roots[1:]]
    kids = {v - 1: [c - 1 for c in t.kids[v]] for v in range(1, t.size + 1)}
    for u, w in zip([0] + base, base):
        kids[u].append(w)
    return IncreasingTree(tuple(tuple(kids[v]) for v in range(t.size))), len(base)


# ---------------------------------------------------------------------------
# first ascent <-> root outdegree


def _ascent_data(p: HLDyckPath) -> tuple[list[int], list[int]]:
    """a(i) = upsteps right before the i-th D; b(i) = label of its matching U."""
    a, b = [], []
    run, stack, labels = 0, [], iter(p.labels)
    for s in p.steps:
        if s == "U":
            run += 1
            stack.append(next(labels))
        else:
            a.append(run)
            b.append(stack.pop())
            run = 0
    return a, b


def firstascent_tree(p: HLDyckPath) -> IncreasingTree:
    """Grow a tree: step i gives vertex i-1 a(i) unlabeled leaves, then names
    the b(i)-th unlabeled leaf in walkaround order i."""
    a, b = _ascent_data(p)
    n = len(a)
    kids: Kids = {0: []}
    fresh = -1  # unlabeled leaves carry negative ids
    for i in range(1, n + 1):
        for _ in range(a[i - 1]):
            kids[i - 1].append(fresh)
            kids[fresh] = []
            fresh -= 1
        unlabeled = [v for v in walkaround(kids) if v < 0]
        if not 1 <= b[i - 1] <= len(unlabeled):
            raise BijectionError("label exceeds the available leaves")
        x = unlabeled[b[i - 1] - 1]
        parent = _parents(kids)[x]
        kids[parent][kids[parent].index(x)] = i
        kids[i] = kids.pop(x)
    return IncreasingTree(tuple(tuple(kids[v]) for v in range(n + 1)))


def firstascent_tree_inverse(t: IncreasingTree) -> HLDyckPath:
    _check_standard_tree(t)
    n = t.size
    parent = t.parent()
    order = t.walkaround()
    a = [len(t.kids[i - 1]) for i in range(1, n + 1)]
    b = []
    for i in range(1, n + 1):
        unlabeled = [v for v in order if v >= i and parent[v] < i]
        b.append(unlabeled.index(i) + 1)
    steps, labels, stack = [], [None] * n, []
    ups = 0
    for i in range(n):
        for _ in range(a[i]):
            steps.append("U")
            stack.append(ups)
            ups += 1
        steps.append("D")
        labels[stack.pop()] = b[i]
    return HLDyckPath("".join(steps), tuple(labels))


# ---------------------------------------------------------------------------
# the involution phi


def phi(p: StirlingPermutation) -> StirlingPermutation:
    """phi(A m B m C) = phi(A) m phi(C) m phi(B), m the smallest entry."""

    def rec(e: tuple[int, ...]) -> tuple[int, ...]:
        if not e:
            return ()
        m = min(e)
        i = e.index(m)
        j = e.index(m, i + 1)
        return rec(e[:i]) + (m,) + rec(e[j + 1 :]) + (m,) + rec(e[i + 1 : j])

    return StirlingPermutation(rec(p.entries))


# ---------------------------------------------------------------------------
# plateau insertion -> trapezoidal words


def _plateau_gaps(e) -> list[int]:
    """Gaps (0..len) that sit inside a plateau."""
    return [g for g in range(1, len(e)) if e[g - 1] == e[g]]


def _insert_pair(e: tuple, gap: int, v: int) -> tuple:
    return e[:gap] + (v, v) + e[gap:]


def _remove_top(p: StirlingPermutation) -> tuple[tuple, int]:
    """Delete the two copies of n; return the rest and the gap they filled."""
    n = p.size
    i = p.entries.index(n)
    if p.entries[i + 1 : i + 2] != (n,):
        raise BijectionError(f"{p.text()} is not a Stirling permutation")
    return p.entries[:i] + p.entries[i + 2 :], i


def stirling_to_trapezoidal(p: StirlingPermutation) -> TrapezoidalWord:
    """Code the insertion history of the plateaus 11, 22, ..., nn."""
    history = []
    e = p.entries
    for n in range(p.size, 0, -1):
        e, gap = _remove_top(StirlingPermutation(e))
        history.append((e, gap))
    history.reverse()
    w: list[int] = []
    for e, gap in history:
        plateaus = _plateau_gaps(e)
        if gap in plateaus:
            w.append(sorted(set(w))[plateaus.index(gap)])
        else:
            others = [g for g in range(len(e) + 1) if g not in plateaus]
            j = others.index(gap)
            unused = [x for x in range(1, 2 * len(w) + 2) if x not in set(w)]
            w.append(unused[j])
    return TrapezoidalWord(tuple(w))


def trapezoidal_to_stirling(w: TrapezoidalWord) -> StirlingPermutation:
    e: tuple[int, ...] = ()
    for k, x in enumerate(w.entries, 1):
        prior = w.entries[: k - 1]
        plateaus = _plateau_gaps(e)
        if x in prior:
            gap = plateaus[sorted(set(prior)).index(x)]
        else:
            others = [g for g in range(len(e) + 1) if g not in plateaus]
            unused = [y for y in range(1, 2 * k) if y not in set(prior)]
            if x not in unused:
                raise BijectionError("not a trapezoidal word")
            gap = others[unused.index(x)]
        e = _insert_pair(e, gap, k)
    return StirlingPermutation(e)


# ---------------------------------------------------------------------------
# codings by words in C_n


def hldyck_to_coding(p: HLDyckPath) -> CodingWord:
    """Peel off the last upstep labeled 1 and record where it sat."""
    letters = []
    while p.size > 1:
        p, v = hl_dyck_remove(p)
        free = upstep_free_vertices(p.steps)
        if v in free:
            letters.append((sum(1 for u in free if u <= v), "Y"))
        else:
            letters.append((sum(1 for u in range(v + 1) if u not in free), "N"))
    if p.size == 1:
        letters.append((1, "Y"))
    return CodingWord(tuple(reversed(letters)))


def coding_to_hldyck(w: CodingWord) -> HLDyckPath:
    if not w.letters:
        return HLDyckPath("", ())
    if w.letters[0] != (1, "Y"):
        raise BijectionError("a coding word starts with 1Y")
    p = HLDyckPath("UD", (1,))
    for value, sub in w.letters[1:]:
        free = set(upstep_free_vertices(p.steps))
        pool = [u for u in range(len(p.steps) + 1) if (u in free) == (sub == "Y")]
        if not 1 <= value <= len(pool):
            raise BijectionError("letter out of range")
        p = hl_dyck_insert(p, pool[value - 1])
    return p


def _descent_gaps(e) -> list[bool]:
    """For each gap 0..len(e): is it a descent (the final gap always is)?"""
    m = len(e)
    return [g == m or (0 < g and e[g - 1] > e[g]) for g in range(m + 1)]


def stirling_to_coding(p: StirlingPermutation) -> CodingWord:
    """Peel off the two largest entries and record the gap they filled."""
    letters = []
    e = p.entries
    while len(e) > 2:
        e, gap = _remove_top(StirlingPermutation(e))
        desc = _descent_gaps(e)
        same = sum(1 for g in range(gap + 1) if desc[g] == desc[gap])
        letters.append((same, "Y" if desc[gap] else "N"))
    if e:
        letters.append((1, "Y"))
    return CodingWord(tuple(reversed(letters)))


def coding_to_stirling(w: CodingWord) -> StirlingPermutation:
    if not w.letters:
        return StirlingPermutation(())
    if w.letters[0] != (1, "Y"):
        raise BijectionError("a coding word starts with 1Y")
    e: tuple[int, ...] = (1, 1)
    for k, (value, sub) in enumerate(w.letters[1:], 2):
        desc = _descent_gaps(e)
        pool = [g for g, d in enumerate(desc) if d == (sub == "Y")]
        if not 1 <= value <= len(pool):
            raise BijectionError("letter out of range")
        e = _insert_pair(e, pool[value - 1], k)
    return StirlingPermutation(e)


def hldyck_to_stirling(p: HLDyckPath) -> StirlingPermutation:
    return coding_to_stirling(hldyck_to_coding(p))


def stirling_to_hldyck(p: StirlingPermutation) -> HLDyckPath:
    return coding_to_hldyck(stirling_to_coding(p))


def coding_to_symtrapezoidal(w: CodingWord) -> SymmetricTrapezoidalWord:
    """Y is a downstep and N a flat step; the i-th point sits b(i) above the
    step's end for N and b(i) below it for Y."""
    if not w.letters:
        return SymmetricTrapezoidalWord(())
    out, h = [0], 0
    for value, sub in w.letters[1:]:
        if sub == "Y":
            h -= 1
            out.append(h - (value - 1))
        else:
            out.append(h + (value - 1))
    return SymmetricTrapezoidalWord(tuple(out))


def symtrapezoidal_to_coding(w: SymmetricTrapezoidalWord) -> CodingWord:
    if not w.entries:
        return CodingWord(())
    letters, h = [(1, "Y")], 0
    for y in w.entries[1:]:
        if y >= h:
            letters.append((y - h + 1, "N"))
        else:
            h -= 1
            letters.append((h - y + 1, "Y"))
    return CodingWord(tuple(letters))


# ---------------------------------------------------------------------------
# splitting at left-to-right minima


@dataclass(frozen=True)
class LRSplit:
    """A subset A of [n-k] and a permutation tau of [n] with k LR minima."""

    A: tuple[int, ...]
    tau: tuple[int, ...]
    family = "lr-split"

    @property
    def size(self) -> int:
        return len(self.tau)

    def text(self) -> str:
        return "{" + ",".join(map(str, self.A)) + "};" + " ".join(map(str, self.tau))

    def to_json(self):
        return {"family": self.family, "A": list(self.A), "tau": list(self.tau)}


def lr_minima_codes(e) -> dict[int, tuple[int, bool]]:
    """For each j above the first entry: (i_j, both copies of i_j precede j).

    i_j is the last entry smaller than j before the first j.
    """
    out = {}
    for pos, j in enumerate(e):
        if j in out or j == e[0]:
            continue
        before = e[:pos]
        i = next(x for x in reversed(before) if x < j)
        out[j] = (i, before.count(i) == 2)
    return out


def _blocks(e) -> list[tuple[int, ...]]:
    cuts, low = [], None
    for i, x in enumerate(e):
        if low is None or x < low:
            cuts.append(i)
            low = x
    return [tuple(e[a:b]) for a, b in zip(cuts, cuts[1:] + [len(e)])]


def lr_minima_split(p: StirlingPermutation) -> LRSplit:
    """Split before each LR minimum and code every block separately.

    Within a block starting at its minimum m, each other j records i_j and
    whether j lies after both copies of i_j.  The codes (i_j) become a
    permutation by inserting j right after i_j; the flags give A.
    """
    tau: list[int] = []
    chosen: list[int] = []
    for block in _blocks(p.entries):
        codes = lr_minima_codes(block)
        seq = [block[0]]
        for j in sorted(codes):
            i, both = codes[j]
            seq.insert(seq.index(i) + 1, j)
            if both:
                chosen.append(j)
        tau += seq
    minima = set(_lr_min_values(tau))
    rest = [v for v in range(1, p.size + 1) if v not in minima]
    A = tuple(sorted(rest.index(j) + 1 for j in chosen))
    return LRSplit(A, tuple(tau))


def _lr_min_values(seq) -> list[int]:
    out: list[int] = []
    for x in seq:
        if not out or x < out[-1]:
            out.append(x)
    return out


def lr_minima_merge(s: LRSplit) -> StirlingPermutation:
    tau = list(s.tau)
    minima = _lr_min_values(tau)
    rest = [v for v in range(1, len(tau) + 1) if v not in set(minima)]
    if any(not 1 <= a <= len(rest) for a in s.A):
        raise BijectionError("A must be a subset of [n-k]")
    chosen = {rest[a - 1] for a in s.A}
    starts = [tau.index(m) for m in minima] + [len(tau)]
    out: tuple[int, ...] = ()
    for a, b in zip(starts, starts[1:]):
        block = tau[a:b]
        m = block[0]
        e: tuple[int, ...] = (m, m)
        for j in sorted(block[1:]):
            # i_j is the entry right before j in block restricted to <= j
            small = [x for x in block if x <= j]
            i = small[small.index(j) - 1]
            first = e.index(i)
            second = e.index(i, first + 1)
            gap = (second if j in chosen else first) + 1
            e = _insert_pair(e, gap, j)
        out += e
    return StirlingPermutation(out)


# ---------------------------------------------------------------------------
# the fertility bijection


def fertility_tree(p: HLDyckPath) -> IncreasingTree:
    """For i = n..1 the i-th upstep picks a child for vertex j = #D before it.

    The label selects among vertices in [j+1, n] that still lack a parent.
    """
    n = p.size
    parents_of_up, downs = [], 0
    for s in p.steps:
        if s == "U":
            parents_of_up.append(downs)
        else:
            downs += 1
    taken: set[int] = set()
    edges = [None] * n
    for i in range(n - 1, -1, -1):
        j = parents_of_up[i]
        cand = [v for v in range(j + 1, n + 1) if v not in taken]
        lab = p.labels[i]
        if not 1 <= lab <= len(cand):
            raise BijectionError("label exceeds the candidate count")
        c = cand[lab - 1]
        taken.add(c)
        edges[i] = (j, c)
    return IncreasingTree.from_edges(edges, n)


def fertility_tree_inverse(t: IncreasingTree) -> HLDyckPath:
    _check_standard_tree(t)
    n = t.size
    edges = t.edges()
    steps = "".join("U" * len(t.kids[v]) + "D" for v in range(n))
    labels = [0] * n
    later = set()
    for i in range(n - 1, -1, -1):
        j, c = edges[i]
        cand = [v for v in range(j + 1, n + 1) if v not in later]
        labels[i] = cand.index(c) + 1
        later.add(c)
    return HLDyckPath(steps, tuple(labels))


# ---------------------------------------------------------------------------
# the max-before-first-1 recurrence step


def max_before_first_1(e) -> int:
    return max_before_first_one(StirlingPermutation(tuple(e)))


def _is_stirling(e) -> bool:
    for v in set(e):
        i = e.index(v)
        j = e.index(v, i + 1)
        if any(x < v for x in e[i:j]):
            return False
    return True


def maxrec_step(p: StirlingPermutation, slot: int) -> StirlingPermutation:
    """Lift a size n-1 permutation with M = k-1 to size n with M = k.

    Entries >= 2 go up by one and a pair 22 is tentatively placed in gap
    ``slot`` (1-based, 2n-1 choices).  While the segment up to the first
    copy of the current value holds some larger entry exactly once, swap
    the current value with the smallest such entry.
    """
    n = p.size + 1
    k = max_before_first_1(p.entries) + 1
    if not 3 <= k <= n:
        raise BijectionError(f"need 3 <= k <= n, got k={k}, n={n}")
    if not 1 <= slot <= 2 * n - 1:
        raise BijectionError(f"slot must lie in 1..{2 * n - 1}")
    e = [x + 1 if x >= 2 else x for x in p.entries]
    e[slot - 1 : slot - 1] = [2, 2]
    cur = 2
    for _ in range(n + 1):
        seg = e[: e.index(cur) + 1]
        once = [x for x in set(seg) if x > cur and seg.count(x) == 1]
        if not once:
            break
        nxt = min(once)
        e = [nxt if x == cur else cur if x == nxt else x for x in e]
        cur = nxt
    else:
        raise BijectionError("interchange cascade did not terminate")
    out = StirlingPermutation(tuple(e))
    if not _is_stirling(out.entries):
        raise BijectionError("cascade produced a non-Stirling permutation")
    return out


def maxrec_preimage(p: StirlingPermutation) -> tuple[StirlingPermutation, int]:
    """Search all (perm, slot) pairs of the smaller size for the one that maps to p."""
    n = p.size
    k = max_before_first_1(p.entries)
    for q in enumerate_family("stirling-permutation", n - 1, bound=n):
        if max_before_first_1(q.entries) != k - 1:
            continue
        for slot in range(1, 2 * n):
            if maxrec_step(q, slot) == p:
                return q, slot
    raise BijectionError(f"{p.text()} has no preimage")


# ---------------------------------------------------------------------------
# sign-reversing involution on matchings


def pfaffian_involution(m: PerfectMatching) -> PerfectMatching | None:
    """Swap b(i), b(i+1) at the first pair that is not (2i-1, 2i).

    Returns None on the fixed point 12/34/.../(2n-1)(2n).
    """
    pairs = sorted(m.pairs)
    for i, (a, b) in enumerate(pairs):
        if b != a + 1:
            a2, b2 = pairs[i + 1]
            pairs[i], pairs[i + 1] = (a, b2), (a2, b)
            return PerfectMatching(tuple(pairs))
    return None


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class BijectionDescriptor:
    id: str
    source: str
    target: str
    forward: Callable
    inverse: Callable | None
    transports: tuple[tuple[str, str], ...] = ()
    needs_k: bool = False
    description: str = ""
    notes: tuple[str, ...] = field(default=())


BIJECTIONS: dict[str, BijectionDescriptor] = {
    d.id: d
    for d in [
        BijectionDescriptor(
            "janson",
            "increasing-ordered-tree",
            "stirling-permutation",
            janson,
            janson_inverse,
            (("leaf-count", "plateau-count"), ("tree-descent-count", "strong-descent-count")),
            description="edge labels read along the walkaround",
        ),
        BijectionDescriptor(
            "accordion",
            "hl-ordered-tree",
            "hl-dyck-path",
            accordion,
            accordion_inverse,
            description="preorder contour; vertex heights and labels kept",
        ),
        BijectionDescriptor(
            "overhang-to-trapezoidal",
            "overhang-path",
            "trapezoidal",
            overhang_to_trapezoidal,
            trapezoidal_to_overhang,
            description="ordinates of the upstep tops",
        ),
        BijectionDescriptor(
            "hldyck-to-matching",
            "hl-dyck-path",
            "perfect-matching",
            hldyck_to_matching,
            matching_to_hldyck,
            description="labels pick partners among the remaining downsteps",
        ),
        BijectionDescriptor(
            "rightpath-split",
            "increasing-ordered-tree",
            "split-pair",
            rightpath_split,
            rightpath_merge,
            needs_k=True,
            description="cut-and-paste removal of k rightmost-path edges",
        ),
        BijectionDescriptor(
            "rightpath-to-rootchildren",
            "increasing-ordered-tree",
            "increasing-ordered-tree",
            rightpath_to_rootchildren,
            rootchildren_to_rightpath,
            needs_k=True,
            description="rightmost path of length >= k to k+1 increasing root children",
        ),
        BijectionDescriptor(
            "firstascent-tree",
            "hl-dyck-path",
            "increasing-ordered-tree",
            firstascent_tree,
            firstascent_tree_inverse,
            (("first-ascent-length", "root-outdegree"),),
            description="ascent runs become fertilities, labels choose leaves",
        ),
        BijectionDescriptor(
            "phi",
            "stirling-permutation",
            "stirling-permutation",
            phi,
            phi,
            (("descent-count", "plateau-count"), ("plateau-count", "descent-count")),
            description="recursive involution at the smallest entry",
        ),
        BijectionDescriptor(
            "stirling-to-trapezoidal",
            "stirling-permutation",
            "trapezoidal",
            stirling_to_trapezoidal,
            trapezoidal_to_stirling,
            (("plateau-count", "distinct-entry-count"),),
            description="plateau-insertion history",
        ),
        BijectionDescriptor(
            "hldyck-to-coding",
            "hl-dyck-path",
            "coding-word",
            hldyck_to_coding,
            coding_to_hldyck,
            (("upstep-free-vertex-count", "coding-n-count-plus-one"),),
            description="peel the last upstep labeled 1",
        ),
        BijectionDescriptor(
            "stirling-to-coding",
            "stirling-permutation",
            "coding-word",
            stirling_to_coding,
            coding_to_stirling,
            (("descent-count", "coding-n-count-plus-one"),),
            description="peel the two largest entries",
        ),
        BijectionDescriptor(
            "hldyck-to-stirling",
            "hl-dyck-path",
            "stirling-permutation",
            hldyck_to_stirling,
            stirling_to_hldyck,
            (("upstep-free-vertex-count", "descent-count"),),
            description="through the common coding words",
        ),
        BijectionDescriptor(
            "coding-to-symtrapezoidal",
            "coding-word",
            "symmetric-trapezoidal",
            coding_to_symtrapezoidal,
            symtrapezoidal_to_coding,
            description="lattice points read off a Y/N path",
        ),
        BijectionDescriptor(
            "lr-minima-split",
            "stirling-permutation",
            "lr-split",
            lr_minima_split,
            lr_minima_merge,
            description="blocks at LR minima, coded by the entries i_j",
        ),
        BijectionDescriptor(
            "fertility-tree",
            "hl-dyck-path",
            "increasing-ordered-tree",
            fertility_tree,
            fertility_tree_inverse,
            (("first-ascent-ones-count", "root-children-lr-minima"),),
            description="candidate selection, edges read upwards",
        ),
        BijectionDescriptor(
            "maxrec-step",
            "stirling-permutation",
            "stirling-permutation",
            maxrec_step,
            maxrec_preimage,
            description="one step of the M = k recurrence (takes a slot)",
        ),
        BijectionDescriptor(
            "pfaffian-involution",
            "perfect-matching",
            "perfect-matching",
            pfaffian_involution,
            pfaffian_involution,
            description="sign-reversing involution; None marks the fixed point",
        ),
    ]
}


def get(bijection_id: str) -> BijectionDescriptor:
    try:
        return BIJECTIONS[bijection_id]
    except KeyError:
        raise KeyError(f"unknown bijection {bijection_id!r}") from None
