"""Statistics on single objects and their exact distributions.

A statistic id names a family and an integer-valued rule.  The only
parametrized id is ``low-match-count``; write ``low-match-count:r`` (or
``low-match-count(r)``) to count matches with both entries at most n + r.
"""

from __future__ import annotations

import csv
import io
import json
import re
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .families import (
    CodingWord,
    HLDyckPath,
    IncreasingTree,
    LeafLabeled02Tree,
    PerfectMatching,
    StirlingPermutation,
    TrapezoidalWord,
    UDFPath,
    UDPath,
    enumerate_family,
    family_info,
    path_heights,
)


# ---------------------------------------------------------------------------
# trees


def leftmost_subtree_size(t: IncreasingTree) -> int:
    """Edges in the subtree hanging from the root's leftmost child (0 if none)."""
    if not t.kids[0]:
        return 0
    stack, count = [t.kids[0][0]], 0
    while stack:
        v = stack.pop()
        count += len(t.kids[v])
        stack.extend(t.kids[v])
    return count


def rightmost_path_length(t: IncreasingTree) -> int:
    v, k = 0, 0
    while t.kids[v]:
        v = t.kids[v][-1]
        k += 1
    return k


def rightmost_path(t: IncreasingTree) -> list[int]:
    """Vertices on the rightmost path, excluding the root."""
    v, out = 0, []
    while t.kids[v]:
        v = t.kids[v][-1]
        out.append(v)
    return out


def young_leaves(t: IncreasingTree) -> list[int]:
    """Leaves with no left sibling."""
    return [cs[0] for cs in t.kids if cs and not t.kids[cs[0]]]


def max_young_leaf(t: IncreasingTree) -> int:
    return max(young_leaves(t), default=0)


def young_leaf_count(t: IncreasingTree) -> int:
    return len(young_leaves(t))


def parent_of_n(t: IncreasingTree) -> int:
    return t.parent()[t.size]


def minimal_path(t: IncreasingTree, start: int = 0) -> list[int]:
    """Follow smallest children from ``start`` down to a leaf (start excluded)."""
    v, out = start, []
    while t.kids[v]:
        v = min(t.kids[v])
        out.append(v)
    return out


def minimal_path_leaf(t: IncreasingTree) -> int:
    path = minimal_path(t)
    return path[-1] if path else 0


def minimal_path_length(t: IncreasingTree) -> int:
    return len(minimal_path(t))


def right_then_minimal_path_length(t: IncreasingTree) -> int:
    if not t.kids[0]:
        return 0
    return 1 + len(minimal_path(t, t.kids[0][-1]))


def smallest_child_of_1(t: IncreasingTree) -> int:
    """Smallest child of vertex 1; 1 when vertex 1 is a leaf."""
    return min(t.kids[1], default=1)


def max_child_of_1(t: IncreasingTree) -> int:
    """Largest child of vertex 1; n + 1 when vertex 1 is a leaf."""
    return max(t.kids[1], default=t.size + 1)


def max_descendant_of_1(t: IncreasingTree) -> int:
    """Largest proper descendant of 1; n + 1 when vertex 1 is a leaf."""
    if not t.kids[1]:
        return t.size + 1
    best, stack = 0, list(t.kids[1])
    while stack:
        v = stack.pop()
        best = max(best, v)
        stack.extend(t.kids[v])
    return best


def root_outdegree(t: IncreasingTree) -> int:
    return len(t.kids[0])


def root_children_lr_minima(t: IncreasingTree) -> int:
    """Left-to-right minima in the list of the root's children."""
    return len(lr_minima(t.kids[0]))


def root_position_of_1(t: IncreasingTree) -> int:
    """1-based position of vertex 1 among the root's children (0 if n = 0)."""
    return t.kids[0].index(1) + 1 if t.kids[0] else 0


def leaf_count(t: IncreasingTree) -> int:
    return sum(1 for cs in t.kids if not cs)


def tree_descent_count(t: IncreasingTree) -> int:
    """Adjacent siblings with the left one larger."""
    return sum(1 for cs in t.kids for a, b in zip(cs, cs[1:]) if a > b)


# ---------------------------------------------------------------------------
# Stirling permutations


def first_entry(p: StirlingPermutation) -> int:
    return p.entries[0]


def first_one_position(p: StirlingPermutation) -> int:
    return p.entries.index(1) + 1


def max_before_first_one(p: StirlingPermutation) -> int:
    """Largest entry before the first 1; n + 1 when the permutation starts with 1."""
    i = p.entries.index(1)
    return max(p.entries[:i]) if i else p.size + 1


def smallest_after_last_n(p: StirlingPermutation) -> int:
    """Smallest entry after the last n; 0 when n is the last entry."""
    n = p.size
    last = len(p.entries) - 1 - p.entries[::-1].index(n)
    tail = p.entries[last + 1 :]
    return min(tail) if tail else 0


def descent_count(p: StirlingPermutation) -> int:
    """Adjacent a > b, plus one conventional descent at the end."""
    e = p.entries
    return sum(1 for a, b in zip(e, e[1:]) if a > b) + (1 if e else 0)


def ascent_count(p: StirlingPermutation) -> int:
    e = p.entries
    return sum(1 for a, b in zip(e, e[1:]) if a < b)


def plateau_count(p: StirlingPermutation) -> int:
    e = p.entries
    return sum(1 for a, b in zip(e, e[1:]) if a == b)


def strong_descent_count(p: StirlingPermutation) -> int:
    """Descents a > b where this b is its first occurrence."""
    e = p.entries
    seen: set[int] = set()
    count = 0
    for i, b in enumerate(e):
        if i and e[i - 1] > b and b not in seen:
            count += 1
        seen.add(b)
    return count


def lr_minima(entries) -> list[int]:
    out: list[int] = []
    for e in entries:
        if not out or e < out[-1]:
            out.append(e)
    return out


def lr_minima_count(p: StirlingPermutation) -> int:
    return len(lr_minima(p.entries))


# ---------------------------------------------------------------------------
# paths


def first_ascent_length(p: HLDyckPath) -> int:
    s = p.steps
    return len(s) - len(s.lstrip("U"))


def first_descent_length(p: HLDyckPath) -> int:
    s = p.steps.lstrip("U")
    return len(s) - len(s.lstrip("D"))


def peak_count(p: HLDyckPath) -> int:
    return p.steps.count("UD")


def upstep_free_vertices(steps: str) -> list[int]:
    """Indices of vertices not incident with an upstep."""
    out = []
    for v in range(len(steps) + 1):
        left = v > 0 and steps[v - 1] == "U"
        right = v < len(steps) and steps[v] == "U"
        if not (left or right):
            out.append(v)
    return out


def upstep_free_vertex_count(p: HLDyckPath) -> int:
    return len(upstep_free_vertices(p.steps))


def first_ascent_ones_count(p: HLDyckPath) -> int:
    return sum(1 for lab in p.labels[: first_ascent_length(p)] if lab == 1)


def first_peak_label(p: HLDyckPath) -> int:
    k = first_ascent_length(p)
    return p.labels[k - 1] if k else 0


def last_one_upstep_position(p: HLDyckPath) -> int:
    """Position, among the upsteps, of the last upstep labeled 1."""
    return max((i for i, lab in enumerate(p.labels, 1) if lab == 1), default=0)


def ground_returns(p: UDPath) -> int:
    return sum(1 for h in path_heights(p.steps)[1:] if h == 0)


# ---------------------------------------------------------------------------
# other families


def distinct_entry_count(w: TrapezoidalWord) -> int:
    return len(set(w.entries))


def coding_y_count(w: CodingWord) -> int:
    return sum(1 for _, sub in w.letters if sub == "Y")


def coding_n_count_plus_one(w: CodingWord) -> int:
    """1 + number of N subscripts (the empty word gives 0)."""
    return sum(1 for _, sub in w.letters if sub == "N") + 1 if w.letters else 0


def low_match_count(m: PerfectMatching, r: int = 0) -> int:
    """Matches with both entries at most n + r."""
    lim = m.size + r
    return sum(1 for a, b in m.pairs if b <= lim)


def upstep_count(p: UDFPath) -> int:
    return p.steps.count("U")


def leaf_one_depth(t: LeafLabeled02Tree) -> int:
    """Edges on the path from leaf 1 up to the root."""

    def rec(x, d):
        if isinstance(x, int):
            return d if x == 1 else None
        a = rec(x[0], d + 1)
        return a if a is not None else rec(x[1], d + 1)

    return rec(t.root, 0)


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class StatisticDescriptor:
    id: str
    family: str
    rule: Callable
    description: str

    def __call__(self, obj) -> int:
        return self.rule(obj)


def _d(id, family, rule, description):
    return StatisticDescriptor(id, family, rule, description)


_T = "increasing-ordered-tree"
_S = "stirling-permutation"
_H = "hl-dyck-path"

REGISTRY: dict[str, StatisticDescriptor] = {
    d.id: d
    for d in [
        _d("leftmost-subtree-size", _T, leftmost_subtree_size, "edges in the leftmost subtree of the root"),
        _d("rightmost-path-length", _T, rightmost_path_length, "length of the path of rightmost children"),
        _d("max-young-leaf", _T, max_young_leaf, "largest leaf that has no left sibling"),
        _d("young-leaf-count", _T, young_leaf_count, "number of leaves with no left sibling"),
        _d("parent-of-n", _T, parent_of_n, "parent of the largest vertex"),
        _d("minimal-path-leaf", _T, minimal_path_leaf, "leaf ending the path of smallest children"),
        _d("minimal-path-length", _T, minimal_path_length, "edges on the path of smallest children"),
        _d(
            "right-then-minimal-path-length",
            _T,
            right_then_minimal_path_length,
            "edges on the path: rightmost child of the root, then smallest children",
        ),
        _d("smallest-child-of-1", _T, smallest_child_of_1, "smallest child of 1; 1 if vertex 1 is a leaf"),
        _d("max-child-of-1", _T, max_child_of_1, "largest child of 1; n+1 if vertex 1 is a leaf"),
        _d(
            "max-descendant-of-1",
            _T,
            max_descendant_of_1,
            "largest proper descendant of 1; n+1 if vertex 1 is a leaf",
        ),
        _d("root-outdegree", _T, root_outdegree, "number of children of the root"),
        _d(
            "root-children-lr-minima",
            _T,
            root_children_lr_minima,
            "left-to-right minima among the root's children",
        ),
        _d("root-position-of-1", _T, root_position_of_1, "position of 1 among the root's children"),
        _d("leaf-count", _T, leaf_count, "number of leaves"),
        _d("tree-descent-count", _T, tree_descent_count, "adjacent siblings with the left one larger"),
        _d("first-entry", _S, first_entry, "first entry"),
        _d("first-one-position", _S, first_one_position, "1-based position of the first 1 (always odd)"),
        _d(
            "max-before-first-one",
            _S,
            max_before_first_one,
            "largest entry before the first 1; n+1 if the permutation starts with 1",
        ),
        _d(
            "smallest-after-last-n",
            _S,
            smallest_after_last_n,
            "smallest entry after the last n; 0 if the last entry is n",
        ),
        _d(
            "descent-count",
            _S,
            descent_count,
            "adjacent pairs a > b plus a conventional descent at the end (none at the start)",
        ),
        _d("ascent-count", _S, ascent_count, "adjacent pairs a < b"),
        _d("plateau-count", _S, plateau_count, "adjacent equal pairs"),
        _d("strong-descent-count", _S, strong_descent_count, "descents a > b at the first occurrence of b"),
        _d("lr-minima-count", _S, lr_minima_count, "entries smaller than everything before them"),
        _d("first-ascent-length", _H, first_ascent_length, "upsteps before the first downstep"),
        _d("first-descent-length", _H, first_descent_length, "length of the first maximal run of downsteps"),
        _d("peak-count", _H, peak_count, "occurrences of UD"),
        _d("upstep-free-vertex-count", _H, upstep_free_vertex_count, "vertices touching no upstep"),
        _d("first-ascent-ones-count", _H, first_ascent_ones_count, "labels equal to 1 on the first ascent"),
        _d("first-peak-label", _H, first_peak_label, "label on the last upstep of the first ascent"),
        _d(
            "last-one-upstep-position",
            _H,
            last_one_upstep_position,
            "index among the upsteps of the last upstep labeled 1",
        ),
        _d("distinct-entry-count", "trapezoidal", distinct_entry_count, "number of distinct entries"),
        _d("upstep-count", "udf-bicolored", upstep_count, "number of upsteps"),
        _d("leaf-one-depth", "leaf-labeled-02-tree", leaf_one_depth, "edges from leaf 1 to the root"),
        _d("ground-returns", "ud-path", ground_returns, "visits to height 0 after the start"),
        _d("coding-y-count", "coding-word", coding_y_count, "letters with subscript Y"),
        _d("coding-n-count-plus-one", "coding-word", coding_n_count_plus_one, "1 + letters with subscript N"),
    ]
}

_LOW = re.compile(r"^low-match-count(?:[:(](\d+)\)?)?$")


def get(stat_id: str) -> StatisticDescriptor:
    """Look up a statistic, instantiating ``low-match-count:r`` on demand."""
    if stat_id in REGISTRY:
        return REGISTRY[stat_id]
    m = _LOW.match(stat_id)
    if m:
        r = int(m.group(1) or 0)
        return StatisticDescriptor(
            f"low-match-count:{r}",
            "perfect-matching",
            lambda obj, r=r: low_match_count(obj, r),
            f"matches with both entries at most n+{r}",
        )
    raise KeyError(f"unknown statistic id {stat_id!r}")


def statistic_ids() -> list[str]:
    return sorted(REGISTRY) + ["low-match-count:r"]


def evaluate(stat_id: str, obj) -> int:
    d = get(stat_id)
    if family_info(d.family).id != family_info(obj.family).id:
        raise TypeError(f"{d.id} applies to {d.family}, not {obj.family}")
    return d(obj)


# ---------------------------------------------------------------------------
# distributions


@dataclass(frozen=True)
class DistributionTable:
    """Exact counts keyed by statistic value (a tuple of values for joint tables)."""

    stats: tuple[str, ...]
    n: int
    counts: dict

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def row(self, lo: int | None = None, hi: int | None = None) -> list[int]:
        """Counts for consecutive values lo..hi (single statistic only)."""
        keys = list(self.counts)
        lo = min(keys) if lo is None else lo
        hi = max(keys) if hi is None else hi
        return [self.counts.get(k, 0) for k in range(lo, hi + 1)]

    def marginal(self, index: int) -> dict:
        out: Counter = Counter()
        for key, c in self.counts.items():
            out[key[index]] += c
        return dict(sorted(out.items()))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for key in sorted(self.counts):
            vals = list(key) if isinstance(key, tuple) else [key]
            w.writerow(vals + [self.counts[key]])
        return buf.getvalue().rstrip("\n")

    def to_json(self) -> dict:
        rows = []
        for key in sorted(self.counts):
            vals = list(key) if isinstance(key, tuple) else [key]
            rows.append({"value": vals if len(vals) > 1 else vals[0], "count": self.counts[key]})
        return {"stats": list(self.stats), "n": self.n, "total": self.total, "rows": rows}

    def to_text(self) -> str:
        return json.dumps(self.to_json())


def distribution(stat_id: str, n: int, *, bound: int | None = None) -> DistributionTable:
    d = get(stat_id)
    counts = Counter(d(obj) for obj in enumerate_family(d.family, n, bound=bound))
    return DistributionTable((d.id,), n, dict(sorted(counts.items())))


def joint_distribution(stat_ids, n: int, *, bound: int | None = None) -> DistributionTable:
    """Joint counts from a single pass over the family."""
    ds = [get(s) for s in stat_ids]
    fams = {family_info(d.family).id for d in ds}
    if len(fams) != 1:
        raise TypeError(f"statistics span several families: {sorted(fams)}")
    counts = Counter(tuple(d(obj) for d in ds) for obj in enumerate_family(ds[0].family, n, bound=bound))
    return DistributionTable(tuple(d.id for d in ds), n, dict(sorted(counts.items())))
