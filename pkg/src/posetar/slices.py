"""Standard slices of the quiver component containing the largest projective.

The decomposition witness yields one module per tree vertex, every one a
constant module on a convex subset: the marked vertex carries the largest
projective, each clamp center carries that projective modulo its socle, and
the recursion supplies the rest.  verify_slice checks the three facts the
construction rests on: the support condition at the maximum, Ext-vanishing
between slice members, and the Hom matrix matching path counts of the
oriented tree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ictree import ICNode, TreeShape, build_tree
from .linalg import Field, QQ
from .poset import Poset
from .rep import Representation, constant_on, hom_dim


@dataclass
class SliceData:
    poset: Poset
    tree: TreeShape
    modules: dict[int, Representation]
    marked: int

    def ordered_vertices(self) -> list[int]:
        return list(range(self.tree.n))

    def module_names(self) -> dict[int, str]:
        return {v: self.modules[v].name for v in self.ordered_vertices()}


def standard_slice(P: Poset, node: ICNode, field: Field = QQ) -> SliceData:
    tree = build_tree(node, P)
    modules = {
        v: constant_on(P, sup, field)
        for v, sup in tree.supports.items()
    }
    return SliceData(P, tree, modules, tree.marked)


def check_hypothesis_41(P: Poset, sl: SliceData) -> bool:
    """Only the marked module may contain the maximum in its support."""
    mm = P.unique_min_max()
    if mm is None:
        return False
    _, omega = mm
    for v, M in sl.modules.items():
        has_max = omega in M.support()
        if v == sl.marked and not has_max:
            return False
        if v != sl.marked and has_max:
            return False
    return True


def _path_counts(tree: TreeShape) -> dict[tuple[int, int], int]:
    """Number of directed paths (including empty) between tree vertices."""
    adj: dict[int, list[int]] = {v: [] for v in range(tree.n)}
    for a, b in tree.arrows or ():
        adj[a].append(b)
    counts: dict[tuple[int, int], int] = {}

    def walk(src: int, v: int) -> None:
        counts[(src, v)] = counts.get((src, v), 0) + 1
        for w in adj[v]:
            walk(src, w)

    for v in range(tree.n):
        walk(v, v)
    return counts


@dataclass
class SliceReport:
    hypothesis_ok: bool
    ext_failures: tuple[tuple[int, int, int], ...]
    hom_mismatches: tuple[tuple[int, int, int, int], ...]

    @property
    def ok(self) -> bool:
        return self.hypothesis_ok and not self.ext_failures and not self.hom_mismatches

    def describe(self, sl: SliceData | None = None) -> str:
        lines = [
            f"support condition at the maximum: {'ok' if self.hypothesis_ok else 'FAIL'}",
            f"ext vanishing (degrees >= 1): "
            + ("ok" if not self.ext_failures else f"FAIL {list(self.ext_failures)}"),
            f"hom matrix vs oriented tree paths: "
            + ("ok" if not self.hom_mismatches else f"FAIL {list(self.hom_mismatches)}"),
        ]
        return "\n".join(lines)


def verify_slice(sl: SliceData, max_degree: int | None = None) -> SliceReport:
    P = sl.poset
    n = sl.tree.n
    ext_failures = []
    from .homalg import _ext_from_resolution, min_projective_resolution

    resolutions = {v: min_projective_resolution(sl.modules[v])[0] for v in range(n)}
    for v in range(n):
        C = resolutions[v]
        top = C.length() if max_degree is None else min(C.length(), max_degree)
        for w in range(n):
            Mw = sl.modules[w]
            for i in range(1, top + 1):
                d = _ext_from_resolution(C, Mw, i)
                if d:
                    ext_failures.append((v, w, i))
    counts = _path_counts(sl.tree)
    hom_mismatches = []
    for v in range(n):
        for w in range(n):
            want = counts.get((v, w), 0)
            got = hom_dim(sl.modules[v], sl.modules[w])
            if got != want:
                hom_mismatches.append((v, w, got, want))
    return SliceReport(
        check_hypothesis_41(P, sl),
        tuple(ext_failures),
        tuple(hom_mismatches),
    )
