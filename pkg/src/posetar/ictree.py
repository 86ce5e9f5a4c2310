"""Iterated-clamping structure: decompositions, derived trees, ADE classes.

A poset built by repeatedly clamping interval stacks between a fresh minimum
and maximum admits a recursive witness (ICNode).  The witness determines a
finite tree: the derived category of the incidence algebra is equivalent to
that of a hereditary algebra over any orientation of the tree, so the tree's
ADE class answers the fractional Calabi-Yau and finite-type questions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BranchTooClose, NotExtreme, ParseError, PosetarError
from .poset import Poset


@dataclass(frozen=True)
class ICNode:
    """Decomposition witness.

    kind 'point': a single element (low == high).
    kind 'clamp': children are the components of the open interval (low, high).
    kind 'adjoin-min'/'adjoin-max': one extremal element added to the child.
    """

    kind: str
    low: int
    high: int
    children: tuple["ICNode", ...] = ()

    def carrier(self) -> frozenset[int]:
        out = {self.low, self.high}
        for ch in self.children:
            out |= ch.carrier()
        return frozenset(out)

    @property
    def depth(self) -> int:
        """Minimal stage index for clamp/point witnesses."""
        if self.kind == "point":
            return 0
        if self.kind == "clamp":
            return 1 + max((ch.depth for ch in self.children), default=0)
        raise PosetarError("depth is defined for point/clamp witnesses only")

    def uses_adjoin(self) -> bool:
        if self.kind in ("adjoin-min", "adjoin-max"):
            return True
        return any(ch.uses_adjoin() for ch in self.children)

    def render(self, P: Poset, indent: int = 0) -> str:
        pad = "  " * indent
        if self.kind == "point":
            head = f"{pad}point {P.names[self.low]}"
        elif self.kind == "clamp":
            head = f"{pad}clamp [{P.names[self.low]}, {P.names[self.high]}]"
        elif self.kind == "adjoin-min":
            head = f"{pad}adjoin-min {P.names[self.low]}"
        else:
            head = f"{pad}adjoin-max {P.names[self.high]}"
        lines = [head]
        for ch in self.children:
            lines.append(ch.render(P, indent + 1))
        return "\n".join(lines)


@dataclass
class TreeShape:
    """Finite tree with one marked vertex and optional per-vertex data."""

    n: int
    edges: tuple[tuple[int, int], ...]
    marked: int
    labels: dict[int, str] = field(default_factory=dict)
    supports: dict[int, frozenset[int]] | None = None
    arrows: tuple[tuple[int, int], ...] | None = None  # slice orientation

    def __post_init__(self) -> None:
        self.edges = tuple(tuple(sorted(e)) for e in self.edges)
        if len(self.edges) != self.n - 1:
            raise PosetarError("edge count does not match a tree")
        if self.n > 0 and len(self._components()) != 1:
            raise PosetarError("tree is not connected")

    def _components(self) -> list[set[int]]:
        seen: set[int] = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                v = stack.pop()
                for u in self.neighbors(v):
                    if u not in comp:
                        comp.add(u)
                        stack.append(u)
            seen |= comp
            comps.append(comp)
        return comps

    def neighbors(self, v: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if self.degree(v) <= 1]

    def distances_from(self, v: int) -> dict[int, int]:
        dist = {v: 0}
        frontier = [v]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self.neighbors(u):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    def canonical_marked(self) -> tuple:
        """AHU canonical form rooted at the marked vertex."""

        def go(v: int, parent: int | None) -> tuple:
            subs = sorted(go(u, v) for u in self.neighbors(v) if u != parent)
            return tuple(subs)

        return go(self.marked, None)

    def without_marked(self) -> list["TreeShape"]:
        """Connected components after deleting the marked vertex."""
        return self.without_vertices({self.marked})

    def without_vertices(self, kill: set[int]) -> list["TreeShape"]:
        keep = [v for v in range(self.n) if v not in kill]
        comps: list[TreeShape] = []
        seen: set[int] = set()
        for s in keep:
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                v = stack.pop()
                for u in self.neighbors(v):
                    if u in kill or u in comp:
                        continue
                    comp.add(u)
                    stack.append(u)
            seen |= comp
            order = sorted(comp)
            back = {v: i for i, v in enumerate(order)}
            edges = [
                (back[a], back[b]) for a, b in self.edges if a in comp and b in comp
            ]
            comps.append(TreeShape(len(order), tuple(edges), 0))
        return comps

    def to_dot(self) -> str:
        lines = ["graph tree {", "  node [shape=circle];"]
        for v in range(self.n):
            shape = "doublecircle" if v == self.marked else "circle"
            label = self.labels.get(v, str(v))
            lines.append(f'  v{v} [shape={shape}, label="{label}"];')
        for a, b in self.edges:
            lines.append(f"  v{a} -- v{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def marked_trees_isomorphic(S: TreeShape, T: TreeShape) -> bool:
    return S.n == T.n and S.canonical_marked() == T.canonical_marked()


@dataclass(frozen=True)
class TreeClass:
    """ADE classification: family in A/D/E (Dynkin), ~D/~E (Euclidean), wild."""

    family: str
    index: int | None = None

    @property
    def is_dynkin(self) -> bool:
        return self.family in ("A", "D", "E")

    @property
    def is_euclidean(self) -> bool:
        return self.family in ("~D", "~E")

    def __str__(self) -> str:
        if self.family == "wild":
            return "wild"
        return f"{self.family}{self.index}"


def _arm_lengths(T: TreeShape, b: int) -> list[int] | None:
    """Edge lengths of the arms at b; None if an arm branches again."""
    arms = []
    for start in T.neighbors(b):
        length = 1
        prev, cur = b, start
        while True:
            nxt = [u for u in T.neighbors(cur) if u != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return None
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def classify_tree(T: TreeShape) -> TreeClass:
    n = T.n
    if n == 0:
        raise PosetarError("empty tree")
    branch = [v for v in range(n) if T.degree(v) >= 3]
    if not branch:
        return TreeClass("A", n)
    if len(branch) == 1:
        b = branch[0]
        arms = _arm_lengths(T, b)
        if arms is None:
            raise PosetarError("inconsistent branch analysis")
        if len(arms) == 3:
            a1, a2, a3 = arms
            if a1 == 1 and a2 == 1:
                return TreeClass("D", a3 + 3)
            if arms == [1, 2, 2]:
                return TreeClass("E", 6)
            if arms == [1, 2, 3]:
                return TreeClass("E", 7)
            if arms == [1, 2, 4]:
                return TreeClass("E", 8)
            if arms == [2, 2, 2]:
                return TreeClass("~E", 6)
            if arms == [1, 3, 3]:
                return TreeClass("~E", 7)
            if arms == [1, 2, 5]:
                return TreeClass("~E", 8)
            return TreeClass("wild")
        if len(arms) == 4 and arms == [1, 1, 1, 1]:
            return TreeClass("~D", 4)
        return TreeClass("wild")
    if len(branch) == 2 and all(T.degree(v) == 3 for v in branch):
        # Euclidean D-type: both branch vertices carry two pendant leaves.
        for b in branch:
            others = [u for u in T.neighbors(b) if T.degree(u) == 1]
            if len(others) != 2:
                return TreeClass("wild")
        return TreeClass("~D", n - 1)
    return TreeClass("wild")


# -- decomposition -------------------------------------------------------------


def _extrema_in(P: Poset, subset: frozenset[int]):
    mins = [x for x in subset if not any(P.lt(y, x) for y in subset)]
    maxs = [x for x in subset if not any(P.lt(x, y) for y in subset)]
    return mins, maxs


def ic_decompose(P: Poset) -> ICNode | None:
    """Pure clamp/point witness, or None when the poset is not built that way."""

    def go(subset: frozenset[int]) -> ICNode | None:
        if len(subset) == 1:
            x = next(iter(subset))
            return ICNode("point", x, x)
        mins, maxs = _extrema_in(P, subset)
        if len(mins) != 1 or len(maxs) != 1:
            return None
        lo, hi = mins[0], maxs[0]
        interior = subset - {lo, hi}
        kids = []
        for comp in P.connected_components(interior):
            node = go(comp)
            if node is None:
                return None
            kids.append(node)
        return ICNode("clamp", lo, hi, tuple(kids))

    return go(frozenset(P.elements()))


def ic_plus_decompose(P: Poset) -> ICNode | None:
    """Witness allowing single extremal adjunctions; clamp-first preference."""
    memo: dict[frozenset[int], ICNode | None] = {}

    def go(subset: frozenset[int]) -> ICNode | None:
        if subset in memo:
            return memo[subset]
        memo[subset] = None  # guards recursion; overwritten below
        result: ICNode | None = None
        if len(subset) == 1:
            x = next(iter(subset))
            result = ICNode("point", x, x)
        else:
            mins, maxs = _extrema_in(P, subset)
            if len(mins) == 1 and len(maxs) == 1:
                lo, hi = mins[0], maxs[0]
                interior = subset - {lo, hi}
                kids = []
                ok = True
                for comp in P.connected_components(interior):
                    node = go(comp)
                    if node is None:
                        ok = False
                        break
                    kids.append(node)
                if ok:
                    result = ICNode("clamp", lo, hi, tuple(kids))
                if result is None:
                    rest = subset - {lo}
                    rmins, _ = _extrema_in(P, rest)
                    if len(rmins) == 1:
                        child = go(rest)
                        if child is not None:
                            result = ICNode("adjoin-min", lo, hi, (child,))
                if result is None:
                    rest = subset - {hi}
                    _, rmaxs = _extrema_in(P, rest)
                    if len(rmaxs) == 1:
                        child = go(rest)
                        if child is not None:
                            result = ICNode("adjoin-max", lo, hi, (child,))
        memo[subset] = result
        return result

    return go(frozenset(P.elements()))


# -- tree construction ----------------------------------------------------------


def build_tree(node: ICNode, P: Poset | None = None) -> TreeShape:
    """Derived tree of a decomposition witness.

    One vertex per poset element.  A clamp contributes a star: fresh center,
    a fresh marked leaf, and one edge per child glued at the child's marked
    vertex.  An adjunction grows one edge at the marked vertex and moves the
    mark to the new leaf.
    """
    counter = [0]
    edges: list[tuple[int, int]] = []
    supports: dict[int, frozenset[int]] = {}
    arrows: list[tuple[int, int]] = []

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def go(nd: ICNode) -> int:
        carrier = nd.carrier()
        if nd.kind == "point":
            v = fresh()
            supports[v] = carrier
            return v
        if nd.kind == "clamp":
            child_marks = [go(ch) for ch in nd.children]
            center = fresh()
            mark = fresh()
            supports[center] = carrier - {nd.high}
            supports[mark] = carrier
            edges.append((mark, center))
            arrows.append((mark, center))
            for cm in child_marks:
                edges.append((cm, center))
                arrows.append((cm, center))
            return mark
        # adjunctions: one new leaf at the old mark, which becomes the mark
        child_mark = go(nd.children[0])
        mark = fresh()
        edges.append((mark, child_mark))
        supports[mark] = carrier
        if nd.kind == "adjoin-min":
            # the old mark's module moves one translate forward, so every
            # slice arrow at that vertex reverses
            supports[child_mark] = carrier - {nd.high}
            for i, (a, b) in enumerate(arrows):
                if a == child_mark:
                    arrows[i] = (b, a)
                elif b == child_mark:
                    arrows[i] = (b, a)
        arrows.append((mark, child_mark))
        return mark

    marked = go(node)
    labels = {}
    if P is not None:
        for v, sup in supports.items():
            ids = P.sorted_ids(sup)
            labels[v] = "k{" + ",".join(P.names[x] for x in ids) + "}"
    return TreeShape(counter[0], tuple(edges), marked, labels, supports, tuple(arrows))


def finite_type_criterion(P: Poset) -> tuple[str, str]:
    """('finite', reason) when deleting the marked tree vertex leaves Dynkin.

    Applies to pure clamp decompositions; anything else is 'inconclusive'
    (the criterion is one-directional).
    """
    node = ic_decompose(P)
    if node is None:
        return "inconclusive", "poset has no pure iterated-clamping witness"
    T = build_tree(node, P)
    classes = [classify_tree(c) for c in T.without_marked()]
    if all(c.is_dynkin for c in classes):
        residual = ", ".join(str(c) for c in classes) or "empty"
        return "finite", f"residual tree after removing the marked vertex: {residual}"
    bad = ", ".join(str(c) for c in classes)
    return "inconclusive", f"residual tree is not Dynkin ({bad})"


# -- lattice from a tree ---------------------------------------------------------


def _check_distance_condition(T: TreeShape) -> None:
    branch = [v for v in range(T.n) if T.degree(v) >= 3]
    for i, a in enumerate(branch):
        dist = T.distances_from(a)
        for b in branch[i + 1:]:
            if dist[b] < 2:
                raise BranchTooClose(
                    f"branch vertices {a} and {b} are adjacent"
                )


def tree_to_poset(T: TreeShape, p: int) -> Poset:
    """Lattice whose decomposition tree is (T, p).

    Requires branch vertices pairwise at distance >= 2 and p extreme.  The
    construction strips the star nearest p, recurses on the remaining
    subtrees, clamps the resulting lattices, then adjoins a chain for the
    stripped path.
    """
    if T.n > 1 and T.degree(p) != 1:
        raise NotExtreme(f"vertex {p} is not a leaf")
    _check_distance_condition(T)

    counter = [0]

    def fresh() -> str:
        counter[0] += 1
        return f"e{counter[0]}"

    relations: list[tuple[str, str]] = []
    names: list[str] = []

    def new_el() -> str:
        nm = fresh()
        names.append(nm)
        return nm

    def go(tree: TreeShape, mark: int) -> tuple[str, str]:
        """Build the sub-lattice; returns (min element, max element)."""
        branch = [v for v in range(tree.n) if tree.degree(v) >= 3]
        if not branch:
            # path: chain with |tree| elements, mark at one end (the minimum)
            prev = None
            first = None
            for _ in range(tree.n):
                cur = new_el()
                if prev is None:
                    first = cur
                else:
                    relations.append((prev, cur))
                prev = cur
            return first, prev
        dist_to_p = tree.distances_from(mark)
        x = min(branch, key=lambda v: (dist_to_p[v], v))
        # neighbor of x on the path toward the mark
        path_nb = [u for u in tree.neighbors(x) if dist_to_p[u] == dist_to_p[x] - 1]
        y0 = path_nb[0]
        other = [u for u in tree.neighbors(x) if u != y0]
        # subtrees hanging off x away from the mark
        sub_infos = []
        kill = {x} | {v for v in range(tree.n) if dist_to_p[v] < dist_to_p[x]}
        for u in other:
            comp = _component_of(tree, u, kill)
            sub_infos.append((comp, u))
        alpha = new_el()
        omega = new_el()
        for comp_vertices, u in sub_infos:
            sub, back = _induced_tree(tree, comp_vertices)
            smin, smax = go(sub, back[u])
            relations.append((alpha, smin))
            relations.append((smax, omega))
        if not sub_infos:
            relations.append((alpha, omega))
        # adjoin the chain for the stripped path strictly between y0 and the mark
        chain_len = dist_to_p[x] - 1
        lowest = alpha
        for _ in range(chain_len):
            c = new_el()
            relations.append((c, lowest))
            lowest = c
        return lowest, omega

    def _component_of(tree: TreeShape, start: int, kill: set[int]) -> set[int]:
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in tree.neighbors(v):
                if u in kill or u in comp:
                    continue
                comp.add(u)
                stack.append(u)
        return comp

    def _induced_tree(tree: TreeShape, comp: set[int]):
        order = sorted(comp)
        back = {v: i for i, v in enumerate(order)}
        edges = [(back[a], back[b]) for a, b in tree.edges if a in comp and b in comp]
        return TreeShape(len(order), tuple(edges), 0), back

    go(T, p)
    idx = {nm: i for i, nm in enumerate(names)}
    return Poset(names, [(idx[a], idx[b]) for a, b in relations], name="fromtree")


# -- abstract shapes (generators) -------------------------------------------------


def realize_shape(shape, prefix: str = "e") -> Poset:
    """Build a poset from a nested shape description.

    shape ::= ('point',) | ('clamp', [shape, ...])
            | ('adjoin-min', shape) | ('adjoin-max', shape)
    """
    counter = [0]
    names: list[str] = []
    relations: list[tuple[str, str]] = []

    def new_el() -> str:
        counter[0] += 1
        nm = f"{prefix}{counter[0]}"
        names.append(nm)
        return nm

    def go(s) -> tuple[str, str]:
        kind = s[0]
        if kind == "point":
            e = new_el()
            return e, e
        if kind == "clamp":
            alpha = new_el()
            omega = new_el()
            for child in s[1]:
                lo, hi = go(child)
                relations.append((alpha, lo))
                relations.append((hi, omega))
            if not s[1]:
                relations.append((alpha, omega))
            return alpha, omega
        if kind == "adjoin-min":
            lo, hi = go(s[1])
            alpha = new_el()
            relations.append((alpha, lo))
            return alpha, hi
        if kind == "adjoin-max":
            lo, hi = go(s[1])
            omega = new_el()
            relations.append((hi, omega))
            return lo, omega
        raise ValueError(f"bad shape node {s!r}")

    go(shape)
    idx = {nm: i for i, nm in enumerate(names)}
    return Poset(names, [(idx[a], idx[b]) for a, b in relations])


# -- tree file format ---------------------------------------------------------------


def parse_tree(text: str) -> tuple[TreeShape, dict[str, int]]:
    """Parse `vertices ...` / `edges u-v ...` / `mark v` tree files."""
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    mark: str | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertices":
            vertices.extend(parts[1:])
        elif parts[0] == "edges":
            for tok in parts[1:]:
                if "-" not in tok:
                    raise ParseError(f"bad edge token {tok!r}")
                a, b = tok.split("-", 1)
                edges.append((a, b))
        elif parts[0] == "mark":
            mark = parts[1]
        else:
            raise ParseError(f"unexpected tree line: {raw!r}")
    if mark is None:
        raise ParseError("tree file lacks a 'mark' line")
    idx = {nm: i for i, nm in enumerate(vertices)}
    for a, b in edges:
        if a not in idx or b not in idx:
            raise ParseError(f"edge on undeclared vertex {a!r}-{b!r}")
    if mark not in idx:
        raise ParseError(f"marked vertex {mark!r} not declared")
    T = TreeShape(
        len(vertices),
        tuple((idx[a], idx[b]) for a, b in edges),
        idx[mark],
        {i: nm for nm, i in idx.items()},
    )
    return T, idx
