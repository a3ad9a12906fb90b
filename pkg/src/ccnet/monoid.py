"""Monoid closure of input maps and the fundamental network.

Product convention: ``compose[i, j]`` is the element ``s_i s_j`` which, as a
map on cells, is ``s_i o s_j`` (apply ``s_j`` first).  With this convention the
fundamental-network input rule ``tau -> sigma tau`` is left multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ccnet.errors import NotBackwardConnected
from ccnet.netspec import IDENTITY, Network


@dataclass(frozen=True)
class MonoidTable:
    """Closed set of input maps with its multiplication table.

    Element 0 is the identity.  ``words[k]`` is a witness word over the
    non-identity colors of the source network (empty for the identity);
    ``action[k][p]`` is the image of cell ``p``.
    """

    elements: tuple[str, ...]
    compose: np.ndarray
    words: tuple[tuple[str, ...], ...]
    action: tuple[tuple[int, ...], ...]
    cells: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, name: str) -> int:
        return self.elements.index(name)

    def mul(self, i: int, j: int) -> int:
        return int(self.compose[i, j])


def _element_name(word: tuple[str, ...]) -> str:
    return ".".join(word) if word else IDENTITY


def monoid_closure(net: Network) -> MonoidTable:
    """Smallest composition-closed set containing the input maps and Id.

    Elements are ordered breadth-first by word length, ties broken
    lexicographically in color order; two words with the same action collapse
    to the shorter (lex-smaller) one.
    """
    gens = [(c, net.maps[c]) for c in net.colors if c != IDENTITY]
    n = net.n_cells
    ident = tuple(range(n))
    seen = {ident: 0}
    words = [()]
    actions = [ident]
    level = [0]
    while level:
        nxt = []
        for k in level:
            act = actions[k]
            for color, g in gens:
                # word w+c acts as act o g
                new = tuple(act[g[p]] for p in range(n))
                if new not in seen:
                    seen[new] = len(actions)
                    actions.append(new)
                    words.append(words[k] + (color,))
                    nxt.append(seen[new])
        level = nxt

    size = len(actions)
    compose = np.empty((size, size), dtype=np.int64)
    for i, a in enumerate(actions):
        for j, b in enumerate(actions):
            compose[i, j] = seen[tuple(a[b[p]] for p in range(n))]
    compose.setflags(write=False)
    return MonoidTable(
        elements=tuple(_element_name(w) for w in words),
        compose=compose,
        words=tuple(words),
        action=tuple(actions),
        cells=net.cells,
    )


def build_fundamental_network(tab: MonoidTable) -> Network:
    """Left Cayley graph: the sigma-input of cell tau is sigma tau."""
    maps = {
        name: tuple(tab.mul(s, t) for t in range(tab.size)) for s, name in enumerate(tab.elements)
    }
    return Network(cells=tab.elements, colors=tab.elements, maps=maps)


def backward_connected_cells(net: Network, tab: MonoidTable) -> list[int]:
    """Cells receiving (after closure) an input from every cell."""
    full = set(range(net.n_cells))
    return [p for p in range(net.n_cells) if {a[p] for a in tab.action} == full]


def is_backward_connected(net: Network, tab: MonoidTable) -> bool:
    return bool(backward_connected_cells(net, tab))


def quotient_coloring(net: Network, tab: MonoidTable, base: str | None = None) -> dict[str, str]:
    """Map fundamental cell tau to original cell tau(p*).

    ``p*`` is ``base`` if given, otherwise the first backward-connected cell.
    """
    roots = backward_connected_cells(net, tab)
    if base is None:
        if not roots:
            raise NotBackwardConnected("no cell receives inputs from every cell")
        p = roots[0]
    else:
        p = net.cells.index(base)
        if p not in roots:
            raise NotBackwardConnected(f"cell {base!r} does not receive inputs from every cell", cell=base)
    return {tab.elements[k]: net.cells[tab.action[k][p]] for k in range(tab.size)}


def coloring_partition(tab: MonoidTable, coloring: dict[str, str]) -> list[list[int]]:
    """Partition of fundamental cells (by index) induced by a coloring."""
    classes: dict[str, list[int]] = {}
    for k, name in enumerate(tab.elements):
        classes.setdefault(coloring[name], []).append(k)
    return list(classes.values())


def multiplication_table(tab: MonoidTable) -> list[list[int]]:
    return tab.compose.tolist()


def to_dot(net: Network, labels: dict[str, str] | None = None, name: str = "network") -> str:
    """GraphViz DOT text: one edge ``source -> cell`` per non-identity color."""
    lines = [f"digraph {_quote(name)} {{"]
    for cell in net.cells:
        text = cell if not labels or cell not in labels else f"{cell}\\n{labels[cell]}"
        lines.append(f"  {_quote(cell)} [label={_quote(text)}];")
    for color in net.colors:
        if color == IDENTITY:
            continue
        for p, q in enumerate(net.maps[color]):
            lines.append(f"  {_quote(net.cells[q])} -> {_quote(net.cells[p])} [label={_quote(color)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _quote(s: str) -> str:
    # keeps literal "\n" sequences so DOT renders line breaks
    return '"' + s.replace('"', '\\"') + '"'


def loop_set(tab: MonoidTable, cell: int) -> frozenset[int]:
    """Elements ``tau`` with ``tau cell = cell`` (self-loops of ``cell``)."""
    return frozenset(int(t) for t in np.flatnonzero(tab.compose[:, cell] == cell))


def generator_indices(tab: MonoidTable) -> list[int]:
    """Elements named by a single color; together they generate the monoid."""
    return [k for k, w in enumerate(tab.words) if len(w) == 1]
