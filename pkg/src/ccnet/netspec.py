"""On-disk network description: parsing, validation and serialization.

A network document is a JSON object::

    {"version": 1,
     "cells": ["1", "2", "3"],
     "maps": {"s": {"1": "2", "2": "3", "3": "3"}},
     "metadata": {"name": "chain3"}}

``maps[color][cell]`` is the source of ``cell``'s input of that color.  The
identity color ``"id"`` is implicit; it may be declared, but then it must be
the identity map.  Cell order in the file fixes the basis order of every
matrix built downstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ccnet.errors import DuplicateIdentifier, MalformedDocument, MissingColor, UnknownCell

IDENTITY = "id"
FORMAT_VERSION = 1
_TOP_LEVEL_KEYS = ("version", "cells", "maps", "metadata")


@dataclass(frozen=True)
class Network:
    """Cells plus one input map per color.

    ``maps[color]`` is a tuple of cell indices: entry ``p`` is the index of the
    cell feeding cell ``p`` through that color.  Construction does not
    validate; see :func:`validate_asymmetric_inputs`.
    """

    cells: tuple[str, ...]
    colors: tuple[str, ...]
    maps: dict[str, tuple[int, ...]]

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    def source(self, color: str, cell: str) -> str:
        return self.cells[self.maps[color][self.cells.index(cell)]]

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return (
            self.cells == other.cells
            and self.colors == other.colors
            and {c: tuple(self.maps[c]) for c in self.colors}
            == {c: tuple(other.maps[c]) for c in other.colors}
        )

    def __hash__(self):
        return hash((self.cells, self.colors, tuple(tuple(self.maps[c]) for c in self.colors)))


@dataclass(frozen=True)
class NetworkDoc:
    network: Network
    metadata: dict[str, str] = field(default_factory=dict)
    format_version: int = FORMAT_VERSION


def make_network(cells, maps: dict[str, dict[str, str]] | None = None) -> Network:
    """Build a validated network from cell names and name-keyed maps.

    Convenience for code and tests; applies the same rules as the parser.
    """
    doc = {"version": FORMAT_VERSION, "cells": list(cells), "maps": maps or {}}
    return parse_network(json.dumps(doc)).network


def _fail_type(what: str, expected: str):
    raise MalformedDocument(f"{what} must be {expected}")


def parse_network(data: bytes | str) -> NetworkDoc:
    """Parse and validate a network document; ``"id"`` is added when absent."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedDocument(f"input is not UTF-8: {exc}") from exc
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        _fail_type("document", "a JSON object")

    unknown = [k for k in raw if k not in _TOP_LEVEL_KEYS]
    if unknown:
        raise MalformedDocument(f"unknown top-level keys: {unknown}", keys=unknown)
    if raw.get("version") != FORMAT_VERSION:
        raise MalformedDocument(f"unsupported version {raw.get('version')!r}; expected {FORMAT_VERSION}")

    cells = raw.get("cells")
    if not isinstance(cells, list) or not cells:
        _fail_type("'cells'", "a nonempty list")
    for c in cells:
        if not isinstance(c, str) or not c:
            _fail_type("cell identifiers", "nonempty strings")
    dup = sorted({c for c in cells if cells.count(c) > 1})
    if dup:
        raise DuplicateIdentifier(f"duplicate cell identifiers: {dup}", identifiers=dup)

    maps_raw = raw.get("maps", {})
    if not isinstance(maps_raw, dict):
        _fail_type("'maps'", "an object")
    metadata = raw.get("metadata", {})
    if not isinstance(metadata, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in metadata.items()
    ):
        _fail_type("'metadata'", "an object of string values")

    # json.loads keeps the last of duplicated object keys; colors are checked
    # for duplicates through the object_pairs_hook below.
    _check_duplicate_colors(data)

    index = {c: i for i, c in enumerate(cells)}
    colors = [IDENTITY]
    maps = {IDENTITY: tuple(range(len(cells)))}
    for color, table in maps_raw.items():
        if not isinstance(color, str) or not color:
            _fail_type("color identifiers", "nonempty strings")
        if not isinstance(table, dict):
            _fail_type(f"map for color {color!r}", "an object")
        for cell, src in table.items():
            if cell not in index:
                raise UnknownCell(f"color {color!r} maps unknown cell {cell!r}", color=color, cell=cell)
            if not isinstance(src, str) or src not in index:
                raise UnknownCell(
                    f"color {color!r}: source {src!r} of cell {cell!r} is not a cell", color=color, cell=cell
                )
        missing = [c for c in cells if c not in table]
        if missing:
            raise MissingColor(
                f"cells {missing} lack an input of color {color!r}", color=color, cells=missing
            )
        images = tuple(index[table[c]] for c in cells)
        if color == IDENTITY:
            if images != maps[IDENTITY]:
                raise MalformedDocument("declared color 'id' is not the identity map")
            continue
        colors.append(color)
        maps[color] = images

    net = Network(cells=tuple(cells), colors=tuple(colors), maps=maps)
    return NetworkDoc(network=net, metadata=dict(metadata))


def _check_duplicate_colors(text: str) -> None:
    def hook(pairs):
        keys = [k for k, _ in pairs]
        dup = sorted({k for k in keys if keys.count(k) > 1})
        if dup:
            raise DuplicateIdentifier(f"duplicate keys: {dup}", identifiers=dup)
        return dict(pairs)

    json.loads(text, object_pairs_hook=hook)


def validate_asymmetric_inputs(net: Network) -> list[dict]:
    """Diagnostics for violations of the network invariants (empty if valid)."""
    diags: list[dict] = []
    seen = set()
    for c in net.cells:
        if not isinstance(c, str) or not c:
            diags.append({"cell": c, "color": None, "kind": "empty identifier"})
        elif c in seen:
            diags.append({"cell": c, "color": None, "kind": "duplicate cell"})
        seen.add(c)
    if len(set(net.colors)) != len(net.colors):
        dup = sorted({c for c in net.colors if net.colors.count(c) > 1})
        for c in dup:
            diags.append({"cell": None, "color": c, "kind": "duplicate color"})
    if IDENTITY not in net.colors:
        diags.append({"cell": None, "color": IDENTITY, "kind": "identity absent"})
    n = len(net.cells)
    for color in net.colors:
        images = net.maps.get(color)
        if images is None:
            diags.append({"cell": None, "color": color, "kind": "map absent"})
            continue
        images = list(images)
        for p in range(n):
            if p >= len(images) or images[p] is None:
                diags.append({"cell": net.cells[p], "color": color, "kind": "MissingColor"})
            elif not (isinstance(images[p], int) and 0 <= images[p] < n):
                diags.append({"cell": net.cells[p], "color": color, "kind": "UnknownCell"})
        if len(images) > n:
            diags.append({"cell": None, "color": color, "kind": "UnknownCell"})
        if color == IDENTITY and images[:n] != list(range(n)):
            diags.append({"cell": None, "color": color, "kind": "identity mismatch"})
    return diags


def network_to_dict(doc: NetworkDoc) -> dict:
    net = doc.network
    maps = {}
    for color in net.colors:
        if color == IDENTITY:
            continue
        maps[color] = {net.cells[p]: net.cells[q] for p, q in enumerate(net.maps[color])}
    out = {"version": doc.format_version, "cells": list(net.cells), "maps": maps}
    if doc.metadata:
        out["metadata"] = dict(doc.metadata)
    return out


def serialize_network(doc: NetworkDoc | Network) -> str:
    """JSON text in declaration order with 2-space indentation."""
    if isinstance(doc, Network):
        doc = NetworkDoc(network=doc)
    return json.dumps(network_to_dict(doc), indent=2, ensure_ascii=False) + "\n"


def load_network(path) -> NetworkDoc:
    with open(path, "rb") as fh:
        return parse_network(fh.read())
