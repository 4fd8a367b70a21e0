"""Plain-text digraph files.

Format, one directive per line: '#' starts a comment, `n <count>` declares
the vertex range (required, first), `e <u> <v>` adds an arc (duplicates are
idempotent), `range <label> <lo> <hi>` names a vertex interval (used by
gadget exports), `name <string>` attaches a label.  Serialisation is
deterministic and parse(serialize(d)) == d holds bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .digraph import Digraph, make_digraph, reflexive_closure
from .errors import InputError


@dataclass
class DigraphRecord:
    digraph: Digraph
    name: Optional[str] = None
    ranges: dict[str, tuple[int, int]] = field(default_factory=dict)


def parse_digraph_record(text: str) -> DigraphRecord:
    n: Optional[int] = None
    edges: list[tuple[int, int]] = []
    name: Optional[str] = None
    ranges: dict[str, tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        directive = parts[0]
        if directive == "n":
            if n is not None:
                raise InputError(f"line {lineno}: duplicate vertex-count header")
            n = _int(parts, 1, lineno, expected=2)
            if n < 0:
                raise InputError(f"line {lineno}: vertex count must be nonnegative")
        elif directive == "e":
            if n is None:
                raise InputError(f"line {lineno}: edge before the vertex-count header")
            u = _int(parts, 1, lineno, expected=3)
            v = _int(parts, 2, lineno, expected=3)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"line {lineno}: vertex out of range 0..{n - 1}")
            edges.append((u, v))
        elif directive == "name":
            name = line[len("name"):].strip()
        elif directive == "range":
            if len(parts) != 4:
                raise InputError(f"line {lineno}: range needs a label and two bounds")
            ranges[parts[1]] = (_int(parts, 2, lineno, 4), _int(parts, 3, lineno, 4))
        else:
            raise InputError(f"line {lineno}: unknown directive {directive!r}")
    if n is None:
        raise InputError("missing vertex-count header 'n <count>'")
    return DigraphRecord(make_digraph(n, edges), name, ranges)


def _int(parts: list[str], idx: int, lineno: int, expected: int) -> int:
    if len(parts) != expected:
        raise InputError(f"line {lineno}: expected {expected - 1} argument(s)")
    try:
        return int(parts[idx])
    except ValueError:
        raise InputError(f"line {lineno}: {parts[idx]!r} is not an integer") from None


def parse_digraph(text: str, close_reflexive: bool = False) -> Digraph:
    d = parse_digraph_record(text).digraph
    return reflexive_closure(d) if close_reflexive else d


def serialize_digraph(
    d: Digraph,
    name: Optional[str] = None,
    ranges: Optional[dict[str, tuple[int, int]]] = None,
) -> str:
    lines = [f"n {d.n}"]
    lines.extend(f"e {u} {v}" for u, v in sorted(d.edges()))
    if ranges:
        for label, (lo, hi) in sorted(ranges.items(), key=lambda kv: kv[1]):
            lines.append(f"range {label} {lo} {hi}")
    if name is not None:
        lines.append(f"name {name}")
    return "\n".join(lines) + "\n"
