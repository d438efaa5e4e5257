"""Line-based text formats for networks and constraint systems, plus DOT export.

Network files hold one record per line::

    A <tail> <head>     arc
    L <vertex> <label>  leaf label

Constraint files hold ``T a b c`` for the triplet ``ab|c`` and ``D a b`` for
the duet ``<a, b>``. In both formats ``#`` starts a comment line and blank
lines are ignored. Serializers emit the canonical form: records sorted, LF
line endings, trailing newline.
"""
from __future__ import annotations

from .encoding import Duet, Triplet
from .network import LABEL_RE, Network, NetworkError, VertexClass, classify


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _records(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        for tok in toks[1:]:
            if not LABEL_RE.fullmatch(tok):
                raise ParseError(f"bad token {tok!r}", lineno)
        yield lineno, toks


def parse_net(text: str) -> Network:
    arcs = []
    labels: dict[str, str] = {}
    label_line: dict[str, int] = {}
    for lineno, toks in _records(text):
        kind = toks[0]
        if kind not in ("A", "L") or len(toks) != 3:
            raise ParseError(f"expected 'A tail head' or 'L vertex label', got {' '.join(toks)!r}", lineno)
        if kind == "A":
            if toks[1] == toks[2]:
                raise ParseError(f"self-arc at {toks[1]!r}", lineno)
            arcs.append((toks[1], toks[2]))
        else:
            if toks[1] in labels:
                raise ParseError(f"vertex {toks[1]!r} labelled twice", lineno)
            labels[toks[1]] = toks[2]
            label_line[toks[1]] = lineno
    tails = {t for t, _ in arcs}
    heads = {h for _, h in arcs}
    seen: dict[str, str] = {}
    for v, lab in labels.items():
        where = label_line[v]
        if v not in tails and v not in heads:
            raise ParseError(f"labelled vertex {v!r} appears in no arc", where)
        if v in tails:
            raise ParseError(f"label on non-sink vertex {v!r}", where)
        if lab in seen:
            raise ParseError(f"label {lab!r} already used by {seen[lab]!r}", where)
        seen[lab] = v
    try:
        return Network(arcs, labels)
    except NetworkError as e:
        raise ParseError(str(e)) from None


def serialize_net(net: Network) -> str:
    lines = [f"A {t} {h}" for t, h in sorted((str(t), str(h)) for t, h in net.arcs)]
    lines += [f"L {v} {lab}" for v, lab in sorted((str(v), lab) for v, lab in net.labels.items())]
    return "".join(line + "\n" for line in lines)


def parse_constraints(text: str) -> tuple[frozenset[Triplet], frozenset[Duet]]:
    trips = set()
    duets = set()
    for lineno, toks in _records(text):
        kind = toks[0]
        try:
            if kind == "T" and len(toks) == 4:
                trips.add(Triplet(*toks[1:]))
            elif kind == "D" and len(toks) == 3:
                duets.add(Duet(*toks[1:]))
            else:
                raise ParseError(f"expected 'T a b c' or 'D a b', got {' '.join(toks)!r}", lineno)
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(str(e), lineno) from None
    return frozenset(trips), frozenset(duets)


def serialize_constraints(r, d) -> str:
    lines = [f"T {a} {b} {c}" for a, b, c in sorted(tuple(t) for t in r)]
    lines += [f"D {a} {b}" for a, b in sorted(tuple(x) for x in d)]
    return "".join(line + "\n" for line in lines)


_SHAPE = {
    VertexClass.ROOT: "box",
    VertexClass.HYBRID: "diamond",
    VertexClass.TREE_VERTEX: "point",
}


def emit_dot(net: Network, name: str = "N") -> str:
    """Graphviz source: roots as boxes, hybrids as diamonds, leaves as their labels."""
    out = [f"digraph {name} {{"]
    for v in net.vertices:
        if v in net.labels:
            out.append(f'  "{v}" [shape=plaintext, label="{net.labels[v]}"];')
        else:
            shape = _SHAPE.get(classify(net, v), "circle")
            out.append(f'  "{v}" [shape={shape}, label=""];')
    for t, h in net.arcs:
        out.append(f'  "{t}" -> "{h}";')
    out.append("}")
    return "\n".join(out) + "\n"
