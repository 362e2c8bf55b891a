"""Parsers and emitters for the line-oriented file formats.

Every format is ASCII, whitespace-separated, with `#` starting a comment
that runs to the end of the line. Emitted files re-parse to identical
structures (round-trip tested).
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple, Union

from .graphs import (
    Coloring,
    DiGraph,
    Graph,
    GraphError,
    Layering,
    TrackLayout,
    TreeDecomposition,
)
from .rational import ExtRational, format_value, parse_value
from .vcsp import ArcCostMap, CostFunction, VcspInstance


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _tokenized_lines(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line_no, line.split()


def _int(tok: str, line_no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(line_no, f"expected an integer {what}, got {tok!r}")


def parse_graph(text: str) -> Union[Graph, DiGraph]:
    """Parse `graph N` / `digraph N` plus `e u v` / `a u v` lines."""
    kind = None
    n = 0
    edges: List[Tuple[int, int]] = []
    for line_no, toks in _tokenized_lines(text):
        head = toks[0]
        if head in ("graph", "digraph"):
            if kind is not None:
                raise ParseError(line_no, "duplicate header")
            if len(toks) != 2:
                raise ParseError(line_no, "header must be `graph N` or `digraph N`")
            kind = head
            n = _int(toks[1], line_no, "vertex count")
        elif head == "e":
            if kind != "graph":
                raise ParseError(line_no, "`e` lines require a `graph` header")
            if len(toks) != 3:
                raise ParseError(line_no, "edge line must be `e u v`")
            edges.append((_int(toks[1], line_no, "vertex"), _int(toks[2], line_no, "vertex")))
        elif head == "a":
            if kind != "digraph":
                raise ParseError(line_no, "`a` lines require a `digraph` header")
            if len(toks) != 3:
                raise ParseError(line_no, "arc line must be `a u v`")
            edges.append((_int(toks[1], line_no, "vertex"), _int(toks[2], line_no, "vertex")))
        else:
            raise ParseError(line_no, f"unknown directive {head!r}")
    if kind is None:
        raise ParseError(0, "missing `graph N` or `digraph N` header")
    try:
        if kind == "graph":
            return Graph(n, edges)
        return DiGraph(n, edges)
    except GraphError as exc:
        raise ParseError(0, str(exc))


def emit_graph(g: Union[Graph, DiGraph]) -> str:
    if isinstance(g, Graph):
        lines = [f"graph {g.n}"]
        lines += [f"e {u} {v}" for u, v in sorted(g.edges)]
    else:
        lines = [f"digraph {g.n}"]
        lines += [f"a {u} {v}" for u, v in sorted(g.arcs)]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, g: Graph) -> Coloring:
    """Parse `c v color` lines into a coloring of g."""
    color: Dict[int, int] = {}
    for line_no, toks in _tokenized_lines(text):
        if toks[0] == "c":
            if len(toks) != 3:
                raise ParseError(line_no, "coloring line must be `c v color`")
            v = _int(toks[1], line_no, "vertex")
            c = _int(toks[2], line_no, "color")
            if v in color:
                raise ParseError(line_no, f"vertex {v} colored twice")
            color[v] = c
        elif toks[0] == "order":
            raise ParseError(line_no, "`order` lines belong to track layout files")
        else:
            raise ParseError(line_no, f"unknown directive {toks[0]!r}")
    try:
        return Coloring(g, color)
    except GraphError as exc:
        raise ParseError(0, str(exc))


def emit_coloring(coloring: Coloring) -> str:
    lines = [f"c {v} {coloring.color[v]}" for v in sorted(coloring.color)]
    return "\n".join(lines) + "\n"


def parse_layering(text: str, g: Graph) -> Layering:
    """Parse `layer i v1 v2 ...` lines; layer indices must be 0..t contiguous."""
    layers: Dict[int, List[int]] = {}
    for line_no, toks in _tokenized_lines(text):
        if toks[0] != "layer":
            raise ParseError(line_no, f"unknown directive {toks[0]!r}")
        if len(toks) < 2:
            raise ParseError(line_no, "layer line must be `layer i v1 ...`")
        i = _int(toks[1], line_no, "layer index")
        layers.setdefault(i, []).extend(_int(t, line_no, "vertex") for t in toks[2:])
    if sorted(layers) != list(range(len(layers))):
        raise ParseError(0, "layer indices must be contiguous starting at 0")
    try:
        return Layering(g, [layers[i] for i in range(len(layers))])
    except GraphError as exc:
        raise ParseError(0, str(exc))


def emit_layering(layering: Layering) -> str:
    lines = []
    for i, layer in enumerate(layering.layers):
        lines.append("layer " + " ".join(str(v) for v in [i] + sorted(layer)))
    return "\n".join(lines) + "\n"


def parse_track_layout(text: str, g: Graph) -> TrackLayout:
    """Coloring lines plus one `order v1 ... vN` line."""
    color: Dict[int, int] = {}
    order: Optional[List[int]] = None
    for line_no, toks in _tokenized_lines(text):
        if toks[0] == "c":
            if len(toks) != 3:
                raise ParseError(line_no, "coloring line must be `c v color`")
            color[_int(toks[1], line_no, "vertex")] = _int(toks[2], line_no, "color")
        elif toks[0] == "order":
            if order is not None:
                raise ParseError(line_no, "duplicate order line")
            order = [_int(t, line_no, "vertex") for t in toks[1:]]
        else:
            raise ParseError(line_no, f"unknown directive {toks[0]!r}")
    if order is None:
        raise ParseError(0, "missing `order` line")
    try:
        return TrackLayout(Coloring(g, color), order)
    except GraphError as exc:
        raise ParseError(0, str(exc))


def emit_track_layout(layout: TrackLayout) -> str:
    return emit_coloring(layout.coloring) + "order " + " ".join(
        str(v) for v in layout.order
    ) + "\n"


def parse_tree_decomposition(text: str) -> TreeDecomposition:
    """Parse `bag x v1 ...` and `tedge x y` lines."""
    bags: Dict[int, List[int]] = {}
    tedges: List[Tuple[int, int]] = []
    for line_no, toks in _tokenized_lines(text):
        if toks[0] == "bag":
            if len(toks) < 2:
                raise ParseError(line_no, "bag line must be `bag x v1 ...`")
            x = _int(toks[1], line_no, "bag id")
            if x in bags:
                raise ParseError(line_no, f"bag {x} defined twice")
            bags[x] = [_int(t, line_no, "vertex") for t in toks[2:]]
        elif toks[0] == "tedge":
            if len(toks) != 3:
                raise ParseError(line_no, "tree edge line must be `tedge x y`")
            tedges.append((_int(toks[1], line_no, "bag id"), _int(toks[2], line_no, "bag id")))
        else:
            raise ParseError(line_no, f"unknown directive {toks[0]!r}")
    if sorted(bags) != list(range(1, len(bags) + 1)):
        raise ParseError(0, "bag ids must be 1..t contiguous")
    try:
        return TreeDecomposition(Graph(len(bags), tedges), bags)
    except GraphError as exc:
        raise ParseError(0, str(exc))


def emit_tree_decomposition(td: TreeDecomposition) -> str:
    lines = []
    for x in sorted(td.bags):
        lines.append("bag " + " ".join(str(v) for v in [x] + sorted(td.bags[x])))
    for x, y in sorted(td.tree.edges):
        lines.append(f"tedge {x} {y}")
    return "\n".join(lines) + "\n"


def parse_cost_map(text: str, default: ExtRational) -> ArcCostMap:
    """Parse `cost gu gv hu hv VALUE` lines; unlisted pairs take `default`."""
    overrides = {}
    for line_no, toks in _tokenized_lines(text):
        if toks[0] != "cost":
            raise ParseError(line_no, f"unknown directive {toks[0]!r}")
        if len(toks) != 6:
            raise ParseError(line_no, "cost line must be `cost gu gv hu hv VALUE`")
        gu, gv, hu, hv = (_int(t, line_no, "vertex") for t in toks[1:5])
        try:
            val = parse_value(toks[5])
        except ValueError as exc:
            raise ParseError(line_no, str(exc))
        overrides[((gu, gv), (hu, hv))] = val
    return ArcCostMap(default, overrides)


def emit_cost_map(eta: ArcCostMap) -> str:
    lines = []
    for (garc, harc), val in sorted(eta.overrides.items()):
        lines.append(
            f"cost {garc[0]} {garc[1]} {harc[0]} {harc[1]} {format_value(val)}"
        )
    return "\n".join(lines) + "\n"


def parse_vcsp(text: str) -> VcspInstance:
    """Parse `vcsp D N`, then `term arity v1 ... vr` with `t d1 ... dr VALUE` rows.

    Every term must list all D^arity rows (tables are dense).
    """
    domain_size = None
    num_vars = None
    terms: List[Tuple[CostFunction, Tuple[int, ...]]] = []
    current_scope: Optional[Tuple[int, ...]] = None
    current_rows: Dict[Tuple[int, ...], ExtRational] = {}
    current_line = 0

    def flush():
        nonlocal current_scope, current_rows
        if current_scope is None:
            return
        try:
            fn = CostFunction(domain_size, len(current_scope), current_rows)
        except ValueError as exc:
            raise ParseError(current_line, str(exc))
        terms.append((fn, current_scope))
        current_scope, current_rows = None, {}

    for line_no, toks in _tokenized_lines(text):
        if toks[0] == "vcsp":
            if len(toks) != 3:
                raise ParseError(line_no, "header must be `vcsp D N`")
            domain_size = _int(toks[1], line_no, "domain size")
            num_vars = _int(toks[2], line_no, "variable count")
        elif toks[0] == "term":
            if domain_size is None:
                raise ParseError(line_no, "missing `vcsp D N` header")
            flush()
            arity = _int(toks[1], line_no, "arity")
            if len(toks) != 2 + arity:
                raise ParseError(line_no, "term line must be `term arity v1 ... vr`")
            current_scope = tuple(_int(t, line_no, "variable") for t in toks[2:])
            current_line = line_no
        elif toks[0] == "t":
            if current_scope is None:
                raise ParseError(line_no, "`t` row outside a term")
            if len(toks) != 2 + len(current_scope):
                raise ParseError(line_no, "row must be `t d1 ... dr VALUE`")
            tup = tuple(_int(t, line_no, "domain value") for t in toks[1:-1])
            try:
                val = parse_value(toks[-1])
            except ValueError as exc:
                raise ParseError(line_no, str(exc))
            if tup in current_rows:
                raise ParseError(line_no, f"duplicate row {tup}")
            current_rows[tup] = val
        else:
            raise ParseError(line_no, f"unknown directive {toks[0]!r}")
    if domain_size is None:
        raise ParseError(0, "missing `vcsp D N` header")
    flush()
    try:
        return VcspInstance(domain_size, num_vars, terms)
    except ValueError as exc:
        raise ParseError(0, str(exc))


def emit_vcsp(inst: VcspInstance) -> str:
    lines = [f"vcsp {inst.domain_size} {inst.num_vars}"]
    for fn, scope in inst.terms:
        lines.append(f"term {fn.arity} " + " ".join(str(x) for x in scope))
        for tup in sorted(fn.table):
            lines.append(
                "t " + " ".join(str(d) for d in tup) + " " + format_value(fn.table[tup])
            )
    return "\n".join(lines) + "\n"


def parse_triple(text: str):
    """Parse `triple D` plus 3*D^3 lines `f idx a b c val` over domain 1..D."""
    from .polymorphisms import OperationTable, Triple

    d = None
    tables: Dict[int, Dict[Tuple[int, int, int], int]] = {1: {}, 2: {}, 3: {}}
    for line_no, toks in _tokenized_lines(text):
        if toks[0] == "triple":
            if len(toks) != 2:
                raise ParseError(line_no, "header must be `triple D`")
            d = _int(toks[1], line_no, "domain size")
        elif toks[0] == "f":
            if d is None:
                raise ParseError(line_no, "missing `triple D` header")
            if len(toks) != 6:
                raise ParseError(line_no, "line must be `f idx a b c val`")
            idx = _int(toks[1], line_no, "table index")
            if idx not in (1, 2, 3):
                raise ParseError(line_no, "table index must be 1, 2 or 3")
            a, b, c, val = (_int(t, line_no, "domain value") for t in toks[2:])
            tables[idx][(a, b, c)] = val
        else:
            raise ParseError(line_no, f"unknown directive {toks[0]!r}")
    if d is None:
        raise ParseError(0, "missing `triple D` header")
    try:
        ops = [OperationTable(range(1, d + 1), tables[i]) for i in (1, 2, 3)]
    except ValueError as exc:
        raise ParseError(0, str(exc))
    return Triple(*ops)


def emit_triple(triple) -> str:
    domain = triple.domain
    lines = [f"triple {len(domain)}"]
    for idx, op in enumerate((triple.f1, triple.f2, triple.f3), start=1):
        for a in domain:
            for b in domain:
                for c in domain:
                    lines.append(f"f {idx} {a} {b} {c} {op(a, b, c)}")
    return "\n".join(lines) + "\n"
