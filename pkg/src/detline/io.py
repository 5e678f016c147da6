"""JSON forms of operators, triples, squares and elements.

Rationals are "p/q" strings ("p" when q = 1) and matrices are arrays of
arrays of such strings. Matrix shapes come from the surrounding operators,
so maps out of or into zero-dimensional spaces round-trip.
"""

from __future__ import annotations

from .exactq import (
    RationalMatrix, Subspace, matrix_from_json, matrix_to_json, rational_from_str,
    rational_to_str, vectors_from_json, vectors_to_json,
)
from .fredholm import DetLineElement, FinOperator, det_line
from .multilinear import LineElement, LineSpace
from .triples import EdgeMap, ExactSquare, ExactTriple


def operator_to_json(D: FinOperator) -> dict:
    return {"matrix": matrix_to_json(D.matrix), "domain": D.domain_dim, "codomain": D.codomain_dim}


def operator_from_json(data: dict) -> FinOperator:
    return FinOperator(matrix_from_json(data["matrix"], int(data["codomain"]), int(data["domain"])))


def triple_to_json(t: ExactTriple) -> dict:
    out = {"Dp": operator_to_json(t.Dp), "D": operator_to_json(t.D), "Dpp": operator_to_json(t.Dpp)}
    for name in ("iX", "jX", "iY", "jY"):
        out[name] = matrix_to_json(getattr(t, name))
    return out


def triple_from_json(data: dict, check: bool = True) -> ExactTriple:
    Dp, D, Dpp = (operator_from_json(data[k]) for k in ("Dp", "D", "Dpp"))
    m = lambda k, r, c: matrix_from_json(data[k], r, c)
    return ExactTriple(
        Dp, D, Dpp,
        m("iX", D.domain_dim, Dp.domain_dim), m("jX", Dpp.domain_dim, D.domain_dim),
        m("iY", D.codomain_dim, Dp.codomain_dim), m("jY", Dpp.codomain_dim, D.codomain_dim),
        check=check)


def det_element_to_json(e: DetLineElement) -> dict:
    return {"operator": operator_to_json(e.operator),
            "kernel_frame": vectors_to_json(e.kernel_part.frame),
            "cokernel_frame": vectors_to_json(e.cokernel_part.frame),
            "scalar": rational_to_str(e.scalar)}


def det_element_from_json(data: dict, operator: FinOperator | None = None) -> DetLineElement:
    D = operator if operator is not None else operator_from_json(data["operator"])
    if operator is not None and "operator" in data and operator_from_json(data["operator"]) != D:
        raise ValueError("element operator does not match")
    return det_line(D, vectors_from_json(data.get("kernel_frame", [])),
                    vectors_from_json(data.get("cokernel_frame", [])),
                    rational_from_str(str(data.get("scalar", "1"))))


def line_space_to_json(s: LineSpace) -> dict:
    return {"ambient": s.ambient_dim, "numerator": vectors_to_json(s.numerator.basis),
            "denominator": vectors_to_json(s.denominator.basis), "dual": s.dual}


def line_space_from_json(data: dict) -> LineSpace:
    n = int(data["ambient"])
    return LineSpace(Subspace.span(n, vectors_from_json(data["numerator"])),
                     Subspace.span(n, vectors_from_json(data["denominator"])), bool(data["dual"]))


def line_element_to_json(e: LineElement) -> dict:
    return {"space": line_space_to_json(e.space), "frame": vectors_to_json(e.frame),
            "scalar": rational_to_str(e.scalar), "dual": e.dual}


def line_element_from_json(data: dict) -> LineElement:
    space = line_space_from_json(data["space"])
    if bool(data.get("dual", space.dual)) != space.dual:
        raise ValueError("dual flag disagrees with the space")
    return LineElement(space, vectors_from_json(data["frame"]), rational_from_str(str(data["scalar"])))


def _edge_to_json(e: EdgeMap) -> dict:
    return {"X": matrix_to_json(e.X), "Y": matrix_to_json(e.Y)}


def square_to_json(sq: ExactSquare) -> dict:
    return {"ops": {k: operator_to_json(v) for k, v in sq.ops.items()},
            "rows": {r: [_edge_to_json(e) for e in sq.row_maps[r]] for r in sq.row_maps},
            "cols": {c: [_edge_to_json(e) for e in sq.col_maps[c]] for c in sq.col_maps}}


def square_from_json(data: dict) -> ExactSquare:
    ops = {k: operator_from_json(v) for k, v in data["ops"].items()}

    def edge(d, src, dst):
        return EdgeMap(matrix_from_json(d["X"], ops[dst].domain_dim, ops[src].domain_dim),
                       matrix_from_json(d["Y"], ops[dst].codomain_dim, ops[src].codomain_dim))
    rows = {r: (edge(data["rows"][r][0], r + "L", r + "M"), edge(data["rows"][r][1], r + "M", r + "R"))
            for r in "TCB"}
    cols = {c: (edge(data["cols"][c][0], "T" + c, "C" + c), edge(data["cols"][c][1], "C" + c, "B" + c))
            for c in "LMR"}
    return ExactSquare(ops, rows, cols)


def matrix_json(m: RationalMatrix) -> dict:
    return {"rows": m.nrows, "cols": m.ncols, "entries": matrix_to_json(m)}
