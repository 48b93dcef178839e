"""Matrix files and the JSON / CSV encodings of regions and reports.

Matrix file example (GF(8) with modulus a^3 + a + 1 packed as 0b1011 = 11)::

    # comment
    q 8
    mod 11
    k 3
    n 5
    row 1 2 6 2 3
    row 2 3 2 5 7
    row 4 2 6 4 3

Field elements are base-p digit-packed polynomials in the generator.
All indices in JSON output are 1-based; rationals are ``"num/den"`` strings.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Iterable, Sequence

from .errors import InvalidArgumentError
from .gfield import FieldSpec, is_prime, prime_power
from .gfmatrix import GenMatrix
from .ratpoly import EQ, LE, Halfspace, Polytope, frac, frac_str
from .recovery import members


class MatrixFormatError(InvalidArgumentError):
    def __init__(self, message: str, line: int | None = None, source: str = "<matrix>"):
        self.line = line
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def _int_token(tok: str, what: str, line: int, source: str) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise MatrixFormatError(f"{what} must be an integer, got {tok!r}", line, source) from None


def parse_matrix(text: str, source: str = "<matrix>") -> GenMatrix:
    header: dict[str, tuple[int, int]] = {}
    rows: list[tuple[tuple[int, ...], int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *args = line.split()
        if key in ("q", "mod", "k", "n"):
            if rows:
                raise MatrixFormatError(f"directive {key!r} after the first row", lineno, source)
            if key in header:
                raise MatrixFormatError(f"duplicate directive {key!r}", lineno, source)
            if len(args) != 1:
                raise MatrixFormatError(f"directive {key!r} takes one integer", lineno, source)
            header[key] = (_int_token(args[0], key, lineno, source), lineno)
        elif key == "row":
            vals = tuple(_int_token(a, "entry", lineno, source) for a in args)
            rows.append((vals, lineno))
        else:
            raise MatrixFormatError(f"unknown directive {key!r}", lineno, source)

    for key in ("q", "k", "n"):
        if key not in header:
            raise MatrixFormatError(f"missing directive {key!r}", None, source)
    q, qline = header["q"]
    k, kline = header["k"]
    n, nline = header["n"]
    pm = prime_power(q) if q > 1 else None
    if pm is None:
        raise MatrixFormatError(f"q={q} is not a prime power", qline, source)
    if is_prime(q):
        if "mod" in header:
            raise MatrixFormatError(f"prime field q={q} takes no 'mod' directive", header["mod"][1], source)
        field = FieldSpec(q)
    else:
        if "mod" not in header:
            raise MatrixFormatError(f"q={q} is not prime; a 'mod' directive is required", qline, source)
        mod, mline = header["mod"]
        try:
            field = FieldSpec(pm[0], pm[1], mod)
        except InvalidArgumentError as e:
            raise MatrixFormatError(str(e), mline, source) from None
    if k < 1:
        raise MatrixFormatError(f"k must be positive, got {k}", kline, source)
    if n < 1:
        raise MatrixFormatError(f"n must be positive, got {n}", nline, source)
    if len(rows) != k:
        last = rows[-1][1] if rows else None
        raise MatrixFormatError(f"expected {k} rows, found {len(rows)}", last, source)
    for vals, lineno in rows:
        if len(vals) != n:
            raise MatrixFormatError(f"row has {len(vals)} entries, expected n={n}", lineno, source)
        for v in vals:
            if not 0 <= v < q:
                raise MatrixFormatError(f"entry {v} outside [0, {q})", lineno, source)
    return GenMatrix(field, tuple(v for v, _ in rows))


def load_matrix(path: str | Path) -> GenMatrix:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InvalidArgumentError(f"cannot read {path}: {e.strerror}") from None
    return parse_matrix(text, str(path))


def format_matrix(G: GenMatrix) -> str:
    f = G.field
    lines = [f"q {f.q}"]
    if f.m > 1:
        lines.append(f"mod {f.modulus}")
    lines += [f"k {G.k}", f"n {G.n}"]
    lines += ["row " + " ".join(map(str, r)) for r in G.rows]
    return "\n".join(lines) + "\n"


# -- JSON --------------------------------------------------------------------

def point_strs(x: Sequence) -> list[str]:
    return [frac_str(v) for v in x]


def set_list(mask: int) -> list[int]:
    return [j + 1 for j in members(mask)]


def halfspace_dict(h: Halfspace) -> dict:
    return {"coeffs": point_strs(h.coeffs), "relation": h.relation, "bound": frac_str(h.bound)}


def polytope_dict(P: Polytope) -> dict:
    out: dict[str, Any] = {"dim": P.dim, "halfspaces": [halfspace_dict(h) for h in P.halfspaces]}
    if P.vertices is not None:
        out["vertices"] = [point_strs(v) for v in P.vertices]
    return out


def polytope_from_dict(d: dict) -> Polytope:
    try:
        dim = int(d["dim"])
        hs = []
        for h in d["halfspaces"]:
            rel = h.get("relation", LE)
            if rel not in (LE, EQ):
                raise InvalidArgumentError(f"unknown relation {rel!r}")
            hs.append(Halfspace(tuple(frac(c) for c in h["coeffs"]), frac(h["bound"]), rel))
        verts = d.get("vertices")
        if verts is not None:
            verts = tuple(tuple(frac(c) for c in v) for v in verts)
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidArgumentError(f"malformed polytope JSON: {e}") from None
    return Polytope(dim, tuple(hs), verts)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# -- CSV ---------------------------------------------------------------------

def rows_csv(rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow([v if isinstance(v, str) else frac_str(v) for v in r])
    return buf.getvalue()


def vertices_csv(P: Polytope) -> str:
    """One vertex per line, coordinates as rationals."""
    if P.vertices is None:
        raise InvalidArgumentError(f"no vertex list for a {P.dim}-dimensional region; take a section first")
    return rows_csv(P.vertices)
