"""Line-oriented text formats for circuits, signature tensors and implementations.

``.qct``::

    QUDITS d n
    M 0 4          # one gate per line: Z/S/M/P q k, SUM/SUMINV c t (0-based)

``.sig``::

    SIG d n
    1 2 3 1/6      # a <= b <= c, 1-based; value an integer or p/q literal

``.imp``::

    IMP d n m
    1 1 -1 -1      # n rows of A
    ...
    ---
    1/24 1/24 1/24 1/24

``.lin`` (the linear part ``E`` of an extracted circuit)::

    LIN d n
    <n rows of n entries>

``#`` starts a comment. Scalars accept negative and ``p/q`` literals.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .circuit import GATE_NAMES, Circuit, Gate
from .field import check_modulus, parse_scalar
from .phasepoly import Implementation, SignatureTensor


class FormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None, source: str = "<text>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + msg)
        self.line = line


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body


def _int(tok: str, what: str, no: int, src: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {tok!r}", no, src) from None


def _scalar(tok: str, d: int, no: int, src: str) -> int:
    try:
        return parse_scalar(tok, d)
    except (ValueError, ZeroDivisionError) as e:
        raise FormatError(f"bad scalar {tok!r}: {e}", no, src) from None


def _header(lines, tag: str, nfields: int, src: str) -> tuple[int, list[int]]:
    try:
        no, body = next(lines)
    except StopIteration:
        raise FormatError(f"missing {tag} header", None, src) from None
    toks = body.split()
    if toks[0] != tag or len(toks) != nfields + 1:
        raise FormatError(f"expected header '{tag}' with {nfields} fields, got {body!r}", no, src)
    vals = [_int(t, f"{tag} field", no, src) for t in toks[1:]]
    try:
        check_modulus(vals[0])
    except ValueError as e:
        raise FormatError(str(e), no, src) from None
    if any(v < 0 for v in vals[1:]):
        raise FormatError("sizes must be non-negative", no, src)
    return no, vals


# ---- circuits ------------------------------------------------------------


def parse_circuit(text: str, source: str = "<qct>") -> Circuit:
    lines = _lines(text)
    _, (d, n) = _header(lines, "QUDITS", 2, source)
    gates = []
    for no, body in lines:
        toks = body.split()
        name = toks[0].upper()
        if name not in GATE_NAMES:
            raise FormatError(f"unknown gate {toks[0]!r}", no, source)
        if len(toks) != 3:
            raise FormatError(f"{name} takes exactly 2 fields", no, source)
        if name in ("SUM", "SUMINV"):
            c, t = (_int(x, "qudit index", no, source) for x in toks[1:])
            qudits, param = (c, t), 1
        else:
            qudits = (_int(toks[1], "qudit index", no, source),)
            param = _scalar(toks[2], d, no, source)
        try:
            gate = Gate(name, qudits, param)
            Circuit(d, n, (gate,))
        except ValueError as e:
            raise FormatError(str(e), no, source) from None
        gates.append(gate)
    return Circuit(d, n, tuple(gates))


def format_circuit(circ: Circuit) -> str:
    return "\n".join([f"QUDITS {circ.d} {circ.n}", *map(str, circ.gates)]) + "\n"


# ---- signature tensors ---------------------------------------------------


def parse_signature(text: str, source: str = "<sig>") -> SignatureTensor:
    lines = _lines(text)
    _, (d, n) = _header(lines, "SIG", 2, source)
    entries: dict = {}
    for no, body in lines:
        toks = body.split()
        if len(toks) != 4:
            raise FormatError("expected 'a b c value'", no, source)
        idx = tuple(_int(t, "index", no, source) for t in toks[:3])
        if not all(1 <= i <= n for i in idx):
            raise FormatError(f"indices must lie in 1..{n}", no, source)
        if list(idx) != sorted(idx):
            raise FormatError("indices must satisfy a <= b <= c", no, source)
        key = tuple(i - 1 for i in idx)
        if key in entries:
            raise FormatError(f"duplicate entry for {idx}", no, source)
        entries[key] = _scalar(toks[3], d, no, source)
    return SignatureTensor(n, d, entries)


def format_signature(S: SignatureTensor) -> str:
    rows = [f"{a + 1} {b + 1} {c + 1} {v}" for (a, b, c), v in S.entries.items()]
    return "\n".join([f"SIG {S.d} {S.n}", *rows]) + "\n"


# ---- implementations -----------------------------------------------------


def parse_implementation(text: str, source: str = "<imp>") -> Implementation:
    lines = _lines(text)
    hno, (d, n, m) = _header(lines, "IMP", 3, source)
    rows = []
    lam = None
    seen_sep = False
    for no, body in lines:
        if body == "---":
            if seen_sep:
                raise FormatError("second '---' separator", no, source)
            seen_sep = True
            continue
        toks = body.split()
        if len(toks) != m:
            raise FormatError(f"expected {m} entries, got {len(toks)}", no, source)
        vals = [_scalar(t, d, no, source) for t in toks]
        if not seen_sep:
            rows.append(vals)
        elif lam is None:
            lam = vals
        else:
            raise FormatError("extra line after the weight row", no, source)
    if not seen_sep:
        raise FormatError("missing '---' separator", None, source)
    if len(rows) != (n if m else 0):
        raise FormatError(f"expected {n} rows of A, got {len(rows)}", hno, source)
    if m and lam is None:
        raise FormatError("missing weight row", None, source)
    A = np.array(rows, dtype=np.int64).reshape(n, m)
    try:
        return Implementation(A, np.array(lam or [], dtype=np.int64), d)
    except ValueError as e:
        raise FormatError(str(e), None, source) from None


def format_implementation(imp: Implementation) -> str:
    out = [f"IMP {imp.d} {imp.n} {imp.m}"]
    if imp.m:
        out += [" ".join(str(int(v)) for v in row) for row in imp.A]
    out.append("---")
    if imp.m:
        out.append(" ".join(str(int(v)) for v in imp.lam))
    return "\n".join(out) + "\n"


# ---- linear part ---------------------------------------------------------


def format_linear(E: np.ndarray, d: int) -> str:
    return "\n".join([f"LIN {d} {len(E)}", *(" ".join(str(int(v)) for v in row) for row in E)]) + "\n"


def parse_linear(text: str, source: str = "<lin>") -> tuple[np.ndarray, int]:
    lines = _lines(text)
    _, (d, n) = _header(lines, "LIN", 2, source)
    rows = []
    for no, body in lines:
        toks = body.split()
        if len(toks) != n:
            raise FormatError(f"expected {n} entries", no, source)
        rows.append([_scalar(t, d, no, source) for t in toks])
    if len(rows) != n:
        raise FormatError(f"expected {n} rows, got {len(rows)}", None, source)
    return np.array(rows, dtype=np.int64).reshape(n, n), d


# ---- files ---------------------------------------------------------------

_PARSERS = {".qct": parse_circuit, ".sig": parse_signature, ".imp": parse_implementation}
_FORMATTERS = {Circuit: format_circuit, SignatureTensor: format_signature, Implementation: format_implementation}


def load(path) -> Circuit | SignatureTensor | Implementation:
    """Read a file, choosing the parser from its suffix."""
    path = Path(path)
    try:
        parser = _PARSERS[path.suffix]
    except KeyError:
        raise FormatError(f"unknown file type {path.suffix!r}", None, str(path)) from None
    return parser(path.read_text(encoding="utf-8"), str(path))


def dump(obj, path) -> None:
    Path(path).write_text(_FORMATTERS[type(obj)](obj), encoding="utf-8")
