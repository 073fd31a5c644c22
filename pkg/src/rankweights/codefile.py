"""Reading and writing rank-metric code files.

Two formats describe the same data: a line-oriented text format for
people and a JSON alternative for machines.  Field elements are always
written as numbers, never as symbolic polynomials.

Text format::

    # comment lines and blank lines are ignored
    p 2            # prime characteristic
    s 1            # K = GF(p^s); optional, default 1
    m 3            # L = GF(q^m) with q = p^s
    k_poly ...     # s+1 ints over GF(p); required when s > 1
    l_poly 1 1 0 1 # m+1 coefficients over K; optional (default table)
    n 4
    gen 1,0,0 0,1,0 0,0,1 1,1,0
    gen 1,0,0 0,1,0 0,0,1 0,1,1

Each generator entry is an L-element written as its m little-endian
K-coefficients joined by commas; a K-coefficient is an integer 0..p-1
when s = 1 and s colon-joined integers otherwise.  The same shapes
appear in JSON as nested lists under the keys ``field`` (p, s, m,
k_poly, l_poly), ``n`` and ``generators``.
"""

from __future__ import annotations

import json

from .code import RankCode
from .errors import ParseError
from .gf import ExtensionField, FieldSpec, field_make


# ---------------------------------------------------------------------------
# element <-> token helpers
# ---------------------------------------------------------------------------

def _k_to_digits(F: ExtensionField, c: int) -> list[int]:
    if F.s == 1:
        return [c]
    return list(F.K.digits(c))


def _k_from_digits(F: ExtensionField, digits, line=None, pos=None) -> int:
    if any(not isinstance(d, int) or not 0 <= d < F.p for d in digits):
        raise ParseError(f"K-coefficient digits must be integers in 0..{F.p - 1}", line, pos)
    if F.s == 1:
        if len(digits) != 1:
            raise ParseError("K-coefficient must be a single integer when s = 1", line, pos)
        return digits[0]
    if len(digits) != F.s:
        raise ParseError(f"K-coefficient needs {F.s} digits, got {len(digits)}", line, pos)
    return F.K.from_digits(digits)


def _entry_to_token(F: ExtensionField, x: int) -> str:
    parts = []
    for c in F.coeffs(x):
        digits = _k_to_digits(F, c)
        parts.append(":".join(str(d) for d in digits) if F.s > 1 else str(digits[0]))
    return ",".join(parts)


def _entry_from_token(F: ExtensionField, token: str, line=None, pos=None) -> int:
    parts = token.split(",")
    if len(parts) != F.m:
        raise ParseError(f"entry needs {F.m} K-coefficients, got {len(parts)}", line, pos)
    coeffs = []
    for part in parts:
        try:
            digits = [int(d) for d in part.split(":")]
        except ValueError:
            raise ParseError(f"bad K-coefficient {part!r}", line, pos) from None
        coeffs.append(_k_from_digits(F, digits, line, pos))
    return F.from_coeffs(coeffs)


def _entry_to_json(F: ExtensionField, x: int):
    out = []
    for c in F.coeffs(x):
        out.append(int(c) if F.s == 1 else _k_to_digits(F, c))
    return out


def _entry_from_json(F: ExtensionField, obj, line=None, pos=None) -> int:
    if not isinstance(obj, list) or len(obj) != F.m:
        raise ParseError(f"entry must be a list of {F.m} K-coefficients", line, pos)
    coeffs = []
    for c in obj:
        digits = [c] if isinstance(c, int) else c
        if not isinstance(digits, list):
            raise ParseError("K-coefficient must be an int or a list of ints", line, pos)
        coeffs.append(_k_from_digits(F, digits, line, pos))
    return F.from_coeffs(coeffs)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

_INT_KEYS = ("p", "s", "m", "n")


def parse_text(text: str) -> RankCode:
    header: dict = {}
    gen_lines: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key in _INT_KEYS:
            if len(rest) != 1 or not rest[0].lstrip("-").isdigit():
                raise ParseError(f"{key} needs a single integer", lineno)
            header[key] = (int(rest[0]), lineno)
        elif key in ("k_poly", "l_poly"):
            header[key] = (rest, lineno)
        elif key == "gen":
            gen_lines.append((lineno, rest))
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    for need in ("p", "m", "n"):
        if need not in header:
            raise ParseError(f"missing required key {need!r}")
    p, _ = header["p"]
    s, _ = header.get("s", (1, None))
    m, _ = header["m"]
    n, n_line = header["n"]
    if n < 1:
        raise ParseError("n must be >= 1", n_line)

    kp_tokens, kp_line = header.get("k_poly", ([], None))
    try:
        k_poly = tuple(int(t) for t in kp_tokens)
    except ValueError:
        raise ParseError("k_poly coefficients must be integers", kp_line) from None
    if k_poly and len(k_poly) != s + 1:
        raise ParseError(f"k_poly needs {s + 1} coefficients", kp_line)

    # l_poly coefficients are K-elements, so parse them after the base
    # field is known; build K via a spec with l_poly defaulted first.
    base_spec = FieldSpec(p, s, m, k_poly, ())
    F_default = field_make(base_spec)
    lp_tokens, lp_line = header.get("l_poly", ([], None))
    if lp_tokens:
        if len(lp_tokens) != m + 1:
            raise ParseError(f"l_poly needs {m + 1} coefficients", lp_line)
        l_poly = []
        for i, tok in enumerate(lp_tokens):
            try:
                digits = [int(d) for d in tok.split(":")]
            except ValueError:
                raise ParseError(f"bad l_poly coefficient {tok!r}", lp_line, i) from None
            l_poly.append(_k_from_digits(F_default, digits, lp_line, i))
        F = field_make(FieldSpec(p, s, m, k_poly, tuple(l_poly)))
    else:
        F = F_default

    rows = []
    for lineno, tokens in gen_lines:
        if len(tokens) != n:
            raise ParseError(f"generator needs {n} entries, got {len(tokens)}", lineno)
        rows.append([_entry_from_token(F, tok, lineno, i) for i, tok in enumerate(tokens)])
    return RankCode(F, n, rows)


def serialize_text(code: RankCode) -> str:
    F = code.field
    out = [f"p {F.p}"]
    if F.s != 1:
        out.append(f"s {F.s}")
        out.append("k_poly " + " ".join(str(c) for c in F.spec.k_poly))
    out.append(f"m {F.m}")
    lp = []
    for c in F.spec.l_poly:
        digits = _k_to_digits(F, c)
        lp.append(":".join(str(d) for d in digits) if F.s > 1 else str(digits[0]))
    out.append("l_poly " + " ".join(lp))
    out.append(f"n {code.n}")
    for row in code.gen.rows:
        out.append("gen " + " ".join(_entry_to_token(F, x) for x in row))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# JSON format
# ---------------------------------------------------------------------------

def field_to_json(F: ExtensionField) -> dict:
    k_poly = [int(c) for c in F.spec.k_poly]
    l_poly = [_entry_coeff_json(F, c) for c in F.spec.l_poly]
    return {"p": F.p, "s": F.s, "m": F.m, "k_poly": k_poly, "l_poly": l_poly}


def _entry_coeff_json(F: ExtensionField, c: int):
    return int(c) if F.s == 1 else _k_to_digits(F, c)


def to_json_obj(code: RankCode) -> dict:
    F = code.field
    return {
        "field": field_to_json(F),
        "n": code.n,
        "generators": [[_entry_to_json(F, x) for x in row] for row in code.gen.rows],
    }


def parse_json_obj(obj) -> RankCode:
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    fld = obj.get("field")
    if not isinstance(fld, dict):
        raise ParseError("missing 'field' object")
    try:
        p = int(fld["p"])
        s = int(fld.get("s", 1))
        m = int(fld["m"])
        n = int(obj["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad or missing field/n data: {exc}") from None
    k_poly = tuple(int(c) for c in fld.get("k_poly", []))
    base = field_make(FieldSpec(p, s, m, k_poly, ()))
    raw_lp = fld.get("l_poly", [])
    if raw_lp:
        if len(raw_lp) != m + 1:
            raise ParseError(f"l_poly needs {m + 1} coefficients")
        l_poly = tuple(
            _k_from_digits(base, [c] if isinstance(c, int) else c) for c in raw_lp
        )
        F = field_make(FieldSpec(p, s, m, k_poly, l_poly))
    else:
        F = base
    gens = obj.get("generators", [])
    if not isinstance(gens, list):
        raise ParseError("'generators' must be a list")
    rows = []
    for i, g in enumerate(gens):
        if not isinstance(g, list) or len(g) != n:
            raise ParseError(f"generator {i} must be a list of {n} entries", pos=i)
        rows.append([_entry_from_json(F, e, pos=j) for j, e in enumerate(g)])
    return RankCode(F, n, rows)


def serialize_json(code: RankCode) -> str:
    return json.dumps(to_json_obj(code), sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def parse(text: str) -> RankCode:
    """Parse either format, deciding by the first non-space character."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}", line=exc.lineno) from None
        return parse_json_obj(obj)
    return parse_text(text)


def load(path: str) -> RankCode:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


EXAMPLE_TEXT = """\
# length-4 code over GF(8) whose support fills K^4 although no single
# codeword has full rank support (m = 3 < n = 4)
p 2
m 3
l_poly 1 1 0 1
n 4
gen 1,0,0 0,1,0 0,0,1 1,1,0
gen 1,0,0 0,1,0 0,0,1 0,1,1
"""


def example_code() -> RankCode:
    """The built-in demonstration code (see EXAMPLE_TEXT)."""
    return parse_text(EXAMPLE_TEXT)
