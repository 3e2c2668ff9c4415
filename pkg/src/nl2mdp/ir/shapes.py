"""Shape expression grammar for parameter and variable declarations.

Grammar::

    shape := '[' [ dim (',' dim)* [','] ] ']'
    dim   := term ('+' term)*
    term  := INTEGER | IDENT

`[]` is a scalar (rank 0).  Symbolic terms stay unevaluated until IR
validation resolves them against declared scalar integer parameters;
sums such as `1 + 2 + n + n` are kept term-by-term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ShapeSyntaxError

_TERM_RE = re.compile(r"^(?:[0-9]+|[A-Za-z][A-Za-z0-9]*)$")


@dataclass(frozen=True)
class ShapeDim:
    """One dimension: a sum of integer literals and/or parameter symbols."""

    terms: tuple[int | str, ...]

    def symbols(self) -> set[str]:
        return {t for t in self.terms if isinstance(t, str)}

    def render(self) -> str:
        return " + ".join(str(t) for t in self.terms)


@dataclass(frozen=True)
class ShapeExpr:
    """Parsed shape; rank 0 is an empty dims tuple."""

    dims: tuple[ShapeDim, ...]

    @property
    def rank(self) -> int:
        return len(self.dims)

    def symbols(self) -> set[str]:
        out: set[str] = set()
        for d in self.dims:
            out |= d.symbols()
        return out

    def render(self) -> str:
        """Canonical source form; reparses to an equal ShapeExpr."""
        return "[" + ", ".join(d.render() for d in self.dims) + "]"


def parse_shape(text: str) -> ShapeExpr:
    """Parse a bracketed dimension list into a ShapeExpr.

    Raises ShapeSyntaxError on unbalanced brackets or illegal tokens.
    """
    if not isinstance(text, str):
        raise ShapeSyntaxError(f"shape must be a string, got {type(text).__name__}")
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ShapeSyntaxError(f"shape must be bracketed: {text!r}")
    inner = s[1:-1].strip()
    if "[" in inner or "]" in inner:
        raise ShapeSyntaxError(f"nested brackets not allowed: {text!r}")
    if not inner:
        return ShapeExpr(dims=())
    if inner == ",":
        raise ShapeSyntaxError(f"empty dimension: {text!r}")

    raw_dims = inner.split(",")
    # trailing comma form "[4,]" leaves one empty tail element
    if raw_dims and raw_dims[-1].strip() == "":
        raw_dims = raw_dims[:-1]

    dims: list[ShapeDim] = []
    for raw in raw_dims:
        raw = raw.strip()
        if not raw:
            raise ShapeSyntaxError(f"empty dimension in {text!r}")
        terms: list[int | str] = []
        for piece in raw.split("+"):
            piece = piece.strip()
            if not _TERM_RE.match(piece):
                raise ShapeSyntaxError(f"illegal shape term {piece!r} in {text!r}")
            terms.append(int(piece) if piece.isdigit() else piece)
        dims.append(ShapeDim(terms=tuple(terms)))
    return ShapeExpr(dims=tuple(dims))
