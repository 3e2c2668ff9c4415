"""Best-effort symbol extraction from LaTeX formulas.

Used to enforce symbol closure: every identifier a formula references must
be a declared parameter or variable (modulo the curated lexicon).  The
extraction is lexical, never a full LaTeX parse; unparseable spans are
skipped rather than failing.
"""

from __future__ import annotations

import re

# Single capital letters that are standard decision-process / math notation
# (objective J, reward R, horizon T, state/action/value symbols, expectation)
# rather than declared quantities.  Not listed: B, K, M, N and similar, which
# surface to the closure check so display aliases and genuine misses are seen.
NOTATION_LETTERS = frozenset("AEIJPQRSTVXYZ")

_MATHFONT_RE = re.compile(r"\\math(?:bb|cal|rm|bf|frak|sf|tt)\s*\{[^{}]*\}")
_TEXT_RE = re.compile(r"\\text\s*\{([^{}]*)\}")
_COMMAND_RE = re.compile(r"\\[a-zA-Z]+")
_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*")
_CAMEL_RE = re.compile(r"^[A-Z][A-Za-z0-9]*$")


def extract_latex_symbols(formula: str) -> set[str]:
    """Return CamelCase identifiers referenced by a LaTeX formula.

    Identifiers come from ``\\text{...}`` contents and bare token runs.
    Operators, Greek letters, math-font wrappers (``\\mathbb{E}`` etc.),
    lower-case indices, and standard single-letter notation are excluded.
    """
    if not formula:
        return set()

    candidates: list[str] = []

    # \text{...} contents are the primary carrier of declared symbols
    without_text = []
    last = 0
    for m in _TEXT_RE.finditer(formula):
        candidates.extend(_IDENT_RE.findall(m.group(1)))
        without_text.append(formula[last:m.start()])
        last = m.end()
    without_text.append(formula[last:])
    rest = " ".join(without_text)

    # math-font wrappers are notation (expectation, indicator, number sets)
    rest = _MATHFONT_RE.sub(" ", rest)
    # any remaining \command is an operator or Greek letter
    rest = _COMMAND_RE.sub(" ", rest)
    candidates.extend(_IDENT_RE.findall(rest))

    out: set[str] = set()
    for tok in candidates:
        if not _CAMEL_RE.match(tok):
            continue
        if len(tok) == 1 and tok in NOTATION_LETTERS:
            continue
        out.add(tok)
    return out
