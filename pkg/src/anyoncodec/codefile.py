"""The textual code-file format.

Line 1 holds "n k"; the next k tokens are generator rows of n characters
over {0,1}.  '#' starts a comment, whitespace (including line breaks inside
the row list) is insignificant.  Writing is canonical: the RREF basis, one
row per line, so equal codes serialize to identical bytes.
"""

from __future__ import annotations

from .errors import ParseError
from .gf2 import BinaryCode, BitVector, make_code


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        col = 0
        for raw in body.split():
            col = body.index(raw, col)
            yield raw, lineno, col + 1
            col += len(raw)


def parse_code(text: str) -> BinaryCode:
    toks = list(_tokens(text))
    if len(toks) < 2:
        raise ParseError("expected a header line 'n k'", line=1)
    (n_tok, n_line, n_col), (k_tok, k_line, k_col) = toks[0], toks[1]
    try:
        n = int(n_tok)
    except ValueError:
        raise ParseError(f"code length {n_tok!r} is not an integer", line=n_line, column=n_col)
    try:
        k = int(k_tok)
    except ValueError:
        raise ParseError(f"row count {k_tok!r} is not an integer", line=k_line, column=k_col)
    if n < 1 or k < 0:
        raise ParseError(f"bad header n={n}, k={k}", line=n_line)
    digits = []
    for tok, lineno, col in toks[2:]:
        if any(c not in "01" for c in tok):
            raise ParseError(f"row token {tok!r} contains non-binary characters", line=lineno, column=col)
        digits.append((tok, lineno, col))
    stream = "".join(tok for tok, _, _ in digits)
    if len(stream) != n * k:
        where = digits[-1][1] if digits else (toks[1][1] if len(toks) >= 2 else 1)
        raise ParseError(
            f"expected {n * k} row bits for {k} rows of length {n}, got {len(stream)}",
            line=where,
        )
    rows = [BitVector.from_string(stream[i * n : (i + 1) * n]) for i in range(k)]
    return make_code(n, rows)


def format_code(code: BinaryCode, header_comment: str | None = None) -> str:
    lines = []
    if header_comment is not None:
        lines.append(f"# {header_comment}")
    lines.append(f"{code.length} {code.dimension}")
    for b in code.basis:
        lines.append(str(b))
    return "\n".join(lines) + "\n"


def read_code(path) -> BinaryCode:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code(fh.read())


def write_code(path, code: BinaryCode, header_comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_code(code, header_comment))
