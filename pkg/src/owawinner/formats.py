"""Instance text format and PrefLib strict-order ingestion.

Instance files (``.owi``) are line oriented; ``#`` starts a comment::

    owa-winner v1
    <n> <m> <K>
    owa <alpha_1> ... <alpha_K>        (or: owa-family <name> <params...>)
    <m utilities of agent 1>
    ...
    <m utilities of agent n>

Numbers may be integers, decimals or fractions such as ``1/3``.
"""

import re
import sys

from ._validation import as_fraction
from .model import Instance, OwaVector, UtilityMatrix, borda_profile, format_number
from .owa import parse_family

MAGIC = "owa-winner v1"

_TOKEN = re.compile(r"\S+")


class InstanceFormatError(ValueError):
    """Malformed instance text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        self.message = message
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def _logical_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(content)]
        if tokens:
            yield lineno, tokens


def _number(token, lineno, col, what):
    try:
        return as_fraction(token)
    except (ValueError, ZeroDivisionError):
        raise InstanceFormatError(f"{what}: {token!r} is not a number", lineno, col) from None


def _integer(token, lineno, col, what):
    value = _number(token, lineno, col, what)
    if value.denominator != 1:
        raise InstanceFormatError(f"{what} must be an integer, got {token!r}", lineno, col)
    return int(value)


def parse_instance(text):
    """Parse instance text into a validated :class:`Instance`.

    Raises
    ------
    InstanceFormatError
        With the line and column of the first problem found.
    """
    if hasattr(text, "read"):
        text = text.read()
    lines = list(_logical_lines(text))
    if not lines:
        raise InstanceFormatError("empty instance")

    lineno, tokens = lines[0]
    if " ".join(t for t, _ in tokens) != MAGIC:
        raise InstanceFormatError(f"expected header {MAGIC!r}", lineno, tokens[0][1])

    if len(lines) < 2:
        raise InstanceFormatError("missing '<n> <m> <K>' line", lineno)
    lineno, tokens = lines[1]
    if len(tokens) != 3:
        raise InstanceFormatError("malformed header: expected '<n> <m> <K>'", lineno, tokens[0][1])
    n, m, K = (_integer(t, lineno, c, name) for (t, c), name in zip(tokens, ("n", "m", "K")))
    for value, (_, col), name in zip((n, m, K), tokens, ("n", "m", "K")):
        if value < 1:
            raise InstanceFormatError(f"{name} must be positive, got {value}", lineno, col)
    if K > m:
        raise InstanceFormatError(f"K exceeds item count ({K} > {m})", lineno, tokens[2][1])

    if len(lines) < 3:
        raise InstanceFormatError("missing 'owa' line", lineno)
    lineno, tokens = lines[2]
    keyword = tokens[0][0]
    if keyword == "owa":
        values = tokens[1:]
        if len(values) != K:
            col = values[0][1] if values else tokens[0][1]
            raise InstanceFormatError(f"OWA has {len(values)} coefficients, expected K={K}", lineno, col)
        alpha = []
        for t, col in values:
            a = _number(t, lineno, col, "OWA coefficient")
            if a < 0:
                raise InstanceFormatError(f"negative OWA coefficient {t}", lineno, col)
            alpha.append(a)
        owa = OwaVector(tuple(alpha))
    elif keyword == "owa-family":
        if len(tokens) < 2:
            raise InstanceFormatError("owa-family needs a family name", lineno, tokens[0][1])
        try:
            owa = parse_family(" ".join(t for t, _ in tokens[1:]), K)
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceFormatError(str(exc), lineno, tokens[1][1]) from None
    else:
        raise InstanceFormatError(f"expected 'owa' or 'owa-family', got {keyword!r}", lineno, tokens[0][1])
    if owa.is_zero():
        raise InstanceFormatError("all-zero OWA vector", lineno, tokens[0][1])

    rows = lines[3:]
    if len(rows) < n:
        last = rows[-1][0] if rows else lineno
        raise InstanceFormatError(f"expected {n} utility rows, found {len(rows)}", last)
    if len(rows) > n:
        raise InstanceFormatError(f"unexpected extra line (only {n} agents declared)", rows[n][0], 1)
    matrix = []
    for agent, (lineno, tokens) in enumerate(rows, start=1):
        if len(tokens) != m:
            raise InstanceFormatError(f"agent {agent} has {len(tokens)} utilities, expected {m}", lineno, tokens[0][1])
        row = []
        for t, col in tokens:
            v = _number(t, lineno, col, "utility")
            if v < 0:
                raise InstanceFormatError(f"negative utility {t}", lineno, col)
            row.append(v)
        matrix.append(row)
    return Instance(UtilityMatrix(matrix), owa)


def serialize_instance(instance):
    """Instance text accepted by :func:`parse_instance` (explicit OWA coefficients)."""
    lines = [MAGIC]
    if instance.owa.family:
        lines.append(f"# owa-family {instance.owa.family}")
    lines.append(f"{instance.n} {instance.m} {instance.K}")
    lines.append("owa " + " ".join(format_number(a) for a in instance.owa.alpha))
    for row in instance.utilities.u:
        lines.append(" ".join(format_number(v) for v in row))
    return "\n".join(lines) + "\n"


def read_instance(path):
    """Read an instance from a path, or from stdin when ``path`` is ``-``."""
    if str(path) == "-":
        return parse_instance(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


_ALTERNATIVES = re.compile(r"#\s*NUMBER ALTERNATIVES\s*:\s*(\d+)", re.IGNORECASE)


def _parse_item(token, lineno):
    token = token.strip()
    if token.lower().startswith("a"):
        token = token[1:]
    if not token.isdigit() or int(token) < 1:
        raise InstanceFormatError(f"bad alternative {token!r}", lineno)
    return int(token) - 1


def read_preflib_rankings(text):
    """Rankings (0-based item lists) from PrefLib strict complete orders.

    Data lines look like ``3: 1,2,3,4``; the count before the colon expands
    to that many identical agents.  Weak orders (``{...}``) are rejected.
    """
    m = None
    rankings = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            hit = _ALTERNATIVES.match(line)
            if hit:
                m = int(hit.group(1))
            continue
        if "{" in line or "}" in line:
            raise InstanceFormatError("weak orders are not supported", lineno)
        count_text, sep, order_text = line.partition(":")
        if not sep:
            raise InstanceFormatError("expected '<count>: <ranking>'", lineno)
        if not count_text.strip().isdigit():
            raise InstanceFormatError(f"bad multiplicity {count_text.strip()!r}", lineno)
        order = [_parse_item(t, lineno) for t in order_text.split(",")]
        if m is None:
            m = len(order)
        if sorted(order) != list(range(m)):
            raise InstanceFormatError(f"ranking is not a complete strict order over {m} items", lineno)
        rankings.extend([order] * int(count_text))
    if not rankings:
        raise InstanceFormatError("no rankings found")
    return rankings


def read_preflib_soc(text):
    """Borda utility matrix for a PrefLib ``.soc`` file."""
    return borda_profile(read_preflib_rankings(text))
