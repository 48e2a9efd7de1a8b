"""Plain-text serialization of upward closed families (the ".upset" format).

Layout: a header line ``n=<int>`` followed by one generator per non-empty
line, written as comma-separated ascending element labels from [n], with
the literal ``{}`` standing for the empty set (whose closure is the full
cube).  A file with only the header denotes the empty family.  Reading
takes the upward closure of whatever generators are listed; writing
emits the minimal elements in (cardinality, mask) order, so write→read
round-trips exactly.
"""

from __future__ import annotations

import re
from pathlib import Path

from .setcube import (
    N_MAX,
    Family,
    elements_from_mask,
    family_from_points,
    mask_from_elements,
    minimal_elements,
    up_closure,
)
from .errors import OutOfRange, UpsetFormatError

_HEADER = re.compile(r"^n\s*=\s*(\d+)$")


def parse_upset(text: str, close: bool = True) -> Family:
    """Parse .upset text into the upward closure of its listed generators.

    close=False skips the closure and returns the bare generator family
    (used to report how much a closure pass actually adds).
    """
    lines = [ln.strip() for ln in text.splitlines()]
    body = [ln for ln in lines if ln]
    if not body:
        raise UpsetFormatError("missing 'n=<int>' header line")
    m = _HEADER.match(body[0])
    if not m:
        raise UpsetFormatError(f"bad header line {body[0]!r}, expected 'n=<int>'")
    n = int(m.group(1))
    if n > N_MAX:
        raise UpsetFormatError(f"n={n} exceeds N_MAX={N_MAX}")

    points = []
    for ln in body[1:]:
        if ln == "{}":
            points.append(0)
            continue
        try:
            elems = [int(tok) for tok in ln.split(",")]
        except ValueError:
            raise UpsetFormatError(f"unparseable generator line {ln!r}") from None
        if len(set(elems)) != len(elems):
            raise UpsetFormatError(f"duplicate element in generator line {ln!r}")
        try:
            points.append(mask_from_elements(elems, n))
        except OutOfRange as exc:
            raise UpsetFormatError(f"{exc} in generator line {ln!r}") from None
    raw = family_from_points(n, points)
    return up_closure(raw) if close else raw


def format_upset(fam: Family) -> str:
    """Render a family as .upset text (requires upward closedness)."""
    out = [f"n={fam.n}"]
    for mask in minimal_elements(fam):
        out.append(",".join(map(str, elements_from_mask(mask))) if mask else "{}")
    return "\n".join(out) + "\n"


def read_upset(path: str | Path) -> Family:
    return parse_upset(Path(path).read_text())


def write_upset(fam: Family, path: str | Path) -> None:
    Path(path).write_text(format_upset(fam))
