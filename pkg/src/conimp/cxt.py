"""Burmeister CXT reading and writing.

Layout::

    B
    <blank>
    <object count>
    <attribute count>
    <blank>
    <object names, one per line>
    <attribute names, one per line>
    <one row per object, 'X' incident, '.' not>

Input may use ``\\n`` or ``\\r\\n``; output always uses ``\\n`` and ends
with a newline.
"""

from __future__ import annotations

from conimp.context import ContextError, FormalContext


class CxtError(ContextError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)


def serialize_cxt(K: FormalContext) -> str:
    lines = ["B", "", str(len(K.objects)), str(len(K.attributes)), ""]
    lines.extend(K.objects)
    lines.extend(K.attributes)
    for row in K.incidence:
        lines.append("".join("X" if j in row else "." for j in range(len(K.attributes))))
    return "\n".join(lines) + "\n"


def parse_cxt(text: str) -> FormalContext:
    lines = text.replace("\r\n", "\n").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    # trailing blank lines carry no data
    while lines and not lines[-1].strip() and len(lines) > 5:
        lines.pop()

    def line(no: int) -> str:
        if no > len(lines):
            raise CxtError("unexpected end of file", no)
        return lines[no - 1]

    if line(1).strip() != "B":
        raise CxtError("malformed header: expected 'B'", 1)
    if line(2).strip():
        raise CxtError("malformed header: expected blank line", 2)
    counts = []
    for no in (3, 4):
        raw = line(no).strip()
        if not raw.isdigit():
            raise CxtError(f"malformed header: expected a count, got {raw!r}", no)
        counts.append(int(raw))
    n_obj, n_attr = counts
    if line(5).strip():
        raise CxtError("malformed header: expected blank line", 5)

    first = 6
    objects = [line(first + i) for i in range(n_obj)]
    first += n_obj
    attributes = [line(first + j) for j in range(n_attr)]
    first += n_attr

    incidence = []
    for i in range(n_obj):
        no = first + i
        row = line(no)
        if len(row) != n_attr:
            raise CxtError(
                f"dimension mismatch: row has {len(row)} entries, expected {n_attr}", no
            )
        cells = set()
        for j, ch in enumerate(row):
            if ch == "X":
                cells.add(j)
            elif ch != ".":
                raise CxtError(f"illegal incidence character {ch!r}", no)
        incidence.append(frozenset(cells))
    extra = first + n_obj
    if len(lines) >= extra:
        raise CxtError("dimension mismatch: unexpected content after last row", extra)
    try:
        return FormalContext(tuple(objects), tuple(attributes), tuple(incidence))
    except CxtError:
        raise
    except ContextError as exc:
        raise CxtError(str(exc)) from exc
