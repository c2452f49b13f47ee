"""Turn an oriented table grid into RDF triples and Turtle text.

The header row becomes the schema: the top-left header names the instance
class and every other header mints a property.  Each data row becomes one
instance typed with that class, labelled by its first cell and carrying one
literal-valued property per remaining non-empty cell.  Vertical tables are
transposed first so both orientations share one code path.
"""

from __future__ import annotations

import re
import unicodedata
import urllib.parse
from dataclasses import dataclass
from typing import List, Tuple, Union

from .errors import DegenerateTable, InvalidBaseUri
from .extraction import CellGrid

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"

_IRI_FORBIDDEN = re.compile(r'[\x00-\x20<>"{}|^`\\]')


@dataclass(frozen=True)
class IRI:
    value: str

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Literal:
    value: str

    def __str__(self):
        return self.value


Term = Union[IRI, Literal]
Triple = Tuple[IRI, IRI, Term]


@dataclass(frozen=True)
class TripleSet:
    triples: Tuple[Triple, ...]
    namespace: str

    def __len__(self):
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)


def _slug_char(c: str) -> bool:
    if c.isascii():
        return c.isalnum()
    # non-ASCII letters in the ranges Turtle accepts unescaped in local names
    return ord(c) >= 0xC0 and unicodedata.category(c).startswith("L")


def slugify(text: str) -> str:
    text = "-".join(text.lower().split())
    text = "".join(c for c in text if c == "-" or _slug_char(c))
    text = re.sub(r"-{2,}", "-", text)
    return text.strip("-")


def check_base_uri(base_uri: str) -> str:
    parts = urllib.parse.urlsplit(base_uri)
    if not parts.scheme or not (parts.netloc or parts.path) or _IRI_FORBIDDEN.search(base_uri):
        raise InvalidBaseUri(f"not an absolute IRI: {base_uri!r}")
    if not base_uri.endswith(("/", "#")):
        raise InvalidBaseUri(f"base IRI must end with '/' or '#': {base_uri!r}")
    return base_uri


def mint_predicates(headers: List[str], first_column: int = 2) -> List[str]:
    """Slug each header, falling back to ``col<j>`` and suffixing duplicates."""
    seen = set()
    out = []
    for offset, header in enumerate(headers):
        base = slugify(header) or f"col{first_column + offset}"
        name, k = base, 1
        while name in seen:
            k += 1
            name = f"{base}-{k}"
        seen.add(name)
        out.append(name)
    return out


def to_triples(grid: CellGrid, orientation: str, base_uri: str) -> TripleSet:
    check_base_uri(base_uri)
    if orientation not in ("horizontal", "vertical"):
        raise ValueError(f"orientation must be 'horizontal' or 'vertical', got {orientation!r}")
    if grid.n < 2 or grid.m < 2:
        raise DegenerateTable(f"need at least a 2x2 grid, got {grid.n}x{grid.m}")
    if orientation == "vertical":
        grid = grid.transpose()

    header = grid.row(0)
    cls = IRI(base_uri + (slugify(header[0]) or "Entity"))
    predicates = [IRI(base_uri + p) for p in mint_predicates(list(header[1:]))]
    label = IRI(RDFS_LABEL)
    rdf_type = IRI(RDF_TYPE)

    triples: List[Triple] = []
    for i in range(1, grid.n):
        row = grid.row(i)
        subject = IRI(f"{base_uri}row{i}")
        triples.append((subject, rdf_type, cls))
        if row[0]:
            triples.append((subject, label, Literal(row[0])))
        for pred, value in zip(predicates, row[1:]):
            if value:
                triples.append((subject, pred, Literal(value)))
    return TripleSet(tuple(triples), base_uri)


# -- Turtle -----------------------------------------------------------------

_ESCAPES = {'"': '\\"', "\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t",
            "\b": "\\b", "\f": "\\f"}


def escape_literal(s: str) -> str:
    out = []
    for c in s:
        if c in _ESCAPES:
            out.append(_ESCAPES[c])
        elif ord(c) < 0x20 or ord(c) == 0x7F:
            out.append(f"\\u{ord(c):04X}")
        else:
            out.append(c)
    return '"' + "".join(out) + '"'


def _iri_term(iri: IRI, namespace: str) -> str:
    if iri.value == RDF_TYPE:
        return "a"
    local = iri.value[len(namespace):] if iri.value.startswith(namespace) else None
    if local and slugify(local) == local:
        return ":" + local
    return f"<{iri.value}>"


def _subject_key(iri: IRI, namespace: str):
    m = re.fullmatch(re.escape(namespace) + r"row(\d+)", iri.value)
    return (0, int(m.group(1)), "") if m else (1, 0, iri.value)


def serialize_turtle(ts: TripleSet) -> str:
    ns = ts.namespace
    lines = [f"@prefix : <{ns}> ."]
    by_subject = {}
    for s, p, o in ts.triples:
        by_subject.setdefault(s, []).append((p, o))
    for subject in sorted(by_subject, key=lambda s: _subject_key(s, ns)):
        pairs = sorted(
            by_subject[subject],
            key=lambda po: (po[0].value, isinstance(po[1], Literal), po[1].value),
        )
        rendered = []
        for p, o in pairs:
            obj = escape_literal(o.value) if isinstance(o, Literal) else _iri_term(o, ns)
            rendered.append(f"{_iri_term(p, ns)} {obj}")
        lines.append("")
        lines.append(f"{_iri_term(subject, ns)} " + " ;\n    ".join(rendered) + " .")
    return "\n".join(lines) + "\n"
