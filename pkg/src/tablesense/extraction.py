"""Locate leaf ``<table>`` elements in HTML and turn them into rectangular grids.

Parsing goes through html5lib, which implements the WHATWG tree-construction
algorithm, so broken markup is recovered the same way a browser would recover
it (unclosed cells and rows are closed, stray text is foster-parented out of
the table).
"""

from __future__ import annotations

import codecs
import re
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple

import html5lib

from .errors import (
    DecodeError,
    DegenerateTable,
    EmptyDocument,
    NetworkError,
    NotFound,
    UnsupportedScheme,
)

DEFAULT_CHARSET = "utf-8"

# Elements whose text never reaches a rendered cell.
_SKIP_TEXT = frozenset({"script", "style", "template", "noscript"})
_IMPLICIT = frozenset({"html", "head", "body"})
_META_CHARSET = re.compile(
    rb"""<meta[^>]+charset\s*=\s*["']?\s*([A-Za-z0-9_.:\-]+)""", re.IGNORECASE
)

# Upper bounds used by browsers for span attributes.
_MAX_COLSPAN = 1000
_MAX_ROWSPAN = 65534


@dataclass(frozen=True)
class SourceDocument:
    uri: str
    body: bytes
    charset: str = DEFAULT_CHARSET

    def text(self) -> str:
        try:
            codec = codecs.lookup(self.charset)
        except LookupError as exc:
            raise DecodeError(f"unknown charset {self.charset!r} for {self.uri}") from exc
        try:
            return self.body.decode(codec.name, errors="strict")
        except UnicodeDecodeError as exc:
            raise DecodeError(
                f"{self.uri}: body is not valid {self.charset}: {exc.reason} at byte {exc.start}"
            ) from exc


@dataclass(frozen=True)
class Cell:
    text: str
    row_span: int = 1
    col_span: int = 1


@dataclass(frozen=True)
class RawTable:
    document_uri: str
    index: int
    rows: Tuple[Tuple[Cell, ...], ...]

    @property
    def source(self) -> Tuple[str, int]:
        return (self.document_uri, self.index)


@dataclass(frozen=True)
class CellGrid:
    cells: Tuple[Tuple[str, ...], ...]
    source: Tuple[str, int] = ("", 0)
    n: int = field(init=False)
    m: int = field(init=False)

    def __post_init__(self):
        cells = tuple(tuple(row) for row in self.cells)
        if not cells or not cells[0]:
            raise DegenerateTable("grid must have at least one row and one column")
        width = len(cells[0])
        if any(len(row) != width for row in cells):
            raise ValueError("grid rows must all have the same length")
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "n", len(cells))
        object.__setattr__(self, "m", width)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[str]], source=("", 0)) -> "CellGrid":
        return cls(tuple(tuple(r) for r in rows), source=source)

    def __getitem__(self, ij: Tuple[int, int]) -> str:
        i, j = ij
        return self.cells[i][j]

    def row(self, i: int) -> Tuple[str, ...]:
        return self.cells[i]

    def column(self, j: int) -> Tuple[str, ...]:
        return tuple(row[j] for row in self.cells)

    def transpose(self) -> "CellGrid":
        return CellGrid(tuple(zip(*self.cells)), source=self.source)


def normalize_text(s: str) -> str:
    return " ".join(s.split())


# -- fetching ---------------------------------------------------------------

def sniff_meta_charset(body: bytes) -> Optional[str]:
    match = _META_CHARSET.search(body[:4096])
    if match:
        return match.group(1).decode("ascii").lower()
    return None


def _read_local(path: Path, uri: str) -> SourceDocument:
    try:
        body = path.read_bytes()
    except FileNotFoundError as exc:
        raise NotFound(f"no such file: {path}") from exc
    except IsADirectoryError as exc:
        raise NotFound(f"not a file: {path}") from exc
    except OSError as exc:
        raise NotFound(f"cannot read {path}: {exc}") from exc
    return SourceDocument(uri=uri, body=body, charset=sniff_meta_charset(body) or DEFAULT_CHARSET)


def fetch_source(uri: str, timeout: float = 10.0) -> SourceDocument:
    """Load an HTML document from an http(s) URL or a local path.

    The charset is taken from the Content-Type header if present, then from a
    ``<meta charset>`` declaration, then defaults to UTF-8.
    """
    parsed = urllib.parse.urlsplit(uri)
    scheme = parsed.scheme.lower()
    # "C:\\..." parses with a one-letter scheme
    if not scheme or (len(scheme) == 1 and uri[1:2] == ":"):
        return _read_local(Path(uri), uri)
    if scheme == "file":
        return _read_local(Path(urllib.request.url2pathname(parsed.path)), uri)
    if scheme not in ("http", "https"):
        raise UnsupportedScheme(f"unsupported URI scheme {scheme!r}: {uri}")

    request = urllib.request.Request(uri, headers={"User-Agent": "tablesense/0.1"})
    try:
        with urllib.request.urlopen(request, timeout=timeout) as resp:
            body = resp.read()
            header_charset = resp.headers.get_content_charset()
    except urllib.error.HTTPError as exc:
        if exc.code in (404, 410):
            raise NotFound(f"{uri}: HTTP {exc.code}") from exc
        raise NetworkError(f"{uri}: HTTP {exc.code}") from exc
    except (urllib.error.URLError, TimeoutError, OSError) as exc:
        raise NetworkError(f"{uri}: {exc}") from exc

    charset = header_charset or sniff_meta_charset(body) or DEFAULT_CHARSET
    return SourceDocument(uri=uri, body=body, charset=charset)


# -- parsing ----------------------------------------------------------------

def _local(tag) -> str:
    if not isinstance(tag, str):
        return ""  # comments, processing instructions
    return tag.rsplit("}", 1)[-1].lower()


def _cell_text(elem) -> str:
    parts: List[str] = []

    def walk(node):
        name = _local(node.tag)
        if name in _SKIP_TEXT or not isinstance(node.tag, str):
            return
        if name == "br":
            parts.append(" ")
        if node.text:
            parts.append(node.text)
        for child in node:
            walk(child)
            if child.tail:
                parts.append(child.tail)

    walk(elem)
    return normalize_text("".join(parts))


def _span(value: Optional[str], limit: int) -> int:
    if value is None:
        return 1
    match = re.match(r"\s*(\d+)", value)
    if not match:
        return 1
    return min(max(int(match.group(1)), 1), limit)


def _has_content(root) -> bool:
    for node in root.iter():
        if node.tail and node.tail.strip():
            return True
        if not isinstance(node.tag, str):
            continue
        if _local(node.tag) not in _IMPLICIT or (node.text and node.text.strip()):
            return True
    return False


def parse_html(text: str):
    return html5lib.parse(text, treebuilder="etree", namespaceHTMLElements=False)


def iter_leaf_tables(root) -> Iterator:
    """Yield ``<table>`` elements with no ``<table>`` descendant, in document order."""
    for elem in root.iter():
        if _local(elem.tag) != "table":
            continue
        if any(_local(d.tag) == "table" for d in elem.iter() if d is not elem):
            continue
        yield elem


def _raw_rows(table) -> Tuple[Tuple[Cell, ...], ...]:
    rows = []
    for tr in table.iter():
        if _local(tr.tag) != "tr":
            continue
        cells = tuple(
            Cell(
                text=_cell_text(td),
                row_span=_span(td.get("rowspan"), _MAX_ROWSPAN),
                col_span=_span(td.get("colspan"), _MAX_COLSPAN),
            )
            for td in tr
            if _local(td.tag) in ("td", "th")
        )
        if cells:
            rows.append(cells)
    return tuple(rows)


def parse_document(doc: SourceDocument) -> List[RawTable]:
    if not doc.body or not doc.body.strip():
        raise EmptyDocument(f"{doc.uri}: empty body")
    text = doc.text()
    root = parse_html(text)
    if not _has_content(root):
        raise EmptyDocument(f"{doc.uri}: no element content")
    return [
        RawTable(document_uri=doc.uri, index=i, rows=_raw_rows(table))
        for i, table in enumerate(iter_leaf_tables(root))
    ]


def expand_spans(raw: RawTable) -> List[List[str]]:
    """Expand row/col spans by duplication and right-pad ragged rows with ``""``."""
    n_rows = len(raw.rows)
    placed = {}
    width = 0
    for r, row in enumerate(raw.rows):
        c = 0
        for cell in row:
            while (r, c) in placed:
                c += 1
            for dr in range(cell.row_span):
                if r + dr >= n_rows:
                    break
                for dc in range(cell.col_span):
                    placed[(r + dr, c + dc)] = cell.text
            c += cell.col_span
            width = max(width, c)
    # a rowspan can reach further right than its own row's cells
    if placed:
        width = max(width, max(c for _, c in placed) + 1)

    return [[placed.get((r, c), "") for c in range(width)] for r in range(n_rows)]


def normalize_grid(raw: RawTable) -> CellGrid:
    rows = expand_spans(raw)
    n_rows, width = len(rows), len(rows[0]) if rows else 0
    if n_rows < 2 or width < 2:
        raise DegenerateTable(
            f"table {raw.index} of {raw.document_uri} is {n_rows}x{width}; need at least 2x2"
        )
    return CellGrid.from_rows(rows, source=raw.source)


def extract_tables(doc: SourceDocument) -> List[Tuple[RawTable, object]]:
    """Parse ``doc`` and pair each leaf table with its grid or normalization error."""
    out = []
    for raw in parse_document(doc):
        try:
            out.append((raw, normalize_grid(raw)))
        except DegenerateTable as exc:
            out.append((raw, exc))
    return out
