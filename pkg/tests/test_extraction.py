import http.server
import socket
import threading

import pytest

from tablesense.errors import (
    DecodeError,
    DegenerateTable,
    EmptyDocument,
    NetworkError,
    NotFound,
    UnsupportedScheme,
)
from tablesense.extraction import (
    Cell,
    RawTable,
    SourceDocument,
    expand_spans,
    extract_tables,
    fetch_source,
    normalize_grid,
    parse_document,
    parse_html,
    iter_leaf_tables,
)


def doc(html, charset="utf-8"):
    return SourceDocument("mem://page", html.encode(charset), charset)


def raw(*rows):
    return RawTable("mem://page", 0, tuple(tuple(r) for r in rows))


def test_flat_table():
    tables = parse_document(doc("<table><tr><td>a</td><td>b</td></tr><tr><td>c</td><td>d</td></tr></table>"))
    assert len(tables) == 1
    assert [[c.text for c in r] for r in tables[0].rows] == [["a", "b"], ["c", "d"]]


def test_nested_table_yields_only_inner():
    html = """<table><tr><td>menu</td><td>
        <table><tr><td>x</td><td>y</td></tr><tr><td>1</td><td>2</td></tr></table>
      </td></tr></table>"""
    tables = parse_document(doc(html))
    assert len(tables) == 1
    assert tables[0].rows[0][0].text == "x"


def test_leaf_property_holds_for_fixture(pages):
    root = parse_html((pages / "cities.html").read_text(encoding="utf-8"))
    for table in iter_leaf_tables(root):
        assert not [e for e in table.iter("table") if e is not table]


def test_no_tables():
    assert parse_document(doc("<p>hello</p>")) == []


def test_document_order_and_count_stable():
    html = "".join(f"<table><tr><td>{i}</td><td>x</td></tr><tr><td>y</td><td>z</td></tr></table>"
                   for i in range(4))
    first = parse_document(doc(html))
    assert [t.rows[0][0].text for t in first] == ["0", "1", "2", "3"]
    assert [t.index for t in first] == [0, 1, 2, 3]
    assert parse_document(doc(html)) == first


def test_broken_markup_is_recovered():
    html = "<table><tr><td>a<td>b<tr><td>c<td>d</table>"
    (t,) = parse_document(doc(html))
    assert normalize_grid(t).cells == (("a", "b"), ("c", "d"))


def test_cell_text_normalization():
    html = "<table><tr><td> a <b>bold</b>\n x<script>no()</script></td><td>p<br>q</td></tr></table>"
    (t,) = parse_document(doc(html))
    assert [c.text for c in t.rows[0]] == ["a bold x", "p q"]


def test_colspan_duplicates_text():
    g = normalize_grid(raw([Cell("h", col_span=2)], [Cell("a"), Cell("b")]))
    assert g.cells == (("h", "h"), ("a", "b"))


def test_rowspan_duplicates_text():
    g = normalize_grid(raw([Cell("k", row_span=2), Cell("a")], [Cell("b")]))
    assert g.cells == (("k", "a"), ("k", "b"))


def test_ragged_rows_are_padded():
    g = normalize_grid(raw([Cell("a"), Cell("b"), Cell("c")], [Cell("d"), Cell("e")],
                           [Cell("f"), Cell("g"), Cell("h")]))
    assert (g.n, g.m) == (3, 3)
    assert g[1, 2] == ""


def test_rowspan_clipped_at_table_end():
    assert expand_spans(raw([Cell("a", row_span=5), Cell("b")], [Cell("c")])) == [["a", "b"], ["a", "c"]]


def test_degenerate_tables():
    with pytest.raises(DegenerateTable):
        normalize_grid(raw([Cell("only")]))
    with pytest.raises(DegenerateTable):
        normalize_grid(raw([Cell("a"), Cell("b")]))
    results = extract_tables(doc("<table><tr><td>x</td></tr></table>"))
    assert isinstance(results[0][1], DegenerateTable)


def test_empty_documents():
    with pytest.raises(EmptyDocument):
        parse_document(doc("   "))
    with pytest.raises(EmptyDocument):
        parse_document(doc("<!-- nothing -->"))


def test_strict_decoding():
    bad = SourceDocument("mem://bad", b"<p>\xff\xfe</p>", "utf-8")
    with pytest.raises(DecodeError):
        parse_document(bad)
    with pytest.raises(DecodeError):
        SourceDocument("mem://x", b"x", "no-such-charset").text()


def test_local_fixture(pages):
    path = pages / "contacts.html"
    d = fetch_source(str(path))
    assert d.body == path.read_bytes()
    assert d.charset == "utf-8"
    assert fetch_source(path.as_uri()).body == d.body


def test_meta_charset_is_sniffed(pages):
    d = fetch_source(str(pages / "roads.html"))
    assert d.charset == "windows-1251"
    tables = parse_document(d)
    assert any("А" <= ch <= "я" for t in tables for r in t.rows for c in r for ch in c.text)


def test_missing_and_unsupported(tmp_path):
    with pytest.raises(NotFound):
        fetch_source(str(tmp_path / "nope.html"))
    with pytest.raises(UnsupportedScheme):
        fetch_source("ftp://example.org/x.html")


@pytest.fixture
def server():
    body = "<table><tr><td>Город</td><td>x</td></tr><tr><td>a</td><td>b</td></tr></table>".encode("windows-1251")

    class Handler(http.server.BaseHTTPRequestHandler):
        def do_GET(self):
            if self.path == "/missing":
                self.send_error(404)
                return
            if self.path == "/boom":
                self.send_error(500)
                return
            self.send_response(200)
            self.send_header("Content-Type", "text/html; charset=windows-1251")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def log_message(self, *args):
            pass

    httpd = http.server.HTTPServer(("127.0.0.1", 0), Handler)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{httpd.server_address[1]}"
    httpd.shutdown()
    httpd.server_close()


def test_http_header_charset(server):
    d = fetch_source(server + "/page")
    assert d.charset == "windows-1251"
    assert parse_document(d)[0].rows[0][0].text == "Город"


def test_http_errors(server):
    with pytest.raises(NotFound):
        fetch_source(server + "/missing")
    with pytest.raises(NetworkError):
        fetch_source(server + "/boom")


def test_unreachable_host():
    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    sock.close()
    with pytest.raises(NetworkError):
        fetch_source(f"http://127.0.0.1:{port}/", timeout=2)
