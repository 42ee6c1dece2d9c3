"""Edge-list files.

Line 1 holds ``n m``; each of the next ``m`` lines holds the strictly
increasing vertex indices of one edge separated by single spaces.  An empty
line is the empty edge.  UTF-8, LF line endings, one trailing newline.
"""
from pathlib import Path

from .errors import ParseError
from .hypergraph import Hypergraph, bits


def edge_line(vertices):
    return " ".join(map(str, vertices))


def iter_lines(F):
    yield f"{F.n} {len(F)}"
    for e in F.edges:
        yield edge_line(bits(e))


def format_edge_list(F):
    return "\n".join(iter_lines(F)) + "\n"


def write_edge_list(F, path):
    write_edge_rows(F.n, len(F), (bits(e) for e in F.edges), path)


def write_edge_rows(n, m, rows, path):
    """Stream ``m`` edges given as sorted vertex sequences to ``path``."""
    written = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{n} {m}\n")
        for row in rows:
            fh.write(edge_line(row))
            fh.write("\n")
            written += 1
    if written != m:
        raise ValueError(f"header promised {m} edges, wrote {written}")


def parse_edge_list(text, labels=False):
    """Parse edge-list text into a :class:`Hypergraph`.

    With ``labels=True`` vertex tokens may be arbitrary strings; they are
    mapped to ``0..n-1`` in order of first appearance.
    """
    if text.endswith("\n"):
        text = text[:-1]
    lines = text.split("\n")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError("header must be 'n m'", line=1)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError("header must hold two integers", line=1) from None
    if n < 0 or m < 0:
        raise ParseError("n and m must be non-negative", line=1)
    body = lines[1:]
    if len(body) < m:
        raise ParseError(f"expected {m} edge lines, found {len(body)}", line=len(lines) + 1)
    if any(line.strip() for line in body[m:]):
        raise ParseError("content after the last edge", line=m + 2)
    mapping = {}
    seen = set()
    masks = []
    for offset, line in enumerate(body[:m]):
        lineno = offset + 2
        tokens = line.split()
        if labels:
            vertices = []
            for tok in tokens:
                if tok not in mapping:
                    mapping[tok] = len(mapping)
                    if len(mapping) > n:
                        raise ParseError(f"more than {n} distinct labels", line=lineno)
                vertices.append(mapping[tok])
            vertices = sorted(set(vertices))
            if len(vertices) != len(tokens):
                raise ParseError("repeated vertex", line=lineno)
        else:
            try:
                vertices = [int(tok) for tok in tokens]
            except ValueError:
                raise ParseError(f"non-integer vertex in {line!r}", line=lineno) from None
            if any(b <= a for a, b in zip(vertices, vertices[1:])):
                raise ParseError("vertices must be strictly increasing", line=lineno)
            if vertices and (vertices[0] < 0 or vertices[-1] >= n):
                raise ParseError(f"vertex outside range({n})", line=lineno)
        mask = 0
        for v in vertices:
            mask |= 1 << v
        if mask in seen:
            raise ParseError("duplicate edge", line=lineno)
        seen.add(mask)
        masks.append(mask)
    return Hypergraph.from_masks(n, masks)


def read_edge_list(path, labels=False):
    return parse_edge_list(Path(path).read_text(encoding="utf-8"), labels=labels)
