"""Readers and writers for graphs and parity-check matrices.

Edge lists: first line ``V E``, then ``E`` lines ``u v`` (0-based); ``#``
starts a comment.  Dense matrices: whitespace-separated rows.  Alist
(MacKay): ``n m``, ``max_col_weight max_row_weight``, the ``n`` column
weights, the ``m`` row weights, ``n`` lines of 1-based row indices per column,
then ``m`` lines of 1-based column indices per row; zero padding is allowed.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import GraphError, InputFormatError
from .graph import UndirectedMultigraph, build_graph


def _lines(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputFormatError(f"cannot read file: {exc.strerror}", path) from exc
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append((no, body.split()))
    return out


def _ints(tokens, path, line):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputFormatError(f"expected integers, got {' '.join(tokens)!r}", path, line) from None


def read_edge_list(path) -> UndirectedMultigraph:
    lines = _lines(path)
    if not lines:
        raise InputFormatError("empty edge list", path)
    no, head = lines[0]
    vals = _ints(head, path, no)
    if len(vals) != 2 or min(vals) < 0:
        raise InputFormatError("header must be 'V E' with nonnegative counts", path, no)
    V, E = vals
    body = lines[1:]
    if len(body) != E:
        last = body[-1][0] if body else no
        raise InputFormatError(f"header declares {E} edges, found {len(body)}", path, last)
    edges = []
    for no, toks in body:
        e = _ints(toks, path, no)
        if len(e) != 2:
            raise InputFormatError("edge line must be 'u v'", path, no)
        edges.append(tuple(e))
    try:
        return build_graph(V, edges)
    except GraphError as exc:
        raise InputFormatError(str(exc), path) from exc


def write_edge_list(g: UndirectedMultigraph, path) -> None:
    rows = [f"{g.num_vertices} {g.num_edges}"] + [f"{a} {b}" for a, b in g.edges]
    Path(path).write_text("\n".join(rows) + "\n")


def read_dense(path, binary: bool = True) -> np.ndarray:
    lines = _lines(path)
    if not lines:
        raise InputFormatError("empty matrix file", path)
    rows = []
    width = None
    for no, toks in lines:
        if binary:
            row = _ints(toks, path, no)
            if any(x not in (0, 1) for x in row):
                raise InputFormatError("parity-check entries must be 0 or 1", path, no)
        else:
            try:
                row = [float(t) for t in toks]
            except ValueError:
                raise InputFormatError(f"expected numbers, got {' '.join(toks)!r}", path, no) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputFormatError(f"row has {len(row)} entries, expected {width}", path, no)
        rows.append(row)
    return np.array(rows, dtype=np.int64 if binary else float)


def read_alist(path) -> np.ndarray:
    lines = _lines(path)
    if len(lines) < 4:
        raise InputFormatError("alist needs at least four header lines", path)
    no, toks = lines[0]
    dims = _ints(toks, path, no)
    if len(dims) != 2 or min(dims) < 1:
        raise InputFormatError("first line must be 'n m' with positive counts", path, no)
    n, m = dims
    no2, toks = lines[1]
    maxes = _ints(toks, path, no2)
    if len(maxes) != 2:
        raise InputFormatError("second line must hold the maximum column and row weights", path, no2)
    no3, toks = lines[2]
    col_w = _ints(toks, path, no3)
    if len(col_w) != n:
        raise InputFormatError(f"expected {n} column weights, got {len(col_w)}", path, no3)
    no4, toks = lines[3]
    row_w = _ints(toks, path, no4)
    if len(row_w) != m:
        raise InputFormatError(f"expected {m} row weights, got {len(row_w)}", path, no4)
    if max(col_w) != maxes[0] or max(row_w) != maxes[1]:
        raise InputFormatError("maximum weights do not match the weight lists", path, no2)
    if sum(col_w) != sum(row_w):
        raise InputFormatError("column and row weights have different totals", path, no4)
    body = lines[4:]
    if len(body) != n + m:
        raise InputFormatError(f"expected {n + m} index lines, found {len(body)}", path)
    H = np.zeros((m, n), dtype=np.int64)
    for i, (no, toks) in enumerate(body[:n]):
        idx = [x for x in _ints(toks, path, no) if x != 0]
        if len(idx) != col_w[i] or len(set(idx)) != len(idx):
            raise InputFormatError(f"column {i + 1} lists {len(idx)} distinct rows, weight says {col_w[i]}", path, no)
        for r in idx:
            if not 1 <= r <= m:
                raise InputFormatError(f"row index {r} outside 1..{m}", path, no)
            H[r - 1, i] = 1
    H_rows = np.zeros_like(H)
    for j, (no, toks) in enumerate(body[n:]):
        idx = [x for x in _ints(toks, path, no) if x != 0]
        if len(idx) != row_w[j] or len(set(idx)) != len(idx):
            raise InputFormatError(f"row {j + 1} lists {len(idx)} distinct columns, weight says {row_w[j]}", path, no)
        for c in idx:
            if not 1 <= c <= n:
                raise InputFormatError(f"column index {c} outside 1..{n}", path, no)
            H_rows[j, c - 1] = 1
    if not np.array_equal(H, H_rows):
        raise InputFormatError("column lists and row lists describe different matrices", path)
    return H


def write_alist(H, path) -> None:
    H = np.asarray(H, dtype=np.int64)
    m, n = H.shape
    col_w = H.sum(axis=0).tolist()
    row_w = H.sum(axis=1).tolist()
    mc, mr = max(col_w), max(row_w)
    rows = [f"{n} {m}", f"{mc} {mr}", " ".join(map(str, col_w)), " ".join(map(str, row_w))]
    for i in range(n):
        idx = (np.flatnonzero(H[:, i]) + 1).tolist()
        rows.append(" ".join(map(str, idx + [0] * (mc - len(idx)))))
    for j in range(m):
        idx = (np.flatnonzero(H[j]) + 1).tolist()
        rows.append(" ".join(map(str, idx + [0] * (mr - len(idx)))))
    Path(path).write_text("\n".join(rows) + "\n")
