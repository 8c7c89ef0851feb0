# ssspx/formats/dimacs.py
"""
DIMACS shortest-path `.gr` files.

    c <comment>
    p sp <n> <m>
    a <u> <v> <w>

Vertex ids are 1-based on disk and 0-based in memory. Weights may be
integers or reals written with repr(), so real-weight corpora round-trip
exactly.
"""
import logging
import math
from pathlib import Path
from typing import IO, Iterable, Iterator, List, Optional, Union

from ssspx.core.graph import Graph, validate
from ssspx.utils.errors import ParseError

logger = logging.getLogger(__name__)

Source = Union[str, Path, Iterable[str]]


def _parse_weight(token: str, line_no: int) -> float:
    try:
        return float(int(token))
    except ValueError:
        pass
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"weight {token!r} is not a number", line_no) from None


def _parse_id(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"vertex id {token!r} is not an integer", line_no) from None


def parse_lines(lines: Iterable[str]) -> Graph:
    n: Optional[int] = None
    m_declared = 0
    problem_line = 0
    src: List[int] = []
    dst: List[int] = []
    weight: List[float] = []
    line_no = 0

    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line[0] == 'c':
            continue
        parts = line.split()
        tag = parts[0]
        if tag == 'p':
            if n is not None:
                raise ParseError(f"duplicate problem line (first on line {problem_line})", line_no)
            if len(parts) != 4 or parts[1] != 'sp':
                raise ParseError("problem line must read 'p sp <n> <m>'", line_no)
            n = _parse_id(parts[2], line_no)
            m_declared = _parse_id(parts[3], line_no)
            if n < 1 or m_declared < 0:
                raise ParseError(f"bad sizes n={n} m={m_declared}", line_no)
            problem_line = line_no
        elif tag == 'a':
            if n is None:
                raise ParseError("arc before the problem line", line_no)
            if len(parts) != 4:
                raise ParseError("arc line must read 'a <u> <v> <w>'", line_no)
            src.append(_parse_id(parts[1], line_no) - 1)
            dst.append(_parse_id(parts[2], line_no) - 1)
            weight.append(_parse_weight(parts[3], line_no))
        else:
            raise ParseError(f"unknown line type {tag!r}", line_no)

    if n is None:
        raise ParseError("missing problem line", max(line_no, 1))
    if len(src) != m_declared:
        raise ParseError(f"problem line declares {m_declared} arcs, found {len(src)}", problem_line)

    g = Graph(n, src, dst, weight)
    validate(g)
    return g


def _decoded(raw_lines: Iterable[bytes]) -> Iterator[str]:
    for line_no, raw in enumerate(raw_lines, start=1):
        try:
            yield raw.decode('utf-8')
        except UnicodeDecodeError as e:
            raise ParseError(f"not valid UTF-8 ({e.reason})", line_no) from None


def parse_dimacs(source: Source) -> Graph:
    """Reads a path or any iterable of lines."""
    if isinstance(source, (str, Path)):
        with open(source, 'rb') as f:
            g = parse_lines(_decoded(f))
        logger.info("parsed %s: n=%d m=%d", source, g.n, g.m)
        return g
    return parse_lines(source)


def format_weight(w: float) -> str:
    if math.isfinite(w) and w.is_integer() and abs(w) < 2 ** 53:
        return str(int(w))
    return repr(w)


def dump_lines(g: Graph, comments: Iterable[str] = ()) -> List[str]:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p sp {g.n} {g.m}")
    for u, v, w in g.edges():
        lines.append(f"a {u + 1} {v + 1} {format_weight(w)}")
    return lines


def write_dimacs(g: Graph, target: Union[str, Path, IO[str]], comments: Iterable[str] = ()):
    text = '\n'.join(dump_lines(g, comments)) + '\n'
    if isinstance(target, (str, Path)):
        with open(target, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info("wrote %s: n=%d m=%d", target, g.n, g.m)
    else:
        target.write(text)
