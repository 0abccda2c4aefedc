import io
import logging
import os
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from geometry.arrangement3d import Arrangement3
from geometry.errors import InstanceIOError, ParseError
from geometry.exact import Line2, Plane, format_rational, parse_rational

logger = logging.getLogger(__name__)


def _read_text(path: str) -> str:
    try:
        with open(path, "r") as f:
            return f.read()
    except OSError as error:
        raise InstanceIOError(f"Cannot read {path}: {error}") from error


def _parse_rows(text: str, width: int, path: Optional[str] = None) -> List[List]:
    rows = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        fields = content.split()
        if len(fields) != width:
            raise ParseError(
                f"expected {width} rational literals, found {len(fields)}",
                line_number,
                path,
            )
        try:
            rows.append([parse_rational(value) for value in fields])
        except ValueError as error:
            raise ParseError(str(error), line_number, path) from error
    return rows


def parse_planes(text: str, path: Optional[str] = None) -> List[Plane]:
    """
    Parse planes from text: one ``a b c d`` row per plane, ``#`` starts a comment.
    Plane ids are the row order among non-comment rows.
    """
    planes = []
    for index, row in enumerate(_parse_rows(text, 4, path)):
        try:
            planes.append(Plane(*row, id=index))
        except ValueError as error:
            raise ParseError(str(error), _row_line_number(text, index), path) from error
    return planes


def parse_lines(text: str, path: Optional[str] = None) -> List[Line2]:
    """
    Parse lines from text: one ``a b c`` row per line, same conventions as planes.
    """
    lines = []
    for index, row in enumerate(_parse_rows(text, 3, path)):
        try:
            lines.append(Line2(*row, id=index))
        except ValueError as error:
            raise ParseError(str(error), _row_line_number(text, index), path) from error
    return lines


def _row_line_number(text: str, row_index: int) -> int:
    seen = -1
    for line_number, raw in enumerate(text.splitlines(), start=1):
        if raw.split("#", 1)[0].strip():
            seen += 1
            if seen == row_index:
                return line_number
    return line_number


def parse_planes_file(path: str) -> List[Plane]:
    return parse_planes(_read_text(path), path)


def parse_lines_file(path: str) -> List[Line2]:
    return parse_lines(_read_text(path), path)


def parse_plane(text: str) -> Plane:
    """
    Parse a single inline plane such as ``"1 1 1 -1/2"``.
    """
    planes = parse_planes(text)
    if len(planes) != 1:
        raise ParseError(f"expected exactly one plane, found {len(planes)}", 1)
    return planes[0]


def parse_line(text: str) -> Line2:
    lines = parse_lines(text)
    if len(lines) != 1:
        raise ParseError(f"expected exactly one line, found {len(lines)}", 1)
    return lines[0]


def format_planes(planes: Sequence[Plane], header: Optional[str] = None) -> str:
    rows = [f"# {line}" for line in (header or "").splitlines()]
    rows += [str(plane) for plane in planes]
    return "\n".join(rows) + "\n"


def format_lines(lines: Sequence[Line2], header: Optional[str] = None) -> str:
    rows = [f"# {line}" for line in (header or "").splitlines()]
    rows += [str(line) for line in lines]
    return "\n".join(rows) + "\n"


def write_text(text: str, path: str) -> None:
    try:
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, "w", newline="\n") as f:
            f.write(text)
    except OSError as error:
        raise InstanceIOError(f"Cannot write {path}: {error}") from error


def emit_csv(rows: List[Dict[str, Any]], path: Optional[str] = None) -> str:
    """
    Write rows as CSV (comma separated, header row, LF line endings) and return the text.

    Args:
        rows (List[Dict[str, Any]]): Rows sharing one column order; exact values should
            already be formatted as strings.
        path (str, optional): Destination file; nothing is written when None.

    Returns:
        str: The CSV text.
    """
    frame = pd.DataFrame(rows)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n", float_format="%.10g")
    text = buffer.getvalue()
    if path is not None:
        write_text(text, path)
        logger.info(f"Wrote {len(rows)} rows to {path}")
    return text


def dump_arrangement(arr: Arrangement3) -> str:
    """
    Text dump with fixed sections and field order, so dumps of two builds can be diffed.
    """
    out = [
        f"PLANES {arr.n}",
        *(f"{plane.id}: {plane}" for plane in arr.planes),
        f"BOX {format_rational(arr.box_half_width)}",
        f"VERTICES {len(arr.vertices)}",
    ]
    for vertex_id, vertex in enumerate(arr.vertices):
        ids = " ".join(str(plane_id) for plane_id in vertex.plane_ids)
        out.append(f"{vertex_id}: {vertex.point} on {ids}")
    out.append(f"CELLS {len(arr.cells)}")
    for cell in arr.cells:
        signs = " ".join(
            f"{plane.id}{'+' if cell.sign_vector[plane.id] > 0 else '-'}"
            for plane in arr.planes
        )
        out.append(
            f"{cell.id}: [{signs}] V={cell.v_count} E={cell.e_count} "
            f"F={cell.f_count} F_real={cell.f_real}"
        )
    return "\n".join(out) + "\n"
