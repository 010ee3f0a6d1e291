# clusterfx/data/loader.py
import io
import logging
import re
from pathlib import Path
from typing import List, Union

import numpy as np
import pandas as pd

from ..core.exceptions import DataError, MalformedRow
from .schemas import StudyData

logger = logging.getLogger(__name__)

COLUMNS = ["group", "cluster", "period", "visit", "value"]

_PARSER_LINE = re.compile(r"line (\d+)")


def load_csv(path: Union[str, Path]) -> StudyData:
    """
    Read long-format data with header ``group,cluster,period,visit,value``.

    Blank lines and lines starting with ``#`` are skipped; a ``#`` elsewhere is
    data. Errors report the line of the original file.
    """
    path = Path(path)
    source = str(path)
    try:
        payload = path.read_bytes()
    except FileNotFoundError as e:
        raise DataError(f"{source}: file not found") from e
    try:
        raw = payload.decode("utf-8")
    except UnicodeDecodeError as e:
        line = payload[: e.start].count(b"\n") + 1
        raise MalformedRow(line, f"invalid UTF-8 at byte {e.start}", source) from e

    content_lines: List[int] = []
    kept: List[str] = []
    for lineno, text in enumerate(raw.split("\n"), start=1):
        body = text.strip()
        if body and not body.startswith("#"):
            content_lines.append(lineno)
            kept.append(body)
    if not kept:
        raise MalformedRow(1, "missing header row", source)

    try:
        frame = pd.read_csv(
            io.StringIO("\n".join(kept)),
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
        )
    except pd.errors.ParserError as e:
        match = _PARSER_LINE.search(str(e))
        line = content_lines[int(match.group(1)) - 1] if match else content_lines[0]
        raise MalformedRow(line, "wrong number of fields", source) from e

    header = [c.strip() for c in frame.columns]
    if header != COLUMNS:
        raise MalformedRow(content_lines[0], f"expected header {','.join(COLUMNS)}", source)
    frame.columns = header
    if frame.empty:
        raise MalformedRow(content_lines[0], "no data rows", source)

    lines = np.asarray(content_lines[1:], dtype=int)
    frame = frame.apply(lambda col: col.str.strip())

    missing = frame.isna().any(axis=1) | (frame == "").any(axis=1)
    if missing.any():
        raise MalformedRow(int(lines[missing.to_numpy().argmax()]), "missing field", source)

    group = _integer_column(frame, "group", lines, source, minimum=1)
    period = _integer_column(frame, "period", lines, source, minimum=1)
    visit = _integer_column(frame, "visit", lines, source, minimum=1)

    value = pd.to_numeric(frame["value"], errors="coerce").to_numpy(dtype=float)
    bad = ~np.isfinite(value)
    if bad.any():
        i = int(bad.argmax())
        raise MalformedRow(int(lines[i]), f"value {frame['value'].iloc[i]!r} is not a finite real", source)

    data = StudyData.from_arrays(
        group=group,
        cluster=frame["cluster"].tolist(),
        period=period,
        value=value,
        visit=visit,
        lines=lines.tolist(),
        source=source,
    )
    logger.info(f"Loaded {len(data.clusters)} clusters, N={data.N} observations, T={data.T} from {path}")
    return data


def write_csv(data: StudyData, path: Union[str, Path]) -> None:
    """Write StudyData in the long format read by load_csv; visits are numbered 1..m"""
    rows = [
        (c.group, c.cluster_id, l, v, x)
        for c in data.clusters
        for l in (1, 2)
        for v, x in enumerate(c.period(l), start=1)
    ]
    frame = pd.DataFrame(rows, columns=COLUMNS)
    frame.to_csv(path, index=False, encoding="utf-8", float_format="%.17g")
    logger.debug(f"Wrote {len(rows)} observations to {path}")


# ========== INTERNAL HELPER METHODS ==========

def _integer_column(
    frame: pd.DataFrame, name: str, lines: np.ndarray, source: str, minimum: int
) -> np.ndarray:
    numeric = pd.to_numeric(frame[name], errors="coerce").to_numpy(dtype=float)
    with np.errstate(invalid="ignore"):
        ok = np.isfinite(numeric) & (np.floor(numeric) == numeric) & (numeric >= minimum)
    if not ok.all():
        i = int((~ok).argmax())
        raise MalformedRow(
            int(lines[i]), f"{name} {frame[name].iloc[i]!r} is not an integer >= {minimum}", source
        )
    return numeric.astype(int)
