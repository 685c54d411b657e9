"""File formats: line-list CSV, spectrum CSV with JSON sidecar, curve CSV.

All frequency columns are detunings in GHz relative to the reference
frequency, never absolute THz. CSV files written by this tool start with
``#`` comment lines carrying the config hash; parsers skip such lines, so
the documented header row is always the first non-comment line.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import LineListError
from .ple import PleSpectrum
from .spectral import EmitterLines

LINE_LIST_HEADER = ["emitter_id", "f_a1_ghz", "f_a2_ghz", "fwhm_a1_mhz", "fwhm_a2_mhz"]


@dataclass(frozen=True)
class LineListRecord:
    """One row of the line-list CSV; linewidths are optional."""

    emitter_id: str
    f_a1_ghz: float
    f_a2_ghz: float
    fwhm_a1_mhz: float | None = None
    fwhm_a2_mhz: float | None = None


def _parse_float(text: str, row: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise LineListError(
            f"row {row}, column {column!r}: cannot parse {text!r} as a number",
            row=row,
            column=column,
        ) from None
    if not math.isfinite(value):
        raise LineListError(
            f"row {row}, column {column!r}: value must be finite, got {text!r}",
            row=row,
            column=column,
        )
    return value


def _parse_optional_float(text: str, row: int, column: str) -> float | None:
    if text is None or text.strip() == "":
        return None
    return _parse_float(text, row, column)


def parse_line_list(data: bytes | str) -> list[LineListRecord]:
    """Parse line-list CSV bytes into typed records.

    The header row must be exactly ``emitter_id,f_a1_ghz,f_a2_ghz,
    fwhm_a1_mhz,fwhm_a2_mhz``. Row numbers in errors are 1-based file
    rows, counting comment and header lines.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    numbered = [
        (lineno, line)
        for lineno, line in enumerate(data.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not numbered:
        raise LineListError("file contains no header row")
    header_row, header_line = numbered[0]
    header = next(csv.reader(io.StringIO(header_line)))
    if [h.strip() for h in header] != LINE_LIST_HEADER:
        raise LineListError(
            f"row {header_row}: header must be exactly {','.join(LINE_LIST_HEADER)!r}",
            row=header_row,
        )

    records: list[LineListRecord] = []
    seen: dict[str, int] = {}
    for lineno, line in numbered[1:]:
        fields = next(csv.reader(io.StringIO(line)))
        if len(fields) not in (3, 5):
            raise LineListError(
                f"row {lineno}: expected 3 or 5 fields, got {len(fields)}", row=lineno
            )
        emitter_id = fields[0].strip()
        if not emitter_id:
            raise LineListError(f"row {lineno}: emitter_id must be non-empty", row=lineno)
        if emitter_id in seen:
            raise LineListError(
                f"row {lineno}: duplicate emitter_id {emitter_id!r} "
                f"(first seen at row {seen[emitter_id]})",
                row=lineno,
                column="emitter_id",
            )
        seen[emitter_id] = lineno
        a1 = _parse_float(fields[1], lineno, "f_a1_ghz")
        a2 = _parse_float(fields[2], lineno, "f_a2_ghz")
        if a2 <= a1:
            raise LineListError(
                f"row {lineno}: emitter {emitter_id!r} has f_a2_ghz ({a2}) <= f_a1_ghz ({a1})",
                row=lineno,
                column="f_a2_ghz",
            )
        fwhm1 = _parse_optional_float(fields[3], lineno, "fwhm_a1_mhz") if len(fields) == 5 else None
        fwhm2 = _parse_optional_float(fields[4], lineno, "fwhm_a2_mhz") if len(fields) == 5 else None
        records.append(
            LineListRecord(
                emitter_id=emitter_id,
                f_a1_ghz=a1,
                f_a2_ghz=a2,
                fwhm_a1_mhz=fwhm1,
                fwhm_a2_mhz=fwhm2,
            )
        )
    return records


def serialize_line_list(
    records: Sequence[LineListRecord | EmitterLines], comments: Sequence[str] = ()
) -> str:
    """Line-list CSV text; EmitterLines are accepted directly."""
    out = io.StringIO()
    for comment in comments:
        out.write(f"# {comment}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(LINE_LIST_HEADER)
    for rec in records:
        if isinstance(rec, EmitterLines):
            row = [rec.id, rec.a1_ghz, rec.a2_ghz, rec.fwhm_a1_mhz, rec.fwhm_a2_mhz]
        else:
            row = [
                rec.emitter_id,
                rec.f_a1_ghz,
                rec.f_a2_ghz,
                "" if rec.fwhm_a1_mhz is None else rec.fwhm_a1_mhz,
                "" if rec.fwhm_a2_mhz is None else rec.fwhm_a2_mhz,
            ]
        writer.writerow([row[0]] + [repr(v) if isinstance(v, float) else v for v in row[1:]])
    return out.getvalue()


def read_line_list(path: Path | str) -> list[LineListRecord]:
    return parse_line_list(Path(path).read_bytes())


def write_line_list(
    path: Path | str, records: Sequence[LineListRecord | EmitterLines], comments: Sequence[str] = ()
) -> None:
    Path(path).write_text(serialize_line_list(records, comments), encoding="utf-8")


def records_to_emitters(
    records: Sequence[LineListRecord], fill_fwhm_mhz: float | None = None
) -> list[EmitterLines]:
    """Promote records to EmitterLines; missing widths need a fill value."""
    emitters = []
    for rec in records:
        fwhm1, fwhm2 = rec.fwhm_a1_mhz, rec.fwhm_a2_mhz
        if fwhm1 is None or fwhm2 is None:
            if fill_fwhm_mhz is None:
                raise LineListError(
                    f"emitter {rec.emitter_id!r} lacks linewidths and no fill value was given"
                )
            fwhm1 = fwhm1 if fwhm1 is not None else fill_fwhm_mhz
            fwhm2 = fwhm2 if fwhm2 is not None else fill_fwhm_mhz
        emitters.append(
            EmitterLines(
                id=rec.emitter_id,
                a1_ghz=rec.f_a1_ghz,
                a2_ghz=rec.f_a2_ghz,
                fwhm_a1_mhz=fwhm1,
                fwhm_a2_mhz=fwhm2,
            )
        )
    return emitters


SPECTRUM_HEADER = ["frequency_ghz", "counts"]


def write_spectrum(path: Path | str, spectrum: PleSpectrum, comments: Sequence[str] = ()) -> None:
    """Two-column spectrum CSV plus a .meta.json sidecar with the dwell time."""
    path = Path(path)
    out = io.StringIO()
    for comment in comments:
        out.write(f"# {comment}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SPECTRUM_HEADER)
    for f, c in zip(spectrum.frequencies_ghz, spectrum.counts):
        writer.writerow([repr(float(f)), repr(float(c))])
    path.write_text(out.getvalue(), encoding="utf-8")
    sidecar = path.with_suffix(path.suffix + ".meta.json")
    sidecar.write_text(
        json.dumps({"dwell_time_s": spectrum.dwell_time_s}, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def read_spectrum(path: Path | str) -> PleSpectrum:
    path = Path(path)
    lines = [
        line
        for line in path.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise LineListError(f"{path}: spectrum file contains no header row")
    header = next(csv.reader(io.StringIO(lines[0])))
    if [h.strip() for h in header] != SPECTRUM_HEADER:
        raise LineListError(f"{path}: header must be exactly {','.join(SPECTRUM_HEADER)!r}")
    freqs, counts = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = next(csv.reader(io.StringIO(line)))
        if len(fields) != 2:
            raise LineListError(f"{path}: row {lineno}: expected 2 fields", row=lineno)
        freqs.append(_parse_float(fields[0], lineno, "frequency_ghz"))
        counts.append(_parse_float(fields[1], lineno, "counts"))
    dwell = 1.0
    sidecar = path.with_suffix(path.suffix + ".meta.json")
    if sidecar.exists():
        dwell = float(json.loads(sidecar.read_text(encoding="utf-8"))["dwell_time_s"])
    return PleSpectrum(
        frequencies_ghz=np.asarray(freqs), counts=np.asarray(counts), dwell_time_s=dwell
    )


def write_table(
    path: Path | str,
    header: Sequence[str],
    rows: Sequence[Sequence],
    comments: Sequence[str] = (),
) -> None:
    """Generic plot-ready CSV table with leading comment lines."""
    out = io.StringIO()
    for comment in comments:
        out.write(f"# {comment}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
    Path(path).write_text(out.getvalue(), encoding="utf-8")
