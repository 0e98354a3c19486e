"""
Artifact serialization: CSV for sweeps, JSON for everything else.

Floats are written in shortest round-trip form (repr), booleans as
true/false, line terminator LF. Re-parsing an emitted artifact gives
bit-identical records.
"""

import csv
import io
import json
import math

from weakcoupling.exceptions import WeakCouplingError
from weakcoupling.models.results import SweepRecord, SweepResult

CSV_HEADER = SweepRecord.COLUMNS


def _format(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_csv(records) -> bytes:
    """Header plus one row per record, in the given (alpha-descending) order."""
    if isinstance(records, SweepResult):
        records = records.records
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow([_format(v) for v in record.as_dict().values()])
    return buffer.getvalue().encode('utf-8')


def _parse_bool(text: str) -> bool:
    if text == 'true':
        return True
    if text == 'false':
        return False
    raise ValueError(f"not a boolean: {text!r}")


def parse_csv(data: bytes | str) -> list[SweepRecord]:
    """
    Records from an emit_csv artifact.

    Raises:
        WeakCouplingError: PARSE_ERROR on a wrong header or malformed row
    """
    text = data.decode('utf-8') if isinstance(data, bytes) else data
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise WeakCouplingError('PARSE_ERROR', line=1, reason='unexpected CSV header')
    records = []
    for line, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        try:
            values = dict(zip(CSV_HEADER, row, strict=True))
            values['converged'] = _parse_bool(values['converged'])
            records.append(SweepRecord.from_dict(values))
        except (ValueError, KeyError) as e:
            raise WeakCouplingError('PARSE_ERROR', line=line, reason=str(e)) from e
    return records


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def emit_json(payload: dict) -> bytes:
    """Indented JSON, keys in insertion order, non-finite floats as null."""
    return (json.dumps(_jsonable(payload), indent=2, allow_nan=False) + '\n').encode('utf-8')


def parse_json(data: bytes | str) -> dict:
    try:
        return json.loads(data)
    except json.JSONDecodeError as e:
        raise WeakCouplingError('PARSE_ERROR', line=e.lineno, column=e.colno, reason=e.msg) from e


def sweep_payload(result: SweepResult) -> dict:
    return {
        'd': result.d,
        'p': result.p,
        'potential': result.descriptor,
        'integral': result.integral,
        'records': [record.as_dict() for record in result.records],
        'bounds': list(result.bounds),
    }


def records_from_json(data: bytes | str) -> list[SweepRecord]:
    """Records from a sweep JSON artifact."""
    payload = parse_json(data)
    try:
        return [SweepRecord.from_dict(item) for item in payload['records']]
    except (KeyError, TypeError, ValueError) as e:
        raise WeakCouplingError('PARSE_ERROR', reason=str(e)) from e
