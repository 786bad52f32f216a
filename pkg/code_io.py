"""
Reading and writing codes as JSON records {"p","m","n","k","gen"}.

Writing a canonical code and reading it back is byte-exact.
"""

import json
import logging
from typing import Any, Dict

import numpy as np
from pydantic import ValidationError

from errors import FieldMismatch, LengthMismatch, ParseError
from finite_field import make_field
from linear_code import LinearCode, from_rows, is_canonical
from models import CodeRecord

logger = logging.getLogger('selfdual_codes')


def code_to_record(C: LinearCode) -> CodeRecord:
    return CodeRecord(p=C.field.p, m=C.field.m, n=C.n, k=C.k, gen=C.rows())


def code_to_json(C: LinearCode) -> str:
    return code_to_record(C).model_dump_json()


def record_to_code(record: CodeRecord) -> LinearCode:
    """
    Raises:
        NotPrime / DegreeOutOfRange: For an invalid field
        FieldMismatch: If an entry is outside [0, q)
        ParseError: If k or a row length disagrees with the matrix
    """
    F = make_field(record.p, record.m)
    if len(record.gen) != record.k:
        raise ParseError(f"k = {record.k} but gen has {len(record.gen)} rows", field="k")
    for i, row in enumerate(record.gen):
        if len(row) != record.n:
            raise ParseError(f"row {i} has length {len(row)}, expected n = {record.n}", field="gen")
    if record.gen:
        entries = np.asarray(record.gen, dtype=np.int64)
        if entries.min() < 0 or entries.max() >= F.q:
            bad = int(entries.max()) if entries.max() >= F.q else int(entries.min())
            raise FieldMismatch(f"entry {bad} is not an element of GF({F.q})", q=F.q, entry=bad)
        if not is_canonical(F, record.n, record.gen):
            logger.warning("generator matrix is not in canonical form; rows were reduced")
    try:
        return from_rows(F, record.n, record.gen)
    except LengthMismatch as e:
        raise ParseError(e.detail, field="gen") from e


def code_from_dict(data: Dict[str, Any]) -> LinearCode:
    try:
        record = CodeRecord.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = ".".join(str(part) for part in first.get("loc", ())) or None
        raise ParseError(f"{first.get('msg', 'invalid code record')}", field=loc) from e
    return record_to_code(record)


def code_from_json(text: str) -> LinearCode:
    """
    Raises:
        ParseError: On malformed JSON (with line) or a bad record (with field)
        FieldMismatch: If an entry is outside [0, q)
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno) from e
    if not isinstance(data, dict):
        raise ParseError("code record must be a JSON object", line=1)
    return code_from_dict(data)


def read_code(path: str) -> LinearCode:
    with open(path, 'r', encoding='utf-8') as f:
        return code_from_json(f.read())


def write_code(C: LinearCode, path: str) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        f.write(code_to_json(C) + "\n")
