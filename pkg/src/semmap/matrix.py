"""Form-function matrices: ingestion, validation, and serialization.

A matrix row is one form (a language-tagged gram); a column is one function.
Cells are strictly binary: 1 means the form attests the function at least
once. Duplicate rows are legal and kept with multiplicity (two languages may
contribute grams with identical function sets).
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import MatrixFormatError

MATRIX_FORMATS = ("csv", "tsv", "json")


@dataclass(frozen=True)
class FunctionLabel:
    """A function column: unique short abbreviation plus optional long name."""

    id: int
    abbr: str
    full: str | None = None


@dataclass(frozen=True)
class FormEntry:
    """One form row: language tag, display gram, and its function bit vector."""

    id: int
    language: str
    gram: str
    functions: tuple[int, ...]

    def function_ids(self) -> frozenset[int]:
        return frozenset(i for i, bit in enumerate(self.functions) if bit)


@dataclass(frozen=True)
class FormFunctionMatrix:
    """Validated binary form-function matrix with labeled axes.

    Immutable after construction; safe to share across threads. Structural
    invariants (binary cells, nonempty rows, unique labels, n >= 2) are
    enforced here; the all-zero-column policy is enforced by the public
    constructors (`parse_matrix`, `binarize`) where it is configurable.
    """

    functions: tuple[FunctionLabel, ...]
    forms: tuple[FormEntry, ...]

    def __post_init__(self):
        n = len(self.functions)
        if n < 2:
            raise MatrixFormatError(f"need at least 2 functions, got {n}")
        abbrs = [f.abbr for f in self.functions]
        if len(set(abbrs)) != n:
            dupes = sorted({a for a in abbrs if abbrs.count(a) > 1})
            raise MatrixFormatError(f"duplicate function labels: {dupes}")
        for i, lab in enumerate(self.functions):
            if lab.id != i:
                raise MatrixFormatError(f"function {lab.abbr!r} has id {lab.id}, expected {i}")
        for i, form in enumerate(self.forms):
            if form.id != i:
                raise MatrixFormatError(f"form {form.gram!r} has id {form.id}, expected {i}")
            if len(form.functions) != n:
                raise MatrixFormatError(
                    f"form {form.gram!r}: bit vector length {len(form.functions)} != {n}"
                )
            if any(bit not in (0, 1) for bit in form.functions):
                raise MatrixFormatError(f"form {form.gram!r}: non-binary bit vector")
            if not any(form.functions):
                raise MatrixFormatError(f"form {form.gram!r} attests no function")

    @property
    def m(self) -> int:
        return len(self.forms)

    @property
    def n(self) -> int:
        return len(self.functions)

    def to_array(self) -> np.ndarray:
        """m x n uint8 copy of the bit matrix."""
        return np.array([f.functions for f in self.forms], dtype=np.uint8).reshape(self.m, self.n)

    def function_set(self, x: int) -> frozenset[int]:
        return function_set(self, x)

    def function_index(self, abbr: str) -> int:
        for lab in self.functions:
            if lab.abbr == abbr:
                return lab.id
        raise KeyError(abbr)

    def form_index(self, gram: str) -> int:
        """Lowest form id whose gram matches exactly."""
        for form in self.forms:
            if form.gram == gram:
                return form.id
        raise KeyError(gram)

    # -- serialization ----------------------------------------------------

    def to_csv(self) -> str:
        return self._to_delimited(",")

    def to_tsv(self) -> str:
        return self._to_delimited("\t")

    def _to_delimited(self, delim: str) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter=delim, lineterminator="\n")
        writer.writerow(["language", "gram"] + [f.abbr for f in self.functions])
        for form in self.forms:
            writer.writerow([form.language, form.gram] + [str(b) for b in form.functions])
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        funcs = []
        for lab in self.functions:
            rec: dict = {"abbr": lab.abbr}
            if lab.full is not None:
                rec["full"] = lab.full
            funcs.append(rec)
        return {
            "functions": funcs,
            "forms": [
                {"language": f.language, "gram": f.gram, "functions": list(f.functions)}
                for f in self.forms
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), ensure_ascii=False)

    def serialize(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "tsv":
            return self.to_tsv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown matrix format {fmt!r}")


def function_set(matrix: FormFunctionMatrix, x: int) -> frozenset[int]:
    """Ids of the functions attested by form x; never empty."""
    if not 0 <= x < matrix.m:
        raise MatrixFormatError(f"unknown form id {x} (have {matrix.m} forms)")
    return matrix.forms[x].function_ids()


def _check_columns(matrix: FormFunctionMatrix, on_empty_column: str) -> FormFunctionMatrix:
    if on_empty_column not in ("error", "warn", "ignore"):
        raise ValueError(f"on_empty_column must be error/warn/ignore, got {on_empty_column!r}")
    covered = set()
    for form in matrix.forms:
        covered.update(form.function_ids())
    empty = [lab.abbr for lab in matrix.functions if lab.id not in covered]
    if empty:
        if on_empty_column == "error":
            raise MatrixFormatError(f"function columns entirely zero: {empty}")
        if on_empty_column == "warn":
            warnings.warn(f"function columns entirely zero: {empty}", stacklevel=3)
    return matrix


def parse_matrix(
    text: str,
    fmt: str = "csv",
    *,
    lenient: bool = False,
    on_empty_column: str = "error",
) -> FormFunctionMatrix:
    """Parse a matrix from CSV, TSV, or JSON text.

    CSV/TSV: header row is `language,gram,<fn1>,...,<fnN>`; every data cell
    must be literally 0 or 1. Row and column order of the file is preserved.
    With lenient=True, rows attesting no function are skipped instead of
    rejected.
    """
    if fmt == "json":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from exc
        return _from_json_dict(payload, lenient=lenient, on_empty_column=on_empty_column)
    if fmt not in ("csv", "tsv"):
        raise ValueError(f"unknown matrix format {fmt!r}")
    delim = "," if fmt == "csv" else "\t"
    rows = list(csv.reader(io.StringIO(text), delimiter=delim))
    rows = [r for r in rows if r]  # drop blank trailing lines
    if not rows:
        raise MatrixFormatError("empty input")
    header = rows[0]
    if len(header) < 4:
        raise MatrixFormatError("header must name language, gram, and at least 2 functions")
    abbrs = [h.strip() for h in header[2:]]
    labels = tuple(FunctionLabel(i, abbr) for i, abbr in enumerate(abbrs))
    n = len(abbrs)
    forms = []
    for rownum, row in enumerate(rows[1:], start=2):
        if len(row) != n + 2:
            raise MatrixFormatError(f"row {rownum}: expected {n + 2} cells, got {len(row)}")
        language, gram = row[0], row[1]
        bits = []
        for colnum, cell in enumerate(row[2:], start=3):
            cell = cell.strip()
            if cell not in ("0", "1"):
                raise MatrixFormatError(
                    f"row {rownum}, column {colnum} ({abbrs[colnum - 3]}): "
                    f"non-binary cell {cell!r}"
                )
            bits.append(int(cell))
        if not any(bits):
            if lenient:
                continue
            raise MatrixFormatError(f"row {rownum} ({gram!r}) attests no function")
        forms.append(FormEntry(len(forms), language, gram, tuple(bits)))
    matrix = FormFunctionMatrix(labels, tuple(forms))
    return _check_columns(matrix, on_empty_column)


def _from_json_dict(
    payload: dict, *, lenient: bool = False, on_empty_column: str = "error"
) -> FormFunctionMatrix:
    try:
        raw_funcs = payload["functions"]
        raw_forms = payload["forms"]
    except (KeyError, TypeError) as exc:
        raise MatrixFormatError("JSON matrix needs 'functions' and 'forms' keys") from exc
    labels = tuple(
        FunctionLabel(i, rec["abbr"], rec.get("full")) for i, rec in enumerate(raw_funcs)
    )
    forms = []
    for rec in raw_forms:
        bits = tuple(rec["functions"])
        if any(bit not in (0, 1) for bit in bits):
            raise MatrixFormatError(f"form {rec.get('gram')!r}: non-binary bit vector")
        if not any(bits):
            if lenient:
                continue
            raise MatrixFormatError(f"form {rec.get('gram')!r} attests no function")
        forms.append(FormEntry(len(forms), rec["language"], rec["gram"], bits))
    matrix = FormFunctionMatrix(labels, tuple(forms))
    return _check_columns(matrix, on_empty_column)


def binarize_counts(freqs) -> np.ndarray:
    """Threshold a count matrix: cell -> 1 iff count >= 1.

    Pure thresholding with no structural validation; `binarize` builds a
    validated matrix on top of this.
    """
    arr = np.asarray(freqs, dtype=float)
    if arr.ndim != 2:
        raise MatrixFormatError(f"count matrix must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MatrixFormatError("count matrix contains non-finite values")
    if np.any(arr < 0):
        bad = np.argwhere(arr < 0)[0]
        raise MatrixFormatError(f"negative count at row {bad[0]}, column {bad[1]}")
    return (arr >= 1).astype(np.uint8)


def binarize(
    freqs,
    *,
    functions: list[str] | None = None,
    forms: list[tuple[str, str]] | None = None,
    lenient: bool = False,
    on_empty_column: str = "error",
) -> FormFunctionMatrix:
    """Build a binary matrix from non-negative attestation counts.

    `functions` gives column abbreviations, `forms` gives (language, gram)
    pairs; both are synthesized when omitted. All-zero rows are rejected, or
    skipped when lenient=True.
    """
    bits = binarize_counts(freqs)
    m, n = bits.shape
    if functions is None:
        functions = [f"F{j}" for j in range(n)]
    if forms is None:
        forms = [("und", f"x{i}") for i in range(m)]
    if len(functions) != n or len(forms) != m:
        raise MatrixFormatError("label metadata does not match the count matrix shape")
    labels = tuple(FunctionLabel(j, abbr) for j, abbr in enumerate(functions))
    entries = []
    for i in range(m):
        row = tuple(int(b) for b in bits[i])
        if not any(row):
            if lenient:
                continue
            raise MatrixFormatError(f"row {i} ({forms[i][1]!r}) attests no function")
        language, gram = forms[i]
        entries.append(FormEntry(len(entries), language, gram, row))
    matrix = FormFunctionMatrix(labels, tuple(entries))
    return _check_columns(matrix, on_empty_column)
