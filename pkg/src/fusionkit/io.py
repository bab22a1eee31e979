"""Versioned JSON files for rings and modular data.

Layout::

    {
      "format": "fusionkit-ring",
      "version": 1,
      "ring": {"rank": 3, "labels": [...], "dual": [...],
               "coefficients": [[i, j, k, n], ...]},
      "modular": {"smat": [[cyc, ...], ...], "tmat": [cyc, ...]},   # optional
      "metadata": {"name": "...", "provenance": "..."}              # optional
    }

Cyclotomic entries are ``{"conductor": n, "coeffs": ["p/q", ...]}`` in the
power basis of ``zeta_n``.  Coefficients are written sorted, so serializing
the same object twice gives the same bytes.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .exactnum import Cyclotomic
from .modular import ModularData
from .ring import FusionRing

FORMAT = "fusionkit-ring"
VERSION = 1

_TOP_KEYS = {"format", "version", "ring", "modular", "metadata"}
_RING_KEYS = {"rank", "labels", "dual", "coefficients"}
_MODULAR_KEYS = {"smat", "tmat"}
_CYC_KEYS = {"conductor", "coeffs"}


class FormatError(ValueError):
    """The file does not follow the ring-file format."""


@dataclass
class RingFile:
    ring: FusionRing
    modular: ModularData | None = None
    metadata: dict = field(default_factory=dict)
    # Unknown fields kept by lenient parsing, keyed by section ("", "ring", "modular").
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.modular is not None and self.modular.ring != self.ring:
            raise ValueError("modular data must sit on the file's ring")

    @property
    def name(self) -> str | None:
        return self.metadata.get("name") or self.ring.name


# -- serialization --------------------------------------------------------------


def _cyc_to_json(c: Cyclotomic) -> dict:
    return c.to_json()


def ring_to_dict(ring: FusionRing) -> dict:
    coeffs = [[i, j, k, n] for (i, j, k), n in sorted(ring.coeffs.items()) if n]
    return {"rank": ring.rank, "labels": list(ring.labels), "dual": list(ring.dual), "coefficients": coeffs}


def to_dict(rf: RingFile) -> dict:
    out: dict = {"format": FORMAT, "version": VERSION, "ring": ring_to_dict(rf.ring)}
    out["ring"].update(rf.extra.get("ring", {}))
    if rf.modular is not None:
        out["modular"] = {
            "smat": [[_cyc_to_json(v) for v in row] for row in rf.modular.smat],
            "tmat": [_cyc_to_json(v) for v in rf.modular.tmat],
        }
        out["modular"].update(rf.extra.get("modular", {}))
    if rf.metadata:
        out["metadata"] = dict(rf.metadata)
    out.update(rf.extra.get("", {}))
    return out


def _render(obj, indent: int = 0, width: int = 100) -> str:
    """JSON with short containers kept on one line."""
    flat = json.dumps(obj, ensure_ascii=False)
    if len(flat) + indent <= width or not isinstance(obj, (list, dict)) or not obj:
        return flat
    pad = " " * (indent + 2)
    if isinstance(obj, list):
        items = [pad + _render(v, indent + 2, width) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"
    items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_render(v, indent + 2, width)}" for k, v in obj.items()]
    return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"


def dumps(rf: RingFile) -> str:
    return _render(to_dict(rf)) + "\n"


# -- parsing --------------------------------------------------------------------


def _require(cond: bool, message: str):
    if not cond:
        raise FormatError(message)


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _unknown(section: dict, allowed: set, where: str, strict: bool, extra: dict, key: str):
    unknown = sorted(set(section) - allowed)
    if unknown:
        if strict:
            raise FormatError(f"unknown field(s) in {where}: {', '.join(unknown)}")
        extra[key] = {k: section[k] for k in unknown}


def _parse_cyc(data, where: str) -> Cyclotomic:
    if _is_int(data):
        return Cyclotomic.from_rational(data)
    if isinstance(data, str):
        try:
            return Cyclotomic.from_rational(Fraction(data))
        except ValueError as exc:
            raise FormatError(f"{where}: bad rational {data!r}") from exc
    _require(isinstance(data, dict), f"{where}: expected a cyclotomic object")
    _require(set(data) == _CYC_KEYS, f"{where}: cyclotomic needs exactly {sorted(_CYC_KEYS)}")
    n = data["conductor"]
    _require(_is_int(n) and n >= 1, f"{where}: conductor must be a positive integer")
    coeffs = data["coeffs"]
    _require(isinstance(coeffs, list), f"{where}: coeffs must be a list")
    try:
        values = [Fraction(c) if isinstance(c, str) else Fraction(int(c)) for c in coeffs]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: bad coefficient in {coeffs!r}") from exc
    try:
        return Cyclotomic(n, values)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def _parse_ring(data, strict: bool, extra: dict, name: str | None) -> FusionRing:
    _require(isinstance(data, dict), "ring: expected an object")
    _unknown(data, _RING_KEYS, "ring", strict, extra, "ring")
    missing = _RING_KEYS - set(data)
    _require(not missing, f"ring: missing {', '.join(sorted(missing))}")
    r = data["rank"]
    _require(_is_int(r) and r >= 1, "ring.rank must be a positive integer")
    labels, dual, coeffs = data["labels"], data["dual"], data["coefficients"]
    _require(isinstance(labels, list) and len(labels) == r and all(isinstance(x, str) for x in labels),
             f"ring.labels must be {r} strings")
    _require(isinstance(dual, list) and len(dual) == r and all(_is_int(x) and 0 <= x < r for x in dual),
             f"ring.dual must be {r} indices in range")
    _require(isinstance(coeffs, list), "ring.coefficients must be a list")
    table: dict[tuple[int, int, int], int] = {}
    for entry in coeffs:
        _require(isinstance(entry, list) and len(entry) == 4 and all(_is_int(x) for x in entry),
                 f"coefficient {entry!r} is not an [i, j, k, n] integer quadruple")
        i, j, k, n = entry
        _require(all(0 <= x < r for x in (i, j, k)), f"coefficient {entry!r} has an index out of range")
        _require(n >= 0, f"coefficient {entry!r} is negative")
        _require((i, j, k) not in table, f"coefficient ({i}, {j}, {k}) listed twice")
        table[(i, j, k)] = n
    table = {key: n for key, n in table.items() if n}
    try:
        return FusionRing(labels, dual, table, name=name)
    except ValueError as exc:
        raise FormatError(f"ring: {exc}") from exc


def from_dict(data, strict: bool = True) -> RingFile:
    _require(isinstance(data, dict), "top level must be a JSON object")
    extra: dict = {}
    _unknown(data, _TOP_KEYS, "file", strict, extra, "")
    _require(data.get("format") == FORMAT, f"format must be {FORMAT!r}")
    _require(data.get("version") == VERSION, f"unsupported version {data.get('version')!r}")
    _require("ring" in data, "missing ring section")
    metadata = data.get("metadata", {})
    _require(isinstance(metadata, dict), "metadata must be an object")
    name = metadata.get("name")
    _require(name is None or isinstance(name, str), "metadata.name must be a string")
    ring = _parse_ring(data["ring"], strict, extra, name)
    modular = None
    if "modular" in data:
        mod = data["modular"]
        _require(isinstance(mod, dict), "modular: expected an object")
        _unknown(mod, _MODULAR_KEYS, "modular", strict, extra, "modular")
        _require(_MODULAR_KEYS <= set(mod), "modular: needs smat and tmat")
        S, T = mod["smat"], mod["tmat"]
        r = ring.rank
        _require(isinstance(S, list) and len(S) == r and all(isinstance(row, list) and len(row) == r for row in S),
                 f"modular.smat must be {r}x{r}")
        _require(isinstance(T, list) and len(T) == r, f"modular.tmat must have {r} entries")
        smat = [[_parse_cyc(v, f"smat[{a}][{b}]") for b, v in enumerate(row)] for a, row in enumerate(S)]
        tmat = [_parse_cyc(v, f"tmat[{a}]") for a, v in enumerate(T)]
        modular = ModularData(ring, smat, tmat, name=name)
    return RingFile(ring, modular, dict(metadata), extra)


def loads(text: str, strict: bool = True) -> RingFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return from_dict(data, strict=strict)


def load(path, strict: bool = True) -> RingFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return loads(text, strict=strict)


def write_atomic(path, text: str) -> None:
    """Write through a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save(rf: RingFile, path) -> None:
    write_atomic(path, dumps(rf))
