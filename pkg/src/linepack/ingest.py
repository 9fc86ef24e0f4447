"""Reading, writing and fetching packing files.

A packing file is a whitespace separated list of decimal scalars, optionally
preceded by a header line ``d n``. Vectors are stored consecutively: either
one coordinate per line (raw database dumps) or one vector per line. Complex
entries are written as ``re im`` pairs.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import time
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

import numpy as np

from linepack.errors import NetworkError, NormViolation, ParseError, TokenCountMismatch
from linepack.frames import Field, VectorConfiguration, check_field, gram_report

log = logging.getLogger(__name__)

NORM_TOL = 1e-6
ENV_DB_URL = "LINEPACK_DB_URL"

Transport = Callable[[str], "tuple[int, bytes]"]


@dataclass(frozen=True)
class PackingRecord:
    d: int
    n: int
    field: str
    configuration: VectorConfiguration
    source: str
    checksum: str
    renormalized: bool
    layout: str = "flat"


def checksum(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield lineno, body


def _is_int(tok: str) -> bool:
    try:
        int(tok)
    except ValueError:
        return False
    return True


def _to_float(tok: str, lineno: int) -> float:
    try:
        return float(tok.replace("D", "E").replace("d", "e"))
    except ValueError:
        raise ParseError(lineno, tok) from None


def parse_packing(
    data: bytes | str,
    d: int | None = None,
    n: int | None = None,
    field: Field = "real",
    layout: str = "auto",
    source: str = "builtin",
) -> PackingRecord:
    """Parse a packing file into a :class:`PackingRecord`.

    Parameters
    ----------
    data : bytes or str
        File contents.
    d, n : int, optional
        Dimension and number of vectors. When omitted they are read from a
        leading ``d n`` header line.
    field : {"real", "complex"}
        Complex files hold ``re im`` pairs for every coordinate.
    layout : {"auto", "rows", "vector-major", "flat"}
        ``rows`` requires one vector per line, ``vector-major`` one coordinate
        per line. ``auto`` accepts any arrangement with the right token count
        and reports what it saw.

    Raises
    ------
    TokenCountMismatch, ParseError, NormViolation
    """
    check_field(field)
    raw = data.encode() if isinstance(data, str) else bytes(data)
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise ParseError(0, "<binary>") from None
    lines = list(_lines(text))
    per = 2 if field == "complex" else 1

    if lines and len(lines[0][1]) == 2 and all(_is_int(t) for t in lines[0][1]):
        hd, hn = (int(t) for t in lines[0][1])
        rest = sum(len(toks) for _, toks in lines[1:])
        if d is None and n is None:
            d, n = hd, hn
            lines = lines[1:]
        elif (hd, hn) == (d, n) and rest == d * n * per:
            lines = lines[1:]
    if d is None or n is None:
        raise ParseError(lines[0][0] if lines else 0, "missing 'd n' header")

    expected = d * n * per
    got = sum(len(toks) for _, toks in lines)
    if got != expected:
        raise TokenCountMismatch(expected, got)

    widths = {len(toks) for _, toks in lines}
    if widths == {d * per} and len(lines) == n:
        seen = "rows"
    elif widths == {1}:
        seen = "vector-major"
    else:
        seen = "flat"
    if layout != "auto" and layout != seen and layout != "flat":
        bad = next((ln for ln, toks in lines if len(toks) != (d * per if layout == "rows" else 1)), 0)
        raise ParseError(bad, f"not in {layout} layout")

    values = np.array([_to_float(t, ln) for ln, toks in lines for t in toks])
    if per == 2:
        values = values[0::2] + 1j * values[1::2]
    x = values.reshape(n, d).T.astype(np.complex128)

    norms = np.linalg.norm(x, axis=0)
    dev = np.abs(norms - 1.0)
    if np.any(dev > NORM_TOL):
        j = int(np.argmax(dev > NORM_TOL))
        raise NormViolation(j, norms[j])
    renormalized = bool(np.any(dev > 1e-12))
    if renormalized:
        x = x / norms
    config = VectorConfiguration(x, field=field, tol_unit=NORM_TOL)
    return PackingRecord(d, n, field, config, source, checksum(raw), renormalized, seen)


def serialize_packing(config: VectorConfiguration | PackingRecord) -> bytes:
    """Header line plus one vector per line, at full binary64 precision."""
    if isinstance(config, PackingRecord):
        config = config.configuration
    d, n = config.shape
    out = [f"{d} {n}"]
    x = config.entries
    for j in range(n):
        if config.field == "real":
            out.append(" ".join(repr(float(v)) for v in x[:, j].real))
        else:
            out.append(" ".join(f"{float(v.real)!r} {float(v.imag)!r}" for v in x[:, j]))
    return ("\n".join(out) + "\n").encode()


def load_packing(path, d: int | None = None, n: int | None = None, field: Field = "real", layout: str = "auto"):
    path = Path(path)
    return parse_packing(path.read_bytes(), d, n, field, layout, source=f"local-file:{path}")


def packing_coherence(rec: PackingRecord) -> float:
    return gram_report(rec.configuration).coherence


# -- bundled fixtures ------------------------------------------------------


def packing_filename(d: int, n: int, field: Field = "real") -> str:
    """File name used for packing directories: ``real-d6-n8.txt``."""
    return f"{check_field(field)}-d{d}-n{n}.txt"


def bundled_packings_dir() -> Path:
    return Path(str(resources.files("linepack") / "data" / "packings"))


def find_packing(directory, d: int, n: int, field: Field = "real") -> Path | None:
    path = Path(directory) / packing_filename(d, n, field)
    return path if path.is_file() else None


def bundled_packing(name: str, field: Field | None = None) -> PackingRecord:
    """Load one of the packings shipped with the package by file name."""
    path = bundled_packings_dir() / name
    if field is None:
        field = "complex" if name.startswith("complex") else "real"
    rec = parse_packing(path.read_bytes(), field=field, source="builtin")
    return rec


# -- remote fetch ----------------------------------------------------------


def urllib_transport(url: str, timeout: float = 30.0) -> tuple[int, bytes]:
    """One HTTP GET through urllib; returns (status, body)."""
    try:
        with urllib.request.urlopen(url, timeout=timeout) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as exc:
        return exc.code, b""
    except urllib.error.URLError as exc:
        raise NetworkError(None, url) from exc


def resolve_url(name_or_url: str, base: str | None = None) -> str:
    """Absolute urls pass through; relative names are joined to ``base`` or $LINEPACK_DB_URL."""
    if urllib.parse.urlparse(name_or_url).scheme:
        return name_or_url
    base = base or os.environ.get(ENV_DB_URL)
    if not base:
        raise ValueError(f"relative name {name_or_url!r} needs a base url or ${ENV_DB_URL}")
    return base.rstrip("/") + "/" + name_or_url.lstrip("/")


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cache_lookup(cache_dir: Path, url: str):
    for meta_path in sorted(cache_dir.glob("*.meta")):
        try:
            meta = json.loads(meta_path.read_text())
        except (OSError, ValueError):
            continue
        if meta.get("url") != url:
            continue
        dat = meta_path.with_suffix(".dat")
        if dat.is_file():
            body = dat.read_bytes()
            if checksum(body) == meta_path.stem:
                return meta, body
    return None


def fetch_packing(
    url: str,
    cache_dir,
    d: int | None = None,
    n: int | None = None,
    field: Field = "real",
    transport: Transport | None = None,
) -> PackingRecord:
    """Return the packing at ``url``, downloading it at most once.

    Raw bytes are cached as ``<sha256>.dat`` next to a ``<sha256>.meta`` JSON
    file that records the url. A cache hit performs no network access.
    """
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    hit = _cache_lookup(cache_dir, url)
    if hit is not None:
        meta, body = hit
        log.debug("cache hit for %s", url)
        return parse_packing(
            body,
            d if d is not None else meta.get("d"),
            n if n is not None else meta.get("n"),
            meta.get("field", field),
            source=f"remote:{url}",
        )

    transport = transport or urllib_transport
    status, body = transport(url)
    if status != 200:
        raise NetworkError(status, url)
    rec = parse_packing(body, d, n, field, source=f"remote:{url}")
    _atomic_write(cache_dir / f"{rec.checksum}.dat", body)
    meta = {"url": url, "d": rec.d, "n": rec.n, "field": rec.field, "timestamp": time.time()}
    _atomic_write(cache_dir / f"{rec.checksum}.meta", json.dumps(meta, sort_keys=True).encode())
    return rec
