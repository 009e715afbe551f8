"""Touchstone v1 (``.sNp``) reader and writer for S-parameter data.

Grammar handled here:

* ``!`` starts a comment that runs to the end of the line.
* One option line ``# <unit> <param> <format> R <z0>``; every field is
  optional and defaults to ``GHz S MA R 50``. Later option lines are ignored.
* Data records: a frequency followed by ``2*n**2`` reals. One- and two-port
  records sit on one line (two-port order S11 S21 S12 S22). Larger networks
  write one matrix row per line, wrapping rows longer than four pairs.
"""

import math
import os
import re

import numpy as np

from .errors import TouchstoneParseError
from .network import SParameterSet

FREQ_UNITS = {"HZ": 1.0, "KHZ": 1e3, "MHZ": 1e6, "GHZ": 1e9}
FORMATS = ("MA", "DB", "RI")
DIGITS = 10

_EXT = re.compile(r"\.s(\d+)p$", re.IGNORECASE)


def ports_from_filename(name):
    """Port count encoded in a ``.sNp`` file name, or ``None``."""
    m = _EXT.search(str(name))
    return int(m.group(1)) if m else None


def _parse_options(tokens, lineno):
    opts = {"unit": "GHZ", "format": "MA", "z0": 50.0}
    it = iter(range(len(tokens)))
    for k in it:
        tok = tokens[k].upper()
        if tok in FREQ_UNITS:
            opts["unit"] = tok
        elif tok in FORMATS:
            opts["format"] = tok
        elif tok == "S":
            pass
        elif tok in ("Y", "Z", "G", "H"):
            raise TouchstoneParseError(f"parameter type {tok} is not supported (S only)", lineno)
        elif tok == "R":
            try:
                opts["z0"] = float(tokens[k + 1])
            except (IndexError, ValueError):
                raise TouchstoneParseError("option 'R' needs a numeric reference impedance",
                                           lineno) from None
            next(it, None)
        else:
            raise TouchstoneParseError(f"unknown option token {tokens[k]!r}", lineno)
    return opts


def _to_complex(a, b, fmt):
    a = np.asarray(a)
    b = np.asarray(b)
    if fmt == "RI":
        return a + 1j * b
    mag = 10.0 ** (a / 20.0) if fmt == "DB" else a
    return mag * np.exp(1j * np.radians(b))


def parse_touchstone(text, n_ports=None, filename=None):
    """Parse Touchstone v1 text into an :class:`SParameterSet`.

    The port count comes from ``n_ports``, else from ``filename``'s
    ``.sNp`` extension, else from the length of the first data record.
    Errors carry the 1-based line number of the offending line.
    """
    if n_ports is None and filename is not None:
        n_ports = ports_from_filename(filename)

    opts = None
    lines = []  # (lineno, [floats]) for every data line
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            raise TouchstoneParseError("Touchstone v2 keywords are not supported", lineno)
        if line.startswith("#"):
            if opts is None:
                opts = _parse_options(line[1:].split(), lineno)
            continue
        try:
            lines.append((lineno, [float(tok) for tok in line.split()]))
        except ValueError:
            raise TouchstoneParseError(f"non-numeric data: {line!r}", lineno) from None
    if opts is None:
        opts = {"unit": "GHZ", "format": "MA", "z0": 50.0}
    if not lines:
        raise TouchstoneParseError("no data records found")

    if n_ports is None:
        first_lineno, first = lines[0]
        if len(first) % 2 == 0:
            raise TouchstoneParseError("data line without a leading frequency", first_lineno)
        continued = len(lines) > 1 and len(lines[1][1]) % 2 == 0
        if len(first) == 3:
            n_ports = 1
        elif len(first) == 9 and not continued:
            n_ports = 2
        else:
            n_ports = _infer_large_ports(lines, first_lineno)
    expected = 1 + 2 * n_ports * n_ports
    records = _group_records(lines, n_ports, expected)

    scale = FREQ_UNITS[opts["unit"]]
    freqs = np.empty(len(records))
    data = np.empty((len(records), n_ports, n_ports), dtype=complex)
    for k, (lineno, values) in enumerate(records):
        freqs[k] = values[0] * scale
        if k and freqs[k] <= freqs[k - 1]:
            raise TouchstoneParseError("frequencies must be strictly increasing", lineno)
        pairs = np.asarray(values[1:]).reshape(-1, 2)
        s = _to_complex(pairs[:, 0], pairs[:, 1], opts["format"]).reshape(n_ports, n_ports)
        # two-port files are column-major: S11 S21 S12 S22
        data[k] = s.T if n_ports == 2 else s
    return SParameterSet(freqs, data, opts["z0"])


def _infer_large_ports(lines, first_lineno):
    count = len(lines[0][1])
    for _, values in lines[1:]:
        if len(values) % 2 == 1:
            break
        count += len(values)
    n = math.isqrt((count - 1) // 2)
    if n < 3 or 1 + 2 * n * n != count:
        raise TouchstoneParseError(f"cannot infer port count from a {count}-value record",
                                   first_lineno)
    return n


def _group_records(lines, n_ports, expected):
    def bad(lineno, got):
        return TouchstoneParseError(
            f"expected {expected} values for a {n_ports}-port record, got {got}", lineno)

    if n_ports <= 2:
        for lineno, values in lines:
            if len(values) != expected:
                raise bad(lineno, len(values))
        return lines
    # larger networks: a record starts with the frequency (odd count) and
    # continues over lines that carry whole (a, b) pairs
    records = []
    for lineno, values in lines:
        if len(values) % 2 == 1:
            if records and len(records[-1][1]) != expected:
                raise bad(records[-1][2], len(records[-1][1]))
            records.append([lineno, list(values), lineno])
        elif not records:
            raise TouchstoneParseError("data line without a leading frequency", lineno)
        else:
            records[-1][1].extend(values)
            records[-1][2] = lineno
            if len(records[-1][1]) > expected:
                raise bad(lineno, len(records[-1][1]))
    if len(records[-1][1]) != expected:
        raise bad(records[-1][2], len(records[-1][1]))
    return [(start, values) for start, values, _ in records]


def read_touchstone(path):
    with open(path, encoding="utf-8") as fh:
        return parse_touchstone(fh.read(), filename=os.path.basename(path))


def _fmt(x):
    return f"{x:.{DIGITS}g}"


def _pair(z, fmt):
    if fmt == "RI":
        return _fmt(z.real), _fmt(z.imag)
    mag = abs(z)
    ang = math.degrees(math.atan2(z.imag, z.real)) if mag > 0 else 0.0
    if fmt == "DB":
        mag = 20.0 * math.log10(mag) if mag > 0 else -200.0
    return _fmt(mag), _fmt(ang)


def write_touchstone(s, fmt="MA", freq_unit="GHz"):
    """Serialise ``s`` as Touchstone v1 text."""
    fmt = fmt.upper()
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    unit = freq_unit.upper()
    if unit not in FREQ_UNITS:
        raise ValueError(f"unknown frequency unit {freq_unit!r}")
    scale = FREQ_UNITS[unit]
    n = s.n_ports
    lines = [f"! {n}-port S-parameters", f"# {freq_unit} S {fmt} R {_fmt(s.z0)}"]
    for f, m in zip(s.frequencies, s.data):
        entries = m.T.ravel() if n == 2 else m.ravel()
        fields = [tok for z in entries for tok in _pair(complex(z), fmt)]
        head = _fmt(f / scale)
        if n <= 2:
            lines.append(" ".join([head] + fields))
            continue
        row_len = 2 * n
        for r in range(n):
            row = fields[r * row_len:(r + 1) * row_len]
            chunks = [row[c:c + 8] for c in range(0, row_len, 8)]
            for c, chunk in enumerate(chunks):
                prefix = [head] if (r == 0 and c == 0) else []
                lines.append(" ".join(prefix + chunk))
    return "\n".join(lines) + "\n"
