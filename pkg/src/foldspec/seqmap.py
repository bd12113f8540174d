"""Reading symbolic and numeric sequences and turning residues into numbers."""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from importlib import resources
from typing import IO, Mapping, Union

import numpy as np

PROTEIN = frozenset("ACDEFGHIKLMNPQRSTVWY")
DNA = frozenset("ACGT")
ALPHABETS = {"protein": PROTEIN, "dna": DNA}
POLICIES = ("zero", "error", "skip")

Source = Union[bytes, str, IO[bytes], IO[str]]


class ParseError(ValueError):
    """Bad input text; carries the 1-based position of the offending token."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 token: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if token is not None:
            where.append(f"token {token}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.column = column
        self.token = token


def _read_text(source: Source) -> str:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        return source.decode("utf-8")
    return source


def _check_policy(policy: str) -> str:
    if policy not in POLICIES:
        raise ValueError(f"unknown_policy must be one of {POLICIES}, got {policy!r}")
    return policy


@dataclass(frozen=True)
class SymbolicSequence:
    residues: str
    alphabet: str = "protein"
    identifier: str = ""

    def __post_init__(self):
        if self.alphabet not in ALPHABETS:
            raise ValueError(f"alphabet must be 'protein' or 'dna', got {self.alphabet!r}")
        if not self.residues:
            raise ValueError(f"sequence {self.identifier!r} has no residues")
        object.__setattr__(self, "residues", self.residues.upper())

    def unknown(self) -> list[int]:
        """Positions holding characters outside the alphabet."""
        known = ALPHABETS[self.alphabet]
        return [i for i, ch in enumerate(self.residues) if ch not in known]


@dataclass(frozen=True)
class MappingScheme:
    name: str
    table: Mapping[str, float]
    unknown_policy: str = "zero"
    alphabet: str = field(default="protein")

    def __post_init__(self):
        _check_policy(self.unknown_policy)
        missing = sorted(ALPHABETS[self.alphabet] - set(self.table))
        if missing:
            raise ValueError(f"mapping {self.name!r} lacks values for {''.join(missing)}")

    def apply(self, seq: SymbolicSequence) -> np.ndarray:
        out = []
        for i, ch in enumerate(seq.residues):
            if ch in self.table:
                out.append(self.table[ch])
            elif self.unknown_policy == "zero":
                out.append(0.0)
            elif self.unknown_policy == "error":
                raise ValueError(f"{seq.identifier or 'sequence'}: unmapped residue {ch!r} at position {i + 1}")
        if not out:
            raise ValueError(f"{seq.identifier or 'sequence'}: nothing left after skipping unknown residues")
        return np.array(out, dtype=np.float64)


# --------------------------------------------------------------------------
# parsers
# --------------------------------------------------------------------------

def parse_fasta(source: Source, alphabet: str = "protein",
                unknown_policy: str = "zero") -> list[SymbolicSequence]:
    """Parse every record of a FASTA document.

    Sequence lines are joined with whitespace removed and upper-cased.  With
    ``unknown_policy="error"`` any character outside ``alphabet`` is rejected.
    """
    _check_policy(unknown_policy)
    text = _read_text(source)
    records: list[tuple[str, list[str], int]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.startswith(">"):
            records.append((line[1:].strip(), [], lineno))
        elif line.strip():
            if not records:
                raise ParseError("sequence data before the first '>' header", line=lineno)
            records[-1][1].append("".join(line.split()))
    if not records:
        raise ParseError("no FASTA records found")

    known = ALPHABETS[alphabet] if alphabet in ALPHABETS else None
    out = []
    for ident, chunks, lineno in records:
        residues = "".join(chunks).upper()
        if not residues:
            raise ParseError(f"record {ident!r} has no residues", line=lineno)
        if unknown_policy == "error" and known is not None:
            bad = next((c for c in residues if c not in known), None)
            if bad is not None:
                raise ParseError(f"record {ident!r} contains illegal character {bad!r}", line=lineno)
        out.append(SymbolicSequence(residues, alphabet, ident))
    return out


def parse_numeric(source: Source) -> np.ndarray:
    """Whitespace-separated decimals; lines starting with ``#`` are comments."""
    text = _read_text(source)
    values = []
    ntok = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.lstrip().startswith("#"):
            continue
        col = 0
        for tok in line.split():
            col = line.index(tok, col) + 1
            ntok += 1
            try:
                v = float(tok)
            except ValueError:
                raise ParseError(f"cannot parse {tok!r} as a number",
                                 line=lineno, column=col, token=ntok) from None
            if not np.isfinite(v):
                raise ParseError(f"non-finite value {tok!r}", line=lineno, column=col, token=ntok)
            values.append(v)
            col += len(tok) - 1
    if not values:
        raise ParseError("no numbers found")
    return np.array(values, dtype=np.float64)


def render_numeric(x) -> str:
    """One value per line at full round-trip precision."""
    return "".join(f"{float(v)!r}\n" for v in np.asarray(x, dtype=np.float64))


def load_mapping_table(source: Source, name: str = "table", unknown_policy: str = "zero",
                       alphabet: str = "protein") -> MappingScheme:
    """Read ``<residue> <value>`` lines (``#`` comments allowed)."""
    table: dict[str, float] = {}
    for lineno, line in enumerate(_read_text(source).splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or len(parts[0]) != 1:
            raise ParseError(f"expected '<residue> <value>', got {line!r}", line=lineno)
        try:
            table[parts[0].upper()] = float(parts[1])
        except ValueError:
            raise ParseError(f"bad value {parts[1]!r}", line=lineno) from None
    return MappingScheme(name, table, unknown_policy, alphabet)


# --------------------------------------------------------------------------
# mappings
# --------------------------------------------------------------------------

def hydropathy_scheme(unknown_policy: str = "zero") -> MappingScheme:
    """The embedded Kyte-Doolittle table."""
    text = resources.files("foldspec.data").joinpath("kyte_doolittle.txt").read_text("utf-8")
    return load_mapping_table(io.StringIO(text), "kyte-doolittle", unknown_policy)


def _as_symbolic(s, alphabet: str) -> SymbolicSequence:
    if isinstance(s, SymbolicSequence):
        if s.alphabet != alphabet:
            raise ValueError(f"expected a {alphabet} sequence, got {s.alphabet}")
        return s
    return SymbolicSequence(str(s), alphabet)


def map_hydrophobicity(s, unknown_policy: str = "zero",
                       scheme: MappingScheme | None = None) -> np.ndarray:
    s = _as_symbolic(s, "protein")
    if scheme is None:
        scheme = hydropathy_scheme(unknown_policy)
    return scheme.apply(s)


def map_indicator(s, symbol: str, unknown_policy: str = "zero") -> np.ndarray:
    """1.0 where the residue equals ``symbol``, 0.0 elsewhere."""
    s = _as_symbolic(s, "dna")
    symbol = symbol.upper()
    if symbol not in DNA:
        raise ValueError(f"indicator symbol must be one of ACGT, got {symbol!r}")
    table = {ch: float(ch == symbol) for ch in DNA}
    return MappingScheme(f"indicator:{symbol}", table, unknown_policy, "dna").apply(s)


def center(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return x - x.mean()
