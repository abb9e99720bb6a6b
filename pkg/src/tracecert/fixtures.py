"""Bundled golden data, with an optional directory override."""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .certify import parse_knot_table, parse_matrices
from .poly import MultiPoly, PolyError, load_poly, parse_poly
from .words import Presentation, WordError, parse_presentation

POLY_NAMES = ("P", "Q", "R", "S", "R1", "m137_P", "alexander")


class FixtureError(Exception):
    pass


def parse_factors(text: str) -> list:
    """``factors v1``: a ``vars:`` line then ``<multiplicity> : <expr>`` lines."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != "factors v1" or not lines[1].startswith("vars:"):
        raise FixtureError("expected 'factors v1' and a 'vars:' line")
    vars = tuple(lines[1][5:].split())
    out = []
    for ln in lines[2:]:
        mult, sep, expr = ln.partition(":")
        if not sep:
            raise FixtureError(f"bad factor line {ln!r}")
        out.append((parse_poly(expr, vars), int(mult)))
    return out


def parse_table(text: str) -> list:
    """``table v1``: ``<m> <p>`` rows."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != "table v1":
        raise FixtureError("expected 'table v1' header")
    rows = []
    for ln in lines[1:]:
        m, p = ln.split()
        rows.append((int(m), int(p)))
    return rows


class Fixtures:
    """Loads fixtures by name from the package data or from ``root``."""

    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else None
        self._cache: dict = {}

    def text(self, filename: str) -> str:
        try:
            if self.root is not None:
                return (self.root / filename).read_text(encoding="utf-8")
            return resources.files("tracecert.data").joinpath(filename).read_text(encoding="utf-8")
        except (FileNotFoundError, IsADirectoryError) as exc:
            raise FixtureError(f"fixture {filename!r} not found") from exc

    def _load(self, key, loader):
        if key not in self._cache:
            try:
                self._cache[key] = loader()
            except FixtureError:
                raise
            except (PolyError, WordError, ValueError) as exc:
                raise FixtureError(f"fixture {key!r}: {exc}") from exc
        return self._cache[key]

    def poly(self, name: str) -> MultiPoly:
        return self._load(("poly", name), lambda: load_poly(self.text(f"{name}.poly"))[0])

    def presentation(self, name: str) -> Presentation:
        return self._load(("pres", name), lambda: parse_presentation(self.text(f"{name}.pres")))

    def matrices(self, name: str = "m137") -> dict:
        return self._load(("mat", name), lambda: parse_matrices(self.text(f"{name}.mat"))[1])

    def factors(self, name: str) -> list:
        return self._load(("factors", name), lambda: parse_factors(self.text(f"{name}.factors")))

    def table(self) -> list:
        return self._load("table", lambda: parse_table(self.text("certificates.table")))

    def knots(self) -> list:
        return self._load("knots", lambda: parse_knot_table(self.text("knots.txt")))
