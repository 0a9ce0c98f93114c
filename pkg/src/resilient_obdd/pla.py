"""Reader for two-level PLA benchmark files.

Supports the directives .i/.o/.p/.e plus the common informational ones
(.ilb, .ob, .type), cube lines with inputs over {0,1,-} and outputs over
{0,1,-,~}.  Per output column, a cube belongs to the ON-set when marked 1 and
to the don't-care set when marked - or ~.  Unknown directives are skipped
with a warning.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

log = logging.getLogger(__name__)

_IN_CHARS = set("01-")
_OUT_CHARS = set("01-~")
_KNOWN_IGNORED = {".ilb", ".ob", ".type", ".phase", ".pair", ".symbolic", ".kiss"}


class PlaError(ValueError):
    """Malformed PLA input; message carries the line number."""


@dataclass
class PlaFile:
    """A parsed PLA: cube rows plus the declared shape."""

    n_inputs: int
    n_outputs: int
    cubes: list[tuple[str, str]] = field(default_factory=list)
    name: str | None = None
    declared_terms: int | None = None
    warnings: list[str] = field(default_factory=list)

    def onset(self, output: int) -> list[str]:
        """Input cubes on which this output is 1."""
        return [ins for ins, outs in self.cubes if outs[output] == "1"]

    def dcset(self, output: int) -> list[str]:
        """Input cubes on which this output is unspecified."""
        return [ins for ins, outs in self.cubes if outs[output] in "-~"]


def parse_pla(text: str, name: str | None = None) -> PlaFile:
    n_inputs = n_outputs = None
    declared_terms = None
    cubes: list[tuple[str, str]] = []
    warnings: list[str] = []
    ended = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or ended:
            continue
        if line.startswith("."):
            parts = line.split()
            directive = parts[0]
            if directive == ".i":
                n_inputs = _int_arg(parts, lineno)
            elif directive == ".o":
                n_outputs = _int_arg(parts, lineno)
            elif directive == ".p":
                declared_terms = _int_arg(parts, lineno)
            elif directive in (".e", ".end"):
                ended = True
            elif directive in _KNOWN_IGNORED:
                pass
            else:
                message = f"line {lineno}: unknown directive {directive!r} ignored"
                warnings.append(message)
                log.warning("%s", message)
            continue
        if n_inputs is None or n_outputs is None:
            raise PlaError(f"line {lineno}: cube before .i/.o declarations")
        parts = line.split()
        if len(parts) == 1 and len(parts[0]) == n_inputs + n_outputs:
            parts = [parts[0][:n_inputs], parts[0][n_inputs:]]
        if len(parts) != 2:
            raise PlaError(f"line {lineno}: expected input and output parts")
        ins, outs = parts
        if len(ins) != n_inputs:
            raise PlaError(
                f"line {lineno}: input part has width {len(ins)}, expected {n_inputs}")
        if len(outs) != n_outputs:
            raise PlaError(
                f"line {lineno}: output part has width {len(outs)}, expected {n_outputs}")
        if not set(ins) <= _IN_CHARS:
            raise PlaError(f"line {lineno}: invalid input characters in {ins!r}")
        if not set(outs) <= _OUT_CHARS:
            raise PlaError(f"line {lineno}: invalid output characters in {outs!r}")
        cubes.append((ins, outs))

    if n_inputs is None or n_outputs is None:
        raise PlaError("missing .i/.o declarations")
    if declared_terms is not None and declared_terms != len(cubes):
        raise PlaError(
            f".p declares {declared_terms} product terms but {len(cubes)} cubes found")
    return PlaFile(n_inputs, n_outputs, cubes, name, declared_terms, warnings)


def _int_arg(parts: list[str], lineno: int) -> int:
    if len(parts) != 2 or not parts[1].isdigit():
        raise PlaError(f"line {lineno}: {parts[0]} needs one integer argument")
    return int(parts[1])


def load_pla(path) -> PlaFile:
    from pathlib import Path

    p = Path(path)
    return parse_pla(p.read_text(), name=p.stem)
