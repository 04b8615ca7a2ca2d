"""Deterministic structured-text reports.

A report is a versioned header built from the run configuration followed by
sections of ``key: value`` lines.  Field order is fixed by the caller and
nothing time- or host-dependent is written unless asked for, so identical
configurations give byte-identical output.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SrDegreeError

__all__ = ["REPORT_FORMAT", "RunConfig", "Section", "EmptyReport", "emit_report", "format_bound"]

REPORT_FORMAT = "srdegree-report/1"


class EmptyReport(SrDegreeError):
    pass


@dataclass
class RunConfig:
    command: str
    complex_path: str = None
    characteristic: int = None
    ext: int = None
    mode: str = None
    seed: int = None
    cap: int = None
    out: str = None
    verbosity: int = 0
    extra: list = field(default_factory=list)

    def header_fields(self):
        fields = [
            ("command", self.command),
            ("complex", self.complex_path),
            ("characteristic", self.characteristic),
            ("extension", self.ext),
            ("mode", self.mode),
            ("seed", self.seed),
            ("cap", self.cap),
            ("out", self.out),
            ("verbosity", self.verbosity),
        ]
        return fields + list(self.extra)


@dataclass
class Section:
    title: str
    fields: list = field(default_factory=list)

    def add(self, key, value):
        self.fields.append((key, value))
        return self


def format_bound(value):
    """Exact fraction plus a fixed-precision decimal."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator} ({float(value):.6e})"


def _format(value):
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_bound(value)
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(_format(v) for v in value) + ")"
    return str(value)


def emit_report(config, sections, version=None):
    """Render the header and sections; an empty section list is an error."""
    from . import __version__

    if not sections:
        raise EmptyReport("no results to report")
    lines = [REPORT_FORMAT, f"version: {version or __version__}"]
    for key, value in config.header_fields():
        lines.append(f"{key}: {_format(value)}")
    for section in sections:
        lines.append("")
        lines.append(f"[{section.title}]")
        for key, value in section.fields:
            lines.append(f"{key}: {_format(value)}")
    return "\n".join(lines) + "\n"
