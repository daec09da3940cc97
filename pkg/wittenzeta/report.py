import json
from dataclasses import dataclass, field
from fractions import Fraction
from textwrap import dedent
from typing import Any, Dict, Iterable

import mpmath
import typer
from jinja2 import Template
from rich.console import Console

from .numeric import Estimate


console = Console()


@dataclass
class CommandResult:
    command: str
    inputs: Dict[str, Any]
    status: str = "ok"
    payload: Dict[str, Any] = field(default_factory=dict)
    timing_ms: int = 0
    holds: bool = True

    def to_json(self) -> str:
        return json.dumps(dict(
            command=self.command,
            inputs=self.inputs,
            status=self.status,
            payload=self.payload,
            timing_ms=self.timing_ms,
        ), separators=(",", ":"))


def exact(value: Fraction) -> str:
    """Rational in lowest terms as 'p/q' (or 'p' when integral)"""
    return str(Fraction(value))


def exact_set(values: Iterable) -> list:
    """Sorted set, integers kept as numbers and other rationals as strings"""
    out = []
    for v in sorted(values):
        out.append(int(v) if Fraction(v).denominator == 1 else exact(v))
    return out


def decimal(value, digits: int = 30) -> Any:
    """mpmath number as a decimal string, complex numbers as {re, im}"""
    if isinstance(value, mpmath.mpc):
        if value.imag == 0:
            return mpmath.nstr(value.real, digits)
        return dict(re=mpmath.nstr(value.real, digits), im=mpmath.nstr(value.imag, digits))
    return mpmath.nstr(value, digits)


def estimate(value: Estimate, digits: int = 30) -> Dict[str, Any]:
    return dict(value=decimal(value.value, digits), error=mpmath.nstr(value.error, 5))


def zeta_terms(terms: Iterable) -> list:
    return [dict(coefficient=exact(c), zeta=list(args)) for c, args in terms]


def emit(result: CommandResult, as_json: bool, template: str = None) -> None:
    """Write the result to stdout, as one JSON record or through its text template"""
    if as_json:
        typer.echo(result.to_json())
        return
    if result.status != "ok":
        return
    text = Template(dedent(template).strip("\n")).render(**result.payload, inputs=result.inputs)
    console.print(text, highlight=False, markup=False)
