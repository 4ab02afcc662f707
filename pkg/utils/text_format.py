"""Text forms shared by field elements, polynomials and ring elements.

Parsing goes through sympy so that arbitrary term order, omitted `*` and `^` powers
are all accepted; printing is canonical and lives next to each type.
"""

import re
from fractions import Fraction
from tokenize import TokenError
from typing import Optional, Sequence

from sympy import Poly as SympyPoly
from sympy import Symbol, SympifyError
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)
from sympy.polys.polyerrors import BasePolynomialError

from utils.common import ParseError

_TRANSFORMATIONS = standard_transformations + (
    implicit_multiplication_application,
    convert_xor,
)

Monomial = tuple[int, ...]

MAX_EXPONENT = 2**12
"""Largest exponent literal accepted in polynomial text."""

_ALLOWED_TEXT = re.compile(r"[0-9A-Za-z_+\-*/^()\s]*")
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_POWER = re.compile(r"\*\*|\^")
_EXPONENT = re.compile(r"\s*([0-9]+)")


def _is_declared(identifier: str, variables: Sequence[str]) -> bool:
    if identifier in variables:
        return True
    # `2xa` splits into x*a when every variable is a single letter
    return all(len(name) == 1 for name in variables) and all(
        ch in variables for ch in identifier
    )


def _group_start(text: str, close: int) -> int:
    depth = 0
    for i in range(close, -1, -1):
        if text[i] == ")":
            depth += 1
        elif text[i] == "(":
            depth -= 1
            if depth == 0:
                return i
    return 0


def check_polynomial_text(
    text: str, variables: Sequence[str], max_exponent: int = MAX_EXPONENT
) -> None:
    """Reject anything but numbers, the declared variables, + - * / ^ and parentheses.

    Exponents must be integer literals of at most `max_exponent`, and a power may not
    apply to another power, so the expanded size stays bounded by the text.

    Raises:
        ParseError: On any other character, identifier or exponent.
    """
    if not _ALLOWED_TEXT.fullmatch(text):
        bad = sorted({ch for ch in text if not _ALLOWED_TEXT.fullmatch(ch)})
        raise ParseError(f"Cannot parse {text!r}: unexpected characters {''.join(bad)!r}")
    for identifier in _IDENTIFIER.findall(text):
        if not _is_declared(identifier, variables):
            raise ParseError(
                f"Cannot parse {text!r}: unknown name {identifier!r}; expected {', '.join(variables)}"
            )
    for power in _POWER.finditer(text):
        exponent = _EXPONENT.match(text, power.end())
        if not exponent:
            raise ParseError(f"Cannot parse {text!r}: exponents must be integer literals")
        if int(exponent.group(1)) > max_exponent:
            raise ParseError(
                f"Cannot parse {text!r}: exponent {exponent.group(1)} is larger than {max_exponent}"
            )
        if _POWER.match(text[exponent.end() :].lstrip()):
            raise ParseError(f"Cannot parse {text!r}: chained powers are not supported")
        base = text[: power.start()].rstrip()
        if base.endswith(")") and _POWER.search(base[_group_start(base, len(base) - 1) :]):
            raise ParseError(f"Cannot parse {text!r}: a power of a group that already contains a power is not supported")


def parse_rational_polynomial(
    text: str, variables: Sequence[str], max_exponent: Optional[int] = None
) -> dict[Monomial, Fraction]:
    """Parse `text` as a polynomial in `variables` with rational coefficients.

    The text is checked with `check_polynomial_text` before sympy sees it.

    Returns:
        Mapping from exponent tuples (ordered like `variables`) to nonzero coefficients.

    Raises:
        ParseError: If the text is not a polynomial in exactly these variables.
    """
    if not text or not text.strip():
        raise ParseError("Empty polynomial text")
    check_polynomial_text(
        text, variables, MAX_EXPONENT if max_exponent is None else max_exponent
    )
    symbols = {name: Symbol(name) for name in variables}
    try:
        expr = parse_expr(
            text, local_dict=symbols, transformations=_TRANSFORMATIONS, evaluate=True
        )
        poly = SympyPoly(expr, *symbols.values())
    except (
        SyntaxError,
        TokenError,
        TypeError,
        ValueError,
        SympifyError,
        BasePolynomialError,
    ) as exc:
        raise ParseError(f"Cannot parse {text!r}: {exc}")

    terms: dict[Monomial, Fraction] = {}
    for monom, coeff in poly.terms():
        if not coeff.is_rational:
            raise ParseError(
                f"Cannot parse {text!r}: coefficient {coeff} is not rational in {', '.join(variables)}"
            )
        if coeff != 0:
            terms[tuple(int(e) for e in monom)] = Fraction(int(coeff.p), int(coeff.q))
    return terms


def join_terms(pieces: Sequence[str]) -> str:
    """Join already formatted terms with `+`; the empty sum prints as `0`."""
    if not pieces:
        return "0"
    return "+".join(pieces)


def format_monomial(coefficient: str, variable: str, exponent: int) -> str:
    """Format `coefficient * variable^exponent` canonically.

    The coefficient text must be nonzero. Multi-term coefficients are parenthesised
    when they multiply a power of the variable.
    """
    if exponent == 0:
        return coefficient
    power = variable if exponent == 1 else f"{variable}^{exponent}"
    if coefficient == "1":
        return power
    if "+" in coefficient:
        coefficient = f"({coefficient})"
    return f"{coefficient}*{power}"
