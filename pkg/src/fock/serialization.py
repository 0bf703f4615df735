from .polynomial import Polynomial, is_exact
from .fock_vector import FockVector
from fractions import Fraction
from tokenize import TokenError
from typing import Dict, Union

from sympy.parsing.sympy_parser import parse_expr, standard_transformations, rationalize

import json
import re
import sympy

MAX_POWER_DEGREE = 64

_ALLOWED = re.compile(r"^[\sz0-9.eE+\-*/^(),]*$")
_VARIABLE = re.compile(r"z(\d+)")
_POWER = re.compile(r"\^\s*(\d+)")
_JUXTAPOSED = re.compile(r"(\d)(?=z)")
_NUMBER = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_COMPLEX_PAIR = re.compile(rf"\(\s*({_NUMBER})\s*,\s*({_NUMBER})\s*\)")


class PolynomialParseError(ValueError):
    pass


def _sympy_to_scalar(value):
    value = sympy.nsimplify(value) if value.is_Float else value
    real, imag = sympy.re(value), sympy.im(value)
    if imag == 0 and real.is_Rational:
        return Fraction(int(real.p), int(real.q))
    return complex(float(real), float(imag))


def parse_polynomial(text: str, d: int = None) -> Polynomial:
    """
    Parses the shared text format, e.g. "2*z1*z2 + 0.5*z1^3", "(0,1)*z2", "2*z1^2z2" or "(z1*z2)^2".
    Adjacent factors such as "z1z2" multiply.
    Decimal coefficients are read as exact rationals.
    """
    if not isinstance(text, str) or not text.strip():
        raise PolynomialParseError("Empty polynomial text")
    if not _ALLOWED.match(text):
        raise PolynomialParseError(f"Unexpected characters in polynomial: {text!r}")

    for power in _POWER.findall(text):
        if int(power) > MAX_POWER_DEGREE:
            raise PolynomialParseError(f"Power {power} exceeds the cap of {MAX_POWER_DEGREE}")

    indices = [int(i) for i in _VARIABLE.findall(text)]
    if any(i < 1 for i in indices):
        raise PolynomialParseError(f"Variables are numbered from z1: {text!r}")
    found = max(indices, default=1)
    if d is None:
        d = found
    elif found > d:
        raise PolynomialParseError(f"Variable z{found} used but dimension is {d}")

    prepared = _JUXTAPOSED.sub(r"\1*", text)
    prepared = _COMPLEX_PAIR.sub(lambda m: f"({m.group(1)}+({m.group(2)})*I)", prepared).replace("^", "**")
    symbols = sympy.symbols(f"z1:{d + 1}")
    local_dict = {f"z{i + 1}": s for i, s in enumerate(symbols)}

    try:
        expr = parse_expr(
            prepared,
            local_dict=local_dict,
            global_dict={"I": sympy.I, "Integer": sympy.Integer, "Float": sympy.Float, "Rational": sympy.Rational},
            transformations=standard_transformations + (rationalize,),
        )
        poly = sympy.Poly(sympy.expand(expr), *symbols)
    except (SyntaxError, TokenError, TypeError, NameError, sympy.PolynomialError, sympy.SympifyError) as e:
        raise PolynomialParseError(f"Cannot parse polynomial {text!r}: {e}")

    if poly.total_degree() > MAX_POWER_DEGREE:
        raise PolynomialParseError(f"Total degree {poly.total_degree()} exceeds the cap of {MAX_POWER_DEGREE}")

    return Polynomial(d, {tuple(exps): _sympy_to_scalar(coeff) for exps, coeff in poly.terms()})


def _format_scalar(value) -> str:
    if is_exact(value):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return repr(float(value))
    value = complex(value)
    if value.imag == 0:
        return repr(value.real)
    return f"({value.real!r},{value.imag!r})"


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero:
        return "0"

    terms = []
    for alpha, value in p.items():
        factors = []
        for i, a in enumerate(alpha):
            if a == 1:
                factors.append(f"z{i + 1}")
            elif a > 1:
                factors.append(f"z{i + 1}^{a}")
        terms.append("*".join([_format_scalar(value)] + factors))
    return " + ".join(terms)


def polynomial_to_dict(p: Polynomial) -> Dict:
    terms = []
    for alpha, value in p.items():
        value = complex(value)
        terms.append({"alpha": list(alpha), "re": value.real, "im": value.imag})
    return {"d": p.d, "terms": terms}


def polynomial_from_dict(data: Dict, degree_bound: int = None) -> Union[Polynomial, FockVector]:
    try:
        d = int(data["d"])
        coeffs = {}
        for term in data["terms"]:
            alpha = tuple(int(a) for a in term["alpha"])
            re_part, im_part = term.get("re", 0), term.get("im", 0)
            if im_part == 0:
                value = Fraction(re_part)
            else:
                value = complex(re_part, im_part)
            coeffs[alpha] = coeffs.get(alpha, 0) + value
    except (KeyError, TypeError, ValueError) as e:
        raise PolynomialParseError(f"Invalid polynomial JSON: {e}")

    if degree_bound is not None:
        return FockVector(d, degree_bound, coeffs)
    return Polynomial(d, coeffs)


def load_polynomial_json(path: str) -> Polynomial:
    with open(path) as json_content:
        try:
            data = json.load(json_content)
        except json.JSONDecodeError as e:
            raise PolynomialParseError(f"File {path} is not valid JSON: {e}")
    return polynomial_from_dict(data)
