"""Result serialization: JSON, CSV and LaTeX emitters for CLI output."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Sequence

from .base_rings import UVLaurent

SCHEMA_VERSION = 1


def poly_to_json(e: UVLaurent) -> Dict:
    return {
        "text": e.text(),
        "terms": [
            {"u": a, "v": b, "coeff": str(c)}
            for (a, b), c in sorted(e.items(), reverse=True)
        ],
    }


def poly_to_csv(e: UVLaurent) -> str:
    lines = ["u_exp,v_exp,coeff"]
    for (a, b), c in sorted(e.items(), reverse=True):
        lines.append(f"{a},{b},{c}")
    return "\n".join(lines) + "\n"


def _coeff_latex(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        sign = "-" if c < 0 else ""
        return sign + r"\frac{%d}{%d}" % (abs(c.numerator), c.denominator)
    return str(c)


def poly_to_latex(e: UVLaurent) -> str:
    """Render a u, v Laurent polynomial as LaTeX."""
    items = sorted(e.items(), reverse=True)
    if not items:
        return "0"
    parts: List[str] = []
    for idx, ((a, b), c) in enumerate(items):
        pieces = []
        if a:
            pieces.append("u" if a == 1 else "u^{%d}" % a)
        if b:
            pieces.append("v" if b == 1 else "v^{%d}" % b)
        vars_ = " ".join(pieces)
        mag = c if idx == 0 else abs(c)
        if not vars_:
            body = _coeff_latex(mag)
        elif mag == 1:
            body = vars_
        elif mag == -1 and idx == 0:
            body = "-" + vars_
        else:
            body = _coeff_latex(mag) + r"\, " + vars_
        if idx == 0:
            parts.append(body)
        else:
            parts.append((" + " if _is_positive(c) else " - ") + body)
    return "".join(parts).strip()


def _is_positive(c) -> bool:
    return c > 0


def lefschetz_power_latex(exponent: int) -> str:
    """L^n with the Lefschetz class rendered as \\mathbb{L}."""
    return r"\mathbb{L}^{%d}" % exponent


def lambda_class_latex(i: int) -> str:
    """The i-th lambda class of the weight-one part of the curve."""
    return r"\lambda^{%d}(h^1)" % i


def weil_env_latex(env, lambda_values: Sequence) -> List[str]:
    """LaTeX lines describing a numeric environment: the Lefschetz value and
    the lambda classes of h^1 it realizes."""
    lines = [r"\mathbb{L} = %s" % _frac_latex(env.lefschetz)]
    for i, value in enumerate(lambda_values):
        if i == 0:
            continue
        lines.append(lambda_class_latex(i) + " = " + _frac_latex(value))
    return lines


def _frac_latex(x) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    sign = "-" if f < 0 else ""
    return sign + r"\frac{%d}{%d}" % (abs(f.numerator), f.denominator)


def betti_to_csv(betti: Sequence[int]) -> str:
    lines = ["k,b_k"]
    for k, b in enumerate(betti):
        lines.append(f"{k},{b}")
    return "\n".join(lines) + "\n"


def betti_to_latex(betti: Sequence[int]) -> str:
    header = " & ".join(f"$b_{{{k}}}$" for k in range(len(betti)))
    row = " & ".join(str(b) for b in betti)
    return (
        "\\begin{tabular}{%s}\n%s \\\\\n%s \\\\\n\\end{tabular}"
        % ("c" * len(betti), header, row)
    )


def dump_json(payload: Dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
