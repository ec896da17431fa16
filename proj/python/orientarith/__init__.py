"""Exact moment-group and orientation arithmetic.

Integers come back as int, rationals as fractions.Fraction. Check reports and other
structured results are plain dicts following the JSON schema of the command-line tool.
"""

import json
from fractions import Fraction

from . import _orientarith as _core
from ._orientarith import MembershipError, PrecisionError

SCHEMA_VERSION = _core.SCHEMA_VERSION

__all__ = [
    "MembershipError",
    "PrecisionError",
    "SCHEMA_VERSION",
    "basis_data",
    "basis_rank_check",
    "bernoulli",
    "cusp_evaluate",
    "eisenstein",
    "ko_check",
    "lift_to_tmf",
    "mom0_check",
    "mom_euler_check",
    "moment_modulus",
    "padic_valuation",
    "phi_apply",
    "phi_invert",
    "phi_matrix",
    "psi0_apply",
    "psi0_invert",
    "psi2_apply",
    "run_cli",
    "spin_extend",
    "tmf_check",
]


def _text(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, (int, str)):
        return str(x)
    raise TypeError(f"expected int, Fraction or str, got {type(x).__name__}")


def _texts(xs):
    return [_text(x) for x in xs]


def _ints(xs):
    return [int(x) for x in xs]


def _fractions(xs):
    return [Fraction(x) for x in xs]


def bernoulli(n):
    return Fraction(_core.bernoulli(n))


def padic_valuation(x, p):
    """None for zero."""
    return _core.padic_valuation(_text(x), p)


def moment_modulus(k):
    return int(_core.moment_modulus(k))


def phi_matrix(m, rows):
    """Rows 0..rows of the lower-triangular matrix, as lists of int."""
    return [_ints(r) for r in json.loads(_core.phi_matrix(m, rows))["rows"]]


def phi_apply(m, l, K):
    return _ints(_core.phi_apply(m, _texts(l), K))


def phi_invert(m, seq, K, first=None):
    return _ints(_core.phi_invert(m, m if first is None else first, _texts(seq), K))


def mom_euler_check(seq, m, K, first=None):
    return json.loads(_core.mom_euler_check(m, m if first is None else first, _texts(seq), K))


def mom0_check(seq, m, K, first=None):
    return json.loads(_core.mom0_check(m, m if first is None else first, _texts(seq), K))


def psi0_apply(m, high, K, low=()):
    """low[k-1] maps a prime to the residue of the k-th profinite parameter; missing primes are 0."""
    low = [{int(p): _text(x) for p, x in comps.items()} for comps in low]
    low += [{}] * max(0, m - 1 - len(low))
    return _ints(_core.psi0_apply(m, low, _texts(high), K))


def psi0_invert(m, seq, K, first=None):
    out = json.loads(_core.psi0_invert(m, m if first is None else first, _texts(seq), K))
    out["high"] = _ints(out["high"])
    return out


def psi2_apply(q, K):
    """q holds q_4, q_6, ...; returns the multipliers r_4, r_6, ..."""
    return _fractions(_core.psi2_apply(_texts(q), K))


def cusp_evaluate(multipliers):
    return _fractions(_core.cusp_evaluate(_texts(multipliers)))


def eisenstein(k, terms):
    """(a_0, [a_1, ..., a_terms])."""
    j = json.loads(_core.eisenstein(k, terms))
    return Fraction(j["a0"]), _ints(j["coefficients"])


def ko_check(variant, seq, K):
    return json.loads(_core.ko_check(variant, _texts(seq), K))


def tmf_check(multipliers, K, q_terms=100):
    return json.loads(_core.tmf_check(_texts(multipliers), K, q_terms))


def lift_to_tmf(variant, seq, K):
    out = json.loads(_core.lift_to_tmf(variant, _texts(seq), K))
    if out.get("status") == "lifted":
        out["entries"] = _fractions(out["entries"])
    return out


def basis_data(p, k, m=1):
    out = json.loads(_core.basis_data(p, k, m))
    out["C"] = int(out["C"])
    out["c"] = _ints(out["c"])
    return out


def basis_rank_check(p, n, k_shift=0, even_only=False):
    return _core.basis_rank_check(p, n, k_shift, even_only)


def spin_extend(p, b2_target, precision, K, l_string=()):
    return _fractions(_core.spin_extend(p, _text(b2_target), precision, _texts(l_string), K))


def run_cli(args):
    """(exit code, stdout, stderr) of the command-line tool run in-process."""
    return _core.run_cli([str(a) for a in args])
