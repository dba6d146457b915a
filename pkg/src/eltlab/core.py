"""Scalar algebra: backend selection, layer rings, inversion, text format.

The scalar type itself lives in a kernel module.  Two kernels exist
with identical APIs: eltlab._kernel (Cython) and eltlab._pykernel
(pure Python).  Selection happens once at import:

* ELTLAB_BACKEND=auto (default): compiled kernel if importable, else
  the pure one,
* ELTLAB_BACKEND=c: compiled kernel, ImportError if absent,
* ELTLAB_BACKEND=py: pure kernel unconditionally.

Everything downstream (matrices, polynomials, the CLI) imports the
scalar type from here and never from a kernel directly.

Layers live in a commutative ring, rationals by default.  The ring
only matters where division or unit checks happen (invert, matrix
quasi-inverse, root solving), so scalars store plain Fractions and
the ring is passed to those operations explicitly.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from typing import Union

from ._markers import BOTTOM, TOP, Bottom, Top  # re-exported
from .errors import NonInvertible, ParseError


def _load_backend():
    choice = os.environ.get("ELTLAB_BACKEND", "auto").strip().lower() or "auto"
    if choice in ("auto",):
        try:
            from . import _kernel as kernel
        except ImportError:
            from . import _pykernel as kernel
        return kernel
    if choice in ("c", "compiled"):
        from . import _kernel as kernel
        return kernel
    if choice in ("py", "python", "pure"):
        from . import _pykernel as kernel
        return kernel
    raise ValueError(f"ELTLAB_BACKEND={choice!r}: expected auto, c or py")


_backend = _load_backend()

ELTScalar = _backend.ELTScalar
NEG_INF = _backend.NEG_INF
ONE = _backend.ONE
BACKEND = _backend.BACKEND_NAME

RationalLike = Union[Fraction, int, str]


def scalar(tangible: RationalLike, layer: RationalLike) -> ELTScalar:
    """Build a finite scalar tangible^[layer]."""
    return ELTScalar(tangible, layer)


def layer(x: ELTScalar) -> Fraction:
    """Layer projection; -inf maps to 0."""
    return x.layer


def tangible(x: ELTScalar) -> Union[Fraction, Bottom]:
    """Tangible projection; -inf maps to the BOTTOM marker."""
    return x.tangible


# ---------------------------------------------------------------------------
# layer rings


class LayerRing:
    """The rational layer ring (a field; every nonzero layer is a unit)."""

    name = "Q"

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def contains(self, a: Fraction) -> bool:
        return isinstance(a, Fraction)

    def __contains__(self, a: Fraction) -> bool:
        return self.contains(a)

    def is_unit(self, a: Fraction) -> bool:
        return a != 0

    def inverse(self, a: Fraction) -> Fraction:
        if not self.is_unit(a):
            raise NonInvertible(f"{a} is not a unit of {self.name}")
        return 1 / a

    def __repr__(self) -> str:
        return f"<layer ring {self.name}>"


class IntegerLayerRing(LayerRing):
    """Integer layers: same carrier representation, units only +-1.

    Useful for exercising the non-field case; values are still stored
    as Fractions with denominator 1.
    """

    name = "Z"

    def contains(self, a: Fraction) -> bool:
        return isinstance(a, Fraction) and a.denominator == 1

    def is_unit(self, a: Fraction) -> bool:
        return a == 1 or a == -1

    def inverse(self, a: Fraction) -> Fraction:
        if not self.is_unit(a):
            raise NonInvertible(f"{a} is not a unit of {self.name}")
        return a


Q_RING = LayerRing()
Z_RING = IntegerLayerRing()

_RINGS = {"Q": Q_RING, "Z": Z_RING}


def get_ring(name: str) -> LayerRing:
    try:
        return _RINGS[name.upper()]
    except KeyError:
        raise ValueError(f"unknown layer ring {name!r}: expected Q or Z") from None


def invert(x: ELTScalar, ring: LayerRing = Q_RING) -> ELTScalar:
    """Multiplicative inverse (-t(x))^[s(x)^-1].

    Exists exactly when x is finite and its layer is a unit of the
    layer ring; then x * invert(x) == 0^[1].
    """
    if x.is_neg_inf:
        raise NonInvertible("-inf has no multiplicative inverse")
    s = x.layer
    if not ring.contains(s) or not ring.is_unit(s):
        raise NonInvertible(f"layer {s} is not a unit of {ring.name}")
    return ELTScalar(-x.tangible, ring.inverse(s))


# ---------------------------------------------------------------------------
# text format
#
# Scalars print as <tangible>^[<layer>] with both rationals reduced
# ("p" or "p/q", q > 1), and -inf for the additive identity.  The
# parser accepts exactly the reduced forms (a redundant "/1" is
# tolerated) and rejects unreduced or zero-denominator input.

_RAT_RE = re.compile(r"(?:0|-?[1-9][0-9]*)(?:/[1-9][0-9]*)?\Z")


def parse_rational(text: str, position: int | None = None) -> Fraction:
    """Parse a reduced rational literal like ``-3/2`` or ``7``."""
    t = text.strip()
    if not _RAT_RE.match(t):
        if re.match(r"-?[0-9]+/0+\Z", t):
            raise ParseError(f"zero denominator in {text!r}", position)
        raise ParseError(f"malformed rational {text!r}", position)
    if "/" in t:
        num_s, den_s = t.split("/")
        num = int(num_s)
        den = int(den_s)
        value = Fraction(num, den)
        if value.numerator != num or value.denominator != den:
            raise ParseError(f"rational {text!r} is not reduced", position)
        return value
    return Fraction(int(t))


def format_rational(value: Fraction) -> str:
    return str(value)


def parse_scalar(text: str) -> ELTScalar:
    """Parse the scalar format: ``3/2^[-1]``, ``0^[1]``, ``-inf``."""
    t = text.strip()
    if t == "-inf":
        return NEG_INF
    head, sep, tail = t.partition("^[")
    if not sep or not tail.endswith("]"):
        raise ParseError(f"malformed scalar {text!r}: expected t^[l] or -inf")
    tang = parse_rational(head, position=0)
    lay = parse_rational(tail[:-1], position=len(head) + 2)
    return ELTScalar(tang, lay)


def format_scalar(x: ELTScalar) -> str:
    return str(x)
