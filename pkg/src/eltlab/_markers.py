"""Order markers used by the tangible projection and valuations.

BOTTOM sits strictly below every rational and TOP strictly above.
Both absorb under + so they can ride along in max-plus style sums.
They are plain singletons, not floats, so no floating point sneaks
into exact computations.
"""

from __future__ import annotations


class Bottom:
    """Singleton ordered below all rationals; -inf of the tangible line."""

    __slots__ = ()
    _instance = None

    def __new__(cls) -> "Bottom":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Bottom)

    def __hash__(self) -> int:
        return hash("eltlab.bottom")

    def __lt__(self, other: object) -> bool:
        return not isinstance(other, Bottom)

    def __le__(self, other: object) -> bool:
        return True

    def __gt__(self, other: object) -> bool:
        return False

    def __ge__(self, other: object) -> bool:
        return isinstance(other, Bottom)

    # max-plus product: -inf absorbs
    def __add__(self, other: object) -> "Bottom":
        return self

    __radd__ = __add__

    def __repr__(self) -> str:
        return "-inf"


class Top:
    """Singleton ordered above all rationals; +inf used by valuations."""

    __slots__ = ()
    _instance = None

    def __new__(cls) -> "Top":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Top)

    def __hash__(self) -> int:
        return hash("eltlab.top")

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return isinstance(other, Top)

    def __gt__(self, other: object) -> bool:
        return not isinstance(other, Top)

    def __ge__(self, other: object) -> bool:
        return True

    def __add__(self, other: object) -> "Top":
        return self

    __radd__ = __add__

    def __repr__(self) -> str:
        return "+inf"


BOTTOM = Bottom()
TOP = Top()
