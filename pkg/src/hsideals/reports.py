"""Witness reports for ideal equalities and containments."""
from __future__ import annotations

from dataclasses import dataclass, field

from .monomials import Monomial, MonomialIdeal, format_ideal


@dataclass(frozen=True)
class CheckReport:
    """Outcome of comparing two ideals, with the generators that break equality.

    ``missing_from_left`` holds generators of the right side outside the left
    side, and the other way round for ``missing_from_right``.
    """

    check: str
    holds: bool
    params: dict = field(default_factory=dict)
    left: MonomialIdeal | None = None
    right: MonomialIdeal | None = None
    missing_from_left: tuple[Monomial, ...] = ()
    missing_from_right: tuple[Monomial, ...] = ()
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds

    @property
    def witness(self) -> dict | None:
        """First offending generator with the side it is missing from, if any."""
        if self.missing_from_left:
            return {"side": "left", "generator": list(self.missing_from_left[0])}
        if self.missing_from_right:
            return {"side": "right", "generator": list(self.missing_from_right[0])}
        return None

    def to_dict(self) -> dict:
        out = {"check": self.check, "holds": self.holds, "params": dict(self.params)}
        if self.left is not None:
            out["left"] = format_ideal(self.left)
        if self.right is not None:
            out["right"] = format_ideal(self.right)
        out["missing_from_left"] = [list(g) for g in self.missing_from_left]
        out["missing_from_right"] = [list(g) for g in self.missing_from_right]
        if self.note:
            out["note"] = self.note
        return out


def compare_ideals(check: str, left: MonomialIdeal, right: MonomialIdeal, note: str = "", **params) -> CheckReport:
    """Equality by containment in both directions."""
    miss_left = tuple(left.missing(right))
    miss_right = tuple(right.missing(left))
    return CheckReport(
        check=check,
        holds=not miss_left and not miss_right,
        params=params,
        left=left,
        right=right,
        missing_from_left=miss_left,
        missing_from_right=miss_right,
        note=note,
    )


def check_containment(check: str, big: MonomialIdeal, small: MonomialIdeal, **params) -> CheckReport:
    """small ⊆ big; offenders are reported as missing from the left (big) side."""
    miss = tuple(big.missing(small))
    return CheckReport(check, not miss, params, big, small, miss, ())


@dataclass(frozen=True)
class SeriesReport:
    """A property tracked along k, e.g. minimal primes or heights of HS_i(I^k)."""

    check: str
    holds: bool
    params: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)  # k -> JSON-ready value
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "holds": self.holds,
            "params": dict(self.params),
            "values": {str(k): v for k, v in sorted(self.values.items())},
            "witness": self.witness,
        }
