"""Pisot / Salem / quasi-Pisot / quasi-Salem classification.

Whether a root sits exactly on the unit circle is never decided numerically:
the exact count comes from :func:`poly.unit_circle_root_count`, and
enclosures are refined until all the other roots are certified off the circle.
"""
from dataclasses import dataclass, field as dc_field
from enum import Enum

from . import poly
from .errors import NoRootOutsideUnitDisk, PrecisionExhausted
from .roots import PRECISION_CAP, isolate_roots


class Kind(str, Enum):
    PISOT = "Pisot"
    SALEM = "Salem"
    QUASI_PISOT = "QuasiPisot"
    QUASI_SALEM = "QuasiSalem"
    NONE = "None"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    distinguished_root: int | None
    unit_circle_count: int
    outside: tuple = ()
    on_circle: tuple = ()
    inside: tuple = ()
    moduli: tuple = dc_field(default=(), compare=False)

    @property
    def is_quasi_pisot(self):
        return self.kind in (Kind.PISOT, Kind.QUASI_PISOT)

    @property
    def is_quasi_salem(self):
        return self.kind in (Kind.SALEM, Kind.QUASI_SALEM)

    @property
    def is_pisot_or_salem(self):
        return self.kind in (Kind.PISOT, Kind.SALEM)

    def to_json(self, polynomial):
        return {
            "polynomial": list(polynomial),
            "kind": self.kind.value,
            "distinguished_root": self.distinguished_root,
            "moduli": [[f"{float(lo):.12g}", f"{float(hi):.12g}"] for lo, hi in self.moduli],
            "unit_circle_count": self.unit_circle_count,
        }


def modulus_partition(field, cap=PRECISION_CAP):
    """Split root indices into (outside, on circle, inside) the unit circle, exactly."""
    u = poly.unit_circle_root_count(list(field.p))
    roots = isolate_roots(field)
    d = field.d
    prec = 64
    while True:
        encs = [r.refine(prec, cap) for r in roots] if prec > 64 else roots
        outside, inside, unknown = [], [], []
        for r in encs:
            if r.ball.abs_lower() > 1:
                outside.append(r.index)
            elif r.ball.abs_upper() < 1:
                inside.append(r.index)
            else:
                unknown.append(r.index)
        if len(outside) + len(inside) == d - u:
            moduli = tuple((r.ball.abs_lower(), r.ball.abs_upper()) for r in encs)
            return tuple(outside), tuple(unknown), tuple(inside), moduli
        if len(unknown) < u:
            raise ArithmeticError("exact unit-circle count disagrees with enclosures")
        prec *= 2
        if prec > cap:
            raise PrecisionExhausted("could not separate roots from the unit circle")


def classify(field, cap=PRECISION_CAP):
    """Classify the roots of ``field.p`` of modulus > 1.

    Raises :class:`NoRootOutsideUnitDisk` if every root has modulus <= 1.
    """
    outside, on_circle, inside, moduli = modulus_partition(field, cap)
    u = len(on_circle)
    if not outside:
        raise NoRootOutsideUnitDisk(f"{poly.format_polynomial(field.p)} has no root of modulus > 1")
    roots = isolate_roots(field)
    kind = Kind.NONE
    distinguished = None
    if len(outside) == 1 and roots[outside[0]].is_real:
        distinguished = outside[0]
        positive = roots[distinguished].ball.real_interval()[0] > 0
        if positive:
            kind = Kind.SALEM if u else Kind.PISOT
        else:
            kind = Kind.QUASI_SALEM if u else Kind.QUASI_PISOT
    elif len(outside) == 2 and not roots[outside[0]].is_real:
        # the conjugate of a non-real outside root is the other outside root
        distinguished = outside[0]
        kind = Kind.QUASI_SALEM if u else Kind.QUASI_PISOT
    return Classification(kind, distinguished, u, outside, on_circle, inside, moduli)
