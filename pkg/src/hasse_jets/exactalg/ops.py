"""Named polynomial operations used across the package."""
from __future__ import annotations

from .poly import Poly, PolyRing

__all__ = ["substitute", "truncate_degree", "centered_ring"]


def substitute(p: Poly, assignment, target: PolyRing | None = None) -> Poly:
    """Replace variables simultaneously and expand (see ``Poly.substitute``)."""
    return p.substitute(assignment, target)


def centered_ring(ring: PolyRing, names=None) -> PolyRing:
    return ring if names is None else ring.with_names(names)


def truncate_degree(p: Poly, d: int, at=None, names=None) -> Poly:
    """Move ``at`` to the origin and drop every term of total degree above d.

    The result is expressed in centered coordinates: variable i of the
    returned ring stands for x_i - at_i.  ``names`` optionally renames them.
    """
    ring = p.ring
    target = centered_ring(ring, names)
    if at is None or all(not ring.field(a) for a in at):
        shifted = p if target is ring else Poly(target, p.terms)
    else:
        if len(at) != ring.nvars:
            raise ValueError(f"point has {len(at)} coordinates, ring has {ring.nvars} variables")
        shifted = p.substitute(
            {i: target.var(i) + ring.field(a) for i, a in enumerate(at)}, target
        )
    return shifted.truncate_total_degree(d)
