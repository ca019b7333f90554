"""Order types built from finite orders, sums, omega and omega* repetitions."""
from __future__ import annotations

from dataclasses import dataclass


class OrderType:
    __slots__ = ()

    def __add__(self, other):
        return OSum((self, other))

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class OFin(OrderType):
    k: int


@dataclass(frozen=True)
class OStat(OrderType):
    """A single stationary point (printed "1")."""


@dataclass(frozen=True)
class OSum(OrderType):
    items: tuple


@dataclass(frozen=True)
class OOmega(OrderType):
    x: OrderType


@dataclass(frozen=True)
class OOmegaStar(OrderType):
    x: OrderType


OMEGA = OOmega(OFin(1))
OMEGA_STAR = OOmegaStar(OFin(1))


def _items(o):
    return o.items if isinstance(o, OSum) else (o,)


def starts_with_omega(o):
    """True when F(1) + o is isomorphic to o."""
    if isinstance(o, OOmega):
        return isinstance(o.x, OFin) or starts_with_omega(o.x)
    if isinstance(o, OSum):
        return starts_with_omega(o.items[0])
    return False


def ends_with_omega_star(o):
    """True when o + F(1) is isomorphic to o."""
    if isinstance(o, OOmegaStar):
        return isinstance(o.x, OFin) or ends_with_omega_star(o.x)
    if isinstance(o, OSum):
        return ends_with_omega_star(o.items[-1])
    return False


def _wrap(items):
    return items[0] if len(items) == 1 else OSum(tuple(items))


def canonical(o):
    if isinstance(o, (OFin, OStat)):
        return o
    if isinstance(o, OOmega):
        x = canonical(o.x)
        return OMEGA if isinstance(x, OFin) else OOmega(x)
    if isinstance(o, OOmegaStar):
        x = canonical(o.x)
        return OMEGA_STAR if isinstance(x, OFin) else OOmegaStar(x)
    items = []
    for it in o.items:
        items.extend(_items(canonical(it)))
    changed = True
    while changed:
        changed = False
        out = []
        for it in items:
            if isinstance(it, OFin) and it.k == 0:
                changed = True
                continue
            if out and isinstance(out[-1], OFin) and isinstance(it, OFin):
                out[-1] = OFin(out[-1].k + it.k)
                changed = True
            elif out and isinstance(out[-1], OFin) and starts_with_omega(it):
                out[-1] = it
                changed = True
            elif out and isinstance(it, OFin) and ends_with_omega_star(out[-1]):
                changed = True
            else:
                out.append(it)
        items = out
    return _wrap(items) if items else OFin(0)


def _show_inner(o):
    if isinstance(o, OSum):
        return "+".join(_show_inner(i) for i in o.items)
    return _show_atom(o)


def _show_atom(o):
    if isinstance(o, OFin):
        return f"F({o.k})"
    if isinstance(o, OStat):
        return "1"
    suffix = "w" if isinstance(o, OOmega) else "w*"
    if isinstance(o.x, OFin) and o.x.k == 1:
        return suffix
    return "(" + _show_inner(o.x) + ")·" + suffix


def show(o):
    return " + ".join(_show_atom(i) for i in _items(o))
