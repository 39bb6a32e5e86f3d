"""E-typical Witt vectors over the supported exact rings.

Coordinates are indexed directly by the members of the index set E.  All
arithmetic evaluates cached universal polynomials, so it is valid over any
ring; ghost components give the usual fast characterizations wherever the
relevant integers are invertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

from .indexset import IndexSet
from .numutil import divisors, valuation
from .rings import InexactDivision, Ring, RingElement, RingMismatch, UnsupportedRing
from .universal import get_universal


class WittError(Exception):
    pass


class DworkError(WittError):
    """An integer ghost vector is not in the image of the ghost map."""


@dataclass(frozen=True)
class WittVector:
    index_set: IndexSet
    ring: Ring
    coords: tuple  # raw canonical coefficient values, in index order

    def __post_init__(self):
        if len(self.coords) != len(self.index_set):
            raise WittError(
                f"expected {len(self.index_set)} coordinates, got {len(self.coords)}"
            )

    # -- accessors -----------------------------------------------------------
    def coord(self, n: int) -> RingElement:
        return self.ring.elem(self.coords[self.index_set.position(n)])

    def coord_raw(self, n: int):
        return self.coords[self.index_set.position(n)]

    def __repr__(self):
        body = ",".join(self.ring.el_to_str(c) for c in self.coords)
        return f"W{self.index_set}({body})"

    # -- arithmetic ------------------------------------------------------------
    def _match(self, other):
        if not isinstance(other, WittVector):
            raise WittError(f"cannot combine WittVector with {other!r}")
        if other.index_set != self.index_set:
            raise WittError(f"index set mismatch: {self.index_set} vs {other.index_set}")
        if other.ring != self.ring:
            raise RingMismatch(
                f"ring mismatch: {self.ring.descriptor()} vs {other.ring.descriptor()}"
            )
        return other

    def __add__(self, other):
        return witt_add(self, self._match(other))

    def __mul__(self, other):
        return witt_mul(self, self._match(other))

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        return witt_add(self, witt_neg(self._match(other)))

    def __eq__(self, other):
        return (
            isinstance(other, WittVector)
            and self.index_set == other.index_set
            and self.ring == other.ring
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.index_set, self.ring, self.coords))

    def is_zero(self):
        z = self.ring.zero()
        return all(c == z for c in self.coords)

    def to_json(self):
        return {
            "ring": self.ring.descriptor(),
            "index_set": list(self.index_set.elements),
            "coords": {str(n): self.ring.el_to_str(c) for n, c in zip(self.index_set, self.coords)},
        }


def make_witt(E: IndexSet, ring: Ring, values) -> WittVector:
    coords = []
    for v in values:
        if isinstance(v, RingElement):
            if v.ring != ring:
                raise RingMismatch("coordinate from a different ring")
            coords.append(v.value)
        elif isinstance(v, int):
            coords.append(ring.from_int(v))
        elif isinstance(v, str):
            coords.append(ring.el_from_str(v))
        else:
            coords.append(ring.canonicalize(v))
    return WittVector(E, ring, tuple(coords))


def witt_from_json(obj, ring=None) -> WittVector:
    from .rings import make_ring

    ring = ring or make_ring(obj["ring"])
    E = IndexSet.explicit(obj["index_set"])
    return make_witt(E, ring, [obj["coords"][str(n)] for n in E])


def witt_zero(E: IndexSet, ring: Ring) -> WittVector:
    return WittVector(E, ring, tuple(ring.zero() for _ in E))


def teichmuller(r, E: IndexSet, ring: Ring = None) -> WittVector:
    """[r] = (r, 0, 0, ...), the multiplicative section of the first ghost."""
    if isinstance(r, RingElement):
        ring = r.ring
        raw = r.value
    else:
        if ring is None:
            raise WittError("teichmuller needs a ring for a raw value")
        raw = ring.canonicalize(r) if not isinstance(r, int) else ring.from_int(r)
    coords = [raw] + [ring.zero()] * (len(E) - 1)
    return WittVector(E, ring, tuple(coords))


def witt_one(E: IndexSet, ring: Ring) -> WittVector:
    return teichmuller(1, E, ring)


def _eval_binary(op: str, a: WittVector, b: WittVector) -> WittVector:
    entry = get_universal(a.index_set, op)
    values = list(a.coords) + list(b.coords)
    coords = tuple(entry.poly(n).evaluate(a.ring, values) for n in a.index_set)
    return WittVector(a.index_set, a.ring, coords)


def witt_add(a: WittVector, b: WittVector) -> WittVector:
    return _eval_binary("sum", a, b)


def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    return _eval_binary("product", a, b)


def witt_neg(a: WittVector) -> WittVector:
    entry = get_universal(a.index_set, "negation")
    coords = tuple(entry.poly(n).evaluate(a.ring, list(a.coords)) for n in a.index_set)
    return WittVector(a.index_set, a.ring, coords)


def witt_sub(a: WittVector, b: WittVector) -> WittVector:
    return witt_add(a, witt_neg(b))


def witt_from_int(n: int, E: IndexSet, ring: Ring) -> WittVector:
    """Image of the integer n under Z -> W_E(R)."""
    result = witt_zero(E, ring)
    if n == 0:
        return result
    step = witt_one(E, ring)
    if n < 0:
        step = witt_neg(step)
        n = -n
    while n:
        if n & 1:
            result = witt_add(result, step)
        n >>= 1
        if n:
            step = witt_add(step, step)
    return result


# ---------------------------------------------------------------------------
# ghost components


def ghost_raw(a: WittVector) -> dict:
    """g_n(a) = sum_{d|n} d * a_d^{n/d} as raw ring values."""
    ring = a.ring
    out = {}
    powcache = {}
    for n in a.index_set:
        total = ring.zero()
        for d in divisors(n):
            key = (d, n // d)
            if key not in powcache:
                base = a.coord_raw(d)
                val = ring.one()
                for _ in range(n // d):
                    val = ring.mul(val, base)
                powcache[key] = val
            total = ring.add(total, ring.mul(ring.from_int(d), powcache[key]))
        out[n] = total
    return out


def ghost(a: WittVector) -> dict:
    """Ghost components as RingElements, keyed by n in E."""
    return {n: a.ring.elem(v) for n, v in ghost_raw(a).items()}


def ghost_component(a: WittVector, n: int) -> RingElement:
    return ghost(a)[n]


def dwork_check(w: dict, E: IndexSet) -> bool:
    """True iff the integer vector w is the ghost of an integral Witt vector.

    Criterion: w_{mp} = w_m mod p^(1 + v_p(m)) for every prime p and m with
    mp in E.
    """
    for n in E:
        if not isinstance(w[n], int):
            raise WittError("dwork_check expects integer entries")
    for n in E:
        for p in _prime_factors(n):
            m = n // p
            modulus = p ** (1 + (valuation(m, p) if m % p == 0 else 0))
            if (w[n] - w[m]) % modulus:
                return False
    return True


def _prime_factors(n):
    from .numutil import factorize

    return list(factorize(n)) if n > 1 else []


def unghost(w: dict, E: IndexSet, ring: Ring) -> WittVector:
    """Invert the ghost map.

    Requires every n in E invertible in the ring, or the integers together
    with a passing Dwork certificate (in which case every division is exact).
    """
    from .rings import IntegerRing

    integer_mode = isinstance(ring, IntegerRing)
    if integer_mode:
        raw = {n: (w[n].value if isinstance(w[n], RingElement) else w[n]) for n in E}
        if not dwork_check(raw, E):
            raise DworkError(f"{raw} is not integral: fails the Dwork congruences")
    coords = {}
    for n in E:
        target = w[n].value if isinstance(w[n], RingElement) else w[n]
        if isinstance(target, int):
            target = ring.from_int(target)
        acc = target
        for d in divisors(n):
            if d == n:
                continue
            base = coords[d]
            val = ring.one()
            for _ in range(n // d):
                val = ring.mul(val, base)
            acc = ring.sub(acc, ring.mul(ring.from_int(d), val))
        if n == 1:
            coords[n] = acc
        elif integer_mode:
            coords[n] = ring.exact_div_int(acc, n)
        else:
            inv = ring.int_unit_inverse(n)
            if inv is None:
                raise WittError(f"{n} is not invertible in {ring.descriptor()}")
            coords[n] = ring.mul(acc, inv)
    return WittVector(E, ring, tuple(coords[n] for n in E))


# ---------------------------------------------------------------------------
# Frobenius / Verschiebung / restriction


def frobenius(n: int, a: WittVector) -> WittVector:
    """F_n : W_E -> W_{E|n}, characterized by g_d(F_n a) = g_{nd}(a)."""
    E = a.index_set
    if n not in E:
        raise WittError(f"{n} is not in the index set {E}")
    entry = get_universal(E, f"frobenius:{n}")
    target = E.restrict(n)
    coords = tuple(entry.poly(d).evaluate(a.ring, list(a.coords)) for d in target)
    return WittVector(target, a.ring, coords)


def verschiebung(n: int, a: WittVector, E: IndexSet) -> WittVector:
    """V_n : W_{E|n} -> W_E, the index shift (V_n a)_m = a_{m/n} for n | m."""
    source = E.restrict(n)
    if a.index_set != source:
        raise WittError(f"expected a vector over {source}, got {a.index_set}")
    ring = a.ring
    coords = []
    for m in E:
        if m % n == 0 and (m // n) in source:
            coords.append(a.coord_raw(m // n))
        else:
            coords.append(ring.zero())
    return WittVector(E, ring, tuple(coords))


def restrict(a: WittVector, E_sub: IndexSet) -> WittVector:
    if not (E_sub <= a.index_set):
        raise WittError(f"{E_sub} is not contained in {a.index_set}")
    return WittVector(E_sub, a.ring, tuple(a.coord_raw(n) for n in E_sub))


def map_coords(a: WittVector, ring_map, target: Ring) -> WittVector:
    """Push forward along a ring homomorphism given on raw values."""
    return WittVector(
        a.index_set, target, tuple(target.canonicalize(ring_map(c)) for c in a.coords)
    )


# ---------------------------------------------------------------------------
# units (ghost criterion with a constructive triangular solve)


def witt_solve_mul(a: WittVector, target: WittVector):
    """Solve a * b = target for b, or return None.

    The product polynomial at level n is g_n(a) * b_n plus terms in lower b
    coordinates, so the system is triangular; it is solvable exactly when
    every ghost component of a is a unit, which in turn characterizes units
    of W_E(R) since the ghosts are ring homomorphisms into R.
    """
    E, ring = a.index_set, a.ring
    entry = get_universal(E, "product")
    ghosts = ghost_raw(a)
    partial = [ring.zero()] * len(E)
    for i, n in enumerate(E):
        inv = ring.unit_inverse(ghosts[n])
        if inv is None:
            return None
        known = entry.poly(n).evaluate(ring, list(a.coords) + partial)
        residual = ring.sub(target.coord_raw(n), known)
        partial[i] = ring.mul(inv, residual)
    return WittVector(E, ring, tuple(partial))


def witt_unit_inverse(a: WittVector):
    return witt_solve_mul(a, witt_one(a.index_set, a.ring))


# ---------------------------------------------------------------------------
# enumeration and randomness


def witt_space(E: IndexSet, ring: Ring):
    """All Witt vectors over a finite ring, in a deterministic order."""
    base = list(ring.elements())
    for combo in iter_product(base, repeat=len(E)):
        yield WittVector(E, ring, tuple(combo))


def witt_space_size(E: IndexSet, ring: Ring):
    s = ring.size()
    return None if s is None else s ** len(E)


def random_witt(E: IndexSet, ring: Ring, rng) -> WittVector:
    return WittVector(E, ring, tuple(ring.canonicalize(ring.random(rng)) for _ in E))


# ---------------------------------------------------------------------------
# W_E(R) as a coefficient ring (used for composed Witt functors and cones)


class WittRing(Ring):
    """W_E(R) packaged behind the Ring interface; raw values are coord tuples."""

    def __init__(self, E: IndexSet, coeff: Ring):
        self.E = E
        self.coeff = coeff

    def descriptor(self):
        return f"witt[{','.join(str(n) for n in self.E)}]({self.coeff.descriptor()})"

    def wrap(self, v: WittVector):
        return v.coords

    def unwrap(self, raw) -> WittVector:
        return WittVector(self.E, self.coeff, raw)

    def zero(self):
        return tuple(self.coeff.zero() for _ in self.E)

    def one(self):
        return witt_one(self.E, self.coeff).coords

    def from_int(self, n):
        return witt_from_int(n, self.E, self.coeff).coords

    def add(self, a, b):
        return witt_add(self.unwrap(a), self.unwrap(b)).coords

    def neg(self, a):
        return witt_neg(self.unwrap(a)).coords

    def mul(self, a, b):
        return witt_mul(self.unwrap(a), self.unwrap(b)).coords

    def canonicalize(self, a):
        return tuple(self.coeff.canonicalize(c) for c in a)

    def exact_div_int(self, a, n):
        inv = self.int_unit_inverse(n)
        if inv is None:
            raise InexactDivision(f"{n} is not invertible in {self.descriptor()}")
        return self.mul(a, inv)

    def unit_inverse(self, a):
        b = witt_unit_inverse(self.unwrap(a))
        return None if b is None else b.coords

    def nilpotent_index(self, a):
        if self.size() is None:
            raise UnsupportedRing("nilpotence in W(R) needs a finite R")
        seen = set()
        power = a
        k = 1
        while power not in seen:
            if power == self.zero():
                return k
            seen.add(power)
            power = self.mul(power, a)
            k += 1
        return None

    def size(self):
        return witt_space_size(self.E, self.coeff)

    def elements(self):
        for v in witt_space(self.E, self.coeff):
            yield v.coords

    def random(self, rng):
        return tuple(self.coeff.canonicalize(self.coeff.random(rng)) for _ in self.E)

    def el_to_str(self, a):
        return "(" + ",".join(self.coeff.el_to_str(c) for c in a) + ")"

    def el_from_str(self, s):
        s = s.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise WittError(f"bad Witt literal {s!r}")
        parts = s[1:-1].split(",")
        if len(parts) != len(self.E):
            raise WittError("wrong number of coordinates")
        return tuple(self.coeff.el_from_str(p) for p in parts)
