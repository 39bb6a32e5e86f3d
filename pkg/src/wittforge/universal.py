"""Universal Witt polynomials: generation, caching, integrality checking.

For an index set E the addition, multiplication, negation and Frobenius maps
of W_E are given by families of integer polynomials obtained by inverting the
ghost map symbolically:

    s_n = (g_n(x) + g_n(y) - sum_{d|n, d<n} d * s_d^(n/d)) / n

and likewise with g_n(x)*g_n(y) for products, -g_n(x) for negation, and
g_{kd}(x) for the Frobenius F_k.  Every division must be exact over the
integers; an inexact division aborts generation (it would mean the ghost
polynomials are wrong).

Very large levels are not expanded term by term.  Instead the step is
certified: writing G_n for the ghost-side target, the division at level n is
exact if and only if

    G_n = phi_p(G_{n/p})  mod p^{v_p(n)}   for every prime p | n,

where phi_p substitutes v -> v^p in every variable.  (If x = y mod p then
x^{p^t} = y^{p^t} mod p^{t+1}; applying this to the inductively integral
lower levels turns the defect modulo p^{v_p(n)} into G_n - phi_p(G_{n/p}).)
The congruence involves only the sparse ghost polynomials, so the check is
exact and cheap even when the quotient polynomial would have millions of
terms.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field

from .indexset import IndexSet
from .numutil import divisors, factorize
from .rings import InexactDivision
from .sparsepoly import IntPoly

CACHE_ENV = "WITTFORGE_CACHE_DIR"
DEFAULT_TERM_CAP = 150_000
SYMBOLIC_VERIFY_CAP = 4_000


class GenerationError(Exception):
    pass


class NotMaterialized(GenerationError):
    """A polynomial exists and is certified integral but was not expanded."""


# ---------------------------------------------------------------------------
# ghost polynomials


def ghost_poly(E: IndexSet, n: int, block: int, nblocks: int) -> IntPoly:
    """g_n = sum_{d|n} d * v_d^(n/d) in block `block` of the variable list."""
    k = len(E)
    nvars = k * nblocks
    poly = IntPoly(nvars)
    for d in divisors(n):
        if d in E:
            poly = poly + IntPoly.var(nvars, block * k + E.position(d), power=n // d, coeff=d)
    return poly


def _ghost_target(E: IndexSet, op: str, n: int) -> IntPoly:
    """Ghost-side target polynomial for one level of a family."""
    if op == "sum":
        return ghost_poly(E, n, 0, 2) + ghost_poly(E, n, 1, 2)
    if op == "product":
        return ghost_poly(E, n, 0, 2) * ghost_poly(E, n, 1, 2)
    if op == "negation":
        return -ghost_poly(E, n, 0, 1)
    if op.startswith("frobenius:"):
        k = int(op.split(":")[1])
        return ghost_poly(E, k * n, 0, 1)
    raise GenerationError(f"unknown operation {op!r}")


def _family_levels(E: IndexSet, op: str) -> list[int]:
    if op.startswith("frobenius:"):
        k = int(op.split(":")[1])
        if k not in E:
            raise GenerationError(f"{k} is not in the index set {E}")
        return list(E.restrict(k))
    return list(E)


def _var_names(E: IndexSet, op: str) -> list[str]:
    if op in ("sum", "product"):
        return [f"x{d}" for d in E] + [f"y{d}" for d in E]
    return [f"x{d}" for d in E]


def _var_weights(E: IndexSet, op: str) -> list[int]:
    if op in ("sum", "product"):
        return list(E.elements) * 2
    return list(E.elements)


# ---------------------------------------------------------------------------
# packed-key polynomial arithmetic for the generation hot path


class _Packer:
    """Mixed-radix packing of exponent tuples into single ints.

    Sound for isobaric computations of total weight <= W: the exponent of a
    weight-w variable never exceeds W // w.
    """

    def __init__(self, weights, W):
        self.radices = [W // w + 1 for w in weights]
        self.bases = []
        b = 1
        for r in self.radices:
            self.bases.append(b)
            b *= r

    def pack(self, exps):
        return sum(e * b for e, b in zip(exps, self.bases))

    def unpack(self, key):
        out = []
        for r in self.radices:
            key, e = divmod(key, r)
            out.append(e)
        return tuple(out)

    def pack_poly(self, poly: IntPoly) -> dict:
        return {self.pack(e): c for e, c in poly.terms.items()}

    def unpack_poly(self, d: dict, nvars: int) -> IntPoly:
        p = IntPoly(nvars)
        p.terms = {self.unpack(k): c for k, c in d.items() if c}
        return p


def _pmul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = k1 + k2
            s = get(k, 0) + c1 * c2
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def _ppow(a: dict, n: int) -> dict:
    result = {0: 1}
    base = a
    while n:
        if n & 1:
            result = _pmul(result, base)
        n >>= 1
        if n:
            base = _pmul(base, base)
    return result


def _psub_scaled(a: dict, b: dict, c: int) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) - c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _slice_bound(weights, W) -> int:
    """Number of monomials of weighted degree exactly W (unbounded knapsack)."""
    cnt = [0] * (W + 1)
    cnt[0] = 1
    for w in weights:
        for t in range(w, W + 1):
            cnt[t] += cnt[t - w]
    return cnt[W]


def _level_bound(E: IndexSet, op: str, n: int) -> int:
    if op == "product":
        b = _slice_bound(list(E.elements), n)
        return b * b
    if op.startswith("frobenius:"):
        k = int(op.split(":")[1])
        return _slice_bound(list(E.elements), k * n)
    return _slice_bound(_var_weights(E, op), n)


# ---------------------------------------------------------------------------
# entries


@dataclass
class UniversalEntry:
    index_set: IndexSet
    op: str
    names: list[str]
    levels: list[int]
    polys: dict = field(default_factory=dict)  # level -> IntPoly or None
    certified: list[int] = field(default_factory=list)

    def poly(self, n: int) -> IntPoly:
        p = self.polys[n]
        if p is None:
            raise NotMaterialized(
                f"{self.op} polynomial at level {n} for E={self.index_set} was "
                "certified integral but not expanded"
            )
        return p

    def to_json(self):
        return {
            "op": self.op,
            "index_set": list(self.index_set.elements),
            "variables": self.names,
            "polynomials": {
                str(n): (None if self.polys[n] is None else self.polys[n].to_json(self.names))
                for n in self.levels
            },
            "certified": list(self.certified),
        }


def _poly_from_json(data, names) -> IntPoly:
    nvars = len(names)
    pos = {v: i for i, v in enumerate(names)}
    terms = {}
    for mono, c in data:
        exps = [0] * nvars
        for v, e in mono.items():
            exps[pos[v]] = e
        terms[tuple(exps)] = c
    return IntPoly(nvars, terms)


def _entry_from_json(obj) -> UniversalEntry:
    E = IndexSet.explicit(obj["index_set"])
    names = obj["variables"]
    levels = _family_levels(E, obj["op"])
    polys = {}
    for n in levels:
        data = obj["polynomials"][str(n)]
        polys[n] = None if data is None else _poly_from_json(data, names)
    return UniversalEntry(E, obj["op"], names, levels, polys, list(obj["certified"]))


# ---------------------------------------------------------------------------
# generation


def _certify_step(E: IndexSet, op: str, n: int):
    """Exact divisibility certificate for one oversized level (see module doc)."""
    for p, r in factorize(n).items():
        target_n = _ghost_target(E, op, n)
        target_m = _ghost_target(E, op, n // p)
        diff = target_n - target_m.frobenius_substitute(p)
        modulus = p**r
        for c in diff.terms.values():
            if c % modulus:
                raise InexactDivision(
                    f"ghost congruence fails at level {n}, prime {p}: coefficient {c}"
                )


def _random_eval_check(E, op, n, poly_n, lower, rng):
    """Spot-check the generated level against the ghost identity over Z."""
    names = _var_names(E, op)
    for _ in range(3):
        vals = [rng.randint(-6, 6) for _ in names]
        lhs = 0
        for d in divisors(n):
            if d in lower or d == n:
                pd = poly_n if d == n else lower[d]
                lhs += d * pd.evaluate(_Z, vals) ** (n // d)
        rhs = _ghost_target(E, op, n).evaluate(_Z, vals)
        if lhs != rhs:
            raise GenerationError(f"ghost identity violated at level {n} of {op}")


class _ZOps:
    # minimal ring adapter so IntPoly.evaluate can run over plain ints
    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b


_Z = _ZOps()


def generate_universal_polynomials(
    E: IndexSet, op: str, term_cap: int = DEFAULT_TERM_CAP, rng=None
) -> UniversalEntry:
    """Generate one family, materializing levels up to term_cap.

    Oversized levels get the congruence certificate instead of an expansion;
    both paths verify exactness, neither ever rounds.
    """
    import random

    rng = rng or random.Random(20210 + len(E))
    names = _var_names(E, op)
    weights = _var_weights(E, op)
    levels = _family_levels(E, op)
    nvars = len(names)
    polys: dict = {}
    certified: list[int] = []
    materialized: dict = {}

    frob_k = int(op.split(":")[1]) if op.startswith("frobenius:") else None

    for n in levels:
        lower = [d for d in divisors(n) if d != n and d in polys]
        if _level_bound(E, op, n) > term_cap or any(polys[d] is None for d in lower):
            if frob_k is not None:
                _certify_step(E, f"frobenius:{frob_k}", n)
            else:
                _certify_step(E, op, n)
            polys[n] = None
            certified.append(n)
            continue
        packer = _Packer(weights, n if frob_k is None else frob_k * n)
        defect = packer.pack_poly(_ghost_target(E, op, n))
        for d in lower:
            power = _ppow(packer.pack_poly(materialized[d]), n // d)
            defect = _psub_scaled(defect, power, d)
        if n > 1:
            quotient = {}
            for k, c in defect.items():
                q, r = divmod(c, n)
                if r:
                    raise InexactDivision(
                        f"defect coefficient {c} not divisible by {n} in {op} for E={E}"
                    )
                quotient[k] = q
            defect = quotient
        poly_n = packer.unpack_poly(defect, nvars)
        polys[n] = poly_n
        materialized[n] = poly_n
        if poly_n.num_terms() <= SYMBOLIC_VERIFY_CAP:
            _random_eval_check(E, op, n, poly_n, materialized, rng)
    return UniversalEntry(E, op, names, levels, polys, certified)


# ---------------------------------------------------------------------------
# cache: in-memory, write-once per key, with an optional JSON directory


_MEM: dict = {}
_LOCK = threading.Lock()


def _cache_path(E: IndexSet, op: str):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    fname = f"{op.replace(':', '_')}__{'_'.join(str(n) for n in E)}.json"
    return os.path.join(root, fname)


def get_universal(E: IndexSet, op: str, term_cap: int = DEFAULT_TERM_CAP) -> UniversalEntry:
    key = (E.key(), op)
    with _LOCK:
        if key in _MEM:
            return _MEM[key]
    path = _cache_path(E, op)
    entry = None
    if path and os.path.exists(path):
        try:
            with open(path) as fh:
                obj = json.load(fh)
            if obj.get("op") == op and tuple(obj.get("index_set", ())) == E.key():
                entry = _entry_from_json(obj)
        except (OSError, ValueError, KeyError):
            entry = None
    if entry is None:
        entry = generate_universal_polynomials(E, op, term_cap)
        if path:
            os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
            tmp = path + ".tmp"
            with open(tmp, "w") as fh:
                json.dump(entry.to_json(), fh)
            os.replace(tmp, path)
    with _LOCK:
        # two racing generators produce identical entries; first write wins
        if key not in _MEM:
            _MEM[key] = entry
        return _MEM[key]


def clear_memory_cache():
    with _LOCK:
        _MEM.clear()


def integrality_report(specs, ops=("sum", "product", "negation"), term_cap=DEFAULT_TERM_CAP):
    """Regenerate families from scratch and report materialized/certified levels."""
    report = []
    for E in specs:
        for op in ops:
            entry = generate_universal_polynomials(E, op, term_cap)
            report.append(
                {
                    "index_set": list(E.elements),
                    "op": op,
                    "materialized": [n for n in entry.levels if entry.polys[n] is not None],
                    "certified": list(entry.certified),
                }
            )
    return report
