"""Builtin group constructors and the named group catalog.

Families are built from explicit faithful element models (residue tuples,
permutations, matrices over small fields) and all go through the same
validated Cayley-table path.  Group specs are strings like ``dihedral:12``,
``abelian:3,9``, ``sl2:8`` or ``product:dihedral:6*cyclic:2``; a handful of
standard names (``A5``, ``Q8``, ``S4`` ...) are predefined.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product as iproduct
from math import factorial, prod

from .errors import GroupValidationError
from .groups import (
    MAX_ORDER,
    FiniteGroup,
    group_from_elements,
    group_from_permutations,
    is_prime,
)

FAMILIES = (
    "cyclic",
    "abelian",
    "dihedral",
    "quaternion",
    "symmetric",
    "alternating",
    "sl2",
    "heisenberg",
    "frobenius",
    "product",
)


# -- small finite fields (orders 2..8 used by sl2) ---------------------------

_GF_POLY = {4: 0b111, 8: 0b1011}  # x^2+x+1, x^3+x+1


class _GF:
    def __init__(self, q: int):
        self.q = q
        if is_prime(q):
            self.add = lambda a, b: (a + b) % q
            self.sub = lambda a, b: (a - b) % q
            self.mul = lambda a, b: (a * b) % q
        elif q in _GF_POLY:
            poly, deg = _GF_POLY[q], q.bit_length() - 1
            table = [[0] * q for _ in range(q)]
            for a in range(q):
                for b in range(q):
                    acc = 0
                    x = a
                    for bit in range(deg):
                        if (b >> bit) & 1:
                            acc ^= x << bit
                    for bit in range(2 * deg - 2, deg - 1, -1):
                        if (acc >> bit) & 1:
                            acc ^= poly << (bit - deg)
                    table[a][b] = acc
            self.add = lambda a, b: a ^ b
            self.sub = self.add
            self.mul = lambda a, b: table[a][b]
        else:
            raise GroupValidationError(f"unsupported field order {q}")


# -- family constructors ------------------------------------------------------


def _cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupValidationError("cyclic order must be positive")
    mul = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(mul, name=f"C{n}", labels=[f"g^{i}" for i in range(n)])


def _abelian(divisors: tuple[int, ...]) -> FiniteGroup:
    if not divisors or any(d < 1 for d in divisors):
        raise GroupValidationError("abelian factors must be positive")
    els = list(iproduct(*(range(d) for d in divisors)))

    def mult(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, divisors))

    name = "x".join(f"C{d}" for d in divisors)
    return group_from_elements(els, mult, name=name)


def _dihedral(order: int) -> FiniteGroup:
    if order < 2 or order % 2:
        raise GroupValidationError("dihedral group order must be even")
    n = order // 2

    def mult(a, b):
        i, s = a
        j, t = b
        return ((i + (j if s == 0 else -j)) % n, s ^ t)

    els = [(i, s) for i in range(n) for s in (0, 1)]

    def label(e):
        i, s = e
        return f"a{i}" + ("b" if s else "")

    return group_from_elements(els, mult, name=f"D{order}", labeler=label)


def _quaternion(order: int) -> FiniteGroup:
    if order < 8 or order % 4:
        raise GroupValidationError("generalized quaternion order must be 4n >= 8")
    n = order // 4
    two_n = 2 * n

    def mult(a, b):
        i, s = a
        j, t = b
        k = (i + (j if s == 0 else -j)) % two_n
        if s and t:
            k = (k + n) % two_n  # b^2 = a^n
        return (k, s ^ t)

    els = [(i, s) for i in range(two_n) for s in (0, 1)]

    def label(e):
        i, s = e
        return f"a{i}" + ("b" if s else "")

    return group_from_elements(els, mult, name=f"Q{order}", labeler=label)


def _perm_group(n: int, even_only: bool) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise GroupValidationError("symmetric/alternating degree must be 1..6")
    els = [p for p in permutations(range(n)) if not even_only or _is_even(p)]

    def mult(p, q2):
        return tuple(p[q2[i]] for i in range(n))

    name = (f"A{n}" if even_only else f"S{n}")
    return group_from_elements(els, mult, name=name, labeler=_perm_label)


def _is_even(p: tuple[int, ...]) -> bool:
    inversions = sum(
        1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
    )
    return inversions % 2 == 0


def _perm_label(p: tuple[int, ...]) -> str:
    cycles = []
    seen = set()
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = p[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        cycles.append("(" + " ".join(str(i + 1) for i in cyc) + ")")
    return "".join(cycles) if cycles else "()"


def _sl2(q: int) -> FiniteGroup:
    if q not in (2, 3, 4, 5, 7, 8):
        raise GroupValidationError("sl2 supports q in {2,3,4,5,7,8}")
    f = _GF(q)
    els = [
        (a, b, c, d)
        for a in range(q)
        for b in range(q)
        for c in range(q)
        for d in range(q)
        if f.sub(f.mul(a, d), f.mul(b, c)) == 1
    ]

    def mult(x, y):
        a, b, c, d = x
        e, g, h, k = y
        return (
            f.add(f.mul(a, e), f.mul(b, h)),
            f.add(f.mul(a, g), f.mul(b, k)),
            f.add(f.mul(c, e), f.mul(d, h)),
            f.add(f.mul(c, g), f.mul(d, k)),
        )

    def label(x):
        return "[{},{};{},{}]".format(*x)

    return group_from_elements(els, mult, name=f"SL2_{q}", labeler=label)


def _heisenberg(p: int) -> FiniteGroup:
    if p not in (3, 5):
        raise GroupValidationError("heisenberg supports p in {3,5}")
    els = list(iproduct(range(p), range(p), range(p)))

    def mult(x, y):
        a, b, c = x
        d, e, g = y
        return ((a + d) % p, (b + e) % p, (c + g + a * e) % p)

    return group_from_elements(els, mult, name=f"Heis{p}")


def _frobenius(order: int) -> FiniteGroup:
    fac = _two_prime_factorization(order)
    if fac is None:
        raise GroupValidationError(
            "frobenius order must be p*q for primes q < p with q | p-1"
        )
    p, q = fac
    r = None
    for cand in range(2, p):
        if pow(cand, q, p) == 1 and pow(cand, 1, p) != 1:
            # candidate of order dividing q; q prime, so order exactly q unless 1
            if cand != 1:
                r = cand
                break
    if r is None:
        raise GroupValidationError("no element of the required multiplicative order")

    def mult(x, y):
        a, t = x
        b, u = y
        return ((a + pow(r, t, p) * b) % p, (t + u) % q)

    els = [(a, t) for a in range(p) for t in range(q)]
    return group_from_elements(els, mult, name=f"F{order}")


def _two_prime_factorization(order: int) -> tuple[int, int] | None:
    for q in range(2, order):
        if order % q == 0 and is_prime(q):
            p = order // q
            if is_prime(p) and q < p and (p - 1) % q == 0:
                return p, q
            return None
    return None


def _direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    els = [(a, b) for a in range(G.order) for b in range(H.order)]

    def mult(x, y):
        return (G.mul[x[0]][y[0]], H.mul[x[1]][y[1]])

    def label(x):
        return f"({G.label(x[0])},{H.label(x[1])})"

    prod_group = group_from_elements(els, mult, name=f"{G.name}x{H.name}", labeler=label)
    return prod_group


def builtin_order(family: str, params: tuple) -> int:
    """Order of the builtin without constructing it (used for lazy catalogs)."""
    if family == "cyclic":
        return params[0]
    if family == "abelian":
        return prod(params)
    if family in ("dihedral", "quaternion", "frobenius"):
        return params[0]
    if family == "symmetric":
        return factorial(params[0])
    if family == "alternating":
        return max(1, factorial(params[0]) // 2)
    if family == "sl2":
        q = params[0]
        return q * (q - 1) * (q + 1)
    if family == "heisenberg":
        return params[0] ** 3
    if family == "product":
        return prod(builtin_order(f, tuple(p)) for f, p in params)
    raise GroupValidationError(f"unknown builtin family {family!r}")


@lru_cache(maxsize=128)
def build_builtin(family: str, params: tuple) -> FiniteGroup:
    """Construct a builtin family member; result order must be <= 1024."""
    if family not in FAMILIES:
        raise GroupValidationError(f"unknown builtin family {family!r}")
    if family != "product" and not all(isinstance(x, int) for x in params):
        raise GroupValidationError("builtin params must be integers")
    order = builtin_order(family, params)
    if order > MAX_ORDER:
        raise GroupValidationError(f"builtin order {order} exceeds {MAX_ORDER}")
    if family == "cyclic":
        return _cyclic(params[0])
    if family == "abelian":
        return _abelian(params)
    if family == "dihedral":
        return _dihedral(params[0])
    if family == "quaternion":
        return _quaternion(params[0])
    if family == "symmetric":
        return _perm_group(params[0], even_only=False)
    if family == "alternating":
        return _perm_group(params[0], even_only=True)
    if family == "sl2":
        return _sl2(params[0])
    if family == "heisenberg":
        return _heisenberg(params[0])
    if family == "frobenius":
        return _frobenius(params[0])
    if family == "product":
        groups = [build_builtin(f, tuple(p)) for f, p in params]
        result = groups[0]
        for h in groups[1:]:
            result = _direct_product(result, h)
        return result
    raise AssertionError


# -- named catalog ------------------------------------------------------------

NAMED_GROUPS: dict[str, tuple[str, tuple]] = {
    **{f"C{n}": ("cyclic", (n,)) for n in range(1, 13)},
    "C2xC2": ("abelian", (2, 2)),
    "V4": ("abelian", (2, 2)),
    "C2xC4": ("abelian", (2, 4)),
    "C2xC6": ("abelian", (2, 6)),
    "C2xC2xC2": ("abelian", (2, 2, 2)),
    "C3xC3": ("abelian", (3, 3)),
    "C3xC9": ("abelian", (3, 9)),
    "D6": ("dihedral", (6,)),
    "D8": ("dihedral", (8,)),
    "D10": ("dihedral", (10,)),
    "D12": ("dihedral", (12,)),
    "D14": ("dihedral", (14,)),
    "D16": ("dihedral", (16,)),
    "Q8": ("quaternion", (8,)),
    "Q16": ("quaternion", (16,)),
    "S3": ("symmetric", (3,)),
    "S4": ("symmetric", (4,)),
    "S5": ("symmetric", (5,)),
    "A4": ("alternating", (4,)),
    "A5": ("alternating", (5,)),
    "SL2_2": ("sl2", (2,)),
    "SL2_3": ("sl2", (3,)),
    "SL2_4": ("sl2", (4,)),
    "SL2_5": ("sl2", (5,)),
    "SL2_7": ("sl2", (7,)),
    "SL2_8": ("sl2", (8,)),
    "Heis3": ("heisenberg", (3,)),
    "Heis5": ("heisenberg", (5,)),
    "F21": ("frobenius", (21,)),
}

# groups exercised by the verification suite, smallest first
CATALOG_NAMES = [
    "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "D6", "SL2_2", "C7",
    "C8", "C2xC4", "C2xC2xC2", "D8", "Q8", "C9", "C3xC3", "C10", "D10",
    "C11", "C12", "C2xC6", "A4", "D12", "D14", "D16", "Q16", "F21", "S4",
    "SL2_3", "C3xC9", "Heis3", "A5", "SL2_4",
]


def catalog_groups(max_order: int | None = None) -> list[tuple[str, FiniteGroup]]:
    """The canonical builtin instances, optionally capped by order.

    The order filter is applied before construction, so asking for the
    order <= 60 slice never builds the large groups.
    """
    out = []
    for name in CATALOG_NAMES:
        family, params = NAMED_GROUPS[name]
        if max_order is not None and builtin_order(family, params) > max_order:
            continue
        out.append((name, build_builtin(family, params)))
    return out


def build_group(
    *,
    table: list[list[int]] | None = None,
    perm_gens: list | None = None,
    builtin: str | None = None,
    params: tuple | list | None = None,
    name: str = "G",
) -> FiniteGroup:
    """Single entry point over the three group sources.

    Exactly one of ``table`` (a full Cayley table, fully validated),
    ``perm_gens`` (permutation generators on <= 16 points, given as tuples
    or cycle lists), or ``builtin`` (family name plus params) must be given.
    """
    chosen = [x is not None for x in (table, perm_gens, builtin)]
    if sum(chosen) != 1:
        raise GroupValidationError(
            "provide exactly one of table, perm_gens, builtin"
        )
    if table is not None:
        return FiniteGroup(table, name=name)
    if perm_gens is not None:
        if perm_gens and isinstance(perm_gens[0][0], (list, tuple)):
            from .groups import load_group

            return load_group({"name": name, "perm_gens": perm_gens})
        return group_from_permutations([tuple(g) for g in perm_gens], name=name)
    return build_builtin(builtin, tuple(params or ()))


def parse_group_spec(spec: str) -> FiniteGroup:
    """Resolve a group spec string: catalog name or ``family:p1,p2,...``.

    ``product:`` takes ``*``-separated sub-specs, e.g.
    ``product:dihedral:6*cyclic:2``.
    """
    spec = spec.strip()
    if spec in NAMED_GROUPS:
        family, params = NAMED_GROUPS[spec]
        return build_builtin(family, params)
    if ":" not in spec:
        raise GroupValidationError(
            f"unknown group {spec!r}; use a catalog name or family:params"
        )
    family, _, rest = spec.partition(":")
    family = family.strip().lower()
    if family == "product":
        parts = [s for s in rest.split("*") if s.strip()]
        if len(parts) < 2:
            raise GroupValidationError("product needs at least two factors")
        sub = tuple(_spec_to_pair(s) for s in parts)
        return build_builtin("product", sub)
    return build_builtin(family, _parse_params(rest))


def _spec_to_pair(spec: str) -> tuple[str, tuple]:
    spec = spec.strip()
    if spec in NAMED_GROUPS:
        return NAMED_GROUPS[spec]
    family, _, rest = spec.partition(":")
    return family.strip().lower(), _parse_params(rest)


def _parse_params(rest: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in rest.split(",") if x.strip())
    except ValueError as exc:
        raise GroupValidationError(f"bad builtin parameters {rest!r}") from exc
