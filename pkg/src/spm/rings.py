"""Finite commutative rings with identity, their ideals, multiplicative
sets, ring maps, and localizations.

Rings are dense operation tables indexed 0..order-1.  Element index 0 is
always the additive zero in rings built by the constructors here (the
quotient construction preserves this).  Everything is immutable after
construction; every axiom is checkable by full enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .errors import InvalidInput


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


class FiniteRing:
    """A finite commutative ring with identity, as explicit add/mul tables."""

    def __init__(self, add, mul, zero, one, label, *, allow_trivial=False):
        add = np.asarray(add, dtype=np.int32)
        mul = np.asarray(mul, dtype=np.int32)
        if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape != mul.shape:
            raise InvalidInput("add/mul must be square tables of the same order")
        n = add.shape[0]
        if n < 1 or (n == 1 and not allow_trivial):
            raise InvalidInput("trivial or empty ring")
        if not allow_trivial and zero == one:
            raise InvalidInput("zero and one coincide (trivial ring)")
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise InvalidInput("table entries out of range")
        self.add = _frozen(add)
        self.mul = _frozen(mul)
        self.zero = int(zero)
        self.one = int(one)
        self.label = str(label)

    @property
    def order(self) -> int:
        return self.add.shape[0]

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def neg(self) -> np.ndarray:
        """neg[a] is the additive inverse of a."""
        return _frozen(np.argmax(self.add == self.zero, axis=1).astype(np.int32))

    @cached_property
    def unit_mask(self) -> np.ndarray:
        return _frozen((self.mul == self.one).any(axis=1))

    def inverse(self, a: int) -> int | None:
        row = self.mul[a]
        hits = np.flatnonzero(row == self.one)
        return int(hits[0]) if hits.size else None

    @cached_property
    def is_local(self) -> bool:
        return len(maximal_ideals(self)) == 1

    def __repr__(self):
        return f"FiniteRing({self.label}, order={self.order})"


@dataclass(frozen=True)
class Ideal:
    """An ideal, stored as its full (closed) element set plus generators."""

    ring: FiniteRing
    elements: np.ndarray  # sorted int32
    generators: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", _frozen(np.asarray(self.elements, np.int32)))

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring.order, dtype=bool)
        m[self.elements] = True
        return _frozen(m)

    def __contains__(self, r: int) -> bool:
        return bool(self.mask[r])

    def __len__(self):
        return int(self.elements.size)

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.ring is other.ring
            and np.array_equal(self.elements, other.elements)
        )

    def __hash__(self):
        return hash((id(self.ring), self.elements.tobytes()))

    def is_proper(self) -> bool:
        return len(self) < self.ring.order

    def __repr__(self):
        return f"Ideal(gens={list(self.generators)}, size={len(self)})"


@dataclass(frozen=True)
class MultSet:
    """A multiplicatively closed subset containing 1 (closed at construction)."""

    ring: FiniteRing
    elements: np.ndarray  # sorted int32

    def __post_init__(self):
        object.__setattr__(self, "elements", _frozen(np.asarray(self.elements, np.int32)))

    def __contains__(self, r: int) -> bool:
        i = int(np.searchsorted(self.elements, r))
        return i < self.elements.size and int(self.elements[i]) == r

    def __len__(self):
        return int(self.elements.size)

    def key(self) -> bytes:
        return self.elements.tobytes()


@dataclass(frozen=True)
class RingMap:
    """A unital ring homomorphism given by its per-element image table."""

    source: FiniteRing
    target: FiniteRing
    image: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "image", _frozen(np.asarray(self.image, np.int32)))

    def __call__(self, r: int) -> int:
        return int(self.image[r])

    def is_homomorphism(self) -> bool:
        img = self.image
        s, t = self.source, self.target
        if img[s.zero] != t.zero or img[s.one] != t.one:
            return False
        if not np.array_equal(img[s.add], t.add[np.ix_(img, img)]):
            return False
        return np.array_equal(img[s.mul], t.mul[np.ix_(img, img)])


@dataclass(frozen=True)
class RingValidation:
    ok: bool
    failures: tuple[tuple[str, tuple], ...]  # (axiom name, witness indices)


@dataclass(frozen=True)
class Localization:
    """Result of inverting a multiplicative set in a finite ring.

    For a finite ring the localization is the quotient by
    K = {r | u*r = 0 for some u in U}; `ring_map` is the quotient map.
    `degenerate` flags 0 in U (one-element result, unusable downstream).
    """

    ring: FiniteRing
    ring_map: RingMap
    kernel: Ideal
    degenerate: bool


def make_zmod(n: int) -> FiniteRing:
    """The ring of integers modulo n, elements 0..n-1."""
    if n < 2:
        raise InvalidInput("trivial or empty ring: need n >= 2")
    idx = np.arange(n, dtype=np.int32)
    ring = FiniteRing(
        (idx[:, None] + idx[None, :]) % n,
        (idx[:, None] * idx[None, :]) % n,
        0,
        1,
        f"Z/{n}",
    )
    ring.zmod_n = n
    return ring


def make_product(factors: list[FiniteRing]) -> FiniteRing:
    """Componentwise product ring; factor 0 is the least significant digit."""
    if len(factors) < 2:
        raise InvalidInput("product needs at least 2 factors")
    orders = [f.order for f in factors]
    n = int(np.prod(orders))
    # decode every element of the product into per-factor digits
    digits = []
    rem = np.arange(n, dtype=np.int64)
    for o in orders:
        digits.append(rem % o)
        rem //= o
    pows = np.cumprod([1] + orders[:-1])

    def table(op_name):
        out = np.zeros((n, n), dtype=np.int64)
        for f, d, p in zip(factors, digits, pows):
            op = getattr(f, op_name)
            out += op[np.ix_(d, d)].astype(np.int64) * p
        return out

    zero = int(sum(f.zero * p for f, p in zip(factors, pows)))
    one = int(sum(f.one * p for f, p in zip(factors, pows)))
    label = " x ".join(f.label for f in factors)
    ring = FiniteRing(table("add"), table("mul"), zero, one, label)
    ring.product_factors = tuple(factors)
    return ring


def make_poly_quotient(base: FiniteRing, modulus: list[int]) -> FiniteRing:
    """Quotient of Z/n[x] by a monic modulus; elements are residue
    polynomials of degree < deg(modulus), coefficients little-endian."""
    n = getattr(base, "zmod_n", None)
    if n is None:
        raise InvalidInput("base ring must be built by make_zmod")
    mod = [c % n for c in modulus]
    while mod and mod[-1] == 0:
        mod.pop()
    d = len(mod) - 1
    if d < 1:
        raise InvalidInput("modulus must have degree >= 1")
    if mod[-1] != 1:
        raise InvalidInput("modulus must be monic")
    size = n**d

    def decode(code):
        out = []
        for _ in range(d):
            out.append(code % n)
            code //= n
        return out

    def encode(coeffs):
        code = 0
        for c in reversed(coeffs[:d]):
            code = code * n + (c % n)
        return code

    def reduce_poly(coeffs):
        coeffs = [c % n for c in coeffs]
        for i in range(len(coeffs) - 1, d - 1, -1):
            lead = coeffs[i]
            if lead:
                for j in range(d + 1):
                    coeffs[i - d + j] = (coeffs[i - d + j] - lead * mod[j]) % n
            coeffs.pop()
        return coeffs

    add = np.zeros((size, size), dtype=np.int32)
    mul = np.zeros((size, size), dtype=np.int32)
    polys = [decode(c) for c in range(size)]
    for a in range(size):
        pa = polys[a]
        for b in range(a, size):
            pb = polys[b]
            s = encode([(x + y) % n for x, y in zip(pa, pb)])
            add[a, b] = add[b, a] = s
            prod = [0] * (2 * d - 1)
            for i, x in enumerate(pa):
                if x:
                    for j, y in enumerate(pb):
                        prod[i + j] += x * y
            p = encode(reduce_poly(prod))
            mul[a, b] = mul[b, a] = p

    def poly_str():
        terms = []
        for i in range(d, -1, -1):
            c = mod[i] % n
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("x" if c == 1 else f"{c}x")
            else:
                terms.append(f"x^{i}" if c == 1 else f"{c}x^{i}")
        return "+".join(terms)

    ring = FiniteRing(add, mul, 0, 1, f"Z/{n}[x]/({poly_str()})")
    ring.poly_base_n = n
    ring.poly_modulus = tuple(mod)
    return ring


def validate_ring(R: FiniteRing) -> RingValidation:
    """Check every ring axiom by full enumeration; report witnesses."""
    A, M = R.add, R.mul
    failures: list[tuple[str, tuple]] = []

    def first_bad(name, diff):
        bad = np.argwhere(diff)
        if bad.size:
            failures.append((name, tuple(int(v) for v in bad[0])))

    first_bad("add-associative", A[A] != A[:, A])
    first_bad("add-commutative", A != A.T)
    first_bad("add-zero-identity", A[:, R.zero] != np.arange(R.order))
    if not (A == R.zero).any(axis=1).all():
        a = int(np.flatnonzero(~(A == R.zero).any(axis=1))[0])
        failures.append(("add-inverses", (a,)))
    first_bad("mul-associative", M[M] != M[:, M])
    first_bad("mul-commutative", M != M.T)
    first_bad("mul-one-identity", M[:, R.one] != np.arange(R.order))
    first_bad("distributive", M[:, A] != A[M[:, :, None], M[:, None, :]])
    if R.zero == R.one and R.order > 1:
        failures.append(("zero-ne-one", (R.zero,)))
    return RingValidation(ok=not failures, failures=tuple(failures))


def ideal_generate(R: FiniteRing, gens) -> Ideal:
    """Smallest ideal containing `gens`."""
    gens = [int(g) for g in gens]
    for g in gens:
        if not 0 <= g < R.order:
            raise InvalidInput(f"generator {g} out of range for {R.label}")
    if gens:
        seed = np.unique(
            np.concatenate([R.mul[:, gens].ravel(), [R.zero]])
        ).astype(np.int32)
    else:
        seed = np.array([R.zero], dtype=np.int32)
    elems = kernels.additive_closure(R.add, seed)
    return Ideal(R, elems, tuple(gens))


def _ideal_lattice(R: FiniteRing) -> list[Ideal]:
    """All ideals of R (the submodule lattice of R over itself)."""
    subs = kernels.enumerate_lattice(R.add, R.mul, R.zero, 10**6)
    out = []
    for elems in subs:
        gens = _minimal_generators(R, elems)
        out.append(Ideal(R, elems, gens))
    return out


def _minimal_generators(R: FiniteRing, elems: np.ndarray) -> tuple[int, ...]:
    """A short generating set for an ideal given its element set (greedy)."""
    gens: list[int] = []
    have = np.array([R.zero], dtype=np.int32)
    for x in elems:
        pos = np.searchsorted(have, x)
        if pos < have.size and have[pos] == x:
            continue
        gens.append(int(x))
        grown = np.unique(np.concatenate([have, np.unique(R.mul[:, x])])).astype(np.int32)
        have = kernels.additive_closure(R.add, grown)
        if have.size == elems.size:
            break
    return tuple(gens)


def maximal_ideals(R: FiniteRing) -> list[Ideal]:
    """All maximal ideals, by enumerating the ideal lattice and filtering."""
    cached = getattr(R, "_maximal_ideals", None)
    if cached is not None:
        return cached
    lattice = [i for i in _ideal_lattice(R) if i.is_proper()]
    result = []
    for i in lattice:
        if not any(len(j) > len(i) and j.mask[i.elements].all() for j in lattice):
            result.append(i)
    result.sort(key=lambda i: i.elements.tobytes())
    R._maximal_ideals = result
    return result


def saturate(R: FiniteRing, seed) -> MultSet:
    """Smallest multiplicatively closed set containing seed and 1."""
    seed = [int(s) for s in seed]
    if not seed:
        raise InvalidInput("multiplicative set seed must be nonempty")
    for s in seed:
        if not 0 <= s < R.order:
            raise InvalidInput(f"seed element {s} out of range for {R.label}")
    elems = set(seed) | {R.one}
    frontier = list(elems)
    while frontier:
        a = frontier.pop()
        for b in list(elems):
            p = int(R.mul[a, b])
            if p not in elems:
                elems.add(p)
                frontier.append(p)
    return MultSet(R, np.array(sorted(elems), dtype=np.int32))


def complement_multset(R: FiniteRing, ideal: Ideal) -> MultSet | None:
    """R minus the given ideal as a MultSet, or None if not multiplicatively
    closed (checked, never assumed)."""
    comp = np.setdiff1d(np.arange(R.order, dtype=np.int32), ideal.elements)
    prods = R.mul[np.ix_(comp, comp)]
    if ideal.mask[prods].any():
        return None
    return MultSet(R, comp)


def localize_ring(R: FiniteRing, U: MultSet) -> Localization:
    """Invert U: the quotient R/K with K = {r | some u in U kills r}.

    Postcondition (checked): the image of every u in U is invertible.
    """
    if U.ring is not R:
        raise InvalidInput("multiplicative set belongs to a different ring")
    killed = (R.mul[U.elements, :] == R.zero).any(axis=0)
    k_elems = np.flatnonzero(killed).astype(np.int32)
    kernel = Ideal(R, k_elems, _minimal_generators(R, k_elems))
    reps = R.add[:, k_elems].min(axis=1).astype(np.int32)
    codes = np.unique(reps)
    posmap = np.searchsorted(codes, reps).astype(np.int32)
    q = codes.size
    degenerate = q == 1
    add_q = posmap[R.add[np.ix_(codes, codes)]]
    mul_q = posmap[R.mul[np.ix_(codes, codes)]]
    ring_q = FiniteRing(
        add_q,
        mul_q,
        int(posmap[R.zero]),
        int(posmap[R.one]),
        f"({R.label})/({len(kernel)} killed)" if len(kernel) > 1 else R.label,
        allow_trivial=degenerate,
    )
    rmap = RingMap(R, ring_q, posmap)
    for u in U.elements:
        if ring_q.inverse(int(posmap[u])) is None:
            raise AssertionError(
                f"localization postcondition failed: {u} not invertible in {ring_q.label}"
            )
    return Localization(ring_q, rmap, kernel, degenerate)
