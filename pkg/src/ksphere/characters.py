"""Character tables and representation-ring operations, all exact.

Class-function values live in one cyclotomic ring per group (modulus =
group exponent); subgroup values embed into the ambient modulus when the
two interact. Bulk operations (decomposition, induction, products) run on
int64 coefficient arrays through the kernels module, and every
decomposition is checked for exact integrality: a non-integer multiplicity
anywhere aborts with a diagnostic rather than rounding.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass

import numpy as np

from . import dixon, kernels
from .cyclotomic import Cyclotomic, CyclotomicRing, get_ring
from .groups import (
    ConjugacyClasses,
    GroupTable,
    SignHomomorphism,
    SubgroupEmbedding,
    conjugacy_classes,
    coset_representatives,
    kernel_embedding,
)


class CharacterTheoryError(ArithmeticError):
    """Exact-arithmetic invariant violated (non-integer multiplicity etc.)."""


# Exact table verification is skipped above this contraction-cost bound;
# it covers every desk-scale group and avoids quadratic blowups near the
# order cap (the verification module can still run the checks explicitly).
_VERIFY_COST_LIMIT = 2 * 10**9


@dataclass(eq=False)
class ClassFunction:
    """A function on conjugacy classes with exact cyclotomic values."""

    group: GroupTable
    classes: ConjugacyClasses
    values: tuple[Cyclotomic, ...]

    @property
    def modulus(self) -> int:
        return self.values[0].modulus

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return (
            self.group.fingerprint() == other.group.fingerprint()
            and self.values == other.values
        )


@dataclass(eq=False)
class CharacterTable:
    """All irreducible characters of a group in canonical order.

    Ordering: ascending degree, then descending lexicographic comparison of
    the coefficient vectors of the value row (so the trivial character
    comes first). `values[c, j]` holds the coefficients of character c at
    class j in the ring of `modulus`.
    """

    group: GroupTable
    classes: ConjugacyClasses
    ring: CyclotomicRing
    degrees: tuple[int, ...]
    values: np.ndarray
    names: tuple[str, ...]
    trivial_index: int

    @property
    def modulus(self) -> int:
        return self.ring.modulus

    @property
    def count(self) -> int:
        return len(self.degrees)

    @property
    def irreducibles(self) -> tuple[ClassFunction, ...]:
        cached = getattr(self, "_irreducibles", None)
        if cached is None:
            m = self.modulus
            cached = tuple(
                ClassFunction(
                    self.group,
                    self.classes,
                    tuple(Cyclotomic.make(m, row) for row in self.values[c]),
                )
                for c in range(self.count)
            )
            self._irreducibles = cached
        return cached

    def character_index(self, values_row: np.ndarray) -> int | None:
        key = np.ascontiguousarray(values_row, dtype=np.int64).tobytes()
        return self._row_lookup.get(key)


@dataclass(eq=False)
class VirtualCharacter:
    """An integer combination of the irreducible characters of one table."""

    table: CharacterTable
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.table.count:
            raise ValueError("coefficient vector length mismatch")
        self.coeffs = tuple(int(c) for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VirtualCharacter):
            return NotImplemented
        return self.table is other.table and self.coeffs == other.coeffs

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        self._check_same(other)
        return VirtualCharacter(self.table, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        self._check_same(other)
        return VirtualCharacter(self.table, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "VirtualCharacter":
        return VirtualCharacter(self.table, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        return tensor_product(self, other)

    def _check_same(self, other: "VirtualCharacter"):
        if self.table is not other.table:
            raise CharacterTheoryError("virtual characters belong to different tables")

    def degree(self) -> int:
        return sum(c * d for c, d in zip(self.coeffs, self.table.degrees))

    def as_values(self) -> np.ndarray:
        return values_of_coeffs(self.table, np.asarray([self.coeffs], dtype=np.int64))[0]

    def as_class_function(self) -> ClassFunction:
        vals = self.as_values()
        m = self.table.modulus
        return ClassFunction(
            self.table.group,
            self.table.classes,
            tuple(Cyclotomic.make(m, row) for row in vals),
        )

    @staticmethod
    def unit(table: "CharacterTable", index: int) -> "VirtualCharacter":
        coeffs = [0] * table.count
        coeffs[index] = 1
        return VirtualCharacter(table, tuple(coeffs))


@dataclass(eq=False)
class OrbitData:
    """Orbits of the coset twist on the irreducible characters of H."""

    orbits: tuple[tuple[int, ...], ...]
    isotropy: tuple[str, ...]  # "G" (fixed) or "H" (swapped)
    representatives: tuple[int, ...]
    twist_perm: np.ndarray
    b: int


# ---------------------------------------------------------------------------
# caches
# ---------------------------------------------------------------------------

_classes_cache: "weakref.WeakKeyDictionary[GroupTable, ConjugacyClasses]" = (
    weakref.WeakKeyDictionary()
)
_table_cache: "weakref.WeakKeyDictionary[GroupTable, CharacterTable]" = (
    weakref.WeakKeyDictionary()
)
_table_data_cache: dict[bytes, tuple[tuple[int, ...], np.ndarray, int]] = {}
_analysis_cache: "weakref.WeakKeyDictionary[CharacterTable, dict]" = weakref.WeakKeyDictionary()
_embedded_values_cache: "weakref.WeakKeyDictionary[CharacterTable, dict]" = (
    weakref.WeakKeyDictionary()
)
_emb_data_cache: "weakref.WeakKeyDictionary[SubgroupEmbedding, dict]" = (
    weakref.WeakKeyDictionary()
)


def get_classes(group: GroupTable) -> ConjugacyClasses:
    cached = _classes_cache.get(group)
    if cached is None:
        cached = conjugacy_classes(group)
        _classes_cache[group] = cached
    return cached


# ---------------------------------------------------------------------------
# table construction
# ---------------------------------------------------------------------------


def character_table(group: GroupTable) -> CharacterTable:
    """The full table of irreducible characters, exact and canonically sorted."""
    cached = _table_cache.get(group)
    if cached is not None:
        return cached
    classes = get_classes(group)
    key = group.fingerprint()
    data = _table_data_cache.get(key)
    fresh = data is None
    if fresh:
        degrees_raw, values_raw, modulus = dixon.character_table_data(group, classes)
        order = sorted(
            range(len(degrees_raw)),
            key=lambda c: (
                degrees_raw[c],
                tuple(int(-v) for v in values_raw[c].reshape(-1)),
            ),
        )
        degrees = tuple(degrees_raw[c] for c in order)
        values = np.ascontiguousarray(values_raw[order])
        data = (degrees, values, modulus)
        _table_data_cache[key] = data
    degrees, values, modulus = data
    table = _assemble_table(group, classes, degrees, values, modulus)
    if fresh:
        # Identical table bytes were already certified on the first build.
        failures = table_invariant_failures(table)
        if failures:
            raise dixon.CharacterEngineError(
                f"character table of {group.name} failed self-checks: {failures}"
            )
    _table_cache[group] = table
    return table


def _assemble_table(group, classes, degrees, values, modulus) -> CharacterTable:
    ring = get_ring(modulus)
    values = np.ascontiguousarray(values, dtype=np.int64)
    values.setflags(write=False)
    trivial_row = np.zeros((classes.count, ring.phi), dtype=np.int64)
    trivial_row[:, 0] = 1
    trivial_index = -1
    for c in range(len(degrees)):
        if np.array_equal(values[c], trivial_row):
            trivial_index = c
            break
    table = CharacterTable(
        group=group,
        classes=classes,
        ring=ring,
        degrees=tuple(int(d) for d in degrees),
        values=values,
        names=tuple(f"chi{c}" for c in range(len(degrees))),
        trivial_index=trivial_index,
    )
    table._row_lookup = {values[c].tobytes(): c for c in range(len(degrees))}
    return table


def table_invariant_failures(table: CharacterTable) -> list[str]:
    """Exact structural checks; returns one message per violated invariant."""
    out: list[str] = []
    k = table.classes.count
    n = table.group.order
    phi = table.ring.phi
    if table.count != k:
        out.append(f"irreducible count {table.count} != class count {k}")
        return out
    if table.trivial_index < 0:
        out.append("trivial character missing")
    if sum(d * d for d in table.degrees) != n:
        out.append(f"sum of degree squares {sum(d*d for d in table.degrees)} != order {n}")
    for c in range(k):
        col0 = table.values[c, 0]
        if col0[0] != table.degrees[c] or np.any(col0[1:]):
            out.append(f"value at identity class disagrees with degree for chi{c}")
    key_mat = np.concatenate(
        [
            np.asarray(table.degrees, dtype=np.int64)[:, None],
            -table.values.reshape(k, -1),
        ],
        axis=1,
    )
    diff = key_mat[1:] != key_mat[:-1]
    if k > 1:
        any_diff = np.any(diff, axis=1)
        if not np.all(any_diff):
            out.append("duplicate character rows")
        first = np.argmax(diff, axis=1)
        lead = key_mat[np.arange(1, k), first] - key_mat[np.arange(k - 1), first]
        if np.any(lead[any_diff] < 0):
            out.append("characters are not in canonical order")
    if k**3 * phi**2 > _VERIFY_COST_LIMIT:
        # Orthogonality certificate is quadratic in the table; near the order
        # cap it is skipped here and left to explicit verification runs.
        return out
    at = _analysis_tensor(table, table.ring)
    gram = kernels.weighted_analysis(table.values, at)  # [a, b, phi]
    expected = np.zeros_like(gram)
    expected[np.arange(k), np.arange(k), 0] = n
    if not np.array_equal(gram, expected):
        bad = np.argwhere(np.any(gram != expected, axis=-1))
        pairs = ", ".join(f"({a},{b})" for a, b in bad[:5])
        out.append(f"row orthogonality fails at character pairs {pairs}")
    sizes = np.asarray(table.classes.class_sizes, dtype=np.int64)
    conj_vals = table.values @ table.ring.conj
    cm = kernels.mul_into(conj_vals, table.ring.mul)
    col = kernels.pair_gram(table.values.transpose(1, 0, 2), cm.transpose(1, 0, 2, 3))
    col_expected = np.zeros_like(col)
    col_expected[np.arange(k), np.arange(k), 0] = n // sizes
    if not np.array_equal(col, col_expected):
        bad = np.argwhere(np.any(col != col_expected, axis=-1))
        pairs = ", ".join(f"({i},{j})" for i, j in bad[:5])
        out.append(f"column orthogonality fails at class pairs {pairs}")
    return out


# ---------------------------------------------------------------------------
# bulk engine
# ---------------------------------------------------------------------------


def values_of_coeffs(table: CharacterTable, coeffs: np.ndarray) -> np.ndarray:
    """Class-function value arrays [B, k, phi] of virtual characters [B, k]."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    return np.einsum("bc,cjp->bjp", coeffs, table.values)


def _embedded_values(table: CharacterTable, ring: CyclotomicRing) -> np.ndarray:
    if ring.modulus == table.modulus:
        return table.values
    per = _embedded_values_cache.setdefault(table, {})
    vals = per.get(ring.modulus)
    if vals is None:
        emb = table.ring.embed_matrix(ring)
        vals = np.einsum("cjp,pr->cjr", table.values, emb)
        per[ring.modulus] = vals
    return vals


def _analysis_tensor(table: CharacterTable, ring: CyclotomicRing) -> np.ndarray:
    per = _analysis_cache.setdefault(table, {})
    at = per.get(ring.modulus)
    if at is None:
        vals = _embedded_values(table, ring)
        conj_vals = vals @ ring.conj
        sizes = np.asarray(table.classes.class_sizes, dtype=np.int64)
        weighted = conj_vals * sizes[None, :, None]
        at = kernels.mul_into(weighted, ring.mul)
        per[ring.modulus] = at
    return at


def decompose_values(
    table: CharacterTable, varr: np.ndarray, ring: CyclotomicRing | None = None
) -> np.ndarray:
    """Exact irreducible coordinates of class-function values [B, k, phi].

    Raises CharacterTheoryError when any multiplicity fails to be a rational
    integer: that always signals an internal bug or corrupted input, never a
    legitimate outcome.
    """
    ring = table.ring if ring is None else ring
    at = _analysis_tensor(table, ring)
    x = kernels.weighted_analysis(np.asarray(varr, dtype=np.int64), at)
    order = table.group.order
    if np.any(x[..., 1:]):
        b, c = np.argwhere(np.any(x[..., 1:], axis=-1))[0]
        raise CharacterTheoryError(
            f"non-rational multiplicity on {table.group.name}: "
            f"function {b}, irreducible chi{c}"
        )
    c0 = x[..., 0]
    if np.any(c0 % order):
        b, c = np.argwhere(c0 % order)[0]
        raise CharacterTheoryError(
            f"non-integer multiplicity {c0[b, c]}/{order} on {table.group.name}: "
            f"function {b}, irreducible chi{c}"
        )
    return c0 // order


def product_values(a: np.ndarray, b: np.ndarray, ring: CyclotomicRing) -> np.ndarray:
    """Pointwise ring product of equal-shape value arrays [..., phi]."""
    bm = kernels.mul_into(np.asarray(b, dtype=np.int64), ring.mul)
    return np.einsum("...p,...pr->...r", np.asarray(a, dtype=np.int64), bm)


# ---------------------------------------------------------------------------
# scalar operations
# ---------------------------------------------------------------------------


def inner_product(f: ClassFunction, g: ClassFunction) -> Cyclotomic:
    """<f, g> = |G|^-1 sum |C_j| f(j) conj(g(j)), exact."""
    if f.group.fingerprint() != g.group.fingerprint():
        raise CharacterTheoryError("inner product of class functions on different groups")
    m = max(f.modulus, g.modulus)
    if f.modulus % g.modulus and g.modulus % f.modulus:
        raise CharacterTheoryError("incompatible cyclotomic moduli")
    total = Cyclotomic.integer(m, 0)
    for size, a, b in zip(f.classes.class_sizes, f.values, g.values):
        total = total + a.embed(m) * b.embed(m).conjugate() * size
    return total.divide_exact(f.group.order)


# ---------------------------------------------------------------------------
# restriction / induction / twist
# ---------------------------------------------------------------------------


def _emb_data(emb: SubgroupEmbedding) -> dict:
    data = _emb_data_cache.get(emb)
    if data is not None:
        return data
    g = emb.ambient
    h = emb.subgroup
    cls_g = get_classes(g)
    cls_h = get_classes(h)
    pos = np.full(g.order, -1, dtype=np.int64)
    pos[list(emb.inclusion)] = np.arange(h.order)
    incl = np.asarray(emb.inclusion, dtype=np.int64)
    # H-class -> ambient class of its representative.
    rmap = np.asarray(
        [int(cls_g.class_of[incl[rep]]) for rep in cls_h.representatives], dtype=np.int64
    )
    # Induction weights W[a, i] = #{x in G : x^-1 g_a x in H-class i}.
    prod = g.product
    inv = g.inverse
    all_g = np.arange(g.order, dtype=np.int64)
    w = np.zeros((cls_g.count, cls_h.count), dtype=np.int64)
    for a, rep in enumerate(cls_g.representatives):
        conjugates = prod[prod[inv[all_g], rep], all_g]
        inside = pos[conjugates]
        hits = inside[inside >= 0]
        if hits.size:
            w[a] = np.bincount(cls_h.class_of[hits], minlength=cls_h.count)
    data = {
        "pos": pos,
        "incl": incl,
        "rmap": rmap,
        "weights": w,
        "cls_g": cls_g,
        "cls_h": cls_h,
        "twist_perms": {},
        "twist_class_maps": {},
    }
    _emb_data_cache[emb] = data
    return data


def restrict_values(emb: SubgroupEmbedding, gvals: np.ndarray) -> np.ndarray:
    """Gather ambient class-function values [B, k_G, phi] onto H classes."""
    rmap = _emb_data(emb)["rmap"]
    return np.ascontiguousarray(gvals[:, rmap, :])


def restrict(phi: VirtualCharacter, emb: SubgroupEmbedding) -> VirtualCharacter:
    """Restriction res_H: decompose an ambient virtual character over Irr(H)."""
    table_g = character_table(emb.ambient)
    table_h = character_table(emb.subgroup)
    if phi.table is not table_g:
        raise CharacterTheoryError("character does not live on the ambient group")
    gvals = values_of_coeffs(table_g, np.asarray([phi.coeffs]))
    hvals = restrict_values(emb, gvals)
    coeffs = decompose_values(table_h, hvals, table_g.ring)[0]
    return VirtualCharacter(table_h, tuple(int(c) for c in coeffs))


def induced_values(emb: SubgroupEmbedding, hvals: np.ndarray) -> np.ndarray:
    """Value-level induction of H class functions [B, k_H, phi] to G classes."""
    data = _emb_data(emb)
    w = data["weights"]
    numer = np.einsum("ai,bip->bap", w, np.asarray(hvals, dtype=np.int64))
    h_order = emb.subgroup.order
    if np.any(numer % h_order):
        raise CharacterTheoryError("induced values are not algebraic integers")
    return numer // h_order


def induce(chi: VirtualCharacter, emb: SubgroupEmbedding) -> VirtualCharacter:
    """Induction ind_H^G by the finite-index transfer formula, decomposed exactly."""
    table_g = character_table(emb.ambient)
    table_h = character_table(emb.subgroup)
    if chi.table is not table_h:
        raise CharacterTheoryError("character does not live on the subgroup")
    hvals = np.einsum(
        "bc,cjp->bjp", np.asarray([chi.coeffs], dtype=np.int64), _embedded_values(table_h, table_g.ring)
    )
    gvals = induced_values(emb, hvals)
    coeffs = decompose_values(table_g, gvals, table_g.ring)[0]
    return VirtualCharacter(table_g, tuple(int(c) for c in coeffs))


def twist_class_map(emb: SubgroupEmbedding, g: int) -> np.ndarray:
    """Permutation of H classes induced by h -> g^-1 h g."""
    data = _emb_data(emb)
    cached = data["twist_class_maps"].get(g)
    if cached is not None:
        return cached
    ambient = emb.ambient
    if not 0 <= g < ambient.order:
        raise CharacterTheoryError(f"element {g} is not in the ambient group")
    cls_h = data["cls_h"]
    pos = data["pos"]
    incl = data["incl"]
    prod = ambient.product
    ginv = int(ambient.inverse[g])
    reps = np.asarray(cls_h.representatives, dtype=np.int64)
    conj = prod[prod[ginv, incl[reps]], g]
    hidx = pos[conj]
    if np.any(hidx < 0):
        raise CharacterTheoryError("subgroup is not normal under this element")
    tw = np.ascontiguousarray(cls_h.class_of[hidx])
    tw.setflags(write=False)
    data["twist_class_maps"][g] = tw
    return tw


def twist_permutation(emb: SubgroupEmbedding, g: int) -> np.ndarray:
    """Permutation sigma on Irr(H) with (g-twist of chi_c) = chi_sigma(c)."""
    data = _emb_data(emb)
    cached = data["twist_perms"].get(g)
    if cached is not None:
        return cached
    table_h = character_table(emb.subgroup)
    tw = twist_class_map(emb, g)
    twisted = table_h.values[:, tw, :]
    sigma = np.empty(table_h.count, dtype=np.int64)
    for c in range(table_h.count):
        target = table_h.character_index(twisted[c])
        if target is None:
            raise CharacterTheoryError("twisted irreducible is not in the table")
        sigma[c] = target
    if len(set(int(s) for s in sigma)) != table_h.count:
        raise CharacterTheoryError("twist did not permute the irreducibles")
    sigma.setflags(write=False)
    data["twist_perms"][g] = sigma
    return sigma


def conjugate_twist(chi: VirtualCharacter, emb: SubgroupEmbedding, g: int) -> VirtualCharacter:
    """The twisted character h -> chi(g^-1 h g) as a virtual character on H."""
    table_h = character_table(emb.subgroup)
    if chi.table is not table_h:
        raise CharacterTheoryError("character does not live on the subgroup")
    sigma = twist_permutation(emb, g)
    out = [0] * table_h.count
    for c, coeff in enumerate(chi.coeffs):
        out[int(sigma[c])] = coeff
    return VirtualCharacter(table_h, tuple(out))


def tensor_product(a: VirtualCharacter, b: VirtualCharacter) -> VirtualCharacter:
    """Product in the representation ring, decomposed exactly over Irr."""
    a._check_same(b)
    table = a.table
    va = values_of_coeffs(table, np.asarray([a.coeffs]))
    vb = values_of_coeffs(table, np.asarray([b.coeffs]))
    prod = product_values(va, vb, table.ring)
    coeffs = decompose_values(table, prod)[0]
    return VirtualCharacter(table, tuple(int(c) for c in coeffs))


# ---------------------------------------------------------------------------
# lambda context and orbits
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class LambdaContext:
    """Shared data for one (group, sign homomorphism) pair."""

    group: GroupTable
    lam: SignHomomorphism
    table_g: CharacterTable
    emb: SubgroupEmbedding
    table_h: CharacterTable
    cosets: list[int]
    b: int
    twist: np.ndarray
    orbits: OrbitData
    lambda_index: int


_ctx_cache: "weakref.WeakKeyDictionary[SignHomomorphism, dict]" = weakref.WeakKeyDictionary()


def _orbit_data(table_h: CharacterTable, sigma: np.ndarray, b: int) -> OrbitData:
    orbits = []
    isotropy = []
    seen = set()
    for c in range(table_h.count):
        if c in seen:
            continue
        t = int(sigma[c])
        if t == c:
            orbits.append((c,))
            isotropy.append("G")
            seen.add(c)
        else:
            orbits.append((c, t) if c < t else (t, c))
            isotropy.append("H")
            seen.update((c, t))
    return OrbitData(
        orbits=tuple(orbits),
        isotropy=tuple(isotropy),
        representatives=tuple(o[0] for o in orbits),
        twist_perm=sigma,
        b=b,
    )


def lambda_index(table_g: CharacterTable, lam: SignHomomorphism) -> int:
    """Index of the degree-1 character whose values are the signs of lambda."""
    k = table_g.classes.count
    row = np.zeros((k, table_g.ring.phi), dtype=np.int64)
    for j, rep in enumerate(table_g.classes.representatives):
        row[j, 0] = int(lam.values[rep])
    idx = table_g.character_index(row)
    if idx is None:
        raise CharacterTheoryError("sign character is not in the table")
    return idx


def lambda_context(group: GroupTable, lam: SignHomomorphism, b: int | None = None) -> LambdaContext:
    per = _ctx_cache.setdefault(lam, {})
    base = per.get(None)
    if base is None or base.group is not group:
        table_g = character_table(group)
        emb = kernel_embedding(group, lam)
        table_h = character_table(emb.subgroup)
        cosets = coset_representatives(group, lam)
        sigma = twist_permutation(emb, cosets[0])
        base = LambdaContext(
            group=group,
            lam=lam,
            table_g=table_g,
            emb=emb,
            table_h=table_h,
            cosets=cosets,
            b=cosets[0],
            twist=sigma,
            orbits=_orbit_data(table_h, sigma, cosets[0]),
            lambda_index=lambda_index(table_g, lam),
        )
        per[None] = base
    if b is None or b == base.b:
        return base
    ctx = per.get(b)
    if ctx is not None and ctx.group is group:
        return ctx
    if int(lam.values[b]) != -1:
        raise CharacterTheoryError("chosen b is not in the nontrivial coset")
    sigma = twist_permutation(base.emb, b)
    ctx = LambdaContext(
        group=group,
        lam=lam,
        table_g=base.table_g,
        emb=base.emb,
        table_h=base.table_h,
        cosets=base.cosets,
        b=b,
        twist=sigma,
        orbits=_orbit_data(base.table_h, sigma, b),
        lambda_index=base.lambda_index,
    )
    per[b] = ctx
    return ctx


def g_orbits_on_irr(group: GroupTable, lam: SignHomomorphism) -> OrbitData:
    """Orbits of the canonical-coset twist on Irr(ker lambda)."""
    return lambda_context(group, lam).orbits
