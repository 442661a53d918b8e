"""Presentations of the reduced equivariant K-groups of the two spheres.

For the sphere with a one-dimensional sign action the group is the ideal
generated by 1 - lambda in the representation ring; for the two-sphere
with the extra trivial coordinate it is the span of the differences
chi - (twist of chi) over Irr(ker lambda), with the coset twist acting
and an identically zero internal product. Both presentations carry exact
integer data and are verified against lattice oracles in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels, lattice
from .characters import (
    CharacterTheoryError,
    LambdaContext,
    VirtualCharacter,
    decompose_values,
    lambda_context,
    product_values,
    restrict,
    restrict_values,
    tensor_product,
    _embedded_values,
)
from .groups import GroupTable, SignHomomorphism

S_LAMBDA = "s-lambda"
S1_LAMBDA = "s1-lambda"


@dataclass(eq=False)
class BasisElement:
    """One generator chi - twist(chi), tagged with its symbolic bundle label."""

    rep: int
    partner: int
    character: VirtualCharacter
    label: str


@dataclass(eq=False)
class KGroupPresentation:
    """Free-abelian presentation with action matrices and zero product."""

    sphere: str
    rank: int
    basis: tuple[BasisElement, ...]
    action_names: tuple[str, ...]
    action: tuple[np.ndarray, ...]
    ctx: LambdaContext
    product_is_zero: bool = True

    def zero(self) -> "KElement":
        return KElement(self, (0,) * self.rank)

    def element(self, coords) -> "KElement":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return KElement(self, coords)

    def action_matrix(self, phi: VirtualCharacter) -> np.ndarray:
        """Matrix of a virtual character, extended linearly from irreducibles."""
        if phi.table is not self.ctx.table_g:
            raise CharacterTheoryError("character does not act on this presentation")
        out = np.zeros((self.rank, self.rank), dtype=np.int64)
        for c, a in zip(phi.coeffs, self.action):
            if c:
                out += c * a
        return out

    def signature(self) -> tuple:
        return (
            self.sphere,
            self.rank,
            tuple((b.rep, b.partner, b.character.coeffs, b.label) for b in self.basis),
            self.action_names,
            tuple(tuple(map(tuple, a.tolist())) for a in self.action),
        )

    def to_jsonable(self) -> dict:
        return {
            "sphere": self.sphere,
            "rank": self.rank,
            "basis": [
                {
                    "rep": b.rep,
                    "partner": b.partner,
                    "label": b.label,
                    "coeffs": list(b.character.coeffs),
                }
                for b in self.basis
            ],
            "action": {
                "names": list(self.action_names),
                "matrices": [a.tolist() for a in self.action],
            },
            "product_rule": "zero",
        }


@dataclass(eq=False)
class KElement:
    """An element of a K-group presentation in basis coordinates."""

    presentation: KGroupPresentation
    coords: tuple[int, ...]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KElement):
            return NotImplemented
        return self.presentation is other.presentation and self.coords == other.coords


@dataclass(eq=False)
class IdealPresentation:
    """Basis of the ideal generated by 1 - lambda inside R(G)."""

    sphere: str
    rank: int
    basis: tuple[VirtualCharacter, ...]
    pairs: tuple[tuple[int, int], ...]
    fixed: tuple[int, ...]
    lambda_index: int
    ctx: LambdaContext

    def to_jsonable(self) -> dict:
        return {
            "sphere": self.sphere,
            "rank": self.rank,
            "lambda_index": self.lambda_index,
            "basis": [list(b.coeffs) for b in self.basis],
            "pairs": [list(p) for p in self.pairs],
            "fixed": list(self.fixed),
        }


# ---------------------------------------------------------------------------
# the sphere with the extra trivial coordinate
# ---------------------------------------------------------------------------


def _h_pairs(ctx: LambdaContext) -> list[tuple[int, int]]:
    return [
        (o[0], o[1])
        for o, iso in zip(ctx.orbits.orbits, ctx.orbits.isotropy)
        if iso == "H"
    ]


def _antiinvariant_coords(ctx: LambdaContext, t: np.ndarray) -> np.ndarray:
    """Coordinates of twist-antiinvariant vectors of Z^Irr(H) in the pair basis.

    Raises when a vector is not in the span (nonzero on a fixed character or
    asymmetric on a pair): such input signals an internal invariant violation.
    """
    t = np.asarray(t, dtype=np.int64)
    pairs = _h_pairs(ctx)
    for o, iso in zip(ctx.orbits.orbits, ctx.orbits.isotropy):
        if iso == "G":
            if np.any(t[..., o[0]]):
                raise CharacterTheoryError(
                    f"vector has weight on twist-fixed character chi{o[0]}"
                )
    for rep, partner in pairs:
        if np.any(t[..., partner] != -t[..., rep]):
            raise CharacterTheoryError(
                f"vector is not antiinvariant on the pair ({rep},{partner})"
            )
    if not pairs:
        return np.zeros(t.shape[:-1] + (0,), dtype=np.int64)
    return t[..., [rep for rep, _ in pairs]]


def k_group_s1_lambda(
    group: GroupTable, lam: SignHomomorphism, b: int | None = None
) -> KGroupPresentation:
    """Presentation with basis {chi - twist(chi)} over swapped orbit pairs."""
    ctx = lambda_context(group, lam, b)
    table_g, table_h = ctx.table_g, ctx.table_h
    pairs = _h_pairs(ctx)
    rank = len(pairs)
    k_h = table_h.count
    basis = []
    coeff_mat = np.zeros((rank, k_h), dtype=np.int64)
    for e, (rep, partner) in enumerate(pairs):
        coeff_mat[e, rep] = 1
        coeff_mat[e, partner] = -1
        basis.append(
            BasisElement(
                rep=rep,
                partner=partner,
                character=VirtualCharacter(table_h, tuple(int(c) for c in coeff_mat[e])),
                label=f"ind(chi{rep}⊗(ζ-1))",
            )
        )
    rows = [b.character.coeffs for b in basis]
    if not lattice.integrally_independent(rows):
        raise CharacterTheoryError("basis differences are not integrally independent")
    k_g = table_g.count
    if rank:
        ring_g = table_g.ring
        basis_vals = np.einsum(
            "ec,cjp->ejp", coeff_mat, _embedded_values(table_h, ring_g)
        )
        res_all = restrict_values(ctx.emb, table_g.values)
        bm = kernels.mul_into(basis_vals, ring_g.mul)
        prods = kernels.pair_products(res_all, bm)
        t = decompose_values(
            table_h, prods.reshape(k_g * rank, k_h, ring_g.phi), ring_g
        ).reshape(k_g, rank, k_h)
        mats = tuple(
            np.ascontiguousarray(_antiinvariant_coords(ctx, t[a]).T) for a in range(k_g)
        )
    else:
        mats = tuple(np.zeros((0, 0), dtype=np.int64) for _ in range(k_g))
    if not np.array_equal(mats[table_g.trivial_index], np.eye(rank, dtype=np.int64)):
        raise CharacterTheoryError("trivial character does not act as the identity")
    return KGroupPresentation(
        sphere=S1_LAMBDA,
        rank=rank,
        basis=tuple(basis),
        action_names=table_g.names,
        action=mats,
        ctx=ctx,
    )


def module_action(pres: KGroupPresentation, phi: VirtualCharacter, x) -> KElement:
    """Act by a virtual character: restrict, multiply in R(H), re-coordinate."""
    coords = x.coords if isinstance(x, KElement) else tuple(int(c) for c in x)
    if isinstance(x, KElement) and x.presentation is not pres:
        raise CharacterTheoryError("element belongs to a different presentation")
    if len(coords) != pres.rank:
        raise ValueError(f"expected {pres.rank} coordinates, got {len(coords)}")
    ctx = pres.ctx
    if phi.table is not ctx.table_g:
        raise CharacterTheoryError("character does not act on this presentation")
    if pres.rank == 0:
        return pres.zero()
    xh = np.zeros(ctx.table_h.count, dtype=np.int64)
    for c, b in zip(coords, pres.basis):
        if c:
            xh += c * np.asarray(b.character.coeffs, dtype=np.int64)
    res = restrict(phi, ctx.emb)
    prod = tensor_product(res, VirtualCharacter(ctx.table_h, tuple(int(v) for v in xh)))
    out = _antiinvariant_coords(ctx, np.asarray(prod.coeffs, dtype=np.int64))
    return KElement(pres, tuple(int(v) for v in out))


def ring_product(alpha: KElement, beta: KElement) -> KElement:
    """The internal product: identically zero for every pair of elements."""
    if alpha.presentation is not beta.presentation:
        raise CharacterTheoryError("elements belong to different presentations")
    return alpha.presentation.zero()


# ---------------------------------------------------------------------------
# the sign sphere
# ---------------------------------------------------------------------------


def _lambda_tensor_permutation(ctx: LambdaContext) -> np.ndarray:
    table = ctx.table_g
    lam_vals = table.values[ctx.lambda_index]
    prods = product_values(
        np.broadcast_to(lam_vals, table.values.shape), table.values, table.ring
    )
    coeffs = decompose_values(table, prods)
    pi = np.full(table.count, -1, dtype=np.int64)
    for c in range(table.count):
        row = coeffs[c]
        nz = np.nonzero(row)[0]
        if len(nz) != 1 or row[nz[0]] != 1:
            raise CharacterTheoryError("tensoring by the sign character is not a permutation")
        pi[c] = nz[0]
    if np.any(pi[pi] != np.arange(table.count)):
        raise CharacterTheoryError("sign tensoring is not an involution")
    return pi


def k_group_s_lambda(group: GroupTable, lam: SignHomomorphism) -> IdealPresentation:
    """Basis {phi - lambda*phi} over swapped orbits of tensoring by the sign."""
    ctx = lambda_context(group, lam)
    table = ctx.table_g
    pi = _lambda_tensor_permutation(ctx)
    pairs = [(c, int(pi[c])) for c in range(table.count) if c < pi[c]]
    fixed = tuple(c for c in range(table.count) if pi[c] == c)
    basis = []
    for rep, partner in pairs:
        coeffs = [0] * table.count
        coeffs[rep] = 1
        coeffs[partner] = -1
        basis.append(VirtualCharacter(table, tuple(coeffs)))
    if not lattice.integrally_independent([b.coeffs for b in basis]):
        raise CharacterTheoryError("ideal basis is not integrally independent")
    return IdealPresentation(
        sphere=S_LAMBDA,
        rank=len(pairs),
        basis=tuple(basis),
        pairs=tuple(pairs),
        fixed=fixed,
        lambda_index=ctx.lambda_index,
        ctx=ctx,
    )


def rank_splitting_report(group: GroupTable, lam: SignHomomorphism) -> dict:
    """Orbit counts by isotropy type and the resulting free rank."""
    ctx = lambda_context(group, lam)
    n_h = sum(1 for iso in ctx.orbits.isotropy if iso == "H")
    n_g = sum(1 for iso in ctx.orbits.isotropy if iso == "G")
    return {"orbits_isotropy_H": n_h, "orbits_isotropy_G": n_g, "rank": n_h}
