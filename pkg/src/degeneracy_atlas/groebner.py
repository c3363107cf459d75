"""Minimal Buchberger engine for zero-dimensional degree counts.

Deliberately small: plain Buchberger over grevlex with the chain criterion
and a hard budget on S-pair reductions.  Running out of budget is an
expected outcome at the scale of the harder stratum degrees; callers treat
``BudgetExceeded`` as "skipped", never as success.
"""

from __future__ import annotations

import itertools

from .errors import BudgetExceeded, NotZeroDimensional
from .poly import MultiPoly


def _divides(e1, e2) -> bool:
    return all(a <= b for a, b in zip(e1, e2))


def _lcm(e1, e2):
    return tuple(max(a, b) for a, b in zip(e1, e2))


def _sub_exp(e1, e2):
    return tuple(a - b for a, b in zip(e1, e2))


def reduce_poly(p: MultiPoly, basis: list[MultiPoly]) -> MultiPoly:
    """Full normal form of p modulo the basis (top reduction repeated)."""
    F = p.field
    remainder = MultiPoly.zero(F, p.nvars)
    work = p
    leads = [g.leading() for g in basis]
    while not work.is_zero():
        e, c = work.leading()
        hit = None
        for g, (ge, gc) in zip(basis, leads):
            if _divides(ge, e):
                hit = (g, ge, gc)
                break
        if hit is None:
            remainder = remainder.add(MultiPoly(F, p.nvars, {e: c}))
            work = work.sub(MultiPoly(F, p.nvars, {e: c}))
        else:
            g, ge, gc = hit
            factor = F.div(c, gc)
            work = work.sub(g.mul_term(_sub_exp(e, ge), factor))
    return remainder


def _s_poly(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    F = f.field
    fe, fc = f.leading()
    ge, gc = g.leading()
    l = _lcm(fe, ge)
    left = f.mul_term(_sub_exp(l, fe), F.inv(fc))
    right = g.mul_term(_sub_exp(l, ge), F.inv(gc))
    return left.sub(right)


def groebner_basis(
    gens: list[MultiPoly], max_pair_reductions: int = 20000
) -> list[MultiPoly]:
    """Groebner basis under grevlex, chain criterion only."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    F = gens[0].field
    basis: list[MultiPoly] = []
    for g in gens:
        _, lc = g.leading()
        basis.append(g.scale(F.inv(lc)))
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    done = set()
    reductions = 0
    while pairs:
        # degree selection with a deterministic tiebreak
        best = min(
            pairs,
            key=lambda ij: (
                sum(_lcm(basis[ij[0]].leading()[0], basis[ij[1]].leading()[0])),
                _lcm(basis[ij[0]].leading()[0], basis[ij[1]].leading()[0]),
                ij,
            ),
        )
        pairs.discard(best)
        i, j = best
        done.add(best)
        ei = basis[i].leading()[0]
        ej = basis[j].leading()[0]
        l = _lcm(ei, ej)
        # chain criterion: a third element dividing the lcm whose pairs with
        # both i and j were already treated makes this pair redundant
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if not _divides(basis[k].leading()[0], l):
                continue
            pik = (max(i, k), min(i, k))
            pjk = (max(j, k), min(j, k))
            if pik in done and pjk in done:
                skip = True
                break
        if skip:
            continue
        if reductions >= max_pair_reductions:
            raise BudgetExceeded(
                f"Groebner pair-reduction budget {max_pair_reductions} exhausted"
            )
        reductions += 1
        s = reduce_poly(_s_poly(basis[i], basis[j]), basis)
        if s.is_zero():
            continue
        _, lc = s.leading()
        s = s.scale(F.inv(lc))
        basis.append(s)
        new = len(basis) - 1
        for t in range(new):
            pairs.add((new, t))
    return basis


def groebner_zero_dim_degree(
    gens: list[MultiPoly], max_pair_reductions: int = 20000
) -> int:
    """Vector-space dimension of the quotient ring, i.e. the count of
    standard monomials under the grevlex staircase.

    Raises NotZeroDimensional when some variable has no pure power among the
    leading terms, BudgetExceeded when Buchberger does not finish in budget.
    """
    basis = groebner_basis(gens, max_pair_reductions)
    if not basis:
        raise NotZeroDimensional("empty generating set")
    nvars = basis[0].nvars
    leads = [g.leading()[0] for g in basis]
    if any(sum(e) == 0 for e in leads):
        return 0  # 1 lies in the ideal
    bounds = []
    for i in range(nvars):
        pure = [
            e[i]
            for e in leads
            if e[i] > 0 and all(e[j] == 0 for j in range(nvars) if j != i)
        ]
        if not pure:
            raise NotZeroDimensional(f"no pure power of x{i} among leading terms")
        bounds.append(min(pure))
    count = 0
    for mono in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(e, mono) for e in leads):
            count += 1
    return count
