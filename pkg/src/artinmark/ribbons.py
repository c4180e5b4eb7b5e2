"""Elementary ribbons and the co-rank-1 decomposition of X-ribbons-X.

The elementary conjugator d_{X,t} is Delta_{X(t)} Delta_{X(t)-{t}}^-1 when
t lies outside X (with X(t) the component of X united with t containing t)
and Delta_{X(t)} when t lies in X; it carries the generator set X to another
generator set.  When X misses exactly one generator, every composition of
elementary ribbons returning to X equals a product
Delta_{X_1}^a Delta_{X_2}^b Delta_{X_3}^c Delta_Gamma^d over the components
of X; the decomposer peels the Delta_Gamma power first and then one
component at a time, mirroring the ascending-product extraction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAnXRibbonX, NotCorankOne
from .garside import ArtinElement, GarsideContext
from .simplex import _scan_exponent

Subset = frozenset[int]


@dataclass(frozen=True)
class Ribbon:
    """A positive conjugator carrying the source generator set to the target."""

    element: ArtinElement
    source: Subset
    target: Subset
    moved_component: Subset

    def __mul__(self, earlier: Ribbon) -> Ribbon:
        """Composite ribbon applying `earlier` first."""
        if earlier.target != self.source:
            raise NotAnXRibbonX(
                f"cannot compose: source {sorted(self.source)} != target {sorted(earlier.target)}"
            )
        return Ribbon(
            self.element * earlier.element,
            earlier.source,
            self.target,
            self.moved_component,
        )


def elementary_ribbon(ctx: GarsideContext, subset, t: int) -> Ribbon:
    """The elementary conjugator d_{X,t} with its target subset."""
    x = frozenset(subset)
    graph = ctx.graph
    x_t = next(c for c in graph.components(x | {t}) if t in c)
    if t in x:
        d = ctx.delta_of(x_t)
    else:
        d = ctx.delta_of(x_t) * ctx.delta_of(x_t - {t}).inverse()
    d_inv = d.inverse()
    mapping = {}
    for s in x:
        image = d * ctx.atoms[s] * d_inv
        hit = next(
            (i for i, a in enumerate(ctx.atoms) if a == image), None
        )
        assert hit is not None, "elementary ribbon must permute generators"
        mapping[s] = hit
    target = frozenset(mapping.values())
    moved = frozenset(mapping[s] for s in (x & x_t)) if t not in x else x_t & x
    return Ribbon(d, x, target, moved)


def ribbon_delta_form(
    ctx: GarsideContext, ribbon: Ribbon | ArtinElement, subset
) -> tuple[int, int, int, int]:
    """Exponents (a, b, c, d) with ribbon = Delta_{X_1}^a Delta_{X_2}^b
    Delta_{X_3}^c Delta_Gamma^d, for a co-rank-1 subset X.

    Components are taken in sorted order and missing components keep
    exponent 0.  The product equality is verified on the word problem.
    """
    x = frozenset(subset)
    everything = frozenset(ctx.graph.vertices)
    if len(everything - x) != 1:
        raise NotCorankOne(f"{sorted(x)} must miss exactly one generator")
    if isinstance(ribbon, Ribbon):
        if ribbon.source != x or ribbon.target != x:
            raise NotAnXRibbonX("composition must start and end at the subset")
        element = ribbon.element
    else:
        element = ribbon
    comps = ctx.graph.components(x)
    if len(comps) > 3:
        raise NotAnXRibbonX("a co-rank-1 subset has at most three components")
    try:
        d, residue = _scan_exponent(ctx, element, ctx.delta, x)
        exps = []
        remaining = list(comps)
        for comp in comps:
            remaining.remove(comp)
            scope = frozenset().union(frozenset(), *remaining)
            e, residue = _scan_exponent(ctx, residue, ctx.delta_of(comp), scope)
            exps.append(e)
    except Exception as err:
        raise NotAnXRibbonX(f"not a product of component Garside powers: {err}") from err
    if not residue.is_identity:
        raise NotAnXRibbonX("nontrivial residue after peeling all factors")
    exps += [0] * (3 - len(exps))
    a, b, c = exps
    rebuilt = (
        ctx.delta_of(comps[0]) ** a
        * (ctx.delta_of(comps[1]) ** b if len(comps) > 1 else ctx.identity)
        * (ctx.delta_of(comps[2]) ** c if len(comps) > 2 else ctx.identity)
        * ctx.delta**d
    )
    assert rebuilt == element, "decomposition must reproduce the ribbon"
    return a, b, c, d
