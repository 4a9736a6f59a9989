"""Adjoining roots of frozen variables to remove floors from exchange data.

``adjoin_root(seed, j, n)`` replaces the frozen variable ``f_j`` by a
fresh symbol ``g`` with ``f_j = g^n``: the slack column of ``j`` is
multiplied by ``n``, cluster entries are transported by the substitution
``f_j -> g^n``, and every string entry picks up a correction power of
``g`` — the defect ``n*floor(r*b/d_k) - floor(n*r*b/d_k)`` (with ``b``
the pre-adjunction scaled entry of column ``j`` in row ``k``) that makes
the transported exchange relations match term by term.  The
:func:`transport_check` verifier asserts exactly that, along any
mutation sequence.

``tau_tilde`` composes one adjunction per frozen column, all with the
same multiplicity (the product of the divisors by default, their least
common multiple optionally).  The result is *floor-free*: every scaled
entry of a frozen column is divisible by the row divisor, so each
exchange polynomial becomes homogeneous in the sense checked by
:func:`homogeneity_check`: it collapses to a polynomial in a single
carrier monomial (the tau-variable) with monomial coefficients — the
generalized coefficient table returned by :func:`rho`.
"""

from dataclasses import dataclass
from math import lcm

from .errors import HomogeneityFailure, ValidationError
from .gca_seed import (
    CoefficientStrings,
    ExchangeContext,
    GeneralizedSeed,
    exchange_polynomial,
    mutate_seed_sequence,
    special_monomial,
)
from .laurent_kernel import (
    LaurentPolynomial,
    Monomial,
    ROLE_FROZEN,
    poly_add,
    poly_map_variables,
    poly_mul,
    poly_mul_monomial,
    poly_pow,
)
from .matrix_mutation import ExtendedExchangeMatrix


@dataclass(frozen=True)
class AdjoinedSeed:
    """A seed together with the record of root adjunctions that built it.

    ``base`` is the original seed, ``seed`` the current one; ``steps``
    lists ``(old_name, multiplicity, root_name)`` in application order.
    """

    base: GeneralizedSeed
    seed: GeneralizedSeed
    steps: tuple

    @property
    def table(self):
        return self.seed.table

    @property
    def divisors(self):
        return self.seed.divisors

    def root_map(self):
        """Images of the base frozen variables in the current table.

        Returns ``{base_frozen_name: Monomial}``; names never adjoined
        map to themselves.  Adjunctions rename in place, so positions
        are stable and each step scales one exponent coordinate.
        """
        width = len(self.base.table)
        images = {}
        for pos in self.base.table.frozen_indices:
            exps = [0] * width
            exps[pos] = 1
            images[self.base.table.names[pos]] = exps
        positions = {name: i for i, name in enumerate(self.base.table.names)}
        for old, n, root in self.steps:
            pos = positions.pop(old)
            positions[root] = pos
            for exps in images.values():
                exps[pos] *= n
        return {
            name: Monomial(self.seed.table, tuple(exps))
            for name, exps in images.items()
        }

    def transport(self, p):
        """Image of a polynomial over the base table in the current table."""
        return poly_map_variables(p, self.root_map(), self.seed.table)


def _fresh_root_name(name, taken):
    candidate = name.upper()
    while candidate == name or candidate in taken:
        candidate += "_R"
    return candidate


def adjoin_root(seed, j, n, root_name=None):
    """Adjoin an ``n``-th root of the frozen variable named ``j``.

    ``seed`` may be a :class:`~gencluster.gca_seed.GeneralizedSeed` or an
    :class:`AdjoinedSeed` (adjunctions compose).  Returns an
    :class:`AdjoinedSeed`.
    """
    if isinstance(seed, AdjoinedSeed):
        base, current, steps = seed.base, seed.seed, seed.steps
    else:
        base, current, steps = seed, seed, ()
    n = int(n)
    if n < 1:
        raise ValidationError("root multiplicity must be a positive integer")
    table = current.table
    pos = table.index(j)
    if table.roles[pos] != ROLE_FROZEN:
        raise ValidationError(f"{j!r} is not a frozen variable")
    if root_name is None:
        root_name = _fresh_root_name(j, set(table.names))
    elif root_name in table.names:
        raise ValidationError(f"root name {root_name!r} is already taken")
    new_table = table.renamed(j, root_name)
    root_power = new_table.monomial({root_name: n})

    bhat = current.scaled_matrix()
    d = current.divisors
    new_rows = tuple(
        tuple(e * n if col == pos else e for col, e in enumerate(row))
        for row in current.matrix.rows
    )
    new_matrix = ExtendedExchangeMatrix(current.matrix.n, current.matrix.m, new_rows)

    def transport(p):
        return poly_map_variables(p, {j: root_power}, new_table)

    new_cluster = tuple(transport(entry) for entry in current.cluster)

    new_string_rows = []
    for k in range(current.rank):
        d_k = d[k]
        b = bhat.rows[k][pos]
        row = []
        for r, p in enumerate(current.strings.row(k)):
            defect = n * ((r * b) // d_k) - (n * r * b) // d_k
            image = transport(p.as_polynomial()).as_monomial()
            row.append(image.times(new_table.monomial({root_name: defect})))
        new_string_rows.append(tuple(row))

    new_seed = GeneralizedSeed(
        table=new_table,
        cluster=new_cluster,
        matrix=new_matrix,
        divisors=current.divisors,
        strings=CoefficientStrings(tuple(new_string_rows)),
        provenance=current.provenance,
    )
    return AdjoinedSeed(base=base, seed=new_seed, steps=steps + ((j, n, root_name),))


def tau_tilde(seed, mode="total"):
    """Adjoin one root per frozen column, all with the same multiplicity.

    ``mode="total"`` uses the product of the divisors, ``mode="lcm"``
    their least common multiple (the smallest multiplicity that removes
    every floor).  Columns are processed in table order; the result does
    not depend on the order, which the tests assert.
    """
    if isinstance(seed, AdjoinedSeed):
        raise ValidationError("tau_tilde starts from an unadjoined seed")
    if mode == "total":
        n = seed.divisors.product
    elif mode == "lcm":
        n = lcm(*seed.divisors.entries)
    else:
        raise ValidationError(f"unknown mode {mode!r} (use 'total' or 'lcm')")
    out = None
    for pos in seed.table.frozen_indices:
        name = seed.table.names[pos]
        out = adjoin_root(out if out is not None else seed, name, n)
    if out is None:
        out = AdjoinedSeed(base=seed, seed=seed, steps=())
    return out


@dataclass(frozen=True)
class TransportReport:
    """Outcome of :func:`transport_check`."""

    ok: bool
    failures: tuple


def transport_check(base, adjoined, sequence=()):
    """Verify that adjoining commutes with mutation along ``sequence``.

    Both ``base`` and ``adjoined.seed`` are mutated along the sequence;
    then, with ``phi`` the substitution sending each base frozen
    variable to its root power, three families of identities are
    checked at the final seeds:

    (i)   ``phi`` of each cluster-monomial product ``u>``/``u<`` equals
          its counterpart;
    (ii)  ``phi(p_{k,r} * v>[r] * v<[d-r])`` equals the counterpart
          coefficient monomial, for every ``k`` and ``r``;
    (iii) ``phi`` of each cluster entry equals the counterpart entry.

    Returns a :class:`TransportReport` listing failures as
    ``(condition, k, r)`` triples (``r`` is ``None`` outside (ii)).
    """
    if adjoined.base != base:
        raise ValidationError("adjoined seed was not built from this base")
    t = mutate_seed_sequence(base, tuple(sequence))
    t_bar = mutate_seed_sequence(adjoined.seed, tuple(sequence))
    mapping = adjoined.root_map()
    target = adjoined.seed.table

    def phi(p):
        return poly_map_variables(p, mapping, target)

    failures = []
    for k in range(base.rank):
        ctx = ExchangeContext.build(t, k)
        ctx_bar = ExchangeContext.build(t_bar, k)
        for label, mono, mono_bar in (
            ("u>", ctx.u_gt, ctx_bar.u_gt),
            ("u<", ctx.u_lt, ctx_bar.u_lt),
        ):
            lhs = phi(_evaluate_cluster_monomial(t, mono))
            rhs = _evaluate_cluster_monomial(t_bar, mono_bar)
            if lhs != rhs:
                failures.append((f"(i) {label}", k, None))
        for r in range(ctx.degree + 1):
            lhs = phi(ctx.coefficient(r).as_polynomial())
            rhs = ctx_bar.coefficient(r).as_polynomial()
            if lhs != rhs:
                failures.append(("(ii)", k, r))
        if phi(t.cluster[k]) != t_bar.cluster[k]:
            failures.append(("(iii)", k, None))
    return TransportReport(ok=not failures, failures=tuple(failures))


def _evaluate_cluster_monomial(seed, mono):
    """Expand a cluster-slot monomial at the seed's current cluster."""
    out = LaurentPolynomial.one(seed.table)
    for i in seed.table.cluster_indices:
        e = mono.exponents[i]
        if e:
            out = poly_mul(out, poly_pow(seed.cluster[i], e))
    return out


@dataclass(frozen=True)
class GeneralizedCoefficientTable:
    """Monomial coefficients of the homogenized exchange polynomials.

    Row ``k`` lists ``rho_{k,0}, ..., rho_{k,d_k}`` with both ends equal
    to 1.
    """

    rows: tuple

    def entry(self, k, r):
        return self.rows[k][r]

    def validate(self):
        for k, row in enumerate(self.rows):
            if not row[0].is_one() or not row[-1].is_one():
                raise HomogeneityFailure(
                    f"coefficient table row {k} does not end at 1", row=k
                )


def rho(seed):
    """The generalized coefficient table of a seed.

    ``rho_{k,r} = p_{k,r} * v>[r] * v<[d-r] * v>[1]^(-r) * v<[1]^(r-d)``.
    On floor-free seeds the box corrections cancel and ``rho`` is the
    string table itself; on other seeds the end entries fail to be 1,
    which raises :class:`~gencluster.errors.HomogeneityFailure`.
    """
    if isinstance(seed, AdjoinedSeed):
        seed = seed.seed
    rows = []
    for k in range(seed.rank):
        ctx = ExchangeContext.build(seed, k)
        d = ctx.degree
        row = []
        for r in range(d + 1):
            entry = (
                ctx.strings[r]
                .times(ctx.v_gt[r])
                .times(ctx.v_lt[d - r])
                .times(ctx.v_gt[1].power(-r))
                .times(ctx.v_lt[1].power(r - d))
            )
            row.append(entry)
        rows.append(tuple(row))
    table = GeneralizedCoefficientTable(tuple(rows))
    table.validate()
    return table


def is_floor_free(seed, k):
    """Whether every frozen entry of scaled row ``k`` is divisible by ``d_k``."""
    if isinstance(seed, AdjoinedSeed):
        seed = seed.seed
    bhat = seed.scaled_matrix()
    d_k = seed.divisors[k]
    n = seed.rank
    return all(bhat.rows[k][j] % d_k == 0 for j in range(n, n + seed.matrix.m))


@dataclass(frozen=True)
class HomogeneityReport:
    """Successful homogeneity check for one direction."""

    k: int
    degree: int
    tau: Monomial
    coefficients: tuple


def homogeneity_check(seed, k):
    """Check that ``theta_k`` is a polynomial in one carrier monomial.

    Requires every frozen entry of scaled row ``k`` to be divisible by
    ``d_k`` (otherwise raises
    :class:`~gencluster.errors.HomogeneityFailure` naming the offending
    frozen column and the first inhomogeneous term), then verifies the
    reconstruction::

        theta_k = sum_r rho_{k,r} * (u> * v>[1])^r * (u< * v<[1])^(d-r)

    against :func:`~gencluster.gca_seed.exchange_polynomial`.
    """
    if isinstance(seed, AdjoinedSeed):
        seed = seed.seed
    seed.check_direction(k)
    ctx = ExchangeContext.build(seed, k)
    d = ctx.degree
    bhat = seed.scaled_matrix()
    n = seed.rank
    for j in range(n, n + seed.matrix.m):
        b = bhat.rows[k][j]
        if b % d:
            name = seed.table.names[j]
            # The r = 1 coefficient carries a genuine floor defect.
            term = ctx.coefficient(1)
            raise HomogeneityFailure(
                f"scaled entry {b} of frozen column {name!r} is not divisible "
                f"by {d}; coefficient {term} cannot be balanced",
                row=k,
                column=name,
                term=str(term),
            )
    coefficients = []
    for r in range(d + 1):
        entry = (
            ctx.strings[r]
            .times(ctx.v_gt[r])
            .times(ctx.v_lt[d - r])
            .times(ctx.v_gt[1].power(-r))
            .times(ctx.v_lt[1].power(r - d))
        )
        coefficients.append(entry)
    gt_base = _evaluate_cluster_monomial(seed, ctx.u_gt)
    gt_base = poly_mul_monomial(gt_base, ctx.v_gt[1])
    lt_base = _evaluate_cluster_monomial(seed, ctx.u_lt)
    lt_base = poly_mul_monomial(lt_base, ctx.v_lt[1])
    rebuilt = LaurentPolynomial.zero(seed.table)
    for r in range(d + 1):
        term = poly_mul(poly_pow(gt_base, r), poly_pow(lt_base, d - r))
        rebuilt = poly_add(rebuilt, poly_mul_monomial(term, coefficients[r]))
    if rebuilt != exchange_polynomial(seed, k):
        raise HomogeneityFailure(
            f"homogeneous reconstruction of direction {k} disagrees with the "
            "exchange polynomial",
            row=k,
        )
    return HomogeneityReport(
        k=k,
        degree=d,
        tau=tau_variable(seed, k),
        coefficients=tuple(coefficients),
    )


def tau_variable(seed, k):
    """The carrier monomial of direction ``k``.

    On a floor-free direction this is ``u> * v>[1] / (u< * v<[1])``; in
    general the stable parts cannot be split evenly across the degree
    and the carrier is the bare cluster ratio ``u> / u<``.  Cluster
    exponents refer to the current cluster entries.
    """
    if isinstance(seed, AdjoinedSeed):
        seed = seed.seed
    seed.check_direction(k)
    ctx = ExchangeContext.build(seed, k)
    if is_floor_free(seed, k):
        top = ctx.u_gt.times(ctx.v_gt[1])
        bottom = ctx.u_lt.times(ctx.v_lt[1])
    else:
        top = ctx.u_gt
        bottom = ctx.u_lt
    return top.over(bottom)
