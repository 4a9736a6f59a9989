"""Generalized seeds: higher-order exchange relations and seed mutation.

A generalized seed holds a cluster of Laurent polynomials, an extended
exchange matrix ``B`` with a compatible divisor vector ``d`` (each
``d_i`` divides the principal entries of row ``i``), and coefficient
strings: for every mutable direction ``i`` a list of ``d_i + 1`` frozen
Laurent monomials ``p_{i,0}, ..., p_{i,d_i}`` with both ends equal to 1.

The exchange polynomial in direction ``k`` has degree ``d_k``::

    theta_k = sum_{r=0}^{d_k} p_{k,r} * u>^r * v>[r] * u<^(d_k - r) * v<[d_k - r]

where the cluster monomials ``u>``, ``u<`` and the frozen boxes
``v>[r]``, ``v<[r]`` are read off the divisor-scaled matrix row
``bhat_k`` (positive entries feed the ``>`` side, negative entries the
``<`` side, zero entries appear on neither side)::

    u>    = prod_{bhat_ki > 0} x_i^bhat_ki        (cluster columns)
    u<    = prod_{bhat_ki < 0} x_i^(-bhat_ki)
    v>[r] = prod_{bhat_kj > 0} f_j^floor(r*bhat_kj / d_k)   (frozen columns)
    v<[r] = prod_{bhat_kj < 0} f_j^floor(r*|bhat_kj| / d_k)

Mutation in direction ``k`` replaces the cluster entry by the exact
quotient ``theta_k / x_k`` (evaluated at the current cluster), mutates
the matrix by the standard rule, and reverses string row ``k``.

The module also provides the degree-``d_k``-root apparatus: special
monomials, balancing ``q`` monomials, and a checker for the perfect-power
form of the exchange polynomial.
"""

from dataclasses import dataclass, field

from .errors import IndexOutOfRange, ValidationError
from .laurent_kernel import (
    LaurentPolynomial,
    Monomial,
    ROLE_CLUSTER,
    ROLE_FROZEN,
    VariableTable,
    poly_add,
    poly_exact_div,
    poly_mul,
    poly_mul_monomial,
    poly_pow,
)
from .matrix_mutation import (
    DivisorVector,
    ExtendedExchangeMatrix,
    check_compatible,
    modify,
    mutate,
)


@dataclass(frozen=True)
class CoefficientStrings:
    """Per-direction tuples of frozen monomials, ends pinned to 1."""

    rows: tuple

    def row(self, k):
        return self.rows[k]

    def entry(self, k, r):
        return self.rows[k][r]

    def validate(self, table, divisors):
        if len(self.rows) != len(divisors):
            raise ValidationError("string row count does not match divisors")
        for i, row in enumerate(self.rows):
            if len(row) != divisors[i] + 1:
                raise ValidationError(
                    f"string row {i} must have {divisors[i] + 1} entries"
                )
            for r, mono in enumerate(row):
                if mono.table != table:
                    raise ValidationError("string entry over the wrong table")
                for pos, e in enumerate(mono.exponents):
                    if e and table.roles[pos] == ROLE_CLUSTER:
                        raise ValidationError(
                            f"string entry ({i},{r}) touches a cluster variable"
                        )
            if not row[0].is_one() or not row[-1].is_one():
                raise ValidationError(f"string row {i} must start and end at 1")

    def reversed_row(self, k):
        return tuple(reversed(self.rows[k]))

    @staticmethod
    def trivial(table, divisors):
        one = table.one()
        return CoefficientStrings(tuple((one,) * (d + 1) for d in divisors.entries))


@dataclass(frozen=True)
class GeneralizedSeed:
    """Cluster, exchange matrix, divisors, and coefficient strings.

    ``provenance`` records the mutation directions applied since the
    seed was built; it is ignored by equality so that round-trip
    identities compare cleanly.
    """

    table: VariableTable
    cluster: tuple
    matrix: ExtendedExchangeMatrix
    divisors: DivisorVector
    strings: CoefficientStrings
    provenance: tuple = field(default=(), compare=False)

    def __post_init__(self):
        n, m = self.matrix.n, self.matrix.m
        if len(self.table.cluster_indices) != n:
            raise ValidationError("table cluster count does not match the matrix")
        if len(self.table.frozen_indices) + len(
            self.table.indices_of_role("t-aux")
        ) + len(self.table.indices_of_role("s-aux")) != m:
            raise ValidationError("table frozen count does not match the matrix")
        if len(self.cluster) != n:
            raise ValidationError("cluster size does not match the matrix")
        for entry in self.cluster:
            if entry.table != self.table:
                raise ValidationError("cluster entry over the wrong table")
        if len(self.divisors) != n:
            raise ValidationError("divisor count does not match the matrix")
        check_compatible(self.matrix, self.divisors)
        self.strings.validate(self.table, self.divisors)

    @property
    def rank(self):
        return self.matrix.n

    def scaled_matrix(self):
        """The divisor-scaled companion matrix ``bhat``."""
        return modify(self.matrix, self.divisors)

    def cluster_variable(self, k):
        return self.cluster[k]

    def check_direction(self, k):
        if not isinstance(k, int) or not 0 <= k < self.rank:
            raise IndexOutOfRange(
                f"direction {k!r} is not mutable (0..{self.rank - 1})"
            )


def initial_seed(matrix, divisors, strings=None, cluster_names=None, frozen_names=None):
    """Seed at depth zero: the cluster is the table's own variables."""
    if not isinstance(divisors, DivisorVector):
        divisors = DivisorVector(tuple(divisors))
    n, m = matrix.n, matrix.m
    cluster_names = (
        tuple(cluster_names)
        if cluster_names is not None
        else tuple(f"x{i + 1}" for i in range(n))
    )
    frozen_names = (
        tuple(frozen_names)
        if frozen_names is not None
        else tuple(f"f{j + 1}" for j in range(m))
    )
    table = VariableTable.make(cluster=cluster_names, frozen=frozen_names)
    if strings is None:
        strings = CoefficientStrings.trivial(table, divisors)
    cluster = tuple(table.variable(name) for name in cluster_names)
    return GeneralizedSeed(table, cluster, matrix, divisors, strings)


def frozen_box(seed, k, r):
    """The pair ``(v>[r], v<[r])`` of frozen monomials for direction ``k``."""
    seed.check_direction(k)
    d_k = seed.divisors[k]
    if not 0 <= r <= d_k:
        raise IndexOutOfRange(f"box index {r} outside 0..{d_k}")
    bhat = seed.scaled_matrix()
    n = seed.rank
    gt = {}
    lt = {}
    for j in range(n, n + seed.matrix.m):
        e = bhat.rows[k][j]
        name = seed.table.names[j]
        if e > 0:
            gt[name] = (r * e) // d_k
        elif e < 0:
            lt[name] = (r * (-e)) // d_k
    return seed.table.monomial(gt), seed.table.monomial(lt)


@dataclass(frozen=True)
class ExchangeContext:
    """All ingredients of one exchange relation, precomputed.

    ``u_gt``/``u_lt`` are monomials over the seed's table whose cluster
    exponents refer to the *current* cluster entries (slot ``i`` means
    ``seed.cluster[i]``), not to the table symbols; ``v_gt[r]`` and
    ``v_lt[r]`` are honest frozen monomials.  ``strings`` is row ``k``.
    """

    seed: GeneralizedSeed
    k: int
    degree: int
    u_gt: Monomial
    u_lt: Monomial
    v_gt: tuple
    v_lt: tuple
    strings: tuple

    @staticmethod
    def build(seed, k):
        seed.check_direction(k)
        d_k = seed.divisors[k]
        bhat = seed.scaled_matrix()
        n = seed.rank
        gt = {}
        lt = {}
        for i in range(n):
            e = bhat.rows[k][i]
            name = seed.table.names[i]
            if e > 0:
                gt[name] = e
            elif e < 0:
                lt[name] = -e
        boxes = [frozen_box(seed, k, r) for r in range(d_k + 1)]
        return ExchangeContext(
            seed=seed,
            k=k,
            degree=d_k,
            u_gt=seed.table.monomial(gt),
            u_lt=seed.table.monomial(lt),
            v_gt=tuple(b[0] for b in boxes),
            v_lt=tuple(b[1] for b in boxes),
            strings=seed.strings.row(k),
        )

    def coefficient(self, r):
        """The full frozen coefficient ``p_{k,r} * v>[r] * v<[d-r]``."""
        return self.strings[r].times(self.v_gt[r]).times(self.v_lt[self.degree - r])


def _cluster_power(seed, exponents):
    """Product of current cluster entries raised to table-slot exponents."""
    out = LaurentPolynomial.one(seed.table)
    for i in seed.table.cluster_indices:
        e = exponents[i]
        if e:
            out = poly_mul(out, poly_pow(seed.cluster[i], e))
    return out


def exchange_polynomial(seed, k):
    """The exchange polynomial ``theta_k`` evaluated at the current cluster."""
    ctx = ExchangeContext.build(seed, k)
    gt_base = _cluster_power(seed, ctx.u_gt.exponents)
    lt_base = _cluster_power(seed, ctx.u_lt.exponents)
    gt_powers = [LaurentPolynomial.one(seed.table)]
    lt_powers = [LaurentPolynomial.one(seed.table)]
    for _ in range(ctx.degree):
        gt_powers.append(poly_mul(gt_powers[-1], gt_base))
        lt_powers.append(poly_mul(lt_powers[-1], lt_base))
    theta = LaurentPolynomial.zero(seed.table)
    for r in range(ctx.degree + 1):
        term = poly_mul(gt_powers[r], lt_powers[ctx.degree - r])
        term = poly_mul_monomial(term, ctx.coefficient(r))
        theta = poly_add(theta, term)
    return theta


def mutate_seed(seed, k):
    """Seed mutation in direction ``k`` (matrix, cluster, and strings)."""
    seed.check_direction(k)
    theta = exchange_polynomial(seed, k)
    new_cluster = list(seed.cluster)
    new_cluster[k] = poly_exact_div(theta, seed.cluster[k])
    new_rows = list(seed.strings.rows)
    new_rows[k] = seed.strings.reversed_row(k)
    return GeneralizedSeed(
        table=seed.table,
        cluster=tuple(new_cluster),
        matrix=mutate(seed.matrix, k),
        divisors=seed.divisors,
        strings=CoefficientStrings(tuple(new_rows)),
        provenance=seed.provenance + (k,),
    )


def mutate_seed_sequence(seed, sequence):
    out = seed
    for k in sequence:
        out = mutate_seed(out, k)
    return out


def special_monomial(seed, n, j, k, r):
    """Correction monomial of ``f_j`` for an ``n``-fold frozen rescaling.

    With ``b = bhat_kj`` (the signed scaled entry) and ``d = d_k``, the
    exponent is ``n*floor(r*b/d) - floor(n*r*b/d)``: the defect of the
    floor under scaling by ``n``.  It vanishes whenever ``d`` divides
    ``r*b``.
    """
    seed.check_direction(k)
    d_k = seed.divisors[k]
    if not 0 <= r <= d_k:
        raise IndexOutOfRange(f"index {r} outside 0..{d_k}")
    pos = seed.table.index(j)
    if seed.table.roles[pos] != ROLE_FROZEN:
        raise ValidationError(f"{j!r} is not a frozen variable")
    bhat = seed.scaled_matrix()
    b = bhat.rows[k][pos]
    exponent = n * ((r * b) // d_k) - (n * r * b) // d_k
    return seed.table.monomial({j: exponent})


def q_monomial(seed, k, r):
    """Balancing monomial ``q_{k,r}``.

    Defined as ``v>^r * v<^(d-r) / (v>[r] * v<[d-r])^d`` where
    ``v> = v>[d]`` and ``v< = v<[d]``; equal to the product over frozen
    ``j`` of the inverses of the ``d``-fold special monomials, which is
    asserted here.
    """
    ctx = ExchangeContext.build(seed, k)
    d = ctx.degree
    top = ctx.v_gt[d].power(r).times(ctx.v_lt[d].power(d - r))
    bottom = ctx.v_gt[r].times(ctx.v_lt[d - r]).power(d)
    q = top.over(bottom)
    product = seed.table.one()
    for pos in seed.table.frozen_indices:
        name = seed.table.names[pos]
        product = product.times(special_monomial(seed, d, name, k, r).power(-1))
    if q != product:
        raise ValidationError(
            f"balancing monomial mismatch at ({k},{r}): {q} vs {product}"
        )
    return q


@dataclass(frozen=True)
class RootFormulaReport:
    """Outcome of :func:`root_formula_check`."""

    ok: bool
    failures: tuple


def root_formula_check(seed, k):
    """Check the perfect-power (degree-``d_k`` root) form of ``theta_k``.

    For each ``r`` the monomial ``p_{k,r}^d / q_{k,r} * v>^r * v<^(d-r)``
    must be the exact ``d``-th power of ``p_{k,r} * v>[r] * v<[d-r]``,
    and reassembling the extracted roots must reproduce the exchange
    polynomial.  Returns a report listing failing ``(k, r)`` pairs.
    """
    ctx = ExchangeContext.build(seed, k)
    d = ctx.degree
    failures = []
    roots = []
    for r in range(d + 1):
        p_r = ctx.strings[r]
        hat = p_r.power(d).over(q_monomial(seed, k, r))
        target = hat.times(ctx.v_gt[d].power(r)).times(ctx.v_lt[d].power(d - r))
        if any(e % d for e in target.exponents) and d > 1:
            failures.append((k, r, "exponents not divisible by the degree"))
            roots.append(None)
            continue
        root = Monomial(
            seed.table,
            tuple(e // d for e in target.exponents) if d > 1 else target.exponents,
        )
        expected = p_r.times(ctx.v_gt[r]).times(ctx.v_lt[d - r])
        if root != expected:
            failures.append((k, r, f"root {root} differs from {expected}"))
        roots.append(root)
    if not failures:
        gt_base = _cluster_power(seed, ctx.u_gt.exponents)
        lt_base = _cluster_power(seed, ctx.u_lt.exponents)
        theta = LaurentPolynomial.zero(seed.table)
        for r in range(d + 1):
            term = poly_mul(poly_pow(gt_base, r), poly_pow(lt_base, d - r))
            theta = poly_add(theta, poly_mul_monomial(term, roots[r]))
        if theta != exchange_polynomial(seed, k):
            failures.append((k, None, "reassembled polynomial differs"))
    return RootFormulaReport(ok=not failures, failures=tuple(failures))
