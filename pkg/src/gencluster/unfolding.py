"""Block-constant unfolding of a divisor-weighted exchange matrix.

A rank-``N`` seed with divisors ``d`` and ``M`` slack columns unfolds to
an ordinary (all-divisors-one) exchange matrix with ``T = d_1 + ... +
d_N`` mutable directions and ``T + ... `` frozen columns, laid out as::

    [ cluster groups | F | T^1 S^1 | T^2 S^2 | ... | T^N S^N ]

* cluster block ``(i, j)``: the constant ``B_ij / d_i`` repeated on a
  ``d_i x d_j`` block (zero on the diagonal blocks);
* ``F`` column ``l``: the constant ``(D / d_i) * B_{i, N+l}`` down group
  ``i``'s rows, where ``D`` is the product of the divisors;
* ``T^i`` / ``S^i``: identity and minus-identity blocks on the diagonal
  group, zero elsewhere.

Mutating a whole group (each member once, in any order — the diagonal
cluster blocks vanish, so members do not interact) preserves three
structural facts that the checkers in this module verify:

* :func:`hadamard_check` — cluster and ``F`` blocks stay constant,
  with constants read off the correspondingly mutated weighted matrix;
* :func:`double_constant_check` — each ``T``/``S`` block pair sums to a
  constant block, with the diagonal pair constant-plus-(+/-)identity;
* :func:`unfolding_conditions_check` — column sums of cluster blocks
  reproduce the weighted matrix, and positive entries force
  non-negative blocks.

:func:`group_mutate` additionally cross-checks the sequential result
against the closed block-product formula for a whole-group mutation.
"""

from dataclasses import dataclass

from .errors import IndexOutOfRange, StructureViolation, ValidationError
from .matrix_mutation import (
    DivisorVector,
    ExtendedExchangeMatrix,
    check_compatible,
    mutate,
)


@dataclass(frozen=True)
class FoldedMatrix:
    """An exchange matrix with group-block metadata.

    ``matrix`` has ``total = sum(group_sizes)`` mutable columns followed
    by ``m_original`` F-columns and then interleaved ``T^i``/``S^i``
    column groups.  Block accessors return index ranges into the matrix,
    so no data is copied.
    """

    matrix: ExtendedExchangeMatrix
    group_sizes: tuple
    m_original: int

    def __post_init__(self):
        total = sum(self.group_sizes)
        if self.matrix.n != total:
            raise ValidationError("matrix rank does not match the group sizes")
        if self.matrix.m != self.m_original + 2 * total:
            raise ValidationError("matrix width does not match the group layout")

    @property
    def n_groups(self):
        return len(self.group_sizes)

    @property
    def total(self):
        return sum(self.group_sizes)

    @property
    def rows(self):
        return self.matrix.rows

    def group_range(self, i):
        """Row (and cluster-column) index range of group ``i``."""
        if not 0 <= i < self.n_groups:
            raise IndexOutOfRange(f"no group {i}")
        start = sum(self.group_sizes[:i])
        return range(start, start + self.group_sizes[i])

    def f_column(self, l):
        if not 0 <= l < self.m_original:
            raise IndexOutOfRange(f"no F column {l}")
        return self.total + l

    def t_range(self, i):
        start = self.total + self.m_original + 2 * sum(self.group_sizes[:i])
        return range(start, start + self.group_sizes[i])

    def s_range(self, i):
        start = (
            self.total
            + self.m_original
            + 2 * sum(self.group_sizes[:i])
            + self.group_sizes[i]
        )
        return range(start, start + self.group_sizes[i])

    def column_groups(self):
        """All column groups as (kind, index, range) triples."""
        out = []
        for j in range(self.n_groups):
            out.append(("cluster", j, self.group_range(j)))
        for l in range(self.m_original):
            c = self.f_column(l)
            out.append(("f", l, range(c, c + 1)))
        for j in range(self.n_groups):
            out.append(("t", j, self.t_range(j)))
            out.append(("s", j, self.s_range(j)))
        return out

    def block(self, rows, cols):
        """The sub-matrix over the given row and column ranges (copied)."""
        return tuple(
            tuple(self.matrix.rows[r][c] for c in cols) for r in rows
        )


def build(seed_or_matrix, divisors=None):
    """Unfold a seed (or a matrix-with-divisors pair)."""
    if divisors is None:
        matrix = seed_or_matrix.matrix
        divisors = seed_or_matrix.divisors
    else:
        matrix = seed_or_matrix
        if not isinstance(divisors, DivisorVector):
            divisors = DivisorVector(tuple(divisors))
    check_compatible(matrix, divisors)
    n, m = matrix.n, matrix.m
    sizes = tuple(divisors.entries)
    total = sum(sizes)
    product = divisors.product
    width = 3 * total + m
    rows = []
    for i in range(n):
        base = []
        for j in range(n):
            value = matrix.rows[i][j] // divisors[i]
            base.extend([value] * sizes[j])
        for l in range(m):
            base.append((product // divisors[i]) * matrix.rows[i][n + l])
        for _ in range(2 * total):
            base.append(0)
        for c in range(sizes[i]):
            row = list(base)
            t_start = total + m + 2 * sum(sizes[:i])
            row[t_start + c] = 1
            row[t_start + sizes[i] + c] = -1
            rows.append(tuple(row))
    folded = FoldedMatrix(
        matrix=ExtendedExchangeMatrix(total, width - total, tuple(rows)),
        group_sizes=sizes,
        m_original=m,
    )
    return folded


def _block_sign(block):
    """Common sign of a block's entries; StructureViolation when mixed."""
    sign = 0
    for row in block:
        for e in row:
            if e > 0:
                if sign < 0:
                    raise StructureViolation("sign-incoherent block")
                sign = 1
            elif e < 0:
                if sign > 0:
                    raise StructureViolation("sign-incoherent block")
                sign = -1
    return sign


def _matmul(a, b):
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in zip(*b)) for row in a
    )


def group_mutate(fm, k):
    """Mutate every member of group ``k`` once (the order is immaterial).

    The sequential result is cross-checked against the closed formula
    for whole-group mutation: blocks in row or column group ``k`` are
    negated, and every other block ``(Y, Z)`` gains
    ``(sgn(B[Y,k]) + sgn(B[k,Z])) / 2 * B[Y,k] @ B[k,Z]``.
    A disagreement or a sign-incoherent block raises
    :class:`~gencluster.errors.StructureViolation`.
    """
    if not 0 <= k < fm.n_groups:
        raise IndexOutOfRange(f"no group {k}")
    members = list(fm.group_range(k))
    for a in members:
        for b in members:
            if fm.matrix.rows[a][b] != 0:
                raise StructureViolation(
                    f"group {k} members interact at ({a},{b}); group mutation "
                    "is not well-defined"
                )
    out = fm.matrix
    for c in members:
        out = mutate(out, c)
    result = FoldedMatrix(matrix=out, group_sizes=fm.group_sizes, m_original=fm.m_original)

    # Cross-check with the closed block formula.
    col_groups = fm.column_groups()
    k_cols = fm.group_range(k)
    for i in range(fm.n_groups):
        rows_i = fm.group_range(i)
        left = fm.block(rows_i, k_cols)
        for kind, idx, cols in col_groups:
            expected_block = fm.block(rows_i, cols)
            got = result.block(rows_i, cols)
            if i == k or (kind == "cluster" and idx == k):
                expected = tuple(tuple(-e for e in row) for row in expected_block)
            else:
                right = fm.block(k_cols, cols)
                scale = (_block_sign(left) + _block_sign(right)) // 2
                if scale:
                    prod = _matmul(left, right)
                    expected = tuple(
                        tuple(e + scale * p for e, p in zip(row, prow))
                        for row, prow in zip(expected_block, prod)
                    )
                else:
                    expected = expected_block
            if got != expected:
                raise StructureViolation(
                    f"sequential group mutation disagrees with the block "
                    f"formula on block ({i}, {kind}{idx})"
                )
    return result


def group_mutate_sequence(fm, sequence):
    out = fm
    for k in sequence:
        out = group_mutate(out, k)
    return out


@dataclass(frozen=True)
class HadamardReport:
    """Outcome of :func:`hadamard_check`."""

    ok: bool
    failures: tuple


def hadamard_check(fm, matrix, divisors):
    """Check block-constancy against a weighted reference matrix.

    Cluster block ``(i, j)`` must be the constant ``B_ij / d_i``; the
    ``F`` block ``(i, l)`` must be the constant ``(D / d_i) * B_{i,N+l}``.
    ``matrix`` is the reference at the same mutation depth (group
    mutations of the unfolding mirror plain mutations of the reference).
    Returns a report whose failures name the first offending block and
    entry.
    """
    if not isinstance(divisors, DivisorVector):
        divisors = DivisorVector(tuple(divisors))
    failures = []
    n = matrix.n
    product = divisors.product
    for i in range(n):
        rows_i = fm.group_range(i)
        for j in range(n):
            value, rem = divmod(matrix.rows[i][j], divisors[i])
            if rem:
                failures.append(
                    ("cluster", i, j, "reference entry not divisible by d_i")
                )
                continue
            block = fm.block(rows_i, fm.group_range(j))
            bad = _first_nonconstant(block, value)
            if bad is not None:
                failures.append(("cluster", i, j, bad))
        for l in range(matrix.m):
            value = (product // divisors[i]) * matrix.rows[i][n + l]
            c = fm.f_column(l)
            block = fm.block(rows_i, range(c, c + 1))
            bad = _first_nonconstant(block, value)
            if bad is not None:
                failures.append(("f", i, l, bad))
    return HadamardReport(ok=not failures, failures=tuple(failures))


def _first_nonconstant(block, value):
    for r, row in enumerate(block):
        for c, e in enumerate(row):
            if e != value:
                return f"entry ({r},{c}) = {e}, expected {value}"
    return None


@dataclass(frozen=True)
class DoubleConstantWitness:
    """Constants extracted from the ``T``/``S`` block pairs.

    For each group pair ``(i, j)``: ``T^{ij} + S^{ij} = a[i,j] * ones``;
    off the diagonal ``T^{ij} = c[i,j] * ones``; on the diagonal
    ``T^{ii} = c[i,i] * ones + alpha[i] * Id`` with ``alpha[i]`` in
    ``{+1, -1}``.
    """

    a: dict
    c: dict
    alpha: dict


def double_constant_check(fm):
    """Extract the double-constant witness, or raise StructureViolation."""
    a, c, alpha = {}, {}, {}
    for i in range(fm.n_groups):
        rows_i = fm.group_range(i)
        for j in range(fm.n_groups):
            t_block = fm.block(rows_i, fm.t_range(j))
            s_block = fm.block(rows_i, fm.s_range(j))
            total = [
                [t + s for t, s in zip(t_row, s_row)]
                for t_row, s_row in zip(t_block, s_block)
            ]
            a_val = total[0][0]
            if any(e != a_val for row in total for e in row):
                raise StructureViolation(
                    f"T+S block ({i},{j}) is not constant: {total}"
                )
            a[(i, j)] = a_val
            if i != j:
                c_val = t_block[0][0]
                if any(e != c_val for row in t_block for e in row):
                    raise StructureViolation(
                        f"off-diagonal T block ({i},{j}) is not constant"
                    )
                c[(i, j)] = c_val
            else:
                size = fm.group_sizes[i]
                if size == 1:
                    # A 1 x 1 diagonal block splits as c + alpha in many
                    # ways; fix alpha = +1, c = entry - 1 by convention.
                    alpha[i] = 1
                    c[(i, i)] = t_block[0][0] - 1
                    continue
                off = None
                for r in range(size):
                    for s in range(size):
                        if r != s:
                            if off is None:
                                off = t_block[r][s]
                            elif t_block[r][s] != off:
                                raise StructureViolation(
                                    f"diagonal T block ({i},{i}) off-diagonal "
                                    "entries are not constant"
                                )
                diag = t_block[0][0]
                if any(t_block[r][r] != diag for r in range(size)):
                    raise StructureViolation(
                        f"diagonal T block ({i},{i}) diagonal entries differ"
                    )
                alpha_i = diag - off
                if alpha_i not in (1, -1):
                    raise StructureViolation(
                        f"diagonal T block ({i},{i}) identity part is "
                        f"{alpha_i}, expected +1 or -1"
                    )
                alpha[i] = alpha_i
                c[(i, i)] = off
    return DoubleConstantWitness(a=a, c=c, alpha=alpha)


@dataclass(frozen=True)
class UnfoldingReport:
    """Outcome of :func:`unfolding_conditions_check`."""

    ok: bool
    failures: tuple


def unfolding_conditions_check(fm, matrix, divisors):
    """Column sums and sign coherence of the cluster blocks.

    For each cluster block ``(i, j)`` against the reference entry
    ``B_ij``: every column of the block sums to ``B_ij``, and when
    ``B_ij > 0`` every entry of the block is non-negative.
    """
    if not isinstance(divisors, DivisorVector):
        divisors = DivisorVector(tuple(divisors))
    failures = []
    n = matrix.n
    for i in range(n):
        rows_i = fm.group_range(i)
        for j in range(n):
            ref = matrix.rows[i][j]
            block = fm.block(rows_i, fm.group_range(j))
            for col in range(len(block[0])):
                total = sum(block[r][col] for r in range(len(block)))
                if total != ref:
                    failures.append(
                        ("column-sum", i, j, f"column {col} sums to {total}, "
                         f"expected {ref}")
                    )
                    break
            if ref > 0 and any(e < 0 for row in block for e in row):
                failures.append(("sign", i, j, "negative entry under positive reference"))
    return UnfoldingReport(ok=not failures, failures=tuple(failures))
