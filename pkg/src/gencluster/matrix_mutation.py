"""Exchange matrices, divisor vectors, and the two mutation rules.

An extended exchange matrix has ``n`` mutable rows and ``n + m``
columns: the left ``n`` columns form the principal part (required to be
skew-symmetrizable), the right ``m`` columns are slack (frozen)
directions.

Two mutation rules live here:

* :func:`mutate` — the standard matrix mutation in direction ``k``.
* :func:`mutate_modified` — the divisor-weighted variant in which the
  off-row update is scaled by ``d_k`` in mutable columns and by ``d_i``
  in frozen columns.  It is conjugate to the standard rule on the
  divisor-scaled matrix produced by :func:`modify`, which is asserted by
  the test-suite rather than assumed.

The plain-text matrix format is a header line ``"n m"`` followed by one
line of ``;``-separated rows, each row ``n + m`` integers::

    2 2
    0 8 -3 5 ; -12 0 -2 7
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import (
    IndexOutOfRange,
    InvalidDivisors,
    NotSkewSymmetrizable,
    ParseError,
    ValidationError,
)


def _principal_diagonalizer(rows, n):
    """Componentwise-minimal positive diagonal skew-symmetrizing the principal part.

    Works component by component on the graph whose edges are the
    nonzero principal entries, propagating exact ratios, then scales
    each component to the minimal positive integer vector.  Raises
    :class:`~gencluster.errors.NotSkewSymmetrizable` when no positive
    diagonal works.
    """
    for i in range(n):
        if rows[i][i] != 0:
            raise NotSkewSymmetrizable(f"nonzero diagonal entry at ({i}, {i})")
        for j in range(i + 1, n):
            a, b = rows[i][j], rows[j][i]
            if (a == 0) != (b == 0):
                raise NotSkewSymmetrizable(
                    f"entries ({i},{j}) and ({j},{i}) must vanish together"
                )
            if a * b > 0:
                raise NotSkewSymmetrizable(
                    f"entries ({i},{j}) and ({j},{i}) must have opposite signs"
                )
    values = [None] * n
    for start in range(n):
        if values[start] is not None:
            continue
        values[start] = Fraction(1)
        component = [start]
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if rows[i][j] == 0:
                    continue
                # d_i * b_ij = -d_j * b_ji fixes the ratio d_j / d_i.
                ratio = Fraction(-rows[i][j], rows[j][i])
                if values[j] is None:
                    values[j] = values[i] * ratio
                    component.append(j)
                    queue.append(j)
                elif values[j] != values[i] * ratio:
                    raise NotSkewSymmetrizable(
                        f"inconsistent ratio constraints on direction {j}"
                    )
        scale = lcm(*(v.denominator for v in (values[c] for c in component)))
        ints = [values[c] * scale for c in component]
        shrink = gcd(*(int(v) for v in ints))
        for c, v in zip(component, ints):
            values[c] = Fraction(int(v) // shrink)
    result = tuple(int(v) for v in values)
    for i in range(n):
        for j in range(n):
            if result[i] * rows[i][j] != -result[j] * rows[j][i]:
                raise NotSkewSymmetrizable("no positive diagonal skew-symmetrizes")
    return result


@dataclass(frozen=True)
class ExtendedExchangeMatrix:
    """Integer matrix with ``n`` mutable rows and ``n + m`` columns.

    The principal (left ``n`` x ``n``) part must be skew-symmetrizable;
    this is checked at construction.
    """

    n: int
    m: int
    rows: tuple

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValidationError("matrix dimensions must be non-negative")
        if len(self.rows) != self.n:
            raise ValidationError("row count does not match n")
        for row in self.rows:
            if len(row) != self.n + self.m:
                raise ValidationError("row width does not match n + m")
            if not all(isinstance(e, int) for e in row):
                raise ValidationError("matrix entries must be integers")
        _principal_diagonalizer(self.rows, self.n)

    @staticmethod
    def from_rows(rows, m=None):
        rows = tuple(tuple(int(e) for e in row) for row in rows)
        n = len(rows)
        width = len(rows[0]) if rows else 0
        if m is None:
            m = width - n
        return ExtendedExchangeMatrix(n, m, rows)

    def entry(self, i, j):
        return self.rows[i][j]

    def principal(self):
        """The left ``n`` x ``n`` block as a tuple of row tuples."""
        return tuple(row[: self.n] for row in self.rows)

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def check_direction(self, k):
        if not isinstance(k, int) or not 0 <= k < self.n:
            raise IndexOutOfRange(
                f"direction {k!r} is not a mutable index (0..{self.n - 1})"
            )

    def __str__(self):
        return write_matrix(self)


@dataclass(frozen=True)
class DivisorVector:
    """Positive integer weights, one per mutable direction."""

    entries: tuple

    def __post_init__(self):
        if not all(isinstance(d, int) and d >= 1 for d in self.entries):
            raise InvalidDivisors("divisors must be positive integers")

    @staticmethod
    def of(*entries):
        return DivisorVector(tuple(int(d) for d in entries))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def product(self):
        out = 1
        for d in self.entries:
            out *= d
        return out

    @property
    def total(self):
        return sum(self.entries)


def check_compatible(matrix, divisors):
    """Require ``d_i`` to divide every principal entry of row ``i``."""
    if len(divisors) != matrix.n:
        raise InvalidDivisors("divisor count does not match the matrix")
    for i in range(matrix.n):
        for j in range(matrix.n):
            if matrix.rows[i][j] % divisors[i]:
                raise InvalidDivisors(
                    f"divisor {divisors[i]} does not divide principal entry "
                    f"({i},{j}) = {matrix.rows[i][j]}"
                )


def diagonalizer(matrix):
    """Minimal positive diagonal ``d`` with ``d_i B_ij = -d_j B_ji``.

    Minimality is componentwise: on each connected component of the
    nonzero pattern the returned entries have no common factor.
    """
    return _principal_diagonalizer(matrix.rows, matrix.n)


def modify(matrix, divisors):
    """Divisor-scaled companion matrix: principal rows divided by ``d_i``.

    Slack columns are kept as they are.  The divisor compatibility
    requirement makes the scaled principal part integral.
    """
    if not isinstance(divisors, DivisorVector):
        divisors = DivisorVector(tuple(divisors))
    check_compatible(matrix, divisors)
    rows = tuple(
        tuple(
            e // divisors[i] if j < matrix.n else e
            for j, e in enumerate(row)
        )
        for i, row in enumerate(matrix.rows)
    )
    return ExtendedExchangeMatrix(matrix.n, matrix.m, rows)


def _mutate_rows(rows, n, k, row_scale):
    """Shared mutation kernel; ``row_scale(i, j)`` scales the update term."""
    new_rows = []
    for i, row in enumerate(rows):
        new_row = []
        for j, e in enumerate(row):
            if i == k or j == k:
                new_row.append(-e)
                continue
            b_ik = row[k]
            b_kj = rows[k][j]
            bump = (abs(b_ik) * b_kj + b_ik * abs(b_kj)) // 2
            new_row.append(e + row_scale(i, j) * bump)
        new_rows.append(tuple(new_row))
    return tuple(new_rows)


def mutate(matrix, k):
    """Standard mutation of an extended exchange matrix in direction ``k``."""
    matrix.check_direction(k)
    rows = _mutate_rows(matrix.rows, matrix.n, k, lambda i, j: 1)
    return ExtendedExchangeMatrix(matrix.n, matrix.m, rows)


def mutate_modified(matrix, divisors, k):
    """Divisor-weighted mutation in direction ``k``.

    Off-row updates are scaled by ``d_k`` when the column is mutable and
    by ``d_i`` (the row divisor) when the column is slack.  This rule is
    meant for divisor-scaled matrices (see :func:`modify`) and commutes
    with scaling: ``modify(mutate(B, k), d) == mutate_modified(modify(B,
    d), d, k)``.  No row-divisibility is required of the input.
    """
    matrix.check_direction(k)
    if not isinstance(divisors, DivisorVector):
        divisors = DivisorVector(tuple(divisors))
    if len(divisors) != matrix.n:
        raise InvalidDivisors("divisor count does not match the matrix")
    rows = _mutate_rows(
        matrix.rows,
        matrix.n,
        k,
        lambda i, j: divisors[k] if j < matrix.n else divisors[i],
    )
    return ExtendedExchangeMatrix(matrix.n, matrix.m, rows)


def mutate_sequence(matrix, sequence, divisors=None):
    """Apply mutations left to right; weighted rule when divisors are given."""
    out = matrix
    for k in sequence:
        out = mutate(out, k) if divisors is None else mutate_modified(out, divisors, k)
    return out


def write_matrix(matrix):
    """Canonical text form (header line, then ``;``-separated rows)."""
    rows = " ; ".join(" ".join(str(e) for e in row) for row in matrix.rows)
    return f"{matrix.n} {matrix.m}\n{rows}\n"


def parse_matrix(text):
    """Parse the canonical text form produced by :func:`write_matrix`."""
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines:
        raise ParseError("empty matrix text")
    try:
        header = lines[0].split()
        n, m = int(header[0]), int(header[1])
    except (IndexError, ValueError) as exc:
        raise ParseError("matrix header must be two integers") from exc
    if n == 0:
        return ExtendedExchangeMatrix(0, m, ())
    if len(lines) < 2:
        raise ParseError("missing matrix rows")
    row_texts = " ".join(lines[1:]).split(";")
    if len(row_texts) != n:
        raise ParseError(f"expected {n} rows, got {len(row_texts)}")
    rows = []
    for text_row in row_texts:
        try:
            row = tuple(int(tok) for tok in text_row.split())
        except ValueError as exc:
            raise ParseError("matrix entries must be integers") from exc
        if len(row) != n + m:
            raise ParseError(f"expected {n + m} entries per row, got {len(row)}")
        rows.append(row)
    return ExtendedExchangeMatrix(n, m, tuple(rows))
