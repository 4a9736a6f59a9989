"""Seed files, trace logs, and the command-line surface.

The flat-file grammar captures exactly the data of a depth-zero seed:
rank, divisors, variable names, the extended exchange matrix, and the
frozen-exponent vectors of the interior coefficient-string entries.
The writer emits one canonical form, and the parser accepts precisely
that form plus insignificant surrounding whitespace, so writing after
parsing reproduces a canonical file byte for byte.

The command-line tool exposes the library operations as subcommands::

    mutate   print the exchange matrix and its modified companion
             after a mutation sequence
    unfold   print the unfolded exchange matrix after a sequence of
             group mutations
    adjoin   print the seed obtained by adjoining a root of every
             frozen variable, in seed-file form
    verify   run one verification target over mutation sequences and
             print one record per check
    trace    run a mutation sequence and print a digest per step

Exit codes: ``0`` all checks passed, ``1`` unusable input (bad flags,
malformed files, out-of-range indices), ``2`` a mathematical check
failed.  All output is deterministic for a fixed ``--rng-seed``;
records never include wall-clock fields, so identical invocations are
byte-identical.  ``GENCLUSTER_THREADS`` sets the worker-thread count
for fanning verification cases; records are always printed in case
order by the main thread.
"""

import argparse
import hashlib
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import (
    FrozenVertexMutation,
    GenClusterError,
    IndexOutOfRange,
    InvalidDivisors,
    NonFrozenSupport,
    NotSkewSymmetric,
    NotSkewSymmetrizable,
    ParseError,
    UnknownSymbol,
    ValidationError,
)
from .fixtures import FIXTURE_NAMES, fixture_seed
from .gca_seed import CoefficientStrings, initial_seed, mutate_seed
from .laurent_kernel import VariableTable
from .matrix_mutation import (
    DivisorVector,
    ExtendedExchangeMatrix,
    modify,
    mutate_sequence,
    write_matrix,
)
from .quotient_embedding import (
    embedding_check,
    product_formula_suite,
    subquotient_check,
)
from .randomgen import random_sequence
from .root_adjoin import tau_tilde
from .unfolding import (
    build,
    double_constant_check,
    group_mutate,
    hadamard_check,
)

_MAGIC = "gca-seed v1"

#: Errors that mean the input was unusable rather than mathematically
#: wrong; the CLI maps them to exit code 1.
_INPUT_ERRORS = (
    ParseError,
    ValidationError,
    InvalidDivisors,
    NotSkewSymmetrizable,
    NotSkewSymmetric,
    IndexOutOfRange,
    FrozenVertexMutation,
    UnknownSymbol,
    NonFrozenSupport,
    KeyError,
    OSError,
)


# ---------------------------------------------------------------------------
# seed files


def _seed_text(seed):
    """Canonical flat-file text of a depth-zero seed."""
    table = seed.table
    n, m = seed.matrix.n, seed.matrix.m
    for i, pos in enumerate(table.cluster_indices):
        if seed.cluster[i] != table.variable(table.names[pos]):
            raise ValidationError(
                "only seeds whose cluster equals the table variables have a"
                " flat-file form"
            )
    cluster_names = [table.names[pos] for pos in table.cluster_indices]
    frozen_names = [table.names[pos] for pos in table.frozen_indices]
    lines = [
        _MAGIC,
        f"N {n}",
        f"M {m}",
        ("divisors " + " ".join(str(d) for d in seed.divisors.entries)).rstrip(),
        (f"names {' '.join(cluster_names)} ; {' '.join(frozen_names)}").rstrip(),
        (
            "matrix "
            + " ; ".join(" ".join(str(e) for e in row) for row in seed.matrix.rows)
        ).rstrip(),
    ]
    if any(
        any(e != 0 for e in entry.exponents)
        for row in seed.strings.rows
        for entry in row
    ):
        for row in seed.strings.rows:
            groups = []
            for entry in row:
                exps = [entry.exponents[pos] for pos in table.frozen_indices]
                groups.append(" ".join(str(e) for e in exps))
            lines.append(("string " + " ; ".join(groups)).rstrip())
    return "\n".join(lines) + "\n"


def write_seed(seed, path):
    """Write ``seed`` to ``path`` in the canonical flat-file form.

    Only depth-zero seeds (cluster equal to the table variables) have a
    flat-file form; anything else raises
    :class:`~gencluster.errors.ValidationError`.
    """
    text = _seed_text(seed)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    return text


class _Cursor:
    """Line-by-line reader that reports 1-based positions on errors."""

    def __init__(self, text):
        self.lines = text.splitlines()
        self.pos = 0

    def next_line(self, what):
        while self.pos < len(self.lines):
            line = self.lines[self.pos].strip()
            self.pos += 1
            if line:
                return line, self.pos
        raise ParseError(f"unexpected end of file, expected {what}", line=self.pos)

    def peek_keyword(self):
        pos = self.pos
        while pos < len(self.lines):
            line = self.lines[pos].strip()
            if line:
                return line.split()[0]
            pos += 1
        return None


def _parse_ints(text, line_no, what):
    out = []
    for column, word in enumerate(text.split(), start=1):
        try:
            out.append(int(word))
        except ValueError as exc:
            raise ParseError(
                f"{what} must be integers, got {word!r}",
                line=line_no,
                column=column,
            ) from exc
    return out


def _expect(cursor, keyword):
    line, line_no = cursor.next_line(f"'{keyword}' line")
    head, _, rest = line.partition(" ")
    if head != keyword:
        raise ParseError(f"expected '{keyword}', got {head!r}", line=line_no)
    return rest.strip(), line_no


def parse_seed_text(text):
    """Parse flat-file text into a depth-zero seed."""
    cursor = _Cursor(text)
    magic, line_no = cursor.next_line("header")
    if magic != _MAGIC:
        raise ParseError(f"expected header {_MAGIC!r}", line=line_no)
    counts = []
    for keyword in ("N", "M"):
        text_value, line_no = _expect(cursor, keyword)
        values = _parse_ints(text_value, line_no, keyword)
        if len(values) != 1 or values[0] < 0:
            raise ParseError(
                f"{keyword} must be one non-negative integer", line=line_no
            )
        counts.append(values[0])
    n, m = counts

    div_text, line_no = _expect(cursor, "divisors")
    divisor_list = _parse_ints(div_text, line_no, "divisors")
    if len(divisor_list) != n:
        raise ParseError(
            f"expected {n} divisors, got {len(divisor_list)}", line=line_no
        )

    names_text, line_no = _expect(cursor, "names")
    left, sep, right = names_text.partition(";")
    if not sep:
        raise ParseError("names line needs a ';' separator", line=line_no)
    cluster_names = tuple(left.split())
    frozen_names = tuple(right.split())
    if len(cluster_names) != n or len(frozen_names) != m:
        raise ParseError(
            f"expected {n} cluster and {m} frozen names, got"
            f" {len(cluster_names)} and {len(frozen_names)}",
            line=line_no,
        )

    matrix_text, line_no = _expect(cursor, "matrix")
    rows = []
    if n:
        row_texts = matrix_text.split(";")
        if len(row_texts) != n:
            raise ParseError(
                f"expected {n} matrix rows, got {len(row_texts)}", line=line_no
            )
        for row_text in row_texts:
            row = _parse_ints(row_text, line_no, "matrix entries")
            if len(row) != n + m:
                raise ParseError(
                    f"matrix rows need {n + m} entries, got {len(row)}",
                    line=line_no,
                )
            rows.append(tuple(row))
    matrix = ExtendedExchangeMatrix(n, m, tuple(rows))
    divisors = DivisorVector(tuple(divisor_list))

    strings = None
    if cursor.peek_keyword() == "string":
        table = VariableTable.make(cluster=cluster_names, frozen=frozen_names)
        string_rows = []
        for i in range(n):
            body, line_no = _expect(cursor, "string")
            groups = body.split(";")
            if len(groups) != divisor_list[i] + 1:
                raise ParseError(
                    f"string row {i + 1} needs {divisor_list[i] + 1} exponent"
                    f" groups, got {len(groups)}",
                    line=line_no,
                )
            row = []
            for group in groups:
                exps = _parse_ints(group, line_no, "string exponents")
                if len(exps) != m:
                    raise ParseError(
                        f"string exponent groups need {m} entries, got"
                        f" {len(exps)}",
                        line=line_no,
                    )
                row.append(
                    table.monomial(dict(zip(frozen_names, exps)))
                )
            string_rows.append(tuple(row))
        strings = CoefficientStrings(tuple(string_rows))

    extra = cursor.peek_keyword()
    if extra is not None:
        raise ParseError(f"unexpected trailing content {extra!r}", line=cursor.pos + 1)

    return initial_seed(
        matrix,
        divisors,
        strings=strings,
        cluster_names=cluster_names,
        frozen_names=frozen_names,
    )


def parse_seed(path):
    """Parse the seed file at ``path``."""
    with open(path, "r", encoding="utf-8") as handle:
        return parse_seed_text(handle.read())


# ---------------------------------------------------------------------------
# trace logs


@dataclass(frozen=True)
class TraceRecord:
    """One step of a traced run."""

    operation: str
    index: int
    elapsed: float
    digest: str


@dataclass
class TraceLog:
    """Append-only sequence of trace records.

    Digests are SHA-256 over the canonical text form of each step's
    output, so two runs agree exactly when every intermediate object
    agrees.  ``elapsed`` is informational and never participates in
    digests or canonical output.
    """

    records: list = field(default_factory=list)

    def add(self, operation, index, elapsed, text):
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        self.records.append(TraceRecord(operation, index, elapsed, digest))
        return self.records[-1]


def _state_text(seed):
    """Canonical matrix-and-strings text of a (possibly mutated) seed."""
    parts = [write_matrix(seed.matrix)]
    table = seed.table
    for row in seed.strings.rows:
        groups = []
        for entry in row:
            exps = [entry.exponents[pos] for pos in table.frozen_indices]
            groups.append(" ".join(str(e) for e in exps))
        parts.append(("string " + " ; ".join(groups)).rstrip() + "\n")
    return "".join(parts)


# ---------------------------------------------------------------------------
# shared CLI plumbing


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage problems as exit code 1."""

    def error(self, message):
        raise _UsageError(message)


def _load_seed(args):
    if getattr(args, "seed_file", None):
        return parse_seed(args.seed_file), args.seed_file
    name = args.seed or ""
    return fixture_seed(name), name.strip().upper()


def _parse_sequence(text, rank, *, what="direction"):
    """1-based comma/space separated indices -> 0-based tuple."""
    if not text:
        return ()
    words = text.replace(",", " ").split()
    out = []
    for word in words:
        try:
            value = int(word)
        except ValueError as exc:
            raise ParseError(f"sequence entries must be integers, got {word!r}") from exc
        if not 1 <= value <= rank:
            raise IndexOutOfRange(
                f"{what} {value} out of range 1..{rank}"
            )
        out.append(value - 1)
    return tuple(out)


def _thread_count():
    raw = os.environ.get("GENCLUSTER_THREADS", "1")
    try:
        count = int(raw)
    except ValueError as exc:
        raise _UsageError(
            f"GENCLUSTER_THREADS must be an integer, got {raw!r}"
        ) from exc
    if count < 1:
        raise _UsageError("GENCLUSTER_THREADS must be at least 1")
    return count


# ---------------------------------------------------------------------------
# subcommands


def _cmd_mutate(args, out):
    seed, _ = _load_seed(args)
    sequence = _parse_sequence(args.sequence, seed.matrix.n)
    matrix = mutate_sequence(seed.matrix, sequence)
    modified = mutate_sequence(
        modify(seed.matrix, seed.divisors), sequence, divisors=seed.divisors
    )
    out.write("B\n")
    out.write(write_matrix(matrix))
    out.write("Bhat\n")
    out.write(write_matrix(modified))
    return 0


def _cmd_unfold(args, out):
    seed, _ = _load_seed(args)
    fm = build(seed)
    sequence = _parse_sequence(args.sequence, fm.n_groups, what="group")
    for k in sequence:
        fm = group_mutate(fm, k)
    out.write("Bcal\n")
    out.write(write_matrix(fm.matrix))
    return 0


def _cmd_adjoin(args, out):
    seed, _ = _load_seed(args)
    adjoined = tau_tilde(seed, mode=args.mode)
    out.write(_seed_text(adjoined.seed))
    return 0


def _cmd_trace(args, out):
    seed, _ = _load_seed(args)
    sequence = _parse_sequence(args.sequence, seed.matrix.n)
    log = TraceLog()
    record = log.add("init", 0, 0.0, _state_text(seed))
    out.write(f"init digest={record.digest}\n")
    current = seed
    for k in sequence:
        start = time.perf_counter()
        current = mutate_seed(current, k)
        elapsed = time.perf_counter() - start
        record = log.add("mutate", k + 1, elapsed, _state_text(current))
        out.write(f"mutate k={record.index} digest={record.digest}\n")
    return 0


#: Depth a target walks when ``--depth`` is not given.  The embedding
#: target evaluates whole folded clusters, which grows quickly on
#: coarse seeds, so its default is shallow; everything else is cheap.
_DEFAULT_DEPTH = {
    "hadamard": 4,
    "double-constant": 4,
    "laurent": 6,
    "product-formula": 4,
    "embedding": 2,
    "subquotient": 0,
}


def _verify_case(target, seed, sequence):
    """Run one (seed, sequence) check; returns (ok, failures)."""
    if target == "laurent":
        current = seed
        for k in sequence:
            current = mutate_seed(current, k)
        return True, ()
    if target in ("hadamard", "double-constant"):
        fm = build(seed)
        reference = seed.matrix
        prefixes = [fm]
        references = [reference]
        for k in sequence:
            fm = group_mutate(fm, k)
            reference = mutate_sequence(reference, (k,))
            prefixes.append(fm)
            references.append(reference)
        failures = []
        for depth, (state, ref) in enumerate(zip(prefixes, references)):
            if target == "hadamard":
                report = hadamard_check(state, ref, seed.divisors)
                if not report.ok:
                    failures.append((depth,) + tuple(report.failures))
            else:
                double_constant_check(state)
        return not failures, tuple(failures)
    if target == "product-formula":
        report = product_formula_suite(seed, sequence)
        return report.ok, report.failures
    if target == "embedding":
        report = embedding_check(seed, sequence)
        return report.ok, report.failures
    if target == "subquotient":
        report = subquotient_check(seed)
        return report.ok, report.failures
    raise _UsageError(f"unknown verify target {target!r}")


def _sequence_space(target, seed, args):
    """The list of sequences a verify run walks for one seed."""
    if target == "subquotient":
        return [()]
    rank = seed.matrix.n
    depth = args.depth if args.depth is not None else _DEFAULT_DEPTH[target]
    spec = args.sequences
    if spec == "exhaustive":
        sequences = [()]
        for _ in range(depth):
            sequences = [s + (k,) for s in sequences for k in range(rank)]
        return sequences or [()]
    if spec.startswith("random:"):
        try:
            count = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise _UsageError(f"bad --sequences value {spec!r}") from exc
        rng = random.Random(args.rng_seed)
        return [random_sequence(rng, rank, depth) for _ in range(count)]
    raise _UsageError(f"--sequences must be 'exhaustive' or 'random:N', got {spec!r}")


def _render_record(record, as_json):
    if as_json:
        return json.dumps(record, sort_keys=True)
    status = "ok" if record["ok"] else "FAIL"
    sequence = ",".join(str(k) for k in record["sequence"]) or "-"
    line = f"{status} target={record['target']} seed={record['seed']} sequence={sequence}"
    if not record["ok"]:
        line += f" detail={record['failures']!r}"
    return line


def _cmd_verify(args, out):
    if args.seed_file:
        seeds = [(parse_seed(args.seed_file), args.seed_file)]
    elif args.seed:
        seeds = [(fixture_seed(args.seed), args.seed.strip().upper())]
    else:
        seeds = [(fixture_seed(name), name) for name in FIXTURE_NAMES]

    cases = []
    for seed, label in seeds:
        for sequence in _sequence_space(args.target, seed, args):
            cases.append((seed, label, sequence))

    def run(case):
        seed, label, sequence = case
        try:
            ok, failures = _verify_case(args.target, seed, sequence)
        except GenClusterError as exc:
            ok, failures = False, (f"{type(exc).__name__}: {exc}",)
        return {
            "target": args.target,
            "seed": label,
            "sequence": [k + 1 for k in sequence],
            "ok": ok,
            "failures": [repr(f) for f in failures],
        }

    threads = _thread_count()
    if threads == 1 or len(cases) <= 1:
        records = [run(case) for case in cases]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(run, cases))

    all_ok = True
    for record in records:
        out.write(_render_record(record, args.json) + "\n")
        all_ok = all_ok and record["ok"]
    return 0 if all_ok else 2


# ---------------------------------------------------------------------------
# entry points


def _build_parser():
    parser = _Parser(
        prog="gencluster",
        description="Exact mutations, unfoldings, and verification for"
        " generalized cluster structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_seed_options(p):
        p.add_argument(
            "--seed",
            help=f"built-in seed name ({', '.join(FIXTURE_NAMES)})",
        )
        p.add_argument("--seed-file", help="path to a seed file")

    p_mutate = sub.add_parser("mutate", help="mutate the exchange matrices")
    add_seed_options(p_mutate)
    p_mutate.add_argument(
        "--sequence",
        default="",
        help="1-based mutation directions, e.g. '1,2,1'",
    )
    p_mutate.set_defaults(func=_cmd_mutate)

    p_unfold = sub.add_parser("unfold", help="unfold and group-mutate")
    add_seed_options(p_unfold)
    p_unfold.add_argument(
        "--sequence",
        default="",
        help="1-based group directions, e.g. '1,2'",
    )
    p_unfold.set_defaults(func=_cmd_unfold)

    p_adjoin = sub.add_parser(
        "adjoin", help="adjoin a root of every frozen variable"
    )
    add_seed_options(p_adjoin)
    p_adjoin.add_argument(
        "--mode",
        choices=("total", "lcm"),
        default="total",
        help="root multiplicity: product of divisors, or their lcm",
    )
    p_adjoin.set_defaults(func=_cmd_adjoin)

    p_verify = sub.add_parser("verify", help="run a verification target")
    p_verify.add_argument(
        "target",
        choices=(
            "hadamard",
            "double-constant",
            "laurent",
            "product-formula",
            "embedding",
            "subquotient",
        ),
    )
    add_seed_options(p_verify)
    p_verify.add_argument(
        "--depth", type=int, default=None, help="mutation sequence length"
    )
    p_verify.add_argument(
        "--sequences",
        default="exhaustive",
        help="'exhaustive' or 'random:N'",
    )
    p_verify.add_argument(
        "--rng-seed", type=int, default=0, help="seed for random sequences"
    )
    p_verify.add_argument(
        "--json", action="store_true", help="one JSON object per record"
    )
    p_verify.set_defaults(func=_cmd_verify)

    p_trace = sub.add_parser("trace", help="digest every step of a mutation run")
    add_seed_options(p_trace)
    p_trace.add_argument(
        "--sequence",
        default="",
        help="1-based mutation directions, e.g. '1,2,1'",
    )
    p_trace.set_defaults(func=_cmd_trace)

    return parser


def run_command(argv, out=None):
    """Run one CLI invocation; returns the process exit code."""
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "seed", None) and getattr(args, "seed_file", None):
            raise _UsageError("--seed and --seed-file are mutually exclusive")
        if (
            args.command in ("mutate", "unfold", "adjoin", "trace")
            and not getattr(args, "seed", None)
            and not getattr(args, "seed_file", None)
        ):
            raise _UsageError(f"{args.command} needs --seed or --seed-file")
        return args.func(args, out)
    except _UsageError as exc:
        print(f"gencluster: error: {exc}", file=sys.stderr)
        return 1
    except _INPUT_ERRORS as exc:
        print(f"gencluster: error: {exc}", file=sys.stderr)
        return 1
    except GenClusterError as exc:
        print(f"gencluster: mismatch: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main(argv=None):
    return run_command(sys.argv[1:] if argv is None else argv)
