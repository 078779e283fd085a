"""The acceptance suite: every exit criterion as an executable check.

Each criterion returns a result with its frozen expected values asserted
exactly (tolerance zero everywhere; all arithmetic is exact).  A shared
workspace memoizes homology tables across criteria and records a boundary
square check for every complex it assembles, which criterion 9 then audits.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from random import Random

from .algebra import Coefficients, exterior, polynomial, truncated_poly
from .loday import build_complex, homology_dims
from .oracle import check_total_square, torus_bicomplex, total_homology, wedge_kunneth_dims
from .simplicial import build_space, parse_space_expr
from .stability import compare_tables, product_decomposition_check

TORUS = "prod(S1,S1)"
WEDGE = "wedge(wedge(S1,S1),sphere(2))"


@dataclass
class CriterionResult:
    cid: int
    name: str
    passed: bool
    seconds: float
    detail: str


def _make_algebra(spec: str, field):
    if spec == "poly":
        return polynomial(field)
    if spec == "exterior":
        return exterior(field)
    if spec.startswith("truncpoly("):
        return truncated_poly(field, int(spec[len("truncpoly("):-1]))
    raise ValueError(spec)


class Workspace:
    """Memoized homology tables plus a registry of boundary-square checks."""

    def __init__(self):
        self.tables = {}
        self.square_checks = []  # (description, ok)

    def homology(self, space_expr: str, algebra_spec: str, field,
                 max_degree: int, weight_bound=None, normalized=True):
        key = (space_expr, algebra_spec, str(field), max_degree, weight_bound,
               normalized)
        if key in self.tables:
            return self.tables[key]
        algebra = _make_algebra(algebra_spec, field)
        space = build_space(parse_space_expr(space_expr), max_degree + 1)
        complex_ = build_complex(space, algebra, Coefficients.unit(),
                                 max_degree, weight_bound, normalized)
        violations = complex_.check_boundary_squares()
        self.square_checks.append(
            (f"{space_expr} / {algebra_spec} / {field} / norm={normalized}",
             not violations))
        table = homology_dims(complex_)
        self.tables[key] = table
        return table

    def bicomplex_homology(self, algebra_spec: str, field, max_degree: int,
                           weight_bound=None):
        key = ("bicomplex", algebra_spec, str(field), max_degree, weight_bound)
        if key in self.tables:
            return self.tables[key]
        algebra = _make_algebra(algebra_spec, field)
        bicomplex = torus_bicomplex(algebra, Coefficients.unit(), max_degree,
                                    weight_bound)
        ok = not bicomplex.check_squares() and check_total_square(bicomplex)
        self.square_checks.append(
            (f"bicomplex / {algebra_spec} / {field}", ok))
        table = total_homology(bicomplex, max_degree)
        self.tables[key] = table
        return table


def _tables_equal(left, right, max_degree: int) -> bool:
    keys = {k for k in set(left.dims) | set(right.dims) if k[0] <= max_degree}
    return all(left.get(*k) == right.get(*k) for k in keys)


def criterion_1(ws: Workspace) -> CriterionResult:
    """Torus vs wedge non-stability over F_3 and F_5."""
    name = "non-stability counterexample (F3, F5): torus [1,2,3] vs wedge [1,2,4]"
    t0 = time.monotonic()
    details = []
    ok = True
    for p in (3, 5):
        tp0 = time.monotonic()
        torus = ws.homology(TORUS, "truncpoly(2)", p, 2)
        wedge_t = ws.homology(WEDGE, "truncpoly(2)", p, 2)
        torus_unnorm = ws.homology(TORUS, "truncpoly(2)", p, 2, normalized=False)
        per_prime = time.monotonic() - tp0
        rows, verdict = compare_tables(torus, wedge_t, 2)
        good = (torus.totals() == [1, 2, 3]
                and wedge_t.totals() == [1, 2, 4]
                and torus_unnorm.totals() == [1, 2, 3]
                and verdict.startswith("first-discrepancy(degree=2")
                and per_prime < 60.0)
        ok = ok and good
        details.append(f"F{p}: torus {torus.totals()} wedge {wedge_t.totals()} "
                       f"unnormalized torus {torus_unnorm.totals()} "
                       f"[{per_prime:.1f}s]")
    return CriterionResult(1, name, ok, time.monotonic() - t0, "; ".join(details))


def criterion_2(ws: Workspace) -> CriterionResult:
    """p = 2 agreement: both give 4 in degree 2."""
    name = "p=2 agreement: torus and wedge both [1,2,4]"
    t0 = time.monotonic()
    torus = ws.homology(TORUS, "truncpoly(2)", 2, 2)
    wedge_t = ws.homology(WEDGE, "truncpoly(2)", 2, 2)
    _, verdict = compare_tables(torus, wedge_t, 2)
    elapsed = time.monotonic() - t0
    ok = (torus.totals() == [1, 2, 4] and wedge_t.totals() == [1, 2, 4]
          and verdict == "agree-through-degree-2" and elapsed < 60.0)
    return CriterionResult(2, name, ok, elapsed,
                           f"torus {torus.totals()} wedge {wedge_t.totals()}")


def criterion_3(ws: Workspace) -> CriterionResult:
    """Circle homology of F_p[t]/t^2 is one-dimensional in degrees 0..4."""
    name = "circle closed form: dims 1 in degrees 0..4 for p in {2,3,5}"
    t0 = time.monotonic()
    details = []
    ok = True
    for p in (2, 3, 5):
        table = ws.homology("S1", "truncpoly(2)", p, 4)
        good = table.totals() == [1, 1, 1, 1, 1]
        ok = ok and good
        details.append(f"F{p}: {table.totals()}")
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 120.0
    return CriterionResult(3, name, ok, elapsed, "; ".join(details))


def criterion_4(ws: Workspace) -> CriterionResult:
    """S^2 gives [1, 0, 1] over F_3 in both sphere models."""
    name = "S^2 low-degree table [1,0,1] over F3, both models"
    t0 = time.monotonic()
    smash_model = ws.homology("sphere(2)", "truncpoly(2)", 3, 2)
    delta_model = ws.homology("simplexsphere(2)", "truncpoly(2)", 3, 2)
    elapsed = time.monotonic() - t0
    ok = (smash_model.totals() == [1, 0, 1]
          and delta_model.totals() == [1, 0, 1]
          and _tables_equal(smash_model, delta_model, 2)
          and elapsed < 30.0)
    return CriterionResult(4, name, ok, elapsed,
                           f"smash {smash_model.totals()} "
                           f"delta {delta_model.totals()}")


def criterion_5(ws: Workspace) -> CriterionResult:
    """Bicomplex total homology equals the simplicial product blockwise."""
    name = "bicomplex oracle equals simplicial torus (F3, F2), all blocks"
    t0 = time.monotonic()
    ok = True
    details = []
    for p in (3, 2):
        direct = ws.homology(TORUS, "truncpoly(2)", p, 2)
        via_grid = ws.bicomplex_homology("truncpoly(2)", p, 2)
        good = _tables_equal(direct, via_grid, 2)
        ok = ok and good
        details.append(f"F{p}: {'equal' if good else 'DIFFER'}")
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 120.0
    return CriterionResult(5, name, ok, elapsed, "; ".join(details))


def criterion_6(ws: Workspace) -> CriterionResult:
    """Rational discrepancy: degree-2 dims 3 vs 4, bicomplex agrees with the
    simplicial value."""
    name = "rational discrepancy: Q[t]/t^2 torus 3 vs wedge 4 in degree 2"
    t0 = time.monotonic()
    torus = ws.homology(TORUS, "truncpoly(2)", "Q", 2)
    wedge_t = ws.homology(WEDGE, "truncpoly(2)", "Q", 2)
    via_grid = ws.bicomplex_homology("truncpoly(2)", "Q", 2)
    elapsed = time.monotonic() - t0
    ok = (torus.total(2) != wedge_t.total(2)
          and torus.totals() == [1, 2, 3]
          and wedge_t.totals() == [1, 2, 4]
          and _tables_equal(torus, via_grid, 2)
          and elapsed < 120.0)
    return CriterionResult(6, name, ok, elapsed,
                           f"torus {torus.totals()} wedge {wedge_t.totals()}")


def criterion_7(ws: Workspace) -> CriterionResult:
    """k[t] over F_3 decomposes the product of two circles per block."""
    name = "smooth positive case: k[t] decomposes S1 x S1, weights <= 3"
    t0 = time.monotonic()
    report = product_decomposition_check("S1", "S1", polynomial(3),
                                         Coefficients.unit(), 2,
                                         weight_bound=3)
    elapsed = time.monotonic() - t0
    ok = report.agrees and elapsed < 120.0
    return CriterionResult(7, name, ok, elapsed, report.verdict)


ACCEPTANCE_NORMALIZATION_INPUTS = (
    (TORUS, "truncpoly(2)", 3, 2, None),
    (TORUS, "truncpoly(2)", 5, 2, None),
    (TORUS, "truncpoly(2)", 2, 2, None),
    (TORUS, "truncpoly(2)", "Q", 2, None),
    (WEDGE, "truncpoly(2)", 3, 2, None),
    (WEDGE, "truncpoly(2)", 2, 2, None),
    (WEDGE, "truncpoly(2)", "Q", 2, None),
    ("S1", "truncpoly(2)", 2, 4, None),
    ("S1", "truncpoly(2)", 3, 4, None),
    ("S1", "truncpoly(2)", 5, 4, None),
    ("sphere(2)", "truncpoly(2)", 3, 2, None),
    ("simplexsphere(2)", "truncpoly(2)", 3, 2, None),
    (TORUS, "poly", 3, 2, 3),
)

_RANDOM_ATOMS = ("pt", "S1", "sphere(2)", "simplexsphere(2)")
_RANDOM_ALGEBRAS = ("truncpoly(2)", "truncpoly(3)", "exterior")
_RANDOM_FIELDS = (2, 3, 5)


def random_small_inputs(count: int = 20, seed: int = 20250809):
    """Deterministic sample of small comparison inputs for criterion 8.

    Expressions use at most two combinators; candidates whose top chain level
    would be too large for the unnormalized build are skipped, keeping the
    suite fast.
    """
    rng = Random(seed)

    def random_expr(combinators):
        if combinators == 0:
            return rng.choice(_RANDOM_ATOMS)
        op = rng.choice(("wedge", "prod", "smash", "susp"))
        if op == "susp":
            return f"susp({random_expr(combinators - 1)})"
        split = rng.randint(0, combinators - 1)
        return (f"{op}({random_expr(split)},"
                f"{random_expr(combinators - 1 - split)})")

    out = []
    while len(out) < count:
        expr = random_expr(rng.randint(0, 2))
        algebra_spec = rng.choice(_RANDOM_ALGEBRAS)
        p = rng.choice(_RANDOM_FIELDS)
        max_degree = rng.randint(0, 2)
        space = build_space(parse_space_expr(expr), max_degree + 1)
        slots = space.size(max_degree + 1) - 1
        dim = 3 if algebra_spec == "truncpoly(3)" else 2
        if dim ** slots > 20000:
            continue
        out.append((expr, algebra_spec, p, max_degree))
    return out


def criterion_8(ws: Workspace) -> CriterionResult:
    """Homology agrees with normalization on and off, everywhere."""
    name = "normalization invariance on acceptance inputs and 20 random inputs"
    t0 = time.monotonic()
    ok = True
    checked = 0
    bad = []
    for expr, algebra_spec, field, d, w in ACCEPTANCE_NORMALIZATION_INPUTS:
        on = ws.homology(expr, algebra_spec, field, d, w, normalized=True)
        off = ws.homology(expr, algebra_spec, field, d, w, normalized=False)
        checked += 1
        if not _tables_equal(on, off, d):
            ok = False
            bad.append(f"{expr}/{algebra_spec}/{field}")
    for expr, algebra_spec, p, d in random_small_inputs():
        on = ws.homology(expr, algebra_spec, p, d, normalized=True)
        off = ws.homology(expr, algebra_spec, p, d, normalized=False)
        checked += 1
        if not _tables_equal(on, off, d):
            ok = False
            bad.append(f"{expr}/{algebra_spec}/F{p}")
    detail = f"{checked} inputs" + (f"; disagreements: {bad}" if bad else "")
    return CriterionResult(8, name, ok, time.monotonic() - t0, detail)


def criterion_9(ws: Workspace) -> CriterionResult:
    """Boundary-squared vanishes for every complex assembled so far."""
    name = "boundary . boundary = 0 for every assembled complex"
    t0 = time.monotonic()
    if not ws.square_checks:
        ws.homology(TORUS, "truncpoly(2)", 3, 2)
        ws.bicomplex_homology("truncpoly(2)", 3, 2)
    failures = [desc for desc, good in ws.square_checks if not good]
    ok = not failures and len(ws.square_checks) > 0
    detail = f"{len(ws.square_checks)} complexes checked"
    if failures:
        detail += f"; failures: {failures}"
    return CriterionResult(9, name, ok, time.monotonic() - t0, detail)


def criterion_10(ws: Workspace) -> CriterionResult:
    """Künneth convolution predicts direct wedge computations over F_3."""
    name = "Kunneth convolution matches direct wedges for (S1,S1),(S1,S2),(S2,S2)"
    t0 = time.monotonic()
    pairs = (("S1", "S1"), ("S1", "sphere(2)"), ("sphere(2)", "sphere(2)"))
    ok = True
    details = []
    for a, b in pairs:
        ha = ws.homology(a, "truncpoly(2)", 3, 2)
        hb = ws.homology(b, "truncpoly(2)", 3, 2)
        predicted = wedge_kunneth_dims(ha, hb, 2)
        direct = ws.homology(f"wedge({a},{b})", "truncpoly(2)", 3, 2)
        good = _tables_equal(predicted, direct, 2)
        ok = ok and good
        details.append(f"({a},{b}): {'equal' if good else 'DIFFER'}")
    return CriterionResult(10, name, ok, time.monotonic() - t0,
                           "; ".join(details))


def _cli_json_compare_bytes(hash_seed: str) -> bytes:
    src_dir = str(Path(__file__).resolve().parent.parent)
    env = dict(os.environ)
    env["PYTHONPATH"] = src_dir + os.pathsep + env.get("PYTHONPATH", "")
    env["PYTHONHASHSEED"] = hash_seed
    proc = subprocess.run(
        [sys.executable, "-m", "lodayhom.cli", "compare",
         "--space-a", TORUS, "--space-b", WEDGE,
         "--algebra", "truncpoly(2)", "--field", "F3", "--coeff", "unit",
         "--max-degree", "2", "--format", "json"],
        capture_output=True, env=env, check=False)
    if proc.returncode != 10:
        raise RuntimeError(
            f"expected exit code 10 from the comparison, got {proc.returncode}: "
            f"{proc.stderr.decode()}")
    return proc.stdout


def criterion_11(ws: Workspace) -> CriterionResult:
    """Running the flagship comparison twice emits byte-identical json."""
    name = "determinism: criterion-1 json reports are byte-identical"
    t0 = time.monotonic()
    # distinct hash seeds so set/dict hashing cannot leak into the bytes
    first = _cli_json_compare_bytes("1")
    second = _cli_json_compare_bytes("2")
    ok = first == second and len(first) > 0
    json.loads(first.decode())  # also a well-formedness check
    return CriterionResult(11, name, ok, time.monotonic() - t0,
                           f"{len(first)} bytes")


CRITERIA = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
    criterion_11,
)


def run_all(only=None, log=None):
    """Run the acceptance criteria in order; returns their results."""
    ws = Workspace()
    results = []
    for i, criterion in enumerate(CRITERIA, start=1):
        if only is not None and i not in only:
            continue
        if log:
            log(f"running criterion {i} ...")
        try:
            result = criterion(ws)
        except Exception as exc:
            result = CriterionResult(i, criterion.__doc__ or f"criterion {i}",
                                     False, 0.0, f"raised {exc!r}")
        results.append(result)
    return results
