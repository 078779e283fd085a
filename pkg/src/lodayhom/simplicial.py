"""Finite pointed simplicial sets truncated at a fixed top level.

A space is stored as explicit per-level tables: level p holds dense integer
simplex identifiers 0..size-1, one of which is the (degenerate image of the)
basepoint, together with total face maps d_i : level p -> level p-1 and total
degeneracy maps s_i : level p -> level p+1.  The identifier order within each
level is the canonical simplex order used downstream for tensor-factor bases.

Conventions for the built-in constructors:

* ``circle`` is the one-vertex model of S^1: level p is the basepoint (id 0)
  followed by the p degenerate images of the single non-degenerate 1-simplex.
  Identifier j >= 1 at level p corresponds to the non-constant monotone map
  [p] -> [1] whose value tuple is (0^(p+1-j), 1^j); the tuples are in
  lexicographic order, matching the quotient model Delta^1/boundary.
* ``simplex_sphere(n)`` is the quotient of the standard n-simplex by its
  boundary; quotients identify collapsed simplices with the basepoint using a
  union-find whose class representative is the smallest identifier.
* products are levelwise cartesian products with identifier x*|Y_p| + y, and
  the smash is the product collapsed along both axes through the basepoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from itertools import combinations_with_replacement


class TruncationMismatch(ValueError):
    """Two spaces entering a binary construction have different top levels."""


class MalformedExpr(ValueError):
    """A space expression fails to parse or has a bad arity/argument."""


class PointedSimplicialSet:
    """Truncated pointed simplicial set given by explicit level tables."""

    __slots__ = ("level_sizes", "basepoints", "_faces", "_degeneracies", "label")

    def __init__(self, level_sizes, basepoints, faces, degeneracies, label=""):
        self.level_sizes = tuple(level_sizes)
        self.basepoints = tuple(basepoints)
        self._faces = {key: tuple(m) for key, m in faces.items()}
        self._degeneracies = {key: tuple(m) for key, m in degeneracies.items()}
        self.label = label
        n = self.top_level
        if len(self.basepoints) != n + 1:
            raise ValueError("need one basepoint per level")
        for p, size in enumerate(self.level_sizes):
            if size < 1 or not (0 <= self.basepoints[p] < size):
                raise ValueError(f"bad basepoint at level {p}")
        for p in range(1, n + 1):
            for i in range(p + 1):
                m = self._faces.get((p, i))
                if m is None or len(m) != self.level_sizes[p]:
                    raise ValueError(f"missing or ragged face map d_{i} at level {p}")
        for p in range(n):
            for i in range(p + 1):
                m = self._degeneracies.get((p, i))
                if m is None or len(m) != self.level_sizes[p]:
                    raise ValueError(f"missing or ragged degeneracy s_{i} at level {p}")

    @property
    def top_level(self) -> int:
        return len(self.level_sizes) - 1

    def size(self, p: int) -> int:
        return self.level_sizes[p]

    def face(self, p: int, i: int):
        """Total map d_i : level p -> level p-1 as a tuple."""
        return self._faces[(p, i)]

    def degeneracy(self, p: int, i: int):
        """Total map s_i : level p -> level p+1 as a tuple."""
        return self._degeneracies[(p, i)]

    def nondegenerate_counts(self):
        """Number of simplices per level not hit by any degeneracy map."""
        counts = [self.level_sizes[0]]
        for p in range(1, self.top_level + 1):
            hit = set()
            for i in range(p):
                hit.update(self._degeneracies[(p - 1, i)])
            counts.append(self.level_sizes[p] - len(hit))
        return counts

    def __repr__(self) -> str:
        name = self.label or "PointedSimplicialSet"
        return f"<{name} levels={list(self.level_sizes)}>"


def point(top_level: int) -> PointedSimplicialSet:
    """The one-point space."""
    sizes = [1] * (top_level + 1)
    faces = {(p, i): (0,) for p in range(1, top_level + 1) for i in range(p + 1)}
    degens = {(p, i): (0,) for p in range(top_level) for i in range(p + 1)}
    return PointedSimplicialSet(sizes, [0] * (top_level + 1), faces, degens, "pt")


def circle(top_level: int) -> PointedSimplicialSet:
    """Minimal model of S^1: one vertex, one non-degenerate 1-simplex."""
    if top_level < 1:
        raise ValueError("circle needs top_level >= 1")
    sizes = [p + 1 for p in range(top_level + 1)]
    faces = {}
    for p in range(1, top_level + 1):
        for i in range(p + 1):
            m = [0]
            for j in range(1, p + 1):
                j2 = j if i < p + 1 - j else j - 1
                m.append(j2 if 1 <= j2 <= p - 1 else 0)
            faces[(p, i)] = tuple(m)
    degens = {}
    for p in range(top_level):
        for i in range(p + 1):
            m = [0]
            for j in range(1, p + 1):
                m.append(j if i < p + 1 - j else j + 1)
            degens[(p, i)] = tuple(m)
    return PointedSimplicialSet(sizes, [0] * (top_level + 1), faces, degens, "S1")


def standard_simplex(n: int, top_level: int) -> PointedSimplicialSet:
    """Delta^n truncated at top_level, pointed at vertex 0.

    Level p consists of the monotone maps [p] -> [n] stored as value tuples in
    lexicographic order; the all-zero tuple (id 0) is the basepoint.
    """
    levels = []
    index = []
    for p in range(top_level + 1):
        simplices = sorted(combinations_with_replacement(range(n + 1), p + 1))
        levels.append(simplices)
        index.append({s: k for k, s in enumerate(simplices)})
    sizes = [len(lv) for lv in levels]
    faces = {}
    for p in range(1, top_level + 1):
        for i in range(p + 1):
            faces[(p, i)] = tuple(
                index[p - 1][s[:i] + s[i + 1:]] for s in levels[p]
            )
    degens = {}
    for p in range(top_level):
        for i in range(p + 1):
            degens[(p, i)] = tuple(
                index[p + 1][s[: i + 1] + s[i:]] for s in levels[p]
            )
    return PointedSimplicialSet(sizes, [0] * (top_level + 1), faces, degens,
                                f"Delta{n}")


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller identifier as the class representative
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def collapse(space: PointedSimplicialSet, doomed_by_level, label="") -> PointedSimplicialSet:
    """Collapse a pointed subcomplex to the basepoint.

    ``doomed_by_level`` maps a level to the identifiers to be identified with
    the basepoint there.  The listed simplices must be closed under faces and
    degeneracies for the quotient maps to be well-defined.
    """
    n = space.top_level
    finds = []
    newid = []
    sizes = []
    for p in range(n + 1):
        uf = _UnionFind(space.size(p))
        for d in doomed_by_level.get(p, ()):
            uf.union(space.basepoints[p], d)
        reps = sorted({uf.find(x) for x in range(space.size(p))})
        ids = {rep: k for k, rep in enumerate(reps)}
        finds.append(uf)
        newid.append(ids)
        sizes.append(len(reps))
    basepoints = [newid[p][finds[p].find(space.basepoints[p])] for p in range(n + 1)]
    faces = {}
    for p in range(1, n + 1):
        for i in range(p + 1):
            old = space.face(p, i)
            faces[(p, i)] = tuple(
                newid[p - 1][finds[p - 1].find(old[rep])]
                for rep in sorted(newid[p])
            )
    degens = {}
    for p in range(n):
        for i in range(p + 1):
            old = space.degeneracy(p, i)
            degens[(p, i)] = tuple(
                newid[p + 1][finds[p + 1].find(old[rep])]
                for rep in sorted(newid[p])
            )
    return PointedSimplicialSet(sizes, basepoints, faces, degens, label)


def simplex_sphere(n: int, top_level: int) -> PointedSimplicialSet:
    """Delta^n / boundary: every non-surjective simplex collapses to the point."""
    if n < 1:
        raise ValueError("simplex_sphere needs n >= 1")
    delta = standard_simplex(n, top_level)
    doomed = {}
    for p in range(top_level + 1):
        simplices = sorted(combinations_with_replacement(range(n + 1), p + 1))
        doomed[p] = [k for k, s in enumerate(simplices) if len(set(s)) != n + 1]
    return collapse(delta, doomed, f"simplexsphere({n})")


def product(x: PointedSimplicialSet, y: PointedSimplicialSet) -> PointedSimplicialSet:
    """Levelwise cartesian product; pair (a, b) gets identifier a*|Y_p| + b."""
    if x.top_level != y.top_level:
        raise TruncationMismatch("product factors have different top levels")
    n = x.top_level
    sizes = [x.size(p) * y.size(p) for p in range(n + 1)]
    basepoints = [x.basepoints[p] * y.size(p) + y.basepoints[p] for p in range(n + 1)]
    faces = {}
    for p in range(1, n + 1):
        for i in range(p + 1):
            fx, fy = x.face(p, i), y.face(p, i)
            ylow = y.size(p - 1)
            faces[(p, i)] = tuple(
                fx[a] * ylow + fy[b]
                for a in range(x.size(p)) for b in range(y.size(p))
            )
    degens = {}
    for p in range(n):
        for i in range(p + 1):
            sx, sy = x.degeneracy(p, i), y.degeneracy(p, i)
            yhigh = y.size(p + 1)
            degens[(p, i)] = tuple(
                sx[a] * yhigh + sy[b]
                for a in range(x.size(p)) for b in range(y.size(p))
            )
    return PointedSimplicialSet(sizes, basepoints, faces, degens,
                                f"prod({x.label},{y.label})")


def wedge(x: PointedSimplicialSet, y: PointedSimplicialSet) -> PointedSimplicialSet:
    """One-point union: X keeps its identifiers, Y's non-basepoint ones follow."""
    if x.top_level != y.top_level:
        raise TruncationMismatch("wedge summands have different top levels")
    n = x.top_level

    def yid(p, b):
        by = y.basepoints[p]
        if b == by:
            return x.basepoints[p]
        return x.size(p) + (b if b < by else b - 1)

    sizes = [x.size(p) + y.size(p) - 1 for p in range(n + 1)]
    basepoints = [x.basepoints[p] for p in range(n + 1)]
    faces = {}
    for p in range(1, n + 1):
        for i in range(p + 1):
            fx, fy = x.face(p, i), y.face(p, i)
            m = list(fx)
            by = y.basepoints[p]
            for b in list(range(by)) + list(range(by + 1, y.size(p))):
                m.append(yid(p - 1, fy[b]))
            faces[(p, i)] = tuple(m)
    degens = {}
    for p in range(n):
        for i in range(p + 1):
            sx, sy = x.degeneracy(p, i), y.degeneracy(p, i)
            m = list(sx)
            by = y.basepoints[p]
            for b in list(range(by)) + list(range(by + 1, y.size(p))):
                m.append(yid(p + 1, sy[b]))
            degens[(p, i)] = tuple(m)
    return PointedSimplicialSet(sizes, basepoints, faces, degens,
                                f"wedge({x.label},{y.label})")


def smash(x: PointedSimplicialSet, y: PointedSimplicialSet) -> PointedSimplicialSet:
    """Product collapsed along the levelwise wedge."""
    if x.top_level != y.top_level:
        raise TruncationMismatch("smash factors have different top levels")
    prod = product(x, y)
    doomed = {}
    for p in range(x.top_level + 1):
        bx, by = x.basepoints[p], y.basepoints[p]
        ids = set()
        for b in range(y.size(p)):
            ids.add(bx * y.size(p) + b)
        for a in range(x.size(p)):
            ids.add(a * y.size(p) + by)
        doomed[p] = sorted(ids)
    return collapse(prod, doomed, f"smash({x.label},{y.label})")


def suspension(x: PointedSimplicialSet) -> PointedSimplicialSet:
    """Reduced suspension, modelled as S^1 smash X."""
    if x.top_level < 1:
        raise ValueError("suspension needs top_level >= 1")
    out = smash(circle(x.top_level), x)
    out.label = f"susp({x.label})"
    return out


# --- space expressions -----------------------------------------------------

_ATOMS = ("pt", "S1")
_INT_COMBINATORS = ("sphere", "simplexsphere", "torus")
_BINARY = ("wedge", "prod", "smash")


@dataclass(frozen=True)
class SpaceExpr:
    """Syntax tree over pt/S1/sphere(n)/simplexsphere(n)/torus(n) and
    wedge/prod/smash/susp."""

    op: str
    args: tuple = dataclass_field(default=())

    def __post_init__(self):
        if self.op in _ATOMS:
            if self.args:
                raise MalformedExpr(f"{self.op} takes no arguments")
        elif self.op in _INT_COMBINATORS:
            if len(self.args) != 1 or not isinstance(self.args[0], int):
                raise MalformedExpr(f"{self.op} takes one integer argument")
            if self.args[0] < 1:
                raise MalformedExpr(f"{self.op} needs n >= 1")
        elif self.op in _BINARY:
            if len(self.args) != 2 or not all(isinstance(a, SpaceExpr) for a in self.args):
                raise MalformedExpr(f"{self.op} takes two space arguments")
        elif self.op == "susp":
            if len(self.args) != 1 or not isinstance(self.args[0], SpaceExpr):
                raise MalformedExpr("susp takes one space argument")
        else:
            raise MalformedExpr(f"unknown space constructor {self.op!r}")

    def __str__(self) -> str:
        if not self.args:
            return self.op
        return f"{self.op}({','.join(str(a) for a in self.args)})"


class _ExprParser:
    def __init__(self, text: str):
        self.text = "".join(text.split())
        self.pos = 0

    def parse(self) -> SpaceExpr:
        expr = self.expr()
        if self.pos != len(self.text):
            raise MalformedExpr(f"trailing input at position {self.pos}")
        return expr

    def expr(self) -> SpaceExpr:
        name = self.name()
        if name in _ATOMS:
            return SpaceExpr(name)
        if name in _INT_COMBINATORS:
            self.expect("(")
            n = self.integer()
            self.expect(")")
            return SpaceExpr(name, (n,))
        if name in _BINARY:
            self.expect("(")
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return SpaceExpr(name, (a, b))
        if name == "susp":
            self.expect("(")
            a = self.expr()
            self.expect(")")
            return SpaceExpr(name, (a,))
        raise MalformedExpr(f"unknown space constructor {name!r}")

    def name(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if self.pos == start:
            raise MalformedExpr(f"expected a name at position {start}")
        return self.text[start:self.pos]

    def integer(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise MalformedExpr(f"expected an integer at position {start}")
        return int(self.text[start:self.pos])

    def expect(self, ch: str):
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise MalformedExpr(f"expected {ch!r} at position {self.pos}")
        self.pos += 1


def parse_space_expr(text: str) -> SpaceExpr:
    """Parse the space grammar; whitespace-insensitive, case-sensitive."""
    return _ExprParser(text).parse()


def build_space(expr, top_level: int) -> PointedSimplicialSet:
    """Evaluate a SpaceExpr (or its string form) at the given truncation."""
    if isinstance(expr, str):
        expr = parse_space_expr(expr)
    if expr.op == "pt":
        return point(top_level)
    if expr.op == "S1":
        return circle(top_level)
    if expr.op == "sphere":
        out = circle(top_level)
        for _ in range(expr.args[0] - 1):
            out = smash(out, circle(top_level))
        out.label = str(expr)
        return out
    if expr.op == "simplexsphere":
        return simplex_sphere(expr.args[0], top_level)
    if expr.op == "torus":
        out = circle(top_level)
        for _ in range(expr.args[0] - 1):
            out = product(out, circle(top_level))
        out.label = str(expr)
        return out
    if expr.op == "wedge":
        return wedge(build_space(expr.args[0], top_level),
                     build_space(expr.args[1], top_level))
    if expr.op == "prod":
        return product(build_space(expr.args[0], top_level),
                       build_space(expr.args[1], top_level))
    if expr.op == "smash":
        return smash(build_space(expr.args[0], top_level),
                     build_space(expr.args[1], top_level))
    if expr.op == "susp":
        return suspension(build_space(expr.args[0], top_level))
    raise MalformedExpr(f"unknown space constructor {expr.op!r}")


# --- validation ------------------------------------------------------------

@dataclass
class ValidationReport:
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "pass"
        return "\n".join(self.violations)


def validate(space: PointedSimplicialSet) -> ValidationReport:
    """Check all simplicial identities within the truncation, pointedness of
    every map, and injectivity of the degeneracies."""
    v = []
    n = space.top_level
    for p in range(1, n + 1):
        for i in range(p + 1):
            if space.face(p, i)[space.basepoints[p]] != space.basepoints[p - 1]:
                v.append(f"d_{i} at level {p} does not preserve the basepoint")
    for p in range(n):
        for i in range(p + 1):
            m = space.degeneracy(p, i)
            if m[space.basepoints[p]] != space.basepoints[p + 1]:
                v.append(f"s_{i} at level {p} does not preserve the basepoint")
            if len(set(m)) != len(m):
                v.append(f"s_{i} at level {p} is not injective")
    # d_i d_j = d_{j-1} d_i for i < j
    for p in range(2, n + 1):
        for j in range(p + 1):
            for i in range(j):
                dj = space.face(p, j)
                di_low = space.face(p - 1, i)
                di = space.face(p, i)
                djm1_low = space.face(p - 1, j - 1)
                for x in range(space.size(p)):
                    if di_low[dj[x]] != djm1_low[di[x]]:
                        v.append(
                            f"d_{i} d_{j} != d_{j-1} d_{i} at level {p}, simplex {x}"
                        )
                        break
    # s_i s_j = s_{j+1} s_i for i <= j
    for p in range(n - 1):
        for j in range(p + 1):
            for i in range(j + 1):
                sj = space.degeneracy(p, j)
                si_high = space.degeneracy(p + 1, i)
                si = space.degeneracy(p, i)
                sj1_high = space.degeneracy(p + 1, j + 1)
                for x in range(space.size(p)):
                    if si_high[sj[x]] != sj1_high[si[x]]:
                        v.append(
                            f"s_{i} s_{j} != s_{j+1} s_{i} at level {p}, simplex {x}"
                        )
                        break
    # mixed identities d_i s_j
    for p in range(n):
        for j in range(p + 1):
            sj = space.degeneracy(p, j)
            for i in range(p + 2):
                di = space.face(p + 1, i)
                for x in range(space.size(p)):
                    lhs = di[sj[x]]
                    if i == j or i == j + 1:
                        rhs = x
                        law = f"d_{i} s_{j} = id"
                    elif i < j:
                        rhs = space.degeneracy(p - 1, j - 1)[space.face(p, i)[x]]
                        law = f"d_{i} s_{j} = s_{j-1} d_{i}"
                    else:
                        rhs = space.degeneracy(p - 1, j)[space.face(p, i - 1)[x]]
                        law = f"d_{i} s_{j} = s_{j} d_{i-1}"
                    if lhs != rhs:
                        v.append(f"{law} fails at level {p}, simplex {x}")
                        break
    return ValidationReport(v)


def is_connected(space: PointedSimplicialSet) -> bool:
    """True when every vertex reaches the basepoint through 1-simplices."""
    if space.size(0) == 1:
        return True
    if space.top_level < 1:
        return False
    uf = _UnionFind(space.size(0))
    d0, d1 = space.face(1, 0), space.face(1, 1)
    for e in range(space.size(1)):
        uf.union(d0[e], d1[e])
    root = uf.find(space.basepoints[0])
    return all(uf.find(x) == root for x in range(space.size(0)))


def are_isomorphic(x: PointedSimplicialSet, y: PointedSimplicialSet) -> bool:
    """Decide level-table isomorphism by deterministic backtracking.

    An isomorphism is a family of basepoint-preserving bijections per level
    commuting with all face and degeneracy maps.  Degenerate simplices are
    forced by lower levels, so only non-degenerate ones are searched.
    """
    if x.level_sizes != y.level_sizes or x.top_level != y.top_level:
        return False
    n = x.top_level

    def extend(p, maps):
        if p > n:
            return True
        size = x.size(p)
        forced = {x.basepoints[p]: y.basepoints[p]}
        if p > 0:
            prev = maps[p - 1]
            for i in range(p):
                sx, sy = x.degeneracy(p - 1, i), y.degeneracy(p - 1, i)
                for a in range(x.size(p - 1)):
                    img = sy[prev[a]]
                    known = forced.get(sx[a])
                    if known is not None and known != img:
                        return False
                    forced[sx[a]] = img
        if len(set(forced.values())) != len(forced):
            return False
        free = [a for a in range(size) if a not in forced]
        taken = set(forced.values())
        candidates = [b for b in range(size) if b not in taken]

        def faces_ok(a, b):
            if p == 0:
                return True
            prev = maps[p - 1]
            for i in range(p + 1):
                if prev[x.face(p, i)[a]] != y.face(p, i)[b]:
                    return False
            return True

        def assign(k, current, used):
            if k == len(free):
                maps.append(current.copy())
                if extend(p + 1, maps):
                    return True
                maps.pop()
                return False
            a = free[k]
            for b in candidates:
                if b in used or not faces_ok(a, b):
                    continue
                current[a] = b
                used.add(b)
                if assign(k + 1, current, used):
                    return True
                used.discard(b)
                del current[a]
            return False

        working = dict(forced)
        for a, b in forced.items():
            if not faces_ok(a, b):
                return False
        return assign(0, working, set(working.values()))

    return extend(0, [])
