"""Labeled matrices over a partial field.

A LabeledMatrix carries disjoint row/column label sets and immutable entries.
Everything downstream (pivoting, rank, normalization, matroid extraction)
works with labels, never positions; positions only affect determinant signs,
which no matroid-level consumer looks at.
"""

import itertools
from dataclasses import dataclass

from pfmat.pfield import PfError, make_partial_field


class MatrixError(Exception):
    pass


@dataclass(frozen=True)
class PCertificate:
    """Outcome of a P-matrix check; witness is the offending (rows, cols) pair."""
    verdict: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.verdict


class LabeledMatrix:

    __slots__ = ("field", "rows", "cols", "entries", "_rindex", "_cindex")

    def __init__(self, field, rows, cols, entries):
        rows = tuple(rows)
        cols = tuple(cols)
        if set(rows) & set(cols):
            raise MatrixError("row and column labels must be disjoint")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise MatrixError("duplicate labels")
        grid = []
        for r in entries:
            grid.append(tuple(field.coerce(v) if not isinstance(v, str)
                              else field.parse_value(v) for v in r))
        grid = tuple(grid)
        if len(grid) != len(rows) or any(len(r) != len(cols) for r in grid):
            raise MatrixError("entry grid shape does not match labels")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = grid
        self._rindex = {x: i for i, x in enumerate(rows)}
        self._cindex = {y: j for j, y in enumerate(cols)}

    # -- basic access -------------------------------------------------------

    def entry(self, x, y):
        return self.entries[self._rindex[x]][self._cindex[y]]

    def labels(self):
        return self.rows + self.cols

    def shape(self):
        return (len(self.rows), len(self.cols))

    def __eq__(self, other):
        return (isinstance(other, LabeledMatrix) and self.field is other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field.name, self.rows, self.cols,
                     tuple(tuple(v.payload for v in row) for row in self.entries)))

    def __repr__(self):
        return "LabeledMatrix(%s, %r x %r)" % (self.field.name, self.rows, self.cols)

    def pretty(self):
        out = []
        for i, x in enumerate(self.rows):
            out.append("%s: %s" % (x, " ".join(self.field.format_value(v)
                                               for v in self.entries[i])))
        return "\n".join(out)

    # -- submatrices --------------------------------------------------------

    def submatrix(self, rowset, colset):
        rowset = tuple(rowset)
        colset = tuple(colset)
        grid = [[self.entry(x, y) for y in colset] for x in rowset]
        return LabeledMatrix(self.field, rowset, colset, grid)

    def block(self, labels):
        """A[Z]: keep rows and columns whose labels lie in Z (stored order)."""
        zs = set(labels)
        return self.submatrix([x for x in self.rows if x in zs],
                              [y for y in self.cols if y in zs])

    def minus(self, labels):
        """A - Z: drop rows and columns whose labels lie in Z."""
        zs = set(labels)
        return self.submatrix([x for x in self.rows if x not in zs],
                              [y for y in self.cols if y not in zs])

    def transpose(self):
        grid = [[self.entries[i][j] for i in range(len(self.rows))]
                for j in range(len(self.cols))]
        return LabeledMatrix(self.field, self.cols, self.rows, grid)

    # -- determinants -------------------------------------------------------

    def determinant(self, rowset=None, colset=None):
        """Exact determinant of A[rowset, colset] in the ambient ring.

        Sign follows the stored label order of the arguments.
        """
        rowset = self.rows if rowset is None else tuple(rowset)
        colset = self.cols if colset is None else tuple(colset)
        if len(rowset) != len(colset):
            raise MatrixError("determinant needs a square selection")
        grid = [[self.entry(x, y) for y in colset] for x in rowset]
        n = len(grid)
        if n == 0:
            return self.field.one
        if n < 5:
            return _det_cofactor(self.field, grid)
        return _det_bareiss(self.field, grid)

    def all_square_subdets(self):
        """Determinants of every square submatrix, keyed by index masks.

        Returns {(rowmask, colmask): value}; computed bottom-up by Laplace
        expansion so each size reuses the previous one.
        """
        f = self.field
        m, n = self.shape()
        table = {(0, 0): f.one}
        rows_by_size = [list(itertools.combinations(range(m), s))
                        for s in range(min(m, n) + 1)]
        cols_by_size = [list(itertools.combinations(range(n), s))
                        for s in range(min(m, n) + 1)]
        for s in range(1, min(m, n) + 1):
            for rc in rows_by_size[s]:
                rmask = _mask(rc)
                r0 = rc[0]
                sub_rmask = rmask & ~(1 << r0)
                row = self.entries[r0]
                for cc in cols_by_size[s]:
                    acc = f.zero
                    sign = 1
                    for c in cc:
                        v = row[c]
                        if not v.is_zero():
                            minor = table[(sub_rmask, _mask(cc) & ~(1 << c))]
                            term = f.mul(v, minor)
                            acc = f.add(acc, term if sign > 0 else f.neg(term))
                        sign = -sign
                    table[(rmask, _mask(cc))] = acc
        return table

    def is_pmatrix(self):
        """Check every square subdeterminant for membership in the partial field.

        Scans by size, then row indices, then column indices, and reports the
        first violation, so the witness is the lexicographically least one
        regardless of how the work is scheduled.
        """
        f = self.field
        m, n = self.shape()
        table = {(0, 0): f.one}
        for s in range(1, min(m, n) + 1):
            for rc in itertools.combinations(range(m), s):
                rmask = _mask(rc)
                r0 = rc[0]
                sub_rmask = rmask & ~(1 << r0)
                row = self.entries[r0]
                for cc in itertools.combinations(range(n), s):
                    acc = f.zero
                    sign = 1
                    for c in cc:
                        v = row[c]
                        if not v.is_zero():
                            minor = table[(sub_rmask, _mask(cc) & ~(1 << c))]
                            term = f.mul(v, minor)
                            acc = f.add(acc, term if sign > 0 else f.neg(term))
                        sign = -sign
                    table[(rmask, _mask(cc))] = acc
                    if not f.contains(acc):
                        witness = (tuple(self.rows[i] for i in rc),
                                   tuple(self.cols[j] for j in cc))
                        return PCertificate(False, witness)
        return PCertificate(True)

    def rank(self):
        """Largest k admitting a nonsingular k x k submatrix."""
        f = self.field
        work = [list(row) for row in self.entries]
        m, n = len(work), len(work[0]) if work else 0
        rank = 0
        prev = f.one
        while rank < m and rank < n:
            pr = pc = -1
            for i in range(rank, m):
                for j in range(rank, n):
                    if not work[i][j].is_zero():
                        pr, pc = i, j
                        break
                if pr >= 0:
                    break
            if pr < 0:
                break
            work[rank], work[pr] = work[pr], work[rank]
            for row in work:
                row[rank], row[pc] = row[pc], row[rank]
            piv = work[rank][rank]
            for i in range(rank + 1, m):
                for j in range(rank + 1, n):
                    num = f.add(f.mul(work[i][j], piv),
                                f.neg(f.mul(work[i][rank], work[rank][j])))
                    work[i][j] = f.divexact(num, prev)
                work[i][rank] = f.zero
            prev = piv
            rank += 1
        return rank

    # -- pivoting -----------------------------------------------------------

    def pivot(self, x, y):
        """Exchange row label x with column label y (a basis exchange).

        Entry formula: the pivot cell becomes its inverse, the pivot row is
        scaled by the inverse, the pivot column by the negated inverse, and
        every remaining cell (u, v) becomes A[u,v] - A[u,y] A[x,y]^-1 A[x,v].
        """
        f = self.field
        a = self.entry(x, y)
        if a.is_zero() or not f.is_unit(a):
            raise MatrixError("pivot entry %s at (%s,%s) is not a unit"
                              % (f.format_value(a), x, y))
        ainv = f.inv(a)
        new_rows = tuple(y if r == x else r for r in self.rows)
        new_cols = tuple(x if c == y else c for c in self.cols)
        xi, yj = self._rindex[x], self._cindex[y]
        grid = []
        for i, u in enumerate(self.rows):
            row = []
            for j, v in enumerate(self.cols):
                if i == xi and j == yj:
                    row.append(ainv)
                elif i == xi:
                    row.append(f.mul(ainv, self.entries[i][j]))
                elif j == yj:
                    row.append(f.neg(f.mul(self.entries[i][j], ainv)))
                else:
                    row.append(f.add(self.entries[i][j],
                                     f.neg(f.mul(f.mul(self.entries[i][yj], ainv),
                                                 self.entries[xi][j]))))
            grid.append(row)
        return LabeledMatrix(f, new_rows, new_cols, grid)

    # -- support graph and scaling -----------------------------------------

    def support_graph(self):
        """Bipartite graph on rows + cols with an edge per nonzero entry."""
        adj = {v: [] for v in self.rows + self.cols}
        for i, x in enumerate(self.rows):
            for j, y in enumerate(self.cols):
                if not self.entries[i][j].is_zero():
                    adj[x].append(y)
                    adj[y].append(x)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    def default_forest(self):
        """Deterministic maximal spanning forest of the support graph."""
        adj = self.support_graph()
        forest = []
        seen = set()
        for start in sorted(adj):
            if start in seen or not adj[start]:
                continue
            seen.add(start)
            queue = [start]
            while queue:
                v = queue.pop(0)
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
                        edge = (v, w) if v in self._rindex else (w, v)
                        forest.append(edge)
        return tuple(sorted(forest))

    def normalize(self, forest=None):
        """Scaling-equivalent matrix with 1 in every forest position."""
        return self._normalize_scalars(forest)[0]

    def _normalize_scalars(self, forest=None):
        f = self.field
        if forest is None:
            forest = self.default_forest()
        forest = [tuple(e) for e in forest]
        adj = self.support_graph()
        support_edges = {(x, y) for x in self.rows for y in adj[x]}
        for (x, y) in forest:
            if x not in self._rindex or y not in self._cindex:
                raise MatrixError("forest edge %r is not (row, col)" % ((x, y),))
            if (x, y) not in support_edges:
                raise MatrixError("forest edge %r is outside the support" % ((x, y),))
        # acyclicity + maximality: per support component, edges = vertices - 1
        comp_count = 0
        verts_in_support = [v for v in adj if adj[v]]
        seen = set()
        for v in verts_in_support:
            if v in seen:
                continue
            comp_count += 1
            stack = [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        if len(forest) != len(verts_in_support) - comp_count or _has_cycle(forest):
            raise MatrixError("not a maximal spanning forest of the support graph")
        tree_adj = {}
        for (x, y) in forest:
            tree_adj.setdefault(x, []).append(y)
            tree_adj.setdefault(y, []).append(x)
        rscale = {x: f.one for x in self.rows}
        cscale = {y: f.one for y in self.cols}
        assigned = set()
        for start in sorted(tree_adj):
            if start in assigned:
                continue
            assigned.add(start)
            queue = [start]
            while queue:
                v = queue.pop(0)
                for w in sorted(tree_adj.get(v, ())):
                    if w in assigned:
                        continue
                    assigned.add(w)
                    queue.append(w)
                    x, y = (v, w) if v in self._rindex else (w, v)
                    a = self.entry(x, y)
                    if not f.is_unit(a):
                        raise MatrixError("forest entry at (%s,%s) is not a unit" % (x, y))
                    if w in self._cindex:
                        cscale[w] = f.inv(f.mul(rscale[x], a))
                    else:
                        rscale[w] = f.inv(f.mul(a, cscale[y]))
        grid = [[f.mul(f.mul(rscale[x], self.entry(x, y)), cscale[y])
                 for y in self.cols] for x in self.rows]
        return LabeledMatrix(f, self.rows, self.cols, grid), rscale, cscale

    def scaling_equivalent(self, other, with_certificate=False):
        """Decide scaling equivalence via a shared normal form.

        With a certificate, also returns the row/column unit scalings mapping
        self onto other, or None when inequivalent.
        """
        if self.field is not other.field:
            raise MatrixError("matrices live over different fields")
        if set(self.rows) != set(other.rows) or set(self.cols) != set(other.cols):
            raise MatrixError("scaling equivalence needs identical label sets")
        other = other.submatrix(self.rows, self.cols)
        if self.support_graph() != other.support_graph():
            return (False, None) if with_certificate else False
        forest = self.default_forest()
        na, ra, ca = self._normalize_scalars(forest)
        nb, rb, cb = other._normalize_scalars(forest)
        same = na == nb
        if not with_certificate:
            return same
        if not same:
            return False, None
        f = self.field
        rcert = {x: f.mul(f.inv(rb[x]), ra[x]) for x in self.rows}
        ccert = {y: f.mul(ca[y], f.inv(cb[y])) for y in self.cols}
        return True, (rcert, ccert)

    def applied(self, fn, field=None):
        """Entrywise image of the matrix, e.g. under a homomorphism."""
        sample = fn(self.field.zero)
        field = field if field is not None else sample.field
        grid = [[fn(v) for v in row] for row in self.entries]
        return LabeledMatrix(field, self.rows, self.cols, grid)


def _mask(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _has_cycle(edges):
    parent = {}

    def find(v):
        while parent.get(v, v) != v:
            parent[v] = parent.get(parent[v], parent[v])
            v = parent[v]
        return v

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return True
        parent[ra] = rb
    return False


def _det_cofactor(f, grid):
    n = len(grid)
    if n == 1:
        return grid[0][0]
    if n == 2:
        return f.add(f.mul(grid[0][0], grid[1][1]),
                     f.neg(f.mul(grid[0][1], grid[1][0])))
    acc = f.zero
    for j in range(n):
        v = grid[0][j]
        if v.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in grid[1:]]
        term = f.mul(v, _det_cofactor(f, minor))
        acc = f.add(acc, term if j % 2 == 0 else f.neg(term))
    return acc


def _det_bareiss(f, grid):
    """Fraction-free elimination; all divisions are exact in the ambient ring."""
    n = len(grid)
    a = [list(row) for row in grid]
    sign = 1
    prev = f.one
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return f.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = f.add(f.mul(a[i][j], a[k][k]),
                            f.neg(f.mul(a[i][k], a[k][j])))
                a[i][j] = f.divexact(num, prev)
            a[i][k] = f.zero
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else f.neg(det)


# ---------------------------------------------------------------------------
# graph utilities shared with the matroid side (plain adjacency dicts)

def graph_components(adj):
    comps = []
    seen = set()
    for start in sorted(adj):
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        queue = [start]
        while queue:
            v = queue.pop(0)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def graph_connected(adj):
    return len(graph_components(adj)) <= 1


def bfs_distances(adj, sources):
    dist = {s: 0 for s in sources if s in adj}
    queue = sorted(dist)
    while queue:
        v = queue.pop(0)
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def shortest_path(adj, source, targets):
    """Deterministic shortest path from source to the nearest of targets."""
    targets = set(targets)
    if source in targets:
        return (source,)
    prev = {source: None}
    queue = [source]
    while queue:
        v = queue.pop(0)
        for w in sorted(adj[v]):
            if w in prev:
                continue
            prev[w] = v
            if w in targets:
                path = [w]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return tuple(reversed(path))
            queue.append(w)
    return None


# ---------------------------------------------------------------------------
# text format

def format_matrix(A, name="A"):
    lines = ["pmatrix %s over %s" % (name, A.field.name),
             "rows " + " ".join(A.rows),
             "cols " + " ".join(A.cols)]
    for i, x in enumerate(A.rows):
        lines.append("%s: %s" % (x, " ".join(A.field.format_value(v)
                                             for v in A.entries[i])))
    return "\n".join(lines) + "\n"


def parse_matrix(text):
    """Parse the matrix text format; returns (name, LabeledMatrix)."""
    lines = [ln.rstrip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("pmatrix "):
        raise MatrixError("line 1: expected 'pmatrix <name> over <field-id>'")
    head = lines[0].split()
    if len(head) != 4 or head[2] != "over":
        raise MatrixError("line 1: expected 'pmatrix <name> over <field-id>'")
    name, field_id = head[1], head[3]
    try:
        field = make_partial_field(field_id)
    except PfError as e:
        raise MatrixError("line 1: %s" % e)
    if len(lines) < 3 or not lines[1].startswith("rows ") or not lines[2].startswith("cols "):
        raise MatrixError("lines 2-3: expected 'rows ...' then 'cols ...'")
    rows = tuple(lines[1].split()[1:])
    cols = tuple(lines[2].split()[1:])
    if len(lines) != 3 + len(rows):
        raise MatrixError("expected %d entry lines, found %d" % (len(rows), len(lines) - 3))
    grid = []
    for k, ln in enumerate(lines[3:]):
        label, _, rest = ln.partition(":")
        if label.strip() != rows[k]:
            raise MatrixError("line %d: expected row %r" % (k + 4, rows[k]))
        toks = rest.split()
        if len(toks) != len(cols):
            raise MatrixError("line %d: expected %d entries" % (k + 4, len(cols)))
        try:
            grid.append([field.parse_value(t) for t in toks])
        except (PfError, ValueError) as e:
            raise MatrixError("line %d: %s" % (k + 4, e))
    return name, LabeledMatrix(field, rows, cols, grid)
