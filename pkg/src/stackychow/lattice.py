"""Exact integer and rational linear algebra.

Everything here works over Z or Q with arbitrary precision (Python ints and
fractions.Fraction); no floating point anywhere.  The normal forms track their
unimodular transforms so callers can change bases, lift representatives and
solve linear systems exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd


class IntMatrix:
  """Immutable integer matrix, row-major."""

  __slots__ = ("rows", "cols", "entries")

  def __init__(self, entries):
    rows = tuple(tuple(int(a) for a in row) for row in entries)
    if rows:
      width = len(rows[0])
      if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    else:
      width = 0
    object.__setattr__(self, "rows", len(rows))
    object.__setattr__(self, "cols", width)
    object.__setattr__(self, "entries", rows)

  def __setattr__(self, name, value):
    raise AttributeError("IntMatrix is immutable")

  @staticmethod
  def identity(n):
    return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

  @staticmethod
  def zeros(m, n):
    return IntMatrix([[0] * n for _ in range(m)])

  def __getitem__(self, ij):
    i, j = ij
    return self.entries[i][j]

  def row(self, i):
    return self.entries[i]

  def col(self, j):
    return tuple(r[j] for r in self.entries)

  def transpose(self):
    return IntMatrix([self.col(j) for j in range(self.cols)])

  def mul(self, other):
    if self.cols != other.rows:
      raise ValueError("shape mismatch")
    ot = other.transpose().entries
    return IntMatrix(
        [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.entries])

  def mul_vec(self, v):
    if len(v) != self.cols:
      raise ValueError("shape mismatch")
    return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

  def hstack(self, other):
    if self.rows != other.rows:
      raise ValueError("shape mismatch")
    return IntMatrix([r1 + r2 for r1, r2 in zip(self.entries, other.entries)])

  def vstack(self, other):
    if self.cols != other.cols and self.rows and other.rows:
      raise ValueError("shape mismatch")
    return IntMatrix(self.entries + other.entries)

  def det(self):
    """Determinant by fraction-free Bareiss elimination."""
    if self.rows != self.cols:
      raise ValueError("not square")
    n = self.rows
    if n == 0:
      return 1
    m = [list(r) for r in self.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
      if m[k][k] == 0:
        for i in range(k + 1, n):
          if m[i][k] != 0:
            m[k], m[i] = m[i], m[k]
            sign = -sign
            break
        else:
          return 0
      for i in range(k + 1, n):
        for j in range(k + 1, n):
          m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        m[i][k] = 0
      prev = m[k][k]
    return sign * m[n - 1][n - 1]

  def __eq__(self, other):
    return isinstance(other, IntMatrix) and self.entries == other.entries

  def __hash__(self):
    return hash(self.entries)

  def __repr__(self):
    return "IntMatrix(%r)" % (list(map(list, self.entries)),)


@dataclass(frozen=True)
class SnfDecomposition:
  """U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ..."""

  u: IntMatrix
  d: IntMatrix
  v: IntMatrix
  u_inv: IntMatrix
  v_inv: IntMatrix

  @property
  def diagonal(self):
    k = min(self.d.rows, self.d.cols)
    return tuple(self.d[i, i] for i in range(k))

  @property
  def invariant_factors(self):
    return tuple(a for a in self.diagonal if a > 1)

  @property
  def rank(self):
    return sum(1 for a in self.diagonal if a != 0)


def smith_normal_form(m: IntMatrix) -> SnfDecomposition:
  """Smith normal form with tracked transforms.

  Pivot selection: smallest nonzero absolute value in the remaining block,
  first occurrence in row-major order.  Diagonal entries are made nonnegative.
  """
  a = [list(r) for r in m.entries]
  nr, nc = m.rows, m.cols
  u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
  ui = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
  v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]
  vi = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

  def row_swap(i, j):
    a[i], a[j] = a[j], a[i]
    u[i], u[j] = u[j], u[i]
    for r in ui:
      r[i], r[j] = r[j], r[i]

  def row_addmul(i, j, c):
    # row_i += c*row_j; inverse: col_j -= c*col_i
    a[i] = [x + c * y for x, y in zip(a[i], a[j])]
    u[i] = [x + c * y for x, y in zip(u[i], u[j])]
    for r in ui:
      r[j] -= c * r[i]

  def row_neg(i):
    a[i] = [-x for x in a[i]]
    u[i] = [-x for x in u[i]]
    for r in ui:
      r[i] = -r[i]

  def col_swap(i, j):
    for r in a:
      r[i], r[j] = r[j], r[i]
    for r in v:
      r[i], r[j] = r[j], r[i]
    vi[i], vi[j] = vi[j], vi[i]

  def col_addmul(j, i, c):
    # col_j += c*col_i; inverse: row_i -= c*row_j
    for r in a:
      r[j] += c * r[i]
    for r in v:
      r[j] += c * r[i]
    vi[i] = [x - c * y for x, y in zip(vi[i], vi[j])]

  def pivot_search(t):
    best = None
    for i in range(t, nr):
      for j in range(t, nc):
        x = a[i][j]
        if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
          best = (i, j)
    return best

  t = 0
  limit = min(nr, nc)
  while t < limit:
    pos = pivot_search(t)
    if pos is None:
      break
    pi, pj = pos
    if pi != t:
      row_swap(t, pi)
    if pj != t:
      col_swap(t, pj)
    while True:
      dirty = False
      for i in range(t + 1, nr):
        if a[i][t] != 0:
          q = a[i][t] // a[t][t]
          row_addmul(i, t, -q)
          if a[i][t] != 0:
            row_swap(t, i)
            dirty = True
      for j in range(t + 1, nc):
        if a[t][j] != 0:
          q = a[t][j] // a[t][t]
          col_addmul(j, t, -q)
          if a[t][j] != 0:
            col_swap(t, j)
            dirty = True
      if not dirty:
        break
    t += 1

  # Divisibility chain: fold offending later entries into earlier ones.
  while True:
    fixed = True
    for i in range(limit - 1):
      x, y = a[i][i], a[i + 1][i + 1]
      if x != 0 and y % x != 0:
        col_addmul(i, i + 1, 1)
        # re-clear the 2x2 block with euclidean steps
        while a[i + 1][i] != 0:
          if a[i][i] != 0:
            q = a[i + 1][i] // a[i][i]
            row_addmul(i + 1, i, -q)
          if a[i + 1][i] != 0:
            row_swap(i, i + 1)
        if a[i][i + 1] != 0:
          q = a[i][i + 1] // a[i][i]
          col_addmul(i + 1, i, -q)
        fixed = False
    if fixed:
      break

  for i in range(limit):
    if a[i][i] < 0:
      row_neg(i)

  return SnfDecomposition(IntMatrix(u), IntMatrix(a), IntMatrix(v),
                          IntMatrix(ui), IntMatrix(vi))


def row_hermite(rows, width):
  """Canonical row Hermite form of the integer row span.

  Returns a list of pivot rows sorted by pivot column, pivots positive,
  entries above each pivot reduced into [0, pivot).
  """
  pivots = {}

  def insert(row):
    r = list(row)
    while True:
      j = next((k for k, x in enumerate(r) if x != 0), None)
      if j is None:
        return
      if j not in pivots:
        if r[j] < 0:
          r = [-x for x in r]
        pivots[j] = r
        return
      p = pivots[j]
      g, s, t = _xgcd(p[j], r[j])
      new_p = [s * x + t * y for x, y in zip(p, r)]
      r = [(p[j] // g) * y - (r[j] // g) * x for x, y in zip(p, r)]
      pivots[j] = new_p

  for row in rows:
    insert(row)
  cols = sorted(pivots)
  # reduce entries above pivots
  for j in cols:
    p = pivots[j]
    for j2 in cols:
      if j2 <= j:
        continue
      p2 = pivots[j2]
      q = p[j2] // p2[j2]
      if q:
        pivots[j] = [x - q * y for x, y in zip(pivots[j], p2)]
        p = pivots[j]
  return [tuple(pivots[j]) for j in cols]


class ZReducer:
  """Reduce integer vectors to canonical residues modulo a row span."""

  def __init__(self, rows, width):
    self.width = width
    self.hnf = row_hermite(rows, width)
    self._piv = [(next(k for k, x in enumerate(r) if x != 0), r) for r in self.hnf]

  def reduce(self, vec):
    v = list(vec)
    for j, row in self._piv:
      q = v[j] // row[j]
      if q:
        v = [x - q * y for x, y in zip(v, row)]
    return tuple(v)

  def contains(self, vec):
    return all(x == 0 for x in self.reduce(vec))

  def key(self):
    return tuple(self.hnf)


class QReducer:
  """Reduce rational vectors modulo a Q-row span (RREF based)."""

  def __init__(self, rows, width):
    self.width = width
    self.rref = []
    piv = {}
    for row in rows:
      r = [Fraction(x) for x in row]
      for j, prow in piv.items():
        if r[j]:
          c = r[j]
          r = [x - c * y for x, y in zip(r, prow)]
      j = next((k for k, x in enumerate(r) if x != 0), None)
      if j is None:
        continue
      c = r[j]
      r = [x / c for x in r]
      for j2, prow in piv.items():
        if prow[j]:
          c = prow[j]
          piv[j2] = [x - c * y for x, y in zip(prow, r)]
      piv[j] = r
    self._piv = sorted(piv.items())
    self.rref = [tuple(r) for _, r in self._piv]

  def reduce(self, vec):
    v = [Fraction(x) for x in vec]
    for j, row in self._piv:
      if v[j]:
        c = v[j]
        v = [x - c * y for x, y in zip(v, row)]
    return tuple(v)

  def contains(self, vec):
    return all(x == 0 for x in self.reduce(vec))

  def key(self):
    return tuple(self.rref)

  @property
  def rank(self):
    return len(self._piv)


def _xgcd(a, b):
  """g, s, t with s*a + t*b = g = gcd(a, b), g >= 0."""
  old_r, r = a, b
  old_s, s = 1, 0
  old_t, t = 0, 1
  while r:
    q = old_r // r
    old_r, r = r, old_r - q * r
    old_s, s = s, old_s - q * s
    old_t, t = t, old_t - q * t
  if old_r < 0:
    old_r, old_s, old_t = -old_r, -old_s, -old_t
  return old_r, old_s, old_t


def solve_integer(a: IntMatrix, b):
  """One integer solution x of a*x = b, or None.

  Uses the Smith form: with U a V = D the system becomes D y = U b,
  x = V y.
  """
  if len(b) != a.rows:
    raise ValueError("shape mismatch")
  snf = smith_normal_form(a)
  c = snf.u.mul_vec(b)
  y = [0] * a.cols
  k = min(a.rows, a.cols)
  for i in range(a.rows):
    d = snf.d[i, i] if i < k else 0
    if d == 0:
      if c[i] != 0:
        return None
    else:
      if c[i] % d != 0:
        return None
      y[i] = c[i] // d
  return snf.v.mul_vec(y)


def solve_rational(columns, b):
  """Solve sum_j q_j * col_j = b over Q for linearly independent columns.

  columns: list of equal-length rational vectors.  Returns the unique
  coefficient tuple, or None if b is outside the column span.  Raises
  ValueError when the columns are dependent.
  """
  k = len(columns)
  if k == 0:
    return () if all(Fraction(x) == 0 for x in b) else None
  m = len(columns[0])
  aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(b[i])]
         for i in range(m)]
  pivots = []
  row = 0
  for col in range(k):
    sel = next((i for i in range(row, m) if aug[i][col] != 0), None)
    if sel is None:
      raise ValueError("columns not linearly independent")
    aug[row], aug[sel] = aug[sel], aug[row]
    pv = aug[row][col]
    aug[row] = [x / pv for x in aug[row]]
    for i in range(m):
      if i != row and aug[i][col]:
        c = aug[i][col]
        aug[i] = [x - c * y for x, y in zip(aug[i], aug[row])]
    pivots.append(col)
    row += 1
  for i in range(row, m):
    if aug[i][k] != 0:
      return None
  return tuple(aug[i][k] for i in range(k))


def solve_rational_nonneg(columns, b):
  """Unique rational solution with all coordinates >= 0, else None.

  pre: columns linearly independent over Q (raises ValueError otherwise).
  """
  q = solve_rational(columns, b)
  if q is None:
    return None
  if any(x < 0 for x in q):
    return None
  return q


def rational_rank(rows):
  """Rank over Q of a list of rational row vectors."""
  if not rows:
    return 0
  return QReducer(rows, len(rows[0])).rank


class AbGroup:
  """Finitely generated abelian group presented as Z^n modulo a row span."""

  def __init__(self, ngens, relations=None):
    self.ngens = int(ngens)
    if relations is None:
      relations = IntMatrix([])
    if not isinstance(relations, IntMatrix):
      relations = IntMatrix(relations)
    if relations.rows and relations.cols != self.ngens:
      raise ValueError("relation width does not match generator count")
    self.relations = relations
    s = relations.transpose() if relations.rows else IntMatrix([[ ] for _ in range(self.ngens)])
    # SNF of the n x k matrix whose columns are the relations.
    if relations.rows:
      snf = smith_normal_form(s)
      u = [list(r) for r in snf.u.entries]
      ui = [list(r) for r in snf.u_inv.entries]
      k = min(self.ngens, relations.rows)
      diag = [snf.d[i, i] if i < k else 0 for i in range(self.ngens)]
    else:
      u = [[1 if i == j else 0 for j in range(self.ngens)] for i in range(self.ngens)]
      ui = [[1 if i == j else 0 for j in range(self.ngens)] for i in range(self.ngens)]
      diag = [0] * self.ngens
    # sign-normalize rows acting on free coordinates so canonical classes of
    # standard generators come out with a deterministic, positive-leading sign
    for j, d in enumerate(diag):
      if d == 0:
        lead = next((x for x in u[j] if x != 0), None)
        if lead is not None and lead < 0:
          u[j] = [-x for x in u[j]]
          for r in ui:
            r[j] = -r[j]
    self._u = IntMatrix(u)
    self._u_inv = IntMatrix(ui)
    self.diagonal = tuple(diag)
    self.invariant_factors = tuple(d for d in diag if d > 1)
    self.free_rank = sum(1 for d in diag if d == 0)
    self.torsion_positions = tuple(j for j, d in enumerate(diag) if d > 1)
    self.free_positions = tuple(j for j, d in enumerate(diag) if d == 0)
    self._key = (self.ngens, self.relations.entries)

  def __eq__(self, other):
    return isinstance(other, AbGroup) and self._key == other._key

  def __hash__(self):
    return hash(self._key)

  def __repr__(self):
    parts = ["Z"] * self.free_rank + ["Z/%d" % d for d in self.invariant_factors]
    return "AbGroup(%s)" % (" + ".join(parts) if parts else "0",)

  @property
  def u(self):
    """Change of basis to canonical coordinates: c = u * x."""
    return self._u

  @property
  def u_inv(self):
    return self._u_inv

  # -- elements ------------------------------------------------------------

  def _reduce(self, coords):
    out = []
    for c, d in zip(coords, self.diagonal):
      if d == 0:
        out.append(c)
      elif d == 1:
        out.append(0)
      else:
        out.append(c % d)
    return tuple(out)

  def element(self, coords):
    """Canonical element from generator coordinates."""
    coords = tuple(int(c) for c in coords)
    if len(coords) != self.ngens:
      raise ValueError("coordinate length mismatch")
    return AbElement(self, self._reduce(self._u.mul_vec(coords)))

  def zero(self):
    return AbElement(self, (0,) * self.ngens)

  def generators(self):
    eye = IntMatrix.identity(self.ngens)
    return tuple(self.element(eye.row(i)) for i in range(self.ngens))

  def from_canonical(self, coords):
    return AbElement(self, self._reduce(tuple(coords)))

  def is_trivial(self):
    return self.free_rank == 0 and not self.invariant_factors

  def order(self):
    if self.free_rank:
      raise ValueError("infinite group")
    n = 1
    for d in self.invariant_factors:
      n *= d
    return n

  def enumerate_elements(self):
    """All elements of a finite group, deterministic order."""
    if self.free_rank:
      raise ValueError("infinite group")
    ranges = [range(d) if d > 1 else range(1) for d in self.diagonal]
    out = []
    def rec(i, acc):
      if i == self.ngens:
        out.append(AbElement(self, tuple(acc)))
        return
      for c in ranges[i]:
        rec(i + 1, acc + [c])
    rec(0, [])
    return out

  # -- reduced (torsion, free) views for isomorphism transport --------------

  def reduced_coords(self, el):
    t = tuple(el.coords[j] for j in self.torsion_positions)
    f = tuple(el.coords[j] for j in self.free_positions)
    return t, f

  def from_reduced(self, torsion, free):
    coords = [0] * self.ngens
    for j, c in zip(self.torsion_positions, torsion):
      coords[j] = c
    for j, c in zip(self.free_positions, free):
      coords[j] = c
    return self.from_canonical(coords)


class AbElement:
  """Element in canonical coordinates (SNF basis, torsion residues reduced)."""

  __slots__ = ("group", "coords")

  def __init__(self, group, coords):
    object.__setattr__(self, "group", group)
    object.__setattr__(self, "coords", tuple(coords))

  def __setattr__(self, name, value):
    raise AttributeError("AbElement is immutable")

  def rep(self):
    """A representative in generator coordinates."""
    return self.group._u_inv.mul_vec(self.coords)

  def __add__(self, other):
    self._chk(other)
    return self.group.from_canonical(
        tuple(a + b for a, b in zip(self.coords, other.coords)))

  def __sub__(self, other):
    self._chk(other)
    return self.group.from_canonical(
        tuple(a - b for a, b in zip(self.coords, other.coords)))

  def __neg__(self):
    return self.group.from_canonical(tuple(-a for a in self.coords))

  def scale(self, k):
    return self.group.from_canonical(tuple(k * a for a in self.coords))

  def is_zero(self):
    return all(c == 0 for c in self.coords)

  def _chk(self, other):
    if self.group is not other.group and self.group != other.group:
      raise ValueError("elements of different groups")

  def __eq__(self, other):
    return (isinstance(other, AbElement) and self.group == other.group
            and self.coords == other.coords)

  def __hash__(self):
    return hash((self.group._key, self.coords))

  def __repr__(self):
    return "AbElement(%r)" % (self.coords,)


def coker(m: IntMatrix) -> AbGroup:
  """Z^cols modulo the row span of m."""
  return AbGroup(m.cols, m)


def quotient(group: AbGroup, extra_relations) -> AbGroup:
  """Quotient by extra relations given in generator coordinates."""
  if not isinstance(extra_relations, IntMatrix):
    extra_relations = IntMatrix(extra_relations)
  if group.relations.rows:
    rel = group.relations.vstack(extra_relations)
  else:
    rel = extra_relations
  return AbGroup(group.ngens, rel)


def canon(group: AbGroup, coords) -> AbElement:
  return group.element(coords)


def hom_preimage(f: IntMatrix, g_src: AbGroup, g_dst: AbGroup, y: AbElement):
  """Some x in g_src with f(x) = y in g_dst, or None.

  f maps generator coordinates of g_src to generator coordinates of g_dst
  (columns are images of source generators).
  """
  if f.rows != g_dst.ngens or f.cols != g_src.ngens:
    raise ValueError("shape mismatch")
  if y.group != g_dst:
    raise ValueError("target element in wrong group")
  target = list(y.rep())
  if g_dst.relations.rows:
    combined = f.hstack(g_dst.relations.transpose())
  else:
    combined = f
  sol = solve_integer(combined, target)
  if sol is None:
    return None
  return g_src.element(sol[:g_src.ngens])


def lattice_membership_reducer(rows, width):
  """ZReducer for the integer row span (convenience constructor)."""
  return ZReducer(rows, width)


def frac(x) -> Fraction:
  """Fractional part in [0, 1)."""
  x = Fraction(x)
  return x - floor(x)


def lcm(a, b):
  return abs(a * b) // gcd(a, b) if a and b else 0


def primitive(vec):
  """Scale a rational vector to a primitive integer vector, first nonzero > 0."""
  fracs = [Fraction(x) for x in vec]
  if all(x == 0 for x in fracs):
    return tuple(0 for _ in fracs)
  denom = 1
  for x in fracs:
    denom = denom * x.denominator // gcd(denom, x.denominator)
  ints = [int(x * denom) for x in fracs]
  g = 0
  for x in ints:
    g = gcd(g, x)
  ints = [x // g for x in ints]
  lead = next(x for x in ints if x != 0)
  if lead < 0:
    ints = [-x for x in ints]
  return tuple(ints)
