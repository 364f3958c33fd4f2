"""Stacky fans, their boxes, and the box <-> group-element correspondence.

A stacky fan is a simplicial fan together with a distinguished integer point
on each ray, living in a finitely generated abelian group N = Z^d + torsion.
Elements of N are plain tuples: d free coordinates followed by one residue
per torsion factor.  The box of the fan indexes the twisted sectors of the
associated quotient stack; box addition realizes the local group law.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from stackychow.lattice import (
    IntMatrix,
    frac,
    rational_rank,
    smith_normal_form,
    solve_integer,
    solve_rational,
    solve_rational_nonneg,
)


@dataclass(frozen=True)
class BoxElement:
  """An element v of N whose free part lies in the half-open parallelepiped
  of its minimal cone.  q is the full-length coefficient vector of vbar on
  the rays; it is nonzero exactly on the rays of sigma_min."""

  v: tuple
  q: tuple
  sigma_min: tuple

  @property
  def age(self):
    return sum(self.q, Fraction(0))

  @property
  def is_identity(self):
    return all(c == 0 for c in self.v)

  def sort_key(self):
    return (self.sigma_min, self.q, self.v)

  def __repr__(self):
    return "BoxElement(v=%r)" % (self.v,)


@dataclass(frozen=True)
class GroupElement:
  """Phases of an element of G: gamma_i = exp(2 pi i gamma_phases[i]), and
  one phase per torsion factor for the s-coordinates."""

  gamma_phases: tuple
  s_phases: tuple


@dataclass(frozen=True)
class DoubleBox:
  """Ordered pairs of box elements lying in a common cone, with that cone."""

  pairs: tuple  # of (BoxElement, BoxElement, common cone ray tuple)

  def __contains__(self, pair):
    return any((a, b) == pair for a, b, _ in self.pairs)

  def __len__(self):
    return len(self.pairs)


class StackyFan:
  """d free coordinates, torsion orders, distinguished ray points, max cones.

  Rays are half-open data: b[i] has length d + len(torsion) with the torsion
  coordinates already reduced into [0, m_l).  Cones are given by their
  maximal members only, as 0-based ray index tuples; faces are implicit.
  """

  def __init__(self, d, torsion, rays, max_cones):
    self.d = int(d)
    self.torsion = tuple(int(m) for m in torsion)
    self.rays = tuple(tuple(int(c) for c in b) for b in rays)
    self.max_cones = tuple(
        tuple(sorted(set(int(i) for i in cone))) for cone in max_cones)
    if self.d < 0:
      raise ValueError("negative rank")
    width = self.d + len(self.torsion)
    for b in self.rays:
      if len(b) != width:
        raise ValueError("ray of wrong length")
    self._validation = None
    self._box = None
    self._box_by_v = None
    self._double = None

  @property
  def n(self):
    return len(self.rays)

  @property
  def r(self):
    return len(self.torsion)

  def free(self, i):
    return self.rays[i][:self.d]

  def tors(self, i):
    return self.rays[i][self.d:]

  def norm_element(self, v):
    """Canonical representative of an element of N."""
    v = tuple(int(c) for c in v)
    if len(v) != self.d + self.r:
      raise ValueError("element of wrong length")
    return v[:self.d] + tuple(
        c % m for c, m in zip(v[self.d:], self.torsion))

  def add_elements(self, v1, v2):
    return self.norm_element(tuple(a + b for a, b in zip(v1, v2)))

  def neg_element(self, v):
    return self.norm_element(tuple(-a for a in v))

  def zero_element(self):
    return (0,) * (self.d + self.r)

  # -- validation ------------------------------------------------------------

  def validate(self):
    """Check the stacky-fan hypotheses; returns a tuple of failure messages."""
    if self._validation is not None:
      return self._validation
    errors = []
    for m in self.torsion:
      if m < 2:
        errors.append("torsion order %d is smaller than 2" % m)
    for i, b in enumerate(self.rays):
      for l, (c, m) in enumerate(zip(self.tors(i), self.torsion)):
        if not 0 <= c < m:
          errors.append("ray %d: torsion coordinate %d out of range [0, %d)"
                        % (i + 1, c, m))
      if all(c == 0 for c in self.free(i)):
        errors.append("ray %d: free part is zero" % (i + 1,))
    for i in range(self.n):
      for j in range(i + 1, self.n):
        bi, bj = self.free(i), self.free(j)
        # positively parallel means b_i = c * b_j with c > 0, so the sign of
        # the direction matters: opposite rays are fine
        if any(c != 0 for c in bi) and _direction(bi) == _direction(bj):
          errors.append("rays %d and %d are positively parallel"
                        % (i + 1, j + 1))
    used = {i for cone in self.max_cones for i in cone}
    for cone in self.max_cones:
      for i in cone:
        if not 0 <= i < self.n:
          errors.append("cone %s: unknown ray index %d"
                        % (_cone_str(cone), i + 1))
    if any(not 0 <= i < self.n for cone in self.max_cones for i in cone):
      self._validation = tuple(errors)
      return self._validation
    for i in range(self.n):
      if i not in used:
        errors.append("ray %d is not used by any maximal cone" % (i + 1,))
    for cone in self.max_cones:
      vecs = [self.free(i) for i in cone]
      if rational_rank(vecs) != len(vecs):
        errors.append("cone %s: rays are linearly dependent (not simplicial)"
                      % _cone_str(cone))
    if rational_rank([self.free(i) for i in range(self.n)]) != self.d:
      errors.append("Sigma does not span N_R")
    if self.r:
      # the hypothesis is containment N_tors <= <b_1..b_n> inside N, which is
      # strictly stronger than the torsion parts generating N_tors: each
      # torsion generator must be hit with zero free part
      cols = [list(self.rays[i]) for i in range(self.n)]
      cols += [[m if j == self.d + l else 0 for j in range(self.d + self.r)]
               for l, m in enumerate(self.torsion)]
      mat = IntMatrix([[col[j] for col in cols]
                       for j in range(self.d + self.r)])
      for l in range(self.r):
        target = [0] * (self.d + self.r)
        target[self.d + l] = 1
        if solve_integer(mat, target) is None:
          errors.append("b_i do not generate N_tors")
          break
    if not errors:
      errors.extend(self._fan_axiom_errors())
    self._validation = tuple(errors)
    return self._validation

  def require_valid(self):
    report = self.validate()
    if report:
      raise ValueError("invalid stacky fan: " + "; ".join(report))

  def _fan_axiom_errors(self):
    errors = []
    for a in range(len(self.max_cones)):
      for b in range(a + 1, len(self.max_cones)):
        s, t = self.max_cones[a], self.max_cones[b]
        if not self._intersection_is_common_face(s, t):
          errors.append("cones %s and %s: intersection is not a common face"
                        % (_cone_str(s), _cone_str(t)))
    return errors

  def _cone_functionals(self, cone):
    """Linear functionals describing cone(b_i : i in cone) inside Q^d.

    Returns (equalities, inequalities): x lies in the cone iff every
    equality vanishes on x and every inequality is >= 0 on x.
    """
    cols = [self.free(i) for i in cone]
    k = len(cols)
    basis = list(cols)
    # complete to a basis of Q^d with standard vectors
    for j in range(self.d):
      e = tuple(1 if i == j else 0 for i in range(self.d))
      if rational_rank(basis + [e]) > len(basis):
        basis.append(e)
    m = [[Fraction(basis[j][i]) for j in range(self.d)] for i in range(self.d)]
    inv = _invert_rational(m)
    ineqs = [tuple(inv[j]) for j in range(k)]
    eqs = [tuple(inv[j]) for j in range(k, self.d)]
    return eqs, ineqs

  def _intersection_is_common_face(self, s, t):
    common = sorted(set(s) & set(t))
    gens = [tuple(Fraction(c) for c in self.free(i)) for i in s]
    eqs, ineqs = self._cone_functionals(t)
    for f, is_eq in [(f, True) for f in eqs] + [(f, False) for f in ineqs]:
      pos, neg, zero = [], [], []
      for g in gens:
        val = sum(a * b for a, b in zip(f, g))
        (zero if val == 0 else pos if val > 0 else neg).append((g, val))
      new = [g for g, _ in zero]
      if not is_eq:
        new += [g for g, _ in pos]
      for gp, vp in pos:
        for gn, vn in neg:
          combo = tuple(vp * a - vn * b for a, b in zip(gn, gp))
          if any(c != 0 for c in combo):
            new.append(combo)
      gens = [tuple(Fraction(c) for c in _direction(g)) for g in new]
      gens = list(dict.fromkeys(gens))
    cols = [self.free(i) for i in common]
    for g in gens:
      if not common:
        if any(c != 0 for c in g):
          return False
      elif solve_rational_nonneg(cols, g) is None:
        return False
    return True

  # -- cones -----------------------------------------------------------------

  def minimal_cone(self, vbar):
    """Ray set of the smallest cone containing vbar, or None if outside."""
    vbar = tuple(Fraction(c) for c in vbar)
    if all(c == 0 for c in vbar):
      return ()
    for cone in self.max_cones:
      cols = [self.free(i) for i in cone]
      q = solve_rational_nonneg(cols, vbar)
      if q is not None:
        return tuple(i for i, c in zip(cone, q) if c > 0)
    return None

  def has_common_cone(self, ray_set):
    ray_set = set(ray_set)
    return any(ray_set <= set(cone) for cone in self.max_cones)

  # -- box -------------------------------------------------------------------

  def box_of_cone(self, cone):
    """Box elements of one cone: parallelepiped points crossed with torsion."""
    cone = tuple(sorted(cone))
    cols = [self.free(i) for i in cone]
    k = len(cols)
    free_points = []
    if k == 0:
      free_points.append(((0,) * self.d, ()))
    else:
      mat = IntMatrix([[cols[j][i] for j in range(k)] for i in range(self.d)])
      snf = smith_normal_form(mat)
      diag = snf.diagonal
      if len(diag) < k or any(dj == 0 for dj in diag):
        raise ValueError("cone %s: rays are linearly dependent (not simplicial)"
                         % _cone_str(cone))
      reps = [()]
      for dj in diag:
        reps = [r + (x,) for r in reps for x in range(dj)]
      for rep in reps:
        y = tuple(rep) + (0,) * (self.d - k)
        x = snf.u_inv.mul_vec(y)
        qq = solve_rational(cols, x)
        qfrac = tuple(frac(c) for c in qq)
        point = tuple(
            sum((qi * ci for qi, ci in zip(qfrac, (col[i] for col in cols))),
                Fraction(0)) for i in range(self.d))
        assert all(p.denominator == 1 for p in point)
        free_points.append((tuple(int(p) for p in point), qfrac))
    out = []
    seen = set()
    for point, qfrac in free_points:
      if point in seen:
        continue
      seen.add(point)
      qfull = [Fraction(0)] * self.n
      for i, qi in zip(cone, qfrac):
        qfull[i] = qi
      sigma = tuple(i for i in cone if qfull[i] > 0)
      for tors in _torsion_tuples(self.torsion):
        v = point + tors
        out.append(BoxElement(v, tuple(qfull), sigma))
    return out

  def box(self):
    """All box elements, identity first, then sorted by (cone, q, torsion)."""
    if self._box is None:
      self.require_valid()
      by_v = {}
      for cone in self.max_cones:
        for el in self.box_of_cone(cone):
          by_v.setdefault(el.v, el)
      if not self.max_cones:
        for tors in _torsion_tuples(self.torsion):
          v = (0,) * self.d + tors
          by_v.setdefault(v, BoxElement(v, (Fraction(0),) * self.n, ()))
      els = sorted(by_v.values(), key=BoxElement.sort_key)
      identity = [e for e in els if e.is_identity]
      rest = [e for e in els if not e.is_identity]
      self._box = tuple(identity + rest)
      self._box_by_v = {e.v: e for e in self._box}
    return self._box

  def box_lookup(self, v):
    self.box()
    v = self.norm_element(v)
    if v not in self._box_by_v:
      raise ValueError("%r is not a box element" % (v,))
    return self._box_by_v[v]

  def box_index(self, el):
    return self.box().index(el)

  def box_add(self, v1: BoxElement, v2: BoxElement):
    """Box addition: the group law of N(sigma) on box representatives."""
    union = sorted(set(v1.sigma_min) | set(v2.sigma_min))
    if not self.has_common_cone(union):
      raise ValueError("no common cone")
    total = self.add_elements(v1.v, v2.v)
    for i in range(self.n):
      if v1.q[i] + v2.q[i] >= 1:
        total = self.add_elements(total, self.neg_element(self.rays[i]))
    out = self.box_lookup(total)
    assert out.q == tuple(frac(a + b) for a, b in zip(v1.q, v2.q))
    return out

  def box_inverse(self, v: BoxElement):
    """The box element v' of the same cone with box_add(v, v') = identity.

    Not the lookup of -v: the inverse within Box(sigma(vbar)) is
    sum(b_i for rays of sigma(vbar)) - v, which keeps the support."""
    total = self.neg_element(v.v)
    for i in v.sigma_min:
      total = self.add_elements(total, self.rays[i])
    return self.box_lookup(total)

  # -- group correspondence ----------------------------------------------------

  def group_element(self, v: BoxElement):
    s = []
    for l, m in enumerate(self.torsion):
      drift = frac(-sum((qi * self.tors(i)[l] for i, qi in enumerate(v.q)),
                        Fraction(0)))
      p = v.v[self.d + l]
      s.append((drift + p) / m)
    return GroupElement(tuple(v.q), tuple(s))

  def box_from_group(self, g: GroupElement):
    q = tuple(Fraction(c) for c in g.gamma_phases)
    if len(q) != self.n or len(g.s_phases) != self.r:
      raise ValueError("phase vector of wrong length")
    if any(not 0 <= c < 1 for c in q):
      raise ValueError("phase relations violated: gamma phase out of [0,1)")
    support = tuple(i for i, c in enumerate(q) if c != 0)
    if not self.has_common_cone(support):
      raise ValueError("does not fix a point of Z")
    vbar = []
    for j in range(self.d):
      val = sum((qi * self.free(i)[j] for i, qi in enumerate(q)), Fraction(0))
      if val.denominator != 1:
        raise ValueError("phase relations violated: nonintegral point")
      vbar.append(int(val))
    tors = []
    for l, m in enumerate(self.torsion):
      drift = frac(-sum((qi * self.tors(i)[l] for i, qi in enumerate(q)),
                        Fraction(0)))
      p = Fraction(g.s_phases[l]) * m - drift
      if p.denominator != 1 or not 0 <= p < m:
        raise ValueError("phase relations violated: bad s phase")
      tors.append(int(p))
    return self.box_lookup(tuple(vbar) + tuple(tors))

  # -- double box --------------------------------------------------------------

  def double_box(self):
    if self._double is None:
      els = self.box()
      pairs = []
      for a in els:
        for b in els:
          union = tuple(sorted(set(a.sigma_min) | set(b.sigma_min)))
          if self.has_common_cone(union):
            pairs.append((a, b, union))
      self._double = DoubleBox(tuple(pairs))
    return self._double

  def __repr__(self):
    return "StackyFan(d=%d, torsion=%r, n=%d, max_cones=%r)" % (
        self.d, list(self.torsion), self.n, [list(c) for c in self.max_cones])


def _cone_str(cone):
  return "{" + ",".join(str(i + 1) for i in cone) + "}"


def _direction(vec):
  """Scale a rational vector by a positive constant to a primitive integer
  vector.  Unlike primitive() this never flips signs, so it identifies the
  ray through the vector rather than the line."""
  fracs = [Fraction(x) for x in vec]
  denom = 1
  for x in fracs:
    denom = denom * x.denominator // gcd(denom, x.denominator)
  ints = [int(x * denom) for x in fracs]
  g = 0
  for x in ints:
    g = gcd(g, x)
  return tuple(x // g for x in ints) if g else tuple(ints)


def _torsion_tuples(torsion):
  out = [()]
  for m in torsion:
    out = [t + (x,) for t in out for x in range(m)]
  return out


def _invert_rational(m):
  n = len(m)
  aug = [[Fraction(m[i][j]) for j in range(n)] +
         [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
  for col in range(n):
    sel = next((i for i in range(col, n) if aug[i][col] != 0), None)
    if sel is None:
      raise ValueError("singular matrix")
    aug[col], aug[sel] = aug[sel], aug[col]
    pv = aug[col][col]
    aug[col] = [x / pv for x in aug[col]]
    for i in range(n):
      if i != col and aug[i][col]:
        c = aug[i][col]
        aug[i] = [x - c * y for x, y in zip(aug[i], aug[col])]
  return [row[n:] for row in aug]


def weighted_projective_fan(weights):
  """The standard stacky fan of a weighted projective stack P(w_1..w_k).

  N is Z^k modulo the single relation given by the weights; the rays are the
  images of the standard basis vectors and every (k-1)-subset spans a cone.
  """
  from stackychow.lattice import coker

  weights = [int(w) for w in weights]
  if len(weights) < 2 or any(w <= 0 for w in weights):
    raise ValueError("need at least two positive weights")
  grp = coker(IntMatrix([weights]))
  rays = []
  for gen in grp.generators():
    t, f = grp.reduced_coords(gen)
    rays.append(tuple(f) + tuple(t))
  torsion = grp.invariant_factors
  k = len(weights)
  cones = [tuple(j for j in range(k) if j != i) for i in range(k)]
  return StackyFan(grp.free_rank, torsion, rays, cones)
