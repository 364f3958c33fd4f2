"""Character groups of the quotient torus and the integral Chow presentation.

Two character groups appear: the full one, from ray lifts augmented by the
torsion orders, and the rigidified one, from the free parts of the rays
alone.  They are abstractly isomorphic whenever the fan hypotheses hold; a
fixed isomorphism turns the full-group classes (tilde x) into integer
combinations of the rigidified classes (x), recorded as the n x n matrix f.
The Chow ring of the stack is the polynomial ring on the x classes modulo
the linear relations of the rays and the non-face monomials in tilde x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from stackychow.gradedpoly import Poly, RingPresentation
from stackychow.lattice import (
    AbGroup,
    IntMatrix,
    QReducer,
    coker,
    hom_preimage,
    smith_normal_form,
    solve_integer,
)
from stackychow.stackyfan import StackyFan


class CharacterData:
  """Both character groups, the generator classes, and the change matrix f.

  x_full: classes tilde_x_i of the generators e_i hat; x_rig: classes x_i.
  psi is the canonical-basis isomorphism x_full -> x_rig; f satisfies
  psi(tilde_x[i]) = sum_k f[k,i] * x[k] with det f != 0.
  """

  def __init__(self, fan: StackyFan):
    self.fan = fan
    n, d, r = fan.n, fan.d, fan.r
    aug_rows = [[fan.rays[i][j] for i in range(n)] + [0] * r
                for j in range(d)]
    for l, m in enumerate(fan.torsion):
      aug_rows.append([fan.rays[i][d + l] for i in range(n)] +
                      [m if k == l else 0 for k in range(r)])
    self.x_full = coker(IntMatrix(aug_rows)) if aug_rows else AbGroup(n + r)
    rig_rows = [[fan.free(i)[j] for i in range(n)] for j in range(d)]
    self.x_rig = coker(IntMatrix(rig_rows)) if rig_rows else AbGroup(n)
    if (self.x_full.invariant_factors != self.x_rig.invariant_factors
        or self.x_full.free_rank != self.x_rig.free_rank):
      raise ValueError("invariant-factor mismatch")
    gens_full = self.x_full.generators()
    self.tilde_x = tuple(gens_full[i] for i in range(n))
    self.x = tuple(self.x_rig.generators())
    self._psi_sign = 1
    if r == 0:
      self.f = IntMatrix.identity(n)
    else:
      if self.x_rig.free_rank == 1:
        probe = self.psi(self.iota_star(self.x[0]))
        _, pf = self.x_rig.reduced_coords(probe)
        _, xf = self.x_rig.reduced_coords(self.x[0])
        # normalize the sign of psi on a rank-one free part so the composite
        # endomorphism acts by a positive integer
        if xf and pf and (pf[0] < 0) != (xf[0] < 0):
          self._psi_sign = -1
      self.f = self._associated_matrix()
    self._check()

  def iota_star(self, el):
    """The map [m] -> [(m, 0)] from the rigidified group to the full one."""
    rep = el.rep()
    return self.x_full.element(tuple(rep) + (0,) * self.fan.r)

  def psi(self, el):
    """Canonical-basis isomorphism: matches reduced coordinates."""
    t, f = self.x_full.reduced_coords(el)
    f = tuple(self._psi_sign * c for c in f)
    return self.x_rig.from_reduced(t, f)

  def _associated_matrix(self):
    n = self.fan.n
    free = AbGroup(n)
    ident = IntMatrix.identity(n)
    lam = _independent_rows(self.x_rig.relations.entries)
    cols = []
    for i in range(n):
      target = self.psi(self.iota_star(self.x[i]))
      pre = hom_preimage(ident, free, self.x_rig, target)
      assert pre is not None  # x_k generate, so a preimage always exists
      cols.append(_babai_reduce(pre.coords, lam))
    f0 = IntMatrix([[cols[i][k] for i in range(n)] for k in range(n)])
    if not lam or f0.det() != 0:
      return f0
    # a preimage choice can be singular; correcting by relation-lattice
    # columns shifts the action on the lattice by e*k*identity, which is
    # nonsingular for all but finitely many k
    lmat = IntMatrix(lam)
    diag = smith_normal_form(lmat).diagonal
    e = 1
    for dj in diag:
      if dj:
        e *= dj
    a_rows = []
    for j in range(len(lam)):
      target = [e if i == j else 0 for i in range(len(lam))]
      sol = solve_integer(lmat, target)
      assert sol is not None  # e kills the quotient by the column span
      a_rows.append(sol)
    corr = [[sum(lam[j][u] * a_rows[j][v] for j in range(len(lam)))
             for v in range(n)] for u in range(n)]
    for k in range(1, n + 2):
      cand = IntMatrix([[f0[u, v] + k * corr[u][v] for v in range(n)]
                        for u in range(n)])
      if cand.det() != 0:
        return cand
    raise AssertionError("no nonsingular associated matrix found")

  def _check(self):
    n = self.fan.n
    for i in range(n):
      assert self.iota_star(self.x[i]) == self.tilde_x[i]
      total = self.x_rig.zero()
      for k in range(n):
        total = total + self.x[k].scale(self.f[k, i])
      assert total == self.psi(self.iota_star(self.x[i]))
    if n:
      assert self.f.det() != 0
    assert self._injective_endo()

  def _injective_endo(self):
    grp = self.x_rig
    phi = lambda el: self.psi(self.iota_star(el))
    k = grp.free_rank
    nt = len(grp.invariant_factors)
    if k:
      cols = []
      for j in range(k):
        e = tuple(1 if i == j else 0 for i in range(k))
        _, f = grp.reduced_coords(phi(grp.from_reduced((0,) * nt, e)))
        cols.append(f)
      if IntMatrix([[cols[j][i] for j in range(k)]
                    for i in range(k)]).det() == 0:
        return False
    for t in product(*(range(m) for m in grp.invariant_factors)):
      el = grp.from_reduced(t, (0,) * k)
      if phi(el).is_zero() and any(t):
        return False
    return True

  def tilde_poly(self, i):
    """tilde_x_i as a degree-one polynomial in the x variables."""
    return Poly.linear([self.f[k, i] for k in range(self.fan.n)])


_character_cache = {}


def character_data(fan: StackyFan) -> CharacterData:
  key = id(fan)
  if key not in _character_cache or _character_cache[key][0] is not fan:
    _character_cache[key] = (fan, CharacterData(fan))
  return _character_cache[key][1]


def linear_ideal(fan: StackyFan):
  """One linear form per free coordinate: sum_i bbar_i[j] * x_i."""
  return [Poly.linear([fan.free(i)[j] for i in range(fan.n)])
          for j in range(fan.d)]


def minimal_nonfaces(fan: StackyFan, base=()):
  """Minimal ray sets S (disjoint from base) with S + base in no cone.

  With base empty these are the minimal non-faces of the fan; with base a
  cone's ray set they describe the star of that cone.
  """
  base = set(base)
  rays = [i for i in range(fan.n) if i not in base]
  found = []
  for size in range(1, len(rays) + 1):
    for s in combinations(rays, size):
      if any(set(m) <= set(s) for m in found):
        continue
      if not fan.has_common_cone(base | set(s)):
        found.append(s)
  return found


def sr_ideal(fan: StackyFan, cd: CharacterData):
  """Non-face monomials, written in the x variables via the matrix f."""
  out = []
  for s in minimal_nonfaces(fan):
    poly = Poly.constant(fan.n, 1)
    for i in s:
      poly = poly * cd.tilde_poly(i)
    out.append(poly)
  return out


def sector_ideal(fan: StackyFan, v):
  """Relations cutting the closed substack indexed by a box element: non-face
  monomials of the star of the element's minimal cone."""
  cd = character_data(fan)
  out = []
  for s in minimal_nonfaces(fan, v.sigma_min):
    poly = Poly.constant(fan.n, 1)
    for i in s:
      poly = poly * cd.tilde_poly(i)
    out.append(poly)
  return out


def sr_ring(fan: StackyFan) -> RingPresentation:
  """Integral Chow ring of the toric stack: Z[x_1..x_n] modulo the linear
  forms of the rays and the non-face monomials."""
  fan.require_valid()
  cd = character_data(fan)
  names = ["x%d" % (i + 1) for i in range(fan.n)]
  gens, tags = [], []
  for p in linear_ideal(fan):
    gens.append(p)
    tags.append("linear")
  for p in sr_ideal(fan, cd):
    gens.append(p)
    tags.append("stanley_reisner")
  return RingPresentation(names, [1] * fan.n, gens, tags, domain="z")


def _independent_rows(rows):
  out = []
  for row in rows:
    if not any(row):
      continue
    if out and QReducer(out, len(row)).contains(row):
      continue
    out.append(list(row))
  return out


def _babai_reduce(vec, basis_rows):
  """Reduce an integer vector modulo the row lattice, nearest-plane style.

  Keeps the coset, shrinks the representative; exact rational arithmetic.
  """
  work = [Fraction(c) for c in vec]
  pairs = []
  gs = []
  for row in basis_rows:
    u = [Fraction(c) for c in row]
    for g in gs:
      nrm = sum(a * a for a in g)
      dot = sum(a * b for a, b in zip(u, g))
      u = [a - dot / nrm * b for a, b in zip(u, g)]
    if any(a != 0 for a in u):
      gs.append(u)
      pairs.append((row, u))
  for row, g in reversed(pairs):
    nrm = sum(a * a for a in g)
    coef = sum(a * b for a, b in zip(work, g)) / nrm
    shift = (coef + Fraction(1, 2)).__floor__()
    work = [a - shift * b for a, b in zip(work, row)]
  assert all(a.denominator == 1 for a in work)
  return [int(a) for a in work]
