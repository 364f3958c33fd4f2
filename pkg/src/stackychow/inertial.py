"""Inertial products on the sectors of a toric Deligne-Mumford stack.

Sectors are indexed by box elements and everything reduces to exact
arithmetic on their q-vectors: logarithmic traces and restrictions, the
index sets B+/B- of a sector pair, twist classes, closed-form star products,
and the cone/box relation ideals that assemble into a presentation of the
inertial Chow ring for each product kind.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from stackychow.charring import (
    character_data,
    linear_ideal,
    sector_ideal,
    sr_ideal,
)
from stackychow.gradedpoly import Poly, RingPresentation, eliminate
from stackychow.lattice import frac
from stackychow.stackyfan import BoxElement, StackyFan


class Bundle:
  """Nonnegative integer combination sum(a[i] * L_i) of the ray line bundles."""

  __slots__ = ("a",)

  def __init__(self, a):
    out = []
    for c in a:
      if c != int(c):
        raise ValueError("bundle coefficients must be integers")
      if c < 0:
        raise ValueError("bundle coefficients must be nonnegative")
      out.append(int(c))
    self.a = tuple(out)

  @property
  def n(self):
    return len(self.a)

  @staticmethod
  def zero(n):
    return Bundle((0,) * n)

  @staticmethod
  def ones(n):
    return Bundle((1,) * n)

  def scaled(self, k):
    return Bundle(tuple(k * c for c in self.a))

  def __eq__(self, other):
    return isinstance(other, Bundle) and self.a == other.a

  def __hash__(self):
    return hash(("Bundle", self.a))

  def __repr__(self):
    return "Bundle(%r)" % (self.a,)


class KClass:
  """Exact combination of the L_i plus a rational multiple of the trivial
  class.  Coefficients are rationals; integrality is assertable on demand."""

  __slots__ = ("coeffs", "trivial")

  def __init__(self, coeffs, trivial=0):
    self.coeffs = tuple(Fraction(c) for c in coeffs)
    self.trivial = Fraction(trivial)

  def _chk(self, other):
    if len(self.coeffs) != len(other.coeffs):
      raise ValueError("classes with different numbers of line bundles")

  def __add__(self, other):
    self._chk(other)
    return KClass([a + b for a, b in zip(self.coeffs, other.coeffs)],
                  self.trivial + other.trivial)

  def __sub__(self, other):
    self._chk(other)
    return KClass([a - b for a, b in zip(self.coeffs, other.coeffs)],
                  self.trivial - other.trivial)

  def scale(self, c):
    return KClass([c * a for a in self.coeffs], c * self.trivial)

  def is_zero(self):
    return self.trivial == 0 and all(c == 0 for c in self.coeffs)

  def is_integral(self):
    return (self.trivial.denominator == 1
            and all(c.denominator == 1 for c in self.coeffs))

  def is_nonnegative_integral(self):
    return (self.is_integral() and self.trivial >= 0
            and all(c >= 0 for c in self.coeffs))

  def __eq__(self, other):
    return (isinstance(other, KClass) and self.coeffs == other.coeffs
            and self.trivial == other.trivial)

  def __hash__(self):
    return hash((self.coeffs, self.trivial))

  def __repr__(self):
    if self.trivial:
      return "KClass(%r, trivial=%r)" % (list(self.coeffs), self.trivial)
    return "KClass(%r)" % (list(self.coeffs),)


_KIND_NAMES = ("orbifold", "virtual", "v_plus", "v_minus",
               "plus_infinity", "minus_infinity")


class ProductKind:
  """Which inertial product to use.  The v_plus/v_minus families carry their
  twisting bundle; the asymptotic kinds only exist over the rationals."""

  __slots__ = ("name", "bundle")

  def __init__(self, name, bundle=None):
    if name not in _KIND_NAMES:
      raise ValueError("unknown product kind %r" % (name,))
    if name in ("v_plus", "v_minus"):
      if bundle is None:
        raise ValueError("product kind %s requires a bundle" % name)
    elif bundle is not None:
      raise ValueError("product kind %s does not take a bundle" % name)
    self.name = name
    self.bundle = bundle

  @staticmethod
  def v_plus(bundle):
    return ProductKind("v_plus", bundle)

  @staticmethod
  def v_minus(bundle):
    return ProductKind("v_minus", bundle)

  @property
  def is_asymptotic(self):
    return self.name in ("plus_infinity", "minus_infinity")

  @property
  def default_domain(self):
    return "q" if self.is_asymptotic else "z"

  @property
  def plus_sided(self):
    """Whether the bundle exponents sit on B+ (else on B-)."""
    return self.name in ("orbifold", "v_plus")

  def twist_exponents(self, n):
    """Per-ray bundle coefficients entering the twist, None for asymptotics."""
    if self.is_asymptotic:
      return None
    if self.name == "orbifold":
      return (0,) * n
    if self.name == "virtual":
      return (1,) * n
    if self.bundle.n != n:
      raise ValueError("bundle has %d coefficients but the fan has %d rays"
                       % (self.bundle.n, n))
    return self.bundle.a

  def __eq__(self, other):
    return (isinstance(other, ProductKind) and self.name == other.name
            and self.bundle == other.bundle)

  def __hash__(self):
    return hash((self.name, self.bundle))

  def __repr__(self):
    if self.bundle is not None:
      return "ProductKind(%r, %r)" % (self.name, self.bundle)
    return "ProductKind(%r)" % (self.name,)


ORBIFOLD = ProductKind("orbifold")
VIRTUAL = ProductKind("virtual")
PLUS_INFINITY = ProductKind("plus_infinity")
MINUS_INFINITY = ProductKind("minus_infinity")


# -- traces and restrictions ---------------------------------------------------

def q_vector(fan: StackyFan, v: BoxElement):
  """The cached coefficient vector of vbar on the rays, zero off sigma_min."""
  return fan.box_lookup(v.v).q


def age(fan: StackyFan, v: BoxElement) -> Fraction:
  return fan.box_lookup(v.v).age


def log_trace_phases(q, bundle: Bundle) -> KClass:
  """sum_i a_i q_i L_i for a group element with rotation phases q."""
  if len(q) != bundle.n:
    raise ValueError("phase vector and bundle have different lengths")
  return KClass([Fraction(qi) * ai for qi, ai in zip(q, bundle.a)])


def log_trace(fan: StackyFan, v: BoxElement, bundle: Bundle) -> KClass:
  return log_trace_phases(q_vector(fan, v), bundle)


def log_restriction_phases(qs, bundle: Bundle) -> KClass:
  """Logarithmic restriction of the bundle at a tuple of sectors given by
  their rotation phase vectors; the phases must sum to integers."""
  n = bundle.n
  qs = [tuple(Fraction(c) for c in q) for q in qs]
  for q in qs:
    if len(q) != n:
      raise ValueError("phase vector and bundle have different lengths")
  sums = [sum((q[i] for q in qs), Fraction(0)) for i in range(n)]
  if any(frac(s) != 0 for s in sums):
    raise ValueError("tuple does not multiply to identity")
  coeffs = []
  for i in range(n):
    if sums[i] == 0:
      # every sector in the tuple fixes the i-th coordinate, so the fixed
      # part keeps a_i and cancels against the restriction term
      coeffs.append(Fraction(0))
    else:
      coeffs.append(bundle.a[i] * (sums[i] - 1))
  out = KClass(coeffs)
  if not out.is_nonnegative_integral():
    raise ValueError("non-integral logarithmic restriction")
  return out


def log_restriction(fan: StackyFan, vs, bundle: Bundle) -> KClass:
  """Logarithmic restriction at a tuple of box elements whose group elements
  multiply to the identity (torsion phases included in the check)."""
  els = [fan.box_lookup(v.v) for v in vs]
  for l in range(fan.r):
    total = sum((fan.group_element(v).s_phases[l] for v in els), Fraction(0))
    if frac(total) != 0:
      raise ValueError("tuple does not multiply to identity")
  return log_restriction_phases([v.q for v in els], bundle)


# -- pair data -----------------------------------------------------------------

def _pair(fan, v1, v2):
  a = fan.box_lookup(v1.v)
  b = fan.box_lookup(v2.v)
  if not fan.has_common_cone(sorted(set(a.sigma_min) | set(b.sigma_min))):
    raise ValueError("no common cone")
  return a, b


def b_plus(fan: StackyFan, v1, v2):
  """0-based ray indices where the two q-vectors sum to 1 or more."""
  a, b = _pair(fan, v1, v2)
  return tuple(i for i in range(fan.n) if a.q[i] + b.q[i] >= 1)


def b_minus(fan: StackyFan, v1, v2):
  """0-based ray indices where both q-entries are nonzero but sum below 1."""
  a, b = _pair(fan, v1, v2)
  return tuple(i for i in range(fan.n)
               if a.q[i] != 0 and b.q[i] != 0 and a.q[i] + b.q[i] < 1)


def v_plus(fan: StackyFan, v1, v2, bundle: Bundle) -> KClass:
  idx = set(b_plus(fan, v1, v2))
  return KClass([bundle.a[i] if i in idx else 0 for i in range(fan.n)])


def v_minus(fan: StackyFan, v1, v2, bundle: Bundle) -> KClass:
  idx = set(b_minus(fan, v1, v2))
  return KClass([bundle.a[i] if i in idx else 0 for i in range(fan.n)])


def twist(fan: StackyFan, kind: ProductKind, v1, v2) -> Poly:
  """The twist class of the pair as a polynomial in the x variables; the
  normal-direction factor over rays with q1+q2 = 1 is not included."""
  if kind.is_asymptotic:
    raise ValueError("asymptotic products have no twist class")
  a, b = _pair(fan, v1, v2)
  cd = character_data(fan)
  exps = kind.twist_exponents(fan.n)
  out = Poly.constant(fan.n, 1)
  for i in range(fan.n):
    k = 1 if a.q[i] + b.q[i] > 1 else 0
    if kind.plus_sided:
      if a.q[i] + b.q[i] >= 1:
        k += exps[i]
    elif a.q[i] != 0 and b.q[i] != 0 and a.q[i] + b.q[i] <= 1:
      # boundary rays (phase sum exactly one) carry the bundle exponent too;
      # dropping them breaks associativity of the minus-sided product
      k += exps[i]
    if k:
      out = out * cd.tilde_poly(i).pow(k)
  return out


def star_product(fan: StackyFan, kind: ProductKind, v1, v2):
  """(target sector, coefficient polynomial in the x variables).

  The coefficient is zero, with a None target, when the pair shares no cone;
  the asymptotic kinds also return a zero coefficient on their vanishing
  pairs while keeping the box-sum target."""
  a = fan.box_lookup(v1.v)
  b = fan.box_lookup(v2.v)
  if not fan.has_common_cone(sorted(set(a.sigma_min) | set(b.sigma_min))):
    return None, Poly.zero(fan.n)
  target = fan.box_add(a, b)
  cd = character_data(fan)
  bp = [i for i in range(fan.n) if a.q[i] + b.q[i] >= 1]
  if kind.name == "plus_infinity" and bp:
    return target, Poly.zero(fan.n)
  if kind.name == "minus_infinity" and any(
      a.q[i] != 0 and b.q[i] != 0 and a.q[i] + b.q[i] <= 1
      for i in range(fan.n)):
    # the minus-sided vanishing set is closed: rays with phase sum exactly
    # one kill the product as well, or the limit of the scaled products
    # would not exist
    return target, Poly.zero(fan.n)
  coeff = Poly.constant(fan.n, 1)
  if kind.is_asymptotic:
    # surviving asymptotic pairs take the orbifold value
    for i in bp:
      coeff = coeff * cd.tilde_poly(i)
    return target, coeff
  exps = kind.twist_exponents(fan.n)
  if kind.plus_sided:
    for i in bp:
      coeff = coeff * cd.tilde_poly(i).pow(exps[i] + 1)
  else:
    for i in range(fan.n):
      s = a.q[i] + b.q[i]
      k = 1 if s >= 1 else 0
      if a.q[i] != 0 and b.q[i] != 0 and s <= 1:
        # see twist: boundary rays keep the bundle exponent
        k += exps[i]
      if k:
        coeff = coeff * cd.tilde_poly(i).pow(k)
  return target, coeff


# -- relation ideals -----------------------------------------------------------

def _embed(poly, total):
  """Reindex an x-polynomial into the combined x+w ring."""
  return poly.map_vars(total, [Poly.variable(total, i)
                               for i in range(poly.nvars)])


def _w_monomial(n, k, indices):
  exp = [0] * (n + k)
  for i in indices:
    exp[n + i - 1] += 1
  return Poly(n + k, {tuple(exp): 1})


def _nonidentity_pairs(fan):
  els = fan.box()
  out = []
  for i in range(1, len(els)):
    for j in range(i, len(els)):
      union = sorted(set(els[i].sigma_min) | set(els[j].sigma_min))
      out.append((i, j, fan.has_common_cone(union)))
  return out


def cr_ideal(fan: StackyFan):
  """Monomials w_i w_j over the sector pairs sharing no cone."""
  n, k = fan.n, len(fan.box()) - 1
  return [_w_monomial(n, k, (i, j))
          for i, j, common in _nonidentity_pairs(fan) if not common]


def br_ideal(fan: StackyFan, kind: ProductKind, jobs=1):
  """One relation per unordered double-box sector pair: the pair monomial
  minus the closed form of its star product.  Pair order is deterministic."""
  els = fan.box()
  n, k = fan.n, len(els) - 1
  pairs = [(i, j) for i, j, common in _nonidentity_pairs(fan) if common]

  def one(pair):
    i, j = pair
    t1, c1 = star_product(fan, kind, els[i], els[j])
    t2, c2 = star_product(fan, kind, els[j], els[i])
    assert t1 == t2 and c1 == c2
    gen = _w_monomial(n, k, (i, j))
    if c1.is_zero():
      return gen
    tail = _embed(c1, n + k)
    if not t1.is_identity:
      tail = tail * Poly.variable(n + k, n + fan.box_index(t1) - 1)
    return gen - tail

  return _ordered_map(one, pairs, jobs)


def _ordered_map(fn, items, jobs):
  """Map fn over items with deterministic output order, optionally threaded."""
  if jobs and jobs > 1:
    with ThreadPoolExecutor(max_workers=jobs) as pool:
      return list(pool.map(fn, items))
  return [fn(it) for it in items]


def sector_labels(fan: StackyFan, labels=None):
  """Names for the nonidentity sector variables, w1..wk unless overridden."""
  k = len(fan.box()) - 1
  if labels is None:
    return ["w%d" % (j + 1) for j in range(k)]
  labels = [str(s) for s in labels]
  if len(labels) != k:
    raise ValueError("expected %d sector labels, got %d" % (k, len(labels)))
  return labels


def inertial_presentation(fan: StackyFan, kind: ProductKind, labels=None,
                          domain=None, jobs=1) -> RingPresentation:
  """Generators and relations for the inertial Chow ring of the given kind.

  Variables: one x per ray (degree 1) and one w per nonidentity sector with
  degree its age (0 for pure-torsion sectors, which blocks graded queries but
  not construction).  The ideal stacks the ray relations (linear), nonface
  relations (stanley_reisner), each sector annihilator times its w (sector),
  the no-common-cone monomials (cone) and the product relations (box)."""
  fan.require_valid()
  if domain is None:
    domain = kind.default_domain
  if kind.is_asymptotic and domain != "q":
    raise ValueError("asymptotic products require rational coefficients")
  cd = character_data(fan)
  els = fan.box()
  n, k = fan.n, len(els) - 1
  total = n + k
  names = ["x%d" % (i + 1) for i in range(n)] + sector_labels(fan, labels)
  degrees = [Fraction(1)] * n + [v.age for v in els[1:]]
  gens, tags = [], []
  for g in linear_ideal(fan):
    gens.append(_embed(g, total))
    tags.append("linear")
  for g in sr_ideal(fan, cd):
    gens.append(_embed(g, total))
    tags.append("stanley_reisner")
  for j, v in enumerate(els[1:]):
    wvar = Poly.variable(total, n + j)
    for g in sector_ideal(fan, v):
      gens.append(_embed(g, total) * wvar)
      tags.append("sector")
  for g in cr_ideal(fan):
    gens.append(g)
    tags.append("cone")
  for g in br_ideal(fan, kind, jobs=jobs):
    gens.append(g)
    tags.append("box")
  return RingPresentation(names, degrees, gens, tags, domain)


# -- star products of module classes -------------------------------------------

class StarCalculator:
  """Star products in the sector-module picture, with cached tables.

  A class is a sector index with an x-coefficient; products land in a single
  sector, and normal forms reduce the coefficient modulo that sector's
  x-ideal (linear + nonface + annihilator).  Sector rings are handled in
  eliminated variables to keep the graded pieces small."""

  def __init__(self, fan: StackyFan, kind: ProductKind, domain=None):
    fan.require_valid()
    self.fan = fan
    self.kind = kind
    self.domain = kind.default_domain if domain is None else domain
    self.cd = character_data(fan)
    self.els = fan.box()
    self._table = {}
    self._sector = {}

  def star(self, i, j):
    """(target sector index or None, coefficient Poly) for sector indices."""
    key = (i, j) if i <= j else (j, i)
    if key not in self._table:
      target, coeff = star_product(self.fan, self.kind,
                                   self.els[key[0]], self.els[key[1]])
      idx = None if target is None else self.fan.box_index(target)
      self._table[key] = (idx, coeff)
    return self._table[key]

  def _sector_elim(self, i):
    if i not in self._sector:
      fan = self.fan
      lin = linear_ideal(fan)
      sr = sr_ideal(fan, self.cd)
      sec = sector_ideal(fan, self.els[i])
      pres = RingPresentation(
          ["x%d" % (t + 1) for t in range(fan.n)],
          [Fraction(1)] * fan.n,
          lin + sr + sec,
          ("linear",) * len(lin) + ("stanley_reisner",) * len(sr)
          + ("sector",) * len(sec),
          self.domain)
      self._sector[i] = eliminate(pres)
    return self._sector[i]

  def reduces_to_zero(self, i, coeff):
    """Does the x-coefficient die in sector i's quotient ring?"""
    if coeff.is_zero():
      return True
    elim = self._sector_elim(i)
    pres = elim.presentation
    nn = len(pres.names)
    images = []
    for t in range(self.fan.n):
      name = "x%d" % (t + 1)
      if name in elim.substitutions:
        images.append(elim.substitutions[name])
      else:
        images.append(Poly.variable(nn, pres.names.index(name)))
    return pres.contains(coeff.map_vars(nn, images))

  def triple(self, i, j, l, left):
    """Raw coefficient and target of one bracketing of a sector triple."""
    if left:
      t1, c1 = self.star(i, j)
    else:
      t1, c1 = self.star(j, l)
    if t1 is None or c1.is_zero():
      return None, Poly.zero(self.fan.n)
    if left:
      t2, c2 = self.star(t1, l)
    else:
      t2, c2 = self.star(i, t1)
    return t2, c1 * c2

  def associates(self, i, j, l):
    """Do the two bracketings of sectors (i, j, l) agree in the quotient?"""
    lt, lc = self.triple(i, j, l, True)
    rt, rc = self.triple(i, j, l, False)
    if lc.is_zero() and rc.is_zero():
      return True
    if lc.is_zero():
      return self.reduces_to_zero(rt, rc)
    if rc.is_zero():
      return self.reduces_to_zero(lt, lc)
    assert lt == rt
    diff = lc - rc
    if diff.is_zero():
      return True
    return self.reduces_to_zero(lt, diff)


def associativity_witnesses(fan: StackyFan, kind: ProductKind, domain=None,
                            jobs=1):
  """Sector triples whose two bracketings disagree after sector reduction;
  an empty list means the product is associative on every triple."""
  calc = StarCalculator(fan, kind, domain)
  k = len(calc.els)
  triples = [(i, j, l)
             for i in range(k) for j in range(k) for l in range(k)]

  def check(t):
    return None if calc.associates(*t) else t

  return [w for w in _ordered_map(check, triples, jobs) if w is not None]


def asymptotic_stabilization_witnesses(fan: StackyFan, scale, plus=True):
  """Sector pairs where the product for scale * (sum of all L_i) still
  differs, over the rationals, from its asymptotic limit.  Empty once the
  scale exceeds the dimension of every sector the pairs land in."""
  bundle = Bundle.ones(fan.n).scaled(scale)
  kind = ProductKind.v_plus(bundle) if plus else ProductKind.v_minus(bundle)
  limit = PLUS_INFINITY if plus else MINUS_INFINITY
  scaled = StarCalculator(fan, kind, domain="q")
  asym = StarCalculator(fan, limit)
  out = []
  k = len(scaled.els)
  for i in range(k):
    for j in range(i, k):
      t1, c1 = scaled.star(i, j)
      t2, c2 = asym.star(i, j)
      if t1 is None and t2 is None:
        continue
      assert t1 == t2
      if not scaled.reduces_to_zero(t1, c1 - c2):
        out.append((i, j))
  return out
